//! Initial degree, Hilbert function, scheme degree and regularity of fat point ideals.
//!
//! Regularity is computed only for saturated ideals of 0-dimensional schemes, from the
//! degree where the Hilbert function of `R/I` reaches the scheme degree.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use thiserror::Error;

use crate::configurations::{FatPoint, FatPointConfiguration};
use crate::groebner::{Budget, GroebnerBasis};
use crate::ideals::{symbolic_power, Ideal, IdealError};
use crate::polynomials::Monomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("the zero ideal has no initial degree")]
    ZeroIdeal,
    #[error("order {0} is not degree-compatible")]
    NotDegreeCompatible(String),
    #[error("not the saturated ideal of the scheme: {0}")]
    NotSaturated(String),
    #[error(transparent)]
    Ideal(#[from] IdealError),
}

/// `n choose k` for small arguments.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// α(I): least degree of a nonzero form in `I`, read from the reduced basis.
pub fn alpha(ideal: &Ideal, budget: &Budget) -> Result<u32, InvariantError> {
    let order = ideal.ring().order();
    if !order.is_degree_compatible() {
        return Err(InvariantError::NotDegreeCompatible(order.to_string()));
    }
    ideal.groebner_basis(budget)?.min_degree().ok_or(InvariantError::ZeroIdeal)
}

/// Number of degree-`d` monomials outside the leading-term ideal of `basis`.
pub fn standard_monomial_count(basis: &GroebnerBasis, d: u32) -> u64 {
    let leads: Vec<(u64, Monomial)> = basis.leading_monomials().into_iter().map(|m| (m.divmask(), m)).collect();
    Monomial::all_of_degree(basis.ring().num_vars(), d)
        .iter()
        .filter(|m| {
            let mask = m.divmask();
            !leads.iter().any(|(lm_mask, lm)| lm_mask & !mask == 0 && lm.divides(m))
        })
        .count() as u64
}

/// dim (R/I)_d.
pub fn hilbert_function(ideal: &Ideal, d: u32, budget: &Budget) -> Result<u64, InvariantError> {
    let order = ideal.ring().order();
    if !order.is_degree_compatible() {
        return Err(InvariantError::NotDegreeCompatible(order.to_string()));
    }
    Ok(standard_monomial_count(&*ideal.groebner_basis(budget)?, d))
}

/// dim R_d = C(N+d, N).
pub fn ambient_dimension(num_vars: usize, d: u32) -> u64 {
    binomial((num_vars as u64 - 1) + d as u64, num_vars as u64 - 1)
}

/// deg Z = Σ C(N−1+m_i, N).
pub fn scheme_degree(z: &FatPointConfiguration) -> u64 {
    let n = z.dim() as u64;
    z.points().iter().map(|p| binomial(n - 1 + p.multiplicity() as u64, n)).sum()
}

/// The scheme `mZ`: every multiplicity scaled by `m`.
pub fn scaled(z: &FatPointConfiguration, m: u32) -> FatPointConfiguration {
    let pts = z.points().iter().map(|p| FatPoint::new(p.coordinates().to_vec(), p.multiplicity() * m)).collect();
    FatPointConfiguration::new(z.name(), z.ring(), pts).expect("scaling keeps a valid configuration")
}

/// Least `d ≥ 0` with HF(R/I, d) = deg Z, after checking that the Hilbert function is
/// nondecreasing and never exceeds deg Z on the way.
pub fn regularity_index(ideal: &Ideal, z: &FatPointConfiguration, budget: &Budget) -> Result<u32, InvariantError> {
    let target = scheme_degree(z);
    let basis = ideal.groebner_basis(budget)?;
    if basis.is_unit() {
        return Err(InvariantError::NotSaturated("unit ideal".into()));
    }
    let mut prev = 0;
    // a saturated ideal of a 0-dimensional scheme of degree e reaches e by degree e − 1
    for d in 0..=target as u32 {
        let h = standard_monomial_count(&basis, d);
        if h > target {
            return Err(InvariantError::NotSaturated(format!("HF({d}) = {h} exceeds deg Z = {target}")));
        }
        if h < prev {
            return Err(InvariantError::NotSaturated(format!("HF drops from {prev} to {h} at degree {d}")));
        }
        if h == target {
            // past the largest basis degree the Hilbert function must stay at deg Z
            let top = basis.elements().iter().filter_map(|g| g.total_degree()).max().unwrap_or(0);
            if let Some(e) = (d + 1..=top.max(d) + 1).find(|&e| standard_monomial_count(&basis, e) != target) {
                return Err(InvariantError::NotSaturated(format!("HF({e}) differs from deg Z = {target}")));
            }
            return Ok(d);
        }
        prev = h;
    }
    Err(InvariantError::NotSaturated(format!("HF never reaches deg Z = {target}")))
}

/// reg(I) = min { d ≥ 1 : HF(R/I, d−1) = deg Z } for the saturated ideal `I` of `Z`.
pub fn regularity_0dim(ideal: &Ideal, z: &FatPointConfiguration, budget: &Budget) -> Result<u32, InvariantError> {
    Ok(regularity_index(ideal, z, budget)? + 1)
}

/// min over m ≤ m_max of α(I^(m))/m.
pub fn waldschmidt_estimate(z: &FatPointConfiguration, m_max: u32, budget: &Budget) -> Result<BigRational, InvariantError> {
    let mut best: Option<BigRational> = None;
    for m in 1..=m_max.max(1) {
        let a = alpha(&symbolic_power(z, m, budget)?, budget)?;
        let q = BigRational::new(BigInt::from(a), BigInt::from(m));
        if best.as_ref().is_none_or(|b| &q < b) {
            best = Some(q);
        }
    }
    Ok(best.unwrap())
}

/// reg(I^(m))/m for m = 1..=m_max.
pub fn symassreg_estimate(z: &FatPointConfiguration, m_max: u32, budget: &Budget) -> Result<Vec<BigRational>, InvariantError> {
    (1..=m_max)
        .map(|m| {
            let reg = regularity_0dim(&symbolic_power(z, m, budget)?, &scaled(z, m), budget)?;
            Ok(BigRational::new(BigInt::from(reg), BigInt::from(m)))
        })
        .collect()
}

/// reg(J) for an ideal `J ⊆ I_sat` whose saturation `I_sat` is the ideal of `z`:
/// `1 + max(e₀, r)` where `r` is the regularity index of `I_sat` and `e₀` the last
/// degree in which `J` and `I_sat` differ.
pub fn regularity_via_saturation(
    j: &Ideal,
    saturation: &Ideal,
    z: &FatPointConfiguration,
    budget: &Budget,
) -> Result<u32, InvariantError> {
    let r_idx = regularity_index(saturation, z, budget)?;
    let gj = j.groebner_basis(budget)?;
    let gs = saturation.groebner_basis(budget)?;
    let generated_by = gs.elements().iter().filter_map(|g| g.total_degree()).max().unwrap_or(0);
    let mut last_diff: Option<u32> = None;
    let mut d = 0;
    loop {
        let differ = standard_monomial_count(&gj, d) != standard_monomial_count(&gs, d);
        if differ {
            last_diff = Some(d);
        } else if d >= generated_by {
            // I_sat is generated in degrees ≤ d, so J_d = I_sat_d forces equality from here on
            break;
        }
        d += 1;
    }
    Ok(1 + last_diff.unwrap_or(0).max(r_idx))
}

#[derive(Debug, Clone, Serialize)]
pub struct InvariantReport {
    pub config: String,
    pub symbolic: Option<u32>,
    pub power: Option<u32>,
    pub alpha: Option<u32>,
    pub hilbert_function: BTreeMap<u32, u64>,
    pub scheme_degree: u64,
    pub regularity: Option<u32>,
    pub waldschmidt_estimate: Option<String>,
    pub notes: Vec<String>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::Field;
    use crate::configurations::{coordinate_points, dual_hesse, FatPoint};
    use crate::ideals::configuration_ideal;
    use crate::polynomials::PolynomialRing;

    fn b() -> Budget {
        Budget::unlimited()
    }

    fn q_points(pts: &[(&[i64], u32)]) -> FatPointConfiguration {
        let r = PolynomialRing::projective(Field::rationals(), 2).unwrap();
        let f = r.field().clone();
        let points = pts.iter().map(|(c, m)| FatPoint::new(c.iter().map(|&v| f.from_i64(v)).collect(), *m)).collect();
        FatPointConfiguration::new("q", &r, points).unwrap()
    }

    #[test]
    fn alpha_and_hilbert_of_simple_ideals() {
        let r = PolynomialRing::projective(Field::rationals(), 2).unwrap();
        let i = Ideal::new(&r, vec![r.parse("x0").unwrap(), r.parse("x1").unwrap()]).unwrap();
        assert_eq!(alpha(&i.power(2), &b()).unwrap(), 2);
        assert_eq!(hilbert_function(&i, 5, &b()).unwrap(), 1);
        assert!(matches!(alpha(&Ideal::new(&r, vec![]).unwrap(), &b()), Err(InvariantError::ZeroIdeal)));
    }

    #[test]
    fn scheme_degrees() {
        assert_eq!(scheme_degree(&dual_hesse().0), 12);
        assert_eq!(scheme_degree(&q_points(&[(&[0, 0, 1], 2)])), 3);
        assert_eq!(scheme_degree(&scaled(&dual_hesse().0, 2)), 36);
    }

    #[test]
    fn regularity_examples() {
        let one = q_points(&[(&[0, 0, 1], 1)]);
        assert_eq!(regularity_0dim(&configuration_ideal(&one, &b()).unwrap(), &one, &b()).unwrap(), 1);
        let two = q_points(&[(&[0, 0, 1], 1), (&[1, 0, 0], 1)]);
        assert_eq!(regularity_0dim(&configuration_ideal(&two, &b()).unwrap(), &two, &b()).unwrap(), 2);
        let (dh, _) = dual_hesse();
        let i = configuration_ideal(&dh, &b()).unwrap();
        let hf: Vec<u64> = (0..6).map(|d| hilbert_function(&i, d, &b()).unwrap()).collect();
        assert_eq!(hf, vec![1, 3, 6, 10, 12, 12]);
        assert_eq!(regularity_0dim(&i, &dh, &b()).unwrap(), 5);
        assert_eq!(alpha(&i, &b()).unwrap(), 4);
    }

    #[test]
    fn regularity_rejects_non_saturated_input() {
        let z = q_points(&[(&[0, 0, 1], 1)]);
        let r = z.ring().clone();
        // ⟨x0, x1⟩ ∩ ⟨x0, x1, x2⟩² has the right saturation but HF(1) = 3 > 1 = deg Z
        let bad = Ideal::new(&r, ["x0", "x1", "x2^2"].iter().map(|s| r.parse(s).unwrap()).collect()).unwrap();
        assert!(regularity_0dim(&bad, &z, &b()).is_err());
        let unit = Ideal::unit(&r);
        assert!(regularity_0dim(&unit, &z, &b()).is_err());
    }

    #[test]
    fn estimators() {
        let one = q_points(&[(&[1, 1, 1], 1)]);
        assert_eq!(waldschmidt_estimate(&one, 3, &b()).unwrap(), BigRational::from_integer(1.into()));
        let three = coordinate_points(2, None).unwrap();
        assert_eq!(waldschmidt_estimate(&three, 2, &b()).unwrap(), BigRational::new(3.into(), 2.into()));
        let ones = symassreg_estimate(&one, 3, &b()).unwrap();
        assert!(ones.iter().all(|q| *q == BigRational::from_integer(1.into())));
        let two = q_points(&[(&[0, 0, 1], 1), (&[1, 0, 0], 1)]);
        let seq = symassreg_estimate(&two, 2, &b()).unwrap();
        assert_eq!(seq, vec![BigRational::from_integer(2.into()), BigRational::from_integer(2.into())]);
        let (dh, _) = dual_hesse();
        assert_eq!(symassreg_estimate(&dh, 1, &b()).unwrap(), vec![BigRational::from_integer(5.into())]);
    }

    #[test]
    fn regularity_of_ordinary_powers() {
        // a single point: I^r is saturated and reg(I^r) = r
        let one = q_points(&[(&[0, 0, 1], 1)]);
        let i = configuration_ideal(&one, &b()).unwrap();
        for r in 1..=3 {
            let sat = symbolic_power(&one, r, &b()).unwrap();
            assert_eq!(regularity_via_saturation(&i.power(r), &sat, &scaled(&one, r), &b()).unwrap(), r);
        }
        // three coordinate points: I² = ⟨x0x1, x0x2, x1x2⟩² is not saturated in degree 3 (x0x1x2 ∉ I²)
        let three = coordinate_points(2, None).unwrap();
        let i = configuration_ideal(&three, &b()).unwrap();
        let sat = symbolic_power(&three, 2, &b()).unwrap();
        let reg = regularity_via_saturation(&i.power(2), &sat, &scaled(&three, 2), &b()).unwrap();
        assert_eq!(reg, 4);
    }
}
