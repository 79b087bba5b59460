//! Containment verdicts `I^(m) ⊆ M^j·I^r`, the numerical criteria that predict them,
//! resurgence searches and the conjectural containments checked on a window.
//!
//! Every decision comes from reducing the reduced-basis generators of `I^(m)` against a
//! Gröbner basis of the target. Theorems only contribute advisory tags.

use std::collections::HashMap;
use std::sync::Mutex;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::configurations::FatPointConfiguration;
use crate::groebner::{Budget, GroebnerError};
use crate::ideals::{irrelevant_power, symbolic_power, Ideal, IdealError};
use crate::invariants::{alpha, regularity_0dim, regularity_via_saturation, scaled, symassreg_estimate, InvariantError};
use crate::linalg;
use crate::oracle::vanishing_conditions;
use crate::polynomials::{Monomial, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ContainmentError {
    #[error("invalid arguments: {0}")]
    Arguments(String),
    #[error("re-verification disagreed: {0}")]
    Unsound(String),
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
}

impl ContainmentError {
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            ContainmentError::Ideal(IdealError::Groebner(GroebnerError::Budget(_)))
                | ContainmentError::Invariant(InvariantError::Ideal(IdealError::Groebner(GroebnerError::Budget(_))))
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictStatus {
    Holds,
    Fails,
    BudgetExceeded,
}

/// Theorems that predicted the outcome before it was computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Guarantee {
    /// m ≥ N·r.
    Els,
    /// r·reg(I) ≤ α(I^(m)).
    Postulation,
}

/// One containment check. Serializes to exactly the report fields.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContainmentVerdict {
    pub config: String,
    pub field: String,
    #[serde(rename = "N")]
    pub n: usize,
    pub m: u32,
    pub r: u32,
    pub j: u32,
    pub holds: Option<bool>,
    pub witness_degree: Option<u32>,
    pub witness: Option<String>,
    pub guarantees: Vec<Guarantee>,
    pub elapsed_ms: u64,
    pub status: VerdictStatus,
}

pub fn els_guarantee(n: usize, m: u32, r: u32) -> bool {
    m as u64 >= n as u64 * r as u64
}

/// N·r − (N − 1).
pub fn bhh_bound(n: usize, r: u32) -> u32 {
    (n as u32) * r - (n as u32 - 1)
}

/// N·r − 1, the weaker threshold asked about for N ≥ 3.
pub fn relaxed_bhh_bound(n: usize, r: u32) -> u32 {
    (n as u32) * r - 1
}

/// Both sides of `r·reg(I) ≤ α(I^(m))`, plus the two experimental replacements of the
/// left side: `reg(I^r)` and `r·reg(I^(k))/k` at the largest computed `k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PostulationOutcome {
    pub m: u32,
    pub r: u32,
    pub reg: u32,
    pub alpha_symbolic: u32,
    pub guaranteed: bool,
    pub experimental: Option<ExperimentalPostulation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExperimentalPostulation {
    pub reg_power: u32,
    pub reg_power_fires: bool,
    pub symassreg_estimate: String,
    pub symassreg_fires: bool,
}

/// A configuration with memoized ideals. Clones of the stored ideals share their
/// Gröbner basis caches, so concurrent checks compute each basis once.
pub struct Lab {
    config: FatPointConfiguration,
    budget: Budget,
    symbolic: Mutex<HashMap<u32, Ideal>>,
    targets: Mutex<HashMap<(u32, u32), Ideal>>,
}

fn memo<K: std::hash::Hash + Eq + Copy, E>(
    map: &Mutex<HashMap<K, Ideal>>,
    key: K,
    make: impl FnOnce() -> Result<Ideal, E>,
) -> Result<Ideal, E> {
    if let Some(i) = map.lock().unwrap().get(&key) {
        return Ok(i.clone());
    }
    let ideal = make()?;
    Ok(map.lock().unwrap().entry(key).or_insert(ideal).clone())
}

impl Lab {
    /// `budget` is the template for every query; each query restarts its clock.
    pub fn new(config: FatPointConfiguration, budget: Budget) -> Lab {
        Lab { config, budget, symbolic: Mutex::default(), targets: Mutex::default() }
    }

    pub fn config(&self) -> &FatPointConfiguration {
        &self.config
    }

    pub fn budget(&self) -> &Budget {
        &self.budget
    }

    pub fn ideal(&self) -> Result<Ideal, IdealError> {
        self.symbolic_power(1)
    }

    pub fn symbolic_power(&self, m: u32) -> Result<Ideal, IdealError> {
        memo(&self.symbolic, m, || symbolic_power(&self.config, m, &self.budget.restart()))
    }

    /// `M^j·I^r`.
    pub fn target(&self, r: u32, j: u32) -> Result<Ideal, IdealError> {
        memo(&self.targets, (r, j), || {
            let power = self.ideal()?.power(r);
            if j == 0 {
                Ok(power)
            } else {
                irrelevant_power(self.config.ring(), j).product(&power)
            }
        })
    }

    /// The postulation criterion for `I^(m) ⊆ I^r`, with the experimental variants when
    /// `experimental` is set.
    pub fn postulation(&self, m: u32, r: u32, experimental: bool) -> Result<PostulationOutcome, ContainmentError> {
        let budget = self.budget.restart();
        let reg = regularity_0dim(&self.ideal()?, &self.config, &budget)?;
        let alpha_symbolic = alpha(&self.symbolic_power(m)?, &budget)?;
        let experimental = if experimental {
            let sat = self.symbolic_power(r)?;
            let reg_power = regularity_via_saturation(&self.target(r, 0)?, &sat, &scaled(&self.config, r), &budget)?;
            let seq = symassreg_estimate(&self.config, 3, &budget)?;
            let last = seq.last().cloned().unwrap();
            let lhs = &last * BigRational::from_integer(BigInt::from(r));
            Some(ExperimentalPostulation {
                reg_power,
                reg_power_fires: reg_power <= alpha_symbolic,
                symassreg_estimate: last.to_string(),
                symassreg_fires: lhs <= BigRational::from_integer(BigInt::from(alpha_symbolic)),
            })
        } else {
            None
        };
        Ok(PostulationOutcome { m, r, reg, alpha_symbolic, guaranteed: r * reg <= alpha_symbolic, experimental })
    }

    fn verdict(&self, m: u32, r: u32, j: u32) -> ContainmentVerdict {
        ContainmentVerdict {
            config: self.config.name().to_string(),
            field: self.config.field().descriptor().to_string(),
            n: self.config.dim(),
            m,
            r,
            j,
            holds: None,
            witness_degree: None,
            witness: None,
            guarantees: Vec::new(),
            elapsed_ms: 0,
            status: VerdictStatus::BudgetExceeded,
        }
    }

    /// Decides `I^(m) ⊆ M^j·I^r`. Running out of budget yields a withheld verdict, never
    /// a guess; a failing verdict is re-derived from a basis of the target computed from
    /// rotated generators before it is returned.
    pub fn check(&self, m: u32, r: u32, j: u32) -> Result<ContainmentVerdict, ContainmentError> {
        if m == 0 || r == 0 {
            return Err(ContainmentError::Arguments(format!("m and r must be positive (m = {m}, r = {r})")));
        }
        let start = Instant::now();
        let mut v = self.verdict(m, r, j);
        match self.decide(m, r, j) {
            Ok(witness) => {
                v.status = if witness.is_some() { VerdictStatus::Fails } else { VerdictStatus::Holds };
                v.holds = Some(witness.is_none());
                v.witness_degree = witness.as_ref().and_then(|w| w.total_degree());
                v.witness = witness.map(|w| w.to_string());
                if j == 0 {
                    v.guarantees = self.guarantees(m, r);
                }
            }
            Err(e) if e.is_budget() => {}
            Err(e) => return Err(e),
        }
        v.elapsed_ms = start.elapsed().as_millis() as u64;
        Ok(v)
    }

    fn guarantees(&self, m: u32, r: u32) -> Vec<Guarantee> {
        let mut out = Vec::new();
        if els_guarantee(self.config.dim(), m, r) {
            out.push(Guarantee::Els);
        }
        if self.postulation(m, r, false).is_ok_and(|p| p.guaranteed) {
            out.push(Guarantee::Postulation);
        }
        out
    }

    /// The first generator of `I^(m)` outside `M^j·I^r`, verified twice.
    fn decide(&self, m: u32, r: u32, j: u32) -> Result<Option<Polynomial>, ContainmentError> {
        let sym = self.symbolic_power(m)?;
        let target = self.target(r, j)?;
        let budget = self.budget.restart();
        let c = target.contains(&sym, &budget)?;
        let Some(w) = c.witness else { return Ok(None) };
        if !reverify(&target, &w, &budget)? {
            return Err(ContainmentError::Unsound(format!("witness {w} reduces to zero against a second basis")));
        }
        Ok(Some(w))
    }

    /// `I^(j+1) ⊆ M·I^(j)`.
    pub fn nested(&self, j: u32) -> Result<(VerdictStatus, Option<Polynomial>), ContainmentError> {
        let run = || -> Result<Option<Polynomial>, ContainmentError> {
            let small = self.symbolic_power(j + 1)?;
            let big = irrelevant_power(self.config.ring(), 1).product(&self.symbolic_power(j)?)?;
            let budget = self.budget.restart();
            let c = big.contains(&small, &budget)?;
            match c.witness {
                Some(w) if !reverify(&big, &w, &budget)? => {
                    Err(ContainmentError::Unsound(format!("witness {w} reduces to zero against a second basis")))
                }
                w => Ok(w),
            }
        };
        match run() {
            Ok(None) => Ok((VerdictStatus::Holds, None)),
            Ok(Some(w)) => Ok((VerdictStatus::Fails, Some(w))),
            Err(e) if e.is_budget() => Ok((VerdictStatus::BudgetExceeded, None)),
            Err(e) => Err(e),
        }
    }
}

/// Normal form of `w` against a basis computed from scratch out of the rotated generators.
fn reverify(target: &Ideal, w: &Polynomial, budget: &Budget) -> Result<bool, ContainmentError> {
    let mut gens = target.generators().to_vec();
    if !gens.is_empty() {
        let k = (gens.len() / 2 + 1) % gens.len();
        gens.rotate_left(k);
        gens.reverse();
    }
    let fresh = Ideal::new(target.ring(), gens)?;
    Ok(!fresh.is_member(w, budget)?)
}

/// Membership of `f` in the degree-`deg f` piece of the ideal generated by `gens`, by the
/// rank of the spanning set `{x^a·g}`; no Gröbner basis involved.
pub fn linear_membership(f: &Polynomial, gens: &[Polynomial]) -> bool {
    let ring = f.ring();
    let field = ring.field();
    let Some(d) = f.total_degree() else { return true };
    let monomials = Monomial::all_of_degree(ring.num_vars(), d);
    let index: HashMap<Monomial, usize> = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let vector = |p: &Polynomial| {
        let mut v = vec![field.zero(); monomials.len()];
        for (m, c) in p.terms() {
            v[index[m]] = c.clone();
        }
        v
    };
    let mut rows = Vec::new();
    for g in gens {
        let Some(e) = g.total_degree() else { continue };
        if e > d {
            continue;
        }
        for a in Monomial::all_of_degree(ring.num_vars(), d - e) {
            rows.push(vector(&g.mul_term(&a, &field.one())));
        }
    }
    let n = monomials.len();
    let base = linalg::rank(field, rows.clone(), n);
    rows.push(vector(f));
    linalg::rank(field, rows, n) == base
}

/// `f ∈ I^(m)` by the oracle's vanishing conditions at every point.
pub fn vanishes_to_order(z: &FatPointConfiguration, f: &Polynomial, m: u32) -> bool {
    let field = z.field();
    let Some(d) = f.total_degree() else { return true };
    let monomials = Monomial::all_of_degree(z.ring().num_vars(), d);
    let v: Vec<_> = monomials
        .iter()
        .map(|mono| f.terms().iter().find(|(t, _)| t == mono).map_or(field.zero(), |(_, c)| c.clone()))
        .collect();
    z.points().iter().all(|p| {
        let conds = vanishing_conditions(field, p.coordinates(), m * p.multiplicity(), &monomials);
        linalg::is_zero_vector(field, &linalg::apply(field, &conds, &v))
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ResurgenceEstimate {
    pub config: String,
    pub m_max: u32,
    pub r_max: u32,
    pub verdicts: Vec<ContainmentVerdict>,
    pub violations: Vec<(u32, u32)>,
    /// max m/r over violations, as a reduced fraction.
    pub lower_bound: Option<String>,
    pub partial: bool,
    pub note: String,
}

/// Scans `m ∈ (r, min(m_max, N·r − 1)]`, `r ≤ r_max`: cells with `m ≤ r` or `m ≥ N·r`
/// are settled by the reverse law and the ELS theorem and skipped.
pub fn resurgence_search(lab: &Lab, m_max: u32, r_max: u32) -> Result<ResurgenceEstimate, ContainmentError> {
    let n = lab.config().dim();
    let cells: Vec<(u32, u32)> = (1..=r_max)
        .flat_map(|r| (r + 1..=m_max).map(move |m| (m, r)))
        .filter(|&(m, r)| !els_guarantee(n, m, r))
        .collect();
    let verdicts: Vec<ContainmentVerdict> =
        cells.par_iter().map(|&(m, r)| lab.check(m, r, 0)).collect::<Result<_, _>>()?;
    let violations: Vec<(u32, u32)> =
        verdicts.iter().filter(|v| v.status == VerdictStatus::Fails).map(|v| (v.m, v.r)).collect();
    let lower_bound = violations
        .iter()
        .map(|&(m, r)| BigRational::new(BigInt::from(m), BigInt::from(r)))
        .max()
        .map(|q| q.to_string());
    let partial = verdicts.iter().any(|v| v.status == VerdictStatus::BudgetExceeded);
    let note = match &lower_bound {
        Some(b) => format!("rho >= {b}; I^(m) is contained in I^r whenever m/r > rho"),
        None => "no violation in the window; I^(m) is contained in I^r whenever m/r > rho".to_string(),
    };
    Ok(ResurgenceEstimate {
        config: lab.config().name().to_string(),
        m_max,
        r_max,
        verdicts,
        violations,
        lower_bound,
        partial,
        note,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConjectureKind {
    /// I^(rN) ⊆ M^(r(N−1))·I^r.
    HarbourneHuneke,
    /// I^(2) ⊆ M·I.
    EisenbudMazur,
    /// I^(j+1) ⊆ M·I^(j).
    Nested,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConjectureItem {
    pub kind: ConjectureKind,
    pub m: u32,
    pub r: u32,
    pub j: u32,
    pub status: VerdictStatus,
    pub witness_degree: Option<u32>,
    /// For failures of the first kind: the witness also passed the linear-algebra
    /// membership test and the oracle's vanishing test.
    pub triple_verified: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConjectureReport {
    pub config: String,
    pub items: Vec<ConjectureItem>,
}

impl ConjectureReport {
    /// Items that failed, which for these statements would be new mathematics.
    pub fn failures(&self) -> Vec<&ConjectureItem> {
        self.items.iter().filter(|i| i.status == VerdictStatus::Fails).collect()
    }
}

/// The conjectural containments for `r ≤ r_max` and nested `j ≤ j_max`.
pub fn conjecture_checks(lab: &Lab, r_max: u32, j_max: u32) -> Result<ConjectureReport, ContainmentError> {
    let n = lab.config().dim() as u32;
    let mut items = Vec::new();
    for r in 1..=r_max {
        let (m, j) = (r * n, r * (n - 1));
        let v = lab.check(m, r, j)?;
        let triple = if v.status == VerdictStatus::Fails {
            let w = lab.symbolic_power(m)?.generators().iter().find(|g| Some(g.to_string()) == v.witness).cloned();
            let target = lab.target(r, j)?;
            Some(w.is_some_and(|w| !linear_membership(&w, target.generators()) && vanishes_to_order(lab.config(), &w, m)))
        } else {
            None
        };
        items.push(ConjectureItem {
            kind: ConjectureKind::HarbourneHuneke,
            m,
            r,
            j,
            status: v.status,
            witness_degree: v.witness_degree,
            triple_verified: triple,
        });
    }
    let em = lab.check(2, 1, 1)?;
    items.push(ConjectureItem {
        kind: ConjectureKind::EisenbudMazur,
        m: 2,
        r: 1,
        j: 1,
        status: em.status,
        witness_degree: em.witness_degree,
        triple_verified: None,
    });
    for j in 1..=j_max {
        let (status, w) = lab.nested(j)?;
        items.push(ConjectureItem {
            kind: ConjectureKind::Nested,
            m: j + 1,
            r: j,
            j: 1,
            status,
            witness_degree: w.and_then(|w| w.total_degree()),
            triple_verified: None,
        });
    }
    Ok(ConjectureReport { config: lab.config().name().to_string(), items })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::Field;
    use crate::configurations::{coordinate_points, dual_hesse, star, FatPoint};
    use crate::ideals::ordinary_in_symbolic;
    use crate::polynomials::PolynomialRing;
    use std::time::Duration;

    fn lab(z: FatPointConfiguration) -> Lab {
        Lab::new(z, Budget::unlimited())
    }

    fn single_point() -> FatPointConfiguration {
        let r = PolynomialRing::projective(Field::rationals(), 2).unwrap();
        let f = r.field().clone();
        FatPointConfiguration::new("pt", &r, vec![FatPoint::new(vec![f.from_i64(1), f.from_i64(2), f.from_i64(3)], 1)])
            .unwrap()
    }

    #[test]
    fn bounds() {
        assert!(els_guarantee(2, 4, 2));
        assert!(!els_guarantee(2, 3, 2));
        assert!(els_guarantee(3, 6, 2));
        assert_eq!(bhh_bound(2, 2), 3);
        assert_eq!(bhh_bound(3, 2), 4);
        assert_eq!(relaxed_bhh_bound(3, 2), 5);
        assert_eq!(bhh_bound(2, 1), 1);
    }

    #[test]
    fn dual_hesse_verdicts() {
        let l = lab(dual_hesse().0);
        let v = l.check(3, 2, 0).unwrap();
        assert_eq!((v.holds, v.status, v.witness_degree), (Some(false), VerdictStatus::Fails, Some(9)));
        assert!(v.guarantees.is_empty());
        let v = l.check(4, 2, 0).unwrap();
        assert_eq!(v.holds, Some(true));
        // 2·reg(I) = 10 ≤ 12 = α(I^(4)), so the criterion fires as well
        assert_eq!(v.guarantees, vec![Guarantee::Els, Guarantee::Postulation]);
        let p = l.postulation(3, 2, true).unwrap();
        assert_eq!((p.reg, p.alpha_symbolic, p.guaranteed), (5, 9, false));
        let json = serde_json::to_value(l.check(3, 2, 0).unwrap()).unwrap();
        let keys: Vec<&str> = json.as_object().unwrap().keys().map(|k| k.as_str()).collect();
        let mut expected =
            ["config", "field", "N", "m", "r", "j", "holds", "witness_degree", "witness", "guarantees", "elapsed_ms", "status"];
        expected.sort();
        let mut got = keys.clone();
        got.sort();
        assert_eq!(got, expected);
    }

    #[test]
    fn single_point_facts() {
        let l = lab(single_point());
        for m in 1..=3 {
            let p = l.postulation(m, m, false).unwrap();
            assert!(p.guaranteed);
            let v = l.check(m, m, 0).unwrap();
            assert_eq!(v.holds, Some(true));
            assert!(v.guarantees.contains(&Guarantee::Postulation));
        }
        let est = resurgence_search(&l, 4, 3).unwrap();
        assert!(est.violations.is_empty() && est.lower_bound.is_none() && !est.partial);
        let rep = conjecture_checks(&l, 1, 2).unwrap();
        assert!(rep.failures().is_empty());
    }

    #[test]
    fn monotone_in_m_and_j() {
        let l = lab(coordinate_points(2, None).unwrap());
        for r in 1..=2 {
            for m in 1..=4 {
                for j in 1..=2 {
                    let here = l.check(m, r, j).unwrap().holds.unwrap();
                    if here {
                        assert!(l.check(m + 1, r, j).unwrap().holds.unwrap());
                        assert!(l.check(m, r, j - 1).unwrap().holds.unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn star_configuration() {
        let l = lab(star(4, 2, None).unwrap());
        assert_eq!(l.check(3, 2, 0).unwrap().holds, Some(true));
        let p = l.postulation(3, 2, true).unwrap();
        if p.guaranteed {
            assert_eq!(l.check(3, 2, 0).unwrap().holds, Some(true));
        }
        let est = resurgence_search(&l, 4, 2).unwrap();
        assert!(!est.violations.contains(&(3, 2)));
    }

    #[test]
    fn reverse_law_on_coordinate_points() {
        let z = coordinate_points(2, None).unwrap();
        let b = Budget::unlimited();
        for m in 1..=3 {
            for r in 1..=3 {
                assert_eq!(ordinary_in_symbolic(&z, m, r, &b).unwrap().holds, m <= r, "m={m} r={r}");
            }
        }
    }

    #[test]
    fn independent_routes_agree_on_the_dual_hesse_witness() {
        let (z, a) = dual_hesse();
        let l = lab(z.clone());
        let f = a.product();
        assert!(vanishes_to_order(&z, &f, 3));
        assert!(!vanishes_to_order(&z, &f, 4));
        assert!(!linear_membership(&f, l.target(2, 0).unwrap().generators()));
        let sq = l.target(2, 0).unwrap().generators()[0].clone();
        assert!(linear_membership(&sq, l.target(2, 0).unwrap().generators()));
    }

    #[test]
    fn budget_is_reported_not_guessed() {
        let l = Lab::new(dual_hesse().0, Budget::new(Some(Duration::ZERO), Some(1)));
        let v = l.check(3, 2, 0).unwrap();
        assert_eq!((v.status, v.holds, v.witness), (VerdictStatus::BudgetExceeded, None, None));
        assert!(l.check(0, 1, 0).is_err());
    }
}
