//! Graded pieces of symbolic powers by plain linear algebra, with no Gröbner bases.
//!
//! For a point `P` with pivot coordinate `x_k` (the first nonzero one, normalized to 1),
//! the forms `g_i = x_i − P_i·x_k` (`i ≠ k`) together with `x_k` are coordinates in which
//! `I(P) = ⟨g_i⟩`. A degree-`d` form lies in `I(P)^m` iff its coefficients on the
//! monomials `g^a·x_k^(d−|a|)` with `|a| < m` vanish. Substituting `x_i = g_i + P_i·x_k`
//! gives those coefficients as integer-binomial linear functionals on `R_d`, so the
//! conditions are valid in every characteristic.
//!
//! The oracle only describes symbolic powers. Membership in ordinary powers is out of its
//! reach and is left to the Gröbner basis pipeline.

use num_bigint::BigInt;
use num_integer::binomial;

use crate::coefficients::{Field, Scalar};
use crate::configurations::{normalize_point, FatPointConfiguration};
use crate::linalg;
use crate::polynomials::{Monomial, Polynomial, PolynomialRing};

/// A basis of a subspace of `R_d`, as coefficient vectors over [`monomials`](Self::monomials).
#[derive(Debug, Clone)]
pub struct GradedPieceBasis {
    pub degree: u32,
    pub monomials: Vec<Monomial>,
    pub vectors: Vec<Vec<Scalar>>,
}

impl GradedPieceBasis {
    pub fn ambient_dimension(&self) -> usize {
        self.monomials.len()
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn polynomials(&self, ring: &PolynomialRing) -> Vec<Polynomial> {
        self.vectors
            .iter()
            .map(|v| Polynomial::from_terms(ring, self.monomials.iter().cloned().zip(v.iter().cloned())))
            .collect()
    }
}

fn coefficient_vector(f: &Polynomial, monomials: &[Monomial]) -> Vec<Scalar> {
    let field = f.field();
    let mut out = vec![field.zero(); monomials.len()];
    for (m, c) in f.terms() {
        let i = monomials.binary_search_by(|x| f.ring().cmp(m, x)).expect("homogeneous of the piece's degree");
        out[i] = c.clone();
    }
    out
}

/// Exponent vectors of length `n` with entries summing to at most `max`.
fn exponents_up_to(n: usize, max: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v: Vec<u32>| {
                let used: u32 = v.iter().sum();
                (0..=max - used).map(move |e| {
                    let mut w = v.clone();
                    w.push(e);
                    w
                })
            })
            .collect();
    }
    out
}

fn monomials_desc(ring: &PolynomialRing, d: u32) -> Vec<Monomial> {
    let mut ms = Monomial::all_of_degree(ring.num_vars(), d);
    ms.sort_by(|a, b| ring.cmp(b, a));
    ms
}

fn normalized(field: &Field, point: &[Scalar]) -> (Vec<Scalar>, usize) {
    let p = normalize_point(field, point).expect("nonzero point");
    let k = p.iter().position(|c| !field.is_zero(c)).unwrap();
    (p, k)
}

/// (I(P)^m)_d, spanned by the products `g^a · x_k^(d−|a|)` with `|a| ≥ m`. These are
/// distinct monomials in a linear coordinate system, hence independent.
pub fn power_piece(ring: &PolynomialRing, point: &[Scalar], m: u32, d: u32) -> GradedPieceBasis {
    let field = ring.field();
    let monomials = monomials_desc(ring, d);
    let (p, k) = normalized(field, point);
    let others: Vec<usize> = (0..ring.num_vars()).filter(|&i| i != k).collect();
    let g: Vec<Polynomial> = others
        .iter()
        .map(|&i| {
            let mut c = vec![field.zero(); ring.num_vars()];
            c[i] = field.one();
            c[k] = field.neg(&p[i]);
            ring.linear_form(&c).unwrap()
        })
        .collect();
    let xk = ring.var(k);
    let vectors = exponents_up_to(others.len(), d)
        .into_iter()
        .filter(|a| a.iter().sum::<u32>() >= m)
        .map(|a| {
            let rest = d - a.iter().sum::<u32>();
            let f = a.iter().zip(&g).fold(xk.pow(rest), |acc, (&e, gi)| &acc * &gi.pow(e));
            coefficient_vector(&f, &monomials)
        })
        .collect();
    GradedPieceBasis { degree: d, monomials, vectors }
}

/// Linear functionals on `R_d` (in the order of `monomials`) whose common kernel is
/// `(I(P)^m)_d`: one per exponent `a` on the non-pivot coordinates with `|a| < m`.
pub fn vanishing_conditions(field: &Field, point: &[Scalar], m: u32, monomials: &[Monomial]) -> Vec<Vec<Scalar>> {
    let (p, k) = normalized(field, point);
    let n = p.len();
    let others: Vec<usize> = (0..n).filter(|&i| i != k).collect();
    let mut powers: Vec<Vec<Scalar>> = vec![vec![]; n];
    let maxdeg = monomials.first().map_or(0, |m| m.degree());
    for &i in &others {
        powers[i] = (0..=maxdeg).map(|e| field.pow(&p[i], e as u64)).collect();
    }
    if m == 0 {
        return vec![];
    }
    exponents_up_to(others.len(), m - 1)
        .into_iter()
        .map(|a| {
            monomials
                .iter()
                .map(|mono| {
                    let mut c = field.one();
                    for (&i, &ai) in others.iter().zip(&a) {
                        let e = mono.exponent(i);
                        if ai > e {
                            return field.zero();
                        }
                        let b = field.from_bigint(&binomial(BigInt::from(e), BigInt::from(ai)));
                        c = field.mul(&c, &field.mul(&b, &powers[i][(e - ai) as usize]));
                    }
                    c
                })
                .collect()
        })
        .collect()
}

fn stacked_conditions(z: &FatPointConfiguration, m: u32, monomials: &[Monomial]) -> Vec<Vec<Scalar>> {
    z.points()
        .iter()
        .flat_map(|p| vanishing_conditions(z.field(), p.coordinates(), m * p.multiplicity(), monomials))
        .collect()
}

/// (I^(m))_d = ⋂ (I(P_i)^(m·m_i))_d, as the kernel of all points' vanishing conditions.
pub fn symbolic_piece(z: &FatPointConfiguration, m: u32, d: u32) -> GradedPieceBasis {
    let monomials = monomials_desc(z.ring(), d);
    let rows = stacked_conditions(z, m, &monomials);
    let vectors = linalg::kernel_fast(z.field(), rows, monomials.len());
    GradedPieceBasis { degree: d, monomials, vectors }
}

/// dim (I^(m))_d, by rank only.
pub fn symbolic_piece_dim(z: &FatPointConfiguration, m: u32, d: u32) -> usize {
    let monomials = monomials_desc(z.ring(), d);
    let rows = stacked_conditions(z, m, &monomials);
    if z.field().characteristic() == 0 {
        linalg::kernel_multimodular(z.field(), rows, monomials.len()).len()
    } else {
        monomials.len() - linalg::rank(z.field(), rows, monomials.len())
    }
}

/// Least `d` with (I^(m))_d ≠ 0. A product of `m·m_i`-th powers of linear forms through
/// each point bounds the scan.
pub fn alpha_oracle(z: &FatPointConfiguration, m: u32) -> u32 {
    let start = m * z.points().iter().map(|p| p.multiplicity()).max().unwrap_or(1);
    let stop = m * z.points().iter().map(|p| p.multiplicity()).sum::<u32>();
    (start..=stop).find(|&d| symbolic_piece_dim(z, m, d) > 0).unwrap_or(stop)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::configurations::{coordinate_points, dual_hesse, punctured_plane, FatPoint};
    use crate::invariants::binomial as binom;

    fn p2() -> PolynomialRing {
        PolynomialRing::projective(Field::rationals(), 2).unwrap()
    }

    fn pt(r: &PolynomialRing, v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| r.field().from_i64(x)).collect()
    }

    #[test]
    fn power_pieces_at_a_coordinate_point() {
        let r = p2();
        let p = pt(&r, &[0, 0, 1]);
        let b = power_piece(&r, &p, 1, 1);
        assert_eq!(b.dim(), 2);
        let polys: Vec<String> = b.polynomials(&r).iter().map(|f| f.to_string()).collect();
        assert!(polys.contains(&"x0".to_string()) && polys.contains(&"x1".to_string()));
        assert_eq!(power_piece(&r, &p, 2, 1).dim(), 0);
        assert_eq!(power_piece(&r, &p, 2, 2).dim(), 3);
    }

    #[test]
    fn power_piece_matches_conditions_and_closed_form() {
        let r = p2();
        let f = r.field().clone();
        for p in [pt(&r, &[0, 0, 1]), pt(&r, &[1, 2, -3]), pt(&r, &[0, 1, 5])] {
            for m in 1..=3 {
                for d in 0..=5 {
                    let span = power_piece(&r, &p, m, d);
                    let ms = &span.monomials;
                    let conds = vanishing_conditions(&f, &p, m, ms);
                    let expected = if d < m { 0 } else { binom(d as u64 + 2, 2) - binom(m as u64 + 1, 2) };
                    assert_eq!(span.dim() as u64, expected, "P={p:?} m={m} d={d}");
                    assert_eq!(linalg::rank(&f, span.vectors.clone(), ms.len()), span.dim());
                    for v in &span.vectors {
                        assert!(linalg::is_zero_vector(&f, &linalg::apply(&f, &conds, v)));
                    }
                    assert_eq!(ms.len() - linalg::rank(&f, conds, ms.len()), span.dim());
                }
            }
        }
    }

    #[test]
    fn conditions_work_in_characteristic_two() {
        // every second partial of x0^2 vanishes in characteristic 2, yet x0^2 ∉ I(P)^3
        let r = PolynomialRing::projective(Field::prime(2).unwrap(), 2).unwrap();
        let ms = monomials_desc(&r, 2);
        let in_power = |p: &[i64], m: u32, f: &str| {
            let conds = vanishing_conditions(r.field(), &pt(&r, p), m, &ms);
            let v = coefficient_vector(&r.parse(f).unwrap(), &ms);
            linalg::is_zero_vector(r.field(), &linalg::apply(r.field(), &conds, &v))
        };
        assert!(in_power(&[0, 0, 1], 2, "x0^2"));
        assert!(!in_power(&[0, 0, 1], 3, "x0^2"));
        assert!(in_power(&[1, 1, 1], 2, "x0^2 + x1^2"));
        assert!(!in_power(&[1, 1, 1], 2, "x0^2 + x1*x2"));
    }

    #[test]
    fn symbolic_pieces_of_named_configurations() {
        let (dh, _) = dual_hesse();
        assert_eq!(symbolic_piece_dim(&dh, 1, 3), 0);
        assert_eq!(symbolic_piece_dim(&dh, 1, 4), 3);
        assert_eq!(symbolic_piece_dim(&dh, 3, 8), 0);
        assert!(symbolic_piece_dim(&dh, 3, 9) >= 1);
        assert_eq!(alpha_oracle(&dh, 3), 9);
        let pp = punctured_plane(3).unwrap();
        let piece = symbolic_piece(&pp, 3, 9);
        assert!(piece.dim() >= 1);
        for f in piece.polynomials(pp.ring()) {
            for p in pp.points() {
                assert!(pp.field().is_zero(&f.evaluate_scalars(p.coordinates()).unwrap()));
            }
        }
    }

    #[test]
    fn alpha_of_small_schemes() {
        let r = p2();
        let one = FatPointConfiguration::new("p", &r, vec![FatPoint::new(pt(&r, &[1, 1, 1]), 1)]).unwrap();
        assert_eq!(alpha_oracle(&one, 2), 2);
        let three = coordinate_points(2, None).unwrap();
        assert_eq!(alpha_oracle(&three, 2), 3);
        let fat = FatPointConfiguration::new("f", &r, vec![FatPoint::new(pt(&r, &[0, 0, 1]), 2)]).unwrap();
        assert_eq!(alpha_oracle(&fat, 2), 4);
    }

    #[test]
    fn symbolic_piece_is_monotone_in_degree() {
        let (dh, _) = dual_hesse();
        let dims: Vec<usize> = (0..=10).map(|d| symbolic_piece_dim(&dh, 2, d)).collect();
        assert!(dims.windows(2).all(|w| w[0] <= w[1]), "{dims:?}");
    }
}
