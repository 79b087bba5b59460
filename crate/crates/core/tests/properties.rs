mod common;

use containlab::configurations::plane_subset;
use containlab::containment::{vanishes_to_order, Lab, VerdictStatus};
use containlab::groebner::Budget;
use containlab::polynomials::{Monomial, Polynomial};
use proptest::prelude::*;

fn subset() -> impl Strategy<Value = Vec<usize>> {
    proptest::sample::subsequence((0..13).collect::<Vec<_>>(), 1..=5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// The library's substitution test and the Hasse-derivative test agree on products
    /// of powers of linear forms over 𝔽₃.
    #[test]
    fn vanishing_agrees_with_hasse_derivatives(
        idx in subset(),
        forms in proptest::collection::vec((0i64..3, 0i64..3, 0i64..3, 1u32..4), 1..4),
        m in 1u32..4,
    ) {
        let z = plane_subset(3, &idx).unwrap();
        let ring = z.ring();
        let field = ring.field();
        let mut f = ring.one();
        for (a, b, c, e) in forms {
            let l = ring.linear_form(&[field.from_i64(a), field.from_i64(b), field.from_i64(c)]).unwrap();
            if !l.is_zero() {
                f = f.checked_mul(&l.pow(e)).unwrap();
            }
        }
        prop_assert_eq!(vanishes_to_order(&z, &f, m), common::in_symbolic_power(&z, &f, m));
    }

    /// Whenever m ≥ N·r the containment is computed to hold, and it never holds for m < r.
    #[test]
    fn computed_verdicts_respect_the_proven_bounds(idx in subset(), m in 1u32..5, r in 1u32..3) {
        let lab = Lab::new(plane_subset(3, &idx).unwrap(), Budget::unlimited());
        let v = lab.check(m, r, 0).unwrap();
        if m >= 2 * r {
            prop_assert_eq!(v.status, VerdictStatus::Holds);
        }
        if m < r {
            prop_assert_eq!(v.status, VerdictStatus::Fails);
        }
    }
}

#[test]
fn hasse_oracle_sanity() {
    let z = plane_subset(2, &[6]).unwrap();
    let ring = z.ring();
    // (0:0:1) in characteristic 2: x0^2 vanishes to order 2 but not 3
    let sq = Polynomial::monomial(ring, Monomial::from_exponents(&[2, 0, 0]).unwrap(), ring.field().one());
    assert!(common::in_symbolic_power(&z, &sq, 2));
    assert!(!common::in_symbolic_power(&z, &sq, 3));
}
