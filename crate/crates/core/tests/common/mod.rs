//! Checks written independently of the library's interpolation code.

#![allow(dead_code)]

use containlab::coefficients::{Field, Scalar};
use containlab::configurations::FatPointConfiguration;
use containlab::polynomials::Polynomial;

fn binomial_mod(field: &Field, n: u32, k: u32) -> Scalar {
    let mut c: u128 = 1;
    for i in 0..k as u128 {
        c = c * (n as u128 - i) / (i + 1);
    }
    field.from_i64(i64::try_from(c).expect("binomial fits in i64"))
}

/// Hasse derivative `D^a f` evaluated at `p`: `Σ c·C(e, a)·p^(e−a)` over the terms `c·x^e`.
pub fn hasse_derivative_at(f: &Polynomial, a: &[u32], p: &[Scalar]) -> Scalar {
    let field = f.field();
    let mut acc = field.zero();
    'terms: for (mono, c) in f.terms() {
        let mut v = c.clone();
        for (i, (&ai, pi)) in a.iter().zip(p).enumerate() {
            let e = mono.exponent(i);
            if e < ai {
                continue 'terms;
            }
            v = field.mul(&v, &binomial_mod(field, e, ai));
            v = field.mul(&v, &field.pow(pi, (e - ai) as u64));
        }
        acc = field.add(&acc, &v);
    }
    acc
}

fn multi_indices(n: usize, below: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 0..below {
        for mut rest in multi_indices(n - 1, below - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `f` vanishes to order `m·m_i` at every point of `z`: all Hasse derivatives of order
/// below that vanish there. Valid in every characteristic.
pub fn in_symbolic_power(z: &FatPointConfiguration, f: &Polynomial, m: u32) -> bool {
    z.points().iter().all(|pt| {
        let order = m * pt.multiplicity();
        multi_indices(z.dim() + 1, order)
            .iter()
            .all(|a| f.field().is_zero(&hasse_derivative_at(f, a, pt.coordinates())))
    })
}
