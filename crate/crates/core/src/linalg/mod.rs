//! Exact linear algebra over the coefficient fields: fraction-free (Bareiss) elimination,
//! rank, determinant and kernels.
//!
//! Rows are first scaled to clear rational denominators, so over ℚ and ℚ(ζ) every
//! intermediate entry is an integral combination of the input entries and the Bareiss
//! divisions are exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;

use crate::coefficients::{Field, Scalar};

mod modular;

pub use modular::kernel_multimodular;

fn denominator_lcm(a: &Scalar, acc: &mut BigInt) {
    let mut take = |q: &BigRational| {
        *acc = acc.lcm(q.denom());
    };
    match a {
        Scalar::Q(q) => take(q),
        Scalar::Fp(_) => {}
        Scalar::Cyc(v) => v.iter().for_each(take),
    }
}

/// Multiplies a row by the lcm of its denominators.
pub(crate) fn clear_denominators(field: &Field, row: &mut [Scalar]) {
    let mut l = BigInt::one();
    for a in row.iter() {
        denominator_lcm(a, &mut l);
    }
    if !l.is_one() {
        let s = field.from_bigint(&l);
        for a in row.iter_mut() {
            *a = field.mul(a, &s);
        }
    }
}

/// Row echelon form with the column index of each pivot row.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub rows: Vec<Vec<Scalar>>,
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Bareiss elimination. Zero rows are dropped from the result.
pub fn echelon(field: &Field, mut rows: Vec<Vec<Scalar>>, ncols: usize) -> Echelon {
    for r in rows.iter_mut() {
        assert_eq!(r.len(), ncols, "ragged matrix");
        clear_denominators(field, r);
    }
    let mut pivots = Vec::new();
    let mut prev = field.one();
    let mut top = 0;
    for col in 0..ncols {
        if top == rows.len() {
            break;
        }
        let Some(p) = (top..rows.len()).find(|&i| !field.is_zero(&rows[i][col])) else {
            continue;
        };
        rows.swap(top, p);
        let (head, tail) = rows.split_at_mut(top + 1);
        let pivot_row = &head[top];
        let pv = &pivot_row[col];
        // exact division by the previous pivot, done as one inversion per step
        let prev_inv = field.inv(&prev).expect("nonzero previous pivot");
        for row in tail.iter_mut() {
            let factor = row[col].clone();
            if field.is_zero(&factor) {
                if !field.is_one(&prev) || !field.is_one(pv) {
                    for j in col + 1..ncols {
                        if !field.is_zero(&row[j]) {
                            row[j] = field.mul(&field.mul(pv, &row[j]), &prev_inv);
                        }
                    }
                }
                continue;
            }
            row[col] = field.zero();
            for j in col + 1..ncols {
                let v = field.sub(&field.mul(pv, &row[j]), &field.mul(&factor, &pivot_row[j]));
                row[j] = field.mul(&v, &prev_inv);
            }
        }
        prev = rows[top][col].clone();
        pivots.push(col);
        top += 1;
    }
    rows.truncate(top);
    Echelon { rows, pivots }
}

pub fn rank(field: &Field, rows: Vec<Vec<Scalar>>, ncols: usize) -> usize {
    echelon(field, rows, ncols).rank()
}

/// Determinant of a square matrix.
pub fn determinant(field: &Field, rows: &[Vec<Scalar>]) -> Scalar {
    let n = rows.len();
    let mut m: Vec<Vec<Scalar>> = rows.to_vec();
    let mut sign_flip = false;
    let mut prev = field.one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !field.is_zero(&m[i][k])) else {
            return field.zero();
        };
        if p != k {
            m.swap(p, k);
            sign_flip = !sign_flip;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = field.sub(&field.mul(&m[k][k], &m[i][j]), &field.mul(&m[i][k], &m[k][j]));
                m[i][j] = field.div(&v, &prev).expect("nonzero previous pivot");
            }
            m[i][k] = field.zero();
        }
        prev = m[k][k].clone();
    }
    let d = if n == 0 { field.one() } else { m[n - 1][n - 1].clone() };
    if sign_flip {
        field.neg(&d)
    } else {
        d
    }
}

/// Basis of `{v : A·v = 0}`, one vector per free column, with a 1 in that column.
pub fn kernel(field: &Field, rows: Vec<Vec<Scalar>>, ncols: usize) -> Vec<Vec<Scalar>> {
    let e = echelon(field, rows, ncols);
    let mut is_pivot = vec![false; ncols];
    for &p in &e.pivots {
        is_pivot[p] = true;
    }
    let mut out = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![field.zero(); ncols];
        v[free] = field.one();
        for (row, &pc) in e.rows.iter().zip(&e.pivots).rev() {
            let mut acc = field.zero();
            for j in pc + 1..ncols {
                if !field.is_zero(&row[j]) && !field.is_zero(&v[j]) {
                    acc = field.add(&acc, &field.mul(&row[j], &v[j]));
                }
            }
            if !field.is_zero(&acc) {
                v[pc] = field.neg(&field.div(&acc, &row[pc]).expect("nonzero pivot"));
            }
        }
        out.push(v);
    }
    out
}

/// Kernel basis by the fastest exact route for the field: direct elimination over 𝔽_p,
/// multi-modular reconstruction over ℚ and ℚ(ζ_n). Same normalization as [`kernel`].
pub fn kernel_fast(field: &Field, rows: Vec<Vec<Scalar>>, ncols: usize) -> Vec<Vec<Scalar>> {
    if field.characteristic() == 0 {
        kernel_multimodular(field, rows, ncols)
    } else {
        kernel(field, rows, ncols)
    }
}

/// `A·v`.
pub fn apply(field: &Field, rows: &[Vec<Scalar>], v: &[Scalar]) -> Vec<Scalar> {
    rows.iter()
        .map(|r| {
            r.iter().zip(v).fold(field.zero(), |acc, (a, b)| {
                if field.is_zero(a) || field.is_zero(b) {
                    acc
                } else {
                    field.add(&acc, &field.mul(a, b))
                }
            })
        })
        .collect()
}

/// Integer-valued convenience constructor for tests and small fixed matrices.
pub fn from_integers(field: &Field, rows: &[&[i64]]) -> Vec<Vec<Scalar>> {
    rows.iter().map(|r| r.iter().map(|&v| field.from_i64(v)).collect()).collect()
}

/// `true` when all entries are zero.
pub fn is_zero_vector(field: &Field, v: &[Scalar]) -> bool {
    v.iter().all(|a| field.is_zero(a))
}
