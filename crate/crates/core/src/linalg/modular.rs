//! Kernels over ℚ and ℚ(ζ_n) by reduction modulo primes `p ≡ 1 (mod n)`.
//!
//! Each ring map `ℤ[ζ] → 𝔽_p, ζ ↦ ω` (ω a primitive n-th root of unity mod p) can only
//! lower the rank, so the rank mod p is a lower bound for the true rank. Kernel vectors are
//! rebuilt from the reduced echelon forms by Chinese remaindering and rational
//! reconstruction, then checked exactly over the field. The verified vectors bound the
//! nullity from below and the modular rank bounds it from above, so the result is exact.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::coefficients::{is_prime, pow_mod, Field, FieldDescriptor, Scalar};

use super::{clear_denominators, is_zero_vector};

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// A prime with the images of ζ under every embedding, and the inverse Vandermonde matrix
/// that turns the images of an element back into its coordinates mod p.
struct ModPrime {
    p: u64,
    nodes: Vec<u64>,
    vandermonde_inv: Vec<Vec<u64>>,
}

fn primitive_root_of_order(n: u64, p: u64) -> u64 {
    let factors = prime_factors(n);
    (2..p)
        .map(|x| pow_mod(x, (p - 1) / n, p))
        .find(|&w| factors.iter().all(|&q| pow_mod(w, n / q, p) != 1))
        .expect("p ≡ 1 mod n")
}

fn invert(mut m: Vec<Vec<u64>>, p: u64) -> Vec<Vec<u64>> {
    let k = m.len();
    let mut inv: Vec<Vec<u64>> = (0..k).map(|i| (0..k).map(|j| u64::from(i == j)).collect()).collect();
    for c in 0..k {
        let r = (c..k).find(|&r| m[r][c] != 0).expect("distinct nodes");
        m.swap(c, r);
        inv.swap(c, r);
        let s = inv_mod(m[c][c], p);
        for j in 0..k {
            m[c][j] = m[c][j] * s % p;
            inv[c][j] = inv[c][j] * s % p;
        }
        for r in 0..k {
            if r != c && m[r][c] != 0 {
                let f = m[r][c];
                for j in 0..k {
                    m[r][j] = (m[r][j] + p - f * m[c][j] % p) % p;
                    inv[r][j] = (inv[r][j] + p - f * inv[c][j] % p) % p;
                }
            }
        }
    }
    inv
}

fn mod_primes(n: u64, degree: usize) -> impl Iterator<Item = ModPrime> {
    let units: Vec<u64> = (1..=n).filter(|e| e.gcd(&n) == 1).take(degree).collect();
    let top = (1u64 << 31) - 1;
    let start = top - (top - 1) % n;
    (0..).map(move |i| start - i * n).take_while(move |&p| p > n + 1).filter(|&p| is_prime(p)).map(move |p| {
        let w = primitive_root_of_order(n, p);
        let nodes: Vec<u64> = units.iter().map(|&e| pow_mod(w, e, p)).collect();
        let vander = nodes.iter().map(|&x| (0..degree).map(|c| pow_mod(x, c as u64, p)).collect()).collect();
        ModPrime { p, vandermonde_inv: invert(vander, p), nodes }
    })
}

fn reduce_int(a: &BigInt, p: u64) -> u64 {
    a.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

fn reduce_rational(q: &BigRational, p: u64) -> Option<u64> {
    let d = reduce_int(q.denom(), p);
    (d != 0).then(|| reduce_int(q.numer(), p) * inv_mod(d, p) % p)
}

/// Image of `a` under ζ ↦ `node`, or `None` if a denominator vanishes mod p.
fn image(a: &Scalar, node: u64, p: u64) -> Option<u64> {
    match a {
        Scalar::Q(q) => reduce_rational(q, p),
        Scalar::Fp(_) => unreachable!("prime fields use exact elimination"),
        Scalar::Cyc(v) => {
            let mut acc = 0;
            let mut pw = 1;
            for c in v.iter() {
                if !c.is_zero() {
                    acc = (acc + reduce_rational(c, p)? * pw) % p;
                }
                pw = pw * node % p;
            }
            Some(acc)
        }
    }
}

/// Reduced row echelon form mod p: pivot columns and, for each pivot row, its entries.
fn rref(mut rows: Vec<Vec<u64>>, ncols: usize, p: u64) -> (Vec<usize>, Vec<Vec<u64>>) {
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..ncols {
        if top == rows.len() {
            break;
        }
        let Some(r) = (top..rows.len()).find(|&r| rows[r][col] != 0) else { continue };
        rows.swap(top, r);
        let s = inv_mod(rows[top][col], p);
        for x in rows[top][col..].iter_mut() {
            *x = *x * s % p;
        }
        let (head, tail) = rows.split_at_mut(top);
        let (pivot, tail) = tail.split_first_mut().unwrap();
        for row in head.iter_mut().chain(tail.iter_mut()) {
            let f = row[col];
            if f != 0 {
                for (x, &y) in row[col..].iter_mut().zip(&pivot[col..]) {
                    *x = (*x + p - f * y % p) % p;
                }
            }
        }
        pivots.push(col);
        top += 1;
    }
    rows.truncate(top);
    (pivots, rows)
}

/// `u ≡ a/b (mod m)` with |a|, b below √(m/2).
fn rational_reconstruction(u: &BigInt, m: &BigInt) -> Option<(BigInt, BigInt)> {
    let bound = (m >> 1u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), u.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        (r0, r1, t0, t1) = (r1, r2, t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(if t1.sign() == Sign::Minus { (-r1, -t1) } else { (r1, t1) })
}

struct Accumulator {
    modulus: BigInt,
    /// residues[f][i][c]: coordinate c of the entry of kernel vector f at pivot row i.
    residues: Vec<Vec<Vec<BigInt>>>,
}

impl Accumulator {
    fn add(&mut self, p: u64, values: Vec<Vec<Vec<u64>>>) {
        let pb = BigInt::from(p);
        let m_inv = BigInt::from(inv_mod(reduce_int(&self.modulus, p), p));
        for (acc_f, val_f) in self.residues.iter_mut().zip(values) {
            for (acc_i, val_i) in acc_f.iter_mut().zip(val_f) {
                for (a, b) in acc_i.iter_mut().zip(val_i) {
                    let t = ((BigInt::from(b) - &*a) * &m_inv).mod_floor(&pb);
                    *a += &self.modulus * t;
                }
            }
        }
        self.modulus *= pb;
    }

    /// Rational coordinates for every residue, sharing a running denominator.
    fn reconstruct(&self) -> Option<Vec<Vec<Vec<BigRational>>>> {
        let mut den = BigInt::one();
        self.residues
            .iter()
            .map(|f| {
                f.iter()
                    .map(|i| {
                        i.iter()
                            .map(|u| {
                                let (a, b) = rational_reconstruction(&(u * &den), &self.modulus)?;
                                let q = BigRational::new(a, &b * &den);
                                den *= b;
                                Some(q)
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect()
    }
}

fn cyclotomic_order(field: &Field) -> u64 {
    match field.descriptor() {
        FieldDescriptor::Cyclotomic(n) => n as u64,
        _ => 1,
    }
}

/// Kernel basis over ℚ or ℚ(ζ_n), one vector per free column with a 1 there. The
/// result is verified exactly before it is returned.
pub fn kernel_multimodular(field: &Field, mut rows: Vec<Vec<Scalar>>, ncols: usize) -> Vec<Vec<Scalar>> {
    assert!(field.characteristic() == 0, "prime fields use exact elimination");
    for r in rows.iter_mut() {
        assert_eq!(r.len(), ncols, "ragged matrix");
        clear_denominators(field, r);
    }
    rows.retain(|r| !is_zero_vector(field, r));
    if rows.is_empty() {
        return (0..ncols).map(|c| (0..ncols).map(|j| if j == c { field.one() } else { field.zero() }).collect()).collect();
    }
    let degree = field.extension_degree();
    let mut best: Option<Vec<usize>> = None;
    let mut acc: Option<Accumulator> = None;
    let mut used = 0usize;
    let mut next_attempt = 1usize;
    for prime in mod_primes(cyclotomic_order(field), degree) {
        let p = prime.p;
        let reduced: Option<Vec<(Vec<usize>, Vec<Vec<u64>>)>> = prime
            .nodes
            .par_iter()
            .map(|&w| {
                let m = rows.iter().map(|r| r.iter().map(|a| image(a, w, p)).collect::<Option<Vec<u64>>>()).collect::<Option<Vec<_>>>()?;
                Some(rref(m, ncols, p))
            })
            .collect();
        let Some(reduced) = reduced else { continue };
        let pivots = reduced[0].0.clone();
        if reduced.iter().any(|(pv, _)| *pv != pivots) {
            continue;
        }
        // the true pivot set has maximal rank and is lexicographically least among those
        let better = match &best {
            None => true,
            Some(b) => pivots.len() > b.len() || (pivots.len() == b.len() && pivots < *b),
        };
        if better {
            best = Some(pivots.clone());
            acc = None;
            used = 0;
            next_attempt = 1;
        } else if Some(&pivots) != best.as_ref() {
            continue;
        }
        if pivots.len() == ncols {
            return Vec::new();
        }
        let free: Vec<usize> = (0..ncols).filter(|c| pivots.binary_search(c).is_err()).collect();
        // coordinates mod p of -R[i][f] for every free column f and pivot row i
        let values: Vec<Vec<Vec<u64>>> = free
            .iter()
            .map(|&f| {
                (0..pivots.len())
                    .map(|i| {
                        let imgs: Vec<u64> = reduced.iter().map(|(_, r)| (p - r[i][f]) % p).collect();
                        prime
                            .vandermonde_inv
                            .iter()
                            .map(|row| row.iter().zip(&imgs).fold(0, |s, (&a, &b)| (s + a * b) % p))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let a = acc.get_or_insert_with(|| Accumulator {
            modulus: BigInt::one(),
            residues: vec![vec![vec![BigInt::zero(); degree]; pivots.len()]; free.len()],
        });
        a.add(p, values);
        used += 1;
        if used < next_attempt {
            continue;
        }
        next_attempt = used + used.div_ceil(4).max(1);
        let Some(coords) = a.reconstruct() else { continue };
        let candidate: Vec<Vec<Scalar>> = free
            .iter()
            .zip(coords)
            .map(|(&f, entries)| {
                let mut v = vec![field.zero(); ncols];
                v[f] = field.one();
                for (&pc, c) in pivots.iter().zip(entries) {
                    v[pc] = match field.descriptor() {
                        FieldDescriptor::Cyclotomic(_) => field.from_cyclotomic_coefficients(&c).unwrap(),
                        _ => Scalar::Q(c[0].clone()),
                    };
                }
                v
            })
            .collect();
        let ok = candidate.par_iter().all(|v| {
            rows.iter().all(|r| {
                let s = r.iter().zip(v).fold(field.zero(), |s, (x, y)| {
                    if field.is_zero(x) || field.is_zero(y) {
                        s
                    } else {
                        field.add(&s, &field.mul(x, y))
                    }
                });
                field.is_zero(&s)
            })
        });
        if ok {
            return candidate;
        }
    }
    unreachable!("ran out of word-size primes")
}
