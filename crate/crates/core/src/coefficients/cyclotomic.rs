//! Dense univariate arithmetic over ℚ and the cyclotomic quotient ℚ[t]/Φ_n.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A univariate polynomial over ℚ, coefficients stored by ascending degree
/// with no trailing zeros. The zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalUnivariate {
    coeffs: Vec<BigRational>,
}

impl RationalUnivariate {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        trim(&mut coeffs);
        RationalUnivariate { coeffs }
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(mul(&self.coeffs, &other.coeffs))
    }

    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let (q, r) = div_rem(&self.coeffs, &divisor.coeffs);
        (Self::new(q), Self::new(r))
    }
}

impl fmt::Display for RationalUnivariate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_ascending(&self.coeffs, "t", true))
    }
}

pub(crate) fn trim(p: &mut Vec<BigRational>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub(crate) fn mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    trim(&mut out);
    out
}

fn sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out: Vec<BigRational> = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            match b.get(i) {
                Some(y) => x - y,
                None => x,
            }
        })
        .collect();
    trim(&mut out);
    out
}

/// Euclidean division; `b` must be nonzero.
pub(crate) fn div_rem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    assert!(!b.is_empty(), "division by the zero polynomial");
    let mut rem = a.to_vec();
    trim(&mut rem);
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let lead = b.last().unwrap();
    let mut quot = vec![BigRational::zero(); rem.len() - b.len() + 1];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let c = rem.last().unwrap() / lead;
        for (i, y) in b.iter().enumerate() {
            rem[shift + i] -= &c * y;
        }
        quot[shift] = c;
        // the top coefficient cancels exactly
        rem.pop();
        trim(&mut rem);
    }
    trim(&mut quot);
    (quot, rem)
}

/// Returns `s` with `s * a ≡ gcd(a, m) (mod m)` where the gcd is normalized to be monic.
/// When `a` and `m` are coprime this is the inverse of `a` modulo `m`.
pub(crate) fn ext_gcd_inverse(a: &[BigRational], m: &[BigRational]) -> Option<Vec<BigRational>> {
    let (mut r0, mut r1) = (m.to_vec(), a.to_vec());
    trim(&mut r0);
    trim(&mut r1);
    let (mut s0, mut s1): (Vec<BigRational>, Vec<BigRational>) = (Vec::new(), vec![BigRational::one()]);
    while !r1.is_empty() {
        let (q, r) = div_rem(&r0, &r1);
        let s2 = sub(&s0, &mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if r0.len() != 1 {
        return None;
    }
    let scale = r0[0].recip();
    let (_, s) = div_rem(&s0.iter().map(|c| c * &scale).collect::<Vec<_>>(), m);
    Some(s)
}

/// The n-th cyclotomic polynomial Φ_n, obtained by dividing tⁿ − 1 by every Φ_d with d | n, d < n.
pub fn cyclotomic_modulus(n: u32) -> RationalUnivariate {
    assert!(n >= 1, "cyclotomic index must be positive");
    let mut num = vec![BigRational::zero(); n as usize + 1];
    num[0] = -BigRational::one();
    num[n as usize] = BigRational::one();
    for d in 1..n {
        if n % d == 0 {
            let phi_d = cyclotomic_modulus(d);
            let (q, r) = div_rem(&num, phi_d.coefficients());
            debug_assert!(r.is_empty());
            num = q;
        }
    }
    RationalUnivariate::new(num)
}

/// Euler's totient.
pub fn euler_phi(n: u32) -> u32 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u32
}

/// Precomputed data for ℚ(ζ_n) = ℚ[t]/Φ_n.
#[derive(Debug)]
pub(crate) struct CyclotomicData {
    pub degree: usize,
    /// `reduction[k]` is t^k mod Φ_n as a dense vector of length `degree`, for k < 2·degree − 1.
    reduction: Vec<Vec<BigRational>>,
    /// The same table with integer entries; Φ_n is monic over ℤ.
    reduction_int: Vec<Vec<BigInt>>,
    modulus: Vec<BigRational>,
}

impl CyclotomicData {
    pub fn new(n: u32) -> Self {
        let modulus = cyclotomic_modulus(n).coefficients().to_vec();
        let degree = modulus.len() - 1;
        let mut reduction = Vec::with_capacity(2 * degree);
        for k in 0..(2 * degree).max(1) {
            let mut tk = vec![BigRational::zero(); k + 1];
            tk[k] = BigRational::one();
            let (_, mut r) = div_rem(&tk, &modulus);
            r.resize(degree, BigRational::zero());
            reduction.push(r);
        }
        let reduction_int = reduction
            .iter()
            .map(|r| r.iter().map(|c| c.to_integer()).collect())
            .collect();
        CyclotomicData { degree, reduction, reduction_int, modulus }
    }

    /// Reduces a dense coefficient vector of arbitrary length into canonical form.
    pub fn reduce(&self, coeffs: &[BigRational]) -> Vec<BigRational> {
        if coeffs.len() <= self.degree {
            let mut out = coeffs.to_vec();
            out.resize(self.degree, BigRational::zero());
            return out;
        }
        if coeffs.len() > self.reduction.len() {
            let (_, mut r) = div_rem(coeffs, &self.modulus);
            r.resize(self.degree, BigRational::zero());
            return r;
        }
        let mut out: Vec<BigRational> = coeffs[..self.degree].to_vec();
        for (k, c) in coeffs.iter().enumerate().skip(self.degree) {
            if c.is_zero() {
                continue;
            }
            for (o, t) in out.iter_mut().zip(&self.reduction[k]) {
                if !t.is_zero() {
                    *o += c * t;
                }
            }
        }
        out
    }

    pub fn mul(&self, a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let (na, da) = integer_form(a);
        let (nb, db) = integer_form(b);
        let mut prod = vec![BigInt::zero(); 2 * self.degree - 1];
        for (i, x) in na.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in nb.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        let mut out: Vec<BigInt> = prod[..self.degree].to_vec();
        for (k, c) in prod.iter().enumerate().skip(self.degree) {
            if c.is_zero() {
                continue;
            }
            for (o, t) in out.iter_mut().zip(&self.reduction_int[k]) {
                if !t.is_zero() {
                    *o += c * t;
                }
            }
        }
        let den = da * db;
        out.into_iter().map(|c| BigRational::new(c, den.clone())).collect()
    }

    pub fn inverse(&self, a: &[BigRational]) -> Option<Vec<BigRational>> {
        let mut s = ext_gcd_inverse(a, &self.modulus)?;
        s.resize(self.degree, BigRational::zero());
        Some(s)
    }
}

/// Integer numerators over the least common denominator.
fn integer_form(v: &[BigRational]) -> (Vec<BigInt>, BigInt) {
    let den = v.iter().fold(BigInt::one(), |acc, c| {
        if c.denom().is_one() {
            acc
        } else {
            acc.lcm(c.denom())
        }
    });
    let nums = v.iter().map(|c| c.numer() * (&den / c.denom())).collect();
    (nums, den)
}

/// Formats ascending coefficients as `1 + 2*z - z^2`.
pub(crate) fn format_ascending(coeffs: &[BigRational], var: &str, descending: bool) -> String {
    let mut terms: Vec<(usize, &BigRational)> =
        coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
    if terms.is_empty() {
        return "0".to_string();
    }
    if descending {
        terms.reverse();
    }
    let mut out = String::new();
    for (idx, (k, c)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        if idx == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let a = c.abs();
        let power = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{k}"),
        };
        if power.is_empty() {
            out.push_str(&format_rational(&a));
        } else if a.is_one() {
            out.push_str(&power);
        } else {
            out.push_str(&format_rational(&a));
            out.push('*');
            out.push_str(&power);
        }
    }
    out
}

pub(crate) fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[cfg(test)]
pub(crate) fn rational(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}
