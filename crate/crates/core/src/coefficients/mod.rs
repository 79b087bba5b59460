//! Exact coefficient fields: ℚ, 𝔽_p and cyclotomic extensions ℚ(ζ_n).
//!
//! A [`Field`] is a cheap, shareable handle carrying the descriptor and any precomputed
//! reduction data. Raw values ([`Scalar`]) carry no descriptor and are only meaningful
//! together with the field that produced them; polynomial code stores scalars and
//! routes every operation through its ring's field. [`FieldElement`] pairs a scalar
//! with its field and checks descriptors at every operation.

mod cyclotomic;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub use cyclotomic::{cyclotomic_modulus, euler_phi, RationalUnivariate};
use cyclotomic::{format_ascending, format_rational, CyclotomicData};

use crate::text::{self, Algebra, ParseError};

/// Largest admissible prime modulus (exclusive).
pub const MAX_PRIME: u64 = 1 << 31;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("prime {0} exceeds the supported range (p < 2^31)")]
    ModulusTooLarge(u64),
    #[error("cyclotomic order must be at least 2, got {0}")]
    InvalidCyclotomicOrder(u32),
    #[error("field mismatch: {left} vs {right}")]
    DescriptorMismatch { left: FieldDescriptor, right: FieldDescriptor },
    #[error("division by zero")]
    DivisionByZero,
    #[error("{field} has no primitive root of unity of order {order}: {reason}")]
    NoRootOfUnity { field: FieldDescriptor, order: u32, reason: String },
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("unrecognized field descriptor '{0}' (expected QQ, Fp(p) or QQ(zetaN))")]
    UnknownDescriptor(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldDescriptor {
    Rationals,
    PrimeField(u32),
    Cyclotomic(u32),
}

impl FieldDescriptor {
    pub fn characteristic(&self) -> u32 {
        match self {
            FieldDescriptor::PrimeField(p) => *p,
            _ => 0,
        }
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Rationals => write!(f, "QQ"),
            FieldDescriptor::PrimeField(p) => write!(f, "Fp({p})"),
            FieldDescriptor::Cyclotomic(n) => write!(f, "QQ(zeta{n})"),
        }
    }
}

impl FromStr for FieldDescriptor {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, FieldError> {
        let s = s.trim();
        let unknown = || FieldError::UnknownDescriptor(s.to_string());
        if s == "QQ" {
            return Ok(FieldDescriptor::Rationals);
        }
        if let Some(inner) = s.strip_prefix("Fp(").and_then(|r| r.strip_suffix(')')) {
            let p: u32 = inner.trim().parse().map_err(|_| unknown())?;
            return Ok(FieldDescriptor::PrimeField(p));
        }
        if let Some(inner) = s.strip_prefix("QQ(zeta").and_then(|r| r.strip_suffix(')')) {
            let n: u32 = inner.trim().parse().map_err(|_| unknown())?;
            return Ok(FieldDescriptor::Cyclotomic(n));
        }
        Err(unknown())
    }
}

/// Raw field value. Canonical for its field, so structural equality is field equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    /// Lowest terms, positive denominator.
    Q(BigRational),
    /// Residue in `[0, p)`.
    Fp(u32),
    /// Coefficients of 1, ζ, …, ζ^{φ(n)−1}; always exactly φ(n) entries.
    Cyc(Box<[BigRational]>),
}

struct FieldInner {
    descriptor: FieldDescriptor,
    cyclo: Option<CyclotomicData>,
}

/// Handle to a coefficient field.
#[derive(Clone)]
pub struct Field(Arc<FieldInner>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({})", self.0.descriptor)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.descriptor == other.0.descriptor
    }
}

impl Eq for Field {}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

impl Field {
    pub fn new(descriptor: FieldDescriptor) -> Result<Field, FieldError> {
        let cyclo = match descriptor {
            FieldDescriptor::Rationals => None,
            FieldDescriptor::PrimeField(p) => {
                if p as u64 >= MAX_PRIME {
                    return Err(FieldError::ModulusTooLarge(p as u64));
                }
                if !is_prime(p as u64) {
                    return Err(FieldError::NotPrime(p as u64));
                }
                None
            }
            FieldDescriptor::Cyclotomic(n) => {
                if n < 2 {
                    return Err(FieldError::InvalidCyclotomicOrder(n));
                }
                Some(CyclotomicData::new(n))
            }
        };
        Ok(Field(Arc::new(FieldInner { descriptor, cyclo })))
    }

    pub fn rationals() -> Field {
        Field::new(FieldDescriptor::Rationals).unwrap()
    }

    pub fn prime(p: u32) -> Result<Field, FieldError> {
        Field::new(FieldDescriptor::PrimeField(p))
    }

    pub fn cyclotomic(n: u32) -> Result<Field, FieldError> {
        Field::new(FieldDescriptor::Cyclotomic(n))
    }

    pub fn parse(s: &str) -> Result<Field, FieldError> {
        Field::new(s.parse()?)
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        self.0.descriptor
    }

    pub fn characteristic(&self) -> u32 {
        self.0.descriptor.characteristic()
    }

    /// Characteristic 2 is supported but special: every BHH-type containment is known
    /// to hold there, so callers may want to flag results.
    pub fn is_characteristic_two(&self) -> bool {
        self.characteristic() == 2
    }

    /// Degree over the prime field (φ(n) for ℚ(ζ_n), otherwise 1).
    pub fn extension_degree(&self) -> usize {
        self.0.cyclo.as_ref().map_or(1, |c| c.degree)
    }

    fn cyc(&self) -> &CyclotomicData {
        self.0.cyclo.as_ref().expect("cyclotomic data on a non-cyclotomic field")
    }

    fn prime_modulus(&self) -> u64 {
        match self.0.descriptor {
            FieldDescriptor::PrimeField(p) => p as u64,
            _ => unreachable!("prime modulus requested for {}", self.0.descriptor),
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        self.from_rational_unchecked(&BigRational::from_integer(n.clone()))
    }

    /// Maps a rational into the field. Fails for 𝔽_p when p divides the denominator.
    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar, FieldError> {
        if let FieldDescriptor::PrimeField(p) = self.0.descriptor {
            let den = q.denom().mod_floor(&BigInt::from(p));
            if den.is_zero() {
                return Err(FieldError::DivisionByZero);
            }
        }
        Ok(self.from_rational_unchecked(q))
    }

    fn from_rational_unchecked(&self, q: &BigRational) -> Scalar {
        match self.0.descriptor {
            FieldDescriptor::Rationals => Scalar::Q(q.clone()),
            FieldDescriptor::PrimeField(p) => {
                let p_big = BigInt::from(p);
                let num = q.numer().mod_floor(&p_big).to_u64().unwrap();
                let den = q.denom().mod_floor(&p_big).to_u64().unwrap();
                let inv = pow_mod(den, p as u64 - 2, p as u64);
                Scalar::Fp((num * inv % p as u64) as u32)
            }
            FieldDescriptor::Cyclotomic(_) => {
                let mut v = vec![BigRational::zero(); self.cyc().degree];
                v[0] = q.clone();
                Scalar::Cyc(v.into_boxed_slice())
            }
        }
    }

    /// The adjoined root ζ_n for cyclotomic fields; `None` otherwise.
    pub fn generator(&self) -> Option<Scalar> {
        let c = self.0.cyclo.as_ref()?;
        let mut v = vec![BigRational::zero(); c.degree.max(2)];
        v[1] = BigRational::one();
        Some(Scalar::Cyc(c.reduce(&v).into_boxed_slice()))
    }

    /// Builds ∑ coeffs[k]·ζ^k in a cyclotomic field (any length; reduced mod Φ_n).
    pub fn from_cyclotomic_coefficients(&self, coeffs: &[BigRational]) -> Option<Scalar> {
        let c = self.0.cyclo.as_ref()?;
        Some(Scalar::Cyc(c.reduce(coeffs).into_boxed_slice()))
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Q(q) => q.is_zero(),
            Scalar::Fp(x) => *x == 0,
            Scalar::Cyc(v) => v.iter().all(|c| c.is_zero()),
        }
    }

    pub fn is_one(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Q(q) => q.is_one(),
            Scalar::Fp(x) => *x == 1,
            Scalar::Cyc(v) => v[0].is_one() && v[1..].iter().all(|c| c.is_zero()),
        }
    }

    /// The rational value of `a` if it lies in the prime field ℚ (always `None` over 𝔽_p).
    pub fn as_rational(&self, a: &Scalar) -> Option<BigRational> {
        match a {
            Scalar::Q(q) => Some(q.clone()),
            Scalar::Fp(_) => None,
            Scalar::Cyc(v) => v[1..].iter().all(|c| c.is_zero()).then(|| v[0].clone()),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Q(x), Scalar::Q(y)) => Scalar::Q(x + y),
            (Scalar::Fp(x), Scalar::Fp(y)) => {
                let p = self.prime_modulus();
                Scalar::Fp(((*x as u64 + *y as u64) % p) as u32)
            }
            (Scalar::Cyc(x), Scalar::Cyc(y)) => {
                Scalar::Cyc(x.iter().zip(y.iter()).map(|(s, t)| s + t).collect())
            }
            _ => panic!("scalar kinds do not match field {}", self.0.descriptor),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match a {
            Scalar::Q(x) => Scalar::Q(-x),
            Scalar::Fp(x) => {
                let p = self.prime_modulus() as u32;
                Scalar::Fp(if *x == 0 { 0 } else { p - x })
            }
            Scalar::Cyc(x) => Scalar::Cyc(x.iter().map(|c| -c).collect()),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Q(x), Scalar::Q(y)) => Scalar::Q(x - y),
            (Scalar::Fp(x), Scalar::Fp(y)) => {
                let p = self.prime_modulus();
                Scalar::Fp(((*x as u64 + p - *y as u64) % p) as u32)
            }
            (Scalar::Cyc(x), Scalar::Cyc(y)) => {
                Scalar::Cyc(x.iter().zip(y.iter()).map(|(s, t)| s - t).collect())
            }
            _ => panic!("scalar kinds do not match field {}", self.0.descriptor),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Q(x), Scalar::Q(y)) => Scalar::Q(x * y),
            (Scalar::Fp(x), Scalar::Fp(y)) => {
                let p = self.prime_modulus();
                Scalar::Fp((*x as u64 * *y as u64 % p) as u32)
            }
            (Scalar::Cyc(x), Scalar::Cyc(y)) => {
                // rational multiples of 1 are common (normalized coordinates, integer scalings)
                if x[1..].iter().all(|c| c.is_zero()) {
                    return Scalar::Cyc(y.iter().map(|c| c * &x[0]).collect());
                }
                if y[1..].iter().all(|c| c.is_zero()) {
                    return Scalar::Cyc(x.iter().map(|c| c * &y[0]).collect());
                }
                Scalar::Cyc(self.cyc().mul(x, y).into_boxed_slice())
            }
            _ => panic!("scalar kinds do not match field {}", self.0.descriptor),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Result<Scalar, FieldError> {
        if self.is_zero(a) {
            return Err(FieldError::DivisionByZero);
        }
        Ok(match a {
            Scalar::Q(x) => Scalar::Q(x.recip()),
            Scalar::Fp(x) => {
                let p = self.prime_modulus();
                Scalar::Fp(pow_mod(*x as u64, p - 2, p) as u32)
            }
            Scalar::Cyc(x) => {
                if x[1..].iter().all(|c| c.is_zero()) {
                    let r = x[0].recip();
                    let mut v = vec![BigRational::zero(); x.len()];
                    v[0] = r;
                    return Ok(Scalar::Cyc(v.into_boxed_slice()));
                }
                Scalar::Cyc(
                    self.cyc()
                        .inverse(x)
                        .expect("nonzero element of a field is invertible")
                        .into_boxed_slice(),
                )
            }
        })
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar, FieldError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &Scalar, mut e: u64) -> Scalar {
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Multiplicative order of `a`, searched up to `limit`.
    pub fn multiplicative_order(&self, a: &Scalar, limit: u32) -> Option<u32> {
        if self.is_zero(a) {
            return None;
        }
        let mut acc = a.clone();
        for k in 1..=limit {
            if self.is_one(&acc) {
                return Some(k);
            }
            acc = self.mul(&acc, a);
        }
        None
    }

    pub fn element(&self, value: Scalar) -> FieldElement {
        FieldElement { field: self.clone(), value }
    }

    pub fn parse_scalar(&self, s: &str) -> Result<Scalar, FieldError> {
        Ok(text::parse_expression(s, &ElementAlgebra(self))?)
    }

    pub fn parse_element(&self, s: &str) -> Result<FieldElement, FieldError> {
        Ok(self.element(self.parse_scalar(s)?))
    }

    pub fn format(&self, a: &Scalar) -> String {
        match a {
            Scalar::Q(q) => format_rational(q),
            Scalar::Fp(x) => x.to_string(),
            Scalar::Cyc(v) => format_ascending(v, "z", false),
        }
    }

    /// True when `a` prints without internal `+`/`-` (so it can be used as a bare coefficient).
    pub(crate) fn is_atomic(&self, a: &Scalar) -> bool {
        !matches!(a, Scalar::Cyc(_)) || self.as_rational(a).is_some()
    }

    /// True when `a` is a negative rational (printed with a leading sign).
    pub(crate) fn is_negative_rational(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Q(q) => q.is_negative(),
            Scalar::Cyc(_) => self.as_rational(a).is_some_and(|q| q.is_negative()),
            Scalar::Fp(_) => false,
        }
    }
}

struct ElementAlgebra<'a>(&'a Field);

impl Algebra for ElementAlgebra<'_> {
    type Value = Scalar;

    fn number(&self, n: &BigInt) -> Result<Scalar, String> {
        Ok(self.0.from_bigint(n))
    }

    fn symbol(&self, name: &str) -> Result<Scalar, String> {
        match (name, self.0.generator()) {
            ("z", Some(z)) => Ok(z),
            _ => Err(format!("unknown symbol '{name}' in {}", self.0.descriptor())),
        }
    }

    fn add(&self, a: Scalar, b: Scalar) -> Scalar {
        self.0.add(&a, &b)
    }

    fn sub(&self, a: Scalar, b: Scalar) -> Scalar {
        self.0.sub(&a, &b)
    }

    fn mul(&self, a: Scalar, b: Scalar) -> Result<Scalar, String> {
        Ok(self.0.mul(&a, &b))
    }

    fn div(&self, a: Scalar, b: Scalar) -> Result<Scalar, String> {
        self.0.div(&a, &b).map_err(|e| e.to_string())
    }

    fn neg(&self, a: Scalar) -> Scalar {
        self.0.neg(&a)
    }

    fn pow(&self, a: Scalar, e: u32) -> Result<Scalar, String> {
        Ok(self.0.pow(&a, e as u64))
    }
}

/// A field value bundled with its field; every binary operation checks the descriptors.
#[derive(Clone)]
pub struct FieldElement {
    field: Field,
    value: Scalar,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn value(&self) -> &Scalar {
        &self.value
    }

    pub fn into_value(self) -> Scalar {
        self.value
    }

    fn check(&self, other: &FieldElement) -> Result<(), FieldError> {
        if self.field != other.field {
            return Err(FieldError::DescriptorMismatch {
                left: self.field.descriptor(),
                right: other.field.descriptor(),
            });
        }
        Ok(())
    }

    pub fn apply(&self, op: ArithOp, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(other)?;
        let f = &self.field;
        let value = match op {
            ArithOp::Add => f.add(&self.value, &other.value),
            ArithOp::Sub => f.sub(&self.value, &other.value),
            ArithOp::Mul => f.mul(&self.value, &other.value),
            ArithOp::Div => f.div(&self.value, &other.value)?,
        };
        Ok(f.element(value))
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.apply(ArithOp::Add, other)
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.apply(ArithOp::Sub, other)
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.apply(ArithOp::Mul, other)
    }

    pub fn div(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.apply(ArithOp::Div, other)
    }

    pub fn inv(&self) -> Result<FieldElement, FieldError> {
        Ok(self.field.element(self.field.inv(&self.value)?))
    }

    pub fn neg(&self) -> FieldElement {
        self.field.element(self.field.neg(&self.value))
    }

    pub fn pow(&self, e: u64) -> FieldElement {
        self.field.element(self.field.pow(&self.value, e))
    }

    pub fn is_zero(&self) -> bool {
        self.field.is_zero(&self.value)
    }

    pub fn is_one(&self) -> bool {
        self.field.is_one(&self.value)
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.value == other.value
    }
}

impl Eq for FieldElement {}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.format(&self.value))
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self, self.field.descriptor())
    }
}

/// Applies `op` to two elements of the same field.
pub fn field_arithmetic(a: &FieldElement, b: &FieldElement, op: ArithOp) -> Result<FieldElement, FieldError> {
    a.apply(op, b)
}

/// A primitive n-th root of unity, chosen deterministically: the smallest residue over
/// 𝔽_p; over ℚ(ζ_k) the candidate ±ζ_k^j with the lowest-degree representation,
/// ties broken by smallest exponent (positive sign first).
pub fn primitive_root_of_unity(field: &Field, n: u32) -> Result<FieldElement, FieldError> {
    let fail = |reason: String| FieldError::NoRootOfUnity { field: field.descriptor(), order: n, reason };
    if n == 0 {
        return Err(fail("order must be positive".into()));
    }
    let root = match field.descriptor() {
        FieldDescriptor::Rationals => match n {
            1 => field.one(),
            2 => field.from_i64(-1),
            _ => return Err(fail("the only roots of unity in QQ are 1 and -1".into())),
        },
        FieldDescriptor::PrimeField(p) => {
            if (p - 1) % n != 0 {
                return Err(fail(format!("{n} does not divide p - 1 = {}", p - 1)));
            }
            (1..p)
                .map(Scalar::Fp)
                .find(|g| field.multiplicative_order(g, n) == Some(n))
                .ok_or_else(|| fail("no element of exact order found".into()))?
        }
        FieldDescriptor::Cyclotomic(k) => {
            // roots of unity in ℚ(ζ_k) are ±ζ_k^j; there are lcm(2, k) of them
            let group = if k % 2 == 0 { k } else { 2 * k };
            if group % n != 0 {
                return Err(fail(format!("{n} does not divide {group}, the number of roots of unity in QQ(zeta{k})")));
            }
            let z = field.generator().unwrap();
            let mut best: Option<(usize, Scalar)> = None;
            for j in 0..k {
                let zj = field.pow(&z, j as u64);
                for cand in [zj.clone(), field.neg(&zj)] {
                    if field.multiplicative_order(&cand, n) != Some(n) {
                        continue;
                    }
                    let deg = match &cand {
                        Scalar::Cyc(v) => v.iter().rposition(|c| !c.is_zero()).unwrap_or(0),
                        _ => 0,
                    };
                    if best.as_ref().is_none_or(|(d, _)| deg < *d) {
                        best = Some((deg, cand));
                    }
                }
            }
            best.map(|(_, s)| s).ok_or_else(|| fail("no element of exact order found".into()))?
        }
    };
    let elem = field.element(root);
    debug_assert_eq!(field.multiplicative_order(elem.value(), n), Some(n));
    Ok(elem)
}
