//! Multivariate polynomials over the exact coefficient fields.
//!
//! Polynomials are sparse term lists kept strictly descending in the ring's monomial
//! order, so the leading term is always `terms()[0]`.

mod format;
mod monomial;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use thiserror::Error;

use crate::coefficients::{Field, FieldDescriptor, FieldElement, FieldError, Scalar};
use crate::text::ParseError;

pub use monomial::{Monomial, MonomialOrder, MAX_VARS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomials belong to different rings ({left} vs {right})")]
    RingMismatch { left: String, right: String },
    #[error("at most {MAX_VARS} variables are supported, got {0}")]
    TooManyVariables(usize),
    #[error("a projective ring needs at least 2 variables, got {0}")]
    TooFewVariables(usize),
    #[error("variable name '{0}' is repeated or reserved")]
    BadVariableName(String),
    #[error("exponent exceeds 16 bits")]
    ExponentOverflow,
    #[error("expected {expected} coordinates, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("unknown monomial order '{0}'")]
    UnknownOrder(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

struct RingInner {
    field: Field,
    names: Vec<String>,
    order: MonomialOrder,
}

/// R = K[x₀,…,x_N] with a fixed ambient monomial order. Cheap to clone.
#[derive(Clone)]
pub struct PolynomialRing(Arc<RingInner>);

impl PartialEq for PolynomialRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.field == other.0.field && self.0.names == other.0.names && self.0.order == other.0.order)
    }
}

impl Eq for PolynomialRing {}

impl fmt::Debug for PolynomialRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PolynomialRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}] {}", self.0.field.descriptor(), self.0.names.join(","), self.0.order)
    }
}

impl PolynomialRing {
    /// The ring of P^N: variables x0…xN, graded reverse lex.
    pub fn projective(field: Field, n: usize) -> Result<Self, PolyError> {
        let names = (0..=n).map(|i| format!("x{i}")).collect();
        Self::with_names(field, names)
    }

    pub fn with_names(field: Field, names: Vec<String>) -> Result<Self, PolyError> {
        Self::build(field, names, MonomialOrder::GradedReverseLex, 2)
    }

    fn build(field: Field, names: Vec<String>, order: MonomialOrder, min_vars: usize) -> Result<Self, PolyError> {
        if names.len() > MAX_VARS {
            return Err(PolyError::TooManyVariables(names.len()));
        }
        if names.len() < min_vars {
            return Err(PolyError::TooFewVariables(names.len()));
        }
        let cyclotomic = matches!(field.descriptor(), FieldDescriptor::Cyclotomic(_));
        for (i, n) in names.iter().enumerate() {
            let valid = !n.is_empty()
                && n.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid || names[..i].contains(n) || (cyclotomic && n == "z") {
                return Err(PolyError::BadVariableName(n.clone()));
            }
        }
        if let MonomialOrder::BlockElimination(k) = order {
            if k == 0 || k >= names.len() {
                return Err(PolyError::UnknownOrder(order.to_string()));
            }
        }
        Ok(PolynomialRing(Arc::new(RingInner { field, names, order })))
    }

    /// Same variables and field, different ambient order.
    pub fn with_order(&self, order: MonomialOrder) -> Result<Self, PolyError> {
        if order == self.0.order {
            return Ok(self.clone());
        }
        Self::build(self.0.field.clone(), self.0.names.clone(), order, 1)
    }

    /// Prepends an auxiliary variable and uses the elimination order for it.
    pub fn with_leading_variable(&self, name: &str) -> Result<Self, PolyError> {
        let mut names = vec![name.to_string()];
        names.extend(self.0.names.iter().cloned());
        Self::build(self.0.field.clone(), names, MonomialOrder::BlockElimination(1), 2)
    }

    pub fn field(&self) -> &Field {
        &self.0.field
    }

    pub fn num_vars(&self) -> usize {
        self.0.names.len()
    }

    /// Projective dimension N.
    pub fn dim(&self) -> usize {
        self.num_vars() - 1
    }

    pub fn order(&self) -> MonomialOrder {
        self.0.order
    }

    pub fn names(&self) -> &[String] {
        &self.0.names
    }

    pub fn var(&self, i: usize) -> Polynomial {
        assert!(i < self.num_vars(), "variable index out of range");
        Polynomial::monomial(self, Monomial::var(i), self.field().one())
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial { ring: self.clone(), terms: Vec::new() }
    }

    pub fn one(&self) -> Polynomial {
        self.constant(self.field().one())
    }

    pub fn constant(&self, c: Scalar) -> Polynomial {
        Polynomial::monomial(self, Monomial::ONE, c)
    }

    /// Linear form ∑ coeffs[i]·x_i.
    pub fn linear_form(&self, coeffs: &[Scalar]) -> Result<Polynomial, PolyError> {
        if coeffs.len() != self.num_vars() {
            return Err(PolyError::ArityMismatch { expected: self.num_vars(), got: coeffs.len() });
        }
        Ok(Polynomial::from_terms(
            self,
            coeffs.iter().enumerate().map(|(i, c)| (Monomial::var(i), c.clone())),
        ))
    }

    pub fn parse(&self, s: &str) -> Result<Polynomial, PolyError> {
        format::parse(self, s)
    }

    pub(crate) fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.0.order.compare(a, b)
    }
}

pub type Term = (Monomial, Scalar);

#[derive(Clone)]
pub struct Polynomial {
    ring: PolynomialRing,
    terms: Vec<Term>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Hash for Polynomial {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format::format(self))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn check_rings(a: &PolynomialRing, b: &PolynomialRing) -> Result<(), PolyError> {
    if a != b {
        return Err(PolyError::RingMismatch { left: a.to_string(), right: b.to_string() });
    }
    Ok(())
}

impl Polynomial {
    /// Builds a polynomial from arbitrary terms: sorts, merges duplicates and drops zeros.
    pub fn from_terms(ring: &PolynomialRing, terms: impl IntoIterator<Item = Term>) -> Polynomial {
        let field = ring.field();
        let mut acc: HashMap<Monomial, Scalar> = HashMap::new();
        for (m, c) in terms {
            match acc.get_mut(&m) {
                Some(v) => *v = field.add(v, &c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<Term> = acc.into_iter().filter(|(_, c)| !field.is_zero(c)).collect();
        terms.sort_by(|a, b| ring.cmp(&b.0, &a.0));
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn monomial(ring: &PolynomialRing, m: Monomial, c: Scalar) -> Polynomial {
        let terms = if ring.field().is_zero(&c) { Vec::new() } else { vec![(m, c)] };
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &PolynomialRing {
        &self.ring
    }

    pub fn field(&self) -> &Field {
        self.ring.field()
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coefficient(&self) -> Option<&Scalar> {
        self.terms.first().map(|t| &t.1)
    }

    /// Maximum term degree, `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// All terms share one degree. The zero polynomial counts as homogeneous.
    pub fn is_homogeneous(&self) -> bool {
        self.terms.windows(2).all(|w| w[0].0.degree() == w[1].0.degree())
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        check_rings(&self.ring, &other.ring)?;
        let one = self.field().one();
        Ok(self.merge_scaled(&one, &Monomial::ONE, other))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        check_rings(&self.ring, &other.ring)?;
        let minus_one = self.field().from_i64(-1);
        Ok(self.merge_scaled(&minus_one, &Monomial::ONE, other))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        check_rings(&self.ring, &other.ring)?;
        Ok(self.product(other))
    }

    /// `self + c·m·g` by a single merge pass.
    pub(crate) fn merge_scaled(&self, c: &Scalar, m: &Monomial, g: &Polynomial) -> Polynomial {
        let field = self.field();
        let ring = &self.ring;
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = g.terms.iter().map(|(gm, gc)| (gm.mul(m), gc)).peekable();
        let one = field.is_one(c);
        loop {
            let ord = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (Some(x), Some(y)) => ring.cmp(&x.0, &y.0),
            };
            match ord {
                Ordering::Greater => out.push(a.next().unwrap().clone()),
                Ordering::Less => {
                    let (bm, bc) = b.next().unwrap();
                    let v = if one { bc.clone() } else { field.mul(c, bc) };
                    out.push((bm, v));
                }
                Ordering::Equal => {
                    let (am, ac) = a.next().unwrap();
                    let (_, bc) = b.next().unwrap();
                    let v = if one { field.add(ac, bc) } else { field.add(ac, &field.mul(c, bc)) };
                    if !field.is_zero(&v) {
                        out.push((*am, v));
                    }
                }
            }
        }
        Polynomial { ring: ring.clone(), terms: out }
    }

    fn product(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return self.ring.zero();
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_term(m, c);
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_term(m, c);
        }
        let field = self.field();
        let mut products = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (am, ac) in &self.terms {
            for (bm, bc) in &other.terms {
                products.push((am.mul(bm), field.mul(ac, bc)));
            }
        }
        Polynomial::from_terms(&self.ring, products)
    }

    /// Multiplies by the term c·m. Monomial multiplication preserves the order, so no re-sort.
    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Polynomial {
        let field = self.field();
        if field.is_zero(c) {
            return self.ring.zero();
        }
        let one = field.is_one(c);
        let terms = self
            .terms
            .iter()
            .map(|(tm, tc)| (tm.mul(m), if one { tc.clone() } else { field.mul(tc, c) }))
            .collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        self.mul_term(&Monomial::ONE, c)
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = self.ring.one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.product(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.product(&base);
            }
        }
        acc
    }

    /// Divides by the leading coefficient. Zero stays zero.
    pub fn make_monic(&self) -> Polynomial {
        match self.leading_coefficient() {
            None => self.clone(),
            Some(c) if self.field().is_one(c) => self.clone(),
            Some(c) => self.scale(&self.field().inv(c).expect("leading coefficient is nonzero")),
        }
    }

    pub fn evaluate(&self, point: &[FieldElement]) -> Result<FieldElement, PolyError> {
        for p in point {
            if p.field() != self.field() {
                return Err(FieldError::DescriptorMismatch {
                    left: self.field().descriptor(),
                    right: p.field().descriptor(),
                }
                .into());
            }
        }
        let values: Vec<Scalar> = point.iter().map(|p| p.value().clone()).collect();
        Ok(self.field().element(self.evaluate_scalars(&values)?))
    }

    pub fn evaluate_scalars(&self, point: &[Scalar]) -> Result<Scalar, PolyError> {
        let n = self.ring.num_vars();
        if point.len() != n {
            return Err(PolyError::ArityMismatch { expected: n, got: point.len() });
        }
        let field = self.field();
        // powers[i][e] = point[i]^e, built lazily up to the largest exponent used
        let mut powers: Vec<Vec<Scalar>> = point.iter().map(|v| vec![field.one(), v.clone()]).collect();
        let mut acc = field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, pw) in powers.iter_mut().enumerate() {
                let e = m.exponent(i) as usize;
                if e == 0 {
                    continue;
                }
                while pw.len() <= e {
                    let next = field.mul(pw.last().unwrap(), &point[i]);
                    pw.push(next);
                }
                t = field.mul(&t, &pw[e]);
            }
            acc = field.add(&acc, &t);
        }
        Ok(acc)
    }

    /// Re-expresses the polynomial in a ring with the same field and variable count but
    /// possibly a different order.
    pub fn to_ring(&self, ring: &PolynomialRing) -> Result<Polynomial, PolyError> {
        if ring.field() != self.field() || ring.num_vars() != self.ring.num_vars() {
            return Err(PolyError::RingMismatch { left: self.ring.to_string(), right: ring.to_string() });
        }
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| ring.cmp(&b.0, &a.0));
        Ok(Polynomial { ring: ring.clone(), terms })
    }

    /// Moves variable `i` to variable `map[i]` of `ring` (which must share the field).
    pub fn remap(&self, ring: &PolynomialRing, map: &[usize]) -> Polynomial {
        assert_eq!(map.len(), self.ring.num_vars());
        assert!(ring.field() == self.field());
        Polynomial::from_terms(ring, self.terms.iter().map(|(m, c)| (m.remap(map), c.clone())))
    }

    /// Homogeneous components only: the terms of degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Polynomial {
        let terms = self.terms.iter().filter(|(m, _)| m.degree() == d).cloned().collect();
        Polynomial { ring: self.ring.clone(), terms }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    /// Panics on ring mismatch; use [`Polynomial::checked_add`] to get an error instead.
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).unwrap()
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).unwrap()
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).unwrap()
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        self.scale(&self.field().from_i64(-1))
    }
}

/// Product of a sequence of polynomials (1 for an empty sequence).
pub fn product<'a>(ring: &PolynomialRing, factors: impl IntoIterator<Item = &'a Polynomial>) -> Polynomial {
    factors.into_iter().fold(ring.one(), |acc, f| &acc * f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::primitive_root_of_unity;
    use proptest::prelude::*;

    fn qq(n: usize) -> PolynomialRing {
        PolynomialRing::projective(Field::rationals(), n).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let r = qq(1);
        let (x, y) = (r.var(0), r.var(1));
        let p = &(&x + &y) * &(&x - &y);
        assert_eq!(p, r.parse("x0^2 - x1^2").unwrap());
        assert!((&p + &-&p).is_zero());
    }

    #[test]
    fn fermat_cubic_expansion() {
        let f = Field::cyclotomic(3).unwrap();
        let r = PolynomialRing::projective(f, 2).unwrap();
        let cube = |i: usize| r.var(i).pow(3);
        let f3 = product(&r, &[&cube(0) - &cube(1), &cube(1) - &cube(2), &cube(2) - &cube(0)]);
        // brute-force expansion of the Vandermonde-type product (a-b)(b-c)(c-a)
        // with a=x^3, b=y^3, c=z^3: six signed terms a^2 c etc.
        let mut expected = Vec::new();
        for (e, s) in [
            ([6, 0, 3], 1),
            ([6, 3, 0], -1),
            ([3, 6, 0], 1),
            ([3, 0, 6], -1),
            ([0, 6, 3], -1),
            ([0, 3, 6], 1),
        ] {
            expected.push((Monomial::from_exponents(&e).unwrap(), r.field().from_i64(s)));
        }
        assert_eq!(f3, Polynomial::from_terms(&r, expected));
        assert_eq!(f3.len(), 6);
        assert_eq!(f3.total_degree(), Some(9));
        assert!(f3.is_homogeneous());
    }

    #[test]
    fn degrees_and_homogeneity() {
        let r = qq(2);
        assert_eq!(r.parse("x0^2*x1 + x2^3").unwrap().total_degree(), Some(3));
        assert_eq!(r.zero().total_degree(), None);
        assert!(r.parse("x0^2 + x1*x2").unwrap().is_homogeneous());
        assert!(!r.parse("x0^2 + x1").unwrap().is_homogeneous());
        assert!(r.zero().is_homogeneous());
    }

    #[test]
    fn evaluation() {
        let r = qq(2);
        let f = Field::rationals();
        let p: Vec<FieldElement> = (0..3).map(|_| f.element(f.one())).collect();
        assert!(r.parse("x0 - x1").unwrap().evaluate(&p).unwrap().is_zero());

        let c3 = Field::cyclotomic(3).unwrap();
        let r3 = PolynomialRing::projective(c3.clone(), 2).unwrap();
        let eps = primitive_root_of_unity(&c3, 3).unwrap();
        let pt = vec![c3.element(c3.one()), eps.pow(2), eps.clone()];
        let line = &r3.var(0) - &r3.var(1).scale(eps.value());
        assert!(line.evaluate(&pt).unwrap().is_zero());
        assert!(matches!(line.evaluate(&pt[..2]), Err(PolyError::ArityMismatch { .. })));
        let wrong: Vec<FieldElement> = (0..3).map(|_| f.element(f.one())).collect();
        assert!(matches!(line.evaluate(&wrong), Err(PolyError::Field(_))));
    }

    #[test]
    fn ring_mismatch() {
        let a = qq(2).var(0);
        let b = PolynomialRing::projective(Field::prime(7).unwrap(), 2).unwrap().var(0);
        assert!(matches!(a.checked_add(&b), Err(PolyError::RingMismatch { .. })));
        assert!(matches!(a.checked_mul(&b), Err(PolyError::RingMismatch { .. })));
    }

    #[test]
    fn ring_validation() {
        let f = Field::rationals();
        assert!(PolynomialRing::projective(f.clone(), 0).is_err());
        assert!(PolynomialRing::projective(f.clone(), 8).is_err());
        assert!(PolynomialRing::with_names(f.clone(), vec!["x".into(), "x".into()]).is_err());
        assert!(PolynomialRing::with_names(Field::cyclotomic(3).unwrap(), vec!["x".into(), "z".into()]).is_err());
        assert!(PolynomialRing::with_names(f, vec!["x".into(), "y".into(), "z".into()]).is_ok());
    }

    #[test]
    fn product_of_linear_forms_is_homogeneous() {
        let r = qq(2);
        let lines: Vec<Polynomial> = (1..=5i64)
            .map(|t| r.linear_form(&[r.field().from_i64(1), r.field().from_i64(t), r.field().from_i64(t * t)]).unwrap())
            .collect();
        let p = product(&r, &lines);
        assert!(p.is_homogeneous());
        assert_eq!(p.total_degree(), Some(5));
    }

    fn arb_poly(ring: PolynomialRing) -> impl Strategy<Value = Polynomial> {
        let n = ring.num_vars();
        prop::collection::vec((prop::collection::vec(0u32..4, n), -5i64..6), 0..6).prop_map(move |ts| {
            let f = ring.field().clone();
            let coeff = |c: i64, k: usize| match f.generator() {
                Some(z) => f.add(&f.from_i64(c), &f.mul(&f.from_i64(k as i64 % 3), &z)),
                None => f.from_i64(c),
            };
            Polynomial::from_terms(
                &ring,
                ts.into_iter()
                    .enumerate()
                    .map(|(k, (e, c))| (Monomial::from_exponents(&e).unwrap(), coeff(c, k))),
            )
        })
    }

    fn rings() -> Vec<PolynomialRing> {
        vec![
            qq(2),
            PolynomialRing::projective(Field::prime(7).unwrap(), 2).unwrap(),
            PolynomialRing::projective(Field::cyclotomic(3).unwrap(), 2).unwrap(),
        ]
    }

    fn point(ring: &PolynomialRing, seed: i64) -> Vec<Scalar> {
        let f = ring.field();
        (0..ring.num_vars())
            .map(|i| match f.generator() {
                Some(z) => f.add(&f.from_i64(seed + i as i64), &z),
                None => f.from_i64(seed * 3 + i as i64 + 1),
            })
            .collect()
    }

    fn check_axioms(ring: &PolynomialRing, a: &Polynomial, b: &Polynomial, c: &Polynomial) -> Result<(), TestCaseError> {
        prop_assert_eq!(a * b, b * a);
        prop_assert_eq!(&(a * b) * c, a * &(b * c));
        prop_assert_eq!(a * &(b + c), &(a * b) + &(a * c));
        if !a.is_zero() && !b.is_zero() {
            prop_assert_eq!((a * b).total_degree().unwrap(), a.total_degree().unwrap() + b.total_degree().unwrap());
        }
        let f = ring.field();
        for seed in 0..3 {
            let pt = point(ring, seed);
            prop_assert_eq!(
                (a * b).evaluate_scalars(&pt).unwrap(),
                f.mul(&a.evaluate_scalars(&pt).unwrap(), &b.evaluate_scalars(&pt).unwrap())
            );
        }
        prop_assert_eq!(&ring.parse(&a.to_string()).unwrap(), a);
        Ok(())
    }

    proptest! {
        #[test]
        fn axioms_qq(a in arb_poly(rings()[0].clone()), b in arb_poly(rings()[0].clone()), c in arb_poly(rings()[0].clone())) {
            check_axioms(&rings()[0], &a, &b, &c)?;
        }

        #[test]
        fn axioms_f7(a in arb_poly(rings()[1].clone()), b in arb_poly(rings()[1].clone()), c in arb_poly(rings()[1].clone())) {
            check_axioms(&rings()[1], &a, &b, &c)?;
        }

        #[test]
        fn axioms_cyclotomic(a in arb_poly(rings()[2].clone()), b in arb_poly(rings()[2].clone()), c in arb_poly(rings()[2].clone())) {
            check_axioms(&rings()[2], &a, &b, &c)?;
        }

        #[test]
        fn text_round_trip_fp(a in arb_poly(rings()[1].clone())) {
            let s = a.to_string();
            let back = rings()[1].parse(&s).unwrap();
            prop_assert_eq!(back.to_string(), s);
            prop_assert_eq!(back, a);
        }

        #[test]
        fn text_round_trip_qq(a in arb_poly(rings()[0].clone())) {
            prop_assert_eq!(rings()[0].parse(&a.to_string()).unwrap(), a);
        }
    }
}
