use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use super::PolyError;

/// Maximum number of variables in any ring, including auxiliary elimination variables.
pub const MAX_VARS: usize = 8;

/// Exponent vector with cached total degree. Unused trailing slots are zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
    degree: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { exps: [0; MAX_VARS], degree: 0 };

    pub fn one() -> Self {
        Self::ONE
    }

    pub fn from_exponents(exps: &[u32]) -> Result<Self, PolyError> {
        if exps.len() > MAX_VARS {
            return Err(PolyError::TooManyVariables(exps.len()));
        }
        let mut m = Monomial::ONE;
        for (i, &e) in exps.iter().enumerate() {
            m.exps[i] = u16::try_from(e).map_err(|_| PolyError::ExponentOverflow)?;
            m.degree += e;
        }
        Ok(m)
    }

    pub fn var(i: usize) -> Self {
        let mut m = Monomial::ONE;
        m.exps[i] = 1;
        m.degree = 1;
        m
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    pub fn exponents(&self) -> &[u16; MAX_VARS] {
        &self.exps
    }

    pub fn checked_mul(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = *self;
        for i in 0..MAX_VARS {
            out.exps[i] = self.exps[i].checked_add(other.exps[i])?;
        }
        out.degree = self.degree + other.degree;
        Some(out)
    }

    /// Exponents are limited to 16 bits; exceeding that is a hard error.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.checked_mul(other).expect("monomial exponent overflow (exponents are limited to 65535)")
    }

    pub fn pow(&self, e: u32) -> Monomial {
        let mut out = Monomial::ONE;
        for i in 0..MAX_VARS {
            let v = self.exps[i] as u32 * e;
            out.exps[i] = u16::try_from(v).expect("monomial exponent overflow");
        }
        out.degree = self.degree * e;
        out
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        let mut out = *self;
        for i in 0..MAX_VARS {
            out.exps[i] -= other.exps[i];
        }
        out.degree -= other.degree;
        Some(out)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut out = Monomial::ONE;
        for i in 0..MAX_VARS {
            out.exps[i] = self.exps[i].max(other.exps[i]);
            out.degree += out.exps[i] as u32;
        }
        out
    }

    /// Bit `8i + k` is set when exponent `i` exceeds `k`. If `a` divides `b` then
    /// `a.divmask() & !b.divmask() == 0`, which rejects most non-divisors cheaply.
    pub fn divmask(&self) -> u64 {
        let mut mask = 0u64;
        for (i, &e) in self.exps.iter().enumerate() {
            let bits = e.min(8) as u32;
            if bits > 0 {
                mask |= ((1u64 << bits) - 1) << (8 * i);
            }
        }
        mask
    }

    /// No variable occurs in both.
    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Moves exponents `i` to slot `map[i]`.
    pub(crate) fn remap(&self, map: &[usize]) -> Monomial {
        let mut out = Monomial::ONE;
        for (i, &j) in map.iter().enumerate() {
            out.exps[j] = self.exps[i];
        }
        out.degree = self.degree;
        out
    }

    /// All monomials of total degree `d` in `nvars` variables, in descending graded lex order.
    pub fn all_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut exps = vec![0u32; nvars];
        fn rec(i: usize, left: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            let n = exps.len();
            if i == n - 1 {
                exps[i] = left;
                out.push(Monomial::from_exponents(exps).unwrap());
                return;
            }
            for e in (0..=left).rev() {
                exps[i] = e;
                rec(i + 1, left - e, exps, out);
            }
            exps[i] = 0;
        }
        if nvars > 0 {
            rec(0, d, &mut exps, &mut out);
        }
        out
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.exps.iter().rposition(|&e| e != 0).map_or(0, |i| i + 1);
        write!(f, "{:?}", &self.exps[..last])
    }
}

/// Monomial orders. `BlockElimination(k)` compares the first `k` variables by grevlex
/// and breaks ties by grevlex on the remaining ones, so it eliminates the leading block.
/// `WeightedElimination(k)` first compares the degree in the variables after the first
/// `k`, then the leading block by grevlex, then the rest by grevlex: on polynomials that
/// are homogeneous when the leading block has weight 0 it eliminates that block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MonomialOrder {
    GradedReverseLex,
    Lex,
    BlockElimination(usize),
    WeightedElimination(usize),
}

fn revlex_tail(a: &[u16], b: &[u16]) -> Ordering {
    for (x, y) in a.iter().zip(b).rev() {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::GradedReverseLex => {
                a.degree.cmp(&b.degree).then_with(|| revlex_tail(&a.exps, &b.exps))
            }
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
            MonomialOrder::BlockElimination(k) => {
                let da: u32 = a.exps[..k].iter().map(|&e| e as u32).sum();
                let db: u32 = b.exps[..k].iter().map(|&e| e as u32).sum();
                da.cmp(&db)
                    .then_with(|| revlex_tail(&a.exps[..k], &b.exps[..k]))
                    .then_with(|| (a.degree - da).cmp(&(b.degree - db)))
                    .then_with(|| revlex_tail(&a.exps[k..], &b.exps[k..]))
            }
            MonomialOrder::WeightedElimination(k) => {
                let da: u32 = a.exps[..k].iter().map(|&e| e as u32).sum();
                let db: u32 = b.exps[..k].iter().map(|&e| e as u32).sum();
                (a.degree - da)
                    .cmp(&(b.degree - db))
                    .then_with(|| da.cmp(&db))
                    .then_with(|| revlex_tail(&a.exps[..k], &b.exps[..k]))
                    .then_with(|| revlex_tail(&a.exps[k..], &b.exps[k..]))
            }
        }
    }

    /// The grading the order refines: total degree, or the degree outside the leading
    /// block for `WeightedElimination`.
    pub fn weighted_degree(&self, m: &Monomial) -> u32 {
        match *self {
            MonomialOrder::WeightedElimination(k) => m.degree - m.exps[..k].iter().map(|&e| e as u32).sum::<u32>(),
            _ => m.degree,
        }
    }

    /// Orders in which a positive-degree monomial always exceeds lower-degree ones
    /// (needed to read α off a basis).
    pub fn is_degree_compatible(&self) -> bool {
        matches!(self, MonomialOrder::GradedReverseLex)
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::GradedReverseLex => write!(f, "grevlex"),
            MonomialOrder::Lex => write!(f, "lex"),
            MonomialOrder::BlockElimination(k) => write!(f, "elim({k})"),
            MonomialOrder::WeightedElimination(k) => write!(f, "welim({k})"),
        }
    }
}

impl FromStr for MonomialOrder {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, PolyError> {
        match s.trim() {
            "grevlex" => Ok(MonomialOrder::GradedReverseLex),
            "lex" => Ok(MonomialOrder::Lex),
            other => {
                let block = |prefix: &str| other.strip_prefix(prefix)?.strip_suffix(')')?.parse().ok();
                block("elim(")
                    .map(MonomialOrder::BlockElimination)
                    .or_else(|| block("welim(").map(MonomialOrder::WeightedElimination))
                    .ok_or_else(|| PolyError::UnknownOrder(other.to_string()))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e).unwrap()
    }

    #[test]
    fn grevlex_examples() {
        let o = MonomialOrder::GradedReverseLex;
        assert_eq!(o.compare(&m(&[2, 1, 0]), &m(&[1, 1, 1])), Ordering::Greater);
        assert_eq!(o.compare(&m(&[3, 0, 0]), &m(&[2, 2, 0])), Ordering::Less);
        // x y^2 vs x^2 z: same degree, z exponent decides
        assert_eq!(o.compare(&m(&[1, 2, 0]), &m(&[2, 0, 1])), Ordering::Greater);
    }

    #[test]
    fn lex_examples() {
        assert_eq!(MonomialOrder::Lex.compare(&m(&[1, 0]), &m(&[0, 100])), Ordering::Greater);
    }

    #[test]
    fn weighted_elimination_within_a_degree() {
        let o = MonomialOrder::WeightedElimination(1);
        // same x-degree: any t beats none
        assert_eq!(o.compare(&m(&[1, 0, 0, 1]), &m(&[0, 1, 0, 0])), Ordering::Greater);
        // x-degree decides first
        assert_eq!(o.compare(&m(&[5, 1, 0, 0]), &m(&[0, 1, 1, 0])), Ordering::Less);
        assert_eq!(o.weighted_degree(&m(&[5, 1, 0, 0])), 1);
        assert_eq!("welim(1)".parse::<MonomialOrder>().unwrap(), o);
        assert_eq!("elim(2)".parse::<MonomialOrder>().unwrap(), MonomialOrder::BlockElimination(2));
    }

    #[test]
    fn elimination_prefers_leading_block() {
        let o = MonomialOrder::BlockElimination(1);
        // t beats any pure x monomial
        assert_eq!(o.compare(&m(&[1, 0, 0, 0]), &m(&[0, 9, 9, 9])), Ordering::Greater);
        // inside the block tie, grevlex on the rest
        assert_eq!(o.compare(&m(&[1, 2, 1, 0]), &m(&[1, 1, 1, 1])), Ordering::Greater);
        assert_eq!(o.compare(&m(&[0, 1, 0, 0]), &m(&[0, 0, 1, 0])), Ordering::Greater);
    }

    #[test]
    fn order_text() {
        for o in [MonomialOrder::GradedReverseLex, MonomialOrder::Lex, MonomialOrder::BlockElimination(2)] {
            assert_eq!(o.to_string().parse::<MonomialOrder>().unwrap(), o);
        }
    }

    #[test]
    fn arithmetic() {
        let a = m(&[2, 0, 1]);
        let b = m(&[1, 3, 0]);
        assert_eq!(a.lcm(&b), m(&[2, 3, 1]));
        assert!(!a.is_coprime(&b));
        assert!(m(&[1, 0, 0]).is_coprime(&m(&[0, 2, 1])));
        assert_eq!(a.mul(&b).div(&b), Some(a));
        assert_eq!(a.div(&b), None);
        assert!(Monomial::from_exponents(&[70000]).is_err());
        let (x, y) = (m(&[1, 2, 9]), m(&[2, 2, 10]));
        assert_eq!(x.divmask() & !y.divmask(), 0);
        assert_ne!(y.divmask() & !x.divmask(), 0);
        assert_eq!(Monomial::all_of_degree(3, 2).len(), 6);
        assert_eq!(Monomial::all_of_degree(4, 3).len(), 20);
    }

    #[test]
    fn orders_are_total_on_degree_three() {
        let mons = Monomial::all_of_degree(3, 3);
        for o in [MonomialOrder::GradedReverseLex, MonomialOrder::Lex, MonomialOrder::BlockElimination(1)] {
            let mut sorted = mons.clone();
            sorted.sort_by(|a, b| o.compare(a, b));
            for w in sorted.windows(2) {
                assert_eq!(o.compare(&w[0], &w[1]), Ordering::Less);
            }
        }
    }
}
