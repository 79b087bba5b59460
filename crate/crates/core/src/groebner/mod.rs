//! Buchberger's algorithm with the Gebauer–Möller criteria, normal forms and membership.
//!
//! Pairs are taken by the normal strategy (smallest lcm first). Every finished basis is
//! reduced, monic and sorted by descending leading monomial, so it is canonical for the
//! ideal and order.

mod budget;

use std::cmp::Ordering;

use thiserror::Error;

use crate::coefficients::{Field, Scalar};
use crate::polynomials::{Monomial, MonomialOrder, PolyError, Polynomial, PolynomialRing, Term};

pub use budget::{
    Budget, BudgetExceeded, BudgetKind, DEFAULT_MAX_PAIRS, DEFAULT_TIMEOUT_SECS, MAX_PAIRS_ENV, TIMEOUT_ENV,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
    #[error("no generators given")]
    NoGenerators,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Reduced Gröbner basis of an ideal for one monomial order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: PolynomialRing,
    elements: Vec<Polynomial>,
}

impl GroebnerBasis {
    /// Ring carrying the order the basis was computed for.
    pub fn ring(&self) -> &PolynomialRing {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.ring.order()
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// The basis describes the unit ideal.
    pub fn is_unit(&self) -> bool {
        matches!(self.elements.as_slice(), [g] if g.total_degree() == Some(0))
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements.iter().map(|g| *g.leading_monomial().unwrap()).collect()
    }

    /// Minimum degree of a basis element. For a degree-compatible order and a
    /// homogeneous ideal this is the initial degree.
    pub fn min_degree(&self) -> Option<u32> {
        self.elements.iter().filter_map(|g| g.total_degree()).min()
    }

    /// Wraps elements already known to form a reduced, monic, sorted basis.
    pub(crate) fn from_reduced(ring: &PolynomialRing, elements: Vec<Polynomial>) -> GroebnerBasis {
        GroebnerBasis { ring: ring.clone(), elements }
    }

    /// Remainder of `f` on division by the basis, expressed in `f`'s own ring.
    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial, PolyError> {
        let g = f.to_ring(&self.ring)?;
        let reducers = Reducers::new(&self.elements);
        let nf = full_reduce(&self.ring, g.terms(), &reducers, &self.elements);
        Polynomial::from_terms(&self.ring, nf).to_ring(f.ring())
    }

    pub fn is_member(&self, f: &Polynomial) -> Result<bool, PolyError> {
        Ok(self.normal_form(f)?.is_zero())
    }
}

/// Computes the reduced Gröbner basis of the ideal generated by `generators` with
/// respect to `order`.
pub fn buchberger(
    generators: &[Polynomial],
    order: MonomialOrder,
    budget: &Budget,
) -> Result<GroebnerBasis, GroebnerError> {
    let Some(first) = generators.first() else {
        return Err(GroebnerError::NoGenerators);
    };
    let ring = first.ring().with_order(order)?;
    let mut input = Vec::with_capacity(generators.len());
    for g in generators {
        let g = g.to_ring(&ring)?;
        if !g.is_zero() {
            input.push(g.make_monic());
        }
    }
    let mut engine = Engine::new(&ring, budget);
    input.sort_by(|a, b| ring.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    input.dedup();
    for g in input {
        let h = engine.reduce(g.terms());
        if !h.is_empty() {
            engine.insert(h);
        }
        engine.budget_check()?;
    }
    engine.run()?;
    Ok(GroebnerBasis { elements: engine.finish(), ring })
}

/// Convenience: the basis for the ring's own order.
pub fn groebner_basis(generators: &[Polynomial], budget: &Budget) -> Result<GroebnerBasis, GroebnerError> {
    let order = match generators.first() {
        Some(g) => g.ring().order(),
        None => MonomialOrder::GradedReverseLex,
    };
    buchberger(generators, order, budget)
}

pub fn normal_form(f: &Polynomial, basis: &GroebnerBasis) -> Result<Polynomial, PolyError> {
    basis.normal_form(f)
}

pub fn is_member(f: &Polynomial, basis: &GroebnerBasis) -> Result<bool, PolyError> {
    basis.is_member(f)
}

/// Leading-monomial index for divisor lookups.
struct Reducers {
    entries: Vec<(u64, Monomial, usize)>,
}

impl Reducers {
    fn new(polys: &[Polynomial]) -> Self {
        let entries = polys
            .iter()
            .enumerate()
            .filter_map(|(i, p)| p.leading_monomial().map(|m| (m.divmask(), *m, i)))
            .collect();
        Reducers { entries }
    }

    fn push(&mut self, m: Monomial, idx: usize) {
        self.entries.push((m.divmask(), m, idx));
    }

    fn remove(&mut self, idx: usize) {
        self.entries.retain(|e| e.2 != idx);
    }

    fn find(&self, m: &Monomial) -> Option<usize> {
        let mask = m.divmask();
        self.entries
            .iter()
            .find(|(dm, lm, _)| dm & !mask == 0 && lm.divides(m))
            .map(|e| e.2)
    }
}

/// `p[1..] - c·m·g[1..]` where the leading terms are known to cancel.
fn cancel_lead(ring: &PolynomialRing, p: &[Term], c: &Scalar, m: &Monomial, g: &[Term]) -> Vec<Term> {
    let field = ring.field();
    let mut out = Vec::with_capacity(p.len() + g.len());
    let mut a = p[1..].iter().peekable();
    let mut b = g[1..].iter().peekable();
    loop {
        let ord = match (a.peek(), b.peek()) {
            (None, None) => break,
            (Some(_), None) => Ordering::Greater,
            (None, Some(_)) => Ordering::Less,
            (Some(x), Some(y)) => ring.cmp(&x.0, &y.0.mul(m)),
        };
        match ord {
            Ordering::Greater => out.push(a.next().unwrap().clone()),
            Ordering::Less => {
                let (gm, gc) = b.next().unwrap();
                out.push((gm.mul(m), field.neg(&field.mul(c, gc))));
            }
            Ordering::Equal => {
                let (am, ac) = a.next().unwrap();
                let (_, gc) = b.next().unwrap();
                let v = field.sub(ac, &field.mul(c, gc));
                if !field.is_zero(&v) {
                    out.push((*am, v));
                }
            }
        }
    }
    out
}

/// Full reduction of `p` by monic `polys` indexed in `reducers`. Returns sorted terms.
fn full_reduce(ring: &PolynomialRing, p: &[Term], reducers: &Reducers, polys: &[Polynomial]) -> Vec<Term> {
    let mut rem: Vec<Term> = Vec::new();
    let mut cur: Vec<Term> = p.to_vec();
    let mut start = 0;
    while start < cur.len() {
        let (m, c) = &cur[start];
        match reducers.find(m) {
            Some(i) => {
                let g = polys[i].terms();
                let q = m.div(&g[0].0).unwrap();
                cur = cancel_lead(ring, &cur[start..], &c.clone(), &q, g);
                start = 0;
            }
            None => {
                rem.push(cur[start].clone());
                start += 1;
            }
        }
    }
    rem
}

fn monic(field: &Field, terms: Vec<Term>) -> Vec<Term> {
    match terms.first() {
        Some((_, c)) if !field.is_one(c) => {
            let inv = field.inv(c).expect("nonzero leading coefficient");
            terms.into_iter().map(|(m, v)| (m, field.mul(&v, &inv))).collect()
        }
        _ => terms,
    }
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct Engine<'a> {
    ring: PolynomialRing,
    budget: &'a Budget,
    polys: Vec<Polynomial>,
    /// Elements whose leading monomial is not divisible by a later one.
    active: Vec<bool>,
    reducers: Reducers,
    pairs: Vec<Pair>,
    processed: u64,
}

impl<'a> Engine<'a> {
    fn new(ring: &PolynomialRing, budget: &'a Budget) -> Self {
        Engine {
            ring: ring.clone(),
            budget,
            polys: Vec::new(),
            active: Vec::new(),
            reducers: Reducers { entries: Vec::new() },
            pairs: Vec::new(),
            processed: 0,
        }
    }

    fn budget_check(&self) -> Result<(), BudgetExceeded> {
        self.budget.check(self.processed)
    }

    fn lm(&self, i: usize) -> &Monomial {
        self.polys[i].leading_monomial().unwrap()
    }

    fn reduce(&self, p: &[Term]) -> Vec<Term> {
        monic(self.ring.field(), full_reduce(&self.ring, p, &self.reducers, &self.polys))
    }

    /// Adds a new monic element and updates the pair set (Gebauer–Möller).
    fn insert(&mut self, h: Vec<Term>) {
        let hm = h[0].0;
        let k = self.polys.len();
        self.polys.push(Polynomial::from_terms(&self.ring, h));
        self.active.push(true);

        let candidates: Vec<(usize, Monomial)> =
            (0..k).filter(|&g| self.active[g]).map(|g| (g, self.lm(g).lcm(&hm))).collect();
        // chain criterion among the new pairs: drop (h,g) when some other new lcm strictly divides it;
        // among equal lcms keep one, preferring a coprime pair (which is then dropped by the product criterion)
        let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
        for (idx, &(g, l)) in candidates.iter().enumerate() {
            let dominated = candidates.iter().enumerate().any(|(jdx, &(_, l2))| {
                jdx != idx && l2.divides(&l) && l2 != l
            });
            if dominated {
                continue;
            }
            let coprime = self.lm(g).is_coprime(&hm);
            if let Some(slot) = kept.iter_mut().find(|e| e.1 == l) {
                slot.2 |= coprime;
                continue;
            }
            kept.push((g, l, coprime));
        }
        // old pairs made redundant by h
        self.pairs.retain(|p| {
            !(hm.divides(&p.lcm)
                && self.polys[p.i].leading_monomial().unwrap().lcm(&hm) != p.lcm
                && self.polys[p.j].leading_monomial().unwrap().lcm(&hm) != p.lcm)
        });
        for (g, lcm, coprime) in kept {
            if !coprime {
                self.pairs.push(Pair { i: g, j: k, lcm });
            }
        }
        for g in 0..k {
            if self.active[g] && hm.divides(self.polys[g].leading_monomial().unwrap()) {
                self.active[g] = false;
                self.reducers.remove(g);
            }
        }
        self.reducers.push(hm, k);
    }

    fn select(&mut self) -> Option<Pair> {
        let ring = &self.ring;
        let order = ring.order();
        let best = self
            .pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                order.weighted_degree(&a.lcm).cmp(&order.weighted_degree(&b.lcm)).then_with(|| ring.cmp(&a.lcm, &b.lcm))
            })
            .map(|(i, _)| i)?;
        Some(self.pairs.swap_remove(best))
    }

    fn spoly(&self, p: &Pair) -> Vec<Term> {
        let (f, g) = (&self.polys[p.i], &self.polys[p.j]);
        let mf = p.lcm.div(f.leading_monomial().unwrap()).unwrap();
        let mg = p.lcm.div(g.leading_monomial().unwrap()).unwrap();
        // both monic: S = mf·f − mg·g, leading terms cancel
        let a = f.mul_term(&mf, &self.ring.field().one());
        let one = self.ring.field().one();
        cancel_lead(&self.ring, a.terms(), &one, &mg, g.terms())
    }

    fn run(&mut self) -> Result<(), BudgetExceeded> {
        while let Some(pair) = self.select() {
            self.processed += 1;
            self.budget_check()?;
            let s = self.spoly(&pair);
            if s.is_empty() {
                continue;
            }
            let h = self.reduce(&s);
            if !h.is_empty() {
                self.insert(h);
            }
        }
        Ok(())
    }

    /// Interreduces the active elements into the reduced basis.
    fn finish(self) -> Vec<Polynomial> {
        let ring = self.ring;
        let mut minimal: Vec<Polynomial> =
            self.polys.into_iter().zip(self.active).filter(|(_, a)| *a).map(|(p, _)| p).collect();
        minimal.sort_by(|a, b| ring.cmp(b.leading_monomial().unwrap(), a.leading_monomial().unwrap()));
        let mut out = Vec::with_capacity(minimal.len());
        for i in 0..minimal.len() {
            let others: Vec<Polynomial> =
                minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, p)| p.clone()).collect();
            let reducers = Reducers::new(&others);
            let p = &minimal[i];
            let mut terms = vec![p.terms()[0].clone()];
            terms.extend(full_reduce(&ring, &p.terms()[1..], &reducers, &others));
            out.push(Polynomial::from_terms(&ring, terms));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::Field;
    use proptest::prelude::*;

    fn ring(n: usize) -> PolynomialRing {
        PolynomialRing::projective(Field::rationals(), n).unwrap()
    }

    fn polys(r: &PolynomialRing, src: &[&str]) -> Vec<Polynomial> {
        src.iter().map(|s| r.parse(s).unwrap()).collect()
    }

    fn gb(gens: &[Polynomial]) -> GroebnerBasis {
        groebner_basis(gens, &Budget::unlimited()).unwrap()
    }

    #[test]
    fn hand_computed_basis() {
        let r = ring(1);
        let b = gb(&polys(&r, &["x0^2", "x0*x1 + x1^2"]));
        let expect = polys(&r, &["x0^2", "x0*x1 + x1^2", "x1^3"]);
        let mut got = b.elements().to_vec();
        got.sort_by_key(|p| p.to_string());
        let mut want = expect;
        want.sort_by_key(|p| p.to_string());
        assert_eq!(got, want);
    }

    #[test]
    fn variables_are_already_reduced() {
        let r = ring(2);
        let b = gb(&polys(&r, &["x1", "x0"]));
        assert_eq!(b.elements(), polys(&r, &["x0", "x1"]).as_slice());
    }

    #[test]
    fn normal_forms() {
        let r = ring(2);
        let b = gb(&polys(&r, &["x0"]));
        assert!(b.normal_form(&r.parse("x0^2").unwrap()).unwrap().is_zero());
        assert_eq!(b.normal_form(&r.parse("x1").unwrap()).unwrap(), r.parse("x1").unwrap());
        assert_eq!(b.normal_form(&r.parse("3*x0*x2 + x1 - 1").unwrap()).unwrap(), r.parse("x1 - 1").unwrap());
    }

    #[test]
    fn unit_ideal_and_empty_input() {
        let r = ring(2);
        let b = gb(&polys(&r, &["x0 + 1", "x0"]));
        assert!(b.is_unit());
        assert!(buchberger(&[], MonomialOrder::Lex, &Budget::unlimited()).is_err());
        assert!(gb(&[r.zero()]).is_empty());
    }

    #[test]
    fn lex_eliminates() {
        // x0 - x1^2, x1 - x2^3 in lex: the basis contains x1 - x2^3 and x0 - x2^6
        let r = ring(2);
        let b = buchberger(&polys(&r, &["x0 - x1^2", "x1 - x2^3"]), MonomialOrder::Lex, &Budget::unlimited()).unwrap();
        assert!(b.is_member(&r.parse("x0 - x2^6").unwrap()).unwrap());
        assert!(b.elements().iter().any(|g| g.to_string() == "x1 - x2^3"));
    }

    #[test]
    fn pair_cap_is_reported() {
        let r = ring(2);
        let gens = polys(&r, &["x0^3 - x1*x2^2", "x1^3 - x0*x2^2", "x2^3 - x0*x1^2"]);
        let err = groebner_basis(&gens, &Budget::new(None, Some(1))).unwrap_err();
        assert!(matches!(err, GroebnerError::Budget(BudgetExceeded { kind: BudgetKind::PairLimit, .. })));
    }

    fn arb_gens() -> impl Strategy<Value = Vec<Vec<(u8, u8, u8, i8)>>> {
        prop::collection::vec(prop::collection::vec((0u8..3, 0u8..3, 0u8..3, -3i8..4), 1..4), 1..4)
    }

    fn build(r: &PolynomialRing, raw: &[Vec<(u8, u8, u8, i8)>]) -> Vec<Polynomial> {
        let f = r.field();
        raw.iter()
            .map(|ts| {
                Polynomial::from_terms(
                    r,
                    ts.iter().map(|&(a, b, c, k)| {
                        (Monomial::from_exponents(&[a as u32, b as u32, c as u32]).unwrap(), f.from_i64(k as i64))
                    }),
                )
            })
            .filter(|p| !p.is_zero())
            .collect()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn combinations_reduce_to_zero_and_basis_is_canonical(raw in arb_gens(), mult in arb_gens()) {
            let r = PolynomialRing::projective(Field::prime(101).unwrap(), 2).unwrap();
            let gens = build(&r, &raw);
            prop_assume!(!gens.is_empty());
            let b = gb(&gens);
            let cof = build(&r, &mult);
            let mut comb = r.zero();
            for (g, c) in gens.iter().zip(cof.iter().cycle()) {
                comb = &comb + &(g * c);
            }
            prop_assert!(b.normal_form(&comb).unwrap().is_zero());
            // permuted, rescaled generators give the identical reduced basis
            let mut shuffled: Vec<Polynomial> = gens.iter().rev().map(|g| g.scale(&r.field().from_i64(5))).collect();
            let k = 1 % shuffled.len();
            shuffled.rotate_left(k);
            let again = gb(&shuffled);
            prop_assert_eq!(again.elements(), b.elements());
            // reduced: no term divisible by another element's leading monomial
            for (i, g) in b.elements().iter().enumerate() {
                prop_assert!(r.field().is_one(g.leading_coefficient().unwrap()));
                for (j, h) in b.elements().iter().enumerate() {
                    if i != j {
                        let lm = h.leading_monomial().unwrap();
                        prop_assert!(g.terms().iter().all(|(m, _)| !lm.divides(m)));
                    }
                }
            }
        }
    }
}
