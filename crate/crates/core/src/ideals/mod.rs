//! Homogeneous ideals: powers, products, intersections and symbolic powers of fat points.

mod text;

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, Mutex};

use thiserror::Error;

use crate::coefficients::Scalar;
use crate::configurations::FatPointConfiguration;
use crate::groebner::{buchberger, Budget, GroebnerBasis, GroebnerError};
use crate::polynomials::{Monomial, MonomialOrder, PolyError, Polynomial, PolynomialRing};

pub use text::{parse_ideal, write_ideal};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error("generator is not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("the zero vector is not a projective point")]
    ZeroPoint,
    #[error("malformed ideal file, line {line}: {message}")]
    Format { line: usize, message: String },
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

type CacheSlot = Arc<Mutex<Option<Arc<GroebnerBasis>>>>;

/// A homogeneous ideal given by generators, with a lazily filled reduced-basis cache
/// per monomial order. Clones share the cache.
#[derive(Clone)]
pub struct Ideal {
    ring: PolynomialRing,
    generators: Vec<Polynomial>,
    cache: Arc<Mutex<HashMap<MonomialOrder, CacheSlot>>>,
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Ideal").field("ring", &self.ring).field("generators", &self.generators).finish()
    }
}

/// Outcome of `J ⊆ I`: the first generator of `J` outside `I`, if any.
#[derive(Debug, Clone)]
pub struct Containment {
    pub holds: bool,
    pub witness: Option<Polynomial>,
}

impl Ideal {
    /// Zero generators are dropped; every generator must be homogeneous and live in `ring`.
    pub fn new(ring: &PolynomialRing, generators: Vec<Polynomial>) -> Result<Ideal, IdealError> {
        let mut gens = Vec::with_capacity(generators.len());
        for g in generators {
            if g.ring() != ring {
                return Err(PolyError::RingMismatch { left: ring.to_string(), right: g.ring().to_string() }.into());
            }
            if !g.is_homogeneous() {
                return Err(IdealError::NotHomogeneous(g.to_string()));
            }
            if !g.is_zero() {
                gens.push(g);
            }
        }
        Ok(Ideal::from_trusted(ring, gens))
    }

    fn from_trusted(ring: &PolynomialRing, generators: Vec<Polynomial>) -> Ideal {
        Ideal { ring: ring.clone(), generators, cache: Arc::default() }
    }

    /// An ideal whose generators are its own reduced basis for the ring's order.
    fn from_basis(basis: GroebnerBasis, ring: &PolynomialRing) -> Ideal {
        let ideal = Ideal::from_trusted(ring, basis.elements().to_vec());
        ideal.slot(ring.order()).lock().unwrap().replace(Arc::new(basis));
        ideal
    }

    pub fn unit(ring: &PolynomialRing) -> Ideal {
        Ideal::from_trusted(ring, vec![ring.one()])
    }

    pub fn ring(&self) -> &PolynomialRing {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn max_generator_degree(&self) -> Option<u32> {
        self.generators.iter().filter_map(|g| g.total_degree()).max()
    }

    fn slot(&self, order: MonomialOrder) -> CacheSlot {
        self.cache.lock().unwrap().entry(order).or_default().clone()
    }

    /// Reduced basis for `order`; computed once, later calls share the result.
    /// A call that runs out of budget leaves the cache empty.
    pub fn groebner_basis_for(&self, order: MonomialOrder, budget: &Budget) -> Result<Arc<GroebnerBasis>, IdealError> {
        let slot = self.slot(order);
        let mut guard = slot.lock().unwrap();
        if let Some(b) = guard.as_ref() {
            return Ok(b.clone());
        }
        let basis = if self.generators.is_empty() {
            GroebnerBasis::from_reduced(&self.ring.with_order(order)?, Vec::new())
        } else {
            buchberger(&self.generators, order, budget)?
        };
        let basis = Arc::new(basis);
        *guard = Some(basis.clone());
        Ok(basis)
    }

    /// Reduced basis for the ring's own (degree-compatible) order.
    pub fn groebner_basis(&self, budget: &Budget) -> Result<Arc<GroebnerBasis>, IdealError> {
        self.groebner_basis_for(self.ring.order(), budget)
    }

    /// The ideal re-generated by its reduced basis.
    pub fn interreduced(&self, budget: &Budget) -> Result<Ideal, IdealError> {
        let b = self.groebner_basis(budget)?;
        Ok(Ideal::from_basis((*b).clone(), &self.ring))
    }

    pub fn is_member(&self, f: &Polynomial, budget: &Budget) -> Result<bool, IdealError> {
        Ok(self.groebner_basis(budget)?.is_member(f)?)
    }

    /// Decides `other ⊆ self` generator by generator.
    pub fn contains(&self, other: &Ideal, budget: &Budget) -> Result<Containment, IdealError> {
        check_same_ring(&self.ring, &other.ring)?;
        let basis = self.groebner_basis(budget)?;
        for g in &other.generators {
            if !basis.normal_form(g)?.is_zero() {
                return Ok(Containment { holds: false, witness: Some(g.clone()) });
            }
        }
        Ok(Containment { holds: true, witness: None })
    }

    /// Equality by mutual containment.
    pub fn same_ideal(&self, other: &Ideal, budget: &Budget) -> Result<bool, IdealError> {
        Ok(self.contains(other, budget)?.holds && other.contains(self, budget)?.holds)
    }

    /// All r-fold products of generators, deduplicated; `I⁰ = R`.
    pub fn power(&self, r: u32) -> Ideal {
        let mut acc = Ideal::unit(&self.ring);
        for _ in 0..r {
            acc = acc.product_unchecked(self);
        }
        acc
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal, IdealError> {
        check_same_ring(&self.ring, &other.ring)?;
        Ok(self.product_unchecked(other))
    }

    fn product_unchecked(&self, other: &Ideal) -> Ideal {
        let mut seen = HashSet::new();
        let mut gens = Vec::new();
        for f in &self.generators {
            for g in &other.generators {
                let p = (f * g).make_monic();
                if seen.insert(p.clone()) {
                    gens.push(p);
                }
            }
        }
        Ideal::from_trusted(&self.ring, gens)
    }

    /// `I ∩ J` by eliminating `t` from `t·I + (1−t)·J`. The result's generators are its
    /// reduced basis for the ring order, which is also cached.
    pub fn intersect(&self, other: &Ideal, budget: &Budget) -> Result<Ideal, IdealError> {
        check_same_ring(&self.ring, &other.ring)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Ideal::from_trusted(&self.ring, Vec::new()));
        }
        let n = self.ring.num_vars();
        let tname = (0..)
            .map(|k| if k == 0 { "t".to_string() } else { format!("t{k}") })
            .find(|c| !self.ring.names().contains(c))
            .unwrap();
        let ext = self.ring.with_leading_variable(&tname)?;
        let shift: Vec<usize> = (1..=n).collect();
        let t = ext.var(0);
        let one_minus_t = &ext.one() - &t;
        let mut gens = Vec::with_capacity(self.generators.len() + other.generators.len());
        for f in &self.generators {
            gens.push(&f.remap(&ext, &shift) * &t);
        }
        for g in &other.generators {
            gens.push(&g.remap(&ext, &shift) * &one_minus_t);
        }
        // with t of weight 0 every generator is homogeneous, so the weighted order eliminates
        // t and Buchberger can proceed degree by degree; the t-free elements form the reduced
        // basis of the elimination ideal for the induced order, which is grevlex
        let basis = buchberger(&gens, MonomialOrder::WeightedElimination(1), budget)?;
        let base_ring = self.ring.with_order(MonomialOrder::GradedReverseLex)?;
        let elements: Vec<Polynomial> = basis
            .elements()
            .iter()
            .filter(|g| g.terms().iter().all(|(m, _)| m.exponent(0) == 0))
            .map(|g| drop_leading_variable(g, &base_ring, n))
            .collect();
        let result_basis = GroebnerBasis::from_reduced(&base_ring, elements);
        if self.ring.order() == MonomialOrder::GradedReverseLex {
            return Ok(Ideal::from_basis(result_basis, &self.ring));
        }
        let gens = result_basis.elements().iter().map(|g| g.to_ring(&self.ring)).collect::<Result<_, _>>()?;
        Ok(Ideal::from_trusted(&self.ring, gens))
    }
}

fn drop_leading_variable(g: &Polynomial, ring: &PolynomialRing, n: usize) -> Polynomial {
    let terms = g.terms().iter().map(|(m, c)| {
        let exps: Vec<u32> = (1..=n).map(|i| m.exponent(i)).collect();
        (Monomial::from_exponents(&exps).unwrap(), c.clone())
    });
    Polynomial::from_terms(ring, terms)
}

fn check_same_ring(a: &PolynomialRing, b: &PolynomialRing) -> Result<(), IdealError> {
    if a != b {
        return Err(PolyError::RingMismatch { left: a.to_string(), right: b.to_string() }.into());
    }
    Ok(())
}

/// The N linear forms `x_i − P_i·x_k` vanishing at `P`, pivoting on the first nonzero
/// coordinate `k` of `P` after scaling it to 1.
pub fn point_ideal(ring: &PolynomialRing, point: &[Scalar]) -> Result<Ideal, IdealError> {
    let n = ring.num_vars();
    if point.len() != n {
        return Err(PolyError::ArityMismatch { expected: n, got: point.len() }.into());
    }
    let field = ring.field();
    let k = point.iter().position(|c| !field.is_zero(c)).ok_or(IdealError::ZeroPoint)?;
    let inv = field.inv(&point[k]).expect("pivot is nonzero");
    let mut gens = Vec::with_capacity(n - 1);
    for i in (0..n).filter(|&i| i != k) {
        let mut coeffs = vec![field.zero(); n];
        coeffs[i] = field.one();
        coeffs[k] = field.neg(&field.mul(&point[i], &inv));
        gens.push(ring.linear_form(&coeffs)?);
    }
    Ok(Ideal::from_trusted(ring, gens))
}

/// `M^j`: all monomials of degree `j`.
pub fn irrelevant_power(ring: &PolynomialRing, j: u32) -> Ideal {
    let one = ring.field().one();
    let gens = Monomial::all_of_degree(ring.num_vars(), j)
        .into_iter()
        .map(|m| Polynomial::monomial(ring, m, one.clone()))
        .collect();
    Ideal::from_trusted(ring, gens)
}

/// `I(Z)`, the ideal of the configuration with its multiplicities.
pub fn configuration_ideal(z: &FatPointConfiguration, budget: &Budget) -> Result<Ideal, IdealError> {
    symbolic_power(z, 1, budget)
}

/// `I(Z)^(m) = ∩ I(P_i)^{m·m_i}`, folded left to right. Generators are the reduced basis.
pub fn symbolic_power(z: &FatPointConfiguration, m: u32, budget: &Budget) -> Result<Ideal, IdealError> {
    let ring = z.ring();
    let mut acc: Option<Ideal> = None;
    for p in z.points() {
        let piece = point_ideal(ring, p.coordinates())?.power(m * p.multiplicity());
        acc = Some(match acc {
            None => piece.interreduced(budget)?,
            Some(a) => a.intersect(&piece, budget)?,
        });
    }
    Ok(acc.unwrap_or_else(|| Ideal::unit(ring)))
}

/// `I^r ⊆ I^(m)` for the configuration ideal `I`.
pub fn ordinary_in_symbolic(z: &FatPointConfiguration, m: u32, r: u32, budget: &Budget) -> Result<Containment, IdealError> {
    let sym = symbolic_power(z, m, budget)?;
    let ord = configuration_ideal(z, budget)?.power(r);
    sym.contains(&ord, budget)
}
