use std::collections::{BTreeMap, HashMap};

use crate::coefficients::Scalar;
use crate::polynomials::{product, Monomial, Polynomial, PolynomialRing};

use super::{normalize_point, ConfigError, FatPointConfiguration};

/// Lines in P² together with all their pairwise intersection points and the exact
/// incidence between them.
#[derive(Debug, Clone)]
pub struct LineArrangement {
    ring: PolynomialRing,
    lines: Vec<Polynomial>,
    points: Vec<Vec<Scalar>>,
    incidence: Vec<Vec<usize>>,
}

/// Coefficients `(a, b, c)` of `a·x0 + b·x1 + c·x2`.
fn line_coefficients(line: &Polynomial) -> Vec<Scalar> {
    let field = line.field();
    let mut out = vec![field.zero(); 3];
    for (m, c) in line.terms() {
        let i = (0..3).find(|&i| m.exponent(i) == 1).expect("linear form");
        out[i] = c.clone();
    }
    out
}

fn cross(ring: &PolynomialRing, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let f = ring.field();
    let det = |i: usize, j: usize| f.sub(&f.mul(&a[i], &b[j]), &f.mul(&a[j], &b[i]));
    vec![det(1, 2), det(2, 0), det(0, 1)]
}

impl LineArrangement {
    pub fn new(ring: &PolynomialRing, lines: Vec<Polynomial>) -> Result<Self, ConfigError> {
        if ring.num_vars() != 3 {
            return Err(ConfigError::Degenerate("line arrangements live in P^2".into()));
        }
        let field = ring.field();
        let mut seen = HashMap::new();
        for (i, l) in lines.iter().enumerate() {
            if l.ring() != ring || l.total_degree() != Some(1) || !l.is_homogeneous() {
                return Err(ConfigError::Degenerate(format!("line {i} is not a linear form: {l}")));
            }
            let key = normalize_point(field, &line_coefficients(l)).unwrap();
            if let Some(&j) = seen.get(&key) {
                return Err(ConfigError::Duplicate(j, i));
            }
            seen.insert(key, i);
        }
        let coeffs: Vec<Vec<Scalar>> = lines.iter().map(line_coefficients).collect();
        let mut index: HashMap<Vec<Scalar>, usize> = HashMap::new();
        let mut points = Vec::new();
        for i in 0..lines.len() {
            for j in i + 1..lines.len() {
                let p = normalize_point(field, &cross(ring, &coeffs[i], &coeffs[j])).expect("distinct lines meet in a point");
                index.entry(p.clone()).or_insert_with(|| {
                    points.push(p);
                    points.len() - 1
                });
            }
        }
        let incidence = points
            .iter()
            .map(|p| {
                lines
                    .iter()
                    .enumerate()
                    .filter(|(_, l)| field.is_zero(&l.evaluate_scalars(p).unwrap()))
                    .map(|(k, _)| k)
                    .collect()
            })
            .collect();
        Ok(LineArrangement { ring: ring.clone(), lines, points, incidence })
    }

    pub fn ring(&self) -> &PolynomialRing {
        &self.ring
    }

    pub fn lines(&self) -> &[Polynomial] {
        &self.lines
    }

    /// All intersection points, in order of first appearance.
    pub fn points(&self) -> &[Vec<Scalar>] {
        &self.points
    }

    /// Indices of the lines through each point of [`points`](Self::points).
    pub fn incidence(&self) -> &[Vec<usize>] {
        &self.incidence
    }

    /// Lines through `point`, by exact evaluation.
    pub fn lines_through(&self, point: &[Scalar]) -> Vec<usize> {
        let field = self.ring.field();
        (0..self.lines.len())
            .filter(|&k| field.is_zero(&self.lines[k].evaluate_scalars(point).unwrap()))
            .collect()
    }

    /// Number of intersection points through which exactly k lines pass, keyed by k.
    pub fn multiplicity_counts(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for inc in &self.incidence {
            *out.entry(inc.len()).or_insert(0) += 1;
        }
        out
    }

    /// Intersection points lying on exactly `k` lines.
    pub fn points_of_multiplicity(&self, k: usize) -> Vec<Vec<Scalar>> {
        self.points.iter().zip(&self.incidence).filter(|(_, inc)| inc.len() == k).map(|(p, _)| p.clone()).collect()
    }

    /// Intersection points lying on at least `k` lines.
    pub fn points_of_multiplicity_at_least(&self, k: usize) -> Vec<Vec<Scalar>> {
        self.points.iter().zip(&self.incidence).filter(|(_, inc)| inc.len() >= k).map(|(p, _)| p.clone()).collect()
    }

    /// Product of all line forms.
    pub fn product(&self) -> Polynomial {
        product(&self.ring, &self.lines)
    }

    /// The reduced scheme of intersection points on at least `k` lines.
    pub fn configuration(&self, name: &str, k: usize) -> Result<FatPointConfiguration, ConfigError> {
        FatPointConfiguration::reduced(name, &self.ring, self.points_of_multiplicity_at_least(k))
    }

    /// Exact re-check of the stored incidence, including non-incidences.
    pub fn verify(&self) -> bool {
        self.points.iter().zip(&self.incidence).all(|(p, inc)| self.lines_through(p) == *inc)
    }

    /// Coefficient vector of line `i` on `x0, x1, x2`.
    pub fn line_coefficients(&self, i: usize) -> Vec<Scalar> {
        line_coefficients(&self.lines[i])
    }
}

/// `a·x0 + b·x1 + c·x2`.
pub(super) fn line_from(ring: &PolynomialRing, coeffs: &[Scalar]) -> Polynomial {
    Polynomial::from_terms(ring, (0..3).map(|i| (Monomial::var(i), coeffs[i].clone())))
}
