//! Point configurations: fat point schemes, line arrangements and the named constructors.

mod arrangement;
mod constructors;
mod registry;

use std::collections::HashSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::coefficients::{Field, FieldError, Scalar};
use crate::polynomials::{PolyError, PolynomialRing};

pub use arrangement::LineArrangement;
pub use constructors::{
    boroczky12, coordinate_points, dual_hesse, fermat, fermat_polynomial, finite_plane_points, general_points,
    klein_f7, klein_quartic_mod7, plane_subset, punctured_plane, star, KleinF7,
};
pub use registry::{parse_spec, registry_entries, Built, RegistryEntry};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("configuration has no points")]
    Empty,
    #[error("point {0} is the zero vector")]
    ZeroPoint(usize),
    #[error("points {0} and {1} coincide")]
    Duplicate(usize, usize),
    #[error("multiplicity must be at least 1")]
    ZeroMultiplicity,
    #[error("degenerate parameters: {0}")]
    Degenerate(String),
    #[error("construction failed its own consistency check: {0}")]
    Inconsistent(String),
    #[error("unknown configuration '{0}'")]
    UnknownName(String),
    #[error("bad configuration spec '{spec}': {reason}")]
    BadSpec { spec: String, reason: String },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A projective point with a multiplicity. Coordinates are normalized so that the first
/// nonzero one is 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FatPoint {
    coords: Vec<Scalar>,
    multiplicity: u32,
}

impl FatPoint {
    /// Unnormalized input is accepted; normalization happens in the configuration.
    pub fn new(coords: Vec<Scalar>, multiplicity: u32) -> Self {
        FatPoint { coords, multiplicity }
    }

    pub fn coordinates(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn multiplicity(&self) -> u32 {
        self.multiplicity
    }
}

/// Scales so that the first nonzero coordinate is 1; `None` for the zero vector.
pub fn normalize_point(field: &Field, coords: &[Scalar]) -> Option<Vec<Scalar>> {
    let k = coords.iter().position(|c| !field.is_zero(c))?;
    let inv = field.inv(&coords[k]).ok()?;
    Some(coords.iter().map(|c| field.mul(c, &inv)).collect())
}

/// The scheme `Z = m₁P₁ + … + m_sP_s` in `P^N`.
#[derive(Debug, Clone)]
pub struct FatPointConfiguration {
    name: String,
    ring: PolynomialRing,
    points: Vec<FatPoint>,
}

impl FatPointConfiguration {
    pub fn new(name: &str, ring: &PolynomialRing, points: Vec<FatPoint>) -> Result<Self, ConfigError> {
        if points.is_empty() {
            return Err(ConfigError::Empty);
        }
        let field = ring.field();
        let n = ring.num_vars();
        let mut seen = std::collections::HashMap::new();
        let mut out = Vec::with_capacity(points.len());
        for (i, p) in points.into_iter().enumerate() {
            if p.coords.len() != n {
                return Err(PolyError::ArityMismatch { expected: n, got: p.coords.len() }.into());
            }
            if p.multiplicity == 0 {
                return Err(ConfigError::ZeroMultiplicity);
            }
            let coords = normalize_point(field, &p.coords).ok_or(ConfigError::ZeroPoint(i))?;
            if let Some(&j) = seen.get(&coords) {
                return Err(ConfigError::Duplicate(j, i));
            }
            seen.insert(coords.clone(), i);
            out.push(FatPoint { coords, multiplicity: p.multiplicity });
        }
        Ok(FatPointConfiguration { name: name.to_string(), ring: ring.clone(), points: out })
    }

    /// Reduced scheme: every point with multiplicity 1.
    pub fn reduced(name: &str, ring: &PolynomialRing, points: Vec<Vec<Scalar>>) -> Result<Self, ConfigError> {
        Self::new(name, ring, points.into_iter().map(|c| FatPoint::new(c, 1)).collect())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn ring(&self) -> &PolynomialRing {
        &self.ring
    }

    pub fn field(&self) -> &Field {
        self.ring.field()
    }

    /// Projective dimension N.
    pub fn dim(&self) -> usize {
        self.ring.dim()
    }

    pub fn points(&self) -> &[FatPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.points.iter().all(|p| p.multiplicity == 1)
    }

    /// Setwise equality of the underlying points and multiplicities.
    pub fn same_points(&self, other: &FatPointConfiguration) -> bool {
        let a: HashSet<&FatPoint> = self.points.iter().collect();
        let b: HashSet<&FatPoint> = other.points.iter().collect();
        self.field() == other.field() && a == b
    }

    /// One point per line, `(c0 : c1 : ... : cN) ^ m`, after a `#` header.
    pub fn export(&self) -> String {
        let field = self.field();
        let mut out = String::new();
        let _ = writeln!(out, "# {} over {} in P^{}, {} points", self.name, field.descriptor(), self.dim(), self.len());
        for p in &self.points {
            let coords: Vec<String> = p.coords.iter().map(|c| field.format(c)).collect();
            let _ = writeln!(out, "({}) ^ {}", coords.join(" : "), p.multiplicity);
        }
        out
    }

    /// Reads the [`export`](Self::export) format back into `ring`.
    pub fn import(name: &str, ring: &PolynomialRing, text: &str) -> Result<Self, ConfigError> {
        let field = ring.field();
        let bad = |line: &str, reason: &str| ConfigError::BadSpec { spec: line.to_string(), reason: reason.to_string() };
        let mut points = Vec::new();
        for raw in text.lines() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (body, mult) = match line.rsplit_once('^') {
                Some((b, m)) if b.trim_end().ends_with(')') => {
                    (b.trim(), m.trim().parse::<u32>().map_err(|_| bad(line, "bad multiplicity"))?)
                }
                _ => (line, 1),
            };
            let inner = body
                .strip_prefix('(')
                .and_then(|b| b.strip_suffix(')'))
                .ok_or_else(|| bad(line, "expected (c0 : ... : cN)"))?;
            let coords = inner.split(':').map(|c| field.parse_scalar(c.trim())).collect::<Result<Vec<_>, _>>()?;
            points.push(FatPoint::new(coords, mult));
        }
        Self::new(name, ring, points)
    }
}
