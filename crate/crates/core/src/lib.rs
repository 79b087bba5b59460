//! Exact computations with symbolic and ordinary powers of fat point ideals in
//! projective space, and certified checks of containments `I^(m) ⊆ M^j·I^r` between them.

pub mod cli;
pub mod coefficients;
pub mod configurations;
pub mod containment;
pub mod groebner;
pub mod ideals;
pub mod invariants;
pub mod linalg;
pub mod oracle;
pub mod polynomials;
pub mod text;
