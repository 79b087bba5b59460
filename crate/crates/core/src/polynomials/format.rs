//! `coef*x0^a*x1^b` terms joined by ` + ` / ` - `, highest term first.
//!
//! Rational and 𝔽_p coefficients are written bare (`3/4*x0^2`, `- x1`); coefficients
//! of a cyclotomic field that are not rational are parenthesized (`(1 + z)*x0`).

use num_bigint::BigInt;

use super::{Monomial, PolyError, Polynomial, PolynomialRing};
use crate::text::{self, Algebra};

fn format_monomial(ring: &PolynomialRing, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, name) in ring.names().iter().enumerate() {
        match m.exponent(i) {
            0 => {}
            1 => parts.push(name.clone()),
            e => parts.push(format!("{name}^{e}")),
        }
    }
    parts.join("*")
}

pub(super) fn format(p: &Polynomial) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let field = p.field();
    let mut out = String::new();
    for (idx, (m, c)) in p.terms().iter().enumerate() {
        let mono = format_monomial(p.ring(), m);
        let (negative, coeff) = if field.is_atomic(c) {
            let negative = field.is_negative_rational(c);
            let abs = if negative { field.neg(c) } else { c.clone() };
            let s = if field.is_one(&abs) && !mono.is_empty() { String::new() } else { field.format(&abs) };
            (negative, s)
        } else {
            (false, format!("({})", field.format(c)))
        };
        if idx == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        match (coeff.is_empty(), mono.is_empty()) {
            (true, _) => out.push_str(&mono),
            (false, true) => out.push_str(&coeff),
            (false, false) => {
                out.push_str(&coeff);
                out.push('*');
                out.push_str(&mono);
            }
        }
    }
    out
}

struct RingAlgebra<'a>(&'a PolynomialRing);

impl Algebra for RingAlgebra<'_> {
    type Value = Polynomial;

    fn number(&self, n: &BigInt) -> Result<Polynomial, String> {
        Ok(self.0.constant(self.0.field().from_bigint(n)))
    }

    fn symbol(&self, name: &str) -> Result<Polynomial, String> {
        if let Some(i) = self.0.names().iter().position(|n| n == name) {
            return Ok(self.0.var(i));
        }
        match (name, self.0.field().generator()) {
            ("z", Some(z)) => Ok(self.0.constant(z)),
            _ => Err(format!("unknown variable '{name}'")),
        }
    }

    fn add(&self, a: Polynomial, b: Polynomial) -> Polynomial {
        &a + &b
    }

    fn sub(&self, a: Polynomial, b: Polynomial) -> Polynomial {
        &a - &b
    }

    fn mul(&self, a: Polynomial, b: Polynomial) -> Result<Polynomial, String> {
        for (x, y) in [(&a, &b), (&b, &a)] {
            if let (Some(dx), Some(dy)) = (x.total_degree(), y.total_degree()) {
                if dx.checked_add(dy).is_none_or(|d| d > u16::MAX as u32) {
                    return Err("exponent exceeds 16 bits".into());
                }
            }
        }
        Ok(&a * &b)
    }

    fn div(&self, a: Polynomial, b: Polynomial) -> Result<Polynomial, String> {
        match b.terms() {
            [(m, c)] if m.degree() == 0 => {
                let inv = self.0.field().inv(c).map_err(|e| e.to_string())?;
                Ok(a.scale(&inv))
            }
            [] => Err("division by zero".into()),
            _ => Err("can only divide by nonzero constants".into()),
        }
    }

    fn neg(&self, a: Polynomial) -> Polynomial {
        -&a
    }

    fn pow(&self, a: Polynomial, e: u32) -> Result<Polynomial, String> {
        if let Some(d) = a.total_degree() {
            if (d as u64) * (e as u64) > u16::MAX as u64 {
                return Err("exponent exceeds 16 bits".into());
            }
        }
        Ok(a.pow(e))
    }
}

pub(super) fn parse(ring: &PolynomialRing, s: &str) -> Result<Polynomial, PolyError> {
    Ok(text::parse_expression(s, &RingAlgebra(ring))?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::Field;

    #[test]
    fn printer_layout() {
        let r = PolynomialRing::projective(Field::rationals(), 2).unwrap();
        let p = r.parse("3/4*x0^2*x1 - x2^3 + 5 - x1").unwrap();
        assert_eq!(p.to_string(), "3/4*x0^2*x1 - x2^3 - x1 + 5");
        assert_eq!(r.parse("-x0").unwrap().to_string(), "-x0");
        assert_eq!(r.zero().to_string(), "0");
        assert_eq!(r.parse("(x0 + x1)^2").unwrap().to_string(), "x0^2 + 2*x0*x1 + x1^2");
    }

    #[test]
    fn cyclotomic_coefficients() {
        let r = PolynomialRing::projective(Field::cyclotomic(3).unwrap(), 2).unwrap();
        let p = r.parse("x0 - z*x1 + z^2*x2").unwrap();
        assert_eq!(p.to_string(), "x0 + (-z)*x1 + (-1 - z)*x2");
        assert_eq!(r.parse(&p.to_string()).unwrap(), p);
        let q = r.parse("-1/2*x0").unwrap();
        assert_eq!(q.to_string(), "-1/2*x0");
    }

    #[test]
    fn finite_field_coefficients() {
        let r = PolynomialRing::projective(Field::prime(7).unwrap(), 2).unwrap();
        assert_eq!(r.parse("x0 - x1").unwrap().to_string(), "x0 + 6*x1");
    }

    #[test]
    fn parse_errors() {
        let r = PolynomialRing::projective(Field::rationals(), 2).unwrap();
        assert!(r.parse("x0 + y").is_err());
        assert!(r.parse("x0 / x1").is_err());
        assert!(r.parse("x0 / 0").is_err());
        assert!(r.parse("x0^70000").is_err());
        assert!(r.parse("z").is_err());
    }
}
