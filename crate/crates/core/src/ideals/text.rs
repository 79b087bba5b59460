//! Ideal files: a header `ring <field> vars x0,x1,x2 order grevlex`, then one generator
//! per line. Blank lines and lines starting with `#` are ignored.

use crate::coefficients::Field;
use crate::polynomials::{MonomialOrder, PolynomialRing};

use super::{Ideal, IdealError};

pub fn write_ideal(ideal: &Ideal) -> String {
    let ring = ideal.ring();
    let mut out = format!(
        "ring {} vars {} order {}\n",
        ring.field().descriptor(),
        ring.names().join(","),
        ring.order()
    );
    for g in ideal.generators() {
        out.push_str(&g.to_string());
        out.push('\n');
    }
    out
}

fn err(line: usize, message: impl Into<String>) -> IdealError {
    IdealError::Format { line, message: message.into() }
}

fn parse_header(line: usize, s: &str) -> Result<PolynomialRing, IdealError> {
    let words: Vec<&str> = s.split_whitespace().collect();
    let [kw_ring, field, kw_vars, vars, rest @ ..] = words.as_slice() else {
        return Err(err(line, "expected 'ring <field> vars <names> [order <order>]'"));
    };
    if *kw_ring != "ring" || *kw_vars != "vars" {
        return Err(err(line, "expected 'ring <field> vars <names> [order <order>]'"));
    }
    let field = Field::parse(field).map_err(|e| err(line, e.to_string()))?;
    let names = vars.split(',').map(str::to_string).collect();
    let ring = PolynomialRing::with_names(field, names)?;
    match rest {
        [] => Ok(ring),
        ["order", o] => {
            let order: MonomialOrder = o.parse()?;
            Ok(ring.with_order(order)?)
        }
        _ => Err(err(line, "trailing words after the variable list")),
    }
}

pub fn parse_ideal(text: &str) -> Result<Ideal, IdealError> {
    let mut ring = None;
    let mut gens = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match &ring {
            None => ring = Some(parse_header(idx + 1, line)?),
            Some(r) => gens.push(r.parse(line).map_err(|e| err(idx + 1, e.to_string()))?),
        }
    }
    let ring = ring.ok_or_else(|| err(0, "missing ring header"))?;
    Ideal::new(&ring, gens)
}
