//! Name grammar for configurations:
//!
//! ```text
//! dual-hesse | boroczky12 | klein-f7
//! fermat:<n>[:<field>]        default field QQ(zeta<n>)
//! star:<d>:<N>[:t1,...,td]    rational parameters, default 1..d
//! punctured:<p>
//! general:<s>:<N>:<seed>
//! coordpts:<N>[:i,j,...]
//! plane:<p>:i,j,...           points of P^2(F_p) by index
//! ```

use crate::coefficients::Field;
use crate::polynomials::Polynomial;

use super::{
    boroczky12, coordinate_points, dual_hesse, fermat, fermat_polynomial, general_points, klein_f7, plane_subset,
    punctured_plane, star, ConfigError, FatPointConfiguration, LineArrangement,
};

/// A constructed configuration with its line arrangement and distinguished form, when
/// the construction has them.
#[derive(Debug, Clone)]
pub struct Built {
    pub config: FatPointConfiguration,
    pub arrangement: Option<LineArrangement>,
    /// The product of the lines (or the Fermat form), of degree equal to the number of lines.
    pub form: Option<Polynomial>,
}

#[derive(Debug, Clone, Copy)]
pub struct RegistryEntry {
    pub pattern: &'static str,
    pub example: &'static str,
    pub description: &'static str,
}

pub fn registry_entries() -> &'static [RegistryEntry] {
    &[
        RegistryEntry { pattern: "dual-hesse", example: "dual-hesse", description: "12 points, 9 lines over QQ(zeta3)" },
        RegistryEntry {
            pattern: "fermat:<n>[:<field>]",
            example: "fermat:4",
            description: "n^2+3 points of the 3n lines splitting (x^n-y^n)(y^n-z^n)(z^n-x^n)",
        },
        RegistryEntry {
            pattern: "star:<d>:<N>[:t1,...]",
            example: "star:4:2",
            description: "C(d,N) points where N of d general hyperplanes meet, over QQ",
        },
        RegistryEntry { pattern: "boroczky12", example: "boroczky12", description: "19 triple points of 12 real lines over QQ(zeta12)" },
        RegistryEntry { pattern: "punctured:<p>", example: "punctured:3", description: "P^2(F_p) without (0:0:1)" },
        RegistryEntry {
            pattern: "klein-f7",
            example: "klein-f7",
            description: "49 points of the 21 lines of P^2(F_7) missing a smooth conic",
        },
        RegistryEntry {
            pattern: "general:<s>:<N>:<seed>",
            example: "general:6:2:1",
            description: "s seeded points in general position over QQ",
        },
        RegistryEntry { pattern: "coordpts:<N>[:i,j,...]", example: "coordpts:2", description: "standard coordinate points" },
        RegistryEntry { pattern: "plane:<p>:i,j,...", example: "plane:2:0,1,2,3", description: "points of P^2(F_p) by index" },
    ]
}

fn bad(spec: &str, reason: impl Into<String>) -> ConfigError {
    ConfigError::BadSpec { spec: spec.to_string(), reason: reason.into() }
}

fn num<T: std::str::FromStr>(spec: &str, what: &str, s: &str) -> Result<T, ConfigError> {
    s.trim().parse().map_err(|_| bad(spec, format!("{what} must be a nonnegative integer, got '{s}'")))
}

fn list(spec: &str, s: &str) -> Result<Vec<usize>, ConfigError> {
    s.split(',').map(|v| num(spec, "index", v)).collect()
}

pub fn parse_spec(spec: &str) -> Result<Built, ConfigError> {
    let spec = spec.trim();
    let parts: Vec<&str> = spec.split(':').collect();
    let plain = |config| Built { config, arrangement: None, form: None };
    let with_lines = |config, arrangement: LineArrangement| {
        let form = Some(arrangement.product());
        Built { config, arrangement: Some(arrangement), form }
    };
    match parts.as_slice() {
        ["dual-hesse"] => {
            let (z, a) = dual_hesse();
            Ok(with_lines(z, a))
        }
        ["boroczky12"] => {
            let (z, a) = boroczky12();
            Ok(with_lines(z, a))
        }
        ["klein-f7"] => {
            let k = klein_f7()?;
            Ok(with_lines(k.configuration, k.arrangement))
        }
        ["fermat", n, rest @ ..] => {
            let n: u32 = num(spec, "n", n)?;
            let field = match rest {
                [] => Field::cyclotomic(n)?,
                [f] => Field::parse(f)?,
                _ => return Err(bad(spec, "expected fermat:<n>[:<field>]")),
            };
            let (z, a) = fermat(n, &field)?;
            let form = Some(fermat_polynomial(z.ring(), n));
            let name = match rest {
                [] => format!("fermat:{n}"),
                _ => format!("fermat:{n}:{}", field.descriptor()),
            };
            Ok(Built { config: z.with_name(&name), arrangement: Some(a), form })
        }
        ["star", d, n, rest @ ..] => {
            let (d, n): (usize, usize) = (num(spec, "d", d)?, num(spec, "N", n)?);
            let params = match rest {
                [] => None,
                [ts] => {
                    let q = Field::rationals();
                    Some(ts.split(',').map(|t| q.parse_scalar(t.trim())).collect::<Result<Vec<_>, _>>()?)
                }
                _ => return Err(bad(spec, "expected star:<d>:<N>[:t1,...]")),
            };
            Ok(plain(star(d, n, params)?.with_name(spec)))
        }
        ["punctured", p] => Ok(plain(punctured_plane(num(spec, "p", p)?)?)),
        ["general", s, n, seed] => {
            Ok(plain(general_points(num(spec, "s", s)?, num(spec, "N", n)?, num(spec, "seed", seed)?)?))
        }
        ["coordpts", n] => Ok(plain(coordinate_points(num(spec, "N", n)?, None)?)),
        ["coordpts", n, idx] => Ok(plain(coordinate_points(num(spec, "N", n)?, Some(&list(spec, idx)?))?)),
        ["plane", p, idx] => Ok(plain(plane_subset(num(spec, "p", p)?, &list(spec, idx)?)?)),
        _ => Err(ConfigError::UnknownName(spec.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_example_parses() {
        for e in registry_entries() {
            let b = parse_spec(e.example).unwrap_or_else(|err| panic!("{}: {err}", e.example));
            assert_eq!(b.config.name(), e.example);
        }
    }

    #[test]
    fn specs() {
        assert_eq!(parse_spec("star:3:2").unwrap().config.len(), 3);
        assert_eq!(parse_spec("star:4:2:0,1,-1,1/2").unwrap().config.len(), 6);
        assert_eq!(parse_spec("fermat:3:Fp(7)").unwrap().config.len(), 12);
        assert_eq!(parse_spec("coordpts:2:0").unwrap().config.len(), 1);
        let dh = parse_spec("dual-hesse").unwrap();
        assert_eq!(dh.form.unwrap().total_degree(), Some(9));
        for bad in ["", "hesse", "star:x:2", "fermat:3:QQ", "general:1:2", "coordpts:2:5", "punctured:4"] {
            assert!(parse_spec(bad).is_err(), "{bad}");
        }
    }
}
