//! Golden cases: known containments and non-containments, each with the concrete facts
//! that identify it, re-derived from scratch on every run.

use std::fmt::Display;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::configurations::{klein_f7, parse_spec, Built};
use crate::containment::{ContainmentError, Guarantee, Lab, VerdictStatus};
use crate::groebner::Budget;
use crate::oracle::symbolic_piece_dim;

#[derive(Debug, Clone, Serialize)]
pub struct Expectation {
    pub what: String,
    pub expected: String,
    pub observed: String,
    pub matched: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CaseOutcome {
    pub case: String,
    pub config: String,
    pub statement: String,
    pub expectations: Vec<Expectation>,
    pub elapsed_ms: u64,
}

impl CaseOutcome {
    pub fn passed(&self) -> bool {
        !self.expectations.is_empty() && self.expectations.iter().all(|e| e.matched)
    }
}

pub struct Case {
    pub name: &'static str,
    pub config: &'static str,
    pub statement: &'static str,
    run: fn(&Built, &Lab) -> Vec<Expectation>,
}

fn expect<T: Display, U: Display>(what: &str, expected: T, observed: Result<U, ContainmentError>) -> Expectation {
    let expected = expected.to_string();
    let observed = match observed {
        Ok(o) => o.to_string(),
        Err(e) if e.is_budget() => "budget exceeded".to_string(),
        Err(e) => format!("error: {e}"),
    };
    Expectation { what: what.to_string(), matched: expected == observed, expected, observed }
}

fn status_word(s: VerdictStatus) -> &'static str {
    match s {
        VerdictStatus::Holds => "holds",
        VerdictStatus::Fails => "fails",
        VerdictStatus::BudgetExceeded => "budget exceeded",
    }
}

/// The verdict of `I^(m) ⊆ I^r`, plus the witness degree when one is expected.
fn containment(lab: &Lab, m: u32, r: u32, holds: bool, witness_degree: Option<u32>) -> Vec<Expectation> {
    let v = lab.check(m, r, 0);
    let mut out =
        vec![expect(&format!("I^({m}) in I^{r}"), if holds { "holds" } else { "fails" }, v.clone().map(|v| status_word(v.status)))];
    if let Some(d) = witness_degree {
        let deg = v.map(|v| v.witness_degree.map_or("none".to_string(), |d| d.to_string()));
        out.push(expect("witness degree", d, deg));
    }
    out
}

/// Membership of the distinguished form in `I^(m)` and in `I^r`.
fn form_memberships(built: &Built, lab: &Lab, m: u32, r: u32) -> Vec<Expectation> {
    let Some(f) = &built.form else {
        return vec![expect("distinguished form", "present", Ok::<_, ContainmentError>("absent"))];
    };
    let budget = lab.budget().restart();
    let in_sym = lab.symbolic_power(m).and_then(|i| i.is_member(f, &budget)).map_err(ContainmentError::from);
    let in_pow = lab.target(r, 0).and_then(|i| i.is_member(f, &budget)).map_err(ContainmentError::from);
    vec![
        expect(&format!("form of degree {} in I^({m})", f.total_degree().unwrap_or(0)), true, in_sym),
        expect(&format!("form in I^{r}"), false, in_pow),
    ]
}

fn counts(built: &Built, k: usize) -> Result<usize, ContainmentError> {
    let a = built.arrangement.as_ref().ok_or_else(|| ContainmentError::Arguments("no line arrangement".into()))?;
    Ok(a.multiplicity_counts().get(&k).copied().unwrap_or(0))
}

fn ok<T>(t: T) -> Result<T, ContainmentError> {
    Ok(t)
}

fn dual_hesse(b: &Built, lab: &Lab) -> Vec<Expectation> {
    let mut out = vec![
        expect("points", 12, ok(b.config.len())),
        expect("lines", 9, ok(b.arrangement.as_ref().map_or(0, |a| a.lines().len()))),
        expect("triple points", 12, counts(b, 3)),
    ];
    out.extend(form_memberships(b, lab, 3, 2));
    out.extend(containment(lab, 3, 2, false, Some(9)));
    out
}

fn dual_hesse_els(_: &Built, lab: &Lab) -> Vec<Expectation> {
    let mut out = containment(lab, 4, 2, true, None);
    let tags = lab.check(4, 2, 0).map(|v| v.guarantees.contains(&Guarantee::Els));
    out.push(expect("predicted by m >= N r", true, tags));
    out
}

fn fermat(b: &Built, lab: &Lab) -> Vec<Expectation> {
    let mut out = form_memberships(b, lab, 3, 2);
    out.extend(containment(lab, 3, 2, false, None));
    out
}

fn fermat_4(b: &Built, lab: &Lab) -> Vec<Expectation> {
    let mut out = vec![expect("points", 19, ok(b.config.len()))];
    out.extend(fermat(b, lab));
    out
}

fn fermat_3_f7(b: &Built, lab: &Lab) -> Vec<Expectation> {
    let mut out = vec![expect("points", 12, ok(b.config.len()))];
    out.extend(fermat(b, lab));
    out
}

fn punctured_3(b: &Built, lab: &Lab) -> Vec<Expectation> {
    let mut out = vec![expect("points", 12, ok(b.config.len()))];
    out.push(expect("forms of degree 9 in I^(3) (interpolation)", "nonzero", ok(match symbolic_piece_dim(&b.config, 3, 9) {
        0 => "zero",
        _ => "nonzero",
    })));
    out.extend(containment(lab, 3, 2, false, None));
    out
}

fn klein(b: &Built, lab: &Lab) -> Vec<Expectation> {
    let k = klein_f7().map_err(|e| ContainmentError::Arguments(e.to_string()));
    let mut out = vec![
        expect("lines missing the conic", 21, k.as_ref().map(|k| k.external_lines).map_err(Clone::clone)),
        expect("tangent lines", 8, k.as_ref().map(|k| k.tangent_lines).map_err(Clone::clone)),
        expect("quadruple points", 21, counts(b, 4)),
        expect("triple points", 28, counts(b, 3)),
    ];
    out.extend(containment(lab, 3, 2, false, None));
    out
}

fn boroczky(b: &Built, lab: &Lab) -> Vec<Expectation> {
    let mut out = vec![expect("triple points", 19, counts(b, 3))];
    let budget = lab.budget().restart();
    let product = b.form.clone().unwrap_or_else(|| b.config.ring().zero());
    let member = lab.symbolic_power(3).and_then(|i| i.is_member(&product, &budget)).map_err(ContainmentError::from);
    out.push(expect("product of the 12 lines in I^(3)", true, member));
    out.extend(containment(lab, 3, 2, false, None));
    out
}

fn star(_: &Built, lab: &Lab) -> Vec<Expectation> {
    let mut out = containment(lab, 3, 2, true, None);
    let consistent = lab.postulation(3, 2, false).and_then(|p| {
        let v = lab.check(3, 2, 0)?;
        Ok(!p.guaranteed || v.holds == Some(true))
    });
    out.push(expect("postulation criterion consistent", true, consistent));
    out
}

/// All cases, sorted by name.
pub fn cases() -> &'static [Case] {
    &[
        Case { name: "boroczky12", config: "boroczky12", statement: "I^(3) not in I^2", run: boroczky },
        Case { name: "dual-hesse", config: "dual-hesse", statement: "I^(3) not in I^2", run: dual_hesse },
        Case { name: "dual-hesse-els", config: "dual-hesse", statement: "I^(4) in I^2", run: dual_hesse_els },
        Case { name: "fermat-3-f7", config: "fermat:3:Fp(7)", statement: "I^(3) not in I^2", run: fermat_3_f7 },
        Case { name: "fermat-4", config: "fermat:4", statement: "I^(3) not in I^2", run: fermat_4 },
        Case { name: "klein-f7", config: "klein-f7", statement: "I^(3) not in I^2", run: klein },
        Case { name: "punctured-3", config: "punctured:3", statement: "I^(3) not in I^2", run: punctured_3 },
        Case { name: "star-4", config: "star:4:2", statement: "I^(3) in I^2", run: star },
        Case { name: "star-5", config: "star:5:2", statement: "I^(3) in I^2", run: star },
    ]
}

pub fn find(name: &str) -> Option<&'static Case> {
    cases().iter().find(|c| c.name == name)
}

pub fn run_case(case: &Case, budget: &Budget) -> CaseOutcome {
    let start = Instant::now();
    let expectations = match parse_spec(case.config) {
        Ok(built) => {
            let lab = Lab::new(built.config.clone(), budget.clone());
            (case.run)(&built, &lab)
        }
        Err(e) => vec![expect("configuration", case.config, Err::<String, _>(ContainmentError::Arguments(e.to_string())))],
    };
    CaseOutcome {
        case: case.name.to_string(),
        config: case.config.to_string(),
        statement: case.statement.to_string(),
        expectations,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

/// Runs the cases concurrently; the result is in the order given.
pub fn run_cases(cases: &[&Case], budget: &Budget) -> Vec<CaseOutcome> {
    let mut out: Vec<CaseOutcome> = cases.par_iter().map(|c| run_case(c, budget)).collect();
    out.sort_by(|a, b| a.case.cmp(&b.case));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn case_names_are_sorted_and_unique() {
        let names: Vec<&str> = cases().iter().map(|c| c.name).collect();
        let mut sorted = names.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(names, sorted);
        assert!(names.len() >= 6);
        assert!(find("fermat-4").is_some() && find("nope").is_none());
    }

    #[test]
    fn every_case_config_parses() {
        for c in cases() {
            assert!(parse_spec(c.config).is_ok(), "{}", c.config);
        }
    }

    #[test]
    fn small_cases_pass() {
        for name in ["dual-hesse", "fermat-3-f7", "star-4"] {
            let o = run_case(find(name).unwrap(), &Budget::unlimited());
            assert!(o.passed(), "{o:?}");
        }
    }

    #[test]
    fn mismatches_are_reported() {
        let e = expect("x", 1, ok(2));
        assert!(!e.matched);
        assert_eq!((e.expected.as_str(), e.observed.as_str()), ("1", "2"));
        let empty = CaseOutcome {
            case: "c".into(),
            config: "c".into(),
            statement: String::new(),
            expectations: vec![],
            elapsed_ms: 0,
        };
        assert!(!empty.passed());
    }
}
