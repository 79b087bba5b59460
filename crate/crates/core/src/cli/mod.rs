//! The `containlab` command line.
//!
//! Exit codes: 0 success or containment holds, 1 a reproduction mismatch or internal
//! error, 2 bad arguments, 10 containment fails, 20 budget exceeded.

pub mod manifest;
pub mod reproduce;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::configurations::{parse_spec, registry_entries, Built};
use crate::containment::{
    conjecture_checks, resurgence_search, ConjectureKind, ContainmentError, ContainmentVerdict, Lab, VerdictStatus,
};
use crate::groebner::{Budget, DEFAULT_MAX_PAIRS, DEFAULT_TIMEOUT_SECS, MAX_PAIRS_ENV, TIMEOUT_ENV};
use crate::invariants::{
    alpha, hilbert_function, regularity_0dim, regularity_via_saturation, scaled, scheme_degree, waldschmidt_estimate,
    InvariantError, InvariantReport,
};
use manifest::{manifest_path, write_report, RunManifest};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_FAILS: i32 = 10;
pub const EXIT_BUDGET: i32 = 20;

#[derive(Debug, Parser)]
#[command(name = "containlab", version, about = "Containments between symbolic and ordinary powers of fat point ideals")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Wall-clock limit per Gröbner basis invocation.
    #[arg(long, global = true, env = TIMEOUT_ENV, default_value_t = DEFAULT_TIMEOUT_SECS)]
    timeout_secs: u64,
    /// Cap on processed S-pairs per Gröbner basis invocation.
    #[arg(long, global = true, env = MAX_PAIRS_ENV, default_value_t = DEFAULT_MAX_PAIRS)]
    max_pairs: u64,
    /// Worker threads (default: logical cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Structured output, one JSON object per line.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Browse the configuration registry.
    Config {
        #[command(subcommand)]
        action: ConfigAction,
    },
    /// Decide I^(m) ⊆ M^j·I^r.
    Check(CheckArgs),
    /// Initial degree, Hilbert function, regularity and the Waldschmidt estimate.
    Invariants(InvariantArgs),
    /// Re-derive the catalog of known cases.
    Reproduce(ReproduceArgs),
    /// Scan a window of (m, r) for non-containments.
    Search(SearchArgs),
    /// Re-run the checks recorded in a manifest and compare verdicts.
    Replay {
        manifest: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
enum ConfigAction {
    List,
    Show {
        name: String,
        /// Print only the point list in the import format.
        #[arg(long)]
        export: bool,
    },
}

#[derive(Debug, Args)]
struct CheckArgs {
    #[arg(long)]
    config: String,
    #[arg(long)]
    m: u32,
    #[arg(long)]
    r: u32,
    #[arg(long, default_value_t = 0)]
    j: u32,
}

#[derive(Debug, Args)]
struct InvariantArgs {
    #[arg(long)]
    config: String,
    #[arg(long, conflicts_with = "power")]
    symbolic: Option<u32>,
    #[arg(long)]
    power: Option<u32>,
    /// Comma-separated subset of alpha, hf, reg, waldschmidt.
    #[arg(long, value_delimiter = ',', default_value = "alpha,hf,reg")]
    what: Vec<String>,
    /// Last degree of the Hilbert function (default: the regularity).
    #[arg(long)]
    max_degree: Option<u32>,
    /// Symbolic powers used for the Waldschmidt estimate.
    #[arg(long, default_value_t = 3)]
    m_max: u32,
}

#[derive(Debug, Args)]
struct ReproduceArgs {
    #[arg(long, conflicts_with = "case", required_unless_present = "case")]
    all: bool,
    #[arg(long)]
    case: Option<String>,
}

#[derive(Debug, Args)]
struct SearchArgs {
    #[arg(long)]
    config: String,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    m_max: u32,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    r_max: u32,
    /// Also run the conjectural containments for r ≤ r-max.
    #[arg(long)]
    hahu: bool,
    /// Nested containments I^(j+1) ⊆ M·I^(j) checked with --hahu, for j ≤ this.
    #[arg(long, default_value_t = 1)]
    nested_max: u32,
    /// Report file (one verdict per line); the manifest goes next to it.
    #[arg(long)]
    out: Option<PathBuf>,
}

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
    json: bool,
}

/// Parses `args` (including the program name) and runs the command, returning the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    if let Some(n) = cli.threads {
        // the global pool can only be configured once per process
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    let budget = Budget::new(Some(std::time::Duration::from_secs(cli.timeout_secs)), Some(cli.max_pairs));
    let command_line: Vec<String> = args.iter().map(|a| a.to_string_lossy().into_owned()).collect();
    let mut io = Io { out, err, json: cli.json };
    let result = match cli.command {
        Command::Config { action } => config(&mut io, action),
        Command::Check(a) => check(&mut io, a, budget),
        Command::Invariants(a) => invariants(&mut io, a, budget),
        Command::Reproduce(a) => reproduce(&mut io, a, budget),
        Command::Search(a) => search(&mut io, a, budget, command_line),
        Command::Replay { manifest } => replay(&mut io, manifest),
    };
    match result {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(io.err, "error: {msg}");
            code
        }
    }
}

struct Failure(i32, String);

type CmdResult = Result<i32, Failure>;

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure(EXIT_USAGE, e.to_string())
}

fn internal(e: impl std::fmt::Display) -> Failure {
    Failure(EXIT_ERROR, e.to_string())
}

fn containment_failure(e: ContainmentError) -> Failure {
    match e {
        e if e.is_budget() => Failure(EXIT_BUDGET, e.to_string()),
        ContainmentError::Arguments(m) => Failure(EXIT_USAGE, m),
        e => internal(e),
    }
}

fn build(spec: &str) -> Result<Built, Failure> {
    parse_spec(spec).map_err(usage)
}

fn emit(io: &mut Io, line: impl std::fmt::Display) -> Result<(), Failure> {
    writeln!(io.out, "{line}").map_err(internal)
}

fn emit_json(io: &mut Io, value: &impl serde::Serialize) -> Result<(), Failure> {
    emit(io, serde_json::to_string(value).map_err(internal)?)
}

fn config(io: &mut Io, action: ConfigAction) -> CmdResult {
    match action {
        ConfigAction::List => {
            for e in registry_entries() {
                if io.json {
                    emit_json(
                        io,
                        &serde_json::json!({"pattern": e.pattern, "example": e.example, "description": e.description}),
                    )?;
                } else {
                    emit(io, format!("{:<26} {:<16} {}", e.pattern, e.example, e.description))?;
                }
            }
        }
        ConfigAction::Show { name, export } => {
            let b = build(&name)?;
            if export {
                write!(io.out, "{}", b.config.export()).map_err(internal)?;
            } else {
                show(io, &b)?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn show(io: &mut Io, b: &Built) -> Result<(), Failure> {
    let z = &b.config;
    let field = z.field();
    let fmt_point = |c: &[crate::coefficients::Scalar]| {
        format!("({})", c.iter().map(|s| field.format(s)).collect::<Vec<_>>().join(" : "))
    };
    let incidence: Vec<Vec<usize>> = z
        .points()
        .iter()
        .map(|p| b.arrangement.as_ref().map_or_else(Vec::new, |a| a.lines_through(p.coordinates())))
        .collect();
    let mut by_lines: BTreeMap<usize, usize> = BTreeMap::new();
    if b.arrangement.is_some() {
        for inc in &incidence {
            *by_lines.entry(inc.len()).or_default() += 1;
        }
    }
    let lines: Vec<String> =
        b.arrangement.as_ref().map_or_else(Vec::new, |a| a.lines().iter().map(|l| l.to_string()).collect());
    if io.json {
        let points: Vec<_> = z
            .points()
            .iter()
            .zip(&incidence)
            .map(|(p, inc)| {
                serde_json::json!({"coordinates": fmt_point(p.coordinates()), "multiplicity": p.multiplicity(), "lines": inc})
            })
            .collect();
        return emit_json(
            io,
            &serde_json::json!({
                "config": z.name(), "field": field.descriptor().to_string(), "N": z.dim(),
                "points": points, "lines": lines, "points_by_lines_through": by_lines,
            }),
        );
    }
    emit(io, format!("{} over {} in P^{}", z.name(), field.descriptor(), z.dim()))?;
    emit(io, format!("points: {}", z.len()))?;
    if b.arrangement.is_some() {
        emit(io, format!("lines: {}", lines.len()))?;
        let summary: Vec<String> = by_lines.iter().rev().map(|(k, n)| format!("{n} on {k} lines")).collect();
        emit(io, format!("incidence: {}", summary.join(", ")))?;
    }
    for (i, (p, inc)) in z.points().iter().zip(&incidence).enumerate() {
        let mut line = format!("  p{i:<3} {} ^ {}", fmt_point(p.coordinates()), p.multiplicity());
        if b.arrangement.is_some() {
            line.push_str(&format!("  lines {inc:?}"));
        }
        emit(io, line)?;
    }
    for (i, l) in lines.iter().enumerate() {
        emit(io, format!("  L{i:<3} {l}"))?;
    }
    Ok(())
}

fn verdict_code(v: &ContainmentVerdict) -> i32 {
    match v.status {
        VerdictStatus::Holds => EXIT_OK,
        VerdictStatus::Fails => EXIT_FAILS,
        VerdictStatus::BudgetExceeded => EXIT_BUDGET,
    }
}

fn statement(m: u32, r: u32, j: u32) -> String {
    match j {
        0 => format!("I^({m}) in I^{r}"),
        _ => format!("I^({m}) in M^{j} I^{r}"),
    }
}

fn check(io: &mut Io, a: CheckArgs, budget: Budget) -> CmdResult {
    let b = build(&a.config)?;
    let lab = Lab::new(b.config, budget);
    let v = lab.check(a.m, a.r, a.j).map_err(containment_failure)?;
    if io.json {
        emit_json(io, &v)?;
    } else {
        let outcome = match v.status {
            VerdictStatus::Holds => "holds",
            VerdictStatus::Fails => "FAILS",
            VerdictStatus::BudgetExceeded => "undecided (budget exceeded)",
        };
        emit(io, format!("{} over {}, N = {}: {} {outcome}", v.config, v.field, v.n, statement(v.m, v.r, v.j)))?;
        if let (Some(d), Some(w)) = (v.witness_degree, &v.witness) {
            emit(io, format!("witness of degree {d}: {w}"))?;
        }
        let tags: Vec<String> = v.guarantees.iter().map(|g| format!("{g:?}").to_lowercase()).collect();
        if !tags.is_empty() {
            emit(io, format!("predicted by: {}", tags.join(", ")))?;
        }
        emit(io, format!("elapsed: {} ms", v.elapsed_ms))?;
    }
    Ok(verdict_code(&v))
}

fn invariants(io: &mut Io, a: InvariantArgs, budget: Budget) -> CmdResult {
    const KNOWN: [&str; 4] = ["alpha", "hf", "reg", "waldschmidt"];
    let what: Vec<String> = a.what.iter().map(|w| w.trim().to_lowercase()).collect();
    if let Some(w) = what.iter().find(|w| !KNOWN.contains(&w.as_str())) {
        return Err(usage(format!("unknown invariant '{w}', expected a subset of {}", KNOWN.join(","))));
    }
    let wants = |k: &str| what.iter().any(|w| w == k);
    let b = build(&a.config)?;
    let z = b.config;
    let lab = Lab::new(z.clone(), budget.clone());
    let (label, scale) = match (a.symbolic, a.power) {
        (Some(m), _) => (format!("I^({m})"), m),
        (None, Some(r)) => (format!("I^{r}"), r),
        (None, None) => ("I".to_string(), 1),
    };
    if scale == 0 {
        return Err(usage("powers must be positive"));
    }
    let ideal = match (a.symbolic, a.power) {
        (_, Some(r)) => lab.target(r, 0),
        _ => lab.symbolic_power(scale),
    };
    let mut report = InvariantReport {
        config: z.name().to_string(),
        symbolic: a.symbolic,
        power: a.power,
        alpha: None,
        hilbert_function: BTreeMap::new(),
        scheme_degree: scheme_degree(&scaled(&z, scale)),
        regularity: None,
        waldschmidt_estimate: None,
        notes: Vec::new(),
    };
    let mut budget_hit = false;
    let mut note = |report: &mut InvariantReport, what: &str, e: InvariantError| -> Result<(), Failure> {
        let budget_error = matches!(
            &e,
            InvariantError::Ideal(crate::ideals::IdealError::Groebner(crate::groebner::GroebnerError::Budget(_)))
        );
        if !budget_error && !matches!(e, InvariantError::NotSaturated(_) | InvariantError::NotDegreeCompatible(_)) {
            return Err(internal(e));
        }
        budget_hit |= budget_error;
        report.notes.push(format!("{what}: {e}"));
        Ok(())
    };
    match ideal {
        Err(e) => note(&mut report, "ideal", InvariantError::Ideal(e))?,
        Ok(ideal) => {
            let q = budget.restart();
            if wants("alpha") {
                match alpha(&ideal, &q) {
                    Ok(v) => report.alpha = Some(v),
                    Err(e) => note(&mut report, "alpha", e)?,
                }
            }
            let reg = if wants("reg") || (wants("hf") && a.max_degree.is_none()) {
                let r = match a.power {
                    Some(r) => lab.symbolic_power(r).map_err(InvariantError::Ideal).and_then(|sat| {
                        regularity_via_saturation(&ideal, &sat, &scaled(&z, r), &q)
                    }),
                    None => regularity_0dim(&ideal, &scaled(&z, scale), &q),
                };
                match r {
                    Ok(v) => Some(v),
                    Err(e) => {
                        note(&mut report, "reg", e)?;
                        None
                    }
                }
            } else {
                None
            };
            if wants("reg") {
                report.regularity = reg;
            }
            if wants("hf") {
                if let Some(top) = a.max_degree.or(reg) {
                    for d in 0..=top {
                        match hilbert_function(&ideal, d, &q) {
                            Ok(v) => {
                                report.hilbert_function.insert(d, v);
                            }
                            Err(e) => {
                                note(&mut report, "hf", e)?;
                                break;
                            }
                        }
                    }
                }
            }
        }
    }
    if wants("waldschmidt") {
        match waldschmidt_estimate(&z, a.m_max.max(1), &budget.restart()) {
            Ok(q) => report.waldschmidt_estimate = Some(q.to_string()),
            Err(e) => note(&mut report, "waldschmidt", e)?,
        }
    }
    if io.json {
        emit_json(io, &report)?;
    } else {
        emit(io, format!("{} over {}: {label}", report.config, z.field().descriptor()))?;
        if let Some(v) = report.alpha {
            emit(io, format!("alpha({label}) = {v}"))?;
        }
        if !report.hilbert_function.is_empty() {
            let hf: Vec<String> = report.hilbert_function.values().map(|v| v.to_string()).collect();
            emit(io, format!("HF(R/{label}, 0..) = [{}]", hf.join(", ")))?;
            emit(io, format!("degree of the scheme = {}", report.scheme_degree))?;
        }
        if let Some(v) = report.regularity {
            emit(io, format!("reg({label}) = {v}"))?;
        }
        if let Some(w) = &report.waldschmidt_estimate {
            emit(io, format!("Waldschmidt estimate (min alpha(I^(m))/m, m <= {}) = {w}", a.m_max.max(1)))?;
        }
        for n in &report.notes {
            emit(io, format!("note: {n}"))?;
        }
    }
    Ok(if budget_hit { EXIT_BUDGET } else { EXIT_OK })
}

fn reproduce(io: &mut Io, a: ReproduceArgs, budget: Budget) -> CmdResult {
    let cases: Vec<&reproduce::Case> = match &a.case {
        Some(name) => vec![reproduce::find(name).ok_or_else(|| {
            let names: Vec<&str> = reproduce::cases().iter().map(|c| c.name).collect();
            usage(format!("unknown case '{name}', expected one of {}", names.join(", ")))
        })?],
        None => reproduce::cases().iter().collect(),
    };
    let outcomes = reproduce::run_cases(&cases, &budget);
    let all_passed = outcomes.iter().all(|o| o.passed());
    if io.json {
        for o in &outcomes {
            emit_json(io, &serde_json::json!({"case": o.case, "passed": o.passed(), "outcome": o}))?;
        }
    } else {
        emit(io, format!("{:<16} {:<16} {:<18} {:>9}  {}", "case", "config", "statement", "ms", "result"))?;
        for o in &outcomes {
            let result = if o.passed() { "PASS" } else { "FAIL" };
            emit(io, format!("{:<16} {:<16} {:<18} {:>9}  {result}", o.case, o.config, o.statement, o.elapsed_ms))?;
        }
        for o in outcomes.iter().filter(|o| !o.passed()) {
            emit(io, format!("\n{}:", o.case))?;
            for e in o.expectations.iter().filter(|e| !e.matched) {
                emit(io, format!("  {}: expected {}, observed {}", e.what, e.expected, e.observed))?;
            }
        }
        let passed = outcomes.iter().filter(|o| o.passed()).count();
        emit(io, format!("{passed}/{} cases passed", outcomes.len()))?;
    }
    Ok(if all_passed { EXIT_OK } else { EXIT_ERROR })
}

fn search(io: &mut Io, a: SearchArgs, budget: Budget, command_line: Vec<String>) -> CmdResult {
    let b = build(&a.config)?;
    let lab = Lab::new(b.config, budget.clone());
    let est = resurgence_search(&lab, a.m_max, a.r_max).map_err(containment_failure)?;
    let conj = if a.hahu { Some(conjecture_checks(&lab, a.r_max, a.nested_max).map_err(containment_failure)?) } else { None };
    let mut manifest = RunManifest::new(command_line, &a.config, &budget);
    manifest.results = est.verdicts.clone();
    if let Some(c) = &conj {
        manifest.conjectures = c.items.iter().map(|i| serde_json::to_value(i).expect("serializes")).collect();
    }
    if let Some(out) = &a.out {
        manifest::write(out, &write_report(&est.verdicts)).map_err(internal)?;
        manifest.save(&manifest_path(out)).map_err(internal)?;
    }
    if io.json {
        for v in &est.verdicts {
            emit_json(io, v)?;
        }
        emit_json(
            io,
            &serde_json::json!({
                "config": est.config, "m_max": est.m_max, "r_max": est.r_max, "violations": est.violations,
                "lower_bound": est.lower_bound, "partial": est.partial,
            }),
        )?;
        if let Some(c) = &conj {
            emit_json(io, c)?;
        }
    } else {
        emit(io, format!("{}: window m <= {}, r <= {}", est.config, est.m_max, est.r_max))?;
        for v in &est.verdicts {
            let s = match v.status {
                VerdictStatus::Holds => "holds".to_string(),
                VerdictStatus::Fails => format!("FAILS (witness degree {})", v.witness_degree.unwrap_or(0)),
                VerdictStatus::BudgetExceeded => "budget exceeded".to_string(),
            };
            emit(io, format!("  {:<16} {s}", statement(v.m, v.r, v.j)))?;
        }
        emit(io, format!("violations: {}", est.violations.len()))?;
        emit(io, est.note.clone())?;
        if est.partial {
            emit(io, "partial: some cells ran out of budget")?;
        }
        if let Some(c) = &conj {
            for i in &c.items {
                let verified = match i.triple_verified {
                    Some(true) => ", triple-verified: potential research finding",
                    Some(false) => ", NOT confirmed by the independent checks",
                    None => "",
                };
                let what = match i.kind {
                    ConjectureKind::Nested => format!("I^({}) in M I^({})", i.m, i.r),
                    _ => statement(i.m, i.r, i.j),
                };
                emit(io, format!("  {:?} {what} -> {:?}{verified}", i.kind, i.status))?;
            }
        }
        if let Some(out) = &a.out {
            emit(io, format!("wrote {} and {}", out.display(), manifest_path(out).display()))?;
        }
    }
    let budget_hit = est.partial || conj.as_ref().is_some_and(|c| c.items.iter().any(|i| i.status == VerdictStatus::BudgetExceeded));
    let conjecture_failed = conj.as_ref().is_some_and(|c| !c.failures().is_empty());
    Ok(if conjecture_failed {
        EXIT_FAILS
    } else if budget_hit {
        EXIT_BUDGET
    } else {
        EXIT_OK
    })
}

/// Verdicts agree when everything but the timing matches; a withheld verdict on either
/// side is inconclusive rather than a disagreement.
fn same_verdict(a: &ContainmentVerdict, b: &ContainmentVerdict) -> Option<bool> {
    if a.status == VerdictStatus::BudgetExceeded || b.status == VerdictStatus::BudgetExceeded {
        return None;
    }
    Some(ContainmentVerdict { elapsed_ms: 0, ..a.clone() } == ContainmentVerdict { elapsed_ms: 0, ..b.clone() })
}

fn replay(io: &mut Io, path: PathBuf) -> CmdResult {
    let m = RunManifest::load(&path).map_err(usage)?;
    let b = build(&m.config_spec)?;
    let lab = Lab::new(b.config, m.budgets.budget());
    let (mut agree, mut differ, mut inconclusive) = (0, 0, 0);
    for old in &m.results {
        let new = lab.check(old.m, old.r, old.j).map_err(containment_failure)?;
        match same_verdict(old, &new) {
            Some(true) => agree += 1,
            Some(false) => {
                differ += 1;
                emit(io, format!("differs at {}: recorded {:?}, now {:?}", statement(old.m, old.r, old.j), old, new))?;
            }
            None => inconclusive += 1,
        }
    }
    if io.json {
        emit_json(io, &serde_json::json!({"agree": agree, "differ": differ, "inconclusive": inconclusive}))?;
    } else {
        emit(io, format!("{agree} verdicts reproduced, {differ} differ, {inconclusive} inconclusive"))?;
    }
    Ok(if differ > 0 { EXIT_ERROR } else { EXIT_OK })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("containlab").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn parse_errors_exit_2() {
        assert_eq!(run_args(&["check", "--config", "nowhere", "--m", "3", "--r", "2"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["check", "--config", "dual-hesse", "--m", "x", "--r", "2"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["invariants", "--config", "dual-hesse", "--what", "beta"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["check", "--config", "dual-hesse", "--m", "0", "--r", "2"]).0, EXIT_USAGE);
    }

    #[test]
    fn help_is_not_an_error() {
        let (code, out, _) = run_args(&["--help"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("reproduce"));
    }

    #[test]
    fn show_counts() {
        let (code, out, _) = run_args(&["config", "show", "star:3:2"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("points: 3"), "{out}");
        let (_, out, _) = run_args(&["config", "show", "dual-hesse"]);
        assert!(out.contains("points: 12") && out.contains("lines: 9") && out.contains("12 on 3 lines"), "{out}");
    }

    #[test]
    fn check_exit_codes() {
        assert_eq!(run_args(&["check", "--config", "star:3:2", "--m", "4", "--r", "2"]).0, EXIT_OK);
        // xyz vanishes doubly at all three points but I^2 starts in degree 4
        assert_eq!(run_args(&["check", "--config", "star:3:2", "--m", "2", "--r", "2"]).0, EXIT_FAILS);
        assert_eq!(run_args(&["check", "--config", "coordpts:2", "--m", "1", "--r", "2"]).0, EXIT_FAILS);
        assert_eq!(run_args(&["--max-pairs", "0", "check", "--config", "dual-hesse", "--m", "3", "--r", "2"]).0, EXIT_BUDGET);
    }

    #[test]
    fn withheld_verdicts_do_not_disagree() {
        let v = ContainmentVerdict {
            config: "c".into(),
            field: "QQ".into(),
            n: 2,
            m: 2,
            r: 1,
            j: 0,
            holds: Some(true),
            witness_degree: None,
            witness: None,
            guarantees: vec![],
            elapsed_ms: 3,
            status: VerdictStatus::Holds,
        };
        assert_eq!(same_verdict(&v, &ContainmentVerdict { elapsed_ms: 9, ..v.clone() }), Some(true));
        assert_eq!(same_verdict(&v, &ContainmentVerdict { holds: Some(false), ..v.clone() }), Some(false));
        let withheld = ContainmentVerdict { status: VerdictStatus::BudgetExceeded, holds: None, ..v.clone() };
        assert_eq!(same_verdict(&v, &withheld), None);
    }
}
