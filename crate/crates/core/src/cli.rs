//! Command-line front end.
//!
//! Exit status: 0 on success, 2 when a hypothesis fails or a benchmark finds
//! violations, 1 on malformed input or any other error.

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::bounds::{certify, equality_holds, BoundReport};
use crate::error::Error;
use crate::function::{GridFunction, Interval};
use crate::hilbert::ComplexVec;
use crate::hypotheses::{check, ConditionReport, Hypothesis, DEFAULT_CHECK_TOL};
use crate::quadrature::{integrate, refine_until, QuadKind, QuadratureRule};
use crate::report::{document, SCHEMA};
use crate::witness::{make_witness, tightness, GeneratorSpec, TightnessStats, WitnessSpec, EQUALITY_TOL};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MALFORMED: i32 = 1;
pub const EXIT_FAILED: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "bochner-bounds",
    version,
    about = "Certify reverse triangle inequalities for sampled vector-valued functions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a pointwise hypothesis on a function
    Check(CommonArgs),
    /// Certify the lower bound on ||∫ f|| and test the equality case
    Certify(CommonArgs),
    /// Build a constant equality-case witness, ready for `certify`
    Witness(CommonArgs),
    /// Run a seeded tightness benchmark
    Bench(CommonArgs),
    /// Integrate f and ||f||
    Integrate(CommonArgs),
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Input JSON document
    #[arg(long)]
    pub input: PathBuf,
    /// Output path; `-` is standard output, a `.csv` suffix selects CSV
    #[arg(long, default_value = "-")]
    pub output: String,
    /// Absolute tolerance on pointwise slack
    #[arg(long, default_value_t = DEFAULT_CHECK_TOL)]
    pub tol: f64,
    /// Quadrature rule: simpson or trapezoid
    #[arg(long, default_value = "simpson")]
    pub quad_kind: QuadKind,
    /// Subdivisions per node interval
    #[arg(long, default_value_t = 8)]
    pub quad_refine: usize,
    /// Refine until successive estimates agree to this (integrate only)
    #[arg(long)]
    pub quad_tol: Option<f64>,
    /// Seed for all randomness (bench only)
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of benchmark trials (bench only)
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    /// Print an aligned table instead of JSON (certify only)
    #[arg(long)]
    pub table: bool,
}

/// Everything a single invocation needs, independent of argument parsing.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: CommandKind,
    pub input: PathBuf,
    pub output: Option<PathBuf>,
    pub quad: QuadratureRule,
    /// Set when refinement should continue to a tolerance.
    pub quad_tol: Option<f64>,
    pub tol: f64,
    pub seed: u64,
    pub trials: usize,
    pub table: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Check,
    Certify,
    Witness,
    Bench,
    Integrate,
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self, Error> {
        let (command, a) = match cli.command {
            Command::Check(a) => (CommandKind::Check, a),
            Command::Certify(a) => (CommandKind::Certify, a),
            Command::Witness(a) => (CommandKind::Witness, a),
            Command::Bench(a) => (CommandKind::Bench, a),
            Command::Integrate(a) => (CommandKind::Integrate, a),
        };
        if !(a.tol > 0.0) {
            return Err(Error::InvalidParameter {
                field: "tol".into(),
                reason: format!("must be > 0, got {}", a.tol),
            });
        }
        if a.trials == 0 {
            return Err(Error::InvalidParameter {
                field: "trials".into(),
                reason: "must be >= 1".into(),
            });
        }
        let mut quad = QuadratureRule {
            kind: a.quad_kind,
            refinement: a.quad_refine,
            ..Default::default()
        };
        if let Some(t) = a.quad_tol {
            quad.tol = t;
        }
        quad.validate()?;
        Ok(RunConfig {
            command,
            input: a.input,
            output: (a.output != "-").then(|| PathBuf::from(a.output)),
            quad,
            quad_tol: a.quad_tol,
            tol: a.tol,
            seed: a.seed,
            trials: a.trials,
            table: a.table,
        })
    }

    fn csv(&self) -> bool {
        self.output
            .as_deref()
            .and_then(Path::extension)
            .is_some_and(|e| e.eq_ignore_ascii_case("csv"))
    }
}

/// Input document for every subcommand; which fields are required depends
/// on the command.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct InputDoc {
    schema: Option<String>,
    function: Option<GridFunction>,
    hypothesis: Option<Hypothesis>,
    hypotheses: Option<Vec<Hypothesis>>,
    interval: Option<Interval>,
    node_count: Option<usize>,
    generator: Option<GeneratorSpec>,
    nodes: Option<usize>,
}

/// A finished run: the rendered report and the exit status.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub text: String,
    pub status: i32,
}

#[derive(Debug)]
pub struct CliError(pub String);

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError(e.to_string())
    }
}

fn missing(field: &str) -> CliError {
    CliError(format!("input is missing `{field}`"))
}

fn hypotheses(doc: &mut InputDoc) -> Result<Vec<Hypothesis>, CliError> {
    match (doc.hypothesis.take(), doc.hypotheses.take()) {
        (Some(_), Some(_)) => Err(CliError(
            "input has both `hypothesis` and `hypotheses`".into(),
        )),
        (Some(h), None) => Ok(vec![h]),
        (None, Some(hs)) if !hs.is_empty() => Ok(hs),
        (None, Some(_)) => Err(CliError("`hypotheses` is empty".into())),
        (None, None) => Err(missing("hypothesis")),
    }
}

fn parse_input(text: &str) -> Result<InputDoc, CliError> {
    let doc: InputDoc = serde_json::from_str(text)?;
    if let Some(s) = &doc.schema {
        if s != SCHEMA {
            return Err(CliError(format!("unsupported schema `{s}`, expected `{SCHEMA}`")));
        }
    }
    Ok(doc)
}

#[derive(Serialize)]
struct CheckOut<'a> {
    hypothesis: &'static str,
    #[serde(flatten)]
    report: &'a ConditionReport,
}

#[derive(Serialize)]
struct Many<'a, T> {
    reports: &'a [T],
}

#[derive(Serialize)]
struct WitnessOut<'a> {
    function: &'a GridFunction,
    hypothesis: &'a Hypothesis,
}

#[derive(Serialize)]
struct IntegrateOut {
    integral: ComplexVec,
    norm_integral: f64,
    true_norm: f64,
    rule: QuadratureRule,
    refinement: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    achieved_tol: Option<f64>,
}

fn one_or_many<T: Serialize>(items: &[T], single: impl Fn(&T) -> serde_json::Result<String>) -> Result<String, CliError> {
    Ok(if items.len() == 1 {
        single(&items[0])?
    } else {
        document(&Many { reports: items })?
    })
}

fn equality_cell(r: &BoundReport) -> &'static str {
    match equality_holds(r, EQUALITY_TOL) {
        Ok(true) => "yes",
        Ok(false) => "no",
        Err(_) => "n/a",
    }
}

/// Aligned plain-text table, one row per report, ordered by hypothesis tag
/// and then by coefficient, largest first.
pub fn render_table(reports: &[BoundReport]) -> crate::Result<String> {
    if reports.is_empty() {
        return Err(Error::EmptyTable);
    }
    let mut sorted: Vec<&BoundReport> = reports.iter().collect();
    sorted.sort_by(|a, b| {
        a.hypothesis
            .cmp(&b.hypothesis)
            .then(b.coefficient.total_cmp(&a.coefficient))
    });
    let header = ["hypothesis", "coefficient", "lower_bound", "true_norm", "gap", "equality"];
    let rows: Vec<[String; 6]> = sorted
        .iter()
        .map(|r| {
            [
                r.hypothesis.clone(),
                format!("{:.9}", r.coefficient),
                format!("{:.9}", r.lower_bound),
                format!("{:.9}", r.true_norm),
                format!("{:.3e}", r.gap),
                equality_cell(r).to_string(),
            ]
        })
        .collect();
    let mut width = header.map(str::len);
    for row in &rows {
        for (w, cell) in width.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let mut line = |cells: &[&str]| {
        let parts: Vec<String> = cells
            .iter()
            .zip(width)
            .enumerate()
            .map(|(i, (c, w))| if i == 0 { format!("{c:<w$}") } else { format!("{c:>w$}") })
            .collect();
        let _ = writeln!(out, "{}", parts.join("  ").trim_end());
    };
    line(&header);
    for row in &rows {
        line(&row.iter().map(String::as_str).collect::<Vec<_>>());
    }
    Ok(out)
}

fn certify_csv(reports: &[BoundReport]) -> String {
    let mut s = String::from(
        "hypothesis,coefficient,lower_bound,norm_integral,true_norm,gap,equality_residual,hypothesis_verified\n",
    );
    for r in reports {
        let res = r.equality_residual.map(|x| format!("{x:.16e}")).unwrap_or_default();
        let _ = writeln!(
            s,
            "{},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{},{}",
            r.hypothesis, r.coefficient, r.lower_bound, r.norm_integral, r.true_norm, r.gap, res, r.hypothesis_verified
        );
    }
    s
}

fn check_csv(rows: &[(&'static str, ConditionReport)]) -> String {
    let mut s = String::from("hypothesis,holds,worst_t,worst_margin,checked_points\n");
    for (tag, r) in rows {
        let _ = writeln!(
            s,
            "{tag},{},{:.16e},{:.16e},{}",
            r.holds, r.worst_t, r.worst_margin, r.checked_points
        );
    }
    s
}

fn function_csv(f: &GridFunction) -> String {
    let mut s = String::from("t");
    for j in 0..f.dim() {
        let _ = write!(s, ",re{j},im{j}");
    }
    s.push('\n');
    for (t, v) in f.nodes().iter().zip(f.values()) {
        let _ = write!(s, "{t:.16e}");
        for z in v.entries() {
            let _ = write!(s, ",{:.16e},{:.16e}", z.re, z.im);
        }
        s.push('\n');
    }
    s
}

/// Runs one command on its already-read input text.
pub fn execute(cfg: &RunConfig, input: &str) -> Result<Outcome, CliError> {
    let mut doc = parse_input(input)?;
    let csv = cfg.csv();
    match cfg.command {
        CommandKind::Check => {
            let f = doc.function.take().ok_or_else(|| missing("function"))?;
            let rows = hypotheses(&mut doc)?
                .iter()
                .map(|h| Ok((h.tag(), check(&f, h, cfg.tol)?)))
                .collect::<Result<Vec<_>, Error>>()?;
            let ok = rows.iter().all(|(_, r)| r.holds);
            let text = if csv {
                check_csv(&rows)
            } else {
                let outs: Vec<CheckOut> = rows
                    .iter()
                    .map(|(tag, report)| CheckOut { hypothesis: tag, report })
                    .collect();
                one_or_many(&outs, document)?
            };
            Ok(Outcome { text, status: if ok { EXIT_OK } else { EXIT_FAILED } })
        }
        CommandKind::Certify => {
            let f = doc.function.take().ok_or_else(|| missing("function"))?;
            let reports = hypotheses(&mut doc)?
                .iter()
                .map(|h| certify(&f, h, &cfg.quad, cfg.tol))
                .collect::<Result<Vec<_>, Error>>()?;
            let ok = reports.iter().all(|r| r.hypothesis_verified);
            let text = if csv {
                certify_csv(&reports)
            } else if cfg.table {
                render_table(&reports)?
            } else {
                one_or_many(&reports, document)?
            };
            Ok(Outcome { text, status: if ok { EXIT_OK } else { EXIT_FAILED } })
        }
        CommandKind::Witness => {
            let h = doc.hypothesis.take().ok_or_else(|| missing("hypothesis"))?;
            let mut spec = WitnessSpec::new(h);
            if let Some(iv) = doc.interval {
                spec.interval = iv;
            }
            if let Some(n) = doc.node_count {
                spec.node_count = n;
            }
            let f = make_witness(&spec)?;
            let text = if csv {
                function_csv(&f)
            } else {
                document(&WitnessOut { function: &f, hypothesis: &spec.hypothesis })?
            };
            Ok(Outcome { text, status: EXIT_OK })
        }
        CommandKind::Bench => {
            let h = doc.hypothesis.take().ok_or_else(|| missing("hypothesis"))?;
            let mut g = doc.generator.take().unwrap_or_else(|| GeneratorSpec::matching(h.clone()));
            if let Some(n) = doc.nodes {
                g.nodes = n;
            }
            let stats: TightnessStats = tightness(cfg.trials, &g, &h, &cfg.quad, cfg.seed)?;
            let text = if csv {
                format!("{}\n{}\n", TightnessStats::CSV_HEADER, stats.csv_record())
            } else {
                document(&stats)?
            };
            let status = if stats.violations > 0 { EXIT_FAILED } else { EXIT_OK };
            Ok(Outcome { text, status })
        }
        CommandKind::Integrate => {
            let f = doc.function.take().ok_or_else(|| missing("function"))?;
            let (ints, refinement, achieved_tol) = match cfg.quad_tol {
                Some(_) => {
                    let r = refine_until(&f, &cfg.quad)?;
                    (r.integrals, r.refinement, Some(r.achieved_tol))
                }
                None => (integrate(&f, &cfg.quad)?, cfg.quad.effective_refinement(&f), None),
            };
            let out = IntegrateOut {
                true_norm: ints.vector.norm(),
                integral: ints.vector,
                norm_integral: ints.norm,
                rule: cfg.quad,
                refinement,
                achieved_tol,
            };
            let text = if csv {
                let mut s = String::from("quantity,re,im\n");
                for (j, z) in out.integral.entries().iter().enumerate() {
                    let _ = writeln!(s, "integral[{j}],{:.16e},{:.16e}", z.re, z.im);
                }
                let _ = writeln!(s, "norm_integral,{:.16e},", out.norm_integral);
                let _ = writeln!(s, "true_norm,{:.16e},", out.true_norm);
                s
            } else {
                document(&out)?
            };
            Ok(Outcome { text, status: EXIT_OK })
        }
    }
}

/// Reads the input, executes, and writes the report to its destination.
pub fn run_config(cfg: &RunConfig, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let input = fs::read_to_string(&cfg.input)
        .map_err(|e| CliError(format!("cannot read {}: {e}", cfg.input.display())))?;
    let out = execute(cfg, &input)?;
    match &cfg.output {
        Some(p) => fs::write(p, &out.text)
            .map_err(|e| CliError(format!("cannot write {}: {e}", p.display())))?,
        None => stdout
            .write_all(out.text.as_bytes())
            .map_err(|e| CliError(format!("cannot write output: {e}")))?,
    }
    Ok(out.status)
}

/// Parses `args` (program name first) and runs; returns the exit status.
pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { EXIT_MALFORMED } else { EXIT_OK };
        }
    };
    let result = RunConfig::from_cli(cli)
        .map_err(CliError::from)
        .and_then(|cfg| run_config(&cfg, stdout));
    match result {
        Ok(status) => status,
        Err(CliError(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_MALFORMED
        }
    }
}

pub fn run() -> i32 {
    run_with(
        std::env::args_os(),
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_3, FRAC_PI_6};

    fn report(f: &GridFunction, h: Hypothesis) -> BoundReport {
        certify(f, &h, &QuadratureRule::default(), 1e-9).unwrap()
    }

    fn arc() -> GridFunction {
        GridFunction::sample_scalar(
            Interval::new(FRAC_PI_6, FRAC_PI_3).unwrap(),
            33,
            crate::function::Interp::Linear,
            |t| num_complex::Complex64::new(t.cos(), t.sin()),
        )
        .unwrap()
    }

    #[test]
    fn table_rows_and_ordering() {
        let f = arc();
        let k = report(&f, Hypothesis::Karamata { theta: FRAC_PI_3 });
        let t = render_table(std::slice::from_ref(&k)).unwrap();
        assert_eq!(t.lines().count(), 2);
        assert!(t.lines().nth(1).unwrap().ends_with("n/a"));

        let c = report(&f, Hypothesis::Cone { phi1: FRAC_PI_6, phi2: FRAC_PI_3 });
        let t = render_table(&[k.clone(), c.clone()]).unwrap();
        let rows: Vec<&str> = t.lines().skip(1).collect();
        assert!(rows[0].starts_with("cone") && rows[1].starts_with("karamata"));
        assert!(c.coefficient > k.coefficient);

        let wide = report(&f, Hypothesis::Cone { phi1: 0.0, phi2: FRAC_PI_3 });
        let t = render_table(&[wide, c]).unwrap();
        let rows: Vec<&str> = t.lines().skip(1).collect();
        assert!(rows[0].contains("0.707106781"));
        assert_eq!(render_table(&[]), Err(Error::EmptyTable));
    }

    #[test]
    fn clap_usage_errors_map_to_malformed() {
        let (mut o, mut e) = (Vec::new(), Vec::new());
        assert_eq!(run_with(["bb", "frobnicate"], &mut o, &mut e), EXIT_MALFORMED);
        assert_eq!(run_with(["bb", "check"], &mut o, &mut e), EXIT_MALFORMED);
        assert_eq!(run_with(["bb", "--help"], &mut o, &mut e), EXIT_OK);
    }

    #[test]
    fn schema_mismatch_is_rejected() {
        let err = parse_input(r#"{"schema": "bochner-bounds/9"}"#).unwrap_err();
        assert!(err.0.contains("unsupported schema"));
        assert!(parse_input(r#"{"functon": {}}"#).unwrap_err().0.contains("functon"));
    }
}
