//! Command-line front end: load sequence and matrix documents, run
//! transforms and the various membership / dual / class / transfer checks,
//! and emit human-readable and JSON verdict reports.
//!
//! Exit codes: 0 Holds, 1 Fails, 4 Inconclusive, 2 parse error,
//! 3 evaluation error. Commands that surface a discrepancy finding exit 0 —
//! a documented discrepancy is a successful analysis.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use fuzzyseq::domains::{self, DomainSpace};
use fuzzyseq::duals::{self, DualKind, MatrixClass, TransferTheorem};
use fuzzyseq::matrices::{self, format_block_rational, toeplitz_audit, InfiniteMatrix};
use fuzzyseq::sequences::{self, FuzzySequence, SequenceTerms};
use fuzzyseq::{Error, Status, TruncationPolicy};

const EXIT_PARSE: u8 = 2;
const EXIT_EVAL: u8 = 3;
const EXIT_INCONCLUSIVE: u8 = 4;

#[derive(Parser)]
#[command(name = "fuzzyseq", version, about = "fuzzy sequence space toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Comma-separated truncation ladder, e.g. 16,32,64
    #[arg(long, global = true)]
    ladder: Option<String>,
    /// Stabilization threshold
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Stabilization window (ladder steps)
    #[arg(long, global = true)]
    window: Option<usize>,
    /// Numeric display mode (FUZZYSEQ_MODE overrides)
    #[arg(long, global = true, value_enum, default_value_t = Mode::Float)]
    mode: Mode,
    /// Write the JSON report to this path
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Print the JSON report to stdout instead of the summary
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Float,
    Rational,
}

#[derive(Subcommand)]
enum Command {
    /// Print the leading N x N block of a matrix
    Show {
        /// Builtin matrix name or path to a matrix document
        #[arg(long)]
        matrix: String,
        #[arg(long, default_value_t = 4)]
        n: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Apply a matrix to a sequence and print the first N terms
    Transform {
        #[arg(long)]
        matrix: String,
        /// Path to a sequence document
        #[arg(long)]
        seq: PathBuf,
        #[arg(long, default_value_t = 10)]
        n: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Test sequence membership in a base space
    SpaceTest {
        #[arg(long)]
        seq: PathBuf,
        /// One of linf, c, c0, cs, bs, l1, l2 or lp:<p>
        #[arg(long)]
        space: String,
        #[command(flatten)]
        common: Common,
    },
    /// Test sequence membership in a matrix domain
    DomainTest {
        #[arg(long)]
        seq: PathBuf,
        /// One of int-linf, int-c, int-c0, diff-linf, diff-c, diff-c0
        #[arg(long)]
        space: String,
        #[command(flatten)]
        common: Common,
    },
    /// Evaluate the dual condition sets for a multiplier sequence
    DualTest {
        /// Path to the multiplier sequence document
        #[arg(long)]
        a: PathBuf,
        /// Domain space the dual is taken of (int-* / diff-*)
        #[arg(long)]
        space: String,
        /// One of alpha_r, beta_r, gamma_r
        #[arg(long)]
        kind: String,
        #[command(flatten)]
        common: Common,
    },
    /// Check matrix membership in a characterized class
    ClassCheck {
        #[arg(long)]
        matrix: String,
        /// Class pair such as linf:linf or c0:l1
        #[arg(long)]
        class: String,
        #[command(flatten)]
        common: Common,
    },
    /// Verify a transfer-theorem identity on rows 1..=N
    TransferCheck {
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        seq: PathBuf,
        /// Theorem label: 4.1, 4.2, 4.3 or 4.4
        #[arg(long)]
        kind: String,
        #[arg(long, default_value_t = 32)]
        n: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Audit a matrix against the classical regularity conditions
    ToeplitzAudit {
        #[arg(long)]
        matrix: String,
        #[command(flatten)]
        common: Common,
    },
}

/// Error carrying the process exit code.
struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn parse(message: impl Into<String>) -> Self {
        CliError { code: EXIT_PARSE, message: message.into() }
    }

    fn eval(message: impl Into<String>) -> Self {
        CliError { code: EXIT_EVAL, message: message.into() }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::UnknownClass(_) => CliError::parse(e.to_string()),
            _ => CliError::eval(e.to_string()),
        }
    }
}

fn status_exit(status: Status) -> u8 {
    match status {
        Status::Holds => 0,
        Status::Fails => 1,
        Status::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

fn load_matrix(spec: &str) -> Result<InfiniteMatrix, CliError> {
    if let Some(m) = matrices::builtin(spec) {
        return Ok(m);
    }
    let path = Path::new(spec);
    if !path.exists() {
        return Err(CliError::parse(format!(
            "`{spec}` is neither a builtin matrix nor an existing file"
        )));
    }
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::parse(format!("reading {spec}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| CliError::parse(format!("parsing {spec}: {e}")))
}

fn load_sequence(path: &Path) -> Result<FuzzySequence, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::parse(format!("reading {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::parse(format!("parsing {}: {e}", path.display())))
}

fn policy_from(common: &Common) -> Result<TruncationPolicy, CliError> {
    let default = TruncationPolicy::default();
    let ladder = match &common.ladder {
        Some(text) => text
            .split(',')
            .map(|s| s.trim().parse::<u64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| CliError::parse(format!("bad --ladder: {e}")))?,
        None => default.ladder,
    };
    TruncationPolicy::new(
        ladder,
        common.tol.unwrap_or(default.tol),
        common.window.unwrap_or(default.stabilization_window),
    )
    .map_err(CliError::from)
}

fn mode_from(common: &Common) -> Result<Mode, CliError> {
    match std::env::var("FUZZYSEQ_MODE") {
        Ok(v) => match v.as_str() {
            "float" => Ok(Mode::Float),
            "rational" => Ok(Mode::Rational),
            other => Err(CliError::parse(format!("bad FUZZYSEQ_MODE `{other}`"))),
        },
        Err(_) => Ok(common.mode),
    }
}

fn emit(common: &Common, report: &Value, summary: &str) -> Result<(), CliError> {
    if let Some(path) = &common.out {
        let text = serde_json::to_string_pretty(report)
            .map_err(|e| CliError::eval(e.to_string()))?;
        std::fs::write(path, text)
            .map_err(|e| CliError::eval(format!("writing {}: {e}", path.display())))?;
    }
    if common.json {
        println!(
            "{}",
            serde_json::to_string_pretty(report).map_err(|e| CliError::eval(e.to_string()))?
        );
    } else {
        println!("{summary}");
    }
    Ok(())
}

fn to_value<T: serde::Serialize>(v: &T) -> Result<Value, CliError> {
    serde_json::to_value(v).map_err(|e| CliError::eval(e.to_string()))
}

fn status_name(s: Status) -> &'static str {
    match s {
        Status::Holds => "Holds",
        Status::Fails => "Fails",
        Status::Inconclusive => "Inconclusive",
    }
}

fn mode_name(mode: Mode) -> &'static str {
    match mode {
        Mode::Float => "float",
        Mode::Rational => "rational",
    }
}

fn cmd_show(matrix: &str, n: u64, common: &Common) -> Result<u8, CliError> {
    if n == 0 || n > 64 {
        return Err(CliError::parse("--n must be between 1 and 64"));
    }
    let m = load_matrix(matrix)?;
    let mode = mode_from(common)?;
    let (block, lines): (Value, Vec<String>) = match mode {
        Mode::Rational => {
            let rows = format_block_rational(&m.truncate(n));
            let lines = rows.iter().map(|r| r.join(" ")).collect();
            (to_value(&rows)?, lines)
        }
        Mode::Float => {
            let rows = m.truncate_f64(n);
            let lines = rows
                .iter()
                .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
                .collect();
            (to_value(&rows)?, lines)
        }
    };
    let report = json!({
        "command": "show",
        "matrix": m.name(),
        "n": n,
        "mode": mode_name(mode),
        "block": block,
    });
    let summary = format!("{} [{} mode]\n{}", m.name(), mode_name(mode), lines.join("\n"));
    emit(common, &report, &summary)?;
    Ok(0)
}

fn cmd_transform(matrix: &str, seq: &Path, n: u64, common: &Common) -> Result<u8, CliError> {
    let m = load_matrix(matrix)?;
    let s = load_sequence(seq)?;
    let mode = mode_from(common)?;
    let mut terms = Vec::new();
    let mut lines = Vec::new();
    for row in 1..=n {
        let v = m.apply(&s, row)?;
        let center: Value = match mode {
            Mode::Rational => {
                // redo the dot product in exact arithmetic for display
                let mut sum = num::BigRational::from_float(0.0).unwrap();
                for k in 1..=m.row_support(row) {
                    let e = m.entry(row, k);
                    if !num::Zero::is_zero(&e) {
                        sum += e * matrices::rational_from_f64(s.center(k)?);
                    }
                }
                Value::String(sum.to_string())
            }
            Mode::Float => to_value(&v.center())?,
        };
        lines.push(format!("{row}: center {center} spreads ({}, {})", v.spreads().t1(), v.spreads().t2()));
        terms.push(json!({"n": row, "center": center, "t1": v.spreads().t1(), "t2": v.spreads().t2()}));
    }
    let report = json!({
        "command": "transform",
        "matrix": m.name(),
        "n": n,
        "mode": mode_name(mode),
        "terms": terms,
    });
    emit(common, &report, &lines.join("\n"))?;
    Ok(0)
}

fn cmd_space_test(seq: &Path, space: &str, common: &Common) -> Result<u8, CliError> {
    let s = load_sequence(seq)?;
    let policy = policy_from(common)?;
    let verdict = match space {
        "linf" => sequences::in_linf(&s, &policy)?,
        "c" => sequences::in_c(&s, &policy)?.0,
        "c0" => sequences::in_c0(&s, &policy)?,
        "cs" => sequences::in_cs(&s, &policy)?,
        "bs" => sequences::in_bs(&s, &policy)?,
        "l1" => sequences::in_lp(&s, 1.0, &policy)?,
        "l2" => sequences::in_lp(&s, 2.0, &policy)?,
        other => match other.strip_prefix("lp:") {
            Some(p) => {
                let p: f64 =
                    p.parse().map_err(|e| CliError::parse(format!("bad lp exponent: {e}")))?;
                sequences::in_lp(&s, p, &policy)?
            }
            None => return Err(CliError::parse(format!("unknown space `{other}`"))),
        },
    };
    let report = json!({
        "command": "space-test",
        "space": space,
        "status": status_name(verdict.status),
        "verdict": to_value(&verdict)?,
    });
    let summary = format!("{space}: {}", status_name(verdict.status));
    emit(common, &report, &summary)?;
    Ok(status_exit(verdict.status))
}

fn cmd_domain_test(seq: &Path, space: &str, common: &Common) -> Result<u8, CliError> {
    let s = load_sequence(seq)?;
    let space = DomainSpace::parse(space)?;
    let policy = policy_from(common)?;
    let verdict = domains::in_domain(&s, space, &policy)?;
    let report = json!({
        "command": "domain-test",
        "space": space.name(),
        "status": status_name(verdict.status),
        "verdict": to_value(&verdict)?,
    });
    let summary = format!("{}: {}", space.name(), status_name(verdict.status));
    emit(common, &report, &summary)?;
    Ok(status_exit(verdict.status))
}

fn cmd_dual_test(a: &Path, space: &str, kind: &str, common: &Common) -> Result<u8, CliError> {
    let a = load_sequence(a)?;
    let space = DomainSpace::parse(space)?;
    let kind = DualKind::parse(kind)?;
    let policy = policy_from(common)?;
    let membership = duals::dual_membership(&a, space.transform, kind, &policy);
    let samples = duals::standard_domain_samples(space.transform, space.base);
    let oracle = duals::dual_oracle(&a, kind, &samples, &policy)?;
    let finding = duals::cross_check(&membership, &oracle);
    let report = json!({
        "command": "dual-test",
        "space": space.name(),
        "kind": to_value(&kind)?,
        "status": status_name(membership.overall),
        "conditions": membership
            .conditions
            .iter()
            .map(|c| {
                Ok(json!({
                    "condition": c.id,
                    "status": status_name(c.status),
                    "evidence": to_value(&c.verdict.evidence)?,
                }))
            })
            .collect::<Result<Vec<Value>, CliError>>()?,
        "alternate_pairing": to_value(&membership.alternate_pairing)?,
        "oracle": to_value(&oracle)?,
        "finding": to_value(&finding)?,
    });
    let mut summary = format!(
        "{:?} dual over {}: {} (oracle: {})",
        kind,
        space.name(),
        status_name(membership.overall),
        status_name(oracle.overall)
    );
    for c in &membership.conditions {
        summary.push_str(&format!("\n  {}: {}", c.id, status_name(c.status)));
    }
    if finding.is_some() {
        summary.push_str("\n  finding: oracle rejects a multiplier the conditions accept");
    }
    emit(common, &report, &summary)?;
    // a surfaced discrepancy is a successful analysis
    Ok(if finding.is_some() { 0 } else { status_exit(membership.overall) })
}

fn cmd_class_check(matrix: &str, class: &str, common: &Common) -> Result<u8, CliError> {
    let m = load_matrix(matrix)?;
    let cls = MatrixClass::parse(class)?;
    let policy = policy_from(common)?;
    let report = duals::check_class(&m, cls, &policy)?;
    let value = json!({
        "command": "class-check",
        "matrix": report.matrix,
        "class": report.class,
        "status": status_name(report.overall),
        "conditions": report
            .conditions
            .iter()
            .map(|c| {
                Ok(json!({
                    "condition": c.id,
                    "status": status_name(c.status),
                    "evidence": to_value(&c.verdict.evidence)?,
                }))
            })
            .collect::<Result<Vec<Value>, CliError>>()?,
    });
    let mut summary = format!(
        "{} in ({}): {}",
        report.matrix,
        report.class,
        status_name(report.overall)
    );
    for c in &report.conditions {
        summary.push_str(&format!("\n  {}: {}", c.id, status_name(c.status)));
    }
    emit(common, &value, &summary)?;
    Ok(status_exit(report.overall))
}

fn cmd_transfer_check(
    matrix: &str,
    seq: &Path,
    kind: &str,
    n: u64,
    common: &Common,
) -> Result<u8, CliError> {
    let m = load_matrix(matrix)?;
    let s = load_sequence(seq)?;
    let theorem = TransferTheorem::parse(kind)?;
    let policy = policy_from(common)?;
    let report = duals::transfer_check(&m, theorem, &s, n)?;
    let status = if report.max_abs_diff <= policy.tol {
        Status::Holds
    } else {
        Status::Fails
    };
    let value = json!({
        "command": "transfer-check",
        "matrix": m.name(),
        "theorem": to_value(&theorem)?,
        "n": n,
        "max_abs_diff": report.max_abs_diff,
        "status": status_name(status),
        "rows": to_value(&report.rows)?,
        "row_l1": to_value(&report.row_l1)?,
    });
    let summary = format!(
        "{:?} on {} rows: max |lhs - rhs| = {:.3e} -> {}",
        theorem,
        n,
        report.max_abs_diff,
        status_name(status)
    );
    emit(common, &value, &summary)?;
    Ok(status_exit(status))
}

fn cmd_toeplitz_audit(matrix: &str, common: &Common) -> Result<u8, CliError> {
    let m = load_matrix(matrix)?;
    let policy = policy_from(common)?;
    let audit = toeplitz_audit(&m, &policy);
    let value = json!({
        "command": "toeplitz-audit",
        "matrix": m.name(),
        "status": status_name(audit.regular),
        "row_sum_limit": to_value(&audit.row_sum_limit)?,
        "row_sum_estimate": audit.row_sum_estimate,
        "column_limits": to_value(&audit.column_limits)?,
        "sup_abs_row_sums": audit.sup_abs_row_sums,
        "sup_abs_verdict": to_value(&audit.sup_abs_verdict)?,
        "finding": if audit.regular == Status::Fails {
            Value::String(format!(
                "{} violates the regularity conditions (row-sum trend: {})",
                m.name(),
                status_name(audit.row_sum_limit.status)
            ))
        } else {
            Value::Null
        },
    });
    let summary = format!(
        "{} regular: {} (row-sum limit {}, sup abs row sums {:.6})",
        m.name(),
        status_name(audit.regular),
        audit
            .row_sum_estimate
            .map(|x| format!("{x:.6}"))
            .unwrap_or_else(|| "n/a".into()),
        audit.sup_abs_row_sums
    );
    emit(common, &value, &summary)?;
    Ok(status_exit(audit.regular))
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match &cli.command {
        Command::Show { matrix, n, common } => cmd_show(matrix, *n, common),
        Command::Transform { matrix, seq, n, common } => cmd_transform(matrix, seq, *n, common),
        Command::SpaceTest { seq, space, common } => cmd_space_test(seq, space, common),
        Command::DomainTest { seq, space, common } => cmd_domain_test(seq, space, common),
        Command::DualTest { a, space, kind, common } => cmd_dual_test(a, space, kind, common),
        Command::ClassCheck { matrix, class, common } => cmd_class_check(matrix, class, common),
        Command::TransferCheck { matrix, seq, kind, n, common } => {
            cmd_transfer_check(matrix, seq, kind, *n, common)
        }
        Command::ToeplitzAudit { matrix, common } => cmd_toeplitz_audit(matrix, common),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
