//! `motzkin`: build chain operators, extract the symmetry algebra and run the
//! verification suite from the command line.
//!
//! Exit status is 0 when every requested check passes, 1 when a check fails
//! and 2 for usage or configuration errors.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use motzkin::algebra::{build_tower, central_element, extract_roots, sigma_sum, verify_serre};
use motzkin::chain::{h_open, h_periodic, total_sz, ChainSize, DEFAULT_DIM_CAP};
use motzkin::linalg::coo::{write_matrix, write_vector};
use motzkin::linalg::rational::render;
use motzkin::linalg::{kernel_basis, OperatorMatrix, RationalVector};
use motzkin::paths::{enumerate_free_paths, enumerate_motzkin, state_from_paths};
use motzkin::verify::{full_report, Stage, Status, VerifyOptions, DEFAULT_ALGEBRA_CAP};

#[derive(Parser, Debug)]
#[command(name = "motzkin", version, about = "Exact analysis of the spin-1 Motzkin chain")]
struct Cli {
    /// Largest Hilbert-space dimension 3^n that may be built.
    #[arg(long, global = true, env = "MOTZKIN_DIM_CAP", default_value_t = DEFAULT_DIM_CAP)]
    dim_cap: usize,

    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
struct Size {
    /// Number of sites.
    #[arg(long)]
    n: usize,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    RationalCoo,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Ladder {
    Plus,
    Minus,
    Z,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List Motzkin paths, or unrestricted paths ending at a given height.
    Paths {
        #[command(flatten)]
        size: Size,
        /// Only Motzkin paths (the default when --sz is absent).
        #[arg(long, conflicts_with = "sz")]
        motzkin: bool,
        /// Final height of unrestricted paths.
        #[arg(long, allow_hyphen_values = true)]
        sz: Option<i64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print the open or periodic Hamiltonian.
    Hamiltonian {
        #[command(flatten)]
        size: Size,
        #[arg(long)]
        periodic: bool,
        #[arg(long, value_enum, default_value_t = Format::RationalCoo)]
        format: Format,
    },
    /// Print a basis of the ground-state space.
    Kernel {
        #[command(flatten)]
        size: Size,
        #[arg(long)]
        periodic: bool,
        #[arg(long, value_enum, default_value_t = Format::RationalCoo)]
        format: Format,
    },
    /// Print Σ⁺, Σ⁻ or Σ^z.
    Sigma {
        #[command(flatten)]
        size: Size,
        #[arg(long, value_enum, default_value_t = Ladder::Plus)]
        which: Ladder,
        #[arg(long, value_enum, default_value_t = Format::RationalCoo)]
        format: Format,
    },
    /// Extract Chevalley generators and the Cartan matrix.
    Chevalley {
        #[command(flatten)]
        size: Size,
        #[arg(long, default_value_t = DEFAULT_ALGEBRA_CAP)]
        algebra_cap: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Compute the central element p and the expansion of S^z.
    Central {
        #[command(flatten)]
        size: Size,
        #[arg(long, default_value_t = DEFAULT_ALGEBRA_CAP)]
        algebra_cap: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Run the verification stages and print a report.
    Verify {
        #[command(flatten)]
        size: Size,
        /// Comma-separated stages: theorem1, c1, c2, c3, c4 or all.
        #[arg(long, default_value = "all", value_delimiter = ',')]
        stage: Vec<String>,
        #[arg(long, default_value_t = DEFAULT_ALGEBRA_CAP)]
        algebra_cap: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

enum Failure {
    Usage(String),
    Check(String),
}

type Outcome = Result<(String, bool), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn chain_size(size: Size, cap: usize) -> Result<ChainSize, Failure> {
    ChainSize::with_dim_cap(size.n, cap).map_err(|e| usage(format!("invalid --n: {e}")))
}

fn algebra_size(size: Size, cap: usize, algebra_cap: usize) -> Result<ChainSize, Failure> {
    if size.n > algebra_cap {
        return Err(usage(format!(
            "invalid --n: {} exceeds --algebra-cap {algebra_cap}",
            size.n
        )));
    }
    chain_size(size, cap)
}

fn matrix_json(m: &OperatorMatrix) -> Value {
    let entries: Vec<Value> = m.iter().map(|(r, c, q)| json!([r, c, render(q)])).collect();
    json!({ "dim": m.dim(), "entries": entries })
}

fn vector_json(v: &RationalVector) -> Value {
    let entries: Vec<Value> = v.iter().map(|(i, q)| json!([i, render(q)])).collect();
    json!({ "dim": v.dim(), "entries": entries })
}

fn matrix_text(m: &OperatorMatrix) -> String {
    let mut out = String::new();
    for row in m.to_dense() {
        let cells: Vec<String> = row.iter().map(render).collect();
        writeln!(out, "{}", cells.join(" ")).expect("writing to a String");
    }
    out
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn emit_matrix(m: &OperatorMatrix, format: Format) -> String {
    match format {
        Format::RationalCoo => write_matrix(m),
        Format::Json => pretty(&matrix_json(m)),
        Format::Text => matrix_text(m),
    }
}

fn run_paths(size: Size, cap: usize, sz: Option<i64>, format: Format) -> Outcome {
    let n = chain_size(size, cap)?;
    let set = match sz {
        Some(h) => enumerate_free_paths(n.get(), h),
        None => enumerate_motzkin(n.get()),
    }
    .map_err(|e| usage(format!("invalid --sz: {e}")))?;
    let words = set.words();
    let out = match format {
        Format::Text => format!("{}\n", words.join(" ")),
        Format::Json => pretty(&json!({
            "n": n.get(),
            "height": sz.unwrap_or(0),
            "motzkin": sz.is_none(),
            "count": words.len(),
            "paths": words,
        })),
        Format::RationalCoo => {
            write_vector(&state_from_paths(&set).map_err(|e| Failure::Check(e.to_string()))?)
        }
    };
    Ok((out, true))
}

fn hamiltonian(n: ChainSize, periodic: bool) -> Result<OperatorMatrix, Failure> {
    let h = if periodic { h_periodic(n) } else { h_open(n) };
    h.map_err(|e| Failure::Check(e.to_string()))
}

fn run_kernel(n: ChainSize, periodic: bool, format: Format) -> Outcome {
    let basis = kernel_basis(&hamiltonian(n, periodic)?);
    let out = match format {
        Format::RationalCoo => basis.iter().map(write_vector).collect(),
        Format::Json => pretty(&json!({
            "n": n.get(),
            "periodic": periodic,
            "dim": basis.len(),
            "basis": basis.iter().map(vector_json).collect::<Vec<_>>(),
        })),
        Format::Text => {
            let mut s = format!("kernel dimension {}\n", basis.len());
            for v in &basis {
                let cells: Vec<String> = v.iter().map(|(i, q)| format!("{i}:{}", render(q))).collect();
                writeln!(s, "{}", cells.join(" ")).expect("writing to a String");
            }
            s
        }
    };
    Ok((out, true))
}

fn run_sigma(n: ChainSize, which: Ladder, format: Format) -> Outcome {
    let lp = sigma_sum(n).map_err(|e| Failure::Check(e.to_string()))?;
    let m = match which {
        Ladder::Plus => lp.plus,
        Ladder::Minus => lp.minus,
        Ladder::Z => lp.plus.commutator(&lp.minus).map_err(|e| Failure::Check(e.to_string()))?,
    };
    Ok((emit_matrix(&m, format), true))
}

fn check<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, Failure> {
    r.map_err(|e| Failure::Check(e.to_string()))
}

fn run_chevalley(n: ChainSize, format: Format) -> Outcome {
    let tower = check(build_tower(&check(sigma_sum(n))?))?;
    let cb = check(extract_roots(&tower))?;
    let serre = verify_serre(&cb);
    let ok = serre.iter().all(|c| c.holds);
    let roots: Vec<Value> = cb
        .roots
        .iter()
        .map(|r| {
            json!({
                "coeffs": r.coeffs.iter().map(render).collect::<Vec<_>>(),
                "rho_sq": render(&r.rho_sq),
            })
        })
        .collect();
    let out = match format {
        Format::Text => {
            let mut s = String::new();
            for (i, r) in cb.roots.iter().enumerate() {
                let coeffs: Vec<String> = r.coeffs.iter().map(render).collect();
                writeln!(s, "root {}: coeffs [{}] rho^2 {}", i + 1, coeffs.join(", "), render(&r.rho_sq))
                    .expect("writing to a String");
            }
            writeln!(s, "cartan {:?}", cb.cartan).expect("writing to a String");
            let failed: Vec<&str> = serre.iter().filter(|c| !c.holds).map(|c| c.relation.as_str()).collect();
            writeln!(s, "serre {}", if ok { "PASS".to_string() } else { failed.join(" ") })
                .expect("writing to a String");
            s
        }
        Format::Json => pretty(&json!({
            "n": n.get(),
            "roots": roots,
            "cartan": cb.cartan,
            "ordering": cb.ordering,
            "serre": serre,
        })),
        Format::RationalCoo => cb.roots.iter().map(|r| write_matrix(&r.h)).collect(),
    };
    Ok((out, ok))
}

fn run_central(n: ChainSize, format: Format) -> Outcome {
    let tower = check(build_tower(&check(sigma_sum(n))?))?;
    let cb = check(extract_roots(&tower))?;
    let sz = check(total_sz(n))?;
    let d = check(central_element(&tower, &cb, &sz))?;
    let x: Vec<String> = d.tower_coeffs.iter().map(render).collect();
    let alpha: Vec<String> = d.alpha.iter().map(render).collect();
    let out = match format {
        Format::Text => format!("x {}\nalpha {}\n", x.join(" "), alpha.join(" ")),
        Format::Json => pretty(&json!({
            "n": n.get(),
            "tower_coeffs": x,
            "alpha": alpha,
            "p": matrix_json(&d.p),
        })),
        Format::RationalCoo => write_matrix(&d.p),
    };
    Ok((out, true))
}

fn parse_stages(raw: &[String]) -> Result<BTreeSet<Stage>, Failure> {
    let mut out = BTreeSet::new();
    for s in raw.iter().map(|s| s.trim()) {
        if s == "all" {
            out.extend(Stage::ALL);
        } else {
            out.insert(s.parse::<Stage>().map_err(|e| usage(format!("invalid --stage: {e}")))?);
        }
    }
    if out.is_empty() {
        return Err(usage("invalid --stage: no stages given"));
    }
    Ok(out)
}

/// RFC 3339 time, from `SOURCE_DATE_EPOCH` when set.
fn timestamp() -> Result<String, Failure> {
    let time = match std::env::var("SOURCE_DATE_EPOCH") {
        Ok(raw) => {
            let secs: i64 = raw
                .trim()
                .parse()
                .map_err(|_| usage(format!("invalid SOURCE_DATE_EPOCH `{raw}`")))?;
            chrono::DateTime::from_timestamp(secs, 0)
                .ok_or_else(|| usage(format!("invalid SOURCE_DATE_EPOCH `{raw}`")))?
        }
        Err(_) => chrono::Utc::now(),
    };
    Ok(time.to_rfc3339_opts(chrono::SecondsFormat::Secs, true))
}

fn run_verify(n: ChainSize, stages: &[String], algebra_cap: usize, format: Format) -> Outcome {
    let stages = parse_stages(stages)?;
    let options = VerifyOptions {
        algebra_cap,
        timestamp: timestamp()?,
    };
    let report = full_report(n, &stages, &options);
    let ok = !report.any_failed();
    let out = match format {
        Format::Json | Format::RationalCoo => {
            if format == Format::RationalCoo {
                return Err(usage("invalid --format: verify supports json and text"));
            }
            let mut s = report.to_json();
            s.push('\n');
            s
        }
        Format::Text => {
            let mut s = format!("n = {}\n", n.get());
            let witnesses: BTreeMap<Stage, Option<&String>> = [
                (Stage::Theorem1, report.sections.theorem1.witness.as_ref()),
                (Stage::C1, report.sections.conjecture1.witness.as_ref()),
                (Stage::C2, report.sections.conjecture2.witness.as_ref()),
                (Stage::C3, report.sections.conjecture3.witness.as_ref()),
                (Stage::C4, report.sections.conjecture4.witness.as_ref()),
            ]
            .into();
            for (stage, status) in report.statuses() {
                let label = match status {
                    Status::Pass => "PASS",
                    Status::Fail => "FAIL",
                    Status::Skipped => "SKIPPED",
                };
                write!(s, "{stage:<9} {label}").expect("writing to a String");
                if let Some(Some(w)) = witnesses.get(&stage) {
                    write!(s, "  {w}").expect("writing to a String");
                }
                s.push('\n');
            }
            s
        }
    };
    Ok((out, ok))
}

fn run(cli: &Cli) -> Outcome {
    let cap = cli.dim_cap;
    match &cli.command {
        Command::Paths { size, sz, format, .. } => run_paths(*size, cap, *sz, *format),
        Command::Hamiltonian { size, periodic, format } => {
            let h = hamiltonian(chain_size(*size, cap)?, *periodic)?;
            Ok((emit_matrix(&h, *format), true))
        }
        Command::Kernel { size, periodic, format } => run_kernel(chain_size(*size, cap)?, *periodic, *format),
        Command::Sigma { size, which, format } => run_sigma(chain_size(*size, cap)?, *which, *format),
        Command::Chevalley {
            size,
            algebra_cap,
            format,
        } => run_chevalley(algebra_size(*size, cap, *algebra_cap)?, *format),
        Command::Central {
            size,
            algebra_cap,
            format,
        } => run_central(algebra_size(*size, cap, *algebra_cap)?, *format),
        Command::Verify {
            size,
            stage,
            algebra_cap,
            format,
        } => run_verify(chain_size(*size, cap)?, stage, *algebra_cap, *format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (text, ok) = match run(&cli) {
        Ok(result) => result,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Check(msg)) => {
            eprintln!("check failed: {msg}");
            return ExitCode::from(1);
        }
    };
    match &cli.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("error: cannot write --output {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
