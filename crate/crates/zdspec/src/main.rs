use std::io::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use zdspec::config::{Format, IntRange, RunConfig, DENSE_CAP_ENV, SIZE_CAP_ENV};
use zdspec::core::graph::{BipartiteSubgraph, SupportGraph, ZeroDivisorGraph};
use zdspec::core::quotient::{det_walk_formula, walk_matrix_closed, QuotientKind, QuotientMatrix};
use zdspec::core::spectra::{Limits, Tolerances, DEFAULT_DENSE_CAP};
use zdspec::core::{Error, Matrix, DEFAULT_SIZE_CAP};
use zdspec::{export, report, sweep, Status};

#[derive(Parser)]
#[command(name = "zdspec", version, about = "Main eigenvalues of zero-divisor graphs of F_m^n")]
struct Cli {
    #[command(flatten)]
    opts: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalOpts {
    /// Largest graph (vertex count) that will be built.
    #[arg(long, global = true, env = SIZE_CAP_ENV, default_value_t = DEFAULT_SIZE_CAP)]
    size_cap: usize,
    /// Largest graph whose full spectrum is computed.
    #[arg(long, global = true, env = DENSE_CAP_ENV, default_value_t = DEFAULT_DENSE_CAP)]
    dense_cap: usize,
    /// Absolute floor of the eigenvalue grouping gap.
    #[arg(long, global = true, default_value_t = Tolerances::default().grouping_gap)]
    grouping_gap: f64,
    /// Projection norm above which an eigenvalue is main.
    #[arg(long, global = true, default_value_t = Tolerances::default().projection_threshold)]
    projection_threshold: f64,
    /// Relative off-diagonal norm at which Jacobi stops.
    #[arg(long, global = true, default_value_t = Tolerances::default().eigen_convergence)]
    eigen_convergence: f64,
    /// Absolute tolerance when comparing eigenvalue sets.
    #[arg(long, global = true, default_value_t = Tolerances::default().match_tolerance)]
    match_tolerance: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    P,
    Q,
}

#[derive(Clone, Copy, ValueEnum)]
enum What {
    Graph,
    Subgraph,
}

#[derive(Subcommand)]
enum Command {
    /// Print a quotient matrix with its walk matrix, rank and determinant.
    Quotient {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        m: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..=63))]
        n: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Spectral report for the full graph and the bipartite subgraph.
    Report {
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        m: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..=63))]
        n: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Run every check over a grid of (m, n); ranges are written a..b.
    Verify {
        #[arg(long, default_value = "2..4")]
        m: IntRange,
        #[arg(long, default_value = "2..6")]
        n: IntRange,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Write a graph as DOT, CSV adjacency or a JSON descriptor.
    Export {
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        m: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..=63))]
        n: u64,
        #[arg(long, value_enum)]
        what: What,
        #[arg(long, value_enum, default_value = "dot")]
        format: Format,
    },
}

struct Failure {
    status: Status,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            status: Status::Usage,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::SizeCap { .. } => Status::ResourceCap,
            Error::ParameterRange { .. } | Error::TupleTooLong { .. } | Error::IndexOrder { .. } => Status::Usage,
            _ => Status::CheckFailure,
        };
        Failure {
            status,
            message: e.to_string(),
        }
    }
}

type Outcome = Result<(String, Status), Failure>;

fn run_config(opts: &GlobalOpts, m: IntRange, n: IntRange, format: Format) -> Result<RunConfig, Failure> {
    let cfg = RunConfig {
        m,
        n,
        limits: Limits {
            size_cap: opts.size_cap,
            dense_cap: opts.dense_cap,
        },
        tolerances: Tolerances {
            grouping_gap: opts.grouping_gap,
            projection_threshold: opts.projection_threshold,
            eigen_convergence: opts.eigen_convergence,
            match_tolerance: opts.match_tolerance,
            ..Tolerances::default()
        },
        format,
    };
    cfg.validate().map_err(Failure::usage)?;
    Ok(cfg)
}

fn aligned(m: &Matrix<impl ToString>) -> String {
    let cells: Vec<Vec<String>> = m.iter_rows().map(|r| r.iter().map(ToString::to_string).collect()).collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(0);
    let mut out = String::new();
    for row in cells {
        let padded: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        out.push_str(padded.join(" ").trim_end());
        out.push('\n');
    }
    out
}

fn cmd_quotient(kind: Kind, m: u64, n: usize, format: Format) -> Outcome {
    let kind = match kind {
        Kind::P => QuotientKind::P,
        Kind::Q => QuotientKind::Q,
    };
    let b = QuotientMatrix::build(kind, m, n)?;
    let walk = b.walk_matrix();
    let closed = walk_matrix_closed(kind, m, n)?;
    let rank = walk.rank();
    let det = walk.determinant();
    let formula = det_walk_formula(m, n, kind)?;
    let det_ok = formula.is_integer() && formula.to_integer() == det;
    let status = if det_ok && closed == walk { Status::Success } else { Status::CheckFailure };

    let out = match format {
        Format::Csv => export::matrix_csv(b.entries()),
        Format::Json => {
            let v = json!({
                "kind": kind.to_string(),
                "m": m,
                "n": n,
                "matrix": export::matrix_json(b.entries()),
                "walk_matrix": export::matrix_json(walk.matrix()),
                "walk_closed_matches_iterative": closed == walk,
                "rank": rank,
                "determinant": det.to_string(),
                "formula_determinant": formula.to_string(),
                "determinant_matches": det_ok,
            });
            serde_json::to_string_pretty(&v).expect("json value serializes") + "\n"
        }
        Format::Text => {
            let yes_no = |b: bool| if b { "yes" } else { "no" };
            format!(
                "{kind}[{m},{n}]\n{}\nwalk matrix\n{}\nclosed form matches iteration: {}\nrank: {rank}\ndeterminant: {det}\nformula determinant: {formula} ({})\n",
                aligned(b.entries()),
                aligned(walk.matrix()),
                yes_no(closed == walk),
                if det_ok { "match" } else { "MISMATCH" },
            )
        }
        Format::Dot => return Err(Failure::usage("quotient supports json, csv and text output")),
    };
    Ok((out, status))
}

fn cmd_report(opts: &GlobalOpts, m: u64, n: usize, format: Format) -> Outcome {
    let cfg = run_config(opts, IntRange::single(m), IntRange::single(n as u64), format)?;
    let report = report::build_report(m, n, &cfg.tolerances, &cfg.limits);
    let out = match format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
        _ => return Err(Failure::usage("report supports json and text output")),
    };
    let status = report.status();
    if status == Status::CheckFailure {
        for c in report.failures() {
            eprintln!("check {} failed: {}", c.name, c.detail);
        }
    }
    if let Some(reason) = &report.graphs[0].refused {
        eprintln!("refused: {reason}");
    }
    Ok((out, status))
}

fn cmd_verify(opts: &GlobalOpts, m: IntRange, n: IntRange, format: Format) -> Outcome {
    let cfg = run_config(opts, m, n, format)?;
    let results = sweep::run_sweep(&cfg);
    let out = match format {
        Format::Text => sweep::table(&results),
        Format::Json => serde_json::to_string_pretty(&results).expect("results serialize") + "\n",
        _ => return Err(Failure::usage("verify supports text and json output")),
    };
    let status = if results.iter().all(|r| r.passed) { Status::Success } else { Status::CheckFailure };
    Ok((out, status))
}

fn render_graph<G: SupportGraph>(g: &G, format: Format) -> Result<String, Failure> {
    Ok(match format {
        Format::Dot => export::graph_dot(g),
        Format::Csv => export::adjacency_csv(g),
        Format::Json => {
            serde_json::to_string_pretty(&export::graph_descriptor(g)).expect("descriptor serializes") + "\n"
        }
        Format::Text => return Err(Failure::usage("export supports dot, csv and json output")),
    })
}

fn cmd_export(opts: &GlobalOpts, m: u64, n: usize, what: What, format: Format) -> Outcome {
    let cfg = run_config(opts, IntRange::single(m), IntRange::single(n as u64), format)?;
    let out = match what {
        What::Graph => render_graph(&ZeroDivisorGraph::build(m, n, cfg.limits.size_cap)?, format)?,
        What::Subgraph => render_graph(&BipartiteSubgraph::build(m, n, cfg.limits.size_cap)?, format)?,
    };
    Ok((out, Status::Success))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Quotient { kind, m, n, format } => cmd_quotient(kind, m, n as usize, format),
        Command::Report { m, n, format } => cmd_report(&cli.opts, m, n as usize, format),
        Command::Verify { m, n, format } => cmd_verify(&cli.opts, m, n, format),
        Command::Export { m, n, what, format } => cmd_export(&cli.opts, m, n as usize, what, format),
    };
    match outcome {
        Ok((out, status)) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::FAILURE;
            }
            ExitCode::from(status.code())
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.status.code())
        }
    }
}
