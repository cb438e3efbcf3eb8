//! Command-line front end.
//!
//! Every invocation prints one JSON object on stdout and a one-line summary
//! on stderr. Exit codes: 0 success, 1 domain error, 2 usage or parse error,
//! 3 resource budget exceeded.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::closed_form::{lagrangian12_exact, max_clique};
use crate::error::{Error, Result};
use crate::extremal::{
    cached_search, chromatic_number, dense_report, lubell, turan_density_12, ExtremalCache, Mode,
    SearchKind, SearchOptions,
};
use crate::format::{self, serialize};
use crate::homomorphism::exists_hom;
use crate::hypergraph::{blowup, BlowupSpec};
use crate::lagrangian::{self, maximize, MaximizeOptions, SUM_TOLERANCE};
use crate::rational::to_f64;
use crate::verify::{run_suite, Suite};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "hyperlag",
    version,
    about = "Lagrangians and Turán densities of non-uniform hypergraphs"
)]
pub struct Cli {
    /// Worker threads for parallel searches (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ModeArg {
    Free,
    HomFree,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SearchArg {
    Exhaustive,
    Local,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate λ′(H, x) at a weighting.
    Eval {
        file: PathBuf,
        #[arg(
            long,
            value_delimiter = ',',
            required = true,
            allow_negative_numbers = true
        )]
        weights: Vec<f64>,
    },
    /// Maximise λ′ numerically.
    Lagrangian {
        file: PathBuf,
        #[arg(long, default_value_t = 16)]
        restarts: usize,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, default_value_t = 10_000)]
        max_iterations: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Exact λ′ of a {1,2}-graph.
    Exact12 { file: PathBuf },
    /// Maximum clique of a graph.
    Clique { file: PathBuf },
    /// Chromatic number of a graph.
    Chromatic { file: PathBuf },
    /// Search for a homomorphism F → G.
    Hom { f_file: PathBuf, g_file: PathBuf },
    /// Write the blowup with the given class sizes.
    Blowup {
        file: PathBuf,
        #[arg(long = "s", value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
    /// Lubell value.
    Lubell { file: PathBuf },
    /// Turán density of a {1,2}-graph with a non-bipartite 2-level.
    Turan12 { file: PathBuf },
    /// Largest Lubell value of an F-free host on n vertices.
    Extremal {
        f_file: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "free")]
        mode: ModeArg,
        #[arg(long, value_enum, default_value = "exhaustive")]
        search: SearchArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Cache file (default: $HYPERLAG_CACHE or ./.hyperlag-cache.jsonl).
        #[arg(long)]
        cache: Option<PathBuf>,
        /// Largest candidate-edge count for exhaustive search.
        #[arg(long, default_value_t = 22)]
        budget: usize,
    },
    /// Denseness test with per-edge λ′ drops.
    Dense { file: PathBuf },
    /// Run the property suites.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Eval { .. } => "eval",
            Command::Lagrangian { .. } => "lagrangian",
            Command::Exact12 { .. } => "exact12",
            Command::Clique { .. } => "clique",
            Command::Chromatic { .. } => "chromatic",
            Command::Hom { .. } => "hom",
            Command::Blowup { .. } => "blowup",
            Command::Lubell { .. } => "lubell",
            Command::Turan12 { .. } => "turan12",
            Command::Extremal { .. } => "extremal",
            Command::Dense { .. } => "dense",
            Command::Verify { .. } => "verify",
        }
    }

    fn inputs(&self) -> Vec<&Path> {
        match self {
            Command::Hom { f_file, g_file } => vec![f_file, g_file],
            Command::Extremal { f_file, .. } => vec![f_file],
            Command::Eval { file, .. }
            | Command::Lagrangian { file, .. }
            | Command::Exact12 { file }
            | Command::Clique { file }
            | Command::Chromatic { file }
            | Command::Blowup { file, .. }
            | Command::Lubell { file }
            | Command::Turan12 { file }
            | Command::Dense { file } => vec![file],
            Command::Verify { .. } => vec![],
        }
    }
}

/// Result of a successful command before it is wrapped in the envelope.
struct Outcome {
    exact: bool,
    payload: Value,
    summary: String,
    exit: i32,
}

impl Outcome {
    fn new(exact: bool, payload: Value, summary: impl Into<String>) -> Self {
        Outcome {
            exact,
            payload,
            summary: summary.into(),
            exit: EXIT_OK,
        }
    }
}

fn dec(x: f64) -> String {
    format!("{x:.12}")
}

fn sci(x: f64) -> String {
    format!("{x:.6e}")
}

fn dec_vec(x: &[f64]) -> Vec<String> {
    x.iter().map(|&v| dec(v)).collect()
}

fn labels(v: &[usize]) -> Vec<usize> {
    v.iter().map(|u| u + 1).collect()
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::OutOfHypothesis(_) | Error::Infeasible(_) | Error::Cache(_) => EXIT_DOMAIN,
        Error::InvalidArgument(_) | Error::Parse { .. } | Error::Io(_) => EXIT_USAGE,
        Error::Budget { .. } => EXIT_BUDGET,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::InvalidArgument(_) => "invalid-argument",
        Error::Parse { .. } => "parse",
        Error::OutOfHypothesis(_) => "out-of-hypothesis",
        Error::Infeasible(_) => "infeasible",
        Error::Budget { .. } => "budget",
        Error::Io(_) => "io",
        Error::Cache(_) => "cache",
    }
}

fn reason(e: &Error) -> String {
    match e {
        Error::OutOfHypothesis(r)
        | Error::Infeasible(r)
        | Error::InvalidArgument(r)
        | Error::Cache(r) => r.clone(),
        other => other.to_string(),
    }
}

/// SHA-256 over the bytes of every input file, in argument order.
fn input_digest(paths: &[&Path]) -> Result<Option<String>> {
    if paths.is_empty() {
        return Ok(None);
    }
    let mut hasher = Sha256::new();
    for p in paths {
        hasher.update(std::fs::read(p)?);
    }
    Ok(Some(hex::encode(hasher.finalize())))
}

fn normalise_weights(w: &[f64], n: usize) -> Result<Vec<f64>> {
    if w.len() != n {
        return Err(Error::invalid(format!(
            "expected {n} weights, got {}",
            w.len()
        )));
    }
    if w.iter().any(|v| !v.is_finite() || *v < 0.0) {
        return Err(Error::invalid("weights must be finite and nonnegative"));
    }
    let total: f64 = w.iter().sum();
    if (total - 1.0).abs() > SUM_TOLERANCE {
        return Err(Error::invalid(format!("weights sum to {total}, not 1")));
    }
    Ok(w.iter().map(|v| v / total).collect())
}

fn execute(cmd: &Command) -> Result<Outcome> {
    let read = |p: &Path| format::read_file(p);
    Ok(match cmd {
        Command::Eval { file, weights } => {
            let h = read(file)?;
            let x = normalise_weights(weights, h.n())?;
            let value = lagrangian::evaluate(&h, &x)?;
            Outcome::new(
                false,
                json!({ "value": dec(value), "weights": dec_vec(&x) }),
                format!("λ′(H, x) = {value:.12}"),
            )
        }
        Command::Lagrangian {
            file,
            restarts,
            tol,
            max_iterations,
            seed,
        } => {
            let h = read(file)?;
            let opts = MaximizeOptions {
                restarts: *restarts,
                tol: *tol,
                max_iterations: *max_iterations,
                seed: *seed,
            };
            let r = maximize(&h, &opts)?;
            let self_check = if h.types_within(&[1, 2]) {
                let exact = lagrangian12_exact(&h)?.value;
                let gap = (to_f64(&exact) - r.value).abs();
                json!({ "exact": exact.to_string(), "gap": sci(gap), "agrees": gap <= 1e-6 })
            } else {
                Value::Null
            };
            Outcome::new(
                false,
                json!({
                    "value": dec(r.value),
                    "weighting": dec_vec(&r.weighting),
                    "support": labels(&r.support),
                    "iterations": r.iterations,
                    "converged": r.converged,
                    "kkt_residual": sci(r.kkt_residual),
                    "restart": r.restart,
                    "self_check": self_check,
                }),
                format!(
                    "λ′ ≈ {:.12} (restart {}, converged {})",
                    r.value, r.restart, r.converged
                ),
            )
        }
        Command::Exact12 { file } => {
            let r = lagrangian12_exact(&read(file)?)?;
            Outcome::new(
                true,
                json!({
                    "value": r.value.to_string(),
                    "case": r.case.as_str(),
                    "order": r.order,
                    "witness_weighting": dec_vec(&r.witness_weighting),
                }),
                format!("λ′ = {} ({})", r.value, r.case.as_str()),
            )
        }
        Command::Clique { file } => {
            let r = max_clique(&read(file)?)?;
            Outcome::new(
                true,
                json!({ "size": r.size, "witness": labels(&r.witness) }),
                format!("clique number {}", r.size),
            )
        }
        Command::Chromatic { file } => {
            let chi = chromatic_number(&read(file)?)?;
            Outcome::new(
                true,
                json!({ "chromatic_number": chi }),
                format!("chromatic number {chi}"),
            )
        }
        Command::Hom { f_file, g_file } => {
            let (f, g) = (read(f_file)?, read(g_file)?);
            let w = exists_hom(&f, &g);
            let summary = if w.is_some() {
                "homomorphism found"
            } else {
                "no homomorphism"
            };
            Outcome::new(
                true,
                json!({ "exists": w.is_some(), "mapping": w.map(|w| labels(&w.mapping)) }),
                summary,
            )
        }
        Command::Blowup {
            file,
            sizes,
            output,
        } => {
            let h = read(file)?;
            let b = blowup(&h, &BlowupSpec::new(sizes.clone())?)?;
            format::write_file(output, &b)?;
            Outcome::new(
                true,
                json!({ "n": b.n(), "edges": b.edge_count(), "output": output.display().to_string() }),
                format!(
                    "wrote {} vertices, {} edges to {}",
                    b.n(),
                    b.edge_count(),
                    output.display()
                ),
            )
        }
        Command::Lubell { file } => {
            let v = lubell(&read(file)?);
            Outcome::new(
                true,
                json!({ "value": v.to_string() }),
                format!("Lubell value {v}"),
            )
        }
        Command::Turan12 { file } => {
            let h = read(file)?;
            let v = turan_density_12(&h)?;
            let chi = chromatic_number(&h.level(2).into_graph())?;
            Outcome::new(
                true,
                json!({ "value": v.to_string(), "chromatic_number": chi }),
                format!("Turán density {v}"),
            )
        }
        Command::Extremal {
            f_file,
            n,
            mode,
            search,
            seed,
            cache,
            budget,
        } => {
            let f = read(f_file)?;
            let mode = match mode {
                ModeArg::Free => Mode::Free,
                ModeArg::HomFree => Mode::HomFree,
            };
            let search = match search {
                SearchArg::Exhaustive => SearchKind::Exhaustive,
                SearchArg::Local => SearchKind::Local,
            };
            let opts = SearchOptions {
                budget: *budget,
                seed: *seed,
                ..Default::default()
            };
            let cache =
                ExtremalCache::new(cache.clone().unwrap_or_else(ExtremalCache::default_path));
            let (rec, hit) = cached_search(&f, *n, mode, search, &opts, &cache)?;
            Outcome::new(
                true,
                json!({
                    "n": rec.n,
                    "mode": rec.mode.as_str(),
                    "search": rec.search.as_str(),
                    "max_lubell": rec.max_lubell.to_string(),
                    "max_lubell_decimal": dec(to_f64(&rec.max_lubell)),
                    "witness": rec.witness,
                    "witness_serialized": serialize(&rec.witness),
                    "seed": rec.seed,
                    "cached": hit,
                    "cache": cache.path().display().to_string(),
                }),
                format!(
                    "max Lubell {} on n={} ({} {}{})",
                    rec.max_lubell,
                    rec.n,
                    rec.mode.as_str(),
                    rec.search.as_str(),
                    if hit { ", cached" } else { "" }
                ),
            )
        }
        Command::Dense { file } => {
            let r = dense_report(&read(file)?)?;
            let mut payload =
                serde_json::to_value(&r).map_err(|e| Error::invalid(e.to_string()))?;
            payload["isolated"] = json!(labels(&r.isolated));
            payload["method"] = json!("single-edge deletions; λ′ is monotone under edge removal");
            Outcome::new(true, payload, format!("dense: {}", r.dense))
        }
        Command::Verify { suite } => {
            let reports = run_suite(*suite)?;
            let passed = reports.iter().filter(|r| r.passed).count();
            let failed = reports.len() - passed;
            for r in &reports {
                eprintln!("{}", r.line());
            }
            let mut out = Outcome::new(
                false,
                json!({ "passed": passed, "failed": failed, "criteria": reports }),
                format!("{passed} passed, {failed} failed"),
            );
            if failed > 0 {
                out.exit = EXIT_DOMAIN;
            }
            out
        }
    })
}

fn configure_jobs(jobs: Option<usize>) -> Result<()> {
    if let Some(j) = jobs {
        if j == 0 {
            return Err(Error::invalid("--jobs must be at least 1"));
        }
        // a second configuration in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build_global();
    }
    Ok(())
}

/// Parses `args` (including the program name), runs the command and
/// returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let name = cli.command.name();
    let result = configure_jobs(cli.jobs)
        .and_then(|_| input_digest(&cli.command.inputs()))
        .and_then(|digest| execute(&cli.command).map(|o| (digest, o)));
    match result {
        Ok((digest, out)) => {
            let mut obj = json!({ "command": name, "input_digest": digest, "exact": out.exact });
            if let (Value::Object(o), Value::Object(p)) = (&mut obj, out.payload) {
                o.extend(p);
            }
            println!("{obj}");
            eprintln!("{name}: {}", out.summary);
            out.exit
        }
        Err(e) => {
            let code = exit_code(&e);
            println!(
                "{}",
                json!({ "command": name, "error": error_kind(&e), "reason": reason(&e) })
            );
            eprintln!("{name}: error: {}: {}", error_kind(&e), reason(&e));
            code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_are_normalised_or_rejected() {
        let w = normalise_weights(&[0.5, 0.5 + 5e-10], 2).unwrap();
        assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-15);
        assert!(normalise_weights(&[0.5, 0.6], 2).is_err());
        assert!(normalise_weights(&[1.0], 2).is_err());
        assert!(normalise_weights(&[1.5, -0.5], 2).is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::OutOfHypothesis("x".into())), EXIT_DOMAIN);
        assert_eq!(exit_code(&Error::parse(3, "bad")), EXIT_USAGE);
        assert_eq!(
            exit_code(&Error::Budget {
                what: "x".into(),
                required: 2,
                budget: 1
            }),
            EXIT_BUDGET
        );
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run(["hyperlag", "nonsense"]), EXIT_USAGE);
        assert_eq!(run(["hyperlag", "lubell"]), EXIT_USAGE);
    }

    #[test]
    fn digest_is_stable() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("a.hg");
        std::fs::write(&p, "n 2\ne 1 2\n").unwrap();
        let a = input_digest(&[&p]).unwrap().unwrap();
        assert_eq!(a.len(), 64);
        assert_eq!(a, input_digest(&[&p]).unwrap().unwrap());
    }
}
