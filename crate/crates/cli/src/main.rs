use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::Zero;
use serde_json::{json, Value};

use spherocheck_core::exactla::{QMatrix, SampleConfig};
use spherocheck_core::mult_free::sym_decomposition;
use spherocheck_core::pair_spec::{parse_pair_spec, PairSpec};
use spherocheck_core::rep_build::{assemble, DEFAULT_DIM_CAP};
use spherocheck_core::sphericity::{
    is_bounded, is_spherical_grassmannian, is_spherical_projective, normalizer_basis,
    normalizer_in_gl, normalizer_report, Status,
};
use spherocheck_core::symplectic::sample_moment_points;
use spherocheck_core::table61::{
    builtin_table, enumerate, load_table, negative_controls, run_control, to_tsv, verify_all,
    DEFAULT_MAX_DIM,
};
use spherocheck_core::Error;

const SCHEMA: &str = "spherocheck.report/1";
const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Parser)]
#[command(name = "spherocheck", version, about = "Exact sphericity checks for representations of reductive Lie algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Sampling {
    /// Random points to try before giving up on a witness.
    #[arg(long, default_value_t = 16)]
    trials: usize,
    /// Seed for the point sampler; decimal or 0x-prefixed hex.
    #[arg(long, env = "SPHEROCHECK_SEED", value_parser = parse_seed, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Bound on numerators and denominators of sampled coordinates.
    #[arg(long, default_value_t = 7)]
    height: u64,
}

impl Sampling {
    fn config(self) -> SampleConfig {
        SampleConfig {
            seed: self.seed,
            height_bound: self.height,
            trials: self.trials,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a Borel subalgebra has an open orbit on P(W) or Gr(r, W).
    CheckSpherical {
        spec: String,
        #[command(flatten)]
        sampling: Sampling,
        /// Test the Grassmannian of r-planes instead of projective space.
        #[arg(long)]
        gr: Option<usize>,
    },
    /// Whether the subalgebra of sl(W) is bounded.
    CheckBounded {
        spec: String,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Decompose the degree-d polynomial functions on W.
    DecomposeSym {
        spec: String,
        #[arg(long)]
        degree: usize,
    },
    /// Normalizer of the subalgebra in gl(W).
    Normalizer {
        spec: String,
        /// Solve the full linear system in gl(W) instead of using the commutant.
        #[arg(long)]
        generic: bool,
        /// Print the basis matrices.
        #[arg(long)]
        basis: bool,
    },
    /// Check every catalogue instance up to a dimension bound.
    VerifyTable {
        #[arg(long, default_value_t = DEFAULT_MAX_DIM)]
        max_dim: usize,
        /// Restrict to these entry ids.
        #[arg(long)]
        entry: Vec<String>,
        /// Catalogue file to use instead of the built-in one.
        #[arg(long)]
        table: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Sample points of the moment map image for T*P^{n-1}.
    MomentImage {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 10)]
        samples: usize,
        #[arg(long, env = "SPHEROCHECK_SEED", value_parser = parse_seed, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Run the known non-spherical examples.
    NegativeControls {
        #[command(flatten)]
        sampling: Sampling,
    },
}

fn parse_seed(s: &str) -> Result<u64, String> {
    let s = s.trim();
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    parsed.map_err(|e| format!("invalid seed {s:?}: {e}"))
}

enum Failure {
    Assertion,
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn matrix_json(m: &QMatrix) -> Value {
    let rows: Vec<Vec<String>> = (0..m.rows())
        .map(|r| m.row(r).iter().map(ToString::to_string).collect())
        .collect();
    json!(rows)
}

fn envelope(command: &str, input: Value, result: Value, started: Instant) -> Value {
    json!({
        "schema": SCHEMA,
        "tool": format!("spherocheck {}", env!("CARGO_PKG_VERSION")),
        "command": command,
        "input": input,
        "result": result,
        "millis": started.elapsed().as_millis() as u64,
    })
}

fn sampling_json(spec: &PairSpec, cfg: &SampleConfig) -> Value {
    json!({
        "spec": spec.to_string(),
        "seed": cfg.seed,
        "trials": cfg.trials,
        "height": cfg.height_bound,
    })
}

/// Writes to stdout, treating a closed pipe as the reader having stopped.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        if e.kind() != std::io::ErrorKind::BrokenPipe {
            eprintln!("error: writing output: {e}");
        }
    }
}

fn print_json(v: &Value) {
    emit(&format!("{}\n", serde_json::to_string_pretty(v).expect("values serialize")));
}

fn run(cli: Cli) -> Result<(), Failure> {
    let started = Instant::now();
    match cli.command {
        Command::CheckSpherical { spec, sampling, gr } => {
            let spec = parse_pair_spec(&spec)?;
            let cfg = sampling.config();
            let sub = assemble(&spec, DEFAULT_DIM_CAP)?;
            let verdict = match gr {
                Some(r) => is_spherical_grassmannian(&sub, r, &cfg)?,
                None => is_spherical_projective(&sub, &cfg)?,
            };
            let mut input = sampling_json(&spec, &cfg);
            input["gr"] = json!(gr);
            print_json(&envelope("check-spherical", input, json!(verdict), started));
        }
        Command::CheckBounded { spec, sampling } => {
            let spec = parse_pair_spec(&spec)?;
            let cfg = sampling.config();
            let verdict = is_bounded(&assemble(&spec, DEFAULT_DIM_CAP)?, &cfg)?;
            let bounded = match verdict.status {
                Status::Spherical => json!(true),
                Status::NotSpherical => json!(false),
                Status::Undetermined => Value::Null,
            };
            let result = json!({ "bounded": bounded, "verdict": verdict });
            print_json(&envelope("check-bounded", sampling_json(&spec, &cfg), result, started));
        }
        Command::DecomposeSym { spec, degree } => {
            let spec = parse_pair_spec(&spec)?;
            let g = sym_decomposition(&spec, degree)?;
            let input = json!({ "spec": spec.to_string(), "degree": degree });
            let result = json!({
                "decomposition": g,
                "total_dim": g.total_dim().to_string(),
                "max_multiplicity": g.max_multiplicity(),
            });
            print_json(&envelope("decompose-sym", input, result, started));
        }
        Command::Normalizer { spec, generic, basis } => {
            let spec = parse_pair_spec(&spec)?;
            let sub = assemble(&spec, DEFAULT_DIM_CAP)?;
            let report = normalizer_report(&sub);
            let mut result = json!({ "report": report });
            let elements = if generic {
                let n = normalizer_in_gl(&sub.basis, sub.ambient_dim);
                result["generic_dim"] = json!(n.len());
                n
            } else if basis {
                normalizer_basis(&sub)
            } else {
                Vec::new()
            };
            if basis {
                result["basis"] = Value::Array(elements.iter().map(matrix_json).collect());
            }
            let input = json!({ "spec": spec.to_string(), "generic": generic });
            print_json(&envelope("normalizer", input, result, started));
        }
        Command::VerifyTable {
            max_dim,
            entry,
            table,
            format,
            sampling,
        } => {
            let rows = match &table {
                Some(path) => load_table(path)?,
                None => builtin_table(),
            };
            let mut found = enumerate(&rows, max_dim)?;
            if !entry.is_empty() {
                if let Some(missing) = entry.iter().find(|id| !rows.iter().any(|r| &r.entry_id == *id)) {
                    return Err(Error::InvalidArgument(format!("no entry {missing:?} in the table")).into());
                }
                found.instances.retain(|i| entry.contains(&i.entry_id));
                found.rejected.retain(|r| entry.contains(&r.entry_id));
            }
            let cfg = sampling.config();
            let reports = verify_all(&found.instances, &cfg);
            let failed = reports.iter().filter(|r| !r.acceptable()).count();
            match format {
                Format::Tsv => {
                    emit(&to_tsv(&reports));
                    for r in &found.rejected {
                        eprintln!("note: {} {:?} does not describe a pair: {}", r.entry_id, r.text, r.error);
                    }
                    eprintln!("{} instances, {} failed", reports.len(), failed);
                }
                Format::Json => {
                    let input = json!({
                        "max_dim": max_dim,
                        "entries": entry,
                        "table": table.as_ref().map(|p| p.display().to_string()),
                        "seed": cfg.seed,
                        "trials": cfg.trials,
                        "height": cfg.height_bound,
                    });
                    let result = json!({
                        "reports": reports,
                        "rejected": found.rejected,
                        "failed": failed,
                    });
                    print_json(&envelope("verify-table", input, result, started));
                }
            }
            if failed > 0 {
                return Err(Failure::Assertion);
            }
        }
        Command::MomentImage { n, samples, seed } => {
            let cfg = SampleConfig {
                seed,
                ..SampleConfig::default()
            };
            let points = sample_moment_points(n, samples, &cfg)?;
            let mut all_ok = true;
            let listed: Vec<Value> = points
                .iter()
                .map(|x| {
                    let trace_zero = x.trace().is_zero();
                    let square_zero = x.mul(x).is_zero();
                    let rank = x.rank();
                    all_ok &= trace_zero && square_zero && rank <= 1;
                    json!({
                        "matrix": matrix_json(x),
                        "trace_zero": trace_zero,
                        "square_zero": square_zero,
                        "rank": rank,
                    })
                })
                .collect();
            let input = json!({ "n": n, "samples": samples, "seed": seed });
            let result = json!({ "points": listed, "all_ok": all_ok });
            print_json(&envelope("moment-image", input, result, started));
            if !all_ok {
                return Err(Failure::Assertion);
            }
        }
        Command::NegativeControls { sampling } => {
            let cfg = sampling.config();
            let reports: Vec<_> = negative_controls().iter().map(|c| run_control(c, &cfg)).collect();
            let failed = reports.iter().filter(|r| !r.passed()).count();
            let input = json!({ "seed": cfg.seed, "trials": cfg.trials, "height": cfg.height_bound });
            let result = json!({ "controls": reports, "failed": failed });
            print_json(&envelope("negative-controls", input, result, started));
            if failed > 0 {
                return Err(Failure::Assertion);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Assertion) => ExitCode::from(1),
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            match e {
                Error::CapExceeded { .. } => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}
