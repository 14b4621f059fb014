use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};

use layerlen::algebra::Algebra;
use layerlen::bounds::{bigteo_bound, brute_findim, mhlm2_bound, radcube_bound};
use layerlen::decompose::{decompose, Certificate};
use layerlen::enumerate::{enumerate_modules, DEFAULT_ENUM_BUDGET};
use layerlen::format::{parse_algebra, parse_module, print_module};
use layerlen::functor::{
    layer_length, loewy_length, parse_functor, parse_vertex_set, radical_layer_length, socle_layer_length, VertexSet,
};
use layerlen::psi::psi;
use layerlen::rep::{Rep, DEFAULT_PD_CAP};
use layerlen::verify::{verify, Status, Theorem, VerifyConfig, DEFAULT_SEED};
use layerlen::Error;

#[derive(Parser)]
#[command(name = "layerlen", version, about = "Radical layer lengths and finitistic dimension bounds for bound quiver algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum LayerMode {
    Radical,
    Socle,
}

#[derive(Clone, Copy, ValueEnum)]
enum BoundKind {
    Bigteo,
    Mhlm2,
    Radcube,
}

#[derive(Subcommand)]
enum Command {
    /// Validate an algebra and print its basic invariants.
    Check { algebra: PathBuf },
    /// Evaluate a functor expression on a module.
    FunctorEval {
        algebra: PathBuf,
        module: PathBuf,
        #[arg(long)]
        functor: String,
    },
    /// Layer length along `--beta`, or the radical/socle layer length of `--alpha`.
    Layer {
        algebra: PathBuf,
        module: PathBuf,
        #[arg(long)]
        alpha: String,
        #[arg(long, conflicts_with = "mode")]
        beta: Option<String>,
        #[arg(long, value_enum)]
        mode: Option<LayerMode>,
    },
    /// Check a comparison statement on enumerated and random modules.
    Verify {
        algebra: PathBuf,
        /// A statement name, or `all`.
        #[arg(long)]
        theorem: String,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, default_value_t = 3)]
        max_dim: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, num_args = 0..)]
        simples: Option<Vec<String>>,
    },
    /// The Igusa-Todorov phi/Psi data of a module.
    Psi {
        algebra: PathBuf,
        module: PathBuf,
        #[arg(long, default_value_t = DEFAULT_PD_CAP)]
        pd_cap: usize,
    },
    /// An upper bound for the finitistic dimension.
    FindimBound {
        algebra: PathBuf,
        #[arg(long, num_args = 0.., default_value = "")]
        simples: Vec<String>,
        #[arg(long, default_value_t = 1)]
        ell: usize,
        #[arg(long, default_value_t = 3)]
        enum_bound: usize,
        #[arg(long, value_enum, default_value = "bigteo")]
        mode: BoundKind,
        #[arg(long, default_value_t = DEFAULT_PD_CAP)]
        pd_cap: usize,
    },
    /// All modules up to isomorphism with total dimension at most `--max-dim`.
    Enumerate {
        algebra: PathBuf,
        #[arg(long)]
        max_dim: usize,
    },
    /// Krull-Schmidt decomposition of a module.
    Decompose { algebra: PathBuf, module: PathBuf },
}

enum Failure {
    Error(Error),
    Io(PathBuf, std::io::Error),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

fn load_algebra(path: &Path) -> Result<Arc<Algebra>, Failure> {
    Ok(parse_algebra(&read(path)?)?)
}

fn load_module(path: &Path, alg: &Arc<Algebra>) -> Result<Rep, Failure> {
    Ok(parse_module(&read(path)?, alg)?)
}

fn algebra_id(path: &Path) -> String {
    path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
}

fn simple_set(parts: &[String], alg: &Algebra) -> Result<VertexSet, Failure> {
    Ok(parse_vertex_set(&parts.join(","), alg)?)
}

fn run(cli: Cli, out: &mut String) -> Result<(), Failure> {
    match cli.command {
        Command::Check { algebra } => {
            let alg = load_algebra(&algebra)?;
            let q = alg.quiver();
            let basis: Vec<String> = alg.basis().iter().map(|p| p.display(q)).collect();
            out.push_str(&format!("field p={}\n", alg.field().p()));
            out.push_str(&format!("vertices {}\n", q.num_vertices()));
            out.push_str(&format!("arrows {}\n", q.arrows().len()));
            out.push_str(&format!("dim {}\n", alg.dim()));
            out.push_str(&format!("basis {}\n", basis.join(" ")));
            out.push_str(&format!("loewy_length {}\n", loewy_length(&Rep::regular(&alg))));
            out.push_str(&format!("nil_index {}\n", alg.nil_index()));
        }
        Command::FunctorEval { algebra, module, functor } => {
            let alg = load_algebra(&algebra)?;
            let m = load_module(&module, &alg)?;
            let value = parse_functor(&functor, &alg)?.evaluate(&m)?;
            out.push_str(&print_module(&value));
        }
        Command::Layer { algebra, module, alpha, beta, mode } => {
            let alg = load_algebra(&algebra)?;
            let m = load_module(&module, &alg)?;
            let a = parse_functor(&alpha, &alg)?;
            let value = match (beta, mode.unwrap_or(LayerMode::Radical)) {
                (Some(b), _) => layer_length(&a, &parse_functor(&b, &alg)?, &m)?.to_string(),
                (None, LayerMode::Radical) => radical_layer_length(&a, &m)?.to_string(),
                (None, LayerMode::Socle) => socle_layer_length(&a, &m)?.to_string(),
            };
            out.push_str(&format!("{value}\n"));
        }
        Command::Verify { algebra, theorem, samples, max_dim, seed, simples } => {
            let alg = load_algebra(&algebra)?;
            let theorems = if theorem == "all" { Theorem::ALL.to_vec() } else { vec![theorem.parse()?] };
            let cfg = VerifyConfig {
                max_dim,
                samples,
                seed,
                simples: simples.map(|s| simple_set(&s, &alg)).transpose()?,
                budget: DEFAULT_ENUM_BUDGET,
                ..VerifyConfig::default()
            };
            let id = algebra_id(&algebra);
            let mut failed = false;
            for t in theorems {
                let report = verify(&alg, &id, t, &cfg)?;
                failed |= report.status == Status::Fail;
                out.push_str(&format!("{}\n", report.to_json_line()));
            }
            if failed {
                return Err(Failure::Verification);
            }
        }
        Command::Psi { algebra, module, pd_cap } => {
            let alg = load_algebra(&algebra)?;
            let m = load_module(&module, &alg)?;
            out.push_str(&format!("{}\n", serde_json::to_string(&psi(&m, pd_cap)).expect("report serializes")));
        }
        Command::FindimBound { algebra, simples, ell, enum_bound, mode, pd_cap } => {
            let alg = load_algebra(&algebra)?;
            let s = simple_set(&simples, &alg)?;
            let mut report = match mode {
                BoundKind::Bigteo => bigteo_bound(&alg, &s, ell, enum_bound, pd_cap, DEFAULT_ENUM_BUDGET)?,
                BoundKind::Mhlm2 => mhlm2_bound(&alg, &s, pd_cap)?,
                BoundKind::Radcube => radcube_bound(&alg, pd_cap)?,
            };
            report.compare_with(brute_findim(&alg, enum_bound, pd_cap, DEFAULT_ENUM_BUDGET)?);
            out.push_str(&format!("{}\n", serde_json::to_string(&report).expect("report serializes")));
        }
        Command::Enumerate { algebra, max_dim } => {
            let alg = load_algebra(&algebra)?;
            let en = enumerate_modules(&alg, max_dim, DEFAULT_ENUM_BUDGET)?;
            out.push_str(&format!("# {} isomorphism classes of total dimension <= {max_dim}\n", en.modules.len()));
            if en.probabilistic {
                out.push_str("# some isomorphism tests were randomized\n");
            }
            for m in &en.modules {
                out.push_str(&format!("\n{}", print_module(m)));
            }
        }
        Command::Decompose { algebra, module } => {
            let alg = load_algebra(&algebra)?;
            let m = load_module(&module, &alg)?;
            let d = decompose(&m);
            out.push_str(&format!(
                "# {} indecomposable summands, {} up to isomorphism\n",
                d.total_count(),
                d.summands.len()
            ));
            for s in &d.summands {
                let cert = match s.certificate {
                    Certificate::Certified => "certified",
                    Certificate::Heuristic => "heuristic",
                };
                out.push_str(&format!("\n# multiplicity {} ({cert})\n{}", s.multiplicity, print_module(&s.module)));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let result = run(cli, &mut out);
    // A closed pipe downstream is not an error worth reporting.
    let _ = std::io::stdout().write_all(out.as_bytes());
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Io(path, e)) => {
            eprintln!("error: {}: {e}", path.display());
            ExitCode::from(2)
        }
        Err(Failure::Error(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::BudgetExceeded(_) => 3,
                Error::HypothesisFailed(_) => 1,
                _ => 2,
            })
        }
    }
}
