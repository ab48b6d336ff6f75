//! `gridrep`: command-line access to grid-representation computations.
//!
//! Every verb reads and writes the JSON formats of `gridrep::io`. Exit
//! status is 0 on success, 1 on a domain error or malformed input, and 2
//! when `verify` finds a failing axiom.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use gridrep::clustering::{clustering_grid, densities, two_param_invariant, DensityEstimator, ThresholdGrid};
use gridrep::decomposition::decompose;
use gridrep::grid::{Direction, GridRep, GridShape};
use gridrep::hom::{ext_dim, hom_basis, tau, tau_inv};
use gridrep::io::{
    parse_json, read_point_cloud, read_rep, to_json, write_rep, CustomTripleSpec, DecompositionJson, ExtJson, HomJson,
    InvariantJson, KnitJson, SequenceJson, ValidateJson, VerifyJson, FORMAT_VERSION,
};
use gridrep::knitting::{knit, DEFAULT_CAP};
use gridrep::linalg::Field;
use gridrep::torsion::{cotorsion_cover, cotorsion_envelope, t_epi_kernel, torsion_torsionfree, PresetName, TriplePreset};
use gridrep::verify::{verify_triple, verify_triple_classes, Universe};

#[derive(Parser, Debug)]
#[command(name = "gridrep", version, about = "Exact computations with representations of commutative grids")]
struct Cli {
    /// Worker threads for internal parallelism (0 = all cores).
    #[arg(long, global = true, env = "GRIDREP_THREADS")]
    threads: Option<usize>,
    /// Write the main artifact here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Dir {
    /// Horizontal (index i).
    H,
    /// Vertical (index j).
    V,
}

impl From<Dir> for Direction {
    fn from(d: Dir) -> Direction {
        match d {
            Dir::H => Direction::Horizontal,
            Dir::V => Direction::Vertical,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Preset {
    Epistar,
    Monostar,
    Monomono,
    Epiepi,
    Custom,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that a representation is well formed and report its direction predicates.
    Validate {
        /// Representation JSON.
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Krull–Schmidt decomposition with certificates.
    Decompose {
        /// Representation JSON.
        #[arg(long = "in")]
        input: PathBuf,
        /// Seed for the randomized splitting search.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// A basis of Hom(X, Y).
    Hom {
        /// Source representation.
        #[arg(long)]
        x: PathBuf,
        /// Target representation.
        #[arg(long)]
        y: PathBuf,
    },
    /// dim Ext^k(X, Y).
    Ext {
        /// First argument.
        #[arg(long)]
        x: PathBuf,
        /// Second argument.
        #[arg(long)]
        y: PathBuf,
        /// The degree k.
        #[arg(long, default_value_t = 1)]
        degree: usize,
    },
    /// The Auslander–Reiten translate τX (or τ⁻X with --inverse).
    Tau {
        /// Representation JSON.
        #[arg(long = "in")]
        input: PathBuf,
        /// Apply τ⁻ instead.
        #[arg(long)]
        inverse: bool,
    },
    /// The epi-kernel functor: a representation with epimorphic horizontal maps to the grid with one row fewer.
    Tfun {
        /// Representation JSON.
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// The cotorsion cover (or envelope) sequence along a direction.
    Cover {
        /// Representation JSON.
        #[arg(long = "in")]
        input: PathBuf,
        /// Direction of the slices.
        #[arg(long, value_enum, default_value = "h")]
        dir: Dir,
        /// Produce the envelope sequence instead.
        #[arg(long)]
        envelope: bool,
    },
    /// The torsion / torsion-free sequence for the epi (or mono) torsion class along a direction.
    SplitTf {
        /// Representation JSON.
        #[arg(long = "in")]
        input: PathBuf,
        /// Direction of the slices.
        #[arg(long, value_enum, default_value = "h")]
        dir: Dir,
    },
    /// Knit the Auslander–Reiten quiver of the m × n grid.
    Knit {
        /// Columns.
        #[arg(long)]
        m: usize,
        /// Rows.
        #[arg(long)]
        n: usize,
        /// Maximum number of τ⁻ steps.
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        /// Field: `Q` or `Fp:<prime>`.
        #[arg(long, default_value = "Fp:101")]
        field: String,
    },
    /// Verify the axioms of a cotorsion torsion triple over all indecomposables.
    Verify {
        /// The triple to check.
        #[arg(long, value_enum)]
        preset: Preset,
        /// Columns.
        #[arg(long)]
        m: usize,
        /// Rows.
        #[arg(long)]
        n: usize,
        /// Field: `Q` or `Fp:<prime>`.
        #[arg(long, default_value = "Fp:101")]
        field: String,
        /// Custom triple JSON (required with `--preset custom`).
        #[arg(long)]
        spec: Option<PathBuf>,
        /// Require Ext^i = 0 for all i ≥ 1 in the cotorsion conditions.
        #[arg(long)]
        strict: bool,
    },
    /// Filtered single-linkage clustering of a point cloud.
    Cluster {
        /// CSV of points (optional `density` last column with a header row).
        #[arg(long)]
        points: PathBuf,
        /// Comma-separated increasing scales.
        #[arg(long, value_delimiter = ',', required = true)]
        eps: Vec<f64>,
        /// `auto:<levels>` for density quantiles, or comma-separated decreasing thresholds.
        #[arg(long, default_value = "auto:3")]
        deltas: String,
        /// Neighbour count of the kNN density estimate.
        #[arg(long, default_value_t = 5)]
        k: usize,
        /// Use a Gaussian kernel density with this bandwidth instead.
        #[arg(long)]
        bandwidth: Option<f64>,
        /// Field: `Q` or `Fp:<prime>`.
        #[arg(long, default_value = "Fp:101")]
        field: String,
        /// Write the invariant report here.
        #[arg(long)]
        invariant: Option<PathBuf>,
        /// Seed for the decomposition.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Why a command failed.
enum Failure {
    /// A domain error or malformed input.
    Error(String),
    /// `verify` found a failing axiom (the report was still written).
    VerifyFailed,
}

impl From<gridrep::Error> for Failure {
    fn from(e: gridrep::Error) -> Failure {
        Failure::Error(e.to_string())
    }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Error(format!("{}: {e}", path.display())))
}

fn load_rep(path: &Path) -> Result<Arc<GridRep>, Failure> {
    let text = read_text(path)?;
    read_rep(&text).map(Arc::new).map_err(|e| Failure::Error(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Error(format!("{}: {e}", path.display())))
}

fn shape(m: usize, n: usize) -> Result<GridShape, Failure> {
    Ok(GridShape::new(m, n)?)
}

fn run(cli: Cli) -> Result<String, Failure> {
    match cli.command {
        Command::Validate { input } => Ok(to_json(&ValidateJson::new(&*load_rep(&input)?))),
        Command::Decompose { input, seed } => {
            let x = load_rep(&input)?;
            Ok(to_json(&DecompositionJson::new(&decompose(&x, seed)?)))
        }
        Command::Hom { x, y } => {
            let (x, y) = (load_rep(&x)?, load_rep(&y)?);
            Ok(to_json(&HomJson::new(&hom_basis(&x, &y)?)))
        }
        Command::Ext { x, y, degree } => {
            let (x, y) = (load_rep(&x)?, load_rep(&y)?);
            Ok(to_json(&ExtJson { version: FORMAT_VERSION.into(), dim: ext_dim(&x, &y, degree)?, degree }))
        }
        Command::Tau { input, inverse } => {
            let x = load_rep(&input)?;
            Ok(write_rep(&if inverse { tau_inv(&x) } else { tau(&x) }))
        }
        Command::Tfun { input } => Ok(write_rep(&t_epi_kernel(&load_rep(&input)?)?.rep)),
        Command::Cover { input, dir, envelope } => {
            let x = load_rep(&input)?;
            let seq = if envelope { cotorsion_envelope(&x, dir.into())? } else { cotorsion_cover(&x, dir.into())? };
            Ok(to_json(&SequenceJson::new(&seq)))
        }
        Command::SplitTf { input, dir } => {
            Ok(to_json(&SequenceJson::new(&torsion_torsionfree(&load_rep(&input)?, dir.into())?)))
        }
        Command::Knit { m, n, cap, field } => {
            let ar = knit(shape(m, n)?, Field::parse(&field)?, cap)?;
            Ok(to_json(&KnitJson::new(&ar)))
        }
        Command::Verify { preset, m, n, field, spec, strict } => {
            let s = shape(m, n)?;
            let field = Field::parse(&field)?;
            let ar = knit(s, field, DEFAULT_CAP)?;
            let u = Universe::from_quiver(&ar)?;
            let (label, report) = match preset {
                Preset::Custom => {
                    let path = spec.ok_or_else(|| Failure::Error("--preset custom needs --spec".into()))?;
                    let spec: CustomTripleSpec =
                        parse_json(&read_text(&path)?).map_err(|e| Failure::Error(format!("{}: {e}", path.display())))?;
                    let classes = [spec.classes[0].resolve(&u)?, spec.classes[1].resolve(&u)?, spec.classes[2].resolve(&u)?];
                    let gens = match &spec.generators {
                        Some(list) => {
                            let mut out = Vec::new();
                            for g in list {
                                out.push(Arc::new(g.to_rep()?));
                            }
                            Some(out)
                        }
                        None => None,
                    };
                    ("custom".to_string(), verify_triple_classes(&u, spec.kind, &classes, gens.as_deref(), strict)?)
                }
                named => {
                    let name = match named {
                        Preset::Epistar => PresetName::EpiStar,
                        Preset::Monostar => PresetName::MonoStar,
                        Preset::Monomono => PresetName::MonoMono,
                        Preset::Epiepi => PresetName::EpiEpi,
                        Preset::Custom => unreachable!(),
                    };
                    (name.to_string(), verify_triple(&u, &TriplePreset::new(name, s, field), strict)?)
                }
            };
            let text = to_json(&VerifyJson::new(&label, s, field, strict, &report));
            if report.overall {
                Ok(text)
            } else {
                emit(cli.out.as_deref(), &text)?;
                Err(Failure::VerifyFailed)
            }
        }
        Command::Cluster { points, eps, deltas, k, bandwidth, field, invariant, seed } => {
            let file = fs::File::open(&points).map_err(|e| Failure::Error(format!("{}: {e}", points.display())))?;
            let pc = read_point_cloud(file).map_err(|e| Failure::Error(format!("{}: {e}", points.display())))?;
            let field = Field::parse(&field)?;
            let estimator = match bandwidth {
                Some(bandwidth) => DensityEstimator::Gaussian { bandwidth },
                None => DensityEstimator::Knn { k },
            };
            let dens = densities(&pc, estimator)?;
            let tg = match deltas.strip_prefix("auto:") {
                Some(levels) => {
                    let levels: usize =
                        levels.parse().map_err(|_| Failure::Error(format!("invalid level count in {deltas:?}")))?;
                    ThresholdGrid::with_quantiles(eps, &dens, levels)?
                }
                None => {
                    let list: Result<Vec<f64>, _> = deltas.split(',').map(|d| d.trim().parse::<f64>()).collect();
                    let list = list.map_err(|_| Failure::Error(format!("invalid density thresholds {deltas:?}")))?;
                    ThresholdGrid::new(eps, list)?
                }
            };
            let res = clustering_grid(&pc, &dens, &tg, field)?;
            if let Some(path) = invariant {
                let inv = two_param_invariant(&res.rep, seed)?;
                write_file(&path, &to_json(&InvariantJson::new(&res, &inv)))?;
            }
            Ok(write_rep(&res.rep))
        }
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => write_file(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: cannot configure {t} threads: {e}");
            return ExitCode::from(1);
        }
    }
    let out = cli.out.clone();
    match run(cli) {
        Ok(text) => match emit(out.as_deref(), &text) {
            Ok(()) => ExitCode::SUCCESS,
            Err(Failure::Error(e)) => {
                eprintln!("error: {e}");
                ExitCode::from(1)
            }
            Err(Failure::VerifyFailed) => ExitCode::from(2),
        },
        Err(Failure::Error(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::VerifyFailed) => {
            eprintln!("verification failed");
            ExitCode::from(2)
        }
    }
}
