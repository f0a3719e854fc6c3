use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use metakernel::{ErrorKind, KernelFamily};
use metakernel_cli::commands::{execute, CommandSpec};

/// Environment variable overriding the default output root (`./runs`).
const OUT_ROOT_ENV: &str = "METAKERNEL_RUNS_DIR";

#[derive(Parser)]
#[command(
    name = "metakernel",
    version,
    about = "Deformed coherent-state kernels: data generation, SVM training, \
             grid search, kernel/boundary exports, and feature-space geometry checks"
)]
struct Cli {
    /// Output directory (default: $METAKERNEL_RUNS_DIR or ./runs, plus a
    /// timestamped subdirectory per run).
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Commands,
}

#[derive(Subcommand)]
enum Commands {
    /// Dataset generation and inspection.
    Data {
        #[command(subcommand)]
        sub: DataCmd,
    },
    /// Kernel function exports.
    Kernel {
        #[command(subcommand)]
        sub: KernelCmd,
    },
    /// Train an SVM on a CSV dataset and save the model as JSON.
    Train(TrainArgs),
    /// Score a saved model against a CSV dataset.
    Evaluate {
        /// Path to a model.json produced by `train` or `experiment`.
        #[arg(long)]
        model: PathBuf,
        /// CSV dataset with header f0,...,f{d-1},label.
        #[arg(long)]
        data: PathBuf,
    },
    /// Exhaustive hyperparameter search for one kernel family.
    GridSearch(GridSearchArgs),
    /// Full protocol per family: grid search, final fit, learning curve.
    Experiment(ExperimentArgs),
    /// Export a decision-value grid for a saved 2-d model.
    Boundary(BoundaryArgs),
    /// Verify feature-space curvature and export the revolution surface.
    Geometry(GeometryArgs),
}

#[derive(Subcommand)]
enum DataCmd {
    /// Generate a synthetic dataset (moons or circles) as CSV.
    Gen {
        /// moons | circles
        #[arg(long)]
        dataset: String,
        #[arg(long, default_value_t = 1000)]
        n: usize,
        /// Gaussian noise standard deviation (defaults: moons 0.3, circles 0.1).
        #[arg(long)]
        noise: Option<f64>,
        #[arg(long, default_value_t = 0.5)]
        inner_radius_factor: f64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Load and summarize a CSV dataset.
    Load {
        #[arg(long)]
        path: PathBuf,
    },
}

#[derive(Subcommand)]
enum KernelCmd {
    /// Sample Re K((0,0), x') over x' in [-pi, pi]^2 as plot-ready CSV.
    Shape {
        /// alpha-su2 | alpha-su11 | rbf
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        #[arg(long, default_value_t = 1.0)]
        k: f64,
        #[arg(long, default_value_t = 1.0)]
        z: f64,
        #[arg(long, default_value_t = 1.0)]
        gamma: f64,
        /// Samples per axis (odd values include the exact center).
        #[arg(long, default_value_t = 101)]
        resolution: usize,
    },
}

#[derive(Args)]
struct TrainArgs {
    /// CSV dataset with header f0,...,f{d-1},label.
    #[arg(long)]
    data: PathBuf,
    /// alpha-su2 | alpha-su11 | rbf
    #[arg(long)]
    family: String,
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    #[arg(long, default_value_t = 1.0)]
    k: f64,
    #[arg(long, default_value_t = 1.0)]
    z: f64,
    #[arg(long, default_value_t = 1.0)]
    gamma: f64,
    #[arg(long, default_value_t = 1.0)]
    c: f64,
    #[arg(long, default_value_t = 1e-3)]
    tolerance: f64,
    #[arg(long, default_value_t = 100_000)]
    max_passes: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Skip the [0, pi] feature scaling (on by default; the deformed
    /// kernels are periodic and alias beyond 2 pi).
    #[arg(long)]
    no_scale: bool,
}

#[derive(Args)]
struct GridSearchArgs {
    /// moons | circles | iris | path to a CSV file.
    #[arg(long)]
    dataset: String,
    #[arg(long, default_value_t = 1000)]
    n: usize,
    #[arg(long)]
    noise: Option<f64>,
    #[arg(long, default_value_t = 0.5)]
    inner_radius_factor: f64,
    /// alpha-su2 | alpha-su11 | rbf
    #[arg(long)]
    family: String,
    /// accuracy | macro-precision
    #[arg(long, default_value = "accuracy")]
    metric: String,
    /// Override the default alpha grid (comma separated).
    #[arg(long, value_delimiter = ',')]
    alphas: Vec<f64>,
    #[arg(long, value_delimiter = ',')]
    ks: Vec<f64>,
    #[arg(long, value_delimiter = ',')]
    zs: Vec<f64>,
    #[arg(long, value_delimiter = ',')]
    cs: Vec<f64>,
    #[arg(long, value_delimiter = ',')]
    gammas: Vec<f64>,
    #[arg(long, default_value_t = 0.7)]
    train_fraction: f64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 1e-3)]
    tolerance: f64,
    #[arg(long, default_value_t = 100_000)]
    max_passes: usize,
}

#[derive(Args)]
struct ExperimentArgs {
    /// moons | circles | iris | path to a CSV file.
    #[arg(long)]
    dataset: String,
    #[arg(long, default_value_t = 1000)]
    n: usize,
    #[arg(long)]
    noise: Option<f64>,
    #[arg(long, default_value_t = 0.5)]
    inner_radius_factor: f64,
    /// Kernel family, or "all" for alpha-su2, alpha-su11, and rbf.
    #[arg(long, default_value = "all")]
    family: String,
    #[arg(long, default_value = "accuracy")]
    metric: String,
    #[arg(long, default_value_t = 0.7)]
    train_fraction: f64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 1e-3)]
    tolerance: f64,
    #[arg(long, default_value_t = 100_000)]
    max_passes: usize,
    /// Learning-curve training fractions.
    #[arg(long, value_delimiter = ',', default_values_t = [0.1, 0.25, 0.5, 0.75, 1.0])]
    lc_fractions: Vec<f64>,
    #[arg(long, default_value_t = 5)]
    lc_repeats: usize,
}

#[derive(Args)]
struct BoundaryArgs {
    #[arg(long)]
    model: PathBuf,
    #[arg(long, default_value_t = -1.5)]
    x_min: f64,
    #[arg(long, default_value_t = 2.5)]
    x_max: f64,
    #[arg(long, default_value_t = -1.5)]
    y_min: f64,
    #[arg(long, default_value_t = 2.0)]
    y_max: f64,
    #[arg(long, default_value_t = 200)]
    resolution_x: usize,
    #[arg(long, default_value_t = 200)]
    resolution_y: usize,
}

#[derive(Args)]
struct GeometryArgs {
    /// alpha-su2 | alpha-su11
    #[arg(long)]
    family: String,
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    #[arg(long, default_value_t = 1.0)]
    k: f64,
    #[arg(long, default_value_t = 20)]
    probes: usize,
    #[arg(long, default_value_t = 64)]
    mesh_resolution: usize,
}

fn default_noise(dataset: &str, noise: Option<f64>) -> f64 {
    noise.unwrap_or(match dataset {
        "moons" => 0.3,
        "circles" => 0.1,
        _ => 0.0,
    })
}

fn to_spec(command: Commands) -> CommandSpec {
    match command {
        Commands::Data { sub } => match sub {
            DataCmd::Gen {
                dataset,
                n,
                noise,
                inner_radius_factor,
                seed,
            } => CommandSpec::DataGen {
                noise: default_noise(&dataset, noise),
                dataset,
                n,
                inner_radius_factor,
                seed,
            },
            DataCmd::Load { path } => CommandSpec::DataLoad {
                path: path.to_string_lossy().into_owned(),
            },
        },
        Commands::Kernel { sub } => match sub {
            KernelCmd::Shape {
                family,
                alpha,
                k,
                z,
                gamma,
                resolution,
            } => CommandSpec::KernelShape {
                family,
                alpha,
                k,
                z,
                gamma,
                resolution,
            },
        },
        Commands::Train(args) => CommandSpec::Train {
            data: args.data.to_string_lossy().into_owned(),
            family: args.family,
            alpha: args.alpha,
            k: args.k,
            z: args.z,
            gamma: args.gamma,
            c: args.c,
            tolerance: args.tolerance,
            max_passes: args.max_passes,
            seed: args.seed,
            scale: !args.no_scale,
        },
        Commands::Evaluate { model, data } => CommandSpec::Evaluate {
            model: model.to_string_lossy().into_owned(),
            data: data.to_string_lossy().into_owned(),
        },
        Commands::GridSearch(args) => CommandSpec::GridSearch {
            noise: default_noise(&args.dataset, args.noise),
            dataset: args.dataset,
            n: args.n,
            inner_radius_factor: args.inner_radius_factor,
            family: args.family,
            metric: args.metric,
            alphas: args.alphas,
            ks: args.ks,
            zs: args.zs,
            cs: args.cs,
            gammas: args.gammas,
            train_fraction: args.train_fraction,
            seed: args.seed,
            tolerance: args.tolerance,
            max_passes: args.max_passes,
        },
        Commands::Experiment(args) => CommandSpec::Experiment {
            noise: default_noise(&args.dataset, args.noise),
            families: if args.family == "all" {
                KernelFamily::ALL.iter().map(|f| f.name().to_string()).collect()
            } else {
                vec![args.family]
            },
            dataset: args.dataset,
            n: args.n,
            inner_radius_factor: args.inner_radius_factor,
            metric: args.metric,
            train_fraction: args.train_fraction,
            seed: args.seed,
            tolerance: args.tolerance,
            max_passes: args.max_passes,
            lc_fractions: args.lc_fractions,
            lc_repeats: args.lc_repeats,
        },
        Commands::Boundary(args) => CommandSpec::Boundary {
            model: args.model.to_string_lossy().into_owned(),
            x_min: args.x_min,
            x_max: args.x_max,
            y_min: args.y_min,
            y_max: args.y_max,
            resolution_x: args.resolution_x,
            resolution_y: args.resolution_y,
        },
        Commands::Geometry(args) => CommandSpec::Geometry {
            family: args.family,
            alpha: args.alpha,
            k: args.k,
            probes: args.probes,
            mesh_resolution: args.mesh_resolution,
        },
    }
}

fn out_dir_for(spec: &CommandSpec, flag: Option<PathBuf>) -> PathBuf {
    if let Some(dir) = flag {
        return dir;
    }
    let root = std::env::var_os(OUT_ROOT_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("runs"));
    let stamp = chrono::Local::now().format("%Y%m%d-%H%M%S");
    root.join(format!("{stamp}-{}", spec.name()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let spec = to_spec(cli.command);
    let out_dir = out_dir_for(&spec, cli.out);
    match execute(&spec, &out_dir) {
        Ok(manifest) => {
            println!(
                "done in {:.1} ms; {} artifact(s) in {}",
                manifest.wall_ms,
                manifest.artifacts.len(),
                out_dir.display()
            );
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err}");
            match err.kind() {
                ErrorKind::Input => ExitCode::from(2),
                ErrorKind::Numerical => ExitCode::from(3),
                ErrorKind::Io => ExitCode::from(4),
            }
        }
    }
}
