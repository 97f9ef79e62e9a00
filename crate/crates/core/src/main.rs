use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use polysmooth::bench::{
    convergence_report, demo_shapes, integration_table_csv, run_benchmark, run_integration_demo,
    run_on_meshes, Benchmark, BenchmarkReport, BenchmarkSpec,
};
use polysmooth::geometry::Dim;
use polysmooth::mesh::read_mesh;
use polysmooth::smoothing::Scheme;
use polysmooth::{Error, Result};

#[derive(Parser)]
#[command(
    name = "polysmooth",
    version,
    about = "Polytope finite elements with linear strain smoothing"
)]
struct Cli {
    /// Log progress to stderr.
    #[arg(short, long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compare one-point quadrature against a dense Gauss rule on the built-in shapes.
    Integrate {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Linear (order 1) or quadratic (order 2) patch test.
    Patch {
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(2..=3))]
        dim: u8,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
        order: u8,
        #[command(flatten)]
        run: RunArgs,
    },
    /// 2D cantilever under a parabolic end shear.
    Cantilever {
        #[command(flatten)]
        run: RunArgs,
    },
    /// 3D prism under end torsion.
    Torsion {
        #[command(flatten)]
        run: RunArgs,
    },
    /// Strain energy of the quarter L-shaped block.
    Lshape {
        #[command(flatten)]
        run: RunArgs,
    },
    /// Convergence slope of an `h,error` CSV file.
    Report {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct RunArgs {
    /// Schemes to run (repeat or separate with commas).
    #[arg(long, value_delimiter = ',')]
    scheme: Vec<Scheme>,
    /// Seed counts per refinement level, e.g. `10,20,40`.
    #[arg(long, value_delimiter = ',')]
    levels: Vec<usize>,
    /// Base RNG seed for mesh generation.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Lloyd iterations per mesh.
    #[arg(long)]
    lloyd: Option<usize>,
    /// Run on a single mesh file instead of generated levels.
    #[arg(long)]
    mesh: Option<PathBuf>,
    /// Output directory for CSV, JSON and plot data.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write VTK files (needs --out).
    #[arg(long)]
    vtk: bool,
}

fn run(benchmark: Benchmark, args: RunArgs) -> Result<BenchmarkReport> {
    let mut spec = BenchmarkSpec::new(benchmark);
    if !args.scheme.is_empty() {
        spec.schemes = args.scheme;
    }
    if !args.levels.is_empty() {
        spec.levels = args.levels;
    }
    if let Some(n) = args.lloyd {
        spec.lloyd_iterations = n;
    }
    spec.rng_seed = args.seed;
    spec.output = args.out;
    spec.vtk = args.vtk;
    if spec.vtk && spec.output.is_none() {
        return Err(Error::InvalidInput("--vtk needs --out".into()));
    }
    match args.mesh {
        Some(path) => run_on_meshes(&spec, &[read_mesh(path)?]),
        None => run_benchmark(&spec),
    }
}

fn read_series(path: &Path) -> Result<(Vec<f64>, Vec<f64>)> {
    let text = fs::read_to_string(path)?;
    let (mut h, mut e) = (Vec::new(), Vec::new());
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let cols: Vec<&str> = line.split(',').map(str::trim).collect();
        let parsed = (cols.len() >= 2)
            .then(|| Some((cols[0].parse::<f64>().ok()?, cols[1].parse::<f64>().ok()?)))
            .flatten();
        match parsed {
            Some((a, b)) => {
                h.push(a);
                e.push(b);
            }
            None if i == 0 => continue,
            None => {
                return Err(Error::InvalidInput(format!(
                    "{}:{}: expected `h,error`",
                    path.display(),
                    i + 1
                )))
            }
        }
    }
    Ok((h, e))
}

fn execute(command: Command) -> Result<()> {
    let report = match command {
        Command::Integrate { out } => {
            let rows = run_integration_demo(&demo_shapes())?;
            let csv = integration_table_csv(&rows);
            print!("{csv}");
            if let Some(dir) = out {
                fs::create_dir_all(&dir)?;
                fs::write(dir.join("integration.csv"), csv)?;
            }
            return Ok(());
        }
        Command::Report { input, out } => {
            let (h, e) = read_series(&input)?;
            let r = convergence_report(&h, &e)?;
            println!(
                "slope {:.6}  intercept {:.6}  monotone {}",
                r.slope, r.intercept, r.monotone
            );
            if let Some(dir) = out {
                fs::create_dir_all(&dir)?;
                fs::write(dir.join("convergence.csv"), r.to_csv())?;
                fs::write(dir.join("convergence.dat"), r.plot_data())?;
            }
            return Ok(());
        }
        Command::Patch {
            dim,
            order,
            run: args,
        } => {
            let dim = Dim::from_usize(dim as usize).expect("validated by clap");
            let b = if order == 1 {
                Benchmark::LinearPatch(dim)
            } else {
                Benchmark::QuadraticPatch(dim)
            };
            run(b, args)?
        }
        Command::Cantilever { run: args } => run(Benchmark::Cantilever, args)?,
        Command::Torsion { run: args } => run(Benchmark::Torsion, args)?,
        Command::Lshape { run: args } => run(Benchmark::LShape, args)?,
    };
    print!("{}", report.summary());
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = if cli.verbose { "info" } else { "warn" };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
