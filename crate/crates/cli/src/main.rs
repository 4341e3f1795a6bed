//! `amoeba`: file-based front end to amoeba-core.

mod commands;
mod failure;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use amoeba_core::sampling::SamplingStrategy;
use clap::{Args, Parser, Subcommand};

use failure::Failure;

#[derive(Parser)]
#[command(name = "amoeba", version, about = "Amoebas of lines and hypersurfaces in the algebraic torus")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct LineArg {
    /// Line document `{"coords": [...]}`
    #[arg(long)]
    line: PathBuf,
}

#[derive(Args)]
struct OutArg {
    /// Output file; standard output when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Line document; sampled with `--count` parameters
    #[arg(long)]
    line: Option<PathBuf>,
    /// Plane curve `f(x, y)`; scanned over `--log-range`
    #[arg(long)]
    curve: Option<PathBuf>,
    /// CSV cloud of moduli
    #[arg(long)]
    cloud: Option<PathBuf>,
}

#[derive(Args)]
struct SampleOpts {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Parameters drawn for a line
    #[arg(long, default_value_t = 10_000)]
    count: usize,
    #[arg(long, default_value = "annulus")]
    strategy: SamplingStrategy,
    /// Log-modulus range `lo,hi` of the first variable of a curve
    #[arg(long, default_value = "-5,5", allow_hyphen_values = true)]
    log_range: String,
    /// Moduli in the log range
    #[arg(long, default_value_t = 400)]
    moduli: usize,
    /// Angles per modulus
    #[arg(long, default_value_t = 180)]
    angles: usize,
}

#[derive(Args)]
struct GridOpts {
    /// `lo,hi` for every axis, or `lo,hi;lo,hi;…` per axis (log coordinates)
    #[arg(long, allow_hyphen_values = true)]
    window: String,
    #[arg(long, default_value_t = 128)]
    resolution: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a line: Real, Complex, or FewEnds, with its number of ends
    Classify(LineArg),
    /// Semi-algebraic description of the algebraic amoeba of a line
    Describe {
        #[command(flatten)]
        line: LineArg,
        #[command(flatten)]
        out: OutArg,
    },
    /// Membership of moduli points in the algebraic amoeba of a line
    Member {
        #[arg(long, required_unless_present = "description", conflicts_with = "description")]
        line: Option<PathBuf>,
        /// Description document written by `describe`
        #[arg(long)]
        description: Option<PathBuf>,
        /// Comma-separated moduli
        #[arg(long, required_unless_present = "points", conflicts_with = "points")]
        point: Option<String>,
        /// CSV of moduli; one verdict per row
        #[arg(long)]
        points: Option<PathBuf>,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Parameters `t` with `|ℓ(t)|` equal to the given moduli
    Fiber {
        #[command(flatten)]
        line: LineArg,
        #[arg(long)]
        point: String,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Raster of the Log image as a P2 graymap with a JSON sidecar
    Raster {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        sample: SampleOpts,
        #[command(flatten)]
        grid: GridOpts,
        /// Axes shown as columns and rows
        #[arg(long, default_value = "0,1")]
        axes: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// CSV point cloud of moduli
    Sample {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        sample: SampleOpts,
        #[command(flatten)]
        out: OutArg,
    },
    /// Numeric dimension of the amoeba of a line, or of a product of lines
    Dim {
        /// Repeat to form a product
        #[arg(long, required = true)]
        line: Vec<PathBuf>,
        #[arg(long, default_value_t = 32)]
        probes: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = amoeba_core::sampling::RANK_TOL)]
        rank_tol: f64,
    },
    /// Limit rays of a line, one per end
    LimitRays(LineArg),
    /// Affine independence of the Newton polytopes of a polynomial list
    IclCheck {
        #[arg(long, required = true)]
        poly: Vec<PathBuf>,
    },
    /// Compare a cloud of V with the intersection of hypersurface amoebas
    VerifyBasis {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        sample: SampleOpts,
        #[command(flatten)]
        grid: GridOpts,
        #[arg(long, required = true)]
        poly: Vec<PathBuf>,
        #[arg(long, default_value_t = 1)]
        dilation: usize,
        /// Angular resolution of the membership scan
        #[arg(long, default_value_t = amoeba_core::basis::DEFAULT_ANGLE_RESOLUTION)]
        angle_resolution: usize,
        /// Writes `PREFIX.v.pgm` and `PREFIX.i.pgm` (axes 0 and 1)
        #[arg(long)]
        grids: Option<PathBuf>,
        #[command(flatten)]
        out: OutArg,
    },
    /// CSV of coamoeba angles of a line
    Coamoeba {
        #[command(flatten)]
        line: LineArg,
        #[arg(long, default_value_t = 10_000)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutArg,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("{}", serde_json::to_string(&f.document()).expect("serializable"));
            ExitCode::from(f.code())
        }
    }
}

fn check_tol(tol: f64) -> Result<(), Failure> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Failure::input(format!("tolerance must be positive, got {tol}")))
    }
}
