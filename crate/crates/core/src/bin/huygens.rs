//! Batch front propagation.
//!
//! ```text
//! huygens propagate --scene scene.json --out out/ [--svg]
//! huygens verify    [--scene scene.json] [--checks axioms,envelope] [--seed 42] [--trials 10000] [--out out/]
//! huygens render    --scene scene.json --out out/ [--wavelets 4]
//! ```
//!
//! Exit status is 0 iff every reported check passed.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use huygens::pipeline::{run_pipeline, run_suites, PipelineOptions, PipelineReport};
use huygens::scene::{load_scene, Check};

#[derive(Parser)]
#[command(name = "huygens", version, about = "Wavefront propagation by envelopes of spheres")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Propagate every primitive through the cumulative steps and write CSV fronts.
    Propagate {
        #[command(flatten)]
        common: Common,
        /// Also write an SVG figure per primitive.
        #[arg(long)]
        svg: bool,
    },
    /// Run checks: the scene's own, or those given with --checks.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Comma-separated subset of envelope, semigroup, reciprocity, axioms.
        #[arg(long, value_delimiter = ',')]
        checks: Vec<Check>,
    },
    /// Write SVG figures of the fronts and a few wavelets.
    Render {
        #[command(flatten)]
        common: Common,
        /// Wavelets drawn per primitive.
        #[arg(long, default_value_t = 4)]
        wavelets: usize,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    scene: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Seed for the randomized suites.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Trials per randomized suite.
    #[arg(long, default_value_t = 10_000)]
    trials: usize,
}

fn require<T>(value: Option<T>, flag: &str) -> Result<T, String> {
    value.ok_or_else(|| format!("{flag} is required for this subcommand"))
}

fn run(cli: Cli) -> Result<PipelineReport, String> {
    let (common, opts, checks) = match cli.command {
        Command::Propagate { common, svg } => {
            require(common.out.as_ref(), "--out")?;
            let opts = PipelineOptions { write_csv: true, write_svg: svg, ..Default::default() };
            (common, opts, None)
        }
        Command::Verify { common, checks } => {
            let opts = PipelineOptions { write_csv: common.out.is_some(), ..Default::default() };
            (common, opts, Some(checks))
        }
        Command::Render { common, wavelets } => {
            require(common.out.as_ref(), "--out")?;
            let opts = PipelineOptions { write_svg: true, wavelets, ..Default::default() };
            (common, opts, None)
        }
    };
    let mut opts = PipelineOptions {
        out_dir: common.out,
        seed: common.seed,
        trials: common.trials,
        ..opts
    };

    let Some(path) = common.scene else {
        // scene-free verification: randomized suites in 2D and 3D
        let checks = require(checks.filter(|c| !c.is_empty()), "--scene or --checks")?;
        if checks.iter().any(|c| matches!(c, Check::Envelope | Check::Semigroup)) {
            return Err("envelope and semigroup checks need a --scene".into());
        }
        let lines = run_suites(&[2, 3], &checks, opts.seed, opts.trials);
        return Ok(PipelineReport { lines, written: Vec::new() });
    };
    let scene = load_scene(&path).map_err(|e| e.to_string())?;
    if let Some(checks) = checks {
        opts.checks = if checks.is_empty() { scene.checks.clone() } else { checks };
    }
    if opts.write_svg && scene.dimension != 2 {
        return Err(format!("SVG output needs planar geometry, got dimension {}", scene.dimension));
    }
    run_pipeline(&scene, &opts).map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(report) => {
            print!("{report}");
            for path in &report.written {
                eprintln!("wrote {}", path.display());
            }
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
