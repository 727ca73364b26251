//! Experiment drivers: each command writes CSV (with a companion
//! `<out>.manifest.json`) or a single JSON object with keys `manifest`,
//! `inputs`, `results` and `pass`.
//!
//! Exit codes: 0 success, 1 usage error, 2 numerical failure, 3 a
//! verification command ran but failed.

mod commands;
mod output;

pub use commands::{
    cmd_density, cmd_det_curve, cmd_field_gallery, cmd_subleading, cmd_verify_lemma,
    cmd_verify_theorem, lemma_bandwidth, replay, DensityArgs, DetCurveArgs, FieldGalleryArgs,
    Outcome, SubleadingArgs, VerifyLemmaArgs, VerifyTheoremArgs,
};
pub use output::{format_float, manifest_path, Cell, RunManifest, Table};

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::ensemble::Part;
use crate::fieldsim::DEFAULT_HALF_WIDTH;
use crate::{Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFY_FAIL: i32 = 3;

const DEFAULT_SEED: u64 = 1;

#[derive(Debug, Parser)]
#[command(name = "fprmt", version, about = "Fixed points of layered Gaussian random maps")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// (1/N) log E|det(J - I)| over a sigma-hat grid vs the large-N law.
    DetCurve(Opts),
    /// Two-layer sub-leading term for several offsets.
    Subleading(Opts),
    /// Eigenvalue histogram with limiting-density overlays.
    Density(Opts),
    /// Field-side fixed-point count vs matrix-side determinant.
    VerifyTheorem(Opts),
    /// Determinant expectation vs real spectral density identity.
    VerifyLemma(Opts),
    /// Sample paths and their fixed points.
    FieldGallery(Opts),
    /// Re-run the command recorded in a manifest.
    Replay {
        /// A `.manifest.json` file or a JSON output.
        manifest: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PartArg {
    Real,
    ComplexModulus,
}

#[derive(Debug, Clone, Args)]
pub struct Opts {
    /// Number of layers D.
    #[arg(long)]
    pub depth: Option<usize>,
    /// Base dimension N.
    #[arg(long)]
    pub dim: Option<usize>,
    /// Layer dimension offsets (repeatable).
    #[arg(long = "nu")]
    pub nu: Vec<usize>,
    /// Layer deviations (repeatable; one value is broadcast).
    #[arg(long = "sigma")]
    pub sigma: Vec<f64>,
    /// Grid `min:max:steps`, endpoints included.
    #[arg(long = "sigma-hat-grid")]
    pub sigma_hat_grid: Option<String>,
    /// Monte Carlo samples (field replicas for verify-theorem).
    #[arg(long)]
    pub samples: Option<usize>,
    /// Matrix-side samples for verify-theorem (default 10 × samples).
    #[arg(long = "matrix-samples")]
    pub matrix_samples: Option<usize>,
    #[arg(long, env = "FPRMT_SEED")]
    pub seed: Option<u64>,
    /// Worker threads (default: available parallelism).
    #[arg(long)]
    pub workers: Option<usize>,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub bins: Option<usize>,
    #[arg(long)]
    pub bandwidth: Option<f64>,
    /// Field domain half-width.
    #[arg(long = "grid-L")]
    pub grid_l: Option<f64>,
    /// Field grid spacing.
    #[arg(long = "grid-dx")]
    pub grid_dx: Option<f64>,
    #[arg(long, value_enum, default_value = "real")]
    pub part: PartArg,
    /// Divide eigenvalues by their spread before binning.
    #[arg(long)]
    pub scaled: bool,
}

/// Parses `min:max:steps` into `steps` evenly spaced values.
pub fn parse_grid(spec: &str) -> Result<Vec<f64>> {
    let bad = || Error::InvalidParameter(format!("grid {spec:?} is not min:max:steps"));
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(bad());
    }
    let lo: f64 = parts[0].trim().parse().map_err(|_| bad())?;
    let hi: f64 = parts[1].trim().parse().map_err(|_| bad())?;
    let steps: usize = parts[2].trim().parse().map_err(|_| bad())?;
    match steps {
        0 => Err(bad()),
        1 => Ok(vec![lo]),
        _ => Ok((0..steps)
            .map(|k| if k + 1 == steps { hi } else { lo + (hi - lo) * k as f64 / (steps - 1) as f64 })
            .collect()),
    }
}

fn default_workers() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

impl Opts {
    fn seed(&self) -> u64 {
        self.seed.unwrap_or(DEFAULT_SEED)
    }

    fn workers(&self) -> usize {
        self.workers.unwrap_or_else(default_workers)
    }

    fn nus(&self, depth: usize) -> Result<Vec<usize>> {
        match self.nu.len() {
            0 => Ok(vec![0; depth - 1]),
            n if n == depth - 1 => Ok(self.nu.clone()),
            n => Err(Error::InvalidParameter(format!("got {n} --nu values for depth {depth}"))),
        }
    }

    fn grid(&self, default: &str) -> Result<Vec<f64>> {
        parse_grid(self.sigma_hat_grid.as_deref().unwrap_or(default))
    }
}

/// Runs one parsed command.
pub fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::DetCurve(o) => {
            let depth = o.depth.unwrap_or(1);
            let args = DetCurveArgs {
                depth,
                dim: o.dim.unwrap_or(50),
                nus: o.nus(depth.max(1))?,
                sigma_hats: o.grid("0.2:2.0:10")?,
                samples: o.samples.unwrap_or(1000),
                seed: o.seed(),
                workers: o.workers(),
            };
            cmd_det_curve(&args, &o.out)
        }
        Command::Subleading(o) => {
            if o.depth.is_some_and(|d| d != 2) {
                return Err(Error::InvalidParameter("subleading is defined for depth 2".into()));
            }
            let args = SubleadingArgs {
                dim: o.dim.unwrap_or(50),
                nu_grid: if o.nu.is_empty() { vec![0, 1, 2] } else { o.nu.clone() },
                sigma_hats: o.grid("1.4:2.0:4")?,
                samples: o.samples.unwrap_or(10_000),
                seed: o.seed(),
                workers: o.workers(),
            };
            cmd_subleading(&args, &o.out)
        }
        Command::Density(o) => {
            let depth = o.depth.unwrap_or(1);
            let args = DensityArgs {
                part: match o.part {
                    PartArg::Real => Part::Real,
                    PartArg::ComplexModulus => Part::ComplexModulus,
                },
                depth,
                dim: o.dim.unwrap_or(100),
                nus: o.nus(depth.max(1))?,
                sigmas: o.sigma.clone(),
                scaled: o.scaled,
                bins: o.bins.unwrap_or(60),
                samples: o.samples.unwrap_or(500),
                seed: o.seed(),
                workers: o.workers(),
            };
            cmd_density(&args, &o.out)
        }
        Command::VerifyTheorem(o) => {
            let fields = o.samples.unwrap_or(10_000);
            let args = VerifyTheoremArgs {
                sigmas: if o.sigma.is_empty() { vec![1.0] } else { o.sigma.clone() },
                fields,
                matrix_samples: o.matrix_samples.unwrap_or(10 * fields),
                half_width: o.grid_l.unwrap_or(DEFAULT_HALF_WIDTH),
                dx: o.grid_dx,
                seed: o.seed(),
                workers: o.workers(),
            };
            cmd_verify_theorem(&args, &o.out)
        }
        Command::VerifyLemma(o) => {
            let depth = o.depth.unwrap_or(1);
            let args = VerifyLemmaArgs {
                depth,
                dim: o.dim.unwrap_or(1),
                nus: o.nus(depth.max(1))?,
                sigmas: o.sigma.clone(),
                bandwidth: o.bandwidth,
                samples: o.samples.unwrap_or(100_000),
                seed: o.seed(),
                workers: o.workers(),
            };
            cmd_verify_lemma(&args, &o.out)
        }
        Command::FieldGallery(o) => {
            let args = FieldGalleryArgs {
                sigmas: if o.sigma.is_empty() { vec![0.2, 1.0, 5.0] } else { o.sigma.clone() },
                half_width: o.grid_l.unwrap_or(DEFAULT_HALF_WIDTH),
                dx: o.grid_dx,
                seed: o.seed(),
            };
            cmd_field_gallery(&args, &o.out)
        }
        Command::Replay { manifest, out } => replay(&RunManifest::read(manifest)?, out),
    }
}

/// Parses `args`, runs the command, reports to stdout/stderr and returns
/// the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match run(&cli) {
        Ok(outcome) => {
            let verdict = match outcome.pass {
                Some(true) => " PASS",
                Some(false) => " FAIL",
                None => "",
            };
            println!(
                "{} done in {:.2}s{verdict}",
                outcome.manifest.subcommand, outcome.manifest.duration_seconds
            );
            if outcome.pass == Some(false) {
                EXIT_VERIFY_FAIL
            } else {
                EXIT_OK
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_parsing() {
        let g = parse_grid("0.2:2:10").unwrap();
        assert_eq!(g.len(), 10);
        assert_eq!(g[0], 0.2);
        assert_eq!(g[9], 2.0);
        assert!((g[1] - 0.4).abs() < 1e-15);
        assert_eq!(parse_grid("1.5:3:1").unwrap(), vec![1.5]);
        assert!(parse_grid("1:2").is_err());
        assert!(parse_grid("a:2:3").is_err());
        assert!(parse_grid("1:2:0").is_err());
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(main_with_args(["fprmt", "det-curve"]), EXIT_USAGE);
        assert_eq!(main_with_args(["fprmt", "bogus", "--out", "x"]), EXIT_USAGE);
        assert_eq!(main_with_args(["fprmt", "--help"]), EXIT_OK);
    }
}
