//! Command-line front end for the spin-correlation toolkit.
//!
//! Subcommands: `bound` (violation window edge), `simulate` (one
//! experiment), `gamma` (batch plus inequality verdict), `report` (exact
//! singlet evaluation of a batch design), `audit` (empirical check of the
//! positive-count assumption), `sweep` (closed form versus sampled values
//! over a separation grid).
//!
//! Exit codes: 0 on success, 2 on usage errors (bad flags, malformed
//! values, rejected configurations), 1 on internal failures such as an
//! unwritable stdout.

mod output;
mod parse;

use std::io::{self, Write};
use std::path::PathBuf;

use clap::{value_parser, ArgGroup, Args, Parser, Subcommand};
use spingamma::analysis;
use spingamma::engine::{self, BatchConfig, ExperimentConfig, SeedSpec};
use spingamma::models::Model;
use spingamma::types::Angle;

use output::Format;

#[derive(Parser)]
#[command(
    name = "spingamma",
    version,
    about = "Spin-correlation experiments against the counting bound"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Angle list shared by `gamma` and `report`: either one separation
/// replicated over a number of experiments, or a file listing separations.
#[derive(Args)]
#[command(group = ArgGroup::new("design").required(true).args(["theta_ab", "angles_file"]))]
struct DesignArgs {
    /// Separation applied to every experiment
    #[arg(long, allow_negative_numbers = true, requires = "experiments")]
    theta_ab: Option<f64>,

    /// Number of experiments at --theta-ab
    #[arg(long, requires = "theta_ab", value_parser = value_parser!(u64).range(1..))]
    experiments: Option<u64>,

    /// File with one separation per line; `#` lines are comments
    #[arg(long, conflicts_with = "experiments")]
    angles_file: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the upper edge of the small-angle violation window
    Bound {
        /// Runs per experiment
        #[arg(long, value_parser = value_parser!(u64).range(1..))]
        n: u64,

        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },

    /// Run one experiment at a fixed orientation pair
    Simulate {
        /// quantum, bell-sign, noise:q=<real>, or quantum-mimic
        #[arg(long, value_parser = parse::parse_model)]
        model: Model,

        /// First analyzer orientation
        #[arg(long, allow_negative_numbers = true)]
        theta_a: f64,

        /// Second analyzer orientation
        #[arg(long, allow_negative_numbers = true)]
        theta_b: f64,

        /// Measured pairs in the experiment
        #[arg(long, value_parser = value_parser!(u64).range(1..))]
        runs: u64,

        /// Master seed for the random stream
        #[arg(long, default_value_t = 0)]
        seed: u64,

        /// Interpret angle inputs as degrees
        #[arg(long)]
        degrees: bool,

        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },

    /// Run a batch of experiments and check the counting bound
    Gamma {
        /// quantum, bell-sign, noise:q=<real>, or quantum-mimic
        #[arg(long, value_parser = parse::parse_model)]
        model: Model,

        #[command(flatten)]
        design: DesignArgs,

        /// Measured pairs per experiment
        #[arg(long, value_parser = value_parser!(u64).range(1..))]
        runs: u64,

        /// Master seed; experiment l draws from substream l
        #[arg(long, default_value_t = 0)]
        seed: u64,

        /// Permit separations of exactly zero
        #[arg(long)]
        allow_equal: bool,

        /// Interpret angle inputs as degrees
        #[arg(long)]
        degrees: bool,

        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },

    /// Evaluate a batch design under exact singlet statistics
    Report {
        #[command(flatten)]
        design: DesignArgs,

        /// Measured pairs per experiment
        #[arg(long, value_parser = value_parser!(u64).range(1..))]
        runs: u64,

        /// Interpret angle inputs as degrees
        #[arg(long)]
        degrees: bool,

        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },

    /// Measure how often an experiment design yields a zero equal-sign count
    Audit {
        /// quantum, bell-sign, noise:q=<real>, or quantum-mimic
        #[arg(long, value_parser = parse::parse_model)]
        model: Model,

        /// First analyzer orientation
        #[arg(long, allow_negative_numbers = true)]
        theta_a: f64,

        /// Second analyzer orientation
        #[arg(long, allow_negative_numbers = true)]
        theta_b: f64,

        /// Measured pairs per trial
        #[arg(long, value_parser = value_parser!(u64).range(1..))]
        runs: u64,

        /// Repetitions of the experiment
        #[arg(long, value_parser = value_parser!(u64).range(1..))]
        trials: u64,

        /// Master seed; trial t draws from substream t
        #[arg(long, default_value_t = 0)]
        seed: u64,

        /// Interpret angle inputs as degrees
        #[arg(long)]
        degrees: bool,

        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },

    /// Compare closed-form and sampled values over a separation grid
    Sweep {
        /// quantum, bell-sign, noise:q=<real>, or quantum-mimic
        #[arg(long, value_parser = parse::parse_model)]
        model: Model,

        /// Lower end of the separation grid
        #[arg(long, allow_negative_numbers = true)]
        theta_min: f64,

        /// Upper end of the separation grid
        #[arg(long, allow_negative_numbers = true)]
        theta_max: f64,

        /// Grid points, endpoints included
        #[arg(long, value_parser = value_parser!(u64).range(2..))]
        steps: u64,

        /// Measured pairs per grid point
        #[arg(long, value_parser = value_parser!(u64).range(1..))]
        runs: u64,

        /// Master seed; grid point i draws from substream i
        #[arg(long, default_value_t = 0)]
        seed: u64,

        /// Interpret angle inputs as degrees
        #[arg(long)]
        degrees: bool,

        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

enum CliError {
    Usage(String),
    Internal(String),
}

impl CliError {
    fn report(&self) -> i32 {
        match self {
            CliError::Usage(msg) => {
                eprintln!("error: {msg}");
                2
            }
            CliError::Internal(msg) => {
                eprintln!("error: {msg}");
                1
            }
        }
    }
}

impl From<spingamma::Error> for CliError {
    fn from(err: spingamma::Error) -> CliError {
        CliError::Usage(err.to_string())
    }
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = Cli::parse();
    let rendered = match execute(cli.command) {
        Ok(rendered) => rendered,
        Err(err) => return err.report(),
    };
    let mut stdout = io::stdout();
    match stdout
        .write_all(rendered.as_bytes())
        .and_then(|()| stdout.flush())
    {
        Ok(()) => 0,
        Err(err) => CliError::Internal(format!("cannot write output: {err}")).report(),
    }
}

fn execute(command: Command) -> Result<String, CliError> {
    match command {
        Command::Bound { n, format } => {
            let bound = analysis::angle_bound(n)?;
            Ok(output::render_bound(n, bound, format))
        }
        Command::Simulate {
            model,
            theta_a,
            theta_b,
            runs,
            seed,
            degrees,
            format,
        } => {
            let config = ExperimentConfig {
                model,
                theta_a: angle_from(theta_a, degrees)?,
                theta_b: angle_from(theta_b, degrees)?,
                n_runs: runs,
            };
            let mut rng = SeedSpec::new(seed).stream(0);
            let result = engine::run_experiment(&config, &mut rng)?;
            Ok(output::render_simulate(model, &result, format))
        }
        Command::Gamma {
            model,
            design,
            runs,
            seed,
            allow_equal,
            degrees,
            format,
        } => {
            let separations = design_angles(&design, degrees)?;
            let pairs = separations.into_iter().map(|t| (t, Angle::ZERO)).collect();
            let mut config = BatchConfig::new(model, pairs, runs);
            config.exclude_equal_angles = !allow_equal;
            let batch = engine::run_batch(&config, SeedSpec::new(seed))?;
            Ok(output::render_gamma(model, &batch, format))
        }
        Command::Report {
            design,
            runs,
            degrees,
            format,
        } => {
            let separations = design_angles(&design, degrees)?;
            let report = analysis::quantum_violation_report(&separations, runs)?;
            Ok(output::render_report(&report, format))
        }
        Command::Audit {
            model,
            theta_a,
            theta_b,
            runs,
            trials,
            seed,
            degrees,
            format,
        } => {
            let audit = analysis::audit_assumption(
                model,
                angle_from(theta_a, degrees)?,
                angle_from(theta_b, degrees)?,
                runs,
                trials,
                SeedSpec::new(seed),
            )?;
            Ok(output::render_audit(&audit, format))
        }
        Command::Sweep {
            model,
            theta_min,
            theta_max,
            steps,
            runs,
            seed,
            degrees,
            format,
        } => {
            let points = analysis::sweep(
                model,
                angle_from(theta_min, degrees)?,
                angle_from(theta_max, degrees)?,
                steps,
                runs,
                SeedSpec::new(seed),
            )?;
            Ok(output::render_sweep(model, runs, &points, format))
        }
    }
}

fn angle_from(value: f64, degrees: bool) -> Result<Angle, CliError> {
    let angle = if degrees {
        Angle::from_degrees(value)
    } else {
        Angle::from_radians(value)
    };
    angle.map_err(CliError::from)
}

fn design_angles(design: &DesignArgs, degrees: bool) -> Result<Vec<Angle>, CliError> {
    if let Some(path) = &design.angles_file {
        return parse::parse_angles_file(path, degrees).map_err(CliError::Usage);
    }
    let theta = design
        .theta_ab
        .expect("the design group guarantees one source");
    let experiments = design
        .experiments
        .expect("--theta-ab requires --experiments");
    Ok(vec![angle_from(theta, degrees)?; experiments as usize])
}
