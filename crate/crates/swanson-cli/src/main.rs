//! Command-line front end: scenario configuration ingestion, spectrum /
//! reduction / evolution / verification runs, CSV emission and gnuplot
//! script generation.

mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use swanson_core::CoreError;

#[derive(Parser)]
#[command(
    name = "swanson",
    about = "Exact solutions of the generalized Swanson oscillator, numerically verified",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonOpts {
    /// Scenario descriptor JSON (see README for the schema)
    #[arg(long)]
    config: Option<std::path::PathBuf>,
    /// Output path prefix for emitted artifacts
    #[arg(long, default_value = "swanson_out")]
    out: String,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form spectrum with a truncated-Fock-space cross-check column
    Spectrum {
        #[command(flatten)]
        common: CommonOpts,
        /// Truncation dimension for the numeric cross-check
        #[arg(long, default_value_t = 256)]
        dim: usize,
        /// Highest level n to emit
        #[arg(long = "nmax", default_value_t = 10)]
        n_max: usize,
    },
    /// Verify the two-step reduction; emits a JSON residual report
    Reduce {
        #[command(flatten)]
        common: CommonOpts,
        #[arg(long, default_value_t = 256)]
        dim: usize,
    },
    /// Sample the exact complex-mass wavefunction at a ladder of times
    Evolve {
        #[command(flatten)]
        common: CommonOpts,
        #[arg(long = "t-final", default_value_t = 2.0)]
        t_final: f64,
        #[arg(long = "t-samples", default_value_t = 64)]
        t_samples: usize,
        /// Initial wavepacket width
        #[arg(long, default_value_t = std::f64::consts::FRAC_1_SQRT_2)]
        sigma: f64,
        /// Initial wavepacket center
        #[arg(long, default_value_t = 2.0)]
        x0: f64,
        /// Target grid spacing (grid is auto-sized around the support)
        #[arg(long, default_value_t = 5e-3)]
        dx: f64,
    },
    /// Schrödinger-residual table of the closed form against the PDE
    Verify {
        #[command(flatten)]
        common: CommonOpts,
        #[arg(long = "t-final", default_value_t = 2.0)]
        t_final: f64,
        #[arg(long = "t-samples", default_value_t = 64)]
        t_samples: usize,
        #[arg(long, default_value_t = std::f64::consts::FRAC_1_SQRT_2)]
        sigma: f64,
        #[arg(long, default_value_t = 2.0)]
        x0: f64,
        #[arg(long, default_value_t = 5e-3)]
        dx: f64,
        /// Crank–Nicolson step for the integrator comparison
        #[arg(long, default_value_t = 1e-4)]
        dt: f64,
        /// Also cross-validate against Crank–Nicolson at t_final
        #[arg(long, default_value_t = false)]
        with_integrator: bool,
    },
    /// Emit the two probability-density surfaces and a gnuplot script
    Fig1 {
        #[command(flatten)]
        common: CommonOpts,
        #[arg(long = "t-final", default_value_t = 2.0)]
        t_final: f64,
        #[arg(long = "t-samples", default_value_t = 64)]
        t_samples: usize,
    },
}

fn exit_code_for(err: &CoreError) -> u8 {
    match err {
        CoreError::InvalidConfig(_)
        | CoreError::GridMismatch(_)
        | CoreError::DimensionMismatch(_) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    // usage errors are configuration errors: exit 1, not clap's default 2
    // (2 is reserved for numerical failures)
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            eprint!("{e}");
            return ExitCode::from(1);
        }
        Err(e) => {
            // --help / --version
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    let result = match cli.command {
        Command::Spectrum { common, dim, n_max } => {
            commands::spectrum(&common.config, &common.out, dim, n_max)
        }
        Command::Reduce { common, dim } => commands::reduce(&common.config, &common.out, dim),
        Command::Evolve {
            common,
            t_final,
            t_samples,
            sigma,
            x0,
            dx,
        } => commands::evolve(&common.config, &common.out, t_final, t_samples, sigma, x0, dx),
        Command::Verify {
            common,
            t_final,
            t_samples,
            sigma,
            x0,
            dx,
            dt,
            with_integrator,
        } => commands::verify(
            &common.config,
            &common.out,
            t_final,
            t_samples,
            sigma,
            x0,
            dx,
            dt,
            with_integrator,
        ),
        Command::Fig1 {
            common,
            t_final,
            t_samples,
        } => commands::fig1(&common.config, &common.out, t_final, t_samples),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            let code = exit_code_for(&err);
            let kind = if code == 1 { "config" } else { "numerical" };
            eprintln!(
                "{}",
                serde_json::json!({"error": kind, "message": err.to_string()})
            );
            ExitCode::from(code)
        }
    }
}
