//! mixedlinks — analyze mixed polynomials and certify contact structure on
//! their links.
//!
//! Exit codes: 0 all checks certified/passed, 1 usage or parse error,
//! 2 inconclusive, 3 violated/failed.

mod commands;
mod input;

use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "mixedlinks", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Weighted-homogeneity report, Newton boundary classification, and
    /// non-degeneracy probe of a polynomial file.
    Analyze {
        file: PathBuf,
        /// Number of variables (inferred from the input when omitted).
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        json: bool,
        /// Trials for the non-degeneracy probe.
        #[arg(long, default_value_t = 200)]
        probe_trials: usize,
        /// Suspected-witness threshold for the probe residual.
        #[arg(long, default_value_t = 1e-3)]
        probe_tol: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Expand the pull-back under the mixed cyclic covering w ↦ (w^a w̄^b, …).
    Pullback {
        file: PathBuf,
        /// Covering exponents a: one integer or comma-separated per-variable.
        #[arg(long)]
        a: String,
        /// Covering exponents b, same shape as --a.
        #[arg(long)]
        b: String,
        #[arg(long)]
        n: Option<usize>,
        /// Output path (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample the link and certify transversality / contact sign / open-book
    /// compatibility per radius.
    Certify {
        /// Polynomial g defining the link (may be omitted when --pullback-of
        /// supplies it).
        file: Option<PathBuf>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_parser = ["transversality", "contact", "openbook", "all"], default_value = "all")]
        check: String,
        /// Comma-separated radius list.
        #[arg(long, default_value = "0.25,0.5,1")]
        radius: String,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Weighted sphere Σ a_j |z_j|² = r²; comma-separated or one integer.
        #[arg(long)]
        sphere_weights: Option<String>,
        /// Expected sign of the certificate C for the contact check.
        #[arg(long, value_parser = ["+", "-"])]
        expect_sign: Option<String>,
        /// Holomorphic polynomial f with g = f ∘ φ_{a,b} (required by openbook).
        #[arg(long)]
        pullback_of: Option<PathBuf>,
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        b: Option<String>,
        #[arg(long, default_value_t = 0.05)]
        tube_delta: f64,
        /// Dump per-sample rows (re_w1,im_w1,…,C,dthetaR,min_sv) as CSV.
        #[arg(long)]
        emit_samples: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Run one of the built-in analytic identities at random points.
    IdentityCheck {
        file: PathBuf,
        #[arg(long, value_parser = ["euler", "cab", "fourform", "positivity", "chainrule"])]
        which: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        n: Option<usize>,
        /// For cab/positivity: the input file is g = f ∘ φ_{a,b}; this names f.
        #[arg(long)]
        pullback_of: Option<PathBuf>,
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        b: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Sample the link once and dump the accepted points.
    Sample {
        file: PathBuf,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        emit_samples: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap prints help/version on stdout with success; real usage
            // errors map to exit code 1.
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let outcome = match cli.command {
        Command::Analyze { file, n, json, probe_trials, probe_tol, seed } => {
            commands::analyze(&file, n, json, probe_trials, probe_tol, seed)
        }
        Command::Pullback { file, a, b, n, out } => commands::pullback(&file, &a, &b, n, out),
        Command::Certify {
            file,
            n,
            check,
            radius,
            samples,
            seed,
            sphere_weights,
            expect_sign,
            pullback_of,
            a,
            b,
            tube_delta,
            emit_samples,
            json,
        } => commands::certify(commands::CertifyArgs {
            file,
            n,
            check,
            radius,
            samples,
            seed,
            sphere_weights,
            expect_sign,
            pullback_of,
            a,
            b,
            tube_delta,
            emit_samples,
            json,
        }),
        Command::IdentityCheck { file, which, trials, seed, n, pullback_of, a, b, json } => {
            commands::identity_check(&file, &which, trials, seed, n, pullback_of, a, b, json)
        }
        Command::Sample { file, n, radius, samples, seed, emit_samples, json } => {
            commands::sample(&file, n, radius, samples, seed, emit_samples, json)
        }
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
