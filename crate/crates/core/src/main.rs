use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use relspin::cli::{
    inspect, parse_angle, render_json, render_text, run_sweep, AxisKind, InspectKind,
    InspectParams, SweepConfig,
};
use relspin::clifford::GammaBasis;
use relspin::verify::{run_verify_with_basis, MomentumSampling};

#[derive(Parser)]
#[command(
    name = "relspin",
    version,
    about = "Relativistic spin operators, Wigner transport and spin entropy"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Axis {
    Rapidity,
    Polar,
}

#[derive(Subcommand)]
enum Command {
    /// Run the seeded verification suite.
    Verify {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
        samples: u64,
        /// Use only rest-frame momenta.
        #[arg(long)]
        rest_only: bool,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
        /// Replace the gamma basis with a broken one (negative control).
        #[arg(long, hide = true)]
        corrupt_gamma: bool,
    },
    /// Write the entropy sweep of both states as CSV.
    Sweep {
        #[arg(long, value_enum)]
        axis: Axis,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 1.0)]
        m: f64,
        /// Polar angle for the rapidity axis (accepts a `pi` suffix).
        #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
        theta: Option<f64>,
        #[arg(long, value_parser = parse_angle, default_value = "0", allow_hyphen_values = true)]
        phi: f64,
        /// Rapidity for the polar axis.
        #[arg(long)]
        xi: Option<f64>,
        #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
        lo: f64,
        #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
        hi: f64,
        #[arg(long, default_value_t = 200)]
        steps: usize,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print an operator, transport or parameter set.
    Inspect {
        /// spin_r, spin_fw, hamiltonian, transport, wigner_block or ab_params.
        #[arg(value_parser = InspectKind::parse)]
        kind: InspectKind,
        #[arg(long, default_value_t = 0.0)]
        p: f64,
        #[arg(long, default_value_t = 1.0)]
        m: f64,
        #[arg(long, value_parser = parse_angle, default_value = "0", allow_hyphen_values = true)]
        theta: f64,
        #[arg(long, value_parser = parse_angle, default_value = "0", allow_hyphen_values = true)]
        phi: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        xi: f64,
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify {
            seed,
            samples,
            rest_only,
            json,
            corrupt_gamma,
        } => {
            let mut basis = GammaBasis::standard();
            if corrupt_gamma {
                basis.gamma[3] = basis.gamma[1];
            }
            let sampling = if rest_only {
                MomentumSampling::RestOnly
            } else {
                MomentumSampling::Random
            };
            let report = run_verify_with_basis(&basis, seed, samples as usize, sampling);
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report).expect("plain data serializes")
                );
            } else {
                println!("seed {} samples {}", report.seed, report.samples);
                for c in &report.checks {
                    println!("{}", c.line());
                }
            }
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                for c in report.failures() {
                    eprintln!("failed check: {}", c.name);
                }
                ExitCode::from(1)
            }
        }
        Command::Sweep {
            axis,
            p,
            m,
            theta,
            phi,
            xi,
            lo,
            hi,
            steps,
            out,
        } => {
            let config = SweepConfig {
                axis: match axis {
                    Axis::Rapidity => AxisKind::Rapidity,
                    Axis::Polar => AxisKind::Polar,
                },
                mass: m,
                p_magnitude: p,
                theta,
                phi,
                xi,
                lo,
                hi,
                steps,
                output_path: out,
            };
            match run_sweep(&config, &mut std::io::stdout().lock()) {
                Ok(_) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(2)
                }
            }
        }
        Command::Inspect {
            kind,
            p,
            m,
            theta,
            phi,
            xi,
            json,
        } => match inspect(
            kind,
            InspectParams {
                p,
                m,
                theta,
                phi,
                xi,
            },
        ) {
            Ok(out) => {
                if json {
                    println!("{}", render_json(&out));
                } else {
                    print!("{}", render_text(&out));
                }
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
    }
}
