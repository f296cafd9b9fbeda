//! `opacity`: command-line front end for the opacity analyses.

mod commands;
mod input;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use opacity_core::automata::DEFAULT_STATE_BUDGET;

use commands::WitnessKind;
use report::{Failure, NumberFormat, Status};

#[derive(Parser)]
#[command(
    name = "opacity",
    version,
    about = "Exact probabilistic opacity analyses"
)]
struct Cli {
    /// `exact`, or `decimal N` to add N-digit decimal renderings.
    #[arg(long, global = true, num_args = 1..=2, value_names = ["MODE", "DIGITS"], default_value = "exact")]
    format: Vec<String>,

    /// Maximum number of automaton states built during determinization.
    #[arg(long, global = true, env = "OPACITY_STATE_BUDGET", default_value_t = DEFAULT_STATE_BUDGET)]
    budget: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Secret {
    /// Secret as a parity automaton file.
    #[arg(long)]
    phi: PathBuf,
    /// Observable letters, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    observe: Vec<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a model file.
    Validate { file: PathBuf },
    /// Classify the edges of an interval chain as modal or not.
    Modal {
        #[arg(long)]
        model: PathBuf,
    },
    /// Worst-case disclosure of a non-modal interval chain.
    Disclosure {
        #[arg(long)]
        model: PathBuf,
        #[command(flatten)]
        secret: Secret,
        /// Write the optimal implementation to this file.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Disclosure of a probabilistic transition system.
    DisclosePts {
        #[arg(long)]
        model: PathBuf,
        #[command(flatten)]
        secret: Secret,
        /// Also report the disclosure of the secret plus that of its complement.
        #[arg(long)]
        symmetric: bool,
    },
    /// Probability that a transition system satisfies a parity automaton.
    Prob {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        phi: PathBuf,
        /// Add a Monte-Carlo estimate from this many sampled runs.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Step limit per sampled run.
        #[arg(long, default_value_t = 100_000)]
        horizon: usize,
    },
    /// Check that a transition system implements an interval chain.
    Sat {
        #[arg(long)]
        pts: PathBuf,
        #[arg(long)]
        spec: PathBuf,
        /// Write the witness here instead of printing it.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check that the second model simulates the first.
    Sim {
        #[arg(long)]
        s1: PathBuf,
        #[arg(long)]
        s2: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Probabilistic bisimulation between two transition systems.
    Bisim {
        #[arg(long)]
        a1: PathBuf,
        #[arg(long)]
        a2: PathBuf,
    },
    /// Transfer an interior scheduler of S1 to S2 along a simulation and
    /// compare the cone probabilities of the two implementations.
    Transfer {
        #[arg(long)]
        s1: PathBuf,
        #[arg(long)]
        s2: PathBuf,
        #[arg(long, short = 'k', default_value_t = 4)]
        depth: usize,
        /// Simulation witness to use instead of computing one.
        #[arg(long)]
        witness: Option<PathBuf>,
        /// Write the unfolded implementation of S2 here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check simulation, then that disclosure does not grow from S1 to S2.
    Monotonic {
        #[arg(long)]
        s1: PathBuf,
        #[arg(long)]
        s2: PathBuf,
        #[command(flatten)]
        secret: Secret,
    },
    /// Validate a satisfaction or simulation witness file.
    CheckWitness {
        #[arg(long, value_enum)]
        kind: WitnessKind,
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
        #[arg(long)]
        witness: PathBuf,
    },
}

fn number_format(args: &[String]) -> Result<NumberFormat, Failure> {
    match args {
        [m] if m == "exact" => Ok(NumberFormat::default()),
        [m] if m == "decimal" => Ok(NumberFormat { digits: Some(10) }),
        [m, n] if m == "decimal" => n
            .parse()
            .map(|d| NumberFormat { digits: Some(d) })
            .map_err(|_| Failure::input(format!("--format decimal: bad digit count `{n}`"))),
        _ => Err(Failure::input(format!(
            "--format: expected `exact` or `decimal N`, got `{}`",
            args.join(" ")
        ))),
    }
}

fn run(cli: Cli) -> report::Outcome {
    let f = number_format(&cli.format)?;
    let budget = cli.budget;
    match &cli.command {
        Command::Validate { file } => commands::validate(file, f),
        Command::Modal { model } => commands::modal(model, f),
        Command::Disclosure {
            model,
            secret,
            witness,
        } => commands::disclosure(
            commands::DisclosureArgs {
                model,
                phi: &secret.phi,
                observe: &secret.observe,
                budget,
                witness: witness.as_deref(),
            },
            f,
        ),
        Command::DisclosePts {
            model,
            secret,
            symmetric,
        } => commands::disclose_pts(model, &secret.phi, &secret.observe, budget, *symmetric, f),
        Command::Prob {
            model,
            phi,
            samples,
            seed,
            horizon,
        } => commands::prob(
            commands::ProbArgs {
                model,
                phi,
                samples: *samples,
                seed: *seed,
                horizon: *horizon,
            },
            f,
        ),
        Command::Sat { pts, spec, out } => commands::sat(pts, spec, out.as_deref(), f),
        Command::Sim { s1, s2, out } => commands::sim(s1, s2, out.as_deref(), f),
        Command::Bisim { a1, a2 } => commands::bisim(a1, a2, f),
        Command::Transfer {
            s1,
            s2,
            depth,
            witness,
            out,
        } => commands::transfer(
            commands::TransferArgs {
                s1,
                s2,
                depth: *depth,
                witness: witness.as_deref(),
                out: out.as_deref(),
            },
            f,
        ),
        Command::Monotonic { s1, s2, secret } => commands::monotonic(
            commands::MonotonicArgs {
                s1,
                s2,
                phi: &secret.phi,
                observe: &secret.observe,
                budget,
            },
            f,
        ),
        Command::CheckWitness {
            kind,
            left,
            right,
            witness,
        } => commands::check_witness(*kind, left, right, witness, f),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(r) => {
            print!("{}", r.render());
            r.status.into()
        }
        Err(e) => {
            if e.status == Status::Negative {
                print!("{}", e.render());
            } else {
                eprint!("{}", e.render());
            }
            e.status.into()
        }
    }
}
