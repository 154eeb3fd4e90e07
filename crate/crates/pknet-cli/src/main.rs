//! `pknet`: poly-Klumpenhouwer network analysis from the command line.
//!
//! Workspaces come from a JSON config (`--config`); without one a built-in
//! workspace ships the Berg Op. 5/2 and Webern Op. 11/2 material. Exit codes:
//! 0 success, 1 verification failure (including unsolvable transports),
//! 2 input error, 3 resource bound exceeded.

mod commands;
mod dot;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use pknet_core::Error;

#[derive(Parser)]
#[command(name = "pknet", version, about = "Transformational analysis with PK-nets")]
pub struct Cli {
    /// Workspace JSON; defaults to the built-in Berg/Webern workspace.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    /// Emit machine-readable JSON instead of tables.
    #[arg(long, global = true)]
    pub json: bool,

    /// Spell pitch classes with flats (E♭ instead of D♯).
    #[arg(long, global = true)]
    pub flats: bool,

    /// Show transpositions as T0–T11 instead of signed shorthand like T-2.
    #[arg(long, global = true)]
    pub normalize_labels: bool,

    /// Node budget for network enumeration (overrides the config bound).
    #[arg(long, global = true, value_name = "N")]
    pub bound: Option<u64>,

    /// Seed for the randomized instances inside `verify`.
    #[arg(long, global = true, value_name = "N", default_value_t = 0)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// List every morphism from one chord class to another.
    Homset {
        /// Source class name.
        from: String,
        /// Target class name.
        to: String,
    },
    /// Solve the transport between each consecutive pair of a progression.
    Analyze {
        /// Progression name from the workspace.
        progression: String,
    },
    /// Apply the class morphism anchored at ELEMENT to a named network.
    Act {
        /// Network name from the workspace.
        net: String,
        /// Target class name.
        to: String,
        /// Anchor group element, e.g. `T3`, `I8`, `T-2`.
        element: String,
    },
    /// Enumerate every network of a class over the workspace context.
    Nf {
        /// Class name from the workspace.
        class: String,
    },
    /// Pull the class groupoid back along a quotient section and report
    /// its endomorphism and coset structure.
    Subgroupoid {
        /// Section name from the workspace; identity section if omitted.
        #[arg(long)]
        section: Option<String>,
        /// Comma-separated class names (default: U,V).
        #[arg(long, value_delimiter = ',')]
        classes: Vec<String>,
    },
    /// Build the bisection group of the pulled-back groupoid and compare
    /// it with the wreath product in frame coordinates.
    Bisections {
        /// Section name from the workspace; identity section if omitted.
        #[arg(long)]
        section: Option<String>,
        /// Comma-separated class names (default: U,V).
        #[arg(long, value_delimiter = ',')]
        classes: Vec<String>,
    },
    /// Compare the bisections of an abstract pair groupoid with Z wr Sn.
    WreathIso {
        /// Order of the cyclic vertex group Z.
        #[arg(long, value_name = "N")]
        base_order: usize,
        /// Number of objects n.
        #[arg(long, value_name = "N")]
        copies: usize,
    },
    /// Flatten the pulled-back groupoid onto a pair groupoid through a
    /// transport frame.
    Trivialize {
        /// Section name from the workspace; identity section if omitted.
        #[arg(long)]
        section: Option<String>,
        /// Comma-separated class names (default: U,V).
        #[arg(long, value_delimiter = ',')]
        classes: Vec<String>,
    },
    /// Run the verification batteries.
    Verify {
        /// groups | functor-groupoid | subgroupoid | bisections | all
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// Emit a DOT drawing of an analyzed progression.
    Dot {
        /// Progression name from the workspace.
        progression: String,
    },
}

/// Anything that stops a command, tagged with how it maps to an exit code.
pub enum Failure {
    Core(Error),
    Input(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(error: Error) -> Failure {
        Failure::Core(error)
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Core(e) => write!(f, "{e}"),
            Failure::Input(msg) | Failure::Verification(msg) => write!(f, "{msg}"),
        }
    }
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Core(Error::NoTransport { .. }) => 1,
            Failure::Core(e) if e.is_resource_bound() => 3,
            Failure::Core(_) | Failure::Input(_) => 2,
            Failure::Verification(_) => 1,
        }
    }
}

fn main() -> ExitCode {
    // Die quietly when the consumer of a pipe goes away (e.g. `pknet … | head`).
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {failure}");
            ExitCode::from(failure.exit_code())
        }
    }
}
