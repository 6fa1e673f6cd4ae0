use std::io::{self, Write};
use std::process;
use std::time::Instant;

use clap::{Parser, Subcommand};

use yangian_cli::commands::{
    cmd_build, cmd_character, cmd_decompose, cmd_dim, cmd_verify, Method, Suite, VerifyOptions,
};
use yangian_cli::parse::parse_roots;
use yangian_cli::report::RunReport;

/// Exact computations with finite-dimensional Yangian modules.
#[derive(Parser)]
#[command(name = "yangian", version, about)]
struct Cli {
    /// Emit a machine-readable JSON report instead of text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decompose a root multiset into strings and report the counts
    Decompose {
        /// Roots as "a,b,c" with optional "/q" fractions and "^m" multiplicities
        roots: String,
    },
    /// Compute the character of the irreducible module for a root multiset
    Character {
        roots: String,
        /// Which computation to run; "all" cross-checks them
        #[arg(long, value_enum, default_value = "all")]
        method: Method,
    },
    /// Construct the irreducible module and print its generator matrices
    Build { roots: String },
    /// Dimension of the irreducible module for a root multiset
    Dim { roots: String },
    /// Run a verification suite of theorem-backed identities
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Seed for the sampled corpora
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest sampled polynomial degree
        #[arg(long, visible_alias = "deg", default_value_t = 5)]
        max_deg: usize,
        /// Largest string length on the evaluation grid
        #[arg(long, default_value_t = 4)]
        max_r: usize,
        /// Check defining relations up to k + l <= this level
        #[arg(long, default_value_t = 6)]
        max_level: usize,
        /// Also run controls that must fail
        #[arg(long)]
        negative_controls: bool,
    },
}

fn emit(text: &str) {
    let mut out = io::stdout().lock();
    if let Err(e) = out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        if e.kind() == io::ErrorKind::BrokenPipe {
            process::exit(0);
        }
        eprintln!("error: cannot write to stdout: {}", e);
        process::exit(1);
    }
}

fn roots_or_exit(input: &str) -> yangian::strings::RootMultiset {
    match parse_roots(input) {
        Ok(roots) => roots,
        Err(e) => {
            eprintln!("error: invalid root list: {}", e);
            process::exit(2);
        }
    }
}

fn main() {
    let cli = Cli::parse();
    let start = Instant::now();
    let report: RunReport = match &cli.command {
        Command::Decompose { roots } => cmd_decompose(&roots_or_exit(roots)),
        Command::Character { roots, method } => cmd_character(&roots_or_exit(roots), *method),
        Command::Build { roots } => cmd_build(&roots_or_exit(roots)),
        Command::Dim { roots } => cmd_dim(&roots_or_exit(roots)),
        Command::Verify {
            suite,
            seed,
            max_deg,
            max_r,
            max_level,
            negative_controls,
        } => cmd_verify(
            *suite,
            &VerifyOptions {
                seed: *seed,
                max_deg: *max_deg,
                max_r: *max_r,
                max_level: *max_level,
                negative_controls: *negative_controls,
            },
        ),
    };
    if cli.json {
        emit(&format!("{}\n", report.to_json_string()));
    } else {
        emit(&report.render_text(start.elapsed()));
    }
    process::exit(report.exit_code());
}
