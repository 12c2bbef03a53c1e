use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;

#[derive(Parser, Debug)]
#[command(name = "beauville", version, about = "Beauville structures and strong reality for finite groups")]
struct Cli {
    /// Worker threads (1 runs sequentially, 0 uses every core).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Output {
    /// Write the certificate (JSON) to this path.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Group order, or the order of one element.
    Order { spec: String, element: Option<String> },
    /// Σ-set of a pair.
    Sigma { spec: String, x: String, y: String },
    /// Check a Beauville structure.
    Verify {
        spec: String,
        /// Structure file, or one of the builtins paper.an, paper.m11a5.
        #[arg(long)]
        structure: String,
        #[command(flatten)]
        output: Output,
    },
    /// Strong-reality check of a structure.
    Reality {
        spec: String,
        #[arg(long)]
        structure: String,
        #[arg(long, default_value = "auto")]
        backend: String,
        #[command(flatten)]
        output: Output,
    },
    /// Purity verdict of an enumerable group.
    Classify {
        spec: String,
        #[arg(long, default_value = "auto")]
        backend: String,
        /// Structures listed in the certificate.
        #[arg(long, default_value_t = 20)]
        list: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Look for structures among candidate pairs.
    Search {
        spec: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of candidate pairs.
        #[arg(long, default_value_t = 200)]
        budget: u64,
        /// Walk the enumeration instead of drawing at random.
        #[arg(long)]
        systematic: bool,
        /// Structure file whose two pairs are tried first.
        #[arg(long)]
        structure: Option<String>,
        /// Largest number of structures reported.
        #[arg(long, default_value_t = 10)]
        max: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Which classes some backend automorphism sends to their inverses.
    ReportClasses {
        spec: String,
        #[arg(long, default_value = "auto")]
        backend: String,
    },
    /// The explicit alternating-group structures for A(n), n > 6.
    PaperAn {
        n: usize,
        #[command(flatten)]
        output: Output,
    },
    /// The explicit structure of M11 x A5.
    PaperM11a5 {
        #[command(flatten)]
        output: Output,
    },
    /// Inner simultaneous inverters for generating pairs of L2(8).
    Macbeath {
        /// Run over every pair instead of first elements from class representatives.
        #[arg(long)]
        all: bool,
    },
    /// Re-validate a certificate.
    Recheck { certificate: PathBuf },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
