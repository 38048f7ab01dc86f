//! `tcl`: check, prove, refute, translate and render cyclic proofs for
//! transitive closure logic.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "tcl", version, about = "Cyclic proofs for reflexive transitive closure logic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate a proof file and decide its global trace condition.
    Check {
        file: PathBuf,
        #[command(flatten)]
        theory: TheoryArg,
        /// Also require non-overlapping basic cycles.
        #[arg(long)]
        normal: bool,
    },
    /// Search for a proof of a sequent, refuting it first on small models.
    Prove {
        /// The goal, e.g. `p(a) |- exists x. p(x)`, or a file holding it.
        goal: String,
        #[command(flatten)]
        theory: TheoryArg,
        #[arg(long, default_value_t = 12)]
        depth: usize,
        #[arg(long, default_value_t = 100_000)]
        max_nodes: u64,
        /// Largest model size of the up-front refutation (0 disables it).
        #[arg(long, default_value_t = 3)]
        model_size: usize,
        #[arg(long)]
        allow_cut: bool,
        /// Let buds point at any internal node, not only ancestors.
        #[arg(long)]
        global_companions: bool,
        #[command(flatten)]
        out: OutArg,
    },
    /// Search for a finite counter-model of a sequent.
    Refute {
        goal: String,
        #[command(flatten)]
        theory: TheoryArg,
        #[arg(long, default_value_t = 4)]
        model_size: usize,
    },
    /// Replace explicit induction in a finite proof by cycles.
    TranslateInd {
        file: PathBuf,
        #[command(flatten)]
        theory: TheoryArg,
        #[command(flatten)]
        out: OutArg,
    },
    /// Translate the RTC formulas of a formula file into arithmetic.
    TranslateBeta {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Pa)]
        mode: Mode,
        /// File with a β-formula in the free variables `c`, `i`, `k`.
        #[arg(long)]
        beta: Option<PathBuf>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Draw a proof as DOT, LaTeX or an indented tree.
    Render {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Args, Debug)]
struct TheoryArg {
    /// Theory file or bundled theory name (`none`, `arith`, `step`);
    /// defaults to the theory named by the proof, or `none` for goals.
    #[arg(long)]
    theory: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct OutArg {
    /// Write the result here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Tc,
    Pa,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Dot,
    Tex,
    Text,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::dispatch(cli.command) {
        Ok(verdict) => ExitCode::from(verdict as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}
