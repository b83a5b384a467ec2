//! `fgsr`: subword counts, full sets and count-matrix towers of free group
//! automorphisms from the command line.

use std::io::{Read, Write};
use std::process::ExitCode;

use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};

use fgsr::cli::{run_command, CommandSpec, Config, OutputFormat, VerifyMode, DEFAULT_K_CAP};

#[derive(Parser, Debug)]
#[command(name = "fgsr", version, about = "Subword counts under free group automorphisms")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Rank of the free group; generators are x, y, z, a, b, ...
    #[arg(long, global = true, default_value_t = 2)]
    n: usize,
    /// Seed for randomized campaigns.
    #[arg(long, global = true, env = "FGSR_SEED", default_value_t = 0)]
    seed: u64,
    /// Number of random trials for `verify`.
    #[arg(long, global = true, default_value_t = 100)]
    trials: usize,
    /// Largest accepted level.
    #[arg(long, global = true, default_value_t = DEFAULT_K_CAP)]
    k_cap: usize,
    /// Orientation overrides: preferred spellings such as `yx,Yx`.
    #[arg(long, global = true)]
    sigma: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    output: Format,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Counting,
    Defining,
    Tower,
    Composition,
    Kernel,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Length-k subword counts of a word.
    Pi {
        #[arg(long)]
        word: String,
        #[arg(long)]
        k: usize,
        /// Treat the word as cyclic (default) or as a segment.
        #[arg(long, action = ArgAction::Set, default_value_t = true)]
        cyclic: bool,
    },
    /// The minimal full set of a word under an automorphism.
    Fullset {
        #[arg(long)]
        word: String,
        #[arg(long)]
        moves: String,
        #[arg(long, action = ArgAction::Set, default_value_t = false)]
        cyclic: bool,
    },
    /// Level k of the count-matrix tower.
    Matrix {
        #[arg(long)]
        moves: String,
        #[arg(long)]
        k: usize,
    },
    /// Kernel rank and Smith invariants of the affix difference at level k.
    Rank {
        #[arg(long)]
        k: usize,
    },
    /// Runs an exact verification campaign.
    Verify {
        #[arg(long)]
        moves: Option<String>,
        #[arg(long)]
        moves2: Option<String>,
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long, default_value_t = 2)]
        k: usize,
    },
    /// First level and generator separating two automorphisms.
    Distinguish {
        #[arg(long)]
        moves: String,
        #[arg(long)]
        moves2: String,
        /// Largest level to try.
        #[arg(long, default_value_t = 4)]
        k: usize,
        #[arg(long, action = ArgAction::Set, default_value_t = true)]
        cyclic: bool,
    },
    /// Lifts a kernel vector (JSON object file, `-` for stdin) to cyclic words.
    Lift {
        #[arg(long)]
        vector: String,
        #[arg(long)]
        k: usize,
    },
}

fn read_vector(path: &str) -> std::io::Result<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let g = cli.global;
    let config = Config {
        n: g.n,
        seed: g.seed,
        trials: g.trials,
        k_cap: g.k_cap,
        sigma_override: g.sigma,
        output: match g.output {
            Format::Json => OutputFormat::Json,
            Format::Text => OutputFormat::Text,
        },
    };
    let spec = match cli.command {
        Command::Pi { word, k, cyclic } => CommandSpec::Pi { word, k, cyclic },
        Command::Fullset { word, moves, cyclic } => CommandSpec::FullSet { word, moves, cyclic },
        Command::Matrix { moves, k } => CommandSpec::Matrix { moves, k },
        Command::Rank { k } => CommandSpec::Rank { k },
        Command::Verify { moves, moves2, mode, k } => {
            let mode = match mode {
                ModeArg::Counting => VerifyMode::Counting,
                ModeArg::Defining => VerifyMode::Defining,
                ModeArg::Tower => VerifyMode::Tower,
                ModeArg::Composition => VerifyMode::Composition,
                ModeArg::Kernel => VerifyMode::Kernel,
            };
            CommandSpec::Verify { moves, moves2, mode, k }
        }
        Command::Distinguish { moves, moves2, k, cyclic } => CommandSpec::Distinguish { moves, moves2, k, cyclic },
        Command::Lift { vector, k } => match read_vector(&vector) {
            Ok(text) => CommandSpec::Lift { vector: text, k },
            Err(e) => {
                eprintln!("error: cannot read {vector}: {e}");
                return ExitCode::from(2);
            }
        },
    };
    let out = run_command(&spec, &config);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    let _ = std::io::stdout().flush();
    ExitCode::from(out.code as u8)
}
