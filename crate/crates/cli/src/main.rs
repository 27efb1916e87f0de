//! `earl`: batch front end for the EARL emotion toolkit.
//!
//! Exit status: 0 success, 1 usage error, 2 input or parse error,
//! 3 access denied (`decide` only).

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};

mod commands;
mod corpus;

#[derive(Parser, Debug)]
#[command(name = "earl", version, about = "EARL emotion annotation toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse and validate every .xml file under a path; findings go to stderr.
    Validate {
        path: PathBuf,
        /// Vocabulary profile XML file.
        #[arg(long)]
        profile: Option<PathBuf>,
        /// Empty profile sets accept nothing, and warnings count as errors.
        #[arg(long)]
        strict: bool,
    },
    /// Tag text with lexicon emotions and print EARL XML.
    Annotate {
        #[arg(long)]
        text: String,
        /// Lexicon file (`emotion: marker, marker, ...`); defaults to the bundled one.
        #[arg(long)]
        lexicon: Option<PathBuf>,
    },
    /// Rank emotions for a voice or movement feature file (`field=value` lines).
    #[command(group(ArgGroup::new("features").required(true).args(["voice", "movement"])))]
    Classify {
        #[arg(long)]
        voice: Option<PathBuf>,
        #[arg(long)]
        movement: Option<PathBuf>,
    },
    /// Fuse an evidence stream (`t source category p i` lines) and print EARL XML.
    Fuse {
        #[arg(long)]
        evidence: PathBuf,
        /// Fusion config (`key=value` lines).
        #[arg(long)]
        config: Option<PathBuf>,
        /// Query time in seconds; defaults to the last timestamp in the stream.
        #[arg(long)]
        at: Option<f64>,
    },
    /// Decide access to a resource; exit 0 allow, 3 deny.
    Decide {
        #[arg(long)]
        evidence: PathBuf,
        #[arg(long)]
        resource: String,
        /// Policy file (`resource deny_when behavior >= threshold` lines).
        #[arg(long)]
        policy: PathBuf,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        at: Option<f64>,
    },
    /// Corpus summary as `key<TAB>value` lines, or JSON with --json.
    Stats {
        path: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

/// Failure of a subcommand, mapped onto the exit status.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Input(String),
}

impl CliError {
    pub fn input(path: &Path, e: impl std::fmt::Display) -> Self {
        CliError::Input(format!("{}: {e}", path.display()))
    }
}

pub const EXIT_DENY: u8 = 3;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match cli.command {
        Command::Validate {
            path,
            profile,
            strict,
        } => commands::validate(&path, profile.as_deref(), strict),
        Command::Annotate { text, lexicon } => commands::annotate(&text, lexicon.as_deref()),
        Command::Classify { voice, movement } => {
            commands::classify(voice.as_deref(), movement.as_deref())
        }
        Command::Fuse {
            evidence,
            config,
            at,
        } => commands::fuse(&evidence, config.as_deref(), at),
        Command::Decide {
            evidence,
            resource,
            policy,
            config,
            at,
        } => commands::decide(&evidence, &resource, &policy, config.as_deref(), at),
        Command::Stats { path, json } => commands::stats(&path, json),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
