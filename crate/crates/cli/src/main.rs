use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use injdom::{Bounds, Error};

mod report;
mod run;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Verb {
    /// Decide whether the ring has a middle class.
    Classify,
    /// Decide whether some simple module is in the middle class.
    SimpleMc,
    /// Classify R_R, the simple modules and the local length-two modules.
    Oracle,
    /// Search subquotients of R_R for a middle-class module.
    Witness,
    /// Compare the criteria verdict with the bounded witness search.
    CrossCheck,
    /// List the simple modules up to isomorphism.
    Simples,
    /// Both classifications with every criterion.
    Report,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "injdom", version, about = "Injectivity domains and middle classes of finite rings")]
pub struct Command {
    #[arg(value_enum)]
    pub verb: Verb,
    /// Ring recipe, e.g. "trimat(zmod(4),zmod(2))".
    pub spec: String,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    #[arg(long, default_value_t = 512, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_ring_size: u64,
    #[arg(long, default_value_t = 512, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_module_size: u64,
    #[arg(long, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_hom_candidates: u64,
    /// Worker threads; defaults to the number of cores.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub threads: Option<u64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Include wall-clock timings in the report.
    #[arg(long)]
    pub timings: bool,
}

impl Command {
    pub fn bounds(&self) -> Bounds {
        Bounds {
            max_ring_size: self.max_ring_size as usize,
            max_module_size: self.max_module_size as usize,
            max_hom_candidates: self.max_hom_candidates,
            ..Bounds::default()
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Syntax { .. } => 2,
        Error::BoundExceeded { .. } => 3,
        Error::TheoremMismatch(_) => 5,
        _ => 4,
    }
}

fn main() -> ExitCode {
    let cmd = Command::parse();
    if let Some(n) = cmd.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n as usize).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(4);
        }
    }
    match run::run(&cmd) {
        Ok(r) => {
            println!("{}", report::emit(&r, cmd.format));
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
