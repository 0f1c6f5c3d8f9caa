use clap::Parser;
use std::io::Write;
use std::process::ExitCode;
use sumrank_cli::commands::{self, Outcome};
use sumrank_cli::config::{Cli, Command, Format, JobConfig};
use sumrank_cli::{exit_code, EXIT_INVALID, EXIT_REFUTED, EXIT_VERIFIED};

fn run(cli: Cli) -> anyhow::Result<(Outcome, JobConfig)> {
    let (flags, which) = match cli.command {
        Command::Construct(f) => (f, "construct"),
        Command::Verify(f) => (f, "verify"),
        Command::Report(f) => (f, "report"),
        Command::Search(f) => (f, "search"),
    };
    let cfg = JobConfig::from_flags(&flags)?;
    if let Some(jobs) = cfg.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()?;
    }
    let outcome = match which {
        "construct" => commands::construct(&cfg)?,
        "verify" => commands::verify(&cfg)?,
        "report" => commands::report(&cfg)?,
        _ => commands::search(&cfg)?,
    };
    Ok((outcome, cfg))
}

fn emit(outcome: &Outcome, cfg: &JobConfig) -> anyhow::Result<()> {
    let text = match cfg.format.unwrap_or_default() {
        Format::Json => serde_json::to_string_pretty(&outcome.doc)? + "\n",
        Format::Text => commands::render_text(&outcome.doc),
    };
    match &cfg.out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    ExitCode::SUCCESS
                }
                _ => ExitCode::from(EXIT_INVALID as u8),
            };
        }
    };
    let code = match run(cli) {
        Ok((outcome, cfg)) => match emit(&outcome, &cfg) {
            Ok(()) => match outcome.verdict {
                Some(false) => EXIT_REFUTED,
                _ => EXIT_VERIFIED,
            },
            Err(e) => {
                eprintln!("error: {e:#}");
                EXIT_INVALID
            }
        },
        Err(e) => {
            eprintln!("error: {e:#}");
            exit_code(&e)
        }
    };
    ExitCode::from(code as u8)
}
