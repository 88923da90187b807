mod args;
mod cmd;
mod config;
mod fail;
mod input;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};
use config::Config;
use fail::{Failure, Result, NO_RESULT};
use report::Report;

fn dispatch(cli: &Cli, cfg: &Config) -> Result<Report> {
    match &cli.command {
        Command::Seq(c) => cmd::seq::run(&c.action, cfg),
        Command::Assemble(a) => cmd::seq::assemble(a, cfg),
        Command::Translate(a) => cmd::genes::translate_cmd(a, cfg),
        Command::Orf(a) => cmd::genes::orf(a, cfg),
        Command::Splice(a) => cmd::genes::splice(a, cfg),
        Command::Align(a) => cmd::align::align_cmd(a, cfg),
        Command::Search(a) => cmd::align::search(a, cfg),
        Command::Scan(a) => cmd::align::scan(a),
        Command::Predict2s(a) => cmd::structure::predict_cmd(a, cfg),
        Command::Consensus(a) => cmd::structure::consensus_cmd(a),
        Command::Pmf(c) => cmd::pmf::run(&c.action, cfg),
        Command::Db(c) => cmd::db::run(c, cfg),
        Command::Tree(c) => cmd::tree::run(&c.action, cfg),
    }
}

fn run(cli: &Cli) -> Result<()> {
    let cfg = match &cli.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    let mut report = dispatch(cli, &cfg)?;
    let mut body = if cli.json {
        let mut j = serde_json::to_string_pretty(&report.json).map_err(|e| Failure::data(e.to_string()))?;
        j.push('\n');
        j
    } else {
        std::mem::take(&mut report.text)
    };
    match &cli.output {
        Some(path) => std::fs::write(path, body.as_bytes())
            .map_err(|e| Failure::data(format!("cannot write {}: {e}", path.display())))?,
        None => {
            let mut out = std::io::stdout().lock();
            match out.write_all(body.as_bytes()).and_then(|_| out.flush()) {
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => return Ok(()),
                other => other.map_err(|e| Failure::data(format!("cannot write output: {e}")))?,
            }
        }
    }
    body.clear();
    match report.empty {
        Some(why) if cli.strict => Err(Failure { code: NO_RESULT, message: why }),
        _ => Ok(()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
            eprintln!("{}", Failure::usage("a subcommand is required"));
            eprint!("{}", e.render());
            return ExitCode::from(fail::USAGE as u8);
        }
        Err(e) => {
            let msg = e.render().to_string();
            eprintln!("{}", Failure::usage(msg.trim_start_matches("error: ").trim_end()));
            return ExitCode::from(fail::USAGE as u8);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("{f}");
            ExitCode::from(f.code as u8)
        }
    }
}
