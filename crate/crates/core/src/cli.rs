//! Command-line front end: argument parsing and the five subcommands.
//!
//! Every command returns a [`CommandOutput`] instead of printing, so the
//! binary stays a two-line wrapper and tests can drive commands in-process.
//! Exit codes: 0 ok, 1 validation failure, 2 parse error.

use std::path::PathBuf;

use chrono::NaiveDate;
use clap::{Args, Parser, Subcommand};

use crate::journal::Journal;
use crate::parser::{validate_file, ParseOptions, ValidationStatus};
use crate::report::{
    balance_report, equation_report, flows_report, schedule_report, BasisMode, NumberForm, RenderOptions,
    MAX_DECIMAL_PLACES,
};

#[derive(Debug, Parser)]
#[command(name = "pacioli", version, about = "Double-entry journals on the T-account group")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and validate a journal.
    Check(CommonArgs),
    /// Reduced balances as of a date, as a tree.
    Balance {
        #[command(flatten)]
        common: CommonArgs,
        /// Cutoff date, inclusive (default: last transaction).
        #[arg(long, value_parser = parse_date)]
        at: Option<NaiveDate>,
    },
    /// Net flow per account over (from, to].
    Flows {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, value_parser = parse_date)]
        from: NaiveDate,
        #[arg(long, value_parser = parse_date)]
        to: NaiveDate,
    },
    /// The zero-account equation as of a date.
    Equation {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, value_parser = parse_date)]
        at: Option<NaiveDate>,
    },
    /// Transactions generated by the journal's matching schedules.
    Schedule(CommonArgs),
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Journal file.
    pub file: PathBuf,
    /// Show amounts as fractions of the declared basis.
    #[arg(long)]
    pub percent: bool,
    /// Render decimals with this many places (0-12) instead of rationals.
    #[arg(long, value_name = "places", value_parser = clap::value_parser!(u32).range(0..=MAX_DECIMAL_PLACES as i64))]
    pub decimal: Option<u32>,
    /// Keep accounts whose balance is zero.
    #[arg(long)]
    pub show_zero: bool,
    /// Declare accounts on first use instead of rejecting them.
    #[arg(long)]
    pub loose: bool,
}

impl CommonArgs {
    fn render_options(&self) -> RenderOptions {
        RenderOptions {
            form: self.decimal.map_or(NumberForm::Rational, NumberForm::Decimal),
            basis_mode: if self.percent { BasisMode::PercentOfBasis } else { BasisMode::Raw },
            show_zero: self.show_zero,
        }
    }

    fn parse_options(&self) -> ParseOptions {
        let options = ParseOptions::named(self.file.display().to_string());
        if self.loose {
            options.loose()
        } else {
            options
        }
    }
}

fn parse_date(s: &str) -> Result<NaiveDate, String> {
    NaiveDate::parse_from_str(s, "%Y-%m-%d").map_err(|e| format!("expected YYYY-MM-DD: {e}"))
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CommandOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandOutput {
    fn fail(code: i32, mut stderr: String, message: impl std::fmt::Display) -> Self {
        stderr.push_str(&format!("error: {message}\n"));
        CommandOutput { code, stdout: String::new(), stderr }
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Usage errors come back with clap's exit code 2 and its message.
pub fn run<I, T>(args: I) -> CommandOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli.command),
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                CommandOutput { code: 2, stdout: String::new(), stderr: text }
            } else {
                CommandOutput { code: 0, stdout: text, stderr: String::new() }
            }
        }
    }
}

pub fn execute(command: &Command) -> CommandOutput {
    let common = match command {
        Command::Check(c) | Command::Schedule(c) => c,
        Command::Balance { common, .. } | Command::Flows { common, .. } | Command::Equation { common, .. } => common,
    };
    let text = match std::fs::read_to_string(&common.file) {
        Ok(t) => t,
        Err(e) => return CommandOutput::fail(2, String::new(), format!("cannot read {}: {e}", common.file.display())),
    };
    let options = common.render_options();
    let parse = common.parse_options();
    match command {
        Command::Check(_) => cmd_check(&text, &parse),
        Command::Balance { at, .. } => cmd_balance(&text, &parse, *at, &options),
        Command::Flows { from, to, .. } => cmd_flows(&text, &parse, *from, *to, &options),
        Command::Equation { at, .. } => cmd_equation(&text, &parse, *at, &options),
        Command::Schedule(_) => cmd_schedule(&text, &parse, &options),
    }
}

/// Validation summary on stdout; diagnostics on stderr.
pub fn cmd_check(text: &str, parse: &ParseOptions) -> CommandOutput {
    let report = validate_file(text, parse);
    let stderr: String = report.diagnostics.iter().map(|d| format!("{d}\n")).collect();
    CommandOutput { code: report.status.exit_code(), stdout: format!("{}\n", report.summary()), stderr }
}

/// Validates first; reports only run on journals that check clean.
fn with_journal(
    text: &str,
    parse: &ParseOptions,
    render: impl FnOnce(&Journal) -> crate::error::Result<String>,
) -> CommandOutput {
    let report = validate_file(text, parse);
    let stderr: String = report.diagnostics.iter().map(|d| format!("{d}\n")).collect();
    match (report.status, report.journal) {
        (ValidationStatus::Ok, Some(journal)) => match render(&journal) {
            Ok(stdout) => CommandOutput { code: 0, stdout, stderr },
            Err(e) => CommandOutput::fail(1, stderr, e),
        },
        (status, _) => {
            let summary = report_summary(status);
            CommandOutput::fail(status.exit_code(), stderr, summary)
        }
    }
}

fn report_summary(status: ValidationStatus) -> &'static str {
    match status {
        ValidationStatus::ParseError => "journal could not be parsed",
        _ => "journal failed validation",
    }
}

pub fn cmd_balance(text: &str, parse: &ParseOptions, at: Option<NaiveDate>, options: &RenderOptions) -> CommandOutput {
    with_journal(text, parse, |j| balance_report(j, at, options))
}

pub fn cmd_flows(
    text: &str,
    parse: &ParseOptions,
    from: NaiveDate,
    to: NaiveDate,
    options: &RenderOptions,
) -> CommandOutput {
    with_journal(text, parse, |j| flows_report(j, from, to, options))
}

pub fn cmd_equation(text: &str, parse: &ParseOptions, at: Option<NaiveDate>, options: &RenderOptions) -> CommandOutput {
    with_journal(text, parse, |j| equation_report(j, at, options))
}

pub fn cmd_schedule(text: &str, parse: &ParseOptions, options: &RenderOptions) -> CommandOutput {
    with_journal(text, parse, |j| schedule_report(j, options))
}
