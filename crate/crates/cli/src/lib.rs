//! Command-line front end for qharm: argument handling, dispatch, and report output.

pub mod commands;
pub mod config;
pub mod report;

use std::ffi::OsString;
use std::time::Instant;

use clap::Parser;

use config::{Cli, Format};
use report::{Report, Status, Timing};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_CHECK_FAILED: i32 = 2;
pub const EXIT_ERROR: i32 = 3;

/// The result of one invocation: exit code, rendered output, and diagnostics.
#[derive(Debug)]
pub struct Invocation {
    pub code: i32,
    pub report: Option<Report>,
    pub output: String,
    pub stderr: String,
}

fn failure(code: i32, stderr: String) -> Invocation {
    Invocation {
        code,
        report: None,
        output: String::new(),
        stderr,
    }
}

/// Parses `argv` (including the program name), runs the command, and renders the report.
pub fn run<I, T>(argv: I) -> Invocation
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Invocation {
                    code,
                    report: None,
                    output: text,
                    stderr: String::new(),
                }
            } else {
                failure(code, text)
            };
        }
    };
    if let Err(msg) = config::validate(&cli) {
        return failure(EXIT_USAGE, format!("error: {msg}\n"));
    }
    let start = Instant::now();
    let outcome = match cli.global.threads {
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(|| commands::run(&cli.command)),
            Err(e) => return failure(EXIT_ERROR, format!("error: {e}\n")),
        },
        None => commands::run(&cli.command),
    };
    let outcome = match outcome {
        Ok(o) => o,
        Err(e @ (qharm::Error::InvalidArgument(_) | qharm::Error::Parse { .. })) => {
            return failure(EXIT_USAGE, format!("error: {e}\n"))
        }
        Err(e) => return failure(EXIT_ERROR, format!("error: {e}\n")),
    };
    let command = argv
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    let mut report = Report::new(command, outcome.checks, outcome.result);
    if cli.global.timing {
        report.timing = Some(Timing {
            elapsed_ms: start.elapsed().as_millis() as u64,
        });
    }
    let output = match cli.global.format {
        Format::Json => serde_json::to_string_pretty(&report).expect("report serializes") + "\n",
        Format::Csv => render_csv(&outcome.table),
        Format::Text => render_text(&report, &outcome.table),
    };
    let code = if report.all_passed() {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    };
    Invocation {
        code,
        report: Some(report),
        output,
        stderr: String::new(),
    }
}

/// The output path from the arguments, if not standard output.
pub fn output_path(argv: &[OsString]) -> Option<std::path::PathBuf> {
    let cli = Cli::try_parse_from(argv).ok()?;
    let p = cli.global.output;
    (p.as_os_str() != "-").then_some(p)
}

fn render_csv(table: &commands::Table) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&table.header).expect("in-memory write");
    for row in &table.rows {
        w.write_record(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

fn render_text(report: &Report, table: &commands::Table) -> String {
    let mut out = String::new();
    let checks_table = table.header.first().map(String::as_str) == Some("check");
    if !checks_table {
        for c in &report.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Info => "INFO",
            };
            out += &format!("{tag} {}", c.name);
            if !c.detail.is_empty() {
                out += &format!(": {}", c.detail);
            }
            out += "\n";
        }
        out += &table.header.join("\t");
        out += "\n";
        for row in &table.rows {
            out += &row.join("\t");
            out += "\n";
        }
    } else {
        for c in &report.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Info => "INFO",
            };
            out += &format!("{tag} {}", c.name);
            if !c.detail.is_empty() {
                out += &format!(": {}", c.detail);
            }
            out += "\n";
            if let Some(x) = &c.counterexample {
                out += &format!(
                    "  input: {}\n  expected: {}\n  actual: {}\n",
                    x.input, x.expected, x.actual
                );
            }
        }
        if let Some(obj) = report.result.as_object() {
            for (k, v) in obj {
                let v = match v {
                    serde_json::Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                out += &format!("{k}: {v}\n");
            }
        }
    }
    let s = &report.summary;
    out += &format!(
        "summary: {} passed, {} failed, {} info\n",
        s.passed, s.failed, s.info
    );
    out
}
