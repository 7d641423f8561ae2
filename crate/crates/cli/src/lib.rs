//! Command-line front end: request parsing, report assembly and the fixture suite.

pub mod error;
pub mod report;
pub mod request;
pub mod suite;

pub use error::{CliError, ParseError, ParseErrorKind};
pub use report::SCHEMA_VERSION;
pub use request::{parse_request, render, Invocation, OutputFormat, Request};
pub use suite::run_paper_suite;

use serde::Serialize;

use report::Csv;

/// Rendered output and exit status of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: Vec<String>,
    pub exit: u8,
}

fn emit<R: Serialize + Csv>(r: &R, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => serde_json::to_string_pretty(r).expect("reports serialize") + "\n",
        OutputFormat::Csv => r.csv(),
    }
}

impl Csv for suite::SuiteReport {
    fn csv(&self) -> String {
        let mut rows = vec!["fixture,passed".to_string()];
        rows.extend(self.fixtures.iter().map(|f| format!("\"{}\",{}", f.name, f.passed)));
        rows.join("\n") + "\n"
    }
}

pub fn execute(inv: &Invocation) -> Result<Outcome, CliError> {
    let format = inv.output.format;
    let (stdout, stderr, exit) = match &inv.request {
        Request::Analyze(r) => (emit(&report::analyze(r)?, format), vec![], 0),
        Request::Curvature(r) => (emit(&report::curvature(r)?, format), vec![], 0),
        Request::Spectral(r) => (emit(&report::spectral(r)?, format), vec![], 0),
        Request::DumpRoots { lie_type } => (emit(&report::dump_roots(*lie_type), format), vec![], 0),
        Request::PaperSuite => {
            let suite = run_paper_suite()?;
            let mut errs: Vec<String> = suite.mismatches().iter().map(|e| e.to_string()).collect();
            let exit = if errs.is_empty() {
                0
            } else {
                let summary = CliError::SuiteFailed {
                    failed: suite.total - suite.passed,
                    total: suite.total,
                };
                errs.push(summary.to_string());
                summary.exit_code()
            };
            (emit(&suite, format), errs, exit)
        }
    };
    Ok(Outcome {
        stdout: if inv.output.quiet { String::new() } else { stdout },
        stderr,
        exit,
    })
}

/// Parses and runs `args` (without the program name).
pub fn run<S: AsRef<str>>(args: &[S]) -> Outcome {
    let result = parse_request(args).map_err(CliError::from).and_then(|inv| execute(&inv));
    match result {
        Ok(o) => o,
        Err(CliError::Parse(ParseError {
            kind: ParseErrorKind::Help(text),
            ..
        })) => Outcome {
            stdout: text,
            stderr: vec![],
            exit: 0,
        },
        Err(e) => Outcome {
            stdout: String::new(),
            stderr: vec![format!("error: {e}")],
            exit: e.exit_code(),
        },
    }
}
