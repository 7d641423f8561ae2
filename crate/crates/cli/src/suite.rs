//! Pinned worked examples, rerun through the same request path as the CLI.

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::CliError;
use crate::request::{parse_request, Request};
use crate::{report, SCHEMA_VERSION};

pub struct Fixture {
    pub name: &'static str,
    pub args: &'static str,
    /// JSON pointer into the report and the pinned value.
    pub expect: Vec<(&'static str, Value)>,
}

pub fn fixtures() -> Vec<Fixture> {
    vec![
        Fixture {
            name: "universal bundle on Gr2(C4)",
            args: "analyze --type A3 --parabolic 1,3 --weight 1,0,0",
            expect: vec![
                ("/splitting/rank", json!("2")),
                ("/splitting/cramer_a", json!({"a1": "1", "a3": "0"})),
                ("/splitting/lambda_E", json!(["0", "-1", "0"])),
                ("/splitting/criterion/a2", json!("-1/2")),
                ("/splitting/splits", json!(false)),
            ],
        },
        Fixture {
            name: "tangent bundle of Gr2(C4)",
            args: "analyze --type A3 --parabolic 1,3 --weight 1,-2,1",
            expect: vec![
                ("/parabolic/delta_P", json!(["0", "4", "0"])),
                ("/splitting/rank", json!("4")),
                ("/splitting/lambda_E", json!(["0", "4", "0"])),
                ("/splitting/splits", json!(true)),
                ("/splitting/lambda_L0", json!(["0", "1", "0"])),
            ],
        },
        Fixture {
            name: "spinor bundle on Q5",
            args: "analyze --type B3 --parabolic 2,3 --weight 0,0,1",
            expect: vec![
                ("/splitting/rank", json!("4")),
                ("/splitting/cramer_a", json!({"a2": "2", "a3": "4"})),
                ("/splitting/lambda_E", json!(["-2", "0", "0"])),
                ("/splitting/criterion/a1", json!("-1/2")),
                ("/splitting/splits", json!(false)),
            ],
        },
        Fixture {
            name: "symmetric square of the spinor bundle on Q5",
            args: "analyze --type B3 --parabolic 2,3 --weight 0,0,2",
            expect: vec![
                ("/splitting/rank", json!("10")),
                ("/splitting/cramer_a", json!({"a2": "10", "a3": "20"})),
                ("/splitting/criterion/a1", json!("-1")),
                ("/splitting/splits", json!(true)),
                ("/splitting/lambda_L0", json!(["-1", "0", "0"])),
                ("/splitting/lambda_E0", json!(["0", "0", "0"])),
            ],
        },
        Fixture {
            name: "Spin(8) with m = (1,0)",
            args: "analyze --type D4 --parabolic 1,2 --weight 1,0,0,0",
            expect: vec![
                ("/parabolic/levi_det", json!("3")),
                ("/splitting/criterion", json!({"a3": "-1/3", "a4": "-1/3"})),
                ("/splitting/splits", json!(false)),
            ],
        },
        Fixture {
            name: "Spin(8) with m = (1,1)",
            args: "analyze --type D4 --parabolic 1,2 --weight 1,1,0,0",
            expect: vec![
                ("/splitting/criterion", json!({"a3": "-1", "a4": "-1"})),
                ("/splitting/splits", json!(true)),
            ],
        },
        Fixture {
            name: "O(1) on P1",
            args: "curvature --type A1 --kahler 1 --line 1",
            expect: vec![("/hym_constant", json!("1"))],
        },
        Fixture {
            name: "Einstein class of Gr2(C4)",
            args: "curvature --type A3 --parabolic 1,3 --line 1",
            expect: vec![
                ("/kahler", json!(["4"])),
                ("/trace", json!("1")),
                ("/hym_constant", json!("1")),
            ],
        },
        Fixture {
            name: "O(-1) on Q5",
            args: "curvature --type B3 --parabolic 2,3 --kahler 1 --line -1",
            expect: vec![("/hym_constant", json!("-5"))],
        },
        Fixture {
            name: "distance power on Q5 below the threshold",
            args: "spectral --dim 10 --profile point:s=4.9 --check-only",
            expect: vec![("/integrable/finite", json!(true)), ("/integrable/certificate/verdict", json!("converged"))],
        },
        Fixture {
            name: "distance power on Q5 at the threshold",
            args: "spectral --dim 10 --profile point:s=5 --check-only",
            expect: vec![("/integrable/finite", json!(false)), ("/integrable/certificate/verdict", json!("diverged"))],
        },
    ]
}

#[derive(Debug, Clone, Serialize)]
pub struct FixtureOutcome {
    pub name: &'static str,
    pub args: &'static str,
    pub passed: bool,
    pub mismatches: Vec<String>,
    pub report: Value,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub schema_version: u32,
    pub passed: usize,
    pub total: usize,
    pub fixtures: Vec<FixtureOutcome>,
}

impl SuiteReport {
    pub fn mismatches(&self) -> Vec<CliError> {
        self.fixtures
            .iter()
            .flat_map(|f| f.mismatches.iter().map(move |m| (f.name, m)))
            .map(|(name, m)| {
                let (field, rest) = m.split_once(": ").unwrap_or((m, ""));
                let (got, expected) = rest.split_once(" != ").unwrap_or((rest, ""));
                CliError::FixtureMismatch {
                    example: name.to_string(),
                    field: field.to_string(),
                    expected: expected.to_string(),
                    got: got.to_string(),
                }
            })
            .collect()
    }
}

pub fn run_fixture(fx: &Fixture) -> Result<FixtureOutcome, CliError> {
    let tokens: Vec<&str> = fx.args.split_whitespace().collect();
    let inv = parse_request(&tokens)?;
    let report = match &inv.request {
        Request::Analyze(r) => serde_json::to_value(report::analyze(r)?),
        Request::Curvature(r) => serde_json::to_value(report::curvature(r)?),
        Request::Spectral(r) => serde_json::to_value(report::spectral(r)?),
        Request::PaperSuite | Request::DumpRoots { .. } => unreachable!("fixtures are computations"),
    }
    .expect("reports serialize");
    let mismatches: Vec<String> = fx
        .expect
        .iter()
        .filter_map(|(ptr, want)| {
            let got = report.pointer(ptr).cloned().unwrap_or(Value::Null);
            (got != *want).then(|| format!("{ptr}: {got} != {want}"))
        })
        .collect();
    Ok(FixtureOutcome {
        name: fx.name,
        args: fx.args,
        passed: mismatches.is_empty(),
        mismatches,
        report,
    })
}

pub fn run_paper_suite() -> Result<SuiteReport, CliError> {
    let fixtures = fixtures()
        .iter()
        .map(run_fixture)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SuiteReport {
        schema_version: SCHEMA_VERSION,
        passed: fixtures.iter().filter(|f| f.passed).count(),
        total: fixtures.len(),
        fixtures,
    })
}
