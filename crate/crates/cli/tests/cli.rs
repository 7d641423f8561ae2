use std::process::Command;

use parabolica::request::{AnalysisRequest, CurvatureRequest, OutputOptions, ProfileKind, ProfileSpec, SpectralRequest};
use parabolica::{parse_request, render, run, run_paper_suite, Invocation, OutputFormat, ParseErrorKind, Request};
use parabolica_core::{ExactScalar, Rational};
use serde_json::Value;

fn tokens(line: &str) -> Vec<&str> {
    line.split_whitespace().collect()
}

fn analysis(line: &str) -> AnalysisRequest {
    match parse_request(&tokens(line)).unwrap().request {
        Request::Analyze(r) => r,
        other => panic!("{other:?}"),
    }
}

#[test]
fn parses_spinor_and_universal_requests() {
    let spinor = analysis("analyze --type B3 --parabolic 2,3 --weight 0,0,1");
    assert_eq!(spinor.lie_type.to_string(), "B3");
    assert_eq!(spinor.parabolic, vec![2, 3]);
    assert_eq!(spinor.weight, vec![0, 0, 1]);
    let universal = analysis("analyze --type A3 --parabolic 3,1 --weight 1,0,0");
    assert_eq!(universal.parabolic, vec![1, 3]);
    assert_eq!(analysis("analyze --type A3 --parabolic 1,3 --weight=-1,2,-3").weight, vec![-1, 2, -3]);
}

#[test]
fn input_errors_carry_token_positions() {
    let err = |line: &str| parse_request(&tokens(line)).unwrap_err();
    let full = err("analyze --type A3 --parabolic 1,2,3 --weight 1,0,0");
    assert_eq!(full.kind, ParseErrorKind::FullSetNotParabolic);
    assert_eq!(full.position, Some(4));
    let family = err("analyze --type Q3 --weight 1,0,0");
    assert!(matches!(family.kind, ParseErrorKind::UnknownType(_)));
    assert_eq!(family.position, Some(2));
    let index = err("analyze --type B3 --parabolic 0,2 --weight 0,0,1");
    assert_eq!(index.kind, ParseErrorKind::BadIndex { index: 0, rank: 3 });
    let dup = err("analyze --type B3 --parabolic 2,2 --weight 0,0,1");
    assert_eq!(dup.kind, ParseErrorKind::DuplicateIndex(2));
    let len = err("analyze --type B3 --parabolic 2,3 --weight 0,1");
    assert!(matches!(len.kind, ParseErrorKind::LengthMismatch { expected: 3, got: 2, .. }));
    assert_eq!(len.position, Some(6));
    let kahler = err("curvature --type A3 --parabolic 1,3 --kahler 0 --line 1");
    assert!(matches!(kahler.kind, ParseErrorKind::NotKahler { position: 1, .. }));
    let unknown = err("analyze --type B3 --bogus 1 --weight 0,0,1");
    assert!(matches!(unknown.kind, ParseErrorKind::Syntax(_)));
    assert_eq!(unknown.position, Some(3));
    let profile = err("spectral --profile point:t=1");
    assert!(matches!(profile.kind, ParseErrorKind::BadProfile(_)));
}

fn sample_invocations() -> Vec<Invocation> {
    let q = |n, d| Rational::from_frac(n, d);
    let plain = OutputOptions::default();
    let csv_quiet = OutputOptions {
        format: OutputFormat::Csv,
        quiet: true,
    };
    let mut out = Vec::new();
    for (t, parabolic, weight) in [
        ("A3", vec![1, 3], vec![1, 0, 0]),
        ("B3", vec![2, 3], vec![0, 0, 2]),
        ("D4", vec![1, 2], vec![1, 1, -4, 0]),
        ("G2", vec![], vec![-2, 5]),
        ("E8", vec![1, 2, 3, 4, 5, 6, 7], vec![0, 0, 0, 0, 0, 0, 0, -3]),
    ] {
        for kahler in [None, Some(vec![q(7, 3); 8 - parabolic.len().min(8)])] {
            let rank = weight.len();
            let kahler = kahler.map(|mut k| {
                k.truncate(rank - parabolic.len());
                k
            });
            out.push(Invocation {
                output: plain.clone(),
                request: Request::Analyze(AnalysisRequest {
                    lie_type: t.parse().unwrap(),
                    parabolic: parabolic.clone(),
                    weight: weight.clone(),
                    kahler,
                }),
            });
        }
    }
    out.push(Invocation {
        output: csv_quiet.clone(),
        request: Request::Curvature(CurvatureRequest {
            lie_type: "C4".parse().unwrap(),
            parabolic: vec![2],
            kahler: Some(vec![q(1, 2), q(3, 1), q(5, 7)]),
            line: vec![-1, 0, 4],
        }),
    });
    out.push(Invocation {
        output: plain.clone(),
        request: Request::Curvature(CurvatureRequest {
            lie_type: "A1".parse().unwrap(),
            parabolic: vec![],
            kahler: None,
            line: vec![3],
        }),
    });
    for (kind, offset, res) in [(ProfileKind::Point, 0.0, None), (ProfileKind::Sub { k: 1 }, -0.125, Some(64))] {
        out.push(Invocation {
            output: csv_quiet.clone(),
            request: Request::Spectral(SpectralRequest {
                dim: 3,
                modes: 17,
                profile: ProfileSpec { kind, s: 0.1 + 0.2, offset },
                side: 1.0 / 3.0,
                hym: q(-5, 4),
                kappa: -1e-7,
                resolution: res,
                check_only: res.is_none(),
            }),
        });
    }
    out.push(Invocation {
        output: plain.clone(),
        request: Request::PaperSuite,
    });
    out.push(Invocation {
        output: csv_quiet,
        request: Request::DumpRoots {
            lie_type: "F4".parse().unwrap(),
        },
    });
    out
}

#[test]
fn render_round_trips() {
    for inv in sample_invocations() {
        let toks = render(&inv);
        assert_eq!(parse_request(&toks).unwrap(), inv, "{toks:?}");
    }
}

#[test]
fn json_is_byte_stable() {
    let args = tokens("analyze --type D4 --parabolic 1,2 --weight 1,1,0,0 --kahler 2,3/2");
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.exit, 0);
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_str(&a.stdout).unwrap();
    assert_eq!(v["schema_version"], 1);
    let at = |key: &str| a.stdout.find(&format!("\n  \"{key}\":")).unwrap();
    let order = ["schema_version", "request", "root_system", "parabolic", "splitting", "curvature"];
    assert!(order.windows(2).all(|w| at(w[0]) < at(w[1])));
    assert_eq!(v["splitting"]["criterion"]["a3"], "-1");
    assert_eq!(v["request"]["kahler"][1], "3/2");
}

#[test]
fn paper_suite_passes() {
    let suite = run_paper_suite().unwrap();
    assert_eq!(suite.passed, suite.total);
    assert!(suite.total >= 9);
    assert!(suite.mismatches().is_empty());
    let names: Vec<&str> = suite.fixtures.iter().map(|f| f.name).collect();
    assert!(names.iter().any(|n| n.contains("Spin(8)")));
}

#[test]
fn fixture_mismatch_is_reported_by_field() {
    let mut fx = parabolica::suite::fixtures().remove(2);
    fx.expect = vec![("/splitting/criterion/a1", serde_json::json!("-1"))];
    let outcome = parabolica::suite::run_fixture(&fx).unwrap();
    assert!(!outcome.passed);
    assert_eq!(outcome.mismatches, vec![r#"/splitting/criterion/a1: "-1/2" != "-1""#]);
}

#[test]
fn curvature_command_values() {
    let out = run(&tokens("curvature --type A3 --parabolic 1,3 --kahler 1 --line 1"));
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["trace"], "4");
    assert_eq!(v["hym_constant"], "4");
    assert_eq!(v["eigenvalues"].as_object().unwrap().len(), 4);
    let err = run(&tokens("curvature --type A3 --parabolic 1,3 --line 1,2"));
    assert_eq!(err.exit, 1);
}

#[test]
fn spectral_command_reports_diagnostics() {
    let out = run(&tokens("spectral --dim 1 --modes 32 --profile point:s=0.25"));
    assert_eq!(out.exit, 0, "{:?}", out.stderr);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["integrable"]["finite"], true);
    let residuals = v["residuals"].as_array().unwrap();
    assert_eq!(residuals.len(), 33);
    let r: Vec<f64> = residuals.iter().map(|x| x.as_f64().unwrap()).collect();
    assert!(r.windows(2).all(|w| w[1] <= w[0]));
    for gap in v["h2_gaps"].as_array().unwrap() {
        assert!(gap["bound"].as_f64().unwrap() >= gap["direct"].as_f64().unwrap());
    }
    let c0 = v["c0"].as_f64().unwrap();
    let mean = v["coeffs_head"][0].as_f64().unwrap() / (2.0 * std::f64::consts::PI).sqrt();
    assert!((c0 + mean - 2.0 * std::f64::consts::PI).abs() < 1e-12);

    let csv = run(&tokens("spectral --dim 1 --modes 8 --profile point:s=0.25 --report csv"));
    let lines: Vec<&str> = csv.stdout.lines().collect();
    assert_eq!(lines[0], "n,eigenvalue,coeff,residual_l2");
    assert_eq!(lines.len(), 10);

    let divergent = run(&tokens("spectral --dim 2 --profile point:s=1"));
    let v: Value = serde_json::from_str(&divergent.stdout).unwrap();
    assert_eq!(v["integrable"]["finite"], false);
    assert!(v.get("residuals").is_none());
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_parabolica");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let ok = status(&["paper-suite", "--quiet"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(ok.stdout.is_empty());
    let bad = status(&["analyze", "--type", "A3", "--parabolic", "1,2,3", "--weight", "1,0,0"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("proper parabolic"));
    let roots = status(&["dump-roots", "--type", "G2"]);
    let v: Value = serde_json::from_slice(&roots.stdout).unwrap();
    assert_eq!(v["positive_roots"].as_array().unwrap().len(), 6);
    assert_eq!(v["type"], "G2");
    let levi = status(&["analyze", "--type", "B3", "--parabolic", "2,3", "--weight", "0,-1,0"]);
    assert_eq!(levi.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&levi.stderr).contains("Levi node 2"));
}
