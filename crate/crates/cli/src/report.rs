//! Report assembly. Rationals are rendered `"p/q"` (or `"p"`), node labels are 1-based.

use indexmap::IndexMap;
use parabolica_core::bundle::{determinant_ratios, splitting_report, BundleSpec};
use parabolica_core::curvature::{einstein_class, endo_eigenvalues, hym_constant};
use parabolica_core::spectral::{
    compatibility_constant, distance_profile_coefficients, h2_cauchy_gap, integrability_check, profile_norm_sq,
    solve_weight, CoefficientGrid, IntegrabilityReport,
};
use parabolica_core::{
    bundle::line_bundle_weight, ExactScalar, KahlerClass, ModelManifold, ParabolicData, Rational, RootSystem, SimpleLieType,
    SingularProfile, Weight,
};
use serde::Serialize;

use crate::error::CliError;
use crate::request::{AnalysisRequest, CurvatureRequest, SpectralRequest};

pub const SCHEMA_VERSION: u32 = 1;

fn ratio(x: &Rational) -> String {
    x.to_ratio_string()
}

fn weight(w: &Weight) -> Vec<String> {
    w.coords().iter().map(ratio).collect()
}

fn node(i: usize) -> String {
    format!("a{}", i + 1)
}

fn one_based(nodes: &[usize]) -> Vec<usize> {
    nodes.iter().map(|i| i + 1).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct RootSummary {
    #[serde(rename = "type")]
    pub lie_type: String,
    pub rank: usize,
    pub positive_root_count: usize,
    pub cartan: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, Serialize)]
#[allow(non_snake_case)]
pub struct ParabolicDigest {
    pub levi_nodes: Vec<usize>,
    pub complement_nodes: Vec<usize>,
    pub levi_det: String,
    pub flag_dimension: usize,
    pub phi_I_plus: Vec<Vec<i64>>,
    pub delta_P: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
#[allow(non_snake_case)]
pub struct SplittingBlock {
    pub rank: String,
    pub lambda_s: Vec<String>,
    pub lambda_c: Vec<String>,
    pub lambda_E: Vec<String>,
    /// `a_α = r·det C_I(λ_s, α)/det C_I`, keyed by `α ∈ I`.
    pub cramer_a: IndexMap<String, String>,
    /// The same ratios without the rank factor.
    pub determinant_ratios: IndexMap<String, String>,
    /// Keyed by `β ∈ Δ \ I`.
    pub criterion: IndexMap<String, String>,
    pub splits: bool,
    pub lambda_L0: Option<Vec<String>>,
    pub lambda_E0: Option<Vec<String>>,
    pub e0_highest_weight: Option<Vec<String>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BundleCurvature {
    pub kahler: Vec<String>,
    /// HYM constant of `det E`.
    pub det_hym_constant: String,
    /// `det_hym_constant / rank`, the Hermite-Einstein constant of `E`.
    pub slope: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalysisEcho {
    pub command: &'static str,
    #[serde(rename = "type")]
    pub lie_type: String,
    pub parabolic: Vec<usize>,
    pub weight: Vec<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kahler: Option<Vec<String>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub schema_version: u32,
    pub request: AnalysisEcho,
    pub root_system: RootSummary,
    pub parabolic: ParabolicDigest,
    pub splitting: SplittingBlock,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub curvature: Option<BundleCurvature>,
}

fn root_summary(t: SimpleLieType, rs: &RootSystem) -> RootSummary {
    RootSummary {
        lie_type: t.to_string(),
        rank: t.rank(),
        positive_root_count: rs.positive_roots().len(),
        cartan: rs.cartan().to_rows(),
    }
}

fn parabolic_data(t: SimpleLieType, parabolic: &[usize]) -> Result<ParabolicData, CliError> {
    let nodes: Vec<usize> = parabolic.iter().map(|i| i - 1).collect();
    Ok(ParabolicData::new(RootSystem::from_type(t), &nodes)?)
}

fn digest(p: &ParabolicData) -> ParabolicDigest {
    ParabolicDigest {
        levi_nodes: one_based(p.levi_nodes()),
        complement_nodes: one_based(&p.complement_nodes()),
        levi_det: ratio(&p.levi_det()),
        flag_dimension: p.flag_dimension(),
        phi_I_plus: p.phi_i_plus().iter().map(|r| r.coords().to_vec()).collect(),
        delta_P: weight(p.delta_p()),
    }
}

fn kahler_class(coeffs: Option<&[Rational]>, p: &ParabolicData) -> Result<KahlerClass, CliError> {
    Ok(match coeffs {
        Some(c) => KahlerClass::new(c.to_vec(), p)?,
        None => einstein_class(p),
    })
}

pub fn analyze(req: &AnalysisRequest) -> Result<AnalysisReport, CliError> {
    let p = parabolic_data(req.lie_type, &req.parabolic)?;
    let spec = BundleSpec::new(p.clone(), Weight::from_ints(&req.weight))?;
    let report = splitting_report(&spec)?;
    let levi = p.levi_nodes();
    let keyed = |vals: &[Rational]| -> IndexMap<String, String> {
        levi.iter().zip(vals).map(|(&i, v)| (node(i), ratio(v))).collect()
    };
    let ratios = determinant_ratios(&p, &spec.split().lambda_s)?;
    let curvature = match &req.kahler {
        Some(c) => {
            let omega = kahler_class(Some(c), &p)?;
            let det = hym_constant(&report.chern.lambda_e, &omega, &p)?;
            Some(BundleCurvature {
                kahler: c.iter().map(ratio).collect(),
                slope: ratio(&(det.clone() / report.chern.rank.clone())),
                det_hym_constant: ratio(&det),
            })
        }
        None => None,
    };
    Ok(AnalysisReport {
        schema_version: SCHEMA_VERSION,
        request: AnalysisEcho {
            command: "analyze",
            lie_type: req.lie_type.to_string(),
            parabolic: req.parabolic.clone(),
            weight: req.weight.clone(),
            kahler: req.kahler.as_ref().map(|c| c.iter().map(ratio).collect()),
        },
        root_system: root_summary(req.lie_type, p.root_system()),
        parabolic: digest(&p),
        splitting: SplittingBlock {
            rank: ratio(&report.chern.rank),
            lambda_s: weight(&spec.split().lambda_s),
            lambda_c: weight(&spec.split().lambda_c),
            lambda_E: weight(&report.chern.lambda_e),
            cramer_a: keyed(&report.chern.cramer_a),
            determinant_ratios: keyed(&ratios),
            criterion: report.criterion_values.iter().map(|(b, v)| (node(*b), ratio(v))).collect(),
            splits: report.splits,
            lambda_L0: report.lambda_l0.as_ref().map(weight),
            lambda_E0: report.lambda_e0_check.as_ref().map(weight),
            e0_highest_weight: report.e0_highest_weight.as_ref().map(weight),
        },
        curvature,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct CurvatureEcho {
    pub command: &'static str,
    #[serde(rename = "type")]
    pub lie_type: String,
    pub parabolic: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kahler: Option<Vec<String>>,
    pub line: Vec<i64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CurvatureReport {
    pub schema_version: u32,
    pub request: CurvatureEcho,
    pub kahler: Vec<String>,
    /// True when the class is `ρ₀/2π`, so values carry the `2π` of the Ricci form.
    pub two_pi_factor: bool,
    pub line_weight: Vec<String>,
    /// `q_β` keyed by `β ∈ Φ_I⁺`.
    pub eigenvalues: IndexMap<String, String>,
    pub trace: String,
    pub hym_constant: String,
}

pub fn curvature(req: &CurvatureRequest) -> Result<CurvatureReport, CliError> {
    let p = parabolic_data(req.lie_type, &req.parabolic)?;
    let omega = kahler_class(req.kahler.as_deref(), &p)?;
    let line = line_bundle_weight(&req.line, &p)?;
    let spectrum = endo_eigenvalues(&line, &omega, &p)?;
    let hym = hym_constant(&line, &omega, &p)?;
    Ok(CurvatureReport {
        schema_version: SCHEMA_VERSION,
        request: CurvatureEcho {
            command: "curvature",
            lie_type: req.lie_type.to_string(),
            parabolic: req.parabolic.clone(),
            kahler: req.kahler.as_ref().map(|c| c.iter().map(ratio).collect()),
            line: req.line.clone(),
        },
        kahler: omega.coeffs().iter().map(ratio).collect(),
        two_pi_factor: omega.two_pi_factor(),
        line_weight: weight(&line),
        eigenvalues: spectrum.eigenvalues.iter().map(|(b, v)| (b.to_string(), ratio(v))).collect(),
        trace: ratio(&spectrum.trace()),
        hym_constant: ratio(&hym),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectralEcho {
    pub command: &'static str,
    pub dim: usize,
    pub modes: usize,
    pub profile: String,
    pub side: f64,
    pub hym: String,
    pub kappa: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub resolution: Option<usize>,
    pub check_only: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct GapRow {
    pub m: usize,
    pub n: usize,
    pub bound: f64,
    pub direct: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct GalerkinSummary {
    pub truncation: usize,
    pub residual_l2: f64,
    pub h2_norm: f64,
    pub reference_constant: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectralReport {
    pub schema_version: u32,
    pub request: SpectralEcho,
    pub volume: f64,
    pub integrable: IntegrabilityReport<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub profile_norm_sq: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coeffs_head: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eigenvalues: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coeffs: Option<Vec<f64>>,
    /// `‖f − f_n‖_{L²}` for `n = 0..=modes`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residuals: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h2_gaps: Option<Vec<GapRow>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c0: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub galerkin: Option<GalerkinSummary>,
}

const HEAD: usize = 16;

pub fn spectral(req: &SpectralRequest) -> Result<SpectralReport, CliError> {
    let profile = SingularProfile::new(req.dim, req.profile.codim(req.dim), req.profile.s, req.profile.offset)?;
    let integrable = integrability_check(&profile);
    let echo = SpectralEcho {
        command: "spectral",
        dim: req.dim,
        modes: req.modes,
        profile: req.profile.to_string(),
        side: req.side,
        hym: ratio(&req.hym),
        kappa: req.kappa,
        resolution: req.resolution,
        check_only: req.check_only,
    };
    let volume = req.side.powi(req.dim as i32);
    let mut report = SpectralReport {
        schema_version: SCHEMA_VERSION,
        request: echo,
        volume,
        integrable,
        profile_norm_sq: None,
        coeffs_head: None,
        eigenvalues: None,
        coeffs: None,
        residuals: None,
        h2_gaps: None,
        c0: None,
        galerkin: None,
    };
    if req.check_only || !integrable.finite {
        return Ok(report);
    }
    let manifold = ModelManifold::flat_torus(vec![req.side; req.dim], req.modes)?;
    let grid = CoefficientGrid {
        resolution: req.resolution,
        ..CoefficientGrid::default()
    };
    let f = distance_profile_coefficients(&profile, &manifold, req.modes, grid)?;
    let c0 = compatibility_constant(&f, req.hym.to_f64_lossy(), &manifold);
    let target = f.shifted(c0, &manifold);
    let mut gaps = Vec::new();
    let mut n = 1;
    while n <= req.modes {
        gaps.push((n / 2, n));
        n *= 2;
    }
    if req.modes > 0 && !req.modes.is_power_of_two() {
        gaps.push((req.modes / 2, req.modes));
    }
    let h2_gaps = gaps
        .into_iter()
        .map(|(m, n)| {
            let g = h2_cauchy_gap(&target, n, m, &manifold, req.kappa)?;
            Ok(GapRow {
                m,
                n,
                bound: g.bound,
                direct: g.direct,
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let sol = solve_weight(&target, req.modes, &manifold)?;
    report.profile_norm_sq = Some(profile_norm_sq(&profile, &manifold, 64.min(1 << (20 / req.dim)), 6)?.value);
    report.coeffs_head = Some(f.coeffs().iter().take(HEAD).copied().collect());
    report.eigenvalues = Some((0..=req.modes).map(|j| manifold.eigenvalue(j)).collect());
    report.coeffs = Some(f.coeffs().to_vec());
    report.residuals = Some(f.residual_curve());
    report.h2_gaps = Some(h2_gaps);
    report.c0 = Some(c0);
    report.galerkin = Some(GalerkinSummary {
        truncation: sol.truncation,
        residual_l2: sol.residual_l2,
        h2_norm: sol.h2_norm,
        reference_constant: sol.reference_constant(&manifold),
    });
    Ok(report)
}

#[derive(Debug, Clone, Serialize)]
pub struct RootDump {
    pub schema_version: u32,
    #[serde(flatten)]
    pub dump: parabolica_core::rootsys::RootSystemDump,
}

pub fn dump_roots(t: SimpleLieType) -> RootDump {
    RootDump {
        schema_version: SCHEMA_VERSION,
        dump: RootSystem::from_type(t).dump(),
    }
}

/// Comma-separated rows; list values are space separated within a field.
pub trait Csv {
    fn csv(&self) -> String;
}

fn spaced(v: &[String]) -> String {
    v.join(" ")
}

impl Csv for AnalysisReport {
    fn csv(&self) -> String {
        let s = &self.splitting;
        let mut rows = vec!["field,value".to_string()];
        rows.push(format!("rank,{}", s.rank));
        rows.push(format!("lambda_E,{}", spaced(&s.lambda_E)));
        for (k, v) in &s.cramer_a {
            rows.push(format!("cramer_a.{k},{v}"));
        }
        for (k, v) in &s.criterion {
            rows.push(format!("criterion.{k},{v}"));
        }
        rows.push(format!("splits,{}", s.splits));
        if let Some(l) = &s.lambda_L0 {
            rows.push(format!("lambda_L0,{}", spaced(l)));
        }
        if let Some(c) = &self.curvature {
            rows.push(format!("det_hym_constant,{}", c.det_hym_constant));
            rows.push(format!("slope,{}", c.slope));
        }
        rows.join("\n") + "\n"
    }
}

impl Csv for CurvatureReport {
    fn csv(&self) -> String {
        let mut rows = vec!["root,eigenvalue".to_string()];
        rows.extend(self.eigenvalues.iter().map(|(b, v)| format!("{b},{v}")));
        rows.push(format!("trace,{}", self.trace));
        rows.push(format!("hym_constant,{}", self.hym_constant));
        rows.join("\n") + "\n"
    }
}

impl Csv for SpectralReport {
    fn csv(&self) -> String {
        let mut rows = vec!["n,eigenvalue,coeff,residual_l2".to_string()];
        if let (Some(lam), Some(c), Some(r)) = (&self.eigenvalues, &self.coeffs, &self.residuals) {
            for (n, ((l, c), r)) in lam.iter().zip(c).zip(r).enumerate() {
                rows.push(format!("{n},{l},{c:e},{r:e}"));
            }
        }
        rows.join("\n") + "\n"
    }
}

impl Csv for RootDump {
    fn csv(&self) -> String {
        let mut rows = vec!["index,height,coords".to_string()];
        for (i, r) in self.dump.positive_roots.iter().enumerate() {
            let coords: Vec<String> = r.iter().map(i64::to_string).collect();
            rows.push(format!("{},{},{}", i + 1, r.iter().sum::<i64>(), coords.join(" ")));
        }
        rows.join("\n") + "\n"
    }
}
