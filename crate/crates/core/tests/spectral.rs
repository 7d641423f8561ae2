use std::f64::consts::PI;

use parabolica_core::spectral::{
    self,
    compatibility_constant, compatibility_from_mean, distance_profile_coefficients, h2_cauchy_gap,
    integrability_check, profile_mean, profile_norm_sq, solve_weight, truncate, CoefficientGrid, ModeKind,
};
use parabolica_core::{ModelManifold, SingularProfile, SpectralFunction};
use proptest::prelude::*;

/// `⨍ d(x, 0)^{-s}` over the square torus of side `l`: the radial integral is
/// exact on each of the 8 triangles of `[−l/2, l/2]²`, leaving a smooth angular
/// integral done by the midpoint rule on `points` nodes.
fn angular_oracle_mean(l: f64, s: f64, points: usize) -> f64 {
    let h = (PI / 4.0) / points as f64;
    let sum: f64 = (0..points)
        .map(|i| {
            let theta = (i as f64 + 0.5) * h;
            let r = 0.5 * l / theta.cos();
            r.powf(2.0 - s) / (2.0 - s)
        })
        .sum();
    8.0 * sum * h / (l * l)
}

/// Plain Cartesian midpoint rule, `n²` cells.
fn cartesian_midpoint_mean(l: f64, s: f64, n: usize) -> f64 {
    let h = l / n as f64;
    let mut total = 0.0;
    for i in 0..n {
        let x = (i as f64 + 0.5) * h;
        let dx = x.min(l - x);
        for j in 0..n {
            let y = (j as f64 + 0.5) * h;
            let dy = y.min(l - y);
            total += (dx * dx + dy * dy).sqrt().powf(-s);
        }
    }
    total / (n * n) as f64
}

#[test]
fn compatibility_constant_against_oracle() {
    let l = 2.0 * PI;
    let m = ModelManifold::flat_torus(vec![l, l], 4).unwrap();
    let p = SingularProfile::point(2, 0.5).unwrap();
    let est = profile_mean(&p, &m, 32, 6).unwrap();
    let hym_c = 1.0;
    let c0 = compatibility_from_mean(est.value, hym_c);
    let oracle = 2.0 * PI * hym_c - angular_oracle_mean(l, 0.5, 1_000_000);
    assert!((c0 - oracle).abs() < 1e-6, "C0 {c0} vs oracle {oracle}");
    // a raw 10⁶-cell Cartesian midpoint rule agrees to its own O(h^{3/2}) accuracy
    let raw = 2.0 * PI * hym_c - cartesian_midpoint_mean(l, 0.5, 1000);
    assert!((c0 - raw).abs() < 1e-4, "C0 {c0} vs raw {raw}");
}

#[test]
fn compatibility_from_coefficients() {
    let l = 2.0 * PI;
    let m = ModelManifold::flat_torus(vec![l, l], 8).unwrap();
    let p = SingularProfile::point(2, 0.5).unwrap();
    let grid = CoefficientGrid {
        resolution: Some(512),
        norm_levels: 3,
    };
    let f = distance_profile_coefficients(&p, &m, 8, grid).unwrap();
    let c0 = compatibility_constant(&f, 1.0, &m);
    let oracle = 2.0 * PI - angular_oracle_mean(l, 0.5, 100_000);
    // single midpoint grid, h = 2π/512
    assert!((c0 - oracle).abs() < 1e-3, "{c0} vs {oracle}");
    let shifted = f.shifted(c0, &m);
    assert!((shifted.mean(&m) - 2.0 * PI).abs() < 1e-12);
}

#[test]
fn circle_point_singularity_parseval() {
    let n = 512;
    let m = ModelManifold::circle(2.0 * PI, n).unwrap();
    let p = SingularProfile::point(1, 0.25).unwrap();
    let grid = CoefficientGrid {
        resolution: Some(1 << 16),
        norm_levels: 8,
    };
    let f = distance_profile_coefficients(&p, &m, n, grid).unwrap();
    // ∫_{−π}^{π} |x|^{-1/2} dx with x = t²: 2∫_0^{√π} 2 dt = 4√π
    let exact = 4.0 * PI.sqrt();
    let quad = profile_norm_sq(&p, &m, 64, 8).unwrap().value;
    assert!((quad - exact).abs() < 1e-6 * exact, "{quad} vs {exact}");
    let mut partial = 0.0;
    let mut last = 0.0;
    for j in 0..=n {
        partial += f.coeff(j) * f.coeff(j);
        assert!(partial >= last);
        assert!(partial <= quad);
        last = partial;
    }
    assert!((quad - partial) / quad < 0.02, "captured {partial} of {quad}");
    assert!((f.norm_sq() - quad).abs() < 1e-12 * quad);
    for j in 1..=n {
        if m.mode(j).kind == ModeKind::Sin {
            assert!(f.coeff(j).abs() < 1e-9);
        }
    }
}

#[test]
fn vanishing_exponent_leaves_only_the_constant() {
    let m = ModelManifold::flat_torus(vec![2.0 * PI, 2.0 * PI], 30).unwrap();
    let p = SingularProfile::point(2, 1e-9).unwrap().with_offset(0.5);
    let grid = CoefficientGrid {
        resolution: Some(64),
        norm_levels: 3,
    };
    let f = distance_profile_coefficients(&p, &m, 30, grid).unwrap();
    assert!((f.mean(&m) - 1.5).abs() < 1e-8);
    for j in 1..=30 {
        assert!(f.coeff(j).abs() < 1e-8, "mode {j}: {}", f.coeff(j));
    }
}

fn harmonic(n_total: usize) -> (ModelManifold, SpectralFunction) {
    let m = ModelManifold::circle(2.0 * PI, n_total).unwrap();
    let mut coeffs = vec![0.0];
    coeffs.extend((1..=n_total).map(|j| 1.0 / j as f64));
    (m, SpectralFunction::from_coeffs(coeffs).unwrap())
}

/// `Σ_{j=a}^{b} 1/j²` from the trigamma difference `ψ₁(a) − ψ₁(b+1)`.
fn inverse_square_sum(a: usize, b: usize) -> f64 {
    fn trigamma(x: f64) -> f64 {
        // recurrence up to x ≥ 20, then the asymptotic series
        let mut x = x;
        let mut acc = 0.0;
        while x < 20.0 {
            acc += 1.0 / (x * x);
            x += 1.0;
        }
        let x2 = x * x;
        acc + 1.0 / x + 1.0 / (2.0 * x2) + 1.0 / (6.0 * x2 * x) - 1.0 / (30.0 * x2 * x2 * x)
            + 1.0 / (42.0 * x2 * x2 * x2 * x)
            - 1.0 / (30.0 * x2 * x2 * x2 * x2 * x)
    }
    trigamma(a as f64) - trigamma(b as f64 + 1.0)
}

#[test]
fn residual_tail_closed_form() {
    let total = 2000;
    let (m, f) = harmonic(total);
    for n in 10..=1000 {
        let sol = solve_weight(&f, n, &m).unwrap();
        let want = inverse_square_sum(n + 1, total).sqrt();
        assert!((sol.residual_l2 - want).abs() < 1e-10, "n = {n}");
    }
}

#[test]
fn residual_is_monotone() {
    let (m, f) = harmonic(300);
    let mut prev = f64::INFINITY;
    for n in 0..=300 {
        let r = solve_weight(&f, n, &m).unwrap().residual_l2;
        assert!(r <= prev);
        prev = r;
    }
    assert_eq!(prev, 0.0);
}

#[test]
fn harmonic_h2_gap() {
    let (m, f) = harmonic(100);
    let gap = h2_cauchy_gap(&f, 100, 10, &m, 0.0).unwrap();
    assert!(gap.bound.is_finite() && gap.direct.is_finite());
    assert!(gap.bound >= gap.direct);
    assert!(gap.direct > 0.0);
}

#[test]
fn truncation_error_matches_grid_norm() {
    let m = ModelManifold::flat_torus(vec![1.0, 1.5], 40).unwrap();
    let coeffs: Vec<f64> = (0..=40).map(|j| ((j * 13 % 7) as f64 - 3.0) / (1.0 + j as f64)).collect();
    let f = SpectralFunction::from_coeffs(coeffs).unwrap();
    let fn_ = truncate(&f, 12);
    let cells = 48;
    let (hx, hy) = (1.0 / cells as f64, 1.5 / cells as f64);
    let mut direct = 0.0;
    for i in 0..cells {
        for j in 0..cells {
            let x = [(i as f64 + 0.5) * hx, (j as f64 + 0.5) * hy];
            direct += (f.eval(&m, &x) - fn_.eval(&m, &x)).powi(2) * hx * hy;
        }
    }
    assert!((direct - f.tail_mass_after(12)).abs() < 1e-10);
}

#[test]
fn integrability_dichotomy_grid() {
    for k in 1..=12usize {
        let mut s = 0.1;
        while s <= k as f64 / 2.0 + 0.1 + 1e-9 {
            let p = SingularProfile::new(12, k, s, 0.0).unwrap();
            let r = integrability_check(&p);
            assert_eq!(r.finite, 2.0 * s < k as f64, "k = {k}, s = {s}");
            assert!(r.agrees(), "k = {k}, s = {s}: {r:?}");
            s = ((s + 0.1) * 10.0).round() / 10.0;
        }
    }
    let quadric = |s: f64| integrability_check(&SingularProfile::complex(5, 5, s).unwrap());
    assert!(quadric(4.9).finite && quadric(4.9).agrees());
    assert!(!quadric(5.0).finite && quadric(5.0).agrees());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn bochner_bound_dominates(
        coeffs in proptest::collection::vec(-3.0f64..3.0, 2..80),
        kappa in prop_oneof![Just(0.0), Just(1.0), Just(-1.0), -5.0f64..5.0],
        split in 0.0f64..1.0,
    ) {
        let n = coeffs.len() - 1;
        let m = ModelManifold::flat_torus(vec![1.0, 2.0], n).unwrap();
        let f = SpectralFunction::from_coeffs(coeffs).unwrap();
        let m_idx = ((n as f64) * split) as usize % n;
        let gap = h2_cauchy_gap(&f, n, m_idx, &m, kappa).unwrap();
        prop_assert!(gap.bound >= gap.direct);
    }

    #[test]
    fn exact_mode_matching(coeffs in proptest::collection::vec(-10.0f64..10.0, 2..120), cut in 0.0f64..1.0) {
        let n_max = coeffs.len() - 1;
        let m = ModelManifold::flat_torus(vec![2.0, 3.0, 1.0], n_max).unwrap();
        let f = SpectralFunction::new(coeffs.clone(), 0.5).unwrap();
        let n = ((n_max as f64) * cut) as usize;
        let sol = solve_weight(&f, n, &m).unwrap();
        for (a, b) in sol.mean_curvature_coeffs(&m).iter().zip(&coeffs) {
            prop_assert!((a - b).abs() <= 1e-12 * b.abs());
        }
        let tail: f64 = coeffs[n + 1..].iter().map(|c| c * c).sum::<f64>() + 0.5;
        prop_assert!((sol.residual_l2 - tail.sqrt()).abs() <= 1e-12 * tail.sqrt());
    }

    #[test]
    fn parseval_for_finite_functions(coeffs in proptest::collection::vec(-5.0f64..5.0, 1..60)) {
        let f = SpectralFunction::from_coeffs(coeffs.clone()).unwrap();
        let direct: f64 = coeffs.iter().map(|c| c * c).sum();
        prop_assert!((f.norm_sq() - direct).abs() <= 1e-10 * direct.max(1.0));
    }
}

#[test]
fn single_precision_solve() {
    let m = spectral::ModelManifold::<f32>::circle(std::f32::consts::TAU, 8).unwrap();
    let f = spectral::SpectralFunction::<f32>::from_coeffs(vec![0.0, 1.0, 0.0, 2.0]).unwrap();
    let sol = solve_weight(&f, 4, &m).unwrap();
    assert!((sol.psi(3) - 0.5).abs() < 1e-6);
}
