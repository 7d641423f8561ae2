//! Distance-power profiles `d(x, Y)^{-s} + offset` and their square integrability.

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::SpectralFloat;

use super::function::SpectralFunction;
use super::manifold::{ModeKind, ModelManifold};
use super::quadrature::{dyadic_mean, simpson, RichardsonEstimate};

/// `d(x, Y)^{-s} + offset` on a real `dim`-dimensional manifold, `Y` of real codimension `codim`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SingularProfile<F> {
    pub dim: usize,
    pub codim: usize,
    pub s: F,
    pub offset: F,
}

impl<F: SpectralFloat> SingularProfile<F> {
    pub fn new(dim: usize, codim: usize, s: F, offset: F) -> Result<Self> {
        if codim == 0 || codim > dim {
            return Err(Error::InvalidSpectral(format!(
                "codimension {codim} must lie in 1..={dim}"
            )));
        }
        if !(s.is_finite() && s > F::zero()) {
            return Err(Error::InvalidSpectral("exponent s must be positive".into()));
        }
        if !offset.is_finite() {
            return Err(Error::InvalidSpectral("offset must be finite".into()));
        }
        Ok(Self { dim, codim, s, offset })
    }

    /// A point singularity.
    pub fn point(dim: usize, s: F) -> Result<Self> {
        Self::new(dim, dim, s, F::zero())
    }

    /// A complex submanifold of complex codimension `c` in a complex `n`-fold.
    pub fn complex(n: usize, c: usize, s: F) -> Result<Self> {
        Self::new(2 * n, 2 * c, s, F::zero())
    }

    pub fn with_offset(mut self, offset: F) -> Self {
        self.offset = offset;
        self
    }

    /// `d^{-s} ∈ L²` iff `s < k/2`.
    pub fn is_l2(&self) -> bool {
        F::lit(2.0) * self.s < F::lit(self.codim as f64)
    }

    /// Value at distance `r > 0` from `Y`.
    pub fn value_at_distance(&self, r: F) -> F {
        r.powf(-self.s) + self.offset
    }

    /// Value at `x` on a torus where `Y = {x_1 = … = x_k = 0}`.
    pub fn eval_on_torus(&self, x: &[F], sides: &[F]) -> F {
        let r2 = x
            .iter()
            .zip(sides)
            .take(self.codim)
            .fold(F::zero(), |acc, (&xi, &l)| {
                let t = xi - l * (xi / l).floor();
                let d = t.min(l - t);
                acc + d * d
            });
        self.value_at_distance(r2.sqrt())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum TubeCertificate<F> {
    /// Cauchy in the cutoff: the last increment fell below the tolerance.
    Converged { value: F, log_cutoff: F },
    /// The truncated integral exceeded the growth threshold (or overflowed).
    Diverged { value: F, log_cutoff: F },
    Inconclusive { value: F, log_cutoff: F },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IntegrabilityReport<F> {
    pub finite: bool,
    pub certificate: TubeCertificate<F>,
}

impl<F> IntegrabilityReport<F> {
    pub fn agrees(&self) -> bool {
        matches!(
            (self.finite, &self.certificate),
            (true, TubeCertificate::Converged { .. }) | (false, TubeCertificate::Diverged { .. })
        )
    }
}

const GROWTH_THRESHOLD: f64 = 1e6;
const CAUCHY_TOL: f64 = 1e-12;
const MAX_DOUBLINGS: usize = 26;

/// Analytic flag `s < k/2` together with a numeric certificate for the radial
/// model `∫_a^1 r^{k−2s−1} dr` as `a → 0`. With `r = e^{−u}` the integrand is
/// `e^{−(k−2s)u}`; the cutoff `U = −ln a` starts at `ln 10` and doubles.
pub fn integrability_check<F: SpectralFloat>(p: &SingularProfile<F>) -> IntegrabilityReport<F> {
    let q = F::lit(p.codim as f64) - F::lit(2.0) * p.s;
    let g = |u: F| (-q * u).exp();
    let segment = |a: F, b: F| {
        let panels = ((b - a) * q.abs() / F::lit(0.01)).to_f64().unwrap_or(f64::INFINITY);
        let panels = panels.clamp(16.0, (1u64 << 20) as f64) as usize;
        simpson(g, a, b, panels)
    };
    let mut upper = F::lit(std::f64::consts::LN_10);
    let reference = segment(F::zero(), upper);
    let mut value = reference;
    let mut certificate = TubeCertificate::Inconclusive {
        value,
        log_cutoff: upper,
    };
    for _ in 0..MAX_DOUBLINGS {
        let next = upper + upper;
        let inc = segment(upper, next);
        value = value + inc;
        upper = next;
        if !value.is_finite() || value > F::lit(GROWTH_THRESHOLD) * reference {
            certificate = TubeCertificate::Diverged {
                value,
                log_cutoff: upper,
            };
            break;
        }
        if inc.abs() <= F::lit(CAUCHY_TOL) * value.abs() {
            certificate = TubeCertificate::Converged {
                value,
                log_cutoff: upper,
            };
            break;
        }
        certificate = TubeCertificate::Inconclusive {
            value,
            log_cutoff: upper,
        };
    }
    IntegrabilityReport {
        finite: p.is_l2(),
        certificate,
    }
}

fn check_on_torus<F: SpectralFloat>(p: &SingularProfile<F>, m: &ModelManifold<F>) -> Result<()> {
    if p.dim != m.dim() {
        return Err(Error::InvalidSpectral(format!(
            "profile dimension {} differs from the torus dimension {}",
            p.dim,
            m.dim()
        )));
    }
    Ok(())
}

/// `⨍ f` on the torus, by dyadic midpoint refinement with Richardson
/// extrapolation against the `h^{k−s}` singular term.
pub fn profile_mean<F: SpectralFloat>(
    p: &SingularProfile<F>,
    m: &ModelManifold<F>,
    n0: usize,
    levels: usize,
) -> Result<RichardsonEstimate<F>> {
    check_on_torus(p, m)?;
    let k = F::lit(p.codim as f64);
    let f = |x: &[F]| p.eval_on_torus(x, m.sides());
    Ok(dyadic_mean(&f, m.sides(), even(n0), levels, &[k - p.s]))
}

/// `‖f‖²_{L²}` on the torus, same scheme as [`profile_mean`].
pub fn profile_norm_sq<F: SpectralFloat>(
    p: &SingularProfile<F>,
    m: &ModelManifold<F>,
    n0: usize,
    levels: usize,
) -> Result<RichardsonEstimate<F>> {
    check_on_torus(p, m)?;
    if !p.is_l2() {
        return Err(not_l2(p));
    }
    let k = F::lit(p.codim as f64);
    let f = |x: &[F]| {
        let v = p.eval_on_torus(x, m.sides());
        v * v
    };
    let mut est = dyadic_mean(&f, m.sides(), even(n0), levels, &[k - F::lit(2.0) * p.s, k - p.s]);
    let vol = m.volume();
    est.value = est.value * vol;
    est.error_estimate = est.error_estimate * vol;
    est.levels.iter_mut().for_each(|v| *v = *v * vol);
    Ok(est)
}

fn even(n: usize) -> usize {
    n.max(2) + n % 2
}

fn not_l2<F: SpectralFloat>(p: &SingularProfile<F>) -> Error {
    Error::NotL2 {
        s: p.s.to_f64().unwrap_or(f64::NAN),
        codim: p.codim,
    }
}

/// Options for [`distance_profile_coefficients`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoefficientGrid {
    /// Midpoint cells per axis for the FFT; `None` picks a default.
    pub resolution: Option<usize>,
    /// Levels of the norm quadrature used for the tail.
    pub norm_levels: usize,
}

impl Default for CoefficientGrid {
    fn default() -> Self {
        Self {
            resolution: None,
            norm_levels: 6,
        }
    }
}

/// `c_j(f)` for `j = 0..=n` by the midpoint rule on a uniform grid (one FFT),
/// with the tail set to `max(0, ‖f‖² − Σ c_j²)`.
pub fn distance_profile_coefficients<F: SpectralFloat>(
    p: &SingularProfile<F>,
    manifold: &ModelManifold<F>,
    n: usize,
    grid: CoefficientGrid,
) -> Result<SpectralFunction<F>> {
    check_on_torus(p, manifold)?;
    if !p.is_l2() {
        return Err(not_l2(p));
    }
    if n >= manifold.mode_count() {
        return Err(Error::TruncationBeyondSpectrum {
            requested: n,
            available: manifold.mode_count() - 1,
        });
    }
    let d = manifold.dim();
    let kmax = manifold.max_wave_number(n) as usize;
    let cells = match grid.resolution {
        Some(r) => even(r),
        None => {
            let budget = 1usize << (20 / d);
            (8 * kmax).max(budget).next_power_of_two()
        }
    };
    if cells <= 2 * kmax {
        return Err(Error::InvalidSpectral(format!(
            "{cells} cells per axis cannot resolve wave number {kmax}"
        )));
    }
    let sides = manifold.sides();
    let total = cells.pow(d as u32);
    let h: Vec<F> = sides.iter().map(|&l| l / F::lit(cells as f64)).collect();

    let mut buf: Vec<Complex<F>> = Vec::with_capacity(total);
    let mut x = vec![F::zero(); d];
    for flat in 0..total {
        let mut rem = flat;
        for a in (0..d).rev() {
            x[a] = (F::lit((rem % cells) as f64) + F::lit(0.5)) * h[a];
            rem /= cells;
        }
        buf.push(Complex::new(p.eval_on_torus(&x, sides), F::zero()));
    }
    fft_nd(&mut buf, cells, d);

    let cell_volume = h.iter().fold(F::one(), |acc, &v| acc * v);
    let vol = manifold.volume();
    let amp = (F::lit(2.0) / vol).sqrt();
    let coeffs: Vec<F> = manifold.modes()[..=n]
        .iter()
        .map(|mode| {
            let mut flat = 0usize;
            let mut shift = F::zero();
            for &k in &mode.wave {
                flat = flat * cells + k.rem_euclid(cells as i64) as usize;
                shift = shift + F::lit(k as f64) / F::lit(cells as f64);
            }
            // midpoints sit at (m + 1/2)h, hence the half-cell phase
            let phase = Complex::from_polar(F::one(), -F::lit(std::f64::consts::PI) * shift);
            let integral = buf[flat] * phase * cell_volume;
            match mode.kind {
                ModeKind::Constant => integral.re / vol.sqrt(),
                ModeKind::Cos => amp * integral.re,
                ModeKind::Sin => -amp * integral.im,
            }
        })
        .collect();

    let norm_sq = profile_norm_sq(p, manifold, 64usize.min(cells), grid.norm_levels.max(2))?.value;
    let captured = coeffs.iter().rev().fold(F::zero(), |acc, &c| acc + c * c);
    SpectralFunction::new(coeffs, (norm_sq - captured).max(F::zero()))
}

fn fft_nd<F: SpectralFloat>(buf: &mut [Complex<F>], n: usize, d: usize) {
    let fft = FftPlanner::<F>::new().plan_fft_forward(n);
    let mut line = vec![Complex::new(F::zero(), F::zero()); n];
    let total = buf.len();
    for axis in 0..d {
        let stride = n.pow((d - 1 - axis) as u32);
        for start in 0..total {
            // first element of each line along this axis
            if !(start / stride).is_multiple_of(n) {
                continue;
            }
            for (i, v) in line.iter_mut().enumerate() {
                *v = buf[start + i * stride];
            }
            fft.process(&mut line);
            for (i, v) in line.iter().enumerate() {
                buf[start + i * stride] = *v;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn analytic_flag() {
        assert!(SingularProfile::point(10, 4.9).unwrap().is_l2());
        assert!(!SingularProfile::point(10, 5.0).unwrap().is_l2());
        assert!(SingularProfile::complex(5, 5, 4.9).unwrap().is_l2());
        assert!(SingularProfile::new(3, 0, 1.0, 0.0).is_err());
        assert!(SingularProfile::new(3, 1, 0.0, 0.0).is_err());
    }

    #[test]
    fn certificates() {
        for (k, s, finite) in [(10, 4.9, true), (10, 5.0, false), (2, 0.5, true), (2, 1.0, false)] {
            let r = integrability_check(&SingularProfile::new(12, k, s, 0.0).unwrap());
            assert_eq!(r.finite, finite);
            assert!(r.agrees(), "k={k} s={s}: {:?}", r.certificate);
        }
        let r = integrability_check(&SingularProfile::new(1, 1, 50.0, 0.0).unwrap());
        assert!(matches!(r.certificate, TubeCertificate::Diverged { .. }));
    }

    #[test]
    fn converged_value_matches_closed_form() {
        // ∫_0^1 r^{k−2s−1} dr = 1/(k − 2s)
        let r = integrability_check(&SingularProfile::<f64>::new(4, 4, 1.5, 0.0).unwrap());
        match r.certificate {
            TubeCertificate::Converged { value, .. } => assert!((value - 1.0).abs() < 1e-9),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn torus_distance() {
        let p = SingularProfile::<f64>::new(2, 1, 1.0, 0.5).unwrap();
        let sides = [2.0, 2.0];
        assert!((p.eval_on_torus(&[0.5, 1.7], &sides) - 2.5).abs() < 1e-15);
        assert!((p.eval_on_torus(&[1.5, 0.3], &sides) - 2.5).abs() < 1e-15);
    }

    #[test]
    fn rejects_non_l2() {
        let m = ModelManifold::circle(2.0 * PI, 8).unwrap();
        let p = SingularProfile::point(1, 0.5).unwrap();
        assert_eq!(
            distance_profile_coefficients(&p, &m, 4, CoefficientGrid::default()).unwrap_err(),
            Error::NotL2 { s: 0.5, codim: 1 }
        );
    }

    #[test]
    fn even_profile_has_no_sine_part() {
        let m = ModelManifold::flat_torus(vec![2.0 * PI, 2.0 * PI], 40).unwrap();
        let p = SingularProfile::point(2, 0.5).unwrap();
        let grid = CoefficientGrid {
            resolution: Some(128),
            norm_levels: 3,
        };
        let f = distance_profile_coefficients(&p, &m, 40, grid).unwrap();
        for j in 1..=40 {
            if m.mode(j).kind == ModeKind::Sin {
                assert!(f.coeff(j).abs() < 1e-10, "mode {j}: {}", f.coeff(j));
            }
        }
        assert!(f.coeff(1) > 0.0);
    }

    #[test]
    fn fft_coefficients_match_direct_sum() {
        let m = ModelManifold::flat_torus(vec![1.0, 2.0], 10).unwrap();
        let p = SingularProfile::new(2, 1, 0.25, 1.0).unwrap();
        let cells = 16;
        let grid = CoefficientGrid {
            resolution: Some(cells),
            norm_levels: 2,
        };
        let f = distance_profile_coefficients(&p, &m, 10, grid).unwrap();
        let h = [1.0 / cells as f64, 2.0 / cells as f64];
        for j in 0..=10 {
            let mut s = 0.0;
            for a in 0..cells {
                for b in 0..cells {
                    let x = [(a as f64 + 0.5) * h[0], (b as f64 + 0.5) * h[1]];
                    s += p.eval_on_torus(&x, m.sides()) * m.eval_mode(j, &x) * h[0] * h[1];
                }
            }
            assert!((s - f.coeff(j)).abs() < 1e-12, "mode {j}: {s} vs {}", f.coeff(j));
        }
    }
}
