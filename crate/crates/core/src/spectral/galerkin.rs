//! Galerkin truncation of `K(L, e^{2ψ}h₀) = f`, which on the eigenbasis is
//! `Δψ = f − ⨍f`: the conformal weight is `ψ_n = Σ_{j=1}^n c_j/λ_j φ_j` and the
//! mean mode is carried by the constant curvature of the reference metric.

use crate::error::{Error, Result};
use crate::scalar::SpectralFloat;

use super::function::SpectralFunction;
use super::manifold::ModelManifold;

#[derive(Debug, Clone, PartialEq)]
pub struct GalerkinSolution<F> {
    pub truncation: usize,
    /// `c_j/λ_j` for `j = 1..=truncation`, stored at index `j − 1`.
    pub psi_coeffs: Vec<F>,
    /// Mode-0 coefficient of `K(L, h₀)`, matched to `c₀(f)`.
    pub reference_coeff: F,
    /// `‖f − K(L, h_n)‖_{L²}`.
    pub residual_l2: F,
    /// `(Σ (1 + λ_j²)(c_j/λ_j)²)^{1/2}`.
    pub h2_norm: F,
}

impl<F: SpectralFloat> GalerkinSolution<F> {
    /// `ψ_j`, zero for `j = 0` and past the truncation.
    pub fn psi(&self, j: usize) -> F {
        if j == 0 {
            return F::zero();
        }
        self.psi_coeffs.get(j - 1).copied().unwrap_or_else(F::zero)
    }

    /// Eigen-coefficients of `K(L, h_n)` on modes `0..=n`.
    pub fn mean_curvature_coeffs(&self, manifold: &ModelManifold<F>) -> Vec<F> {
        std::iter::once(self.reference_coeff)
            .chain(
                self.psi_coeffs
                    .iter()
                    .enumerate()
                    .map(|(i, &p)| manifold.eigenvalue(i + 1) * p),
            )
            .collect()
    }

    /// The constant `√−1 Λ F(h₀)` as a function value.
    pub fn reference_constant(&self, manifold: &ModelManifold<F>) -> F {
        self.reference_coeff / manifold.volume().sqrt()
    }
}

fn check_truncation<F: SpectralFloat>(n: usize, m: &ModelManifold<F>) -> Result<()> {
    if n >= m.mode_count() {
        return Err(Error::TruncationBeyondSpectrum {
            requested: n,
            available: m.mode_count() - 1,
        });
    }
    Ok(())
}

pub fn solve_weight<F: SpectralFloat>(
    f: &SpectralFunction<F>,
    n: usize,
    m: &ModelManifold<F>,
) -> Result<GalerkinSolution<F>> {
    check_truncation(n, m)?;
    let psi_coeffs: Vec<F> = (1..=n).map(|j| f.coeff(j) / m.eigenvalue(j)).collect();
    let h2_sq = psi_coeffs
        .iter()
        .enumerate()
        .rev()
        .fold(F::zero(), |acc, (i, &p)| {
            let lam = m.eigenvalue(i + 1);
            acc + (F::one() + lam * lam) * p * p
        });
    Ok(GalerkinSolution {
        truncation: n,
        psi_coeffs,
        reference_coeff: f.coeff(0),
        residual_l2: f.tail_mass_after(n).sqrt(),
        h2_norm: h2_sq.sqrt(),
    })
}

/// `C` in `‖ψ‖²_{H²} ≤ (1 + C)(‖Δψ‖² + ‖ψ‖²)` from the Bochner identity with
/// `Ric ≥ κ` and Young's inequality at `ε = 1/(2|κ|)`.
pub fn bochner_constant<F: SpectralFloat>(kappa: F) -> F {
    let k = kappa.abs();
    if k.is_zero() {
        return F::one();
    }
    let eps = F::one() / (F::lit(2.0) * k);
    (F::one() + k * eps).max(k / (F::lit(4.0) * eps))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CauchyGap<F> {
    /// `(1 + C) Σ_{j=m+1}^n (1/λ_j² + 1) c_j²`.
    pub bound: F,
    /// `‖ψ_n − ψ_m‖²` in the spectral `H²` norm, from the two solutions.
    pub direct: F,
}

/// Bochner bound on `‖ψ_n − ψ_m‖²_{H²}` next to its direct value.
pub fn h2_cauchy_gap<F: SpectralFloat>(
    f: &SpectralFunction<F>,
    n: usize,
    m_idx: usize,
    manifold: &ModelManifold<F>,
    kappa: F,
) -> Result<CauchyGap<F>> {
    if m_idx >= n {
        return Err(Error::InvalidSpectral(format!("need m < n, got m = {m_idx}, n = {n}")));
    }
    let psi_n = solve_weight(f, n, manifold)?;
    let psi_m = solve_weight(f, m_idx, manifold)?;
    let c = bochner_constant(kappa);
    let mut bound = F::zero();
    let mut direct = F::zero();
    for j in (m_idx + 1..=n).rev() {
        let lam = manifold.eigenvalue(j);
        let cj = f.coeff(j);
        bound = bound + (F::one() / (lam * lam) + F::one()) * cj * cj;
        let d = psi_n.psi(j) - psi_m.psi(j);
        direct = direct + (F::one() + lam * lam) * d * d;
    }
    let bound = (F::one() + c) * bound;
    assert!(bound >= direct, "Bochner bound {bound} below the direct gap {direct}");
    Ok(CauchyGap { bound, direct })
}

/// `2π · hym_c`: the mean of `f` forced by the degree of the line bundle.
pub fn topological_mean<F: SpectralFloat>(hym_c: F) -> F {
    F::two_pi() * hym_c
}

/// `C₀ = 2π·hym_c − ⨍ profile`, so that `profile + C₀` has the required mean.
pub fn compatibility_constant<F: SpectralFloat>(
    profile: &SpectralFunction<F>,
    hym_c: F,
    manifold: &ModelManifold<F>,
) -> F {
    compatibility_from_mean(profile.mean(manifold), hym_c)
}

pub fn compatibility_from_mean<F: SpectralFloat>(profile_mean: F, hym_c: F) -> F {
    topological_mean(hym_c) - profile_mean
}
