use crate::error::{Error, Result};
use crate::scalar::SpectralFloat;

use super::manifold::ModelManifold;

/// An `L²` function through its eigen-coefficients `c_j = (f, φ_j)` on the
/// materialized modes, plus the `L²` mass `tail_sq` carried by all later modes.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralFunction<F> {
    coeffs: Vec<F>,
    tail_sq: F,
}

impl<F: SpectralFloat> SpectralFunction<F> {
    pub fn new(coeffs: Vec<F>, tail_sq: F) -> Result<Self> {
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidSpectral("non-finite coefficient".into()));
        }
        if !(tail_sq.is_finite() && tail_sq >= F::zero()) {
            return Err(Error::InvalidSpectral("tail mass must be finite and non-negative".into()));
        }
        Ok(Self { coeffs, tail_sq })
    }

    /// A finitely supported function: no mass beyond the given coefficients.
    pub fn from_coeffs(coeffs: Vec<F>) -> Result<Self> {
        Self::new(coeffs, F::zero())
    }

    /// `value · φ_j`.
    pub fn single_mode(j: usize, value: F) -> Self {
        let mut coeffs = vec![F::zero(); j + 1];
        coeffs[j] = value;
        Self {
            coeffs,
            tail_sq: F::zero(),
        }
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    /// `c_j`, zero past the stored range.
    pub fn coeff(&self, j: usize) -> F {
        self.coeffs.get(j).copied().unwrap_or_else(F::zero)
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn tail_sq(&self) -> F {
        self.tail_sq
    }

    /// `‖f‖²_{L²}` by Parseval.
    pub fn norm_sq(&self) -> F {
        self.tail_mass_after(0) + self.coeff(0) * self.coeff(0)
    }

    /// `Σ_{j>n} c_j²` including the tail, summed from the far end.
    pub fn tail_mass_after(&self, n: usize) -> F {
        self.coeffs
            .iter()
            .skip(n + 1)
            .rev()
            .fold(self.tail_sq, |acc, &c| acc + c * c)
    }

    /// `‖f − f_n‖_{L²}` for every `n` in `0..len()`, in one backward pass.
    pub fn residual_curve(&self) -> Vec<F> {
        let mut out = vec![F::zero(); self.coeffs.len()];
        let mut acc = self.tail_sq;
        for n in (0..self.coeffs.len()).rev() {
            out[n] = acc.sqrt();
            acc = acc + self.coeffs[n] * self.coeffs[n];
        }
        out
    }

    /// Mean value `⨍ f = c₀/√Vol`.
    pub fn mean(&self, manifold: &ModelManifold<F>) -> F {
        self.coeff(0) / manifold.volume().sqrt()
    }

    /// Adds a constant function.
    pub fn shifted(&self, constant: F, manifold: &ModelManifold<F>) -> Self {
        let mut out = self.clone();
        if out.coeffs.is_empty() {
            out.coeffs.push(F::zero());
        }
        out.coeffs[0] = out.coeffs[0] + constant * manifold.volume().sqrt();
        out
    }

    /// Point evaluation of the materialized part.
    pub fn eval(&self, manifold: &ModelManifold<F>, x: &[F]) -> F {
        self.coeffs
            .iter()
            .enumerate()
            .take(manifold.mode_count())
            .fold(F::zero(), |acc, (j, &c)| acc + c * manifold.eval_mode(j, x))
    }
}

/// `f_n = Σ_{j≤n} c_j φ_j`.
pub fn truncate<F: SpectralFloat>(f: &SpectralFunction<F>, n: usize) -> SpectralFunction<F> {
    SpectralFunction {
        coeffs: f.coeffs.iter().copied().take(n + 1).collect(),
        tail_sq: F::zero(),
    }
}
