//! Curvature constants of invariant Kähler metrics on `G/P`.
//!
//! An invariant closed (1,1)-class `ψ` is a weight in `Λ_P ⊗ ℚ`. At the origin,
//! `ω₀⁻¹∘ψ` acts on the root space of `β ∈ Φ_I⁺` by
//! `q_β = ⟨φ([ψ]), β^∨⟩ / ⟨φ([ω₀]), β^∨⟩`, so ω-traces are sums of such ratios.
//! Everything is stored without the `2π` factor.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::parabolic::ParabolicData;
use crate::rootsys::{RootVector, Weight};
use crate::scalar::ExactScalar;

/// `φ([ω₀]) = Σ_{α∉I} c_α ϖ_α` with every `c_α > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KahlerClass<T> {
    nodes: Vec<usize>,
    coeffs: Vec<T>,
    /// Whether reported values should be read with the `2π` factor of `ρ₀`.
    two_pi_factor: bool,
}

impl<T: ExactScalar> KahlerClass<T> {
    /// `coeffs` is indexed by `Δ \ I` in increasing node order.
    pub fn new(coeffs: Vec<T>, p: &ParabolicData<T>) -> Result<Self> {
        let nodes = p.complement_nodes();
        if coeffs.len() != nodes.len() {
            return Err(Error::DimensionMismatch {
                expected: nodes.len(),
                got: coeffs.len(),
            });
        }
        if let Some((&index, c)) = nodes.iter().zip(&coeffs).find(|(_, c)| !c.is_positive()) {
            return Err(Error::NotKahler {
                index,
                value: c.to_ratio_string(),
            });
        }
        Ok(Self {
            nodes,
            coeffs,
            two_pi_factor: false,
        })
    }

    pub fn from_ints(coeffs: &[i64], p: &ParabolicData<T>) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| T::from_i64(c)).collect(), p)
    }

    pub fn with_two_pi_factor(mut self, flag: bool) -> Self {
        self.two_pi_factor = flag;
        self
    }

    pub fn nodes(&self) -> &[usize] {
        &self.nodes
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn two_pi_factor(&self) -> bool {
        self.two_pi_factor
    }

    pub fn as_weight(&self, rank: usize) -> Weight<T> {
        let mut coords = vec![T::zero(); rank];
        for (&i, c) in self.nodes.iter().zip(&self.coeffs) {
            coords[i] = c.clone();
        }
        Weight::new(coords)
    }
}

/// `q_β(ω₀⁻¹∘ψ)` for each `β ∈ Φ_I⁺`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndomorphismSpectrum<T> {
    pub eigenvalues: Vec<(RootVector, T)>,
}

impl<T: ExactScalar> EndomorphismSpectrum<T> {
    pub fn trace(&self) -> T {
        self.eigenvalues.iter().fold(T::zero(), |acc, (_, q)| acc + q.clone())
    }
}

fn check_class<T: ExactScalar>(omega0: &KahlerClass<T>, p: &ParabolicData<T>) -> Result<()> {
    if omega0.nodes != p.complement_nodes() {
        return Err(Error::DimensionMismatch {
            expected: p.complement_nodes().len(),
            got: omega0.nodes.len(),
        });
    }
    Ok(())
}

fn check_complementary<T: ExactScalar>(w: &Weight<T>, p: &ParabolicData<T>) -> Result<()> {
    p.root_system().check_rank(w.rank())?;
    match p.levi_nodes().iter().copied().find(|&i| !w.coord(i).is_zero()) {
        Some(index) => Err(Error::NotComplementary { index }),
        None => Ok(()),
    }
}

pub fn endo_eigenvalues<T: ExactScalar>(
    psi: &Weight<T>,
    omega0: &KahlerClass<T>,
    p: &ParabolicData<T>,
) -> Result<EndomorphismSpectrum<T>> {
    check_class(omega0, p)?;
    check_complementary(psi, p)?;
    let rs = p.root_system();
    let phi = omega0.as_weight(p.rank());
    let eigenvalues = p
        .phi_i_plus()
        .iter()
        .map(|beta| {
            let den = rs.pairing(&phi, beta)?;
            assert!(den.is_positive(), "Kähler class pairs non-positively with {beta}");
            Ok((beta.clone(), rs.pairing(psi, beta)? / den))
        })
        .collect::<Result<_>>()?;
    Ok(EndomorphismSpectrum { eigenvalues })
}

/// `Λ_{ω₀}(Ω_α)` for a node `alpha ∉ I`.
pub fn omega_trace<T: ExactScalar>(alpha: usize, omega0: &KahlerClass<T>, p: &ParabolicData<T>) -> Result<T> {
    if alpha >= p.rank() {
        return Err(Error::IndexOutOfRange {
            index: alpha,
            rank: p.rank(),
        });
    }
    if p.in_levi(alpha) {
        return Err(Error::NotComplementary { index: alpha });
    }
    check_class(omega0, p)?;
    let rs = p.root_system();
    let phi = omega0.as_weight(p.rank());
    let varpi = Weight::<T>::fundamental(alpha, p.rank());
    p.phi_i_plus().iter().try_fold(T::zero(), |acc: T, beta| -> Result<T> {
        Ok(acc + rs.pairing(&varpi, beta)? / rs.pairing(&phi, beta)?)
    })
}

/// `(√−1/2π) Λ_{ω₀} F(h₀)` for the invariant metric on the line bundle with weight `λ(L)`.
pub fn hym_constant<T: ExactScalar>(
    line_weight: &Weight<T>,
    omega0: &KahlerClass<T>,
    p: &ParabolicData<T>,
) -> Result<T> {
    if !line_weight.is_integral() {
        return Err(Error::NotIntegral);
    }
    Ok(endo_eigenvalues(line_weight, omega0, p)?.trace())
}

/// The class of `ρ₀ / 2π`: `c_α = ⟨δ_P, α^∨⟩` for `α ∉ I`.
pub fn einstein_class<T: ExactScalar>(p: &ParabolicData<T>) -> KahlerClass<T> {
    let coeffs = p
        .complement_nodes()
        .iter()
        .map(|&i| p.delta_p().coord(i).clone())
        .collect();
    KahlerClass::new(coeffs, p)
        .expect("δ_P pairs positively with every node outside I")
        .with_two_pi_factor(true)
}
