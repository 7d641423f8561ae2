//! Spectral model of the prescribed mean curvature problem for a line bundle.
//!
//! On a compact Kähler manifold with Laplace eigenbasis `{φ_j}`, the conformal
//! change `h = e^{2ψ}h₀` turns `K(L, h) = f` into a Poisson problem solved mode
//! by mode. The flat torus supplies an explicit spectrum; everything here is
//! generic over [`SpectralFloat`](crate::SpectralFloat).

mod function;
mod galerkin;
mod manifold;
pub mod quadrature;
mod singular;

pub use function::{truncate, SpectralFunction};
pub use galerkin::{
    bochner_constant, compatibility_constant, compatibility_from_mean, h2_cauchy_gap, solve_weight,
    topological_mean, CauchyGap, GalerkinSolution,
};
pub use manifold::{Mode, ModeKind, ModelManifold};
pub use singular::{
    distance_profile_coefficients, integrability_check, profile_mean, profile_norm_sq, CoefficientGrid,
    IntegrabilityReport, SingularProfile, TubeCertificate,
};
