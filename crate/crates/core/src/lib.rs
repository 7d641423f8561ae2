//! Exact Lie-theoretic tools for homogeneous vector bundles on flag varieties
//! `G/P`, together with a spectral Galerkin model of the prescribed mean
//! curvature problem for line bundles.
//!
//! The algebraic modules ([`rootsys`], [`parabolic`], [`bundle`],
//! [`curvature`]) are generic over an [`ExactScalar`] and never touch floating
//! point. The [`spectral`] module is generic over [`SpectralFloat`].
//! The aliases below fix the default instantiations.

pub mod bundle;
pub mod curvature;
pub mod error;
pub mod linalg;
pub mod parabolic;
pub mod rootsys;
pub mod scalar;
pub mod spectral;

pub use error::{Error, Result};
pub use rootsys::{LieFamily, RootSystem, RootVector, SimpleLieType};
pub use scalar::{ExactScalar, SpectralFloat};

/// Arbitrary-precision rational, the default exact scalar.
pub type Rational = num_rational::BigRational;

pub type Weight = rootsys::Weight<Rational>;
pub type ParabolicData = parabolic::ParabolicData<Rational>;
pub type WeightSplit = parabolic::WeightSplit<Rational>;
pub type BundleSpec = bundle::BundleSpec<Rational>;
pub type ChernData = bundle::ChernData<Rational>;
pub type SplittingReport = bundle::SplittingReport<Rational>;
pub type KahlerClass = curvature::KahlerClass<Rational>;
pub type EndomorphismSpectrum = curvature::EndomorphismSpectrum<Rational>;

pub type ModelManifold = spectral::ModelManifold<f64>;
pub type SpectralFunction = spectral::SpectralFunction<f64>;
pub type GalerkinSolution = spectral::GalerkinSolution<f64>;
pub type SingularProfile = spectral::SingularProfile<f64>;
