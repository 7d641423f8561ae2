//! Standard parabolic data attached to a subset `I ⊂ Δ` of simple roots.

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rootsys::{RootSystem, RootVector, Weight};
use crate::scalar::ExactScalar;

/// The parabolic `P_I`: Levi Cartan matrix `C_I`, the complementary positive
/// roots `Φ_I⁺ = Φ⁺ \ ⟨I⟩⁺` and `δ_P = Σ_{Φ_I⁺} α`.
///
/// Node indices are 0-based throughout the library.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParabolicData<T> {
    rs: RootSystem,
    levi_nodes: Vec<usize>,
    levi_cartan: Matrix<i64>,
    levi_system: RootSystem,
    phi_i_plus: Vec<RootVector>,
    delta_p: Weight<T>,
}

/// `λ = λ_s + λ_c` with `λ_s` supported on `I` and `λ_c` on `Δ \ I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightSplit<T> {
    pub lambda_s: Weight<T>,
    pub lambda_c: Weight<T>,
}

impl<T: ExactScalar> ParabolicData<T> {
    pub fn new(rs: RootSystem, levi_nodes: &[usize]) -> Result<Self> {
        let n = rs.rank();
        let mut nodes = levi_nodes.to_vec();
        nodes.sort_unstable();
        nodes.dedup();
        if let Some(&index) = nodes.iter().find(|&&i| i >= n) {
            return Err(Error::IndexOutOfRange { index, rank: n });
        }
        if nodes.len() == n {
            return Err(Error::FullSetNotParabolic);
        }
        let levi_cartan = rs.cartan().select(&nodes, &nodes);
        let levi_system = RootSystem::from_cartan(levi_cartan.clone())?;
        let phi_i_plus: Vec<RootVector> = rs
            .positive_roots()
            .iter()
            .filter(|r| r.support().any(|i| nodes.binary_search(&i).is_err()))
            .cloned()
            .collect();
        let delta_p = sum_roots(&rs, &phi_i_plus)?;
        Ok(Self {
            rs,
            levi_nodes: nodes,
            levi_cartan,
            levi_system,
            phi_i_plus,
            delta_p,
        })
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    /// `I`, sorted.
    pub fn levi_nodes(&self) -> &[usize] {
        &self.levi_nodes
    }

    /// `Δ \ I`, sorted.
    pub fn complement_nodes(&self) -> Vec<usize> {
        (0..self.rank()).filter(|&i| !self.in_levi(i)).collect()
    }

    pub fn in_levi(&self, i: usize) -> bool {
        self.levi_nodes.binary_search(&i).is_ok()
    }

    /// `C_I = (⟨α, β^∨⟩)_{α,β ∈ I}`.
    pub fn levi_cartan(&self) -> &Matrix<i64> {
        &self.levi_cartan
    }

    /// `det(C_I)`, which is 1 for the Borel case `I = ∅`.
    pub fn levi_det(&self) -> T {
        T::from_i64(self.levi_cartan.bareiss_determinant() as i64)
    }

    /// Root system of the semisimple part of the Levi factor, built from `C_I`
    /// alone; its node `k` is `levi_nodes()[k]`.
    pub fn levi_system(&self) -> &RootSystem {
        &self.levi_system
    }

    /// `Φ_I⁺`, in the order inherited from the ambient root system.
    pub fn phi_i_plus(&self) -> &[RootVector] {
        &self.phi_i_plus
    }

    pub fn delta_p(&self) -> &Weight<T> {
        &self.delta_p
    }

    /// `δ_P` recomputed from scratch, for cross-checking the cached value.
    pub fn recompute_delta_p(&self) -> Result<Weight<T>> {
        sum_roots(&self.rs, &self.phi_i_plus)
    }

    /// Complex dimension of `G/P`, i.e. `|Φ_I⁺|`.
    pub fn flag_dimension(&self) -> usize {
        self.phi_i_plus.len()
    }

    /// Restriction of `λ` to the Levi nodes, read as a Levi weight.
    pub fn restrict_to_levi(&self, lambda: &Weight<T>) -> Weight<T> {
        Weight::new(self.levi_nodes.iter().map(|&i| lambda.coord(i).clone()).collect())
    }

    pub fn is_dominant_for_levi(&self, lambda: &Weight<T>) -> bool {
        self.levi_nodes
            .iter()
            .all(|&i| i < lambda.rank() && !lambda.coord(i).is_negative())
    }

    /// Splits an integral weight into its Levi and central parts.
    pub fn decompose_weight(&self, lambda: &Weight<T>) -> Result<WeightSplit<T>> {
        self.rs_check(lambda)?;
        if !lambda.is_integral() {
            return Err(Error::NotIntegral);
        }
        if let Some(&index) = self.levi_nodes.iter().find(|&&i| lambda.coord(i).is_negative()) {
            return Err(Error::NotDominantForLevi {
                index,
                value: lambda.coord(index).to_ratio_string(),
            });
        }
        Ok(WeightSplit {
            lambda_s: lambda.project(|i| self.in_levi(i)),
            lambda_c: lambda.project(|i| !self.in_levi(i)),
        })
    }

    fn rs_check(&self, lambda: &Weight<T>) -> Result<()> {
        if lambda.rank() == self.rank() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.rank(),
                got: lambda.rank(),
            })
        }
    }
}

fn sum_roots<T: ExactScalar>(rs: &RootSystem, roots: &[RootVector]) -> Result<Weight<T>> {
    roots.iter().try_fold(Weight::zero(rs.rank()), |acc, r| {
        Ok(&acc + &rs.root_as_weight(r)?)
    })
}
