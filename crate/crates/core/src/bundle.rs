//! First Chern class and the `E ≅ E₀ ⊗ L₀` splitting test for irreducible
//! homogeneous vector bundles `G ×_P W(λ) → G/P`.
//!
//! For `λ = λ_s + λ_c` and `r = dim W(λ)`, the weight `rλ + λ(E)` lies in the
//! span of the Levi roots, `Σ_{α∈I} a_α α`, where `a` solves `C_Iᵀ a = r λ_s|_I`.
//! Reading off the coordinates outside `I` gives
//!
//! ```text
//! λ(E) = Σ_{β∉I} (Σ_{α∈I} a_α ⟨α, β^∨⟩) ϖ_β − r λ_c
//! ```
//!
//! and `E` splits iff `λ(E)/r` is integral, iff every determinant-ratio sum
//! `Σ_{α∈I} det C_I(λ_s, α)/det C_I · ⟨α, β^∨⟩` (for `β ∉ I`) is an integer.

use crate::error::{Error, Result};
use crate::parabolic::{ParabolicData, WeightSplit};
use crate::rootsys::Weight;
use crate::scalar::ExactScalar;

/// An irreducible `P`-module, given by a highest weight dominant for the Levi.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BundleSpec<T> {
    parabolic: ParabolicData<T>,
    highest_weight: Weight<T>,
    split: WeightSplit<T>,
}

impl<T: ExactScalar> BundleSpec<T> {
    pub fn new(parabolic: ParabolicData<T>, highest_weight: Weight<T>) -> Result<Self> {
        let split = parabolic.decompose_weight(&highest_weight)?;
        Ok(Self {
            parabolic,
            highest_weight,
            split,
        })
    }

    pub fn parabolic(&self) -> &ParabolicData<T> {
        &self.parabolic
    }

    pub fn highest_weight(&self) -> &Weight<T> {
        &self.highest_weight
    }

    pub fn split(&self) -> &WeightSplit<T> {
        &self.split
    }

    /// The same module twisted by a character supported off the Levi.
    pub fn twisted(&self, mu_c: &Weight<T>) -> Result<Self> {
        if let Some(index) = self.parabolic.levi_nodes().iter().copied().find(|&i| !mu_c.coord(i).is_zero()) {
            return Err(Error::NotComplementary { index });
        }
        Self::new(self.parabolic.clone(), &self.highest_weight + mu_c)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChernData<T> {
    /// `r = dim W(λ)`.
    pub rank: T,
    /// `λ(E)`, supported on `Δ \ I`.
    pub lambda_e: Weight<T>,
    /// `a_α(E)` for `α ∈ I`, in the order of `levi_nodes()`.
    pub cramer_a: Vec<T>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplittingReport<T> {
    pub chern: ChernData<T>,
    /// `(β, Σ_{α∈I} det C_I(λ_s,α)/det C_I · ⟨α,β^∨⟩)` for each `β ∈ Δ \ I`.
    pub criterion_values: Vec<(usize, T)>,
    pub splits: bool,
    /// `λ(L₀) = λ(E)/r` when the bundle splits.
    pub lambda_l0: Option<Weight<T>>,
    /// `λ(E) − r·λ(L₀)`, zero when the bundle splits.
    pub lambda_e0_check: Option<Weight<T>>,
    /// Highest weight of `E₀ = E ⊗ L₀⁻¹`.
    pub e0_highest_weight: Option<Weight<T>>,
}

/// Dimension of the irreducible Levi module with highest weight `λ_s`, by the
/// Weyl dimension formula over the Levi root system. Coordinates of `λ_s`
/// outside `I` are ignored.
pub fn weyl_dim<T: ExactScalar>(p: &ParabolicData<T>, lambda_s: &Weight<T>) -> Result<T> {
    let levi = p.levi_system();
    let restricted = p.restrict_to_levi(lambda_s);
    if let Some(k) = restricted.coords().iter().position(|c| c.is_negative()) {
        let index = p.levi_nodes()[k];
        return Err(Error::NotDominantForLevi {
            index,
            value: restricted.coord(k).to_ratio_string(),
        });
    }
    let rho = levi.weyl_vector::<T>();
    let shifted = &restricted + &rho;
    let mut dim = T::one();
    for alpha in levi.positive_roots() {
        dim = dim * levi.pairing(&shifted, alpha)? / levi.pairing(&rho, alpha)?;
    }
    assert!(dim.is_integral() && dim.is_positive(), "Weyl dimension {dim} is not a positive integer");
    Ok(dim)
}

/// `det C_I(λ_s, α) / det C_I` for each `α ∈ I`, where `C_I(λ_s, α)` is `C_I`
/// with its `α`-row replaced by `(⟨λ_s, β^∨⟩)_{β∈I}`.
pub fn determinant_ratios<T: ExactScalar>(p: &ParabolicData<T>, lambda_s: &Weight<T>) -> Result<Vec<T>> {
    let ci = p.levi_cartan().to_exact::<T>();
    let det = ci.determinant()?;
    let row = p.restrict_to_levi(lambda_s).into_coords();
    (0..ci.nrows())
        .map(|k| Ok(ci.with_row(k, &row)?.determinant()? / det.clone()))
        .collect()
}

/// `a_α(E) = r · det C_I(λ_s, α) / det C_I`.
pub fn cramer_by_determinants<T: ExactScalar>(spec: &BundleSpec<T>) -> Result<Vec<T>> {
    let r = weyl_dim(spec.parabolic(), &spec.split().lambda_s)?;
    Ok(determinant_ratios(spec.parabolic(), &spec.split().lambda_s)?
        .into_iter()
        .map(|x| x * r.clone())
        .collect())
}

/// `a` from the linear system `C_Iᵀ a = b_I`, `b_α = ⟨r λ_s, α^∨⟩`.
pub fn cramer_by_solve<T: ExactScalar>(spec: &BundleSpec<T>) -> Result<Vec<T>> {
    let p = spec.parabolic();
    let r = weyl_dim(p, &spec.split().lambda_s)?;
    let b: Vec<T> = p
        .restrict_to_levi(&spec.split().lambda_s)
        .coords()
        .iter()
        .map(|c| c.clone() * r.clone())
        .collect();
    p.levi_cartan().to_exact::<T>().transpose().solve(&b)
}

/// The coefficients `a_α(E)`, computed by both routes and checked equal.
pub fn cramer_coefficients<T: ExactScalar>(spec: &BundleSpec<T>) -> Result<Vec<T>> {
    let by_det = cramer_by_determinants(spec)?;
    let by_solve = cramer_by_solve(spec)?;
    assert_eq!(by_det, by_solve, "Cramer determinants disagree with the linear solve");
    Ok(by_det)
}

/// `Σ_{α∈I} coeffs_α ⟨α, β^∨⟩` for each `β ∈ Δ \ I`.
fn levi_combination_off_levi<T: ExactScalar>(p: &ParabolicData<T>, coeffs: &[T]) -> Vec<(usize, T)> {
    let c = p.root_system().cartan();
    p.complement_nodes()
        .into_iter()
        .map(|beta| {
            let v = p
                .levi_nodes()
                .iter()
                .zip(coeffs)
                .fold(T::zero(), |acc, (&alpha, a)| acc + a.clone() * T::from_i64(*c.get(alpha, beta)));
            (beta, v)
        })
        .collect()
}

/// `r`, `λ(E)` and `a(E)`, with the structural identities checked.
pub fn chern_weight<T: ExactScalar>(spec: &BundleSpec<T>) -> Result<ChernData<T>> {
    let p = spec.parabolic();
    let n = p.rank();
    let rank = weyl_dim(p, &spec.split().lambda_s)?;
    let cramer_a = cramer_coefficients(spec)?;

    let mut coords = vec![T::zero(); n];
    for (beta, v) in levi_combination_off_levi(p, &cramer_a) {
        coords[beta] = v - rank.clone() * spec.split().lambda_c.coord(beta).clone();
    }
    let lambda_e = Weight::new(coords);

    // r·λ + λ(E) = Σ_{α∈I} a_α α
    let residue = &spec.highest_weight().scale(&rank) + &lambda_e;
    let residue_roots = residue.to_root_coords(p.root_system())?;
    let mut expected = vec![T::zero(); n];
    for (&alpha, a) in p.levi_nodes().iter().zip(&cramer_a) {
        expected[alpha] = a.clone();
    }
    assert_eq!(residue_roots, expected, "rλ + λ(E) is not supported on the Levi roots");
    let det = p.levi_det();
    assert!(
        cramer_a.iter().all(|a| (a.clone() * det.clone()).is_integral()),
        "denominator of a_α does not divide det C_I"
    );

    Ok(ChernData {
        rank,
        lambda_e,
        cramer_a,
    })
}

/// `λ(T^{1,0} G/P) = δ_P`.
pub fn canonical_weight<T: ExactScalar>(p: &ParabolicData<T>) -> Weight<T> {
    p.delta_p().clone()
}

/// Runs the splitting criterion and, when it passes, constructs `L₀` and `E₀`.
pub fn splitting_report<T: ExactScalar>(spec: &BundleSpec<T>) -> Result<SplittingReport<T>> {
    let p = spec.parabolic();
    let chern = chern_weight(spec)?;
    let ratios = determinant_ratios(p, &spec.split().lambda_s)?;
    let criterion_values = levi_combination_off_levi(p, &ratios);
    let splits = criterion_values.iter().all(|(_, v)| v.is_integral());

    let theta = chern.lambda_e.scale(&(T::one() / chern.rank.clone()));
    assert_eq!(
        splits,
        theta.is_integral(),
        "criterion verdict disagrees with integrality of λ(E)/r"
    );

    let (lambda_l0, lambda_e0_check, e0_highest_weight) = if splits {
        let e0_check = &chern.lambda_e - &theta.scale(&chern.rank);
        let e0 = spec.twisted(&theta)?;
        let e0_chern = chern_weight(&e0)?;
        assert!(e0_check.is_zero() && e0_chern.lambda_e.is_zero(), "c₁(E₀) ≠ 0");
        (Some(theta), Some(e0_check), Some(e0.highest_weight().clone()))
    } else {
        (None, None, None)
    };

    Ok(SplittingReport {
        chern,
        criterion_values,
        splits,
        lambda_l0,
        lambda_e0_check,
        e0_highest_weight,
    })
}

/// Embeds degrees `⟨c₁(L), [P¹_α]⟩`, indexed by `Δ \ I`, as a weight.
pub fn line_bundle_weight<T: ExactScalar>(coeffs: &[i64], p: &ParabolicData<T>) -> Result<Weight<T>> {
    let complement = p.complement_nodes();
    if coeffs.len() != complement.len() {
        return Err(Error::DimensionMismatch {
            expected: complement.len(),
            got: coeffs.len(),
        });
    }
    let mut w = Weight::zero(p.rank());
    for (&node, &c) in complement.iter().zip(coeffs) {
        w = &w + &Weight::fundamental(node, p.rank()).scale(&T::from_i64(c));
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{RootSystem, RootVector};
    use num_rational::{BigRational, Rational64};
    use num_traits::Zero;

    type Q = BigRational;

    fn q(n: i64, d: i64) -> Q {
        Q::from_frac(n, d)
    }

    fn para(label: &str, nodes: &[usize]) -> ParabolicData<Q> {
        ParabolicData::new(RootSystem::from_type(label.parse().unwrap()), nodes).unwrap()
    }

    fn spec(label: &str, nodes: &[usize], weight: &[i64]) -> BundleSpec<Q> {
        BundleSpec::new(para(label, nodes), Weight::from_ints(weight)).unwrap()
    }

    #[test]
    fn weyl_dims_from_examples() {
        let gr = para("A3", &[0, 2]);
        assert_eq!(weyl_dim(&gr, &Weight::from_ints(&[1, 0, 0])).unwrap(), q(2, 1));
        let q5 = para("B3", &[1, 2]);
        assert_eq!(weyl_dim(&q5, &Weight::from_ints(&[0, 0, 1])).unwrap(), q(4, 1));
        assert_eq!(weyl_dim(&q5, &Weight::from_ints(&[0, 0, 2])).unwrap(), q(10, 1));
        assert_eq!(weyl_dim(&q5, &Weight::zero(3)).unwrap(), q(1, 1));
        assert!(matches!(
            weyl_dim(&q5, &Weight::from_ints(&[0, -1, 0])),
            Err(Error::NotDominantForLevi { index: 1, .. })
        ));
    }

    #[test]
    fn cramer_examples() {
        assert_eq!(cramer_coefficients(&spec("A3", &[0, 2], &[1, 0, 0])).unwrap(), vec![q(1, 1), q(0, 1)]);
        assert_eq!(cramer_coefficients(&spec("B3", &[1, 2], &[0, 0, 1])).unwrap(), vec![q(2, 1), q(4, 1)]);
        assert_eq!(cramer_coefficients(&spec("B3", &[1, 2], &[0, 0, 2])).unwrap(), vec![q(10, 1), q(20, 1)]);
        assert!(cramer_coefficients(&spec("A2", &[], &[3, -1])).unwrap().is_empty());
    }

    #[test]
    fn chern_weight_examples() {
        let universal = chern_weight(&spec("A3", &[0, 2], &[1, 0, 0])).unwrap();
        assert_eq!(universal.rank, q(2, 1));
        assert_eq!(universal.lambda_e, Weight::from_ints(&[0, -1, 0]));
        let spinor = chern_weight(&spec("B3", &[1, 2], &[0, 0, 1])).unwrap();
        assert_eq!(spinor.lambda_e, Weight::from_ints(&[-2, 0, 0]));
    }

    #[test]
    fn tangent_module_matches_canonical_route() {
        // g/p for Gr_2(C^4) has highest weight −α2 = ϖ1 − 2ϖ2 + ϖ3
        let p = para("A3", &[0, 2]);
        let minus_alpha2 = -&p.root_system().root_as_weight::<Q>(&RootVector::simple(1, 3)).unwrap();
        let t = BundleSpec::new(p.clone(), minus_alpha2).unwrap();
        let chern = chern_weight(&t).unwrap();
        assert_eq!(chern.rank, q(4, 1));
        assert_eq!(chern.lambda_e, canonical_weight(&p));
        let report = splitting_report(&t).unwrap();
        assert!(report.splits);
        assert_eq!(report.lambda_l0, Some(Weight::from_ints(&[0, 1, 0])));
    }

    #[test]
    fn canonical_weight_examples() {
        assert_eq!(canonical_weight(&para("A3", &[0, 2])), Weight::from_ints(&[0, 4, 0]));
        assert_eq!(canonical_weight(&para("A1", &[])), Weight::from_ints(&[2]));
        assert_eq!(canonical_weight(&para("B3", &[1, 2])), Weight::from_ints(&[5, 0, 0]));
    }

    #[test]
    fn spinor_does_not_split() {
        let r = splitting_report(&spec("B3", &[1, 2], &[0, 0, 1])).unwrap();
        assert_eq!(r.criterion_values, vec![(0, q(-1, 2))]);
        assert!(!r.splits);
        assert!(r.lambda_l0.is_none());
    }

    #[test]
    fn symmetric_square_splits() {
        let r = splitting_report(&spec("B3", &[1, 2], &[0, 0, 2])).unwrap();
        assert_eq!(r.chern.rank, q(10, 1));
        assert_eq!(r.criterion_values, vec![(0, q(-1, 1))]);
        assert!(r.splits);
        assert_eq!(r.lambda_l0, Some(Weight::from_ints(&[-1, 0, 0])));
        assert_eq!(r.lambda_e0_check, Some(Weight::zero(3)));
        // E₀ = E ⊗ L₀⁻¹ has highest weight λ + λ(L₀)
        assert_eq!(r.e0_highest_weight, Some(Weight::from_ints(&[-1, 0, 2])));
    }

    #[test]
    fn spin8_family() {
        let fail = splitting_report(&spec("D4", &[0, 1], &[1, 0, 0, 0])).unwrap();
        assert_eq!(fail.criterion_values, vec![(2, q(-1, 3)), (3, q(-1, 3))]);
        assert!(!fail.splits);
        let pass = splitting_report(&spec("D4", &[0, 1], &[1, 1, 0, 0])).unwrap();
        assert_eq!(pass.criterion_values, vec![(2, q(-1, 1)), (3, q(-1, 1))]);
        assert!(pass.splits);
    }

    #[test]
    fn universal_bundle_criterion() {
        let r = splitting_report(&spec("A3", &[0, 2], &[1, 0, 0])).unwrap();
        assert_eq!(r.criterion_values, vec![(1, q(-1, 2))]);
        assert!(!r.splits);
    }

    #[test]
    fn degenerate_levi_weight_splits() {
        let r = splitting_report(&spec("B3", &[1, 2], &[3, 0, 0])).unwrap();
        assert_eq!(r.criterion_values, vec![(0, q(0, 1))]);
        assert!(r.splits);
        assert_eq!(r.chern.lambda_e, Weight::from_ints(&[-3, 0, 0]));
        let borel = splitting_report(&spec("G2", &[], &[2, -5])).unwrap();
        assert!(borel.splits);
        assert!(borel.criterion_values.iter().all(|(_, v)| v.is_zero()));
    }

    #[test]
    fn line_bundle_weights() {
        let gr = para("A3", &[0, 2]);
        assert_eq!(line_bundle_weight(&[1], &gr).unwrap(), Weight::from_ints(&[0, 1, 0]));
        assert!(line_bundle_weight(&[0], &gr).unwrap().is_zero());
        let q5 = para("B3", &[1, 2]);
        assert_eq!(line_bundle_weight(&[-1], &q5).unwrap(), Weight::from_ints(&[-1, 0, 0]));
        assert!(line_bundle_weight(&[1, 2], &q5).is_err());
    }

    #[test]
    fn twist_rejects_levi_support() {
        let s = spec("A3", &[0, 2], &[1, 0, 0]);
        assert_eq!(
            s.twisted(&Weight::from_ints(&[1, 0, 0])).unwrap_err(),
            Error::NotComplementary { index: 0 }
        );
    }

    #[test]
    fn fixed_width_rationals_agree() {
        let p: ParabolicData<Rational64> =
            ParabolicData::new(RootSystem::from_type("B3".parse().unwrap()), &[1, 2]).unwrap();
        let s = BundleSpec::new(p, Weight::from_ints(&[0, 0, 2])).unwrap();
        let r = splitting_report(&s).unwrap();
        assert_eq!(r.criterion_values, vec![(0, Rational64::from_i64(-1))]);
    }
}
