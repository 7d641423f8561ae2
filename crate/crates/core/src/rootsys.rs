//! Finite root systems: Cartan matrices in Bourbaki numbering, positive-root
//! enumeration, weights in the fundamental-weight basis and coroot pairings.
//!
//! Conventions: `cartan[i][j] = ⟨α_i, α_j^∨⟩`, so row `i` of the Cartan matrix
//! is the simple root `α_i` written in fundamental weights.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::ExactScalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LieFamily {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl LieFamily {
    pub fn letter(self) -> char {
        match self {
            LieFamily::A => 'A',
            LieFamily::B => 'B',
            LieFamily::C => 'C',
            LieFamily::D => 'D',
            LieFamily::E => 'E',
            LieFamily::F => 'F',
            LieFamily::G => 'G',
        }
    }

    fn from_letter(c: char) -> Option<Self> {
        Some(match c.to_ascii_uppercase() {
            'A' => LieFamily::A,
            'B' => LieFamily::B,
            'C' => LieFamily::C,
            'D' => LieFamily::D,
            'E' => LieFamily::E,
            'F' => LieFamily::F,
            'G' => LieFamily::G,
            _ => return None,
        })
    }
}

/// A finite simple type such as `B3` or `E8`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleLieType {
    family: LieFamily,
    rank: usize,
}

impl SimpleLieType {
    pub fn new(family: LieFamily, rank: usize) -> Result<Self> {
        let reason = match family {
            LieFamily::A if rank < 1 => Some("A needs rank >= 1"),
            LieFamily::B | LieFamily::C if rank < 2 => Some("B and C need rank >= 2"),
            LieFamily::D if rank < 3 => Some("D needs rank >= 3"),
            LieFamily::E if !(6..=8).contains(&rank) => Some("E exists only in ranks 6, 7, 8"),
            LieFamily::F if rank != 4 => Some("F exists only in rank 4"),
            LieFamily::G if rank != 2 => Some("G exists only in rank 2"),
            _ => None,
        };
        match reason {
            Some(reason) => Err(Error::InvalidType {
                family: family.letter(),
                rank,
                reason,
            }),
            None => Ok(Self { family, rank }),
        }
    }

    pub fn family(&self) -> LieFamily {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Closed-form number of positive roots.
    pub fn positive_root_count(&self) -> usize {
        let n = self.rank;
        match (self.family, n) {
            (LieFamily::A, _) => n * (n + 1) / 2,
            (LieFamily::B | LieFamily::C, _) => n * n,
            (LieFamily::D, _) => n * (n - 1),
            (LieFamily::E, 6) => 36,
            (LieFamily::E, 7) => 63,
            (LieFamily::E, _) => 120,
            (LieFamily::F, _) => 24,
            (LieFamily::G, _) => 6,
        }
    }

    /// Bourbaki Cartan matrix with `C[i][j] = ⟨α_i, α_j^∨⟩`.
    pub fn cartan_matrix(&self) -> Matrix<i64> {
        let n = self.rank;
        let mut c = vec![vec![0i64; n]; n];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize| {
            c[i][j] = -1;
            c[j][i] = -1;
        };
        match self.family {
            LieFamily::A | LieFamily::B | LieFamily::C => {
                for i in 0..n - 1 {
                    link(i, i + 1);
                }
            }
            LieFamily::D => {
                for i in 0..n - 2 {
                    link(i, i + 1);
                }
                link(n - 3, n - 1);
            }
            LieFamily::E => {
                // 1-3-4-5-6-7-8 with 2 attached to 4
                link(0, 2);
                link(1, 3);
                for i in 2..n - 1 {
                    link(i, i + 1);
                }
            }
            LieFamily::F => {
                link(0, 1);
                link(1, 2);
                link(2, 3);
            }
            LieFamily::G => link(0, 1),
        }
        match self.family {
            // α_n short
            LieFamily::B => c[n - 2][n - 1] = -2,
            // α_n long
            LieFamily::C => c[n - 1][n - 2] = -2,
            // α_1, α_2 long; α_3, α_4 short
            LieFamily::F => c[1][2] = -2,
            // α_1 short, α_2 long
            LieFamily::G => c[1][0] = -3,
            _ => {}
        }
        Matrix::from_rows(c).expect("square by construction")
    }
}

impl fmt::Display for SimpleLieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for SimpleLieType {
    type Err = Error;

    /// Parses Dynkin labels such as `"B3"`, `"e8"`, `"A10"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = chars
            .next()
            .and_then(LieFamily::from_letter)
            .ok_or_else(|| Error::BadLabel(s.to_string()))?;
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::BadLabel(s.to_string()))?;
        SimpleLieType::new(family, rank)
    }
}

/// A positive root `Σ m_i α_i` stored by its simple-root coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct RootVector(Vec<i64>);

impl RootVector {
    pub fn new(coords: Vec<i64>) -> Self {
        Self(coords)
    }

    pub fn simple(i: usize, rank: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        Self(v)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    /// Indices of simple roots with nonzero coefficient.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &m)| m != 0).map(|(i, _)| i)
    }

    /// Compact label such as `1,2,2`.
    pub fn label(&self) -> String {
        self.0
            .iter()
            .map(i64::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &m)| m != 0)
            .map(|(i, &m)| {
                if m == 1 {
                    format!("a{}", i + 1)
                } else {
                    format!("{m}a{}", i + 1)
                }
            })
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join("+"))
        }
    }
}

/// A weight `Σ c_i ϖ_i` in the fundamental-weight basis, so `c_j = ⟨λ, α_j^∨⟩`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Weight<T> {
    coords: Vec<T>,
}

impl<T: ExactScalar> Weight<T> {
    pub fn new(coords: Vec<T>) -> Self {
        Self { coords }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Self::new(coords.iter().map(|&c| T::from_i64(c)).collect())
    }

    pub fn zero(rank: usize) -> Self {
        Self::new(vec![T::zero(); rank])
    }

    /// The fundamental weight `ϖ_i` (0-based index).
    pub fn fundamental(i: usize, rank: usize) -> Self {
        let mut w = Self::zero(rank);
        w.coords[i] = T::one();
        w
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &T {
        &self.coords[i]
    }

    pub fn into_coords(self) -> Vec<T> {
        self.coords
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(T::is_integral)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(T::is_zero)
    }

    pub fn scale(&self, k: &T) -> Self {
        Self::new(self.coords.iter().map(|c| c.clone() * k.clone()).collect())
    }

    /// Keeps only the coordinates whose index satisfies `keep`.
    pub fn project(&self, keep: impl Fn(usize) -> bool) -> Self {
        Self::new(
            self.coords
                .iter()
                .enumerate()
                .map(|(i, c)| if keep(i) { c.clone() } else { T::zero() })
                .collect(),
        )
    }

    /// Coordinates in the simple-root basis: solves `Cᵀ x = c`.
    pub fn to_root_coords(&self, rs: &RootSystem) -> Result<Vec<T>> {
        rs.check_rank(self.rank())?;
        rs.cartan().to_exact::<T>().transpose().solve(&self.coords)
    }
}

impl<T: ExactScalar> Add for &Weight<T> {
    type Output = Weight<T>;

    fn add(self, rhs: Self) -> Weight<T> {
        assert_eq!(self.rank(), rhs.rank(), "weight rank mismatch");
        Weight::new(
            self.coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        )
    }
}

impl<T: ExactScalar> Sub for &Weight<T> {
    type Output = Weight<T>;

    fn sub(self, rhs: Self) -> Weight<T> {
        assert_eq!(self.rank(), rhs.rank(), "weight rank mismatch");
        Weight::new(
            self.coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        )
    }
}

impl<T: ExactScalar> Neg for &Weight<T> {
    type Output = Weight<T>;

    fn neg(self) -> Weight<T> {
        Weight::new(self.coords.iter().map(|c| -c.clone()).collect())
    }
}

impl<T: ExactScalar> fmt::Display for Weight<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(T::to_ratio_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// A finite (possibly reducible, possibly empty) root system built from a
/// Cartan matrix. Simple types carry their [`SimpleLieType`]; Levi
/// subsystems do not.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSystem {
    lie_type: Option<SimpleLieType>,
    cartan: Matrix<i64>,
    symmetrizers: Vec<i64>,
    root_norms: Vec<i64>,
    positive_roots: Vec<RootVector>,
}

impl RootSystem {
    pub fn from_type(t: SimpleLieType) -> Self {
        let mut rs = Self::from_cartan(t.cartan_matrix())
            .expect("Bourbaki Cartan matrices are of finite type");
        rs.lie_type = Some(t);
        rs
    }

    /// Validates that `cartan` is a finite-type generalized Cartan matrix and
    /// enumerates its positive roots.
    pub fn from_cartan(cartan: Matrix<i64>) -> Result<Self> {
        if !cartan.is_square() {
            return Err(Error::NotFiniteType("matrix is not square".into()));
        }
        let n = cartan.nrows();
        for i in 0..n {
            if *cartan.get(i, i) != 2 {
                return Err(Error::NotFiniteType(format!("C[{i}][{i}] != 2")));
            }
            for j in 0..n {
                let (cij, cji) = (*cartan.get(i, j), *cartan.get(j, i));
                if i != j && cij > 0 {
                    return Err(Error::NotFiniteType(format!("C[{i}][{j}] > 0")));
                }
                if (cij == 0) != (cji == 0) {
                    return Err(Error::NotFiniteType(format!(
                        "C[{i}][{j}] and C[{j}][{i}] disagree on vanishing"
                    )));
                }
            }
        }
        let symmetrizers = symmetrizers(&cartan)?;
        let dc = Matrix::from_fn(n, n, |i, j| symmetrizers[i] * cartan.get(i, j));
        if dc != dc.transpose() {
            return Err(Error::NotFiniteType("not symmetrizable".into()));
        }
        for k in 1..=n {
            let idx: Vec<usize> = (0..k).collect();
            if dc.select(&idx, &idx).bareiss_determinant() <= 0 {
                return Err(Error::NotFiniteType("not positive definite".into()));
            }
        }
        let root_norms = root_norms(&cartan, &symmetrizers);
        let positive_roots = enumerate_positive_roots(&cartan);
        Ok(Self {
            lie_type: None,
            cartan,
            symmetrizers,
            root_norms,
            positive_roots,
        })
    }

    pub fn lie_type(&self) -> Option<SimpleLieType> {
        self.lie_type
    }

    pub fn rank(&self) -> usize {
        self.cartan.nrows()
    }

    pub fn cartan(&self) -> &Matrix<i64> {
        &self.cartan
    }

    /// Minimal positive integers `d_i` with `(d_i C_ij)` symmetric.
    pub fn symmetrizers(&self) -> &[i64] {
        &self.symmetrizers
    }

    /// Squared lengths `(α_i, α_i)` up to a common scale per component;
    /// `C_ij · norms[j] = 2(α_i, α_j)`.
    pub fn root_norms(&self) -> &[i64] {
        &self.root_norms
    }

    /// Positive roots sorted by height, then lexicographically.
    pub fn positive_roots(&self) -> &[RootVector] {
        &self.positive_roots
    }

    pub fn contains_root(&self, beta: &RootVector) -> bool {
        self.positive_roots.binary_search_by(|r| root_order(r, beta)).is_ok()
    }

    pub(crate) fn check_rank(&self, got: usize) -> Result<()> {
        if got == self.rank() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.rank(),
                got,
            })
        }
    }

    /// `2(α_i, α_j)` in the stored normalization.
    pub fn gram2(&self, i: usize, j: usize) -> i64 {
        self.cartan.get(i, j) * self.root_norms[j]
    }

    /// `2(β, β)`.
    pub fn norm2(&self, beta: &RootVector) -> i64 {
        let m = beta.coords();
        let n = self.rank();
        let mut total = 0;
        for i in 0..n {
            for j in 0..n {
                total += m[i] * m[j] * self.gram2(i, j);
            }
        }
        total
    }

    /// Coefficients of `β^∨` in the simple coroots: `β^∨ = Σ_i m_i (α_i,α_i)/(β,β) α_i^∨`.
    pub fn coroot_coords<T: ExactScalar>(&self, beta: &RootVector) -> Result<Vec<T>> {
        self.check_rank(beta.coords().len())?;
        let norm2 = T::from_i64(self.norm2(beta));
        Ok(beta
            .coords()
            .iter()
            .zip(&self.root_norms)
            .map(|(&m, &l)| T::from_i64(2 * m * l) / norm2.clone())
            .collect())
    }

    /// `⟨λ, β^∨⟩`, exact.
    pub fn pairing<T: ExactScalar>(&self, lambda: &Weight<T>, beta: &RootVector) -> Result<T> {
        self.check_rank(lambda.rank())?;
        let coroot = self.coroot_coords::<T>(beta)?;
        Ok(lambda
            .coords()
            .iter()
            .zip(coroot)
            .fold(T::zero(), |acc, (c, k)| acc + c.clone() * k))
    }

    /// `(λ, β)` computed through the inverse Cartan matrix, in the same
    /// normalization as [`RootSystem::root_inner`]. Independent of
    /// [`RootSystem::pairing`].
    pub fn weight_root_inner<T: ExactScalar>(
        &self,
        lambda: &Weight<T>,
        beta: &RootVector,
    ) -> Result<T> {
        self.check_rank(lambda.rank())?;
        self.check_rank(beta.coords().len())?;
        let n = self.rank();
        // ϖ_i = Σ_k (C⁻¹)_{ik} α_k, i.e. λ in root coordinates is C⁻ᵀ c
        let root_coords = lambda.to_root_coords(self)?;
        let two = T::from_i64(2);
        let mut total = T::zero();
        for k in 0..n {
            let alpha_k_beta = (0..n).fold(T::zero(), |acc, j| {
                acc + T::from_i64(beta.coords()[j] * self.gram2(k, j))
            }) / two.clone();
            total = total + root_coords[k].clone() * alpha_k_beta;
        }
        Ok(total)
    }

    /// `(β, β)` in the stored normalization.
    pub fn root_inner<T: ExactScalar>(&self, beta: &RootVector) -> T {
        T::from_i64(self.norm2(beta)) / T::from_i64(2)
    }

    /// `β` in the fundamental-weight basis: `Σ_i m_i · (row i of C)`.
    pub fn root_as_weight<T: ExactScalar>(&self, beta: &RootVector) -> Result<Weight<T>> {
        self.check_rank(beta.coords().len())?;
        let n = self.rank();
        let coords = (0..n)
            .map(|j| {
                let v: i64 = beta
                    .coords()
                    .iter()
                    .enumerate()
                    .map(|(i, &m)| m * self.cartan.get(i, j))
                    .sum();
                T::from_i64(v)
            })
            .collect();
        Ok(Weight::new(coords))
    }

    /// `ρ = Σ ϖ_i`.
    pub fn weyl_vector<T: ExactScalar>(&self) -> Weight<T> {
        Weight::new(vec![T::one(); self.rank()])
    }

    pub fn dump(&self) -> RootSystemDump {
        RootSystemDump {
            lie_type: self
                .lie_type
                .map(|t| t.to_string())
                .unwrap_or_else(|| "custom".into()),
            cartan: self.cartan.to_rows(),
            positive_roots: self.positive_roots.iter().map(|r| r.coords().to_vec()).collect(),
        }
    }
}

/// JSON shape `{"type":"B3","cartan":[[...]],"positive_roots":[[...]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootSystemDump {
    #[serde(rename = "type")]
    pub lie_type: String,
    pub cartan: Vec<Vec<i64>>,
    pub positive_roots: Vec<Vec<i64>>,
}

fn root_order(a: &RootVector, b: &RootVector) -> std::cmp::Ordering {
    (a.height(), a.coords()).cmp(&(b.height(), b.coords()))
}

/// Connected components of the Dynkin graph.
pub(crate) fn components(cartan: &Matrix<i64>) -> Vec<Vec<usize>> {
    let n = cartan.nrows();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut k = 0;
        while k < comp.len() {
            let i = comp[k];
            for j in 0..n {
                if !seen[j] && *cartan.get(i, j) != 0 {
                    seen[j] = true;
                    comp.push(j);
                }
            }
            k += 1;
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Minimal positive integer `d` with `d_i C_ij = d_j C_ji`, per component.
fn symmetrizers(cartan: &Matrix<i64>) -> Result<Vec<i64>> {
    let n = cartan.nrows();
    // rational d_i = num/den kept reduced
    let mut num = vec![0i64; n];
    let mut den = vec![1i64; n];
    for comp in components(cartan) {
        num[comp[0]] = 1;
        let mut queue = vec![comp[0]];
        let mut visited = BTreeSet::from([comp[0]]);
        while let Some(i) = queue.pop() {
            for &j in &comp {
                let (cij, cji) = (*cartan.get(i, j), *cartan.get(j, i));
                if i == j || cij == 0 || visited.contains(&j) {
                    continue;
                }
                // d_j = d_i · C_ij / C_ji
                let (mut a, mut b) = (num[i] * cij, den[i] * cji);
                if b < 0 {
                    a = -a;
                    b = -b;
                }
                let g = a.gcd(&b);
                num[j] = a / g;
                den[j] = b / g;
                visited.insert(j);
                queue.push(j);
            }
        }
        let l = comp.iter().fold(1i64, |acc, &i| acc.lcm(&den[i]));
        let scaled: Vec<i64> = comp.iter().map(|&i| num[i] * (l / den[i])).collect();
        let g = scaled.iter().fold(0i64, |acc, &v| acc.gcd(&v));
        for (&i, v) in comp.iter().zip(scaled) {
            num[i] = v / g;
            den[i] = 1;
        }
    }
    if num.iter().any(|&d| d <= 0) {
        return Err(Error::NotFiniteType("symmetrizer not positive".into()));
    }
    Ok(num)
}

/// Squared root lengths `(α_i, α_i) ∝ 1/d_i`, minimal integers per component.
fn root_norms(cartan: &Matrix<i64>, d: &[i64]) -> Vec<i64> {
    let mut out = vec![0; d.len()];
    for comp in components(cartan) {
        let l = comp.iter().fold(1i64, |acc, &i| acc.lcm(&d[i]));
        for &i in &comp {
            out[i] = l / d[i];
        }
    }
    out
}

/// Closure enumeration by height using root strings: if `β − pα_i, …, β` is
/// the `α_i`-string below `β`, then `β + α_i` is a root iff `p − ⟨β, α_i^∨⟩ > 0`.
fn enumerate_positive_roots(cartan: &Matrix<i64>) -> Vec<RootVector> {
    let n = cartan.nrows();
    let mut known: HashSet<Vec<i64>> = HashSet::new();
    let mut all: Vec<Vec<i64>> = Vec::new();
    let mut layer: BTreeSet<Vec<i64>> = (0..n).map(|i| RootVector::simple(i, n).0).collect();
    while !layer.is_empty() {
        for r in &layer {
            known.insert(r.clone());
            all.push(r.clone());
        }
        let mut next = BTreeSet::new();
        for beta in &layer {
            for i in 0..n {
                let mut p = 0;
                loop {
                    let mut down = beta.clone();
                    down[i] -= p + 1;
                    if known.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let pair: i64 = (0..n).map(|j| beta[j] * cartan.get(j, i)).sum();
                if p - pair > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if !known.contains(&up) {
                        next.insert(up);
                    }
                }
            }
        }
        layer = next;
    }
    let mut roots: Vec<RootVector> = all.into_iter().map(RootVector).collect();
    roots.sort_by(root_order);
    roots
}
