//! Midpoint rules with dyadic refinement and Richardson extrapolation.

use crate::scalar::SpectralFloat;

#[derive(Debug, Clone, PartialEq)]
pub struct RichardsonEstimate<F> {
    pub value: F,
    /// Difference between the two highest-order extrapolants.
    pub error_estimate: F,
    /// Raw midpoint values, coarsest first.
    pub levels: Vec<F>,
}

/// Mean of `f` over the torus with the given sides, by the midpoint rule on
/// `n` cells per axis.
pub fn midpoint_mean<F: SpectralFloat>(f: &impl Fn(&[F]) -> F, sides: &[F], n: usize) -> F {
    let d = sides.len();
    let h: Vec<F> = sides.iter().map(|&l| l / F::lit(n as f64)).collect();
    let mut idx = vec![0usize; d];
    let mut x = vec![F::zero(); d];
    let mut total = F::zero();
    let mut count = 0usize;
    'outer: loop {
        for (a, xi) in x.iter_mut().enumerate() {
            *xi = (F::lit(idx[a] as f64) + F::lit(0.5)) * h[a];
        }
        total = total + f(&x);
        count += 1;
        for a in 0..d {
            idx[a] += 1;
            if idx[a] < n {
                continue 'outer;
            }
            idx[a] = 0;
        }
        break;
    }
    total / F::lit(count as f64)
}

/// Eliminates the error terms `h^{p}` for `p` in `exponents` (ascending) from a
/// sequence of values at `h, h/2, h/4, …`.
pub fn richardson<F: SpectralFloat>(levels: &[F], exponents: &[F]) -> RichardsonEstimate<F> {
    assert!(!levels.is_empty());
    let mut table = levels.to_vec();
    let mut prev_best = *table.last().unwrap();
    let mut best = prev_best;
    for &p in exponents.iter().take(levels.len() - 1) {
        let factor = F::lit(2.0).powf(p);
        table = table
            .windows(2)
            .map(|w| (factor * w[1] - w[0]) / (factor - F::one()))
            .collect();
        prev_best = best;
        best = *table.last().unwrap();
    }
    RichardsonEstimate {
        value: best,
        error_estimate: (best - prev_best).abs(),
        levels: levels.to_vec(),
    }
}

/// Error exponents of the midpoint rule for an integrand that is smooth except
/// for `|y|^{-σ}`-type terms of the given orders `e = k − σ`: the expansion
/// carries `h^{e + 2j}` and `h^{2j}`.
pub fn error_exponents<F: SpectralFloat>(singular: &[F], count: usize) -> Vec<F> {
    let mut out: Vec<F> = Vec::new();
    for j in 0..=count {
        let shift = F::lit(2.0 * j as f64);
        out.push(F::lit(2.0) + shift);
        for &e in singular {
            if e > F::zero() {
                out.push(e + shift);
            }
        }
    }
    out.sort_by(|a, b| a.partial_cmp(b).unwrap());
    out.dedup_by(|a, b| (*a - *b).abs() < F::lit(1e-9));
    out.truncate(count);
    out
}

/// Dyadic midpoint means at `n0, 2n0, …, n0·2^{levels−1}` cells per axis, extrapolated.
pub fn dyadic_mean<F: SpectralFloat>(
    f: &impl Fn(&[F]) -> F,
    sides: &[F],
    n0: usize,
    levels: usize,
    singular_exponents: &[F],
) -> RichardsonEstimate<F> {
    let values: Vec<F> = (0..levels).map(|l| midpoint_mean(f, sides, n0 << l)).collect();
    richardson(&values, &error_exponents(singular_exponents, levels - 1))
}

/// Composite Simpson rule on `[a, b]` with an even number of panels.
pub fn simpson<F: SpectralFloat>(f: impl Fn(F) -> F, a: F, b: F, panels: usize) -> F {
    let n = panels.max(2) + panels % 2;
    let h = (b - a) / F::lit(n as f64);
    let mut s = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { F::lit(4.0) } else { F::lit(2.0) };
        s = s + w * f(a + h * F::lit(i as f64));
    }
    s * h / F::lit(3.0)
}
