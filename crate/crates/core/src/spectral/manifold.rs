use crate::error::{Error, Result};
use crate::scalar::SpectralFloat;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ModeKind {
    Constant,
    Cos,
    Sin,
}

/// One real Laplace eigenfunction of the flat torus, `√(2/Vol)·cos(2π k·x/L)`
/// or its sine partner (or the constant `1/√Vol` for `k = 0`).
#[derive(Debug, Clone, PartialEq)]
pub struct Mode<F> {
    pub wave: Vec<i64>,
    pub kind: ModeKind,
    pub eigenvalue: F,
}

/// Flat torus `Π ℝ/L_iℤ` with its first `mode_count()` eigenmodes materialized
/// in nondecreasing eigenvalue order.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelManifold<F> {
    sides: Vec<F>,
    modes: Vec<Mode<F>>,
}

impl<F: SpectralFloat> ModelManifold<F> {
    /// Materializes modes `0..=max_mode`.
    pub fn flat_torus(sides: Vec<F>, max_mode: usize) -> Result<Self> {
        if sides.is_empty() {
            return Err(Error::InvalidSpectral("torus needs at least one side".into()));
        }
        if sides.iter().any(|l| !(l.is_finite() && *l > F::zero())) {
            return Err(Error::InvalidSpectral("side lengths must be positive and finite".into()));
        }
        let modes = enumerate_modes(&sides, max_mode + 1);
        Ok(Self { sides, modes })
    }

    /// `ℝ/Lℤ`.
    pub fn circle(length: F, max_mode: usize) -> Result<Self> {
        Self::flat_torus(vec![length], max_mode)
    }

    pub fn dim(&self) -> usize {
        self.sides.len()
    }

    pub fn sides(&self) -> &[F] {
        &self.sides
    }

    pub fn volume(&self) -> F {
        self.sides.iter().fold(F::one(), |acc, &l| acc * l)
    }

    /// Lower Ricci bound; zero for a flat metric.
    pub fn ricci_lower_bound(&self) -> F {
        F::zero()
    }

    pub fn mode_count(&self) -> usize {
        self.modes.len()
    }

    pub fn modes(&self) -> &[Mode<F>] {
        &self.modes
    }

    pub fn mode(&self, j: usize) -> &Mode<F> {
        &self.modes[j]
    }

    pub fn eigenvalue(&self, j: usize) -> F {
        self.modes[j].eigenvalue
    }

    /// Distinct eigenvalues among the materialized modes with their multiplicities.
    /// The last entry may undercount if the materialized range cuts an eigenspace.
    pub fn eigen_enumeration(&self) -> Vec<(F, usize)> {
        let mut out: Vec<(F, usize)> = Vec::new();
        for m in &self.modes {
            match out.last_mut() {
                Some((lam, mult)) if (*lam - m.eigenvalue).abs() <= F::epsilon() * m.eigenvalue * F::lit(16.0) => {
                    *mult += 1
                }
                _ => out.push((m.eigenvalue, 1)),
            }
        }
        out
    }

    pub fn eval_mode(&self, j: usize, x: &[F]) -> F {
        let mode = &self.modes[j];
        let vol = self.volume();
        if mode.kind == ModeKind::Constant {
            return F::one() / vol.sqrt();
        }
        let phase = mode
            .wave
            .iter()
            .zip(x)
            .zip(&self.sides)
            .fold(F::zero(), |acc, ((&k, &xi), &l)| acc + F::two_pi() * F::lit(k as f64) * xi / l);
        let amp = (F::lit(2.0) / vol).sqrt();
        match mode.kind {
            ModeKind::Cos => amp * phase.cos(),
            _ => amp * phase.sin(),
        }
    }

    /// Largest `|k_i|` over the modes `0..=n`.
    pub fn max_wave_number(&self, n: usize) -> i64 {
        self.modes[..=n.min(self.modes.len() - 1)]
            .iter()
            .flat_map(|m| m.wave.iter().map(|k| k.abs()))
            .max()
            .unwrap_or(0)
    }
}

fn eigenvalue<F: SpectralFloat>(k: &[i64], sides: &[F]) -> F {
    k.iter().zip(sides).fold(F::zero(), |acc, (&ki, &l)| {
        let w = F::two_pi() * F::lit(ki as f64) / l;
        acc + w * w
    })
}

/// First nonzero entry positive: one representative of each `±k` pair.
fn is_canonical(k: &[i64]) -> bool {
    k.iter().find(|&&v| v != 0).is_some_and(|&v| v > 0)
}

fn enumerate_modes<F: SpectralFloat>(sides: &[F], count: usize) -> Vec<Mode<F>> {
    let d = sides.len();
    let l_max = sides.iter().copied().fold(F::zero(), F::max);
    let mut radius: i64 = 1;
    loop {
        // any k outside the box has some |k_i| ≥ radius + 1
        let threshold = {
            let w = F::two_pi() * F::lit((radius + 1) as f64) / l_max;
            w * w
        };
        let mut waves: Vec<(F, Vec<i64>)> = Vec::new();
        let mut k = vec![-radius; d];
        loop {
            if is_canonical(&k) {
                let lam = eigenvalue(&k, sides);
                if lam < threshold {
                    waves.push((lam, k.clone()));
                }
            }
            let mut axis = 0;
            while axis < d {
                if k[axis] < radius {
                    k[axis] += 1;
                    break;
                }
                k[axis] = -radius;
                axis += 1;
            }
            if axis == d {
                break;
            }
        }
        if 1 + 2 * waves.len() >= count {
            waves.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then_with(|| a.1.cmp(&b.1)));
            let mut modes = Vec::with_capacity(count);
            modes.push(Mode {
                wave: vec![0; d],
                kind: ModeKind::Constant,
                eigenvalue: F::zero(),
            });
            for (lam, wave) in waves {
                for kind in [ModeKind::Cos, ModeKind::Sin] {
                    modes.push(Mode {
                        wave: wave.clone(),
                        kind,
                        eigenvalue: lam,
                    });
                }
            }
            modes.truncate(count);
            return modes;
        }
        radius *= 2;
    }
}
