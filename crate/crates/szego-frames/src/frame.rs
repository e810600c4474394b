//! Mixed-norm sequence spaces, the kernel analysis map, empirical frame
//! bounds, and the Duffin–Schaeffer failure demonstration.
//!
//! Coefficient families are ring-blocked: block `k` holds the `k` values
//! attached to ring `k` of the grid. Synthesis coefficients live in
//! ℓ¹(ℓ²_k) (sum of per-ring Euclidean norms); analysis values live in
//! the dual ℓ∞(ℓ²_k) (sup of per-ring Euclidean norms). The analysis map
//! pairs a function against the normalized kernels,
//! `y_{k,j} = weight_{k,j}·conj(g(λ_{k,j}))`, and its per-ring norms
//! reduce to dilated root-of-unity norms through the identity
//! `(1 − (1−1/k)²)·k = 2 − 1/k`.

use num_complex::Complex64;

use crate::discrete::{discrete_norm, sup_bracket_upper_constant};
use crate::error::{Error, Result};
use crate::grid::{ring_radius, Grid};
use crate::hardy::HardyFunction;

fn block_norm(block: &[Complex64]) -> f64 {
    block.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
}

fn validate_blocks(blocks: &[Vec<Complex64>]) -> Result<()> {
    for (i, block) in blocks.iter().enumerate() {
        let k = i + 1;
        if block.len() != k {
            return Err(Error::BlockLength {
                k,
                len: block.len(),
            });
        }
        if block.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::NonFinite {
                what: "ring block entries",
            });
        }
    }
    Ok(())
}

/// Ring-blocked synthesis coefficients `x = {x_{k,j}}`, the carrier of
/// the ℓ¹(ℓ²_k) norm.
#[derive(Debug, Clone, PartialEq)]
pub struct MixedCoefficients {
    blocks: Vec<Vec<Complex64>>,
}

impl MixedCoefficients {
    /// Wraps ring-major blocks; block `k` (0-based slot `k−1`) must have
    /// length exactly `k` and finite entries.
    pub fn new(blocks: Vec<Vec<Complex64>>) -> Result<Self> {
        validate_blocks(&blocks)?;
        Ok(MixedCoefficients { blocks })
    }

    /// The zero family on rings `1..=rings`.
    pub fn zeros(rings: usize) -> Self {
        MixedCoefficients {
            blocks: (1..=rings)
                .map(|k| vec![Complex64::new(0.0, 0.0); k])
                .collect(),
        }
    }

    /// A single entry `value` at `(k, j)`, zeros elsewhere.
    pub fn one_hot(rings: usize, k: usize, j: usize, value: Complex64) -> Result<Self> {
        if k < 1 || k > rings {
            return Err(Error::RingCount { rings: k });
        }
        if j >= k {
            return Err(Error::RingIndexOutOfRange { k, j });
        }
        let mut x = Self::zeros(rings);
        x.blocks[k - 1][j] = value;
        Ok(x)
    }

    /// Ring count `K`.
    pub fn rings(&self) -> usize {
        self.blocks.len()
    }

    /// The block of ring `k` (1-based).
    pub fn block(&self, k: usize) -> Result<&[Complex64]> {
        if k < 1 || k > self.blocks.len() {
            return Err(Error::RingCount { rings: k });
        }
        Ok(&self.blocks[k - 1])
    }

    /// Blocks in ascending ring order.
    pub fn blocks(&self) -> impl Iterator<Item = &[Complex64]> {
        self.blocks.iter().map(|b| b.as_slice())
    }

    /// Euclidean norm of the ring-`k` block.
    pub fn block_norm(&self, k: usize) -> Result<f64> {
        self.block(k).map(block_norm)
    }

    /// The mixed norm `‖x‖_{1,2} = Σ_k (Σ_j |x_{k,j}|²)^{1/2}`.
    pub fn norm_1_2(&self) -> f64 {
        self.blocks.iter().map(|b| block_norm(b)).sum()
    }

    /// Rings whose block is not identically zero, ascending.
    pub fn active_rings(&self) -> Vec<usize> {
        self.blocks
            .iter()
            .enumerate()
            .filter(|(_, b)| b.iter().any(|v| v.re != 0.0 || v.im != 0.0))
            .map(|(i, _)| i + 1)
            .collect()
    }
}

/// Ring-blocked analysis values `y = {⟨K̂_{λ_n}, g⟩}`, the carrier of the
/// ℓ∞(ℓ²_k) norm.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisSequence {
    blocks: Vec<Vec<Complex64>>,
}

impl AnalysisSequence {
    /// Wraps ring-major blocks with the same shape rules as
    /// [`MixedCoefficients::new`].
    pub fn new(blocks: Vec<Vec<Complex64>>) -> Result<Self> {
        validate_blocks(&blocks)?;
        Ok(AnalysisSequence { blocks })
    }

    /// Ring count `K`.
    pub fn rings(&self) -> usize {
        self.blocks.len()
    }

    /// The block of ring `k` (1-based).
    pub fn block(&self, k: usize) -> Result<&[Complex64]> {
        if k < 1 || k > self.blocks.len() {
            return Err(Error::RingCount { rings: k });
        }
        Ok(&self.blocks[k - 1])
    }

    /// Blocks in ascending ring order.
    pub fn blocks(&self) -> impl Iterator<Item = &[Complex64]> {
        self.blocks.iter().map(|b| b.as_slice())
    }

    /// Euclidean norm of the ring-`k` block.
    pub fn block_norm(&self, k: usize) -> Result<f64> {
        self.block(k).map(block_norm)
    }

    /// The mixed norm `‖y‖_{∞,2} = max_k (Σ_j |y_{k,j}|²)^{1/2}`.
    pub fn norm_inf_2(&self) -> f64 {
        self.blocks
            .iter()
            .map(|b| block_norm(b))
            .fold(0.0, f64::max)
    }
}

/// Empirical two-sided frame bounds observed on a sample set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameBoundEstimate {
    /// Minimum observed ratio `‖analysis(g)‖_{∞,2}/‖g‖_{H²}`.
    pub lower: f64,
    /// Maximum observed ratio.
    pub upper: f64,
    /// Number of samples the extrema were taken over.
    pub sample_count: usize,
    /// Ring truncation the analysis map was evaluated on.
    pub rings: usize,
}

/// Upper constant for the analysis map on this grid:
/// `√2·(1 − e^{−2})^{−1/2}`, combining the sup bracket with the per-ring
/// block factor `(2 − 1/k)^{1/2} < √2`.
pub fn analysis_upper_constant() -> f64 {
    2.0f64.sqrt() * sup_bracket_upper_constant()
}

/// Pairs `g` against every normalized kernel on the grid:
/// `y_{k,j} = weight_{k,j}·conj(g(λ_{k,j}))`.
///
/// For a finite-degree `g` the pairing is exact — no kernel truncation is
/// involved because the kernel series is summed by evaluation.
pub fn analysis_map(g: &HardyFunction, grid: &Grid) -> AnalysisSequence {
    let blocks = grid
        .iter_rings()
        .map(|ring| {
            ring.iter()
                .map(|node| node.weight * g.eval(node.point.value()).conj())
                .collect()
        })
        .collect();
    AnalysisSequence { blocks }
}

/// The bilinear duality pairing `⟨x, y⟩ = Σ_k Σ_j x_{k,j}·y_{k,j}`
/// (no conjugation), summed ring-major.
///
/// Satisfies `|⟨x,y⟩| ≤ ‖x‖_{1,2}·‖y‖_{∞,2}`.
pub fn duality_pair(x: &MixedCoefficients, y: &AnalysisSequence) -> Result<Complex64> {
    if x.rings() != y.rings() {
        return Err(Error::RingCountMismatch {
            left: x.rings(),
            right: y.rings(),
        });
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for (xb, yb) in x.blocks().zip(y.blocks()) {
        for (a, b) in xb.iter().zip(yb) {
            acc += a * b;
        }
    }
    Ok(acc)
}

/// The synthesis partial sum `Σ_{k,j} x_{k,j}·K̂_{λ_{k,j}}` truncated at
/// Taylor degree `truncation`, accumulated ring-major.
pub fn synthesis_partial_sum(
    x: &MixedCoefficients,
    grid: &Grid,
    truncation: usize,
) -> Result<HardyFunction> {
    if grid.rings() < x.rings() {
        return Err(Error::TooSmall {
            what: "grid rings for synthesis",
            needed: x.rings(),
            got: grid.rings(),
        });
    }
    let mut coeffs = vec![Complex64::new(0.0, 0.0); truncation + 1];
    for (block, ring) in x.blocks().zip(grid.iter_rings()) {
        for (value, node) in block.iter().zip(ring) {
            if value.re == 0.0 && value.im == 0.0 {
                continue;
            }
            let scale = value * node.weight;
            let base = node.point.value().conj();
            let mut power = Complex64::new(1.0, 0.0);
            for c in coeffs.iter_mut() {
                *c += scale * power;
                power *= base;
            }
        }
    }
    Ok(HardyFunction::from_raw(coeffs))
}

/// Min/max of `‖analysis(g)‖_{∞,2}/‖g‖_{H²}` over the samples.
///
/// Requires at least one sample, no zero samples, and a grid whose ring
/// count exceeds every sample's degree.
pub fn frame_bounds_empirical(
    samples: &[HardyFunction],
    grid: &Grid,
) -> Result<FrameBoundEstimate> {
    if samples.is_empty() {
        return Err(Error::EmptySamples);
    }
    let mut lower = f64::INFINITY;
    let mut upper = 0.0f64;
    for g in samples {
        let degree = g.degree().ok_or(Error::ZeroFunction)?;
        if grid.rings() <= degree {
            return Err(Error::RingsNotAboveDegree {
                rings: grid.rings(),
                degree,
            });
        }
        let ratio = analysis_map(g, grid).norm_inf_2() / g.h2_norm();
        lower = lower.min(ratio);
        upper = upper.max(ratio);
    }
    Ok(FrameBoundEstimate {
        lower,
        upper,
        sample_count: samples.len(),
        rings: grid.rings(),
    })
}

/// Partial sums `S_κ = Σ_{k ≤ κ} Σ_j |⟨f, K̂_{λ_{k,j}}⟩|²` for
/// `κ = 1..=rings` — the quantity a Duffin–Schaeffer frame would have to
/// keep bounded, and which here grows without bound.
///
/// Ring `k` contributes `(2 − 1/k)·‖σ_{1−1/k} f‖_k²` (for `k = 1`,
/// `|f(0)|²`), which is the per-node sum in closed ring form; tests check
/// it against the literal node-by-node evaluation.
pub fn ds_frame_divergence(f: &HardyFunction, rings: usize) -> Result<Vec<f64>> {
    if f.is_zero() {
        return Err(Error::ZeroFunction);
    }
    if rings < 1 {
        return Err(Error::RingCount { rings });
    }
    let mut sums = Vec::with_capacity(rings);
    let mut total = 0.0;
    for k in 1..=rings {
        let ring_norm = if k == 1 {
            f.coeffs().first().map_or(0.0, |c| c.norm())
        } else {
            discrete_norm(&f.dilate(ring_radius(k))?, k)?
        };
        total += (2.0 - 1.0 / k as f64) * ring_norm * ring_norm;
        sums.push(total);
    }
    Ok(sums)
}
