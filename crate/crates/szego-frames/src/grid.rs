//! The ring grid of scaled roots of unity and its indexing.
//!
//! Ring `k` carries the `k`-th roots of unity at radius `1 − 1/k`, so ring
//! 1 is the single point 0. Nodes are enumerated ring-major with `j`
//! ascending, matching the ring-blocked structure of every mixed norm in
//! this crate; the flat enumeration is 1-based.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hardy::DiskPoint;

/// Position `(k, j)` on the grid: ring number `k ≥ 1`, slot `0 ≤ j < k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RingIndex {
    /// Ring number (1-based).
    pub k: usize,
    /// Position on the ring.
    pub j: usize,
}

impl RingIndex {
    /// Validates `k ≥ 1` and `j < k`.
    pub fn new(k: usize, j: usize) -> Result<Self> {
        if k < 1 {
            return Err(Error::RingCount { rings: k });
        }
        if j >= k {
            return Err(Error::RingIndexOutOfRange { k, j });
        }
        Ok(RingIndex { k, j })
    }
}

/// A grid node: its index, the point `λ_{k,j}`, and the kernel
/// normalization weight `(1 − |λ_{k,j}|²)^{1/2}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridNode {
    /// Ring-and-slot index.
    pub index: RingIndex,
    /// The point `(1 − 1/k)·e^{2πij/k}`.
    pub point: DiskPoint,
    /// `(1 − |λ|²)^{1/2}`, of order `1/√k`.
    pub weight: f64,
}

/// Radius of ring `k`: `1 − 1/k`.
pub fn ring_radius(k: usize) -> f64 {
    debug_assert!(k >= 1);
    1.0 - 1.0 / k as f64
}

/// Normalization weight shared by every node of ring `k`, computed in the
/// cancellation-free form `((2 − 1/k)/k)^{1/2}` so that
/// `weight²·k = 2 − 1/k` holds to a few ulps on every ring.
pub fn ring_weight(k: usize) -> f64 {
    debug_assert!(k >= 1);
    let kf = k as f64;
    ((2.0 - 1.0 / kf) / kf).sqrt()
}

/// Builds the node `λ_{k,j} = (1 − 1/k)·e^{2πij/k}`.
///
/// The angle is computed directly as `2πj/k` (not by repeated
/// multiplication) to avoid phase drift on large rings.
pub fn node(k: usize, j: usize) -> Result<GridNode> {
    let index = RingIndex::new(k, j)?;
    let radius = ring_radius(k);
    let angle = TAU * j as f64 / k as f64;
    let point = Complex64::new(radius * angle.cos(), radius * angle.sin());
    Ok(GridNode {
        index,
        // radius < 1 by construction, so this cannot fail
        point: DiskPoint::new(point).expect("ring radius is below 1"),
        weight: ring_weight(k),
    })
}

/// The ring grid truncated after `rings` rings, nodes in ring-major order.
#[derive(Debug, Clone)]
pub struct Grid {
    nodes: Vec<GridNode>,
    rings: usize,
}

impl Grid {
    /// Builds all nodes for `k = 1..=rings`.
    pub fn build(rings: usize) -> Result<Self> {
        if rings < 1 {
            return Err(Error::RingCount { rings });
        }
        let mut nodes = Vec::with_capacity(rings * (rings + 1) / 2);
        for k in 1..=rings {
            for j in 0..k {
                nodes.push(node(k, j)?);
            }
        }
        Ok(Grid { nodes, rings })
    }

    /// Number of rings `K`.
    pub fn rings(&self) -> usize {
        self.rings
    }

    /// Total node count `K(K+1)/2`.
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    /// `true` only for the impossible empty grid; kept for clippy's sake.
    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// All nodes, ring-major, `j` ascending.
    pub fn nodes(&self) -> &[GridNode] {
        &self.nodes
    }

    /// The block of nodes on ring `k`.
    pub fn ring(&self, k: usize) -> Result<&[GridNode]> {
        if k < 1 || k > self.rings {
            return Err(Error::RingCount { rings: k });
        }
        let start = k * (k - 1) / 2;
        Ok(&self.nodes[start..start + k])
    }

    /// Iterates over ring blocks in ascending `k`.
    pub fn iter_rings(&self) -> impl Iterator<Item = &[GridNode]> {
        (1..=self.rings).map(move |k| {
            let start = k * (k - 1) / 2;
            &self.nodes[start..start + k]
        })
    }
}

/// Flat 1-based position of `(k, j)`: `k(k−1)/2 + j + 1`.
pub fn flat_index(k: usize, j: usize) -> Result<usize> {
    let index = RingIndex::new(k, j)?;
    Ok(index.k * (index.k - 1) / 2 + index.j + 1)
}

/// Inverse of [`flat_index`]: recovers `(k, j)` from the 1-based `n`.
pub fn ring_index(n: usize) -> Result<RingIndex> {
    if n < 1 {
        return Err(Error::FlatIndexOutOfRange { index: n });
    }
    // Integer triangular root: largest k with k(k−1)/2 < n.
    let t = n - 1;
    let mut k = ((((8 * t + 1) as f64).sqrt() - 1.0) / 2.0).floor() as usize + 1;
    while k * (k - 1) / 2 > t {
        k -= 1;
    }
    while (k + 1) * k / 2 <= t {
        k += 1;
    }
    RingIndex::new(k, t - k * (k - 1) / 2)
}

/// Partial sum `Σ (1 − |λ_{k,j}|)` over all nodes with `k ≤ rings`,
/// streamed without materializing the grid.
///
/// Each ring contributes `k·(1/k) = 1`, so the value equals `rings` up to
/// rounding — the Blaschke condition fails for this grid.
pub fn blaschke_partial_sum(rings: usize) -> Result<f64> {
    if rings < 1 {
        return Err(Error::RingCount { rings });
    }
    let mut total = 0.0;
    for k in 1..=rings {
        let mut ring_sum = 0.0;
        for j in 0..k {
            let angle = TAU * j as f64 / k as f64;
            let modulus = ring_radius(k) * angle.cos().hypot(angle.sin());
            ring_sum += 1.0 - modulus;
        }
        total += ring_sum;
    }
    Ok(total)
}
