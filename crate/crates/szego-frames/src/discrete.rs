//! Discrete root-of-unity norms and the dilated-norm inequalities.
//!
//! `‖f‖_k` is the root mean square of `|f|` over the `k`-th roots of
//! unity. At those points `z^m = z^{m mod k}`, so Taylor coefficients can
//! be folded modulo `k` first; by unitarity of the size-`k` DFT the norm
//! is then just the ℓ² norm of the folded coefficients. Folding is the
//! production path; direct evaluation at the roots is kept as a
//! cross-check oracle.
//!
//! For polynomials of degree below `k` the norm coincides with the H²
//! norm exactly; dilations `σ_r` obey
//! `‖σ_r f‖_k ≤ ‖f‖_{H²}/(1 − r^{2k})^{1/2}`, and with the per-ring radii
//! `r = 1 − 1/k` the sup over `k` is squeezed between `‖f‖_{H²}` and
//! `(1 − e^{−2})^{−1/2}·‖f‖_{H²}`.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::ring_radius;
use crate::hardy::HardyFunction;

/// One verified inequality: the measured value, the applicable bound, and
/// the slack between them.
///
/// `margin` is oriented so that a nonnegative value means the inequality
/// holds: `bound − value` for upper bounds, `value − bound` for lower
/// bounds. `r` records the dilation radius used (1 means none).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscreteNormReport {
    /// Number of sample points (ring size).
    pub k: usize,
    /// Dilation radius used, 1 when no dilation was applied.
    pub r: f64,
    /// The measured discrete norm.
    pub value: f64,
    /// The bound it is compared against.
    pub bound: f64,
    /// Slack of the inequality; nonnegative means it holds.
    pub margin: f64,
}

/// The `k` points `e^{2πij/k}`, `j = 0..k−1`, from the angle formula.
pub fn roots_of_unity(k: usize) -> Result<Vec<Complex64>> {
    if k < 1 {
        return Err(Error::RingCount { rings: k });
    }
    Ok((0..k)
        .map(|j| {
            let angle = TAU * j as f64 / k as f64;
            Complex64::new(angle.cos(), angle.sin())
        })
        .collect())
}

/// Folds Taylor coefficients modulo `k`: `c̃_s = Σ_{m ≡ s (mod k)} c_m`,
/// ascending `m` within each residue class.
fn fold_coefficients(coeffs: &[Complex64], k: usize) -> Vec<Complex64> {
    if coeffs.len() <= k {
        // degree below k: folding is the identity
        return coeffs.to_vec();
    }
    let mut folded = vec![Complex64::new(0.0, 0.0); k];
    for (m, c) in coeffs.iter().enumerate() {
        folded[m % k] += c;
    }
    folded
}

/// The discrete norm `‖f‖_k = ((1/k)·Σ_j |f(ω_k^j)|²)^{1/2}`, computed
/// exactly (up to rounding) as the ℓ² norm of the coefficients folded
/// modulo `k`.
pub fn discrete_norm(f: &HardyFunction, k: usize) -> Result<f64> {
    if k < 1 {
        return Err(Error::RingCount { rings: k });
    }
    if f.coeffs().len() <= k {
        return Ok(f.h2_norm());
    }
    let folded = fold_coefficients(f.coeffs(), k);
    Ok(folded.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt())
}

/// Values `f(ω_k^j)` for `j = 0..k−1` via folding followed by a size-`k`
/// transform with a fixed summation order.
///
/// This is the transform route; Horner evaluation at each root is the
/// independent cross-check used in tests.
pub fn evaluate_at_roots(f: &HardyFunction, k: usize) -> Result<Vec<Complex64>> {
    let twiddles = roots_of_unity(k)?;
    let folded = fold_coefficients(f.coeffs(), k);
    Ok((0..k)
        .map(|l| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (s, c) in folded.iter().enumerate() {
                acc += c * twiddles[(l * s) % k];
            }
            acc
        })
        .collect())
}

/// Checks the exactness identity `‖P‖_k = ‖P‖_{H²}` for polynomials of
/// degree below `k`.
///
/// For degree ≥ k the identity genuinely fails (coefficients alias), so
/// such inputs are rejected rather than reported.
pub fn verify_exactness(p: &HardyFunction, k: usize) -> Result<DiscreteNormReport> {
    if k < 1 {
        return Err(Error::RingCount { rings: k });
    }
    let degree = p.degree().unwrap_or(0);
    if degree >= k {
        return Err(Error::DegreeNotBelowRing { degree, k });
    }
    let value = discrete_norm(p, k)?;
    let bound = p.h2_norm();
    Ok(DiscreteNormReport {
        k,
        r: 1.0,
        value,
        bound,
        margin: bound - value,
    })
}

/// Checks the dilation bound `‖σ_r f‖_k ≤ ‖f‖_{H²}/(1 − r^{2k})^{1/2}`.
pub fn verify_dilation_bound(f: &HardyFunction, k: usize, r: f64) -> Result<DiscreteNormReport> {
    if k < 1 {
        return Err(Error::RingCount { rings: k });
    }
    let value = discrete_norm(&f.dilate(r)?, k)?;
    let bound = f.h2_norm() / (1.0 - r.powi(2 * k as i32)).sqrt();
    Ok(DiscreteNormReport {
        k,
        r,
        value,
        bound,
        margin: bound - value,
    })
}

/// `max_{1 ≤ k ≤ max_rings} ‖σ_{1−1/k} f‖_k` together with the ring
/// attaining it.
///
/// The `k = 1` term degenerates: radius `1 − 1/1 = 0` turns the dilation
/// into evaluation at the origin, so that term is `|f(0)|`.
pub fn sup_dilated_norm_argmax(f: &HardyFunction, max_rings: usize) -> Result<(usize, f64)> {
    if max_rings < 1 {
        return Err(Error::RingCount { rings: max_rings });
    }
    let mut best_k = 1;
    let mut best = f.coeffs().first().map_or(0.0, |c| c.norm());
    for k in 2..=max_rings {
        let value = discrete_norm(&f.dilate(ring_radius(k))?, k)?;
        if value > best {
            best = value;
            best_k = k;
        }
    }
    Ok((best_k, best))
}

/// `max_{1 ≤ k ≤ max_rings} ‖σ_{1−1/k} f‖_k`; see
/// [`sup_dilated_norm_argmax`] for the `k = 1` convention.
pub fn sup_dilated_norm(f: &HardyFunction, max_rings: usize) -> Result<f64> {
    sup_dilated_norm_argmax(f, max_rings).map(|(_, v)| v)
}

/// Upper constant of the two-sided sup bracket: `(1 − e^{−2})^{−1/2}`.
pub fn sup_bracket_upper_constant() -> f64 {
    ((1.0 - (-2.0f64).exp()).sqrt()).recip()
}

/// Two-sided check of the sup bracket
/// `(1−1/K)^{deg f}·‖f‖ ≤ sup_k ‖σ_{1−1/k} f‖_k ≤ (1−e^{−2})^{−1/2}·‖f‖`
/// over the finite range `k ≤ max_rings`.
///
/// Returns `(upper, lower)` reports; both margins are oriented so that
/// nonnegative means the inequality holds. Requires
/// `max_rings > degree(f)` so the finite sup already certifies the lower
/// bound through the exactness identity.
pub fn verify_sup_bracket(
    f: &HardyFunction,
    max_rings: usize,
) -> Result<(DiscreteNormReport, DiscreteNormReport)> {
    if max_rings < 1 {
        return Err(Error::RingCount { rings: max_rings });
    }
    let degree = f.degree().unwrap_or(0);
    if max_rings <= degree {
        return Err(Error::RingsNotAboveDegree {
            rings: max_rings,
            degree,
        });
    }
    let norm = f.h2_norm();
    let (k_at_max, sup) = sup_dilated_norm_argmax(f, max_rings)?;

    let upper_bound = sup_bracket_upper_constant() * norm;
    let upper = DiscreteNormReport {
        k: k_at_max,
        r: ring_radius(k_at_max),
        value: sup,
        bound: upper_bound,
        margin: upper_bound - sup,
    };

    let lower_bound = ring_radius(max_rings).powi(degree as i32) * norm;
    let lower = DiscreteNormReport {
        k: max_rings,
        r: ring_radius(max_rings),
        value: sup,
        bound: lower_bound,
        margin: sup - lower_bound,
    };

    Ok((upper, lower))
}
