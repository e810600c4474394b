//! Fixed linear-congruential generator for reproducible test suites.
//!
//! Random polynomials and coefficient families in the CLI and the test
//! suites are drawn from this generator rather than a platform RNG so
//! that any implementation, in any language, reproduces the identical
//! suite from the same seed. The recurrence is fully specified:
//!
//! ```text
//! state ← state · 6364136223846793005 + 1442695040888963407   (mod 2⁶⁴)
//! ```
//!
//! (Knuth's MMIX parameters.) A uniform double in `[0, 1)` is the top 53
//! bits of the new state scaled by 2⁻⁵³; coefficients are drawn from the
//! square `[−1, 1) × [−1, 1)`, real part first.

use num_complex::Complex64;

use crate::frame::MixedCoefficients;
use crate::hardy::HardyFunction;

const MULTIPLIER: u64 = 6364136223846793005;
const INCREMENT: u64 = 1442695040888963407;

/// The documented 64-bit linear-congruential generator.
#[derive(Debug, Clone)]
pub struct Lcg64 {
    state: u64,
}

impl Lcg64 {
    /// Starts the stream at `seed`; the seed itself is never emitted.
    pub fn new(seed: u64) -> Self {
        Lcg64 { state: seed }
    }

    /// Advances the recurrence and returns the new state.
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_mul(MULTIPLIER).wrapping_add(INCREMENT);
        self.state
    }

    /// Uniform double in `[0, 1)`: top 53 bits of the state.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform double in `[−1, 1)`.
    pub fn next_symmetric(&mut self) -> f64 {
        2.0 * self.next_f64() - 1.0
    }

    /// Uniform point of the square `[−1, 1) × [−1, 1)`, real part drawn
    /// first.
    pub fn next_complex(&mut self) -> Complex64 {
        let re = self.next_symmetric();
        let im = self.next_symmetric();
        Complex64::new(re, im)
    }

    /// Random polynomial with `degree + 1` coefficients from the square.
    pub fn polynomial(&mut self, degree: usize) -> HardyFunction {
        let coeffs = (0..=degree).map(|_| self.next_complex()).collect();
        HardyFunction::new(coeffs).expect("LCG output is finite")
    }

    /// Random ring-blocked coefficient family for rings `1..=rings`,
    /// drawn ring-major with `j` ascending.
    pub fn mixed_coefficients(&mut self, rings: usize) -> MixedCoefficients {
        let blocks = (1..=rings)
            .map(|k| (0..k).map(|_| self.next_complex()).collect())
            .collect();
        MixedCoefficients::new(blocks).expect("blocks have ring-major lengths")
    }

    /// Uniform integer in `[lo, hi]` by scaling one double draw.
    pub fn next_range(&mut self, lo: usize, hi: usize) -> usize {
        debug_assert!(lo <= hi);
        let span = (hi - lo + 1) as f64;
        lo + (self.next_f64() * span) as usize
    }
}
