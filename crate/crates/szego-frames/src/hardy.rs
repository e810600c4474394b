//! Hardy-space functions as truncated power series, with the inner
//! product, dilation, and Szegő kernel elements built on top of them.
//!
//! A function is stored as its Taylor coefficients `c_0, …, c_M` and all
//! infinite-dimensional statements are handled through explicit geometric
//! tail bounds. The inner product is conjugate-linear in the second
//! argument, so `h2_inner(f, kernel) = f(λ)` holds literally.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A point of the open unit disk.
///
/// The constructor enforces `|z| < 1`, so kernel denominators built from a
/// `DiskPoint` can never vanish on the closed disk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskPoint(Complex64);

impl DiskPoint {
    /// Wraps `z`, rejecting non-finite values and `|z| ≥ 1`.
    pub fn new(z: Complex64) -> Result<Self> {
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(Error::NonFinite { what: "disk point" });
        }
        let modulus = z.norm();
        if modulus >= 1.0 {
            return Err(Error::OutsideDisk { modulus });
        }
        Ok(DiskPoint(z))
    }

    /// The wrapped complex value.
    pub fn value(self) -> Complex64 {
        self.0
    }

    /// `|z|`, strictly below 1.
    pub fn modulus(self) -> f64 {
        self.0.norm()
    }
}

/// Truncated power-series element of H²: `f(z) = Σ c_m z^m`, `m ≤ M`.
///
/// Trailing zero coefficients are permitted; the degree is the largest
/// index with a nonzero coefficient.
#[derive(Debug, Clone, PartialEq)]
pub struct HardyFunction {
    coeffs: Vec<Complex64>,
}

impl HardyFunction {
    /// Builds a function from Taylor coefficients, rejecting non-finite
    /// entries.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs
            .iter()
            .any(|c| !c.re.is_finite() || !c.im.is_finite())
        {
            return Err(Error::NonFinite {
                what: "Taylor coefficients",
            });
        }
        Ok(HardyFunction { coeffs })
    }

    /// Builds a function from real coefficients.
    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub(crate) fn from_raw(coeffs: Vec<Complex64>) -> Self {
        debug_assert!(coeffs.iter().all(|c| c.re.is_finite() && c.im.is_finite()));
        HardyFunction { coeffs }
    }

    /// The zero function, stored with a single zero coefficient.
    pub fn zero() -> Self {
        HardyFunction {
            coeffs: vec![Complex64::new(0.0, 0.0)],
        }
    }

    /// The constant function `z ↦ c`.
    pub fn constant(c: Complex64) -> Result<Self> {
        Self::new(vec![c])
    }

    /// The monomial `z ↦ z^m`.
    pub fn monomial(m: usize) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); m + 1];
        coeffs[m] = Complex64::new(1.0, 0.0);
        HardyFunction { coeffs }
    }

    /// Stored coefficients, including trailing zeros.
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Largest index with a nonzero coefficient, or `None` for the zero
    /// function.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| c.re != 0.0 || c.im != 0.0)
    }

    /// `true` when every coefficient is zero.
    pub fn is_zero(&self) -> bool {
        self.degree().is_none()
    }

    /// Evaluates the truncated series at `z` on the closed unit disk.
    ///
    /// Rejects non-finite `z` and `|z| > 1`; root-of-unity sampling on the
    /// boundary is the reason the closed disk is allowed.
    pub fn evaluate(&self, z: Complex64) -> Result<Complex64> {
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(Error::NonFinite {
                what: "evaluation point",
            });
        }
        let modulus = z.norm();
        if modulus > 1.0 + 1e-12 {
            return Err(Error::OutsideClosedDisk { modulus });
        }
        Ok(self.eval(z))
    }

    /// Horner evaluation, highest coefficient first. Deterministic: one
    /// fixed multiply-add chain, no reordering.
    pub(crate) fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    /// The H² inner product `Σ c_m(f)·conj(c_m(g))`, conjugate-linear in
    /// `g`; the shorter coefficient array is zero-extended.
    pub fn h2_inner(&self, g: &HardyFunction) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (a, b) in self.coeffs.iter().zip(g.coeffs.iter()) {
            acc += a * b.conj();
        }
        acc
    }

    /// The H² norm `(Σ |c_m|²)^{1/2}`.
    pub fn h2_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// The dilation `σ_r f(z) = f(rz)`: coefficient-wise `c_m ↦ c_m·r^m`.
    ///
    /// Requires `0 < r < 1`.
    pub fn dilate(&self, r: f64) -> Result<HardyFunction> {
        if !(r > 0.0 && r < 1.0) {
            return Err(Error::DilationRadius { radius: r });
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(m, c)| c * r.powi(m as i32))
            .collect();
        Ok(HardyFunction::from_raw(coeffs))
    }
}

/// The Szegő kernel `K(z, λ) = 1/(1 − λ̄·z)` evaluated pointwise.
///
/// `|z| ≤ 1` and `|λ| < 1` keep the denominator away from zero.
pub fn szego_kernel_value(z: Complex64, lambda: DiskPoint) -> Result<Complex64> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::NonFinite {
            what: "kernel evaluation point",
        });
    }
    let modulus = z.norm();
    if modulus > 1.0 + 1e-12 {
        return Err(Error::OutsideClosedDisk { modulus });
    }
    Ok((Complex64::new(1.0, 0.0) - lambda.value().conj() * z).inv())
}

/// Degree-`max_degree` Taylor truncation of the kernel `K(·, λ)`:
/// coefficients `conj(λ)^m` for `m = 0..=max_degree`.
///
/// Evaluations agree with [`szego_kernel_value`] to within the geometric
/// tail `|λ|^{M+1}/(1 − |λ|)`.
pub fn kernel_function(lambda: DiskPoint, max_degree: usize) -> HardyFunction {
    let base = lambda.value().conj();
    let mut coeffs = Vec::with_capacity(max_degree + 1);
    let mut power = Complex64::new(1.0, 0.0);
    for _ in 0..=max_degree {
        coeffs.push(power);
        power *= base;
    }
    HardyFunction::from_raw(coeffs)
}

/// The normalized kernel element `(1 − |λ|²)^{1/2}·K(·, λ)` truncated at
/// degree `max_degree`; its H² norm tends to 1 as the truncation grows.
pub fn normalized_kernel_function(lambda: DiskPoint, max_degree: usize) -> HardyFunction {
    let weight = (1.0 - lambda.value().norm_sqr()).sqrt();
    let mut f = kernel_function(lambda, max_degree);
    for c in &mut f.coeffs {
        *c *= weight;
    }
    f
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn real_fn(coeffs: &[f64]) -> HardyFunction {
        HardyFunction::from_real(coeffs).unwrap()
    }

    #[test]
    fn evaluate_constant_ignores_point() {
        let f = real_fn(&[1.0, 0.0, 0.0]);
        assert_eq!(f.evaluate(c(0.3, -0.4)).unwrap(), c(1.0, 0.0));
        assert_eq!(f.evaluate(c(0.0, 0.0)).unwrap(), c(1.0, 0.0));
    }

    #[test]
    fn evaluate_identity_monomial() {
        let f = real_fn(&[0.0, 1.0]);
        assert_eq!(f.evaluate(c(0.5, 0.0)).unwrap(), c(0.5, 0.0));
    }

    #[test]
    fn evaluate_two_terms_at_i() {
        // f(z) = 1 + z at z = i
        let f = real_fn(&[1.0, 1.0]);
        assert_eq!(f.evaluate(c(0.0, 1.0)).unwrap(), c(1.0, 1.0));
    }

    #[test]
    fn evaluate_rejects_non_finite() {
        let f = real_fn(&[1.0]);
        assert!(f.evaluate(c(f64::NAN, 0.0)).is_err());
        assert!(f.evaluate(c(0.0, f64::INFINITY)).is_err());
    }

    #[test]
    fn evaluate_rejects_points_outside_closed_disk() {
        let f = real_fn(&[1.0]);
        assert!(f.evaluate(c(1.5, 0.0)).is_err());
        // boundary is allowed
        assert!(f.evaluate(c(0.0, 1.0)).is_ok());
    }

    #[test]
    fn inner_product_monomials() {
        let z1 = real_fn(&[0.0, 1.0]);
        let one = real_fn(&[1.0, 0.0]);
        assert_eq!(z1.h2_inner(&z1), c(1.0, 0.0));
        assert_eq!(z1.h2_inner(&one), c(0.0, 0.0));
    }

    #[test]
    fn inner_product_hand_sum() {
        // [1,2]·conj([3,4]) = 3 + 8 = 11
        let f = real_fn(&[1.0, 2.0]);
        let g = real_fn(&[3.0, 4.0]);
        assert_eq!(f.h2_inner(&g), c(11.0, 0.0));
    }

    #[test]
    fn norm_zero_and_hand_values() {
        assert_eq!(HardyFunction::zero().h2_norm(), 0.0);
        assert_eq!(real_fn(&[0.0, 0.0, 0.0]).h2_norm(), 0.0);
        assert_eq!(real_fn(&[3.0, 4.0]).h2_norm(), 5.0);
        assert_eq!(real_fn(&[1.0, 1.0, 1.0, 1.0]).h2_norm(), 2.0);
    }

    #[test]
    fn dilate_fixes_constants() {
        let f = real_fn(&[1.0]);
        assert_eq!(f.dilate(0.5).unwrap().coeffs(), &[c(1.0, 0.0)]);
    }

    #[test]
    fn dilate_scales_monomial() {
        let f = real_fn(&[0.0, 1.0]);
        assert_eq!(f.dilate(0.5).unwrap().coeffs(), &[c(0.0, 0.0), c(0.5, 0.0)]);
    }

    #[test]
    fn dilate_geometric_coefficients() {
        // [1, 2, 4] with r = 1/2 gives c_m·r^m = [1, 1, 1]
        let f = real_fn(&[1.0, 2.0, 4.0]);
        let d = f.dilate(0.5).unwrap();
        assert_eq!(d.coeffs(), &[c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)]);
    }

    #[test]
    fn dilate_rejects_bad_radius() {
        let f = real_fn(&[1.0]);
        for r in [0.0, 1.0, -0.5, 1.5, f64::NAN] {
            assert!(f.dilate(r).is_err(), "radius {r} should be rejected");
        }
    }

    #[test]
    fn kernel_value_at_origin_is_one() {
        let lambda = DiskPoint::new(c(0.7, 0.0)).unwrap();
        assert_eq!(
            szego_kernel_value(c(0.0, 0.0), lambda).unwrap(),
            c(1.0, 0.0)
        );
    }

    #[test]
    fn kernel_value_hand_evaluations() {
        let lambda = DiskPoint::new(c(0.5, 0.0)).unwrap();
        let v = szego_kernel_value(c(0.5, 0.0), lambda).unwrap();
        assert!((v - c(4.0 / 3.0, 0.0)).norm() < 1e-15);

        // λ = 0.5·e^{iπ} = −0.5 at z = 1: 1/(1 + 0.5) = 2/3
        let lambda = DiskPoint::new(c(-0.5, 0.0)).unwrap();
        let v = szego_kernel_value(c(1.0, 0.0), lambda).unwrap();
        assert!((v - c(2.0 / 3.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn kernel_function_at_origin_is_constant_one() {
        let lambda = DiskPoint::new(c(0.0, 0.0)).unwrap();
        let f = kernel_function(lambda, 3);
        assert_eq!(
            f.coeffs(),
            &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]
        );
    }

    #[test]
    fn kernel_function_geometric_coefficients() {
        let lambda = DiskPoint::new(c(0.5, 0.0)).unwrap();
        let f = kernel_function(lambda, 2);
        assert_eq!(f.coeffs(), &[c(1.0, 0.0), c(0.5, 0.0), c(0.25, 0.0)]);

        // λ = 0.5i: coefficient of z is conj(λ) = −0.5i
        let lambda = DiskPoint::new(c(0.0, 0.5)).unwrap();
        let f = kernel_function(lambda, 1);
        assert_eq!(f.coeffs(), &[c(1.0, 0.0), c(0.0, -0.5)]);
    }

    #[test]
    fn normalized_kernel_weight_only_at_degree_zero() {
        let lambda = DiskPoint::new(c(0.5, 0.0)).unwrap();
        let f = normalized_kernel_function(lambda, 0);
        assert_eq!(f.coeffs().len(), 1);
        assert!((f.coeffs()[0].re - 0.75f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn normalized_kernel_norm_tends_to_one() {
        let lambda = DiskPoint::new(c(0.5, 0.0)).unwrap();
        let f = normalized_kernel_function(lambda, 60);
        // tail of (1−|λ|²)·Σ|λ|^{2m} beyond m=60 is |λ|^{122} ≈ 4e−37
        assert!((f.h2_norm() - 1.0).abs() < 1e-14);

        let lambda0 = DiskPoint::new(c(0.0, 0.0)).unwrap();
        let f0 = normalized_kernel_function(lambda0, 4);
        assert_eq!(f0.coeffs()[0], c(1.0, 0.0));
        assert_eq!(f0.h2_norm(), 1.0);
    }

    #[test]
    fn kernel_truncation_tail_bound() {
        let lam = c(0.6, 0.3);
        let lambda = DiskPoint::new(lam).unwrap();
        for max_degree in [4usize, 16, 48] {
            let trunc = kernel_function(lambda, max_degree);
            for z in [c(1.0, 0.0), c(0.0, -1.0), c(0.3, 0.4)] {
                let exact = szego_kernel_value(z, lambda).unwrap();
                let approx = trunc.evaluate(z).unwrap();
                let tail = lambda.modulus().powi(max_degree as i32 + 1) / (1.0 - lambda.modulus());
                assert!(
                    (exact - approx).norm() <= tail * (1.0 + 1e-12),
                    "tail bound violated at degree {max_degree}"
                );
            }
        }
    }

    #[test]
    fn disk_point_rejects_boundary_and_outside() {
        assert!(DiskPoint::new(c(1.0, 0.0)).is_err());
        assert!(DiskPoint::new(c(0.8, 0.8)).is_err());
        assert!(DiskPoint::new(c(f64::NAN, 0.0)).is_err());
        assert!(DiskPoint::new(c(0.99, 0.0)).is_ok());
    }

    #[test]
    fn new_rejects_non_finite_coefficients() {
        assert!(HardyFunction::new(vec![c(1.0, f64::NAN)]).is_err());
        assert!(HardyFunction::new(vec![c(f64::INFINITY, 0.0)]).is_err());
    }

    #[test]
    fn degree_ignores_trailing_zeros() {
        assert_eq!(real_fn(&[1.0, 2.0, 0.0, 0.0]).degree(), Some(1));
        assert_eq!(HardyFunction::zero().degree(), None);
        assert_eq!(HardyFunction::monomial(5).degree(), Some(5));
    }

    proptest! {
        #[test]
        fn reproducing_property_truncated(
            coeffs in proptest::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 1..12),
            re in -0.7..0.7f64,
            im in -0.7..0.7f64,
        ) {
            prop_assume!(re * re + im * im < 0.98f64 * 0.98);
            let f = HardyFunction::new(
                coeffs.iter().map(|&(a, b)| c(a, b)).collect(),
            ).unwrap();
            let lambda = DiskPoint::new(c(re, im)).unwrap();
            let max_degree = f.coeffs().len();
            let kernel = kernel_function(lambda, max_degree);
            let paired = f.h2_inner(&kernel);
            let direct = f.evaluate(lambda.value()).unwrap();
            let scale = 1.0 + direct.norm();
            prop_assert!((paired - direct).norm() <= 1e-12 * scale);
        }

        #[test]
        fn dilation_contracts_norm(
            coeffs in proptest::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 1..24),
            r in 0.01..0.99f64,
        ) {
            let f = HardyFunction::new(
                coeffs.iter().map(|&(a, b)| c(a, b)).collect(),
            ).unwrap();
            prop_assert!(f.dilate(r).unwrap().h2_norm() <= f.h2_norm() * (1.0 + 1e-15));
        }

        #[test]
        fn dilation_composes(
            coeffs in proptest::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 1..24),
            r in 0.05..0.95f64,
            s in 0.05..0.95f64,
        ) {
            let f = HardyFunction::new(
                coeffs.iter().map(|&(a, b)| c(a, b)).collect(),
            ).unwrap();
            let two_step = f.dilate(r).unwrap().dilate(s).unwrap();
            let one_step = f.dilate(r * s).unwrap();
            for (a, b) in two_step.coeffs().iter().zip(one_step.coeffs()) {
                prop_assert!((a - b).norm() <= 1e-14 * (1.0 + b.norm()));
            }
        }

        #[test]
        fn norm_squared_matches_self_inner(
            coeffs in proptest::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 1..24),
        ) {
            let f = HardyFunction::new(
                coeffs.iter().map(|&(a, b)| c(a, b)).collect(),
            ).unwrap();
            let inner = f.h2_inner(&f);
            let norm2 = f.h2_norm().powi(2);
            prop_assert!((inner.re - norm2).abs() <= 1e-12 * (1.0 + norm2));
            prop_assert!(inner.im.abs() <= 1e-14 * (1.0 + norm2));
        }
    }
}
