//! The discrete root-of-unity norms and their three key inequalities:
//! exactness below the ring size, the dilation bound, and the two-sided
//! sup bracket that squeezes the H² norm.
//!
//! ```bash
//! cargo run --example discrete_norm_checks
//! ```

use szego_frames::{
    discrete_norm, sup_bracket_upper_constant, verify_dilation_bound, verify_exactness,
    verify_sup_bracket, HardyFunction, Lcg64,
};

fn main() {
    let mut rng = Lcg64::new(42);

    // sampling on k roots of unity is unitary for degree < k: the
    // discrete norm reproduces the coefficient norm exactly
    println!("exactness ‖P‖_k = ‖P‖ for degree < k:");
    for &(degree, k) in &[(3usize, 4usize), (7, 8), (127, 128), (500, 1024)] {
        let p = rng.polynomial(degree);
        let report = verify_exactness(&p, k).unwrap();
        println!(
            "  degree {degree:>3}, k = {k:>4}: ‖P‖_k = {:.12}, ‖P‖ = {:.12}, margin {:+.2e}",
            report.value, report.bound, report.margin
        );
    }

    // above the ring size coefficients alias modulo k: z^k looks like the
    // constant 1 on the ring, and the identity genuinely fails
    let aliased = HardyFunction::monomial(8);
    println!(
        "\naliasing: ‖z^8‖_8 = {} (degree not below k, so exactness does not apply: {})",
        discrete_norm(&aliased, 8).unwrap(),
        verify_exactness(&aliased, 8).unwrap_err()
    );

    // dilation bound ‖σ_r f‖_k ≤ ‖f‖/(1 − r^{2k})^{1/2}
    println!("\ndilation bound margins on random inputs:");
    for trial in 0..5 {
        let degree = rng.next_range(0, 64);
        let f = rng.polynomial(degree);
        let k = rng.next_range(1, 32);
        let r = 0.01 + 0.98 * rng.next_f64();
        let report = verify_dilation_bound(&f, k, r).unwrap();
        println!(
            "  trial {trial}: degree {degree:>2}, k = {k:>2}, r = {r:.3}: \
             value {:.6} ≤ bound {:.6} (margin {:+.3e})",
            report.value, report.bound, report.margin
        );
    }

    // with the per-ring radii 1 − 1/k the sup of dilated norms is pinched
    // between ‖f‖ and (1 − e^{−2})^{−1/2}·‖f‖ ≈ 1.0754·‖f‖
    println!(
        "\nsup bracket (upper constant {:.7}):",
        sup_bracket_upper_constant()
    );
    for trial in 0..5 {
        let degree = rng.next_range(0, 16);
        let f = rng.polynomial(degree);
        let (upper, lower) = verify_sup_bracket(&f, 1600).unwrap();
        println!(
            "  trial {trial}: degree {degree:>2}: sup = {:.6}·‖f‖ \
             (upper margin {:+.3e}, lower margin {:+.3e})",
            upper.value / f.h2_norm(),
            upper.margin,
            lower.margin
        );
    }
}
