//! The Szegő kernel as a truncated power series: evaluation, geometric
//! truncation tails, the reproducing property, and unit-norm
//! normalization.
//!
//! ```bash
//! cargo run --example reproducing_kernel
//! ```

use num_complex::Complex64;
use szego_frames::{
    kernel_function, normalized_kernel_function, szego_kernel_value, DiskPoint, HardyFunction,
};

fn main() {
    let lambda = DiskPoint::new(Complex64::new(0.6, 0.3)).unwrap();

    // truncations converge geometrically to the closed form 1/(1 − λ̄z)
    println!("kernel truncation error at z = 1 (tail bound |λ|^(M+1)/(1−|λ|)):");
    let z = Complex64::new(1.0, 0.0);
    let exact = szego_kernel_value(z, lambda).unwrap();
    for max_degree in [4usize, 8, 16, 32, 64] {
        let truncated = kernel_function(lambda, max_degree).evaluate(z).unwrap();
        let tail = lambda.modulus().powi(max_degree as i32 + 1) / (1.0 - lambda.modulus());
        println!(
            "  M = {max_degree:>2}: |error| = {:.3e}  (bound {:.3e})",
            (exact - truncated).norm(),
            tail
        );
    }

    // pairing any polynomial against the kernel evaluates it: the inner
    // product is conjugate-linear in its second argument, so
    // ⟨f, K_λ⟩ = f(λ) holds literally once the truncation covers deg f
    let f = HardyFunction::new(vec![
        Complex64::new(1.0, -0.5),
        Complex64::new(0.0, 2.0),
        Complex64::new(-0.75, 0.25),
    ])
    .unwrap();
    let kernel = kernel_function(lambda, f.coeffs().len());
    let paired = f.h2_inner(&kernel);
    let direct = f.evaluate(lambda.value()).unwrap();
    println!("\nreproducing property at λ = {}:", lambda.value());
    println!("  ⟨f, K_λ⟩ = {paired}");
    println!("  f(λ)     = {direct}");
    println!("  |difference| = {:.3e}", (paired - direct).norm());

    // the normalization (1 − |λ|²)^{1/2} makes the kernels unit vectors
    println!("\nnormalized kernel norms (→ 1 as the truncation grows):");
    for max_degree in [0usize, 2, 8, 32, 128] {
        let norm = normalized_kernel_function(lambda, max_degree).h2_norm();
        println!("  M = {max_degree:>3}: ‖K̂_λ‖ = {norm:.12}");
    }
}
