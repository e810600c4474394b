//! Why the normalized kernels are NOT a classical (Duffin–Schaeffer)
//! frame: the squared pairings Σ |⟨f, K̂_λ⟩|² grow without bound — each
//! ring contributes about 2‖f‖² — so no upper ℓ² frame bound can exist.
//! The mixed-norm spaces exist precisely to tame this growth.
//!
//! ```bash
//! cargo run --example ds_divergence
//! ```

use szego_frames::{ds_frame_divergence, HardyFunction, Lcg64};

fn harmonic_number(n: usize) -> f64 {
    (1..=n).map(|k| 1.0 / k as f64).sum()
}

fn main() {
    // for f ≡ 1 the partial sums have the closed form 2K − H_K
    let one = HardyFunction::from_real(&[1.0]).unwrap();
    let sums = ds_frame_divergence(&one, 1000).unwrap();
    println!("partial sums S_K = Σ_(k≤K) Σ_j |⟨1, K̂⟩|² for the constant:");
    for &rings in &[1usize, 10, 100, 1000] {
        let closed_form = 2.0 * rings as f64 - harmonic_number(rings);
        println!(
            "  K = {rings:>5}: S_K = {:>12.6}  (closed form 2K − H_K = {closed_form:.6})",
            sums[rings - 1]
        );
    }

    // a random polynomial shows the same linear growth: ring increments
    // approach 2‖f‖²
    let mut rng = Lcg64::new(1);
    let f = rng.polynomial(8);
    let norm2 = f.h2_norm().powi(2);
    let sums = ds_frame_divergence(&f, 2048).unwrap();
    println!("\nrandom degree-8 polynomial, ‖f‖² = {norm2:.4}:");
    println!("{:>6} {:>14} {:>18}", "K", "S_K", "S_K/(2K·‖f‖²)");
    for &rings in &[64usize, 256, 1024, 2048] {
        let s = sums[rings - 1];
        println!(
            "{rings:>6} {s:>14.4} {:>18.6}",
            s / (2.0 * rings as f64 * norm2)
        );
    }
    println!(
        "\ndoubling gap S_2048 − S_1024 = {:.2} ≥ 0.5·‖f‖²·1024 = {:.2}: \
         the upper Duffin–Schaeffer bound fails",
        sums[2047] - sums[1023],
        0.5 * norm2 * 1024.0
    );
}
