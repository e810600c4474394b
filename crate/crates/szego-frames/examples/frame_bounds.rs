//! Empirical frame bounds for the normalized kernel family: the analysis
//! map sends a function to its ring-blocked pairings, and the sup of
//! per-ring ℓ² norms stays two-sidedly comparable to the H² norm.
//!
//! ```bash
//! cargo run --example frame_bounds
//! ```

use szego_frames::{
    analysis_map, analysis_upper_constant, frame_bounds_empirical, Grid, HardyFunction, Lcg64,
};

fn main() {
    // per-ring block norms for one function: the profile flattens out
    // near √2·‖σ g‖ and never crosses the analytic ceiling
    let mut rng = Lcg64::new(7);
    let g = rng.polynomial(6);
    let grid = Grid::build(64).unwrap();
    let y = analysis_map(&g, &grid);
    println!(
        "analysis block norms for a degree-6 sample (‖g‖ = {:.4}):",
        g.h2_norm()
    );
    for k in [1usize, 2, 4, 8, 16, 32, 64] {
        println!("  ring {k:>2}: ‖y_k‖₂ = {:.6}", y.block_norm(k).unwrap());
    }
    println!("  ‖y‖_∞,2 = {:.6}\n", y.norm_inf_2());

    // min/max ratios over a random sample set, for growing truncations;
    // the envelope [ (1−1/K)^degree, √2·(1−e^{−2})^{−1/2} ] is analytic
    let degree = 12usize;
    let samples: Vec<HardyFunction> = {
        let mut rng = Lcg64::new(2025);
        (0..100).map(|_| rng.polynomial(degree)).collect()
    };
    println!(
        "empirical frame bounds over {} degree-{degree} samples (ceiling {:.7}):",
        samples.len(),
        analysis_upper_constant()
    );
    println!(
        "{:>6} {:>12} {:>12} {:>12}",
        "K", "lower", "upper", "floor (1-1/K)^deg"
    );
    for rings in [16usize, 32, 64, 128, 256] {
        let grid = Grid::build(rings).unwrap();
        let estimate = frame_bounds_empirical(&samples, &grid).unwrap();
        let floor = szego_frames::grid::ring_radius(rings).powi(degree as i32);
        println!(
            "{rings:>6} {:>12.6} {:>12.6} {:>12.6}",
            estimate.lower, estimate.upper, floor
        );
    }
}
