//! Tour of the ring grid: nodes, weights, flat indexing, and the
//! diverging Blaschke sums that make the kernel family complete.
//!
//! ```bash
//! cargo run --example grid_tour
//! ```

use szego_frames::{blaschke_partial_sum, flat_index, ring_index, Grid};

fn main() {
    let grid = Grid::build(4).unwrap();
    println!(
        "grid with K = 4 rings, {} nodes (ring k holds k points)\n",
        grid.len()
    );

    println!(
        "{:>3} {:>3} {:>10} {:>10} {:>10}",
        "k", "j", "re", "im", "weight"
    );
    for node in grid.nodes() {
        let z = node.point.value();
        println!(
            "{:>3} {:>3} {:>10.6} {:>10.6} {:>10.6}",
            node.index.k, node.index.j, z.re, z.im, node.weight
        );
    }

    // ring k sits at radius 1 − 1/k; the weights (1 − |λ|²)^{1/2} decay
    // like 1/√k, which is what makes the ring-blocked ℓ² norms the right
    // unit of accounting
    println!("\nweight·√k per ring (bounded between 1 and √2):");
    for k in [1usize, 2, 5, 20, 100] {
        let w = szego_frames::grid::ring_weight(k);
        println!("  k = {k:>4}: weight·√k = {:.6}", w * (k as f64).sqrt());
    }

    // the flat enumeration is ring-major and 1-based
    println!("\nflat enumeration round trip:");
    for n in [1usize, 4, 6, 11, 55] {
        let idx = ring_index(n).unwrap();
        println!(
            "  n = {n:>2}  ↔  (k, j) = ({}, {})  ↔  n = {}",
            idx.k,
            idx.j,
            flat_index(idx.k, idx.j).unwrap()
        );
    }

    // each ring contributes exactly 1 to Σ (1 − |λ|): the Blaschke
    // condition fails, so the kernel family is complete
    println!("\nBlaschke partial sums (equal to K):");
    for rings in [1usize, 10, 100, 1000] {
        let s = blaschke_partial_sum(rings).unwrap();
        println!("  K = {rings:>5}: Σ (1 − |λ|) = {s:.12}");
    }
}
