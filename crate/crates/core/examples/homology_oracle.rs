//! Mod-p homology from minimal resolutions, checked against the bar complex.
//!
//! Usage: `cargo run --release --example homology_oracle [max_order] [max_degree]`

use std::time::Instant;

use pgph::catalog::bundled;
use pgph::homology::{bar_homology_fp, default_prime, homology_dims};
use pgph::Budget;

fn main() -> pgph::Result<()> {
    let max_order: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(8);
    let max_degree: usize = std::env::args().nth(2).and_then(|s| s.parse().ok()).unwrap_or(3);
    let budget = Budget::from_env();
    for e in bundled().into_iter().filter(|e| e.order() > 1 && e.order() <= max_order) {
        let p = default_prime(&e.group);
        let start = Instant::now();
        let minimal = homology_dims(&e.group, p, max_degree, budget)?;
        let fast = start.elapsed();
        let bar: Vec<usize> = (1..=max_degree)
            .map(|n| bar_homology_fp(&e.group, p, n, &budget))
            .collect::<pgph::Result<_>>()?;
        let agree = minimal[1..] == bar[..];
        println!(
            "{:>12} {:<10} minimal {:?} ({fast:.1?}) bar {:?} ({:.1?}) {}",
            e.id,
            e.label(),
            minimal,
            bar,
            start.elapsed() - fast,
            if agree { "ok" } else { "MISMATCH" }
        );
    }
    Ok(())
}
