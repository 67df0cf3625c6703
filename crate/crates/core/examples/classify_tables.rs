//! Classifies the bundled groups of orders 8, 16 and 27 by each of the five
//! persistence invariants and prints one summary row per order and series.
//!
//! Usage: `cargo run --release --example classify_tables [max_degree]`

use std::time::Instant;

use pgph::catalog::bundled_order;
use pgph::group::Functor;
use pgph::persistence::{classify, ClassificationReport};
use pgph::Budget;

fn main() {
    let t: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(5);
    println!("order,{}", ClassificationReport::CSV_HEADER);
    for order in [8, 16, 27] {
        let groups: Vec<_> = bundled_order(order).into_iter().map(|e| e.group).collect();
        for functor in Functor::ALL {
            let start = Instant::now();
            let r = classify(&groups, functor, t, false, Budget::from_env());
            let prefixes: Vec<usize> = r.prefixes.iter().map(|s| s.classes).collect();
            let singles: Vec<usize> = r.per_degree.iter().map(|s| s.classes).collect();
            println!(
                "{order},{}  prefixes={prefixes:?} single={singles:?} ({:.1?})",
                r.csv_row(),
                start.elapsed()
            );
        }
    }
}
