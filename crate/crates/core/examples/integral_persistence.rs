//! Integral persistence triples `(A, B, C)` of the upper p-central series,
//! and the integral classification of the groups of order 8.
//!
//! Usage: `cargo run --release --example integral_persistence [group] [max_degree]`

use pgph::catalog::{bundled_order, resolve_group};
use pgph::group::Functor;
use pgph::persistence::{classify, integral_persistence_sequence};
use pgph::Budget;

fn main() -> pgph::Result<()> {
    let selector = std::env::args().nth(1).unwrap_or_else(|| "8.4".into());
    let t: usize = std::env::args().nth(2).and_then(|s| s.parse().ok()).unwrap_or(2);
    let budget = Budget::from_env();

    let entry = resolve_group(&selector)?;
    println!("{} ({})", entry.id, entry.label());
    for m in integral_persistence_sequence(&entry.group, Functor::Zp, 1, t, budget)? {
        println!("degree {}, quotient orders {:?}", m.degree, m.term_orders);
        print!("{m}");
    }

    let groups: Vec<_> = bundled_order(8).into_iter().map(|e| e.group).collect();
    let r = classify(&groups, Functor::Zp, 3, true, budget);
    println!("order 8, integral Zp up to degree 3: {}", r.summary_json());
    Ok(())
}
