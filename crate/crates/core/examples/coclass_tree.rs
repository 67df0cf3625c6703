//! Persistent homology along the main line of the coclass tree of 2-groups
//! of coclass 1, and the `H_2` comparison for the three families.
//!
//! Usage: `cargo run --release --example coclass_tree [max_level] [max_degree]`

use pgph::coclass::{check_h2_splitting, tree_persistence, FamilyKind};
use pgph::Budget;

fn main() -> pgph::Result<()> {
    let top: u32 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(6);
    let degrees: usize = std::env::args().nth(2).and_then(|s| s.parse().ok()).unwrap_or(4);
    let budget = Budget::from_env();

    for n in 1..=degrees {
        let r = tree_persistence(FamilyKind::Dihedral, n, 3, top, budget)?;
        println!(
            "degree {n}: H_n dims {:?}, images {:?}, stable from level {:?} at dim {:?}",
            r.homology_dims, r.image_dims, r.stabilization_level, r.stabilized_dim
        );
    }
    for kind in FamilyKind::ALL {
        let r = check_h2_splitting(kind, kind.first_level().max(3)..=top, budget)?;
        let h2: Vec<(String, usize)> = r.rows.iter().map(|row| (row.group.clone(), row.h2)).collect();
        println!("{kind}: estimate {:?}, dim H_2 {h2:?}, passed {}", r.estimate, r.passed());
    }
    Ok(())
}
