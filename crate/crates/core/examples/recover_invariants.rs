//! Reads the order of a group and the invariants of an abelian group back
//! out of p-central persistence matrices.
//!
//! Usage: `cargo run --release --example recover_invariants`

use pgph::catalog::{abelian_entry, bundled_order};
use pgph::group::Functor;
use pgph::homology::default_prime;
use pgph::persistence::{kernel_dimensions, persistence_sequence, recover_abelian_invariants, recover_order};
use pgph::Budget;

fn main() -> pgph::Result<()> {
    let budget = Budget::from_env();

    let a = abelian_entry(&[2, 4, 4, 16]);
    let seq = persistence_sequence(&a.group, Functor::Zp, 2, budget)?;
    let (p1, p2) = (&seq.matrices[0], &seq.matrices[1]);
    println!("{}: diagonal of P_1 {:?}", a.id, p1.diagonal());
    println!("  recovered invariants {:?}", recover_abelian_invariants(p1, Some(p2), 2)?);

    for e in bundled_order(16) {
        let p = default_prime(&e.group) as u64;
        for f in [Functor::Zp, Functor::Lp] {
            let seq = persistence_sequence(&e.group, f, 2, budget)?;
            let (p1, p2) = (&seq.matrices[0], &seq.matrices[1]);
            println!(
                "{:>5} {:<8} {f:<2} kernels {:?} order {}",
                e.id,
                e.label(),
                kernel_dimensions(p1, p2)?,
                recover_order(p1, p2, p)?
            );
        }
    }
    Ok(())
}
