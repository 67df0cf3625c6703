//! The lower central persistence matrix of the dihedral group of order 64
//! in degree 2, with its bar code.
//!
//! Usage: `cargo run --release --example persistence_matrix [group] [series] [degree]`

use pgph::catalog::resolve_group;
use pgph::group::Functor;
use pgph::persistence::{barcode, persistence_matrix};
use pgph::Budget;

fn main() -> pgph::Result<()> {
    let mut args = std::env::args().skip(1);
    let selector = args.next().unwrap_or_else(|| "64.dihedral".into());
    let functor: Functor = args.next().as_deref().unwrap_or("L").parse()?;
    let degree: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(2);

    let g = resolve_group(&selector)?.group;
    let m = persistence_matrix(&g, functor, degree, Budget::from_env())?;
    println!("quotient orders {:?}", m.term_orders);
    print!("{m}");
    println!();
    print!("{}", barcode(&m)?);
    Ok(())
}
