//! Writes SVG bar codes of the upper central series of the groups of order 8.
//!
//! Usage: `cargo run --release --example barcode_svg [out_dir] [degree]`

use std::fs;
use std::path::PathBuf;

use pgph::catalog::{bundled_order, render_svg};
use pgph::group::Functor;
use pgph::persistence::{barcode, persistence_matrix};
use pgph::Budget;

fn main() -> pgph::Result<()> {
    let out = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "barcodes".into()));
    let degree: usize = std::env::args().nth(2).and_then(|s| s.parse().ok()).unwrap_or(2);
    fs::create_dir_all(&out)?;
    for e in bundled_order(8) {
        let b = barcode(&persistence_matrix(&e.group, Functor::Z, degree, Budget::from_env())?)?;
        let path = out.join(format!("{}-Z-{degree}.svg", e.id));
        fs::write(&path, render_svg(&b))?;
        println!("{} ({}): {} bars -> {}", e.id, e.label(), b.total_bars(), path.display());
    }
    Ok(())
}
