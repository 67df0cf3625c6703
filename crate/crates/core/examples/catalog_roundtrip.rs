//! Writes the bundled catalog to a directory of group files, reloads it and
//! compares Cayley tables. The directory can then be passed to
//! `pgph classify --catalog`.
//!
//! Usage: `cargo run --release --example catalog_roundtrip [dir]`

use pgph::catalog::{bundled, load_catalog, write_catalog};

fn main() -> pgph::Result<()> {
    let dir = std::env::args().nth(1).unwrap_or_else(|| "catalog".into());
    let entries = bundled();
    write_catalog(&dir, &entries)?;
    let loaded = load_catalog(&dir)?;
    let mut same = 0;
    for e in &loaded {
        let original = entries.iter().find(|o| o.id == e.id).expect("written entries reload");
        if original.group.cayley() == e.group.cayley() {
            same += 1;
        } else {
            println!("{} changed", e.id);
        }
    }
    println!("{} groups written to {dir}, {same} reloaded unchanged", entries.len());
    Ok(())
}
