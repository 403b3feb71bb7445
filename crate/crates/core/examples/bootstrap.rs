//! Regenerates `data/registry.tsv` and `data/squares.tsv` from the bundled
//! Q-value table. Usage: `cargo run --release --example bootstrap -- <data dir>`.

use std::path::PathBuf;

use moonshine_core::moonshine::bootstrap::{bootstrap, BOOTSTRAP_ORDER};
use moonshine_core::moonshine::square_map_to_tsv;
use moonshine_core::schwarzfit::corpus::bundled_corpus;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = PathBuf::from(
        std::env::args()
            .nth(1)
            .unwrap_or_else(|| "crates/core/data".into()),
    );
    let out = bootstrap(&bundled_corpus(), BOOTSTRAP_ORDER)?;
    std::fs::write(dir.join("registry.tsv"), out.registry.to_tsv())?;
    std::fs::write(dir.join("squares.tsv"), square_map_to_tsv(&out.squares))?;
    let available = out
        .registry
        .classes()
        .iter()
        .filter(|c| c.available)
        .count();
    eprintln!("{} classes, {available} with data", out.registry.len());
    Ok(())
}
