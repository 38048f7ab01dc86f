//! Writes the sample proofs to `<dir>/<stem>.tcp` (default `corpus`).

use std::path::PathBuf;

use tcl_core::proofgraph::write_proof;
use tcl_core::samples;

fn main() -> std::io::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "corpus".into()));
    std::fs::create_dir_all(&dir)?;
    for (stem, g) in samples::corpus() {
        let path = dir.join(format!("{stem}.tcp"));
        std::fs::write(&path, write_proof(&g))?;
        println!("{}", path.display());
    }
    Ok(())
}
