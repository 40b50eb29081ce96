//! Writes `data/g34.arr` and `data/g33.arr` from the built-in model.
//!
//! ```text
//! cargo run --example make_g34_data [-- <out-dir>]
//! ```

use std::path::PathBuf;

use arrangements::catalog::builders::{g33_witness, g34_model, localize_at_point};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data"));
    std::fs::create_dir_all(&dir)?;

    let g34 = g34_model();
    let g33 = localize_at_point(&g34, &g33_witness())?.essentialize();

    let head34 = "# A(G34) over Q(zeta_3): x_i - z^b x_j (45) and (1, z^a2, ..., z^a6) with a2+...+a6 = 0 mod 3 (81)\n";
    let head33 = "# A(G33): hyperplanes of data/g34.arr through (1,1,1,1,1,1), in coordinates of their span\n";
    std::fs::write(dir.join("g34.arr"), format!("{head34}{}", g34.to_arr_string()))?;
    std::fs::write(dir.join("g33.arr"), format!("{head33}{}", g33.to_arr_string()))?;
    println!("g34: {} hyperplanes in dim {}", g34.len(), g34.dim());
    println!("g33: {} hyperplanes in dim {}", g33.len(), g33.dim());
    println!("written to {}", dir.display());
    Ok(())
}
