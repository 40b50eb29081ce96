//! Lattices, characteristic polynomials and rank-2 profiles of catalog
//! arrangements.
//!
//! ```text
//! cargo run --release --example charpoly -- g31 g24 boolean3
//! ```

use arrangements::catalog;
use arrangements::lattice::{Lattice, DEFAULT_FLAT_BUDGET};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut names: Vec<String> = std::env::args().skip(1).collect();
    if names.is_empty() {
        names = ["boolean3", "g333", "g24", "g29", "g31"].map(String::from).to_vec();
    }
    for name in names {
        let a = catalog::build(&name)?;
        let mut l = Lattice::build(&a, None, DEFAULT_FLAT_BUDGET)?;
        println!(
            "{name}: |A| = {}, flats by rank {:?}\n  χ = {}\n  profile {}",
            a.len(),
            l.counts_by_rank(),
            l.charpoly(),
            l.rank2_profile()
        );
    }
    Ok(())
}
