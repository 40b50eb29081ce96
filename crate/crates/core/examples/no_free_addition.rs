//! Candidate sweeps: which hyperplanes could be added to a free
//! arrangement without losing freeness.
//!
//! ```text
//! cargo run --release --example no_free_addition -- g31
//! ```

use arrangements::catalog;
use arrangements::freeness::{sweep_in, Universe};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "g29".into());
    let e = catalog::lookup(&name)?;
    let (a, _) = catalog::build_entry(&e)?;
    let exps = e.exponents.clone().ok_or("entry has no exponents")?.0;
    let ambient = (name == "g29").then(|| catalog::build("g31")).transpose()?;
    let u = Universe::new(a)?;
    let r = sweep_in(&u, &u.full(), &exps, ambient.as_ref())?;
    println!("{name}: exponents {exps:?}");
    println!("external candidates {}", r.external_candidates);
    println!("obstruction sums {:?}", r.obstruction_histogram);
    println!("complete {} (single flat bound {})", r.complete, r.max_single_flat);
    println!("survivors {:?}", r.survivors);
    if ambient.is_some() {
        println!("survivors inside A(G31): {}", r.ambient_survivors.len());
    }
    for c in r.splitting_charpolys(true, 3) {
        println!("splitting χ(A ∪ H) through ≥ 3 flats: {c}");
    }
    Ok(())
}
