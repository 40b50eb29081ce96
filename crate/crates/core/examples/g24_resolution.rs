//! Adds the twelve resolution hyperplanes to A(G24) one at a time,
//! certifying each step, and checks that the result is supersolvable.

use arrangements::arrangement::Arrangement;
use arrangements::bitset::BitSet;
use arrangements::catalog::builders::{g24, g24_resolution};
use arrangements::freeness::{recursively_free, verify_resolution, Budget, FactRegistry, Universe};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let a = g24();
    let mut all = a.hyperplanes().to_vec();
    all.extend(g24_resolution());
    let u = Universe::new(Arrangement::new(a.field(), 3, all)?)?;

    let reg = FactRegistry::new();
    reg.insert_catalog(&a, vec![1, 9, 11], "g24")?;
    let start = BitSet::from_indices(u.len(), 0..21);
    let adds: Vec<usize> = (21..33).collect();
    let r = verify_resolution(&u, &start, &adds, &reg, &Budget::default());
    println!(" j  exp A_j        exp A_j^H_j");
    for row in &r.rows {
        println!("{:>2}  {:<13} {:?}", row.index, format!("{:?}", row.exponents), row.restriction_exponents);
    }
    if let Some(f) = &r.failure {
        println!("failed at step {}: {}", f.index, f.reason);
    }

    let chain = u.lattice().supersolvable_chain(1_000_000)?;
    println!("A_12 supersolvable: {}", chain.is_some());

    let m = recursively_free(&a, &g24_resolution(), 12, &Budget::default())?;
    println!("A(G24) recursive search with the resolution pool: {m}");
    Ok(())
}
