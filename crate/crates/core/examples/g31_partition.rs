//! The 15 blocks and six stars of A(G31), and the block patterns of its
//! rank-2 flats.

use arrangements::g31::{trichotomy_check, G31};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = G31::new()?;
    let u = &g.universe;
    println!("{}", g.partition.grid(u));
    for (i, m) in g.partition.m.iter().enumerate() {
        let rest = g.full().difference(m);
        println!("A∖M{}: {} hyperplanes, χ = {}", i + 1, rest.len(), u.charpoly(&rest));
    }
    let t = trichotomy_check(u, &g.partition);
    println!(
        "pairs {} cases {:?} per hyperplane {:?} violations {}",
        t.pairs,
        t.case_counts,
        t.per_hyperplane,
        t.violations.len()
    );
    Ok(())
}
