//! The 28-hyperplane restriction of A(G33): six deletions along a free
//! filtration, two additions, and an inductively free end point.

use arrangements::arrangement::Arrangement;
use arrangements::bitset::BitSet;
use arrangements::catalog::builders::g33_res_a1;
use arrangements::freeness::{if_search, verify_filtration, verify_resolution, Budget, FactRegistry, Universe};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (a, n, adds) = g33_res_a1();
    let mut all = a.hyperplanes().to_vec();
    all.extend(adds);
    let u = Universe::new(Arrangement::new(a.field(), 4, all)?)?;
    let reg = FactRegistry::new();
    let budget = Budget::default();

    let start = BitSet::from_indices(u.len(), 0..28);
    let f = verify_filtration(&u, &start, &n, &reg, &budget);
    println!("A: exponents {:?}", f.start_exponents);
    for s in &f.steps {
        println!("  delete H{:<2} -> {:?} (restriction {:?})", n[s.index - 1] + 1, s.exponents, s.restriction_exponents);
    }

    let mut b = start.clone();
    for &h in &n {
        b.remove(h);
    }
    let r = verify_resolution(&u, &b, &[28, 29], &reg, &budget);
    for row in &r.rows {
        println!("  add I{} -> {:?} (restriction {:?})", row.index, row.exponents, row.restriction_exponents);
    }
    b.insert(28);
    b.insert(29);
    println!("final |A| = {}: inductive {}", b.len(), if_search(&u, &b, &budget));
    Ok(())
}
