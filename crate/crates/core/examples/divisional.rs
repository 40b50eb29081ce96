//! A(G31) is divisionally free: its restriction to a hyperplane is free
//! and χ(A^H) divides χ(A).

use arrangements::catalog;
use arrangements::freeness::{cert_verify, divisionally_free, inductively_free, Budget};
use arrangements::lattice::charpoly;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let a = catalog::build("g31")?;
    let h = &a.hyperplanes()[0];
    let chi = charpoly(&a)?;
    let chi_h = charpoly(&a.restrict(h)?)?;
    println!("χ(A) = {chi}\nχ(A^H) = {chi_h}\ndivides: {}", chi_h.divides(&chi));

    let m = divisionally_free(&a, &Budget::default())?;
    println!("divisional: {m}");
    if let Some(c) = m.certificate() {
        println!("certificate {:?}, replay {:?}", c.rule_counts(), cert_verify(&a, c));
    }

    let b = Budget::new(20_000);
    println!("inductive within {} nodes: {}", b.cap(), inductively_free(&a, &b)?);
    Ok(())
}
