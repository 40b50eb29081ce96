//! A(G(3,3,3)) is not inductively free, but adding coordinate hyperplanes
//! reaches inductively free arrangements, so it is recursively free.

use arrangements::arrangement::Hyperplane;
use arrangements::catalog::builders::monomial;
use arrangements::freeness::{cert_verify, inductively_free, recursively_free, Budget};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for k in 0..=3 {
        let a = monomial(3, 3, k)?;
        println!("A_3^{k}(3): {} hyperplanes, inductive: {}", a.len(), inductively_free(&a, &Budget::default())?);
    }
    let a = monomial(3, 3, 0)?;
    let pool: Vec<Hyperplane> = (0..3).map(|i| Hyperplane::coordinate(a.field(), 3, i)).collect();
    let m = recursively_free(&a, &pool, 3, &Budget::default())?;
    println!("A(G(3,3,3)) with pool E1, E2, E3: {m}");
    if let Some(c) = m.certificate() {
        println!("rules {:?}, replay {:?}", c.rule_counts(), cert_verify(&a, c));
    }
    Ok(())
}
