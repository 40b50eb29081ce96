//! Exact arithmetic in cyclotomic fields and the scalars the catalog uses.

use arrangements::field::{sqrt_minus_seven, CyclotomicField, Matrix};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for n in [3, 4, 7, 12] {
        let f = CyclotomicField::new(n);
        println!("Q(z{n}): degree {}, Phi = {:?}", f.degree(), f.minimal_poly());
    }

    let q4 = CyclotomicField::new(4);
    let i = q4.zeta();
    println!("i*i = {}", i.mul(&i));
    let one_plus_i = q4.parse("1+z")?;
    println!("1/(1+i) = {}", one_plus_i.inv()?);

    let q7 = CyclotomicField::new(7);
    let s = sqrt_minus_seven(q7);
    println!("s = {s}, s^2 = {}", s.mul(&s));
    let omega = q7.parse("-1/2")?.mul(&q7.one().add(&s));
    println!("omega = {omega}");

    let q3 = CyclotomicField::new(3);
    let rows = vec![
        vec![q3.one(), q3.zeta(), q3.zero()],
        vec![q3.zeta(), q3.zeta_pow(2), q3.zero()],
    ];
    let m = Matrix::from_rows(q3, 3, &rows);
    let k = m.kernel();
    println!("rank {} kernel dim {}", m.rank(), k.rows());
    for r in k.row_vecs() {
        let v: Vec<String> = r.iter().map(|x| x.to_string()).collect();
        println!("  kernel row ({})", v.join(", "));
    }
    Ok(())
}
