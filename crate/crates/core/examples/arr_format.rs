//! Reading and writing `.arr` files; keys ignore order and scaling.

use arrangements::arrangement::{Arrangement, Hyperplane};
use arrangements::catalog;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = "\
# three lines in the plane
field cyclotomic 1
dim 2
h 2 0
h 0 1
h 1 -1
";
    let a = Arrangement::parse_arr(text)?;
    print!("{}", a.to_arr_string());

    let b = Arrangement::new(
        a.field(),
        2,
        vec![
            Hyperplane::from_ints(a.field(), &[1, -1])?,
            Hyperplane::from_ints(a.field(), &[0, 3])?,
            Hyperplane::from_ints(a.field(), &[1, 0])?,
        ],
    )?;
    println!("same key: {}", a.key() == b.key());

    let g24 = catalog::build("g24")?;
    let back = Arrangement::parse_arr(&g24.to_arr_string())?;
    println!("g24 round trip: {}", back.key() == g24.key());

    match Arrangement::parse_arr("field cyclotomic 3\ndim 2\nh 1\n") {
        Ok(_) => println!("unexpected"),
        Err(e) => println!("rejected: {e}"),
    }
    Ok(())
}
