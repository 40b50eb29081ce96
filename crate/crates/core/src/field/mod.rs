//! Exact arithmetic in cyclotomic fields `ℚ(ζ_n)` and linear algebra over them.

mod cyclotomic;
mod matrix;
mod rational;
mod text;

pub use cyclotomic::{cyclotomic_polynomial, CyclotomicField, FieldElement};
pub use matrix::{EchelonBasis, Matrix, Rref};
pub use rational::Rational;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: Q(zeta_{left}) vs Q(zeta_{right})")]
    FieldMismatch { left: u32, right: u32 },
    #[error("scalar parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// `ℚ(ζ_n)`; orders 1 and 2 give `ℚ` itself.
pub fn field_make(n: u32) -> CyclotomicField {
    CyclotomicField::new(n)
}

/// The quadratic Gauss sum `Σ (a/7) ζ_7^a`, a square root of `-7` in `ℚ(ζ_7)`.
pub fn sqrt_minus_seven(q7: CyclotomicField) -> FieldElement {
    assert_eq!(q7.order(), 7, "the Gauss sum lives in Q(zeta_7)");
    let mut s = q7.zero();
    for a in 1..7i64 {
        let residue = [1, 2, 4].contains(&a);
        let t = q7.zeta_pow(a);
        s = if residue { s.add(&t) } else { s.sub(&t) };
    }
    debug_assert_eq!(s.mul(&s), q7.from_int(-7));
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(field_make(4).minimal_poly(), &[1, 0, 1]);
        assert_eq!(field_make(3).minimal_poly(), &[1, 1, 1]);
        assert_eq!(field_make(7).minimal_poly(), &[1, 1, 1, 1, 1, 1, 1]);
        assert_eq!(field_make(7).degree(), 6);
        assert_eq!(field_make(12).minimal_poly(), &[1, 0, -1, 0, 1]);
        assert_eq!(field_make(1).degree(), 1);
        assert_eq!(field_make(2).degree(), 1);
        assert_eq!(field_make(2).zeta(), field_make(2).from_int(-1));
        assert!(field_make(1).zeta().is_one());
    }

    #[test]
    fn unit_examples() {
        let q4 = field_make(4);
        let i = q4.zeta();
        assert_eq!(i.mul(&i), q4.from_int(-1));
        let one_plus_i = q4.one().add(&i);
        let want = q4.one().sub(&i).scale(&Rational::new(1, 2));
        assert_eq!(one_plus_i.inv().unwrap(), want);

        let q3 = field_make(3);
        let z = q3.zeta();
        assert!(q3.one().add(&z).add(&z.mul(&z)).is_zero());

        let q7 = field_make(7);
        let s = sqrt_minus_seven(q7);
        assert_eq!(s.mul(&s), q7.from_int(-7));
    }

    #[test]
    fn errors_are_distinct() {
        let q4 = field_make(4);
        let q3 = field_make(3);
        assert_eq!(q4.zero().inv(), Err(FieldError::DivisionByZero));
        assert_eq!(
            q4.one().checked_add(&q3.one()),
            Err(FieldError::FieldMismatch { left: 4, right: 3 })
        );
        assert!(q4.one().checked_div(&q4.zero()).is_err());
    }

    #[test]
    fn rref_examples() {
        let q4 = field_make(4);
        assert_eq!(Matrix::identity(q4, 3).rank(), 3);
        let r = |v: &[i64]| v.iter().map(|&x| q4.from_int(x)).collect::<Vec<_>>();
        let rep = Matrix::from_rows(q4, 3, &[r(&[1, 2, 3]), r(&[1, 2, 3])]);
        assert_eq!(rep.rank(), 1);
        let m = Matrix::from_rows(q4, 4, &[r(&[1, 0, 0, 0]), r(&[0, 1, 0, 0]), r(&[1, 1, 0, 0])]);
        let rr = m.rref();
        assert_eq!(rr.rank, 2);
        assert_eq!(rr.pivots, vec![0, 1]);
    }

    #[test]
    fn kernel_examples() {
        let q4 = field_make(4);
        let r = |v: &[i64]| v.iter().map(|&x| q4.from_int(x)).collect::<Vec<_>>();
        assert_eq!(Matrix::zeros(q4, 1, 3).kernel().rows(), 3);
        let k = Matrix::from_rows(q4, 3, &[r(&[1, 0, 0])]).kernel();
        assert_eq!(k.row_vecs(), vec![r(&[0, 1, 0]), r(&[0, 0, 1])]);
        assert_eq!(Matrix::identity(q4, 3).kernel().rows(), 0);
    }

    #[test]
    fn echelon_basis_intersections() {
        let q3 = field_make(3);
        let r = |v: &[i64]| v.iter().map(|&x| q3.from_int(x)).collect::<Vec<_>>();
        let a = EchelonBasis::from_vectors([&r(&[1, 0, 0])[..], &r(&[0, 1, 0])[..]]);
        let b = EchelonBasis::from_vectors([&r(&[1, 1, 0])[..], &r(&[0, 0, 1])[..]]);
        assert_eq!(a.intersection_dim(&b), 1);
        assert!(a.contains(&r(&[3, -2, 0])));
        assert!(!a.contains(&r(&[0, 0, 1])));
    }

    fn element(n: u32) -> impl Strategy<Value = FieldElement> {
        let f = field_make(n);
        prop::collection::vec((-20i64..20, 1i64..6), f.degree())
            .prop_map(move |cs| {
                let cs: Vec<Rational> = cs.into_iter().map(|(a, b)| Rational::new(a, b)).collect();
                f.from_coeffs(&cs)
            })
    }

    fn any_order() -> impl Strategy<Value = u32> {
        prop::sample::select(vec![1u32, 3, 4, 5, 7, 12])
    }

    proptest! {
        #[test]
        fn ring_axioms((a, b, c) in any_order().prop_flat_map(|n| (element(n), element(n), element(n)))) {
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            if !a.is_zero() {
                prop_assert!(a.mul(&a.inv().unwrap()).is_one());
            }
        }

        #[test]
        fn text_round_trip(a in any_order().prop_flat_map(element)) {
            let f = a.field();
            let text = a.to_string();
            prop_assert_eq!(f.parse(&text).unwrap(), a);
        }

        #[test]
        fn rref_idempotent_and_rank_nullity(
            rows in prop::collection::vec(prop::collection::vec(-3i64..4, 4), 0..5)
        ) {
            let f = field_make(3);
            let z = f.zeta();
            let rows: Vec<Vec<FieldElement>> = rows
                .iter()
                .map(|r| r.iter().enumerate().map(|(j, &x)| {
                    let e = f.from_int(x);
                    if j % 2 == 1 { e.mul(&z) } else { e }
                }).collect())
                .collect();
            let m = Matrix::from_rows(f, 4, &rows);
            let once = m.rref();
            let twice = once.matrix.rref();
            prop_assert_eq!(&once.matrix, &twice.matrix);
            let k = m.kernel();
            prop_assert_eq!(once.rank + k.rows(), 4);
            for kr in k.row_vecs() {
                prop_assert!(m.mul_vec(&kr).iter().all(FieldElement::is_zero));
            }
        }
    }
}
