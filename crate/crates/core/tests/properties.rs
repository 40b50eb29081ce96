//! Invariants of arrangements, lattices and certificates on random inputs.

use std::sync::OnceLock;

use arrangements::arrangement::{Arrangement, Hyperplane};
use arrangements::bitset::BitSet;
use arrangements::catalog::builders;
use arrangements::field::FieldElement;
use arrangements::freeness::{
    cert_verify, certify, exponents_from_charpoly, Budget, FactRegistry, Universe, Verdict,
};
use arrangements::lattice::{charpoly, Lattice, DEFAULT_FLAT_BUDGET};
use proptest::prelude::*;
use proptest::sample::subsequence;

fn g31() -> &'static Arrangement {
    static A: OnceLock<Arrangement> = OnceLock::new();
    A.get_or_init(builders::g31)
}

fn g24() -> &'static Arrangement {
    static A: OnceLock<Arrangement> = OnceLock::new();
    A.get_or_init(builders::g24)
}

fn sub_of(a: &'static Arrangement, lo: usize, hi: usize) -> impl Strategy<Value = Arrangement> {
    subsequence((0..a.len()).collect::<Vec<_>>(), lo..=hi).prop_map(move |idx| a.subarrangement(&idx))
}

fn scaled(h: &Hyperplane, k: i64) -> Hyperplane {
    let f = h.field();
    let c = f.from_int(k).mul(&f.zeta_pow(k));
    let v: Vec<FieldElement> = h.covector().iter().map(|x| x.mul(&c)).collect();
    Hyperplane::new(v).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn deletion_restriction_recursion(a in sub_of(g31(), 2, 14), pick in any::<prop::sample::Index>()) {
        let h = &a.hyperplanes()[pick.index(a.len())];
        let chi = charpoly(&a).unwrap();
        let d = charpoly(&a.delete(h).unwrap()).unwrap();
        let r = charpoly(&a.restrict(h).unwrap()).unwrap();
        prop_assert_eq!(chi, d.sub(&r));
    }

    #[test]
    fn charpoly_shape(a in sub_of(g31(), 1, 18)) {
        let mut l = Lattice::build(&a, None, DEFAULT_FLAT_BUDGET).unwrap();
        let chi = l.charpoly();
        let c = chi.coeffs();
        prop_assert_eq!(chi.degree(), Some(4));
        prop_assert_eq!(c[4], 1);
        prop_assert_eq!(c[3], -(a.len() as i64));
        prop_assert_eq!(chi.eval(1), 0);
        let pairs: usize = l.rank_layer(2).iter().map(|&x| {
            let k = l.flat(x).members.len();
            k * (k - 1) / 2
        }).sum();
        prop_assert_eq!(pairs, a.len() * (a.len() - 1) / 2);
        let mu = l.mobius().to_vec();
        for (x, f) in l.flats().iter().enumerate() {
            let signed = if f.rank % 2 == 0 { mu[x] } else { -mu[x] };
            prop_assert!(signed > 0);
        }
    }

    #[test]
    fn universe_charpoly_matches_materialized(idx in subsequence((0..60usize).collect::<Vec<_>>(), 0..=20)) {
        let u = Universe::new(g31().clone()).unwrap();
        let b = BitSet::from_indices(u.len(), idx.iter().copied());
        let direct = charpoly(&g31().subarrangement(&idx)).unwrap();
        prop_assert_eq!(u.charpoly(&b), direct);
    }

    #[test]
    fn key_ignores_order_and_scaling(
        (a, perm) in sub_of(g31(), 1, 20).prop_flat_map(|a| {
            let n = a.len();
            (Just(a), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
        }),
        k in 1i64..6,
    ) {
        let hs: Vec<Hyperplane> = perm.iter().map(|&i| scaled(&a.hyperplanes()[i], k)).collect();
        let b = Arrangement::new(a.field(), a.dim(), hs).unwrap();
        prop_assert_eq!(a.key(), b.key());
        prop_assert_eq!(charpoly(&a).unwrap(), charpoly(&b).unwrap());
    }

    #[test]
    fn delete_then_add_round_trip(a in sub_of(g24(), 2, 21), pick in any::<prop::sample::Index>()) {
        let h = a.hyperplanes()[pick.index(a.len())].clone();
        let d = a.delete(&h).unwrap();
        prop_assert_eq!(d.len() + 1, a.len());
        prop_assert!(!d.contains(&h));
        prop_assert_eq!(d.add(h).unwrap().key(), a.key());
    }

    #[test]
    fn arr_text_round_trip(a in sub_of(g31(), 0, 60)) {
        let back = Arrangement::parse_arr(&a.to_arr_string()).unwrap();
        prop_assert_eq!(back.key(), a.key());
        prop_assert_eq!(back.len(), a.len());
    }

    #[test]
    fn product_charpoly_multiplies(x in sub_of(g24(), 1, 6), y in sub_of(g24(), 1, 6)) {
        let p = x.product(&y).unwrap();
        prop_assert_eq!(p.len(), x.len() + y.len());
        prop_assert_eq!(charpoly(&p).unwrap(), charpoly(&x).unwrap().mul(&charpoly(&y).unwrap()));
        let comps = p.irreducible_components().len();
        prop_assert_eq!(comps, x.irreducible_components().len() + y.irreducible_components().len());
    }

    #[test]
    fn free_verdicts_are_consistent(idx in subsequence((0..21usize).collect::<Vec<_>>(), 3..=21)) {
        let u = Universe::new(g24().clone()).unwrap();
        let b = BitSet::from_indices(u.len(), idx.iter().copied());
        let v = certify(&u, &b, &FactRegistry::new(), &Budget::new(50_000));
        if let Verdict::Free { exponents, certificate } = &v {
            let a = u.materialize(&b);
            prop_assert_eq!(exponents.iter().sum::<u64>(), a.len() as u64);
            let from_chi = exponents_from_charpoly(&charpoly(&a).unwrap(), a.len());
            prop_assert_eq!(from_chi.as_ref(), Some(exponents));
            prop_assert!(cert_verify(&a, certificate).is_ok());
        }
    }
}
