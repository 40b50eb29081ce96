//! Explicit hyperplane data.

use crate::arrangement::{Arrangement, Hyperplane};
use crate::error::{Error, Result};
use crate::field::{sqrt_minus_seven, CyclotomicField, FieldElement};

fn hyperplane(v: Vec<FieldElement>) -> Hyperplane {
    Hyperplane::new(v).expect("catalog covectors are nonzero")
}

fn parse_row(f: CyclotomicField, row: &[&str]) -> Hyperplane {
    hyperplane(
        row.iter()
            .map(|s| f.parse(s).expect("catalog scalar"))
            .collect(),
    )
}

/// `A_ℓ^k(r)`: the hyperplanes `x_i − ζ^n x_j` (`i < j`, `0 ≤ n < r`)
/// followed by the first `k` coordinate hyperplanes, over `ℚ(ζ_r)`.
/// `k = 0` gives `A(G(r,r,ℓ))` and `k = ℓ` gives `A(G(r,1,ℓ))`.
pub fn monomial(r: u32, l: usize, k: usize) -> Result<Arrangement> {
    if r < 2 || l < 2 || k > l {
        return Err(Error::Invalid(format!(
            "monomial arrangement needs r >= 2, l >= 2, 0 <= k <= l (got r={r}, l={l}, k={k})"
        )));
    }
    let f = CyclotomicField::new(r);
    monomial_over(f, r, l, k)
}

/// As [`monomial`], over any field whose order is divisible by `r`.
pub fn monomial_over(f: CyclotomicField, r: u32, l: usize, k: usize) -> Result<Arrangement> {
    if f.order() % r != 0 {
        return Err(Error::Invalid(format!(
            "field order {} is not divisible by {r}",
            f.order()
        )));
    }
    let step = (f.order() / r) as i64;
    let mut hs = Vec::new();
    for i in 0..l {
        for j in i + 1..l {
            for n in 0..r as i64 {
                let mut v = vec![f.zero(); l];
                v[i] = f.one();
                v[j] = f.zeta_pow(n * step).neg();
                hs.push(hyperplane(v));
            }
        }
    }
    for i in 0..k {
        hs.push(Hyperplane::coordinate(f, l, i));
    }
    Ok(Arrangement::new(f, l, hs)?.with_name(format!("monomial({r},{l},{k})")))
}

/// The scalars `ω = −(1+√−7)/2` and `2` in `ℚ(ζ_7)`.
pub fn omega() -> FieldElement {
    let f = CyclotomicField::new(7);
    let s = sqrt_minus_seven(f);
    f.one().add(&s).neg().scale(&crate::field::Rational::new(1, 2))
}

/// The 21 reflecting hyperplanes of `G24` over `ℚ(ζ_7)`.
pub fn g24() -> Arrangement {
    let f = CyclotomicField::new(7);
    let w = omega();
    let e = |k: i64| f.from_int(k);
    let mut hs: Vec<Hyperplane> = [
        [1, 0, 0],
        [0, 1, 0],
        [0, 0, 1],
        [1, 1, 0],
        [-1, 1, 0],
        [1, 0, 1],
        [-1, 0, 1],
        [0, 1, 1],
        [0, -1, 1],
    ]
    .iter()
    .map(|c| Hyperplane::from_ints(f, c).expect("nonzero"))
    .collect();
    let wn = w.neg();
    for (a, b) in [(&w, &w), (&wn, &w), (&w, &wn), (&wn, &wn)] {
        hs.push(hyperplane(vec![a.clone(), b.clone(), e(2)]));
    }
    for (a, b) in [(&w, &w), (&wn, &w), (&w, &wn), (&wn, &wn)] {
        hs.push(hyperplane(vec![a.clone(), e(2), b.clone()]));
    }
    for (a, b) in [(&w, &w), (&wn, &w), (&w, &wn), (&wn, &wn)] {
        hs.push(hyperplane(vec![e(2), a.clone(), b.clone()]));
    }
    Arrangement::new(f, 3, hs).expect("distinct").with_name("g24")
}

/// The twelve hyperplanes `H_1, …, H_12` added to `A(G24)` in its resolution
/// to a supersolvable arrangement, in order.
pub fn g24_resolution() -> Vec<Hyperplane> {
    let f = CyclotomicField::new(7);
    let w = omega();
    let w2 = w.mul(&w);
    let two = f.from_int(2);
    let two_minus_w = two.sub(&w);
    let z = f.zero();
    let rows: Vec<[FieldElement; 2]> = vec![
        [w2.clone(), w.clone()],
        [w2.neg(), w.clone()],
        [w.clone(), w2.clone()],
        [w.neg(), w2.clone()],
        [two_minus_w.clone(), w.clone()],
        [two_minus_w.neg(), w.clone()],
        [w.clone(), two_minus_w.clone()],
        [w.neg(), two_minus_w.clone()],
        [w.clone(), two.clone()],
        [w.neg(), two.clone()],
        [two.clone(), w.clone()],
        [two.neg(), w.clone()],
    ];
    rows.into_iter()
        .map(|[a, b]| hyperplane(vec![a, b, z.clone()]))
        .collect()
}

/// `A_12 = A(G24) ∪ {H_1, …, H_12}`.
pub fn g24_a12() -> Arrangement {
    let mut a = g24();
    for h in g24_resolution() {
        a = a.add(h).expect("resolution hyperplanes are new");
    }
    a.with_name("g24_a12")
}

/// Exponent vectors `(a_1, …, a_4)` with `a_1 = 0` and `Σ a ≡ s (mod 4)`.
fn orbit_patterns(s: u32) -> Vec<[u32; 4]> {
    let mut out = Vec::new();
    for a2 in 0..4 {
        for a3 in 0..4 {
            for a4 in 0..4 {
                if (a2 + a3 + a4) % 4 == s {
                    out.push([0, a2, a3, a4]);
                }
            }
        }
    }
    out
}

/// The four families of hyperplanes of `A(G31)` over `ℚ(i)`, in order:
/// `x_p − i^k x_q`, the orbit of `(1,1,1,1)`, the coordinate hyperplanes,
/// the orbit of `(−1,1,1,1)`. The orbits under the monomial group with
/// determinant one consist of the vectors `(i^{a_1}, …, i^{a_4})` with
/// `Σ a_j` fixed mod 4; permutations keep that sum, and projective
/// normalization leaves the 16 vectors with `a_1 = 0`.
pub fn g31_families() -> [Vec<Hyperplane>; 4] {
    let f = CyclotomicField::new(4);
    let mut braid = Vec::new();
    for p in 0..4 {
        for q in p + 1..4 {
            for k in 0..4 {
                let mut v = vec![f.zero(); 4];
                v[p] = f.one();
                v[q] = f.zeta_pow(k).neg();
                braid.push(hyperplane(v));
            }
        }
    }
    let orbit = |s| {
        orbit_patterns(s)
            .into_iter()
            .map(|a| hyperplane(a.iter().map(|&e| f.zeta_pow(e as i64)).collect()))
            .collect::<Vec<_>>()
    };
    let coords = (0..4).map(|i| Hyperplane::coordinate(f, 4, i)).collect();
    [braid, orbit(0), coords, orbit(2)]
}

pub fn g31() -> Arrangement {
    let f = CyclotomicField::new(4);
    let hs = g31_families().into_iter().flatten().collect();
    Arrangement::new(f, 4, hs).expect("distinct").with_name("g31")
}

/// The first two families of [`g31_families`].
pub fn g29() -> Arrangement {
    let f = CyclotomicField::new(4);
    let [a, b, _, _] = g31_families();
    Arrangement::new(f, 4, a.into_iter().chain(b).collect())
        .expect("distinct")
        .with_name("g29")
}

const G33_RES_A1: [[&str; 4]; 28] = [
    ["1", "0", "0", "0"],
    ["1", "1", "0", "0"],
    ["1", "1", "1", "0"],
    ["1", "1", "1", "1"],
    ["0", "1", "0", "0"],
    ["0", "1", "1", "0"],
    ["0", "1", "1", "1"],
    ["0", "0", "1", "0"],
    ["0", "0", "1", "1"],
    ["0", "0", "0", "1"],
    ["z^2", "0", "-1", "z^2"],
    ["1", "0", "-1", "z^2"],
    ["2z", "2z+z^2", "z", "-z^2"],
    ["-1", "z+2z^2", "z^2", "-1"],
    ["z", "0", "-1", "z^2"],
    ["2", "-2z-z^2", "1", "-z^2"],
    ["z", "z-z^2", "2z", "z"],
    ["z^2", "z^2-1", "-1", "z^2"],
    ["z^2", "-z+z^2", "2z^2", "z^2"],
    ["z^2", "0", "-z", "z^2"],
    ["z^2", "0", "-z^2", "1"],
    ["z^2", "0", "-1", "z"],
    ["2z", "z-z^2", "-2z^2", "-z^2"],
    ["z", "2z+z^2", "-1", "z^2"],
    ["-2z^2", "z-z^2", "2z", "z"],
    ["-1", "2z+z^2", "z", "-z^2"],
    ["2z", "z-z^2", "z", "-z^2"],
    ["2z", "2z+z^2", "z", "-1"],
];

/// The 18th row as it is usually printed. With this entry the arrangement
/// has `χ = t⁴−28t³+278t²−1078t+827`, which does not split, so it cannot be
/// the (free) restriction; the only small single-entry change that restores
/// the exponents `{1,7,9,11}` is the second coordinate `z^2-1` used above.
pub const G33_RES_A1_ROW18_AS_PRINTED: [&str; 4] = ["z^2", "z-2z^2", "-1", "z^2"];

/// Positions (1-based) of the six hyperplanes removed along the free
/// filtration of the `A_1` restriction of `A(G33)`.
pub const G33_RES_A1_DELETIONS: [usize; 6] = [5, 6, 7, 13, 25, 28];

/// The restriction of `A(G33)` to a hyperplane, over `ℚ(ζ_3)`, with its
/// deletion sequence (0-based indices) and the two hyperplanes added after
/// it.
pub fn g33_res_a1() -> (Arrangement, Vec<usize>, Vec<Hyperplane>) {
    let f = CyclotomicField::new(3);
    let hs = G33_RES_A1.iter().map(|r| parse_row(f, r)).collect();
    let a = Arrangement::new(f, 4, hs).expect("distinct").with_name("g33_res_a1");
    let n = G33_RES_A1_DELETIONS.iter().map(|&i| i - 1).collect();
    let adds = vec![
        parse_row(f, &["-2z-3z^2", "3", "2", "1"]),
        parse_row(f, &["z", "0", "2", "1"]),
    ];
    (a, n, adds)
}

/// A model of `A(G34)` over `ℚ(ζ_3)`: the 45 hyperplanes
/// `x_i − ζ^b x_j` of `A(G(3,3,6))` and the 81 hyperplanes
/// `(1, ζ^{a_2}, …, ζ^{a_6})^⊥` with `a_2 + ⋯ + a_6 ≡ 0 (mod 3)`.
pub fn g34_model() -> Arrangement {
    let f = CyclotomicField::new(3);
    let mut hs = monomial_over(f, 3, 6, 0)
        .expect("valid parameters")
        .hyperplanes()
        .to_vec();
    for code in 0..81u32 {
        let mut a = [0i64; 5];
        let mut c = code;
        for x in a[..4].iter_mut() {
            *x = (c % 3) as i64;
            c /= 3;
        }
        a[4] = (3 - a[..4].iter().sum::<i64>() % 3) % 3;
        let mut v = vec![f.one()];
        v.extend(a.iter().map(|&e| f.zeta_pow(e)));
        hs.push(hyperplane(v));
    }
    Arrangement::new(f, 6, hs).expect("distinct").with_name("g34")
}

/// The point whose localization in [`g34_model`] is `A(G33)`.
pub fn g33_witness() -> Vec<FieldElement> {
    vec![CyclotomicField::new(3).one(); 6]
}

/// Hyperplanes of `a` through the point `v`.
pub fn localize_at_point(a: &Arrangement, v: &[FieldElement]) -> Result<Arrangement> {
    if v.len() != a.dim() {
        return Err(Error::Dimension {
            expected: a.dim(),
            got: v.len(),
        });
    }
    let hs = a
        .hyperplanes()
        .iter()
        .filter(|h| h.eval(v).is_zero())
        .cloned()
        .collect();
    Arrangement::new(a.field(), a.dim(), hs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(monomial(3, 3, 0).unwrap().len(), 9);
        assert_eq!(monomial(4, 4, 0).unwrap().len(), 24);
        assert_eq!(monomial(3, 3, 3).unwrap().len(), 12);
        assert!(monomial(1, 3, 0).is_err());
        assert!(monomial(3, 3, 4).is_err());
        assert_eq!(g24().len(), 21);
        assert_eq!(g24_resolution().len(), 12);
        assert_eq!(g24_a12().len(), 33);
        let fam = g31_families();
        assert_eq!(fam.iter().map(Vec::len).collect::<Vec<_>>(), vec![24, 16, 4, 16]);
        assert_eq!(g31().len(), 60);
        assert_eq!(g29().len(), 40);
        let (a, n, i) = g33_res_a1();
        assert_eq!((a.len(), a.rank(), n.len(), i.len()), (28, 4, 6, 2));
        assert_eq!(a.hyperplane(0), &Hyperplane::coordinate(a.field(), 4, 0));
    }

    #[test]
    fn omega_satisfies_its_quadratic() {
        let w = omega();
        let f = w.field();
        // ω² + ω + 2 = 0
        assert!(w.mul(&w).add(&w).add(&f.from_int(2)).is_zero());
    }
}
