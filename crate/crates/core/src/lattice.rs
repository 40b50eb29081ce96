//! Intersection lattices, Möbius functions and characteristic polynomials.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::arrangement::Arrangement;
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::field::{EchelonBasis, FieldElement};
pub use crate::poly::CharPoly;

/// Default cap on the number of flats a lattice build may create.
pub const DEFAULT_FLAT_BUDGET: usize = 2_000_000;

/// A flat `X`, stored as its closed set of hyperplane indices `A_X` and a
/// reduced basis of the span of their covectors.
#[derive(Clone, Debug)]
pub struct Flat {
    pub members: BitSet,
    pub rank: usize,
    pub basis: EchelonBasis,
}

#[derive(Clone, Debug)]
pub struct Lattice {
    dim: usize,
    n: usize,
    flats: Vec<Flat>,
    ranks: Vec<Vec<usize>>,
    index: HashMap<BitSet, usize>,
    lower: Vec<Vec<usize>>,
    upper: Vec<Vec<usize>>,
    complete: bool,
    mobius: Option<Vec<i64>>,
}

/// The covers of one flat: each new flat as (members, basis).
fn expand(a: &Arrangement, x: &Flat, full_rank: usize) -> Vec<(BitSet, EchelonBasis)> {
    let n = a.len();
    if x.rank + 1 == full_rank {
        let mut members = x.members.clone();
        let mut basis = x.basis.clone();
        for h in (0..n).filter(|&i| !x.members.contains(i)) {
            if members == x.members {
                basis.insert(a.hyperplane(h).covector());
            }
            members.insert(h);
        }
        return if members == x.members { Vec::new() } else { vec![(members, basis)] };
    }
    // Residuals against the reduced basis of `X` are canonical coset
    // representatives, so two hyperplanes give the same cover exactly when
    // their residuals are proportional.
    let mut groups: HashMap<Vec<FieldElement>, usize> = HashMap::new();
    let mut out: Vec<(BitSet, EchelonBasis)> = Vec::new();
    for h in (0..n).filter(|&i| !x.members.contains(i)) {
        let v = a.hyperplane(h).covector();
        let mut r = x.basis.residual(v);
        let p = r.iter().position(|c| !c.is_zero()).expect("hyperplane outside the flat");
        let inv = r[p].inv().expect("nonzero");
        for c in r.iter_mut() {
            *c = c.mul(&inv);
        }
        match groups.get(&r) {
            Some(&g) => out[g].0.insert(h),
            None => {
                let mut basis = x.basis.clone();
                basis.insert(v);
                let mut members = x.members.clone();
                members.insert(h);
                groups.insert(r, out.len());
                out.push((members, basis));
            }
        }
    }
    out
}

impl Lattice {
    /// All flats up to `max_rank` (default: the rank of `A`), built rank by
    /// rank. Each flat is expanded by grouping the hyperplanes outside it by
    /// the closure they generate; layers are merged in flat order, so the
    /// result does not depend on the thread count.
    pub fn build(a: &Arrangement, max_rank: Option<usize>, budget: usize) -> Result<Self> {
        let n = a.len();
        let full_rank = a.rank();
        let top = max_rank.map_or(full_rank, |r| r.min(full_rank));
        let bottom = Flat {
            members: BitSet::new(n),
            rank: 0,
            basis: EchelonBasis::new(),
        };
        let mut flats = vec![bottom];
        let mut ranks = vec![vec![0usize]];
        let mut index = HashMap::new();
        index.insert(BitSet::new(n), 0usize);
        let mut lower: Vec<Vec<usize>> = vec![Vec::new()];
        let mut upper: Vec<Vec<usize>> = vec![Vec::new()];
        for r in 1..=top {
            let prev = &ranks[r - 1];
            let expanded: Vec<Vec<(BitSet, EchelonBasis)>> =
                prev.par_iter().map(|&x| expand(a, &flats[x], full_rank)).collect();
            let mut layer: BTreeMap<BitSet, EchelonBasis> = BTreeMap::new();
            let mut edges: Vec<(usize, BitSet)> = Vec::new();
            for (&x, covers) in prev.iter().zip(expanded) {
                for (m, b) in covers {
                    edges.push((x, m.clone()));
                    layer.entry(m).or_insert(b);
                }
            }
            if flats.len() + layer.len() > budget {
                return Err(Error::Budget(format!(
                    "lattice exceeds {budget} flats at rank {r}"
                )));
            }
            let mut ids = Vec::with_capacity(layer.len());
            for (m, b) in layer {
                let id = flats.len();
                index.insert(m.clone(), id);
                flats.push(Flat {
                    members: m,
                    rank: r,
                    basis: b,
                });
                lower.push(Vec::new());
                upper.push(Vec::new());
                ids.push(id);
            }
            for (x, m) in edges {
                let y = index[&m];
                upper[x].push(y);
                lower[y].push(x);
            }
            ranks.push(ids);
        }
        for v in lower.iter_mut().chain(upper.iter_mut()) {
            v.sort_unstable();
            v.dedup();
        }
        Ok(Lattice {
            dim: a.dim(),
            n,
            flats,
            ranks,
            index,
            lower,
            upper,
            complete: top == full_rank,
            mobius: None,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_hyperplanes(&self) -> usize {
        self.n
    }

    /// True when every rank up to the rank of the arrangement was built.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    pub fn flat(&self, id: usize) -> &Flat {
        &self.flats[id]
    }

    pub fn flats(&self) -> &[Flat] {
        &self.flats
    }

    /// Flat ids of rank `r`, ordered by member set.
    pub fn rank_layer(&self, r: usize) -> &[usize] {
        self.ranks.get(r).map_or(&[], Vec::as_slice)
    }

    pub fn top_rank(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn counts_by_rank(&self) -> Vec<usize> {
        self.ranks.iter().map(Vec::len).collect()
    }

    pub fn find(&self, members: &BitSet) -> Option<usize> {
        self.index.get(members).copied()
    }

    pub fn lower_covers(&self, id: usize) -> &[usize] {
        &self.lower[id]
    }

    pub fn upper_covers(&self, id: usize) -> &[usize] {
        &self.upper[id]
    }

    /// Ids of all flats strictly below `id` (as subspaces: strictly larger
    /// flats, i.e. member sets strictly contained in `A_X`).
    pub fn downset(&self, id: usize) -> Vec<usize> {
        let mut seen = BitSet::new(self.flats.len());
        let mut stack: Vec<usize> = self.lower[id].clone();
        let mut out = Vec::new();
        while let Some(y) = stack.pop() {
            if seen.contains(y) {
                continue;
            }
            seen.insert(y);
            out.push(y);
            stack.extend(self.lower[y].iter().copied());
        }
        out.sort_unstable();
        out
    }

    /// `μ(X)` for every flat, by descending-rank dynamic programming:
    /// `μ(V) = 1` and `μ(X) = −Σ_{Y < X} μ(Y)`.
    pub fn mobius(&mut self) -> &[i64] {
        if self.mobius.is_none() {
            let mut mu = vec![0i64; self.flats.len()];
            mu[0] = 1;
            for r in 1..self.ranks.len() {
                let vals: Vec<(usize, i64)> = self.ranks[r]
                    .par_iter()
                    .map(|&x| (x, -self.downset(x).iter().map(|&y| mu[y]).sum::<i64>()))
                    .collect();
                for (x, v) in vals {
                    mu[x] = v;
                }
            }
            self.mobius = Some(mu);
        }
        self.mobius.as_deref().expect("just computed")
    }

    pub fn mobius_values(&self) -> Option<&[i64]> {
        self.mobius.as_deref()
    }

    /// `χ(A; t) = Σ μ(X) t^{dim X}`; needs the complete lattice.
    pub fn charpoly(&mut self) -> CharPoly {
        assert!(self.complete, "characteristic polynomial needs the full lattice");
        let dim = self.dim;
        let mut c = vec![0i64; dim + 1];
        let mu = self.mobius().to_vec();
        for (x, f) in self.flats.iter().enumerate() {
            c[dim - f.rank] += mu[x];
        }
        CharPoly::new(c)
    }

    /// Multiset `{{|A_X| : X of rank 2}}` as size → count.
    pub fn rank2_profile(&self) -> Profile {
        let mut m = BTreeMap::new();
        for &x in self.rank_layer(2) {
            *m.entry(self.flats[x].members.len()).or_insert(0) += 1;
        }
        Profile(m)
    }

    /// The flat with members `A_X ∩ A_Y` if `X + Y` is a flat, i.e. when
    /// `span(A_X ∩ A_Y) = span(A_X) ∩ span(A_Y)`.
    pub fn join(&self, x: usize, y: usize) -> Option<usize> {
        let m = self.flats[x].members.intersection(&self.flats[y].members);
        let z = self.find(&m)?;
        let inter = self.flats[x].basis.intersection_dim(&self.flats[y].basis);
        (self.flats[z].rank == inter).then_some(z)
    }

    pub fn is_modular(&self, x: usize) -> bool {
        (0..self.flats.len()).all(|y| self.join(x, y).is_some())
    }

    /// Searches for a maximal chain of modular flats from the center down to
    /// `V`, trying modular lower covers depth first. Returns the chain from
    /// the top flat down, or `None` when the arrangement is not
    /// supersolvable. `node_cap` bounds the number of modularity tests.
    pub fn supersolvable_chain(&self, node_cap: usize) -> Result<Option<Vec<usize>>> {
        assert!(self.complete, "supersolvability needs the full lattice");
        let top = self.ranks.last().expect("nonempty")[0];
        let mut modular: HashMap<usize, bool> = HashMap::new();
        let mut tests = 0usize;
        let mut chain = vec![top];
        fn go(
            l: &Lattice,
            x: usize,
            chain: &mut Vec<usize>,
            modular: &mut HashMap<usize, bool>,
            tests: &mut usize,
            cap: usize,
        ) -> Result<bool> {
            if l.flats[x].rank <= 1 {
                if x != 0 {
                    chain.push(0);
                }
                return Ok(true);
            }
            for &y in &l.lower[x] {
                let ok = match modular.get(&y) {
                    Some(&v) => v,
                    None => {
                        *tests += 1;
                        if *tests > cap {
                            return Err(Error::Budget(format!(
                                "supersolvability search exceeds {cap} modularity tests"
                            )));
                        }
                        let v = l.is_modular(y);
                        modular.insert(y, v);
                        v
                    }
                };
                if ok {
                    chain.push(y);
                    if go(l, y, chain, modular, tests, cap)? {
                        return Ok(true);
                    }
                    chain.pop();
                }
            }
            Ok(false)
        }
        if go(self, top, &mut chain, &mut modular, &mut tests, node_cap)? {
            Ok(Some(chain))
        } else {
            Ok(None)
        }
    }

    /// JSON view: flats grouped by rank as sorted index arrays, μ values
    /// aligned with them, and the characteristic polynomial when complete.
    pub fn to_json(&mut self) -> serde_json::Value {
        let chi = self.complete.then(|| self.charpoly());
        let mu = self.mobius().to_vec();
        let layers: Vec<serde_json::Value> = self
            .ranks
            .iter()
            .enumerate()
            .map(|(r, ids)| {
                let flats: Vec<Vec<usize>> =
                    ids.iter().map(|&x| self.flats[x].members.to_vec()).collect();
                let mus: Vec<i64> = ids.iter().map(|&x| mu[x]).collect();
                serde_json::json!({"rank": r, "flats": flats, "mobius": mus})
            })
            .collect();
        serde_json::json!({
            "hyperplanes": self.n,
            "dim": self.dim,
            "complete": self.complete,
            "counts": self.counts_by_rank(),
            "ranks": layers,
            "charpoly": chi.as_ref().map(|c| c.coeffs().to_vec()),
            "charpoly_text": chi.map(|c| c.to_string()),
        })
    }
}

/// A multiset of localization sizes, printed as `2^360 3^320 6^30`.
#[derive(Clone, PartialEq, Eq, Default, Serialize)]
pub struct Profile(pub BTreeMap<usize, usize>);

impl Profile {
    pub fn from_pairs(pairs: &[(usize, usize)]) -> Self {
        Profile(pairs.iter().copied().collect())
    }

    pub fn total(&self) -> usize {
        self.0.values().sum()
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(s, c)| format!("{s}^{c}")).collect();
        f.write_str(&parts.join(" "))
    }
}

impl fmt::Debug for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `χ(A)` via the full lattice.
pub fn charpoly(a: &Arrangement) -> Result<CharPoly> {
    let mut l = Lattice::build(a, None, DEFAULT_FLAT_BUDGET)?;
    Ok(l.charpoly())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::Hyperplane;
    use crate::field::CyclotomicField;

    #[test]
    fn boolean_lattice() {
        let f = CyclotomicField::new(1);
        let b3 = Arrangement::boolean(f, 3);
        let mut l = Lattice::build(&b3, None, DEFAULT_FLAT_BUDGET).unwrap();
        assert_eq!(l.len(), 8);
        assert_eq!(l.counts_by_rank(), vec![1, 3, 3, 1]);
        assert_eq!(l.charpoly(), CharPoly::from_roots(&[1, 1, 1]));
        assert_eq!(l.rank2_profile(), Profile::from_pairs(&[(2, 3)]));
        for x in 0..l.len() {
            for y in 0..l.len() {
                assert!(l.join(x, y).is_some());
            }
        }
        assert!(l.supersolvable_chain(1000).unwrap().is_some());
        assert_eq!(charpoly(&Arrangement::empty(f, 3)).unwrap(), CharPoly::monomial(3));
    }

    #[test]
    fn budget_is_reported() {
        let f = CyclotomicField::new(1);
        let b3 = Arrangement::boolean(f, 3);
        assert!(matches!(Lattice::build(&b3, None, 5), Err(Error::Budget(_))));
        let partial = Lattice::build(&b3, Some(1), 5).unwrap();
        assert!(!partial.is_complete());
    }

    #[test]
    fn braid_arrangement() {
        // x_i - x_j in dimension 3, together with nothing else: rank 2
        let f = CyclotomicField::new(1);
        let hs = [[1, -1, 0], [1, 0, -1], [0, 1, -1]]
            .iter()
            .map(|c| Hyperplane::from_ints(f, c).unwrap())
            .collect();
        let a = Arrangement::new(f, 3, hs).unwrap();
        let mut l = Lattice::build(&a, None, 100).unwrap();
        assert_eq!(l.charpoly().to_string(), "t(t-1)(t-2)");
        let x = l.rank_layer(2)[0];
        assert_eq!(l.mobius()[x], 2);
    }
}
