//! A master arrangement with its full lattice. Subarrangements are bitsets
//! over its hyperplanes; their lattices, characteristic polynomials and
//! restrictions are read off the master lattice without new linear algebra.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::arrangement::{Arrangement, Hyperplane};
use crate::bitset::BitSet;
use crate::error::Result;
use crate::lattice::{CharPoly, Lattice, DEFAULT_FLAT_BUDGET};

use super::addition::ExternalLine;
use super::certificate::Membership;

/// `A^H` for one hyperplane `H` of the universe, with the index in `A^H` of
/// the trace of every hyperplane (`None` at `H`).
pub struct Restriction {
    pub universe: Arc<Universe>,
    pub trace: Vec<Option<usize>>,
}

pub struct Universe {
    arr: Arrangement,
    lattice: Lattice,
    texts: Vec<String>,
    downsets: Vec<Vec<u32>>,
    /// Rank-2 flats through each hyperplane.
    rank2_through: Vec<Vec<u32>>,
    restrictions: Vec<OnceLock<std::result::Result<Restriction, String>>>,
    flat_budget: usize,
    pub(crate) lines: OnceLock<Vec<ExternalLine>>,
    pub(crate) if_memo: Mutex<HashMap<BitSet, Membership>>,
    pub(crate) df_memo: Mutex<HashMap<BitSet, Membership>>,
}

impl std::fmt::Debug for Universe {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Universe({:?}, {} flats)", self.arr, self.lattice.len())
    }
}

impl Universe {
    pub fn new(arr: Arrangement) -> Result<Arc<Self>> {
        Self::with_budget(arr, DEFAULT_FLAT_BUDGET)
    }

    pub fn with_budget(arr: Arrangement, flat_budget: usize) -> Result<Arc<Self>> {
        let lattice = Lattice::build(&arr, None, flat_budget)?;
        let downsets = (0..lattice.len())
            .map(|x| lattice.downset(x).into_iter().map(|y| y as u32).collect())
            .collect();
        let mut rank2_through = vec![Vec::new(); arr.len()];
        for &x in lattice.rank_layer(2) {
            for h in lattice.flat(x).members.iter() {
                rank2_through[h].push(x as u32);
            }
        }
        let texts = arr.hyperplanes().iter().map(Hyperplane::text).collect();
        let restrictions = (0..arr.len()).map(|_| OnceLock::new()).collect();
        Ok(Arc::new(Universe {
            arr,
            lattice,
            texts,
            downsets,
            rank2_through,
            restrictions,
            flat_budget,
            lines: OnceLock::new(),
            if_memo: Mutex::new(HashMap::new()),
            df_memo: Mutex::new(HashMap::new()),
        }))
    }

    pub fn arrangement(&self) -> &Arrangement {
        &self.arr
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn len(&self) -> usize {
        self.arr.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arr.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.arr.dim()
    }

    pub fn text(&self, h: usize) -> &str {
        &self.texts[h]
    }

    pub fn full(&self) -> BitSet {
        BitSet::full(self.len(), self.len())
    }

    pub fn index_of(&self, h: &Hyperplane) -> Option<usize> {
        self.arr.index_of(h)
    }

    /// The subarrangement as a standalone arrangement, in index order.
    pub fn materialize(&self, b: &BitSet) -> Arrangement {
        self.arr.subarrangement(&b.to_vec())
    }

    /// `flag[x]` is true iff the flat `x` of the universe is a flat of `B`,
    /// i.e. `B_X` is not contained in any flat strictly below `X`.
    pub fn flat_flags(&self, b: &BitSet) -> Vec<bool> {
        let l = &self.lattice;
        let mut flags = vec![false; l.len()];
        flags[0] = true;
        for (x, flag) in flags.iter_mut().enumerate().skip(1) {
            let bx = b.intersection(&l.flat(x).members);
            if bx.is_empty() {
                continue;
            }
            *flag = l
                .lower_covers(x)
                .iter()
                .all(|&z| !bx.is_subset(&l.flat(z).members));
        }
        flags
    }

    pub fn rank(&self, b: &BitSet) -> usize {
        if b.is_empty() {
            return 0;
        }
        let flags = self.flat_flags(b);
        (0..self.lattice.len())
            .filter(|&x| flags[x])
            .map(|x| self.lattice.flat(x).rank)
            .max()
            .unwrap_or(0)
    }

    /// `(X, |B_X|)` for the rank-2 flats of `B`.
    pub fn rank2_of(&self, b: &BitSet) -> Vec<(usize, usize)> {
        self.lattice
            .rank_layer(2)
            .iter()
            .filter_map(|&x| {
                let k = b.intersection_len(&self.lattice.flat(x).members);
                (k >= 2).then_some((x, k))
            })
            .collect()
    }

    pub fn rank2_through(&self, h: usize) -> &[u32] {
        &self.rank2_through[h]
    }

    /// `|B^H|` for `H ∈ B`: the number of rank-2 flats of `B` through `H`.
    pub fn restriction_size(&self, b: &BitSet, h: usize) -> usize {
        self.rank2_through[h]
            .iter()
            .filter(|&&x| b.intersection_len(&self.lattice.flat(x as usize).members) >= 2)
            .count()
    }

    /// `χ(B)` from the master lattice.
    pub fn charpoly(&self, b: &BitSet) -> CharPoly {
        let dim = self.dim();
        let n = b.len();
        if n == 0 {
            return CharPoly::monomial(dim);
        }
        if self.lattice.top_rank() <= 3 {
            // χ = t^ℓ − n t^{ℓ−1} + s t^{ℓ−2} − c t^{ℓ−3} with χ(1) = 0 when
            // rank B = 3, where s sums |B_X| − 1 over the rank-2 flats.
            let r2 = self.rank2_of(b);
            let s: i64 = r2.iter().map(|&(_, k)| k as i64 - 1).sum();
            let rank = match r2.len() {
                0 if n == 1 => 1,
                0 => unreachable!("two hyperplanes span a rank-2 flat"),
                1 if r2[0].1 == n => 2,
                _ => 3,
            };
            let mut c = vec![0i64; dim + 1];
            c[dim] = 1;
            c[dim - 1] = -(n as i64);
            if rank >= 2 {
                c[dim - 2] = s;
            }
            if rank == 3 {
                c[dim - 3] = -(1 - n as i64 + s);
            }
            return CharPoly::new(c);
        }
        let flags = self.flat_flags(b);
        let mut mu = vec![0i64; self.lattice.len()];
        let mut coeffs = vec![0i64; dim + 1];
        mu[0] = 1;
        coeffs[dim] = 1;
        for x in 1..self.lattice.len() {
            if !flags[x] {
                continue;
            }
            let v: i64 = self.downsets[x]
                .iter()
                .filter(|&&y| flags[y as usize])
                .map(|&y| mu[y as usize])
                .sum();
            mu[x] = -v;
            coeffs[dim - self.lattice.flat(x).rank] += mu[x];
        }
        CharPoly::new(coeffs)
    }

    /// The restriction universe at `H`, built on first use.
    pub fn restriction(&self, h: usize) -> Result<&Restriction> {
        let r = self.restrictions[h].get_or_init(|| {
            let (arr, trace) = self
                .arr
                .restrict_with_map(self.arr.hyperplane(h))
                .map_err(|e| e.to_string())?;
            let universe = Universe::with_budget(arr, self.flat_budget).map_err(|e| e.to_string())?;
            Ok(Restriction { universe, trace })
        });
        r.as_ref()
            .map_err(|e| crate::error::Error::Budget(e.clone()))
    }

    /// `B^H` as a subarrangement of the restriction universe at `H`.
    pub fn restrict(&self, b: &BitSet, h: usize) -> Result<(Arc<Universe>, BitSet)> {
        let r = self.restriction(h)?;
        let mut out = BitSet::new(r.universe.len());
        for k in b.iter() {
            if let Some(t) = r.trace[k] {
                out.insert(t);
            }
        }
        Ok((r.universe.clone(), out))
    }

    /// Irreducible components of `B` as index classes of the universe.
    pub fn components(&self, b: &BitSet) -> Vec<Vec<usize>> {
        let idx = b.to_vec();
        let sub = self.arr.subarrangement(&idx);
        sub.irreducible_components()
            .into_iter()
            .map(|c| c.into_iter().map(|i| idx[i]).collect())
            .collect()
    }

    pub fn is_irreducible(&self, b: &BitSet) -> bool {
        !b.is_empty() && self.components(b).len() == 1
    }

    /// For `B` of rank 3: a rank-2 flat of `B` sharing a hyperplane of `B`
    /// with every other rank-2 flat of `B`, which makes it modular.
    pub fn modular_rank2(&self, b: &BitSet) -> Option<usize> {
        let r2 = self.rank2_of(b);
        let sets: Vec<BitSet> = r2
            .iter()
            .map(|&(x, _)| b.intersection(&self.lattice.flat(x).members))
            .collect();
        // a modular point lies on many lines; try the largest first
        let mut order: Vec<usize> = (0..r2.len()).collect();
        order.sort_by_key(|&i| (std::cmp::Reverse(r2[i].1), r2[i].0));
        order.into_iter().find_map(|i| {
            sets.iter()
                .enumerate()
                .all(|(j, s)| i == j || !s.is_disjoint(&sets[i]))
                .then_some(r2[i].0)
        })
    }

    /// Hyperplanes of `B` ordered for deletion searches: descending `|B^H|`,
    /// ties by covector text.
    pub fn deletion_order(&self, b: &BitSet) -> Vec<(usize, usize)> {
        let mut hs: Vec<(usize, usize)> =
            b.iter().map(|h| (h, self.restriction_size(b, h))).collect();
        hs.sort_by(|a, c| c.1.cmp(&a.1).then_with(|| self.texts[a.0].cmp(&self.texts[c.0])));
        hs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::builders;
    use crate::lattice::charpoly;

    #[test]
    fn subarrangement_charpolys_match_direct_computation() {
        let u = Universe::new(builders::g24()).unwrap();
        let mut b = u.full();
        assert_eq!(u.charpoly(&b), CharPoly::from_roots(&[1, 9, 11]));
        for h in [0, 5, 13, 20] {
            b.remove(h);
            let direct = charpoly(&u.materialize(&b)).unwrap();
            assert_eq!(u.charpoly(&b), direct);
        }
        let m = builders::monomial(3, 3, 3).unwrap();
        let u = Universe::new(m.product(&crate::arrangement::Arrangement::boolean(m.field(), 1)).unwrap()).unwrap();
        let mut b = u.full();
        for h in [12, 0, 4, 9] {
            b.remove(h);
            assert_eq!(u.charpoly(&b), charpoly(&u.materialize(&b)).unwrap());
            assert_eq!(u.rank(&b), u.materialize(&b).rank());
        }
    }

    #[test]
    fn restriction_sizes_match_traces() {
        let u = Universe::new(builders::g24()).unwrap();
        let mut b = u.full();
        b.remove(3);
        b.remove(17);
        for h in b.iter() {
            let (ru, rb) = u.restrict(&b, h).unwrap();
            let direct = u.materialize(&b).restrict(u.arrangement().hyperplane(h)).unwrap();
            assert_eq!(rb.len(), u.restriction_size(&b, h));
            assert_eq!(ru.materialize(&rb).key(), direct.key());
        }
    }
}
