//! Addition obstructions and complete sweeps over candidate hyperplanes.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::arrangement::{Arrangement, Hyperplane};
use crate::bitset::BitSet;
use crate::error::Result;
use crate::field::FieldElement;
use crate::lattice::{CharPoly, Lattice, DEFAULT_FLAT_BUDGET};

use super::certificate::{remove_one, Exponents};
use super::universe::Universe;

/// A hyperplane outside the universe containing at least two of its rank-2
/// flats, with those flats.
#[derive(Clone, Debug)]
pub struct ExternalLine {
    pub hyperplane: Hyperplane,
    pub flats: Vec<usize>,
}

/// `c` with `r1 c_1 + r2 c_2 = 0` nontrivially, if the two vectors are
/// dependent.
fn dependency(r1: &[FieldElement], r2: &[FieldElement]) -> Option<(FieldElement, FieldElement)> {
    let f = r1.first().or(r2.first())?.field();
    let Some(p) = r1.iter().position(|x| !x.is_zero()) else {
        return Some((f.one(), f.zero()));
    };
    // c r1 + r2 = 0 forces c = −r2[p]/r1[p]
    let c = r2[p].neg().div(&r1[p]).expect("nonzero pivot");
    r1.iter()
        .zip(r2)
        .all(|(a, b)| c.mul(a).add(b).is_zero())
        .then(|| (c, f.one()))
}

pub(crate) fn external_lines(u: &Universe) -> &[ExternalLine] {
    u.lines.get_or_init(|| {
        let l = u.lattice();
        let r2 = l.rank_layer(2);
        let found: Vec<(Hyperplane, usize, usize)> = (0..r2.len())
            .into_par_iter()
            .flat_map_iter(|i| {
                let x = l.flat(r2[i]);
                let mut out = Vec::new();
                for &yj in &r2[i + 1..] {
                    let y = l.flat(yj);
                    if !x.members.is_disjoint(&y.members) {
                        continue;
                    }
                    let rows = y.basis.rows();
                    let r1 = x.basis.residual(&rows[0]);
                    let r2v = x.basis.residual(&rows[1]);
                    if let Some((c, d)) = dependency(&r1, &r2v) {
                        let v: Vec<FieldElement> = rows[0]
                            .iter()
                            .zip(&rows[1])
                            .map(|(a, b)| c.mul(a).add(&d.mul(b)))
                            .collect();
                        let h = Hyperplane::new(v).expect("independent basis rows");
                        out.push((h, r2[i], yj));
                    }
                }
                out
            })
            .collect();
        let mut groups: HashMap<Hyperplane, Vec<usize>> = HashMap::new();
        for (h, x, y) in found {
            let g = groups.entry(h).or_default();
            g.push(x);
            g.push(y);
        }
        let mut lines: Vec<ExternalLine> = groups
            .into_iter()
            .map(|(hyperplane, mut flats)| {
                flats.sort_unstable();
                flats.dedup();
                ExternalLine { hyperplane, flats }
            })
            .collect();
        lines.sort_by_cached_key(|l| l.hyperplane.text());
        lines
    })
}

/// A hyperplane that could be added to `B`, with the rank-2 flats of `B`
/// it contains as `(flat id, |B_X|)`.
#[derive(Clone, Debug)]
pub struct Candidate {
    pub hyperplane: Hyperplane,
    /// Its index when it belongs to the universe.
    pub internal: Option<usize>,
    pub flats: Vec<(usize, usize)>,
}

impl Candidate {
    /// `Σ_{X ∈ P_H} (|B_X| − 1)`.
    pub fn obstruction_sum(&self) -> u64 {
        self.flats.iter().map(|&(_, k)| k as u64 - 1).sum()
    }
}

/// All hyperplanes `H ∉ B` containing at least two rank-2 flats of `B`.
/// In dimension 2 there is a single rank-2 flat; the candidates are then
/// the forms `α_i ± α_j` for pairs of hyperplanes of `B`.
pub fn enumerate_candidates(u: &Universe, b: &BitSet) -> Vec<Candidate> {
    let l = u.lattice();
    let size_in_b = |x: usize| b.intersection_len(&l.flat(x).members);
    if u.dim() == 2 {
        return dim2_candidates(u, b);
    }
    let mut out: Vec<Candidate> = external_lines(u)
        .iter()
        .filter_map(|line| {
            let flats: Vec<(usize, usize)> = line
                .flats
                .iter()
                .map(|&x| (x, size_in_b(x)))
                .filter(|&(_, k)| k >= 2)
                .collect();
            (flats.len() >= 2).then(|| Candidate {
                hyperplane: line.hyperplane.clone(),
                internal: None,
                flats,
            })
        })
        .collect();
    for k in 0..u.len() {
        if b.contains(k) {
            continue;
        }
        let flats: Vec<(usize, usize)> = u
            .rank2_through(k)
            .iter()
            .map(|&x| (x as usize, size_in_b(x as usize)))
            .filter(|&(_, s)| s >= 2)
            .collect();
        if flats.len() >= 2 {
            out.push(Candidate {
                hyperplane: u.arrangement().hyperplane(k).clone(),
                internal: Some(k),
                flats,
            });
        }
    }
    out
}

fn dim2_candidates(u: &Universe, b: &BitSet) -> Vec<Candidate> {
    let idx = b.to_vec();
    let top = u.lattice().rank_layer(2).first().copied();
    let mut seen = std::collections::BTreeMap::new();
    for (p, &i) in idx.iter().enumerate() {
        for &j in &idx[p + 1..] {
            let (a, c) = (
                u.arrangement().hyperplane(i).covector(),
                u.arrangement().hyperplane(j).covector(),
            );
            for sign in [1i64, -1] {
                let s = a[0].field().from_int(sign);
                let v: Vec<FieldElement> = a.iter().zip(c).map(|(x, y)| x.add(&s.mul(y))).collect();
                let Ok(h) = Hyperplane::new(v) else { continue };
                let internal = u.index_of(&h);
                if internal.is_some_and(|k| b.contains(k)) {
                    continue;
                }
                seen.entry(h.text()).or_insert(Candidate {
                    hyperplane: h,
                    internal,
                    flats: top.map(|x| vec![(x, b.len())]).unwrap_or_default(),
                });
            }
        }
    }
    seen.into_values().collect()
}

/// The result of the addition test for one hyperplane.
#[derive(Clone, Debug, Serialize)]
pub struct Obstruction {
    pub sum: u64,
    pub flats: usize,
    /// False when `B ∪ H` cannot be free, given `B` free with the stated
    /// exponents.
    pub passes: bool,
}

fn admissible(sum: u64, exps: &[u64], irreducible: bool) -> bool {
    exps.contains(&sum) && !(irreducible && sum == 1)
}

/// The obstruction for adding an arbitrary `H ∉ B` to a free `B`.
pub fn addition_obstruction(u: &Universe, b: &BitSet, exps: &[u64], h: &Hyperplane) -> Obstruction {
    let l = u.lattice();
    let mut sum = 0;
    let mut flats = 0;
    for (x, k) in u.rank2_of(b) {
        if l.flat(x).basis.contains(h.covector()) {
            sum += k as u64 - 1;
            flats += 1;
        }
    }
    Obstruction {
        sum,
        flats,
        passes: admissible(sum, exps, u.is_irreducible(b)),
    }
}

/// One candidate with `χ(B ∪ H)` computed.
#[derive(Clone, Debug, Serialize)]
pub struct Tested {
    pub hyperplane: String,
    pub internal: bool,
    pub obstruction_sum: u64,
    pub obstruction_passes: bool,
    /// `|B_X|` for the rank-2 flats in `H`, descending.
    pub flat_sizes: Vec<usize>,
    /// `χ(B ∪ H)`.
    pub charpoly: CharPoly,
    pub splits: bool,
    /// `χ((B ∪ H)^H)` equals the product over the exponents other than the
    /// obstruction sum.
    pub restriction_matches: bool,
}

impl Tested {
    pub fn survives(&self) -> bool {
        self.obstruction_passes && self.splits && self.restriction_matches
    }

    pub fn fingerprint(&self) -> String {
        let sizes: Vec<String> = self.flat_sizes.iter().map(|s| s.to_string()).collect();
        format!("[{}] {}", sizes.join(","), self.charpoly)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub size: usize,
    pub exponents: Exponents,
    pub external_candidates: usize,
    pub internal_candidates: usize,
    /// Obstruction sum → number of candidates.
    pub obstruction_histogram: BTreeMap<u64, usize>,
    pub tested: Vec<Tested>,
    /// External hyperplanes whose addition is not excluded, outside the
    /// ambient arrangement if one was given.
    pub survivors: Vec<String>,
    /// External survivors that belong to the ambient arrangement.
    pub ambient_survivors: Vec<String>,
    pub internal_survivors: Vec<String>,
    /// `max |B_X| − 1`: the largest sum a hyperplane through at most one
    /// rank-2 flat can reach.
    pub max_single_flat: u64,
    pub min_admissible_exponent: Option<u64>,
    /// The sweep covers every hyperplane, not only those through two flats.
    pub complete: bool,
    /// External candidates grouped by flat sizes and `χ(B ∪ H)`.
    pub fingerprint_classes: Vec<(String, usize)>,
}

impl SweepReport {
    /// The distinct `χ(B ∪ H)` that split, over candidates through at least
    /// `min_flats` rank-2 flats.
    pub fn splitting_charpolys(&self, external_only: bool, min_flats: usize) -> Vec<CharPoly> {
        let mut v: Vec<CharPoly> = self
            .tested
            .iter()
            .filter(|t| t.splits && !(external_only && t.internal))
            .filter(|t| t.flat_sizes.len() >= min_flats)
            .map(|t| t.charpoly.clone())
            .collect();
        v.sort_by_key(|c| c.coeffs().to_vec());
        v.dedup();
        v
    }
}

/// For `B` of rank 4 in a rank-4 universe: `χ((B ∪ H)^H)` for external `H`
/// from the lattice of `B`. The points of the restriction plane are the
/// rank-3 flats `W ⊆ H` of `B`, with `|B_W|` lines less the coincidences
/// from rank-2 flats `X ⊆ H` above `W`, and the lines `Y ∩ H` for the
/// remaining rank-2 flats `Y`, each carrying `|B_Y|` lines.
struct PlaneRestriction {
    /// Rank-3 flats of `B` with `|B_W|`.
    rank3: Vec<(usize, usize)>,
    /// Rank-2 flats of `B` with `|B_Y|`.
    rank2: Vec<(usize, usize)>,
    n: usize,
}

impl PlaneRestriction {
    fn new(u: &Universe, b: &BitSet) -> Option<Self> {
        let l = u.lattice();
        if u.dim() != 4 || l.top_rank() != 4 || u.rank(b) != 4 {
            return None;
        }
        let flags = u.flat_flags(b);
        let rank3 = l
            .rank_layer(3)
            .iter()
            .filter(|&&w| flags[w])
            .map(|&w| (w, b.intersection_len(&l.flat(w).members)))
            .collect();
        Some(PlaneRestriction {
            rank3,
            rank2: u.rank2_of(b),
            n: b.len(),
        })
    }

    fn charpoly(&self, u: &Universe, c: &Candidate) -> CharPoly {
        let l = u.lattice();
        let in_h: HashMap<usize, usize> = c.flats.iter().copied().collect();
        let mut covered: std::collections::HashSet<usize> = std::collections::HashSet::new();
        let mut s: i64 = 0;
        for &(w, kw) in &self.rank3 {
            if !l.flat(w).basis.contains(c.hyperplane.covector()) {
                continue;
            }
            let mut lines = kw;
            for &y in l.lower_covers(w) {
                covered.insert(y);
                if let Some(&k) = in_h.get(&y) {
                    lines -= k - 1;
                }
            }
            s += lines as i64 - 1;
        }
        for &(y, k) in &self.rank2 {
            if !in_h.contains_key(&y) && !covered.contains(&y) {
                s += k as i64 - 1;
            }
        }
        let n = (self.n as u64 - c.obstruction_sum()) as i64;
        CharPoly::new(vec![-(1 - n + s), s, -n, 1])
    }
}

fn restriction_charpoly(
    u: &Arc<Universe>,
    b: &BitSet,
    c: &Candidate,
    plane: Option<&PlaneRestriction>,
) -> Result<CharPoly> {
    match (c.internal, plane) {
        (Some(k), _) => {
            let mut bh = b.clone();
            bh.insert(k);
            let (ru, rb) = u.restrict(&bh, k)?;
            Ok(ru.charpoly(&rb))
        }
        (None, Some(p)) => Ok(p.charpoly(u, c)),
        (None, None) => explicit_restriction_charpoly(u, b, c),
    }
}

fn explicit_restriction_charpoly(u: &Universe, b: &BitSet, c: &Candidate) -> Result<CharPoly> {
    let a = u.materialize(b).add(c.hyperplane.clone())?;
    let r = a.restrict(&c.hyperplane)?;
    let mut l = Lattice::build(&r, None, DEFAULT_FLAT_BUDGET)?;
    Ok(l.charpoly())
}

/// Sweeps every candidate addition to `B`, assumed free with exponents
/// `exps`.
pub fn sweep(u: &Arc<Universe>, b: &BitSet, exps: &[u64]) -> Result<SweepReport> {
    sweep_in(u, b, exps, None)
}

/// As [`sweep`], with survivors lying in `ambient` reported apart.
pub fn sweep_in(
    u: &Arc<Universe>,
    b: &BitSet,
    exps: &[u64],
    ambient: Option<&Arrangement>,
) -> Result<SweepReport> {
    let n = b.len();
    let irreducible = u.is_irreducible(b);
    let chi = u.charpoly(b);
    let cands = enumerate_candidates(u, b);
    let plane = PlaneRestriction::new(u, b);
    let mut histogram = BTreeMap::new();
    for c in &cands {
        *histogram.entry(c.obstruction_sum()).or_insert(0) += 1;
    }
    let tested: Vec<Tested> = cands
        .par_iter()
        .map(|c| -> Result<Tested> {
            let sum = c.obstruction_sum();
            let passes = admissible(sum, exps, irreducible);
            let chi_r = restriction_charpoly(u, b, c, plane.as_ref())?;
            let chi_new = chi.sub(&chi_r);
            let splits = chi_new.integer_roots(n as u64 + 1).is_some();
            let matches = remove_one(exps, sum).is_some_and(|rest| chi_r == CharPoly::from_roots(&rest));
            let mut flat_sizes: Vec<usize> = c.flats.iter().map(|&(_, k)| k).collect();
            flat_sizes.sort_unstable_by(|a, b| b.cmp(a));
            Ok(Tested {
                hyperplane: c.hyperplane.text(),
                internal: c.internal.is_some(),
                obstruction_sum: sum,
                obstruction_passes: passes,
                flat_sizes,
                charpoly: chi_new,
                splits,
                restriction_matches: matches,
            })
        })
        .collect::<Result<_>>()?;
    let mut tested = tested;
    tested.sort_by(|a, b| a.hyperplane.cmp(&b.hyperplane));
    let in_ambient = |t: &str| {
        ambient.is_some_and(|a| a.hyperplanes().iter().any(|h| h.text() == t))
    };
    let (ambient_survivors, survivors): (Vec<String>, Vec<String>) = tested
        .iter()
        .filter(|t| t.survives() && !t.internal)
        .map(|t| t.hyperplane.clone())
        .partition(|t| in_ambient(t));
    let internal_survivors = tested
        .iter()
        .filter(|t| t.survives() && t.internal)
        .map(|t| t.hyperplane.clone())
        .collect();
    let max_single_flat = u
        .rank2_of(b)
        .iter()
        .map(|&(_, k)| k as u64 - 1)
        .max()
        .unwrap_or(0);
    let min_admissible_exponent = exps
        .iter()
        .copied()
        .filter(|&e| admissible(e, exps, irreducible))
        .min();
    let complete = u.dim() > 2 && min_admissible_exponent.is_some_and(|m| max_single_flat < m);
    let mut classes: BTreeMap<String, usize> = BTreeMap::new();
    for t in tested.iter().filter(|t| !t.internal) {
        *classes.entry(t.fingerprint()).or_insert(0) += 1;
    }
    Ok(SweepReport {
        size: n,
        exponents: exps.to_vec(),
        external_candidates: cands.iter().filter(|c| c.internal.is_none()).count(),
        internal_candidates: cands.iter().filter(|c| c.internal.is_some()).count(),
        obstruction_histogram: histogram,
        tested,
        survivors,
        ambient_survivors,
        internal_survivors,
        max_single_flat,
        min_admissible_exponent,
        complete,
        fingerprint_classes: classes.into_iter().collect(),
    })
}

/// Sweeps the candidate additions to a free arrangement with exponents
/// `exps`.
pub fn no_free_addition(a: &Arrangement, exps: &[u64]) -> Result<SweepReport> {
    let u = Universe::new(a.clone())?;
    sweep(&u, &u.full(), exps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::builders;
    use crate::field::CyclotomicField;

    #[test]
    fn plane_restriction_matches_explicit_lattice() {
        let u = Universe::new(builders::g29()).unwrap();
        let mut b = u.full();
        for drop in [None, Some(0), Some(17)] {
            if let Some(h) = drop {
                b.remove(h);
            }
            let plane = PlaneRestriction::new(&u, &b).unwrap();
            let cands = enumerate_candidates(&u, &b);
            for c in cands.iter().filter(|c| c.internal.is_none()).step_by(29) {
                assert_eq!(
                    plane.charpoly(&u, c),
                    explicit_restriction_charpoly(&u, &b, c).unwrap(),
                    "{}",
                    c.hyperplane.text()
                );
            }
        }
    }

    #[test]
    fn boolean2_has_a_free_addition() {
        let a = Arrangement::boolean(CyclotomicField::new(1), 2);
        let r = no_free_addition(&a, &[1, 1]).unwrap();
        assert!(r.survivors.contains(&"1 -1".to_string()), "{:?}", r.survivors);
        assert!(!r.complete);
    }

    #[test]
    fn boolean3_candidates_are_the_missing_planes() {
        let f = CyclotomicField::new(1);
        let a = Arrangement::boolean(f, 3);
        let u = Universe::new(a).unwrap();
        // any two coordinate lines share a coordinate plane
        let c = enumerate_candidates(&u, &u.full());
        assert!(c.is_empty());
    }

    #[test]
    fn obstruction_for_a_generic_plane() {
        let f = CyclotomicField::new(1);
        let a = Arrangement::boolean(f, 3);
        let u = Universe::new(a).unwrap();
        let h = Hyperplane::from_ints(f, &[1, 2, 3]).unwrap();
        let o = addition_obstruction(&u, &u.full(), &[1, 1, 1], &h);
        assert_eq!((o.sum, o.flats), (0, 0));
        assert!(!o.passes);
        let h = Hyperplane::from_ints(f, &[1, 1, 0]).unwrap();
        let o = addition_obstruction(&u, &u.full(), &[1, 1, 1], &h);
        assert_eq!((o.sum, o.flats), (1, 1));
        assert!(o.passes);
    }
}
