//! The reflection arrangement of G31: its partition into 15 blocks of four
//! hyperplanes, the six copies of A(G29) inside it, the trichotomy of its
//! rank-2 localizations, and its free filtration subarrangements.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bitset::BitSet;
use crate::catalog::builders;
use crate::error::{Error, Result};
use crate::field::EchelonBasis;
use crate::freeness::certificate::sorted;
use crate::freeness::{
    condition_star, deletion_step, find_free_filtration, sweep, verify_filtration, Budget,
    DeletionStep, Exponents, FactRegistry, FiltrationSearch, Universe,
};
use crate::lattice::CharPoly;

/// `exp A(G31)`.
pub const EXPONENTS: [u64; 4] = [1, 13, 17, 29];

/// The exponents `{1, 13, 17, 29 − n}` of `A ∖ N` with `|N| = n` along a
/// free filtration.
pub fn ladder_exponents(n: usize) -> Exponents {
    sorted(vec![1, 13, 17, 29 - n as u64])
}

/// Four hyperplanes of `A(G31)`, as universe indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Block {
    pub hyperplanes: [usize; 4],
}

#[derive(Clone, Debug, Serialize)]
pub struct Partition15 {
    pub blocks: Vec<Block>,
    /// Block index of every hyperplane.
    pub block_of: Vec<usize>,
    /// The six stars, as five block indices each.
    pub stars: Vec<[usize; 5]>,
    /// The two stars containing each block: block `b` is `B_{ij}` with
    /// `labels[b] = (i, j)`, `i < j`.
    pub labels: Vec<(usize, usize)>,
    /// `M_i`: the union of the blocks of star `i`.
    #[serde(skip)]
    pub m: Vec<BitSet>,
}

impl Partition15 {
    pub fn label_of(&self, h: usize) -> (usize, usize) {
        self.labels[self.block_of[h]]
    }

    /// The star `i` whose complement `A ∖ M_i` equals `b`, if any.
    pub fn g29_copy(&self, u: &Universe, b: &BitSet) -> Option<usize> {
        self.m.iter().position(|m| u.full().difference(m) == *b)
    }

    /// A text grid of the blocks `B_ij = M_i ∩ M_j`, one row per `i`.
    pub fn grid(&self, u: &Universe) -> String {
        let mut cell = BTreeMap::new();
        for (b, &(i, j)) in self.labels.iter().enumerate() {
            cell.insert((i, j), b);
        }
        let mut out = String::new();
        for i in 0..6 {
            let _ = write!(out, "M{}:", i + 1);
            for j in i + 1..6 {
                let b = cell[&(i, j)];
                let hs: Vec<String> = self.blocks[b]
                    .hyperplanes
                    .iter()
                    .map(|h| h.to_string())
                    .collect();
                let _ = write!(out, "  M{}∩M{}=[{}]", i + 1, j + 1, hs.join(","));
            }
            out.push('\n');
        }
        for (b, block) in self.blocks.iter().enumerate() {
            let (i, j) = self.labels[b];
            let _ = writeln!(out, "B{}{}:", i + 1, j + 1);
            for &h in &block.hyperplanes {
                let _ = writeln!(out, "  {h:>2}  {}", u.text(h));
            }
        }
        out
    }
}

/// Blocks: four hyperplanes, any two of which lie in a common rank-2 flat
/// with six hyperplanes, whose covectors span the whole space.
pub fn compute_blocks(u: &Universe) -> Result<Vec<Block>> {
    let n = u.len();
    let l = u.lattice();
    let mut six = vec![BitSet::new(n); n];
    for &x in l.rank_layer(2) {
        let m = &l.flat(x).members;
        if m.len() == 6 {
            for h in m.iter() {
                for k in m.iter().filter(|&k| k != h) {
                    six[h].insert(k);
                }
            }
        }
    }
    let spans = |hs: &[usize]| {
        let mut e = EchelonBasis::new();
        for &h in hs {
            e.insert(u.arrangement().hyperplane(h).covector());
        }
        e.rank() == u.dim()
    };
    let mut found = BTreeSet::new();
    for h in 0..n {
        let p: Vec<usize> = six[h].iter().filter(|&k| k > h).collect();
        for (i, &a) in p.iter().enumerate() {
            for (j, &b) in p.iter().enumerate().skip(i + 1) {
                if !six[a].contains(b) {
                    continue;
                }
                for &c in &p[j + 1..] {
                    if six[a].contains(c) && six[b].contains(c) && spans(&[h, a, b, c]) {
                        found.insert([h, a, b, c]);
                    }
                }
            }
        }
    }
    if found.len() != 15 {
        return Err(Error::ConstructionMismatch(format!(
            "{} blocks instead of 15",
            found.len()
        )));
    }
    let mut seen = BitSet::new(n);
    for block in &found {
        for &h in block {
            if seen.contains(h) {
                return Err(Error::ConstructionMismatch(format!(
                    "hyperplane {h} lies in two blocks"
                )));
            }
            seen.insert(h);
        }
    }
    if seen.len() != n {
        return Err(Error::ConstructionMismatch(format!(
            "blocks cover {} of {n} hyperplanes",
            seen.len()
        )));
    }
    Ok(found.into_iter().map(|hyperplanes| Block { hyperplanes }).collect())
}

fn cliques(adj: &[Vec<bool>], size: usize) -> Vec<Vec<usize>> {
    fn grow(adj: &[Vec<bool>], size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        let start = cur.last().map_or(0, |&c| c + 1);
        for v in start..adj.len() {
            if cur.iter().all(|&c| adj[c][v]) {
                cur.push(v);
                grow(adj, size, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    grow(adj, size, &mut Vec::new(), &mut out);
    out
}

/// Stars: the maximal 5-cliques of the graph on blocks in which two blocks
/// are adjacent when a rank-2 flat with three hyperplanes meets both.
pub fn compute_stars(u: &Universe, blocks: Vec<Block>) -> Result<Partition15> {
    let n = u.len();
    let l = u.lattice();
    let mut block_of = vec![usize::MAX; n];
    for (b, block) in blocks.iter().enumerate() {
        for &h in &block.hyperplanes {
            block_of[h] = b;
        }
    }
    let nb = blocks.len();
    let mut adj = vec![vec![false; nb]; nb];
    for &x in l.rank_layer(2) {
        let m = &l.flat(x).members;
        if m.len() != 3 {
            continue;
        }
        let bs: Vec<usize> = m.iter().map(|h| block_of[h]).collect();
        for &p in &bs {
            for &q in &bs {
                if p != q {
                    adj[p][q] = true;
                }
            }
        }
    }
    let mismatch = |m: String| Err(Error::ConstructionMismatch(m));
    if !cliques(&adj, 6).is_empty() {
        return mismatch("the block graph has a 6-clique".into());
    }
    let stars: Vec<[usize; 5]> = cliques(&adj, 5)
        .into_iter()
        .map(|c| c.try_into().expect("five blocks"))
        .collect();
    if stars.len() != 6 {
        return mismatch(format!("{} stars instead of 6", stars.len()));
    }
    let mut labels = Vec::with_capacity(nb);
    for b in 0..nb {
        let s: Vec<usize> = (0..6).filter(|&i| stars[i].contains(&b)).collect();
        if s.len() != 2 {
            return mismatch(format!("block {b} lies in {} stars", s.len()));
        }
        labels.push((s[0], s[1]));
    }
    let m: Vec<BitSet> = stars
        .iter()
        .map(|star| {
            BitSet::from_indices(n, star.iter().flat_map(|&b| blocks[b].hyperplanes))
        })
        .collect();
    let g29_chi = CharPoly::from_roots(&ladder_exponents(20));
    for (i, mi) in m.iter().enumerate() {
        let rest = u.full().difference(mi);
        if rest.len() != 40 {
            return mismatch(format!("|A ∖ M_{}| = {}", i + 1, rest.len()));
        }
        let chi = u.charpoly(&rest);
        if chi != g29_chi {
            return Err(Error::Validation {
                name: format!("A ∖ M_{}", i + 1),
                msg: format!("χ = {chi}, expected {g29_chi}"),
            });
        }
    }
    Ok(Partition15 {
        blocks,
        block_of,
        stars,
        labels,
        m,
    })
}

/// `A(G31)` with its partition and a fact registry holding `exp A(G31)`.
pub struct G31 {
    pub universe: Arc<Universe>,
    pub partition: Partition15,
    pub registry: FactRegistry,
}

impl G31 {
    pub fn new() -> Result<Self> {
        let a = builders::g31();
        let universe = Universe::new(a.clone())?;
        let chi = universe.charpoly(&universe.full());
        if chi != CharPoly::from_roots(&EXPONENTS) {
            return Err(Error::Validation {
                name: "g31".into(),
                msg: format!("χ = {chi}"),
            });
        }
        let blocks = compute_blocks(&universe)?;
        let partition = compute_stars(&universe, blocks)?;
        let registry = FactRegistry::new();
        registry.insert_catalog(&a, EXPONENTS.to_vec(), "g31")?;
        Ok(G31 {
            universe,
            partition,
            registry,
        })
    }

    pub fn full(&self) -> BitSet {
        self.universe.full()
    }

    pub fn texts(&self, b: &BitSet) -> Vec<String> {
        b.iter().map(|h| self.universe.text(h).to_string()).collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TrichotomyViolation {
    pub hyperplane: usize,
    pub block: (usize, usize),
    pub flat: Vec<usize>,
    pub blocks: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TrichotomyReport {
    /// Pairs `(H, X)` with `X` a rank-2 flat through `H`.
    pub pairs: usize,
    /// Pairs in case (1) `|A_X| = 6`, (2) `|A_X| = 3`, (3) `|A_X| = 2`.
    pub case_counts: [usize; 3],
    /// `(six, three, two)` flats through a hyperplane → number of
    /// hyperplanes with that tally.
    pub per_hyperplane: BTreeMap<String, usize>,
    pub violations: Vec<TrichotomyViolation>,
}

fn disjoint(a: (usize, usize), b: (usize, usize)) -> bool {
    a.0 != b.0 && a.0 != b.1 && a.1 != b.0 && a.1 != b.1
}

/// Which case `(H, X)` falls in, or `None` if its block pattern fits none.
fn classify(own: (usize, usize), others: &[(usize, usize)]) -> Option<usize> {
    match others.len() {
        5 => {
            let same = others.iter().filter(|&&l| l == own).count();
            let mut rest: BTreeMap<(usize, usize), usize> = BTreeMap::new();
            for &l in others.iter().filter(|&&l| l != own) {
                *rest.entry(l).or_insert(0) += 1;
            }
            let ls: Vec<_> = rest.iter().collect();
            let ok = same == 1
                && ls.len() == 2
                && ls.iter().all(|(_, &c)| c == 2)
                && disjoint(own, *ls[0].0)
                && disjoint(own, *ls[1].0)
                && disjoint(*ls[0].0, *ls[1].0);
            ok.then_some(0)
        }
        2 => {
            let (a, b) = (others[0], others[1]);
            let set = |l: (usize, usize)| BTreeSet::from([l.0, l.1]);
            let (s, sa, sb) = (set(own), set(a), set(b));
            let ia: Vec<_> = s.intersection(&sa).collect();
            let ib: Vec<_> = s.intersection(&sb).collect();
            let ka: Vec<_> = sa.difference(&s).collect();
            let kb: Vec<_> = sb.difference(&s).collect();
            let ok = ia.len() == 1 && ib.len() == 1 && ia != ib && ka.len() == 1 && ka == kb;
            ok.then_some(1)
        }
        1 => disjoint(own, others[0]).then_some(2),
        _ => None,
    }
}

/// Classifies every rank-2 flat through every hyperplane by the block
/// labels of its hyperplanes.
pub fn trichotomy_check(u: &Universe, p: &Partition15) -> TrichotomyReport {
    let l = u.lattice();
    let mut report = TrichotomyReport {
        pairs: 0,
        case_counts: [0; 3],
        per_hyperplane: BTreeMap::new(),
        violations: Vec::new(),
    };
    for h in 0..u.len() {
        let own = p.label_of(h);
        let mut tally = [0usize; 3];
        for &x in u.rank2_through(h) {
            let members = &l.flat(x as usize).members;
            let others: Vec<(usize, usize)> =
                members.iter().filter(|&k| k != h).map(|k| p.label_of(k)).collect();
            report.pairs += 1;
            match classify(own, &others) {
                Some(case) => {
                    tally[case] += 1;
                    report.case_counts[case] += 1;
                }
                None => report.violations.push(TrichotomyViolation {
                    hyperplane: h,
                    block: own,
                    flat: members.to_vec(),
                    blocks: others,
                }),
            }
        }
        let key = format!("{}/{}/{}", tally[0], tally[1], tally[2]);
        *report.per_hyperplane.entry(key).or_insert(0) += 1;
    }
    report
}

/// The characterization of free filtration subarrangements `A ∖ N`:
/// `N ⊆ M_i` for some `i`, or `|N| ≤ 13` and `N` satisfies condition (∗).
pub fn ffsa_predict(u: &Universe, p: &Partition15, n: &BitSet) -> bool {
    p.m.iter().any(|m| n.is_subset(m)) || (n.len() <= 13 && condition_star(u, &u.full(), n))
}

/// `N = ⋃_{H' ∈ B ∖ {H}} A_{H ∩ H'} ∖ {H'}` for the block `B` of `H`.
pub fn minimal_form(u: &Universe, p: &Partition15, h: usize) -> BitSet {
    let l = u.lattice();
    let mut n = BitSet::new(u.len());
    let block = &p.blocks[p.block_of[h]];
    for &k in block.hyperplanes.iter().filter(|&&k| k != h) {
        let x = u
            .rank2_through(h)
            .iter()
            .map(|&x| &l.flat(x as usize).members)
            .find(|m| m.contains(k))
            .expect("two hyperplanes span a rank-2 flat");
        for j in x.iter().filter(|&j| j != k) {
            n.insert(j);
        }
    }
    n
}

#[derive(Clone, Debug, Serialize)]
pub struct MinimalFormReport {
    pub hyperplane: usize,
    pub size: usize,
    pub condition_star: bool,
    pub predicted: bool,
    /// `max |Ã^K|` over `K ∈ Ã = A ∖ N`.
    pub max_restriction: usize,
    pub exponents: Exponents,
    pub charpoly_matches: bool,
}

pub fn minimal_form_report(g: &G31, h: usize) -> MinimalFormReport {
    let u = &g.universe;
    let n = minimal_form(u, &g.partition, h);
    let rest = g.full().difference(&n);
    let e = ladder_exponents(n.len());
    MinimalFormReport {
        hyperplane: h,
        size: n.len(),
        condition_star: condition_star(u, &g.full(), &n),
        predicted: ffsa_predict(u, &g.partition, &n),
        max_restriction: rest.iter().map(|k| u.restriction_size(&rest, k)).max().unwrap_or(0),
        charpoly_matches: u.charpoly(&rest) == CharPoly::from_roots(&e),
        exponents: e,
    }
}

/// Searches for a free filtration from `A(G31)` down to `A ∖ N`.
pub fn find_filtration(g: &G31, n: &BitSet, budget: &Budget) -> FiltrationSearch {
    find_free_filtration(
        &g.universe,
        &g.full(),
        &EXPONENTS.to_vec(),
        n,
        &g.registry,
        budget,
    )
}

#[derive(Clone, Debug, Serialize)]
pub struct LadderRun {
    pub star: usize,
    pub order: Vec<usize>,
    pub steps: usize,
    /// Every step had exponents `{1, 13, 17, 29 − i}`.
    pub exponents_ok: bool,
    pub failure: Option<String>,
}

impl LadderRun {
    pub fn passed(&self) -> bool {
        self.failure.is_none() && self.exponents_ok && self.steps == 20
    }
}

/// Deletes each `M_i` from `A(G31)` along `orders` seeded random orders
/// and certifies every step.
pub fn filtration_ladder(g: &G31, seed: u64, orders: usize, budget: &Budget) -> Vec<LadderRun> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut runs = Vec::new();
    for (i, m) in g.partition.m.iter().enumerate() {
        for _ in 0..orders {
            let mut order = m.to_vec();
            order.shuffle(&mut rng);
            let r = verify_filtration(&g.universe, &g.full(), &order, &g.registry, budget);
            let exponents_ok = r
                .steps
                .iter()
                .all(|s| s.exponents == ladder_exponents(s.index));
            runs.push(LadderRun {
                star: i,
                order,
                steps: r.steps.len(),
                exponents_ok,
                failure: r.failure.map(|f| format!("step {}: {}", f.index, f.reason)),
            });
        }
    }
    runs
}

#[derive(Clone, Debug, Serialize)]
pub struct MinimalDeletions {
    pub star: usize,
    pub size: usize,
    pub exponents: Exponents,
    /// Deletions that keep the arrangement free (expected none).
    pub free: Vec<usize>,
    pub undecided: Vec<usize>,
    /// Failure reason → number of deletions.
    pub reasons: BTreeMap<String, usize>,
}

/// For every copy `A ∖ M_i` of `A(G29)`: the outcome of each single deletion.
pub fn minimal_deletions(g: &G31, budget: &Budget) -> Vec<MinimalDeletions> {
    let u = &g.universe;
    let e = ladder_exponents(20);
    g.partition
        .m
        .iter()
        .enumerate()
        .map(|(i, m)| {
            let b = g.full().difference(m);
            let mut out = MinimalDeletions {
                star: i,
                size: b.len(),
                exponents: e.clone(),
                free: Vec::new(),
                undecided: Vec::new(),
                reasons: BTreeMap::new(),
            };
            for h in b.iter() {
                match deletion_step(u, &b, &e, h, &g.registry, budget) {
                    DeletionStep::Ok { .. } => out.free.push(h),
                    DeletionStep::Undecided(_) => out.undecided.push(h),
                    DeletionStep::Fails(r) => {
                        // group by the shape of the reason, not the hyperplane
                        let key = r.split(',').next().unwrap_or(&r).to_string();
                        *out.reasons.entry(key).or_insert(0) += 1;
                    }
                }
            }
            out
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossValidateConfig {
    pub seed: u64,
    /// Every `N` up to this size is checked.
    pub exhaustive_max: usize,
    /// Random `N` per size above `exhaustive_max`, half uniform and half
    /// grown inside condition (∗).
    pub random_per_size: usize,
    pub max_size: usize,
    pub node_cap: usize,
}

impl Default for CrossValidateConfig {
    fn default() -> Self {
        CrossValidateConfig {
            seed: 0,
            exhaustive_max: 3,
            random_per_size: 200,
            max_size: 13,
            node_cap: crate::freeness::DEFAULT_NODE_CAP,
        }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SizeTally {
    pub checked: usize,
    pub predicted_free: usize,
    pub found_free: usize,
    pub inconclusive: usize,
    pub mismatches: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Mismatch {
    pub n: Vec<usize>,
    pub predicted: bool,
    pub search: FiltrationSearch,
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossValidateReport {
    pub config: CrossValidateConfig,
    pub by_size: BTreeMap<usize, SizeTally>,
    pub mismatches: Vec<Mismatch>,
    pub minimal: Vec<MinimalDeletions>,
}

impl CrossValidateReport {
    pub fn checked(&self) -> usize {
        self.by_size.values().map(|t| t.checked).sum()
    }

    pub fn inconclusive(&self) -> usize {
        self.by_size.values().map(|t| t.inconclusive).sum()
    }

    /// No mismatch, and no copy of `A(G29)` loses a hyperplane freely.
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
            && self
                .minimal
                .iter()
                .all(|m| m.free.is_empty() && m.undecided.is_empty())
    }
}

/// Grows a random `N` of the given size keeping condition (∗), or returns
/// what it reached when no hyperplane can be added.
pub fn grow_star(u: &Universe, size: usize, rng: &mut impl Rng) -> BitSet {
    let full = u.full();
    let mut n = BitSet::new(u.len());
    while n.len() < size {
        let options: Vec<usize> = (0..u.len())
            .filter(|&h| !n.contains(h))
            .filter(|&h| {
                let mut m = n.clone();
                m.insert(h);
                condition_star(u, &full, &m)
            })
            .collect();
        let Some(&h) = options.choose(rng) else { break };
        n.insert(h);
    }
    n
}

fn subsets_up_to(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..k {
        let mut next = Vec::new();
        for s in &layer {
            let start = s.last().map_or(0, |&l: &usize| l + 1);
            for h in start..n {
                let mut t = s.clone();
                t.push(h);
                next.push(t);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out.remove(0);
    out
}

/// Compares [`ffsa_predict`] with an exhaustive search for a free
/// filtration on every small `N` and on seeded random `N`, and checks that
/// no copy of `A(G29)` has a free single deletion.
pub fn ffsa_cross_validate(g: &G31, cfg: &CrossValidateConfig) -> CrossValidateReport {
    let u = &g.universe;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut samples: Vec<BitSet> = subsets_up_to(u.len(), cfg.exhaustive_max)
        .into_iter()
        .map(|s| BitSet::from_indices(u.len(), s))
        .collect();
    let all: Vec<usize> = (0..u.len()).collect();
    for size in cfg.exhaustive_max + 1..=cfg.max_size {
        for k in 0..cfg.random_per_size {
            let n = if k % 2 == 0 {
                BitSet::from_indices(u.len(), all.choose_multiple(&mut rng, size).copied())
            } else {
                grow_star(u, size, &mut rng)
            };
            samples.push(n);
        }
    }
    let mut report = CrossValidateReport {
        config: cfg.clone(),
        by_size: BTreeMap::new(),
        mismatches: Vec::new(),
        minimal: Vec::new(),
    };
    for n in samples {
        let predicted = ffsa_predict(u, &g.partition, &n);
        let search = find_filtration(g, &n, &Budget::new(cfg.node_cap));
        let t = report.by_size.entry(n.len()).or_default();
        t.checked += 1;
        t.predicted_free += predicted as usize;
        let found = match &search {
            FiltrationSearch::Found { .. } => Some(true),
            FiltrationSearch::Impossible => Some(false),
            FiltrationSearch::Inconclusive { .. } => None,
        };
        match found {
            None => t.inconclusive += 1,
            Some(f) => {
                t.found_free += f as usize;
                if f != predicted {
                    t.mismatches += 1;
                    report.mismatches.push(Mismatch {
                        n: n.to_vec(),
                        predicted,
                        search,
                    });
                }
            }
        }
    }
    report.minimal = minimal_deletions(g, &Budget::new(cfg.node_cap));
    report
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepSample {
    pub label: String,
    pub removed: Vec<usize>,
    pub size: usize,
    pub exponents: Exponents,
    /// The sample was certified by a free filtration from `A(G31)`.
    pub filtration_ok: bool,
    pub external_candidates: usize,
    pub internal_candidates: usize,
    pub survivors: Vec<String>,
    pub internal_survivors: usize,
    pub complete: bool,
}

impl SweepSample {
    pub fn passed(&self) -> bool {
        self.filtration_ok && self.complete && self.survivors.is_empty()
    }
}

/// Free filtration subarrangements to sweep: `A` itself, the six copies of
/// `A(G29)`, `A ∖ N` for `N` of minimal form, and seeded random states
/// between them.
pub fn ffsa_samples(g: &G31, seed: u64, count: usize) -> Vec<(String, BitSet)> {
    let u = &g.universe;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![("A".to_string(), BitSet::new(u.len()))];
    for (i, m) in g.partition.m.iter().enumerate() {
        out.push((format!("A∖M{}", i + 1), m.clone()));
    }
    for _ in 0..3 {
        let h = rng.gen_range(0..u.len());
        out.push((format!("minimal form at {h}"), minimal_form(u, &g.partition, h)));
    }
    let mut k = 0;
    while out.len() < count {
        if k % 2 == 0 {
            let i = rng.gen_range(0..6);
            let size = rng.gen_range(1..20);
            let mut m = g.partition.m[i].to_vec();
            m.shuffle(&mut rng);
            out.push((
                format!("{size} from M{}", i + 1),
                BitSet::from_indices(u.len(), m[..size].iter().copied()),
            ));
        } else {
            let size = rng.gen_range(1..=13);
            let n = grow_star(u, size, &mut rng);
            out.push((format!("(∗) of size {}", n.len()), n));
        }
        k += 1;
    }
    out.truncate(count);
    out
}

/// Certifies each sample `A ∖ N` by a free filtration and sweeps every
/// hyperplane outside `A(G31)` that could be added to it.
pub fn ffsa_no_addition_sweep(g: &G31, seed: u64, count: usize, budget: &Budget) -> Result<Vec<SweepSample>> {
    let u = &g.universe;
    let mut out = Vec::new();
    for (label, n) in ffsa_samples(g, seed, count) {
        let b = g.full().difference(&n);
        let e = ladder_exponents(n.len());
        let f = verify_filtration(u, &g.full(), &n.to_vec(), &g.registry, budget);
        let filtration_ok = f.is_valid() && *f.final_exponents() == e;
        let r = sweep(u, &b, &e)?;
        out.push(SweepSample {
            label,
            removed: n.to_vec(),
            size: b.len(),
            exponents: e,
            filtration_ok,
            external_candidates: r.external_candidates,
            internal_candidates: r.internal_candidates,
            survivors: r.survivors,
            internal_survivors: r.internal_survivors.len(),
            complete: r.complete,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classify_patterns() {
        assert_eq!(classify((0, 1), &[(0, 1), (2, 3), (2, 3), (4, 5), (4, 5)]), Some(0));
        assert_eq!(classify((0, 1), &[(0, 1), (2, 3), (2, 3), (2, 4), (2, 4)]), None);
        assert_eq!(classify((0, 1), &[(0, 2), (1, 2)]), Some(1));
        assert_eq!(classify((0, 1), &[(1, 2), (0, 2)]), Some(1));
        assert_eq!(classify((0, 1), &[(0, 2), (1, 3)]), None);
        assert_eq!(classify((0, 1), &[(2, 3)]), Some(2));
        assert_eq!(classify((0, 1), &[(1, 3)]), None);
    }

    #[test]
    fn small_subsets() {
        let s = subsets_up_to(4, 2);
        assert_eq!(s.len(), 4 + 6);
        assert_eq!(ladder_exponents(20), vec![1, 9, 13, 17]);
        assert_eq!(ladder_exponents(13), vec![1, 13, 16, 17]);
    }
}
