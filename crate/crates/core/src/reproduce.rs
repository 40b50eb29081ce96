//! The reproduction checks, numbered 1 to 12, grouped into sections.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arrangement::{Arrangement, Hyperplane};
use crate::bitset::BitSet;
use crate::catalog::{self, builders};
use crate::error::Result;
use crate::field::{CyclotomicField, FieldElement, Rational};
use crate::freeness::{
    cert_verify, certify, divisionally_free, exponents_from_charpoly, if_search,
    inductively_free, product_verdict, recursively_free, sweep, sweep_in, verify_filtration,
    verify_resolution, Budget, Certificate, FactRegistry, Universe, Verdict,
};
use crate::g31::{self, G31};
use crate::lattice::{charpoly, Lattice, Profile, DEFAULT_FLAT_BUDGET};
use crate::poly::CharPoly;

pub const SECTIONS: [(&str, &[usize]); 6] = [
    ("g24", &[1, 2]),
    ("g31", &[3, 4, 5, 6, 7, 11]),
    ("g33", &[8]),
    ("restrictions", &[9]),
    ("monomial", &[10]),
    ("properties", &[12]),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// The data the check depends on did not pass its gate.
    Blocked,
}

#[derive(Clone, Debug, Serialize)]
pub struct Outcome {
    pub id: usize,
    pub title: &'static str,
    pub status: Status,
    /// What was checked and what was found, one line each.
    pub notes: Vec<String>,
    /// Checks that did not hold.
    pub failures: Vec<String>,
    pub seconds: f64,
    pub limit_seconds: u64,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// `criterion N: PASS|FAIL|BLOCKED title (time)` plus the first failure.
    pub fn line(&self) -> String {
        let tag = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Blocked => "BLOCKED",
        };
        let mut s = format!(
            "criterion {:>2}: {tag} {} ({:.1}s, limit {}s)",
            self.id, self.title, self.seconds, self.limit_seconds
        );
        if let Some(f) = self.failures.first() {
            s.push_str(&format!(" -- {f}"));
        }
        s
    }
}

#[derive(Default)]
struct Log {
    notes: Vec<String>,
    failures: Vec<String>,
    blocked: bool,
}

impl Log {
    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        let what = what.into();
        if ok {
            self.notes.push(format!("ok: {what}"));
        } else {
            self.failures.push(what);
        }
    }

    fn eq<T: PartialEq + std::fmt::Display>(&mut self, what: &str, got: T, want: T) {
        let ok = got == want;
        self.check(ok, format!("{what}: got {got}, expected {want}"));
    }
}

pub const TITLES: [(&str, u64); 12] = [
    ("chi(A(G24)) = (t-1)(t-9)(t-11)", 10),
    ("G24 resolution table and supersolvable A_12", 120),
    ("chi and rank-2 profile of A(G31)", 300),
    ("G31 partition, six G29 copies, trichotomy", 300),
    ("free filtration ladder over every M_i", 600),
    ("no free addition to A(G31)", 1800),
    ("no free addition to A(G29) and sampled FFSAs; G29 is minimal", 1800),
    ("G33 invariants and no free addition", 1800),
    ("free filtration of the (A(G33), A1) restriction", 600),
    ("A(G(3,3,3)) not IF but RF", 300),
    ("A(G31) divisionally free", 300),
    ("property suites", 300),
];

/// Runs one check.
pub fn run(id: usize, seed: u64) -> Outcome {
    let (title, limit) = TITLES[id - 1];
    let t = Instant::now();
    let mut log = Log::default();
    let r = match id {
        1 => c1(&mut log),
        2 => c2(&mut log),
        3 => c3(&mut log),
        4 => c4(&mut log),
        5 => c5(&mut log, seed),
        6 => c6(&mut log),
        7 => c7(&mut log, seed),
        8 => c8(&mut log),
        9 => c9(&mut log),
        10 => c10(&mut log),
        11 => c11(&mut log),
        12 => c12(&mut log, seed),
        _ => unreachable!("criteria are numbered 1 to 12"),
    };
    if let Err(e) = r {
        log.failures.push(format!("error: {e}"));
    }
    let seconds = t.elapsed().as_secs_f64();
    if seconds > limit as f64 {
        log.failures.push(format!("took {seconds:.1}s, limit {limit}s"));
    }
    let status = if log.blocked {
        Status::Blocked
    } else if log.failures.is_empty() {
        Status::Pass
    } else {
        Status::Fail
    };
    Outcome {
        id,
        title,
        status,
        notes: log.notes,
        failures: log.failures,
        seconds,
        limit_seconds: limit,
    }
}

/// The criteria of the named sections, in order; all of them if empty.
pub fn criteria_for(sections: &[String]) -> std::result::Result<Vec<usize>, String> {
    if sections.is_empty() {
        return Ok((1..=12).collect());
    }
    let mut ids = Vec::new();
    for s in sections {
        let (_, c) = SECTIONS
            .iter()
            .find(|(n, _)| n == s)
            .ok_or_else(|| format!("unknown section {s:?}"))?;
        ids.extend_from_slice(c);
    }
    ids.sort_unstable();
    ids.dedup();
    Ok(ids)
}

fn roots(e: &[u64]) -> CharPoly {
    CharPoly::from_roots(e)
}

fn c1(log: &mut Log) -> Result<()> {
    let a = builders::g24();
    log.eq("|A(G24)|", a.len(), 21);
    log.eq("χ(A(G24))", charpoly(&a)?, roots(&[1, 9, 11]));
    Ok(())
}

const RESOLUTION_EXPONENTS: [([u64; 3], [u64; 2]); 12] = [
    ([1, 10, 11], [1, 11]),
    ([1, 11, 11], [1, 11]),
    ([1, 11, 12], [1, 11]),
    ([1, 11, 13], [1, 11]),
    ([1, 12, 13], [1, 13]),
    ([1, 13, 13], [1, 13]),
    ([1, 13, 14], [1, 13]),
    ([1, 13, 15], [1, 13]),
    ([1, 14, 15], [1, 15]),
    ([1, 15, 15], [1, 15]),
    ([1, 15, 16], [1, 15]),
    ([1, 15, 17], [1, 15]),
];

fn c2(log: &mut Log) -> Result<()> {
    let a = builders::g24();
    let res = builders::g24_resolution();
    let mut all = a.hyperplanes().to_vec();
    all.extend(res.iter().cloned());
    let a12 = Arrangement::new(a.field(), 3, all)?;
    let u = Universe::new(a12.clone())?;
    let reg = FactRegistry::new();
    reg.insert_catalog(&a, vec![1, 9, 11], "g24")?;
    let start = BitSet::from_indices(u.len(), 0..21);
    let adds: Vec<usize> = (21..33).collect();
    let r = verify_resolution(&u, &start, &adds, &reg, &Budget::default());
    log.check(r.is_valid(), format!("every addition certified ({:?})", r.failure.as_ref().map(|f| &f.reason)));
    log.eq("rows", r.rows.len(), 12);
    for (row, (e, er)) in r.rows.iter().zip(RESOLUTION_EXPONENTS) {
        log.check(
            row.exponents == e && row.restriction_exponents == er,
            format!(
                "row {}: exp A_j {:?} / exp A_j^H_j {:?}, table {:?} / {:?}",
                row.index, row.exponents, row.restriction_exponents, e, er
            ),
        );
    }
    let l = u.lattice();
    let f = a.field();
    let mut x = BitSet::new(u.len());
    for v in [[1, 0, 0], [0, 1, 0], [1, 1, 0], [-1, 1, 0]] {
        x.insert(a12.index_of(&Hyperplane::from_ints(f, &v)?).expect("in A(G24)"));
    }
    for i in 21..33 {
        x.insert(i);
    }
    let id = l.find(&x);
    log.check(id.is_some_and(|id| l.flat(id).rank == 2), "X is a rank-2 flat of A_12");
    log.check(id.is_some_and(|id| l.is_modular(id)), "X is modular");
    let chain = l.supersolvable_chain(1_000_000)?;
    log.check(chain.is_some(), "A_12 is supersolvable");
    Ok(())
}

fn c3(log: &mut Log) -> Result<()> {
    let a = builders::g31();
    let mut l = Lattice::build(&a, None, DEFAULT_FLAT_BUDGET)?;
    log.eq("χ(A(G31))", l.charpoly(), roots(&g31::EXPONENTS));
    log.eq(
        "rank-2 profile",
        l.rank2_profile(),
        Profile::from_pairs(&[(2, 360), (3, 320), (6, 30)]),
    );
    log.note(format!("flats by rank {:?}", l.counts_by_rank()));
    Ok(())
}

fn c4(log: &mut Log) -> Result<()> {
    let g = G31::new()?;
    let u = &g.universe;
    let p = &g.partition;
    log.eq("blocks", p.blocks.len(), 15);
    let mut covered = BitSet::new(u.len());
    let mut disjoint = true;
    for b in &p.blocks {
        for &h in &b.hyperplanes {
            disjoint &= !covered.contains(h);
            covered.insert(h);
        }
    }
    log.check(disjoint && covered.len() == 60, "blocks of 4 partition the 60 hyperplanes");
    log.eq("stars", p.stars.len(), 6);
    for (i, m) in p.m.iter().enumerate() {
        let rest = g.full().difference(m);
        log.eq(&format!("|A∖M{}|", i + 1), rest.len(), 40);
        log.eq(&format!("χ(A∖M{})", i + 1), u.charpoly(&rest), roots(&[1, 9, 13, 17]));
    }
    let t = g31::trichotomy_check(u, p);
    log.eq("trichotomy violations", t.violations.len(), 0);
    log.note(format!(
        "trichotomy: {} pairs, cases {:?}, per hyperplane {:?}",
        t.pairs, t.case_counts, t.per_hyperplane
    ));
    Ok(())
}

fn c5(log: &mut Log, seed: u64) -> Result<()> {
    let g = G31::new()?;
    let runs = g31::filtration_ladder(&g, seed, 5, &Budget::default());
    log.eq("runs", runs.len(), 30);
    for r in &runs {
        log.check(
            r.passed(),
            format!(
                "M{} order {:?}: {} steps, ladder {}{}",
                r.star + 1,
                &r.order[..3],
                r.steps,
                r.exponents_ok,
                r.failure.as_ref().map(|f| format!(", {f}")).unwrap_or_default()
            ),
        );
    }
    Ok(())
}

fn c6(log: &mut Log) -> Result<()> {
    let a = builders::g31();
    let u = Universe::new(a)?;
    let r = sweep(&u, &u.full(), &g31::EXPONENTS)?;
    log.note(format!(
        "{} external candidates, obstruction sums {:?}",
        r.external_candidates, r.obstruction_histogram
    ));
    log.check(r.complete, format!("sweep complete (max single flat {} < {:?})", r.max_single_flat, r.min_admissible_exponent));
    log.check(r.survivors.is_empty(), format!("external survivors {:?}", r.survivors));
    let split = r.splitting_charpolys(true, 3);
    let want = roots(&[1, 15, 16, 29]);
    log.check(
        !split.is_empty() && split.iter().all(|c| *c == want),
        format!(
            "splitting χ over candidates through ≥ 3 flats: {:?}",
            split.iter().map(|c| c.to_string()).collect::<Vec<_>>()
        ),
    );
    let classes = r
        .tested
        .iter()
        .filter(|t| !t.internal && t.splits && t.flat_sizes.len() >= 3)
        .map(|t| t.fingerprint())
        .collect::<std::collections::BTreeSet<_>>();
    log.note(format!("fingerprint classes among them: {}", classes.len()));
    Ok(())
}

fn c7(log: &mut Log, seed: u64) -> Result<()> {
    let g = G31::new()?;
    let u = &g.universe;
    let g29 = builders::g29();
    let b = BitSet::from_indices(
        u.len(),
        g29.hyperplanes().iter().map(|h| u.index_of(h).expect("G29 ⊆ G31")),
    );
    log.check(g.partition.g29_copy(u, &b).is_some(), "A(G29) is one of the six copies");
    let r = sweep_in(u, &b, &[1, 9, 13, 17], Some(u.arrangement()))?;
    log.check(r.complete, "G29 sweep complete");
    log.check(
        r.survivors.is_empty(),
        format!(
            "A(G29): external survivors outside A(G31) {:?} ({} inside A(G31))",
            r.survivors,
            r.ambient_survivors.len()
        ),
    );
    let samples = g31::ffsa_no_addition_sweep(&g, seed, 20, &Budget::default())?;
    log.eq("samples", samples.len(), 20);
    for s in &samples {
        log.check(
            s.passed(),
            format!(
                "{} (|Ã| = {}): filtration {}, {} external candidates, survivors {:?}",
                s.label, s.size, s.filtration_ok, s.external_candidates, s.survivors
            ),
        );
    }
    for m in g31::minimal_deletions(&g, &Budget::default()) {
        log.check(
            m.free.is_empty() && m.undecided.is_empty() && m.size == 40,
            format!(
                "A∖M{}: single deletions free {:?}, undecided {:?}, reasons {:?}",
                m.star + 1,
                m.free,
                m.undecided,
                m.reasons
            ),
        );
    }
    Ok(())
}

fn c8(log: &mut Log) -> Result<()> {
    let e = catalog::lookup("g33")?;
    let (a, v) = match catalog::build_entry(&e) {
        Ok(x) => x,
        Err(err) => {
            log.blocked = true;
            log.failures.push(format!("blocked by data gate: {err}"));
            return Ok(());
        }
    };
    for g in &v.gates {
        log.note(g.clone());
    }
    log.note(format!("source: {}", v.source));
    let u = Universe::new(a)?;
    let l = u.lattice();
    log.eq("rank-2 profile", l.rank2_profile(), Profile::from_pairs(&[(2, 270), (3, 240)]));
    let exps = [1, 7, 9, 13, 15];
    log.eq("χ(A(G33))", u.charpoly(&u.full()), roots(&exps));
    let r = sweep(&u, &u.full(), &exps)?;
    log.note(format!(
        "{} external candidates, obstruction sums {:?}, {} fingerprint classes",
        r.external_candidates,
        r.obstruction_histogram,
        r.fingerprint_classes.len()
    ));
    log.check(r.complete, format!("sweep complete (max single flat {} < {:?})", r.max_single_flat, r.min_admissible_exponent));
    log.check(r.survivors.is_empty(), format!("survivors {:?}", r.survivors));
    let split = r.splitting_charpolys(true, 2);
    log.check(split.is_empty(), format!("splitting χ over candidates through ≥ 2 flats: {split:?}"));
    Ok(())
}

fn c9(log: &mut Log) -> Result<()> {
    let (a, n, adds) = builders::g33_res_a1();
    log.eq("|A|", a.len(), 28);
    let mut all = a.hyperplanes().to_vec();
    all.extend(adds.iter().cloned());
    let u = Universe::new(Arrangement::new(a.field(), 4, all)?)?;
    let start = BitSet::from_indices(u.len(), 0..28);
    let reg = FactRegistry::new();
    let budget = Budget::default();
    let f = verify_filtration(&u, &start, &n, &reg, &budget);
    log.check(
        f.is_valid(),
        format!("6-step filtration {:?} → {:?}", f.start_exponents, f.final_exponents()),
    );
    for s in &f.steps {
        log.note(format!("delete H{}: exp {:?}, restriction {:?}", n[s.index - 1] + 1, s.exponents, s.restriction_exponents));
    }
    let mut rest = start.clone();
    for &h in &n {
        rest.remove(h);
    }
    let r = verify_resolution(&u, &rest, &[28, 29], &reg, &budget);
    log.check(r.is_valid(), "additions of I1 and I2 certified");
    for row in &r.rows {
        log.note(format!("add I{}: exp {:?}, restriction {:?}", row.index, row.exponents, row.restriction_exponents));
    }
    let mut fin = rest.clone();
    fin.insert(28);
    fin.insert(29);
    log.eq("|Ã ∪ {I1, I2}|", fin.len(), 24);
    let m = if_search(&u, &fin, &budget);
    log.check(m.is_member(), format!("final arrangement inductively free: {} ({} nodes)", m.label(), budget.used()));
    if let Some(c) = m.certificate() {
        let ok = cert_verify(&u.materialize(&fin), c);
        log.check(ok.is_ok(), format!("certificate replays: {ok:?}"));
    }
    Ok(())
}

fn c10(log: &mut Log) -> Result<()> {
    let a = builders::monomial(3, 3, 0)?;
    let m = inductively_free(&a, &Budget::default())?;
    log.check(m.is_non_member(), format!("A(G(3,3,3)) inductive search: {}", m.label()));
    let pool: Vec<Hyperplane> = (0..3).map(|i| Hyperplane::coordinate(a.field(), 3, i)).collect();
    let r = recursively_free(&a, &pool, 3, &Budget::default())?;
    log.check(r.is_member(), format!("A(G(3,3,3)) with pool E1, E2, E3: {}", r.label()));
    if let Some(c) = r.certificate() {
        let ok = cert_verify(&a, c);
        log.check(ok.is_ok(), format!("certificate replays: {ok:?}"));
    }
    Ok(())
}

fn c11(log: &mut Log) -> Result<()> {
    let a = builders::g31();
    let m = divisionally_free(&a, &Budget::default())?;
    log.check(m.is_member(), format!("A(G31) divisional search: {}", m.label()));
    let Some(c) = m.certificate() else {
        return Ok(());
    };
    let ok = cert_verify(&a, c);
    log.check(ok.is_ok(), format!("certificate replays: {ok:?}"));
    match c {
        Certificate::Division { hyperplane, restriction, .. } => {
            let h = a
                .hyperplanes()
                .iter()
                .find(|h| h.text() == *hyperplane)
                .expect("certificate names a hyperplane of A");
            let r = a.restrict(h)?;
            let chi_r = charpoly(&r)?;
            log.eq("χ(A^H)", chi_r.clone(), roots(&[1, 13, 17]));
            log.check(chi_r.divides(&charpoly(&a)?), "χ(A^H) divides χ(A)");
            log.check(
                restriction.exponents() == Some(&vec![1, 13, 17]),
                "A^H certified free with exponents {1, 13, 17}",
            );
        }
        other => log.check(false, format!("top rule is {}, expected division", other.rule())),
    }
    Ok(())
}

fn whitney(log: &mut Log, name: &str, a: &Arrangement) -> Result<()> {
    let chi = charpoly(a)?;
    let mut ok = true;
    for h in a.hyperplanes() {
        let d = charpoly(&a.delete(h)?)?;
        let r = charpoly(&a.restrict(h)?)?;
        ok &= chi == d.sub(&r);
    }
    log.check(ok, format!("Whitney recursion on every H of {name} ({})", a.len()));
    Ok(())
}

fn random_element(f: CyclotomicField, rng: &mut impl Rng) -> FieldElement {
    let c: Vec<Rational> = (0..f.degree())
        .map(|_| Rational::new(rng.gen_range(-9..=9), rng.gen_range(1..=6)))
        .collect();
    f.from_coeffs(&c)
}

fn c12(log: &mut Log, seed: u64) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut small = Vec::new();
    for e in catalog::entries() {
        if e.size <= 30 && e.data_file.is_none() {
            small.push((e.name.clone(), catalog::build(&e.name)?));
        }
    }
    for (name, a) in &small {
        whitney(log, name, a)?;
    }
    let g31 = builders::g31();
    for k in 0..4 {
        let size = rng.gen_range(8..=16);
        let idx = rand::seq::index::sample(&mut rng, g31.len(), size).into_vec();
        let sub = g31.subarrangement(&idx);
        whitney(log, &format!("random G31 subarrangement {k}"), &sub)?;
    }

    let mut sign_ok = true;
    let mut pairs_ok = true;
    for (_, a) in &small {
        let mut l = Lattice::build(a, None, DEFAULT_FLAT_BUDGET)?;
        let mu = l.mobius().to_vec();
        for (x, f) in l.flats().iter().enumerate() {
            let signed = if f.rank % 2 == 0 { mu[x] } else { -mu[x] };
            sign_ok &= signed > 0;
        }
        let pairs: usize = l
            .rank_layer(2)
            .iter()
            .map(|&x| {
                let k = l.flat(x).members.len();
                k * (k - 1) / 2
            })
            .sum();
        pairs_ok &= pairs == a.len() * (a.len() - 1) / 2;
    }
    log.check(sign_ok, "(−1)^r(X) μ(X) > 0 on every flat");
    log.check(pairs_ok, "Σ_X∈L2 C(|A_X|, 2) = C(|A|, 2)");

    let mut sums_ok = true;
    let mut verified = 0;
    for (name, a) in &small {
        let u = Universe::new(a.clone())?;
        let v = certify(&u, &u.full(), &FactRegistry::new(), &Budget::new(200_000));
        if let Verdict::Free { exponents, certificate } = &v {
            let sum_ok = exponents.iter().sum::<u64>() == a.len() as u64;
            let roots_ok = exponents_from_charpoly(&charpoly(a)?, a.len()).as_ref() == Some(exponents);
            let replay = cert_verify(a, certificate).is_ok();
            if !(sum_ok && roots_ok && replay) {
                sums_ok = false;
                log.failures.push(format!("{name}: free verdict {exponents:?} inconsistent"));
            }
            verified += 1;
        }
    }
    log.check(sums_ok && verified > 0, format!("Σ exp = |A| and χ roots on {verified} free verdicts"));

    let q1 = CyclotomicField::new(1);
    let b2 = Arrangement::boolean(q1, 2);
    let g24 = builders::g24();
    let a1 = Arrangement::boolean(g24.field(), 1);
    let mut prod_ok = true;
    for (x, y) in [(&b2, &b2), (&a1, &g24)] {
        let p = x.product(y)?;
        prod_ok &= charpoly(&p)? == charpoly(x)?.mul(&charpoly(y)?);
        let vx = certify(&Universe::new(x.clone())?, &BitSet::full(x.len(), x.len()), &FactRegistry::new(), &Budget::default());
        let reg = FactRegistry::new();
        reg.insert_catalog(&g24, vec![1, 9, 11], "g24")?;
        let vy = certify(&Universe::new(y.clone())?, &BitSet::full(y.len(), y.len()), &reg, &Budget::default());
        let vp = product_verdict(x, &vx, y, &vy);
        let mut want: Vec<u64> = vx.exponents().into_iter().chain(vy.exponents()).flatten().copied().collect();
        want.sort_unstable();
        prod_ok &= vp.exponents() == Some(&want);
    }
    log.check(prod_ok, "χ and exponents of products: B2×B2, A1×G24");

    let mut field_ok = true;
    let mut triples = 0;
    for n in [3u32, 4, 7, 12, 1] {
        let f = CyclotomicField::new(n);
        for _ in 0..200 {
            let (a, b, c) = (random_element(f, &mut rng), random_element(f, &mut rng), random_element(f, &mut rng));
            field_ok &= a.add(&b).add(&c) == a.add(&b.add(&c));
            field_ok &= a.mul(&b.add(&c)) == a.mul(&b).add(&a.mul(&c));
            field_ok &= a.mul(&b).mul(&c) == a.mul(&b.mul(&c));
            if !a.is_zero() {
                field_ok &= a.mul(&a.inv().expect("nonzero")).is_one();
            }
            field_ok &= f.parse(&a.to_string()).ok().as_ref() == Some(&a);
            triples += 1;
        }
    }
    log.check(field_ok, format!("field axioms and parse round trip on {triples} triples"));
    Ok(())
}

/// Runs the given criteria in order.
pub fn run_all(ids: &[usize], seed: u64) -> Vec<Outcome> {
    ids.iter().map(|&i| run(i, seed)).collect()
}
