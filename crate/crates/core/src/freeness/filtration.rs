//! Addition–deletion bookkeeping: single steps, free filtrations, and
//! resolutions by added hyperplanes.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::arrangement::{Arrangement, Hyperplane};
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::lattice::CharPoly;

use super::certificate::{
    remove_one, replace_one, single_difference, Certificate, Direction, Exponents, Membership,
    Verdict,
};
use super::registry::{Fact, FactRegistry};
use super::search::{df_search, if_search};
use super::universe::Universe;
use super::Budget;

/// Which of `A`, `A ∖ H`, `A^H` a step inferred.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AdStatus {
    Whole,
    Deletion,
    Restriction,
}

/// Uses two known free members of the triple `(A, A ∖ H, A^H)` from the
/// registry to infer the third, which is recorded. Returns what was
/// inferred, or `None` when fewer than two are known or their exponents do
/// not fit together.
pub fn check_addition_deletion(
    a: &Arrangement,
    h: &Hyperplane,
    registry: &FactRegistry,
) -> Result<Option<(AdStatus, Exponents)>> {
    let del = a.delete(h)?;
    let res = a.restrict(h)?;
    let free = |x: &Arrangement| match registry.lookup(x) {
        Some(Fact::Free {
            exponents,
            certificate,
        }) => Some((exponents, certificate)),
        _ => None,
    };
    let (fa, fd, fr) = (free(a), free(&del), free(&res));
    let text = h.text();
    let inferred = match (fa, fd, fr) {
        (None, Some((ed, cd)), Some((er, cr))) => {
            let Some(b) = single_difference(&ed, &er) else { return Ok(None) };
            let e = replace_one(&ed, b, b + 1).expect("b is an exponent");
            let cert = Certificate::AdditionDeletion {
                direction: Direction::Addition,
                hyperplane: text,
                exponents: e.clone(),
                neighbour: Box::new(cd),
                restriction: Box::new(cr),
            };
            (AdStatus::Whole, a.clone(), e, cert)
        }
        (Some((ea, ca)), None, Some((er, cr))) => {
            let Some(b) = single_difference(&ea, &er) else { return Ok(None) };
            if b == 0 {
                return Ok(None);
            }
            let e = replace_one(&ea, b, b - 1).expect("b is an exponent");
            let cert = Certificate::AdditionDeletion {
                direction: Direction::Deletion,
                hyperplane: text,
                exponents: e.clone(),
                neighbour: Box::new(ca),
                restriction: Box::new(cr),
            };
            (AdStatus::Deletion, del, e, cert)
        }
        (Some((ea, ca)), Some((ed, cd)), None) => {
            // exp A = E ∪ {b}, exp A' = E ∪ {b − 1}
            let mut found = None;
            for &b in ea.iter().filter(|&&b| b > 0) {
                if replace_one(&ea, b, b - 1).as_ref() == Some(&ed) {
                    found = Some(b);
                }
            }
            let Some(b) = found else { return Ok(None) };
            let e = remove_one(&ea, b).expect("b is an exponent");
            let cert = Certificate::RestrictionOfFreePair {
                hyperplane: text,
                exponents: e.clone(),
                parent_hyperplanes: a.hyperplanes().iter().map(Hyperplane::text).collect(),
                parent: Box::new(ca),
                deletion: Box::new(cd),
            };
            (AdStatus::Restriction, res, e, cert)
        }
        _ => return Ok(None),
    };
    let (status, target, e, cert) = inferred;
    registry.insert(
        target.key(),
        Fact::Free {
            exponents: e.clone(),
            certificate: cert,
        },
    )?;
    Ok(Some((status, e)))
}

/// Freeness of `B ⊆ U` from the registry, then the divisional search, then
/// the inductive search.
pub fn certify(u: &Arc<Universe>, b: &BitSet, registry: &FactRegistry, budget: &Budget) -> Verdict {
    let rank = u.rank(b);
    if rank >= 3 {
        if let Some(f) = registry.get_key(&u.materialize(b).key()) {
            return f.to_verdict();
        }
    }
    let mut reasons = Vec::new();
    for m in [df_search(u, b, budget), if_search(u, b, budget)] {
        match m {
            Membership::Member {
                exponents,
                certificate,
            } => {
                return Verdict::Free {
                    exponents,
                    certificate,
                }
            }
            Membership::NonMember {
                certificate: Some(c),
                ..
            } => return Verdict::NonFree { certificate: c },
            Membership::NonMember { reason, .. } | Membership::Unknown { reason } => {
                reasons.push(reason)
            }
        }
    }
    Verdict::Unknown {
        reason: reasons.join("; "),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FiltrationStep {
    /// 1-based position in the deletion sequence.
    pub index: usize,
    pub hyperplane: String,
    /// `|A_i|` after the deletion.
    pub size: usize,
    pub restriction_size: usize,
    /// The exponent of `A_{i−1}` that drops by one.
    pub dropped: u64,
    pub restriction_exponents: Exponents,
    pub exponents: Exponents,
    pub restriction_rule: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct StepFailure {
    pub index: usize,
    pub hyperplane: String,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct FiltrationReport {
    pub start_exponents: Exponents,
    pub steps: Vec<FiltrationStep>,
    pub failure: Option<StepFailure>,
    /// Certificate for the last arrangement reached.
    #[serde(skip)]
    pub certificate: Option<Certificate>,
}

impl FiltrationReport {
    pub fn is_valid(&self) -> bool {
        self.failure.is_none()
    }

    pub fn final_exponents(&self) -> &Exponents {
        self.steps
            .last()
            .map(|s| &s.exponents)
            .unwrap_or(&self.start_exponents)
    }
}

/// One deletion `B ⊋ B ∖ H` along a filtration, given `B` free with `e`.
pub enum DeletionStep {
    Ok {
        dropped: u64,
        restriction_size: usize,
        restriction_exponents: Exponents,
        restriction: Certificate,
    },
    /// `B ∖ H` is not free.
    Fails(String),
    /// The restriction could not be certified either way.
    Undecided(String),
}

pub fn deletion_step(
    u: &Arc<Universe>,
    b: &BitSet,
    e: &Exponents,
    h: usize,
    registry: &FactRegistry,
    budget: &Budget,
) -> DeletionStep {
    let size = u.restriction_size(b, h);
    let d = (b.len() - size) as u64;
    let Some(rest) = remove_one(e, d) else {
        return DeletionStep::Fails(format!(
            "|A^H| = {size}, so |A| − |A^H| = {d} is not an exponent of {e:?}"
        ));
    };
    let (ru, rb) = match u.restrict(b, h) {
        Ok(r) => r,
        Err(err) => return DeletionStep::Undecided(err.to_string()),
    };
    let chi = ru.charpoly(&rb);
    if chi != CharPoly::from_roots(&rest) {
        return DeletionStep::Fails(format!("χ(A^H) = {chi}, expected exponents {rest:?}"));
    }
    match certify(&ru, &rb, registry, budget) {
        Verdict::Free { certificate, .. } => DeletionStep::Ok {
            dropped: d,
            restriction_size: size,
            restriction_exponents: rest,
            restriction: certificate,
        },
        Verdict::NonFree { .. } => DeletionStep::Fails("A^H is not free".into()),
        Verdict::Unknown { reason } => {
            DeletionStep::Undecided(format!("restriction not certified: {reason}"))
        }
    }
}

/// Walks `A = A_0 ⊋ A_1 ⊋ …`, deleting the given hyperplanes of `U` in
/// order from `start`, and certifies each `A_i` by addition–deletion.
pub fn verify_filtration(
    u: &Arc<Universe>,
    start: &BitSet,
    deletions: &[usize],
    registry: &FactRegistry,
    budget: &Budget,
) -> FiltrationReport {
    let (mut e, mut cert) = match certify(u, start, registry, budget) {
        Verdict::Free {
            exponents,
            certificate,
        } => (exponents, certificate),
        other => {
            let reason = match other {
                Verdict::NonFree { .. } => "start arrangement is not free".to_string(),
                Verdict::Unknown { reason } => format!("start arrangement not certified: {reason}"),
                Verdict::Free { .. } => unreachable!(),
            };
            return FiltrationReport {
                start_exponents: Vec::new(),
                steps: Vec::new(),
                failure: Some(StepFailure {
                    index: 0,
                    hyperplane: String::new(),
                    reason,
                }),
                certificate: None,
            };
        }
    };
    let mut report = FiltrationReport {
        start_exponents: e.clone(),
        steps: Vec::new(),
        failure: None,
        certificate: None,
    };
    let mut b = start.clone();
    for (i, &h) in deletions.iter().enumerate() {
        let fail = |reason: String| StepFailure {
            index: i + 1,
            hyperplane: u.text(h).to_string(),
            reason,
        };
        if !b.contains(h) {
            report.failure = Some(fail("hyperplane is not in the arrangement".into()));
            break;
        }
        match deletion_step(u, &b, &e, h, registry, budget) {
            DeletionStep::Ok {
                dropped,
                restriction_size,
                restriction_exponents,
                restriction,
            } => {
                b.remove(h);
                e = replace_one(&e, dropped, dropped - 1).expect("dropped is an exponent");
                assert_eq!(e.iter().sum::<u64>(), b.len() as u64);
                let rule = restriction.rule().to_string();
                cert = Certificate::AdditionDeletion {
                    direction: Direction::Deletion,
                    hyperplane: u.text(h).to_string(),
                    exponents: e.clone(),
                    neighbour: Box::new(cert),
                    restriction: Box::new(restriction),
                };
                report.steps.push(FiltrationStep {
                    index: i + 1,
                    hyperplane: u.text(h).to_string(),
                    size: b.len(),
                    restriction_size,
                    dropped,
                    restriction_exponents,
                    exponents: e.clone(),
                    restriction_rule: rule,
                });
            }
            DeletionStep::Fails(r) | DeletionStep::Undecided(r) => {
                report.failure = Some(fail(r));
                break;
            }
        }
    }
    report.certificate = Some(cert);
    report
}

#[derive(Clone, Debug, Serialize)]
pub struct ResolutionRow {
    pub index: usize,
    pub hyperplane: String,
    pub exponents: Exponents,
    pub restriction_exponents: Exponents,
}

#[derive(Clone, Debug, Serialize)]
pub struct ResolutionReport {
    pub start_exponents: Exponents,
    pub rows: Vec<ResolutionRow>,
    pub failure: Option<StepFailure>,
    #[serde(skip)]
    pub certificate: Option<Certificate>,
}

impl ResolutionReport {
    pub fn is_valid(&self) -> bool {
        self.failure.is_none()
    }
}

/// Adds the given hyperplanes of `U` to `start` in order and certifies
/// each `A_j` by addition from `A_{j−1}` and `A_j^{H_j}`.
pub fn verify_resolution(
    u: &Arc<Universe>,
    start: &BitSet,
    additions: &[usize],
    registry: &FactRegistry,
    budget: &Budget,
) -> ResolutionReport {
    let mut report = ResolutionReport {
        start_exponents: Vec::new(),
        rows: Vec::new(),
        failure: None,
        certificate: None,
    };
    let (mut e, mut cert) = match certify(u, start, registry, budget) {
        Verdict::Free {
            exponents,
            certificate,
        } => (exponents, certificate),
        other => {
            report.failure = Some(StepFailure {
                index: 0,
                hyperplane: String::new(),
                reason: format!("start arrangement not certified free: {other:?}"),
            });
            return report;
        }
    };
    report.start_exponents = e.clone();
    let mut b = start.clone();
    for (j, &h) in additions.iter().enumerate() {
        let fail = |reason: String| StepFailure {
            index: j + 1,
            hyperplane: u.text(h).to_string(),
            reason,
        };
        if b.contains(h) {
            report.failure = Some(fail("hyperplane already present".into()));
            break;
        }
        b.insert(h);
        let (ru, rb) = match u.restrict(&b, h) {
            Ok(r) => r,
            Err(err) => {
                report.failure = Some(fail(err.to_string()));
                break;
            }
        };
        let (f, rcert) = match certify(&ru, &rb, registry, budget) {
            Verdict::Free {
                exponents,
                certificate,
            } => (exponents, certificate),
            other => {
                report.failure = Some(fail(format!("restriction not certified free: {other:?}")));
                break;
            }
        };
        let Some(d) = single_difference(&e, &f) else {
            report.failure = Some(fail(format!(
                "exp A^H = {f:?} is not contained in exp A' = {e:?}"
            )));
            break;
        };
        e = replace_one(&e, d, d + 1).expect("d is an exponent");
        debug_assert_eq!(u.charpoly(&b), CharPoly::from_roots(&e));
        cert = Certificate::AdditionDeletion {
            direction: Direction::Addition,
            hyperplane: u.text(h).to_string(),
            exponents: e.clone(),
            neighbour: Box::new(cert),
            restriction: Box::new(rcert),
        };
        report.rows.push(ResolutionRow {
            index: j + 1,
            hyperplane: u.text(h).to_string(),
            exponents: e.clone(),
            restriction_exponents: f,
        });
    }
    report.certificate = Some(cert);
    report
}

/// Outcome of a search for a free filtration from `A` down to `A ∖ N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum FiltrationSearch {
    /// A deletion order (universe indices) that works.
    Found { order: Vec<usize> },
    /// Every order fails at a step whose deletion cannot be free.
    Impossible,
    Inconclusive { reason: String },
}

struct FfsaSearch<'a> {
    u: &'a Arc<Universe>,
    n: BitSet,
    registry: &'a FactRegistry,
    budget: &'a Budget,
    memo: HashMap<BitSet, FiltrationSearch>,
}

impl FfsaSearch<'_> {
    fn run(&mut self, b: &BitSet, e: &Exponents) -> FiltrationSearch {
        if let Some(r) = self.memo.get(b) {
            return r.clone();
        }
        let r = self.node(b, e);
        self.memo.insert(b.clone(), r.clone());
        r
    }

    fn node(&mut self, b: &BitSet, e: &Exponents) -> FiltrationSearch {
        let left = b.intersection(&self.n);
        if left.is_empty() {
            return FiltrationSearch::Found { order: Vec::new() };
        }
        if !self.budget.tick() {
            return FiltrationSearch::Inconclusive {
                reason: format!("budget: node cap {} reached", self.budget.cap()),
            };
        }
        let mut pending = None;
        for h in left.iter() {
            match deletion_step(self.u, b, e, h, self.registry, self.budget) {
                DeletionStep::Ok { dropped, .. } => {
                    let mut bd = b.clone();
                    bd.remove(h);
                    let ed = replace_one(e, dropped, dropped - 1).expect("exponent");
                    match self.run(&bd, &ed) {
                        FiltrationSearch::Found { mut order } => {
                            order.insert(0, h);
                            return FiltrationSearch::Found { order };
                        }
                        FiltrationSearch::Impossible => {}
                        FiltrationSearch::Inconclusive { reason } => {
                            pending.get_or_insert(reason);
                        }
                    }
                }
                DeletionStep::Fails(_) => {}
                DeletionStep::Undecided(reason) => {
                    pending.get_or_insert(reason);
                }
            }
        }
        match pending {
            Some(reason) => FiltrationSearch::Inconclusive { reason },
            None => FiltrationSearch::Impossible,
        }
    }
}

/// Searches all deletion orders of `N ⊆ A` for a free filtration from `A`
/// (free with exponents `exps`) down to `A ∖ N`.
pub fn find_free_filtration(
    u: &Arc<Universe>,
    a: &BitSet,
    exps: &Exponents,
    n: &BitSet,
    registry: &FactRegistry,
    budget: &Budget,
) -> FiltrationSearch {
    let mut s = FfsaSearch {
        u,
        n: n.clone(),
        registry,
        budget,
        memo: HashMap::new(),
    };
    s.run(a, exps)
}

/// Guard for callers that need a universe index for each hyperplane.
pub fn indices_in(u: &Universe, hs: &[Hyperplane]) -> Result<Vec<usize>> {
    hs.iter()
        .map(|h| u.index_of(h).ok_or_else(|| Error::NotInArrangement(h.text())))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::CyclotomicField;

    #[test]
    fn addition_deletion_is_symmetric() {
        let f = CyclotomicField::new(1);
        let b3 = Arrangement::boolean(f, 3);
        let x1 = Hyperplane::coordinate(f, 3, 0);
        let r = FactRegistry::new();
        // A' and A'' have rank two, so A follows
        assert_eq!(
            check_addition_deletion(&b3, &x1, &r).unwrap(),
            Some((AdStatus::Whole, vec![1, 1, 1]))
        );
        let h = Hyperplane::from_ints(f, &[1, 1, 0]).unwrap();
        let a = b3.add(h.clone()).unwrap();
        let r = FactRegistry::new();
        r.insert_catalog(&b3, vec![1, 1, 1], "test").unwrap();
        // A' = B3 free {1,1,1}, A'' has 2 lines in dim 2: {1,1}
        assert_eq!(
            check_addition_deletion(&a, &h, &r).unwrap(),
            Some((AdStatus::Whole, vec![1, 1, 2]))
        );
        let r2 = FactRegistry::new();
        r2.record(
            &a,
            &r.lookup(&a).unwrap().to_verdict(),
        )
        .unwrap();
        assert_eq!(
            check_addition_deletion(&a, &h, &r2).unwrap(),
            Some((AdStatus::Deletion, vec![1, 1, 1]))
        );
    }

    #[test]
    fn boolean_single_deletion() {
        let f = CyclotomicField::new(1);
        let u = Universe::new(Arrangement::boolean(f, 3)).unwrap();
        let r = FactRegistry::new();
        let rep = verify_filtration(&u, &u.full(), &[0], &r, &Budget::default());
        assert!(rep.is_valid(), "{:?}", rep.failure);
        assert_eq!(rep.start_exponents, vec![1, 1, 1]);
        assert_eq!(rep.final_exponents(), &vec![0, 1, 1]);
    }
}
