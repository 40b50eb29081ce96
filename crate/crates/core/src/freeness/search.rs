//! Memoized searches for the inductive, divisional and recursive classes.

use std::collections::HashMap;
use std::sync::Arc;

use crate::arrangement::{Arrangement, Hyperplane};
use crate::bitset::BitSet;
use crate::error::Result;
use crate::lattice::CharPoly;

use super::certificate::{remove_one, replace_one, sorted, Certificate, Direction, Exponents, Factor, Membership};
use super::universe::Universe;
use super::{base_exponents, Budget};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Class {
    Inductive,
    Divisional,
    Recursive,
}

impl Class {
    pub fn name(self) -> &'static str {
        match self {
            Class::Inductive => "inductive",
            Class::Divisional => "divisional",
            Class::Recursive => "recursive",
        }
    }
}

impl std::str::FromStr for Class {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "inductive" | "if" => Ok(Class::Inductive),
            "divisional" | "df" => Ok(Class::Divisional),
            "recursive" | "rf" => Ok(Class::Recursive),
            _ => Err(format!("unknown class {s:?}")),
        }
    }
}

fn unknown(reason: impl Into<String>) -> Membership {
    Membership::Unknown {
        reason: reason.into(),
    }
}

fn cap_reached(budget: &Budget) -> Membership {
    unknown(format!("budget: node cap {} reached", budget.cap()))
}

/// The start of every search node: the base case, or the exponents that
/// `χ(B)` forces, or a proof that `B` is not free.
enum Start {
    Done(Membership),
    Exponents(CharPoly, Exponents),
}

fn start(u: &Universe, b: &BitSet) -> Start {
    let n = b.len();
    let rank = u.rank(b);
    if rank <= 2 {
        return Start::Done(Membership::member(Certificate::Base {
            exponents: base_exponents(n, rank, u.dim()),
        }));
    }
    let chi = u.charpoly(b);
    match chi.integer_roots(n as u64) {
        Some(e) => Start::Exponents(chi, e),
        None => Start::Done(Membership::NonMember {
            reason: format!("χ = {chi} does not split"),
            certificate: Some(Certificate::NonFreeCharPoly {
                charpoly: chi.coeffs().to_vec(),
            }),
        }),
    }
}

/// For `B` of rank 3 with a modular rank-2 flat: its supersolvable
/// certificate.
fn rank3_supersolvable(u: &Universe, b: &BitSet, e: &Exponents) -> Option<Certificate> {
    if u.rank(b) != 3 {
        return None;
    }
    let x = u.modular_rank2(b)?;
    let bx = b.intersection(&u.lattice().flat(x).members);
    let mut texts: Vec<String> = bx.iter().map(|h| u.text(h).to_string()).collect();
    texts.sort();
    let k = bx.len() as u64;
    let n = b.len() as u64;
    let mut exps = vec![0; u.dim() - 3];
    exps.extend([1, k - 1, n - k]);
    let exponents = sorted(exps);
    debug_assert_eq!(&exponents, e);
    Some(Certificate::Supersolvable {
        exponents,
        chain: vec![vec![texts[0].clone()], texts],
    })
}

/// The deletions `H ∈ B` that pass the exponent test `|B| − |B^H| ∈ exp B`
/// with `χ(B^H) = Π(exp B ∖ b)`, as `(H, b, restriction universe, B^H)`.
fn admissible_deletions(
    u: &Universe,
    b: &BitSet,
    e: &Exponents,
) -> Vec<std::result::Result<(usize, u64, Arc<Universe>, BitSet), String>> {
    let n = b.len();
    let mut out = Vec::new();
    for (h, size) in u.deletion_order(b) {
        let d = (n - size) as u64;
        let Some(rest) = remove_one(e, d) else { continue };
        match u.restrict(b, h) {
            Ok((ru, rb)) => {
                if ru.charpoly(&rb) == CharPoly::from_roots(&rest) {
                    out.push(Ok((h, d, ru, rb)));
                }
            }
            Err(err) => out.push(Err(err.to_string())),
        }
    }
    out
}

/// Inductive freeness of `B ⊆ U`.
pub fn if_search(u: &Arc<Universe>, b: &BitSet, budget: &Budget) -> Membership {
    if let Some(m) = u.if_memo.lock().expect("memo").get(b) {
        return m.clone();
    }
    let m = if_node(u, b, budget);
    if !matches!(m, Membership::Unknown { .. }) {
        u.if_memo.lock().expect("memo").insert(b.clone(), m.clone());
    }
    m
}

fn if_node(u: &Arc<Universe>, b: &BitSet, budget: &Budget) -> Membership {
    if !budget.tick() {
        return cap_reached(budget);
    }
    let e = match start(u, b) {
        Start::Done(m) => return m,
        Start::Exponents(_, e) => e,
    };
    if let Some(c) = rank3_supersolvable(u, b, &e) {
        return Membership::member(c);
    }
    let mut pending: Option<String> = None;
    for step in admissible_deletions(u, b, &e) {
        let (h, d, ru, rb) = match step {
            Ok(s) => s,
            Err(reason) => {
                pending.get_or_insert(reason);
                continue;
            }
        };
        let cr = match if_search(&ru, &rb, budget) {
            Membership::Member { certificate, .. } => certificate,
            Membership::NonMember { .. } => continue,
            Membership::Unknown { reason } => {
                pending.get_or_insert(reason);
                continue;
            }
        };
        let mut bd = b.clone();
        bd.remove(h);
        match if_search(u, &bd, budget) {
            Membership::Member {
                exponents,
                certificate,
            } => {
                debug_assert_eq!(Some(exponents), replace_one(&e, d, d - 1));
                return Membership::member(Certificate::AdditionDeletion {
                    direction: Direction::Addition,
                    hyperplane: u.text(h).to_string(),
                    exponents: e,
                    neighbour: Box::new(certificate),
                    restriction: Box::new(cr),
                });
            }
            Membership::NonMember { .. } => {}
            Membership::Unknown { reason } => {
                pending.get_or_insert(reason);
            }
        }
    }
    match pending {
        Some(reason) => unknown(reason),
        None => Membership::NonMember {
            reason: "no deletion leads to inductively free deletion and restriction".into(),
            certificate: None,
        },
    }
}

/// Divisional freeness of `B ⊆ U`.
pub fn df_search(u: &Arc<Universe>, b: &BitSet, budget: &Budget) -> Membership {
    if let Some(m) = u.df_memo.lock().expect("memo").get(b) {
        return m.clone();
    }
    let m = df_node(u, b, budget);
    if !matches!(m, Membership::Unknown { .. }) {
        u.df_memo.lock().expect("memo").insert(b.clone(), m.clone());
    }
    m
}

/// `B` as a product of factors of rank at most two, if it is one.
fn small_product(u: &Universe, b: &BitSet) -> Option<Certificate> {
    let comps = u.components(b);
    if comps.len() < 2 {
        return None;
    }
    let mut factors = Vec::new();
    let mut exps = Vec::new();
    let mut total_rank = 0;
    for c in comps {
        let sub = u.arrangement().subarrangement(&c);
        let ess = sub.essentialize();
        if ess.dim() > 2 {
            return None;
        }
        total_rank += ess.dim();
        let e = base_exponents(ess.len(), ess.dim(), ess.dim());
        exps.extend(e.iter().copied());
        let mut hyperplanes: Vec<String> = c.iter().map(|&h| u.text(h).to_string()).collect();
        hyperplanes.sort();
        factors.push(Factor {
            hyperplanes,
            certificate: Certificate::Base { exponents: e },
        });
    }
    exps.extend(std::iter::repeat(0).take(u.dim() - total_rank));
    Some(Certificate::Product {
        exponents: sorted(exps),
        factors,
    })
}

fn df_node(u: &Arc<Universe>, b: &BitSet, budget: &Budget) -> Membership {
    if !budget.tick() {
        return cap_reached(budget);
    }
    let (chi, e) = match start(u, b) {
        Start::Done(m) => return m,
        Start::Exponents(chi, e) => (chi, e),
    };
    if let Some(c) = small_product(u, b) {
        return Membership::member(c);
    }
    let mut pending: Option<String> = None;
    for (h, _) in u.deletion_order(b) {
        let (ru, rb) = match u.restrict(b, h) {
            Ok(r) => r,
            Err(err) => {
                pending.get_or_insert(err.to_string());
                continue;
            }
        };
        if !ru.charpoly(&rb).divides(&chi) {
            continue;
        }
        match df_search(&ru, &rb, budget) {
            Membership::Member { certificate, .. } => {
                return Membership::member(Certificate::Division {
                    hyperplane: u.text(h).to_string(),
                    exponents: e,
                    restriction: Box::new(certificate),
                });
            }
            Membership::NonMember { .. } => {}
            Membership::Unknown { reason } => {
                pending.get_or_insert(reason);
            }
        }
    }
    match pending {
        Some(reason) => unknown(reason),
        None => Membership::NonMember {
            reason: "no restriction is divisionally free with dividing χ".into(),
            certificate: None,
        },
    }
}

/// Bounded recursive-freeness search over `B ⊆ U`, where additions are
/// drawn from `pool ⊆ U ∖ B`-indices. Non-membership is only reported when
/// `B` is shown not to be free.
pub struct RfSearch<'a> {
    u: Arc<Universe>,
    pool: Vec<usize>,
    budget: &'a Budget,
    memo: HashMap<(BitSet, usize), Membership>,
}

impl<'a> RfSearch<'a> {
    pub fn new(u: Arc<Universe>, pool: Vec<usize>, budget: &'a Budget) -> Self {
        RfSearch {
            u,
            pool,
            budget,
            memo: HashMap::new(),
        }
    }

    pub fn run(&mut self, b: &BitSet, depth: usize) -> Membership {
        let key = (b.clone(), depth);
        if let Some(m) = self.memo.get(&key) {
            return m.clone();
        }
        let m = self.node(b, depth);
        self.memo.insert(key, m.clone());
        m
    }

    fn node(&mut self, b: &BitSet, depth: usize) -> Membership {
        if !self.budget.tick() {
            return cap_reached(self.budget);
        }
        let u = self.u.clone();
        let e = match start(&u, b) {
            Start::Done(m) => return m,
            Start::Exponents(_, e) => e,
        };
        if let Some(c) = rank3_supersolvable(&u, b, &e) {
            return Membership::member(c);
        }
        if depth > 0 {
            for h in self.pool.clone() {
                if b.contains(h) {
                    continue;
                }
                let mut bh = b.clone();
                bh.insert(h);
                // B ∪ H free with exp E' and (B ∪ H)^H free with E' ∖ {d},
                // where d + 1 is the exponent of B ∪ H that drops.
                let size = u.restriction_size(&bh, h);
                let d = (bh.len() - size) as u64;
                let Some(ep) = replace_one(&e, d - 1, d) else { continue };
                let Some(rest) = remove_one(&ep, d) else { continue };
                let Ok((ru, rb)) = u.restrict(&bh, h) else { continue };
                if ru.charpoly(&rb) != CharPoly::from_roots(&rest) {
                    continue;
                }
                let cr = match if_search(&ru, &rb, self.budget) {
                    Membership::Member { certificate, .. } => certificate,
                    _ => continue,
                };
                if let Membership::Member { certificate, .. } = self.run(&bh, depth - 1) {
                    return Membership::member(Certificate::AdditionDeletion {
                        direction: Direction::Deletion,
                        hyperplane: u.text(h).to_string(),
                        exponents: e,
                        neighbour: Box::new(certificate),
                        restriction: Box::new(cr),
                    });
                }
            }
        }
        for step in admissible_deletions(&u, b, &e) {
            let Ok((h, _, ru, rb)) = step else { continue };
            let cr = match if_search(&ru, &rb, self.budget) {
                Membership::Member { certificate, .. } => certificate,
                _ => continue,
            };
            let mut bd = b.clone();
            bd.remove(h);
            if let Membership::Member { certificate, .. } = self.run(&bd, depth) {
                return Membership::member(Certificate::AdditionDeletion {
                    direction: Direction::Addition,
                    hyperplane: u.text(h).to_string(),
                    exponents: e,
                    neighbour: Box::new(certificate),
                    restriction: Box::new(cr),
                });
            }
        }
        unknown(format!(
            "undecided: no certificate within {depth} additions from the pool"
        ))
    }
}

pub fn rf_search(u: &Arc<Universe>, b: &BitSet, pool: &[usize], depth: usize, budget: &Budget) -> Membership {
    RfSearch::new(u.clone(), pool.to_vec(), budget).run(b, depth)
}

/// Inductive freeness of a standalone arrangement.
pub fn inductively_free(a: &Arrangement, budget: &Budget) -> Result<Membership> {
    let u = Universe::new(a.clone())?;
    Ok(if_search(&u, &u.full(), budget))
}

/// Divisional freeness of a standalone arrangement.
pub fn divisionally_free(a: &Arrangement, budget: &Budget) -> Result<Membership> {
    let u = Universe::new(a.clone())?;
    Ok(df_search(&u, &u.full(), budget))
}

/// Recursive freeness of `a`, allowing up to `depth` additions from `pool`.
pub fn recursively_free(a: &Arrangement, pool: &[Hyperplane], depth: usize, budget: &Budget) -> Result<Membership> {
    let mut big = a.clone();
    for h in pool {
        if !big.contains(h) {
            big = big.add(h.clone())?;
        }
    }
    let u = Universe::new(big)?;
    let b = BitSet::from_indices(u.len(), 0..a.len());
    let pool_idx: Vec<usize> = pool
        .iter()
        .filter_map(|h| u.index_of(h))
        .filter(|&i| i >= a.len())
        .collect();
    Ok(rf_search(&u, &b, &pool_idx, depth, budget))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::builders;
    use crate::field::CyclotomicField;

    #[test]
    fn boolean_is_in_every_class() {
        let a = Arrangement::boolean(CyclotomicField::new(1), 3);
        let b = Budget::default();
        assert!(inductively_free(&a, &b).unwrap().is_member());
        assert!(divisionally_free(&a, &b).unwrap().is_member());
        assert!(recursively_free(&a, &[], 0, &b).unwrap().is_member());
    }

    #[test]
    fn g333_is_not_inductively_free_but_recursively_free() {
        let a = builders::monomial(3, 3, 0).unwrap();
        let b = Budget::default();
        let m = inductively_free(&a, &b).unwrap();
        assert!(m.is_non_member(), "{m}");
        let f = a.field();
        let pool: Vec<_> = (0..3).map(|i| Hyperplane::coordinate(f, 3, i)).collect();
        let m = recursively_free(&a, &pool, 3, &b).unwrap();
        assert!(m.is_member(), "{m}");
        assert_eq!(m.certificate().unwrap().exponents(), Some(&vec![1, 4, 4]));
    }

    #[test]
    fn supersolvable_monomial_is_inductively_free() {
        let a = builders::monomial(4, 2, 2).unwrap();
        let m = inductively_free(&a, &Budget::default()).unwrap();
        assert!(m.is_member());
        let a = builders::monomial(3, 3, 3).unwrap();
        let m = inductively_free(&a, &Budget::default()).unwrap();
        assert_eq!(m.certificate().unwrap().exponents(), Some(&vec![1, 4, 7]));
    }

    #[test]
    fn tiny_budget_gives_unknown() {
        let a = builders::g24();
        let m = inductively_free(&a, &Budget::new(0)).unwrap();
        assert!(matches!(m, Membership::Unknown { .. }));
        let b = Budget::default();
        let m = inductively_free(&a, &b).unwrap();
        assert!(matches!(m, Membership::NonMember { .. }));
        assert!(b.used() >= 1);
    }
}
