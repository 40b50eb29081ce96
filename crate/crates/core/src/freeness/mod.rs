//! Freeness certificates: addition–deletion, products, division, the
//! inductive/divisional/recursive classes, addition obstructions and free
//! filtrations.

pub mod addition;
pub mod certificate;
pub mod filtration;
pub mod registry;
pub mod search;
pub mod universe;
pub mod verify;

use std::sync::atomic::{AtomicUsize, Ordering};

use crate::arrangement::Arrangement;
use crate::bitset::BitSet;
use crate::lattice::CharPoly;

pub use addition::{
    addition_obstruction, enumerate_candidates, no_free_addition, sweep, sweep_in, Obstruction,
    SweepReport,
};
pub use certificate::{Certificate, Direction, Exponents, Factor, Membership, Verdict};
pub use filtration::{
    certify, check_addition_deletion, find_free_filtration, verify_filtration,
    verify_resolution, deletion_step, AdStatus, DeletionStep, FiltrationReport, FiltrationSearch,
    ResolutionReport,
};
pub use registry::{Fact, FactRegistry};
pub use search::{
    divisionally_free, if_search, df_search, inductively_free, recursively_free, rf_search,
    Class,
};
pub use universe::Universe;
pub use verify::cert_verify;

/// Default node cap for the class searches.
pub const DEFAULT_NODE_CAP: usize = 1_000_000;

/// A shared node counter for a search.
#[derive(Debug)]
pub struct Budget {
    cap: usize,
    used: AtomicUsize,
}

impl Budget {
    pub fn new(cap: usize) -> Self {
        Budget {
            cap,
            used: AtomicUsize::new(0),
        }
    }

    /// Counts one node; false once the cap is exceeded.
    pub fn tick(&self) -> bool {
        self.used.fetch_add(1, Ordering::Relaxed) < self.cap
    }

    pub fn used(&self) -> usize {
        self.used.load(Ordering::Relaxed)
    }

    pub fn cap(&self) -> usize {
        self.cap
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(DEFAULT_NODE_CAP)
    }
}

/// The exponents of a free arrangement of rank at most two with `n`
/// hyperplanes in dimension `dim`.
pub fn base_exponents(n: usize, rank: usize, dim: usize) -> Exponents {
    let mut e = vec![0; dim];
    match rank {
        0 => {}
        1 => e[dim - 1] = 1,
        2 => {
            e[dim - 2] = 1;
            e[dim - 1] = n as u64 - 1;
        }
        _ => panic!("base exponents need rank at most 2"),
    }
    certificate::sorted(e)
}

/// The roots of `χ` if it splits over `{0, …, n}`, else `None` (which means
/// the arrangement is not free).
pub fn exponents_from_charpoly(chi: &CharPoly, n: usize) -> Option<Exponents> {
    chi.integer_roots(n as u64)
}

/// `exp(A₁ × A₂) = exp A₁ ∪ exp A₂`.
pub fn product_exponents(a: &[u64], b: &[u64]) -> Exponents {
    certificate::sorted(a.iter().chain(b).copied().collect())
}

/// The product verdict from verdicts on two essential factors.
pub fn product_verdict(a1: &Arrangement, v1: &Verdict, a2: &Arrangement, v2: &Verdict) -> Verdict {
    let (
        Verdict::Free {
            exponents: e1,
            certificate: c1,
        },
        Verdict::Free {
            exponents: e2,
            certificate: c2,
        },
    ) = (v1, v2)
    else {
        return Verdict::Unknown {
            reason: "product rule needs both factors free".into(),
        };
    };
    if !a1.is_essential() || !a2.is_essential() {
        return Verdict::Unknown {
            reason: "product rule is applied to essential factors only".into(),
        };
    }
    let p = match a1.product(a2) {
        Ok(p) => p,
        Err(e) => return Verdict::Unknown { reason: e.to_string() },
    };
    let texts: Vec<String> = p.hyperplanes().iter().map(|h| h.text()).collect();
    let mut factors = Vec::new();
    if !a1.is_empty() {
        factors.push(Factor {
            hyperplanes: texts[..a1.len()].to_vec(),
            certificate: c1.clone(),
        });
    }
    if !a2.is_empty() {
        factors.push(Factor {
            hyperplanes: texts[a1.len()..].to_vec(),
            certificate: c2.clone(),
        });
    }
    let exponents = product_exponents(e1, e2);
    Verdict::Free {
        exponents: exponents.clone(),
        certificate: Certificate::Product { exponents, factors },
    }
}

/// Condition (∗) for `N ⊆ A`: every rank-2 flat of `N` lies in some
/// hyperplane of `A ∖ N`. Both sets are subsets of the universe.
pub fn condition_star(u: &Universe, a: &BitSet, n: &BitSet) -> bool {
    let rest = a.difference(n);
    u.rank2_of(n)
        .iter()
        .all(|&(x, _)| !u.lattice().flat(x).members.is_disjoint(&rest))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::CyclotomicField;

    #[test]
    fn exponent_helpers() {
        let chi = CharPoly::from_roots(&[1, 9, 11]);
        assert_eq!(exponents_from_charpoly(&chi, 21), Some(vec![1, 9, 11]));
        let chi = CharPoly::from_roots(&[1, 15, 16, 29]);
        assert_eq!(exponents_from_charpoly(&chi, 61), Some(vec![1, 15, 16, 29]));
        assert_eq!(exponents_from_charpoly(&CharPoly::new(vec![3, -3, 1]), 3), None);
        assert_eq!(base_exponents(5, 2, 3), vec![0, 1, 4]);
        assert_eq!(base_exponents(0, 0, 2), vec![0, 0]);
        assert_eq!(product_exponents(&[0], &[0]), vec![0, 0]);
        assert_eq!(product_exponents(&[1], &[1, 9, 11]), vec![1, 1, 9, 11]);
    }

    #[test]
    fn condition_star_examples() {
        // Boolean 3-arrangement plus the plane x1 = x2
        let f = CyclotomicField::new(1);
        let b3 = Arrangement::boolean(f, 3);
        let a = b3
            .add(crate::arrangement::Hyperplane::from_ints(f, &[1, -1, 0]).unwrap())
            .unwrap();
        let u = Universe::new(a).unwrap();
        let all = u.full();
        assert!(condition_star(&u, &all, &BitSet::from_indices(4, [0])));
        // x1, x2 meet in a line that x1 - x2 covers
        assert!(condition_star(&u, &all, &BitSet::from_indices(4, [0, 1])));
        // x1, x3 meet in a line nothing else contains
        assert!(!condition_star(&u, &all, &BitSet::from_indices(4, [0, 2])));
        assert!(!condition_star(&u, &all, &BitSet::from_indices(4, [0, 1, 3])));
    }
}
