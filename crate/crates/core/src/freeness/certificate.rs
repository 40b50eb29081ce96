//! Certificate trees and verdicts.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Exponents as an ascending multiset.
pub type Exponents = Vec<u64>;

pub fn sorted(mut e: Exponents) -> Exponents {
    e.sort_unstable();
    e
}

/// `e` with one copy of `b` removed, if present.
pub fn remove_one(e: &[u64], b: u64) -> Option<Exponents> {
    let i = e.iter().position(|&x| x == b)?;
    let mut out = e.to_vec();
    out.remove(i);
    Some(out)
}

/// `e` with one copy of `from` replaced by `to`, if present.
pub fn replace_one(e: &[u64], from: u64, to: u64) -> Option<Exponents> {
    let mut out = remove_one(e, from)?;
    out.push(to);
    Some(sorted(out))
}

/// `big − small` as multisets when `small ⊂ big` and exactly one element is
/// left over.
pub fn single_difference(big: &[u64], small: &[u64]) -> Option<u64> {
    if big.len() != small.len() + 1 {
        return None;
    }
    let mut rest = big.to_vec();
    for &s in small {
        let i = rest.iter().position(|&x| x == s)?;
        rest.remove(i);
    }
    Some(rest[0])
}

/// Which arrangement a step builds, relative to the node it appears in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// `A` is free because `A ∖ H` and `A^H` are.
    Addition,
    /// `A` is free because `A ∪ H` and `(A ∪ H)^H` are.
    Deletion,
}

/// A component of a product splitting, by its hyperplanes in the parent's
/// coordinates. The child certificate is for the essentialized component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factor {
    pub hyperplanes: Vec<String>,
    pub certificate: Certificate,
}

/// A re-checkable proof tree. Hyperplanes are named by their canonical
/// covector text in the coordinates of the arrangement the node is about;
/// restrictions use the fixed kernel basis of [`crate::arrangement::Arrangement::restrict`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum Certificate {
    /// Empty arrangement, or rank at most two.
    Base { exponents: Exponents },
    /// A fact taken from the catalog registry for the arrangement with this key.
    CatalogFact {
        source: String,
        key: String,
        exponents: Exponents,
    },
    Product {
        exponents: Exponents,
        factors: Vec<Factor>,
    },
    AdditionDeletion {
        direction: Direction,
        hyperplane: String,
        exponents: Exponents,
        /// `A ∖ H` for an addition, `A ∪ H` for a deletion.
        neighbour: Box<Certificate>,
        /// `A^H` for an addition, `(A ∪ H)^H` for a deletion.
        restriction: Box<Certificate>,
    },
    Division {
        hyperplane: String,
        exponents: Exponents,
        restriction: Box<Certificate>,
    },
    /// A maximal chain of modular flats, each given by its hyperplanes,
    /// from rank 1 upwards (the center and `V` are implicit).
    Supersolvable {
        exponents: Exponents,
        chain: Vec<Vec<String>>,
    },
    /// `A = B^H` where `B` and `B ∖ H` are both free. `B` is given by its
    /// hyperplanes; `H` is one of them.
    RestrictionOfFreePair {
        hyperplane: String,
        exponents: Exponents,
        parent_hyperplanes: Vec<String>,
        parent: Box<Certificate>,
        deletion: Box<Certificate>,
    },
    NonFreeCharPoly { charpoly: Vec<i64> },
    /// `A` is not free: its deletion `A ∖ H` is free, yet no exponent pattern
    /// fits `|A^H|` and `χ(A^H)`.
    NonFreeAdditionObstruction {
        hyperplane: String,
        deletion_exponents: Exponents,
        obstruction_sum: u64,
        deletion: Box<Certificate>,
    },
    /// `A ∖ H` is not free: `A` is free but `A^H` has the wrong size or
    /// characteristic polynomial for the deletion to be free.
    NonFreeRestrictionMismatch {
        hyperplane: String,
        parent_exponents: Exponents,
        restriction_size: usize,
        parent: Box<Certificate>,
    },
}

impl Certificate {
    /// Exponents claimed by a freeness certificate.
    pub fn exponents(&self) -> Option<&Exponents> {
        match self {
            Certificate::Base { exponents }
            | Certificate::CatalogFact { exponents, .. }
            | Certificate::Product { exponents, .. }
            | Certificate::AdditionDeletion { exponents, .. }
            | Certificate::Division { exponents, .. }
            | Certificate::Supersolvable { exponents, .. }
            | Certificate::RestrictionOfFreePair { exponents, .. } => Some(exponents),
            _ => None,
        }
    }

    pub fn proves_free(&self) -> bool {
        self.exponents().is_some()
    }

    pub fn rule(&self) -> &'static str {
        match self {
            Certificate::Base { .. } => "base",
            Certificate::CatalogFact { .. } => "catalog_fact",
            Certificate::Product { .. } => "product",
            Certificate::AdditionDeletion { direction: Direction::Addition, .. } => "addition",
            Certificate::AdditionDeletion { direction: Direction::Deletion, .. } => "deletion",
            Certificate::Division { .. } => "division",
            Certificate::Supersolvable { .. } => "supersolvable",
            Certificate::RestrictionOfFreePair { .. } => "restriction_of_free_pair",
            Certificate::NonFreeCharPoly { .. } => "non_free_charpoly",
            Certificate::NonFreeAdditionObstruction { .. } => "non_free_addition_obstruction",
            Certificate::NonFreeRestrictionMismatch { .. } => "non_free_restriction_mismatch",
        }
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        1 + match self {
            Certificate::Product { factors, .. } => {
                factors.iter().map(|f| f.certificate.size()).sum()
            }
            Certificate::AdditionDeletion {
                neighbour,
                restriction,
                ..
            } => neighbour.size() + restriction.size(),
            Certificate::Division { restriction, .. } => restriction.size(),
            Certificate::RestrictionOfFreePair { parent, deletion, .. } => {
                parent.size() + deletion.size()
            }
            Certificate::NonFreeAdditionObstruction { deletion, .. } => deletion.size(),
            Certificate::NonFreeRestrictionMismatch { parent, .. } => parent.size(),
            _ => 0,
        }
    }

    /// Counts of each rule in the tree, sorted by rule name.
    pub fn rule_counts(&self) -> Vec<(&'static str, usize)> {
        let mut m = std::collections::BTreeMap::new();
        let mut stack = vec![self];
        while let Some(c) = stack.pop() {
            *m.entry(c.rule()).or_insert(0) += 1;
            match c {
                Certificate::Product { factors, .. } => {
                    stack.extend(factors.iter().map(|f| &f.certificate))
                }
                Certificate::AdditionDeletion {
                    neighbour,
                    restriction,
                    ..
                } => {
                    stack.push(neighbour);
                    stack.push(restriction);
                }
                Certificate::Division { restriction, .. } => stack.push(restriction),
                Certificate::RestrictionOfFreePair { parent, deletion, .. } => {
                    stack.push(parent);
                    stack.push(deletion);
                }
                Certificate::NonFreeAdditionObstruction { deletion, .. } => stack.push(deletion),
                Certificate::NonFreeRestrictionMismatch { parent, .. } => stack.push(parent),
                _ => {}
            }
        }
        m.into_iter().collect()
    }
}

/// Outcome of a freeness question.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Verdict {
    Free {
        exponents: Exponents,
        certificate: Certificate,
    },
    NonFree {
        certificate: Certificate,
    },
    Unknown {
        reason: String,
    },
}

impl Verdict {
    pub fn exponents(&self) -> Option<&Exponents> {
        match self {
            Verdict::Free { exponents, .. } => Some(exponents),
            _ => None,
        }
    }
}

/// Outcome of a class-membership search (IF, DF, RF).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Membership {
    Member {
        exponents: Exponents,
        certificate: Certificate,
    },
    /// Proven outside the class; `certificate` is present when the proof is
    /// that the arrangement is not free at all.
    NonMember {
        reason: String,
        certificate: Option<Certificate>,
    },
    Unknown {
        reason: String,
    },
}

impl Membership {
    pub fn member(certificate: Certificate) -> Self {
        let exponents = certificate.exponents().expect("freeness certificate").clone();
        Membership::Member {
            exponents,
            certificate,
        }
    }

    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member { .. })
    }

    pub fn is_non_member(&self) -> bool {
        matches!(self, Membership::NonMember { .. })
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            Membership::Member { certificate, .. } => Some(certificate),
            Membership::NonMember { certificate, .. } => certificate.as_ref(),
            Membership::Unknown { .. } => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Membership::Member { .. } => "member",
            Membership::NonMember { .. } => "non-member",
            Membership::Unknown { .. } => "unknown",
        }
    }
}

impl fmt::Display for Membership {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Membership::Member { exponents, .. } => write!(f, "member, exponents {exponents:?}"),
            Membership::NonMember { reason, .. } => write!(f, "non-member ({reason})"),
            Membership::Unknown { reason } => write!(f, "unknown ({reason})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiset_helpers() {
        assert_eq!(single_difference(&[1, 9, 11], &[1, 11]), Some(9));
        assert_eq!(single_difference(&[1, 9, 11], &[1, 10]), None);
        assert_eq!(replace_one(&[1, 9, 11], 9, 10), Some(vec![1, 10, 11]));
        assert_eq!(remove_one(&[1, 13, 17, 29], 29), Some(vec![1, 13, 17]));
    }

    #[test]
    fn json_round_trip() {
        let c = Certificate::AdditionDeletion {
            direction: Direction::Addition,
            hyperplane: "1 0 0".into(),
            exponents: vec![1, 1, 1],
            neighbour: Box::new(Certificate::Base { exponents: vec![0, 1, 1] }),
            restriction: Box::new(Certificate::Base { exponents: vec![1, 1] }),
        };
        let s = serde_json::to_string(&c).unwrap();
        assert!(s.contains("\"rule\":\"addition_deletion\""));
        let back: Certificate = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
        assert_eq!(c.size(), 3);
    }
}
