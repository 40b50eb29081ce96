//! Known freeness facts keyed by arrangement.

use std::collections::HashMap;
use std::sync::RwLock;

use crate::arrangement::{ArrKey, Arrangement};
use crate::error::{Error, Result};

use super::certificate::{Certificate, Exponents, Verdict};
use super::base_exponents;

/// A settled status for one arrangement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Fact {
    Free {
        exponents: Exponents,
        certificate: Certificate,
    },
    NonFree {
        certificate: Certificate,
    },
}

impl Fact {
    pub fn exponents(&self) -> Option<&Exponents> {
        match self {
            Fact::Free { exponents, .. } => Some(exponents),
            Fact::NonFree { .. } => None,
        }
    }

    pub fn certificate(&self) -> &Certificate {
        match self {
            Fact::Free { certificate, .. } | Fact::NonFree { certificate } => certificate,
        }
    }

    pub fn to_verdict(&self) -> Verdict {
        match self {
            Fact::Free {
                exponents,
                certificate,
            } => Verdict::Free {
                exponents: exponents.clone(),
                certificate: certificate.clone(),
            },
            Fact::NonFree { certificate } => Verdict::NonFree {
                certificate: certificate.clone(),
            },
        }
    }
}

/// Facts by [`ArrKey`]. The empty arrangement and arrangements of rank at
/// most two are answered without being stored. Inserting a different
/// status or different exponents for a stored key is an error.
#[derive(Debug, Default)]
pub struct FactRegistry {
    facts: RwLock<HashMap<ArrKey, Fact>>,
}

impl FactRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.facts.read().expect("registry lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get_key(&self, key: &ArrKey) -> Option<Fact> {
        self.facts.read().expect("registry lock").get(key).cloned()
    }

    /// The fact for `a`, including the base axioms.
    pub fn lookup(&self, a: &Arrangement) -> Option<Fact> {
        let rank = a.rank();
        if rank <= 2 {
            let exponents = base_exponents(a.len(), rank, a.dim());
            return Some(Fact::Free {
                certificate: Certificate::Base {
                    exponents: exponents.clone(),
                },
                exponents,
            });
        }
        self.get_key(&a.key())
    }

    /// Stores `fact` unless the key is already present; returns whether it
    /// was new.
    pub fn insert(&self, key: ArrKey, fact: Fact) -> Result<bool> {
        let mut m = self.facts.write().expect("registry lock");
        if let Some(old) = m.get(&key) {
            let same = match (old, &fact) {
                (Fact::Free { exponents: a, .. }, Fact::Free { exponents: b, .. }) => a == b,
                (Fact::NonFree { .. }, Fact::NonFree { .. }) => true,
                _ => false,
            };
            if !same {
                return Err(Error::Invalid(format!(
                    "conflicting facts for {}: {:?} vs {:?}",
                    key.0,
                    old.exponents(),
                    fact.exponents()
                )));
            }
            return Ok(false);
        }
        m.insert(key, fact);
        Ok(true)
    }

    /// Records a free arrangement as a catalog fact from `source`.
    pub fn insert_catalog(&self, a: &Arrangement, exponents: Exponents, source: &str) -> Result<bool> {
        let key = a.key();
        let certificate = Certificate::CatalogFact {
            source: source.to_string(),
            key: key.0.clone(),
            exponents: exponents.clone(),
        };
        self.insert(
            key,
            Fact::Free {
                exponents,
                certificate,
            },
        )
    }

    /// Records a definite verdict; unknown verdicts are ignored.
    pub fn record(&self, a: &Arrangement, v: &Verdict) -> Result<bool> {
        let fact = match v {
            Verdict::Free {
                exponents,
                certificate,
            } => Fact::Free {
                exponents: exponents.clone(),
                certificate: certificate.clone(),
            },
            Verdict::NonFree { certificate } => Fact::NonFree {
                certificate: certificate.clone(),
            },
            Verdict::Unknown { .. } => return Ok(false),
        };
        self.insert(a.key(), fact)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::CyclotomicField;

    #[test]
    fn axioms_and_conflicts() {
        let f = CyclotomicField::new(1);
        let r = FactRegistry::new();
        let e = Arrangement::empty(f, 3);
        assert_eq!(r.lookup(&e).unwrap().exponents(), Some(&vec![0, 0, 0]));
        let b3 = Arrangement::boolean(f, 3);
        assert!(r.lookup(&b3).is_none());
        assert!(r.insert_catalog(&b3, vec![1, 1, 1], "test").unwrap());
        assert!(!r.insert_catalog(&b3, vec![1, 1, 1], "again").unwrap());
        assert!(r.insert_catalog(&b3, vec![0, 1, 2], "bad").is_err());
        assert_eq!(r.len(), 1);
    }
}
