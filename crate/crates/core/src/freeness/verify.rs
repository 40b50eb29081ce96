//! Independent replay of certificates on explicit arrangements.

use crate::arrangement::{Arrangement, Hyperplane};
use crate::lattice::{charpoly, CharPoly, Lattice, DEFAULT_FLAT_BUDGET};

use super::base_exponents;
use super::certificate::{remove_one, replace_one, single_difference, sorted, Certificate, Direction, Exponents};

type Check<T> = std::result::Result<T, String>;

fn parse_hyperplane(a: &Arrangement, dim: usize, text: &str) -> Check<Hyperplane> {
    let f = a.field();
    let v = text
        .split_whitespace()
        .map(|s| f.parse(s).map_err(|e| format!("bad scalar {s:?}: {e}")))
        .collect::<Check<Vec<_>>>()?;
    if v.len() != dim {
        return Err(format!("hyperplane {text:?} has {} coordinates, expected {dim}", v.len()));
    }
    Hyperplane::new(v).map_err(|e| e.to_string())
}

fn chi(a: &Arrangement) -> Check<CharPoly> {
    charpoly(a).map_err(|e| e.to_string())
}

fn member(a: &Arrangement, text: &str) -> Check<Hyperplane> {
    let h = parse_hyperplane(a, a.dim(), text)?;
    if !a.contains(&h) {
        return Err(format!("hyperplane ({text}) is not in the arrangement"));
    }
    Ok(h)
}

fn expect_eq(what: &str, got: &Exponents, claimed: &Exponents) -> Check<()> {
    if got != claimed {
        return Err(format!("{what}: derived exponents {got:?}, certificate claims {claimed:?}"));
    }
    Ok(())
}

/// Checks a freeness certificate and returns its exponents.
fn free(a: &Arrangement, c: &Certificate) -> Check<Exponents> {
    let claimed = c
        .exponents()
        .ok_or_else(|| format!("{} does not prove freeness", c.rule()))?
        .clone();
    if claimed != sorted(claimed.clone()) || claimed.len() != a.dim() {
        return Err(format!("malformed exponents {claimed:?}"));
    }
    if claimed.iter().sum::<u64>() != a.len() as u64 {
        return Err(format!("exponents {claimed:?} do not sum to |A| = {}", a.len()));
    }
    match c {
        Certificate::Base { exponents } => {
            let r = a.rank();
            if r > 2 {
                return Err(format!("base rule on an arrangement of rank {r}"));
            }
            expect_eq("base", &base_exponents(a.len(), r, a.dim()), exponents)?;
        }
        Certificate::CatalogFact { key, .. } => {
            if key != &a.key().0 {
                return Err("catalog fact is for a different arrangement".into());
            }
        }
        Certificate::Product { exponents, factors } => {
            let mut seen = vec![false; a.len()];
            let mut union = Vec::new();
            let mut total = 0;
            for f in factors {
                let mut idx = Vec::new();
                for t in &f.hyperplanes {
                    let h = member(a, t)?;
                    let i = a.index_of(&h).expect("member");
                    if std::mem::replace(&mut seen[i], true) {
                        return Err(format!("hyperplane ({t}) in two factors"));
                    }
                    idx.push(i);
                }
                let sub = a.subarrangement(&idx).essentialize();
                total += sub.dim();
                union.extend(free(&sub, &f.certificate)?);
            }
            if seen.iter().any(|s| !s) {
                return Err("factors do not cover the arrangement".into());
            }
            if total != a.rank() {
                return Err("factor ranks do not add up: not a product".into());
            }
            union.extend(std::iter::repeat(0).take(a.dim() - total));
            expect_eq("product", &sorted(union), exponents)?;
        }
        Certificate::AdditionDeletion {
            direction,
            hyperplane,
            exponents,
            neighbour,
            restriction,
        } => match direction {
            Direction::Addition => {
                let h = member(a, hyperplane)?;
                let del = a.delete(&h).map_err(|e| e.to_string())?;
                let res = a.restrict(&h).map_err(|e| e.to_string())?;
                let ed = free(&del, neighbour)?;
                let er = free(&res, restriction)?;
                let b = single_difference(&ed, &er)
                    .ok_or_else(|| format!("exp A'' = {er:?} not inside exp A' = {ed:?}"))?;
                expect_eq("addition", &replace_one(&ed, b, b + 1).expect("exponent"), exponents)?;
            }
            Direction::Deletion => {
                let h = parse_hyperplane(a, a.dim(), hyperplane)?;
                if a.contains(&h) {
                    return Err(format!("hyperplane ({hyperplane}) is already in the arrangement"));
                }
                let big = a.add(h.clone()).map_err(|e| e.to_string())?;
                let res = big.restrict(&h).map_err(|e| e.to_string())?;
                let eb = free(&big, neighbour)?;
                let er = free(&res, restriction)?;
                let b = single_difference(&eb, &er)
                    .ok_or_else(|| format!("exp A'' = {er:?} not inside exp A = {eb:?}"))?;
                if b == 0 {
                    return Err("dropped exponent is zero".into());
                }
                expect_eq("deletion", &replace_one(&eb, b, b - 1).expect("exponent"), exponents)?;
            }
        },
        Certificate::Division {
            hyperplane,
            restriction,
            ..
        } => {
            let h = member(a, hyperplane)?;
            let res = a.restrict(&h).map_err(|e| e.to_string())?;
            free(&res, restriction)?;
            if !chi(&res)?.divides(&chi(a)?) {
                return Err("χ(A^H) does not divide χ(A)".into());
            }
        }
        Certificate::Supersolvable { exponents, chain } => {
            let mut l = Lattice::build(a, None, DEFAULT_FLAT_BUDGET).map_err(|e| e.to_string())?;
            let r = l.top_rank();
            if chain.len() + 1 != r {
                return Err(format!("chain of length {} in rank {r}", chain.len()));
            }
            let mut prev = crate::bitset::BitSet::new(a.len());
            let mut exps = vec![0; a.dim() - r];
            for (i, flat) in chain.iter().enumerate() {
                let idx = flat
                    .iter()
                    .map(|t| member(a, t).map(|h| a.index_of(&h).expect("member")))
                    .collect::<Check<Vec<_>>>()?;
                let m = crate::bitset::BitSet::from_indices(a.len(), idx);
                let x = l
                    .find(&m)
                    .ok_or_else(|| format!("chain element {} is not a flat", i + 1))?;
                if l.flat(x).rank != i + 1 || !prev.is_subset(&m) {
                    return Err(format!("chain element {} has the wrong rank or order", i + 1));
                }
                if !l.is_modular(x) {
                    return Err(format!("chain element {} is not modular", i + 1));
                }
                exps.push((m.len() - prev.len()) as u64);
                prev = m;
            }
            exps.push((a.len() - prev.len()) as u64);
            expect_eq("supersolvable", &sorted(exps), exponents)?;
            let _ = l.mobius();
        }
        Certificate::RestrictionOfFreePair {
            hyperplane,
            exponents,
            parent_hyperplanes,
            parent,
            deletion,
        } => {
            let hs = parent_hyperplanes
                .iter()
                .map(|t| parse_hyperplane(a, a.dim() + 1, t))
                .collect::<Check<Vec<_>>>()?;
            let p = Arrangement::new(a.field(), a.dim() + 1, hs).map_err(|e| e.to_string())?;
            let h = parse_hyperplane(a, a.dim() + 1, hyperplane)?;
            let res = p.restrict(&h).map_err(|e| e.to_string())?;
            if res.key() != a.key() {
                return Err("arrangement is not the stated restriction".into());
            }
            let ep = free(&p, parent)?;
            let ed = free(&p.delete(&h).map_err(|e| e.to_string())?, deletion)?;
            let b = ep
                .iter()
                .copied()
                .find(|&b| b > 0 && replace_one(&ep, b, b - 1).as_ref() == Some(&ed))
                .ok_or("parent and deletion exponents do not fit")?;
            expect_eq("restriction", &remove_one(&ep, b).expect("exponent"), exponents)?;
        }
        _ => unreachable!("freeness rules only"),
    }
    let x = chi(a)?;
    if x != CharPoly::from_roots(&claimed) {
        return Err(format!("χ = {x} does not have roots {claimed:?}"));
    }
    Ok(claimed)
}

/// Re-derives every step of `c` as a statement about `a`. The error names
/// the first node that fails, from the root down.
pub fn cert_verify(a: &Arrangement, c: &Certificate) -> Check<()> {
    match c {
        Certificate::NonFreeCharPoly { charpoly: coeffs } => {
            let x = chi(a)?;
            if x.coeffs() != coeffs.as_slice() {
                return Err(format!("χ = {x}, certificate states {coeffs:?}"));
            }
            if x.integer_roots(a.len() as u64).is_some() {
                return Err(format!("χ = {x} splits"));
            }
            Ok(())
        }
        Certificate::NonFreeAdditionObstruction {
            hyperplane,
            deletion_exponents,
            obstruction_sum,
            deletion,
        } => {
            let h = member(a, hyperplane)?;
            let del = a.delete(&h).map_err(|e| e.to_string())?;
            let e = free(&del, deletion).map_err(|m| format!("deletion: {m}"))?;
            expect_eq("deletion", &e, deletion_exponents)?;
            let res = a.restrict(&h).map_err(|e| e.to_string())?;
            let sum = (del.len() - res.len()) as u64;
            if sum != *obstruction_sum {
                return Err(format!("obstruction sum is {sum}, certificate states {obstruction_sum}"));
            }
            let blocked = match remove_one(&e, sum) {
                None => true,
                Some(_) if sum == 1 && del.is_irreducible() => true,
                Some(rest) => chi(&res)? != CharPoly::from_roots(&rest),
            };
            if !blocked {
                return Err("the addition is not obstructed".into());
            }
            Ok(())
        }
        Certificate::NonFreeRestrictionMismatch {
            hyperplane,
            parent_exponents,
            restriction_size,
            parent,
        } => {
            let h = parse_hyperplane(a, a.dim(), hyperplane)?;
            let big = a.add(h.clone()).map_err(|e| e.to_string())?;
            let e = free(&big, parent).map_err(|m| format!("parent: {m}"))?;
            expect_eq("parent", &e, parent_exponents)?;
            let res = big.restrict(&h).map_err(|e| e.to_string())?;
            if res.len() != *restriction_size {
                return Err(format!("|A^H| = {}, certificate states {restriction_size}", res.len()));
            }
            let b = (big.len() - res.len()) as u64;
            let mismatch = match remove_one(&e, b) {
                None => true,
                Some(rest) => chi(&res)? != CharPoly::from_roots(&rest),
            };
            if !mismatch {
                return Err("restriction is consistent with a free deletion".into());
            }
            Ok(())
        }
        _ => free(a, c).map(|_| ()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::builders;
    use crate::freeness::search::inductively_free;
    use crate::freeness::Budget;

    #[test]
    fn search_certificates_replay() {
        let a = builders::monomial(3, 3, 3).unwrap();
        let m = inductively_free(&a, &Budget::default()).unwrap();
        let c = m.certificate().unwrap();
        assert_eq!(cert_verify(&a, c), Ok(()));
        let mut bad = c.clone();
        if let Certificate::Supersolvable { exponents, .. } | Certificate::AdditionDeletion { exponents, .. } = &mut bad {
            exponents[0] += 1;
            exponents[2] -= 1;
        }
        assert!(cert_verify(&a, &bad).is_err());
    }

    #[test]
    fn catalog_fact_with_wrong_key() {
        let a = builders::g24();
        let c = Certificate::CatalogFact {
            source: "test".into(),
            key: builders::g29().key().0,
            exponents: vec![1, 9, 11],
        };
        assert!(cert_verify(&a, &c).is_err());
        let c = Certificate::CatalogFact {
            source: "test".into(),
            key: a.key().0,
            exponents: vec![1, 9, 11],
        };
        assert_eq!(cert_verify(&a, &c), Ok(()));
    }

    #[test]
    fn non_split_charpoly() {
        let (a, _, _) = builders::g33_res_a1();
        // the printed row 18 gives a non-free arrangement
        let f = a.field();
        let row: Vec<_> = builders::G33_RES_A1_ROW18_AS_PRINTED
            .iter()
            .map(|s| f.parse(s).unwrap())
            .collect();
        let mut hs = a.hyperplanes().to_vec();
        hs[17] = Hyperplane::new(row).unwrap();
        let printed = Arrangement::new(f, 4, hs).unwrap();
        let x = charpoly(&printed).unwrap();
        assert_eq!(x.integer_roots(28), None);
        let c = Certificate::NonFreeCharPoly {
            charpoly: x.coeffs().to_vec(),
        };
        assert_eq!(cert_verify(&printed, &c), Ok(()));
        assert!(cert_verify(&a, &c).is_err());
    }
}
