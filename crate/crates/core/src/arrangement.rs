//! Hyperplanes and central arrangements over a fixed cyclotomic field.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{CyclotomicField, EchelonBasis, FieldElement, Matrix};

/// A linear hyperplane `ker α`, stored with the first nonzero coordinate of
/// `α` scaled to 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Hyperplane {
    covector: Vec<FieldElement>,
}

impl Hyperplane {
    pub fn new(mut covector: Vec<FieldElement>) -> Result<Self> {
        let Some(p) = covector.iter().position(|c| !c.is_zero()) else {
            return Err(Error::ZeroCovector);
        };
        let field = covector[p].field();
        for c in &covector {
            if c.field() != field {
                return Err(crate::field::FieldError::FieldMismatch {
                    left: field.order(),
                    right: c.field().order(),
                }
                .into());
            }
        }
        if !covector[p].is_one() {
            let inv = covector[p].inv()?;
            for c in covector.iter_mut().skip(p) {
                *c = c.mul(&inv);
            }
        }
        Ok(Hyperplane { covector })
    }

    /// Convenience constructor from integer coordinates.
    pub fn from_ints(field: CyclotomicField, coords: &[i64]) -> Result<Self> {
        Self::new(coords.iter().map(|&c| field.from_int(c)).collect())
    }

    /// Coordinate hyperplane `ker x_i` in dimension `dim`.
    pub fn coordinate(field: CyclotomicField, dim: usize, i: usize) -> Self {
        let mut v = vec![field.zero(); dim];
        v[i] = field.one();
        Hyperplane { covector: v }
    }

    pub fn covector(&self) -> &[FieldElement] {
        &self.covector
    }

    pub fn dim(&self) -> usize {
        self.covector.len()
    }

    pub fn field(&self) -> CyclotomicField {
        self.covector[0].field()
    }

    /// Space separated canonical scalars, as on an `h` line of a `.arr` file.
    pub fn text(&self) -> String {
        let parts: Vec<String> = self.covector.iter().map(|c| c.to_string()).collect();
        parts.join(" ")
    }

    /// `α(v)`.
    pub fn eval(&self, v: &[FieldElement]) -> FieldElement {
        let mut acc = self.field().zero();
        for (a, x) in self.covector.iter().zip(v) {
            acc = acc.add(&a.mul(x));
        }
        acc
    }
}

impl fmt::Debug for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.text())
    }
}

impl fmt::Display for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.covector.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", "))
    }
}

/// Canonical text key of an arrangement: dimension, field order and the
/// sorted covector texts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ArrKey(pub String);

impl fmt::Display for ArrKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Clone)]
pub struct Arrangement {
    field: CyclotomicField,
    dim: usize,
    hyperplanes: Vec<Hyperplane>,
    pub name: Option<String>,
}

impl PartialEq for Arrangement {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for Arrangement {}

impl fmt::Debug for Arrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Arrangement({}, dim {}, {} hyperplanes over Q(zeta_{}))",
            self.name.as_deref().unwrap_or("-"),
            self.dim,
            self.hyperplanes.len(),
            self.field.order()
        )
    }
}

impl Arrangement {
    pub fn new(field: CyclotomicField, dim: usize, hyperplanes: Vec<Hyperplane>) -> Result<Self> {
        let mut seen = HashMap::with_capacity(hyperplanes.len());
        for h in &hyperplanes {
            if h.dim() != dim {
                return Err(Error::Dimension {
                    expected: dim,
                    got: h.dim(),
                });
            }
            if h.field() != field {
                return Err(crate::field::FieldError::FieldMismatch {
                    left: field.order(),
                    right: h.field().order(),
                }
                .into());
            }
            if seen.insert(h, ()).is_some() {
                return Err(Error::Duplicate(h.text()));
            }
        }
        Ok(Arrangement {
            field,
            dim,
            hyperplanes,
            name: None,
        })
    }

    /// Builds an arrangement, silently dropping repeated hyperplanes.
    pub fn dedup(field: CyclotomicField, dim: usize, hyperplanes: Vec<Hyperplane>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        let hs = hyperplanes.into_iter().filter(|h| seen.insert(h.clone())).collect();
        Self::new(field, dim, hs)
    }

    /// The empty arrangement `Φ_ℓ`.
    pub fn empty(field: CyclotomicField, dim: usize) -> Self {
        Arrangement {
            field,
            dim,
            hyperplanes: Vec::new(),
            name: None,
        }
    }

    /// The coordinate hyperplanes of `ℚ^ℓ`.
    pub fn boolean(field: CyclotomicField, dim: usize) -> Self {
        let hs = (0..dim).map(|i| Hyperplane::coordinate(field, dim, i)).collect();
        Arrangement {
            field,
            dim,
            hyperplanes: hs,
            name: Some(format!("boolean{dim}")),
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn field(&self) -> CyclotomicField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn hyperplane(&self, i: usize) -> &Hyperplane {
        &self.hyperplanes[i]
    }

    pub fn index_of(&self, h: &Hyperplane) -> Option<usize> {
        self.hyperplanes.iter().position(|k| k == h)
    }

    pub fn contains(&self, h: &Hyperplane) -> bool {
        self.index_of(h).is_some()
    }

    fn check_compatible(&self, h: &Hyperplane) -> Result<()> {
        if h.dim() != self.dim {
            return Err(Error::Dimension {
                expected: self.dim,
                got: h.dim(),
            });
        }
        if h.field() != self.field {
            return Err(crate::field::FieldError::FieldMismatch {
                left: self.field.order(),
                right: h.field().order(),
            }
            .into());
        }
        Ok(())
    }

    /// `A ∖ {H}`, keeping the order of the remaining hyperplanes.
    pub fn delete(&self, h: &Hyperplane) -> Result<Self> {
        let i = self.index_of(h).ok_or_else(|| Error::NotInArrangement(h.text()))?;
        let mut hs = self.hyperplanes.clone();
        hs.remove(i);
        Ok(Arrangement {
            field: self.field,
            dim: self.dim,
            hyperplanes: hs,
            name: None,
        })
    }

    /// `A ∪ {H}` with `H` appended.
    pub fn add(&self, h: Hyperplane) -> Result<Self> {
        self.check_compatible(&h)?;
        if self.contains(&h) {
            return Err(Error::Duplicate(h.text()));
        }
        let mut hs = self.hyperplanes.clone();
        hs.push(h);
        Ok(Arrangement {
            field: self.field,
            dim: self.dim,
            hyperplanes: hs,
            name: None,
        })
    }

    /// The subarrangement on the given indices, in the given order.
    pub fn subarrangement(&self, indices: &[usize]) -> Self {
        Arrangement {
            field: self.field,
            dim: self.dim,
            hyperplanes: indices.iter().map(|&i| self.hyperplanes[i].clone()).collect(),
            name: None,
        }
    }

    /// Restriction to `H` in the coordinates of a fixed kernel basis of `α_H`.
    pub fn restrict(&self, h: &Hyperplane) -> Result<Self> {
        Ok(self.restrict_with_map(h)?.0)
    }

    /// Restriction to `H`, together with the index in `A^H` of the trace of
    /// every hyperplane of `A` (`None` for `H` itself).
    ///
    /// The kernel basis is the one produced by [`Matrix::kernel`] on the
    /// single normalized row `α_H`: for the pivot `p` and each free column
    /// `j`, the vector `e_j − α_H[j] e_p`. The restricted covector of `K`
    /// therefore has coordinates `α_K[j] − α_H[j] α_K[p]`.
    pub fn restrict_with_map(&self, h: &Hyperplane) -> Result<(Self, Vec<Option<usize>>)> {
        let hi = self.index_of(h).ok_or_else(|| Error::NotInArrangement(h.text()))?;
        let a = h.covector();
        let p = a.iter().position(|c| !c.is_zero()).expect("normalized");
        let mut out: Vec<Hyperplane> = Vec::new();
        let mut index: HashMap<Hyperplane, usize> = HashMap::new();
        let mut map = Vec::with_capacity(self.len());
        for (i, k) in self.hyperplanes.iter().enumerate() {
            if i == hi {
                map.push(None);
                continue;
            }
            let b = k.covector();
            let v: Vec<FieldElement> = (0..self.dim)
                .filter(|&j| j != p)
                .map(|j| {
                    let mut x = b[j].clone();
                    x.sub_mul_assign(&a[j], &b[p]);
                    x
                })
                .collect();
            let t = Hyperplane::new(v).expect("distinct hyperplanes have nonzero traces");
            let next = out.len();
            let at = *index.entry(t.clone()).or_insert_with(|| {
                out.push(t);
                next
            });
            map.push(Some(at));
        }
        let r = Arrangement {
            field: self.field,
            dim: self.dim - 1,
            hyperplanes: out,
            name: None,
        };
        Ok((r, map))
    }

    /// `A₁ × A₂` in `V₁ ⊕ V₂`.
    pub fn product(&self, other: &Arrangement) -> Result<Self> {
        if self.field != other.field {
            return Err(crate::field::FieldError::FieldMismatch {
                left: self.field.order(),
                right: other.field.order(),
            }
            .into());
        }
        let dim = self.dim + other.dim;
        let zero = self.field.zero();
        let mut hs = Vec::with_capacity(self.len() + other.len());
        for h in &self.hyperplanes {
            let mut v = h.covector().to_vec();
            v.resize(dim, zero.clone());
            hs.push(Hyperplane { covector: v });
        }
        for h in &other.hyperplanes {
            let mut v = vec![zero.clone(); self.dim];
            v.extend(h.covector().iter().cloned());
            hs.push(Hyperplane { covector: v });
        }
        Ok(Arrangement {
            field: self.field,
            dim,
            hyperplanes: hs,
            name: None,
        })
    }

    pub fn covector_matrix(&self) -> Matrix {
        let rows: Vec<Vec<FieldElement>> =
            self.hyperplanes.iter().map(|h| h.covector().to_vec()).collect();
        Matrix::from_rows(self.field, self.dim, &rows)
    }

    pub fn rank(&self) -> usize {
        let mut b = EchelonBasis::new();
        for h in &self.hyperplanes {
            b.insert(h.covector());
            if b.rank() == self.dim {
                break;
            }
        }
        b.rank()
    }

    pub fn is_essential(&self) -> bool {
        self.rank() == self.dim
    }

    /// Rewrites every covector in coordinates of the span of all covectors,
    /// giving an essential arrangement of dimension `rank A`. The coordinates
    /// are the entries at the pivot columns of the reduced span basis.
    pub fn essentialize(&self) -> Self {
        let rr = self.covector_matrix().rref();
        let hs = self
            .hyperplanes
            .iter()
            .map(|h| {
                let v = rr.pivots.iter().map(|&p| h.covector()[p].clone()).collect();
                Hyperplane::new(v).expect("nonzero covector stays nonzero on pivots")
            })
            .collect();
        Arrangement {
            field: self.field,
            dim: rr.rank,
            hyperplanes: hs,
            name: self.name.clone(),
        }
    }

    /// The finest splitting of `A` into a product, as index classes sorted by
    /// their smallest member. Two hyperplanes share a class iff some circuit
    /// of the covector matroid contains both; the classes are read off the
    /// fundamental circuits of a greedy basis.
    pub fn irreducible_components(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut basis_idx = Vec::new();
        let mut eb = EchelonBasis::new();
        for (i, h) in self.hyperplanes.iter().enumerate() {
            if eb.insert(h.covector()) {
                basis_idx.push(i);
            }
        }
        let r = basis_idx.len();
        let others: Vec<usize> = (0..n).filter(|i| !basis_idx.contains(i)).collect();
        // columns: basis covectors, then the remaining covectors
        let mut m = Matrix::zeros(self.field, self.dim, r + others.len());
        for (c, &i) in basis_idx.iter().chain(others.iter()).enumerate() {
            for (row, x) in self.hyperplanes[i].covector().iter().enumerate() {
                m.set(row, c, x.clone());
            }
        }
        let rr = m.rref();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut x = x;
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for (k, &e) in others.iter().enumerate() {
            for (bi, &b) in basis_idx.iter().enumerate() {
                if !rr.matrix.get(bi, r + k).is_zero() {
                    let (x, y) = (find(&mut parent, e), find(&mut parent, b));
                    parent[x] = y;
                }
            }
        }
        let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
        for i in 0..n {
            let root = find(&mut parent, i);
            groups.entry(root).or_default().push(i);
        }
        let mut out: Vec<Vec<usize>> = groups.into_values().collect();
        out.sort();
        out
    }

    /// True iff `A` is nonempty and admits no nontrivial product splitting.
    pub fn is_irreducible(&self) -> bool {
        self.irreducible_components().len() == 1
    }

    pub fn key(&self) -> ArrKey {
        let mut texts: Vec<String> = self.hyperplanes.iter().map(Hyperplane::text).collect();
        texts.sort();
        ArrKey(format!(
            "Q{}|{}|{}",
            self.field.order(),
            self.dim,
            texts.join(";")
        ))
    }

    /// Hyperplanes in key order.
    pub fn sorted(&self) -> Self {
        let mut hs = self.hyperplanes.clone();
        hs.sort_by_cached_key(Hyperplane::text);
        Arrangement {
            field: self.field,
            dim: self.dim,
            hyperplanes: hs,
            name: self.name.clone(),
        }
    }

    /// `.arr` text with hyperplanes in key order.
    pub fn to_arr_string(&self) -> String {
        let mut out = format!("field cyclotomic {}\ndim {}\n", self.field.order(), self.dim);
        let mut texts: Vec<String> = self.hyperplanes.iter().map(Hyperplane::text).collect();
        texts.sort();
        for t in texts {
            out.push_str("h ");
            out.push_str(&t);
            out.push('\n');
        }
        out
    }

    /// Parses the `.arr` format: a `field cyclotomic <n>` line, a `dim <l>`
    /// line, then one `h <c1> ... <cl>` line per hyperplane. `#` starts a
    /// comment; blank lines are skipped.
    pub fn parse_arr(text: &str) -> Result<Self> {
        let mut field: Option<CyclotomicField> = None;
        let mut dim: Option<usize> = None;
        let mut hs = Vec::new();
        let mut seen: HashMap<Hyperplane, usize> = HashMap::new();
        for (ln, raw) in text.lines().enumerate() {
            let line_no = ln + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let perr = |msg: String| Error::Parse { line: line_no, msg };
            let mut words = line.split_whitespace();
            let head = words.next().expect("nonempty line");
            match (head, field.is_some(), dim.is_some()) {
                ("field", false, _) => {
                    if words.next() != Some("cyclotomic") {
                        return Err(perr("expected `field cyclotomic <n>`".into()));
                    }
                    let n: u32 = words
                        .next()
                        .and_then(|w| w.parse().ok())
                        .filter(|&n| n >= 1)
                        .ok_or_else(|| perr("expected a positive field order".into()))?;
                    if words.next().is_some() {
                        return Err(perr("trailing text after field order".into()));
                    }
                    field = Some(CyclotomicField::new(n));
                }
                (_, false, _) => return Err(perr("first line must be `field cyclotomic <n>`".into())),
                ("dim", true, false) => {
                    let l: usize = words
                        .next()
                        .and_then(|w| w.parse().ok())
                        .ok_or_else(|| perr("expected `dim <l>`".into()))?;
                    if words.next().is_some() {
                        return Err(perr("trailing text after dim".into()));
                    }
                    dim = Some(l);
                }
                (_, true, false) => return Err(perr("second line must be `dim <l>`".into())),
                ("h", true, true) => {
                    let f = field.expect("checked");
                    let l = dim.expect("checked");
                    let coords: Vec<&str> = words.collect();
                    if coords.len() != l {
                        return Err(perr(format!(
                            "covector has {} entries, expected {l}",
                            coords.len()
                        )));
                    }
                    let mut v = Vec::with_capacity(l);
                    for c in coords {
                        v.push(f.parse(c).map_err(|e| perr(format!("scalar {c:?}: {e}")))?);
                    }
                    let h = Hyperplane::new(v).map_err(|e| perr(e.to_string()))?;
                    if let Some(prev) = seen.insert(h.clone(), line_no) {
                        return Err(perr(format!("duplicate of the hyperplane on line {prev}")));
                    }
                    hs.push(h);
                }
                (other, _, _) => return Err(perr(format!("unexpected directive {other:?}"))),
            }
        }
        let field = field.ok_or(Error::Parse {
            line: 0,
            msg: "missing field line".into(),
        })?;
        let dim = dim.ok_or(Error::Parse {
            line: 0,
            msg: "missing dim line".into(),
        })?;
        Arrangement::new(field, dim, hs)
    }

    pub fn read_arr(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?;
        let mut a = Self::parse_arr(&text)?;
        a.name = path.file_stem().map(|s| s.to_string_lossy().into_owned());
        Ok(a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: u32) -> CyclotomicField {
        CyclotomicField::new(n)
    }

    #[test]
    fn delete_add_and_sizes() {
        let b3 = Arrangement::boolean(q(1), 3);
        let x1 = Hyperplane::coordinate(q(1), 3, 0);
        let d = b3.delete(&x1).unwrap();
        assert_eq!(d.len(), 2);
        assert!(d.delete(&x1).is_err());
        assert!(b3.add(x1.clone()).is_err());
        assert_eq!(d.add(x1).unwrap().key(), b3.key());

        let one = Arrangement::boolean(q(1), 1);
        assert!(one.delete(&Hyperplane::coordinate(q(1), 1, 0)).unwrap().is_empty());
    }

    #[test]
    fn normalization_and_keys() {
        let f = q(4);
        let a = Hyperplane::from_ints(f, &[0, 2, 0, 0]).unwrap();
        assert_eq!(a, Hyperplane::coordinate(f, 4, 1));
        let i = f.zeta();
        let h = Hyperplane::new(vec![f.zero(), i.clone(), i.mul(&i)]).unwrap();
        assert_eq!(h.text(), "0 1 z");
        assert!(Hyperplane::new(vec![f.zero(), f.zero()]).is_err());

        let b = Arrangement::boolean(f, 3);
        let mut hs = b.hyperplanes().to_vec();
        hs.reverse();
        assert_eq!(Arrangement::new(f, 3, hs).unwrap().key(), b.key());
    }

    #[test]
    fn restriction_of_boolean() {
        let b3 = Arrangement::boolean(q(1), 3);
        let (r, map) = b3.restrict_with_map(&Hyperplane::coordinate(q(1), 3, 0)).unwrap();
        assert_eq!((r.dim(), r.len()), (2, 2));
        assert_eq!(map, vec![None, Some(0), Some(1)]);
    }

    #[test]
    fn product_rank_and_irreducibility() {
        let f = q(1);
        let b2 = Arrangement::boolean(f, 2);
        let b4 = b2.product(&b2).unwrap();
        assert_eq!(b4.key(), Arrangement::boolean(f, 4).key());
        assert_eq!(b4.rank(), 4);
        assert!(!b4.is_irreducible());
        assert_eq!(b4.irreducible_components().len(), 4);

        let phi = Arrangement::empty(f, 1);
        assert_eq!(phi.product(&phi).unwrap().key(), Arrangement::empty(f, 2).key());
        assert_eq!(Arrangement::empty(f, 3).rank(), 0);

        let tri = b2.add(Hyperplane::from_ints(f, &[1, -1]).unwrap()).unwrap();
        assert!(tri.is_irreducible());
        let one = Arrangement::new(f, 3, vec![Hyperplane::coordinate(f, 3, 2)]).unwrap();
        assert_eq!(one.rank(), 1);
    }

    #[test]
    fn arr_round_trip_and_errors() {
        let f = q(3);
        let z = f.zeta();
        let h = Hyperplane::new(vec![f.one(), z.clone(), z.mul(&z)]).unwrap();
        let a = Arrangement::boolean(f, 3).add(h).unwrap();
        let text = a.to_arr_string();
        let b = Arrangement::parse_arr(&text).unwrap();
        assert_eq!(a.key(), b.key());
        assert_eq!(b.to_arr_string(), text);

        let with_comments = "# header\nfield cyclotomic 3\n\ndim 2 # ambient\nh 1 0\nh 0 z\n";
        assert_eq!(Arrangement::parse_arr(with_comments).unwrap().len(), 2);

        for (bad, line) in [
            ("dim 2\n", 1),
            ("field cyclotomic 3\nh 1 0\n", 2),
            ("field cyclotomic 3\ndim 2\nh 1\n", 3),
            ("field cyclotomic 3\ndim 2\nh 1 0\nh 2 0\n", 4),
            ("field cyclotomic 3\ndim 2\nh 1 q\n", 3),
            ("field cyclotomic x\n", 1),
        ] {
            match Arrangement::parse_arr(bad) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{bad:?}"),
                other => panic!("{bad:?}: {other:?}"),
            }
        }
    }
}
