use super::cyclotomic::{CyclotomicField, FieldElement};

/// A dense row-major matrix over one cyclotomic field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: CyclotomicField,
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

/// Reduced row-echelon form together with its rank and pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: CyclotomicField, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: CyclotomicField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds a matrix from rows of equal length `cols`.
    pub fn from_rows(field: CyclotomicField, cols: usize, rows: &[Vec<FieldElement>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            for e in r {
                assert!(e.field() == field, "field mismatch");
            }
            data.extend(r.iter().cloned());
        }
        Matrix {
            field,
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn field(&self) -> CyclotomicField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &FieldElement {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: FieldElement) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[FieldElement] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<FieldElement>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Exact reduced row-echelon form. Pivots are taken leftmost first, and
    /// within a column the first nonzero candidate row in index order is used.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for j in c..m.cols {
                let v = m.get(r, j).mul(&inv);
                m.set(r, j, v);
            }
            let pivot_row: Vec<FieldElement> = m.row(r).to_vec();
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for (j, pv) in pivot_row.iter().enumerate().skip(c) {
                    let idx = i * m.cols + j;
                    m.data[idx].sub_mul_assign(&f, pv);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref {
            matrix: m,
            rank: r,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// A basis of the right kernel `{x : Mx = 0}`, one basis vector per row,
    /// ordered by free column.
    pub fn kernel(&self) -> Matrix {
        let Rref {
            matrix: r, pivots, ..
        } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Matrix::zeros(self.field, free.len(), self.cols);
        for (row, &f) in free.iter().enumerate() {
            k.set(row, f, self.field.one());
            for (i, &p) in pivots.iter().enumerate() {
                k.set(row, p, r.get(i, f).neg());
            }
        }
        k
    }

    pub fn mul_vec(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut acc = self.field.zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    acc = acc.add(&a.mul(b));
                }
                acc
            })
            .collect()
    }
}

/// Row space of a set of vectors kept in reduced echelon form; supports
/// incremental extension and membership tests.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EchelonBasis {
    rows: Vec<Vec<FieldElement>>,
    pivots: Vec<usize>,
}

impl EchelonBasis {
    pub fn new() -> Self {
        EchelonBasis {
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<FieldElement>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// `v` minus its projection along the pivot coordinates.
    pub fn residual(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let f = out[p].clone();
            if f.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(row) {
                o.sub_mul_assign(&f, x);
            }
        }
        out
    }

    pub fn contains(&self, v: &[FieldElement]) -> bool {
        // fast path: a vector in the span is determined by its pivot entries
        if self.rows.is_empty() {
            return v.iter().all(FieldElement::is_zero);
        }
        self.residual(v).iter().all(FieldElement::is_zero)
    }

    /// Adds `v` to the span; returns false if it was already contained.
    pub fn insert(&mut self, v: &[FieldElement]) -> bool {
        let mut r = self.residual(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].inv().expect("nonzero");
        for x in r.iter_mut() {
            *x = x.mul(&inv);
        }
        for row in self.rows.iter_mut() {
            let f = row[p].clone();
            if f.is_zero() {
                continue;
            }
            for (o, x) in row.iter_mut().zip(&r) {
                o.sub_mul_assign(&f, x);
            }
        }
        let at = self.pivots.iter().position(|&q| q > p).unwrap_or(self.pivots.len());
        self.pivots.insert(at, p);
        self.rows.insert(at, r);
        true
    }

    pub fn from_vectors<'a>(vs: impl IntoIterator<Item = &'a [FieldElement]>) -> Self {
        let mut b = Self::new();
        for v in vs {
            b.insert(v);
        }
        b
    }

    /// Dimension of the intersection of two row spaces.
    pub fn intersection_dim(&self, other: &EchelonBasis) -> usize {
        let mut joint = self.clone();
        for r in &other.rows {
            joint.insert(r);
        }
        self.rank() + other.rank() - joint.rank()
    }
}

impl Default for EchelonBasis {
    fn default() -> Self {
        Self::new()
    }
}
