//! Integer polynomials in `t`, used for characteristic polynomials.

use std::fmt;

use serde::{Deserialize, Serialize};

/// A polynomial with integer coefficients, stored low-to-high with no
/// trailing zeros (the zero polynomial is empty).
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct CharPoly {
    coeffs: Vec<i64>,
}

impl CharPoly {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        CharPoly { coeffs }
    }

    pub fn monomial(degree: usize) -> Self {
        let mut c = vec![0; degree + 1];
        c[degree] = 1;
        CharPoly { coeffs: c }
    }

    /// `Π (t − r)`.
    pub fn from_roots(roots: &[u64]) -> Self {
        let mut p = CharPoly::new(vec![1]);
        for &r in roots {
            p = p.mul(&CharPoly::new(vec![-(r as i64), 1]));
        }
        p
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, t: i64) -> i128 {
        self.coeffs
            .iter()
            .rev()
            .fold(0i128, |acc, &c| acc * t as i128 + c as i128)
    }

    pub fn add(&self, other: &CharPoly) -> CharPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        CharPoly::new(
            (0..n)
                .map(|k| self.coeffs.get(k).unwrap_or(&0) + other.coeffs.get(k).unwrap_or(&0))
                .collect(),
        )
    }

    pub fn sub(&self, other: &CharPoly) -> CharPoly {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, k: i64) -> CharPoly {
        CharPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn mul(&self, other: &CharPoly) -> CharPoly {
        if self.is_zero() || other.is_zero() {
            return CharPoly::default();
        }
        let mut out = vec![0i64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        CharPoly::new(out)
    }

    /// Exact division by a monic divisor; `None` unless the remainder is zero.
    pub fn div_exact(&self, d: &CharPoly) -> Option<CharPoly> {
        let dd = d.degree()?;
        if d.coeffs[dd] != 1 {
            return None;
        }
        if self.is_zero() {
            return Some(CharPoly::default());
        }
        let n = self.degree().expect("nonzero");
        if n < dd {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let mut q = vec![0i64; n - dd + 1];
        for k in (0..q.len()).rev() {
            let c = rem[k + dd];
            q[k] = c;
            if c != 0 {
                for (j, &dj) in d.coeffs.iter().enumerate() {
                    rem[k + j] -= c * dj;
                }
            }
        }
        rem.iter().all(|&r| r == 0).then(|| CharPoly::new(q))
    }

    pub fn divides(&self, other: &CharPoly) -> bool {
        other.div_exact(self).is_some()
    }

    /// The multiset of integer roots in `0..=max_root` if the polynomial is
    /// monic and splits completely into such linear factors; roots ascending.
    pub fn integer_roots(&self, max_root: u64) -> Option<Vec<u64>> {
        let deg = self.degree()?;
        if self.coeffs[deg] != 1 {
            return None;
        }
        let mut p = self.clone();
        let mut roots = Vec::with_capacity(deg);
        let mut k = 0u64;
        while p.degree() != Some(0) {
            if k > max_root {
                return None;
            }
            match p.div_exact(&CharPoly::new(vec![-(k as i64), 1])) {
                Some(q) => {
                    roots.push(k);
                    p = q;
                }
                None => k += 1,
            }
        }
        Some(roots)
    }
}

impl fmt::Display for CharPoly {
    /// Factored as `t^a(t-b)^c…` when the polynomial splits over the
    /// non-negative integers, expanded otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let bound = self.coeffs.iter().map(|c| c.unsigned_abs()).max().unwrap_or(0);
        if let Some(roots) = self.integer_roots(bound) {
            if roots.is_empty() {
                return f.write_str("1");
            }
            let mut i = 0;
            while i < roots.len() {
                let r = roots[i];
                let m = roots[i..].iter().take_while(|&&x| x == r).count();
                if r == 0 {
                    f.write_str("t")?;
                } else {
                    write!(f, "(t-{r})")?;
                }
                if m > 1 {
                    write!(f, "^{m}")?;
                }
                i += m;
            }
            return Ok(());
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let a = c.unsigned_abs();
            f.write_str(sign)?;
            match k {
                0 => write!(f, "{a}")?,
                _ => {
                    if a != 1 {
                        write!(f, "{a}")?;
                    }
                    f.write_str("t")?;
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_and_display() {
        let p = CharPoly::from_roots(&[1, 9, 11]);
        assert_eq!(p.integer_roots(21), Some(vec![1, 9, 11]));
        assert_eq!(p.to_string(), "(t-1)(t-9)(t-11)");
        assert_eq!(CharPoly::from_roots(&[1, 1, 1]).to_string(), "(t-1)^3");
        assert_eq!(CharPoly::monomial(3).to_string(), "t^3");
        let q = CharPoly::new(vec![3, -3, 1]);
        assert_eq!(q.integer_roots(3), None);
        assert_eq!(q.to_string(), "t^2-3t+3");
        assert_eq!(CharPoly::from_roots(&[0, 2]).to_string(), "t(t-2)");
    }

    #[test]
    fn division() {
        let a = CharPoly::from_roots(&[1, 13, 17, 29]);
        let b = CharPoly::from_roots(&[1, 13, 17]);
        assert_eq!(a.div_exact(&b), Some(CharPoly::from_roots(&[29])));
        assert!(!CharPoly::from_roots(&[1, 15]).divides(&a));
        assert_eq!(a.sub(&a), CharPoly::default());
    }
}
