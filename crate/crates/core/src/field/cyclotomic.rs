use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Mutex, OnceLock};

use smallvec::{smallvec, SmallVec};

use super::rational::Rational;
use super::FieldError;

struct FieldData {
    order: u32,
    minimal_poly: Vec<i64>,
    degree: usize,
    /// `powers[k]` holds the coefficients of `z^k mod Φ_n` for `k < n`.
    powers: Vec<Vec<i64>>,
}

/// The cyclotomic field `ℚ(ζ_n)`; a cheap copyable handle to interned data.
#[derive(Clone, Copy)]
pub struct CyclotomicField {
    data: &'static FieldData,
}

impl PartialEq for CyclotomicField {
    fn eq(&self, other: &Self) -> bool {
        self.data.order == other.data.order
    }
}

impl Eq for CyclotomicField {}

impl Hash for CyclotomicField {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.data.order.hash(state)
    }
}

impl fmt::Debug for CyclotomicField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta_{})", self.data.order)
    }
}

/// Exact quotient of `num` by the monic `den`, both low-to-high.
fn div_exact_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    if rem.len() <= dd {
        return vec![0];
    }
    let mut q = vec![0i64; rem.len() - dd];
    for k in (0..q.len()).rev() {
        let c = rem[k + dd];
        q[k] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[k + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "inexact cyclotomic division");
    q
}

/// Integer coefficients of the `n`-th cyclotomic polynomial, low-to-high.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    assert!(n >= 1);
    let mut cache: HashMap<u32, Vec<i64>> = HashMap::new();
    fn go(n: u32, cache: &mut HashMap<u32, Vec<i64>>) -> Vec<i64> {
        if let Some(p) = cache.get(&n) {
            return p.clone();
        }
        let mut num = vec![0i64; n as usize + 1];
        num[0] = -1;
        num[n as usize] = 1;
        for d in 1..n {
            if n % d == 0 {
                let phi_d = go(d, cache);
                num = div_exact_monic(&num, &phi_d);
            }
        }
        cache.insert(n, num.clone());
        num
    }
    go(n, &mut cache)
}

fn registry() -> &'static Mutex<HashMap<u32, &'static FieldData>> {
    static REG: OnceLock<Mutex<HashMap<u32, &'static FieldData>>> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(HashMap::new()))
}

impl CyclotomicField {
    /// `ℚ(ζ_n)`. Orders 1 and 2 both give `ℚ` (degree 1).
    pub fn new(n: u32) -> Self {
        assert!(n >= 1, "cyclotomic order must be positive");
        let mut reg = registry().lock().expect("field registry poisoned");
        if let Some(d) = reg.get(&n) {
            return CyclotomicField { data: d };
        }
        let minimal_poly = cyclotomic_polynomial(n);
        let degree = minimal_poly.len() - 1;
        let mut powers = Vec::with_capacity(n as usize);
        let mut cur = vec![0i64; degree];
        cur[0] = 1;
        for _ in 0..n {
            powers.push(cur.clone());
            // multiply by z and reduce with z^d = -Σ m_k z^k
            let top = cur[degree - 1];
            let mut next = vec![0i64; degree];
            for k in (1..degree).rev() {
                next[k] = cur[k - 1];
            }
            for k in 0..degree {
                next[k] -= top * minimal_poly[k];
            }
            cur = next;
        }
        let data: &'static FieldData = Box::leak(Box::new(FieldData {
            order: n,
            minimal_poly,
            degree,
            powers,
        }));
        reg.insert(n, data);
        CyclotomicField { data }
    }

    pub fn order(&self) -> u32 {
        self.data.order
    }

    pub fn degree(&self) -> usize {
        self.data.degree
    }

    /// Coefficients of `Φ_n`, low-to-high (monic).
    pub fn minimal_poly(&self) -> &[i64] {
        &self.data.minimal_poly
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            field: *self,
            coeffs: smallvec![Rational::ZERO; self.degree()],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_rational(Rational::ONE)
    }

    pub fn from_int(&self, n: i64) -> FieldElement {
        self.from_rational(Rational::from_int(n))
    }

    pub fn from_rational(&self, r: Rational) -> FieldElement {
        let mut e = self.zero();
        e.coeffs[0] = r;
        e
    }

    /// `ζ_n^k` for any integer `k`.
    pub fn zeta_pow(&self, k: i64) -> FieldElement {
        let n = self.order() as i64;
        let k = k.rem_euclid(n) as usize;
        FieldElement {
            field: *self,
            coeffs: self.data.powers[k].iter().map(|&c| Rational::from_int(c)).collect(),
        }
    }

    pub fn zeta(&self) -> FieldElement {
        self.zeta_pow(1)
    }

    /// Element `Σ coeffs[k] ζ^k`; any length is accepted and reduced.
    pub fn from_coeffs(&self, coeffs: &[Rational]) -> FieldElement {
        let mut e = self.zero();
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            e.add_scaled_power(c, k);
        }
        e
    }
}

/// An element of `ℚ(ζ_n)` as a reduced coefficient vector of length `φ(n)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: CyclotomicField,
    coeffs: SmallVec<[Rational; 6]>,
}

impl FieldElement {
    pub fn field(&self) -> CyclotomicField {
        self.field
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Rational::is_zero)
    }

    /// The rational value if the element lies in `ℚ`.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.coeffs[1..]
            .iter()
            .all(Rational::is_zero)
            .then(|| &self.coeffs[0])
    }

    fn add_scaled_power(&mut self, c: &Rational, k: usize) {
        let n = self.field.order() as usize;
        let row = &self.field.data.powers[k % n];
        for (j, &p) in row.iter().enumerate() {
            if p != 0 {
                self.coeffs[j] = self.coeffs[j].add(&c.mul_int(p));
            }
        }
    }

    fn check(&self, other: &FieldElement) -> Result<(), FieldError> {
        if self.field != other.field {
            return Err(FieldError::FieldMismatch {
                left: self.field.order(),
                right: other.field.order(),
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(other)?;
        Ok(self.add(other))
    }

    pub fn checked_sub(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(other)?;
        Ok(self.sub(other))
    }

    pub fn checked_mul(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(other)?;
        Ok(self.mul(other))
    }

    pub fn checked_div(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(other)?;
        Ok(self.mul(&other.inv()?))
    }

    /// Sum; panics when the fields differ (use [`Self::checked_add`] otherwise).
    pub fn add(&self, other: &FieldElement) -> FieldElement {
        assert!(self.field == other.field, "field mismatch");
        FieldElement {
            field: self.field,
            coeffs: self
                .coeffs
                .iter()
                .zip(other.coeffs.iter())
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &FieldElement) -> FieldElement {
        assert!(self.field == other.field, "field mismatch");
        FieldElement {
            field: self.field,
            coeffs: self
                .coeffs
                .iter()
                .zip(other.coeffs.iter())
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn neg(&self) -> FieldElement {
        FieldElement {
            field: self.field,
            coeffs: self.coeffs.iter().map(Rational::neg).collect(),
        }
    }

    pub fn scale(&self, r: &Rational) -> FieldElement {
        FieldElement {
            field: self.field,
            coeffs: self.coeffs.iter().map(|c| c.mul(r)).collect(),
        }
    }

    /// Product reduced modulo `Φ_n`; panics when the fields differ.
    pub fn mul(&self, other: &FieldElement) -> FieldElement {
        assert!(self.field == other.field, "field mismatch");
        let d = self.field.degree();
        if d == 1 {
            return FieldElement {
                field: self.field,
                coeffs: smallvec![self.coeffs[0].mul(&other.coeffs[0])],
            };
        }
        if let Some(r) = other.as_rational() {
            return self.scale(r);
        }
        if let Some(r) = self.as_rational() {
            return other.scale(r);
        }
        let mut prod: SmallVec<[Rational; 12]> = smallvec![Rational::ZERO; 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                prod[i + j] = prod[i + j].add(&a.mul(b));
            }
        }
        let mut out = FieldElement {
            field: self.field,
            coeffs: prod[..d].iter().cloned().collect(),
        };
        for (k, c) in prod.iter().enumerate().skip(d) {
            if !c.is_zero() {
                out.add_scaled_power(c, k);
            }
        }
        out
    }

    /// Multiplicative inverse by the extended Euclidean algorithm against `Φ_n`.
    pub fn inv(&self) -> Result<FieldElement, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(self.field.from_rational(r.inv().expect("nonzero")));
        }
        let phi: Vec<Rational> = self
            .field
            .minimal_poly()
            .iter()
            .map(|&c| Rational::from_int(c))
            .collect();
        let a: Vec<Rational> = trim(self.coeffs.to_vec());
        let (mut r0, mut r1) = (phi, a);
        let (mut s0, mut s1) = (vec![Rational::ZERO], vec![Rational::ONE]);
        while r1.len() > 1 {
            let (q, r) = poly_divmod(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r1 is a nonzero constant since Φ_n is irreducible
        let c = r1[0].inv().expect("gcd with an irreducible modulus is a unit");
        let s: Vec<Rational> = s1.iter().map(|x| x.mul(&c)).collect();
        Ok(self.field.from_coeffs(&s))
    }

    pub fn div(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.checked_div(other)
    }

    /// `self -= a * b` in place.
    pub fn sub_mul_assign(&mut self, a: &FieldElement, b: &FieldElement) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        let p = a.mul(b);
        for (x, y) in self.coeffs.iter_mut().zip(p.coeffs.iter()) {
            if !y.is_zero() {
                *x = x.sub(y);
            }
        }
    }
}

fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.len() > 1 && p.last().is_some_and(Rational::is_zero) {
        p.pop();
    }
    p
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::ZERO; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    trim(out)
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|k| {
            let x = a.get(k).cloned().unwrap_or_default();
            let y = b.get(k).cloned().unwrap_or_default();
            x.sub(&y)
        })
        .collect();
    trim(out)
}

fn poly_divmod(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let lead_inv = b[db].inv().expect("nonzero divisor");
    if rem.len() <= db {
        return (vec![Rational::ZERO], trim(rem));
    }
    let mut q = vec![Rational::ZERO; rem.len() - db];
    for k in (0..q.len()).rev() {
        let c = rem[k + db].mul(&lead_inv);
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                rem[k + j] = rem[k + j].sub(&c.mul(bj));
            }
        }
        q[k] = c;
    }
    rem.truncate(db.max(1));
    (trim(q), trim(rem))
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
