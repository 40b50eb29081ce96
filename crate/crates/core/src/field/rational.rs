//! Exact rationals with an `i64` fast path.
//!
//! Values whose numerator and denominator fit in `i64` are kept inline and
//! combined through `i128` intermediates, which cannot overflow for a single
//! operation. Anything larger is promoted to a heap `BigRational` and demoted
//! again as soon as it fits. The representation is canonical, so derived
//! equality and hashing are value equality.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Rational {
    /// Lowest terms, positive denominator, numerator never `i64::MIN`.
    Small(i64, i64),
    Big(Box<BigRational>),
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn fits(v: i128) -> bool {
    v > i64::MIN as i128 && v <= i64::MAX as i128
}

impl Rational {
    pub const ZERO: Rational = Rational::Small(0, 1);
    pub const ONE: Rational = Rational::Small(1, 1);

    pub fn from_int(n: i64) -> Self {
        if n == i64::MIN {
            Rational::from_big(BigRational::from_integer(BigInt::from(n)))
        } else {
            Rational::Small(n, 1)
        }
    }

    /// Builds `n/d` from wide intermediates. `d` must be nonzero.
    fn from_i128(n: i128, d: i128) -> Self {
        debug_assert!(d != 0);
        if n == 0 {
            return Rational::ZERO;
        }
        let (n, d) = if d < 0 { (-n, -d) } else { (n, d) };
        let g = gcd_u128(n.unsigned_abs(), d as u128) as i128;
        let (n, d) = (n / g, d / g);
        if fits(n) && fits(d) {
            Rational::Small(n as i64, d as i64)
        } else {
            Rational::Big(Box::new(BigRational::new_raw(BigInt::from(n), BigInt::from(d))))
        }
    }

    pub fn new(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        Rational::from_i128(n as i128, d as i128)
    }

    pub fn from_big(r: BigRational) -> Self {
        // BigRational arithmetic keeps values reduced with a positive denominator.
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) if n != i64::MIN => Rational::Small(n, d),
            _ => Rational::Big(Box::new(r)),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Rational::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Rational::Big(b) => (**b).clone(),
        }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        matches!(self, Rational::Small(0, _))
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        matches!(self, Rational::Small(1, 1))
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Rational::Small(_, d) => *d == 1,
            Rational::Big(b) => b.is_integer(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Rational::Small(n, _) => *n < 0,
            Rational::Big(b) => b.is_negative(),
        }
    }

    pub fn add(&self, other: &Rational) -> Rational {
        match (self, other) {
            (Rational::Small(a, b), Rational::Small(c, d)) => {
                if *b == 1 && *d == 1 {
                    let s = *a as i128 + *c as i128;
                    return Rational::from_i128(s, 1);
                }
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                Rational::from_i128(a * d + c * b, b * d)
            }
            _ => Rational::from_big(self.to_big() + other.to_big()),
        }
    }

    pub fn sub(&self, other: &Rational) -> Rational {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Rational) -> Rational {
        match (self, other) {
            (Rational::Small(0, _), _) | (_, Rational::Small(0, _)) => Rational::ZERO,
            (Rational::Small(a, b), Rational::Small(c, d)) => {
                if *b == 1 && *d == 1 {
                    return Rational::from_i128(*a as i128 * *c as i128, 1);
                }
                Rational::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => Rational::from_big(self.to_big() * other.to_big()),
        }
    }

    pub fn neg(&self) -> Rational {
        match self {
            Rational::Small(n, d) => Rational::Small(-n, *d),
            Rational::Big(b) => Rational::from_big(-(**b).clone()),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Rational> {
        match self {
            Rational::Small(0, _) => None,
            Rational::Small(n, d) => Some(Rational::from_i128(*d as i128, *n as i128)),
            Rational::Big(b) => Some(Rational::from_big(b.recip())),
        }
    }

    pub fn div(&self, other: &Rational) -> Option<Rational> {
        other.inv().map(|i| self.mul(&i))
    }

    pub fn mul_int(&self, k: i64) -> Rational {
        self.mul(&Rational::from_int(k))
    }

    pub fn numer(&self) -> BigInt {
        match self {
            Rational::Small(n, _) => BigInt::from(*n),
            Rational::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match self {
            Rational::Small(_, d) => BigInt::from(*d),
            Rational::Big(b) => b.denom().clone(),
        }
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::ZERO
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Rational::Small(a, b), Rational::Small(c, d)) => {
                (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rational::Small(n, 1) => write!(f, "{n}"),
            Rational::Small(n, d) => write!(f, "{n}/{d}"),
            Rational::Big(b) => {
                if b.denom().is_one() {
                    write!(f, "{}", b.numer())
                } else {
                    write!(f, "{}/{}", b.numer(), b.denom())
                }
            }
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses `int` or `int/int` (optional leading sign on the numerator).
impl FromStr for Rational {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (s, None),
        };
        let n: BigInt = n.parse().map_err(|_| format!("bad integer {n:?}"))?;
        let d: BigInt = match d {
            Some(d) => {
                if d.starts_with(['+', '-']) {
                    return Err(format!("signed denominator {d:?}"));
                }
                d.parse().map_err(|_| format!("bad integer {d:?}"))?
            }
            None => BigInt::one(),
        };
        if d.is_zero() {
            return Err("zero denominator".into());
        }
        let g = n.gcd(&d);
        let r = if g.is_zero() {
            BigRational::zero()
        } else {
            BigRational::new_raw(&n / &g, &d / &g)
        };
        Ok(Rational::from_big(r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_arithmetic() {
        let a = Rational::new(1, 2);
        let b = Rational::new(-1, 3);
        assert_eq!(a.add(&b), Rational::new(1, 6));
        assert_eq!(a.mul(&b), Rational::new(-1, 6));
        assert_eq!(b.inv().unwrap(), Rational::from_int(-3));
        assert_eq!(Rational::new(4, -8), Rational::new(-1, 2));
        assert!(Rational::ZERO.inv().is_none());
    }

    #[test]
    fn promotes_and_demotes() {
        let big = Rational::from_int(i64::MAX);
        let sq = big.mul(&big);
        assert!(matches!(sq, Rational::Big(_)));
        let back = sq.div(&big).unwrap();
        assert_eq!(back, big);
        assert!(matches!(back, Rational::Small(..)));
        let m = Rational::from_int(i64::MIN);
        assert!(matches!(m, Rational::Big(_)));
        assert_eq!(m.neg().neg(), m);
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("6/-4".parse::<Rational>().is_err(), true);
        assert_eq!("-6/4".parse::<Rational>().unwrap(), Rational::new(-3, 2));
        assert_eq!(Rational::new(-3, 2).to_string(), "-3/2");
        assert_eq!("0/5".parse::<Rational>().unwrap(), Rational::ZERO);
        assert!("1/0".parse::<Rational>().is_err());
    }
}
