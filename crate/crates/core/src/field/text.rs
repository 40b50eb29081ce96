//! Scalar text grammar: a sum of terms `[±][rat][*]z[^k]` or `[±]rat`.
//!
//! Canonical output lists terms by strictly decreasing power of `z`, omits
//! zero terms and unit coefficients, writes an explicit `*`, and prints `0`
//! for the zero element.

use std::fmt;

use super::cyclotomic::{CyclotomicField, FieldElement};
use super::rational::Rational;
use super::FieldError;

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs().iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = if neg { c.neg() } else { c.clone() };
            if neg {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            first = false;
            match k {
                0 => write!(f, "{abs}")?,
                _ => {
                    if !abs.is_one() {
                        write!(f, "{abs}*")?;
                    }
                    f.write_str("z")?;
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn err(&self, msg: impl Into<String>) -> FieldError {
        FieldError::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn digits(&mut self) -> &str {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits")
    }
}

impl CyclotomicField {
    /// Parses a scalar in the text grammar; errors carry a byte position.
    pub fn parse(&self, text: &str) -> Result<FieldElement, FieldError> {
        let mut cur = Cursor {
            s: text.trim().as_bytes(),
            pos: 0,
        };
        if cur.s.is_empty() {
            return Err(cur.err("empty scalar"));
        }
        let mut acc = self.zero();
        let mut first = true;
        while cur.peek().is_some() {
            let mut negative = false;
            match cur.peek() {
                Some(b'+') => cur.pos += 1,
                Some(b'-') => {
                    negative = true;
                    cur.pos += 1
                }
                _ if !first => return Err(cur.err("expected '+' or '-' between terms")),
                _ => {}
            }
            first = false;
            let mut coeff = Rational::ONE;
            let mut has_coeff = false;
            if cur.peek().is_some_and(|c| c.is_ascii_digit()) {
                let num = cur.digits().to_string();
                let mut text = num;
                if cur.peek() == Some(b'/') {
                    cur.pos += 1;
                    let den = cur.digits();
                    if den.is_empty() {
                        return Err(cur.err("expected denominator digits"));
                    }
                    text = format!("{text}/{den}");
                }
                coeff = text.parse().map_err(|e: String| cur.err(e))?;
                has_coeff = true;
            }
            let mut power = 0u64;
            let star = cur.peek() == Some(b'*');
            if star {
                if !has_coeff {
                    return Err(cur.err("'*' without a coefficient"));
                }
                cur.pos += 1;
            }
            if cur.peek() == Some(b'z') {
                cur.pos += 1;
                power = 1;
                if cur.peek() == Some(b'^') {
                    cur.pos += 1;
                    let d = cur.digits();
                    if d.is_empty() {
                        return Err(cur.err("expected exponent digits"));
                    }
                    power = d.parse().map_err(|_| cur.err("exponent too large"))?;
                }
            } else if star {
                return Err(cur.err("expected 'z' after '*'"));
            } else if !has_coeff {
                return Err(cur.err("expected a rational or 'z'"));
            }
            if negative {
                coeff = coeff.neg();
            }
            let n = self.order() as u64;
            let term = self.zeta_pow((power % n) as i64).scale(&coeff);
            acc = acc.add(&term);
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_examples() {
        let q7 = CyclotomicField::new(7);
        let e = q7.parse("1/2*z^2-1/2").unwrap();
        let want: Vec<Rational> = [(-1, 2), (0, 1), (1, 2), (0, 1), (0, 1), (0, 1)]
            .iter()
            .map(|&(n, d)| Rational::new(n, d))
            .collect();
        assert_eq!(e.coeffs(), &want[..]);
        assert_eq!(e.to_string(), "1/2*z^2-1/2");

        let q4 = CyclotomicField::new(4);
        assert!(q4.parse("z^4").unwrap().is_one());
        assert!(q4.parse("0").unwrap().is_zero());
        assert_eq!(q4.zero().to_string(), "0");
        assert_eq!(q4.parse("-z").unwrap().to_string(), "-z");
        assert_eq!(q4.parse("2z+3").unwrap().to_string(), "2*z+3");
        assert_eq!(q4.parse("-2/3*z^2").unwrap().to_string(), "2/3");
    }

    #[test]
    fn parse_errors_have_positions() {
        let q3 = CyclotomicField::new(3);
        for bad in ["", "1+", "z^", "*z", "1/", "2**z", "z z", "x"] {
            let err = q3.parse(bad).unwrap_err();
            assert!(matches!(err, FieldError::Parse { .. }), "{bad:?} -> {err:?}");
        }
        match q3.parse("1+*z") {
            Err(FieldError::Parse { pos, .. }) => assert_eq!(pos, 2),
            other => panic!("{other:?}"),
        }
    }
}
