//! Exact rational scalars and their wire format.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::fmt;

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Q {
    Q::zero()
}

pub fn one() -> Q {
    Q::one()
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RationalParseError {
    #[error("empty rational string")]
    Empty,
    #[error("malformed rational {0:?}")]
    Malformed(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
    #[error("{given:?} is not in lowest terms; write {hint:?}")]
    NotLowestTerms { given: String, hint: String },
}

/// Canonical text form: `p` for integers, `p/q` otherwise, q > 0, gcd 1.
pub fn to_text(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

fn parse_int(s: &str, whole: &str) -> Result<BigInt, RationalParseError> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(RationalParseError::Malformed(whole.to_string()));
    }
    s.parse::<BigInt>()
        .map_err(|_| RationalParseError::Malformed(whole.to_string()))
}

/// Strict parser: rejects anything that would not be re-emitted byte-identically.
pub fn from_text(s: &str) -> Result<Q, RationalParseError> {
    if s.is_empty() {
        return Err(RationalParseError::Empty);
    }
    let (n, d) = match s.split_once('/') {
        None => (parse_int(s, s)?, BigInt::one()),
        Some((a, b)) => {
            if b.starts_with('-') {
                return Err(RationalParseError::Malformed(s.to_string()));
            }
            (parse_int(a, s)?, parse_int(b, s)?)
        }
    };
    if d.is_zero() {
        return Err(RationalParseError::ZeroDenominator(s.to_string()));
    }
    let v = Q::new(n, d);
    let canon = to_text(&v);
    if canon != s {
        return Err(RationalParseError::NotLowestTerms {
            given: s.to_string(),
            hint: canon,
        });
    }
    Ok(v)
}

/// Exact square root when it exists in Q.
pub fn sqrt_exact(x: &Q) -> Option<Q> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    if &(&n * &n) == x.numer() && &(&d * &d) == x.denom() {
        Some(Q::new(n, d))
    } else {
        None
    }
}

/// Exact k-th root (k ≥ 1) when it exists in Q; for odd k the sign is kept.
pub fn root_exact(x: &Q, k: u32) -> Option<Q> {
    if k == 1 {
        return Some(x.clone());
    }
    if x.is_zero() {
        return Some(zero());
    }
    let neg = x.is_negative();
    if neg && k.is_multiple_of(2) {
        return None;
    }
    let a = x.abs();
    let n = a.numer().nth_root(k);
    let d = a.denom().nth_root(k);
    if &num::pow(n.clone(), k as usize) == a.numer() && &num::pow(d.clone(), k as usize) == a.denom()
    {
        let r = Q::new(n, d);
        Some(if neg { -r } else { r })
    } else {
        None
    }
}

/// Display wrapper for vectors of rationals.
pub struct VecDisplay<'a>(pub &'a [Q]);

impl fmt::Display for VecDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", to_text(x))?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        for s in ["0", "1", "-3", "1/2", "-7/4", "123456789012345678901234567891/2"] {
            assert_eq!(to_text(&from_text(s).unwrap()), s);
        }
    }

    #[test]
    fn rejects_non_canonical() {
        assert!(matches!(
            from_text("2/4"),
            Err(RationalParseError::NotLowestTerms { ref hint, .. }) if hint == "1/2"
        ));
        assert!(from_text("4/2").is_err());
        assert!(from_text("1/-2").is_err());
        assert!(from_text("+1").is_err());
        assert!(from_text("1/0").is_err());
        assert!(from_text("0/5").is_err());
        assert!(from_text("1.5").is_err());
        assert!(from_text("").is_err());
    }

    #[test]
    fn roots() {
        assert_eq!(sqrt_exact(&qf(9, 4)), Some(qf(3, 2)));
        assert_eq!(sqrt_exact(&q(2)), None);
        assert_eq!(root_exact(&qf(-8, 27), 3), Some(qf(-2, 3)));
        assert_eq!(root_exact(&q(-4), 2), None);
    }
}
