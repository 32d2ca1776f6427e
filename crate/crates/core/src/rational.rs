//! Exact rational scalars and vectors.
//!
//! Everything in the exact half of the crate is computed over `BigRational`;
//! rationals cross the serialization boundary only as `"p/q"` strings.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

pub type Rational = BigRational;

/// Coordinates of a vector or covector in a fixed basis.
pub type QVec = Vec<Rational>;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn qvec(xs: &[i64]) -> QVec {
    xs.iter().map(|&x| int(x)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRationalError {
    pub input: String,
    pub reason: &'static str,
}

impl fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "malformed rational {:?}: {}", self.input, self.reason)
    }
}

impl std::error::Error for ParseRationalError {}

/// Parses `"p"` or `"p/q"` with optional sign. Decimal points and exponents
/// are rejected so no precision is ever lost on the way in.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let err = |reason| ParseRationalError {
        input: s.to_string(),
        reason,
    };
    let t = s.trim();
    if t.is_empty() {
        return Err(err("empty"));
    }
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (t, None),
    };
    let parse_int = |x: &str| -> Result<BigInt, ParseRationalError> {
        let digits = x.strip_prefix(['-', '+']).unwrap_or(x);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err("expected an integer or p/q"));
        }
        x.parse::<BigInt>()
            .map_err(|_| err("expected an integer or p/q"))
    };
    let n = parse_int(num)?;
    let d = match den {
        Some(d) => parse_int(d)?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(err("zero denominator"));
    }
    Ok(Rational::new(n, d))
}

/// Comma-separated list of rationals, e.g. `"3,-1,-2"` or `"1/2, -1/2"`.
pub fn parse_rational_list(s: &str) -> Result<QVec, ParseRationalError> {
    s.split(',').map(parse_rational).collect()
}

pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn format_qvec(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

pub fn to_f64(q: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn add(a: &[Rational], b: &[Rational]) -> QVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Rational], b: &[Rational]) -> QVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(c: &Rational, a: &[Rational]) -> QVec {
    a.iter().map(|x| c * x).collect()
}

pub fn neg(a: &[Rational]) -> QVec {
    a.iter().map(|x| -x).collect()
}

pub fn is_zero_vec(a: &[Rational]) -> bool {
    a.iter().all(Zero::is_zero)
}

/// Rescales a nonzero vector by a positive factor so that its entries are
/// coprime integers. The zero vector is returned unchanged.
pub fn primitive_integer(v: &[Rational]) -> QVec {
    if is_zero_vec(v) {
        return v.to_vec();
    }
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x)).abs();
    ints.into_iter()
        .map(|x| Rational::from_integer(x / &g))
        .collect()
}

/// Lexicographic comparison on exact coordinates.
pub fn lex_cmp(a: &[Rational], b: &[Rational]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            std::cmp::Ordering::Equal => continue,
            o => return o,
        }
    }
    a.len().cmp(&b.len())
}

/// Least common multiple of the denominators of `xs`.
pub fn denominator_lcm<'a>(xs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    xs.into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_accepts_integers_and_fractions() {
        assert_eq!(parse_rational("3").unwrap(), int(3));
        assert_eq!(parse_rational("-1/2").unwrap(), ratio(-1, 2));
        assert_eq!(parse_rational(" 4/6 ").unwrap(), ratio(2, 3));
        assert_eq!(parse_rational("+5").unwrap(), int(5));
    }

    #[test]
    fn parse_rejects_zero_denominator_and_decimals() {
        assert_eq!(
            parse_rational("1/0").unwrap_err().reason,
            "zero denominator"
        );
        assert!(parse_rational("0.5").is_err());
        assert!(parse_rational("1e3").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("1/").is_err());
        assert!(parse_rational("--1").is_err());
    }

    #[test]
    fn format_is_exact() {
        assert_eq!(format_rational(&ratio(1, 3)), "1/3");
        assert_eq!(format_rational(&ratio(-4, 2)), "-2");
        assert_eq!(format_rational(&int(0)), "0");
    }

    #[test]
    fn primitive_integer_normalizes_positively() {
        let v = vec![ratio(1, 3), ratio(-2, 3), ratio(1, 3)];
        assert_eq!(primitive_integer(&v), qvec(&[1, -2, 1]));
        let w = qvec(&[-4, 6]);
        assert_eq!(primitive_integer(&w), qvec(&[-2, 3]));
        assert_eq!(primitive_integer(&qvec(&[0, 0])), qvec(&[0, 0]));
    }

    #[test]
    fn list_parsing() {
        assert_eq!(parse_rational_list("3,-1,-2").unwrap(), qvec(&[3, -1, -2]));
    }
}
