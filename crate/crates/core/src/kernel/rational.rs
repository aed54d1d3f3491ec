//! Exact rational scalars and the integer combinatorics built on them.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `num / den`, reduced. Panics on a zero denominator, so only use it with
/// literal values.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p"` or `"p/q"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if let Some((_, den)) = s.split_once('/') {
        if den
            .trim()
            .parse::<BigInt>()
            .map(|d| d.is_zero())
            .unwrap_or(false)
        {
            return Err(Error::InvalidParam(format!("zero denominator in `{s}`")));
        }
    }
    Rational::from_str(s).map_err(|_| Error::InvalidParam(format!("not a rational number: `{s}`")))
}

/// `"p"` when the denominator is 1, `"p/q"` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn factorial(n: usize) -> Rational {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    Rational::from_integer(acc)
}

/// C(n, k) for nonnegative n; zero when k > n.
pub fn binomial(n: usize, k: usize) -> Rational {
    if k > n {
        return Rational::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Rational::from_integer(acc)
}

/// C(n, k) with signed indices: zero unless 0 <= k <= n.
pub fn binomial_i(n: i64, k: i64) -> Rational {
    if k < 0 || n < 0 || k > n {
        Rational::zero()
    } else {
        binomial(n as usize, k as usize)
    }
}

/// Generalized binomial coefficient C(a, k) = (a)_k / k! for rational a.
pub fn binomial_rat(a: &Rational, k: usize) -> Rational {
    falling_value(a, k) / factorial(k)
}

/// (a)_k = a(a-1)...(a-k+1) evaluated at a rational point.
pub fn falling_value(a: &Rational, k: usize) -> Rational {
    let mut acc = Rational::one();
    let mut cur = a.clone();
    for _ in 0..k {
        acc *= &cur;
        cur -= Rational::one();
    }
    acc
}

/// (-1)^e as a rational.
pub fn sign(e: usize) -> Rational {
    if e.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// Integer power with a signed exponent; `base` must be nonzero when `e < 0`.
pub fn pow_i(base: &Rational, e: i64) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..e.unsigned_abs() {
        acc *= base;
    }
    if e < 0 {
        acc.recip()
    } else {
        acc
    }
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

pub fn is_negative(r: &Rational) -> bool {
    r.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("1/2").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("-1/3").unwrap(), ratio(-1, 3));
        assert_eq!(parse_rational("4/2").unwrap(), int(2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert_eq!(format_rational(&ratio(6, -4)), "-3/2");
        assert_eq!(format_rational(&int(7)), "7");
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), int(10));
        assert_eq!(binomial(2, 5), int(0));
        assert_eq!(binomial_i(3, -1), int(0));
        assert_eq!(binomial_rat(&ratio(1, 2), 2), ratio(-1, 8));
        assert_eq!(factorial(6), int(720));
    }
}
