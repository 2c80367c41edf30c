//! Arbitrary-precision rationals and the integer helpers built on them.

use alloc::string::String;
use alloc::vec::Vec;
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational, always in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p/q"`, `"p"` or a plain decimal such as `"-0.25"`.
pub fn parse(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).ok()?;
        let d = BigInt::from_str(d.trim()).ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Rational::new(n, d));
    }
    if let Some((whole, fraction)) = s.split_once('.') {
        if fraction.is_empty() || !fraction.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let negative = whole.starts_with('-');
        let whole_digits = whole.trim_start_matches(['-', '+']);
        if !whole_digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let mut digits = String::from(whole_digits);
        digits.push_str(fraction);
        let mut num = BigInt::from_str(&digits).ok()?;
        if negative {
            num = -num;
        }
        let den = num_traits::pow(BigInt::from(10u32), fraction.len());
        return Some(Rational::new(num, den));
    }
    BigInt::from_str(s).ok().map(Rational::from_integer)
}

/// `"p/q"`, or `"p"` for integers.
pub fn format(r: &Rational) -> String {
    alloc::format!("{r}")
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Row of factorials `0!, 1!, …, n!`.
pub fn factorials(n: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = BigInt::one();
    out.push(acc.clone());
    for k in 1..=n {
        acc *= BigInt::from(k);
        out.push(acc.clone());
    }
    out
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fraction_integer_and_decimal() {
        assert_eq!(parse("3/6"), Some(frac(1, 2)));
        assert_eq!(parse("-7"), Some(int(-7)));
        assert_eq!(parse("-0.25"), Some(frac(-1, 4)));
        assert_eq!(parse("1/0"), None);
        assert_eq!(parse("x"), None);
        assert_eq!(parse("1."), None);
    }

    #[test]
    fn lowest_terms_and_positive_denominator() {
        let r = Rational::new(BigInt::from(4), BigInt::from(-6));
        assert_eq!(format(&r), "-2/3");
        assert!(r.denom() > &BigInt::zero());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(3, 4), BigInt::zero());
        assert_eq!(binomial(40, 20), BigInt::from(137_846_528_820u64));
        assert_eq!(factorial(0), BigInt::one());
        assert_eq!(factorials(4)[4], BigInt::from(24));
    }
}
