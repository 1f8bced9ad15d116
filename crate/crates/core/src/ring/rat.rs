//! Exact rational scalars and integer combinatorics helpers.
//!
//! All coefficients in this crate are arbitrary-precision rationals kept in
//! lowest terms with a positive denominator; `num` maintains both invariants.

use num::bigint::Sign;
use num::{BigInt, BigRational, One, Signed, Zero};

/// Arbitrary-precision rational number, always normalized.
pub type Rat = BigRational;

/// Rational from an integer.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Rational p/q. Panics on q = 0.
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Binomial coefficient with non-negative integer arguments.
pub fn binom_uint(top: u64, k: u64) -> BigInt {
    if k > top {
        return BigInt::zero();
    }
    let k = k.min(top - k);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(top - i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

/// k! as a big integer.
pub fn factorial(k: u64) -> BigInt {
    let mut out = BigInt::one();
    for i in 2..=k {
        out *= BigInt::from(i);
    }
    out
}

/// Parse a literal of the shape `p` or `p/q` (no sign).
pub fn parse_unsigned_rat(s: &str) -> Option<Rat> {
    let mut parts = s.splitn(2, '/');
    let num: BigInt = parts.next()?.parse().ok()?;
    if num.sign() == Sign::Minus {
        return None;
    }
    match parts.next() {
        None => Some(Rat::from_integer(num)),
        Some(d) => {
            let den: BigInt = d.parse().ok()?;
            if den.is_zero() || den.sign() == Sign::Minus {
                None
            } else {
                Some(Rat::new(num, den))
            }
        }
    }
}

/// Render a rational in the `p` / `p/q` text form used by the expression grammar.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn is_positive(r: &Rat) -> bool {
    r.is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binom_uint(4, 2), BigInt::from(6));
        assert_eq!(binom_uint(40, 20), "137846528820".parse::<BigInt>().unwrap());
        assert_eq!(binom_uint(3, 5), BigInt::zero());
        assert_eq!(binom_uint(0, 0), BigInt::one());
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), BigInt::one());
        assert_eq!(factorial(6), BigInt::from(720));
    }

    #[test]
    fn rational_literals() {
        assert_eq!(parse_unsigned_rat("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_unsigned_rat("7").unwrap(), rat_int(7));
        assert!(parse_unsigned_rat("1/0").is_none());
        assert!(parse_unsigned_rat("-1").is_none());
        assert_eq!(format_rat(&rat(-4, 6)), "-2/3");
        assert_eq!(format_rat(&rat_int(5)), "5");
    }
}
