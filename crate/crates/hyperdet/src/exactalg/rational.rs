//! Exact rational scalars.
//!
//! Rationals are always stored reduced with a positive denominator; zero is
//! `0/1`. `num_rational::BigRational` maintains exactly this canonical form,
//! so it is used directly as the scalar type.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub use num_rational::BigRational as Rational;

use super::PolyError;

/// Rational from a machine integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational from an arbitrary-precision integer.
pub fn rat_big(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

/// Parses `"p"` or `"p/q"` with decimal integers.
pub fn parse_rational(s: &str) -> Result<Rational, PolyError> {
    let s = s.trim();
    let bad = || PolyError::Parse(format!("invalid rational '{s}'"));
    match s.split_once('/') {
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(n))
        }
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
    }
}

/// Renders `"p"` for integers and `"p/q"` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Exact integer power with rational base, `e >= 0`.
pub fn rat_pow(base: &Rational, e: u32) -> Rational {
    let mut acc = Rational::one();
    let mut b = base.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &b;
        }
        e >>= 1;
        if e > 0 {
            b = &b * &b;
        }
    }
    acc
}

/// Least common multiple of the denominators of a slice of rationals.
pub fn denominator_lcm(values: &[Rational]) -> BigInt {
    let mut l = BigInt::one();
    for v in values {
        l = num_integer::lcm(l, v.denom().clone());
    }
    l.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "7", "-3", "2/3", "-10/4"] {
            let r = parse_rational(s).unwrap();
            let back = parse_rational(&format_rational(&r)).unwrap();
            assert_eq!(r, back);
        }
        assert_eq!(format_rational(&parse_rational("-10/4").unwrap()), "-5/2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn pow_matches_repeated_multiplication() {
        let b = parse_rational("-2/3").unwrap();
        let mut acc = Rational::one();
        for e in 0..8u32 {
            assert_eq!(rat_pow(&b, e), acc);
            acc *= &b;
        }
    }
}
