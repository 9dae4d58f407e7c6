//! Exact rational helpers over `num_rational::BigRational`.

use alloc::string::String;
use core::fmt::Write;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// `2^exp` for a non-negative or negative exponent.
pub fn pow2(exp: i64) -> Rational {
    let two = BigInt::from(2u8);
    let mag = num_traits::pow(two, exp.unsigned_abs() as usize);
    if exp >= 0 {
        Rational::from_integer(mag)
    } else {
        Rational::new(BigInt::one(), mag)
    }
}

/// Always renders as `num/den`, including integers (`4/1`).
pub fn to_fraction_string(r: &Rational) -> String {
    let mut s = String::new();
    let _ = write!(s, "{}/{}", r.numer(), r.denom());
    s
}

/// Parses `num/den` or a bare integer.
pub fn parse_fraction(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

/// Nearest `f64`; adequate for display and for drawing samples.
pub fn to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    if let Some(v) = r.to_f64() {
        if v.is_finite() && (v != 0.0 || r.is_zero()) {
            return v;
        }
    }
    // Huge numerator/denominator: scale by bit length first.
    let nb = r.numer().bits() as i64;
    let db = r.denom().bits() as i64;
    let shift = nb - db;
    let scaled = r / pow2(shift);
    let v = scaled.to_f64().unwrap_or(0.0);
    let sign = if r.is_negative() { -1.0 } else { 1.0 };
    sign * v.abs() * libm::pow(2.0, shift as f64)
}

pub fn is_nonnegative(r: &Rational) -> bool {
    !r.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pow2_both_signs() {
        assert_eq!(pow2(3), int(8));
        assert_eq!(pow2(-2), ratio(1, 4));
        assert_eq!(pow2(0), int(1));
    }

    #[test]
    fn fraction_text() {
        assert_eq!(to_fraction_string(&int(1)), "1/1");
        assert_eq!(to_fraction_string(&ratio(6, 4)), "3/2");
        assert_eq!(parse_fraction("3/2"), Some(ratio(3, 2)));
        assert_eq!(parse_fraction("-5"), Some(int(-5)));
        assert_eq!(parse_fraction("1/0"), None);
    }

    #[test]
    fn float_conversion_of_tiny_values() {
        let tiny = pow2(-1100);
        assert_eq!(to_f64(&tiny), 0.0);
        let v = to_f64(&(pow2(-1000) * int(3)));
        assert!(v > 0.0);
    }
}
