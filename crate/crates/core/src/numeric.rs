//! Big-integer checks of the numeric side conditions used by the dichotomy
//! arguments, plus the polynomial-vs-exponential cutoff they yield.
//!
//! Irrational quantities enter only through rational brackets: `ln 2` through
//! fixed decimal bounds, `log2 d` through bounds `p/q` that are themselves
//! verified by comparing `2^p` with `d^q`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Pow};

use crate::rational::{self, Rational};

/// `ln 2` lies strictly between these.
pub fn ln2_lower() -> Rational {
    rational::ratio(693_147, 1_000_000)
}

pub fn ln2_upper() -> Rational {
    rational::ratio(693_148, 1_000_000)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumericCheck {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

fn big(n: u64) -> BigInt {
    BigInt::from(n)
}

fn pow(base: u64, exp: u64) -> BigInt {
    Pow::pow(big(base), exp)
}

/// Bounds `lo <= log2(d) <= hi` with denominator `q`, each verified exactly.
pub fn log2_bracket(d: u64, q: u64) -> (Rational, Rational) {
    assert!(d >= 1 && q >= 1);
    let dq = pow(d, q);
    let guess = (libm::log2(d as f64) * q as f64) as u64;
    // lo: largest p with 2^p <= d^q.
    let mut p = guess.saturating_sub(2);
    while pow(2, p + 1) <= dq {
        p += 1;
    }
    while p > 0 && pow(2, p) > dq {
        p -= 1;
    }
    let lo = p;
    // hi: smallest p with 2^p >= d^q.
    let mut p = guess + 2;
    while p > 0 && pow(2, p - 1) >= dq {
        p -= 1;
    }
    while pow(2, p) < dq {
        p += 1;
    }
    (
        Rational::new(big(lo), big(q)),
        Rational::new(big(p), big(q)),
    )
}

/// Smallest integer `m0 >= 1` with `m0 >= d / ln 2` and `2^m0 >= (2 m0 + 1)^d`.
///
/// Together these force `2^m > (2m + 1)^d` for every `m > m0`.
pub fn polynomial_cutoff(d: u32) -> u64 {
    let mut m0: u64 = 1;
    loop {
        let first = rational::int(m0 as i64) * ln2_lower() >= rational::int(d as i64);
        if first && pow(2, m0) >= Pow::pow(big(2 * m0 + 1), d) {
            return m0;
        }
        m0 += 1;
    }
}

/// `(2m + 1)^d < 2^m`, exactly.
pub fn polynomial_below_exponential(m: u64, d: u32) -> bool {
    Pow::pow(big(2 * m + 1), d) < pow(2, m)
}

/// For `d` in `30..=40` and `m0 = 2 d log2 d`: `m0 >= d / ln 2` and
/// `2^m0 = d^(2d) >= (2 m0 + 1)^d`.
pub fn tech_cd_checks() -> Vec<NumericCheck> {
    let mut out = Vec::new();
    for d in 30u64..=40 {
        let (lo, hi) = log2_bracket(d, 1000);
        let dr = rational::int(d as i64);
        let two_d = rational::int(2 * d as i64);
        // (i) with m0 bounded below and 1/ln 2 bounded above.
        let m0_lo = &two_d * &lo;
        let needed = &dr / ln2_lower();
        out.push(NumericCheck {
            name: format!("tech_cd(i) d={d}"),
            pass: m0_lo >= needed,
            detail: format!(
                "m0 >= {:.3} >= d/ln2 <= {:.3}",
                rational::to_f64(&m0_lo),
                rational::to_f64(&needed)
            ),
        });
        // (ii) with m0 bounded above.
        let m0_hi = &two_d * &hi;
        let lhs = Rational::from_integer(pow(d, 2 * d));
        let rhs: Rational = Pow::pow(rational::int(2) * &m0_hi + Rational::one(), d as u32);
        out.push(NumericCheck {
            name: format!("tech_cd(ii) d={d}"),
            pass: lhs >= rhs,
            detail: format!(
                "log10 2^m0 = {:.2} vs log10 (2m0+1)^d <= {:.2}",
                2.0 * d as f64 * libm::log10(d as f64),
                d as f64 * libm::log10(2.0 * rational::to_f64(&m0_hi) + 1.0)
            ),
        });
    }
    out
}

/// `m = floor(20 a ln a)`, or `None` if floating point cannot settle the floor.
pub fn repdim_sample_size(alpha: u32) -> Option<u64> {
    let a = alpha as f64;
    let x = 20.0 * a * libm::log(a);
    let lo = libm::floor(x * (1.0 - 1e-12));
    let hi = libm::floor(x * (1.0 + 1e-12));
    (lo == hi).then_some(lo as u64)
}

/// For `a` in `2..=12`, `m = floor(20 a ln a)`, `k = 4 m^a`, and
/// `q(m) = m^-a - (3/4)^m`: `k q(m) >= ln 4`, which gives
/// `(1 - q(m))^k <= e^{-k q(m)} <= 1/4`.
pub fn repdim_checks() -> Vec<NumericCheck> {
    let mut out = Vec::new();
    for alpha in 2u32..=12 {
        let Some(m) = repdim_sample_size(alpha) else {
            out.push(NumericCheck {
                name: format!("repdim alpha={alpha}"),
                pass: false,
                detail: "floor(20 a ln a) too close to an integer".into(),
            });
            continue;
        };
        let m_pow = Pow::pow(big(m), alpha);
        let k = Rational::from_integer(BigInt::from(4) * &m_pow);
        let three_quarters_m = Rational::new(pow(3, m), pow(4, m));
        let q = Rational::new(BigInt::one(), m_pow.clone()) - &three_quarters_m;
        let kq = &k * &q;
        let ln4_upper = rational::int(2) * ln2_upper();
        let aux = three_quarters_m <= Rational::new(BigInt::one(), BigInt::from(2) * &m_pow);
        out.push(NumericCheck {
            name: format!("repdim alpha={alpha}"),
            pass: kq >= ln4_upper && aux,
            detail: format!("m={m} k*q(m)={:.6} >= ln4", rational::to_f64(&kq)),
        });
    }
    out
}

pub fn numeric_lemma_checks() -> Vec<NumericCheck> {
    let mut out = tech_cd_checks();
    out.extend(repdim_checks());
    out
}
