//! Exact rational helpers shared by rates, bounds and the LP solver.

use alloc::string::{String, ToString};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Rational = num_rational::BigRational;

/// `num / den` as an exact rational. Panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// `p/q` (or `p` when the denominator is one).
pub fn to_fraction_string(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        alloc::format!("{}/{}", value.numer(), value.denom())
    }
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_fraction(text: &str) -> Option<Rational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// Smallest multiple of `1/grid` that is at least `value`.
pub fn ceil_to_grid(value: &Rational, grid: u64) -> Rational {
    let scaled = value * Rational::from_integer(BigInt::from(grid));
    let ceil = scaled.ceil();
    ceil / Rational::from_integer(BigInt::from(grid))
}

/// Lossy conversion for display and approximate comparisons only.
pub fn to_f64(value: &Rational) -> f64 {
    let (num, den) = (value.numer(), value.denom());
    // Scale down huge values so the float division stays finite.
    let shift = num.bits().max(den.bits()).saturating_sub(960);
    let n = bigint_to_f64(&(num >> shift as usize));
    let d = bigint_to_f64(&(den >> shift as usize));
    n / d
}

fn bigint_to_f64(value: &BigInt) -> f64 {
    let mut acc = 0.0f64;
    for digit in value.abs().to_u64_digits().1.iter().rev() {
        acc = acc * 18_446_744_073_709_551_616.0 + *digit as f64;
    }
    if value.is_negative() {
        -acc
    } else {
        acc
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}
