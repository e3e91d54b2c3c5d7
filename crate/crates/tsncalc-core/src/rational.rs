//! Exact rational arithmetic helpers.
//!
//! Everything in the engine is a [`Rational`] (arbitrary-precision,
//! always in canonical reduced form with a positive denominator).
//! This module adds the boundary conversions: parsing integers,
//! decimal strings, and `"p/q"` fraction strings, and rendering exact
//! or precision-limited decimal expansions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Exact rational number; canonical form is maintained by `num-rational`.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid rational literal {literal:?}: {reason}")]
pub struct ParseRationalError {
    pub literal: String,
    pub reason: String,
}

/// Shorthand for small rational constants.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Shorthand for integer-valued rationals.
pub fn rat_i(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn err(literal: &str, reason: &str) -> ParseRationalError {
    ParseRationalError {
        literal: literal.to_string(),
        reason: reason.to_string(),
    }
}

/// Parses an exact rational from an integer, decimal, or fraction literal.
///
/// Accepted forms: `"42"`, `"-7"`, `"3.25"`, `"8e5"`, `"1.2e-4"`, `"3/8"`.
/// Decimal exponents scale by powers of ten, so every accepted literal is
/// represented exactly.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let t = s.trim();
    if t.is_empty() {
        return Err(err(s, "empty string"));
    }
    if let Some((num, den)) = t.split_once('/') {
        let n: BigInt = num
            .trim()
            .parse()
            .map_err(|_| err(s, "numerator is not an integer"))?;
        let d: BigInt = den
            .trim()
            .parse()
            .map_err(|_| err(s, "denominator is not an integer"))?;
        if d.is_zero() {
            return Err(err(s, "denominator is zero"));
        }
        return Ok(Rational::new(n, d));
    }

    let (mantissa, exp) = match t.split_once(['e', 'E']) {
        Some((m, e)) => {
            let exp: i64 = e.parse().map_err(|_| err(s, "invalid exponent"))?;
            (m, exp)
        }
        None => (t, 0),
    };

    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err(s, "no digits"));
    }
    let negative = int_part.starts_with('-');
    let int_digits = int_part.trim_start_matches(['-', '+']);
    if !int_digits.chars().all(|c| c.is_ascii_digit())
        || !frac_part.chars().all(|c| c.is_ascii_digit())
    {
        return Err(err(s, "invalid digits"));
    }
    let joined = format!("{}{}", int_digits, frac_part);
    let digits: BigInt = if joined.is_empty() {
        BigInt::zero()
    } else {
        joined.parse().map_err(|_| err(s, "invalid digits"))?
    };
    let digits = if negative { -digits } else { digits };
    let scale = exp - frac_part.len() as i64;
    let ten = BigInt::from(10);
    let value = if scale >= 0 {
        Rational::from_integer(digits * ten.pow(scale as u32))
    } else {
        Rational::new(digits, ten.pow((-scale) as u32))
    };
    Ok(value)
}

/// Renders the canonical exact form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_exact(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Renders a decimal expansion: exact when it terminates, otherwise
/// rounded to `sig_digits` significant digits (half away from zero).
pub fn format_decimal(r: &Rational, sig_digits: usize) -> String {
    if r.is_zero() {
        return "0".to_string();
    }
    let sign = if r.is_negative() { "-" } else { "" };
    let abs = r.abs();

    // A reduced fraction terminates iff the denominator is 2^a * 5^b.
    let mut d = abs.denom().clone();
    let mut twos = 0u32;
    let mut fives = 0u32;
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    while (&d % &two).is_zero() {
        d /= &two;
        twos += 1;
    }
    while (&d % &five).is_zero() {
        d /= &five;
        fives += 1;
    }
    if d.is_one() {
        // Terminating: scale to an integer over 10^k.
        let k = twos.max(fives);
        let scaled = (&abs * Rational::from_integer(BigInt::from(10).pow(k))).to_integer();
        return format!("{}{}", sign, place_point(&scaled.to_string(), k as i64));
    }

    // Repeating: round to the requested number of significant digits.
    // A rounding carry (999.6 -> 1000) just lengthens the digit string,
    // which `place_point` handles without adjustment.
    let sig = sig_digits.max(1) as i64;
    let exponent = decimal_exponent(&abs);
    let shift = sig - 1 - exponent;
    let scaled = shift_pow10(&abs, shift);
    let rounded = round_half_away(&scaled);
    format!("{}{}", sign, place_point(&rounded.to_string(), shift))
}

fn decimal_exponent(abs: &Rational) -> i64 {
    // Largest e with 10^e <= abs.
    let int = abs.to_integer();
    if !int.is_zero() {
        return int.to_string().trim_start_matches('-').len() as i64 - 1;
    }
    let mut e: i64 = -1;
    let ten = Rational::from_integer(BigInt::from(10));
    let mut scaled = abs * &ten;
    while scaled.to_integer().is_zero() {
        scaled *= &ten;
        e -= 1;
    }
    e
}

fn shift_pow10(abs: &Rational, shift: i64) -> Rational {
    let ten = BigInt::from(10);
    if shift >= 0 {
        abs * Rational::from_integer(ten.pow(shift as u32))
    } else {
        abs / Rational::from_integer(ten.pow((-shift) as u32))
    }
}

fn round_half_away(r: &Rational) -> BigInt {
    let two = Rational::new(BigInt::from(1), BigInt::from(2));
    if r.is_negative() {
        -((-r + two).floor().to_integer())
    } else {
        (r + two).floor().to_integer()
    }
}

fn place_point(digits: &str, frac_len: i64) -> String {
    if frac_len <= 0 {
        return format!("{}{}", digits, "0".repeat((-frac_len) as usize));
    }
    let frac_len = frac_len as usize;
    if digits.len() > frac_len {
        let (int, frac) = digits.split_at(digits.len() - frac_len);
        let frac = frac.trim_end_matches('0');
        if frac.is_empty() {
            int.to_string()
        } else {
            format!("{}.{}", int, frac)
        }
    } else {
        let frac = format!("{}{}", "0".repeat(frac_len - digits.len()), digits);
        let frac = frac.trim_end_matches('0');
        if frac.is_empty() {
            "0".to_string()
        } else {
            format!("0.{}", frac)
        }
    }
}

/// Greatest common measure of two positive rationals.
pub fn gcd_rational(a: &Rational, b: &Rational) -> Rational {
    assert!(a.is_positive() && b.is_positive());
    Rational::new(
        a.numer().gcd(b.numer()),
        a.denom().lcm(b.denom()),
    )
}

/// Least common multiple of two positive rationals.
pub fn lcm_rational(a: &Rational, b: &Rational) -> Rational {
    assert!(a.is_positive() && b.is_positive());
    Rational::new(
        a.numer().lcm(b.numer()),
        a.denom().gcd(b.denom()),
    )
}

/// Floor division remainder into `[0, modulus)`.
pub fn rem_euclid(value: &Rational, modulus: &Rational) -> Rational {
    assert!(modulus.is_positive());
    let q = (value / modulus).floor();
    value - q * modulus
}

/// Smallest integer >= `r`, as i64. Panics if it does not fit.
pub fn ceil_to_i64(r: &Rational) -> i64 {
    r.ceil().to_integer().to_i64().expect("ceil out of i64 range")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_integer_decimal_and_fraction_forms() {
        assert_eq!(parse_rational("42").unwrap(), rat_i(42));
        assert_eq!(parse_rational("-7").unwrap(), rat_i(-7));
        assert_eq!(parse_rational("3.25").unwrap(), rat(13, 4));
        assert_eq!(parse_rational("8e5").unwrap(), rat_i(800_000));
        assert_eq!(parse_rational("1.2e-4").unwrap(), rat(3, 25_000));
        assert_eq!(parse_rational("793.6").unwrap(), rat(3968, 5));
        assert_eq!(parse_rational("3/8").unwrap(), rat(3, 8));
        assert_eq!(parse_rational("-3/8").unwrap(), rat(-3, 8));
        assert_eq!(parse_rational("4/8").unwrap(), rat(1, 2));
    }

    #[test]
    fn rejects_malformed_literals() {
        for bad in ["", "abc", "1.2.3", "1/0", "1e", "--3", "5 5"] {
            assert!(parse_rational(bad).is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn exact_format_round_trips() {
        for s in ["0", "17", "-4", "3/8", "-1/3", "1000000007"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(parse_rational(&format_exact(&r)).unwrap(), r);
        }
    }

    #[test]
    fn terminating_decimals_render_exactly() {
        assert_eq!(format_decimal(&rat(1, 8), 12), "0.125");
        assert_eq!(format_decimal(&rat(9, 62500), 12), "0.000144");
        assert_eq!(format_decimal(&rat_i(144), 12), "144");
        assert_eq!(format_decimal(&rat(-5, 4), 12), "-1.25");
        assert_eq!(format_decimal(&rat(3968, 5), 12), "793.6");
        // Long but terminating expansions are rendered in full.
        assert_eq!(format_decimal(&rat(1, 1 << 20), 6), "0.00000095367431640625");
    }

    #[test]
    fn repeating_decimals_round_to_significant_digits() {
        assert_eq!(format_decimal(&rat(1, 3), 12), "0.333333333333");
        assert_eq!(format_decimal(&rat(2, 3), 3), "0.667");
        assert_eq!(format_decimal(&rat(1, 7), 6), "0.142857");
        assert_eq!(format_decimal(&rat(-1, 3), 3), "-0.333");
        assert_eq!(format_decimal(&rat(10000, 3), 3), "3330");
        assert_eq!(format_decimal(&rat(2999, 3), 3), "1000");
    }

    #[test]
    fn rational_gcd_and_lcm() {
        assert_eq!(gcd_rational(&rat(1, 2), &rat(1, 3)), rat(1, 6));
        assert_eq!(lcm_rational(&rat(1, 2), &rat(1, 3)), rat_i(1));
        assert_eq!(lcm_rational(&rat(3, 4), &rat(1, 2)), rat(3, 2));
        assert_eq!(gcd_rational(&rat(3, 4), &rat(1, 2)), rat(1, 4));
    }

    #[test]
    fn euclidean_remainder_wraps_into_range() {
        assert_eq!(rem_euclid(&rat(7, 2), &rat_i(1)), rat(1, 2));
        assert_eq!(rem_euclid(&rat(-1, 4), &rat_i(1)), rat(3, 4));
        assert_eq!(rem_euclid(&rat_i(3), &rat(3, 2)), rat_i(0));
    }
}
