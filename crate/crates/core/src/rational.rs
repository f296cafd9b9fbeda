//! Exact rational numbers and their textual forms.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational, always kept in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// Parses `p/q` or a plain integer. Whitespace around the parts is allowed.
pub fn parse_rational(text: &str) -> Option<Rational> {
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

/// Renders `p/q`; integers render as `n/1`.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Truncated decimal rendering with `digits` fractional digits, rounding half
/// away from zero.
pub fn format_decimal(r: &Rational, digits: usize) -> String {
    let scale = BigInt::from(10u32).pow(digits as u32);
    let scaled = r.abs() * Rational::from_integer(scale.clone());
    let rounded = (scaled + ratio(1, 2)).floor().to_integer();
    let int_part = &rounded / &scale;
    let frac_part = &rounded % &scale;
    let sign = if r.is_negative() && !rounded.is_zero() {
        "-"
    } else {
        ""
    };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        let frac = frac_part.to_string();
        format!("{sign}{int_part}.{}{frac}", "0".repeat(digits - frac.len()))
    }
}

/// Lossy conversion used only for sampling and display.
pub fn to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_integers() {
        assert_eq!(parse_rational("1/4"), Some(ratio(1, 4)));
        assert_eq!(parse_rational(" 2/4 "), Some(ratio(1, 2)));
        assert_eq!(parse_rational("1"), Some(int(1)));
        assert_eq!(parse_rational("0"), Some(int(0)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(format_decimal(&ratio(1, 4), 4), "0.2500");
        assert_eq!(format_decimal(&ratio(55, 72), 6), "0.763889");
        assert_eq!(format_decimal(&ratio(2, 3), 0), "1");
        assert_eq!(format_decimal(&ratio(-1, 8), 2), "-0.13");
        assert_eq!(format_rational(&int(0)), "0/1");
    }
}
