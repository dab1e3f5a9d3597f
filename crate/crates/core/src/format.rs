//! Decimal rendering of results: values to a fixed number of significant
//! digits (round-half-even), error estimates in scientific notation.

use rug::float::Round;
use rug::Float;

/// Decimal exponents outside this window switch to scientific notation.
const POSITIONAL_MIN_EXP: i64 = -6;
const POSITIONAL_MAX_EXP: i64 = 21;

/// Sign, digit string and decimal exponent `e` such that
/// `value = ±0.d1d2d3... × 10^e` rounded to `digits` significant digits.
fn decompose(x: &Float, digits: usize, round: Round) -> (bool, String, i64) {
    let s = x.to_string_radix_round(10, Some(digits), round);
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.as_str()),
    };
    let (mantissa, exp) = match body.split_once('e') {
        Some((m, e)) => (m, e.parse::<i64>().expect("mpfr exponent")),
        None => (body, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    let mut digs = String::with_capacity(digits);
    digs.push_str(int_part);
    digs.push_str(frac_part);
    // mpfr gives one digit before the point
    let exp10 = exp + int_part.len() as i64;
    digs.truncate(digits);
    while digs.len() < digits {
        digs.push('0');
    }
    (neg, digs, exp10)
}

/// `x` to `digits` significant digits, rounding half to even.
///
/// Positional for moderate magnitudes (`-0.165421143700`), otherwise
/// scientific (`1.2345e-30`). Zero is rendered as `0`.
pub fn format_value(x: &Float, digits: u32) -> String {
    format_value_round(x, digits, Round::Nearest)
}

/// As [`format_value`] with an explicit rounding direction; `Round::Zero`
/// truncates.
pub fn format_value_round(x: &Float, digits: u32, round: Round) -> String {
    let digits = digits.max(1) as usize;
    if x.is_zero() {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let (neg, digs, exp10) = decompose(x, digits, round);
    let sign = if neg { "-" } else { "" };
    let point = exp10 - 1;
    if (POSITIONAL_MIN_EXP..POSITIONAL_MAX_EXP).contains(&point) {
        if exp10 <= 0 {
            let zeros = "0".repeat((-exp10) as usize);
            format!("{sign}0.{zeros}{digs}")
        } else if exp10 as usize >= digs.len() {
            let zeros = "0".repeat(exp10 as usize - digs.len());
            format!("{sign}{digs}{zeros}")
        } else {
            let (a, b) = digs.split_at(exp10 as usize);
            format!("{sign}{a}.{b}")
        }
    } else {
        scientific(sign, &digs, point)
    }
}

fn scientific(sign: &str, digs: &str, point: i64) -> String {
    let (a, b) = digs.split_at(1);
    if b.is_empty() {
        format!("{sign}{a}e{point}")
    } else {
        format!("{sign}{a}.{b}e{point}")
    }
}

/// Error estimates: two significant digits, rounded up, always scientific.
pub fn format_err(err: &Float) -> String {
    if err.is_zero() {
        return "0.0e0".to_string();
    }
    let abs = Float::with_val(err.prec(), err.abs_ref());
    let (_, digs, exp10) = decompose(&abs, 2, Round::Up);
    scientific("", &digs, exp10 - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> Float {
        Float::with_val(200, Float::parse(s).unwrap())
    }

    #[test]
    fn positional_values() {
        assert_eq!(format_value(&f("-0.16542114370045092921"), 12), "-0.165421143700");
        assert_eq!(format_value(&f("-0.2475089540675685"), 10), "-0.2475089541");
        assert_eq!(format_value(&f("139.54964934417511"), 6), "139.550");
        assert_eq!(format_value(&f("12345678"), 4), "12350000");
        assert_eq!(format_value(&f("0.000123456"), 3), "0.000123");
        assert_eq!(format_value(&f("1"), 3), "1.00");
        assert_eq!(format_value(&f("0"), 3), "0");
    }

    #[test]
    fn scientific_values() {
        assert_eq!(format_value(&f("1.25e-30"), 3), "1.25e-30");
        assert_eq!(format_value(&f("-6.02e40"), 2), "-6.0e40");
    }

    #[test]
    fn half_even_on_exact_ties() {
        assert_eq!(format_value(&f("0.125"), 2), "0.12");
        assert_eq!(format_value(&f("0.375"), 2), "0.38");
        assert_eq!(format_value(&f("2.5"), 1), "2");
    }

    #[test]
    fn truncation() {
        let v = f("0.0131809720977638712");
        assert_eq!(format_value_round(&v, 11, Round::Zero), "0.013180972097");
        assert_eq!(format_value(&v, 11), "0.013180972098");
        assert_eq!(format_value_round(&f("-0.25"), 1, Round::Zero), "-0.2");
    }

    #[test]
    fn errors_round_up() {
        assert_eq!(format_err(&f("1.21e-25")), "1.3e-25");
        assert_eq!(format_err(&f("3e-7")), "3.0e-7");
        assert_eq!(format_err(&f("0")), "0.0e0");
    }
}
