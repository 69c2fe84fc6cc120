//! Stable numeric formatting for CSV and JSON output.

use serde_json::Value;

/// Significant digits kept in every emitted number.
pub const SIGNIFICANT_DIGITS: usize = 9;

/// Rounds `x` to [`SIGNIFICANT_DIGITS`] significant digits.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return if x == 0.0 { 0.0 } else { x };
    }
    let r: f64 = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x)
        .parse()
        .expect("formatted float parses");
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// Shortest round-trip text of `x` after rounding to 9 significant digits.
pub fn format_number(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    format!("{}", round_sig(x))
}

/// JSON number rounded to 9 significant digits; non-finite values become `null`.
pub fn json_number(x: f64) -> Value {
    serde_json::Number::from_f64(round_sig(x))
        .map(Value::Number)
        .unwrap_or(Value::Null)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding() {
        assert_eq!(format_number(0.792_481_250_360_578_1), "0.79248125");
        assert_eq!(format_number(1.584_962_500_721_156), "1.5849625");
        assert_eq!(format_number(3.380_142_708_832_658), "3.38014271");
        assert_eq!(format_number(10.0), "10");
        assert_eq!(format_number(-0.0), "0");
        assert_eq!(format_number(123_456_789_123.0), "123456789000");
        assert_eq!(format_number(f64::INFINITY), "inf");
    }

    #[test]
    fn json_values() {
        assert_eq!(json_number(0.5).to_string(), "0.5");
        assert_eq!(json_number(f64::NAN), Value::Null);
    }
}
