//! `%g`-style number formatting used by the CSV and series-name outputs.

/// Formats `x` with `digits` significant digits, dropping trailing zeros,
/// switching to scientific notation for very small or very large
/// magnitudes (the C `%.{digits}g` rules).
pub fn format_significant(x: f64, digits: usize) -> String {
    assert!(digits >= 1);
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exponent) = sci.split_once('e').expect("scientific format has an exponent");
    let exponent: i32 = exponent.parse().expect("integer exponent");
    if exponent < -4 || exponent >= digits as i32 {
        format!("{}e{}", trim_zeros(mantissa), exponent)
    } else {
        let decimals = (digits as i32 - 1 - exponent).max(0) as usize;
        trim_zeros(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::format_significant as f;

    #[test]
    fn matches_printf_g() {
        assert_eq!(f(0.6, 12), "0.6");
        assert_eq!(f(1.0, 12), "1");
        assert_eq!(f(0.1 + 0.2, 12), "0.3");
        assert_eq!(f(0.74375, 12), "0.74375");
        assert_eq!(f(50.0, 12), "50");
        assert_eq!(f(-2.0 / 3.0, 12), "-0.666666666667");
        assert_eq!(f(1e-9, 12), "1e-9");
        assert_eq!(f(1.5e15, 12), "1.5e15");
        assert_eq!(f(0.0001, 12), "0.0001");
        assert_eq!(f(123456.0, 3), "1.23e5");
    }
}
