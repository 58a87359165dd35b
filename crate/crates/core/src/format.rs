/// Formats `x` with `digits` significant digits.
///
/// Moderate magnitudes are printed in positional notation with trailing
/// zeros removed; very small or very large values use `1.5e-7` style.
pub(crate) fn sig(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if x.is_nan() {
        return "nan".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific notation");
    let exp: i32 = exp.parse().expect("exponent");
    if (-5..15).contains(&exp) {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim(format!("{:.*}", decimals, x))
    } else {
        format!("{}e{}", trim(mantissa.to_string()), exp)
    }
}

fn trim(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::sig;

    #[test]
    fn significant_digits() {
        assert_eq!(sig(0.5, 9), "0.5");
        assert_eq!(sig(1.0 / 3.0, 9), "0.333333333");
        assert_eq!(sig(2.0 / 3.0, 12), "0.666666666667");
        assert_eq!(sig(123456.0, 9), "123456");
        assert_eq!(sig(9.9999999999, 9), "10");
        assert_eq!(sig(-2.5e-9, 9), "-2.5e-9");
        assert_eq!(sig(1e20, 3), "1e20");
        assert_eq!(sig(0.0, 9), "0");
        assert_eq!(sig(f64::INFINITY, 9), "inf");
    }
}
