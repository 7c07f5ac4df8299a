//! `%.Ng`-style number formatting.
//!
//! Rust's formatter has no shortest-of-fixed-or-scientific mode, and both the
//! weighted-CNF writer and the CLI need one that is byte-stable.

/// Format `v` with `digits` significant digits, choosing fixed or scientific
/// notation like C's `%g` and dropping trailing zeros.
pub fn format_sig(v: f64, digits: usize) -> String {
    assert!(digits >= 1);
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return if v.is_sign_negative() {
            "-0".into()
        } else {
            "0".into()
        };
    }
    let sci = format!("{:.*e}", digits - 1, v);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    let (sign, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => ("-", m),
        None => ("", mantissa),
    };
    let significant: String = mantissa.chars().filter(|c| *c != '.').collect();

    if exp < -4 || exp >= digits as i32 {
        let mut m = String::from(&significant[..1]);
        let frac = significant[1..].trim_end_matches('0');
        if !frac.is_empty() {
            m.push('.');
            m.push_str(frac);
        }
        let esign = if exp < 0 { '-' } else { '+' };
        return format!("{sign}{m}e{esign}{:02}", exp.abs());
    }

    let (int_part, frac_part) = if exp >= 0 {
        let split = exp as usize + 1;
        (
            significant[..split].to_string(),
            significant[split..].to_string(),
        )
    } else {
        let zeros = "0".repeat((-exp - 1) as usize);
        ("0".to_string(), format!("{zeros}{significant}"))
    };
    let frac_part = frac_part.trim_end_matches('0');
    if frac_part.is_empty() {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part}")
    }
}

#[cfg(test)]
mod tests {
    use super::format_sig;

    #[test]
    fn matches_c_g_format() {
        assert_eq!(format_sig(0.25, 12), "0.25");
        assert_eq!(format_sig(1.0, 12), "1");
        assert_eq!(format_sig(-1.0 / 24.0, 12), "-0.0416666666667");
        assert_eq!(format_sig(0.5 + 2f64.sqrt() / 4.0, 12), "0.853553390593");
        assert_eq!(
            format_sig(std::f64::consts::FRAC_1_SQRT_2, 17),
            "0.70710678118654757"
        );
        assert_eq!(format_sig(123456.0, 3), "1.23e+05");
        assert_eq!(format_sig(1.5e-7, 17), "1.4999999999999999e-07");
        assert_eq!(format_sig(0.0001, 6), "0.0001");
        assert_eq!(format_sig(-0.0, 6), "-0");
        assert_eq!(format_sig(100.0, 3), "100");
    }

    #[test]
    fn seventeen_digits_round_trip() {
        for &v in &[
            0.1,
            -1.0 / 3.0,
            1e-300,
            6.02214076e23,
            f64::MIN_POSITIVE,
            std::f64::consts::FRAC_1_SQRT_2,
        ] {
            let s = format_sig(v, 17);
            assert_eq!(s.parse::<f64>().unwrap().to_bits(), v.to_bits(), "{s}");
        }
    }
}
