//! Locale-independent float formatting for data files.
//!
//! Sequence files carry 15 significant digits, CSV output 9. Both widths
//! survive a parse → format round trip bit-exactly: an IEEE double resolves
//! any 15-digit decimal uniquely, so re-reading a file and writing it again
//! reproduces the bytes.

/// 15 significant digits, normalized scientific notation.
pub fn sig15(x: f64) -> String {
    format!("{x:.14e}")
}

/// 9 significant digits, normalized scientific notation.
pub fn sig9(x: f64) -> String {
    format!("{x:.8e}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fifteen_digit_reparse_is_stable() {
        for &x in &[std::f64::consts::PI, 1.0, 0.0, -2.5e-7, 18.8496, 1e300] {
            let s = sig15(x);
            let y: f64 = s.parse().unwrap();
            assert_eq!(sig15(y), s);
        }
    }

    #[test]
    fn nine_digit_format_shape() {
        assert_eq!(sig9(1.0), "1.00000000e0");
        assert_eq!(sig9(0.5), "5.00000000e-1");
    }
}
