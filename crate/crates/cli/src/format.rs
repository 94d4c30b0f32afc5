//! Fixed-format numbers: nine significant digits, positional between 1e-4
//! and 1e9, scientific outside.

/// Coordinates smaller than this print as zero.
pub const SNAP: f64 = 1e-12;

const DIGITS: i32 = 9;

pub fn number(v: f64) -> String {
    if v == 0.0 {
        return format!("{:.*}", (DIGITS - 1) as usize, 0.0);
    }
    if !v.is_finite() {
        return format!("{v}");
    }
    // Round once in scientific form so the exponent reflects any carry.
    let sci = format!("{:.*e}", (DIGITS - 1) as usize, v);
    let exp: i32 = sci[sci.find('e').unwrap() + 1..].parse().unwrap();
    if (-4..9).contains(&exp) {
        let decimals = (DIGITS - 1 - exp).max(0) as usize;
        format!("{v:.decimals$}")
    } else {
        sci
    }
}

/// Number with tiny values snapped to zero (never prints `-0`).
pub fn coordinate(v: f64) -> String {
    number(snap(v))
}

pub fn snap(v: f64) -> f64 {
    if v.abs() < SNAP {
        0.0
    } else {
        v
    }
}

pub fn tuple(coords: &[f64]) -> String {
    let parts: Vec<String> = coords.iter().map(|c| coordinate(*c)).collect();
    format!("({})", parts.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nine_significant_digits() {
        assert_eq!(number(5.0), "5.00000000");
        assert_eq!(number(-1.5), "-1.50000000");
        assert_eq!(number(123.456), "123.456000");
        assert_eq!(number(0.001), "0.00100000000");
        assert_eq!(number(std::f64::consts::PI), "3.14159265");
        assert_eq!(number(0.0), "0.00000000");
    }

    #[test]
    fn carry_moves_the_decimal_point() {
        assert_eq!(number(9.9999999999), "10.0000000");
        assert_eq!(number(0.99999999999), "1.00000000");
    }

    #[test]
    fn extremes_switch_to_scientific() {
        assert_eq!(number(1e-5), "1.00000000e-5");
        assert_eq!(number(2.5e9), "2.50000000e9");
        assert_eq!(number(123456789.0), "123456789");
    }

    #[test]
    fn coordinates_snap_and_never_print_negative_zero() {
        assert_eq!(coordinate(-1e-15), "0.00000000");
        assert_eq!(coordinate(-0.0), "0.00000000");
        assert_eq!(
            tuple(&[1.0, -3e-13, 2.0]),
            "(1.00000000, 0.00000000, 2.00000000)"
        );
    }
}
