//! Unit-suffixed scalar parsing for configuration values.
//!
//! Lengths are meters, times seconds, rates rad/s and angles radians unless a
//! suffix says otherwise. `MHz` is read as 10⁶ rad/s, not 2π·10⁶.

use std::f64::consts::PI;

pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Physical dimension of a configuration scalar.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dimension {
    Length,
    Time,
    Rate,
    Speed,
    Angle,
    Dimensionless,
}

impl Dimension {
    fn suffix_scale(self, suffix: &str) -> Option<f64> {
        let scale = match (self, suffix) {
            (_, "") => 1.0,
            (Dimension::Length, "m") => 1.0,
            (Dimension::Length, "mm") => 1e-3,
            (Dimension::Length, "um" | "µm" | "μm") => 1e-6,
            (Dimension::Length, "nm") => 1e-9,
            (Dimension::Time, "s") => 1.0,
            (Dimension::Time, "ms") => 1e-3,
            (Dimension::Time, "us" | "µs" | "μs") => 1e-6,
            (Dimension::Time, "ns") => 1e-9,
            (Dimension::Rate, "rad/s" | "/s" | "1/s") => 1.0,
            (Dimension::Rate, "kHz") => 1e3,
            (Dimension::Rate, "MHz") => 1e6,
            (Dimension::Rate, "GHz") => 1e9,
            (Dimension::Speed, "m/s") => 1.0,
            (Dimension::Speed, "mm/s") => 1e-3,
            (Dimension::Angle, "rad") => 1.0,
            (Dimension::Angle, "deg") => PI / 180.0,
            (Dimension::Angle, "pi") => PI,
            _ => return None,
        };
        Some(scale)
    }

    pub fn si_unit(self) -> &'static str {
        match self {
            Dimension::Length => "m",
            Dimension::Time => "s",
            Dimension::Rate => "rad/s",
            Dimension::Speed => "m/s",
            Dimension::Angle => "rad",
            Dimension::Dimensionless => "1",
        }
    }
}

/// Parses `"5.5 um"`, `"-9us"`, `"2 MHz"`, `"pi"`, `"0.5 pi"` and plain numbers.
pub fn parse_quantity(text: &str, dim: Dimension) -> Result<f64, String> {
    let s = text.trim();
    let split = s
        .char_indices()
        .find(|&(i, c)| {
            !(c.is_ascii_digit()
                || c == '.'
                || c == '+'
                || c == '-'
                || ((c == 'e' || c == 'E') && next_is_exponent(&s[i..])))
        })
        .map(|(i, _)| i)
        .unwrap_or(s.len());
    let (num, suffix) = s.split_at(split);
    let suffix = suffix.trim();
    let value = if num.is_empty() {
        if dim == Dimension::Angle && suffix == "pi" {
            1.0
        } else {
            return Err(format!("`{text}` has no numeric part"));
        }
    } else {
        num.parse::<f64>().map_err(|_| format!("`{text}` is not a number"))?
    };
    let scale = dim
        .suffix_scale(suffix)
        .ok_or_else(|| format!("unknown unit `{suffix}` for a {} value", dim.si_unit()))?;
    // dividing by 10^n keeps "40 um" at exactly 4e-5
    let divisor = (1.0 / scale).round();
    let out = if scale < 1.0 && divisor * scale == 1.0 { value / divisor } else { value * scale };
    if out.is_finite() {
        Ok(out)
    } else {
        Err(format!("`{text}` is not finite"))
    }
}

fn next_is_exponent(rest: &str) -> bool {
    let mut it = rest.chars().skip(1);
    match it.next() {
        Some(c) if c.is_ascii_digit() => true,
        Some('+' | '-') => it.next().is_some_and(|c| c.is_ascii_digit()),
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suffixes() {
        assert_eq!(parse_quantity("5.5 um", Dimension::Length).unwrap(), 5.5e-6);
        assert_eq!(parse_quantity("40 um", Dimension::Length).unwrap(), 40e-6);
        assert_eq!(parse_quantity("780 nm", Dimension::Length).unwrap(), 780e-9);
        assert_eq!(parse_quantity("780nm", Dimension::Length).unwrap(), 780e-9);
        assert_eq!(parse_quantity("-9 us", Dimension::Time).unwrap(), -9e-6);
        assert_eq!(parse_quantity("2 MHz", Dimension::Rate).unwrap(), 2e6);
        assert_eq!(parse_quantity("6.5e6", Dimension::Rate).unwrap(), 6.5e6);
        assert_eq!(parse_quantity("1e-6 m", Dimension::Length).unwrap(), 1e-6);
        assert_eq!(parse_quantity("pi", Dimension::Angle).unwrap(), PI);
        assert_eq!(parse_quantity("0.5 pi", Dimension::Angle).unwrap(), 0.5 * PI);
        assert_eq!(parse_quantity("180 deg", Dimension::Angle).unwrap(), PI);
    }

    #[test]
    fn rejects_wrong_unit() {
        assert!(parse_quantity("3 MHz", Dimension::Length).is_err());
        assert!(parse_quantity("um", Dimension::Length).is_err());
        assert!(parse_quantity("abc", Dimension::Rate).is_err());
    }
}
