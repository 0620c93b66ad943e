//! Parsers for quantities given on the command line.

/// Length in metres from `10nm`, `1e-8`, `1e-8m`, `0.5um`, `250pm`.
pub fn parse_length(s: &str) -> Result<f64, String> {
    let s = s.trim();
    let (num, scale) = split_suffix(
        s,
        &[
            ("nm", 1e-9),
            ("um", 1e-6),
            ("µm", 1e-6),
            ("pm", 1e-12),
            ("mm", 1e-3),
            ("m", 1.0),
        ],
    );
    let v = parse_number(num, s)?;
    positive(v * scale, s)
}

/// Time in seconds from `8.6e-13`, `8.6e-13s`, `864fs`, `0.5ps`. Zero allowed.
pub fn parse_time(s: &str) -> Result<f64, String> {
    let s = s.trim();
    let (num, scale) = split_suffix(s, &[("fs", 1e-15), ("ps", 1e-12), ("ns", 1e-9), ("s", 1.0)]);
    let v = parse_number(num, s)? * scale;
    if !(v.is_finite() && v >= 0.0) {
        return Err(format!("`{s}` must be a non-negative time"));
    }
    Ok(v)
}

/// A strictly positive tolerance.
pub fn parse_tolerance(s: &str) -> Result<f64, String> {
    let v = parse_number(s.trim(), s)?;
    positive(v, s)
}

fn split_suffix<'a>(s: &'a str, units: &[(&str, f64)]) -> (&'a str, f64) {
    for (suffix, scale) in units {
        if let Some(num) = s.strip_suffix(suffix) {
            // an unknown prefix such as `km` is left for the number parser to reject
            if !num.ends_with(|c: char| c.is_ascii_alphabetic() && c != 'e' && c != 'E') {
                return (num.trim_end(), *scale);
            }
        }
    }
    (s, 1.0)
}

fn parse_number(num: &str, original: &str) -> Result<f64, String> {
    num.parse::<f64>()
        .map_err(|_| format!("`{original}` is not a number with an optional unit"))
}

fn positive(v: f64, original: &str) -> Result<f64, String> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(format!("`{original}` must be positive and finite"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lengths() {
        assert_eq!(parse_length("10nm").unwrap(), 10.0 * 1e-9);
        assert_eq!(parse_length("1e-8").unwrap(), 1e-8);
        assert_eq!(parse_length("1e-8m").unwrap(), 1e-8);
        assert_eq!(parse_length("0.5um").unwrap(), 0.5e-6);
        assert!(parse_length("-1").is_err());
        assert!(parse_length("0").is_err());
        assert!(parse_length("ten").is_err());
        assert!(parse_length("10 parsecs").is_err());
    }

    #[test]
    fn times() {
        assert_eq!(parse_time("0").unwrap(), 0.0);
        assert_eq!(parse_time("8.638e-13").unwrap(), 8.638e-13);
        assert_eq!(parse_time("8.638e-13s").unwrap(), 8.638e-13);
        assert!((parse_time("864fs").unwrap() - 8.64e-13).abs() < 1e-27);
        assert!(parse_time("-1e-15").is_err());
    }
}
