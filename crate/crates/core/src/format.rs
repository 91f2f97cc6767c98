//! Locale-free number formatting shared by the CSV writers.

/// Formats `v` with 17 significant digits.
///
/// Plain decimal notation is used when the decimal exponent lies in
/// `-5..17`, scientific notation (`1.2345678901234567e-7`) otherwise.
pub fn sig17(v: f64) -> String {
    if !v.is_finite() {
        return format!("{v}");
    }
    if v == 0.0 {
        return format!("{:.16}", v);
    }
    let sci = format!("{:.16e}", v);
    let exp: i32 = sci
        .rsplit_once('e')
        .and_then(|(_, e)| e.parse().ok())
        .expect("exponent in scientific format");
    if (-5..17).contains(&exp) {
        format!("{:.*}", (16 - exp) as usize, v)
    } else {
        sci
    }
}

/// Fixed-point formatting that never prints `-0.000…`.
pub fn fixed(v: f64, decimals: usize) -> String {
    let s = format!("{:.*}", decimals, v);
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s[1..].to_string()
    } else {
        s
    }
}
