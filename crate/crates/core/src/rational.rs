//! Exact rational numbers and their textual renderings.

use num_integer::Integer;
use num_traits::Zero;

/// Exact rational used for masses, costs and curvature values.
pub type Rational = num_rational::Ratio<i64>;

/// Builds `num / den`, reduced.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(num, den)
}

/// Renders `r` as `"num/den"`, or `"num"` for integers.
pub fn fraction(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `"a/b"`, `"a"` or a finite decimal such as `"0.25"`.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    if let Some((n, d)) = text.split_once('/') {
        let n: i64 = n.trim().parse().ok()?;
        let d: i64 = d.trim().parse().ok()?;
        if d == 0 {
            return None;
        }
        return Some(Rational::new(n, d));
    }
    if let Some((int, frac)) = text.split_once('.') {
        let (negative, int) = match int.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, int.strip_prefix('+').unwrap_or(int)),
        };
        let digits = |s: &str| s.bytes().all(|b| b.is_ascii_digit());
        if frac.is_empty() || frac.len() > 15 || !digits(frac) || !digits(int) {
            return None;
        }
        let int_abs: i64 = if int.is_empty() { 0 } else { int.parse().ok()? };
        let den = 10i64.checked_pow(frac.len() as u32)?;
        let frac_num: i64 = frac.parse().ok()?;
        let num = int_abs.checked_mul(den)?.checked_add(frac_num)?;
        let r = Rational::new(num, den);
        return Some(if negative { -r } else { r });
    }
    text.parse::<i64>().ok().map(Rational::from_integer)
}

/// Exact decimal rendering of `r` with `places` fractional digits, rounding
/// half to even.
pub fn decimal(r: &Rational, places: u32) -> String {
    let scale = 10i128.pow(places);
    let num = *r.numer() as i128 * scale;
    let den = *r.denom() as i128;
    let (mut q, rem) = num.div_rem(&den);
    // Compare 2|rem| with den to decide the rounding direction.
    let twice = 2 * rem.abs();
    if twice > den || (twice == den && q.is_odd()) {
        q += if num.is_negative() { -1 } else { 1 };
    }
    format_scaled(q, places)
}

/// Decimal rendering of a float with half-even rounding on its exact binary
/// value.
pub fn decimal_f64(value: f64, places: usize) -> String {
    let s = format!("{value:.places$}");
    if s.starts_with('-') && s[1..].bytes().all(|b| b == b'0' || b == b'.') {
        s[1..].to_string()
    } else {
        s
    }
}

fn format_scaled(q: i128, places: u32) -> String {
    let negative = q < 0;
    let digits = q.abs().to_string();
    let places = places as usize;
    let body = if places == 0 {
        digits
    } else if digits.len() <= places {
        format!("0.{}{}", "0".repeat(places - digits.len()), digits)
    } else {
        let (int, frac) = digits.split_at(digits.len() - places);
        format!("{int}.{frac}")
    };
    if negative && !q.is_zero() {
        format!("-{body}")
    } else {
        body
    }
}

/// Serializes a rational as its `"num/den"` rendering.
pub fn serialize_fraction<S: serde::Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&fraction(r))
}

/// Converts to `f64` (lossy).
pub fn to_f64(r: &Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}
