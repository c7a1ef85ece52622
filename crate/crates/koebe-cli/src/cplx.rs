//! Flag-value parsing and formatting: complex literals `<re>(+|-)<im>i`,
//! reals that may be written as fractions `p/q`, and exact rationals.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;

/// Parse a complex literal: `0.5+0.25i`, `-1.2-0.7i`, a bare real `0.5`,
/// or a bare imaginary `0.3i` / `i` / `-i`.
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let t = s.trim();
    let bad = || format!("malformed complex literal {s:?} (expected <re>(+|-)<im>i)");
    if t.is_empty() {
        return Err(bad());
    }
    let Some(body) = t.strip_suffix(['i', 'I']) else {
        return t.parse::<f64>().map(|re| Complex64::new(re, 0.0)).map_err(|_| bad());
    };
    // Split at the last sign that separates the parts; signs inside an
    // exponent (`1e-3`) follow 'e'/'E' and do not split.
    let bytes = body.as_bytes();
    let mut split = None;
    for k in (1..bytes.len()).rev() {
        if matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E') {
            split = Some(k);
            break;
        }
    }
    match split {
        Some(k) => {
            let re = body[..k].trim().parse::<f64>().map_err(|_| bad())?;
            let sign = if bytes[k] == b'-' { -1.0 } else { 1.0 };
            let mag = body[k + 1..].trim();
            let im = if mag.is_empty() { 1.0 } else { mag.parse::<f64>().map_err(|_| bad())? };
            Ok(Complex64::new(re, sign * im))
        }
        None => {
            let im = match body.trim() {
                "" | "+" => 1.0,
                "-" => -1.0,
                mag => mag.parse::<f64>().map_err(|_| bad())?,
            };
            Ok(Complex64::new(0.0, im))
        }
    }
}

/// Canonical complex literal, shortest round-trip decimals: `re+imi`/`re-imi`.
pub fn format_complex(z: Complex64) -> String {
    let re = if z.re == 0.0 { 0.0 } else { z.re };
    let im = if z.im == 0.0 { 0.0 } else { z.im };
    if im < 0.0 {
        format!("{}-{}i", re, -im)
    } else {
        format!("{}+{}i", re, im)
    }
}

/// Real flag value: a decimal or a fraction `p/q`.
pub fn parse_real(s: &str) -> Result<f64, String> {
    let t = s.trim();
    let bad = || format!("malformed real {s:?} (expected a decimal or p/q)");
    let v = if let Some((p, q)) = t.split_once('/') {
        let p = p.trim().parse::<f64>().map_err(|_| bad())?;
        let q = q.trim().parse::<f64>().map_err(|_| bad())?;
        if q == 0.0 {
            return Err(format!("zero denominator in {s:?}"));
        }
        p / q
    } else {
        t.parse::<f64>().map_err(|_| bad())?
    };
    if !v.is_finite() {
        return Err(bad());
    }
    Ok(v)
}

/// Exact rational flag value: `p/q`, an integer, or a finite decimal.
pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    let t = s.trim();
    let bad = || format!("malformed rational {s:?} (expected p/q, an integer, or a finite decimal)");
    if let Some((p, q)) = t.split_once('/') {
        let p = p.trim().parse::<BigInt>().map_err(|_| bad())?;
        let q = q.trim().parse::<BigInt>().map_err(|_| bad())?;
        if q == BigInt::from(0) {
            return Err(format!("zero denominator in {s:?}"));
        }
        return Ok(BigRational::new(p, q));
    }
    let (neg, digits) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    if !digits.bytes().any(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    let int_part = if int_part.is_empty() { "0" } else { int_part };
    if !int_part.bytes().all(|b| b.is_ascii_digit()) || !frac_part.bytes().all(|b| b.is_ascii_digit())
    {
        return Err(bad());
    }
    let mantissa = format!("{int_part}{frac_part}").parse::<BigInt>().map_err(|_| bad())?;
    let denom = BigInt::from(10).pow(frac_part.len() as u32);
    let r = BigRational::new(mantissa, denom);
    Ok(if neg { -r } else { r })
}
