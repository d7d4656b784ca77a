//! Flag-value parsers shared across the subcommands.

use phase_contract::error::{Error, Result};
use phase_contract::half::HalfInt;
use phase_contract::spin_kernel::SignPattern;

/// Read an angular momentum written as an integer (`2`), a half fraction
/// (`3/2`), or a decimal (`1.5`).  Used as a clap value parser.
pub fn parse_half(text: &str) -> std::result::Result<HalfInt, String> {
    let t = text.trim();
    if let Some((numer, denom)) = t.split_once('/') {
        let n: i64 = numer
            .trim()
            .parse()
            .map_err(|_| unreadable(t))?;
        return match denom.trim() {
            "1" => Ok(HalfInt::from_int(n)),
            "2" => Ok(HalfInt::from_twice(n)),
            _ => Err(format!(
                "the denominator of {t:?} must be 1 or 2; angular momenta \
                 are half-integers"
            )),
        };
    }
    if let Ok(n) = t.parse::<i64>() {
        return Ok(HalfInt::from_int(n));
    }
    let x: f64 = t.parse().map_err(|_| unreadable(t))?;
    let twice = 2.0 * x;
    if !twice.is_finite() || twice.fract() != 0.0 || twice.abs() > 1e15 {
        return Err(format!("{t:?} is not a half-integer"));
    }
    Ok(HalfInt::from_twice(twice as i64))
}

fn unreadable(t: &str) -> String {
    format!("cannot read {t:?} as an angular momentum (write 2, 3/2, or 1.5)")
}

/// A doubled spin from the `--two-s` flag; must be non-negative.
pub fn spin_from_twice(two_s: i64) -> Result<HalfInt> {
    if two_s < 0 {
        return Err(Error::domain(format!(
            "two-s must be non-negative, got {two_s}"
        )));
    }
    Ok(HalfInt::from_twice(two_s))
}

/// The sign pattern for spin `s`: all-plus when no mask is given, otherwise
/// the mask bits over `l = 1..=2s` (`1` = flipped sign).
pub fn pattern_for(s: HalfInt, mask: Option<&str>) -> Result<SignPattern> {
    match mask {
        None => Ok(SignPattern::all_plus(s)),
        Some(m) => SignPattern::from_mask(s, m),
    }
}
