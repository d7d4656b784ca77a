//! Log-domain real arithmetic and a cached ln-factorial table.
//!
//! Factorial ratios that appear in angular-momentum coefficients overflow
//! `f64` long before the coefficients themselves leave the representable
//! range, so products and alternating sums are carried as
//! `sign * exp(log_mag)` and only exponentiated at the very end.

use std::sync::OnceLock;

use crate::kahan::Kahan;

/// Largest argument covered by the default ln-factorial table.
///
/// Diagonal-limit work touches factorials up to roughly `4s + 2`; the default
/// covers spins to `s = 2048` with room to spare.  Larger arguments fall back
/// to the Stirling series, which is accurate to ~1e-14 in this range.
const LNFAC_TABLE_LEN: usize = 8200;

static LNFAC: OnceLock<Vec<f64>> = OnceLock::new();

fn lnfac_table() -> &'static [f64] {
    LNFAC.get_or_init(|| {
        let mut table = Vec::with_capacity(LNFAC_TABLE_LEN);
        let mut acc = Kahan::new();
        table.push(0.0); // ln 0! = 0
        for n in 1..LNFAC_TABLE_LEN {
            acc.add((n as f64).ln());
            table.push(acc.total());
        }
        table
    })
}

/// ln(n!) with cached exact-summation table and Stirling-series fallback.
pub fn ln_factorial(n: u64) -> f64 {
    let table = lnfac_table();
    if (n as usize) < table.len() {
        return table[n as usize];
    }
    // Stirling series: ln n! = n ln n - n + (1/2) ln(2 pi n) + 1/(12n) - ...
    let x = n as f64;
    let x2 = x * x;
    x * x.ln() - x + 0.5 * (2.0 * std::f64::consts::PI * x).ln() + 1.0 / (12.0 * x)
        - 1.0 / (360.0 * x * x2)
        + 1.0 / (1260.0 * x2 * x2 * x)
}

/// Signed real carried as `sign * exp(log_mag)`.
///
/// `sign == 0` encodes an exact zero (with `log_mag` irrelevant).
#[derive(Clone, Copy, Debug)]
pub struct LogDomainReal {
    sign: i8,
    log_mag: f64,
}

impl LogDomainReal {
    pub const ZERO: LogDomainReal = LogDomainReal {
        sign: 0,
        log_mag: f64::NEG_INFINITY,
    };

    pub const ONE: LogDomainReal = LogDomainReal {
        sign: 1,
        log_mag: 0.0,
    };

    pub fn from_sign_log(sign: i8, log_mag: f64) -> Self {
        debug_assert!(sign == -1 || sign == 0 || sign == 1);
        if sign == 0 || log_mag == f64::NEG_INFINITY {
            return Self::ZERO;
        }
        LogDomainReal { sign, log_mag }
    }

    pub fn from_f64(x: f64) -> Self {
        if x == 0.0 {
            Self::ZERO
        } else {
            LogDomainReal {
                sign: if x < 0.0 { -1 } else { 1 },
                log_mag: x.abs().ln(),
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn log_mag(&self) -> f64 {
        self.log_mag
    }

    pub fn neg(self) -> Self {
        LogDomainReal {
            sign: -self.sign,
            log_mag: self.log_mag,
        }
    }

    pub fn mul(self, rhs: Self) -> Self {
        if self.sign == 0 || rhs.sign == 0 {
            return Self::ZERO;
        }
        LogDomainReal {
            sign: self.sign * rhs.sign,
            log_mag: self.log_mag + rhs.log_mag,
        }
    }

    /// Multiply by `exp(delta)` (e.g. a factorial-ratio increment).
    pub fn scale_log(self, delta: f64) -> Self {
        if self.sign == 0 {
            return Self::ZERO;
        }
        LogDomainReal {
            sign: self.sign,
            log_mag: self.log_mag + delta,
        }
    }

    pub fn sqrt(self) -> Self {
        debug_assert!(self.sign >= 0, "sqrt of negative log-domain value");
        if self.sign == 0 {
            return Self::ZERO;
        }
        LogDomainReal {
            sign: 1,
            log_mag: 0.5 * self.log_mag,
        }
    }

    /// Collapse to `f64`; overflows to `+-inf` and underflows to `0` silently,
    /// so callers that care should inspect `log_mag` first.
    pub fn to_f64(self) -> f64 {
        if self.sign == 0 {
            0.0
        } else {
            f64::from(self.sign) * self.log_mag.exp()
        }
    }
}

/// Sum signed log-domain terms by factoring out the largest magnitude.
///
/// Returns the sum as a log-domain value; heavy cancellation degrades the
/// result exactly as it would in fixed-point, but the dynamic range of the
/// inputs is unlimited.
pub fn signed_log_sum(terms: &[LogDomainReal]) -> LogDomainReal {
    let max_log = terms
        .iter()
        .filter(|t| !t.is_zero())
        .map(|t| t.log_mag)
        .fold(f64::NEG_INFINITY, f64::max);
    if max_log == f64::NEG_INFINITY {
        return LogDomainReal::ZERO;
    }
    let mut acc = Kahan::new();
    for t in terms {
        if !t.is_zero() {
            acc.add(f64::from(t.sign) * (t.log_mag - max_log).exp());
        }
    }
    let total = acc.total();
    if total == 0.0 {
        return LogDomainReal::ZERO;
    }
    LogDomainReal {
        sign: if total < 0.0 { -1 } else { 1 },
        log_mag: max_log + total.abs().ln(),
    }
}
