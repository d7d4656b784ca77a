//! Clebsch-Gordan coefficients in the Condon-Shortley convention.
//!
//! Two evaluation paths are kept deliberately independent: an exact one over
//! big rationals (the reference for everything else in the crate) and a
//! log-domain float one that stays usable for spins far beyond the reach of
//! `f64` factorials.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::half::HalfInt;
use crate::logdomain::{ln_factorial, signed_log_sum, LogDomainReal};
use crate::sqrt_rational::SqrtRational;

/// Reject arguments that do not describe states at all (as opposed to valid
/// states that merely fail a selection rule).
pub fn validate_state(j: HalfInt, m: HalfInt) -> Result<()> {
    if j.is_negative() {
        return Err(Error::domain(format!("negative angular momentum j = {j}")));
    }
    if (j.twice() + m.twice()) % 2 != 0 {
        return Err(Error::domain(format!(
            "j = {j} and m = {m} differ by a non-integer"
        )));
    }
    if m.abs().twice() > j.twice() {
        return Err(Error::domain(format!("|m| = {} exceeds j = {j}", m.abs())));
    }
    Ok(())
}

/// Factorial of a half-integer count `t/2`; `None` when `t` is odd or
/// negative, which in the Racah sum means the coefficient vanishes.
fn fac_half(t: i64) -> Option<BigInt> {
    if t < 0 || t % 2 != 0 {
        return None;
    }
    let mut acc = BigInt::one();
    for v in 2..=(t / 2) {
        acc *= v;
    }
    Some(acc)
}

fn ln_fac_half(t: i64) -> f64 {
    debug_assert!(t >= 0 && t % 2 == 0);
    ln_factorial((t / 2) as u64)
}

struct RacahLayout {
    /// Twice the arguments of the nine prefactor factorials.
    prefactor: [i64; 9],
    /// `2J + 1`.
    weight: i64,
    /// Inclusive `k` range (integer steps), empty when `k_max < k_min`.
    k_min: i64,
    k_max: i64,
    /// Twice the offsets of the five non-`k!` factorials in the denominator
    /// of the `k`-sum: argument of each is `offset/2 - k` or `offset/2 + k`.
    down: [i64; 3],
    up: [i64; 2],
}

/// Selection rules plus the factorial layout of the Racah formula; `None`
/// when the coefficient is structurally zero.
fn racah_layout(
    j1: HalfInt,
    m1: HalfInt,
    j2: HalfInt,
    m2: HalfInt,
    j: HalfInt,
    m: HalfInt,
) -> Option<RacahLayout> {
    if (m1 + m2).twice() != m.twice() {
        return None;
    }
    let (t1, tm1) = (j1.twice(), m1.twice());
    let (t2, tm2) = (j2.twice(), m2.twice());
    let (tj, tm) = (j.twice(), m.twice());
    // Magnetic numbers must sit inside their multiplets, with matching
    // half-integer character.
    if tm1.abs() > t1 || tm2.abs() > t2 || tm.abs() > tj {
        return None;
    }
    if (t1 + tm1) % 2 != 0 || (t2 + tm2) % 2 != 0 || (tj + tm) % 2 != 0 {
        return None;
    }
    // Triangle condition and integer perimeter.
    let tri = [t1 + t2 - tj, t1 - t2 + tj, -t1 + t2 + tj];
    if tri.iter().any(|&t| t < 0) || (t1 + t2 + tj) % 2 != 0 {
        return None;
    }
    let prefactor = [
        tri[0],
        tri[1],
        tri[2],
        tj + tm,
        tj - tm,
        t1 - tm1,
        t1 + tm1,
        t2 - tm2,
        t2 + tm2,
    ];
    // k-sum denominators: k!, (j1+j2-J-k)!, (j1-m1-k)!, (j2+m2-k)!,
    // (J-j2+m1+k)!, (J-j1-m2+k)!
    let down = [t1 + t2 - tj, t1 - tm1, t2 + tm2];
    let up = [tj - t2 + tm1, tj - t1 - tm2];
    let k_min = up.iter().map(|&t| (-t) / 2).max().unwrap().max(0);
    let k_max = down.iter().map(|&t| t / 2).min().unwrap();
    Some(RacahLayout {
        prefactor,
        weight: tj + 1,
        k_min,
        k_max,
        down,
        up,
    })
}

/// Exact Clebsch-Gordan coefficient `<j1 m1; j2 m2 | j m>`.
///
/// Selection-rule failures give an exact zero; use [`validate_state`] first
/// when the inputs come from outside.
pub fn clebsch_gordan_exact(
    j1: HalfInt,
    m1: HalfInt,
    j2: HalfInt,
    m2: HalfInt,
    j: HalfInt,
    m: HalfInt,
) -> SqrtRational {
    let Some(layout) = racah_layout(j1, m1, j2, m2, j, m) else {
        return SqrtRational::zero();
    };
    // Prefactor (2J+1) * tri(j1 j2 J) * product of magnetic factorials.
    let mut numer = BigInt::from(layout.weight);
    for &t in &layout.prefactor {
        numer *= fac_half(t).expect("layout guarantees integer factorials");
    }
    let denom = fac_half(j1.twice() + j2.twice() + j.twice() + 2)
        .expect("perimeter is an integer");
    let prefactor = BigRational::new(numer, denom);

    let mut ksum = BigRational::zero();
    for k in layout.k_min..=layout.k_max {
        let mut den = fac_half(2 * k).expect("k is an integer");
        for &t in &layout.down {
            den *= fac_half(t - 2 * k).expect("within k range");
        }
        for &t in &layout.up {
            den *= fac_half(t + 2 * k).expect("within k range");
        }
        let term = BigRational::new(BigInt::one(), den);
        if k % 2 == 0 {
            ksum += term;
        } else {
            ksum -= term;
        }
    }
    SqrtRational::new(ksum, prefactor)
}

/// Log-domain Clebsch-Gordan coefficient, usable at spins where factorials
/// overflow `f64` by thousands of orders of magnitude.
pub fn clebsch_gordan_log(
    j1: HalfInt,
    m1: HalfInt,
    j2: HalfInt,
    m2: HalfInt,
    j: HalfInt,
    m: HalfInt,
) -> LogDomainReal {
    let Some(layout) = racah_layout(j1, m1, j2, m2, j, m) else {
        return LogDomainReal::ZERO;
    };
    let mut ln_pref = (layout.weight as f64).ln();
    for &t in &layout.prefactor {
        ln_pref += ln_fac_half(t);
    }
    ln_pref -= ln_fac_half(j1.twice() + j2.twice() + j.twice() + 2);

    let mut terms = Vec::with_capacity((layout.k_max - layout.k_min + 1).max(0) as usize);
    for k in layout.k_min..=layout.k_max {
        let mut ln_den = ln_fac_half(2 * k);
        for &t in &layout.down {
            ln_den += ln_fac_half(t - 2 * k);
        }
        for &t in &layout.up {
            ln_den += ln_fac_half(t + 2 * k);
        }
        let sign = if k % 2 == 0 { 1 } else { -1 };
        terms.push(LogDomainReal::from_sign_log(sign, -ln_den));
    }
    signed_log_sum(&terms).scale_log(0.5 * ln_pref)
}

/// Float Clebsch-Gordan coefficient `<j1 m1; j2 m2 | j m>`.
pub fn clebsch_gordan(
    j1: HalfInt,
    m1: HalfInt,
    j2: HalfInt,
    m2: HalfInt,
    j: HalfInt,
    m: HalfInt,
) -> f64 {
    clebsch_gordan_log(j1, m1, j2, m2, j, m).to_f64()
}

/// Log of the stretched coefficient `<s s; s -s | l 0>`, which collapses to a
/// single positive Racah term:
///
/// ```text
/// <s s; s -s | l 0>^2 = (2l+1) ((2s)!)^2 / ((2s-l)! (2s+l+1)!)
/// ```
pub fn stretched_log(s: HalfInt, l: i64) -> LogDomainReal {
    let ts = s.twice(); // 2s, an integer for every physical spin
    debug_assert!((0..=ts).contains(&l));
    let ln_sq = ((2 * l + 1) as f64).ln() + 2.0 * ln_factorial(ts as u64)
        - ln_factorial((ts - l) as u64)
        - ln_factorial((ts + l + 1) as u64);
    LogDomainReal::from_sign_log(1, 0.5 * ln_sq)
}
