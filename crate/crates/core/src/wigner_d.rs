//! Wigner rotation matrices `d^j(beta)` and the axis-through-a-point
//! rotation used to move kernels around the sphere.
//!
//! Elements are evaluated term by term in the log domain, so they stay
//! accurate at spins where the factorials in Wigner's sum overflow `f64`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::half::HalfInt;
use crate::linalg::CMat;
use crate::logdomain::{ln_factorial, signed_log_sum, LogDomainReal};

fn ln_fac_half(t: i64) -> f64 {
    debug_assert!(t >= 0 && t % 2 == 0, "factorial of non-integer");
    ln_factorial((t / 2) as u64)
}

/// `base^exponent` as a log-domain value (`exponent >= 0`); exact zero when
/// the base vanishes with a positive exponent, exact one when the exponent
/// is zero.
fn pow_log(base: f64, exponent: i64) -> LogDomainReal {
    debug_assert!(exponent >= 0);
    if exponent == 0 {
        return LogDomainReal::ONE;
    }
    if base == 0.0 {
        return LogDomainReal::ZERO;
    }
    let sign = if base < 0.0 && exponent % 2 == 1 { -1 } else { 1 };
    LogDomainReal::from_sign_log(sign, exponent as f64 * base.abs().ln())
}

/// Wigner small-d element `d^j_{m' m}(beta)`.
pub fn wigner_d(j: HalfInt, mp: HalfInt, m: HalfInt, beta: f64) -> Result<f64> {
    for mag in [mp, m] {
        if (j.twice() + mag.twice()) % 2 != 0 || mag.abs().twice() > j.twice() {
            return Err(Error::domain(format!(
                "magnetic number {mag} invalid for j = {j}"
            )));
        }
    }
    let (tj, tmp, tm) = (j.twice(), mp.twice(), m.twice());
    let half = 0.5 * beta;
    let (cos_h, sin_h) = (half.cos(), half.sin());

    let ln_pref = 0.5
        * (ln_fac_half(tj + tmp)
            + ln_fac_half(tj - tmp)
            + ln_fac_half(tj + tm)
            + ln_fac_half(tj - tm));

    // k runs over all values keeping the four factorials non-negative:
    //
    //   d = sum_k (-1)^(m'-m+k)
    //         cos(b/2)^(2j+m-m'-2k) sin(b/2)^(m'-m+2k)
    //         / ((j+m-k)! k! (j-m'-k)! (m'-m+k)!)
    let k_min = ((tm - tmp) / 2).max(0);
    let k_max = ((tj + tm) / 2).min((tj - tmp) / 2);
    let mut terms = Vec::with_capacity((k_max - k_min + 1).max(0) as usize);
    for k in k_min..=k_max {
        let ln_den = ln_fac_half(tj + tm - 2 * k)
            + ln_fac_half(2 * k)
            + ln_fac_half(tj - tmp - 2 * k)
            + ln_fac_half(tmp - tm + 2 * k);
        let cos_exp = tj + (tm - tmp) / 2 - 2 * k;
        let sin_exp = (tmp - tm) / 2 + 2 * k;
        let power = pow_log(cos_h, cos_exp).mul(pow_log(sin_h, sin_exp));
        if power.is_zero() {
            continue;
        }
        let sign = if ((tmp - tm) / 2 + k).rem_euclid(2) == 0 {
            1
        } else {
            -1
        };
        terms.push(LogDomainReal::from_sign_log(sign, ln_pref - ln_den).mul(power));
    }
    Ok(signed_log_sum(&terms).to_f64())
}

/// Matrix element `<j m' | U(theta, phi) | j m>` of the rotation that carries
/// the north pole to `(theta, phi)`:
///
/// ```text
/// U = exp(-i phi S^z) exp(-i theta S^y) exp(+i phi S^z)
/// ```
pub fn rotation_element(
    j: HalfInt,
    mp: HalfInt,
    m: HalfInt,
    theta: f64,
    phi: f64,
) -> Result<Complex64> {
    let d = wigner_d(j, mp, m, theta)?;
    let delta = (mp.twice() - m.twice()) as f64 / 2.0;
    Ok(Complex64::from_polar(1.0, -phi * delta) * d)
}

/// Full `(2j+1) x (2j+1)` rotation matrix in the descending-`m` basis.
pub fn rotation_matrix(j: HalfInt, theta: f64, phi: f64) -> Result<CMat> {
    rotation_rows(j, j.dimension(), theta, phi)
}

/// First `rows` rows of the rotation matrix (the high-`m'` block).
///
/// Wigner's sum for row `i` has at most `i + 1` terms, so asking for a thin
/// top block is far cheaper than the full matrix at large spin.
pub fn rotation_rows(j: HalfInt, rows: usize, theta: f64, phi: f64) -> Result<CMat> {
    let d = j.dimension();
    if rows > d {
        return Err(Error::Dimension {
            expected: d,
            actual: rows,
        });
    }
    let mut out = CMat::zeros((rows, d));
    for i in 0..rows {
        let mp = j.magnetic_at(i);
        for c in 0..d {
            let m = j.magnetic_at(c);
            out[[i, c]] = rotation_element(j, mp, m, theta, phi)?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{dagger, identity, max_abs_diff};

    fn h(t: i64) -> HalfInt {
        HalfInt::from_twice(t)
    }

    #[test]
    fn spin_half_closed_form() {
        let j = h(1);
        for &beta in &[0.0, 0.4, 1.8, std::f64::consts::PI, 4.0] {
            let (c, s) = ((beta / 2.0).cos(), (beta / 2.0).sin());
            let table = [
                ((1, 1), c),
                ((1, -1), -s),
                ((-1, 1), s),
                ((-1, -1), c),
            ];
            for ((tmp, tm), expect) in table {
                let got = wigner_d(j, h(tmp), h(tm), beta).unwrap();
                assert!(
                    (got - expect).abs() < 1e-14,
                    "beta={beta}, m'={tmp}/2, m={tm}/2: {got} vs {expect}"
                );
            }
        }
    }

    #[test]
    fn spin_one_closed_form() {
        let j = h(2);
        let beta = 0.9f64;
        let (c, s) = (beta.cos(), beta.sin());
        let r = 1.0 / 2f64.sqrt();
        let table = [
            ((2, 2), 0.5 * (1.0 + c)),
            ((2, 0), -r * s),
            ((2, -2), 0.5 * (1.0 - c)),
            ((0, 2), r * s),
            ((0, 0), c),
            ((0, -2), -r * s),
            ((-2, 2), 0.5 * (1.0 - c)),
            ((-2, 0), r * s),
            ((-2, -2), 0.5 * (1.0 + c)),
        ];
        for ((tmp, tm), expect) in table {
            let got = wigner_d(j, h(tmp), h(tm), beta).unwrap();
            assert!(
                (got - expect).abs() < 1e-14,
                "m'={}, m={}: {got} vs {expect}",
                tmp / 2,
                tm / 2
            );
        }
    }

    #[test]
    fn rotation_is_unitary() {
        for &tj in &[1, 2, 5] {
            let u = rotation_matrix(h(tj), 1.2, 2.5).unwrap();
            let ud = dagger(&u);
            let dim = (tj + 1) as usize;
            assert!(max_abs_diff(&ud.dot(&u), &identity(dim)) < 1e-12);
        }
    }

    #[test]
    fn identity_at_pole() {
        let u = rotation_matrix(h(4), 0.0, 1.3).unwrap();
        assert!(max_abs_diff(&u, &identity(5)) < 1e-14);
    }

    #[test]
    fn rows_match_full_matrix() {
        let j = h(7);
        let full = rotation_matrix(j, 0.8, 4.0).unwrap();
        let top = rotation_rows(j, 3, 0.8, 4.0).unwrap();
        for i in 0..3 {
            for c in 0..j.dimension() {
                assert!((full[[i, c]] - top[[i, c]]).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn d_composition_in_beta() {
        // d(b1) d(b2) = d(b1 + b2) for fixed axis rotations.
        let j = h(3);
        let (b1, b2) = (0.6, 1.1);
        let dim = j.dimension();
        let m1 = rotation_matrix(j, b1, 0.0).unwrap();
        let m2 = rotation_matrix(j, b2, 0.0).unwrap();
        let m12 = rotation_matrix(j, b1 + b2, 0.0).unwrap();
        assert!(max_abs_diff(&m1.dot(&m2), &m12) < 1e-12);
        let _ = dim;
    }

    #[test]
    fn rejects_invalid_magnetics() {
        assert!(wigner_d(h(2), h(1), h(0), 0.3).is_err());
        assert!(wigner_d(h(2), h(4), h(0), 0.3).is_err());
    }
}
