//! Spherical harmonics with the Condon-Shortley phase.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::sphere::SpherePoint;

/// Fully normalized associated Legendre function for `m >= 0`, defined so
/// that `Y_lm(theta, phi) = normalized_assoc_legendre(l, m, cos theta) *
/// exp(i m phi)`.  The Condon-Shortley `(-1)^m` is included.
///
/// Evaluated with the normalized three-term recurrence, which is stable to
/// degrees far beyond anything a factorial-quotient formula survives.
pub fn normalized_assoc_legendre(l: u32, m: u32, x: f64) -> f64 {
    assert!(m <= l, "order m must not exceed degree l");
    let sin_theta = (1.0 - x * x).max(0.0).sqrt();
    // Seed: Pbar_m^m, built up one order at a time.
    let mut pmm = (1.0 / (4.0 * std::f64::consts::PI)).sqrt();
    for k in 1..=m {
        let kf = k as f64;
        pmm *= -((2.0 * kf + 1.0) / (2.0 * kf)).sqrt() * sin_theta;
    }
    if l == m {
        return pmm;
    }
    // Pbar_{m+1}^m
    let mut prev = pmm;
    let mut curr = ((2 * m + 3) as f64).sqrt() * x * pmm;
    for ll in (m + 2)..=l {
        let lf = ll as f64;
        let mf = m as f64;
        let a = ((4.0 * lf * lf - 1.0) / (lf * lf - mf * mf)).sqrt();
        let b = (((lf - 1.0) * (lf - 1.0) - mf * mf) / (4.0 * (lf - 1.0) * (lf - 1.0) - 1.0))
            .sqrt();
        let next = a * (x * curr - b * prev);
        prev = curr;
        curr = next;
    }
    curr
}

/// Spherical harmonic `Y_lm` at a point on the sphere.
pub fn spherical_harmonic(l: i64, m: i64, point: SpherePoint) -> Result<Complex64> {
    if l < 0 {
        return Err(Error::domain(format!("negative degree l = {l}")));
    }
    if m.abs() > l {
        return Err(Error::domain(format!("|m| = {} exceeds l = {l}", m.abs())));
    }
    let mag = m.unsigned_abs() as u32;
    let p = normalized_assoc_legendre(l as u32, mag, point.cos_theta());
    let phase = Complex64::from_polar(1.0, m as f64 * point.phi());
    if m >= 0 {
        Ok(p * phase)
    } else {
        // Y_{l,-m} = (-1)^m conj(Y_{l,m})
        let sign = if mag % 2 == 0 { 1.0 } else { -1.0 };
        Ok(sign * p * phase)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sphere::SphereGrid;

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-13
    }

    #[test]
    fn low_order_closed_forms() {
        let pi = std::f64::consts::PI;
        let p = SpherePoint::new(0.7, 1.9);
        let (st, ct) = (p.theta().sin(), p.theta().cos());
        let eip = Complex64::from_polar(1.0, p.phi());

        let y00 = spherical_harmonic(0, 0, p).unwrap();
        assert!(close(y00, Complex64::new((1.0 / (4.0 * pi)).sqrt(), 0.0)));

        let y10 = spherical_harmonic(1, 0, p).unwrap();
        assert!(close(y10, Complex64::new((3.0 / (4.0 * pi)).sqrt() * ct, 0.0)));

        let y11 = spherical_harmonic(1, 1, p).unwrap();
        assert!(close(y11, -(3.0 / (8.0 * pi)).sqrt() * st * eip));

        let y1m1 = spherical_harmonic(1, -1, p).unwrap();
        assert!(close(y1m1, (3.0 / (8.0 * pi)).sqrt() * st * eip.conj()));

        let y20 = spherical_harmonic(2, 0, p).unwrap();
        let expect = (5.0 / (16.0 * pi)).sqrt() * (3.0 * ct * ct - 1.0);
        assert!(close(y20, Complex64::new(expect, 0.0)));
    }

    #[test]
    fn orthonormal_on_matched_grid() {
        let grid = SphereGrid::new(6, 11);
        for (l1, m1) in [(0i64, 0i64), (1, 0), (2, 1), (3, -2), (4, 4)] {
            for (l2, m2) in [(0i64, 0i64), (1, 0), (2, 1), (3, -2), (4, 4)] {
                let got = grid.integrate(|p| {
                    spherical_harmonic(l1, m1, p).unwrap().conj()
                        * spherical_harmonic(l2, m2, p).unwrap()
                });
                let expect = if (l1, m1) == (l2, m2) { 1.0 } else { 0.0 };
                assert!(
                    (got - expect).norm() < 1e-12,
                    "({l1},{m1}) x ({l2},{m2}): {got}"
                );
            }
        }
    }

    #[test]
    fn addition_theorem_sum_rule() {
        // sum_m |Y_lm|^2 = (2l+1) / (4 pi) at any point.
        let p = SpherePoint::new(2.0, 0.4);
        for l in [0i64, 1, 5, 40, 300] {
            let total: f64 = (-l..=l)
                .map(|m| spherical_harmonic(l, m, p).unwrap().norm_sqr())
                .sum();
            let expect = (2 * l + 1) as f64 / (4.0 * std::f64::consts::PI);
            assert!(
                ((total - expect) / expect).abs() < 1e-11,
                "l = {l}: {total} vs {expect}"
            );
        }
    }

    #[test]
    fn rejects_bad_orders() {
        let p = SpherePoint::pole();
        assert!(spherical_harmonic(-1, 0, p).is_err());
        assert!(spherical_harmonic(2, 3, p).is_err());
    }
}
