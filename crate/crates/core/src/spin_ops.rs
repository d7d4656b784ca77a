//! Spin operators in the standard `|s m>` basis.
//!
//! Matrix index `i` corresponds to magnetic number `m = s - i` (descending),
//! so index `0` is the highest-weight state.  Every kernel and contraction
//! map in this crate relies on that ordering.

use crate::half::HalfInt;
use crate::linalg::{zeros, C64, CMat};
use crate::sphere::SpherePoint;

/// `S^z = diag(s, s-1, ..., -s)`.
pub fn spin_z(s: HalfInt) -> CMat {
    let d = s.dimension();
    let mut out = zeros(d);
    for (i, m) in s.magnetics().enumerate() {
        out[[i, i]] = C64::new(m.as_f64(), 0.0);
    }
    out
}

/// Raising operator: `<m+1| S^+ |m> = sqrt(s(s+1) - m(m+1))`.
pub fn spin_plus(s: HalfInt) -> CMat {
    let d = s.dimension();
    let mut out = zeros(d);
    let ts = s.twice();
    for (i, m) in s.magnetics().enumerate() {
        if i == 0 {
            continue; // top state is annihilated
        }
        let tm = m.twice();
        // s(s+1) - m(m+1) in quarter units: (2s(2s+2) - 2m(2m+2)) / 4
        let coeff_sq = (ts * (ts + 2) - tm * (tm + 2)) as f64 / 4.0;
        out[[i - 1, i]] = C64::new(coeff_sq.sqrt(), 0.0);
    }
    out
}

/// Lowering operator, the adjoint of [`spin_plus`].
pub fn spin_minus(s: HalfInt) -> CMat {
    let plus = spin_plus(s);
    plus.t().mapv(|z| z.conj())
}

pub fn spin_x(s: HalfInt) -> CMat {
    let (p, m) = (spin_plus(s), spin_minus(s));
    (p + m).mapv(|z| 0.5 * z)
}

pub fn spin_y(s: HalfInt) -> CMat {
    let (p, m) = (spin_plus(s), spin_minus(s));
    (p - m).mapv(|z| z * C64::new(0.0, -0.5))
}

/// Projection of the spin vector on a direction: `n . S`.
pub fn spin_along(s: HalfInt, point: SpherePoint) -> CMat {
    let [nx, ny, nz] = point.unit_vector();
    let mut out = spin_x(s).mapv(|z| z * nx);
    out = out + spin_y(s).mapv(|z| z * ny);
    out + spin_z(s).mapv(|z| z * nz)
}

/// `S . S`, which must equal `s(s+1)` times the identity.
pub fn casimir(s: HalfInt) -> CMat {
    let (x, y, z) = (spin_x(s), spin_y(s), spin_z(s));
    x.dot(&x) + y.dot(&y) + z.dot(&z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{commutator, identity, max_abs_diff};
    use num_complex::Complex64;

    fn h(t: i64) -> HalfInt {
        HalfInt::from_twice(t)
    }

    #[test]
    fn spin_half_matrices() {
        let s = h(1);
        let z = spin_z(s);
        assert_eq!(z[[0, 0]], Complex64::new(0.5, 0.0));
        assert_eq!(z[[1, 1]], Complex64::new(-0.5, 0.0));
        let p = spin_plus(s);
        assert_eq!(p[[0, 1]], Complex64::new(1.0, 0.0));
        assert_eq!(p[[1, 0]], Complex64::new(0.0, 0.0));
    }

    #[test]
    fn su2_algebra() {
        for ts in [1, 2, 3, 5, 8] {
            let s = h(ts);
            let (x, y, z) = (spin_x(s), spin_y(s), spin_z(s));
            // [S^x, S^y] = i S^z and cyclic
            let i = Complex64::new(0.0, 1.0);
            assert!(max_abs_diff(&commutator(&x, &y), &z.mapv(|v| i * v)) < 1e-13);
            assert!(max_abs_diff(&commutator(&y, &z), &x.mapv(|v| i * v)) < 1e-13);
            assert!(max_abs_diff(&commutator(&z, &x), &y.mapv(|v| i * v)) < 1e-13);
            // [S^z, S^+-] = +- S^+-
            let (p, m) = (spin_plus(s), spin_minus(s));
            assert!(max_abs_diff(&commutator(&z, &p), &p) < 1e-13);
            assert!(max_abs_diff(&commutator(&z, &m), &m.mapv(|v| -v)) < 1e-13);
        }
    }

    #[test]
    fn casimir_is_scalar() {
        for ts in [1, 2, 4, 7] {
            let s = h(ts);
            let expect = s.casimir_times_four() as f64 / 4.0;
            let c = casimir(s);
            let target = identity(s.dimension()).mapv(|v| v * expect);
            assert!(max_abs_diff(&c, &target) < 1e-12, "2s = {ts}");
        }
    }

    #[test]
    fn spin_along_pole_is_sz() {
        let s = h(3);
        let along = spin_along(s, SpherePoint::pole());
        assert!(max_abs_diff(&along, &spin_z(s)) < 1e-14);
    }

    #[test]
    fn spin_along_has_full_spectrum_shift() {
        // Tr (n.S)^2 is direction independent.
        let s = h(4);
        let a = spin_along(s, SpherePoint::new(1.0, 2.0));
        let b = spin_along(s, SpherePoint::new(0.3, 5.1));
        let ta: Complex64 = a.dot(&a).diag().iter().sum();
        let tb: Complex64 = b.dot(&b).diag().iter().sum();
        assert!((ta - tb).norm() < 1e-12);
    }
}
