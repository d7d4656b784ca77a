//! Points and quadrature grids on the unit sphere.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::half::HalfInt;
use crate::kahan::Kahan;

const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

/// Direction on the unit sphere, kept in the canonical ranges
/// `theta in [0, pi]`, `phi in [0, 2 pi)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpherePoint {
    theta: f64,
    phi: f64,
}

impl SpherePoint {
    /// Build from arbitrary angles, folding them into the canonical ranges
    /// (so `(-theta, phi)` and `(theta, phi + pi)` describe the same point).
    pub fn new(theta: f64, phi: f64) -> Self {
        let mut t = theta.rem_euclid(TWO_PI);
        let mut p = phi;
        if t > std::f64::consts::PI {
            t = TWO_PI - t;
            p += std::f64::consts::PI;
        }
        SpherePoint {
            theta: t,
            phi: p.rem_euclid(TWO_PI),
        }
    }

    pub fn from_unit_vector(x: f64, y: f64, z: f64) -> Result<Self> {
        let r = (x * x + y * y + z * z).sqrt();
        if r < 1e-12 {
            return Err(Error::domain("direction vector has near-zero length"));
        }
        let theta = (z / r).clamp(-1.0, 1.0).acos();
        let phi = y.atan2(x);
        Ok(SpherePoint::new(theta, phi))
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn cos_theta(&self) -> f64 {
        self.theta.cos()
    }

    pub fn unit_vector(&self) -> [f64; 3] {
        let (st, ct) = (self.theta.sin(), self.theta.cos());
        let (sp, cp) = (self.phi.sin(), self.phi.cos());
        [st * cp, st * sp, ct]
    }

    /// North pole `(theta, phi) = (0, 0)`.
    pub fn pole() -> Self {
        SpherePoint { theta: 0.0, phi: 0.0 }
    }
}

/// Legendre polynomial `P_n(x)` and its derivative, by upward recurrence.
fn legendre_pair(n: usize, x: f64) -> (f64, f64) {
    let mut p_prev = 1.0;
    let mut p = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0) * x * p - kf * p_prev) / (kf + 1.0);
        p_prev = p;
        p = next;
    }
    let d = (n as f64) * (x * p - p_prev) / (x * x - 1.0);
    (p, d)
}

/// Gauss-Legendre nodes (ascending in `[-1, 1]`) and weights.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "quadrature order must be positive");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        // Tricomi-style seed for the i-th root of P_n, counted from +1.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..60 {
            let (p, d) = legendre_pair(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() <= 1e-15 * x.abs().max(1.0) {
                break;
            }
        }
        // One polishing step after convergence.
        let (p, d) = legendre_pair(n, x);
        if d != 0.0 {
            x -= p / d;
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

/// Product quadrature grid on the sphere: Gauss-Legendre in `cos(theta)`
/// crossed with uniform points in `phi`.  Weights sum to `4 pi`.
#[derive(Clone, Debug)]
pub struct SphereGrid {
    points: Vec<SpherePoint>,
    weights: Vec<f64>,
    n_theta: usize,
    n_phi: usize,
}

impl SphereGrid {
    pub fn new(n_theta: usize, n_phi: usize) -> Self {
        assert!(n_theta >= 1 && n_phi >= 1);
        let (xs, ws) = gauss_legendre(n_theta);
        let mut points = Vec::with_capacity(n_theta * n_phi);
        let mut weights = Vec::with_capacity(n_theta * n_phi);
        let phi_weight = TWO_PI / n_phi as f64;
        for (x, w) in xs.iter().zip(&ws) {
            let theta = x.clamp(-1.0, 1.0).acos();
            for k in 0..n_phi {
                points.push(SpherePoint {
                    theta,
                    phi: TWO_PI * k as f64 / n_phi as f64,
                });
                weights.push(w * phi_weight);
            }
        }
        SphereGrid {
            points,
            weights,
            n_theta,
            n_phi,
        }
    }

    /// Smallest grid that integrates products of two spin-`s` symbols
    /// exactly: polynomials on the sphere of degree up to `4s`.
    pub fn for_spin(s: HalfInt) -> Result<Self> {
        if s.is_negative() {
            return Err(Error::domain("spin must be non-negative"));
        }
        let ts = s.twice() as usize; // 2s
        Ok(SphereGrid::new(ts + 2, 2 * ts + 2))
    }

    /// Largest spherical-harmonic degree this grid integrates exactly.
    pub fn bandlimit(&self) -> usize {
        (2 * self.n_theta - 1).min(self.n_phi - 1)
    }

    /// Error unless products of two degree-`2s` symbols are exact.
    pub fn check_bandlimit(&self, s: HalfInt) -> Result<()> {
        let required = 2 * s.twice() as usize; // 4s
        if self.bandlimit() < required {
            return Err(Error::Bandlimit {
                required,
                actual: self.bandlimit(),
            });
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn n_theta(&self) -> usize {
        self.n_theta
    }

    pub fn n_phi(&self) -> usize {
        self.n_phi
    }

    pub fn points(&self) -> &[SpherePoint] {
        &self.points
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn iter(&self) -> impl Iterator<Item = (SpherePoint, f64)> + '_ {
        self.points.iter().copied().zip(self.weights.iter().copied())
    }

    /// `integral f dOmega` over the sphere, compensated in both components.
    pub fn integrate<F: Fn(SpherePoint) -> Complex64>(&self, f: F) -> Complex64 {
        let mut re = Kahan::new();
        let mut im = Kahan::new();
        for (p, w) in self.iter() {
            let v = f(p);
            re.add(w * v.re);
            im.add(w * v.im);
        }
        Complex64::new(re.total(), im.total())
    }

    pub fn integrate_real<F: Fn(SpherePoint) -> f64>(&self, f: F) -> f64 {
        let mut acc = Kahan::new();
        for (p, w) in self.iter() {
            acc.add(w * f(p));
        }
        acc.total()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_canonicalization() {
        let p = SpherePoint::new(-0.3, 0.5);
        assert!((p.theta() - 0.3).abs() < 1e-15);
        assert!((p.phi() - (0.5 + std::f64::consts::PI)).abs() < 1e-15);
        let q = SpherePoint::new(std::f64::consts::PI + 0.2, 0.0);
        assert!((q.theta() - (std::f64::consts::PI - 0.2)).abs() < 1e-14);
        assert!((q.phi() - std::f64::consts::PI).abs() < 1e-14);
    }

    #[test]
    fn unit_vector_roundtrip() {
        let p = SpherePoint::new(1.1, 2.3);
        let [x, y, z] = p.unit_vector();
        let q = SpherePoint::from_unit_vector(x, y, z).unwrap();
        assert!((p.theta() - q.theta()).abs() < 1e-14);
        assert!((p.phi() - q.phi()).abs() < 1e-14);
    }

    #[test]
    fn gauss_legendre_reference_nodes() {
        // Classical tabulated values.
        let (x2, w2) = gauss_legendre(2);
        assert!((x2[1] - 1.0 / 3.0f64.sqrt()).abs() < 1e-15);
        assert!((w2[0] - 1.0).abs() < 1e-15);

        let (x5, w5) = gauss_legendre(5);
        let nodes = [
            -0.906_179_845_938_664_0,
            -0.538_469_310_105_683_1,
            0.0,
            0.538_469_310_105_683_1,
            0.906_179_845_938_664_0,
        ];
        let weights = [
            0.236_926_885_056_189_1,
            0.478_628_670_499_366_5,
            0.568_888_888_888_888_9,
            0.478_628_670_499_366_5,
            0.236_926_885_056_189_1,
        ];
        for i in 0..5 {
            assert!((x5[i] - nodes[i]).abs() < 1e-14, "node {i}");
            assert!((w5[i] - weights[i]).abs() < 1e-14, "weight {i}");
        }
    }

    #[test]
    fn quadrature_integrates_monomials_exactly() {
        let (xs, ws) = gauss_legendre(8);
        for power in 0..=15u32 {
            let got: f64 = xs
                .iter()
                .zip(&ws)
                .map(|(x, w)| w * x.powi(power as i32))
                .sum();
            let expect = if power % 2 == 0 {
                2.0 / (power as f64 + 1.0)
            } else {
                0.0
            };
            assert!((got - expect).abs() < 1e-13, "x^{power}: {got} vs {expect}");
        }
    }

    #[test]
    fn sphere_grid_total_weight() {
        let grid = SphereGrid::new(6, 11);
        let total: f64 = grid.weights().iter().sum();
        assert!((total - 4.0 * std::f64::consts::PI).abs() < 1e-12);
    }

    #[test]
    fn for_spin_bandlimit() {
        let s = HalfInt::from_twice(5); // s = 5/2
        let grid = SphereGrid::for_spin(s).unwrap();
        assert!(grid.check_bandlimit(s).is_ok());
        let tight = SphereGrid::new(2, 2);
        assert!(tight.check_bandlimit(s).is_err());
    }
}
