//! The particle Wigner kernel on truncated Fock space.
//!
//! The kernel is the displaced parity, `Delta(alpha) = 2 T(alpha) Pi
//! T(alpha)^dag` with `T(alpha) = exp(alpha a^dag - alpha^* a)` and
//! `Pi = sum_n (-1)^n |n><n|`.  Units: `hbar = 1`, `alpha = (q + i p) /
//! sqrt(2)`, and the phase-space measure is `d^2alpha = dq dp / (2 pi)`.
//!
//! Everything lives on a finite truncation `n <= n_max`.  Truncation is
//! benign only well below the cutoff; the sizing rule used throughout is
//! `n_max >= 8 (1 + |alpha|^2)`, with results trusted on the sub-block
//! `n < n_max / 2`.

use crate::error::{Error, Result};
use crate::kahan::Kahan;
use crate::laguerre::{laguerre, laguerre_standard};
use crate::linalg::{C64, CMat};
use crate::logdomain::ln_factorial;

/// Truncated Fock space `span{|0>, ..., |n_max>}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FockSpace {
    n_max: usize,
}

impl FockSpace {
    pub fn new(n_max: usize) -> Self {
        FockSpace { n_max }
    }

    /// Truncation sized for evaluations at `alpha`: `n_max = ceil(8 (1 +
    /// |alpha|^2))`.
    pub fn for_alpha(alpha: C64) -> Self {
        let n_max = (8.0 * (1.0 + alpha.norm_sqr())).ceil() as usize;
        FockSpace { n_max }
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn dim(&self) -> usize {
        self.n_max + 1
    }

    /// Dimension of the sub-block on which truncated results are trusted.
    pub fn converged_dim(&self) -> usize {
        self.n_max / 2
    }

    /// Whether the truncation comfortably holds a displacement by `alpha`
    /// (mean excitation pushed well inside the cutoff).
    pub fn truncation_adequate(&self, alpha: C64) -> bool {
        4.0 * alpha.norm_sqr() <= self.n_max as f64 / 2.0
    }
}

/// Phase-space point, stored as the complex amplitude `alpha`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhasePoint {
    pub alpha: C64,
}

impl PhasePoint {
    pub fn new(alpha: C64) -> Self {
        PhasePoint { alpha }
    }

    pub fn from_qp(q: f64, p: f64) -> Self {
        PhasePoint {
            alpha: C64::new(q, p) / 2.0f64.sqrt(),
        }
    }

    pub fn q(&self) -> f64 {
        2.0f64.sqrt() * self.alpha.re
    }

    pub fn p(&self) -> f64 {
        2.0f64.sqrt() * self.alpha.im
    }
}

/// Ladder operators and the number operator on the truncation.
///
/// `[a, a^dag] = 1` holds exactly except in the last diagonal entry, which
/// the truncation inevitably corrupts.
pub fn fock_operators(space: FockSpace) -> (CMat, CMat, CMat) {
    let d = space.dim();
    let mut a = CMat::zeros((d, d));
    let mut n_op = CMat::zeros((d, d));
    for n in 1..d {
        a[[n - 1, n]] = C64::new((n as f64).sqrt(), 0.0);
    }
    for n in 0..d {
        n_op[[n, n]] = C64::new(n as f64, 0.0);
    }
    let adag = a.t().mapv(|z| z.conj());
    (a, adag.to_owned(), n_op)
}

/// Fock parity `Pi = diag((-1)^n)`.
pub fn parity(space: FockSpace) -> CMat {
    let d = space.dim();
    let mut pi = CMat::zeros((d, d));
    for n in 0..d {
        pi[[n, n]] = C64::new(if n % 2 == 0 { 1.0 } else { -1.0 }, 0.0);
    }
    pi
}

/// Matrix element `<m| T(alpha) |n>` of the displacement operator in closed
/// form,
///
/// ```text
/// <m|T|n> = sqrt(n!/m!) alpha^(m-n) e^(-|alpha|^2/2) L_n^(m-n)(|alpha|^2)   (m >= n)
/// ```
///
/// and the adjoint relation for `m < n`.  Factorial ratios go through log
/// space so large truncations stay finite.
fn displacement_element(m: usize, n: usize, alpha: C64) -> C64 {
    let x = alpha.norm_sqr();
    let gauss = (-0.5 * x).exp();
    if m >= n {
        let k = (m - n) as u32;
        let ratio = (0.5 * (ln_factorial(n as u64) - ln_factorial(m as u64))).exp();
        let lag = laguerre(n as u32, k, x);
        ratio * alpha.powu(k) * gauss * lag
    } else {
        let k = (n - m) as u32;
        let ratio = (0.5 * (ln_factorial(m as u64) - ln_factorial(n as u64))).exp();
        let lag = laguerre(m as u32, k, x);
        ratio * (-alpha.conj()).powu(k) * gauss * lag
    }
}

/// Displacement operator `T(alpha)` on the truncation, entry by entry from
/// the closed form above (the matrix exponential stays out of the library
/// and serves as an independent oracle in the tests).
pub fn displacement(space: FockSpace, point: PhasePoint) -> CMat {
    let d = space.dim();
    let mut t = CMat::zeros((d, d));
    for m in 0..d {
        for n in 0..d {
            t[[m, n]] = displacement_element(m, n, point.alpha);
        }
    }
    t
}

/// The kernel `Delta(alpha) = 2 T(alpha) Pi T(alpha)^dag`, assembled as
/// that very product on the truncation.
///
/// Because the factors are truncated, the product converges to the true
/// kernel only on the sub-block far from the cutoff; [`kernel_element`]
/// gives exact entries directly when no product structure is needed.
pub fn particle_kernel(space: FockSpace, point: PhasePoint) -> CMat {
    let t = displacement(space, point);
    let pi = parity(space);
    let tdag = t.t().mapv(|z| z.conj());
    let product = t.dot(&pi).dot(&tdag);
    product.mapv(|z| 2.0 * z)
}

/// Exact kernel entry `<m| Delta(alpha) |n>`.
///
/// The parity identity `Pi T(-alpha) = T(alpha) Pi` collapses the displaced
/// parity to a single displacement, `Delta(alpha) = 2 T(2 alpha) Pi`, so
/// every entry inherits the closed form of the displacement element with no
/// truncated product involved.  Valid for any `alpha`.
pub fn kernel_element(m: usize, n: usize, alpha: C64) -> C64 {
    let sign = if n % 2 == 0 { 2.0 } else { -2.0 };
    sign * displacement_element(m, n, 2.0 * alpha)
}

/// Diagonal kernel element in closed form:
/// `<n| Delta(alpha) |n> = 2 (-1)^n e^(-2|alpha|^2) L_n(4 |alpha|^2)`.
pub fn kernel_diagonal(n: usize, alpha: C64) -> f64 {
    let x = alpha.norm_sqr();
    let sign = if n % 2 == 0 { 2.0 } else { -2.0 };
    sign * (-2.0 * x).exp() * laguerre_standard(n as u32, 4.0 * x)
}

/// Wigner function of `rho` sampled at the given phase-space points,
/// `W(alpha) = Tr[Delta(alpha) rho]`.
///
/// Entries of `Delta` come from [`kernel_element`], so for an operator
/// genuinely supported on the truncation the value is exact at every point
/// — there is no large-`|alpha|` breakdown.  The trace is real for
/// Hermitian `rho`; the real part is returned.
pub fn wigner_function(
    rho: &CMat,
    space: FockSpace,
    points: &[PhasePoint],
) -> Result<Vec<f64>> {
    let d = space.dim();
    if rho.dim() != (d, d) {
        return Err(Error::Dimension {
            expected: d,
            actual: rho.nrows(),
        });
    }
    Ok(points
        .iter()
        .map(|&p| {
            let mut acc = Kahan::new();
            for m in 0..d {
                for n in 0..d {
                    acc.add((kernel_element(m, n, p.alpha) * rho[[n, m]]).re);
                }
            }
            acc.total()
        })
        .collect())
}

/// Harmonic-oscillator eigenfunction `phi_n(x)` (Hermite function), by the
/// stable three-term recurrence.
pub fn hermite_function(n: usize, x: f64) -> f64 {
    let mut prev = 0.0f64;
    let mut cur = std::f64::consts::PI.powf(-0.25) * (-0.5 * x * x).exp();
    for k in 0..n {
        let kf = k as f64;
        let next = (2.0 / (kf + 1.0)).sqrt() * x * cur - (kf / (kf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Position wavefunction of a Fock-basis state vector.
pub fn position_wavefunction(coeffs: &[C64], x: f64) -> C64 {
    let mut re = Kahan::new();
    let mut im = Kahan::new();
    for (n, &c) in coeffs.iter().enumerate() {
        let phi = hermite_function(n, x);
        re.add(c.re * phi);
        im.add(c.im * phi);
    }
    C64::new(re.total(), im.total())
}

/// Independent route to the same function: the position-representation
/// integral
///
/// ```text
/// W_psi(q, p) = (1/pi) Int dx  psi^*(q + x) psi(q - x) e^(2 i p x)
/// ```
///
/// for a pure state `|psi> = sum_n c_n |n>`.  In our units (`h = 2 pi`)
/// this density-normalized value relates to the kernel-convention one by
/// `W_kernel = 2 pi W_psi`.  Evaluated by Gauss-Legendre quadrature on a
/// window wide enough for the Gaussian tails of the oscillator functions.
pub fn wigner_integral_check(coeffs: &[C64], q: f64, p: f64) -> f64 {
    let n_top = coeffs.len().saturating_sub(1) as f64;
    // Oscillator functions die off beyond x ~ sqrt(2n+1); pad generously.
    let half_width = (2.0 * n_top + 1.0).sqrt() + q.abs() + 8.0;
    let (nodes, weights) = crate::sphere::gauss_legendre(201);
    let mut re = Kahan::new();
    for (&u, &w) in nodes.iter().zip(&weights) {
        let x = half_width * u;
        let a = position_wavefunction(coeffs, q + x).conj();
        let b = position_wavefunction(coeffs, q - x);
        let phase = C64::from_polar(1.0, 2.0 * p * x);
        re.add(w * (a * b * phase).re);
    }
    half_width * re.total() / std::f64::consts::PI
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{commutator, dagger, identity, max_abs_diff};

    #[test]
    fn ladder_commutator_away_from_cutoff() {
        let space = FockSpace::new(12);
        let (a, adag, n_op) = fock_operators(space);
        let comm = commutator(&a, &adag);
        let id = identity(space.dim());
        for i in 0..space.dim() {
            for j in 0..space.dim() {
                if i == space.n_max() && j == space.n_max() {
                    continue; // the truncation artifact lives here
                }
                assert!((comm[[i, j]] - id[[i, j]]).norm() < 1e-14);
            }
        }
        // Number operator consistent with the ladder pair.
        let n_built = adag.dot(&a);
        assert!(max_abs_diff(&n_built, &n_op) < 1e-13);
    }

    #[test]
    fn parity_reflects_ladder() {
        let space = FockSpace::new(10);
        let (a, _, _) = fock_operators(space);
        let pi = parity(space);
        let reflected = pi.dot(&a).dot(&dagger(&pi));
        let minus_a = a.mapv(|z| -z);
        assert!(max_abs_diff(&reflected, &minus_a) < 1e-14);
    }

    #[test]
    fn displacement_at_zero_is_identity() {
        let space = FockSpace::new(8);
        let t = displacement(space, PhasePoint::new(C64::new(0.0, 0.0)));
        assert!(max_abs_diff(&t, &identity(space.dim())) < 1e-15);
    }

    #[test]
    fn displacement_unitary_on_converged_block() {
        // Entries are exact for the untruncated operator, so products over
        // the truncation converge only where the discarded tail is tiny;
        // a 40-level space puts the tail below 1e-10 on the half block.
        let alpha = C64::new(0.6, -0.3);
        let space = FockSpace::new(40);
        assert!(space.truncation_adequate(alpha));
        let t = displacement(space, PhasePoint::new(alpha));
        let should_be_id = dagger(&t).dot(&t);
        let block = space.converged_dim();
        for i in 0..block {
            for j in 0..block {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!(
                    (should_be_id[[i, j]] - want).norm() < 1e-10,
                    "({i},{j}): {}",
                    should_be_id[[i, j]]
                );
            }
        }
    }

    #[test]
    fn displacement_ground_state_column_is_coherent() {
        // T(alpha)|0> must be the coherent state e^(-|a|^2/2) a^n/sqrt(n!).
        let alpha = C64::new(0.4, 0.7);
        let space = FockSpace::new(24);
        let t = displacement(space, PhasePoint::new(alpha));
        let gauss = (-0.5 * alpha.norm_sqr()).exp();
        let mut amp = C64::new(gauss, 0.0);
        for n in 0..space.dim() {
            if n > 0 {
                amp *= alpha / (n as f64).sqrt();
            }
            assert!((t[[n, 0]] - amp).norm() < 1e-13, "n = {n}");
        }
    }

    #[test]
    fn kernel_at_origin_is_twice_parity() {
        let space = FockSpace::new(16);
        let kernel = particle_kernel(space, PhasePoint::new(C64::new(0.0, 0.0)));
        let twice_parity = parity(space).mapv(|z| 2.0 * z);
        assert_eq!(kernel, twice_parity); // exact, no tolerance
    }

    #[test]
    fn kernel_diagonal_closed_form_matches_matrix() {
        let alpha = C64::new(0.5, -0.8);
        let space = FockSpace::new(60);
        let kernel = particle_kernel(space, PhasePoint::new(alpha));
        for n in 0..space.converged_dim() {
            let closed = kernel_diagonal(n, alpha);
            assert!(
                (kernel[[n, n]].re - closed).abs() < 1e-8,
                "n = {n}: {} vs {closed}",
                kernel[[n, n]].re
            );
            assert!(kernel[[n, n]].im.abs() < 1e-10);
        }
    }

    #[test]
    fn kernel_element_agrees_with_product_route() {
        let alpha = C64::new(0.35, -0.6);
        let space = FockSpace::new(48);
        let product = particle_kernel(space, PhasePoint::new(alpha));
        let block = space.converged_dim();
        for m in 0..block {
            for n in 0..block {
                let exact = kernel_element(m, n, alpha);
                assert!(
                    (product[[m, n]] - exact).norm() < 1e-9,
                    "({m},{n}): {} vs {exact}",
                    product[[m, n]]
                );
            }
        }
        // The exact entries keep working far outside any truncation budget.
        let big = C64::new(4.0, 3.0);
        for n in 0..6 {
            let diag = kernel_element(n, n, big);
            assert!((diag.re - kernel_diagonal(n, big)).abs() < 1e-13);
            assert!(diag.im.abs() < 1e-16);
        }
    }

    #[test]
    fn kernel_is_hermitian_and_trace_is_conjugation_invariant() {
        let alpha = C64::new(-0.3, 0.45);
        let space = FockSpace::for_alpha(alpha);
        let kernel = particle_kernel(space, PhasePoint::new(alpha));
        assert!(max_abs_diff(&kernel, &dagger(&kernel)) < 1e-12);
        // Cyclic invariance on the finite truncation:
        // Tr[2 T Pi T^dag] = 2 Tr[Pi T^dag T] exactly as matrices.
        let t = displacement(space, PhasePoint::new(alpha));
        let mut expect = Kahan::new();
        let gram = dagger(&t).dot(&t);
        for n in 0..space.dim() {
            let sign = if n % 2 == 0 { 2.0 } else { -2.0 };
            expect.add(sign * gram[[n, n]].re);
        }
        let mut tr = Kahan::new();
        for n in 0..space.dim() {
            tr.add(kernel[[n, n]].re);
        }
        assert!((tr.total() - expect.total()).abs() < 1e-10);
    }

    #[test]
    fn covariance_under_composed_displacements() {
        // T(beta) Delta(alpha) T(beta)^dag = Delta(alpha + beta) on the
        // converged block.
        let alpha = C64::new(0.3, 0.2);
        let beta = C64::new(-0.25, 0.4);
        let space = FockSpace::new(40);
        let t_beta = displacement(space, PhasePoint::new(beta));
        let moved = t_beta
            .dot(&particle_kernel(space, PhasePoint::new(alpha)))
            .dot(&dagger(&t_beta));
        let direct = particle_kernel(space, PhasePoint::new(alpha + beta));
        let block = space.converged_dim();
        let mut worst = 0.0f64;
        for i in 0..block {
            for j in 0..block {
                worst = worst.max((moved[[i, j]] - direct[[i, j]]).norm());
            }
        }
        assert!(worst < 1e-6, "covariance deviation {worst}");
    }

    #[test]
    fn wigner_of_vacuum_is_gaussian() {
        let space = FockSpace::new(16);
        let mut rho = CMat::zeros((space.dim(), space.dim()));
        rho[[0, 0]] = C64::new(1.0, 0.0);
        let pts: Vec<PhasePoint> = [0.0, 0.3, 0.9]
            .iter()
            .map(|&r| PhasePoint::new(C64::new(r, 0.1)))
            .collect();
        let w = wigner_function(&rho, space, &pts).unwrap();
        for (k, &p) in pts.iter().enumerate() {
            let expect = 2.0 * (-2.0 * p.alpha.norm_sqr()).exp();
            assert!((w[k] - expect).abs() < 1e-9, "{} vs {expect}", w[k]);
        }
    }

    #[test]
    fn hermite_functions_are_orthonormal() {
        // Quadrature check of <phi_m|phi_n> over a wide window.
        let (nodes, weights) = crate::sphere::gauss_legendre(120);
        let half = 9.0;
        for m in 0..5usize {
            for n in 0..5usize {
                let mut acc = Kahan::new();
                for (&u, &w) in nodes.iter().zip(&weights) {
                    let x = half * u;
                    acc.add(w * hermite_function(m, x) * hermite_function(n, x));
                }
                let got = half * acc.total();
                let want = if m == n { 1.0 } else { 0.0 };
                assert!((got - want).abs() < 1e-12, "({m},{n}): {got}");
            }
        }
    }

    #[test]
    fn integral_route_matches_kernel_route_for_vacuum() {
        let coeffs = [C64::new(1.0, 0.0)];
        for (q, p) in [(0.0, 0.0), (0.7, -0.4), (1.2, 0.9)] {
            let by_integral = wigner_integral_check(&coeffs, q, p);
            // Kernel route, mapped to the density convention.
            let point = PhasePoint::from_qp(q, p);
            let kernel_value = 2.0 * (-2.0 * point.alpha.norm_sqr()).exp();
            assert!(
                (by_integral - kernel_value / (2.0 * std::f64::consts::PI)).abs() < 1e-10,
                "({q},{p})"
            );
        }
    }

    #[test]
    fn phase_point_coordinate_roundtrip() {
        let pt = PhasePoint::from_qp(1.3, -0.6);
        assert!((pt.q() - 1.3).abs() < 1e-15);
        assert!((pt.p() + 0.6).abs() < 1e-15);
        assert!((pt.alpha - C64::new(1.3, -0.6) / 2.0f64.sqrt()).norm() < 1e-15);
    }
}
