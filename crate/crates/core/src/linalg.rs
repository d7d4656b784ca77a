//! Dense complex matrices and the handful of operations the kernels need.

use ndarray::Array2;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

pub type C64 = Complex64;
pub type CMat = Array2<Complex64>;

pub fn identity(n: usize) -> CMat {
    Array2::from_diag_elem(n, C64::new(1.0, 0.0))
}

pub fn zeros(n: usize) -> CMat {
    Array2::zeros((n, n))
}

/// Conjugate transpose.
pub fn dagger(a: &CMat) -> CMat {
    a.t().mapv(|z| z.conj())
}

pub fn commutator(a: &CMat, b: &CMat) -> CMat {
    a.dot(b) - b.dot(a)
}

pub fn anticommutator(a: &CMat, b: &CMat) -> CMat {
    a.dot(b) + b.dot(a)
}

pub fn trace(a: &CMat) -> C64 {
    a.diag().iter().sum()
}

/// Hilbert-Schmidt inner product `Tr(a^dag b)`.
pub fn hs_inner(a: &CMat, b: &CMat) -> C64 {
    debug_assert_eq!(a.dim(), b.dim());
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

pub fn frobenius_norm(a: &CMat) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn max_abs_diff(a: &CMat, b: &CMat) -> f64 {
    assert_eq!(a.dim(), b.dim(), "shape mismatch");
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn is_hermitian(a: &CMat, tol: f64) -> bool {
    max_abs_diff(a, &dagger(a)) <= tol
}

/// Matrix exponential by scaling-and-squaring over a plain Taylor series.
///
/// Dimensions here are small (a few thousand at most) and accuracy matters
/// more than speed, so the simple approach with a conservative term cutoff
/// is preferable to a Pade economization.
pub fn expm(a: &CMat) -> CMat {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "expm needs a square matrix");
    // 1-norm: max column sum of absolute values.
    let norm = (0..n)
        .map(|j| a.column(j).iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max);
    let mut squarings = 0u32;
    let mut scale = norm;
    while scale > 0.5 {
        scale *= 0.5;
        squarings += 1;
    }
    let b = a.mapv(|z| z / 2f64.powi(squarings as i32));
    let mut result = identity(n);
    let mut term = identity(n);
    for k in 1..=60 {
        term = term.dot(&b).mapv(|z| z / k as f64);
        result = result + &term;
        if frobenius_norm(&term) < 1e-18 * frobenius_norm(&result).max(1.0) {
            break;
        }
    }
    for _ in 0..squarings {
        result = result.dot(&result);
    }
    result
}

/// Random Hermitian matrix with independent Gaussian entries (GUE-like
/// normalization is irrelevant here; only hermiticity and genericity matter).
pub fn random_hermitian<R: Rng>(n: usize, rng: &mut R) -> CMat {
    let mut g = zeros(n);
    for i in 0..n {
        for j in 0..n {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            g[[i, j]] = C64::new(re, im);
        }
    }
    let gd = dagger(&g);
    (g + gd).mapv(|z| 0.5 * z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn trace_and_inner_product() {
        let mut a = zeros(2);
        a[[0, 0]] = C64::new(1.0, 2.0);
        a[[1, 1]] = C64::new(3.0, -1.0);
        assert_eq!(trace(&a), C64::new(4.0, 1.0));
        let inner = hs_inner(&a, &a);
        assert!((inner.re - (5.0 + 10.0)).abs() < 1e-14);
        assert!(inner.im.abs() < 1e-14);
    }

    #[test]
    fn expm_of_diagonal() {
        let mut a = zeros(2);
        a[[0, 0]] = C64::new(1.0, 0.0);
        a[[1, 1]] = C64::new(0.0, std::f64::consts::PI);
        let e = expm(&a);
        assert!((e[[0, 0]].re - 1.0f64.exp()).abs() < 1e-13);
        assert!((e[[1, 1]].re + 1.0).abs() < 1e-13);
        assert!(e[[1, 1]].im.abs() < 1e-13);
        assert!(e[[0, 1]].norm() < 1e-15);
    }

    #[test]
    fn expm_of_pauli_rotation() {
        // exp(-i (theta/2) sigma_y) = [[cos, -sin], [sin, cos]] (half angle)
        let theta = 0.77;
        let mut a = zeros(2);
        a[[0, 1]] = C64::new(0.0, -1.0) * C64::new(0.0, -(theta / 2.0));
        a[[1, 0]] = C64::new(0.0, 1.0) * C64::new(0.0, -(theta / 2.0));
        let e = expm(&a);
        let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
        assert!((e[[0, 0]].re - c).abs() < 1e-13);
        assert!((e[[0, 1]].re + s).abs() < 1e-13);
        assert!((e[[1, 0]].re - s).abs() < 1e-13);
        assert!((e[[1, 1]].re - c).abs() < 1e-13);
    }

    #[test]
    fn expm_inverse_is_negative_argument() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let h = random_hermitian(5, &mut rng);
        let a = h.mapv(|z| C64::new(0.0, 1.0) * z); // anti-Hermitian
        let u = expm(&a);
        let uinv = expm(&a.mapv(|z| -z));
        let prod = u.dot(&uinv);
        assert!(max_abs_diff(&prod, &identity(5)) < 1e-12);
        // unitarity as well
        let udag = dagger(&u);
        assert!(max_abs_diff(&udag.dot(&u), &identity(5)) < 1e-12);
    }

    #[test]
    fn random_hermitian_is_hermitian_and_seeded() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let a = random_hermitian(6, &mut rng);
        assert!(is_hermitian(&a, 1e-14));
        let mut rng2 = ChaCha8Rng::seed_from_u64(42);
        let b = random_hermitian(6, &mut rng2);
        assert!(max_abs_diff(&a, &b) == 0.0);
    }
}
