//! Generalized Laguerre polynomials `L_n^{(a)}` for integer `a >= 0`.
//!
//! Both the explicit alternating sum and the three-term recurrence are kept
//! public: they are independent derivations, which makes cross-checking them
//! against each other a meaningful test rather than a tautology.

/// Explicit sum
/// `L_n^{(a)}(x) = sum_k (-1)^k binom(n+a, n-k) x^k / k!`,
/// evaluated through the exact ratio of consecutive terms.
///
/// Accurate for small `n`; the alternating terms start cancelling
/// destructively once `n` and `x` grow together.
pub fn laguerre_sum(n: u32, a: u32, x: f64) -> f64 {
    // First term: binom(n + a, n) = prod_k (a + k) / k.
    let mut term = 1.0f64;
    for k in 1..=n {
        term *= (a + k) as f64 / k as f64;
    }
    let mut acc = term;
    for k in 1..=n {
        // t_k / t_{k-1} = -x (n + 1 - k) / (k (a + k))
        term *= -x * (n + 1 - k) as f64 / (k * (a + k)) as f64;
        acc += term;
    }
    acc
}

/// Three-term recurrence
/// `(k+1) L_{k+1}^{(a)} = (2k + 1 + a - x) L_k^{(a)} - (k + a) L_{k-1}^{(a)}`.
pub fn laguerre_rec(n: u32, a: u32, x: f64) -> f64 {
    let af = a as f64;
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut curr = 1.0 + af - x;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + af - x) * curr - (kf + af) * prev) / (kf + 1.0);
        prev = curr;
        curr = next;
    }
    curr
}

/// Generalized Laguerre polynomial.
///
/// Always the recurrence: it is forward-stable across the oscillatory and
/// the dominant-growth regions alike, while the alternating sum starts
/// losing digits already around `n = 15` for `x` near the turning point.
/// The sum stays available as an independent cross-check.
pub fn laguerre(n: u32, a: u32, x: f64) -> f64 {
    laguerre_rec(n, a, x)
}

/// Standard Laguerre polynomial `L_n = L_n^{(0)}`.
pub fn laguerre_standard(n: u32, x: f64) -> f64 {
    laguerre(n, 0, x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_degree_closed_forms() {
        for &x in &[0.0, 0.3, 1.7, 5.0, -2.0] {
            assert!((laguerre_standard(0, x) - 1.0).abs() < 1e-14);
            assert!((laguerre_standard(1, x) - (1.0 - x)).abs() < 1e-14);
            let l2 = 0.5 * (x * x - 4.0 * x + 2.0);
            assert!((laguerre_standard(2, x) - l2).abs() < 1e-13);
            let l3 = (-x * x * x + 9.0 * x * x - 18.0 * x + 6.0) / 6.0;
            assert!((laguerre_standard(3, x) - l3).abs() < 1e-13);
            // L_1^{(2)} = 3 - x
            assert!((laguerre(1, 2, x) - (3.0 - x)).abs() < 1e-13);
            // L_2^{(1)} = x^2/2 - 3x + 3
            assert!((laguerre(2, 1, x) - (0.5 * x * x - 3.0 * x + 3.0)).abs() < 1e-13);
        }
    }

    #[test]
    fn sum_and_recurrence_agree() {
        for n in 0..=20 {
            for a in 0..=4 {
                for &x in &[0.0, 0.01, 0.9, 3.3, 11.0] {
                    let s = laguerre_sum(n, a, x);
                    let r = laguerre_rec(n, a, x);
                    // The alternating sum is exact up to its own condition
                    // number, kappa = sum_k |t_k| / |sum_k t_k|; the positive
                    // series sum_k |t_k| is just the sum evaluated at -x.
                    let terms_mag = laguerre_sum(n, a, -x);
                    let allowed = (5e-15 * (n.max(1) as f64) * terms_mag).max(1e-13);
                    assert!(
                        (s - r).abs() < allowed,
                        "n={n} a={a} x={x}: sum {s} vs rec {r} (allowed {allowed:.2e})"
                    );
                }
            }
        }
    }

    #[test]
    fn special_values_at_zero() {
        // L_n^{(a)}(0) = binom(n + a, n)
        assert!((laguerre(4, 0, 0.0) - 1.0).abs() < 1e-13);
        assert!((laguerre(3, 2, 0.0) - 10.0).abs() < 1e-12);
        assert!((laguerre(25, 1, 0.0) - 26.0).abs() < 1e-10);
    }

    #[test]
    fn large_degree_stays_finite() {
        let v = laguerre(400, 0, 10.0);
        assert!(v.is_finite());
    }
}
