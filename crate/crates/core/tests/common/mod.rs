//! Independent oracles for the integration tests.
//!
//! Everything here recomputes library quantities by a *different* route —
//! matrix exponentials instead of closed forms, projector algebra instead
//! of the Racah series — so agreement is evidence, not tautology.
#![allow(dead_code)] // each test binary uses its own slice of the oracles

use ndarray::Array2;
use num_complex::Complex64;
use phase_contract::half::HalfInt;
use phase_contract::linalg::{dagger, expm, CMat, C64};
use phase_contract::spin_ops::{spin_minus, spin_z};

/// Displacement operator by brute-force matrix exponential of
/// `alpha a^dag - alpha^* a` on the truncation.
pub fn displacement_by_expm(n_max: usize, alpha: C64) -> CMat {
    let d = n_max + 1;
    let mut gen = CMat::zeros((d, d));
    for n in 1..d {
        let root = (n as f64).sqrt();
        // a^dag entry (n, n-1), a entry (n-1, n)
        gen[[n, n - 1]] += alpha * root;
        gen[[n - 1, n]] -= alpha.conj() * root;
    }
    expm(&gen)
}

/// Family rotation by brute-force matrix exponential of
/// `-i theta (k . S)` with `k = (-sin phi, cos phi, 0)`.
pub fn rotation_by_expm(s: HalfInt, theta: f64, phi: f64) -> CMat {
    let sx = phase_contract::spin_ops::spin_x(s);
    let sy = phase_contract::spin_ops::spin_y(s);
    let kx = -phi.sin();
    let ky = phi.cos();
    let d = s.dimension();
    let mut gen = CMat::zeros((d, d));
    for i in 0..d {
        for j in 0..d {
            gen[[i, j]] = C64::new(0.0, -theta) * (kx * sx[[i, j]] + ky * sy[[i, j]]);
        }
    }
    expm(&gen)
}

/// Clebsch-Gordan coefficients for `s (x) s -> L` via projector algebra:
/// build the total-spin Casimir `J^2` on the product space, project onto
/// the `L` eigenspace by a polynomial filter, and read the (unique up to
/// phase) `M`-component eigenvectors.  Entirely independent of any
/// factorial formula.
pub struct CouplingOracle {
    s: HalfInt,
    dim: usize,
    /// `vectors[L]` holds, for each `M`-slice, the coupled basis vector in
    /// the product basis, or None if `M` is out of range.
    vectors: Vec<Vec<Option<Vec<C64>>>>,
}

impl CouplingOracle {
    pub fn build(s: HalfInt) -> Self {
        let d = s.dimension();
        let dim = d * d;
        let ts = s.twice();
        // Product-space spin operators J = S (x) 1 + 1 (x) S.
        let sz = spin_z(s);
        let sminus = spin_minus(s);
        let kron = |a: &CMat, b: &CMat| -> CMat {
            let mut out = CMat::zeros((dim, dim));
            for i in 0..d {
                for j in 0..d {
                    for k in 0..d {
                        for l in 0..d {
                            out[[i * d + k, j * d + l]] = a[[i, j]] * b[[k, l]];
                        }
                    }
                }
            }
            out
        };
        let eye = phase_contract::linalg::identity(d);
        let jz = kron(&sz, &eye) + kron(&eye, &sz);
        let jm = kron(&sminus, &eye) + kron(&eye, &sminus);
        let jp = dagger(&jm);
        // J^2 = J- J+ + Jz^2 + Jz
        let j2 = jm.dot(&jp) + jz.dot(&jz) + jz.clone();

        let mut vectors: Vec<Vec<Option<Vec<C64>>>> = Vec::new();
        for cap_l in 0..=ts {
            // Stretched top state |L, L> by projecting the unique M = L
            // subspace against all higher L.
            let m_target = cap_l;
            // Basis states with m1 + m2 = M: collect product indices.
            let mut slots = Vec::new();
            for i in 0..d {
                for k in 0..d {
                    let tm = (ts - 2 * i as i64) + (ts - 2 * k as i64);
                    if tm == 2 * m_target {
                        slots.push(i * d + k);
                    }
                }
            }
            // Start from an arbitrary vector in the M = L slice and filter
            // with the polynomial prod_{L' > L} (J^2 - L'(L'+1)) /
            // (L(L+1) - L'(L'+1)).
            let mut v = vec![C64::new(0.0, 0.0); dim];
            for (rank, &slot) in slots.iter().enumerate() {
                // A spread of weights avoids starting orthogonal to the target.
                v[slot] = C64::new(1.0 + rank as f64, 0.3 * rank as f64);
            }
            for lp in 0..=ts {
                if lp == cap_l {
                    continue;
                }
                let lam = (lp * (lp + 1)) as f64;
                let denom = (cap_l * (cap_l + 1)) as f64 - lam;
                let mut next = vec![C64::new(0.0, 0.0); dim];
                for (row, out) in next.iter_mut().enumerate() {
                    let mut acc = C64::new(0.0, 0.0);
                    for (col, &vc) in v.iter().enumerate() {
                        acc += j2[[row, col]] * vc;
                    }
                    *out = (acc - lam * v[row]) / denom;
                }
                v = next;
            }
            let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            for z in v.iter_mut() {
                *z /= norm;
            }
            // Fix the phase convention: the amplitude on |s, s> (x)
            // |s, L - s>... the standard choice makes <s, m1 = s_max | L L>
            // real positive, where m1 is maximal within the slice.
            let mut anchor = C64::new(0.0, 0.0);
            for i in 0..d {
                let tm1 = ts - 2 * i as i64;
                let tm2 = 2 * cap_l - tm1;
                if tm2.abs() <= ts {
                    let k = ((ts - tm2) / 2) as usize;
                    anchor = v[i * d + k];
                    break; // first i = largest m1 present
                }
            }
            let phase = anchor / anchor.norm();
            for z in v.iter_mut() {
                *z /= phase;
            }
            // Ladder down to fill all M.
            let mut per_m: Vec<Option<Vec<C64>>> = vec![None; (2 * ts + 1) as usize];
            let mut current = v;
            let mut tm = 2 * cap_l;
            per_m[((2 * ts - tm) / 2) as usize] = Some(current.clone());
            while tm > -2 * cap_l {
                // |L, M-1> = J- |L, M> / sqrt(L(L+1) - M(M-1))
                let m_f = tm as f64 / 2.0;
                let lam = ((cap_l * (cap_l + 1)) as f64 - m_f * (m_f - 1.0)).sqrt();
                let mut next = vec![C64::new(0.0, 0.0); dim];
                for (row, out) in next.iter_mut().enumerate() {
                    let mut acc = C64::new(0.0, 0.0);
                    for (col, &vc) in current.iter().enumerate() {
                        acc += jm[[row, col]] * vc;
                    }
                    *out = acc / lam;
                }
                current = next;
                tm -= 2;
                per_m[((2 * ts - tm) / 2) as usize] = Some(current.clone());
            }
            vectors.push(per_m);
        }
        CouplingOracle { s, dim, vectors }
    }

    /// `<s m1; s m2 | L M>` read off the projected eigenvectors.
    pub fn coefficient(&self, m1: HalfInt, m2: HalfInt, cap_l: i64) -> f64 {
        let s = self.s;
        let ts = s.twice();
        let tm = m1.twice() + m2.twice();
        if tm.abs() > 2 * cap_l {
            return 0.0;
        }
        let per_m = &self.vectors[cap_l as usize];
        let Some(vec) = per_m[((2 * ts - tm) / 2) as usize].as_ref() else {
            return 0.0;
        };
        let i = s.index_of(m1);
        let k = s.index_of(m2);
        let z = vec[i * s.dimension() + k];
        debug_assert!(z.im.abs() < 1e-10, "oracle vector not real: {z}");
        z.re
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

/// Dense reference for the associated-Legendre-based spherical harmonics:
/// direct evaluation of the Rodrigues-type sum for small `l` only.
pub fn ylm_reference(l: i64, m: i64, theta: f64, phi: f64) -> Complex64 {
    // Hard-coded table through l = 2 (enough to anchor conventions).
    use std::f64::consts::PI;
    let (st, ct) = (theta.sin(), theta.cos());
    let mag = match (l, m) {
        (0, 0) => (1.0 / (4.0 * PI)).sqrt(),
        (1, 0) => (3.0 / (4.0 * PI)).sqrt() * ct,
        (1, 1) => -(3.0 / (8.0 * PI)).sqrt() * st,
        (1, -1) => (3.0 / (8.0 * PI)).sqrt() * st,
        (2, 0) => (5.0 / (16.0 * PI)).sqrt() * (3.0 * ct * ct - 1.0),
        (2, 1) => -(15.0 / (8.0 * PI)).sqrt() * st * ct,
        (2, -1) => (15.0 / (8.0 * PI)).sqrt() * st * ct,
        (2, 2) => (15.0 / (32.0 * PI)).sqrt() * st * st,
        (2, -2) => (15.0 / (32.0 * PI)).sqrt() * st * st,
        _ => panic!("reference table covers l <= 2 only"),
    };
    mag * Complex64::from_polar(1.0, m as f64 * phi)
}

/// Assert two matrices agree entrywise within `tol`, with a readable
/// failure message.
pub fn assert_close(a: &CMat, b: &CMat, tol: f64, label: &str) {
    assert_eq!(a.dim(), b.dim(), "{label}: dimension mismatch");
    let mut worst = 0.0f64;
    let mut at = (0usize, 0usize);
    for ((i, j), &za) in a.indexed_iter() {
        let d = (za - b[[i, j]]).norm();
        if d > worst {
            worst = d;
            at = (i, j);
        }
    }
    assert!(
        worst <= tol,
        "{label}: worst deviation {worst:.3e} at {at:?} exceeds {tol:.1e}"
    );
}

/// Build a dense matrix from a closure (row, col) -> value.
pub fn matrix_from_fn(d: usize, f: impl Fn(usize, usize) -> C64) -> CMat {
    Array2::from_shape_fn((d, d), |(i, j)| f(i, j))
}
