//! Spin Wigner kernels on the sphere.
//!
//! For spin `s` there is a whole family of admissible phase-space kernels,
//! one for each choice of signs `eps_l = +-1` (`l = 1..2s`, `eps_0 = +1`).
//! Every member defines a valid operator <-> symbol correspondence; the
//! all-plus member is the one singled out by the contraction limit.

use ndarray::Array2;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cg::clebsch_gordan;
use crate::error::{Error, Result};
use crate::half::HalfInt;
use crate::kahan::Kahan;
use crate::linalg::{dagger, max_abs_diff, random_hermitian, trace, C64, CMat};
use crate::sphere::{SphereGrid, SpherePoint};
use crate::spherical::spherical_harmonic;
use crate::wigner_d::rotation_matrix;

/// The sign choices `eps_l` selecting one kernel out of `2^(2s)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignPattern {
    s: HalfInt,
    /// `signs[l]` for `l = 0..=2s`; `signs[0]` is always `+1`.
    signs: Vec<i8>,
}

impl SignPattern {
    /// The distinguished pattern with every sign `+1`.
    pub fn all_plus(s: HalfInt) -> Self {
        let len = s.twice() as usize + 1;
        SignPattern {
            s,
            signs: vec![1; len],
        }
    }

    /// `eps_l = (-1)^l`.
    pub fn alternating(s: HalfInt) -> Self {
        let len = s.twice() as usize + 1;
        SignPattern {
            s,
            signs: (0..len).map(|l| if l % 2 == 0 { 1 } else { -1 }).collect(),
        }
    }

    /// Decode a bitstring of length `2s`: character `l-1` set to `'1'` means
    /// `eps_l = -1`.  `eps_0` is not encoded; it is always `+1`.
    pub fn from_mask(s: HalfInt, mask: &str) -> Result<Self> {
        let ts = s.twice() as usize;
        if mask.len() != ts {
            return Err(Error::Format(format!(
                "epsilon mask must have length 2s = {ts}, got {}",
                mask.len()
            )));
        }
        let mut signs = Vec::with_capacity(ts + 1);
        signs.push(1);
        for (pos, ch) in mask.chars().enumerate() {
            match ch {
                '0' => signs.push(1),
                '1' => signs.push(-1),
                other => {
                    return Err(Error::Format(format!(
                        "epsilon mask may contain only '0'/'1', found {other:?} at position {pos}"
                    )))
                }
            }
        }
        Ok(SignPattern { s, signs })
    }

    /// Pattern from explicit signs for `l = 1..=2s`.
    pub fn from_flips(s: HalfInt, flipped_l: &[i64]) -> Result<Self> {
        let mut pattern = SignPattern::all_plus(s);
        for &l in flipped_l {
            if l < 1 || l > s.twice() {
                return Err(Error::domain(format!(
                    "flip index l = {l} outside 1..=2s for s = {s}"
                )));
            }
            pattern.signs[l as usize] = -1;
        }
        Ok(pattern)
    }

    /// Uniformly random signs for `l >= 1`.
    pub fn random<R: Rng>(s: HalfInt, rng: &mut R) -> Self {
        let len = s.twice() as usize + 1;
        let mut signs = vec![1i8; len];
        for sign in signs.iter_mut().skip(1) {
            *sign = if rng.gen::<bool>() { 1 } else { -1 };
        }
        SignPattern { s, signs }
    }

    /// Re-encode as the mask bitstring (length `2s`).
    pub fn mask(&self) -> String {
        self.signs[1..]
            .iter()
            .map(|&x| if x < 0 { '1' } else { '0' })
            .collect()
    }

    /// Carry this pattern to a larger spin by repeating its mask cyclically
    /// over `l = 1..2s'`.  This keeps any flipped sign acting on a fixed
    /// fraction of every `l`-range as the spin grows, which is the reading
    /// under which exactly the all-plus pattern survives the contraction
    /// limit (a flip at fixed `l`, by contrast, would fade out like `1/s`).
    pub fn tile_to(&self, s_new: HalfInt) -> Self {
        let base = &self.signs[1..];
        let len = s_new.twice() as usize + 1;
        let mut signs = Vec::with_capacity(len);
        signs.push(1);
        for l in 1..len {
            if base.is_empty() {
                signs.push(1);
            } else {
                signs.push(base[(l - 1) % base.len()]);
            }
        }
        SignPattern { s: s_new, signs }
    }

    pub fn s(&self) -> HalfInt {
        self.s
    }

    pub fn epsilon(&self, l: i64) -> f64 {
        f64::from(self.signs[l as usize])
    }

    pub fn is_all_plus(&self) -> bool {
        self.signs.iter().all(|&x| x == 1)
    }

    pub fn flipped_count(&self) -> usize {
        self.signs.iter().filter(|&&x| x < 0).count()
    }
}

/// A kernel evaluated at one point of the sphere.
#[derive(Clone, Debug)]
pub struct SpinKernel {
    pub s: HalfInt,
    pub pattern: SignPattern,
    pub point: SpherePoint,
    pub matrix: CMat,
}

/// Shared tables for one `(s, pattern)` choice: the coupling coefficients
/// entering every kernel element, computed once.
pub struct KernelSpace {
    s: HalfInt,
    pattern: SignPattern,
    /// `cg[l][[i, ip]] = <s m_i; l (m_ip - m_i) | s m_ip>` with rows/columns
    /// in the descending-m basis indexing used crate-wide.
    cg: Vec<Array2<f64>>,
}

impl KernelSpace {
    pub fn new(pattern: SignPattern) -> Self {
        let s = pattern.s();
        let d = s.dimension();
        let ts = s.twice();
        let mut cg = Vec::with_capacity(ts as usize + 1);
        for l in 0..=ts {
            let jl = HalfInt::from_int(l);
            let mut table = Array2::zeros((d, d));
            for i in 0..d {
                let m = s.magnetic_at(i);
                for ip in 0..d {
                    let mp = s.magnetic_at(ip);
                    let mu = mp - m;
                    if mu.abs().twice() > jl.twice() {
                        continue;
                    }
                    table[[i, ip]] = clebsch_gordan(s, m, jl, mu, s, mp);
                }
            }
            cg.push(table);
        }
        KernelSpace { s, pattern, cg }
    }

    pub fn s(&self) -> HalfInt {
        self.s
    }

    pub fn pattern(&self) -> &SignPattern {
        &self.pattern
    }

    /// Single kernel element
    ///
    /// ```text
    /// Z_{m m'}(n) = sqrt(4 pi)/(2s+1)
    ///               sum_l eps_l sqrt(2l+1) <s m; l m'-m | s m'> Y_{l, m'-m}(n)
    /// ```
    pub fn coefficient(&self, m: HalfInt, mp: HalfInt, point: SpherePoint) -> Result<C64> {
        if !self.s.contains_magnetic(m) || !self.s.contains_magnetic(mp) {
            return Err(Error::domain(format!(
                "magnetic numbers ({m}, {mp}) out of range for s = {}",
                self.s
            )));
        }
        let i = self.s.index_of(m);
        let ip = self.s.index_of(mp);
        let mu = (mp - m).twice() / 2;
        let mut acc = C64::new(0.0, 0.0);
        for l in 0..=self.s.twice() {
            if mu.abs() > l {
                continue;
            }
            let c = self.cg[l as usize][[i, ip]];
            if c == 0.0 {
                continue;
            }
            let y = spherical_harmonic(l, mu, point)?;
            acc += self.pattern.epsilon(l) * ((2 * l + 1) as f64).sqrt() * c * y;
        }
        let pref = (4.0 * std::f64::consts::PI).sqrt() / (self.s.twice() + 1) as f64;
        Ok(pref * acc)
    }

    /// Assemble the full kernel matrix at a point from its elements.
    pub fn kernel_at(&self, point: SpherePoint) -> Result<SpinKernel> {
        let d = self.s.dimension();
        let ts = self.s.twice();
        let pref = (4.0 * std::f64::consts::PI).sqrt() / (ts + 1) as f64;
        // Spherical harmonics reused across all matrix elements of equal m'-m.
        let mut harmonics: Vec<Vec<C64>> = Vec::with_capacity(ts as usize + 1);
        for l in 0..=ts {
            let mut row = Vec::with_capacity(2 * l as usize + 1);
            for mu in -l..=l {
                row.push(spherical_harmonic(l, mu, point)?);
            }
            harmonics.push(row);
        }
        let mut matrix = CMat::zeros((d, d));
        for i in 0..d {
            for ip in 0..d {
                let mu = (self.s.magnetic_at(ip) - self.s.magnetic_at(i)).twice() / 2;
                let mut re = Kahan::new();
                let mut im = Kahan::new();
                for l in mu.abs()..=ts {
                    let c = self.cg[l as usize][[i, ip]];
                    if c == 0.0 {
                        continue;
                    }
                    let y = harmonics[l as usize][(mu + l) as usize];
                    let w = self.pattern.epsilon(l) * ((2 * l + 1) as f64).sqrt() * c;
                    re.add(w * y.re);
                    im.add(w * y.im);
                }
                matrix[[i, ip]] = pref * C64::new(re.total(), im.total());
            }
        }
        Ok(SpinKernel {
            s: self.s,
            pattern: self.pattern.clone(),
            point,
            matrix,
        })
    }

    /// The diagonal kernel at the north pole,
    /// `Pi_s = diag( sum_l eps_l (2l+1)/(2s+1) <s m; l 0 | s m> )`.
    pub fn pi_s(&self) -> CMat {
        let d = self.s.dimension();
        let ts = self.s.twice();
        let mut out = CMat::zeros((d, d));
        for i in 0..d {
            let mut acc = Kahan::new();
            for l in 0..=ts {
                let c = self.cg[l as usize][[i, i]];
                acc.add(self.pattern.epsilon(l) * (2 * l + 1) as f64 / (ts + 1) as f64 * c);
            }
            out[[i, i]] = C64::new(acc.total(), 0.0);
        }
        out
    }

    /// The same kernel by the conjugation route: rotate the north-pole
    /// kernel to the target point, `U(n) Pi_s U(n)^dag`.
    pub fn kernel_via_rotation(&self, point: SpherePoint) -> Result<SpinKernel> {
        let u = rotation_matrix(self.s, point.theta(), point.phi())?;
        let pi = self.pi_s();
        let matrix = u.dot(&pi).dot(&dagger(&u));
        Ok(SpinKernel {
            s: self.s,
            pattern: self.pattern.clone(),
            point,
            matrix,
        })
    }

    /// Symbol of an operator at one point: `W_A(n) = Tr[Delta(n) A]`.
    pub fn symbol(&self, a: &CMat, point: SpherePoint) -> Result<C64> {
        let d = self.s.dimension();
        if a.dim() != (d, d) {
            return Err(Error::Dimension {
                expected: d,
                actual: a.nrows(),
            });
        }
        let kernel = self.kernel_at(point)?;
        Ok(trace(&kernel.matrix.dot(a)))
    }

    /// Symbol sampled over a whole grid, in grid order.
    pub fn symbol_field(&self, a: &CMat, grid: &SphereGrid) -> Result<Vec<C64>> {
        let d = self.s.dimension();
        if a.dim() != (d, d) {
            return Err(Error::Dimension {
                expected: d,
                actual: a.nrows(),
            });
        }
        grid.points()
            .par_iter()
            .map(|&p| self.symbol(a, p))
            .collect()
    }

    /// Inverse map: `A = (2s+1)/(4 pi) sum_i w_i W(n_i) Delta(n_i)`.
    ///
    /// The measure normalization is fixed by the identity-operator roundtrip
    /// (constant symbol 1 must reconstruct the identity).
    pub fn reconstruct(&self, grid: &SphereGrid, samples: &[C64]) -> Result<CMat> {
        self.check_grid(grid)?;
        if samples.len() != grid.len() {
            return Err(Error::Dimension {
                expected: grid.len(),
                actual: samples.len(),
            });
        }
        let d = self.s.dimension();
        let kernels: Vec<CMat> = grid
            .points()
            .par_iter()
            .map(|&p| self.kernel_at(p).map(|k| k.matrix))
            .collect::<Result<_>>()?;
        // Deterministic reduction: fixed ascending grid order, compensated.
        let mut re = vec![Kahan::new(); d * d];
        let mut im = vec![Kahan::new(); d * d];
        for ((kernel, &w), &sample) in kernels.iter().zip(grid.weights()).zip(samples) {
            for (slot, z) in kernel.iter().enumerate() {
                let v = sample * z * w;
                re[slot].add(v.re);
                im[slot].add(v.im);
            }
        }
        let pref = (self.s.twice() + 1) as f64 / (4.0 * std::f64::consts::PI);
        let mut out = CMat::zeros((d, d));
        for (slot, entry) in out.iter_mut().enumerate() {
            *entry = pref * C64::new(re[slot].total(), im[slot].total());
        }
        Ok(out)
    }

    fn check_grid(&self, grid: &SphereGrid) -> Result<()> {
        grid.check_bandlimit(self.s)
    }
}

/// One-shot element evaluation (convenience over [`KernelSpace`]).
pub fn kernel_coefficient(
    pattern: &SignPattern,
    m: HalfInt,
    mp: HalfInt,
    point: SpherePoint,
) -> Result<C64> {
    KernelSpace::new(pattern.clone()).coefficient(m, mp, point)
}

pub fn kernel_at(pattern: &SignPattern, point: SpherePoint) -> Result<SpinKernel> {
    KernelSpace::new(pattern.clone()).kernel_at(point)
}

pub fn pi_s(pattern: &SignPattern) -> CMat {
    KernelSpace::new(pattern.clone()).pi_s()
}

pub fn kernel_via_rotation(pattern: &SignPattern, point: SpherePoint) -> Result<SpinKernel> {
    KernelSpace::new(pattern.clone()).kernel_via_rotation(point)
}

pub fn wigner_symbol(
    a: &CMat,
    pattern: &SignPattern,
    point: SpherePoint,
) -> Result<C64> {
    KernelSpace::new(pattern.clone()).symbol(a, point)
}

pub fn reconstruct_operator(
    pattern: &SignPattern,
    grid: &SphereGrid,
    samples: &[C64],
) -> Result<CMat> {
    KernelSpace::new(pattern.clone()).reconstruct(grid, samples)
}

/// Residual summary of the phase-space postulates for one kernel family.
#[derive(Clone, Debug, Serialize)]
pub struct AuditReport {
    pub two_s: i64,
    pub epsilon_mask: String,
    pub trials: usize,
    pub seed: u64,
    pub negative_control: bool,
    /// max |Delta - Delta^dag| over sampled points
    pub hermiticity: f64,
    /// max |Tr Delta - 1| over sampled points
    pub trace_deviation: f64,
    /// max |U Delta(n) U^dag - Delta(R n)| over sampled rotations
    pub covariance: f64,
    /// max-abs reconstruction roundtrip error over sampled operators
    pub roundtrip: f64,
    pub pass: bool,
}

const AUDIT_TOLERANCE: f64 = 1e-9;

/// Rotate a vector by angle `theta` about the in-plane axis
/// `(-sin phi, cos phi, 0)` (Rodrigues), i.e. the rotation that the kernel
/// family uses to move the pole to `(theta, phi)`.
fn rotate_direction(theta: f64, phi: f64, v: [f64; 3]) -> [f64; 3] {
    let k = [-phi.sin(), phi.cos(), 0.0];
    let (ct, st) = (theta.cos(), theta.sin());
    let kxv = [
        k[1] * v[2] - k[2] * v[1],
        k[2] * v[0] - k[0] * v[2],
        k[0] * v[1] - k[1] * v[0],
    ];
    let kdv = k[0] * v[0] + k[1] * v[1] + k[2] * v[2];
    [
        v[0] * ct + kxv[0] * st + k[0] * kdv * (1.0 - ct),
        v[1] * ct + kxv[1] * st + k[1] * kdv * (1.0 - ct),
        v[2] * ct + kxv[2] * st + k[2] * kdv * (1.0 - ct),
    ]
}

fn random_point<R: Rng>(rng: &mut R) -> SpherePoint {
    let cos_theta: f64 = rng.gen_range(-1.0..=1.0);
    let phi: f64 = rng.gen_range(0.0..2.0 * std::f64::consts::PI);
    SpherePoint::new(cos_theta.clamp(-1.0, 1.0).acos(), phi)
}

/// Check Hermiticity, unit trace, rotation covariance and the
/// reconstruction roundtrip on randomized inputs.
///
/// With `negative_control` set, the north-pole operator is replaced by a
/// rotation by `pi` about the z axis — one of the "obvious" parity
/// candidates that fails to define a symbolic calculus.  Its report is
/// expected to FAIL (the roundtrip residual is macroscopic).
pub fn audit_postulates(
    pattern: &SignPattern,
    trials: usize,
    seed: u64,
    negative_control: bool,
) -> Result<AuditReport> {
    let s = pattern.s();
    let space = KernelSpace::new(pattern.clone());
    let grid = SphereGrid::for_spin(s)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // With the negative control, every kernel evaluation goes through the
    // false family U(n) Pi_false U(n)^dag instead.
    let pi_false = if negative_control {
        let d = s.dimension();
        let mut m = CMat::zeros((d, d));
        for (i, mag) in s.magnetics().enumerate() {
            m[[i, i]] = C64::from_polar(1.0, -std::f64::consts::PI * mag.as_f64());
        }
        Some(m)
    } else {
        None
    };
    let kernel_matrix = |point: SpherePoint| -> Result<CMat> {
        match &pi_false {
            Some(pi) => {
                let u = rotation_matrix(s, point.theta(), point.phi())?;
                Ok(u.dot(pi).dot(&dagger(&u)))
            }
            None => Ok(space.kernel_at(point)?.matrix),
        }
    };

    let mut hermiticity = 0.0f64;
    let mut trace_deviation = 0.0f64;
    let mut covariance = 0.0f64;
    for _ in 0..trials.max(1) {
        let point = random_point(&mut rng);
        let kernel = kernel_matrix(point)?;
        hermiticity = hermiticity.max(max_abs_diff(&kernel, &dagger(&kernel)));
        trace_deviation = trace_deviation.max((trace(&kernel) - 1.0).norm());

        // Covariance: conjugating by a random family rotation must equal
        // the kernel at the rotated point.
        let rot = random_point(&mut rng);
        let u = rotation_matrix(s, rot.theta(), rot.phi())?;
        let conjugated = u.dot(&kernel).dot(&dagger(&u));
        let moved = rotate_direction(rot.theta(), rot.phi(), point.unit_vector());
        let target_point = SpherePoint::from_unit_vector(moved[0], moved[1], moved[2])?;
        let target = kernel_matrix(target_point)?;
        covariance = covariance.max(max_abs_diff(&conjugated, &target));
    }

    // Roundtrip: symbol then reconstruction must return the operator.
    let mut roundtrip = 0.0f64;
    for _ in 0..trials.clamp(1, 3) {
        let a = random_hermitian(s.dimension(), &mut rng);
        let samples: Result<Vec<C64>> = grid
            .points()
            .iter()
            .map(|&p| Ok(trace(&kernel_matrix(p)?.dot(&a))))
            .collect();
        let samples = samples?;
        let rec = match &pi_false {
            Some(_) => {
                // Reconstruct with the same false kernels.
                let d = s.dimension();
                let mut acc = CMat::zeros((d, d));
                for ((&p, &w), &sample) in
                    grid.points().iter().zip(grid.weights()).zip(&samples)
                {
                    acc = acc + kernel_matrix(p)?.mapv(|z| z * sample * w);
                }
                acc.mapv(|z| z * (s.twice() + 1) as f64 / (4.0 * std::f64::consts::PI))
            }
            None => space.reconstruct(&grid, &samples)?,
        };
        roundtrip = roundtrip.max(max_abs_diff(&rec, &a));
    }

    let pass = hermiticity < AUDIT_TOLERANCE
        && trace_deviation < AUDIT_TOLERANCE
        && covariance < AUDIT_TOLERANCE
        && roundtrip < AUDIT_TOLERANCE;
    Ok(AuditReport {
        two_s: s.twice(),
        epsilon_mask: pattern.mask(),
        trials,
        seed,
        negative_control,
        hermiticity,
        trace_deviation,
        covariance,
        roundtrip,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{identity, is_hermitian};

    fn h(t: i64) -> HalfInt {
        HalfInt::from_twice(t)
    }

    #[test]
    fn mask_roundtrip_and_validation() {
        let s = h(4);
        let p = SignPattern::from_mask(s, "0110").unwrap();
        assert_eq!(p.mask(), "0110");
        assert_eq!(p.epsilon(0), 1.0);
        assert_eq!(p.epsilon(1), 1.0);
        assert_eq!(p.epsilon(2), -1.0);
        assert_eq!(p.epsilon(3), -1.0);
        assert_eq!(p.epsilon(4), 1.0);
        assert!(SignPattern::from_mask(s, "011").is_err());
        assert!(SignPattern::from_mask(s, "01x0").is_err());
        assert!(SignPattern::all_plus(s).is_all_plus());
        assert!(!p.is_all_plus());
    }

    #[test]
    fn tiling_repeats_the_mask() {
        let p = SignPattern::from_mask(h(4), "1000").unwrap();
        let q = p.tile_to(h(12));
        assert_eq!(q.mask(), "100010001000");
        // Tiling to the same spin is the identity.
        assert_eq!(p.tile_to(h(4)).mask(), p.mask());
        // All-plus stays all-plus at any size.
        assert!(SignPattern::all_plus(h(2)).tile_to(h(100)).is_all_plus());
    }

    #[test]
    fn spin_zero_kernel_is_one() {
        let space = KernelSpace::new(SignPattern::all_plus(h(0)));
        let pi = space.pi_s();
        assert_eq!(pi.dim(), (1, 1));
        assert!((pi[[0, 0]].re - 1.0).abs() < 1e-14);
        assert!(pi[[0, 0]].im.abs() < 1e-15);
    }

    #[test]
    fn pole_kernel_is_diagonal_and_matches_pi() {
        let space = KernelSpace::new(SignPattern::all_plus(h(3)));
        let at_pole = space.kernel_at(SpherePoint::pole()).unwrap();
        let pi = space.pi_s();
        assert!(max_abs_diff(&at_pole.matrix, &pi) < 1e-12);
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    assert!(at_pole.matrix[[i, j]].norm() < 1e-13);
                }
            }
        }
    }

    #[test]
    fn spin_half_pole_diagonal_closed_form() {
        // s = 1/2: Delta(+-1/2) = (1 +- sqrt(3))/2.
        let space = KernelSpace::new(SignPattern::all_plus(h(1)));
        let pi = space.pi_s();
        let r3 = 3.0f64.sqrt();
        assert!((pi[[0, 0]].re - 0.5 * (1.0 + r3)).abs() < 1e-13);
        assert!((pi[[1, 1]].re - 0.5 * (1.0 - r3)).abs() < 1e-13);
    }

    #[test]
    fn kernel_is_hermitian_unit_trace() {
        let point = SpherePoint::new(1.1, 2.7);
        for mask in ["0000", "1010", "0111"] {
            let space = KernelSpace::new(SignPattern::from_mask(h(4), mask).unwrap());
            let k = space.kernel_at(point).unwrap();
            assert!(is_hermitian(&k.matrix, 1e-12), "mask {mask}");
            assert!((trace(&k.matrix) - 1.0).norm() < 1e-12, "mask {mask}");
        }
    }

    #[test]
    fn rotation_route_matches_direct_sum() {
        let point = SpherePoint::new(0.8, 5.1);
        for (ts, mask) in [(1, "0"), (2, "01"), (3, "110")] {
            let space = KernelSpace::new(SignPattern::from_mask(h(ts), mask).unwrap());
            let direct = space.kernel_at(point).unwrap();
            let rotated = space.kernel_via_rotation(point).unwrap();
            assert!(
                max_abs_diff(&direct.matrix, &rotated.matrix) < 1e-10,
                "2s = {ts}"
            );
        }
    }

    #[test]
    fn symbol_of_identity_is_one() {
        let s = h(3);
        let space = KernelSpace::new(SignPattern::all_plus(s));
        for point in [SpherePoint::pole(), SpherePoint::new(2.2, 0.3)] {
            let w = space.symbol(&identity(s.dimension()), point).unwrap();
            assert!((w - 1.0).norm() < 1e-12);
        }
    }

    #[test]
    fn symbol_of_sz_tracks_cos_theta() {
        let s = h(2);
        let space = KernelSpace::new(SignPattern::all_plus(s));
        let sz = crate::spin_ops::spin_z(s);
        let w0 = space.symbol(&sz, SpherePoint::pole()).unwrap().re;
        for &theta in &[0.4, 1.0, 2.0] {
            let w = space.symbol(&sz, SpherePoint::new(theta, 0.9)).unwrap();
            assert!(w.im.abs() < 1e-12);
            assert!(
                (w.re - w0 * theta.cos()).abs() < 1e-10,
                "theta = {theta}: {} vs {}",
                w.re,
                w0 * theta.cos()
            );
        }
    }

    #[test]
    fn reconstruction_roundtrip_small() {
        let s = h(3);
        let space = KernelSpace::new(SignPattern::from_mask(s, "010").unwrap());
        let grid = SphereGrid::for_spin(s).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let a = random_hermitian(s.dimension(), &mut rng);
        let samples = space.symbol_field(&a, &grid).unwrap();
        let rec = space.reconstruct(&grid, &samples).unwrap();
        assert!(max_abs_diff(&rec, &a) < 1e-10);
    }

    #[test]
    fn audit_passes_and_negative_control_fails() {
        let pattern = SignPattern::from_mask(h(2), "10").unwrap();
        let report = audit_postulates(&pattern, 4, 3, false).unwrap();
        assert!(report.pass, "audit should pass: {report:?}");
        let control = audit_postulates(&pattern, 4, 3, true).unwrap();
        assert!(!control.pass);
        assert!(control.roundtrip > 1e-3);
    }

    #[test]
    fn undersized_grid_is_rejected() {
        let s = h(4);
        let space = KernelSpace::new(SignPattern::all_plus(s));
        let grid = SphereGrid::new(3, 5);
        let samples = vec![C64::new(1.0, 0.0); grid.len()];
        assert!(matches!(
            space.reconstruct(&grid, &samples),
            Err(Error::Bandlimit { .. })
        ));
    }
}
