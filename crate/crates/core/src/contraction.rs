//! The large-spin contraction connecting the two kernel families.
//!
//! With `c = 1/sqrt(2s)`, rescaled ladder operators `A^+ = c S^-`,
//! `A^- = c S^+`, `A^z = -S^z + 1/(2 c^2)` obey `[A^-, A^+] = 1 - 2 c^2
//! A^z`, which flows to the oscillator algebra as `s` grows.  Under the
//! matching `theta = 2 c |alpha|`, `phi = arg alpha`, the spin kernels flow
//! to the particle kernel — but only for the all-plus sign pattern.
//!
//! The quantitative object is the per-`l` term of the north-pole kernel
//! diagonal at occupation `n`,
//!
//! ```text
//! D_{l,n} = sqrt((2l+1)/(2s+1)) <s, s-n; s, n-s | l 0>,
//! ```
//!
//! whose signed sum `S(s, n) = sum_l eps_l D_{l,n}` must tend to 2 for
//! every `n` if the family is to contract to the displaced parity.  In the
//! limit `D_{l,n} -> dx_l (-1)^n L_n(x_l) e^(-x_l/2)` with `x_l =
//! l(l+1)/(2s+1)`, so the sum becomes `Int_0^inf L_n(x) e^(-x/2) dx = 2`
//! exactly when all signs are `+1`.

use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Serialize;

use crate::cg::{clebsch_gordan, clebsch_gordan_exact, stretched_log};
use crate::error::{Error, Result};
use crate::half::HalfInt;
use crate::kahan::Kahan;
use crate::laguerre::laguerre_standard;
use crate::linalg::{CMat, C64};
use crate::particle_kernel::{kernel_element, particle_kernel, FockSpace, PhasePoint};
use crate::spin_kernel::SignPattern;
use crate::wigner_d::rotation_rows;

/// The contraction parameter `c = 1/sqrt(2s)` for one spin.
#[derive(Clone, Copy, Debug)]
pub struct ContractionScale {
    s: HalfInt,
    c: f64,
}

impl ContractionScale {
    pub fn for_spin(s: HalfInt) -> Result<Self> {
        if s.twice() <= 0 {
            return Err(Error::domain("contraction requires s > 0"));
        }
        Ok(ContractionScale {
            s,
            c: 1.0 / (s.twice() as f64).sqrt(),
        })
    }

    pub fn s(&self) -> HalfInt {
        self.s
    }

    pub fn c(&self) -> f64 {
        self.c
    }
}

/// Rescaled ladder triple `(A^+, A^-, A^z)` at finite spin.
pub fn contracted_operators(scale: ContractionScale) -> (CMat, CMat, CMat) {
    let s = scale.s();
    let c = scale.c();
    let sp = crate::spin_ops::spin_plus(s);
    let sm = crate::spin_ops::spin_minus(s);
    let sz = crate::spin_ops::spin_z(s);
    let aplus = sm.mapv(|z| c * z);
    let aminus = sp.mapv(|z| c * z);
    let shift = 0.5 / (c * c);
    let d = s.dimension();
    let mut az = sz.mapv(|z| -z);
    for i in 0..d {
        az[[i, i]] += C64::new(shift, 0.0);
    }
    (aplus, aminus, az)
}

/// Angle of the family rotation that tracks the displacement by `alpha`:
/// `theta = 2 c |alpha|`.
pub fn rotation_angle(scale: ContractionScale, alpha: C64) -> f64 {
    2.0 * scale.c() * alpha.norm()
}

/// The finite-spin stand-in for the displacement operator `T(alpha)`: the
/// family rotation with `theta = 2 c |alpha|`, `phi = arg alpha`.
///
/// The matching is only faithful while `theta <= pi`; beyond that the
/// sphere has wrapped around and callers should treat results as
/// out-of-regime (the CLI warns).
pub fn contracted_rotation(scale: ContractionScale, alpha: C64) -> Result<CMat> {
    let theta = rotation_angle(scale, alpha);
    crate::wigner_d::rotation_matrix(scale.s(), theta, alpha.arg())
}

/// `x_l = l(l+1)/(2s+1)`, the squeezed angular-momentum variable.
pub fn x_of_l(s: HalfInt, l: i64) -> f64 {
    (l * (l + 1)) as f64 / (s.twice() + 1) as f64
}

/// Exact `n = 0` term `D_{l,0}` (stretched coupling in log space).
pub fn seed_exact(s: HalfInt, l: i64) -> Result<f64> {
    check_l(s, l)?;
    let ts = s.twice();
    let w = ((2 * l + 1) as f64 / (ts + 1) as f64).sqrt();
    Ok(w * stretched_log(s, l).to_f64())
}

/// Large-spin form of the same seed,
/// `D_{l,0} ~ (2l+1)/(2s+1) exp(-l(l+1)/(2(2s+1)))`.
pub fn seed_asymptotic(s: HalfInt, l: i64) -> f64 {
    let ts1 = (s.twice() + 1) as f64;
    (2 * l + 1) as f64 / ts1 * (-0.5 * x_of_l(s, l)).exp()
}

fn check_l(s: HalfInt, l: i64) -> Result<()> {
    if l < 0 || l > s.twice() {
        return Err(Error::domain(format!(
            "coupling rank l = {l} outside 0..=2s for s = {s}"
        )));
    }
    Ok(())
}

fn check_n(s: HalfInt, n: usize) -> Result<()> {
    if n as i64 > s.twice() {
        return Err(Error::domain(format!(
            "occupation n = {n} exceeds 2s for s = {s}"
        )));
    }
    Ok(())
}

/// Tail-regime guard for the limit-facing sums: they are meaningful (and
/// numerically safe) only for occupations far below the spin, `n <= s/10`.
fn check_tail_regime(s: HalfInt, n: usize) -> Result<()> {
    check_n(s, n)?;
    if n as f64 > s.as_f64() / 10.0 {
        return Err(Error::precondition(format!(
            "occupation n = {n} outside the contraction regime n <= s/10 for s = {s}"
        )));
    }
    Ok(())
}

/// `D_{l,n}` for `n = 0..=n_stop` by the three-term recursion in `m = s-n`
/// started at the stretched edge.  The edge seed decays into the classically
/// allowed bulk, so running the recursion toward the bulk is the stable
/// direction.  Coefficients are exact integers in doubled units.
fn chain(s: HalfInt, l: i64, n_stop: usize) -> Vec<f64> {
    let ts = s.twice();
    let w = ((2 * l + 1) as f64 / (ts + 1) as f64).sqrt();
    let edge = stretched_log(s, l).to_f64();
    let mut out = Vec::with_capacity(n_stop + 1);
    out.push(w * edge);
    if edge == 0.0 {
        // Underflowed seed: every reachable term is far below 1e-290 and
        // cannot influence any sum; report exact zeros.
        out.resize(n_stop + 1, 0.0);
        return out;
    }
    let ll4 = 4 * l * (l + 1);
    let cas2 = 2 * ts * (ts + 2);
    let mut c_up = 0.0f64; // C_{m+1}
    let mut c_cur = edge; // C_m, starting at m = s
    let mut tm = ts;
    for _ in 0..n_stop {
        let a = (ll4 - cas2 + 2 * tm * tm) as f64;
        let b = (ts * (ts + 2) - tm * (tm + 2)) as f64;
        let d = (ts * (ts + 2) - tm * (tm - 2)) as f64;
        let c_down = (a * c_cur - b * c_up) / d;
        c_up = c_cur;
        c_cur = c_down;
        tm -= 2;
        out.push(w * c_cur);
    }
    out
}

/// Normwise residual of the three-term identity at one `m`, given the three
/// participating coefficient values `C_{m+1}`, `C_m`, `C_{m-1}`: the defect
/// divided by `(|A| + |B| + |D|) max|C|`, i.e. the smallest coefficient
/// perturbation (relative to the largest participant) that would satisfy
/// the identity exactly.
///
/// Scaling by the largest *product* instead would misfire on degenerate
/// tuples: at `l(l+1) = 2s`, `m = s` both `A` and `B` vanish and `C_{m-1}`
/// is an exact zero the evaluator only realizes to roundoff, leaving pure
/// noise as the reference scale.
fn identity_residual(ts: i64, l: i64, tm: i64, c_up: f64, c_mid: f64, c_down: f64) -> f64 {
    let a = (4 * l * (l + 1) - 2 * ts * (ts + 2) + 2 * tm * tm) as f64 / 4.0;
    let b = (ts * (ts + 2) - tm * (tm + 2)) as f64 / 4.0;
    let d = (ts * (ts + 2) - tm * (tm - 2)) as f64 / 4.0;
    let lhs = a * c_mid;
    let rhs = b * c_up + d * c_down;
    let scale = (a.abs() + b.abs() + d.abs()) * c_up.abs().max(c_mid.abs()).max(c_down.abs());
    (lhs - rhs).abs() / scale.max(1e-300)
}

/// Residual of the defining three-term identity for a coupling triple, used
/// by tests and the acceptance gate: with `C_m = <s m; s -m | l 0>`,
///
/// ```text
/// [l(l+1) - 2s(s+1) + 2m^2] C_m = [s(s+1) - m(m+1)] C_{m+1}
///                                 + [s(s+1) - m(m-1)] C_{m-1}
/// ```
///
/// Returned is the normwise residual of [`identity_residual`].  Coefficients
/// come from the log-domain evaluator, so the result reflects that
/// evaluator's accuracy as well; its alternating sum loses digits with
/// growing spin, which caps the useful range at roughly `2s <= 25`.
pub fn recursion_residual_float(s: HalfInt, l: i64, m: HalfInt) -> Result<f64> {
    check_l(s, l)?;
    let jl = HalfInt::from_int(l);
    let cg_diag = |mm: HalfInt| -> f64 {
        if !s.contains_magnetic(mm) {
            return 0.0;
        }
        clebsch_gordan(s, mm, s, -mm, jl, HalfInt::from_int(0))
    };
    let tm = m.twice();
    Ok(identity_residual(
        s.twice(),
        l,
        tm,
        cg_diag(HalfInt::from_twice(tm + 2)),
        cg_diag(m),
        cg_diag(HalfInt::from_twice(tm - 2)),
    ))
}

/// Residuals of the same identity at every `m` for one `(s, l)`, with the
/// coefficients evaluated in exact rational arithmetic and rounded once to
/// `f64` — the only float content is the identity arithmetic itself.
///
/// This is the meaningful float check at spins beyond the reach of the
/// direct summed evaluator, whose own cancellation error would otherwise
/// swamp the identity.  Entries are ordered by descending `m = s, ..., -s`.
pub fn recursion_residuals_rounded(s: HalfInt, l: i64) -> Result<Vec<f64>> {
    check_l(s, l)?;
    let ts = s.twice();
    let jl = HalfInt::from_int(l);
    let dim = ts as usize + 1;
    let values: Vec<f64> = (0..dim)
        .map(|i| {
            let m = HalfInt::from_twice(ts - 2 * i as i64);
            clebsch_gordan_exact(s, m, s, -m, jl, HalfInt::from_int(0)).to_f64()
        })
        .collect();
    Ok((0..dim)
        .map(|i| {
            let tm = ts - 2 * i as i64;
            let c_up = if i == 0 { 0.0 } else { values[i - 1] };
            let c_down = if i + 1 == dim { 0.0 } else { values[i + 1] };
            identity_residual(ts, l, tm, c_up, values[i], c_down)
        })
        .collect())
}

/// One contraction term `D_{l,n}`, by the stable recursion.
///
/// Before the first use, the routing is cross-checked once against the
/// closed-form coupling coefficients at moderate spin (both the raw values
/// and the `(-1)^n` reflection phase tying the edge-coupled form to the
/// kernel diagonal); a mismatch would poison every large-spin result, so it
/// is a hard error.
pub fn term_delta(s: HalfInt, l: i64, n: usize) -> Result<f64> {
    check_l(s, l)?;
    check_n(s, n)?;
    ensure_coupling_consistency()?;
    Ok(chain(s, l, n)[n])
}

/// The signed term table for one `(s, n, pattern)` triple: every term
/// `eps_l D_{l,n}` in ascending `l`, its running compensated sum, and the
/// total `S(s, n)`.
#[derive(Clone, Debug, Serialize)]
pub struct TermTable {
    pub two_s: i64,
    pub n: usize,
    pub epsilon_mask: String,
    /// `x_l` per entry, ascending `l = 0..=2s`.
    pub x_values: Vec<f64>,
    /// `eps_l D_{l,n}` per entry.
    pub terms: Vec<f64>,
    /// Running sums of `terms`.
    pub partial_sums: Vec<f64>,
    pub total: f64,
}

/// Evaluate `S(s, n) = sum_l eps_l D_{l,n}` term by term.
pub fn contraction_sum(s: HalfInt, n: usize, pattern: &SignPattern) -> Result<TermTable> {
    check_tail_regime(s, n)?;
    if pattern.s() != s {
        return Err(Error::Dimension {
            expected: s.twice() as usize,
            actual: pattern.s().twice() as usize,
        });
    }
    ensure_coupling_consistency()?;
    let ts = s.twice();
    let count = ts as usize + 1;
    let mut x_values = Vec::with_capacity(count);
    let mut terms = Vec::with_capacity(count);
    for l in 0..=ts {
        x_values.push(x_of_l(s, l));
        terms.push(pattern.epsilon(l) * chain(s, l, n)[n]);
    }
    let mut partial_sums = Vec::with_capacity(count);
    let mut acc = Kahan::new();
    for &t in &terms {
        acc.add(t);
        partial_sums.push(acc.total());
    }
    Ok(TermTable {
        two_s: ts,
        n,
        epsilon_mask: pattern.mask(),
        x_values,
        terms,
        partial_sums,
        total: acc.total(),
    })
}

/// North-pole kernel diagonal entry at occupation `n` (that is, at
/// `m = s - n`), `(-1)^n S(s, n)`, by the same term machinery.  Converges
/// to `<n| 2 Pi |n> = 2 (-1)^n` exactly when the flat sum converges to 2.
pub fn diagonal_limit(s: HalfInt, n: usize, pattern: &SignPattern) -> Result<f64> {
    let table = contraction_sum(s, n, pattern)?;
    Ok(if n % 2 == 0 { table.total } else { -table.total })
}

/// Recursively generated limit polynomials:
/// `(n+1) Lam_{n+1}(x) = (x - (2n+1)) Lam_n(x) - n Lam_{n-1}(x)`,
/// `Lam_0 = 1`, `Lam_1 = x - 1`.  These are `(-1)^n L_n(x)`.
pub fn lambda_recursion(n_max: usize, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(1.0);
    if n_max == 0 {
        return out;
    }
    out.push(x - 1.0);
    for n in 1..n_max {
        let nf = n as f64;
        let next = ((x - (2.0 * nf + 1.0)) * out[n] - nf * out[n - 1]) / (nf + 1.0);
        out.push(next);
    }
    out
}

fn adaptive_simpson<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    fa: f64,
    b: f64,
    fb: f64,
    fm: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> Result<f64> {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    // Below the panel's own roundoff scale (~eps * integral of |f|) the
    // error estimate is pure noise; refining further can never settle, so
    // the floor caps how small a tolerance a panel is asked to meet.
    let floor = 5e-16 * (b - a) / 6.0
        * (fa.abs() + 4.0 * flm.abs() + 2.0 * fm.abs() + 4.0 * frm.abs() + fb.abs());
    if delta.abs() <= 15.0 * tol.max(floor) {
        return Ok(left + right + delta / 15.0);
    }
    if depth == 0 {
        return Err(Error::NonConvergence(
            "adaptive quadrature failed to settle within depth budget".into(),
        ));
    }
    let l = adaptive_simpson(f, a, fa, m, fm, flm, left, 0.5 * tol, depth - 1)?;
    let r = adaptive_simpson(f, m, fm, b, fb, frm, right, 0.5 * tol, depth - 1)?;
    Ok(l + r)
}

/// `Int_0^inf L_n(x) e^(-x/t) dx` by adaptive quadrature.  The closed value
/// is `t (1 - t)^n`; at `t = 2` every `n` gives `2 (-1)^n`, which is what
/// the contraction sums chase.
pub fn laguerre_integral(n: usize, t: f64) -> Result<f64> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::domain(format!("decay scale t = {t} must be positive")));
    }
    // The polynomial factor is swamped beyond x ~ t(35 + 12n): the
    // integrand tail there is below 1e-13 of the scale of the answer.
    let upper = t * (35.0 + 12.0 * n as f64);
    let f = |x: f64| laguerre_standard(n as u32, x) * (-x / t).exp();
    let fa = f(0.0);
    let fb = f(upper);
    let fm = f(0.5 * upper);
    let whole = upper / 6.0 * (fa + 4.0 * fm + fb);
    adaptive_simpson(&f, 0.0, fa, upper, fb, fm, whole, 1e-13, 48)
}

/// Full north-pole diagonal `Delta_eps(m)` for every `m` (descending, i.e.
/// indexed by `n = s - m`), sharing one recursion pass per `l`.
///
/// Only the `m >= 0` half of each chain is run; the `m < 0` half follows
/// from the reflection `C_{-m} = (-1)^(2s-l) C_m`, keeping every chain in
/// its stable half.
pub fn pi_diagonal_all(s: HalfInt, pattern: &SignPattern) -> Result<Vec<f64>> {
    if pattern.s() != s {
        return Err(Error::Dimension {
            expected: s.twice() as usize,
            actual: pattern.s().twice() as usize,
        });
    }
    ensure_coupling_consistency()?;
    let ts = s.twice();
    let dim = ts as usize + 1;
    let n_half = (ts / 2) as usize; // m = s - n >= 0  <=>  n <= ts/2
    let mut plain = vec![Kahan::new(); n_half + 1];
    let mut twisted = vec![Kahan::new(); n_half + 1];
    for l in 0..=ts {
        let eps = pattern.epsilon(l);
        let reflect = if (ts - l) % 2 == 0 { 1.0 } else { -1.0 };
        let d = chain(s, l, n_half);
        for (n, &val) in d.iter().enumerate() {
            plain[n].add(eps * val);
            twisted[n].add(eps * reflect * val);
        }
    }
    let mut diag = vec![0.0f64; dim];
    for n in 0..=n_half {
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        diag[n] = sign * plain[n].total();
    }
    for n in 0..=n_half {
        let k = (ts as usize) - n;
        if k <= n_half {
            continue; // already covered by the m >= 0 half
        }
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        diag[k] = sign * twisted[n].total();
    }
    Ok(diag)
}

/// Maximum absolute deviation between the rotated spin kernel and the
/// particle kernel on the leading `(block+1) x (block+1)` Fock block.
///
/// The spin side is `U Pi_eps U^dag` with `U` the contracted rotation for
/// `alpha`; in the descending-m basis its row `i` is exactly Fock index
/// `n = i`, so the top-left corner is the block to compare.
///
/// With `n_max = None` the particle side uses the exact kernel entries, so
/// the deviation is pure contraction error.  A pinned `n_max` routes the
/// particle side through the truncated displaced-parity product instead,
/// adding that route's truncation error to the comparison.
pub fn kernel_block_compare(
    s: HalfInt,
    alpha: C64,
    block: usize,
    pattern: &SignPattern,
    n_max: Option<usize>,
) -> Result<f64> {
    check_tail_regime(s, block)?;
    let scale = ContractionScale::for_spin(s)?;
    let theta = rotation_angle(scale, alpha);
    let rows = block + 1;
    let u = rotation_rows(s, rows, theta, alpha.arg())?;
    let diag = pi_diagonal_all(s, pattern)?;
    let dim = diag.len();
    let mut spin_block = CMat::zeros((rows, rows));
    for i in 0..rows {
        for j in 0..rows {
            let mut re = Kahan::new();
            let mut im = Kahan::new();
            for k in 0..dim {
                let z = u[[i, k]] * diag[k] * u[[j, k]].conj();
                re.add(z.re);
                im.add(z.im);
            }
            spin_block[[i, j]] = C64::new(re.total(), im.total());
        }
    }

    let mut target = CMat::zeros((rows, rows));
    match n_max {
        None => {
            for i in 0..rows {
                for j in 0..rows {
                    target[[i, j]] = kernel_element(i, j, alpha);
                }
            }
        }
        Some(nm) => {
            if nm < block {
                return Err(Error::precondition(format!(
                    "truncation n_max = {nm} cannot hold the compared block \
                     0..={block}"
                )));
            }
            let full = particle_kernel(FockSpace::new(nm), PhasePoint::new(alpha));
            for i in 0..rows {
                for j in 0..rows {
                    target[[i, j]] = full[[i, j]];
                }
            }
        }
    }
    let mut worst = 0.0f64;
    for i in 0..rows {
        for j in 0..rows {
            worst = worst.max((spin_block[[i, j]] - target[[i, j]]).norm());
        }
    }
    Ok(worst)
}

/// Distance record for one `(pattern, s, n)` cell of a sweep.
#[derive(Clone, Debug, Serialize)]
pub struct SweepCell {
    pub two_s: i64,
    pub n: usize,
    /// `|S(s, n) - 2|`
    pub distance: f64,
}

/// Sweep verdict for one sign pattern.
#[derive(Clone, Debug, Serialize)]
pub struct PatternOutcome {
    pub epsilon_mask: String,
    pub converges: bool,
    /// Worst distance at the largest spin over all tested `n`.
    pub final_distance: f64,
    pub cells: Vec<SweepCell>,
}

/// Result of sweeping a set of base patterns up a spin ladder.
#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub base_two_s: i64,
    pub ladder_two_s: Vec<i64>,
    pub n_list: Vec<usize>,
    pub convergence_gate: f64,
    pub patterns: Vec<PatternOutcome>,
}

/// Gate on the final distance for a CONVERGES verdict.
pub const SWEEP_GATE: f64 = 0.05;

/// Every sign pattern at spin `s` (all `2^(2s)` of them) — only sensible
/// for `2s <= 8`.
pub fn exhaustive_patterns(s: HalfInt) -> Result<Vec<SignPattern>> {
    let ts = s.twice();
    if !(0..=8).contains(&ts) {
        return Err(Error::precondition(format!(
            "exhaustive pattern enumeration is capped at 2s <= 8, got 2s = {ts}"
        )));
    }
    let mut out = Vec::with_capacity(1usize << ts);
    for bits in 0..(1u32 << ts) {
        let mask: String = (0..ts)
            .map(|b| if bits >> b & 1 == 1 { '1' } else { '0' })
            .collect();
        out.push(SignPattern::from_mask(s, &mask)?);
    }
    Ok(out)
}

/// Judge each base pattern by carrying it (tiled) up the spin ladder and
/// watching `|S(s, n) - 2|`: CONVERGES means the distance falls at every
/// ladder step and ends below [`SWEEP_GATE`], for every tested `n`.
pub fn epsilon_sweep(
    base_patterns: &[SignPattern],
    ladder: &[HalfInt],
    n_list: &[usize],
) -> Result<SweepReport> {
    if base_patterns.is_empty() {
        return Err(Error::precondition("sweep needs at least one pattern"));
    }
    if ladder.len() < 2 {
        return Err(Error::precondition("sweep ladder needs at least two spins"));
    }
    if n_list.is_empty() {
        return Err(Error::precondition("sweep needs at least one occupation"));
    }
    let base_two_s = base_patterns[0].s().twice();
    for p in base_patterns {
        if p.s().twice() != base_two_s {
            return Err(Error::precondition(
                "all sweep patterns must share one base spin",
            ));
        }
    }
    let patterns: Vec<PatternOutcome> = base_patterns
        .par_iter()
        .map(|base| -> Result<PatternOutcome> {
            let mut cells = Vec::with_capacity(ladder.len() * n_list.len());
            let mut converges = true;
            let mut final_distance = 0.0f64;
            for &n in n_list {
                let mut previous = f64::INFINITY;
                for (step, &s) in ladder.iter().enumerate() {
                    let tiled = base.tile_to(s);
                    let total = contraction_sum(s, n, &tiled)?.total;
                    let distance = (total - 2.0).abs();
                    cells.push(SweepCell {
                        two_s: s.twice(),
                        n,
                        distance,
                    });
                    if distance >= previous {
                        converges = false;
                    }
                    previous = distance;
                    if step + 1 == ladder.len() {
                        final_distance = final_distance.max(distance);
                        if distance >= SWEEP_GATE {
                            converges = false;
                        }
                    }
                }
            }
            Ok(PatternOutcome {
                epsilon_mask: base.mask(),
                converges,
                final_distance,
                cells,
            })
        })
        .collect::<Result<_>>()?;
    Ok(SweepReport {
        base_two_s,
        ladder_two_s: ladder.iter().map(|s| s.twice()).collect(),
        n_list: n_list.to_vec(),
        convergence_gate: SWEEP_GATE,
        patterns,
    })
}

/// One-time routing check: at moderate spins the recursion chain, the
/// closed-form coupling coefficients, and the reflection phase must agree
/// to near machine precision before any large-spin evaluation is trusted.
fn ensure_coupling_consistency() -> Result<()> {
    static CHECK: OnceLock<std::result::Result<(), String>> = OnceLock::new();
    CHECK
        .get_or_init(|| {
            for ts in [7i64, 10] {
                let s = HalfInt::from_twice(ts);
                for l in 0..=ts {
                    let jl = HalfInt::from_int(l);
                    let values = chain(s, l, ts as usize);
                    for (n, &by_chain) in values.iter().enumerate() {
                        let m = HalfInt::from_twice(ts - 2 * n as i64);
                        let w = ((2 * l + 1) as f64 / (ts + 1) as f64).sqrt();
                        let exact = w
                            * clebsch_gordan_exact(s, m, s, -m, jl, HalfInt::from_int(0))
                                .to_f64();
                        if (by_chain - exact).abs() > 1e-12 * exact.abs().max(1.0) {
                            return Err(format!(
                                "recursion chain disagrees with closed form at \
                                 2s = {ts}, l = {l}, n = {n}: {by_chain} vs {exact}"
                            ));
                        }
                        // Reflection onto the kernel-diagonal form of the
                        // same coefficient.
                        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                        let diag_form = sign * (2 * l + 1) as f64 / (ts + 1) as f64
                            * clebsch_gordan(s, m, jl, HalfInt::from_int(0), s, m);
                        if (by_chain - diag_form).abs() > 1e-12 * exact.abs().max(1.0) {
                            return Err(format!(
                                "reflection phase mismatch at 2s = {ts}, l = {l}, n = {n}: \
                                 {by_chain} vs {diag_form}"
                            ));
                        }
                    }
                }
            }
            Ok(())
        })
        .clone()
        .map_err(Error::Precondition)
}
