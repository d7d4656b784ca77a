//! The acceptance gate: eleven self-contained checks covering the whole
//! pipeline, from coupling-coefficient identities to the large-spin limit.
//!
//! Each criterion reports pass/fail with a one-line quantitative detail, so
//! a runner (test target or CLI) can print a verdict per criterion.  The
//! tolerances here are frozen; loosening one to make a run pass defeats the
//! point of the gate.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cg::clebsch_gordan_exact;
use crate::contraction::{
    contraction_sum, epsilon_sweep, exhaustive_patterns, kernel_block_compare,
    laguerre_integral, lambda_recursion, recursion_residual_float,
    recursion_residuals_rounded, seed_asymptotic, seed_exact, SWEEP_GATE,
};
use crate::half::HalfInt;
use crate::laguerre::laguerre_standard;
use crate::linalg::{dagger, max_abs_diff, C64, CMat};
use crate::particle_kernel::{
    fock_operators, kernel_diagonal, parity, particle_kernel, wigner_function,
    wigner_integral_check, FockSpace, PhasePoint,
};
use crate::spin_kernel::{audit_postulates, KernelSpace, SignPattern};
use crate::sphere::SpherePoint;
use crate::sqrt_rational::SqrtRational;

/// Outcome of one acceptance criterion.
#[derive(Clone, Debug, Serialize)]
pub struct CriterionOutcome {
    pub index: usize,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

impl CriterionOutcome {
    fn new(index: usize, name: &'static str, pass: bool, detail: String) -> Self {
        CriterionOutcome {
            index,
            name,
            pass,
            detail,
        }
    }

    /// The one-line verdict a runner prints.
    pub fn line(&self) -> String {
        format!(
            "criterion {:02} [{}] {} — {}",
            self.index,
            if self.pass { "PASS" } else { "FAIL" },
            self.name,
            self.detail
        )
    }
}

fn h(t: i64) -> HalfInt {
    HalfInt::from_twice(t)
}

/// 1. The all-plus contraction sums approach 2 along the spin ladder
///    `s = 100, 200, 400` for `n = 0..=3`: distances strictly decreasing
///    and the final one below 0.05.
pub fn criterion_01_contraction_ladder() -> CriterionOutcome {
    const NAME: &str = "all-plus contraction sums approach 2";
    let started = std::time::Instant::now();
    let base = SignPattern::all_plus(h(0));
    let mut pass = true;
    let mut worst_final = 0.0f64;
    let mut detail = String::new();
    for n in 0..=3usize {
        let mut previous = f64::INFINITY;
        for &spin in &[100i64, 200, 400] {
            let s = HalfInt::from_int(spin);
            let total = match contraction_sum(s, n, &base.tile_to(s)) {
                Ok(t) => t.total,
                Err(e) => {
                    return CriterionOutcome::new(1, NAME, false, format!("error: {e}"));
                }
            };
            let distance = (total - 2.0).abs();
            if distance >= previous {
                pass = false;
                detail = format!("distance not decreasing at s = {spin}, n = {n}");
            }
            previous = distance;
            if spin == 400 {
                worst_final = worst_final.max(distance);
            }
        }
    }
    if worst_final >= 0.05 {
        pass = false;
    }
    let elapsed = started.elapsed();
    if elapsed > std::time::Duration::from_secs(60) {
        pass = false;
        detail = format!("exceeded the 60 s budget ({elapsed:.1?})");
    }
    if detail.is_empty() {
        detail = format!(
            "worst |S(400, n) - 2| = {worst_final:.3e} (gate 0.05) in {elapsed:.1?}"
        );
    }
    CriterionOutcome::new(1, NAME, pass, detail)
}

/// 2. `Int_0^inf L_n(x) e^(-x/t) dx = t (1-t)^n` to relative 1e-8 for
///    `n <= 10`, `t in {0.5, 1, 2}`.
pub fn criterion_02_laguerre_integral() -> CriterionOutcome {
    const NAME: &str = "Laguerre transform matches t(1-t)^n";
    let mut worst = 0.0f64;
    for n in 0..=10usize {
        for &t in &[0.5f64, 1.0, 2.0] {
            let want = t * (1.0 - t).powi(n as i32);
            let got = match laguerre_integral(n, t) {
                Ok(v) => v,
                Err(e) => return CriterionOutcome::new(2, NAME, false, format!("error: {e}")),
            };
            worst = worst.max((got - want).abs() / want.abs().max(1.0));
        }
    }
    CriterionOutcome::new(
        2,
        NAME,
        worst < 1e-8,
        format!("worst relative deviation {worst:.3e} (gate 1e-8)"),
    )
}

/// 3. The recursion polynomials equal `(-1)^n L_n(x)` to relative 1e-10
///    for `n <= 15` at `x in {0.1, 1, 5, 20}`.
pub fn criterion_03_lambda_polynomials() -> CriterionOutcome {
    const NAME: &str = "limit polynomials equal signed Laguerre";
    let mut worst = 0.0f64;
    for &x in &[0.1f64, 1.0, 5.0, 20.0] {
        let lam = lambda_recursion(15, x);
        for (n, &v) in lam.iter().enumerate() {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            let want = sign * laguerre_standard(n as u32, x);
            worst = worst.max((v - want).abs() / want.abs().max(1.0));
        }
    }
    CriterionOutcome::new(
        3,
        NAME,
        worst < 1e-10,
        format!("worst relative deviation {worst:.3e} (gate 1e-10)"),
    )
}

/// 4. The three-term identity for the edge-coupled coefficients holds
///    exactly in radical-rational arithmetic for `s <= 6` and with float
///    residual below 1e-10 up to `s = 50` — directly summed coefficients
///    where that evaluator is accurate, exactly-computed-then-rounded
///    coefficients beyond.
pub fn criterion_04_coupling_recursion() -> CriterionOutcome {
    const NAME: &str = "coupling recursion identity (exact + float)";
    // Exact half: every (l, m) at every s <= 6 must cancel to literal zero.
    for ts in 0..=12i64 {
        let s = h(ts);
        for l in 0..=ts {
            let jl = HalfInt::from_int(l);
            for tm in (-ts..=ts).step_by(2) {
                let m = h(tm);
                let quarter = |num: i64| BigRational::new(BigInt::from(num), BigInt::from(4));
                let cg = |mm: HalfInt| -> SqrtRational {
                    if s.contains_magnetic(mm) {
                        clebsch_gordan_exact(s, mm, s, -mm, jl, h(0))
                    } else {
                        SqrtRational::zero()
                    }
                };
                let a = quarter(4 * l * (l + 1) - 2 * ts * (ts + 2) + 2 * tm * tm);
                let b = quarter(ts * (ts + 2) - tm * (tm + 2));
                let d = quarter(ts * (ts + 2) - tm * (tm - 2));
                let lhs = cg(m).mul_rational(&a).neg();
                let t1 = cg(h(tm + 2)).mul_rational(&b);
                let t2 = cg(h(tm - 2)).mul_rational(&d);
                let Some(partial) = t1.try_add(&t2) else {
                    return CriterionOutcome::new(
                        4,
                        NAME,
                        false,
                        format!("incommensurable radicals at 2s = {ts}, l = {l}, 2m = {tm}"),
                    );
                };
                let Some(residual) = partial.try_add(&lhs) else {
                    return CriterionOutcome::new(
                        4,
                        NAME,
                        false,
                        format!("incommensurable radicals at 2s = {ts}, l = {l}, 2m = {tm}"),
                    );
                };
                if !residual.is_zero() {
                    return CriterionOutcome::new(
                        4,
                        NAME,
                        false,
                        format!("nonzero exact residual at 2s = {ts}, l = {l}, 2m = {tm}"),
                    );
                }
            }
        }
    }
    // Float half.  Up to 2s = 12 the direct log-domain evaluator is still
    // accurate and the residual checks evaluator and identity together.
    let mut worst_direct = 0.0f64;
    for ts in 1..=12i64 {
        let s = h(ts);
        for l in 0..=ts {
            for tm in (-ts..=ts).step_by(2) {
                match recursion_residual_float(s, l, h(tm)) {
                    Ok(r) => worst_direct = worst_direct.max(r),
                    Err(e) => {
                        return CriterionOutcome::new(4, NAME, false, format!("error: {e}"))
                    }
                }
            }
        }
    }
    // Beyond that the summed evaluator's own cancellation would swamp the
    // identity, so the coefficients are computed exactly and rounded once;
    // what remains under test is the identity in f64 arithmetic, up to the
    // endpoint s = 50.
    let mut worst_rounded = 0.0f64;
    for &ts in &[20i64, 49, 100] {
        let s = h(ts);
        for l in 0..=ts {
            match recursion_residuals_rounded(s, l) {
                Ok(rs) => {
                    for r in rs {
                        worst_rounded = worst_rounded.max(r);
                    }
                }
                Err(e) => return CriterionOutcome::new(4, NAME, false, format!("error: {e}")),
            }
        }
    }
    let worst = worst_direct.max(worst_rounded);
    CriterionOutcome::new(
        4,
        NAME,
        worst < 1e-10,
        format!(
            "exact residuals all zero; float worst {worst_direct:.3e} direct (2s <= 12), \
             {worst_rounded:.3e} rounded-exact (2s <= 100), gate 1e-10"
        ),
    )
}

/// 5. The Gaussian large-spin form of the `n = 0` term is accurate to
///    relative `5/s` at `s = 200` for `l <= sqrt(s)`.
pub fn criterion_05_seed_asymptotics() -> CriterionOutcome {
    const NAME: &str = "edge-term asymptotics";
    let s = HalfInt::from_int(200);
    let gate = 5.0 / 200.0;
    let mut worst = 0.0f64;
    for l in 0..=14i64 {
        let exact = match seed_exact(s, l) {
            Ok(v) => v,
            Err(e) => return CriterionOutcome::new(5, NAME, false, format!("error: {e}")),
        };
        let rel = ((seed_asymptotic(s, l) - exact) / exact).abs();
        worst = worst.max(rel);
    }
    CriterionOutcome::new(
        5,
        NAME,
        worst < gate,
        format!("worst relative error {worst:.3e} (gate {gate:.3e})"),
    )
}

/// 6. Every sign pattern with `2s <= 4` (exhaustively) and 20 random
///    patterns at `s = 4` pass the postulate audit with roundtrip below
///    1e-10; the rotation-by-pi negative control fails with roundtrip
///    above 1e-3.
pub fn criterion_06_postulate_audit() -> CriterionOutcome {
    const NAME: &str = "postulate audit across sign patterns";
    let mut worst_roundtrip = 0.0f64;
    let mut audited = 0usize;
    for ts in 0..=4i64 {
        let patterns = match exhaustive_patterns(h(ts)) {
            Ok(p) => p,
            Err(e) => return CriterionOutcome::new(6, NAME, false, format!("error: {e}")),
        };
        for pattern in patterns {
            match audit_postulates(&pattern, 3, 1_000 + ts as u64, false) {
                Ok(report) => {
                    worst_roundtrip = worst_roundtrip.max(report.roundtrip);
                    if !report.pass || report.roundtrip >= 1e-10 {
                        return CriterionOutcome::new(
                            6,
                            NAME,
                            false,
                            format!(
                                "audit failed at 2s = {ts}, mask {} (roundtrip {:.3e})",
                                report.epsilon_mask, report.roundtrip
                            ),
                        );
                    }
                }
                Err(e) => return CriterionOutcome::new(6, NAME, false, format!("error: {e}")),
            }
            audited += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for k in 0..20u64 {
        let pattern = SignPattern::random(h(8), &mut rng);
        match audit_postulates(&pattern, 2, 7_000 + k, false) {
            Ok(report) => {
                worst_roundtrip = worst_roundtrip.max(report.roundtrip);
                if !report.pass || report.roundtrip >= 1e-10 {
                    return CriterionOutcome::new(
                        6,
                        NAME,
                        false,
                        format!(
                            "random audit failed for mask {} (roundtrip {:.3e})",
                            report.epsilon_mask, report.roundtrip
                        ),
                    );
                }
            }
            Err(e) => return CriterionOutcome::new(6, NAME, false, format!("error: {e}")),
        }
        audited += 1;
    }
    let control = match audit_postulates(&SignPattern::all_plus(h(4)), 2, 5, true) {
        Ok(r) => r,
        Err(e) => return CriterionOutcome::new(6, NAME, false, format!("error: {e}")),
    };
    let control_ok = !control.pass && control.roundtrip > 1e-3;
    CriterionOutcome::new(
        6,
        NAME,
        control_ok,
        format!(
            "{audited} audits passed, worst roundtrip {worst_roundtrip:.3e}; \
             negative control roundtrip {:.3e} (must exceed 1e-3)",
            control.roundtrip
        ),
    )
}

/// 7. The rotation route and the direct sum agree entrywise to 1e-10 over
///    50 random (spin, pattern, point) draws with `s <= 4`.
pub fn criterion_07_rotation_route() -> CriterionOutcome {
    const NAME: &str = "rotation route equals direct sum";
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut worst = 0.0f64;
    for draw in 0..50usize {
        let ts = 1 + (draw as i64 % 8); // cycle 2s = 1..=8
        let s = h(ts);
        let pattern = SignPattern::random(s, &mut rng);
        let theta = rng.gen_range(0.0..std::f64::consts::PI);
        let phi = rng.gen_range(0.0..2.0 * std::f64::consts::PI);
        let point = SpherePoint::new(theta, phi);
        let space = KernelSpace::new(pattern);
        let direct = match space.kernel_at(point) {
            Ok(k) => k.matrix,
            Err(e) => return CriterionOutcome::new(7, NAME, false, format!("error: {e}")),
        };
        let rotated = match space.kernel_via_rotation(point) {
            Ok(k) => k.matrix,
            Err(e) => return CriterionOutcome::new(7, NAME, false, format!("error: {e}")),
        };
        worst = worst.max(max_abs_diff(&direct, &rotated));
    }
    CriterionOutcome::new(
        7,
        NAME,
        worst < 1e-10,
        format!("worst entrywise deviation {worst:.3e} over 50 draws (gate 1e-10)"),
    )
}

/// 8. Particle-side identities: `Delta(0) = 2 Pi` exactly; the diagonal
///    closed form holds to 1e-8 at `n_max = 60` for `|alpha| <= 1`; parity
///    conjugation flips the ladder operator to 1e-12.
pub fn criterion_08_particle_identities() -> CriterionOutcome {
    const NAME: &str = "particle kernel identities";
    let space = FockSpace::new(60);
    let at_zero = particle_kernel(space, PhasePoint::new(C64::new(0.0, 0.0)));
    let twice_parity = parity(space).mapv(|z| 2.0 * z);
    if at_zero != twice_parity {
        return CriterionOutcome::new(8, NAME, false, "Delta(0) != 2 Pi exactly".into());
    }
    let mut worst_diag = 0.0f64;
    for &alpha in &[
        C64::new(0.3, 0.0),
        C64::new(0.0, 0.8),
        C64::new(-0.6, 0.5),
        C64::new(std::f64::consts::FRAC_1_SQRT_2, -std::f64::consts::FRAC_1_SQRT_2),
    ] {
        let kernel = particle_kernel(space, PhasePoint::new(alpha));
        for n in 0..space.converged_dim() {
            worst_diag = worst_diag.max((kernel[[n, n]].re - kernel_diagonal(n, alpha)).abs());
        }
    }
    let (a, _, _) = fock_operators(space);
    let pi = parity(space);
    let reflected = pi.dot(&a).dot(&dagger(&pi));
    let parity_dev = max_abs_diff(&reflected, &a.mapv(|z| -z));
    let pass = worst_diag < 1e-8 && parity_dev < 1e-12;
    CriterionOutcome::new(
        8,
        NAME,
        pass,
        format!(
            "Delta(0) = 2 Pi exact; diagonal closed form worst {worst_diag:.3e} \
             (gate 1e-8); parity reflection {parity_dev:.3e} (gate 1e-12)"
        ),
    )
}

/// 9. The rotated spin kernel converges to the particle kernel on the
///    leading 4x4 block: deviations strictly decreasing over
///    `s = 100, 200, 400` at `alpha = 0.5`.
pub fn criterion_09_block_convergence() -> CriterionOutcome {
    const NAME: &str = "kernel block convergence";
    let base = SignPattern::all_plus(h(0));
    let alpha = C64::new(0.5, 0.0);
    let mut previous = f64::INFINITY;
    let mut last = f64::NAN;
    for &spin in &[100i64, 200, 400] {
        let s = HalfInt::from_int(spin);
        let dev = match kernel_block_compare(s, alpha, 3, &base.tile_to(s), None) {
            Ok(d) => d,
            Err(e) => return CriterionOutcome::new(9, NAME, false, format!("error: {e}")),
        };
        if dev >= previous {
            return CriterionOutcome::new(
                9,
                NAME,
                false,
                format!("deviation not decreasing at s = {spin}: {dev:.3e} >= {previous:.3e}"),
            );
        }
        previous = dev;
        last = dev;
    }
    CriterionOutcome::new(
        9,
        NAME,
        true,
        format!("deviations strictly decreasing, final {last:.3e} at s = 400"),
    )
}

/// 10. Exhaustive sweep of all 16 base patterns at `2s = 4` over the spin
///     ladder 50..400: exactly the all-plus pattern earns CONVERGES.
pub fn criterion_10_uniqueness_sweep() -> CriterionOutcome {
    const NAME: &str = "uniqueness of the all-plus pattern";
    let patterns = match exhaustive_patterns(h(4)) {
        Ok(p) => p,
        Err(e) => return CriterionOutcome::new(10, NAME, false, format!("error: {e}")),
    };
    let ladder: Vec<HalfInt> = [100i64, 200, 400, 800].iter().map(|&t| h(t)).collect();
    let report = match epsilon_sweep(&patterns, &ladder, &[0, 1, 2, 3]) {
        Ok(r) => r,
        Err(e) => return CriterionOutcome::new(10, NAME, false, format!("error: {e}")),
    };
    let mut converging: Vec<&str> = Vec::new();
    for outcome in &report.patterns {
        if outcome.converges {
            converging.push(&outcome.epsilon_mask);
        }
    }
    let pass = converging == ["0000"];
    CriterionOutcome::new(
        10,
        NAME,
        pass,
        format!(
            "{} of 16 patterns converge (gate {SWEEP_GATE}): {:?}",
            converging.len(),
            converging
        ),
    )
}

/// 11. The kernel route and the position-integral route to the Wigner
///     function of Fock states `n <= 5` agree to 1e-6 (after the measure
///     map) on a 5x5 phase-space grid.
pub fn criterion_11_dual_wigner() -> CriterionOutcome {
    const NAME: &str = "dual-route Wigner agreement";
    let space = FockSpace::new(48);
    let coords: Vec<f64> = (0..5).map(|k| -2.0 + k as f64).collect();
    let mut worst = 0.0f64;
    for n in 0..=5usize {
        let mut rho = CMat::zeros((space.dim(), space.dim()));
        rho[[n, n]] = C64::new(1.0, 0.0);
        let mut coeffs = vec![C64::new(0.0, 0.0); n + 1];
        coeffs[n] = C64::new(1.0, 0.0);
        for &q in &coords {
            for &p in &coords {
                let point = PhasePoint::from_qp(q, p);
                let by_kernel = match wigner_function(&rho, space, &[point]) {
                    Ok(v) => v[0],
                    Err(e) => {
                        return CriterionOutcome::new(11, NAME, false, format!("error: {e}"))
                    }
                };
                let by_integral = wigner_integral_check(&coeffs, q, p);
                worst = worst
                    .max((by_integral - by_kernel / (2.0 * std::f64::consts::PI)).abs());
            }
        }
    }
    CriterionOutcome::new(
        11,
        NAME,
        worst < 1e-6,
        format!("worst deviation {worst:.3e} over n <= 5 on 5x5 grid (gate 1e-6)"),
    )
}

/// Run all eleven criteria in order.
pub fn run_all() -> Vec<CriterionOutcome> {
    vec![
        criterion_01_contraction_ladder(),
        criterion_02_laguerre_integral(),
        criterion_03_lambda_polynomials(),
        criterion_04_coupling_recursion(),
        criterion_05_seed_asymptotics(),
        criterion_06_postulate_audit(),
        criterion_07_rotation_route(),
        criterion_08_particle_identities(),
        criterion_09_block_convergence(),
        criterion_10_uniqueness_sweep(),
        criterion_11_dual_wigner(),
    ]
}
