//! Browser bindings: a thin wasm surface over the library for the static
//! demo page in `www/`.
//!
//! Exported signatures stick to plain vectors, strings, and numbers so the
//! same functions compile and test natively; errors cross the boundary as
//! strings.

use wasm_bindgen::prelude::*;

use phase_contract::cg::{clebsch_gordan_exact, validate_state};
use phase_contract::contraction::contraction_sum;
use phase_contract::half::HalfInt;
use phase_contract::io::format_f64;
use phase_contract::linalg::{C64, CMat};
use phase_contract::particle_kernel::{wigner_function, FockSpace, PhasePoint};
use phase_contract::spin_kernel::SignPattern;

/// Hard caps keeping a single interaction comfortably below a second.
const MAX_N_MAX: usize = 128;
const MAX_GRID: usize = 201;
const MAX_TWO_S: i64 = 4096;

/// Wigner function of a chosen pure state on a square `grid x grid` of
/// phase-space points spanning `[-q_max, q_max]` on both axes, flattened
/// row-major with `q` as the outer coordinate.
///
/// `state` selects the family: `"fock"` uses the occupation `fock_n`;
/// `"coherent"` the amplitude `beta = beta_re + i beta_im`; `"cat"` the even
/// superposition of `beta` and `-beta`.
#[wasm_bindgen]
pub fn particle_wigner_field(
    state: &str,
    beta_re: f64,
    beta_im: f64,
    fock_n: u32,
    n_max: usize,
    q_max: f64,
    grid: usize,
) -> Result<Vec<f64>, String> {
    if n_max == 0 || n_max > MAX_N_MAX {
        return Err(format!("n_max must be in 1..={MAX_N_MAX}, got {n_max}"));
    }
    if !(2..=MAX_GRID).contains(&grid) {
        return Err(format!("grid must be in 2..={MAX_GRID}, got {grid}"));
    }
    if !q_max.is_finite() || q_max <= 0.0 {
        return Err(format!("q_max must be positive, got {q_max}"));
    }
    let coeffs = state_vector(state, C64::new(beta_re, beta_im), fock_n, n_max)?;
    let dim = n_max + 1;
    let mut rho = CMat::zeros((dim, dim));
    for (i, a) in coeffs.iter().enumerate() {
        for (j, b) in coeffs.iter().enumerate() {
            rho[[i, j]] = a * b.conj();
        }
    }
    let step = 2.0 * q_max / (grid - 1) as f64;
    let mut points = Vec::with_capacity(grid * grid);
    for iq in 0..grid {
        for ip in 0..grid {
            points.push(PhasePoint::from_qp(
                -q_max + step * iq as f64,
                -q_max + step * ip as f64,
            ));
        }
    }
    wigner_function(&rho, FockSpace::new(n_max), &points).map_err(|e| e.to_string())
}

/// Distances `|S(s, n) - 2|` of the contraction sum along a ladder of
/// doubled spins, for the sign pattern given by `mask` (read at the base
/// spin `2s = mask.len()` and tiled up; an empty mask means all-plus).
#[wasm_bindgen]
pub fn contraction_distance_curve(
    mask: &str,
    n: u32,
    ladder: Vec<u32>,
) -> Result<Vec<f64>, String> {
    let base = HalfInt::from_twice(mask.len() as i64);
    let pattern = SignPattern::from_mask(base, mask).map_err(|e| e.to_string())?;
    ladder
        .iter()
        .map(|&ts| {
            if i64::from(ts) > MAX_TWO_S {
                return Err(format!("ladder spin 2s = {ts} exceeds {MAX_TWO_S}"));
            }
            let s = HalfInt::from_twice(i64::from(ts));
            let table = contraction_sum(s, n as usize, &pattern.tile_to(s))
                .map_err(|e| e.to_string())?;
            Ok((table.total - 2.0).abs())
        })
        .collect()
}

/// One Clebsch-Gordan coefficient from doubled quantum numbers, as a
/// display string: the exact radical followed by its float value.
#[wasm_bindgen]
pub fn clebsch_gordan_text(
    two_j1: i32,
    two_m1: i32,
    two_j2: i32,
    two_m2: i32,
    two_j: i32,
    two_m: i32,
) -> Result<String, String> {
    let h = |t: i32| HalfInt::from_twice(i64::from(t));
    let (j1, m1) = (h(two_j1), h(two_m1));
    let (j2, m2) = (h(two_j2), h(two_m2));
    let (j, m) = (h(two_j), h(two_m));
    for (jj, mm) in [(j1, m1), (j2, m2), (j, m)] {
        validate_state(jj, mm).map_err(|e| e.to_string())?;
    }
    let exact = clebsch_gordan_exact(j1, m1, j2, m2, j, m);
    if exact.is_zero() {
        return Ok("0 (selection rule)".to_string());
    }
    Ok(format!("{exact} = {}", format_f64(exact.to_f64())))
}

/// Fock-basis coefficients of the requested pure state, normalized.
fn state_vector(
    state: &str,
    beta: C64,
    fock_n: u32,
    n_max: usize,
) -> Result<Vec<C64>, String> {
    let dim = n_max + 1;
    match state {
        "fock" => {
            let n = fock_n as usize;
            if n > n_max {
                return Err(format!("fock_n = {n} exceeds n_max = {n_max}"));
            }
            let mut v = vec![C64::new(0.0, 0.0); dim];
            v[n] = C64::new(1.0, 0.0);
            Ok(v)
        }
        "coherent" => Ok(coherent_coefficients(beta, n_max)),
        "cat" => {
            // The even superposition never degenerates: its squared norm is
            // 2 (1 + e^(-2 |beta|^2)) >= 2, with beta = 0 giving the vacuum.
            let plus = coherent_coefficients(beta, n_max);
            let minus = coherent_coefficients(-beta, n_max);
            let mut v: Vec<C64> = plus
                .iter()
                .zip(&minus)
                .map(|(a, b)| a + b)
                .collect();
            let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            for z in &mut v {
                *z /= norm;
            }
            Ok(v)
        }
        other => Err(format!(
            "unknown state {other:?}; use \"fock\", \"coherent\", or \"cat\""
        )),
    }
}

/// Truncated coherent-state coefficients `e^(-|b|^2/2) b^n / sqrt(n!)`.
fn coherent_coefficients(beta: C64, n_max: usize) -> Vec<C64> {
    let mut v = Vec::with_capacity(n_max + 1);
    let mut c = C64::new((-0.5 * beta.norm_sqr()).exp(), 0.0);
    v.push(c);
    for n in 1..=n_max {
        c *= beta / (n as f64).sqrt();
        v.push(c);
    }
    v
}
