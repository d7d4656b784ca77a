//! Exact signed square roots of rationals.
//!
//! Clebsch-Gordan coefficients are square roots of rationals, so a value is
//! stored as a single signed ratio `r` meaning `sign(r) * sqrt(|r|)`.
//! Products stay closed; sums are only attempted when both operands share a
//! radical up to a perfect rational square, which is exactly the situation in
//! recurrence-residual checks.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// `sign(ratio) * sqrt(|ratio|)`, carried exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SqrtRational {
    ratio: BigRational,
}

impl SqrtRational {
    pub fn zero() -> Self {
        SqrtRational {
            ratio: BigRational::zero(),
        }
    }

    /// `coeff * sqrt(radicand)`; `radicand` must be non-negative.
    pub fn new(coeff: BigRational, radicand: BigRational) -> Self {
        assert!(!radicand.is_negative(), "negative radicand");
        let sign_sq = &coeff * &coeff * &radicand;
        SqrtRational {
            ratio: if coeff.is_negative() { -sign_sq } else { sign_sq },
        }
    }

    pub fn from_rational(value: BigRational) -> Self {
        let sq = &value * &value;
        SqrtRational {
            ratio: if value.is_negative() { -sq } else { sq },
        }
    }

    pub fn from_integer(value: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(value)))
    }

    /// The signed squared value `sign * value^2`.
    pub fn signed_square(&self) -> &BigRational {
        &self.ratio
    }

    pub fn is_zero(&self) -> bool {
        self.ratio.is_zero()
    }

    pub fn signum(&self) -> i8 {
        if self.ratio.is_zero() {
            0
        } else if self.ratio.is_negative() {
            -1
        } else {
            1
        }
    }

    pub fn neg(&self) -> Self {
        SqrtRational {
            ratio: -self.ratio.clone(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        SqrtRational {
            ratio: &self.ratio * &rhs.ratio,
        }
    }

    pub fn mul_rational(&self, q: &BigRational) -> Self {
        let sq = q * q;
        SqrtRational {
            ratio: if q.is_negative() {
                -(&self.ratio * sq)
            } else {
                &self.ratio * sq
            },
        }
    }

    /// Exact sum, available only when `|rhs| / |self|` is a perfect rational
    /// square (the two values live on a common radical).
    pub fn try_add(&self, rhs: &Self) -> Option<Self> {
        if self.is_zero() {
            return Some(rhs.clone());
        }
        if rhs.is_zero() {
            return Some(self.clone());
        }
        let base = self.ratio.abs();
        let ratio = rhs.ratio.abs() / &base;
        let t = perfect_square_root(&ratio)?;
        // self = s1 * sqrt(base), rhs = s2 * t * sqrt(base)
        let mut coeff = BigRational::from_integer(BigInt::from(self.signum()));
        coeff += BigRational::from_integer(BigInt::from(rhs.signum())) * t;
        Some(SqrtRational::new(coeff, base))
    }

    pub fn to_f64(&self) -> f64 {
        if self.ratio.is_zero() {
            return 0.0;
        }
        let sign = f64::from(self.signum());
        let num = self.ratio.numer().magnitude();
        let den = self.ratio.denom().magnitude();
        sign * (0.5 * (ln_biguint(num) - ln_biguint(den))).exp()
    }
}

impl fmt::Display for SqrtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ratio.is_zero() {
            return write!(f, "0");
        }
        let sign = if self.ratio.is_negative() { "-" } else { "" };
        write!(f, "{sign}sqrt({})", self.ratio.abs())
    }
}

/// `sqrt(q)` as an exact rational if `q` is a perfect square, else `None`.
fn perfect_square_root(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let num = q.numer().magnitude();
    let den = q.denom().magnitude();
    let rn = num.sqrt();
    if &(&rn * &rn) != num {
        return None;
    }
    let rd = den.sqrt();
    if &(&rd * &rd) != den {
        return None;
    }
    Some(BigRational::new(
        BigInt::from(rn),
        BigInt::from(rd),
    ))
}

/// Natural log of an arbitrarily large positive integer.
fn ln_biguint(n: &BigUint) -> f64 {
    if let Some(x) = n.to_f64() {
        if x.is_finite() && x > 0.0 {
            return x.ln();
        }
    }
    // Keep the leading 64 bits, account for the discarded ones as powers of 2.
    let bits = n.bits();
    let shift = bits - 64;
    let top = (n >> shift).to_u64().expect("64-bit window");
    (top as f64).ln() + shift as f64 * std::f64::consts::LN_2
}
