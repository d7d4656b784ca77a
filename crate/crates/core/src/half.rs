//! Half-integer quantum numbers stored as doubled integers.

use std::fmt;
use std::ops::{Add, Neg, Sub};

/// An angular-momentum quantum number (a `j` or an `m`) stored as `2j`,
/// so half-integer values stay exact and illegal fractions are
/// unrepresentable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInt {
    twice: i64,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { twice: 0 };
    pub const HALF: HalfInt = HalfInt { twice: 1 };
    pub const ONE: HalfInt = HalfInt { twice: 2 };

    /// Value from its doubled representation: `from_twice(3)` is `3/2`.
    pub const fn from_twice(twice: i64) -> Self {
        HalfInt { twice }
    }

    /// Value from a whole integer.
    pub const fn from_int(n: i64) -> Self {
        HalfInt { twice: 2 * n }
    }

    pub const fn twice(self) -> i64 {
        self.twice
    }

    pub fn as_f64(self) -> f64 {
        self.twice as f64 / 2.0
    }

    pub const fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    pub const fn is_negative(self) -> bool {
        self.twice < 0
    }

    pub fn abs(self) -> Self {
        HalfInt {
            twice: self.twice.abs(),
        }
    }

    /// `4 j (j + 1)`, always an integer.
    pub const fn casimir_times_four(self) -> i64 {
        self.twice * (self.twice + 2)
    }

    /// Hilbert-space dimension `2j + 1`. Panics for negative `j`.
    pub fn dimension(self) -> usize {
        assert!(self.twice >= 0, "dimension of negative j");
        (self.twice + 1) as usize
    }

    /// Whether `m` is a valid magnetic number for this `j`:
    /// `|m| <= j` and `j - m` integral.
    pub fn contains_magnetic(self, m: HalfInt) -> bool {
        m.twice.abs() <= self.twice && (self.twice - m.twice) % 2 == 0
    }

    /// Basis index of `m` under the descending convention `m = j, j-1, ..., -j`.
    pub fn index_of(self, m: HalfInt) -> usize {
        debug_assert!(self.contains_magnetic(m));
        ((self.twice - m.twice) / 2) as usize
    }

    /// Magnetic number at basis `index` under the same convention.
    pub fn magnetic_at(self, index: usize) -> HalfInt {
        HalfInt {
            twice: self.twice - 2 * index as i64,
        }
    }

    /// All magnetic numbers in descending order `j, j-1, ..., -j`.
    pub fn magnetics(self) -> impl Iterator<Item = HalfInt> {
        let j = self;
        (0..self.dimension()).map(move |i| j.magnetic_at(i))
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt {
            twice: self.twice + rhs.twice,
        }
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt {
            twice: self.twice - rhs.twice,
        }
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt { twice: -self.twice }
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twice % 2 == 0 {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indexing_is_descending() {
        let s = HalfInt::from_twice(3); // s = 3/2
        assert_eq!(s.dimension(), 4);
        assert_eq!(s.magnetic_at(0), HalfInt::from_twice(3));
        assert_eq!(s.magnetic_at(3), HalfInt::from_twice(-3));
        assert_eq!(s.index_of(HalfInt::from_twice(1)), 1);
        let ms: Vec<i64> = s.magnetics().map(|m| m.twice()).collect();
        assert_eq!(ms, vec![3, 1, -1, -3]);
    }

    #[test]
    fn magnetic_validity() {
        let j = HalfInt::from_int(1);
        assert!(j.contains_magnetic(HalfInt::from_int(-1)));
        assert!(!j.contains_magnetic(HalfInt::HALF));
        assert!(!j.contains_magnetic(HalfInt::from_int(2)));
    }

    #[test]
    fn display_shows_halves() {
        assert_eq!(HalfInt::from_twice(3).to_string(), "3/2");
        assert_eq!(HalfInt::from_twice(-1).to_string(), "-1/2");
        assert_eq!(HalfInt::from_int(2).to_string(), "2");
    }
}
