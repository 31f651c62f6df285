//! Gaussian integers: exact arithmetic for ray components and inner products.
//!
//! Every vector family here (±1 vectors and joint Pauli eigenbases) has
//! components in {0, ±1, ±i} once a common scale is dropped, so inner
//! products are exact and orthogonality needs no tolerance.

use serde::{Deserialize, Serialize};
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize, PartialOrd, Ord)]
pub struct GaussInt {
    pub re: i64,
    pub im: i64,
}

pub const ZERO: GaussInt = GaussInt { re: 0, im: 0 };
pub const ONE: GaussInt = GaussInt { re: 1, im: 0 };
pub const I: GaussInt = GaussInt { re: 0, im: 1 };

impl GaussInt {
    pub const fn new(re: i64, im: i64) -> Self {
        GaussInt { re, im }
    }

    pub fn is_zero(&self) -> bool {
        self.re == 0 && self.im == 0
    }

    pub fn conj(&self) -> GaussInt {
        GaussInt {
            re: self.re,
            im: -self.im,
        }
    }

    /// Squared magnitude |z|² as an ordinary integer.
    pub fn norm_sq(&self) -> i64 {
        self.re * self.re + self.im * self.im
    }

    /// True when the value is 0, ±1, or ±i.
    pub fn is_unit_or_zero(&self) -> bool {
        self.norm_sq() <= 1
    }
}

impl Add for GaussInt {
    type Output = GaussInt;
    fn add(self, rhs: GaussInt) -> GaussInt {
        GaussInt::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl AddAssign for GaussInt {
    fn add_assign(&mut self, rhs: GaussInt) {
        self.re += rhs.re;
        self.im += rhs.im;
    }
}

impl Sub for GaussInt {
    type Output = GaussInt;
    fn sub(self, rhs: GaussInt) -> GaussInt {
        GaussInt::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Mul for GaussInt {
    type Output = GaussInt;
    fn mul(self, rhs: GaussInt) -> GaussInt {
        GaussInt::new(
            self.re * rhs.re - self.im * rhs.im,
            self.re * rhs.im + self.im * rhs.re,
        )
    }
}

impl Neg for GaussInt {
    type Output = GaussInt;
    fn neg(self) -> GaussInt {
        GaussInt::new(-self.re, -self.im)
    }
}

impl std::fmt::Display for GaussInt {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match (self.re, self.im) {
            (re, 0) => write!(f, "{re}"),
            (0, 1) => write!(f, "i"),
            (0, -1) => write!(f, "-i"),
            (0, im) => write!(f, "{im}i"),
            (re, im) if im > 0 => write!(f, "{re}+{im}i"),
            (re, im) => write!(f, "{re}{im}i"),
        }
    }
}

impl std::fmt::Debug for GaussInt {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        std::fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let a = GaussInt::new(1, 2);
        let b = GaussInt::new(3, -1);
        assert_eq!(a * b, GaussInt::new(5, 5));
        assert_eq!(a + b, GaussInt::new(4, 1));
        assert_eq!(a.conj(), GaussInt::new(1, -2));
        assert_eq!(a.norm_sq(), 5);
        assert_eq!(I * I, -ONE);
    }
}
