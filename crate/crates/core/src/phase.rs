//! Exact roots of unity.
//!
//! A [`Phase`] is `exp(2πi·e/N)` held as the integer pair `(N, e)` with
//! `0 ≤ e < N`. Products keep the lcm of the two orders, so every value
//! built from a fixed set of orders lives over a common denominator and
//! equality is integer comparison.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Mul, MulAssign};

use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Ratio;

use crate::error::{Error, Result};

/// `exp(2πi·exponent/order)`.
#[derive(Clone, Copy, Debug)]
pub struct Phase {
    order: u64,
    exponent: u64,
}

/// Builds `exp(2πi·e/n)`, reducing the exponent mod `n`.
pub fn root_of_unity(n: u64, e: i64) -> Result<Phase> {
    Phase::new(n, e)
}

impl Phase {
    pub const ONE: Phase = Phase { order: 1, exponent: 0 };

    pub fn new(order: u64, exponent: i64) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidOrder(0));
        }
        Ok(Self {
            order,
            exponent: exponent.rem_euclid(order as i64) as u64,
        })
    }

    /// Infallible constructor for internal use where `order > 0` is known.
    pub(crate) fn of(order: u64, exponent: i64) -> Self {
        debug_assert!(order > 0);
        Self {
            order,
            exponent: exponent.rem_euclid(order as i64) as u64,
        }
    }

    /// `exp(2πi·t)` for a rational number of turns `t`.
    pub fn from_turns(turns: Ratio<i64>) -> Self {
        let den = *turns.denom();
        let num = *turns.numer();
        debug_assert!(den > 0);
        Self::of(den as u64, num)
    }

    /// `-1`.
    pub fn minus_one() -> Self {
        Self { order: 2, exponent: 1 }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    /// The value as a fraction of a full turn, in lowest terms within `[0, 1)`.
    pub fn turns(&self) -> Ratio<i64> {
        Ratio::new(self.exponent as i64, self.order as i64)
    }

    /// The same value expressed over the smallest possible order.
    pub fn reduced(&self) -> Self {
        let g = self.exponent.gcd(&self.order);
        Self {
            order: self.order / g,
            exponent: self.exponent / g,
        }
    }

    /// Exponent of this value over `order`, if `order` is a multiple of the
    /// reduced order.
    pub fn exponent_over(&self, order: u64) -> Option<u64> {
        let r = self.reduced();
        if order == 0 || order % r.order != 0 {
            return None;
        }
        Some(r.exponent * (order / r.order))
    }

    pub fn conj(&self) -> Self {
        Self {
            order: self.order,
            exponent: (self.order - self.exponent) % self.order,
        }
    }

    pub fn pow(&self, n: i64) -> Self {
        let m = self.order as i128;
        let e = (self.exponent as i128 * n as i128).rem_euclid(m);
        Self {
            order: self.order,
            exponent: e as u64,
        }
    }

    pub fn is_one(&self) -> bool {
        self.exponent == 0
    }

    pub fn eval(&self) -> Complex64 {
        let r = self.reduced();
        // Exact values on the axes avoid sin/cos round-off in golden comparisons.
        match (r.order, r.exponent) {
            (1, _) => Complex64::new(1.0, 0.0),
            (2, 1) => Complex64::new(-1.0, 0.0),
            (4, 1) => Complex64::new(0.0, 1.0),
            (4, 3) => Complex64::new(0.0, -1.0),
            _ => {
                let theta = std::f64::consts::TAU * r.exponent as f64 / r.order as f64;
                Complex64::new(theta.cos(), theta.sin())
            }
        }
    }
}

impl PartialEq for Phase {
    fn eq(&self, other: &Self) -> bool {
        self.exponent as u128 * other.order as u128 == other.exponent as u128 * self.order as u128
    }
}

impl Eq for Phase {}

impl Hash for Phase {
    fn hash<H: Hasher>(&self, state: &mut H) {
        let r = self.reduced();
        r.order.hash(state);
        r.exponent.hash(state);
    }
}

impl Mul for Phase {
    type Output = Phase;

    fn mul(self, rhs: Phase) -> Phase {
        let order = self.order.lcm(&rhs.order);
        let e = self.exponent as u128 * (order / self.order) as u128
            + rhs.exponent as u128 * (order / rhs.order) as u128;
        Phase {
            order,
            exponent: (e % order as u128) as u64,
        }
    }
}

impl MulAssign for Phase {
    fn mul_assign(&mut self, rhs: Phase) {
        *self = *self * rhs;
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent == 0 {
            write!(f, "1")
        } else {
            write!(f, "exp(2πi·{}/{})", self.exponent, self.order)
        }
    }
}
