//! Forward-mode scalars: dual numbers `a + b·δ` with `δ² = 0`.
//!
//! Arithmetic on the value part is ordinary `f64` arithmetic; the derivative
//! part follows the product and quotient rules. Seeding one input coordinate
//! with derivative 1 and evaluating a map produces one column of its
//! Jacobian, exactly (up to floating-point roundoff) rather than to a
//! difference-quotient truncation error.

use std::ops::{Add, Div, Mul, Neg, Sub};

/// Numbers that the chart maps can be evaluated over: plain `f64` for
/// values, [`Dual`] for values carrying one directional derivative.
pub trait Scalar:
    Copy
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_f64(v: f64) -> Self;
}

impl Scalar for f64 {
    fn from_f64(v: f64) -> Self {
        v
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dual {
    pub val: f64,
    pub der: f64,
}

impl Dual {
    pub fn constant(val: f64) -> Dual {
        Dual { val, der: 0.0 }
    }

    pub fn seeded(val: f64, der: f64) -> Dual {
        Dual { val, der }
    }
}

impl Scalar for Dual {
    fn from_f64(v: f64) -> Self {
        Dual::constant(v)
    }
}

impl Add for Dual {
    type Output = Dual;
    fn add(self, rhs: Dual) -> Dual {
        Dual {
            val: self.val + rhs.val,
            der: self.der + rhs.der,
        }
    }
}

impl Sub for Dual {
    type Output = Dual;
    fn sub(self, rhs: Dual) -> Dual {
        Dual {
            val: self.val - rhs.val,
            der: self.der - rhs.der,
        }
    }
}

impl Mul for Dual {
    type Output = Dual;
    fn mul(self, rhs: Dual) -> Dual {
        Dual {
            val: self.val * rhs.val,
            der: self.val * rhs.der + self.der * rhs.val,
        }
    }
}

impl Div for Dual {
    type Output = Dual;
    fn div(self, rhs: Dual) -> Dual {
        Dual {
            val: self.val / rhs.val,
            der: (self.der * rhs.val - self.val * rhs.der) / (rhs.val * rhs.val),
        }
    }
}

impl Neg for Dual {
    type Output = Dual;
    fn neg(self) -> Dual {
        Dual {
            val: -self.val,
            der: -self.der,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_rule() {
        // f(t) = (3 + t)(2 - 4t) at t = 0: value 6, derivative 2 - 12 = -10.
        let t = Dual::seeded(0.0, 1.0);
        let f = (Dual::constant(3.0) + t) * (Dual::constant(2.0) - Dual::constant(4.0) * t);
        assert_eq!(f.val, 6.0);
        assert_eq!(f.der, -10.0);
    }

    #[test]
    fn quotient_rule() {
        // f(t) = 1 / (2 + t) at t = 1: value 1/3, derivative -1/9.
        let t = Dual::seeded(1.0, 1.0);
        let f = Dual::constant(1.0) / (Dual::constant(2.0) + t);
        assert!((f.val - 1.0 / 3.0).abs() < 1e-15);
        assert!((f.der + 1.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn second_order_terms_vanish() {
        // δ² = 0: squaring a pure derivative leaves nothing.
        let d = Dual::seeded(0.0, 5.0);
        assert_eq!(d * d, Dual::constant(0.0));
    }
}
