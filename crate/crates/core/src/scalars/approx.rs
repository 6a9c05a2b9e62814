//! Floating complex numbers compared only through a tolerance.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num::complex::Complex64;

pub const DEFAULT_TOL: f64 = 1e-9;

/// A complex double. There is deliberately no `PartialEq`; use
/// [`ApproxComplex::approx_eq`] or [`ApproxComplex::approx_eq_tol`].
#[derive(Clone, Copy, Debug, Default)]
pub struct ApproxComplex(pub Complex64);

impl ApproxComplex {
    pub fn new(re: f64, im: f64) -> Self {
        ApproxComplex(Complex64::new(re, im))
    }

    pub fn re(&self) -> f64 {
        self.0.re
    }

    pub fn im(&self) -> f64 {
        self.0.im
    }

    /// e^{iθ}.
    pub fn cis(theta: f64) -> Self {
        ApproxComplex(Complex64::from_polar(1.0, theta))
    }

    pub fn norm(&self) -> f64 {
        self.0.norm()
    }

    pub fn conj(&self) -> Self {
        ApproxComplex(self.0.conj())
    }

    pub fn approx_eq_tol(&self, other: &Self, tol: f64) -> bool {
        (self.0 - other.0).norm() <= tol
    }

    pub fn approx_eq(&self, other: &Self) -> bool {
        self.approx_eq_tol(other, DEFAULT_TOL)
    }

    pub fn is_zero_tol(&self, tol: f64) -> bool {
        self.0.norm() <= tol
    }

    pub fn is_zero(&self) -> bool {
        self.is_zero_tol(DEFAULT_TOL)
    }
}

impl From<Complex64> for ApproxComplex {
    fn from(z: Complex64) -> Self {
        ApproxComplex(z)
    }
}

impl From<ApproxComplex> for Complex64 {
    fn from(z: ApproxComplex) -> Self {
        z.0
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident) => {
        impl $tr for ApproxComplex {
            type Output = ApproxComplex;
            fn $m(self, rhs: ApproxComplex) -> ApproxComplex {
                ApproxComplex(self.0.$m(rhs.0))
            }
        }
    };
}
binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl Neg for ApproxComplex {
    type Output = ApproxComplex;
    fn neg(self) -> ApproxComplex {
        ApproxComplex(-self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tolerance_policy() {
        let a = ApproxComplex::new(1.0, 0.0);
        let b = ApproxComplex::new(1.0 + 1e-11, -1e-11);
        assert!(a.approx_eq(&b));
        assert!(!a.approx_eq_tol(&b, 1e-12));
        assert!((a - b).is_zero());
        assert!(ApproxComplex::cis(std::f64::consts::PI).approx_eq(&ApproxComplex::new(-1.0, 0.0)));
    }
}
