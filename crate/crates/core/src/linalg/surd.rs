//! Exact arithmetic in Q(√d) for a fixed positive integer d.

use std::fmt;

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

/// a + b·√d. When d is a perfect square the surd part is folded into a.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadSurd {
    pub a: BigRational,
    pub b: BigRational,
    pub d: BigInt,
}

fn exact_sqrt(d: &BigInt) -> Option<BigInt> {
    let r = d.sqrt();
    (&r * &r == *d).then_some(r)
}

impl QuadSurd {
    pub fn new(a: BigRational, b: BigRational, d: BigInt) -> Self {
        assert!(d.is_positive(), "radicand must be positive");
        match exact_sqrt(&d) {
            Some(r) => QuadSurd { a: a + b * BigRational::from_integer(r), b: BigRational::zero(), d },
            None => QuadSurd { a, b, d },
        }
    }

    pub fn rational(a: BigRational, d: &BigInt) -> Self {
        QuadSurd::new(a, BigRational::zero(), d.clone())
    }

    /// √d itself.
    pub fn sqrt(d: &BigInt) -> Self {
        QuadSurd::new(BigRational::zero(), BigRational::one(), d.clone())
    }

    pub fn one(d: &BigInt) -> Self {
        QuadSurd::rational(BigRational::one(), d)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        QuadSurd::new(&self.a + &o.a, &self.b + &o.b, self.d.clone())
    }

    pub fn sub(&self, o: &Self) -> Self {
        QuadSurd::new(&self.a - &o.a, &self.b - &o.b, self.d.clone())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let d = BigRational::from_integer(self.d.clone());
        QuadSurd::new(&self.a * &o.a + &self.b * &o.b * d, &self.a * &o.b + &self.b * &o.a, self.d.clone())
    }

    pub fn inv(&self) -> Option<Self> {
        let d = BigRational::from_integer(self.d.clone());
        let norm = &self.a * &self.a - &self.b * &self.b * d;
        if norm.is_zero() {
            return None;
        }
        Some(QuadSurd::new(&self.a / &norm, -&self.b / &norm, self.d.clone()))
    }

    pub fn pow(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut r = QuadSurd::one(&self.d);
        for _ in 0..e.unsigned_abs() {
            r = r.mul(&base);
        }
        Some(r)
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.b.is_zero().then_some(&self.a)
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        a + b * self.d.to_f64().unwrap_or(f64::NAN).sqrt()
    }
}

impl fmt::Display for QuadSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{} + {}*sqrt({})", self.a, self.b, self.d)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let d = BigInt::from(5);
        let s = QuadSurd::sqrt(&d);
        let sq = s.mul(&s);
        assert_eq!(sq.as_rational(), Some(&BigRational::from_integer(5.into())));
        let x = s.add(&QuadSurd::one(&d));
        let y = x.inv().unwrap();
        assert_eq!(x.mul(&y), QuadSurd::one(&d));
        assert!((x.pow(3).unwrap().to_f64() - (1.0 + 5f64.sqrt()).powi(3)).abs() < 1e-9);
        let four = BigInt::from(4);
        assert_eq!(QuadSurd::sqrt(&four).as_rational(), Some(&BigRational::from_integer(2.into())));
    }
}
