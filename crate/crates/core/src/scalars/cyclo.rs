//! Exact arithmetic in the cyclotomic field Q(ζ_l).
//!
//! Elements are stored in the redundant group-algebra basis {ζ_l^j : j < l}.
//! Equality and zero tests reduce modulo the cyclotomic polynomial Φ_l.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::integer::Integer;
use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

use super::approx::ApproxComplex;
use super::ScalarError;

/// Coefficients of Φ_l in increasing degree, computed by exact division of
/// x^l - 1 by Φ_d for every proper divisor d of l.
pub fn cyclotomic_poly(l: usize) -> Vec<i64> {
    assert!(l >= 1, "cyclotomic order must be positive");
    // x^l - 1
    let mut num = vec![0i64; l + 1];
    num[0] = -1;
    num[l] = 1;
    for d in 1..l {
        if l.is_multiple_of(d) {
            let phi = cyclotomic_poly(d);
            num = poly_div_exact(&num, &phi);
        }
    }
    num
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    // den is monic.
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = rem.len() - 1 - dd;
    let mut q = vec![0i64; qd + 1];
    for i in (0..=qd).rev() {
        let c = rem[i + dd];
        q[i] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[i + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

/// Euler's totient.
pub fn totient(mut l: usize) -> usize {
    let mut result = l;
    let mut p = 2;
    while p * p <= l {
        if l.is_multiple_of(p) {
            while l.is_multiple_of(p) {
                l /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if l > 1 {
        result -= result / l;
    }
    result
}

/// Integer reduction table: row j holds x^j mod Φ_l. Used for fast exact zero
/// tests of integer combinations of l-th roots of unity.
#[derive(Clone, Debug)]
pub struct CycloReducer {
    order: usize,
    degree: usize,
    table: Vec<Vec<i64>>,
}

impl CycloReducer {
    pub fn new(l: usize) -> Self {
        let phi = cyclotomic_poly(l);
        let degree = phi.len() - 1;
        let mut table = Vec::with_capacity(l);
        let mut cur = vec![0i64; degree];
        cur[0] = 1;
        for _ in 0..l {
            table.push(cur.clone());
            // multiply by x, then reduce the x^degree term
            let top = cur[degree - 1];
            for i in (1..degree).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for i in 0..degree {
                    cur[i] -= top * phi[i];
                }
            }
        }
        CycloReducer { order: l, degree, table }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Reduced coordinates of Σ c_j ζ^j.
    pub fn reduce(&self, counts: &[i64]) -> Vec<i64> {
        let mut out = vec![0i64; self.degree];
        for (j, &c) in counts.iter().enumerate() {
            if c != 0 {
                for (o, t) in out.iter_mut().zip(&self.table[j % self.order]) {
                    *o += c * t;
                }
            }
        }
        out
    }

    /// True iff Σ c_j ζ^j = 0 exactly.
    pub fn is_zero(&self, counts: &[i64]) -> bool {
        self.reduce(counts).iter().all(|&x| x == 0)
    }
}

/// Exact element Σ coeffs[j]·ζ_l^j of Q(ζ_l).
#[derive(Clone, Debug)]
pub struct CycloScalar {
    order: usize,
    coeffs: Vec<BigRational>,
}

impl CycloScalar {
    pub fn new(order: usize, coeffs: Vec<BigRational>) -> Result<Self, ScalarError> {
        if order == 0 {
            return Err(ScalarError::ZeroOrder);
        }
        if coeffs.len() != order {
            return Err(ScalarError::LengthMismatch { order, len: coeffs.len() });
        }
        Ok(CycloScalar { order, coeffs })
    }

    pub fn zero(order: usize) -> Self {
        assert!(order >= 1);
        CycloScalar { order, coeffs: vec![BigRational::zero(); order] }
    }

    pub fn one(order: usize) -> Self {
        Self::from_rational(order, BigRational::one())
    }

    pub fn from_rational(order: usize, q: BigRational) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = q;
        s
    }

    pub fn from_int(order: usize, v: i64) -> Self {
        Self::from_rational(order, BigRational::from_integer(BigInt::from(v)))
    }

    /// ζ_l^e.
    pub fn root(order: usize, e: i64) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[e.rem_euclid(order as i64) as usize] = BigRational::one();
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Re-express in Q(ζ_m); requires l | m.
    pub fn promote(&self, m: usize) -> Self {
        assert!(m.is_multiple_of(self.order), "promotion target must be a multiple of the order");
        if m == self.order {
            return self.clone();
        }
        let step = m / self.order;
        let mut out = Self::zero(m);
        for (j, c) in self.coeffs.iter().enumerate() {
            out.coeffs[j * step] = c.clone();
        }
        out
    }

    fn unify(a: &Self, b: &Self) -> (Self, Self) {
        if a.order == b.order {
            return (a.clone(), b.clone());
        }
        let m = a.order.lcm(&b.order);
        (a.promote(m), b.promote(m))
    }

    /// Coefficients of the reduction modulo Φ_l, length φ(l).
    pub fn reduced_coeffs(&self) -> Vec<BigRational> {
        let phi = cyclotomic_poly(self.order);
        poly_rem_monic(&self.coeffs, &phi)
    }

    /// Canonical representative: the reduction mod Φ_l written back in the
    /// group-algebra basis.
    pub fn reduced(&self) -> Self {
        let mut r = self.reduced_coeffs();
        r.resize(self.order, BigRational::zero());
        CycloScalar { order: self.order, coeffs: r }
    }

    pub fn is_zero(&self) -> bool {
        if self.coeffs.iter().all(|c| c.is_zero()) {
            return true;
        }
        self.reduced_coeffs().iter().all(|c| c.is_zero())
    }

    /// Complex conjugate: ζ^j ↦ ζ^{-j}.
    pub fn conj(&self) -> Self {
        let l = self.order;
        let mut out = Self::zero(l);
        for (j, c) in self.coeffs.iter().enumerate() {
            out.coeffs[(l - j) % l] = c.clone();
        }
        out
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        CycloScalar { order: self.order, coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    pub fn eval(&self) -> ApproxComplex {
        let l = self.order as f64;
        let (mut re, mut im) = (0.0, 0.0);
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let v = c.to_f64().unwrap_or(f64::NAN);
            let (c, s) = if (4 * j) % self.order == 0 {
                [(1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0)][4 * j / self.order]
            } else {
                let th = 2.0 * std::f64::consts::PI * j as f64 / l;
                (th.cos(), th.sin())
            };
            re += v * c;
            im += v * s;
        }
        ApproxComplex::new(re, im)
    }

    /// Multiplicative inverse, by the extended Euclidean algorithm in Q[x]
    /// against Φ_l. Returns None for zero.
    pub fn inv(&self) -> Option<Self> {
        let phi: Vec<BigRational> = cyclotomic_poly(self.order)
            .into_iter()
            .map(|c| BigRational::from_integer(BigInt::from(c)))
            .collect();
        let a = trim(self.reduced_coeffs());
        if a.is_empty() {
            return None;
        }
        // Invariant: s_i * a ≡ r_i (mod phi).
        let (mut r0, mut r1) = (phi.clone(), a);
        let (mut s0, mut s1): (Vec<BigRational>, Vec<BigRational>) = (vec![], vec![BigRational::one()]);
        while r1.len() > 1 {
            let (q, r) = poly_divmod(&r0, &r1);
            let s2 = trim(poly_sub(&s0, &poly_mul(&q, &s1)));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            if r1.is_empty() {
                return None; // not coprime: impossible for a field, kept defensive
            }
        }
        let c = r1[0].clone();
        let mut inv: Vec<BigRational> = s1.iter().map(|x| x / &c).collect();
        inv = poly_rem_monic(&inv, &cyclotomic_poly(self.order));
        inv.resize(self.order, BigRational::zero());
        Some(CycloScalar { order: self.order, coeffs: inv })
    }
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn poly_rem_monic(p: &[BigRational], m: &[i64]) -> Vec<BigRational> {
    let d = m.len() - 1;
    let mut r: Vec<BigRational> = p.to_vec();
    if r.len() <= d {
        r.resize(d, BigRational::zero());
        return r;
    }
    for i in (d..r.len()).rev() {
        if r[i].is_zero() {
            continue;
        }
        let c = r[i].clone();
        for (j, &mj) in m.iter().enumerate() {
            if mj != 0 {
                r[i - d + j] -= &c * BigRational::from_integer(BigInt::from(mj));
            }
        }
    }
    r.truncate(d);
    r
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
            x - y
        })
        .collect()
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = trim(a.to_vec());
    let b = trim(b.to_vec());
    let db = b.len() - 1;
    let lead = b[db].clone();
    if r.len() < b.len() {
        return (vec![], r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() / &lead;
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= &c * bj;
        }
        q[shift] = c;
        r.pop();
        r = trim(r);
    }
    (trim(q), r)
}

fn combine(a: &CycloScalar, b: &CycloScalar, f: impl Fn(&BigRational, &BigRational) -> BigRational) -> CycloScalar {
    let (x, y) = CycloScalar::unify(a, b);
    let coeffs = x.coeffs.iter().zip(&y.coeffs).map(|(p, q)| f(p, q)).collect();
    CycloScalar { order: x.order, coeffs }
}

impl Add for &CycloScalar {
    type Output = CycloScalar;
    fn add(self, rhs: &CycloScalar) -> CycloScalar {
        combine(self, rhs, |p, q| p + q)
    }
}

impl Sub for &CycloScalar {
    type Output = CycloScalar;
    fn sub(self, rhs: &CycloScalar) -> CycloScalar {
        combine(self, rhs, |p, q| p - q)
    }
}

impl Mul for &CycloScalar {
    type Output = CycloScalar;
    fn mul(self, rhs: &CycloScalar) -> CycloScalar {
        let (x, y) = CycloScalar::unify(self, rhs);
        let l = x.order;
        let mut out = CycloScalar::zero(l);
        for (i, p) in x.coeffs.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            for (j, q) in y.coeffs.iter().enumerate() {
                if q.is_zero() {
                    continue;
                }
                out.coeffs[(i + j) % l] += p * q;
            }
        }
        out
    }
}

impl Neg for &CycloScalar {
    type Output = CycloScalar;
    fn neg(self) -> CycloScalar {
        CycloScalar { order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for CycloScalar {
            type Output = CycloScalar;
            fn $m(self, rhs: CycloScalar) -> CycloScalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&CycloScalar> for CycloScalar {
            type Output = CycloScalar;
            fn $m(self, rhs: &CycloScalar) -> CycloScalar {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for CycloScalar {
    type Output = CycloScalar;
    fn neg(self) -> CycloScalar {
        -&self
    }
}

impl PartialEq for CycloScalar {
    fn eq(&self, other: &Self) -> bool {
        (self - other).is_zero()
    }
}

impl Eq for CycloScalar {}

impl fmt::Display for CycloScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if j == 0 {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "z{}^{j}", self.order)?;
            } else if c.is_negative() {
                write!(f, "({c})*z{}^{j}", self.order)?;
            } else {
                write!(f, "{c}*z{}^{j}", self.order)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// ζ_l^(e mod l).
pub fn cyclo_root(l: usize, e: i64) -> CycloScalar {
    CycloScalar::root(l, e)
}

pub fn cyclo_is_zero(x: &CycloScalar) -> bool {
    x.is_zero()
}

pub fn cyclo_eval(x: &CycloScalar) -> ApproxComplex {
    x.eval()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn cyclotomic_polys() {
        assert_eq!(cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(2), vec![1, 1]);
        assert_eq!(cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
        for l in 1..60 {
            assert_eq!(cyclotomic_poly(l).len() - 1, totient(l));
        }
    }

    #[test]
    fn root_examples() {
        assert_eq!(cyclo_root(1, 0), CycloScalar::one(1));
        assert_eq!(cyclo_root(2, 1), CycloScalar::from_int(2, -1));
        assert_eq!(cyclo_root(4, 2), cyclo_root(2, 1));
        assert_eq!(cyclo_root(5, -3), cyclo_root(5, 2));
    }

    #[test]
    fn zero_examples() {
        assert!(cyclo_is_zero(&(cyclo_root(2, 0) + cyclo_root(2, 1))));
        let s = cyclo_root(3, 0) + cyclo_root(3, 1) + cyclo_root(3, 2);
        assert!(cyclo_is_zero(&s));
        assert!(!cyclo_is_zero(&(cyclo_root(5, 0) + cyclo_root(5, 1))));
        for l in 2..30 {
            let mut s = CycloScalar::zero(l);
            for j in 0..l as i64 {
                s = s + cyclo_root(l, j);
            }
            assert!(s.is_zero(), "full cycle of order {l}");
        }
    }

    #[test]
    fn eval_examples() {
        assert!(cyclo_eval(&cyclo_root(4, 1)).approx_eq(&ApproxComplex::new(0.0, 1.0)));
        let z3 = cyclo_eval(&cyclo_root(3, 1));
        assert!(z3.approx_eq(&ApproxComplex::new(-0.5, 3f64.sqrt() / 2.0)));
        assert!(cyclo_eval(&(cyclo_root(2, 0) + cyclo_root(2, 1))).is_zero());
    }

    #[test]
    fn mixed_order_promotes() {
        let a = cyclo_root(4, 1);
        let b = cyclo_root(6, 1);
        let p = &a * &b;
        assert_eq!(p.order(), 12);
        assert_eq!(p, cyclo_root(12, 5));
    }

    #[test]
    fn inverse() {
        let x = CycloScalar::new(5, vec![q(1, 1), q(2, 1), q(0, 1), q(-1, 3), q(0, 1)]).unwrap();
        let y = x.inv().unwrap();
        assert_eq!(&x * &y, CycloScalar::one(5));
        assert!(CycloScalar::zero(7).inv().is_none());
        let full = (0..3).fold(CycloScalar::zero(3), |s, j| s + cyclo_root(3, j));
        assert!(full.inv().is_none());
        assert_eq!(cyclo_root(1, 0).inv().unwrap(), CycloScalar::one(1));
    }

    #[test]
    fn conj_of_root() {
        assert_eq!(cyclo_root(7, 3).conj(), cyclo_root(7, 4));
        let g = cyclo_root(8, 1) + CycloScalar::from_int(8, 2);
        assert!((g.conj().eval().0 - g.eval().0.conj()).norm() < 1e-12);
    }

    #[test]
    fn reducer_matches_rational_reduction() {
        for l in [3usize, 4, 6, 8, 9, 12, 15] {
            let r = CycloReducer::new(l);
            let counts: Vec<i64> = (0..l as i64).map(|j| (j * 7 + 3) % 5 - 2).collect();
            let x = CycloScalar::new(l, counts.iter().map(|&c| q(c, 1)).collect()).unwrap();
            let red: Vec<i64> = x.reduced_coeffs().iter().map(|c| c.to_integer().to_i64().unwrap()).collect();
            assert_eq!(r.reduce(&counts), red);
        }
    }
}
