//! Representation dimensions of S_n^+ and free Bessel moments.

use num::{BigInt, BigRational, One, Zero};

use super::PartitionError;

fn binom(a: u64, b: u64) -> BigInt {
    if b > a {
        return BigInt::zero();
    }
    let mut r = BigInt::one();
    for i in 0..b {
        r = r * BigInt::from(a - i) / BigInt::from(i + 1);
    }
    r
}

/// dim r_a through U_{a+1} = (n−2)U_a − U_{a−1}, dim r_a = U_a + U_{a−1}.
pub fn clebsch_dim_exact(n: usize, a: usize) -> Result<BigInt, PartitionError> {
    if n < 4 {
        return Err(PartitionError::InvalidParameter(format!("n = {n} is below 4")));
    }
    let c = BigInt::from(n as i64 - 2);
    let (mut prev, mut cur) = (BigInt::zero(), BigInt::one());
    for _ in 0..a {
        let next = &c * &cur - &prev;
        prev = cur;
        cur = next;
    }
    Ok(cur + prev)
}

/// Closed form (x^{a+1} − y^{a+1})/(x − y) + (x^a − y^a)/(x − y) with x, y the
/// roots of X² − (n−2)X + 1; at n = 4 the double root is handled by its limit.
pub fn clebsch_dim(n: usize, a: usize) -> Result<f64, PartitionError> {
    if n < 4 {
        return Err(PartitionError::InvalidParameter(format!("n = {n} is below 4")));
    }
    if n == 4 {
        return Ok((2 * a + 1) as f64);
    }
    let s = (n as f64) - 2.0;
    let disc = (s * s - 4.0).sqrt();
    let x = (s + disc) / 2.0;
    let y = (s - disc) / 2.0;
    let q = |m: usize| (x.powi(m as i32) - y.powi(m as i32)) / (x - y);
    Ok(q(a + 1) + q(a))
}

/// Σ_{b=1}^{k} (1/b)·C(k−1, b−1)·C(2k, b−1)·t^b.
pub fn free_bessel_even_moment(k: usize, t: &BigRational) -> Result<BigRational, PartitionError> {
    if k == 0 {
        return Err(PartitionError::InvalidParameter("k must be at least 1".into()));
    }
    let k = k as u64;
    let mut total = BigRational::zero();
    let mut tp = BigRational::one();
    for b in 1..=k {
        tp = &tp * t;
        let c = binom(k - 1, b - 1) * binom(2 * k, b - 1);
        total += BigRational::new(c, BigInt::from(b)) * &tp;
    }
    Ok(total)
}
