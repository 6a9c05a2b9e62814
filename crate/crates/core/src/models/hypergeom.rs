//! Moments of X(n, m, N) = Σ_{i≤n, j≤m} u_ij in C(S_N^+).

use num::{BigInt, BigRational, Zero};

use super::ModelError;
use crate::partitions::{GramWeingarten, PartitionFamily};

/// The root q ∈ [−1, 0) of q + 1/q = −n.
pub fn free_hg_q(n: u64) -> Result<f64, ModelError> {
    if n < 3 {
        return Err(ModelError::DegenerateParameter(format!("q = -1 at n = {n}; the closed form needs n >= 3")));
    }
    let nf = n as f64;
    Ok((-nf + (nf * nf - 4.0).sqrt()) / 2.0)
}

fn binom(n: u64, k: u64) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

fn formula_with_base(n: u64, k: u64, base: f64) -> Result<f64, ModelError> {
    let q = free_hg_q(n)?;
    let kk = k as i64;
    let mut sum = 0.0;
    for r in -kk - 1..=kk + 1 {
        if r == 0 {
            continue;
        }
        let sign = if r.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        sum += sign * binom(2 * k + 2, (kk + r + 1) as u64) * r as f64 / (1.0 + q.powi(r as i32));
    }
    Ok((n as f64 / base).powi(k as i32) * (q + 1.0) / (q - 1.0) / (k + 1) as f64 * sum)
}

/// ∫ X(n, n, n²)^k from the closed form, with prefactor n^k/(n+2)^k.
pub fn free_hg_formula(n: u64, k: u64) -> Result<f64, ModelError> {
    formula_with_base(n, k, (n + 2) as f64)
}

/// ∫ X(n, m, N)^k = Σ_{π,σ ∈ NC(k)} n^{|π|}·m^{|σ|}·W_{kN}(π, σ), exactly.
pub fn free_hg_oracle(n: u64, m: u64, big_n: u64, k: usize) -> Result<BigRational, ModelError> {
    if big_n < 4 {
        return Err(ModelError::InvalidParameter(format!("need N >= 4, got {big_n}")));
    }
    let gw = GramWeingarten::new(k, big_n as usize, PartitionFamily::Noncrossing);
    let w = gw.weingarten()?;
    let pw = |b: u64, e: usize| BigRational::from_integer(BigInt::from(b).pow(e as u32));
    let rows: Vec<BigRational> = gw.partitions.iter().map(|p| pw(n, p.block_count())).collect();
    let cols: Vec<BigRational> = gw.partitions.iter().map(|p| pw(m, p.block_count())).collect();
    let mut total = BigRational::zero();
    for (a, ra) in rows.iter().enumerate() {
        for (b, cb) in cols.iter().enumerate() {
            if !w[a][b].is_zero() {
                total += ra * cb * &w[a][b];
            }
        }
    }
    Ok(total)
}

#[cfg(test)]
fn to_f64(q: &BigRational) -> f64 {
    num::ToPrimitive::to_f64(q).unwrap_or(f64::NAN)
}
