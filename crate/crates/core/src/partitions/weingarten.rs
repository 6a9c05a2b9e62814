//! Gram and Weingarten matrices, and Haar integrals of coordinate monomials.

use num::{BigInt, BigRational, Zero};

use super::{enum_partitions, PartitionError, PartitionFamily, SetPartition};
use crate::linalg::exact::{rat_inverse, RatMatrix};

#[derive(Clone, Debug)]
pub struct GramWeingarten {
    pub family: PartitionFamily,
    pub k: usize,
    pub n: usize,
    pub partitions: Vec<SetPartition>,
    /// |π ∨ σ| for every pair.
    pub join_blocks: Vec<Vec<usize>>,
    pub gram: RatMatrix,
    pub weingarten: Option<RatMatrix>,
}

fn rat_pow(base: usize, e: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(base).pow(e as u32))
}

impl GramWeingarten {
    pub fn new(k: usize, n: usize, family: PartitionFamily) -> Self {
        let partitions = enum_partitions(k, family);
        let join_blocks: Vec<Vec<usize>> =
            partitions.iter().map(|p| partitions.iter().map(|q| p.join_block_count(q)).collect()).collect();
        let gram: RatMatrix = join_blocks.iter().map(|r| r.iter().map(|&b| rat_pow(n, b)).collect()).collect();
        let weingarten = rat_inverse(&gram);
        GramWeingarten { family, k, n, partitions, join_blocks, gram, weingarten }
    }

    pub fn weingarten(&self) -> Result<&RatMatrix, PartitionError> {
        self.weingarten.as_ref().ok_or(PartitionError::SingularGram { k: self.k, n: self.n })
    }

    /// Σ_{π,σ} δ_π(i) δ_σ(j) W(π,σ).
    pub fn integrate(&self, i: &[usize], j: &[usize]) -> Result<BigRational, PartitionError> {
        if i.len() != self.k || j.len() != self.k {
            return Err(PartitionError::InvalidParameter(format!(
                "index tuples must have length {}, got {} and {}",
                self.k,
                i.len(),
                j.len()
            )));
        }
        let w = self.weingarten()?;
        let rows: Vec<usize> = (0..self.partitions.len()).filter(|&a| self.partitions[a].admits(i)).collect();
        let cols: Vec<usize> = (0..self.partitions.len()).filter(|&b| self.partitions[b].admits(j)).collect();
        let mut total = BigRational::zero();
        for &a in &rows {
            for &b in &cols {
                total += &w[a][b];
            }
        }
        Ok(total)
    }

    /// Tr(G_{ks} W_{kn}) = Σ s^{|π∨σ|} W(π,σ).
    pub fn truncated_trace(&self, s: usize) -> Result<BigRational, PartitionError> {
        let w = self.weingarten()?;
        let mut total = BigRational::zero();
        for (a, row) in self.join_blocks.iter().enumerate() {
            for (b, &blk) in row.iter().enumerate() {
                if !w[a][b].is_zero() {
                    total += rat_pow(s, blk) * &w[a][b];
                }
            }
        }
        Ok(total)
    }
}

pub fn gram_weingarten(k: usize, n: usize, family: PartitionFamily) -> Result<GramWeingarten, PartitionError> {
    if n == 0 {
        return Err(PartitionError::InvalidParameter("n must be at least 1".into()));
    }
    Ok(GramWeingarten::new(k, n, family))
}

/// Haar integral of u_{i₁j₁}···u_{i_kj_k} (0-based indices) over S_n for the
/// family `All`, over S_n^+ for `Noncrossing`.
pub fn integrate_monomial(
    family: PartitionFamily,
    n: usize,
    i: &[usize],
    j: &[usize],
) -> Result<BigRational, PartitionError> {
    if i.len() != j.len() {
        return Err(PartitionError::SizeMismatch(i.len(), j.len()));
    }
    if i.iter().chain(j).any(|&x| x >= n) {
        return Err(PartitionError::InvalidParameter(format!("indices must be below n = {n}")));
    }
    gram_weingarten(i.len(), n, family)?.integrate(i, j)
}

/// Classical Haar integral after simplifying with the relations of C(S_n):
/// the coordinates commute, u_ij² = u_ij, and u_ij·u_ik = u_ji·u_ki = 0 for
/// j ≠ k. The reduced monomial has at most n factors, so its Gram matrix is
/// always invertible.
pub fn integrate_monomial_classical_reduced(
    n: usize,
    i: &[usize],
    j: &[usize],
) -> Result<BigRational, PartitionError> {
    if i.len() != j.len() {
        return Err(PartitionError::SizeMismatch(i.len(), j.len()));
    }
    let mut pairs: Vec<(usize, usize)> = i.iter().copied().zip(j.iter().copied()).collect();
    pairs.sort_unstable();
    pairs.dedup();
    for w in pairs.windows(2) {
        if w[0].0 == w[1].0 {
            return Ok(BigRational::zero());
        }
    }
    let mut cols: Vec<usize> = pairs.iter().map(|p| p.1).collect();
    cols.sort_unstable();
    if cols.windows(2).any(|w| w[0] == w[1]) {
        return Ok(BigRational::zero());
    }
    let (ri, rj): (Vec<usize>, Vec<usize>) = pairs.into_iter().unzip();
    integrate_monomial(PartitionFamily::All, n, &ri, &rj)
}

/// ∫ χ^k with χ the main character.
pub fn char_moment(family: PartitionFamily, n: usize, k: usize) -> Result<BigRational, PartitionError> {
    truncated_char_moment(family, n, n, k)
}

/// ∫ χ_s^k with χ_s = Σ_{i<s} u_ii.
pub fn truncated_char_moment(
    family: PartitionFamily,
    n: usize,
    s: usize,
    k: usize,
) -> Result<BigRational, PartitionError> {
    if s > n {
        return Err(PartitionError::InvalidParameter(format!("truncation s = {s} exceeds n = {n}")));
    }
    gram_weingarten(k, n, family)?.truncated_trace(s)
}
