//! Streaming nullspace computation over an abstract field.
//!
//! A basis of the common kernel of all rows seen so far is kept as a list of
//! dense vectors. Each incoming row either annihilates the whole basis or
//! removes exactly one dimension, so rows never need to be stored.

use rayon::prelude::*;

use super::modp::ModP;

pub trait Field: Sync {
    type Elem: Clone + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Inverse of a nonzero element.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;

    /// Σ row[t].1 · v[row[t].0].
    fn sparse_dot(&self, row: &[(usize, Self::Elem)], v: &[Self::Elem]) -> Self::Elem {
        let mut acc = self.zero();
        for (i, a) in row {
            acc = self.add(&acc, &self.mul(a, &v[*i]));
        }
        acc
    }

    /// y ← y − alpha·x
    fn sub_scaled(&self, y: &mut [Self::Elem], alpha: &Self::Elem, x: &[Self::Elem]) {
        for (yi, xi) in y.iter_mut().zip(x) {
            if !self.is_zero(xi) {
                *yi = self.sub(yi, &self.mul(alpha, xi));
            }
        }
    }
}

impl Field for ModP {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ModP::add(self, *a, *b)
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        ModP::sub(self, *a, *b)
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ModP::mul(self, *a, *b)
    }
    fn neg(&self, a: &u64) -> u64 {
        ModP::neg(self, *a)
    }
    fn inv(&self, a: &u64) -> u64 {
        ModP::inv(self, *a)
    }

    fn sparse_dot(&self, row: &[(usize, u64)], v: &[u64]) -> u64 {
        // Entries are below 2^31, so 2^66 products fit many times in u128.
        let mut acc: u128 = 0;
        for (i, a) in row {
            acc += *a as u128 * v[*i] as u128;
        }
        (acc % self.p as u128) as u64
    }

    fn sub_scaled(&self, y: &mut [u64], alpha: &u64, x: &[u64]) {
        let p = self.p;
        let na = p - alpha % p;
        for (yi, &xi) in y.iter_mut().zip(x) {
            if xi != 0 {
                *yi = ((*yi as u128 + na as u128 * xi as u128) % p as u128) as u64;
            }
        }
    }
}

/// Kernel basis of the rows pushed so far.
pub struct NullspaceTracker<'f, F: Field> {
    field: &'f F,
    unknowns: usize,
    basis: Vec<Vec<F::Elem>>,
    rank: usize,
}

const PAR_THRESHOLD: usize = 1 << 14;

impl<'f, F: Field> NullspaceTracker<'f, F> {
    pub fn new(field: &'f F, unknowns: usize) -> Self {
        let basis = (0..unknowns)
            .map(|i| {
                let mut v = vec![field.zero(); unknowns];
                v[i] = field.one();
                v
            })
            .collect();
        NullspaceTracker { field, unknowns, basis, rank: 0 }
    }

    pub fn unknowns(&self) -> usize {
        self.unknowns
    }

    pub fn nullity(&self) -> usize {
        self.basis.len()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn basis(&self) -> &[Vec<F::Elem>] {
        &self.basis
    }

    /// Impose the equation Σ row[t].1 · x[row[t].0] = 0. Returns whether the
    /// kernel shrank.
    pub fn push_sparse(&mut self, row: &[(usize, F::Elem)]) -> bool {
        if self.basis.is_empty() {
            return false;
        }
        let f = self.field;
        let work = self.basis.len() * row.len();
        let s: Vec<F::Elem> = if work >= PAR_THRESHOLD {
            self.basis.par_iter().map(|v| f.sparse_dot(row, v)).collect()
        } else {
            self.basis.iter().map(|v| f.sparse_dot(row, v)).collect()
        };
        let Some(p) = s.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let pivot = self.basis.swap_remove(p);
        let mut s = s;
        let sp_inv = f.inv(&s.swap_remove(p));
        let pairs: Vec<(&mut Vec<F::Elem>, &F::Elem)> = self.basis.iter_mut().zip(s.iter()).collect();
        let update = |(v, sc): (&mut Vec<F::Elem>, &F::Elem)| {
            if !f.is_zero(sc) {
                let alpha = f.mul(sc, &sp_inv);
                f.sub_scaled(v, &alpha, &pivot);
            }
        };
        if pairs.len() * self.unknowns >= PAR_THRESHOLD {
            pairs.into_par_iter().for_each(update);
        } else {
            pairs.into_iter().for_each(update);
        }
        self.rank += 1;
        true
    }

    pub fn push_dense(&mut self, row: &[F::Elem]) -> bool {
        let f = self.field;
        let sparse: Vec<(usize, F::Elem)> =
            row.iter().enumerate().filter(|(_, a)| !f.is_zero(a)).map(|(i, a)| (i, a.clone())).collect();
        self.push_sparse(&sparse)
    }
}

/// Rank of a dense matrix given by rows.
pub fn rank_of_rows<F: Field>(field: &F, unknowns: usize, rows: &[Vec<F::Elem>]) -> usize {
    let mut t = NullspaceTracker::new(field, unknowns);
    for r in rows {
        t.push_dense(r);
    }
    t.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::modp::root_prime;

    #[test]
    fn rank_small_mod_p() {
        let f = root_prime(1, 0).field;
        let rows = vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]];
        assert_eq!(rank_of_rows(&f, 3, &rows), 2);
        let mut t = NullspaceTracker::new(&f, 3);
        for r in &rows {
            t.push_dense(r);
        }
        // kernel vector must annihilate every row
        for v in t.basis() {
            for r in &rows {
                let dot = r.iter().zip(v).fold(0u64, |a, (x, y)| f.add(a, f.mul(*x, *y)));
                assert_eq!(dot, 0);
            }
        }
    }

    #[test]
    fn sparse_and_dense_agree() {
        let f = root_prime(1, 1).field;
        let mut state = 12345u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
            (state >> 40) % 5
        };
        let rows: Vec<Vec<u64>> = (0..12).map(|_| (0..9).map(|_| if next() < 2 { next() } else { 0 }).collect()).collect();
        let a = rank_of_rows(&f, 9, &rows);
        let mut t = NullspaceTracker::new(&f, 9);
        for r in &rows {
            let s: Vec<(usize, u64)> = r.iter().enumerate().filter(|(_, &x)| x != 0).map(|(i, &x)| (i, x)).collect();
            t.push_sparse(&s);
        }
        assert_eq!(a, t.rank());
        assert_eq!(t.rank() + t.nullity(), 9);
    }
}
