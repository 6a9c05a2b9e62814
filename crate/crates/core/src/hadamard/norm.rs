//! Entrywise 1-norm and the Monte-Carlo integrals I_G = (∫_G ||U||_1^k dU)^{1/k}.

use nalgebra::DMatrix;
use num::complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::{HadamardCandidate, HadamardError};

/// Σ_ij |M_ij|.
pub fn one_norm(m: &[Vec<Complex64>]) -> f64 {
    m.iter().flatten().map(|z| z.norm()).sum()
}

impl HadamardCandidate {
    /// ||H/√n||_1, equal to n√n exactly for Hadamard H.
    pub fn scaled_one_norm(&self) -> f64 {
        let s = (self.n() as f64).sqrt();
        one_norm(&self.to_complex()) / s
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixGroup {
    Orthogonal,
    Unitary,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub stderr: f64,
}

/// Haar-distributed element of O_n or U_n: QR of a Gaussian matrix with the
/// diagonal of R made positive.
pub fn haar_sample(group: MatrixGroup, n: usize, rng: &mut ChaCha8Rng) -> DMatrix<Complex64> {
    let mut gauss = || -> f64 { StandardNormal.sample(rng) };
    let a = match group {
        MatrixGroup::Orthogonal => DMatrix::from_fn(n, n, |_, _| Complex64::new(gauss(), 0.0)),
        MatrixGroup::Unitary => {
            let s = std::f64::consts::FRAC_1_SQRT_2;
            DMatrix::from_fn(n, n, |_, _| Complex64::new(gauss() * s, gauss() * s))
        }
    };
    let qr = a.qr();
    let (mut q, r) = qr.unpack();
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() == 0.0 { Complex64::new(1.0, 0.0) } else { d / d.norm() };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    q
}

fn matrix_one_norm(u: &DMatrix<Complex64>) -> f64 {
    u.iter().map(|z| z.norm()).sum()
}

/// Estimates for several k from one shared sample of the group.
pub fn i_g_estimate_many(
    group: MatrixGroup,
    n: usize,
    ks: &[u32],
    samples: usize,
    seed: u64,
) -> Result<Vec<Estimate>, HadamardError> {
    if samples == 0 || n == 0 || ks.contains(&0) {
        return Err(HadamardError::InvalidParameter("need samples >= 1, n >= 1 and k >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let norms: Vec<f64> = (0..samples).map(|_| matrix_one_norm(&haar_sample(group, n, &mut rng))).collect();
    Ok(ks
        .iter()
        .map(|&k| {
            let xs: Vec<f64> = norms.iter().map(|v| v.powi(k as i32)).collect();
            let mean = xs.iter().sum::<f64>() / samples as f64;
            let var = if samples > 1 {
                xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (samples - 1) as f64
            } else {
                0.0
            };
            let se_mean = (var / samples as f64).sqrt();
            let value = mean.powf(1.0 / k as f64);
            // delta method for m ↦ m^{1/k}
            let stderr = value / (k as f64 * mean) * se_mean;
            Estimate { value, stderr }
        })
        .collect())
}

pub fn i_g_estimate(group: MatrixGroup, n: usize, k: u32, samples: usize, seed: u64) -> Result<Estimate, HadamardError> {
    Ok(i_g_estimate_many(group, n, &[k], samples, seed)?[0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hadamard::fourier;

    #[test]
    fn norm_examples() {
        let id: Vec<Vec<Complex64>> =
            (0..5).map(|i| (0..5).map(|j| Complex64::new((i == j) as u8 as f64, 0.0)).collect()).collect();
        assert_eq!(one_norm(&id), 5.0);
        assert!((fourier(2).scaled_one_norm() - 2.0 * 2f64.sqrt()).abs() < 1e-12);
        assert!((fourier(4).scaled_one_norm() - 8.0).abs() < 1e-12);
    }

    #[test]
    fn samples_are_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for group in [MatrixGroup::Orthogonal, MatrixGroup::Unitary] {
            let u = haar_sample(group, 5, &mut rng);
            let err = (u.adjoint() * &u - DMatrix::identity(5, 5)).norm();
            assert!(err < 1e-12);
            if group == MatrixGroup::Orthogonal {
                assert!(u.iter().all(|z| z.im == 0.0));
            }
            assert!(matrix_one_norm(&u) <= 5.0 * 5f64.sqrt() + 1e-12);
        }
    }

    #[test]
    fn trivial_group() {
        let e = i_g_estimate(MatrixGroup::Orthogonal, 1, 3, 50, 1).unwrap();
        assert_eq!(e.value, 1.0);
        assert_eq!(e.stderr, 0.0);
    }

    #[test]
    fn deterministic_and_monotone() {
        let a = i_g_estimate_many(MatrixGroup::Orthogonal, 4, &[1, 2, 4, 8], 2000, 9).unwrap();
        let b = i_g_estimate_many(MatrixGroup::Orthogonal, 4, &[1, 2, 4, 8], 2000, 9).unwrap();
        assert_eq!(a, b);
        for w in a.windows(2) {
            assert!(w[0].value <= w[1].value + 1e-12);
        }
        assert!(a.iter().all(|e| e.value <= 8.0 + 3.0 * e.stderr));
    }

    #[test]
    fn rejects_zero_samples() {
        assert!(i_g_estimate(MatrixGroup::Unitary, 3, 2, 0, 1).is_err());
    }
}
