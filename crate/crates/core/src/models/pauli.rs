//! U^x_ij = Proj(c_i·x·c_j) for x ∈ SU_2, with M_2 identified with C^4
//! through the orthonormal basis c_α/√2 for <A, B> = tr(A*B).

use nalgebra::{Matrix2, Matrix4, Vector4};
use num::complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use super::ModelError;
use crate::hadamard::Estimate;
use crate::quantum::MagicUnitary;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// c₁ = 1, c₂ = diag(i, −i), c₃ = [[0, 1], [−1, 0]], c₄ = [[0, i], [i, 0]].
pub fn pauli_basis() -> [Matrix2<Complex64>; 4] {
    let (o, z, i) = (c(1.0, 0.0), c(0.0, 0.0), c(0.0, 1.0));
    [Matrix2::new(o, z, z, o), Matrix2::new(i, z, z, -i), Matrix2::new(z, o, -o, z), Matrix2::new(z, i, i, z)]
}

/// x = x₀c₁ + x₁c₂ + x₂c₃ + x₃c₄ with (x₀, …, x₃) a unit vector.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpinElement {
    pub coeffs: [f64; 4],
}

impl SpinElement {
    pub fn new(coeffs: [f64; 4]) -> Result<Self, ModelError> {
        let norm = coeffs.iter().map(|v| v * v).sum::<f64>().sqrt();
        if (norm - 1.0).abs() >= 1e-9 {
            return Err(ModelError::InvalidParameter(format!("coefficient vector has norm {norm}")));
        }
        Ok(SpinElement { coeffs })
    }

    pub fn identity() -> Self {
        SpinElement { coeffs: [1.0, 0.0, 0.0, 0.0] }
    }

    pub fn matrix(&self) -> Matrix2<Complex64> {
        let b = pauli_basis();
        (0..4).fold(Matrix2::zeros(), |acc, a| acc + b[a] * c(self.coeffs[a], 0.0))
    }

    pub fn neg(&self) -> Self {
        SpinElement { coeffs: self.coeffs.map(|v| -v) }
    }
}

pub fn su2_sample_rng(rng: &mut ChaCha8Rng) -> SpinElement {
    loop {
        let v: [f64; 4] = std::array::from_fn(|_| StandardNormal.sample(rng));
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-12 {
            return SpinElement { coeffs: v.map(|x| x / norm) };
        }
    }
}

/// Haar-distributed element of SU_2, deterministic per seed.
pub fn su2_sample(seed: u64) -> SpinElement {
    su2_sample_rng(&mut ChaCha8Rng::seed_from_u64(seed))
}

fn pauli_cells(x: &SpinElement) -> [Matrix4<Complex64>; 16] {
    let b = pauli_basis();
    let m = x.matrix();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    std::array::from_fn(|t| {
        let a = b[t / 4] * m * b[t % 4];
        let v = Vector4::from_fn(|alpha, _| (b[alpha].adjoint() * a).trace() * s);
        let nn = v.norm_squared();
        v * v.adjoint() / c(nn, 0.0)
    })
}

/// The magic unitary (U^x_ij) of size 4 with 4×4 cells.
pub fn pauli_magic(x: &SpinElement) -> MagicUnitary {
    let grid = pauli_cells(x).iter().map(|p| (0..16).map(|ab| p[(ab / 4, ab % 4)]).collect()).collect();
    MagicUnitary::from_complex(4, 4, grid).expect("4x4 grid of 4x4 cells")
}

const STREAMS: u64 = 64;

/// Monte-Carlo estimates of E_x tr(U^x_{i₁j₁}···U^x_{i_kj_k}) (normalized
/// trace, 0-based indices) for several words from one shared sample.
pub fn model_word_expectations(
    words: &[Vec<(usize, usize)>],
    samples: usize,
    seed: u64,
) -> Result<Vec<Estimate>, ModelError> {
    if samples == 0 {
        return Err(ModelError::InvalidParameter("need at least one sample".into()));
    }
    if words.iter().any(|w| w.is_empty() || w.iter().any(|&(i, j)| i >= 4 || j >= 4)) {
        return Err(ModelError::InvalidParameter("words must be nonempty with indices below 4".into()));
    }
    let per_stream: Vec<(u64, usize)> = (0..STREAMS)
        .map(|s| (s, samples / STREAMS as usize + usize::from((s as usize) < samples % STREAMS as usize)))
        .collect();
    let partial: Vec<Vec<(f64, f64)>> = per_stream
        .into_par_iter()
        .map(|(stream, count)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(stream);
            let mut acc = vec![(0.0, 0.0); words.len()];
            for _ in 0..count {
                let cells = pauli_cells(&su2_sample_rng(&mut rng));
                for (w, word) in words.iter().enumerate() {
                    let prod = word[1..].iter().fold(cells[word[0].0 * 4 + word[0].1], |m, &(i, j)| m * cells[i * 4 + j]);
                    let v = prod.trace().re / 4.0;
                    acc[w].0 += v;
                    acc[w].1 += v * v;
                }
            }
            acc
        })
        .collect();
    let n = samples as f64;
    Ok((0..words.len())
        .map(|w| {
            let (s, s2) = partial.iter().fold((0.0, 0.0), |a, p| (a.0 + p[w].0, a.1 + p[w].1));
            let mean = s / n;
            let var = if samples > 1 { ((s2 - n * mean * mean) / (n - 1.0)).max(0.0) } else { 0.0 };
            Estimate { value: mean, stderr: (var / n).sqrt() }
        })
        .collect())
}

pub fn model_word_expectation(word: &[(usize, usize)], samples: usize, seed: u64) -> Result<Estimate, ModelError> {
    Ok(model_word_expectations(&[word.to_vec()], samples, seed)?[0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::check_magic;

    #[test]
    fn basis() {
        let b = pauli_basis();
        assert_eq!(b[0], Matrix2::identity());
        assert_eq!(b[1] * b[1], -Matrix2::<Complex64>::identity());
        for i in 0..4 {
            for j in 0..4 {
                let t = (b[i].adjoint() * b[j]).trace();
                assert_eq!(t, c(if i == j { 2.0 } else { 0.0 }, 0.0));
            }
        }
    }

    #[test]
    fn samples() {
        let x = su2_sample(11);
        assert_eq!(x, su2_sample(11));
        let m = x.matrix();
        assert!((m.determinant() - c(1.0, 0.0)).norm() < 1e-12);
        assert!((m.adjoint() * m - Matrix2::identity()).norm() < 1e-12);
        assert!((x.coeffs.iter().map(|v| v * v).sum::<f64>() - 1.0).abs() < 1e-12);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let n = 100_000;
        let xs: Vec<f64> = (0..n).map(|_| su2_sample_rng(&mut rng).coeffs[0]).collect();
        let mean = xs.iter().sum::<f64>() / n as f64;
        // Var(x₀) = 1/4 on S^3
        assert!(mean.abs() < 3.0 * (0.25f64 / n as f64).sqrt());
    }

    #[test]
    fn magic_and_sign_invariance() {
        for x in [SpinElement::identity(), su2_sample(3), su2_sample(4)] {
            let p = pauli_magic(&x);
            assert!(check_magic(&p, 1e-12).passes);
            let q = pauli_magic(&x.neg());
            for i in 0..4 {
                for j in 0..4 {
                    let (a, b) = (p.cell_complex(i, j), q.cell_complex(i, j));
                    assert!(a.iter().zip(&b).all(|(u, v)| (u - v).norm() < 1e-14));
                    let tr: Complex64 = (0..4).map(|d| a[d * 4 + d]).sum();
                    assert!((tr - 1.0).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn expectations() {
        let e = model_word_expectations(&[vec![(0, 0)], vec![(0, 0), (1, 1)], vec![(0, 0), (0, 0)]], 20_000, 1).unwrap();
        assert!((e[0].value - 0.25).abs() < 1e-12);
        assert!((e[1].value - 1.0 / 12.0).abs() <= 3.0 * e[1].stderr + 1e-12);
        assert!((e[2].value - 0.25).abs() < 1e-12);
        let again = model_word_expectation(&[(0, 0), (1, 1)], 20_000, 1).unwrap();
        assert_eq!(again, e[1]);
        assert!(model_word_expectation(&[(4, 0)], 10, 1).is_err());
        assert!(model_word_expectation(&[(0, 0)], 0, 1).is_err());
    }
}
