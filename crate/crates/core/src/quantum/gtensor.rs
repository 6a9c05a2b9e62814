//! The 4-index tensor G_{ia}^{jb} = Σ_k H_ik·conj(H_jk)·conj(H_ak)·H_bk and
//! its chained powers G^k.

use num::complex::Complex64;
use num::{BigInt, BigRational};

use super::QuantumError;
use crate::hadamard::HadamardCandidate;
use crate::partitions::decode_multi_index;
use crate::scalars::CycloScalar;

#[derive(Clone, Debug)]
pub enum GEntries {
    Exact { order: usize, data: Vec<CycloScalar> },
    Approx(Vec<Complex64>),
}

/// Entry (i, a; j, b) is stored at ((i·n + a)·n + j)·n + b.
#[derive(Clone, Debug)]
pub struct GTensor {
    n: usize,
    entries: GEntries,
}

fn idx(n: usize, i: usize, a: usize, j: usize, b: usize) -> usize {
    ((i * n + a) * n + j) * n + b
}

pub fn g_tensor(h: &HadamardCandidate) -> Result<GTensor, QuantumError> {
    if let Some((a, b)) = h.first_non_orthogonal_pair() {
        return Err(QuantumError::NotHadamard(a, b));
    }
    let n = h.n();
    let n4 = n * n * n * n;
    if let Some((l, e)) = h.as_butson() {
        let l = l as usize;
        let mut data = Vec::with_capacity(n4);
        for t in 0..n4 {
            let (i, a, j, b) = (t / (n * n * n), (t / (n * n)) % n, (t / n) % n, t % n);
            let mut counts = vec![0i64; l];
            for k in 0..n {
                counts[(e[i][k] - e[j][k] - e[a][k] + e[b][k]).rem_euclid(l as i64) as usize] += 1;
            }
            let coeffs = counts.into_iter().map(|c| BigRational::from_integer(BigInt::from(c))).collect();
            data.push(CycloScalar::new(l, coeffs).expect("length").reduced());
        }
        return Ok(GTensor { n, entries: GEntries::Exact { order: l, data } });
    }
    let hc = h.to_complex();
    let data = (0..n4)
        .map(|t| {
            let (i, a, j, b) = (t / (n * n * n), (t / (n * n)) % n, (t / n) % n, t % n);
            (0..n).map(|k| hc[i][k] * hc[j][k].conj() * hc[a][k].conj() * hc[b][k]).sum()
        })
        .collect();
    Ok(GTensor { n, entries: GEntries::Approx(data) })
}

impl GTensor {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &GEntries {
        &self.entries
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.entries, GEntries::Exact { .. })
    }

    pub fn get_complex(&self, i: usize, a: usize, j: usize, b: usize) -> Complex64 {
        match &self.entries {
            GEntries::Exact { data, .. } => data[idx(self.n, i, a, j, b)].eval().0,
            GEntries::Approx(data) => data[idx(self.n, i, a, j, b)],
        }
    }

    pub fn get_exact(&self, i: usize, a: usize, j: usize, b: usize) -> Option<&CycloScalar> {
        match &self.entries {
            GEntries::Exact { data, .. } => Some(&data[idx(self.n, i, a, j, b)]),
            GEntries::Approx(_) => None,
        }
    }

    /// Largest |G_{ia}^{ia} − n|; exactly 0 on the exact path when the
    /// invariant holds.
    pub fn diagonal_defect(&self) -> f64 {
        let n = self.n;
        let mut worst = 0f64;
        for i in 0..n {
            for a in 0..n {
                let r = match &self.entries {
                    GEntries::Exact { order, data } => {
                        let d = &data[idx(n, i, a, i, a)] - &CycloScalar::from_int(*order, n as i64);
                        if d.is_zero() { 0.0 } else { d.eval().norm() }
                    }
                    GEntries::Approx(data) => (data[idx(n, i, a, i, a)] - n as f64).norm(),
                };
                worst = worst.max(r);
            }
        }
        worst
    }

    /// Largest |G_{ia}^{jb} − conj(G_{jb}^{ia})|.
    pub fn adjoint_defect(&self) -> f64 {
        let n = self.n;
        let mut worst = 0f64;
        for t in 0..n * n * n * n {
            let (i, a, j, b) = (t / (n * n * n), (t / (n * n)) % n, (t / n) % n, t % n);
            let r = match &self.entries {
                GEntries::Exact { data, .. } => {
                    let d = &data[idx(n, i, a, j, b)] - &data[idx(n, j, b, i, a)].conj();
                    if d.is_zero() { 0.0 } else { d.eval().norm() }
                }
                GEntries::Approx(data) => (data[idx(n, i, a, j, b)] - data[idx(n, j, b, i, a)].conj()).norm(),
            };
            worst = worst.max(r);
        }
        worst
    }
}

/// G^k as an n^k × n^k row-major matrix: entry (i, j) is
/// Π_{s=1}^{k-1} G_{i_{s+1} i_s}^{j_{s+1} j_s}, and G^1 ≡ 1.
#[derive(Clone, Debug)]
pub struct GPower {
    pub n: usize,
    pub k: usize,
    pub entries: GEntries,
}

impl GPower {
    pub fn dim(&self) -> usize {
        self.n.pow(self.k as u32)
    }

    pub fn get_complex(&self, i: usize, j: usize) -> Complex64 {
        let t = i * self.dim() + j;
        match &self.entries {
            GEntries::Exact { data, .. } => data[t].eval().0,
            GEntries::Approx(data) => data[t],
        }
    }
}

pub fn g_power(g: &GTensor, k: usize) -> Result<GPower, QuantumError> {
    if k == 0 {
        return Err(QuantumError::InvalidParameter("G^k needs k >= 1".into()));
    }
    let n = g.n;
    let dim = n.pow(k as u32);
    let pairs = |t: usize| {
        let (i, j) = (decode_multi_index(t / dim, n, k), decode_multi_index(t % dim, n, k));
        (1..k).map(move |s| (i[s], i[s - 1], j[s], j[s - 1])).collect::<Vec<_>>()
    };
    let entries = match &g.entries {
        GEntries::Exact { order, data } => GEntries::Exact {
            order: *order,
            data: (0..dim * dim)
                .map(|t| {
                    pairs(t)
                        .into_iter()
                        .fold(CycloScalar::one(*order), |acc, (i, a, j, b)| (&acc * &data[idx(n, i, a, j, b)]).reduced())
                })
                .collect(),
        },
        GEntries::Approx(data) => GEntries::Approx(
            (0..dim * dim)
                .map(|t| {
                    pairs(t).into_iter().fold(Complex64::new(1.0, 0.0), |acc, (i, a, j, b)| acc * data[idx(n, i, a, j, b)])
                })
                .collect(),
        ),
    };
    Ok(GPower { n, k, entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hadamard::{fourier, haagerup, tao, Phase};
    use crate::partitions::encode_multi_index;

    #[test]
    fn fourier_values() {
        for n in [2usize, 3, 4] {
            let g = g_tensor(&fourier(n)).unwrap();
            assert!(g.is_exact());
            for t in 0..n.pow(4) {
                let (i, a, j, b) = (t / (n * n * n), (t / (n * n)) % n, (t / n) % n, t % n);
                let expect = if (i + b + 2 * n - j - a) % n == 0 { n as i64 } else { 0 };
                let d = g.get_exact(i, a, j, b).unwrap() - &CycloScalar::from_int(n, expect);
                assert!(d.is_zero(), "n={n} ({i},{a},{j},{b})");
            }
        }
    }

    #[test]
    fn invariants_hold() {
        for h in [tao(), fourier(5)] {
            let g = g_tensor(&h).unwrap();
            assert_eq!(g.diagonal_defect(), 0.0);
            assert_eq!(g.adjoint_defect(), 0.0);
        }
        let g = g_tensor(&haagerup(Phase::angle(1.1))).unwrap();
        assert!(g.diagonal_defect() < 1e-12 && g.adjoint_defect() < 1e-12);
    }

    #[test]
    fn powers() {
        let g = g_tensor(&fourier(2)).unwrap();
        let g2 = g_power(&g, 2).unwrap();
        for t in 0..16 {
            let (i, j) = (t / 4, t % 4);
            let (i1, i2, j1, j2) = (i / 2, i % 2, j / 2, j % 2);
            assert_eq!(g2.get_complex(i, j), g.get_complex(i2, i1, j2, j1));
        }
        let g3 = g_power(&g, 3).unwrap();
        assert_eq!(g3.dim(), 8);
        for i in 0..8 {
            for j in 0..8 {
                let (a, b) = (decode_multi_index(i, 2, 3), decode_multi_index(j, 2, 3));
                let e = g.get_complex(a[2], a[1], b[2], b[1]) * g.get_complex(a[1], a[0], b[1], b[0]);
                assert_eq!(g3.get_complex(i, j), e);
            }
        }
        let g1 = g_power(&g, 1).unwrap();
        assert_eq!(g1.get_complex(0, 1), Complex64::new(1.0, 0.0));
        let t = g_tensor(&tao()).unwrap();
        let t3 = g_power(&t, 3).unwrap();
        for x in 0..6 {
            let i = encode_multi_index(&[x, x, x], 6);
            assert!((t3.get_complex(i, i) - 36.0).norm() < 1e-12);
        }
        assert!(g_power(&g, 0).is_err());
    }
}
