//! Fourier transform over the Klein group Z_2 × Z_2 and the defining
//! relations of C(SO_3^{-1}).

use num::complex::Complex64;

use super::ModelError;
use crate::quantum::MagicUnitary;

/// K = ½·[[1,1,1,1],[1,−1,−1,1],[1,−1,1,−1],[1,1,−1,−1]], symmetric with K² = 1.
pub fn klein_matrix() -> [[f64; 4]; 4] {
    let h = 0.5;
    [[h, h, h, h], [h, -h, -h, h], [h, -h, h, -h], [h, h, -h, -h]]
}

/// An m×m grid of d×d complex matrices, cell (i, j) at index i·m + j.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorGrid {
    pub m: usize,
    pub d: usize,
    pub cells: Vec<Vec<Complex64>>,
}

impl OperatorGrid {
    pub fn cell(&self, i: usize, j: usize) -> &[Complex64] {
        &self.cells[i * self.m + j]
    }

    pub fn cell_mut(&mut self, i: usize, j: usize) -> &mut Vec<Complex64> {
        &mut self.cells[i * self.m + j]
    }

    /// The m×m grid with scalar entries s_ij·1_d.
    pub fn scalar_pattern(m: usize, d: usize, s: &[Vec<f64>]) -> Self {
        let cells = (0..m * m)
            .map(|t| (0..d * d).map(|ab| Complex64::new(if ab / d == ab % d { s[t / m][t % m] } else { 0.0 }, 0.0)).collect())
            .collect();
        OperatorGrid { m, d, cells }
    }
}

fn mat_mul(a: &[Complex64], b: &[Complex64], d: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); d * d];
    for i in 0..d {
        for k in 0..d {
            let x = a[i * d + k];
            if x.re == 0.0 && x.im == 0.0 {
                continue;
            }
            for j in 0..d {
                out[i * d + j] += x * b[k * d + j];
            }
        }
    }
    out
}

fn frob(a: &[Complex64]) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn identity(d: usize) -> Vec<Complex64> {
    (0..d * d).map(|ab| Complex64::new((ab / d == ab % d) as u8 as f64, 0.0)).collect()
}

/// Conjugates u by K and returns the 3×3 block a of K·u·K = diag(1, a).
/// Fails when the first row and column are not those of diag(1, ·) within
/// `tol`.
pub fn klein_fourier(u: &MagicUnitary, tol: f64) -> Result<OperatorGrid, ModelError> {
    if u.n() != 4 {
        return Err(ModelError::InvalidParameter(format!("need a magic unitary of size 4, got {}", u.n())));
    }
    let d = u.d();
    let k = klein_matrix();
    let cells: Vec<Vec<Complex64>> = (0..16).map(|t| u.cell_complex(t / 4, t % 4)).collect();
    let conj: Vec<Vec<Complex64>> = (0..16)
        .map(|t| {
            let (a, b) = (t / 4, t % 4);
            let mut out = vec![Complex64::new(0.0, 0.0); d * d];
            for i in 0..4 {
                for j in 0..4 {
                    let w = k[a][i] * k[j][b];
                    for (o, v) in out.iter_mut().zip(&cells[i * 4 + j]) {
                        *o += v * w;
                    }
                }
            }
            out
        })
        .collect();
    let id = identity(d);
    let mut residual = frob(&conj[0].iter().zip(&id).map(|(a, b)| a - b).collect::<Vec<_>>());
    for t in 1..4 {
        residual = residual.max(frob(&conj[t])).max(frob(&conj[t * 4]));
    }
    if residual > tol {
        return Err(ModelError::NotBlockDiagonal { residual });
    }
    let cells = (0..9).map(|t| conj[(t / 3 + 1) * 4 + t % 3 + 1].clone()).collect();
    Ok(OperatorGrid { m: 3, d, cells })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelationKind {
    SkewCommutation,
    TwistedDeterminant,
    Orthogonality,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RelationDefect {
    pub kind: RelationKind,
    /// (i, j, k, l) for the pair a_ij, a_kl; (i, k) rows/columns are stored
    /// in the first two slots for orthogonality.
    pub indices: (usize, usize, usize, usize),
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RelationReport {
    pub skew_residual: f64,
    pub determinant_residual: f64,
    pub orthogonality_residual: f64,
    pub worst: Option<RelationDefect>,
    pub passes: bool,
}

/// Residuals of a_ij·a_kl = ±a_kl·a_ij (− when exactly one of i = k, j = l
/// holds, + when neither does), of Σ_σ a_1σ(1)·a_2σ(2)·a_3σ(3) = 1, and of
/// a·aᵗ = aᵗ·a = 1.
pub fn check_so3q_relations(a: &OperatorGrid, tol: f64) -> RelationReport {
    let d = a.d;
    let mut worst: Option<RelationDefect> = None;
    let mut note = |kind, indices, residual: f64| {
        if residual > 0.0 && worst.is_none_or(|w| residual > w.residual) {
            worst = Some(RelationDefect { kind, indices, residual });
        }
        residual
    };
    let mut skew = 0f64;
    for p in 0..9 {
        for q in p + 1..9 {
            let ((i, j), (k, l)) = ((p / 3, p % 3), (q / 3, q % 3));
            let sign = if (i == k) != (j == l) { -1.0 } else { 1.0 };
            let lhs = mat_mul(a.cell(i, j), a.cell(k, l), d);
            let rhs = mat_mul(a.cell(k, l), a.cell(i, j), d);
            let r = frob(&lhs.iter().zip(&rhs).map(|(x, y)| x - y * sign).collect::<Vec<_>>());
            skew = skew.max(note(RelationKind::SkewCommutation, (i, j, k, l), r));
        }
    }
    let mut det = vec![Complex64::new(0.0, 0.0); d * d];
    for s in all_permutations(3) {
        let prod = mat_mul(&mat_mul(a.cell(0, s[0]), a.cell(1, s[1]), d), a.cell(2, s[2]), d);
        det.iter_mut().zip(&prod).for_each(|(x, y)| *x += y);
    }
    let id = identity(d);
    let det_r = note(
        RelationKind::TwistedDeterminant,
        (0, 0, 0, 0),
        frob(&det.iter().zip(&id).map(|(x, y)| x - y).collect::<Vec<_>>()),
    );
    let mut orth = 0f64;
    for i in 0..3 {
        for k in 0..3 {
            let target = if i == k { 1.0 } else { 0.0 };
            let mut rows = vec![Complex64::new(0.0, 0.0); d * d];
            let mut cols = vec![Complex64::new(0.0, 0.0); d * d];
            for j in 0..3 {
                rows.iter_mut().zip(mat_mul(a.cell(i, j), a.cell(k, j), d)).for_each(|(x, y)| *x += y);
                cols.iter_mut().zip(mat_mul(a.cell(j, i), a.cell(j, k), d)).for_each(|(x, y)| *x += y);
            }
            let r1 = frob(&rows.iter().zip(&id).map(|(x, y)| x - y * target).collect::<Vec<_>>());
            let r2 = frob(&cols.iter().zip(&id).map(|(x, y)| x - y * target).collect::<Vec<_>>());
            orth = orth.max(note(RelationKind::Orthogonality, (i, k, 0, 0), r1));
            orth = orth.max(note(RelationKind::Orthogonality, (i, k, 1, 1), r2));
        }
    }
    RelationReport {
        skew_residual: skew,
        determinant_residual: det_r,
        orthogonality_residual: orth,
        worst,
        passes: skew.max(det_r).max(orth) <= tol,
    }
}

/// All permutations of 0..n in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut cur: Vec<usize> = (0..n).collect();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("successor exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

/// The classical magic unitary u_ij = [σ(i) = j] with 1×1 cells.
pub fn permutation_magic(sigma: &[usize]) -> MagicUnitary {
    let n = sigma.len();
    let grid = (0..n * n).map(|t| vec![Complex64::new((sigma[t / n] == t % n) as u8 as f64, 0.0)]).collect();
    MagicUnitary::from_complex(n, 1, grid).expect("square grid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{pauli_magic, su2_sample};

    #[test]
    fn klein_is_involution() {
        let k = klein_matrix();
        for i in 0..4 {
            for j in 0..4 {
                let v: f64 = (0..4).map(|t| k[i][t] * k[t][j]).sum();
                assert_eq!(v, if i == j { 1.0 } else { 0.0 });
                assert_eq!(k[i][j], k[j][i]);
            }
        }
    }

    #[test]
    fn identity_pattern() {
        let u = permutation_magic(&[0, 1, 2, 3]);
        let a = klein_fourier(&u, 1e-12).unwrap();
        let id3 = vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]];
        assert_eq!(a, OperatorGrid::scalar_pattern(3, 1, &id3));
        assert!(check_so3q_relations(&a, 0.0).passes);
    }

    #[test]
    fn permutations_and_pauli() {
        assert_eq!(all_permutations(4).len(), 24);
        for s in all_permutations(4) {
            let a = klein_fourier(&permutation_magic(&s), 1e-12).unwrap();
            assert!(a.cells.iter().all(|c| [-1.0, 0.0, 1.0].contains(&c[0].re)));
            assert!(check_so3q_relations(&a, 1e-12).passes, "{s:?}");
        }
        for seed in 0..5 {
            let a = klein_fourier(&pauli_magic(&su2_sample(seed)), 1e-10).unwrap();
            let r = check_so3q_relations(&a, 1e-10);
            assert!(r.passes, "{r:?}");
        }
    }

    #[test]
    fn defects_are_located() {
        let mut a = klein_fourier(&pauli_magic(&su2_sample(2)), 1e-10).unwrap();
        a.cell_mut(1, 2).iter_mut().for_each(|z| *z *= 2.0);
        let r = check_so3q_relations(&a, 1e-10);
        assert!(!r.passes);
        assert!(r.worst.unwrap().residual > 0.1);
        let bad = MagicUnitary::from_complex(
            4,
            1,
            (0..16).map(|t| vec![Complex64::new(if t < 4 { 1.0 } else { 0.0 }, 0.0)]).collect(),
        )
        .unwrap();
        assert!(matches!(klein_fourier(&bad, 1e-9), Err(ModelError::NotBlockDiagonal { .. })));
    }
}
