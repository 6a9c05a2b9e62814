//! Magic unitaries: square grids of projections whose rows and columns sum to
//! the identity.

use num::complex::Complex64;
use num::{BigInt, BigRational};

use super::QuantumError;
use crate::hadamard::HadamardCandidate;
use crate::scalars::{CycloReducer, CycloScalar};

/// Entries of the grid; cell (i, j) is stored at index i·n + j as a d×d
/// row-major matrix.
#[derive(Clone, Debug)]
pub enum MagicEntries {
    Exact { order: usize, grid: Vec<Vec<CycloScalar>> },
    Approx(Vec<Vec<Complex64>>),
}

#[derive(Clone, Debug)]
pub struct MagicUnitary {
    n: usize,
    d: usize,
    entries: MagicEntries,
}

fn check_shape<T>(n: usize, d: usize, grid: &[Vec<T>]) -> Result<(), QuantumError> {
    if n == 0 || d == 0 || grid.len() != n * n || grid.iter().any(|m| m.len() != d * d) {
        return Err(QuantumError::InvalidParameter(format!("grid must hold {} matrices of size {d}x{d}", n * n)));
    }
    Ok(())
}

impl MagicUnitary {
    pub fn from_complex(n: usize, d: usize, grid: Vec<Vec<Complex64>>) -> Result<Self, QuantumError> {
        check_shape(n, d, &grid)?;
        Ok(MagicUnitary { n, d, entries: MagicEntries::Approx(grid) })
    }

    pub fn from_exact(n: usize, d: usize, order: usize, grid: Vec<Vec<CycloScalar>>) -> Result<Self, QuantumError> {
        check_shape(n, d, &grid)?;
        let grid = grid.into_iter().map(|m| m.into_iter().map(|x| x.promote(order)).collect()).collect();
        Ok(MagicUnitary { n, d, entries: MagicEntries::Exact { order, grid } })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn entries(&self) -> &MagicEntries {
        &self.entries
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.entries, MagicEntries::Exact { .. })
    }

    /// Cell (i, j) as a complex d×d row-major matrix.
    pub fn cell_complex(&self, i: usize, j: usize) -> Vec<Complex64> {
        match &self.entries {
            MagicEntries::Exact { grid, .. } => grid[i * self.n + j].iter().map(|x| x.eval().0).collect(),
            MagicEntries::Approx(grid) => grid[i * self.n + j].clone(),
        }
    }

    pub fn to_complex(&self) -> MagicUnitary {
        let grid = (0..self.n * self.n).map(|c| self.cell_complex(c / self.n, c % self.n)).collect();
        MagicUnitary { n: self.n, d: self.d, entries: MagicEntries::Approx(grid) }
    }
}

/// P_ij = (1/n)·ξξ* with ξ = H_i/H_j, i.e. (P_ij)_ab = H_ia·conj(H_ja)·conj(H_ib)·H_jb / n.
pub fn magic_from_hadamard(h: &HadamardCandidate) -> Result<MagicUnitary, QuantumError> {
    if let Some((a, b)) = h.first_non_orthogonal_pair() {
        return Err(QuantumError::NotHadamard(a, b));
    }
    let n = h.n();
    if let Some((l, e)) = h.as_butson() {
        let order = l as usize;
        let inv_n = BigRational::new(BigInt::from(1), BigInt::from(n));
        let grid = (0..n * n)
            .map(|c| {
                let (i, j) = (c / n, c % n);
                (0..n * n)
                    .map(|ab| {
                        let (a, b) = (ab / n, ab % n);
                        CycloScalar::root(order, e[i][a] - e[j][a] - e[i][b] + e[j][b]).scale(&inv_n)
                    })
                    .collect()
            })
            .collect();
        return Ok(MagicUnitary { n, d: n, entries: MagicEntries::Exact { order, grid } });
    }
    let hc = h.to_complex();
    let grid = (0..n * n)
        .map(|c| {
            let (i, j) = (c / n, c % n);
            (0..n * n)
                .map(|ab| {
                    let (a, b) = (ab / n, ab % n);
                    hc[i][a] * hc[j][a].conj() * hc[i][b].conj() * hc[j][b] / n as f64
                })
                .collect()
        })
        .collect();
    Ok(MagicUnitary { n, d: n, entries: MagicEntries::Approx(grid) })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DefectKind {
    Idempotent,
    SelfAdjoint,
    RowSum,
    ColumnSum,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MagicDefect {
    pub kind: DefectKind,
    /// Cell (i, j) for projection defects, (row, row) or (col, col) for sums.
    pub index: (usize, usize),
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MagicReport {
    pub idempotent_residual: f64,
    pub adjoint_residual: f64,
    pub row_sum_residual: f64,
    pub column_sum_residual: f64,
    pub exact: bool,
    /// Largest defect.
    pub worst: Option<MagicDefect>,
    pub passes: bool,
}

impl MagicReport {
    pub fn max_residual(&self) -> f64 {
        self.idempotent_residual.max(self.adjoint_residual).max(self.row_sum_residual).max(self.column_sum_residual)
    }
}

trait Mat: Clone {
    fn mul(&self, other: &Self, d: usize) -> Self;
    fn adjoint(&self, d: usize) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn identity_like(&self, d: usize) -> Self;
    /// Frobenius norm, 0 exactly for exact zero.
    fn norm(&self) -> f64;
}

impl Mat for Vec<Complex64> {
    fn mul(&self, o: &Self, d: usize) -> Self {
        let mut out = vec![Complex64::new(0.0, 0.0); d * d];
        for a in 0..d {
            for c in 0..d {
                let x = self[a * d + c];
                for b in 0..d {
                    out[a * d + b] += x * o[c * d + b];
                }
            }
        }
        out
    }
    fn adjoint(&self, d: usize) -> Self {
        (0..d * d).map(|ab| self[(ab % d) * d + ab / d].conj()).collect()
    }
    fn sub(&self, o: &Self) -> Self {
        self.iter().zip(o).map(|(a, b)| a - b).collect()
    }
    fn add(&self, o: &Self) -> Self {
        self.iter().zip(o).map(|(a, b)| a + b).collect()
    }
    fn identity_like(&self, d: usize) -> Self {
        (0..d * d).map(|ab| Complex64::new((ab / d == ab % d) as u8 as f64, 0.0)).collect()
    }
    fn norm(&self) -> f64 {
        self.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }
}

impl Mat for Vec<CycloScalar> {
    fn mul(&self, o: &Self, d: usize) -> Self {
        let order = self[0].order();
        let mut out = vec![CycloScalar::zero(order); d * d];
        for a in 0..d {
            for c in 0..d {
                let x = &self[a * d + c];
                if x.coeffs().iter().all(|q| q == &BigRational::from_integer(0.into())) {
                    continue;
                }
                for b in 0..d {
                    out[a * d + b] = &out[a * d + b] + &(x * &o[c * d + b]);
                }
            }
        }
        out
    }
    fn adjoint(&self, d: usize) -> Self {
        (0..d * d).map(|ab| self[(ab % d) * d + ab / d].conj()).collect()
    }
    fn sub(&self, o: &Self) -> Self {
        self.iter().zip(o).map(|(a, b)| a - b).collect()
    }
    fn add(&self, o: &Self) -> Self {
        self.iter().zip(o).map(|(a, b)| a + b).collect()
    }
    fn identity_like(&self, d: usize) -> Self {
        let order = self[0].order();
        (0..d * d).map(|ab| CycloScalar::from_int(order, (ab / d == ab % d) as i64)).collect()
    }
    fn norm(&self) -> f64 {
        if self.iter().all(|x| x.is_zero()) {
            return 0.0;
        }
        self.iter().map(|x| x.eval().0.norm_sqr()).sum::<f64>().sqrt()
    }
}

fn check_grid<M: Mat>(n: usize, d: usize, grid: &[M], tol: f64, exact: bool) -> MagicReport {
    let mut worst: Option<MagicDefect> = None;
    let mut note = |kind, index, residual: f64| {
        if residual > 0.0 && worst.is_none_or(|w| residual > w.residual) {
            worst = Some(MagicDefect { kind, index, residual });
        }
        residual
    };
    let (mut idem, mut adj, mut rows, mut cols) = (0f64, 0f64, 0f64, 0f64);
    let id = grid[0].identity_like(d);
    for i in 0..n {
        for j in 0..n {
            let p = &grid[i * n + j];
            idem = idem.max(note(DefectKind::Idempotent, (i, j), p.mul(p, d).sub(p).norm()));
            adj = adj.max(note(DefectKind::SelfAdjoint, (i, j), p.adjoint(d).sub(p).norm()));
        }
    }
    for i in 0..n {
        let r = (1..n).fold(grid[i * n].clone(), |acc, j| acc.add(&grid[i * n + j]));
        rows = rows.max(note(DefectKind::RowSum, (i, i), r.sub(&id).norm()));
        let c = (1..n).fold(grid[i].clone(), |acc, j| acc.add(&grid[j * n + i]));
        cols = cols.max(note(DefectKind::ColumnSum, (i, i), c.sub(&id).norm()));
    }
    let passes = idem.max(adj).max(rows).max(cols) <= tol;
    MagicReport {
        idempotent_residual: idem,
        adjoint_residual: adj,
        row_sum_residual: rows,
        column_sum_residual: cols,
        exact,
        worst,
        passes,
    }
}

/// Residuals ‖p² − p‖, ‖p* − p‖ and ‖Σ − 1‖ over every cell, row and column.
pub fn check_magic(p: &MagicUnitary, tol: f64) -> MagicReport {
    match &p.entries {
        MagicEntries::Exact { grid, .. } => check_grid(p.n, p.d, grid, tol, true),
        MagicEntries::Approx(grid) => check_grid(p.n, p.d, grid, tol, false),
    }
}

/// Connected components of the graph on [n] joining i and j when P_ij ≠ 0.
pub fn orbit_components(p: &MagicUnitary, tol: f64) -> usize {
    let n = p.n;
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    for i in 0..n {
        for j in 0..n {
            let nonzero = match &p.entries {
                MagicEntries::Exact { grid, .. } => grid[i * n + j].iter().any(|x| !x.is_zero()),
                MagicEntries::Approx(grid) => grid[i * n + j].iter().any(|z| z.norm() > tol),
            };
            if nonzero {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    (0..n).filter(|&i| find(&mut parent, i) == i).count()
}

#[derive(Clone, Debug, PartialEq)]
pub struct CommutativityReport {
    pub commutative: bool,
    /// A pair of cells with a non-vanishing commutator and its Frobenius norm.
    pub witness: Option<((usize, usize), (usize, usize), f64)>,
}

/// Whether all P_ij of the magic unitary of H commute. Exact for Butson
/// matrices.
pub fn image_commutative(h: &HadamardCandidate, tol: f64) -> Result<CommutativityReport, QuantumError> {
    if let Some((a, b)) = h.first_non_orthogonal_pair() {
        return Err(QuantumError::NotHadamard(a, b));
    }
    let n = h.n();
    if let Some((l, e)) = h.as_butson() {
        // n·P_ij has entries ζ^{E(i,j;a,b)}; compare root counts of both products.
        let l = l as usize;
        let red = CycloReducer::new(l);
        let ex = |i: usize, j: usize, a: usize, b: usize| e[i][a] - e[j][a] - e[i][b] + e[j][b];
        let mut counts = vec![0i64; l];
        for c1 in 0..n * n {
            for c2 in c1 + 1..n * n {
                let ((i, j), (k, m)) = ((c1 / n, c1 % n), (c2 / n, c2 % n));
                for a in 0..n {
                    for b in 0..n {
                        counts.iter_mut().for_each(|x| *x = 0);
                        for c in 0..n {
                            counts[(ex(i, j, a, c) + ex(k, m, c, b)).rem_euclid(l as i64) as usize] += 1;
                            counts[(ex(k, m, a, c) + ex(i, j, c, b)).rem_euclid(l as i64) as usize] -= 1;
                        }
                        if !red.is_zero(&counts) {
                            let p = magic_from_hadamard(h)?.to_complex();
                            let (x, y) = (p.cell_complex(i, j), p.cell_complex(k, m));
                            let r = x.mul(&y, n).sub(&y.mul(&x, n)).norm();
                            return Ok(CommutativityReport { commutative: false, witness: Some(((i, j), (k, m), r)) });
                        }
                    }
                }
            }
        }
        return Ok(CommutativityReport { commutative: true, witness: None });
    }
    let p = magic_from_hadamard(h)?;
    let cells: Vec<Vec<Complex64>> = (0..n * n).map(|c| p.cell_complex(c / n, c % n)).collect();
    let mut worst: Option<((usize, usize), (usize, usize), f64)> = None;
    for c1 in 0..n * n {
        for c2 in c1 + 1..n * n {
            let r = cells[c1].mul(&cells[c2], n).sub(&cells[c2].mul(&cells[c1], n)).norm();
            if r > tol && worst.is_none_or(|w| r > w.2) {
                worst = Some(((c1 / n, c1 % n), (c2 / n, c2 % n), r));
            }
        }
    }
    Ok(CommutativityReport { commutative: worst.is_none(), witness: worst })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hadamard::{f4q, fourier, fourier_tensor, haagerup, tao, Phase};

    #[test]
    fn f2_projections() {
        let p = magic_from_hadamard(&fourier(2)).unwrap();
        let half = Complex64::new(0.5, 0.0);
        assert_eq!(p.cell_complex(0, 1), vec![half, -half, -half, half]);
        for i in 0..2 {
            assert_eq!(p.cell_complex(i, i), vec![half; 4]);
        }
    }

    #[test]
    fn hadamard_magics_pass_exactly() {
        for h in [fourier(3), fourier(4), tao(), fourier_tensor(&[2, 3])] {
            let r = check_magic(&magic_from_hadamard(&h).unwrap(), 0.0);
            assert!(r.passes && r.exact, "{}", h.label());
            assert_eq!(r.max_residual(), 0.0);
        }
        let r = check_magic(&magic_from_hadamard(&haagerup(Phase::angle(0.4))).unwrap(), 1e-12);
        assert!(r.passes && !r.exact);
    }

    #[test]
    fn two_by_two_grid_and_defect() {
        // [[p, 1-p], [1-p, p]] for the projection onto (cos t, e^{is} sin t)
        let (t, s) = (0.7f64, 1.3f64);
        let v = [Complex64::new(t.cos(), 0.0), Complex64::from_polar(t.sin(), s)];
        let p: Vec<Complex64> = (0..4).map(|ab| v[ab / 2] * v[ab % 2].conj()).collect();
        let q: Vec<Complex64> = p.identity_like(2).sub(&p);
        let m = MagicUnitary::from_complex(2, 2, vec![p.clone(), q.clone(), q.clone(), p.clone()]).unwrap();
        assert!(check_magic(&m, 1e-12).passes);
        let mut bad = p.clone();
        bad[0] += Complex64::new(0.3, 0.0);
        let m = MagicUnitary::from_complex(2, 2, vec![p.clone(), q.clone(), q, bad]).unwrap();
        let r = check_magic(&m, 1e-12);
        assert!(!r.passes);
        let w = r.worst.unwrap();
        assert_eq!(w.index, (1, 1));
        assert!(matches!(w.kind, DefectKind::Idempotent | DefectKind::RowSum | DefectKind::ColumnSum));
        assert!(r.idempotent_residual > 0.1);
    }

    #[test]
    fn commutativity() {
        assert!(image_commutative(&fourier(5), 1e-9).unwrap().commutative);
        assert!(image_commutative(&fourier_tensor(&[2, 3]), 1e-9).unwrap().commutative);
        let t = image_commutative(&tao(), 1e-9).unwrap();
        assert!(!t.commutative);
        assert!(t.witness.unwrap().2 > 1e-3);
        assert!(!image_commutative(&f4q(Phase::angle(0.3)), 1e-9).unwrap().commutative);
        assert!(image_commutative(&f4q(Phase::ONE), 1e-9).unwrap().commutative);
    }

    #[test]
    fn components() {
        assert_eq!(orbit_components(&magic_from_hadamard(&tao()).unwrap(), 1e-12), 1);
        let id = |on: bool| -> Vec<Complex64> { vec![Complex64::new(on as u8 as f64, 0.0)] };
        let diag = MagicUnitary::from_complex(2, 1, vec![id(true), id(false), id(false), id(true)]).unwrap();
        assert!(check_magic(&diag, 0.0).passes);
        assert_eq!(orbit_components(&diag, 1e-12), 2);
    }
}
