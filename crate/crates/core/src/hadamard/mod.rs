//! Complex Hadamard matrices: construction, normalization, equivalence,
//! regularity, Butson enumeration and obstructions.

mod butson;
mod construct;
mod equivalence;
pub mod io;
mod level;
mod norm;
mod obstruct;
mod regular;

pub use butson::{butson_enumerate, EnumerationMode, EnumerationStats, DEFAULT_NODE_BUDGET};
pub use construct::{
    bjorck_froberg, dita, f4q, f6_col, f6_row, fourier, fourier_tensor, haagerup, named, petrescu, prop46_parameters,
    tao, tensor, DeformationParams,
};
pub use equivalence::{equivalent, equivalent_verdict, fingerprint, Equivalence, Fingerprint, EXHAUSTIVE_MAX_ORDER};
pub use level::{level, Level};
pub use norm::{haar_sample, i_g_estimate, i_g_estimate_many, one_norm, Estimate, MatrixGroup};
pub use obstruct::{
    catalog_of_order, obstruction_table, obstructions, reference_cell, table_cell, Rule, RuleCheck, RuleOutcome, TableCell, TableSymbol, Verdict,
};
pub use regular::{is_regular, Cycle, PairDecomposition, Regularity};

use num::complex::Complex64;
use num::integer::Integer;

use crate::scalars::{CycloReducer, CycloScalar, DEFAULT_TOL};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum HadamardError {
    #[error("malformed matrix: {0}")]
    MalformedMatrix(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("unknown matrix name: {0}")]
    UnknownName(String),
    #[error("exhaustive equivalence is limited to order {max}, got {n}")]
    OrderTooLarge { n: usize, max: usize },
    #[error("search exceeded the node budget of {0}")]
    BudgetExceeded(u64),
    #[error("not a Hadamard matrix: rows {0} and {1} are not orthogonal")]
    NotHadamard(usize, usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// A unimodular scalar, exact when it is a root of unity.
#[derive(Clone, Copy, Debug)]
pub enum Phase {
    /// e^{2πi·exp/order}
    Root { order: u64, exp: i64 },
    Complex(Complex64),
}

impl Phase {
    pub const ONE: Phase = Phase::Root { order: 1, exp: 0 };

    pub fn root(order: u64, exp: i64) -> Phase {
        assert!(order >= 1);
        Phase::Root { order, exp: exp.rem_euclid(order as i64) }
    }

    /// e^{iθ}
    pub fn angle(theta: f64) -> Phase {
        Phase::Complex(Complex64::from_polar(1.0, theta))
    }

    pub fn value(&self) -> Complex64 {
        match *self {
            Phase::Root { order, exp } => {
                let e = exp.rem_euclid(order as i64) as u64;
                if (4 * e).is_multiple_of(order) {
                    return [Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0), Complex64::new(-1.0, 0.0), Complex64::new(0.0, -1.0)]
                        [(4 * e / order) as usize];
                }
                Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * e as f64 / order as f64)
            }
            Phase::Complex(z) => z,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Phase::Root { .. })
    }

    pub fn mul(self, other: Phase) -> Phase {
        match (self, other) {
            (Phase::Root { order: a, exp: x }, Phase::Root { order: b, exp: y }) => {
                let m = a.lcm(&b);
                Phase::root(m, x * (m / a) as i64 + y * (m / b) as i64)
            }
            _ => Phase::Complex(self.value() * other.value()),
        }
    }

    pub fn conj(self) -> Phase {
        match self {
            Phase::Root { order, exp } => Phase::root(order, -exp),
            Phase::Complex(z) => Phase::Complex(z.conj()),
        }
    }

    pub fn neg(self) -> Phase {
        self.mul(Phase::root(2, 1))
    }
}

/// Matrix entries: exact exponents of a root of unity, or floating values.
#[derive(Clone, Debug)]
pub enum Entries {
    /// Entry (i, j) is ζ_level^{exponents[i][j]}; exponents lie in [0, level).
    Butson { level: u64, exponents: Vec<Vec<i64>> },
    Complex(Vec<Vec<Complex64>>),
}

#[derive(Clone, Debug)]
pub struct HadamardCandidate {
    n: usize,
    entries: Entries,
    label: String,
}

fn check_square<T>(rows: &[Vec<T>]) -> Result<usize, HadamardError> {
    let n = rows.len();
    if n == 0 {
        return Err(HadamardError::MalformedMatrix("empty matrix".into()));
    }
    if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
        return Err(HadamardError::MalformedMatrix(format!("row {} has {} entries, expected {n}", i + 1, r.len())));
    }
    Ok(n)
}

impl HadamardCandidate {
    pub fn butson(level: u64, exponents: Vec<Vec<i64>>, label: impl Into<String>) -> Result<Self, HadamardError> {
        if level == 0 {
            return Err(HadamardError::MalformedMatrix("level must be positive".into()));
        }
        let n = check_square(&exponents)?;
        let exponents = exponents.into_iter().map(|r| r.into_iter().map(|e| e.rem_euclid(level as i64)).collect()).collect();
        Ok(HadamardCandidate { n, entries: Entries::Butson { level, exponents }, label: label.into() })
    }

    pub fn complex(rows: Vec<Vec<Complex64>>, label: impl Into<String>) -> Result<Self, HadamardError> {
        let n = check_square(&rows)?;
        for (i, r) in rows.iter().enumerate() {
            for (j, z) in r.iter().enumerate() {
                if ((z.norm() - 1.0).abs()) > 1e-8 || !z.re.is_finite() || !z.im.is_finite() {
                    return Err(HadamardError::MalformedMatrix(format!(
                        "entry ({}, {}) has modulus {}",
                        i + 1,
                        j + 1,
                        z.norm()
                    )));
                }
            }
        }
        Ok(HadamardCandidate { n, entries: Entries::Complex(rows), label: label.into() })
    }

    /// From a grid of phases: exact when every phase is a root of unity.
    pub fn from_phases(rows: Vec<Vec<Phase>>, label: impl Into<String>) -> Result<Self, HadamardError> {
        check_square(&rows)?;
        if rows.iter().flatten().all(Phase::is_exact) {
            let level = rows
                .iter()
                .flatten()
                .fold(1u64, |acc, p| if let Phase::Root { order, .. } = p { acc.lcm(order) } else { acc });
            let exps = rows
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|p| match *p {
                            Phase::Root { order, exp } => exp * (level / order) as i64,
                            Phase::Complex(_) => unreachable!(),
                        })
                        .collect()
                })
                .collect();
            Self::butson(level, exps, label)
        } else {
            Self::complex(rows.iter().map(|r| r.iter().map(Phase::value).collect()).collect(), label)
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn entries(&self) -> &Entries {
        &self.entries
    }

    pub fn is_butson(&self) -> bool {
        matches!(self.entries, Entries::Butson { .. })
    }

    /// (stored level, exponents) for exact matrices.
    pub fn as_butson(&self) -> Option<(u64, &Vec<Vec<i64>>)> {
        match &self.entries {
            Entries::Butson { level, exponents } => Some((*level, exponents)),
            Entries::Complex(_) => None,
        }
    }

    pub fn phase(&self, i: usize, j: usize) -> Phase {
        match &self.entries {
            Entries::Butson { level, exponents } => Phase::root(*level, exponents[i][j]),
            Entries::Complex(rows) => Phase::Complex(rows[i][j]),
        }
    }

    pub fn phases(&self) -> Vec<Vec<Phase>> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.phase(i, j)).collect()).collect()
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.phase(i, j).value()
    }

    pub fn to_complex(&self) -> Vec<Vec<Complex64>> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.entry(i, j)).collect()).collect()
    }

    /// Exact entry of a Butson matrix.
    pub fn cyclo_entry(&self, i: usize, j: usize) -> Option<CycloScalar> {
        self.as_butson().map(|(l, e)| CycloScalar::root(l as usize, e[i][j]))
    }

    /// Forget exactness.
    pub fn to_complex_form(&self) -> HadamardCandidate {
        HadamardCandidate { n: self.n, entries: Entries::Complex(self.to_complex()), label: self.label.clone() }
    }

    /// First pair of distinct rows that fail to be orthogonal.
    pub fn first_non_orthogonal_pair(&self) -> Option<(usize, usize)> {
        let n = self.n;
        match &self.entries {
            Entries::Butson { level, exponents } => {
                let red = CycloReducer::new(*level as usize);
                let l = *level as i64;
                for i in 0..n {
                    for j in i + 1..n {
                        let mut counts = vec![0i64; l as usize];
                        for k in 0..n {
                            counts[(exponents[i][k] - exponents[j][k]).rem_euclid(l) as usize] += 1;
                        }
                        if !red.is_zero(&counts) {
                            return Some((i, j));
                        }
                    }
                }
                None
            }
            Entries::Complex(rows) => {
                let tol = n as f64 * DEFAULT_TOL;
                for i in 0..n {
                    for j in i + 1..n {
                        let s: Complex64 = (0..n).map(|k| rows[i][k] * rows[j][k].conj()).sum();
                        if s.norm() > tol {
                            return Some((i, j));
                        }
                    }
                }
                None
            }
        }
    }

    fn columns_orthogonal(&self) -> bool {
        let t = self.transpose();
        t.first_non_orthogonal_pair().is_none()
    }

    pub fn transpose(&self) -> HadamardCandidate {
        let n = self.n;
        let entries = match &self.entries {
            Entries::Butson { level, exponents } => Entries::Butson {
                level: *level,
                exponents: (0..n).map(|i| (0..n).map(|j| exponents[j][i]).collect()).collect(),
            },
            Entries::Complex(rows) => Entries::Complex((0..n).map(|i| (0..n).map(|j| rows[j][i]).collect()).collect()),
        };
        HadamardCandidate { n, entries, label: format!("transpose({})", self.label) }
    }

    /// Apply row and column permutations: result(i, j) = self(rows[i], cols[j]).
    pub fn permuted(&self, rows: &[usize], cols: &[usize]) -> HadamardCandidate {
        let grid = rows.iter().map(|&r| cols.iter().map(|&c| self.phase(r, c)).collect()).collect();
        Self::from_phases_like(self, grid, self.label.clone())
    }

    /// Multiply row i by row_scale[i] and column j by col_scale[j].
    pub fn scaled(&self, row_scale: &[Phase], col_scale: &[Phase]) -> HadamardCandidate {
        let grid = (0..self.n)
            .map(|i| (0..self.n).map(|j| row_scale[i].mul(self.phase(i, j)).mul(col_scale[j])).collect())
            .collect();
        Self::from_phases_like(self, grid, self.label.clone())
    }

    // Keeps the stored level of an exact matrix when the grid stays exact.
    fn from_phases_like(base: &HadamardCandidate, grid: Vec<Vec<Phase>>, label: String) -> HadamardCandidate {
        if let (Some((l, _)), true) = (base.as_butson(), grid.iter().flatten().all(Phase::is_exact)) {
            let mut level = l;
            for p in grid.iter().flatten() {
                if let Phase::Root { order, .. } = p {
                    level = level.lcm(order);
                }
            }
            let exps = grid
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|p| match *p {
                            Phase::Root { order, exp } => exp * (level / order) as i64,
                            Phase::Complex(_) => unreachable!(),
                        })
                        .collect()
                })
                .collect();
            HadamardCandidate::butson(level, exps, label).expect("square by construction")
        } else {
            HadamardCandidate::from_phases(grid, label).expect("unimodular by construction")
        }
    }
}

/// Whether all distinct rows are orthogonal. Column orthogonality is implied
/// and is checked as well.
pub fn verify(h: &HadamardCandidate) -> bool {
    h.first_non_orthogonal_pair().is_none() && h.columns_orthogonal()
}

/// Normalize so that the first row and column are all ones.
pub fn dephase(h: &HadamardCandidate) -> HadamardCandidate {
    let n = h.n;
    let label = if h.label.starts_with("dephase(") { h.label.clone() } else { format!("dephase({})", h.label) };
    match &h.entries {
        Entries::Butson { level, exponents } => {
            let l = *level as i64;
            let e = exponents;
            let exps =
                (0..n).map(|i| (0..n).map(|j| (e[i][j] - e[i][0] - e[0][j] + e[0][0]).rem_euclid(l)).collect()).collect();
            HadamardCandidate::butson(*level, exps, label).expect("square")
        }
        Entries::Complex(rows) => {
            let r = rows;
            let out = (0..n)
                .map(|i| (0..n).map(|j| { let z = r[i][j] * r[0][0] / (r[i][0] * r[0][j]); z / z.norm() }).collect())
                .collect();
            HadamardCandidate { n, entries: Entries::Complex(out), label }
        }
    }
}

impl std::fmt::Display for Phase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Phase::Root { order, exp } => write!(f, "root:{exp}/{order}"),
            Phase::Complex(z) => write!(f, "phase:{}", z.arg()),
        }
    }
}
