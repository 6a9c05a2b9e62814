//! Exhaustive search of dephased Butson matrices.
//!
//! Every class has a dephased representative whose rows and columns are both
//! lexicographically increasing (a doubly lexical ordering keeps the all-zero
//! first row and column in front). Rows are chosen in increasing order from
//! the vectors orthogonal to the first row; two such vectors u, v are
//! orthogonal exactly when u − v is again such a vector.

use std::collections::HashMap;

use super::{equivalent, fingerprint, HadamardCandidate, HadamardError};
use crate::scalars::CycloReducer;

pub const DEFAULT_NODE_BUDGET: u64 = 200_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnumerationMode {
    AnyWitness,
    AllDephasedClasses,
}

#[derive(Clone, Debug, Default)]
pub struct EnumerationStats {
    pub nodes: u64,
    pub candidate_rows: usize,
    pub complete_matrices: u64,
}

struct Enumerator {
    n: usize,
    l: usize,
    digits: Vec<Vec<u8>>,
    is_candidate: Vec<bool>,
    budget: u64,
    nodes: u64,
    mode: EnumerationMode,
    found: Vec<Vec<usize>>,
}

impl Enumerator {
    fn diff_code(&self, a: usize, b: usize) -> usize {
        let (da, db) = (&self.digits[a], &self.digits[b]);
        let mut code = 0;
        for k in 0..self.n - 1 {
            code = code * self.l + (da[k] as usize + self.l - db[k] as usize) % self.l;
        }
        code
    }

    fn code_of(&self, idx: usize) -> usize {
        self.digits[idx].iter().fold(0, |acc, &d| acc * self.l + d as usize)
    }

    fn orthogonal(&self, a: usize, b: usize) -> bool {
        self.is_candidate[self.diff_code(a, b)]
    }

    // eq[j]: columns j and j+1 agree on all rows so far (column 0 is the
    // implicit zero column, so digit k is column k+1).
    fn row_allowed(&self, v: usize, eq: &[bool]) -> bool {
        let d = &self.digits[v];
        for (j, &e) in eq.iter().enumerate() {
            if e {
                let left = if j == 0 { 0 } else { d[j - 1] };
                if left > d[j] {
                    return false;
                }
            }
        }
        true
    }

    fn dfs(&mut self, chosen: &mut Vec<usize>, compat: &[usize], eq: &[bool]) -> Result<bool, HadamardError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(HadamardError::BudgetExceeded(self.budget));
        }
        if chosen.len() == self.n - 1 {
            self.found.push(chosen.clone());
            return Ok(self.mode == EnumerationMode::AnyWitness);
        }
        let need = self.n - 1 - chosen.len();
        for (pos, &v) in compat.iter().enumerate() {
            if compat.len() - pos < need {
                break;
            }
            if !self.row_allowed(v, eq) {
                continue;
            }
            let next: Vec<usize> = compat[pos + 1..].iter().copied().filter(|&w| self.orthogonal(v, w)).collect();
            if next.len() + 1 < need {
                continue;
            }
            let d = &self.digits[v];
            let next_eq: Vec<bool> = eq
                .iter()
                .enumerate()
                .map(|(j, &e)| e && (if j == 0 { 0 } else { d[j - 1] }) == d[j])
                .collect();
            chosen.push(v);
            if self.dfs(chosen, &next, &next_eq)? {
                return Ok(true);
            }
            chosen.pop();
        }
        Ok(false)
    }
}

fn to_matrix(e: &Enumerator, rows: &[usize], label: String) -> HadamardCandidate {
    let mut exps = vec![vec![0i64; e.n]];
    for &r in rows {
        let mut row = vec![0i64];
        row.extend(e.digits[r].iter().map(|&d| d as i64));
        exps.push(row);
    }
    HadamardCandidate::butson(e.l as u64, exps, label).expect("square")
}

/// Dephased members of H_n(l): one witness, or one representative per
/// equivalence class.
pub fn butson_enumerate(
    n: usize,
    l: usize,
    mode: EnumerationMode,
    budget: u64,
) -> Result<(Vec<HadamardCandidate>, EnumerationStats), HadamardError> {
    if n == 0 || l < 2 {
        return Err(HadamardError::InvalidParameter(format!("need n >= 1 and l >= 2, got n = {n}, l = {l}")));
    }
    if n == 1 {
        let h = HadamardCandidate::butson(l as u64, vec![vec![0]], format!("butson({n},{l})#1"))?;
        return Ok((vec![h], EnumerationStats { nodes: 1, candidate_rows: 0, complete_matrices: 1 }));
    }
    let width = n - 1;
    let total = l.checked_pow(width as u32).filter(|&t| t <= 1 << 26).ok_or_else(|| {
        HadamardError::InvalidParameter(format!("search space {l}^{width} is too large"))
    })?;
    let red = CycloReducer::new(l);
    let pow: Vec<usize> = (0..width).map(|k| l.pow((width - 1 - k) as u32)).collect();
    let mut is_candidate = vec![false; total];
    let mut digits = Vec::new();
    let mut counts = vec![0i64; l];
    for code in 0..total {
        let d: Vec<u8> = pow.iter().map(|&p| ((code / p) % l) as u8).collect();
        counts.iter_mut().for_each(|c| *c = 0);
        counts[0] = 1;
        for &x in &d {
            counts[x as usize] += 1;
        }
        if red.is_zero(&counts) {
            is_candidate[code] = true;
            digits.push(d);
        }
    }
    let mut e = Enumerator { n, l, digits, is_candidate, budget, nodes: 0, mode, found: Vec::new() };
    debug_assert!((0..e.digits.len()).all(|i| e.is_candidate[e.code_of(i)]));
    let all: Vec<usize> = (0..e.digits.len()).collect();
    let mut chosen = Vec::new();
    e.dfs(&mut chosen, &all, &vec![true; width])?;

    let mut stats = EnumerationStats { nodes: e.nodes, candidate_rows: e.digits.len(), complete_matrices: e.found.len() as u64 };
    let found = std::mem::take(&mut e.found);
    let mats: Vec<HadamardCandidate> =
        found.iter().enumerate().map(|(i, rows)| to_matrix(&e, rows, format!("butson({n},{l})#{}", i + 1))).collect();
    if mode == EnumerationMode::AnyWitness {
        return Ok((mats, stats));
    }
    let mut buckets: HashMap<super::Fingerprint, Vec<usize>> = HashMap::new();
    let mut classes: Vec<HadamardCandidate> = Vec::new();
    for m in mats {
        let fp = fingerprint(&m);
        let reps = buckets.entry(fp).or_default();
        let mut new_class = true;
        for &r in reps.iter() {
            if equivalent(&classes[r], &m)? {
                new_class = false;
                break;
            }
        }
        if new_class {
            reps.push(classes.len());
            let label = format!("butson({n},{l})#{}", classes.len() + 1);
            classes.push(m.with_label(label));
        }
    }
    stats.complete_matrices = stats.complete_matrices.max(classes.len() as u64);
    Ok((classes, stats))
}
