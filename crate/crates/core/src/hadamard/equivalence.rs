//! Equivalence of Hadamard matrices under row/column permutations and
//! unimodular row/column scalings.

use num::integer::Integer;

use super::{dephase, Entries, HadamardCandidate, HadamardError};

pub const EXHAUSTIVE_MAX_ORDER: usize = 8;
const GRID: f64 = 1e6;

/// Sorted multiset of the quadruple products H_ij·conj(H_kj)·conj(H_il)·H_kl
/// over i < k, j < l. Swapping two rows or two columns conjugates a product,
/// so each is recorded as (Re, |Im|) on a rounding grid.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fingerprint(pub Vec<(i64, i64)>);

fn grid(x: f64) -> i64 {
    (x * GRID).round() as i64
}

pub fn fingerprint(h: &HadamardCandidate) -> Fingerprint {
    let n = h.n();
    let m = h.to_complex();
    let mut out = Vec::with_capacity(n * n * (n.max(1) - 1) * (n.max(1) - 1) / 4);
    for i in 0..n {
        for k in i + 1..n {
            for j in 0..n {
                for l in j + 1..n {
                    let q = m[i][j] * m[k][j].conj() * m[i][l].conj() * m[k][l];
                    out.push((grid(q.re), grid(q.im).abs()));
                }
            }
        }
    }
    out.sort_unstable();
    Fingerprint(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Equivalence {
    Equivalent,
    Inequivalent,
    /// Fingerprints agree but the order is beyond exhaustive search.
    Unknown,
}

type Key = (i64, i64);

// Entry keys comparable across both matrices: exact exponents at a common
// level when both are Butson, grid-rounded values otherwise.
fn keys(a: &HadamardCandidate, b: &HadamardCandidate) -> (Vec<Vec<Key>>, Vec<Vec<Key>>) {
    if let (Entries::Butson { level: la, exponents: ea }, Entries::Butson { level: lb, exponents: eb }) =
        (a.entries(), b.entries())
    {
        let l = la.lcm(lb);
        let conv = |e: &Vec<Vec<i64>>, s: u64| -> Vec<Vec<Key>> {
            e.iter().map(|r| r.iter().map(|&x| (x * s as i64, 0)).collect()).collect()
        };
        return (conv(ea, l / la), conv(eb, l / lb));
    }
    let conv = |h: &HadamardCandidate| -> Vec<Vec<Key>> {
        h.to_complex().iter().map(|r| r.iter().map(|z| (grid(z.re), grid(z.im))).collect()).collect()
    };
    (conv(a), conv(b))
}

fn sorted_column(m: &[Vec<Key>], c: usize) -> Vec<Key> {
    let mut v: Vec<Key> = m.iter().map(|r| r[c]).collect();
    v.sort_unstable();
    v
}

struct Search<'a> {
    a: &'a [Vec<Key>],
    b: &'a [Vec<Key>],
    n: usize,
    // candidates[c] = columns of a whose entry multiset equals column c of b
    candidates: Vec<Vec<usize>>,
    assigned: Vec<usize>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn prefix_rows_match(&self) -> bool {
        let len = self.assigned.len();
        let mut ra: Vec<Vec<Key>> = self.a.iter().map(|r| self.assigned.iter().map(|&c| r[c]).collect()).collect();
        let mut rb: Vec<Vec<Key>> = self.b.iter().map(|r| r[..len].to_vec()).collect();
        ra.sort_unstable();
        rb.sort_unstable();
        ra == rb
    }

    fn run(&mut self) -> bool {
        let c = self.assigned.len();
        if c == self.n {
            return true;
        }
        for idx in 0..self.candidates[c].len() {
            let src = self.candidates[c][idx];
            if self.used[src] {
                continue;
            }
            self.used[src] = true;
            self.assigned.push(src);
            if self.prefix_rows_match() && self.run() {
                return true;
            }
            self.assigned.pop();
            self.used[src] = false;
        }
        false
    }
}

fn permutation_search(a: &[Vec<Key>], b: &[Vec<Key>]) -> bool {
    let n = a.len();
    let cols_a: Vec<Vec<Key>> = (0..n).map(|c| sorted_column(a, c)).collect();
    let candidates: Vec<Vec<usize>> =
        (0..n).map(|c| { let cb = sorted_column(b, c); (0..n).filter(|&s| cols_a[s] == cb).collect() }).collect();
    if candidates.iter().any(|c| c.is_empty()) {
        return false;
    }
    let mut s = Search { a, b, n, candidates, assigned: Vec::new(), used: vec![false; n] };
    s.run()
}

fn move_to_front(n: usize, first: usize) -> Vec<usize> {
    std::iter::once(first).chain((0..n).filter(|&x| x != first)).collect()
}

/// Full verdict; exhaustive for n ≤ 8, fingerprint screen only above.
pub fn equivalent_verdict(h: &HadamardCandidate, k: &HadamardCandidate) -> Equivalence {
    let n = h.n();
    if n != k.n() || fingerprint(h) != fingerprint(k) {
        return Equivalence::Inequivalent;
    }
    if n > EXHAUSTIVE_MAX_ORDER {
        return Equivalence::Unknown;
    }
    let dk = dephase(k);
    for r0 in 0..n {
        for c0 in 0..n {
            let moved = h.permuted(&move_to_front(n, r0), &move_to_front(n, c0));
            let dh = dephase(&moved);
            let (ka, kb) = keys(&dh, &dk);
            if permutation_search(&ka, &kb) {
                return Equivalence::Equivalent;
            }
        }
    }
    Equivalence::Inequivalent
}

/// Exhaustive equivalence test for orders up to 8.
pub fn equivalent(h: &HadamardCandidate, k: &HadamardCandidate) -> Result<bool, HadamardError> {
    if h.n().max(k.n()) > EXHAUSTIVE_MAX_ORDER {
        return Err(HadamardError::OrderTooLarge { n: h.n().max(k.n()), max: EXHAUSTIVE_MAX_ORDER });
    }
    Ok(equivalent_verdict(h, k) == Equivalence::Equivalent)
}
