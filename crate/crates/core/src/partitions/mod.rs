//! Set partitions, the partition maps T_π, and Weingarten integration over
//! S_n and S_n^+.

mod gram_det;
mod moments;
mod tpi;
mod weingarten;

pub use gram_det::{
    fit_free_gram_conventions, gram_det_classical, gram_det_exact, gram_det_free, gram_det_free_with, DExponent,
    FreeGramConvention, FreeGramDet, PolyVariable,
};
pub use moments::{clebsch_dim, clebsch_dim_exact, free_bessel_even_moment};
pub use tpi::{decode_multi_index, encode_multi_index, t_pi_matrix, SplitPartition, TPiMatrix};
pub use weingarten::{
    char_moment, gram_weingarten, integrate_monomial, integrate_monomial_classical_reduced, truncated_char_moment,
    GramWeingarten,
};

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PartitionError {
    #[error("partitions have different sizes ({0} and {1})")]
    SizeMismatch(usize, usize),
    #[error("Gram matrix is singular for k = {k}, n = {n}")]
    SingularGram { k: usize, n: usize },
    #[error("no catalogued exponent convention reproduces the exact determinant")]
    ConventionUnresolved,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("not a restricted-growth string: {0:?}")]
    NotRestrictedGrowth(Vec<usize>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PartitionFamily {
    All,
    Noncrossing,
    EvenNoncrossing,
}

impl PartitionFamily {
    pub fn name(&self) -> &'static str {
        match self {
            PartitionFamily::All => "all",
            PartitionFamily::Noncrossing => "noncrossing",
            PartitionFamily::EvenNoncrossing => "even-noncrossing",
        }
    }
}

/// A partition of {0, …, k−1}, stored as its restricted-growth string.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    rgs: Vec<usize>,
}

impl SetPartition {
    pub fn from_rgs(rgs: Vec<usize>) -> Result<Self, PartitionError> {
        let mut max: Option<usize> = None;
        for &b in &rgs {
            let ok = match max {
                None => b == 0,
                Some(m) => b <= m + 1,
            };
            if !ok {
                return Err(PartitionError::NotRestrictedGrowth(rgs));
            }
            max = Some(max.map_or(b, |m| m.max(b)));
        }
        Ok(SetPartition { rgs })
    }

    /// Canonical partition with the given block label per point (labels arbitrary).
    pub fn from_labels<T: PartialEq>(labels: &[T]) -> Self {
        let mut seen: Vec<&T> = Vec::new();
        let rgs = labels
            .iter()
            .map(|x| match seen.iter().position(|s| *s == x) {
                Some(p) => p,
                None => {
                    seen.push(x);
                    seen.len() - 1
                }
            })
            .collect();
        SetPartition { rgs }
    }

    /// From a list of blocks of 0-based points covering 0..size exactly once.
    pub fn from_blocks(size: usize, blocks: &[Vec<usize>]) -> Result<Self, PartitionError> {
        let mut label = vec![usize::MAX; size];
        for (b, block) in blocks.iter().enumerate() {
            for &p in block {
                if p >= size || label[p] != usize::MAX {
                    return Err(PartitionError::InvalidParameter(format!("point {p} out of range or repeated")));
                }
                label[p] = b;
            }
        }
        if label.contains(&usize::MAX) {
            return Err(PartitionError::InvalidParameter("blocks do not cover every point".into()));
        }
        Ok(Self::from_labels(&label))
    }

    pub fn singletons(k: usize) -> Self {
        SetPartition { rgs: (0..k).collect() }
    }

    pub fn one_block(k: usize) -> Self {
        SetPartition { rgs: vec![0; k] }
    }

    pub fn size(&self) -> usize {
        self.rgs.len()
    }

    pub fn rgs(&self) -> &[usize] {
        &self.rgs
    }

    pub fn block_of(&self, point: usize) -> usize {
        self.rgs[point]
    }

    pub fn block_count(&self) -> usize {
        self.rgs.iter().max().map_or(0, |m| m + 1)
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.block_count()];
        for (p, &b) in self.rgs.iter().enumerate() {
            out[b].push(p);
        }
        out
    }

    pub fn is_noncrossing(&self) -> bool {
        let k = self.size();
        for a in 0..k {
            for b in a + 1..k {
                if self.rgs[b] == self.rgs[a] {
                    continue;
                }
                for c in b + 1..k {
                    if self.rgs[c] != self.rgs[a] {
                        continue;
                    }
                    if (c + 1..k).any(|d| self.rgs[d] == self.rgs[b]) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn has_even_blocks(&self) -> bool {
        self.blocks().iter().all(|b| b.len() % 2 == 0)
    }

    /// Every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &SetPartition) -> bool {
        self.size() == other.size()
            && self.blocks().iter().all(|b| b.iter().all(|&p| other.rgs[p] == other.rgs[b[0]]))
    }

    /// Whether a multi-index is constant on every block.
    pub fn admits(&self, index: &[usize]) -> bool {
        let mut value = vec![usize::MAX; self.block_count()];
        for (p, &b) in self.rgs.iter().enumerate() {
            if value[b] == usize::MAX {
                value[b] = index[p];
            } else if value[b] != index[p] {
                return false;
            }
        }
        true
    }

    /// Join in the partition lattice.
    pub fn join(&self, other: &SetPartition) -> Result<SetPartition, PartitionError> {
        if self.size() != other.size() {
            return Err(PartitionError::SizeMismatch(self.size(), other.size()));
        }
        Ok(SetPartition::from_labels(&join_labels(&self.rgs, &other.rgs)))
    }

    pub fn join_block_count(&self, other: &SetPartition) -> usize {
        let labels = join_labels(&self.rgs, &other.rgs);
        let mut roots: Vec<usize> = labels;
        roots.sort_unstable();
        roots.dedup();
        roots.len()
    }
}

fn join_labels(a: &[usize], b: &[usize]) -> Vec<usize> {
    let k = a.len();
    let mut parent: Vec<usize> = (0..k).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for rgs in [a, b] {
        let mut first = vec![usize::MAX; k];
        for (p, &blk) in rgs.iter().enumerate() {
            if first[blk] == usize::MAX {
                first[blk] = p;
            } else {
                let (x, y) = (find(&mut parent, first[blk]), find(&mut parent, p));
                if x != y {
                    parent[x.max(y)] = x.min(y);
                }
            }
        }
    }
    (0..k).map(|p| find(&mut parent, p)).collect()
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.blocks() {
            let pts: Vec<String> = b.iter().map(|p| (p + 1).to_string()).collect();
            write!(f, "{{{}}}", pts.join(","))?;
        }
        if self.size() == 0 {
            write!(f, "{{}}")?;
        }
        Ok(())
    }
}

/// All partitions of k points in the family, in lexicographic RGS order.
pub fn enum_partitions(k: usize, family: PartitionFamily) -> Vec<SetPartition> {
    let mut out = Vec::new();
    let mut rgs = Vec::with_capacity(k);
    let nc = family != PartitionFamily::All;
    extend(k, nc, &mut rgs, 0, &mut out);
    if family == PartitionFamily::EvenNoncrossing {
        out.retain(|p| p.has_even_blocks());
    }
    out
}

fn extend(k: usize, nc: bool, rgs: &mut Vec<usize>, blocks: usize, out: &mut Vec<SetPartition>) {
    if rgs.len() == k {
        out.push(SetPartition { rgs: rgs.clone() });
        return;
    }
    for b in 0..=blocks {
        if nc && b < blocks && closes_crossing(rgs, b) {
            continue;
        }
        rgs.push(b);
        extend(k, nc, rgs, blocks.max(b + 1), out);
        rgs.pop();
    }
}

// Adding the next point to block b crosses some block c iff an element of b
// lies strictly between two elements of c.
fn closes_crossing(rgs: &[usize], b: usize) -> bool {
    let mut lo = vec![usize::MAX; rgs.len() + 1];
    let mut hi = vec![0usize; rgs.len() + 1];
    for (p, &c) in rgs.iter().enumerate() {
        lo[c] = lo[c].min(p);
        hi[c] = hi[c].max(p);
    }
    rgs.iter().enumerate().any(|(p, &c)| c == b && {
        rgs.iter().any(|&d| d != b && lo[d] < p && p < hi[d])
    })
}

pub fn bell_number(k: usize) -> num::BigInt {
    // Bell triangle.
    let mut row = vec![num::BigInt::from(1)];
    for _ in 0..k {
        let mut next = vec![row.last().unwrap().clone()];
        for x in &row {
            let v = next.last().unwrap() + x;
            next.push(v);
        }
        row = next;
    }
    row[0].clone()
}

pub fn catalan_number(k: usize) -> num::BigInt {
    let mut c = num::BigInt::from(1);
    for i in 0..k {
        c = c * num::BigInt::from(2 * (2 * i + 1)) / num::BigInt::from(i + 2);
    }
    c
}
