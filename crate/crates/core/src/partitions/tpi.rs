//! The linear maps T_π : (C^n)^{⊗k} → (C^n)^{⊗l} attached to partitions of
//! k upper and l lower points.

use super::SetPartition;

/// A partition of k + l points whose first `upper` points are the upper row.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SplitPartition {
    pub partition: SetPartition,
    pub upper: usize,
}

impl SplitPartition {
    pub fn new(partition: SetPartition, upper: usize) -> Self {
        assert!(upper <= partition.size());
        SplitPartition { partition, upper }
    }

    pub fn lower(&self) -> usize {
        self.partition.size() - self.upper
    }
}

/// Dense 0/1 matrix of shape n^l × n^k, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TPiMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u8>,
}

impl TPiMatrix {
    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.data[r * self.cols + c]
    }
}

/// Decode a multi-index: row-major with the first point most significant.
pub fn decode_multi_index(mut idx: usize, n: usize, len: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for slot in out.iter_mut().rev() {
        *slot = idx % n;
        idx /= n;
    }
    out
}

pub fn encode_multi_index(digits: &[usize], n: usize) -> usize {
    digits.iter().fold(0, |acc, &d| acc * n + d)
}

/// Entry at (j, i) is δ_π(i, j): 1 iff all indices in each block agree.
pub fn t_pi_matrix(pi: &SplitPartition, n: usize) -> TPiMatrix {
    let k = pi.upper;
    let l = pi.lower();
    let cols = n.pow(k as u32);
    let rows = n.pow(l as u32);
    let mut data = vec![0u8; rows * cols];
    let mut joint = vec![0usize; k + l];
    for r in 0..rows {
        let j = decode_multi_index(r, n, l);
        joint[k..].copy_from_slice(&j);
        for c in 0..cols {
            let i = decode_multi_index(c, n, k);
            joint[..k].copy_from_slice(&i);
            if pi.partition.admits(&joint) {
                data[r * cols + c] = 1;
            }
        }
    }
    TPiMatrix { rows, cols, data }
}
