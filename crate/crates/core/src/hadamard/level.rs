//! The level of a Hadamard matrix: the least l ≥ 2 such that every entry is
//! an l-th root of unity.

use num::integer::Integer;

use super::{Entries, HadamardCandidate};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    Finite(u64),
    Infinite,
}

const MAX_FIT_DENOMINATOR: u64 = 1000;
const FIT_TOL: f64 = 1e-9;

/// Order of e^{iθ} as a root of unity, if its angle is a rational multiple
/// of 2π with small denominator.
pub fn fitted_root_order(z: num::complex::Complex64) -> Option<u64> {
    let x = (z.arg() / (2.0 * std::f64::consts::PI)).rem_euclid(1.0);
    (1..=MAX_FIT_DENOMINATOR).find(|&q| {
        let p = (x * q as f64).round();
        (x - p / q as f64).abs() * 2.0 * std::f64::consts::PI <= FIT_TOL
    })
}

pub fn level(h: &HadamardCandidate) -> Level {
    let order = match h.entries() {
        Entries::Butson { level, exponents } => exponents
            .iter()
            .flatten()
            .fold(1u64, |acc, &e| acc.lcm(&(level / (e as u64).gcd(level)))),
        Entries::Complex(rows) => {
            let mut acc = 1u64;
            for z in rows.iter().flatten() {
                match fitted_root_order(*z) {
                    Some(q) => acc = acc.lcm(&q),
                    None => return Level::Infinite,
                }
            }
            acc
        }
    };
    Level::Finite(order.max(2))
}
