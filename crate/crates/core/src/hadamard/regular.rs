//! Regularity: every row scalar product splits into rotated full cycles of
//! prime roots of unity.

use num::complex::Complex64;

use super::{Entries, HadamardCandidate};
use crate::scalars::norm::is_prime;

const MATCH_TOL: f64 = 1e-8;

/// λ·{1, ζ_p, …, ζ_p^{p−1}}, realized by the listed columns in that order.
#[derive(Clone, Debug)]
pub struct Cycle {
    pub prime: u64,
    pub columns: Vec<usize>,
    pub lambda: Complex64,
}

#[derive(Clone, Debug)]
pub struct PairDecomposition {
    pub rows: (usize, usize),
    pub cycles: Vec<Cycle>,
}

#[derive(Clone, Debug)]
pub struct Regularity {
    pub regular: bool,
    /// One decomposition per row pair when regular.
    pub certificate: Vec<PairDecomposition>,
    pub failing_pair: Option<(usize, usize)>,
}

impl Regularity {
    /// Re-derive each scalar product from its cycles: the cycles must cover
    /// every column once and reproduce each term H_ik·conj(H_jk).
    pub fn validate(&self, h: &HadamardCandidate) -> bool {
        let n = h.n();
        self.certificate.iter().all(|d| {
            let (i, j) = d.rows;
            let mut seen = vec![false; n];
            let mut total = Complex64::new(0.0, 0.0);
            let mut scalar = Complex64::new(0.0, 0.0);
            for c in &d.cycles {
                if c.columns.len() as u64 != c.prime || !is_prime(c.prime) {
                    return false;
                }
                for (t, &k) in c.columns.iter().enumerate() {
                    if seen[k] {
                        return false;
                    }
                    seen[k] = true;
                    let term = h.entry(i, k) * h.entry(j, k).conj();
                    let expect = c.lambda
                        * Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * t as f64 / c.prime as f64);
                    if (term - expect).norm() > 1e-7 {
                        return false;
                    }
                    total += expect;
                    scalar += term;
                }
            }
            seen.iter().all(|&s| s) && (total - scalar).norm() < 1e-7
        })
    }
}

fn primes_dividing(l: u64) -> Vec<u64> {
    (2..=l).filter(|&p| l.is_multiple_of(p) && is_prime(p)).collect()
}

fn cover_exact(buckets: &mut [Vec<usize>], l: u64, primes: &[u64], out: &mut Vec<Cycle>) -> bool {
    let Some(r) = buckets.iter().position(|b| !b.is_empty()) else {
        return true;
    };
    for &p in primes {
        let step = (l / p) as usize;
        let residues: Vec<usize> = (0..p as usize).map(|t| (r + t * step) % l as usize).collect();
        if residues.iter().any(|&x| buckets[x].is_empty()) {
            continue;
        }
        let cols: Vec<usize> = residues.iter().map(|&x| buckets[x].pop().unwrap()).collect();
        let lambda = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * r as f64 / l as f64);
        out.push(Cycle { prime: p, columns: cols.clone(), lambda });
        if cover_exact(buckets, l, primes, out) {
            return true;
        }
        out.pop();
        for (&x, &c) in residues.iter().zip(&cols) {
            buckets[x].push(c);
        }
    }
    false
}

fn cover_float(values: &[Complex64], used: &mut [bool], primes: &[u64], out: &mut Vec<Cycle>) -> bool {
    let Some(k0) = used.iter().position(|u| !u) else {
        return true;
    };
    let remaining = used.iter().filter(|u| !**u).count() as u64;
    for &p in primes.iter().filter(|&&p| p <= remaining) {
        let mut cols = vec![k0];
        used[k0] = true;
        let mut ok = true;
        for t in 1..p {
            let target = values[k0] * Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * t as f64 / p as f64);
            match (0..values.len()).find(|&k| !used[k] && (values[k] - target).norm() <= MATCH_TOL) {
                Some(k) => {
                    used[k] = true;
                    cols.push(k);
                }
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            out.push(Cycle { prime: p, columns: cols.clone(), lambda: values[k0] });
            if cover_float(values, used, primes, out) {
                return true;
            }
            out.pop();
        }
        for &c in &cols {
            used[c] = false;
        }
    }
    false
}

pub fn is_regular(h: &HadamardCandidate) -> Regularity {
    let n = h.n();
    let mut certificate = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut cycles = Vec::new();
            let ok = match h.entries() {
                Entries::Butson { level, exponents } => {
                    let l = *level;
                    let mut buckets = vec![Vec::new(); l as usize];
                    for k in (0..n).rev() {
                        buckets[(exponents[i][k] - exponents[j][k]).rem_euclid(l as i64) as usize].push(k);
                    }
                    cover_exact(&mut buckets, l, &primes_dividing(l), &mut cycles)
                }
                Entries::Complex(rows) => {
                    let values: Vec<Complex64> = (0..n).map(|k| rows[i][k] * rows[j][k].conj()).collect();
                    let primes: Vec<u64> = (2..=n as u64).filter(|&p| is_prime(p)).collect();
                    cover_float(&values, &mut vec![false; n], &primes, &mut cycles)
                }
            };
            if !ok {
                return Regularity { regular: false, certificate: Vec::new(), failing_pair: Some((i, j)) };
            }
            certificate.push(PairDecomposition { rows: (i, j), cycles });
        }
    }
    Regularity { regular: true, certificate, failing_pair: None }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hadamard::{bjorck_froberg, f6_col, f6_row, fourier, haagerup, petrescu, tao, tensor, Phase};

    #[test]
    fn examples() {
        for p in [2usize, 3, 5, 7, 11] {
            let r = is_regular(&fourier(p));
            assert!(r.regular && r.validate(&fourier(p)));
        }
        let t = tao();
        let r = is_regular(&t);
        assert!(r.regular && r.validate(&t));
        assert!(!is_regular(&bjorck_froberg()).regular);
    }

    #[test]
    fn families() {
        for th in [0.2, 1.3, 2.9] {
            for h in [haagerup(Phase::angle(th)), f6_col(Phase::angle(th), Phase::angle(0.5 * th)), f6_row(Phase::angle(-th), Phase::angle(th)), petrescu(Phase::angle(th))] {
                let r = is_regular(&h);
                assert!(r.regular, "{}", h.label());
                assert!(r.validate(&h));
            }
        }
        let f = tensor(&fourier(2), &fourier(3)).to_complex_form();
        assert!(is_regular(&f).regular);
        let f6 = fourier(6);
        let r = is_regular(&f6);
        assert!(r.regular && r.validate(&f6));
    }
}
