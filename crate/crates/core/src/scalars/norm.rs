//! Solvability of d·conj(d) = m in the rings of integers Z[ζ_l] that are
//! handled explicitly: Z, the Gaussian integers and the Eisenstein integers.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormVerdict {
    Solvable,
    Unsolvable,
    Inconclusive,
}

/// Prime factorization by trial division, as (prime, exponent) pairs.
pub fn factorize(mut m: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= m {
        if m.is_multiple_of(p) {
            let mut e = 0;
            while m.is_multiple_of(p) {
                m /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

pub fn is_prime(m: u64) -> bool {
    m >= 2 && factorize(m).first() == Some(&(m, 1))
}

fn integer_sqrt(m: u64) -> u64 {
    let mut r = (m as f64).sqrt() as u64;
    while r * r > m {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= m {
        r += 1;
    }
    r
}

pub fn is_perfect_square(m: u64) -> bool {
    let r = integer_sqrt(m);
    r * r == m
}

/// Whether some d ∈ Z[ζ_l] has d·conj(d) = m. Decided for l ∈ {1, 2, 3, 4, 6};
/// every other order is `Inconclusive`.
pub fn hermitian_norm_solvable(l: u64, m: u64) -> NormVerdict {
    let verdict = |ok: bool| if ok { NormVerdict::Solvable } else { NormVerdict::Unsolvable };
    match l {
        1 | 2 => verdict(is_perfect_square(m)),
        4 => verdict(factorize(m).iter().all(|&(p, e)| p % 4 != 3 || e % 2 == 0)),
        3 | 6 => verdict(factorize(m).iter().all(|&(p, e)| p % 3 != 2 || e % 2 == 0)),
        _ => NormVerdict::Inconclusive,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // Norms attained by the lattice, by direct enumeration.
    fn brute(l: u64, limit: u64) -> Vec<bool> {
        let mut hit = vec![false; limit as usize + 1];
        let r = integer_sqrt(limit) as i64 * 2 + 2;
        for a in -r..=r {
            for b in -r..=r {
                let v: i64 = match l {
                    1 | 2 => {
                        if b != 0 {
                            continue;
                        }
                        a * a
                    }
                    4 => a * a + b * b,
                    _ => a * a - a * b + b * b,
                };
                if v >= 0 && v as u64 <= limit {
                    hit[v as usize] = true;
                }
            }
        }
        hit
    }

    #[test]
    fn examples() {
        assert_eq!(hermitian_norm_solvable(2, 256), NormVerdict::Solvable);
        assert_eq!(hermitian_norm_solvable(2, 27), NormVerdict::Unsolvable);
        assert_eq!(hermitian_norm_solvable(6, 3125), NormVerdict::Unsolvable);
        assert_eq!(hermitian_norm_solvable(5, 3125), NormVerdict::Inconclusive);
        assert_eq!(hermitian_norm_solvable(4, 9), NormVerdict::Solvable);
        assert_eq!(hermitian_norm_solvable(4, 3), NormVerdict::Unsolvable);
    }

    #[test]
    fn agrees_with_lattice_search() {
        let limit = 10_000;
        for l in [1u64, 2, 3, 4, 6] {
            let hit = brute(l, limit);
            for m in 1..=limit {
                let expect = hit[m as usize];
                assert_eq!(hermitian_norm_solvable(l, m) == NormVerdict::Solvable, expect, "l={l} m={m}");
            }
        }
    }

    #[test]
    fn factorization() {
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factorize(1), vec![]);
        assert!(is_prime(97));
        assert!(!is_prime(91));
        assert!(!is_prime(1));
    }
}
