//! Closed forms for Gram determinants, checked against exact elimination.

use std::sync::OnceLock;

use num::{BigInt, BigRational, One};

use super::{catalan_number, enum_partitions, GramWeingarten, PartitionError, PartitionFamily};
use crate::linalg::exact::bareiss_det;
use crate::linalg::surd::QuadSurd;

/// Exact determinant of the Gram matrix by fraction-free elimination.
pub fn gram_det_exact(k: usize, n: usize, family: PartitionFamily) -> BigInt {
    let g = GramWeingarten::new(k, n, family);
    let ints: Vec<Vec<BigInt>> = g.join_blocks.iter().map(|r| r.iter().map(|&b| BigInt::from(n).pow(b as u32)).collect()).collect();
    bareiss_det(&ints)
}

/// Π_{π ∈ P(k)} n!/(n−|π|)!.
pub fn gram_det_classical(k: usize, n: usize) -> BigInt {
    let mut det = BigInt::one();
    for p in enum_partitions(k, PartitionFamily::All) {
        for t in 0..p.block_count() {
            det *= BigInt::from(n as i64 - t as i64);
        }
    }
    det
}

fn binom(a: i64, b: i64) -> BigInt {
    if b < 0 || b > a || a < 0 {
        return BigInt::from(0);
    }
    let mut r = BigInt::one();
    for i in 0..b {
        r = r * BigInt::from(a - i) / BigInt::from(i + 1);
    }
    r
}

fn f_kr(k: i64, r: i64) -> BigInt {
    binom(2 * k, k - r) - binom(2 * k, k - r - 1)
}

/// How the Chebyshev-type polynomials P_r are evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PolyVariable {
    /// P_0 = 1, P_1 = X, P_{r+1} = X·P_r − P_{r−1}, evaluated at X = √n.
    SqrtN,
    /// P_0 = 1, P_1 = n, P_{r+1} = n·P_r − P_{r−1}, taken as numbers.
    LiteralN,
}

/// Reading of the exponent d_kr.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DExponent {
    /// d_kr = f_{k,r} − f_{k+1,r}
    NextK,
    /// d_kr = f_{k,r} − f_{k,r+1}
    NextR,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FreeGramConvention {
    pub poly: PolyVariable,
    pub exponent: DExponent,
}

impl FreeGramConvention {
    pub const CATALOG: [FreeGramConvention; 4] = [
        FreeGramConvention { poly: PolyVariable::SqrtN, exponent: DExponent::NextK },
        FreeGramConvention { poly: PolyVariable::SqrtN, exponent: DExponent::NextR },
        FreeGramConvention { poly: PolyVariable::LiteralN, exponent: DExponent::NextK },
        FreeGramConvention { poly: PolyVariable::LiteralN, exponent: DExponent::NextR },
    ];

    pub fn describe(&self) -> &'static str {
        match (self.poly, self.exponent) {
            (PolyVariable::SqrtN, DExponent::NextK) => "P_r(sqrt n) with d_kr = f(k,r) - f(k+1,r)",
            (PolyVariable::SqrtN, DExponent::NextR) => "P_r(sqrt n) with d_kr = f(k,r) - f(k,r+1)",
            (PolyVariable::LiteralN, DExponent::NextK) => "P_r(n) with d_kr = f(k,r) - f(k+1,r)",
            (PolyVariable::LiteralN, DExponent::NextR) => "P_r(n) with d_kr = f(k,r) - f(k,r+1)",
        }
    }
}

#[derive(Clone, Debug)]
pub struct FreeGramDet {
    pub value: QuadSurd,
    pub convention: FreeGramConvention,
}

impl FreeGramDet {
    pub fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }
}

/// (√n)^{a_k} · Π_{r=1}^{k} P_r^{d_kr} under an explicit convention.
/// None when a negative exponent meets a vanishing factor.
pub fn gram_det_free_with(k: usize, n: usize, conv: FreeGramConvention) -> Option<QuadSurd> {
    let d = BigInt::from(n);
    let x = match conv.poly {
        PolyVariable::SqrtN => QuadSurd::sqrt(&d),
        PolyVariable::LiteralN => QuadSurd::rational(BigRational::from_integer(d.clone()), &d),
    };
    let mut polys = vec![QuadSurd::one(&d), x.clone()];
    while polys.len() <= k + 1 {
        let r = polys.len() - 1;
        let next = x.mul(&polys[r]).sub(&polys[r - 1]);
        polys.push(next);
    }
    let a_k: i64 = catalan_number(k).try_into().ok()?;
    let mut value = QuadSurd::sqrt(&d).pow(a_k)?;
    let ki = k as i64;
    for r in 1..=ki {
        let e = match conv.exponent {
            DExponent::NextK => f_kr(ki, r) - f_kr(ki + 1, r),
            DExponent::NextR => f_kr(ki, r) - f_kr(ki, r + 1),
        };
        let e: i64 = e.try_into().ok()?;
        value = value.mul(&polys[r as usize].pow(e)?);
    }
    Some(value)
}

/// Conventions that reproduce the exact determinant for every k ≤ kmax and
/// every n in `ns`.
pub fn fit_free_gram_conventions(kmax: usize, ns: &[usize]) -> Vec<FreeGramConvention> {
    let exact: Vec<(usize, usize, BigRational)> = (1..=kmax)
        .flat_map(|k| ns.iter().map(move |&n| (k, n)))
        .map(|(k, n)| (k, n, BigRational::from_integer(gram_det_exact(k, n, PartitionFamily::Noncrossing))))
        .collect();
    FreeGramConvention::CATALOG
        .into_iter()
        .filter(|&c| {
            exact.iter().all(|(k, n, det)| {
                gram_det_free_with(*k, *n, c).is_some_and(|v| v.as_rational() == Some(det))
            })
        })
        .collect()
}

const FIT_KMAX: usize = 4;
const FIT_NS: [usize; 3] = [4, 5, 9];

fn fitted() -> Result<FreeGramConvention, PartitionError> {
    static FIT: OnceLock<Option<FreeGramConvention>> = OnceLock::new();
    FIT.get_or_init(|| fit_free_gram_conventions(FIT_KMAX, &FIT_NS).into_iter().next())
        .ok_or(PartitionError::ConventionUnresolved)
}

/// Free Gram determinant through the closed form, using the convention that
/// was validated against exact elimination.
pub fn gram_det_free(k: usize, n: usize) -> Result<FreeGramDet, PartitionError> {
    if n < 4 {
        return Err(PartitionError::InvalidParameter(format!("n = {n} is below 4")));
    }
    let convention = fitted()?;
    let value = gram_det_free_with(k, n, convention).ok_or(PartitionError::ConventionUnresolved)?;
    Ok(FreeGramDet { value, convention })
}
