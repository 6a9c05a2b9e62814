//! The sequence c_k = dim Fix(u^{⊗k}) and its generating series.

use std::fmt;

use num::{BigInt, BigRational, One, Zero};

use super::hom::{fix_dim_direct, hom_dim_via_g, HomOptions};
use super::magic::magic_from_hadamard;
use super::QuantumError;
use crate::hadamard::HadamardCandidate;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InvariantMethod {
    GTensor,
    Direct,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MethodTag {
    GTensor,
    DirectFix,
    BothAgree,
}

impl MethodTag {
    pub fn name(&self) -> &'static str {
        match self {
            MethodTag::GTensor => "g-tensor",
            MethodTag::DirectFix => "direct-fix",
            MethodTag::BothAgree => "both-agree",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantSeries {
    pub label: String,
    /// c_0, …, c_K.
    pub values: Vec<u64>,
    pub methods: Vec<MethodTag>,
}

/// c_0, …, c_kmax for the quantum group of H.
pub fn invariants(
    h: &HadamardCandidate,
    kmax: usize,
    method: InvariantMethod,
    opts: &HomOptions,
) -> Result<InvariantSeries, QuantumError> {
    let magic = match method {
        InvariantMethod::GTensor => None,
        _ => Some(magic_from_hadamard(h)?),
    };
    let mut values = Vec::with_capacity(kmax + 1);
    let mut methods = Vec::with_capacity(kmax + 1);
    for k in 0..=kmax {
        let via_g = match method {
            InvariantMethod::Direct => None,
            _ => Some(hom_dim_via_g(h, 0, k, opts)?.dim),
        };
        let direct = match &magic {
            Some(p) => Some(fix_dim_direct(p, k, opts)?.dim),
            None => None,
        };
        let (v, tag) = match (via_g, direct) {
            (Some(a), Some(b)) if a != b => {
                return Err(QuantumError::MethodDisagreement { k, g_tensor: a, direct: b });
            }
            (Some(a), Some(_)) => (a, MethodTag::BothAgree),
            (Some(a), None) => (a, MethodTag::GTensor),
            (None, Some(b)) => (b, MethodTag::DirectFix),
            (None, None) => unreachable!(),
        };
        values.push(v as u64);
        methods.push(tag);
    }
    Ok(InvariantSeries { label: h.label().to_string(), values, methods })
}

/// Truncated power series Σ c_k z^k with exact coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeries {
    pub coeffs: Vec<BigRational>,
}

pub fn poincare_series(s: &InvariantSeries) -> PowerSeries {
    PowerSeries { coeffs: s.values.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect() }
}

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let coeff = if c.is_one() && k > 0 { String::new() } else { c.to_string() };
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{coeff}z")?,
                _ => write!(f, "{coeff}z^{k}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}
