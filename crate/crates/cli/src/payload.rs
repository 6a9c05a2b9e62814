//! JSON payload builders. Keys come out sorted because serde_json's map is
//! ordered by key.

use num::BigRational;
use qperm::hadamard::{Entries, HadamardCandidate};
use serde_json::{json, Value};

pub fn rational(q: &BigRational) -> Value {
    json!({ "num": q.numer().to_string(), "den": q.denom().to_string() })
}

pub fn rationals(qs: &[BigRational]) -> Value {
    Value::Array(qs.iter().map(rational).collect())
}

/// NaN and infinities have no JSON number form.
pub fn float(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        json!(x.to_string())
    }
}

/// 0-based pair to a 1-based JSON pair.
pub fn pair(p: (usize, usize)) -> Value {
    json!([p.0 + 1, p.1 + 1])
}

pub fn matrix(h: &HadamardCandidate) -> Value {
    match h.entries() {
        Entries::Butson { level, exponents } => json!({
            "label": h.label(),
            "n": h.n(),
            "l": level,
            "exponents": exponents,
        }),
        Entries::Complex(rows) => json!({
            "label": h.label(),
            "n": h.n(),
            "entries": rows
                .iter()
                .map(|r| r.iter().map(|z| json!([float(z.re), float(z.im)])).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        }),
    }
}
