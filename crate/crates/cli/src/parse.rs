//! Parsers for command-line values. Failures here are usage errors.

use num::{BigInt, BigRational};
use qperm::hadamard::{bjorck_froberg, fourier_tensor, named, HadamardCandidate, Phase};

/// `1`, `-1`, `i`, `-i`, `root:e/l` or `phase:θ` (radians).
pub fn phase(s: &str) -> Result<Phase, String> {
    match s {
        "1" => return Ok(Phase::ONE),
        "-1" => return Ok(Phase::root(2, 1)),
        "i" => return Ok(Phase::root(4, 1)),
        "-i" => return Ok(Phase::root(4, 3)),
        _ => {}
    }
    if let Some(rest) = s.strip_prefix("root:") {
        let (e, l) = rest.split_once('/').ok_or_else(|| format!("expected root:e/l, got `{s}`"))?;
        let e: i64 = e.parse().map_err(|_| format!("bad exponent in `{s}`"))?;
        let l: u64 = l.parse().map_err(|_| format!("bad order in `{s}`"))?;
        if l == 0 {
            return Err(format!("root order must be positive in `{s}`"));
        }
        return Ok(Phase::root(l, e));
    }
    if let Some(rest) = s.strip_prefix("phase:") {
        let theta: f64 = rest.parse().map_err(|_| format!("bad angle in `{s}`"))?;
        if !theta.is_finite() {
            return Err(format!("angle must be finite in `{s}`"));
        }
        return Ok(Phase::angle(theta));
    }
    Err(format!("unrecognized phase `{s}`"))
}

/// A catalog entry: `fourier:5`, `fourier:2x3`, `tao`, `bjorck-froberg`,
/// `haagerup:Q`, `petrescu:Q`, `f4q:Q`, `f6-col:R,S`, `f6-row:R,S`.
pub fn catalog(spec: &str) -> Result<HadamardCandidate, String> {
    let (name, params) = match spec.split_once(':') {
        Some((n, p)) => (n, Some(p)),
        None => (spec, None),
    };
    if name == "fourier" {
        let p = params.ok_or("fourier needs a size, e.g. fourier:5 or fourier:2x3")?;
        let dims: Vec<usize> = p
            .split('x')
            .map(|d| d.parse::<usize>().ok().filter(|&d| d >= 1))
            .collect::<Option<_>>()
            .ok_or_else(|| format!("bad Fourier dimensions `{p}`"))?;
        if dims.iter().try_fold(1usize, |acc, &d| acc.checked_mul(d)).is_none_or(|n| n > 64) {
            return Err(format!("Fourier order too large in `{p}`"));
        }
        return Ok(fourier_tensor(&dims));
    }
    if name == "bjorck-froberg" {
        return match params {
            None => Ok(bjorck_froberg()),
            Some(_) => Err("bjorck-froberg takes no parameters".into()),
        };
    }
    let phases: Vec<Phase> = match params {
        None => Vec::new(),
        Some(p) => p.split(',').map(phase).collect::<Result<_, _>>()?,
    };
    named(name, &phases).map_err(|e| e.to_string())
}

/// `3`, `-2` or `1/12`.
pub fn rational(s: &str) -> Result<BigRational, String> {
    let bad = || format!("expected a rational such as 1/2, got `{s}`");
    match s.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().map_err(|_| bad())?;
            let b: BigInt = b.trim().parse().map_err(|_| bad())?;
            if b == BigInt::from(0) {
                return Err(format!("zero denominator in `{s}`"));
            }
            Ok(BigRational::new(a, b))
        }
        None => Ok(BigRational::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

/// 1-based comma-separated indices below `n`, returned 0-based.
pub fn indices(s: &str, n: usize) -> Result<Vec<usize>, String> {
    s.split(',')
        .map(|t| match t.trim().parse::<usize>() {
            Ok(v) if (1..=n).contains(&v) => Ok(v - 1),
            _ => Err(format!("index `{t}` is not in 1..={n}")),
        })
        .collect()
}

/// `1,1;2,2` → [(0,0), (1,1)].
pub fn word(s: &str) -> Result<Vec<(usize, usize)>, String> {
    s.split(';')
        .map(|pair| {
            let v = indices(pair, 4)?;
            match v[..] {
                [i, j] => Ok((i, j)),
                _ => Err(format!("word letters are index pairs `i,j`, got `{pair}`")),
            }
        })
        .collect()
}
