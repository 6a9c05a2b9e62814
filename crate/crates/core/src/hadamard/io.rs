//! Plain-text matrix formats.
//!
//! `.but`: a header `n l`, then n rows of n exponents e_ij (entry e^{2πi·e_ij/l}).
//! `.cmat`: a header `n`, then n rows of n tokens `re+imj`.

use std::path::Path;

use num::complex::Complex64;

use super::{HadamardCandidate, HadamardError};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum IoError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("verification failed: rows {0} and {1} are not orthogonal")]
    VerifyFailed(usize, usize),
    #[error("{0}")]
    Read(String),
    #[error("unsupported file extension: {0}")]
    UnknownFormat(String),
    #[error(transparent)]
    Matrix(#[from] HadamardError),
}

fn perr(line: usize, column: usize, message: impl Into<String>) -> IoError {
    IoError::Parse { line, column, message: message.into() }
}

/// Tokens of a line with their 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

/// A token and its 1-based column.
type Token<'a> = (usize, &'a str);

/// Header tokens plus n body rows of exactly n tokens each.
fn read_grid(text: &str, header_len: usize) -> Result<(Vec<Token<'_>>, Vec<Vec<Token<'_>>>), IoError> {
    let lines: Vec<&str> = text.split('\n').map(|l| l.strip_suffix('\r').unwrap_or(l)).collect();
    let header = tokens(lines.first().copied().unwrap_or(""));
    if header.len() != header_len {
        return Err(perr(1, header.get(header_len).map_or(1, |t| t.0), format!("expected {header_len} header fields")));
    }
    let n: usize = header[0].1.parse().map_err(|_| perr(1, header[0].0, "order is not a positive integer"))?;
    if n == 0 {
        return Err(perr(1, header[0].0, "order must be positive"));
    }
    let mut rows = Vec::with_capacity(n);
    for r in 0..n {
        let line_no = r + 2;
        let line = lines.get(r + 1).copied().unwrap_or("");
        let toks = tokens(line);
        if toks.len() != n {
            let column = if toks.len() < n { line.len() + 1 } else { toks[n].0 };
            return Err(perr(line_no, column, format!("expected {n} entries, found {}", toks.len())));
        }
        rows.push(toks);
    }
    if let Some((i, extra)) = lines.iter().enumerate().skip(n + 1).find(|(_, l)| !l.trim().is_empty()) {
        return Err(perr(i + 1, tokens(extra)[0].0, "unexpected trailing content"));
    }
    Ok((header, rows))
}

fn check_verified(h: HadamardCandidate) -> Result<HadamardCandidate, IoError> {
    match h.first_non_orthogonal_pair() {
        Some((a, b)) => Err(IoError::VerifyFailed(a, b)),
        None => Ok(h),
    }
}

/// Parses without the Hadamard check.
pub fn parse_but_unverified(text: &str, label: &str) -> Result<HadamardCandidate, IoError> {
    let (header, rows) = read_grid(text, 2)?;
    let l: u64 = header[1].1.parse().map_err(|_| perr(1, header[1].0, "level is not a positive integer"))?;
    if l == 0 {
        return Err(perr(1, header[1].0, "level must be positive"));
    }
    let mut exps = Vec::with_capacity(rows.len());
    for (r, toks) in rows.iter().enumerate() {
        let row = toks
            .iter()
            .map(|&(c, t)| t.parse::<i64>().map_err(|_| perr(r + 2, c, format!("invalid exponent '{t}'"))))
            .collect::<Result<Vec<_>, _>>()?;
        exps.push(row);
    }
    Ok(HadamardCandidate::butson(l, exps, label)?)
}

pub fn parse_but(text: &str, label: &str) -> Result<HadamardCandidate, IoError> {
    check_verified(parse_but_unverified(text, label)?)
}

fn parse_complex_token(t: &str) -> Option<Complex64> {
    let body = t.strip_suffix('j')?;
    let bytes = body.as_bytes();
    let split = (1..bytes.len()).rev().find(|&i| {
        (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E')
    })?;
    let re: f64 = body[..split].parse().ok()?;
    let im: f64 = body[split..].trim_start_matches('+').parse().ok()?;
    if !re.is_finite() || !im.is_finite() {
        return None;
    }
    Some(Complex64::new(re, im))
}

pub fn parse_cmat_unverified(text: &str, label: &str) -> Result<HadamardCandidate, IoError> {
    let (_, rows) = read_grid(text, 1)?;
    let mut out = Vec::with_capacity(rows.len());
    for (r, toks) in rows.iter().enumerate() {
        let row = toks
            .iter()
            .map(|&(c, t)| parse_complex_token(t).ok_or_else(|| perr(r + 2, c, format!("invalid complex entry '{t}'"))))
            .collect::<Result<Vec<_>, _>>()?;
        out.push(row);
    }
    Ok(HadamardCandidate::complex(out, label)?)
}

pub fn parse_cmat(text: &str, label: &str) -> Result<HadamardCandidate, IoError> {
    check_verified(parse_cmat_unverified(text, label)?)
}

/// Reads a `.but` or `.cmat` file, chosen by extension, without the
/// Hadamard check.
pub fn parse_matrix_file_unverified(path: &Path) -> Result<HadamardCandidate, IoError> {
    let text = std::fs::read_to_string(path).map_err(|e| IoError::Read(format!("{}: {e}", path.display())))?;
    let label = path.file_stem().and_then(|s| s.to_str()).unwrap_or("file");
    match path.extension().and_then(|e| e.to_str()) {
        Some("but") => parse_but_unverified(&text, label),
        Some("cmat") => parse_cmat_unverified(&text, label),
        other => Err(IoError::UnknownFormat(other.unwrap_or("").to_string())),
    }
}

/// Reads and verifies a `.but` or `.cmat` file.
pub fn parse_matrix_file(path: &Path) -> Result<HadamardCandidate, IoError> {
    check_verified(parse_matrix_file_unverified(path)?)
}

/// `.but` text, or None when the matrix has no exact Butson form.
pub fn emit_but(h: &HadamardCandidate) -> Option<String> {
    let (l, exps) = h.as_butson()?;
    let mut s = format!("{} {}\n", h.n(), l);
    for row in exps {
        let line: Vec<String> = row.iter().map(|e| e.to_string()).collect();
        s.push_str(&line.join(" "));
        s.push('\n');
    }
    Some(s)
}

fn complex_token(z: Complex64) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{}{}{}j", z.re, sign, z.im.abs())
}

pub fn emit_cmat(h: &HadamardCandidate) -> String {
    let mut s = format!("{}\n", h.n());
    for row in h.to_complex() {
        let line: Vec<String> = row.into_iter().map(complex_token).collect();
        s.push_str(&line.join(" "));
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hadamard::{fourier, level, tao, Level};

    #[test]
    fn but_round_trip() {
        for h in [fourier(2), fourier(5), tao()] {
            let text = emit_but(&h).unwrap();
            let back = parse_but(&text, "x").unwrap();
            assert_eq!(back.as_butson(), h.as_butson());
            assert_eq!(emit_but(&back).unwrap(), text);
        }
        let f2 = parse_but("2 2\n0 0\n0 1\n", "f2").unwrap();
        assert_eq!(level(&f2), Level::Finite(2));
    }

    #[test]
    fn cmat_round_trip() {
        let h = fourier(4).to_complex_form();
        let text = emit_cmat(&h);
        let back = parse_cmat(&text, "f4").unwrap();
        assert_eq!(back.to_complex(), h.to_complex());
        assert_eq!(level(&back), Level::Finite(4));
    }

    #[test]
    fn complex_tokens() {
        assert_eq!(parse_complex_token("1+0j"), Some(Complex64::new(1.0, 0.0)));
        assert_eq!(parse_complex_token("-0.5-2.5e-3j"), Some(Complex64::new(-0.5, -2.5e-3)));
        assert_eq!(parse_complex_token("1e-3+1E+2j"), Some(Complex64::new(1e-3, 100.0)));
        assert_eq!(parse_complex_token("1+2"), None);
        assert_eq!(parse_complex_token("abc+1j"), None);
    }

    #[test]
    fn errors() {
        match parse_but("3 3\n0 0 0\n0 1\n", "t") {
            Err(IoError::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        match parse_but("3 3\n0 0 0\n0 1 2\n", "t") {
            Err(IoError::Parse { line, .. }) => assert_eq!(line, 4),
            other => panic!("{other:?}"),
        }
        match parse_but("2 2\n0 0\n0 x\n", "t") {
            Err(IoError::Parse { line, column, .. }) => assert_eq!((line, column), (3, 3)),
            other => panic!("{other:?}"),
        }
        assert_eq!(parse_but("2 2\n0 0\n0 0\n", "t").unwrap_err(), IoError::VerifyFailed(0, 1));
    }
}
