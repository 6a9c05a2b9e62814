//! Fourier matrices, tensor products, Diţă deformations and the named
//! examples at orders 6 and 7.

use num::complex::Complex64;

use super::{HadamardCandidate, HadamardError, Phase};

/// An m×n grid of unimodular parameters.
#[derive(Clone, Debug)]
pub struct DeformationParams {
    pub rows: Vec<Vec<Phase>>,
}

impl DeformationParams {
    pub fn new(rows: Vec<Vec<Phase>>) -> Result<Self, HadamardError> {
        let width = rows.first().map_or(0, |r| r.len());
        if rows.is_empty() || width == 0 || rows.iter().any(|r| r.len() != width) {
            return Err(HadamardError::ShapeMismatch("parameter matrix must be a non-empty rectangle".into()));
        }
        for p in rows.iter().flatten() {
            if let Phase::Complex(z) = p {
                if (z.norm() - 1.0).abs() > 1e-8 {
                    return Err(HadamardError::MalformedMatrix(format!("parameter {z} is not unimodular")));
                }
            }
        }
        Ok(DeformationParams { rows })
    }

    pub fn ones(m: usize, n: usize) -> Self {
        DeformationParams { rows: vec![vec![Phase::ONE; n]; m] }
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows.len(), self.rows[0].len())
    }
}

/// F_n = (w^{ij}) with w = e^{2πi/n}, indices from 0.
pub fn fourier(n: usize) -> HadamardCandidate {
    assert!(n >= 1, "Fourier matrix needs n >= 1");
    let exps = (0..n).map(|i| (0..n).map(|j| ((i * j) % n) as i64).collect()).collect();
    HadamardCandidate::butson(n as u64, exps, format!("fourier({n})")).expect("square")
}

/// F_{d1} ⊗ F_{d2} ⊗ …
pub fn fourier_tensor(dims: &[usize]) -> HadamardCandidate {
    let label = format!("fourier({})", dims.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("x"));
    dims.iter().map(|&d| fourier(d)).reduce(|a, b| tensor(&a, &b)).unwrap_or_else(|| fourier(1)).with_label(label)
}

/// Entry ((i,a),(j,b)) = H_ij·K_ab with (i,a) ↦ i·m + a.
pub fn tensor(h: &HadamardCandidate, k: &HadamardCandidate) -> HadamardCandidate {
    let (n, m) = (h.n(), k.n());
    dita(h, k, &DeformationParams::ones(m, n))
        .expect("trivial parameters fit")
        .with_label(format!("{}*{}", h.label(), k.label()))
}

/// H ⊗_L K with entry ((i,a),(j,b)) = H_ij·L_aj·K_ab.
pub fn dita(h: &HadamardCandidate, k: &HadamardCandidate, l: &DeformationParams) -> Result<HadamardCandidate, HadamardError> {
    let (n, m) = (h.n(), k.n());
    if l.shape() != (m, n) {
        return Err(HadamardError::ShapeMismatch(format!(
            "parameters must be {m}x{n}, got {}x{}",
            l.shape().0,
            l.shape().1
        )));
    }
    let (hp, kp) = (h.phases(), k.phases());
    let mut grid = vec![vec![Phase::ONE; n * m]; n * m];
    for i in 0..n {
        for a in 0..m {
            for j in 0..n {
                for b in 0..m {
                    grid[i * m + a][j * m + b] = hp[i][j].mul(l.rows[a][j]).mul(kp[a][b]);
                }
            }
        }
    }
    HadamardCandidate::from_phases(grid, format!("dita({},{})", h.label(), k.label()))
}

/// L_aj = w^{a·j} with w = e^{2πi/nm}: deforms F_n ⊗ F_m into F_{nm}.
pub fn prop46_parameters(n: usize, m: usize) -> DeformationParams {
    let nm = (n * m) as u64;
    DeformationParams { rows: (0..m).map(|a| (0..n).map(|j| Phase::root(nm, (a * j) as i64)).collect()).collect() }
}

fn phase_label(p: &Phase) -> String {
    p.to_string()
}

pub fn f4q(q: Phase) -> HadamardCandidate {
    let l = DeformationParams { rows: vec![vec![Phase::ONE, Phase::ONE], vec![Phase::ONE, q]] };
    dita(&fourier(2), &fourier(2), &l).expect("shape").with_label(format!("f4q({})", phase_label(&q)))
}

pub fn f6_col(r: Phase, s: Phase) -> HadamardCandidate {
    let l = DeformationParams { rows: vec![vec![Phase::ONE, Phase::ONE], vec![Phase::ONE, r], vec![Phase::ONE, s]] };
    dita(&fourier(2), &fourier(3), &l).expect("shape").with_label(format!("f6-col({},{})", phase_label(&r), phase_label(&s)))
}

pub fn f6_row(r: Phase, s: Phase) -> HadamardCandidate {
    let l = DeformationParams { rows: vec![vec![Phase::ONE, Phase::ONE, Phase::ONE], vec![Phase::ONE, r, s]] };
    dita(&fourier(3), &fourier(2), &l).expect("shape").with_label(format!("f6-row({},{})", phase_label(&r), phase_label(&s)))
}

pub fn haagerup(q: Phase) -> HadamardCandidate {
    let o = Phase::ONE;
    let m = Phase::root(2, 1);
    let i = Phase::root(4, 1);
    let mi = Phase::root(4, 3);
    let (qn, qb) = (q.neg(), q.conj());
    let qbn = qb.neg();
    let rows = vec![
        vec![o, o, o, o, o, o],
        vec![o, m, i, i, mi, mi],
        vec![o, i, m, mi, q, qn],
        vec![o, i, mi, m, qn, q],
        vec![o, mi, qb, qbn, i, m],
        vec![o, mi, qbn, qb, m, i],
    ];
    HadamardCandidate::from_phases(rows, format!("haagerup({})", phase_label(&q))).expect("square")
}

pub fn tao() -> HadamardCandidate {
    let e = vec![
        vec![0, 0, 0, 0, 0, 0],
        vec![0, 0, 1, 1, 2, 2],
        vec![0, 1, 0, 2, 2, 1],
        vec![0, 1, 2, 0, 1, 2],
        vec![0, 2, 2, 1, 0, 1],
        vec![0, 2, 1, 2, 1, 0],
    ];
    HadamardCandidate::butson(3, e, "tao").expect("square")
}

pub fn petrescu(q: Phase) -> HadamardCandidate {
    let w = |e: i64| Phase::root(6, e);
    let o = Phase::ONE;
    let qb = q.conj();
    let rows = vec![
        vec![o; 7],
        vec![o, q.mul(w(1)), q.mul(w(4)), w(5), w(3), w(3), w(1)],
        vec![o, q.mul(w(4)), q.mul(w(1)), w(3), w(5), w(3), w(1)],
        vec![o, w(5), w(3), qb.mul(w(1)), qb.mul(w(4)), w(1), w(3)],
        vec![o, w(3), w(5), qb.mul(w(4)), qb.mul(w(1)), w(1), w(3)],
        vec![o, w(3), w(3), w(1), w(1), w(4), w(5)],
        vec![o, w(1), w(1), w(3), w(3), w(5), w(4)],
    ];
    HadamardCandidate::from_phases(rows, format!("petrescu({})", phase_label(&q))).expect("square")
}

/// The root a of a² − (1−√3)a + 1 = 0 with positive imaginary part.
pub fn bjorck_froberg_root() -> Complex64 {
    let s3 = 3f64.sqrt();
    Complex64::new((1.0 - s3) / 2.0, (2.0 * s3).sqrt() / 2.0)
}

/// Circulant matrix with first row (1, ia, −a, −i, −ā, iā).
pub fn bjorck_froberg() -> HadamardCandidate {
    let a = bjorck_froberg_root();
    let i = Complex64::new(0.0, 1.0);
    let v = [Complex64::new(1.0, 0.0), i * a, -a, -i, -a.conj(), i * a.conj()];
    let rows = (0..6).map(|r| (0..6).map(|c| v[(c + 6 - r) % 6]).collect()).collect();
    HadamardCandidate::complex(rows, "bjorck-froberg").expect("unimodular")
}

/// Catalog lookup by name; parameters are the family's phases.
pub fn named(name: &str, params: &[Phase]) -> Result<HadamardCandidate, HadamardError> {
    let want = |k: usize| -> Result<(), HadamardError> {
        if params.len() == k {
            Ok(())
        } else {
            Err(HadamardError::InvalidParameter(format!("{name} takes {k} parameter(s), got {}", params.len())))
        }
    };
    match name {
        "tao" => want(0).map(|_| tao()),
        "bjorck-froberg" | "bjorck_froberg" | "bf" => want(0).map(|_| bjorck_froberg()),
        "haagerup" => want(1).map(|_| haagerup(params[0])),
        "petrescu" => want(1).map(|_| petrescu(params[0])),
        "f4q" => want(1).map(|_| f4q(params[0])),
        "f6-col" => want(2).map(|_| f6_col(params[0], params[1])),
        "f6-row" => want(2).map(|_| f6_row(params[0], params[1])),
        _ => Err(HadamardError::UnknownName(name.to_string())),
    }
}
