//! Dimensions of intertwiner spaces Hom(u^{⊗k}, u^{⊗l}).
//!
//! Two independent linear systems in the n^l × n^k unknown T (index i·n^k + j):
//!
//! * the G-tensor system T°·G^{k+2} = G^{l+2}·T° with T° = id ⊗ T ⊗ id,
//!   where G^m carries the factor n^{-m}; the outer legs are pinned to 0;
//! * the direct system Σ_{j'} T_{ij'}·P^{⊗k}_{j'j} = Σ_{i'} P^{⊗l}_{ii'}·T_{i'j}
//!   with P^{⊗k}_{ij} = P_{i₁j₁}···P_{i_kj_k} multiplied out literally.
//!
//! Ranks are taken modulo several primes carrying the needed roots of unity
//! (the smallest nullity wins), over Q(ζ) exactly, or from singular values.

use nalgebra::DMatrix;
use num::complex::Complex64;
use num::{BigInt, BigRational, ToPrimitive, Zero};
use rayon::prelude::*;

use super::magic::{MagicEntries, MagicUnitary};
use super::QuantumError;
use crate::hadamard::HadamardCandidate;
use crate::linalg::modp::{root_prime, RootPrime};
use crate::linalg::nullspace::{Field, NullspaceTracker};
use crate::scalars::CycloScalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Backend {
    /// Modular for exact inputs, floating point otherwise.
    Auto,
    Modular,
    Exact,
    Float,
}

/// Size limits, overridable through `QPERM_MAX_EQUATIONS`, `QPERM_MAX_UNKNOWNS`
/// and `QPERM_MAX_TABLE`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_equations: u64,
    pub max_unknowns: u64,
    /// Stored scalars for product tables and dense float systems.
    pub max_table: u64,
}

impl Budget {
    pub const DEFAULT: Budget = Budget { max_equations: 4_000_000, max_unknowns: 4096, max_table: 30_000_000 };

    pub fn from_env() -> Budget {
        let get = |name: &str, default: u64| {
            std::env::var(name).ok().and_then(|v| v.trim().parse().ok()).unwrap_or(default)
        };
        Budget {
            max_equations: get("QPERM_MAX_EQUATIONS", Self::DEFAULT.max_equations),
            max_unknowns: get("QPERM_MAX_UNKNOWNS", Self::DEFAULT.max_unknowns),
            max_table: get("QPERM_MAX_TABLE", Self::DEFAULT.max_table),
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::from_env()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HomOptions {
    pub backend: Backend,
    pub budget: Budget,
    /// Number of primes on the modular path.
    pub primes: usize,
    /// Relative singular-value threshold on the float path.
    pub tol: f64,
}

impl Default for HomOptions {
    fn default() -> Self {
        HomOptions { backend: Backend::Auto, budget: Budget::default(), primes: 2, tol: 1e-8 }
    }
}

impl HomOptions {
    pub fn with_backend(mut self, backend: Backend) -> Self {
        self.backend = backend;
        self
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum RankCertificate {
    Modular { primes: Vec<u64>, nullities: Vec<usize> },
    Exact,
    /// Singular values relative to the largest one.
    Float { tol: f64, smallest_retained: Option<f64>, largest_discarded: Option<f64> },
}

#[derive(Clone, Debug, PartialEq)]
pub struct HomDim {
    pub dim: usize,
    pub unknowns: usize,
    pub equations: u64,
    pub certificate: RankCertificate,
}

/// Where the two identity legs of T° sit relative to T.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LegPlacement {
    /// id ⊗ T ⊗ id
    Outer,
    /// id ⊗ id ⊗ T
    Left,
    /// T ⊗ id ⊗ id
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GNormalization {
    /// G^m enters as n^{-m}·G^m.
    PowerOfN,
    Unnormalized,
}

// Scalar fields used by the solvers.

#[derive(Clone, Copy)]
struct ComplexField;

impl Field for ComplexField {
    type Elem = Complex64;
    fn zero(&self) -> Complex64 {
        Complex64::new(0.0, 0.0)
    }
    fn one(&self) -> Complex64 {
        Complex64::new(1.0, 0.0)
    }
    fn is_zero(&self, a: &Complex64) -> bool {
        a.re == 0.0 && a.im == 0.0
    }
    fn add(&self, a: &Complex64, b: &Complex64) -> Complex64 {
        a + b
    }
    fn sub(&self, a: &Complex64, b: &Complex64) -> Complex64 {
        a - b
    }
    fn mul(&self, a: &Complex64, b: &Complex64) -> Complex64 {
        a * b
    }
    fn neg(&self, a: &Complex64) -> Complex64 {
        -a
    }
    fn inv(&self, a: &Complex64) -> Complex64 {
        a.inv()
    }
}

struct CycloField {
    order: usize,
}

impl Field for CycloField {
    type Elem = CycloScalar;
    fn zero(&self) -> CycloScalar {
        CycloScalar::zero(self.order)
    }
    fn one(&self) -> CycloScalar {
        CycloScalar::one(self.order)
    }
    fn is_zero(&self, a: &CycloScalar) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &CycloScalar, b: &CycloScalar) -> CycloScalar {
        (a + b).reduced()
    }
    fn sub(&self, a: &CycloScalar, b: &CycloScalar) -> CycloScalar {
        (a - b).reduced()
    }
    fn mul(&self, a: &CycloScalar, b: &CycloScalar) -> CycloScalar {
        (a * b).reduced()
    }
    fn neg(&self, a: &CycloScalar) -> CycloScalar {
        -a
    }
    fn inv(&self, a: &CycloScalar) -> CycloScalar {
        a.inv().expect("nonzero")
    }
}

fn from_u64<F: Field>(f: &F, v: u64) -> F::Elem {
    // double-and-add keeps this generic over the field
    let (mut acc, mut base, mut v) = (f.zero(), f.one(), v);
    while v > 0 {
        if v & 1 == 1 {
            acc = f.add(&acc, &base);
        }
        base = f.add(&base, &base);
        v >>= 1;
    }
    acc
}

fn pow_usize(n: usize, k: usize) -> usize {
    n.pow(k as u32)
}

#[derive(Clone, Copy)]
enum Slot {
    Pin(usize),
    Free,
}

/// Σ-free chain Π_s G[L_{s+1}, L_s, R_{s+1}, R_s] for every assignment of the
/// free slots, which all sit on one side. Output indexed by the free digits,
/// first free slot most significant.
fn chain_vector<F: Field>(f: &F, g: &[F::Elem], n: usize, left: &[Slot], right: &[Slot], free: usize) -> Vec<F::Elem> {
    let mut out = vec![f.zero(); pow_usize(n, free)];
    #[allow(clippy::too_many_arguments)]
    fn rec<F: Field>(
        f: &F,
        g: &[F::Elem],
        n: usize,
        left: &[Slot],
        right: &[Slot],
        pos: usize,
        prev: (usize, usize),
        acc: &F::Elem,
        code: usize,
        out: &mut [F::Elem],
    ) {
        if pos == left.len() {
            out[code] = acc.clone();
            return;
        }
        let choices: Vec<(usize, usize, usize)> = match (left[pos], right[pos]) {
            (Slot::Pin(a), Slot::Pin(b)) => vec![(a, b, code)],
            (Slot::Free, Slot::Pin(b)) => (0..n).map(|d| (d, b, code * n + d)).collect(),
            (Slot::Pin(a), Slot::Free) => (0..n).map(|d| (a, d, code * n + d)).collect(),
            (Slot::Free, Slot::Free) => unreachable!("free slots sit on one side"),
        };
        for (l, r, c) in choices {
            let next = if pos == 0 {
                acc.clone()
            } else {
                let (pl, pr) = prev;
                let factor = &g[((l * n + pl) * n + r) * n + pr];
                if f.is_zero(factor) {
                    continue;
                }
                f.mul(acc, factor)
            };
            if f.is_zero(&next) {
                continue;
            }
            rec(f, g, n, left, right, pos + 1, (l, r), &next, c, out);
        }
    }
    rec(f, g, n, left, right, 0, (0, 0), &f.one(), 0, &mut out);
    out
}

fn template(placement: LegPlacement, middle: &[Slot], x: Slot, z: Slot) -> Vec<Slot> {
    let mut v = Vec::with_capacity(middle.len() + 2);
    match placement {
        LegPlacement::Outer => {
            v.push(x);
            v.extend_from_slice(middle);
            v.push(z);
        }
        LegPlacement::Left => {
            v.push(x);
            v.push(z);
            v.extend_from_slice(middle);
        }
        LegPlacement::Right => {
            v.extend_from_slice(middle);
            v.push(x);
            v.push(z);
        }
    }
    v
}

fn pins(digits: &[usize]) -> Vec<Slot> {
    digits.iter().map(|&d| Slot::Pin(d)).collect()
}

/// Receives equations; returns false once nothing more can change.
trait Sink<E> {
    fn push(&mut self, row: Vec<(usize, E)>) -> bool;
}

#[allow(clippy::too_many_arguments)]
fn combine_rows<F: Field>(
    f: &F,
    i: usize,
    j: usize,
    nk: usize,
    lhs: &[F::Elem],
    lhs_scale: &F::Elem,
    rhs: &[F::Elem],
    rhs_scale: &F::Elem,
) -> Vec<(usize, F::Elem)> {
    let mut row: Vec<(usize, F::Elem)> = Vec::with_capacity(lhs.len() + rhs.len());
    for (jp, a) in lhs.iter().enumerate() {
        let mut c = f.mul(a, lhs_scale);
        if jp == j {
            c = f.sub(&c, &f.mul(&rhs[i], rhs_scale));
        }
        if !f.is_zero(&c) {
            row.push((i * nk + jp, c));
        }
    }
    for (ip, b) in rhs.iter().enumerate() {
        if ip == i || f.is_zero(b) {
            continue;
        }
        row.push((ip * nk + j, f.neg(&f.mul(b, rhs_scale))));
    }
    row.sort_by_key(|e| e.0);
    row
}

#[allow(clippy::too_many_arguments)]
fn g_system<F: Field, S: Sink<F::Elem>>(
    f: &F,
    n: usize,
    hv: &[F::Elem],
    hc: &[F::Elem],
    k: usize,
    l: usize,
    placement: LegPlacement,
    norm: GNormalization,
    sink: &mut S,
) {
    let mut g = Vec::with_capacity(n * n * n * n);
    for t in 0..n * n * n * n {
        let (i, a, j, b) = (t / (n * n * n), (t / (n * n)) % n, (t / n) % n, t % n);
        let mut s = f.zero();
        for c in 0..n {
            let x = f.mul(&f.mul(&hv[i * n + c], &hc[j * n + c]), &f.mul(&hc[a * n + c], &hv[b * n + c]));
            s = f.add(&s, &x);
        }
        g.push(s);
    }
    let (nk, nl) = (pow_usize(n, k), pow_usize(n, l));
    let (lhs_scale, rhs_scale) = match norm {
        GNormalization::PowerOfN => (from_u64(f, nl as u64), from_u64(f, nk as u64)),
        GNormalization::Unnormalized => (f.one(), f.one()),
    };
    let free_k = vec![Slot::Free; k];
    let free_l = vec![Slot::Free; l];
    let zero = Slot::Pin(0);
    for y in 0..n {
        for w in 0..n {
            let (sy, sw) = (Slot::Pin(y), Slot::Pin(w));
            let right_free = template(placement, &free_l, sy, sw);
            let b_rows: Vec<Vec<F::Elem>> = (0..nl)
                .map(|i| {
                    let digits = crate::partitions::decode_multi_index(i, n, l);
                    let left = template(placement, &pins(&digits), zero, zero);
                    chain_vector(f, &g, n, &left, &right_free, l)
                })
                .collect();
            let left_free = template(placement, &free_k, zero, zero);
            for j in 0..nk {
                let digits = crate::partitions::decode_multi_index(j, n, k);
                let right = template(placement, &pins(&digits), sy, sw);
                let a_row = chain_vector(f, &g, n, &left_free, &right, k);
                for (i, b_row) in b_rows.iter().enumerate() {
                    let row = combine_rows(f, i, j, nk, &a_row, &lhs_scale, b_row, &rhs_scale);
                    if !sink.push(row) {
                        return;
                    }
                }
            }
        }
    }
}

/// P^{⊗k} as a table: block (I, J) at ((I·n^k + J)·d²), each block d×d.
fn w_table<F: Field>(f: &F, n: usize, d: usize, cells: &[Vec<F::Elem>], k: usize) -> Vec<F::Elem> {
    let d2 = d * d;
    let mut cur: Vec<F::Elem> = (0..d2).map(|ab| if ab / d == ab % d { f.one() } else { f.zero() }).collect();
    let mut m = 1usize;
    for _ in 0..k {
        let m2 = m * n;
        let mut next = vec![f.zero(); m2 * m2 * d2];
        for big_i in 0..m {
            for big_j in 0..m {
                let w = &cur[(big_i * m + big_j) * d2..(big_i * m + big_j + 1) * d2];
                for ik in 0..n {
                    for jk in 0..n {
                        let p = &cells[ik * n + jk];
                        let (ni, nj) = (big_i * n + ik, big_j * n + jk);
                        let out = &mut next[(ni * m2 + nj) * d2..(ni * m2 + nj + 1) * d2];
                        for a in 0..d {
                            for c in 0..d {
                                let x = &w[a * d + c];
                                if f.is_zero(x) {
                                    continue;
                                }
                                for b in 0..d {
                                    let y = &p[c * d + b];
                                    if !f.is_zero(y) {
                                        out[a * d + b] = f.add(&out[a * d + b], &f.mul(x, y));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        cur = next;
        m = m2;
    }
    cur
}

#[allow(clippy::too_many_arguments)]
fn direct_system<F: Field, S: Sink<F::Elem>>(
    f: &F,
    n: usize,
    d: usize,
    cells: &[Vec<F::Elem>],
    k: usize,
    l: usize,
    sink: &mut S,
) {
    let d2 = d * d;
    let (nk, nl) = (pow_usize(n, k), pow_usize(n, l));
    let wk = w_table(f, n, d, cells, k);
    let wl = if l == k { None } else { Some(w_table(f, n, d, cells, l)) };
    let wl = wl.as_ref().unwrap_or(&wk);
    let one = f.one();
    for j in 0..nk {
        for ab in 0..d2 {
            let a_row: Vec<F::Elem> = (0..nk).map(|jp| wk[(jp * nk + j) * d2 + ab].clone()).collect();
            for i in 0..nl {
                let b_row: Vec<F::Elem> = (0..nl).map(|ip| wl[(i * nl + ip) * d2 + ab].clone()).collect();
                let row = combine_rows(f, i, j, nk, &a_row, &one, &b_row, &one);
                if !sink.push(row) {
                    return;
                }
            }
        }
    }
}

struct TrackerSink<'f, F: Field> {
    tracker: NullspaceTracker<'f, F>,
}

impl<F: Field> Sink<F::Elem> for TrackerSink<'_, F> {
    fn push(&mut self, row: Vec<(usize, F::Elem)>) -> bool {
        if !row.is_empty() {
            self.tracker.push_sparse(&row);
        }
        self.tracker.nullity() > 0
    }
}

struct DenseSink {
    unknowns: usize,
    data: Vec<Complex64>,
    rows: usize,
}

impl Sink<Complex64> for DenseSink {
    fn push(&mut self, row: Vec<(usize, Complex64)>) -> bool {
        if row.is_empty() {
            return true;
        }
        let start = self.data.len();
        self.data.resize(start + self.unknowns, Complex64::new(0.0, 0.0));
        for (c, v) in row {
            self.data[start + c] = v;
        }
        self.rows += 1;
        true
    }
}

fn float_nullity(sink: DenseSink, tol: f64) -> Result<(usize, RankCertificate), QuantumError> {
    let m = sink.unknowns;
    if sink.rows == 0 {
        return Ok((m, RankCertificate::Float { tol, smallest_retained: None, largest_discarded: None }));
    }
    let a = DMatrix::from_row_slice(sink.rows, m, &sink.data);
    // A and A*A share a kernel; QR first keeps the SVD square and small.
    let r = if sink.rows > m { a.qr().r() } else { a };
    let sv = r.singular_values();
    let mut s: Vec<f64> = sv.iter().copied().collect();
    s.sort_by(|x, y| y.partial_cmp(x).unwrap());
    let smax = s.first().copied().unwrap_or(0.0);
    if smax == 0.0 {
        return Ok((m, RankCertificate::Float { tol, smallest_retained: None, largest_discarded: Some(0.0) }));
    }
    let rel: Vec<f64> = s.iter().map(|v| v / smax).collect();
    let rank = rel.iter().filter(|&&v| v > tol).count();
    let smallest_retained = rel[..rank].last().copied();
    let largest_discarded = rel.get(rank).copied().or(if rank < m { Some(0.0) } else { None });
    if rel.iter().any(|&v| v > tol / 10.0 && v < tol * 10.0) {
        return Err(QuantumError::RankAmbiguous { smallest_retained, largest_discarded, tol });
    }
    Ok((m - rank, RankCertificate::Float { tol, smallest_retained, largest_discarded }))
}

/// Entries of H and conj(H) in some field.
struct HTables<E> {
    hv: Vec<E>,
    hc: Vec<E>,
}

fn h_tables_modp(level: u64, e: &[Vec<i64>], rp: &RootPrime) -> HTables<u64> {
    let hv = e.iter().flatten().map(|&x| rp.root_pow(x * (rp.order / level) as i64)).collect();
    let hc = e.iter().flatten().map(|&x| rp.root_pow(-x * (rp.order / level) as i64)).collect();
    HTables { hv, hc }
}

fn check_budget(what: &str, needed: u128, limit: u64) -> Result<(), QuantumError> {
    if needed > limit as u128 {
        return Err(QuantumError::BudgetExceeded { what: what.to_string(), needed: needed.min(u64::MAX as u128) as u64, limit });
    }
    Ok(())
}

fn resolve(backend: Backend, exact_input: bool) -> Result<Backend, QuantumError> {
    match (backend, exact_input) {
        (Backend::Auto, true) => Ok(Backend::Modular),
        (Backend::Auto, false) => Ok(Backend::Float),
        (Backend::Modular | Backend::Exact, false) => {
            Err(QuantumError::InvalidParameter("exact back ends need roots of unity as entries".into()))
        }
        (b, _) => Ok(b),
    }
}

fn run_modular<G>(order: u64, primes: usize, unknowns: usize, build: G) -> (usize, RankCertificate)
where
    G: Fn(&RootPrime, &mut TrackerSink<'_, crate::linalg::modp::ModP>) + Sync,
{
    let results: Vec<(u64, usize)> = (0..primes.max(1))
        .into_par_iter()
        .map(|idx| {
            let rp = root_prime(order, idx);
            let mut sink = TrackerSink { tracker: NullspaceTracker::new(&rp.field, unknowns) };
            build(&rp, &mut sink);
            (rp.field.p, sink.tracker.nullity())
        })
        .collect();
    let dim = results.iter().map(|r| r.1).min().unwrap_or(unknowns);
    (dim, RankCertificate::Modular { primes: results.iter().map(|r| r.0).collect(), nullities: results.iter().map(|r| r.1).collect() })
}

/// dim Hom(u^{⊗k}, u^{⊗l}) from the G-tensor system.
pub fn hom_dim_via_g(h: &HadamardCandidate, k: usize, l: usize, opts: &HomOptions) -> Result<HomDim, QuantumError> {
    hom_dim_via_g_with(h, k, l, LegPlacement::Outer, GNormalization::PowerOfN, opts)
}

/// As [`hom_dim_via_g`] with an explicit leg placement and normalization.
pub fn hom_dim_via_g_with(
    h: &HadamardCandidate,
    k: usize,
    l: usize,
    placement: LegPlacement,
    norm: GNormalization,
    opts: &HomOptions,
) -> Result<HomDim, QuantumError> {
    if let Some((a, b)) = h.first_non_orthogonal_pair() {
        return Err(QuantumError::NotHadamard(a, b));
    }
    let n = h.n();
    let unknowns128 = (n as u128).pow((k + l) as u32);
    let equations128 = unknowns128 * (n * n) as u128;
    check_budget("unknowns", unknowns128, opts.budget.max_unknowns)?;
    check_budget("equations", equations128, opts.budget.max_equations)?;
    let (unknowns, equations) = (unknowns128 as usize, equations128 as u64);
    let backend = resolve(opts.backend, h.is_butson())?;
    let (dim, certificate) = match backend {
        Backend::Modular => {
            let (level, e) = h.as_butson().expect("butson");
            run_modular(level, opts.primes, unknowns, |rp, sink| {
                let t = h_tables_modp(level, e, rp);
                g_system(&rp.field, n, &t.hv, &t.hc, k, l, placement, norm, sink);
            })
        }
        Backend::Exact => {
            let (level, e) = h.as_butson().expect("butson");
            let f = CycloField { order: level as usize };
            let hv: Vec<CycloScalar> = e.iter().flatten().map(|&x| CycloScalar::root(level as usize, x)).collect();
            let hc: Vec<CycloScalar> = hv.iter().map(|x| x.conj()).collect();
            let mut sink = TrackerSink { tracker: NullspaceTracker::new(&f, unknowns) };
            g_system(&f, n, &hv, &hc, k, l, placement, norm, &mut sink);
            (sink.tracker.nullity(), RankCertificate::Exact)
        }
        Backend::Float | Backend::Auto => {
            check_budget("dense entries", equations128 * unknowns128, opts.budget.max_table)?;
            let hcx = h.to_complex();
            let hv: Vec<Complex64> = hcx.iter().flatten().copied().collect();
            let hc: Vec<Complex64> = hv.iter().map(|z| z.conj()).collect();
            let mut sink = DenseSink { unknowns, data: Vec::new(), rows: 0 };
            g_system(&ComplexField, n, &hv, &hc, k, l, placement, norm, &mut sink);
            float_nullity(sink, opts.tol)?
        }
    };
    Ok(HomDim { dim, unknowns, equations, certificate })
}

fn rational_mod_p(q: &BigRational, rp: &RootPrime) -> u64 {
    let p = BigInt::from(rp.field.p);
    let to = |x: &BigInt| {
        let r = ((x % &p) + &p) % &p;
        r.to_u64().expect("reduced")
    };
    let (num, den) = (to(q.numer()), to(q.denom()));
    rp.field.mul(num, rp.field.inv(den))
}

fn cyclo_mod_p(x: &CycloScalar, rp: &RootPrime) -> u64 {
    let step = (rp.order / x.order() as u64) as i64;
    let mut acc = 0u64;
    for (j, c) in x.coeffs().iter().enumerate() {
        if !c.is_zero() {
            let r = rp.root_pow(j as i64 * step);
            acc = rp.field.add(acc, rp.field.mul(rational_mod_p(c, rp), r));
        }
    }
    acc
}

/// dim Hom(u^{⊗k}, u^{⊗l}) for the magic unitary P, from literal products
/// of its cells.
pub fn hom_dim_direct(p: &MagicUnitary, k: usize, l: usize, opts: &HomOptions) -> Result<HomDim, QuantumError> {
    let (n, d) = (p.n(), p.d());
    let unknowns128 = (n as u128).pow((k + l) as u32);
    let equations128 = unknowns128 * (d * d) as u128;
    let table128 = (n as u128).pow(2 * k.max(l) as u32) * (d * d) as u128;
    check_budget("unknowns", unknowns128, opts.budget.max_unknowns)?;
    check_budget("equations", equations128, opts.budget.max_equations)?;
    check_budget("product table", table128, opts.budget.max_table)?;
    let (unknowns, equations) = (unknowns128 as usize, equations128 as u64);
    let backend = resolve(opts.backend, p.is_exact())?;
    let (dim, certificate) = match (backend, p.entries()) {
        (Backend::Modular, MagicEntries::Exact { order, grid }) => run_modular(*order as u64, opts.primes, unknowns, |rp, sink| {
            let cells: Vec<Vec<u64>> = grid.iter().map(|m| m.iter().map(|x| cyclo_mod_p(x, rp)).collect()).collect();
            direct_system(&rp.field, n, d, &cells, k, l, sink);
        }),
        (Backend::Exact, MagicEntries::Exact { order, grid }) => {
            let f = CycloField { order: *order };
            let cells: Vec<Vec<CycloScalar>> = grid.iter().map(|m| m.iter().map(|x| x.reduced()).collect()).collect();
            let mut sink = TrackerSink { tracker: NullspaceTracker::new(&f, unknowns) };
            direct_system(&f, n, d, &cells, k, l, &mut sink);
            (sink.tracker.nullity(), RankCertificate::Exact)
        }
        _ => {
            check_budget("dense entries", equations128 * unknowns128, opts.budget.max_table)?;
            let cells: Vec<Vec<Complex64>> = (0..n * n).map(|c| p.cell_complex(c / n, c % n)).collect();
            let mut sink = DenseSink { unknowns, data: Vec::new(), rows: 0 };
            direct_system(&ComplexField, n, d, &cells, k, l, &mut sink);
            float_nullity(sink, opts.tol)?
        }
    };
    Ok(HomDim { dim, unknowns, equations, certificate })
}

/// dim {ξ : Σ_j P_{i₁j₁}···P_{i_kj_k}·ξ_j = ξ_i·1 for all i}.
pub fn fix_dim_direct(p: &MagicUnitary, k: usize, opts: &HomOptions) -> Result<HomDim, QuantumError> {
    hom_dim_direct(p, 0, k, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hadamard::{f4q, fourier, fourier_tensor, haagerup, tao, Phase};
    use crate::quantum::magic_from_hadamard;

    fn opts() -> HomOptions {
        HomOptions { budget: Budget::DEFAULT, ..HomOptions::default() }
    }

    fn g(h: &HadamardCandidate, k: usize, l: usize, b: Backend) -> usize {
        hom_dim_via_g(h, k, l, &opts().with_backend(b)).unwrap().dim
    }

    fn direct(h: &HadamardCandidate, k: usize, l: usize, b: Backend) -> usize {
        hom_dim_direct(&magic_from_hadamard(h).unwrap(), k, l, &opts().with_backend(b)).unwrap().dim
    }

    #[test]
    fn trivial_cases() {
        for h in [fourier(2), tao()] {
            assert_eq!(g(&h, 0, 0, Backend::Auto), 1);
            assert_eq!(direct(&h, 0, 0, Backend::Auto), 1);
            assert!(g(&h, 1, 1, Backend::Auto) >= 2);
        }
    }

    #[test]
    fn fourier_law_small() {
        for n in 2..=4usize {
            for k in 1..=3usize {
                let expect = n.pow(k as u32 - 1);
                assert_eq!(g(&fourier(n), 0, k, Backend::Modular), expect, "g n={n} k={k}");
                assert_eq!(direct(&fourier(n), 0, k, Backend::Modular), expect, "direct n={n} k={k}");
            }
        }
        assert_eq!(direct(&fourier(2), 0, 2, Backend::Exact), 2);
        assert_eq!(direct(&fourier_tensor(&[2, 3]), 0, 2, Backend::Modular), 6);
    }

    #[test]
    fn exact_matches_modular() {
        for h in [fourier(3), fourier_tensor(&[2, 2]), haagerup(Phase::root(4, 1))] {
            for (k, l) in [(0, 2), (1, 1), (2, 0)] {
                if h.n() == 6 && k + l > 1 {
                    continue;
                }
                assert_eq!(g(&h, k, l, Backend::Exact), g(&h, k, l, Backend::Modular), "{} {k} {l}", h.label());
            }
        }
        let h = fourier(3);
        assert_eq!(direct(&h, 1, 1, Backend::Exact), direct(&h, 1, 1, Backend::Modular));
    }

    #[test]
    fn float_matches_exact() {
        for h in [fourier(3), f4q(Phase::root(8, 1)), tao()] {
            let c = h.to_complex_form();
            for (k, l) in [(0, 1), (0, 2), (1, 1)] {
                let e = g(&h, k, l, Backend::Modular);
                assert_eq!(g(&c, k, l, Backend::Float), e, "{} {k} {l}", h.label());
                assert_eq!(direct(&c, k, l, Backend::Float), e, "{} {k} {l}", h.label());
            }
        }
    }

    #[test]
    fn adjoint_symmetry() {
        for h in [fourier(2), f4q(Phase::root(4, 1)), tao()] {
            for (k, l) in [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)] {
                if h.n() == 6 && k + l > 3 {
                    continue;
                }
                assert_eq!(g(&h, k, l, Backend::Modular), g(&h, l, k, Backend::Modular), "{} {k} {l}", h.label());
            }
        }
    }

    // Leg placement and normalization are the two conventions the G-system
    // leaves open; only one combination reproduces the direct oracle.
    #[test]
    fn calibration() {
        let cases = [fourier(2), fourier(3), f4q(Phase::root(8, 1)), f4q(Phase::root(3, 1))];
        let mut matching = Vec::new();
        for placement in [LegPlacement::Outer, LegPlacement::Left, LegPlacement::Right] {
            for norm in [GNormalization::PowerOfN, GNormalization::Unnormalized] {
                let ok = cases.iter().all(|h| {
                    [(0usize, 1usize), (0, 2), (1, 1), (1, 2), (2, 0), (2, 2)].iter().all(|&(k, l)| {
                        let via = hom_dim_via_g_with(h, k, l, placement, norm, &opts()).unwrap().dim;
                        via == direct(h, k, l, Backend::Modular)
                    })
                });
                if ok {
                    matching.push((placement, norm));
                }
            }
        }
        assert_eq!(matching, vec![(LegPlacement::Outer, GNormalization::PowerOfN)]);
    }

    #[test]
    fn budget_and_backend_errors() {
        let tight = HomOptions { budget: Budget { max_equations: 10, ..Budget::DEFAULT }, ..opts() };
        assert!(matches!(hom_dim_via_g(&fourier(3), 0, 2, &tight), Err(QuantumError::BudgetExceeded { .. })));
        let c = fourier(3).to_complex_form();
        assert!(matches!(
            hom_dim_via_g(&c, 0, 1, &opts().with_backend(Backend::Modular)),
            Err(QuantumError::InvalidParameter(_))
        ));
    }

    #[test]
    fn ambiguous_rank_is_reported() {
        let sink = DenseSink {
            unknowns: 2,
            data: vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(1e-8, 0.0)],
            rows: 2,
        };
        assert!(matches!(float_nullity(sink, 1e-8), Err(QuantumError::RankAmbiguous { .. })));
    }
}
