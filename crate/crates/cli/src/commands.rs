use std::path::Path;

use num::BigRational;
use qperm::hadamard::{
    self, butson_enumerate, dephase, equivalent_verdict, i_g_estimate_many, io, is_regular, level, obstruction_table,
    obstructions, Equivalence, EnumerationMode, HadamardCandidate, Level, MatrixGroup, RuleOutcome,
    TableCell, Verdict, DEFAULT_NODE_BUDGET,
};
use qperm::models::{
    all_permutations, check_so3q_relations, free_hg_formula, free_hg_oracle, klein_fourier, model_word_expectations,
    pauli_magic, permutation_magic, su2_sample_rng,
};
use qperm::partitions::{
    char_moment, free_bessel_even_moment, gram_det_classical, gram_det_exact, gram_det_free, integrate_monomial,
    truncated_char_moment, GramWeingarten, PartitionFamily,
};
use qperm::quantum::{
    check_magic, image_commutative, invariants, magic_from_hadamard, orbit_components, poincare_series, Backend,
    HomOptions, InvariantMethod, QuantumError,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::args::*;
use crate::payload;
use crate::parse;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 1,
        }
    }
}

fn domain(e: impl std::fmt::Display) -> CliError {
    CliError::Domain(e.to_string())
}

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

pub enum Output {
    Report { result: Value, warnings: Vec<String> },
    /// Raw file contents, printed as is.
    Raw(String),
}

fn report(result: Value) -> Result<Output, CliError> {
    Ok(Output::Report { result, warnings: Vec::new() })
}

fn load(path: Option<&Path>, spec: Option<&str>) -> Result<HadamardCandidate, CliError> {
    match (path, spec) {
        (Some(p), _) => io::parse_matrix_file(p).map_err(domain),
        (None, Some(s)) => parse::catalog(s).map_err(usage),
        (None, None) => Err(usage("a matrix source is required")),
    }
}

fn source(s: &MatrixSource) -> Result<HadamardCandidate, CliError> {
    load(s.input.as_deref(), s.catalog.as_deref())
}

fn family(f: FamilyArg) -> PartitionFamily {
    match f {
        FamilyArg::All => PartitionFamily::All,
        FamilyArg::Nc => PartitionFamily::Noncrossing,
    }
}

fn emit(h: &HadamardCandidate, how: EmitArg) -> Result<Output, CliError> {
    match how {
        EmitArg::Json => report(json!({ "matrix": payload::matrix(h) })),
        EmitArg::But => io::emit_but(h).map(Output::Raw).ok_or_else(|| domain("matrix has no Butson form")),
        EmitArg::Cmat => Ok(Output::Raw(io::emit_cmat(h))),
    }
}

fn require_hadamard(h: &HadamardCandidate) -> Result<(), CliError> {
    match h.first_non_orthogonal_pair() {
        Some((i, j)) => Err(domain(format!("not a Hadamard matrix: rows {} and {} are not orthogonal", i + 1, j + 1))),
        None => Ok(()),
    }
}

fn positive(name: &str, v: usize) -> Result<(), CliError> {
    if v == 0 {
        Err(usage(format!("--{name} must be at least 1")))
    } else {
        Ok(())
    }
}

fn verdict_name(v: &Verdict) -> String {
    match v {
        Verdict::Exists(_) => "Exists".into(),
        Verdict::Obstructed(r) => format!("Obstructed({})", r.name()),
        Verdict::Unknown => "Unknown".into(),
    }
}

fn outcome_name(o: RuleOutcome) -> &'static str {
    match o {
        RuleOutcome::Obstructed => "obstructed",
        RuleOutcome::Satisfied => "satisfied",
        RuleOutcome::Inconclusive => "inconclusive",
        RuleOutcome::NotApplicable => "not-applicable",
    }
}

fn cell_json(c: &TableCell) -> Value {
    json!({
        "n": c.n,
        "l": c.l,
        "verdict": verdict_name(&c.verdict),
        "symbol": c.symbol(),
        "witness": c.witness_name,
        "fired": c.fired.iter().map(|r| r.name()).collect::<Vec<_>>(),
        "agrees_with_reference": c.agrees_with_reference(),
    })
}

fn hom_options(backend: BackendArg) -> HomOptions {
    HomOptions::default().with_backend(match backend {
        BackendArg::Auto => Backend::Auto,
        BackendArg::Modular => Backend::Modular,
        BackendArg::Exact => Backend::Exact,
        BackendArg::Float => Backend::Float,
    })
}

fn series(a: &InvariantArgs) -> Result<qperm::quantum::InvariantSeries, CliError> {
    let h = source(&a.source)?;
    if a.kmax > 8 {
        return Err(usage("--kmax is limited to 8"));
    }
    let method = match a.method {
        MethodArg::G => InvariantMethod::GTensor,
        MethodArg::Direct => InvariantMethod::Direct,
        MethodArg::Both => InvariantMethod::Both,
    };
    invariants(&h, a.kmax, method, &hom_options(a.backend)).map_err(|e| match e {
        QuantumError::InvalidParameter(m) => usage(m),
        e => domain(e),
    })
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    let tol = cli.tol;
    if !(tol.is_finite() && tol > 0.0) {
        return Err(usage("--tol must be positive"));
    }
    match &cli.command {
        Command::Verify(a) => {
            let h = match &a.source.input {
                Some(p) => io::parse_matrix_file_unverified(p).map_err(domain)?,
                None => source(&a.source)?,
            };
            let bad = h.first_non_orthogonal_pair();
            report(json!({
                "hadamard": bad.is_none(),
                "failing_pair": bad.map(payload::pair),
                "matrix": payload::matrix(&h),
            }))
        }
        Command::Dephase(a) => {
            let h = source(&a.source)?;
            require_hadamard(&h)?;
            emit(&dephase(&h), a.emit)
        }
        Command::Catalog { name, emit: how } => emit(&parse::catalog(name).map_err(usage)?, *how),
        Command::Level(a) => {
            let h = source(&a.source)?;
            let l = match level(&h) {
                Level::Finite(l) => json!(l),
                Level::Infinite => json!("infinite"),
            };
            report(json!({ "n": h.n(), "level": l }))
        }
        Command::Regular(a) => {
            let h = source(&a.source)?;
            require_hadamard(&h)?;
            let r = is_regular(&h);
            let cert: Vec<Value> = r
                .certificate
                .iter()
                .map(|d| {
                    json!({
                        "rows": payload::pair(d.rows),
                        "cycles": d.cycles.iter().map(|c| json!({
                            "prime": c.prime,
                            "columns": c.columns.iter().map(|k| k + 1).collect::<Vec<_>>(),
                            "lambda": [payload::float(c.lambda.re), payload::float(c.lambda.im)],
                        })).collect::<Vec<_>>(),
                    })
                })
                .collect();
            report(json!({
                "regular": r.regular,
                "certificate_valid": r.regular && r.validate(&h),
                "failing_pair": r.failing_pair.map(payload::pair),
                "certificate": cert,
            }))
        }
        Command::Equiv { matrix, other } => {
            let h = source(matrix)?;
            let k = load(other.other_input.as_deref(), other.other_catalog.as_deref())?;
            require_hadamard(&h)?;
            require_hadamard(&k)?;
            let mut warnings = Vec::new();
            let v = match equivalent_verdict(&h, &k) {
                Equivalence::Equivalent => "equivalent",
                Equivalence::Inequivalent => "inequivalent",
                Equivalence::Unknown => {
                    warnings.push(format!(
                        "order {} exceeds exhaustive search (max {}); invariants agree",
                        h.n(),
                        hadamard::EXHAUSTIVE_MAX_ORDER
                    ));
                    "unknown"
                }
            };
            Ok(Output::Report { result: json!({ "verdict": v }), warnings })
        }
        Command::ButsonEnum { n, l, mode, budget } => {
            positive("n", *n)?;
            if *l < 2 {
                return Err(usage("--l must be at least 2"));
            }
            let mode = match mode {
                ModeArg::Any => EnumerationMode::AnyWitness,
                ModeArg::All => EnumerationMode::AllDephasedClasses,
            };
            let (found, stats) = butson_enumerate(*n, *l, mode, budget.unwrap_or(DEFAULT_NODE_BUDGET)).map_err(domain)?;
            report(json!({
                "n": n,
                "l": l,
                "count": found.len(),
                "empty": found.is_empty(),
                "matrices": found.iter().map(payload::matrix).collect::<Vec<_>>(),
                "stats": {
                    "nodes": stats.nodes,
                    "candidate_rows": stats.candidate_rows,
                    "complete_matrices": stats.complete_matrices,
                },
            }))
        }
        Command::Obstruct { n, l } => {
            if *n < 1 || *l < 2 {
                return Err(usage("need --n >= 1 and --l >= 2"));
            }
            let checks = obstructions(*n, *l);
            let warnings = checks
                .iter()
                .filter(|c| c.outcome == RuleOutcome::Inconclusive)
                .map(|c| format!("{} is inconclusive: {}", c.rule.name(), c.detail))
                .collect();
            let first = checks.iter().find(|c| c.outcome == RuleOutcome::Obstructed);
            let rules: Vec<Value> = checks
                .iter()
                .map(|c| json!({ "rule": c.rule.name(), "outcome": outcome_name(c.outcome), "detail": c.detail }))
                .collect();
            let verdict = match first {
                Some(c) => format!("Obstructed({})", c.rule.name()),
                None => "NotObstructed".into(),
            };
            Ok(Output::Report { result: json!({ "n": n, "l": l, "verdict": verdict, "rules": rules }), warnings })
        }
        Command::Table { nmax, lmax } => {
            let cells = obstruction_table(*nmax, *lmax).map_err(usage)?;
            let mut warnings = Vec::new();
            for c in &cells {
                if matches!(c.verdict, Verdict::Unknown) {
                    warnings.push(format!("H_{}({}) is undecided", c.n, c.l));
                }
                if c.agrees_with_reference() == Some(false) {
                    warnings.push(format!("H_{}({}) disagrees with the published grid", c.n, c.l));
                }
            }
            let grid: Vec<Vec<String>> = (2..=*nmax)
                .map(|n| cells.iter().filter(|c| c.n == n).map(|c| c.symbol()).collect())
                .collect();
            Ok(Output::Report {
                result: json!({
                    "nmax": nmax,
                    "lmax": lmax,
                    "cells": cells.iter().map(cell_json).collect::<Vec<_>>(),
                    "grid": grid,
                }),
                warnings,
            })
        }
        Command::Magic(a) => {
            let h = source(&a.source)?;
            let p = magic_from_hadamard(&h).map_err(domain)?;
            let r = check_magic(&p, tol);
            report(json!({
                "n": p.n(),
                "exact": r.exact,
                "passes": r.passes,
                "residuals": {
                    "idempotent": payload::float(r.idempotent_residual),
                    "self_adjoint": payload::float(r.adjoint_residual),
                    "row_sum": payload::float(r.row_sum_residual),
                    "column_sum": payload::float(r.column_sum_residual),
                },
                "worst": r.worst.map(|d| json!({
                    "kind": format!("{:?}", d.kind),
                    "index": payload::pair(d.index),
                    "residual": payload::float(d.residual),
                })),
                "orbits": orbit_components(&p, tol),
            }))
        }
        Command::Invariants(a) => {
            let s = series(a)?;
            report(json!({
                "label": s.label,
                "c": s.values,
                "methods": s.methods.iter().map(|m| m.name()).collect::<Vec<_>>(),
            }))
        }
        Command::Poincare(a) => {
            let s = series(a)?;
            let p = poincare_series(&s);
            report(json!({
                "label": s.label,
                "c": s.values,
                "coefficients": payload::rationals(&p.coeffs),
                "series": p.to_string(),
            }))
        }
        Command::Commutative(a) => {
            let h = source(&a.source)?;
            let r = image_commutative(&h, tol).map_err(domain)?;
            report(json!({
                "commutative": r.commutative,
                "witness": r.witness.map(|(a, b, norm)| json!({
                    "first": payload::pair(a),
                    "second": payload::pair(b),
                    "commutator_norm": payload::float(norm),
                })),
            }))
        }
        Command::GramDet { k, n, family: f } => {
            positive("k", *k)?;
            positive("n", *n)?;
            if *k > 8 {
                return Err(usage("--k is limited to 8"));
            }
            let fam = family(*f);
            let exact = gram_det_exact(*k, *n, fam);
            let formula = match f {
                FamilyArg::All => json!({ "value": gram_det_classical(*k, *n).to_string() }),
                FamilyArg::Nc => {
                    let v = gram_det_free(*k, *n).map_err(domain)?;
                    json!({ "value": v.value.to_string(), "convention": v.convention.describe() })
                }
            };
            report(json!({ "k": k, "n": n, "family": fam.name(), "exact": exact.to_string(), "formula": formula }))
        }
        Command::CharMoments { n, kmax, family: f, s } => {
            positive("n", *n)?;
            if *kmax > 8 {
                return Err(usage("--kmax is limited to 8"));
            }
            if s.is_some_and(|s| s > *n) {
                return Err(usage("--s must not exceed --n"));
            }
            let fam = family(*f);
            let moments: Vec<BigRational> = (1..=*kmax)
                .map(|k| match s {
                    Some(s) => truncated_char_moment(fam, *n, *s, k),
                    None => char_moment(fam, *n, k),
                })
                .collect::<Result<_, _>>()
                .map_err(domain)?;
            report(json!({ "n": n, "s": s.unwrap_or(*n), "family": fam.name(), "moments": payload::rationals(&moments) }))
        }
        Command::Weingarten { n, k, family: f, i, j } => {
            positive("n", *n)?;
            positive("k", *k)?;
            if *k > 6 {
                return Err(usage("--k is limited to 6"));
            }
            let fam = family(*f);
            if let (Some(i), Some(j)) = (i, j) {
                let i = parse::indices(i, *n).map_err(usage)?;
                let j = parse::indices(j, *n).map_err(usage)?;
                if i.len() != *k || j.len() != *k {
                    return Err(usage(format!("--i and --j need {k} indices each")));
                }
                let v = integrate_monomial(fam, *n, &i, &j).map_err(domain)?;
                return report(json!({ "n": n, "k": k, "family": fam.name(), "integral": payload::rational(&v) }));
            }
            let gw = GramWeingarten::new(*k, *n, fam);
            let w = gw.weingarten().map_err(domain)?;
            report(json!({
                "n": n,
                "k": k,
                "family": fam.name(),
                "partitions": gw.partitions.iter().map(|p| p.blocks().iter().map(|b| b.iter().map(|x| x + 1).collect::<Vec<_>>()).collect::<Vec<_>>()).collect::<Vec<_>>(),
                "weingarten": w.iter().map(|r| payload::rationals(r)).collect::<Vec<_>>(),
            }))
        }
        Command::FreeBessel { kmax, t } => {
            let t = parse::rational(t).map_err(usage)?;
            if *kmax > 30 {
                return Err(usage("--kmax is limited to 30"));
            }
            let m: Vec<BigRational> =
                (1..=*kmax).map(|k| free_bessel_even_moment(k, &t)).collect::<Result<_, _>>().map_err(domain)?;
            report(json!({ "t": payload::rational(&t), "even_moments": payload::rationals(&m) }))
        }
        Command::FreeHg { n, kmax, oracle } => {
            if *kmax > 12 {
                return Err(usage("--kmax is limited to 12"));
            }
            let formula: Vec<Value> =
                (0..=*kmax).map(|k| free_hg_formula(*n, k).map(payload::float)).collect::<Result<_, _>>().map_err(domain)?;
            let exact = if *oracle {
                if *kmax > 6 {
                    return Err(usage("--oracle is limited to --kmax 6"));
                }
                let v: Vec<BigRational> = (0..=*kmax as usize)
                    .map(|k| free_hg_oracle(*n, *n, n * n, k))
                    .collect::<Result<_, _>>()
                    .map_err(domain)?;
                Some(payload::rationals(&v))
            } else {
                None
            };
            report(json!({ "n": n, "formula": formula, "oracle": exact }))
        }
        Command::PauliCheck { samples, seed, word } => {
            positive("samples", *samples)?;
            let words: Vec<Vec<(usize, usize)>> = word.iter().map(|w| parse::word(w)).collect::<Result<_, _>>().map_err(usage)?;
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let mut worst = 0f64;
            for _ in 0..*samples {
                worst = worst.max(check_magic(&pauli_magic(&su2_sample_rng(&mut rng)), tol).max_residual());
            }
            let mut words_json = Vec::new();
            if !words.is_empty() {
                let est = model_word_expectations(&words, *samples, *seed).map_err(domain)?;
                for ((w, e), text) in words.iter().zip(&est).zip(word) {
                    let (i, j): (Vec<usize>, Vec<usize>) = w.iter().copied().unzip();
                    let exact = integrate_monomial(PartitionFamily::Noncrossing, 4, &i, &j).map_err(domain)?;
                    words_json.push(json!({
                        "word": text,
                        "estimate": payload::float(e.value),
                        "stderr": payload::float(e.stderr),
                        "free_integral": payload::rational(&exact),
                    }));
                }
            }
            report(json!({
                "samples": samples,
                "seed": seed,
                "max_magic_residual": payload::float(worst),
                "magic_passes": worst <= tol,
                "words": words_json,
            }))
        }
        Command::KleinCheck { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let mut worst = 0f64;
            let mut failures = 0usize;
            let mut check = |u: &qperm::quantum::MagicUnitary| -> Result<(), CliError> {
                let r = check_so3q_relations(&klein_fourier(u, tol).map_err(domain)?, tol);
                worst = worst.max(r.skew_residual.max(r.determinant_residual).max(r.orthogonality_residual));
                failures += usize::from(!r.passes);
                Ok(())
            };
            for _ in 0..*samples {
                check(&pauli_magic(&su2_sample_rng(&mut rng)))?;
            }
            let perms = all_permutations(4);
            for s in &perms {
                check(&permutation_magic(s))?;
            }
            report(json!({
                "samples": samples,
                "seed": seed,
                "permutations": perms.len(),
                "max_residual": payload::float(worst),
                "failures": failures,
                "passes": failures == 0,
            }))
        }
        Command::OneNorm(a) => {
            let h = source(&a.source)?;
            let n = h.n() as f64;
            let v = h.scaled_one_norm();
            let bound = n * n.sqrt();
            report(json!({
                "n": h.n(),
                "one_norm": payload::float(v),
                "bound": payload::float(bound),
                "attains_bound": (v - bound).abs() <= tol * bound.max(1.0),
            }))
        }
        Command::IgEstimate { group, n, kmax, samples, seed } => {
            positive("n", *n)?;
            positive("samples", *samples)?;
            if *kmax == 0 {
                return Err(usage("--kmax must be at least 1"));
            }
            let g = match group {
                GroupArg::O => MatrixGroup::Orthogonal,
                GroupArg::U => MatrixGroup::Unitary,
            };
            let ks: Vec<u32> = (1..=*kmax).collect();
            let est = i_g_estimate_many(g, *n, &ks, *samples, *seed).map_err(domain)?;
            let bound = *n as f64 * (*n as f64).sqrt();
            report(json!({
                "group": match group { GroupArg::O => "O", GroupArg::U => "U" },
                "n": n,
                "samples": samples,
                "seed": seed,
                "bound": payload::float(bound),
                "estimates": ks.iter().zip(&est).map(|(k, e)| json!({
                    "k": k,
                    "value": payload::float(e.value),
                    "stderr": payload::float(e.stderr),
                })).collect::<Vec<_>>(),
            }))
        }
    }
}
