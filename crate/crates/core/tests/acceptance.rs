//! End-to-end acceptance checks, one line per criterion.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num::{BigInt, BigRational, Signed, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qperm::hadamard::{
    bjorck_froberg, butson_enumerate, catalog_of_order, equivalent, f4q, f6_col, f6_row, fourier, fourier_tensor,
    haagerup, i_g_estimate_many, is_regular, obstruction_table, petrescu, table_cell, tao, EnumerationMode,
    HadamardCandidate, MatrixGroup, Phase, Verdict, DEFAULT_NODE_BUDGET,
};
use qperm::models::{
    all_permutations, check_so3q_relations, free_hg_formula, free_hg_oracle, klein_fourier, model_word_expectations,
    pauli_magic, permutation_magic, su2_sample_rng,
};
use qperm::partitions::{
    bell_number, catalan_number, char_moment, enum_partitions, fit_free_gram_conventions, free_bessel_even_moment,
    gram_det_classical, gram_det_exact, gram_det_free, integrate_monomial, integrate_monomial_classical_reduced,
    truncated_char_moment, PartitionError, PartitionFamily,
};
use qperm::quantum::{
    check_magic, fix_dim_direct, hom_dim_via_g, invariants, magic_from_hadamard, Backend, HomOptions, InvariantMethod,
    RankCertificate,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t <= limit, || format!("runtime {:.1}s over the {}s limit", t.as_secs_f64(), limit.as_secs()))
}

fn int(v: BigInt) -> BigRational {
    BigRational::from_integer(v)
}

fn c1_character_moments() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for k in 1..=5 {
        for n in k..=7 {
            let v = char_moment(PartitionFamily::All, n, k).map_err(|e| e.to_string())?;
            ensure(v == int(bell_number(k)), || format!("S_{n}, k={k}: got {v}, want Bell {}", bell_number(k)))?;
            checked += 1;
        }
        for n in 4..=7 {
            let v = char_moment(PartitionFamily::Noncrossing, n, k).map_err(|e| e.to_string())?;
            ensure(v == int(catalan_number(k)), || format!("S_{n}^+, k={k}: got {v}"))?;
            checked += 1;
        }
    }
    within(Duration::from_secs(10), start)?;
    Ok(format!("{checked} exact moments"))
}

/// ∫ u_{i₁j₁}···u_{i_kj_k} over S_n as the fraction of permutations σ with
/// σ(j_t) = i_t for every t.
fn permutation_average(n: usize, i: &[usize], j: &[usize]) -> BigRational {
    let mut perm: Vec<usize> = (0..n).collect();
    let (mut hits, mut total) = (0u64, 0u64);
    loop {
        total += 1;
        if i.iter().zip(j).all(|(&a, &b)| perm[b] == a) {
            hits += 1;
        }
        // next permutation in lexicographic order
        let Some(p) = (1..n).rev().find(|&p| perm[p - 1] < perm[p]) else { break };
        let q = (p..n).rev().find(|&q| perm[q] > perm[p - 1]).unwrap();
        perm.swap(p - 1, q);
        perm[p..].reverse();
    }
    BigRational::new(BigInt::from(hits), BigInt::from(total))
}

fn c2_classical_weingarten() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut reduced = 0;
    for n in 1..=6usize {
        for k in 1..=4usize {
            for _ in 0..50 {
                let i: Vec<usize> = (0..k).map(|_| rng.random_range(0..n)).collect();
                let j: Vec<usize> = (0..k).map(|_| rng.random_range(0..n)).collect();
                let expect = permutation_average(n, &i, &j);
                let got = if n >= k {
                    integrate_monomial(PartitionFamily::All, n, &i, &j).map_err(|e| e.to_string())?
                } else {
                    let direct = integrate_monomial(PartitionFamily::All, n, &i, &j);
                    ensure(matches!(direct, Err(PartitionError::SingularGram { .. })), || {
                        format!("n={n} < k={k} should have a singular Gram matrix")
                    })?;
                    reduced += 1;
                    integrate_monomial_classical_reduced(n, &i, &j).map_err(|e| e.to_string())?
                };
                ensure(got == expect, || format!("n={n} i={i:?} j={j:?}: {got} vs {expect}"))?;
            }
        }
    }
    within(Duration::from_secs(60), start)?;
    Ok(format!("1200 tuples, {reduced} via the reduced monomial for n < k"))
}

fn c3_gram_determinants() -> Outcome {
    for k in 1..=5 {
        for n in 5..=8 {
            let exact = gram_det_exact(k, n, PartitionFamily::All);
            ensure(gram_det_classical(k, n) == exact, || format!("classical k={k} n={n}"))?;
        }
    }
    let fits = fit_free_gram_conventions(4, &[4, 5, 9]);
    ensure(fits.len() == 1, || format!("{} conventions fit", fits.len()))?;
    for k in 1..=4 {
        for n in [4usize, 5, 9] {
            let exact = int(gram_det_exact(k, n, PartitionFamily::Noncrossing));
            let v = gram_det_free(k, n).map_err(|e| e.to_string())?;
            ensure(v.value.as_rational() == Some(&exact), || format!("free k={k} n={n}"))?;
        }
    }
    Ok(format!("free convention: {}", fits[0].describe()))
}

fn c4_truncated_characters() -> Outcome {
    let t = BigRational::new(1.into(), 2.into());
    let mut report = Vec::new();
    let mut failures = Vec::new();
    for family in [PartitionFamily::All, PartitionFamily::Noncrossing] {
        for k in 1..=4usize {
            let limit: BigRational =
                enum_partitions(k, family).iter().map(|p| num::pow::pow(t.clone(), p.block_count())).sum();
            let mut errs = Vec::new();
            for n in [8usize, 16, 32] {
                let v = truncated_char_moment(family, n, n / 2, k).map_err(|e| e.to_string())?;
                errs.push((&v - &limit).abs().to_f64().unwrap());
            }
            if !(errs[1] <= errs[0] && errs[2] <= errs[1]) {
                failures.push(format!("{} k={k} not monotone {errs:?}", family.name()));
            }
            if errs[2] > 2.0 / 32.0 {
                failures.push(format!("{} k={k}: error {:.4} at n=32 exceeds 2/n = 0.0625", family.name(), errs[2]));
            }
            report.push(format!("{}{k}:{:.4}", &family.name()[..1], errs[2]));
        }
    }
    if failures.is_empty() {
        Ok(format!("n=32 errors {}", report.join(" ")))
    } else {
        Err(failures.join("; "))
    }
}

fn c5_fourier_law() -> Outcome {
    let start = Instant::now();
    let opts = HomOptions::default();
    for n in 2..=5usize {
        let s = invariants(&fourier(n), 4, InvariantMethod::Both, &opts).map_err(|e| e.to_string())?;
        let expect: Vec<u64> = (0..=4u32).map(|k| if k == 0 { 1 } else { (n as u64).pow(k - 1) }).collect();
        ensure(s.values == expect, || format!("F_{n}: {:?}", s.values))?;
    }
    within(Duration::from_secs(300), start)?;
    Ok(format!("c_k(F_n) = n^(k-1) by both systems in {:.1}s", start.elapsed().as_secs_f64()))
}

fn c6_multiplicativity() -> Outcome {
    let s = invariants(&fourier_tensor(&[2, 3]), 3, InvariantMethod::Both, &HomOptions::default())
        .map_err(|e| e.to_string())?;
    ensure(s.values == vec![1, 1, 6, 36], || format!("{:?}", s.values))?;
    Ok("c(F_2 x F_3) = 1, 1, 6, 36".into())
}

fn c7_oracle_agreement() -> Outcome {
    let q7 = f4q(Phase::root(7, 1)).to_complex_form();
    let float = HomOptions::default().with_backend(Backend::Float);
    let exact = HomOptions::default();
    let mut worst_gap = f64::INFINITY;
    let mut dims = Vec::new();
    for (h, opts) in [(&q7, float), (&tao(), exact), (&haagerup(Phase::root(4, 1)), exact)] {
        let p = magic_from_hadamard(h).map_err(|e| e.to_string())?;
        let mut row = Vec::new();
        for k in 0..=3 {
            let a = hom_dim_via_g(h, 0, k, &opts).map_err(|e| e.to_string())?;
            let b = fix_dim_direct(&p, k, &opts).map_err(|e| e.to_string())?;
            ensure(a.dim == b.dim, || format!("{} k={k}: {} vs {}", h.label(), a.dim, b.dim))?;
            for cert in [&a.certificate, &b.certificate] {
                if let RankCertificate::Float { tol, smallest_retained, largest_discarded } = cert {
                    let lo = smallest_retained.unwrap_or(1.0) / tol;
                    let hi = tol / largest_discarded.unwrap_or(0.0).max(f64::MIN_POSITIVE);
                    worst_gap = worst_gap.min(lo.min(hi));
                }
            }
            row.push(a.dim);
        }
        dims.push(format!("{}={row:?}", h.label()));
    }
    ensure(worst_gap >= 10.0, || format!("float rank gap only {worst_gap:.1}x the tolerance"))?;
    Ok(format!("{}; float gap >= {:.1e}x tol", dims.join(" "), worst_gap))
}

fn c8_table() -> Outcome {
    let start = Instant::now();
    let table = obstruction_table(6, 6).map_err(|e| e.to_string())?;
    for cell in &table {
        ensure(cell.agrees_with_reference() == Some(true), || format!("cell ({}, {}) = {}", cell.n, cell.l, cell.symbol()))?;
    }
    let witness = [(2, 2, None), (3, 3, None), (4, 2, None), (4, 4, None), (5, 5, None), (6, 3, Some("T")), (6, 4, Some("H1")), (6, 6, None)];
    for (n, l, name) in witness {
        let c = table_cell(n, l);
        ensure(matches!(c.verdict, Verdict::Exists(_)), || format!("({n},{l}) should have a witness"))?;
        if let Some(w) = name {
            ensure(c.witness_name.as_deref() == Some(w), || format!("({n},{l}) witness {:?}", c.witness_name))?;
        }
    }
    for (n, l) in [(3, 2), (5, 2), (5, 3), (5, 4), (5, 6), (6, 2), (6, 5)] {
        ensure(matches!(table_cell(n, l).verdict, Verdict::Obstructed(_)), || format!("({n},{l}) should be obstructed"))?;
    }
    let mut nodes = Vec::new();
    for (n, l) in [(3usize, 2usize), (5, 2), (6, 2)] {
        let (found, stats) = butson_enumerate(n, l, EnumerationMode::AllDephasedClasses, DEFAULT_NODE_BUDGET)
            .map_err(|e| e.to_string())?;
        ensure(found.is_empty(), || format!("enumeration found a matrix in H_{n}({l})"))?;
        nodes.push((stats.candidate_rows, stats.nodes));
    }
    within(Duration::from_secs(600), start)?;
    Ok(format!("{} cells agree; exhaustive search (candidate rows, nodes) {nodes:?}", table.len()))
}

fn c9_classification() -> Outcome {
    let mut classes = 0;
    for n in 2..=5usize {
        for l in 2..=4usize {
            let (found, _) = butson_enumerate(n, l, EnumerationMode::AllDephasedClasses, DEFAULT_NODE_BUDGET)
                .map_err(|e| e.to_string())?;
            let mut catalog: Vec<HadamardCandidate> = catalog_of_order(n).into_iter().map(|c| c.1).collect();
            if n == 4 {
                catalog.extend((0..l as i64).map(|e| f4q(Phase::root(l as u64, e))));
            }
            for h in &found {
                let hit = catalog.iter().any(|c| equivalent(h, c).unwrap_or(false));
                ensure(hit, || format!("class in H_{n}({l}) matches no catalog entry"))?;
                classes += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut angle = || Phase::angle(rng.random_range(0.0..std::f64::consts::TAU));
    let mut family = Vec::new();
    for _ in 0..10 {
        family.push(f6_col(angle(), angle()));
        family.push(f6_row(angle(), angle()));
    }
    for _ in 0..5 {
        family.push(haagerup(angle()));
    }
    family.push(tao());
    for h in &family {
        let r = is_regular(h);
        ensure(r.regular && r.validate(h), || format!("{} should be regular", h.label()))?;
    }
    ensure(!is_regular(&bjorck_froberg()).regular, || "bjorck-froberg reported regular".into())?;
    Ok(format!("{classes} classes matched; {} regular matrices certified", family.len()))
}

fn words() -> Vec<Vec<(usize, usize)>> {
    vec![
        vec![(0, 0)],
        vec![(0, 0), (1, 1)],
        vec![(1, 2)],
        vec![(3, 0)],
        vec![(0, 0), (0, 0)],
        vec![(0, 1), (0, 1)],
        vec![(0, 0), (0, 1)],
        vec![(0, 0), (1, 0)],
        vec![(0, 1), (1, 0)],
        vec![(2, 3), (3, 2)],
        vec![(1, 1), (2, 2)],
        vec![(0, 1), (2, 3)],
        vec![(0, 0), (1, 1), (0, 0)],
        vec![(0, 0), (1, 1), (2, 2)],
        vec![(0, 1), (1, 0), (0, 1)],
        vec![(0, 0), (1, 2), (0, 0)],
        vec![(3, 3), (2, 1), (3, 3)],
        vec![(0, 1), (1, 2), (2, 0)],
        vec![(0, 0), (1, 0), (2, 0)],
        vec![(1, 1), (1, 1), (2, 3)],
        vec![(2, 0), (3, 1), (2, 0)],
        vec![(0, 3), (1, 2), (2, 1)],
    ]
}

fn c10_pauli_model() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut worst = 0f64;
    for _ in 0..1000 {
        let r = check_magic(&pauli_magic(&su2_sample_rng(&mut rng)), 1e-12);
        worst = worst.max(r.max_residual());
    }
    ensure(worst <= 1e-12, || format!("magic residual {worst:e}"))?;
    let ws = words();
    let est = model_word_expectations(&ws, 100_000, 10).map_err(|e| e.to_string())?;
    let mut max_z = 0f64;
    for (w, e) in ws.iter().zip(&est) {
        let (i, j): (Vec<usize>, Vec<usize>) = w.iter().copied().unzip();
        let exact = integrate_monomial(PartitionFamily::Noncrossing, 4, &i, &j).map_err(|e| e.to_string())?;
        let x = exact.to_f64().unwrap();
        // words whose value is sample independent have zero spread
        let dev = (e.value - x).abs();
        ensure(dev <= 3.0 * e.stderr + 1e-12, || format!("word {w:?}: {} ± {} vs {exact}", e.value, e.stderr))?;
        if dev > 1e-12 {
            max_z = max_z.max(dev / e.stderr);
        }
    }
    for (e, x) in [(est[0], 0.25), (est[1], 1.0 / 12.0)] {
        ensure((e.value - x).abs() <= 3.0 * e.stderr + 1e-12, || format!("anchor {} vs {x}", e.value))?;
    }
    within(Duration::from_secs(120), start)?;
    Ok(format!("magic residual {worst:.1e}; {} words, max |z| = {max_z:.2}", ws.len()))
}

fn c11_klein_fourier() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut worst = 0f64;
    for _ in 0..100 {
        let a = klein_fourier(&pauli_magic(&su2_sample_rng(&mut rng)), 1e-10).map_err(|e| e.to_string())?;
        let r = check_so3q_relations(&a, 1e-10);
        ensure(r.passes, || format!("relations fail: {:?}", r.worst))?;
        worst = worst.max(r.skew_residual.max(r.determinant_residual).max(r.orthogonality_residual));
    }
    for s in all_permutations(4) {
        let a = klein_fourier(&permutation_magic(&s), 1e-10).map_err(|e| e.to_string())?;
        let r = check_so3q_relations(&a, 1e-10);
        ensure(r.passes, || format!("permutation {s:?}: {:?}", r.worst))?;
    }
    Ok(format!("100 Pauli magics and 24 permutations; worst residual {worst:.1e}"))
}

fn c12_free_hypergeometric() -> Outcome {
    let start = Instant::now();
    let mut worst = 0f64;
    for n in [3u64, 4] {
        for k in 0..=5u64 {
            let exact = free_hg_oracle(n, n, n * n, k as usize).map_err(|e| e.to_string())?;
            let x = exact.to_f64().unwrap();
            let v = free_hg_formula(n, k).map_err(|e| e.to_string())?;
            let rel = (v - x).abs() / x.abs();
            ensure(rel <= 1e-9, || format!("n={n} k={k}: {v} vs {exact}"))?;
            worst = worst.max(rel);
        }
    }
    within(Duration::from_secs(60), start)?;
    Ok(format!("worst relative error {worst:.1e}"))
}

fn c13_free_bessel() -> Outcome {
    let one = BigRational::from_integer(1.into());
    let mut counts = Vec::new();
    for k in 1..=6 {
        let v = free_bessel_even_moment(k, &one).map_err(|e| e.to_string())?;
        let c = enum_partitions(2 * k, PartitionFamily::EvenNoncrossing).len();
        ensure(v == BigRational::from_integer(c.into()), || format!("k={k}: {v} vs {c}"))?;
        counts.push(c);
    }
    Ok(format!("even NC partition counts {counts:?}"))
}

fn catalog() -> Vec<HadamardCandidate> {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let mut angle = || Phase::angle(rng.random_range(0.0..std::f64::consts::TAU));
    let mut v: Vec<HadamardCandidate> = (1..=10).map(fourier).collect();
    for dims in [&[2, 2][..], &[2, 2, 2], &[3, 3], &[2, 3], &[2, 5], &[2, 4]] {
        v.push(fourier_tensor(dims));
    }
    v.extend([f4q(angle()), f6_col(angle(), angle()), f6_row(angle(), angle()), haagerup(angle()), petrescu(angle())]);
    v.extend([tao(), haagerup(Phase::ONE), petrescu(Phase::ONE), bjorck_froberg()]);
    v
}

fn c14_one_norm() -> Outcome {
    let cat = catalog();
    for h in &cat {
        let n = h.n() as f64;
        let v = h.scaled_one_norm();
        ensure((v - n * n.sqrt()).abs() <= 1e-10, || format!("{}: {v}", h.label()))?;
    }
    let ks: Vec<u32> = (1..=8).collect();
    let mut margin = f64::INFINITY;
    for n in 1..=6usize {
        let est = i_g_estimate_many(MatrixGroup::Orthogonal, n, &ks, 4000, 14).map_err(|e| e.to_string())?;
        let bound = n as f64 * (n as f64).sqrt();
        for (k, e) in ks.iter().zip(&est) {
            ensure(e.value <= bound + 3.0 * e.stderr, || format!("n={n} k={k}: {} > {bound}", e.value))?;
            if n > 1 {
                margin = margin.min(bound - e.value);
            }
        }
    }
    Ok(format!("{} catalog matrices at n*sqrt(n); I_O for 2 <= n <= 6 below the bound by >= {margin:.3}", cat.len()))
}

fn main() {
    let criteria: [Criterion; 14] = [
        ("character moments", c1_character_moments),
        ("classical Weingarten oracle", c2_classical_weingarten),
        ("Gram determinants", c3_gram_determinants),
        ("truncated characters", c4_truncated_characters),
        ("Fourier law for c_k", c5_fourier_law),
        ("multiplicativity", c6_multiplicativity),
        ("oracle cross-agreement", c7_oracle_agreement),
        ("Butson table n,l <= 6", c8_table),
        ("classification consistency", c9_classification),
        ("Pauli model", c10_pauli_model),
        ("Klein-Fourier twist", c11_klein_fourier),
        ("free hypergeometric moments", c12_free_hypergeometric),
        ("free Bessel moments", c13_free_bessel),
        ("1-norm characterization", c14_one_norm),
    ];
    let mut failed = 0;
    for (idx, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name} ({detail}) [{secs:.1}s]", idx + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({detail}) [{secs:.1}s]", idx + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
