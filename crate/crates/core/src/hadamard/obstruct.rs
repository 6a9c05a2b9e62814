//! Non-existence criteria for Butson classes H_n(l), and the reproduction of
//! the classification grid for n ≤ 10, l ≤ 14.

use super::{butson_enumerate, fourier_tensor, haagerup, level, petrescu, tao, verify, EnumerationMode, HadamardCandidate, HadamardError, Level, Phase};
use crate::scalars::norm::{factorize, is_prime};
use crate::scalars::{hermitian_norm_solvable, NormVerdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    LamLeung,
    DeLauney,
    Sylvester,
    SylvesterGen1,
    SylvesterGen2,
    Haagerup5,
}

impl Rule {
    pub const ALL: [Rule; 6] =
        [Rule::LamLeung, Rule::DeLauney, Rule::Sylvester, Rule::SylvesterGen1, Rule::SylvesterGen2, Rule::Haagerup5];

    pub fn name(&self) -> &'static str {
        match self {
            Rule::LamLeung => "LamLeung",
            Rule::DeLauney => "DeLauney",
            Rule::Sylvester => "Sylvester",
            Rule::SylvesterGen1 => "SylvesterGen1",
            Rule::SylvesterGen2 => "SylvesterGen2",
            Rule::Haagerup5 => "Haagerup5",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RuleOutcome {
    /// The rule proves H_n(l) = ∅.
    Obstructed,
    /// The rule applies and its necessary condition holds.
    Satisfied,
    /// The rule applies but cannot be decided here.
    Inconclusive,
    NotApplicable,
}

#[derive(Clone, Debug)]
pub struct RuleCheck {
    pub rule: Rule,
    pub outcome: RuleOutcome,
    pub detail: String,
}

fn check(rule: Rule, outcome: RuleOutcome, detail: impl Into<String>) -> RuleCheck {
    RuleCheck { rule, outcome, detail: detail.into() }
}

fn distinct_primes(l: u64) -> Vec<u64> {
    factorize(l).into_iter().map(|(p, _)| p).collect()
}

fn lam_leung(n: u64, l: u64) -> RuleCheck {
    let primes = distinct_primes(l);
    let mut reach = vec![false; n as usize + 1];
    reach[0] = true;
    for x in 1..=n as usize {
        reach[x] = primes.iter().any(|&p| x >= p as usize && reach[x - p as usize]);
    }
    let ps: Vec<String> = primes.iter().map(|p| format!("{p}N")).collect();
    if reach[n as usize] {
        check(Rule::LamLeung, RuleOutcome::Satisfied, format!("{n} lies in {}", ps.join("+")))
    } else {
        check(Rule::LamLeung, RuleOutcome::Obstructed, format!("{n} is not in {}", ps.join("+")))
    }
}

fn de_launey(n: u64, l: u64) -> RuleCheck {
    let Some(m) = n.checked_pow(n as u32) else {
        return check(Rule::DeLauney, RuleOutcome::Inconclusive, "n^n exceeds 64 bits");
    };
    match hermitian_norm_solvable(l, m) {
        NormVerdict::Solvable => check(Rule::DeLauney, RuleOutcome::Satisfied, format!("{m} is a norm from Z[zeta_{l}]")),
        NormVerdict::Unsolvable => {
            check(Rule::DeLauney, RuleOutcome::Obstructed, format!("{m} is not a norm from Z[zeta_{l}]"))
        }
        NormVerdict::Inconclusive => {
            check(Rule::DeLauney, RuleOutcome::Inconclusive, format!("norm equation over Z[zeta_{l}] not decided"))
        }
    }
}

fn sylvester(n: u64, l: u64) -> RuleCheck {
    if l != 2 {
        return check(Rule::Sylvester, RuleOutcome::NotApplicable, "level is not 2");
    }
    if n >= 3 && !n.is_multiple_of(4) {
        check(Rule::Sylvester, RuleOutcome::Obstructed, format!("{n} != 2 and 4 does not divide {n}"))
    } else {
        check(Rule::Sylvester, RuleOutcome::Satisfied, "n = 2 or 4 | n")
    }
}

/// l = c·p^b with b ≥ 1 and cofactor c, for the given prime p.
fn split_prime_power(l: u64, p: u64) -> (u64, u32) {
    let (mut c, mut b) = (l, 0);
    while c % p == 0 {
        c /= p;
        b += 1;
    }
    (c, b)
}

fn sylvester_gen1(n: u64, l: u64) -> RuleCheck {
    if n < 5 || !is_prime(n - 2) {
        return check(Rule::SylvesterGen1, RuleOutcome::NotApplicable, "n is not p + 2 with p >= 3 prime");
    }
    let p = n - 2;
    let (c, b) = split_prime_power(l, p);
    if c == 2 && b >= 1 {
        check(Rule::SylvesterGen1, RuleOutcome::Obstructed, format!("n = {p} + 2 and l = 2*{p}^{b}"))
    } else {
        check(Rule::SylvesterGen1, RuleOutcome::Satisfied, format!("l is not of the form 2*{p}^b"))
    }
}

fn sylvester_gen2(n: u64, l: u64) -> RuleCheck {
    if !n.is_multiple_of(2) || n < 6 || !is_prime(n / 2) {
        return check(Rule::SylvesterGen2, RuleOutcome::NotApplicable, "n is not 2q with q >= 3 prime");
    }
    let q = n / 2;
    for p in distinct_primes(l).into_iter().filter(|&p| p > q) {
        let (c, b) = split_prime_power(l, p);
        if b >= 1 && c.is_power_of_two() {
            return check(
                Rule::SylvesterGen2,
                RuleOutcome::Obstructed,
                format!("n = 2*{q} and l = 2^{}*{p}^{b} with {p} > {q}", c.trailing_zeros()),
            );
        }
    }
    check(Rule::SylvesterGen2, RuleOutcome::Satisfied, format!("l is not 2^a*p^b with a prime p > {q}"))
}

fn haagerup5(n: u64, l: u64) -> RuleCheck {
    if n != 5 {
        return check(Rule::Haagerup5, RuleOutcome::NotApplicable, "n is not 5");
    }
    if l.is_multiple_of(5) {
        check(Rule::Haagerup5, RuleOutcome::Satisfied, "5 divides l")
    } else {
        check(Rule::Haagerup5, RuleOutcome::Obstructed, "5 does not divide l")
    }
}

/// Every rule evaluated, in the fixed order of [`Rule::ALL`].
pub fn obstructions(n: u64, l: u64) -> Vec<RuleCheck> {
    assert!(n >= 1 && l >= 2, "need n >= 1 and l >= 2");
    if n == 1 {
        return Rule::ALL.iter().map(|&r| check(r, RuleOutcome::NotApplicable, "H_1(l) contains [1]")).collect();
    }
    vec![lam_leung(n, l), de_launey(n, l), sylvester(n, l), sylvester_gen1(n, l), sylvester_gen2(n, l), haagerup5(n, l)]
}

#[derive(Clone, Debug)]
pub enum Verdict {
    Exists(Box<HadamardCandidate>),
    Obstructed(Rule),
    Unknown,
}

#[derive(Clone, Debug)]
pub struct TableCell {
    pub n: u64,
    pub l: u64,
    pub verdict: Verdict,
    /// Short name of the witness, e.g. "F22" or "T".
    pub witness_name: Option<String>,
    pub fired: Vec<Rule>,
}

fn multiplicative_partitions(n: usize, min: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for d in min..=n {
        if !n.is_multiple_of(d) {
            continue;
        }
        if d == n {
            out.push(vec![n]);
        } else {
            for mut rest in multiplicative_partitions(n / d, d) {
                rest.insert(0, d);
                out.push(rest);
            }
        }
    }
    out
}

/// Catalog matrices of order n with their short names, Fourier first.
pub fn catalog_of_order(n: usize) -> Vec<(String, HadamardCandidate)> {
    let mut out = vec![(format!("F{n}"), fourier_tensor(&[n]))];
    for dims in multiplicative_partitions(n, 2) {
        if dims.len() > 1 {
            let name = format!("F{}", dims.iter().map(|d| d.to_string()).collect::<String>());
            out.push((name, fourier_tensor(&dims)));
        }
    }
    match n {
        6 => {
            out.push(("T".into(), tao()));
            out.push(("H1".into(), haagerup(Phase::ONE)));
        }
        7 => out.push(("P1".into(), petrescu(Phase::ONE))),
        _ => {}
    }
    out
}

fn catalog_witness(n: usize, l: u64) -> Option<(String, HadamardCandidate)> {
    catalog_of_order(n)
        .into_iter()
        .filter_map(|(name, h)| match level(&h) {
            Level::Finite(v) if l.is_multiple_of(v) && verify(&h) => Some((v, name, h)),
            _ => None,
        })
        .min_by_key(|(v, _, _)| *v)
        .map(|(_, name, h)| (name, h))
}

const ENUM_FALLBACK_BUDGET: u64 = 5_000_000;

pub fn table_cell(n: u64, l: u64) -> TableCell {
    let checks = obstructions(n, l);
    let fired: Vec<Rule> = checks.iter().filter(|c| c.outcome == RuleOutcome::Obstructed).map(|c| c.rule).collect();
    if let Some((name, h)) = catalog_witness(n as usize, l) {
        return TableCell { n, l, verdict: Verdict::Exists(Box::new(h)), witness_name: Some(name), fired };
    }
    if let Some(&r) = fired.first() {
        return TableCell { n, l, verdict: Verdict::Obstructed(r), witness_name: None, fired };
    }
    if n <= 6 && l <= 6 {
        if let Ok((w, _)) = butson_enumerate(n as usize, l as usize, EnumerationMode::AnyWitness, ENUM_FALLBACK_BUDGET) {
            if let Some(h) = w.into_iter().next() {
                return TableCell { n, l, verdict: Verdict::Exists(Box::new(h)), witness_name: Some("enum".into()), fired };
            }
        }
    }
    TableCell { n, l, verdict: Verdict::Unknown, witness_name: None, fired }
}

/// Cells for 2 ≤ n ≤ n_max, 2 ≤ l ≤ l_max, row by row.
pub fn obstruction_table(n_max: u64, l_max: u64) -> Result<Vec<TableCell>, HadamardError> {
    if n_max > 10 || l_max > 14 {
        return Err(HadamardError::InvalidParameter(format!(
            "table is limited to n <= 10 and l <= 14, got {n_max} and {l_max}"
        )));
    }
    Ok((2..=n_max).flat_map(|n| (2..=l_max).map(move |l| (n, l))).map(|(n, l)| table_cell(n, l)).collect())
}

/// Symbols of the published classification grid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TableSymbol {
    Witness(&'static str),
    /// Plain obstruction mark.
    Obstructed,
    /// de Launey.
    ObstructedL,
    /// Sylvester-type.
    ObstructedS,
    /// Haagerup.
    ObstructedH,
    /// Computer-found matrix that is not reproduced here.
    Computer(&'static str),
}

// Rows n = 2..10, columns l = 2..14.
const GRID: [[&str; 13]; 9] = [
    ["F2", "o", "F2", "o", "F2", "o", "F2", "o", "F2", "o", "F2", "o", "F2"],
    ["o", "F3", "o", "o", "F3", "o", "o", "F3", "o", "o", "F3", "o", "o"],
    ["F22", "o", "F22", "o", "F22", "o", "F22", "o", "F22", "o", "F22", "o", "F22"],
    ["o", "o", "o", "F5", "ol", "o", "o", "o", "F5", "o", "oh", "o", "o"],
    ["os", "T", "H1", "o", "T", "o", "H1", "T", "os", "o", "T", "o", "os"],
    ["o", "o", "o", "o", "P1", "F7", "o", "o", "os", "o", "P1", "o", "F7"],
    ["F222", "o", "F222", "o", "F222", "o", "F222", "o", "F222", "o", "F222", "o", "F222"],
    ["o", "F33", "o", "o", "F33", "o", "o", "F33", "W", "o", "F33", "o", "os"],
    ["os", "o", "X", "Y", "Z", "o", "X", "o", "F10", "o", "X", "o", "o"],
];

/// The published cell at (n, l), for 2 ≤ n ≤ 10 and 2 ≤ l ≤ 14.
pub fn reference_cell(n: u64, l: u64) -> Option<TableSymbol> {
    if !(2..=10).contains(&n) || !(2..=14).contains(&l) {
        return None;
    }
    let s = GRID[(n - 2) as usize][(l - 2) as usize];
    Some(match s {
        "o" => TableSymbol::Obstructed,
        "ol" => TableSymbol::ObstructedL,
        "os" => TableSymbol::ObstructedS,
        "oh" => TableSymbol::ObstructedH,
        "W" | "X" | "Y" | "Z" => TableSymbol::Computer(s),
        w => TableSymbol::Witness(w),
    })
}

impl TableCell {
    /// Whether the computed cell agrees with the published one wherever both
    /// are decisive. Subscripted marks require a rule of that kind to fire.
    pub fn agrees_with_reference(&self) -> Option<bool> {
        let reference = reference_cell(self.n, self.l)?;
        Some(match (&reference, &self.verdict) {
            (TableSymbol::Computer(_), Verdict::Obstructed(_)) => false,
            (TableSymbol::Computer(_), _) => true,
            (_, Verdict::Unknown) => true,
            (TableSymbol::Witness(w), Verdict::Exists(_)) => self.witness_name.as_deref() == Some(*w),
            (TableSymbol::Witness(_), Verdict::Obstructed(_)) => false,
            (_, Verdict::Exists(_)) => false,
            (TableSymbol::Obstructed, Verdict::Obstructed(_)) => true,
            (TableSymbol::ObstructedL, Verdict::Obstructed(_)) => self.fired.contains(&Rule::DeLauney),
            (TableSymbol::ObstructedS, Verdict::Obstructed(_)) => self
                .fired
                .iter()
                .any(|r| matches!(r, Rule::Sylvester | Rule::SylvesterGen1 | Rule::SylvesterGen2)),
            (TableSymbol::ObstructedH, Verdict::Obstructed(_)) => self.fired.contains(&Rule::Haagerup5),
        })
    }

    pub fn symbol(&self) -> String {
        match &self.verdict {
            Verdict::Exists(_) => self.witness_name.clone().unwrap_or_default(),
            Verdict::Obstructed(r) => format!("obstructed:{}", r.name()),
            Verdict::Unknown => "unknown".into(),
        }
    }
}
