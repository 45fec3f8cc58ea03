//! Invariant suites. Each suite returns one [`CaseReport`] per case, in a
//! fixed order, so reports can be emitted as stable JSON lines.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hopf::{coproduct_pch, coproduct_pch_split, star_pch, Basis, Rational, ScfElement, TensorScfElement};
use crate::lattice::{self, join, leq, meet, mobius, LatticeOrder};
use crate::oracle::{self, FunctionKind, SubgroupShape, UtGroup};
use crate::pcbasis::{self, CoreResult};
use crate::perm::{all_permutations, factorial, Permutation};
use crate::shuffle::{deconcatenate, PositionSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Perm,
    Lattice,
    Hopf,
    Pch,
    Oracle,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Perm, Suite::Lattice, Suite::Hopf, Suite::Pch, Suite::Oracle];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Perm => "perm",
            Suite::Lattice => "lattice",
            Suite::Hopf => "hopf",
            Suite::Pch => "pch",
            Suite::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// The core fast path disagrees with the brute-force sum.
    Discrepancy,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Discrepancy => "discrepancy",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseReport {
    pub suite: Suite,
    pub case: String,
    pub status: Status,
    pub detail: String,
}

impl CaseReport {
    fn new(suite: Suite, case: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        CaseReport {
            suite,
            case: case.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            detail: detail.into(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }
}

impl fmt::Display for CaseReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {} {}: {}", self.status, self.suite, self.case, self.detail)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub max_degree: usize,
    /// Degree for the oracle suite.
    pub n: usize,
    pub q: u32,
    /// Random `(v, w)` pairs of total degree `max_degree + 1` for the
    /// permutation-character product.
    pub sample_pairs: usize,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            max_degree: 5,
            n: 3,
            q: 2,
            sample_pairs: 0,
            seed: 0x5eed,
        }
    }
}

/// Whether every case passed.
pub fn all_passed(reports: &[CaseReport]) -> bool {
    reports.iter().all(|r| r.status == Status::Pass)
}

pub fn run_suite(suite: Suite, config: &VerifyConfig) -> Result<Vec<CaseReport>> {
    match suite {
        Suite::Perm => Ok(perm_suite(config.max_degree)),
        Suite::Lattice => Ok(lattice_suite(config.max_degree)),
        Suite::Hopf => Ok(hopf_suite(config.max_degree)),
        Suite::Pch => Ok(pch_suite(config)),
        Suite::Oracle => oracle_suite(config.n, config.q),
    }
}

fn count_failures<T: Send + Sync, F>(items: Vec<T>, check: F) -> (usize, Vec<String>)
where
    F: Fn(&T) -> Option<String> + Sync + Send,
{
    let total = items.len();
    let failures: Vec<String> = items.par_iter().filter_map(check).collect();
    (total, failures)
}

fn summarize(suite: Suite, case: String, (total, failures): (usize, Vec<String>)) -> CaseReport {
    let detail = match failures.first() {
        None => format!("{total} checked"),
        Some(first) => format!("{} of {total} failed; first: {first}", failures.len()),
    };
    CaseReport::new(suite, case, failures.is_empty(), detail)
}

/// Basis elements of every degree up to `max`.
fn basis_up_to(max: usize) -> Vec<Permutation> {
    (0..=max).flat_map(all_permutations).collect()
}

pub fn perm_suite(max_degree: usize) -> Vec<CaseReport> {
    let s = Suite::Perm;
    let mut out = Vec::new();
    for n in 0..=max_degree {
        let perms = all_permutations(n);
        out.push(CaseReport::new(
            s,
            format!("count n={n}"),
            perms.len() == factorial(n),
            format!("{} permutations", perms.len()),
        ));
        out.push(summarize(
            s,
            format!("encodings n={n}"),
            count_failures(perms.clone(), |w| {
                let iota = w.inversion_table();
                let ok = Permutation::from_inversion_table(&iota) == *w
                    && Permutation::from_code(&w.code()) == *w
                    && Permutation::from_dual_inversion_table(&w.dual_inversion_table()) == *w
                    && w.code() == w.inverse().inversion_table()
                    && w.inverse().inverse() == *w;
                (!ok).then(|| w.to_string())
            }),
        ));
        out.push(summarize(
            s,
            format!("rothe n={n}"),
            count_failures(perms.clone(), |w| {
                let d = w.rothe_diagram();
                let ok = d.column_counts() == w.inversion_table().entries()
                    && d.row_counts() == w.code().entries();
                (!ok).then(|| w.to_string())
            }),
        ));
        out.push(summarize(
            s,
            format!("covering inversions n={n}"),
            count_failures(perms, |w| {
                let iota = w.inversion_table();
                let cinv = w.covering_inversions();
                let mut seconds: Vec<usize> = cinv.iter().map(|c| c.smaller).collect();
                seconds.dedup();
                if seconds.len() != cinv.len() {
                    return Some(format!("{w}: repeated second coordinate"));
                }
                for c in &cinv {
                    let x = w.remove_covering_inversions(&[*c]).ok()?;
                    let xi = x.inversion_table();
                    let diff: Vec<i64> = iota
                        .entries()
                        .iter()
                        .zip(xi.entries())
                        .map(|(a, b)| *a as i64 - *b as i64)
                        .collect();
                    let single = diff.iter().filter(|&&d| d != 0).count() == 1
                        && diff[c.smaller - 1] == 1;
                    if !single || !leq(&x, w).unwrap_or(false) {
                        return Some(format!("{w} removing {c}"));
                    }
                }
                None
            }),
        ));
    }
    out
}

fn mobius_recursive(x: &Permutation, y: &Permutation, below: &[Permutation]) -> i64 {
    // μ(x, y) = −Σ_{x ≤ z < y} μ(x, z), with `below` sorted by rank.
    let mut memo: Vec<(Permutation, i64)> = Vec::new();
    for z in below.iter().filter(|z| leq(x, z).unwrap_or(false) && leq(z, y).unwrap_or(false)) {
        let value = if z == x {
            1
        } else {
            -memo
                .iter()
                .filter(|(u, _)| leq(u, z).unwrap_or(false))
                .map(|(_, m)| m)
                .sum::<i64>()
        };
        memo.push((z.clone(), value));
    }
    memo.iter().find(|(z, _)| z == y).map_or(0, |(_, m)| *m)
}

pub fn lattice_suite(max_degree: usize) -> Vec<CaseReport> {
    let s = Suite::Lattice;
    let mut out = Vec::new();
    for n in 0..=max_degree {
        let mut perms = all_permutations(n);
        perms.sort_by_key(|w| w.inversion_table().total());
        let order = LatticeOrder::new(n);
        out.push(CaseReport::new(
            s,
            format!("bounds n={n}"),
            order.bottom().is_identity() && order.top() == Permutation::longest(n),
            "bottom is the identity, top the longest element",
        ));
        let pairs: Vec<(Permutation, Permutation)> = perms
            .iter()
            .flat_map(|x| perms.iter().map(move |y| (x.clone(), y.clone())))
            .collect();
        out.push(summarize(
            s,
            format!("meet and join n={n}"),
            count_failures(pairs.clone(), |(x, y)| {
                let m = meet(x, y).ok()?;
                let j = join(x, y).ok()?;
                let ok = leq(&m, x).ok()? && leq(&m, y).ok()? && leq(x, &j).ok()? && leq(y, &j).ok()?
                    && meet(x, &j).ok()? == *x
                    && join(x, &m).ok()? == *x
                    && (leq(x, y).ok()? == (m == *x));
                (!ok).then(|| format!("{x} {y}"))
            }),
        ));
        out.push(summarize(
            s,
            format!("mobius closed form n={n}"),
            count_failures(pairs, |(x, y)| {
                let closed = mobius(x, y).ok()?;
                let rec = mobius_recursive(x, y, &perms);
                (closed != rec).then(|| format!("mu({x},{y}) = {closed}, recursive {rec}"))
            }),
        ));
    }
    out
}

fn sch(w: &Permutation) -> ScfElement {
    ScfElement::basis_element(Basis::Sch, w.clone())
}

fn tensor_product_all(x: &TensorScfElement, y: &TensorScfElement) -> TensorScfElement {
    x.product(y).expect("same basis")
}

pub fn hopf_suite(max_degree: usize) -> Vec<CaseReport> {
    let s = Suite::Hopf;
    let mut out = Vec::new();
    let basis = basis_up_to(max_degree);

    for n in 0..=max_degree {
        let count = basis.iter().filter(|w| w.degree() == n).count();
        out.push(CaseReport::new(
            s,
            format!("graded dimension n={n}"),
            count == factorial(n),
            format!("{count} basis elements"),
        ));
    }

    let pairs: Vec<(Permutation, Permutation)> = basis
        .iter()
        .flat_map(|x| basis.iter().map(move |y| (x.clone(), y.clone())))
        .filter(|(x, y)| x.degree() + y.degree() <= max_degree)
        .collect();
    let triples: Vec<(Permutation, Permutation, Permutation)> = pairs
        .iter()
        .flat_map(|(x, y)| {
            basis
                .iter()
                .filter(move |z| x.degree() + y.degree() + z.degree() <= max_degree)
                .map(move |z| (x.clone(), y.clone(), z.clone()))
        })
        .collect();

    out.push(summarize(
        s,
        format!("associativity total<={max_degree}"),
        count_failures(triples, |(x, y, z)| {
            let (x, y, z) = (sch(x), sch(y), sch(z));
            let left = x.product(&y).ok()?.product(&z).ok()?;
            let right = x.product(&y.product(&z).ok()?).ok()?;
            (left != right).then(|| format!("({x})({y})({z})"))
        }),
    ));

    out.push(summarize(
        s,
        format!("product routes total<={max_degree}"),
        count_failures(pairs.clone(), |(x, y)| {
            let (a, b) = (sch(x), sch(y));
            let shuffled = a.product(&b).ok()?;
            let tied = a.product_via_bowtie(&b).ok()?;
            (shuffled != tied).then(|| format!("{x} * {y}"))
        }),
    ));

    out.push(summarize(
        s,
        format!("coassociativity n<={max_degree}"),
        count_failures(basis.clone(), |w| {
            let delta = sch(w).coproduct();
            let mut left = Vec::new();
            let mut right = Vec::new();
            for ((a, b), c) in delta.terms() {
                for ((a1, a2), d) in sch(a).coproduct().terms() {
                    left.push(((a1.clone(), a2.clone(), b.clone()), c * d));
                }
                for ((b1, b2), d) in sch(b).coproduct().terms() {
                    right.push(((a.clone(), b1.clone(), b2.clone()), c * d));
                }
            }
            left.sort();
            right.sort();
            (left != right).then(|| w.to_string())
        }),
    ));

    out.push(summarize(
        s,
        format!("bialgebra total<={max_degree}"),
        count_failures(pairs, |(x, y)| {
            let (a, b) = (sch(x), sch(y));
            let lhs = a.product(&b).ok()?.coproduct();
            let rhs = tensor_product_all(&a.coproduct(), &b.coproduct());
            (lhs != rhs).then(|| format!("{x} * {y}"))
        }),
    ));

    out.push(summarize(
        s,
        format!("antipode n<={max_degree}"),
        count_failures(basis.clone(), |w| {
            let x = sch(w);
            let lhs = x.coproduct().antipode_left_then_multiply().ok()?;
            let rhs = ScfElement::unit(Basis::Sch, x.counit());
            (lhs != rhs).then(|| w.to_string())
        }),
    ));

    out.push(summarize(
        s,
        format!("counit n<={max_degree}"),
        count_failures(basis, |w| {
            let x = sch(w);
            let mut left = ScfElement::zero(Basis::Sch);
            let mut right = ScfElement::zero(Basis::Sch);
            for ((a, b), c) in x.coproduct().terms() {
                if a.degree() == 0 {
                    left = left.add(&sch(b).scale(*c)).ok()?;
                }
                if b.degree() == 0 {
                    right = right.add(&sch(a).scale(*c)).ok()?;
                }
            }
            (left != x || right != x).then(|| w.to_string())
        }),
    ));
    out
}

fn pch(w: &Permutation) -> ScfElement {
    ScfElement::basis_element(Basis::Pch, w.clone())
}

/// `χ̄^v χ̄^w` through the supercharacter basis.
pub fn pch_product_by_basis_change(v: &Permutation, w: &Permutation) -> ScfElement {
    pch(v)
        .to_sch()
        .product(&pch(w).to_sch())
        .expect("same basis")
        .to_pch()
}

/// Compares the brute-force covering-inversion sum with the basis-change
/// route for one pair.
pub fn check_pch_product(v: &Permutation, w: &Permutation) -> Option<String> {
    let expected = pch_product_by_basis_change(v, w);
    let brute = pch(v).product(&pch(w)).expect("same basis");
    if brute != expected {
        return Some(format!("{v} * {w}: {brute} vs {expected}"));
    }
    let bad = expected
        .terms()
        .find(|(_, c)| !(c.is_zero() || c.abs() == Rational::one()));
    bad.map(|(z, c)| format!("{v} * {w}: coefficient {c} at {z}"))
}

/// Core fast path against the brute-force sum for every `z`.
pub fn check_core(v: &Permutation, w: &Permutation) -> Vec<String> {
    all_permutations(v.degree() + w.degree())
        .into_iter()
        .filter_map(|z| {
            let brute = pcbasis::coefficient_bruteforce(v, w, &z).expect("degrees agree");
            let core = pcbasis::core(v, w, &z).expect("degrees agree");
            (core.coefficient() != brute).then(|| {
                let kind = match core {
                    CoreResult::Zero => "zero",
                    CoreResult::Signed { .. } => "signed",
                };
                format!("{kind}: v={v} w={w} z={z} core={core} brute={brute}")
            })
        })
        .collect()
}

fn random_pairs(total: usize, count: usize, seed: u64) -> Vec<(Permutation, Permutation)> {
    let mut rng = StdRng::seed_from_u64(seed);
    let by_degree: Vec<Vec<Permutation>> = (0..=total).map(all_permutations).collect();
    let degrees: Vec<usize> = (1..total).collect();
    (0..count)
        .map(|_| {
            let m = *degrees.choose(&mut rng).expect("total >= 2");
            let v = by_degree[m].choose(&mut rng).expect("nonempty").clone();
            let w = by_degree[total - m].choose(&mut rng).expect("nonempty").clone();
            (v, w)
        })
        .collect()
}

/// The part of `Δ(χ̄^w)` carried by the value set `a`: the sum of
/// `χ^{x≤m} ⊗ χ^{x>m}` over `x ≥ w` whose values in `a` occupy the last
/// `|a|` positions, rewritten in the permutation-character basis.
pub fn split_by_terminal_values(w: &Permutation, a: &PositionSet) -> TensorScfElement {
    let n = w.degree();
    let m = n - a.len();
    let mut terms = Vec::new();
    for x in lattice::upper_set(w) {
        let mut at: Vec<usize> = a.positions().iter().map(|&v| x.inverse().at(v)).collect();
        at.sort_unstable();
        if at.into_iter().eq(m + 1..=n) {
            let (left, right) = deconcatenate(&x, m).expect("m <= n");
            terms.push(((left, right), Rational::one()));
        }
    }
    TensorScfElement::from_terms(Basis::Sch, terms).to_basis(Basis::Pch)
}

pub fn pch_suite(config: &VerifyConfig) -> Vec<CaseReport> {
    let s = Suite::Pch;
    let max = config.max_degree;
    let mut out = Vec::new();
    let basis = basis_up_to(max);

    out.push(summarize(
        s,
        format!("coproduct n<={max}"),
        count_failures(basis.clone(), |w| {
            let closed = coproduct_pch(w);
            let route = pch(w).to_sch().coproduct().to_basis(Basis::Pch);
            (closed != route).then(|| format!("{w}: {closed} vs {route}"))
        }),
    ));

    out.push(summarize(
        s,
        format!("coproduct splittings n<={max}"),
        count_failures(basis.clone(), |w| {
            PositionSet::all(w.degree()).into_iter().find_map(|a| {
                let closed = coproduct_pch_split(w, &a).ok()?;
                let route = split_by_terminal_values(w, &a);
                let expected = match &closed {
                    Some((x, y)) => TensorScfElement::from_terms(
                        Basis::Pch,
                        [((x.clone(), y.clone()), Rational::one())],
                    ),
                    None => TensorScfElement::zero(Basis::Pch),
                };
                (route != expected).then(|| format!("{w} A={:?}: {route} vs {expected}", a.positions()))
            })
        }),
    ));

    out.push(summarize(
        s,
        format!("star n<={max}"),
        count_failures(basis.clone(), |w| {
            let closed = star_pch(w);
            let route = pch(w).to_sch().star().to_pch();
            if closed != route {
                return Some(format!("{w}: {closed} vs {route}"));
            }
            let expanded = closed.to_sch();
            let bad = expanded.terms().find(|(_, c)| **c <= Rational::zero());
            bad.map(|(x, c)| format!("{w}: supercharacter coefficient {c} at {x}"))
        }),
    ));

    let pairs: Vec<(Permutation, Permutation)> = basis
        .iter()
        .flat_map(|x| basis.iter().map(move |y| (x.clone(), y.clone())))
        .filter(|(x, y)| x.degree() + y.degree() <= max)
        .collect();
    out.push(summarize(
        s,
        format!("product total<={max}"),
        count_failures(pairs.clone(), |(v, w)| check_pch_product(v, w)),
    ));

    let sample = random_pairs(max + 1, config.sample_pairs, config.seed);
    if !sample.is_empty() {
        out.push(summarize(
            s,
            format!("product sample total={} pairs={} seed={}", max + 1, sample.len(), config.seed),
            count_failures(sample, |(v, w)| check_pch_product(v, w)),
        ));
    }

    let discrepancies: Vec<String> = pairs.par_iter().flat_map(|(v, w)| check_core(v, w)).collect();
    out.push(CaseReport::new(
        s,
        format!("core total<={max}"),
        true,
        format!("{} pairs checked", pairs.len()),
    ));
    for d in discrepancies {
        out.push(CaseReport {
            suite: s,
            case: "core discrepancy".to_string(),
            status: Status::Discrepancy,
            detail: d,
        });
    }
    out
}

pub fn oracle_suite(max_n: usize, q: u32) -> Result<Vec<CaseReport>> {
    let s = Suite::Oracle;
    let mut out = Vec::new();
    for n in 0..=max_n {
        let g = UtGroup::new(n, q)?;
        let case = |what: &str| format!("{what} n={n} q={q}");
        let perms = all_permutations(n);
        let sizes = g.superclass_sizes();

        let chis: Vec<_> = perms
            .iter()
            .map(|w| oracle::basis_function(&g, FunctionKind::Chi, w))
            .collect::<Result<_>>()?;
        let mut failures = Vec::new();
        for (w, f) in perms.iter().zip(&chis) {
            for (v, h) in perms.iter().zip(&chis) {
                let expected = if w == v { f.degree_value() } else { Rational::zero() };
                if oracle::inner_product(f, h)? != expected {
                    failures.push(format!("<chi^{w}, chi^{v}>"));
                }
            }
        }
        out.push(summarize(s, case("orthogonality"), (perms.len() * perms.len(), failures)));

        let mut failures = Vec::new();
        for w in &perms {
            let db = oracle::basis_function(&g, FunctionKind::DeltaBar, w)?;
            let cb = oracle::basis_function(&g, FunctionKind::ChiBar, w)?;
            let ratio = Rational::new(g.pattern_order(w) as i64, g.order() as i64);
            if db != cb.scale(ratio) {
                failures.push(format!("deltabar {w}"));
            }
            if g.superclass_size_by_inclusion_exclusion(w) != sizes[w] as i64 {
                failures.push(format!("superclass size {w}"));
            }
        }
        out.push(summarize(s, case("deltabar and superclass sizes"), (perms.len(), failures)));

        for kind in FunctionKind::ALL {
            let rank = oracle::family_rank(&g, kind)?;
            out.push(CaseReport::new(
                s,
                case(&format!("{kind} basis")),
                rank == factorial(n),
                format!("rank {rank}"),
            ));
        }

        let mut up = oracle::CheckReport::default();
        let mut down = oracle::CheckReport::default();
        let mut adj = oracle::CheckReport::default();
        let mut predicted = Vec::new();
        for a in PositionSet::all(n) {
            let shape = SubgroupShape::new(a);
            let report = oracle::check_going_up(&shape, q)?;
            let k = factorial(shape.right_degree());
            let expected: usize = all_permutations(shape.left_degree())
                .iter()
                .map(|w| {
                    k * usize::from(!oracle::right_block_is_regular(&shape, w))
                        + k * usize::from(!oracle::right_block_is_regular(&shape, &w.inverse()))
                })
                .sum();
            if report.failures.len() != expected {
                predicted.push(format!(
                    "A={:?}: {} failures, {expected} predicted",
                    shape.positions().positions(),
                    report.failures.len()
                ));
            }
            up.merge(report);
            down.merge(oracle::check_going_down(&shape, q)?);
            adj.merge(oracle::adjointness_check(&shape, q)?);
        }
        for (what, report) in [("exflation", up), ("delapsing", down), ("adjointness", adj)] {
            out.push(summarize(s, case(what), (report.checked, report.failures)));
        }
        out.push(summarize(
            s,
            case("exflation failures match full rows over the right block"),
            (1 << n, predicted),
        ));
    }
    Ok(out)
}
