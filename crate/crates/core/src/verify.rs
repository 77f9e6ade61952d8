//! Property suites over seeded random and exhaustive samples.
//!
//! Every suite evaluates independent cases through [`Exec`], so the same
//! seed gives the same report in sequential and parallel mode.

use std::fmt;
use std::time::{Duration, Instant};

use rand::Rng;

use crate::cube::{CubeSet, Point};
use crate::exec::Exec;
use crate::factor::{factorize, ForcingExpr};
use crate::gen;
use crate::layered::{fusion_stage, LayeredSet};
use crate::natset::NatSet;
use crate::ordinal::Ordinal;
use crate::poset::{all_preorders, iso_with_cap, FinPoset};

pub const DEFAULT_SEED: u64 = 0x5eed_0d1c;

/// Isomorphism cap used when comparing quotients of products.
const SUITE_ISO_CAP: usize = 64;

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub name: &'static str,
    pub cases: u64,
    pub failures: Vec<String>,
    pub elapsed: Duration,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} ({} cases, {:.2}s)",
            if self.passed() { "PASS" } else { "FAIL" },
            self.name,
            self.cases,
            self.elapsed.as_secs_f64()
        )?;
        for msg in self.failures.iter().take(5) {
            write!(f, "\n    {msg}")?;
        }
        if self.failures.len() > 5 {
            write!(f, "\n    ... {} more", self.failures.len() - 5)?;
        }
        Ok(())
    }
}

type SuiteFn = fn(Exec, u64) -> (u64, Vec<String>);

/// Suite names in run order.
pub const SUITES: &[(&str, SuiteFn)] = &[
    ("oracle-agreement", oracle_agreement),
    ("indivisibility", indivisibility),
    ("lex-model", lex_model),
    ("cofinal-sum", cofinal_sum),
    ("layer-lemmas", layer_lemmas),
    ("fusion", fusion_claims),
    ("sq-product", sq_product),
    ("factorizer", factorizer),
    ("enumeration", enumeration),
    ("separativity-witness", separativity_witness),
    ("ordinal-laws", ordinal_laws),
    ("boolean-laws", boolean_laws),
];

pub fn suite_names() -> impl Iterator<Item = &'static str> {
    SUITES.iter().map(|(n, _)| *n)
}

pub fn run_suite(name: &str, exec: Exec, seed: u64) -> Option<SuiteReport> {
    let (name, f) = SUITES.iter().find(|(n, _)| *n == name)?;
    let start = Instant::now();
    let (cases, failures) = f(exec, seed);
    Some(SuiteReport {
        name,
        cases,
        failures,
        elapsed: start.elapsed(),
    })
}

pub fn run_all(exec: Exec, seed: u64) -> Vec<SuiteReport> {
    suite_names()
        .map(|n| run_suite(n, exec, seed).expect("registered suite"))
        .collect()
}

/// Runs `cases` checks, each returning its failure message if any.
fn check<F>(exec: Exec, cases: u64, f: F) -> (u64, Vec<String>)
where
    F: Fn(u64) -> Option<String> + Sync + Send,
{
    let failures = exec.map(cases, f).into_iter().flatten().collect();
    (cases, failures)
}

fn omega_pow(n: usize) -> Ordinal {
    Ordinal::omega_pow(Ordinal::nat(n as u64))
}

const CUBE_DIMS: [usize; 3] = [1, 2, 3];
const CUBES_PER_DIM: u64 = 1000;

fn sampled_cube(seed: u64, i: u64) -> CubeSet {
    let dim = CUBE_DIMS[(i / CUBES_PER_DIM) as usize];
    gen::cube_set(&mut gen::case_rng(seed, i), dim)
}

/// `A ∉ Fin^n` iff `type(A) = ω^n`, by the column recursion on one side and
/// the order-type computation on the other.
pub fn oracle_agreement(exec: Exec, seed: u64) -> (u64, Vec<String>) {
    check(exec, CUBES_PER_DIM * CUBE_DIMS.len() as u64, |i| {
        let a = sampled_cube(seed, i);
        let t = a.order_type();
        let top = omega_pow(a.dim());
        if t > top {
            return Some(format!("case {i}: type {t} exceeds {top} for {a}"));
        }
        (a.is_fubini_positive() != (t == top)).then(|| {
            format!(
                "case {i}: fubini {} but type {t} for {a}",
                a.is_fubini_positive()
            )
        })
    })
}

/// `type(A) = ω^n` or `type(ω^n ∖ A) = ω^n`.
pub fn indivisibility(exec: Exec, seed: u64) -> (u64, Vec<String>) {
    check(exec, CUBES_PER_DIM * CUBE_DIMS.len() as u64, |i| {
        let a = sampled_cube(seed, i);
        let top = omega_pow(a.dim());
        let (t, tc) = (a.order_type(), a.complement().order_type());
        (t != top && tc != top).then(|| format!("case {i}: types {t} and {tc} for {a}"))
    })
}

/// Sum and product of all `α, β ∈ {ω·a + b : a, b ≤ 3}` against the order
/// types of explicit lex constructions: `{0}×α ∪ {1}×β` for `α + β` and
/// `β × α` for `α·β`.
pub fn lex_model(exec: Exec, _seed: u64) -> (u64, Vec<String>) {
    let small: Vec<Ordinal> = (0..=3u64)
        .flat_map(|a| (0..=3u64).map(move |b| (a, b)))
        .map(|(a, b)| &Ordinal::monomial(Ordinal::one(), a) + &Ordinal::nat(b))
        .collect();
    let pairs: Vec<(Ordinal, Ordinal)> = small
        .iter()
        .flat_map(|a| small.iter().map(move |b| (a.clone(), b.clone())))
        .collect();
    let failures: Vec<String> = exec
        .map_slice(&pairs, |(a, b)| {
            let sa = CubeSet::initial_segment(2, a).expect("below w^2");
            let sb = CubeSet::initial_segment(2, b).expect("below w^2");
            let mut errs = Vec::new();
            let sum = CubeSet::stack(2, vec![sa.clone(), sb.clone()]).expect("dim 2 columns");
            if sum.order_type() != a + b {
                errs.push(format!(
                    "{a} + {b}: lex model {} vs {}",
                    sum.order_type(),
                    a + b
                ));
            }
            let prod = sb.lex_product(&sa);
            if prod.order_type() != a * b {
                errs.push(format!(
                    "{a} * {b}: lex model {} vs {}",
                    prod.order_type(),
                    a * b
                ));
            }
            errs
        })
        .into_iter()
        .flatten()
        .collect();
    (pairs.len() as u64 * 2, failures)
}

/// For strictly increasing `δ₀ < ⋯ < δₘ`, `ω^δ₀ + ⋯ + ω^δₘ = ω^δₘ`.
pub fn cofinal_sum(exec: Exec, seed: u64) -> (u64, Vec<String>) {
    check(exec, 200, |i| {
        let mut rng = gen::case_rng(seed, i);
        let len = rng.random_range(1..=6);
        let mut exps: Vec<Ordinal> = Vec::new();
        while exps.len() < len {
            let e = gen::ordinal(&mut rng, 2, 3, 4);
            if !exps.contains(&e) {
                exps.push(e);
            }
        }
        exps.sort();
        let folded = exps.iter().fold(Ordinal::zero(), |acc, e| {
            &acc + &Ordinal::omega_pow(e.clone())
        });
        let last = Ordinal::omega_pow(exps.last().expect("nonempty").clone());
        (folded != last).then(|| format!("case {i}: exponents {exps:?} fold to {folded}"))
    })
}

const M_MAX: usize = 8;

/// Monotonicity, support and union laws of the S-sets, the ideal criterion,
/// ideal inclusion, and `type(A) = ω^ω` iff `A ∉ I`.
pub fn layer_lemmas(exec: Exec, seed: u64) -> (u64, Vec<String>) {
    check(exec, 500, |i| {
        let mut rng = gen::case_rng(seed, i);
        let a = gen::layered_set(&mut rng);
        let b = gen::layered_set(&mut rng);
        let c = gen::layered_set(&mut rng);
        let sub = b.intersection(&c);
        let union = a.union(&b);
        let sa: Vec<NatSet> = (0..=M_MAX + 1).map(|m| a.s_set(m)).collect();
        let supp = a.support();
        let fail = |msg: String| Some(format!("case {i}: {msg} for A = {}", json(&a)));
        for m in 0..=M_MAX {
            if !sa[m].is_subset(&supp.intersection(&NatSet::at_least(m as u64))) {
                return fail(format!("S^{m} not inside supp minus {m}"));
            }
            if !sa[m + 1].is_subset(&sa[m]) {
                return fail(format!("S^{} not inside S^{m}", m + 1));
            }
            if !sub.s_set(m).is_subset(&b.s_set(m)) {
                return fail(format!("S^{m} not monotone under inclusion"));
            }
            if union.s_set(m) != sa[m].union(&b.s_set(m)) {
                return fail(format!("S^{m} of a union is not the union"));
            }
        }
        let in_ideal = a.in_ideal();
        let some_empty = sa[..=M_MAX].iter().any(NatSet::is_empty);
        let all_infinite = sa[..=M_MAX].iter().all(NatSet::is_infinite);
        if in_ideal != some_empty || !in_ideal != all_infinite {
            return fail(format!(
                "in_ideal {in_ideal}, some S^m empty {some_empty}, all infinite {all_infinite}"
            ));
        }
        let bound = a.ideal_search_bound();
        if in_ideal && (bound..bound + M_MAX).any(|m| !a.s_set(m).is_empty()) {
            return fail("S^m nonempty past the search bound".into());
        }
        if !supp.is_infinite() && !in_ideal {
            return fail("finite support but positive".into());
        }
        let diff_null = (0..=M_MAX).any(|m| a.difference(&b).s_set(m).is_empty());
        if a.subset_mod_ideal(&b) != diff_null {
            return fail("ideal inclusion disagrees with S^m of the difference".into());
        }
        let is_top = a.order_type() == Ordinal::omega_pow(Ordinal::omega());
        if is_top == in_ideal {
            return fail(format!("type {} but in_ideal {in_ideal}", a.order_type()));
        }
        None
    })
}

fn json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string(v).unwrap_or_default()
}

/// A ⊆_I-decreasing chain `A₀, A₁, …` whose members all contain the layers
/// of `S` minus a finite set, so that `S ⊆* S^m_{Aₙ}` for all `m, n`.
fn fusion_input<R: Rng>(rng: &mut R, len: usize) -> (Vec<LayeredSet>, NatSet) {
    let s = gen::infinite_nat_set(rng);
    let thin = |rng: &mut R| {
        let holes = NatSet::finite((0..rng.random_range(0..3)).map(|_| rng.random_range(0..8)));
        LayeredSet::layers(&s.difference(&holes))
    };
    let junk = |rng: &mut R| {
        let x = gen::layered_set(rng);
        x.restrict(&NatSet::finite(0..4))
    };
    let mut chain = vec![gen::layered_set(rng).union(&thin(rng))];
    while chain.len() < len {
        let prev = chain.last().expect("nonempty");
        let cut = gen::layered_set(rng).union(&thin(rng));
        let mut next = prev.intersection(&cut);
        if rng.random_bool(0.5) {
            next = next.union(&junk(rng));
        }
        chain.push(next);
    }
    (chain, s)
}

/// Each fusion stage `B_r` is positive and `B_(r+1) ⊆_I B_r`.
pub fn fusion_claims(exec: Exec, seed: u64) -> (u64, Vec<String>) {
    check(exec, 100, |i| {
        let mut rng = gen::case_rng(seed, i);
        let r = rng.random_range(0..=3);
        let (chain, s) = fusion_input(&mut rng, r + 2);
        let fail = |msg: String| Some(format!("case {i} (r = {r}): {msg}"));
        for (n, a) in chain.iter().enumerate() {
            match a.is_reduction(&s, r + 1) {
                Ok(true) => {}
                other => {
                    return fail(format!(
                        "generated A_{n} violates the precondition: {other:?}"
                    ))
                }
            }
        }
        let stage = match fusion_stage(&chain[..=r], &s) {
            Ok(st) => st,
            Err(e) => return fail(format!("stage r: {e}")),
        };
        let next = match fusion_stage(&chain[..=r + 1], &s) {
            Ok(st) => st,
            Err(e) => return fail(format!("stage r+1: {e}")),
        };
        if stage.b_r.in_ideal() || next.b_r.in_ideal() {
            return fail("fusion output lies in I".into());
        }
        if !next.s_r.is_subset(&stage.s_r) {
            return fail("S_(r+1) not inside S_r".into());
        }
        if !next.b_r.subset_mod_ideal(&stage.b_r) {
            return fail(format!(
                "B_(r+1) not below B_r mod I: {} vs {}",
                json(&next.b_r),
                json(&stage.b_r)
            ));
        }
        None
    })
}

fn posets_iso(p: &FinPoset, q: &FinPoset) -> bool {
    matches!(
        iso_with_cap(p, q, SUITE_ISO_CAP, Exec::Sequential),
        Ok(Some(_))
    )
}

fn relabel<R: Rng>(rng: &mut R, p: &FinPoset) -> FinPoset {
    let n = p.size();
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.random_range(0..=i));
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| p.le(a, b))
        .map(|(a, b)| (perm[a], perm[b]))
        .collect();
    FinPoset::closure(n, pairs)
}

fn sq_laws(p: &FinPoset, q: &FinPoset) -> Option<String> {
    let (sp, sq) = (p.sep_quot(), q.sep_quot());
    if !posets_iso(&p.product(q).sep_quot(), &sp.product(&sq)) {
        return Some("sq(P x Q) is not isomorphic to sq(P) x sq(Q)".into());
    }
    for (x, sx) in [(p, &sp), (q, &sq)] {
        if !sx.is_separative() || !sx.is_partial_order() {
            return Some("sq output is not a separative partial order".into());
        }
        if !posets_iso(&sx.sep_quot(), sx) {
            return Some("sq is not idempotent".into());
        }
        let sm = x.sep_mod();
        if sm.sep_mod() != sm {
            return Some("sm is not idempotent".into());
        }
        let n = x.size();
        if (0..n).any(|a| (0..n).any(|b| x.le(a, b) && !sm.le(a, b))) {
            return Some("sm does not extend the order".into());
        }
    }
    None
}

/// `sq(P × Q) ≅ sq(P) × sq(Q)` exhaustively on pre-orders of at most three
/// elements and on random pairs of at most five, plus separativity and
/// idempotence of `sq` and invariance under relabelling.
pub fn sq_product(exec: Exec, seed: u64) -> (u64, Vec<String>) {
    let small: Vec<FinPoset> = (1..=3).flat_map(all_preorders).collect();
    let pairs: Vec<(usize, usize)> = (0..small.len())
        .flat_map(|a| (0..small.len()).map(move |b| (a, b)))
        .collect();
    let mut failures: Vec<String> = exec
        .map_slice(&pairs, |&(a, b)| {
            sq_laws(&small[a], &small[b]).map(|m| format!("exhaustive {a},{b}: {m}"))
        })
        .into_iter()
        .flatten()
        .collect();
    let (random_cases, random_failures) = check(exec, 500, |i| {
        let mut rng = gen::case_rng(seed, i);
        let (m, k) = (rng.random_range(1..=5), rng.random_range(1..=5));
        let p = gen::preorder(&mut rng, m);
        let q = gen::preorder(&mut rng, k);
        if let Some(msg) = sq_laws(&p, &q) {
            return Some(format!("random {i}: {msg}\n{}{}", p.to_text(), q.to_text()));
        }
        let p2 = relabel(&mut rng, &p);
        (!posets_iso(&p.sep_quot(), &p2.sep_quot()))
            .then(|| format!("random {i}: sq not invariant under relabelling"))
    });
    failures.extend(random_failures);
    (pairs.len() as u64 + random_cases, failures)
}

/// Golden factorizations of `ω·n` and `ω^n`, dropping of finite tails, and
/// canonical-form invariants on random ordinals below `ω^(ω·2)`.
pub fn factorizer(exec: Exec, seed: u64) -> (u64, Vec<String>) {
    let mut failures = Vec::new();
    let head = ForcingExpr::positive(ForcingExpr::fin_quotient());
    for n in 1..=6u64 {
        let expected = if n == 1 {
            head.clone()
        } else {
            ForcingExpr::power(head.clone(), n)
        };
        let got = factorize(&Ordinal::monomial(Ordinal::one(), n));
        if got.as_ref() != Ok(&expected) {
            failures.push(format!("w*{n}: {got:?}"));
        }
    }
    for n in 1..=5u64 {
        let q = ForcingExpr::fin_quotient();
        let inner = if n == 1 { q } else { ForcingExpr::rp(q, n - 1) };
        let expected = ForcingExpr::positive(inner);
        let got = factorize(&Ordinal::omega_pow(Ordinal::nat(n)));
        if got.as_ref() != Ok(&expected) {
            failures.push(format!("w^{n}: {got:?}"));
        }
    }
    let (tail_cases, tail_failures) = check(exec, 200, |i| {
        let mut rng = gen::case_rng(seed, i);
        let a = gen::ordinal_below_omega_omega2(&mut rng);
        let k = rng.random_range(0..20);
        let ak = &a + &Ordinal::nat(k);
        (factorize(&ak) != factorize(&a)).then(|| format!("{a} + {k} factorizes differently"))
    });
    let (inv_cases, inv_failures) = check(exec, 1000, |i| {
        let mut rng = gen::case_rng(seed ^ 0xfac7, i);
        let a = gen::ordinal_below_omega_omega2(&mut rng);
        let e = match factorize(&a) {
            Ok(e) => e,
            Err(err) => return Some(format!("{a}: {err}")),
        };
        if let Err(err) = e.validate() {
            return Some(format!("{a}: {err}"));
        }
        match ForcingExpr::parse_text(&e.to_text()) {
            Ok(back) if back == e => None,
            other => Some(format!("{a}: text does not round-trip: {other:?}")),
        }
    });
    failures.extend(tail_failures);
    failures.extend(inv_failures);
    (11 + tail_cases + inv_cases, failures)
}

/// `select(A, ξ)` is defined iff `ξ < type(A)`, lands in `A`, is strictly
/// increasing, and inverts `rank_of` on sampled members.
pub fn enumeration(exec: Exec, seed: u64) -> (u64, Vec<String>) {
    check(exec, 500, |i| {
        let mut rng = gen::case_rng(seed, i);
        let dim = rng.random_range(1..=3);
        let a = gen::cube_set(&mut rng, dim);
        let t = a.order_type();
        let fail = |msg: String| Some(format!("case {i}: {msg} for {a}"));
        let mut xis: Vec<Ordinal> = (0..6)
            .map(|_| Point((0..dim).map(|_| rng.random_range(0..5)).collect()).to_ordinal())
            .collect();
        xis.sort();
        xis.dedup();
        let mut last: Option<Point> = None;
        for xi in &xis {
            match a.select(xi) {
                Ok(p) if *xi < t => {
                    if !a.contains(&p).expect("same dimension") {
                        return fail(format!("select({xi}) = {p} not a member"));
                    }
                    if last.as_ref().is_some_and(|q| *q >= p) {
                        return fail(format!("select not increasing at {xi}"));
                    }
                    last = Some(p);
                }
                Ok(p) => return fail(format!("select({xi}) = {p} defined at or above type {t}")),
                Err(_) if *xi >= t => {}
                Err(e) => return fail(format!("select({xi}) failed below type {t}: {e}")),
            }
        }
        for p in a.points_in_box(4) {
            let rank = a.rank_of(&p).expect("same dimension");
            match rank.map(|r| a.select(&r)) {
                Some(Ok(q)) if q == p => {}
                other => return fail(format!("member {p} not recovered: {other:?}")),
            }
        }
        None
    })
}

/// For `A ⊄ B` modulo `Fin^n`, the witness `C = A ∖ B` is positive,
/// inside `A` and disjoint from `B`.
pub fn separativity_witness(exec: Exec, seed: u64) -> (u64, Vec<String>) {
    check(exec, 500, |i| {
        let mut rng = gen::case_rng(seed, i);
        let dim = rng.random_range(1..=3);
        let (a, b) = loop {
            let a = gen::cube_set(&mut rng, dim);
            let b = gen::cube_set(&mut rng, dim);
            if a.is_fubini_positive() && a.difference(&b).expect("same dim").is_fubini_positive() {
                break (a, b);
            }
        };
        let c = a.difference(&b).expect("same dim");
        let top = omega_pow(dim);
        let ok = c.is_fubini_positive()
            && c.order_type() == top
            && c.intersection(&b).expect("same dim").is_empty()
            && c.is_subset(&a).expect("same dim");
        (!ok).then(|| format!("case {i}: witness fails for A = {a}, B = {b}"))
    })
}

/// Associativity, left distributivity, power laws, non-commutativity
/// witnesses and indecomposability of sums.
pub fn ordinal_laws(exec: Exec, seed: u64) -> (u64, Vec<String>) {
    let w = Ordinal::omega();
    let one = Ordinal::one();
    let two = Ordinal::nat(2);
    let mut failures = Vec::new();
    if &one + &w != w || &w + &one == w || &two * &w != w || &w * &two == w {
        failures.push("non-commutativity witnesses".to_string());
    }
    let (cases, random) = check(exec, 500, |i| {
        let mut rng = gen::case_rng(seed, i);
        let mut draw = || gen::ordinal(&mut rng, 1, 3, 3);
        let (a, b, c) = (draw(), draw(), draw());
        if &(&a + &b) + &c != &a + &(&b + &c) {
            return Some(format!("addition not associative on {a}, {b}, {c}"));
        }
        if &(&a * &b) * &c != &a * &(&b * &c) {
            return Some(format!("multiplication not associative on {a}, {b}, {c}"));
        }
        if &a * &(&b + &c) != &(&a * &b) + &(&a * &c) {
            return Some(format!("left distributivity fails on {a}, {b}, {c}"));
        }
        if let (Ok(lhs), Ok(pb), Ok(pc)) = (a.pow(&(&b + &c)), a.pow(&b), a.pow(&c)) {
            if lhs != &pb * &pc {
                return Some(format!("{a}^({b}+{c}) != {a}^{b} * {a}^{c}"));
            }
        }
        if !b.is_zero() && !c.is_zero() {
            let (hi, lo) = if b >= c { (&b, &c) } else { (&c, &b) };
            let s = &Ordinal::omega_pow(hi.clone()) + &Ordinal::omega_pow(lo.clone());
            if s.is_indecomposable() != Ok(false) {
                return Some(format!("w^{hi} + w^{lo} reported indecomposable"));
            }
        }
        if a.cmp(&b) != b.cmp(&a).reverse() {
            return Some(format!("comparison not antisymmetric on {a}, {b}"));
        }
        None
    });
    failures.extend(random);
    (cases + 1, failures)
}

/// De Morgan, absorption, monotonicity of order type, and agreement of
/// canonical equality with window comparison.
pub fn boolean_laws(exec: Exec, seed: u64) -> (u64, Vec<String>) {
    check(exec, 500, |i| {
        let mut rng = gen::case_rng(seed, i);
        let dim = rng.random_range(1..=3);
        let a = gen::cube_set(&mut rng, dim);
        let b = gen::cube_set(&mut rng, dim);
        let u = a.union(&b).expect("same dim");
        let n = a.intersection(&b).expect("same dim");
        let fail = |m: &str| Some(format!("case {i}: {m} for {a}, {b}"));
        if u.complement()
            != a.complement()
                .intersection(&b.complement())
                .expect("same dim")
        {
            return fail("de Morgan (union)");
        }
        if n.complement() != a.complement().union(&b.complement()).expect("same dim") {
            return fail("de Morgan (intersection)");
        }
        if a.union(&n).expect("same dim") != a || a.intersection(&u).expect("same dim") != a {
            return fail("absorption");
        }
        if n.order_type() > a.order_type() || a.order_type() > u.order_type() {
            return fail("order type not monotone");
        }
        if a.semantic_eq(&b) != (a == b) || !u.semantic_eq(&b.union(&a).expect("same dim")) {
            return fail("window equality disagrees");
        }
        None
    })
}
