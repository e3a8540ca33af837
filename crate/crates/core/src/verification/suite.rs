use std::collections::BTreeSet;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::factorization::{factorizations_with_budget, indexed_len, LengthSet};
use crate::invariants::{
    omega_growth_witness, set_distances, summarize, InvariantReport, OmegaObservation, Scan,
};
use crate::monoid::{BlockModel, DegreeBound, LocalElement, ModelElement};
use crate::transfer::{
    ambient_model, classify, ClassificationReport, Invariant, Predicted, Prediction, Scope,
};

use super::oracle::{oracle_factorizations, oracle_omega_general, AtomMultiset};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    /// The bounded computation neither confirms nor refutes the claim.
    InconclusiveBound,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::InconclusiveBound => "inconclusive-bound",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub clause: String,
    pub predicted: String,
    pub computed: String,
    pub verdict: Verdict,
    /// Element or factorization showing a failure, in the element grammar.
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub bound: DegreeBound,
    pub checks: Vec<Check>,
    pub elapsed_seconds: f64,
}

impl SuiteResult {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.verdict != Verdict::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.verdict == Verdict::Fail)
    }

    pub fn get(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }
}

/// Tunables of the suite beyond the main bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteOptions {
    pub budget: u64,
    /// Largest `k` for which `U_k` is examined.
    pub max_k: u32,
    /// Bound for the oracle comparisons, which are slower than the engine.
    pub oracle_bound: DegreeBound,
    /// Bound for comparing `ω` over atoms with `ω` over arbitrary tuples.
    pub omega_cross_bound: DegreeBound,
    /// `N` for the unbounded-ω witness.
    pub omega_growth: u32,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            budget: crate::factorization::DEFAULT_NODE_BUDGET,
            max_k: 5,
            oracle_bound: DegreeBound::new(6, 4, 6),
            omega_cross_bound: DegreeBound::new(4, 3, 4),
            omega_growth: 10,
        }
    }
}

/// Runs every applicable prediction and global inequality within `bound`.
pub fn run_theorem_suite(model: &BlockModel, bound: &DegreeBound) -> SuiteResult {
    run_theorem_suite_with(model, bound, &SuiteOptions::default())
}

pub fn run_theorem_suite_with(
    model: &BlockModel,
    bound: &DegreeBound,
    opts: &SuiteOptions,
) -> SuiteResult {
    let start = Instant::now();
    let mut checks = Vec::new();
    let report = classify(model);

    let scanned = Scan::with_budget(model, bound, opts.budget).and_then(|scan| {
        let inv = InvariantReport::from_scan(model, &scan, 2..=opts.max_k, opts.budget)?;
        Ok((scan, inv))
    });
    match &scanned {
        Ok((scan, inv)) => {
            predictions(model, &report, Scope::Model, scan, inv, opts, &mut checks);
            element_inequalities(model, scan, &mut checks);
            monoid_inequalities(scan, inv, opts, &mut checks);
        }
        Err(e) => checks.push(inconclusive("scan.model", "bounded scan of the model", e)),
    }

    if model.group().is_trivial() {
        if let Ok((scan, _)) = &scanned {
            local_lemmas(model, scan, opts, &mut checks);
        }
    } else {
        // The free part of the ambient monoid is factorial and does not
        // change any invariant, so one free prime factor is enough.
        let amb = ambient_model(model);
        let amb_bound = DegreeBound {
            max_free_length: bound.max_free_length.min(1),
            ..*bound
        };
        match Scan::with_budget(&amb, &amb_bound, opts.budget).and_then(|scan| {
            let inv = InvariantReport::from_scan(&amb, &scan, 2..=opts.max_k, opts.budget)?;
            Ok((scan, inv))
        }) {
            Ok((scan, inv)) => {
                predictions(
                    &amb,
                    &report,
                    Scope::Ambient,
                    &scan,
                    &inv,
                    opts,
                    &mut checks,
                );
                local_lemmas(&amb, &scan, opts, &mut checks);
            }
            Err(e) => checks.push(inconclusive(
                "scan.ambient",
                "bounded scan of the ambient monoid",
                &e,
            )),
        }
    }

    oracle_checks(model, opts, &mut checks);

    SuiteResult {
        bound: *bound,
        checks,
        elapsed_seconds: start.elapsed().as_secs_f64(),
    }
}

fn inconclusive(id: &str, clause: &str, e: &crate::error::Error) -> Check {
    Check {
        id: id.into(),
        clause: clause.into(),
        predicted: "-".into(),
        computed: e.to_string(),
        verdict: Verdict::InconclusiveBound,
        witness: None,
    }
}

fn scope_tag(scope: Scope) -> &'static str {
    match scope {
        Scope::Model => "model",
        Scope::Ambient => "ambient",
    }
}

/// Exact values: equal passes, larger fails, smaller is a bound artifact.
fn compare_exact(computed: u32, value: u32) -> Verdict {
    match computed.cmp(&value) {
        std::cmp::Ordering::Equal => Verdict::Pass,
        std::cmp::Ordering::Greater => Verdict::Fail,
        std::cmp::Ordering::Less => Verdict::InconclusiveBound,
    }
}

fn fmt_set<I: IntoIterator<Item = u32>>(v: I) -> String {
    let s: Vec<String> = v.into_iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", s.join(","))
}

#[allow(clippy::too_many_arguments)]
fn predictions(
    model: &BlockModel,
    report: &ClassificationReport,
    scope: Scope,
    scan: &Scan,
    inv: &InvariantReport,
    opts: &SuiteOptions,
    out: &mut Vec<Check>,
) {
    let preds: Vec<&Prediction> = report.for_scope(scope).collect();
    for p in preds {
        let id = format!("predict.{}.{}", scope_tag(scope), p.invariant);
        let mut check = Check {
            id,
            clause: p.clause.clone(),
            predicted: p.predicted.to_string(),
            computed: String::new(),
            verdict: Verdict::Pass,
            witness: None,
        };
        match (&p.invariant, &p.predicted) {
            (
                Invariant::Catenary
                | Invariant::CatenaryEq
                | Invariant::CatenaryAdj
                | Invariant::CatenaryMon,
                pred,
            ) => {
                let (computed, arg) = match p.invariant {
                    Invariant::Catenary => (
                        inv.catenary,
                        scan.elements.iter().max_by_key(|s| s.catenary),
                    ),
                    Invariant::CatenaryEq => (
                        inv.catenary_eq,
                        scan.elements.iter().max_by_key(|s| s.refined.equal),
                    ),
                    Invariant::CatenaryAdj => (
                        inv.catenary_adj,
                        scan.elements.iter().max_by_key(|s| s.refined.adjacent),
                    ),
                    _ => (
                        inv.catenary_mon,
                        scan.elements.iter().max_by_key(|s| s.refined.monotone),
                    ),
                };
                check.computed = computed.to_string();
                check.verdict = match pred {
                    Predicted::Exact { value } => compare_exact(computed, *value),
                    Predicted::AtMost { value } if computed <= *value => Verdict::Pass,
                    _ => Verdict::Fail,
                };
                if check.verdict == Verdict::Fail {
                    check.witness = arg.map(|s| model.format_element(&s.element));
                }
            }
            (Invariant::Delta, Predicted::Set { values }) => {
                let predicted: BTreeSet<u32> = values.iter().copied().collect();
                let computed: BTreeSet<u32> = inv.delta.iter().copied().collect();
                check.computed = fmt_set(computed.iter().copied());
                check.verdict = if computed == predicted {
                    Verdict::Pass
                } else if computed.is_subset(&predicted) {
                    Verdict::InconclusiveBound
                } else {
                    let bad = computed.difference(&predicted).next().copied().unwrap();
                    check.witness = scan
                        .elements
                        .iter()
                        .find(|s| set_distances(&s.lengths).contains(&bad))
                        .map(|s| {
                            format!(
                                "{} with L = {}",
                                model.format_element(&s.element),
                                s.lengths
                            )
                        });
                    Verdict::Fail
                };
            }
            (Invariant::HalfFactorial, Predicted::Bool { value }) => {
                let witness = scan.non_half_factorial_witness();
                check.computed = match witness {
                    Some(_) => "false".into(),
                    None => "no counterexample".into(),
                };
                check.verdict = match (value, witness) {
                    (true, None) | (false, Some(_)) => Verdict::Pass,
                    (true, Some(_)) => Verdict::Fail,
                    (false, None) => Verdict::InconclusiveBound,
                };
                check.witness = witness.map(|s| {
                    format!(
                        "{} with L = {}",
                        model.format_element(&s.element),
                        s.lengths
                    )
                });
            }
            (Invariant::Omega, Predicted::Exact { value }) => {
                check.computed = inv.omega.observed.to_string();
                check.verdict = compare_exact(inv.omega.observed, *value);
                if inv.omega.observed > 0 {
                    let tuple: Vec<String> = inv
                        .omega
                        .tuple
                        .iter()
                        .map(|x| model.format_element(x))
                        .collect();
                    check.witness =
                        inv.omega.atom.as_ref().map(|u| {
                            format!("{} | {}", model.format_element(u), tuple.join(" * "))
                        });
                }
            }
            (Invariant::Omega, Predicted::Infinite) => {
                match omega_growth_witness(model, opts.omega_growth) {
                    Ok(w) => {
                        check.computed = format!(">= {} (verified tuple)", w.tuple.len());
                        check.verdict = if w.tuple.len() as u32 > opts.omega_growth {
                            Verdict::Pass
                        } else {
                            Verdict::Fail
                        };
                        let tuple: Vec<String> =
                            w.tuple.iter().map(|x| model.format_element(x)).collect();
                        check.witness = Some(format!(
                            "{} | {}",
                            model.format_element(&w.atom),
                            tuple.join(" * ")
                        ));
                    }
                    Err(e) => {
                        check.computed = e.to_string();
                        check.verdict = Verdict::InconclusiveBound;
                    }
                }
            }
            (Invariant::Unions, pred) => unions_check(model, scan, inv, pred, &mut check),
            _ => {
                check.computed = "not checked".into();
                check.verdict = Verdict::InconclusiveBound;
            }
        }
        out.push(check);
    }
}

fn unions_check(
    model: &BlockModel,
    scan: &Scan,
    inv: &InvariantReport,
    pred: &Predicted,
    check: &mut Check,
) {
    let max_len = scan
        .elements
        .iter()
        .filter_map(|s| s.lengths.max())
        .max()
        .unwrap_or(0);
    let rendered: Vec<String> = inv
        .unions
        .values()
        .map(|u| format!("U_{} = {}", u.k, u.set))
        .collect();
    check.computed = rendered.join("; ");
    let below_two = inv
        .unions
        .values()
        .find(|u| u.set.min().is_some_and(|m| m < 2));
    match pred {
        Predicted::Singleton => {
            let bad = inv
                .unions
                .values()
                .find(|u| !u.set.is_empty() && !u.set.values().eq([u.k]));
            check.verdict = if bad.is_some() {
                Verdict::Fail
            } else {
                Verdict::Pass
            };
            if let Some(u) = bad {
                check.witness = scan
                    .elements
                    .iter()
                    .find(|s| s.lengths.contains(u.k) && s.lengths.len() > 1)
                    .map(|s| {
                        format!(
                            "{} with L = {}",
                            model.format_element(&s.element),
                            s.lengths
                        )
                    });
            }
        }
        Predicted::AllFrom { start } => {
            check.verdict = if below_two.is_some() {
                Verdict::Fail
            } else if inv
                .unions
                .values()
                .filter(|u| u.k >= *start)
                .all(|u| (*start..=max_len).all(|l| u.set.contains(l)))
            {
                Verdict::Pass
            } else {
                Verdict::InconclusiveBound
            };
        }
        Predicted::FiniteInterval => {
            check.verdict = if inv.unions.values().all(|u| u.is_interval) {
                Verdict::Pass
            } else {
                Verdict::InconclusiveBound
            };
        }
        Predicted::NeighborCover => {
            let mut ok = below_two.is_none();
            let mut observed = Vec::new();
            for u in inv.unions.values() {
                let top = u.set.max().unwrap_or(0);
                if u.k <= 3 {
                    let mut picks = Vec::new();
                    for l in 2..top {
                        match (u.set.contains(l), u.set.contains(l + 1)) {
                            (true, true) => picks.push(format!("{l},{}", l + 1)),
                            (true, false) => picks.push(l.to_string()),
                            (false, true) => picks.push(format!("{}", l + 1)),
                            (false, false) => ok = false,
                        }
                    }
                    observed.push(format!("U_{}: {}", u.k, picks.join(" ")));
                } else if !(4..=top).all(|l| u.set.contains(l)) {
                    ok = false;
                }
            }
            check.computed = format!("{}; observed {}", check.computed, observed.join("; "));
            check.verdict = if below_two.is_some() {
                Verdict::Fail
            } else if ok {
                Verdict::Pass
            } else {
                Verdict::InconclusiveBound
            };
        }
        _ => check.verdict = Verdict::InconclusiveBound,
    }
}

fn pass_or_fail(
    id: &str,
    clause: &str,
    predicted: &str,
    computed: String,
    witness: Option<String>,
) -> Check {
    Check {
        id: id.into(),
        clause: clause.into(),
        predicted: predicted.into(),
        computed,
        verdict: if witness.is_some() {
            Verdict::Fail
        } else {
            Verdict::Pass
        },
        witness,
    }
}

/// Per-element statements that hold for every element.
fn element_inequalities(model: &BlockModel, scan: &Scan, out: &mut Vec<Check>) {
    let n = scan.elements.len();
    let mut basic1 = None;
    let mut basic2 = None;
    let mut basic3 = None;
    for s in &scan.elements {
        if basic2.is_none() {
            let max_l = s.lengths.max().unwrap_or(0);
            let r = s.refined;
            if !(s.catenary <= r.monotone
                && r.monotone == r.equal.max(r.adjacent)
                && r.monotone <= max_l)
            {
                basic2 = Some(format!(
                    "{}: c = {}, c_eq = {}, c_adj = {}, c_mon = {}, max L = {max_l}",
                    model.format_element(&s.element),
                    s.catenary,
                    r.equal,
                    r.adjacent,
                    r.monotone
                ));
            }
        }
        if basic3.is_none() && s.lengths.len() > 1 {
            let max_gap = set_distances(&s.lengths).into_iter().max().unwrap_or(0);
            if s.catenary < 2 + max_gap {
                basic3 = Some(format!(
                    "{}: c = {} but L = {}",
                    model.format_element(&s.element),
                    s.catenary,
                    s.lengths
                ));
            }
        }
    }
    // Distances need the factorizations themselves; re-enumerate a slice.
    for s in scan
        .elements
        .iter()
        .filter(|s| s.factorization_count <= 400)
    {
        if basic1.is_some() {
            break;
        }
        let Ok(set) = factorizations_with_budget(model, &s.element, u64::MAX) else {
            continue;
        };
        'pairs: for i in 0..set.len() {
            for j in (i + 1)..set.len() {
                let d = set.distance(i, j);
                let (li, lj) = (
                    indexed_len(&set.indexed()[i]),
                    indexed_len(&set.indexed()[j]),
                );
                if 2 + li.abs_diff(lj) > d {
                    basic1 = Some(format!(
                        "{}: d = {d} for lengths {li}, {lj}",
                        model.format_element(&s.element)
                    ));
                    break 'pairs;
                }
            }
        }
    }
    out.push(pass_or_fail(
        "element.distance-vs-lengths",
        "2 + ||z| - |z'|| <= d(z, z') for distinct factorizations",
        "holds",
        format!("{n} elements"),
        basic1,
    ));
    out.push(pass_or_fail(
        "element.catenary-chain",
        "c(a) <= c_mon(a) = max(c_eq(a), c_adj(a)) <= max L(a)",
        "holds",
        format!("{n} elements"),
        basic2,
    ));
    out.push(pass_or_fail(
        "element.catenary-vs-delta",
        "|L(a)| > 1 implies c(a) >= 2 + max delta(L(a))",
        "holds",
        format!("{n} elements"),
        basic3,
    ));
}

fn monoid_inequalities(
    scan: &Scan,
    inv: &InvariantReport,
    opts: &SuiteOptions,
    out: &mut Vec<Check>,
) {
    let max_gap = inv.delta.iter().max().copied();
    let computed = format!(
        "c = {}, delta = {}",
        inv.catenary,
        fmt_set(inv.delta.iter().copied())
    );
    out.push(Check {
        id: "monoid.catenary-vs-delta".into(),
        clause: "2 + max delta(H) <= c(H)".into(),
        predicted: "holds".into(),
        computed,
        verdict: match max_gap {
            Some(g) if 2 + g > inv.catenary => Verdict::Fail,
            _ => Verdict::Pass,
        },
        witness: None,
    });

    let factorial = scan.elements.iter().all(|s| s.factorization_count <= 1);
    let (verdict, computed) = match inv.omega.value {
        crate::invariants::Omega::Infinite => {
            (Verdict::Pass, format!("c = {}, omega = inf", inv.catenary))
        }
        crate::invariants::Omega::Finite(w) if factorial || inv.catenary <= w => {
            (Verdict::Pass, format!("c = {}, omega >= {w}", inv.catenary))
        }
        crate::invariants::Omega::Finite(w) if inv.omega.exactness.is_exact() => {
            (Verdict::Fail, format!("c = {} > omega = {w}", inv.catenary))
        }
        crate::invariants::Omega::Finite(w) => (
            Verdict::InconclusiveBound,
            format!("c = {}, omega >= {w} at this bound", inv.catenary),
        ),
    };
    out.push(Check {
        id: "monoid.catenary-vs-omega".into(),
        clause: "c(H) <= omega(H) for non-factorial H".into(),
        predicted: "holds".into(),
        computed,
        verdict,
        witness: None,
    });

    // If U_n covers [n, M] then so does every U_k with k >= n (up to max_k).
    let max_len = scan
        .elements
        .iter()
        .filter_map(|s| s.lengths.max())
        .max()
        .unwrap_or(0);
    let mut verdict = Verdict::Pass;
    let mut detail = Vec::new();
    for n in 2..=opts.max_k {
        let covers = |u: &LengthSet| (n..=max_len).all(|l| u.contains(l));
        if inv.unions.get(&n).is_some_and(|u| covers(&u.set)) {
            for k in n..=opts.max_k {
                if !inv.unions.get(&k).is_some_and(|u| covers(&u.set)) {
                    verdict = Verdict::InconclusiveBound;
                    detail.push(format!("U_{n} covers [{n},{max_len}] but U_{k} does not"));
                }
            }
        }
    }
    out.push(Check {
        id: "monoid.unions-tail".into(),
        clause: "U_n contains N>=n implies U_k contains N>=n for k >= n".into(),
        predicted: "holds".into(),
        computed: if detail.is_empty() {
            "consistent".into()
        } else {
            detail.join("; ")
        },
        verdict,
        witness: None,
    });
}

/// Statements about the local components, checked in a model over the
/// trivial group.
fn local_lemmas(model: &BlockModel, scan: &Scan, opts: &SuiteOptions, out: &mut Vec<Check>) {
    if model.components().is_empty() {
        return;
    }
    let single = |s: &&crate::invariants::ElementSummary| {
        s.element.free_length() == 0 && s.element.support_size() == 1
    };
    let mut rank_bound = None;
    let mut eq_bound = None;
    let mut checked = 0;
    for s in scan.elements.iter().filter(single) {
        let (i, part) = s
            .element
            .parts()
            .iter()
            .enumerate()
            .find(|(_, p)| !p.is_identity())
            .expect("one part");
        if model.components()[i].rank() < 2 {
            continue;
        }
        checked += 1;
        let min_k = part.min_exponent().unwrap_or(0);
        let (lo, hi) = (s.lengths.min().unwrap_or(0), s.lengths.max().unwrap_or(0));
        if rank_bound.is_none() && (lo > 2 || hi > min_k) {
            rank_bound = Some(format!(
                "{}: L = {}",
                model.format_element(&s.element),
                s.lengths
            ));
        }
        if eq_bound.is_none() && s.refined.equal > 2 {
            eq_bound = Some(format!(
                "{}: c_eq = {}",
                model.format_element(&s.element),
                s.refined.equal
            ));
        }
    }
    if checked > 0 {
        out.push(pass_or_fail(
            "local.length-bounds",
            "rank >= 2 local element: min L <= 2 and max L <= min k",
            "holds",
            format!("{checked} elements"),
            rank_bound,
        ));
        out.push(pass_or_fail(
            "local.equal-length-chains",
            "rank >= 2 local element: c_eq <= 2",
            "holds",
            format!("{checked} elements"),
            eq_bound,
        ));
    }

    // Atoms of a component are exactly the elements with some exponent 1.
    let mut closed_form = None;
    let mut tested = 0;
    for (i, comp) in model.components().iter().enumerate() {
        let units = comp.unit_group().elements();
        let mut exps = vec![1u32; comp.rank()];
        loop {
            for e in &units {
                let part = LocalElement::power(e.clone(), exps.clone());
                let Ok(x) = model.local_element(i, part) else {
                    continue;
                };
                tested += 1;
                let by_form = exps.contains(&1);
                match model.is_atom_by_search(&x) {
                    Ok(by_search) if by_search != by_form => {
                        closed_form.get_or_insert(format!(
                            "{}: closed form {by_form}, search {by_search}",
                            model.format_element(&x)
                        ));
                    }
                    _ => {}
                }
            }
            if !crate::monoid::next_in_box(&mut exps, 1, scan.bound.max_exponent) {
                break;
            }
        }
    }
    out.push(pass_or_fail(
        "local.atom-closed-form",
        "local atoms are exactly the elements with some exponent 1",
        "holds",
        format!("{tested} elements"),
        closed_form,
    ));

    // c_eq over a product with a half-factorial second factor.
    let mut product_rule = None;
    let mut sampled = 0;
    for s in scan
        .elements
        .iter()
        .filter(|s| factor_count(&s.element) >= 2)
        .take(200)
    {
        let (a1, a2) = split_first_part(&s.element);
        let (Ok(s1), Ok(s2)) = (
            summarize(model, &a1, opts.budget),
            summarize(model, &a2, opts.budget),
        ) else {
            continue;
        };
        sampled += 1;
        let sup = s1.refined.equal.max(s2.refined.equal);
        let holds = if s2.lengths.len() == 1 {
            s.refined.equal == sup
        } else {
            s.refined.equal >= sup
        };
        if !holds && product_rule.is_none() {
            product_rule = Some(format!(
                "{}: c_eq = {}, factors {} and {}",
                model.format_element(&s.element),
                s.refined.equal,
                s1.refined.equal,
                s2.refined.equal
            ));
        }
    }
    if sampled > 0 {
        out.push(pass_or_fail(
            "local.product-equal-catenary",
            "c_eq(a1 a2) >= max(c_eq(a1), c_eq(a2)), with equality when |L(a2)| = 1",
            "holds",
            format!("{sampled} elements"),
            product_rule,
        ));
    }
}

/// Number of coproduct factors (free part, local parts) `a` touches.
fn factor_count(a: &ModelElement) -> usize {
    usize::from(a.free_length() > 0) + a.support_size()
}

/// Splits off the first non-identity local part (or the free part when
/// there is one) as `a1`.
fn split_first_part(a: &ModelElement) -> (ModelElement, ModelElement) {
    let n = a.parts().len();
    if a.free_length() > 0 {
        let a1 = ModelElement::new(a.free_counts().to_vec(), vec![LocalElement::Identity; n]);
        let a2 = ModelElement::new(vec![0; a.free_counts().len()], a.parts().to_vec());
        return (a1, a2);
    }
    let i = a
        .parts()
        .iter()
        .position(|p| !p.is_identity())
        .expect("non-identity");
    let mut p1 = vec![LocalElement::Identity; n];
    p1[i] = a.parts()[i].clone();
    let mut p2 = a.parts().to_vec();
    p2[i] = LocalElement::Identity;
    (
        ModelElement::new(a.free_counts().to_vec(), p1),
        ModelElement::new(a.free_counts().to_vec(), p2),
    )
}

fn engine_multisets(
    model: &BlockModel,
    a: &ModelElement,
    budget: u64,
) -> Result<BTreeSet<AtomMultiset>> {
    Ok(factorizations_with_budget(model, a, budget)?
        .to_vec()
        .into_iter()
        .map(|z| {
            let mut v: Vec<ModelElement> = z.atoms().cloned().collect();
            v.sort();
            v
        })
        .collect())
}

fn oracle_checks(model: &BlockModel, opts: &SuiteOptions, out: &mut Vec<Check>) {
    let elements = model.elements_within(&opts.oracle_bound);
    let mut mismatch = None;
    let mut verdict = Verdict::Pass;
    let mut compared = 0;
    for a in &elements {
        let oracle = oracle_factorizations(model, a, opts.budget);
        let engine = engine_multisets(model, a, opts.budget);
        match (oracle, engine) {
            (Ok(o), Ok(e)) => {
                compared += 1;
                if o != e {
                    mismatch = Some(format!(
                        "{}: oracle {} factorizations, engine {}",
                        model.format_element(a),
                        o.len(),
                        e.len()
                    ));
                    verdict = Verdict::Fail;
                    break;
                }
            }
            _ => verdict = Verdict::InconclusiveBound,
        }
    }
    out.push(Check {
        id: "oracle.factorizations".into(),
        clause: "divisor-lattice oracle equals the backtracking engine".into(),
        predicted: "equal".into(),
        computed: format!("{compared} elements within {}", opts.oracle_bound),
        verdict,
        witness: mismatch,
    });

    let small = &opts.omega_cross_bound;
    let elements = model.elements_within(small);
    let atoms = model.enumerate_atoms(small).atoms;
    let mut mismatch = None;
    let mut verdict = Verdict::Pass;
    match crate::invariants::observe_omega(model, &atoms, small, opts.budget) {
        Ok(obs) => {
            for OmegaObservation { atom, value, .. } in &obs {
                match oracle_omega_general(
                    model,
                    atom,
                    &elements,
                    small.max_atom_count,
                    opts.budget,
                ) {
                    Ok(general) if general != *value => {
                        verdict = Verdict::Fail;
                        mismatch = Some(format!(
                            "{}: atoms give {value}, arbitrary tuples give {general}",
                            model.format_element(atom)
                        ));
                        break;
                    }
                    Ok(_) => {}
                    Err(_) => verdict = Verdict::InconclusiveBound,
                }
            }
        }
        Err(_) => verdict = Verdict::InconclusiveBound,
    }
    out.push(Check {
        id: "oracle.omega-tuples".into(),
        clause: "omega over atom tuples equals omega over arbitrary tuples".into(),
        predicted: "equal".into(),
        computed: format!("{} atoms within {small}", atoms.len()),
        verdict,
        witness: mismatch,
    });
}
