//! The acceptance suite: ten criteria, one line of output each.
//!
//! Runs without the libtest harness so every criterion reports even when an
//! earlier one fails; the process exits non-zero if any criterion fails.

mod common;

use std::collections::{BTreeSet, VecDeque};
use std::time::{Duration, Instant};

use common::*;
use factorlab_core::factorization::{factorizations, Factorization};
use factorlab_core::invariants::{
    catenary_refined, davenport, is_half_factorial, omega_growth_witness, verify_omega_tuple,
    InvariantReport, Omega, Scan,
};
use factorlab_core::transfer::{
    check_transfer, classify, pi_bijective, Invariant, Predicted, Scope, TransferAxiom,
    TransferKind,
};
use factorlab_core::verification::oracle_factorizations;
use factorlab_core::{AbelianGroup, BlockModel, DegreeBound, LocalElement, ModelElement};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

/// Name, time limit in seconds, and the check itself.
type Criterion = (&'static str, u64, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn bound() -> DegreeBound {
    DegreeBound::default()
}

fn half_factoriality() -> Outcome {
    let mut notes = Vec::new();
    for (name, model) in [("B(C1)", block(&[])), ("B(C2)", block(&[2]))] {
        let start = Instant::now();
        let scan = Scan::new(&model, &bound()).map_err(|e| e.to_string())?;
        if let Some(s) = scan.elements.iter().find(|s| s.lengths.len() != 1) {
            return Err(format!(
                "{name}: {} has {} lengths",
                model.format_element(&s.element),
                s.lengths.len()
            ));
        }
        let hf = is_half_factorial(&model, &bound()).map_err(|e| e.to_string())?;
        ensure(hf.value && hf.witness.is_none(), || {
            format!("{name}: reported not half-factorial")
        })?;
        time_limit(name, start, 5)?;
        notes.push(format!(
            "{name} half-factorial over {} elements",
            scan.elements.len()
        ));
    }
    for (name, model) in [("B(C3)", block(&[3])), ("B(C2+C2)", block(&[2, 2]))] {
        let start = Instant::now();
        let hf = is_half_factorial(&model, &bound()).map_err(|e| e.to_string())?;
        let (x, _) = hf.witness.ok_or_else(|| format!("{name}: no witness"))?;
        let lengths = factorizations(&model, &x)
            .map_err(|e| e.to_string())?
            .lengths();
        ensure(!hf.value && lengths.len() >= 2, || {
            format!("{name}: witness has a single length")
        })?;
        time_limit(name, start, 5)?;
        notes.push(format!(
            "{name} witness {} with {} lengths",
            model.format_element(&x),
            lengths.len()
        ));
    }
    Ok(notes.join("; "))
}

/// `D(G)` as one more than the longest sequence without a non-empty
/// zero-sum subsequence, by enumerating all multisets of each length.
fn davenport_by_enumeration(g: &AbelianGroup) -> usize {
    let elements = g.elements();
    let zero_sum_free = |seq: &[usize]| {
        let mut reachable = vec![false; elements.len()];
        for &i in seq {
            let mut next = reachable.clone();
            next[i] = true;
            for (j, r) in reachable.iter().enumerate() {
                if *r {
                    let s = g.add(&elements[j], &elements[i]).unwrap();
                    next[g.index_of(&s)] = true;
                }
            }
            reachable = next;
        }
        !reachable[g.index_of(&g.zero())]
    };
    let mut best = 0;
    let mut len = 1;
    loop {
        let mut seq = vec![0usize; len];
        let mut found = false;
        loop {
            if zero_sum_free(&seq) {
                found = true;
                break;
            }
            // Next non-decreasing index sequence.
            let mut i = len;
            while i > 0 && seq[i - 1] == elements.len() - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            seq[i - 1] += 1;
            let v = seq[i - 1];
            seq[i..].iter_mut().for_each(|x| *x = v);
        }
        if !found {
            return best + 1;
        }
        best = len;
        len += 1;
    }
}

fn davenport_constants() -> Outcome {
    let mut notes = Vec::new();
    for (factors, expected) in [(vec![2], 2), (vec![3], 3), (vec![2, 2], 3), (vec![3, 3], 5)] {
        let g = AbelianGroup::from_invariants(&factors).unwrap();
        let fast = davenport(&g);
        let slow = davenport_by_enumeration(&g);
        ensure(fast == expected && slow == expected, || {
            format!("D({g}): expected {expected}, search {fast}, enumeration {slow}")
        })?;
        notes.push(format!("D({g}) = {expected}"));
    }
    Ok(notes.join(", "))
}

fn single_bifurcus_lengths() -> Outcome {
    let model = bifurcus();
    let r = InvariantReport::compute(&model, &bound()).map_err(|e| e.to_string())?;
    ensure(r.delta == vec![1], || format!("delta = {:?}", r.delta))?;
    ensure(r.exactness["delta"].is_exact(), || {
        "delta not certified exact".into()
    })?;
    ensure(r.catenary == 3 && r.catenary_adj == 3, || {
        format!("c = {}, c_adj = {}", r.catenary, r.catenary_adj)
    })?;
    for k in 2..=5 {
        let u = &r.unions[&k].set;
        ensure((2..=6).all(|l| u.contains(l)), || {
            format!("U_{k} = {:?} misses part of [2, 6]", u.as_set())
        })?;
    }
    Ok(format!(
        "delta = {{1}} exact, c = c_adj = 3, U_2..U_5 contain [2, 6] over {} elements",
        r.elements_scanned
    ))
}

fn single_bifurcus_refined() -> Outcome {
    let model = bifurcus();
    let scan = Scan::new(&model, &bound()).map_err(|e| e.to_string())?;
    let mut eq_hit = false;
    let mut mon_hit = false;
    for s in &scan.elements {
        ensure(s.refined.equal <= 2 && s.refined.monotone <= 3, || {
            format!(
                "{}: c_eq = {}, c_mon = {}",
                model.format_element(&s.element),
                s.refined.equal,
                s.refined.monotone
            )
        })?;
        eq_hit |= s.refined.equal == 2;
        mon_hit |= s.refined.monotone == 3;
    }
    ensure(eq_hit && mon_hit, || {
        format!("attained c_eq = 2: {eq_hit}, c_mon = 3: {mon_hit}")
    })?;
    Ok(format!(
        "c_eq <= 2 and c_mon <= 3 on {} elements, both attained",
        scan.elements.len()
    ))
}

/// Least `N` such that all factorizations of one length are linked by
/// equal-length `N`-chains, by breadth-first search for each candidate `N`.
fn equal_length_chain_degree(z: &[Factorization]) -> u32 {
    let lengths: BTreeSet<u32> = z.iter().map(Factorization::len).collect();
    let mut worst = 0;
    for l in lengths {
        let class: Vec<&Factorization> = z.iter().filter(|x| x.len() == l).collect();
        if class.len() < 2 {
            continue;
        }
        let connected = |n: u32| {
            let mut seen = vec![false; class.len()];
            let mut queue = VecDeque::from([0]);
            seen[0] = true;
            while let Some(i) = queue.pop_front() {
                for j in 0..class.len() {
                    if !seen[j] && factorlab_core::factorization::distance(class[i], class[j]) <= n
                    {
                        seen[j] = true;
                        queue.push_back(j);
                    }
                }
            }
            seen.iter().all(|&s| s)
        };
        let n = (0..=2 * l)
            .find(|&n| connected(n))
            .expect("distance is at most the length");
        worst = worst.max(n);
    }
    worst
}

fn two_bifurcus_refined() -> Outcome {
    let model = two_bifurcus();
    let q33 = || LocalElement::power(AbelianGroup::trivial().zero(), vec![3, 3]);
    let c = ModelElement::new(vec![], vec![q33(), q33()]);
    model.contains(&c).map_err(|e| e.to_string())?;
    let z = factorizations(&model, &c)
        .map_err(|e| e.to_string())?
        .to_vec();
    let by_search = equal_length_chain_degree(&z);
    let engine = catenary_refined(&model, &c)
        .map_err(|e| e.to_string())?
        .equal;
    ensure(by_search == 5 && engine == 5, || {
        format!("c_eq((3,3)(3,3)): path search {by_search}, engine {engine}")
    })?;
    let scan = Scan::new(&model, &bound()).map_err(|e| e.to_string())?;
    let top = scan.max_refined().equal;
    ensure(top <= 5, || format!("some element has c_eq = {top}"))?;
    Ok(format!(
        "c_eq((3,3)(3,3)) = 5 by path search over {} factorizations; max c_eq = {top} on {} elements",
        z.len(),
        scan.elements.len()
    ))
}

fn mixed_components() -> Outcome {
    let one = mixed(1);
    let r1 = InvariantReport::compute(&one, &bound()).map_err(|e| e.to_string())?;
    ensure(
        r1.catenary == 3 && r1.omega.value == Omega::Finite(3) && r1.delta == vec![1],
        || {
            format!(
                "one mixed: c = {}, omega = {:?}, delta = {:?}",
                r1.catenary, r1.omega.value, r1.delta
            )
        },
    )?;

    let two = mixed(2);
    let r2 = InvariantReport::compute(&two, &bound()).map_err(|e| e.to_string())?;
    ensure(
        r2.catenary == 4 && r2.omega.value == Omega::Finite(4) && r2.delta == vec![1, 2],
        || {
            format!(
                "two mixed: c = {}, omega = {:?}, delta = {:?}",
                r2.catenary, r2.omega.value, r2.delta
            )
        },
    )?;
    ensure(r2.omega.observed == 4, || {
        format!("observed omega {}", r2.omega.observed)
    })?;

    // u = v_1 v_2 with v_i = q_i of the non-zero class, w_i = ε q_i of the
    // zero class.
    let unit = |r: u32| g(&[r]);
    let local = |i: usize, e: u32| {
        let mut parts = vec![LocalElement::Identity, LocalElement::Identity];
        parts[i] = LocalElement::power(unit(e), vec![1]);
        parts
    };
    let u = {
        let mut parts = local(0, 0);
        parts[1] = LocalElement::power(unit(0), vec![1]);
        ModelElement::new(vec![0; two.prime_classes().len()], parts)
    };
    let w1 = ModelElement::new(vec![0; two.prime_classes().len()], local(0, 1));
    let w2 = ModelElement::new(vec![0; two.prime_classes().len()], local(1, 1));
    let tuple = vec![w1.clone(), w1, w2.clone(), w2];
    verify_omega_tuple(&two, &u, &tuple).map_err(|e| format!("u | w1^2 w2^2 witness: {e}"))?;
    let product = two.product(tuple.iter()).map_err(|e| e.to_string())?;
    let lengths: Vec<u32> = factorizations(&two, &product)
        .map_err(|e| e.to_string())?
        .lengths()
        .values()
        .collect();
    ensure(lengths == vec![2, 4], || {
        format!("L(w1^2 w2^2) = {lengths:?}")
    })?;
    Ok(format!(
        "one mixed: c = omega = 3, delta = {{1}}; two mixed: c = omega = 4, delta = {{1,2}}, u = {} divides w1^2 w2^2 minimally, L = {{2,4}}",
        two.format_element(&u)
    ))
}

fn omega_unbounded() -> Outcome {
    let model = rank2_c2();
    let mut sizes = Vec::new();
    for n in 1..=10u32 {
        let w = omega_growth_witness(&model, n).map_err(|e| e.to_string())?;
        verify_omega_tuple(&model, &w.atom, &w.tuple).map_err(|e| format!("N = {n}: {e}"))?;
        ensure(w.tuple.len() as u32 > n, || {
            format!("N = {n}: tuple of {} atoms", w.tuple.len())
        })?;
        sizes.push(w.tuple.len());
    }
    let report = classify(&model);
    let tagged = report
        .find(Invariant::Omega, Scope::Model)
        .is_some_and(|p| p.predicted == Predicted::Infinite);
    ensure(tagged, || "classify does not tag omega as infinite".into())?;
    Ok(format!(
        "verified tuples of sizes {sizes:?}; classify tags omega = inf"
    ))
}

fn finite_interval_unions() -> Outcome {
    let mut notes = Vec::new();
    for (name, model) in [
        ("B(C3)", block(&[3])),
        ("one mixed C2", mixed(1)),
        ("rank one C3", rank1_c3()),
    ] {
        ensure(pi_bijective(&model), || {
            format!("{name}: pi is not bijective")
        })?;
        let scan = Scan::new(&model, &bound()).map_err(|e| e.to_string())?;
        for k in 2..=5 {
            let u = scan.union_of_lengths(k);
            ensure(u.is_interval(), || {
                format!("{name}: U_{k} = {:?} is not an interval", u.as_set())
            })?;
        }
        notes.push(format!("{name} ({} elements)", scan.elements.len()));
    }
    Ok(format!("U_2..U_5 intervals for {}", notes.join(", ")))
}

fn theta_transfer() -> Outcome {
    let model = theta_c2();
    let check = check_transfer(&model, TransferKind::Theta, &bound(), 20_000_000)
        .map_err(|e| e.to_string())?;
    let total = model.elements_within(&bound()).len();
    for axiom in [
        TransferAxiom::Surjective,
        TransferAxiom::TrivialKernel,
        TransferAxiom::Lengths,
        TransferAxiom::FiberChains,
    ] {
        let c = check
            .checks
            .iter()
            .find(|c| c.axiom == axiom)
            .ok_or_else(|| format!("{axiom:?} not checked"))?;
        ensure(c.passed(), || {
            format!("{axiom:?}: {}", c.witness.clone().unwrap_or_default())
        })?;
        if axiom == TransferAxiom::Lengths {
            ensure(c.samples == total, || {
                format!("lengths compared on {} of {total} elements", c.samples)
            })?;
        }
    }
    ensure(check.passed(), || "some transfer axiom failed".into())?;
    Ok(format!(
        "surjective, trivial kernel, equal lengths and 2-chain fibers on all {total} elements"
    ))
}

fn property_suites() -> Outcome {
    let fixtures: Vec<(&str, BlockModel)> = vec![
        ("B(C3)", block(&[3])),
        ("B(C2+C2)", block(&[2, 2])),
        ("bifurcus", bifurcus()),
        ("two bifurcus", two_bifurcus()),
        ("two mixed", mixed(2)),
        ("rank two C2", rank2_c2()),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut checked = 0usize;
    for (name, model) in &fixtures {
        let pool = model.elements_within(&bound());
        for _ in 0..200 {
            let a = pool.choose(&mut rng).expect("non-empty pool");
            element_properties(model, a)
                .map_err(|e| format!("{name}: {} {e}", model.format_element(a)))?;
            checked += 1;
        }
        if model.group().is_trivial() {
            for a in pool
                .iter()
                .filter(|a| a.free_length() == 0 && a.support_size() == 1)
            {
                local_length_bounds(model, a)
                    .map_err(|e| format!("{name}: {} {e}", model.format_element(a)))?;
            }
        }
    }
    Ok(format!(
        "{checked} sampled elements across {} instances, no violations",
        fixtures.len()
    ))
}

fn element_properties(model: &BlockModel, a: &ModelElement) -> Result<(), String> {
    let set = factorizations(model, a).map_err(|e| e.to_string())?;
    let n = set.len();
    let cap = n.min(24);
    for i in 0..n {
        ensure(set.distance(i, i) == 0, || "d(z, z) != 0".into())?;
    }
    for i in 0..cap {
        for j in 0..cap {
            let d = set.distance(i, j);
            ensure(d == set.distance(j, i), || "d is not symmetric".into())?;
            if i != j {
                let gap = set.length_of(i).abs_diff(set.length_of(j));
                ensure(d > 0, || "distinct factorizations at distance 0".into())?;
                ensure(2 + gap <= d, || format!("2 + {gap} > d = {d}"))?;
            }
            for k in 0..cap {
                ensure(set.distance(i, k) <= d + set.distance(j, k), || {
                    "triangle inequality".into()
                })?;
            }
        }
    }

    let refined = catenary_refined(model, a).map_err(|e| e.to_string())?;
    let c = factorlab_core::invariants::catenary(model, a).map_err(|e| e.to_string())?;
    let lengths = set.lengths();
    let max_l = lengths.max().unwrap_or(0);
    ensure(
        refined.monotone == refined.equal.max(refined.adjacent),
        || "c_mon != max(c_eq, c_adj)".into(),
    )?;
    ensure(c <= refined.monotone && refined.monotone <= max_l, || {
        format!("c = {c}, c_mon = {}, max L = {max_l}", refined.monotone)
    })?;
    if lengths.len() > 1 {
        let values: Vec<u32> = lengths.values().collect();
        let max_gap = values.windows(2).map(|w| w[1] - w[0]).max().unwrap();
        ensure(c >= 2 + max_gap, || format!("c = {c} < 2 + {max_gap}"))?;
    }

    let closed = model.is_atom(a).map_err(|e| e.to_string())?;
    let searched = model.is_atom_by_search(a).map_err(|e| e.to_string())?;
    ensure(closed == searched, || {
        format!("atom test {closed}, search {searched}")
    })?;

    let engine: BTreeSet<Vec<ModelElement>> = set
        .to_vec()
        .into_iter()
        .map(|z| {
            let mut v: Vec<_> = z.atoms().cloned().collect();
            v.sort();
            v
        })
        .collect();
    let oracle = oracle_factorizations(model, a, 50_000_000).map_err(|e| e.to_string())?;
    ensure(engine == oracle, || {
        format!(
            "engine {} vs oracle {} factorizations",
            engine.len(),
            oracle.len()
        )
    })
}

/// In a single seminormal finitely primary component, `min L ≤ 2` and
/// `max L ≤ min k_j`.
fn local_length_bounds(model: &BlockModel, a: &ModelElement) -> Result<(), String> {
    let lengths = factorizations(model, a)
        .map_err(|e| e.to_string())?
        .lengths();
    let part = a
        .parts()
        .iter()
        .find(|p| !p.is_identity())
        .expect("local element");
    let min_k = part.min_exponent().expect("non-identity part");
    let (lo, hi) = (lengths.min().unwrap(), lengths.max().unwrap());
    ensure(lo <= 2 && hi <= min_k, || {
        format!("L = {:?}, min k = {min_k}", lengths.as_set())
    })
}

fn time_limit(name: &str, start: Instant, seconds: u64) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t <= Duration::from_secs(seconds), || {
        format!("{name} took {:.1}s, limit {seconds}s", t.as_secs_f64())
    })
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("half-factoriality dichotomy", 20, half_factoriality),
        ("Davenport constants", 10, davenport_constants),
        (
            "rank-2 component: delta, c, c_adj, unions",
            30,
            single_bifurcus_lengths,
        ),
        (
            "rank-2 component: c_eq and c_mon",
            30,
            single_bifurcus_refined,
        ),
        ("two rank-2 components: c_eq = 5", 60, two_bifurcus_refined),
        (
            "mixed components over C2: c, omega, delta",
            60,
            mixed_components,
        ),
        ("rank-2 over C2: omega unbounded", 60, omega_unbounded),
        (
            "pi bijective: unions are intervals",
            60,
            finite_interval_unions,
        ),
        ("theta transfer axioms", 60, theta_transfer),
        ("property suites on random elements", 120, property_suites),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed().as_secs_f64();
        let outcome = outcome.and_then(|detail| {
            if elapsed > *limit as f64 {
                Err(format!("took {elapsed:.1}s, limit {limit}s"))
            } else {
                Ok(detail)
            }
        });
        match outcome {
            Ok(detail) => println!(
                "PASS criterion {:>2}: {name} ({elapsed:.2}s): {detail}",
                i + 1
            ),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {:>2}: {name} ({elapsed:.2}s): {why}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
