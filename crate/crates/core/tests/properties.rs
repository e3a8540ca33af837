mod common;

use common::*;
use factorlab_core::factorization::factorizations;
use factorlab_core::invariants::{catenary_refined, summarize};
use factorlab_core::verification::oracle_factorizations;
use factorlab_core::{BlockModel, LocalElement, ModelElement};
use proptest::prelude::*;

fn models() -> Vec<BlockModel> {
    vec![
        block(&[3]),
        block(&[2, 2]),
        bifurcus(),
        two_bifurcus(),
        mixed(2),
        rank2_c2(),
    ]
}

/// A raw element of the ambient monoid, not necessarily in the model.
fn raw_element(model: &BlockModel, max_free: u32, max_exp: u32) -> BoxedStrategy<ModelElement> {
    let free = proptest::collection::vec(0..=max_free, model.prime_classes().len());
    let parts: Vec<BoxedStrategy<LocalElement>> = model
        .components()
        .iter()
        .map(|c| {
            let units = c.unit_group().elements();
            let rank = c.rank();
            prop_oneof![
                Just(LocalElement::Identity),
                (
                    proptest::sample::select(units),
                    proptest::collection::vec(1..=max_exp, rank)
                )
                    .prop_map(|(u, k)| LocalElement::power(u, k)),
            ]
            .boxed()
        })
        .collect();
    (free, parts)
        .prop_map(|(f, p)| ModelElement::new(f, p))
        .boxed()
}

fn member(
    index: usize,
    max_free: u32,
    max_exp: u32,
) -> impl Strategy<Value = (BlockModel, ModelElement)> {
    let model = models().swap_remove(index);
    raw_element(&model, max_free, max_exp)
        .prop_filter("in the monoid", {
            let m = model.clone();
            move |x| m.contains(x).unwrap()
        })
        .prop_map(move |x| (model.clone(), x))
}

fn any_member(max_free: u32, max_exp: u32) -> impl Strategy<Value = (BlockModel, ModelElement)> {
    (0..models().len()).prop_flat_map(move |i| member(i, max_free, max_exp))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 96, ..ProptestConfig::default() })]

    #[test]
    fn every_factorization_multiplies_back((model, a) in any_member(3, 4)) {
        let set = factorizations(&model, &a).unwrap();
        prop_assert!(!set.is_empty() || a.is_identity());
        for z in set.to_vec() {
            prop_assert_eq!(z.product(&model).unwrap(), a.clone());
            for u in z.atoms() {
                prop_assert!(model.is_atom(u).unwrap());
            }
        }
    }

    #[test]
    fn engine_matches_oracle((model, a) in any_member(3, 3)) {
        let engine: std::collections::BTreeSet<Vec<ModelElement>> = factorizations(&model, &a)
            .unwrap()
            .to_vec()
            .into_iter()
            .map(|z| {
                let mut v: Vec<_> = z.atoms().cloned().collect();
                v.sort();
                v
            })
            .collect();
        prop_assert_eq!(engine, oracle_factorizations(&model, &a, 10_000_000).unwrap());
    }

    #[test]
    fn lengths_add_under_products((model, a) in any_member(2, 3), seed in 0usize..1000) {
        let pool = model.elements_within(&factorlab_core::DegreeBound::new(2, 3, 4));
        let b = &pool[seed % pool.len()];
        let ab = model.multiply(&a, b).unwrap();
        let la = factorizations(&model, &a).unwrap().lengths();
        let lb = factorizations(&model, b).unwrap().lengths();
        let lab = factorizations(&model, &ab).unwrap().lengths();
        for l in la.sumset(&lb).values() {
            prop_assert!(lab.contains(l), "{} not in L(ab)", l);
        }
        prop_assert_eq!(model.divide_exact(&a, &ab).unwrap(), Some(b.clone()));
    }

    #[test]
    fn refined_catenary_is_consistent((model, a) in any_member(3, 4)) {
        let s = summarize(&model, &a, 50_000_000).unwrap();
        let r = catenary_refined(&model, &a).unwrap();
        prop_assert_eq!(s.refined, r);
        prop_assert!(s.catenary <= r.monotone);
        prop_assert_eq!(r.monotone, r.equal.max(r.adjacent));
        if s.factorization_count > 1 {
            prop_assert!(s.catenary >= 2);
        } else {
            prop_assert_eq!(s.catenary, 0);
        }
    }

    #[test]
    fn atom_test_matches_search((model, a) in any_member(4, 5)) {
        prop_assert_eq!(model.is_atom(&a).unwrap(), model.is_atom_by_search(&a).unwrap());
    }
}
