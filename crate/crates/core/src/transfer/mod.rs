//! Structural predicates, the transfer homomorphisms `β` and `θ`, checks of
//! the transfer axioms, and classification of a model's arithmetic.

mod check;
mod classify;

pub use check::{check_composed, check_transfer, AxiomCheck, TransferAxiom, TransferCheck};
pub use classify::{
    classify, clause, ClassificationReport, Invariant, Predicted, Prediction, Scope, TransferKind,
};

use crate::error::{Error, Result};
use crate::group::{AbelianGroup, GroupElement};
use crate::monoid::{BlockModel, FreeClasses, LocalComponent, LocalElement, ModelElement};

/// Every component has rank one.
pub fn pi_bijective(model: &BlockModel) -> bool {
    model.components().iter().all(|c| c.rank() == 1)
}

/// Every rank-one component has all its atoms `εq` in one class, that is, its
/// unit-class map is zero.
pub fn vartheta_iso(model: &BlockModel) -> Result<bool> {
    for (i, c) in model.components().iter().enumerate() {
        if c.rank() != 1 {
            return Err(Error::RankNotOne {
                component: i,
                rank: c.rank(),
            });
        }
    }
    Ok(model
        .components()
        .iter()
        .all(|c| c.unit_classes_trivial(model.group())))
}

/// The ambient monoid `F(P) × T` as a model over the trivial group: same
/// components, and one free prime if the model has any.
pub fn ambient_model(model: &BlockModel) -> BlockModel {
    let trivial = AbelianGroup::trivial();
    let components = model
        .components()
        .iter()
        .map(|c| LocalComponent::unclassed(c.rank(), c.unit_group().clone(), &trivial))
        .collect();
    let free = if model.prime_classes().is_empty() {
        FreeClasses::Listed(vec![])
    } else {
        FreeClasses::All
    };
    BlockModel::new(trivial, components, free).expect("collapsed model is valid")
}

/// The target of `β`: the same model with one free prime per occupied class.
pub fn beta_target(model: &BlockModel) -> BlockModel {
    BlockModel::new(
        model.group().clone(),
        model.components().to_vec(),
        FreeClasses::Listed(model.free_classes()),
    )
    .expect("collapsed model is valid")
}

/// `β`: replaces every labeled prime by its class and keeps the local parts.
/// The result lives in [`beta_target`].
pub fn transfer_beta(model: &BlockModel, a: &ModelElement) -> Result<ModelElement> {
    model.require_member(a)?;
    let classes = model.free_classes();
    let mut free = vec![0u32; classes.len()];
    for (label, &n) in a.free_counts().iter().enumerate() {
        let c = &model.prime_classes()[label];
        let slot = classes
            .iter()
            .position(|x| x == c)
            .expect("class is occupied");
        free[slot] += n;
    }
    Ok(ModelElement::new(free, a.parts().to_vec()))
}

/// The target of `θ`: the zero-sum monoid `B(G)`.
pub fn theta_target(model: &BlockModel) -> BlockModel {
    BlockModel::new(model.group().clone(), vec![], FreeClasses::All).expect("B(G) is valid")
}

fn require_theta_hypotheses(model: &BlockModel) -> Result<()> {
    if !pi_bijective(model) {
        return Err(Error::HypothesesNotMet(
            "some component has rank at least two".into(),
        ));
    }
    if !vartheta_iso(model)? {
        return Err(Error::HypothesesNotMet(
            "some component has a non-trivial unit-class map".into(),
        ));
    }
    if !model.every_class_has_prime() {
        return Err(Error::HypothesesNotMet(
            "some class contains no free prime".into(),
        ));
    }
    Ok(())
}

/// `θ` as a sequence over `G`: each free prime contributes its class, and a
/// part `ε q^k` of a rank-one component contributes `[q]` `k` times.
pub fn transfer_theta(model: &BlockModel, a: &ModelElement) -> Result<Vec<GroupElement>> {
    require_theta_hypotheses(model)?;
    model.require_member(a)?;
    Ok(theta_sequence(model, a))
}

fn theta_sequence(model: &BlockModel, a: &ModelElement) -> Vec<GroupElement> {
    let mut seq = Vec::new();
    for (label, &n) in a.free_counts().iter().enumerate() {
        for _ in 0..n {
            seq.push(model.prime_classes()[label].clone());
        }
    }
    for (comp, part) in model.components().iter().zip(a.parts()) {
        if let LocalElement::Power { exponents, .. } = part {
            for _ in 0..exponents[0] {
                seq.push(comp.prime_classes()[0].clone());
            }
        }
    }
    let g = model.group();
    seq.sort_by_key(|c| g.index_of(c));
    seq
}

/// `θ(a)` as an element of [`theta_target`].
pub fn transfer_theta_element(model: &BlockModel, a: &ModelElement) -> Result<ModelElement> {
    let seq = transfer_theta(model, a)?;
    theta_target(model).free_element(&seq)
}
