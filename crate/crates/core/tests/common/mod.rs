#![allow(dead_code)]

use factorlab_core::{AbelianGroup, BlockModel, FreeClasses, GroupElement, LocalComponent};

pub fn g(r: &[u32]) -> GroupElement {
    GroupElement::new(r.to_vec())
}

/// `B(G)` with one free prime per class.
pub fn block(factors: &[u32]) -> BlockModel {
    BlockModel::new(
        AbelianGroup::from_invariants(factors).unwrap(),
        vec![],
        FreeClasses::All,
    )
    .unwrap()
}

fn bifurcus_component() -> LocalComponent {
    LocalComponent::unclassed(2, AbelianGroup::trivial(), &AbelianGroup::trivial())
}

/// Trivial class group, one rank-2 component and one free prime.
pub fn bifurcus() -> BlockModel {
    BlockModel::new(
        AbelianGroup::trivial(),
        vec![bifurcus_component()],
        FreeClasses::All,
    )
    .unwrap()
}

/// Trivial class group, two rank-2 components, no free primes.
pub fn two_bifurcus() -> BlockModel {
    BlockModel::new(
        AbelianGroup::trivial(),
        vec![bifurcus_component(), bifurcus_component()],
        FreeClasses::Listed(vec![]),
    )
    .unwrap()
}

/// Rank one over `C_2`, units hit the non-zero class and so does the prime.
fn mixed_component() -> LocalComponent {
    LocalComponent::new(
        1,
        AbelianGroup::cyclic(2).unwrap(),
        vec![g(&[1])],
        vec![g(&[1])],
    )
}

pub fn mixed(count: usize) -> BlockModel {
    BlockModel::new(
        AbelianGroup::cyclic(2).unwrap(),
        vec![mixed_component(); count],
        FreeClasses::All,
    )
    .unwrap()
}

/// Rank two over `C_2` with primes in both classes; `π` is not bijective.
pub fn rank2_c2() -> BlockModel {
    BlockModel::new(
        AbelianGroup::cyclic(2).unwrap(),
        vec![LocalComponent::new(
            2,
            AbelianGroup::trivial(),
            vec![],
            vec![g(&[1]), g(&[0])],
        )],
        FreeClasses::All,
    )
    .unwrap()
}

/// Rank one over `C_2` with units in the zero class: `θ` is a transfer.
pub fn theta_c2() -> BlockModel {
    BlockModel::new(
        AbelianGroup::cyclic(2).unwrap(),
        vec![LocalComponent::new(
            1,
            AbelianGroup::cyclic(2).unwrap(),
            vec![g(&[0])],
            vec![g(&[1])],
        )],
        FreeClasses::All,
    )
    .unwrap()
}

/// Rank one over `C_3` with trivial units and a prime of class 1.
pub fn rank1_c3() -> BlockModel {
    BlockModel::new(
        AbelianGroup::cyclic(3).unwrap(),
        vec![LocalComponent::new(
            1,
            AbelianGroup::trivial(),
            vec![],
            vec![g(&[1])],
        )],
        FreeClasses::All,
    )
    .unwrap()
}
