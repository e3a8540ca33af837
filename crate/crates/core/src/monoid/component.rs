use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{AbelianGroup, GroupElement};

/// A reduced seminormal finitely primary monoid of rank `s`, given inside
/// `F = E × [q_1, …, q_s]` as `q_1 ⋯ q_s F ∪ {1}`, together with the class
/// data that places it in a block monoid.
///
/// `unit_group` is the finite group `E` of units of `F` (modulo the trivial
/// units of the reduced monoid). `unit_class_images[i]` is the class of the
/// `i`-th invariant-factor generator of `E`; `prime_classes[j]` is `[q_j]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LocalComponent {
    rank: usize,
    unit_group: AbelianGroup,
    unit_class_images: Vec<GroupElement>,
    prime_classes: Vec<GroupElement>,
}

impl LocalComponent {
    pub fn new(
        rank: usize,
        unit_group: AbelianGroup,
        unit_class_images: Vec<GroupElement>,
        prime_classes: Vec<GroupElement>,
    ) -> Self {
        LocalComponent {
            rank,
            unit_group,
            unit_class_images,
            prime_classes,
        }
    }

    /// A component whose classes are all zero in `class_group`.
    pub fn unclassed(rank: usize, unit_group: AbelianGroup, class_group: &AbelianGroup) -> Self {
        let images = vec![class_group.zero(); unit_group.rank()];
        let primes = vec![class_group.zero(); rank];
        LocalComponent::new(rank, unit_group, images, primes)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn unit_group(&self) -> &AbelianGroup {
        &self.unit_group
    }

    pub fn unit_class_images(&self) -> &[GroupElement] {
        &self.unit_class_images
    }

    pub fn prime_classes(&self) -> &[GroupElement] {
        &self.prime_classes
    }

    pub(crate) fn validate(&self, index: usize, g: &AbelianGroup) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidModel(format!("component {index}: {msg}")));
        if self.rank == 0 {
            return bad("rank must be at least 1".into());
        }
        if self.prime_classes.len() != self.rank {
            return bad(format!(
                "{} prime classes given for rank {}",
                self.prime_classes.len(),
                self.rank
            ));
        }
        if self.unit_class_images.len() != self.unit_group.rank() {
            return bad(format!(
                "{} unit class images given for a unit group with {} generators",
                self.unit_class_images.len(),
                self.unit_group.rank()
            ));
        }
        for c in self.prime_classes.iter().chain(&self.unit_class_images) {
            if !g.contains(c) {
                return bad(format!("class {c} is not an element of {g}"));
            }
        }
        for (img, &d) in self
            .unit_class_images
            .iter()
            .zip(self.unit_group.invariant_factors())
        {
            if g.scale_unchecked(d as u64, img) != g.zero() {
                return bad(format!(
                    "generator of order {d} mapped to {img}, whose order does not divide {d}"
                ));
            }
        }
        Ok(())
    }

    /// The class of a unit under the map `E → G`.
    pub fn unit_class(&self, g: &AbelianGroup, unit: &GroupElement) -> GroupElement {
        let mut acc = g.zero();
        for (&r, img) in unit.residues().iter().zip(&self.unit_class_images) {
            acc = g.add_unchecked(&acc, &g.scale_unchecked(r as u64, img));
        }
        acc
    }

    /// `ι(t)` for a part of this component.
    pub fn class_of(&self, g: &AbelianGroup, part: &LocalElement) -> GroupElement {
        match part {
            LocalElement::Identity => g.zero(),
            LocalElement::Power { unit, exponents } => {
                let mut acc = self.unit_class(g, unit);
                for (&k, c) in exponents.iter().zip(&self.prime_classes) {
                    acc = g.add_unchecked(&acc, &g.scale_unchecked(k as u64, c));
                }
                acc
            }
        }
    }

    /// True when the unit-class map `E → G` is the zero map.
    pub fn unit_classes_trivial(&self, g: &AbelianGroup) -> bool {
        self.unit_class_images.iter().all(|c| *c == g.zero())
    }

    /// Distinct classes of the atoms `ε q_1^{k_1} ⋯ q_s^{k_s}` of this
    /// component with exponents in `[1, max_exp]` and `min k = 1`.
    pub fn atom_classes(&self, g: &AbelianGroup, max_exp: u32) -> Vec<GroupElement> {
        let mut out = std::collections::BTreeSet::new();
        let units = self.unit_group.elements();
        let mut exps = vec![1u32; self.rank];
        loop {
            if exps.iter().min() == Some(&1) {
                for u in &units {
                    let part = LocalElement::Power {
                        unit: u.clone(),
                        exponents: exps.clone(),
                    };
                    out.insert(self.class_of(g, &part));
                }
            }
            if !next_in_box(&mut exps, 1, max_exp) {
                break;
            }
        }
        out.into_iter().collect()
    }

    /// Atom classes of the component vary, i.e. its atoms do not all lie in
    /// one class. For rank one this is exactly a non-trivial unit-class map.
    pub fn is_mixed(&self, g: &AbelianGroup) -> bool {
        // Classes of atoms with exponents ≤ exp(G) + 1 already realize every
        // residue of k_j modulo exp(G).
        self.atom_classes(g, g.exponent() + 1).len() > 1
    }

    /// Exponent 0 is not allowed for a non-identity element.
    pub(crate) fn check_part(&self, part: &LocalElement) -> Result<()> {
        match part {
            LocalElement::Identity => Ok(()),
            LocalElement::Power { unit, exponents } => {
                if exponents.len() != self.rank {
                    return Err(Error::ElementModelMismatch(format!(
                        "expected {} exponents, found {}",
                        self.rank,
                        exponents.len()
                    )));
                }
                if exponents.contains(&0) {
                    return Err(Error::ElementModelMismatch(
                        "a non-identity local element needs every exponent ≥ 1".into(),
                    ));
                }
                if !self.unit_group.contains(unit) {
                    return Err(Error::ElementModelMismatch(format!(
                        "unit {unit} is not in {}",
                        self.unit_group
                    )));
                }
                Ok(())
            }
        }
    }
}

/// An element `ε q_1^{k_1} ⋯ q_s^{k_s}` of a reduced seminormal local
/// component, or its identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LocalElement {
    Identity,
    Power {
        unit: GroupElement,
        exponents: Vec<u32>,
    },
}

impl LocalElement {
    pub fn power(unit: GroupElement, exponents: Vec<u32>) -> Self {
        LocalElement::Power { unit, exponents }
    }

    pub fn is_identity(&self) -> bool {
        matches!(self, LocalElement::Identity)
    }

    pub fn exponent_sum(&self) -> u32 {
        match self {
            LocalElement::Identity => 0,
            LocalElement::Power { exponents, .. } => exponents.iter().sum(),
        }
    }

    pub fn max_exponent(&self) -> u32 {
        match self {
            LocalElement::Identity => 0,
            LocalElement::Power { exponents, .. } => exponents.iter().copied().max().unwrap_or(0),
        }
    }

    pub fn min_exponent(&self) -> Option<u32> {
        match self {
            LocalElement::Identity => None,
            LocalElement::Power { exponents, .. } => exponents.iter().copied().min(),
        }
    }
}

/// Advances `v` through the box `[lo, hi]^n` in lexicographic order.
pub(crate) fn next_in_box(v: &mut [u32], lo: u32, hi: u32) -> bool {
    let mut i = v.len();
    while i > 0 {
        i -= 1;
        if v[i] < hi {
            v[i] += 1;
            return true;
        }
        v[i] = lo;
    }
    false
}
