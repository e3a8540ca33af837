use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factorization::factorizations_with_budget;
use crate::invariants::bottleneck;
use crate::monoid::{BlockModel, DegreeBound, ModelElement};

use super::{
    beta_target, require_theta_hypotheses, theta_sequence, theta_target, transfer_beta,
    TransferKind,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TransferAxiom {
    /// Every target element within the bound has a preimage.
    Surjective,
    /// Only the identity maps to the identity.
    TrivialKernel,
    /// Every split of `θ(a)` into two non-units lifts to a split of `a`.
    Lifting,
    /// `L(a) = L(θ(a))`.
    Lengths,
    /// Factorizations with the same image are connected by a 2-chain inside
    /// their fiber.
    FiberChains,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomCheck {
    pub axiom: TransferAxiom,
    pub samples: usize,
    /// First violation found, rendered in the element grammar.
    pub witness: Option<String>,
}

impl AxiomCheck {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransferCheck {
    pub map: String,
    pub bound: DegreeBound,
    pub checks: Vec<AxiomCheck>,
}

impl TransferCheck {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(AxiomCheck::passed)
    }
}

/// Checks the transfer axioms for `β` or `θ` on every element of `model`
/// within `bound`.
pub fn check_transfer(
    model: &BlockModel,
    kind: TransferKind,
    bound: &DegreeBound,
    budget: u64,
) -> Result<TransferCheck> {
    match kind {
        TransferKind::None => Err(Error::HypothesesNotMet("no transfer map selected".into())),
        TransferKind::Beta => {
            let target = beta_target(model);
            check_map("beta", model, &target, bound, budget, |a| {
                transfer_beta(model, a).expect("sample is a member")
            })
        }
        TransferKind::Theta => {
            require_theta_hypotheses(model)?;
            let target = theta_target(model);
            check_map("theta", model, &target, bound, budget, |a| {
                target
                    .free_element(&theta_sequence(model, a))
                    .expect("classes carry primes")
            })
        }
    }
}

/// Checks `θ ∘ β`, mapping a labeled-prime model straight to `B(G)`.
pub fn check_composed(
    model: &BlockModel,
    bound: &DegreeBound,
    budget: u64,
) -> Result<TransferCheck> {
    let middle = beta_target(model);
    require_theta_hypotheses(&middle)?;
    let target = theta_target(&middle);
    check_map("theta.beta", model, &target, bound, budget, |a| {
        let b = transfer_beta(model, a).expect("sample is a member");
        target
            .free_element(&theta_sequence(&middle, &b))
            .expect("classes carry primes")
    })
}

fn check_map<F>(
    name: &str,
    source: &BlockModel,
    target: &BlockModel,
    bound: &DegreeBound,
    budget: u64,
    map: F,
) -> Result<TransferCheck>
where
    F: Fn(&ModelElement) -> ModelElement,
{
    let samples = source.elements_within(bound);
    let n = samples.len();
    let mut checks = Vec::new();

    // A target element inside the bound has a preimage inside the bound
    // built from first-labeled free primes, so the bounded image must cover
    // the bounded target.
    let image: BTreeSet<ModelElement> = samples.iter().map(&map).collect();
    let missing = target
        .elements_within(bound)
        .into_iter()
        .find(|b| !image.contains(b));
    checks.push(AxiomCheck {
        axiom: TransferAxiom::Surjective,
        samples: n,
        witness: missing.map(|b| format!("no preimage for {}", target.format_element(&b))),
    });

    let kernel = samples
        .iter()
        .find(|a| map(a).is_identity())
        .map(|a| format!("{} maps to the identity", source.format_element(a)));
    checks.push(AxiomCheck {
        axiom: TransferAxiom::TrivialKernel,
        samples: n,
        witness: kernel,
    });

    let mut lifting = None;
    for a in &samples {
        let image_a = map(a);
        let lifted: BTreeSet<ModelElement> = source
            .proper_divisors_in_model(a)?
            .iter()
            .map(&map)
            .collect();
        if let Some(b) = target
            .proper_divisors_in_model(&image_a)?
            .into_iter()
            .find(|b| !lifted.contains(b))
        {
            lifting = Some(format!(
                "split of {} through {} does not lift to {}",
                target.format_element(&image_a),
                target.format_element(&b),
                source.format_element(a)
            ));
            break;
        }
    }
    checks.push(AxiomCheck {
        axiom: TransferAxiom::Lifting,
        samples: n,
        witness: lifting,
    });

    let mut lengths = None;
    let mut fibers = None;
    for a in &samples {
        let zs = factorizations_with_budget(source, a, budget)?;
        let image_a = map(a);
        let zt = factorizations_with_budget(target, &image_a, budget)?;
        if lengths.is_none() && zs.lengths() != zt.lengths() {
            lengths = Some(format!(
                "L({}) = {} but L({}) = {}",
                source.format_element(a),
                zs.lengths(),
                target.format_element(&image_a),
                zt.lengths()
            ));
        }
        if fibers.is_none() {
            let atom_images: Vec<ModelElement> = zs.atoms().iter().map(&map).collect();
            let mut by_image: BTreeMap<Vec<ModelElement>, Vec<usize>> = BTreeMap::new();
            for (i, z) in zs.indexed().iter().enumerate() {
                let mut img = Vec::new();
                for &(atom, count) in z {
                    for _ in 0..count {
                        img.push(atom_images[atom as usize].clone());
                    }
                }
                img.sort();
                by_image.entry(img).or_default().push(i);
            }
            for members in by_image.values() {
                let c = bottleneck(&zs, members);
                if c > 2 {
                    fibers = Some(format!(
                        "fiber of {} needs a {c}-chain",
                        source.format_element(a)
                    ));
                    break;
                }
            }
        }
        if lengths.is_some() && fibers.is_some() {
            break;
        }
    }
    checks.push(AxiomCheck {
        axiom: TransferAxiom::Lengths,
        samples: n,
        witness: lengths,
    });
    checks.push(AxiomCheck {
        axiom: TransferAxiom::FiberChains,
        samples: n,
        witness: fibers,
    });

    Ok(TransferCheck {
        map: name.to_string(),
        bound: *bound,
        checks,
    })
}
