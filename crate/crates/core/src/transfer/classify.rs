use serde::{Deserialize, Serialize};

use crate::monoid::BlockModel;

use super::{pi_bijective, vartheta_iso};

/// Which invariant a prediction is about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Invariant {
    Catenary,
    CatenaryEq,
    CatenaryAdj,
    CatenaryMon,
    Delta,
    Unions,
    Omega,
    HalfFactorial,
}

impl std::fmt::Display for Invariant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Invariant::Catenary => "c",
            Invariant::CatenaryEq => "c_eq",
            Invariant::CatenaryAdj => "c_adj",
            Invariant::CatenaryMon => "c_mon",
            Invariant::Delta => "delta",
            Invariant::Unions => "unions",
            Invariant::Omega => "omega",
            Invariant::HalfFactorial => "half_factorial",
        })
    }
}

/// The predicted value or shape of an invariant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Predicted {
    Exact {
        value: u32,
    },
    AtMost {
        value: u32,
    },
    Infinite,
    Set {
        values: Vec<u32>,
    },
    Bool {
        value: bool,
    },
    /// `U_k = {k}` for every `k`.
    Singleton,
    /// `U_k = N≥start` for every `k ≥ start`.
    AllFrom {
        start: u32,
    },
    /// Every `U_k` with `k ≥ 2` is a finite interval.
    FiniteInterval,
    /// For `k ∈ {2, 3}` and `ℓ ≥ 2`, `ℓ ∈ U_k` or `ℓ + 1 ∈ U_k`; for `k ≥ 4`,
    /// `N≥4 ⊆ U_k ⊆ N≥2`.
    NeighborCover,
}

impl std::fmt::Display for Predicted {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Predicted::Exact { value } => write!(f, "= {value}"),
            Predicted::AtMost { value } => write!(f, "<= {value}"),
            Predicted::Infinite => f.write_str("= inf"),
            Predicted::Set { values } => {
                let v: Vec<String> = values.iter().map(u32::to_string).collect();
                write!(f, "= {{{}}}", v.join(","))
            }
            Predicted::Bool { value } => write!(f, "= {value}"),
            Predicted::Singleton => f.write_str("U_k = {k}"),
            Predicted::AllFrom { start } => write!(f, "U_k = N>={start}"),
            Predicted::FiniteInterval => f.write_str("U_k finite interval"),
            Predicted::NeighborCover => f.write_str("l or l+1 in U_k (k<=3), N>=4 in U_k (k>=4)"),
        }
    }
}

/// The monoid a prediction refers to: the model itself, or its ambient
/// monoid `F(P) × T` (the model with the class group collapsed).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scope {
    Model,
    Ambient,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prediction {
    pub invariant: Invariant,
    pub predicted: Predicted,
    pub scope: Scope,
    /// Stable identifier of the structural statement that yields the value.
    pub clause: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TransferKind {
    None,
    Beta,
    Theta,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub pi_bijective: bool,
    /// `None` when some component has rank at least two.
    pub vartheta_iso: Option<bool>,
    /// `None` when no structural criterion decides.
    pub half_factorial_predicted: Option<bool>,
    pub predictions: Vec<Prediction>,
    pub applicable_transfer: TransferKind,
    pub notes: Vec<String>,
}

impl ClassificationReport {
    /// The first prediction for `invariant` in `scope`.
    pub fn find(&self, invariant: Invariant, scope: Scope) -> Option<&Prediction> {
        self.predictions
            .iter()
            .find(|p| p.invariant == invariant && p.scope == scope)
    }

    pub fn for_scope(&self, scope: Scope) -> impl Iterator<Item = &Prediction> {
        self.predictions.iter().filter(move |p| p.scope == scope)
    }
}

pub mod clause {
    pub const LOCAL_LOW_RANK: &str = "coproduct without bifurcus factors: c <= 2";
    pub const LOCAL_UNIT_SPLIT: &str = "rank-one factor with non-trivial units: c = 2";
    pub const LOCAL_HALF_FACTORIAL: &str = "rank-one seminormal factors are half-factorial";
    pub const BIFURCUS: &str = "some bifurcus factor: U_k = N>=2, delta = {1}, c = c_adj = 3";
    pub const BIFURCUS_ONE: &str = "exactly one bifurcus factor: c_eq = 2, c_mon = 3";
    pub const BIFURCUS_MANY: &str = "at least two bifurcus factors: c_eq = c_mon = 5";
    pub const HF_CRITERION: &str = "half-factorial iff |G| <= 2, pi bijective, vartheta iso";
    pub const ONE_MIXED: &str =
        "|G| = 2, pi bijective, one mixed component: c = omega = 3, delta = {1}";
    pub const MANY_MIXED: &str =
        "|G| = 2, pi bijective, two or more mixed components: c = omega = 4, delta = [1,2]";
    pub const OMEGA_INFINITE: &str = "|G| = 2, pi not bijective: omega = inf";
    pub const UNIONS_INTERVAL: &str = "pi bijective, every class has a prime: U_k finite interval";
    pub const UNIONS_NEIGHBOR: &str = "pi not bijective, every class has a prime: l or l+1 in U_k";
}

/// Predictions for a monoid over the trivial class group: the coproduct of
/// its local components and a factorial free part.
fn local_predictions(model: &BlockModel, scope: Scope, out: &mut Vec<Prediction>) {
    let mut push = |invariant, predicted, clause: &str| {
        out.push(Prediction {
            invariant,
            predicted,
            scope,
            clause: clause.to_string(),
        })
    };
    let bifurcus = model.components().iter().filter(|c| c.rank() >= 2).count();
    if bifurcus == 0 {
        let split = model
            .components()
            .iter()
            .any(|c| c.unit_group().order() >= 2);
        if split {
            push(
                Invariant::Catenary,
                Predicted::Exact { value: 2 },
                clause::LOCAL_UNIT_SPLIT,
            );
        } else {
            push(
                Invariant::Catenary,
                Predicted::AtMost { value: 2 },
                clause::LOCAL_LOW_RANK,
            );
        }
        push(
            Invariant::HalfFactorial,
            Predicted::Bool { value: true },
            clause::LOCAL_HALF_FACTORIAL,
        );
        push(
            Invariant::Delta,
            Predicted::Set { values: vec![] },
            clause::LOCAL_HALF_FACTORIAL,
        );
        push(
            Invariant::Unions,
            Predicted::Singleton,
            clause::LOCAL_HALF_FACTORIAL,
        );
        return;
    }
    push(
        Invariant::Unions,
        Predicted::AllFrom { start: 2 },
        clause::BIFURCUS,
    );
    push(
        Invariant::Delta,
        Predicted::Set { values: vec![1] },
        clause::BIFURCUS,
    );
    push(
        Invariant::Catenary,
        Predicted::Exact { value: 3 },
        clause::BIFURCUS,
    );
    push(
        Invariant::CatenaryAdj,
        Predicted::Exact { value: 3 },
        clause::BIFURCUS,
    );
    push(
        Invariant::HalfFactorial,
        Predicted::Bool { value: false },
        clause::BIFURCUS,
    );
    if bifurcus == 1 {
        push(
            Invariant::CatenaryEq,
            Predicted::Exact { value: 2 },
            clause::BIFURCUS_ONE,
        );
        push(
            Invariant::CatenaryMon,
            Predicted::Exact { value: 3 },
            clause::BIFURCUS_ONE,
        );
    } else {
        push(
            Invariant::CatenaryEq,
            Predicted::Exact { value: 5 },
            clause::BIFURCUS_MANY,
        );
        push(
            Invariant::CatenaryMon,
            Predicted::Exact { value: 5 },
            clause::BIFURCUS_MANY,
        );
    }
}

/// Emits every prediction whose hypotheses the model meets.
///
/// Over the trivial class group the model is its own ambient monoid and the
/// coproduct statements apply to it directly. Otherwise they are stated for
/// the ambient monoid, and the class-group statements apply to the model
/// when every class contains a free prime.
pub fn classify(model: &BlockModel) -> ClassificationReport {
    let g = model.group();
    let pi = pi_bijective(model);
    let vartheta = vartheta_iso(model).ok();
    let mut predictions = Vec::new();
    let mut notes = Vec::new();

    if g.is_trivial() {
        local_predictions(model, Scope::Model, &mut predictions);
    } else {
        local_predictions(
            &super::ambient_model(model),
            Scope::Ambient,
            &mut predictions,
        );
    }

    let all_classes = model.every_class_has_prime();
    let mut half_factorial = None;
    if g.is_trivial() {
        half_factorial = Some(pi);
    } else if !all_classes {
        notes.push(
            "some class contains no free prime; class-group statements do not apply".to_string(),
        );
    } else {
        let mut push = |invariant, predicted, clause: &str| {
            predictions.push(Prediction {
                invariant,
                predicted,
                scope: Scope::Model,
                clause: clause.to_string(),
            })
        };
        let hf = g.order() <= 2 && pi && vartheta == Some(true);
        half_factorial = Some(hf);
        push(
            Invariant::HalfFactorial,
            Predicted::Bool { value: hf },
            clause::HF_CRITERION,
        );
        if hf {
            push(
                Invariant::Catenary,
                Predicted::AtMost { value: 2 },
                clause::HF_CRITERION,
            );
            push(
                Invariant::Delta,
                Predicted::Set { values: vec![] },
                clause::HF_CRITERION,
            );
            push(
                Invariant::Unions,
                Predicted::Singleton,
                clause::HF_CRITERION,
            );
        } else if g.order() == 2 && pi {
            let mixed = model.components().iter().filter(|c| c.is_mixed(g)).count();
            if mixed == 1 {
                push(
                    Invariant::Catenary,
                    Predicted::Exact { value: 3 },
                    clause::ONE_MIXED,
                );
                push(
                    Invariant::Omega,
                    Predicted::Exact { value: 3 },
                    clause::ONE_MIXED,
                );
                push(
                    Invariant::Delta,
                    Predicted::Set { values: vec![1] },
                    clause::ONE_MIXED,
                );
            } else {
                push(
                    Invariant::Catenary,
                    Predicted::Exact { value: 4 },
                    clause::MANY_MIXED,
                );
                push(
                    Invariant::Omega,
                    Predicted::Exact { value: 4 },
                    clause::MANY_MIXED,
                );
                push(
                    Invariant::Delta,
                    Predicted::Set { values: vec![1, 2] },
                    clause::MANY_MIXED,
                );
            }
        } else if g.order() == 2 {
            push(
                Invariant::Omega,
                Predicted::Infinite,
                clause::OMEGA_INFINITE,
            );
        }
        if pi {
            if !hf {
                push(
                    Invariant::Unions,
                    Predicted::FiniteInterval,
                    clause::UNIONS_INTERVAL,
                );
            }
        } else {
            push(
                Invariant::Unions,
                Predicted::NeighborCover,
                clause::UNIONS_NEIGHBOR,
            );
        }
        if g.order() >= 3 && pi && vartheta == Some(false) {
            notes.push("|G| >= 3 with mixed components: no exact values are known".to_string());
        }
    }

    let applicable_transfer = if pi && vartheta == Some(true) && all_classes {
        TransferKind::Theta
    } else if !model.primes_are_unlabeled() {
        TransferKind::Beta
    } else {
        TransferKind::None
    };

    ClassificationReport {
        pi_bijective: pi,
        vartheta_iso: vartheta,
        half_factorial_predicted: half_factorial,
        predictions,
        applicable_transfer,
        notes,
    }
}
