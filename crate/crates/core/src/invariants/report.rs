use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factorization::{LengthSet, DEFAULT_NODE_BUDGET};
use crate::monoid::{BlockModel, DegreeBound, ModelElement};
use crate::transfer::{classify, ClassificationReport, Invariant, Predicted, Prediction, Scope};

use super::omega::observe_omega;
use super::scan::Scan;

/// How far a monoid-level value can be trusted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Exactness {
    /// A structural statement pins the value and the scan attains it.
    Exact { clause: String },
    /// The value is what the scan inside `bound` saw.
    LowerBound { bound: DegreeBound },
}

impl Exactness {
    pub fn is_exact(&self) -> bool {
        matches!(self, Exactness::Exact { .. })
    }
}

impl std::fmt::Display for Exactness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Exactness::Exact { clause } => write!(f, "exact ({clause})"),
            Exactness::LowerBound { bound } => write!(f, "lower bound ({bound})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Omega {
    Finite(u32),
    Infinite,
}

impl std::fmt::Display for Omega {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Omega::Finite(n) => write!(f, "{n}"),
            Omega::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnionOfLengths {
    pub k: u32,
    pub set: LengthSet,
    pub is_interval: bool,
    pub rho: Option<u32>,
    pub lambda: Option<u32>,
    pub exactness: Exactness,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalfFactoriality {
    pub value: bool,
    pub exactness: Exactness,
    /// An element with more than one length, when one was found.
    pub witness: Option<(ModelElement, LengthSet)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoidOmega {
    pub value: Omega,
    /// Largest `ω(H, u)` seen inside the bound.
    pub observed: u32,
    pub atom: Option<ModelElement>,
    pub tuple: Vec<ModelElement>,
    pub exactness: Exactness,
}

/// Monoid-level invariants over a bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub bound: DegreeBound,
    pub elements_scanned: usize,
    pub delta: Vec<u32>,
    pub unions: BTreeMap<u32, UnionOfLengths>,
    pub rho: BTreeMap<u32, u32>,
    pub lambda: BTreeMap<u32, u32>,
    pub catenary: u32,
    pub catenary_eq: u32,
    pub catenary_adj: u32,
    pub catenary_mon: u32,
    pub omega: MonoidOmega,
    pub half_factorial: HalfFactoriality,
    /// Keyed by field name; unions use `unions.k`.
    pub exactness: BTreeMap<String, Exactness>,
}

pub(crate) const COUNTEREXAMPLE: &str = "element with several lengths found";

fn lower(bound: &DegreeBound) -> Exactness {
    Exactness::LowerBound { bound: *bound }
}

fn scalar_exactness(
    report: &ClassificationReport,
    invariant: Invariant,
    computed: u32,
    bound: &DegreeBound,
) -> Exactness {
    match report.find(invariant, Scope::Model) {
        Some(p) => match p.predicted {
            Predicted::Exact { value } | Predicted::AtMost { value } if value == computed => {
                Exactness::Exact {
                    clause: p.clause.clone(),
                }
            }
            _ => lower(bound),
        },
        None => lower(bound),
    }
}

fn delta_exactness(report: &ClassificationReport, delta: &[u32], bound: &DegreeBound) -> Exactness {
    match report.find(Invariant::Delta, Scope::Model) {
        Some(p)
            if p.predicted
                == (Predicted::Set {
                    values: delta.to_vec(),
                }) =>
        {
            Exactness::Exact {
                clause: p.clause.clone(),
            }
        }
        _ => lower(bound),
    }
}

fn union_from_scan(report: &ClassificationReport, scan: &Scan, k: u32) -> UnionOfLengths {
    let set = scan.union_of_lengths(k);
    let exactness = match report.find(Invariant::Unions, Scope::Model) {
        Some(p) if p.predicted == Predicted::Singleton && set.values().eq([k]) => {
            Exactness::Exact {
                clause: p.clause.clone(),
            }
        }
        _ => lower(&scan.bound),
    };
    UnionOfLengths {
        k,
        is_interval: set.is_interval(),
        rho: set.max(),
        lambda: set.min(),
        set,
        exactness,
    }
}

fn half_factorial_from_scan(report: &ClassificationReport, scan: &Scan) -> HalfFactoriality {
    let witness = scan
        .non_half_factorial_witness()
        .map(|s| (s.element.clone(), s.lengths.clone()));
    if witness.is_some() {
        return HalfFactoriality {
            value: false,
            exactness: Exactness::Exact {
                clause: COUNTEREXAMPLE.to_string(),
            },
            witness,
        };
    }
    match report.find(Invariant::HalfFactorial, Scope::Model) {
        Some(Prediction {
            predicted: Predicted::Bool { value },
            clause,
            ..
        }) => HalfFactoriality {
            value: *value,
            exactness: Exactness::Exact {
                clause: clause.clone(),
            },
            witness: None,
        },
        _ => HalfFactoriality {
            value: true,
            exactness: lower(&scan.bound),
            witness: None,
        },
    }
}

/// `ω(H)` over the atoms inside the bound, or `∞` when a structural
/// statement says so.
pub fn monoid_omega(model: &BlockModel, bound: &DegreeBound, budget: u64) -> Result<MonoidOmega> {
    monoid_omega_with(model, &classify(model), bound, budget)
}

fn monoid_omega_with(
    model: &BlockModel,
    report: &ClassificationReport,
    bound: &DegreeBound,
    budget: u64,
) -> Result<MonoidOmega> {
    let atoms = model.enumerate_atoms(bound).atoms;
    let observations = observe_omega(model, &atoms, bound, budget)?;
    let best = observations
        .iter()
        .fold(None::<&super::OmegaObservation>, |acc, o| match acc {
            Some(b) if b.value >= o.value => Some(b),
            _ => Some(o),
        });
    let observed = best.map_or(0, |o| o.value);
    let (value, exactness) = match report.find(Invariant::Omega, Scope::Model) {
        Some(p) if p.predicted == Predicted::Infinite => (
            Omega::Infinite,
            Exactness::Exact {
                clause: p.clause.clone(),
            },
        ),
        Some(p) if p.predicted == (Predicted::Exact { value: observed }) => (
            Omega::Finite(observed),
            Exactness::Exact {
                clause: p.clause.clone(),
            },
        ),
        _ => (Omega::Finite(observed), lower(bound)),
    };
    Ok(MonoidOmega {
        value,
        observed,
        atom: best.map(|o| o.atom.clone()),
        tuple: best.map(|o| o.witness.clone()).unwrap_or_default(),
        exactness,
    })
}

/// `Δ(H)` over the bound.
pub fn delta_set(model: &BlockModel, bound: &DegreeBound) -> Result<(BTreeSet<u32>, Exactness)> {
    let scan = Scan::new(model, bound)?;
    let delta = scan.delta();
    let v: Vec<u32> = delta.iter().copied().collect();
    Ok((delta, delta_exactness(&classify(model), &v, bound)))
}

/// `U_k(H)` over the bound.
pub fn union_of_lengths(model: &BlockModel, k: u32, bound: &DegreeBound) -> Result<UnionOfLengths> {
    if k == 0 {
        return Err(Error::HypothesesNotMet("k must be at least 1".into()));
    }
    let scan = Scan::new(model, bound)?;
    Ok(union_from_scan(&classify(model), &scan, k))
}

/// Whether every element inside the bound has a single length.
pub fn is_half_factorial(model: &BlockModel, bound: &DegreeBound) -> Result<HalfFactoriality> {
    let scan = Scan::new(model, bound)?;
    Ok(half_factorial_from_scan(&classify(model), &scan))
}

impl InvariantReport {
    pub fn compute(model: &BlockModel, bound: &DegreeBound) -> Result<Self> {
        Self::compute_with(model, bound, 2..=5, DEFAULT_NODE_BUDGET)
    }

    pub fn compute_with(
        model: &BlockModel,
        bound: &DegreeBound,
        ks: std::ops::RangeInclusive<u32>,
        budget: u64,
    ) -> Result<Self> {
        let scan = Scan::with_budget(model, bound, budget)?;
        Self::from_scan(model, &scan, ks, budget)
    }

    pub fn from_scan(
        model: &BlockModel,
        scan: &Scan,
        ks: std::ops::RangeInclusive<u32>,
        budget: u64,
    ) -> Result<Self> {
        let report = classify(model);
        let bound = &scan.bound;
        let mut exactness = BTreeMap::new();

        let delta: Vec<u32> = scan.delta().into_iter().collect();
        exactness.insert("delta".into(), delta_exactness(&report, &delta, bound));

        let mut unions = BTreeMap::new();
        let mut rho = BTreeMap::new();
        let mut lambda = BTreeMap::new();
        for k in ks {
            let u = union_from_scan(&report, scan, k);
            exactness.insert(format!("unions.{k}"), u.exactness.clone());
            if let Some(r) = u.rho {
                rho.insert(k, r);
            }
            if let Some(l) = u.lambda {
                lambda.insert(k, l);
            }
            unions.insert(k, u);
        }

        let catenary = scan.max_catenary();
        let refined = scan.max_refined();
        let fields = [
            ("catenary", Invariant::Catenary, catenary),
            ("catenary_eq", Invariant::CatenaryEq, refined.equal),
            ("catenary_adj", Invariant::CatenaryAdj, refined.adjacent),
        ];
        for (name, inv, value) in fields {
            exactness.insert(name.into(), scalar_exactness(&report, inv, value, bound));
        }
        let mut mon = scalar_exactness(&report, Invariant::CatenaryMon, refined.monotone, bound);
        if !mon.is_exact()
            && exactness["catenary_eq"].is_exact()
            && exactness["catenary_adj"].is_exact()
        {
            // c_mon is the larger of two exact values.
            mon = Exactness::Exact {
                clause: "maximum of exact c_eq and c_adj".into(),
            };
        }
        exactness.insert("catenary_mon".into(), mon);

        let omega = monoid_omega_with(model, &report, bound, budget)?;
        exactness.insert("omega".into(), omega.exactness.clone());
        let half_factorial = half_factorial_from_scan(&report, scan);
        exactness.insert("half_factorial".into(), half_factorial.exactness.clone());

        Ok(InvariantReport {
            bound: *bound,
            elements_scanned: scan.elements.len(),
            delta,
            unions,
            rho,
            lambda,
            catenary,
            catenary_eq: refined.equal,
            catenary_adj: refined.adjacent,
            catenary_mon: refined.monotone,
            omega,
            half_factorial,
            exactness,
        })
    }
}
