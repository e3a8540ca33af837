use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::factorization::{factorizations_with_budget, LengthSet, DEFAULT_NODE_BUDGET};
use crate::monoid::{BlockModel, DegreeBound, ModelElement};

use super::catenary::{catenary_of, refined_of, RefinedCatenary};

/// Element-level invariants of one element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementSummary {
    pub element: ModelElement,
    pub lengths: LengthSet,
    pub factorization_count: usize,
    pub catenary: u32,
    pub refined: RefinedCatenary,
}

pub fn summarize(model: &BlockModel, a: &ModelElement, budget: u64) -> Result<ElementSummary> {
    let set = factorizations_with_budget(model, a, budget)?;
    Ok(ElementSummary {
        element: a.clone(),
        lengths: set.lengths(),
        factorization_count: set.len(),
        catenary: catenary_of(&set),
        refined: refined_of(&set),
    })
}

/// Summaries of every element of the model within a bound, in canonical
/// element order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scan {
    pub bound: DegreeBound,
    pub elements: Vec<ElementSummary>,
}

impl Scan {
    pub fn new(model: &BlockModel, bound: &DegreeBound) -> Result<Self> {
        Self::with_budget(model, bound, DEFAULT_NODE_BUDGET)
    }

    /// Elements are summarized in parallel; the first error in element order
    /// is reported.
    pub fn with_budget(model: &BlockModel, bound: &DegreeBound, budget: u64) -> Result<Self> {
        let elements = model.elements_within(bound);
        // Warm the shared atom table once instead of racing to build it.
        let _ = model.enumerate_atoms(bound);
        let elements = elements
            .par_iter()
            .map(|a| summarize(model, a, budget))
            .collect::<Result<Vec<_>>>()?;
        Ok(Scan {
            bound: *bound,
            elements,
        })
    }

    pub fn max_catenary(&self) -> u32 {
        self.elements.iter().map(|s| s.catenary).max().unwrap_or(0)
    }

    pub fn max_refined(&self) -> RefinedCatenary {
        let mut r = RefinedCatenary {
            equal: 0,
            adjacent: 0,
            monotone: 0,
        };
        for s in &self.elements {
            r.equal = r.equal.max(s.refined.equal);
            r.adjacent = r.adjacent.max(s.refined.adjacent);
            r.monotone = r.monotone.max(s.refined.monotone);
        }
        r
    }

    /// Union of the distance sets of all scanned length sets.
    pub fn delta(&self) -> std::collections::BTreeSet<u32> {
        self.elements
            .iter()
            .flat_map(|s| set_distances(&s.lengths))
            .collect()
    }

    /// Union of the scanned length sets containing `k`.
    pub fn union_of_lengths(&self, k: u32) -> LengthSet {
        let mut u = LengthSet::new();
        for s in &self.elements {
            if s.lengths.contains(k) {
                u.extend(&s.lengths);
            }
        }
        u
    }

    /// First scanned element with more than one length.
    pub fn non_half_factorial_witness(&self) -> Option<&ElementSummary> {
        self.elements.iter().find(|s| s.lengths.len() > 1)
    }
}

/// Differences of adjacent elements of `L`.
pub fn set_distances(l: &LengthSet) -> std::collections::BTreeSet<u32> {
    let v: Vec<u32> = l.values().collect();
    v.windows(2).map(|w| w[1] - w[0]).collect()
}
