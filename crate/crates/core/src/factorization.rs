//! Sets of factorizations, lengths and the distance between factorizations.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monoid::{BlockModel, ModelElement};

/// Default cap on backtracking nodes per element.
pub const DEFAULT_NODE_BUDGET: u64 = 20_000_000;

/// A multiset of atoms, stored as sorted `(atom, multiplicity)` runs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Factorization {
    runs: Vec<(ModelElement, u32)>,
}

impl Factorization {
    pub fn empty() -> Self {
        Factorization { runs: Vec::new() }
    }

    /// Builds a factorization from atoms in any order.
    pub fn from_atoms<I: IntoIterator<Item = ModelElement>>(atoms: I) -> Self {
        let mut v: Vec<ModelElement> = atoms.into_iter().collect();
        v.sort();
        let mut runs: Vec<(ModelElement, u32)> = Vec::new();
        for a in v {
            match runs.last_mut() {
                Some((b, n)) if *b == a => *n += 1,
                _ => runs.push((a, 1)),
            }
        }
        Factorization { runs }
    }

    pub fn runs(&self) -> &[(ModelElement, u32)] {
        &self.runs
    }

    /// `|z|`.
    pub fn len(&self) -> u32 {
        self.runs.iter().map(|(_, n)| n).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    /// The atoms with repetition, in canonical order.
    pub fn atoms(&self) -> impl Iterator<Item = &ModelElement> {
        self.runs
            .iter()
            .flat_map(|(a, n)| std::iter::repeat_n(a, *n as usize))
    }

    pub fn product(&self, model: &BlockModel) -> Result<ModelElement> {
        model.product(self.atoms())
    }

    /// Multiset union.
    pub fn concat(&self, other: &Factorization) -> Factorization {
        Factorization::from_atoms(self.atoms().chain(other.atoms()).cloned())
    }
}

/// `gcd(z, z')`: the common part of two factorizations.
pub fn factorization_gcd(z: &Factorization, w: &Factorization) -> Factorization {
    let (mut i, mut j) = (0, 0);
    let mut runs = Vec::new();
    while i < z.runs.len() && j < w.runs.len() {
        match z.runs[i].0.cmp(&w.runs[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                runs.push((z.runs[i].0.clone(), z.runs[i].1.min(w.runs[j].1)));
                i += 1;
                j += 1;
            }
        }
    }
    Factorization { runs }
}

/// `d(z, z') = max(|z gcd⁻¹|, |z' gcd⁻¹|)`.
pub fn distance(z: &Factorization, w: &Factorization) -> u32 {
    let common = factorization_gcd(z, w).len();
    (z.len() - common).max(w.len() - common)
}

/// A factorization over a fixed, indexed atom list: sorted
/// `(atom index, multiplicity)` runs.
pub type IndexedFactorization = Vec<(u32, u32)>;

pub(crate) fn indexed_len(z: &[(u32, u32)]) -> u32 {
    z.iter().map(|r| r.1).sum()
}

pub(crate) fn indexed_common(z: &[(u32, u32)], w: &[(u32, u32)]) -> u32 {
    let (mut i, mut j, mut c) = (0, 0, 0);
    while i < z.len() && j < w.len() {
        match z[i].0.cmp(&w[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                c += z[i].1.min(w[j].1);
                i += 1;
                j += 1;
            }
        }
    }
    c
}

pub(crate) fn indexed_distance(z: &[(u32, u32)], w: &[(u32, u32)]) -> u32 {
    let c = indexed_common(z, w);
    (indexed_len(z) - c).max(indexed_len(w) - c)
}

/// `Z(a)` for one element, over the atoms dividing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationSet {
    element: ModelElement,
    atoms: Vec<ModelElement>,
    members: Vec<IndexedFactorization>,
}

impl FactorizationSet {
    pub fn element(&self) -> &ModelElement {
        &self.element
    }

    /// Atoms dividing the element, in canonical order.
    pub fn atoms(&self) -> &[ModelElement] {
        &self.atoms
    }

    pub fn indexed(&self) -> &[IndexedFactorization] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn length_of(&self, i: usize) -> u32 {
        indexed_len(&self.members[i])
    }

    pub fn distance(&self, i: usize, j: usize) -> u32 {
        indexed_distance(&self.members[i], &self.members[j])
    }

    pub fn get(&self, i: usize) -> Factorization {
        Factorization {
            runs: self.members[i]
                .iter()
                .map(|&(a, n)| (self.atoms[a as usize].clone(), n))
                .collect(),
        }
    }

    /// All factorizations, canonically sorted.
    pub fn to_vec(&self) -> Vec<Factorization> {
        let mut v: Vec<_> = (0..self.len()).map(|i| self.get(i)).collect();
        v.sort();
        v
    }

    pub fn lengths(&self) -> LengthSet {
        LengthSet::from_iter((0..self.len()).map(|i| self.length_of(i)))
    }
}

/// A finite set of lengths.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LengthSet(BTreeSet<u32>);

impl LengthSet {
    pub fn new() -> Self {
        LengthSet(BTreeSet::new())
    }

    pub fn values(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().copied()
    }

    pub fn as_set(&self) -> &BTreeSet<u32> {
        &self.0
    }

    pub fn contains(&self, k: u32) -> bool {
        self.0.contains(&k)
    }

    pub fn min(&self) -> Option<u32> {
        self.0.first().copied()
    }

    pub fn max(&self) -> Option<u32> {
        self.0.last().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn insert(&mut self, k: u32) {
        self.0.insert(k);
    }

    pub fn extend(&mut self, other: &LengthSet) {
        self.0.extend(other.values());
    }

    /// Sumset `L + L'`.
    pub fn sumset(&self, other: &LengthSet) -> LengthSet {
        LengthSet::from_iter(
            self.values()
                .flat_map(|a| other.values().map(move |b| a + b)),
        )
    }

    /// No gaps between min and max.
    pub fn is_interval(&self) -> bool {
        match (self.min(), self.max()) {
            (Some(lo), Some(hi)) => (hi - lo + 1) as usize == self.0.len(),
            _ => true,
        }
    }
}

impl FromIterator<u32> for LengthSet {
    fn from_iter<I: IntoIterator<Item = u32>>(iter: I) -> Self {
        LengthSet(iter.into_iter().collect())
    }
}

impl std::fmt::Display for LengthSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let items: Vec<String> = self.values().map(|v| v.to_string()).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

/// All factorizations of `a`, with the default node budget.
pub fn factorizations(model: &BlockModel, a: &ModelElement) -> Result<FactorizationSet> {
    factorizations_with_budget(model, a, DEFAULT_NODE_BUDGET)
}

/// Enumerates `Z(a)` by backtracking over the atoms dividing `a`, taking atoms
/// in non-decreasing canonical order along each branch so every multiset is
/// produced once. Exceeding the budget is an error; partial sets are never
/// returned.
pub fn factorizations_with_budget(
    model: &BlockModel,
    a: &ModelElement,
    budget: u64,
) -> Result<FactorizationSet> {
    model.atoms_dividing(a)?;
    let atoms = model.atoms_dividing_unchecked(a);
    let degrees: Vec<u32> = atoms.iter().map(ModelElement::degree).collect();
    let mut search = Search {
        model,
        atoms: &atoms,
        degrees: &degrees,
        budget,
        nodes: 0,
        stack: Vec::new(),
        out: Vec::new(),
    };
    search.descend(a.clone(), 0)?;
    let mut members = search.out;
    members.sort();
    Ok(FactorizationSet {
        element: a.clone(),
        atoms,
        members,
    })
}

struct Search<'a> {
    model: &'a BlockModel,
    atoms: &'a [ModelElement],
    degrees: &'a [u32],
    budget: u64,
    nodes: u64,
    stack: Vec<(u32, u32)>,
    out: Vec<IndexedFactorization>,
}

impl Search<'_> {
    fn descend(&mut self, rest: ModelElement, start: usize) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::SearchBudgetExceeded {
                budget: self.budget,
            });
        }
        if rest.is_identity() {
            self.out.push(self.stack.clone());
            return Ok(());
        }
        let deg = rest.degree();
        for j in start..self.atoms.len() {
            if self.degrees[j] > deg {
                continue;
            }
            let Some(q) = self.model.quotient_unchecked(&self.atoms[j], &rest) else {
                continue;
            };
            match self.stack.last_mut() {
                Some((idx, n)) if *idx == j as u32 => *n += 1,
                _ => self.stack.push((j as u32, 1)),
            }
            self.descend(q, j)?;
            match self.stack.last_mut() {
                Some((_, n)) if *n > 1 => *n -= 1,
                _ => {
                    self.stack.pop();
                }
            }
        }
        Ok(())
    }
}

/// `L(a)`.
pub fn lengths(model: &BlockModel, a: &ModelElement) -> Result<LengthSet> {
    Ok(factorizations(model, a)?.lengths())
}
