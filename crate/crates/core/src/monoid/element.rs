use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::component::LocalElement;

/// An element `S · t` of `F(P) × T`: a multiset of free primes (stored as a
/// count per prime label) and one local part per component.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModelElement {
    pub(crate) free: Vec<u32>,
    pub(crate) parts: Vec<LocalElement>,
}

impl ModelElement {
    pub fn new(free: Vec<u32>, parts: Vec<LocalElement>) -> Self {
        ModelElement { free, parts }
    }

    /// Multiplicity of each free prime.
    pub fn free_counts(&self) -> &[u32] {
        &self.free
    }

    pub fn parts(&self) -> &[LocalElement] {
        &self.parts
    }

    pub fn free_length(&self) -> u32 {
        self.free.iter().sum()
    }

    pub fn is_identity(&self) -> bool {
        self.free.iter().all(|&c| c == 0) && self.parts.iter().all(LocalElement::is_identity)
    }

    /// Free length plus all exponent sums. Strictly additive, and at least 1
    /// on every non-identity element.
    pub fn degree(&self) -> u32 {
        self.free_length()
            + self
                .parts
                .iter()
                .map(LocalElement::exponent_sum)
                .sum::<u32>()
    }

    pub fn max_exponent(&self) -> u32 {
        self.parts
            .iter()
            .map(LocalElement::max_exponent)
            .max()
            .unwrap_or(0)
    }

    /// The free part as a sorted list of prime labels (with repetition).
    pub fn free_sequence(&self) -> Vec<usize> {
        self.free
            .iter()
            .enumerate()
            .flat_map(|(i, &c)| std::iter::repeat_n(i, c as usize))
            .collect()
    }

    /// Number of components with a non-identity part.
    pub fn support_size(&self) -> usize {
        self.parts.iter().filter(|p| !p.is_identity()).count()
    }
}

/// Canonical order: free length, then the free multiset lexicographically,
/// then the local parts component by component (identity first, then unit
/// residues, then exponents).
impl Ord for ModelElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.free_length()
            .cmp(&other.free_length())
            .then_with(|| self.free_sequence().cmp(&other.free_sequence()))
            .then_with(|| self.parts.cmp(&other.parts))
    }
}

impl PartialOrd for ModelElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
