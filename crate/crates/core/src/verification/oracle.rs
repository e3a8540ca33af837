use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::monoid::{BlockModel, ModelElement};

/// A factorization as a sorted list of atoms.
pub type AtomMultiset = Vec<ModelElement>;

/// `Z(a)` computed from the divisor lattice alone: `a` is an atom when it has
/// no proper divisor in `B`, and otherwise every factorization arises from a
/// split `a = d · (a/d)` with `d ≤ a/d` in canonical order.
///
/// Shares nothing with the backtracking engine beyond the divisibility
/// primitives of the model. `budget` caps the number of splits examined.
pub fn oracle_factorizations(
    model: &BlockModel,
    a: &ModelElement,
    budget: u64,
) -> Result<BTreeSet<AtomMultiset>> {
    model.require_member(a)?;
    let mut oracle = Lattice {
        model,
        memo: HashMap::new(),
        work: 0,
        budget,
    };
    oracle.factor(a)
}

struct Lattice<'a> {
    model: &'a BlockModel,
    memo: HashMap<ModelElement, BTreeSet<AtomMultiset>>,
    work: u64,
    budget: u64,
}

impl Lattice<'_> {
    fn factor(&mut self, a: &ModelElement) -> Result<BTreeSet<AtomMultiset>> {
        if let Some(z) = self.memo.get(a) {
            return Ok(z.clone());
        }
        let mut out = BTreeSet::new();
        if a.is_identity() {
            out.insert(vec![]);
            self.memo.insert(a.clone(), out.clone());
            return Ok(out);
        }
        let divisors = self.model.proper_divisors_in_model(a)?;
        if divisors.is_empty() {
            out.insert(vec![a.clone()]);
        }
        for d in &divisors {
            let rest = self.model.divide_exact(d, a)?.expect("divisor divides");
            if *d > rest {
                continue;
            }
            self.work += 1;
            if self.work > self.budget {
                return Err(Error::SearchBudgetExceeded {
                    budget: self.budget,
                });
            }
            let left = self.factor(d)?;
            let right = self.factor(&rest)?;
            for x in &left {
                for y in &right {
                    let mut z: Vec<ModelElement> = x.iter().chain(y).cloned().collect();
                    z.sort();
                    out.insert(z);
                }
            }
        }
        self.memo.insert(a.clone(), out.clone());
        Ok(out)
    }
}

/// `ω(H, u)` over tuples of arbitrary non-units whose product is an element
/// of `elements`, with at most `max_len` entries.
///
/// Tuples are the multiset decompositions of each element into non-units;
/// a tuple counts when `u` divides its product but not the product with any
/// one entry removed.
pub fn oracle_omega_general(
    model: &BlockModel,
    u: &ModelElement,
    elements: &[ModelElement],
    max_len: u32,
    budget: u64,
) -> Result<u32> {
    if !model.is_atom(u)? {
        return Err(Error::NotAtom);
    }
    let mut dec = Decompositions {
        model,
        memo: HashMap::new(),
        work: 0,
        budget,
    };
    let mut best = 0;
    for a in elements {
        if !model.divides(u, a, false)? {
            continue;
        }
        for tuple in dec.all(a)? {
            let n = tuple.len() as u32;
            if n > max_len || n <= best {
                continue;
            }
            let minimal = (0..tuple.len()).all(|i| {
                let rest = model
                    .divide_exact(&tuple[i], a)
                    .expect("member")
                    .expect("entry divides the product");
                !model.divides(u, &rest, false).expect("member")
            });
            if minimal {
                best = n;
            }
        }
    }
    Ok(best)
}

struct Decompositions<'a> {
    model: &'a BlockModel,
    memo: HashMap<ModelElement, BTreeSet<AtomMultiset>>,
    work: u64,
    budget: u64,
}

impl Decompositions<'_> {
    /// Every multiset of non-units with product `a`, `a` itself included.
    fn all(&mut self, a: &ModelElement) -> Result<BTreeSet<AtomMultiset>> {
        if let Some(z) = self.memo.get(a) {
            return Ok(z.clone());
        }
        let mut out = BTreeSet::new();
        out.insert(vec![a.clone()]);
        for d in self.model.proper_divisors_in_model(a)? {
            self.work += 1;
            if self.work > self.budget {
                return Err(Error::SearchBudgetExceeded {
                    budget: self.budget,
                });
            }
            let rest = self.model.divide_exact(&d, a)?.expect("divisor divides");
            for tail in self.all(&rest)? {
                let mut t = tail;
                t.push(d.clone());
                t.sort();
                out.insert(t);
            }
        }
        self.memo.insert(a.clone(), out.clone());
        Ok(out)
    }
}
