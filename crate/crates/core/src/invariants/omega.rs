use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factorization::factorizations_with_budget;
use crate::monoid::{BlockModel, DegreeBound, LocalElement, ModelElement};

/// `ω(H, u)` restricted to atom tuples found inside a bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OmegaObservation {
    pub atom: ModelElement,
    /// Largest length of a tuple `(a_1, …, a_n)` of atoms with
    /// `u | a_1 ⋯ a_n` and `u` dividing no proper subproduct.
    pub value: u32,
    pub witness: Vec<ModelElement>,
}

/// Observes `ω(H, u)` for every atom in `atoms` at once.
///
/// A tuple is recorded when its product `a` lies in the bound, its length is
/// at most `max_atom_count` and `u ∤ a / a_i` for each entry. Since `B` is
/// saturated, `u` then divides no proper subproduct at all.
pub fn observe_omega(
    model: &BlockModel,
    atoms: &[ModelElement],
    bound: &DegreeBound,
    budget: u64,
) -> Result<Vec<OmegaObservation>> {
    for u in atoms {
        if !model.is_atom(u)? {
            return Err(Error::NotAtom);
        }
    }
    let elements = model.elements_within(bound);
    let _ = model.enumerate_atoms(bound);
    let per_element = elements
        .par_iter()
        .map(|a| best_tuples(model, atoms, a, bound.max_atom_count, budget))
        .collect::<Result<Vec<_>>>()?;
    let mut out: Vec<OmegaObservation> = atoms
        .iter()
        .map(|u| OmegaObservation {
            atom: u.clone(),
            value: 0,
            witness: vec![],
        })
        .collect();
    // Fold in element order so the first maximal witness is kept.
    for found in per_element {
        for (ui, len, tuple) in found {
            if len > out[ui].value {
                out[ui].value = len;
                out[ui].witness = tuple;
            }
        }
    }
    Ok(out)
}

/// `ω(H, u)` observed inside `bound`.
pub fn omega(
    model: &BlockModel,
    u: &ModelElement,
    bound: &DegreeBound,
    budget: u64,
) -> Result<OmegaObservation> {
    Ok(
        observe_omega(model, std::slice::from_ref(u), bound, budget)?
            .pop()
            .expect("one atom in, one observation out"),
    )
}

type Found = Vec<(usize, u32, Vec<ModelElement>)>;

fn best_tuples(
    model: &BlockModel,
    atoms: &[ModelElement],
    a: &ModelElement,
    max_len: u32,
    budget: u64,
) -> Result<Found> {
    let candidates: Vec<usize> = (0..atoms.len())
        .filter(|&i| model.divides_unchecked(&atoms[i], a))
        .collect();
    if candidates.is_empty() {
        return Ok(vec![]);
    }
    let set = factorizations_with_budget(model, a, budget)?;
    // blocked[c][v]: candidate c still divides a / v, so dropping v keeps a
    // divisible product.
    let quotients: Vec<ModelElement> = set
        .atoms()
        .iter()
        .map(|v| model.quotient_unchecked(v, a).expect("atom divides a"))
        .collect();
    let blocked: Vec<Vec<bool>> = candidates
        .iter()
        .map(|&c| {
            quotients
                .iter()
                .map(|q| model.divides_unchecked(&atoms[c], q))
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    for (ci, &c) in candidates.iter().enumerate() {
        let best = set
            .indexed()
            .iter()
            .enumerate()
            .filter(|(i, z)| {
                set.length_of(*i) <= max_len && z.iter().all(|&(v, _)| !blocked[ci][v as usize])
            })
            .max_by_key(|(i, _)| (set.length_of(*i), std::cmp::Reverse(*i)));
        if let Some((i, _)) = best {
            let tuple: Vec<ModelElement> = set.get(i).atoms().cloned().collect();
            out.push((c, set.length_of(i), tuple));
        }
    }
    Ok(out)
}

/// A verified tuple showing `ω(H, u) ≥ n + 1` for one atom `u`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OmegaWitness {
    pub atom: ModelElement,
    pub tuple: Vec<ModelElement>,
}

/// Builds, for a model with a component of rank at least two, an atom `u`
/// and a tuple of more than `n` atoms whose product `u` divides while no
/// proper subproduct is divisible by `u`.
///
/// In the component take `u_D = q_1 q_2^n ⋯ q_s^n` and `w_D = q_1 ⋯ q_s`.
/// Then `u_D | w_D^{n+1}` but not `w_D^n`. Both are lifted to atoms of `B`
/// with one free prime of the opposite class; when that prime of `u` is not
/// supplied by the powers of `w`, one extra atom `p p'` supplies it.
pub fn omega_growth_witness(model: &BlockModel, n: u32) -> Result<OmegaWitness> {
    let g = model.group();
    let (index, comp) = model
        .components()
        .iter()
        .enumerate()
        .find(|(_, c)| c.rank() >= 2)
        .ok_or_else(|| Error::HypothesesNotMet("no component of rank at least two".into()))?;
    // For n = 1 the two local elements coincide; n = 2 already exceeds 1.
    let n = n.max(2);
    let zero_unit = comp.unit_group().zero();
    let mut ud = vec![n; comp.rank()];
    ud[0] = 1;
    let ud = LocalElement::power(zero_unit.clone(), ud);
    let wd = LocalElement::power(zero_unit, vec![1; comp.rank()]);

    let lift = |part: LocalElement| -> Result<ModelElement> {
        let class = comp.class_of(g, &part);
        let mut parts = vec![LocalElement::Identity; model.components().len()];
        parts[index] = part;
        let free = if class == g.zero() {
            vec![]
        } else {
            vec![g.negate_unchecked(&class)]
        };
        model.element(&free, parts)
    };
    let u = lift(ud)?;
    let w = lift(wd)?;
    let mut tuple = vec![w; n as usize + 1];
    let product = model.product(tuple.iter())?;
    let covered = u
        .free_counts()
        .iter()
        .zip(product.free_counts())
        .all(|(need, have)| need <= have);
    if !covered {
        let label = u
            .free_counts()
            .iter()
            .position(|&k| k > 0)
            .expect("u has a free prime");
        let need = model.prime_classes()[label].clone();
        let f = model.free_element(&[need.clone(), g.negate_unchecked(&need)])?;
        tuple.push(f);
    }
    verify_omega_tuple(model, &u, &tuple)?;
    Ok(OmegaWitness { atom: u, tuple })
}

/// Checks that `u` and every entry are atoms, `u` divides the product, and
/// `u` divides no product with one entry removed.
pub fn verify_omega_tuple(
    model: &BlockModel,
    u: &ModelElement,
    tuple: &[ModelElement],
) -> Result<()> {
    if !model.is_atom(u)? {
        return Err(Error::NotAtom);
    }
    for a in tuple {
        if !model.is_atom(a)? {
            return Err(Error::NotAtom);
        }
    }
    let product = model.product(tuple.iter())?;
    if !model.divides(u, &product, false)? {
        return Err(Error::HypothesesNotMet(
            "atom does not divide the product".into(),
        ));
    }
    for i in 0..tuple.len() {
        let rest = model.product(
            tuple
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, x)| x),
        )?;
        if model.divides(u, &rest, false)? {
            return Err(Error::HypothesesNotMet(format!(
                "atom divides the product without entry {i}"
            )));
        }
    }
    Ok(())
}
