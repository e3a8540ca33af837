//! Block monoids over finite abelian groups with seminormal finitely primary
//! local components.
//!
//! Three families are covered by one type: zero-sum monoids `B(G_0)` (no
//! components), reduced seminormal finitely primary monoids (trivial class
//! group, one component) and general T-block monoids `B(G_P, T, ι)`.

mod component;
mod element;
mod model;

use serde::{Deserialize, Serialize};

pub(crate) use component::next_in_box;
pub use component::{LocalComponent, LocalElement};
pub use element::ModelElement;
pub use model::{BlockModel, FreeClasses};

use crate::invariants::davenport;

/// Limits every bounded enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DegreeBound {
    pub max_free_length: u32,
    pub max_exponent: u32,
    pub max_atom_count: u32,
}

impl DegreeBound {
    pub const fn new(max_free_length: u32, max_exponent: u32, max_atom_count: u32) -> Self {
        DegreeBound {
            max_free_length,
            max_exponent,
            max_atom_count,
        }
    }
}

impl Default for DegreeBound {
    /// Free length ≤ 8, exponents ≤ 6, atom tuples ≤ 8.
    fn default() -> Self {
        DegreeBound::new(8, 6, 8)
    }
}

impl std::fmt::Display for DegreeBound {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "free={},exp={},atoms={}",
            self.max_free_length, self.max_exponent, self.max_atom_count
        )
    }
}

/// Atoms found inside a bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomEnumeration {
    pub atoms: Vec<ModelElement>,
    /// The bound provably contains every atom of the monoid.
    pub complete: bool,
}

impl BlockModel {
    /// All atoms with free length and exponents inside `bound`.
    ///
    /// Every atom of `B` has at most `D(G)` factors in `F(P) × T`, which caps
    /// the free length and, for rank-one components, the exponent. Rank-two
    /// components have atoms with unbounded exponents, so the list is only
    /// complete for models whose components all have rank one.
    pub fn enumerate_atoms(&self, bound: &DegreeBound) -> AtomEnumeration {
        let table = self.cached_atoms(bound.max_free_length, bound.max_exponent);
        let atoms: Vec<ModelElement> = table
            .atoms
            .iter()
            .filter(|u| {
                u.free_length() <= bound.max_free_length && u.max_exponent() <= bound.max_exponent
            })
            .cloned()
            .collect();
        let d = davenport(self.group()) as u32;
        let complete = bound.max_free_length >= d
            && (self.components().is_empty()
                || (self.components().iter().all(|c| c.rank() == 1) && bound.max_exponent >= d));
        AtomEnumeration { atoms, complete }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::group::{AbelianGroup, GroupElement};

    fn g(r: &[u32]) -> GroupElement {
        GroupElement::new(r.to_vec())
    }

    fn zero_sum(n: u32) -> BlockModel {
        BlockModel::new(AbelianGroup::cyclic(n).unwrap(), vec![], FreeClasses::All).unwrap()
    }

    fn seq(m: &BlockModel, xs: &[u32]) -> ModelElement {
        let v: Vec<_> = xs.iter().map(|&x| g(&[x])).collect();
        m.free_element(&v).unwrap()
    }

    fn rank2_trivial() -> BlockModel {
        let t = AbelianGroup::trivial();
        let comp = LocalComponent::unclassed(2, AbelianGroup::trivial(), &t);
        BlockModel::new(t, vec![comp], FreeClasses::All).unwrap()
    }

    fn loc(m: &BlockModel, k: &[u32]) -> ModelElement {
        m.local_element(0, LocalElement::power(g(&[]), k.to_vec()))
            .unwrap()
    }

    fn single_mixed() -> BlockModel {
        let c2 = AbelianGroup::cyclic(2).unwrap();
        let comp = LocalComponent::new(1, c2.clone(), vec![g(&[1])], vec![g(&[1])]);
        BlockModel::new(c2, vec![comp], FreeClasses::All).unwrap()
    }

    #[test]
    fn make_model_examples() {
        let b = zero_sum(2);
        assert!(b.components().is_empty());
        assert_eq!(b.free_classes().len(), 2);
        let m = single_mixed();
        assert_eq!(m.components()[0].rank(), 1);
        let r = rank2_trivial();
        assert!(r.group().is_trivial());
    }

    #[test]
    fn make_model_rejects_bad_data() {
        let c2 = AbelianGroup::cyclic(2).unwrap();
        let bad_class = LocalComponent::new(1, AbelianGroup::trivial(), vec![], vec![g(&[2])]);
        assert!(matches!(
            BlockModel::new(c2.clone(), vec![bad_class], FreeClasses::All),
            Err(Error::InvalidModel(_))
        ));
        // generator of order 2 cannot map to an element of order 3
        let c3 = AbelianGroup::cyclic(3).unwrap();
        let not_hom = LocalComponent::new(1, c2.clone(), vec![g(&[1])], vec![g(&[0])]);
        assert!(matches!(
            BlockModel::new(c3, vec![not_hom], FreeClasses::All),
            Err(Error::InvalidModel(_))
        ));
    }

    #[test]
    fn class_examples() {
        let b3 = zero_sum(3);
        assert_eq!(b3.class_of(&seq(&b3, &[1, 1])).unwrap(), g(&[2]));
        let m = single_mixed();
        let eq = m
            .local_element(0, LocalElement::power(g(&[1]), vec![1]))
            .unwrap();
        assert_eq!(m.class_of(&eq).unwrap(), g(&[0]));
        assert_eq!(m.class_of(&m.identity()).unwrap(), g(&[0]));
    }

    #[test]
    fn contains_examples() {
        let b3 = zero_sum(3);
        assert!(b3.contains(&seq(&b3, &[1, 1, 1])).unwrap());
        assert!(!b3.contains(&seq(&b3, &[1, 1])).unwrap());
        let r = rank2_trivial();
        assert!(r.contains(&loc(&r, &[4, 1])).unwrap());
    }

    #[test]
    fn multiply_examples() {
        let b3 = zero_sum(3);
        let p = b3.multiply(&seq(&b3, &[1]), &seq(&b3, &[2])).unwrap();
        assert_eq!(p, seq(&b3, &[1, 2]));
        let e = AbelianGroup::cyclic(3).unwrap();
        let t = AbelianGroup::trivial();
        let comp = LocalComponent::unclassed(2, e, &t);
        let m = BlockModel::new(t, vec![comp], FreeClasses::Listed(vec![])).unwrap();
        let x = m
            .local_element(0, LocalElement::power(g(&[1]), vec![1, 2]))
            .unwrap();
        let y = m
            .local_element(0, LocalElement::power(g(&[1]), vec![2, 1]))
            .unwrap();
        let xy = m
            .local_element(0, LocalElement::power(g(&[2]), vec![3, 3]))
            .unwrap();
        assert_eq!(m.multiply(&x, &y).unwrap(), xy);
        assert_eq!(m.multiply(&x, &m.identity()).unwrap(), x);
    }

    #[test]
    fn shape_mismatch_is_reported() {
        let b3 = zero_sum(3);
        let r = rank2_trivial();
        assert!(matches!(
            b3.multiply(&seq(&b3, &[1]), &r.identity()),
            Err(Error::ElementModelMismatch(_))
        ));
        assert!(r
            .local_element(0, LocalElement::power(g(&[]), vec![0, 2]))
            .is_err());
    }

    #[test]
    fn divides_examples() {
        let r = rank2_trivial();
        let (a, b) = (loc(&r, &[1, 1]), loc(&r, &[3, 3]));
        assert!(r.divides(&a, &b, true).unwrap());
        assert_eq!(r.divide_exact(&a, &b).unwrap(), Some(loc(&r, &[2, 2])));
        assert!(!r
            .divides(&loc(&r, &[1, 2]), &loc(&r, &[2, 2]), true)
            .unwrap());
        let b2 = zero_sum(2);
        let (x, y) = (seq(&b2, &[1]), seq(&b2, &[1, 1]));
        assert!(b2.divides(&x, &y, true).unwrap());
        assert!(!b2.divides(&x, &y, false).unwrap());
    }

    #[test]
    fn atom_examples() {
        let b3 = zero_sum(3);
        assert!(b3.is_atom(&seq(&b3, &[1, 1, 1])).unwrap());
        assert!(!b3.is_atom(&seq(&b3, &[1, 2, 1, 2])).unwrap());
        let r = rank2_trivial();
        assert!(!r.is_atom(&loc(&r, &[2, 2])).unwrap());
        assert!(r.is_atom(&loc(&r, &[1, 3])).unwrap());
        // B(C2) with a mixed component where [q] = g: g · q is an atom
        let c2 = AbelianGroup::cyclic(2).unwrap();
        let comp = LocalComponent::new(1, AbelianGroup::trivial(), vec![], vec![g(&[1])]);
        let m = BlockModel::new(c2, vec![comp], FreeClasses::All).unwrap();
        let gq = m
            .element(&[g(&[1])], vec![LocalElement::power(g(&[]), vec![1])])
            .unwrap();
        assert!(m.is_atom(&gq).unwrap());
        assert_eq!(
            b3.is_atom(&seq(&b3, &[1])),
            Err(Error::NotInMonoid { class: vec![1] })
        );
    }

    #[test]
    fn atoms_dividing_examples() {
        let b3 = zero_sum(3);
        let atoms = b3.atoms_dividing(&seq(&b3, &[1, 1, 1, 2, 2, 2])).unwrap();
        assert_eq!(
            atoms,
            vec![
                seq(&b3, &[1, 2]),
                seq(&b3, &[1, 1, 1]),
                seq(&b3, &[2, 2, 2])
            ]
        );
        assert!(b3.atoms_dividing(&b3.identity()).unwrap().is_empty());
        let r = rank2_trivial();
        let atoms = r.atoms_dividing(&loc(&r, &[3, 3])).unwrap();
        assert_eq!(
            atoms,
            vec![loc(&r, &[1, 1]), loc(&r, &[1, 2]), loc(&r, &[2, 1])]
        );
    }

    #[test]
    fn enumerate_atoms_examples() {
        let b2 = zero_sum(2);
        let e = b2.enumerate_atoms(&DegreeBound::default());
        assert_eq!(e.atoms, vec![seq(&b2, &[0]), seq(&b2, &[1, 1])]);
        assert!(e.complete);
        let b3 = zero_sum(3);
        let e = b3.enumerate_atoms(&DegreeBound::new(3, 0, 0));
        assert_eq!(
            e.atoms,
            vec![
                seq(&b3, &[0]),
                seq(&b3, &[1, 2]),
                seq(&b3, &[1, 1, 1]),
                seq(&b3, &[2, 2, 2])
            ]
        );
        assert!(e.complete);
        let t = AbelianGroup::trivial();
        let comp = LocalComponent::unclassed(1, AbelianGroup::cyclic(2).unwrap(), &t);
        let m = BlockModel::new(t, vec![comp], FreeClasses::Listed(vec![])).unwrap();
        let e = m.enumerate_atoms(&DegreeBound::default());
        let q = m
            .local_element(0, LocalElement::power(g(&[0]), vec![1]))
            .unwrap();
        let eq = m
            .local_element(0, LocalElement::power(g(&[1]), vec![1]))
            .unwrap();
        assert_eq!(e.atoms, vec![q, eq]);
        assert!(e.complete);
        assert!(
            !rank2_trivial()
                .enumerate_atoms(&DegreeBound::default())
                .complete
        );
    }

    /// Elements of `B` in a small box, identity included.
    fn small_members(m: &BlockModel, free: u32, exp: u32) -> Vec<ModelElement> {
        m.ambient_elements_in_box(free, exp)
            .into_iter()
            .filter(|x| m.contains(x).unwrap())
            .collect()
    }

    #[test]
    fn divisibility_is_a_partial_order() {
        for m in [zero_sum(3), single_mixed(), rank2_trivial()] {
            let xs = small_members(&m, 3, 3);
            for x in &xs {
                assert!(m.divides(x, x, false).unwrap());
                for y in &xs {
                    let xy = m.divides(x, y, false).unwrap();
                    if xy && m.divides(y, x, false).unwrap() {
                        assert_eq!(x, y);
                    }
                    // saturation
                    if m.divides(x, y, true).unwrap() {
                        assert!(m.divides(x, y, false).unwrap());
                    }
                    if !xy {
                        continue;
                    }
                    for z in &xs {
                        if m.divides(y, z, false).unwrap() {
                            assert!(m.divides(x, z, false).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn local_atoms_have_min_exponent_one() {
        let t = AbelianGroup::trivial();
        for rank in 1..=3 {
            let comp = LocalComponent::unclassed(rank, AbelianGroup::cyclic(2).unwrap(), &t);
            let m = BlockModel::new(t.clone(), vec![comp], FreeClasses::Listed(vec![])).unwrap();
            for x in m.elements_within(&DegreeBound::new(0, 4, 0)) {
                let closed = x.parts()[0].min_exponent() == Some(1);
                assert_eq!(m.is_atom(&x).unwrap(), closed, "{x:?}");
                assert_eq!(m.is_atom_by_search(&x).unwrap(), closed, "{x:?}");
            }
        }
    }

    #[test]
    fn atom_table_matches_direct_test() {
        for m in [zero_sum(4), single_mixed(), rank2_trivial()] {
            let bound = DegreeBound::new(4, 3, 0);
            let table = m.enumerate_atoms(&bound).atoms;
            let direct: Vec<_> = m
                .elements_within(&bound)
                .into_iter()
                .filter(|x| m.is_atom_by_search(x).unwrap())
                .collect();
            assert_eq!(table, direct);
        }
    }
}
