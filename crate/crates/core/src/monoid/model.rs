use std::fmt::Write as _;
use std::ops::ControlFlow;
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::group::{AbelianGroup, GroupElement};

use super::component::{next_in_box, LocalComponent, LocalElement};
use super::element::ModelElement;
use super::DegreeBound;

/// Which classes carry a free prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FreeClasses {
    All,
    Listed(Vec<GroupElement>),
}

/// The T-block monoid `B(G_P, T, ι) ⊂ F(P) × T` with `T = D_1 × … × D_n`.
///
/// Every free prime carries a class; by default there is exactly one prime
/// per class in `G_P`. Monoids are reduced throughout.
pub struct BlockModel {
    group: AbelianGroup,
    components: Vec<LocalComponent>,
    prime_classes: Vec<GroupElement>,
    atom_cache: RwLock<Option<Arc<AtomTable>>>,
}

pub(crate) struct AtomTable {
    pub(crate) free: u32,
    pub(crate) exp: u32,
    pub(crate) atoms: Vec<ModelElement>,
}

impl Clone for BlockModel {
    fn clone(&self) -> Self {
        BlockModel {
            group: self.group.clone(),
            components: self.components.clone(),
            prime_classes: self.prime_classes.clone(),
            atom_cache: RwLock::new(self.atom_cache.read().unwrap().clone()),
        }
    }
}

impl std::fmt::Debug for BlockModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BlockModel")
            .field("group", &self.group)
            .field("components", &self.components)
            .field("prime_classes", &self.prime_classes)
            .finish()
    }
}

impl PartialEq for BlockModel {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group
            && self.components == other.components
            && self.prime_classes == other.prime_classes
    }
}

impl BlockModel {
    /// `B(G_0, T, ι)` with one free prime in each class of `free_classes`.
    pub fn new(
        group: AbelianGroup,
        components: Vec<LocalComponent>,
        free_classes: FreeClasses,
    ) -> Result<Self> {
        let classes = match free_classes {
            FreeClasses::All => group.elements(),
            FreeClasses::Listed(list) => {
                for c in &list {
                    if !group.contains(c) {
                        return Err(Error::InvalidModel(format!(
                            "free class {c} is not an element of {group}"
                        )));
                    }
                }
                let mut list = list;
                list.sort_by_key(|c| group.index_of(c));
                list.dedup();
                list
            }
        };
        Self::with_labeled_primes(group, components, classes)
    }

    /// A model whose free primes are labeled individually; several primes may
    /// share a class. `prime_classes[i]` is the class of prime `i`.
    pub fn with_labeled_primes(
        group: AbelianGroup,
        components: Vec<LocalComponent>,
        prime_classes: Vec<GroupElement>,
    ) -> Result<Self> {
        for c in &prime_classes {
            if !group.contains(c) {
                return Err(Error::InvalidModel(format!(
                    "prime class {c} is not an element of {group}"
                )));
            }
        }
        for (i, comp) in components.iter().enumerate() {
            comp.validate(i, &group)?;
            if !AbelianGroup::is_normal_form(comp.unit_group().invariant_factors()) {
                return Err(Error::InvalidModel(format!(
                    "component {i}: unit group must be given in invariant-factor form"
                )));
            }
        }
        Ok(BlockModel {
            group,
            components,
            prime_classes,
            atom_cache: RwLock::new(None),
        })
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn components(&self) -> &[LocalComponent] {
        &self.components
    }

    /// Class of each free prime, indexed by prime label.
    pub fn prime_classes(&self) -> &[GroupElement] {
        &self.prime_classes
    }

    /// The distinct classes containing a free prime (the set `G_P`).
    pub fn free_classes(&self) -> Vec<GroupElement> {
        let mut v = self.prime_classes.clone();
        v.sort_by_key(|c| self.group.index_of(c));
        v.dedup();
        v
    }

    /// True when every class of `G` contains a free prime.
    pub fn every_class_has_prime(&self) -> bool {
        self.free_classes().len() as u64 == self.group.order()
    }

    /// True when there is at most one prime per class.
    pub fn primes_are_unlabeled(&self) -> bool {
        self.free_classes().len() == self.prime_classes.len()
    }

    pub fn identity(&self) -> ModelElement {
        ModelElement::new(
            vec![0; self.prime_classes.len()],
            vec![LocalElement::Identity; self.components.len()],
        )
    }

    /// The label of the first free prime in class `c`.
    pub fn prime_in_class(&self, c: &GroupElement) -> Option<usize> {
        self.prime_classes.iter().position(|p| p == c)
    }

    /// Builds an element from a sequence of classes (each mapped to the first
    /// free prime of that class) and the local parts.
    pub fn element(&self, free: &[GroupElement], parts: Vec<LocalElement>) -> Result<ModelElement> {
        let mut counts = vec![0u32; self.prime_classes.len()];
        for c in free {
            self.group.check(c)?;
            let i = self.prime_in_class(c).ok_or_else(|| {
                Error::ElementModelMismatch(format!("class {c} contains no free prime"))
            })?;
            counts[i] += 1;
        }
        let x = ModelElement::new(counts, parts);
        self.check_shape(&x)?;
        Ok(x)
    }

    /// Element of the free part only, given by classes.
    pub fn free_element(&self, free: &[GroupElement]) -> Result<ModelElement> {
        self.element(free, vec![LocalElement::Identity; self.components.len()])
    }

    /// Element concentrated in a single component.
    pub fn local_element(&self, component: usize, part: LocalElement) -> Result<ModelElement> {
        let mut parts = vec![LocalElement::Identity; self.components.len()];
        if component >= parts.len() {
            return Err(Error::ElementModelMismatch(format!(
                "model has no component {component}"
            )));
        }
        parts[component] = part;
        let x = ModelElement::new(vec![0; self.prime_classes.len()], parts);
        self.check_shape(&x)?;
        Ok(x)
    }

    pub fn check_shape(&self, x: &ModelElement) -> Result<()> {
        if x.free.len() != self.prime_classes.len() {
            return Err(Error::ElementModelMismatch(format!(
                "expected {} free prime counts, found {}",
                self.prime_classes.len(),
                x.free.len()
            )));
        }
        if x.parts.len() != self.components.len() {
            return Err(Error::ElementModelMismatch(format!(
                "expected {} local parts, found {}",
                self.components.len(),
                x.parts.len()
            )));
        }
        for (comp, part) in self.components.iter().zip(&x.parts) {
            comp.check_part(part)?;
        }
        Ok(())
    }

    /// `σ(S) + ι(t)`.
    pub fn class_of(&self, x: &ModelElement) -> Result<GroupElement> {
        self.check_shape(x)?;
        Ok(self.class_unchecked(x))
    }

    pub(crate) fn class_unchecked(&self, x: &ModelElement) -> GroupElement {
        let g = &self.group;
        let mut acc = g.zero();
        for (&c, class) in x.free.iter().zip(&self.prime_classes) {
            if c > 0 {
                acc = g.add_unchecked(&acc, &g.scale_unchecked(c as u64, class));
            }
        }
        for (comp, part) in self.components.iter().zip(&x.parts) {
            acc = g.add_unchecked(&acc, &comp.class_of(g, part));
        }
        acc
    }

    pub fn contains(&self, x: &ModelElement) -> Result<bool> {
        Ok(self.class_of(x)? == self.group.zero())
    }

    pub(crate) fn contains_unchecked(&self, x: &ModelElement) -> bool {
        self.class_unchecked(x) == self.group.zero()
    }

    pub(crate) fn require_member(&self, x: &ModelElement) -> Result<()> {
        let class = self.class_of(x)?;
        if class != self.group.zero() {
            return Err(Error::NotInMonoid {
                class: class.residues().to_vec(),
            });
        }
        Ok(())
    }

    pub fn multiply(&self, x: &ModelElement, y: &ModelElement) -> Result<ModelElement> {
        self.check_shape(x)?;
        self.check_shape(y)?;
        Ok(self.multiply_unchecked(x, y))
    }

    pub(crate) fn multiply_unchecked(&self, x: &ModelElement, y: &ModelElement) -> ModelElement {
        let free = x.free.iter().zip(&y.free).map(|(a, b)| a + b).collect();
        let parts = self
            .components
            .iter()
            .zip(x.parts.iter().zip(&y.parts))
            .map(|(comp, (a, b))| match (a, b) {
                (LocalElement::Identity, p) | (p, LocalElement::Identity) => p.clone(),
                (
                    LocalElement::Power {
                        unit: u1,
                        exponents: k1,
                    },
                    LocalElement::Power {
                        unit: u2,
                        exponents: k2,
                    },
                ) => LocalElement::Power {
                    unit: comp.unit_group().add_unchecked(u1, u2),
                    exponents: k1.iter().zip(k2).map(|(a, b)| a + b).collect(),
                },
            })
            .collect();
        ModelElement::new(free, parts)
    }

    /// Product of a list of elements.
    pub fn product<'a, I>(&self, xs: I) -> Result<ModelElement>
    where
        I: IntoIterator<Item = &'a ModelElement>,
    {
        let mut acc = self.identity();
        for x in xs {
            acc = self.multiply(&acc, x)?;
        }
        Ok(acc)
    }

    /// `x^n`.
    pub fn power(&self, x: &ModelElement, n: u32) -> Result<ModelElement> {
        self.check_shape(x)?;
        let mut acc = self.identity();
        for _ in 0..n {
            acc = self.multiply_unchecked(&acc, x);
        }
        Ok(acc)
    }

    /// The quotient `y / x` in the ambient monoid `F(P) × T`, if it exists.
    pub fn divide_exact(&self, x: &ModelElement, y: &ModelElement) -> Result<Option<ModelElement>> {
        self.check_shape(x)?;
        self.check_shape(y)?;
        Ok(self.quotient_unchecked(x, y))
    }

    pub(crate) fn quotient_unchecked(
        &self,
        x: &ModelElement,
        y: &ModelElement,
    ) -> Option<ModelElement> {
        let mut free = Vec::with_capacity(y.free.len());
        for (&a, &b) in x.free.iter().zip(&y.free) {
            if a > b {
                return None;
            }
            free.push(b - a);
        }
        let mut parts = Vec::with_capacity(y.parts.len());
        for (comp, (a, b)) in self.components.iter().zip(x.parts.iter().zip(&y.parts)) {
            parts.push(local_quotient(comp, a, b)?);
        }
        Some(ModelElement::new(free, parts))
    }

    pub(crate) fn divides_unchecked(&self, x: &ModelElement, y: &ModelElement) -> bool {
        if x.free.iter().zip(&y.free).any(|(a, b)| a > b) {
            return false;
        }
        x.parts
            .iter()
            .zip(&y.parts)
            .all(|(a, b)| local_divides(a, b))
    }

    /// Divisibility in the ambient monoid (`ambient = true`) or in the block
    /// monoid itself. In the latter case `x` must lie in `B`; since `B` is
    /// saturated the quotient then lies in `B` as soon as `y` does.
    pub fn divides(&self, x: &ModelElement, y: &ModelElement, ambient: bool) -> Result<bool> {
        self.check_shape(x)?;
        self.check_shape(y)?;
        if !self.divides_unchecked(x, y) {
            return Ok(false);
        }
        if ambient {
            return Ok(true);
        }
        let q = self
            .quotient_unchecked(x, y)
            .expect("ambient divisibility implies a quotient");
        Ok(self.contains_unchecked(x) && self.contains_unchecked(&q))
    }

    /// Calls `f` on every ambient divisor of `x`, the identity and `x`
    /// included, until `f` breaks.
    pub fn for_each_ambient_divisor<F>(&self, x: &ModelElement, mut f: F) -> Result<()>
    where
        F: FnMut(&ModelElement) -> ControlFlow<()>,
    {
        self.check_shape(x)?;
        let part_choices: Vec<Vec<LocalElement>> = self
            .components
            .iter()
            .zip(&x.parts)
            .map(|(comp, part)| local_divisors(comp, part))
            .collect();
        let mut cur = self.identity();
        let _ = self.walk_free(x, 0, &mut cur, &part_choices, &mut f);
        Ok(())
    }

    fn walk_free<F>(
        &self,
        x: &ModelElement,
        i: usize,
        cur: &mut ModelElement,
        choices: &[Vec<LocalElement>],
        f: &mut F,
    ) -> ControlFlow<()>
    where
        F: FnMut(&ModelElement) -> ControlFlow<()>,
    {
        if i == x.free.len() {
            return self.walk_parts(0, cur, choices, f);
        }
        for c in 0..=x.free[i] {
            cur.free[i] = c;
            self.walk_free(x, i + 1, cur, choices, f)?;
        }
        cur.free[i] = 0;
        ControlFlow::Continue(())
    }

    fn walk_parts<F>(
        &self,
        j: usize,
        cur: &mut ModelElement,
        choices: &[Vec<LocalElement>],
        f: &mut F,
    ) -> ControlFlow<()>
    where
        F: FnMut(&ModelElement) -> ControlFlow<()>,
    {
        if j == choices.len() {
            return f(cur);
        }
        for p in &choices[j] {
            cur.parts[j] = p.clone();
            self.walk_parts(j + 1, cur, choices, f)?;
        }
        cur.parts[j] = LocalElement::Identity;
        ControlFlow::Continue(())
    }

    /// All divisors `d` of `x` in `B` other than the identity and `x`.
    pub fn proper_divisors_in_model(&self, x: &ModelElement) -> Result<Vec<ModelElement>> {
        let mut out = Vec::new();
        self.for_each_ambient_divisor(x, |d| {
            if !d.is_identity() && d != x && self.contains_unchecked(d) {
                out.push(d.clone());
            }
            ControlFlow::Continue(())
        })?;
        Ok(out)
    }

    /// Whether `x` is an atom of `B`.
    pub fn is_atom(&self, x: &ModelElement) -> Result<bool> {
        self.require_member(x)?;
        if x.is_identity() {
            return Ok(false);
        }
        if self.group.is_trivial() {
            // Over a trivial class group B = F(P) × T, whose atoms are the
            // single primes and the local atoms (min exponent 1).
            return Ok(match (x.free_length(), x.support_size()) {
                (1, 0) => true,
                (0, 1) => x
                    .parts
                    .iter()
                    .find_map(LocalElement::min_exponent)
                    .is_some_and(|m| m == 1),
                _ => false,
            });
        }
        let mut decomposable = false;
        self.for_each_ambient_divisor(x, |d| {
            if !d.is_identity() && d != x && self.contains_unchecked(d) {
                decomposable = true;
                return ControlFlow::Break(());
            }
            ControlFlow::Continue(())
        })?;
        Ok(!decomposable)
    }

    /// Same test by exhaustive divisor search, without the trivial-group
    /// shortcut.
    pub fn is_atom_by_search(&self, x: &ModelElement) -> Result<bool> {
        self.require_member(x)?;
        if x.is_identity() {
            return Ok(false);
        }
        Ok(self.proper_divisors_in_model(x)?.is_empty())
    }

    /// Every element of the ambient monoid with free length at most
    /// `max_free` and all exponents at most `max_exp`, identity included.
    pub fn ambient_elements_in_box(&self, max_free: u32, max_exp: u32) -> Vec<ModelElement> {
        let mut frees = Vec::new();
        let mut cur = vec![0u32; self.prime_classes.len()];
        free_multisets(0, max_free, &mut cur, &mut frees);
        let part_lists: Vec<Vec<LocalElement>> = self
            .components
            .iter()
            .map(|c| local_parts_in_box(c, max_exp))
            .collect();
        let mut out = Vec::new();
        for free in frees {
            let mut parts = vec![LocalElement::Identity; self.components.len()];
            product_parts(0, &part_lists, &mut parts, &mut |parts| {
                out.push(ModelElement::new(free.clone(), parts.to_vec()));
            });
        }
        out
    }

    /// Non-identity elements of `B` inside the bound, in canonical order.
    pub fn elements_within(&self, bound: &DegreeBound) -> Vec<ModelElement> {
        let mut v: Vec<_> = self
            .ambient_elements_in_box(bound.max_free_length, bound.max_exponent)
            .into_iter()
            .filter(|x| !x.is_identity() && self.contains_unchecked(x))
            .collect();
        v.sort();
        v
    }

    pub(crate) fn cached_atoms(&self, max_free: u32, max_exp: u32) -> Arc<AtomTable> {
        if let Some(t) = self.atom_cache.read().unwrap().as_ref() {
            if t.free >= max_free && t.exp >= max_exp {
                return Arc::clone(t);
            }
        }
        let mut guard = self.atom_cache.write().unwrap();
        let (free, exp) = match guard.as_ref() {
            Some(t) if t.free >= max_free && t.exp >= max_exp => return Arc::clone(t),
            Some(t) => (t.free.max(max_free), t.exp.max(max_exp)),
            None => (max_free, max_exp),
        };
        let table = Arc::new(AtomTable {
            free,
            exp,
            atoms: self.compute_atoms(free, max_exp.max(exp)),
        });
        *guard = Some(Arc::clone(&table));
        table
    }

    /// Atoms inside the box, found in order of degree: an element of `B` is
    /// an atom exactly when no atom of smaller degree divides it.
    fn compute_atoms(&self, max_free: u32, max_exp: u32) -> Vec<ModelElement> {
        let mut members: Vec<ModelElement> = self
            .ambient_elements_in_box(max_free, max_exp)
            .into_iter()
            .filter(|x| !x.is_identity() && self.contains_unchecked(x))
            .collect();
        members.sort_by_key(ModelElement::degree);
        let mut atoms: Vec<ModelElement> = Vec::new();
        for x in members {
            let d = x.degree();
            if !atoms
                .iter()
                .take_while(|u| u.degree() < d)
                .any(|u| self.divides_unchecked(u, &x))
            {
                atoms.push(x);
            }
        }
        atoms.sort();
        atoms
    }

    /// All atoms `u` of `B` with `u | x` in `B`, in canonical order.
    pub fn atoms_dividing(&self, x: &ModelElement) -> Result<Vec<ModelElement>> {
        self.require_member(x)?;
        Ok(self.atoms_dividing_unchecked(x))
    }

    pub(crate) fn atoms_dividing_unchecked(&self, x: &ModelElement) -> Vec<ModelElement> {
        if x.is_identity() {
            return Vec::new();
        }
        let table = self.cached_atoms(x.free_length(), x.max_exponent());
        table
            .atoms
            .iter()
            .filter(|u| self.divides_unchecked(u, x))
            .cloned()
            .collect()
    }

    /// Renders an element in the instance element grammar.
    pub fn format_element(&self, x: &ModelElement) -> String {
        let mut s = String::new();
        if x.free_length() > 0 || x.support_size() == 0 {
            let items: Vec<String> = x
                .free_sequence()
                .into_iter()
                .map(|i| {
                    let r = self.prime_classes[i].residues();
                    if self.primes_are_unlabeled() && r.len() == 1 {
                        r[0].to_string()
                    } else if self.primes_are_unlabeled() {
                        format!("{:?}", r)
                    } else {
                        format!("p{i}")
                    }
                })
                .collect();
            let _ = write!(s, "free: [{}]", items.join(", "));
        }
        for (i, part) in x.parts.iter().enumerate() {
            if let LocalElement::Power { unit, exponents } = part {
                if !s.is_empty() {
                    s.push(' ');
                }
                let _ = write!(s, "c{i}: u={:?} q^{:?}", unit.residues(), exponents);
            }
        }
        s
    }
}

fn local_divides(a: &LocalElement, b: &LocalElement) -> bool {
    match (a, b) {
        (LocalElement::Identity, _) => true,
        (_, LocalElement::Identity) => false,
        (
            LocalElement::Power {
                unit: ua,
                exponents: ka,
            },
            LocalElement::Power {
                unit: ub,
                exponents: kb,
            },
        ) => (ka == kb && ua == ub) || ka.iter().zip(kb).all(|(x, y)| y > x),
    }
}

fn local_quotient(
    comp: &LocalComponent,
    a: &LocalElement,
    b: &LocalElement,
) -> Option<LocalElement> {
    match (a, b) {
        (LocalElement::Identity, p) => Some(p.clone()),
        (_, LocalElement::Identity) => None,
        (
            LocalElement::Power {
                unit: ua,
                exponents: ka,
            },
            LocalElement::Power {
                unit: ub,
                exponents: kb,
            },
        ) => {
            if ka == kb {
                return (ua == ub).then_some(LocalElement::Identity);
            }
            if ka.iter().zip(kb).all(|(x, y)| y > x) {
                let e = comp.unit_group();
                Some(LocalElement::Power {
                    unit: e.add_unchecked(ub, &e.negate_unchecked(ua)),
                    exponents: kb.iter().zip(ka).map(|(y, x)| y - x).collect(),
                })
            } else {
                None
            }
        }
    }
}

fn local_divisors(comp: &LocalComponent, part: &LocalElement) -> Vec<LocalElement> {
    match part {
        LocalElement::Identity => vec![LocalElement::Identity],
        LocalElement::Power { exponents, .. } => {
            let mut out = vec![LocalElement::Identity];
            if exponents.iter().all(|&k| k >= 2) {
                let units = comp.unit_group().elements();
                let mut k = vec![1u32; exponents.len()];
                loop {
                    for u in &units {
                        out.push(LocalElement::power(u.clone(), k.clone()));
                    }
                    if !next_in_bounds(&mut k, exponents) {
                        break;
                    }
                }
            }
            out.push(part.clone());
            out
        }
    }
}

/// Advances `k` through `∏ [1, bound_j − 1]`.
fn next_in_bounds(k: &mut [u32], bound: &[u32]) -> bool {
    let mut i = k.len();
    while i > 0 {
        i -= 1;
        if k[i] + 1 < bound[i] {
            k[i] += 1;
            return true;
        }
        k[i] = 1;
    }
    false
}

fn local_parts_in_box(comp: &LocalComponent, max_exp: u32) -> Vec<LocalElement> {
    let mut out = vec![LocalElement::Identity];
    if max_exp == 0 {
        return out;
    }
    let units = comp.unit_group().elements();
    let mut k = vec![1u32; comp.rank()];
    loop {
        for u in &units {
            out.push(LocalElement::power(u.clone(), k.clone()));
        }
        if !next_in_box(&mut k, 1, max_exp) {
            break;
        }
    }
    out
}

fn free_multisets(i: usize, remaining: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if i == cur.len() {
        out.push(cur.clone());
        return;
    }
    for c in 0..=remaining {
        cur[i] = c;
        free_multisets(i + 1, remaining - c, cur, out);
    }
    cur[i] = 0;
}

fn product_parts<F>(j: usize, lists: &[Vec<LocalElement>], cur: &mut Vec<LocalElement>, f: &mut F)
where
    F: FnMut(&[LocalElement]),
{
    if j == lists.len() {
        f(cur);
        return;
    }
    for p in &lists[j] {
        cur[j] = p.clone();
        product_parts(j + 1, lists, cur, f);
    }
}
