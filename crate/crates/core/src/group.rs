//! Finite abelian groups given by invariant factors.
//!
//! A group is stored as `C_{d_1} ⊕ … ⊕ C_{d_r}` with `d_1 | d_2 | … | d_r`
//! and every `d_i ≥ 2`. Arbitrary lists of moduli are normalized through their
//! elementary divisors, so two groups are isomorphic exactly when they compare
//! equal.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElement(Vec<u32>);

impl GroupElement {
    pub fn new(residues: Vec<u32>) -> Self {
        GroupElement(residues)
    }

    pub fn residues(&self) -> &[u32] {
        &self.0
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, r) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct AbelianGroup {
    factors: Vec<u32>,
}

impl TryFrom<Vec<u32>> for AbelianGroup {
    type Error = Error;

    fn try_from(factors: Vec<u32>) -> Result<Self> {
        AbelianGroup::from_invariants(&factors)
    }
}

impl From<AbelianGroup> for Vec<u32> {
    fn from(g: AbelianGroup) -> Vec<u32> {
        g.factors
    }
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup {
            factors: Vec::new(),
        }
    }

    pub fn cyclic(n: u32) -> Result<Self> {
        if n == 1 {
            return Ok(Self::trivial());
        }
        Self::from_invariants(&[n])
    }

    /// Builds the group `⊕ C_{m}` over the given moduli, normalizing to
    /// invariant-factor form.
    pub fn from_invariants(moduli: &[u32]) -> Result<Self> {
        if let Some(&bad) = moduli.iter().find(|&&m| m <= 1) {
            return Err(Error::InvalidGroup(format!(
                "cyclic factor {bad} must be at least 2"
            )));
        }
        if is_invariant_chain(moduli) {
            return Ok(AbelianGroup {
                factors: moduli.to_vec(),
            });
        }
        Ok(AbelianGroup {
            factors: normalize(moduli),
        })
    }

    /// True when the list is already in invariant-factor form, so that
    /// generator `i` of the presentation is the `i`-th cyclic factor.
    pub fn is_normal_form(moduli: &[u32]) -> bool {
        moduli.iter().all(|&m| m >= 2) && is_invariant_chain(moduli)
    }

    pub fn invariant_factors(&self) -> &[u32] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().map(|&d| d as u64).product()
    }

    pub fn exponent(&self) -> u32 {
        self.factors.last().copied().unwrap_or(1)
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement(vec![0; self.factors.len()])
    }

    /// Validates and reduces a residue tuple.
    pub fn element(&self, residues: &[i64]) -> Result<GroupElement> {
        self.check_len(residues.len())?;
        Ok(GroupElement(
            residues
                .iter()
                .zip(&self.factors)
                .map(|(&r, &d)| r.rem_euclid(d as i64) as u32)
                .collect(),
        ))
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        x.0.len() == self.factors.len() && x.0.iter().zip(&self.factors).all(|(&r, &d)| r < d)
    }

    pub fn check(&self, x: &GroupElement) -> Result<()> {
        self.check_len(x.0.len())?;
        if !self.contains(x) {
            return Err(Error::InvalidGroup(format!(
                "element {x} is not reduced modulo {:?}",
                self.factors
            )));
        }
        Ok(())
    }

    fn check_len(&self, found: usize) -> Result<()> {
        if found != self.factors.len() {
            return Err(Error::ElementGroupMismatch {
                expected: self.factors.len(),
                found,
            });
        }
        Ok(())
    }

    pub fn add(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
        self.check_len(x.0.len())?;
        self.check_len(y.0.len())?;
        Ok(self.add_unchecked(x, y))
    }

    pub(crate) fn add_unchecked(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        GroupElement(
            x.0.iter()
                .zip(&y.0)
                .zip(&self.factors)
                .map(|((&a, &b), &d)| ((a as u64 + b as u64) % d as u64) as u32)
                .collect(),
        )
    }

    pub fn negate(&self, x: &GroupElement) -> Result<GroupElement> {
        self.check_len(x.0.len())?;
        Ok(self.negate_unchecked(x))
    }

    pub(crate) fn negate_unchecked(&self, x: &GroupElement) -> GroupElement {
        GroupElement(
            x.0.iter()
                .zip(&self.factors)
                .map(|(&a, &d)| (d - a % d) % d)
                .collect(),
        )
    }

    /// `n · x`.
    pub fn scale(&self, n: u64, x: &GroupElement) -> Result<GroupElement> {
        self.check_len(x.0.len())?;
        Ok(self.scale_unchecked(n, x))
    }

    pub(crate) fn scale_unchecked(&self, n: u64, x: &GroupElement) -> GroupElement {
        GroupElement(
            x.0.iter()
                .zip(&self.factors)
                .map(|(&a, &d)| ((a as u64 * (n % d as u64)) % d as u64) as u32)
                .collect(),
        )
    }

    /// The sum σ(S) of a sequence; σ of the empty sequence is zero.
    pub fn sigma<'a, I>(&self, seq: I) -> Result<GroupElement>
    where
        I: IntoIterator<Item = &'a GroupElement>,
    {
        let mut acc = self.zero();
        for x in seq {
            self.check_len(x.0.len())?;
            acc = self.add_unchecked(&acc, x);
        }
        Ok(acc)
    }

    /// Order of `x`: the least `n ≥ 1` with `n · x = 0`.
    pub fn element_order(&self, x: &GroupElement) -> Result<u64> {
        self.check_len(x.0.len())?;
        Ok(x.0
            .iter()
            .zip(&self.factors)
            .map(|(&a, &d)| d as u64 / gcd(a as u64 % d as u64, d as u64))
            .fold(1, lcm))
    }

    /// All elements in lexicographic order of residue tuples, zero first.
    pub fn elements(&self) -> Vec<GroupElement> {
        let mut out = Vec::with_capacity(self.order() as usize);
        let mut cur = vec![0u32; self.factors.len()];
        loop {
            out.push(GroupElement(cur.clone()));
            let mut i = self.factors.len();
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                cur[i] += 1;
                if cur[i] < self.factors[i] {
                    break;
                }
                cur[i] = 0;
            }
        }
    }

    /// Position of `x` in [`AbelianGroup::elements`].
    pub fn index_of(&self, x: &GroupElement) -> usize {
        x.0.iter()
            .zip(&self.factors)
            .fold(0usize, |acc, (&r, &d)| acc * d as usize + r as usize)
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "C1");
        }
        for (i, d) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            write!(f, "C{d}")?;
        }
        Ok(())
    }
}

fn is_invariant_chain(moduli: &[u32]) -> bool {
    moduli.windows(2).all(|w| w[1] % w[0] == 0)
}

fn normalize(moduli: &[u32]) -> Vec<u32> {
    // prime -> exponents of the elementary divisors at that prime
    let mut by_prime: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    for &m in moduli {
        for (p, e) in prime_powers(m) {
            by_prime.entry(p).or_default().push(e);
        }
    }
    let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
    let mut factors = vec![1u32; len];
    for (p, mut exps) in by_prime {
        exps.sort_unstable_by(|a, b| b.cmp(a));
        for (slot, e) in exps.into_iter().enumerate() {
            factors[len - 1 - slot] *= p.pow(e);
        }
    }
    factors
}

fn prime_powers(mut n: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}
