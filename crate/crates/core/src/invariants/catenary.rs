use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::factorization::{factorizations, FactorizationSet};
use crate::monoid::{BlockModel, ModelElement};

/// Equal, adjacent and monotone catenary degree of one element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefinedCatenary {
    pub equal: u32,
    pub adjacent: u32,
    pub monotone: u32,
}

/// `c(a)`.
pub fn catenary(model: &BlockModel, a: &ModelElement) -> Result<u32> {
    Ok(catenary_of(&factorizations(model, a)?))
}

/// `(c_eq(a), c_adj(a), c_mon(a))`.
pub fn catenary_refined(model: &BlockModel, a: &ModelElement) -> Result<RefinedCatenary> {
    Ok(refined_of(&factorizations(model, a)?))
}

/// Largest edge needed to connect all of `members` when any two may be
/// joined at cost `d(z, z')`: the top edge of a minimum bottleneck spanning
/// tree, found by Kruskal over edges bucketed by distance.
pub(crate) fn bottleneck(set: &FactorizationSet, members: &[usize]) -> u32 {
    let n = members.len();
    if n <= 1 {
        return 0;
    }
    let mut buckets: Vec<Vec<(u32, u32)>> = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let d = set.distance(members[i], members[j]) as usize;
            if buckets.len() <= d {
                buckets.resize_with(d + 1, Vec::new);
            }
            buckets[d].push((i as u32, j as u32));
        }
    }
    let mut uf = UnionFind::<u32>::new(n);
    let mut joined = 1;
    for (d, edges) in buckets.iter().enumerate() {
        for &(i, j) in edges {
            if uf.union(i, j) {
                joined += 1;
                if joined == n {
                    return d as u32;
                }
            }
        }
    }
    unreachable!("complete graph is connected")
}

pub(crate) fn catenary_of(set: &FactorizationSet) -> u32 {
    let all: Vec<usize> = (0..set.len()).collect();
    bottleneck(set, &all)
}

/// Factorization indices grouped by length, lengths ascending.
pub(crate) fn by_length(set: &FactorizationSet) -> Vec<(u32, Vec<usize>)> {
    let mut groups: std::collections::BTreeMap<u32, Vec<usize>> = Default::default();
    for i in 0..set.len() {
        groups.entry(set.length_of(i)).or_default().push(i);
    }
    groups.into_iter().collect()
}

pub(crate) fn refined_of(set: &FactorizationSet) -> RefinedCatenary {
    let groups = by_length(set);
    // A monotone chain between factorizations of equal length never leaves
    // that length, so c_eq only looks inside each length class.
    let equal = groups
        .iter()
        .map(|(_, members)| bottleneck(set, members))
        .max()
        .unwrap_or(0);
    let adjacent = groups
        .windows(2)
        .map(|w| {
            let mut best = u32::MAX;
            for &i in &w[0].1 {
                for &j in &w[1].1 {
                    best = best.min(set.distance(i, j));
                }
            }
            best
        })
        .max()
        .unwrap_or(0);
    RefinedCatenary {
        equal,
        adjacent,
        monotone: equal.max(adjacent),
    }
}
