use crate::group::AbelianGroup;

/// The Davenport constant `D(G)`: the maximal length of a minimal zero-sum
/// sequence over `G`.
///
/// Computed as one more than the maximal length of a zero-sum free sequence,
/// found by depth-first search over sequences of non-zero elements in
/// non-decreasing order while tracking the set of subsequence sums.
pub fn davenport(g: &AbelianGroup) -> usize {
    let elements = g.elements();
    let n = elements.len();
    if n == 1 {
        return 1;
    }
    // add[i][j] = index of elements[i] + elements[j]
    let add: Vec<Vec<usize>> = elements
        .iter()
        .map(|x| {
            elements
                .iter()
                .map(|y| g.index_of(&g.add_unchecked(x, y)))
                .collect()
        })
        .collect();
    let sums = vec![false; n];
    1 + longest_zero_sum_free(&add, 1, &sums, 0)
}

fn longest_zero_sum_free(add: &[Vec<usize>], start: usize, sums: &[bool], depth: usize) -> usize {
    let n = add.len();
    let mut best = depth;
    for x in start..n {
        // Σ(S·x) = Σ(S) ∪ (Σ(S) + x) ∪ {x}
        let mut next = sums.to_vec();
        next[x] = true;
        for (s, &present) in sums.iter().enumerate() {
            if present {
                next[add[s][x]] = true;
            }
        }
        if next[0] {
            continue;
        }
        best = best.max(longest_zero_sum_free(add, x, &next, depth + 1));
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(m: &[u32]) -> usize {
        davenport(&AbelianGroup::from_invariants(m).unwrap())
    }

    #[test]
    fn small_groups() {
        assert_eq!(d(&[]), 1);
        assert_eq!(d(&[2]), 2);
        assert_eq!(d(&[3]), 3);
        assert_eq!(d(&[2, 2]), 3);
        assert_eq!(d(&[3, 3]), 5);
    }

    #[test]
    fn cyclic_groups_have_davenport_equal_to_order() {
        for n in 2..=9 {
            assert_eq!(d(&[n]), n as usize);
        }
    }
}
