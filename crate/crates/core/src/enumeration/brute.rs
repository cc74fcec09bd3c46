//! Exhaustive enumeration of small zero-one grids. Independent of every
//! formula in this crate; used as the ground-truth oracle.

use std::collections::BTreeMap;

use crate::matrix::IncidenceMatrix;

/// Calls `visit` with the cell mask of every `k×l` zero-one matrix with `n`
/// ones and no zero row or column. Bit `r*l + c` is cell `(r, c)`.
pub fn for_each_mask(k: usize, l: usize, n: usize, mut visit: impl FnMut(u64)) {
    let cells = k * l;
    assert!(cells <= 63, "brute force limited to 63 cells");
    if n > cells {
        return;
    }
    if n == 0 {
        if k == 0 && l == 0 {
            visit(0);
        }
        return;
    }
    let row_masks: Vec<u64> = (0..k).map(|r| ((1u64 << l) - 1) << (r * l)).collect();
    let col_masks: Vec<u64> = (0..l)
        .map(|c| (0..k).fold(0u64, |m, r| m | 1u64 << (r * l + c)))
        .collect();
    let limit = 1u64 << cells;
    let mut mask = (1u64 << n) - 1;
    while mask < limit {
        if row_masks.iter().all(|&rm| mask & rm != 0) && col_masks.iter().all(|&cm| mask & cm != 0)
        {
            visit(mask);
        }
        // next mask with the same popcount
        let low = mask & mask.wrapping_neg();
        let ripple = mask + low;
        mask = (((ripple ^ mask) >> 2) / low) | ripple;
    }
}

/// `m_kl(n)` counted by enumeration, for all `k, l ≤ n` with a nonzero count.
pub fn brute_force_counts(n: usize) -> BTreeMap<(usize, usize), u64> {
    let mut out = BTreeMap::new();
    for k in 0..=n {
        for l in 0..=n {
            let mut count = 0u64;
            for_each_mask(k, l, n, |_| count += 1);
            if count > 0 {
                out.insert((k, l), count);
            }
        }
    }
    out
}

/// Every incidence matrix with exactly `n` ones.
pub fn all_incidence_matrices(n: usize) -> Vec<IncidenceMatrix> {
    let mut out = Vec::new();
    for k in 0..=n {
        for l in 0..=n {
            for_each_mask(k, l, n, |mask| {
                let bits = (0..k * l).map(|i| mask >> i & 1 == 1).collect();
                out.push(IncidenceMatrix::new(k, l, bits).expect("filtered grid"));
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let c2 = brute_force_counts(2);
        assert_eq!(c2.get(&(1, 2)), Some(&1));
        assert_eq!(c2.get(&(2, 1)), Some(&1));
        assert_eq!(c2.get(&(2, 2)), Some(&2));
        assert_eq!(c2.values().sum::<u64>(), 4);
        let c3 = brute_force_counts(3);
        assert_eq!(c3[&(2, 2)], 4);
        assert_eq!(c3[&(2, 3)], 6);
        assert_eq!(c3.values().sum::<u64>(), 24);
        assert_eq!(brute_force_counts(0).get(&(0, 0)), Some(&1));
    }

    #[test]
    fn matrices_are_distinct_and_valid() {
        let all = all_incidence_matrices(4);
        assert_eq!(all.len(), 196);
        let set: std::collections::HashSet<_> = all.iter().collect();
        assert_eq!(set.len(), 196);
        assert!(all.iter().all(|m| m.ones() == 4));
    }
}
