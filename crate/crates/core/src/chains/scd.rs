//! Symmetric chain decomposition of `2^[n]` by parenthesis matching.
//!
//! Read positions `1..=n` left to right, an absent element as `(` and a
//! present one as `)`. Each `)` is matched to the nearest unmatched `(` on
//! its left. Unmatched positions read `)))...(((`; the chain through a set
//! keeps the matched pairs fixed and fills the unmatched positions from the
//! left. A chain starting at level `i` ends at level `n - i`.

use crate::error::{Error, Result};
use crate::poset::{MATERIALIZATION_BUDGET, MAX_GROUND};

/// Where a set sits in the symmetric chain decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScdPosition {
    /// Smallest element of the chain.
    pub start: u128,
    /// Position of the set within its chain, 0 at the start.
    pub index: usize,
    /// Number of sets in the chain.
    pub len: usize,
}

/// Unmatched positions of `mask` as a bit mask.
fn unmatched(mask: u128, n: usize) -> u128 {
    let mut open: Vec<usize> = Vec::with_capacity(n);
    let mut free: u128 = 0;
    for i in 0..n {
        if mask >> i & 1 == 1 {
            if open.pop().is_none() {
                free |= 1 << i;
            }
        } else {
            open.push(i);
        }
    }
    for i in open {
        free |= 1 << i;
    }
    free
}

/// Per-set query, valid for any `n <= 128`.
pub fn scd_position(mask: u128, n: usize) -> Result<ScdPosition> {
    if n > MAX_GROUND || (n < MAX_GROUND && mask >> n != 0) {
        return Err(Error::invalid(format!("{mask:#x} is not a subset of [{n}]")));
    }
    let free = unmatched(mask, n);
    Ok(ScdPosition {
        start: mask & !free,
        index: (mask & free).count_ones() as usize,
        len: free.count_ones() as usize + 1,
    })
}

/// The set following `mask` on its chain, if `mask` is not the chain top.
pub fn scd_successor(mask: u128, n: usize) -> Option<u128> {
    let free = unmatched(mask, n) & !mask;
    (free != 0).then(|| mask | (free & free.wrapping_neg()))
}

/// All chains of the decomposition, each ascending, ordered by start mask.
pub fn symmetric_chain_decomposition(n: usize) -> Result<Vec<Vec<u32>>> {
    if n == 0 || (1usize << n.min(63)) > MATERIALIZATION_BUDGET {
        return Err(Error::invalid(format!(
            "materialized decomposition needs 1 <= n <= 24, got {n}"
        )));
    }
    let mut chains = Vec::new();
    for mask in 0u32..(1 << n) {
        let free = unmatched(mask as u128, n);
        if mask as u128 & free != 0 {
            continue;
        }
        let mut chain = vec![mask];
        let mut cur = mask as u128;
        while let Some(next) = scd_successor(cur, n) {
            chain.push(next as u32);
            cur = next;
        }
        chains.push(chain);
    }
    Ok(chains)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    fn size_histogram(n: usize) -> Vec<(usize, usize)> {
        let chains = symmetric_chain_decomposition(n).unwrap();
        let mut sizes: Vec<usize> = chains.iter().map(|c| c.len()).collect();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        let mut hist: Vec<(usize, usize)> = Vec::new();
        for s in sizes {
            match hist.last_mut() {
                Some((v, c)) if *v == s => *c += 1,
                _ => hist.push((s, 1)),
            }
        }
        hist
    }

    #[test]
    fn small_decompositions() {
        assert_eq!(symmetric_chain_decomposition(1).unwrap(), vec![vec![0, 1]]);
        assert_eq!(size_histogram(4), vec![(5, 1), (3, 3), (1, 2)]);
        // C(6,i) - C(6,i-1) chains start at level i.
        assert_eq!(size_histogram(6), vec![(7, 1), (5, 5), (3, 9), (1, 5)]);
    }

    #[test]
    fn decomposition_is_symmetric_partition() {
        for n in 1..=10 {
            let chains = symmetric_chain_decomposition(n).unwrap();
            assert_eq!(chains.len(), binom(n, n / 2));
            let mut seen = vec![false; 1 << n];
            for c in &chains {
                let lo = c[0].count_ones() as usize;
                let hi = c.last().unwrap().count_ones() as usize;
                assert_eq!(lo + hi, n);
                for w in c.windows(2) {
                    assert_eq!(w[0] & !w[1], 0);
                    assert_eq!(w[1].count_ones(), w[0].count_ones() + 1);
                }
                for &x in c {
                    assert!(!seen[x as usize]);
                    seen[x as usize] = true;
                }
            }
            assert!(seen.iter().all(|&s| s));
        }
    }

    #[test]
    fn point_query_agrees_with_materialized() {
        let n = 8;
        for chain in symmetric_chain_decomposition(n).unwrap() {
            for (i, &x) in chain.iter().enumerate() {
                let pos = scd_position(x as u128, n).unwrap();
                assert_eq!(pos.start, chain[0] as u128);
                assert_eq!(pos.index, i);
                assert_eq!(pos.len, chain.len());
            }
        }
    }

    #[test]
    fn wide_ground_sets() {
        let n = 128;
        let x: u128 = 0xdead_beef_0000_1234_5678_9abc_def0_1111;
        let pos = scd_position(x, n).unwrap();
        let lo = pos.start.count_ones() as usize;
        assert_eq!(2 * lo + pos.len - 1, n);
        assert_eq!(pos.start & !x, 0);
        assert!(scd_position(1 << 5, 5).is_err());
    }
}
