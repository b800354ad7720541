//! Product extension: `2^[n] = 2^[n-k] × 2^[k]`.
//!
//! Given a uniform partition of `2^[n-k]`, every chain `C` of size `h` yields
//! the `2^k` chains `C × {d}`. Only the off-size chain `C_1` needs care: the
//! corner `[|C_1|] × 2^[k]` is small enough to split by exhaustive search
//! into one chain of the new off size and chains of size `h`.

use super::search::{exhaustive_poset, Search};

/// Largest `k` tried; the corner has `|C_1| · 2^k < 2h · 2^k` elements.
pub(super) const MAX_SPLIT: usize = 3;

/// Splits `[m] × 2^[k]` into one chain of size `c1` and chains of size `h`.
/// Element `(i, d)` is encoded as `i << k | d`.
pub(super) fn split_corner(m: usize, k: usize, h: usize, c1: usize, budget: u64) -> Option<Vec<Vec<u32>>> {
    let total = m << k;
    if c1 > total || !(total - c1).is_multiple_of(h) {
        return None;
    }
    let r = (total - c1) / h + 1;
    let mask = (1u32 << k) - 1;
    let mut order: Vec<u32> = (0..total as u32).collect();
    order.sort_by_key(|&x| ((x >> k) + (x & mask).count_ones(), x));
    let below = |a: u32, b: u32| a != b && a >> k <= b >> k && (a & mask) & !(b & mask) == 0;
    match exhaustive_poset(order, below, h, c1, r, budget) {
        Search::Found(chains) => Some(chains),
        _ => None,
    }
}

/// Lifts a partition of `2^[n-k]` through a corner split.
pub(super) fn lift(base: &[Vec<u32>], off: usize, corner: &[Vec<u32>], n: usize, k: usize) -> Vec<Vec<u32>> {
    let low = n - k;
    let mask = (1u32 << k) - 1;
    let mut chains: Vec<Vec<u32>> = corner
        .iter()
        .map(|c| c.iter().map(|&e| base[off][(e >> k) as usize] | (e & mask) << low).collect())
        .collect();
    for (_, c) in base.iter().enumerate().filter(|&(id, _)| id != off) {
        for d in 0..=mask {
            chains.push(c.iter().map(|&x| x | d << low).collect());
        }
    }
    chains
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corners() {
        // rows of [3] × [2] for h = 3
        let c = split_corner(3, 1, 3, 3, 10_000).unwrap();
        assert_eq!(c.len(), 2);
        // chains may skip: {A1, A2, B2, B3}, {A3, A4, A5}, {B1, B4, B5}
        assert!(split_corner(5, 1, 3, 4, 100_000).is_some());
        // 2^[3] has width 3, so two chains of 4 cannot cover it
        assert!(split_corner(1, 3, 4, 4, 100_000).is_none());
        let c = split_corner(5, 3, 3, 4, 1_000_000).unwrap();
        let mut sizes: Vec<usize> = c.iter().map(Vec::len).collect();
        sizes.sort();
        assert_eq!(sizes[sizes.len() - 1], 4);
        assert_eq!(sizes.iter().sum::<usize>(), 40);
    }
}
