//! Construction by complement symmetry.
//!
//! For odd `n` the lower half `L` of `2^[n]` (levels below `n/2`) is mapped onto the upper half
//! by `x ↦ [n] \ x`, reversing order. Partition `L` into short chains
//! ("partials"), then glue partial `P_i` to the complement of partial
//! `P_j` whenever `top(P_i) ∩ top(P_j) = ∅`: every partial is used once
//! below and once above, so a perfect matching in the gluing graph gives a
//! chain partition of the whole lattice.
//!
//! Sizes: partials of size `h/2` (or `(h-1)/2` and `(h+1)/2` for odd `h`)
//! glue to chains of size `h`. An off-size first chain of even size `c1` is
//! a fixed 3-cycle `A, B, C` of sizes `c1/2, c1/2, h - c1/2`: `A ∪ B̄` has
//! size `c1` while `B ∪ C̄` and `C ∪ Ā` have size `h`. Odd `c1` has no
//! symmetric realisation and is left to the sweep.

use rand_chacha::ChaCha8Rng;

use super::sweep::{levels_of, LevelSweep};
use crate::chains::matching::Bipartite;

type Partial = Vec<u32>;

/// Submask candidates examined per partial when building the gluing graph.
const SUBMASK_SCAN: usize = 1 << 16;

fn in_lower_half(n: usize, x: u32) -> bool {
    let l = x.count_ones() as usize;
    2 * l < n || (2 * l == n && x & 1 == 1)
}

/// Chain of `len` sets from `start`, adding the listed bits in turn.
fn staircase(start: u32, bits: impl Iterator<Item = u32>, len: usize) -> Option<Partial> {
    let mut chain = vec![start];
    let mut cur = start;
    for b in bits.take(len.saturating_sub(1)) {
        cur |= 1 << b;
        chain.push(cur);
    }
    (chain.len() == len).then_some(chain)
}

/// The 3-cycle carrying the off-size chain, placed on disjoint blocks of bits.
fn triangle(n: usize, h: usize, c1: usize) -> Result<[Partial; 3], String> {
    let (half, rest) = (c1 / 2, h - c1 / 2);
    let n32 = n as u32;
    // A climbs from the empty set through bits 0, 1, ...; B descends from
    // the top bit; C takes whatever bits remain
    let a = staircase(0, 0..n32, half).ok_or("first chain does not fit")?;
    let b = staircase(1 << (n32 - 1), (n32 - half as u32..n32 - 1).rev(), half)
        .ok_or("first chain does not fit")?;
    let used = *a.last().unwrap() | *b.last().unwrap();
    let mut free = (0..n32).filter(|i| used >> i & 1 == 0);
    let c_first = free.next().ok_or("no room for the third partial")?;
    let c = staircase(1 << c_first, free, rest).ok_or("no room for the third partial")?;
    for p in [&a, &b, &c] {
        if p.iter().any(|&x| !in_lower_half(n, x)) {
            return Err("first chain leaves the lower half".into());
        }
    }
    let (ta, tb, tc) = (*a.last().unwrap(), *b.last().unwrap(), *c.last().unwrap());
    if ta & tb != 0 || tb & tc != 0 || tc & ta != 0 || b.iter().any(|x| a.contains(x) || c.contains(x)) {
        return Err("first chain pieces overlap".into());
    }
    Ok([a, b, c])
}

fn glue(lower: &[u32], upper: &[u32], full: u32) -> Vec<u32> {
    let mut chain = lower.to_vec();
    chain.extend(upper.iter().rev().map(|&x| full & !x));
    chain
}

pub(super) fn mirror_construction(
    n: usize,
    h: usize,
    c1: usize,
    r: usize,
    rng: Option<ChaCha8Rng>,
) -> Result<Vec<Vec<u32>>, String> {
    if n.is_multiple_of(2) {
        return Err("even ground sets are left to the product extension".into());
    }
    if c1 % 2 == 1 || h < 2 {
        return Err(format!("first chain size {c1} has no symmetric realisation"));
    }
    let full: u32 = (1 << n) - 1;
    let randomised = rng.is_some();
    let mut member = vec![false; 1 << n];

    let fixed = if c1 > h { Some(triangle(n, h, c1)?) } else { None };
    let mut remaining = r - if fixed.is_some() { 3 } else { 0 };
    // odd h: partials come in (h-1)/2, (h+1)/2 pairs; an odd count needs one
    // chain of size h (and its mirror) inside the lower half
    let mut whole = 0;
    let mut sizes = Vec::new();
    if h.is_multiple_of(2) {
        sizes.resize(remaining, h / 2);
    } else {
        if remaining % 2 == 1 {
            whole = 1;
            remaining -= 2;
            sizes.push(h);
        }
        sizes.extend(std::iter::repeat_n(h / 2 + 1, remaining / 2));
        sizes.extend(std::iter::repeat_n(h / 2, remaining / 2));
    }

    for x in 0..=full {
        member[x as usize] = in_lower_half(n, x);
    }
    if let Some(tri) = &fixed {
        for &x in tri.iter().flatten() {
            member[x as usize] = false;
        }
    }
    let need: usize = sizes.iter().sum();
    let covered = member.iter().filter(|&&m| m).count();
    if covered != need {
        return Err(format!("lower half has {covered} sets but partials need {need}"));
    }
    // the successor rule piles tops onto sets containing element 1, which
    // starves the gluing graph; randomised attempts drop it
    let levels = levels_of(n, |x| member[x as usize]);
    let mut sweep = LevelSweep::new(n, levels, Some(member), sizes.clone(), rng);
    if randomised {
        sweep = sweep.without_successor_preference();
    }
    let partials = sweep.run().map_err(|e| format!("lower half: {e}"))?;

    // gluing graph on the glued (non-whole) partials
    let glued: Vec<usize> = (whole..partials.len()).collect();
    let mut owner = vec![u32::MAX; 1 << n];
    for (k, &i) in glued.iter().enumerate() {
        owner[*partials[i].last().unwrap() as usize] = k as u32;
    }
    let mut graph = Bipartite::new(glued.len());
    for &i in &glued {
        let top = *partials[i].last().unwrap();
        let comp = full & !top;
        let want = h - sizes[i];
        let mut nb = Vec::new();
        // submasks of the complement in decreasing order
        let mut u = comp;
        for _ in 0..SUBMASK_SCAN {
            let k = owner[u as usize];
            if k != u32::MAX && sizes[glued[k as usize]] == want {
                nb.push(k);
            }
            if u == 0 {
                break;
            }
            u = (u - 1) & comp;
        }
        graph.push_left(nb);
    }
    let mate = graph.max_matching();
    let unmatched = mate.iter().filter(|m| m.is_none()).count();
    if unmatched > 0 {
        return Err(format!("gluing left {unmatched} of {} partials unmatched", glued.len()));
    }

    let mut chains = Vec::with_capacity(r);
    if let Some([a, b, c]) = &fixed {
        chains.push(glue(a, b, full));
        chains.push(glue(b, c, full));
        chains.push(glue(c, a, full));
    }
    for p in &partials[..whole] {
        chains.push(p.clone());
        chains.push(glue(&[], p, full));
    }
    for (k, m) in mate.iter().enumerate() {
        let j = glued[m.expect("perfect matching") as usize];
        chains.push(glue(&partials[glued[k]], &partials[j], full));
    }
    Ok(chains)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lower_half_is_half() {
        for n in 1..=8 {
            let count = (0u32..1 << n).filter(|&x| in_lower_half(n, x)).count();
            assert_eq!(count, 1 << (n - 1));
            for x in 0u32..1 << n {
                let y = ((1 << n) - 1) & !x;
                assert_ne!(in_lower_half(n, x), in_lower_half(n, y));
            }
        }
    }

    #[test]
    fn triangle_sizes() {
        let [a, b, c] = triangle(16, 3, 4).unwrap();
        assert_eq!((a.len(), b.len(), c.len()), (2, 2, 1));
        let [a, b, c] = triangle(14, 6, 10).unwrap();
        assert_eq!((a.len(), b.len(), c.len()), (5, 5, 1));
    }
}
