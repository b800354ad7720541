//! Bottom-up level sweep; see the parent module docs.

use rand::seq::SliceRandom;
use rand_chacha::ChaCha8Rng;

use super::super::scd_successor;

const NONE: u32 = u32::MAX;

pub(super) struct LevelSweep {
    n: usize,
    /// Sets the chains may use; `None` means all of `2^[n]`.
    member: Option<Vec<bool>>,
    chains: Vec<Vec<u32>>,
    need: Vec<usize>,
    /// Chains `started..` have not begun; chain 0 is the off-size one.
    started: usize,
    levels: Vec<Vec<u32>>,
    owner: Vec<u32>,
    seen: Vec<u32>,
    via: Vec<u32>,
    stamp: u32,
    rng: Option<ChaCha8Rng>,
    /// Try the symmetric-decomposition successor before other supersets.
    prefer_successor: bool,
}

impl LevelSweep {
    /// Chains with the given sizes, which must be sorted in decreasing order.
    pub(super) fn new(
        n: usize,
        levels: Vec<Vec<u32>>,
        member: Option<Vec<bool>>,
        need: Vec<usize>,
        rng: Option<ChaCha8Rng>,
    ) -> Self {
        debug_assert!(need.windows(2).all(|w| w[0] >= w[1]));
        let r = need.len();
        LevelSweep {
            n,
            member,
            chains: vec![Vec::new(); r],
            need,
            started: 0,
            levels,
            owner: vec![NONE; 1 << n],
            seen: vec![0; 1 << n],
            via: vec![NONE; 1 << n],
            stamp: 0,
            rng,
            prefer_successor: true,
        }
    }

    /// The whole lattice: `r` chains, the first of size `c1`.
    pub(super) fn full(n: usize, h: usize, c1: usize, r: usize, rng: Option<ChaCha8Rng>) -> Self {
        let mut need = vec![h; r];
        need[0] = c1;
        LevelSweep::new(n, levels_of(n, |_| true), None, need, rng)
    }

    pub(super) fn without_successor_preference(mut self) -> Self {
        self.prefer_successor = false;
        self
    }

    pub(super) fn run(mut self) -> std::result::Result<Vec<Vec<u32>>, String> {
        for l in 0..self.levels.len() {
            self.step(l)?;
        }
        Ok(self.chains)
    }

    /// Supersets of chain `c`'s top at level `l`, successor first.
    fn neighbors(&mut self, c: usize, l: usize, out: &mut Vec<u32>) {
        out.clear();
        let top = *self.chains[c].last().expect("open chains are started");
        let delta = l - top.count_ones() as usize;
        let free: Vec<u32> = (0..self.n as u32).filter(|&i| top >> i & 1 == 0).collect();
        let succ = if delta == 1 && self.prefer_successor {
            scd_successor(top as u128, self.n).map(|s| s as u32)
        } else {
            None
        };
        let admissible = |x: u32| self.member.as_ref().is_none_or(|m| m[x as usize]);
        let succ = succ.filter(|&s| admissible(s));
        if let Some(s) = succ {
            out.push(s);
        }
        // k-subsets of `free` by index combination
        let k = delta;
        if k > free.len() {
            return;
        }
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            let x = idx.iter().fold(top, |acc, &i| acc | 1 << free[i]);
            if Some(x) != succ && admissible(x) {
                out.push(x);
            }
            let mut i = k;
            while i > 0 && idx[i - 1] == free.len() - k + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            idx[i - 1] += 1;
            for j in i..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
        if let Some(rng) = self.rng.as_mut() {
            let from = usize::from(succ.is_some());
            out[from..].shuffle(rng);
        }
    }

    /// Breadth-first augmenting path from chain `root`.
    fn augment(&mut self, root: usize, l: usize, matched: &mut [u32]) -> bool {
        self.stamp += 1;
        let mut queue = vec![root];
        let mut buf = Vec::new();
        let mut head = 0;
        while head < queue.len() {
            let u = queue[head];
            head += 1;
            self.neighbors(u, l, &mut buf);
            for &e in &buf {
                if self.seen[e as usize] == self.stamp {
                    continue;
                }
                self.seen[e as usize] = self.stamp;
                self.via[e as usize] = u as u32;
                let o = self.owner[e as usize];
                if o == NONE {
                    // flip the path back to the root
                    let (mut e, mut u) = (e, u);
                    loop {
                        let prev = matched[u];
                        matched[u] = e;
                        self.owner[e as usize] = u as u32;
                        if u == root {
                            return true;
                        }
                        e = prev;
                        u = self.via[e as usize] as usize;
                    }
                }
                queue.push(o as usize);
            }
        }
        false
    }

    fn step(&mut self, l: usize) -> std::result::Result<(), String> {
        let remaining = self.levels.len() - l;
        let level = std::mem::take(&mut self.levels[l]);
        let size = level.len();

        let mut open: Vec<usize> = (0..self.started).filter(|&c| self.need[c] > 0).collect();
        if let Some(&c) = open.iter().find(|&&c| self.need[c] > remaining) {
            return Err(format!("chain {c} needs {} more levels at level {l}", self.need[c]));
        }
        if let Some(rng) = self.rng.as_mut() {
            open.shuffle(rng);
        }
        open.sort_by_key(|&c| std::cmp::Reverse(self.need[c]));
        let forced = open.iter().take_while(|&&c| self.need[c] == remaining).count();

        let mut matched = vec![NONE; self.chains.len()];
        let mut order = Vec::new();
        for (i, &c) in open.iter().enumerate() {
            if self.augment(c, l, &mut matched) {
                order.push(c);
            } else if i < forced {
                return Err(format!("forced chain {c} has no free superset at level {l}"));
            }
        }

        let unstarted = self.chains.len() - self.started;
        let lo = size.saturating_sub(order.len());
        let hi = unstarted.min(size - forced.min(size));
        let future: Vec<usize> = self.levels[l + 1..].iter().map(Vec::len).collect();
        let feasible = |k: usize| -> bool {
            let cont = &order[..size - k];
            let mut needs: Vec<usize> = open.iter().map(|&c| self.need[c]).collect();
            // `order` is a subset of `open`; subtract one for continuing chains
            let mut is_cont = vec![false; self.chains.len()];
            for &c in cont {
                is_cont[c] = true;
            }
            for (slot, &c) in needs.iter_mut().zip(&open) {
                if is_cont[c] {
                    *slot -= 1;
                }
            }
            for j in 0..unstarted {
                let c = self.started + j;
                needs.push(self.need[c] - usize::from(j < k));
            }
            gale_ryser(&mut needs, &future)
        };
        // starting a chain instead of extending one makes the needs more
        // balanced, so feasibility is monotone in k
        if lo > hi || !feasible(hi) {
            return Err(format!("no admissible number of new chains at level {l} ({lo}..={hi})"));
        }
        let (mut a, mut b) = (lo, hi);
        while a < b {
            let mid = (a + b) / 2;
            if feasible(mid) {
                b = mid;
            } else {
                a = mid + 1;
            }
        }
        let k = a;

        let cont = &order[..size - k];
        for &c in cont {
            let e = matched[c];
            self.chains[c].push(e);
            self.need[c] -= 1;
            self.owner[e as usize] = NONE - 1;
        }
        let mut next = self.started;
        for &x in &level {
            if self.owner[x as usize] != NONE - 1 {
                self.chains[next].push(x);
                self.need[next] -= 1;
                next += 1;
            }
            self.owner[x as usize] = NONE;
        }
        debug_assert_eq!(next - self.started, k);
        self.started = next;
        Ok(())
    }
}

/// Gale–Ryser: can chains with these needs take at most one element from
/// each level of the given sizes, exhausting everything?
pub(super) fn gale_ryser(needs: &mut [usize], levels: &[usize]) -> bool {
    needs.sort_unstable_by(|a, b| b.cmp(a));
    let total: usize = needs.iter().sum();
    if total != levels.iter().sum::<usize>() {
        return false;
    }
    let mut lhs = 0;
    for (k, &d) in needs.iter().enumerate() {
        if d == 0 {
            break;
        }
        lhs += d;
        let rhs: usize = levels.iter().map(|&c| c.min(k + 1)).sum();
        if lhs > rhs {
            return false;
        }
    }
    true
}


/// Sets of `2^[n]` accepted by `keep`, grouped by level; trailing empty
/// levels are dropped.
pub(super) fn levels_of(n: usize, keep: impl Fn(u32) -> bool) -> Vec<Vec<u32>> {
    let mut levels = vec![Vec::new(); n + 1];
    for x in 0u32..(1 << n) {
        if keep(x) {
            levels[x.count_ones() as usize].push(x);
        }
    }
    while levels.last().is_some_and(Vec::is_empty) {
        levels.pop();
    }
    levels
}
