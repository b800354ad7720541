//! Exhaustive search for tiny posets: small Boolean lattices, and the
//! corners `[m] × 2^[k]` used by the product extension.

pub(super) enum Search {
    Found(Vec<Vec<u32>>),
    Exhausted(u64),
    OutOfBudget,
}

/// Partition of `2^[n]` into one chain of size `c1` and `r - 1` of size `h`.
pub(super) fn exhaustive(n: usize, h: usize, c1: usize, r: usize, budget: u64) -> Search {
    let mut order: Vec<u32> = (0u32..(1 << n)).collect();
    order.sort_by_key(|x| (x.count_ones(), *x));
    exhaustive_poset(order, |a, b| a & !b == 0 && a != b, h, c1, r, budget)
}

/// Depth-first over `order`, which must be a linear extension of `below`
/// (strict order): each element extends an open chain or starts a new one.
/// Interchangeable choices are tried once.
pub(super) fn exhaustive_poset(
    order: Vec<u32>,
    below: impl Fn(u32, u32) -> bool,
    h: usize,
    c1: usize,
    r: usize,
    budget: u64,
) -> Search {
    let mut st = Exhaustive {
        below,
        order,
        chains: Vec::new(),
        caps: Vec::new(),
        h,
        c1,
        fresh_left: r - 1,
        off_started: false,
        nodes: 0,
        budget,
    };
    match st.go(0) {
        Some(true) => Search::Found(st.chains),
        Some(false) => Search::Exhausted(st.nodes),
        None => Search::OutOfBudget,
    }
}

struct Exhaustive<F> {
    below: F,
    order: Vec<u32>,
    chains: Vec<Vec<u32>>,
    caps: Vec<usize>,
    h: usize,
    c1: usize,
    fresh_left: usize,
    off_started: bool,
    nodes: u64,
    budget: u64,
}

impl<F: Fn(u32, u32) -> bool> Exhaustive<F> {
    /// `None` when the node budget runs out.
    fn go(&mut self, i: usize) -> Option<bool> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return None;
        }
        if i == self.order.len() {
            return Some(self.chains.iter().zip(&self.caps).all(|(c, &k)| c.len() == k));
        }
        let x = self.order[i];
        let mut tried: Vec<(u32, usize, usize)> = Vec::new();
        for c in 0..self.chains.len() {
            let key = (*self.chains[c].last().unwrap(), self.chains[c].len(), self.caps[c]);
            if key.1 < key.2 && (self.below)(key.0, x) && !tried.contains(&key) {
                tried.push(key);
                self.chains[c].push(x);
                let res = self.go(i + 1);
                if res == Some(true) {
                    return res;
                }
                self.chains[c].pop();
                res?;
            }
        }
        for off in [true, false] {
            let allowed = if off { !self.off_started } else { self.fresh_left > 0 };
            // with |C_1| = h both kinds of chain are the same
            if !allowed || (!off && self.c1 == self.h && !self.off_started) {
                continue;
            }
            if off {
                self.off_started = true;
            } else {
                self.fresh_left -= 1;
            }
            self.chains.push(vec![x]);
            self.caps.push(if off { self.c1 } else { self.h });
            let res = self.go(i + 1);
            if res == Some(true) {
                return res;
            }
            self.chains.pop();
            self.caps.pop();
            if off {
                self.off_started = false;
            } else {
                self.fresh_left += 1;
            }
            res?;
        }
        Some(false)
    }
}

