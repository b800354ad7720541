//! `t`-partitions: exact search in `[2]^m` and lifting to `[2|P|]^m`.

use super::WeightFunction;
use crate::error::{Error, Infeasibility, Result};
use crate::poset::{enumerate_copies, GridPoset, Order, Poset};

/// Default node budget for [`find_t_partition`].
pub const T_SEARCH_NODES: u64 = 20_000_000;

pub fn find_t_partition(target: &Poset, m: usize, t: u64) -> Result<WeightFunction> {
    find_t_partition_with_budget(target, m, t, T_SEARCH_NODES)
}

/// Weights on copies of `target` in `[2]^m` making every element weight
/// exactly `t`, or a certificate that none exists.
///
/// The search takes the element with the fewest usable copies and branches
/// on its first usable copy: either one more unit on it, or never again.
/// Each weight vector is reached at most once.
pub fn find_t_partition_with_budget(target: &Poset, m: usize, t: u64, budget: u64) -> Result<WeightFunction> {
    if t == 0 {
        return Err(Error::invalid("t must be positive"));
    }
    if m == 0 {
        return Err(Error::invalid("m must be positive"));
    }
    let host = GridPoset::materializable(&vec![2; m])?;
    let copies = enumerate_copies(&host, target)?;
    let mut through: Vec<Vec<usize>> = vec![Vec::new(); host.size()];
    for (i, c) in copies.iter().enumerate() {
        for &x in c {
            through[x].push(i);
        }
    }
    let mut st = TSearch {
        copies: &copies,
        through: &through,
        deficit: vec![t; host.size()],
        banned: vec![false; copies.len()],
        weight: vec![0; copies.len()],
        nodes: 0,
        budget,
    };
    match st.go() {
        Some(true) => {
            let mut w = WeightFunction::new(host, target.clone());
            for (c, &k) in copies.iter().zip(&st.weight) {
                w.add(c, k);
            }
            Ok(w)
        }
        Some(false) => Err(Error::Infeasible(Infeasibility::SearchExhausted { nodes: st.nodes })),
        None => Err(Error::Budget {
            what: "t-partition search nodes",
            required: budget as u128 + 1,
            limit: budget as u128,
        }),
    }
}

struct TSearch<'a> {
    copies: &'a [Vec<usize>],
    through: &'a [Vec<usize>],
    deficit: Vec<u64>,
    banned: Vec<bool>,
    weight: Vec<u64>,
    nodes: u64,
    budget: u64,
}

impl TSearch<'_> {
    fn usable(&self, c: usize) -> bool {
        !self.banned[c] && self.copies[c].iter().all(|&x| self.deficit[x] > 0)
    }

    fn go(&mut self) -> Option<bool> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return None;
        }
        // most constrained open element
        let mut best: Option<(usize, usize)> = None;
        for x in 0..self.deficit.len() {
            if self.deficit[x] == 0 {
                continue;
            }
            let n = self.through[x].iter().filter(|&&c| self.usable(c)).count();
            if best.is_none_or(|(_, b)| n < b) {
                best = Some((x, n));
            }
        }
        let Some((x, n)) = best else {
            return Some(true);
        };
        if n == 0 {
            return Some(false);
        }
        let c = *self.through[x].iter().find(|&&c| self.usable(c)).expect("n > 0");
        for &y in &self.copies[c] {
            self.deficit[y] -= 1;
        }
        self.weight[c] += 1;
        let res = self.go();
        if res != Some(false) {
            return res;
        }
        for &y in &self.copies[c] {
            self.deficit[y] += 1;
        }
        self.weight[c] -= 1;
        self.banned[c] = true;
        let res = self.go();
        self.banned[c] = false;
        res
    }
}

/// Copies `w` from `[2]^m` into every block of `[2|P|]^m`, and further into
/// every slice of `[2|P|]^(m + extra)` obtained by fixing the extra
/// coordinates. Block `(i_1..i_m)` is `{2i_k + ε_k − 2 : ε ∈ [2]^m}`.
pub fn lift_to_blocks(w: &WeightFunction, extra: usize) -> Result<WeightFunction> {
    let m = w.host.dim();
    if w.host.dims().iter().any(|&s| s != 2) {
        return Err(Error::invalid("lift_to_blocks expects a weight function on [2]^m"));
    }
    let side = 2 * w.target.len();
    let total = m + extra;
    let lifted = GridPoset::materializable(&vec![side; total])?;
    let blocks = GridPoset::new(&vec![w.target.len(); m])?;
    let slices = GridPoset::new(&vec![side; extra.max(1)])?;
    let slice_count = if extra == 0 { 1 } else { slices.size() };
    let mut out = WeightFunction::new(lifted.clone(), w.target.clone());
    for s in 0..slice_count {
        let tail = if extra == 0 { Vec::new() } else { slices.coords(s) };
        for b in 0..blocks.size() {
            let corner = blocks.coords(b);
            for (set, &weight) in &w.entries {
                let image: Vec<usize> = set
                    .iter()
                    .map(|&e| {
                        let eps = w.host.coords(e);
                        let mut c: Vec<usize> = corner.iter().zip(&eps).map(|(&i, &e)| 2 * i + e - 2).collect();
                        c.extend_from_slice(&tail);
                        lifted.index(&c)
                    })
                    .collect();
                out.add(&image, weight);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::{verify_weight_function, WeightKind};

    /// All weight vectors in {0..t}^copies.
    fn brute_force(target: &Poset, m: usize, t: u64) -> bool {
        let host = GridPoset::new(&vec![2; m]).unwrap();
        let copies = enumerate_copies(&host, target).unwrap();
        assert!(copies.len() <= 12);
        let mut w = vec![0u64; copies.len()];
        loop {
            let mut weights = vec![0u64; host.size()];
            for (c, &k) in copies.iter().zip(&w) {
                for &x in c {
                    weights[x] += k;
                }
            }
            if weights.iter().all(|&v| v == t) {
                return true;
            }
            let mut i = 0;
            while i < w.len() && w[i] == t {
                w[i] = 0;
                i += 1;
            }
            if i == w.len() {
                return false;
            }
            w[i] += 1;
        }
    }

    #[test]
    fn witnesses_and_certificates() {
        for t in 1..=5 {
            let w = find_t_partition(&Poset::chain(2), 1, t).unwrap();
            assert!(verify_weight_function(&w, t, WeightKind::ExactT).unwrap().pass());
            let w = find_t_partition(&Poset::diamond(), 2, t).unwrap();
            assert!(verify_weight_function(&w, t, WeightKind::ExactT).unwrap().pass());
        }
        for t in 1..=3 {
            let r = find_t_partition(&Poset::chain(3), 2, t);
            assert!(r.unwrap_err().is_infeasible());
            assert!(!brute_force(&Poset::chain(3), 2, t));
        }
    }

    #[test]
    fn agrees_with_brute_force() {
        for (p, m) in [(Poset::chain(2), 2), (Poset::chain(3), 2), (Poset::antichain(2), 2)] {
            for t in 1..=3 {
                let found = find_t_partition(&p, m, t).is_ok();
                assert_eq!(found, brute_force(&p, m, t), "{} m={m} t={t}", p.name());
            }
        }
    }

    #[test]
    fn lifting() {
        let w = find_t_partition(&Poset::chain(2), 2, 2).unwrap();
        let lifted = lift_to_blocks(&w, 0).unwrap();
        assert_eq!(lifted.host.dims(), &[4, 4]);
        assert_eq!(lifted.len(), w.len() * 4);
        assert!(verify_weight_function(&lifted, 2, WeightKind::ExactT).unwrap().pass());
        let w = find_t_partition(&Poset::chain(2), 1, 3).unwrap();
        let lifted = lift_to_blocks(&w, 1).unwrap();
        assert_eq!(lifted.host.dims(), &[4, 4]);
        assert!(verify_weight_function(&lifted, 3, WeightKind::ExactT).unwrap().pass());
    }
}
