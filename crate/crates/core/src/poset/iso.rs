//! Induced-subposet isomorphism: copy detection and copy enumeration.

use std::collections::BTreeSet;

use super::{BooleanLattice, Order, Poset};
use crate::error::{Error, Result};

/// Cap on candidate checks made by [`enumerate_copies`].
pub const DEFAULT_COPY_BUDGET: u64 = 10_000_000;

/// A target poset preprocessed for repeated isomorphism tests.
///
/// Each element carries a signature (strictly-below count, strictly-above
/// count); a candidate map must preserve signatures, which prunes most of
/// the backtracking before any relation is compared.
#[derive(Clone, Debug)]
pub struct Pattern {
    n: usize,
    leq: Vec<bool>,
    sig: Vec<(u32, u32)>,
    sorted_sig: Vec<(u32, u32)>,
}

fn signatures(k: usize, leq: &[bool]) -> Vec<(u32, u32)> {
    (0..k)
        .map(|x| {
            let mut down = 0;
            let mut up = 0;
            for y in 0..k {
                if y != x {
                    down += leq[y * k + x] as u32;
                    up += leq[x * k + y] as u32;
                }
            }
            (down, up)
        })
        .collect()
}

impl Pattern {
    pub fn new(p: &Poset) -> Self {
        let n = p.len();
        let leq: Vec<bool> = (0..n * n).map(|i| p.leq(i / n, i % n)).collect();
        let sig = signatures(n, &leq);
        let mut sorted_sig = sig.clone();
        sorted_sig.sort_unstable();
        Pattern {
            n,
            leq,
            sig,
            sorted_sig,
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    fn p_leq(&self, u: usize, v: usize) -> bool {
        self.leq[u * self.n + v]
    }

    /// Looks for an isomorphism from the pattern onto the `k`-element order
    /// given by `leq`. Returns the image position of each pattern element.
    pub fn match_order(&self, k: usize, leq: impl Fn(usize, usize) -> bool) -> Option<Vec<usize>> {
        if k != self.n {
            return None;
        }
        let m: Vec<bool> = (0..k * k).map(|i| leq(i / k, i % k)).collect();
        let sig = signatures(k, &m);
        let mut sorted = sig.clone();
        sorted.sort_unstable();
        if sorted != self.sorted_sig {
            return None;
        }
        let candidates: Vec<Vec<usize>> = (0..k)
            .map(|u| (0..k).filter(|&v| sig[v] == self.sig[u]).collect())
            .collect();
        let mut order: Vec<usize> = (0..k).collect();
        order.sort_by_key(|&u| (candidates[u].len(), u));

        let mut image = vec![usize::MAX; k];
        let mut used = vec![false; k];
        if self.extend(&order, 0, &candidates, &m, &mut image, &mut used) {
            Some(image)
        } else {
            None
        }
    }

    fn extend(
        &self,
        order: &[usize],
        depth: usize,
        candidates: &[Vec<usize>],
        m: &[bool],
        image: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        let k = self.n;
        let Some(&u) = order.get(depth) else {
            return true;
        };
        for &v in &candidates[u] {
            if used[v] {
                continue;
            }
            let consistent = order[..depth].iter().all(|&w| {
                let fw = image[w];
                self.p_leq(w, u) == m[fw * k + v] && self.p_leq(u, w) == m[v * k + fw]
            });
            if !consistent {
                continue;
            }
            image[u] = v;
            used[v] = true;
            if self.extend(order, depth + 1, candidates, m, image, used) {
                return true;
            }
            used[v] = false;
        }
        image[u] = usize::MAX;
        false
    }

    /// Isomorphism from the pattern onto the subposet of `host` induced on
    /// `subset`, as pattern element -> host element.
    pub fn embed_in(&self, host: &impl Order, subset: &[usize]) -> Option<Vec<usize>> {
        let pos = self.match_order(subset.len(), |i, j| host.leq(subset[i], subset[j]))?;
        Some(pos.into_iter().map(|i| subset[i]).collect())
    }

    /// True iff `subset` induces a copy of the pattern in `host`. Repeated
    /// elements make the answer false.
    pub fn is_copy_in(&self, host: &impl Order, subset: &[usize]) -> bool {
        let mut sorted = subset.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        sorted.len() == subset.len() && self.embed_in(host, subset).is_some()
    }
}

/// True iff the subposet of `host` induced on `subset` is isomorphic to `p`.
pub fn is_copy(subset: &[usize], host: &impl Order, p: &Poset) -> Result<bool> {
    if let Some(&x) = subset.iter().find(|&&x| x >= host.size()) {
        return Err(Error::invalid(format!(
            "element {x} outside host of size {}",
            host.size()
        )));
    }
    if subset.len() != p.len() {
        return Ok(false);
    }
    Ok(Pattern::new(p).is_copy_in(host, subset))
}

/// Pattern elements in a linear extension (a strictly-below count is a
/// strictly monotone function of the order).
fn linear_extension(p: &Poset) -> Vec<usize> {
    let mut order: Vec<usize> = (0..p.len()).collect();
    order.sort_by_key(|&u| (p.down_degree(u), u));
    order
}

struct EmbeddingSearch<'a, H: Order> {
    host: &'a H,
    p: &'a Poset,
    order: Vec<usize>,
    image: Vec<usize>,
    used: Vec<bool>,
    checks: u64,
    budget: u64,
}

impl<H: Order> EmbeddingSearch<'_, H> {
    fn new<'a>(host: &'a H, p: &'a Poset, budget: u64) -> EmbeddingSearch<'a, H> {
        EmbeddingSearch {
            host,
            p,
            order: linear_extension(p),
            image: vec![usize::MAX; p.len()],
            used: vec![false; host.size()],
            checks: 0,
            budget,
        }
    }

    fn fits(&self, depth: usize, u: usize, v: usize) -> bool {
        self.order[..depth].iter().all(|&w| {
            let fw = self.image[w];
            self.p.leq(w, u) == self.host.leq(fw, v) && self.p.leq(u, w) == self.host.leq(v, fw)
        })
    }

    /// Visits embeddings in lexicographic order of images along `order`.
    /// `visit` returns false to stop the search.
    fn run(&mut self, depth: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> Result<bool> {
        if depth == self.order.len() {
            return Ok(visit(&self.image));
        }
        let u = self.order[depth];
        for v in 0..self.host.size() {
            if self.used[v] {
                continue;
            }
            self.checks += 1;
            if self.checks > self.budget {
                return Err(Error::Budget {
                    what: "copy enumeration checks",
                    required: self.checks as u128,
                    limit: self.budget as u128,
                });
            }
            if !self.fits(depth, u, v) {
                continue;
            }
            self.image[u] = v;
            self.used[v] = true;
            let keep_going = self.run(depth + 1, visit)?;
            self.used[v] = false;
            if !keep_going {
                return Ok(false);
            }
        }
        self.image[u] = usize::MAX;
        Ok(true)
    }
}

/// The lexicographically least embedding of `p` into `host` (images taken
/// along a linear extension of `p`), as `p` element -> host element.
pub fn find_embedding(host: &impl Order, p: &Poset) -> Result<Option<Vec<usize>>> {
    if p.len() > host.size() {
        return Ok(None);
    }
    let mut found = None;
    let mut search = EmbeddingSearch::new(host, p, DEFAULT_COPY_BUDGET);
    search.run(0, &mut |image| {
        found = Some(image.to_vec());
        false
    })?;
    Ok(found)
}

/// All copies of `p` in `host`, each as a sorted element list, in sorted
/// order and without duplicates.
pub fn enumerate_copies(host: &impl Order, p: &Poset) -> Result<Vec<Vec<usize>>> {
    enumerate_copies_with_budget(host, p, DEFAULT_COPY_BUDGET)
}

pub fn enumerate_copies_with_budget(
    host: &impl Order,
    p: &Poset,
    budget: u64,
) -> Result<Vec<Vec<usize>>> {
    if p.is_empty() || p.len() > host.size() {
        return Ok(Vec::new());
    }
    let mut copies = BTreeSet::new();
    let mut search = EmbeddingSearch::new(host, p, budget);
    search.run(0, &mut |image| {
        let mut set = image.to_vec();
        set.sort_unstable();
        copies.insert(set);
        true
    })?;
    Ok(copies.into_iter().collect())
}

/// Smallest `d` such that `2^[d]` contains a copy of `P`, with the
/// lexicographically least witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubeEmbedding {
    pub d: usize,
    /// Mask in `2^[d]` of each element of `P`.
    pub masks: Vec<u128>,
}

pub fn minimal_cube_dim(p: &Poset) -> Result<CubeEmbedding> {
    if p.is_empty() {
        return Err(Error::invalid("empty poset"));
    }
    // x -> (down-set of x) embeds P in 2^[|P|], so the loop ends by d = |P|.
    for d in 0..=p.len() {
        if (1usize << d) < p.len() {
            continue;
        }
        let host = BooleanLattice::new(d)?;
        if let Some(image) = find_embedding(&host, p)? {
            return Ok(CubeEmbedding {
                d,
                masks: image.into_iter().map(|m| m as u128).collect(),
            });
        }
    }
    unreachable!("down-set embedding always exists")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::GridPoset;

    fn naive_iso(p: &Poset, host: &impl Order, subset: &[usize]) -> bool {
        fn permute(k: usize, perm: &mut Vec<usize>, used: &mut Vec<bool>, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
            if perm.len() == k {
                return f(perm);
            }
            for v in 0..k {
                if !used[v] {
                    used[v] = true;
                    perm.push(v);
                    if permute(k, perm, used, f) {
                        return true;
                    }
                    perm.pop();
                    used[v] = false;
                }
            }
            false
        }
        let k = p.len();
        if subset.len() != k {
            return false;
        }
        permute(k, &mut Vec::new(), &mut vec![false; k], &mut |perm| {
            (0..k).all(|u| (0..k).all(|w| p.leq(u, w) == host.leq(subset[perm[u]], subset[perm[w]])))
        })
    }

    #[test]
    fn copy_examples() {
        let b2 = BooleanLattice::new(2).unwrap();
        let d = Poset::diamond();
        assert!(is_copy(&[0, 1, 2, 3], &b2, &d).unwrap());
        // {1} and {2} are incomparable.
        assert!(!is_copy(&[1, 2], &b2, &Poset::chain(2)).unwrap());
        // ∅, {1}, {2}, {1,2,3} in 2^[3].
        let b3 = BooleanLattice::new(3).unwrap();
        let subset = [0b000, 0b001, 0b010, 0b111];
        assert!(is_copy(&subset, &b3, &d).unwrap());
        assert!(naive_iso(&d, &b3, &subset));
        assert!(is_copy(&[0, 9], &b3, &Poset::chain(2)).is_err());
    }

    #[test]
    fn enumeration_counts() {
        let b2 = BooleanLattice::new(2).unwrap();
        assert_eq!(enumerate_copies(&b2, &Poset::diamond()).unwrap().len(), 1);
        let c4 = Poset::chain(4);
        assert_eq!(enumerate_copies(&c4, &Poset::chain(2)).unwrap().len(), 6);
    }

    #[test]
    fn three_chains_in_cube_match_recursive_count() {
        // Count strict chains A < B < C in 2^[3] by direct recursion.
        fn count(from: usize, left: usize) -> usize {
            if left == 0 {
                return 1;
            }
            (0..8usize)
                .filter(|&y| y != from && from & !y == 0)
                .map(|y| count(y, left - 1))
                .sum()
        }
        let expected: usize = (0..8).map(|x| count(x, 2)).sum();
        let b3 = BooleanLattice::new(3).unwrap();
        let got = enumerate_copies(&b3, &Poset::chain(3)).unwrap();
        assert_eq!(got.len(), expected);
        assert_eq!(expected, 18);
    }

    #[test]
    fn budget_is_reported() {
        let g = GridPoset::new(&[6, 6]).unwrap();
        let err = enumerate_copies_with_budget(&g, &Poset::diamond(), 100).unwrap_err();
        assert!(matches!(err, Error::Budget { .. }));
    }

    #[test]
    fn cube_dims() {
        assert_eq!(minimal_cube_dim(&Poset::chain(2)).unwrap().d, 1);
        assert_eq!(minimal_cube_dim(&Poset::diamond()).unwrap().d, 2);
        let c4 = minimal_cube_dim(&Poset::chain(4)).unwrap();
        assert_eq!(c4.d, 3);
        let b2 = BooleanLattice::new(2).unwrap();
        assert!(find_embedding(&b2, &Poset::chain(4)).unwrap().is_none());
        assert_eq!(minimal_cube_dim(&Poset::singleton()).unwrap().d, 0);
        assert_eq!(minimal_cube_dim(&Poset::antichain(3)).unwrap().d, 3);
    }

    #[test]
    fn pattern_agrees_with_naive_on_all_subsets_of_small_hosts() {
        let host = Poset::grid(&[3, 3]).unwrap();
        for p in [Poset::chain(3), Poset::diamond(), Poset::antichain(2), Poset::s2k(2).unwrap()] {
            let k = p.len();
            let pat = Pattern::new(&p);
            let n = host.len();
            for mask in 0u32..(1 << n) {
                if mask.count_ones() as usize != k {
                    continue;
                }
                let subset: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
                assert_eq!(pat.is_copy_in(&host, &subset), naive_iso(&p, &host, &subset));
            }
        }
    }
}
