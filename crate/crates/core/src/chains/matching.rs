//! Hopcroft–Karp maximum bipartite matching over a compressed adjacency list.

use std::collections::VecDeque;

const FREE: u32 = u32::MAX;

/// Left vertex `i` has neighbours `targets[offsets[i]..offsets[i + 1]]`.
pub(crate) struct Bipartite {
    pub offsets: Vec<usize>,
    pub targets: Vec<u32>,
    pub right: usize,
}

impl Bipartite {
    pub fn new(right: usize) -> Self {
        Bipartite {
            offsets: vec![0],
            targets: Vec::new(),
            right,
        }
    }

    /// Closes the neighbour list of the next left vertex.
    pub fn push_left(&mut self, neighbours: impl IntoIterator<Item = u32>) {
        self.targets.extend(neighbours);
        self.offsets.push(self.targets.len());
    }

    pub fn left(&self) -> usize {
        self.offsets.len() - 1
    }

    fn adj(&self, u: usize) -> &[u32] {
        &self.targets[self.offsets[u]..self.offsets[u + 1]]
    }

    /// Maximum matching as `mate[left] = Some(right)`.
    pub fn max_matching(&self) -> Vec<Option<u32>> {
        let n = self.left();
        let mut mate_l = vec![FREE; n];
        let mut mate_r = vec![FREE; self.right];
        let mut dist = vec![u32::MAX; n];
        loop {
            // layer free left vertices
            let mut queue = VecDeque::new();
            for u in 0..n {
                if mate_l[u] == FREE {
                    dist[u] = 0;
                    queue.push_back(u);
                } else {
                    dist[u] = u32::MAX;
                }
            }
            let mut found = false;
            while let Some(u) = queue.pop_front() {
                for &v in self.adj(u) {
                    let w = mate_r[v as usize];
                    if w == FREE {
                        found = true;
                    } else if dist[w as usize] == u32::MAX {
                        dist[w as usize] = dist[u] + 1;
                        queue.push_back(w as usize);
                    }
                }
            }
            if !found {
                break;
            }
            let mut progress = false;
            for u in 0..n {
                if mate_l[u] == FREE && self.augment(u, &mut mate_l, &mut mate_r, &mut dist) {
                    progress = true;
                }
            }
            if !progress {
                break;
            }
        }
        mate_l.into_iter().map(|m| (m != FREE).then_some(m)).collect()
    }

    /// Layered DFS with an explicit stack.
    fn augment(&self, root: usize, mate_l: &mut [u32], mate_r: &mut [u32], dist: &mut [u32]) -> bool {
        // (left vertex, next neighbour position)
        let mut stack: Vec<(usize, usize)> = vec![(root, self.offsets[root])];
        while let Some(&mut (u, ref mut pos)) = stack.last_mut() {
            if *pos == self.offsets[u + 1] {
                dist[u] = u32::MAX;
                stack.pop();
                continue;
            }
            let v = self.targets[*pos];
            *pos += 1;
            let w = mate_r[v as usize];
            if w == FREE {
                // flip along the stack
                let mut v = v;
                for &(x, _) in stack.iter().rev() {
                    let prev = mate_l[x];
                    mate_l[x] = v;
                    mate_r[v as usize] = x as u32;
                    v = prev;
                }
                return true;
            }
            if dist[w as usize] == dist[u] + 1 {
                stack.push((w as usize, self.offsets[w as usize]));
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;

    fn brute(g: &Bipartite) -> usize {
        fn go(g: &Bipartite, u: usize, used: &mut Vec<bool>) -> usize {
            if u == g.left() {
                return 0;
            }
            let mut best = go(g, u + 1, used);
            for &v in g.adj(u) {
                if !used[v as usize] {
                    used[v as usize] = true;
                    best = best.max(1 + go(g, u + 1, used));
                    used[v as usize] = false;
                }
            }
            best
        }
        go(g, 0, &mut vec![false; g.right])
    }

    #[test]
    fn matches_brute_force_on_small_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let mut g = Bipartite::new(6);
            for _ in 0..6 {
                let nb: Vec<u32> = (0..6).filter(|_| rng.gen_bool(0.4)).collect();
                g.push_left(nb);
            }
            let m = g.max_matching();
            let size = m.iter().flatten().count();
            assert_eq!(size, brute(&g));
            let mut used = [false; 6];
            for (u, v) in m.iter().enumerate() {
                if let Some(v) = v {
                    assert!(g.adj(u).contains(v));
                    assert!(!std::mem::replace(&mut used[*v as usize], true));
                }
            }
        }
    }
}
