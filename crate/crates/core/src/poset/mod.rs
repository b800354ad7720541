//! Finite posets.
//!
//! Small posets (tiling targets, hosts for exhaustive search) are stored as
//! a reflexive-transitive closure matrix. Large hosts such as grids and
//! Boolean lattices never build a matrix; they implement [`Order`] with a
//! comparator rule instead.

mod boolean;
mod grid;
mod iso;
mod text;

pub use boolean::{BooleanElement, BooleanLattice, MAX_GROUND};
pub use grid::GridPoset;
pub use iso::{
    enumerate_copies, enumerate_copies_with_budget, find_embedding, is_copy, minimal_cube_dim,
    CubeEmbedding, Pattern, DEFAULT_COPY_BUDGET,
};
pub use text::{parse_poset_spec, parse_poset_text, poset_to_text};

use crate::error::{Error, Result};

/// Largest poset that may carry a full relation matrix.
pub const MATRIX_LIMIT: usize = 1 << 14;

/// Largest host whose elements may be enumerated one by one.
pub const MATERIALIZATION_BUDGET: usize = 1 << 24;

/// A partial order on `0..size()`.
pub trait Order {
    fn size(&self) -> usize;

    /// `x ⪯ y`.
    fn leq(&self, x: usize, y: usize) -> bool;

    fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    fn comparable(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }
}

impl<T: Order + ?Sized> Order for &T {
    fn size(&self) -> usize {
        (**self).size()
    }

    fn leq(&self, x: usize, y: usize) -> bool {
        (**self).leq(x, y)
    }
}

/// A materialized finite poset.
///
/// Row `x` of the closure matrix has bit `y` set iff `x ⪯ y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    name: String,
    n: usize,
    words: usize,
    up: Vec<u64>,
}

impl Poset {
    fn empty_matrix(name: impl Into<String>, n: usize) -> Result<Self> {
        if n > MATRIX_LIMIT {
            return Err(Error::Budget {
                what: "relation matrix",
                required: n as u128,
                limit: MATRIX_LIMIT as u128,
            });
        }
        let words = n.div_ceil(64).max(1);
        Ok(Poset {
            name: name.into(),
            n,
            words,
            up: vec![0; n * words],
        })
    }

    fn set(&mut self, x: usize, y: usize) {
        self.up[x * self.words + y / 64] |= 1 << (y % 64);
    }

    /// Builds a poset from any comparator. The comparator must already be a
    /// partial order; this is checked.
    pub fn from_order(name: impl Into<String>, order: &impl Order) -> Result<Self> {
        let n = order.size();
        let mut p = Self::empty_matrix(name, n)?;
        for x in 0..n {
            for y in 0..n {
                if order.leq(x, y) {
                    p.set(x, y);
                }
            }
        }
        p.check_axioms()?;
        Ok(p)
    }

    /// Builds the reflexive-transitive closure of `relations` (pairs `x < y`).
    pub fn from_relations(
        name: impl Into<String>,
        n: usize,
        relations: &[(usize, usize)],
    ) -> Result<Self> {
        let mut p = Self::empty_matrix(name, n)?;
        for x in 0..n {
            p.set(x, x);
        }
        for &(x, y) in relations {
            if x >= n || y >= n {
                return Err(Error::invalid(format!(
                    "relation ({x},{y}) out of range for {n} elements"
                )));
            }
            p.set(x, y);
        }
        // Warshall on bit rows.
        let w = p.words;
        for k in 0..n {
            let row_k: Vec<u64> = p.up[k * w..(k + 1) * w].to_vec();
            for i in 0..n {
                if p.leq(i, k) {
                    for (dst, src) in p.up[i * w..(i + 1) * w].iter_mut().zip(&row_k) {
                        *dst |= *src;
                    }
                }
            }
        }
        for x in 0..n {
            for y in (x + 1)..n {
                if p.leq(x, y) && p.leq(y, x) {
                    return Err(Error::invalid(format!(
                        "relations contain a cycle through {x} and {y}"
                    )));
                }
            }
        }
        Ok(p)
    }

    pub fn singleton() -> Self {
        Self::chain(1)
    }

    pub fn chain(k: usize) -> Self {
        let rel: Vec<_> = (1..k).map(|i| (i - 1, i)).collect();
        let mut p = Self::from_relations(format!("chain:{k}"), k, &rel).expect("chain is acyclic");
        p.name = format!("chain:{k}");
        p
    }

    pub fn antichain(k: usize) -> Self {
        Self::from_relations(format!("antichain:{k}"), k, &[]).expect("antichain")
    }

    /// The grid `[a_1]×...×[a_d]`, materialized. Element order is the
    /// row-major order of [`GridPoset`].
    pub fn grid(dims: &[usize]) -> Result<Self> {
        let g = GridPoset::new(dims)?;
        if g.size() > MATRIX_LIMIT {
            return Err(Error::Budget {
                what: "relation matrix",
                required: g.size() as u128,
                limit: MATRIX_LIMIT as u128,
            });
        }
        let mut p = Self::empty_matrix(g.spec(), g.size())?;
        for x in 0..g.size() {
            for y in 0..g.size() {
                if g.leq(x, y) {
                    p.set(x, y);
                }
            }
        }
        Ok(p)
    }

    pub fn diamond() -> Self {
        Self::grid(&[2, 2]).expect("2x2 grid")
    }

    /// `2^[n]`, indexed by subset mask.
    pub fn boolean(n: usize) -> Result<Self> {
        let lattice = BooleanLattice::new(n)?;
        let mut p = Self::from_order(format!("boolean:{n}"), &lattice)?;
        p.name = format!("boolean:{n}");
        Ok(p)
    }

    /// Two `k`-element antichains with every element of the first below
    /// every element of the second. Elements `0..k` form the lower side.
    pub fn s2k(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::invalid("s2k needs k >= 1"));
        }
        let rel: Vec<_> = (0..k)
            .flat_map(|lo| (0..k).map(move |hi| (lo, k + hi)))
            .collect();
        Self::from_relations(format!("s2k:{k}"), 2 * k, &rel)
    }

    /// Cartesian product with the componentwise order. Element `(p, q)` has
    /// index `p * other.size() + q`.
    pub fn product(&self, other: &Poset) -> Result<Poset> {
        let n = self
            .n
            .checked_mul(other.n)
            .filter(|&n| n <= MATRIX_LIMIT)
            .ok_or(Error::Budget {
                what: "relation matrix",
                required: self.n as u128 * other.n as u128,
                limit: MATRIX_LIMIT as u128,
            })?;
        let mut p = Self::empty_matrix(format!("{}*{}", self.name, other.name), n)?;
        let m = other.n;
        for x in 0..n {
            for y in 0..n {
                if self.leq(x / m, y / m) && other.leq(x % m, y % m) {
                    p.set(x, y);
                }
            }
        }
        Ok(p)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Number of elements strictly below `x`.
    pub fn down_degree(&self, x: usize) -> usize {
        (0..self.n).filter(|&y| self.lt(y, x)).count()
    }

    /// Number of elements strictly above `x`.
    pub fn up_degree(&self, x: usize) -> usize {
        let row = &self.up[x * self.words..(x + 1) * self.words];
        row.iter().map(|w| w.count_ones() as usize).sum::<usize>() - 1
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.n).filter(|&x| self.up_degree(x) == 0).collect()
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.n).filter(|&x| self.down_degree(x) == 0).collect()
    }

    /// True iff there is exactly one maximal and exactly one minimal element.
    pub fn has_unique_max_min(&self) -> bool {
        self.maximal_elements().len() == 1 && self.minimal_elements().len() == 1
    }

    pub fn maximum(&self) -> Option<usize> {
        match self.maximal_elements()[..] {
            [x] => Some(x),
            _ => None,
        }
    }

    pub fn minimum(&self) -> Option<usize> {
        match self.minimal_elements()[..] {
            [x] => Some(x),
            _ => None,
        }
    }

    /// Covering pairs `(x, y)`: `x < y` with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in 0..self.n {
            for y in 0..self.n {
                if self.lt(x, y) && !(0..self.n).any(|z| self.lt(x, z) && self.lt(z, y)) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Number of strictly comparable ordered pairs.
    pub fn strict_relation_count(&self) -> usize {
        (0..self.n).map(|x| self.up_degree(x)).sum()
    }

    /// Checks reflexivity, antisymmetry and transitivity by a full scan.
    pub fn check_axioms(&self) -> Result<()> {
        for x in 0..self.n {
            if !self.leq(x, x) {
                return Err(Error::invalid(format!("not reflexive at {x}")));
            }
            for y in 0..self.n {
                if x != y && self.leq(x, y) && self.leq(y, x) {
                    return Err(Error::invalid(format!("not antisymmetric at ({x},{y})")));
                }
                if self.leq(x, y) {
                    for z in 0..self.n {
                        if self.leq(y, z) && !self.leq(x, z) {
                            return Err(Error::invalid(format!(
                                "not transitive at ({x},{y},{z})"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

impl Order for Poset {
    fn size(&self) -> usize {
        self.n
    }

    #[inline]
    fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x * self.words + y / 64] >> (y % 64) & 1 == 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn maximal_chains(p: &Poset) -> Vec<Vec<usize>> {
        fn extend(p: &Poset, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            let last = *path.last().unwrap();
            let next: Vec<_> = p
                .covers()
                .into_iter()
                .filter(|&(x, _)| x == last)
                .map(|(_, y)| y)
                .collect();
            if next.is_empty() {
                out.push(path.clone());
            }
            for y in next {
                path.push(y);
                extend(p, path, out);
                path.pop();
            }
        }
        let mut out = Vec::new();
        for m in p.minimal_elements() {
            extend(p, &mut vec![m], &mut out);
        }
        out
    }

    #[test]
    fn grid_2x3_has_three_maximal_chains_of_four() {
        let g = Poset::grid(&[2, 3]).unwrap();
        assert_eq!(g.len(), 6);
        let chains = maximal_chains(&g);
        // Lattice paths from (1,1) to (2,3): C(3,1) = 3.
        assert_eq!(chains.len(), 3);
        assert!(chains.iter().all(|c| c.len() == 4));
    }

    #[test]
    fn one_dimensional_grid_is_a_chain() {
        let g = Poset::grid(&[4]).unwrap();
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(g.leq(x, y), x <= y);
            }
        }
    }

    #[test]
    fn grid_rejects_bad_dims() {
        assert!(Poset::grid(&[]).is_err());
        assert!(Poset::grid(&[2, 0]).is_err());
    }

    #[test]
    fn cycle_is_rejected() {
        assert!(Poset::from_relations("bad", 3, &[(0, 1), (1, 2), (2, 0)]).is_err());
    }

    #[test]
    fn s2k_shapes() {
        assert_eq!(Poset::s2k(1).unwrap().strict_relation_count(), 1);
        let s2 = Poset::s2k(2).unwrap();
        assert_eq!(s2.strict_relation_count(), 4);
        assert!(!s2.has_unique_max_min());
        let s3 = Poset::s2k(3).unwrap();
        for x in 0..6 {
            for y in 0..6 {
                if x == y {
                    continue;
                }
                let cross = (x < 3) != (y < 3);
                assert_eq!(s3.comparable(x, y), cross, "({x},{y})");
            }
        }
        assert!(Poset::s2k(0).is_err());
    }

    #[test]
    fn unique_max_min() {
        assert!(Poset::diamond().has_unique_max_min());
        assert!(!Poset::antichain(2).has_unique_max_min());
        assert!(Poset::singleton().has_unique_max_min());
        for k in 2..5 {
            assert_eq!(Poset::s2k(k).unwrap().maximal_elements().len(), k);
        }
    }

    #[test]
    fn product_sizes_and_order() {
        let c2 = Poset::chain(2);
        let sq = c2.product(&c2).unwrap();
        assert_eq!(sq.len(), 4);
        assert_eq!(sq.covers().len(), 4);
        let d = Poset::diamond();
        let same = d.product(&Poset::singleton()).unwrap();
        assert_eq!(same.up, d.up);
    }

    #[test]
    fn boolean_and_s2k_satisfy_axioms() {
        for n in 0..6 {
            Poset::boolean(n).unwrap().check_axioms().unwrap();
        }
        for k in 1..5 {
            Poset::s2k(k).unwrap().check_axioms().unwrap();
        }
    }
}
