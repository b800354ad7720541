use std::fmt;

use super::{Order, MATERIALIZATION_BUDGET};
use crate::error::{Error, Result};

/// Largest ground set for point queries.
pub const MAX_GROUND: usize = 128;

/// A subset of `[n]`, stored as a bit mask (element `i` is bit `i - 1`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BooleanElement {
    pub mask: u128,
    pub ground: u8,
}

impl BooleanElement {
    pub fn new(mask: u128, ground: usize) -> Result<Self> {
        if ground > MAX_GROUND {
            return Err(Error::invalid(format!("ground set {ground} exceeds {MAX_GROUND}")));
        }
        if ground < MAX_GROUND && mask >> ground != 0 {
            return Err(Error::invalid(format!(
                "mask {mask:#x} has bits outside [{ground}]"
            )));
        }
        Ok(BooleanElement {
            mask,
            ground: ground as u8,
        })
    }

    pub fn subset_of(&self, other: &BooleanElement) -> bool {
        self.mask & !other.mask == 0
    }

    pub fn level(&self) -> u32 {
        self.mask.count_ones()
    }

    /// Coordinates in `[2]^n` under the index-preserving bijection: the
    /// row-major index of the returned coordinates equals `mask`.
    pub fn grid_coords(&self) -> Vec<usize> {
        let n = self.ground as usize;
        (1..=n).map(|i| 1 + (self.mask >> (n - i) & 1) as usize).collect()
    }
}

impl fmt::Display for BooleanElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.mask)
    }
}

/// `2^[n]` ordered by inclusion, indexed by mask. Usable as an [`Order`]
/// for `n` up to 24.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BooleanLattice {
    n: usize,
}

impl BooleanLattice {
    pub fn new(n: usize) -> Result<Self> {
        if (1usize << n.min(63)) > MATERIALIZATION_BUDGET {
            return Err(Error::Budget {
                what: "Boolean lattice elements",
                required: 1u128 << n.min(127),
                limit: MATERIALIZATION_BUDGET as u128,
            });
        }
        Ok(BooleanLattice { n })
    }

    pub fn ground(&self) -> usize {
        self.n
    }
}

impl Order for BooleanLattice {
    fn size(&self) -> usize {
        1 << self.n
    }

    #[inline]
    fn leq(&self, x: usize, y: usize) -> bool {
        x & !y == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::GridPoset;

    #[test]
    fn inclusion_matches_binary_grid() {
        for n in 0..=12 {
            let b = BooleanLattice::new(n).unwrap();
            let dims = vec![2; n];
            if n == 0 {
                assert_eq!(b.size(), 1);
                continue;
            }
            let g = GridPoset::new(&dims).unwrap();
            assert_eq!(g.size(), b.size());
            for x in 0..b.size() {
                let ex = BooleanElement::new(x as u128, n).unwrap();
                assert_eq!(g.index(&ex.grid_coords()), x);
                for y in 0..b.size() {
                    assert_eq!(b.leq(x, y), g.leq(x, y), "n={n} x={x} y={y}");
                }
            }
        }
    }

    #[test]
    fn element_validation() {
        assert!(BooleanElement::new(0b100, 2).is_err());
        assert!(BooleanElement::new(u128::MAX, 128).is_ok());
        let a = BooleanElement::new(0b011, 3).unwrap();
        let b = BooleanElement::new(0b111, 3).unwrap();
        assert!(a.subset_of(&b) && !b.subset_of(&a));
        assert_eq!(format!("{b}"), "0x7");
    }
}
