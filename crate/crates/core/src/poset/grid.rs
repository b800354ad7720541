use super::{Order, MATERIALIZATION_BUDGET};
use crate::error::{Error, Result};

/// The grid `[a_1]×...×[a_d]` with componentwise order.
///
/// Coordinates are 1-based, as in `[a] = {1, ..., a}`. Element indices are
/// row-major with the last coordinate varying fastest; this numbering is
/// fixed so that tile ids and files are reproducible.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GridPoset {
    dims: Vec<usize>,
    strides: Vec<usize>,
    size: usize,
}

impl GridPoset {
    pub fn new(dims: &[usize]) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::invalid("grid needs at least one dimension"));
        }
        if let Some(i) = dims.iter().position(|&a| a == 0) {
            return Err(Error::invalid(format!("grid side {i} is zero")));
        }
        let mut size: usize = 1;
        for &a in dims {
            size = size.checked_mul(a).ok_or(Error::Budget {
                what: "grid size",
                required: u128::MAX,
                limit: usize::MAX as u128,
            })?;
        }
        let mut strides = vec![1; dims.len()];
        for i in (0..dims.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * dims[i + 1];
        }
        Ok(GridPoset {
            dims: dims.to_vec(),
            strides,
            size,
        })
    }

    /// Same as [`GridPoset::new`] but refuses hosts too large to enumerate.
    pub fn materializable(dims: &[usize]) -> Result<Self> {
        let g = Self::new(dims)?;
        if g.size > MATERIALIZATION_BUDGET {
            return Err(Error::Budget {
                what: "grid elements",
                required: g.size as u128,
                limit: MATERIALIZATION_BUDGET as u128,
            });
        }
        Ok(g)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.dims.len()
    }

    /// Shorthand such as `grid:4x13`.
    pub fn spec(&self) -> String {
        let sides: Vec<String> = self.dims.iter().map(|a| a.to_string()).collect();
        format!("grid:{}", sides.join("x"))
    }

    pub fn contains(&self, coords: &[usize]) -> bool {
        coords.len() == self.dims.len()
            && coords.iter().zip(&self.dims).all(|(&x, &a)| x >= 1 && x <= a)
    }

    pub fn index(&self, coords: &[usize]) -> usize {
        debug_assert!(self.contains(coords), "{coords:?} outside {:?}", self.dims);
        coords
            .iter()
            .zip(&self.strides)
            .map(|(&x, &s)| (x - 1) * s)
            .sum()
    }

    pub fn checked_index(&self, coords: &[usize]) -> Result<usize> {
        if !self.contains(coords) {
            return Err(Error::invalid(format!(
                "coordinate {coords:?} outside grid {:?}",
                self.dims
            )));
        }
        Ok(self.index(coords))
    }

    pub fn coords(&self, mut index: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.dims.len());
        for &s in &self.strides {
            out.push(index / s + 1);
            index %= s;
        }
        out
    }

    pub fn coords_leq(a: &[usize], b: &[usize]) -> bool {
        a.iter().zip(b).all(|(x, y)| x <= y)
    }
}

impl Order for GridPoset {
    fn size(&self) -> usize {
        self.size
    }

    fn leq(&self, x: usize, y: usize) -> bool {
        let (mut x, mut y) = (x, y);
        for &s in &self.strides {
            if x / s > y / s {
                return false;
            }
            x %= s;
            y %= s;
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_major_last_fastest() {
        let g = GridPoset::new(&[2, 3]).unwrap();
        assert_eq!(g.index(&[1, 1]), 0);
        assert_eq!(g.index(&[1, 3]), 2);
        assert_eq!(g.index(&[2, 1]), 3);
        for i in 0..g.size() {
            assert_eq!(g.index(&g.coords(i)), i);
        }
    }

    #[test]
    fn comparator_is_componentwise() {
        let g = GridPoset::new(&[3, 2, 2]).unwrap();
        for x in 0..g.size() {
            for y in 0..g.size() {
                assert_eq!(
                    g.leq(x, y),
                    GridPoset::coords_leq(&g.coords(x), &g.coords(y))
                );
            }
        }
    }
}
