//! Almost-partitions of `2^[n]` into copies of a grid, and through a grid
//! into copies of a general poset.
//!
//! Split `n = m_1 + ... + m_d` and partition each factor `2^[m_i]` into
//! chains `C_{i,1}, C_{i,2}, ...` of size `h`, the first of size in
//! `[h, 2h)`. The blocks `C_{1,j_1}×...×C_{d,j_d}` partition `2^[n]` and are
//! grids; every block other than `B_{1..1}` has a side equal to `h` and is
//! tiled by [`tile_grid`](crate::grid::tile_grid). `B_{1..1}` is tiled as
//! far as it goes and the rest of it is the leftover `S`.
//!
//! Tile ids are mixed radix: block index `(j_1..j_d)` row-major over the
//! chain counts, then the tile within the block, then (when refining to a
//! non-grid target) the tile within the grid copy.

mod almost;
mod bounds;
mod manifest;

pub use almost::{
    almost_partition, almost_partition_into_grid, almost_partition_into_poset, grid_refinement, AlmostPartition,
    Refinement,
};
pub use bounds::{pipeline_leftover_bound, theoretical_bounds, Bounds};
pub use manifest::{load_manifest, read_manifest, verify_manifest, write_manifest, Manifest, ManifestMode};

use std::collections::BTreeMap;

use crate::chains::{chain_partition_counts, EXPLICIT_MAX_N};
use crate::error::{Error, Infeasibility, Result};
use crate::grid::{grid_tile_coords, slab_divisor, ThresholdMode};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PipelineConfig {
    pub n: usize,
    /// Sides of the grid the blocks are tiled by.
    pub p_dims: Vec<usize>,
    pub m_parts: Vec<usize>,
    pub h: usize,
    pub mode: ThresholdMode,
}

impl PipelineConfig {
    /// Equal split of `n` with the remainder on `m_1`, checked for
    /// feasibility.
    pub fn new(n: usize, p_dims: &[usize], h: usize, mode: ThresholdMode) -> Result<Self> {
        let d = p_dims.len();
        if d == 0 || p_dims.contains(&0) {
            return Err(Error::invalid("target sides must be positive"));
        }
        if n < d {
            return Err(Error::invalid(format!("n={n} is smaller than the dimension {d}")));
        }
        let mut m_parts = vec![n / d; d];
        m_parts[0] += n % d;
        let config = PipelineConfig {
            n,
            p_dims: p_dims.to_vec(),
            m_parts,
            h,
            mode,
        };
        config.check()?;
        Ok(config)
    }

    pub fn d(&self) -> usize {
        self.p_dims.len()
    }

    /// `|C_{i,1}|` for every factor.
    pub fn first_lens(&self) -> Result<Vec<usize>> {
        self.m_parts
            .iter()
            .map(|&m| chain_partition_counts(m, self.h).map(|(c1, _)| c1))
            .collect()
    }

    /// Sides of a block whose off-size factors are the set bits of `shape`.
    pub(crate) fn block_sides(&self, first: &[usize], shape: usize) -> Vec<usize> {
        (0..self.d())
            .map(|i| if shape >> i & 1 == 1 { first[i] } else { self.h })
            .collect()
    }

    fn check(&self) -> Result<()> {
        if self.m_parts.iter().sum::<usize>() != self.n || self.m_parts.len() != self.d() {
            return Err(Error::invalid("factor sizes must sum to n, one per dimension"));
        }
        if let Some(&m) = self.m_parts.iter().find(|&&m| m == 0 || m > EXPLICIT_MAX_N) {
            return Err(Error::Budget {
                what: "chain partition factor size",
                required: m as u128,
                limit: EXPLICIT_MAX_N as u128,
            });
        }
        let divisor = slab_divisor(&self.p_dims, self.mode);
        if !self.h.is_multiple_of(divisor) {
            return Err(Error::precondition(format!(
                "h={} must be divisible by {divisor} in {} mode",
                self.h,
                self.mode.as_str()
            )));
        }
        let first = self.first_lens()?;
        let all = (1 << self.d()) - 1;
        for shape in 0..all {
            let sides = self.block_sides(&first, shape);
            grid_tile_coords(&sides, &self.p_dims, self.mode)?;
        }
        Ok(())
    }
}

/// The standard `h = 12|P|²` in strict mode; in precise mode the smallest
/// multiple of the slab divisor for which every factor admits a chain
/// partition and every full block can be tiled.
pub fn plan_pipeline(n: usize, p_dims: &[usize], mode: ThresholdMode) -> Result<PipelineConfig> {
    if p_dims.is_empty() || p_dims.contains(&0) {
        return Err(Error::invalid("target sides must be positive"));
    }
    let d = p_dims.len();
    if n < d {
        return Err(Error::invalid(format!("n={n} is smaller than the dimension {d}")));
    }
    if mode == ThresholdMode::Strict {
        let alpha: usize = p_dims.iter().product();
        let h = 12 * alpha * alpha;
        return PipelineConfig::new(n, p_dims, h, mode).map_err(|e| {
            Error::Infeasible(Infeasibility::NoConfiguration {
                n,
                detail: format!("strict h={h}: {e}"),
            })
        });
    }
    let divisor = slab_divisor(p_dims, mode);
    let longest = n / d + n % d + 1;
    // first failure per reason, to say what blocks
    let mut reasons: BTreeMap<String, usize> = BTreeMap::new();
    let mut h = divisor;
    while h <= longest {
        match PipelineConfig::new(n, p_dims, h, mode) {
            Ok(c) => return Ok(c),
            Err(e @ Error::Budget { .. }) => return Err(e),
            Err(e) => {
                let why = match &e {
                    Error::Infeasible(Infeasibility::LevelCapacity { .. }) => "too few chains for the middle level",
                    Error::Infeasible(Infeasibility::ChainTooLong { .. }) => "chain longer than the factor",
                    Error::Infeasible(Infeasibility::NoDivisibleSide { .. }) | Error::Precondition(_) => {
                        "a full block cannot be tiled"
                    }
                    _ => "other",
                };
                reasons.entry(format!("{why} ({e})")).or_insert(h);
            }
        }
        h += divisor;
    }
    let mut detail = format!("tried multiples of {divisor} up to {longest}");
    for (why, h) in reasons {
        detail.push_str(&format!("; h={h}: {why}"));
    }
    Err(Error::Infeasible(Infeasibility::NoConfiguration { n, detail }))
}
