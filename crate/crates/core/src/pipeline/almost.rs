use std::collections::HashMap;

use super::{plan_pipeline, PipelineConfig};
use crate::chains::{uniform_chain_partition, ChainPartition};
use crate::error::{Error, Infeasibility, Result};
use crate::grid::{grid_tile_coords, ThresholdMode};
use crate::poset::{GridPoset, Order, Pattern, Poset};
use crate::tiling::{Host, Tiling, UNTILED};
use crate::verify::{exact_cover_tiling_search_with, verify_tiling_exhaustive, ExactCoverOptions, PointOracle};

/// How a copy of the block grid `G` is split into copies of the target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Refinement {
    /// The target is `G` itself; `perm[k]` is the element of `G` playing
    /// target element `k`.
    Identity { perm: Vec<usize> },
    /// A perfect tiling of `G` by the target.
    Tiling(Tiling),
}

/// Tiling of one block shape, with its inverse.
#[derive(Clone, Debug)]
struct BlockTiling {
    grid: GridPoset,
    tiling: Tiling,
    lookup: Vec<(usize, usize)>,
}

/// An almost-partition of `2^[n]`: every element is in a tile or in the
/// leftover `S ⊆ B_{1..1}`. Queries never materialize more than one tile.
#[derive(Clone, Debug)]
pub struct AlmostPartition {
    config: PipelineConfig,
    target: Poset,
    factors: Vec<ChainPartition>,
    offsets: Vec<usize>,
    /// Indexed by the set of factors whose chain is the first one.
    shapes: Vec<BlockTiling>,
    per_block: u128,
    refinement: Refinement,
    refine_lookup: Vec<(usize, usize)>,
    leftover: Vec<u128>,
}

/// Tiles of `[c_1]×...×[c_d]` by `P`: the whole box when possible, else the
/// largest tileable lower corner box.
fn opportunistic(sides: &[usize], p_dims: &[usize], mode: ThresholdMode) -> Result<BlockTiling> {
    let grid = GridPoset::new(sides)?;
    let mut boxes = vec![Vec::new()];
    for &c in sides {
        boxes = boxes
            .into_iter()
            .flat_map(|b: Vec<usize>| {
                (1..=c).map(move |s| {
                    let mut b = b.clone();
                    b.push(s);
                    b
                })
            })
            .collect();
    }
    boxes.sort_by_key(|b| std::cmp::Reverse(b.iter().product::<usize>()));
    let volume: usize = p_dims.iter().product();
    let mut tiles = Vec::new();
    for b in boxes {
        if b.iter().product::<usize>() < volume {
            break;
        }
        if let Ok(coords) = grid_tile_coords(&b, p_dims, mode) {
            tiles = coords
                .into_iter()
                .map(|t| t.iter().map(|c| grid.index(c)).collect())
                .collect();
            break;
        }
    }
    Ok(block_tiling(grid, p_dims, tiles))
}

fn block_tiling(grid: GridPoset, p_dims: &[usize], tiles: Vec<Vec<usize>>) -> BlockTiling {
    let mut covered = vec![false; grid.size()];
    for &x in tiles.iter().flatten() {
        covered[x] = true;
    }
    let tiling = Tiling {
        host: Host::Grid(grid.clone()),
        target: crate::grid::grid_spec(p_dims),
        tiles,
        leftover: (0..grid.size()).filter(|&x| !covered[x]).collect(),
    };
    let lookup = tiling.lookup_table();
    BlockTiling { grid, tiling, lookup }
}

fn full(sides: &[usize], p_dims: &[usize], mode: ThresholdMode) -> Result<BlockTiling> {
    let grid = GridPoset::new(sides)?;
    let tiles = grid_tile_coords(sides, p_dims, mode)?
        .into_iter()
        .map(|t| t.iter().map(|c| grid.index(c)).collect())
        .collect();
    Ok(block_tiling(grid, p_dims, tiles))
}

/// `Some(dims)` when `p` is isomorphic to the grid named in its spec, with
/// `perm[k]` the grid element matching `p`'s element `k`.
fn as_grid(p: &Poset) -> Option<(Vec<usize>, Vec<usize>)> {
    let name = p.name();
    let dims: Vec<usize> = if let Some(s) = name.strip_prefix("grid:") {
        s.split('x').map(|t| t.parse().ok()).collect::<Option<_>>()?
    } else if let Some(k) = name.strip_prefix("chain:") {
        vec![k.parse().ok()?]
    } else {
        let k = name.strip_prefix("boolean:")?;
        vec![2; k.parse().ok()?]
    };
    let g = Poset::grid(&dims).ok()?;
    if g.len() != p.len() {
        return None;
    }
    // grid element -> p element
    let to_p = Pattern::new(&g).match_order(p.len(), |i, j| p.leq(i, j))?;
    let mut perm = vec![0; p.len()];
    for (gi, &pi) in to_p.iter().enumerate() {
        perm[pi] = gi;
    }
    Some((dims, perm))
}

/// The grid `G` to tile blocks by and how to split it into copies of `p`.
///
/// Grids skip refinement. Otherwise a supplied tiling of a grid is used, or
/// exact cover searches `[2|P|]^d0` for `d0 ≤ 2`. Anything else needs the
/// grid-power construction, which is not implemented.
pub fn grid_refinement(p: &Poset, grid_tiling: Option<&Tiling>) -> Result<(Vec<usize>, Refinement)> {
    if !p.has_unique_max_min() {
        return Err(Error::precondition(format!(
            "{} needs a unique maximal and a unique minimal element",
            p.name()
        )));
    }
    if let Some(t) = grid_tiling {
        let Host::Grid(g) = &t.host else {
            return Err(Error::invalid("the refining tiling must live on a grid"));
        };
        if !t.leftover.is_empty() {
            return Err(Error::invalid("the refining tiling must have no leftover"));
        }
        let report = verify_tiling_exhaustive(t, p)?;
        if !report.pass() {
            return Err(Error::invalid(format!("the refining tiling fails verification: {report}")));
        }
        return Ok((g.dims().to_vec(), Refinement::Tiling(t.clone())));
    }
    if let Some((dims, perm)) = as_grid(p) {
        return Ok((dims, Refinement::Identity { perm }));
    }
    let side = 2 * p.len();
    let mut tried = Vec::new();
    for d0 in 1..=2 {
        let host = Host::Grid(GridPoset::materializable(&vec![side; d0])?);
        let opts = ExactCoverOptions {
            leftover: Some(0),
            ..ExactCoverOptions::default()
        };
        match exact_cover_tiling_search_with(&host, p, opts) {
            Ok(t) => return Ok((vec![side; d0], Refinement::Tiling(t))),
            Err(e) => tried.push(format!("{}: {e}", host.spec())),
        }
    }
    Err(Error::Capability(format!(
        "no tiling of [{side}]^d0 into copies of {} found ({}); the grid-power construction is not implemented, supply a tiling of a grid",
        p.name(),
        tried.join("; ")
    )))
}

/// The pipeline for a grid target, no refinement.
pub fn almost_partition_into_grid(config: &PipelineConfig) -> Result<AlmostPartition> {
    let g = Poset::grid(&config.p_dims)?;
    let perm = (0..g.len()).collect();
    almost_partition(config, &g, Refinement::Identity { perm })
}

/// Plans and runs the pipeline for a general target through
/// [`grid_refinement`].
pub fn almost_partition_into_poset(
    n: usize,
    p: &Poset,
    grid_tiling: Option<&Tiling>,
    mode: ThresholdMode,
) -> Result<AlmostPartition> {
    let (dims, refinement) = grid_refinement(p, grid_tiling)?;
    let config = plan_pipeline(n, &dims, mode)?;
    almost_partition(&config, p, refinement)
}

/// Builds the chain partitions and block tilings for `config`, refining
/// grid tiles into copies of `target`.
pub fn almost_partition(config: &PipelineConfig, target: &Poset, refinement: Refinement) -> Result<AlmostPartition> {
    let mut cache: HashMap<usize, ChainPartition> = HashMap::new();
    let mut factors = Vec::with_capacity(config.d());
    for (i, &m) in config.m_parts.iter().enumerate() {
        if let Some(cp) = cache.get(&m) {
            factors.push(cp.clone());
            continue;
        }
        let cp = uniform_chain_partition(m, config.h).map_err(|e| match e {
            Error::Infeasible(Infeasibility::HeuristicFailed { attempts, detail }) => {
                Error::Infeasible(Infeasibility::HeuristicFailed {
                    attempts,
                    detail: format!("factor {} (m={m}, h={}): {detail}", i + 1, config.h),
                })
            }
            e => e,
        })?;
        cache.insert(m, cp.clone());
        factors.push(cp);
    }
    from_factors(config, target, refinement, factors)
}

/// Assembles the partition from given factor chain partitions.
pub(crate) fn from_factors(
    config: &PipelineConfig,
    target: &Poset,
    refinement: Refinement,
    factors: Vec<ChainPartition>,
) -> Result<AlmostPartition> {
    let d = config.d();
    if factors.len() != d {
        return Err(Error::invalid(format!("{} factor partitions for {d} factors", factors.len())));
    }
    for (cp, &m) in factors.iter().zip(&config.m_parts) {
        if cp.host_n() != m || cp.h() != config.h {
            return Err(Error::invalid(format!(
                "factor partition of 2^[{}] with h={} where 2^[{m}] with h={} is needed",
                cp.host_n(),
                cp.h(),
                config.h
            )));
        }
        cp.chain_of_mask(0)?;
    }
    let grid_len: usize = config.p_dims.iter().product();
    let (refine_lookup, split) = match &refinement {
        Refinement::Identity { perm } => {
            if perm.len() != target.len() || grid_len != target.len() {
                return Err(Error::invalid("identity refinement needs a target the size of the grid"));
            }
            let mut inverse = vec![(0, 0); perm.len()];
            for (k, &g) in perm.iter().enumerate() {
                inverse[g] = (0, k);
            }
            (inverse, 1)
        }
        Refinement::Tiling(t) => {
            let Host::Grid(g) = &t.host else {
                return Err(Error::invalid("the refining tiling must live on a grid"));
            };
            if g.dims() != config.p_dims.as_slice() || !t.leftover.is_empty() {
                return Err(Error::invalid(format!(
                    "refining tiling of {} does not perfectly tile the block grid",
                    g.spec()
                )));
            }
            (t.lookup_table(), t.tiles.len())
        }
    };
    let first: Vec<usize> = factors.iter().map(ChainPartition::first_len).collect();
    let all = (1usize << d) - 1;
    let mut shapes = Vec::with_capacity(all + 1);
    for shape in 0..=all {
        let sides = config.block_sides(&first, shape);
        shapes.push(if shape == all {
            opportunistic(&sides, &config.p_dims, config.mode)?
        } else {
            full(&sides, &config.p_dims, config.mode)?
        });
    }
    let per_block = shapes.iter().map(|s| s.tiling.tiles.len()).max().unwrap_or(1).max(1) as u128;
    let mut offsets = Vec::with_capacity(d);
    let mut off = 0;
    for &m in &config.m_parts {
        offsets.push(off);
        off += m;
    }
    let mut ap = AlmostPartition {
        config: config.clone(),
        target: target.clone(),
        factors,
        offsets,
        shapes,
        per_block: per_block * split as u128,
        refinement,
        refine_lookup,
        leftover: Vec::new(),
    };
    // S lies in B_{1..1}: first chain in every factor
    let corner = &ap.shapes[all];
    let leftover: Vec<u128> = corner
        .tiling
        .leftover
        .iter()
        .map(|&g| ap.element(&vec![0; d], &corner.grid.coords(g)))
        .collect();
    ap.leftover = leftover;
    ap.leftover.sort_unstable();
    Ok(ap)
}

impl AlmostPartition {
    pub fn config(&self) -> &PipelineConfig {
        &self.config
    }

    pub fn target(&self) -> &Poset {
        &self.target
    }

    pub fn factors(&self) -> &[ChainPartition] {
        &self.factors
    }

    pub fn refinement(&self) -> &Refinement {
        &self.refinement
    }

    /// The leftover `S`, as sorted masks.
    pub fn leftover(&self) -> &[u128] {
        &self.leftover
    }

    /// Within-block tile ids range over `0..per_block()`.
    pub fn per_block(&self) -> u128 {
        self.per_block
    }

    fn split(&self) -> usize {
        match &self.refinement {
            Refinement::Identity { .. } => 1,
            Refinement::Tiling(t) => t.tiles.len(),
        }
    }

    /// Mask of the element with chain index `j_i` and 1-based position
    /// `c_i` in every factor.
    fn element(&self, j: &[usize], coords: &[usize]) -> u128 {
        let mut x = 0u128;
        for i in 0..j.len() {
            x |= (self.factors[i].chain(j[i])[coords[i] - 1] as u128) << self.offsets[i];
        }
        x
    }

    /// `(chain index, index within chain)` of `x` in every factor.
    pub fn block_of(&self, x: u128) -> Result<Vec<(usize, usize)>> {
        let n = self.config.n;
        if n < 128 && x >> n != 0 {
            return Err(Error::invalid(format!("{x:#x} is not a subset of [{n}]")));
        }
        self.factors
            .iter()
            .zip(&self.offsets)
            .zip(&self.config.m_parts)
            .map(|((cp, &off), &m)| cp.chain_of_mask((x >> off) & ((1u128 << m) - 1)))
            .collect()
    }

    fn shape_of(j: &[usize]) -> usize {
        j.iter().enumerate().filter(|(_, &v)| v == 0).map(|(i, _)| 1 << i).sum()
    }

    /// Number of blocks, `∏ r_i`.
    pub fn block_count(&self) -> u128 {
        self.factors.iter().map(|cp| cp.len() as u128).product()
    }

    fn block_id(&self, j: &[usize]) -> u128 {
        j.iter()
            .zip(&self.factors)
            .fold(0u128, |acc, (&ji, cp)| acc * cp.len() as u128 + ji as u128)
    }

    /// Block index `(j_1..j_d)` (0-based) of a tile id.
    pub fn tile_block(&self, id: u128) -> Result<Vec<usize>> {
        let mut b = id / self.per_block;
        if b >= self.block_count() {
            return Err(Error::invalid(format!("unknown tile id {id}")));
        }
        let mut j = vec![0; self.factors.len()];
        for i in (0..j.len()).rev() {
            let r = self.factors[i].len() as u128;
            j[i] = (b % r) as usize;
            b /= r;
        }
        Ok(j)
    }

    pub fn locate(&self, x: u128) -> Result<Option<(u128, usize)>> {
        let found = self.block_of(x)?;
        let j: Vec<usize> = found.iter().map(|&(c, _)| c).collect();
        let coords: Vec<usize> = found.iter().map(|&(_, k)| k + 1).collect();
        let shape = &self.shapes[Self::shape_of(&j)];
        let (t, pos) = shape.lookup[shape.grid.index(&coords)];
        if (t, pos) == UNTILED {
            return Ok(None);
        }
        let split = self.split() as u128;
        let grid_id = self.block_id(&j) * self.per_block + t as u128 * split;
        let (sub, k) = self.refine_lookup[pos];
        Ok(Some((grid_id + sub as u128, k)))
    }

    pub fn materialize_tile(&self, id: u128) -> Result<Vec<u128>> {
        let j = self.tile_block(id)?;
        let within = id % self.per_block;
        let split = self.split() as u128;
        let (t, sub) = ((within / split) as usize, (within % split) as usize);
        let shape = &self.shapes[Self::shape_of(&j)];
        let tile = shape
            .tiling
            .tiles
            .get(t)
            .ok_or_else(|| Error::invalid(format!("unknown tile id {id}")))?;
        let grid_tile: Vec<u128> = tile.iter().map(|&g| self.element(&j, &shape.grid.coords(g))).collect();
        Ok(match &self.refinement {
            Refinement::Identity { perm } => perm.iter().map(|&g| grid_tile[g]).collect(),
            Refinement::Tiling(r) => r.tiles[sub].iter().map(|&g| grid_tile[g]).collect(),
        })
    }

    /// Total tiles: each block shape's tile count times its number of
    /// blocks, times the refinement split.
    pub fn tile_count(&self) -> u128 {
        let mut total = 0u128;
        for (shape, bt) in self.shapes.iter().enumerate() {
            let blocks: u128 = (0..self.factors.len())
                .map(|i| {
                    if shape >> i & 1 == 1 {
                        1
                    } else {
                        self.factors[i].len() as u128 - 1
                    }
                })
                .product();
            total += blocks * bt.tiling.tiles.len() as u128;
        }
        total * self.split() as u128
    }

    /// Ids of every tile, in increasing order.
    pub fn tile_ids(&self) -> impl Iterator<Item = u128> + '_ {
        let split = self.split() as u128;
        (0..self.block_count()).flat_map(move |b| {
            let j = self.tile_block(b * self.per_block).expect("block in range");
            let tiles = self.shapes[Self::shape_of(&j)].tiling.tiles.len() as u128;
            (0..tiles * split).map(move |t| b * self.per_block + t)
        })
    }

    /// Every tile written out, for ground sets small enough to list.
    pub fn to_tiling(&self) -> Result<Tiling> {
        let host = Host::Boolean(self.config.n);
        host.order()?;
        let tiles = self
            .tile_ids()
            .map(|id| {
                self.materialize_tile(id)
                    .map(|t| t.into_iter().map(|x| x as usize).collect())
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Tiling {
            host,
            target: self.target.name().to_string(),
            tiles,
            leftover: self.leftover.iter().map(|&x| x as usize).collect(),
        })
    }
}

impl PointOracle for AlmostPartition {
    fn ground(&self) -> usize {
        self.config.n
    }

    fn target(&self) -> &Poset {
        &self.target
    }

    fn tile_count(&self) -> u128 {
        AlmostPartition::tile_count(self)
    }

    fn leftover_len(&self) -> u128 {
        self.leftover.len() as u128
    }

    fn locate(&self, x: u128) -> Result<Option<(u128, usize)>> {
        AlmostPartition::locate(self, x)
    }

    fn materialize_tile(&self, id: u128) -> Result<Vec<u128>> {
        AlmostPartition::materialize_tile(self, id)
    }
}
