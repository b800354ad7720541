//! Tilings of grids by copies of a smaller grid.
//!
//! [`tile_grid_first_even`] tiles `[α]×[c_1]×...×[c_{d-1}]` by copies of
//! `P = [a_1]×...×[a_d]`, `α = |P|`, by induction on `d`: merge the first two
//! sides into `P' = [a_1 a_2]×[a_3]×...×[a_d]`, tile the `(d-1)`-dimensional
//! host by `P'`, then split each `P'×[c_{d-1}]` with the rectangle tiling of
//! `[a_1 a_2]×[c_{d-1}]` into `[a_1]×[a_2]`. This needs `a_1` even; otherwise
//! the target is doubled to `[2a_1]×[a_2]×...` and every tile is halved.
//! [`tile_grid`] cuts a host with a suitably divisible side into such slabs.

mod rect;

pub use rect::{rect_tile_lookup, tile_rectangle, RectParams, ThresholdMode};

use crate::error::{Error, Infeasibility, Result};
use crate::poset::GridPoset;
use crate::tiling::{Host, Tiling};

type Coords = Vec<usize>;

pub fn grid_spec(dims: &[usize]) -> String {
    let sides: Vec<String> = dims.iter().map(|a| a.to_string()).collect();
    format!("grid:{}", sides.join("x"))
}

fn volume(dims: &[usize]) -> usize {
    dims.iter().product()
}

fn strict_side(p_dims: &[usize]) -> usize {
    12 * volume(p_dims) * volume(p_dims)
}

/// Tiles of `[|P|]×cs` by `P`, for `p[0]` even, as coordinate lists in
/// `P`'s row-major element order. `cs` has one side fewer than `p`.
fn first_even(p: &[usize], cs: &[usize], mode: ThresholdMode) -> Result<Vec<Vec<Coords>>> {
    let alpha = volume(p);
    if p.len() == 1 {
        return Ok(vec![(1..=alpha).map(|x| vec![x]).collect()]);
    }
    let (a1, a2) = (p[0], p[1]);
    let rest = volume(&p[2..]);
    let mut merged = vec![a1 * a2];
    merged.extend_from_slice(&p[2..]);
    let last = cs[cs.len() - 1];
    let params = RectParams::new(a1, a2, last, mode).map_err(|e| match e {
        Error::Precondition(msg) => Error::precondition(format!("host side {}: {msg}", cs.len())),
        e => e,
    })?;
    let coarse = first_even(&merged, &cs[..cs.len() - 1], mode)?;
    let rects = params.coordinate_tiles();
    let mut tiles = Vec::with_capacity(coarse.len() * rects.len());
    for big in &coarse {
        for rt in &rects {
            let tile = (0..alpha)
                .map(|k| {
                    let (pq, z) = (k / rest, k % rest);
                    let (x, y) = rt[pq];
                    let mut c = big[(x - 1) * rest + z].clone();
                    c.push(y);
                    c
                })
                .collect();
            tiles.push(tile);
        }
    }
    Ok(tiles)
}

/// `[a_1]×...` with its first side doubled, tiled and then halved.
fn doubled(p: &[usize], cs: &[usize], mode: ThresholdMode) -> Result<Vec<Vec<Coords>>> {
    let mut p2 = p.to_vec();
    p2[0] *= 2;
    let rest = volume(&p[1..]);
    let half = volume(p);
    let mut out = Vec::new();
    for tile in first_even(&p2, cs, mode)? {
        for h in 0..2 {
            out.push((0..half).map(|k| tile[h * half + k].clone()).collect());
        }
    }
    debug_assert!(out.iter().all(|t: &Vec<Coords>| t.len() == rest * p[0]));
    Ok(out)
}

/// Tiles of `[first]×cs` by `P`; `first` is `2|P|` when the target is
/// doubled, else `|P|`. In precise mode an even side of `P` other than the
/// first is rotated to the front instead of doubling.
fn slab(p: &[usize], cs: &[usize], mode: ThresholdMode) -> Result<(usize, Vec<Vec<Coords>>)> {
    let alpha = volume(p);
    let even = p.iter().position(|a| a % 2 == 0);
    match (mode, even) {
        (ThresholdMode::Precise, Some(0)) => Ok((alpha, first_even(p, cs, mode)?)),
        (ThresholdMode::Precise, Some(j)) => {
            let mut rotated = p.to_vec();
            rotated.swap(0, j);
            let tiles = first_even(&rotated, cs, mode)?;
            let grid_p = GridPoset::new(p)?;
            let grid_r = GridPoset::new(&rotated)?;
            // element k of P sits at the rotated index of its swapped coords
            let perm: Vec<usize> = (0..alpha)
                .map(|k| {
                    let mut c = grid_p.coords(k);
                    c.swap(0, j);
                    grid_r.index(&c)
                })
                .collect();
            let tiles = tiles
                .into_iter()
                .map(|t| perm.iter().map(|&i| t[i].clone()).collect())
                .collect();
            Ok((alpha, tiles))
        }
        _ => Ok((2 * alpha, doubled(p, cs, mode)?)),
    }
}

fn check_strict(p: &[usize], cs: &[usize]) -> Result<()> {
    let bound = strict_side(p);
    if let Some(i) = cs.iter().position(|&c| c < bound) {
        return Err(Error::precondition(format!(
            "host side {} is {} < 12|P|² = {bound}",
            i + 1,
            cs[i]
        )));
    }
    Ok(())
}

fn into_tiling(host: GridPoset, p_dims: &[usize], tiles: Vec<Vec<Coords>>) -> Tiling {
    let tiles = tiles
        .into_iter()
        .map(|t| t.iter().map(|c| host.index(c)).collect())
        .collect();
    Tiling {
        host: Host::Grid(host),
        target: grid_spec(p_dims),
        tiles,
        leftover: Vec::new(),
    }
}

/// Partition of `[f]×[c_1]×...×[c_{d-1}]` into copies of `P`, where `f` is
/// `2|P|`, or `|P|` in precise mode when `P` has an even side.
pub fn tile_grid_first_even(p_dims: &[usize], cs: &[usize], mode: ThresholdMode) -> Result<Tiling> {
    if p_dims.is_empty() || p_dims.contains(&0) {
        return Err(Error::invalid("target sides must be positive"));
    }
    if cs.len() + 1 != p_dims.len() {
        return Err(Error::invalid(format!(
            "a {}-dimensional target needs {} host sides after the first, got {}",
            p_dims.len(),
            p_dims.len() - 1,
            cs.len()
        )));
    }
    if mode == ThresholdMode::Strict {
        check_strict(p_dims, cs)?;
    }
    let (first, tiles) = slab(p_dims, cs, mode)?;
    let mut dims = vec![first];
    dims.extend_from_slice(cs);
    let host = GridPoset::materializable(&dims)?;
    Ok(into_tiling(host, p_dims, tiles))
}

/// Side length a host side must be divisible by.
pub fn slab_divisor(p_dims: &[usize], mode: ThresholdMode) -> usize {
    let alpha = volume(p_dims);
    match mode {
        ThresholdMode::Precise if p_dims.iter().any(|a| a % 2 == 0) => alpha,
        _ if p_dims.len() == 1 => p_dims[0],
        _ => 2 * alpha,
    }
}

/// Partition of `[c_1]×...×[c_d]` into copies of `[a_1]×...×[a_d]`.
///
/// One side must be divisible by [`slab_divisor`]; it is cut into slabs,
/// each tiled by [`tile_grid_first_even`] on the remaining sides. Tile ids
/// run slab by slab. One-dimensional hosts are cut into segments.
pub fn tile_grid(cs: &[usize], p_dims: &[usize], mode: ThresholdMode) -> Result<Tiling> {
    let host = GridPoset::materializable(cs)?;
    let tiles = grid_tile_coords(cs, p_dims, mode)?;
    Ok(into_tiling(host, p_dims, tiles))
}

/// [`tile_grid`] as coordinate lists, without the materialization check.
pub(crate) fn grid_tile_coords(cs: &[usize], p_dims: &[usize], mode: ThresholdMode) -> Result<Vec<Vec<Coords>>> {
    if p_dims.is_empty() || p_dims.contains(&0) || cs.contains(&0) {
        return Err(Error::invalid("sides must be positive"));
    }
    if cs.len() != p_dims.len() {
        return Err(Error::invalid(format!(
            "host has {} dimensions, target {}",
            cs.len(),
            p_dims.len()
        )));
    }
    let divisor = slab_divisor(p_dims, mode);
    let candidates: Vec<usize> = (0..cs.len()).filter(|&j| cs[j].is_multiple_of(divisor)).collect();
    if candidates.is_empty() {
        return Err(Error::Infeasible(Infeasibility::NoDivisibleSide {
            sides: cs.to_vec(),
            divisor,
        }));
    }
    if p_dims.len() == 1 {
        let a = p_dims[0];
        return Ok((0..cs[0] / a)
            .map(|s| (1..=a).map(|x| vec![s * a + x]).collect())
            .collect());
    }
    if mode == ThresholdMode::Strict {
        check_strict(p_dims, cs)?;
    }
    let mut last_err = None;
    for j in candidates {
        let others: Vec<usize> = (0..cs.len()).filter(|&i| i != j).map(|i| cs[i]).collect();
        match slab(p_dims, &others, mode) {
            Ok((first, tiles)) => {
                debug_assert_eq!(first, divisor);
                let mut out = Vec::with_capacity(tiles.len() * cs[j] / first);
                for s in 0..cs[j] / first {
                    for t in &tiles {
                        out.push(
                            t.iter()
                                .map(|c| {
                                    let mut host = c[1..].to_vec();
                                    host.insert(j, s * first + c[0]);
                                    host
                                })
                                .collect(),
                        );
                    }
                }
                return Ok(out);
            }
            Err(e) => last_err = Some(e),
        }
    }
    Err(last_err.expect("at least one candidate side"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{Order, Pattern, Poset};

    fn assert_partition(t: &Tiling, p_dims: &[usize]) {
        let Host::Grid(host) = &t.host else { unreachable!() };
        let pat = Pattern::new(&Poset::grid(p_dims).unwrap());
        let p = GridPoset::new(p_dims).unwrap();
        let mut seen = vec![false; host.size()];
        for tile in &t.tiles {
            for u in 0..tile.len() {
                for v in 0..tile.len() {
                    assert_eq!(host.leq(tile[u], tile[v]), p.leq(u, v));
                }
            }
            assert!(pat.is_copy_in(host, tile));
            for &x in tile {
                assert!(!std::mem::replace(&mut seen[x], true));
            }
        }
        assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn first_even_examples() {
        let t = tile_grid_first_even(&[2, 2], &[12], ThresholdMode::Precise).unwrap();
        assert_eq!(t.tiles.len(), 12);
        assert_partition(&t, &[2, 2]);
        let t = tile_grid_first_even(&[3], &[], ThresholdMode::Strict).unwrap();
        assert_eq!(t.tiles.len(), 2);
        // odd first side: doubled in either mode
        let t = tile_grid_first_even(&[3, 2], &[20], ThresholdMode::Precise).unwrap();
        assert_partition(&t, &[3, 2]);
        let t = tile_grid_first_even(&[3, 3], &[50], ThresholdMode::Precise).unwrap();
        assert_partition(&t, &[3, 3]);
        assert!(tile_grid_first_even(&[2, 2], &[12], ThresholdMode::Strict).is_err());
    }

    #[test]
    fn grid_examples() {
        let t = tile_grid(&[12, 16], &[2, 2], ThresholdMode::Precise).unwrap();
        assert_eq!(t.tiles.len(), 48);
        assert_partition(&t, &[2, 2]);
        let t = tile_grid(&[16, 12], &[2, 2], ThresholdMode::Precise).unwrap();
        assert_partition(&t, &[2, 2]);
        let t = tile_grid(&[12], &[4], ThresholdMode::Strict).unwrap();
        assert_eq!(t.tiles.len(), 3);
        assert!(matches!(
            tile_grid(&[12, 12], &[2, 2], ThresholdMode::Strict),
            Err(Error::Infeasible(Infeasibility::NoDivisibleSide { divisor: 8, .. }))
        ));
        // a non-leading even side is rotated to the front
        let t = tile_grid(&[9, 7], &[3, 2], ThresholdMode::Precise);
        assert!(t.is_err());
        let t = tile_grid(&[6, 14], &[3, 2], ThresholdMode::Precise).unwrap();
        assert_partition(&t, &[3, 2]);
    }

    #[test]
    fn three_dimensional() {
        let t = tile_grid(&[8, 12, 12], &[2, 2, 2], ThresholdMode::Precise).unwrap();
        assert_eq!(t.tiles.len(), 8 * 12 * 12 / 8);
        assert_partition(&t, &[2, 2, 2]);
    }
}
