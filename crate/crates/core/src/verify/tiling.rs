use super::{Report, ViolationKind};
use crate::error::{Error, Result};
use crate::poset::{parse_poset_spec, Order, Pattern, Poset};
use crate::tiling::Tiling;

/// Certifies a materialized tiling element by element: tiles and leftover
/// are pairwise disjoint, together they cover the host, and every tile
/// induces a copy of `p`.
///
/// Elements outside the host are an error rather than a violation.
pub fn verify_tiling_exhaustive(tiling: &Tiling, p: &Poset) -> Result<Report> {
    let host = tiling.host.order()?;
    let size = host.size();
    let all = tiling.tiles.iter().flatten().chain(&tiling.leftover);
    if let Some(&x) = all.clone().find(|&&x| x >= size) {
        return Err(Error::invalid(format!(
            "tiling references element {x}, host {} has {size}",
            tiling.host.spec()
        )));
    }
    let mut report = Report {
        tiles: tiling.tiles.len(),
        leftover: tiling.leftover.len(),
        ..Report::default()
    };
    // owner[x]: tile id, or tiles.len() for the leftover
    let mut owner = vec![usize::MAX; size];
    let parts = tiling.tiles.iter().chain(std::iter::once(&tiling.leftover));
    for (id, part) in parts.enumerate() {
        for &x in part {
            let prev = std::mem::replace(&mut owner[x], id);
            if prev != usize::MAX {
                let name = |t: usize| {
                    if t == tiling.tiles.len() {
                        "leftover".to_string()
                    } else {
                        format!("tile {t}")
                    }
                };
                report.flag(
                    ViolationKind::Overlap,
                    format!("{} in {} and {}", tiling.host.format_element(x), name(prev), name(id)),
                );
            }
        }
    }
    let missing: Vec<usize> = (0..size).filter(|&x| owner[x] == usize::MAX).collect();
    for &x in missing.iter().take(8) {
        report.flag(ViolationKind::Uncovered, tiling.host.format_element(x));
    }
    if missing.len() > 8 {
        report.notes.push(format!("uncovered elements {}", missing.len()));
    }
    let pat = Pattern::new(p);
    for (id, tile) in tiling.tiles.iter().enumerate() {
        if tile.len() != p.len() || !pat.is_copy_in(&host, tile) {
            report.flag(
                ViolationKind::NotACopy,
                format!("tile {id} ({} elements) is not a copy of {}", tile.len(), p.name()),
            );
        }
    }
    Ok(report)
}

/// [`verify_tiling_exhaustive`] against the target named in the tiling.
pub fn verify_tiling(tiling: &Tiling) -> Result<Report> {
    let p = parse_poset_spec(&tiling.target)?;
    verify_tiling_exhaustive(tiling, &p)
}

impl Report {
    /// No element lies in two parts.
    pub fn disjoint(&self) -> bool {
        !self.has(ViolationKind::Overlap)
    }

    /// Tiles and leftover cover the host.
    pub fn covering(&self) -> bool {
        !self.has(ViolationKind::Uncovered)
    }

    /// Every tile is a copy of the target.
    pub fn isomorphic(&self) -> bool {
        !self.has(ViolationKind::NotACopy)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{tile_rectangle, ThresholdMode};
    use crate::tiling::Host;

    #[test]
    fn rectangle_passes() {
        let t = tile_rectangle(2, 2, 13, ThresholdMode::Strict).unwrap();
        let r = verify_tiling(&t).unwrap();
        assert!(r.pass(), "{r}");
        assert_eq!((r.tiles, r.leftover), (13, 0));
    }

    #[test]
    fn mutations_are_flagged() {
        let good = tile_rectangle(2, 2, 13, ThresholdMode::Strict).unwrap();
        let p = Poset::diamond();

        let mut moved = good.clone();
        let x = moved.tiles[0].pop().unwrap();
        moved.tiles[1].push(x);
        let r = verify_tiling_exhaustive(&moved, &p).unwrap();
        assert!(r.disjoint() && r.covering() && !r.isomorphic());
        assert!(r.violations.iter().any(|v| v.detail.starts_with("tile 0 ")));

        let mut dup = good.clone();
        dup.tiles[2][0] = dup.tiles[3][0];
        let r = verify_tiling_exhaustive(&dup, &p).unwrap();
        assert!(!r.disjoint() && !r.covering());

        let mut dropped = good.clone();
        dropped.tiles.pop();
        let r = verify_tiling_exhaustive(&dropped, &p).unwrap();
        assert!(r.disjoint() && !r.covering() && r.isomorphic());

        let mut wild = good;
        wild.leftover.push(10_000);
        assert!(verify_tiling_exhaustive(&wild, &p).is_err());
    }

    #[test]
    fn trivial_hosts() {
        // 2^[0] is a single point
        let t = Tiling {
            host: Host::Boolean(0),
            target: "chain:1".into(),
            tiles: vec![vec![0]],
            leftover: vec![],
        };
        assert!(verify_tiling(&t).unwrap().pass());
        let t = Tiling {
            host: Host::Boolean(2),
            target: "chain:2".into(),
            tiles: vec![vec![0, 1]],
            leftover: vec![2, 3],
        };
        let r = verify_tiling(&t).unwrap();
        assert!(r.pass() && r.leftover == 2);
    }
}
