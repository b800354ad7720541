//! Materialized tilings and their file format.
//!
//! ```text
//! tiling host=grid:4x13 target=grid:2x2 mode=explicit
//! tile 0: (1,1) (2,1) (1,2) (2,2)
//! leftover: (4,13)
//! ```
//!
//! Each tile lists its elements in the target's element order, so the
//! listed order is itself the claimed isomorphism. Boolean hosts
//! (`host=boolean:9`) write elements as hex masks.

use std::fmt::Write as _;

use crate::chains::{header_value, parse_hex, parse_header};
use crate::error::{Error, Result};
use crate::poset::{BooleanLattice, GridPoset, Order};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Host {
    Grid(GridPoset),
    /// `2^[n]`, elements indexed by mask.
    Boolean(usize),
}

impl Host {
    pub fn size(&self) -> usize {
        match self {
            Host::Grid(g) => g.size(),
            Host::Boolean(n) => 1 << n,
        }
    }

    pub fn spec(&self) -> String {
        match self {
            Host::Grid(g) => g.spec(),
            Host::Boolean(n) => format!("boolean:{n}"),
        }
    }

    pub fn parse(spec: &str) -> Result<Self> {
        if let Some(sides) = spec.strip_prefix("grid:") {
            let dims = sides
                .split('x')
                .map(|t| t.parse().map_err(|_| Error::invalid(format!("malformed host {spec:?}"))))
                .collect::<Result<Vec<usize>>>()?;
            return Ok(Host::Grid(GridPoset::materializable(&dims)?));
        }
        if let Some(n) = spec.strip_prefix("boolean:") {
            let n: usize = n.parse().map_err(|_| Error::invalid(format!("malformed host {spec:?}")))?;
            BooleanLattice::new(n)?;
            return Ok(Host::Boolean(n));
        }
        Err(Error::invalid(format!("unknown host {spec:?}")))
    }

    pub fn format_element(&self, x: usize) -> String {
        match self {
            Host::Grid(g) => {
                let c: Vec<String> = g.coords(x).iter().map(|v| v.to_string()).collect();
                format!("({})", c.join(","))
            }
            Host::Boolean(_) => format!("{x:#x}"),
        }
    }

    pub fn parse_element(&self, tok: &str, line: usize) -> Result<usize> {
        match self {
            Host::Grid(g) => {
                let inner = tok
                    .strip_prefix('(')
                    .and_then(|t| t.strip_suffix(')'))
                    .ok_or_else(|| Error::parse(line, format!("expected a coordinate like (1,2), got {tok:?}")))?;
                let coords = inner
                    .split(',')
                    .map(|t| t.trim().parse::<usize>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|_| Error::parse(line, format!("malformed coordinate {tok:?}")))?;
                g.checked_index(&coords).map_err(|e| Error::parse(line, e.to_string()))
            }
            Host::Boolean(n) => {
                let m = parse_hex(tok, line)?;
                if m >> n != 0 {
                    return Err(Error::parse(line, format!("{tok} is not a subset of [{n}]")));
                }
                Ok(m as usize)
            }
        }
    }
}

/// The host as an [`Order`] over element indices.
pub enum HostOrder {
    Grid(GridPoset),
    Boolean(BooleanLattice),
}

impl Order for HostOrder {
    fn size(&self) -> usize {
        match self {
            HostOrder::Grid(g) => g.size(),
            HostOrder::Boolean(b) => b.size(),
        }
    }

    fn leq(&self, x: usize, y: usize) -> bool {
        match self {
            HostOrder::Grid(g) => g.leq(x, y),
            HostOrder::Boolean(b) => b.leq(x, y),
        }
    }
}

impl Host {
    pub fn order(&self) -> Result<HostOrder> {
        Ok(match self {
            Host::Grid(g) => HostOrder::Grid(g.clone()),
            Host::Boolean(n) => HostOrder::Boolean(BooleanLattice::new(*n)?),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tiling {
    pub host: Host,
    /// Spec of the target poset, e.g. `grid:2x2`.
    pub target: String,
    /// `tiles[t][k]` is the host element playing target element `k`.
    pub tiles: Vec<Vec<usize>>,
    pub leftover: Vec<usize>,
}

/// Marks a host element that belongs to no tile.
pub const UNTILED: (usize, usize) = (usize::MAX, usize::MAX);

impl Tiling {
    /// `(tile id, position)` for every host element; leftover and uncovered
    /// elements map to [`UNTILED`]. Later tiles win on overlap.
    pub fn lookup_table(&self) -> Vec<(usize, usize)> {
        let mut table = vec![UNTILED; self.host.size()];
        for (t, tile) in self.tiles.iter().enumerate() {
            for (k, &x) in tile.iter().enumerate() {
                if let Some(slot) = table.get_mut(x) {
                    *slot = (t, k);
                }
            }
        }
        table
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("tiling host={} target={} mode=explicit\n", self.host.spec(), self.target);
        for (t, tile) in self.tiles.iter().enumerate() {
            let _ = write!(out, "tile {t}:");
            for &x in tile {
                let _ = write!(out, " {}", self.host.format_element(x));
            }
            out.push('\n');
        }
        if !self.leftover.is_empty() {
            out.push_str("leftover:");
            for &x in &self.leftover {
                let _ = write!(out, " {}", self.host.format_element(x));
            }
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hl, header) = lines.next().ok_or_else(|| Error::parse(1, "empty tiling file"))?;
        let kv = parse_header(header, "tiling", hl)?;
        let host = Host::parse(header_value(&kv, "host", hl)?)?;
        let target = header_value(&kv, "target", hl)?.to_string();
        if let Ok(mode) = header_value(&kv, "mode", hl) {
            if mode != "explicit" {
                return Err(Error::parse(hl, format!("only explicit tilings are stored, got mode={mode}")));
            }
        }
        let mut tiling = Tiling {
            host,
            target,
            tiles: Vec::new(),
            leftover: Vec::new(),
        };
        for (l, line) in lines {
            let (head, body) = line
                .split_once(':')
                .ok_or_else(|| Error::parse(l, "expected `tile <id>: ...` or `leftover: ...`"))?;
            let elems = body
                .split_whitespace()
                .map(|t| tiling.host.parse_element(t, l))
                .collect::<Result<Vec<_>>>()?;
            if head == "leftover" {
                tiling.leftover.extend(elems);
                continue;
            }
            let id = head
                .strip_prefix("tile ")
                .and_then(|s| s.trim().parse::<usize>().ok())
                .ok_or_else(|| Error::parse(l, "expected `tile <id>:`"))?;
            if id != tiling.tiles.len() {
                return Err(Error::parse(l, format!("tile ids must be consecutive, got {id}")));
            }
            tiling.tiles.push(elems);
        }
        Ok(tiling)
    }

    /// One 20px square per cell of a 1- or 2-dimensional grid host, filled by
    /// a colour hashed from the tile id; leftover cells stay white. The first
    /// coordinate runs left to right, the second bottom to top.
    pub fn to_svg(&self) -> Result<String> {
        const CELL: usize = 20;
        let Host::Grid(g) = &self.host else {
            return Err(Error::Capability("SVG output needs a grid host".into()));
        };
        let (w, h) = match g.dims() {
            [a] => (*a, 1),
            [a, b] => (*a, *b),
            dims => {
                return Err(Error::Capability(format!(
                    "SVG output needs a 1- or 2-dimensional host, got {} dimensions",
                    dims.len()
                )))
            }
        };
        let table = self.lookup_table();
        let mut out = format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\">\n",
            w * CELL + 2,
            h * CELL + 2
        );
        for x in 0..g.size() {
            let c = g.coords(x);
            let (cx, cy) = (c[0] - 1, c.get(1).map_or(0, |v| v - 1));
            let fill = match table[x] {
                UNTILED => "#ffffff".to_string(),
                (t, _) => tile_colour(t),
            };
            let _ = writeln!(
                out,
                "<rect x=\"{}\" y=\"{}\" width=\"{CELL}\" height=\"{CELL}\" fill=\"{fill}\" stroke=\"#000000\" stroke-width=\"1\"/>",
                1 + cx * CELL,
                1 + (h - 1 - cy) * CELL
            );
        }
        out.push_str("</svg>\n");
        Ok(out)
    }
}

fn tile_colour(t: usize) -> String {
    // splitmix-style scramble so neighbouring ids get unrelated colours
    let mut z = (t as u64).wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^= z >> 31;
    // keep channels in the lighter half so grid lines stay visible
    let ch = |s: u32| 0x60 + ((z >> s) & 0x9f) as u8;
    format!("#{:02x}{:02x}{:02x}", ch(0), ch(8), ch(16))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> Tiling {
        Tiling {
            host: Host::Grid(GridPoset::new(&[2, 3]).unwrap()),
            target: "chain:2".into(),
            tiles: vec![vec![0, 1], vec![3, 4]],
            leftover: vec![2, 5],
        }
    }

    #[test]
    fn text_round_trip() {
        let t = small();
        let text = t.to_text();
        assert_eq!(
            text,
            "tiling host=grid:2x3 target=chain:2 mode=explicit\ntile 0: (1,1) (1,2)\ntile 1: (2,1) (2,2)\nleftover: (1,3) (2,3)\n"
        );
        assert_eq!(Tiling::from_text(&text).unwrap(), t);

        let b = Tiling {
            host: Host::Boolean(2),
            target: "chain:2".into(),
            tiles: vec![vec![0, 1], vec![2, 3]],
            leftover: vec![],
        };
        assert_eq!(Tiling::from_text(&b.to_text()).unwrap(), b);
    }

    #[test]
    fn malformed_files() {
        assert!(Tiling::from_text("tiling host=grid:2x2\n").is_err());
        assert!(Tiling::from_text("tiling host=grid:2x2 target=chain:2\ntile 0: (3,1)\n").is_err());
        assert!(Tiling::from_text("tiling host=grid:2x2 target=chain:2\ntile 1: (1,1)\n").is_err());
        assert!(Tiling::from_text("tiling host=boolean:2 target=chain:2\ntile 0: 0x4\n").is_err());
    }

    #[test]
    fn svg_has_one_rect_per_cell() {
        let svg = small().to_svg().unwrap();
        assert_eq!(svg.matches("<rect").count(), 6);
        assert!(svg.contains("fill=\"#ffffff\""));
    }
}
