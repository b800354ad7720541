//! Exact cover by dancing links.
//!
//! Rows are copies of the target, columns are host elements. The column with
//! the fewest live rows is branched on first, ties going to the smallest
//! element index, so runs and certificates are reproducible. A leftover
//! allowance lets up to `k` columns be skipped instead of covered.

use super::{verify_tiling_exhaustive, Report, ViolationKind};
use crate::error::{Error, Infeasibility, Result};
use crate::poset::{enumerate_copies_with_budget, Pattern, Poset, DEFAULT_COPY_BUDGET};
use crate::tiling::{Host, Tiling};

/// Default search-node budget.
pub const EXACT_COVER_NODES: u64 = 50_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExactCoverOptions {
    /// Budget for enumerating copies, in embedding checks.
    pub copy_budget: u64,
    pub node_budget: u64,
    /// Leftover allowed; `None` means `|host| mod |P|`.
    pub leftover: Option<usize>,
}

impl Default for ExactCoverOptions {
    fn default() -> Self {
        ExactCoverOptions {
            copy_budget: DEFAULT_COPY_BUDGET,
            node_budget: EXACT_COVER_NODES,
            leftover: None,
        }
    }
}

pub fn exact_cover_tiling_search(host: &Host, p: &Poset) -> Result<Tiling> {
    exact_cover_tiling_search_with(host, p, ExactCoverOptions::default())
}

/// A tiling of `host` by copies of `p` leaving at most the allowed leftover,
/// or a certificate that none exists. Tiles are listed in `p`'s element
/// order.
pub fn exact_cover_tiling_search_with(host: &Host, p: &Poset, opts: ExactCoverOptions) -> Result<Tiling> {
    if p.is_empty() {
        return Err(Error::invalid("target poset is empty"));
    }
    let order = host.order()?;
    let allowance = opts.leftover.unwrap_or(host.size() % p.len());
    let copies = enumerate_copies_with_budget(&order, p, opts.copy_budget)?;
    let mut dlx = Dlx::new(host.size(), &copies);
    let found = dlx.search(allowance, opts.node_budget)?;
    let Some(rows) = found else {
        return Err(Error::Infeasible(Infeasibility::SearchExhausted { nodes: dlx.nodes }));
    };
    let pat = Pattern::new(p);
    let mut tiles = Vec::with_capacity(rows.len());
    for r in rows {
        tiles.push(pat.embed_in(&order, &copies[r]).expect("enumerated copies embed"));
    }
    let mut covered = vec![false; host.size()];
    for &x in tiles.iter().flatten() {
        covered[x] = true;
    }
    Ok(Tiling {
        host: host.clone(),
        target: p.name().to_string(),
        tiles,
        leftover: (0..host.size()).filter(|&x| !covered[x]).collect(),
    })
}

/// Confirms a given tiling by exact cover: the tiles, each certified a copy
/// of `p` on its own, are the only rows, and the search must select all of
/// them with exactly the declared leftover.
///
/// This is the fallback when the full copy family is too large to
/// enumerate.
pub fn confirm_tiling_by_exact_cover(tiling: &Tiling, p: &Poset) -> Result<Report> {
    let mut report = verify_tiling_exhaustive(tiling, p)?;
    if !report.isomorphic() {
        return Ok(report);
    }
    let mut dlx = Dlx::new(tiling.host.size(), &tiling.tiles);
    let leftover = tiling.host.size().saturating_sub(tiling.tiles.len() * p.len());
    match dlx.search(leftover, EXACT_COVER_NODES)? {
        Some(rows) if rows.len() == tiling.tiles.len() => {}
        Some(rows) => report.flag(
            ViolationKind::CountMismatch,
            format!("exact cover used {} of {} tiles", rows.len(), tiling.tiles.len()),
        ),
        None => report.flag(
            ViolationKind::CountMismatch,
            format!("no exact cover by the given tiles ({} nodes)", dlx.nodes),
        ),
    }
    report.notes.push(format!("exact-cover nodes {}", dlx.nodes));
    Ok(report)
}

/// Array-based dancing links. Node 0 is the root, nodes `1..=columns` the
/// column headers.
struct Dlx {
    left: Vec<usize>,
    right: Vec<usize>,
    up: Vec<usize>,
    down: Vec<usize>,
    col: Vec<usize>,
    row: Vec<usize>,
    size: Vec<usize>,
    nodes: u64,
}

impl Dlx {
    fn new(columns: usize, rows: &[Vec<usize>]) -> Self {
        let total = columns + 1 + rows.iter().map(Vec::len).sum::<usize>();
        let mut d = Dlx {
            left: Vec::with_capacity(total),
            right: Vec::with_capacity(total),
            up: Vec::with_capacity(total),
            down: Vec::with_capacity(total),
            col: Vec::with_capacity(total),
            row: Vec::with_capacity(total),
            size: vec![0; columns + 1],
            nodes: 0,
        };
        for i in 0..=columns {
            d.left.push(if i == 0 { columns } else { i - 1 });
            d.right.push(if i == columns { 0 } else { i + 1 });
            d.up.push(i);
            d.down.push(i);
            d.col.push(i);
            d.row.push(usize::MAX);
        }
        for (r, cells) in rows.iter().enumerate() {
            let first = d.col.len();
            for (k, &x) in cells.iter().enumerate() {
                let c = x + 1;
                let node = d.col.len();
                d.col.push(c);
                d.row.push(r);
                d.up.push(d.up[c]);
                d.down.push(c);
                let last = d.up[c];
                d.down[last] = node;
                d.up[c] = node;
                d.size[c] += 1;
                d.left.push(if k == 0 { node } else { node - 1 });
                d.right.push(first);
                if k > 0 {
                    d.right[node - 1] = node;
                    d.left[first] = node;
                }
            }
        }
        d
    }

    fn cover(&mut self, c: usize) {
        let (l, r) = (self.left[c], self.right[c]);
        self.right[l] = r;
        self.left[r] = l;
        let mut i = self.down[c];
        while i != c {
            let mut j = self.right[i];
            while j != i {
                let (u, dn) = (self.up[j], self.down[j]);
                self.down[u] = dn;
                self.up[dn] = u;
                self.size[self.col[j]] -= 1;
                j = self.right[j];
            }
            i = self.down[i];
        }
    }

    fn uncover(&mut self, c: usize) {
        let mut i = self.up[c];
        while i != c {
            let mut j = self.left[i];
            while j != i {
                self.size[self.col[j]] += 1;
                let (u, dn) = (self.up[j], self.down[j]);
                self.down[u] = j;
                self.up[dn] = j;
                j = self.left[j];
            }
            i = self.up[i];
        }
        let (l, r) = (self.left[c], self.right[c]);
        self.right[l] = c;
        self.left[r] = c;
    }

    /// Rows of an exact cover skipping at most `allowance` columns, `None`
    /// when the search space is exhausted.
    fn search(&mut self, allowance: usize, budget: u64) -> Result<Option<Vec<usize>>> {
        let mut chosen = Vec::new();
        match self.go(allowance, budget, &mut chosen)? {
            true => Ok(Some(chosen)),
            false => Ok(None),
        }
    }

    fn go(&mut self, allowance: usize, budget: u64, chosen: &mut Vec<usize>) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > budget {
            return Err(Error::Budget {
                what: "exact-cover search nodes",
                required: self.nodes as u128,
                limit: budget as u128,
            });
        }
        if self.right[0] == 0 {
            return Ok(true);
        }
        let mut c = self.right[0];
        let mut j = self.right[c];
        while j != 0 {
            if self.size[j] < self.size[c] {
                c = j;
            }
            j = self.right[j];
        }
        if self.size[c] == 0 && allowance == 0 {
            return Ok(false);
        }
        self.cover(c);
        let mut r = self.down[c];
        while r != c {
            chosen.push(self.row[r]);
            let mut j = self.right[r];
            while j != r {
                self.cover(self.col[j]);
                j = self.right[j];
            }
            let found = self.go(allowance, budget, chosen);
            let mut j = self.left[r];
            while j != r {
                self.uncover(self.col[j]);
                j = self.left[j];
            }
            match found {
                Ok(true) => {
                    self.uncover(c);
                    return Ok(true);
                }
                Ok(false) => {
                    chosen.pop();
                }
                Err(e) => {
                    self.uncover(c);
                    return Err(e);
                }
            }
            r = self.down[r];
        }
        // leave column c uncovered by any tile
        let found = if allowance > 0 {
            self.go(allowance - 1, budget, chosen)
        } else {
            Ok(false)
        };
        self.uncover(c);
        found
    }
}
