//! Tiling `[ab]×[c]` by copies of `R = [a]×[b]` for even `a`.
//!
//! Write `c = aq + r`. The left half holds the tiles `A_{i,j}` (shifted up by
//! `r`), the right half the tiles `B_{i,j}`; this leaves the corners
//! `S = [ab/2]×[r]` and `T = [ab/2+1, ab]×[aq+1, c]` uncovered. For
//! `(i, j) ∈ [a/2]×[br]` the maximum `x_{i,j}` of `A_{i,j}` is swapped for
//! `φ(i, j) ∈ T` and the minimum `y_{i,j}` of `B_{i,j+ε}` for `ψ(i, j) ∈ S`;
//! the freed elements form the `r` patch chains `C_k`.
//!
//! `φ` and `ψ` send `[a/2]×[br]` in row-major order to `T` and `S` in
//! row-major order. Tile ids: `A_{i,j}` is `(i-1)q + j - 1`, `B_{i,j}` follows
//! at `(a/2)q + (i-1)q + j - 1`, and `C_k` is `aq + k - 1`.
//!
//! Within a tile, position `(p-1)b + (q-1)` holds the image of `(p, q) ∈ R`.

use crate::error::{Error, Result};
use crate::poset::GridPoset;
use crate::tiling::{Host, Tiling};

/// Which inequalities a construction insists on.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum ThresholdMode {
    /// The uniform sufficient bounds (`c ≥ a²b + 2a` here).
    #[default]
    Strict,
    /// Only the inequalities the construction uses.
    Precise,
}

impl ThresholdMode {
    pub fn as_str(self) -> &'static str {
        match self {
            ThresholdMode::Strict => "strict",
            ThresholdMode::Precise => "precise",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "strict" => Ok(ThresholdMode::Strict),
            "precise" => Ok(ThresholdMode::Precise),
            _ => Err(Error::invalid(format!("mode must be strict or precise, got {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RectParams {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    /// `⌊c/a⌋`.
    pub quotient_q: usize,
    /// `c mod a`.
    pub r: usize,
    /// 1 if `r = 1`, 2 if `r ≥ 2`, 0 (unused) if `r = 0`.
    pub epsilon: usize,
}

impl RectParams {
    pub fn new(a: usize, b: usize, c: usize, mode: ThresholdMode) -> Result<Self> {
        if a == 0 || b == 0 || c == 0 {
            return Err(Error::invalid(format!("sides must be positive, got a={a} b={b} c={c}")));
        }
        if a % 2 == 1 {
            return Err(Error::precondition(format!("a={a} must be even")));
        }
        let (q, r) = (c / a, c % a);
        let epsilon = match r {
            0 => 0,
            1 => 1,
            _ => 2,
        };
        match mode {
            ThresholdMode::Strict => {
                let bound = a * a * b + 2 * a;
                if c < bound && r != 0 {
                    return Err(Error::precondition(format!(
                        "c={c} < a²b + 2a = {bound} (a={a}, b={b})"
                    )));
                }
            }
            ThresholdMode::Precise => {
                if r != 0 && q < b * r + epsilon {
                    return Err(Error::precondition(format!(
                        "c={c} = {a}·{q} + {r} needs quotient ≥ br + ε = {}",
                        b * r + epsilon
                    )));
                }
            }
        }
        Ok(RectParams {
            a,
            b,
            c,
            quotient_q: q,
            r,
            epsilon,
        })
    }

    pub fn tiles(&self) -> usize {
        self.c
    }

    fn half(&self) -> usize {
        self.a * self.b / 2
    }

    /// `x_{i,j}`, the maximum of `A_{i,j}`.
    fn x(&self, i: usize, j: usize) -> (usize, usize) {
        (self.b * i, self.r + self.a * j)
    }

    /// `y_{i,j}`, the minimum of `B_{i,j+ε}`.
    fn y(&self, i: usize, j: usize) -> (usize, usize) {
        (self.half() + self.b * (i - 1) + 1, self.a * (j + self.epsilon - 1) + 1)
    }

    /// Row-major `(i, j) ∈ [a/2]×[br]` from a 0-based rank.
    fn pair(&self, rank: usize) -> (usize, usize) {
        let w = self.b * self.r;
        (rank / w + 1, rank % w + 1)
    }

    fn phi(&self, i: usize, j: usize) -> (usize, usize) {
        let t = (i - 1) * self.b * self.r + (j - 1);
        (self.half() + 1 + t / self.r, self.a * self.quotient_q + 1 + t % self.r)
    }

    fn psi(&self, i: usize, j: usize) -> (usize, usize) {
        let s = (i - 1) * self.b * self.r + (j - 1);
        (1 + s / self.r, 1 + s % self.r)
    }

    /// Tiles as coordinate lists in `R`'s element order.
    pub fn coordinate_tiles(&self) -> Vec<Vec<(usize, usize)>> {
        let (a, b, q, r) = (self.a, self.b, self.quotient_q, self.r);
        let switched = b * r;
        let mut tiles = Vec::with_capacity(self.c);
        for i in 1..=a / 2 {
            for j in 1..=q {
                let mut t = Vec::with_capacity(a * b);
                for p in 1..=a {
                    for s in 1..=b {
                        t.push((b * (i - 1) + s, r + a * (j - 1) + p));
                    }
                }
                if j <= switched {
                    *t.last_mut().unwrap() = self.phi(i, j);
                }
                tiles.push(t);
            }
        }
        for i in 1..=a / 2 {
            for j in 1..=q {
                let mut t = Vec::with_capacity(a * b);
                for p in 1..=a {
                    for s in 1..=b {
                        t.push((self.half() + b * (i - 1) + s, a * (j - 1) + p));
                    }
                }
                if r > 0 && j > self.epsilon && j - self.epsilon <= switched {
                    t[0] = self.psi(i, j - self.epsilon);
                }
                tiles.push(t);
            }
        }
        for k in 1..=r {
            let mut t = Vec::with_capacity(a * b);
            for p in 1..=a {
                for s in 1..=b {
                    let j = b * (k - 1) + s;
                    t.push(if p <= a / 2 { self.x(p, j) } else { self.y(p - a / 2, j) });
                }
            }
            tiles.push(t);
        }
        tiles
    }
}

/// The tiling of `[ab]×[c]` into `c` copies of `[a]×[b]`.
pub fn tile_rectangle(a: usize, b: usize, c: usize, mode: ThresholdMode) -> Result<Tiling> {
    let params = RectParams::new(a, b, c, mode)?;
    let host = GridPoset::materializable(&[a * b, c])?;
    let tiles = params
        .coordinate_tiles()
        .into_iter()
        .map(|t| t.into_iter().map(|(x, y)| host.index(&[x, y])).collect())
        .collect();
    Ok(Tiling {
        host: Host::Grid(host),
        target: format!("grid:{a}x{b}"),
        tiles,
        leftover: Vec::new(),
    })
}

/// `(tile id, position in tile)` of `(x, y)` without materializing.
pub fn rect_tile_lookup(coord: (usize, usize), p: &RectParams) -> Result<(usize, usize)> {
    let (x, y) = coord;
    let (a, b, q, r) = (p.a, p.b, p.quotient_q, p.r);
    if x == 0 || y == 0 || x > a * b || y > p.c {
        return Err(Error::invalid(format!("({x},{y}) outside [{}]×[{}]", a * b, p.c)));
    }
    let half = p.half();
    let switched = b * r;
    let c_tile = |k: usize| a * q + k - 1;
    let pos = |row: usize, col: usize| (row - 1) * b + col - 1;
    if x <= half {
        if y <= r {
            // S: taken by ψ(i, j) as the minimum of B_{i,j+ε}
            let (i, j) = p.pair((x - 1) * r + (y - 1));
            return Ok(((a / 2) * q + (i - 1) * q + j + p.epsilon - 1, 0));
        }
        let (i, s) = ((x - 1) / b + 1, (x - 1) % b + 1);
        let (j, row) = ((y - r - 1) / a + 1, (y - r - 1) % a + 1);
        if row == a && s == b && j <= switched {
            // x_{i,j}, freed into a patch chain
            let (k, jj) = ((j - 1) / b + 1, (j - 1) % b + 1);
            return Ok((c_tile(k), pos(i, jj)));
        }
        return Ok(((i - 1) * q + j - 1, pos(row, s)));
    }
    if y > a * q {
        // T: φ(i, j) replaces the maximum of A_{i,j}
        let (i, j) = p.pair((x - half - 1) * r + (y - a * q - 1));
        return Ok(((i - 1) * q + j - 1, a * b - 1));
    }
    let (i, s) = ((x - half - 1) / b + 1, (x - half - 1) % b + 1);
    let (j, row) = ((y - 1) / a + 1, (y - 1) % a + 1);
    if r > 0 && row == 1 && s == 1 && j > p.epsilon && j - p.epsilon <= switched {
        // y_{i,j-ε}, freed into a patch chain
        let jj = j - p.epsilon;
        let (k, t) = ((jj - 1) / b + 1, (jj - 1) % b + 1);
        return Ok((c_tile(k), pos(i + a / 2, t)));
    }
    Ok(((a / 2) * q + (i - 1) * q + j - 1, pos(row, s)))
}
