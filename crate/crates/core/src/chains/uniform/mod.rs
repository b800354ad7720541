//! Uniform-size chain partitions of `2^[n]`.
//!
//! Two counting facts decide a lot up front. The first chain has size
//! `h + (2^n mod h)`, which must not exceed `n + 1`. A chain meets each level
//! at most once, so the `r` chains must number at least `C(n, n/2)`. When
//! both hold, chains are grown bottom-up one level at a time:
//!
//! * every open chain whose remaining need equals the number of remaining
//!   levels must be extended;
//! * otherwise chains are extended by a maximum matching into the next level,
//!   grown in priority order (forced, then largest need), preferring each
//!   chain's successor in the symmetric chain decomposition;
//! * the number of chains started at this level is the smallest value for
//!   which the residual needs still pass the Gale–Ryser test against the
//!   remaining level sizes.
//!
//! Odd `n` first tries a construction by complement symmetry, and any `n` may
//! be lifted from a partition of `2^[n-k]` for small `k`. Failures are
//! retried with shuffled priorities. Tiny instances fall back to exhaustive
//! search, which can certify infeasibility.

mod mirror;
mod product;
mod search;
mod sweep;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use self::mirror::mirror_construction;
use self::product::{lift, split_corner, MAX_SPLIT};
use self::search::{exhaustive, Search};
use self::sweep::LevelSweep;
use super::{check_explicit, ChainPartition};
use crate::error::{Error, Infeasibility, Result};
use crate::verify::verify_chain_partition;

/// Largest `n` where exhaustive search is attempted.
const EXHAUSTIVE_MAX_N: usize = 5;

/// Nesting limit for the product extension.
const MAX_DEPTH: usize = 3;

#[derive(Clone, Debug)]
pub struct UniformOptions {
    pub attempts: usize,
    pub seed: u64,
    pub search_nodes: u64,
}

impl Default for UniformOptions {
    fn default() -> Self {
        UniformOptions {
            attempts: 8,
            seed: 0x5eed,
            search_nodes: 5_000_000,
        }
    }
}

fn binom(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// `(|C_1|, r)` for a partition of `2^[n]` into chains of size `h`, or the
/// counting certificate that none exists. Valid for `n <= 64`.
pub fn chain_partition_counts(n: usize, h: usize) -> Result<(usize, u128)> {
    if h == 0 {
        return Err(Error::invalid("chain size h must be at least 1"));
    }
    if n > 64 {
        return Err(Error::invalid(format!("chain counts are computed for n <= 64, got {n}")));
    }
    if h > n + 1 {
        return Err(Error::Infeasible(Infeasibility::ChainTooLong {
            required: h,
            longest: n + 1,
        }));
    }
    let total = 1u128 << n;
    let c1 = h + (total % h as u128) as usize;
    if c1 > n + 1 {
        return Err(Error::Infeasible(Infeasibility::ChainTooLong {
            required: c1,
            longest: n + 1,
        }));
    }
    let r = 1 + (total - c1 as u128) / h as u128;
    let widest = binom(n, n / 2);
    if widest > r {
        return Err(Error::Infeasible(Infeasibility::LevelCapacity {
            level: n / 2,
            level_size: widest as u64,
            chains: r as u64,
        }));
    }
    Ok((c1, r))
}

pub fn uniform_chain_partition(n: usize, h: usize) -> Result<ChainPartition> {
    uniform_chain_partition_with(n, h, &UniformOptions::default())
}

pub fn uniform_chain_partition_with(
    n: usize,
    h: usize,
    opts: &UniformOptions,
) -> Result<ChainPartition> {
    if n == 0 {
        return Err(Error::invalid("ground set must be non-empty"));
    }
    check_explicit(n)?;
    let (c1, r) = chain_partition_counts(n, h)?;
    let r = r as usize;

    let mut detail = match construct(n, h, c1, r, opts, 0) {
        Ok(chains) => return finish(n, h, c1, chains),
        Err(detail) => detail,
    };
    if n <= EXHAUSTIVE_MAX_N {
        return match exhaustive(n, h, c1, r, opts.search_nodes) {
            Search::Found(chains) => finish(n, h, c1, chains),
            Search::Exhausted(nodes) => Err(Error::Infeasible(Infeasibility::SearchExhausted { nodes })),
            Search::OutOfBudget => Err(Error::Budget {
                what: "chain partition search nodes",
                required: opts.search_nodes as u128 + 1,
                limit: opts.search_nodes as u128,
            }),
        };
    }
    Err(Error::Infeasible(Infeasibility::HeuristicFailed {
        attempts: opts.attempts.max(1),
        detail: std::mem::take(&mut detail),
    }))
}

/// Heuristic constructions, cheapest first: the symmetric construction and
/// the sweep, the product extension from smaller ground sets, then
/// randomised retries of the first two.
fn construct(
    n: usize,
    h: usize,
    c1: usize,
    r: usize,
    opts: &UniformOptions,
    depth: usize,
) -> std::result::Result<Vec<Vec<u32>>, String> {
    let rng = |attempt: usize| {
        (attempt > 0).then(|| ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(attempt as u64)))
    };
    let mut detail = String::new();
    for attempt in 0..opts.attempts.max(1) {
        match mirror_construction(n, h, c1, r, rng(attempt)) {
            Ok(chains) => return Ok(chains),
            Err(d) => detail = format!("symmetric: {d}"),
        }
        match LevelSweep::full(n, h, c1, r, rng(attempt)).run() {
            Ok(chains) => return Ok(chains),
            Err(d) => detail = format!("{detail}; sweep: {d}"),
        }
        if attempt == 0 && depth < MAX_DEPTH {
            match extend(n, h, c1, opts, depth) {
                Ok(chains) => return Ok(chains),
                Err(d) => detail = format!("{detail}; product: {d}"),
            }
        }
    }
    Err(detail)
}

fn extend(
    n: usize,
    h: usize,
    c1: usize,
    opts: &UniformOptions,
    depth: usize,
) -> std::result::Result<Vec<Vec<u32>>, String> {
    for k in 1..=MAX_SPLIT.min(n - 1) {
        let Ok((c1s, rs)) = chain_partition_counts(n - k, h) else {
            continue;
        };
        let Some(corner) = split_corner(c1s, k, h, c1, opts.search_nodes) else {
            continue;
        };
        if let Ok(base) = construct(n - k, h, c1s, rs as usize, opts, depth + 1) {
            let off = base.iter().position(|c| c.len() == c1s).expect("base has its first chain");
            return Ok(lift(&base, off, &corner, n, k));
        }
    }
    Err(format!("no split of 2^[{n}] into 2^[{n}-k] × 2^[k], k <= {MAX_SPLIT}, worked"))
}

/// Orders chains (off-size chain first, rest by minimum mask) and verifies.
fn finish(n: usize, h: usize, c1: usize, mut chains: Vec<Vec<u32>>) -> Result<ChainPartition> {
    chains.sort_by_key(|c| (c.len() != c1, c[0]));
    if c1 == h {
        chains.sort_by_key(|c| c[0]);
    }
    let cp = ChainPartition::new(n, h, chains)?;
    let report = verify_chain_partition(&cp);
    if !report.pass() {
        return Err(Error::precondition(format!(
            "constructed chain partition failed verification: {}",
            report.first_violation().map_or(String::new(), |v| v.to_string())
        )));
    }
    Ok(cp)
}
