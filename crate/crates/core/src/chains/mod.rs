//! Chain partitions of the Boolean lattice `2^[n]`.
//!
//! Two things live here: the symmetric chain decomposition, which is cheap and
//! available as a per-set query for any `n <= 128`, and partitions obeying the
//! uniform size contract — every chain of size `h` except a first chain of
//! size in `[h, 2h)`.

pub(crate) mod matching;
mod scd;
mod uniform;

use std::fmt::Write as _;

pub use scd::{scd_position, scd_successor, symmetric_chain_decomposition, ScdPosition};
pub use uniform::{chain_partition_counts, uniform_chain_partition, UniformOptions};

use crate::error::{Error, Result};
use crate::poset::{BooleanElement, MATERIALIZATION_BUDGET};

/// Largest ground set handled explicitly.
pub const EXPLICIT_MAX_N: usize = 24;

const INDEX_BITS: u32 = 6;

/// A partition of `2^[n]` into chains, with masks stored as `u32`.
///
/// Construction does not validate; run
/// [`verify_chain_partition`](crate::verify::verify_chain_partition) for the
/// full contract. [`ChainPartition::chain_of`] needs a disjoint cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainPartition {
    n: usize,
    h: usize,
    chains: Vec<Vec<u32>>,
    // chain id << INDEX_BITS | index, or u32::MAX when uncovered
    lookup: Option<Vec<u32>>,
}

impl ChainPartition {
    pub fn new(n: usize, h: usize, chains: Vec<Vec<u32>>) -> Result<Self> {
        if n == 0 || n > EXPLICIT_MAX_N {
            return Err(Error::invalid(format!("explicit chain partitions need 1 <= n <= 24, got {n}")));
        }
        for c in &chains {
            if let Some(&x) = c.iter().find(|&&x| x >> n != 0) {
                return Err(Error::invalid(format!("{x:#x} is not a subset of [{n}]")));
            }
        }
        let lookup = build_lookup(n, &chains);
        Ok(ChainPartition {
            n,
            h,
            chains,
            lookup,
        })
    }

    pub fn host_n(&self) -> usize {
        self.n
    }

    pub fn h(&self) -> usize {
        self.h
    }

    pub fn len(&self) -> usize {
        self.chains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chains.is_empty()
    }

    pub fn chains(&self) -> &[Vec<u32>] {
        &self.chains
    }

    pub fn chain(&self, id: usize) -> &[u32] {
        &self.chains[id]
    }

    /// Chain `id` as lattice elements.
    pub fn elements(&self, id: usize) -> Vec<BooleanElement> {
        self.chains[id]
            .iter()
            .map(|&m| BooleanElement::new(m as u128, self.n).expect("mask checked at construction"))
            .collect()
    }

    /// Size of the first chain, the only one allowed to differ from `h`.
    pub fn first_len(&self) -> usize {
        self.chains.first().map_or(0, Vec::len)
    }

    /// `(chain id, index within chain)` for a set given as a mask.
    pub fn chain_of_mask(&self, mask: u128) -> Result<(usize, usize)> {
        if mask >> self.n != 0 {
            return Err(Error::invalid(format!("{mask:#x} is not a subset of [{}]", self.n)));
        }
        let lookup = self
            .lookup
            .as_ref()
            .ok_or_else(|| Error::precondition("chains do not form a disjoint cover"))?;
        let packed = lookup[mask as usize];
        Ok(((packed >> INDEX_BITS) as usize, (packed & ((1 << INDEX_BITS) - 1)) as usize))
    }

    pub fn chain_of(&self, x: &BooleanElement) -> Result<(usize, usize)> {
        if x.ground as usize != self.n {
            return Err(Error::invalid(format!(
                "element of 2^[{}] queried against a partition of 2^[{}]",
                x.ground, self.n
            )));
        }
        self.chain_of_mask(x.mask)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("chains n={} h={}\n", self.n, self.h);
        for (i, c) in self.chains.iter().enumerate() {
            let _ = write!(out, "chain {i}:");
            for m in c {
                let _ = write!(out, " {m:#x}");
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
        let (hl, header) = lines.next().ok_or_else(|| Error::parse(1, "empty chain file"))?;
        let kv = parse_header(header, "chains", hl)?;
        let n = header_usize(&kv, "n", hl)?;
        let h = header_usize(&kv, "h", hl)?;
        let mut chains = Vec::new();
        for (l, line) in lines {
            let (head, body) = line
                .split_once(':')
                .ok_or_else(|| Error::parse(l, "expected `chain <id>: <masks>`"))?;
            let id = head
                .strip_prefix("chain ")
                .and_then(|s| s.trim().parse::<usize>().ok())
                .ok_or_else(|| Error::parse(l, "expected `chain <id>:`"))?;
            if id != chains.len() {
                return Err(Error::parse(l, format!("chain ids must be consecutive, got {id}")));
            }
            let chain = body
                .split_whitespace()
                .map(|t| parse_hex(t, l).map(|m| m as u32))
                .collect::<Result<Vec<_>>>()?;
            chains.push(chain);
        }
        ChainPartition::new(n, h, chains)
    }
}

fn build_lookup(n: usize, chains: &[Vec<u32>]) -> Option<Vec<u32>> {
    if chains.iter().any(|c| c.len() >= 1 << INDEX_BITS) {
        return None;
    }
    let mut table = vec![u32::MAX; 1 << n];
    for (id, c) in chains.iter().enumerate() {
        for (i, &x) in c.iter().enumerate() {
            let slot = &mut table[x as usize];
            if *slot != u32::MAX {
                return None;
            }
            *slot = (id as u32) << INDEX_BITS | i as u32;
        }
    }
    table.iter().all(|&s| s != u32::MAX).then_some(table)
}

pub(crate) fn parse_hex(tok: &str, line: usize) -> Result<u128> {
    tok.strip_prefix("0x")
        .and_then(|h| u128::from_str_radix(h, 16).ok())
        .ok_or_else(|| Error::parse(line, format!("expected a hex mask like 0x1a, got {tok:?}")))
}

/// Splits `kind k=v k=v ...` into its pairs.
pub(crate) fn parse_header<'a>(
    header: &'a str,
    kind: &str,
    line: usize,
) -> Result<Vec<(&'a str, &'a str)>> {
    let mut toks = header.split_whitespace();
    if toks.next() != Some(kind) {
        return Err(Error::parse(line, format!("expected a `{kind}` header")));
    }
    toks.map(|t| {
        t.split_once('=')
            .ok_or_else(|| Error::parse(line, format!("expected key=value, got {t:?}")))
    })
    .collect()
}

pub(crate) fn header_value<'a>(kv: &[(&str, &'a str)], key: &str, line: usize) -> Result<&'a str> {
    kv.iter()
        .find(|(k, _)| *k == key)
        .map(|(_, v)| *v)
        .ok_or_else(|| Error::parse(line, format!("header is missing `{key}=`")))
}

pub(crate) fn header_usize(kv: &[(&str, &str)], key: &str, line: usize) -> Result<usize> {
    let v = header_value(kv, key, line)?;
    v.parse()
        .map_err(|_| Error::parse(line, format!("`{key}` must be an integer, got {v:?}")))
}

pub(crate) fn check_explicit(n: usize) -> Result<()> {
    if n > EXPLICIT_MAX_N {
        return Err(Error::Budget {
            what: "explicit Boolean lattice",
            required: 1u128 << n.min(127),
            limit: MATERIALIZATION_BUDGET as u128,
        });
    }
    Ok(())
}
