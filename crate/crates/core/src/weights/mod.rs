//! Weight functions over copies of a poset, and the weak partitions they
//! describe.
//!
//! A weight function assigns nonnegative integers to copies of `P` in a host
//! `Q`; the weight of an element is the total weight of the copies through
//! it. Weight exactly `t` everywhere is a `t`-partition; weight `≡ 1 mod t`
//! everywhere is a `(1 mod t)`-partition.

mod realize;
mod search;

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

pub use realize::{one_mod_t_partition, realize_function, realize_point_difference, RealizabilityContext};
pub use search::{find_t_partition, find_t_partition_with_budget, lift_to_blocks};

use crate::chains::{header_usize, header_value, parse_header};
use crate::error::{Error, Result};
use crate::poset::{parse_poset_spec, GridPoset, Order, Pattern, Poset};
use crate::tiling::Host;

/// Which congruence a weight function is checked against.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightKind {
    ExactT,
    OneModT,
}

impl WeightKind {
    pub fn as_str(self) -> &'static str {
        match self {
            WeightKind::ExactT => "t",
            WeightKind::OneModT => "one-mod-t",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "t" | "exact-t" => Ok(WeightKind::ExactT),
            "one-mod-t" => Ok(WeightKind::OneModT),
            _ => Err(Error::invalid(format!("kind must be t or one-mod-t, got {s:?}"))),
        }
    }
}

/// Sparse weights on copies of `target` in the grid `host`. Copies are keyed
/// by their sorted element indices; zero weights are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightFunction {
    pub host: GridPoset,
    pub target: Poset,
    pub entries: BTreeMap<Vec<usize>, u64>,
}

impl WeightFunction {
    pub fn new(host: GridPoset, target: Poset) -> Self {
        WeightFunction {
            host,
            target,
            entries: BTreeMap::new(),
        }
    }

    /// Adds `weight` to the copy `set` (any element order).
    pub fn add(&mut self, set: &[usize], weight: u64) {
        if weight == 0 {
            return;
        }
        let mut key = set.to_vec();
        key.sort_unstable();
        *self.entries.entry(key).or_insert(0) += weight;
    }

    /// Entrywise sum.
    pub fn merge(&mut self, other: &WeightFunction, times: u64) {
        for (k, &w) in &other.entries {
            if w * times > 0 {
                *self.entries.entry(k.clone()).or_insert(0) += w * times;
            }
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total_weight(&self) -> u128 {
        self.entries.values().map(|&w| w as u128).sum()
    }

    /// Weight of every host element.
    pub fn element_weights(&self) -> Vec<u128> {
        let mut out = vec![0u128; self.host.size()];
        for (set, &w) in &self.entries {
            for &x in set {
                out[x] += w as u128;
            }
        }
        out
    }

    pub fn to_text(&self, t: u64, kind: WeightKind) -> String {
        let host = Host::Grid(self.host.clone());
        let mut out = format!(
            "weights host={} target={} t={t} kind={}\n",
            self.host.spec(),
            self.target.name(),
            kind.as_str()
        );
        for (set, w) in &self.entries {
            let _ = write!(out, "w {w}:");
            for &x in set {
                let _ = write!(out, " {}", host.format_element(x));
            }
            out.push('\n');
        }
        out
    }

    /// Parses a weights file; the target is resolved from its spec.
    pub fn from_text(text: &str) -> Result<(Self, u64, WeightKind)> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hl, header) = lines.next().ok_or_else(|| Error::parse(1, "empty weights file"))?;
        let kv = parse_header(header, "weights", hl)?;
        let Host::Grid(grid) = Host::parse(header_value(&kv, "host", hl)?)? else {
            return Err(Error::parse(hl, "weight functions live on grid hosts"));
        };
        let target = parse_poset_spec(header_value(&kv, "target", hl)?)?;
        let t = header_usize(&kv, "t", hl)? as u64;
        let kind = WeightKind::parse(header_value(&kv, "kind", hl)?)?;
        let host = Host::Grid(grid.clone());
        let mut w = WeightFunction::new(grid, target);
        for (l, line) in lines {
            let (head, body) = line
                .split_once(':')
                .ok_or_else(|| Error::parse(l, "expected `w <weight>: <elements>`"))?;
            let weight = head
                .strip_prefix("w ")
                .and_then(|s| s.trim().parse::<u64>().ok())
                .ok_or_else(|| Error::parse(l, "expected `w <weight>:`"))?;
            let set = body
                .split_whitespace()
                .map(|tok| host.parse_element(tok, l))
                .collect::<Result<Vec<_>>>()?;
            w.add(&set, weight);
        }
        Ok((w, t, kind))
    }
}

/// Per-element verdict of a weight function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightReport {
    pub t: u64,
    pub kind: WeightKind,
    pub weights: Vec<u128>,
    /// Elements failing the congruence, at most 8, with their weights.
    pub failures: Vec<(usize, u128)>,
    pub failure_count: usize,
    /// `t·|Q| = |P|·Σ w(F)`; only meaningful for exact `t`.
    pub sum_identity: bool,
}

impl WeightReport {
    pub fn pass(&self) -> bool {
        self.failure_count == 0 && (self.kind == WeightKind::OneModT || self.sum_identity)
    }
}

impl fmt::Display for WeightReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "verdict {}", if self.pass() { "PASS" } else { "FAIL" })?;
        writeln!(f, "elements {}", self.weights.len())?;
        writeln!(f, "failures {}", self.failure_count)?;
        if self.kind == WeightKind::ExactT {
            writeln!(f, "sum-identity {}", self.sum_identity)?;
        }
        for (x, w) in &self.failures {
            writeln!(f, "violation weight element {x} has weight {w}")?;
        }
        Ok(())
    }
}

/// Scans every element of the host. An entry that is not a copy of the
/// target is an error, not a report line.
pub fn verify_weight_function(w: &WeightFunction, t: u64, kind: WeightKind) -> Result<WeightReport> {
    if t == 0 {
        return Err(Error::invalid("t must be positive"));
    }
    let pat = Pattern::new(&w.target);
    for set in w.entries.keys() {
        if set.iter().any(|&x| x >= w.host.size()) || !pat.is_copy_in(&w.host, set) {
            return Err(Error::invalid(format!(
                "weighted set {set:?} is not a copy of {}",
                w.target.name()
            )));
        }
    }
    let weights = w.element_weights();
    let ok = |v: u128| match kind {
        WeightKind::ExactT => v == t as u128,
        WeightKind::OneModT => v % t as u128 == 1 % t as u128,
    };
    let bad: Vec<(usize, u128)> = weights
        .iter()
        .enumerate()
        .filter(|&(_, &v)| !ok(v))
        .map(|(x, &v)| (x, v))
        .collect();
    let sum_identity =
        t as u128 * w.host.size() as u128 == w.target.len() as u128 * w.total_weight();
    Ok(WeightReport {
        t,
        kind,
        failure_count: bad.len(),
        failures: bad.into_iter().take(8).collect(),
        weights,
        sum_identity,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_copy_examples() {
        for t in 1..=4 {
            let mut w = WeightFunction::new(GridPoset::new(&[2]).unwrap(), Poset::chain(2));
            w.add(&[0, 1], t);
            assert!(verify_weight_function(&w, t, WeightKind::ExactT).unwrap().pass());
        }
        let mut w = WeightFunction::new(GridPoset::new(&[2, 2]).unwrap(), Poset::diamond());
        w.add(&[0, 1, 2, 3], 3);
        assert!(verify_weight_function(&w, 3, WeightKind::ExactT).unwrap().pass());
        assert!(!verify_weight_function(&w, 2, WeightKind::ExactT).unwrap().pass());
    }

    #[test]
    fn non_copy_is_an_error() {
        let mut w = WeightFunction::new(GridPoset::new(&[2, 2]).unwrap(), Poset::chain(2));
        w.add(&[1, 2], 1);
        assert!(verify_weight_function(&w, 1, WeightKind::ExactT).is_err());
    }

    #[test]
    fn text_round_trip() {
        let mut w = WeightFunction::new(GridPoset::new(&[4]).unwrap(), Poset::chain(2));
        w.add(&[0, 1], 2);
        w.add(&[2, 3], 1);
        let text = w.to_text(3, WeightKind::OneModT);
        assert_eq!(
            text,
            "weights host=grid:4 target=chain:2 t=3 kind=one-mod-t\nw 2: (1) (2)\nw 1: (3) (4)\n"
        );
        let (again, t, kind) = WeightFunction::from_text(&text).unwrap();
        assert_eq!((again, t, kind), (w, 3, WeightKind::OneModT));
    }
}
