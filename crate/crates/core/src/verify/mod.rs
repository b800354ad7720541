//! Independent checks. Nothing here trusts the constructors: tilings are
//! re-certified element by element, implicit partitions by round trips, and
//! the exact-cover search rebuilds tilings from scratch.

mod chains;
mod exact_cover;
mod sampled;
mod tiling;

use std::fmt;

pub use chains::verify_chain_partition;
pub use exact_cover::{
    confirm_tiling_by_exact_cover, exact_cover_tiling_search, exact_cover_tiling_search_with, ExactCoverOptions,
    EXACT_COVER_NODES,
};
pub use sampled::{verify_implicit_sampled, PointOracle};
pub use tiling::{verify_tiling, verify_tiling_exhaustive};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ViolationKind {
    /// An element lies in two parts.
    Overlap,
    /// An element lies in no part and not in the leftover.
    Uncovered,
    /// A part references an element outside the host.
    OutOfRange,
    /// A tile is not a copy of the target poset.
    NotACopy,
    /// A chain is not totally ordered.
    NotAChain,
    /// Chain sizes break the uniform size contract.
    SizeContract,
    /// Declared and measured counts disagree.
    CountMismatch,
    /// A sampled round trip returned a different answer.
    Inconsistent,
    /// Sampled leftover frequency is implausible for the declared leftover.
    LeftoverRate,
}

impl ViolationKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ViolationKind::Overlap => "overlap",
            ViolationKind::Uncovered => "uncovered",
            ViolationKind::OutOfRange => "out-of-range",
            ViolationKind::NotACopy => "not-a-copy",
            ViolationKind::NotAChain => "not-a-chain",
            ViolationKind::SizeContract => "size-contract",
            ViolationKind::CountMismatch => "count-mismatch",
            ViolationKind::Inconsistent => "inconsistent",
            ViolationKind::LeftoverRate => "leftover-rate",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        use ViolationKind::*;
        [
            Overlap,
            Uncovered,
            OutOfRange,
            NotACopy,
            NotAChain,
            SizeContract,
            CountMismatch,
            Inconsistent,
            LeftoverRate,
        ]
        .into_iter()
        .find(|k| k.as_str() == s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.kind.as_str(), self.detail)
    }
}

/// Outcome of a verification pass. `tiles` counts parts (tiles or chains).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub tiles: usize,
    pub leftover: usize,
    pub violations: Vec<Violation>,
    /// Free-form statistics, e.g. sample counts. Not serialized.
    pub notes: Vec<String>,
}

/// Violations recorded per kind before further ones are dropped.
const VIOLATIONS_PER_KIND: usize = 8;

impl Report {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first_violation(&self) -> Option<&Violation> {
        self.violations.first()
    }

    pub fn has(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }

    pub(crate) fn flag(&mut self, kind: ViolationKind, detail: impl Into<String>) {
        if self.violations.iter().filter(|v| v.kind == kind).count() < VIOLATIONS_PER_KIND {
            self.violations.push(Violation {
                kind,
                detail: detail.into(),
            });
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "verdict {}\ntiles {}\nleftover {}\n",
            if self.pass() { "PASS" } else { "FAIL" },
            self.tiles,
            self.leftover
        );
        for v in &self.violations {
            out.push_str(&format!("violation {v}\n"));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut report = Report::default();
        let mut verdict = None;
        for (i, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
            let l = i + 1;
            let (key, rest) = line.trim().split_once(' ').unwrap_or((line.trim(), ""));
            let num = || rest.parse::<usize>().map_err(|_| Error::parse(l, "expected a count"));
            match key {
                "verdict" => verdict = Some(rest == "PASS"),
                "tiles" => report.tiles = num()?,
                "leftover" => report.leftover = num()?,
                "violation" => {
                    let (k, detail) = rest.split_once(' ').unwrap_or((rest, ""));
                    let kind = ViolationKind::parse(k)
                        .ok_or_else(|| Error::parse(l, format!("unknown violation kind {k:?}")))?;
                    report.violations.push(Violation {
                        kind,
                        detail: detail.to_string(),
                    });
                }
                _ => return Err(Error::parse(l, format!("unexpected report line {line:?}"))),
            }
        }
        match verdict {
            Some(v) if v == report.pass() => Ok(report),
            Some(_) => Err(Error::parse(1, "verdict disagrees with the violation list")),
            None => Err(Error::parse(1, "report has no verdict line")),
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
