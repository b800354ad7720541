//! Almost-partition manifests.
//!
//! ```text
//! almost n=9 target=chain:3 grid=3 h=3 split=9 threshold=precise mode=explicit
//! factor 1: run.factor1.chains
//! leftover: 0x1fc 0x1fe
//! tile 0: 0x0 0x1 0x3
//! ```
//!
//! Factor chain partitions live in their own files, named relative to the
//! manifest. A non-grid target adds `refine: <tiling file>`, and a target
//! without a shorthand is stored beside the manifest as `target=@<file>`.
//! Explicit manifests carry every tile; implicit ones only the leftover.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use super::almost::from_factors;
use super::{grid_refinement, AlmostPartition, PipelineConfig, Refinement};
use crate::chains::{header_usize, header_value, parse_hex, parse_header, ChainPartition};
use crate::error::{Error, Result};
use crate::grid::{grid_spec, ThresholdMode};
use crate::poset::{parse_poset_spec, parse_poset_text, poset_to_text, Poset};
use crate::tiling::{Host, Tiling};
use crate::verify::{
    verify_chain_partition, verify_implicit_sampled, verify_tiling_exhaustive, Report, ViolationKind,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ManifestMode {
    Explicit,
    Implicit,
}

impl ManifestMode {
    pub fn as_str(self) -> &'static str {
        match self {
            ManifestMode::Explicit => "explicit",
            ManifestMode::Implicit => "implicit",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Manifest {
    pub config: PipelineConfig,
    pub target: String,
    pub mode: ManifestMode,
    /// Paths as written in the manifest, relative to it.
    pub factor_files: Vec<PathBuf>,
    pub refine_file: Option<PathBuf>,
    pub leftover: Vec<u128>,
    pub tiles: Vec<Vec<u128>>,
}

fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let stem = path.file_stem().map_or_else(|| "almost".into(), |s| s.to_string_lossy().into_owned());
    PathBuf::from(format!("{stem}.{suffix}"))
}

fn dir_of(path: &Path) -> PathBuf {
    path.parent().map_or_else(PathBuf::new, Path::to_path_buf)
}

/// Writes the manifest and its side files; returns every path written.
pub fn write_manifest(ap: &AlmostPartition, path: &Path, mode: ManifestMode) -> Result<Vec<PathBuf>> {
    let dir = dir_of(path);
    let mut written = Vec::new();
    let c = ap.config();
    let target = match parse_poset_spec(ap.target().name()) {
        Ok(p) if &p == ap.target() => ap.target().name().to_string(),
        _ => {
            let file = sibling(path, "target.poset");
            fs::write(dir.join(&file), poset_to_text(ap.target()))?;
            written.push(dir.join(&file));
            format!("@{}", file.display())
        }
    };
    let split: Vec<String> = c.m_parts.iter().map(|m| m.to_string()).collect();
    let mut out = format!(
        "almost n={} target={target} grid={} h={} split={} threshold={} mode={}\n",
        c.n,
        grid_spec(&c.p_dims).trim_start_matches("grid:"),
        c.h,
        split.join(","),
        c.mode.as_str(),
        mode.as_str()
    );
    for (i, cp) in ap.factors().iter().enumerate() {
        let file = sibling(path, &format!("factor{}.chains", i + 1));
        fs::write(dir.join(&file), cp.to_text())?;
        written.push(dir.join(&file));
        let _ = writeln!(out, "factor {}: {}", i + 1, file.display());
    }
    if let Refinement::Tiling(t) = ap.refinement() {
        let file = sibling(path, "refine.tiling");
        // name the target so the tiling verifies on its own
        let t = Tiling {
            target: target.clone(),
            ..t.clone()
        };
        fs::write(dir.join(&file), t.to_text())?;
        written.push(dir.join(&file));
        let _ = writeln!(out, "refine: {}", file.display());
    }
    out.push_str("leftover:");
    for x in ap.leftover() {
        let _ = write!(out, " {x:#x}");
    }
    out.push('\n');
    if mode == ManifestMode::Explicit {
        for (i, id) in ap.tile_ids().enumerate() {
            let _ = write!(out, "tile {i}:");
            for x in ap.materialize_tile(id)? {
                let _ = write!(out, " {x:#x}");
            }
            out.push('\n');
        }
    }
    fs::write(path, out)?;
    written.push(path.to_path_buf());
    Ok(written)
}

fn parse_list(s: &str, what: &str, line: usize) -> Result<Vec<usize>> {
    s.split([',', 'x'])
        .map(|t| t.parse().map_err(|_| Error::parse(line, format!("malformed {what} {s:?}"))))
        .collect()
}

pub fn read_manifest(path: &Path) -> Result<Manifest> {
    parse_manifest(&fs::read_to_string(path)?)
}

pub(crate) fn parse_manifest(text: &str) -> Result<Manifest> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hl, header) = lines.next().ok_or_else(|| Error::parse(1, "empty manifest"))?;
    let kv = parse_header(header, "almost", hl)?;
    let n = header_usize(&kv, "n", hl)?;
    let h = header_usize(&kv, "h", hl)?;
    let p_dims = parse_list(header_value(&kv, "grid", hl)?, "grid", hl)?;
    let m_parts = parse_list(header_value(&kv, "split", hl)?, "split", hl)?;
    let mode = ThresholdMode::parse(header_value(&kv, "threshold", hl)?)?;
    let kind = match header_value(&kv, "mode", hl)? {
        "explicit" => ManifestMode::Explicit,
        "implicit" => ManifestMode::Implicit,
        m => return Err(Error::parse(hl, format!("mode must be explicit or implicit, got {m:?}"))),
    };
    let mut manifest = Manifest {
        config: PipelineConfig {
            n,
            p_dims,
            m_parts,
            h,
            mode,
        },
        target: header_value(&kv, "target", hl)?.to_string(),
        mode: kind,
        factor_files: Vec::new(),
        refine_file: None,
        leftover: Vec::new(),
        tiles: Vec::new(),
    };
    for (l, line) in lines {
        let (head, body) = line
            .split_once(':')
            .ok_or_else(|| Error::parse(l, "expected `<key>: <values>`"))?;
        let masks = || body.split_whitespace().map(|t| parse_hex(t, l)).collect::<Result<Vec<_>>>();
        match head.trim() {
            "leftover" => manifest.leftover.extend(masks()?),
            "refine" => manifest.refine_file = Some(PathBuf::from(body.trim())),
            head => {
                if let Some(i) = head.strip_prefix("factor ") {
                    if i.trim().parse::<usize>().ok() != Some(manifest.factor_files.len() + 1) {
                        return Err(Error::parse(l, "factor numbers must run 1, 2, ..."));
                    }
                    manifest.factor_files.push(PathBuf::from(body.trim()));
                } else if let Some(i) = head.strip_prefix("tile ") {
                    if i.trim().parse::<usize>().ok() != Some(manifest.tiles.len()) {
                        return Err(Error::parse(l, "tile ids must be consecutive"));
                    }
                    manifest.tiles.push(masks()?);
                } else {
                    return Err(Error::parse(l, format!("unexpected line {line:?}")));
                }
            }
        }
    }
    Ok(manifest)
}

/// Rebuilds the partition from a manifest and its side files.
pub fn load_manifest(path: &Path) -> Result<(Manifest, Poset, AlmostPartition)> {
    let manifest = read_manifest(path)?;
    let dir = dir_of(path);
    let target = match manifest.target.strip_prefix('@') {
        Some(file) => parse_poset_text(&fs::read_to_string(dir.join(file))?)?,
        None => parse_poset_spec(&manifest.target)?,
    };
    let factors = manifest
        .factor_files
        .iter()
        .map(|f| ChainPartition::from_text(&fs::read_to_string(dir.join(f))?))
        .collect::<Result<Vec<_>>>()?;
    let refinement = match &manifest.refine_file {
        Some(f) => Refinement::Tiling(Tiling::from_text(&fs::read_to_string(dir.join(f))?)?),
        None => grid_refinement(&target, None)?.1,
    };
    let c = &manifest.config;
    let config = PipelineConfig::new(c.n, &c.p_dims, c.h, c.mode)?;
    if config.m_parts != c.m_parts {
        return Err(Error::invalid(format!(
            "split {:?} differs from the canonical {:?}",
            c.m_parts, config.m_parts
        )));
    }
    let ap = from_factors(&config, &target, refinement, factors)?;
    Ok((manifest, target, ap))
}

/// Re-certifies a manifest: factor chain partitions, the recorded leftover,
/// and then every stored tile (explicit) or sampled round trips (implicit).
pub fn verify_manifest(path: &Path, samples: u64, seed: u64) -> Result<Report> {
    let (manifest, target, ap) = load_manifest(path)?;
    let mut report = match manifest.mode {
        ManifestMode::Explicit => {
            let host = Host::Boolean(manifest.config.n);
            let tiling = Tiling {
                host,
                target: target.name().to_string(),
                tiles: manifest
                    .tiles
                    .iter()
                    .map(|t| t.iter().map(|&x| x as usize).collect())
                    .collect(),
                leftover: manifest.leftover.iter().map(|&x| x as usize).collect(),
            };
            let mut r = verify_tiling_exhaustive(&tiling, &target)?;
            if r.tiles as u128 != ap.tile_count() {
                r.flag(
                    ViolationKind::CountMismatch,
                    format!("{} tiles stored, the construction has {}", r.tiles, ap.tile_count()),
                );
            }
            r
        }
        ManifestMode::Implicit => verify_implicit_sampled(&ap, samples, seed),
    };
    for (i, cp) in ap.factors().iter().enumerate() {
        for v in verify_chain_partition(cp).violations {
            report.flag(v.kind, format!("factor {}: {}", i + 1, v.detail));
        }
    }
    if manifest.leftover != ap.leftover() {
        report.flag(
            ViolationKind::CountMismatch,
            format!(
                "{} leftover elements recorded, the construction leaves {}",
                manifest.leftover.len(),
                ap.leftover().len()
            ),
        );
    }
    Ok(report)
}
