use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Report, ViolationKind};
use crate::error::Result;
use crate::poset::{Order, Poset};

/// Point queries over a tiling of `2^[n]` that is never materialized.
pub trait PointOracle {
    fn ground(&self) -> usize;
    fn target(&self) -> &Poset;
    fn tile_count(&self) -> u128;
    fn leftover_len(&self) -> u128;
    /// `(tile id, position in the target)`, or `None` for leftover.
    fn locate(&self, x: u128) -> Result<Option<(u128, usize)>>;
    /// Members of a tile in target element order.
    fn materialize_tile(&self, id: u128) -> Result<Vec<u128>>;
}

/// Round-trips random elements through the oracle: locate, materialize the
/// tile, check it is a copy of the target in the listed order, and locate
/// every member again. When `samples >= 2^n` every element is visited once
/// instead, and the leftover count must match exactly; otherwise leftover
/// hits must lie within five standard deviations of `|S|/2^n`.
///
/// Deterministic for a given seed. Oracle errors become violations.
pub fn verify_implicit_sampled(oracle: &impl PointOracle, samples: u64, seed: u64) -> Report {
    let n = oracle.ground();
    let p = oracle.target();
    let mut report = Report {
        tiles: oracle.tile_count().min(usize::MAX as u128) as usize,
        leftover: oracle.leftover_len().min(usize::MAX as u128) as usize,
        ..Report::default()
    };
    let exhaustive = n < 64 && samples >= 1u64 << n;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draws = if exhaustive { 1u64 << n } else { samples };
    let mut hits = 0u64;
    for s in 0..draws {
        let x = if exhaustive {
            s as u128
        } else if n == 128 {
            rng.gen::<u128>()
        } else {
            rng.gen::<u128>() & ((1u128 << n) - 1)
        };
        match check_point(oracle, p, x) {
            Ok(true) => {}
            Ok(false) => hits += 1,
            Err((kind, detail)) => report.flag(kind, detail),
        }
    }
    let total = if n == 128 { 2f64.powi(128) } else { (1u128 << n) as f64 };
    let rate = oracle.leftover_len() as f64 / total;
    let expected = draws as f64 * rate;
    let sigma = (draws as f64 * rate * (1.0 - rate)).sqrt();
    let plausible = if exhaustive {
        hits as u128 == oracle.leftover_len()
    } else {
        (hits as f64 - expected).abs() <= 5.0 * sigma + f64::EPSILON
    };
    if !plausible {
        report.flag(
            ViolationKind::LeftoverRate,
            format!("{hits} leftover hits in {draws} draws, expected {expected:.2} ± {sigma:.2}"),
        );
    }
    report.notes.push(format!("samples {draws}"));
    report.notes.push(format!("leftover-hits {hits}"));
    report.notes.push(format!("expected-leftover-hits {expected:.3}"));
    report.notes.push(format!("exhaustive {exhaustive}"));
    report
}

/// `Ok(false)` for a leftover element.
fn check_point(oracle: &impl PointOracle, p: &Poset, x: u128) -> std::result::Result<bool, (ViolationKind, String)> {
    let fail = |kind, msg: String| (kind, format!("at {x:#x}: {msg}"));
    let located = oracle
        .locate(x)
        .map_err(|e| fail(ViolationKind::Inconsistent, format!("locate failed: {e}")))?;
    let Some((id, pos)) = located else {
        return Ok(false);
    };
    let tile = oracle
        .materialize_tile(id)
        .map_err(|e| fail(ViolationKind::Inconsistent, format!("tile {id} failed to materialize: {e}")))?;
    if tile.len() != p.len() || pos >= tile.len() {
        return Err(fail(
            ViolationKind::NotACopy,
            format!("tile {id} has {} elements, position {pos}", tile.len()),
        ));
    }
    if tile[pos] != x {
        return Err(fail(
            ViolationKind::Inconsistent,
            format!("tile {id} holds {:#x} at position {pos}", tile[pos]),
        ));
    }
    for u in 0..tile.len() {
        for v in 0..tile.len() {
            if p.leq(u, v) != (tile[u] & !tile[v] == 0) {
                return Err(fail(ViolationKind::NotACopy, format!("tile {id} breaks the order at ({u},{v})")));
            }
        }
    }
    for (k, &y) in tile.iter().enumerate() {
        match oracle.locate(y) {
            Ok(Some(back)) if back == (id, k) => {}
            other => {
                return Err(fail(
                    ViolationKind::Inconsistent,
                    format!("member {y:#x} of tile {id} locates to {other:?}"),
                ))
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    /// `2^[n]` as pairs `{A, A ∪ {1}}`, optionally with the pair holding
    /// `bad` mislocated.
    struct Pairs {
        n: usize,
        p: Poset,
        bad: Option<u128>,
    }

    impl PointOracle for Pairs {
        fn ground(&self) -> usize {
            self.n
        }
        fn target(&self) -> &Poset {
            &self.p
        }
        fn tile_count(&self) -> u128 {
            1 << (self.n - 1)
        }
        fn leftover_len(&self) -> u128 {
            0
        }
        fn locate(&self, x: u128) -> Result<Option<(u128, usize)>> {
            if x >> self.n != 0 {
                return Err(Error::InvalidInput("out of range".into()));
            }
            let id = if Some(x) == self.bad { (x >> 1) ^ 1 } else { x >> 1 };
            Ok(Some((id, (x & 1) as usize)))
        }
        fn materialize_tile(&self, id: u128) -> Result<Vec<u128>> {
            Ok(vec![id << 1, id << 1 | 1])
        }
    }

    #[test]
    fn pairs_pass_and_faults_are_caught() {
        let good = Pairs {
            n: 20,
            p: Poset::chain(2),
            bad: None,
        };
        let r = verify_implicit_sampled(&good, 1000, 7);
        assert!(r.pass(), "{r}");
        assert_eq!(r, verify_implicit_sampled(&good, 1000, 7));
        let small = Pairs { n: 6, ..good };
        let r = verify_implicit_sampled(&small, 1 << 20, 0);
        assert!(r.pass() && r.notes.contains(&"exhaustive true".to_string()));
        let faulty = Pairs { bad: Some(5), ..small };
        let r = verify_implicit_sampled(&faulty, 64, 0);
        assert!(r.has(ViolationKind::Inconsistent));
    }
}
