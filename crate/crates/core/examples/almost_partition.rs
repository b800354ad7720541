//! Almost-partitioning `2^[n]` into copies of a grid, explicitly at small
//! `n` and as a point-query oracle at `n = 32`.
//!
//! ```bash
//! cargo run --release --example almost_partition
//! ```

use std::time::Instant;

use poset_tiling::pipeline::{almost_partition_into_grid, plan_pipeline, pipeline_leftover_bound, PipelineConfig};
use poset_tiling::grid::ThresholdMode;
use poset_tiling::verify::{verify_implicit_sampled, verify_tiling_exhaustive};

fn main() -> poset_tiling::Result<()> {
    for dims in [vec![3], vec![4]] {
        let config = plan_pipeline(9, &dims, ThresholdMode::Precise)?;
        let ap = almost_partition_into_grid(&config)?;
        let r = verify_tiling_exhaustive(&ap.to_tiling()?, ap.target())?;
        println!(
            "n=9 into {}: h={}, {} tiles, |S|={} (bound {}), {}",
            ap.target().name(),
            config.h,
            r.tiles,
            ap.leftover().len(),
            pipeline_leftover_bound(config.h, 1),
            if r.pass() { "verified" } else { "FAILED" }
        );
    }

    // pinned chain sizes are checked up front
    if let Err(e) = PipelineConfig::new(9, &[3], 6, ThresholdMode::Precise) {
        println!("n=9, h=6: {e}");
    }

    let start = Instant::now();
    let config = plan_pipeline(32, &[2, 2], ThresholdMode::Precise)?;
    let ap = almost_partition_into_grid(&config)?;
    println!(
        "\nn=32 into grid:2x2: split {:?}, h={}, {} tiles, |S|={}, built in {:.2?}",
        config.m_parts,
        config.h,
        ap.tile_count(),
        ap.leftover().len(),
        start.elapsed()
    );
    let x: u128 = 0xdead_beef;
    if let Some((id, pos)) = ap.locate(x)? {
        let tile = ap.materialize_tile(id)?;
        println!("{x:#x} is element {pos} of tile {id}: {tile:x?}");
    }
    let start = Instant::now();
    let r = verify_implicit_sampled(&ap, 100_000, 32);
    println!("10^5 sampled round trips: {} in {:.2?}", if r.pass() { "consistent" } else { "INCONSISTENT" }, start.elapsed());
    Ok(())
}
