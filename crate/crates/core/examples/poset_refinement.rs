//! Almost-partitions into a non-grid poset, through a tiling of a grid by
//! copies of it.
//!
//! ```bash
//! cargo run --release --example poset_refinement
//! ```

use poset_tiling::grid::ThresholdMode;
use poset_tiling::pipeline::{almost_partition_into_poset, grid_refinement, Refinement};
use poset_tiling::poset::Poset;
use poset_tiling::verify::verify_tiling_exhaustive;

fn main() -> poset_tiling::Result<()> {
    // a two-element chain under another name is refined through [4]
    let pair = Poset::from_relations("pair", 2, &[(0, 1)])?;
    for p in [Poset::diamond(), pair.clone()] {
        let (dims, refinement) = grid_refinement(&p, None)?;
        let how = match &refinement {
            Refinement::Identity { .. } => "is itself a grid".to_string(),
            Refinement::Tiling(t) => format!("tiles {} by exact cover", t.host.spec()),
        };
        println!("{}: {how} {dims:?}", p.name());
    }

    let ap = almost_partition_into_poset(11, &pair, None, ThresholdMode::Precise)?;
    let r = verify_tiling_exhaustive(&ap.to_tiling()?, &pair)?;
    println!("2^[11] into pairs: {} tiles, |S|={}, {}", r.tiles, ap.leftover().len(), if r.pass() { "verified" } else { "FAILED" });

    // a bowtie with no unique minimum is refused
    let vee_up = Poset::from_relations("wedge", 3, &[(0, 2), (1, 2)])?;
    match grid_refinement(&vee_up, None) {
        Ok(_) => println!("unexpected"),
        Err(e) => println!("{e}"),
    }

    // M3 has unique extremes, but no tiling of [10] or [10]x[10] is in reach
    let m3 = Poset::from_relations("m3", 5, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)])?;
    match grid_refinement(&m3, None) {
        Ok(_) => println!("m3 refined"),
        Err(e) => println!("{e}"),
    }
    Ok(())
}
