//! Tiling a d-dimensional grid by copies of a smaller grid.
//!
//! ```bash
//! cargo run --example grid_tiling
//! ```

use poset_tiling::grid::{slab_divisor, tile_grid, ThresholdMode};
use poset_tiling::poset::Poset;
use poset_tiling::verify::verify_tiling_exhaustive;

fn main() -> poset_tiling::Result<()> {
    let cases: [(&[usize], &[usize]); 4] = [
        (&[12, 16], &[2, 2]),
        (&[16, 12], &[2, 2]),
        (&[8, 40, 40], &[2, 2, 2]),
        (&[6, 10], &[2, 3]),
    ];
    for (host, p) in cases {
        let divisor = slab_divisor(p, ThresholdMode::Precise);
        let t = tile_grid(host, p, ThresholdMode::Precise)?;
        let r = verify_tiling_exhaustive(&t, &Poset::grid(p)?)?;
        println!(
            "{} by grid {:?} (slab divisor {divisor}): {} tiles, {}",
            t.host.spec(),
            p,
            r.tiles,
            if r.pass() { "verified" } else { "FAILED" }
        );
    }

    // strict mode wants a side divisible by 2|P| = 8 and every side >= 12|P|²
    match tile_grid(&[12, 12], &[2, 2], ThresholdMode::Strict) {
        Ok(_) => println!("unexpected tiling"),
        Err(e) => println!("[12]x[12] strict: {e}"),
    }
    Ok(())
}
