//! Tiling `[ab]x[c]` by `c` copies of `[a]x[b]`, and locating a point's
//! tile without materializing the tiling.
//!
//! ```bash
//! cargo run --example rectangle_tiling
//! ```

use poset_tiling::grid::{rect_tile_lookup, tile_rectangle, RectParams, ThresholdMode};
use poset_tiling::poset::Poset;
use poset_tiling::verify::verify_tiling_exhaustive;

fn main() -> poset_tiling::Result<()> {
    let (a, b, c) = (2, 2, 13);
    let tiling = tile_rectangle(a, b, c, ThresholdMode::Strict)?;
    let report = verify_tiling_exhaustive(&tiling, &Poset::grid(&[a, b])?)?;
    println!("{} by grid:{a}x{b}:\n{report}", tiling.host.spec());

    // draw the tiling as letters, top row first
    let table = tiling.lookup_table();
    for x in (0..a * b).rev() {
        let row: String = (0..c)
            .map(|y| (b'a' + (table[x * c + y].0 % 26) as u8) as char)
            .collect();
        println!("  {row}");
    }

    let params = RectParams::new(a, b, c, ThresholdMode::Strict)?;
    for point in [(1, 1), (3, 7), (4, 13)] {
        let (tile, pos) = rect_tile_lookup(point, &params)?;
        println!("{point:?} is element {pos} of tile {tile}");
    }

    // precise mode accepts more widths than the a²b + 2a threshold
    for c in [6, 9, 11] {
        match tile_rectangle(4, 1, c, ThresholdMode::Precise) {
            Ok(t) => println!("[4]x[{c}]: {} tiles", t.tiles.len()),
            Err(e) => println!("[4]x[{c}]: {e}"),
        }
    }
    Ok(())
}
