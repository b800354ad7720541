//! The exact-cover search as an independent tiling oracle.
//!
//! ```bash
//! cargo run --release --example exact_cover_oracle
//! ```

use poset_tiling::grid::{tile_rectangle, ThresholdMode};
use poset_tiling::poset::{GridPoset, Poset};
use poset_tiling::tiling::Host;
use poset_tiling::verify::{
    confirm_tiling_by_exact_cover, exact_cover_tiling_search, exact_cover_tiling_search_with, ExactCoverOptions,
};

fn main() -> poset_tiling::Result<()> {
    let t = exact_cover_tiling_search(&Host::Boolean(2), &Poset::diamond())?;
    println!("2^[2] by the diamond: {:?}", t.tiles);
    let t = exact_cover_tiling_search(&Host::Grid(GridPoset::new(&[6])?), &Poset::chain(2))?;
    println!("[6] by chain:2: {:?}", t.tiles);
    let t = exact_cover_tiling_search(&Host::Boolean(4), &Poset::chain(2))?;
    println!("2^[4] by chain:2: {} comparable pairs", t.tiles.len());

    // a certificate that no tiling exists
    match exact_cover_tiling_search(&Host::Grid(GridPoset::new(&[3, 4])?), &Poset::s2k(2)?) {
        Ok(t) => println!("[3]x[4] by s2k:2: {} tiles", t.tiles.len()),
        Err(e) => println!("[3]x[4] by s2k:2: {e}"),
    }

    // the leftover allowance defaults to |host| mod |P|
    let t = exact_cover_tiling_search(&Host::Grid(GridPoset::new(&[3, 3])?), &Poset::chain(4))?;
    println!("[3]x[3] by chain:4: tiles {:?}, leftover {:?}", t.tiles, t.leftover);
    let opts = ExactCoverOptions {
        leftover: Some(0),
        ..ExactCoverOptions::default()
    };
    match exact_cover_tiling_search_with(&Host::Grid(GridPoset::new(&[2, 2])?), &Poset::antichain(2), opts) {
        Ok(t) => println!("[2]x[2] by antichain:2: {:?}", t.tiles),
        Err(e) => println!("[2]x[2] by antichain:2 without leftover: {e}"),
    }

    // confirm a constructive tiling whose host is too big to search freely
    let rect = tile_rectangle(4, 3, 60, ThresholdMode::Strict)?;
    let r = confirm_tiling_by_exact_cover(&rect, &Poset::grid(&[4, 3])?)?;
    println!("{} confirmed: {}", rect.host.spec(), r.pass());
    for note in &r.notes {
        println!("  {note}");
    }
    Ok(())
}
