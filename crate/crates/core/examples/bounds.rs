//! Leftover bounds and the threshold constant as exact integers.
//!
//! ```bash
//! cargo run --example bounds
//! ```

use poset_tiling::pipeline::{pipeline_leftover_bound, theoretical_bounds};
use poset_tiling::poset::Poset;

fn main() -> poset_tiling::Result<()> {
    for (p, d, n0) in [(Poset::diamond(), 2, 1), (Poset::chain(2), 1, 10), (Poset::boolean(3)?, 3, 64)] {
        println!("{}:", p.name());
        print!("{}", theoretical_bounds(&p, d, n0)?);
    }
    for (h, d) in [(3, 1), (4, 2), (192, 2)] {
        println!("chains of size {h} in {d} factors leave at most {}", pipeline_leftover_bound(h, d));
    }
    Ok(())
}
