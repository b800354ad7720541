//! Partitioning `2^[n]` into chains of equal size `h`, the first of size
//! `h + (2^n mod h)`, and what makes some `(n, h)` impossible.
//!
//! ```bash
//! cargo run --release --example chain_partition
//! ```

use std::time::Instant;

use poset_tiling::chains::{chain_partition_counts, symmetric_chain_decomposition, uniform_chain_partition};
use poset_tiling::verify::verify_chain_partition;

fn main() -> poset_tiling::Result<()> {
    let scd = symmetric_chain_decomposition(4)?;
    println!("symmetric chains of 2^[4]: {} chains, sizes {:?}", scd.len(), scd.iter().map(Vec::len).collect::<Vec<_>>());

    for (n, h) in [(3, 2), (4, 2), (9, 3), (10, 4), (12, 5), (16, 4), (8, 4), (9, 8), (16, 16)] {
        let start = Instant::now();
        match uniform_chain_partition(n, h) {
            Ok(cp) => {
                let r = verify_chain_partition(&cp);
                println!(
                    "({n:>2},{h:>2}): {} chains, |C_1| = {}, {} in {:.2?}",
                    cp.len(),
                    cp.first_len(),
                    if r.pass() { "verified" } else { "FAILED" },
                    start.elapsed()
                );
            }
            Err(e) => match chain_partition_counts(n, h) {
                Ok((c1, r)) => println!("({n:>2},{h:>2}): |C_1|={c1}, r={r}, but {e}"),
                Err(_) => println!("({n:>2},{h:>2}): {e}"),
            },
        }
    }

    let cp = uniform_chain_partition(9, 3)?;
    let (chain, pos) = cp.chain_of_mask(0b1_0110_0101)?;
    let masks: Vec<String> = cp.chain(chain).iter().map(|m| format!("{m:#x}")).collect();
    println!("\n{{1,3,6,7,9}} is element {pos} of chain {chain}: {}", masks.join(" "));
    Ok(())
}
