//! Weight functions on copies of a poset: exact t-partitions of a cube and
//! (1 mod t)-partitions of `[2|P|]^(2d-1)`.
//!
//! ```bash
//! cargo run --release --example weak_partitions
//! ```

use poset_tiling::poset::{parse_poset_spec, Order, Poset};
use poset_tiling::weights::{
    find_t_partition, lift_to_blocks, one_mod_t_partition, realize_function, verify_weight_function,
    RealizabilityContext, WeightKind,
};

fn main() -> poset_tiling::Result<()> {
    for t in 1..=4 {
        let w = find_t_partition(&Poset::diamond(), 2, t)?;
        let r = verify_weight_function(&w, t, WeightKind::ExactT)?;
        println!("diamond in 2^[2], t={t}: {} copies with weight, {}", w.len(), pass(r.pass()));
    }
    match find_t_partition(&Poset::chain(3), 2, 2) {
        Ok(_) => println!("unexpected witness"),
        Err(e) => println!("chain:3 in 2^[2], t=2: {e}"),
    }

    // a t-partition of 2^[2] lifts to every 2x2 block of [8]^2, times [8]
    let w = lift_to_blocks(&find_t_partition(&Poset::diamond(), 2, 3)?, 1)?;
    let r = verify_weight_function(&w, 3, WeightKind::ExactT)?;
    println!("lifted to {}: {}", w.host.spec(), pass(r.pass()));

    for spec in ["chain:2", "chain:3", "grid:2x2"] {
        let p = parse_poset_spec(spec)?;
        for t in [2, 3, 5] {
            let (m, w) = one_mod_t_partition(&p, t)?;
            let r = verify_weight_function(&w, t, WeightKind::OneModT)?;
            println!("{spec} t={t}: (1 mod t)-partition of [{}]^{m}, {}", 2 * p.len(), pass(r.pass()));
        }
    }

    // realizability: any f with Σf ≡ 0 (mod t) is a weight profile mod t
    let ctx = RealizabilityContext::new(&Poset::diamond(), 3)?;
    let mut f = vec![0i64; ctx.q.size()];
    f[0] = 1;
    f[100] = 1;
    f[511] = 1;
    let w = realize_function(&f, &ctx)?;
    let weights = w.element_weights();
    println!(
        "realized I_0 + I_100 + I_511 mod 3 with {} copies: residues {} {} {} elsewhere-zero {}",
        w.len(),
        weights[0] % 3,
        weights[100] % 3,
        weights[511] % 3,
        weights.iter().enumerate().all(|(x, &v)| [0, 100, 511].contains(&x) || v % 3 == 0)
    );
    Ok(())
}

fn pass(ok: bool) -> &'static str {
    if ok {
        "verified"
    } else {
        "FAILED"
    }
}
