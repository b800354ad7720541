//! Building posets, reading the shorthand grammar, and finding copies.
//!
//! ```bash
//! cargo run --example poset_basics
//! ```

use poset_tiling::poset::{enumerate_copies, is_copy, minimal_cube_dim, parse_poset_spec, poset_to_text, GridPoset, Poset};

fn main() -> poset_tiling::Result<()> {
    for spec in ["chain:4", "antichain:3", "grid:2x3", "boolean:3", "s2k:2", "diamond"] {
        let p = parse_poset_spec(spec)?;
        println!(
            "{spec:>12}: {} elements, {} strict relations, unique max/min: {}",
            p.len(),
            p.strict_relation_count(),
            p.has_unique_max_min()
        );
    }

    // a V shape, written in the file format
    let vee = Poset::from_relations("vee", 3, &[(0, 1), (0, 2)])?;
    print!("\n{}", poset_to_text(&vee));

    // copies of the diamond in the grid [3]x[3]
    let host = GridPoset::new(&[3, 3])?;
    let copies = enumerate_copies(&host, &Poset::diamond())?;
    println!("\n[3]x[3] holds {} copies of the diamond, e.g. {:?}", copies.len(), copies[0]);
    println!("{{0,1,3,4}} is a copy: {}", is_copy(&[0, 1, 3, 4], &host, &Poset::diamond())?);
    println!("{{0,1,2,4}} is a copy: {}", is_copy(&[0, 1, 2, 4], &host, &Poset::diamond())?);

    for p in [Poset::chain(3), Poset::diamond(), Poset::s2k(2)?] {
        let cube = minimal_cube_dim(&p)?;
        println!("{} embeds in 2^[{}] as masks {:?}", p.name(), cube.d, cube.masks);
    }
    Ok(())
}
