//! Tour of the group layer: parsing, classification, the largest sum-free
//! cardinality, element arithmetic, square roots, and homomorphisms.
//!
//! Run with: `cargo run --example group_tour`

use sumfree_census::GroupSpec;

fn main() -> sumfree_census::Result<()> {
    for spec in ["Z8", "Z2*Z9", "Z3^2", "Z5*Z7", "Z2^2*Z4"] {
        let g = GroupSpec::parse(spec)?;
        println!(
            "{g}: n = {}, type {}, mu = {}, exponent = {}, 2-rank = {}",
            g.order(),
            g.classify(),
            g.mu(),
            g.exponent(),
            g.two_rank()
        );
    }

    // element arithmetic in Z2*Z9
    let g = GroupSpec::parse("Z2*Z9")?;
    let a = g.element(&[1, 4])?;
    let b = g.element(&[0, 7])?;
    println!("\nin {g}: {a} + {b} = {}, -{a} = {}", g.add(&a, &b), g.neg(&a));
    println!("order of {a} is {}", g.element_order(&a));

    // solutions of 2x = c: at most 2^(2-rank) many
    let g = GroupSpec::parse("Z2^2*Z4")?;
    let c = g.element(&[0, 0, 2])?;
    let roots = g.solve_double(&c);
    println!("\nin {g}: 2x = {c} has {} solutions: {roots}", roots.len());

    // homomorphisms to Z5
    let g = GroupSpec::parse("Z5*Z7")?;
    let homs = g.homs_to_cyclic(5);
    println!("\n{g} has {} homomorphisms to Z5", homs.len());
    Ok(())
}
