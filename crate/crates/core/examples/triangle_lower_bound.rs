//! The lower-bound construction for orders divisible by 9: a base set and
//! an order-3 generator whose link graph is a disjoint union of triangles,
//! so the group has at least 3^(n/9) maximal sum-free sets.
//!
//! Run with: `cargo run --example triangle_lower_bound`

use sumfree_census::census::{prop14_construction, verify_prop14};
use sumfree_census::linkgraph::build_link_graph;
use sumfree_census::sumfree::{extend_to_maximal, is_maximal_sum_free};
use sumfree_census::{Caps, ElementSet, GroupSpec};

fn main() -> sumfree_census::Result<()> {
    let g = GroupSpec::parse("Z2*Z9")?;
    let (base, s) = prop14_construction(&g)?;
    println!("{g}: base B = {base}, generator s = {s}");

    let gens = ElementSet::from_elements(g.clone(), [&s]);
    let l = build_link_graph(&gens, &base);
    println!(
        "link graph: {} vertices, {} triangles, {} maximal independent sets",
        l.vertex_count(),
        l.triangles().len(),
        l.to_simple_graph().count_mis()?
    );

    // each maximal independent set extends I u {s} to a maximal sum-free set
    let simple = l.to_simple_graph();
    let mut shown = 0;
    simple.for_each_mis(|set| {
        if shown >= 3 {
            return;
        }
        let mut msf = gens.clone();
        for &v in set {
            msf.insert(l.vertex_element_index(v));
        }
        let maximal = extend_to_maximal(&msf);
        println!(
            "  I u {{s}} = {msf} extends to {maximal} (maximal: {})",
            is_maximal_sum_free(&maximal)
        );
        shown += 1;
    })?;

    // full verification across every group with 9 | n <= 27
    println!();
    let caps = Caps::default();
    for n in [9u64, 18, 27] {
        for g in sumfree_census::census::enumerate_groups_of_order(n)? {
            let report = verify_prop14(&g, &caps)?;
            println!("{g}: verification {}", if report.passed() { "PASS" } else { "FAIL" });
        }
    }
    Ok(())
}
