//! Link graph of a generator set on the odd coset of a cyclic group:
//! typed edges, per-vertex degree identities, the edge-count lower bound,
//! and DOT export.
//!
//! Run with: `cargo run --example link_graph_dot`

use sumfree_census::linkgraph::{
    build_link_graph, canonical_odd_coset, edge_lower_bound, verify_degree_claim, EdgeType,
};
use sumfree_census::{ElementSet, GroupSpec};

fn main() -> sumfree_census::Result<()> {
    let g = GroupSpec::parse("Z10")?;
    // residue 2 of cyclic Z10 in primary form Z2*Z5 is the element (0, 2)
    let s = g.element(&[0, 2])?;
    let gens = ElementSet::from_elements(g.clone(), [&s]);
    let base = canonical_odd_coset(&g)?;
    let l = build_link_graph(&gens, &base);

    println!(
        "L_S[B] over {g} with S = {gens}, B = {base}: {} vertices, {} type-1 edges, {} type-2 edges, {} loops",
        l.vertex_count(),
        l.edge_count_of_type(EdgeType::One),
        l.edge_count_of_type(EdgeType::Two),
        l.loop_count()
    );

    let degrees = verify_degree_claim(&l)?;
    println!("degree identities hold: {}", degrees.all_ok());
    for check in &degrees.vertices {
        println!(
            "  vertex {}: d1 = {}, d2 = {}, equality expected = {}",
            check.vertex, check.d1, check.d2, check.equality_expected
        );
    }

    let bound = edge_lower_bound(&l)?;
    println!(
        "edge bound: 2e = {} >= {} (holds: {})",
        bound.edges_times_two, bound.bound_times_two, bound.holds
    );

    println!("\nDOT output:\n{}", l.to_dot());
    Ok(())
}
