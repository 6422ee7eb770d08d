//! Exact maximal-independent-set counting on named graph families, plus
//! the full counting-bound report for the Petersen graph.
//!
//! Run with: `cargo run --example count_mis`

use sumfree_census::bounds::check_bounds;
use sumfree_census::mis::{disjoint_k4, disjoint_triangles, perfect_matching, petersen};

fn main() -> sumfree_census::Result<()> {
    for m in 1..=5u32 {
        println!(
            "{} disjoint triangles: {} maximal independent sets (3^{m})",
            m,
            disjoint_triangles(m as usize).count_mis()?
        );
    }
    println!(
        "perfect matching on 16 vertices: {} (2^8)",
        perfect_matching(8).count_mis()?
    );
    println!(
        "4 disjoint K4s: {} (4^4)",
        disjoint_k4(4).count_mis()?
    );

    let p = petersen();
    println!("\nPetersen graph: {} maximal independent sets", p.count_mis()?);
    let report = check_bounds(&p, None)?;
    println!("exact log2 = {:.4}", report.exact_log2);
    for e in &report.entries {
        println!(
            "  {:<16} applicable = {:<5} value_log2 = {:<10} holds = {}",
            e.name,
            e.applicable,
            e.value_log2
                .map(|v| format!("{v:.4}"))
                .unwrap_or_else(|| "-".into()),
            e.holds
        );
    }
    Ok(())
}
