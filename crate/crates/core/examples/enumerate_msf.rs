//! Exact enumeration of maximal sum-free sets, with witnesses, checked
//! against the all-subsets oracle on a small group.
//!
//! Run with: `cargo run --example enumerate_msf`

use sumfree_census::sumfree::{enumerate_maximal_sumfree, maximal_sumfree_naive};
use sumfree_census::GroupSpec;

fn main() -> sumfree_census::Result<()> {
    let g = GroupSpec::parse("Z13")?;
    let report = enumerate_maximal_sumfree(&g, true, 30)?;
    println!(
        "{g} has {} maximal sum-free sets (found in {:?}):",
        report.count, report.elapsed
    );
    for s in report.witnesses.as_deref().unwrap_or_default() {
        println!("  {s}");
    }

    let naive = maximal_sumfree_naive(&g)?;
    println!("all-subsets oracle agrees: {}", naive == report.count);

    // counts across a few groups
    println!();
    for spec in ["Z9", "Z3^2", "Z2*Z8", "Z16", "Z2*Z3*Z3"] {
        let g = GroupSpec::parse(spec)?;
        let r = enumerate_maximal_sumfree(&g, false, 30)?;
        println!("{g}: {} maximal sum-free sets", r.count);
    }
    Ok(())
}
