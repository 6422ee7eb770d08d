//! Census of every abelian group of order up to 20: classification, the
//! largest sum-free cardinality, the exact number of maximal sum-free
//! sets, and the comparison exponents.
//!
//! Run with: `cargo run --example census_walk`

use sumfree_census::census::{census, census_csv};
use sumfree_census::Caps;

fn main() -> sumfree_census::Result<()> {
    let caps = Caps::default();
    let rows = census(1..=20, &caps)?;
    print!("{}", census_csv(&rows));

    let below_third = rows
        .iter()
        .filter(|r| r.ineq_third == Some(true))
        .count();
    println!(
        "\n{} of {} groups already satisfy log2 fmax <= (mu/3) log2 3 at these sizes",
        below_third,
        rows.len()
    );
    Ok(())
}
