//! Stability for large sum-free sets in type-I groups: any sum-free set
//! with more than n(p+2)/(3(p+1)) elements lives inside the middle band of
//! a homomorphism onto Z_p.
//!
//! Run with: `cargo run --example stability_cover`

use sumfree_census::sumfree::{is_sum_free, stability_cover};
use sumfree_census::{ElementSet, GroupSpec};

fn main() -> sumfree_census::Result<()> {
    // Z50 in primary form is Z2*Z25: type I(2), p = 2, band residue {1} mod 2
    let g = GroupSpec::parse("Z50")?;
    println!("group {g}: type {}, mu = {}", g.classify(), g.mu());

    // the odd residue class is the canonical largest sum-free set
    let odds = ElementSet::from_predicate(g.clone(), |e| e.residues()[0] % 2 == 1);
    assert!(is_sum_free(&odds));
    let cover = stability_cover(&odds)?.expect("large sum-free sets are covered");
    println!(
        "S = all odd elements (|S| = {}): covered by a homomorphism onto Z{}",
        odds.len(),
        cover.modulus()
    );

    // a large sum-free subset of the band is still covered
    let partial = ElementSet::from_predicate(g.clone(), |e| {
        e.residues()[0] % 2 == 1 && e.residues() != [1, 0]
    });
    println!(
        "|S'| = {} > threshold: cover found: {}",
        partial.len(),
        stability_cover(&partial)?.is_some()
    );

    // small sum-free sets carry no structure and are rejected up front
    let tiny = ElementSet::from_predicate(g.clone(), |e| e.residues() == [1, 0]);
    println!(
        "|S''| = {}: below the stability threshold: {}",
        tiny.len(),
        stability_cover(&tiny).is_err()
    );
    Ok(())
}
