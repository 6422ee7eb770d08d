//! Acceptance gate: twelve numbered criteria, each reported as a single
//! pass/fail line on stdout (visible with `--nocapture`) and enforced with
//! an assertion.
//!
//! Expensive suites shared by several criteria run exactly once per test
//! process behind `OnceLock`.

use std::sync::OnceLock;

use sumfree_census::census::{
    enumerate_groups_of_order, verify_bounds, verify_claims3, verify_msf_oracles,
    verify_partitions, verify_prop14, verify_prop31, verify_section4, VerifyReport,
};
use sumfree_census::Caps;

const SEED: u64 = 0;

fn line(criterion: u32, what: &str, pass: bool) {
    println!(
        "criterion {criterion:02} [{}] {what}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {criterion} failed: {what}");
}

fn check(report: &VerifyReport, label_fragment: &str) -> bool {
    let found = report
        .checks
        .iter()
        .filter(|c| c.label.contains(label_fragment))
        .collect::<Vec<_>>();
    assert!(
        !found.is_empty(),
        "no check labeled like {label_fragment:?} in suite {}",
        report.name
    );
    found.iter().all(|c| c.pass)
}

fn oracle_report() -> &'static VerifyReport {
    static R: OnceLock<VerifyReport> = OnceLock::new();
    R.get_or_init(|| verify_msf_oracles(24, 16).expect("oracle suite runs"))
}

fn bounds_report() -> &'static VerifyReport {
    static R: OnceLock<VerifyReport> = OnceLock::new();
    R.get_or_init(|| verify_bounds(SEED, 7, 1000).expect("bounds suite runs"))
}

fn claims3_report() -> &'static VerifyReport {
    static R: OnceLock<VerifyReport> = OnceLock::new();
    R.get_or_init(|| verify_claims3(SEED).expect("claims3 suite runs"))
}

#[test]
fn criterion_01_mu_formula_vs_bruteforce() {
    line(
        1,
        "largest sum-free cardinality formula matches brute force for every group of order <= 24",
        check(oracle_report(), "mu formula"),
    );
}

#[test]
fn criterion_02_msf_enumerator_vs_subset_oracle() {
    line(
        2,
        "maximal sum-free enumeration matches the all-subsets oracle for every group of order <= 16",
        check(oracle_report(), "maximal sum-free enumeration"),
    );
}

#[test]
fn criterion_03_triangle_lower_bound_construction() {
    let caps = Caps::default();
    let mut pass = true;
    for n in (9..=45u64).step_by(9) {
        for g in enumerate_groups_of_order(n).expect("orders enumerate") {
            let report = verify_prop14(&g, &caps).expect("construction applies");
            if !report.passed() {
                eprintln!("{}", report.render_text());
                pass = false;
            }
        }
    }
    line(
        3,
        "triangle construction yields 3^(n/9) extendable maximal independent sets for all 9 | n <= 45",
        pass,
    );
}

#[test]
fn criterion_04_mis_engine_vs_naive() {
    let r = bounds_report();
    line(
        4,
        "MIS engine matches the exhaustive oracle on all graphs with <= 7 vertices and 1000 random graphs with <= 14",
        check(r, "exhaustive oracle equivalence") && check(r, "match the naive oracle"),
    );
}

#[test]
fn criterion_05_bound_stack_holds() {
    let r = bounds_report();
    line(
        5,
        "every applicable counting bound holds on the criterion-4 graphs and is tight on the extremal families",
        check(r, "every applicable bound holds on every exhaustive graph")
            && check(r, "every applicable bound holds on the random graphs")
            && check(r, "tight families"),
    );
}

#[test]
fn criterion_06_deletion_recursion() {
    line(
        6,
        "mis(G) <= mis(G - v) + mis(G - N[v]) on 1000 seeded (graph, vertex) pairs",
        check(bounds_report(), "deletion recursion"),
    );
}

#[test]
fn criterion_07_link_graph_claims() {
    let r = claims3_report();
    line(
        7,
        "degree identities, edge lower bound and triangle hitting sets on 100 seeded instances of order <= 64",
        check(r, "degree identities") && check(r, "edge lower bound") && check(r, "hitting sets"),
    );
}

#[test]
fn criterion_08_order3_triangle_decomposition() {
    line(
        8,
        "order-3 generators decompose the link graph into |B|/3 triangles for every even order <= 36",
        check(claims3_report(), "triangle decomposition"),
    );
}

#[test]
fn criterion_09_structured_base_sets() {
    let report = verify_section4(6, SEED).expect("section4 suite runs");
    if !report.passed() {
        eprintln!("{}", report.render_text());
    }
    line(
        9,
        "regularity and degree formulas for the Z2^t*Z4 (t <= 6) and Z5+H (|H| in {3,7,9}) base sets",
        report.passed(),
    );
}

#[test]
fn criterion_10_partition_machinery() {
    let report = verify_partitions(200).expect("partition suite runs");
    if !report.passed() {
        eprintln!("{}", report.render_text());
    }
    line(
        10,
        "p(n) oracle agreement for n <= 200 and asymptotic-estimate ratio inside (1.0, 1.15) for 50 <= n <= 200",
        report.passed(),
    );
}

#[test]
fn criterion_11_stability_cover() {
    line(
        11,
        "every large sum-free subset of a type-I group of order <= 60 is covered by a cyclic homomorphism band (200 seeded samples)",
        check(claims3_report(), "stability cover"),
    );
}

#[test]
fn criterion_12_square_root_fraction() {
    let report = verify_prop31(20, 0.01).expect("prop31 suite runs");
    if !report.passed() {
        eprintln!("{}", report.render_text());
    }
    line(
        12,
        "both routes for the fraction of groups with 2^r > 0.01 n agree for n = 2^a, a <= 20",
        report.passed(),
    );
}
