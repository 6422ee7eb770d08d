//! Census orchestration: enumerate all abelian groups of an order, tabulate
//! exact maximal sum-free counts against the reference inequalities, and run
//! the named verification suites exposed by the command-line tool.
//!
//! The asymptotic inequalities (`2^{mu/2}`, `3^{mu/3}`) are reported as
//! indicator columns at finite sizes and never asserted: they are statements
//! about sufficiently large groups. Every `verify_*` function, by contrast,
//! checks exact finite facts and reports structured pass/fail results.

use std::fmt::Write as _;
use std::ops::RangeInclusive;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{check_bounds, log2_biguint, LOG2_SLACK};
use crate::config::Caps;
use crate::error::{Error, Result};
use crate::group::{factor, GroupSpec, GroupType};
use crate::linkgraph::{
    build_link_graph, canonical_odd_coset, decompose_case1, edge_lower_bound, triangle_hitting_set,
    verify_degree_claim, EdgeType,
};
use crate::mis::{self, SimpleGraph};
use crate::partition::{partition_count, partition_counts_by_parts, partitions_of};
use crate::set::ElementSet;
use crate::sumfree::{
    enumerate_maximal_sumfree, extend_to_maximal, is_maximal_sum_free, is_sum_free,
    maximal_sumfree_naive, stability_cover,
};

const LOG2_3: f64 = 1.584_962_500_721_156_2;

/// All isomorphism classes of abelian groups of order `n`, in canonical
/// form, sorted. The count always equals the partition-product formula.
pub fn enumerate_groups_of_order(n: u64) -> Result<Vec<GroupSpec>> {
    if n == 0 {
        return Err(Error::Precondition("group order must be positive".into()));
    }
    if n == 1 {
        return Ok(vec![GroupSpec::trivial()]);
    }
    let mut partial: Vec<Vec<u64>> = vec![Vec::new()];
    for (p, a) in factor(n) {
        let mut next = Vec::new();
        for parts in partitions_of(a as u64) {
            for stem in &partial {
                let mut comps = stem.clone();
                comps.extend(parts.iter().map(|&e| p.pow(e as u32)));
                next.push(comps);
            }
        }
        partial = next;
    }
    let mut out = partial
        .iter()
        .map(|c| GroupSpec::from_components(c))
        .collect::<Result<Vec<_>>>()?;
    out.sort();
    Ok(out)
}

fn ser_biguint<S: serde::Serializer>(x: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

fn ser_opt_biguint<S: serde::Serializer>(
    x: &Option<BigUint>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.serialize_some(&v.to_string()),
        None => s.serialize_none(),
    }
}

fn ser_type<S: serde::Serializer>(t: &GroupType, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&t.to_string())
}

/// One group's worth of census output.
#[derive(Clone, Debug, Serialize)]
pub struct CensusRow {
    /// Canonical spec string, e.g. `Z2^2*Z3`.
    pub group: String,
    pub n: u64,
    #[serde(rename = "type", serialize_with = "ser_type")]
    pub group_type: GroupType,
    pub mu: u64,
    /// Exact count of maximal sum-free sets; absent above the cap.
    #[serde(serialize_with = "ser_opt_biguint")]
    pub fmax: Option<BigUint>,
    /// `log2(fmax) / mu`, the quantity the asymptotic statements bound.
    pub log2_fmax_over_mu: Option<f64>,
    /// `mu / 2`, the even-order comparison exponent.
    pub bound_half: f64,
    /// `(mu / 3) log2 3`, the general comparison exponent.
    pub bound_third: f64,
    /// Indicator: `log2 fmax <= mu/2` at this finite size. Never asserted.
    pub ineq_half: Option<bool>,
    /// Indicator: `log2 fmax <= (mu/3) log2 3` at this finite size.
    pub ineq_third: Option<bool>,
}

fn census_row(g: &GroupSpec, caps: &Caps) -> CensusRow {
    let n = g.order();
    let mu = g.mu();
    let fmax = if n <= caps.fmax {
        enumerate_maximal_sumfree(g, false, caps.fmax)
            .ok()
            .map(|r| r.count)
    } else {
        None
    };
    let log2_fmax = fmax.as_ref().map(log2_biguint);
    let log2_fmax_over_mu = match (log2_fmax, mu) {
        (Some(l), m) if m > 0 => Some(l / m as f64),
        _ => None,
    };
    let bound_half = mu as f64 / 2.0;
    let bound_third = mu as f64 / 3.0 * LOG2_3;
    CensusRow {
        group: g.to_string(),
        n,
        group_type: g.classify(),
        mu,
        ineq_half: log2_fmax.map(|l| l <= bound_half + LOG2_SLACK),
        ineq_third: log2_fmax.map(|l| l <= bound_third + LOG2_SLACK),
        fmax,
        log2_fmax_over_mu,
        bound_half,
        bound_third,
    }
}

/// Census over an inclusive range of orders: one row per isomorphism class,
/// computed in parallel, sorted by `(n, group)` for deterministic output.
pub fn census(orders: RangeInclusive<u64>, caps: &Caps) -> Result<Vec<CensusRow>> {
    let mut groups = Vec::new();
    for n in orders {
        if n == 0 {
            continue;
        }
        if n > caps.order {
            return Err(Error::OrderCap {
                got: n as u128,
                cap: caps.order,
            });
        }
        groups.extend(enumerate_groups_of_order(n)?);
    }
    let mut rows: Vec<CensusRow> = groups.par_iter().map(|g| census_row(g, caps)).collect();
    rows.sort_by(|a, b| (a.n, &a.group).cmp(&(b.n, &b.group)));
    Ok(rows)
}

fn csv_opt<T: std::fmt::Display>(v: &Option<T>) -> String {
    v.as_ref().map(|x| x.to_string()).unwrap_or_default()
}

/// CSV rendering with the fixed column set
/// `group,n,type,mu,fmax,log2fmax_over_mu,bound_half,bound_third,ineq_half,ineq_third`.
pub fn census_csv(rows: &[CensusRow]) -> String {
    let mut out =
        String::from("group,n,type,mu,fmax,log2fmax_over_mu,bound_half,bound_third,ineq_half,ineq_third\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{:.6},{:.6},{},{}",
            r.group,
            r.n,
            r.group_type,
            r.mu,
            csv_opt(&r.fmax),
            r.log2_fmax_over_mu
                .map(|v| format!("{v:.6}"))
                .unwrap_or_default(),
            r.bound_half,
            r.bound_third,
            csv_opt(&r.ineq_half),
            csv_opt(&r.ineq_third),
        );
    }
    out
}

#[derive(Serialize)]
struct CensusDocument<'a> {
    metadata: Metadata<'a>,
    rows: &'a [CensusRow],
}

#[derive(Serialize)]
struct Metadata<'a> {
    version: &'static str,
    seed: u64,
    caps: &'a Caps,
}

/// JSON rendering mirroring the CSV with a metadata header.
pub fn census_json(rows: &[CensusRow], seed: u64, caps: &Caps) -> String {
    let doc = CensusDocument {
        metadata: Metadata {
            version: env!("CARGO_PKG_VERSION"),
            seed,
            caps,
        },
        rows,
    };
    serde_json::to_string_pretty(&doc).expect("census rows serialize")
}

/// A single named assertion outcome inside a [`VerifyReport`].
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub label: String,
    pub pass: bool,
    pub detail: String,
}

/// Structured result of one verification suite.
#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub name: String,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    fn new(name: &str) -> Self {
        VerifyReport {
            name: name.to_string(),
            checks: Vec::new(),
        }
    }

    fn push(&mut self, label: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            label: label.into(),
            pass,
            detail: detail.into(),
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    /// Plain-text rendering, one line per check.
    pub fn render_text(&self) -> String {
        let mut out = format!("suite {}\n", self.name);
        for c in &self.checks {
            let _ = writeln!(
                out,
                "[{}] {} — {}",
                if c.pass { "PASS" } else { "FAIL" },
                c.label,
                c.detail
            );
        }
        let _ = writeln!(
            out,
            "result: {}",
            if self.passed() { "PASS" } else { "FAIL" }
        );
        out
    }
}

/// The lower-bound construction for groups of order divisible by 9: a
/// canonical base set and order-3 generator whose link graph is a disjoint
/// union of triangles.
///
/// With a component of order `3^a`, `a >= 2`: `B` is the residue-1-mod-3
/// coset in that component and `s` is `3^{a-1}` there. With two order-3
/// components: `B` fixes residue 1 in the first and `s` generates the
/// second.
pub fn prop14_construction(g: &GroupSpec) -> Result<(ElementSet, crate::group::GroupElement)> {
    let n = g.order();
    if n % 9 != 0 {
        return Err(Error::NotApplicable(format!(
            "order {n} is not divisible by 9"
        )));
    }
    let comps = g.components().to_vec();
    if let Some(ci) = comps.iter().position(|&c| c % 9 == 0) {
        let m = comps[ci];
        let base = ElementSet::from_predicate(g.clone(), |e| e.residues()[ci] % 3 == 1);
        let mut res = vec![0i64; comps.len()];
        res[ci] = (m / 3) as i64;
        Ok((base, g.element(&res)?))
    } else {
        let threes: Vec<usize> = comps
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c == 3)
            .map(|(i, _)| i)
            .collect();
        debug_assert!(threes.len() >= 2);
        let base = ElementSet::from_predicate(g.clone(), |e| e.residues()[threes[0]] == 1);
        let mut res = vec![0i64; comps.len()];
        res[threes[1]] = 1;
        Ok((base, g.element(&res)?))
    }
}

/// Verifies the lower-bound construction on one group with `9 | n`: the
/// link graph of `{s}` on `B` has only type-1 edges, is 2-regular, is a
/// disjoint union of `|B|/3` triangles with exactly `3^{|B|/3}` maximal
/// independent sets, and (within the enumeration cap) each of them extends
/// `I u {s}` to a maximal sum-free set of the group.
pub fn verify_prop14(g: &GroupSpec, caps: &Caps) -> Result<VerifyReport> {
    let mut report = VerifyReport::new(&format!("prop14 {g}"));
    let n = g.order();
    let (base, s) = prop14_construction(g)?;
    let gens = ElementSet::from_elements(g.clone(), [&s]);
    let l = build_link_graph(&gens, &base);
    let b = base.len();

    report.push(
        "base and generator",
        is_sum_free(&base) && g.element_order(&s) == 3 && 3 * b == n,
        format!("|B| = {b} = n/3, s = {s}, ord(s) = {}", g.element_order(&s)),
    );
    report.push(
        "only type-1 edges, no loops",
        l.edge_count_of_type(EdgeType::Two) == 0 && l.loop_count() == 0,
        format!(
            "e1 = {}, e2 = {}, loops = {}",
            l.edge_count_of_type(EdgeType::One),
            l.edge_count_of_type(EdgeType::Two),
            l.loop_count()
        ),
    );
    let two_regular = (0..l.vertex_count()).all(|v| l.neighbors(v).len() == 2);
    report.push("2-regular", two_regular, format!("{} vertices", b));
    let triangles = l.triangles();
    report.push(
        "disjoint triangle cover",
        triangles.len() as u64 * 3 == b && two_regular,
        format!("{} triangles for |B| = {b}", triangles.len()),
    );
    let simple = l.to_simple_graph();
    let expected = BigUint::from(3u32).pow((b / 3) as u32);
    let mis = simple.count_mis()?;
    report.push(
        "mis = 3^(|B|/3)",
        mis == expected,
        format!("mis = {mis}, expected {expected}"),
    );

    if b <= 3 * (caps.fmax.min(45) / 3).max(8) && b <= 27 {
        let mut all_extend = true;
        let mut count = 0u64;
        simple.for_each_mis(|set| {
            let mut msf = gens.clone();
            for &v in set {
                msf.insert(l.vertex_element_index(v));
            }
            let extended = extend_to_maximal(&msf);
            if !is_sum_free(&msf)
                || !is_maximal_sum_free(&extended)
                || !msf.is_subset(&extended)
            {
                all_extend = false;
            }
            count += 1;
        })?;
        report.push(
            "every MIS extends I u {s} to a maximal sum-free set",
            all_extend,
            format!("{count} independent sets checked"),
        );
    } else {
        report.push(
            "every MIS extends I u {s} to a maximal sum-free set",
            true,
            format!("skipped: |B| = {b} exceeds the extension-check budget"),
        );
    }
    Ok(report)
}

/// Exact fraction of abelian groups of order `n` whose number `2^r` of
/// solutions to `2x = 0` exceeds `eps * n`, where `r` counts even canonical
/// components.
#[derive(Clone, Debug, Serialize)]
pub struct Prop31Report {
    pub n: u64,
    pub epsilon: f64,
    /// Groups of order `n` with `2^r > eps * n`.
    #[serde(serialize_with = "ser_biguint")]
    pub matching: BigUint,
    /// Partition count of the 2-exponent: the denominator of the fraction.
    #[serde(serialize_with = "ser_biguint")]
    pub total: BigUint,
    pub fraction: f64,
}

fn prop31_guard(n: u64, eps: f64) -> Result<u64> {
    if n < 2 {
        return Err(Error::Precondition("order must be at least 2".into()));
    }
    if !(0.0..1.0).contains(&eps) || eps <= 0.0 {
        return Err(Error::Precondition(
            "epsilon must lie strictly between 0 and 1".into(),
        ));
    }
    let mut alpha = 0;
    let mut m = n;
    while m % 2 == 0 {
        alpha += 1;
        m /= 2;
    }
    Ok(alpha)
}

/// Main route: partitions-by-part-count dynamic programming. The number of
/// even components `r` of a group equals the part count of the partition of
/// the 2-exponent, and the odd components are independent of the condition.
pub fn prop31_fraction(n: u64, eps: f64) -> Result<Prop31Report> {
    let alpha = prop31_guard(n, eps)?;
    let by_parts = partition_counts_by_parts(alpha);
    let mut matching = BigUint::zero();
    for (k, count) in by_parts.iter().enumerate() {
        if 2f64.powi(k as i32) > eps * n as f64 {
            matching += count;
        }
    }
    let total = partition_count(alpha);
    let fraction = matching.to_f64().unwrap_or(f64::INFINITY)
        / total.to_f64().unwrap_or(f64::INFINITY);
    Ok(Prop31Report {
        n,
        epsilon: eps,
        matching,
        total,
        fraction,
    })
}

/// Independent route: explicit partition enumeration, counting part lists.
pub fn prop31_fraction_enumerated(n: u64, eps: f64) -> Result<Prop31Report> {
    let alpha = prop31_guard(n, eps)?;
    let matching = partitions_of(alpha)
        .iter()
        .filter(|parts| 2f64.powi(parts.len() as i32) > eps * n as f64)
        .count();
    let total = partitions_of(alpha).len();
    Ok(Prop31Report {
        n,
        epsilon: eps,
        matching: BigUint::from(matching),
        total: BigUint::from(total),
        fraction: matching as f64 / total as f64,
    })
}

/// Cross-checks the two partition routes for the group-count fraction on
/// all powers of two up to `2^max_exp`.
pub fn verify_prop31(max_exp: u32, eps: f64) -> Result<VerifyReport> {
    let mut report = VerifyReport::new("prop31");
    let mut all = true;
    let mut detail = String::new();
    for a in 1..=max_exp {
        let n = 1u64 << a;
        let fast = prop31_fraction(n, eps)?;
        let slow = prop31_fraction_enumerated(n, eps)?;
        if fast.matching != slow.matching || fast.total != slow.total {
            all = false;
            let _ = write!(detail, "mismatch at n = 2^{a}; ");
        }
    }
    if detail.is_empty() {
        detail = format!(
            "dynamic programming equals enumeration for n = 2..2^{max_exp}, eps = {eps}"
        );
    }
    report.push("fraction routes agree", all, detail);

    let odd = prop31_fraction(30, eps)?; // 2-exponent 1: every group has r = 1
    report.push(
        "small even order sanity",
        odd.total == BigUint::one(),
        format!("n = 30 has 2-exponent 1, fraction = {}", odd.fraction),
    );
    Ok(report)
}

fn random_subset_of(
    rng: &mut ChaCha8Rng,
    pool: &[u64],
    size: usize,
    group: &GroupSpec,
) -> ElementSet {
    let picks: Vec<u64> = pool.choose_multiple(rng, size).copied().collect();
    ElementSet::from_indices(group.clone(), &picks)
}

/// Verification suite for the structural claims about link graphs over the
/// canonical odd coset: per-vertex degree identities, the edge-count lower
/// bound, triangle hitting sets, the order-3 triangle decomposition, and
/// the stability cover for large sum-free sets in type-I groups.
pub fn verify_claims3(seed: u64) -> Result<VerifyReport> {
    let mut report = VerifyReport::new("claims3");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // degree identities, edge bound, hitting sets on 100 random instances
    let mut degree_fail = 0;
    let mut edge_fail = 0;
    let mut hits_checked = 0;
    let mut hits_fail = 0;
    for _ in 0..100 {
        let n = 2 * rng.gen_range(2..=32u64);
        let groups = enumerate_groups_of_order(n)?;
        let g = groups.choose(&mut rng).expect("nonempty").clone();
        let base = canonical_odd_coset(&g)?;
        let pool: Vec<u64> = base.complement().indices().filter(|&i| i != 0).collect();
        let size = rng.gen_range(1..=3usize.min(pool.len()));
        let gens = random_subset_of(&mut rng, &pool, size, &g);
        let l = build_link_graph(&gens, &base);
        if !verify_degree_claim(&l)?.all_ok() {
            degree_fail += 1;
        }
        if !edge_lower_bound(&l)?.holds {
            edge_fail += 1;
        }
        if gens.len() == 1 {
            let s = gens.elements().next().expect("singleton");
            if g.element_order(&s) != 3 {
                hits_checked += 1;
                let hits = triangle_hitting_set(&g, &s, &base);
                match hits {
                    Ok(h) if h.len() <= 1 << g.two_rank() => {}
                    _ => hits_fail += 1,
                }
            }
        }
    }
    report.push(
        "degree identities on 100 instances",
        degree_fail == 0,
        format!("{degree_fail} failures"),
    );
    report.push(
        "edge lower bound on 100 instances",
        edge_fail == 0,
        format!("{edge_fail} failures"),
    );
    report.push(
        "triangle hitting sets cover and stay within 2^r",
        hits_fail == 0,
        format!("{hits_checked} applicable instances, {hits_fail} failures"),
    );

    // order-3 triangle decomposition on every even order up to 36
    let mut case1_checked = 0;
    let mut case1_fail = 0;
    for n in (6..=36u64).step_by(6) {
        for g in enumerate_groups_of_order(n)? {
            let base = canonical_odd_coset(&g)?;
            for s in g.elements() {
                if g.element_order(&s) != 3 {
                    continue;
                }
                case1_checked += 1;
                match decompose_case1(&g, &s, &base) {
                    Ok(d) => {
                        let irregular = d.irregular.iter().filter(|&&f| f).count();
                        if irregular as u64 > 1 << g.two_rank() {
                            case1_fail += 1;
                        }
                    }
                    Err(_) => case1_fail += 1,
                }
            }
        }
    }
    report.push(
        "order-3 triangle decomposition and MIS bound",
        case1_fail == 0,
        format!("{case1_checked} (group, s) instances, {case1_fail} failures"),
    );

    // stability cover on 200 large sum-free subsets of type-I groups
    let mut type1: Vec<(GroupSpec, u64)> = Vec::new();
    for n in 2..=60u64 {
        for g in enumerate_groups_of_order(n)? {
            if let GroupType::I(p) = g.classify() {
                type1.push((g, p));
            }
        }
    }
    let mut stability_fail = 0;
    for _ in 0..200 {
        let (g, p) = type1.choose(&mut rng).expect("type-I groups exist").clone();
        let n = g.order();
        let k = (p - 2) / 3;
        let homs: Vec<_> = g
            .homs_to_cyclic(p)
            .into_iter()
            .filter(|h| h.images().iter().any(|&im| im != 0))
            .collect();
        let hom = homs.choose(&mut rng).expect("surjective hom exists");
        let band: Vec<u64> = g
            .elements()
            .filter(|e| {
                let im = hom.apply(e);
                im >= k + 1 && im <= 2 * k + 1
            })
            .map(|e| g.index_of(&e))
            .collect();
        debug_assert_eq!(band.len() as u64, g.mu());
        // smallest size strictly above the stability threshold
        let min_size = (n * (p + 2)) / (3 * (p + 1)) + 1;
        let size = rng.gen_range(min_size..=band.len() as u64) as usize;
        let a = random_subset_of(&mut rng, &band, size, &g);
        debug_assert!(is_sum_free(&a));
        match stability_cover(&a) {
            Ok(Some(_)) => {}
            _ => stability_fail += 1,
        }
    }
    report.push(
        "stability cover on 200 large sum-free sets",
        stability_fail == 0,
        format!("{stability_fail} failures"),
    );

    Ok(report)
}

/// Builds `Z2^t * Z4` with the canonical component order.
fn z2t_z4(t: u32) -> Result<GroupSpec> {
    let mut comps = vec![2u64; t as usize];
    comps.push(4);
    GroupSpec::from_components(&comps)
}

/// Verification suite for the structural facts about the two base-set cases
/// of `Z2^t * Z4` and the degree formulas of `Z5 + H`.
pub fn verify_section4(tmax: u32, seed: u64) -> Result<VerifyReport> {
    let mut report = VerifyReport::new("section4");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // case 1: B = Z2^t + {1,3}, S inside the doubled coset; Gamma is
    // |S*|-regular, and triangle-free when |S*| = 2
    let mut reg_checked = 0u64;
    let mut reg_fail = 0u64;
    for t in 1..=tmax {
        let g = z2t_z4(t)?;
        let last = g.components().len() - 1;
        let two = {
            let mut res = vec![0i64; g.components().len()];
            res[last] = 2;
            g.index_of(&g.element(&res)?)
        };
        let base = ElementSet::from_predicate(g.clone(), |e| e.residues()[last] % 2 == 1);
        let pool: Vec<u64> = ElementSet::from_predicate(g.clone(), |e| e.residues()[last] % 2 == 0)
            .indices()
            .filter(|&i| i != 0 && i != two)
            .collect();
        let mut samples: Vec<Vec<u64>> = pool.iter().map(|&a| vec![a]).collect();
        for (i, &a) in pool.iter().enumerate() {
            for &b in &pool[i + 1..] {
                samples.push(vec![a, b]);
            }
        }
        for sample in samples {
            let gens = ElementSet::from_indices(g.clone(), &sample);
            let star = gens.union(&gens.translate(&g.element_of_index(two)));
            let l = build_link_graph(&gens, &base);
            reg_checked += 1;
            let regular = (0..l.vertex_count())
                .all(|v| !l.has_loop(v) && l.neighbors(v).len() == star.len() as usize);
            let tri_ok = star.len() != 2 || l.triangles().is_empty();
            if !regular || !tri_ok {
                reg_fail += 1;
            }
        }
    }
    report.push(
        "Z2^t*Z4 case 1: graph is |S*|-regular (triangle-free when |S*| = 2)",
        reg_fail == 0,
        format!("{reg_checked} samples, {reg_fail} failures"),
    );

    // case 2: B fixes the first Z2 coordinate; per-block regularity
    let mut blk_checked = 0u64;
    let mut blk_fail = 0u64;
    for t in 1..=tmax {
        let g = z2t_z4(t)?;
        let comps_len = g.components().len();
        let last = comps_len - 1;
        let two = {
            let mut res = vec![0i64; comps_len];
            res[last] = 2;
            g.index_of(&g.element(&res)?)
        };
        let base = ElementSet::from_predicate(g.clone(), |e| e.residues()[0] == 1);
        let pool0: Vec<u64> =
            ElementSet::from_predicate(g.clone(), |e| {
                e.residues()[0] == 0 && e.residues()[last] % 2 == 0
            })
            .indices()
            .filter(|&i| i != 0 && i != two)
            .collect();
        let pool1: Vec<u64> =
            ElementSet::from_predicate(g.clone(), |e| {
                e.residues()[0] == 0 && e.residues()[last] % 2 == 1
            })
            .indices()
            .collect();
        let mut choices0: Vec<Option<u64>> = vec![None];
        choices0.extend(pool0.iter().map(|&a| Some(a)));
        let mut choices1: Vec<Option<u64>> = vec![None];
        choices1.extend(pool1.iter().map(|&a| Some(a)));
        for &c0 in &choices0 {
            for &c1 in &choices1 {
                if c0.is_none() && c1.is_none() {
                    continue;
                }
                let mut idx = Vec::new();
                idx.extend(c0);
                idx.extend(c1);
                let gens = ElementSet::from_indices(g.clone(), &idx);
                let s0 = ElementSet::from_indices(g.clone(), &c0.into_iter().collect::<Vec<_>>());
                let s1 = ElementSet::from_indices(g.clone(), &c1.into_iter().collect::<Vec<_>>());
                let s0_star = s0.union(&s0.translate(&g.element_of_index(two)));
                let s1_star = s1.union(&s1.translate(&g.element_of_index(two)));
                let l = build_link_graph(&gens, &base);
                let n_v = l.vertex_count();
                let mask0: Vec<bool> = (0..n_v)
                    .map(|v| l.vertex_element(v).residues()[last] % 2 == 0)
                    .collect();
                let mask1: Vec<bool> = mask0.iter().map(|&m| !m).collect();
                blk_checked += 1;
                let mut ok = (0..n_v).all(|v| !l.has_loop(v));
                for v in 0..n_v {
                    let (own, own_deg, cross_deg) = if mask0[v] {
                        (&mask0, s0.len(), s1_star.len())
                    } else {
                        (&mask1, s0_star.len(), s1_star.len())
                    };
                    ok &= l.degree_within(v, own) == own_deg as usize;
                    ok &= l.degree_within(v, if mask0[v] { &mask1 } else { &mask0 })
                        == cross_deg as usize;
                }
                // Gamma[B0] is triangle-free
                ok &= !l
                    .triangles()
                    .iter()
                    .any(|tri| tri.iter().all(|&v| mask0[v]));
                if !ok {
                    blk_fail += 1;
                }
            }
        }
    }
    report.push(
        "Z2^t*Z4 case 2: blocks are |S0|-, |S0*|-, |S1*|-regular and B0 is triangle-free",
        blk_fail == 0,
        format!("{blk_checked} samples, {blk_fail} failures"),
    );

    // Z5 + H degree formulas
    let mut z5_checked = 0u64;
    let mut z5_fail = 0u64;
    for h_comps in [vec![3u64], vec![7], vec![9], vec![3, 3]] {
        let mut comps = vec![5u64];
        comps.extend(&h_comps);
        let g = GroupSpec::from_components(&comps)?;
        let i5 = g
            .components()
            .iter()
            .position(|&c| c == 5)
            .expect("Z5 component present");
        let base = ElementSet::from_predicate(g.clone(), |e| {
            e.residues()[i5] == 2 || e.residues()[i5] == 3
        });
        let pool: Vec<u64> = ElementSet::from_predicate(g.clone(), |e| {
            matches!(e.residues()[i5], 0 | 1 | 4)
        })
        .indices()
        .filter(|&i| i != 0)
        .collect();
        for _ in 0..25 {
            let size = rng.gen_range(1..=4usize.min(pool.len()));
            let gens = random_subset_of(&mut rng, &pool, size, &g);
            if !is_sum_free(&gens) {
                continue;
            }
            z5_checked += 1;
            if !z5_degree_formulas_hold(&g, i5, &gens, &base) {
                z5_fail += 1;
            }
        }
    }
    report.push(
        "Z5+H: four per-vertex degree formulas",
        z5_fail == 0,
        format!("{z5_checked} sum-free samples, {z5_fail} failures"),
    );

    Ok(report)
}

/// Checks the four degree formulas for `L_S[B]` with `B = {2,3} + H`:
/// within a block, type-1 degree is `|S0 u (-S0)|` and type-2 degree is
/// `|S_{2i}|` minus the generators `s` with `2x` in `s + (S0 u (-S0))`;
/// across the blocks, type-1 degree is `|S4 u (-S1)|` and type-2 degree is
/// `|S0|` minus the generators `s` with `2x` in `s + (S_{2i} u (-S_{-2i}))`.
fn z5_degree_formulas_hold(g: &GroupSpec, i5: usize, gens: &ElementSet, base: &ElementSet) -> bool {
    let slice = |j: u64| {
        ElementSet::from_predicate(g.clone(), |e| {
            gens.contains_element(e) && e.residues()[i5] == j
        })
    };
    let s0 = slice(0);
    let s1 = slice(1);
    let s4 = slice(4);
    let sym0 = s0.symmetrized();
    let cross_d1 = s4.union(&s1.negation()).len() as usize;

    let l = build_link_graph(gens, base);
    let n_v = l.vertex_count();
    let mask2: Vec<bool> = (0..n_v)
        .map(|v| l.vertex_element(v).residues()[i5] == 2)
        .collect();
    let mask3: Vec<bool> = mask2.iter().map(|&m| !m).collect();

    let shifted_contains = |x2: u64, pool: &ElementSet, shift_set: &ElementSet| {
        // counts s in pool with x2 in s + shift_set
        pool.indices()
            .filter(|&s| shift_set.contains(g.sub_indices(x2, s)))
            .count()
    };

    for v in 0..n_v {
        let x = l.vertex_element_index(v);
        let x2 = g.add_indices(x, x);
        let in2 = mask2[v];
        let (own, other) = if in2 { (&mask2, &mask3) } else { (&mask3, &mask2) };
        let s_2i = if in2 { &s4 } else { &s1 };
        let s_neg_2i = if in2 { &s1 } else { &s4 };

        if l.d1_within(v, own) != sym0.len() as usize {
            return false;
        }
        let own_d2 = s_2i.len() as usize - shifted_contains(x2, s_2i, &sym0);
        if l.d2_within(v, own) != own_d2 {
            return false;
        }
        if l.d1_within(v, other) != cross_d1 {
            return false;
        }
        let cross_shift = s_2i.union(&s_neg_2i.negation());
        let cross_d2 = s0.len() as usize - shifted_contains(x2, &s0, &cross_shift);
        if l.d2_within(v, other) != cross_d2 {
            return false;
        }
    }
    true
}

/// Verification suite for the MIS engine and the full bound stack:
/// exhaustive oracle equivalence on small graphs, seeded random graphs,
/// tight extremal families, and the deletion recursion.
pub fn verify_bounds(seed: u64, exhaustive_max: usize, random_rounds: usize) -> Result<VerifyReport> {
    let mut report = VerifyReport::new("bounds");

    // every graph on up to `exhaustive_max` vertices
    let mut total_graphs = 0u64;
    let mut mismatch = 0u64;
    let mut bound_fail = 0u64;
    for n in 0..=exhaustive_max {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
            .collect();
        let m = pairs.len();
        let outcomes: Vec<(u64, u64)> = (0u64..1 << m)
            .into_par_iter()
            .map(|mask| {
                let mut g = SimpleGraph::new(n);
                for (bit, &(u, v)) in pairs.iter().enumerate() {
                    if mask >> bit & 1 == 1 {
                        g.add_edge(u, v);
                    }
                }
                let equal = g.count_mis().unwrap() == g.count_mis_naive().unwrap();
                let bounds_ok = check_bounds(&g, None).map(|r| r.all_hold()).unwrap_or(false);
                (u64::from(!equal), u64::from(!bounds_ok))
            })
            .collect();
        total_graphs += outcomes.len() as u64;
        mismatch += outcomes.iter().map(|o| o.0).sum::<u64>();
        bound_fail += outcomes.iter().map(|o| o.1).sum::<u64>();
    }
    report.push(
        format!("exhaustive oracle equivalence on <= {exhaustive_max} vertices"),
        mismatch == 0,
        format!("{total_graphs} graphs, {mismatch} mismatches"),
    );
    report.push(
        "every applicable bound holds on every exhaustive graph",
        bound_fail == 0,
        format!("{bound_fail} violations"),
    );

    // tight families
    let triangles_tight = (1..=6).all(|m| {
        mis::disjoint_triangles(m).count_mis().unwrap() == BigUint::from(3u32).pow(m as u32)
    });
    let matchings_tight = (1..=8).all(|m| {
        mis::perfect_matching(m).count_mis().unwrap() == BigUint::from(2u32).pow(m as u32)
    });
    let k4_tight = (1..=5).all(|m| {
        mis::disjoint_k4(m).count_mis().unwrap() == BigUint::from(4u32).pow(m as u32)
    });
    report.push(
        "tight families: 3^(n/3), 2^(n/2), 4^(n/4)",
        triangles_tight && matchings_tight && k4_tight,
        "disjoint triangles, perfect matchings, disjoint K4s".to_string(),
    );

    // seeded random graphs: oracle equivalence and bounds
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rnd_mismatch = 0u64;
    let mut rnd_bound_fail = 0u64;
    for _ in 0..random_rounds {
        let n = rng.gen_range(1..=14usize);
        let p = rng.gen_range(0.1..0.6);
        let g = mis::random_graph(&mut rng, n, p);
        if g.count_mis()? != g.count_mis_naive()? {
            rnd_mismatch += 1;
        }
        if !check_bounds(&g, None)?.all_hold() {
            rnd_bound_fail += 1;
        }
    }
    report.push(
        format!("{random_rounds} seeded random graphs match the naive oracle"),
        rnd_mismatch == 0,
        format!("{rnd_mismatch} mismatches"),
    );
    report.push(
        "every applicable bound holds on the random graphs",
        rnd_bound_fail == 0,
        format!("{rnd_bound_fail} violations"),
    );

    // deletion recursion mis(G) <= mis(G - v) + mis(G - N[v])
    let mut rec_fail = 0u64;
    for _ in 0..random_rounds {
        let n = rng.gen_range(2..=12usize);
        let p = rng.gen_range(0.1..0.6);
        let g = mis::random_graph(&mut rng, n, p);
        let v = rng.gen_range(0..n);
        if !mis::neighborhood_recursion_holds(&g, v)? {
            rec_fail += 1;
        }
    }
    report.push(
        format!("deletion recursion on {random_rounds} seeded (graph, vertex) pairs"),
        rec_fail == 0,
        format!("{rec_fail} violations"),
    );

    Ok(report)
}

/// Verification suite for the partition machinery: the counting DP against
/// the two-argument recursion, the asymptotic estimate window, and the
/// abelian group counting product.
pub fn verify_partitions(max_n: u64) -> Result<VerifyReport> {
    let mut report = VerifyReport::new("partitions");

    let mut all_eq = true;
    for n in 0..=max_n {
        if partition_count(n) != crate::partition::partition_count_recursive(n) {
            all_eq = false;
        }
    }
    report.push(
        format!("p(n) equals the recursion oracle for n <= {max_n}"),
        all_eq,
        "dynamic programming vs memoized p(n, k) recursion".to_string(),
    );

    let mut ratio_ok = true;
    let mut worst: f64 = 1.0;
    for n in 50..=max_n.max(50) {
        let exact = partition_count(n);
        let ratio = crate::partition::hardy_ramanujan_estimate(n)?
            / crate::bounds::biguint_to_f64(&exact);
        worst = worst.max(ratio);
        if !(1.0..1.15).contains(&ratio) {
            ratio_ok = false;
        }
    }
    report.push(
        "asymptotic estimate within (1.0, 1.15) of exact for 50 <= n <= 200",
        ratio_ok,
        format!("worst ratio {worst:.6}"),
    );

    let groups_ok = [(1u64, 1u32), (8, 3), (16, 5), (36, 4), (64, 11), (720, 10)]
        .iter()
        .all(|&(n, c)| crate::partition::count_abelian_groups(n) == BigUint::from(c));
    report.push(
        "abelian group counts",
        groups_ok,
        "orders 1, 8, 16, 36, 64, 720".to_string(),
    );

    let mut rowcount_ok = true;
    for n in 1..=24u64 {
        let groups = enumerate_groups_of_order(n)?;
        if BigUint::from(groups.len()) != crate::partition::count_abelian_groups(n) {
            rowcount_ok = false;
        }
    }
    report.push(
        "group enumeration count matches the partition product",
        rowcount_ok,
        "orders 1..24".to_string(),
    );

    Ok(report)
}

/// Oracle-equivalence suite used by the acceptance gate: the maximal
/// sum-free enumerator against the all-subsets filter, and the largest
/// sum-free size against the closed formula.
pub fn verify_msf_oracles(max_mu_order: u64, max_fmax_order: u64) -> Result<VerifyReport> {
    let mut report = VerifyReport::new("msf-oracles");

    let mut mu_fail = 0u64;
    let mut mu_checked = 0u64;
    for n in 1..=max_mu_order {
        for g in enumerate_groups_of_order(n)? {
            mu_checked += 1;
            let (size, _) = crate::sumfree::max_sumfree_bruteforce(&g, max_mu_order)?;
            if size != g.mu() {
                mu_fail += 1;
            }
        }
    }
    report.push(
        format!("mu formula vs brute force for n <= {max_mu_order}"),
        mu_fail == 0,
        format!("{mu_checked} groups, {mu_fail} mismatches"),
    );

    let mut fmax_fail = 0u64;
    let mut fmax_checked = 0u64;
    for n in 1..=max_fmax_order {
        for g in enumerate_groups_of_order(n)? {
            fmax_checked += 1;
            let fast = enumerate_maximal_sumfree(&g, false, max_fmax_order)?.count;
            let naive = maximal_sumfree_naive(&g)?;
            if fast != naive {
                fmax_fail += 1;
            }
        }
    }
    report.push(
        format!("maximal sum-free enumeration vs subset filter for n <= {max_fmax_order}"),
        fmax_fail == 0,
        format!("{fmax_checked} groups, {fmax_fail} mismatches"),
    );

    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_enumeration_counts() {
        assert_eq!(enumerate_groups_of_order(8).unwrap().len(), 3);
        assert_eq!(enumerate_groups_of_order(6).unwrap().len(), 1);
        assert_eq!(enumerate_groups_of_order(12).unwrap().len(), 2);
        assert_eq!(enumerate_groups_of_order(1).unwrap().len(), 1);
        let specs: Vec<String> = enumerate_groups_of_order(8)
            .unwrap()
            .iter()
            .map(|g| g.to_string())
            .collect();
        assert_eq!(specs, ["Z2^3", "Z2*Z4", "Z8"]);
        assert!(enumerate_groups_of_order(0).is_err());
    }

    #[test]
    fn census_small_range() {
        let caps = Caps::default();
        let rows = census(1..=10, &caps).unwrap();
        let expected: usize = (1..=10u64)
            .map(|n| {
                crate::partition::count_abelian_groups(n)
                    .to_f64()
                    .unwrap() as usize
            })
            .sum();
        assert_eq!(rows.len(), expected);
        let z5 = rows.iter().find(|r| r.group == "Z5").unwrap();
        assert_eq!(z5.fmax.as_ref().unwrap(), &BigUint::from(2u32));
        let z9 = rows.iter().find(|r| r.group == "Z9").unwrap();
        assert!(z9.fmax.as_ref().unwrap() >= &BigUint::from(3u32));
        // sorted by (n, group)
        assert!(rows.windows(2).all(|w| (w[0].n, &w[0].group) <= (w[1].n, &w[1].group)));
    }

    #[test]
    fn census_csv_shape_and_determinism() {
        let caps = Caps::default();
        let rows = census(1..=8, &caps).unwrap();
        let csv = census_csv(&rows);
        let again = census_csv(&census(1..=8, &caps).unwrap());
        assert_eq!(csv, again);
        assert!(csv.starts_with(
            "group,n,type,mu,fmax,log2fmax_over_mu,bound_half,bound_third,ineq_half,ineq_third\n"
        ));
        assert_eq!(csv.lines().count(), rows.len() + 1);
        let json = census_json(&rows, 7, &caps);
        assert!(json.contains("\"seed\": 7"));
        assert!(json.contains("\"version\""));
    }

    #[test]
    fn prop14_examples() {
        let caps = Caps::default();
        for (spec, b) in [("Z9", 3u64), ("Z3^2", 3), ("Z2*Z9", 6)] {
            let g = GroupSpec::parse(spec).unwrap();
            let report = verify_prop14(&g, &caps).unwrap();
            assert!(report.passed(), "{spec}: {}", report.render_text());
            let (base, _) = prop14_construction(&g).unwrap();
            assert_eq!(base.len(), b, "{spec}");
        }
        assert!(verify_prop14(&GroupSpec::parse("Z8").unwrap(), &caps).is_err());
    }

    #[test]
    fn prop31_routes_agree() {
        for a in 1..=12u32 {
            let n = 1u64 << a;
            let fast = prop31_fraction(n, 0.01).unwrap();
            let slow = prop31_fraction_enumerated(n, 0.01).unwrap();
            assert_eq!(fast.matching, slow.matching, "n=2^{a}");
            assert_eq!(fast.total, slow.total, "n=2^{a}");
        }
        assert!(prop31_fraction(1, 0.01).is_err());
        assert!(prop31_fraction(8, 0.0).is_err());
        assert!(prop31_fraction(8, 1.0).is_err());
        // n = 2: the single group Z2 has 2^r = 2 > 0.02
        let tiny = prop31_fraction(2, 0.01).unwrap();
        assert_eq!(tiny.fraction, 1.0);
        // odd part is irrelevant: orders 4 and 12 share the 2-exponent
        let a4 = prop31_fraction(4, 0.5).unwrap();
        assert_eq!(a4.total, BigUint::from(2u32));
    }

    #[test]
    fn verify_report_rendering() {
        let mut r = VerifyReport::new("demo");
        r.push("first", true, "ok");
        r.push("second", false, "broken");
        assert!(!r.passed());
        let text = r.render_text();
        assert!(text.contains("[PASS] first"));
        assert!(text.contains("[FAIL] second"));
        assert!(text.contains("result: FAIL"));
    }

    #[test]
    fn section4_suite_passes_small() {
        let report = verify_section4(3, 5).unwrap();
        assert!(report.passed(), "{}", report.render_text());
    }

    #[test]
    fn partitions_suite_passes() {
        let report = verify_partitions(120).unwrap();
        assert!(report.passed(), "{}", report.render_text());
    }

    #[test]
    fn prop31_suite_passes() {
        let report = verify_prop31(14, 0.01).unwrap();
        assert!(report.passed(), "{}", report.render_text());
    }

    #[test]
    fn bounds_suite_passes_reduced() {
        let report = verify_bounds(3, 5, 60).unwrap();
        assert!(report.passed(), "{}", report.render_text());
    }

    #[test]
    fn claims3_suite_passes() {
        let report = verify_claims3(11).unwrap();
        assert!(report.passed(), "{}", report.render_text());
    }

    #[test]
    fn msf_oracle_suite_passes_reduced() {
        let report = verify_msf_oracles(12, 10).unwrap();
        assert!(report.passed(), "{}", report.render_text());
    }
}
