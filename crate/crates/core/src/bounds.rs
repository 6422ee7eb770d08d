//! Upper bounds on the number of maximal independent sets, evaluated in the
//! log2 domain so that astronomically large counts stay comparable.
//!
//! Each bound is exposed twice: as a pure formula taking its parameters, and
//! through [`check_bounds`], which derives the parameters from a concrete
//! graph, decides applicability, and compares against the exact count.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::mis::SimpleGraph;

/// Additive slack for all log2-domain comparisons, absorbing float rounding.
pub const LOG2_SLACK: f64 = 1e-9;

const LOG2_3: f64 = 1.584_962_500_721_156_2;

/// Lossy conversion that saturates to infinity instead of panicking.
pub fn biguint_to_f64(x: &BigUint) -> f64 {
    x.to_f64().unwrap_or(f64::INFINITY)
}

/// `log2(x)` computed from the top bits, accurate for arbitrary magnitude.
pub fn log2_biguint(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 53 {
        return biguint_to_f64(x).log2();
    }
    let shift = bits - 53;
    let top = (x >> shift).to_f64().expect("53-bit mantissa fits");
    top.log2() + shift as f64
}

/// Exact binomial coefficient.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// `mis(G) <= 3^{n/3}` for every graph, as a log2 value.
pub fn bound_moon_moser(n: usize) -> f64 {
    n as f64 / 3.0 * LOG2_3
}

/// `mis(G) <= 2^{n/2}` for triangle-free graphs, as a log2 value.
pub fn bound_hujter_tuza(n: usize) -> f64 {
    n as f64 / 2.0
}

/// Bound for almost-regular dense graphs: with `max degree <= k_ratio * min
/// degree` and `b = sqrt(min degree)`,
/// `mis(G) <= sum_{i <= n/b} C(n, i) * 3^{(k/(k+1)) n/3 + 2n/(3b)}`.
pub fn bound_regular_dense(n: usize, k_ratio: u64, min_degree: u64) -> Result<f64> {
    if k_ratio < 1 || min_degree < 1 {
        return Err(Error::Precondition(
            "regular-dense bound needs degree ratio >= 1 and min degree >= 1".into(),
        ));
    }
    let b = (min_degree as f64).sqrt();
    let limit = (n as f64 / b).floor() as u64;
    let mut sum = BigUint::zero();
    for i in 0..=limit.min(n as u64) {
        sum += binomial(n as u64, i);
    }
    let k = k_ratio as f64;
    Ok(log2_biguint(&sum) + (k / (k + 1.0) * n as f64 / 3.0 + 2.0 * n as f64 / (3.0 * b)) * LOG2_3)
}

/// Bound for graphs that are triangle-free after removing `t` vertices:
/// if the remaining graph has `n` vertices and at least `n/2 + k` edges and
/// the whole graph has max degree at most `d`, then
/// `mis(G) <= 2^{n/2 - k/(100 d^2) + 2t}`.
pub fn bound_almost_trifree(n: usize, k: f64, d: u64, t: usize) -> Result<f64> {
    if k < 0.0 {
        return Err(Error::Precondition(
            "almost-triangle-free bound needs edge count at least n/2".into(),
        ));
    }
    if d < 1 {
        return Err(Error::Precondition(
            "almost-triangle-free bound needs max degree at least 1".into(),
        ));
    }
    Ok(n as f64 / 2.0 - k / (100.0 * (d * d) as f64) + 2.0 * t as f64)
}

/// Stability refinement of the `3^{n/3}` bound: an `n`-vertex graph with
/// `n + k` edges, max degree `max_deg`, and any `c >= 3^{max_deg/13}`
/// satisfies `mis(G) <= c * 3^{n/3 - k/(13 max_deg)}`. `k` may be negative.
pub fn bound_stability(n: usize, k: i64, max_deg: u64, c: f64) -> Result<f64> {
    if max_deg < 1 {
        return Err(Error::Precondition(
            "stability bound needs max degree at least 1".into(),
        ));
    }
    let c_floor = max_deg as f64 / 13.0 * LOG2_3;
    if c.log2() < c_floor - LOG2_SLACK {
        return Err(Error::Precondition(format!(
            "stability bound needs c >= 3^(max_deg/13); got c = {c}"
        )));
    }
    Ok(c.log2() + (n as f64 / 3.0 - k as f64 / (13.0 * max_deg as f64)) * LOG2_3)
}

fn serialize_biguint<S: serde::Serializer>(x: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// One evaluated bound inside a [`BoundReport`].
#[derive(Clone, Debug, Serialize)]
pub struct BoundEntry {
    pub name: &'static str,
    pub applicable: bool,
    /// log2 of the bound when applicable.
    pub value_log2: Option<f64>,
    /// The parameters the bound was evaluated with, or why it was skipped.
    pub detail: String,
    /// `exact <= bound` within slack; true when inapplicable.
    pub holds: bool,
}

/// Exact MIS count of a graph next to every applicable upper bound.
#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    #[serde(serialize_with = "serialize_biguint")]
    pub exact: BigUint,
    pub exact_log2: f64,
    /// Vertices of the loop-free core the bounds were evaluated on.
    pub n: usize,
    /// Edge surplus `e - n` of the core; may be negative.
    pub edge_surplus: i64,
    pub max_degree: u64,
    pub min_degree: u64,
    pub entries: Vec<BoundEntry>,
}

impl BoundReport {
    pub fn all_hold(&self) -> bool {
        self.entries.iter().all(|e| e.holds)
    }
}

/// Evaluates every bound against the exact MIS count of `g`.
///
/// Looped vertices can never join an independent set, so the count and all
/// parameters are those of the induced loop-free core. `triangle_hits`, if
/// given, must list core vertices whose removal leaves the core
/// triangle-free; it enables the almost-triangle-free bound. When the core
/// is already triangle-free the empty hitting set is assumed.
pub fn check_bounds(g: &SimpleGraph, triangle_hits: Option<&[usize]>) -> Result<BoundReport> {
    let looped: Vec<usize> = (0..g.vertex_count()).filter(|&v| g.has_loop(v)).collect();
    let core = g.without_vertices(&looped);
    let exact = core.count_mis()?;
    let exact_log2 = log2_biguint(&exact);

    let n = core.vertex_count();
    let e = core.edge_count();
    let k = e as i64 - n as i64;
    let max_deg = core.max_degree() as u64;
    let min_deg = core.min_degree() as u64;
    let triangle_free = core.is_triangle_free();

    let mut entries = Vec::new();
    let mut push = |name, value: Option<f64>, detail: String| {
        entries.push(BoundEntry {
            name,
            applicable: value.is_some(),
            holds: value.is_none_or(|v| exact_log2 <= v + LOG2_SLACK),
            value_log2: value,
            detail,
        });
    };

    push(
        "moon_moser",
        Some(bound_moon_moser(n)),
        format!("n={n}"),
    );

    if triangle_free {
        push(
            "hujter_tuza",
            Some(bound_hujter_tuza(n)),
            format!("n={n}, triangle-free"),
        );
    } else {
        push("hujter_tuza", None, "graph has a triangle".into());
    }

    if min_deg >= 1 {
        let ratio = max_deg.div_ceil(min_deg);
        push(
            "regular_dense",
            Some(bound_regular_dense(n, ratio, min_deg)?),
            format!("n={n}, ratio={ratio}, min_degree={min_deg}"),
        );
    } else {
        push("regular_dense", None, "isolated vertex: min degree 0".into());
    }

    let hits: Option<Vec<usize>> = match triangle_hits {
        Some(t) => Some(t.to_vec()),
        None if triangle_free => Some(Vec::new()),
        None => None,
    };
    match hits {
        Some(t) if core.without_vertices(&t).is_triangle_free() => {
            let rest = core.without_vertices(&t);
            let n2 = rest.vertex_count();
            let k2 = rest.edge_count() as f64 - n2 as f64 / 2.0;
            if k2 >= 0.0 && max_deg >= 1 {
                push(
                    "almost_trifree",
                    Some(bound_almost_trifree(n2, k2, max_deg, t.len())?),
                    format!("n={n2}, k={k2}, max_degree={max_deg}, removed={}", t.len()),
                );
            } else {
                push("almost_trifree", None, format!("edge surplus {k2} below n/2"));
            }
        }
        Some(_) => {
            push(
                "almost_trifree",
                None,
                "given vertex set does not hit every triangle".into(),
            );
        }
        None => {
            push("almost_trifree", None, "no triangle hitting set given".into());
        }
    }

    if max_deg >= 1 {
        let c = 3.0f64.powf(max_deg as f64 / 13.0);
        push(
            "stability",
            Some(bound_stability(n, k, max_deg, c)?),
            format!("n={n}, k={k}, max_degree={max_deg}, c=3^({max_deg}/13)"),
        );
    } else {
        push("stability", None, "edgeless graph: max degree 0".into());
    }

    Ok(BoundReport {
        exact,
        exact_log2,
        n,
        edge_surplus: k,
        max_degree: max_deg,
        min_degree: min_deg,
        entries,
    })
}
