//! Schur-triple predicates and exhaustive sum-free enumeration.
//!
//! The enumerator walks the group in the fixed mixed-radix element order and
//! maintains, per element, a count of the Schur relations that currently
//! block it from joining the set. Leaves of the walk are exactly the
//! sum-free sets; maximality is the condition that every outside element is
//! blocked. A separate subset-mask filter provides the naive counting route
//! used for cross-checks.

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::group::{CyclicHom, GroupElement, GroupSpec, GroupType};
use crate::set::ElementSet;

/// Count of maximal sum-free sets (or sum-free sets), with optional
/// witnesses.
#[derive(Clone, Debug)]
pub struct MsfReport {
    pub count: BigUint,
    pub witnesses: Option<Vec<ElementSet>>,
    pub elapsed: Duration,
}

/// True iff `{x, y, z}` is a Schur triple: some one of the three is the sum
/// of the other two (repetition allowed).
pub fn is_schur_triple(
    g: &GroupSpec,
    x: &GroupElement,
    y: &GroupElement,
    z: &GroupElement,
) -> bool {
    g.add(x, y) == *z || g.add(x, z) == *y || g.add(y, z) == *x
}

/// True iff `(S + S)` misses `S` entirely.
pub fn is_sum_free(s: &ElementSet) -> bool {
    let g = s.group();
    let members: Vec<u64> = s.indices().collect();
    for &a in &members {
        for &b in &members {
            if s.contains(g.add_indices(a, b)) {
                return false;
            }
        }
    }
    true
}

/// True iff `S u {x}` is sum-free (for `x` not in `S`).
fn extends_sum_free(s: &ElementSet, x: u64) -> bool {
    let g = s.group();
    let xx = g.add_indices(x, x);
    if xx == x || s.contains(xx) {
        return false;
    }
    for a in s.indices() {
        let ax = g.add_indices(a, x);
        if ax == x || s.contains(ax) {
            return false;
        }
        if s.contains(g.sub_indices(x, a)) {
            return false;
        }
    }
    true
}

/// True iff `S` is sum-free and no single element can be added while
/// remaining sum-free.
pub fn is_maximal_sum_free(s: &ElementSet) -> bool {
    if !is_sum_free(s) {
        return false;
    }
    let g = s.group();
    for x in 0..g.order() {
        if !s.contains(x) && extends_sum_free(s, x) {
            return false;
        }
    }
    true
}

/// Greedy single-pass extension of a sum-free set to a maximal one, in
/// index order. Deterministic.
pub fn extend_to_maximal(s: &ElementSet) -> ElementSet {
    debug_assert!(is_sum_free(s));
    let g = s.group().clone();
    let mut out = s.clone();
    for x in 0..g.order() {
        if !out.contains(x) && extends_sum_free(&out, x) {
            out.insert(x);
        }
    }
    out
}

/// Backtracking state shared by the exhaustive enumeration entry points.
struct Search {
    n: usize,
    add: Vec<u32>,
    neg: Vec<u32>,
    halves: Vec<Vec<u32>>,
    members: Vec<u32>,
    in_set: Vec<bool>,
    blocked: Vec<u32>,
    undo: Vec<u32>,
}

impl Search {
    fn new(g: &GroupSpec) -> Self {
        let n = g.order() as usize;
        let mut add = vec![0u32; n * n];
        for i in 0..n as u64 {
            for j in i..n as u64 {
                let s = g.add_indices(i, j) as u32;
                add[(i * n as u64 + j) as usize] = s;
                add[(j * n as u64 + i) as usize] = s;
            }
        }
        let neg: Vec<u32> = (0..n as u64).map(|i| g.neg_index(i) as u32).collect();
        let mut halves = vec![Vec::new(); n];
        for z in 0..n {
            halves[add[z * n + z] as usize].push(z as u32);
        }
        let mut blocked = vec![0u32; n];
        blocked[0] = 1; // 0 + 0 = 0, so 0 never joins a sum-free set
        Search {
            n,
            add,
            neg,
            halves,
            members: Vec::new(),
            in_set: vec![false; n],
            blocked,
            undo: Vec::new(),
        }
    }

    #[inline]
    fn sum(&self, a: u32, b: u32) -> u32 {
        self.add[a as usize * self.n + b as usize]
    }

    fn block(&mut self, y: u32) {
        self.blocked[y as usize] += 1;
        self.undo.push(y);
    }

    /// Adds `x`, blocking every element that would now complete a Schur
    /// triple. Returns an undo mark.
    fn push(&mut self, x: u32) -> usize {
        let mark = self.undo.len();
        for i in 0..=self.members.len() {
            let s = if i == self.members.len() {
                x
            } else {
                self.members[i]
            };
            let nx = self.neg[x as usize];
            let ns = self.neg[s as usize];
            self.block(self.sum(x, s)); // y = x + s
            self.block(self.sum(s, nx)); // y + x = s
            self.block(self.sum(x, ns)); // y + s = x
        }
        for i in 0..self.halves[x as usize].len() {
            let z = self.halves[x as usize][i];
            self.block(z); // z + z = x
        }
        self.members.push(x);
        self.in_set[x as usize] = true;
        mark
    }

    fn pop(&mut self, mark: usize) {
        while self.undo.len() > mark {
            let y = self.undo.pop().unwrap();
            self.blocked[y as usize] -= 1;
        }
        let x = self.members.pop().unwrap();
        self.in_set[x as usize] = false;
    }

    fn is_maximal(&self) -> bool {
        (0..self.n).all(|y| self.in_set[y] || self.blocked[y] > 0)
    }

    fn run<F: FnMut(&[u32], bool)>(&mut self, i: usize, visitor: &mut F) {
        if i == self.n {
            let maximal = self.is_maximal();
            visitor(&self.members, maximal);
            return;
        }
        if self.blocked[i] == 0 {
            let mark = self.push(i as u32);
            self.run(i + 1, visitor);
            self.pop(mark);
        }
        self.run(i + 1, visitor);
    }
}

/// Visits every sum-free subset of `g` exactly once. The visitor receives
/// the member indices and whether the set is maximal sum-free.
pub(crate) fn visit_sum_free_sets<F: FnMut(&[u32], bool)>(g: &GroupSpec, mut visitor: F) {
    let mut search = Search::new(g);
    search.run(0, &mut visitor);
}

/// Exact maximum sum-free cardinality with a witness, by exhaustive search.
pub fn max_sumfree_bruteforce(g: &GroupSpec, cap: u64) -> Result<(u64, ElementSet)> {
    if g.order() > cap {
        return Err(Error::EnumerationCap {
            what: "max sum-free search",
            got: g.order(),
            cap,
        });
    }
    let mut best: Vec<u32> = Vec::new();
    visit_sum_free_sets(g, |members, _| {
        if members.len() > best.len() {
            best = members.to_vec();
        }
    });
    let indices: Vec<u64> = best.iter().map(|&i| i as u64).collect();
    Ok((
        indices.len() as u64,
        ElementSet::from_indices(g.clone(), &indices),
    ))
}

/// Exact count of maximal sum-free subsets, optionally listing them.
pub fn enumerate_maximal_sumfree(
    g: &GroupSpec,
    want_witnesses: bool,
    cap: u64,
) -> Result<MsfReport> {
    if g.order() > cap {
        return Err(Error::EnumerationCap {
            what: "maximal sum-free enumeration",
            got: g.order(),
            cap,
        });
    }
    let start = Instant::now();
    let mut count = BigUint::zero();
    let mut witnesses = if want_witnesses { Some(Vec::new()) } else { None };
    visit_sum_free_sets(g, |members, maximal| {
        if maximal {
            count += 1u32;
            if let Some(w) = witnesses.as_mut() {
                let indices: Vec<u64> = members.iter().map(|&i| i as u64).collect();
                w.push(ElementSet::from_indices(g.clone(), &indices));
            }
        }
    });
    if let Some(w) = witnesses.as_mut() {
        w.sort_by_key(|s| s.indices().collect::<Vec<_>>());
        debug_assert!(w.iter().all(is_maximal_sum_free));
    }
    Ok(MsfReport {
        count,
        witnesses,
        elapsed: start.elapsed(),
    })
}

/// Exact number of sum-free subsets, the empty set included.
pub fn count_sumfree(g: &GroupSpec, cap: u64) -> Result<BigUint> {
    if g.order() > cap {
        return Err(Error::EnumerationCap {
            what: "sum-free subset count",
            got: g.order(),
            cap,
        });
    }
    let mut count = BigUint::zero();
    visit_sum_free_sets(g, |_, _| count += 1u32);
    Ok(count)
}

const NAIVE_CAP: u64 = 24;

/// Naive counting route over all `2^n` subset masks. Independent of the
/// backtracking enumerator; used as its oracle.
pub fn maximal_sumfree_naive(g: &GroupSpec) -> Result<BigUint> {
    let n = g.order();
    if n > NAIVE_CAP {
        return Err(Error::EnumerationCap {
            what: "naive subset filter",
            got: n,
            cap: NAIVE_CAP,
        });
    }
    let n = n as usize;
    let mut add = vec![0u32; n * n];
    for i in 0..n as u64 {
        for j in 0..n as u64 {
            add[(i * n as u64 + j) as usize] = g.add_indices(i, j) as u32;
        }
    }
    let total = 1u64 << n;
    let mut sumfree = vec![false; total as usize];
    for mask in 0..total {
        let mut ok = true;
        'outer: for a in 0..n {
            if mask >> a & 1 == 0 {
                continue;
            }
            for b in a..n {
                if mask >> b & 1 == 1 && mask >> add[a * n + b] & 1 == 1 {
                    ok = false;
                    break 'outer;
                }
            }
        }
        sumfree[mask as usize] = ok;
    }
    let mut count = 0u64;
    for mask in 0..total {
        if !sumfree[mask as usize] {
            continue;
        }
        let maximal = (0..n)
            .all(|x| mask >> x & 1 == 1 || !sumfree[(mask | 1 << x) as usize]);
        if maximal {
            count += 1;
        }
    }
    Ok(BigUint::from(count))
}

/// Searches for a homomorphism into `Z_p` whose middle band
/// `{k+1, ..., 2k+1}` (with `p = 3k+2`) covers the sum-free set `A`.
///
/// Preconditions: the group is type I(p), `A` is sum-free and larger than
/// `(1/3 + 1/(3(p+1))) n`. A covering homomorphism must then exist;
/// `Ok(None)` signals a falsified premise and callers treat it as a failure.
pub fn stability_cover(a: &ElementSet) -> Result<Option<CyclicHom>> {
    let g = a.group();
    let p = match g.classify() {
        GroupType::I(p) => p,
        other => {
            return Err(Error::Precondition(format!(
                "stability cover requires a type I group, got type {other}"
            )))
        }
    };
    if !is_sum_free(a) {
        return Err(Error::Precondition("set is not sum-free".into()));
    }
    let n = g.order();
    // |A| > (1/3 + 1/(3(p+1))) n, compared exactly
    if 3 * (p + 1) * a.len() <= (p + 2) * n {
        return Err(Error::Precondition(format!(
            "set of size {} does not exceed the stability threshold for n={n}, p={p}",
            a.len()
        )));
    }
    let k = (p - 2) / 3;
    for hom in g.homs_to_cyclic(p) {
        let covered = a
            .elements()
            .all(|e| (k + 1..=2 * k + 1).contains(&hom.apply(&e)));
        if covered {
            return Ok(Some(hom));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(g: &GroupSpec, idx: &[u64]) -> ElementSet {
        ElementSet::from_indices(g.clone(), idx)
    }

    #[test]
    fn schur_triple_examples() {
        let z10 = GroupSpec::parse("Z10").unwrap();
        // residue k of cyclic Z10 in primary form Z2*Z5
        let e = |v: i64| z10.element(&[v % 2, v % 5]).unwrap();
        assert!(is_schur_triple(&z10, &e(1), &e(2), &e(3)));
        assert!(is_schur_triple(&z10, &e(4), &e(4), &e(8)));
        let z7 = GroupSpec::parse("Z7").unwrap();
        let e = |v: i64| z7.element(&[v]).unwrap();
        assert!(!is_schur_triple(&z7, &e(1), &e(2), &e(4)));
    }

    #[test]
    fn sum_free_examples() {
        let z8 = GroupSpec::parse("Z8").unwrap();
        assert!(is_sum_free(&set(&z8, &[1, 3, 5, 7])));
        let z5 = GroupSpec::parse("Z5").unwrap();
        assert!(!is_sum_free(&set(&z5, &[1, 2])));
        assert!(is_sum_free(&set(&z5, &[])));
    }

    #[test]
    fn maximal_examples() {
        let z5 = GroupSpec::parse("Z5").unwrap();
        assert!(is_maximal_sum_free(&set(&z5, &[1, 4])));
        assert!(!is_maximal_sum_free(&set(&z5, &[1])));
        assert!(!is_maximal_sum_free(&set(&z5, &[1, 2])));
    }

    #[test]
    fn empty_set_maximal_only_in_trivial_group() {
        let trivial = GroupSpec::trivial();
        assert!(is_maximal_sum_free(&ElementSet::empty(trivial)));
        let z2 = GroupSpec::parse("Z2").unwrap();
        assert!(!is_maximal_sum_free(&ElementSet::empty(z2)));
    }

    #[test]
    fn bruteforce_max_examples() {
        let (size, witness) = max_sumfreeness("Z6");
        assert_eq!(size, 3);
        assert!(is_sum_free(&witness));
        assert_eq!(max_sumfreeness("Z7").0, 2);
        assert_eq!(max_sumfreeness("Z2").0, 1);
    }

    fn max_sumfreeness(spec: &str) -> (u64, ElementSet) {
        let g = GroupSpec::parse(spec).unwrap();
        max_sumfree_bruteforce(&g, 64).unwrap()
    }

    #[test]
    fn enumerate_examples() {
        let z5 = GroupSpec::parse("Z5").unwrap();
        let report = enumerate_maximal_sumfree(&z5, true, 64).unwrap();
        assert_eq!(report.count, BigUint::from(2u32));
        let listed: Vec<String> = report
            .witnesses
            .unwrap()
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(listed, vec!["{1,4}", "{2,3}"]);

        let z3 = GroupSpec::parse("Z3").unwrap();
        let report = enumerate_maximal_sumfree(&z3, true, 64).unwrap();
        assert_eq!(report.count, BigUint::from(2u32));
    }

    #[test]
    fn enumerate_matches_naive_small() {
        for spec in ["Z2", "Z3", "Z5", "Z8", "Z12", "Z2*Z4", "Z3^2", "Z2^3"] {
            let g = GroupSpec::parse(spec).unwrap();
            let fast = enumerate_maximal_sumfree(&g, false, 64).unwrap().count;
            let naive = maximal_sumfree_naive(&g).unwrap();
            assert_eq!(fast, naive, "{spec}");
        }
    }

    #[test]
    fn count_sumfree_examples() {
        let z3 = GroupSpec::parse("Z3").unwrap();
        assert_eq!(count_sumfree(&z3, 64).unwrap(), BigUint::from(3u32));
        let z2 = GroupSpec::parse("Z2").unwrap();
        assert_eq!(count_sumfree(&z2, 64).unwrap(), BigUint::from(2u32));
        assert_eq!(
            count_sumfree(&GroupSpec::trivial(), 64).unwrap(),
            BigUint::from(1u32)
        );
    }

    #[test]
    fn cap_is_enforced() {
        let g = GroupSpec::parse("Z30").unwrap();
        assert!(enumerate_maximal_sumfree(&g, false, 20).is_err());
        assert!(count_sumfree(&g, 20).is_err());
    }

    #[test]
    fn extend_to_maximal_is_maximal() {
        let z13 = GroupSpec::parse("Z13").unwrap();
        let s = set(&z13, &[5]);
        let m = extend_to_maximal(&s);
        assert!(is_maximal_sum_free(&m));
        assert!(s.is_subset(&m));
    }

    #[test]
    fn stability_cover_examples() {
        let z10 = GroupSpec::parse("Z10").unwrap();
        // odd residues of Z10 are the elements with first coordinate 1 in Z2*Z5
        let odds = ElementSet::from_predicate(z10.clone(), |e| e.residues()[0] == 1);
        assert_eq!(odds.len(), 5);
        let hom = stability_cover(&odds).unwrap().expect("cover must exist");
        assert_eq!(hom.modulus(), 2);
        for e in odds.elements() {
            assert_eq!(hom.apply(&e), 1);
        }

        let z5 = GroupSpec::parse("Z5").unwrap();
        let a = set(&z5, &[2, 3]);
        let hom = stability_cover(&a).unwrap().expect("cover must exist");
        assert_eq!(hom.modulus(), 5);
        for e in a.elements() {
            assert!((2..=3).contains(&hom.apply(&e)));
        }

        let bad = set(&z10, &[1, 2]);
        assert!(stability_cover(&bad).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn subsets_of_sum_free_are_sum_free(orders in proptest::collection::vec(2u64..8, 1..3), seed in any::<u64>()) {
            use rand::{Rng, SeedableRng};
            let g = GroupSpec::from_components(&orders).unwrap();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let (_, witness) = max_sumfree_bruteforce(&g, 64).unwrap();
            let mut sub = witness.clone();
            for i in witness.indices() {
                if rng.gen_bool(0.5) {
                    sub.remove(i);
                }
            }
            prop_assert!(is_sum_free(&sub));
        }
    }
}
