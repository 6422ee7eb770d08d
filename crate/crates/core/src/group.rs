//! Finite abelian groups in canonical primary decomposition.
//!
//! A group is stored as a sequence of cyclic prime-power orders sorted by
//! prime and then exponent, so isomorphism testing is a sequence comparison.
//! Elements are residue vectors, one coordinate per component, and carry a
//! fixed mixed-radix index that orders the whole group.

use std::fmt;

use crate::error::{Error, Result};
use crate::set::ElementSet;

/// Default cap on the group order accepted by parsing and construction.
pub const DEFAULT_ORDER_CAP: u64 = 1_000_000;

/// A finite abelian group as a direct sum of cyclic groups of prime-power
/// order, in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct GroupSpec {
    components: Vec<u64>,
}

/// An element of a [`GroupSpec`]: one reduced residue per component.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GroupElement {
    residues: Vec<u64>,
}

/// Group classification by primes congruent to 2 mod 3 and divisibility by 3.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GroupType {
    /// Order divisible by a prime `p = 2 (mod 3)`; carries the smallest such.
    I(u64),
    /// No prime `p = 2 (mod 3)` divides the order, but 3 does.
    II,
    /// Neither applies; carries the group exponent.
    III(u64),
}

/// A homomorphism into the cyclic group `Z_p`, given by the image of each
/// component generator.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CyclicHom {
    modulus: u64,
    images: Vec<u64>,
}

pub(crate) fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0u32;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn smallest_prime_factor(n: u64) -> u64 {
    debug_assert!(n >= 2);
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            return p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    n
}

fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

impl GroupSpec {
    /// The trivial group (empty component list, order 1).
    pub fn trivial() -> Self {
        GroupSpec {
            components: Vec::new(),
        }
    }

    /// Builds the canonical spec from cyclic orders, splitting composite
    /// orders by CRT into prime-power components.
    pub fn from_components(orders: &[u64]) -> Result<Self> {
        Self::from_components_with_cap(orders, DEFAULT_ORDER_CAP)
    }

    pub fn from_components_with_cap(orders: &[u64], cap: u64) -> Result<Self> {
        let mut components = Vec::new();
        let mut n: u128 = 1;
        for &m in orders {
            if m < 2 {
                return Err(Error::ComponentTooSmall(m));
            }
            n *= m as u128;
            if n > cap as u128 {
                return Err(Error::OrderCap { got: n, cap });
            }
            for (p, e) in factor(m) {
                components.push(p.pow(e));
            }
        }
        components.sort_by_key(|&pp| (smallest_prime_factor(pp), pp));
        Ok(GroupSpec { components })
    }

    /// Parses the spec grammar `Term ('*' Term)*` with `Term := 'Z' INT ('^' INT)?`.
    ///
    /// `^k` repeats the component `k` times. Isomorphic spellings parse to
    /// the identical canonical spec.
    pub fn parse(text: &str) -> Result<Self> {
        Self::parse_with_cap(text, DEFAULT_ORDER_CAP)
    }

    pub fn parse_with_cap(text: &str, cap: u64) -> Result<Self> {
        let mut orders = Vec::new();
        for raw in text.split('*') {
            let term = raw.trim();
            let rest = term
                .strip_prefix('Z')
                .ok_or_else(|| Error::Parse(term.to_string()))?;
            let (base_str, rep_str) = match rest.split_once('^') {
                Some((b, r)) => (b, Some(r)),
                None => (rest, None),
            };
            let base: u64 = base_str
                .parse()
                .map_err(|_| Error::Parse(term.to_string()))?;
            if base < 2 {
                return Err(Error::ComponentTooSmall(base));
            }
            let reps: u64 = match rep_str {
                Some(r) => r.parse().map_err(|_| Error::Parse(term.to_string()))?,
                None => 1,
            };
            if reps == 0 {
                return Err(Error::Parse(term.to_string()));
            }
            for _ in 0..reps {
                orders.push(base);
            }
        }
        if orders.is_empty() {
            return Err(Error::Parse(text.to_string()));
        }
        Self::from_components_with_cap(&orders, cap)
    }

    /// Canonical component orders, sorted by prime then exponent.
    pub fn components(&self) -> &[u64] {
        &self.components
    }

    /// Group order.
    pub fn order(&self) -> u64 {
        self.components.iter().product()
    }

    /// Number of components of even order (`2^r` bounds solutions of `2x=g`).
    pub fn two_rank(&self) -> u32 {
        self.components.iter().filter(|&&m| m % 2 == 0).count() as u32
    }

    /// Total exponent of 2 in the group order.
    pub fn two_exponent(&self) -> u32 {
        self.components
            .iter()
            .filter(|&&m| m % 2 == 0)
            .map(|&m| m.trailing_zeros())
            .sum()
    }

    /// Group exponent: the lcm of the component orders.
    pub fn exponent(&self) -> u64 {
        self.components
            .iter()
            .fold(1u64, |acc, &m| acc / gcd(acc, m) * m)
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            residues: vec![0; self.components.len()],
        }
    }

    /// Builds an element from signed coordinates, reducing each modulo the
    /// component order.
    pub fn element(&self, residues: &[i64]) -> Result<GroupElement> {
        if residues.len() != self.components.len() {
            return Err(Error::ElementMismatch {
                got: residues.len(),
                want: self.components.len(),
            });
        }
        let reduced = residues
            .iter()
            .zip(&self.components)
            .map(|(&a, &m)| a.rem_euclid(m as i64) as u64)
            .collect();
        Ok(GroupElement { residues: reduced })
    }

    fn check(&self, a: &GroupElement) {
        assert_eq!(
            a.residues.len(),
            self.components.len(),
            "element does not belong to this group"
        );
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.check(a);
        self.check(b);
        let residues = a
            .residues
            .iter()
            .zip(&b.residues)
            .zip(&self.components)
            .map(|((&x, &y), &m)| (x + y) % m)
            .collect();
        GroupElement { residues }
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        self.check(a);
        let residues = a
            .residues
            .iter()
            .zip(&self.components)
            .map(|(&x, &m)| if x == 0 { 0 } else { m - x })
            .collect();
        GroupElement { residues }
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.add(a, &self.neg(b))
    }

    pub fn scalar_mul(&self, k: i64, a: &GroupElement) -> GroupElement {
        self.check(a);
        let residues = a
            .residues
            .iter()
            .zip(&self.components)
            .map(|(&x, &m)| {
                let k = k.rem_euclid(m as i64) as u128;
                ((k * x as u128) % m as u128) as u64
            })
            .collect();
        GroupElement { residues }
    }

    /// Order of an element: lcm of its per-coordinate orders.
    pub fn element_order(&self, a: &GroupElement) -> u64 {
        self.check(a);
        a.residues
            .iter()
            .zip(&self.components)
            .map(|(&x, &m)| m / gcd(x, m))
            .fold(1u64, |acc, o| acc / gcd(acc, o) * o)
    }

    /// Mixed-radix index of an element; fixes a total order on the group.
    pub fn index_of(&self, a: &GroupElement) -> u64 {
        self.check(a);
        let mut idx = 0u64;
        let mut stride = 1u64;
        for (&x, &m) in a.residues.iter().zip(&self.components) {
            idx += x * stride;
            stride *= m;
        }
        idx
    }

    pub fn element_of_index(&self, mut idx: u64) -> GroupElement {
        debug_assert!(idx < self.order());
        let residues = self
            .components
            .iter()
            .map(|&m| {
                let r = idx % m;
                idx /= m;
                r
            })
            .collect();
        GroupElement { residues }
    }

    pub fn add_indices(&self, i: u64, j: u64) -> u64 {
        let mut a = i;
        let mut b = j;
        let mut idx = 0u64;
        let mut stride = 1u64;
        for &m in &self.components {
            let r = (a % m + b % m) % m;
            a /= m;
            b /= m;
            idx += r * stride;
            stride *= m;
        }
        idx
    }

    pub fn neg_index(&self, i: u64) -> u64 {
        let mut a = i;
        let mut idx = 0u64;
        let mut stride = 1u64;
        for &m in &self.components {
            let r = a % m;
            a /= m;
            idx += if r == 0 { 0 } else { m - r } * stride;
            stride *= m;
        }
        idx
    }

    pub fn sub_indices(&self, i: u64, j: u64) -> u64 {
        self.add_indices(i, self.neg_index(j))
    }

    /// All group elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order()).map(move |i| self.element_of_index(i))
    }

    /// Classifies the group per the type I(p) / II / III trichotomy.
    pub fn classify(&self) -> GroupType {
        let mut primes: Vec<u64> = self
            .components
            .iter()
            .map(|&pp| smallest_prime_factor(pp))
            .collect();
        primes.sort_unstable();
        primes.dedup();
        if let Some(&p) = primes.iter().find(|&&p| p % 3 == 2) {
            GroupType::I(p)
        } else if primes.contains(&3) {
            GroupType::II
        } else {
            GroupType::III(self.exponent())
        }
    }

    /// Cardinality of a largest sum-free subset, by the closed formula:
    /// `n(1/3 + 1/3p)` for type I(p), `n/3` for type II, and
    /// `n(1/3 - 1/3m)` for type III with exponent `m`.
    ///
    /// The density times `n` is always an integer for the matching type;
    /// non-divisibility would indicate a classification bug and panics.
    pub fn mu(&self) -> u64 {
        let n = self.order();
        if n == 1 {
            return 0;
        }
        let (num, den) = match self.classify() {
            GroupType::I(p) => (n * (p + 1), 3 * p),
            GroupType::II => (n, 3),
            GroupType::III(m) => (n * (m - 1), 3 * m),
        };
        assert!(
            num % den == 0,
            "mu density is non-integral for {self}: {num}/{den}"
        );
        num / den
    }

    /// The exact solution set of `2x = g`. Its size is zero or a power of 2
    /// dividing `2^r` where `r` counts even-order components.
    pub fn solve_double(&self, g: &GroupElement) -> ElementSet {
        self.check(g);
        let mut coords: Vec<Vec<u64>> = Vec::with_capacity(self.components.len());
        for (&gv, &m) in g.residues.iter().zip(&self.components) {
            if m % 2 == 1 {
                // doubling is a bijection on odd-order components
                let inv2 = (m + 1) / 2;
                coords.push(vec![(gv as u128 * inv2 as u128 % m as u128) as u64]);
            } else if gv % 2 == 0 {
                coords.push(vec![gv / 2, gv / 2 + m / 2]);
            } else {
                coords.push(Vec::new());
            }
        }
        let mut set = ElementSet::empty(self.clone());
        if coords.iter().any(|c| c.is_empty()) {
            return set;
        }
        // cartesian product over per-component solutions
        let mut current = vec![0u64; self.components.len()];
        fn rec(coords: &[Vec<u64>], current: &mut Vec<u64>, depth: usize, set: &mut ElementSet) {
            if depth == coords.len() {
                let e = GroupElement {
                    residues: current.clone(),
                };
                set.insert_element(&e);
                return;
            }
            for &v in &coords[depth] {
                current[depth] = v;
                rec(coords, current, depth + 1, set);
            }
        }
        rec(&coords, &mut current, 0, &mut set);
        set
    }

    /// All homomorphisms into `Z_p` for prime `p`, each given by the images
    /// of the component generators. A component of order `m` admits `p`
    /// generator images when `p | m` and only the trivial image otherwise.
    pub fn homs_to_cyclic(&self, p: u64) -> Vec<CyclicHom> {
        let choices: Vec<u64> = self
            .components
            .iter()
            .map(|&m| if m % p == 0 { p } else { 1 })
            .collect();
        let total: u64 = choices.iter().product();
        let mut out = Vec::with_capacity(total as usize);
        for mut code in 0..total {
            let images = choices
                .iter()
                .map(|&c| {
                    let img = code % c;
                    code /= c;
                    img
                })
                .collect();
            out.push(CyclicHom { modulus: p, images });
        }
        out
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "Z1");
        }
        let mut sorted = self.components.clone();
        sorted.sort_unstable();
        let mut parts = Vec::new();
        let mut i = 0;
        while i < sorted.len() {
            let m = sorted[i];
            let mut j = i;
            while j < sorted.len() && sorted[j] == m {
                j += 1;
            }
            if j - i == 1 {
                parts.push(format!("Z{m}"));
            } else {
                parts.push(format!("Z{m}^{}", j - i));
            }
            i = j;
        }
        write!(f, "{}", parts.join("*"))
    }
}

impl GroupElement {
    pub fn residues(&self) -> &[u64] {
        &self.residues
    }

    pub fn is_zero(&self) -> bool {
        self.residues.iter().all(|&r| r == 0)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.residues.len() == 1 {
            write!(f, "{}", self.residues[0])
        } else {
            let parts: Vec<String> = self.residues.iter().map(|r| r.to_string()).collect();
            write!(f, "({})", parts.join(","))
        }
    }
}

impl fmt::Display for GroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupType::I(p) => write!(f, "I({p})"),
            GroupType::II => write!(f, "II"),
            GroupType::III(m) => write!(f, "III({m})"),
        }
    }
}

impl CyclicHom {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn images(&self) -> &[u64] {
        &self.images
    }

    /// Image of an element under the homomorphism.
    pub fn apply(&self, a: &GroupElement) -> u64 {
        let mut acc: u128 = 0;
        for (&r, &img) in a.residues.iter().zip(&self.images) {
            acc += r as u128 * img as u128;
        }
        (acc % self.modulus as u128) as u64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_canonicalizes_isomorphic_spellings() {
        let a = GroupSpec::parse("Z6").unwrap();
        let b = GroupSpec::parse("Z2*Z3").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.components(), &[2, 3]);
    }

    #[test]
    fn parse_repeat_components() {
        let g = GroupSpec::parse("Z2^3*Z4").unwrap();
        assert_eq!(g.components(), &[2, 2, 2, 4]);
        assert_eq!(g.two_rank(), 4);
        assert_eq!(g.order(), 32);
    }

    #[test]
    fn parse_rejects_degenerate_and_malformed() {
        assert!(GroupSpec::parse("Z1").is_err());
        assert!(GroupSpec::parse("Z").is_err());
        assert!(GroupSpec::parse("5").is_err());
        assert!(GroupSpec::parse("Z4^0").is_err());
        assert!(GroupSpec::parse("").is_err());
    }

    #[test]
    fn parse_respects_order_cap() {
        assert!(GroupSpec::parse_with_cap("Z1024", 1000).is_err());
        assert!(GroupSpec::parse_with_cap("Z1000", 1000).is_ok());
    }

    #[test]
    fn arithmetic_examples() {
        let z5 = GroupSpec::parse("Z5").unwrap();
        let s = z5.add(&z5.element(&[3]).unwrap(), &z5.element(&[4]).unwrap());
        assert_eq!(s.residues(), &[2]);

        let g = GroupSpec::parse("Z2*Z4").unwrap();
        let s = g.add(&g.element(&[1, 3]).unwrap(), &g.element(&[1, 2]).unwrap());
        assert_eq!(s.residues(), &[0, 1]);
    }

    #[test]
    fn orders_and_exponent() {
        let z9 = GroupSpec::parse("Z9").unwrap();
        assert_eq!(z9.element_order(&z9.element(&[3]).unwrap()), 3);
        let g = GroupSpec::parse("Z2*Z4").unwrap();
        assert_eq!(g.exponent(), 4);
        let z7 = GroupSpec::parse("Z7").unwrap();
        assert_eq!(z7.element_order(&z7.zero()), 1);
    }

    #[test]
    fn classification() {
        assert_eq!(GroupSpec::parse("Z10").unwrap().classify(), GroupType::I(2));
        assert_eq!(GroupSpec::parse("Z9").unwrap().classify(), GroupType::II);
        assert_eq!(GroupSpec::parse("Z7").unwrap().classify(), GroupType::III(7));
        assert_eq!(GroupSpec::parse("Z35").unwrap().classify(), GroupType::I(5));
    }

    #[test]
    fn mu_values() {
        assert_eq!(GroupSpec::parse("Z6").unwrap().mu(), 3);
        assert_eq!(GroupSpec::parse("Z3").unwrap().mu(), 1);
        assert_eq!(GroupSpec::parse("Z7").unwrap().mu(), 2);
        assert_eq!(GroupSpec::trivial().mu(), 0);
    }

    #[test]
    fn solve_double_examples() {
        let g = GroupSpec::parse("Z2*Z4").unwrap();
        let sol = g.solve_double(&g.element(&[0, 2]).unwrap());
        let mut found: Vec<Vec<u64>> = sol.elements().map(|e| e.residues().to_vec()).collect();
        found.sort();
        assert_eq!(
            found,
            vec![vec![0, 1], vec![0, 3], vec![1, 1], vec![1, 3]]
        );

        let z5 = GroupSpec::parse("Z5").unwrap();
        let sol = z5.solve_double(&z5.element(&[3]).unwrap());
        assert_eq!(sol.len(), 1);
        assert!(sol.contains_element(&z5.element(&[4]).unwrap()));

        let z15 = GroupSpec::parse("Z15").unwrap();
        let sol = z15.solve_double(&z15.zero());
        assert_eq!(sol.len(), 1);
        assert!(sol.contains_element(&z15.zero()));
    }

    #[test]
    fn homs_examples() {
        assert_eq!(GroupSpec::parse("Z10").unwrap().homs_to_cyclic(2).len(), 2);
        assert_eq!(GroupSpec::parse("Z3").unwrap().homs_to_cyclic(2).len(), 1);
        assert_eq!(GroupSpec::parse("Z5^2").unwrap().homs_to_cyclic(5).len(), 25);
    }

    #[test]
    fn homs_are_homomorphisms() {
        let g = GroupSpec::parse("Z4*Z6").unwrap();
        for hom in g.homs_to_cyclic(2) {
            for a in g.elements() {
                for b in g.elements() {
                    let lhs = hom.apply(&g.add(&a, &b));
                    let rhs = (hom.apply(&a) + hom.apply(&b)) % 2;
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn roundtrip_print_parse(orders in proptest::collection::vec(2u64..30, 1..4)) {
            if let Ok(g) = GroupSpec::from_components(&orders) {
                let printed = g.to_string();
                let reparsed = GroupSpec::parse(&printed).unwrap();
                prop_assert_eq!(g, reparsed);
            }
        }

        #[test]
        fn group_axioms(orders in proptest::collection::vec(2u64..16, 1..4), i in 0u64..1000, j in 0u64..1000) {
            let g = GroupSpec::from_components(&orders).unwrap();
            let n = g.order();
            let a = g.element_of_index(i % n);
            let b = g.element_of_index(j % n);
            prop_assert_eq!(g.add(&a, &b), g.add(&b, &a));
            prop_assert!(g.add(&a, &g.neg(&a)).is_zero());
            prop_assert_eq!(g.add(&a, &g.zero()), a.clone());
            prop_assert_eq!(g.index_of(&g.add(&a, &b)), g.add_indices(g.index_of(&a), g.index_of(&b)));
        }

        #[test]
        fn element_order_divides_exponent(orders in proptest::collection::vec(2u64..16, 1..4), i in 0u64..1000) {
            let g = GroupSpec::from_components(&orders).unwrap();
            let a = g.element_of_index(i % g.order());
            let m = g.exponent();
            prop_assert_eq!(m % g.element_order(&a), 0);
            prop_assert_eq!(g.order() % m, 0);
        }

        #[test]
        fn solve_double_membership(orders in proptest::collection::vec(2u64..12, 1..4), i in 0u64..1000) {
            let g = GroupSpec::from_components(&orders).unwrap();
            let target = g.element_of_index(i % g.order());
            let sol = g.solve_double(&target);
            prop_assert!(sol.len() <= 1u64 << g.two_rank());
            for x in sol.elements() {
                prop_assert_eq!(g.add(&x, &x), target.clone());
            }
            // sizes are 0 or a power of 2
            let len = sol.len();
            prop_assert!(len == 0 || len.is_power_of_two());
        }
    }
}
