//! Exact maximal-independent-set enumeration on loop-decorated graphs.
//!
//! An independent set never contains a looped vertex and no adjacent pair;
//! it is maximal when no further non-looped vertex can join. Counting
//! branches on a maximum-degree vertex (ties to the lowest index) and keeps
//! excluded-but-undominated vertices explicit, so only maximal sets reach
//! the leaves.

use std::fmt::Write as _;

use num_bigint::BigUint;
use rand::Rng;

use crate::error::{Error, Result};

/// Hard cap for exact enumeration; the structural representation itself
/// accepts larger graphs.
pub const ENUMERATION_VERTEX_CAP: usize = 128;

/// An undirected graph with at most one loop per vertex and no parallel
/// edges. Loops are vertex flags, not edges.
#[derive(Clone, Debug)]
pub struct SimpleGraph {
    adj: Vec<Vec<usize>>,
    loops: Vec<bool>,
}

impl SimpleGraph {
    pub fn new(n: usize) -> Self {
        SimpleGraph {
            adj: vec![Vec::new(); n],
            loops: vec![false; n],
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    /// Number of non-loop edges.
    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    pub fn loop_count(&self) -> usize {
        self.loops.iter().filter(|&&l| l).count()
    }

    /// Adds an undirected edge; `u == v` sets a loop instead.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        if u == v {
            self.set_loop(u);
            return;
        }
        if !self.adj[u].contains(&v) {
            self.adj[u].push(v);
            self.adj[v].push(u);
            self.adj[u].sort_unstable();
            self.adj[v].sort_unstable();
        }
    }

    pub fn set_loop(&mut self, v: usize) {
        self.loops[v] = true;
    }

    pub fn has_loop(&self, v: usize) -> bool {
        self.loops[v]
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Degree with a loop contributing two.
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len() + if self.loops[v] { 2 } else { 0 }
    }

    pub fn max_degree(&self) -> usize {
        (0..self.vertex_count())
            .map(|v| self.degree(v))
            .max()
            .unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        (0..self.vertex_count())
            .map(|v| self.degree(v))
            .min()
            .unwrap_or(0)
    }

    pub fn is_triangle_free(&self) -> bool {
        self.triangles_exist_witness().is_none()
    }

    fn triangles_exist_witness(&self) -> Option<[usize; 3]> {
        for u in 0..self.vertex_count() {
            for &v in &self.adj[u] {
                if v <= u {
                    continue;
                }
                for &w in &self.adj[v] {
                    if w > v && self.has_edge(u, w) {
                        return Some([u, v, w]);
                    }
                }
            }
        }
        None
    }

    /// All triangles `u < v < w`, loops ignored, in lexicographic order.
    pub fn triangles(&self) -> Vec<[usize; 3]> {
        let mut out = Vec::new();
        for u in 0..self.vertex_count() {
            for &v in &self.adj[u] {
                if v <= u {
                    continue;
                }
                for &w in &self.adj[v] {
                    if w > v && self.has_edge(u, w) {
                        out.push([u, v, w]);
                    }
                }
            }
        }
        out
    }

    /// Induced subgraph on the vertices not in `removed`, preserving the
    /// relative vertex order.
    pub fn without_vertices(&self, removed: &[usize]) -> SimpleGraph {
        let n = self.vertex_count();
        let mut keep = vec![true; n];
        for &v in removed {
            keep[v] = false;
        }
        let mut new_id = vec![usize::MAX; n];
        let mut count = 0;
        for v in 0..n {
            if keep[v] {
                new_id[v] = count;
                count += 1;
            }
        }
        let mut g = SimpleGraph::new(count);
        for v in 0..n {
            if !keep[v] {
                continue;
            }
            if self.loops[v] {
                g.set_loop(new_id[v]);
            }
            for &u in &self.adj[v] {
                if u > v && keep[u] {
                    g.add_edge(new_id[v], new_id[u]);
                }
            }
        }
        g
    }

    /// Parses the edge-list text format: a header line with the vertex
    /// count, then `u v` edge lines and `loop u` lines. `#` starts a
    /// comment.
    pub fn parse_edge_list(text: &str) -> Result<SimpleGraph> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::GraphParse("missing vertex-count header".into()))?;
        let n: usize = header
            .parse()
            .map_err(|_| Error::GraphParse(format!("bad header `{header}`")))?;
        let mut g = SimpleGraph::new(n);
        let check = |v: usize| -> Result<usize> {
            if v < n {
                Ok(v)
            } else {
                Err(Error::GraphParse(format!("vertex {v} out of range 0..{n}")))
            }
        };
        for line in lines {
            let mut toks = line.split_whitespace();
            match (toks.next(), toks.next(), toks.next()) {
                (Some("loop"), Some(u), None) => {
                    let u = u
                        .parse()
                        .map_err(|_| Error::GraphParse(format!("bad line `{line}`")))?;
                    g.set_loop(check(u)?);
                }
                (Some(u), Some(v), None) => {
                    let parse = |t: &str| -> Result<usize> {
                        t.parse()
                            .map_err(|_| Error::GraphParse(format!("bad line `{line}`")))
                    };
                    g.add_edge(check(parse(u)?)?, check(parse(v)?)?);
                }
                _ => return Err(Error::GraphParse(format!("bad line `{line}`"))),
            }
        }
        Ok(g)
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{}\n", self.vertex_count());
        for v in 0..self.vertex_count() {
            if self.loops[v] {
                let _ = writeln!(out, "loop {v}");
            }
            for &u in &self.adj[v] {
                if u > v {
                    let _ = writeln!(out, "{v} {u}");
                }
            }
        }
        out
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph {\n");
        for v in 0..self.vertex_count() {
            let _ = writeln!(out, "  {v};");
            if self.loops[v] {
                let _ = writeln!(out, "  {v} -- {v};");
            }
        }
        for v in 0..self.vertex_count() {
            for &u in &self.adj[v] {
                if u > v {
                    let _ = writeln!(out, "  {v} -- {u};");
                }
            }
        }
        out.push_str("}\n");
        out
    }

    fn masks(&self) -> Result<Vec<u128>> {
        let n = self.vertex_count();
        if n > ENUMERATION_VERTEX_CAP {
            return Err(Error::GraphCap {
                got: n,
                cap: ENUMERATION_VERTEX_CAP,
            });
        }
        let mut masks = vec![0u128; n];
        for v in 0..n {
            for &u in &self.adj[v] {
                masks[v] |= 1 << u;
            }
        }
        Ok(masks)
    }

    fn initial_free(&self) -> u128 {
        let mut free = 0u128;
        for v in 0..self.vertex_count() {
            if !self.loops[v] {
                free |= 1 << v;
            }
        }
        free
    }

    /// Exact number of maximal independent sets.
    pub fn count_mis(&self) -> Result<BigUint> {
        let masks = self.masks()?;
        Ok(BigUint::from(count_rec(&masks, self.initial_free(), 0)))
    }

    /// Enumerates every maximal independent set in a deterministic order,
    /// passing the sorted vertex list to the callback.
    pub fn for_each_mis<F: FnMut(&[usize])>(&self, mut callback: F) -> Result<BigUint> {
        let masks = self.masks()?;
        let mut current = Vec::new();
        let mut count = 0u128;
        let mut scratch = Vec::new();
        emit_rec(
            &masks,
            self.initial_free(),
            0,
            &mut current,
            &mut |set: &mut Vec<usize>| {
                scratch.clear();
                scratch.extend_from_slice(set);
                scratch.sort_unstable();
                callback(&scratch);
                count += 1;
            },
        );
        Ok(BigUint::from(count))
    }

    /// Naive MIS count filtering all vertex subsets; the independence
    /// oracle for the branching counter.
    pub fn count_mis_naive(&self) -> Result<BigUint> {
        let n = self.vertex_count();
        if n > 25 {
            return Err(Error::GraphCap { got: n, cap: 25 });
        }
        let masks = self.masks()?;
        let loops: u32 = (0..n).fold(0, |acc, v| acc | (u32::from(self.loops[v]) << v));
        let mut count = 0u64;
        for mask in 0u32..1 << n {
            if mask & loops != 0 {
                continue;
            }
            let mut independent = true;
            for v in 0..n {
                if mask >> v & 1 == 1 && masks[v] as u32 & mask != 0 {
                    independent = false;
                    break;
                }
            }
            if !independent {
                continue;
            }
            let mut maximal = true;
            for v in 0..n {
                if mask >> v & 1 == 0
                    && loops >> v & 1 == 0
                    && masks[v] as u32 & mask == 0
                {
                    maximal = false;
                    break;
                }
            }
            if maximal {
                count += 1;
            }
        }
        Ok(BigUint::from(count))
    }
}

/// Branch on a maximum-degree free vertex; prune when an excluded vertex can
/// no longer be dominated.
fn count_rec(masks: &[u128], free: u128, excluded: u128) -> u128 {
    let mut ex = excluded;
    while ex != 0 {
        let v = ex.trailing_zeros() as usize;
        if masks[v] & free == 0 {
            return 0;
        }
        ex &= ex - 1;
    }
    if free == 0 {
        return u128::from(excluded == 0);
    }
    let v = pick_branch_vertex(masks, free);
    let bit = 1u128 << v;
    // v in the set: drop N[v] from play, its neighbors are dominated
    let taken = count_rec(masks, free & !bit & !masks[v], excluded & !masks[v]);
    // v out of the set: it must be dominated later
    let skipped = count_rec(masks, free & !bit, excluded | bit);
    taken + skipped
}

fn emit_rec(
    masks: &[u128],
    free: u128,
    excluded: u128,
    current: &mut Vec<usize>,
    sink: &mut impl FnMut(&mut Vec<usize>),
) {
    let mut ex = excluded;
    while ex != 0 {
        let v = ex.trailing_zeros() as usize;
        if masks[v] & free == 0 {
            return;
        }
        ex &= ex - 1;
    }
    if free == 0 {
        if excluded == 0 {
            let len = current.len();
            sink(current);
            current.truncate(len);
        }
        return;
    }
    let v = pick_branch_vertex(masks, free);
    let bit = 1u128 << v;
    current.push(v);
    emit_rec(
        masks,
        free & !bit & !masks[v],
        excluded & !masks[v],
        current,
        sink,
    );
    current.pop();
    emit_rec(masks, free & !bit, excluded | bit, current, sink);
}

fn pick_branch_vertex(masks: &[u128], free: u128) -> usize {
    let mut best = usize::MAX;
    let mut best_deg = 0u32;
    let mut f = free;
    while f != 0 {
        let v = f.trailing_zeros() as usize;
        let deg = (masks[v] & free).count_ones();
        if best == usize::MAX || deg > best_deg {
            best = v;
            best_deg = deg;
        }
        f &= f - 1;
    }
    best
}

/// `mis(G) <= mis(G - v) + mis(G - N[v])`, evaluated exactly.
pub fn neighborhood_recursion_holds(g: &SimpleGraph, v: usize) -> Result<bool> {
    let whole = g.count_mis()?;
    let without_v = g.without_vertices(&[v]).count_mis()?;
    let mut closed: Vec<usize> = g.neighbors(v).to_vec();
    closed.push(v);
    let without_closed = g.without_vertices(&closed).count_mis()?;
    Ok(whole <= without_v + without_closed)
}

/// Seeded Erdos-Renyi style graph, loop-free.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, edge_prob: f64) -> SimpleGraph {
    let mut g = SimpleGraph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(edge_prob) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// Disjoint union of `m` triangles.
pub fn disjoint_triangles(m: usize) -> SimpleGraph {
    let mut g = SimpleGraph::new(3 * m);
    for i in 0..m {
        let b = 3 * i;
        g.add_edge(b, b + 1);
        g.add_edge(b + 1, b + 2);
        g.add_edge(b, b + 2);
    }
    g
}

/// Perfect matching on `2m` vertices.
pub fn perfect_matching(m: usize) -> SimpleGraph {
    let mut g = SimpleGraph::new(2 * m);
    for i in 0..m {
        g.add_edge(2 * i, 2 * i + 1);
    }
    g
}

/// Disjoint union of `m` copies of the complete graph on four vertices.
pub fn disjoint_k4(m: usize) -> SimpleGraph {
    let mut g = SimpleGraph::new(4 * m);
    for i in 0..m {
        let b = 4 * i;
        for u in 0..4 {
            for v in u + 1..4 {
                g.add_edge(b + u, b + v);
            }
        }
    }
    g
}

pub fn cycle(n: usize) -> SimpleGraph {
    let mut g = SimpleGraph::new(n);
    for i in 0..n {
        g.add_edge(i, (i + 1) % n);
    }
    g
}

pub fn petersen() -> SimpleGraph {
    let mut g = SimpleGraph::new(10);
    for i in 0..5 {
        g.add_edge(i, (i + 1) % 5); // outer cycle
        g.add_edge(5 + i, 5 + (i + 2) % 5); // inner pentagram
        g.add_edge(i, 5 + i); // spokes
    }
    g
}

/// Two disjoint triangles joined by a perfect matching.
pub fn matched_triangle_pair() -> SimpleGraph {
    let mut g = disjoint_triangles(2);
    for i in 0..3 {
        g.add_edge(i, i + 3);
    }
    g
}
