//! The underlying simple graph: bitmask adjacency on at most 64 vertices,
//! the named generator families and the exact small-scale structure oracles.

use std::fmt;

use serde::Serialize;

use crate::algo;
use crate::certificate::BipartiteBoundary;
use crate::combinatorics::{binomial, bits, full_mask, gcd, KSubsets};
use crate::error::{out_of_range, Error, Result};
use crate::flow;

pub const MAX_VERTICES: usize = 64;
pub const AUTOMORPHISM_CAP: usize = 10;

/// Simple undirected graph on vertices `0..n`; `adj[v]` is the neighbor mask of `v`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimpleGraph {
    n: usize,
    adj: Vec<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StructureProfile {
    pub connected: bool,
    pub bipartite: bool,
    pub regular_degree: Option<usize>,
    pub diameter: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Density {
    Densest,
    LeastDense,
}

impl SimpleGraph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        Ok(SimpleGraph { n, adj: vec![0; n] })
    }

    /// Rejects self-loops, repeated edges and labels `>= n`.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        for x in [u, v] {
            if x >= self.n {
                return Err(Error::VertexOutOfRange { vertex: x, n: self.n });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if self.has_edge(u, v) {
            return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
        }
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertex_mask(&self) -> u64 {
        full_mask(self.n)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] >> v & 1 == 1
    }

    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|u| bits(self.adj[u] >> u >> 1).map(move |d| (u, u + 1 + d)))
            .collect()
    }

    pub fn neighbor_lists(&self) -> Vec<Vec<usize>> {
        self.adj.iter().map(|&m| bits(m).collect()).collect()
    }

    /// Common degree if every vertex has the same degree.
    pub fn regular_degree(&self) -> Option<usize> {
        if self.n == 0 {
            return None;
        }
        let d = self.degree(0);
        (0..self.n).all(|v| self.degree(v) == d).then_some(d)
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = 1u64;
        let mut frontier = 1u64;
        while frontier != 0 {
            let mut next = 0;
            for v in bits(frontier) {
                next |= self.adj[v];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen == self.vertex_mask()
    }

    pub fn complement(&self) -> SimpleGraph {
        let full = self.vertex_mask();
        let adj = (0..self.n).map(|v| full & !self.adj[v] & !(1 << v)).collect();
        SimpleGraph { n: self.n, adj }
    }

    fn check_subset(&self, s: u64) -> Result<()> {
        if s & !self.vertex_mask() != 0 {
            let vertex = (s & !self.vertex_mask()).trailing_zeros() as usize;
            return Err(Error::VertexOutOfRange { vertex, n: self.n });
        }
        Ok(())
    }

    /// Subgraph induced on `s`, relabelled `0..|s|` in ascending original order.
    pub fn induced_subgraph(&self, s: u64) -> Result<SimpleGraph> {
        self.check_subset(s)?;
        let verts: Vec<usize> = bits(s).collect();
        let mut g = SimpleGraph::empty(verts.len())?;
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.adj[i] |= 1 << j;
                    g.adj[j] |= 1 << i;
                }
            }
        }
        Ok(g)
    }

    /// `|E_s|`, edges with both ends in `s`.
    pub fn induced_edge_count(&self, s: u64) -> usize {
        bits(s).map(|v| (self.adj[v] & s).count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges with exactly one end in `s`.
    pub fn boundary_edge_count(&self, s: u64) -> usize {
        bits(s).map(|v| (self.adj[v] & !s).count_ones() as usize).sum()
    }

    /// Vertices outside `s` adjacent to some vertex of `s`.
    pub fn outer_boundary(&self, s: u64) -> u64 {
        bits(s).fold(0, |acc, v| acc | self.adj[v]) & !s
    }

    pub fn boundary_bipartite(&self, s: u64) -> Result<BipartiteBoundary> {
        self.check_subset(s)?;
        if s == 0 || s == self.vertex_mask() {
            return Err(Error::Precondition("boundary needs a nonempty proper subset".into()));
        }
        Ok(BipartiteBoundary::of(self, s))
    }

    pub fn structure_profile(&self) -> StructureProfile {
        let lists = self.neighbor_lists();
        let connected = self.is_connected();
        StructureProfile {
            connected,
            bipartite: algo::is_bipartite(&lists),
            regular_degree: self.regular_degree(),
            diameter: if connected { algo::diameter(&lists) } else { None },
        }
    }

    pub fn odd_girth(&self) -> Option<usize> {
        algo::odd_girth(&self.neighbor_lists())
    }

    /// Number of complete subgraphs on exactly `c` vertices.
    pub fn count_cliques(&self, c: usize) -> Result<u128> {
        if c < 1 || c > self.n {
            return Err(out_of_range("clique size", c, format!("1..={}", self.n)));
        }
        fn extend(g: &SimpleGraph, cand: u64, remaining: usize) -> u128 {
            if remaining == 0 {
                return 1;
            }
            if remaining == 1 {
                return cand.count_ones() as u128;
            }
            bits(cand)
                .map(|v| extend(g, cand & g.adj[v] & (u64::MAX << v << 1), remaining - 1))
                .sum()
        }
        Ok(extend(self, self.vertex_mask(), c))
    }

    pub fn vertex_connectivity(&self) -> Result<usize> {
        if self.n < 2 {
            return Err(Error::Precondition("connectivity needs at least two vertices".into()));
        }
        flow::vertex_connectivity(&self.neighbor_lists()).ok_or(Error::Disconnected)
    }

    /// The full automorphism group by backtracking, vertices mapped in label
    /// order and pruned on degree and adjacency to earlier images.
    pub fn automorphisms(&self, cap: usize) -> Result<Vec<Vec<usize>>> {
        self.automorphisms_bounded(cap, usize::MAX)
    }

    /// As [`SimpleGraph::automorphisms`], giving up once more than `max_count` are found.
    pub fn automorphisms_bounded(&self, cap: usize, max_count: usize) -> Result<Vec<Vec<usize>>> {
        if self.n > cap {
            return Err(Error::CapExceeded {
                what: "automorphism search vertices",
                needed: self.n as u128,
                cap: cap as u128,
            });
        }
        let mut out = Vec::new();
        let mut image = vec![0usize; self.n];
        if !self.extend_automorphism(0, 0, &mut image, &mut out, max_count) {
            return Err(Error::CapExceeded {
                what: "automorphisms",
                needed: max_count as u128 + 1,
                cap: max_count as u128,
            });
        }
        Ok(out)
    }

    fn extend_automorphism(
        &self,
        v: usize,
        used: u64,
        image: &mut [usize],
        out: &mut Vec<Vec<usize>>,
        max_count: usize,
    ) -> bool {
        if v == self.n {
            out.push(image.to_vec());
            return out.len() <= max_count;
        }
        for w in bits(self.vertex_mask() & !used) {
            if self.degree(w) != self.degree(v) {
                continue;
            }
            let consistent = (0..v).all(|u| self.has_edge(u, v) == self.has_edge(image[u], w));
            if consistent {
                image[v] = w;
                if !self.extend_automorphism(v + 1, used | 1 << w, image, out, max_count) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_automorphism(&self, perm: &[usize]) -> bool {
        if perm.len() != self.n {
            return false;
        }
        let mut seen = 0u64;
        for &p in perm {
            if p >= self.n || seen >> p & 1 == 1 {
                return false;
            }
            seen |= 1 << p;
        }
        self.edges().into_iter().all(|(u, v)| self.has_edge(perm[u], perm[v]))
    }

    /// Exhaustive scan of `k`-subsets for the most (or least) induced edges;
    /// ties go to the lowest-ranked subset.
    pub fn extreme_k_subgraph(&self, k: usize, mode: Density, cap: u128) -> Result<(u64, usize)> {
        if k < 1 || k > self.n {
            return Err(out_of_range("k", k, format!("1..={}", self.n)));
        }
        let needed = binomial(self.n as u64, k as u64);
        if needed > cap {
            return Err(Error::CapExceeded { what: "k-subsets", needed, cap });
        }
        let mut best: Option<(u64, usize)> = None;
        for s in KSubsets::new(self.n, k) {
            let e = self.induced_edge_count(s);
            let better = match (best, mode) {
                (None, _) => true,
                (Some((_, b)), Density::Densest) => e > b,
                (Some((_, b)), Density::LeastDense) => e < b,
            };
            if better {
                best = Some((s, e));
            }
        }
        Ok(best.expect("at least one subset"))
    }

    /// Edge-list text: header `n m`, then one `u v` line per edge.
    pub fn to_edge_list(&self) -> String {
        let edges = self.edges();
        let mut s = format!("{} {}\n", self.n, edges.len());
        for (u, v) in edges {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }
}

impl fmt::Debug for SimpleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimpleGraph")
            .field("n", &self.n)
            .field("edges", &self.edges())
            .finish()
    }
}

pub fn cycle(n: usize) -> Result<SimpleGraph> {
    if n < 3 {
        return Err(out_of_range("cycle length", n, ">= 3"));
    }
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    SimpleGraph::from_edges(n, &edges)
}

pub fn path(n: usize) -> Result<SimpleGraph> {
    if n < 1 {
        return Err(out_of_range("path length", n, ">= 1"));
    }
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    SimpleGraph::from_edges(n, &edges)
}

/// Center `0` joined to leaves `1..=beams`.
pub fn star(beams: usize) -> Result<SimpleGraph> {
    if beams < 1 {
        return Err(out_of_range("beams", beams, ">= 1"));
    }
    let edges: Vec<_> = (1..=beams).map(|i| (0, i)).collect();
    SimpleGraph::from_edges(beams + 1, &edges)
}

pub fn complete(n: usize) -> Result<SimpleGraph> {
    if n < 1 {
        return Err(out_of_range("n", n, ">= 1"));
    }
    Ok(SimpleGraph::empty(n)?.complement())
}

/// `i ~ i ± j (mod n)` for every jump `j`.
pub fn circulant(n: usize, jumps: &[usize]) -> Result<SimpleGraph> {
    if n < 2 {
        return Err(out_of_range("n", n, ">= 2"));
    }
    let mut g = SimpleGraph::empty(n)?;
    for &j in jumps {
        if j % n == 0 {
            return Err(Error::InvalidParameter(format!("jump {j} is zero mod {n}")));
        }
        for i in 0..n {
            let w = (i + j) % n;
            g.adj[i] |= 1 << w;
            g.adj[w] |= 1 << i;
        }
    }
    Ok(g)
}

/// `K_{2m}` minus the perfect matching `i ~ i + m`.
pub fn cocktail_party(m: usize) -> Result<SimpleGraph> {
    if m < 1 {
        return Err(out_of_range("m", m, ">= 1"));
    }
    let mut g = complete(2 * m)?;
    for i in 0..m {
        g.adj[i] &= !(1 << (i + m));
        g.adj[i + m] &= !(1 << i);
    }
    Ok(g)
}

/// Outer 5-cycle `0..5`, spokes `i ~ i + 5`, inner pentagram.
pub fn petersen() -> SimpleGraph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((i + 5, (i + 2) % 5 + 5));
    }
    SimpleGraph::from_edges(10, &edges).expect("valid edges")
}

pub fn hypercube(dim: usize) -> Result<SimpleGraph> {
    if !(1..=6).contains(&dim) {
        return Err(out_of_range("dimension", dim, "1..=6"));
    }
    let n = 1 << dim;
    let mut g = SimpleGraph::empty(n)?;
    for v in 0..n {
        for b in 0..dim {
            g.adj[v] |= 1 << (v ^ (1 << b));
        }
    }
    Ok(g)
}

/// Named family with integer parameters.
pub fn generate(kind: &str, params: &[usize]) -> Result<SimpleGraph> {
    let one = |what: &'static str| -> Result<usize> {
        match params {
            [p] => Ok(*p),
            _ => Err(Error::InvalidParameter(format!("{kind} takes exactly one parameter ({what})"))),
        }
    };
    match kind {
        "cycle" => cycle(one("n")?),
        "path" => path(one("n")?),
        "star" => star(one("beams")?),
        "complete" => complete(one("n")?),
        "cocktail_party" | "cocktail-party" => cocktail_party(one("m")?),
        "cube" | "hypercube" => hypercube(if params.is_empty() { 3 } else { one("dimension")? }),
        "petersen" if params.is_empty() => Ok(petersen()),
        "petersen" => Err(Error::InvalidParameter("petersen takes no parameters".into())),
        "circulant" => match params {
            [n, jumps @ ..] if !jumps.is_empty() => circulant(*n, jumps),
            _ => Err(Error::InvalidParameter("circulant takes n followed by jumps".into())),
        },
        _ => Err(Error::UnknownGenerator(kind.to_string())),
    }
}

/// Parses the `name:p1,p2,...` generator grammar.
pub fn generate_from_spec(spec: &str) -> Result<SimpleGraph> {
    let (name, rest) = spec.split_once(':').unwrap_or((spec, ""));
    let params = rest
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| Error::InvalidParameter(format!("`{s}` is not a nonnegative integer")))
        })
        .collect::<Result<Vec<_>>>()?;
    generate(name.trim(), &params)
}

/// Connected circulants on `n` vertices, one per jump set drawn from `1..=n/2`.
pub fn connected_circulants(n: usize) -> Vec<(Vec<usize>, SimpleGraph)> {
    let half = n / 2;
    let mut out = Vec::new();
    for set in 1u64..(1 << half) {
        let jumps: Vec<usize> = bits(set).map(|b| b + 1).collect();
        let g = jumps.iter().fold(n as u64, |acc, &j| gcd(acc, j as u64));
        if g == 1 {
            let graph = circulant(n, &jumps).expect("valid jumps");
            out.push((jumps, graph));
        }
    }
    out
}
