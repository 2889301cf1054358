//! The token graph on `k`-subsets, the Johnson graph, the complement and
//! `k <-> n - k` dualities and the closed-form vertex and edge counts.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::combinatorics::{binomial, binomial_signed, bits, BinomialTable, KSubsets};
use crate::error::{out_of_range, Error, Result};
use crate::graph::{complete, SimpleGraph};

pub const DEFAULT_MAX_CONFIGS: u128 = 200_000;

/// A `k`-subset of vertices, one vertex of the token graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Config(pub u64);

impl Config {
    pub fn from_vertices(vs: &[usize]) -> Self {
        Config(vs.iter().fold(0, |m, &v| m | 1 << v))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn k(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn vertices(self) -> Vec<usize> {
        bits(self.0).collect()
    }

    /// Rendered as a sorted vertex list, e.g. `{0,2,5}`.
    pub fn label(self) -> String {
        let parts: Vec<String> = bits(self.0).map(|v| v.to_string()).collect();
        format!("{{{}}}", parts.join(","))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuildOptions {
    pub max_configs: u128,
    pub allow_disconnected: bool,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions { max_configs: DEFAULT_MAX_CONFIGS, allow_disconnected: false }
    }
}

/// The token graph: configs in rank order with sorted neighbor index lists.
#[derive(Debug, Clone)]
pub struct TokenGraph {
    underlying: SimpleGraph,
    k: usize,
    configs: Vec<Config>,
    adjacency: Vec<Vec<usize>>,
    degrees: Vec<usize>,
    table: BinomialTable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TokenGraphJson {
    pub n: usize,
    pub k: usize,
    pub configs: Vec<u64>,
    pub edges: Vec<[usize; 2]>,
    pub degrees: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualMap {
    /// `forward[i]` is the index in the `n - k` graph of the complement of config `i`.
    pub forward: Vec<usize>,
    pub verified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplementPartition {
    pub ok: bool,
    pub johnson_edges: u128,
    pub edges: u128,
    pub complement_edges: u128,
    pub max_violation: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EdgeCountForms {
    pub short_form: u128,
    pub sum_form: u128,
    /// `C(n - 2, k - 1)`: edges of the token graph per edge of the underlying graph.
    pub per_edge: u128,
}

pub fn check_k(n: usize, k: usize) -> Result<()> {
    if k < 1 || k + 1 > n {
        return Err(out_of_range("k", k, format!("1..={}", n.saturating_sub(1))));
    }
    Ok(())
}

pub fn check_config_cap(n: usize, k: usize, cap: u128) -> Result<()> {
    let needed = binomial(n as u64, k as u64);
    if needed > cap {
        return Err(Error::CapExceeded { what: "configurations", needed, cap });
    }
    Ok(())
}

pub fn build(g: &SimpleGraph, k: usize) -> Result<TokenGraph> {
    TokenGraph::build(g, k, BuildOptions::default())
}

pub fn johnson(n: usize, k: usize) -> Result<TokenGraph> {
    check_k(n, k)?;
    build(&complete(n)?, k)
}

impl TokenGraph {
    pub fn build(g: &SimpleGraph, k: usize, opts: BuildOptions) -> Result<TokenGraph> {
        let n = g.n();
        check_k(n, k)?;
        check_config_cap(n, k, opts.max_configs)?;
        if !opts.allow_disconnected && !g.is_connected() {
            return Err(Error::Disconnected);
        }
        let table = BinomialTable::new(n);
        let configs: Vec<Config> = KSubsets::new(n, k).map(Config).collect();
        let adjacency: Vec<Vec<usize>> = configs
            .iter()
            .map(|&Config(s)| {
                let mut nbrs: Vec<usize> = bits(s)
                    .flat_map(|v| bits(g.neighbors(v) & !s).map(move |w| s ^ (1 << v) ^ (1 << w)))
                    .map(|t| table.rank(t))
                    .collect();
                nbrs.sort_unstable();
                nbrs
            })
            .collect();
        let degrees = adjacency.iter().map(Vec::len).collect();
        Ok(TokenGraph { underlying: g.clone(), k, configs, adjacency, degrees, table })
    }

    pub fn underlying(&self) -> &SimpleGraph {
        &self.underlying
    }

    pub fn n(&self) -> usize {
        self.underlying.n()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.configs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.configs.is_empty()
    }

    pub fn configs(&self) -> &[Config] {
        &self.configs
    }

    pub fn config(&self, i: usize) -> Config {
        self.configs[i]
    }

    pub fn adjacency(&self) -> &[Vec<usize>] {
        &self.adjacency
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn min_degree(&self) -> usize {
        self.degrees.iter().copied().min().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.degrees.iter().sum::<usize>() / 2
    }

    /// Edges `[i, j]` with `i < j` in lexicographic order.
    pub fn edges(&self) -> Vec<[usize; 2]> {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(i, ns)| ns.iter().filter(move |&&j| j > i).map(move |&j| [i, j]))
            .collect()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adjacency[i].binary_search(&j).is_ok()
    }

    fn contains(&self, c: Config) -> bool {
        c.k() == self.k && c.0 & !self.underlying.vertex_mask() == 0
    }

    /// Rank of a config, `None` if it is not a vertex of this graph.
    pub fn index_of(&self, c: Config) -> Option<usize> {
        self.contains(c).then(|| self.table.rank(c.0))
    }

    pub fn config_degree(&self, c: Config) -> Result<usize> {
        self.index_of(c)
            .map(|i| self.degrees[i])
            .ok_or_else(|| Error::Precondition(format!("{} is not a {}-configuration", c.label(), self.k)))
    }

    /// Complementation `v -> V \ v` into the `n - k` token graph, checked
    /// to preserve adjacency in both directions.
    pub fn dual_map(&self, opts: BuildOptions) -> Result<(DualMap, TokenGraph)> {
        let dual = TokenGraph::build(&self.underlying, self.n() - self.k, opts)?;
        let full = self.underlying.vertex_mask();
        let forward: Vec<usize> = self
            .configs
            .iter()
            .map(|c| dual.index_of(Config(full & !c.0)).expect("complement has n - k vertices"))
            .collect();
        let mut hit = vec![false; dual.len()];
        let bijective = forward.iter().all(|&j| !std::mem::replace(&mut hit[j], true));
        let preserves = self.edges().iter().all(|&[i, j]| dual.has_edge(forward[i], forward[j]));
        let verified = bijective && preserves && dual.edge_count() == self.edge_count();
        Ok((DualMap { forward, verified }, dual))
    }

    /// `{v, w} : some edge of this graph has symmetric difference {v, w}`.
    pub fn reconstruct_underlying(&self) -> SimpleGraph {
        let mut g = SimpleGraph::empty(self.n()).expect("same size as the underlying graph");
        for [i, j] in self.edges() {
            let diff = self.configs[i].0 ^ self.configs[j].0;
            let (v, w) = (diff.trailing_zeros() as usize, 63 - diff.leading_zeros() as usize);
            if !g.has_edge(v, w) {
                g.add_edge(v, w).expect("distinct in-range labels");
            }
        }
        g
    }

    /// Average degree over `k (n - k)`, exact.
    pub fn avg_degree_ratio(&self) -> Result<BigRational> {
        if self.underlying.regular_degree().is_none() {
            return Err(Error::NotRegular);
        }
        let total: usize = self.degrees.iter().sum();
        let denom = self.len() as u128 * (self.k * (self.n() - self.k)) as u128;
        Ok(BigRational::new(BigInt::from(total), BigInt::from(denom)))
    }

    pub fn to_json(&self) -> TokenGraphJson {
        TokenGraphJson {
            n: self.n(),
            k: self.k,
            configs: self.configs.iter().map(|c| c.0).collect(),
            edges: self.edges(),
            degrees: self.degrees.clone(),
        }
    }
}

/// Every Johnson edge lies in exactly one of the token graphs of `g` and its
/// complement, and per-config degrees add up to `k (n - k)`.
pub fn complement_partition(g: &SimpleGraph, k: usize, max_configs: u128) -> Result<ComplementPartition> {
    let opts = BuildOptions { max_configs, allow_disconnected: true };
    let tg = TokenGraph::build(g, k, opts)?;
    let tc = TokenGraph::build(&g.complement(), k, opts)?;
    let tj = TokenGraph::build(&complete(g.n())?, k, opts)?;
    let full = k * (g.n() - k);
    let mut violation = None;
    for i in 0..tj.len() {
        let (mut a, mut b) = (tg.adjacency[i].iter().peekable(), tc.adjacency[i].iter().peekable());
        for &j in &tj.adjacency[i] {
            let in_g = a.next_if(|&&x| x == j).is_some();
            let in_c = b.next_if(|&&x| x == j).is_some();
            if in_g == in_c && violation.is_none() {
                violation = Some(format!(
                    "Johnson edge {}-{} lies in {} sides",
                    tj.configs[i].label(),
                    tj.configs[j].label(),
                    if in_g { 2 } else { 0 }
                ));
            }
        }
        if (a.next().is_some() || b.next().is_some()) && violation.is_none() {
            violation = Some(format!("edge at {} outside the Johnson graph", tj.configs[i].label()));
        }
        if tg.degrees[i] + tc.degrees[i] != full && violation.is_none() {
            violation = Some(format!(
                "degrees at {} sum to {} instead of {}",
                tg.configs[i].label(),
                tg.degrees[i] + tc.degrees[i],
                full
            ));
        }
    }
    Ok(ComplementPartition {
        ok: violation.is_none(),
        johnson_edges: tj.edge_count() as u128,
        edges: tg.edge_count() as u128,
        complement_edges: tc.edge_count() as u128,
        max_violation: violation,
    })
}

/// The two closed forms for the edge count of the token graph of a
/// `d`-regular graph on `n` vertices, and the per-edge coefficient.
pub fn edge_count_closed_form(n: usize, k: usize, d: usize) -> Result<EdgeCountForms> {
    check_k(n, k)?;
    if d < 1 || d + 1 > n {
        return Err(out_of_range("degree", d, format!("1..={}", n - 1)));
    }
    if n * d % 2 == 1 {
        return Err(Error::Precondition(format!("no {d}-regular graph on {n} vertices")));
    }
    let (n128, k128, d128) = (n as u128, k as u128, d as u128);
    let c_nk = binomial(n as u64, k as u64);
    let short_num = k128 * (n128 - k128) * c_nk * d128;
    let short_den = 2 * (n128 - 1);
    let mut lost: u128 = 0;
    for l in 1..=(k - 1).min(d) {
        lost += binomial(d as u64, l as u64)
            * binomial_signed(n as i64 - 1 - d as i64, k as i64 - 1 - l as i64)
            * l as u128;
    }
    let sum_num = d128 * k128 * c_nk - n128 * lost;
    if !short_num.is_multiple_of(short_den) || !sum_num.is_multiple_of(2) {
        return Err(Error::Precondition(format!("closed forms not integral at n={n}, k={k}, d={d}")));
    }
    Ok(EdgeCountForms {
        short_form: short_num / short_den,
        sum_form: sum_num / 2,
        per_edge: binomial_signed(n as i64 - 2, k as i64 - 1),
    })
}
