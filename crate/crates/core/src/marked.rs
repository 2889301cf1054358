//! Distinguishable particles: vertices are ordered tuples of distinct
//! positions, and one coordinate moves along an edge to a free vertex.

use std::collections::HashMap;

use serde::Serialize;

use crate::algo;
use crate::combinatorics::{bits, falling_factorial};
use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::kpg::{Config, TokenGraph};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MarkedConfig(pub Vec<usize>);

impl MarkedConfig {
    pub fn occupied(&self) -> u64 {
        self.0.iter().fold(0, |m, &v| m | 1 << v)
    }

    /// The underlying unordered configuration.
    pub fn forget(&self) -> Config {
        Config(self.occupied())
    }

    pub fn label(&self) -> String {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        format!("({})", parts.join(","))
    }
}

#[derive(Debug, Clone)]
pub struct MarkedTokenGraph {
    underlying: SimpleGraph,
    k: usize,
    configs: Vec<MarkedConfig>,
    adjacency: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MarkedJson {
    pub n: usize,
    pub k: usize,
    pub configs: Vec<Vec<usize>>,
    pub edges: Vec<[usize; 2]>,
    pub degrees: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ProjectionCheck {
    /// Every unmarked config has exactly `k!` marked preimages.
    pub uniform_fibres: bool,
    pub edges_project: bool,
    pub components_project_connected: bool,
}

pub fn marked_vertex_count(n: usize, k: usize) -> Result<u128> {
    falling_factorial(n as u64, k as u64).ok_or(Error::Overflow("marked vertex count"))
}

fn check_marked(g: &SimpleGraph, v: &MarkedConfig) -> Result<()> {
    let mut seen = 0u64;
    for &x in &v.0 {
        if x >= g.n() {
            return Err(Error::VertexOutOfRange { vertex: x, n: g.n() });
        }
        if seen >> x & 1 == 1 {
            return Err(Error::Precondition(format!("vertex {x} occupied twice")));
        }
        seen |= 1 << x;
    }
    Ok(())
}

/// Free neighbors summed over the particles.
pub fn marked_degree(g: &SimpleGraph, v: &MarkedConfig) -> Result<usize> {
    check_marked(g, v)?;
    let occ = v.occupied();
    Ok(v.0.iter().map(|&x| (g.neighbors(x) & !occ).count_ones() as usize).sum())
}

fn tuples(n: usize, k: usize, prefix: &mut Vec<usize>, used: u64, out: &mut Vec<MarkedConfig>) {
    if prefix.len() == k {
        out.push(MarkedConfig(prefix.clone()));
        return;
    }
    for v in 0..n {
        if used >> v & 1 == 0 {
            prefix.push(v);
            tuples(n, k, prefix, used | 1 << v, out);
            prefix.pop();
        }
    }
}

pub fn build_marked(g: &SimpleGraph, k: usize, max_configs: u128) -> Result<MarkedTokenGraph> {
    if k < 1 {
        return Err(crate::error::out_of_range("k", k, ">= 1"));
    }
    let needed = marked_vertex_count(g.n(), k)?;
    if needed > max_configs {
        return Err(Error::CapExceeded { what: "marked configurations", needed, cap: max_configs });
    }
    let mut configs = Vec::with_capacity(needed as usize);
    if k <= g.n() {
        tuples(g.n(), k, &mut Vec::with_capacity(k), 0, &mut configs);
    }
    let index: HashMap<&[usize], usize> = configs.iter().enumerate().map(|(i, c)| (c.0.as_slice(), i)).collect();
    let adjacency = configs
        .iter()
        .map(|c| {
            let occ = c.occupied();
            let mut nbrs = Vec::new();
            let mut moved = c.0.clone();
            for i in 0..k {
                for w in bits(g.neighbors(c.0[i]) & !occ) {
                    moved[i] = w;
                    nbrs.push(index[moved.as_slice()]);
                }
                moved[i] = c.0[i];
            }
            nbrs.sort_unstable();
            nbrs
        })
        .collect();
    Ok(MarkedTokenGraph { underlying: g.clone(), k, configs, adjacency })
}

impl MarkedTokenGraph {
    pub fn underlying(&self) -> &SimpleGraph {
        &self.underlying
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

    pub fn configs(&self) -> &[MarkedConfig] {
        &self.configs
    }

    pub fn adjacency(&self) -> &[Vec<usize>] {
        &self.adjacency
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<[usize; 2]> {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(i, ns)| ns.iter().filter(move |&&j| j > i).map(move |&j| [i, j]))
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        !self.configs.is_empty() && algo::is_connected(&self.adjacency)
    }

    /// Compares against the unmarked token graph on the same `k`.
    pub fn projection_check(&self, tg: &TokenGraph) -> ProjectionCheck {
        let image: Vec<usize> = self
            .configs
            .iter()
            .map(|c| tg.index_of(c.forget()).expect("same k"))
            .collect();
        let mut fibre = vec![0u128; tg.len()];
        image.iter().for_each(|&i| fibre[i] += 1);
        let k_factorial = marked_vertex_count(self.k, self.k).unwrap_or(0);
        let uniform_fibres = fibre.iter().all(|&f| f == k_factorial);
        let edges_project = self.edges().iter().all(|&[a, b]| tg.has_edge(image[a], image[b]));

        let mut comp = vec![usize::MAX; self.len()];
        let mut components_project_connected = true;
        for s in 0..self.len() {
            if comp[s] != usize::MAX {
                continue;
            }
            let dist = algo::bfs_distances(&self.adjacency, s);
            let mut in_image = vec![false; tg.len()];
            for (v, &d) in dist.iter().enumerate() {
                if d != algo::UNREACHED {
                    comp[v] = s;
                    in_image[image[v]] = true;
                }
            }
            let ids: Vec<usize> = (0..tg.len()).filter(|&i| in_image[i]).collect();
            let local: Vec<Vec<usize>> = ids
                .iter()
                .map(|&i| (0..ids.len()).filter(|&j| tg.has_edge(i, ids[j])).collect())
                .collect();
            components_project_connected &= algo::is_connected(&local);
        }
        ProjectionCheck { uniform_fibres, edges_project, components_project_connected }
    }

    pub fn to_json(&self) -> MarkedJson {
        MarkedJson {
            n: self.underlying.n(),
            k: self.k,
            configs: self.configs.iter().map(|c| c.0.clone()).collect(),
            edges: self.edges(),
            degrees: self.adjacency.iter().map(Vec::len).collect(),
        }
    }
}

/// Connectivity of the marked graph for `k = 1..=kmax`.
pub fn marked_connectivity_profile(g: &SimpleGraph, kmax: usize, max_configs: u128) -> Result<Vec<bool>> {
    if kmax + 1 > g.n() {
        return Err(crate::error::out_of_range("kmax", kmax, format!("0..={}", g.n().saturating_sub(1))));
    }
    (1..=kmax).map(|k| Ok(build_marked(g, k, max_configs)?.is_connected())).collect()
}

/// Connected at `k = n - 1` forces connected at every smaller `k`.
pub fn monotone_implication_holds(profile: &[bool], n: usize) -> bool {
    profile.len() + 1 < n || !profile[n - 2] || profile.iter().all(|&c| c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, star};
    use crate::kpg::build;

    #[test]
    fn build_examples() {
        let c4 = cycle(4).unwrap();
        let m = build_marked(&c4, 2, 1000).unwrap();
        assert_eq!(m.len(), 12);
        assert_eq!(m.configs()[0], MarkedConfig(vec![0, 1]));
        assert_eq!(m.configs()[1], MarkedConfig(vec![0, 2]));
        let full = build_marked(&c4, 4, 1000).unwrap();
        assert_eq!((full.len(), full.edge_count()), (24, 0));
        let over = build_marked(&c4, 5, 1000).unwrap();
        assert!(over.is_empty());
        assert!(matches!(build_marked(&complete(10).unwrap(), 6, 1000), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn degree_examples() {
        let c4 = cycle(4).unwrap();
        assert_eq!(marked_degree(&c4, &MarkedConfig(vec![0, 1])), Ok(2));
        assert_eq!(marked_degree(&c4, &MarkedConfig(vec![0, 2])), Ok(4));
        assert_eq!(marked_degree(&c4, &MarkedConfig(vec![2, 0])), Ok(4));
        assert_eq!(marked_degree(&complete(6).unwrap(), &MarkedConfig(vec![5, 1, 3])), Ok(9));
        assert!(marked_degree(&c4, &MarkedConfig(vec![1, 1])).is_err());
        let m = build_marked(&c4, 2, 1000).unwrap();
        for (c, ns) in m.configs().iter().zip(m.adjacency()) {
            assert_eq!(marked_degree(&c4, c).unwrap(), ns.len());
        }
    }

    #[test]
    fn count_examples() {
        assert_eq!(marked_vertex_count(4, 2), Ok(12));
        assert_eq!(marked_vertex_count(5, 0), Ok(1));
        assert_eq!(marked_vertex_count(3, 4), Ok(0));
    }

    #[test]
    fn connectivity_examples() {
        // three tokens on a 4-cycle keep their cyclic order, two always do
        let c4 = marked_connectivity_profile(&cycle(4).unwrap(), 3, 1000).unwrap();
        assert_eq!(c4, vec![true, true, false]);
        assert!(monotone_implication_holds(&c4, 4));
        assert!(marked_connectivity_profile(&star(3).unwrap(), 2, 1000).unwrap()[1]);
        assert_eq!(marked_connectivity_profile(&complete(4).unwrap(), 3, 1000).unwrap(), vec![true; 3]);
        assert!(!monotone_implication_holds(&[false, true], 3));
    }

    #[test]
    fn projection_examples() {
        let g = star(3).unwrap();
        for k in 1..4 {
            let check = build_marked(&g, k, 1000).unwrap().projection_check(&build(&g, k).unwrap());
            assert!(check.uniform_fibres && check.edges_project && check.components_project_connected);
        }
    }
}
