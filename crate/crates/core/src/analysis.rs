//! Degree and level sets, clique and Johnson-subgraph counts, the diameter
//! and connectivity formulas, automorphism lifting and density duality.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algo;
use crate::certificate::canonical_form;
use crate::combinatorics::{binomial, binomial_signed, bits, KSubsets};
use crate::error::{out_of_range, Error, Result};
use crate::flow;
use crate::graph::{complete, Density, SimpleGraph};
use crate::kpg::{check_config_cap, check_k, BuildOptions, Config, TokenGraph};

pub const DEFAULT_ORACLE_CAP: usize = 500;
pub const CLIQUE_ORACLE_MAX_SIZE: usize = 5;
pub const CLIQUE_ORACLE_MAX_CONFIGS: usize = 5000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeProfile {
    pub degree_set: Vec<usize>,
    pub level_counts: BTreeMap<usize, u128>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiameterReport {
    pub min_outer_boundary: usize,
    pub witness: u64,
    pub delta2k: usize,
    pub formula_diameter: usize,
    pub bfs_diameter: usize,
    pub agree: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ConnectivityReport {
    pub claimed: usize,
    pub exact: Option<usize>,
}

/// Number of configs per degree, for any underlying graph.
pub fn degree_histogram(tg: &TokenGraph) -> BTreeMap<usize, u128> {
    let mut counts = BTreeMap::new();
    for &d in tg.degrees() {
        *counts.entry(d).or_insert(0) += 1;
    }
    counts
}

pub fn degree_profile(tg: &TokenGraph) -> Result<DegreeProfile> {
    if tg.underlying().regular_degree().is_none() {
        return Err(Error::NotRegular);
    }
    let level_counts = degree_histogram(tg);
    Ok(DegreeProfile { degree_set: level_counts.keys().copied().collect(), level_counts })
}

/// Distinct degrees of the `k` token graph, read off boundary counts directly.
fn degree_set(g: &SimpleGraph, k: usize) -> Vec<usize> {
    let mut set: Vec<usize> = KSubsets::new(g.n(), k).map(|s| g.boundary_edge_count(s)).collect();
    set.sort_unstable();
    set.dedup();
    set
}

/// How many `k`-subsets induce exactly `e` edges, per `e`.
pub fn induced_edge_histogram(g: &SimpleGraph, k: usize) -> BTreeMap<usize, u128> {
    let mut h = BTreeMap::new();
    for s in KSubsets::new(g.n(), k) {
        *h.entry(g.induced_edge_count(s)).or_insert(0) += 1;
    }
    h
}

/// For a `d`-regular graph: configs of degree `l` are counted once directly,
/// once as `k`-subsets with `(k d - l) / 2` induced edges and once as
/// `(n - k)`-subsets with `((n - k) d - l) / 2` induced edges.
pub fn level_set_identity(tg: &TokenGraph) -> Result<bool> {
    let d = tg.underlying().regular_degree().ok_or(Error::NotRegular)?;
    let (n, k) = (tg.n(), tg.k());
    let direct = degree_histogram(tg);
    let side_k = induced_edge_histogram(tg.underlying(), k);
    let side_nk = induced_edge_histogram(tg.underlying(), n - k);
    Ok(direct.iter().all(|(&l, &count)| {
        let a = (k * d).checked_sub(l).filter(|x| x % 2 == 0).map(|x| x / 2);
        let b = ((n - k) * d).checked_sub(l).filter(|x| x % 2 == 0).map(|x| x / 2);
        match (a, b) {
            (Some(a), Some(b)) => side_k.get(&a) == Some(&count) && side_nk.get(&b) == Some(&count),
            _ => false,
        }
    }))
}

/// `|D_1| <= |D_2| <= .. <= |D_upto|` and the mirrored chain from `n - 1` down.
pub fn degree_set_monotonicity(g: &SimpleGraph, upto: usize, max_configs: u128) -> Result<bool> {
    let n = g.n();
    if g.regular_degree().is_none() {
        return Err(Error::NotRegular);
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if upto < 1 || upto > n / 2 {
        return Err(out_of_range("upto", upto, format!("1..={}", n / 2)));
    }
    check_config_cap(n, upto, max_configs)?;
    let low: Vec<usize> = (1..=upto).map(|k| degree_set(g, k).len()).collect();
    let high: Vec<usize> = (1..=upto).map(|k| degree_set(g, n - k).len()).collect();
    Ok(low.windows(2).all(|w| w[0] <= w[1]) && high.windows(2).all(|w| w[0] <= w[1]))
}

/// `(C(n - c, k - 1) + C(n - c, k - c + 1)) * (c-cliques of g)`.
pub fn clique_count_formula(g: &SimpleGraph, k: usize, c: usize) -> Result<u128> {
    let n = g.n();
    check_k(n, k)?;
    if c < 2 || c > n {
        return Err(out_of_range("clique size", c, format!("2..={n}")));
    }
    let (n, k, ci) = (n as i64, k as i64, c as i64);
    let coefficient = binomial_signed(n - ci, k - 1) + binomial_signed(n - ci, k - ci + 1);
    Ok(coefficient * g.count_cliques(c)?)
}

/// Brute-force `c`-clique count in the token graph, within the oracle limits.
pub fn clique_count_oracle(tg: &TokenGraph, c: usize) -> Result<u128> {
    if c > CLIQUE_ORACLE_MAX_SIZE {
        return Err(out_of_range("clique size", c, format!("<= {CLIQUE_ORACLE_MAX_SIZE}")));
    }
    if tg.len() > CLIQUE_ORACLE_MAX_CONFIGS {
        return Err(Error::CapExceeded {
            what: "clique oracle configurations",
            needed: tg.len() as u128,
            cap: CLIQUE_ORACLE_MAX_CONFIGS as u128,
        });
    }
    Ok(algo::count_cliques(tg.adjacency(), c))
}

fn kprime_range(n: usize, k: usize, c: usize) -> (usize, usize) {
    ((k + c).saturating_sub(n).max(1), k.min(c - 1))
}

/// `C(n - c, k - k') * (c-cliques of g)`, Johnson `J(c, k')` copies in the token graph.
pub fn johnson_subgraph_count(g: &SimpleGraph, k: usize, c: usize, kprime: usize) -> Result<u128> {
    let n = g.n();
    check_k(n, k)?;
    if c < 2 || c > n {
        return Err(out_of_range("clique size", c, format!("2..={n}")));
    }
    let (lo, hi) = kprime_range(n, k, c);
    if kprime < lo || kprime > hi {
        return Err(out_of_range("k'", kprime, format!("{lo}..={hi}")));
    }
    Ok(binomial((n - c) as u64, (k - kprime) as u64) * g.count_cliques(c)?)
}

/// Enumerates every (clique, fixed outside set) pair and checks that the
/// configs it spans induce `J(c, k')`. Returns the pair count and whether
/// every spanned subgraph matched.
pub fn johnson_subgraph_oracle(tg: &TokenGraph, c: usize, kprime: usize) -> Result<(u128, bool)> {
    let g = tg.underlying();
    let (n, k) = (g.n(), tg.k());
    johnson_subgraph_count(g, k, c, kprime)?;
    let pattern = TokenGraph::build(&complete(c)?, kprime, BuildOptions::default())?;
    let pattern_code = canonical_form(pattern.adjacency(), &vec![0; pattern.len()]);
    let mut pairs = 0u128;
    let mut all_match = true;
    for clique in KSubsets::new(n, c) {
        if bits(clique).any(|v| (g.neighbors(v) | 1 << v) & clique != clique) {
            continue;
        }
        let members: Vec<usize> = bits(clique).collect();
        let outside = g.vertex_mask() & !clique;
        let outside_list: Vec<usize> = bits(outside).collect();
        for fixed in KSubsets::new(outside_list.len(), k - kprime) {
            let fixed_mask = bits(fixed).fold(0u64, |m, i| m | 1 << outside_list[i]);
            let ids: Vec<usize> = KSubsets::new(c, kprime)
                .map(|a| bits(a).fold(fixed_mask, |m, i| m | 1 << members[i]))
                .map(|s| tg.index_of(Config(s)).expect("k-subset"))
                .collect();
            let local: Vec<Vec<usize>> = ids
                .iter()
                .map(|&i| (0..ids.len()).filter(|&j| tg.has_edge(i, ids[j])).collect())
                .collect();
            all_match &= canonical_form(&local, &vec![0; ids.len()]) == pattern_code;
            pairs += 1;
        }
    }
    Ok((pairs, all_match))
}

/// Exhaustive minimum outer boundary over `k`-subsets against the BFS diameter.
pub fn diameter_report(g: &SimpleGraph, k: usize, max_configs: u128) -> Result<DiameterReport> {
    let n = g.n();
    if !matches!(g.structure_profile().diameter, Some(1 | 2)) {
        return Err(Error::Precondition("underlying diameter must be at most 2".into()));
    }
    if k < 1 || k > n / 2 {
        return Err(out_of_range("k", k, format!("1..={}", n / 2)));
    }
    let tg = TokenGraph::build(g, k, BuildOptions { max_configs, allow_disconnected: false })?;
    let (witness, min_outer_boundary) = KSubsets::new(n, k)
        .map(|s| (s, g.outer_boundary(s).count_ones() as usize))
        .min_by_key(|&(_, b)| b)
        .expect("k-subsets exist");
    let delta2k = (n - min_outer_boundary - k).min(k);
    let formula_diameter = k + delta2k;
    let bfs_diameter = algo::diameter(tg.adjacency()).ok_or(Error::Disconnected)?;
    Ok(DiameterReport {
        min_outer_boundary,
        witness,
        delta2k,
        formula_diameter,
        bfs_diameter,
        agree: formula_diameter == bfs_diameter,
    })
}

/// Minimum degree as the claimed connectivity, with the max-flow value when
/// the token graph has at most `oracle_cap` configs.
pub fn kpg_vertex_connectivity(tg: &TokenGraph, oracle_cap: usize) -> Result<ConnectivityReport> {
    if tg.underlying().regular_degree().is_none() {
        return Err(Error::NotRegular);
    }
    let exact = if tg.len() <= oracle_cap { flow::vertex_connectivity(tg.adjacency()) } else { None };
    Ok(ConnectivityReport { claimed: tg.min_degree(), exact })
}

/// Config permutation induced by a vertex automorphism.
pub fn lift_automorphism(tg: &TokenGraph, phi: &[usize]) -> Result<Vec<usize>> {
    if !tg.underlying().is_automorphism(phi) {
        return Err(Error::Precondition("not an automorphism of the underlying graph".into()));
    }
    Ok(tg
        .configs()
        .iter()
        .map(|c| {
            let image = bits(c.bits()).fold(0u64, |m, v| m | 1 << phi[v]);
            tg.index_of(Config(image)).expect("same size")
        })
        .collect())
}

pub fn is_token_automorphism(tg: &TokenGraph, perm: &[usize]) -> bool {
    let mut seen = vec![false; tg.len()];
    perm.len() == tg.len()
        && perm.iter().all(|&p| p < tg.len() && !std::mem::replace(&mut seen[p], true))
        && tg.edges().iter().all(|&[i, j]| tg.has_edge(perm[i], perm[j]))
}

/// Densest `k`-subsets have densest complements and minimum boundary.
pub fn density_duality(g: &SimpleGraph, k: usize, max_configs: u128) -> Result<bool> {
    let n = g.n();
    if g.regular_degree().is_none() {
        return Err(Error::NotRegular);
    }
    check_k(n, k)?;
    check_config_cap(n, k, max_configs)?;
    let (_, densest) = g.extreme_k_subgraph(k, Density::Densest, max_configs)?;
    let (_, densest_complement) = g.extreme_k_subgraph(n - k, Density::Densest, max_configs)?;
    let min_boundary = KSubsets::new(n, k).map(|s| g.boundary_edge_count(s)).min().unwrap_or(0);
    Ok(KSubsets::new(n, k)
        .filter(|&s| g.induced_edge_count(s) == densest)
        .all(|s| {
            g.induced_edge_count(g.vertex_mask() & !s) == densest_complement
                && g.boundary_edge_count(s) == min_boundary
        }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cocktail_party, cycle, petersen, star};
    use crate::kpg::{build, johnson};

    #[test]
    fn profile_examples() {
        let c8 = cycle(8).unwrap();
        assert_eq!(degree_profile(&build(&c8, 3).unwrap()).unwrap().degree_set, vec![2, 4, 6]);
        assert_eq!(degree_profile(&build(&c8, 4).unwrap()).unwrap().degree_set, vec![2, 4, 6, 8]);
        let c4 = degree_profile(&build(&cycle(4).unwrap(), 2).unwrap()).unwrap();
        assert_eq!(c4.level_counts, BTreeMap::from([(2, 4), (4, 2)]));
        assert_eq!(degree_profile(&build(&star(3).unwrap(), 2).unwrap()), Err(Error::NotRegular));
    }

    #[test]
    fn disjoint_degree_sets_on_a_cubic_graph() {
        // found by search over connected cubic graphs on 8 vertices
        let g = SimpleGraph::from_edges(
            8,
            &[(0, 1), (0, 6), (0, 7), (1, 3), (1, 7), (2, 4), (2, 5), (2, 7), (3, 4), (3, 6), (4, 5), (5, 6)],
        )
        .unwrap();
        assert_eq!(g.regular_degree(), Some(3));
        let d3 = degree_profile(&build(&g, 3).unwrap()).unwrap().degree_set;
        let d4 = degree_profile(&build(&g, 4).unwrap()).unwrap().degree_set;
        assert_eq!(d3, vec![3, 5, 7, 9]);
        assert_eq!(d4, vec![4, 6, 8, 10]);
    }

    #[test]
    fn level_sets_match_both_sides() {
        for k in 1..8 {
            assert!(level_set_identity(&build(&cycle(8).unwrap(), k).unwrap()).unwrap());
        }
        assert!(level_set_identity(&build(&petersen(), 3).unwrap()).unwrap());
    }

    #[test]
    fn monotonicity_examples() {
        assert_eq!(degree_set_monotonicity(&cycle(8).unwrap(), 4, 1 << 20), Ok(true));
        assert_eq!(degree_set_monotonicity(&complete(5).unwrap(), 2, 1 << 20), Ok(true));
        assert_eq!(degree_set_monotonicity(&petersen(), 5, 1 << 20), Ok(true));
        assert!(degree_set_monotonicity(&cycle(8).unwrap(), 5, 1 << 20).is_err());
    }

    #[test]
    fn clique_examples() {
        let k4 = complete(4).unwrap();
        assert_eq!(clique_count_formula(&k4, 2, 3), Ok(8));
        assert_eq!(clique_count_oracle(&johnson(4, 2).unwrap(), 3), Ok(8));
        assert_eq!(clique_count_formula(&cycle(6).unwrap(), 2, 3), Ok(0));
        assert_eq!(clique_count_formula(&petersen(), 3, 3), Ok(0));
        assert_eq!(clique_count_oracle(&build(&petersen(), 3).unwrap(), 3), Ok(0));
    }

    #[test]
    fn johnson_subgraph_examples() {
        let k4 = complete(4).unwrap();
        assert_eq!(johnson_subgraph_count(&k4, 2, 3, 1), Ok(4));
        assert_eq!(johnson_subgraph_count(&k4, 2, 3, 2), Ok(4));
        assert_eq!(johnson_subgraph_count(&complete(5).unwrap(), 2, 4, 2), Ok(5));
        assert!(matches!(johnson_subgraph_count(&k4, 2, 3, 3), Err(Error::OutOfRange { .. })));
        let tg = johnson(5, 2).unwrap();
        assert_eq!(johnson_subgraph_oracle(&tg, 4, 2), Ok((5, true)));
        let tg = johnson(4, 2).unwrap();
        assert_eq!(johnson_subgraph_oracle(&tg, 3, 1), Ok((4, true)));
        assert_eq!(johnson_subgraph_oracle(&tg, 3, 2), Ok((4, true)));
    }

    #[test]
    fn diameter_examples() {
        let r = diameter_report(&complete(5).unwrap(), 2, 1000).unwrap();
        assert_eq!((r.min_outer_boundary, r.formula_diameter, r.bfs_diameter, r.agree), (3, 2, 2, true));
        let r = diameter_report(&star(5).unwrap(), 2, 1000).unwrap();
        assert_eq!((r.formula_diameter, r.bfs_diameter, r.agree), (4, 4, true));
        let r = diameter_report(&petersen(), 2, 1000).unwrap();
        assert_eq!(r.bfs_diameter, crate::algo::diameter(build(&petersen(), 2).unwrap().adjacency()).unwrap());
        assert!(diameter_report(&cycle(6).unwrap(), 2, 1000).is_err());
        assert!(diameter_report(&complete(5).unwrap(), 3, 1000).is_err());
    }

    #[test]
    fn connectivity_examples() {
        assert_eq!(kpg_vertex_connectivity(&build(&star(4).unwrap(), 2).unwrap(), 500), Err(Error::NotRegular));
        let r = kpg_vertex_connectivity(&build(&cycle(5).unwrap(), 2).unwrap(), 500).unwrap();
        assert_eq!((r.claimed, r.exact), (2, Some(2)));
        let r = kpg_vertex_connectivity(&johnson(4, 2).unwrap(), 500).unwrap();
        assert_eq!((r.claimed, r.exact), (4, Some(4)));
        let r = kpg_vertex_connectivity(&johnson(4, 2).unwrap(), 3).unwrap();
        assert_eq!(r.exact, None);
    }

    #[test]
    fn lift_examples() {
        let tg = build(&cycle(4).unwrap(), 2).unwrap();
        let rot = lift_automorphism(&tg, &[1, 2, 3, 0]).unwrap();
        assert!(is_token_automorphism(&tg, &rot));
        assert_eq!(lift_automorphism(&tg, &[0, 1, 2, 3]).unwrap(), (0..6).collect::<Vec<_>>());
        assert!(lift_automorphism(&tg, &[0, 2, 1, 3]).is_err());
        let st = build(&star(3).unwrap(), 2).unwrap();
        let swap = lift_automorphism(&st, &[0, 2, 1, 3]).unwrap();
        assert!(is_token_automorphism(&st, &swap));
        let fixed = st.index_of(Config::from_vertices(&[0, 3])).unwrap();
        assert_eq!(swap[fixed], fixed);
    }

    #[test]
    fn duality_examples() {
        assert_eq!(density_duality(&cycle(6).unwrap(), 2, 1000), Ok(true));
        for k in 1..5 {
            assert_eq!(density_duality(&complete(5).unwrap(), k, 1000), Ok(true));
        }
        assert_eq!(density_duality(&cocktail_party(3).unwrap(), 3, 1000), Ok(true));
    }
}
