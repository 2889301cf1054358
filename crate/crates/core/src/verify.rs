//! Runs every applicable identity on a graph and records one finding per
//! check: `pass`, `fail` (an identity that must hold was violated) or
//! `reported` (a claim with known counterexamples, recorded for inspection).

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};

use crate::algo;
use crate::analysis::{
    clique_count_formula, clique_count_oracle, degree_histogram, degree_set_monotonicity, density_duality,
    diameter_report, is_token_automorphism, johnson_subgraph_count, johnson_subgraph_oracle, kpg_vertex_connectivity,
    level_set_identity, lift_automorphism, CLIQUE_ORACLE_MAX_CONFIGS, CLIQUE_ORACLE_MAX_SIZE,
};
use crate::chain::{
    boundary_partition, check_strong_lumpability, class_constancy, closed_walk_class_violation,
    closed_walk_profile, is_row_stochastic, proportional_to_degree, residual, stationary_f64, transition_matrix,
    transition_vector_identity, chain_structure,
};
use crate::combinatorics::{binomial, bits};
use crate::corpus::CorpusEntry;
use crate::error::{Error, Result};
use crate::graph::{Density, SimpleGraph, AUTOMORPHISM_CAP};
use crate::kpg::{complement_partition, edge_count_closed_form, BuildOptions, TokenGraph};
use crate::marked::{build_marked, marked_connectivity_profile, marked_degree, marked_vertex_count, monotone_implication_holds};
use crate::special_cases::{
    cycle_config_degree, necklace_level_count, nm2_degree_set, nm2_level_count, star_kpg_connectivity,
    star_kpg_diameter, weighted_subset_max, weighted_subset_oracle,
};

pub const CLOSED_WALK_CHECK_LENGTH: usize = 8;
pub const AUTOMORPHISM_GROUP_LIMIT: usize = 2000;
pub const DEFAULT_MARKED_CAP: u128 = 20_000;
const STATIONARY_RESIDUAL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Reported,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Finding {
    pub seq: usize,
    pub check: String,
    pub inputs: Value,
    pub expected: Value,
    pub actual: Value,
    pub status: Status,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Limits {
    pub max_configs: u128,
    pub oracle_cap: usize,
    pub tol: f64,
    pub marked_cap: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_configs: crate::kpg::DEFAULT_MAX_CONFIGS,
            oracle_cap: crate::analysis::DEFAULT_ORACLE_CAP,
            tol: 1e-10,
            marked_cap: DEFAULT_MARKED_CAP,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub reported: usize,
}

pub fn summarize(findings: &[Finding]) -> Summary {
    let mut s = Summary::default();
    for f in findings {
        match f.status {
            Status::Pass => s.pass += 1,
            Status::Fail => s.fail += 1,
            Status::Reported => s.reported += 1,
        }
    }
    s
}

struct Recorder<'a> {
    graph: &'a str,
    out: Vec<Finding>,
}

impl Recorder<'_> {
    fn inputs(&self, extra: Value) -> Value {
        let mut m = serde_json::Map::new();
        m.insert("graph".into(), json!(self.graph));
        if let Value::Object(e) = extra {
            m.extend(e);
        }
        Value::Object(m)
    }

    fn push(&mut self, check: &str, extra: Value, expected: Value, actual: Value, status: Status) {
        let inputs = self.inputs(extra);
        self.out.push(Finding { seq: 0, check: check.into(), inputs, expected, actual, status });
    }

    /// An identity that must hold.
    fn exact(&mut self, check: &str, extra: Value, expected: impl Serialize, actual: impl Serialize) {
        let (e, a) = (json!(expected), json!(actual));
        let status = if e == a { Status::Pass } else { Status::Fail };
        self.push(check, extra, e, a, status);
    }

    /// A claim with known counterexamples: mismatches are reported.
    fn claim(&mut self, check: &str, extra: Value, expected: impl Serialize, actual: impl Serialize) {
        let (e, a) = (json!(expected), json!(actual));
        let status = if e == a { Status::Pass } else { Status::Reported };
        self.push(check, extra, e, a, status);
    }

    fn errored(&mut self, check: &str, extra: Value, err: &Error) {
        self.push(check, extra, Value::Null, json!(err.to_string()), Status::Fail);
    }

    fn guard<T>(&mut self, check: &str, extra: Value, r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(Error::CapExceeded { .. }) => None,
            Err(e) => {
                self.errored(check, extra, &e);
                None
            }
        }
    }
}

fn is_star(g: &SimpleGraph) -> Option<usize> {
    let n = g.n();
    (n >= 2 && g.edge_count() == n - 1 && (0..n).any(|v| g.degree(v) == n - 1)).then(|| n - 1)
}

fn is_complete(g: &SimpleGraph) -> bool {
    g.regular_degree() == Some(g.n() - 1)
}

fn is_cycle(g: &SimpleGraph) -> bool {
    g.n() >= 3 && g.regular_degree() == Some(2) && g.is_connected()
}

fn is_cocktail_party(g: &SimpleGraph) -> bool {
    g.n() >= 4 && g.n().is_multiple_of(2) && g.regular_degree() == Some(g.n() - 2)
}

fn ks(g: &SimpleGraph, limits: &Limits) -> Vec<usize> {
    (1..g.n())
        .filter(|&k| binomial(g.n() as u64, k as u64) <= limits.max_configs)
        .collect()
}

/// Findings for one graph; `only_k` restricts the per-`k` checks.
pub fn verify_graph(name: &str, g: &SimpleGraph, only_k: Option<usize>, limits: &Limits) -> Vec<Finding> {
    let mut rec = Recorder { graph: name, out: Vec::new() };
    graph_checks(&mut rec, g, limits);
    if !g.is_connected() {
        rec.exact("connected", json!({}), true, false);
        return rec.out;
    }
    let automorphisms = (g.n() <= AUTOMORPHISM_CAP)
        .then(|| g.automorphisms_bounded(AUTOMORPHISM_CAP, AUTOMORPHISM_GROUP_LIMIT).ok())
        .flatten();
    for k in ks(g, limits) {
        if only_k.is_some_and(|only| only != k) {
            continue;
        }
        let opts = BuildOptions { max_configs: limits.max_configs, allow_disconnected: false };
        let Some(tg) = rec.guard("build", json!({"k": k}), TokenGraph::build(g, k, opts)) else {
            continue;
        };
        kpg_checks(&mut rec, &tg, limits);
        if let Some(d) = g.regular_degree() {
            regular_checks(&mut rec, &tg, d, limits);
        }
        if tg.len() <= limits.oracle_cap {
            chain_checks(&mut rec, &tg, limits);
        }
        if let Some(group) = &automorphisms {
            if tg.len() <= limits.oracle_cap {
                lift_checks(&mut rec, &tg, group);
            }
        }
    }
    marked_checks(&mut rec, g, only_k, limits);
    rec.out
}

fn graph_checks(rec: &mut Recorder, g: &SimpleGraph, limits: &Limits) {
    let n = g.n();
    let c = g.complement();
    rec.exact(
        "complement_involution",
        json!({}),
        json!({"involution": true, "edge_total": n * n.saturating_sub(1) / 2}),
        json!({"involution": c.complement() == *g, "edge_total": g.edge_count() + c.edge_count()}),
    );

    if (1u128 << n) <= limits.max_configs && n >= 2 {
        let full = g.vertex_mask();
        let violations = (1..full)
            .filter(|&s| {
                let b = g.boundary_bipartite(s).map(|b| b.cross_edges.len()).unwrap_or(usize::MAX);
                let direct: usize = bits(s).map(|v| g.degree(v) - (g.neighbors(v) & s).count_ones() as usize).sum();
                b != direct
            })
            .count();
        rec.exact("boundary_cross_edges", json!({}), 0, violations);
    }

    if g.is_connected() && n >= 2 {
        if let Some(kappa) = rec.guard("vertex_connectivity_bound", json!({}), g.vertex_connectivity()) {
            rec.exact("vertex_connectivity_bound", json!({}), true, kappa <= g.min_degree());
        }
    }

    for k in 1..=n {
        if binomial(n as u64, k as u64) > limits.max_configs {
            continue;
        }
        let extra = json!({"k": k});
        let least = rec.guard("least_dense_complement", extra.clone(), g.extreme_k_subgraph(k, Density::LeastDense, limits.max_configs));
        let densest_c = rec.guard("least_dense_complement", extra.clone(), c.extreme_k_subgraph(k, Density::Densest, limits.max_configs));
        if let (Some((w, e)), Some((_, ec))) = (least, densest_c) {
            rec.exact(
                "least_dense_complement",
                extra,
                json!({"pair_total": k * (k - 1) / 2, "witness_edges_in_complement": ec}),
                json!({"pair_total": e + ec, "witness_edges_in_complement": c.induced_edge_count(w)}),
            );
        }
    }

    if let Some(d) = g.regular_degree() {
        if g.is_connected() && n >= 2 {
            let upto = n / 2;
            if let Some(ok) = rec.guard("degree_set_monotonicity", json!({"upto": upto}), degree_set_monotonicity(g, upto, limits.max_configs)) {
                rec.claim("degree_set_monotonicity", json!({"upto": upto}), true, ok);
            }
        }
        if n >= 3 && d >= 1 {
            let closed = weighted_subset_max(n, d);
            let oracle = weighted_subset_oracle(n, d);
            if let (Ok(closed), Ok(oracle)) = (closed, oracle) {
                rec.claim("weighted_subset_max", json!({"n": n, "d": d}), oracle, closed.max_size);
            }
        }
    }

    diameter_checks(rec, g, limits);

    if let Some(beams) = is_star(g) {
        for k in 1..=beams {
            if binomial(n as u64, k as u64) as usize > limits.oracle_cap {
                continue;
            }
            let tg = TokenGraph::build(g, k, BuildOptions::default());
            if let (Ok(claimed), Ok(tg)) = (star_kpg_connectivity(beams, k), tg) {
                let exact = crate::flow::vertex_connectivity(tg.adjacency());
                rec.exact("star_connectivity", json!({"beams": beams, "k": k}), Some(claimed), exact);
            }
        }
    }

    if is_cycle(g) {
        for k in 1..=n / 2 {
            let Ok(tg) = TokenGraph::build(g, k, BuildOptions { max_configs: limits.max_configs, allow_disconnected: false }) else {
                continue;
            };
            let hist = degree_histogram(&tg);
            let formula: BTreeMap<usize, u128> = (1..=k)
                .filter_map(|l| necklace_level_count(n, k, l).ok().map(|c| (2 * l, c)))
                .filter(|&(_, c)| c > 0)
                .collect();
            rec.exact("necklace_level_counts", json!({"k": k}), &formula, &hist);
            rec.exact("necklace_total", json!({"k": k}), binomial(n as u64, k as u64), formula.values().sum::<u128>());
            if crate::graph::cycle(n).is_ok_and(|c| c == *g) {
                let bad = tg
                    .configs()
                    .iter()
                    .zip(tg.degrees())
                    .filter(|(c, &d)| cycle_config_degree(n, **c).ok() != Some(d))
                    .count();
                rec.exact("cycle_config_degree", json!({"k": k}), 0, bad);
            }
        }
    }

    if is_cocktail_party(g) {
        for k in 1..=n / 2 {
            let Ok(tg) = TokenGraph::build(g, k, BuildOptions { max_configs: limits.max_configs, allow_disconnected: false }) else {
                continue;
            };
            let hist = degree_histogram(&tg);
            if let Ok(set) = nm2_degree_set(n, k) {
                let direct: Vec<usize> = hist.keys().copied().collect();
                rec.exact("nm2_degree_set", json!({"k": k}), &set, &direct);
                let formula: BTreeMap<usize, u128> = set
                    .iter()
                    .enumerate()
                    .map(|(j, &deg)| (deg, nm2_level_count(n, k, j).unwrap_or(0)))
                    .filter(|&(_, c)| c > 0)
                    .collect();
                rec.exact("nm2_level_counts", json!({"k": k}), &formula, &hist);
            }
        }
    }
}

fn diameter_checks(rec: &mut Recorder, g: &SimpleGraph, limits: &Limits) {
    let n = g.n();
    if !g.is_connected() || !matches!(g.structure_profile().diameter, Some(1 | 2)) {
        return;
    }
    for k in 1..=n / 2 {
        let extra = json!({"k": k});
        let Some(r) = rec.guard("diameter", extra.clone(), diameter_report(g, k, limits.max_configs)) else {
            continue;
        };
        if let Some(beams) = is_star(g).filter(|&b| 2 * k < b) {
            rec.exact("star_diameter", json!({"beams": beams, "k": k}), star_kpg_diameter(beams, k).ok(), Some(r.bfs_diameter));
        } else if is_complete(g) {
            rec.exact("complete_diameter", extra, k, r.bfs_diameter);
        } else {
            rec.claim(
                "diameter_formula",
                json!({"k": k, "min_outer_boundary": r.min_outer_boundary}),
                r.formula_diameter,
                r.bfs_diameter,
            );
        }
    }
}

fn kpg_checks(rec: &mut Recorder, tg: &TokenGraph, limits: &Limits) {
    let g = tg.underlying();
    let (n, k) = (g.n(), tg.k());
    let x = json!({"k": k});
    rec.exact("vertex_count", x.clone(), binomial(n as u64, k as u64), tg.len());
    rec.exact("handshake", x.clone(), 2 * tg.edge_count(), tg.degrees().iter().sum::<usize>());
    rec.exact(
        "edges_per_underlying_edge",
        x.clone(),
        binomial(n as u64 - 2, k as u64 - 1) * g.edge_count() as u128,
        tg.edge_count(),
    );
    rec.exact("kpg_connected", x.clone(), true, algo::is_connected(tg.adjacency()));
    let bip_l = algo::is_bipartite(&g.neighbor_lists());
    let bip_k = algo::is_bipartite(tg.adjacency());
    rec.exact("bipartite_iff", x.clone(), bip_l, bip_k);
    if let Some(og) = g.odd_girth().filter(|&og| og <= n - k + 1) {
        rec.exact("short_odd_cycle_not_bipartite", json!({"k": k, "odd_girth": og}), false, bip_k);
    }
    rec.exact("reconstruction", x.clone(), g.edges(), tg.reconstruct_underlying().edges());
    let opts = BuildOptions { max_configs: limits.max_configs, allow_disconnected: false };
    if let Some((dual, _)) = rec.guard("dual_map", x.clone(), tg.dual_map(opts)) {
        rec.exact("dual_map", x.clone(), true, dual.verified);
    }
    if let Some(p) = rec.guard("complement_partition", x.clone(), complement_partition(g, k, limits.max_configs)) {
        rec.exact("complement_partition", x.clone(), Value::Null, p.max_violation);
    }
    let bad = tg
        .configs()
        .iter()
        .zip(tg.degrees())
        .filter(|(c, &d)| g.boundary_edge_count(c.bits()) != d)
        .count();
    rec.exact("degree_equals_boundary", x, 0, bad);
}

fn regular_checks(rec: &mut Recorder, tg: &TokenGraph, d: usize, limits: &Limits) {
    let g = tg.underlying();
    let (n, k) = (g.n(), tg.k());
    let x = json!({"k": k, "d": d});
    let e = g.edge_count() as u128;
    if let Some(f) = rec.guard("closed_form_edge_count", x.clone(), edge_count_closed_form(n, k, d)) {
        rec.exact(
            "closed_form_edge_count",
            x.clone(),
            [tg.edge_count() as u128; 3],
            [f.short_form, f.sum_form, f.per_edge * e],
        );
    }
    if let Ok(ratio) = tg.avg_degree_ratio() {
        let expected = num_rational::BigRational::new(d.into(), (n - 1).into());
        rec.exact("avg_degree_ratio", x.clone(), expected.to_string(), ratio.to_string());
        let one = num_rational::BigRational::from_integer(1.into());
        rec.exact("avg_degree_ratio_bound", x.clone(), (true, d == n - 1), (ratio <= one, ratio == one));
    }
    let full = g.vertex_mask();
    let mut parity_bad = 0;
    let mut formula_bad = 0;
    let mut difference_bad = 0;
    for (c, &deg) in tg.configs().iter().zip(tg.degrees()) {
        let s = c.bits();
        let inside = g.induced_edge_count(s);
        parity_bad += usize::from(deg % 2 != (k * d) % 2);
        formula_bad += usize::from(deg + 2 * inside != k * d);
        let outside = g.induced_edge_count(full & !s) as i64;
        difference_bad += usize::from(2 * (outside - inside as i64) != d as i64 * (n as i64 - 2 * k as i64));
    }
    rec.exact("degree_parity", x.clone(), 0, parity_bad);
    rec.exact("degree_formula", x.clone(), 0, formula_bad);
    rec.exact("complement_edge_difference", x.clone(), 0, difference_bad);

    let mut move_bad = 0;
    for (i, ns) in tg.adjacency().iter().enumerate() {
        let s = tg.config(i).bits();
        for &j in ns {
            let t = tg.config(j).bits();
            let v = (s & !t).trailing_zeros() as usize;
            let in_s = (g.neighbors(v) & s).count_ones() as usize;
            let outside_t = (g.neighbors(v) & full & !t).count_ones() as usize;
            move_bad += usize::from(in_s + outside_t + 1 != d);
        }
    }
    rec.exact("move_identity", x.clone(), 0, move_bad);

    let dense = g.extreme_k_subgraph(k, Density::Densest, limits.max_configs);
    let sparse = g.extreme_k_subgraph(k, Density::LeastDense, limits.max_configs);
    if let (Ok((_, emax)), Ok((_, emin))) = (dense, sparse) {
        let degs = tg.degrees();
        rec.exact(
            "degree_extremes",
            x.clone(),
            (k * d - 2 * emax, k * d - 2 * emin),
            (degs.iter().min().copied().unwrap_or(0), degs.iter().max().copied().unwrap_or(0)),
        );
    }
    if let Some(ok) = rec.guard("level_set_identity", x.clone(), level_set_identity(tg)) {
        rec.exact("level_set_identity", x.clone(), true, ok);
    }
    if let Some(ok) = rec.guard("density_duality", x.clone(), density_duality(g, k, limits.max_configs)) {
        rec.exact("density_duality", x.clone(), true, ok);
    }
    if tg.len() <= limits.oracle_cap {
        if let Ok(r) = kpg_vertex_connectivity(tg, limits.oracle_cap) {
            rec.claim("kpg_vertex_connectivity", x.clone(), Some(r.claimed), r.exact);
        }
    }

    for c in 2..=n {
        let Ok(count) = g.count_cliques(c) else { continue };
        if count == 0 {
            break;
        }
        let extra = json!({"k": k, "c": c});
        if let Ok(formula) = clique_count_formula(g, k, c) {
            if d < n - 1 {
                rec.exact("regular_clique_presence", extra.clone(), true, formula > 0);
            }
            if (3..=CLIQUE_ORACLE_MAX_SIZE).contains(&c) && tg.len() <= CLIQUE_ORACLE_MAX_CONFIGS {
                if let Ok(brute) = clique_count_oracle(tg, c) {
                    rec.exact("clique_count", extra.clone(), formula, brute);
                }
            }
        }
        if (3..=4).contains(&c) && tg.len() <= CLIQUE_ORACLE_MAX_CONFIGS {
            for kp in 1..c {
                let Ok(formula) = johnson_subgraph_count(g, k, c, kp) else { continue };
                let extra = json!({"k": k, "c": c, "kprime": kp});
                if let Some((pairs, all)) = rec.guard("johnson_subgraphs", extra.clone(), johnson_subgraph_oracle(tg, c, kp)) {
                    rec.exact("johnson_subgraphs", extra, (formula, true), (pairs, all));
                }
            }
        }
    }
}

fn chain_checks(rec: &mut Recorder, tg: &TokenGraph, limits: &Limits) {
    let k = tg.k();
    let x = json!({"k": k});
    let p = transition_matrix(tg);
    rec.exact("row_stochastic", x.clone(), true, is_row_stochastic(&p));
    let support_ok = (0..p.size()).all(|i| {
        let off: Vec<usize> = p.row(i).iter().map(|e| e.0).filter(|&j| j != i).collect();
        off == tg.adjacency()[i]
    });
    rec.exact("transition_support", x.clone(), true, support_ok);
    let structure = chain_structure(&p);
    rec.exact("irreducible", x.clone(), true, structure.irreducible);
    rec.claim("aperiodic", x.clone(), 1, structure.period);
    if !structure.irreducible {
        return;
    }
    let Some(pi) = rec.guard("stationary", x.clone(), stationary_f64(&p)) else { return };
    let res = residual(&p.to_float(), &pi);
    let total: f64 = pi.iter().sum();
    rec.exact(
        "stationary_residual",
        x.clone(),
        true,
        res <= STATIONARY_RESIDUAL && (total - 1.0).abs() <= STATIONARY_RESIDUAL && pi.iter().all(|&q| q >= -STATIONARY_RESIDUAL),
    );
    rec.push(
        "stationary_degree_proportional",
        x.clone(),
        Value::Null,
        json!(proportional_to_degree(tg, &pi, limits.tol)),
        Status::Reported,
    );
    let Ok(part) = boundary_partition(tg) else { return };
    let degree_bad = (0..part.class_count())
        .filter(|&c| {
            let m = part.members(c);
            m.iter().any(|&i| tg.degrees()[i] != tg.degrees()[m[0]])
        })
        .count();
    rec.exact("boundary_class_degree", x.clone(), 0, degree_bad);
    if let Ok(l) = check_strong_lumpability(&p, &part) {
        rec.claim("strong_lumpability", x.clone(), "0", l.max_dev.to_string());
    }
    let cc = class_constancy(&pi, &part, limits.tol);
    rec.claim("stationary_class_constancy", json!({"k": k, "max_spread": cc.max_spread}), true, cc.ok);
    if let Ok(profile) = closed_walk_profile(tg, CLOSED_WALK_CHECK_LENGTH) {
        let violation = closed_walk_class_violation(&profile, &part).map(|(a, b, l)| {
            json!({"config": tg.config(a).label(), "representative": tg.config(b).label(), "length": l})
        });
        rec.claim("closed_walk_classes", json!({"k": k, "max_length": CLOSED_WALK_CHECK_LENGTH}), Value::Null, violation);
    }
    if let Ok(ok) = transition_vector_identity(&p, &part) {
        rec.claim("transition_vectors", x, true, ok);
    }
}

fn lift_checks(rec: &mut Recorder, tg: &TokenGraph, group: &[Vec<usize>]) {
    let x = json!({"k": tg.k()});
    let lifts: Vec<Vec<usize>> = group.iter().filter_map(|phi| lift_automorphism(tg, phi).ok()).collect();
    rec.exact("lift_defined", x.clone(), group.len(), lifts.len());
    rec.exact(
        "lift_is_automorphism",
        x.clone(),
        0,
        lifts.iter().filter(|l| !is_token_automorphism(tg, l)).count(),
    );
    let identity: Vec<usize> = (0..tg.n()).collect();
    let id_lift = lift_automorphism(tg, &identity).ok();
    rec.exact("lift_identity", x.clone(), Some((0..tg.len()).collect::<Vec<_>>()), id_lift);
    let sample = group.len().min(24);
    let mut hom_bad = 0;
    for a in 0..sample {
        for b in 0..sample {
            let composed: Vec<usize> = (0..tg.n()).map(|v| group[a][group[b][v]]).collect();
            let direct = lift_automorphism(tg, &composed).ok();
            let via: Vec<usize> = (0..tg.len()).map(|i| lifts[a][lifts[b][i]]).collect();
            hom_bad += usize::from(direct.as_ref() != Some(&via));
        }
    }
    rec.exact("lift_homomorphism", x.clone(), 0, hom_bad);
    let mut distinct = lifts.clone();
    distinct.sort();
    distinct.dedup();
    rec.claim("lift_injective", x.clone(), lifts.len(), distinct.len());
    if tg.len() <= AUTOMORPHISM_CAP {
        let as_graph = SimpleGraph::from_edges(tg.len(), &tg.edges().iter().map(|e| (e[0], e[1])).collect::<Vec<_>>());
        if let Ok(full) = as_graph.and_then(|h| h.automorphisms(AUTOMORPHISM_CAP)) {
            let outside = lifts.iter().filter(|l| !full.contains(l)).count();
            rec.exact("lift_subgroup", x, 0, outside);
        }
    }
}

fn marked_checks(rec: &mut Recorder, g: &SimpleGraph, only_k: Option<usize>, limits: &Limits) {
    let n = g.n();
    for k in 1..=n + 1 {
        if only_k.is_some_and(|only| only != k) {
            continue;
        }
        let Ok(count) = marked_vertex_count(n, k) else { continue };
        if count > limits.marked_cap {
            continue;
        }
        let Ok(m) = build_marked(g, k, limits.marked_cap) else { continue };
        let x = json!({"k": k});
        rec.exact("marked_vertex_count", x.clone(), count, m.len());
        if k == n {
            rec.exact("marked_full_edgeless", x.clone(), 0, m.edge_count());
        }
        if k > n {
            rec.exact("marked_overfull_empty", x.clone(), 0, m.len());
        }
        if k < n {
            if let Ok(tg) = TokenGraph::build(g, k, BuildOptions { max_configs: limits.max_configs, allow_disconnected: false }) {
                let check = m.projection_check(&tg);
                rec.exact("marked_projection", x.clone(), (true, true, true), (
                    check.uniform_fibres,
                    check.edges_project,
                    check.components_project_connected,
                ));
                let degree_bad = m
                    .configs()
                    .iter()
                    .filter(|c| marked_degree(g, c).ok() != tg.config_degree(c.forget()).ok())
                    .count();
                rec.exact("marked_degree", x, 0, degree_bad);
            }
        }
    }
    if only_k.is_none() && n >= 2 {
        let top = marked_vertex_count(n, n - 1).unwrap_or(u128::MAX);
        if top <= limits.marked_cap {
            if let Ok(profile) = marked_connectivity_profile(g, n - 1, limits.marked_cap) {
                rec.exact(
                    "marked_connectivity_monotone",
                    json!({"profile": profile}),
                    true,
                    monotone_implication_holds(&profile, n),
                );
            }
        }
    }
}

/// Findings for the whole corpus, in corpus order regardless of scheduling.
pub fn verify_corpus(corpus: &[CorpusEntry], limits: &Limits) -> Vec<Finding> {
    let workers = std::thread::available_parallelism().map_or(1, |p| p.get()).min(corpus.len().max(1));
    let next = std::sync::atomic::AtomicUsize::new(0);
    let mut slots: Vec<Vec<Finding>> = vec![Vec::new(); corpus.len()];
    let results = std::sync::Mutex::new(Vec::new());
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                let Some(entry) = corpus.get(i) else { break };
                let found = verify_graph(&entry.name, &entry.graph, None, limits);
                results.lock().expect("no poisoning").push((i, found));
            });
        }
    });
    for (i, found) in results.into_inner().expect("no poisoning") {
        slots[i] = found;
    }
    number(slots.into_iter().flatten().collect())
}

pub fn number(mut findings: Vec<Finding>) -> Vec<Finding> {
    findings.iter_mut().enumerate().for_each(|(i, f)| f.seq = i);
    findings
}
