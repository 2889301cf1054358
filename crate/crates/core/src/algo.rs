//! Graph algorithms over plain neighbor lists, shared by [`SimpleGraph`]
//! and the token graphs (which can be far larger than 64 vertices).
//!
//! [`SimpleGraph`]: crate::graph::SimpleGraph

use std::collections::VecDeque;

pub const UNREACHED: usize = usize::MAX;

pub fn bfs_distances(adj: &[Vec<usize>], source: usize) -> Vec<usize> {
    let mut dist = vec![UNREACHED; adj.len()];
    let mut queue = VecDeque::new();
    dist[source] = 0;
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        for &w in &adj[u] {
            if dist[w] == UNREACHED {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

pub fn is_connected(adj: &[Vec<usize>]) -> bool {
    adj.is_empty() || bfs_distances(adj, 0).iter().all(|&d| d != UNREACHED)
}

/// Two-colouring by BFS over every component.
pub fn is_bipartite(adj: &[Vec<usize>]) -> bool {
    let mut color = vec![u8::MAX; adj.len()];
    let mut queue = VecDeque::new();
    for s in 0..adj.len() {
        if color[s] != u8::MAX {
            continue;
        }
        color[s] = 0;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if color[w] == u8::MAX {
                    color[w] = color[u] ^ 1;
                    queue.push_back(w);
                } else if color[w] == color[u] {
                    return false;
                }
            }
        }
    }
    true
}

/// Maximum eccentricity from all-pairs BFS; `None` when disconnected.
pub fn diameter(adj: &[Vec<usize>]) -> Option<usize> {
    let mut best = 0;
    for s in 0..adj.len() {
        let dist = bfs_distances(adj, s);
        for &d in &dist {
            if d == UNREACHED {
                return None;
            }
            best = best.max(d);
        }
    }
    Some(best)
}

/// Length of a shortest odd cycle, `None` for bipartite graphs.
///
/// From every root, an edge joining two vertices on the same BFS level
/// closes an odd walk of length `2 * level + 1`; the minimum over all roots
/// is the odd girth.
pub fn odd_girth(adj: &[Vec<usize>]) -> Option<usize> {
    let mut best: Option<usize> = None;
    for s in 0..adj.len() {
        let dist = bfs_distances(adj, s);
        for (u, nbrs) in adj.iter().enumerate() {
            if dist[u] == UNREACHED {
                continue;
            }
            for &w in nbrs {
                if dist[w] == dist[u] {
                    let len = 2 * dist[u] + 1;
                    best = Some(best.map_or(len, |b| b.min(len)));
                }
            }
        }
    }
    best
}

/// Number of complete subgraphs on exactly `size` vertices, by ordered
/// extension (each clique counted once, vertices added in increasing order).
pub fn count_cliques(adj: &[Vec<usize>], size: usize) -> u128 {
    if size == 0 {
        return 1;
    }
    let forward: Vec<Vec<usize>> = adj
        .iter()
        .enumerate()
        .map(|(u, ns)| {
            let mut f: Vec<usize> = ns.iter().copied().filter(|&w| w > u).collect();
            f.sort_unstable();
            f
        })
        .collect();
    fn extend(forward: &[Vec<usize>], candidates: &[usize], remaining: usize) -> u128 {
        if remaining == 0 {
            return 1;
        }
        if remaining == 1 {
            return candidates.len() as u128;
        }
        let mut total = 0;
        for (i, &v) in candidates.iter().enumerate() {
            let next: Vec<usize> = candidates[i + 1..]
                .iter()
                .copied()
                .filter(|w| forward[v].binary_search(w).is_ok())
                .collect();
            if next.len() + 1 >= remaining {
                total += extend(forward, &next, remaining - 1);
            }
        }
        total
    }
    let all: Vec<usize> = (0..adj.len()).collect();
    extend(&forward, &all, size)
}

/// Strong connectivity of a directed support graph given as out-lists.
pub fn is_strongly_connected(out: &[Vec<usize>]) -> bool {
    if out.is_empty() {
        return true;
    }
    let mut rev = vec![Vec::new(); out.len()];
    for (u, ns) in out.iter().enumerate() {
        for &w in ns {
            rev[w].push(u);
        }
    }
    let fwd = bfs_distances(out, 0);
    let bwd = bfs_distances(&rev, 0);
    fwd.iter().chain(bwd.iter()).all(|&d| d != UNREACHED)
}

/// Period of a strongly connected digraph: gcd of `level(u) + 1 - level(v)`
/// over all arcs `u -> v`, with BFS levels from an arbitrary root.
pub fn period(out: &[Vec<usize>]) -> u64 {
    let level = bfs_distances(out, 0);
    let mut g: u64 = 0;
    for (u, ns) in out.iter().enumerate() {
        for &v in ns {
            let diff = (level[u] as i64 + 1 - level[v] as i64).unsigned_abs();
            g = crate::combinatorics::gcd(g, diff);
        }
    }
    g
}
