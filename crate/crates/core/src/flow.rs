//! Vertex connectivity by unit-capacity max-flow on the vertex-split graph.

use crate::algo::is_connected;

struct SplitNetwork {
    head: Vec<usize>,
    to: Vec<usize>,
    cap: Vec<u32>,
    next: Vec<usize>,
}

const NIL: usize = usize::MAX;

impl SplitNetwork {
    /// Vertex `v` becomes `2v` (in) and `2v + 1` (out) joined by a unit arc.
    fn new(adj: &[Vec<usize>]) -> Self {
        let n = adj.len();
        let arcs: usize = 2 * (n + adj.iter().map(Vec::len).sum::<usize>());
        let mut net = SplitNetwork {
            head: vec![NIL; 2 * n],
            to: Vec::with_capacity(arcs),
            cap: Vec::with_capacity(arcs),
            next: Vec::with_capacity(arcs),
        };
        for v in 0..n {
            net.add_arc(2 * v, 2 * v + 1, 1);
        }
        for (u, ns) in adj.iter().enumerate() {
            for &w in ns {
                net.add_arc(2 * u + 1, 2 * w, 1);
            }
        }
        net
    }

    fn add_arc(&mut self, from: usize, to: usize, cap: u32) {
        for (a, b, c) in [(from, to, cap), (to, from, 0)] {
            self.to.push(b);
            self.cap.push(c);
            self.next.push(self.head[a]);
            self.head[a] = self.to.len() - 1;
        }
    }

    /// Number of internally vertex-disjoint `s`-`t` paths, stopping at `cutoff`.
    fn local_connectivity(&self, s: usize, t: usize, cutoff: usize) -> usize {
        let mut cap = self.cap.clone();
        let source = 2 * s + 1;
        let sink = 2 * t;
        let mut flow = 0;
        let mut parent_arc = vec![NIL; self.head.len()];
        let mut queue = Vec::with_capacity(self.head.len());
        while flow < cutoff {
            parent_arc.iter_mut().for_each(|p| *p = NIL);
            queue.clear();
            queue.push(source);
            let mut qi = 0;
            let mut found = false;
            'bfs: while qi < queue.len() {
                let u = queue[qi];
                qi += 1;
                let mut a = self.head[u];
                while a != NIL {
                    let w = self.to[a];
                    if cap[a] > 0 && parent_arc[w] == NIL && w != source {
                        parent_arc[w] = a;
                        if w == sink {
                            found = true;
                            break 'bfs;
                        }
                        queue.push(w);
                    }
                    a = self.next[a];
                }
            }
            if !found {
                break;
            }
            let mut v = sink;
            while v != source {
                let a = parent_arc[v];
                cap[a] -= 1;
                cap[a ^ 1] += 1;
                v = self.to[a ^ 1];
            }
            flow += 1;
        }
        flow
    }
}

/// Exact vertex connectivity of a connected graph given by neighbor lists.
///
/// Follows Esfahanian and Hakimi: with `v` of minimum degree, a minimum cut
/// either misses `v` (then it separates `v` from a non-neighbour) or
/// contains it (then it separates two non-adjacent neighbours of `v`).
/// Complete graphs get `n - 1`. Returns `None` for disconnected input or
/// fewer than two vertices.
pub fn vertex_connectivity(adj: &[Vec<usize>]) -> Option<usize> {
    let n = adj.len();
    if n < 2 || !is_connected(adj) {
        return None;
    }
    let mut sorted: Vec<Vec<usize>> = adj.to_vec();
    sorted.iter_mut().for_each(|ns| ns.sort_unstable());
    let adjacent = |a: usize, b: usize| sorted[a].binary_search(&b).is_ok();
    let v = (0..n).min_by_key(|&u| adj[u].len()).unwrap_or(0);
    let mut best = adj[v].len();
    if best == n - 1 {
        // v is universal; only the other vertices can be cut apart.
        if (0..n).all(|u| adj[u].len() == n - 1) {
            return Some(n - 1);
        }
    }
    let net = SplitNetwork::new(adj);
    for t in 0..n {
        if t != v && !adjacent(v, t) {
            best = best.min(net.local_connectivity(v, t, best));
        }
    }
    let nbrs = &sorted[v];
    for (i, &x) in nbrs.iter().enumerate() {
        for &y in &nbrs[i + 1..] {
            if !adjacent(x, y) {
                best = best.min(net.local_connectivity(x, y, best));
            }
        }
    }
    Some(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_edges(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    #[test]
    fn small_graphs() {
        let path = from_edges(3, &[(0, 1), (1, 2)]);
        assert_eq!(vertex_connectivity(&path), Some(1));
        let c6 = from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]);
        assert_eq!(vertex_connectivity(&c6), Some(2));
        let k4: Vec<Vec<usize>> = (0..4).map(|i| (0..4).filter(|&j| j != i).collect()).collect();
        assert_eq!(vertex_connectivity(&k4), Some(3));
        let split = from_edges(4, &[(0, 1)]);
        assert_eq!(vertex_connectivity(&split), None);
    }

    #[test]
    fn bowtie_has_cut_vertex() {
        // two triangles sharing vertex 2; min degree 2 but kappa 1
        let bowtie = from_edges(5, &[(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)]);
        assert_eq!(vertex_connectivity(&bowtie), Some(1));
    }

    #[test]
    fn universal_vertex_not_complete() {
        // star(3): center universal, leaves separated by removing it
        let star = from_edges(4, &[(0, 1), (0, 2), (0, 3)]);
        assert_eq!(vertex_connectivity(&star), Some(1));
    }
}
