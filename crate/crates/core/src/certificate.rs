//! Canonical forms: part-preserving certificates for boundary bipartite
//! graphs and a general coloured-graph canonical form by
//! individualisation-refinement.

use std::fmt;

use crate::combinatorics::bits;
use crate::graph::SimpleGraph;

/// Edges of the underlying graph with exactly one end in `left`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteBoundary {
    pub left: u64,
    pub right: u64,
    /// `(left vertex, right vertex)` pairs in lexicographic order.
    pub cross_edges: Vec<(usize, usize)>,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoundaryCertificate(pub Vec<u8>);

impl BoundaryCertificate {
    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Debug for BoundaryCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BoundaryCertificate({})", self.to_hex())
    }
}

const LEFT: u64 = 0;
const RIGHT: u64 = 1;

impl BipartiteBoundary {
    pub(crate) fn of(g: &SimpleGraph, left: u64) -> Self {
        let right = g.vertex_mask() & !left;
        let cross_edges = bits(left)
            .flat_map(|u| bits(g.neighbors(u) & right).map(move |w| (u, w)))
            .collect();
        BipartiteBoundary { left, right, cross_edges }
    }

    fn neighbor_masks(&self) -> [u64; 64] {
        let mut nbr = [0u64; 64];
        for &(u, w) in &self.cross_edges {
            nbr[u] |= 1 << w;
            nbr[w] |= 1 << u;
        }
        nbr
    }

    /// Canonical bytes for the isomorphism class that keeps `left` on the left.
    ///
    /// Isolated vertices are counted per part, open twins collapse into one
    /// node weighted by multiplicity, and each connected component gets a
    /// canonical code; the sorted codes make up the certificate.
    pub fn certificate(&self) -> BoundaryCertificate {
        let nbr = self.neighbor_masks();
        let isolated = |part: u64| bits(part).filter(|&v| nbr[v] == 0).count() as u16;

        // twin classes: (part, neighbor mask) -> representative, multiplicity
        let mut nodes: Vec<(u64, u64, u64)> = Vec::new(); // (part, nbr mask, member mask)
        for (part, mask) in [(LEFT, self.left), (RIGHT, self.right)] {
            for v in bits(mask) {
                if nbr[v] == 0 {
                    continue;
                }
                match nodes.iter_mut().find(|(p, m, _)| *p == part && *m == nbr[v]) {
                    Some(node) => node.2 |= 1 << v,
                    None => nodes.push((part, nbr[v], 1 << v)),
                }
            }
        }
        let touches = |a: &(u64, u64, u64), b: &(u64, u64, u64)| a.1 & b.2 != 0;
        let mut comp = vec![usize::MAX; nodes.len()];
        let mut components: Vec<Vec<usize>> = Vec::new();
        for s in 0..nodes.len() {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = components.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut i = 0;
            while i < members.len() {
                let u = members[i];
                for w in 0..nodes.len() {
                    if comp[w] == usize::MAX && touches(&nodes[u], &nodes[w]) {
                        comp[w] = id;
                        members.push(w);
                    }
                }
                i += 1;
            }
            components.push(members);
        }
        let mut codes: Vec<Vec<u64>> = components
            .iter()
            .map(|members| {
                let adj: Vec<Vec<usize>> = members
                    .iter()
                    .map(|&u| {
                        members
                            .iter()
                            .enumerate()
                            .filter(|&(_, &w)| touches(&nodes[u], &nodes[w]))
                            .map(|(j, _)| j)
                            .collect()
                    })
                    .collect();
                let colors: Vec<u64> = members
                    .iter()
                    .map(|&u| nodes[u].0 << 8 | nodes[u].2.count_ones() as u64)
                    .collect();
                canonical_form(&adj, &colors)
            })
            .collect();
        codes.sort();

        let mut out = Vec::new();
        let mut push = |x: u64| out.extend_from_slice(&(x as u16).to_le_bytes());
        push(isolated(self.left) as u64);
        push(isolated(self.right) as u64);
        push(codes.len() as u64);
        for code in &codes {
            push(code.len() as u64);
            code.iter().for_each(|&x| push(x));
        }
        BoundaryCertificate(out)
    }
}

/// Canonical code of a vertex-coloured graph: equal codes exactly for
/// colour-preserving isomorphic inputs (colours compared by value).
///
/// Colour refinement orders cells by (colour, sorted neighbour colours);
/// the search individualises each vertex of the first non-singleton cell
/// in turn and keeps the lexicographically least leaf encoding.
pub fn canonical_form(adj: &[Vec<usize>], colors: &[u64]) -> Vec<u64> {
    let n = adj.len();
    assert_eq!(colors.len(), n);
    let mut palette: Vec<u64> = colors.to_vec();
    palette.sort_unstable();
    palette.dedup();
    let start: Vec<usize> = colors
        .iter()
        .map(|c| palette.binary_search(c).expect("present"))
        .collect();
    let mut best: Option<Vec<u64>> = None;
    search(adj, colors, refine(adj, start), &mut best);
    best.unwrap_or_else(|| vec![0])
}

pub fn is_isomorphic(a: &[Vec<usize>], a_colors: &[u64], b: &[Vec<usize>], b_colors: &[u64]) -> bool {
    a.len() == b.len() && canonical_form(a, a_colors) == canonical_form(b, b_colors)
}

fn refine(adj: &[Vec<usize>], mut color: Vec<usize>) -> Vec<usize> {
    let mut classes = count_distinct(&color);
    loop {
        let mut sigs: Vec<(usize, Vec<usize>, usize)> = (0..adj.len())
            .map(|v| {
                let mut s: Vec<usize> = adj[v].iter().map(|&w| color[w]).collect();
                s.sort_unstable();
                (color[v], s, v)
            })
            .collect();
        sigs.sort();
        let mut next = vec![0; adj.len()];
        let mut id = 0;
        for i in 0..sigs.len() {
            if i > 0 && (sigs[i].0 != sigs[i - 1].0 || sigs[i].1 != sigs[i - 1].1) {
                id += 1;
            }
            next[sigs[i].2] = id;
        }
        color = next;
        let now = count_distinct(&color);
        if now == classes {
            return color;
        }
        classes = now;
    }
}

fn count_distinct(color: &[usize]) -> usize {
    let mut c = color.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

fn search(adj: &[Vec<usize>], colors: &[u64], color: Vec<usize>, best: &mut Option<Vec<u64>>) {
    let n = adj.len();
    let mut size = vec![0usize; n + 1];
    color.iter().for_each(|&c| size[c] += 1);
    let target = (0..n).find(|&c| size[c] > 1);
    let Some(cell) = target else {
        let code = encode(adj, colors, &color);
        if best.as_ref().is_none_or(|b| code < *b) {
            *best = Some(code);
        }
        return;
    };
    for v in (0..n).filter(|&v| color[v] == cell) {
        let split: Vec<usize> = (0..n)
            .map(|u| if u == v { 2 * color[u] } else { 2 * color[u] + 1 })
            .collect();
        search(adj, colors, refine(adj, split), best);
    }
}

/// `[n, colours in canonical order.., edge count, (a, b) pairs with a < b..]`.
fn encode(adj: &[Vec<usize>], colors: &[u64], label: &[usize]) -> Vec<u64> {
    let n = adj.len();
    let mut by_label = vec![0u64; n];
    for v in 0..n {
        by_label[label[v]] = colors[v];
    }
    let mut edges: Vec<(u64, u64)> = Vec::new();
    for (v, ns) in adj.iter().enumerate() {
        for &w in ns {
            let (a, b) = (label[v] as u64, label[w] as u64);
            if a < b {
                edges.push((a, b));
            }
        }
    }
    edges.sort_unstable();
    let mut code = Vec::with_capacity(2 + n + 2 * edges.len());
    code.push(n as u64);
    code.extend(by_label);
    code.push(edges.len() as u64);
    for (a, b) in edges {
        code.push(a);
        code.push(b);
    }
    code
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, petersen};

    #[test]
    fn c4_examples() {
        let c4 = cycle(4).unwrap();
        let cert = |s| c4.boundary_bipartite(s).unwrap().certificate();
        assert_eq!(cert(0b0011), cert(0b0110));
        assert_ne!(cert(0b0011), cert(0b0101));
    }

    #[test]
    fn parts_are_not_swapped() {
        // star(3): center alone on the left versus three leaves on the left
        let s = crate::graph::star(3).unwrap();
        let center = s.boundary_bipartite(0b0001).unwrap().certificate();
        let leaves = s.boundary_bipartite(0b1110).unwrap().certificate();
        assert_ne!(center, leaves);
    }

    #[test]
    fn automorphic_images_agree() {
        let g = petersen();
        let group = g.automorphisms(10).unwrap();
        for s in [0b11u64, 0b1_0000_0011, 0b11_0000_0111] {
            let base = g.boundary_bipartite(s).unwrap().certificate();
            for perm in &group {
                let image = bits(s).fold(0u64, |m, v| m | 1 << perm[v]);
                assert_eq!(g.boundary_bipartite(image).unwrap().certificate(), base);
            }
        }
    }

    #[test]
    fn general_canonical_form() {
        let c5 = cycle(5).unwrap();
        let pentagram = c5.complement();
        let plain = |g: &SimpleGraph| (g.neighbor_lists(), vec![0u64; g.n()]);
        let (a, ac) = plain(&c5);
        let (b, bc) = plain(&pentagram);
        assert!(is_isomorphic(&a, &ac, &b, &bc));
        let (k5, kc) = plain(&complete(5).unwrap());
        assert!(!is_isomorphic(&a, &ac, &k5, &kc));
        let mut colored = ac.clone();
        colored[0] = 1;
        let mut other = ac.clone();
        other[3] = 1;
        assert!(is_isomorphic(&a, &colored, &a, &other));
        assert!(!is_isomorphic(&a, &colored, &a, &ac));
    }
}
