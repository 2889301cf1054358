//! The shipped corpus of small graphs used by `verify --corpus`.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::{
    cocktail_party, complete, connected_circulants, cycle, hypercube, petersen, star, SimpleGraph,
};

/// A connected cubic graph on eight vertices whose degree sets at three and
/// four particles are disjoint.
pub fn cubic_disjoint_degree_sets() -> SimpleGraph {
    SimpleGraph::from_edges(
        8,
        &[(0, 1), (0, 6), (0, 7), (1, 3), (1, 7), (2, 4), (2, 5), (2, 7), (3, 4), (3, 6), (4, 5), (5, 6)],
    )
    .expect("valid edges")
}

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: String,
    pub graph: SimpleGraph,
}

fn entry(name: impl Into<String>, graph: SimpleGraph) -> CorpusEntry {
    CorpusEntry { name: name.into(), graph }
}

/// Cycles, stars, complete graphs, every connected circulant, the cube,
/// the Petersen graph and cocktail-party graphs, all with at most ten vertices.
pub fn shipped() -> Vec<CorpusEntry> {
    let mut out = Vec::new();
    for n in 3..=10 {
        out.push(entry(format!("cycle:{n}"), cycle(n).expect("n >= 3")));
    }
    for beams in 1..=9 {
        out.push(entry(format!("star:{beams}"), star(beams).expect("beams >= 1")));
    }
    for n in 2..=10 {
        out.push(entry(format!("complete:{n}"), complete(n).expect("n >= 1")));
    }
    for n in 4..=10 {
        for (jumps, g) in connected_circulants(n) {
            // single unit jump is the cycle, all jumps the complete graph
            if jumps == [1] || g.regular_degree() == Some(n - 1) {
                continue;
            }
            let list: Vec<String> = jumps.iter().map(|j| j.to_string()).collect();
            out.push(entry(format!("circulant:{n},{}", list.join(",")), g));
        }
    }
    out.push(entry("cube", hypercube(3).expect("dimension 3")));
    out.push(entry("petersen", petersen()));
    for m in 2..=5 {
        out.push(entry(format!("cocktail_party:{m}"), cocktail_party(m).expect("m >= 1")));
    }
    out.push(entry("cubic8", cubic_disjoint_degree_sets()));
    out
}

/// The corpus in a seed-determined order.
pub fn shuffled(seed: u64) -> Vec<CorpusEntry> {
    let mut c = shipped();
    c.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    c
}
