//! The exclusion chain on configurations: a uniformly chosen particle moves
//! to a uniformly chosen free neighbor, or stays put when blocked.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::algo;
use crate::certificate::BoundaryCertificate;
use crate::combinatorics::bits;
use crate::error::{Error, Result};
use crate::kpg::{Config, TokenGraph};
use crate::scalar::Scalar;

/// Stationary solves at most this size run in exact arithmetic.
pub const EXACT_SOLVE_LIMIT: usize = 64;
/// Largest chain handed to the dense solver.
pub const DENSE_SOLVE_CAP: usize = 3000;
pub const MAX_WALK_LENGTH: usize = 12;

/// Sparse row-stochastic matrix, rows sorted by column.
#[derive(Debug, Clone, PartialEq)]
pub struct StochasticMatrix<T> {
    rows: Vec<Vec<(usize, T)>>,
}

impl<T: Scalar> StochasticMatrix<T> {
    pub fn from_rows(mut rows: Vec<Vec<(usize, T)>>) -> Self {
        rows.iter_mut().for_each(|r| r.sort_by_key(|e| e.0));
        StochasticMatrix { rows }
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn row(&self, i: usize) -> &[(usize, T)] {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        match self.rows[i].binary_search_by_key(&j, |e| e.0) {
            Ok(p) => self.rows[i][p].1.clone(),
            Err(_) => T::zero(),
        }
    }

    pub fn row_sum(&self, i: usize) -> T {
        self.rows[i].iter().fold(T::zero(), |acc, (_, p)| acc + p.clone())
    }

    /// Nonzero pattern as out-lists, diagonal included.
    pub fn support(&self) -> Vec<Vec<usize>> {
        self.rows
            .iter()
            .map(|r| r.iter().filter(|(_, p)| !p.is_zero()).map(|e| e.0).collect())
            .collect()
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> StochasticMatrix<U> {
        StochasticMatrix {
            rows: self.rows.iter().map(|r| r.iter().map(|(j, p)| (*j, f(p))).collect()).collect(),
        }
    }

    pub fn to_float(&self) -> StochasticMatrix<f64> {
        self.map(|p| p.as_f64())
    }

    /// `pi P` for a row vector `pi`.
    pub fn left_multiply(&self, pi: &[T]) -> Vec<T> {
        let mut out = vec![T::zero(); self.size()];
        for (i, row) in self.rows.iter().enumerate() {
            for (j, p) in row {
                out[*j] = out[*j].clone() + pi[i].clone() * p.clone();
            }
        }
        out
    }
}

pub type ExactMatrix = StochasticMatrix<BigRational>;
pub type FloatMatrix = StochasticMatrix<f64>;

fn ratio(num: usize, den: usize) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn transition_matrix(tg: &TokenGraph) -> ExactMatrix {
    let g = tg.underlying();
    let k = tg.k();
    let rows = tg
        .configs()
        .iter()
        .enumerate()
        .map(|(i, &Config(s))| {
            let mut row = Vec::new();
            let mut blocked = 0;
            for v in bits(s) {
                let free = g.neighbors(v) & !s;
                let f = free.count_ones() as usize;
                if f == 0 {
                    blocked += 1;
                }
                for w in bits(free) {
                    let j = tg.index_of(Config(s ^ 1 << v ^ 1 << w)).expect("k-subset");
                    row.push((j, ratio(1, k * f)));
                }
            }
            if blocked > 0 {
                row.push((i, ratio(blocked, k)));
            }
            row
        })
        .collect();
    StochasticMatrix::from_rows(rows)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ChainStructure {
    pub irreducible: bool,
    pub period: u64,
}

/// Strong connectivity of the support and the gcd of its cycle lengths.
pub fn chain_structure<T: Scalar>(p: &StochasticMatrix<T>) -> ChainStructure {
    let support = p.support();
    ChainStructure { irreducible: algo::is_strongly_connected(&support), period: algo::period(&support) }
}

/// Unique stationary vector by Gaussian elimination on `pi (P - I) = 0`
/// with one balance equation replaced by `sum pi = 1`.
pub fn stationary<T: Scalar>(p: &StochasticMatrix<T>) -> Result<Vec<T>> {
    let n = p.size();
    if n == 0 {
        return Ok(Vec::new());
    }
    if !chain_structure(p).irreducible {
        return Err(Error::Precondition("chain is reducible".into()));
    }
    if n > DENSE_SOLVE_CAP {
        return Err(Error::CapExceeded { what: "stationary solve states", needed: n as u128, cap: DENSE_SOLVE_CAP as u128 });
    }
    // row r of `a` is the balance equation for state r
    let mut a = vec![vec![T::zero(); n + 1]; n];
    for (i, row) in p.rows.iter().enumerate() {
        for (j, q) in row {
            a[*j][i] = a[*j][i].clone() + q.clone();
        }
    }
    for (r, eq) in a.iter_mut().enumerate() {
        eq[r] = eq[r].clone() - T::one();
    }
    a[n - 1] = vec![T::one(); n + 1];

    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&x, &y| a[x][col].abs().partial_cmp(&a[y][col].abs()).expect("comparable"))
            .expect("nonempty");
        if a[pivot][col].is_zero() {
            return Err(Error::Precondition("singular balance system".into()));
        }
        a.swap(col, pivot);
        let head = a[col][col].clone();
        for x in &mut a[col][col..] {
            *x = x.clone() / head.clone();
        }
        let pivot_row = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for c in col..=n {
                if !pivot_row[c].is_zero() {
                    row[c] = row[c].clone() - factor.clone() * pivot_row[c].clone();
                }
            }
        }
    }
    Ok(a.into_iter().map(|row| row[n].clone()).collect())
}

/// Stationary vector of an exact chain, solved exactly up to
/// [`EXACT_SOLVE_LIMIT`] states and in `f64` beyond.
pub fn stationary_f64(p: &ExactMatrix) -> Result<Vec<f64>> {
    if p.size() <= EXACT_SOLVE_LIMIT {
        Ok(stationary(p)?.iter().map(Scalar::as_f64).collect())
    } else {
        stationary(&p.to_float())
    }
}

/// `max |(pi P - pi)_i|` in `f64`.
pub fn residual(p: &FloatMatrix, pi: &[f64]) -> f64 {
    p.left_multiply(pi).iter().zip(pi).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryPartition {
    pub class_of: Vec<usize>,
    pub representatives: Vec<usize>,
    pub certificates: Vec<BoundaryCertificate>,
}

impl BoundaryPartition {
    /// Classes numbered by first appearance in rank order.
    pub fn compute(tg: &TokenGraph) -> Self {
        let g = tg.underlying();
        let mut certificates: Vec<BoundaryCertificate> = Vec::new();
        let mut lookup = std::collections::HashMap::new();
        let mut representatives = Vec::new();
        let class_of = tg
            .configs()
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let cert = g.boundary_bipartite(c.bits()).expect("proper subset").certificate();
                *lookup.entry(cert.clone()).or_insert_with(|| {
                    certificates.push(cert);
                    representatives.push(i);
                    certificates.len() - 1
                })
            })
            .collect();
        BoundaryPartition { class_of, representatives, certificates }
    }

    pub fn class_count(&self) -> usize {
        self.representatives.len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        let mut s = vec![0; self.class_count()];
        self.class_of.iter().for_each(|&c| s[c] += 1);
        s
    }

    pub fn members(&self, class: usize) -> Vec<usize> {
        (0..self.class_of.len()).filter(|&i| self.class_of[i] == class).collect()
    }
}

/// Partition by boundary certificate; requires a regular underlying graph.
pub fn boundary_partition(tg: &TokenGraph) -> Result<BoundaryPartition> {
    if tg.underlying().regular_degree().is_none() {
        return Err(Error::NotRegular);
    }
    Ok(BoundaryPartition::compute(tg))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lumpability {
    pub ok: bool,
    pub max_dev: BigRational,
    /// `(config, representative of its class, target class)` for the largest deviation.
    pub witness: Option<(usize, usize, usize)>,
}

fn class_sums(p: &ExactMatrix, part: &BoundaryPartition, i: usize) -> Vec<BigRational> {
    let mut sums = vec![BigRational::zero(); part.class_count()];
    for (j, q) in p.row(i) {
        sums[part.class_of[*j]] += q;
    }
    sums
}

fn check_sizes(p_size: usize, part: &BoundaryPartition) -> Result<()> {
    if p_size != part.class_of.len() {
        return Err(Error::Precondition(format!(
            "matrix has {} states, partition covers {}",
            p_size,
            part.class_of.len()
        )));
    }
    Ok(())
}

/// Row sums into every class agree exactly within every class.
pub fn check_strong_lumpability(p: &ExactMatrix, part: &BoundaryPartition) -> Result<Lumpability> {
    check_sizes(p.size(), part)?;
    let reference: Vec<Vec<BigRational>> = part.representatives.iter().map(|&r| class_sums(p, part, r)).collect();
    let mut max_dev = BigRational::zero();
    let mut witness = None;
    for i in 0..p.size() {
        let c = part.class_of[i];
        for (d, s) in class_sums(p, part, i).iter().enumerate() {
            let dev = (s - &reference[c][d]).abs();
            if dev > max_dev {
                max_dev = dev;
                witness = Some((i, part.representatives[c], d));
            }
        }
    }
    Ok(Lumpability { ok: max_dev.is_zero(), max_dev, witness })
}

/// The quotient chain on classes.
pub fn lumped_matrix(p: &ExactMatrix, part: &BoundaryPartition) -> Result<ExactMatrix> {
    if !check_strong_lumpability(p, part)?.ok {
        return Err(Error::Precondition("partition is not strongly lumpable".into()));
    }
    let rows = part
        .representatives
        .iter()
        .map(|&r| {
            class_sums(p, part, r)
                .into_iter()
                .enumerate()
                .filter(|(_, q)| !q.is_zero())
                .collect()
        })
        .collect();
    Ok(StochasticMatrix::from_rows(rows))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClassConstancy {
    pub ok: bool,
    pub max_spread: f64,
}

/// Largest `max pi - min pi` within a class.
pub fn class_spreads(pi: &[f64], part: &BoundaryPartition) -> Vec<f64> {
    let mut lo = vec![f64::INFINITY; part.class_count()];
    let mut hi = vec![f64::NEG_INFINITY; part.class_count()];
    for (i, &c) in part.class_of.iter().enumerate() {
        lo[c] = lo[c].min(pi[i]);
        hi[c] = hi[c].max(pi[i]);
    }
    hi.iter().zip(&lo).map(|(h, l)| h - l).collect()
}

pub fn class_constancy(pi: &[f64], part: &BoundaryPartition, tol: f64) -> ClassConstancy {
    let max_spread = class_spreads(pi, part).into_iter().fold(0.0, f64::max);
    ClassConstancy { ok: max_spread <= tol, max_spread }
}

/// Closed-walk counts `(A^l)_{ii}` for `l = 1..=lmax`, one list per config.
pub fn closed_walk_profile(tg: &TokenGraph, lmax: usize) -> Result<Vec<Vec<u128>>> {
    if lmax > MAX_WALK_LENGTH {
        return Err(crate::error::out_of_range("walk length", lmax, format!("0..={MAX_WALK_LENGTH}")));
    }
    let adj = tg.adjacency();
    let n = tg.len();
    let mut out = Vec::with_capacity(n);
    let mut cur = vec![0u128; n];
    let mut next = vec![0u128; n];
    for s in 0..n {
        cur.iter_mut().for_each(|x| *x = 0);
        cur[s] = 1;
        let mut counts = Vec::with_capacity(lmax);
        for _ in 0..lmax {
            for (v, ns) in adj.iter().enumerate() {
                let mut acc: u128 = 0;
                for &w in ns {
                    acc = acc.checked_add(cur[w]).ok_or(Error::Overflow("closed-walk counts"))?;
                }
                next[v] = acc;
            }
            std::mem::swap(&mut cur, &mut next);
            counts.push(cur[s]);
        }
        out.push(counts);
    }
    Ok(out)
}

/// First `(config, representative, walk length)` whose counts differ within a class.
pub fn closed_walk_class_violation(profile: &[Vec<u128>], part: &BoundaryPartition) -> Option<(usize, usize, usize)> {
    (0..profile.len()).find_map(|i| {
        let r = part.representatives[part.class_of[i]];
        profile[i]
            .iter()
            .zip(&profile[r])
            .position(|(a, b)| a != b)
            .map(|l| (i, r, l + 1))
    })
}

fn sorted_desc(mut v: Vec<BigRational>) -> Vec<BigRational> {
    v.sort_by(|a, b| b.cmp(a));
    v
}

/// Within a class every row, and every column, carries the same multiset of probabilities.
pub fn transition_vector_identity(p: &ExactMatrix, part: &BoundaryPartition) -> Result<bool> {
    check_sizes(p.size(), part)?;
    let outgoing: Vec<Vec<BigRational>> =
        (0..p.size()).map(|i| sorted_desc(p.row(i).iter().map(|e| e.1.clone()).collect())).collect();
    let mut incoming: Vec<Vec<BigRational>> = vec![Vec::new(); p.size()];
    for i in 0..p.size() {
        for (j, q) in p.row(i) {
            incoming[*j].push(q.clone());
        }
    }
    let incoming: Vec<Vec<BigRational>> = incoming.into_iter().map(sorted_desc).collect();
    Ok((0..p.size()).all(|i| {
        let r = part.representatives[part.class_of[i]];
        outgoing[i] == outgoing[r] && incoming[i] == incoming[r]
    }))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassSummary {
    pub certificate: String,
    pub size: usize,
    /// Mean stationary mass of a config in the class.
    pub pi: f64,
    pub pi_spread: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChainReport {
    pub irreducible: bool,
    pub period: u64,
    pub classes: Vec<ClassSummary>,
    pub lumpable: bool,
    pub residual: Option<f64>,
    #[serde(skip)]
    pub stationary: Option<Vec<f64>>,
}

/// Structure, stationary law per boundary class, and exact lumpability.
pub fn chain_report(tg: &TokenGraph) -> Result<ChainReport> {
    let p = transition_matrix(tg);
    let structure = chain_structure(&p);
    let part = BoundaryPartition::compute(tg);
    let lumpable = check_strong_lumpability(&p, &part)?.ok;
    let stationary = if structure.irreducible { Some(stationary_f64(&p)?) } else { None };
    let residual = stationary.as_ref().map(|pi| residual(&p.to_float(), pi));
    let sizes = part.sizes();
    let spreads = stationary.as_ref().map(|pi| class_spreads(pi, &part));
    let classes = (0..part.class_count())
        .map(|c| {
            let pi = stationary.as_ref().map_or(f64::NAN, |pi| {
                part.members(c).iter().map(|&i| pi[i]).sum::<f64>() / sizes[c] as f64
            });
            ClassSummary {
                certificate: part.certificates[c].to_hex(),
                size: sizes[c],
                pi,
                pi_spread: spreads.as_ref().map_or(f64::NAN, |s| s[c]),
            }
        })
        .collect();
    Ok(ChainReport { irreducible: structure.irreducible, period: structure.period, classes, lumpable, residual, stationary })
}

/// Whether `pi` is proportional to the token-graph degree, within `tol`.
pub fn proportional_to_degree(tg: &TokenGraph, pi: &[f64], tol: f64) -> bool {
    let total: usize = tg.degrees().iter().sum();
    tg.degrees().iter().zip(pi).all(|(&d, &p)| (p - d as f64 / total as f64).abs() <= tol)
}

pub fn is_row_stochastic(p: &ExactMatrix) -> bool {
    (0..p.size()).all(|i| p.row_sum(i).is_one() && p.row(i).iter().all(|e| e.1.is_positive()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, petersen, star};
    use crate::kpg::{build, johnson};

    fn q(a: usize, b: usize) -> BigRational {
        ratio(a, b)
    }

    fn idx(tg: &TokenGraph, vs: &[usize]) -> usize {
        tg.index_of(Config::from_vertices(vs)).unwrap()
    }

    #[test]
    fn transition_examples() {
        let tg = build(&cycle(4).unwrap(), 2).unwrap();
        let p = transition_matrix(&tg);
        let a = idx(&tg, &[0, 1]);
        assert_eq!(p.get(a, idx(&tg, &[0, 2])), q(1, 2));
        assert_eq!(p.get(a, idx(&tg, &[1, 3])), q(1, 2));
        assert!(p.get(a, a).is_zero());
        let d = idx(&tg, &[0, 2]);
        for adj in [[0, 1], [1, 2], [2, 3], [0, 3]] {
            assert_eq!(p.get(d, idx(&tg, &adj)), q(1, 4));
        }
        let st = build(&star(3).unwrap(), 3).unwrap();
        let ps = transition_matrix(&st);
        let leaves = idx(&st, &[1, 2, 3]);
        assert!(ps.get(leaves, leaves).is_zero());
        for swap in [[0, 2, 3], [0, 1, 3], [0, 1, 2]] {
            assert_eq!(ps.get(leaves, idx(&st, &swap)), q(1, 3));
        }
        assert!(is_row_stochastic(&p) && is_row_stochastic(&ps));
    }

    #[test]
    fn structure_examples() {
        let c4 = chain_structure(&transition_matrix(&build(&cycle(4).unwrap(), 2).unwrap()));
        assert_eq!(c4, ChainStructure { irreducible: true, period: 2 });
        let k4 = chain_structure(&transition_matrix(&johnson(4, 2).unwrap()));
        assert_eq!(k4, ChainStructure { irreducible: true, period: 1 });
        // {center, leaf} leaves one leaf blocked, so self-loops appear
        let s3 = chain_structure(&transition_matrix(&build(&star(3).unwrap(), 2).unwrap()));
        assert_eq!(s3, ChainStructure { irreducible: true, period: 1 });
    }

    #[test]
    fn stationary_examples() {
        let tg = build(&cycle(4).unwrap(), 2).unwrap();
        let pi = stationary(&transition_matrix(&tg)).unwrap();
        for (i, c) in tg.configs().iter().enumerate() {
            let expect = if tg.degrees()[i] == 2 { q(1, 8) } else { q(1, 4) };
            assert_eq!(pi[i], expect, "{}", c.label());
        }
        let j = johnson(5, 2).unwrap();
        assert!(stationary(&transition_matrix(&j)).unwrap().iter().all(|x| *x == q(1, 10)));
        let st = build(&star(3).unwrap(), 2).unwrap();
        let pi = stationary(&transition_matrix(&st)).unwrap();
        for (i, c) in st.configs().iter().enumerate() {
            let expect = if c.bits() & 1 == 1 { q(2, 9) } else { q(1, 9) };
            assert_eq!(pi[i], expect);
        }
    }

    #[test]
    fn float_and_exact_solves_agree() {
        let tg = build(&petersen(), 2).unwrap();
        let p = transition_matrix(&tg);
        let exact: Vec<f64> = stationary(&p).unwrap().iter().map(Scalar::as_f64).collect();
        let float = stationary(&p.to_float()).unwrap();
        let single = stationary(&p.map(|x| x.as_f64() as f32)).unwrap();
        for i in 0..exact.len() {
            assert!((exact[i] - float[i]).abs() < 1e-14);
            assert!((exact[i] - single[i] as f64).abs() < 1e-5);
        }
        assert!(residual(&p.to_float(), &float) <= 1e-12);
    }

    #[test]
    fn partition_examples() {
        let tg = build(&cycle(4).unwrap(), 2).unwrap();
        let part = boundary_partition(&tg).unwrap();
        let mut sizes = part.sizes();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![2, 4]);
        assert_eq!(boundary_partition(&johnson(6, 3).unwrap()).unwrap().class_count(), 1);
        assert_eq!(boundary_partition(&build(&star(3).unwrap(), 2).unwrap()), Err(Error::NotRegular));
        let c8 = build(&cycle(8).unwrap(), 3).unwrap();
        let part = boundary_partition(&c8).unwrap();
        assert!(part.class_count() >= 3);
        for c in 0..part.class_count() {
            let degs: Vec<usize> = part.members(c).iter().map(|&i| c8.degrees()[i]).collect();
            assert!(degs.iter().all(|&d| d == degs[0]));
        }
    }

    #[test]
    fn lumping_examples() {
        let tg = build(&cycle(4).unwrap(), 2).unwrap();
        let p = transition_matrix(&tg);
        let part = boundary_partition(&tg).unwrap();
        assert!(check_strong_lumpability(&p, &part).unwrap().ok);
        let lumped = lumped_matrix(&p, &part).unwrap();
        let adjacent = part.class_of[idx(&tg, &[0, 1])];
        let diagonal = part.class_of[idx(&tg, &[0, 2])];
        assert_eq!(lumped.get(adjacent, diagonal), BigRational::one());
        assert!(lumped.get(adjacent, adjacent).is_zero());
        assert_eq!(lumped.get(diagonal, adjacent), BigRational::one());
        assert!(lumped.get(diagonal, diagonal).is_zero());

        let j = johnson(4, 2).unwrap();
        let pj = transition_matrix(&j);
        let single = boundary_partition(&j).unwrap();
        assert_eq!(lumped_matrix(&pj, &single).unwrap().row(0), &[(0, BigRational::one())]);

        let pet = build(&petersen(), 2).unwrap();
        let lump = check_strong_lumpability(&transition_matrix(&pet), &boundary_partition(&pet).unwrap()).unwrap();
        assert!(lump.ok);
    }

    #[test]
    fn lumping_fails_on_the_eight_cycle() {
        // pairs at distance 3 and 4 share a boundary class but not their flows
        let tg = build(&cycle(8).unwrap(), 2).unwrap();
        let p = transition_matrix(&tg);
        let part = boundary_partition(&tg).unwrap();
        assert_eq!(part.class_of[idx(&tg, &[0, 3])], part.class_of[idx(&tg, &[0, 4])]);
        let lump = check_strong_lumpability(&p, &part).unwrap();
        assert!(!lump.ok);
        assert_eq!(lump.max_dev, q(1, 2));
        assert!(lumped_matrix(&p, &part).is_err());
    }

    #[test]
    fn constancy_examples() {
        let tg = build(&cycle(4).unwrap(), 2).unwrap();
        let part = boundary_partition(&tg).unwrap();
        let pi = stationary_f64(&transition_matrix(&tg)).unwrap();
        assert!(class_constancy(&pi, &part, 1e-10).ok);
        let j = johnson(5, 2).unwrap();
        let pi = stationary_f64(&transition_matrix(&j)).unwrap();
        assert!(class_constancy(&pi, &boundary_partition(&j).unwrap(), 1e-10).ok);
        let c8 = build(&cycle(8).unwrap(), 3).unwrap();
        let pi = stationary_f64(&transition_matrix(&c8)).unwrap();
        let r = class_constancy(&pi, &boundary_partition(&c8).unwrap(), 1e-10);
        assert!(r.ok, "spread {}", r.max_spread);
    }

    #[test]
    fn closed_walk_examples() {
        let tg = build(&cycle(4).unwrap(), 2).unwrap();
        let prof = closed_walk_profile(&tg, 2).unwrap();
        for (i, counts) in prof.iter().enumerate() {
            assert_eq!(counts[0], 0);
            assert_eq!(counts[1], tg.degrees()[i] as u128);
        }
        let part = boundary_partition(&tg).unwrap();
        assert_eq!(closed_walk_class_violation(&prof, &part), None);
        let pet = build(&petersen(), 2).unwrap();
        let prof = closed_walk_profile(&pet, 6).unwrap();
        assert_eq!(closed_walk_class_violation(&prof, &boundary_partition(&pet).unwrap()), None);
        assert!(closed_walk_profile(&tg, 13).is_err());
    }

    #[test]
    fn closed_walks_differ_within_a_class_on_the_eight_cycle() {
        let tg = build(&cycle(8).unwrap(), 2).unwrap();
        let prof = closed_walk_profile(&tg, 6).unwrap();
        let (a, b) = (idx(&tg, &[0, 3]), idx(&tg, &[0, 4]));
        assert_eq!(prof[a][5].max(prof[b][5]), 400);
        assert_eq!(prof[a][5].min(prof[b][5]), 380);
        assert!(closed_walk_class_violation(&prof, &boundary_partition(&tg).unwrap()).is_some());
    }

    #[test]
    fn transition_vector_examples() {
        let tg = build(&cycle(4).unwrap(), 2).unwrap();
        let p = transition_matrix(&tg);
        assert!(transition_vector_identity(&p, &boundary_partition(&tg).unwrap()).unwrap());
        let j = johnson(5, 2).unwrap();
        assert!(transition_vector_identity(&transition_matrix(&j), &boundary_partition(&j).unwrap()).unwrap());
        let c8 = build(&cycle(8).unwrap(), 3).unwrap();
        assert!(transition_vector_identity(&transition_matrix(&c8), &boundary_partition(&c8).unwrap()).unwrap());
    }

    #[test]
    fn report_shape() {
        let r = chain_report(&build(&cycle(4).unwrap(), 2).unwrap()).unwrap();
        assert!(r.irreducible && r.lumpable);
        assert_eq!(r.period, 2);
        let mut pis: Vec<(usize, f64)> = r.classes.iter().map(|c| (c.size, c.pi)).collect();
        pis.sort_by_key(|x| x.0);
        assert_eq!(pis, vec![(2, 0.25), (4, 0.125)]);
        let json = serde_json::to_value(&r).unwrap();
        for key in ["irreducible", "period", "classes", "lumpable"] {
            assert!(json.get(key).is_some());
        }
        let k5 = chain_report(&build(&complete(5).unwrap(), 2).unwrap()).unwrap();
        assert_eq!(k5.classes.len(), 1);
    }
}
