//! Closed forms for cycles, cocktail-party graphs, stars and the `k = 2`
//! weighted-subset bound.

use serde::Serialize;

use crate::combinatorics::{binomial, binomial_signed, full_mask};
use crate::error::{out_of_range, Error, Result};
use crate::kpg::Config;

/// Configs of degree `2l` in the token graph of the `n`-cycle:
/// `C(k-1, l-1) C(n-k-1, l-1) n / l`.
pub fn necklace_level_count(n: usize, k: usize, l: usize) -> Result<u128> {
    if n < 3 {
        return Err(out_of_range("n", n, ">= 3"));
    }
    if k < 1 || k > n / 2 {
        return Err(out_of_range("k", k, format!("1..={}", n / 2)));
    }
    if l < 1 || l > k {
        return Err(out_of_range("l", l, format!("1..={k}")));
    }
    let num = binomial_signed(k as i64 - 1, l as i64 - 1)
        * binomial_signed(n as i64 - k as i64 - 1, l as i64 - 1)
        * n as u128;
    if !num.is_multiple_of(l as u128) {
        return Err(Error::Precondition(format!("count not integral at n={n}, k={k}, l={l}")));
    }
    Ok(num / l as u128)
}

/// Twice the number of circular runs of occupied vertices on the `n`-cycle.
pub fn cycle_config_degree(n: usize, c: Config) -> Result<usize> {
    if !(3..=64).contains(&n) {
        return Err(out_of_range("n", n, "3..=64"));
    }
    let full = full_mask(n);
    if c.bits() == 0 || c.bits() & !full != 0 || c.bits() == full {
        return Err(Error::Precondition("need a nonempty proper subset of the cycle".into()));
    }
    let s = c.bits();
    let rotated = ((s >> 1) | (s << (n - 1))) & full;
    // a run starts at every occupied vertex whose successor is free
    Ok(2 * (s & !rotated).count_ones() as usize)
}

fn check_even(n: usize) -> Result<()> {
    if n < 4 || n % 2 == 1 {
        return Err(Error::Precondition(format!("need an even n >= 4, got {n}")));
    }
    Ok(())
}

/// Degree set of the token graph of the `(n-2)`-regular graph on `n` vertices.
pub fn nm2_degree_set(n: usize, k: usize) -> Result<Vec<usize>> {
    check_even(n)?;
    if k < 1 || k > n / 2 {
        return Err(out_of_range("k", k, format!("1..={}", n / 2)));
    }
    let base = k * (n - 2) - k * (k - 1);
    Ok((0..=k / 2).map(|l| base + 2 * l).collect())
}

/// Configs containing exactly `pairs` non-adjacent pairs, i.e. of degree
/// `k(n-2) - k(k-1) + 2 pairs`.
pub fn nm2_level_count(n: usize, k: usize, pairs: usize) -> Result<u128> {
    check_even(n)?;
    if k < 1 || k >= n {
        return Err(out_of_range("k", k, format!("1..={}", n - 1)));
    }
    if pairs > k / 2 {
        return Err(out_of_range("pairs", pairs, format!("0..={}", k / 2)));
    }
    let half = (n / 2) as i64;
    let (k, j) = (k as i64, pairs as i64);
    Ok((0..=k)
        .map(|l| binomial_signed(half, l) * binomial_signed(l, j) * binomial_signed(half - l, k - l - j))
        .sum())
}

/// Claimed connectivity for the star with `beams` leaves.
pub fn star_kpg_connectivity(beams: usize, k: usize) -> Result<usize> {
    if k < 1 || k > beams {
        return Err(out_of_range("k", k, format!("1..={beams}")));
    }
    Ok(if 2 * k <= beams + 1 { k } else { beams + 1 - k })
}

/// Claimed diameter `2k` for the star, valid while `k <= (beams - 1) / 2`.
pub fn star_kpg_diameter(beams: usize, k: usize) -> Result<usize> {
    if k < 1 || 2 * k + 1 > beams {
        return Err(out_of_range("k", k, format!("1..={}", beams.saturating_sub(1) / 2)));
    }
    Ok(2 * k)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    Low,
    High,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightedSubsetResult {
    pub max_size: i64,
    pub case_used: Branch,
    pub y_star_low: i64,
    pub y_star_high: i64,
    pub threshold: f64,
}

fn check_weighted(n: usize, d: usize) -> Result<()> {
    if n < 3 {
        return Err(out_of_range("n", n, ">= 3"));
    }
    if d < 1 || d >= n {
        return Err(out_of_range("degree", d, format!("1..={}", n - 1)));
    }
    if n * d % 2 == 1 {
        return Err(Error::Precondition(format!("no {d}-regular graph on {n} vertices")));
    }
    Ok(())
}

/// The two-branch closed form for the largest set of `k = 2` configs whose
/// degree-weighted share stays at most one half.
pub fn weighted_subset_max(n: usize, d: usize) -> Result<WeightedSubsetResult> {
    check_weighted(n, d)?;
    let (n, d) = (n as i64, d as i64);
    let free = n * (n - 1 - d);
    // floor(free / 4 - d^2 n / (4 (d + 1))) over the common denominator 4 (d + 1)
    let y_star_low = (free * (d + 1) - d * d * n).div_euclid(4 * (d + 1));
    // floor((d + 1) free / (4 d) + d n / 4) over the common denominator 4 d
    let y_star_high = ((d + 1) * free + d * d * n).div_euclid(4 * d);
    let low = 2 * d < n - 1 || (2 * d - (n - 1)).pow(2) <= (n - 1) * (n + 3);
    let threshold = 0.5 * ((n - 1) as f64 + ((n - 1) as f64).sqrt() * ((n + 3) as f64).sqrt());
    let (max_size, case_used) = if low { (n * d / 2 + y_star_low, Branch::Low) } else { (y_star_high, Branch::High) };
    Ok(WeightedSubsetResult { max_size, case_used, y_star_low, y_star_high, threshold })
}

/// Integer optimum of `x + y` with `x <= n d / 2` small-degree configs,
/// `y <= n (n - 1 - d) / 2` large-degree configs and weight
/// `d x + (d + 1) y` at most half the total weight.
pub fn weighted_subset_oracle(n: usize, d: usize) -> Result<i64> {
    check_weighted(n, d)?;
    let (n, d) = (n as i64, d as i64);
    let small = n * d / 2;
    let large = n * (n - 1 - d) / 2;
    let total = d * small + (d + 1) * large;
    let mut best = 0;
    for x in 0..=small {
        for y in 0..=large {
            if 2 * (d * x + (d + 1) * y) <= total {
                best = best.max(x + y);
            }
        }
    }
    Ok(best)
}

/// `C(n, k)`, the total every level-count family must add up to.
pub fn total_configs(n: usize, k: usize) -> u128 {
    binomial(n as u64, k as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn necklace_examples() {
        let counts: Vec<u128> = (1..=3).map(|l| necklace_level_count(7, 3, l).unwrap()).collect();
        assert_eq!(counts, vec![7, 21, 7]);
        assert_eq!(counts.iter().sum::<u128>(), total_configs(7, 3));
        assert_eq!(necklace_level_count(8, 4, 4), Ok(2));
        assert!(necklace_level_count(8, 5, 1).is_err());
        assert!(necklace_level_count(8, 3, 4).is_err());
    }

    #[test]
    fn cycle_degree_examples() {
        assert_eq!(cycle_config_degree(7, Config::from_vertices(&[0, 1, 2])), Ok(2));
        assert_eq!(cycle_config_degree(7, Config::from_vertices(&[0, 2, 4])), Ok(6));
        assert_eq!(cycle_config_degree(8, Config::from_vertices(&[0, 1, 4, 5])), Ok(4));
        assert_eq!(cycle_config_degree(7, Config::from_vertices(&[6, 0])), Ok(2));
        assert!(cycle_config_degree(7, Config(0)).is_err());
        assert!(cycle_config_degree(3, Config(0b111)).is_err());
    }

    #[test]
    fn nm2_examples() {
        assert_eq!(nm2_degree_set(6, 2), Ok(vec![6, 8]));
        assert_eq!(nm2_degree_set(6, 3), Ok(vec![6, 8]));
        assert_eq!(nm2_degree_set(8, 2), Ok(vec![10, 12]));
        assert!(nm2_degree_set(7, 2).is_err());
        assert_eq!(nm2_level_count(6, 2, 1), Ok(3));
        assert_eq!(nm2_level_count(6, 2, 0), Ok(12));
        assert!(nm2_level_count(6, 2, 2).is_err());
    }

    #[test]
    fn star_examples() {
        assert_eq!(star_kpg_connectivity(5, 2), Ok(2));
        assert_eq!(star_kpg_connectivity(3, 2), Ok(2));
        assert_eq!(star_kpg_connectivity(4, 4), Ok(1));
        assert!(star_kpg_connectivity(4, 5).is_err());
        assert_eq!(star_kpg_diameter(5, 2), Ok(4));
        assert_eq!(star_kpg_diameter(7, 3), Ok(6));
        assert_eq!(star_kpg_diameter(3, 1), Ok(2));
        assert!(star_kpg_diameter(4, 2).is_err());
    }

    #[test]
    fn weighted_subset_examples() {
        let r = weighted_subset_max(4, 2).unwrap();
        assert_eq!((r.max_size, r.case_used, r.y_star_low), (3, Branch::Low, -1));
        assert_eq!(weighted_subset_oracle(4, 2), Ok(3));
        let r = weighted_subset_max(6, 2).unwrap();
        assert_eq!(r.max_size, weighted_subset_oracle(6, 2).unwrap());
        assert!(weighted_subset_max(5, 3).is_err());
    }

    #[test]
    fn complete_graph_closed_form_overshoots() {
        // no large-degree configs exist; the low branch still adds a negative y
        let r = weighted_subset_max(5, 4).unwrap();
        assert_eq!((r.case_used, r.y_star_low, r.max_size), (Branch::Low, -4, 6));
        assert_eq!(weighted_subset_oracle(5, 4), Ok(5));
    }
}
