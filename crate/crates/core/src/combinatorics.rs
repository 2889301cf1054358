//! Binomials, falling factorials and the combinatorial number system on
//! bitmask-encoded k-subsets.
//!
//! Subsets of `{0, .., n-1}` are `u64` masks. Ranking is colexicographic,
//! which coincides with increasing numeric order of the masks, so
//! [`KSubsets`] yields masks exactly in rank order.

/// `C(n, k)`, zero when `k > n`. Panics on overflow of `u128`, which cannot
/// happen for `n <= 64`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 1..=k as u128 {
        acc = acc * (n as u128 - k as u128 + i) / i;
    }
    acc
}

/// Binomial with the convention `C(n, k) = 0` for negative `k` or `k > n`
/// and `C(n, k) = 0` for negative `n`.
pub fn binomial_signed(n: i64, k: i64) -> u128 {
    if n < 0 || k < 0 || k > n {
        0
    } else {
        binomial(n as u64, k as u64)
    }
}

/// `n! / (n - k)!`, zero when `k > n`.
pub fn falling_factorial(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as u128)?;
    }
    Some(acc)
}

/// Precomputed Pascal triangle for ranking subsets of an `n`-set.
#[derive(Debug, Clone)]
pub struct BinomialTable {
    n: usize,
    rows: Vec<Vec<u64>>,
}

impl BinomialTable {
    pub fn new(n: usize) -> Self {
        let mut rows = vec![vec![0u64; n + 2]; n + 1];
        for i in 0..=n {
            rows[i][0] = 1;
            for j in 1..=i {
                rows[i][j] = rows[i - 1][j - 1].saturating_add(if j < i { rows[i - 1][j] } else { 0 });
            }
        }
        BinomialTable { n, rows }
    }

    pub fn get(&self, n: usize, k: usize) -> u64 {
        if n > self.n || k > n {
            0
        } else {
            self.rows[n][k]
        }
    }

    /// Colex rank of `mask` among all subsets of the same size.
    pub fn rank(&self, mut mask: u64) -> usize {
        let mut rank = 0u64;
        let mut i = 1;
        while mask != 0 {
            let c = mask.trailing_zeros() as usize;
            rank += self.get(c, i);
            mask &= mask - 1;
            i += 1;
        }
        rank as usize
    }

    /// Inverse of [`BinomialTable::rank`] for subsets of size `k`.
    pub fn unrank(&self, mut rank: u64, k: usize) -> u64 {
        let mut mask = 0u64;
        for i in (1..=k).rev() {
            let mut c = i - 1;
            while self.get(c + 1, i) <= rank {
                c += 1;
            }
            rank -= self.get(c, i);
            mask |= 1 << c;
        }
        mask
    }
}

/// All `k`-subsets of `{0, .., n-1}` as masks in increasing order (Gosper's hack).
#[derive(Debug, Clone)]
pub struct KSubsets {
    next: Option<u64>,
    limit: u64,
}

impl KSubsets {
    pub fn new(n: usize, k: usize) -> Self {
        assert!(n <= 64, "at most 64 elements");
        let next = if k > n {
            None
        } else if k == 0 {
            Some(0)
        } else if k == 64 {
            Some(u64::MAX)
        } else {
            Some((1u64 << k) - 1)
        };
        let limit = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        KSubsets { next, limit }
    }
}

impl Iterator for KSubsets {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let cur = self.next?;
        self.next = if cur == 0 {
            None
        } else {
            let low = cur & cur.wrapping_neg();
            match cur.checked_add(low) {
                Some(ripple) => {
                    let ones = ((ripple ^ cur) >> 2) / low;
                    let nxt = ripple | ones;
                    (nxt <= self.limit && nxt & !self.limit == 0).then_some(nxt)
                }
                None => None,
            }
        };
        Some(cur)
    }
}

/// Iterate the set bits of a mask in ascending order.
pub fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let b = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(b)
        }
    })
}

pub fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
