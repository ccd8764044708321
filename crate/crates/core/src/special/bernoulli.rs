//! Bernoulli numbers as exact rationals, convention `B_1 = -1/2`.
//!
//! Even-index values come from the integer tangent-number recurrence,
//! which needs only small-integer multiplications of big integers:
//! `B_{2k} = (-1)^{k-1} 2k T_k / (4^k (4^k - 1))`.

use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

pub const DEFAULT_BERNOULLI_CAP: usize = 2000;

/// Grow-only table `n -> B_n`. Readers share a lock; growth is serialized
/// behind the write lock and recomputes the table up to the new size.
pub struct BernoulliCache {
    table: RwLock<Vec<Rational>>,
    cap: usize,
}

impl BernoulliCache {
    pub fn new(cap: usize) -> Self {
        BernoulliCache {
            table: RwLock::new(Vec::new()),
            cap,
        }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// Number of entries currently cached (`B_0 .. B_{max_index}`).
    pub fn len(&self) -> usize {
        self.table.read().expect("bernoulli cache poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn max_index(&self) -> Option<usize> {
        self.len().checked_sub(1)
    }

    pub fn get(&self, n: usize) -> Result<Rational> {
        if n > self.cap {
            return Err(Error::Resource(format!(
                "Bernoulli index {n} exceeds cap {}",
                self.cap
            )));
        }
        {
            let table = self.table.read().expect("bernoulli cache poisoned");
            if let Some(b) = table.get(n) {
                return Ok(b.clone());
            }
        }
        let mut table = self.table.write().expect("bernoulli cache poisoned");
        if n >= table.len() {
            let target = (n + 1).max(2 * table.len()).max(64).min(self.cap + 1);
            *table = compute_table(target - 1);
        }
        Ok(table[n].clone())
    }

    /// Snapshot of `B_0 ..= B_n`.
    pub fn range(&self, n: usize) -> Result<Vec<Rational>> {
        self.get(n)?;
        let table = self.table.read().expect("bernoulli cache poisoned");
        Ok(table[..=n].to_vec())
    }
}

impl Default for BernoulliCache {
    fn default() -> Self {
        Self::new(DEFAULT_BERNOULLI_CAP)
    }
}

fn global() -> &'static BernoulliCache {
    static CACHE: OnceLock<BernoulliCache> = OnceLock::new();
    CACHE.get_or_init(BernoulliCache::default)
}

/// `B_n` from the process-wide cache (cap 2000).
pub fn bernoulli(n: usize) -> Result<Rational> {
    global().get(n)
}

/// Exact `zeta(-n)`: `-1/2` at `n = 0`, otherwise `-B_{n+1}/(n+1)`.
pub fn zeta_neg_int_exact(n: usize) -> Result<Rational> {
    if n == 0 {
        return Ok(Rational::new(-1, 2));
    }
    if n.is_multiple_of(2) {
        // Trivial zero; skip the table so large even n stay cheap.
        if n + 1 > global().cap() {
            return Err(Error::Resource(format!(
                "Bernoulli index {} exceeds cap {}",
                n + 1,
                global().cap()
            )));
        }
        return Ok(Rational::zero());
    }
    let b = bernoulli(n + 1)?;
    Ok(-(b / Rational::from(n as i64 + 1)))
}

/// Full table `B_0 ..= B_max`.
fn compute_table(max: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); max + 1];
    out[0] = Rational::one();
    if max >= 1 {
        out[1] = Rational::new(-1, 2);
    }
    let kmax = max / 2;
    let tangent = tangent_numbers(kmax);
    for k in 1..=kmax {
        let four_k = BigInt::one() << (2 * k);
        let den = &four_k * (&four_k - BigInt::one());
        let mut num = BigInt::from(2 * k) * &tangent[k];
        if k % 2 == 0 {
            num = -num;
        }
        out[2 * k] = Rational::new(num, den);
    }
    out
}

/// Tangent numbers `T_1 ..= T_n` (index 0 unused): 1, 2, 16, 272, ...
fn tangent_numbers(n: usize) -> Vec<BigInt> {
    let mut t = vec![BigInt::zero(); n + 1];
    if n == 0 {
        return t;
    }
    t[1] = BigInt::one();
    for k in 2..=n {
        t[k] = &t[k - 1] * (k - 1);
    }
    for k in 2..=n {
        for j in k..=n {
            t[j] = &t[j - 1] * (j - k) + &t[j] * (j - k + 2);
        }
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom_row(m: usize) -> Vec<BigInt> {
        let mut row = vec![BigInt::one()];
        for j in 1..=m {
            let next = &row[j - 1] * (m + 1 - j) / j;
            row.push(next);
        }
        row
    }

    #[test]
    fn small_values() {
        assert_eq!(bernoulli(0).unwrap(), Rational::one());
        assert_eq!(bernoulli(1).unwrap(), Rational::new(-1, 2));
        assert_eq!(bernoulli(2).unwrap(), Rational::new(1, 6));
        assert_eq!(bernoulli(4).unwrap(), Rational::new(-1, 30));
        assert_eq!(bernoulli(12).unwrap(), Rational::new(-691, 2730));
        assert_eq!(bernoulli(7).unwrap(), Rational::zero());
    }

    #[test]
    fn tangent_numbers_start() {
        let t = tangent_numbers(5);
        let want = [0, 1, 2, 16, 272, 7936];
        for (got, w) in t.iter().zip(want) {
            assert_eq!(got, &BigInt::from(w));
        }
    }

    /// Defining recurrence `sum_{j=0}^{m} binom(m+1, j) B_j = 0`, checked
    /// exactly against the tangent-number table.
    #[test]
    fn satisfies_defining_recurrence() {
        let cache = BernoulliCache::new(200);
        let table = cache.range(120).unwrap();
        for m in 1..=119 {
            let binom = binom_row(m + 1);
            let sum = (0..=m).fold(Rational::zero(), |acc, j| {
                acc + Rational::from_integer(binom[j].clone()) * &table[j]
            });
            assert!(sum.is_zero(), "recurrence fails at m = {m}");
        }
    }

    #[test]
    fn cap_is_enforced() {
        let cache = BernoulliCache::new(50);
        assert!(cache.get(50).is_ok());
        assert!(matches!(cache.get(51), Err(Error::Resource(_))));
        assert!(matches!(bernoulli(2001), Err(Error::Resource(_))));
    }

    #[test]
    fn cache_grows_monotonically() {
        let cache = BernoulliCache::new(500);
        assert!(cache.is_empty());
        cache.get(10).unwrap();
        let first = cache.len();
        cache.get(3).unwrap();
        assert_eq!(cache.len(), first);
        cache.get(300).unwrap();
        assert!(cache.len() > 300);
        assert_eq!(cache.get(12).unwrap(), Rational::new(-691, 2730));
    }

    #[test]
    fn concurrent_readers() {
        let cache = BernoulliCache::new(400);
        std::thread::scope(|scope| {
            for i in 0..8 {
                let cache = &cache;
                scope.spawn(move || {
                    let n = 40 * (i + 1);
                    let b = cache.get(n).unwrap();
                    assert_eq!(b.signum(), if (n / 2) % 2 == 1 { 1 } else { -1 });
                });
            }
        });
    }

    #[test]
    fn exact_zeta_at_negative_integers() {
        assert_eq!(zeta_neg_int_exact(0).unwrap(), Rational::new(-1, 2));
        assert_eq!(zeta_neg_int_exact(1).unwrap(), Rational::new(-1, 12));
        assert_eq!(zeta_neg_int_exact(2).unwrap(), Rational::zero());
        assert_eq!(zeta_neg_int_exact(3).unwrap(), Rational::new(1, 120));
        assert_eq!(zeta_neg_int_exact(11).unwrap(), Rational::new(691, 32760));
    }
}
