//! Cyclotomic polynomials and the cyclotomic divisors of mask polynomials.
//!
//! `Φ_n` is obtained by exact division of `x^n - 1` by `Φ_d` over the proper
//! divisors `d` of `n`. Whether `e^(2 pi i k/n)` (with `gcd(k, n) = 1`) is a
//! root of `A(x)` is decided by divisibility of `A(x)` by `Φ_n`, its minimal
//! polynomial; nothing here evaluates at complex points.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use serde::{Deserialize, Serialize};

use crate::arith::{divisors, lcm_all, prime_power, totient};
use crate::error::{Error, Result};
use crate::intpoly::{IntPoly, TileSet};
use crate::rational::Reduced;

/// Memo table of cyclotomic polynomials, grown on demand.
///
/// Safe to share between threads. Two workers that miss on the same index
/// compute identical polynomials, so whichever insert wins is fine.
#[derive(Debug, Default)]
pub struct CycloCache {
    table: RwLock<HashMap<u64, Arc<IntPoly>>>,
}

impl CycloCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// Process-wide cache used by the free functions of this module.
    pub fn global() -> &'static CycloCache {
        static CACHE: OnceLock<CycloCache> = OnceLock::new();
        CACHE.get_or_init(CycloCache::new)
    }

    pub fn len(&self) -> usize {
        self.table.read().expect("cyclotomic cache poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, n: u64) -> Result<Arc<IntPoly>> {
        if n == 0 {
            return Err(Error::ZeroCyclotomicIndex);
        }
        if let Some(p) = self.table.read().expect("cyclotomic cache poisoned").get(&n) {
            return Ok(Arc::clone(p));
        }
        let mut phi = IntPoly::x_pow_minus_one(n as usize);
        for d in divisors(n).into_iter().filter(|&d| d < n) {
            let (q, r) = phi.divrem(&*self.get(d)?)?;
            debug_assert!(r.is_zero(), "Φ_{d} must divide x^{n} - 1");
            phi = q;
        }
        let phi = Arc::new(phi);
        let mut table = self.table.write().expect("cyclotomic cache poisoned");
        Ok(Arc::clone(table.entry(n).or_insert(phi)))
    }

    /// All `n >= 2` with `Φ_n | p`, for a nonzero polynomial `p`.
    ///
    /// Candidates are every `n` with `φ(n) <= deg p`; since `φ(n) >= sqrt(n/2)`
    /// these all satisfy `n <= 2 deg(p)^2`.
    pub fn divisors_of(&self, p: &IntPoly) -> Vec<u64> {
        let deg = p.degree().expect("nonzero polynomial") as u64;
        if deg == 0 {
            return Vec::new();
        }
        (2..=2 * deg * deg)
            .filter(|&n| totient(n) <= deg)
            .filter(|&n| {
                let phi = self.get(n).expect("n >= 2");
                p.is_divisible_by(&phi).expect("cyclotomic polynomials are monic")
            })
            .collect()
    }

    pub fn profile(&self, set: &TileSet) -> CycloProfile {
        CycloProfile::from_divisors(set.clone(), self.divisors_of(&set.mask_poly()))
    }
}

/// The `n`-th cyclotomic polynomial.
pub fn cyclotomic(n: u64) -> Result<IntPoly> {
    Ok((*CycloCache::global().get(n)?).clone())
}

/// `Φ_n(1)`: 0 for `n = 1`, `p` for `n = p^k`, otherwise 1.
pub fn cyclo_at_one(n: u64) -> u64 {
    assert!(n >= 1, "cyclo_at_one: n must be positive");
    if n == 1 {
        return 0;
    }
    prime_power(n).map_or(1, |(p, _)| p)
}

/// Sorted list of all `n >= 2` with `Φ_n | A(x)`.
pub fn cyclotomic_divisors(set: &TileSet) -> Vec<u64> {
    CycloCache::global().divisors_of(&set.mask_poly())
}

pub fn profile(set: &TileSet) -> CycloProfile {
    CycloCache::global().profile(set)
}

/// Whether `e^(2 pi i q)` is a root of `A(x)`.
pub fn is_root(set: &TileSet, q: Reduced) -> Result<bool> {
    if q.is_zero() {
        return Err(Error::TrivialRoot);
    }
    let phi = CycloCache::global().get(q.den())?;
    set.mask_poly().is_divisible_by(&phi)
}

/// Cyclotomic data of a set: its cyclotomic divisors, the prime-power part
/// `S_A`, and the two Coven-Meyerowitz conditions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycloProfile {
    pub set: TileSet,
    /// All `n >= 2` with `Φ_n | A(x)`, sorted.
    pub divisors: Vec<u64>,
    /// Prime powers among `divisors`.
    pub s_a: Vec<u64>,
    /// `A(1) = Π_{s ∈ S_A} Φ_s(1)`.
    pub t1: bool,
    /// For prime powers `s_1, ..., s_k ∈ S_A` of distinct primes, `Φ_{s_1...s_k} | A(x)`.
    pub t2: bool,
}

impl CycloProfile {
    /// `divisors` must be the complete sorted list of cyclotomic divisors of `A(x)`.
    pub fn from_divisors(set: TileSet, divisors: Vec<u64>) -> Self {
        let s_a: Vec<u64> = divisors
            .iter()
            .copied()
            .filter(|&n| prime_power(n).is_some())
            .collect();
        let product = s_a
            .iter()
            .try_fold(1u64, |acc, &s| acc.checked_mul(cyclo_at_one(s)));
        let t1 = product == Some(set.len() as u64);
        let t2 = products_of_distinct_primes(&s_a)
            .iter()
            .all(|m| divisors.binary_search(m).is_ok());
        CycloProfile {
            set,
            divisors,
            s_a,
            t1,
            t2,
        }
    }

    /// `lcm(S_A)`, 1 when `S_A` is empty; `None` on overflow.
    pub fn s_a_lcm(&self) -> Option<u64> {
        lcm_all(self.s_a.iter().copied())
    }

    /// `lcm` of all cyclotomic divisors, 1 when there are none.
    pub fn divisors_lcm(&self) -> Option<u64> {
        lcm_all(self.divisors.iter().copied())
    }

    /// Root test against the stored divisor list.
    pub fn has_root(&self, q: Reduced) -> Result<bool> {
        if q.is_zero() {
            return Err(Error::TrivialRoot);
        }
        Ok(self.divisors.binary_search(&q.den()).is_ok())
    }

    pub fn is_admissible_denominator(&self, n: u64) -> bool {
        self.divisors.binary_search(&n).is_ok()
    }
}

/// Products `s_1 ... s_k`, `k >= 2`, of members of `s_a` that are powers of
/// pairwise distinct primes. Singletons are skipped: they divide `A(x)` by
/// definition of `S_A`.
fn products_of_distinct_primes(s_a: &[u64]) -> Vec<u64> {
    let mut by_prime: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    for &s in s_a {
        let (p, _) = prime_power(s).expect("S_A holds prime powers");
        by_prime.entry(p).or_default().push(s);
    }
    let groups: Vec<Vec<u64>> = by_prime.into_values().collect();
    let mut out = Vec::new();
    fn walk(groups: &[Vec<u64>], product: u64, chosen: usize, out: &mut Vec<u64>) {
        match groups.split_first() {
            None => {
                if chosen >= 2 {
                    out.push(product);
                }
            }
            Some((head, tail)) => {
                walk(tail, product, chosen, out);
                for &s in head {
                    walk(tail, product * s, chosen + 1, out);
                }
            }
        }
    }
    walk(&groups, 1, 0, &mut out);
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(e: &[u64]) -> TileSet {
        TileSet::new(e.to_vec()).unwrap()
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic(1).unwrap(), IntPoly::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic(2).unwrap(), IntPoly::from_i64(&[1, 1]));
        assert_eq!(cyclotomic(12).unwrap(), IntPoly::from_i64(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic(0), Err(Error::ZeroCyclotomicIndex));
    }

    #[test]
    fn phi_105_has_a_coefficient_of_magnitude_two() {
        let phi = cyclotomic(105).unwrap();
        assert_eq!(phi.degree(), Some(48));
        assert_eq!(phi.height(), 2u32.into());
        for n in 1..105 {
            assert_eq!(cyclotomic(n).unwrap().height(), 1u32.into(), "n = {n}");
        }
    }

    #[test]
    fn values_at_one() {
        assert_eq!(cyclo_at_one(1), 0);
        assert_eq!(cyclo_at_one(9), 3);
        assert_eq!(cyclo_at_one(6), 1);
        assert_eq!(cyclo_at_one(2), 2);
    }

    #[test]
    fn divisor_lists() {
        assert_eq!(cyclotomic_divisors(&set(&[0, 1, 6, 7])), vec![2, 4, 12]);
        assert_eq!(cyclotomic_divisors(&set(&[0, 1, 2])), vec![3]);
        assert!(cyclotomic_divisors(&set(&[0, 1, 3])).is_empty());
        assert!(cyclotomic_divisors(&set(&[0])).is_empty());
    }

    #[test]
    fn profiles() {
        let p = profile(&set(&[0, 1, 6, 7]));
        assert_eq!(p.s_a, vec![2, 4]);
        assert!(p.t1 && p.t2);
        assert_eq!(p.s_a_lcm(), Some(4));

        let p = profile(&set(&[0, 1, 2, 3]));
        assert_eq!(p.divisors, vec![2, 4]);
        assert_eq!(p.s_a, vec![2, 4]);
        assert!(p.t1 && p.t2);

        let p = profile(&set(&[0, 1, 3]));
        assert!(p.s_a.is_empty());
        assert!(!p.t1);

        let p = profile(&set(&[0]));
        assert!(p.t1 && p.t2);
        assert_eq!(p.s_a_lcm(), Some(1));
    }

    #[test]
    fn t2_failure_detected() {
        // synthetic divisor lists isolate the (T2) check
        let p = CycloProfile::from_divisors(set(&[0, 1, 2, 3, 4, 5]), vec![2, 3]);
        assert!(p.t1);
        assert!(!p.t2);
        let p = CycloProfile::from_divisors(set(&[0, 1, 2, 3, 4, 5]), vec![2, 3, 6]);
        assert!(p.t1 && p.t2);
    }

    #[test]
    fn distinct_prime_products() {
        assert!(products_of_distinct_primes(&[2, 4]).is_empty());
        assert_eq!(products_of_distinct_primes(&[2, 3]), vec![6]);
        assert_eq!(products_of_distinct_primes(&[2, 4, 3]), vec![6, 12]);
        assert_eq!(products_of_distinct_primes(&[2, 3, 5]), vec![6, 10, 15, 30]);
    }

    #[test]
    fn roots() {
        let a = set(&[0, 1, 6, 7]);
        assert!(is_root(&a, Reduced::frac(1, 12)).unwrap());
        assert!(!is_root(&a, Reduced::frac(1, 3)).unwrap());
        assert!(is_root(&set(&[0, 1, 2]), Reduced::frac(2, 3)).unwrap());
        assert_eq!(is_root(&a, Reduced::ZERO), Err(Error::TrivialRoot));
        let p = profile(&a);
        assert!(p.has_root(Reduced::frac(5, 12)).unwrap());
        assert!(!p.has_root(Reduced::frac(1, 6)).unwrap());
    }

    #[test]
    fn private_cache_matches_global() {
        let cache = CycloCache::new();
        assert!(cache.is_empty());
        assert_eq!(*cache.get(30).unwrap(), cyclotomic(30).unwrap());
        assert_eq!(cache.len(), 8);
    }
}
