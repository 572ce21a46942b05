//! Tilings of the integers by translates of a finite set.
//!
//! A tiling `A ⊕ T = Z` with `T = B + nZ` is certified by the period `n` and
//! the complement `B ⊂ Z_n`; the certificate is checked by the identity
//! `A(x) B(x) ≡ P_n(x) (mod x^n - 1)`.

use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, prime_power};
use crate::cyclotomic::{CycloCache, CycloProfile};
use crate::error::{Error, Result};
use crate::intpoly::{IntPoly, TileSet};

/// Hard ceiling applied to default period bounds.
pub const DEFAULT_PERIOD_LIMIT: u64 = 4096;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TilingCertificate {
    pub period: u64,
    pub complement: Vec<u64>,
}

impl TilingCertificate {
    pub fn complement_set(&self) -> TileSet {
        TileSet::new(self.complement.clone()).expect("complements are normalized to contain 0")
    }

    /// Exact check of `#A · #B = n` and `A(x) B(x) ≡ P_n(x) (mod x^n - 1)`.
    pub fn verify(&self, set: &TileSet) -> bool {
        if self.period == 0 || (set.len() * self.complement.len()) as u64 != self.period {
            return false;
        }
        if self.complement.iter().any(|&b| b >= self.period) {
            return false;
        }
        let Ok(b) = TileSet::new(self.complement.clone()) else {
            return false;
        };
        let n = self.period as usize;
        let product = &set.mask_poly() * &b.mask_poly();
        product.mod_cyclic(n).is_ok_and(|r| r == IntPoly::all_ones(n))
    }

    /// The same tiling viewed with period `m`, a multiple of `self.period`:
    /// `B' = B + {0, n, ..., m - n}`.
    pub fn at_period(&self, m: u64) -> Option<TilingCertificate> {
        if self.period == 0 || m == 0 || m % self.period != 0 {
            return None;
        }
        let mut complement: Vec<u64> = (0..m / self.period)
            .flat_map(|j| self.complement.iter().map(move |&b| b + j * self.period))
            .collect();
        complement.sort_unstable();
        Some(TilingCertificate {
            period: m,
            complement,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TilingStatus {
    Tiles,
    DoesNotTile,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TilingReason {
    T1Fails,
    CertificateFound,
    SearchExhausted,
}

/// Outcome of the tiling decision pipeline.
///
/// The only refutation is failure of (T1), which every tile satisfies. An
/// exhausted search proves nothing and is reported as `Unknown`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum TilingVerdict {
    Tiles { certificate: TilingCertificate },
    DoesNotTile,
    Unknown { period_bound: u64 },
}

impl TilingVerdict {
    pub fn status(&self) -> TilingStatus {
        match self {
            TilingVerdict::Tiles { .. } => TilingStatus::Tiles,
            TilingVerdict::DoesNotTile => TilingStatus::DoesNotTile,
            TilingVerdict::Unknown { .. } => TilingStatus::Unknown,
        }
    }

    pub fn reason(&self) -> TilingReason {
        match self {
            TilingVerdict::Tiles { .. } => TilingReason::CertificateFound,
            TilingVerdict::DoesNotTile => TilingReason::T1Fails,
            TilingVerdict::Unknown { .. } => TilingReason::SearchExhausted,
        }
    }

    pub fn certificate(&self) -> Option<&TilingCertificate> {
        match self {
            TilingVerdict::Tiles { certificate } => Some(certificate),
            _ => None,
        }
    }

    pub fn tiles(&self) -> bool {
        matches!(self, TilingVerdict::Tiles { .. })
    }
}

/// Searches for `B ⊂ Z_n` with `A ⊕ B = Z_n`.
///
/// Backtracking always covers the smallest uncovered residue `r` next, trying
/// every translate `r - a` (`a ∈ A`) that fits. The first translate is fixed
/// at 0, which loses nothing since any complement can be shifted to contain 0.
pub fn find_complement(set: &TileSet, n: u64) -> Result<Option<TilingCertificate>> {
    if n == 0 || n % set.len() as u64 != 0 {
        return Err(Error::PeriodNotMultiple {
            period: n,
            size: set.len(),
        });
    }
    let nu = n as usize;
    let mut residues: Vec<usize> = set.elements().iter().map(|&a| (a % n) as usize).collect();
    residues.sort_unstable();
    if residues.windows(2).any(|w| w[0] == w[1]) {
        return Ok(None);
    }
    let mut search = ComplementSearch {
        n: nu,
        residues,
        covered: vec![false; nu],
        placed: Vec::with_capacity(nu / set.len()),
    };
    search.place(0);
    if !search.extend(0) {
        return Ok(None);
    }
    let mut complement: Vec<u64> = search.placed.iter().map(|&t| t as u64).collect();
    complement.sort_unstable();
    let cert = TilingCertificate {
        period: n,
        complement,
    };
    debug_assert!(cert.verify(set));
    Ok(Some(cert))
}

struct ComplementSearch {
    n: usize,
    residues: Vec<usize>,
    covered: Vec<bool>,
    placed: Vec<usize>,
}

impl ComplementSearch {
    fn fits(&self, t: usize) -> bool {
        self.residues.iter().all(|&a| !self.covered[(t + a) % self.n])
    }

    fn place(&mut self, t: usize) {
        for &a in &self.residues {
            self.covered[(t + a) % self.n] = true;
        }
        self.placed.push(t);
    }

    fn unplace(&mut self) {
        let t = self.placed.pop().expect("something placed");
        for &a in &self.residues {
            self.covered[(t + a) % self.n] = false;
        }
    }

    fn extend(&mut self, from: usize) -> bool {
        let Some(r) = (from..self.n).find(|&r| !self.covered[r]) else {
            return true;
        };
        for i in 0..self.residues.len() {
            let t = (r + self.n - self.residues[i]) % self.n;
            if self.fits(t) {
                self.place(t);
                if self.extend(r + 1) {
                    return true;
                }
                self.unplace();
            }
        }
        false
    }
}

/// Default search bound: `4 · lcm(S_A)` when `S_A` is nonempty, otherwise
/// `4 · M · N`, capped at `hard_limit` but never below `N`.
pub fn default_period_bound(profile: &CycloProfile, hard_limit: u64) -> u64 {
    let set = &profile.set;
    let n = set.len() as u64;
    let raw = if profile.s_a.is_empty() {
        4u64.saturating_mul(set.span()).saturating_mul(n)
    } else {
        profile.s_a_lcm().map_or(u64::MAX, |l| l.saturating_mul(4))
    };
    raw.min(hard_limit).max(n)
}

/// Decides whether `A` tiles `Z`, searching periods up to `period_bound`.
pub fn tiles_z(set: &TileSet, period_bound: u64) -> Result<TilingVerdict> {
    tiles_z_with_profile(&CycloCache::global().profile(set), period_bound)
}

/// Same as [`tiles_z`] for an already computed profile.
///
/// (T1) failing refutes tiling. When (T1) and (T2) hold, periods
/// `lcm(S_A), 2 lcm(S_A), ...` are tried first. Otherwise, or if those fail,
/// every multiple of `N` up to the bound is tried.
pub fn tiles_z_with_profile(profile: &CycloProfile, period_bound: u64) -> Result<TilingVerdict> {
    let set = &profile.set;
    let size = set.len() as u64;
    if period_bound < size {
        return Err(Error::PeriodBoundTooSmall {
            bound: period_bound,
            size: set.len(),
        });
    }
    if !profile.t1 {
        return Ok(TilingVerdict::DoesNotTile);
    }
    if profile.t2 {
        if let Some(l) = profile.s_a_lcm() {
            let mut period = l;
            while period <= period_bound {
                if let Some(certificate) = find_complement(set, period)? {
                    return Ok(TilingVerdict::Tiles { certificate });
                }
                period = match period.checked_add(l) {
                    Some(p) => p,
                    None => break,
                };
            }
        }
    }
    let mut period = size;
    while period <= period_bound {
        if let Some(certificate) = find_complement(set, period)? {
            return Ok(TilingVerdict::Tiles { certificate });
        }
        period += size;
    }
    Ok(TilingVerdict::Unknown { period_bound })
}

/// Whether the residues of `A` mod `N` are exactly `{0, ..., N-1}`, i.e.
/// `A ⊕ NZ = Z`.
pub fn is_fundamental_domain(set: &TileSet) -> bool {
    let n = set.len() as u64;
    let mut seen = vec![false; set.len()];
    for &a in set.elements() {
        let r = (a % n) as usize;
        if seen[r] {
            return false;
        }
        seen[r] = true;
    }
    true
}

/// `Some((p, d))` when `N = p` is prime and `A = {0, d, 2d, ..., (p-1)d}` with
/// `d` a power of `p`. Exactly then `A(x) = Φ_{p·d}(x)`.
pub fn progression_form(set: &TileSet) -> Option<(u64, u64)> {
    let p = set.len() as u64;
    if p < 2 || !is_prime(p) {
        return None;
    }
    let d = set.elements()[1];
    let is_power_of_p = d == 1 || prime_power(d).is_some_and(|(q, _)| q == p);
    if !is_power_of_p {
        return None;
    }
    let progression = set
        .elements()
        .iter()
        .enumerate()
        .all(|(k, &a)| a == k as u64 * d);
    progression.then_some((p, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::cyclotomic;

    fn set(e: &[u64]) -> TileSet {
        TileSet::new(e.to_vec()).unwrap()
    }

    #[test]
    fn complements() {
        let c = find_complement(&set(&[0, 2]), 4).unwrap().unwrap();
        assert_eq!(c.complement, vec![0, 1]);
        let a = set(&[0, 1, 6, 7]);
        let c = find_complement(&a, 8).unwrap().unwrap();
        assert_eq!(c.complement, vec![0, 4]);
        assert!(c.verify(&a));
        let c = find_complement(&TileSet::singleton(), 1).unwrap().unwrap();
        assert_eq!(c.complement, vec![0]);
    }

    #[test]
    fn complement_rejects_non_multiple_period() {
        assert_eq!(
            find_complement(&set(&[0, 2]), 5),
            Err(Error::PeriodNotMultiple { period: 5, size: 2 })
        );
        assert!(find_complement(&set(&[0, 2]), 0).is_err());
    }

    #[test]
    fn colliding_residues_have_no_complement() {
        // 0 ≡ 4 (mod 4)
        assert_eq!(find_complement(&set(&[0, 4]), 4).unwrap(), None);
        assert_eq!(find_complement(&set(&[0, 1, 3]), 3).unwrap(), None);
    }

    #[test]
    fn certificate_verification_rejects_bad_data() {
        let a = set(&[0, 2]);
        let good = TilingCertificate { period: 4, complement: vec![0, 1] };
        assert!(good.verify(&a));
        for bad in [
            TilingCertificate { period: 4, complement: vec![0, 2] },
            TilingCertificate { period: 4, complement: vec![0] },
            TilingCertificate { period: 4, complement: vec![0, 5] },
            TilingCertificate { period: 0, complement: vec![] },
        ] {
            assert!(!bad.verify(&a), "{bad:?}");
        }
    }

    #[test]
    fn verdicts() {
        assert_eq!(tiles_z(&set(&[0, 1, 3]), 64).unwrap(), TilingVerdict::DoesNotTile);
        let a = set(&[0, 1, 6, 7]);
        let v = tiles_z(&a, 64).unwrap();
        assert_eq!(v.reason(), TilingReason::CertificateFound);
        // first period tried is lcm(S_A) = 4; the period-8 view is B = {0, 4}
        let cert = v.certificate().unwrap();
        assert_eq!(cert.period, 4);
        let lifted = cert.at_period(8).unwrap();
        assert_eq!(lifted.complement, vec![0, 4]);
        assert!(lifted.verify(&a));
        let v = tiles_z(&TileSet::singleton(), 8).unwrap();
        assert_eq!(v.certificate().unwrap().period, 1);
        assert!(matches!(
            tiles_z(&set(&[0, 1, 6, 7]), 3),
            Err(Error::PeriodBoundTooSmall { bound: 3, size: 4 })
        ));
    }

    #[test]
    fn lifting_certificates() {
        let a = set(&[0, 2]);
        let c = TilingCertificate { period: 4, complement: vec![0, 1] };
        let l = c.at_period(12).unwrap();
        assert_eq!(l.complement, vec![0, 1, 4, 5, 8, 9]);
        assert!(l.verify(&a));
        assert_eq!(c.at_period(6), None);
    }

    #[test]
    fn fundamental_domains() {
        assert!(is_fundamental_domain(&set(&[0, 1, 6, 7])));
        assert!(is_fundamental_domain(&set(&[0, 1, 2])));
        assert!(is_fundamental_domain(&set(&[0, 2, 4])));
        assert!(!is_fundamental_domain(&set(&[0, 2])));
        assert!(is_fundamental_domain(&TileSet::singleton()));
        // A ⊕ 4Z = Z directly: period-4 certificate with B = {0}
        let c = find_complement(&set(&[0, 1, 6, 7]), 4).unwrap().unwrap();
        assert_eq!(c.complement, vec![0]);
    }

    #[test]
    fn progressions() {
        assert_eq!(progression_form(&set(&[0, 3, 6])), Some((3, 3)));
        assert_eq!(progression_form(&set(&[0, 1, 2])), Some((3, 1)));
        assert_eq!(progression_form(&set(&[0, 1, 6, 7])), None);
        assert_eq!(progression_form(&set(&[0, 2, 4])), None);
        assert_eq!(progression_form(&set(&[0, 9, 18])), Some((3, 9)));
        assert_eq!(progression_form(&set(&[0, 4])), Some((2, 4)));
        assert_eq!(progression_form(&set(&[0, 3, 7])), None);
        assert_eq!(progression_form(&TileSet::singleton()), None);
        for (e, n) in [(vec![0, 3, 6], 9), (vec![0, 1, 2], 3), (vec![0, 4], 8)] {
            assert_eq!(set(&e).mask_poly(), cyclotomic(n).unwrap());
        }
    }

    #[test]
    fn default_bounds() {
        let cache = CycloCache::new();
        let p = cache.profile(&set(&[0, 1, 6, 7]));
        assert_eq!(default_period_bound(&p, DEFAULT_PERIOD_LIMIT), 16);
        assert_eq!(default_period_bound(&p, 10), 10);
        let p = cache.profile(&set(&[0, 1, 3]));
        assert_eq!(default_period_bound(&p, DEFAULT_PERIOD_LIMIT), 48);
        let p = cache.profile(&TileSet::singleton());
        assert_eq!(default_period_bound(&p, DEFAULT_PERIOD_LIMIT), 4);
    }
}
