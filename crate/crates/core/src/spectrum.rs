//! Spectra of mask polynomials.
//!
//! A spectrum of `A` is a set `Θ = {θ_0 = 0, ..., θ_{N-1}} ⊂ [0, 1)` of `N`
//! distinct values such that `A(e^(2 pi i (θ_i - θ_j))) = 0` for all `i != j`;
//! then `Θ + Z` is a spectrum of the domain `A + [0, 1)`. All verdicts here are
//! exact. The complex-valued functions at the bottom exist only to cross-check
//! them numerically.

use std::collections::BTreeSet;
use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;
use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::prime_power;
use crate::cyclotomic::{CycloCache, CycloProfile};
use crate::error::{Error, Result};
use crate::intpoly::TileSet;
use crate::rational::Reduced;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Reduced>", into = "Vec<Reduced>")]
pub struct Spectrum {
    thetas: Vec<Reduced>,
}

impl Spectrum {
    /// Sorts the values; they must be distinct and include 0.
    pub fn new(mut thetas: Vec<Reduced>) -> Result<Self> {
        thetas.sort();
        if let Some(w) = thetas.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateTheta(w[0].to_string()));
        }
        if thetas.first() != Some(&Reduced::ZERO) {
            return Err(Error::SpectrumMissingZero);
        }
        Ok(Spectrum { thetas })
    }

    /// `{0, 1/n, ..., (n-1)/n}`.
    pub fn uniform(n: u64) -> Self {
        assert!(n >= 1);
        Spectrum {
            thetas: (0..n).map(|k| Reduced::frac(k as i64, n)).collect(),
        }
    }

    pub fn thetas(&self) -> &[Reduced] {
        &self.thetas
    }

    pub fn len(&self) -> usize {
        self.thetas.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `{θ / k}`, the matching spectrum for the scaled set `kA`.
    pub fn scaled_down(&self, k: u64) -> Spectrum {
        Spectrum::new(self.thetas.iter().map(|t| t.div_int(k)).collect())
            .expect("division by k preserves distinctness and 0")
    }

    /// Whether every value lies in `(1/m) Z`.
    pub fn within_lattice(&self, m: u64) -> bool {
        self.thetas.iter().all(|t| m % t.den() == 0)
    }

    /// Distinct denominators of the nonzero values.
    pub fn denominators(&self) -> BTreeSet<u64> {
        self.thetas
            .iter()
            .filter(|t| !t.is_zero())
            .map(|t| t.den())
            .collect()
    }
}

impl TryFrom<Vec<Reduced>> for Spectrum {
    type Error = Error;

    fn try_from(v: Vec<Reduced>) -> Result<Self> {
        Spectrum::new(v)
    }
}

impl From<Spectrum> for Vec<Reduced> {
    fn from(s: Spectrum) -> Self {
        s.thetas
    }
}

impl fmt::Display for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, t) in self.thetas.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{t}")?;
        }
        write!(f, "}}")
    }
}

/// Why a candidate is not a spectrum.
#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum VerifyFailure {
    #[error("spectrum has {spectrum_size} values but the set has {set_size}")]
    CardinalityMismatch { set_size: usize, spectrum_size: usize },
    #[error("difference {theta_i} - {theta_j} = {difference} is not a root")]
    NotARoot {
        theta_i: Reduced,
        theta_j: Reduced,
        difference: Reduced,
    },
}

/// Exact check of `Θ` against `A`, naming the first failing difference.
pub fn verify_spectrum(set: &TileSet, spectrum: &Spectrum) -> std::result::Result<(), VerifyFailure> {
    verify_with_profile(&CycloCache::global().profile(set), spectrum)
}

pub fn is_spectrum(set: &TileSet, spectrum: &Spectrum) -> bool {
    verify_spectrum(set, spectrum).is_ok()
}

pub fn verify_with_profile(
    profile: &CycloProfile,
    spectrum: &Spectrum,
) -> std::result::Result<(), VerifyFailure> {
    if spectrum.len() != profile.set.len() {
        return Err(VerifyFailure::CardinalityMismatch {
            set_size: profile.set.len(),
            spectrum_size: spectrum.len(),
        });
    }
    for (i, ti) in spectrum.thetas.iter().enumerate() {
        for (j, tj) in spectrum.thetas.iter().enumerate() {
            if i == j {
                continue;
            }
            let difference = ti.sub_mod1(tj);
            if !profile
                .has_root(difference)
                .expect("distinct values have nonzero difference")
            {
                return Err(VerifyFailure::NotARoot {
                    theta_i: *ti,
                    theta_j: *tj,
                    difference,
                });
            }
        }
    }
    Ok(())
}

/// All sums `Σ_{s ∈ S_A} k_s / s (mod 1)`, `k_s ∈ {0, ..., p-1}` for `s = p^α`.
///
/// Requires (T1) and (T2); the result then has exactly `N` values and is a
/// spectrum.
pub fn construct_spectrum(set: &TileSet) -> Result<Spectrum> {
    construct_with_profile(&CycloCache::global().profile(set))
}

pub fn construct_with_profile(profile: &CycloProfile) -> Result<Spectrum> {
    if profile.set.len() == 1 {
        return Ok(Spectrum::uniform(1));
    }
    if !(profile.t1 && profile.t2) {
        return Err(Error::ConditionsFail {
            t1: profile.t1,
            t2: profile.t2,
        });
    }
    let mut sums = vec![Reduced::ZERO];
    for &s in &profile.s_a {
        let (p, _) = prime_power(s).expect("S_A holds prime powers");
        sums = sums
            .iter()
            .flat_map(|b| (0..p).map(move |k| b.add_mod1(&Reduced::frac(k as i64, s))))
            .collect();
    }
    let spectrum = Spectrum::new(sums)?;
    assert_eq!(
        spectrum.len(),
        profile.set.len(),
        "(T1) forces #B = N for {}",
        profile.set
    );
    Ok(spectrum)
}

/// Lexicographically first rational spectrum, if any.
///
/// Every rational difference of a spectrum is `k/n` with `Φ_n | A(x)`, so all
/// candidates live in `(1/D) Z / Z` for `D` the lcm of the cyclotomic divisors.
/// The search is a clique search on the Cayley graph of `Z_D` whose edges are
/// the admissible differences.
pub fn spectrum_search(set: &TileSet) -> Option<Spectrum> {
    spectrum_search_capped(&CycloCache::global().profile(set), None)
        .expect("no cap configured")
}

/// [`spectrum_search`] refusing to search when `D` exceeds `cap`.
pub fn spectrum_search_capped(profile: &CycloProfile, cap: Option<u64>) -> Result<Option<Spectrum>> {
    let mut found = None;
    CliqueSearch::new(profile, cap)?.run(&mut |s| {
        found = Some(s);
        false
    });
    Ok(found)
}

/// Every rational spectrum, in lexicographic order, stopping after `limit`.
pub fn all_spectra(profile: &CycloProfile, cap: Option<u64>, limit: usize) -> Result<Vec<Spectrum>> {
    let mut out = Vec::new();
    CliqueSearch::new(profile, cap)?.run(&mut |s| {
        out.push(s);
        out.len() < limit
    });
    Ok(out)
}

struct CliqueSearch {
    size: usize,
    modulus: u64,
    /// `admissible[v]`: `v/D` is an admissible nonzero difference.
    admissible: Vec<bool>,
}

impl CliqueSearch {
    fn new(profile: &CycloProfile, cap: Option<u64>) -> Result<Self> {
        let size = profile.set.len();
        if size == 1 {
            return Ok(CliqueSearch {
                size,
                modulus: 1,
                admissible: vec![false],
            });
        }
        let modulus = profile
            .divisors_lcm()
            .ok_or(Error::Overflow("lcm of cyclotomic divisors"))?;
        if let Some(cap) = cap {
            if modulus > cap {
                return Err(Error::DenominatorCap { lcm: modulus, cap });
            }
        }
        let admissible = (0..modulus)
            .map(|v| v != 0 && profile.is_admissible_denominator(modulus / v.gcd(&modulus)))
            .collect();
        Ok(CliqueSearch {
            size,
            modulus,
            admissible,
        })
    }

    /// Calls `visit` on each clique through 0 of the right size, in
    /// lexicographic order, until it returns `false`.
    fn run(&self, visit: &mut dyn FnMut(Spectrum) -> bool) {
        if self.size == 1 {
            visit(Spectrum::uniform(1));
            return;
        }
        let candidates: Vec<u64> = (1..self.modulus).filter(|&v| self.admissible[v as usize]).collect();
        let mut chosen = vec![0u64];
        self.extend(&mut chosen, &candidates, visit);
    }

    fn extend(&self, chosen: &mut Vec<u64>, candidates: &[u64], visit: &mut dyn FnMut(Spectrum) -> bool) -> bool {
        if chosen.len() == self.size {
            let thetas = chosen
                .iter()
                .map(|&v| Reduced::frac(v as i64, self.modulus))
                .collect();
            return visit(Spectrum::new(thetas).expect("distinct residues containing 0"));
        }
        for (i, &v) in candidates.iter().enumerate() {
            if chosen.len() + candidates.len() - i < self.size {
                break;
            }
            let next: Vec<u64> = candidates[i + 1..]
                .iter()
                .copied()
                .filter(|&w| self.admissible[(w - v) as usize])
                .collect();
            chosen.push(v);
            let keep_going = self.extend(chosen, &next, visit);
            chosen.pop();
            if !keep_going {
                return false;
            }
        }
        true
    }
}

/// `{k/(p·d) : 0 <= k < p}`, the spectrum of the progression `{0, d, ..., (p-1)d}`.
pub fn progression_spectrum(p: u64, d: u64) -> Spectrum {
    Spectrum::new((0..p).map(|k| Reduced::frac(k as i64, p * d)).collect())
        .expect("distinct multiples of 1/(p d)")
}

/// Reduced denominator of `Σ k_i / s_i (mod 1)` for pairwise coprime `s_i >= 2`
/// and `gcd(k_i, s_i) = 1`; always `Π s_i`.
pub fn unit_fraction_order(parts: &[(i64, u64)]) -> Result<u64> {
    for (idx, &(k, s)) in parts.iter().enumerate() {
        if s < 2 {
            return Err(Error::UnitFraction { k, s, why: "denominator must be at least 2" });
        }
        if k.rem_euclid(s as i64).unsigned_abs().gcd(&s) != 1 {
            return Err(Error::UnitFraction { k, s, why: "numerator not coprime to denominator" });
        }
        if parts[..idx].iter().any(|&(_, t)| t.gcd(&s) != 1) {
            return Err(Error::UnitFraction { k, s, why: "denominators not pairwise coprime" });
        }
    }
    let mut b = Reduced::ZERO;
    for &(k, s) in parts {
        b = b.checked_add(&Reduced::frac(k, s))?;
    }
    Ok(b.den())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimePowerReport {
    pub prime: u64,
    /// `N = prime^exponent`.
    pub exponent: u32,
    pub t1: bool,
}

/// A spectrum of prime-power type whose set contradicts `N = p^m` and (T1).
#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize, Deserialize)]
pub enum PrimePowerViolation {
    #[error("candidate is not a verified spectrum: {0}")]
    NotASpectrum(VerifyFailure),
    #[error("spectrum of {spectrum} lies in powers of {prime} but N = {n}, t1 = {t1}")]
    Counterexample {
        set: TileSet,
        spectrum: Spectrum,
        prime: u64,
        n: usize,
        t1: bool,
    },
}

/// When all denominators of `Θ` are powers of one prime `p`, checks that
/// `N` is a power of `p` and that (T1) holds. `Ok(None)` when `Θ` is not of
/// that type.
pub fn prime_power_spectrum_check(
    set: &TileSet,
    spectrum: &Spectrum,
) -> std::result::Result<Option<PrimePowerReport>, PrimePowerViolation> {
    let profile = CycloCache::global().profile(set);
    verify_with_profile(&profile, spectrum).map_err(PrimePowerViolation::NotASpectrum)?;
    let primes: BTreeSet<Option<u64>> = spectrum
        .denominators()
        .into_iter()
        .map(|d| prime_power(d).map(|(p, _)| p))
        .collect();
    let prime = match primes.into_iter().collect::<Vec<_>>().as_slice() {
        [Some(p)] => *p,
        _ => return Ok(None),
    };
    let n = set.len() as u64;
    let exponent = match prime_power(n) {
        Some((q, e)) if q == prime => Some(e),
        _ => None,
    };
    match exponent {
        Some(exponent) if profile.t1 => Ok(Some(PrimePowerReport {
            prime,
            exponent,
            t1: true,
        })),
        _ => Err(PrimePowerViolation::Counterexample {
            set: set.clone(),
            spectrum: spectrum.clone(),
            prime,
            n: set.len(),
            t1: profile.t1,
        }),
    }
}

/// Fourier transform of the indicator of `A + [0, 1)` at a real frequency.
pub fn chi_hat(set: &TileSet, xi: f64) -> Complex64 {
    if xi == 0.0 {
        return Complex64::new(set.len() as f64, 0.0);
    }
    let unit = Complex64::from_polar(1.0, TAU * xi);
    let factor = (unit - 1.0) / Complex64::new(0.0, TAU * xi);
    let sum: Complex64 = set
        .elements()
        .iter()
        .map(|&a| Complex64::from_polar(1.0, TAU * (a as f64) * xi))
        .sum();
    factor * sum
}

/// [`chi_hat`] at a rational frequency in `[0, 1)`, reducing each phase
/// `a·q mod 1` exactly before converting to floating point.
pub fn chi_hat_rational(set: &TileSet, q: Reduced) -> Complex64 {
    if q.is_zero() {
        return Complex64::new(set.len() as f64, 0.0);
    }
    let xi = q.to_f64();
    let factor = (Complex64::from_polar(1.0, TAU * xi) - 1.0) / Complex64::new(0.0, TAU * xi);
    factor * mask_at_root(set, q)
}

/// `A(e^(2 pi i q))` in floating point with exact phase reduction.
fn mask_at_root(set: &TileSet, q: Reduced) -> Complex64 {
    set.elements()
        .iter()
        .map(|&a| phase(q.mul_int(a)))
        .sum()
}

fn phase(q: Reduced) -> Complex64 {
    Complex64::from_polar(1.0, TAU * q.to_f64())
}

/// Numeric orthogonality of the columns of `(e^(2 pi i a_j θ_k))_{j,k}`.
pub fn hadamard_check(set: &TileSet, spectrum: &Spectrum, tol: f64) -> bool {
    if set.len() != spectrum.len() {
        return false;
    }
    let matrix: Vec<Vec<Complex64>> = set
        .elements()
        .iter()
        .map(|&a| spectrum.thetas().iter().map(|t| phase(t.mul_int(a))).collect())
        .collect();
    let n = spectrum.len();
    (0..n).all(|k| {
        (0..n).filter(|&l| l != k).all(|l| {
            let inner: Complex64 = matrix.iter().map(|row| row[k] * row[l].conj()).sum();
            inner.norm() < tol
        })
    })
}

/// Pairs `θ_i ≠ θ_j` of a spectrum whose `|chi_hat(θ_i - θ_j)|` is not below `tol`.
pub fn chi_hat_nonzero_differences(set: &TileSet, spectrum: &Spectrum, tol: f64) -> Vec<(Reduced, Reduced)> {
    let mut out = Vec::new();
    for ti in spectrum.thetas() {
        for tj in spectrum.thetas() {
            if ti != tj && chi_hat_rational(set, ti.sub_mod1(tj)).norm() >= tol {
                out.push((*ti, *tj));
            }
        }
    }
    out
}
