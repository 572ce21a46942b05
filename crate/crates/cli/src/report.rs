use serde::{Deserialize, Serialize};
use spectile::spectrum::chi_hat_nonzero_differences;
use spectile::tiling::{default_period_bound, tiles_z_with_profile, DEFAULT_PERIOD_LIMIT};
use spectile::{
    hadamard_check, is_fundamental_domain, prime_power_spectrum_check,
    verify_spectrum, CycloCache, CycloProfile, Error, PrimePowerViolation, Reduced, Spectrum,
    TileSet, TilingCertificate, TilingReason, TilingStatus,
};

use crate::error::CliError;

/// Bumped whenever a field of [`AnalysisReport`] changes meaning or shape.
pub const FORMAT_VERSION: u32 = 1;

/// Tolerance for every floating-point cross-check.
pub const NUMERIC_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalyzeConfig {
    /// Largest period the tiling search may use; derived from the set when absent.
    pub period_bound: Option<u64>,
    /// Hard ceiling on the derived period bound.
    pub period_limit: u64,
    /// Refuse the spectrum search when the lcm of the cyclotomic divisors is larger.
    pub denominator_cap: Option<u64>,
    pub construct: bool,
    pub search: bool,
}

impl Default for AnalyzeConfig {
    fn default() -> Self {
        AnalyzeConfig {
            period_bound: None,
            period_limit: DEFAULT_PERIOD_LIMIT,
            denominator_cap: None,
            construct: true,
            search: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TilingSummary {
    pub status: TilingStatus,
    pub reason: TilingReason,
    pub period_bound: u64,
    pub certificate: Option<TilingCertificate>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchOutcome {
    Found,
    NoneExists,
    DenominatorCapExceeded,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub format_version: u32,
    /// The set as given, before translation.
    pub input: Vec<i64>,
    /// Amount subtracted from every element so that the minimum becomes 0.
    pub shift: i64,
    pub set: TileSet,
    pub n: usize,
    pub m: u64,
    pub divisors: Vec<u64>,
    pub s_a: Vec<u64>,
    pub t1: bool,
    pub t2: bool,
    pub tiling: TilingSummary,
    pub fundamental_domain: bool,
    pub constructed_spectrum: Option<Spectrum>,
    pub searched_spectrum: Option<Spectrum>,
    pub search: SearchOutcome,
    pub checks: Vec<Check>,
}

impl AnalysisReport {
    pub fn all_checks_pass(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn spectral(&self) -> Option<bool> {
        match self.search {
            SearchOutcome::Found => Some(true),
            SearchOutcome::NoneExists => Some(false),
            _ => self.constructed_spectrum.as_ref().map(|_| true),
        }
    }
}

/// Parses a comma (or whitespace) separated list of integers.
pub fn parse_set(text: &str) -> Result<Vec<i64>, CliError> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| CliError::BadElement(t.to_string())))
        .collect()
}

/// Analyzes an arbitrary integer list, translating its minimum to 0.
pub fn analyze(input: &[i64], config: &AnalyzeConfig) -> Result<AnalysisReport, CliError> {
    let (set, shift) = TileSet::normalized(input)?;
    let mut report = analyze_set(&set, config)?;
    report.input = input.to_vec();
    report.shift = shift;
    Ok(report)
}

pub fn analyze_set(set: &TileSet, config: &AnalyzeConfig) -> Result<AnalysisReport, CliError> {
    let profile = CycloCache::global().profile(set);
    let period_bound = config
        .period_bound
        .unwrap_or_else(|| default_period_bound(&profile, config.period_limit));
    let verdict = tiles_z_with_profile(&profile, period_bound)?;
    let tiling = TilingSummary {
        status: verdict.status(),
        reason: verdict.reason(),
        period_bound,
        certificate: verdict.certificate().cloned(),
    };

    let constructed_spectrum = if config.construct {
        match spectile::spectrum::construct_with_profile(&profile) {
            Ok(s) => Some(s),
            Err(Error::ConditionsFail { .. }) => None,
            Err(e) => return Err(e.into()),
        }
    } else {
        None
    };

    let (searched_spectrum, search) = if config.search {
        match spectile::spectrum_search_capped(&profile, config.denominator_cap) {
            Ok(Some(s)) => (Some(s), SearchOutcome::Found),
            Ok(None) => (None, SearchOutcome::NoneExists),
            Err(Error::DenominatorCap { .. }) => (None, SearchOutcome::DenominatorCapExceeded),
            Err(e) => return Err(e.into()),
        }
    } else {
        (None, SearchOutcome::Skipped)
    };

    let mut checks = Vec::new();
    if let Some(c) = &tiling.certificate {
        checks.push(Check::new(
            "certificate_identity",
            c.verify(set),
            format!("A(x)B(x) = P_{}(x) mod x^{} - 1 with B = {}", c.period, c.period, c.complement_set()),
        ));
    }
    for (label, spectrum) in [("constructed", &constructed_spectrum), ("searched", &searched_spectrum)] {
        if let Some(s) = spectrum {
            checks.extend(spectrum_checks(&profile, label, s));
        }
    }

    Ok(AnalysisReport {
        format_version: FORMAT_VERSION,
        input: set.elements().iter().map(|&a| a as i64).collect(),
        shift: 0,
        set: set.clone(),
        n: set.len(),
        m: set.span(),
        divisors: profile.divisors.clone(),
        s_a: profile.s_a.clone(),
        t1: profile.t1,
        t2: profile.t2,
        tiling,
        fundamental_domain: is_fundamental_domain(set),
        constructed_spectrum,
        searched_spectrum,
        search,
        checks,
    })
}

/// Exact verification plus the two numeric cross-checks, each compared with
/// the exact verdict, plus the prime-power law when it applies.
pub fn spectrum_checks(profile: &CycloProfile, label: &str, spectrum: &Spectrum) -> Vec<Check> {
    let set = &profile.set;
    let exact = verify_spectrum(set, spectrum);
    let mut out = vec![Check::new(
        format!("{label}_spectrum_verifies"),
        exact.is_ok(),
        match &exact {
            Ok(()) => format!("{spectrum} is a spectrum"),
            Err(e) => e.to_string(),
        },
    )];
    out.extend(numeric_agreement(set, label, spectrum, exact.is_ok()));
    if exact.is_ok() {
        match prime_power_spectrum_check(set, spectrum) {
            Ok(Some(r)) => out.push(Check::new(
                format!("{label}_prime_power_law"),
                true,
                format!("denominators are powers of {}; N = {}^{}, t1 holds", r.prime, r.prime, r.exponent),
            )),
            Ok(None) => {}
            Err(e @ PrimePowerViolation::Counterexample { .. }) => {
                out.push(Check::new(format!("{label}_prime_power_law"), false, e.to_string()))
            }
            Err(PrimePowerViolation::NotASpectrum(e)) => {
                out.push(Check::new(format!("{label}_prime_power_law"), false, e.to_string()))
            }
        }
    }
    out
}

/// Whether the numeric verdicts on `(A, Θ)` match the exact one.
pub fn numeric_agreement(set: &TileSet, label: &str, spectrum: &Spectrum, exact: bool) -> [Check; 2] {
    let hadamard = hadamard_check(set, spectrum, NUMERIC_TOL);
    let bad: Vec<(Reduced, Reduced)> = chi_hat_nonzero_differences(set, spectrum, NUMERIC_TOL);
    let chi_zero = bad.is_empty() && set.len() == spectrum.len();
    [
        Check::new(
            format!("{label}_hadamard_agrees"),
            hadamard == exact,
            format!("hadamard_check = {hadamard}, exact = {exact}"),
        ),
        Check::new(
            format!("{label}_chi_hat_agrees"),
            chi_zero == exact,
            match bad.first() {
                Some((i, j)) => format!("chi_hat({i} - {j}) is nonzero; exact = {exact}"),
                None => format!("chi_hat vanishes on all differences; exact = {exact}"),
            },
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_lists() {
        assert_eq!(parse_set("0,1, 6,7").unwrap(), vec![0, 1, 6, 7]);
        assert_eq!(parse_set("-3,2").unwrap(), vec![-3, 2]);
        assert!(matches!(parse_set("0,1.5"), Err(CliError::BadElement(_))));
        assert!(parse_set("0,x").is_err());
    }

    #[test]
    fn translation_is_recorded() {
        let r = analyze(&[5, 6, 11, 12], &AnalyzeConfig::default()).unwrap();
        assert_eq!(r.shift, 5);
        assert_eq!(r.set.elements(), &[0, 1, 6, 7]);
        assert_eq!(r.input, vec![5, 6, 11, 12]);
    }

    #[test]
    fn duplicates_are_rejected() {
        assert!(analyze(&[0, 1, 1], &AnalyzeConfig::default()).is_err());
    }

    #[test]
    fn cap_is_reported_not_fatal() {
        let cfg = AnalyzeConfig {
            denominator_cap: Some(6),
            ..AnalyzeConfig::default()
        };
        let r = analyze(&[0, 1, 6, 7], &cfg).unwrap();
        assert_eq!(r.search, SearchOutcome::DenominatorCapExceeded);
        assert!(r.constructed_spectrum.is_some());
        assert_eq!(r.spectral(), Some(true));
    }
}
