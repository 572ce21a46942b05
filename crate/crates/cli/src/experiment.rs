use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use spectile::arith::{distinct_prime_count, prime_power};
use spectile::{
    all_spectra, is_spectrum, CycloCache, Error, Spectrum, TileSet, TilingCertificate,
    TilingStatus,
};

use crate::enumerate::enumerate_sets;
use crate::error::CliError;
use crate::report::{analyze_set, numeric_agreement, spectrum_checks, AnalyzeConfig, FORMAT_VERSION};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Experiment {
    /// Sets with `2M < 3N`: tiling, fundamental domain mod `N` and spectrality coincide.
    #[serde(rename = "thm-3N2")]
    Thm3N2,
    /// `N = 3`: spectral iff tiles, and spectra sit in `(1/3k) Z` for `k = gcd(A)`.
    #[serde(rename = "n3-equivalence")]
    N3Equivalence,
    /// (T1)/(T2) against the tiling search.
    #[serde(rename = "cm-crosscheck")]
    CmCrosscheck,
    /// Every spectrum with denominators in powers of one prime `p` forces `N = p^m`, (T1), and tiling.
    #[serde(rename = "prime-power")]
    PrimePower,
}

impl Experiment {
    pub const ALL: [Experiment; 4] = [
        Experiment::Thm3N2,
        Experiment::N3Equivalence,
        Experiment::CmCrosscheck,
        Experiment::PrimePower,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Experiment::Thm3N2 => "thm-3N2",
            Experiment::N3Equivalence => "n3-equivalence",
            Experiment::CmCrosscheck => "cm-crosscheck",
            Experiment::PrimePower => "prime-power",
        }
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Experiment {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Experiment::ALL.into_iter().find(|e| e.name() == s).ok_or_else(|| {
            let known: Vec<&str> = Experiment::ALL.iter().map(|e| e.name()).collect();
            CliError::UnknownExperiment(s.to_string(), known.join(", "))
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    pub n_min: usize,
    pub n_max: usize,
    /// Sets are drawn from `{0, ..., m_max - 1}`.
    pub m_max: u64,
    pub period_bound: Option<u64>,
    pub period_limit: u64,
    pub denominator_cap: Option<u64>,
    /// How many spectra per set the prime-power and N = 3 runs enumerate.
    pub spectra_limit: usize,
    // execution settings stay out of reports so output is independent of them
    #[serde(skip, default = "one")]
    pub workers: usize,
    #[serde(skip)]
    pub out: Option<PathBuf>,
    #[serde(skip)]
    pub csv: Option<PathBuf>,
}

fn one() -> usize {
    1
}

impl ExperimentConfig {
    pub fn new(experiment: Experiment, n_min: usize, n_max: usize, m_max: u64) -> Self {
        ExperimentConfig {
            experiment,
            n_min,
            n_max,
            m_max,
            period_bound: None,
            period_limit: spectile::tiling::DEFAULT_PERIOD_LIMIT,
            denominator_cap: None,
            spectra_limit: 100_000,
            workers: 1,
            out: None,
            csv: None,
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |msg: &str| Err(CliError::Config(msg.to_string()));
        if self.n_min == 0 || self.n_max < self.n_min {
            return bad("n range must satisfy 1 <= n_min <= n_max");
        }
        if self.m_max == 0 {
            return bad("m bound must be positive");
        }
        if self.workers == 0 {
            return bad("worker count must be positive");
        }
        if self.spectra_limit == 0 {
            return bad("spectra limit must be positive");
        }
        if self.period_bound == Some(0) || self.period_limit == 0 {
            return bad("period bound must be positive");
        }
        if self.denominator_cap == Some(0) {
            return bad("denominator cap must be positive");
        }
        if self.experiment == Experiment::N3Equivalence && !(self.n_min..=self.n_max).contains(&3) {
            return bad("n3-equivalence needs 3 inside the n range");
        }
        Ok(())
    }

    fn analyze_config(&self) -> AnalyzeConfig {
        AnalyzeConfig {
            period_bound: self.period_bound,
            period_limit: self.period_limit,
            denominator_cap: self.denominator_cap,
            construct: true,
            search: true,
        }
    }

    /// The sets the experiment runs over, in canonical order (by `N`, then lexicographic).
    pub fn corpus(&self) -> Vec<TileSet> {
        let mut out = Vec::new();
        for n in self.n_min..=self.n_max {
            let m = match self.experiment {
                Experiment::N3Equivalence if n != 3 => continue,
                // largest span M with 2M < 3N
                Experiment::Thm3N2 => self.m_max.min((3 * n as u64 - 1) / 2),
                _ => self.m_max,
            };
            if let Ok(sets) = enumerate_sets(n, m) {
                out.extend(sets);
            }
        }
        out
    }
}

/// A failed implication, with enough to replay it through `analyze`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub set: TileSet,
    pub direction: String,
    pub detail: String,
    pub certificate: Option<TilingCertificate>,
    pub spectrum: Option<Spectrum>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SetRow {
    pub set: TileSet,
    pub n: usize,
    pub m: u64,
    pub t1: bool,
    pub t2: bool,
    pub tiling: TilingStatus,
    pub certificate: Option<TilingCertificate>,
    pub fundamental_domain: bool,
    /// `None` when the spectrum search was refused by the denominator cap.
    pub spectral: Option<bool>,
    pub spectrum: Option<Spectrum>,
    pub spectra_checked: usize,
    pub numeric_checks: usize,
    pub violations: Vec<Violation>,
    /// Noteworthy but lawful observations, e.g. tiles with (T2) failing.
    pub findings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SharpnessRow {
    pub set: TileSet,
    pub tiles: bool,
    pub spectral: bool,
    pub fundamental_domain: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub sets: usize,
    pub tiles: usize,
    pub does_not_tile: usize,
    pub tiling_unknown: usize,
    pub spectral: usize,
    pub not_spectral: usize,
    pub spectral_unknown: usize,
    pub fundamental_domains: usize,
    pub agreements: usize,
    pub spectra_checked: usize,
    pub numeric_checks: usize,
    pub violations: usize,
    pub findings: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub format_version: u32,
    pub config: ExperimentConfig,
    pub summary: Summary,
    /// Boundary cases `{0..n-1} ∪ {2n..3n-1}` with `2M = 3N`, where the
    /// equivalences must break. Only filled for `thm-3N2`.
    pub sharpness: Vec<SharpnessRow>,
    pub violations: Vec<Violation>,
    pub rows: Vec<SetRow>,
}

impl ExperimentReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn write_json(&self, path: &Path) -> std::io::Result<()> {
        let mut f = std::fs::File::create(path)?;
        serde_json::to_writer_pretty(&mut f, self)?;
        f.write_all(b"\n")
    }

    pub fn write_csv<W: Write>(&self, w: W) -> csv::Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record([
            "set", "n", "m", "t1", "t2", "tiling", "period", "fundamental_domain", "spectral",
            "spectrum", "violations",
        ])?;
        for r in &self.rows {
            out.write_record([
                r.set.to_string(),
                r.n.to_string(),
                r.m.to_string(),
                r.t1.to_string(),
                r.t2.to_string(),
                serde_json::to_value(r.tiling).map(|v| v.as_str().unwrap_or("").to_string()).unwrap_or_default(),
                r.certificate.as_ref().map(|c| c.period.to_string()).unwrap_or_default(),
                r.fundamental_domain.to_string(),
                r.spectral.map(|s| s.to_string()).unwrap_or_else(|| "unknown".into()),
                r.spectrum.as_ref().map(|s| s.to_string()).unwrap_or_default(),
                r.violations.len().to_string(),
            ])?;
        }
        out.flush()?;
        Ok(())
    }
}

pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentReport, CliError> {
    config.validate()?;
    let corpus = config.corpus();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| CliError::Config(e.to_string()))?;
    // indexed collect keeps enumeration order no matter how work is scheduled
    let rows: Vec<SetRow> = pool.install(|| {
        corpus
            .par_iter()
            .map(|set| evaluate(set, config))
            .collect::<Result<_, _>>()
    })?;

    let sharpness = if config.experiment == Experiment::Thm3N2 {
        (1..=3).map(sharpness_row).collect()
    } else {
        Vec::new()
    };
    let mut violations: Vec<Violation> = rows.iter().flat_map(|r| r.violations.iter().cloned()).collect();
    for s in &sharpness {
        if !(s.tiles && s.spectral && !s.fundamental_domain) {
            violations.push(Violation {
                set: s.set.clone(),
                direction: "boundary set tiles, is spectral, and is not a fundamental domain".into(),
                detail: format!("tiles = {}, spectral = {}, fundamental = {}", s.tiles, s.spectral, s.fundamental_domain),
                certificate: None,
                spectrum: None,
            });
        }
    }

    let mut summary = Summary {
        sets: rows.len(),
        violations: violations.len(),
        ..Summary::default()
    };
    for r in &rows {
        match r.tiling {
            TilingStatus::Tiles => summary.tiles += 1,
            TilingStatus::DoesNotTile => summary.does_not_tile += 1,
            TilingStatus::Unknown => summary.tiling_unknown += 1,
        }
        match r.spectral {
            Some(true) => summary.spectral += 1,
            Some(false) => summary.not_spectral += 1,
            None => summary.spectral_unknown += 1,
        }
        summary.fundamental_domains += r.fundamental_domain as usize;
        summary.agreements += r.violations.is_empty() as usize;
        summary.spectra_checked += r.spectra_checked;
        summary.numeric_checks += r.numeric_checks;
        summary.findings += r.findings.len();
    }

    let report = ExperimentReport {
        format_version: FORMAT_VERSION,
        config: config.clone(),
        summary,
        sharpness,
        violations,
        rows,
    };
    if let Some(path) = &config.out {
        report.write_json(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    }
    if let Some(path) = &config.csv {
        let f = std::fs::File::create(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        report.write_csv(f).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    }
    Ok(report)
}

/// The discretized `[0, n] ∪ [2n, 3n]`.
pub fn boundary_set(n: u64) -> TileSet {
    TileSet::new((0..n).chain(2 * n..3 * n).collect()).expect("increasing")
}

fn sharpness_row(n: u64) -> SharpnessRow {
    let set = boundary_set(n);
    let r = analyze_set(&set, &AnalyzeConfig::default()).expect("boundary sets are small");
    SharpnessRow {
        tiles: r.tiling.status == TilingStatus::Tiles,
        spectral: r.searched_spectrum.as_ref().is_some_and(|s| is_spectrum(&set, s)),
        fundamental_domain: r.fundamental_domain,
        set,
    }
}

struct RowBuilder<'a> {
    row: SetRow,
    set: &'a TileSet,
}

impl RowBuilder<'_> {
    fn violate(&mut self, direction: &str, detail: String, spectrum: Option<&Spectrum>) {
        self.row.violations.push(Violation {
            set: self.set.clone(),
            direction: direction.to_string(),
            detail,
            certificate: self.row.certificate.clone(),
            spectrum: spectrum.cloned(),
        });
    }
}

fn evaluate(set: &TileSet, config: &ExperimentConfig) -> Result<SetRow, CliError> {
    let report = analyze_set(set, &config.analyze_config())?;
    let profile = CycloCache::global().profile(set);
    let mut b = RowBuilder {
        row: SetRow {
            set: set.clone(),
            n: report.n,
            m: report.m,
            t1: report.t1,
            t2: report.t2,
            tiling: report.tiling.status,
            certificate: report.tiling.certificate.clone(),
            fundamental_domain: report.fundamental_domain,
            spectral: report.spectral(),
            spectrum: report.searched_spectrum.clone(),
            spectra_checked: [&report.constructed_spectrum, &report.searched_spectrum]
                .iter()
                .filter(|s| s.is_some())
                .count(),
            numeric_checks: report.checks.iter().filter(|c| c.name.ends_with("_agrees")).count(),
            violations: Vec::new(),
            findings: Vec::new(),
        },
        set,
    };
    for c in report.checks.iter().filter(|c| !c.passed) {
        let witness = if c.name.starts_with("constructed") {
            report.constructed_spectrum.as_ref()
        } else {
            report.searched_spectrum.as_ref()
        };
        b.violate(&c.name, c.detail.clone(), witness);
    }

    let tiles = report.tiling.status == TilingStatus::Tiles;
    let tiling_known = report.tiling.status != TilingStatus::Unknown;
    match config.experiment {
        Experiment::CmCrosscheck => {
            if tiles && !report.t1 {
                b.violate("tiles => t1", "tiling found but (T1) fails".into(), None);
            }
            if report.t1 && report.t2 && !tiles {
                b.violate(
                    "t1 & t2 => tiles",
                    format!("no certificate up to period {}", report.tiling.period_bound),
                    None,
                );
            }
            if tiles && !report.t2 {
                if distinct_prime_count(report.n as u64) <= 2 {
                    b.violate(
                        "tiles => t2 (N has at most two prime factors)",
                        "tiling found but (T2) fails".into(),
                        None,
                    );
                } else {
                    b.row.findings.push("tiles while (T2) fails".into());
                }
            }
        }
        Experiment::Thm3N2 => {
            let fd = report.fundamental_domain;
            let spectral = report.spectral();
            // an unresolved search only leaves the sound direction (tiles => fd) checkable
            if tiles != fd && (tiling_known || fd) {
                b.violate("tiles <=> fundamental domain", format!("tiles = {tiles}, fundamental = {fd}"), None);
            }
            if !tiling_known {
                b.row.findings.push(format!("tiling unresolved up to period {}", report.tiling.period_bound));
            }
            if let Some(spectral) = spectral {
                if spectral != fd {
                    b.violate(
                        "fundamental domain <=> spectral",
                        format!("fundamental = {fd}, spectral = {spectral}"),
                        report.searched_spectrum.as_ref(),
                    );
                }
            }
            let uniform = Spectrum::uniform(report.n as u64);
            let uniform_ok = is_spectrum(set, &uniform);
            if fd && !uniform_ok {
                b.violate("fundamental domain => {k/N} is a spectrum", format!("{uniform} fails"), Some(&uniform));
            }
            for c in numeric_agreement(set, "uniform", &uniform, uniform_ok) {
                b.row.numeric_checks += 1;
                if !c.passed {
                    b.violate(&c.name, c.detail, Some(&uniform));
                }
            }
        }
        Experiment::N3Equivalence => {
            let spectral = report.searched_spectrum.is_some();
            let searched = report.search != crate::report::SearchOutcome::DenominatorCapExceeded;
            if !tiling_known {
                b.row.findings.push(format!("tiling unresolved up to period {}", report.tiling.period_bound));
            }
            if searched && spectral != tiles && (tiling_known || spectral) {
                b.violate(
                    "spectral <=> tiles",
                    format!("spectral = {spectral}, tiles = {tiles}"),
                    report.searched_spectrum.as_ref(),
                );
            }
            let lattice = 3 * set.gcd().max(1);
            for s in enumerate_spectra(&profile, config, &mut b)? {
                if !s.within_lattice(lattice) {
                    b.violate(&format!("spectrum lies in (1/{lattice})Z"), format!("{s} leaves the lattice"), Some(&s));
                }
            }
        }
        Experiment::PrimePower => {
            for s in enumerate_spectra(&profile, config, &mut b)? {
                let single_prime = {
                    let primes: std::collections::BTreeSet<_> =
                        s.denominators().into_iter().map(|d| prime_power(d).map(|(p, _)| p)).collect();
                    primes.len() == 1 && primes.iter().all(|p| p.is_some())
                };
                if single_prime && !tiles {
                    b.violate(
                        "prime-power spectrum => tiles",
                        format!("{s} has prime-power denominators; tiling = {:?}", report.tiling.status),
                        Some(&s),
                    );
                }
            }
        }
    }
    Ok(b.row)
}

/// Every spectrum of the set (up to the configured limit), each run through
/// the exact, numeric and prime-power checks.
fn enumerate_spectra(
    profile: &spectile::CycloProfile,
    config: &ExperimentConfig,
    b: &mut RowBuilder<'_>,
) -> Result<Vec<Spectrum>, CliError> {
    let spectra = match all_spectra(profile, config.denominator_cap, config.spectra_limit) {
        Ok(s) => s,
        Err(Error::DenominatorCap { .. }) => return Ok(Vec::new()),
        Err(e) => return Err(e.into()),
    };
    if spectra.len() == config.spectra_limit {
        b.row.findings.push(format!("spectrum enumeration stopped at {} spectra", config.spectra_limit));
    }
    for s in &spectra {
        b.row.spectra_checked += 1;
        for c in spectrum_checks(profile, "enumerated", s) {
            b.row.numeric_checks += c.name.ends_with("_agrees") as usize;
            if !c.passed {
                b.violate(&c.name, c.detail, Some(s));
            }
        }
    }
    Ok(spectra)
}
