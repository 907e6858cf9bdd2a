use std::path::{Path, PathBuf};
use std::str::FromStr;

use seqaccel::Guard;
use serde::Deserialize;

use crate::error::BenchError;
use crate::registry::Defaults;

/// Environment variable overriding the denominator guard.
pub const GUARD_ENV: &str = "SEQACCEL_GUARD";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
    Markdown,
}

impl FromStr for Format {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            "markdown" | "md" => Ok(Format::Markdown),
            _ => Err(BenchError::Config(format!(
                "unknown format {s:?}; expected csv, json or markdown"
            ))),
        }
    }
}

/// Decade band used when comparing observed errors with fixture errors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BandPolicy {
    /// Allowed `|log10(observed) - log10(expected)|`.
    pub band: f64,
    /// Allowed gap when the expected error is below `wide_below`.
    pub wide_band: f64,
    pub wide_below: f64,
}

impl Default for BandPolicy {
    fn default() -> Self {
        BandPolicy {
            band: 1.0,
            wide_band: 2.0,
            wide_below: 1e-12,
        }
    }
}

impl BandPolicy {
    pub fn with_band(band: f64) -> Result<Self, BenchError> {
        if !(band.is_finite() && band > 0.0) {
            return Err(BenchError::Config(format!("band must be positive, got {band}")));
        }
        Ok(BandPolicy {
            band,
            wide_band: band + 1.0,
            ..BandPolicy::default()
        })
    }

    pub fn allowed(&self, expected: f64) -> f64 {
        if expected < self.wide_below {
            self.wide_band
        } else {
            self.band
        }
    }

    pub fn describe(&self) -> String {
        format!(
            "a row passes when log10 of the observed error is within ±{} of the expected error, \
             ±{} when the expected error is below {:e}",
            self.band, self.wide_band, self.wide_below
        )
    }
}

/// Guard from [`GUARD_ENV`] if set, else the default.
pub fn guard_from_env() -> Result<Guard, BenchError> {
    match std::env::var(GUARD_ENV) {
        Ok(v) => {
            let t: f64 = v
                .trim()
                .parse()
                .map_err(|_| BenchError::Config(format!("{GUARD_ENV}={v:?} is not a number")))?;
            Ok(Guard::new(t)?)
        }
        Err(_) => Ok(Guard::default()),
    }
}

/// Contents of a TOML configuration file; every key mirrors a flag.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct ConfigFile {
    pub problems: Option<Vec<String>>,
    pub transforms: Option<Vec<String>>,
    pub n_min: Option<usize>,
    pub n_max: Option<usize>,
    pub beta: Option<f64>,
    pub theta: Option<f64>,
    pub z: Option<f64>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    pub fixture: Option<PathBuf>,
    pub band: Option<f64>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self, BenchError> {
        let text = std::fs::read_to_string(path)?;
        Ok(toml::from_str(&text)?)
    }

    /// Values from `over` win where present.
    pub fn merged(self, over: ConfigFile) -> ConfigFile {
        ConfigFile {
            problems: over.problems.or(self.problems),
            transforms: over.transforms.or(self.transforms),
            n_min: over.n_min.or(self.n_min),
            n_max: over.n_max.or(self.n_max),
            beta: over.beta.or(self.beta),
            theta: over.theta.or(self.theta),
            z: over.z.or(self.z),
            format: over.format.or(self.format),
            out: over.out.or(self.out),
            fixture: over.fixture.or(self.fixture),
            band: over.band.or(self.band),
        }
    }
}

/// A (problem × transform) matrix over a range of budgets.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub problems: Vec<String>,
    pub transforms: Vec<String>,
    pub n_min: usize,
    pub n_max: usize,
    pub defaults: Defaults,
    pub format: Format,
    pub band: BandPolicy,
    pub guard: Guard,
}

impl RunConfig {
    pub fn new(problems: Vec<String>, transforms: Vec<String>, n_min: usize, n_max: usize) -> Self {
        RunConfig {
            problems,
            transforms,
            n_min,
            n_max,
            defaults: Defaults::default(),
            format: Format::Csv,
            band: BandPolicy::default(),
            guard: Guard::default(),
        }
    }

    pub fn from_file(file: ConfigFile) -> Result<Self, BenchError> {
        let d = Defaults::default();
        let mut c = RunConfig::new(
            file.problems.unwrap_or_default(),
            file.transforms.unwrap_or_default(),
            file.n_min.unwrap_or(0),
            file.n_max.unwrap_or(20),
        );
        c.defaults = Defaults {
            beta: file.beta.unwrap_or(d.beta),
            theta: file.theta.unwrap_or(d.theta),
            z: file.z.unwrap_or(d.z),
        };
        c.format = file.format.unwrap_or_default();
        if let Some(b) = file.band {
            c.band = BandPolicy::with_band(b)?;
        }
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<(), BenchError> {
        if self.problems.is_empty() {
            return Err(BenchError::Config("no problems selected".into()));
        }
        if self.transforms.is_empty() {
            return Err(BenchError::Config("no transforms selected".into()));
        }
        if self.n_min > self.n_max {
            return Err(BenchError::Config(format!(
                "n-min {} exceeds n-max {}",
                self.n_min, self.n_max
            )));
        }
        Ok(())
    }
}
