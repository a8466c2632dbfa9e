//! Run configuration: built-in defaults, overridden by a `key = value`
//! config file, overridden in turn by command-line flags.

use std::collections::BTreeSet;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::Args;
use thiserror::Error;

use crate::engine::{EsEmitter, Scenario, VictimUe};
use crate::linkbudget::{CarrierSpec, EsClass, Lobe};
use crate::rfmath::{PowerDbm, PowerRatioDb};

/// Keys accepted in a config file, in canonical order.
pub const KEYS: [&str; 15] = [
    "class",
    "lobe",
    "count",
    "counts",
    "rsrp",
    "noise_figure",
    "temperature",
    "frequency",
    "bandwidth",
    "d_start",
    "d_stop",
    "step",
    "threshold",
    "format",
    "out",
];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("config line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("unknown key `{0}`")]
    UnknownKey(String),
    #[error("invalid value for `{key}`: {message}")]
    Invalid { key: String, message: String },
}

impl ConfigError {
    /// The offending key, when the error is tied to one.
    pub fn key(&self) -> Option<&str> {
        match self {
            ConfigError::Malformed { .. } => None,
            ConfigError::UnknownKey(k) | ConfigError::Invalid { key: k, .. } => Some(k),
        }
    }

    fn invalid(key: &str, message: impl Into<String>) -> Self {
        ConfigError::Invalid { key: key.to_string(), message: message.into() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Svg,
    Table,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "svg" => Ok(OutputFormat::Svg),
            "table" => Ok(OutputFormat::Table),
            other => Err(format!("expected csv, svg or table, got {other:?}")),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Svg => "svg",
            OutputFormat::Table => "table",
        })
    }
}

/// Fully merged and validated run parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub class: EsClass,
    pub lobe: Lobe,
    pub count: u32,
    /// Multi-series sweep; when set, one series per entry replaces `count`.
    pub counts: Option<Vec<u32>>,
    pub rsrp_dbm: f64,
    pub noise_figure_db: f64,
    pub temperature_k: f64,
    pub frequency_hz: f64,
    pub bandwidth_hz: f64,
    pub d_start: f64,
    pub d_stop: f64,
    pub step: f64,
    pub threshold_db: f64,
    /// `None` lets each subcommand pick its natural format.
    pub format: Option<OutputFormat>,
    /// `None` writes to stdout.
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            class: EsClass::Class1,
            lobe: Lobe::Mainlobe,
            count: 1,
            counts: None,
            rsrp_dbm: -80.0,
            noise_figure_db: 0.0,
            temperature_k: 290.0,
            frequency_hz: 28.0e9,
            bandwidth_hz: 1.0e9,
            d_start: 1.0,
            d_stop: 5000.0,
            step: 1.0,
            threshold_db: 0.0,
            format: None,
            out: None,
        }
    }
}

/// Command-line overrides. Values are kept as text and go through the same
/// parser as config-file values.
#[derive(Debug, Clone, Default, Args)]
pub struct Flags {
    /// ES class: 1, 2 or 3
    #[arg(long = "class", value_name = "1|2|3")]
    pub class: Option<String>,
    /// mainlobe or sidelobe
    #[arg(long, value_name = "mainlobe|sidelobe")]
    pub lobe: Option<String>,
    /// Number of equidistant transmitters
    #[arg(long, value_name = "N")]
    pub count: Option<String>,
    /// Comma-separated transmitter counts, one sweep series each
    #[arg(long, value_name = "N,N,...")]
    pub counts: Option<String>,
    #[arg(long = "rsrp-dbm", value_name = "DBM", allow_hyphen_values = true)]
    pub rsrp: Option<String>,
    #[arg(long = "nf-db", value_name = "DB", allow_hyphen_values = true)]
    pub noise_figure: Option<String>,
    #[arg(long = "temperature-k", value_name = "K")]
    pub temperature: Option<String>,
    #[arg(long = "freq-hz", value_name = "HZ")]
    pub frequency: Option<String>,
    #[arg(long = "bw-hz", value_name = "HZ")]
    pub bandwidth: Option<String>,
    #[arg(long = "d-start", value_name = "M")]
    pub d_start: Option<String>,
    #[arg(long = "d-stop", value_name = "M")]
    pub d_stop: Option<String>,
    #[arg(long, value_name = "M")]
    pub step: Option<String>,
    #[arg(long = "threshold-db", value_name = "DB", allow_hyphen_values = true)]
    pub threshold: Option<String>,
    /// Config file with `key = value` lines
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Output file; stdout when omitted
    #[arg(long, value_name = "PATH")]
    pub out: Option<String>,
    #[arg(long, value_name = "csv|svg|table")]
    pub format: Option<String>,
}

impl Flags {
    fn overrides(&self) -> Vec<(&'static str, &str)> {
        let pairs: [(&'static str, &Option<String>); 15] = [
            ("class", &self.class),
            ("lobe", &self.lobe),
            ("count", &self.count),
            ("counts", &self.counts),
            ("rsrp", &self.rsrp),
            ("noise_figure", &self.noise_figure),
            ("temperature", &self.temperature),
            ("frequency", &self.frequency),
            ("bandwidth", &self.bandwidth),
            ("d_start", &self.d_start),
            ("d_stop", &self.d_stop),
            ("step", &self.step),
            ("threshold", &self.threshold),
            ("format", &self.format),
            ("out", &self.out),
        ];
        pairs
            .into_iter()
            .filter_map(|(k, v)| v.as_deref().map(|v| (k, v)))
            .collect()
    }
}

/// Split config text into `(line, key, value)` entries.
fn parse_file(text: &str) -> Result<Vec<(usize, String, String)>, ConfigError> {
    let mut seen = BTreeSet::new();
    let mut entries = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content.split_once('=').ok_or_else(|| ConfigError::Malformed {
            line,
            message: format!("expected `key = value`, got {content:?}"),
        })?;
        let (key, value) = (key.trim(), value.trim());
        if key.is_empty() {
            return Err(ConfigError::Malformed { line, message: "missing key".into() });
        }
        if !KEYS.contains(&key) {
            return Err(ConfigError::UnknownKey(key.to_string()));
        }
        if !seen.insert(key.to_string()) {
            return Err(ConfigError::Malformed { line, message: format!("duplicate key `{key}`") });
        }
        entries.push((line, key.to_string(), value.to_string()));
    }
    Ok(entries)
}

fn parse_f64(key: &str, value: &str) -> Result<f64, ConfigError> {
    let v: f64 = value
        .parse()
        .map_err(|_| ConfigError::invalid(key, format!("{value:?} is not a number")))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(ConfigError::invalid(key, format!("{value:?} is not finite")))
    }
}

fn parse_count(key: &str, value: &str) -> Result<u32, ConfigError> {
    let n: u32 = value
        .trim()
        .parse()
        .map_err(|_| ConfigError::invalid(key, format!("{value:?} is not a non-negative integer")))?;
    if n == 0 {
        return Err(ConfigError::invalid(key, "must be at least 1"));
    }
    Ok(n)
}

impl RunConfig {
    /// Set one field from its textual form.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        match key {
            "class" => self.class = value.parse().map_err(|e: crate::Error| ConfigError::invalid(key, e.to_string()))?,
            "lobe" => self.lobe = value.parse().map_err(|e: crate::Error| ConfigError::invalid(key, e.to_string()))?,
            "count" => self.count = parse_count(key, value)?,
            "counts" => {
                let counts = value
                    .split(',')
                    .map(|c| parse_count(key, c))
                    .collect::<Result<Vec<_>, _>>()?;
                self.counts = Some(counts);
            }
            "rsrp" => self.rsrp_dbm = parse_f64(key, value)?,
            "noise_figure" => self.noise_figure_db = parse_f64(key, value)?,
            "temperature" => self.temperature_k = parse_f64(key, value)?,
            "frequency" => self.frequency_hz = parse_f64(key, value)?,
            "bandwidth" => self.bandwidth_hz = parse_f64(key, value)?,
            "d_start" => self.d_start = parse_f64(key, value)?,
            "d_stop" => self.d_stop = parse_f64(key, value)?,
            "step" => self.step = parse_f64(key, value)?,
            "threshold" => self.threshold_db = parse_f64(key, value)?,
            "format" => self.format = Some(value.parse().map_err(|e: String| ConfigError::invalid(key, e))?),
            "out" => {
                if value.is_empty() {
                    return Err(ConfigError::invalid(key, "empty path"));
                }
                self.out = Some(PathBuf::from(value));
            }
            other => return Err(ConfigError::UnknownKey(other.to_string())),
        }
        Ok(())
    }

    /// Range checks across fields.
    pub fn validate(&self) -> Result<(), ConfigError> {
        let positive = [
            ("temperature", self.temperature_k),
            ("frequency", self.frequency_hz),
            ("bandwidth", self.bandwidth_hz),
            ("d_start", self.d_start),
            ("step", self.step),
        ];
        for (key, v) in positive {
            if !(v > 0.0) {
                return Err(ConfigError::invalid(key, format!("{v} must be > 0")));
            }
        }
        if !(self.d_stop > self.d_start) {
            return Err(ConfigError::invalid(
                "d_stop",
                format!("{} must exceed d_start {}", self.d_stop, self.d_start),
            ));
        }
        if self.count == 0 {
            return Err(ConfigError::invalid("count", "must be at least 1"));
        }
        if let Some(counts) = &self.counts {
            if counts.is_empty() || counts.contains(&0) {
                return Err(ConfigError::invalid("counts", "every count must be at least 1"));
            }
        }
        Ok(())
    }

    /// Counts to evaluate: `counts` when set, otherwise the single `count`.
    pub fn series_counts(&self) -> Vec<u32> {
        self.counts.clone().unwrap_or_else(|| vec![self.count])
    }

    pub fn is_multi_series(&self) -> bool {
        self.counts.is_some()
    }

    pub fn threshold(&self) -> PowerRatioDb {
        PowerRatioDb::new(self.threshold_db)
    }

    /// Scenario for the configured class, lobe and `count`.
    pub fn scenario(&self) -> Result<Scenario, ConfigError> {
        self.scenario_with_count(self.count)
    }

    pub fn scenario_with_count(&self, count: u32) -> Result<Scenario, ConfigError> {
        let victim = VictimUe::new(
            PowerDbm::new(self.rsrp_dbm),
            self.temperature_k,
            PowerRatioDb::new(self.noise_figure_db),
        )
        .map_err(|e| ConfigError::invalid("temperature", e.to_string()))?;
        let emitter = EsEmitter::new(self.class, self.lobe, count)
            .map_err(|e| ConfigError::invalid("count", e.to_string()))?;
        let carrier = CarrierSpec::new(self.frequency_hz, self.bandwidth_hz)
            .map_err(|e| ConfigError::invalid("frequency", e.to_string()))?;
        Ok(Scenario::new(victim, emitter, carrier))
    }
}

/// Merge defaults, config-file text and flags (in that order of precedence,
/// lowest first) and validate the result.
pub fn parse_config(text: &str, flags: &Flags) -> Result<RunConfig, ConfigError> {
    let mut config = RunConfig::default();
    for (_, key, value) in parse_file(text)? {
        config.set(&key, &value)?;
    }
    for (key, value) in flags.overrides() {
        config.set(key, value)?;
    }
    config.validate()?;
    Ok(config)
}
