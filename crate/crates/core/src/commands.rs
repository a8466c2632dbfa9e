//! Subcommand execution shared by the binary and the integration tests.

use std::io::{self, Write};
use std::path::PathBuf;

use thiserror::Error;

use crate::config::{ConfigError, OutputFormat, RunConfig};
use crate::engine::{separation_table, sweep};
use crate::output::{
    render_csv, render_eirp_table, render_separation_table, render_svg, series_label, LabeledSeries,
};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VALIDATION: u8 = 2;
pub const EXIT_IO: u8 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Sweep,
    Separation,
    EirpTable,
}

impl Command {
    fn default_format(self) -> OutputFormat {
        match self {
            Command::Sweep => OutputFormat::Csv,
            Command::Separation | Command::EirpTable => OutputFormat::Table,
        }
    }

    fn supports(self, format: OutputFormat) -> bool {
        match self {
            Command::Sweep => matches!(format, OutputFormat::Csv | OutputFormat::Svg),
            Command::Separation | Command::EirpTable => format == OutputFormat::Table,
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Model(#[from] crate::Error),
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: io::Error },
    #[error("cannot write {target}: {source}")]
    Write { target: String, source: io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) | CliError::Model(_) => EXIT_VALIDATION,
            CliError::Read { .. } | CliError::Write { .. } => EXIT_IO,
        }
    }
}

/// SINR-vs-distance series, one per configured transmitter count.
pub fn run_sweep(config: &RunConfig) -> Result<Vec<LabeledSeries>, CliError> {
    config
        .series_counts()
        .into_iter()
        .map(|n| {
            let scenario = config.scenario_with_count(n)?;
            let series = sweep(&scenario, config.d_start, config.d_stop, config.step)?;
            Ok(LabeledSeries { label: series_label(n), series })
        })
        .collect()
}

/// Render the artifact a subcommand produces.
pub fn render(command: Command, config: &RunConfig) -> Result<String, CliError> {
    let format = config.format.unwrap_or(command.default_format());
    if !command.supports(format) {
        return Err(ConfigError::Invalid {
            key: "format".into(),
            message: format!("{format} output is not available for this command"),
        }
        .into());
    }
    match command {
        Command::Sweep => {
            let series = run_sweep(config)?;
            Ok(match format {
                OutputFormat::Svg => render_svg(&series, config),
                _ => render_csv(&series, config.is_multi_series()),
            })
        }
        Command::Separation => {
            let cells = separation_table(&config.scenario()?, config.threshold())?;
            Ok(render_separation_table(&cells, config))
        }
        Command::EirpTable => Ok(render_eirp_table()),
    }
}

/// Render and write to `config.out`, or to `stdout` when no path is set.
pub fn execute(command: Command, config: &RunConfig, stdout: &mut dyn Write) -> Result<(), CliError> {
    let text = render(command, config)?;
    match &config.out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Write {
            target: path.display().to_string(),
            source,
        }),
        None => stdout
            .write_all(text.as_bytes())
            .and_then(|_| stdout.flush())
            .map_err(|source| CliError::Write { target: "stdout".into(), source }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_mismatch_is_validation_error() {
        let mut c = RunConfig { format: Some(OutputFormat::Svg), ..Default::default() };
        let err = render(Command::Separation, &c).unwrap_err();
        assert_eq!(err.exit_code(), EXIT_VALIDATION);
        c.format = Some(OutputFormat::Table);
        assert!(render(Command::Sweep, &c).is_err());
    }

    #[test]
    fn unwritable_path_is_io_error() {
        let c = RunConfig {
            out: Some(PathBuf::from("/nonexistent-dir/for/sure/out.txt")),
            ..Default::default()
        };
        let err = execute(Command::EirpTable, &c, &mut Vec::new()).unwrap_err();
        assert_eq!(err.exit_code(), EXIT_IO);
    }

    #[test]
    fn stdout_gets_the_data() {
        let mut buf = Vec::new();
        execute(Command::EirpTable, &RunConfig::default(), &mut buf).unwrap();
        assert!(String::from_utf8(buf).unwrap().contains("Class 2 | 54.1 | 24.1"));
    }
}
