//! Run configuration: defaults, then a `key = value` file, then flags.

use std::fmt;
use std::path::{Path, PathBuf};
use std::time::Duration;

use serde::Serialize;
use serde_json::{json, Value};
use turan3::canon::EXACT_CANON_MAX_N;
use turan3::Budget;

#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

pub fn usage<T>(msg: impl Into<String>) -> Result<T, UsageError> {
    Err(UsageError(msg.into()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl std::str::FromStr for Format {
    type Err = UsageError;
    fn from_str(s: &str) -> Result<Self, UsageError> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            _ => usage(format!("unknown format `{s}` (json, csv, text)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub seed: u64,
    /// Worker count for the pool the CLI owns. Never changes results.
    pub threads: usize,
    /// Wall-clock limit for interactive searches.
    pub budget: Option<Duration>,
    /// Node limit per search; overrides the built-in limits of `verify`.
    pub budget_nodes: Option<u64>,
    pub canon_max_n: u32,
    pub ex_f2t_max_m: u32,
    pub turan_max_n: u32,
    pub partition_max_n: u32,
    pub out: Option<PathBuf>,
    pub format: Format,
}

impl RunConfig {
    pub fn defaults(command: &str) -> Self {
        RunConfig {
            command: command.to_string(),
            seed: 0,
            threads: 1,
            budget: None,
            budget_nodes: None,
            canon_max_n: EXACT_CANON_MAX_N,
            ex_f2t_max_m: 13,
            turan_max_n: 10,
            partition_max_n: 15,
            out: None,
            format: Format::Json,
        }
    }

    /// Applies one `key = value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), UsageError> {
        fn num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, UsageError> {
            value
                .parse()
                .map_err(|_| UsageError(format!("`{key}` expects a non-negative integer, got `{value}`")))
        }
        match key {
            "seed" => self.seed = num(key, value)?,
            "threads" => self.threads = num(key, value)?,
            "budget" => self.budget = Some(parse_duration(value)?),
            "budget_nodes" => self.budget_nodes = Some(num(key, value)?),
            "canon_max_n" => self.canon_max_n = num(key, value)?,
            "ex_f2t_max_m" => self.ex_f2t_max_m = num(key, value)?,
            "turan_max_n" => self.turan_max_n = num(key, value)?,
            "partition_max_n" => self.partition_max_n = num(key, value)?,
            "out" => self.out = Some(PathBuf::from(value)),
            "format" => self.format = value.parse()?,
            _ => return usage(format!("unknown configuration key `{key}`")),
        }
        Ok(())
    }

    pub fn load_file(&mut self, path: &Path) -> Result<(), UsageError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| UsageError(format!("cannot read config {}: {e}", path.display())))?;
        self.apply_text(&text)
    }

    pub fn apply_text(&mut self, text: &str) -> Result<(), UsageError> {
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return usage(format!("config line {}: expected `key = value`", i + 1));
            };
            self.set(key.trim(), value.trim())?;
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), UsageError> {
        let caps = [
            ("threads", self.threads as u64),
            ("canon_max_n", self.canon_max_n as u64),
            ("ex_f2t_max_m", self.ex_f2t_max_m as u64),
            ("turan_max_n", self.turan_max_n as u64),
            ("partition_max_n", self.partition_max_n as u64),
        ];
        for (key, v) in caps {
            if v == 0 {
                return usage(format!("`{key}` must be positive"));
            }
        }
        if self.canon_max_n > EXACT_CANON_MAX_N {
            return usage(format!("exact canonical forms are supported up to n = {EXACT_CANON_MAX_N}"));
        }
        if self.budget_nodes == Some(0) {
            return usage("`budget_nodes` must be positive");
        }
        Ok(())
    }

    /// Budget for interactive searches: the node limit, the time limit, or both.
    pub fn budget(&self) -> Budget {
        Budget {
            nodes: self.budget_nodes,
            time: self.budget,
        }
    }

    /// The settings that can change results; embedded in every report.
    pub fn report_view(&self) -> Value {
        json!({
            "command": self.command,
            "seed": self.seed,
            "budget_nodes": self.budget_nodes,
            "canon_max_n": self.canon_max_n,
            "ex_f2t_max_m": self.ex_f2t_max_m,
            "turan_max_n": self.turan_max_n,
            "partition_max_n": self.partition_max_n,
        })
    }
}

pub fn parse_duration(s: &str) -> Result<Duration, UsageError> {
    if let Ok(secs) = s.parse::<f64>() {
        if secs.is_finite() && secs > 0.0 {
            return Ok(Duration::from_secs_f64(secs));
        }
    }
    humantime::parse_duration(s).map_err(|e| UsageError(format!("bad duration `{s}`: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_then_flags() {
        let mut c = RunConfig::defaults("verify");
        c.apply_text("# comment\nseed = 9\nbudget = 2m\n\nturan_max_n=8\n").unwrap();
        assert_eq!(c.seed, 9);
        assert_eq!(c.budget, Some(Duration::from_secs(120)));
        c.set("seed", "4").unwrap();
        assert_eq!((c.seed, c.turan_max_n), (4, 8));
        assert!(c.apply_text("nonsense").is_err());
        assert!(c.apply_text("colour = red").is_err());
    }

    #[test]
    fn caps() {
        let mut c = RunConfig::defaults("turan");
        assert!(c.validate().is_ok());
        c.canon_max_n = 17;
        assert!(c.validate().is_err());
        c.canon_max_n = 16;
        c.turan_max_n = 0;
        assert!(c.validate().is_err());
    }

    #[test]
    fn durations() {
        assert_eq!(parse_duration("1.5").unwrap(), Duration::from_millis(1500));
        assert_eq!(parse_duration("30s").unwrap(), Duration::from_secs(30));
        assert!(parse_duration("soon").is_err());
    }
}
