//! Run configuration: command-line flags layered over an optional flat
//! `key = value` file.

use clap::Parser;
use induced_core::catalog::FamilyId;
use induced_core::exprspace::Mode;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConfigError {
    #[error("ops must be ≥ 1")]
    OpsTooSmall,
    #[error("{field}: {message}")]
    Invalid { field: &'static str, message: String },
    #[error("verify: family `{family}` requires ops = 1, got ops = {ops}")]
    FamilyNeedsOneOperator { family: FamilyId, ops: usize },
    #[error("config: cannot read {path}: {message}")]
    Unreadable { path: String, message: String },
    #[error("config: line {line}: {message}")]
    Syntax { line: usize, message: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format `{other}` (expected text|json)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub commuting: bool,
    pub ops: usize,
    pub mode: Mode,
    pub verify: Option<FamilyId>,
    pub format: Format,
    pub seed: Option<u64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            commuting: true,
            ops: 1,
            mode: Mode::Pre,
            verify: None,
            format: Format::Text,
            seed: None,
        }
    }
}

impl fmt::Display for RunConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "model = {}, ops = {}, mode = {}",
            model_name(self.commuting),
            self.ops,
            self.mode.as_str()
        )?;
        if let Some(family) = self.verify {
            write!(f, ", verify = {family}")?;
        }
        Ok(())
    }
}

pub fn model_name(commuting: bool) -> &'static str {
    if commuting {
        "commuting"
    } else {
        "noncommuting"
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "induced",
    version,
    about = "Kernels of the induced-product evaluation map and their relator families",
    after_help = "Operators are numbered from 0: `a ▷_i b = a·D_i(b)` prints as `r{i}` in json, \
                  and the plain product `⊻` as `m`."
)]
pub struct Cli {
    /// commuting | noncommuting
    #[arg(long)]
    pub model: Option<String>,
    /// Number of derivations, n ≥ 1
    #[arg(long, allow_hyphen_values = true)]
    pub ops: Option<String>,
    /// pre | post
    #[arg(long)]
    pub mode: Option<String>,
    /// Relator family to compare against the kernel
    /// (novikov | prelie | multinovikov | ncmultinovikov | rightcomm)
    #[arg(long)]
    pub verify: Option<String>,
    /// text | json
    #[arg(long)]
    pub format: Option<String>,
    /// Seed for the property suites
    #[arg(long)]
    pub seed: Option<String>,
    /// Flat `key = value` file with the same fields; flags take precedence
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Run the randomized property suites instead of a kernel computation
    #[arg(long)]
    pub selftest: bool,
    /// Cases per property for --selftest
    #[arg(long, default_value_t = 1000)]
    pub cases: usize,
}

const KEYS: [&str; 6] = ["model", "ops", "mode", "verify", "format", "seed"];

/// Parses a flat `key = value` file. Blank lines and `#` comments are
/// skipped; later keys override earlier ones.
pub fn parse_config_file(text: &str) -> Result<Vec<(String, String)>, ConfigError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let syntax = |message: String| ConfigError::Syntax { line: i + 1, message };
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| syntax(format!("expected `key = value`, got `{line}`")))?;
        let (k, v) = (k.trim(), v.trim().trim_matches('"'));
        if !KEYS.contains(&k) {
            return Err(syntax(format!(
                "unknown key `{k}` (expected one of {})",
                KEYS.join(", ")
            )));
        }
        out.push((k.to_string(), v.to_string()));
    }
    Ok(out)
}

fn invalid(field: &'static str, message: impl Into<String>) -> ConfigError {
    ConfigError::Invalid {
        field,
        message: message.into(),
    }
}

impl RunConfig {
    fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        match key {
            "model" => {
                self.commuting = match value {
                    "commuting" => true,
                    "noncommuting" => false,
                    other => {
                        return Err(invalid(
                            "model",
                            format!("unknown model `{other}` (expected commuting|noncommuting)"),
                        ))
                    }
                }
            }
            "ops" => {
                let n: i64 = value
                    .parse()
                    .map_err(|_| invalid("ops", format!("`{value}` is not an integer")))?;
                if n < 1 {
                    return Err(ConfigError::OpsTooSmall);
                }
                self.ops = n as usize;
            }
            "mode" => self.mode = value.parse().map_err(|m: String| invalid("mode", m))?,
            "verify" => {
                self.verify = Some(value.parse().map_err(|m: String| invalid("verify", m))?)
            }
            "format" => self.format = value.parse().map_err(|m: String| invalid("format", m))?,
            "seed" => {
                self.seed = Some(
                    value
                        .parse()
                        .map_err(|_| invalid("seed", format!("`{value}` is not a u64")))?,
                )
            }
            other => unreachable!("unchecked key {other}"),
        }
        Ok(())
    }

    /// Resolves defaults, then the config file, then the flags, and checks
    /// the cross-field invariants.
    pub fn resolve(cli: &Cli) -> Result<RunConfig, ConfigError> {
        let mut cfg = RunConfig::default();
        if let Some(path) = &cli.config {
            let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Unreadable {
                path: path.display().to_string(),
                message: e.to_string(),
            })?;
            for (k, v) in parse_config_file(&text)? {
                cfg.set(&k, &v)?;
            }
        }
        let flags = [
            ("model", &cli.model),
            ("ops", &cli.ops),
            ("mode", &cli.mode),
            ("verify", &cli.verify),
            ("format", &cli.format),
            ("seed", &cli.seed),
        ];
        for (k, v) in flags {
            if let Some(v) = v {
                cfg.set(k, v)?;
            }
        }
        if let Some(family) = cfg.verify {
            if family.single_operator() && cfg.ops != 1 {
                return Err(ConfigError::FamilyNeedsOneOperator {
                    family,
                    ops: cfg.ops,
                });
            }
        }
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn resolve(args: &[&str]) -> Result<RunConfig, ConfigError> {
        let cli = Cli::try_parse_from(std::iter::once("induced").chain(args.iter().copied())).unwrap();
        RunConfig::resolve(&cli)
    }

    #[test]
    fn defaults() {
        assert_eq!(resolve(&[]).unwrap(), RunConfig::default());
    }

    #[test]
    fn ops_validation() {
        assert_eq!(resolve(&["--ops", "0"]), Err(ConfigError::OpsTooSmall));
        assert_eq!(resolve(&["--ops", "-3"]), Err(ConfigError::OpsTooSmall));
        assert_eq!(ConfigError::OpsTooSmall.to_string(), "ops must be ≥ 1");
        let e = resolve(&["--ops", "two"]).unwrap_err();
        assert!(e.to_string().starts_with("ops:"));
    }

    #[test]
    fn family_needs_single_operator() {
        let e = resolve(&["--ops", "2", "--verify", "prelie"]).unwrap_err();
        assert!(e.to_string().starts_with("verify:"), "{e}");
        assert!(resolve(&["--ops", "2", "--verify", "multinovikov"]).is_ok());
    }

    #[test]
    fn file_then_flags() {
        let parsed = parse_config_file("# run\nmodel = noncommuting\nops=3\n\nformat = \"json\"\n").unwrap();
        assert_eq!(parsed.len(), 3);
        assert!(matches!(
            parse_config_file("colour = red"),
            Err(ConfigError::Syntax { line: 1, .. })
        ));
        assert!(matches!(
            parse_config_file("ops 3"),
            Err(ConfigError::Syntax { line: 1, .. })
        ));
    }
}
