//! Scenario configuration: a flat key = value file, overridable by flags.

use anyhow::{bail, Context, Result};
use lazycover::Rule;
use std::f64::consts::TAU;
use std::path::{Path, PathBuf};

/// A fully resolved scenario.
#[derive(Debug, Clone)]
pub struct ScenarioConfig {
    pub n: u32,
    pub rule: Rule,
    pub epsilon: f64,
    pub k_max: Option<u32>,
    /// Reserved for future random schedulers; accepted and recorded only.
    pub seed: u64,
    pub log_path: Option<PathBuf>,
    pub report_path: Option<PathBuf>,
    pub render_path: Option<PathBuf>,
}

/// Values gathered from a config file or command-line flags before merging.
#[derive(Debug, Clone, Default)]
pub struct PartialConfig {
    pub n: Option<u32>,
    pub rule: Option<Rule>,
    pub epsilon: Option<f64>,
    pub k_max: Option<u32>,
    pub seed: Option<u64>,
    pub log_path: Option<PathBuf>,
    pub report_path: Option<PathBuf>,
    pub render_path: Option<PathBuf>,
}

impl PartialConfig {
    /// Parses the flat key = value format. Blank lines and `#` comments are
    /// skipped; unknown keys are rejected.
    pub fn from_file(path: &Path) -> Result<PartialConfig> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read config {}", path.display()))?;
        let mut config = PartialConfig::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                bail!("{}:{}: expected `key = value`", path.display(), lineno + 1);
            };
            let (key, value) = (key.trim(), value.trim());
            let here = || format!("{}:{}: key `{key}`", path.display(), lineno + 1);
            match key {
                "n" => config.n = Some(value.parse().with_context(here)?),
                "rule" => config.rule = Some(value.parse().map_err(|e| anyhow::anyhow!("{e}")).with_context(here)?),
                "epsilon" => config.epsilon = Some(value.parse().with_context(here)?),
                "k_max" => config.k_max = Some(value.parse().with_context(here)?),
                "seed" => config.seed = Some(value.parse().with_context(here)?),
                "outputs" => {
                    for kind in value.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                        match kind {
                            "event_log" => {
                                config.log_path.get_or_insert_with(|| "run.events.jsonl".into());
                            }
                            "report" => {
                                config.report_path.get_or_insert_with(|| "run.report.json".into());
                            }
                            "render" => {
                                config.render_path.get_or_insert_with(|| "run.svg".into());
                            }
                            other => bail!("{}: unknown output kind `{other}`", here()),
                        }
                    }
                }
                "log_path" => config.log_path = Some(value.into()),
                "report_path" => config.report_path = Some(value.into()),
                "render_path" => config.render_path = Some(value.into()),
                other => bail!("{}:{}: unknown key `{other}`", path.display(), lineno + 1),
            }
        }
        Ok(config)
    }

    /// Overlays `self` (higher priority) on `base`.
    pub fn or(self, base: PartialConfig) -> PartialConfig {
        PartialConfig {
            n: self.n.or(base.n),
            rule: self.rule.or(base.rule),
            epsilon: self.epsilon.or(base.epsilon),
            k_max: self.k_max.or(base.k_max),
            seed: self.seed.or(base.seed),
            log_path: self.log_path.or(base.log_path),
            report_path: self.report_path.or(base.report_path),
            render_path: self.render_path.or(base.render_path),
        }
    }

    pub fn resolve(self) -> Result<ScenarioConfig> {
        let Some(n) = self.n else {
            bail!("the agent count is required (flag --n or config key `n`)");
        };
        let Some(rule) = self.rule else {
            bail!("the rule is required (flag --rule or config key `rule`)");
        };
        let config = ScenarioConfig {
            n,
            rule,
            epsilon: self.epsilon.unwrap_or(0.0),
            k_max: self.k_max,
            seed: self.seed.unwrap_or(0),
            log_path: self.log_path,
            report_path: self.report_path,
            render_path: self.render_path,
        };
        config.validate()?;
        Ok(config)
    }
}

impl ScenarioConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n < 1 {
            bail!("at least one agent is required");
        }
        if self.epsilon < -TAU / self.n as f64 {
            bail!(
                "epsilon {} would make arcs negative; the minimum for N = {} is {}",
                self.epsilon,
                self.n,
                -TAU / self.n as f64
            );
        }
        if !self.epsilon.is_finite() {
            bail!("epsilon must be finite");
        }
        if self.k_max == Some(0) {
            bail!("k_max must be at least 1");
        }
        Ok(())
    }
}
