use std::collections::BTreeMap;

use crate::kb::CaptureSource;

/// Fusion parameters. All fields have defaults; see [`FusionConfig::default`].
#[derive(Clone, Debug, PartialEq)]
pub struct FusionConfig {
    /// Top two scores closer than this mark the estimate ambiguous.
    pub ambiguity_epsilon: f64,
    /// Minimum score for a category to appear in EARL output.
    pub constituent_threshold: f64,
    /// Probability decay rate per second for predicted evidence.
    pub decay_lambda: f64,
    /// Predicted evidence below this probability is dropped.
    pub drop_floor: f64,
    pub weight_overrides: BTreeMap<CaptureSource, f64>,
}

impl Default for FusionConfig {
    fn default() -> Self {
        FusionConfig {
            ambiguity_epsilon: 0.1,
            constituent_threshold: 0.2,
            decay_lambda: 0.2,
            drop_floor: 0.05,
            weight_overrides: BTreeMap::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum ConfigError {
    #[error("line {line}: expected `key=value`")]
    MalformedLine { line: usize },
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: `{value}` is not a number")]
    BadNumber { line: usize, value: String },
    #[error("`{key}`={value} is out of range")]
    OutOfRange { key: String, value: f64 },
}

impl FusionConfig {
    /// Effective weight of a source: override if present, else base weight.
    pub fn weight(&self, source: CaptureSource) -> f64 {
        self.weight_overrides
            .get(&source)
            .copied()
            .unwrap_or_else(|| source.base_weight())
    }

    pub fn with_weight(mut self, source: CaptureSource, weight: f64) -> Self {
        self.weight_overrides.insert(source, weight);
        self
    }

    /// Checks every value is in range: epsilon, threshold and floor in
    /// [0, 1]; lambda ≥ 0; weights finite and > 0.
    pub fn validate(&self) -> Result<(), ConfigError> {
        let unit = [
            ("ambiguity_epsilon", self.ambiguity_epsilon),
            ("constituent_threshold", self.constituent_threshold),
            ("drop_floor", self.drop_floor),
        ];
        for (key, value) in unit {
            if !(0.0..=1.0).contains(&value) {
                return Err(ConfigError::OutOfRange {
                    key: key.into(),
                    value,
                });
            }
        }
        if !(self.decay_lambda >= 0.0 && self.decay_lambda.is_finite()) {
            return Err(ConfigError::OutOfRange {
                key: "decay_lambda".into(),
                value: self.decay_lambda,
            });
        }
        for (source, &w) in &self.weight_overrides {
            if !(w > 0.0 && w.is_finite()) {
                return Err(ConfigError::OutOfRange {
                    key: format!("weight.{source}"),
                    value: w,
                });
            }
        }
        Ok(())
    }

    /// Reads a flat `key=value` file. Keys: `ambiguity_epsilon`,
    /// `constituent_threshold`, `decay_lambda`, `drop_floor`, and
    /// `weight.<source>`. All keys are optional.
    pub fn from_key_values(input: &str) -> Result<Self, ConfigError> {
        let mut cfg = FusionConfig::default();
        for (i, raw) in input.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content
                .split_once('=')
                .ok_or(ConfigError::MalformedLine { line })?;
            let key = key.trim();
            let value_str = value.trim();
            let value: f64 = value_str
                .parse()
                .ok()
                .filter(|v: &f64| v.is_finite())
                .ok_or_else(|| ConfigError::BadNumber {
                    line,
                    value: value_str.to_string(),
                })?;
            match key {
                "ambiguity_epsilon" => cfg.ambiguity_epsilon = value,
                "constituent_threshold" => cfg.constituent_threshold = value,
                "decay_lambda" => cfg.decay_lambda = value,
                "drop_floor" => cfg.drop_floor = value,
                _ => {
                    let source = key
                        .strip_prefix("weight.")
                        .and_then(|s| s.parse::<CaptureSource>().ok())
                        .ok_or_else(|| ConfigError::UnknownKey {
                            line,
                            key: key.to_string(),
                        })?;
                    cfg.weight_overrides.insert(source, value);
                }
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }
}
