//! Hyperparameter file.

use std::path::Path;

use graphinsight_core::method::Hyperparameters;
use graphinsight_core::pagerank::PageRankConfig;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    /// PageRank damping.
    pub lambda: f64,
    pub max_iter: usize,
    pub tol: f64,
}

impl Default for Config {
    fn default() -> Self {
        Self { alpha: 4.5, beta: 10.5, gamma: 80.0, lambda: 0.85, max_iter: 100, tol: 1e-8 }
    }
}

impl Config {
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn hyperparameters(&self) -> Hyperparameters {
        Hyperparameters {
            alpha_pct: self.alpha,
            beta_pct: self.beta,
            gamma_pct: self.gamma,
            pagerank: PageRankConfig { damping: self.lambda, max_iter: self.max_iter, tol: self.tol },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_file_keeps_defaults() {
        let c: Config = serde_json::from_str(r#"{"gamma": 50}"#).unwrap();
        assert_eq!(c, Config { gamma: 50.0, ..Config::default() });
        assert!(serde_json::from_str::<Config>(r#"{"delta": 1}"#).is_err());
    }
}
