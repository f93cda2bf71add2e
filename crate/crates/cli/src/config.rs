//! Optional TOML config file. Keys override built-in defaults; explicit
//! flags override both.

use std::path::Path;

use serde::Deserialize;

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub seed: Option<u64>,
    pub threads: Option<usize>,
    pub chi: Option<f64>,
    pub epsilon: Option<f64>,
    pub samples: Option<usize>,
    pub max_nodes: Option<u64>,
    pub max_seconds: Option<f64>,
    pub slack: Option<f64>,
    pub q: Option<f64>,
    pub defensive: Option<f64>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        toml::from_str(&text).map_err(|e| format!("bad config {}: {}", path.display(), e.message()))
    }
}

pub const DEFAULT_SEED: u64 = 0;
pub const DEFAULT_CHI: f64 = 0.1;
pub const DEFAULT_EPSILON: f64 = 0.05;
pub const DEFAULT_SAMPLES: usize = 100_000;
pub const DEFAULT_SLACK: f64 = 1.0;
pub const DEFAULT_Q: f64 = 0.5;
pub const DEFAULT_DEFENSIVE: f64 = 0.1;
