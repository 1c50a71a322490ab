//! Experiment configuration files.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use torelli_core::curve::{NormalCurve, Surface};
use torelli_core::error::CurveError;
use torelli_core::standard::{block_curves, bp_partners, StandardCurves};

/// Every key of a config file. Unknown keys are rejected.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ExperimentConfig {
    pub genus: u32,
    /// Named seed sets: "a", "b", "chain", "blocks", "bp-partners".
    pub seeds: Vec<String>,
    /// Extra seeds as polygon side words.
    pub seed_words: Vec<Vec<usize>>,
    /// Named generator sets: "a", "b", "chain".
    pub generators: Vec<String>,
    pub generator_words: Vec<Vec<usize>>,
    pub depth: u32,
    pub weight_cap: u32,
    pub seed: u64,
    pub max_curves: usize,
    /// Complex built by `complex`: "tg", "tgs" or "tgs-genus1".
    pub complex: String,
    pub bfs_budget: usize,
    pub budget_escalations: u32,
    pub move_samples: usize,
    pub pair_samples: usize,
    pub non_marked_samples: usize,
    pub cross_validate_triangles: usize,
    pub probes: usize,
    /// Inventory file to load instead of enumerating.
    pub inventory: Option<PathBuf>,
    pub out: Option<PathBuf>,
    /// DOT export path for `complex`.
    pub dot: Option<PathBuf>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        let all = ["a", "b", "chain", "blocks", "bp-partners"];
        ExperimentConfig {
            genus: 3,
            seeds: all.iter().map(|s| s.to_string()).collect(),
            seed_words: Vec::new(),
            generators: all[..3].iter().map(|s| s.to_string()).collect(),
            generator_words: Vec::new(),
            depth: 2,
            weight_cap: 200,
            seed: 1,
            max_curves: 1_000_000,
            complex: "tg".into(),
            bfs_budget: 1_000_000,
            budget_escalations: 1,
            move_samples: 10_000,
            pair_samples: 200,
            non_marked_samples: 200,
            cross_validate_triangles: 3,
            probes: 20,
            inventory: None,
            out: None,
            dot: None,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read config: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed config: {0}")]
    Parse(#[from] toml::de::Error),
    #[error("invalid config: {0}")]
    Invalid(String),
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        let c: Self = toml::from_str(text)?;
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let bad = |m: &str| Err(ConfigError::Invalid(m.to_string()));
        if self.genus < 2 {
            return bad("genus must be at least 2");
        }
        if self.weight_cap == 0 || self.max_curves == 0 || self.bfs_budget == 0 {
            return bad("weight_cap, max_curves and bfs_budget must be positive");
        }
        if !["tg", "tgs", "tgs-genus1"].contains(&self.complex.as_str()) {
            return bad("complex must be one of tg, tgs, tgs-genus1");
        }
        for s in &self.seeds {
            if !["a", "b", "chain", "blocks", "bp-partners"].contains(&s.as_str()) {
                return Err(ConfigError::Invalid(format!("unknown seed set {s:?}")));
            }
        }
        for s in &self.generators {
            if !["a", "b", "chain"].contains(&s.as_str()) {
                return Err(ConfigError::Invalid(format!("unknown generator set {s:?}")));
            }
        }
        let sides = 4 * self.genus as usize;
        if self.seed_words.iter().chain(&self.generator_words).flatten().any(|&l| l >= sides) {
            return bad("word letter out of range");
        }
        Ok(())
    }

    /// Hash of the settings that determine results; output paths are
    /// excluded.
    pub fn hash(&self) -> String {
        let mut c = self.clone();
        c.out = None;
        c.dot = None;
        let text = serde_json::to_string(&c).expect("config serializes");
        hex::encode(&Sha256::digest(text.as_bytes())[..8])
    }

    fn named(s: &Surface, names: &[String], words: &[Vec<usize>]) -> Result<Vec<NormalCurve>, CurveError> {
        let sc = StandardCurves::new(s)?;
        let mut out = Vec::new();
        for n in names {
            match n.as_str() {
                "a" => out.extend(sc.a.iter().cloned()),
                "b" => out.extend(sc.b.iter().cloned()),
                "chain" => out.extend(sc.chain.iter().cloned()),
                "blocks" => out.extend(block_curves(s)?),
                "bp-partners" => out.extend(bp_partners(s)?),
                _ => unreachable!("validated"),
            }
        }
        for w in words {
            out.push(s.curve_from_word(w)?);
        }
        Ok(out)
    }

    pub fn seed_curves(&self, s: &Surface) -> Result<Vec<NormalCurve>, CurveError> {
        Self::named(s, &self.seeds, &self.seed_words)
    }

    pub fn generator_curves(&self, s: &Surface) -> Result<Vec<NormalCurve>, CurveError> {
        Self::named(s, &self.generators, &self.generator_words)
    }
}
