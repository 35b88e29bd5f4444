use anyhow::{bail, Context, Result};
use complexon::rational::{format_rational, parse_rational};
use complexon::{Rational, WeightSequence};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// Everything an experiment run depends on. Serialised field order is fixed,
/// so the hash is stable.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: String,
    /// Zoo spec or path to a complexon file.
    pub model: Option<String>,
    pub n_grid: Vec<usize>,
    pub trials: usize,
    /// Monte Carlo sample count where relevant.
    pub samples: usize,
    pub seed: u64,
    /// Rationals as text (`1/2`, `0.25`).
    pub alphas: Vec<String>,
    pub dmax: usize,
    /// Exact cut norms where the guard allows; otherwise heuristic.
    pub exact: bool,
    pub restarts: usize,
    pub budget: u64,
    /// Block cap for regularity; block count for step families.
    pub blocks: usize,
    pub epsilon: f64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            experiment: String::new(),
            model: None,
            n_grid: vec![3],
            trials: 10,
            samples: 100_000,
            seed: 1,
            alphas: vec!["1/2".into(), "1/4".into()],
            dmax: 2,
            exact: true,
            restarts: 20,
            budget: complexon::homomorphism::DEFAULT_BUDGET,
            blocks: 3,
            epsilon: 0.0,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            bail!("trials must be at least 1");
        }
        if self.n_grid.is_empty() {
            bail!("n-grid must not be empty");
        }
        if self.dmax == 0 {
            bail!("dmax must be at least 1");
        }
        self.weights()?;
        Ok(())
    }

    pub fn weights(&self) -> Result<WeightSequence> {
        let alphas = self
            .alphas
            .iter()
            .map(|a| parse_rational(a).with_context(|| format!("alpha `{a}`")))
            .collect::<Result<Vec<Rational>>>()?;
        Ok(WeightSequence::new(alphas)?)
    }

    pub fn set_alphas(&mut self, alphas: &[Rational]) {
        self.alphas = alphas.iter().map(format_rational).collect();
    }

    /// First 16 hex digits of the SHA-256 of the JSON form.
    pub fn hash(&self) -> String {
        let json = serde_json::to_string(self).expect("config serialises");
        let digest = Sha256::digest(json.as_bytes());
        digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
    }
}
