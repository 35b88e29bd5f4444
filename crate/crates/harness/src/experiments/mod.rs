//! Desk-scale checks of the main statements. Each experiment maps a config to
//! rows; trials run in parallel on derived seeds and are collected in order.

mod algebra;
mod closures;
mod cuts;
mod random;

use anyhow::{anyhow, Result};
use complexon::rng::rng_for;
use complexon::{enumerate_complexes, SimplicialComplex, StepComplexon};
use rand::Rng;

use crate::{ExperimentConfig, Report, Row};

pub struct Experiment {
    pub name: &'static str,
    /// Acceptance criterion number, if the experiment backs one.
    pub criterion: Option<usize>,
    pub summary: &'static str,
    pub defaults: fn() -> ExperimentConfig,
    /// Smaller configuration used by the determinism check.
    pub quick: fn() -> ExperimentConfig,
    pub run: fn(&ExperimentConfig) -> Result<Vec<Row>>,
}

pub const EXPERIMENTS: &[Experiment] = &[
    algebra::FACETING,
    algebra::PIXEL_CONSISTENCY,
    algebra::FACETED_IDENTITY,
    random::IND_SAMPLE,
    algebra::COUNTING_LEMMA,
    algebra::INCLUSION_EXCLUSION,
    cuts::CUTNORM_ORACLE,
    cuts::DISJOINT_SANDWICH,
    cuts::SAMPLING_LEMMA,
    closures::UL_CONVERGENCE,
    closures::HYPERGRAPH_EQUIVALENCE,
    algebra::PERMUTATION_INVARIANCE,
    random::CECH_BOUQUET,
    random::LCCM_CONSISTENCY,
    cuts::INVERSE_COUNTING,
    cuts::REGULARITY,
    cuts::NORM_CONCENTRATION,
    cuts::WEIGHTED_SAMPLE,
];

pub fn find(name: &str) -> Option<&'static Experiment> {
    EXPERIMENTS.iter().find(|e| e.name == name)
}

pub fn defaults_for(name: &str) -> Result<ExperimentConfig> {
    find(name)
        .map(|e| (e.defaults)())
        .ok_or_else(|| anyhow!("unknown experiment `{name}`; try `verify --list`"))
}

pub fn run(config: &ExperimentConfig) -> Result<Report> {
    config.validate()?;
    let e = find(&config.experiment).ok_or_else(|| anyhow!("unknown experiment `{}`", config.experiment))?;
    let rows = (e.run)(config)?;
    Ok(Report::new(e.name, config, rows))
}

fn base(name: &str) -> ExperimentConfig {
    ExperimentConfig {
        experiment: name.into(),
        ..Default::default()
    }
}

/// All labelled complexes on `1..=max_n` vertices of dimension at most `d`.
pub fn small_complexes(max_n: usize, d: usize) -> Result<Vec<SimplicialComplex>> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        out.extend(enumerate_complexes(n, d)?);
    }
    Ok(out)
}

/// Random exact stepfunction for trial `trial`: `1..=max_m` blocks, values in
/// multiples of `1/8`.
fn random_step(seed: u64, trial: usize, max_m: usize, dmax: usize) -> StepComplexon {
    let mut rng = rng_for(seed, trial as u64);
    let m = rng.gen_range(1..=max_m);
    StepComplexon::random_exact(m, dmax, 8, &mut rng)
}

fn random_pair(seed: u64, trial: usize, max_m: usize, dmax: usize) -> (StepComplexon, StepComplexon) {
    let mut rng = rng_for(seed, trial as u64);
    let m1 = rng.gen_range(1..=max_m);
    let m2 = rng.gen_range(1..=max_m);
    (
        StepComplexon::random_exact(m1, dmax, 8, &mut rng),
        StepComplexon::random_exact(m2, dmax, 8, &mut rng),
    )
}
