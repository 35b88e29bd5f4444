//! Random hypergraphs and their lower and upper closures.

use std::collections::HashMap;

use anyhow::Result;
use complexon::cut::{d_cut, CutMode};
use complexon::homomorphism::{t_ind_complexon, DensityMethod};
use complexon::rational::to_f64;
use complexon::rng::derive_seed;
use complexon::sampling::{sample_complex, sample_hypergraph};
use complexon::complexon::binom;
use complexon::{enumerate_complexes, Complexon, SimplicialComplex, StepComplexon};
use rayon::prelude::*;

use super::{base, Experiment};
use crate::models::parse_model;
use crate::report::median;
use crate::{ExperimentConfig, Row};

pub const UL_CONVERGENCE: Experiment = Experiment {
    name: "ul-convergence",
    criterion: Some(10),
    summary: "closures of H(n, W) for W supported on triples; closure distances for a faceted W",
    defaults: || ExperimentConfig {
        model: Some("homog:0,1".into()),
        n_grid: vec![20, 40],
        trials: 20,
        dmax: 2,
        restarts: 4,
        ..base("ul-convergence")
    },
    quick: || ExperimentConfig {
        model: Some("homog:0,1".into()),
        n_grid: vec![10],
        trials: 2,
        dmax: 2,
        restarts: 2,
        ..base("ul-convergence")
    },
    run: ul_convergence,
};

/// Model used for the closure-distance rows.
const FACETED_MODEL: &str = "flag:7/10";
/// Trials per `n` for the closure-distance rows.
const DISTANCE_TRIALS: usize = 3;

fn ul_convergence(cfg: &ExperimentConfig) -> Result<Vec<Row>> {
    let name = UL_CONVERGENCE.name;
    let w = parse_model(cfg.model.as_deref().unwrap_or("homog:0,1"), cfg.dmax)?;
    let jobs: Vec<(usize, usize)> = cfg
        .n_grid
        .iter()
        .flat_map(|&n| (0..cfg.trials).map(move |t| (n, t)))
        .collect();
    let per_job: Vec<Result<Vec<Row>>> = jobs
        .par_iter()
        .map(|&(n, t)| {
            let seed = derive_seed(cfg.seed, (n * 1000 + t) as u64);
            let rec = sample_hypergraph(n, &w, seed)?;
            let h = rec.hypergraph().expect("hypergraph sample");
            let lower = h.lower_closure();
            let upper = h.upper_closure();
            let pairs = binom(n, 2) as f64;
            let triples = binom(n, 3) as f64;
            Ok(vec![
                Row::check(name, n, t, lower.count_of_dim(1) as f64, 0.0, None, seed, "lower closure edges"),
                Row::check(
                    name,
                    n,
                    t,
                    1.0 - upper.count_of_dim(1) as f64 / pairs,
                    0.0,
                    None,
                    seed,
                    "1 - upper closure edge density",
                ),
                Row::info(name, n, t, upper.count_of_dim(2) as f64 / triples, 0.0, seed, "upper closure triangle density"),
            ])
        })
        .collect();
    let mut rows = Vec::new();
    for r in per_job {
        rows.extend(r?);
    }
    rows.extend(closure_distances(cfg)?);
    Ok(rows)
}

/// Heuristic labeled distances, lower closure to `W` and upper closure to
/// faceted `W`, for `W = facet(flag(0.7))`. Recorded, not checked.
fn closure_distances(cfg: &ExperimentConfig) -> Result<Vec<Row>> {
    let name = UL_CONVERGENCE.name;
    let w = parse_model(FACETED_MODEL, cfg.dmax)?.facet();
    let wf = w.facet();
    let alphas = cfg.weights()?;
    let step = |c: &Complexon| c.to_step(1);
    let (ws, wfs) = (step(&w)?, step(&wf)?);
    let jobs: Vec<(usize, usize)> = cfg
        .n_grid
        .iter()
        .flat_map(|&n| (0..DISTANCE_TRIALS.min(cfg.trials)).map(move |t| (n, t)))
        .collect();
    let measured: Vec<Result<(usize, f64, f64, u64)>> = jobs
        .par_iter()
        .map(|&(n, t)| {
            let seed = derive_seed(cfg.seed, (1 << 32) + (n * 1000 + t) as u64);
            let rec = sample_hypergraph(n, &w, seed)?;
            let h = rec.hypergraph().expect("hypergraph sample");
            let mode = CutMode::Heuristic {
                restarts: cfg.restarts,
                seed,
            };
            let lo = StepComplexon::pixel_float(&h.lower_closure(), cfg.dmax);
            let up = StepComplexon::pixel_float(&h.upper_closure(), cfg.dmax);
            let dl = d_cut(&lo, &ws, &alphas, mode)?.value;
            let du = d_cut(&up, &wfs, &alphas, mode)?.value;
            Ok((n, dl, du, seed))
        })
        .collect();
    let mut rows = Vec::new();
    let mut by_n: HashMap<usize, (Vec<f64>, Vec<f64>)> = HashMap::new();
    for (i, r) in measured.into_iter().enumerate() {
        let (n, dl, du, seed) = r?;
        let t = jobs[i].1;
        rows.push(Row::info(name, n, t, dl, 0.0, seed, format!("lower closure to W, W={FACETED_MODEL} faceted")));
        rows.push(Row::info(name, n, t, du, 0.0, seed, "upper closure to faceted W"));
        let e = by_n.entry(n).or_default();
        e.0.push(dl);
        e.1.push(du);
    }
    for &n in &cfg.n_grid {
        if let Some((l, u)) = by_n.get_mut(&n) {
            rows.push(Row::info(name, n, 0, median(l), 0.0, cfg.seed, "median lower closure distance"));
            rows.push(Row::info(name, n, 0, median(u), 0.0, cfg.seed, "median upper closure distance"));
        }
    }
    Ok(rows)
}

pub const HYPERGRAPH_EQUIVALENCE: Experiment = Experiment {
    name: "hypergraph-equivalence",
    criterion: Some(11),
    summary: "K(n, W), lower closure of H(n, W) and upper closure of H(n, faceted W) in distribution",
    defaults: || ExperimentConfig {
        model: Some("flag:1/2".into()),
        n_grid: vec![3],
        samples: 100_000,
        dmax: 2,
        ..base("hypergraph-equivalence")
    },
    quick: || ExperimentConfig {
        model: Some("flag:1/2".into()),
        n_grid: vec![3],
        samples: 5_000,
        dmax: 2,
        ..base("hypergraph-equivalence")
    },
    run: hypergraph_equivalence,
};

/// Total-variation threshold between arms.
const TV_BOUND: f64 = 0.01;

fn distribution<F>(samples: usize, draw: F) -> Result<HashMap<SimplicialComplex, f64>>
where
    F: Fn(usize) -> Result<SimplicialComplex> + Sync,
{
    let counts = (0..samples)
        .into_par_iter()
        .try_fold(HashMap::new, |mut acc, i| {
            *acc.entry(draw(i)?).or_insert(0usize) += 1;
            Ok::<_, anyhow::Error>(acc)
        })
        .try_reduce(HashMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            Ok(a)
        })?;
    Ok(counts.into_iter().map(|(k, c)| (k, c as f64 / samples as f64)).collect())
}

fn total_variation(p: &HashMap<SimplicialComplex, f64>, q: &HashMap<SimplicialComplex, f64>) -> f64 {
    let mut keys: Vec<&SimplicialComplex> = p.keys().chain(q.keys()).collect();
    keys.sort();
    keys.dedup();
    keys.iter()
        .map(|k| (p.get(*k).unwrap_or(&0.0) - q.get(*k).unwrap_or(&0.0)).abs())
        .sum::<f64>()
        / 2.0
}

fn hypergraph_equivalence(cfg: &ExperimentConfig) -> Result<Vec<Row>> {
    let name = HYPERGRAPH_EQUIVALENCE.name;
    let w = parse_model(cfg.model.as_deref().unwrap_or("flag:1/2"), cfg.dmax)?;
    let wf = w.facet();
    let mut rows = Vec::new();
    for &n in &cfg.n_grid {
        let seeds = [0u64, 1, 2].map(|arm| derive_seed(cfg.seed, (n as u64) << 8 | arm));
        let a = distribution(cfg.samples, |i| {
            Ok(sample_complex(n, &w, derive_seed(seeds[0], i as u64))?.complex().unwrap().clone())
        })?;
        let b = distribution(cfg.samples, |i| {
            Ok(sample_hypergraph(n, &w, derive_seed(seeds[1], i as u64))?.hypergraph().unwrap().lower_closure())
        })?;
        let c = distribution(cfg.samples, |i| {
            Ok(sample_hypergraph(n, &wf, derive_seed(seeds[2], i as u64))?.hypergraph().unwrap().upper_closure())
        })?;
        for (label, p, q, s) in [("a-b", &a, &b, seeds[1]), ("a-c", &a, &c, seeds[2]), ("b-c", &b, &c, seeds[2])] {
            rows.push(Row::check(
                name,
                n,
                0,
                total_variation(p, q),
                TV_BOUND,
                None,
                s,
                format!("TV {label}: K(n,W) / lower(H(n,W)) / upper(H(n,faceted W))"),
            ));
        }
        // each arm against the exact induced densities, when available
        let d = cfg.dmax.min(n.saturating_sub(1));
        if n <= 4 {
            let method = DensityMethod::ExactStep {
                budget: cfg.budget,
            };
            let exact: Option<HashMap<SimplicialComplex, f64>> = enumerate_complexes(n, d)?
                .into_iter()
                .map(|f| {
                    let p = t_ind_complexon(&f, &w, method).ok()?.exact?;
                    Some((f, to_f64(&p)))
                })
                .collect();
            if let Some(exact) = exact {
                for (label, arm, s) in [("a", &a, seeds[0]), ("b", &b, seeds[1]), ("c", &c, seeds[2])] {
                    rows.push(Row::info(name, n, 0, total_variation(arm, &exact), 0.0, s, format!("TV {label} to induced densities")));
                }
            }
        }
    }
    Ok(rows)
}
