//! Cut norms, cut distances and the bounds built on them.

use std::collections::BTreeMap;

use anyhow::{anyhow, Result};
use complexon::cut::{
    d_cut, d_cut_d, delta_cut, difference_array, disjoint_cut_sup, equipartition_adjust, weak_regularity_partition,
    CutMode, DeltaOptions, MultiArray, RegularityOptions,
};
use complexon::homomorphism::{t_hom_complexon, DensityMethod};
use complexon::rational::to_f64;
use complexon::rng::{derive_seed, rng_for};
use complexon::sampling::{sample_complex, weighted_from_points};
use complexon::{enumerate_complexes, Complexon, Partition, Rational, StepComplexon};
use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;

use super::{base, random_step, Experiment};
use crate::bounds::{
    inverse_counting_threshold, norm_concentration_upper, regularity_bound, repeat_probability, sampling_lemma_bound,
    step_inverse_counting_bound, weighted_sample_bound, WEIGHTED_SAMPLE_EXPONENT,
};
use crate::models::parse_model;
use crate::report::median;
use crate::{ExperimentConfig, Row};

fn collect_rows(parts: Vec<Result<Vec<Row>>>) -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    for p in parts {
        rows.extend(p?);
    }
    Ok(rows)
}

fn exact_value(v: &complexon::cut::CutValue) -> Result<Rational> {
    v.exact.clone().ok_or_else(|| anyhow!("cut norm was not exact"))
}

/// A pair of random exact stepfunctions on the same `m` blocks.
fn same_block_pair(seed: u64, trial: usize, m: usize, dmax: usize) -> (StepComplexon, StepComplexon) {
    let mut rng = rng_for(seed, trial as u64);
    (
        StepComplexon::random_exact(m, dmax, 8, &mut rng),
        StepComplexon::random_exact(m, dmax, 8, &mut rng),
    )
}

pub const CUTNORM_ORACLE: Experiment = Experiment {
    name: "cutnorm-oracle",
    criterion: Some(7),
    summary: "alternating-maximisation cut norms against exhaustive search; one-sided identity",
    defaults: || ExperimentConfig {
        trials: 100,
        blocks: 4,
        restarts: 20,
        ..base("cutnorm-oracle")
    },
    quick: || ExperimentConfig {
        trials: 4,
        blocks: 3,
        restarts: 5,
        ..base("cutnorm-oracle")
    },
    run: cutnorm_oracle,
};

/// Minimum share of instances where the heuristic must hit the exact value.
const EQUALITY_RATE: f64 = 0.95;

fn cutnorm_oracle(cfg: &ExperimentConfig) -> Result<Vec<Row>> {
    let name = CUTNORM_ORACLE.name;
    let per: Vec<Result<(Vec<Row>, bool)>> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| {
            let d = 1 + t % 2;
            let (u, w) = same_block_pair(cfg.seed, t, cfg.blocks, d);
            let a = difference_array(&u, &w, d)?;
            let exact = a.cut_norm_exact()?;
            let ex = exact_value(&exact)?;
            let heur = a.cut_norm_heuristic(cfg.restarts, derive_seed(cfg.seed, t as u64));
            let (gap, equal) = match &heur.exact {
                Some(h) => (to_f64(&(h - &ex)), *h == ex),
                None => (heur.value - exact.value, heur.value == exact.value),
            };
            let plus = exact_value(&a.one_sided_cut_norm()?)?;
            let minus = exact_value(&a.neg().one_sided_cut_norm()?)?;
            let sided = (&ex - plus.max(minus)).abs();
            let seed = cfg.seed;
            Ok((
                vec![
                    Row::check(name, cfg.blocks, t, gap, 0.0, None, seed, format!("heuristic - exact, d={d}")),
                    Row::check(name, cfg.blocks, t, to_f64(&sided), 0.0, None, seed, format!("one-sided identity, d={d}")),
                ],
                equal,
            ))
        })
        .collect();
    let mut rows = Vec::new();
    let mut hits = 0;
    for p in per {
        let (r, eq) = p?;
        rows.extend(r);
        hits += eq as usize;
    }
    let rate = hits as f64 / cfg.trials as f64;
    rows.push(Row::check(
        name,
        cfg.blocks,
        cfg.trials,
        1.0 - rate,
        1.0 - EQUALITY_RATE,
        None,
        cfg.seed,
        format!("miss rate, {hits}/{} equal", cfg.trials),
    ));
    Ok(rows)
}

pub const DISJOINT_SANDWICH: Experiment = Experiment {
    name: "disjoint-sandwich",
    criterion: Some(8),
    summary: "disjoint-set cut norm between the full norm and (d+1)^(d+1) times itself",
    defaults: || ExperimentConfig {
        trials: 50,
        blocks: 4,
        ..base("disjoint-sandwich")
    },
    quick: || ExperimentConfig {
        trials: 4,
        blocks: 2,
        ..base("disjoint-sandwich")
    },
    run: disjoint_sandwich,
};

fn disjoint_sandwich(cfg: &ExperimentConfig) -> Result<Vec<Row>> {
    let name = DISJOINT_SANDWICH.name;
    let per: Vec<Result<Vec<Row>>> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| {
            let d = 1 + t % 2;
            let m = rng_for(derive_seed(cfg.seed, 1), t as u64).gen_range(1..=cfg.blocks);
            let (u, w) = same_block_pair(cfg.seed, t, m, d);
            let full = exact_value(&d_cut_d(&u, &w, d, CutMode::Exact)?)?;
            let disjoint = exact_value(&disjoint_cut_sup(&u, &w, d)?)?;
            let factor = Rational::from_integer(((d + 1) as i64).pow(d as u32 + 1).into());
            Ok(vec![
                Row::check(name, m, t, to_f64(&(&disjoint - &full)), 0.0, None, cfg.seed, format!("disjoint - full, d={d}")),
                Row::check(
                    name,
                    m,
                    t,
                    to_f64(&(&full - factor * &disjoint)),
                    0.0,
                    None,
                    cfg.seed,
                    format!("full - (d+1)^(d+1) disjoint, d={d}"),
                ),
            ])
        })
        .collect();
    collect_rows(per)
}

pub const SAMPLING_LEMMA: Experiment = Experiment {
    name: "sampling-lemma",
    criterion: Some(9),
    summary: "certified upper bounds on the distance from K(n, W) to faceted W",
    defaults: || ExperimentConfig {
        model: Some("lm:2:1/2".into()),
        n_grid: vec![50, 100, 200],
        trials: 10,
        dmax: 2,
        ..base("sampling-lemma")
    },
    quick: || ExperimentConfig {
        model: Some("lm:2:1/2".into()),
        n_grid: vec![20, 40],
        trials: 2,
        dmax: 2,
        ..base("sampling-lemma")
    },
    run: sampling_lemma,
};

/// Rows below this size are recorded but not checked.
const SAMPLING_LEMMA_MIN_N: usize = 50;

/// `K` relabelled so that vertex order follows the latent order.
fn sorted_by_latents(k: &complexon::SimplicialComplex, latents: &[f64]) -> Result<complexon::SimplicialComplex> {
    let mut order: Vec<usize> = (0..latents.len()).collect();
    order.sort_by(|&a, &b| latents[a].total_cmp(&latents[b]));
    let mut perm = vec![0u32; latents.len()];
    for (rank, &v) in order.iter().enumerate() {
        perm[v] = rank as u32 + 1;
    }
    Ok(k.relabel(&perm)?)
}

fn sampling_lemma(cfg: &ExperimentConfig) -> Result<Vec<Row>> {
    let name = SAMPLING_LEMMA.name;
    let w = parse_model(cfg.model.as_deref().unwrap_or("lm:2:1/2"), cfg.dmax)?;
    let target = w.facet().to_step(64)?.to_float();
    let alphas = cfg.weights()?;
    let alpha_sum: f64 = (1..=cfg.dmax).map(|j| to_f64(&alphas.get(j))).sum();
    let jobs: Vec<(usize, usize)> = cfg
        .n_grid
        .iter()
        .flat_map(|&n| (0..cfg.trials).map(move |t| (n, t)))
        .collect();
    let measured: Vec<Result<(f64, u64)>> = jobs
        .par_iter()
        .map(|&(n, t)| {
            let seed = derive_seed(cfg.seed, (n * 10_000 + t) as u64);
            let rec = sample_complex(n, &w, seed)?;
            let k = sorted_by_latents(rec.complex().expect("complex sample"), &rec.latents)?;
            let pixel = StepComplexon::pixel_float(&k, cfg.dmax);
            Ok((d_cut(&pixel, &target, &alphas, CutMode::Upper)?.value, seed))
        })
        .collect();
    let mut rows = Vec::new();
    let mut by_n: BTreeMap<usize, Vec<f64>> = BTreeMap::new();
    for (&(n, t), r) in jobs.iter().zip(measured) {
        let (v, seed) = r?;
        let bound = sampling_lemma_bound(cfg.dmax, n, alpha_sum);
        let item = "certified upper bound on the unlabeled distance";
        rows.push(if n < SAMPLING_LEMMA_MIN_N {
            Row::info(name, n, t, v, bound, seed, item)
        } else {
            Row::check(name, n, t, v, bound, Some(alpha_sum), seed, item)
        });
        by_n.entry(n).or_default().push(v);
    }
    let mut medians = Vec::new();
    for (&n, vs) in &mut by_n {
        let mean = vs.iter().sum::<f64>() / vs.len() as f64;
        let sd = (vs.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / vs.len() as f64).sqrt();
        rows.push(Row::info(name, n, 0, sd, 0.0, cfg.seed, "trial standard deviation"));
        let med = median(vs);
        rows.push(Row::info(name, n, 0, med, 0.0, cfg.seed, "median"));
        medians.push(med);
    }
    let breaks = medians.windows(2).filter(|p| p[1] >= p[0]).count();
    let n_max = *cfg.n_grid.iter().max().unwrap();
    rows.push(Row::check(
        name,
        n_max,
        0,
        breaks as f64,
        0.0,
        None,
        cfg.seed,
        format!("medians not strictly decreasing in n: {medians:?}"),
    ));
    Ok(rows)
}

pub const INVERSE_COUNTING: Experiment = Experiment {
    name: "inverse-counting",
    criterion: None,
    summary: "stepfunction inverse counting: large distance forces a density gap",
    defaults: || ExperimentConfig {
        trials: 10,
        blocks: 2,
        dmax: 2,
        n_grid: vec![4],
        ..base("inverse-counting")
    },
    quick: || ExperimentConfig {
        trials: 2,
        blocks: 2,
        dmax: 1,
        n_grid: vec![3],
        ..base("inverse-counting")
    },
    run: inverse_counting,
};

/// Largest `|t(F, U) - t(F, W)|` over every `F` on `n` vertices of dimension `<= d`.
fn max_density_gap(u: &Complexon, w: &Complexon, n: usize, d: usize, budget: u64) -> Result<Rational> {
    let method = DensityMethod::ExactStep { budget };
    let mut best = Rational::zero();
    for f in enumerate_complexes(n, d)? {
        let a = t_hom_complexon(&f, u, method)?.exact.ok_or_else(|| anyhow!("inexact density"))?;
        let b = t_hom_complexon(&f, w, method)?.exact.ok_or_else(|| anyhow!("inexact density"))?;
        best = best.max((a - b).abs());
    }
    Ok(best)
}

fn inverse_counting(cfg: &ExperimentConfig) -> Result<Vec<Row>> {
    let name = INVERSE_COUNTING.name;
    let n = *cfg.n_grid.iter().max().unwrap();
    let d = cfg.dmax;
    let alphas = cfg.weights()?;
    let alpha_sum: f64 = (1..=d).map(|j| to_f64(&alphas.get(j))).sum();
    let threshold = inverse_counting_threshold(n, d);
    let opts = DeltaOptions {
        mode: CutMode::Exact,
        seed: cfg.seed,
        ..Default::default()
    };
    let per: Vec<Result<Vec<Row>>> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| {
            let u = random_step(cfg.seed, 2 * t, cfg.blocks, d);
            let w = random_step(cfg.seed, 2 * t + 1, cfg.blocks, d);
            let m = u.m().max(w.m());
            let delta = delta_cut(&u.facet(), &w.facet(), &alphas, &opts)?.upper.value;
            let rhs = step_inverse_counting_bound(m, d, n, alpha_sum);
            let gap = max_density_gap(&u.clone().into(), &w.clone().into(), n, d, cfg.budget)?;
            let mut rows = vec![Row::info(name, n, t, to_f64(&gap), delta, cfg.seed, "max density gap; bound column holds the faceted distance")];
            rows.push(if delta <= rhs {
                Row::check(name, n, t, delta, rhs, Some(alpha_sum), cfg.seed, "faceted distance against the bound")
            } else {
                Row::check(name, n, t, threshold - to_f64(&gap), 0.0, None, cfg.seed, "distance above bound: gap must exceed threshold")
            });
            // a block permutation of u: nothing may separate them
            let mut rng = rng_for(derive_seed(cfg.seed, 7), t as u64);
            let mut perm: Vec<usize> = (0..u.m()).collect();
            perm.shuffle(&mut rng);
            let p = u.apply_block_permutation(&perm)?;
            let pgap = max_density_gap(&u.clone().into(), &p.clone().into(), n, d, cfg.budget)?;
            let pdelta = delta_cut(&u.facet(), &p.facet(), &alphas, &opts)?.upper.value;
            rows.push(Row::check(name, n, t, to_f64(&pgap), 0.0, None, cfg.seed, "block-permuted pair: max density gap"));
            rows.push(Row::check(name, n, t, pdelta, 0.0, None, cfg.seed, "block-permuted pair: faceted distance"));
            Ok(rows)
        })
        .collect();
    let mut rows = collect_rows(per)?;
    let one = parse_model("flag:1", d)?;
    let zero = parse_model("flag:0", d)?;
    let gap = max_density_gap(&one, &zero, n, d, cfg.budget)?;
    rows.push(Row::check(
        name,
        n,
        cfg.trials,
        threshold - to_f64(&gap),
        0.0,
        None,
        cfg.seed,
        "flag(1) vs flag(0): threshold - max gap",
    ));
    Ok(rows)
}

pub const REGULARITY: Experiment = Experiment {
    name: "regularity",
    criterion: None,
    summary: "greedy weak regularity partitions and equipartition adjustment",
    defaults: || ExperimentConfig {
        trials: 8,
        blocks: 4,
        dmax: 2,
        n_grid: vec![10],
        restarts: 10,
        ..base("regularity")
    },
    quick: || ExperimentConfig {
        trials: 2,
        blocks: 3,
        dmax: 1,
        n_grid: vec![8],
        restarts: 3,
        ..base("regularity")
    },
    run: regularity,
};

/// Blocks of the random inputs.
const REGULARITY_INPUT_BLOCKS: usize = 8;

fn overlap(a: &[(Rational, Rational)], b: &[(Rational, Rational)]) -> Rational {
    let mut total = Rational::zero();
    for (a0, a1) in a {
        for (b0, b1) in b {
            let lo = a0.max(b0);
            let hi = a1.min(b1);
            if hi > lo {
                total += hi - lo;
            }
        }
    }
    total
}

/// Measure of the points of `q` placed outside the best-matching class of `p`.
fn disagreement(p: &Partition, q: &Partition) -> Rational {
    let mut total = Rational::zero();
    for (i, qc) in q.classes().iter().enumerate() {
        let best = p.classes().iter().map(|pc| overlap(pc, qc)).max().unwrap_or_else(Rational::zero);
        total += q.measure(i) - best;
    }
    total
}

fn regularity(cfg: &ExperimentConfig) -> Result<Vec<Row>> {
    let name = REGULARITY.name;
    let n = *cfg.n_grid.iter().max().unwrap();
    let per: Vec<Result<Vec<Row>>> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = rng_for(cfg.seed, t as u64);
            let w = StepComplexon::random_exact(REGULARITY_INPUT_BLOCKS, cfg.dmax, 8, &mut rng);
            let opts = RegularityOptions {
                max_blocks: cfg.blocks,
                dim: cfg.dmax,
                restarts: cfg.restarts,
                seed: derive_seed(cfg.seed, t as u64),
                ..Default::default()
            };
            let r = weak_regularity_partition(&w.clone().into(), &opts)?;
            let k = r.partition.len();
            let mut worst = 0.0f64;
            for j in 1..=cfg.dmax {
                worst = worst.max(d_cut_d(&r.base, &r.projection, j, CutMode::Exact)?.value);
            }
            let eq = equipartition_adjust(&r.partition, n)?;
            let moved = disagreement(&r.partition, &eq);
            Ok(vec![
                Row::check(name, k, t, worst, regularity_bound(cfg.dmax, k), Some(1.0), cfg.seed, "max exact d_cut_j to the projection"),
                Row::check(name, n, t, to_f64(&moved), k as f64 / n as f64, None, cfg.seed, format!("equipartition into {n}: moved measure")),
            ])
        })
        .collect();
    collect_rows(per)
}

pub const NORM_CONCENTRATION: Experiment = Experiment {
    name: "norm-concentration",
    criterion: None,
    summary: "cut norm of a sampled array against the kernel's cut norm (recorded only)",
    defaults: || ExperimentConfig {
        trials: 10,
        blocks: 3,
        dmax: 2,
        n_grid: vec![4, 6, 8],
        ..base("norm-concentration")
    },
    quick: || ExperimentConfig {
        trials: 2,
        blocks: 2,
        dmax: 1,
        n_grid: vec![4],
        ..base("norm-concentration")
    },
    run: norm_concentration,
};

/// `U[X]` for `U = a - b` on the points `x`, exactly.
fn sampled_array(a: &StepComplexon, b: &StepComplexon, d: usize, x: &[f64]) -> Result<MultiArray> {
    let n = x.len();
    let blocks: Vec<usize> = x.iter().map(|&t| a.block_of(t)).collect();
    let mut data = Vec::with_capacity(n.pow(d as u32 + 1));
    let mut idx = vec![0usize; d + 1];
    loop {
        let mut cell: Vec<usize> = idx.iter().map(|&i| blocks[i]).collect();
        cell.sort_unstable();
        let va = a.exact_at(&cell).ok_or_else(|| anyhow!("inexact input"))?;
        let vb = b.exact_at(&cell).ok_or_else(|| anyhow!("inexact input"))?;
        data.push(va - vb);
        let mut axis = d + 1;
        loop {
            if axis == 0 {
                return Ok(MultiArray::from_rational(vec![n; d + 1], data)?);
            }
            axis -= 1;
            idx[axis] += 1;
            if idx[axis] < n {
                break;
            }
            idx[axis] = 0;
        }
    }
}

fn norm_concentration(cfg: &ExperimentConfig) -> Result<Vec<Row>> {
    let name = NORM_CONCENTRATION.name;
    let jobs: Vec<(usize, usize, usize)> = (1..=cfg.dmax)
        .flat_map(|d| cfg.n_grid.iter().flat_map(move |&n| (0..cfg.trials).map(move |t| (d, n, t))))
        .collect();
    let per: Vec<Result<Vec<Row>>> = jobs
        .par_iter()
        .enumerate()
        .map(|(i, &(d, n, t))| {
            let seed = derive_seed(cfg.seed, i as u64);
            let (u, w) = same_block_pair(seed, 0, cfg.blocks, d);
            let full = d_cut_d(&u, &w, d, CutMode::Exact)?.value;
            let mut rng = rng_for(seed, 1);
            let x: Vec<f64> = (0..n).map(|_| rng.gen()).collect();
            let a = sampled_array(&u, &w, d, &x)?;
            let (sampled, note) = match a.cut_norm_exact() {
                Ok(v) => (v.value, "exact"),
                Err(_) => (a.cut_norm_heuristic(cfg.restarts, seed).value, "heuristic"),
            };
            let r = repeat_probability(n, d + 1);
            Ok(vec![
                Row::info(name, n, t, sampled - full, norm_concentration_upper(d, n), seed, format!("sampled - kernel norm ({note}), d={d}")),
                Row::info(name, n, t, full - sampled, 3.0 * r, seed, format!("kernel - sampled norm ({note}) vs 3 r(n,d+1), d={d}")),
            ])
        })
        .collect();
    collect_rows(per)
}

pub const WEIGHTED_SAMPLE: Experiment = Experiment {
    name: "weighted-sample",
    criterion: None,
    summary: "mean distance between faceted weights at sampled points and the sampled complex",
    defaults: || ExperimentConfig {
        model: Some("cf:1/2,1/2".into()),
        trials: 5,
        dmax: 2,
        n_grid: vec![10, 20, 40],
        ..base("weighted-sample")
    },
    quick: || ExperimentConfig {
        model: Some("cf:1/2,1/2".into()),
        trials: 2,
        dmax: 2,
        n_grid: vec![8],
        ..base("weighted-sample")
    },
    run: weighted_sample,
};

fn weighted_sample(cfg: &ExperimentConfig) -> Result<Vec<Row>> {
    let name = WEIGHTED_SAMPLE.name;
    let w = parse_model(cfg.model.as_deref().unwrap_or("cf:1/2,1/2"), cfg.dmax)?;
    let wf = w.facet();
    let jobs: Vec<(usize, usize)> = cfg
        .n_grid
        .iter()
        .flat_map(|&n| (0..cfg.trials).map(move |t| (n, t)))
        .collect();
    let per: Vec<Result<Vec<f64>>> = jobs
        .par_iter()
        .map(|&(n, t)| {
            let seed = derive_seed(cfg.seed, (n * 1000 + t) as u64);
            let rec = sample_complex(n, &w, seed)?;
            let weights = StepComplexon::pixel_weighted(&weighted_from_points(&wf, &rec.latents)?).to_float();
            let pixel = StepComplexon::pixel_float(rec.complex().expect("complex sample"), cfg.dmax);
            (1..=cfg.dmax)
                .map(|d| Ok(d_cut_d(&weights, &pixel, d, CutMode::Upper)?.value))
                .collect()
        })
        .collect();
    let mut sums: BTreeMap<(usize, usize), f64> = BTreeMap::new();
    let mut rows = Vec::new();
    for (&(n, t), r) in jobs.iter().zip(per) {
        for (j, v) in r?.into_iter().enumerate() {
            rows.push(Row::info(name, n, t, v, 0.0, cfg.seed, format!("certified upper bound, d={}", j + 1)));
            *sums.entry((n, j + 1)).or_insert(0.0) += v;
        }
    }
    for ((n, d), s) in sums {
        let bound = weighted_sample_bound(d, n, WEIGHTED_SAMPLE_EXPONENT);
        rows.push(Row::check(
            name,
            n,
            0,
            s / cfg.trials as f64,
            bound,
            Some(1.0),
            cfg.seed,
            format!("mean certified upper bound, d={d}"),
        ));
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use complexon::rational::rat;

    #[test]
    fn disagreement_of_identical_partitions_is_zero() {
        let p = Partition::equal(4);
        assert_eq!(disagreement(&p, &p), Rational::zero());
        let q = Partition::new(vec![vec![(rat(0, 1), rat(1, 3))], vec![(rat(1, 3), rat(1, 1))]]).unwrap();
        assert_eq!(disagreement(&Partition::equal(2), &q), rat(1, 6));
    }

    #[test]
    fn sampled_array_of_constant_difference() {
        let a = StepComplexon::constant(&[rat(3, 4)]).unwrap();
        let b = StepComplexon::constant(&[rat(1, 4)]).unwrap();
        let arr = sampled_array(&a, &b, 1, &[0.1, 0.5, 0.9]).unwrap();
        assert_eq!(arr.shape(), &[3, 3]);
        assert_eq!(arr.cut_norm_exact().unwrap().exact, Some(rat(1, 2)));
    }
}
