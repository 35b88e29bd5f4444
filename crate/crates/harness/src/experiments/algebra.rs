//! Exact identities between densities, faceting and pixel pictures.

use anyhow::{anyhow, Result};
use complexon::cut::{d_cut_d, delta_cut, CutMode, DeltaOptions};
use complexon::homomorphism::{
    t_hom, t_hom_complexon, t_hom_faceted, t_ind_by_inclusion_exclusion, t_ind_complexon, DensityMethod,
    DensityResult, DEFAULT_BUDGET,
};
use complexon::rational::{rat, to_f64};
use complexon::rng::rng_for;
use complexon::complexon::cells;
use complexon::{Complexon, HomogeneousComplexon, Rational, SimplicialComplex, StepComplexon};
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rayon::prelude::*;

use super::{base, random_pair, random_step, small_complexes, Experiment};
use crate::{ExperimentConfig, Row};

const EXACT: DensityMethod = DensityMethod::ExactStep { budget: DEFAULT_BUDGET };

fn exact(r: complexon::Result<DensityResult>) -> Result<Rational> {
    r?.exact.ok_or_else(|| anyhow!("density was not exact"))
}

fn mismatch_row(name: &str, n: usize, trial: usize, mismatches: usize, seed: u64, item: String) -> Row {
    Row::check(name, n, trial, mismatches as f64, 0.0, None, seed, item)
}

pub const FACETING: Experiment = Experiment {
    name: "faceting",
    criterion: Some(1),
    summary: "faceted form of a homogeneous complexon; faceting of random steps against a sub-tuple product",
    defaults: || ExperimentConfig {
        trials: 20,
        dmax: 3,
        ..base("faceting")
    },
    quick: || ExperimentConfig {
        trials: 3,
        dmax: 3,
        ..base("faceting")
    },
    run: faceting,
};

/// Product of `w` over every sub-tuple (by position) of `cell` with at least
/// two entries.
fn subtuple_product(w: &StepComplexon, cell: &[usize]) -> Rational {
    let k = cell.len();
    let mut p = Rational::one();
    for mask in 1u32..(1 << k) {
        if mask.count_ones() < 2 {
            continue;
        }
        let mut sub: Vec<usize> = (0..k).filter(|&i| mask >> i & 1 == 1).map(|i| cell[i]).collect();
        sub.sort_unstable();
        p *= w.exact_at(&sub).expect("exact input");
    }
    p
}

fn faceting(cfg: &ExperimentConfig) -> Result<Vec<Row>> {
    let name = FACETING.name;
    let h = HomogeneousComplexon::new(vec![rat(1, 2), rat(1, 1)])?;
    let f = h.facet();
    let gap = (f.prob(2) - rat(1, 8)).abs();
    let mut rows = vec![Row::check(name, 0, 0, to_f64(&gap), 0.0, None, cfg.seed, "homog(1/2,1) dim 2 vs 1/8")];
    let trials: Vec<Row> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| {
            let w = random_step(cfg.seed, t, cfg.blocks, cfg.dmax);
            let fw = w.facet();
            let mut bad = 0;
            for d in 1..=cfg.dmax {
                for c in cells(w.m(), d) {
                    if fw.exact_at(&c) != Some(subtuple_product(&w, &c)) {
                        bad += 1;
                    }
                }
            }
            mismatch_row(name, w.m(), t, bad, cfg.seed, format!("random step m={}", w.m()))
        })
        .collect();
    rows.extend(trials);
    Ok(rows)
}

pub const PIXEL_CONSISTENCY: Experiment = Experiment {
    name: "pixel-consistency",
    criterion: Some(2),
    summary: "t(F, K) equals t(F, pixel(K)) for all small labelled F and K",
    defaults: || ExperimentConfig {
        n_grid: vec![4],
        ..base("pixel-consistency")
    },
    quick: || ExperimentConfig {
        n_grid: vec![3],
        ..base("pixel-consistency")
    },
    run: pixel_consistency,
};

fn pixel_consistency(cfg: &ExperimentConfig) -> Result<Vec<Row>> {
    let name = PIXEL_CONSISTENCY.name;
    let max_n = *cfg.n_grid.iter().max().unwrap();
    let all = small_complexes(max_n, cfg.dmax)?;
    let ks: Vec<&SimplicialComplex> = all.iter().collect();
    // mismatches[nF][nK] and pair counts
    let per_k: Vec<Result<(usize, Vec<usize>)>> = ks
        .par_iter()
        .map(|k| {
            let pk: Complexon = StepComplexon::pixel(k).into();
            let mut bad = vec![0usize; max_n + 1];
            for f in &all {
                if exact(t_hom(f, k))? != exact(t_hom_complexon(f, &pk, EXACT))? {
                    bad[f.n()] += 1;
                }
            }
            Ok((k.n(), bad))
        })
        .collect();
    let mut bad = vec![vec![0usize; max_n + 1]; max_n + 1];
    for r in per_k {
        let (nk, b) = r?;
        for nf in 1..=max_n {
            bad[nf][nk] += b[nf];
        }
    }
    let count = |n: usize| all.iter().filter(|c| c.n() == n).count();
    let mut rows = Vec::new();
    for nf in 1..=max_n {
        for nk in 1..=max_n {
            rows.push(mismatch_row(
                name,
                nf,
                nk,
                bad[nf][nk],
                cfg.seed,
                format!("{} pairs, n_F={nf}, n_K={nk}", count(nf) * count(nk)),
            ));
        }
    }
    Ok(rows)
}

pub const FACETED_IDENTITY: Experiment = Experiment {
    name: "faceted-identity",
    criterion: Some(3),
    summary: "t(F, W) against the facet-product density of F on the faceted W",
    defaults: || ExperimentConfig {
        trials: 20,
        dmax: 3,
        n_grid: vec![4],
        ..base("faceted-identity")
    },
    quick: || ExperimentConfig {
        trials: 2,
        dmax: 2,
        n_grid: vec![3],
        ..base("faceted-identity")
    },
    run: faceted_identity,
};

fn faceted_identity(cfg: &ExperimentConfig) -> Result<Vec<Row>> {
    let name = FACETED_IDENTITY.name;
    let max_n = *cfg.n_grid.iter().max().unwrap();
    let fs = small_complexes(max_n, cfg.dmax)?;
    (0..cfg.trials)
        .into_par_iter()
        .map(|t| {
            let w: Complexon = random_step(cfg.seed, t, cfg.blocks, cfg.dmax).into();
            let mut bad = 0;
            for f in &fs {
                let lhs = exact(t_hom_complexon(f, &w, EXACT))?;
                let rhs = exact(t_hom_faceted(f, &w, EXACT))?;
                if lhs != rhs {
                    bad += 1;
                }
            }
            let item = format!("{} patterns", fs.len());
            Ok(mismatch_row(name, max_n, t, bad, cfg.seed, item))
        })
        .collect()
}

pub const COUNTING_LEMMA: Experiment = Experiment {
    name: "counting-lemma",
    criterion: Some(5),
    summary: "density gaps against weighted labeled cut distances, three inequality families",
    defaults: || ExperimentConfig {
        trials: 50,
        dmax: 2,
        n_grid: vec![4],
        ..base("counting-lemma")
    },
    quick: || ExperimentConfig {
        trials: 3,
        dmax: 2,
        n_grid: vec![3],
        ..base("counting-lemma")
    },
    run: counting_lemma,
};

/// Exact `d_cut_j(a, b)` for `j = 1..=dmax`.
fn cut_terms(a: &StepComplexon, b: &StepComplexon, dmax: usize) -> Result<Vec<Rational>> {
    (1..=dmax)
        .map(|d| {
            d_cut_d(a, b, d, CutMode::Exact)?
                .exact
                .ok_or_else(|| anyhow!("cut norm was not exact"))
        })
        .collect()
}

fn weighted(terms: &[Rational], coeffs: &[usize]) -> Rational {
    terms
        .iter()
        .zip(coeffs)
        .map(|(t, &c)| t * Rational::from_integer(c.into()))
        .sum()
}

/// Per-dimension counts `1..=dmax` of a simplex family.
fn by_dim<'a>(sets: impl Iterator<Item = &'a complexon::Simplex>, dmax: usize) -> Vec<usize> {
    let mut c = vec![0; dmax];
    for s in sets {
        let j = s.len() - 1;
        if (1..=dmax).contains(&j) {
            c[j - 1] += 1;
        }
    }
    c
}

fn counting_lemma(cfg: &ExperimentConfig) -> Result<Vec<Row>> {
    let name = COUNTING_LEMMA.name;
    let max_n = *cfg.n_grid.iter().max().unwrap();
    let fs = small_complexes(max_n, cfg.dmax)?;
    let per_trial: Vec<Result<Vec<Row>>> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| {
            let (u, w) = random_pair(cfg.seed, t, cfg.blocks, cfg.dmax);
            let plain = cut_terms(&u, &w, cfg.dmax)?;
            let faceted = cut_terms(&u.facet(), &w.facet(), cfg.dmax)?;
            let (uc, wc): (Complexon, Complexon) = (u.clone().into(), w.clone().into());
            // worst LHS - RHS per family
            let mut worst: [Option<Rational>; 3] = [None, None, None];
            let mut update = |i: usize, gap: Rational| {
                if worst[i].as_ref().is_none_or(|w| gap > *w) {
                    worst[i] = Some(gap);
                }
            };
            for f in &fs {
                let facets = f.facets();
                let alpha = by_dim(facets.iter(), cfg.dmax);
                let beta = by_dim(f.iter(), cfg.dmax);
                let anti = f.antifacets();
                let mut gamma = beta.clone();
                for (g, a) in gamma.iter_mut().zip(by_dim(anti.iter(), cfg.dmax)) {
                    *g += a;
                }
                let hom = (exact(t_hom_complexon(f, &uc, EXACT))? - exact(t_hom_complexon(f, &wc, EXACT))?).abs();
                let ind = (exact(t_ind_complexon(f, &uc, EXACT))? - exact(t_ind_complexon(f, &wc, EXACT))?).abs();
                update(0, &hom - weighted(&faceted, &alpha));
                update(1, hom - weighted(&plain, &beta));
                update(2, ind - weighted(&plain, &gamma));
            }
            let labels = ["hom vs faceted d_cut", "hom vs d_cut", "induced vs d_cut"];
            Ok(worst
                .into_iter()
                .zip(labels)
                .map(|(g, label)| {
                    let g = g.unwrap_or_else(Rational::zero);
                    Row::check(
                        name,
                        max_n,
                        t,
                        to_f64(&g),
                        0.0,
                        None,
                        cfg.seed,
                        format!("{label}; m=({},{})", u.m(), w.m()),
                    )
                })
                .collect())
        })
        .collect();
    let mut rows = Vec::new();
    for r in per_trial {
        rows.extend(r?);
    }
    Ok(rows)
}

pub const INCLUSION_EXCLUSION: Experiment = Experiment {
    name: "inclusion-exclusion",
    criterion: Some(6),
    summary: "induced densities by inclusion-exclusion over antifacets against the direct integral",
    defaults: || ExperimentConfig {
        trials: 50,
        dmax: 2,
        n_grid: vec![4],
        ..base("inclusion-exclusion")
    },
    quick: || ExperimentConfig {
        trials: 3,
        dmax: 2,
        n_grid: vec![3],
        ..base("inclusion-exclusion")
    },
    run: inclusion_exclusion,
};

fn inclusion_exclusion(cfg: &ExperimentConfig) -> Result<Vec<Row>> {
    let name = INCLUSION_EXCLUSION.name;
    let max_n = *cfg.n_grid.iter().max().unwrap();
    let fs = small_complexes(max_n, cfg.dmax)?;
    (0..cfg.trials)
        .into_par_iter()
        .map(|t| {
            // Same pairs as the counting-lemma run with the same seed.
            let (u, w) = random_pair(cfg.seed, t, cfg.blocks, cfg.dmax);
            let mut bad = 0;
            for s in [u, w] {
                let c: Complexon = s.into();
                for f in &fs {
                    let ie = exact(t_ind_by_inclusion_exclusion(f, &c, DEFAULT_BUDGET))?;
                    if ie != exact(t_ind_complexon(f, &c, EXACT))? {
                        bad += 1;
                    }
                }
            }
            Ok(mismatch_row(name, max_n, t, bad, cfg.seed, format!("{} patterns x 2", fs.len())))
        })
        .collect()
}

pub const PERMUTATION_INVARIANCE: Experiment = Experiment {
    name: "permutation-invariance",
    criterion: Some(12),
    summary: "block-permuted stepfunctions: equal densities and zero unlabeled distance",
    defaults: || ExperimentConfig {
        trials: 2,
        dmax: 2,
        n_grid: vec![2, 3, 4, 5, 6],
        ..base("permutation-invariance")
    },
    quick: || ExperimentConfig {
        trials: 1,
        dmax: 2,
        n_grid: vec![2, 3],
        ..base("permutation-invariance")
    },
    run: permutation_invariance,
};

fn permutation_invariance(cfg: &ExperimentConfig) -> Result<Vec<Row>> {
    let name = PERMUTATION_INVARIANCE.name;
    let fs = small_complexes(4, cfg.dmax)?;
    let alphas = cfg.weights()?;
    let jobs: Vec<(usize, usize)> = cfg
        .n_grid
        .iter()
        .flat_map(|&m| (0..cfg.trials).map(move |t| (m, t)))
        .collect();
    let per_job: Vec<Result<Vec<Row>>> = jobs
        .par_iter()
        .enumerate()
        .map(|(i, &(m, t))| {
            let mut rng = rng_for(cfg.seed, i as u64);
            let w = StepComplexon::random_exact(m, cfg.dmax, 8, &mut rng);
            let mut perm: Vec<usize> = (0..m).collect();
            perm.shuffle(&mut rng);
            let u = w.apply_block_permutation(&perm)?;
            let (uc, wc): (Complexon, Complexon) = (u.clone().into(), w.clone().into());
            let mut bad = 0;
            for f in &fs {
                if exact(t_hom_complexon(f, &uc, EXACT))? != exact(t_hom_complexon(f, &wc, EXACT))? {
                    bad += 1;
                }
            }
            let opts = DeltaOptions {
                mode: CutMode::Exact,
                exact_perm_limit: m.max(DeltaOptions::default().exact_perm_limit),
                seed: cfg.seed,
                ..Default::default()
            };
            let delta = delta_cut(&u, &w, &alphas, &opts)?;
            let measured = if delta.exhaustive { delta.upper.value } else { f64::INFINITY };
            Ok(vec![
                mismatch_row(name, m, t, bad, cfg.seed, format!("densities, perm {perm:?}")),
                Row::check(name, m, t, measured, 0.0, None, cfg.seed, "unlabeled distance, all permutations"),
            ])
        })
        .collect();
    let mut rows = Vec::new();
    for r in per_job {
        rows.extend(r?);
    }
    Ok(rows)
}
