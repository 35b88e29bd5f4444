use itertools::Itertools;
use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rayon::prelude::*;

use super::{Bound, CutValue, Entries, MultiArray, EXACT_GUARD_BITS};
use crate::complexon::{refine_to_common, StepComplexon, WeightSequence};
use crate::error::{invalid, Result};
use crate::homomorphism::{t_hom_complexon, t_ind_complexon, DensityMethod, DEFAULT_BUDGET};
use crate::rational::{to_f64, Rational};
use crate::rng::rng_for;
use crate::simplicial::SimplicialComplex;

/// How each per-dimension cut norm is computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CutMode {
    /// Exhaustive search; fails past the guard.
    Exact,
    /// Alternating maximisation (a lower bound).
    Heuristic { restarts: usize, seed: u64 },
    /// Certified upper bound.
    Upper,
    /// Exact within the guard, certified upper bound beyond it.
    Auto,
}

/// Dimension-`d` difference tensor of two complexons on the same blocks.
pub fn difference_array(a: &StepComplexon, b: &StepComplexon, d: usize) -> Result<MultiArray> {
    if a.m() != b.m() || a.widths() != b.widths() {
        return invalid("complexons must share their blocks; refine to a common partition first");
    }
    if d == 0 {
        return invalid("cut norms start at dimension 1");
    }
    let m = a.m();
    let shape = vec![m; d + 1];
    let len = m.pow(d as u32 + 1);
    let mut idx = vec![0usize; d + 1];
    let entries = if a.is_exact() && b.is_exact() {
        let mut v = Vec::with_capacity(len);
        for _ in 0..len {
            v.push(a.exact_at(&idx).unwrap() - b.exact_at(&idx).unwrap());
            super::bump(&mut idx, &shape);
        }
        Entries::Exact(v)
    } else {
        let mut v = Vec::with_capacity(len);
        for _ in 0..len {
            v.push(a.value_at(&idx) - b.value_at(&idx));
            super::bump(&mut idx, &shape);
        }
        Entries::Float(v)
    };
    Ok(MultiArray {
        weights: vec![a.widths(); d + 1],
        shape,
        entries,
    })
}

fn norm(array: &MultiArray, mode: CutMode) -> Result<CutValue> {
    match mode {
        CutMode::Exact => array.cut_norm_exact(),
        CutMode::Heuristic { restarts, seed } => Ok(array.cut_norm_heuristic(restarts, seed)),
        CutMode::Upper => Ok(array.cut_norm_upper_bound()),
        CutMode::Auto => {
            if array.shape.iter().sum::<usize>() <= EXACT_GUARD_BITS {
                array.cut_norm_exact()
            } else {
                Ok(array.cut_norm_upper_bound())
            }
        }
    }
}

/// Labeled `d`-dimensional cut distance.
pub fn d_cut_d(w1: &StepComplexon, w2: &StepComplexon, d: usize, mode: CutMode) -> Result<CutValue> {
    if d > w1.max_dim() && d > w2.max_dim() {
        return Ok(CutValue::zero());
    }
    let (a, b) = refine_to_common(w1, w2);
    norm(&difference_array(&a, &b, d)?, mode)
}

/// Sum `sum_j alpha_j d_j` with its per-dimension terms.
#[derive(Clone, Debug, PartialEq)]
pub struct CutSum {
    pub value: f64,
    pub exact: Option<Rational>,
    pub kind: Bound,
    pub terms: Vec<CutValue>,
}

impl CutSum {
    fn combine(alphas: &WeightSequence, terms: Vec<CutValue>) -> Self {
        let value = terms
            .iter()
            .enumerate()
            .map(|(j, t)| to_f64(&alphas.get(j + 1)) * t.value)
            .sum();
        let exact = terms
            .iter()
            .enumerate()
            .map(|(j, t)| t.exact.as_ref().map(|e| alphas.get(j + 1) * e))
            .sum::<Option<Rational>>();
        let kind = if terms.iter().any(|t| t.kind == Bound::Upper) {
            Bound::Upper
        } else if terms.iter().any(|t| t.kind == Bound::Lower) {
            Bound::Lower
        } else {
            Bound::Exact
        };
        Self {
            value,
            exact,
            kind,
            terms,
        }
    }
}

/// Weighted labeled cut distance over dimensions `1..=max(D1, D2)`.
pub fn d_cut(w1: &StepComplexon, w2: &StepComplexon, alphas: &WeightSequence, mode: CutMode) -> Result<CutSum> {
    let (a, b) = refine_to_common(w1, w2);
    d_cut_common(&a, &b, alphas, mode, None)
}

/// `d_cut` for complexons already on common blocks. With `stop_above`, gives
/// up (returning `None`) once the partial sum exceeds it.
fn d_cut_pruned(
    a: &StepComplexon,
    b: &StepComplexon,
    alphas: &WeightSequence,
    mode: CutMode,
    stop_above: Option<f64>,
) -> Result<Option<CutSum>> {
    let top = a.max_dim().max(b.max_dim()).min(alphas.len());
    let mut terms = Vec::with_capacity(top);
    let mut partial = 0.0;
    for d in 1..=top {
        let alpha = alphas.get(d);
        let t = if alpha.is_zero() {
            CutValue::zero()
        } else {
            norm(&difference_array(a, b, d)?, mode)?
        };
        partial += to_f64(&alpha) * t.value;
        terms.push(t);
        if stop_above.is_some_and(|s| partial > s) {
            return Ok(None);
        }
    }
    Ok(Some(CutSum::combine(alphas, terms)))
}

fn d_cut_common(
    a: &StepComplexon,
    b: &StepComplexon,
    alphas: &WeightSequence,
    mode: CutMode,
    stop_above: Option<f64>,
) -> Result<CutSum> {
    Ok(d_cut_pruned(a, b, alphas, mode, stop_above)?.expect("no pruning requested"))
}

#[derive(Clone, Debug)]
pub struct DeltaOptions {
    /// Extra k-fold refinement of both complexons before searching.
    pub blowup: usize,
    pub mode: CutMode,
    /// Enumerate all block permutations up to this many blocks.
    pub exact_perm_limit: usize,
    /// Random starting permutations for swap descent (identity is always tried).
    pub restarts: usize,
    /// Passes of swap descent per start; 0 keeps the starts as they are.
    pub max_passes: usize,
    pub seed: u64,
    /// Additional starting permutations.
    pub starts: Vec<Vec<usize>>,
    /// Patterns for the counting-lemma lower bound; empty gives 0.
    pub patterns: Vec<SimplicialComplex>,
}

impl Default for DeltaOptions {
    fn default() -> Self {
        Self {
            blowup: 1,
            mode: CutMode::Auto,
            exact_perm_limit: 8,
            restarts: 2,
            max_passes: 50,
            seed: 0,
            starts: Vec::new(),
            patterns: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DeltaResult {
    /// Smallest `d_cut` found; an upper bound on the unlabeled distance.
    pub upper: CutSum,
    pub lower: f64,
    /// Block permutation applied to the second complexon (0-based, on the
    /// common refined blocks).
    pub permutation: Vec<usize>,
    /// True when every block permutation was checked.
    pub exhaustive: bool,
    pub evaluations: usize,
}

fn preserves_widths(widths: &[Rational], perm: &[usize]) -> bool {
    (0..perm.len()).all(|b| widths[b] == widths[perm[b]])
}

/// Unlabeled cut distance: minimum of `d_cut` over block permutations of the
/// second argument.
pub fn delta_cut(w1: &StepComplexon, w2: &StepComplexon, alphas: &WeightSequence, opts: &DeltaOptions) -> Result<DeltaResult> {
    let (mut a, mut b) = refine_to_common(w1, w2);
    if opts.blowup > 1 {
        a = a.refine(opts.blowup)?;
        b = b.refine(opts.blowup)?;
    }
    let m = a.m();
    let widths = a.widths();
    let identity: Vec<usize> = (0..m).collect();
    let eval = |perm: &[usize], stop: Option<f64>| -> Result<Option<CutSum>> {
        let bp = b.apply_block_permutation(perm)?;
        d_cut_pruned(&a, &bp, alphas, opts.mode, stop)
    };
    let mut best_perm = identity.clone();
    let mut best = d_cut_common(&a, &b, alphas, opts.mode, None)?;
    let mut evaluations = 1;
    let exhaustive = m <= opts.exact_perm_limit;
    if best.value > 0.0 && exhaustive {
        let perms: Vec<Vec<usize>> = (0..m)
            .permutations(m)
            .filter(|p| preserves_widths(&widths, p))
            .collect();
        evaluations += perms.len();
        let bound = best.value;
        let found = perms
            .par_iter()
            .enumerate()
            .map(|(i, p)| eval(p, Some(bound)).map(|r| r.map(|s| (s, i))))
            .collect::<Result<Vec<_>>>()?;
        for (s, i) in found.into_iter().flatten() {
            if s.value < best.value {
                best = s;
                best_perm = perms[i].clone();
            }
        }
    } else if best.value > 0.0 {
        let mut starts = vec![identity.clone()];
        starts.extend(opts.starts.iter().filter(|p| p.len() == m).cloned());
        for r in 0..opts.restarts {
            let mut p = identity.clone();
            let mut rng = rng_for(opts.seed, r as u64);
            // Shuffle within groups of equal width only.
            for group in widths.iter().cloned().unique().collect::<Vec<_>>() {
                let slots: Vec<usize> = (0..m).filter(|&i| widths[i] == group).collect();
                let mut shuffled = slots.clone();
                shuffled.shuffle(&mut rng);
                for (s, t) in slots.iter().zip(shuffled) {
                    p[*s] = t;
                }
            }
            starts.push(p);
        }
        let swaps: Vec<(usize, usize)> = (0..m)
            .tuple_combinations()
            .filter(|&(i, j)| widths[i] == widths[j])
            .collect();
        for start in starts {
            let mut cur_perm = start;
            let mut cur = eval(&cur_perm, None)?.unwrap();
            evaluations += 1;
            for _ in 0..opts.max_passes {
                if cur.value == 0.0 {
                    break;
                }
                let bound = cur.value;
                let tried = swaps
                    .par_iter()
                    .map(|&(i, j)| {
                        let mut p = cur_perm.clone();
                        p.swap(i, j);
                        eval(&p, Some(bound)).map(|r| r.map(|s| (s, p)))
                    })
                    .collect::<Result<Vec<_>>>()?;
                evaluations += swaps.len();
                let mut improved = false;
                for (s, p) in tried.into_iter().flatten() {
                    if s.value < cur.value {
                        cur = s;
                        cur_perm = p;
                        improved = true;
                    }
                }
                if !improved {
                    break;
                }
            }
            if cur.value < best.value {
                best = cur;
                best_perm = cur_perm;
            }
        }
    }
    let lower = if opts.patterns.is_empty() {
        0.0
    } else {
        counting_lemma_lower_bound(&a, &b, &opts.patterns, alphas)?
    };
    Ok(DeltaResult {
        upper: best,
        lower,
        permutation: best_perm,
        exhaustive,
        evaluations,
    })
}

/// Unlabeled cut distance of two finite complexes via their pixel
/// complexons, overlaid on `blowup * n1 * n2` blocks.
pub fn delta_cut_complexes(
    k1: &SimplicialComplex,
    k2: &SimplicialComplex,
    alphas: &WeightSequence,
    blowup: usize,
    opts: &DeltaOptions,
) -> Result<DeltaResult> {
    if blowup == 0 {
        return invalid("blowup factor must be positive");
    }
    let (n1, n2) = (k1.n(), k2.n());
    if n1 == 0 || n2 == 0 {
        return invalid("complexes need at least one vertex");
    }
    let total = blowup * n1 * n2;
    if total > 4096 {
        return Err(crate::error::Error::Budget(format!("overlay of {total} blocks")));
    }
    let p1 = StepComplexon::pixel(k1);
    let p2 = StepComplexon::pixel(k2);
    let mut starts = Vec::new();
    let mut best: Option<DeltaResult> = None;
    if n1 == n2 {
        // Vertex bijections first, on the unrefined pixels.
        let first = delta_cut(&p1, &p2, alphas, &DeltaOptions {
            blowup: 1,
            patterns: Vec::new(),
            ..opts.clone()
        })?;
        let t = blowup * n1;
        starts.push((0..total).map(|b| first.permutation[b / t] * t + b % t).collect());
        best = Some(first);
    }
    let done = best.as_ref().is_some_and(|r| r.upper.value == 0.0 || (total == n1 && r.exhaustive));
    if !done {
        let fine = delta_cut(&p1.refine(blowup * n2)?, &p2.refine(blowup * n1)?, alphas, &DeltaOptions {
            blowup: 1,
            starts,
            patterns: Vec::new(),
            ..opts.clone()
        })?;
        best = match best {
            Some(b) if b.upper.value <= fine.upper.value => Some(DeltaResult {
                exhaustive: b.exhaustive || fine.exhaustive,
                evaluations: b.evaluations + fine.evaluations,
                ..b
            }),
            Some(b) => Some(DeltaResult {
                exhaustive: b.exhaustive || fine.exhaustive,
                evaluations: b.evaluations + fine.evaluations,
                ..fine
            }),
            None => Some(fine),
        };
    }
    let mut result = best.unwrap();
    if !opts.patterns.is_empty() {
        result.lower = counting_lemma_lower_bound(&p1, &p2, &opts.patterns, alphas)?;
    }
    Ok(result)
}

/// Lower bound on the unlabeled distance from density gaps of the given
/// patterns: `c |t(F,U) - t(F,W)|` with `c = min_j alpha_j / |F^(j)|`, and
/// likewise for induced densities with antifacets counted.
pub fn counting_lemma_lower_bound(
    u: &StepComplexon,
    w: &StepComplexon,
    patterns: &[SimplicialComplex],
    alphas: &WeightSequence,
) -> Result<f64> {
    let method = DensityMethod::ExactStep { budget: DEFAULT_BUDGET };
    let (u, w) = (u.clone().into(), w.clone().into());
    let scale = |counts: &[usize]| -> Option<Rational> {
        counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(j, &c)| alphas.get(j + 1) / Rational::from_integer(c.into()))
            .min()
    };
    let mut best = 0.0f64;
    for f in patterns {
        let top = f.max_dim().max(1) + 1;
        let beta: Vec<usize> = (1..=top).map(|j| f.count_of_dim(j)).collect();
        let mut gamma = beta.clone();
        for a in f.antifacets() {
            let j = a.len() - 1;
            if j >= 1 && j <= gamma.len() {
                gamma[j - 1] += 1;
            }
        }
        if let Some(c) = scale(&beta) {
            let gap = gap(t_hom_complexon(f, &u, method)?, t_hom_complexon(f, &w, method)?);
            best = best.max(to_f64(&c) * gap);
        }
        if let Some(c) = scale(&gamma) {
            let gap = gap(t_ind_complexon(f, &u, method)?, t_ind_complexon(f, &w, method)?);
            best = best.max(to_f64(&c) * gap);
        }
    }
    Ok(best)
}

fn gap(a: crate::homomorphism::DensityResult, b: crate::homomorphism::DensityResult) -> f64 {
    match (a.exact, b.exact) {
        (Some(x), Some(y)) => to_f64(&(x - y).abs()),
        _ => (a.value - b.value).abs(),
    }
}

/// Counterpart used by [`super::MultiArray::disjoint_cut_sup`] for two
/// complexons: each block is split into `d + 1` pieces.
pub fn disjoint_cut_sup(w1: &StepComplexon, w2: &StepComplexon, d: usize) -> Result<CutValue> {
    let (a, b) = refine_to_common(w1, w2);
    difference_array(&a, &b, d)?.disjoint_cut_sup(d + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexon::HomogeneousComplexon;
    use crate::rational::rat;
    use rand::SeedableRng;

    fn homog(ps: &[Rational]) -> StepComplexon {
        HomogeneousComplexon::new(ps.to_vec()).unwrap().to_step()
    }

    fn edge() -> SimplicialComplex {
        SimplicialComplex::from_facets(2, [vec![1, 2]]).unwrap()
    }

    #[test]
    fn labeled_examples() {
        let one = homog(&[rat(1, 1)]);
        let zero = homog(&[rat(0, 1)]);
        assert_eq!(d_cut_d(&one, &zero, 1, CutMode::Exact).unwrap().exact, Some(rat(1, 1)));
        assert_eq!(d_cut_d(&one, &one, 1, CutMode::Exact).unwrap().value, 0.0);
        let px = StepComplexon::pixel(&edge());
        let half = homog(&[rat(1, 2)]);
        assert_eq!(d_cut_d(&px, &half, 1, CutMode::Exact).unwrap().exact, Some(rat(1, 8)));

        let flag1 = homog(&[rat(1, 1), rat(1, 1)]);
        let flag0 = homog(&[rat(0, 1), rat(0, 1)]);
        let alphas = WeightSequence::new(vec![rat(1, 2), rat(1, 4)]).unwrap();
        assert_eq!(d_cut(&flag1, &flag0, &alphas, CutMode::Exact).unwrap().exact, Some(rat(3, 4)));
        let first = WeightSequence::new(vec![rat(1, 1), rat(0, 1)]).unwrap();
        assert_eq!(
            d_cut(&flag1, &flag0, &first, CutMode::Exact).unwrap().exact,
            d_cut_d(&flag1, &flag0, 1, CutMode::Exact).unwrap().exact
        );
    }

    #[test]
    fn unlabeled_examples() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let alphas = WeightSequence::geometric(2);
        let w = StepComplexon::random_exact(4, 2, 6, &mut rng);
        let p = w.apply_block_permutation(&[2, 0, 3, 1]).unwrap();
        let r = delta_cut(&w, &p, &alphas, &DeltaOptions::default()).unwrap();
        assert_eq!(r.upper.value, 0.0);
        assert!(r.exhaustive);

        let p = homog(&[rat(1, 3), rat(1, 2)]);
        let q = homog(&[rat(1, 2), rat(1, 2)]);
        let r = delta_cut(&p, &q, &alphas, &DeltaOptions::default()).unwrap();
        assert_eq!(r.upper.exact, Some(rat(1, 6) * rat(1, 2)));

        let k = SimplicialComplex::from_facets(4, [vec![1, 2, 3], vec![3, 4]]).unwrap();
        let kr = k.relabel(&[4, 2, 1, 3]).unwrap();
        let r = delta_cut(&StepComplexon::pixel(&k), &StepComplexon::pixel(&kr), &alphas, &DeltaOptions::default()).unwrap();
        assert_eq!(r.upper.value, 0.0);
    }

    #[test]
    fn complex_examples() {
        let alphas = WeightSequence::new(vec![rat(1, 1)]).unwrap();
        let opts = DeltaOptions::default();
        let e = edge();
        let empty = SimplicialComplex::new(2);
        assert_eq!(delta_cut_complexes(&e, &e, &alphas, 1, &opts).unwrap().upper.value, 0.0);
        let r = delta_cut_complexes(&e, &empty, &alphas, 1, &opts).unwrap();
        assert_eq!(r.upper.exact, Some(rat(1, 2)));
        let k = SimplicialComplex::from_facets(3, [vec![1, 2], vec![2, 3]]).unwrap();
        let kr = k.relabel(&[2, 3, 1]).unwrap();
        assert_eq!(delta_cut_complexes(&k, &kr, &alphas, 1, &opts).unwrap().upper.value, 0.0);
        // Different vertex counts go through the overlay.
        let r = delta_cut_complexes(&e, &SimplicialComplex::new(3), &alphas, 1, &opts).unwrap();
        assert!(r.upper.value > 0.0);
    }

    #[test]
    fn counting_bound_examples() {
        let alphas = WeightSequence::new(vec![rat(1, 1)]).unwrap();
        let p = homog(&[rat(1, 5)]);
        let q = homog(&[rat(7, 10)]);
        let pats = vec![edge()];
        assert_eq!(counting_lemma_lower_bound(&p, &p, &pats, &alphas).unwrap(), 0.0);
        let lb = counting_lemma_lower_bound(&p, &q, &pats, &alphas).unwrap();
        assert!((lb - 0.5).abs() < 1e-12);
    }

    #[test]
    fn sandwich_on_random_pairs() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(8);
        let alphas = WeightSequence::geometric(2);
        let pats = vec![
            edge(),
            SimplicialComplex::from_facets(3, [vec![1, 2], vec![2, 3]]).unwrap(),
            SimplicialComplex::from_facets(3, [vec![1, 2, 3]]).unwrap(),
        ];
        for _ in 0..10 {
            let u = StepComplexon::random_exact(2, 2, 4, &mut rng);
            let w = StepComplexon::random_exact(3, 2, 4, &mut rng);
            let r = delta_cut(&u, &w, &alphas, &DeltaOptions {
                patterns: pats.clone(),
                ..Default::default()
            })
            .unwrap();
            assert!(r.lower <= r.upper.value + 1e-12);
        }
    }

    #[test]
    fn disjoint_sandwich_for_complexons() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..5 {
            let u = StepComplexon::random_exact(3, 1, 4, &mut rng);
            let w = StepComplexon::random_exact(3, 1, 4, &mut rng);
            let full = d_cut_d(&u, &w, 1, CutMode::Exact).unwrap().exact.unwrap();
            let dis = disjoint_cut_sup(&u, &w, 1).unwrap().exact.unwrap();
            assert!(dis <= full);
            assert!(full <= dis * rat(4, 1));
        }
    }
}
