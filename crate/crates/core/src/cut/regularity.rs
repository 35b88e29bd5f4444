use num_traits::{One, Zero};

use super::distance::difference_array;
use super::Certificate;
use crate::complexon::{Complexon, Partition, StepComplexon};
use crate::error::{invalid, Result};
use crate::rational::{int, Rational};

#[derive(Clone, Debug)]
pub struct RegularityOptions {
    /// Block cap for the partition.
    pub max_blocks: usize,
    /// Stop once every measured deviation is at most this.
    pub epsilon: f64,
    /// Dimensions `1..=dim` are checked.
    pub dim: usize,
    pub restarts: usize,
    pub seed: u64,
    /// Grid used to discretise non-step complexons.
    pub grid: usize,
    pub max_rounds: usize,
}

impl Default for RegularityOptions {
    fn default() -> Self {
        Self {
            max_blocks: 8,
            epsilon: 0.0,
            dim: 1,
            restarts: 10,
            seed: 0,
            grid: 64,
            max_rounds: 64,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RegularityResult {
    pub partition: Partition,
    /// Class of each block of `base`.
    pub labels: Vec<usize>,
    /// The complexon that was partitioned (the input, or its grid form).
    pub base: StepComplexon,
    /// Projection of `base`, on the blocks of `base`.
    pub projection: StepComplexon,
    /// Heuristic `d_cut_j(base, projection)` for `j = 1..=dim`.
    pub measured: Vec<f64>,
    /// `sqrt((dim + 1) / log2(#classes))`; infinite for one class.
    pub bound: f64,
    pub rounds: usize,
}

fn relabel(labels: &mut [usize]) -> usize {
    let mut map: Vec<Option<usize>> = vec![None; labels.len() + 1];
    let mut next = 0;
    for l in labels.iter_mut() {
        *l = *map[*l].get_or_insert_with(|| {
            next += 1;
            next - 1
        });
    }
    next
}

/// Greedy refinement: project, find a deviating set tuple per dimension with
/// the heuristic, split classes along those sets, repeat.
pub fn weak_regularity_partition(w: &Complexon, opts: &RegularityOptions) -> Result<RegularityResult> {
    if opts.max_blocks == 0 || opts.dim == 0 {
        return invalid("need at least one block and one dimension");
    }
    let base = match w {
        Complexon::Step(s) => s.clone(),
        other => other.to_step(opts.grid)?,
    };
    let m = base.m();
    let mut labels = vec![0usize; m];
    let mut k = 1;
    let mut rounds = 0;
    let measure = |labels: &[usize], seed: u64| -> Result<(StepComplexon, Vec<f64>, Vec<Vec<Vec<usize>>>)> {
        let proj = base.project_blocks(labels)?;
        let mut values = Vec::new();
        let mut sets = Vec::new();
        for j in 1..=opts.dim {
            let v = difference_array(&base, &proj, j)?.cut_norm_heuristic(opts.restarts, seed);
            values.push(v.value);
            if let Certificate::Sets(s) = v.certificate {
                sets.push(s);
            }
        }
        Ok((proj, values, sets))
    };
    let (mut proj, mut measured, mut sets) = measure(&labels, opts.seed)?;
    while rounds < opts.max_rounds && k < opts.max_blocks && measured.iter().any(|&v| v > opts.epsilon) {
        rounds += 1;
        let before = k;
        'split: for tuple in &sets {
            for s in tuple {
                let mut inside = vec![false; m];
                s.iter().for_each(|&b| inside[b] = true);
                for c in 0..k {
                    if k >= opts.max_blocks {
                        break 'split;
                    }
                    let members: Vec<usize> = (0..m).filter(|&b| labels[b] == c).collect();
                    let n_in = members.iter().filter(|&&b| inside[b]).count();
                    if n_in > 0 && n_in < members.len() {
                        for &b in &members {
                            if inside[b] {
                                labels[b] = k;
                            }
                        }
                        k += 1;
                    }
                }
            }
        }
        if k == before {
            break;
        }
        k = relabel(&mut labels);
        (proj, measured, sets) = measure(&labels, opts.seed.wrapping_add(rounds as u64))?;
    }
    let partition = Partition::from_block_labels(&base.widths(), &labels)?;
    let bound = if k >= 2 {
        ((opts.dim as f64 + 1.0) / (k as f64).log2()).sqrt()
    } else {
        f64::INFINITY
    };
    Ok(RegularityResult {
        partition,
        labels,
        base,
        projection: proj,
        measured,
        bound,
        rounds,
    })
}

/// Cuts `measure` off the front of `pool`, returning the removed intervals.
fn take_front(pool: &mut Vec<(Rational, Rational)>, mut measure: Rational) -> Vec<(Rational, Rational)> {
    let mut out = Vec::new();
    while measure > Rational::zero() {
        let (a, b) = pool.remove(0);
        let len = &b - &a;
        if len <= measure {
            measure -= &len;
            out.push((a, b));
        } else {
            let cut = &a + &measure;
            out.push((a, cut.clone()));
            pool.insert(0, (cut, b));
            measure = Rational::zero();
        }
    }
    merge(out)
}

fn merge(mut ivs: Vec<(Rational, Rational)>) -> Vec<(Rational, Rational)> {
    ivs.sort();
    let mut out: Vec<(Rational, Rational)> = Vec::with_capacity(ivs.len());
    for (a, b) in ivs {
        match out.last_mut() {
            Some(last) if last.1 == a => last.1 = b,
            _ => out.push((a, b)),
        }
    }
    out
}

/// An `n`-class equipartition that agrees with `p` except on a set of
/// measure at most `k / n` (`k` classes): each class keeps `floor(n mu)`
/// whole pieces and the remainders are pooled and re-cut.
pub fn equipartition_adjust(p: &Partition, n: usize) -> Result<Partition> {
    if n == 0 {
        return invalid("target class count must be positive");
    }
    let piece = Rational::one() / int(n as i64);
    let n_r = int(n as i64);
    let mut classes = Vec::with_capacity(n);
    let mut leftovers = Vec::new();
    for c in 0..p.len() {
        let mut pool = merge(p.classes()[c].clone());
        let whole = (p.measure(c) * &n_r).floor().to_integer();
        let whole: usize = whole.try_into().unwrap_or(0);
        for _ in 0..whole {
            classes.push(take_front(&mut pool, piece.clone()));
        }
        leftovers.extend(pool);
    }
    let mut leftovers = merge(leftovers);
    while classes.len() < n {
        classes.push(take_front(&mut leftovers, piece.clone()));
    }
    Partition::new(classes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexon::HomogeneousComplexon;
    use crate::cut::{d_cut_d, CutMode};
    use crate::rational::rat;
    use rand::SeedableRng;

    #[test]
    fn homogeneous_needs_one_class() {
        let w = Complexon::Homogeneous(HomogeneousComplexon::new(vec![rat(1, 2)]).unwrap());
        let r = weak_regularity_partition(&w, &RegularityOptions::default()).unwrap();
        assert_eq!(r.partition.len(), 1);
        assert_eq!(r.measured, vec![0.0]);
    }

    #[test]
    fn step_input_is_recovered() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        for _ in 0..5 {
            let s = StepComplexon::random_exact(4, 2, 8, &mut rng);
            let opts = RegularityOptions {
                max_blocks: 4,
                dim: 2,
                ..Default::default()
            };
            let r = weak_regularity_partition(&Complexon::Step(s.clone()), &opts).unwrap();
            for d in 1..=2 {
                assert_eq!(d_cut_d(&s, &r.projection, d, CutMode::Exact).unwrap().value, 0.0);
            }
        }
    }

    #[test]
    fn equipartition_examples() {
        let p = Partition::new(vec![
            vec![(rat(0, 1), rat(3, 10))],
            vec![(rat(3, 10), rat(1, 1))],
        ])
        .unwrap();
        let q = equipartition_adjust(&p, 10).unwrap();
        assert!(q.is_equipartition());
        assert_eq!(q.len(), 10);
        for c in 0..3 {
            let ivs = &q.classes()[c];
            assert!(ivs.iter().all(|(_, b)| *b <= rat(3, 10)));
        }
        let e = Partition::equal(5);
        assert_eq!(equipartition_adjust(&e, 5).unwrap(), e);

        let odd = Partition::new(vec![
            vec![(rat(0, 1), rat(1, 7)), (rat(5, 7), rat(1, 1))],
            vec![(rat(1, 7), rat(5, 7))],
        ])
        .unwrap();
        let q = equipartition_adjust(&odd, 3).unwrap();
        assert!(q.is_equipartition());
        assert_eq!(q.len(), 3);
    }
}
