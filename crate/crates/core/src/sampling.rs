//! Random complexes and hypergraphs drawn from complexons.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use itertools::Itertools;
use rand::Rng;

use crate::complexon::{Complexon, HomogeneousComplexon, Kernel};
use crate::error::{invalid, Error, Result};
use crate::rational::Rational;
use crate::rng::rng_for;
use crate::simplicial::{boundary, Hypergraph, Simplex, SimplicialComplex, WeightedComplex};

/// Source of inclusion probabilities for sets of size at least two.
pub trait WeightOracle {
    fn n(&self) -> usize;
    fn max_dim(&self) -> usize;
    /// Weight of a sorted vertex set (1-based).
    fn weight(&self, s: &[u32]) -> f64;
}

impl WeightOracle for WeightedComplex {
    fn n(&self) -> usize {
        WeightedComplex::n(self)
    }

    fn max_dim(&self) -> usize {
        WeightedComplex::max_dim(self)
    }

    fn weight(&self, s: &[u32]) -> f64 {
        WeightedComplex::weight(self, s)
    }
}

/// Weights `W(x_sigma)` evaluated on demand.
pub struct LatentWeights<'a, K: Kernel + ?Sized> {
    kernel: &'a K,
    latents: &'a [f64],
}

impl<'a, K: Kernel + ?Sized> LatentWeights<'a, K> {
    pub fn new(kernel: &'a K, latents: &'a [f64]) -> Result<Self> {
        check_latents(latents)?;
        Ok(Self { kernel, latents })
    }
}

impl<K: Kernel + ?Sized> WeightOracle for LatentWeights<'_, K> {
    fn n(&self) -> usize {
        self.latents.len()
    }

    fn max_dim(&self) -> usize {
        self.kernel.max_dim()
    }

    fn weight(&self, s: &[u32]) -> f64 {
        let x: Vec<f64> = s.iter().map(|&v| self.latents[v as usize - 1]).collect();
        self.kernel.value(&x)
    }
}

fn check_latents(latents: &[f64]) -> Result<()> {
    match latents.iter().find(|x| !(0.0..=1.0).contains(*x)) {
        Some(&bad) => Err(Error::CoordinateOutOfRange(bad)),
        None => Ok(()),
    }
}

/// Materialises the weighted complex `W[x_1..x_n]`.
pub fn weighted_from_points<K: Kernel + ?Sized>(w: &K, latents: &[f64]) -> Result<WeightedComplex> {
    let oracle = LatentWeights::new(w, latents)?;
    let n = latents.len();
    let top = w.max_dim().min(n.saturating_sub(1));
    let mut out = WeightedComplex::new(n, w.max_dim());
    for size in 2..=top + 1 {
        for s in (1..=n as u32).combinations(size) {
            out.set(&s, oracle.weight(&s))?;
        }
    }
    Ok(out)
}

/// Inductive inclusion: in dimension `d = 1, 2, ...` every set whose facets
/// are all present is kept with probability equal to its weight. Candidates
/// are visited in lexicographic order, one uniform draw each.
pub fn sample_from_weighted<O: WeightOracle + ?Sized>(h: &O, seed: u64) -> SimplicialComplex {
    let n = h.n();
    let mut simplices: BTreeSet<Simplex> = (1..=n as u32).map(|v| Simplex::from_slice(&[v])).collect();
    let mut level: Vec<Simplex> = simplices.iter().cloned().collect();
    let top = h.max_dim().min(n.saturating_sub(1));
    for d in 1..=top {
        let mut rng = rng_for(seed, d as u64);
        let mut next = Vec::new();
        for s in &level {
            let last = *s.last().unwrap();
            for v in last + 1..=n as u32 {
                let mut t = s.clone();
                t.push(v);
                if !boundary(&t).all(|f| simplices.contains(&f)) {
                    continue;
                }
                let u: f64 = rng.gen();
                if u < h.weight(&t) {
                    next.push(t);
                }
            }
        }
        simplices.extend(next.iter().cloned());
        level = next;
        if level.is_empty() {
            break;
        }
    }
    SimplicialComplex::from_closed_set(n, simplices)
}

/// Uniform latent coordinates for stream `seed`.
pub fn draw_latents(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = rng_for(seed, 0);
    (0..n).map(|_| rng.gen()).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub enum Sample {
    Complex(SimplicialComplex),
    Hypergraph(Hypergraph),
}

/// A sample with the latents and seed that produced it.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleRecord {
    pub sample: Sample,
    pub latents: Vec<f64>,
    pub seed: u64,
}

impl SampleRecord {
    pub fn complex(&self) -> Option<&SimplicialComplex> {
        match &self.sample {
            Sample::Complex(k) => Some(k),
            Sample::Hypergraph(_) => None,
        }
    }

    pub fn hypergraph(&self) -> Option<&Hypergraph> {
        match &self.sample {
            Sample::Hypergraph(h) => Some(h),
            Sample::Complex(_) => None,
        }
    }

    /// Facet or edge list followed by `latents:` and `seed:` lines.
    pub fn to_text(&self) -> String {
        let mut out = match &self.sample {
            Sample::Complex(k) => k.to_text(),
            Sample::Hypergraph(h) => h.to_text(),
        };
        writeln!(out, "latents: {}", self.latents.iter().join(" ")).unwrap();
        writeln!(out, "seed: {}", self.seed).unwrap();
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut body = String::new();
        let mut latents = None;
        let mut seed = None;
        for (i, line) in text.lines().enumerate() {
            let perr = |m: String| Error::Parse { line: i + 1, message: m };
            if let Some(rest) = line.strip_prefix("latents:") {
                latents = Some(
                    rest.split_whitespace()
                        .map(|t| t.parse::<f64>().map_err(|e| perr(e.to_string())))
                        .collect::<Result<Vec<_>>>()?,
                );
            } else if let Some(rest) = line.strip_prefix("seed:") {
                seed = Some(rest.trim().parse::<u64>().map_err(|e| perr(e.to_string()))?);
            } else {
                body.push_str(line);
                body.push('\n');
            }
        }
        let sample = if body.trim_start().starts_with("hyper") {
            Sample::Hypergraph(Hypergraph::from_text(&body)?)
        } else {
            Sample::Complex(SimplicialComplex::from_text(&body)?)
        };
        let missing = |what: &str| Error::Parse {
            line: text.lines().count(),
            message: format!("missing `{what}` line"),
        };
        Ok(Self {
            sample,
            latents: latents.ok_or_else(|| missing("latents:"))?,
            seed: seed.ok_or_else(|| missing("seed:"))?,
        })
    }
}

/// `K(n, W)`: latents, then inductive inclusion up to dimension `min(D, n - 1)`.
pub fn sample_complex<K: Kernel + ?Sized>(n: usize, w: &K, seed: u64) -> Result<SampleRecord> {
    if n == 0 {
        return invalid("need at least one vertex");
    }
    let latents = draw_latents(n, seed);
    let k = sample_from_weighted(&LatentWeights::new(w, &latents)?, seed);
    Ok(SampleRecord {
        sample: Sample::Complex(k),
        latents,
        seed,
    })
}

/// `H(n, W)`: every set of size `2..=D+1` kept independently, no closure.
pub fn sample_hypergraph<K: Kernel + ?Sized>(n: usize, w: &K, seed: u64) -> Result<SampleRecord> {
    if n == 0 {
        return invalid("need at least one vertex");
    }
    let latents = draw_latents(n, seed);
    let oracle = LatentWeights::new(w, &latents)?;
    let mut h = Hypergraph::new(n);
    for size in 2..=(w.max_dim() + 1).min(n) {
        let mut rng = rng_for(seed, size as u64 - 1);
        for s in (1..=n as u32).combinations(size) {
            let u: f64 = rng.gen();
            if u < oracle.weight(&s) {
                h.insert_sorted(Simplex::from_vec(s));
            }
        }
    }
    Ok(SampleRecord {
        sample: Sample::Hypergraph(h),
        latents,
        seed,
    })
}

fn homogeneous(probs: Vec<Rational>) -> Result<Complexon> {
    Ok(Complexon::Homogeneous(HomogeneousComplexon::new(probs)?))
}

/// Linial-Meshulam: 1 below dimension `d`, `p` at `d`, 0 above up to `D`.
pub fn linial_meshulam(d: usize, p: Rational, max_dim: usize) -> Result<Complexon> {
    if d == 0 || d > max_dim {
        return invalid(format!("dimension {d} outside 1..={max_dim}"));
    }
    let probs = (1..=max_dim)
        .map(|j| match j.cmp(&d) {
            std::cmp::Ordering::Less => Rational::from_integer(1.into()),
            std::cmp::Ordering::Equal => p.clone(),
            std::cmp::Ordering::Greater => Rational::from_integer(0.into()),
        })
        .collect();
    homogeneous(probs)
}

/// Random flag complex: `p` on edges, 1 above.
pub fn flag(p: Rational, max_dim: usize) -> Result<Complexon> {
    if max_dim == 0 {
        return invalid("truncation must be at least 1");
    }
    let mut probs = vec![p];
    probs.resize(max_dim, Rational::from_integer(1.into()));
    homogeneous(probs)
}

/// Multiparameter model: `p_j` in dimension `j`.
pub fn costa_farber(probs: Vec<Rational>) -> Result<Complexon> {
    homogeneous(probs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexon::StepComplexon;
    use crate::homomorphism::{t_hom_complexon, DensityMethod};
    use crate::rational::rat;
    use crate::simplicial::simplex;

    #[test]
    fn weighted_examples() {
        let w = costa_farber(vec![rat(3, 10)]).unwrap();
        let h = weighted_from_points(&w, &[0.1, 0.9]).unwrap();
        assert_eq!(h.weight(&[1, 2]), 0.3);
        assert_eq!(weighted_from_points(&w, &[0.4]).unwrap().stored().count(), 0);
        assert!(weighted_from_points(&w, &[0.4, 1.5]).is_err());

        let k = SimplicialComplex::from_facets(3, [vec![1, 2]]).unwrap();
        let px = StepComplexon::pixel(&k);
        // Sample vertex i sits in block perm[i], so it plays vertex perm[i] + 1 of K.
        let perm = [2usize, 0, 1];
        let latents: Vec<f64> = perm.iter().map(|&b| (b as f64 + 0.5) / 3.0).collect();
        let h = weighted_from_points(&px, &latents).unwrap();
        for s in [[1u32, 2], [1, 3], [2, 3]] {
            let orig = simplex(&s.iter().map(|&v| perm[v as usize - 1] as u32 + 1).collect::<Vec<_>>());
            assert_eq!(h.weight(&s), if k.contains(&orig) { 1.0 } else { 0.0 });
        }
    }

    #[test]
    fn degenerate_weights() {
        let mut full = WeightedComplex::new(5, 2);
        let k = sample_from_weighted(&full, 1);
        assert_eq!(k, SimplicialComplex::complete(5, 2));
        for s in (1..=5u32).combinations(2).chain((1..=5u32).combinations(3)) {
            full.set(&s, 0.0).unwrap();
        }
        assert_eq!(sample_from_weighted(&full, 1), SimplicialComplex::new(5));
    }

    #[test]
    fn triangle_fill_rate() {
        let mut h = WeightedComplex::new(20, 2);
        for s in (1..=20u32).combinations(3) {
            h.set(&s, 0.5).unwrap();
        }
        let mut filled = 0usize;
        let trials = 200;
        for t in 0..trials {
            filled += sample_from_weighted(&h, t).count_of_dim(2);
        }
        let total = (trials as usize * 1140) as f64;
        let rate = filled as f64 / total;
        let se = (0.25 / total).sqrt();
        assert!((rate - 0.5).abs() < 4.0 * se, "{rate}");
    }

    #[test]
    fn complex_samples() {
        let w = flag(rat(1, 2), 2).unwrap();
        let a = sample_complex(10, &w, 7).unwrap();
        assert_eq!(a, sample_complex(10, &w, 7).unwrap());
        let k = a.complex().unwrap();
        assert!(k.iter().all(|s| s.len() < 2 || boundary(s).all(|f| k.contains(&f))));
        let ones = costa_farber(vec![rat(1, 1), rat(1, 1)]).unwrap();
        assert_eq!(sample_complex(6, &ones, 3).unwrap().complex().unwrap(), &SimplicialComplex::complete(6, 2));
        let back = SampleRecord::from_text(&a.to_text()).unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn hypergraph_samples() {
        let w1 = costa_farber(vec![rat(0, 1), rat(1, 1)]).unwrap();
        let r = sample_hypergraph(8, &w1, 2).unwrap();
        let h = r.hypergraph().unwrap();
        assert_eq!(h.count_of_size(2), 0);
        assert_eq!(h.count_of_size(3), 56);
        assert_eq!(h.lower_closure().count_of_dim(1), 0);
        let zero = costa_farber(vec![rat(0, 1)]).unwrap();
        assert!(sample_hypergraph(8, &zero, 2).unwrap().hypergraph().unwrap().is_empty());
        assert_eq!(SampleRecord::from_text(&r.to_text()).unwrap(), r);
    }

    #[test]
    fn zoo() {
        let lm = linial_meshulam(2, rat(1, 3), 2).unwrap();
        let tri = SimplicialComplex::from_facets(3, [vec![1, 2, 3]]).unwrap();
        let t = t_hom_complexon(&tri, &lm, DensityMethod::default()).unwrap();
        assert_eq!(t.exact, Some(rat(1, 3)));
        assert_eq!(flag(rat(1, 4), 3).unwrap(), costa_farber(vec![rat(1, 4), rat(1, 1), rat(1, 1)]).unwrap());
        assert!(linial_meshulam(3, rat(1, 2), 2).is_err());
        assert!(flag(rat(3, 2), 2).is_err());
    }
}
