//! Homomorphism counts and densities for finite complexes, complexons and
//! hypergraphs.

use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use rayon::prelude::*;

use crate::complexon::{Complexon, Kernel, StepComplexon};
use crate::error::{invalid, Error, Result};
use crate::rational::{common_denominator, int, to_f64, Rational};
use crate::rng::rng_for;
use crate::simplicial::{subsets, Hypergraph, Simplex, SimplicialComplex};

/// Default cap on enumerated maps or block assignments.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    ExactCount,
    ExactStep,
    MonteCarlo,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::ExactCount => "exact-count",
            Method::ExactStep => "exact-step",
            Method::MonteCarlo => "monte-carlo",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DensityResult {
    pub value: f64,
    /// Present when every input was rational.
    pub exact: Option<Rational>,
    /// Present only for Monte Carlo estimates.
    pub std_error: Option<f64>,
    pub method: Method,
}

impl DensityResult {
    fn exact(value: Rational, method: Method) -> Self {
        Self {
            value: to_f64(&value),
            exact: Some(value),
            std_error: None,
            method,
        }
    }

    fn float(value: f64) -> Self {
        Self {
            value,
            exact: None,
            std_error: None,
            method: Method::ExactStep,
        }
    }
}

/// How to integrate over a complexon.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DensityMethod {
    /// Sum over block assignments; step and homogeneous complexons only.
    ExactStep { budget: u64 },
    MonteCarlo { samples: usize, seed: u64 },
}

impl Default for DensityMethod {
    fn default() -> Self {
        DensityMethod::ExactStep {
            budget: DEFAULT_BUDGET,
        }
    }
}

fn budget_check(base: usize, exp: usize, budget: u64, what: &str) -> Result<()> {
    let total = (base as f64).powi(exp as i32);
    if total > budget as f64 {
        return Err(Error::Budget(format!("{what}: {base}^{exp} exceeds {budget}")));
    }
    Ok(())
}

/// Simplices of `f` with at least two vertices, grouped by their largest vertex.
fn by_last_vertex(sets: impl Iterator<Item = Simplex>, k: usize) -> Vec<Vec<Simplex>> {
    let mut out = vec![Vec::new(); k + 1];
    for s in sets {
        out[*s.last().unwrap() as usize].push(s);
    }
    out
}

/// Number of maps `V(F) -> V(K)` sending every simplex of `F` onto a simplex
/// of `K` of the same dimension.
pub fn hom_count(f: &SimplicialComplex, k: &SimplicialComplex, budget: u64) -> Result<u128> {
    budget_check(k.n(), f.n(), budget, "homomorphism enumeration")?;
    let checks = by_last_vertex(f.iter().filter(|s| s.len() >= 2).cloned(), f.n());
    let mut phi = vec![0u32; f.n() + 1];
    Ok(extend_map(1, f.n(), k, &checks, &mut phi, false))
}

fn image(s: &[u32], phi: &[u32]) -> Option<Simplex> {
    let mut t: Simplex = s.iter().map(|&v| phi[v as usize]).collect();
    t.sort_unstable();
    let before = t.len();
    t.dedup();
    (t.len() == before).then_some(t)
}

fn extend_map(
    v: usize,
    n_f: usize,
    k: &SimplicialComplex,
    checks: &[Vec<Simplex>],
    phi: &mut Vec<u32>,
    injective: bool,
) -> u128 {
    if v > n_f {
        return 1;
    }
    let mut total = 0;
    for target in 1..=k.n() as u32 {
        if injective && phi[1..v].contains(&target) {
            continue;
        }
        phi[v] = target;
        let ok = checks[v].iter().all(|s| match image(s, phi) {
            Some(t) => k.contains(&t),
            None => false,
        });
        if ok {
            total += extend_map(v + 1, n_f, k, checks, phi, injective);
        }
    }
    total
}

/// Number of injective maps whose image induces exactly the image of `F`.
pub fn ind_count(f: &SimplicialComplex, k: &SimplicialComplex, budget: u64) -> Result<u128> {
    if f.n() > k.n() {
        return Ok(0);
    }
    budget_check(k.n(), f.n(), budget, "induced enumeration")?;
    let all: Vec<u32> = (1..=f.n() as u32).collect();
    let sets = subsets(&all, 2).into_iter();
    let checks = by_last_vertex(sets, f.n());
    let mut phi = vec![0u32; f.n() + 1];
    Ok(extend_induced(1, f, k, &checks, &mut phi))
}

fn extend_induced(
    v: usize,
    f: &SimplicialComplex,
    k: &SimplicialComplex,
    checks: &[Vec<Simplex>],
    phi: &mut Vec<u32>,
) -> u128 {
    if v > f.n() {
        return 1;
    }
    let mut total = 0;
    for target in 1..=k.n() as u32 {
        if phi[1..v].contains(&target) {
            continue;
        }
        phi[v] = target;
        let ok = checks[v]
            .iter()
            .all(|s| f.contains(s) == k.contains(&image(s, phi).unwrap()));
        if ok {
            total += extend_induced(v + 1, f, k, checks, phi);
        }
    }
    total
}

/// `hom(F, K) / vert(K)^vert(F)`.
pub fn t_hom(f: &SimplicialComplex, k: &SimplicialComplex) -> Result<DensityResult> {
    let count = hom_count(f, k, DEFAULT_BUDGET)?;
    let denom = num_traits::pow(BigInt::from(k.n()), f.n());
    Ok(DensityResult::exact(
        Rational::new(BigInt::from(count), denom),
        Method::ExactCount,
    ))
}

/// `ind(F, K) / P(vert(K), vert(F))`; 0 when `F` has more vertices than `K`.
pub fn t_ind_finite(f: &SimplicialComplex, k: &SimplicialComplex) -> Result<DensityResult> {
    let count = ind_count(f, k, DEFAULT_BUDGET)?;
    if f.n() > k.n() {
        return Ok(DensityResult::exact(Rational::zero(), Method::ExactCount));
    }
    let perms: BigInt = (0..f.n()).map(|i| BigInt::from(k.n() - i)).product();
    Ok(DensityResult::exact(Rational::new(BigInt::from(count), perms), Method::ExactCount))
}

/// One integrand factor: `W(x_S)`, or `1 - W(x_S)` when `complement`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    /// 0-based pattern vertices, sorted.
    pub vertices: Vec<usize>,
    pub complement: bool,
}

/// Integrand `prod_factors` over `[0,1]^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pattern {
    pub k: usize,
    pub factors: Vec<Factor>,
}

fn factor(s: &[u32], complement: bool) -> Factor {
    Factor {
        vertices: s.iter().map(|&v| v as usize - 1).collect(),
        complement,
    }
}

impl Pattern {
    /// Every simplex of `F` with at least two vertices.
    pub fn hom(f: &SimplicialComplex) -> Self {
        Self {
            k: f.n(),
            factors: f.iter().filter(|s| s.len() >= 2).map(|s| factor(s, false)).collect(),
        }
    }

    /// Simplices of `F`, plus a complemented factor per antifacet.
    pub fn induced(f: &SimplicialComplex) -> Self {
        let mut p = Self::hom(f);
        p.factors
            .extend(f.antifacets().iter().map(|s| factor(s, true)));
        p
    }

    /// Facets of `F` with at least two vertices.
    pub fn facets(f: &SimplicialComplex) -> Self {
        Self {
            k: f.n(),
            factors: f
                .facets()
                .iter()
                .filter(|s| s.len() >= 2)
                .map(|s| factor(s, false))
                .collect(),
        }
    }

    pub fn hypergraph(h: &Hypergraph) -> Self {
        Self {
            k: h.n(),
            factors: h.edges().map(|s| factor(s, false)).collect(),
        }
    }

    /// Integral of the pattern against `w`.
    pub fn density(&self, w: &Complexon, method: DensityMethod) -> Result<DensityResult> {
        match method {
            DensityMethod::ExactStep { budget } => match w {
                Complexon::Step(s) => self.exact_step(s, budget),
                Complexon::Homogeneous(h) => self.exact_step(&h.to_step(), budget),
                Complexon::Cech(_) => invalid("exact-step integration needs a stepfunction"),
            },
            DensityMethod::MonteCarlo { samples, seed } => Ok(self.monte_carlo(w, samples, seed)),
        }
    }

    /// Exact sum over block assignments. Rational inputs give a rational result.
    pub fn exact_step(&self, w: &StepComplexon, budget: u64) -> Result<DensityResult> {
        budget_check(w.m(), self.k, budget, "block assignments")?;
        let by_last = self.by_last_vertex();
        if !w.is_exact() {
            let widths: Vec<f64> = w.widths().iter().map(to_f64).collect();
            let eval = |f: &Factor, blocks: &[usize]| {
                let v = w.value_at(blocks);
                if f.complement {
                    1.0 - v
                } else {
                    v
                }
            };
            let mut assign = vec![0; self.k];
            let total = assignments(0, &by_last, &widths, &mut assign, 1.0, &eval);
            return Ok(DensityResult::float(total.clamp(0.0, 1.0)));
        }
        Ok(DensityResult::exact(self.exact_sum(w, &by_last), Method::ExactStep))
    }

    fn by_last_vertex(&self) -> Vec<Vec<&Factor>> {
        let mut out = vec![Vec::new(); self.k];
        for f in &self.factors {
            if let Some(&last) = f.vertices.last() {
                out[last].push(f);
            }
        }
        out
    }

    /// Scales values and widths to integers; runs in `i128` when the worst-case
    /// magnitude fits, otherwise in `BigInt`.
    fn exact_sum(&self, w: &StepComplexon, by_last: &[Vec<&Factor>]) -> Rational {
        let dims: Vec<usize> = {
            let mut d: Vec<usize> = self
                .factors
                .iter()
                .map(|f| f.vertices.len() - 1)
                .filter(|&d| d >= 1 && d <= w.max_dim())
                .collect();
            d.sort_unstable();
            d.dedup();
            d
        };
        let values = dims.iter().flat_map(|&d| w.exact_table(d).unwrap().iter());
        let l = common_denominator(values);
        let widths = w.widths();
        let m_den = common_denominator(widths.iter());
        let width_num: Vec<BigInt> = widths
            .iter()
            .map(|x| (x * Rational::from_integer(m_den.clone())).to_integer())
            .collect();
        let l_r = Rational::from_integer(l.clone());
        let scaled = |blocks: &[usize]| -> BigInt { (w.exact_at(blocks).unwrap() * &l_r).to_integer() };
        let nf = self.factors.len();
        let denom = num_traits::pow(l.clone(), nf) * num_traits::pow(m_den.clone(), self.k);
        let fits = denom.bits() < 120;
        let mut assign = vec![0; self.k];
        let numer: BigInt = if fits {
            let wn: Vec<i128> = width_num.iter().map(|x| x.to_i128().unwrap()).collect();
            let l128 = l.to_i128().unwrap();
            let eval = |f: &Factor, blocks: &[usize]| {
                let v = scaled(blocks).to_i128().unwrap();
                if f.complement {
                    l128 - v
                } else {
                    v
                }
            };
            BigInt::from(assignments(0, by_last, &wn, &mut assign, 1i128, &eval))
        } else {
            let eval = |f: &Factor, blocks: &[usize]| {
                let v = scaled(blocks);
                if f.complement {
                    &l - v
                } else {
                    v
                }
            };
            assignments(0, by_last, &width_num, &mut assign, BigInt::one(), &eval)
        };
        Rational::new(numer, denom)
    }

    /// Mean of the integrand over `samples` uniform points.
    pub fn monte_carlo<K: Kernel + ?Sized>(&self, w: &K, samples: usize, seed: u64) -> DensityResult {
        const BLOCK: usize = 4096;
        let blocks = samples.div_ceil(BLOCK);
        let sums: Vec<(f64, f64)> = (0..blocks)
            .into_par_iter()
            .map(|b| {
                let mut rng = rng_for(seed, b as u64);
                let count = BLOCK.min(samples - b * BLOCK);
                let mut x = vec![0.0; self.k];
                let mut sub = Vec::with_capacity(8);
                let (mut s, mut s2) = (0.0, 0.0);
                for _ in 0..count {
                    for xi in x.iter_mut() {
                        *xi = rng.gen::<f64>();
                    }
                    let mut prod = 1.0;
                    for f in &self.factors {
                        sub.clear();
                        sub.extend(f.vertices.iter().map(|&i| x[i]));
                        let v = w.value(&sub);
                        prod *= if f.complement { 1.0 - v } else { v };
                        if prod == 0.0 {
                            break;
                        }
                    }
                    s += prod;
                    s2 += prod * prod;
                }
                (s, s2)
            })
            .collect();
        let (s, s2) = sums.iter().fold((0.0, 0.0), |a, b| (a.0 + b.0, a.1 + b.1));
        let n = samples as f64;
        let mean = if samples == 0 { 0.0 } else { s / n };
        let var = if samples > 1 {
            ((s2 - n * mean * mean) / (n - 1.0)).max(0.0)
        } else {
            0.0
        };
        DensityResult {
            value: mean,
            exact: None,
            std_error: Some((var / n.max(1.0)).sqrt()),
            method: Method::MonteCarlo,
        }
    }
}

/// `sum_b prod_i width[b_i] * prod_factors value`, recursing over vertices and
/// closing each factor at its last vertex.
fn assignments<T, E>(
    v: usize,
    by_last: &[Vec<&Factor>],
    widths: &[T],
    assign: &mut Vec<usize>,
    acc: T,
    eval: &E,
) -> T
where
    T: Clone + Zero + PartialEq + Add<Output = T> + Mul<Output = T> + Sub<Output = T>,
    E: Fn(&Factor, &[usize]) -> T,
{
    if v == assign.len() {
        return acc;
    }
    let mut total = T::zero();
    let mut blocks = Vec::with_capacity(8);
    for b in 0..widths.len() {
        assign[v] = b;
        let mut a = acc.clone() * widths[b].clone();
        for f in &by_last[v] {
            if a.is_zero() {
                break;
            }
            blocks.clear();
            blocks.extend(f.vertices.iter().map(|&i| assign[i]));
            a = a * eval(f, &blocks);
        }
        if !a.is_zero() {
            total = total + assignments(v + 1, by_last, widths, assign, a, eval);
        }
    }
    total
}

/// `t(F, W)`: integral of `W` over every simplex of `F`.
pub fn t_hom_complexon(f: &SimplicialComplex, w: &Complexon, method: DensityMethod) -> Result<DensityResult> {
    Pattern::hom(f).density(w, method)
}

/// `t_ind(F, W)`: simplices weighted by `W`, antifacets by `1 - W`.
pub fn t_ind_complexon(f: &SimplicialComplex, w: &Complexon, method: DensityMethod) -> Result<DensityResult> {
    Pattern::induced(f).density(w, method)
}

/// Facet-product density of `F` against the faceted form of `W`.
pub fn t_hom_faceted(f: &SimplicialComplex, w: &Complexon, method: DensityMethod) -> Result<DensityResult> {
    Pattern::facets(f).density(&w.facet(), method)
}

/// `t(H, W)` for a hypergraph: one factor per edge, no closure.
pub fn t_hom_hypergraph(h: &Hypergraph, w: &Complexon, method: DensityMethod) -> Result<DensityResult> {
    Pattern::hypergraph(h).density(w, method)
}

/// `sum_{G subset of antifacets} (-1)^|G| t(F + G, W)`, exact-step only.
pub fn t_ind_by_inclusion_exclusion(f: &SimplicialComplex, w: &Complexon, budget: u64) -> Result<DensityResult> {
    let anti = f.antifacets();
    if anti.len() > 24 || (1u64 << anti.len()) > budget {
        return Err(Error::Budget(format!("2^{} inclusion-exclusion terms", anti.len())));
    }
    let facets = f.facets();
    let method = DensityMethod::ExactStep { budget };
    let mut exact = Some(Rational::zero());
    let mut float = 0.0;
    for pick in 0u64..(1 << anti.len()) {
        let mut gens: Vec<Simplex> = facets.clone();
        gens.extend((0..anti.len()).filter(|&i| pick >> i & 1 == 1).map(|i| anti[i].clone()));
        let fg = SimplicialComplex::from_facets(f.n(), gens)?;
        let term = t_hom_complexon(&fg, w, method)?;
        let sign = if pick.count_ones() % 2 == 0 { 1 } else { -1 };
        float += sign as f64 * term.value;
        exact = match (exact, term.exact) {
            (Some(acc), Some(t)) => Some(acc + int(sign) * t),
            _ => None,
        };
    }
    Ok(match exact {
        Some(e) => DensityResult::exact(e, Method::ExactStep),
        None => DensityResult::float(float),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexon::HomogeneousComplexon;
    use crate::rational::rat;
    use crate::simplicial::enumerate_complexes;

    fn homog(ps: &[Rational]) -> Complexon {
        HomogeneousComplexon::new(ps.to_vec()).unwrap().into()
    }

    fn exact(r: DensityResult) -> Rational {
        r.exact.unwrap()
    }

    const EXACT: DensityMethod = DensityMethod::ExactStep { budget: DEFAULT_BUDGET };

    #[test]
    fn finite_counts() {
        let edge = SimplicialComplex::complete(2, 1);
        let tri = SimplicialComplex::complete(3, 2);
        assert_eq!(hom_count(&edge, &edge, DEFAULT_BUDGET).unwrap(), 2);
        assert_eq!(hom_count(&edge, &tri, DEFAULT_BUDGET).unwrap(), 6);
        assert_eq!(exact(t_hom(&edge, &tri).unwrap()), rat(2, 3));
        assert_eq!(exact(t_hom(&SimplicialComplex::new(1), &tri).unwrap()), rat(1, 1));
        assert_eq!(ind_count(&edge, &tri, DEFAULT_BUDGET).unwrap(), 6);
        assert_eq!(exact(t_ind_finite(&edge, &tri).unwrap()), rat(1, 1));
        assert_eq!(ind_count(&SimplicialComplex::new(2), &tri, DEFAULT_BUDGET).unwrap(), 0);
        assert_eq!(exact(t_ind_finite(&edge, &edge).unwrap()), rat(1, 1));
        assert_eq!(ind_count(&tri, &edge, DEFAULT_BUDGET).unwrap(), 0);
        assert!(hom_count(&SimplicialComplex::new(30), &tri, DEFAULT_BUDGET).is_err());
    }

    #[test]
    fn automorphisms_are_counted() {
        for k in enumerate_complexes(3, 2).unwrap() {
            assert!(hom_count(&k, &k, DEFAULT_BUDGET).unwrap() >= 1);
            assert!(ind_count(&k, &k, DEFAULT_BUDGET).unwrap() >= 1);
        }
        let path = SimplicialComplex::from_facets(3, [[1, 2], [2, 3]]).unwrap();
        assert_eq!(ind_count(&path, &path, DEFAULT_BUDGET).unwrap(), 2);
    }

    #[test]
    fn complexon_closed_forms() {
        let tri = SimplicialComplex::complete(3, 2);
        let lm = homog(&[rat(1, 1), rat(1, 2)]);
        assert_eq!(exact(t_hom_complexon(&tri, &lm, EXACT).unwrap()), rat(1, 2));
        let flag = homog(&[rat(1, 2), rat(1, 1)]);
        assert_eq!(exact(t_hom_complexon(&tri, &flag, EXACT).unwrap()), rat(1, 8));
        assert_eq!(
            exact(t_hom_complexon(&SimplicialComplex::new(1), &flag, EXACT).unwrap()),
            rat(1, 1)
        );
        let two = SimplicialComplex::new(2);
        assert_eq!(exact(t_ind_complexon(&two, &flag, EXACT).unwrap()), rat(1, 2));
        assert_eq!(exact(t_ind_complexon(&tri, &flag, EXACT).unwrap()), rat(1, 8));
        let tet = SimplicialComplex::complete(4, 3);
        assert_eq!(exact(t_ind_complexon(&tet, &flag, EXACT).unwrap()), rat(0, 1));
    }

    #[test]
    fn inclusion_exclusion_examples() {
        let flag = homog(&[rat(3, 10), rat(1, 1)]);
        let two = SimplicialComplex::new(2);
        assert_eq!(exact(t_ind_by_inclusion_exclusion(&two, &flag, DEFAULT_BUDGET).unwrap()), rat(7, 10));
        let hollow = SimplicialComplex::from_facets(3, [[1, 2], [1, 3], [2, 3]]).unwrap();
        assert_eq!(exact(t_ind_by_inclusion_exclusion(&hollow, &flag, DEFAULT_BUDGET).unwrap()), rat(0, 1));
        assert_eq!(exact(t_ind_complexon(&hollow, &flag, EXACT).unwrap()), rat(0, 1));
        let tri = SimplicialComplex::complete(3, 2);
        assert_eq!(
            t_ind_by_inclusion_exclusion(&tri, &flag, DEFAULT_BUDGET).unwrap().exact,
            t_hom_complexon(&tri, &flag, EXACT).unwrap().exact
        );
    }

    #[test]
    fn hypergraph_densities() {
        let w = homog(&[rat(0, 1), rat(1, 1)]);
        let triple = Hypergraph::from_edges(3, [[1, 2, 3]]).unwrap();
        assert_eq!(exact(t_hom_hypergraph(&triple, &w, EXACT).unwrap()), rat(1, 1));
        assert_eq!(exact(t_hom_hypergraph(&Hypergraph::new(3), &w, EXACT).unwrap()), rat(1, 1));
        let pair = Hypergraph::from_edges(2, [[1, 2]]).unwrap();
        let h = homog(&[rat(2, 5)]);
        assert_eq!(exact(t_hom_hypergraph(&pair, &h, EXACT).unwrap()), rat(2, 5));
    }

    #[test]
    fn pixel_density_matches_count() {
        let k = SimplicialComplex::from_facets(4, [vec![1, 2, 3], vec![3, 4]]).unwrap();
        let w: Complexon = StepComplexon::pixel(&k).into();
        for f in enumerate_complexes(3, 2).unwrap() {
            assert_eq!(
                t_hom(&f, &k).unwrap().exact,
                t_hom_complexon(&f, &w, EXACT).unwrap().exact
            );
        }
    }

    #[test]
    fn float_and_big_paths_agree_with_exact() {
        let w = StepComplexon::from_fn_exact(2, 2, |d, c| rat((1 + c.iter().sum::<usize>() + d) as i64, 7)).unwrap();
        let tri = SimplicialComplex::complete(3, 2);
        let e = t_hom_complexon(&tri, &w.clone().into(), EXACT).unwrap();
        let f = t_hom_complexon(&tri, &w.to_float().into(), EXACT).unwrap();
        assert!((e.value - f.value).abs() < 1e-12);
        assert!(f.exact.is_none());
        // Large denominators force the BigInt path.
        let big = StepComplexon::from_fn_exact(2, 2, |_, c| {
            Rational::new(BigInt::from(1 + c[0]), BigInt::from(1u64 << 40))
        })
        .unwrap();
        let ex = t_hom_complexon(&tri, &big.clone().into(), EXACT).unwrap().exact.unwrap();
        let fl = t_hom_complexon(&tri, &big.to_float().into(), EXACT).unwrap().value;
        assert!((to_f64(&ex) - fl).abs() <= 1e-12 * fl.abs().max(1e-300));
    }

    #[test]
    fn monte_carlo_is_close_and_reproducible() {
        let flag = homog(&[rat(1, 2), rat(1, 1)]);
        let tri = SimplicialComplex::complete(3, 2);
        let mc = DensityMethod::MonteCarlo { samples: 20_000, seed: 4 };
        let a = t_hom_complexon(&tri, &flag, mc).unwrap();
        let b = t_hom_complexon(&tri, &flag, mc).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.value, 0.125);
        let step: Complexon = StepComplexon::from_fn_exact(2, 2, |_, c| rat(1 + c[0] as i64, 3)).unwrap().into();
        let e = t_hom_complexon(&tri, &step, EXACT).unwrap().value;
        let m = t_hom_complexon(&tri, &step, mc).unwrap();
        assert!((m.value - e).abs() <= 4.0 * m.std_error.unwrap());
        assert!(t_hom_complexon(&tri, &crate::complexon::CechCurveComplexon::bouquet(0.5, 2).unwrap().into(), EXACT).is_err());
    }
}
