//! Cut norms of weighted multidimensional arrays and cut distances between
//! stepfunction complexons.

mod distance;
mod regularity;

use std::ops::{Add, Sub};

use nalgebra::{DMatrix, SymmetricEigen};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use rayon::prelude::*;

pub use distance::{
    counting_lemma_lower_bound, d_cut, d_cut_d, delta_cut, delta_cut_complexes, difference_array, disjoint_cut_sup, CutMode,
    CutSum,
    DeltaOptions, DeltaResult,
};
pub use regularity::{equipartition_adjust, weak_regularity_partition, RegularityOptions, RegularityResult};

use crate::error::{invalid, Error, Result};
use crate::rational::{common_denominator, in_unit_interval, int, to_f64, Rational};
use crate::rng::rng_for;

/// Default exact-search guard: at most `2^26` subset tuples.
pub const EXACT_GUARD_BITS: usize = 26;

#[derive(Clone, Debug, PartialEq)]
enum Entries {
    Exact(Vec<Rational>),
    Float(Vec<f64>),
}

/// Real array on `X_1 x ... x X_r` with a probability weight on each axis.
/// Storage is row-major, last axis fastest.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiArray {
    shape: Vec<usize>,
    entries: Entries,
    weights: Vec<Vec<Rational>>,
}

fn uniform_weights(shape: &[usize]) -> Vec<Vec<Rational>> {
    shape
        .iter()
        .map(|&n| vec![Rational::one() / int(n as i64); n])
        .collect()
}

impl MultiArray {
    pub fn from_f64(shape: Vec<usize>, data: Vec<f64>) -> Result<Self> {
        Self::check_shape(&shape, data.len())?;
        if let Some(bad) = data.iter().find(|x| !x.is_finite()) {
            return invalid(format!("non-finite entry {bad}"));
        }
        Ok(Self {
            weights: uniform_weights(&shape),
            shape,
            entries: Entries::Float(data),
        })
    }

    pub fn from_rational(shape: Vec<usize>, data: Vec<Rational>) -> Result<Self> {
        Self::check_shape(&shape, data.len())?;
        Ok(Self {
            weights: uniform_weights(&shape),
            shape,
            entries: Entries::Exact(data),
        })
    }

    fn check_shape(shape: &[usize], len: usize) -> Result<()> {
        if shape.is_empty() || shape.contains(&0) {
            return invalid("every axis needs at least one index");
        }
        if shape.iter().product::<usize>() != len {
            return invalid(format!("shape {shape:?} does not match {len} entries"));
        }
        Ok(())
    }

    /// Replaces the uniform axis weights. Each axis must be positive and sum to 1.
    pub fn with_weights(mut self, weights: Vec<Vec<Rational>>) -> Result<Self> {
        if weights.len() != self.shape.len() || weights.iter().zip(&self.shape).any(|(w, &n)| w.len() != n) {
            return invalid("one weight per index on every axis required");
        }
        for w in &weights {
            if w.iter().any(|x| !x.is_positive() || !in_unit_interval(x))
                || w.iter().fold(Rational::zero(), |a, b| a + b) != Rational::one()
            {
                return invalid("axis weights must be positive and sum to 1");
            }
        }
        self.weights = weights;
        Ok(self)
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn arity(&self) -> usize {
        self.shape.len()
    }

    pub fn len(&self) -> usize {
        self.shape.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.entries, Entries::Exact(_))
    }

    pub fn weights(&self) -> &[Vec<Rational>] {
        &self.weights
    }

    pub fn get(&self, index: &[usize]) -> f64 {
        let flat = self.flat(index);
        match &self.entries {
            Entries::Exact(v) => to_f64(&v[flat]),
            Entries::Float(v) => v[flat],
        }
    }

    fn flat(&self, index: &[usize]) -> usize {
        index.iter().zip(&self.shape).fold(0, |acc, (&i, &n)| acc * n + i)
    }

    pub fn neg(&self) -> Self {
        let entries = match &self.entries {
            Entries::Exact(v) => Entries::Exact(v.iter().map(|x| -x).collect()),
            Entries::Float(v) => Entries::Float(v.iter().map(|x| -x).collect()),
        };
        Self {
            entries,
            ..self.clone()
        }
    }

    fn float_weighted(&self) -> Vec<f64> {
        let w: Vec<Vec<f64>> = self.weights.iter().map(|a| a.iter().map(to_f64).collect()).collect();
        let mut out = Vec::with_capacity(self.len());
        let mut idx = vec![0usize; self.arity()];
        for flat in 0..self.len() {
            let a = match &self.entries {
                Entries::Exact(v) => to_f64(&v[flat]),
                Entries::Float(v) => v[flat],
            };
            out.push(idx.iter().enumerate().fold(a, |acc, (ax, &i)| acc * w[ax][i]));
            bump(&mut idx, &self.shape);
        }
        out
    }

    /// Integer form of the measure-weighted entries over a common denominator.
    fn scaled(&self) -> Scaled {
        match &self.entries {
            Entries::Float(_) => Scaled::Float(self.float_weighted()),
            Entries::Exact(v) => {
                let la = common_denominator(v.iter());
                let axis_den: Vec<BigInt> = self.weights.iter().map(|w| common_denominator(w.iter())).collect();
                let axis_num: Vec<Vec<BigInt>> = self
                    .weights
                    .iter()
                    .zip(&axis_den)
                    .map(|(w, d)| {
                        let d = Rational::from_integer(d.clone());
                        w.iter().map(|x| (x * &d).to_integer()).collect()
                    })
                    .collect();
                let la_r = Rational::from_integer(la.clone());
                let mut idx = vec![0usize; self.arity()];
                let mut t = Vec::with_capacity(v.len());
                for a in v {
                    let base = (a * &la_r).to_integer();
                    t.push(idx.iter().enumerate().fold(base, |acc, (ax, &i)| acc * &axis_num[ax][i]));
                    bump(&mut idx, &self.shape);
                }
                let denom = axis_den.iter().fold(la, |acc, d| acc * d);
                let total: BigInt = t.iter().map(|x| x.abs()).sum();
                if total.bits() < 126 {
                    Scaled::Small(t.iter().map(|x| x.to_i128().unwrap()).collect(), denom)
                } else {
                    Scaled::Big(t, denom)
                }
            }
        }
    }

    /// Signed weighted sum over a product of index sets, as float and, for
    /// exact arrays, as a rational.
    pub fn evaluate_sets(&self, sets: &[Vec<usize>]) -> (f64, Option<Rational>) {
        match self.scaled() {
            Scaled::Small(t, d) => {
                let s = sum_over(&self.shape, &t, sets);
                let r = Rational::new(BigInt::from(s), d);
                (to_f64(&r), Some(r))
            }
            Scaled::Big(t, d) => {
                let s = sum_over(&self.shape, &t, sets);
                let r = Rational::new(s, d);
                (to_f64(&r), Some(r))
            }
            Scaled::Float(t) => (sum_over(&self.shape, &t, sets), None),
        }
    }

    /// Exact cut norm by exhaustive search over subset tuples.
    pub fn cut_norm_exact(&self) -> Result<CutValue> {
        self.cut_norm_exact_guarded(EXACT_GUARD_BITS)
    }

    pub fn cut_norm_exact_guarded(&self, guard_bits: usize) -> Result<CutValue> {
        self.exact_impl(false, guard_bits)
    }

    /// `max_S sum_S A` with empty sets allowed, so never negative.
    pub fn one_sided_cut_norm(&self) -> Result<CutValue> {
        self.exact_impl(true, EXACT_GUARD_BITS)
    }

    fn guard(&self, guard_bits: usize) -> Result<()> {
        let bits: usize = self.shape.iter().sum();
        if bits > guard_bits {
            return Err(Error::Budget(format!(
                "exact cut norm needs 2^{bits} subset tuples, guard is 2^{guard_bits}"
            )));
        }
        Ok(())
    }

    fn exact_impl(&self, one_sided: bool, guard_bits: usize) -> Result<CutValue> {
        self.guard(guard_bits)?;
        Ok(match self.scaled() {
            Scaled::Small(t, d) => {
                let (v, sets) = exact_search(&self.shape, &t, one_sided);
                CutValue::exact(Rational::new(BigInt::from(v), d), sets, Bound::Exact)
            }
            Scaled::Big(t, d) => {
                let (v, sets) = exact_search(&self.shape, &t, one_sided);
                CutValue::exact(Rational::new(v, d), sets, Bound::Exact)
            }
            Scaled::Float(t) => {
                let (v, sets) = exact_search(&self.shape, &t, one_sided);
                CutValue::float(v, sets, Bound::Exact)
            }
        })
    }

    /// Alternating maximisation from random starts; a lower bound on the norm.
    pub fn cut_norm_heuristic(&self, restarts: usize, seed: u64) -> CutValue {
        match self.scaled() {
            Scaled::Small(t, d) => {
                let (v, sets) = alternating(&self.shape, &t, restarts, seed);
                CutValue::exact(Rational::new(BigInt::from(v), d), sets, Bound::Lower)
            }
            Scaled::Big(t, d) => {
                let (v, sets) = alternating(&self.shape, &t, restarts, seed);
                CutValue::exact(Rational::new(v, d), sets, Bound::Lower)
            }
            Scaled::Float(t) => {
                let (v, sets) = alternating(&self.shape, &t, restarts, seed);
                CutValue::float(v, sets, Bound::Lower)
            }
        }
    }

    /// Certified upper bound: the smaller of the weighted L1 norm and the
    /// largest singular value of an axis flattening (plus a rounding margin).
    pub fn cut_norm_upper_bound(&self) -> CutValue {
        let t = self.float_weighted();
        let l1: f64 = t.iter().map(|x| x.abs()).sum();
        let mut best = l1 * (1.0 + 1e-12);
        if self.arity() >= 2 {
            let axes: Vec<usize> = if self.len() <= 1 << 20 {
                (0..self.arity()).collect()
            } else {
                vec![0]
            };
            let w: Vec<Vec<f64>> = self.weights.iter().map(|a| a.iter().map(to_f64).collect()).collect();
            for axis in axes {
                best = best.min(flattening_norm(&self.shape, &t, &w, axis));
            }
        }
        CutValue {
            value: best,
            exact: None,
            certificate: Certificate::None,
            kind: Bound::Upper,
        }
    }

    /// Supremum over pairwise-disjoint sets when every index `b` of a square
    /// array is an interval split into `parts` equal pieces. Each set takes a
    /// whole number of pieces of each interval. With `parts = arity` the value
    /// is at least `norm / arity^arity`.
    pub fn disjoint_cut_sup(&self, parts: usize) -> Result<CutValue> {
        let r = self.arity();
        let m = self.shape[0];
        if self.shape.iter().any(|&n| n != m) || self.weights.iter().any(|w| *w != self.weights[0]) {
            return invalid("disjoint sets need every axis to share one index set and weights");
        }
        if parts == 0 {
            return invalid("at least one piece per interval required");
        }
        let allocations = compositions(parts, r);
        let total = (allocations.len() as f64).powi(m as i32);
        if total > (1u64 << EXACT_GUARD_BITS) as f64 {
            return Err(Error::Budget(format!(
                "{} allocations per index over {m} indices",
                allocations.len()
            )));
        }
        let parts_pow = Rational::from_integer(num_traits::pow(BigInt::from(parts), r));
        Ok(match self.scaled() {
            Scaled::Small(t, d) => {
                let (v, counts) = disjoint_search(m, r, &t, &allocations);
                let exact = Rational::new(BigInt::from(v), d) / &parts_pow;
                CutValue::exact(exact, Vec::new(), Bound::Exact).with_allocation(parts, counts)
            }
            Scaled::Big(t, d) => {
                let (v, counts) = disjoint_search(m, r, &t, &allocations);
                let exact = Rational::new(v, d) / &parts_pow;
                CutValue::exact(exact, Vec::new(), Bound::Exact).with_allocation(parts, counts)
            }
            Scaled::Float(t) => {
                let (v, counts) = disjoint_search(m, r, &t, &allocations);
                CutValue::float(v / to_f64(&parts_pow), Vec::new(), Bound::Exact).with_allocation(parts, counts)
            }
        })
    }
}

fn bump(idx: &mut [usize], shape: &[usize]) {
    for ax in (0..idx.len()).rev() {
        idx[ax] += 1;
        if idx[ax] < shape[ax] {
            return;
        }
        idx[ax] = 0;
    }
}

enum Scaled {
    Small(Vec<i128>, BigInt),
    Big(Vec<BigInt>, BigInt),
    Float(Vec<f64>),
}

/// Arithmetic needed by the searches; implemented by `i128`, `BigInt`, `f64`.
pub trait Scalar: Clone + Send + Sync + PartialOrd + Signed + Add<Output = Self> + Sub<Output = Self> {}
impl<T: Clone + Send + Sync + PartialOrd + Signed> Scalar for T {}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bound {
    /// The exact maximum.
    Exact,
    /// Value attained by the certificate, at most the maximum.
    Lower,
    /// At least the maximum.
    Upper,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    None,
    /// One index set per axis.
    Sets(Vec<Vec<usize>>),
    /// `counts[j][b]` pieces of interval `b` (out of `parts`) belong to set `j`.
    Allocation { parts: usize, counts: Vec<Vec<usize>> },
}

#[derive(Clone, Debug, PartialEq)]
pub struct CutValue {
    pub value: f64,
    pub exact: Option<Rational>,
    pub certificate: Certificate,
    pub kind: Bound,
}

impl CutValue {
    fn exact(v: Rational, sets: Vec<Vec<usize>>, kind: Bound) -> Self {
        Self {
            value: to_f64(&v),
            exact: Some(v),
            certificate: Certificate::Sets(sets),
            kind,
        }
    }

    fn float(v: f64, sets: Vec<Vec<usize>>, kind: Bound) -> Self {
        Self {
            value: v,
            exact: None,
            certificate: Certificate::Sets(sets),
            kind,
        }
    }

    fn with_allocation(mut self, parts: usize, counts: Vec<Vec<usize>>) -> Self {
        self.certificate = Certificate::Allocation { parts, counts };
        self
    }

    pub fn zero() -> Self {
        Self {
            value: 0.0,
            exact: Some(Rational::zero()),
            certificate: Certificate::None,
            kind: Bound::Exact,
        }
    }
}

fn members(mask: u64, n: usize) -> Vec<usize> {
    (0..n).filter(|&i| mask >> i & 1 == 1).collect()
}

fn sum_over<T: Scalar>(shape: &[usize], t: &[T], sets: &[Vec<usize>]) -> T {
    let inside: Vec<Vec<bool>> = shape
        .iter()
        .zip(sets)
        .map(|(&n, s)| {
            let mut v = vec![false; n];
            for &i in s {
                v[i] = true;
            }
            v
        })
        .collect();
    let mut idx = vec![0usize; shape.len()];
    let mut acc = T::zero();
    for x in t {
        if idx.iter().enumerate().all(|(ax, &i)| inside[ax][i]) {
            acc = acc + x.clone();
        }
        bump(&mut idx, shape);
    }
    acc
}

/// Best choice on the last axis given its marginal vector.
fn last_axis<T: Scalar>(c: &[T], one_sided: bool) -> (T, Vec<usize>) {
    let mut pos = T::zero();
    let mut neg = T::zero();
    for x in c {
        if x.is_positive() {
            pos = pos + x.clone();
        } else if x.is_negative() {
            neg = neg + x.clone();
        }
    }
    if one_sided || pos >= -neg.clone() {
        (pos, (0..c.len()).filter(|&i| c[i].is_positive()).collect())
    } else {
        (-neg, (0..c.len()).filter(|&i| c[i].is_negative()).collect())
    }
}

struct Best<T> {
    value: T,
    sets: Vec<Vec<usize>>,
}

fn descend<T: Scalar>(level: usize, shape: &[usize], c: &[T], sets: &mut Vec<Vec<usize>>, one_sided: bool, best: &mut Best<T>) {
    let r = shape.len();
    if level == r - 1 {
        let (v, last) = last_axis(c, one_sided);
        if v > best.value {
            best.value = v;
            best.sets = sets.clone();
            best.sets[level] = last;
        }
        return;
    }
    let n = shape[level];
    let s = c.len() / n;
    let mut cur = vec![T::zero(); s];
    let mut mask = 0u64;
    for step in 1u64..(1 << n) {
        let bit = step.trailing_zeros() as usize;
        mask ^= 1 << bit;
        let slice = &c[bit * s..(bit + 1) * s];
        if mask >> bit & 1 == 1 {
            for (a, b) in cur.iter_mut().zip(slice) {
                *a = a.clone() + b.clone();
            }
        } else {
            for (a, b) in cur.iter_mut().zip(slice) {
                *a = a.clone() - b.clone();
            }
        }
        sets[level] = members(mask, n);
        descend(level + 1, shape, &cur, sets, one_sided, best);
    }
}

/// Exhaustive search. Axes before the last are enumerated in Gray-code order
/// with incremental contraction; the last axis is chosen from marginal signs.
pub fn exact_search<T: Scalar>(shape: &[usize], t: &[T], one_sided: bool) -> (T, Vec<Vec<usize>>) {
    let r = shape.len();
    if r == 1 {
        let (v, s) = last_axis(t, one_sided);
        return (v, vec![s]);
    }
    let n0 = shape[0];
    let s = t.len() / n0;
    let results: Vec<Best<T>> = (1u64..(1 << n0))
        .into_par_iter()
        .map(|mask| {
            let mut c = vec![T::zero(); s];
            for i in members(mask, n0) {
                for (a, b) in c.iter_mut().zip(&t[i * s..(i + 1) * s]) {
                    *a = a.clone() + b.clone();
                }
            }
            let mut sets = vec![Vec::new(); r];
            sets[0] = members(mask, n0);
            let mut best = Best {
                value: T::zero(),
                sets: vec![Vec::new(); r],
            };
            descend(1, shape, &c, &mut sets, one_sided, &mut best);
            best
        })
        .collect();
    let mut best = Best {
        value: T::zero(),
        sets: vec![Vec::new(); r],
    };
    for b in results {
        if b.value > best.value {
            best = b;
        }
    }
    (best.value, best.sets)
}

fn marginal<T: Scalar>(shape: &[usize], t: &[T], inside: &[Vec<bool>], axis: usize) -> Vec<T> {
    let mut out = vec![T::zero(); shape[axis]];
    let mut idx = vec![0usize; shape.len()];
    for x in t {
        if idx
            .iter()
            .enumerate()
            .all(|(ax, &i)| ax == axis || inside[ax][i])
        {
            out[idx[axis]] = out[idx[axis]].clone() + x.clone();
        }
        bump(&mut idx, shape);
    }
    out
}

/// Alternating maximisation: one axis at a time keeps the indices whose
/// marginal has the target sign, until no axis improves.
pub fn alternating<T: Scalar>(shape: &[usize], t: &[T], restarts: usize, seed: u64) -> (T, Vec<Vec<usize>>) {
    let r = shape.len();
    let results: Vec<(T, Vec<Vec<usize>>)> = (0..restarts.max(1))
        .into_par_iter()
        .map(|restart| {
            let mut rng = rng_for(seed, restart as u64);
            let mut best = (T::zero(), vec![Vec::new(); r]);
            for sign in [false, true] {
                let mut inside: Vec<Vec<bool>> = shape
                    .iter()
                    .map(|&n| (0..n).map(|_| rng.gen::<bool>()).collect())
                    .collect();
                let mut current: Option<T> = None;
                for _round in 0..1000 {
                    let mut improved = false;
                    for axis in 0..r {
                        let mut marg = marginal(shape, t, &inside, axis);
                        if sign {
                            marg.iter_mut().for_each(|x| *x = -x.clone());
                        }
                        let mut value = T::zero();
                        for (i, x) in marg.iter().enumerate() {
                            inside[axis][i] = x.is_positive();
                            if x.is_positive() {
                                value = value + x.clone();
                            }
                        }
                        if current.as_ref().map_or(true, |c| value > *c) {
                            current = Some(value);
                            improved = true;
                        }
                    }
                    if !improved {
                        break;
                    }
                }
                let v = current.unwrap_or_else(T::zero);
                if v > best.0 {
                    let sets = inside
                        .iter()
                        .map(|a| (0..a.len()).filter(|&i| a[i]).collect())
                        .collect();
                    best = (v, sets);
                }
            }
            best
        })
        .collect();
    let mut best = (T::zero(), vec![Vec::new(); r]);
    for b in results {
        if b.0 > best.0 {
            best = b;
        }
    }
    best
}

/// Largest singular value of the flattening of the weighted array along
/// `axis`, each entry rescaled by `1 / sqrt(product of its weights)` so that
/// indicator vectors of sets become unit-bounded.
fn flattening_norm(shape: &[usize], t: &[f64], w: &[Vec<f64>], axis: usize) -> f64 {
    let rows = shape[axis];
    let cols = t.len() / rows;
    let mut m = DMatrix::<f64>::zeros(rows, cols);
    let mut idx = vec![0usize; shape.len()];
    let mut col_of = vec![0usize; rows];
    for x in t {
        let row = idx[axis];
        let scale: f64 = idx.iter().enumerate().map(|(ax, &i)| w[ax][i]).product::<f64>().sqrt();
        m[(row, col_of[row])] = x / scale;
        col_of[row] += 1;
        bump(&mut idx, shape);
    }
    let gram = if rows <= cols { &m * m.transpose() } else { m.transpose() * &m };
    let norm_f = gram.norm();
    let lambda = SymmetricEigen::new(gram)
        .eigenvalues
        .iter()
        .fold(0.0f64, |a, &b| a.max(b));
    (lambda + 1e-10 * norm_f + f64::MIN_POSITIVE).sqrt() * (1.0 + 1e-12)
}

/// Ways to give `c_j` pieces to each of `r` sets with `sum c_j <= parts`.
fn compositions(parts: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0; r];
    fn rec(j: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if j == cur.len() {
            out.push(cur.clone());
            return;
        }
        for c in 0..=left {
            cur[j] = c;
            rec(j + 1, left - c, cur, out);
        }
        cur[j] = 0;
    }
    rec(0, parts, &mut cur, &mut out);
    out
}

/// Maximises `|sum_b t[b] prod_j c_j(b_j)|` over per-index allocations.
fn disjoint_search<T: Scalar>(m: usize, r: usize, t: &[T], allocations: &[Vec<usize>]) -> (T, Vec<Vec<usize>>) {
    let a = allocations.len();
    let total = a.pow(m as u32);
    let eval = |code: usize| -> (T, Vec<usize>) {
        let mut choice = Vec::with_capacity(m);
        let mut c = code;
        for _ in 0..m {
            choice.push(c % a);
            c /= a;
        }
        // Contract axis by axis: v starts as t and loses its leading axis each step.
        let mut v: Vec<T> = t.to_vec();
        for j in 0..r {
            let s = v.len() / m;
            let mut next = vec![T::zero(); s];
            for b in 0..m {
                let k = allocations[choice[b]][j];
                if k == 0 {
                    continue;
                }
                for (x, y) in next.iter_mut().zip(&v[b * s..(b + 1) * s]) {
                    let mut add = y.clone();
                    for _ in 1..k {
                        add = add + y.clone();
                    }
                    *x = x.clone() + add;
                }
            }
            v = next;
        }
        (v[0].abs(), choice)
    };
    let (best_v, best_choice) = (0..total)
        .into_par_iter()
        .map(eval)
        .reduce(
            || (T::zero(), vec![0; m]),
            |x, y| if y.0 > x.0 { y } else { x },
        );
    let counts = (0..r)
        .map(|j| (0..m).map(|b| allocations[best_choice[b]][j]).collect())
        .collect();
    (best_v, counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use rand::SeedableRng;

    fn checker() -> MultiArray {
        MultiArray::from_rational(vec![2, 2], vec![rat(1, 2), rat(-1, 2), rat(-1, 2), rat(1, 2)]).unwrap()
    }

    #[test]
    fn exact_examples() {
        let z = MultiArray::from_f64(vec![3, 3], vec![0.0; 9]).unwrap();
        assert_eq!(z.cut_norm_exact().unwrap().value, 0.0);
        let c = checker().cut_norm_exact().unwrap();
        assert_eq!(c.exact, Some(rat(1, 8)));
        assert_eq!(c.certificate, Certificate::Sets(vec![vec![0], vec![0]]));
        let ones = MultiArray::from_rational(vec![2, 3, 2], vec![rat(1, 1); 12]).unwrap();
        assert_eq!(ones.cut_norm_exact().unwrap().exact, Some(rat(1, 1)));
        let big = MultiArray::from_f64(vec![9, 9, 9], vec![0.0; 729]).unwrap();
        assert!(matches!(big.cut_norm_exact(), Err(Error::Budget(_))));
    }

    #[test]
    fn one_sided_examples() {
        assert_eq!(checker().one_sided_cut_norm().unwrap().exact, Some(rat(1, 8)));
        let neg = MultiArray::from_rational(vec![2, 2], vec![rat(-1, 3); 4]).unwrap();
        assert_eq!(neg.one_sided_cut_norm().unwrap().exact, Some(rat(0, 1)));
        assert_eq!(neg.neg().one_sided_cut_norm().unwrap().exact, Some(rat(1, 3)));
    }

    #[test]
    fn heuristic_examples() {
        let h = checker().cut_norm_heuristic(4, 1);
        assert_eq!(h.exact, Some(rat(1, 8)));
        assert_eq!(h.kind, Bound::Lower);
        let z = MultiArray::from_f64(vec![2, 2], vec![0.0; 4]).unwrap();
        assert_eq!(z.cut_norm_heuristic(3, 1).value, 0.0);
    }

    #[test]
    fn certificates_reevaluate() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let data: Vec<Rational> = (0..27).map(|_| rat(rng.gen_range(-8..=8), 8)).collect();
            let a = MultiArray::from_rational(vec![3, 3, 3], data).unwrap();
            for v in [a.cut_norm_exact().unwrap(), a.cut_norm_heuristic(5, 2)] {
                let Certificate::Sets(sets) = &v.certificate else { panic!() };
                let (_, e) = a.evaluate_sets(sets);
                assert_eq!(e.map(|x| x.abs()), v.exact);
            }
        }
    }

    #[test]
    fn brute_force_oracle_agrees() {
        // Independent oracle: enumerate every pair of subsets directly.
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(21);
        for _ in 0..20 {
            let data: Vec<f64> = (0..12).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let a = MultiArray::from_f64(vec![3, 4], data.clone()).unwrap();
            let mut best: f64 = 0.0;
            for s in 0..8u32 {
                for t in 0..16u32 {
                    let mut sum = 0.0;
                    for i in 0..3 {
                        for j in 0..4 {
                            if s >> i & 1 == 1 && t >> j & 1 == 1 {
                                sum += data[i * 4 + j] / 12.0;
                            }
                        }
                    }
                    best = best.max(sum.abs());
                }
            }
            let e = a.cut_norm_exact().unwrap().value;
            assert!((e - best).abs() < 1e-12);
            assert!(a.cut_norm_upper_bound().value >= e);
        }
    }

    #[test]
    fn weighted_axes() {
        let a = MultiArray::from_rational(vec![2, 2], vec![rat(1, 1), rat(0, 1), rat(0, 1), rat(1, 1)])
            .unwrap()
            .with_weights(vec![vec![rat(1, 4), rat(3, 4)], vec![rat(1, 4), rat(3, 4)]])
            .unwrap();
        assert_eq!(a.cut_norm_exact().unwrap().exact, Some(rat(10, 16)));
        assert!(a.clone().with_weights(vec![vec![rat(1, 2), rat(1, 4)], vec![rat(1, 2), rat(1, 2)]]).is_err());
        assert!(a.cut_norm_upper_bound().value >= 10.0 / 16.0);
    }

    #[test]
    fn disjoint_examples() {
        let diag = MultiArray::from_rational(vec![2, 2], vec![rat(1, 1), rat(0, 1), rat(0, 1), rat(1, 1)]).unwrap();
        assert_eq!(diag.cut_norm_exact().unwrap().exact, Some(rat(1, 2)));
        let dj = diag.disjoint_cut_sup(2).unwrap();
        assert_eq!(dj.exact, Some(rat(1, 8)));
        let z = MultiArray::from_f64(vec![2, 2], vec![0.0; 4]).unwrap();
        assert_eq!(z.disjoint_cut_sup(2).unwrap().value, 0.0);
        assert!(MultiArray::from_f64(vec![2, 3], vec![0.0; 6]).unwrap().disjoint_cut_sup(2).is_err());
    }

    #[test]
    fn spectral_bound_is_tight_on_rank_one() {
        let u = [0.3, -0.2, 0.5];
        let data: Vec<f64> = (0..9).map(|i| u[i / 3] * u[i % 3].abs()).collect();
        let a = MultiArray::from_f64(vec![3, 3], data).unwrap();
        let e = a.cut_norm_exact().unwrap().value;
        let ub = a.cut_norm_upper_bound().value;
        assert!(ub >= e && ub < 1.0);
    }
}
