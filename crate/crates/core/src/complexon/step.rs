use itertools::Itertools;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;

use super::{Kernel, Partition};
use crate::error::{invalid, Error, Result};
use crate::rational::{from_f64, in_unit_interval, int, to_f64, Rational};
use crate::simplicial::{SimplicialComplex, WeightedComplex};

pub fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Number of cells (sorted block multisets) in dimension `d` over `m` blocks.
pub fn cell_count(m: usize, d: usize) -> usize {
    binom(m + d, d + 1)
}

/// Position of a sorted block multiset in the dimension tensor.
pub fn cell_rank(sorted: &[usize]) -> usize {
    sorted
        .iter()
        .enumerate()
        .map(|(i, &b)| binom(b + i, i + 1))
        .sum()
}

/// Sorted block multisets of size `d + 1`, in lexicographic order.
pub fn cells(m: usize, d: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..m).combinations_with_replacement(d + 1)
}

fn sorted_cell(blocks: &[usize]) -> smallvec::SmallVec<[usize; 6]> {
    let mut c: smallvec::SmallVec<[usize; 6]> = blocks.iter().copied().collect();
    c.sort_unstable();
    c
}

/// A stepfunction complexon on `m` consecutive blocks of `[0, 1)`.
///
/// Values are kept as floats; exact rationals are kept alongside when the
/// complexon was built from rational data. Blocks are 0-based.
#[derive(Clone, Debug, PartialEq)]
pub struct StepComplexon {
    m: usize,
    widths: Option<Vec<Rational>>,
    bounds: Vec<f64>,
    float: Vec<Vec<f64>>,
    exact: Option<Vec<Vec<Rational>>>,
}

impl StepComplexon {
    /// Exact complexon with uniform blocks; `f(d, cell)` gives each value.
    pub fn from_fn_exact(
        m: usize,
        max_dim: usize,
        mut f: impl FnMut(usize, &[usize]) -> Rational,
    ) -> Result<Self> {
        if m == 0 {
            return invalid("at least one block required");
        }
        let mut exact = Vec::with_capacity(max_dim);
        for d in 1..=max_dim {
            let mut t = vec![Rational::zero(); cell_count(m, d)];
            for c in cells(m, d) {
                let v = f(d, &c);
                if !in_unit_interval(&v) {
                    return Err(Error::ValueOutOfRange(to_f64(&v)));
                }
                t[cell_rank(&c)] = v;
            }
            exact.push(t);
        }
        Ok(Self::from_exact_tables(m, None, exact))
    }

    /// Float complexon with uniform blocks.
    pub fn from_fn(m: usize, max_dim: usize, mut f: impl FnMut(usize, &[usize]) -> f64) -> Result<Self> {
        if m == 0 {
            return invalid("at least one block required");
        }
        let mut float = Vec::with_capacity(max_dim);
        for d in 1..=max_dim {
            let mut t = vec![0.0; cell_count(m, d)];
            for c in cells(m, d) {
                let v = f(d, &c);
                if !(0.0..=1.0).contains(&v) {
                    return Err(Error::ValueOutOfRange(v));
                }
                t[cell_rank(&c)] = v;
            }
            float.push(t);
        }
        Ok(Self {
            m,
            widths: None,
            bounds: Vec::new(),
            float,
            exact: None,
        })
    }

    fn from_exact_tables(m: usize, widths: Option<Vec<Rational>>, exact: Vec<Vec<Rational>>) -> Self {
        let float = exact.iter().map(|t| t.iter().map(to_f64).collect()).collect();
        let mut s = Self {
            m,
            widths: None,
            bounds: Vec::new(),
            float,
            exact: Some(exact),
        };
        s.set_widths(widths);
        s
    }

    fn set_widths(&mut self, widths: Option<Vec<Rational>>) {
        let uniform = widths
            .as_ref()
            .map_or(true, |w| w.iter().all(|x| *x == w[0]));
        if uniform {
            self.widths = None;
            self.bounds.clear();
        } else {
            let w = widths.unwrap();
            let mut acc = Rational::zero();
            self.bounds = w
                .iter()
                .map(|x| {
                    acc += x;
                    to_f64(&acc)
                })
                .collect();
            self.widths = Some(w);
        }
    }

    /// Replaces the uniform blocks by consecutive blocks of the given widths.
    pub fn with_widths(mut self, widths: Vec<Rational>) -> Result<Self> {
        if widths.len() != self.m {
            return invalid(format!("{} widths for {} blocks", widths.len(), self.m));
        }
        if widths.iter().any(|w| *w <= Rational::zero()) {
            return invalid("block widths must be positive");
        }
        if widths.iter().fold(Rational::zero(), |a, w| a + w) != Rational::one() {
            return invalid("block widths must sum to 1");
        }
        self.set_widths(Some(widths));
        Ok(self)
    }

    /// Constant value `p_d` in each dimension, on a single block.
    pub fn constant(probs: &[Rational]) -> Result<Self> {
        Self::from_fn_exact(1, probs.len(), |d, _| probs[d - 1].clone())
    }

    /// Pixel picture of a complex: block `j` is vertex `j + 1`; cells with a
    /// repeated block are 0.
    pub fn pixel(k: &SimplicialComplex) -> Self {
        let d_max = k.max_dim().max(1);
        let n = k.n().max(1);
        let mut exact: Vec<Vec<Rational>> = (1..=d_max)
            .map(|d| vec![Rational::zero(); cell_count(n, d)])
            .collect();
        for s in k.iter().filter(|s| s.len() >= 2) {
            let c: Vec<usize> = s.iter().map(|&v| v as usize - 1).collect();
            exact[s.len() - 2][cell_rank(&c)] = Rational::one();
        }
        Self::from_exact_tables(n, None, exact)
    }

    /// Float-only pixel picture, for complexes too large for exact tables.
    pub fn pixel_float(k: &SimplicialComplex, max_dim: usize) -> Self {
        let n = k.n().max(1);
        let mut float: Vec<Vec<f64>> = (1..=max_dim).map(|d| vec![0.0; cell_count(n, d)]).collect();
        for s in k.iter().filter(|s| s.len() >= 2 && s.len() <= max_dim + 1) {
            let c: Vec<usize> = s.iter().map(|&v| v as usize - 1).collect();
            float[s.len() - 2][cell_rank(&c)] = 1.0;
        }
        Self {
            m: n,
            widths: None,
            bounds: Vec::new(),
            float,
            exact: None,
        }
    }

    /// Pixel picture of a weighted complex; weights are converted exactly.
    pub fn pixel_weighted(h: &WeightedComplex) -> Self {
        let n = h.n().max(1);
        let d_max = h.max_dim().max(1);
        let exact = (1..=d_max)
            .map(|d| {
                let mut t = vec![Rational::zero(); cell_count(n, d)];
                for c in (0..n).combinations(d + 1) {
                    let s: Vec<u32> = c.iter().map(|&b| b as u32 + 1).collect();
                    t[cell_rank(&c)] = from_f64(h.weight(&s));
                }
                t
            })
            .collect();
        Self::from_exact_tables(n, None, exact)
    }

    /// Exact values `k / denominator` drawn uniformly.
    pub fn random_exact<R: Rng + ?Sized>(m: usize, max_dim: usize, denominator: i64, rng: &mut R) -> Self {
        Self::from_fn_exact(m, max_dim, |_, _| {
            Rational::new(rng.gen_range(0..=denominator).into(), denominator.into())
        })
        .expect("values in range")
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn max_dim(&self) -> usize {
        self.float.len()
    }

    pub fn is_uniform(&self) -> bool {
        self.widths.is_none()
    }

    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }

    pub fn widths(&self) -> Vec<Rational> {
        match &self.widths {
            Some(w) => w.clone(),
            None => vec![Rational::one() / int(self.m as i64); self.m],
        }
    }

    /// Right endpoints of the blocks.
    pub fn boundaries(&self) -> Vec<Rational> {
        let mut acc = Rational::zero();
        self.widths()
            .into_iter()
            .map(|w| {
                acc += w;
                acc.clone()
            })
            .collect()
    }

    pub fn block_of(&self, x: f64) -> usize {
        if self.widths.is_none() {
            ((x * self.m as f64) as usize).min(self.m - 1)
        } else {
            self.bounds.partition_point(|&b| b <= x).min(self.m - 1)
        }
    }

    /// Value on the cell of the given (unsorted) blocks; 0 above the truncation.
    pub fn value_at(&self, blocks: &[usize]) -> f64 {
        let d = blocks.len() - 1;
        if d == 0 {
            return 1.0;
        }
        match self.float.get(d - 1) {
            Some(t) => t[cell_rank(&sorted_cell(blocks))],
            None => 0.0,
        }
    }

    pub fn exact_at(&self, blocks: &[usize]) -> Option<Rational> {
        let d = blocks.len() - 1;
        if d == 0 {
            return Some(Rational::one());
        }
        let exact = self.exact.as_ref()?;
        Some(match exact.get(d - 1) {
            Some(t) => t[cell_rank(&sorted_cell(blocks))].clone(),
            None => Rational::zero(),
        })
    }

    pub fn float_table(&self, d: usize) -> Option<&[f64]> {
        self.float.get(d.checked_sub(1)?).map(|t| t.as_slice())
    }

    pub fn exact_table(&self, d: usize) -> Option<&[Rational]> {
        self.exact.as_ref()?.get(d.checked_sub(1)?).map(|t| t.as_slice())
    }

    /// Drops the exact tables.
    pub fn to_float(&self) -> Self {
        Self {
            exact: None,
            ..self.clone()
        }
    }

    /// Truncates or zero-pads to `max_dim` dimensions.
    pub fn with_max_dim(&self, max_dim: usize) -> Self {
        let mut s = self.clone();
        s.float.truncate(max_dim);
        if let Some(e) = s.exact.as_mut() {
            e.truncate(max_dim);
        }
        for d in s.float.len() + 1..=max_dim {
            s.float.push(vec![0.0; cell_count(self.m, d)]);
            if let Some(e) = s.exact.as_mut() {
                e.push(vec![Rational::zero(); cell_count(self.m, d)]);
            }
        }
        s
    }

    /// Faceted form: each cell becomes the product of the values on all of its
    /// sub-cells of size at least two.
    pub fn facet(&self) -> Self {
        let subcells = |c: &[usize]| -> Vec<Vec<usize>> {
            (1u32..1 << c.len())
                .filter(|mask| mask.count_ones() >= 2)
                .map(|mask| {
                    c.iter()
                        .enumerate()
                        .filter(|&(i, _)| mask >> i & 1 == 1)
                        .map(|(_, &b)| b)
                        .collect()
                })
                .collect()
        };
        let mut out = self.clone();
        for d in 1..=self.max_dim() {
            for c in cells(self.m, d) {
                let r = cell_rank(&c);
                let subs = subcells(&c);
                out.float[d - 1][r] = subs.iter().map(|s| self.value_at(s)).product();
                if let Some(e) = out.exact.as_mut() {
                    e[d - 1][r] = subs
                        .iter()
                        .fold(Rational::one(), |acc, s| acc * self.exact_at(s).unwrap());
                }
            }
        }
        out
    }

    /// The rearranged complexon whose value on blocks `b` is the value of
    /// `self` on `perm[b]`. Blocks swapped with each other must have equal width.
    pub fn apply_block_permutation(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.m {
            return invalid(format!("permutation of {} blocks, expected {}", perm.len(), self.m));
        }
        let mut seen = vec![false; self.m];
        for &p in perm {
            if p >= self.m || std::mem::replace(&mut seen[p], true) {
                return invalid("not a bijection");
            }
        }
        if let Some(w) = &self.widths {
            if (0..self.m).any(|b| w[b] != w[perm[b]]) {
                return invalid("permutation does not preserve block measure");
            }
        }
        Ok(self.map_blocks(self.widths.clone(), perm))
    }

    /// New complexon on `map.len()` blocks whose cell `c` takes the value of
    /// `self` on `map[c]`.
    fn map_blocks(&self, widths: Option<Vec<Rational>>, map: &[usize]) -> Self {
        let m = map.len();
        let mut float = Vec::with_capacity(self.max_dim());
        let mut exact = self.exact.as_ref().map(|_| Vec::with_capacity(self.max_dim()));
        for d in 1..=self.max_dim() {
            let mut ft = vec![0.0; cell_count(m, d)];
            let mut et = exact.as_ref().map(|_| vec![Rational::zero(); cell_count(m, d)]);
            for c in cells(m, d) {
                let r = cell_rank(&c);
                let src = sorted_cell(&c.iter().map(|&b| map[b]).collect::<Vec<_>>());
                let sr = cell_rank(&src);
                ft[r] = self.float[d - 1][sr];
                if let Some(et) = et.as_mut() {
                    et[r] = self.exact.as_ref().unwrap()[d - 1][sr].clone();
                }
            }
            float.push(ft);
            if let (Some(e), Some(et)) = (exact.as_mut(), et) {
                e.push(et);
            }
        }
        let mut s = Self {
            m,
            widths: None,
            bounds: Vec::new(),
            float,
            exact,
        };
        s.set_widths(widths);
        s
    }

    /// Splits every block into `k` equal parts.
    pub fn refine(&self, k: usize) -> Result<Self> {
        if k == 0 {
            return invalid("refinement factor must be positive");
        }
        let map: Vec<usize> = (0..self.m * k).map(|b| b / k).collect();
        let widths = self.widths.as_ref().map(|w| {
            let k_r = int(k as i64);
            map.iter().map(|&b| &w[b] / &k_r).collect()
        });
        Ok(self.map_blocks(widths, &map))
    }

    /// Re-expresses the complexon on the atoms cut out by `points`, which must
    /// be sorted right endpoints in `(0, 1]` including all current boundaries.
    pub fn refine_to_boundaries(&self, points: &[Rational]) -> Result<Self> {
        let own = self.boundaries();
        if points.last() != Some(&Rational::one()) || !own.iter().all(|b| points.contains(b)) {
            return invalid("boundaries must include every block boundary and end at 1");
        }
        let mut widths = Vec::with_capacity(points.len());
        let mut map = Vec::with_capacity(points.len());
        let mut left = Rational::zero();
        let mut block = 0;
        for p in points {
            if *p <= left {
                return invalid("boundaries must be strictly increasing");
            }
            while own[block] < *p {
                block += 1;
            }
            widths.push(p - &left);
            map.push(block);
            left = p.clone();
        }
        Ok(self.map_blocks(Some(widths), &map))
    }

    /// Projection onto a partition: each product of classes gets the average
    /// of `self` over it. The result lives on the partition's interval atoms.
    pub fn project(&self, partition: &Partition) -> Result<Self> {
        let mut points: Vec<Rational> = self.boundaries();
        points.extend(partition.breakpoints().into_iter().filter(|p| !p.is_zero()));
        points.sort();
        points.dedup();
        let fine = self.refine_to_boundaries(&points)?;
        let widths = fine.widths();
        let k = partition.len();
        let mut left = Rational::zero();
        let mut class_of_atom = Vec::with_capacity(widths.len());
        for w in &widths {
            class_of_atom.push(partition.class_of(&left));
            left += w;
        }
        let class_step = fine.class_average(&class_of_atom, k);
        // Lay the class values out on the partition's atoms.
        let mut atoms: Vec<(Rational, Rational, usize)> = partition
            .classes()
            .iter()
            .enumerate()
            .flat_map(|(c, ivs)| ivs.iter().map(move |(a, b)| (a.clone(), b.clone(), c)))
            .collect();
        atoms.sort();
        let map: Vec<usize> = atoms.iter().map(|a| a.2).collect();
        let widths = atoms.iter().map(|(a, b, _)| b - a).collect();
        Ok(class_step.map_blocks(Some(widths), &map))
    }

    /// Averages over classes of blocks: a complexon on `k` uniform blocks
    /// whose cell values are the means of `self` over products of classes.
    fn class_average(&self, class_of_atom: &[usize], k: usize) -> Self {
        let widths = self.widths();
        let fw: Vec<f64> = widths.iter().map(to_f64).collect();
        let mut class_measure = vec![Rational::zero(); k];
        for (a, w) in widths.iter().enumerate() {
            class_measure[class_of_atom[a]] += w;
        }
        let exact = self.exact.is_some();
        let mut class_exact: Vec<Vec<Rational>> = Vec::new();
        let mut class_float: Vec<Vec<f64>> = Vec::new();
        for d in 1..=self.max_dim() {
            let mut e_sum = vec![Rational::zero(); cell_count(k, d)];
            let mut f_sum = vec![0.0f64; cell_count(k, d)];
            // Every ordering of a fine cell lands in the same class cell.
            for atoms in cells(self.m, d) {
                let classes: Vec<usize> = atoms.iter().map(|&a| class_of_atom[a]).collect();
                let r = cell_rank(&sorted_cell(&classes));
                let mult = multinomial(&atoms);
                if exact {
                    let vol = atoms.iter().fold(int(mult as i64), |acc, &a| acc * &widths[a]);
                    e_sum[r] += self.exact_at(&atoms).unwrap() * &vol;
                } else {
                    let vol = atoms.iter().fold(mult as f64, |acc, &a| acc * fw[a]);
                    f_sum[r] += self.value_at(&atoms) * vol;
                }
            }
            for c in cells(k, d) {
                let r = cell_rank(&c);
                // Ordered tuples of classes with this multiset: count * ∏ measures.
                let mult = multinomial(&c);
                let vol = c.iter().fold(Rational::one(), |acc, &x| acc * &class_measure[x]) * int(mult as i64);
                if exact {
                    e_sum[r] = &e_sum[r] / &vol;
                } else {
                    f_sum[r] = (f_sum[r] / to_f64(&vol)).clamp(0.0, 1.0);
                }
            }
            if exact {
                class_exact.push(e_sum);
            } else {
                class_float.push(f_sum);
            }
        }
        if exact {
            Self::from_exact_tables(k, None, class_exact)
        } else {
            Self {
                m: k,
                widths: None,
                bounds: Vec::new(),
                float: class_float,
                exact: None,
            }
        }
    }

    /// Projection onto classes of blocks (`labels[b]` in `0..k`), kept on the
    /// original blocks.
    pub fn project_blocks(&self, labels: &[usize]) -> Result<Self> {
        if labels.len() != self.m {
            return invalid(format!("{} labels for {} blocks", labels.len(), self.m));
        }
        let k = labels.iter().max().map_or(0, |&x| x + 1);
        let mut used = vec![false; k];
        labels.iter().for_each(|&l| used[l] = true);
        if used.contains(&false) {
            return invalid("class labels must be 0..k without gaps");
        }
        Ok(self.class_average(labels, k).map_blocks(self.widths.clone(), labels))
    }

    /// Uniform-grid midpoint discretisation of any kernel.
    pub fn from_kernel_grid<K: Kernel + ?Sized>(kernel: &K, grid: usize) -> Result<Self> {
        let mids: Vec<f64> = (0..grid).map(|i| (i as f64 + 0.5) / grid as f64).collect();
        let mut x = Vec::new();
        Self::from_fn(grid, kernel.max_dim(), |_, c| {
            x.clear();
            x.extend(c.iter().map(|&b| mids[b]));
            kernel.value(&x)
        })
    }
}

/// Number of distinct orderings of a multiset given in sorted order.
fn multinomial(sorted: &[usize]) -> u64 {
    let mut total: u64 = (1..=sorted.len() as u64).product();
    for (_, group) in &sorted.iter().chunk_by(|&&b| b) {
        let g = group.count() as u64;
        total /= (1..=g).product::<u64>();
    }
    total
}

/// Both stepfunctions on a common block structure: `lcm` uniform blocks when
/// both are uniform, otherwise the union of their boundaries.
pub fn refine_to_common(a: &StepComplexon, b: &StepComplexon) -> (StepComplexon, StepComplexon) {
    if a.is_uniform() && b.is_uniform() {
        let l = a.m.lcm(&b.m);
        return (a.refine(l / a.m).unwrap(), b.refine(l / b.m).unwrap());
    }
    let mut points = a.boundaries();
    points.extend(b.boundaries());
    points.sort();
    points.dedup();
    (
        a.refine_to_boundaries(&points).unwrap(),
        b.refine_to_boundaries(&points).unwrap(),
    )
}

impl Kernel for StepComplexon {
    fn max_dim(&self) -> usize {
        self.float.len()
    }

    fn value(&self, x: &[f64]) -> f64 {
        let blocks: smallvec::SmallVec<[usize; 6]> = x.iter().map(|&t| self.block_of(t)).collect();
        self.value_at(&blocks)
    }
}
