//! Complexons: one symmetric kernel `[0,1]^(d+1) -> [0,1]` per dimension
//! `d = 1..=D`, identically 0 above `D`.

mod io;
mod partition;
mod step;

use num_traits::{One, Zero};

pub use io::{parse_complexon, ParseReport};
pub use partition::Partition;
pub use step::{binom, cell_count, cell_rank, cells, refine_to_common, StepComplexon};

use crate::error::{invalid, Error, Result};
use crate::rational::{in_unit_interval, int, pow, to_f64, Rational};

/// Evaluation interface shared by all complexon variants.
pub trait Kernel: Send + Sync {
    fn max_dim(&self) -> usize;

    /// Value on a tuple of `d + 1` coordinates in `[0, 1]`, without range
    /// checks. Tuples of length one give 1, tuples above the truncation 0.
    fn value(&self, x: &[f64]) -> f64;

    fn eval(&self, d: usize, x: &[f64]) -> Result<f64> {
        if x.len() != d + 1 {
            return invalid(format!("dimension {d} needs {} coordinates, got {}", d + 1, x.len()));
        }
        if let Some(&bad) = x.iter().find(|t| !(0.0..=1.0).contains(*t)) {
            return Err(Error::CoordinateOutOfRange(bad));
        }
        Ok(self.value(x))
    }
}

/// Constant value `p_d` in each dimension `d`.
#[derive(Clone, Debug, PartialEq)]
pub struct HomogeneousComplexon {
    probs: Vec<Rational>,
    float: Vec<f64>,
}

impl HomogeneousComplexon {
    pub fn new(probs: Vec<Rational>) -> Result<Self> {
        if let Some(p) = probs.iter().find(|p| !in_unit_interval(p)) {
            return Err(Error::ValueOutOfRange(to_f64(p)));
        }
        let float = probs.iter().map(to_f64).collect();
        Ok(Self { probs, float })
    }

    pub fn probs(&self) -> &[Rational] {
        &self.probs
    }

    pub fn prob(&self, d: usize) -> Rational {
        match d {
            0 => Rational::one(),
            d => self.probs.get(d - 1).cloned().unwrap_or_else(Rational::zero),
        }
    }

    /// `q_d = prod_{j=1..d} p_j^C(d+1, j+1)`.
    pub fn facet(&self) -> Self {
        let probs = (1..=self.probs.len())
            .map(|d| {
                (1..=d).fold(Rational::one(), |acc, j| {
                    acc * pow(&self.probs[j - 1], binom(d + 1, j + 1) as u32)
                })
            })
            .collect();
        Self::new(probs).unwrap()
    }

    pub fn to_step(&self) -> StepComplexon {
        StepComplexon::constant(&self.probs).unwrap()
    }
}

impl Kernel for HomogeneousComplexon {
    fn max_dim(&self) -> usize {
        self.probs.len()
    }

    fn value(&self, x: &[f64]) -> f64 {
        match x.len() {
            0 | 1 => 1.0,
            k => self.float.get(k - 2).copied().unwrap_or(0.0),
        }
    }
}

/// Parameterised curve `[0, 1] -> R^k`.
#[derive(Clone, Debug, PartialEq)]
pub enum Curve {
    /// Two unit circles touching at the origin.
    Bouquet,
    /// Piecewise-linear interpolation of points at equally spaced parameters.
    Polyline(Vec<Vec<f64>>),
}

/// The bouquet of two circles, traversed left circle first.
pub fn bouquet_curve(t: f64) -> Result<[f64; 2]> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::CoordinateOutOfRange(t));
    }
    Ok(bouquet_point(t))
}

fn bouquet_point(t: f64) -> [f64; 2] {
    let a = 4.0 * std::f64::consts::PI * t;
    if t < 0.5 {
        [a.cos() - 1.0, a.sin()]
    } else {
        [1.0 - a.cos(), a.sin()]
    }
}

impl Curve {
    pub fn point(&self, t: f64) -> Vec<f64> {
        match self {
            Curve::Bouquet => bouquet_point(t).to_vec(),
            Curve::Polyline(pts) => {
                if pts.len() == 1 {
                    return pts[0].clone();
                }
                let s = t * (pts.len() - 1) as f64;
                let i = (s.floor() as usize).min(pts.len() - 2);
                let f = s - i as f64;
                pts[i].iter().zip(&pts[i + 1]).map(|(a, b)| a + f * (b - a)).collect()
            }
        }
    }
}

/// 1 on tuples whose curve images have diameter below `epsilon`, else 0.
#[derive(Clone, Debug, PartialEq)]
pub struct CechCurveComplexon {
    curve: Curve,
    epsilon: f64,
    max_dim: usize,
}

impl CechCurveComplexon {
    pub fn new(curve: Curve, epsilon: f64, max_dim: usize) -> Result<Self> {
        if !(epsilon > 0.0) {
            return invalid(format!("epsilon must be positive, got {epsilon}"));
        }
        if let Curve::Polyline(pts) = &curve {
            if pts.is_empty() {
                return invalid("empty polyline");
            }
            if pts.iter().any(|p| p.len() != pts[0].len()) {
                return invalid("polyline points must share one dimension");
            }
        }
        Ok(Self {
            curve,
            epsilon,
            max_dim,
        })
    }

    pub fn bouquet(epsilon: f64, max_dim: usize) -> Result<Self> {
        Self::new(Curve::Bouquet, epsilon, max_dim)
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn curve(&self) -> &Curve {
        &self.curve
    }

    /// Whether two parameters map to points closer than epsilon.
    pub fn adjacent(&self, s: f64, t: f64) -> bool {
        dist(&self.curve.point(s), &self.curve.point(t)) < self.epsilon
    }
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

impl Kernel for CechCurveComplexon {
    fn max_dim(&self) -> usize {
        self.max_dim
    }

    fn value(&self, x: &[f64]) -> f64 {
        if x.len() < 2 {
            return 1.0;
        }
        if x.len() > self.max_dim + 1 {
            return 0.0;
        }
        let pts: Vec<Vec<f64>> = x.iter().map(|&t| self.curve.point(t)).collect();
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                if dist(&pts[i], &pts[j]) >= self.epsilon {
                    return 0.0;
                }
            }
        }
        1.0
    }
}

/// Any of the supported complexon representations.
#[derive(Clone, Debug, PartialEq)]
pub enum Complexon {
    Step(StepComplexon),
    Homogeneous(HomogeneousComplexon),
    Cech(CechCurveComplexon),
}

impl Complexon {
    /// Faceted form. A Čech complexon is its own faceted form because every
    /// sub-tuple has diameter at most that of the whole tuple.
    pub fn facet(&self) -> Self {
        match self {
            Complexon::Step(s) => Complexon::Step(s.facet()),
            Complexon::Homogeneous(h) => Complexon::Homogeneous(h.facet()),
            Complexon::Cech(c) => Complexon::Cech(c.clone()),
        }
    }

    /// Stepfunction form. Exact for step and homogeneous inputs; Čech inputs
    /// are discretised at `grid` midpoints per axis.
    pub fn to_step(&self, grid: usize) -> Result<StepComplexon> {
        match self {
            Complexon::Step(s) => Ok(s.clone()),
            Complexon::Homogeneous(h) => Ok(h.to_step()),
            Complexon::Cech(c) => StepComplexon::from_kernel_grid(c, grid),
        }
    }

    pub fn project(&self, partition: &Partition, grid: usize) -> Result<StepComplexon> {
        self.to_step(grid)?.project(partition)
    }

    pub fn as_step(&self) -> Option<&StepComplexon> {
        match self {
            Complexon::Step(s) => Some(s),
            _ => None,
        }
    }
}

impl Kernel for Complexon {
    fn max_dim(&self) -> usize {
        match self {
            Complexon::Step(s) => s.max_dim(),
            Complexon::Homogeneous(h) => h.max_dim(),
            Complexon::Cech(c) => c.max_dim(),
        }
    }

    fn value(&self, x: &[f64]) -> f64 {
        match self {
            Complexon::Step(s) => s.value(x),
            Complexon::Homogeneous(h) => h.value(x),
            Complexon::Cech(c) => c.value(x),
        }
    }
}

impl From<StepComplexon> for Complexon {
    fn from(s: StepComplexon) -> Self {
        Complexon::Step(s)
    }
}

impl From<HomogeneousComplexon> for Complexon {
    fn from(h: HomogeneousComplexon) -> Self {
        Complexon::Homogeneous(h)
    }
}

impl From<CechCurveComplexon> for Complexon {
    fn from(c: CechCurveComplexon) -> Self {
        Complexon::Cech(c)
    }
}

/// Nonnegative per-dimension weights `alpha_1..alpha_D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSequence(Vec<Rational>);

impl WeightSequence {
    pub fn new(alphas: Vec<Rational>) -> Result<Self> {
        if let Some(a) = alphas.iter().find(|a| *a < &Rational::zero()) {
            return invalid(format!("negative weight {a}"));
        }
        Ok(Self(alphas))
    }

    /// `alpha_j = 2^-j` for `j = 1..=len`.
    pub fn geometric(len: usize) -> Self {
        Self(
            (1..=len)
                .map(|j| Rational::one() / pow(&int(2), j as u32))
                .collect(),
        )
    }

    /// Weight of dimension `j` (1-based), 0 beyond the end.
    pub fn get(&self, j: usize) -> Rational {
        j.checked_sub(1)
            .and_then(|i| self.0.get(i))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.0
    }

    pub fn sum(&self) -> Rational {
        self.0.iter().fold(Rational::zero(), |a, b| a + b)
    }
}
