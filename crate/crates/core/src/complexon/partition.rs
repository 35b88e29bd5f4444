use num_traits::{One, Zero};

use crate::error::{invalid, Result};
use crate::rational::{int, Rational};

/// A partition of `[0, 1)` whose classes are finite unions of half-open
/// intervals with rational endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    classes: Vec<Vec<(Rational, Rational)>>,
}

impl Partition {
    pub fn new(classes: Vec<Vec<(Rational, Rational)>>) -> Result<Self> {
        let mut atoms: Vec<&(Rational, Rational)> = Vec::new();
        for class in &classes {
            if class.is_empty() {
                return invalid("empty partition class");
            }
            for iv in class {
                if iv.0 >= iv.1 {
                    return invalid(format!("degenerate interval [{}, {})", iv.0, iv.1));
                }
                atoms.push(iv);
            }
        }
        atoms.sort();
        let mut at = Rational::zero();
        for (a, b) in atoms {
            if *a != at {
                return invalid("intervals must tile [0, 1) without gaps or overlaps");
            }
            at = b.clone();
        }
        if at != Rational::one() {
            return invalid("intervals must cover [0, 1)");
        }
        Ok(Self { classes })
    }

    /// `m` equal intervals.
    pub fn equal(m: usize) -> Self {
        let m_r = int(m as i64);
        let classes = (0..m)
            .map(|i| vec![(int(i as i64) / &m_r, int(i as i64 + 1) / &m_r)])
            .collect();
        Self { classes }
    }

    /// Consecutive intervals with the given positive widths summing to one.
    pub fn from_widths(widths: &[Rational]) -> Result<Self> {
        let mut at = Rational::zero();
        let mut classes = Vec::new();
        for w in widths {
            let next = &at + w;
            classes.push(vec![(at, next.clone())]);
            at = next;
        }
        Self::new(classes)
    }

    /// Groups the blocks of an `m`-block stepfunction (given as `widths`) into
    /// classes; `labels[b]` is the class of block `b`.
    pub fn from_block_labels(widths: &[Rational], labels: &[usize]) -> Result<Self> {
        if widths.len() != labels.len() {
            return invalid("one label per block required");
        }
        let k = labels.iter().max().map_or(0, |&l| l + 1);
        let mut classes = vec![Vec::new(); k];
        let mut at = Rational::zero();
        for (w, &l) in widths.iter().zip(labels) {
            let next = &at + w;
            classes[l].push((at, next.clone()));
            at = next;
        }
        Self::new(classes)
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[Vec<(Rational, Rational)>] {
        &self.classes
    }

    pub fn measure(&self, class: usize) -> Rational {
        self.classes[class]
            .iter()
            .fold(Rational::zero(), |acc, (a, b)| acc + (b - a))
    }

    /// All interval endpoints, sorted, including 0 and 1.
    pub fn breakpoints(&self) -> Vec<Rational> {
        let mut pts: Vec<Rational> = self
            .classes
            .iter()
            .flatten()
            .flat_map(|(a, b)| [a.clone(), b.clone()])
            .collect();
        pts.sort();
        pts.dedup();
        pts
    }

    /// Class containing the half-open atom starting at `left`.
    pub fn class_of(&self, point: &Rational) -> usize {
        self.classes
            .iter()
            .position(|c| c.iter().any(|(a, b)| a <= point && point < b))
            .expect("point inside [0, 1)")
    }

    /// True when every class has measure exactly `1 / len`.
    pub fn is_equipartition(&self) -> bool {
        let target = Rational::one() / int(self.len() as i64);
        (0..self.len()).all(|c| self.measure(c) == target)
    }

    /// Every class of `self` lies inside a class of `coarse`.
    pub fn refines(&self, coarse: &Partition) -> bool {
        self.classes.iter().all(|class| {
            let owner = coarse.class_of(&class[0].0);
            class.iter().all(|(a, b)| {
                coarse.classes[owner]
                    .iter()
                    .any(|(c, d)| c <= a && b <= d)
            })
        })
    }
}
