//! Finite simplicial complexes, hypergraphs and weighted complexes on `1..=n`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use itertools::Itertools;
use smallvec::SmallVec;

use crate::error::{invalid, Error, Result};

/// A strictly increasing list of 1-based vertices.
pub type Simplex = SmallVec<[u32; 4]>;

/// Sorts and deduplicates a vertex list.
pub fn simplex(vertices: &[u32]) -> Simplex {
    let mut s: Simplex = vertices.iter().copied().collect();
    s.sort_unstable();
    s.dedup();
    s
}

fn check_vertices(vertices: &[u32], n: usize) -> Result<()> {
    for &v in vertices {
        if v == 0 || v as usize > n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
    }
    Ok(())
}

/// All faces of `s` obtained by deleting exactly one vertex.
pub fn boundary(s: &[u32]) -> impl Iterator<Item = Simplex> + '_ {
    (0..s.len()).map(move |skip| {
        s.iter()
            .enumerate()
            .filter(|&(i, _)| i != skip)
            .map(|(_, &v)| v)
            .collect()
    })
}

/// Nonempty subsets of `s` with at least `min_size` elements.
pub fn subsets(s: &[u32], min_size: usize) -> Vec<Simplex> {
    let mut out = Vec::new();
    for mask in 1u32..(1u32 << s.len()) {
        if (mask.count_ones() as usize) < min_size {
            continue;
        }
        out.push(
            s.iter()
                .enumerate()
                .filter(|&(i, _)| mask >> i & 1 == 1)
                .map(|(_, &v)| v)
                .collect(),
        );
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SimplicialComplex {
    n: usize,
    simplices: BTreeSet<Simplex>,
}

impl SimplicialComplex {
    /// `n` isolated vertices.
    pub fn new(n: usize) -> Self {
        let simplices = (1..=n as u32).map(|v| Simplex::from_slice(&[v])).collect();
        Self { n, simplices }
    }

    /// Downward closure of `facets`, plus every singleton.
    pub fn from_facets<I, S>(n: usize, facets: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[u32]>,
    {
        let mut k = Self::new(n);
        for facet in facets {
            let facet = facet.as_ref();
            if facet.is_empty() {
                return Err(Error::EmptySet);
            }
            check_vertices(facet, n)?;
            k.insert_closed(&simplex(facet));
        }
        Ok(k)
    }

    /// The `d`-skeleton of the full simplex on `n` vertices.
    pub fn complete(n: usize, d: usize) -> Self {
        let mut simplices = BTreeSet::new();
        for size in 1..=(d + 1).min(n) {
            for c in (1..=n as u32).combinations(size) {
                simplices.insert(Simplex::from_vec(c));
            }
        }
        Self { n, simplices }
    }

    /// Builds a complex from a set that is already downward closed and contains
    /// all singletons. Used internally where closure holds by construction.
    pub(crate) fn from_closed_set(n: usize, simplices: BTreeSet<Simplex>) -> Self {
        debug_assert!(simplices
            .iter()
            .all(|s| s.len() < 2 || boundary(s).all(|f| simplices.contains(&f))));
        Self { n, simplices }
    }

    fn insert_closed(&mut self, s: &[u32]) {
        if s.is_empty() || self.simplices.contains(s) {
            return;
        }
        for face in subsets(s, 1) {
            self.simplices.insert(face);
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of stored simplices, singletons included.
    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// Membership of a sorted vertex list; the empty set is always a face.
    pub fn contains(&self, s: &[u32]) -> bool {
        s.is_empty() || self.simplices.contains(s)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Simplex> {
        self.simplices.iter()
    }

    pub fn simplices_of_dim(&self, d: usize) -> impl Iterator<Item = &Simplex> {
        self.simplices.iter().filter(move |s| s.len() == d + 1)
    }

    pub fn count_of_dim(&self, d: usize) -> usize {
        self.simplices_of_dim(d).count()
    }

    pub fn max_dim(&self) -> usize {
        self.simplices
            .iter()
            .map(|s| s.len())
            .max()
            .unwrap_or(1)
            .saturating_sub(1)
    }

    /// Simplices contained in no other simplex.
    pub fn facets(&self) -> Vec<Simplex> {
        self.simplices
            .iter()
            .filter(|s| {
                !(1..=self.n as u32).any(|v| {
                    if s.contains(&v) {
                        return false;
                    }
                    let mut t = (*s).clone();
                    let pos = t.iter().position(|&x| x > v).unwrap_or(t.len());
                    t.insert(pos, v);
                    self.simplices.contains(&t)
                })
            })
            .cloned()
            .collect()
    }

    /// Minimal vertex sets that are not simplices. Every candidate is a simplex
    /// extended by one larger vertex, so sizes never exceed `max_dim + 2`.
    pub fn antifacets(&self) -> Vec<Simplex> {
        let mut out = BTreeSet::new();
        for s in &self.simplices {
            let last = *s.last().unwrap();
            for v in last + 1..=self.n as u32 {
                let mut t = s.clone();
                t.push(v);
                if !self.simplices.contains(&t) && boundary(&t).all(|f| self.contains(&f)) {
                    out.insert(t);
                }
            }
        }
        out.into_iter().collect()
    }

    pub fn skeleton(&self, d: usize) -> Self {
        let simplices = self
            .simplices
            .iter()
            .filter(|s| s.len() <= d + 1)
            .cloned()
            .collect();
        Self { n: self.n, simplices }
    }

    /// Restriction to `vertices`, relabelled to `1..=|S|` in increasing order.
    pub fn induced_subcomplex(&self, vertices: &[u32]) -> Result<Self> {
        let vs = simplex(vertices);
        if vs.is_empty() {
            return Err(Error::EmptySet);
        }
        check_vertices(&vs, self.n)?;
        let mut simplices = BTreeSet::new();
        for sub in subsets(&vs, 1) {
            if self.simplices.contains(&sub) {
                let relabelled = sub
                    .iter()
                    .map(|v| vs.iter().position(|w| w == v).unwrap() as u32 + 1)
                    .collect();
                simplices.insert(relabelled);
            }
        }
        Ok(Self { n: vs.len(), simplices })
    }

    /// The `m`-blowup; clone `j` of vertex `v` becomes `(v - 1) * m + j`.
    pub fn blowup(&self, m: usize) -> Result<Self> {
        if m == 0 {
            return invalid("blowup factor must be positive");
        }
        let m32 = m as u32;
        let mut simplices = BTreeSet::new();
        for s in &self.simplices {
            for copies in std::iter::repeat(1..=m32).take(s.len()).multi_cartesian_product() {
                let t: Simplex = s
                    .iter()
                    .zip(&copies)
                    .map(|(&v, &j)| (v - 1) * m32 + j)
                    .collect();
                simplices.insert(t);
            }
        }
        Ok(Self { n: self.n * m, simplices })
    }

    /// Relabels vertex `v` as `perm[v - 1]`.
    pub fn relabel(&self, perm: &[u32]) -> Result<Self> {
        check_permutation(perm, self.n)?;
        Ok(self.relabel_unchecked(perm))
    }

    fn relabel_unchecked(&self, perm: &[u32]) -> Self {
        let simplices = self
            .simplices
            .iter()
            .map(|s| {
                let t: Vec<u32> = s.iter().map(|&v| perm[v as usize - 1]).collect();
                simplex(&t)
            })
            .collect();
        Self { n: self.n, simplices }
    }

    /// Smallest relabelling under the derived ordering. Factorial in `n`.
    pub fn canonical_form(&self) -> Result<Self> {
        if self.n > 8 {
            return Err(Error::Budget(format!("canonical form needs {}! relabellings", self.n)));
        }
        Ok((1..=self.n as u32)
            .permutations(self.n)
            .map(|p| self.relabel_unchecked(&p))
            .min()
            .unwrap_or_else(|| self.clone()))
    }

    pub fn is_isomorphic(&self, other: &Self) -> Result<bool> {
        if self.n != other.n || self.len() != other.len() {
            return Ok(false);
        }
        Ok(self.canonical_form()? == other.canonical_form()?)
    }

    /// All simplices with at least two vertices, as a hypergraph.
    pub fn to_hypergraph(&self) -> Hypergraph {
        Hypergraph {
            n: self.n,
            edges: self.simplices.iter().filter(|s| s.len() >= 2).cloned().collect(),
        }
    }

    /// Facet-list text: header `n <N> d <D>`, then one facet per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("n {} d {}\n", self.n, self.max_dim());
        for f in self.facets() {
            writeln!(out, "{}", f.iter().join(" ")).unwrap();
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let (n, d, sets) = parse_set_list(text, None)?;
        for (line, s) in &sets {
            if s.len() > d + 1 {
                return Err(Error::Parse {
                    line: *line,
                    message: format!("facet of dimension {} exceeds d = {d}", s.len() - 1),
                });
            }
        }
        Self::from_facets(n, sets.into_iter().map(|(_, s)| s))
    }
}

pub(crate) fn check_permutation(perm: &[u32], n: usize) -> Result<()> {
    if perm.len() != n {
        return invalid(format!("permutation has {} entries, expected {n}", perm.len()));
    }
    let mut seen = vec![false; n];
    for &v in perm {
        if v == 0 || v as usize > n || std::mem::replace(&mut seen[v as usize - 1], true) {
            return invalid("not a bijection");
        }
    }
    Ok(())
}

type SetList = (usize, usize, Vec<(usize, Vec<u32>)>);

fn parse_set_list(text: &str, keyword: Option<&str>) -> Result<SetList> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "missing header".into(),
    })?;
    let bad_header = || Error::Parse {
        line: hline,
        message: format!("expected header `{}n <N> d <D>`", keyword.map(|k| format!("{k} ")).unwrap_or_default()),
    };
    let mut tokens = header.split_whitespace();
    if let Some(k) = keyword {
        if tokens.next() != Some(k) {
            return Err(bad_header());
        }
    }
    let fields: Vec<&str> = tokens.collect();
    let (n, d) = match fields.as_slice() {
        ["n", n, "d", d] => (
            n.parse::<usize>().map_err(|_| bad_header())?,
            d.parse::<usize>().map_err(|_| bad_header())?,
        ),
        _ => return Err(bad_header()),
    };
    let mut sets = Vec::new();
    for (line, l) in lines {
        let vs = l
            .split_whitespace()
            .map(|t| t.parse::<u32>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::Parse {
                line,
                message: e.to_string(),
            })?;
        if vs.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Parse {
                line,
                message: "vertices must be strictly increasing".into(),
            });
        }
        if let Err(e) = check_vertices(&vs, n) {
            return Err(Error::Parse {
                line,
                message: e.to_string(),
            });
        }
        sets.push((line, vs));
    }
    Ok((n, d, sets))
}

/// Arbitrary set system on `1..=n`; singletons are implicit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    n: usize,
    edges: BTreeSet<Simplex>,
}

impl Hypergraph {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            edges: BTreeSet::new(),
        }
    }

    pub fn from_edges<I, S>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[u32]>,
    {
        let mut h = Self::new(n);
        for e in edges {
            h.insert(e.as_ref())?;
        }
        Ok(h)
    }

    /// Inserts an edge; sets of size below two are ignored.
    pub fn insert(&mut self, edge: &[u32]) -> Result<()> {
        check_vertices(edge, self.n)?;
        let e = simplex(edge);
        if e.len() >= 2 {
            self.edges.insert(e);
        }
        Ok(())
    }

    pub(crate) fn insert_sorted(&mut self, edge: Simplex) {
        self.edges.insert(edge);
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, s: &[u32]) -> bool {
        s.len() < 2 || self.edges.contains(s)
    }

    pub fn edges(&self) -> impl Iterator<Item = &Simplex> {
        self.edges.iter()
    }

    pub fn count_of_size(&self, size: usize) -> usize {
        self.edges.iter().filter(|e| e.len() == size).count()
    }

    /// Largest complex all of whose simplices of size at least two are edges.
    pub fn lower_closure(&self) -> SimplicialComplex {
        let mut simplices: BTreeSet<Simplex> =
            (1..=self.n as u32).map(|v| Simplex::from_slice(&[v])).collect();
        let mut level: Vec<Simplex> = simplices.iter().cloned().collect();
        while !level.is_empty() {
            let mut next = Vec::new();
            for s in &level {
                let last = *s.last().unwrap();
                for v in last + 1..=self.n as u32 {
                    let mut t = s.clone();
                    t.push(v);
                    if self.edges.contains(&t) && boundary(&t).all(|f| simplices.contains(&f)) {
                        next.push(t);
                    }
                }
            }
            simplices.extend(next.iter().cloned());
            level = next;
        }
        SimplicialComplex::from_closed_set(self.n, simplices)
    }

    /// Smallest complex containing every edge.
    pub fn upper_closure(&self) -> SimplicialComplex {
        let mut k = SimplicialComplex::new(self.n);
        for e in &self.edges {
            k.insert_closed(e);
        }
        k
    }

    /// Text form: header `hyper n <N> d <D>`, then one edge per line.
    pub fn to_text(&self) -> String {
        let d = self.edges.iter().map(|e| e.len() - 1).max().unwrap_or(0);
        let mut out = format!("hyper n {} d {}\n", self.n, d);
        for e in &self.edges {
            writeln!(out, "{}", e.iter().join(" ")).unwrap();
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let (n, _, sets) = parse_set_list(text, Some("hyper"))?;
        Self::from_edges(n, sets.into_iter().map(|(_, s)| s))
    }
}

/// Weighted complex on the full power set of `1..=n`. Missing weights are 1;
/// sets larger than `max_dim + 1` have weight 0.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedComplex {
    n: usize,
    max_dim: usize,
    weights: BTreeMap<Simplex, f64>,
}

impl WeightedComplex {
    pub fn new(n: usize, max_dim: usize) -> Self {
        Self {
            n,
            max_dim,
            weights: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    pub fn set(&mut self, s: &[u32], w: f64) -> Result<()> {
        check_vertices(s, self.n)?;
        if !(0.0..=1.0).contains(&w) {
            return Err(Error::ValueOutOfRange(w));
        }
        let s = simplex(s);
        if s.len() < 2 {
            return invalid("singletons always have weight 1");
        }
        if s.len() > self.max_dim + 1 {
            return invalid(format!("set of size {} exceeds the truncation", s.len()));
        }
        if w == 1.0 {
            self.weights.remove(&s);
        } else {
            self.weights.insert(s, w);
        }
        Ok(())
    }

    pub fn weight(&self, s: &[u32]) -> f64 {
        match s.len() {
            0 | 1 => 1.0,
            k if k > self.max_dim + 1 => 0.0,
            _ => self.weights.get(s).copied().unwrap_or(1.0),
        }
    }

    /// Stored weights, i.e. those different from 1.
    pub fn stored(&self) -> impl Iterator<Item = (&Simplex, f64)> {
        self.weights.iter().map(|(s, &w)| (s, w))
    }

    /// Faceted weights: each set gets the product of the weights of all its
    /// subsets of size at least two.
    pub fn faceted(&self) -> Self {
        let mut candidates = BTreeSet::new();
        let all: Vec<u32> = (1..=self.n as u32).collect();
        for key in self.weights.keys() {
            let rest: Vec<u32> = all.iter().copied().filter(|v| !key.contains(v)).collect();
            for extra in 0..=(self.max_dim + 1 - key.len()).min(rest.len()) {
                for add in rest.iter().copied().combinations(extra) {
                    let mut t: Vec<u32> = key.to_vec();
                    t.extend(add);
                    candidates.insert(simplex(&t));
                }
            }
        }
        let mut out = Self::new(self.n, self.max_dim);
        for s in candidates {
            let w: f64 = subsets(&s, 2).iter().map(|t| self.weight(t)).product();
            if w != 1.0 {
                out.weights.insert(s, w);
            }
        }
        out
    }
}

/// Every labelled complex on `1..=n` of dimension at most `d`, each once.
pub fn enumerate_complexes(n: usize, d: usize) -> Result<Vec<SimplicialComplex>> {
    if n > 5 {
        return Err(Error::Budget(format!("enumeration on {n} > 5 vertices")));
    }
    let singletons: Vec<u32> = (0..n).map(|i| 1u32 << i).collect();
    let mut out = Vec::new();
    extend_levels(n, d, 1, &singletons, &mut singletons.clone(), &mut out);
    Ok(out)
}

fn extend_levels(
    n: usize,
    d: usize,
    dim: usize,
    previous: &[u32],
    chosen: &mut Vec<u32>,
    out: &mut Vec<SimplicialComplex>,
) {
    let candidates: Vec<u32> = if dim > d {
        Vec::new()
    } else {
        (1u32..1 << n)
            .filter(|&mask| mask.count_ones() as usize == dim + 1)
            .filter(|&mask| {
                (0..n)
                    .filter(|&i| mask >> i & 1 == 1)
                    .all(|i| previous.contains(&(mask & !(1 << i))))
            })
            .collect()
    };
    if candidates.is_empty() {
        out.push(SimplicialComplex::from_closed_set(
            n,
            chosen.iter().map(|&m| mask_to_simplex(m)).collect(),
        ));
        return;
    }
    for pick in 0u64..(1u64 << candidates.len()) {
        let level: Vec<u32> = candidates
            .iter()
            .enumerate()
            .filter(|&(i, _)| pick >> i & 1 == 1)
            .map(|(_, &m)| m)
            .collect();
        let mark = chosen.len();
        chosen.extend(&level);
        if level.is_empty() {
            out.push(SimplicialComplex::from_closed_set(
                n,
                chosen.iter().map(|&m| mask_to_simplex(m)).collect(),
            ));
        } else {
            extend_levels(n, d, dim + 1, &level, chosen, out);
        }
        chosen.truncate(mark);
    }
}

fn mask_to_simplex(mask: u32) -> Simplex {
    (0..32).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[u32]) -> Simplex {
        simplex(v)
    }

    fn example() -> SimplicialComplex {
        SimplicialComplex::from_facets(4, [vec![1, 2, 3], vec![3, 4]]).unwrap()
    }

    #[test]
    fn closure_of_two_facets() {
        let k = example();
        let expected: BTreeSet<Simplex> = [
            &[1][..], &[2], &[3], &[4], &[1, 2], &[1, 3], &[2, 3], &[3, 4], &[1, 2, 3],
        ]
        .iter()
        .map(|v| s(v))
        .collect();
        assert_eq!(k.iter().cloned().collect::<BTreeSet<_>>(), expected);
        assert_eq!(SimplicialComplex::from_facets(2, Vec::<Vec<u32>>::new()).unwrap().len(), 2);
        assert_eq!(SimplicialComplex::from_facets(3, [[1, 2, 3]]).unwrap().len(), 7);
    }

    #[test]
    fn from_facets_rejects_bad_input() {
        assert!(matches!(
            SimplicialComplex::from_facets(3, [vec![1, 4]]),
            Err(Error::VertexOutOfRange { vertex: 4, n: 3 })
        ));
        assert_eq!(
            SimplicialComplex::from_facets(3, [Vec::<u32>::new()]),
            Err(Error::EmptySet)
        );
    }

    #[test]
    fn facets_and_antifacets() {
        let k = example();
        assert_eq!(k.facets(), vec![s(&[1, 2, 3]), s(&[3, 4])]);
        assert_eq!(k.antifacets(), vec![s(&[1, 4]), s(&[2, 4])]);
        let full = SimplicialComplex::complete(3, 2);
        assert_eq!(full.facets(), vec![s(&[1, 2, 3])]);
        assert!(full.antifacets().is_empty());
        let empty = SimplicialComplex::new(3);
        assert_eq!(empty.facets().len(), 3);
        assert_eq!(empty.antifacets(), vec![s(&[1, 2]), s(&[1, 3]), s(&[2, 3])]);
    }

    #[test]
    fn antifacet_of_hollow_triangle_has_size_three() {
        let k = SimplicialComplex::from_facets(3, [[1, 2], [1, 3], [2, 3]]).unwrap();
        assert_eq!(k.antifacets(), vec![s(&[1, 2, 3])]);
    }

    #[test]
    fn closures() {
        let h = Hypergraph::from_edges(3, [[1, 2, 3]]).unwrap();
        assert_eq!(h.lower_closure(), SimplicialComplex::new(3));
        assert_eq!(h.upper_closure(), SimplicialComplex::complete(3, 2));

        let all = Hypergraph::from_edges(3, [&[1, 2][..], &[1, 3], &[2, 3], &[1, 2, 3]]).unwrap();
        assert_eq!(all.lower_closure(), SimplicialComplex::complete(3, 2));

        let path = Hypergraph::from_edges(3, [[1, 2], [2, 3]]).unwrap();
        assert_eq!(
            path.lower_closure(),
            SimplicialComplex::from_facets(3, [[1, 2], [2, 3]]).unwrap()
        );
        assert_eq!(Hypergraph::new(2).upper_closure(), SimplicialComplex::new(2));
        let tet = Hypergraph::from_edges(4, [[1, 2, 3, 4]]).unwrap();
        assert_eq!(tet.upper_closure().len(), 15);
    }

    #[test]
    fn blowups() {
        let edge = SimplicialComplex::from_facets(2, [[1, 2]]).unwrap();
        let b = edge.blowup(2).unwrap();
        assert_eq!(b.n(), 4);
        assert_eq!(b.count_of_dim(1), 4);
        assert!(!b.contains(&[1, 2]));
        assert!(b.contains(&[1, 3]));
        assert_eq!(example().blowup(1).unwrap(), example());
        let tri = SimplicialComplex::complete(3, 2).blowup(2).unwrap();
        assert_eq!(tri.count_of_dim(2), 8);
        assert!(edge.blowup(0).is_err());
    }

    #[test]
    fn skeleton_and_induced() {
        let full = SimplicialComplex::complete(3, 2);
        let sk = full.skeleton(1);
        assert_eq!(sk.count_of_dim(1), 3);
        assert_eq!(sk.count_of_dim(2), 0);
        assert_eq!(example().skeleton(5), example());
        let edges: Vec<Simplex> = example().skeleton(1).simplices_of_dim(1).cloned().collect();
        assert_eq!(edges, vec![s(&[1, 2]), s(&[1, 3]), s(&[2, 3]), s(&[3, 4])]);

        assert_eq!(
            full.induced_subcomplex(&[1, 2]).unwrap(),
            SimplicialComplex::complete(2, 1)
        );
        assert_eq!(example().induced_subcomplex(&[1, 4]).unwrap(), SimplicialComplex::new(2));
        assert_eq!(example().induced_subcomplex(&[1, 2, 3, 4]).unwrap(), example());
        assert!(example().induced_subcomplex(&[]).is_err());
        assert!(example().induced_subcomplex(&[5]).is_err());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_complexes(2, 1).unwrap().len(), 2);
        assert_eq!(enumerate_complexes(3, 1).unwrap().len(), 8);
        assert_eq!(enumerate_complexes(3, 2).unwrap().len(), 9);
        assert!(enumerate_complexes(6, 1).is_err());
    }

    #[test]
    fn enumeration_matches_brute_force_closure_check() {
        // Independent count: every subset family of the non-singleton subsets of
        // [4] that is downward closed.
        let n = 4usize;
        let sets: Vec<u32> = (1u32..1 << n).filter(|m| m.count_ones() >= 2).collect();
        let mut count = 0;
        for pick in 0u32..(1 << sets.len()) {
            let fam: Vec<u32> = (0..sets.len())
                .filter(|&i| pick >> i & 1 == 1)
                .map(|i| sets[i])
                .collect();
            let closed = fam.iter().all(|&m| {
                (0..n).filter(|&i| m >> i & 1 == 1).all(|i| {
                    let f = m & !(1 << i);
                    f.count_ones() < 2 || fam.contains(&f)
                })
            });
            if closed {
                count += 1;
            }
        }
        assert_eq!(enumerate_complexes(4, 3).unwrap().len(), count);
        let listed: BTreeSet<_> = enumerate_complexes(4, 3).unwrap().into_iter().collect();
        assert_eq!(listed.len(), count);
    }

    #[test]
    fn faceted_weights() {
        let mut h = WeightedComplex::new(3, 2);
        for p in [[1, 2], [1, 3], [2, 3]] {
            h.set(&p, 0.5).unwrap();
        }
        assert_eq!(h.faceted().weight(&[1, 2, 3]), 0.125);
        assert_eq!(WeightedComplex::new(3, 2).faceted(), WeightedComplex::new(3, 2));
        let mut z = WeightedComplex::new(4, 3);
        z.set(&[1, 2], 0.0).unwrap();
        let f = z.faceted();
        for t in [&[1, 2][..], &[1, 2, 3], &[1, 2, 4], &[1, 2, 3, 4]] {
            assert_eq!(f.weight(t), 0.0);
        }
        assert_eq!(f.weight(&[1, 3, 4]), 1.0);
    }

    #[test]
    fn text_round_trip() {
        let k = example();
        assert_eq!(k.to_text(), "n 4 d 2\n1 2 3\n3 4\n");
        assert_eq!(SimplicialComplex::from_text(&k.to_text()).unwrap(), k);
        let h = Hypergraph::from_edges(4, [&[1, 2, 3][..], &[2, 4]]).unwrap();
        assert_eq!(Hypergraph::from_text(&h.to_text()).unwrap(), h);
        assert!(matches!(
            SimplicialComplex::from_text("n 3 d 1\n1 2 3\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            SimplicialComplex::from_text("n 3 d 1\n2 1\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn canonical_form_identifies_relabellings() {
        let k = example();
        let r = k.relabel(&[4, 3, 2, 1]).unwrap();
        assert_ne!(k, r);
        assert!(k.is_isomorphic(&r).unwrap());
        assert!(k.relabel(&[1, 1, 2, 3]).is_err());
    }
}
