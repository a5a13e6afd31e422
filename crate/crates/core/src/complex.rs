//! Finite simple graphs viewed as flag complexes.
//!
//! A [`FlagComplex`] is determined by its 1-skeleton: its simplices are
//! exactly the cliques of the edge set. Vertex ids are dense `0..n` and every
//! set-valued output is sorted so that reports are reproducible.

use std::collections::VecDeque;
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// Default bound on the number of cliques a single enumeration may produce.
pub const DEFAULT_CLIQUE_CAP: usize = 1_000_000;

/// A strictly increasing list of vertex ids.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(Vec::new())
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(vec![v])
    }

    /// Builds a set from already sorted, duplicate-free ids.
    pub fn from_sorted(ids: Vec<usize>) -> Result<Self> {
        if ids.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Input(format!(
                "vertex set {ids:?} is not strictly increasing"
            )));
        }
        Ok(VertexSet(ids))
    }

    pub fn range(n: usize) -> Self {
        VertexSet((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    pub fn first(&self) -> Option<usize> {
        self.0.first().copied()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.iter().filter(|&v| !other.contains(v)).collect())
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        self.iter().chain(other.iter()).collect()
    }

    /// Position of `v` inside the set.
    pub fn position(&self, v: usize) -> Option<usize> {
        self.0.binary_search(&v).ok()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut ids: Vec<usize> = iter.into_iter().collect();
        ids.sort_unstable();
        ids.dedup();
        VertexSet(ids)
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// A finite simple graph together with the flag complex it spans.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlagComplex {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    neighbors: Vec<Vec<usize>>,
    adjacency: Vec<FixedBitSet>,
}

impl FlagComplex {
    /// Builds a complex on `n` vertices. Edges are normalized to `(i, j)` with
    /// `i < j` and sorted; self-loops, duplicates and bad ids are rejected.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut normalized = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::Input(format!(
                    "edge ({a}, {b}) has an endpoint outside 0..{n}"
                )));
            }
            if a == b {
                return Err(Error::Input(format!("self-loop at vertex {a}")));
            }
            normalized.push((a.min(b), a.max(b)));
        }
        normalized.sort_unstable();
        if let Some(w) = normalized.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Input(format!(
                "duplicate edge ({}, {})",
                w[0].0, w[0].1
            )));
        }
        Ok(Self::from_normalized(n, normalized))
    }

    pub(crate) fn from_normalized(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut neighbors = vec![Vec::new(); n];
        let mut adjacency = vec![FixedBitSet::with_capacity(n); n];
        for &(a, b) in &edges {
            neighbors[a].push(b);
            neighbors[b].push(a);
            adjacency[a].insert(b);
            adjacency[b].insert(a);
        }
        for list in &mut neighbors {
            list.sort_unstable();
        }
        FlagComplex {
            vertex_count: n,
            edges,
            neighbors,
            adjacency,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    /// Open neighbourhood as a bitset.
    pub fn adjacency_row(&self, v: usize) -> &FixedBitSet {
        &self.adjacency[v]
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].contains(v)
    }

    pub fn adjacent_or_equal(&self, u: usize, v: usize) -> bool {
        u == v || self.is_adjacent(u, v)
    }

    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        vertices
            .iter()
            .enumerate()
            .all(|(i, &a)| vertices[i + 1..].iter().all(|&b| self.is_adjacent(a, b)))
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.vertex_count {
            Err(Error::Input(format!(
                "vertex {v} out of range 0..{}",
                self.vertex_count
            )))
        } else {
            Ok(())
        }
    }

    /// BFS distances from `source`; `None` marks unreachable vertices.
    pub fn bfs(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertex_count];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap_or_default();
            for &w in &self.neighbors[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Path-metric distance; `Ok(None)` means the vertices lie in different
    /// components.
    pub fn distance(&self, u: usize, v: usize) -> Result<Option<usize>> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        Ok(self.bfs(u)[v])
    }

    pub fn distance_matrix(&self) -> DistanceMatrix {
        DistanceMatrix::new(self)
    }

    /// Largest pairwise distance; `Ok(None)` when disconnected.
    pub fn diameter(&self) -> Result<Option<usize>> {
        if self.vertex_count == 0 {
            return Err(Error::Input("diameter of the empty complex".into()));
        }
        Ok(self.distance_matrix().diameter())
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count == 0 || self.bfs(0).iter().all(Option::is_some)
    }

    /// `({v} ∪ neighbours(v)) ∩ restrict`.
    pub fn closed_neighborhood(&self, v: usize, restrict: &VertexSet) -> Result<VertexSet> {
        self.check_vertex(v)?;
        if let Some(bad) = restrict.iter().find(|&u| u >= self.vertex_count) {
            return Err(Error::Input(format!(
                "restriction contains invalid vertex {bad}"
            )));
        }
        Ok(restrict
            .iter()
            .filter(|&u| self.adjacent_or_equal(u, v))
            .collect())
    }

    /// All cliques with at most `max_dim + 1` vertices, ordered by size and
    /// then lexicographically. Fails once more than [`DEFAULT_CLIQUE_CAP`]
    /// cliques have been produced.
    pub fn enumerate_cliques(&self, max_dim: usize) -> Result<Vec<VertexSet>> {
        self.enumerate_cliques_capped(max_dim, DEFAULT_CLIQUE_CAP)
    }

    pub fn enumerate_cliques_capped(&self, max_dim: usize, cap: usize) -> Result<Vec<VertexSet>> {
        let max_size = max_dim + 1;
        let mut out = Vec::new();
        let mut stack = Vec::with_capacity(max_size);
        for v in 0..self.vertex_count {
            let later: Vec<usize> = self.neighbors[v]
                .iter()
                .copied()
                .filter(|&w| w > v)
                .collect();
            stack.push(v);
            self.extend_cliques(&mut stack, &later, max_size, cap, &mut out)?;
            stack.pop();
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Ok(out)
    }

    fn extend_cliques(
        &self,
        stack: &mut Vec<usize>,
        candidates: &[usize],
        max_size: usize,
        cap: usize,
        out: &mut Vec<VertexSet>,
    ) -> Result<()> {
        if out.len() >= cap {
            return Err(Error::CapExceeded {
                what: "clique",
                limit: cap,
            });
        }
        out.push(VertexSet(stack.clone()));
        if stack.len() == max_size {
            return Ok(());
        }
        for (i, &w) in candidates.iter().enumerate() {
            let next: Vec<usize> = candidates[i + 1..]
                .iter()
                .copied()
                .filter(|&x| self.is_adjacent(w, x))
                .collect();
            stack.push(w);
            self.extend_cliques(stack, &next, max_size, cap, out)?;
            stack.pop();
        }
        Ok(())
    }

    /// Size of a largest clique (0 for the empty complex), found by
    /// Bron–Kerbosch with pivoting.
    pub fn clique_number(&self) -> usize {
        let n = self.vertex_count;
        let mut all = FixedBitSet::with_capacity(n);
        all.insert_range(..);
        let mut best = 0;
        self.bron_kerbosch(0, all, FixedBitSet::with_capacity(n), &mut best);
        best
    }

    fn bron_kerbosch(&self, depth: usize, p: FixedBitSet, x: FixedBitSet, best: &mut usize) {
        if p.is_clear() {
            if x.is_clear() {
                *best = (*best).max(depth);
            }
            return;
        }
        if depth + p.count_ones(..) <= *best {
            return;
        }
        let pivot = p
            .union(&x)
            .max_by_key(|&u| p.intersection(&self.adjacency[u]).count())
            .unwrap_or_default();
        let mut p = p;
        let mut x = x;
        let branch: Vec<usize> = p.difference(&self.adjacency[pivot]).collect();
        for v in branch {
            let mut np = p.clone();
            np.intersect_with(&self.adjacency[v]);
            let mut nx = x.clone();
            nx.intersect_with(&self.adjacency[v]);
            self.bron_kerbosch(depth + 1, np, nx, best);
            p.set(v, false);
            x.insert(v);
        }
    }

    /// Subcomplex induced on `s`. Vertex `i` of the result is `s[i]`; the
    /// returned table maps new ids back to ambient ids.
    pub fn induced(&self, s: &VertexSet) -> Result<(FlagComplex, Vec<usize>)> {
        if s.is_empty() {
            return Err(Error::Input(
                "induced subcomplex on an empty vertex set".into(),
            ));
        }
        if let Some(bad) = s.iter().find(|&v| v >= self.vertex_count) {
            return Err(Error::Input(format!("vertex {bad} out of range")));
        }
        let remap = s.as_slice().to_vec();
        let mut edges = Vec::new();
        for (i, &a) in remap.iter().enumerate() {
            for (j, &b) in remap.iter().enumerate().skip(i + 1) {
                if self.is_adjacent(a, b) {
                    edges.push((i, j));
                }
            }
        }
        Ok((FlagComplex::from_normalized(remap.len(), edges), remap))
    }
}

/// All-pairs BFS distances. Unreachable pairs are stored as `u32::MAX`.
#[derive(Debug, Clone)]
pub struct DistanceMatrix {
    n: usize,
    dist: Vec<u32>,
}

impl DistanceMatrix {
    const INF: u32 = u32::MAX;

    pub fn new(c: &FlagComplex) -> Self {
        let n = c.vertex_count();
        let mut dist = vec![Self::INF; n * n];
        for s in 0..n {
            for (t, d) in c.bfs(s).into_iter().enumerate() {
                if let Some(d) = d {
                    dist[s * n + t] = d as u32;
                }
            }
        }
        DistanceMatrix { n, dist }
    }

    pub fn get(&self, u: usize, v: usize) -> Option<usize> {
        match self.dist[u * self.n + v] {
            Self::INF => None,
            d => Some(d as usize),
        }
    }

    /// Distance for vertices known to be connected; panics otherwise.
    pub fn finite(&self, u: usize, v: usize) -> usize {
        self.get(u, v).expect("vertices in different components")
    }

    pub fn diameter(&self) -> Option<usize> {
        if self.dist.contains(&Self::INF) {
            None
        } else {
            Some(self.dist.iter().copied().max().unwrap_or(0) as usize)
        }
    }

    pub fn is_connected(&self) -> bool {
        !self.dist.contains(&Self::INF)
    }
}
