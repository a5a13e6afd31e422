//! Complexes equipped with a projection `π_σ` and a base-point order `<_σ`,
//! plus exhaustive checkers for the properties the dismantling and
//! fixed-point algorithms rely on.
//!
//! Structures are either backed by a [`HeightFamily`] or by explicit tables.
//! Table-backed instances are never trusted: every checker reports
//! violations with a lexicographically least witness tuple, and the
//! algorithms downstream re-verify what they use.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};
use std::fmt;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::complex::{DistanceMatrix, FlagComplex, VertexSet};
use crate::cover::{self, HeightFamily, HeightFunction};
use crate::error::{Error, Result};

/// Default bound on the number of vertices a structure may have.
pub const DEFAULT_VERTEX_CAP: usize = 400;

const NO_VERTEX: usize = usize::MAX;

/// Where the projection and order tables came from.
#[derive(Debug, Clone)]
pub enum Backing {
    Model(HeightFamily),
    Table,
}

/// A connected flag complex with `π_σ(ρ)` for all `σ ≠ ρ` and `<_σ` on all
/// ordered adjacent pairs.
#[derive(Debug, Clone)]
pub struct ProjectionStructure {
    complex: FlagComplex,
    dist: DistanceMatrix,
    proj: Vec<usize>,
    arc_offsets: Vec<usize>,
    arcs: usize,
    ord: Vec<bool>,
    backing: Backing,
}

impl ProjectionStructure {
    /// Model-backed structure over a convex-closed height family.
    ///
    /// The tables are filled from lift overlaps directly: the projection drops
    /// `g` by one on the columns where `g - f` attains its top value, and
    /// `ρ <_σ ρ'` holds when the translate of `ρ` just below `ρ'` meets the
    /// top translate of `σ` that `ρ'` reaches.
    pub fn from_family(fam: &HeightFamily) -> Result<Self> {
        Self::from_family_capped(fam, DEFAULT_VERTEX_CAP)
    }

    pub fn from_family_capped(fam: &HeightFamily, vertex_cap: usize) -> Result<Self> {
        check_cap(fam.len(), vertex_cap)?;
        if let Some((s, r)) = fam.convexity_violation() {
            return Err(Error::structural(
                "family is not convex-closed; projection leaves the vertex set",
                vec![s, r],
            ));
        }
        let members = fam.members();
        let proj_fn = |s: usize, r: usize| {
            let image = lift_projection(&members[s], &members[r]);
            fam.id_of(&image)
                .expect("closed family contains projections")
        };
        let ord_fn =
            |s: usize, a: usize, b: usize| lift_order(&members[s], &members[a], &members[b]);
        let mut ps = Self::build(fam.complex().clone(), proj_fn, ord_fn)?;
        ps.backing = Backing::Model(fam.clone());
        Ok(ps)
    }

    /// Table-backed structure. Every `proj` entry for `σ ≠ ρ` and every `ord`
    /// entry for `σ` and ordered adjacent `(ρ, ρ')` must be present.
    pub fn from_table(
        complex: FlagComplex,
        proj: &HashMap<(usize, usize), usize>,
        ord: &HashMap<(usize, usize, usize), bool>,
    ) -> Result<Self> {
        let n = complex.vertex_count();
        for (&(s, r), &v) in proj {
            if s >= n || r >= n || v >= n {
                return Err(Error::Input(format!(
                    "proj {s} {r} {v}: vertex out of range"
                )));
            }
            if s == r {
                return Err(Error::Input(format!("proj {s} {r}: base equals target")));
            }
        }
        for &(s, a, b) in ord.keys() {
            if s >= n || a >= n || b >= n || !complex.is_adjacent(a, b) {
                return Err(Error::Input(format!(
                    "ord {s} {a} {b}: order is defined on adjacent pairs only"
                )));
            }
        }
        for s in 0..n {
            for r in 0..n {
                if s != r && !proj.contains_key(&(s, r)) {
                    return Err(Error::Input(format!(
                        "missing proj entry for base {s}, vertex {r}"
                    )));
                }
            }
        }
        for s in 0..n {
            for &(a, b) in complex.edges() {
                for key in [(s, a, b), (s, b, a)] {
                    if !ord.contains_key(&key) {
                        return Err(Error::Input(format!(
                            "missing ord entry for base {}, pair ({}, {})",
                            key.0, key.1, key.2
                        )));
                    }
                }
            }
        }
        Self::build(complex, |s, r| proj[&(s, r)], |s, a, b| ord[&(s, a, b)])
    }

    /// Table-backed structure from closures; convenient for constructed
    /// counterexamples.
    pub fn from_fns<P, O>(complex: FlagComplex, proj: P, ord: O) -> Result<Self>
    where
        P: Fn(usize, usize) -> usize,
        O: Fn(usize, usize, usize) -> bool,
    {
        let n = complex.vertex_count();
        let checked = |s: usize, r: usize| {
            let v = proj(s, r);
            if v >= n {
                NO_VERTEX
            } else {
                v
            }
        };
        let ps = Self::build(complex, checked, ord)?;
        if let Some(i) = ps
            .proj
            .iter()
            .enumerate()
            .position(|(i, &v)| v == NO_VERTEX && i / n != i % n)
        {
            return Err(Error::Input(format!(
                "projection of {} toward {} is out of range",
                i % n,
                i / n
            )));
        }
        Ok(ps)
    }

    fn build<P, O>(complex: FlagComplex, proj: P, ord: O) -> Result<Self>
    where
        P: Fn(usize, usize) -> usize,
        O: Fn(usize, usize, usize) -> bool,
    {
        let n = complex.vertex_count();
        if n == 0 {
            return Err(Error::Input(
                "projection structure on an empty complex".into(),
            ));
        }
        let dist = complex.distance_matrix();
        if !dist.is_connected() {
            let far = (1..n).find(|&v| dist.get(0, v).is_none()).unwrap_or(0);
            return Err(Error::Input(format!(
                "projection structures need a connected complex (0 and {far} are disconnected)"
            )));
        }
        let mut arc_offsets = Vec::with_capacity(n + 1);
        let mut arcs = 0;
        for v in 0..n {
            arc_offsets.push(arcs);
            arcs += complex.neighbors(v).len();
        }
        arc_offsets.push(arcs);
        let mut table = vec![NO_VERTEX; n * n];
        for s in 0..n {
            for r in 0..n {
                if s != r {
                    table[s * n + r] = proj(s, r);
                }
            }
        }
        let mut order = vec![false; n * arcs];
        for s in 0..n {
            for a in 0..n {
                for (k, &b) in complex.neighbors(a).iter().enumerate() {
                    order[s * arcs + arc_offsets[a] + k] = ord(s, a, b);
                }
            }
        }
        Ok(ProjectionStructure {
            complex,
            dist,
            proj: table,
            arc_offsets,
            arcs,
            ord: order,
            backing: Backing::Table,
        })
    }

    pub fn complex(&self) -> &FlagComplex {
        &self.complex
    }

    pub fn distances(&self) -> &DistanceMatrix {
        &self.dist
    }

    pub fn backing(&self) -> &Backing {
        &self.backing
    }

    pub fn family(&self) -> Option<&HeightFamily> {
        match &self.backing {
            Backing::Model(fam) => Some(fam),
            Backing::Table => None,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.complex.vertex_count()
    }

    pub fn dist(&self, u: usize, v: usize) -> usize {
        self.dist.finite(u, v)
    }

    /// `π_σ(ρ)`; panics when `σ = ρ`.
    pub fn proj(&self, sigma: usize, rho: usize) -> usize {
        let n = self.vertex_count();
        let v = self.proj[sigma * n + rho];
        assert!(v != NO_VERTEX, "projection of a vertex onto itself");
        v
    }

    /// Raw `<_σ` entry for adjacent `a`, `b`; `None` when they are not adjacent.
    pub fn ord(&self, sigma: usize, a: usize, b: usize) -> Option<bool> {
        let k = self.complex.neighbors(a).binary_search(&b).ok()?;
        Some(self.ord[sigma * self.arcs + self.arc_offsets[a] + k])
    }

    /// `a <_σ b`: adjacent and ordered.
    pub fn less(&self, sigma: usize, a: usize, b: usize) -> bool {
        self.ord(sigma, a, b).unwrap_or(false)
    }

    /// `a ≤_σ b`.
    pub fn leq(&self, sigma: usize, a: usize, b: usize) -> bool {
        a == b || self.less(sigma, a, b)
    }

    /// Out-neighbours of `a` in the `<_σ` digraph.
    pub fn successors(&self, sigma: usize, a: usize) -> impl Iterator<Item = usize> + '_ {
        let base = sigma * self.arcs + self.arc_offsets[a];
        self.complex
            .neighbors(a)
            .iter()
            .enumerate()
            .filter(move |(k, _)| self.ord[base + k])
            .map(|(_, &b)| b)
    }
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        Err(Error::CapExceeded {
            what: "vertex",
            limit: cap,
        })
    } else {
        Ok(())
    }
}

/// Columns of `g` sitting in the top translate `E_r` of `f` are lowered by
/// one, after `g` is shifted so its lowest overlap is `E_0`.
fn lift_projection(f: &HeightFunction, g: &HeightFunction) -> HeightFunction {
    let offsets: Vec<i64> = g
        .values()
        .iter()
        .zip(f.values())
        .map(|(a, b)| a - b)
        .collect();
    let top = offsets.iter().copied().max().unwrap_or(0);
    let values = g
        .values()
        .iter()
        .zip(&offsets)
        .map(|(&h, &k)| if k == top { h - 1 } else { h })
        .collect();
    HeightFunction::normalized(values).expect("nonempty")
}

/// Lift of `a` inside the two translates of `b` just below it meets the top
/// translate reached by `b`.
fn lift_order(f: &HeightFunction, a: &HeightFunction, b: &HeightFunction) -> bool {
    let cols = f.columns();
    let (fv, av, bv) = (f.values(), a.values(), b.values());
    let top = (0..cols).map(|c| bv[c] - fv[c]).max().unwrap_or(0);
    let shift = (0..cols).map(|c| bv[c] - av[c]).min().unwrap_or(0);
    (0..cols).any(|c| av[c] + shift - fv[c] == top)
}

/// Outcome of one exhaustive check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    /// Lexicographically least violating tuple of vertex ids.
    pub witness: Option<Vec<usize>>,
    pub cases: u64,
    pub detail: Option<String>,
}

impl CheckReport {
    pub fn pass(name: &str, cases: u64) -> Self {
        CheckReport {
            name: name.to_string(),
            passed: true,
            witness: None,
            cases,
            detail: None,
        }
    }

    pub fn fail(name: &str, cases: u64, witness: Vec<usize>) -> Self {
        CheckReport {
            name: name.to_string(),
            passed: false,
            witness: Some(witness),
            cases,
            detail: None,
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    fn from_outcome(name: &str, (cases, witness): Outcome) -> Self {
        match witness {
            None => Self::pass(name, cases),
            Some(w) => Self::fail(name, cases, w),
        }
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed {
            write!(f, "PASS {} cases={}", self.name, self.cases)
        } else {
            write!(f, "FAIL {}", self.name)?;
            for v in self.witness.iter().flatten() {
                write!(f, " {v}")?;
            }
            if let Some(d) = &self.detail {
                write!(f, " ({d})")?;
            }
            Ok(())
        }
    }
}

/// Number of cases examined, and the least witness found.
type Outcome = (u64, Option<Vec<usize>>);

fn merge(a: Outcome, b: Outcome) -> Outcome {
    let witness = match (a.1, b.1) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, y) => x.or(y),
    };
    (a.0 + b.0, witness)
}

/// Runs `per_base` for every base vertex in parallel and merges
/// deterministically.
fn over_bases<F>(n: usize, per_base: F) -> Outcome
where
    F: Fn(usize) -> Outcome + Sync + Send,
{
    (0..n)
        .into_par_iter()
        .map(per_base)
        .reduce(|| (0, None), merge)
}

/// `d(ρ, π_σ(ρ)) ≤ 1` and `d(σ, π_σ(ρ)) = d(σ, ρ) − 1` for all `σ ≠ ρ`.
pub fn verify_projection_decrement(ps: &ProjectionStructure) -> CheckReport {
    let n = ps.vertex_count();
    let outcome = over_bases(n, |s| {
        let mut cases = 0;
        for r in (0..n).filter(|&r| r != s) {
            cases += 1;
            let p = ps.proj(s, r);
            if ps.dist(r, p) > 1 || ps.dist(s, p) + 1 != ps.dist(s, r) {
                return (cases, Some(vec![s, r]));
            }
        }
        (cases, None)
    });
    CheckReport::from_outcome("projection.decrement", outcome)
}

/// Comparability, acyclicity and the distance rule for `<_σ`, every base.
pub fn verify_order_axioms(ps: &ProjectionStructure) -> Vec<CheckReport> {
    let n = ps.vertex_count();
    let edges = ps.complex().edges();

    let comparability = over_bases(n, |s| {
        let mut cases = 0;
        for &(a, b) in edges {
            cases += 1;
            if ps.less(s, a, b) == ps.less(s, b, a) {
                return (cases, Some(vec![s, a, b]));
            }
        }
        (cases, None)
    });

    let acyclicity = over_bases(n, |s| match find_order_cycle(ps, s, None) {
        Some(cycle) => (1, Some(std::iter::once(s).chain(cycle).collect())),
        None => (1, None),
    });

    let distance_rule = over_bases(n, |s| {
        let mut cases = 0;
        let mut worst: Option<Vec<usize>> = None;
        for &(a, b) in edges {
            for (x, y) in [(a, b), (b, a)] {
                if ps.dist(s, x) > ps.dist(s, y) {
                    cases += 1;
                    if !ps.less(s, x, y) {
                        let w = vec![s, x, y];
                        worst = Some(worst.map_or(w.clone(), |old| old.min(w)));
                    }
                }
            }
        }
        (cases, worst)
    });

    vec![
        CheckReport::from_outcome("order.comparability", comparability),
        CheckReport::from_outcome("order.acyclicity", acyclicity),
        CheckReport::from_outcome("order.distance-rule", distance_rule),
    ]
}

/// A directed cycle of the `<_σ` digraph (optionally restricted to `within`),
/// rotated to start at its least vertex.
pub fn find_order_cycle(
    ps: &ProjectionStructure,
    sigma: usize,
    within: Option<&FixedBitSet>,
) -> Option<Vec<usize>> {
    let n = ps.vertex_count();
    let inside = |v: usize| within.is_none_or(|w| w.contains(v));
    // 0 = unvisited, 1 = on stack, 2 = done
    let mut color = vec![0u8; n];
    let mut parent = vec![NO_VERTEX; n];
    for root in (0..n).filter(|&v| inside(v)) {
        if color[root] != 0 {
            continue;
        }
        let mut stack: Vec<(usize, Vec<usize>)> = Vec::new();
        color[root] = 1;
        stack.push((
            root,
            ps.successors(sigma, root).filter(|&b| inside(b)).collect(),
        ));
        while let Some((v, pending)) = stack.last_mut() {
            let v = *v;
            match pending.pop() {
                Some(w) if color[w] == 0 => {
                    color[w] = 1;
                    parent[w] = v;
                    let next = ps.successors(sigma, w).filter(|&b| inside(b)).collect();
                    stack.push((w, next));
                }
                Some(w) if color[w] == 1 => {
                    let mut cycle = vec![v];
                    let mut x = v;
                    while x != w {
                        x = parent[x];
                        cycle.push(x);
                    }
                    cycle.reverse();
                    let start = cycle
                        .iter()
                        .enumerate()
                        .min_by_key(|(_, &v)| v)
                        .map(|(i, _)| i)
                        .unwrap_or(0);
                    cycle.rotate_left(start);
                    return Some(cycle);
                }
                Some(_) => {}
                None => {
                    color[v] = 2;
                    stack.pop();
                }
            }
        }
    }
    None
}

/// Topological order of the `<_σ` digraph, ties broken by ascending id.
/// `σ` comes last on conforming instances; anything else is an error.
pub fn linear_extension(ps: &ProjectionStructure, sigma: usize) -> Result<Vec<usize>> {
    let n = ps.vertex_count();
    if sigma >= n {
        return Err(Error::Input(format!("base vertex {sigma} out of range")));
    }
    linear_extension_within(ps, sigma, &VertexSet::range(n))
}

/// Linear extension of `<_σ` restricted to `subset`.
pub fn linear_extension_within(
    ps: &ProjectionStructure,
    sigma: usize,
    subset: &VertexSet,
) -> Result<Vec<usize>> {
    let n = ps.vertex_count();
    let mut inside = FixedBitSet::with_capacity(n);
    subset.iter().for_each(|v| inside.insert(v));
    let mut indegree = vec![0usize; n];
    for a in subset.iter() {
        for b in ps.successors(sigma, a).filter(|&b| inside.contains(b)) {
            indegree[b] += 1;
        }
    }
    let mut ready: BinaryHeap<Reverse<usize>> = subset
        .iter()
        .filter(|&v| indegree[v] == 0)
        .map(Reverse)
        .collect();
    let mut order = Vec::with_capacity(subset.len());
    while let Some(Reverse(a)) = ready.pop() {
        order.push(a);
        for b in ps.successors(sigma, a).filter(|&b| inside.contains(b)) {
            indegree[b] -= 1;
            if indegree[b] == 0 {
                ready.push(Reverse(b));
            }
        }
    }
    if order.len() < subset.len() {
        let cycle = find_order_cycle(ps, sigma, Some(&inside)).unwrap_or_default();
        return Err(Error::structural(
            format!("order <_{sigma} has a directed cycle"),
            cycle,
        ));
    }
    if subset.contains(sigma) && order.last() != Some(&sigma) {
        return Err(Error::structural(
            format!("base {sigma} is not the largest vertex of its order"),
            vec![sigma, *order.last().unwrap_or(&sigma)],
        ));
    }
    Ok(order)
}

/// Same-layer, monotonicity and same-projection properties of `π_σ`.
pub fn verify_domination(ps: &ProjectionStructure) -> Vec<CheckReport> {
    let n = ps.vertex_count();

    // ρ ≤_σ ρ' (including ρ' = ρ) forces ρ' ≤_σ π_σ(ρ)
    let same_layer = over_bases(n, |s| {
        let mut cases = 0;
        for r in (0..n).filter(|&r| r != s) {
            let p = ps.proj(s, r);
            let mut later: Vec<usize> = ps.successors(s, r).collect();
            later.push(r);
            later.sort_unstable();
            for r2 in later {
                cases += 1;
                if !ps.leq(s, r2, p) {
                    return (cases, Some(vec![s, r, r2]));
                }
            }
        }
        (cases, None)
    });

    let monotonicity = over_bases(n, |s| {
        let mut cases = 0;
        for a in (0..n).filter(|&a| a != s) {
            for b in ps.successors(s, a).filter(|&b| b != s) {
                cases += 1;
                if !ps.leq(s, ps.proj(s, a), ps.proj(s, b)) {
                    return (cases, Some(vec![s, a, b]));
                }
            }
        }
        (cases, None)
    });

    let same_projection = over_bases(n, |s| same_projection_for_base(ps, s));

    vec![
        CheckReport::from_outcome("domination.same-layer", same_layer),
        CheckReport::from_outcome("domination.monotonicity", monotonicity),
        CheckReport::from_outcome("domination.same-projection", same_projection),
    ]
}

/// For every `<_σ`-chain inside one sphere whose end projections agree, all
/// projections along it agree and its ends are adjacent. Checked on
/// reachability pairs `(a, b)` and every `c` between them.
fn same_projection_for_base(ps: &ProjectionStructure, s: usize) -> Outcome {
    let n = ps.vertex_count();
    let radius = (0..n).map(|v| ps.dist(s, v)).max().unwrap_or(0);
    let mut cases = 0;
    let mut worst: Option<Vec<usize>> = None;
    for layer in 1..=radius {
        let sphere: Vec<usize> = (0..n).filter(|&v| ps.dist(s, v) == layer).collect();
        let mut in_sphere = FixedBitSet::with_capacity(n);
        sphere.iter().for_each(|&v| in_sphere.insert(v));
        let Some(reach) = reachability(ps, s, &sphere, &in_sphere) else {
            continue;
        };
        let mut coreach: HashMap<usize, FixedBitSet> = sphere
            .iter()
            .map(|&v| (v, FixedBitSet::with_capacity(n)))
            .collect();
        for &a in &sphere {
            for b in reach[&a].ones() {
                if let Some(set) = coreach.get_mut(&b) {
                    set.insert(a);
                }
            }
        }
        for &a in &sphere {
            let pa = ps.proj(s, a);
            for b in reach[&a].ones() {
                if ps.proj(s, b) != pa {
                    continue;
                }
                cases += 1;
                let candidate = if !ps.complex().is_adjacent(a, b) {
                    Some(vec![s, a, b])
                } else {
                    reach[&a]
                        .intersection(&coreach[&b])
                        .find(|&c| ps.proj(s, c) != pa)
                        .map(|c| vec![s, a, c, b])
                };
                if let Some(w) = candidate {
                    worst = Some(worst.map_or(w.clone(), |old| old.min(w)));
                }
            }
        }
    }
    (cases, worst)
}

/// Strict reachability sets inside a sphere, or `None` when the restricted
/// digraph has a cycle (the acyclicity check reports that separately).
fn reachability(
    ps: &ProjectionStructure,
    s: usize,
    sphere: &[usize],
    in_sphere: &FixedBitSet,
) -> Option<HashMap<usize, FixedBitSet>> {
    let n = ps.vertex_count();
    let order = topo_order(ps, s, sphere, in_sphere)?;
    let mut reach: HashMap<usize, FixedBitSet> = HashMap::new();
    for &a in order.iter().rev() {
        let mut set = FixedBitSet::with_capacity(n);
        for b in ps.successors(s, a).filter(|&b| in_sphere.contains(b)) {
            set.insert(b);
            set.union_with(&reach[&b]);
        }
        reach.insert(a, set);
    }
    Some(reach)
}

fn topo_order(
    ps: &ProjectionStructure,
    s: usize,
    vertices: &[usize],
    inside: &FixedBitSet,
) -> Option<Vec<usize>> {
    let mut indegree: HashMap<usize, usize> = vertices.iter().map(|&v| (v, 0)).collect();
    for &a in vertices {
        for b in ps.successors(s, a).filter(|&b| inside.contains(b)) {
            *indegree.get_mut(&b)? += 1;
        }
    }
    let mut ready: Vec<usize> = vertices
        .iter()
        .copied()
        .filter(|v| indegree[v] == 0)
        .collect();
    let mut order = Vec::with_capacity(vertices.len());
    while let Some(a) = ready.pop() {
        order.push(a);
        for b in ps.successors(s, a).filter(|&b| inside.contains(b)) {
            let d = indegree.get_mut(&b)?;
            *d -= 1;
            if *d == 0 {
                ready.push(b);
            }
        }
    }
    (order.len() == vertices.len()).then_some(order)
}

/// Longest directed `<_σ` path (counted in vertices) within `subset`.
pub(crate) fn longest_chain(ps: &ProjectionStructure, s: usize, subset: &[usize]) -> Result<usize> {
    let n = ps.vertex_count();
    let mut inside = FixedBitSet::with_capacity(n);
    subset.iter().for_each(|&v| inside.insert(v));
    let order = topo_order(ps, s, subset, &inside).ok_or_else(|| {
        Error::structural(
            format!("order <_{s} has a cycle inside the layer"),
            find_order_cycle(ps, s, Some(&inside)).unwrap_or_default(),
        )
    })?;
    let mut best: HashMap<usize, usize> = HashMap::new();
    let mut longest = 0;
    for &a in order.iter().rev() {
        let len = 1 + ps
            .successors(s, a)
            .filter(|&b| inside.contains(b))
            .map(|b| best[&b])
            .max()
            .unwrap_or(0);
        longest = longest.max(len);
        best.insert(a, len);
    }
    Ok(longest)
}

/// Longest chain in one sphere, against the bound `(L+1)^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainRow {
    pub base: usize,
    pub radius: usize,
    pub longest: usize,
    pub bound: u64,
}

#[derive(Debug, Clone)]
pub struct ChainStats {
    /// `L`: maximal simplex dimension.
    pub clique_dim: usize,
    pub rows: Vec<ChainRow>,
    /// Largest observed `longest / bound`.
    pub max_ratio: f64,
    pub report: CheckReport,
}

/// Measures, for each base and radius, the longest `<_σ` chain inside the
/// sphere and compares it to `(L+1)^n`.
pub fn chain_length_stats(ps: &ProjectionStructure) -> Result<ChainStats> {
    let n = ps.vertex_count();
    if let Some(report) = verify_order_axioms(ps)
        .into_iter()
        .find(|r| !r.passed && r.name == "order.acyclicity")
    {
        return Err(Error::structural(
            "chain statistics need an acyclic order",
            report.witness.unwrap_or_default(),
        ));
    }
    let clique_dim = ps.complex().clique_number().saturating_sub(1);
    let per_base: Vec<Result<Vec<ChainRow>>> = (0..n)
        .into_par_iter()
        .map(|s| {
            let radius = (0..n).map(|v| ps.dist(s, v)).max().unwrap_or(0);
            (1..=radius)
                .map(|layer| {
                    let sphere: Vec<usize> = (0..n).filter(|&v| ps.dist(s, v) == layer).collect();
                    Ok(ChainRow {
                        base: s,
                        radius: layer,
                        longest: longest_chain(ps, s, &sphere)?,
                        bound: (clique_dim as u64 + 1).saturating_pow(layer as u32),
                    })
                })
                .collect()
        })
        .collect();
    let mut rows = Vec::new();
    for r in per_base {
        rows.extend(r?);
    }
    let max_ratio = rows
        .iter()
        .map(|r| r.longest as f64 / r.bound as f64)
        .fold(0.0, f64::max);
    let cases = rows.len() as u64;
    let report = match rows.iter().find(|r| r.longest as u64 > r.bound) {
        Some(r) => CheckReport::fail("chain.bound", cases, vec![r.base, r.radius])
            .with_detail(format!("longest {} > bound {}", r.longest, r.bound)),
        None => CheckReport::pass("chain.bound", cases),
    };
    Ok(ChainStats {
        clique_dim,
        rows,
        max_ratio,
        report,
    })
}

/// Projection paths stay inside balls containing their endpoints:
/// `d(σ', π_σ(ρ)) ≤ max(d(σ', ρ), d(σ', σ))`.
pub fn verify_ball_retention(ps: &ProjectionStructure) -> CheckReport {
    let n = ps.vertex_count();
    let outcome = over_bases(n, |s| {
        let mut cases = 0;
        for r in (0..n).filter(|&r| r != s) {
            let p = ps.proj(s, r);
            for s2 in 0..n {
                cases += 1;
                let radius = ps.dist(s2, r).max(ps.dist(s2, s));
                if ps.dist(s2, p) > radius {
                    return (cases, Some(vec![s, r, s2]));
                }
            }
        }
        (cases, None)
    });
    CheckReport::from_outcome("ball.retention", outcome)
}

/// For adjacent `σ, σ'` and adjacent `ρ, ρ'` with `ρ' <_{σ'} ρ`,
/// `ρ <_σ ρ'` and `σ' ≠ ρ'`: `ρ ≤_σ π_{σ'}(ρ')`, and
/// `d(σ, π_{σ'}(ρ')) ≤ d(σ, ρ')` when `σ ≠ ρ'`.
pub fn verify_change_of_basis(ps: &ProjectionStructure) -> CheckReport {
    let n = ps.vertex_count();
    let outcome = over_bases(n, |s| {
        let mut cases = 0;
        for &s2 in ps.complex().neighbors(s) {
            for r in 0..n {
                for r2 in ps.successors(s, r) {
                    if r2 == s2 || !ps.less(s2, r2, r) {
                        continue;
                    }
                    cases += 1;
                    let p = ps.proj(s2, r2);
                    let first = ps.leq(s, r, p);
                    let second = r2 == s || ps.dist(s, p) <= ps.dist(s, r2);
                    if !(first && second) {
                        return (cases, Some(vec![s, s2, r, r2]));
                    }
                }
            }
        }
        (cases, None)
    });
    CheckReport::from_outcome("basis.change", outcome)
}

/// Model-backed tables agree with [`cover::project`] and
/// [`cover::order_less`] on every input.
pub fn verify_model_identity(ps: &ProjectionStructure) -> Result<CheckReport> {
    let fam = ps.family().ok_or_else(|| {
        Error::Precondition("identity check needs a model-backed structure".into())
    })?;
    let n = ps.vertex_count();
    let outcome = over_bases(n, |s| {
        let sigma = fam.member(s);
        let mut cases = 0;
        for r in (0..n).filter(|&r| r != s) {
            cases += 1;
            let expected = cover::project(sigma, fam.member(r))
                .ok()
                .and_then(|p| fam.id_of(&p));
            if expected != Some(ps.proj(s, r)) {
                return (cases, Some(vec![s, r]));
            }
            for r2 in ps.complex().neighbors(r).iter().copied() {
                cases += 1;
                let expected = cover::order_less(sigma, fam.member(r), fam.member(r2)).ok();
                if expected != ps.ord(s, r, r2) {
                    return (cases, Some(vec![s, r, r2]));
                }
            }
        }
        for r2 in ps.complex().neighbors(s).iter().copied() {
            cases += 1;
            if cover::order_less(sigma, sigma, fam.member(r2)).ok() != ps.ord(s, s, r2) {
                return (cases, Some(vec![s, s, r2]));
            }
        }
        (cases, None)
    });
    Ok(CheckReport::from_outcome("model.identity", outcome))
}

/// Kakimizu distance equals the path metric of the derived graph.
pub fn verify_metric_coincidence(ps: &ProjectionStructure) -> Result<CheckReport> {
    let fam = ps
        .family()
        .ok_or_else(|| Error::Precondition("metric check needs a model-backed structure".into()))?;
    let n = ps.vertex_count();
    let outcome = over_bases(n, |s| {
        let mut cases = 0;
        for r in 0..n {
            cases += 1;
            let d = cover::kakimizu_distance(fam.member(s), fam.member(r))
                .map(|c| c.d as usize)
                .ok();
            if d != Some(ps.dist(s, r)) {
                return (cases, Some(vec![s, r]));
            }
        }
        (cases, None)
    });
    Ok(CheckReport::from_outcome("model.metric", outcome))
}

/// Smallest superset of `seed` closed under `π_σ(ρ)` for all `σ ≠ ρ`.
pub fn convex_hull(ps: &ProjectionStructure, seed: &VertexSet) -> VertexSet {
    let n = ps.vertex_count();
    let mut inside = vec![false; n];
    let mut members: Vec<usize> = seed.iter().collect();
    members.iter().for_each(|&v| inside[v] = true);
    let mut i = 0;
    while i < members.len() {
        for j in 0..i {
            let (a, b) = (members[i], members[j]);
            for p in [ps.proj(a, b), ps.proj(b, a)] {
                if !inside[p] {
                    inside[p] = true;
                    members.push(p);
                }
            }
        }
        i += 1;
    }
    members.into_iter().collect()
}

/// Every checker in this module, in a fixed order. Chain statistics failures
/// that stem from cycles are folded into a failing `chain.bound` report.
pub fn run_all_checks(ps: &ProjectionStructure) -> Vec<CheckReport> {
    let mut reports = vec![verify_projection_decrement(ps)];
    reports.extend(verify_order_axioms(ps));
    reports.extend(verify_domination(ps));
    reports.push(match chain_length_stats(ps) {
        Ok(stats) => stats.report,
        Err(Error::Structural { witness, message }) => {
            CheckReport::fail("chain.bound", 0, witness).with_detail(message)
        }
        Err(e) => CheckReport::fail("chain.bound", 0, vec![]).with_detail(e.to_string()),
    });
    reports.push(verify_ball_retention(ps));
    reports.push(verify_change_of_basis(ps));
    if ps.family().is_some() {
        reports.extend(verify_model_identity(ps));
        reports.extend(verify_metric_coincidence(ps));
    }
    reports
}
