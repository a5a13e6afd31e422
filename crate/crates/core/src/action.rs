//! Finite group actions on projection structures.
//!
//! Provides the invariant-simplex search (repeatedly discarding strongly
//! dominated vertices from a convex hull of an orbit), the complex of
//! minimal invariant simplices, the induced projection `Π_Σ` on it, and its
//! dismantling.

use std::collections::{HashMap, HashSet};

use crate::complex::{DistanceMatrix, FlagComplex, VertexSet};
use crate::cover::{ColumnPermutation, HeightFamily};
use crate::dismantle::{self, DismantlingOrder};
use crate::error::{Error, Result};
use crate::projection::{self, CheckReport, ProjectionStructure};

/// Default bound on the number of group elements enumerated.
pub const DEFAULT_GROUP_CAP: usize = 10_000;

/// A group given by vertex permutations; generator `g` sends `v` to `g[v]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAction {
    vertex_count: usize,
    generators: Vec<Vec<usize>>,
}

impl GroupAction {
    pub fn new(vertex_count: usize, generators: Vec<Vec<usize>>) -> Result<Self> {
        for (i, g) in generators.iter().enumerate() {
            if g.len() != vertex_count {
                return Err(Error::Input(format!(
                    "generator {i} has length {}, expected {vertex_count}",
                    g.len()
                )));
            }
            let mut seen = vec![false; vertex_count];
            for &v in g {
                if v >= vertex_count || std::mem::replace(&mut seen[v], true) {
                    return Err(Error::Input(format!("generator {i} is not a permutation")));
                }
            }
        }
        Ok(GroupAction {
            vertex_count,
            generators,
        })
    }

    pub fn trivial(vertex_count: usize) -> Self {
        GroupAction {
            vertex_count,
            generators: Vec::new(),
        }
    }

    /// Action of column permutations on a family invariant under them.
    pub fn from_columns(fam: &HeightFamily, perms: &[ColumnPermutation]) -> Result<Self> {
        let mut generators = Vec::new();
        for p in perms.iter().filter(|p| !p.is_identity()) {
            let g = fam.vertex_permutation(p)?.ok_or_else(|| {
                Error::Input(format!(
                    "family is not invariant under column permutation {:?}",
                    p.0
                ))
            })?;
            generators.push(g);
        }
        Self::new(fam.len(), generators)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn generators(&self) -> &[Vec<usize>] {
        &self.generators
    }

    pub fn is_trivial(&self) -> bool {
        self.generators
            .iter()
            .all(|g| g.iter().enumerate().all(|(i, &v)| i == v))
    }

    /// Closure of `{v}` under the generators.
    pub fn orbit(&self, v: usize) -> VertexSet {
        self.orbit_of_set(&VertexSet::singleton(v))
    }

    pub fn orbit_of_set(&self, s: &VertexSet) -> VertexSet {
        let mut seen: HashSet<usize> = s.iter().collect();
        let mut queue: Vec<usize> = s.iter().collect();
        while let Some(v) = queue.pop() {
            for g in &self.generators {
                if seen.insert(g[v]) {
                    queue.push(g[v]);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Vertex orbits ordered by least element.
    pub fn orbits(&self) -> Vec<VertexSet> {
        let mut done = vec![false; self.vertex_count];
        let mut out = Vec::new();
        for v in 0..self.vertex_count {
            if !done[v] {
                let o = self.orbit(v);
                o.iter().for_each(|w| done[w] = true);
                out.push(o);
            }
        }
        out
    }

    pub fn is_invariant(&self, s: &VertexSet) -> bool {
        self.generators
            .iter()
            .all(|g| s.iter().all(|v| s.contains(g[v])))
    }

    /// All group elements, failing beyond `cap`.
    pub fn elements(&self, cap: usize) -> Result<Vec<Vec<usize>>> {
        let identity: Vec<usize> = (0..self.vertex_count).collect();
        let mut seen: HashSet<Vec<usize>> = HashSet::from([identity.clone()]);
        let mut out = vec![identity];
        let mut i = 0;
        while i < out.len() {
            for g in &self.generators {
                let composed: Vec<usize> = out[i].iter().map(|&v| g[v]).collect();
                if seen.insert(composed.clone()) {
                    if out.len() >= cap {
                        return Err(Error::CapExceeded {
                            what: "group element",
                            limit: cap,
                        });
                    }
                    out.push(composed);
                }
            }
            i += 1;
        }
        out.sort();
        Ok(out)
    }
}

/// Every generator is a graph automorphism, commutes with the projection and
/// preserves the order. Witness: generator index followed by vertex ids.
pub fn check_action(ps: &ProjectionStructure, a: &GroupAction) -> CheckReport {
    const NAME: &str = "action.equivariance";
    let n = ps.vertex_count();
    if a.vertex_count() != n {
        return CheckReport::fail(NAME, 0, vec![]).with_detail(format!(
            "action on {} vertices, complex has {n}",
            a.vertex_count()
        ));
    }
    let c = ps.complex();
    let mut cases = 0;
    for (gi, g) in a.generators().iter().enumerate() {
        for &(u, v) in c.edges() {
            cases += 1;
            if !c.is_adjacent(g[u], g[v]) {
                return CheckReport::fail(NAME, cases, vec![gi, u, v])
                    .with_detail("not an automorphism");
            }
        }
        for s in 0..n {
            for r in (0..n).filter(|&r| r != s) {
                cases += 1;
                if g[ps.proj(s, r)] != ps.proj(g[s], g[r]) {
                    return CheckReport::fail(NAME, cases, vec![gi, s, r])
                        .with_detail("does not commute with the projection");
                }
                for &r2 in c.neighbors(r) {
                    cases += 1;
                    if ps.ord(s, r, r2) != ps.ord(g[s], g[r], g[r2]) {
                        return CheckReport::fail(NAME, cases, vec![gi, s, r, r2])
                            .with_detail("does not preserve the order");
                    }
                }
            }
        }
    }
    CheckReport::pass(NAME, cases)
}

fn induced_distances(
    ps: &ProjectionStructure,
    y: &VertexSet,
) -> Result<(DistanceMatrix, Vec<usize>)> {
    let (sub, remap) = ps.complex().induced(y)?;
    Ok((sub.distance_matrix(), remap))
}

/// For all `σ ≠ ρ` in `Y` some `π ∈ Y` has `N_Y(π_σ(ρ)) ⊆ N_Y(π)` and sits
/// at distance `d(π_σ(ρ), σ)` from `σ` inside `Y`. Witness `(σ, ρ)`.
pub fn is_semi_convex(ps: &ProjectionStructure, y: &VertexSet) -> Result<CheckReport> {
    const NAME: &str = "fix.semi-convex";
    let (dist, remap) = induced_distances(ps, y)?;
    if !dist.is_connected() {
        return Err(Error::Input(
            "semi-convexity needs a connected vertex set".into(),
        ));
    }
    let c = ps.complex();
    let mut dominators: HashMap<usize, Vec<usize>> = HashMap::new();
    let mut cases = 0;
    for (i, s) in remap.iter().copied().enumerate() {
        for r in remap.iter().copied().filter(|&r| r != s) {
            cases += 1;
            let x = ps.proj(s, r);
            let target = ps.dist(x, s);
            let candidates = dominators.entry(x).or_insert_with(|| {
                let nx: Vec<usize> = y.iter().filter(|&v| c.adjacent_or_equal(v, x)).collect();
                (0..remap.len())
                    .filter(|&j| nx.iter().all(|&v| c.adjacent_or_equal(v, remap[j])))
                    .collect()
            });
            if !candidates.iter().any(|&j| dist.get(i, j) == Some(target)) {
                return Ok(CheckReport::fail(NAME, cases, vec![s, r]));
            }
        }
    }
    Ok(CheckReport::pass(NAME, cases))
}

/// Vertices `v ∈ Y` with `N_Y(v) ⊊ N_Y(w)` for some `w ∈ Y`.
pub fn strongly_dominated(c: &FlagComplex, y: &VertexSet) -> VertexSet {
    let closed =
        |v: usize| -> Vec<usize> { y.iter().filter(|&u| c.adjacent_or_equal(u, v)).collect() };
    y.iter()
        .filter(|&v| {
            let nv = closed(v);
            c.neighbors(v).iter().filter(|&&w| y.contains(w)).any(|&w| {
                let nw = closed(w);
                nw.len() > nv.len() && nv.iter().all(|&u| c.adjacent_or_equal(u, w))
            })
        })
        .collect()
}

/// `l(Y)`: the longest `<_σ` chain among vertices at distance `diam(Y)` from
/// `σ`, maximized over `σ ∈ Y`. Distances are taken inside `Y`; a single
/// vertex gives 0.
pub fn layer_chain_stat(ps: &ProjectionStructure, y: &VertexSet) -> Result<usize> {
    let (dist, _) = induced_distances(ps, y)?;
    let d = dist
        .diameter()
        .ok_or_else(|| Error::Input("layer statistic needs a connected vertex set".into()))?;
    layer_chain_at(ps, y, &dist, d)
}

fn layer_chain_at(
    ps: &ProjectionStructure,
    y: &VertexSet,
    dist: &DistanceMatrix,
    d: usize,
) -> Result<usize> {
    if d == 0 {
        return Ok(0);
    }
    let members = y.as_slice();
    let mut best = 0;
    for (i, &s) in members.iter().enumerate() {
        let sphere: Vec<usize> = (0..members.len())
            .filter(|&j| dist.get(i, j) == Some(d))
            .map(|j| members[j])
            .collect();
        if !sphere.is_empty() {
            best = best.max(projection::longest_chain(ps, s, &sphere)?);
        }
    }
    Ok(best)
}

/// One pass of the invariant-simplex loop.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub vertices: VertexSet,
    pub diameter: usize,
    pub layer_chain: usize,
    pub removed: VertexSet,
    pub next_diameter: usize,
    /// `l` of the remaining set, measured at the previous diameter.
    pub next_layer_chain: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantSimplex {
    pub simplex: VertexSet,
    pub hull: VertexSet,
    pub trace: Vec<TraceStep>,
}

/// Finds a simplex invariant under the group, starting from the convex hull of
/// the orbit of `seed`. Every step asserts the remaining set is nonempty,
/// invariant, semi-convex and strictly smaller in `(diameter, l)`.
pub fn find_invariant_simplex(
    ps: &ProjectionStructure,
    a: &GroupAction,
    seed: usize,
) -> Result<InvariantSimplex> {
    let n = ps.vertex_count();
    if seed >= n {
        return Err(Error::Input(format!("seed vertex {seed} out of range")));
    }
    let report = check_action(ps, a);
    if !report.passed {
        return Err(Error::structural(
            format!(
                "action is not equivariant: {}",
                report.detail.unwrap_or_default()
            ),
            report.witness.unwrap_or_default(),
        ));
    }
    let orbit = a.orbit(seed);
    let hull = projection::convex_hull(ps, &orbit);
    let orbit_diam = pairwise_max(ps, &orbit);
    let hull_diam = pairwise_max(ps, &hull);
    if orbit_diam != hull_diam {
        return Err(Error::structural(
            format!("convex hull has diameter {hull_diam}, orbit has {orbit_diam}"),
            hull.into_vec(),
        ));
    }
    if !a.is_invariant(&hull) {
        return Err(Error::structural(
            "convex hull of an orbit is not invariant",
            hull.into_vec(),
        ));
    }

    let mut y = hull.clone();
    let mut trace = Vec::new();
    for _ in 0..=2 * n {
        let (dist, _) = induced_distances(ps, &y)?;
        let diameter = dist.diameter().ok_or_else(|| {
            Error::structural("current set is disconnected", y.as_slice().to_vec())
        })?;
        if diameter <= 1 {
            if !ps.complex().is_clique(y.as_slice()) || !a.is_invariant(&y) {
                return Err(Error::structural(
                    "result is not an invariant clique",
                    y.into_vec(),
                ));
            }
            return Ok(InvariantSimplex {
                simplex: y,
                hull,
                trace,
            });
        }
        let layer_chain = layer_chain_at(ps, &y, &dist, diameter)?;
        let removed = strongly_dominated(ps.complex(), &y);
        let w = y.difference(&removed);
        if w.is_empty() {
            return Err(Error::structural(
                "every vertex is strongly dominated",
                y.into_vec(),
            ));
        }
        if !a.is_invariant(&w) {
            return Err(Error::structural(
                "remaining set is not invariant",
                w.into_vec(),
            ));
        }
        let (w_dist, _) = induced_distances(ps, &w)?;
        let next_diameter = w_dist.diameter().ok_or_else(|| {
            Error::structural("remaining set is disconnected", w.as_slice().to_vec())
        })?;
        let semi = is_semi_convex(ps, &w)?;
        if !semi.passed {
            return Err(Error::structural(
                "remaining set is not semi-convex",
                semi.witness.unwrap_or_default(),
            ));
        }
        let next_layer_chain = layer_chain_at(ps, &w, &w_dist, diameter)?;
        if !(next_diameter < diameter
            || (next_diameter == diameter && next_layer_chain < layer_chain))
        {
            return Err(Error::structural(
                format!(
                    "no progress: (diameter, l) went from ({diameter}, {layer_chain}) to ({next_diameter}, {next_layer_chain})"
                ),
                w.into_vec(),
            ));
        }
        trace.push(TraceStep {
            vertices: y,
            diameter,
            layer_chain,
            removed,
            next_diameter,
            next_layer_chain,
        });
        y = w;
    }
    Err(Error::structural("iteration cap reached", y.into_vec()))
}

fn pairwise_max(ps: &ProjectionStructure, s: &VertexSet) -> usize {
    s.iter()
        .flat_map(|u| s.iter().map(move |v| (u, v)))
        .map(|(u, v)| ps.dist(u, v))
        .max()
        .unwrap_or(0)
}

/// Complex of minimal invariant simplices: vertex-orbits that are cliques,
/// joined when their union is a clique.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixComplex {
    pub complex: FlagComplex,
    /// Ambient simplex of each fix-vertex, ordered by least element.
    pub simplices: Vec<VertexSet>,
    owner: Vec<Option<usize>>,
}

impl FixComplex {
    pub fn vertex_count(&self) -> usize {
        self.simplices.len()
    }

    /// Fix-vertex whose simplex is exactly `s`.
    pub fn find(&self, s: &VertexSet) -> Option<usize> {
        let i = self.owner.get(s.first()?).copied().flatten()?;
        (self.simplices[i] == *s).then_some(i)
    }
}

pub fn fix_complex(c: &FlagComplex, a: &GroupAction) -> FixComplex {
    let simplices: Vec<VertexSet> = a
        .orbits()
        .into_iter()
        .filter(|o| c.is_clique(o.as_slice()))
        .collect();
    let mut owner = vec![None; c.vertex_count()];
    for (i, s) in simplices.iter().enumerate() {
        s.iter().for_each(|v| owner[v] = Some(i));
    }
    let mut edges = Vec::new();
    for i in 0..simplices.len() {
        for j in i + 1..simplices.len() {
            if c.is_clique(simplices[i].union(&simplices[j]).as_slice()) {
                edges.push((i, j));
            }
        }
    }
    FixComplex {
        complex: FlagComplex::from_normalized(simplices.len(), edges),
        simplices,
        owner,
    }
}

/// The `<_σ`-least vertex of a clique.
fn order_minimum(ps: &ProjectionStructure, sigma: usize, delta: &VertexSet) -> Result<usize> {
    let minima: Vec<usize> = delta
        .iter()
        .filter(|&d| delta.iter().all(|e| !ps.less(sigma, e, d)))
        .collect();
    match minima.as_slice() {
        [m] => Ok(*m),
        _ => Err(Error::structural(
            format!("simplex has no unique <_{sigma}-minimum"),
            delta.as_slice().to_vec(),
        )),
    }
}

fn big_project_from(
    ps: &ProjectionStructure,
    a: &GroupAction,
    sigma: usize,
    delta: &VertexSet,
) -> Result<(usize, VertexSet)> {
    let d = order_minimum(ps, sigma, delta)?;
    Ok((d, a.orbit(ps.proj(sigma, d))))
}

/// `Π_Σ(Δ)`: the orbit of `π_σ(δ)` where `σ` is the least vertex of `Σ` and
/// `δ` the `<_σ`-minimum of `Δ`. The result must be a clique spanning a
/// clique with `Δ`, and lie above `δ` in `≤_σ`.
pub fn big_project(
    ps: &ProjectionStructure,
    a: &GroupAction,
    sigma_simplex: &VertexSet,
    delta: &VertexSet,
) -> Result<VertexSet> {
    if sigma_simplex == delta {
        return Err(Error::Precondition("Π_Σ(Δ) needs Σ ≠ Δ".into()));
    }
    let sigma = sigma_simplex
        .first()
        .ok_or_else(|| Error::Input("empty simplex".into()))?;
    if delta.contains(sigma) {
        return Err(Error::Precondition(
            "Σ and Δ must be disjoint orbits".into(),
        ));
    }
    let (d, result) = big_project_from(ps, a, sigma, delta)?;
    let c = ps.complex();
    if !c.is_clique(result.as_slice()) {
        return Err(Error::structural(
            "Π_Σ(Δ) is not a simplex",
            result.into_vec(),
        ));
    }
    if !c.is_clique(result.union(delta).as_slice()) {
        return Err(Error::structural(
            "Π_Σ(Δ) does not span a simplex with Δ",
            result.into_vec(),
        ));
    }
    if let Some(p) = result.iter().find(|&p| !ps.leq(sigma, d, p)) {
        return Err(Error::structural(
            "Π_Σ(Δ) is not above the minimum of Δ",
            vec![sigma, d, p],
        ));
    }
    Ok(result)
}

/// The distance sum from `σ` to `Π_Σ(Δ)` is below that to `Δ`, for every
/// choice of `σ ∈ Σ`, and `Π_Σ(Δ)` does not depend on that choice.
pub fn verify_distance_sum_decrease(
    ps: &ProjectionStructure,
    a: &GroupAction,
    sigma_simplex: &VertexSet,
    delta: &VertexSet,
) -> CheckReport {
    const NAME: &str = "fix.distance-sum";
    let mut reference: Option<VertexSet> = None;
    let mut cases = 0;
    for sigma in sigma_simplex.iter() {
        cases += 1;
        let Ok((_, image)) = big_project_from(ps, a, sigma, delta) else {
            return CheckReport::fail(
                NAME,
                cases,
                std::iter::once(sigma).chain(delta.iter()).collect(),
            )
            .with_detail("no order minimum");
        };
        let before: usize = delta.iter().map(|d| ps.dist(sigma, d)).sum();
        let after: usize = image.iter().map(|p| ps.dist(sigma, p)).sum();
        if after >= before {
            return CheckReport::fail(
                NAME,
                cases,
                std::iter::once(sigma).chain(delta.iter()).collect(),
            )
            .with_detail(format!("sum {after} is not below {before}"));
        }
        match &reference {
            Some(r) if *r != image => {
                return CheckReport::fail(
                    NAME,
                    cases,
                    std::iter::once(sigma).chain(image.iter()).collect(),
                )
                .with_detail("Π_Σ depends on the chosen vertex of Σ");
            }
            _ => reference = Some(image),
        }
    }
    CheckReport::pass(NAME, cases)
}

/// Dismantling of the fix complex from `Σ` (a fix-vertex id): fix-vertices are
/// ordered by their least ambient vertex in the linear extension of `<_σ`,
/// each retracting onto `Π_Σ`. The certificate is verified before return.
pub fn fix_dismantle(
    ps: &ProjectionStructure,
    a: &GroupAction,
    fix: &FixComplex,
    sigma_vertex: usize,
) -> Result<DismantlingOrder> {
    let sigma_simplex = fix
        .simplices
        .get(sigma_vertex)
        .ok_or_else(|| Error::Input(format!("fix-vertex {sigma_vertex} out of range")))?;
    let sigma = sigma_simplex.first().expect("orbits are nonempty");
    let extension = projection::linear_extension(ps, sigma)?;
    let mut rank = vec![0; ps.vertex_count()];
    extension.iter().enumerate().for_each(|(i, &v)| rank[v] = i);
    let mut order: Vec<usize> = (0..fix.vertex_count()).collect();
    order.sort_by_key(|&x| fix.simplices[x].iter().map(|v| rank[v]).min());
    if order.last() != Some(&sigma_vertex) {
        return Err(Error::structural(
            "Σ is not the largest fix-vertex",
            vec![sigma_vertex],
        ));
    }
    let mut position = vec![0; fix.vertex_count()];
    order.iter().enumerate().for_each(|(i, &x)| position[x] = i);
    let mut witness = Vec::with_capacity(order.len().saturating_sub(1));
    for &x in &order[..order.len() - 1] {
        let image = big_project(ps, a, sigma_simplex, &fix.simplices[x])?;
        let target = fix.find(&image).ok_or_else(|| {
            Error::structural(
                "fix complex is not closed under Π_Σ",
                image.as_slice().to_vec(),
            )
        })?;
        witness.push(position[target]);
    }
    let d = DismantlingOrder { order, witness };
    let report = dismantle::verify_dismantling(&fix.complex, &d)?;
    if !report.passed {
        return Err(Error::structural(
            "Π_Σ order violates the dismantling conditions",
            report.witness.unwrap_or_default(),
        ));
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::{self, HeightFunction};

    fn family(columns: usize, members: &[&[i64]]) -> HeightFamily {
        HeightFamily::new(
            columns,
            members
                .iter()
                .map(|m| HeightFunction::normalized(m.to_vec()).unwrap())
                .collect(),
        )
        .unwrap()
    }

    /// ids 0=(0,0) 1=(0,1) 2=(1,0): the path 1 - 0 - 2.
    fn f1() -> (ProjectionStructure, GroupAction) {
        let fam = family(2, &[&[0, 0], &[0, 1], &[1, 0]]);
        let ps = ProjectionStructure::from_family(&fam).unwrap();
        let swap = GroupAction::from_columns(&fam, &[ColumnPermutation(vec![1, 0])]).unwrap();
        (ps, swap)
    }

    #[test]
    fn permutations_are_validated() {
        assert!(GroupAction::new(3, vec![vec![0, 2, 1]]).is_ok());
        assert!(GroupAction::new(3, vec![vec![0, 1]]).is_err());
        assert!(GroupAction::new(3, vec![vec![0, 0, 1]]).is_err());
    }

    #[test]
    fn orbits_and_elements() {
        let (_, swap) = f1();
        assert_eq!(swap.generators(), &[vec![0, 2, 1]]);
        assert_eq!(swap.orbit(1).as_slice(), &[1, 2]);
        assert_eq!(swap.orbit(0).as_slice(), &[0]);
        assert_eq!(GroupAction::trivial(3).orbit(2).as_slice(), &[2]);
        assert_eq!(swap.elements(DEFAULT_GROUP_CAP).unwrap().len(), 2);
        let cyc = GroupAction::new(4, vec![vec![1, 2, 3, 0]]).unwrap();
        assert_eq!(cyc.elements(10).unwrap().len(), 4);
        assert!(cyc.elements(3).is_err());
    }

    #[test]
    fn equivariance_checks() {
        let (ps, swap) = f1();
        assert!(check_action(&ps, &swap).passed);
        assert!(check_action(&ps, &GroupAction::trivial(3)).passed);
        let bad = GroupAction::new(3, vec![vec![1, 0, 2]]).unwrap();
        let report = check_action(&ps, &bad);
        assert!(!report.passed);
        assert_eq!(report.detail.as_deref(), Some("not an automorphism"));
    }

    #[test]
    fn semi_convexity() {
        let (ps, _) = f1();
        assert!(is_semi_convex(&ps, &VertexSet::range(3)).unwrap().passed);
        assert!(
            is_semi_convex(&ps, &VertexSet::singleton(1))
                .unwrap()
                .passed
        );
        let ends: VertexSet = [1, 2].into_iter().collect();
        assert!(is_semi_convex(&ps, &ends).is_err());

        // a convex-closed family passes with the projection itself as witness
        let fam = cover::close_convex(&family(3, &[&[0, 0, 0], &[0, 1, 3]])).unwrap();
        let ps = ProjectionStructure::from_family(&fam).unwrap();
        assert!(
            is_semi_convex(&ps, &VertexSet::range(fam.len()))
                .unwrap()
                .passed
        );
    }

    #[test]
    fn strong_domination() {
        let (ps, _) = f1();
        assert_eq!(
            strongly_dominated(ps.complex(), &VertexSet::range(3)).as_slice(),
            &[1, 2]
        );
        let k3 = FlagComplex::new(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        assert!(strongly_dominated(&k3, &VertexSet::range(3)).is_empty());
        let c4 = FlagComplex::new(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        assert!(strongly_dominated(&c4, &VertexSet::range(4)).is_empty());
    }

    #[test]
    fn layer_statistic() {
        let (ps, _) = f1();
        assert_eq!(layer_chain_stat(&ps, &VertexSet::range(3)).unwrap(), 1);
        assert_eq!(layer_chain_stat(&ps, &VertexSet::singleton(0)).unwrap(), 0);
        // a triangle: every base sees the other two as a chain of length 2
        let tri = cover::close_convex(&family(3, &[&[0, 0, 0], &[0, 0, 1], &[0, 1, 1]])).unwrap();
        assert_eq!(tri.len(), 3);
        let ps = ProjectionStructure::from_family(&tri).unwrap();
        assert_eq!(layer_chain_stat(&ps, &VertexSet::range(3)).unwrap(), 2);
    }

    #[test]
    fn invariant_simplex_on_f1() {
        let (ps, swap) = f1();
        let found = find_invariant_simplex(&ps, &swap, 1).unwrap();
        assert_eq!(found.simplex.as_slice(), &[0]);
        assert_eq!(found.hull, VertexSet::range(3));
        assert_eq!(found.trace.len(), 1);
        assert_eq!(found.trace[0].removed.as_slice(), &[1, 2]);

        let trivial = GroupAction::trivial(3);
        assert_eq!(
            find_invariant_simplex(&ps, &trivial, 2)
                .unwrap()
                .simplex
                .as_slice(),
            &[2]
        );
    }

    #[test]
    fn fix_complexes() {
        let (ps, swap) = f1();
        let fix = fix_complex(ps.complex(), &swap);
        assert_eq!(fix.simplices, vec![VertexSet::singleton(0)]);
        let d = fix_dismantle(&ps, &swap, &fix, 0).unwrap();
        assert_eq!(d.order, vec![0]);

        let ident = fix_complex(ps.complex(), &GroupAction::trivial(3));
        assert_eq!(&ident.complex, ps.complex());

        let k2 = FlagComplex::new(2, &[(0, 1)]).unwrap();
        let edge_swap = GroupAction::new(2, vec![vec![1, 0]]).unwrap();
        let fix = fix_complex(&k2, &edge_swap);
        assert_eq!(fix.simplices, vec![VertexSet::range(2)]);
    }

    #[test]
    fn identity_action_reduces_to_plain_projection() {
        let fam = cover::close_convex(&family(3, &[&[0, 0, 0], &[0, 1, 3], &[2, 0, 1]])).unwrap();
        let ps = ProjectionStructure::from_family(&fam).unwrap();
        let trivial = GroupAction::trivial(fam.len());
        let fix = fix_complex(ps.complex(), &trivial);
        for s in 0..fam.len() {
            for r in (0..fam.len()).filter(|&r| r != s) {
                let image = big_project(
                    &ps,
                    &trivial,
                    &VertexSet::singleton(s),
                    &VertexSet::singleton(r),
                )
                .unwrap();
                assert_eq!(image, VertexSet::singleton(ps.proj(s, r)));
                let report = verify_distance_sum_decrease(
                    &ps,
                    &trivial,
                    &VertexSet::singleton(s),
                    &VertexSet::singleton(r),
                );
                assert!(report.passed);
            }
            let plain = dismantle::projection_dismantle(&ps, s).unwrap();
            assert_eq!(fix_dismantle(&ps, &trivial, &fix, s).unwrap(), plain);
        }
    }

    #[test]
    fn distance_sum_violation_is_reported() {
        // path 0 - 1 - 2 where every projection points away from the base
        let c = FlagComplex::new(3, &[(0, 1), (1, 2)]).unwrap();
        let ps = ProjectionStructure::from_fns(
            c,
            |s, r| if r == 1 { 2 - s.min(2) } else { 1 },
            |_, a, b| a < b,
        )
        .unwrap();
        let report = verify_distance_sum_decrease(
            &ps,
            &GroupAction::trivial(3),
            &VertexSet::singleton(0),
            &VertexSet::singleton(1),
        );
        assert!(!report.passed);
    }
}
