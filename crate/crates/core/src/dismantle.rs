//! Dismantling orders: the projection-driven construction, a greedy cop-win
//! recognizer used as an independent oracle, and certificate verification.

use std::fmt;

use crate::complex::{FlagComplex, VertexSet};
use crate::error::{Error, Result};
use crate::projection::{self, CheckReport, ProjectionStructure};

/// Vertices `x_0..x_m` in elimination order together with, for each `i < m`,
/// the position `j > i` of the vertex `x_i` retracts onto.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DismantlingOrder {
    pub order: Vec<usize>,
    pub witness: Vec<usize>,
}

impl DismantlingOrder {
    /// Witness as vertex ids: `(x_i, x_witness(i))`.
    pub fn retractions(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.witness
            .iter()
            .enumerate()
            .map(|(i, &j)| (self.order[i], self.order[j]))
    }
}

impl fmt::Display for DismantlingOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "order")?;
        for v in &self.order {
            write!(f, " {v}")?;
        }
        for (v, w) in self.retractions() {
            write!(f, "\nwitness {v} {w}")?;
        }
        Ok(())
    }
}

/// Lowest-id `v` in `live` whose closed neighbourhood (within `live`) is
/// contained in that of some other live `w`; the lowest such `w` is returned.
pub fn dominated_vertex(c: &FlagComplex, live: &VertexSet) -> Option<(usize, usize)> {
    for v in live.iter() {
        let nv = c.closed_neighborhood(v, live).ok()?;
        for &w in c.neighbors(v).iter().filter(|&&w| live.contains(w)) {
            if nv.iter().all(|x| c.adjacent_or_equal(x, w)) {
                return Some((v, w));
            }
        }
    }
    None
}

/// Repeatedly deletes the lowest dominated vertex. Returns a verified order
/// when a single vertex remains, `None` otherwise.
pub fn greedy_dismantle(c: &FlagComplex) -> Option<DismantlingOrder> {
    let n = c.vertex_count();
    if n == 0 {
        return None;
    }
    let mut live = VertexSet::range(n);
    let mut removed = Vec::with_capacity(n);
    while live.len() > 1 {
        let (v, w) = dominated_vertex(c, &live)?;
        removed.push((v, w));
        live = live.iter().filter(|&x| x != v).collect();
    }
    let mut order: Vec<usize> = removed.iter().map(|&(v, _)| v).collect();
    order.extend(live.iter());
    let mut position = vec![0; n];
    order.iter().enumerate().for_each(|(i, &v)| position[v] = i);
    let witness = removed.iter().map(|&(_, w)| position[w]).collect();
    let d = DismantlingOrder { order, witness };
    verify_dismantling(c, &d).ok()?.passed.then_some(d)
}

/// Order from the linear extension of `<_σ`, each vertex retracting onto its
/// projection toward `σ`. The certificate is verified before it is returned.
pub fn projection_dismantle(ps: &ProjectionStructure, sigma: usize) -> Result<DismantlingOrder> {
    let all = VertexSet::range(ps.vertex_count());
    let (order, _) = projection_dismantle_within(ps, &all, sigma)?;
    Ok(order)
}

/// As [`projection_dismantle`] on the subcomplex induced by a `σ`-convex
/// vertex set. The order is expressed in ambient vertex ids; the induced
/// complex it certifies is returned alongside.
pub fn projection_dismantle_within(
    ps: &ProjectionStructure,
    subset: &VertexSet,
    sigma: usize,
) -> Result<(DismantlingOrder, FlagComplex)> {
    if !subset.contains(sigma) {
        return Err(Error::Precondition(format!(
            "base {sigma} is not in the vertex set"
        )));
    }
    for r in subset.iter().filter(|&r| r != sigma) {
        let p = ps.proj(sigma, r);
        if !subset.contains(p) {
            return Err(Error::structural(
                format!("vertex set is not {sigma}-convex"),
                vec![sigma, r, p],
            ));
        }
    }
    let order = projection::linear_extension_within(ps, sigma, subset)?;
    let mut position = vec![usize::MAX; ps.vertex_count()];
    order.iter().enumerate().for_each(|(i, &v)| position[v] = i);
    let witness: Vec<usize> = order[..order.len() - 1]
        .iter()
        .map(|&v| position[ps.proj(sigma, v)])
        .collect();
    let d = DismantlingOrder { order, witness };

    let (induced, remap) = ps.complex().induced(subset)?;
    let local = DismantlingOrder {
        order: d
            .order
            .iter()
            .map(|&v| subset.position(v).expect("order stays in the subset"))
            .collect(),
        witness: d.witness.clone(),
    };
    let report = verify_dismantling(&induced, &local)?;
    if !report.passed {
        let witness = report
            .witness
            .unwrap_or_default()
            .into_iter()
            .map(|v| remap[v])
            .collect();
        return Err(Error::structural(
            "projection order violates the dismantling conditions",
            witness,
        ));
    }
    Ok((d, induced))
}

/// Checks conditions (i) and (ii) at every position: the witness is later and
/// adjacent, and it is adjacent or equal to every later neighbour. The
/// failing witness is `(x_i, x_j)` for (i) or `(x_i, x_j, x_k)` for (ii).
pub fn verify_dismantling(c: &FlagComplex, d: &DismantlingOrder) -> Result<CheckReport> {
    let n = c.vertex_count();
    let m = d.order.len();
    let mut position = vec![usize::MAX; n];
    if m != n {
        return Err(Error::Input(format!(
            "order has {m} entries for {n} vertices"
        )));
    }
    for (i, &v) in d.order.iter().enumerate() {
        if v >= n || position[v] != usize::MAX {
            return Err(Error::Input(format!(
                "order is not a permutation (entry {v})"
            )));
        }
        position[v] = i;
    }
    if d.witness.len() != m.saturating_sub(1) {
        return Err(Error::Input(format!(
            "witness map has {} entries, expected {}",
            d.witness.len(),
            m.saturating_sub(1)
        )));
    }
    let mut cases = 0;
    for (i, &j) in d.witness.iter().enumerate() {
        if j >= m {
            return Err(Error::Input(format!("witness position {j} out of range")));
        }
        cases += 1;
        let (xi, xj) = (d.order[i], d.order[j]);
        if j <= i || !c.is_adjacent(xi, xj) {
            return Ok(CheckReport::fail(
                "dismantling.certificate",
                cases,
                vec![xi, xj],
            ));
        }
        for &xk in c.neighbors(xi) {
            if position[xk] > i && !c.adjacent_or_equal(xj, xk) {
                return Ok(CheckReport::fail(
                    "dismantling.certificate",
                    cases,
                    vec![xi, xj, xk],
                ));
            }
        }
    }
    Ok(CheckReport::pass("dismantling.certificate", cases))
}

/// Closure of `seed` under `ρ ↦ π_σ(ρ)`.
pub fn sigma_convex_hull(
    ps: &ProjectionStructure,
    seed: &VertexSet,
    sigma: usize,
) -> Result<VertexSet> {
    if !seed.contains(sigma) {
        return Err(Error::Precondition(format!(
            "base {sigma} is not in the seed"
        )));
    }
    let mut members: Vec<usize> = seed.iter().collect();
    let mut inside = vec![false; ps.vertex_count()];
    members.iter().for_each(|&v| inside[v] = true);
    let mut i = 0;
    while i < members.len() {
        let r = members[i];
        i += 1;
        if r == sigma {
            continue;
        }
        let p = ps.proj(sigma, r);
        if !inside[p] {
            inside[p] = true;
            members.push(p);
        }
    }
    Ok(members.into_iter().collect())
}
