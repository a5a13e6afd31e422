//! Height-function model of the infinite cyclic cover.
//!
//! A vertex is an integer function on a finite column set, taken modulo
//! adding a constant (the deck transformation). Over column `c` the lift of
//! the complement of the surface `f` translated `k` times occupies the open
//! height interval `(f(c) + k, f(c) + k + 1)`, so two lifts meet exactly when
//! their integer offsets agree on some column. Everything below is read off
//! from differences `g - f`.

use std::collections::{HashMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::FlagComplex;
use crate::error::{Error, Result};

/// Largest column count for which [`column_symmetries`] enumerates all
/// permutations.
pub const DEFAULT_SYMMETRY_COLUMN_CAP: usize = 8;

const GENERATION_RETRIES: usize = 16;

/// A normalized height function: minimum value 0, at least one column.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HeightFunction(Vec<i64>);

impl HeightFunction {
    /// Accepts only already-normalized values.
    pub fn new(values: Vec<i64>) -> Result<Self> {
        match values.iter().min() {
            None => Err(Error::Input(
                "height function needs at least one column".into(),
            )),
            Some(&0) => Ok(HeightFunction(values)),
            Some(&m) => Err(Error::Input(format!(
                "height function {values:?} is not normalized (minimum {m}, expected 0)"
            ))),
        }
    }

    /// Translates `values` so that the minimum becomes 0.
    pub fn normalized(mut values: Vec<i64>) -> Result<Self> {
        let min = *values
            .iter()
            .min()
            .ok_or_else(|| Error::Input("height function needs at least one column".into()))?;
        values.iter_mut().for_each(|v| *v -= min);
        Ok(HeightFunction(values))
    }

    pub fn values(&self) -> &[i64] {
        &self.0
    }

    pub fn columns(&self) -> usize {
        self.0.len()
    }

    pub fn max_height(&self) -> i64 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    fn diff(&self, other: &HeightFunction) -> Result<Vec<i64>> {
        if self.columns() != other.columns() {
            return Err(Error::Input(format!(
                "column count mismatch: {} vs {}",
                self.columns(),
                other.columns()
            )));
        }
        Ok(other.0.iter().zip(&self.0).map(|(g, f)| g - f).collect())
    }
}

/// Extreme translate indices met by the lift of `g`'s complement, measured
/// against the translates of `f`'s complement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DistanceCertificate {
    pub r: i64,
    pub m_low: i64,
    pub d: u64,
}

/// `r = max(g - f)`, `m_low = min(g - f)`, `d = r - m_low`.
pub fn kakimizu_distance(f: &HeightFunction, g: &HeightFunction) -> Result<DistanceCertificate> {
    let diff = f.diff(g)?;
    let r = *diff.iter().max().unwrap_or(&0);
    let m_low = *diff.iter().min().unwrap_or(&0);
    Ok(DistanceCertificate {
        r,
        m_low,
        d: (r - m_low) as u64,
    })
}

/// Projection of `g` toward the base `f`.
///
/// With `g` shifted so that `min(g - f) = 0` (hence `r = d`), the result is
/// `min(g, f + r - 1)` columnwise. It is adjacent to `g` and one step closer
/// to `f`.
pub fn project(f: &HeightFunction, g: &HeightFunction) -> Result<HeightFunction> {
    let diff = f.diff(g)?;
    let lo = *diff.iter().min().unwrap_or(&0);
    let r = *diff.iter().max().unwrap_or(&0) - lo;
    if r == 0 {
        return Err(Error::Precondition(
            "projection requires distinct vertices".into(),
        ));
    }
    let values =
        f.0.iter()
            .zip(&g.0)
            .map(|(&fc, &gc)| (gc - lo).min(fc + r - 1))
            .collect();
    HeightFunction::normalized(values)
}

/// Whether `g <_f g2` for adjacent `g`, `g2`.
///
/// `g` is shifted to the unique translate with `g2 - 1 <= g + t <= g2`; the
/// relation holds iff that translate reaches the top translate index of `g2`.
pub fn order_less(f: &HeightFunction, g: &HeightFunction, g2: &HeightFunction) -> Result<bool> {
    let cert = kakimizu_distance(g, g2)?;
    if cert.d != 1 {
        return Err(Error::Precondition(format!(
            "order is defined on adjacent vertices only (distance {})",
            cert.d
        )));
    }
    let t = cert.m_low;
    let shifted_top = f.diff(g)?.into_iter().max().unwrap_or(0) + t;
    let top = f.diff(g2)?.into_iter().max().unwrap_or(0);
    Ok(shifted_top == top)
}

/// A permutation of columns; column `c` is sent to `self[c]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColumnPermutation(pub Vec<usize>);

impl ColumnPermutation {
    pub fn identity(m: usize) -> Self {
        ColumnPermutation((0..m).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// `(p·f)(p(c)) = f(c)`.
    pub fn apply(&self, f: &HeightFunction) -> HeightFunction {
        let mut out = vec![0; f.columns()];
        for (c, &v) in f.0.iter().enumerate() {
            out[self.0[c]] = v;
        }
        HeightFunction(out)
    }

    fn validate(&self, m: usize) -> Result<()> {
        let mut seen = vec![false; m];
        if self.0.len() != m {
            return Err(Error::Input(format!(
                "column permutation has length {}, expected {m}",
                self.0.len()
            )));
        }
        for &p in &self.0 {
            if p >= m || std::mem::replace(&mut seen[p], true) {
                return Err(Error::Input(format!("{:?} is not a permutation", self.0)));
            }
        }
        Ok(())
    }
}

/// A finite set of distinct normalized height functions over a common column
/// set, stored in lexicographic order. Vertex ids are positions in that order;
/// two members span an edge iff their distance is 1.
#[derive(Debug, Clone)]
pub struct HeightFamily {
    columns: usize,
    members: Vec<HeightFunction>,
    index: HashMap<HeightFunction, usize>,
    complex: FlagComplex,
}

impl PartialEq for HeightFamily {
    fn eq(&self, other: &Self) -> bool {
        self.columns == other.columns && self.members == other.members
    }
}

impl Eq for HeightFamily {}

impl HeightFamily {
    pub fn new(columns: usize, members: Vec<HeightFunction>) -> Result<Self> {
        if columns == 0 {
            return Err(Error::Input(
                "a height family needs at least one column".into(),
            ));
        }
        let mut members = members;
        for f in &members {
            if f.columns() != columns {
                return Err(Error::Input(format!(
                    "member {:?} has {} columns, expected {columns}",
                    f.values(),
                    f.columns()
                )));
            }
        }
        members.sort();
        if let Some(w) = members.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Input(format!(
                "duplicate member {:?}",
                w[0].values()
            )));
        }
        Ok(Self::from_sorted(columns, members))
    }

    fn from_sorted(columns: usize, members: Vec<HeightFunction>) -> Self {
        let index = members
            .iter()
            .enumerate()
            .map(|(i, f)| (f.clone(), i))
            .collect();
        let mut edges = Vec::new();
        for i in 0..members.len() {
            for j in i + 1..members.len() {
                if spread(&members[i], &members[j]) == 1 {
                    edges.push((i, j));
                }
            }
        }
        HeightFamily {
            columns,
            complex: FlagComplex::from_normalized(members.len(), edges),
            members,
            index,
        }
    }

    pub fn columns(&self) -> usize {
        self.columns
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[HeightFunction] {
        &self.members
    }

    pub fn member(&self, id: usize) -> &HeightFunction {
        &self.members[id]
    }

    pub fn id_of(&self, f: &HeightFunction) -> Option<usize> {
        self.index.get(f).copied()
    }

    pub fn complex(&self) -> &FlagComplex {
        &self.complex
    }

    /// Largest pairwise distance between members.
    pub fn diameter(&self) -> u64 {
        let mut best = 0;
        for (i, f) in self.members.iter().enumerate() {
            for g in &self.members[i + 1..] {
                best = best.max(spread(f, g));
            }
        }
        best
    }

    /// First ordered pair `(σ, ρ)` whose projection leaves the family, if any.
    pub fn convexity_violation(&self) -> Option<(usize, usize)> {
        for (s, f) in self.members.iter().enumerate() {
            for (r, g) in self.members.iter().enumerate() {
                if s != r && self.id_of(&project_unchecked(f, g)).is_none() {
                    return Some((s, r));
                }
            }
        }
        None
    }

    pub fn is_convex_closed(&self) -> bool {
        self.convexity_violation().is_none()
    }

    /// Vertex permutation induced by a column permutation, or `None` if the
    /// family is not invariant under it.
    pub fn vertex_permutation(&self, p: &ColumnPermutation) -> Result<Option<Vec<usize>>> {
        p.validate(self.columns)?;
        Ok(self
            .members
            .iter()
            .map(|f| self.id_of(&p.apply(f)))
            .collect())
    }
}

fn spread(f: &HeightFunction, g: &HeightFunction) -> u64 {
    let mut lo = i64::MAX;
    let mut hi = i64::MIN;
    for (a, b) in f.0.iter().zip(&g.0) {
        let d = b - a;
        lo = lo.min(d);
        hi = hi.max(d);
    }
    (hi - lo) as u64
}

fn project_unchecked(f: &HeightFunction, g: &HeightFunction) -> HeightFunction {
    project(f, g).expect("members share a column count and are distinct")
}

/// Height bound `[0, H0 + D + 1]` that closures of `fam` must respect.
fn closure_height_bound(fam: &HeightFamily) -> i64 {
    let h0 = fam
        .members
        .iter()
        .map(HeightFunction::max_height)
        .max()
        .unwrap_or(0);
    h0 + fam.diameter() as i64 + 1
}

struct Closure {
    members: Vec<HeightFunction>,
    seen: HashSet<HeightFunction>,
    bound: i64,
    member_cap: usize,
}

impl Closure {
    fn new(fam: &HeightFamily, member_cap: usize) -> Self {
        Closure {
            members: fam.members.clone(),
            seen: fam.members.iter().cloned().collect(),
            bound: closure_height_bound(fam),
            member_cap,
        }
    }

    fn insert(&mut self, p: HeightFunction) -> Result<()> {
        if self.seen.contains(&p) {
            return Ok(());
        }
        if p.max_height() > self.bound {
            return Err(Error::ModelViolation(format!(
                "closure produced {:?}, above the height bound {}",
                p.values(),
                self.bound
            )));
        }
        if self.members.len() >= self.member_cap {
            return Err(Error::CapExceeded {
                what: "closure member",
                limit: self.member_cap,
            });
        }
        self.seen.insert(p.clone());
        self.members.push(p);
        Ok(())
    }

    fn finish(self, columns: usize) -> HeightFamily {
        let mut members = self.members;
        members.sort();
        HeightFamily::from_sorted(columns, members)
    }
}

/// Smallest superset of `fam` closed under `ρ ↦ project(σ, ρ)`.
pub fn close_sigma_convex(fam: &HeightFamily, sigma: &HeightFunction) -> Result<HeightFamily> {
    if fam.id_of(sigma).is_none() {
        return Err(Error::Precondition(
            "base vertex is not a member of the family".into(),
        ));
    }
    let mut closure = Closure::new(fam, usize::MAX);
    let mut next = 0;
    while next < closure.members.len() {
        let rho = closure.members[next].clone();
        next += 1;
        if &rho != sigma {
            closure.insert(project(sigma, &rho)?)?;
        }
    }
    Ok(closure.finish(fam.columns))
}

/// Smallest superset of `fam` closed under projection for every ordered pair.
pub fn close_convex(fam: &HeightFamily) -> Result<HeightFamily> {
    close_convex_capped(fam, usize::MAX)
}

/// As [`close_convex`], failing once the closure would exceed `member_cap`
/// members.
pub fn close_convex_capped(fam: &HeightFamily, member_cap: usize) -> Result<HeightFamily> {
    if fam.is_empty() {
        return Err(Error::Input("convex closure of an empty family".into()));
    }
    let mut closure = Closure::new(fam, member_cap);
    let mut i = 0;
    while i < closure.members.len() {
        for j in 0..i {
            let a = closure.members[i].clone();
            let b = closure.members[j].clone();
            closure.insert(project(&a, &b)?)?;
            closure.insert(project(&b, &a)?)?;
        }
        i += 1;
    }
    Ok(closure.finish(fam.columns))
}

/// Parameters for [`generate_random`] and [`generate_symmetric`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenParams {
    pub columns: usize,
    pub count: usize,
    pub max_height: i64,
    pub seed: u64,
    /// Closures larger than this are discarded and redrawn.
    pub max_vertices: usize,
}

impl GenParams {
    pub fn new(columns: usize, count: usize, max_height: i64, seed: u64) -> Self {
        GenParams {
            columns,
            count,
            max_height,
            seed,
            max_vertices: 300,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.columns == 0 || self.count == 0 || self.max_height < 1 {
            return Err(Error::Input(
                "generation needs columns >= 1, count >= 1, max height >= 1".into(),
            ));
        }
        Ok(())
    }
}

fn draw_members(rng: &mut ChaCha8Rng, p: &GenParams) -> Result<Vec<HeightFunction>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < p.count && attempts < p.count * 32 {
        attempts += 1;
        let raw: Vec<i64> = (0..p.columns)
            .map(|_| rng.gen_range(0..=p.max_height))
            .collect();
        let f = HeightFunction::normalized(raw)?;
        if seen.insert(f.clone()) {
            out.push(f);
        }
    }
    Ok(out)
}

/// Reproducible convex-closed family: `count` distinct draws with heights in
/// `0..=max_height`, then closed. Oversized closures are redrawn a bounded
/// number of times.
pub fn generate_random(p: &GenParams) -> Result<HeightFamily> {
    generate_with(p, |_, members| members)
}

/// Like [`generate_random`], but the draws are first saturated under the
/// group generated by `symmetry`, so the result is invariant under it.
pub fn generate_symmetric(p: &GenParams, symmetry: &ColumnPermutation) -> Result<HeightFamily> {
    symmetry.validate(p.columns)?;
    generate_with(p, |_, members| {
        let mut seen: HashSet<HeightFunction> = members.iter().cloned().collect();
        let mut out = members;
        let mut i = 0;
        while i < out.len() {
            let image = symmetry.apply(&out[i]);
            if seen.insert(image.clone()) {
                out.push(image);
            }
            i += 1;
        }
        out
    })
}

fn generate_with<F>(p: &GenParams, saturate: F) -> Result<HeightFamily>
where
    F: Fn(&GenParams, Vec<HeightFunction>) -> Vec<HeightFunction>,
{
    p.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    for _ in 0..GENERATION_RETRIES {
        let members = saturate(p, draw_members(&mut rng, p)?);
        let raw = HeightFamily::new(p.columns, members)?;
        match close_convex_capped(&raw, p.max_vertices) {
            Ok(fam) => return Ok(fam),
            Err(Error::CapExceeded { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::CapExceeded {
        what: "generated family vertex",
        limit: p.max_vertices,
    })
}

/// Every column permutation under which `fam` is invariant, identity first,
/// in lexicographic order.
pub fn column_symmetries(fam: &HeightFamily) -> Result<Vec<ColumnPermutation>> {
    column_symmetries_capped(fam, DEFAULT_SYMMETRY_COLUMN_CAP)
}

pub fn column_symmetries_capped(
    fam: &HeightFamily,
    column_cap: usize,
) -> Result<Vec<ColumnPermutation>> {
    let m = fam.columns();
    if m > column_cap {
        return Err(Error::CapExceeded {
            what: "symmetry search column",
            limit: column_cap,
        });
    }
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..m).collect();
    loop {
        let p = ColumnPermutation(perm.clone());
        if fam.members.iter().all(|f| fam.id_of(&p.apply(f)).is_some()) {
            out.push(p);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(out)
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap_or(i);
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hf(v: &[i64]) -> HeightFunction {
        HeightFunction::normalized(v.to_vec()).unwrap()
    }

    fn fam(columns: usize, members: &[&[i64]]) -> HeightFamily {
        HeightFamily::new(columns, members.iter().map(|m| hf(m)).collect()).unwrap()
    }

    /// Translate indices `k` for which the lift of `g` meets `E_k`, computed
    /// cell by cell rather than from differences.
    fn overlapping_translates(f: &HeightFunction, g: &HeightFunction) -> Vec<i64> {
        let mut ks = Vec::new();
        for c in 0..f.columns() {
            for k in -20..=20 {
                let lower_f = f.values()[c] + k;
                let lower_g = g.values()[c];
                // open unit intervals (lower, lower + 1) intersect iff the lower ends agree
                if lower_f.max(lower_g) < (lower_f + 1).min(lower_g + 1) {
                    ks.push(k);
                }
            }
        }
        ks.sort_unstable();
        ks.dedup();
        ks
    }

    #[test]
    fn normalization() {
        assert!(HeightFunction::new(vec![1, 2]).is_err());
        assert!(HeightFunction::new(vec![]).is_err());
        assert_eq!(hf(&[3, 5, 4]).values(), &[0, 2, 1]);
    }

    #[test]
    fn distance_examples() {
        let c = kakimizu_distance(&hf(&[0, 0]), &hf(&[0, 0])).unwrap();
        assert_eq!(c.d, 0);
        let c = kakimizu_distance(&hf(&[0, 0]), &hf(&[0, 1])).unwrap();
        assert_eq!((c.r, c.m_low, c.d), (1, 0, 1));
        let c = kakimizu_distance(&hf(&[0, 0, 0]), &hf(&[0, 1, 2])).unwrap();
        assert_eq!((c.r, c.m_low, c.d), (2, 0, 2));
        assert!(kakimizu_distance(&hf(&[0]), &hf(&[0, 1])).is_err());
    }

    #[test]
    fn distance_agrees_with_cell_overlaps() {
        let cases: [(&[i64], &[i64]); 4] = [
            (&[0, 0], &[0, 1]),
            (&[0, 0, 0], &[0, 1, 2]),
            (&[0, 3, 1], &[2, 0, 0]),
            (&[1, 0, 4, 2], &[0, 0, 1, 3]),
        ];
        for (f, g) in cases {
            let (f, g) = (hf(f), hf(g));
            let ks = overlapping_translates(&f, &g);
            let c = kakimizu_distance(&f, &g).unwrap();
            assert_eq!(c.r, *ks.last().unwrap());
            assert_eq!(c.m_low, ks[0]);
        }
    }

    #[test]
    fn projection_examples() {
        assert_eq!(
            project(&hf(&[0, 0, 0]), &hf(&[0, 1, 2])).unwrap(),
            hf(&[0, 1, 1])
        );
        assert_eq!(project(&hf(&[0, 0]), &hf(&[0, 1])).unwrap(), hf(&[0, 0]));
        assert_eq!(
            project(&hf(&[0, 1, 2]), &hf(&[0, 0, 0])).unwrap(),
            hf(&[0, 1, 1])
        );
        assert!(matches!(
            project(&hf(&[0, 1]), &hf(&[0, 1])),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn projection_decrements_distance() {
        let f = hf(&[0, 0, 0]);
        let g = hf(&[0, 1, 2]);
        let p = project(&f, &g).unwrap();
        assert_eq!(kakimizu_distance(&f, &p).unwrap().d, 1);
        assert_eq!(kakimizu_distance(&g, &p).unwrap().d, 1);
    }

    #[test]
    fn order_examples() {
        let f = hf(&[0, 0, 0]);
        let g = hf(&[0, 1, 1]);
        let g2 = hf(&[0, 1, 2]);
        assert!(!order_less(&f, &g, &g2).unwrap());
        assert!(order_less(&f, &g2, &g).unwrap());
        assert!(matches!(
            order_less(&f, &f, &g2),
            Err(Error::Precondition(_))
        ));
        assert!(order_less(&f, &g, &g).is_err());
    }

    #[test]
    fn order_matches_lift_intersection() {
        // ρ <_σ ρ' iff the lift of ρ sitting just below ρ' meets E_{r'}.
        let f = hf(&[0, 2, 1]);
        let g2 = hf(&[1, 0, 2]);
        for mask in 1..7u32 {
            let g: Vec<i64> = (0..3)
                .map(|c| g2.values()[c] - i64::from((mask >> c) & 1))
                .collect();
            let g = hf(&g);
            let r_top = *overlapping_translates(&f, &g2).last().unwrap();
            let shifted: Vec<i64> = (0..3)
                .map(|c| g2.values()[c] - i64::from((mask >> c) & 1))
                .collect();
            let meets = (0..3).any(|c| shifted[c] - f.values()[c] == r_top);
            assert_eq!(order_less(&f, &g, &g2).unwrap(), meets, "mask {mask}");
        }
    }

    #[test]
    fn sigma_convex_closure() {
        let f = hf(&[0, 0, 0]);
        let fam2 = fam(3, &[&[0, 0, 0], &[0, 1, 2]]);
        let closed = close_sigma_convex(&fam2, &f).unwrap();
        assert_eq!(closed, fam(3, &[&[0, 0, 0], &[0, 1, 1], &[0, 1, 2]]));
        assert_eq!(close_sigma_convex(&closed, &f).unwrap(), closed);
        let adjacent = fam(2, &[&[0, 0], &[0, 1]]);
        assert_eq!(
            close_sigma_convex(&adjacent, &hf(&[0, 0])).unwrap(),
            adjacent
        );
        assert!(close_sigma_convex(&adjacent, &hf(&[1, 0])).is_err());
    }

    #[test]
    fn convex_closure() {
        let closed = close_convex(&fam(3, &[&[0, 0, 0], &[0, 1, 2]])).unwrap();
        assert_eq!(closed, fam(3, &[&[0, 0, 0], &[0, 1, 1], &[0, 1, 2]]));
        assert!(closed.is_convex_closed());
        let single = fam(2, &[&[0, 1]]);
        assert_eq!(close_convex(&single).unwrap(), single);
        assert!(!fam(3, &[&[0, 0, 0], &[0, 1, 2]]).is_convex_closed());
    }

    #[test]
    fn derived_graph_of_f1() {
        let f1 = fam(2, &[&[0, 0], &[0, 1], &[1, 0]]);
        assert_eq!(f1.complex().edges(), &[(0, 1), (0, 2)]);
        assert!(f1.is_convex_closed());
        assert_eq!(f1.diameter(), 2);
    }

    #[test]
    fn generation() {
        let one = generate_random(&GenParams::new(1, 5, 3, 11)).unwrap();
        assert_eq!(one.members(), &[hf(&[0])]);

        let small = generate_random(&GenParams::new(2, 3, 1, 7)).unwrap();
        assert!(small.len() <= 4);
        assert!(small.is_convex_closed());
        assert!(small
            .members()
            .iter()
            .all(|f| f.values().iter().all(|&h| (0..=1).contains(&h))));

        let p = GenParams::new(3, 8, 3, 42);
        assert_eq!(generate_random(&p).unwrap(), generate_random(&p).unwrap());
        assert!(generate_random(&GenParams::new(0, 1, 1, 0)).is_err());
    }

    #[test]
    fn symmetric_generation_is_invariant() {
        let swap = ColumnPermutation(vec![1, 0, 2]);
        let fam = generate_symmetric(&GenParams::new(3, 6, 3, 5), &swap).unwrap();
        assert!(fam.is_convex_closed());
        assert!(fam.vertex_permutation(&swap).unwrap().is_some());
    }

    #[test]
    fn symmetries() {
        let f1 = fam(2, &[&[0, 0], &[0, 1], &[1, 0]]);
        let syms = column_symmetries(&f1).unwrap();
        assert_eq!(
            syms,
            vec![
                ColumnPermutation::identity(2),
                ColumnPermutation(vec![1, 0])
            ]
        );
        assert_eq!(
            f1.vertex_permutation(&syms[1]).unwrap(),
            Some(vec![0, 2, 1])
        );

        let line = close_convex(&fam(3, &[&[0, 0, 0], &[0, 1, 2]])).unwrap();
        assert_eq!(
            column_symmetries(&line).unwrap(),
            vec![ColumnPermutation::identity(3)]
        );
        assert!(column_symmetries_capped(&line, 2).is_err());
    }

    #[test]
    fn permutation_enumeration_is_complete() {
        let mut p = vec![0, 1, 2, 3];
        let mut count = 1;
        while next_permutation(&mut p) {
            count += 1;
        }
        assert_eq!(count, 24);
    }
}
