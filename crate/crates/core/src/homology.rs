//! Integral simplicial homology of flag complexes.
//!
//! Boundary operators are assembled from the clique enumeration and reduced
//! over the integers. Large complexes are first thinned by eliminating unit
//! pivots (each contributes a divisor 1), and whatever remains is diagonalized
//! by the dense Smith normal form routine.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::complex::{FlagComplex, VertexSet, DEFAULT_CLIQUE_CAP};
use crate::error::{Error, Result};

/// Dense matrix of arbitrary-precision integers, row major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        (0..n).for_each(|i| m.set(i, i, BigInt::one()));
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Input("ragged matrix rows".into()));
        }
        Ok(IntegerMatrix {
            rows: rows.len(),
            cols,
            entries: rows.iter().flatten().map(|&v| BigInt::from(v)).collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &IntegerMatrix) -> Result<IntegerMatrix> {
        if self.cols != other.rows {
            return Err(Error::Input(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntegerMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.entries.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for r in 0..self.rows {
                self.entries.swap(r * self.cols + a, r * self.cols + b);
            }
        }
    }

    /// `row[target] -= factor * row[source]`
    fn sub_row(&mut self, target: usize, source: usize, factor: &BigInt) {
        for c in 0..self.cols {
            let delta = factor * &self.entries[source * self.cols + c];
            self.entries[target * self.cols + c] -= delta;
        }
    }

    fn sub_col(&mut self, target: usize, source: usize, factor: &BigInt) {
        for r in 0..self.rows {
            let delta = factor * &self.entries[r * self.cols + source];
            self.entries[r * self.cols + target] -= delta;
        }
    }
}

/// Invariant factors `d_1 | d_2 | ... | d_r` (all positive) and the rank `r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub divisors: Vec<BigInt>,
    pub rank: usize,
}

/// Smith normal form by elementary row and column moves, always pivoting on
/// an entry of least absolute value.
pub fn smith_normal_form(m: &IntegerMatrix) -> SmithForm {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut diagonal = Vec::new();
    for t in 0..rows.min(cols) {
        let Some((pr, pc)) = smallest_entry(&a, t) else {
            break;
        };
        a.swap_rows(t, pr);
        a.swap_cols(t, pc);
        loop {
            let mut dirty = false;
            for r in t + 1..rows {
                if a.get(r, t).is_zero() {
                    continue;
                }
                let q = a.get(r, t).div_floor(a.get(t, t));
                a.sub_row(r, t, &q);
                dirty |= !a.get(r, t).is_zero();
            }
            for c in t + 1..cols {
                if a.get(t, c).is_zero() {
                    continue;
                }
                let q = a.get(t, c).div_floor(a.get(t, t));
                a.sub_col(c, t, &q);
                dirty |= !a.get(t, c).is_zero();
            }
            if dirty {
                let (pr, pc) = smallest_entry_cross(&a, t);
                a.swap_rows(t, pr);
                a.swap_cols(t, pc);
                continue;
            }
            // row and column cleared; enforce divisibility of the rest
            let pivot = a.get(t, t).clone();
            let offender =
                (t + 1..rows).find(|&r| (t + 1..cols).any(|c| !a.get(r, c).is_multiple_of(&pivot)));
            match offender {
                Some(r) => {
                    let minus_one = -BigInt::one();
                    a.sub_row(t, r, &minus_one);
                }
                None => break,
            }
        }
        diagonal.push(a.get(t, t).abs());
    }
    diagonal.sort();
    SmithForm {
        rank: diagonal.len(),
        divisors: diagonal,
    }
}

fn smallest_entry(a: &IntegerMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for r in t..a.rows {
        for c in t..a.cols {
            let v = a.get(r, c);
            if v.is_zero() {
                continue;
            }
            if best.is_none_or(|(br, bc)| v.abs() < a.get(br, bc).abs()) {
                best = Some((r, c));
                if v.abs().is_one() {
                    return best;
                }
            }
        }
    }
    best
}

/// Least nonzero entry in row `t` or column `t` (which cannot both be zero
/// off the diagonal when this is called).
fn smallest_entry_cross(a: &IntegerMatrix, t: usize) -> (usize, usize) {
    let candidates = (t..a.rows)
        .map(|r| (r, t))
        .chain((t + 1..a.cols).map(|c| (t, c)));
    candidates
        .filter(|&(r, c)| !a.get(r, c).is_zero())
        .min_by_key(|&(r, c)| a.get(r, c).abs())
        .unwrap_or((t, t))
}

/// Column-sparse integer matrix used for boundary operators.
#[derive(Debug, Clone)]
struct SparseMatrix {
    rows: usize,
    columns: Vec<BTreeMap<usize, BigInt>>,
}

impl SparseMatrix {
    fn to_dense(&self) -> IntegerMatrix {
        let mut m = IntegerMatrix::zeros(self.rows, self.columns.len());
        for (c, col) in self.columns.iter().enumerate() {
            for (&r, v) in col {
                m.set(r, c, v.clone());
            }
        }
        m
    }

    /// `self * other` is zero.
    fn annihilates(&self, other: &SparseMatrix) -> bool {
        other.columns.iter().all(|col| {
            let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
            for (&k, b) in col {
                for (&r, a) in &self.columns[k] {
                    *acc.entry(r).or_default() += a * b;
                }
            }
            acc.values().all(Zero::is_zero)
        })
    }
}

/// Invariant factors of a sparse matrix: unit pivots are eliminated greedily
/// (least fill-in first), the remainder goes through [`smith_normal_form`].
fn sparse_smith(m: &SparseMatrix) -> SmithForm {
    let mut columns = m.columns.clone();
    let mut row_index: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m.rows];
    for (c, col) in columns.iter().enumerate() {
        for &r in col.keys() {
            row_index[r].insert(c);
        }
    }
    let mut units = 0usize;
    loop {
        let mut best: Option<(usize, usize, usize)> = None;
        'scan: for (c, col) in columns.iter().enumerate() {
            for (&r, v) in col {
                if !v.abs().is_one() {
                    continue;
                }
                let cost = (row_index[r].len() - 1) * (col.len() - 1);
                if best.is_none_or(|(b, _, _)| cost < b) {
                    best = Some((cost, r, c));
                    if cost == 0 {
                        break 'scan;
                    }
                }
            }
        }
        let Some((_, pr, pc)) = best else { break };
        units += 1;
        let pivot_col = std::mem::take(&mut columns[pc]);
        let unit = pivot_col[&pr].clone();
        for &r in pivot_col.keys() {
            row_index[r].remove(&pc);
        }
        let others: Vec<usize> = row_index[pr].iter().copied().collect();
        for k in others {
            let factor = &columns[k][&pr] * &unit;
            for (&r, v) in &pivot_col {
                let entry = columns[k].entry(r).or_default();
                *entry -= &factor * v;
                if entry.is_zero() {
                    columns[k].remove(&r);
                    row_index[r].remove(&k);
                } else {
                    row_index[r].insert(k);
                }
            }
        }
    }

    let live_rows: Vec<usize> = (0..m.rows).filter(|&r| !row_index[r].is_empty()).collect();
    let live_cols: Vec<usize> = (0..columns.len())
        .filter(|&c| !columns[c].is_empty())
        .collect();
    let mut divisors = vec![BigInt::one(); units];
    if !live_cols.is_empty() {
        let row_pos: HashMap<usize, usize> =
            live_rows.iter().enumerate().map(|(i, &r)| (r, i)).collect();
        let mut rest = IntegerMatrix::zeros(live_rows.len(), live_cols.len());
        for (j, &c) in live_cols.iter().enumerate() {
            for (r, v) in &columns[c] {
                rest.set(row_pos[r], j, v.clone());
            }
        }
        divisors.extend(smith_normal_form(&rest).divisors);
    }
    divisors.sort();
    SmithForm {
        rank: divisors.len(),
        divisors,
    }
}

fn cliques_by_dimension(c: &FlagComplex, top: usize) -> Result<Vec<Vec<VertexSet>>> {
    let mut by_dim: Vec<Vec<VertexSet>> = vec![Vec::new(); top + 1];
    for s in c.enumerate_cliques_capped(top, DEFAULT_CLIQUE_CAP)? {
        by_dim[s.len() - 1].push(s);
    }
    Ok(by_dim)
}

/// `∂_k` from `k`-simplices to `(k-1)`-simplices; face `i` carries sign `(-1)^i`.
fn sparse_boundary(faces: &[VertexSet], simplices: &[VertexSet]) -> SparseMatrix {
    let index: HashMap<&VertexSet, usize> = faces.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let columns = simplices
        .iter()
        .map(|s| {
            let mut col = BTreeMap::new();
            for i in 0..s.len() {
                let face: VertexSet = s
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, v)| v)
                    .collect();
                let sign = if i % 2 == 0 { 1 } else { -1 };
                col.insert(index[&face], BigInt::from(sign));
            }
            col
        })
        .collect();
    SparseMatrix {
        rows: faces.len(),
        columns,
    }
}

fn augmentation(vertices: usize) -> SparseMatrix {
    SparseMatrix {
        rows: 1,
        columns: (0..vertices)
            .map(|_| BTreeMap::from([(0, BigInt::one())]))
            .collect(),
    }
}

/// Dense boundary operators `∂_1, ..., ∂_max_dim`. A `∂_k` with no
/// `k`-simplices has zero columns. Fails if `∂∂ ≠ 0` or the clique cap is hit.
pub fn boundary_matrices(c: &FlagComplex, max_dim: usize) -> Result<Vec<IntegerMatrix>> {
    let by_dim = cliques_by_dimension(c, max_dim)?;
    let sparse: Vec<SparseMatrix> = (1..=max_dim)
        .map(|k| sparse_boundary(&by_dim[k - 1], &by_dim[k]))
        .collect();
    for pair in sparse.windows(2) {
        if !pair[0].annihilates(&pair[1]) {
            return Err(Error::structural(
                "boundary of a boundary is not zero",
                vec![],
            ));
        }
    }
    Ok(sparse.iter().map(SparseMatrix::to_dense).collect())
}

/// Reduced homology in one dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyGroup {
    pub dim: usize,
    pub betti: usize,
    /// Torsion coefficients, each greater than 1 and dividing the next.
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn is_trivial(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyProfile {
    pub groups: Vec<HomologyGroup>,
}

impl HomologyProfile {
    pub fn is_trivial(&self) -> bool {
        self.groups.iter().all(HomologyGroup::is_trivial)
    }

    pub fn betti(&self, dim: usize) -> usize {
        self.groups.get(dim).map_or(0, |g| g.betti)
    }
}

impl fmt::Display for HomologyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, g) in self.groups.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "betti {} = {}", g.dim, g.betti)?;
            if !g.torsion.is_empty() {
                write!(f, "\ntorsion {} =", g.dim)?;
                for t in &g.torsion {
                    write!(f, " {t}")?;
                }
            }
        }
        Ok(())
    }
}

/// Reduced integral homology in dimensions `0..=max_dim` (default: the top
/// simplex dimension).
pub fn reduced_homology(c: &FlagComplex, max_dim: Option<usize>) -> Result<HomologyProfile> {
    if c.vertex_count() == 0 {
        return Err(Error::Input("reduced homology of the empty complex".into()));
    }
    let top = max_dim.unwrap_or_else(|| c.clique_number() - 1);
    let by_dim = cliques_by_dimension(c, top + 1)?;
    // boundaries[k] is ∂_k for k = 0..=top+1, with ∂_0 the augmentation
    let mut boundaries = vec![augmentation(by_dim[0].len())];
    for k in 1..=top + 1 {
        boundaries.push(sparse_boundary(&by_dim[k - 1], &by_dim[k]));
    }
    for k in 0..=top {
        if !boundaries[k].annihilates(&boundaries[k + 1]) {
            return Err(Error::structural(
                format!("boundary of a boundary is not zero in dimension {}", k + 1),
                vec![],
            ));
        }
    }
    let forms: Vec<SmithForm> = boundaries.iter().map(sparse_smith).collect();
    let groups = (0..=top)
        .map(|k| {
            let chains = by_dim[k].len();
            HomologyGroup {
                dim: k,
                betti: chains - forms[k].rank - forms[k + 1].rank,
                torsion: forms[k + 1]
                    .divisors
                    .iter()
                    .filter(|d| !d.is_one())
                    .cloned()
                    .collect(),
            }
        })
        .collect();
    Ok(HomologyProfile { groups })
}

/// Reduced homology vanishes in every dimension up to the top simplex.
pub fn is_homology_point(c: &FlagComplex) -> Result<bool> {
    Ok(reduced_homology(c, None)?.is_trivial())
}
