//! Python bindings for the `kakimizu` crate.

use kakimizu::action::{self, GroupAction};
use kakimizu::complex::VertexSet;
use kakimizu::cover::{self, ColumnPermutation, GenParams};
use kakimizu::{dismantle, homology, io, projection, Error};
use num_bigint::BigInt;
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

create_exception!(kakimizu_py, StructuralError, PyException);

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Structural { .. } | Error::ModelViolation(_) => {
            StructuralError::new_err(e.to_string())
        }
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// Fix-vertex simplices and fix-complex edges.
type FixComplexParts = (Vec<Vec<usize>>, Vec<(usize, usize)>);

fn set(v: &VertexSet) -> Vec<usize> {
    v.as_slice().to_vec()
}

/// A flag complex given by its 1-skeleton.
#[pyclass(frozen)]
struct FlagComplex {
    inner: kakimizu::FlagComplex,
}

#[pymethods]
impl FlagComplex {
    #[new]
    fn new(vertices: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        let inner = kakimizu::FlagComplex::new(vertices, &edges).map_err(to_py)?;
        Ok(FlagComplex { inner })
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        let inner = io::parse_flag_complex(text).map_err(to_py)?;
        Ok(FlagComplex { inner })
    }

    fn serialize(&self) -> String {
        io::serialize_flag_complex(&self.inner)
    }

    #[getter]
    fn vertex_count(&self) -> usize {
        self.inner.vertex_count()
    }

    #[getter]
    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().to_vec()
    }

    fn distance(&self, u: usize, v: usize) -> PyResult<Option<usize>> {
        self.inner.distance(u, v).map_err(to_py)
    }

    fn diameter(&self) -> PyResult<Option<usize>> {
        self.inner.diameter().map_err(to_py)
    }

    fn clique_number(&self) -> usize {
        self.inner.clique_number()
    }

    #[pyo3(signature = (max_dim=None))]
    fn cliques(&self, max_dim: Option<usize>) -> PyResult<Vec<Vec<usize>>> {
        let top = max_dim.unwrap_or(self.inner.vertex_count());
        let cs = self.inner.enumerate_cliques(top).map_err(to_py)?;
        Ok(cs.iter().map(set).collect())
    }

    /// `(order, witness)` from the greedy recognizer, or `None`.
    fn greedy_dismantle(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        dismantle::greedy_dismantle(&self.inner).map(|d| (d.order, d.witness))
    }

    /// Reduced homology as a list of `(betti, torsion)` per dimension.
    #[pyo3(signature = (max_dim=None))]
    fn reduced_homology(&self, max_dim: Option<usize>) -> PyResult<Vec<(usize, Vec<BigInt>)>> {
        let h = homology::reduced_homology(&self.inner, max_dim).map_err(to_py)?;
        Ok(h.groups.into_iter().map(|g| (g.betti, g.torsion)).collect())
    }

    fn is_homology_point(&self) -> PyResult<bool> {
        homology::is_homology_point(&self.inner).map_err(to_py)
    }

    fn __repr__(&self) -> String {
        format!(
            "FlagComplex(vertices={}, edges={})",
            self.inner.vertex_count(),
            self.inner.edges().len()
        )
    }
}

/// A convex-closed (or arbitrary) family of normalized height functions.
#[pyclass(frozen)]
struct HeightFamily {
    inner: kakimizu::HeightFamily,
}

#[pymethods]
impl HeightFamily {
    #[new]
    fn new(columns: usize, members: Vec<Vec<i64>>) -> PyResult<Self> {
        let members = members
            .into_iter()
            .map(kakimizu::HeightFunction::normalized)
            .collect::<kakimizu::Result<Vec<_>>>()
            .map_err(to_py)?;
        let inner = kakimizu::HeightFamily::new(columns, members).map_err(to_py)?;
        Ok(HeightFamily { inner })
    }

    /// Seeded random family, closed under projections. With `symmetric`, the
    /// draws are saturated under swapping the first two columns.
    #[staticmethod]
    #[pyo3(signature = (columns, count, max_height, seed, symmetric=false, max_vertices=300))]
    fn generate(
        columns: usize,
        count: usize,
        max_height: i64,
        seed: u64,
        symmetric: bool,
        max_vertices: usize,
    ) -> PyResult<Self> {
        let mut p = GenParams::new(columns, count, max_height, seed);
        p.max_vertices = max_vertices;
        let inner = if symmetric {
            if columns < 2 {
                return Err(PyValueError::new_err(
                    "symmetric generation needs two columns",
                ));
            }
            let mut perm: Vec<usize> = (0..columns).collect();
            perm.swap(0, 1);
            cover::generate_symmetric(&p, &ColumnPermutation(perm))
        } else {
            cover::generate_random(&p)
        }
        .map_err(to_py)?;
        Ok(HeightFamily { inner })
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        let inner = io::parse_height_family(text).map_err(to_py)?;
        Ok(HeightFamily { inner })
    }

    fn serialize(&self) -> String {
        io::serialize_height_family(&self.inner)
    }

    fn close_convex(&self) -> PyResult<Self> {
        let inner = cover::close_convex(&self.inner).map_err(to_py)?;
        Ok(HeightFamily { inner })
    }

    fn is_convex_closed(&self) -> bool {
        self.inner.is_convex_closed()
    }

    #[getter]
    fn columns(&self) -> usize {
        self.inner.columns()
    }

    #[getter]
    fn members(&self) -> Vec<Vec<i64>> {
        self.inner
            .members()
            .iter()
            .map(|f| f.values().to_vec())
            .collect()
    }

    fn complex(&self) -> FlagComplex {
        FlagComplex {
            inner: self.inner.complex().clone(),
        }
    }

    /// Column permutations preserving the family.
    fn column_symmetries(&self) -> PyResult<Vec<Vec<usize>>> {
        let ps = cover::column_symmetries(&self.inner).map_err(to_py)?;
        Ok(ps.into_iter().map(|p| p.0).collect())
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!(
            "HeightFamily(columns={}, vertices={})",
            self.inner.columns(),
            self.inner.len()
        )
    }
}

/// Projection `π_σ` and order `<_σ` on a connected complex.
#[pyclass(frozen)]
struct ProjectionStructure {
    inner: kakimizu::ProjectionStructure,
}

impl ProjectionStructure {
    fn action(&self, generators: Option<Vec<Vec<usize>>>) -> PyResult<GroupAction> {
        match (generators, self.inner.family()) {
            (Some(g), _) => GroupAction::new(self.inner.vertex_count(), g).map_err(to_py),
            (None, Some(fam)) => {
                let perms = cover::column_symmetries(fam).map_err(to_py)?;
                GroupAction::from_columns(fam, &perms).map_err(to_py)
            }
            (None, None) => Ok(GroupAction::trivial(self.inner.vertex_count())),
        }
    }

    fn vertex(&self, v: usize) -> PyResult<usize> {
        if v >= self.inner.vertex_count() {
            return Err(PyValueError::new_err(format!("vertex {v} out of range")));
        }
        Ok(v)
    }
}

#[pymethods]
impl ProjectionStructure {
    #[staticmethod]
    fn from_family(family: &HeightFamily) -> PyResult<Self> {
        let inner = kakimizu::ProjectionStructure::from_family(&family.inner).map_err(to_py)?;
        Ok(ProjectionStructure { inner })
    }

    /// Parses a `%projtable v1` document.
    #[staticmethod]
    fn parse_table(text: &str) -> PyResult<Self> {
        let inner = io::parse_projection_table(text).map_err(to_py)?;
        Ok(ProjectionStructure { inner })
    }

    fn serialize_table(&self) -> String {
        io::serialize_projection_table(&self.inner)
    }

    #[getter]
    fn vertex_count(&self) -> usize {
        self.inner.vertex_count()
    }

    fn complex(&self) -> FlagComplex {
        FlagComplex {
            inner: self.inner.complex().clone(),
        }
    }

    fn dist(&self, u: usize, v: usize) -> PyResult<usize> {
        Ok(self.inner.dist(self.vertex(u)?, self.vertex(v)?))
    }

    fn proj(&self, sigma: usize, rho: usize) -> PyResult<usize> {
        if sigma == rho {
            return Err(PyValueError::new_err("projection needs distinct vertices"));
        }
        Ok(self.inner.proj(self.vertex(sigma)?, self.vertex(rho)?))
    }

    /// `a <_σ b` for adjacent `a`, `b`; `None` when they are not adjacent.
    fn ord(&self, sigma: usize, a: usize, b: usize) -> PyResult<Option<bool>> {
        Ok(self
            .inner
            .ord(self.vertex(sigma)?, self.vertex(a)?, self.vertex(b)?))
    }

    /// Every checker, as `(name, passed, witness, cases)` tuples.
    fn run_all_checks(&self) -> Vec<(String, bool, Option<Vec<usize>>, u64)> {
        projection::run_all_checks(&self.inner)
            .into_iter()
            .map(|r| (r.name, r.passed, r.witness, r.cases))
            .collect()
    }

    /// `(order, witness)` of the projection dismantling toward `base`.
    fn dismantle(&self, base: usize) -> PyResult<(Vec<usize>, Vec<usize>)> {
        let d = dismantle::projection_dismantle(&self.inner, self.vertex(base)?).map_err(to_py)?;
        Ok((d.order, d.witness))
    }

    fn convex_hull(&self, seed: Vec<usize>) -> PyResult<Vec<usize>> {
        for &v in &seed {
            self.vertex(v)?;
        }
        let seed: VertexSet = seed.into_iter().collect();
        Ok(set(&projection::convex_hull(&self.inner, &seed)))
    }

    /// Invariant simplex found from the orbit of `seed`. Without generators
    /// the column symmetries of the family are used.
    #[pyo3(signature = (seed, generators=None))]
    fn find_invariant_simplex(
        &self,
        seed: usize,
        generators: Option<Vec<Vec<usize>>>,
    ) -> PyResult<Vec<usize>> {
        let a = self.action(generators)?;
        let found = action::find_invariant_simplex(&self.inner, &a, seed).map_err(to_py)?;
        Ok(set(&found.simplex))
    }

    /// `(simplices, edges)` of the complex of minimal invariant simplices.
    #[pyo3(signature = (generators=None))]
    fn fix_complex(&self, generators: Option<Vec<Vec<usize>>>) -> PyResult<FixComplexParts> {
        let a = self.action(generators)?;
        let fix = action::fix_complex(self.inner.complex(), &a);
        Ok((
            fix.simplices.iter().map(set).collect(),
            fix.complex.edges().to_vec(),
        ))
    }

    fn __repr__(&self) -> String {
        format!(
            "ProjectionStructure(vertices={})",
            self.inner.vertex_count()
        )
    }
}

/// Distance between two height functions.
#[pyfunction]
fn kakimizu_distance(f: Vec<i64>, g: Vec<i64>) -> PyResult<u64> {
    let (f, g) = (height(f)?, height(g)?);
    Ok(cover::kakimizu_distance(&f, &g).map_err(to_py)?.d)
}

/// Projection of `g` toward `f`, normalized.
#[pyfunction]
fn project(f: Vec<i64>, g: Vec<i64>) -> PyResult<Vec<i64>> {
    let (f, g) = (height(f)?, height(g)?);
    Ok(cover::project(&f, &g).map_err(to_py)?.values().to_vec())
}

#[pyfunction]
fn order_less(f: Vec<i64>, g: Vec<i64>, g2: Vec<i64>) -> PyResult<bool> {
    cover::order_less(&height(f)?, &height(g)?, &height(g2)?).map_err(to_py)
}

/// Invariant factors of an integer matrix.
#[pyfunction]
fn smith_normal_form(rows: Vec<Vec<i64>>) -> PyResult<Vec<BigInt>> {
    let m = homology::IntegerMatrix::from_rows(&rows).map_err(to_py)?;
    Ok(homology::smith_normal_form(&m).divisors)
}

fn height(v: Vec<i64>) -> PyResult<kakimizu::HeightFunction> {
    kakimizu::HeightFunction::normalized(v).map_err(to_py)
}

#[pymodule]
fn kakimizu_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<FlagComplex>()?;
    m.add_class::<HeightFamily>()?;
    m.add_class::<ProjectionStructure>()?;
    m.add_function(wrap_pyfunction!(kakimizu_distance, m)?)?;
    m.add_function(wrap_pyfunction!(project, m)?)?;
    m.add_function(wrap_pyfunction!(order_less, m)?)?;
    m.add_function(wrap_pyfunction!(smith_normal_form, m)?)?;
    m.add("StructuralError", m.py().get_type::<StructuralError>())?;
    Ok(())
}
