//! Python bindings: a `Category` class and a few module-level checks.
//! Structured reports cross the boundary as JSON strings.

use std::sync::Arc;

use globcat::cgroups::{associated_category, reconstruct_complex, ChoicePolicy, ComplexOfGroups, ReconstructionChoices};
use globcat::dwyer::check_dwyer as certify;
use globcat::fincat::{classifying_category, functor_category, is_strongly_connected, poset_category, FunctorDescription};
use globcat::homology::homology;
use globcat::orbit::hom_groupoid;
use globcat::simplicial::nerve;
use globcat::{FinCategory, FinFunctor, FinGroup, FinMonoid, Limits};
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

create_exception!(globcat_py, GlobcatError, PyValueError);

fn err(e: impl std::fmt::Display) -> PyErr {
    GlobcatError::new_err(e.to_string())
}

fn group_by_name(name: &str) -> PyResult<FinGroup> {
    match name {
        "S3" => Ok(FinGroup::symmetric(3)),
        _ => name
            .strip_prefix('C')
            .and_then(|n| n.parse::<usize>().ok())
            .filter(|&n| n >= 1)
            .map(FinGroup::cyclic)
            .ok_or_else(|| err(format!("unknown group `{name}`, expected Cn or S3"))),
    }
}

#[pyclass(frozen, module = "globcat_py")]
struct Category {
    inner: Arc<FinCategory>,
}

#[pymethods]
impl Category {
    /// Parses and validates the JSON category format.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Category { inner: Arc::new(FinCategory::from_json(text).map_err(err)?) })
    }

    /// The total order p[n] = {0 < 1 < ... < n}.
    #[staticmethod]
    fn poset(n: usize) -> Self {
        Category { inner: Arc::new(poset_category(n)) }
    }

    /// BG for G given as "Cn" or "S3".
    #[staticmethod]
    fn classifying(group: &str) -> PyResult<Self> {
        let g = group_by_name(group)?;
        Ok(Category { inner: Arc::new(classifying_category(g.monoid())) })
    }

    #[staticmethod]
    fn fiedorowicz() -> Self {
        Category { inner: Arc::new(classifying_category(&FinMonoid::fiedorowicz())) }
    }

    #[getter]
    fn num_objects(&self) -> usize {
        self.inner.num_objects()
    }

    #[getter]
    fn num_morphisms(&self) -> usize {
        self.inner.num_morphisms()
    }

    fn is_poset(&self) -> bool {
        self.inner.is_poset()
    }

    fn is_strongly_connected(&self) -> bool {
        is_strongly_connected(&self.inner)
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    /// Fun(self, target).
    fn functor_category(&self, target: &Category) -> PyResult<Category> {
        let fun = functor_category(&self.inner, &target.inner, Limits::default().max_functors).map_err(err)?;
        Ok(Category { inner: fun.category })
    }

    /// Homology of the nerve in degrees 0..=max_degree, as strings like "Z", "0", "Z/2".
    #[pyo3(signature = (max_degree = 3))]
    fn homology(&self, max_degree: usize) -> PyResult<Vec<String>> {
        let n = nerve(&self.inner, max_degree + 1);
        let h = homology(&n.simplicial, max_degree).map_err(err)?;
        Ok(h.groups.iter().map(|g| g.to_string()).collect())
    }

    fn __repr__(&self) -> String {
        format!("Category(objects={}, morphisms={})", self.inner.num_objects(), self.inner.num_morphisms())
    }
}

/// Certifies a functor (JSON functor format) as a Dwyer map.
/// Returns (True, certificate JSON) or (False, obstruction).
#[pyfunction]
fn check_dwyer(functor_json: &str) -> PyResult<(bool, String)> {
    let desc: FunctorDescription = serde_json::from_str(functor_json).map_err(err)?;
    let f = FinFunctor::from_description(&desc).map_err(err)?;
    Ok(match certify(&f) {
        Ok(cert) => (true, serde_json::to_string(&cert.describe()).map_err(err)?),
        Err(failure) => (false, failure.to_string()),
    })
}

/// Structure report of the hom groupoid Fun(BK, BG), groups given as "Cn" or "S3".
#[pyfunction]
fn hom_groupoid_report(source: &str, target: &str) -> PyResult<String> {
    let (k, g) = (group_by_name(source)?, group_by_name(target)?);
    let (_, report) = hom_groupoid(&k, &g, Limits::default().max_group_order).map_err(err)?;
    serde_json::to_string(&report).map_err(err)
}

/// The category associated to a complex of groups (JSON complex format).
#[pyfunction]
fn assemble(complex_json: &str) -> PyResult<Category> {
    let g = ComplexOfGroups::from_json(complex_json).map_err(err)?;
    Ok(Category { inner: Arc::new(associated_category(&g).map_err(err)?) })
}

/// Rebuilds a complex of groups from a category; `seed` picks random choices.
#[pyfunction]
#[pyo3(signature = (category, seed = None))]
fn reconstruct(category: &Category, seed: Option<u64>) -> PyResult<String> {
    let policy = seed.map_or(ChoicePolicy::Default, ChoicePolicy::Random);
    let choices = ReconstructionChoices::new(&category.inner, policy);
    let r = reconstruct_complex(&category.inner, &choices).map_err(err)?;
    Ok(r.complex.to_json())
}

#[pymodule]
fn globcat_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("GlobcatError", m.py().get_type::<GlobcatError>())?;
    m.add_class::<Category>()?;
    m.add_function(wrap_pyfunction!(check_dwyer, m)?)?;
    m.add_function(wrap_pyfunction!(hom_groupoid_report, m)?)?;
    m.add_function(wrap_pyfunction!(assemble, m)?)?;
    m.add_function(wrap_pyfunction!(reconstruct, m)?)?;
    Ok(())
}
