//! Python bindings. Scalars cross the boundary as strings (`"1/2"`, `"3"`)
//! or ints; a field is chosen by `p=None` for the rationals or `p=<prime>`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use pact_core::algebra::Algebra;
use pact_core::crossed::{associativity_via_condition_x, CrossedProduct};
use pact_core::envelope::{ambient, build_enveloping, embed_crossed, has_enveloping, morita_context, verify_enveloping};
use pact_core::error::PactError;
use pact_core::field::{Field, Scalar};
use pact_core::group::{Group, GroupSubset};
use pact_core::linalg::{LinearMap, Subspace, Vector};
use pact_core::multiplier::MultiplierAlgebra;
use pact_core::paction::{counterexample_action, restrict_global, GlobalAction, PartialAction};
use pact_core::preps::elementary::{elementary_grading, elementary_rep, iso_bis};
use pact_core::preps::semigroup::{kpar_iso, ExelSemigroup};

fn value_error(e: PactError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn field(p: Option<u64>) -> PyResult<Field> {
    match p {
        None => Ok(Field::Rationals),
        Some(p) => Field::prime(p).map_err(value_error),
    }
}

fn vector(field: Field, dim: usize, coords: &[Bound<'_, PyAny>]) -> PyResult<Vector> {
    if coords.len() != dim {
        return Err(PyValueError::new_err(format!("expected {dim} coordinates, got {}", coords.len())));
    }
    coords
        .iter()
        .map(|c| {
            let text = match c.extract::<i64>() {
                Ok(n) => n.to_string(),
                Err(_) => c.extract::<String>()?,
            };
            field.parse(&text).map_err(value_error)
        })
        .collect()
}

fn strings(v: &[Scalar]) -> Vec<String> {
    v.iter().map(Scalar::to_string).collect()
}

fn element_index(group: &Group, label: &str) -> PyResult<usize> {
    group.index_of(label).ok_or_else(|| PyValueError::new_err(format!("unknown group element `{label}`")))
}

/// A finite group given by its Cayley table.
#[pyclass(name = "Group", module = "pypact", frozen)]
pub struct PyGroup {
    inner: Group,
}

#[pymethods]
impl PyGroup {
    #[staticmethod]
    fn cyclic(n: usize) -> PyResult<Self> {
        Ok(PyGroup { inner: Group::cyclic(n).map_err(value_error)? })
    }

    #[staticmethod]
    fn klein() -> Self {
        PyGroup { inner: Group::klein() }
    }

    #[staticmethod]
    fn symmetric(n: usize) -> PyResult<Self> {
        Ok(PyGroup { inner: Group::symmetric(n).map_err(value_error)? })
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    fn labels(&self) -> Vec<String> {
        self.inner.labels().to_vec()
    }

    fn mul(&self, a: &str, b: &str) -> PyResult<String> {
        let (a, b) = (element_index(&self.inner, a)?, element_index(&self.inner, b)?);
        Ok(self.inner.label(self.inner.mul(a, b)).to_string())
    }

    fn __repr__(&self) -> String {
        format!("Group(order={}, elements=[{}])", self.inner.order(), self.inner.labels().join(", "))
    }
}

/// A finite-dimensional algebra with structure constants on a labelled basis.
#[pyclass(name = "Algebra", module = "pypact", frozen)]
pub struct PyAlgebra {
    inner: Algebra,
}

#[pymethods]
impl PyAlgebra {
    #[staticmethod]
    #[pyo3(signature = (n, p=None))]
    fn matrix(n: usize, p: Option<u64>) -> PyResult<Self> {
        Ok(PyAlgebra { inner: Algebra::matrix(field(p)?, n) })
    }

    #[staticmethod]
    #[pyo3(signature = (n, p=None))]
    fn upper(n: usize, p: Option<u64>) -> PyResult<Self> {
        Ok(PyAlgebra { inner: Algebra::upper(field(p)?, n) })
    }

    #[staticmethod]
    #[pyo3(signature = (n, p=None))]
    fn product(n: usize, p: Option<u64>) -> PyResult<Self> {
        Ok(PyAlgebra { inner: Algebra::product_field(field(p)?, n) })
    }

    #[staticmethod]
    #[pyo3(signature = (group, p=None))]
    fn group_algebra(group: &PyGroup, p: Option<u64>) -> PyResult<Self> {
        Ok(PyAlgebra { inner: Algebra::group_algebra(field(p)?, &group.inner) })
    }

    /// `span{1, t, u, v}` with `tv = vt = u` and all other products of
    /// non-unit basis elements zero.
    #[staticmethod]
    #[pyo3(signature = (p=None))]
    fn counterexample(p: Option<u64>) -> PyResult<Self> {
        Ok(PyAlgebra { inner: Algebra::counterexample(field(p)?) })
    }

    #[staticmethod]
    #[pyo3(signature = (dim, p=None))]
    fn zero_product(dim: usize, p: Option<u64>) -> PyResult<Self> {
        let labels = (1..=dim).map(|i| format!("e{i}")).collect();
        Ok(PyAlgebra { inner: Algebra::zero_product(field(p)?, dim, labels).map_err(value_error)? })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn labels(&self) -> Vec<String> {
        self.inner.labels().to_vec()
    }

    fn mul(&self, x: Vec<Bound<'_, PyAny>>, y: Vec<Bound<'_, PyAny>>) -> PyResult<Vec<String>> {
        let f = self.inner.field();
        let (x, y) = (vector(f, self.inner.dim(), &x)?, vector(f, self.inner.dim(), &y)?);
        Ok(strings(&self.inner.mul(&x, &y)))
    }

    fn format(&self, x: Vec<Bound<'_, PyAny>>) -> PyResult<String> {
        Ok(self.inner.format(&vector(self.inner.field(), self.inner.dim(), &x)?))
    }

    fn is_semiprime(&self) -> PyResult<bool> {
        self.inner.is_semiprime().map_err(value_error)
    }

    /// The five semiprimeness conditions over an exhaustive ideal list;
    /// needs a finite field.
    fn semiprime_predicates<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let p = self.inner.semiprime_predicates().map_err(value_error)?;
        let d = PyDict::new(py);
        d.set_item("ideals", p.ideals)?;
        d.set_item("all_non_degenerate", p.all_non_degenerate)?;
        d.set_item("all_idempotent_or_non_degenerate", p.all_idempotent_or_non_degenerate)?;
        d.set_item("all_right_non_degenerate", p.all_right_non_degenerate)?;
        d.set_item("all_left_non_degenerate", p.all_left_non_degenerate)?;
        d.set_item("no_nilpotent_ideal", p.no_nilpotent_ideal)?;
        d.set_item("agree", p.agree())?;
        Ok(d)
    }

    /// The multiplier algebra: dimension, (L,R)-associativity and whether
    /// the image of the canonical map is an ideal.
    fn multipliers<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let m = MultiplierAlgebra::new(&self.inner).map_err(value_error)?;
        let d = PyDict::new(py);
        d.set_item("dim", m.dim())?;
        d.set_item("lr_associative", m.is_lr_associative())?;
        d.set_item("phi_kernel_dim", m.phi().kernel().dim())?;
        d.set_item("phi_image_ideal", m.phi_image_ideal().is_ok())?;
        Ok(d)
    }

    fn __repr__(&self) -> String {
        format!("Algebra(dim={}, basis=[{}])", self.inner.dim(), self.inner.labels().join(", "))
    }
}

/// A partial action of a finite group on an algebra.
#[pyclass(name = "PartialAction", module = "pypact", frozen)]
pub struct PyPartialAction {
    inner: PartialAction,
}

#[pymethods]
impl PyPartialAction {
    /// `Z/2` acting on the counterexample algebra by `u <-> v` on `span{u, v}`.
    #[staticmethod]
    #[pyo3(signature = (p=None))]
    fn counterexample(p: Option<u64>) -> PyResult<Self> {
        Ok(PyPartialAction { inner: counterexample_action(field(p)?) })
    }

    /// Restriction of a global action to the ideal generated by `generators`.
    /// `images[g]` lists the images of the basis under the automorphism of
    /// the `g`-th group element.
    #[staticmethod]
    fn restrict(
        group: &PyGroup,
        algebra: &PyAlgebra,
        images: Vec<Vec<Vec<Bound<'_, PyAny>>>>,
        generators: Vec<Vec<Bound<'_, PyAny>>>,
    ) -> PyResult<Self> {
        let alg = &algebra.inner;
        let (f, d) = (alg.field(), alg.dim());
        let maps = images
            .iter()
            .map(|cols| {
                let cols = cols.iter().map(|c| vector(f, d, c)).collect::<PyResult<Vec<_>>>()?;
                LinearMap::new(f, d, d, cols).map_err(value_error)
            })
            .collect::<PyResult<Vec<_>>>()?;
        let beta = GlobalAction::new(group.inner.clone(), alg.clone(), maps).map_err(value_error)?;
        let gens = generators.iter().map(|v| vector(f, d, v)).collect::<PyResult<Vec<_>>>()?;
        let ideal = alg.ideal(Subspace::span(f, d, &gens)).map_err(value_error)?;
        let r = restrict_global(&beta, &ideal).map_err(value_error)?;
        Ok(PyPartialAction { inner: r.action })
    }

    fn base(&self) -> PyAlgebra {
        PyAlgebra { inner: self.inner.base().clone() }
    }

    fn group(&self) -> PyGroup {
        PyGroup { inner: self.inner.group().clone() }
    }

    fn verify<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let r = self.inner.verify();
        let d = PyDict::new(py);
        d.set_item("valid", r.is_valid())?;
        d.set_item("condition_ii", r.condition_ii)?;
        d.set_item("condition_ii_prime", r.condition_ii_prime)?;
        let violations: Vec<String> = r.violations.iter().map(|v| format!("{} {}", v.condition, v.detail)).collect();
        d.set_item("violations", violations)?;
        Ok(d)
    }

    fn crossed_product(&self) -> PyResult<PyCrossedProduct> {
        Ok(PyCrossedProduct { inner: CrossedProduct::build(&self.inner).map_err(value_error)? })
    }

    /// Associativity of the crossed product decided by condition (X) on each
    /// local slice.
    fn condition_x(&self) -> PyResult<bool> {
        Ok(associativity_via_condition_x(&self.inner).map_err(value_error)?.is_none())
    }

    fn has_enveloping(&self) -> PyResult<bool> {
        has_enveloping(&self.inner).map_err(value_error)
    }

    fn envelope<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let env = build_enveloping(&self.inner).map_err(value_error)?;
        let emb = embed_crossed(&self.inner, &env).map_err(value_error)?;
        let d = PyDict::new(py);
        d.set_item("dim_b", ambient(&env).dim())?;
        d.set_item("verified", verify_enveloping(&self.inner, &env).ok())?;
        d.set_item("embedding_rank", emb.map.rank())?;
        d.set_item("enveloping_crossed_dim", emb.target.dim())?;
        Ok(d)
    }

    fn morita<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let env = build_enveloping(&self.inner).map_err(value_error)?;
        let r = morita_context(&self.inner, &env).map_err(value_error)?.report;
        let d = PyDict::new(py);
        d.set_item("ok", r.ok())?;
        d.set_item("mn_dim", r.mn_dim)?;
        d.set_item("nm_dim", r.nm_dim)?;
        d.set_item("small_dim", r.small_dim)?;
        d.set_item("large_dim", r.large_dim)?;
        Ok(d)
    }
}

/// The partial crossed product `A ⋊ G`, basis `(g, k)` over the domains.
#[pyclass(name = "CrossedProduct", module = "pypact", frozen)]
pub struct PyCrossedProduct {
    inner: CrossedProduct,
}

impl PyCrossedProduct {
    fn coords(&self, x: &[Bound<'_, PyAny>]) -> PyResult<Vector> {
        vector(self.inner.field(), self.inner.dim(), x)
    }
}

#[pymethods]
impl PyCrossedProduct {
    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn labels(&self) -> Vec<String> {
        self.inner.labels().to_vec()
    }

    /// `a δ_g` for `a` given in base-algebra coordinates.
    fn element(&self, g: &str, a: Vec<Bound<'_, PyAny>>) -> PyResult<Vec<String>> {
        let action = self.inner.action();
        let gi = element_index(action.group(), g)?;
        let a = vector(self.inner.field(), action.base().dim(), &a)?;
        let x = self.inner.element(gi, &a).ok_or_else(|| PyValueError::new_err(format!("element not in D_{g}")))?;
        Ok(strings(&x))
    }

    fn mul(&self, x: Vec<Bound<'_, PyAny>>, y: Vec<Bound<'_, PyAny>>) -> PyResult<Vec<String>> {
        Ok(strings(&self.inner.mul(&self.coords(&x)?, &self.coords(&y)?)))
    }

    fn format(&self, x: Vec<Bound<'_, PyAny>>) -> PyResult<String> {
        Ok(self.inner.format(&self.coords(&x)?))
    }

    fn is_associative(&self) -> bool {
        self.inner.is_associative()
    }

    /// Basis labels of a triple with nonzero associator, if any.
    fn associativity_witness(&self) -> Option<(String, String, String)> {
        let labels = self.inner.labels();
        self.inner.associativity_witness().map(|(a, b, c)| (labels[a].clone(), labels[b].clone(), labels[c].clone()))
    }
}

/// The partial group algebra `K_par(G)` and its crossed-product model.
#[pyfunction]
#[pyo3(signature = (group, p=None))]
fn kpar<'py>(py: Python<'py>, group: &PyGroup, p: Option<u64>) -> PyResult<Bound<'py, PyDict>> {
    let iso = kpar_iso(&group.inner, field(p)?).map_err(value_error)?;
    let d = PyDict::new(py);
    d.set_item("dim", iso.dim())?;
    d.set_item("expected", ExelSemigroup::expected_len(group.inner.order()))?;
    d.set_item("labels", iso.semigroup.labels())?;
    Ok(d)
}

/// The elementary partial representation attached to `subset` (which must
/// contain the identity), with its crossed-product isomorphism and grading.
#[pyfunction]
#[pyo3(signature = (group, subset, p=None))]
fn elementary<'py>(py: Python<'py>, group: &PyGroup, subset: Vec<String>, p: Option<u64>) -> PyResult<Bound<'py, PyDict>> {
    let g = &group.inner;
    let set: GroupSubset = subset.iter().map(|s| element_index(g, s)).collect::<PyResult<_>>()?;
    let erd = elementary_rep(g, &set, field(p)?).map_err(value_error)?;
    let d = PyDict::new(py);
    d.set_item("n", erd.n())?;
    d.set_item("target", erd.target_name())?;
    d.set_item("stabilizer_order", erd.stabilizer().order())?;
    d.set_item("iso", iso_bis(&erd).is_ok())?;
    d.set_item("graded", elementary_grading(&erd).map(|gr| gr.ok()).unwrap_or(false))?;
    Ok(d)
}

/// Runs a document in the `pact` text format and returns the JSON report.
#[pyfunction]
fn run_spec(text: &str) -> PyResult<String> {
    let doc = pact_cli::parse_spec(text).map_err(|e| PyValueError::new_err(e.to_string()))?;
    let report = pact_cli::run(&doc).map_err(|e| PyValueError::new_err(e.to_string()))?;
    String::from_utf8(pact_cli::emit(&report, pact_cli::Format::Json)).map_err(|e| PyValueError::new_err(e.to_string()))
}

#[pymodule]
fn pypact(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGroup>()?;
    m.add_class::<PyAlgebra>()?;
    m.add_class::<PyPartialAction>()?;
    m.add_class::<PyCrossedProduct>()?;
    m.add_function(wrap_pyfunction!(kpar, m)?)?;
    m.add_function(wrap_pyfunction!(elementary, m)?)?;
    m.add_function(wrap_pyfunction!(run_spec, m)?)?;
    Ok(())
}
