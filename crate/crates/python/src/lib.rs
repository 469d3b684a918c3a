use monodromy::catalog::Catalog;
use monodromy::lattice::{build_diagram, fold, fold_check, to_cartan, BilinearLattice, CartanData, DiagramSpec, IntMatrix};
use monodromy::mckay::{
    build_group, character_table, check_prime, identify_affine, invariant_poincare, mckay_matrix, select_prime,
    slodowy_matrix, GroupSpec,
};
use monodromy::verify::{render_json, render_text, run_all, SuiteReport, VerifyConfig};
use monodromy::{frame_to_ratfunc, saito_dual, series_expand, FrameShape};
use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;
use pyo3::types::PyDict;

create_exception!(monodromy_py, MonodromyError, PyException);

fn py_err(e: monodromy::Error) -> PyErr {
    MonodromyError::new_err(e.to_string())
}

fn json_to_py<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (text,))
}

/// Product of `(t^k - 1)^a`, written like `2·12/4·6`.
#[pyclass(name = "Frame", module = "monodromy_py", eq, frozen, skip_from_py_object)]
#[derive(Clone, PartialEq)]
pub struct PyFrame(FrameShape);

#[pymethods]
impl PyFrame {
    #[new]
    #[pyo3(signature = (text = "1"))]
    fn new(text: &str) -> PyResult<Self> {
        text.parse().map(PyFrame).map_err(py_err)
    }

    #[staticmethod]
    fn from_exponents(exponents: Vec<(u64, i64)>) -> PyResult<Self> {
        if exponents.iter().any(|&(k, _)| k == 0) {
            return Err(MonodromyError::new_err("frame keys must be positive"));
        }
        Ok(PyFrame(FrameShape::from_pairs(exponents)))
    }

    /// `{k: a}` with zero exponents dropped.
    fn exponents(&self) -> Vec<(u64, i64)> {
        self.0.exponents().iter().map(|(&k, &a)| (k, a)).collect()
    }

    fn degree(&self) -> i64 {
        self.0.degree()
    }

    fn is_polynomial(&self) -> bool {
        self.0.is_polynomial()
    }

    fn saito_dual(&self, d: u64) -> PyResult<Self> {
        saito_dual(&self.0, d).map(PyFrame).map_err(py_err)
    }

    /// First `n + 1` power series coefficients.
    fn series(&self, n: usize) -> PyResult<Vec<i64>> {
        let s = series_expand(&frame_to_ratfunc(&self.0), n).map_err(py_err)?;
        s.to_i64().ok_or_else(|| MonodromyError::new_err("coefficient exceeds 64 bits"))
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.0).expect("frame serializes")
    }

    fn __mul__(&self, other: &PyFrame) -> Self {
        PyFrame(self.0.mul(&other.0))
    }

    fn __truediv__(&self, other: &PyFrame) -> Self {
        PyFrame(self.0.div(&other.0))
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Frame('{}')", self.0)
    }
}

/// Generalized Cartan matrix with a reflection order (0-based).
#[pyclass(name = "Diagram", module = "monodromy_py", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyDiagram(CartanData);

#[pymethods]
impl PyDiagram {
    /// `E6`, `affineA(3)`, `T(2,3,7)`, `B4`, ...
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        let spec: DiagramSpec = spec.parse().map_err(py_err)?;
        build_diagram(&spec).map(PyDiagram).map_err(py_err)
    }

    #[staticmethod]
    #[pyo3(signature = (matrix, order = None))]
    fn from_matrix(matrix: IntMatrix, order: Option<Vec<usize>>) -> PyResult<Self> {
        let n = matrix.len();
        CartanData::new(matrix, order.unwrap_or_else(|| (0..n).collect())).map(PyDiagram).map_err(py_err)
    }

    fn matrix(&self) -> IntMatrix {
        self.0.matrix().clone()
    }

    fn order(&self) -> Vec<usize> {
        self.0.order().to_vec()
    }

    fn with_order(&self, order: Vec<usize>) -> PyResult<Self> {
        self.0.with_order(order).map(PyDiagram).map_err(py_err)
    }

    fn is_forest(&self) -> bool {
        self.0.is_forest()
    }

    /// Coefficients of the Coxeter characteristic polynomial, constant first.
    fn charpoly(&self) -> PyResult<Vec<i64>> {
        let p = self.0.coxeter_polynomial().map_err(py_err)?;
        p.coeffs()
            .iter()
            .map(|c| i64::try_from(c).map_err(|_| MonodromyError::new_err("coefficient exceeds 64 bits")))
            .collect()
    }

    fn frame(&self) -> PyResult<PyFrame> {
        self.0.coxeter_frame().map(PyFrame).map_err(py_err)
    }

    fn transpose(&self) -> Self {
        PyDiagram(self.0.transpose())
    }
}

/// Symmetric lattice with an optional involution given as a permutation.
#[pyclass(name = "Lattice", module = "monodromy_py", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyLattice(BilinearLattice);

#[pymethods]
impl PyLattice {
    #[new]
    #[pyo3(signature = (gram, order = None, involution = None))]
    fn new(gram: IntMatrix, order: Option<Vec<usize>>, involution: Option<Vec<usize>>) -> PyResult<Self> {
        let n = gram.len();
        BilinearLattice::new(gram, order.unwrap_or_else(|| (0..n).collect()), involution)
            .map(PyLattice)
            .map_err(py_err)
    }

    fn gram(&self) -> IntMatrix {
        self.0.gram().clone()
    }

    fn cartan(&self) -> PyResult<PyDiagram> {
        to_cartan(&self.0).map(PyDiagram).map_err(py_err)
    }

    fn fold(&self) -> PyResult<PyLattice> {
        fold(&self.0).map(|f| PyLattice(f.folded)).map_err(py_err)
    }

    /// `phi_X`, `phi_1`, `phi_fbar` (coefficient lists) and whether
    /// `phi_X = phi_1 * phi_fbar`.
    fn fold_check<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let o = fold_check(&self.0).map_err(py_err)?;
        let coeffs = |p: &monodromy::IntPoly| p.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>();
        let d = PyDict::new(py);
        d.set_item("phi_x", coeffs(&o.phi_x))?;
        d.set_item("phi_1", coeffs(&o.phi_1))?;
        d.set_item("phi_fbar", coeffs(&o.phi_f))?;
        d.set_item("holds", o.holds)?;
        d.set_item("folded_gram", o.fold.folded.gram().clone())?;
        Ok(d)
    }
}

fn group(spec: &str) -> PyResult<GroupSpec> {
    spec.parse().map_err(py_err)
}

/// Poincare series of a catalog singularity.
#[pyfunction]
fn poincare(name: &str) -> PyResult<PyFrame> {
    Catalog::standard().poincare_named(name).map(PyFrame).map_err(py_err)
}

/// Catalog record as a dict (the JSON schema of `show`).
#[pyfunction]
fn lookup<'py>(py: Python<'py>, name: &str) -> PyResult<Bound<'py, PyAny>> {
    let r = Catalog::standard().lookup(name).map_err(py_err)?;
    json_to_py(py, &serde_json::to_string(&r).expect("record serializes"))
}

/// McKay matrix of `group`, or the Slodowy matrix for a normal `subgroup`.
#[pyfunction]
#[pyo3(signature = (group_spec, subgroup = None, prime = None))]
fn mckay<'py>(
    py: Python<'py>,
    group_spec: &str,
    subgroup: Option<&str>,
    prime: Option<u64>,
) -> PyResult<Bound<'py, PyDict>> {
    let g = group(group_spec)?;
    let h = subgroup.map(group).transpose()?;
    let specs: Vec<GroupSpec> = std::iter::once(g).chain(h).collect();
    let p = match prime {
        Some(p) => check_prime(p, &specs).map(|_| p).map_err(py_err)?,
        None => select_prime(&specs),
    };
    let gg = build_group(g, p).map_err(py_err)?;
    let r = match h {
        Some(h) => slodowy_matrix(&gg, &build_group(h, p).map_err(py_err)?),
        None => mckay_matrix(&gg),
    }
    .map_err(py_err)?;
    let id = identify_affine(&r.c);
    let d = PyDict::new(py);
    d.set_item("prime", p)?;
    d.set_item("b", r.b)?;
    d.set_item("c", r.c)?;
    d.set_item("dims", r.dims)?;
    d.set_item("affine", id.as_ref().map(|i| i.diagram.to_string()))?;
    d.set_item("transposed", id.as_ref().map(|i| i.transposed))?;
    d.set_item("permutation", id.map(|i| i.permutation))?;
    Ok(d)
}

/// Irreducible character dimensions and class sizes.
#[pyfunction]
#[pyo3(signature = (group_spec, prime = None))]
fn characters(group_spec: &str, prime: Option<u64>) -> PyResult<(Vec<u64>, Vec<usize>)> {
    let g = group(group_spec)?;
    let p = prime.unwrap_or_else(|| select_prime(&[g]));
    let t = character_table(&build_group(g, p).map_err(py_err)?).map_err(py_err)?;
    Ok((t.dims, t.classes.iter().map(|c| c.1).collect()))
}

/// First `n + 1` coefficients of the Poincare series of the invariant ring.
#[pyfunction]
fn invariants(group_spec: &str, n: usize) -> PyResult<Vec<i64>> {
    let g = group(group_spec)?;
    let s = invariant_poincare(&build_group(g, select_prime(&[g])).map_err(py_err)?, n).map_err(py_err)?;
    s.to_i64().ok_or_else(|| MonodromyError::new_err("coefficient exceeds 64 bits"))
}

/// Runs the verification suite; returns the JSON report as a dict, or the
/// text rendering when `text` is set.
#[pyfunction]
#[pyo3(signature = (nmax = 6, only = None, text = false))]
fn verify<'py>(py: Python<'py>, nmax: u64, only: Option<Vec<String>>, text: bool) -> PyResult<Bound<'py, PyAny>> {
    let config = VerifyConfig { nmax, ..VerifyConfig::default() };
    let mut suite = py.detach(|| run_all(&config, &Catalog::standard()));
    if let Some(prefixes) = only {
        let kept = suite.reports.into_iter().filter(|r| prefixes.iter().any(|p| r.id.starts_with(p))).collect();
        suite = SuiteReport::from_reports(kept);
    }
    if text {
        Ok(render_text(&suite, false).into_pyobject(py)?.into_any())
    } else {
        json_to_py(py, &render_json(&suite))
    }
}

#[pymodule]
fn monodromy_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("MonodromyError", m.py().get_type::<MonodromyError>())?;
    m.add_class::<PyFrame>()?;
    m.add_class::<PyDiagram>()?;
    m.add_class::<PyLattice>()?;
    m.add_function(wrap_pyfunction!(poincare, m)?)?;
    m.add_function(wrap_pyfunction!(lookup, m)?)?;
    m.add_function(wrap_pyfunction!(mckay, m)?)?;
    m.add_function(wrap_pyfunction!(characters, m)?)?;
    m.add_function(wrap_pyfunction!(invariants, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
