//! Python bindings: the fuzzy number / sequence / matrix types and the
//! membership, dual, class, transfer, and audit checkers.
//!
//! Scalar results come back as native Python values; structured verdict
//! reports come back as JSON strings so the Python side can `json.loads`
//! them without a conversion-layer dependency.

use pyo3::exceptions::{PyValueError, PyRuntimeError};
use pyo3::prelude::*;

use fuzzyseq::domains::{self, DomainSpace, TransformKind, TransformMode, TransformedSequence};
use fuzzyseq::duals::{self, DualKind, MatrixClass, TransferTheorem};
use fuzzyseq::matrices::{self, InfiniteMatrix};
use fuzzyseq::sequences::{self, FuzzySequence as CoreSequence, SequenceTerms};
use fuzzyseq::{SpreadPair, Status, TriangularFuzzyNumber as CoreTfn, TruncationPolicy, Verdict};

fn value_err(e: fuzzyseq::Error) -> PyErr {
    match e {
        fuzzyseq::Error::Parse(_) | fuzzyseq::Error::UnknownClass(_) => {
            PyValueError::new_err(e.to_string())
        }
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn json_err(e: serde_json::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_json<T: serde::Serialize>(v: &T) -> PyResult<String> {
    serde_json::to_string(v).map_err(json_err)
}

fn status_str(s: Status) -> &'static str {
    match s {
        Status::Holds => "Holds",
        Status::Fails => "Fails",
        Status::Inconclusive => "Inconclusive",
    }
}

fn verdict_pair(v: &Verdict) -> PyResult<(String, String)> {
    Ok((status_str(v.status).to_string(), to_json(v)?))
}

#[pyclass(name = "TriangularFuzzyNumber")]
#[derive(Clone)]
struct PyTfn {
    inner: CoreTfn,
}

#[pymethods]
impl PyTfn {
    #[new]
    fn new(center: f64, t1: f64, t2: f64) -> PyResult<Self> {
        let spreads = SpreadPair::new(t1, t2).map_err(value_err)?;
        Ok(PyTfn { inner: CoreTfn::new(center, spreads) })
    }

    #[getter]
    fn center(&self) -> f64 {
        self.inner.center()
    }

    #[getter]
    fn t1(&self) -> f64 {
        self.inner.spreads().t1()
    }

    #[getter]
    fn t2(&self) -> f64 {
        self.inner.spreads().t2()
    }

    fn membership_at(&self, x: f64) -> PyResult<f64> {
        self.inner.membership_at(x).map_err(value_err)
    }

    fn alpha_cut(&self, alpha: f64) -> PyResult<(f64, f64)> {
        let i = self.inner.alpha_cut(alpha).map_err(value_err)?;
        Ok((i.lo(), i.hi()))
    }

    fn add(&self, rhs: &PyTfn) -> PyResult<PyTfn> {
        Ok(PyTfn { inner: self.inner.add(&rhs.inner).map_err(value_err)? })
    }

    fn sub(&self, rhs: &PyTfn) -> PyResult<PyTfn> {
        Ok(PyTfn { inner: self.inner.sub(&rhs.inner).map_err(value_err)? })
    }

    fn mul(&self, rhs: &PyTfn) -> PyResult<PyTfn> {
        Ok(PyTfn { inner: self.inner.mul(&rhs.inner).map_err(value_err)? })
    }

    fn div(&self, rhs: &PyTfn) -> PyResult<PyTfn> {
        Ok(PyTfn { inner: self.inner.div(&rhs.inner).map_err(value_err)? })
    }

    fn scalar_mul(&self, c: f64) -> PyTfn {
        PyTfn { inner: self.inner.scalar_mul(c) }
    }

    fn metric(&self, rhs: &PyTfn) -> PyResult<f64> {
        self.inner.metric(&rhs.inner).map_err(value_err)
    }

    fn metric_to_zero(&self) -> f64 {
        self.inner.metric_to_zero()
    }

    fn __repr__(&self) -> String {
        format!(
            "TriangularFuzzyNumber({}, {}, {})",
            self.inner.center(),
            self.inner.spreads().t1(),
            self.inner.spreads().t2()
        )
    }
}

#[pyclass(name = "FuzzySequence")]
#[derive(Clone)]
struct PySequence {
    inner: CoreSequence,
}

#[pymethods]
impl PySequence {
    /// Build from a JSON sequence document.
    #[staticmethod]
    fn from_json(doc: &str) -> PyResult<Self> {
        Ok(PySequence { inner: serde_json::from_str(doc).map_err(json_err)? })
    }

    #[staticmethod]
    fn constant(c: f64, t1: f64, t2: f64) -> PyResult<Self> {
        let spreads = SpreadPair::new(t1, t2).map_err(value_err)?;
        Ok(PySequence { inner: CoreSequence::constant(spreads, c) })
    }

    #[staticmethod]
    fn explicit(centers: Vec<f64>, t1: f64, t2: f64) -> PyResult<Self> {
        let spreads = SpreadPair::new(t1, t2).map_err(value_err)?;
        Ok(PySequence { inner: CoreSequence::explicit(spreads, centers) })
    }

    fn term(&self, k: u64) -> PyResult<PyTfn> {
        Ok(PyTfn { inner: self.inner.term(k).map_err(value_err)? })
    }

    fn to_json(&self) -> PyResult<String> {
        to_json(&self.inner)
    }

    /// Membership verdict in a base space: linf, c, c0, cs, bs, l1, l2.
    fn space_test(&self, space: &str) -> PyResult<(String, String)> {
        let policy = TruncationPolicy::default();
        let verdict = match space {
            "linf" => sequences::in_linf(&self.inner, &policy),
            "c" => sequences::in_c(&self.inner, &policy).map(|(v, _)| v),
            "c0" => sequences::in_c0(&self.inner, &policy),
            "cs" => sequences::in_cs(&self.inner, &policy),
            "bs" => sequences::in_bs(&self.inner, &policy),
            "l1" => sequences::in_lp(&self.inner, 1.0, &policy),
            "l2" => sequences::in_lp(&self.inner, 2.0, &policy),
            other => return Err(PyValueError::new_err(format!("unknown space `{other}`"))),
        }
        .map_err(value_err)?;
        verdict_pair(&verdict)
    }

    /// Membership verdict in a matrix domain (int-* / diff-*).
    fn domain_test(&self, space: &str) -> PyResult<(String, String)> {
        let space = DomainSpace::parse(space).map_err(value_err)?;
        let policy = TruncationPolicy::default();
        let verdict = domains::in_domain(&self.inner, space, &policy).map_err(value_err)?;
        verdict_pair(&verdict)
    }

    /// Domain norm against the zero sequence.
    fn domain_norm(&self, space: &str) -> PyResult<(f64, String)> {
        let space = DomainSpace::parse(space).map_err(value_err)?;
        let policy = TruncationPolicy::default();
        let (value, verdict) =
            domains::domain_norm(&self.inner, space, None, TransformMode::Abs, &policy)
                .map_err(value_err)?;
        Ok((value, status_str(verdict.status).to_string()))
    }

    /// The raw weighted-prefix transform at index n (kind: "omega"/"gamma").
    fn transform_at(&self, kind: &str, n: u64) -> PyResult<PyTfn> {
        let kind = match kind {
            "omega" => TransformKind::Omega,
            "gamma" => TransformKind::Gamma,
            other => return Err(PyValueError::new_err(format!("unknown transform `{other}`"))),
        };
        let t = TransformedSequence::new(self.inner.clone(), kind, TransformMode::Raw);
        Ok(PyTfn { inner: t.term(n).map_err(value_err)? })
    }

    /// Dual condition report (JSON) for this sequence as a multiplier.
    fn dual_test(&self, space: &str, kind: &str) -> PyResult<String> {
        let space = DomainSpace::parse(space).map_err(value_err)?;
        let kind = DualKind::parse(kind).map_err(value_err)?;
        let policy = TruncationPolicy::default();
        let report = duals::dual_membership(&self.inner, space.transform, kind, &policy);
        to_json(&report)
    }
}

#[pyclass(name = "InfiniteMatrix")]
#[derive(Clone)]
struct PyMatrix {
    inner: InfiniteMatrix,
}

#[pymethods]
impl PyMatrix {
    /// Builtin by name: omega, gamma, omega_inv, gamma_inv, identity,
    /// zero, cesaro.
    #[staticmethod]
    fn builtin(name: &str) -> PyResult<Self> {
        matrices::builtin(name)
            .map(|inner| PyMatrix { inner })
            .ok_or_else(|| PyValueError::new_err(format!("unknown builtin `{name}`")))
    }

    /// Build from a JSON matrix document.
    #[staticmethod]
    fn from_json(doc: &str) -> PyResult<Self> {
        Ok(PyMatrix { inner: serde_json::from_str(doc).map_err(json_err)? })
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name().to_string()
    }

    fn entry(&self, n: u64, k: u64) -> f64 {
        self.inner.entry_f64(n, k)
    }

    fn block(&self, n: u64) -> Vec<Vec<f64>> {
        self.inner.truncate_f64(n)
    }

    fn block_rational(&self, n: u64) -> Vec<Vec<String>> {
        matrices::format_block_rational(&self.inner.truncate(n))
    }

    fn compose(&self, rhs: &PyMatrix) -> PyMatrix {
        PyMatrix { inner: self.inner.compose(&rhs.inner) }
    }

    fn apply(&self, s: &PySequence, n: u64) -> PyResult<PyTfn> {
        Ok(PyTfn { inner: self.inner.apply(&s.inner, n).map_err(value_err)? })
    }

    /// Class membership report (JSON), e.g. class_check("linf:linf").
    fn class_check(&self, class: &str) -> PyResult<String> {
        let cls = MatrixClass::parse(class).map_err(value_err)?;
        let policy = TruncationPolicy::default();
        let report = duals::check_class(&self.inner, cls, &policy).map_err(value_err)?;
        to_json(&report)
    }

    /// Regularity audit report (JSON).
    fn toeplitz_audit(&self) -> PyResult<String> {
        let policy = TruncationPolicy::default();
        to_json(&matrices::toeplitz_audit(&self.inner, &policy))
    }

    /// Transfer-theorem report (JSON); kind is 4.1 / 4.2 / 4.3 / 4.4.
    fn transfer_check(&self, kind: &str, x: &PySequence, n: u64) -> PyResult<String> {
        let theorem = TransferTheorem::parse(kind).map_err(value_err)?;
        let report =
            duals::transfer_check(&self.inner, theorem, &x.inner, n).map_err(value_err)?;
        to_json(&report)
    }

    fn __repr__(&self) -> String {
        format!("InfiniteMatrix({})", self.inner.name())
    }
}

#[pymodule]
fn fuzzyseq_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyTfn>()?;
    m.add_class::<PySequence>()?;
    m.add_class::<PyMatrix>()?;
    Ok(())
}
