//! Python bindings: lattice shapes, form fields, the difference operators,
//! equation residuals, projector decompositions, the plane-wave solver and
//! the verification suites.

use pyo3::exceptions::{PyIOError, PyValueError};
use pyo3::prelude::*;

use dklattice::calculus;
use dklattice::clifford::{blade_product as product, Blade};
use dklattice::equations::{self, EquationKind, MassParameter, ProjectorKind};
use dklattice::formfile;
use dklattice::lattice::{LatticeShape, SiteIndex, DIM};
use dklattice::solver;
use dklattice::verify;
use dklattice::{rng, Complex64, Error, FormField};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Io(io) => PyIOError::new_err(io.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn shape_of(extents: [usize; DIM]) -> PyResult<LatticeShape> {
    LatticeShape::new(extents).map_err(py_err)
}

fn blade(mask: u8) -> PyResult<Blade> {
    Blade::from_mask(mask).ok_or_else(|| PyValueError::new_err(format!("blade mask {mask} is not in 0..16")))
}

/// A complex-valued inhomogeneous form on a periodic 4-D lattice.
#[pyclass(name = "Form", module = "dklattice", frozen)]
struct PyForm {
    inner: FormField,
}

impl From<FormField> for PyForm {
    fn from(inner: FormField) -> Self {
        Self { inner }
    }
}

#[pymethods]
impl PyForm {
    #[staticmethod]
    fn zero(shape: [usize; DIM]) -> PyResult<Self> {
        Ok(FormField::zero(shape_of(shape)?).into())
    }

    /// I.i.d. coefficients with real and imaginary parts uniform in [-1, 1].
    #[staticmethod]
    fn random(shape: [usize; DIM], seed: u64) -> PyResult<Self> {
        Ok(FormField::random(shape_of(shape)?, &mut rng::seeded(seed)).into())
    }

    #[staticmethod]
    fn random_even(shape: [usize; DIM], seed: u64) -> PyResult<Self> {
        Ok(FormField::random_even(shape_of(shape)?, &mut rng::seeded(seed)).into())
    }

    /// Coefficients listed site by site (lexicographic) and blade by blade
    /// (mask order), 16 per site.
    #[staticmethod]
    fn from_coeffs(shape: [usize; DIM], coeffs: Vec<Complex64>) -> PyResult<Self> {
        Ok(FormField::from_coeffs(shape_of(shape)?, coeffs).map_err(py_err)?.into())
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(formfile::from_str(text).map_err(py_err)?.into())
    }

    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        Ok(formfile::load(path).map_err(py_err)?.into())
    }

    fn to_json(&self) -> String {
        formfile::to_string(&self.inner)
    }

    fn save(&self, path: &str) -> PyResult<()> {
        formfile::save(&self.inner, path).map_err(py_err)
    }

    #[getter]
    fn shape(&self) -> [usize; DIM] {
        self.inner.shape().extents()
    }

    fn coeffs(&self) -> Vec<Complex64> {
        self.inner.coeffs().to_vec()
    }

    fn get(&self, site: [usize; DIM], mask: u8) -> PyResult<Complex64> {
        let k = SiteIndex(site);
        if !self.inner.shape().contains(k) {
            return Err(PyValueError::new_err(format!("site {site:?} is outside {}", self.inner.shape())));
        }
        Ok(self.inner.get(k, blade(mask)?))
    }

    fn sup_norm(&self) -> f64 {
        self.inner.sup_norm()
    }

    fn max_imag(&self) -> f64 {
        self.inner.max_imag()
    }

    fn even_part(&self) -> Self {
        self.inner.even_part().into()
    }

    fn odd_part(&self) -> Self {
        self.inner.odd_part().into()
    }

    fn grade(&self, r: usize) -> Self {
        self.inner.grade_project(r).into()
    }

    fn conjugate(&self) -> Self {
        self.inner.conjugate().into()
    }

    /// Site-wise Clifford product `self · other`.
    fn clifford_mul(&self, other: &PyForm) -> PyResult<Self> {
        Ok(self.inner.clifford_mul(&other.inner).map_err(py_err)?.into())
    }

    /// `self · P` for a projector tag such as `"p0+"` or `"pe-"`.
    fn project(&self, projector: &str) -> PyResult<Self> {
        let kind: ProjectorKind = projector.parse().map_err(py_err)?;
        Ok(self.inner.mul_const_right(&kind.value()).into())
    }

    fn max_abs_diff(&self, other: &PyForm) -> PyResult<f64> {
        self.inner.max_abs_diff(&other.inner).map_err(py_err)
    }

    fn __add__(&self, other: &PyForm) -> PyResult<Self> {
        Ok(self.inner.add(&other.inner).map_err(py_err)?.into())
    }

    fn __sub__(&self, other: &PyForm) -> PyResult<Self> {
        Ok(self.inner.sub(&other.inner).map_err(py_err)?.into())
    }

    fn __mul__(&self, a: Complex64) -> Self {
        self.inner.scale(a).into()
    }

    fn __rmul__(&self, a: Complex64) -> Self {
        self.inner.scale(a).into()
    }

    fn __neg__(&self) -> Self {
        self.inner.scale_re(-1.0).into()
    }

    fn __eq__(&self, other: &PyForm) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Form(shape={}, sup_norm={:.3e})", self.inner.shape(), self.inner.sup_norm())
    }
}

/// A plane-wave eigenmode of one of the four equations.
#[pyclass(name = "Mode", module = "dklattice", frozen)]
struct PyMode {
    inner: solver::MomentumMode,
    shape: LatticeShape,
}

#[pymethods]
impl PyMode {
    #[getter]
    fn equation(&self) -> &'static str {
        self.inner.kind.tag()
    }

    #[getter]
    fn momentum(&self) -> [usize; DIM] {
        self.inner.momentum
    }

    #[getter]
    fn mass(&self) -> Complex64 {
        self.inner.mass
    }

    #[getter]
    fn amplitude(&self) -> Vec<Complex64> {
        self.inner.amplitude.0.to_vec()
    }

    /// The mode as a form on the full lattice.
    fn form(&self) -> PyResult<PyForm> {
        Ok(solver::plane_wave(&self.inner, self.shape).map_err(py_err)?.into())
    }

    fn __repr__(&self) -> String {
        format!("Mode({}, momentum={:?}, mass={})", self.inner.kind.tag(), self.inner.momentum, self.inner.mass)
    }
}

fn equation(tag: &str) -> PyResult<EquationKind> {
    tag.parse().map_err(py_err)
}

/// The product of two basis blades given by mask: `(sign, mask)`.
#[pyfunction]
fn blade_product(a: u8, b: u8) -> PyResult<(i8, u8)> {
    let p = product(blade(a)?, blade(b)?);
    Ok((p.sign, p.blade.mask()))
}

#[pyfunction]
fn d_c(form: &PyForm) -> PyForm {
    calculus::d_c(&form.inner).into()
}

#[pyfunction]
fn delta_c(form: &PyForm) -> PyForm {
    calculus::delta_c(&form.inner).into()
}

/// `Σ_μ e_μ Δ_μ`.
#[pyfunction]
fn dirac(form: &PyForm) -> PyForm {
    calculus::dirac(&form.inner).into()
}

#[pyfunction]
fn difference(form: &PyForm, mu: usize) -> PyResult<PyForm> {
    Ok(calculus::delta_mu(&form.inner, mu).map_err(py_err)?.into())
}

/// Residual form of `equation` ("dk", "hestenes", "joyce", "volume") at
/// mass `mass`.
#[pyfunction]
fn residual(equation_tag: &str, form: &PyForm, mass: Complex64) -> PyResult<PyForm> {
    Ok(equations::residual(equation(equation_tag)?, &form.inner, MassParameter(mass)).into())
}

/// Parts `Ω·P…` of the projector family spanned by `projectors`.
#[pyfunction]
fn decompose(form: &PyForm, projectors: Vec<String>) -> PyResult<Vec<PyForm>> {
    let kinds = projectors
        .iter()
        .map(|t| t.parse::<ProjectorKind>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(py_err)?;
    Ok(equations::decompose(&form.inner, &kinds).map_err(py_err)?.into_iter().map(PyForm::from).collect())
}

#[pyfunction]
fn eigenmodes(equation_tag: &str, shape: [usize; DIM], momentum: [usize; DIM]) -> PyResult<Vec<PyMode>> {
    let shape = shape_of(shape)?;
    let modes = solver::eigenmodes(equation(equation_tag)?, shape, momentum).map_err(py_err)?;
    Ok(modes.into_iter().map(|inner| PyMode { inner, shape }).collect())
}

/// Runs verification suites; returns `(report_lines, all_pass)`.
#[pyfunction]
#[pyo3(signature = (shape, seed=0, suite="all", tol=1e-10, samples=100, momenta=3))]
fn run_verify(
    shape: [usize; DIM],
    seed: u64,
    suite: &str,
    tol: f64,
    samples: usize,
    momenta: usize,
) -> PyResult<(Vec<String>, bool)> {
    let config = verify::Config {
        shape: shape_of(shape)?,
        seed,
        tol,
        suite: suite.parse().map_err(py_err)?,
        samples,
        momenta,
    };
    let report = verify::run(&config).map_err(py_err)?;
    Ok((report.results.iter().map(|r| r.to_string()).collect(), report.all_pass()))
}

#[pymodule(name = "dklattice")]
fn dklattice_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyForm>()?;
    m.add_class::<PyMode>()?;
    m.add_function(wrap_pyfunction!(blade_product, m)?)?;
    m.add_function(wrap_pyfunction!(d_c, m)?)?;
    m.add_function(wrap_pyfunction!(delta_c, m)?)?;
    m.add_function(wrap_pyfunction!(dirac, m)?)?;
    m.add_function(wrap_pyfunction!(difference, m)?)?;
    m.add_function(wrap_pyfunction!(residual, m)?)?;
    m.add_function(wrap_pyfunction!(decompose, m)?)?;
    m.add_function(wrap_pyfunction!(eigenmodes, m)?)?;
    m.add_function(wrap_pyfunction!(run_verify, m)?)?;
    Ok(())
}
