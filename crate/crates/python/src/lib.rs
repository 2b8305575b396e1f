//! Python bindings. Rationals cross the boundary as `"p/q"` strings so that
//! nothing is rounded.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use qbethe::bethe::{BetheConfig as CoreConfig, TwistVector};
use qbethe::formfactor::{ff22, ff22_analytic, twisted_ff, FfKind, FormFactorRequest, ScalarRoute};
use qbethe::izergin::{izergin as core_izergin, Variant};
use qbethe::scalarprod::{scalar_det, scalar_intermediate, scalar_sum, DetKind};
use qbethe::suites::{run_suite, RunConfig, Status, Suite};
use qbethe::{scalar_format, scalar_parse, ExactScalar, Kernel, KernelFamily, QContext};

fn py_err(e: qbethe::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse(s: &str) -> PyResult<ExactScalar> {
    scalar_parse(s).map_err(py_err)
}

fn parse_vec(xs: &[String]) -> PyResult<Vec<ExactScalar>> {
    xs.iter().map(|s| parse(s)).collect()
}

fn context(q: &str) -> PyResult<QContext<ExactScalar>> {
    QContext::new(parse(q)?).map_err(py_err)
}

/// An on-shell pair of Bethe vectors: the `C` side solves the twisted Bethe
/// equations, the `B` side the untwisted ones.
#[pyclass(name = "BetheConfig", module = "qbethe_py", frozen)]
struct PyBetheConfig {
    inner: CoreConfig<ExactScalar>,
    z: Option<ExactScalar>,
}

#[pymethods]
impl PyBetheConfig {
    #[new]
    #[pyo3(signature = (uc, vc, ub, vb, kappa = None, q = "2", z = None, r1_at_z = "1", r3_at_z = "1"))]
    #[allow(clippy::too_many_arguments)]
    fn new(
        uc: Vec<String>,
        vc: Vec<String>,
        ub: Vec<String>,
        vb: Vec<String>,
        kappa: Option<[String; 3]>,
        q: &str,
        z: Option<String>,
        r1_at_z: &str,
        r3_at_z: &str,
    ) -> PyResult<Self> {
        let kap = match kappa {
            Some([a, b, c]) => {
                TwistVector::new(parse(&a)?, parse(&b)?, parse(&c)?).map_err(py_err)?
            }
            None => TwistVector::untwisted(),
        };
        let sets = [
            parse_vec(&uc)?,
            parse_vec(&vc)?,
            parse_vec(&ub)?,
            parse_vec(&vb)?,
        ];
        let mut inner = CoreConfig::on_shell(sets, kap, context(q)?).map_err(py_err)?;
        let z = z.map(|z| parse(&z)).transpose()?;
        if let Some(z) = &z {
            inner = inner
                .with_spectral(z.clone(), parse(r1_at_z)?, parse(r3_at_z)?)
                .map_err(py_err)?;
        }
        Ok(PyBetheConfig { inner, z })
    }

    /// `(|uB|, |vB|)`.
    fn sizes(&self) -> (usize, usize) {
        self.inner.sizes()
    }

    fn scalar_sum(&self) -> PyResult<String> {
        scalar_sum(&self.inner)
            .map(|v| scalar_format(&v))
            .map_err(py_err)
    }

    fn scalar_intermediate(&self) -> PyResult<String> {
        scalar_intermediate(&self.inner)
            .map(|v| scalar_format(&v))
            .map_err(py_err)
    }

    /// `kind` is `"S1"` (twist ratio 1) or `"Sq2"` (twist ratio `q^2`).
    #[pyo3(signature = (kind = "S1"))]
    fn scalar_det(&self, kind: &str) -> PyResult<String> {
        let which = match kind {
            "S1" => DetKind::S1,
            "Sq2" => DetKind::Sq2,
            _ => {
                return Err(PyValueError::new_err(format!(
                    "unknown determinant `{kind}`"
                )))
            }
        };
        scalar_det(&self.inner, which)
            .map(|v| scalar_format(&v))
            .map_err(py_err)
    }

    /// Form factor: `"ff22"`, `"ff22_analytic"`, `"ff22_twisted"`,
    /// `"ff33_q2"` or `"ff12_q"`. Twisted ones use the determinant route
    /// unless `route` is `"sum"`.
    #[pyo3(signature = (which, route = "det"))]
    fn form_factor(&self, which: &str, route: &str) -> PyResult<String> {
        let z = self
            .z
            .clone()
            .ok_or_else(|| PyValueError::new_err("form factors need z"))?;
        let route = match route {
            "det" => ScalarRoute::Det,
            "sum" => ScalarRoute::Sum,
            _ => return Err(PyValueError::new_err(format!("unknown route `{route}`"))),
        };
        let kind = match which {
            "ff22" => {
                return ff22(&z, &self.inner)
                    .map(|v| scalar_format(&v))
                    .map_err(py_err)
            }
            "ff22_analytic" => {
                return ff22_analytic(&z, &self.inner)
                    .map(|v| scalar_format(&v))
                    .map_err(py_err)
            }
            "ff22_twisted" => FfKind::Ff22Twisted,
            "ff33_q2" => FfKind::Ff33Q2,
            "ff12_q" => FfKind::Ff12Q,
            _ => {
                return Err(PyValueError::new_err(format!(
                    "unknown form factor `{which}`"
                )))
            }
        };
        let req = FormFactorRequest {
            which: kind,
            z,
            cfg: self.inner.clone(),
        };
        twisted_ff(&req, route)
            .map(|v| scalar_format(&v))
            .map_err(py_err)
    }
}

/// Kernel `f`, `g`, `h` or `t` at `(x, y)`.
#[pyfunction]
#[pyo3(signature = (kind, x, y, q = "2"))]
fn kernel(kind: &str, x: &str, y: &str, q: &str) -> PyResult<String> {
    let k = match kind {
        "f" => Kernel::F,
        "g" => Kernel::G,
        "h" => Kernel::H,
        "t" => Kernel::T,
        _ => return Err(PyValueError::new_err(format!("unknown kernel `{kind}`"))),
    };
    context(q)?
        .kernel(k, &parse(x)?, &parse(y)?)
        .map(|v| scalar_format(&v))
        .map_err(py_err)
}

/// Izergin determinant; `variant` is `"plain"`, `"left"` or `"right"`.
#[pyfunction]
#[pyo3(signature = (xs, ys, variant = "plain", q = "2"))]
fn izergin(xs: Vec<String>, ys: Vec<String>, variant: &str, q: &str) -> PyResult<String> {
    let v = match variant {
        "plain" => Variant::Plain,
        "left" => Variant::Left,
        "right" => Variant::Right,
        _ => {
            return Err(PyValueError::new_err(format!(
                "unknown variant `{variant}`"
            )))
        }
    };
    core_izergin(&parse_vec(&xs)?, &parse_vec(&ys)?, v, &context(q)?)
        .map(|v| scalar_format(&v))
        .map_err(py_err)
}

/// Runs a verification suite and returns its JSON records and whether every
/// check passed.
#[pyfunction]
#[pyo3(signature = (suite = "kernel", seed = 0, trials = 1, max_a = 1, max_b = 1, threads = 0))]
fn verify(
    py: Python<'_>,
    suite: &str,
    seed: u64,
    trials: usize,
    max_a: usize,
    max_b: usize,
    threads: usize,
) -> PyResult<(Vec<String>, bool)> {
    let s = Suite::parse(suite).map_err(py_err)?;
    let run = RunConfig {
        seed,
        trials,
        max_a,
        max_b,
        threads,
        ..RunConfig::default()
    };
    let records = py.detach(|| run_suite(s, &run)).map_err(py_err)?;
    let ok = records.iter().all(|r| r.status == Status::Pass);
    Ok((records.iter().map(|r| r.to_json()).collect(), ok))
}

#[pymodule]
fn qbethe_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyBetheConfig>()?;
    m.add_function(wrap_pyfunction!(kernel, m)?)?;
    m.add_function(wrap_pyfunction!(izergin, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
