//! Python bindings: the cyclotomic field, polynomials, groups, orbit scans,
//! the five-point birational image, and the check runner.
//!
//! Build with maturin, or copy the built cdylib next to your script as
//! `equigeo.so` — see the repository README.

use pyo3::exceptions::{PyValueError, PyZeroDivisionError};
use pyo3::prelude::*;
use pyo3::types::PyDict;
use std::sync::Arc;

use equigeo_core::checks::{
    build_context, emit_json, load_descriptors, run_checks, CheckStatus, Context, RunConfig,
};
use equigeo_core::cremona::cremona_image;
use equigeo_core::group::{small_orbits_on, MatrixGroup, ProjPoint};
use equigeo_core::poly::MultiPoly;
use equigeo_core::registry::Registry;

fn value_err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// The cyclotomic field ℚ(ζ_N).
#[pyclass(from_py_object)]
#[derive(Clone)]
struct Field {
    inner: equigeo_core::Field,
}

#[pymethods]
impl Field {
    #[new]
    #[pyo3(signature = (conductor=120))]
    fn new(conductor: u32) -> PyResult<Self> {
        Ok(Field {
            inner: equigeo_core::Field::new(conductor).map_err(value_err)?,
        })
    }

    fn conductor(&self) -> u32 {
        self.inner.conductor()
    }

    fn degree(&self) -> usize {
        self.inner.phi()
    }

    /// Parse a cyclotomic literal, e.g. "z5^3 + z5^2 + 2".
    fn parse(&self, text: &str) -> PyResult<Elem> {
        Ok(Elem {
            inner: self.inner.parse(text).map_err(value_err)?,
        })
    }

    /// Parse a polynomial literal in x1..x5.
    fn poly(&self, text: &str) -> PyResult<Poly> {
        Ok(Poly {
            inner: MultiPoly::parse(&self.inner, text).map_err(value_err)?,
        })
    }

    /// Exact square root, if the search finds one in the field.
    fn sqrt(&self, x: &Elem) -> Option<Elem> {
        self.inner.sqrt(&x.inner).map(|inner| Elem { inner })
    }
}

/// An exact element of the field.
#[pyclass(from_py_object)]
#[derive(Clone)]
struct Elem {
    inner: equigeo_core::Cyc,
}

#[pymethods]
impl Elem {
    fn __str__(&self) -> String {
        self.inner.render()
    }

    fn __repr__(&self) -> String {
        self.inner.render()
    }

    fn __add__(&self, other: &Elem) -> Elem {
        Elem {
            inner: &self.inner + &other.inner,
        }
    }

    fn __sub__(&self, other: &Elem) -> Elem {
        Elem {
            inner: &self.inner - &other.inner,
        }
    }

    fn __mul__(&self, other: &Elem) -> Elem {
        Elem {
            inner: &self.inner * &other.inner,
        }
    }

    fn __truediv__(&self, other: &Elem) -> PyResult<Elem> {
        self.inner
            .try_div(&other.inner)
            .map(|inner| Elem { inner })
            .map_err(|e| PyZeroDivisionError::new_err(e.to_string()))
    }

    fn __neg__(&self) -> Elem {
        Elem {
            inner: -&self.inner,
        }
    }

    fn __pow__(&self, e: i64, _mod: Option<i64>) -> Elem {
        Elem {
            inner: self.inner.pow(e),
        }
    }

    fn __eq__(&self, other: &Elem) -> bool {
        self.inner == other.inner
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    /// Numeric embedding at ζ_N ↦ e^(2πi·k/N); diagnostics only.
    #[pyo3(signature = (root_choice=1))]
    fn embed(&self, root_choice: u32) -> (f64, f64) {
        self.inner.field().embed(&self.inner, root_choice)
    }
}

/// A polynomial in the five homogeneous coordinates.
#[pyclass(from_py_object)]
#[derive(Clone)]
struct Poly {
    inner: MultiPoly,
}

#[pymethods]
impl Poly {
    fn __str__(&self) -> String {
        self.inner.render()
    }

    fn __repr__(&self) -> String {
        self.inner.render()
    }

    fn __add__(&self, other: &Poly) -> Poly {
        Poly {
            inner: &self.inner + &other.inner,
        }
    }

    fn __sub__(&self, other: &Poly) -> Poly {
        Poly {
            inner: &self.inner - &other.inner,
        }
    }

    fn __mul__(&self, other: &Poly) -> Poly {
        Poly {
            inner: &self.inner * &other.inner,
        }
    }

    fn __eq__(&self, other: &Poly) -> bool {
        self.inner == other.inner
    }

    fn degree(&self) -> Option<u32> {
        self.inner.degree()
    }

    fn num_terms(&self) -> usize {
        self.inner.num_terms()
    }

    fn partial(&self, i: usize) -> PyResult<Poly> {
        if i >= 5 {
            return Err(PyValueError::new_err("variable index out of range"));
        }
        Ok(Poly {
            inner: self.inner.partial(i),
        })
    }

    /// Exact evaluation at five field elements.
    fn eval(&self, point: Vec<Elem>) -> PyResult<Elem> {
        if point.len() != 5 {
            return Err(PyValueError::new_err("expected 5 coordinates"));
        }
        let coords: Vec<equigeo_core::Cyc> = point.into_iter().map(|e| e.inner).collect();
        Ok(Elem {
            inner: self.inner.eval(&coords),
        })
    }

    /// Remainder after division by a single polynomial.
    fn reduce_by(&self, d: &Poly) -> Poly {
        Poly {
            inner: self.inner.reduce_by(&d.inner),
        }
    }
}

/// A fully enumerated finite matrix group from the built-in registry.
#[pyclass]
struct Group {
    inner: Arc<MatrixGroup>,
    reg: Arc<Registry>,
}

#[pymethods]
impl Group {
    fn order(&self) -> usize {
        self.inner.order()
    }

    fn order_census(&self) -> std::collections::BTreeMap<usize, usize> {
        self.inner.order_census()
    }

    /// Orbit length of a point given by a registry key or literal.
    fn orbit_length(&self, point: &str) -> PyResult<usize> {
        let p = self.reg.point_or_literal(point).map_err(value_err)?;
        Ok(self.inner.orbit_of(&p).len())
    }

    fn stabilizer_order(&self, point: &str) -> PyResult<usize> {
        let p = self.reg.point_or_literal(point).map_err(value_err)?;
        Ok(self.inner.stabilizer(&p).len())
    }

    /// Dimension of the invariant forms of the given degree.
    fn invariant_dimension(&self, degree: u32) -> usize {
        self.inner.invariant_forms(degree).len()
    }

    /// Orbit lengths of all point orbits of length ≤ max_len on a registered
    /// hypersurface.
    fn small_orbit_lengths(&self, variety: &str, max_len: usize) -> PyResult<Vec<usize>> {
        let form = self.reg.form(variety).map_err(value_err)?;
        Ok(small_orbits_on(&self.inner, &form, max_len).lengths())
    }
}

/// The built-in registry plus the check runner.
#[pyclass]
struct Toolkit {
    ctx: Arc<Context>,
    reg: Arc<Registry>,
}

#[pymethods]
impl Toolkit {
    #[new]
    #[pyo3(signature = (conductor=120))]
    fn new(conductor: u32) -> PyResult<Self> {
        let config = RunConfig {
            conductor,
            ..RunConfig::default()
        };
        let ctx = build_context(&config).map_err(value_err)?;
        let reg = Arc::new(Registry::new(conductor).map_err(value_err)?);
        Ok(Toolkit {
            ctx: Arc::new(ctx),
            reg,
        })
    }

    fn field(&self) -> Field {
        Field {
            inner: self.reg.field(),
        }
    }

    fn group(&self, key: &str) -> PyResult<Group> {
        Ok(Group {
            inner: self.reg.group(key).map_err(value_err)?,
            reg: self.reg.clone(),
        })
    }

    fn form(&self, key: &str) -> PyResult<Poly> {
        Ok(Poly {
            inner: self.reg.form(key).map_err(value_err)?,
        })
    }

    /// Run checks matching the glob; returns a list of report dicts.
    #[pyo3(signature = (filter=None, jobs=0))]
    fn run_checks<'py>(
        &self,
        py: Python<'py>,
        filter: Option<&str>,
        jobs: usize,
    ) -> PyResult<Vec<Bound<'py, PyDict>>> {
        let descriptors = load_descriptors(&RunConfig::default()).map_err(value_err)?;
        let reports = run_checks(&self.ctx, &descriptors, filter, jobs);
        let mut out = Vec::new();
        for r in reports {
            let d = PyDict::new(py);
            d.set_item("id", &r.id)?;
            d.set_item("anchor", &r.anchor)?;
            d.set_item("category", &r.category)?;
            d.set_item(
                "status",
                match r.status {
                    CheckStatus::Pass => "pass",
                    CheckStatus::Fail => "fail",
                    CheckStatus::SkippedWithReason => "skipped-with-reason",
                },
            )?;
            d.set_item("computed", &r.computed)?;
            d.set_item("expected", &r.expected)?;
            out.push(d);
        }
        Ok(out)
    }

    /// JSON ledger for the matching checks (deterministic).
    #[pyo3(signature = (filter=None, jobs=0))]
    fn run_checks_json(&self, filter: Option<&str>, jobs: usize) -> PyResult<String> {
        let descriptors = load_descriptors(&RunConfig::default()).map_err(value_err)?;
        let reports = run_checks(&self.ctx, &descriptors, filter, jobs);
        Ok(emit_json(&reports, self.reg.field().conductor()))
    }

    /// Image cubic of the five-point birational map, with its census.
    fn cremona_image<'py>(
        &self,
        py: Python<'py>,
        group: &str,
        orbit_rep: &str,
    ) -> PyResult<Bound<'py, PyDict>> {
        let grp = self.reg.group(group).map_err(value_err)?;
        let quadric_key = if group == "A5-standard" { "X1" } else { "X2" };
        let quadric = self.reg.form(quadric_key).map_err(value_err)?;
        let rep: ProjPoint = self.reg.point_or_literal(orbit_rep).map_err(value_err)?;
        if !quadric.eval(&rep.coords).is_zero() {
            return Err(PyValueError::new_err("orbit representative not on the quadric"));
        }
        let scan = small_orbits_on(&grp, &quadric, 19);
        let orbit = scan
            .find_orbit_of(&rep)
            .ok_or_else(|| PyValueError::new_err("representative not in a small orbit"))?
            .orbit
            .clone();
        let (_, out) = cremona_image(&grp, &orbit, &quadric).map_err(value_err)?;
        let d = PyDict::new(py);
        d.set_item("image", out.image.render())?;
        d.set_item("invariant", out.invariant)?;
        d.set_item(
            "census",
            out.census
                .iter()
                .map(|r| r.kind.to_string())
                .collect::<Vec<_>>(),
        )?;
        Ok(d)
    }
}

#[pymodule]
fn equigeo(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Field>()?;
    m.add_class::<Elem>()?;
    m.add_class::<Poly>()?;
    m.add_class::<Group>()?;
    m.add_class::<Toolkit>()?;
    Ok(())
}
