//! Python bindings: frames, their operations, Booleanization and
//! DeMorganization. Elements are addressed by label.

use pyo3::exceptions::{PyKeyError, PyValueError};
use pyo3::prelude::*;

use demorgan_core::analysis::{analyze as analyze_frame, verify as verify_frame, OracleMode};
use demorgan_core::builders::{self, fixtures, StandardFamily, TopologySpec};
use demorgan_core::demorgan as ops;
use demorgan_core::dot::{frame_dot, sublocales_dot};
use demorgan_core::laws::verify_heyting_laws;
use demorgan_core::sublocale::{enumerate_sublocales, Sublocale};
use demorgan_core::{parse_frame_spec, ElementId};

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A finite frame.
#[pyclass(name = "Frame", module = "demorgan", frozen)]
struct PyFrame {
    inner: demorgan_core::Frame,
}

impl PyFrame {
    fn id(&self, label: &str) -> PyResult<ElementId> {
        self.inner
            .find_label(label)
            .ok_or_else(|| PyKeyError::new_err(label.to_string()))
    }

    fn label(&self, a: ElementId) -> String {
        self.inner.label(a)
    }
}

#[pymethods]
impl PyFrame {
    /// One of the named fixtures `C3`, `B4`, `F5`.
    #[staticmethod]
    fn fixture(name: &str) -> PyResult<Self> {
        fixtures::by_name(name)
            .map(|inner| PyFrame { inner })
            .ok_or_else(|| PyKeyError::new_err(name.to_string()))
    }

    /// Parses a FrameSpec JSON document.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let spec = parse_frame_spec(text).map_err(value_error)?;
        let inner = spec.build().map_err(value_error)?;
        Ok(PyFrame { inner })
    }

    /// `family` is `"chain"` or `"boolean"`.
    #[staticmethod]
    fn standard(family: &str, n: usize) -> PyResult<Self> {
        let family = match family {
            "chain" => StandardFamily::Chain,
            "boolean" => StandardFamily::Boolean,
            other => return Err(value_error(format!("unknown family {other:?}"))),
        };
        let inner = builders::standard_frame(family, n).map_err(value_error)?;
        Ok(PyFrame { inner })
    }

    /// The frame of opens of a finite topology.
    #[staticmethod]
    fn topology(points: Vec<String>, opens: Vec<Vec<String>>) -> PyResult<Self> {
        let inner =
            builders::from_topology(&TopologySpec { points, opens }).map_err(value_error)?;
        Ok(PyFrame { inner })
    }

    fn __len__(&self) -> usize {
        self.inner.size()
    }

    fn __repr__(&self) -> String {
        format!("Frame({})", self.labels().join(", "))
    }

    /// Element labels, bottom first, in a linear extension of the order.
    fn labels(&self) -> Vec<String> {
        self.inner.elements().map(|a| self.label(a)).collect()
    }

    fn bottom(&self) -> String {
        self.label(self.inner.bottom())
    }

    fn top(&self) -> String {
        self.label(self.inner.top())
    }

    fn leq(&self, a: &str, b: &str) -> PyResult<bool> {
        Ok(self.inner.leq(self.id(a)?, self.id(b)?))
    }

    fn meet(&self, a: &str, b: &str) -> PyResult<String> {
        Ok(self.label(self.inner.meet(self.id(a)?, self.id(b)?)))
    }

    fn join(&self, a: &str, b: &str) -> PyResult<String> {
        Ok(self.label(self.inner.join(self.id(a)?, self.id(b)?)))
    }

    fn heyting(&self, a: &str, b: &str) -> PyResult<String> {
        Ok(self.label(self.inner.heyting(self.id(a)?, self.id(b)?)))
    }

    fn pseudocomplement(&self, a: &str) -> PyResult<String> {
        Ok(self.label(self.inner.pseudocomplement(self.id(a)?)))
    }

    /// Failed Heyting laws, one line each; empty when all hold.
    fn law_failures(&self) -> Vec<String> {
        verify_heyting_laws(&self.inner).describe_failures(&self.inner)
    }

    fn booleanization(&self) -> PyResult<Vec<String>> {
        Ok(ops::booleanization(&self.inner)
            .map_err(value_error)?
            .labels())
    }

    fn demorganization(&self) -> Vec<String> {
        ops::demorganization(&self.inner).labels()
    }

    /// First element with `a* ∨ a** ≠ 1`, if any.
    fn de_morgan_witness(&self) -> Option<String> {
        ops::de_morgan_witness(&self.inner).map(|a| self.label(a))
    }

    fn is_extremally_disconnected(&self) -> PyResult<bool> {
        ops::is_extremally_disconnected(&self.inner).map_err(value_error)
    }

    fn is_boolean(&self) -> bool {
        ops::is_boolean(&self.inner)
    }

    /// Every sublocale as a list of member labels (at most 16 elements).
    fn sublocales(&self) -> PyResult<Vec<Vec<String>>> {
        Ok(enumerate_sublocales(&self.inner)
            .map_err(value_error)?
            .iter()
            .map(Sublocale::labels)
            .collect())
    }

    /// Whether the labelled subset is a sublocale.
    fn is_sublocale(&self, members: Vec<String>) -> PyResult<bool> {
        let ids = members
            .iter()
            .map(|m| self.id(m))
            .collect::<PyResult<Vec<_>>>()?;
        let set = demorgan_core::ElementSet::from_ids(self.inner.size(), ids);
        Ok(Sublocale::new(&self.inner, set).is_ok())
    }

    /// The analysis report as a JSON string.
    #[pyo3(signature = (name = "frame"))]
    fn analyze(&self, name: &str) -> PyResult<String> {
        let report = analyze_frame(name, &self.inner).map_err(value_error)?;
        Ok(serde_json::to_string(&report).expect("report serializes"))
    }

    /// The full invariant suite as a JSON report string.
    #[pyo3(signature = (name = "frame", oracle = false))]
    fn verify(&self, name: &str, oracle: bool) -> PyResult<String> {
        let mode = if oracle {
            OracleMode::Required
        } else {
            OracleMode::Off
        };
        let report = verify_frame(name, &self.inner, mode).map_err(value_error)?;
        Ok(serde_json::to_string(&report).expect("report serializes"))
    }

    /// Graphviz source for the Hasse diagram of the frame, or of its
    /// sublocales when `sublocales` is true.
    #[pyo3(signature = (name = "frame", sublocales = false))]
    fn to_dot(&self, name: &str, sublocales: bool) -> PyResult<String> {
        if sublocales {
            sublocales_dot(name, &self.inner).map_err(value_error)
        } else {
            Ok(frame_dot(name, &self.inner))
        }
    }
}

/// Every topology on `n ≤ 4` points, as frames.
#[pyfunction]
fn enumerate_topologies(n: usize) -> PyResult<Vec<PyFrame>> {
    builders::enumerate_topologies(n)
        .map_err(value_error)?
        .map(|t| {
            builders::from_topology(&t)
                .map(|inner| PyFrame { inner })
                .map_err(value_error)
        })
        .collect()
}

/// A seeded random topology on `n ≤ 6` points.
#[pyfunction]
fn random_topology(n: usize, seed: u64) -> PyResult<PyFrame> {
    let spec = builders::random_topology(n, seed).map_err(value_error)?;
    let inner = builders::from_topology(&spec).map_err(value_error)?;
    Ok(PyFrame { inner })
}

#[pymodule]
fn demorgan(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyFrame>()?;
    m.add_function(wrap_pyfunction!(enumerate_topologies, m)?)?;
    m.add_function(wrap_pyfunction!(random_topology, m)?)?;
    Ok(())
}
