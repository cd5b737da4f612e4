//! Python bindings: a thin class around `brauer_core::BrauerComplex` plus
//! module-level helpers for presets, equivalence and censuses. Structured
//! reports cross the boundary as JSON strings; scalars stay native.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use brauer_core::algebra::{
    build_algebra, center_formula, center_nilpotency_multiset, center_oracle,
};
use brauer_core::genus0::{decide_equivalent, Equivalence, SearchLimits};
use brauer_core::invariants::signature;
use brauer_core::io::{parse_complex, to_dot, ComplexDocument, QuiverDocument};
use brauer_core::orbit;
use brauer_core::presets;
use brauer_core::quiver::derive_quiver;
use brauer_core::tilting::{apply_move, classify_edge, endomorphism_check};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// An oriented ribbon complex with vertex multiplicities.
#[pyclass(frozen)]
#[derive(Clone)]
struct BrauerComplex {
    inner: brauer_core::BrauerComplex,
}

#[pymethods]
impl BrauerComplex {
    /// Parses either document flavor (dart-level or vertex-centric JSON).
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let inner = parse_complex(text).map_err(value_err)?;
        Ok(BrauerComplex { inner })
    }

    /// One of: e1, e2, e3, e4_c1, e4_c2, e5, e6, e6x.
    #[staticmethod]
    fn preset(name: &str) -> PyResult<Self> {
        let inner = match name {
            "e1" | "segment" => presets::segment(),
            "e2" | "theta" => presets::theta(),
            "e3" | "theta_loop" => presets::theta_loop(),
            "e4_c1" | "decagon_c1" => presets::decagon_c1(),
            "e4_c2" | "decagon_c2" => presets::decagon_c2(),
            "e5" | "star3" => presets::star3(),
            "e6" | "one_loop" => presets::one_loop(),
            "e6x" | "loop_with_leaf" => presets::loop_with_leaf(),
            _ => return Err(value_err(format!("unknown preset: {name}"))),
        };
        Ok(BrauerComplex { inner })
    }

    fn to_json(&self) -> String {
        serde_json::to_string_pretty(&ComplexDocument::from_complex(&self.inner)).unwrap()
    }

    fn edge_count(&self) -> usize {
        self.inner.complex().edge_count()
    }

    fn vertex_count(&self) -> usize {
        self.inner.complex().vertex_count()
    }

    fn genus(&self) -> usize {
        self.inner.complex().genus()
    }

    fn perimeters(&self) -> Vec<usize> {
        self.inner.complex().perimeters()
    }

    fn multiplicities(&self) -> Vec<u32> {
        self.inner.mult_multiset()
    }

    fn edges(&self) -> Vec<usize> {
        self.inner.complex().edges()
    }

    /// Full invariant signature as a JSON string.
    fn signature_json(&self) -> String {
        serde_json::to_string(&signature(&self.inner)).unwrap()
    }

    /// Stable digest of the canonical form; equal digests (and equal
    /// canonical encodings) mean isomorphic complexes.
    fn canonical_digest(&self) -> u64 {
        self.inner.canonical_form().digest()
    }

    fn is_isomorphic(&self, other: &BrauerComplex) -> bool {
        self.inner.is_isomorphic(&other.inner)
    }

    /// "leaf", "loop" or "general" — the transformation type at `edge`.
    fn classify_edge(&self, edge: usize) -> PyResult<&'static str> {
        use brauer_core::tilting::MoveKind::*;
        match classify_edge(&self.inner, edge).map_err(value_err)? {
            LeafShift => Ok("leaf"),
            LoopShift => Ok("loop"),
            General => Ok("general"),
        }
    }

    /// Applies the tilting transformation at `edge`, returning the new
    /// complex and the move record as JSON.
    fn apply_move(&self, edge: usize) -> PyResult<(BrauerComplex, String)> {
        let (moved, mv) = apply_move(&self.inner, edge).map_err(value_err)?;
        Ok((
            BrauerComplex { inner: moved },
            serde_json::to_string(&mv).unwrap(),
        ))
    }

    /// Extended quiver (arrows, A-cycles, G-cycles, formal flags) as JSON.
    fn quiver_json(&self) -> String {
        let q = derive_quiver(&self.inner);
        serde_json::to_string(&QuiverDocument::from_quiver(&q)).unwrap()
    }

    /// Center report: symbolic dimension, brute-force dimension, and the
    /// nilpotency multiset of Z/Soc Z.
    fn center_json(&self) -> String {
        let table = build_algebra(&derive_quiver(&self.inner));
        let formula = center_formula(&table);
        let oracle = center_oracle(&table);
        let nilpotency = center_nilpotency_multiset(&table, &oracle);
        serde_json::json!({
            "dim_z": formula.dim_z,
            "oracle_dim": oracle.len(),
            "nilpotency": nilpotency,
        })
        .to_string()
    }

    /// Compares dim End(T_edge) with the transformed algebra's dimension.
    fn endomorphism_check(&self, edge: usize) -> PyResult<(usize, usize)> {
        let report = endomorphism_check(&self.inner, edge).map_err(value_err)?;
        Ok((report.end_dim, report.transformed_dim))
    }

    /// Orbit exploration report as JSON.
    #[pyo3(signature = (budget = 10_000))]
    fn orbit_json(&self, budget: usize) -> String {
        serde_json::to_string(&orbit::explore(&self.inner, budget)).unwrap()
    }

    /// Genus-0 derived-equivalence decision; witness move logs included on
    /// request.
    #[pyo3(signature = (other, witness = false))]
    fn equivalent_to(&self, other: &BrauerComplex, witness: bool) -> PyResult<String> {
        let verdict = decide_equivalent(&self.inner, &other.inner, witness, SearchLimits::default())
            .map_err(value_err)?;
        let json = match verdict {
            Equivalence::Equivalent { witness } => serde_json::json!({
                "equivalent": true,
                "witness": witness.map(|w| serde_json::json!({
                    "log1": w.0,
                    "log2": w.1,
                })),
            }),
            Equivalence::NotEquivalent { distinguished_by } => serde_json::json!({
                "equivalent": false,
                "distinguished_by": distinguished_by,
            }),
        };
        Ok(json.to_string())
    }

    fn to_dot(&self) -> String {
        to_dot(&self.inner)
    }

    fn __repr__(&self) -> String {
        let s = signature(&self.inner);
        format!(
            "BrauerComplex(edges={}, perimeters={:?}, mults={:?}, genus={}, bipartite={})",
            s.n, s.perimeters, s.mults, s.genus, s.bipartite
        )
    }
}

/// Census over all complexes within the budgets, as JSON.
#[pyfunction]
fn census_json(edges: usize, mult: u32) -> String {
    serde_json::to_string(&orbit::census(edges, mult)).unwrap()
}

#[pymodule]
fn brauer_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<BrauerComplex>()?;
    m.add_function(wrap_pyfunction!(census_json, m)?)?;
    Ok(())
}
