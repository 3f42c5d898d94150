//! `FrameSpec`: the JSON description of a frame accepted by the CLI.
//!
//! ```json
//! {"kind": "topology", "name": "sierpinski",
//!  "payload": {"points": ["x","y"], "opens": [[], ["x"], ["x","y"]]}}
//! ```
//!
//! Kinds: `topology`, `poset`, `lattice`, `standard`, `product`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::builders::{
    downset_frame, from_topology, product_frame, standard_frame, BuildError, PosetSpec,
    StandardFamily, TopologySpec,
};
use crate::frame::{build_frame, Frame, FrameError};

pub const KINDS: [&str; 5] = ["topology", "poset", "lattice", "standard", "product"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrameSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(flatten)]
    pub source: FrameSource,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "payload", rename_all = "lowercase")]
pub enum FrameSource {
    Topology(TopologySpec),
    Poset(PosetSpec),
    Lattice(LatticeSpec),
    Standard(StandardSpec),
    Product(ProductSpec),
}

/// An explicit lattice: element names and order pairs `(lower, upper)`.
/// Covering pairs are enough.
///
/// `heyting`, when present, overrides the computed implication table: row
/// `a` lists `a → b` for every `b`, by element name. It is not checked
/// against the order; `verify` reports any law it breaks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeSpec {
    pub elements: Vec<String>,
    pub leq: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub heyting: Option<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StandardSpec {
    pub family: StandardFamily,
    pub n: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductSpec {
    pub left: Box<FrameSpec>,
    pub right: Box<FrameSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    MalformedJson {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("missing \"kind\" field")]
    MissingKind,
    #[error("unknown kind {0:?} (expected one of topology, poset, lattice, standard, product)")]
    UnknownKind(String),
    #[error("invalid payload at line {line}, column {column}: {message}")]
    InvalidPayload {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown lattice element {0:?}")]
    UnknownElement(String),
    #[error("duplicate lattice element {0:?}")]
    DuplicateElement(String),
    #[error(transparent)]
    Build(#[from] BuildError),
}

impl From<FrameError> for SpecError {
    fn from(e: FrameError) -> Self {
        SpecError::Build(BuildError::Frame(e))
    }
}

/// Parses and validates a spec: the returned spec is known to build.
pub fn parse_frame_spec(text: &str) -> Result<FrameSpec, SpecError> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| SpecError::MalformedJson {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
    check_kinds(&value)?;
    let spec: FrameSpec = serde_json::from_str(text).map_err(|e| SpecError::InvalidPayload {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    spec.build()?;
    Ok(spec)
}

/// Walks nested product specs so kind errors are reported as such rather
/// than as serde's generic variant message.
fn check_kinds(value: &serde_json::Value) -> Result<(), SpecError> {
    let kind = value
        .get("kind")
        .ok_or(SpecError::MissingKind)?
        .as_str()
        .ok_or_else(|| SpecError::UnknownKind(value["kind"].to_string()))?;
    if !KINDS.contains(&kind) {
        return Err(SpecError::UnknownKind(kind.to_string()));
    }
    if kind == "product" {
        if let Some(payload) = value.get("payload") {
            for side in ["left", "right"] {
                if let Some(inner) = payload.get(side) {
                    check_kinds(inner)?;
                }
            }
        }
    }
    Ok(())
}

impl FrameSpec {
    pub fn new(source: FrameSource) -> Self {
        FrameSpec { name: None, source }
    }

    pub fn named(name: impl Into<String>, source: FrameSource) -> Self {
        FrameSpec {
            name: Some(name.into()),
            source,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("spec serializes")
    }

    /// Name to report the frame under.
    pub fn display_name(&self) -> String {
        self.name.clone().unwrap_or_else(|| match &self.source {
            FrameSource::Topology(_) => "topology".into(),
            FrameSource::Poset(_) => "poset".into(),
            FrameSource::Lattice(_) => "lattice".into(),
            FrameSource::Standard(s) => format!("{:?}-{}", s.family, s.n).to_lowercase(),
            FrameSource::Product(p) => {
                format!("{}×{}", p.left.display_name(), p.right.display_name())
            }
        })
    }

    pub fn build(&self) -> Result<Frame, SpecError> {
        match &self.source {
            FrameSource::Topology(t) => Ok(from_topology(t)?),
            FrameSource::Poset(p) => Ok(downset_frame(p)?),
            FrameSource::Lattice(l) => build_lattice(l),
            FrameSource::Standard(s) => Ok(standard_frame(s.family, s.n)?),
            FrameSource::Product(p) => {
                let (left, right) = (p.left.build()?, p.right.build()?);
                Ok(product_frame(&left, &right)?)
            }
        }
    }
}

fn build_lattice(spec: &LatticeSpec) -> Result<Frame, SpecError> {
    let mut index = HashMap::new();
    for (i, e) in spec.elements.iter().enumerate() {
        if index.insert(e.as_str(), i).is_some() {
            return Err(SpecError::DuplicateElement(e.clone()));
        }
    }
    let lookup = |name: &String| {
        index
            .get(name.as_str())
            .copied()
            .ok_or_else(|| SpecError::UnknownElement(name.clone()))
    };
    let pairs = spec
        .leq
        .iter()
        .map(|(lo, hi)| Ok((lookup(lo)?, lookup(hi)?)))
        .collect::<Result<Vec<_>, SpecError>>()?;
    let mut frame = build_frame(spec.elements.len(), pairs)?.with_labels(spec.elements.clone())?;
    if let Some(rows) = &spec.heyting {
        let n = spec.elements.len();
        let mut table = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(FrameError::HeytingTableShape {
                    expected: n * n,
                    got: rows.iter().map(Vec::len).sum(),
                }
                .into());
            }
            for entry in row {
                table.push(lookup(entry)?);
            }
        }
        frame = frame.with_heyting_table(table)?;
    }
    Ok(frame)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{fixtures, isomorphic};

    #[test]
    fn parses_documented_examples() {
        let c3 = parse_frame_spec(
            r#"{"kind":"topology","payload":{"points":["x","y"],"opens":[[],["x"],["x","y"]]}}"#,
        )
        .unwrap();
        assert!(isomorphic(&c3.build().unwrap(), &fixtures::c3()));
        let b4 = parse_frame_spec(r#"{"kind":"standard","payload":{"family":"boolean","n":2}}"#)
            .unwrap();
        assert!(isomorphic(&b4.build().unwrap(), &fixtures::b4()));
    }

    #[test]
    fn validator_errors() {
        let missing_empty = r#"{"kind":"topology","payload":{"points":["x"],"opens":[["x"]]}}"#;
        assert!(matches!(
            parse_frame_spec(missing_empty),
            Err(SpecError::Build(BuildError::NotATopology(_)))
        ));
        assert!(matches!(
            parse_frame_spec("{\"kind\": \"topology\",\n \"payload\": [}"),
            Err(SpecError::MalformedJson { line: 2, .. })
        ));
        assert_eq!(
            parse_frame_spec(r#"{"kind":"sheaf","payload":{}}"#),
            Err(SpecError::UnknownKind("sheaf".into()))
        );
        assert_eq!(
            parse_frame_spec(r#"{"payload":{}}"#),
            Err(SpecError::MissingKind)
        );
        assert!(matches!(
            parse_frame_spec(r#"{"kind":"standard","payload":{"family":"chain"}}"#),
            Err(SpecError::InvalidPayload { .. })
        ));
        assert!(matches!(
            parse_frame_spec(
                r#"{"kind":"product","payload":{"left":{"kind":"nope"},"right":{"kind":"standard","payload":{"family":"chain","n":2}}}}"#
            ),
            Err(SpecError::UnknownKind(k)) if k == "nope"
        ));
    }

    #[test]
    fn lattice_specs() {
        let n5 = r#"{"kind":"lattice","payload":{"elements":["0","x","y","z","1"],
            "leq":[["0","x"],["x","y"],["y","1"],["0","z"],["z","1"]]}}"#;
        assert!(matches!(
            parse_frame_spec(n5),
            Err(SpecError::Build(BuildError::Frame(
                FrameError::NotDistributive { .. }
            )))
        ));
        let unknown = r#"{"kind":"lattice","payload":{"elements":["0","1"],"leq":[["0","2"]]}}"#;
        assert_eq!(
            parse_frame_spec(unknown),
            Err(SpecError::UnknownElement("2".into()))
        );
        let with_table = r#"{"kind":"lattice","name":"c3-bad","payload":{"elements":["0","m","1"],
            "leq":[["0","m"],["m","1"]],
            "heyting":[["1","1","1"],["m","1","1"],["0","m","1"]]}}"#;
        let spec = parse_frame_spec(with_table).unwrap();
        let f = spec.build().unwrap();
        assert_eq!(
            f.label(f.heyting(f.find_label("m").unwrap(), f.bottom())),
            "m"
        );
    }

    #[test]
    fn round_trip_fixture_specs() {
        let specs = [
            FrameSpec::named("C3", FrameSource::Topology(fixtures::sierpinski())),
            FrameSpec::named("F5", FrameSource::Topology(fixtures::f5_topology())),
            FrameSpec::new(FrameSource::Standard(StandardSpec {
                family: StandardFamily::Boolean,
                n: 2,
            })),
            FrameSpec::new(FrameSource::Poset(PosetSpec {
                elements: vec!["p".into(), "q".into()],
                covers: vec![("p".into(), "q".into())],
            })),
            FrameSpec::named(
                "prod",
                FrameSource::Product(ProductSpec {
                    left: Box::new(FrameSpec::new(
                        FrameSource::Topology(fixtures::sierpinski()),
                    )),
                    right: Box::new(FrameSpec::new(FrameSource::Standard(StandardSpec {
                        family: StandardFamily::Chain,
                        n: 2,
                    }))),
                }),
            ),
        ];
        for spec in specs {
            assert_eq!(parse_frame_spec(&spec.to_json()).unwrap(), spec);
        }
    }
}
