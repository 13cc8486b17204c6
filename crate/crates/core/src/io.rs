//! JSON encodings of graphs and sets.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::domination::{DominationError, SimpleGraph};
use crate::hamiltonian::{embed_with_cycle, HamError, HamTriangulation};
use crate::mop::{MopError, MopGraph, Pos};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unknown graph type {0:?}")]
    UnknownType(String),
    #[error(transparent)]
    Mop(#[from] MopError),
    #[error(transparent)]
    Graph(#[from] DominationError),
    #[error(transparent)]
    Ham(#[from] HamError),
    #[error("expected a {expected}, got a {found}")]
    WrongKind { expected: &'static str, found: &'static str },
}

/// Wire form of a [`MopGraph`].
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename = "mop")]
pub struct MopJson {
    pub n: usize,
    pub chords: Vec<(Pos, Pos)>,
}

impl TryFrom<MopJson> for MopGraph {
    type Error = MopError;
    fn try_from(j: MopJson) -> Result<Self, MopError> {
        MopGraph::new(j.n, &j.chords)
    }
}

impl From<MopGraph> for MopJson {
    fn from(g: MopGraph) -> Self {
        MopJson {
            n: g.n(),
            chords: g.chords().to_vec(),
        }
    }
}

/// Wire form of a [`SimpleGraph`], optionally carrying a Hamilton cycle.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename = "graph")]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<(Pos, Pos)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cycle: Option<Vec<Pos>>,
}

impl TryFrom<GraphJson> for SimpleGraph {
    type Error = DominationError;
    fn try_from(j: GraphJson) -> Result<Self, DominationError> {
        SimpleGraph::new(j.n, &j.edges)
    }
}

impl From<SimpleGraph> for GraphJson {
    fn from(g: SimpleGraph) -> Self {
        GraphJson {
            n: g.n(),
            edges: g.edges(),
            cycle: None,
        }
    }
}

/// Wire form of a [`HamTriangulation`].
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename = "ham-triangulation")]
pub struct HamJson {
    pub n: usize,
    pub inner: Vec<(Pos, Pos)>,
    pub outer: Vec<(Pos, Pos)>,
}

impl TryFrom<HamJson> for HamTriangulation {
    type Error = HamError;
    fn try_from(j: HamJson) -> Result<Self, HamError> {
        HamTriangulation::new(j.n, &j.inner, &j.outer)
    }
}

impl From<HamTriangulation> for HamJson {
    fn from(t: HamTriangulation) -> Self {
        HamJson {
            n: t.n(),
            inner: t.side_graph(crate::hamiltonian::Side::Interior).chords().to_vec(),
            outer: t.side_graph(crate::hamiltonian::Side::Exterior).chords().to_vec(),
        }
    }
}

/// Any graph document accepted on input.
#[derive(Debug, Clone)]
pub enum GraphInput {
    Mop(MopGraph),
    Graph { graph: SimpleGraph, cycle: Option<Vec<Pos>> },
    Ham(HamTriangulation),
}

impl GraphInput {
    pub fn kind(&self) -> &'static str {
        match self {
            GraphInput::Mop(_) => "mop",
            GraphInput::Graph { .. } => "graph",
            GraphInput::Ham(_) => "ham-triangulation",
        }
    }

    /// Underlying simple graph of any input.
    pub fn simple_graph(&self) -> SimpleGraph {
        match self {
            GraphInput::Mop(g) => g.to_simple_graph(),
            GraphInput::Graph { graph, .. } => graph.clone(),
            GraphInput::Ham(t) => t.full_graph(),
        }
    }

    pub fn into_mop(self) -> Result<MopGraph, IoError> {
        match self {
            GraphInput::Mop(g) => Ok(g),
            other => Err(IoError::WrongKind {
                expected: "mop",
                found: other.kind(),
            }),
        }
    }

    /// A triangulation directly, or a graph with a `cycle` embedded along it.
    pub fn into_ham(self) -> Result<HamTriangulation, IoError> {
        match self {
            GraphInput::Ham(t) => Ok(t),
            GraphInput::Graph {
                graph,
                cycle: Some(cycle),
            } => Ok(embed_with_cycle(&graph, &cycle)?),
            other => Err(IoError::WrongKind {
                expected: "ham-triangulation",
                found: other.kind(),
            }),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            GraphInput::Mop(g) => serde_json::to_value(g),
            GraphInput::Graph { graph, cycle } => serde_json::to_value(GraphJson {
                cycle: cycle.clone(),
                ..GraphJson::from(graph.clone())
            }),
            GraphInput::Ham(t) => serde_json::to_value(HamJson::from(t.clone())),
        }
        .expect("graph documents always serialize")
    }
}

pub fn parse_graph(text: &str) -> Result<GraphInput, IoError> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    parse_graph_value(value)
}

pub fn parse_graph_value(value: serde_json::Value) -> Result<GraphInput, IoError> {
    let ty = value.get("type").and_then(|t| t.as_str()).unwrap_or("").to_string();
    match ty.as_str() {
        "mop" => {
            let j: MopJson = serde_json::from_value(value)?;
            Ok(GraphInput::Mop(MopGraph::try_from(j)?))
        }
        "graph" => {
            let j: GraphJson = serde_json::from_value(value)?;
            let cycle = j.cycle.clone();
            Ok(GraphInput::Graph {
                graph: SimpleGraph::try_from(j)?,
                cycle,
            })
        }
        "ham-triangulation" => {
            let j: HamJson = serde_json::from_value(value)?;
            Ok(GraphInput::Ham(HamTriangulation::try_from(j)?))
        }
        _ => Err(IoError::UnknownType(ty)),
    }
}

/// Parses one graph per nonblank line.
pub fn parse_jsonl(text: &str) -> Result<Vec<GraphInput>, IoError> {
    text.lines().filter(|l| !l.trim().is_empty()).map(parse_graph).collect()
}
