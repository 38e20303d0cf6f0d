//! The graph file: a TOML document listing vertices and directed edges.
//!
//! ```toml
//! version = 1
//! vertices = ["r", "u"]
//!
//! [[edges]]
//! id = "e1"
//! from = "u"
//! to = "r"
//! potential = { kind = "piecewise", breakpoints = [0.0, 0.5, 1.0], values = [1.0, -1.0] }
//! ```
//!
//! Potential kinds: `zero`, `constant` (`values = [v]`) and `piecewise`
//! (`values`, plus `breakpoints`; a uniform grid when omitted).

use serde::{Deserialize, Serialize};

use qgraph::{build_graph, EdgeDescription, GraphDescription, MetricGraph, PiecewisePotential};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub version: u32,
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeRecord {
    pub id: String,
    pub from: String,
    pub to: String,
    #[serde(default)]
    pub potential: PotentialRecord,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PotentialRecord {
    pub kind: PotentialKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub breakpoints: Option<Vec<f64>>,
}

impl Default for PotentialRecord {
    fn default() -> Self {
        Self {
            kind: PotentialKind::Zero,
            values: None,
            breakpoints: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PotentialKind {
    Zero,
    Constant,
    Piecewise,
}

#[derive(Debug, Clone, PartialEq)]
pub enum FormatError {
    Syntax(String),
    Invalid(String),
}

impl std::fmt::Display for FormatError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FormatError::Syntax(m) => write!(f, "malformed graph file: {m}"),
            FormatError::Invalid(m) => write!(f, "invalid graph: {m}"),
        }
    }
}

impl std::error::Error for FormatError {}

impl GraphFile {
    pub fn parse(text: &str) -> Result<Self, FormatError> {
        let file: GraphFile =
            toml::from_str(text).map_err(|e| FormatError::Syntax(e.to_string()))?;
        if file.version != FORMAT_VERSION {
            return Err(FormatError::Invalid(format!(
                "unsupported version {} (expected {FORMAT_VERSION})",
                file.version
            )));
        }
        Ok(file)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("graph files always serialize")
    }

    pub fn to_description(&self) -> Result<GraphDescription, FormatError> {
        let edges = self
            .edges
            .iter()
            .map(|e| {
                Ok(EdgeDescription {
                    id: e.id.clone(),
                    from: e.from.clone(),
                    to: e.to.clone(),
                    potential: e
                        .potential
                        .to_potential()
                        .map_err(|m| FormatError::Invalid(format!("edge `{}`: {m}", e.id)))?,
                })
            })
            .collect::<Result<Vec<_>, FormatError>>()?;
        Ok(GraphDescription {
            vertices: self.vertices.clone(),
            edges,
        })
    }

    pub fn to_graph(&self) -> Result<MetricGraph, FormatError> {
        build_graph(&self.to_description()?).map_err(|e| FormatError::Invalid(e.to_string()))
    }

    pub fn from_graph(g: &MetricGraph) -> Self {
        Self {
            version: FORMAT_VERSION,
            vertices: g.vertices().to_vec(),
            edges: g
                .edges()
                .iter()
                .map(|e| EdgeRecord {
                    id: e.id.clone(),
                    from: g.vertices()[e.tail].clone(),
                    to: g.vertices()[e.head].clone(),
                    potential: PotentialRecord::from_potential(&e.potential),
                })
                .collect(),
        }
    }
}

impl PotentialRecord {
    pub fn to_potential(&self) -> Result<PiecewisePotential, String> {
        match self.kind {
            PotentialKind::Zero => {
                if self.values.is_some() || self.breakpoints.is_some() {
                    return Err("a zero potential takes no values".into());
                }
                Ok(PiecewisePotential::zero())
            }
            PotentialKind::Constant => match (self.values.as_deref(), &self.breakpoints) {
                (Some(&[v]), None) if v.is_finite() => Ok(PiecewisePotential::constant(v)),
                _ => Err("a constant potential takes exactly one finite value".into()),
            },
            PotentialKind::Piecewise => {
                let values = self.values.clone().ok_or("missing values")?;
                let result = match &self.breakpoints {
                    Some(b) => PiecewisePotential::new(b.clone(), values),
                    None => PiecewisePotential::uniform(values),
                };
                result.map_err(|e| e.to_string())
            }
        }
    }

    pub fn from_potential(q: &PiecewisePotential) -> Self {
        if q.is_zero() {
            Self::default()
        } else if q.values().len() == 1 {
            Self {
                kind: PotentialKind::Constant,
                values: Some(q.values().to_vec()),
                breakpoints: None,
            }
        } else {
            Self {
                kind: PotentialKind::Piecewise,
                values: Some(q.values().to_vec()),
                breakpoints: Some(q.breakpoints().to_vec()),
            }
        }
    }
}
