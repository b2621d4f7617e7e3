//! Group specification files: JSON descriptions of a presentation graph,
//! a vertex-group assignment, and run options.

use std::collections::BTreeMap;

use serde::Deserialize;
use thiserror::Error;

use gpgrowth::graph::{GraphProduct, PresentationGraph};
use gpgrowth::vertex::VertexGroup;

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("spec parse error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("edge references unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("vertex {0:?} has no group descriptor")]
    MissingGroup(String),
    #[error("group descriptor for unknown vertex {0:?}")]
    DanglingGroup(String),
    #[error("invalid vertex group for {label:?}: {source}")]
    Group {
        label: String,
        source: gpgrowth::vertex::VertexGroupError,
    },
    #[error("invalid graph: {0}")]
    Graph(#[from] gpgrowth::graph::GraphError),
}

/// JSON vertex-group descriptor.
#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "type")]
pub enum GroupDescriptor {
    #[serde(rename = "Z")]
    InfiniteCyclic,
    #[serde(rename = "cyclic")]
    Cyclic { order: usize },
    #[serde(rename = "table")]
    Table {
        order: usize,
        mult: Vec<Vec<u32>>,
        generators: Vec<u32>,
    },
}

/// Run options carried by the spec file; command-line flags take
/// precedence.
#[derive(Debug, Clone, Default, Deserialize)]
pub struct SpecOptions {
    pub radius: Option<u32>,
    pub memory_budget: Option<u64>,
    pub tolerance: Option<f64>,
    pub max_order: Option<usize>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct GroupSpecFile {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub edges: Vec<(String, String)>,
    pub groups: BTreeMap<String, GroupDescriptor>,
    #[serde(default)]
    pub options: SpecOptions,
}

impl GroupSpecFile {
    pub fn parse(text: &str) -> Result<Self, SpecError> {
        Ok(serde_json::from_str(text)?)
    }

    /// Builds the graph product, validating edges, descriptors and the
    /// group tables.
    pub fn build(&self) -> Result<GraphProduct, SpecError> {
        let index = |label: &str| -> Result<u32, SpecError> {
            self.vertices
                .iter()
                .position(|v| v == label)
                .map(|i| i as u32)
                .ok_or_else(|| SpecError::UnknownVertex(label.to_string()))
        };
        let mut edges = Vec::with_capacity(self.edges.len());
        for (u, v) in &self.edges {
            edges.push((index(u)?, index(v)?));
        }
        for label in self.groups.keys() {
            if !self.vertices.contains(label) {
                return Err(SpecError::DanglingGroup(label.clone()));
            }
        }
        let mut groups = Vec::with_capacity(self.vertices.len());
        for label in &self.vertices {
            let desc = self
                .groups
                .get(label)
                .ok_or_else(|| SpecError::MissingGroup(label.clone()))?;
            let vg = match desc {
                GroupDescriptor::InfiniteCyclic => VertexGroup::InfiniteCyclic,
                GroupDescriptor::Cyclic { order } => {
                    VertexGroup::cyclic(*order).map_err(|source| SpecError::Group {
                        label: label.clone(),
                        source,
                    })?
                }
                GroupDescriptor::Table {
                    order,
                    mult,
                    generators,
                } => {
                    if mult.len() != *order {
                        return Err(SpecError::Group {
                            label: label.clone(),
                            source: gpgrowth::vertex::VertexGroupError::BadTableShape {
                                order: *order,
                                got: mult.len(),
                            },
                        });
                    }
                    VertexGroup::Finite(
                        gpgrowth::vertex::FiniteGroup::from_table(mult.clone(), generators.clone())
                            .map_err(|source| SpecError::Group {
                                label: label.clone(),
                                source,
                            })?,
                    )
                }
            };
            groups.push(vg);
        }
        let graph = PresentationGraph::new(self.vertices.clone(), &edges)?;
        Ok(GraphProduct::new(graph, groups)?)
    }
}
