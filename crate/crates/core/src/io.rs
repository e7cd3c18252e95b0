//! The JSON graph document: vertices, oriented edges, and an optional
//! rotation system with an outer-face marker.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::planar::{Dart, Embedding};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub id: String,
    pub tail: String,
    pub head: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Forward,
    Reverse,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OuterFace {
    pub edge: String,
    pub direction: Direction,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rotations: Option<BTreeMap<String, Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outer_face: Option<OuterFace>,
}

impl GraphDocument {
    pub fn parse(text: &str) -> Result<GraphDocument> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    pub fn graph(&self) -> Result<Graph> {
        Graph::new(
            self.vertices.iter().cloned(),
            self.edges
                .iter()
                .map(|e| (e.id.clone(), e.tail.clone(), e.head.clone())),
        )
    }

    /// The embedding, if rotations are present. `outer` overrides the
    /// document's marker.
    pub fn embedding(&self, graph: &Graph, outer: Option<&OuterFace>) -> Result<Option<Embedding>> {
        let Some(rotations) = &self.rotations else {
            return Ok(None);
        };
        let mut rot = vec![Vec::new(); graph.vertex_count()];
        for (v, list) in rotations {
            let vi = graph
                .vertex_index(v)
                .map_err(|_| Error::BadRotation(format!("unknown vertex `{v}`")))?;
            rot[vi] = list
                .iter()
                .map(|e| {
                    graph
                        .edge_index(e)
                        .map_err(|_| Error::BadRotation(format!("unknown edge `{e}` at `{v}`")))
                })
                .collect::<Result<_>>()?;
        }
        let marker = match outer.or(self.outer_face.as_ref()) {
            Some(o) => {
                let e = graph
                    .edge_index(&o.edge)
                    .map_err(|_| Error::BadOuterMarker(format!("unknown edge `{}`", o.edge)))?;
                Some(Dart {
                    edge: e,
                    reverse: o.direction == Direction::Reverse,
                })
            }
            None => None,
        };
        Ok(Some(Embedding {
            rotations: rot,
            outer: marker,
        }))
    }

    pub fn from_graph(graph: &Graph, embedding: Option<&Embedding>) -> GraphDocument {
        let edges = graph
            .edges()
            .iter()
            .map(|e| EdgeRecord {
                id: e.id.clone(),
                tail: graph.vertex_id(e.tail).to_string(),
                head: graph.vertex_id(e.head).to_string(),
            })
            .collect();
        let rotations = embedding.map(|emb| {
            emb.rotations
                .iter()
                .enumerate()
                .map(|(v, list)| {
                    (
                        graph.vertex_id(v).to_string(),
                        list.iter().map(|&e| graph.edge(e).id.clone()).collect(),
                    )
                })
                .collect()
        });
        let outer_face = embedding.and_then(|emb| emb.outer).map(|d| OuterFace {
            edge: graph.edge(d.edge).id.clone(),
            direction: if d.reverse {
                Direction::Reverse
            } else {
                Direction::Forward
            },
        });
        GraphDocument {
            vertices: graph.vertices().to_vec(),
            edges,
            rotations,
            outer_face,
        }
    }
}


/// Integers in reports: JSON numbers when they fit in an `i64`, decimal
/// strings otherwise.
pub(crate) mod ints {
    use std::fmt::Display;

    use serde::{Serialize, Serializer};

    struct Int<'a, T>(&'a T);

    impl<T: Display> Serialize for Int<'_, T> {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            let text = self.0.to_string();
            match text.parse::<i64>() {
                Ok(n) => s.serialize_i64(n),
                Err(_) => s.serialize_str(&text),
            }
        }
    }

    pub fn list<T: Display, S: Serializer>(v: &[T], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(Int))
    }

    pub fn rows<T: Display, S: Serializer>(v: &[Vec<T>], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|row| row.iter().map(Int).collect::<Vec<_>>()))
    }
}
