//! JSON net documents.
//!
//! ```json
//! {
//!   "format_version": 1,
//!   "vertices": [{"id": "a1", "x": 1.0, "y": 0.0, "kind": "balanced", "label": "a1"}],
//!   "edges": [["a1", "b1"]]
//! }
//! ```
//!
//! Coordinates are written in the shortest decimal form that parses back to
//! the identical `f64`, so a save/load round trip is bit-exact.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::Point;
use crate::net::{Net, Vertex, VertexKind};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexRecord {
    pub id: String,
    pub x: f64,
    pub y: f64,
    pub kind: VertexKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetDocument {
    pub format_version: u32,
    pub vertices: Vec<VertexRecord>,
    pub edges: Vec<[String; 2]>,
}

impl NetDocument {
    pub fn from_net(net: &Net) -> Self {
        NetDocument {
            format_version: FORMAT_VERSION,
            vertices: net
                .vertices()
                .iter()
                .map(|v| VertexRecord {
                    id: v.id.clone(),
                    x: v.pos.x,
                    y: v.pos.y,
                    kind: v.kind,
                    label: v.label.clone(),
                })
                .collect(),
            edges: net
                .edges()
                .iter()
                .map(|e| [net.id(e.a()).to_owned(), net.id(e.b()).to_owned()])
                .collect(),
        }
    }

    pub fn into_net(self) -> Result<Net> {
        if self.format_version != FORMAT_VERSION {
            return Err(Error::InvariantViolation(format!(
                "unsupported format_version {}",
                self.format_version
            )));
        }
        let vertices = self
            .vertices
            .into_iter()
            .map(|r| Vertex {
                id: r.id,
                pos: Point::new(r.x, r.y),
                kind: r.kind,
                label: r.label,
            })
            .collect();
        let edges: Vec<(String, String)> = self.edges.into_iter().map(|[a, b]| (a, b)).collect();
        Net::from_id_edges(vertices, &edges)
    }
}

fn parse_error(e: serde_json::Error) -> Error {
    Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

pub fn to_json(net: &Net) -> String {
    let mut s = serde_json::to_string_pretty(&NetDocument::from_net(net))
        .expect("net documents always serialize");
    s.push('\n');
    s
}

pub fn from_json(text: &str) -> Result<Net> {
    let doc: NetDocument = serde_json::from_str(text).map_err(parse_error)?;
    doc.into_net()
}

pub fn save(net: &Net, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, to_json(net))?;
    Ok(())
}

pub fn load(path: impl AsRef<Path>) -> Result<Net> {
    from_json(&fs::read_to_string(path)?)
}
