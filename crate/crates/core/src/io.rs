//! JSON files for graphs, transversals and reduction inputs.
//!
//! A graph file looks like
//!
//! ```json
//! {"parts": [[0, 1], [2, 3]], "edges": [[0, 2], [1, 3]]}
//! ```
//!
//! Vertex ids are non-negative integers, each appearing in exactly one part.

use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{MultipartiteGraph, Transversal, VertexId};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphFile {
    parts: Vec<Vec<VertexId>>,
    edges: Vec<[VertexId; 2]>,
}

fn parse_error(what: &str, e: serde_json::Error) -> Error {
    Error::Parse(format!(
        "{what}: line {} column {}: {e}",
        e.line(),
        e.column()
    ))
}

/// Parse a graph from JSON text. Structural problems such as an edge naming
/// an unknown vertex are reported as parse errors.
pub fn parse_graph(text: &str) -> Result<MultipartiteGraph> {
    let file: GraphFile = serde_json::from_str(text).map_err(|e| parse_error("graph", e))?;
    let edges = file.edges.into_iter().map(|[u, v]| (u, v));
    MultipartiteGraph::new(file.parts, edges).map_err(|e| match e {
        Error::Input(msg) => Error::Parse(format!("graph: {msg}")),
        other => other,
    })
}

pub fn graph_to_json(g: &MultipartiteGraph) -> String {
    let file = GraphFile {
        parts: g.parts().to_vec(),
        edges: g.edges().iter().map(|&(u, v)| [u, v]).collect(),
    };
    serde_json::to_string(&file).expect("graph serializes")
}

pub fn load_graph(path: impl AsRef<Path>) -> Result<MultipartiteGraph> {
    parse_graph(&fs::read_to_string(path)?)
}

pub fn save_graph(g: &MultipartiteGraph, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, graph_to_json(g) + "\n")?;
    Ok(())
}

/// `{"transversal": {"<part>": <vertex>, ...}}`
#[derive(Serialize, Deserialize)]
struct TransversalFile {
    transversal: Transversal,
}

pub fn parse_transversal(text: &str) -> Result<Transversal> {
    let file: TransversalFile =
        serde_json::from_str(text).map_err(|e| parse_error("transversal", e))?;
    Ok(file.transversal)
}

pub fn transversal_to_json(t: &Transversal) -> String {
    serde_json::to_string(&TransversalFile {
        transversal: t.clone(),
    })
    .expect("transversal serializes")
}

pub fn save_transversal(t: &Transversal, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, transversal_to_json(t) + "\n")?;
    Ok(())
}

pub fn load_transversal(path: impl AsRef<Path>) -> Result<Transversal> {
    parse_transversal(&fs::read_to_string(path)?)
}

/// Load any JSON document, for the list-coloring and graph-family inputs.
pub fn load_json<T: DeserializeOwned>(path: impl AsRef<Path>) -> Result<T> {
    let path = path.as_ref();
    let text = fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| parse_error(&path.display().to_string(), e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::gen_disjoint_cliques;

    #[test]
    fn empty_graph_round_trips() {
        let g = parse_graph(r#"{"parts":[],"edges":[]}"#).unwrap();
        assert_eq!(g.part_count(), 0);
        assert_eq!(parse_graph(&graph_to_json(&g)).unwrap(), g);
    }

    #[test]
    fn cliques_round_trip_with_stats() {
        let g = gen_disjoint_cliques(2).unwrap();
        let h = parse_graph(&graph_to_json(&g)).unwrap();
        assert_eq!(h, g);
        assert_eq!(h.compute_stats(), g.compute_stats());
    }

    #[test]
    fn unknown_vertex_is_a_parse_error() {
        let err = parse_graph(r#"{"parts":[[0],[1]],"edges":[[0,7]]}"#).unwrap_err();
        assert!(matches!(err, Error::Parse(_)), "{err}");
    }

    #[test]
    fn syntax_errors_carry_position() {
        let err = parse_graph("{\"parts\": [[0]],\n \"edges\": [[0,]]}").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line 2"), "{msg}");
        let err = parse_graph(r#"{"parts":[[0]],"edges":[],"extra":1}"#).unwrap_err();
        assert!(err.to_string().contains("extra"));
    }

    #[test]
    fn transversal_round_trips() {
        let t: Transversal = [(0, 4), (1, 9)].into_iter().collect();
        assert_eq!(parse_transversal(&transversal_to_json(&t)).unwrap(), t);
    }
}
