//! Newline-delimited JSON persistence for mutation graphs.
//!
//! One line per canonical seed, in breadth-first order:
//!
//! ```text
//! {"id":0,"depth":0,"cluster":["x2","x1"],"matrix":[[0,-1],[1,0]],"neighbors":[1,2]}
//! ```
//!
//! `neighbors[p]` is the id reached by mutating at position `p` (`null` when
//! the exploration was cut off there). Reloading re-runs every recorded
//! mutation, so tampered lines are rejected rather than silently accepted.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{CanonicalSeed, GraphNode, MutationGraph};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::quiver::ExchangeMatrix;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CacheLine {
    pub id: usize,
    pub depth: usize,
    pub cluster: Vec<String>,
    pub matrix: Vec<Vec<i64>>,
    pub neighbors: Vec<Option<usize>>,
}

pub fn write_cache_to<W: Write>(graph: &MutationGraph, mut out: W) -> Result<()> {
    for (id, node) in graph.nodes().iter().enumerate() {
        let line = CacheLine {
            id,
            depth: node.depth,
            cluster: node.seed.cluster().iter().map(|u| u.to_string()).collect(),
            matrix: node.seed.matrix().rows(),
            neighbors: node.neighbors.clone(),
        };
        serde_json::to_writer(&mut out, &line).map_err(std::io::Error::from)?;
        out.write_all(b"\n")?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_cache(graph: &MutationGraph, path: impl AsRef<Path>) -> Result<()> {
    write_cache_to(graph, BufWriter::new(File::create(path)?))
}

pub fn read_cache(path: impl AsRef<Path>) -> Result<MutationGraph> {
    read_cache_from(File::open(path)?)
}

pub fn read_cache_from<R: Read>(input: R) -> Result<MutationGraph> {
    let mut nodes = Vec::new();
    let mut n = 0;
    for (idx, line) in BufReader::new(input).lines().enumerate() {
        let lineno = idx + 1;
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let bad = |message: String| Error::Cache {
            line: lineno,
            message,
        };
        let entry: CacheLine =
            serde_json::from_str(&line).map_err(|e| bad(format!("malformed JSON: {e}")))?;
        if entry.id != nodes.len() {
            return Err(bad(format!(
                "expected id {}, found {}",
                nodes.len(),
                entry.id
            )));
        }
        let matrix = ExchangeMatrix::from_rows(&entry.matrix).map_err(|e| bad(e.to_string()))?;
        if nodes.is_empty() {
            n = matrix.n();
        } else if matrix.n() != n {
            return Err(bad(format!("matrix has size {}, expected {n}", matrix.n())));
        }
        if entry.neighbors.len() != n {
            return Err(bad(format!(
                "{} neighbors listed, expected {n}",
                entry.neighbors.len()
            )));
        }
        let cluster = entry
            .cluster
            .iter()
            .map(|text| LaurentPoly::parse(text, n))
            .collect::<Result<Vec<_>>>()
            .map_err(|e| bad(e.to_string()))?;
        let seed = CanonicalSeed::from_parts(cluster, matrix).map_err(|e| bad(e.to_string()))?;
        nodes.push((
            lineno,
            GraphNode {
                seed,
                depth: entry.depth,
                neighbors: entry.neighbors,
            },
        ));
    }

    if let Some((lineno, root)) = nodes.first() {
        if !root.seed.is_initial() || root.depth != 0 {
            return Err(Error::Cache {
                line: *lineno,
                message: "first line must be the initial seed at depth 0".into(),
            });
        }
    }
    let count = nodes.len();
    for (lineno, node) in &nodes {
        let bad = |message: String| Error::Cache {
            line: *lineno,
            message,
        };
        let seed = node.seed.to_seed();
        for (p, target) in node.neighbors.iter().enumerate() {
            let Some(target) = *target else { continue };
            if target >= count {
                return Err(bad(format!("neighbor id {target} out of range")));
            }
            let mutated = seed
                .mutate(p)
                .map_err(|e| bad(format!("mutation at {p} failed: {e}")))?
                .canonical();
            if mutated != nodes[target].1.seed {
                return Err(bad(format!(
                    "mutation at position {p} does not produce seed {target}"
                )));
            }
        }
    }

    MutationGraph::from_nodes(n, nodes.into_iter().map(|(_, node)| node).collect()).map_err(|e| {
        Error::Cache {
            line: 0,
            message: e.to_string(),
        }
    })
}
