use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{CanonicalSeed, Seed};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::quiver::ExchangeMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExploreLimits {
    pub max_depth: usize,
    pub max_seeds: usize,
    /// Largest number of terms a single cluster variable may have.
    pub max_terms: usize,
    /// Worker threads for frontier expansion; `None` uses the global pool.
    pub threads: Option<usize>,
}

impl Default for ExploreLimits {
    fn default() -> Self {
        ExploreLimits {
            max_depth: 8,
            max_seeds: 100_000,
            max_terms: 200_000,
            threads: None,
        }
    }
}

impl ExploreLimits {
    pub fn with_depth(max_depth: usize) -> Self {
        ExploreLimits {
            max_depth,
            ..Self::default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Truncation {
    Depth,
    Seeds,
    Terms,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphNode {
    pub seed: CanonicalSeed,
    /// Mutation distance from the initial seed.
    pub depth: usize,
    /// `neighbors[p]` is the node reached by mutating at canonical position
    /// `p`, or `None` if that mutation was cut off by a limit.
    pub neighbors: Vec<Option<usize>>,
}

/// Seeds reached from the initial seed, numbered in breadth-first order.
#[derive(Clone, Debug)]
pub struct MutationGraph {
    n: usize,
    nodes: Vec<GraphNode>,
    index: HashMap<CanonicalSeed, usize>,
    truncations: BTreeSet<Truncation>,
    divisions: u64,
}

impl PartialEq for MutationGraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.nodes == other.nodes
    }
}

impl MutationGraph {
    pub fn empty(n: usize) -> Self {
        MutationGraph {
            n,
            nodes: Vec::new(),
            index: HashMap::new(),
            truncations: BTreeSet::new(),
            divisions: 0,
        }
    }

    pub(crate) fn from_nodes(n: usize, nodes: Vec<GraphNode>) -> Result<Self> {
        let mut index = HashMap::with_capacity(nodes.len());
        for (i, node) in nodes.iter().enumerate() {
            if index.insert(node.seed.clone(), i).is_some() {
                return Err(Error::Domain(format!("seed {i} is recorded twice")));
            }
        }
        Ok(MutationGraph {
            n,
            nodes,
            index,
            truncations: BTreeSet::new(),
            divisions: 0,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nodes(&self) -> &[GraphNode] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn lookup(&self, seed: &CanonicalSeed) -> Option<usize> {
        self.index.get(seed).copied()
    }

    /// Every mutation of every recorded seed lands on a recorded seed.
    pub fn is_closed(&self) -> bool {
        self.nodes
            .iter()
            .all(|node| node.neighbors.iter().all(Option::is_some))
    }

    pub fn is_truncated(&self) -> bool {
        !self.is_closed()
    }

    /// Limits that cut the exploration short (empty for reloaded graphs).
    pub fn truncations(&self) -> &BTreeSet<Truncation> {
        &self.truncations
    }

    /// Exact divisions performed while exploring.
    pub fn divisions(&self) -> u64 {
        self.divisions
    }

    pub fn depth_reached(&self) -> usize {
        self.nodes.iter().map(|n| n.depth).max().unwrap_or(0)
    }

    /// The exchange matrix of the initial seed, in the original vertex order.
    pub fn initial_matrix(&self) -> Option<ExchangeMatrix> {
        let root = self.nodes.first()?;
        let mut perm = vec![0; self.n];
        for (pos, u) in root.seed.cluster().iter().enumerate() {
            perm[super::coordinate_index(u)?] = pos;
        }
        Some(root.seed.matrix().permuted(&perm))
    }

    /// Distinct cluster variables, sorted by the cluster order.
    pub fn variables(&self) -> Vec<LaurentPoly> {
        let set: BTreeSet<&LaurentPoly> = self
            .nodes
            .iter()
            .flat_map(|n| n.seed.cluster().iter())
            .collect();
        set.into_iter().cloned().collect()
    }

    /// Distinct clusters (each a sorted list of variables).
    pub fn clusters(&self) -> BTreeSet<Vec<LaurentPoly>> {
        self.nodes
            .iter()
            .map(|n| n.seed.cluster().to_vec())
            .collect()
    }
}

/// Breadth-first exploration of the mutation graph from the initial seed of
/// `b`. Output is independent of the thread count: children are computed in
/// parallel but registered sequentially in frontier order.
pub fn explore(b: &ExchangeMatrix, limits: &ExploreLimits) -> Result<MutationGraph> {
    let root = Seed::initial(b)?;
    let n = b.n();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(limits.threads.unwrap_or(0))
        .build()
        .map_err(|e| Error::Resource(format!("thread pool: {e}")))?;

    let mut graph = MutationGraph::empty(n);
    let root = root.canonical();
    graph.index.insert(root.clone(), 0);
    graph.nodes.push(GraphNode {
        seed: root,
        depth: 0,
        neighbors: vec![None; n],
    });

    let mut frontier = vec![0usize];
    let mut depth = 0;
    while !frontier.is_empty() {
        let nodes = &graph.nodes;
        // `None` marks a child whose variables outgrew the term limit
        let expansions: Vec<Result<Vec<Option<CanonicalSeed>>>> = pool.install(|| {
            frontier
                .par_iter()
                .map(|&id| {
                    let seed = nodes[id].seed.to_seed();
                    (0..n)
                        .map(|p| match seed.mutate_bounded(p, limits.max_terms) {
                            Ok(child) => Ok(Some(child.canonical())),
                            Err(Error::Resource(_)) => Ok(None),
                            Err(e) => Err(e),
                        })
                        .collect()
                })
                .collect()
        });

        let mut next = Vec::new();
        for (&id, children) in frontier.iter().zip(expansions) {
            for (p, child) in children?.into_iter().enumerate() {
                let Some(child) = child else {
                    graph.truncations.insert(Truncation::Terms);
                    continue;
                };
                graph.divisions += 1;
                if let Some(&j) = graph.index.get(&child) {
                    graph.nodes[id].neighbors[p] = Some(j);
                    continue;
                }
                let cut = if depth >= limits.max_depth {
                    Some(Truncation::Depth)
                } else if graph.nodes.len() >= limits.max_seeds {
                    Some(Truncation::Seeds)
                } else if child.cluster().iter().any(|u| u.len() > limits.max_terms) {
                    Some(Truncation::Terms)
                } else {
                    None
                };
                if let Some(reason) = cut {
                    graph.truncations.insert(reason);
                    continue;
                }
                let j = graph.nodes.len();
                graph.index.insert(child.clone(), j);
                graph.nodes.push(GraphNode {
                    seed: child,
                    depth: depth + 1,
                    neighbors: vec![None; n],
                });
                graph.nodes[id].neighbors[p] = Some(j);
                next.push(j);
            }
        }
        frontier = next;
        depth += 1;
    }
    Ok(graph)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::examples::*;

    #[test]
    fn a2_closes_with_five_seeds() {
        let g = explore(&linear_a(2), &ExploreLimits::default()).unwrap();
        assert!(g.is_closed());
        assert_eq!(g.len(), 5);
        assert_eq!(g.clusters().len(), 5);
        let vars: BTreeSet<String> = g.variables().iter().map(|v| v.to_string()).collect();
        let expected: BTreeSet<String> = [
            "x1",
            "x2",
            "x1^-1 + x1^-1*x2",
            "x1^-1*x2^-1 + x1^-1 + x2^-1",
            "x2^-1 + x1*x2^-1",
        ]
        .into_iter()
        .map(String::from)
        .collect();
        assert_eq!(vars, expected);
        assert_eq!(g.initial_matrix().unwrap(), linear_a(2));
    }

    #[test]
    fn a3_closes_with_fourteen_clusters() {
        let g = explore(&linear_a(3), &ExploreLimits::default()).unwrap();
        assert!(g.is_closed());
        assert_eq!(g.clusters().len(), 14);
        assert_eq!(g.variables().len(), 9);
    }

    #[test]
    fn kronecker_truncates_without_division_failures() {
        let g = explore(&kronecker(), &ExploreLimits::with_depth(6)).unwrap();
        assert!(g.is_truncated());
        assert!(g.truncations().contains(&Truncation::Depth));
        // the exchange graph of the Kronecker quiver is a bi-infinite path
        assert_eq!(g.len(), 13);
        assert_eq!(g.depth_reached(), 6);
    }

    #[test]
    fn seed_and_term_limits() {
        let g = explore(
            &kronecker(),
            &ExploreLimits {
                max_seeds: 4,
                ..ExploreLimits::default()
            },
        )
        .unwrap();
        assert_eq!(g.len(), 4);
        assert!(g.truncations().contains(&Truncation::Seeds));

        let g = explore(
            &kronecker(),
            &ExploreLimits {
                max_terms: 3,
                ..ExploreLimits::default()
            },
        )
        .unwrap();
        assert!(g.truncations().contains(&Truncation::Terms));
        assert!(g.variables().iter().all(|v| v.len() <= 3));
    }

    #[test]
    fn thread_count_does_not_change_the_graph() {
        let one = explore(
            &d4(),
            &ExploreLimits {
                threads: Some(1),
                ..ExploreLimits::default()
            },
        )
        .unwrap();
        let four = explore(
            &d4(),
            &ExploreLimits {
                threads: Some(4),
                max_depth: 40,
                ..ExploreLimits::default()
            },
        )
        .unwrap();
        assert_eq!(one, four);
    }

    #[test]
    fn cyclic_input_is_rejected() {
        let cyc = linear_a(3).mutate(1).unwrap();
        assert!(explore(&cyc, &ExploreLimits::default()).is_err());
    }
}
