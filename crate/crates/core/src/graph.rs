//! Undirected multigraphs with exact edge lengths and integer capacities.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::scalar::{Extended, Scalar};

/// Shortest-path distance; `Infinite` between disconnected vertices.
pub type Distance<S> = Extended<S>;

#[derive(Clone, Debug, PartialEq)]
pub struct Edge<S> {
    pub u: usize,
    pub v: usize,
    pub length: S,
    pub capacity: u64,
}

impl<S> Edge<S> {
    pub fn new(u: usize, v: usize, length: S, capacity: u64) -> Self {
        Edge {
            u,
            v,
            length,
            capacity,
        }
    }

    /// The endpoint opposite `x`.
    pub fn other(&self, x: usize) -> usize {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }
}

/// Undirected multigraph on vertices `0..n`.
///
/// Edge ids are positions in the construction order. Parallel edges are kept
/// distinct; self-loops are rejected. Values are immutable: operations that
/// change lengths (such as applying a cut) build a new graph.
#[derive(Clone, Debug, PartialEq)]
pub struct Graph<S> {
    n: usize,
    edges: Vec<Edge<S>>,
    // (neighbor, edge id), in ascending edge id
    adjacency: Vec<Vec<(usize, usize)>>,
}

impl<S: Scalar> Graph<S> {
    pub fn new(n: usize, edges: Vec<Edge<S>>) -> Result<Self> {
        let mut adjacency = vec![Vec::new(); n];
        for (id, e) in edges.iter().enumerate() {
            if e.u >= n || e.v >= n {
                return Err(Error::arg(format!(
                    "edge {id} ({}, {}) references a vertex outside 0..{n}",
                    e.u, e.v
                )));
            }
            if e.u == e.v {
                return Err(Error::arg(format!("edge {id} is a self-loop at {}", e.u)));
            }
            if e.length.is_negative() || e.length.partial_cmp(&S::zero()).is_none() {
                return Err(Error::arg(format!("edge {id} has a negative length")));
            }
            if e.capacity == 0 {
                return Err(Error::arg(format!("edge {id} has zero capacity")));
            }
            adjacency[e.u].push((e.v, id));
            adjacency[e.v].push((e.u, id));
        }
        Ok(Graph {
            n,
            edges,
            adjacency,
        })
    }

    /// Unit lengths and unit capacities.
    pub fn from_unit_edges(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let edges = pairs
            .iter()
            .map(|&(u, v)| Edge::new(u, v, S::one(), 1))
            .collect();
        Graph::new(n, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge<S>] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> &Edge<S> {
        &self.edges[id]
    }

    /// `(neighbor, edge id)` pairs incident to `v`.
    pub fn incident(&self, v: usize) -> &[(usize, usize)] {
        &self.adjacency[v]
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::arg(format!("vertex {v} outside 0..{}", self.n)))
        }
    }

    /// Same topology and capacities, new per-edge lengths.
    pub fn with_lengths(&self, lengths: Vec<S>) -> Result<Self> {
        if lengths.len() != self.edges.len() {
            return Err(Error::arg(format!(
                "expected {} lengths, got {}",
                self.edges.len(),
                lengths.len()
            )));
        }
        let edges = self
            .edges
            .iter()
            .zip(lengths)
            .map(|(e, length)| Edge::new(e.u, e.v, length, e.capacity))
            .collect();
        Graph::new(self.n, edges)
    }

    /// Capacity-weighted degree.
    pub fn degree(&self, v: usize) -> u64 {
        self.adjacency[v]
            .iter()
            .map(|&(_, id)| self.edges[id].capacity)
            .sum()
    }

    pub fn degree_weighting(&self) -> NodeWeighting {
        NodeWeighting {
            weights: (0..self.n).map(|v| self.degree(v)).collect(),
        }
    }

    /// Single-source distances (Dijkstra over exact lengths).
    pub fn distances_from(&self, source: usize) -> Result<Vec<Distance<S>>> {
        self.check_vertex(source)?;
        let mut dist: Vec<Distance<S>> = vec![Extended::Infinite; self.n];
        let mut settled = vec![false; self.n];
        let mut heap = BinaryHeap::new();
        dist[source] = Extended::Finite(S::zero());
        heap.push(Frontier {
            dist: S::zero(),
            vertex: source,
        });
        while let Some(Frontier { dist: d, vertex }) = heap.pop() {
            if settled[vertex] {
                continue;
            }
            settled[vertex] = true;
            for &(next, id) in &self.adjacency[vertex] {
                if settled[next] {
                    continue;
                }
                let candidate = d.clone() + self.edges[id].length.clone();
                let improves = match &dist[next] {
                    Extended::Finite(cur) => candidate < *cur,
                    Extended::Infinite => true,
                };
                if improves {
                    dist[next] = Extended::Finite(candidate.clone());
                    heap.push(Frontier {
                        dist: candidate,
                        vertex: next,
                    });
                }
            }
        }
        Ok(dist)
    }

    pub fn distance(&self, u: usize, v: usize) -> Result<Distance<S>> {
        self.check_vertex(v)?;
        Ok(self.distances_from(u)?.swap_remove(v))
    }

    /// `n` Dijkstra runs; row `u` holds distances from `u`.
    pub fn all_pairs_distances(&self) -> Vec<Vec<Distance<S>>> {
        (0..self.n)
            .map(|u| self.distances_from(u).expect("vertex in range"))
            .collect()
    }

    /// Vertices within `radius` of `center`, ascending.
    pub fn ball(&self, center: usize, radius: &S) -> Result<Vec<usize>> {
        if radius.is_negative() {
            return Err(Error::arg("ball radius must be non-negative"));
        }
        let dist = self.distances_from(center)?;
        Ok((0..self.n).filter(|&v| dist[v].at_most(radius)).collect())
    }
}

struct Frontier<S> {
    dist: S,
    vertex: usize,
}

impl<S: PartialOrd> PartialEq for Frontier<S> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<S: PartialOrd> Eq for Frontier<S> {}

impl<S: PartialOrd> PartialOrd for Frontier<S> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<S: PartialOrd> Ord for Frontier<S> {
    // min-heap on distance
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .partial_cmp(&self.dist)
            .unwrap_or(Ordering::Equal)
            .then_with(|| other.vertex.cmp(&self.vertex))
    }
}

/// Per-vertex non-negative integer weights bounded by capacity-weighted degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeWeighting {
    weights: Vec<u64>,
}

impl NodeWeighting {
    pub fn new<S: Scalar>(graph: &Graph<S>, weights: Vec<u64>) -> Result<Self> {
        if weights.len() != graph.vertex_count() {
            return Err(Error::arg(format!(
                "node-weighting has {} entries for {} vertices",
                weights.len(),
                graph.vertex_count()
            )));
        }
        for (v, &w) in weights.iter().enumerate() {
            let deg = graph.degree(v);
            if w > deg {
                return Err(Error::arg(format!(
                    "weight {w} at vertex {v} exceeds its degree {deg}"
                )));
            }
        }
        Ok(NodeWeighting { weights })
    }

    pub fn get(&self, v: usize) -> u64 {
        self.weights[v]
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// `|A|`
    pub fn total(&self) -> u64 {
        self.weights.iter().sum()
    }
}
