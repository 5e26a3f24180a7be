//! Arboricity and forest covers.
//!
//! The exact value comes from Nash-Williams: `α = max_U ⌈|E(U)| / (|U| − 1)⌉`.
//! Feasibility of a candidate `α` is decided by a max-density flow; the
//! candidate is binary searched between a component density lower bound and
//! the size of a constructive forest cover.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::flow::{FlowNetwork, UNBOUNDED};
use crate::graph::Graph;
use crate::parallel_greedy::{power_bound_ratio, within_power_bound, MatchingSequence};
use crate::scalar::Scalar;
use crate::Rational;

/// Edge list on `0..n` without self-loops; parallel edges allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeList {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl EdgeList {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        for (id, &(u, v)) in edges.iter().enumerate() {
            if u >= n || v >= n || u == v {
                return Err(Error::arg(format!("edge {id} ({u}, {v}) is not a valid non-loop edge")));
            }
        }
        Ok(EdgeList { n, edges })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }
}

impl From<&MatchingSequence> for EdgeList {
    fn from(seq: &MatchingSequence) -> Self {
        EdgeList {
            n: seq.vertex_count(),
            edges: seq.edges().iter().map(|e| (e.u, e.v)).collect(),
        }
    }
}

impl<S: Scalar> From<&Graph<S>> for EdgeList {
    fn from(g: &Graph<S>) -> Self {
        EdgeList {
            n: g.vertex_count(),
            edges: g.edges().iter().map(|e| (e.u, e.v)).collect(),
        }
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut x = x;
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

/// Edge-disjoint forests covering every edge; each forest lists edge ids in
/// ascending order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ForestCover {
    pub forests: Vec<Vec<usize>>,
}

impl ForestCover {
    pub fn len(&self) -> usize {
        self.forests.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forests.is_empty()
    }

    /// Structural recheck: disjoint, covering, and acyclic.
    pub fn validate(&self, g: &EdgeList) -> Result<()> {
        let mut owner = vec![None; g.edge_count()];
        for (f, forest) in self.forests.iter().enumerate() {
            let mut uf = UnionFind::new(g.n);
            for &id in forest {
                let &(u, v) = g
                    .edges
                    .get(id)
                    .ok_or_else(|| Error::Structure(format!("forest {f} lists unknown edge {id}")))?;
                if let Some(prev) = owner[id].replace(f) {
                    return Err(Error::Structure(format!(
                        "edge {id} appears in forests {prev} and {f}"
                    )));
                }
                if !uf.union(u, v) {
                    return Err(Error::Structure(format!("forest {f} contains a cycle through edge {id}")));
                }
            }
        }
        match owner.iter().position(Option::is_none) {
            Some(id) => Err(Error::Structure(format!("edge {id} is not covered"))),
            None => Ok(()),
        }
    }

    /// Connected components (with at least one edge) of every forest, as
    /// `(sorted vertices, edge ids)`.
    pub fn trees(&self, g: &EdgeList) -> Vec<(Vec<usize>, Vec<usize>)> {
        let mut trees = Vec::new();
        for forest in &self.forests {
            let mut uf = UnionFind::new(g.n);
            for &id in forest {
                let (u, v) = g.edges[id];
                uf.union(u, v);
            }
            let mut groups: BTreeMap<usize, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
            for &id in forest {
                let (u, v) = g.edges[id];
                let entry = groups.entry(uf.find(u)).or_default();
                entry.0.push(u);
                entry.0.push(v);
                entry.1.push(id);
            }
            for (_, (mut vertices, edges)) in groups {
                vertices.sort_unstable();
                vertices.dedup();
                trees.push((vertices, edges));
            }
        }
        trees
    }

    /// One line per forest with its edge ids separated by spaces.
    pub fn dump(&self) -> String {
        self.forests
            .iter()
            .map(|f| {
                let ids: Vec<String> = f.iter().map(usize::to_string).collect();
                ids.join(" ") + "\n"
            })
            .collect()
    }
}

/// Repeatedly extract a maximal spanning forest of the remaining edges.
pub fn peeling_cover(g: &EdgeList) -> ForestCover {
    let mut remaining: Vec<usize> = (0..g.edge_count()).collect();
    let mut forests = Vec::new();
    while !remaining.is_empty() {
        let mut uf = UnionFind::new(g.n);
        let mut forest = Vec::new();
        let mut rest = Vec::new();
        for id in remaining {
            let (u, v) = g.edges[id];
            if uf.union(u, v) {
                forest.push(id);
            } else {
                rest.push(id);
            }
        }
        forests.push(forest);
        remaining = rest;
    }
    ForestCover { forests }
}

/// Smallest-last order; returns the order and the degeneracy.
pub fn degeneracy_order(g: &EdgeList) -> (Vec<usize>, usize) {
    let mut incident = vec![Vec::new(); g.n];
    for (id, &(u, v)) in g.edges.iter().enumerate() {
        incident[u].push(id);
        incident[v].push(id);
    }
    let mut degree: Vec<usize> = incident.iter().map(Vec::len).collect();
    let mut removed = vec![false; g.n];
    let mut order = Vec::with_capacity(g.n);
    let mut degeneracy = 0;
    for _ in 0..g.n {
        let v = (0..g.n)
            .filter(|&v| !removed[v])
            .min_by_key(|&v| (degree[v], v))
            .expect("a vertex remains");
        degeneracy = degeneracy.max(degree[v]);
        removed[v] = true;
        order.push(v);
        for &id in &incident[v] {
            let (a, b) = g.edges[id];
            let w = if a == v { b } else { a };
            if !removed[w] {
                degree[w] -= 1;
            }
        }
    }
    (order, degeneracy)
}

/// Cover with at most `degeneracy` forests: each vertex hands its edges to
/// later vertices of the smallest-last order out to distinct forests.
pub fn degeneracy_cover(g: &EdgeList) -> ForestCover {
    let (order, degeneracy) = degeneracy_order(g);
    let mut position = vec![0; g.n];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    let mut next_slot = vec![0usize; g.n];
    let mut forests = vec![Vec::new(); degeneracy];
    for (id, &(u, v)) in g.edges.iter().enumerate() {
        let owner = if position[u] < position[v] { u } else { v };
        forests[next_slot[owner]].push(id);
        next_slot[owner] += 1;
    }
    forests.retain(|f| !f.is_empty());
    ForestCover { forests }
}

/// Valid forest cover of size at most `2α − 1` (for `α ≥ 1`): the smaller
/// of the peeling and degeneracy constructions, peeling on ties.
pub fn forest_cover(g: &EdgeList) -> ForestCover {
    let peeled = peeling_cover(g);
    let ordered = degeneracy_cover(g);
    if ordered.len() < peeled.len() {
        ordered
    } else {
        peeled
    }
}

/// `max_c ⌈m_c / (n_c − 1)⌉` over connected components.
fn component_lower_bound(g: &EdgeList) -> u64 {
    let mut uf = UnionFind::new(g.n);
    for &(u, v) in &g.edges {
        uf.union(u, v);
    }
    let mut vertices: BTreeMap<usize, u64> = BTreeMap::new();
    let mut edges: BTreeMap<usize, u64> = BTreeMap::new();
    for v in 0..g.n {
        *vertices.entry(uf.find(v)).or_default() += 1;
    }
    for &(u, _) in &g.edges {
        *edges.entry(uf.find(u)).or_default() += 1;
    }
    edges
        .iter()
        .map(|(root, &m)| m.div_ceil(vertices[root] - 1))
        .max()
        .unwrap_or(0)
}

/// Is `|E(U)| ≤ α(|U| − 1)` for every `U` with `|U| ≥ 2`?
fn density_feasible(g: &EdgeList, alpha: u64) -> bool {
    let mut multiplicity: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    for &(u, v) in &g.edges {
        *multiplicity.entry((u.min(v), u.max(v))).or_default() += 1;
    }
    if multiplicity.values().any(|&c| c > alpha) {
        return false;
    }
    // A minimal violating set with ≥ 3 vertices has minimum degree > α, so
    // it survives peeling down to the (α+1)-core.
    let mut alive = vec![true; g.n];
    let mut degree = vec![0u64; g.n];
    for &(u, v) in &g.edges {
        degree[u] += 1;
        degree[v] += 1;
    }
    let mut incident = vec![Vec::new(); g.n];
    for &(u, v) in &g.edges {
        incident[u].push(v);
        incident[v].push(u);
    }
    let mut stack: Vec<usize> = (0..g.n).filter(|&v| degree[v] <= alpha).collect();
    while let Some(v) = stack.pop() {
        if !alive[v] {
            continue;
        }
        alive[v] = false;
        for &w in &incident[v] {
            if alive[w] {
                degree[w] -= 1;
                if degree[w] == alpha {
                    stack.push(w);
                }
            }
        }
    }
    let core: Vec<usize> = (0..g.n).filter(|&v| alive[v]).collect();
    if core.is_empty() {
        return true;
    }
    // For each root r (in order, earlier roots excluded): maximize
    // |E(U)| − α|U \ {r}| over U ⊆ remaining core via max closure.
    let mut active = alive;
    for &root in &core {
        let edges: Vec<(usize, usize)> = g
            .edges
            .iter()
            .copied()
            .filter(|&(u, v)| active[u] && active[v])
            .collect();
        if edges.is_empty() {
            break;
        }
        let source = 0;
        let sink = 1;
        let vertex_node = |v: usize| 2 + v;
        let mut net = FlowNetwork::new(2 + g.n + edges.len());
        for (i, &(u, v)) in edges.iter().enumerate() {
            let node = 2 + g.n + i;
            net.add_arc(source, node, 1);
            net.add_arc(node, vertex_node(u), UNBOUNDED);
            net.add_arc(node, vertex_node(v), UNBOUNDED);
        }
        for v in (0..g.n).filter(|&v| active[v] && v != root) {
            net.add_arc(vertex_node(v), sink, alpha);
        }
        let cut = net.max_flow(source, sink);
        if (edges.len() as u64) > cut {
            return false;
        }
        active[root] = false;
    }
    true
}

/// Exact arboricity; `0` for an edgeless graph.
pub fn arboricity_exact(g: &EdgeList) -> u64 {
    if g.edges.is_empty() {
        return 0;
    }
    let mut lo = component_lower_bound(g).max(1);
    let mut hi = forest_cover(g).len() as u64;
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if density_feasible(g, mid) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    lo
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ArboricityBoundCheck {
    pub arboricity: u64,
    /// `α ≤ c·s·n^{2/s}`
    pub holds: bool,
    /// `2m/n ≤ c·s·n^{2/s}`
    pub average_degree_holds: bool,
    /// `α / (s·n^{2/s})`, reporting only.
    pub ratio: f64,
    pub degree_ratio: f64,
}

/// Compares the exact arboricity of the union graph against `c·s·n^{2/s}`
/// in integer arithmetic. For odd `s` the exponent uses `s` as given.
pub fn check_pg_arboricity_bound(
    seq: &MatchingSequence,
    s: usize,
    constant: &Rational,
) -> Result<ArboricityBoundCheck> {
    if s < 2 {
        return Err(Error::arg("parallel-greedy parameter s must be at least 2"));
    }
    let g = EdgeList::from(seq);
    let n = g.vertex_count();
    let alpha = arboricity_exact(&g);
    let alpha_r = Rational::from_integer(BigInt::from(alpha));
    let degree = if n == 0 {
        Rational::from_integer(BigInt::from(0))
    } else {
        Rational::new(BigInt::from(2 * g.edge_count()), BigInt::from(n))
    };
    Ok(ArboricityBoundCheck {
        arboricity: alpha,
        holds: within_power_bound(&alpha_r, s, n, constant),
        average_degree_holds: within_power_bound(&degree, s, n, constant),
        ratio: power_bound_ratio(&alpha_r, s, n),
        degree_ratio: power_bound_ratio(&degree, s, n),
    })
}
