//! s-parallel-greedy graphs: matching sequences whose every matched pair was
//! more than `s` hops apart in the union of the earlier matchings.
//!
//! Matching indices are 0-based in code (`M_1` is index 0). Edge ids number
//! the edges matching by matching, in the order each matching lists them.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::scalar::Scalar;
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndexedEdge {
    pub u: usize,
    pub v: usize,
    pub matching: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingSequence {
    n: usize,
    matchings: Vec<Vec<(usize, usize)>>,
}

impl MatchingSequence {
    /// Validates that each matching is a matching on `0..n` and that the
    /// matchings are pairwise edge-disjoint. Pairs are stored as `(min, max)`.
    /// Empty matchings are accepted.
    pub fn new(n: usize, matchings: Vec<Vec<(usize, usize)>>) -> Result<Self> {
        let mut seen_edges = BTreeSet::new();
        let mut normalized = Vec::with_capacity(matchings.len());
        for (i, matching) in matchings.into_iter().enumerate() {
            let mut used = BTreeSet::new();
            let mut edges = Vec::with_capacity(matching.len());
            for (u, v) in matching {
                if u >= n || v >= n {
                    return Err(Error::Structure(format!(
                        "matching {} edge ({u}, {v}) leaves 0..{n}",
                        i + 1
                    )));
                }
                if u == v {
                    return Err(Error::Structure(format!(
                        "matching {} has a self-loop at {u}",
                        i + 1
                    )));
                }
                for x in [u, v] {
                    if !used.insert(x) {
                        return Err(Error::Structure(format!(
                            "matching {} uses vertex {x} twice",
                            i + 1
                        )));
                    }
                }
                let edge = (u.min(v), u.max(v));
                if !seen_edges.insert(edge) {
                    return Err(Error::Structure(format!(
                        "edge {edge:?} appears in more than one matching"
                    )));
                }
                edges.push(edge);
            }
            normalized.push(edges);
        }
        Ok(MatchingSequence {
            n,
            matchings: normalized,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// `k`
    pub fn matching_count(&self) -> usize {
        self.matchings.len()
    }

    /// `m`
    pub fn edge_count(&self) -> usize {
        self.matchings.iter().map(Vec::len).sum()
    }

    pub fn matchings(&self) -> &[Vec<(usize, usize)>] {
        &self.matchings
    }

    /// All edges in edge-id order.
    pub fn edges(&self) -> Vec<IndexedEdge> {
        self.matchings
            .iter()
            .enumerate()
            .flat_map(|(i, m)| m.iter().map(move |&(u, v)| IndexedEdge { u, v, matching: i }))
            .collect()
    }

    /// Union graph adjacency: `(neighbor, matching index, edge id)`, sorted
    /// by matching index.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize, usize)>> {
        let mut adj = vec![Vec::new(); self.n];
        for (id, e) in self.edges().into_iter().enumerate() {
            adj[e.u].push((e.v, e.matching, id));
            adj[e.v].push((e.u, e.matching, id));
        }
        adj
    }

    /// The union graph with unit lengths and capacities, edges in id order.
    pub fn union_graph<S: Scalar>(&self) -> Graph<S> {
        let pairs: Vec<_> = self.edges().iter().map(|e| (e.u, e.v)).collect();
        Graph::from_unit_edges(self.n, &pairs).expect("validated matchings form a simple graph")
    }

    /// Drops the given edge ids, keeping every matching (possibly empty).
    pub fn without_edges(&self, removed: &BTreeSet<usize>) -> MatchingSequence {
        let mut id = 0;
        let matchings = self
            .matchings
            .iter()
            .map(|m| {
                m.iter()
                    .filter(|_| {
                        let keep = !removed.contains(&id);
                        id += 1;
                        keep
                    })
                    .copied()
                    .collect()
            })
            .collect();
        MatchingSequence {
            n: self.n,
            matchings,
        }
    }
}

/// Unit-length distance from `from` to `to` if it is at most `limit`.
fn bounded_distance(
    adj: &[Vec<usize>],
    from: usize,
    to: usize,
    limit: usize,
    depth: &mut [usize],
    touched: &mut Vec<usize>,
) -> Option<usize> {
    if from == to {
        return Some(0);
    }
    let mut queue = VecDeque::from([from]);
    depth[from] = 0;
    touched.push(from);
    let mut found = None;
    'search: while let Some(x) = queue.pop_front() {
        if depth[x] == limit {
            continue;
        }
        for &y in &adj[x] {
            if depth[y] == usize::MAX {
                depth[y] = depth[x] + 1;
                touched.push(y);
                if y == to {
                    found = Some(depth[y]);
                    break 'search;
                }
                queue.push_back(y);
            }
        }
    }
    for x in touched.drain(..) {
        depth[x] = usize::MAX;
    }
    found
}

/// A matched pair that was too close in the union of earlier matchings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FarEndpointViolation {
    /// 0-based matching index.
    pub matching: usize,
    pub edge: (usize, usize),
    pub distance: usize,
}

/// `None` when the sequence is s-parallel-greedy, otherwise the first
/// offending edge (lowest matching index, then listing order).
pub fn verify_parallel_greedy(
    seq: &MatchingSequence,
    s: usize,
) -> Result<Option<FarEndpointViolation>> {
    if s < 2 {
        return Err(Error::arg("parallel-greedy parameter s must be at least 2"));
    }
    let mut adj = vec![Vec::new(); seq.n];
    let mut depth = vec![usize::MAX; seq.n];
    let mut touched = Vec::new();
    for (i, matching) in seq.matchings.iter().enumerate() {
        for &(u, v) in matching {
            if let Some(d) = bounded_distance(&adj, u, v, s, &mut depth, &mut touched) {
                return Ok(Some(FarEndpointViolation {
                    matching: i,
                    edge: (u, v),
                    distance: d,
                }));
            }
        }
        for &(u, v) in matching {
            adj[u].push(v);
            adj[v].push(u);
        }
    }
    Ok(None)
}

/// Random s-parallel-greedy instance.
///
/// Each round collects every pair at unit distance `> s` in the current
/// union, shuffles them uniformly and adds a greedy maximal matching. Stops
/// after `rounds` matchings or when no far pair remains.
pub fn generate_parallel_greedy(
    n: usize,
    s: usize,
    rounds: usize,
    seed: u64,
) -> Result<MatchingSequence> {
    if n < 2 || s < 2 || rounds < 1 {
        return Err(Error::arg("generator needs n ≥ 2, s ≥ 2 and rounds ≥ 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut matchings = Vec::new();
    let mut reach = vec![usize::MAX; n];
    for _ in 0..rounds {
        let mut far = Vec::new();
        for u in 0..n {
            // vertices within s hops of u
            let mut queue = VecDeque::from([u]);
            let mut touched = vec![u];
            reach[u] = 0;
            while let Some(x) = queue.pop_front() {
                if reach[x] == s {
                    continue;
                }
                for &y in &adj[x] {
                    if reach[y] == usize::MAX {
                        reach[y] = reach[x] + 1;
                        touched.push(y);
                        queue.push_back(y);
                    }
                }
            }
            far.extend(((u + 1)..n).filter(|&v| reach[v] == usize::MAX).map(|v| (u, v)));
            for x in touched {
                reach[x] = usize::MAX;
            }
        }
        if far.is_empty() {
            break;
        }
        far.shuffle(&mut rng);
        let mut used = vec![false; n];
        let mut matching = Vec::new();
        for (u, v) in far {
            if !used[u] && !used[v] {
                used[u] = true;
                used[v] = true;
                matching.push((u, v));
            }
        }
        matching.sort_unstable();
        for &(u, v) in &matching {
            adj[u].push(v);
            adj[v].push(u);
        }
        matchings.push(matching);
    }
    MatchingSequence::new(n, matchings)
}

/// `⌈s/2⌉`: the path length the dispersion argument works with.
pub fn half_length(s: usize) -> usize {
    s.div_ceil(2)
}

fn walk_monotonic(
    adj: &[Vec<(usize, usize, usize)>],
    start: usize,
    length: usize,
    mut visit: impl FnMut(usize),
) {
    fn extend(
        adj: &[Vec<(usize, usize, usize)>],
        at: usize,
        after: Option<usize>,
        remaining: usize,
        on_path: &mut Vec<bool>,
        visit: &mut impl FnMut(usize),
    ) {
        if remaining == 0 {
            visit(at);
            return;
        }
        let edges = &adj[at];
        let first = match after {
            Some(i) => edges.partition_point(|&(_, idx, _)| idx <= i),
            None => 0,
        };
        for &(next, idx, _) in &edges[first..] {
            if on_path[next] {
                continue;
            }
            on_path[next] = true;
            extend(adj, next, Some(idx), remaining - 1, on_path, visit);
            on_path[next] = false;
        }
    }
    let mut on_path = vec![false; adj.len()];
    on_path[start] = true;
    extend(adj, start, None, length, &mut on_path, &mut visit);
}

/// Number of monotonic simple paths with exactly `length` edges, keyed by
/// ordered `(first vertex, last vertex)`.
pub fn enumerate_monotonic_paths(
    seq: &MatchingSequence,
    length: usize,
) -> Result<BTreeMap<(usize, usize), u64>> {
    if length == 0 {
        return Err(Error::arg("monotonic path length must be at least 1"));
    }
    let adj = seq.adjacency();
    let mut counts = BTreeMap::new();
    for start in 0..seq.n {
        walk_monotonic(&adj, start, length, |end| {
            *counts.entry((start, end)).or_insert(0) += 1;
        });
    }
    Ok(counts)
}

/// Total number of monotonic simple paths with exactly `length` edges
/// (each path counted once, from its lower-index end).
pub fn count_monotonic_paths(seq: &MatchingSequence, length: usize) -> Result<u64> {
    if length == 0 {
        return Err(Error::arg("monotonic path length must be at least 1"));
    }
    let adj = seq.adjacency();
    let mut total = 0;
    for start in 0..seq.n {
        walk_monotonic(&adj, start, length, |_| total += 1);
    }
    Ok(total)
}

/// An ordered pair joined by more than one monotonic `⌈s/2⌉`-path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DispersionViolation {
    pub from: usize,
    pub to: usize,
    pub paths: u64,
}

pub fn check_dispersion(seq: &MatchingSequence, s: usize) -> Result<Option<DispersionViolation>> {
    if s < 2 {
        return Err(Error::arg("parallel-greedy parameter s must be at least 2"));
    }
    let counts = enumerate_monotonic_paths(seq, half_length(s))?;
    Ok(counts
        .into_iter()
        .find(|&(_, c)| c >= 2)
        .map(|((from, to), paths)| DispersionViolation { from, to, paths }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleCheck {
    /// Cycles with at most `s + 1` edges, each counted once.
    pub cycles: u64,
    /// Vertices of the first cycle whose top matching contributes one edge.
    pub violation: Option<Vec<usize>>,
}

/// Checks that every cycle with at most `s + 1` edges has at least two edges
/// from the highest-indexed matching it touches.
///
/// Enumeration roots each cycle at its smallest vertex and only walks through
/// larger vertices; `budget` caps the number of search steps.
pub fn check_cycle_property(seq: &MatchingSequence, s: usize, budget: u64) -> Result<CycleCheck> {
    if s < 2 {
        return Err(Error::arg("parallel-greedy parameter s must be at least 2"));
    }
    let max_edges = s + 1;
    let adj = seq.adjacency();
    let n = seq.n;
    let mut steps = 0u64;
    let mut cycles = 0u64;
    let mut dist = vec![usize::MAX; n];

    struct Search<'a> {
        adj: &'a [Vec<(usize, usize, usize)>],
        root: usize,
        max_edges: usize,
        dist: &'a [usize],
        path: Vec<usize>,
        indices: Vec<usize>,
        on_path: Vec<bool>,
        steps: &'a mut u64,
        budget: u64,
        cycles: &'a mut u64,
        violation: Option<Vec<usize>>,
    }

    impl Search<'_> {
        fn grow(&mut self, at: usize) -> Result<()> {
            *self.steps += 1;
            if *self.steps > self.budget {
                return Err(Error::Budget {
                    what: format!("enumerating cycles of at most {} edges", self.max_edges),
                    bound: self.budget,
                });
            }
            let len = self.indices.len();
            for &(next, idx, _) in &self.adj[at] {
                if next == self.root && len >= 2 {
                    // count each cycle in one direction only
                    if self.path[1] < at {
                        *self.cycles += 1;
                        if self.violation.is_none() {
                            let top = self.indices.iter().copied().chain([idx]).max().unwrap();
                            let hits = self.indices.iter().chain([&idx]).filter(|&&i| i == top).count();
                            if hits < 2 {
                                self.violation = Some(self.path.clone());
                            }
                        }
                    }
                    continue;
                }
                if next <= self.root || self.on_path[next] {
                    continue;
                }
                if len + 1 + self.dist[next] > self.max_edges {
                    continue;
                }
                self.on_path[next] = true;
                self.path.push(next);
                self.indices.push(idx);
                self.grow(next)?;
                self.indices.pop();
                self.path.pop();
                self.on_path[next] = false;
            }
            Ok(())
        }
    }

    let mut violation = None;
    for root in 0..n {
        // hop distances back to root through vertices ≥ root
        dist.fill(usize::MAX);
        dist[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            for &(y, _, _) in &adj[x] {
                if y > root && dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        let mut on_path = vec![false; n];
        on_path[root] = true;
        let mut search = Search {
            adj: &adj,
            root,
            max_edges,
            dist: &dist,
            path: vec![root],
            indices: Vec::new(),
            on_path,
            steps: &mut steps,
            budget,
            cycles: &mut cycles,
            violation: None,
        };
        search.grow(root)?;
        if violation.is_none() {
            violation = search.violation;
        }
    }
    Ok(CycleCheck { cycles, violation })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HikerWalk {
    pub start: usize,
    /// Visited vertices, starting with `start`.
    pub vertices: Vec<usize>,
    /// Traversed edge ids.
    pub edges: Vec<usize>,
    /// Matching index of each traversed edge.
    pub matchings: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HikerReport {
    /// One walk per hiker, indexed by starting vertex.
    pub walks: Vec<HikerWalk>,
    pub longest: usize,
    pub total_edges: usize,
}

/// One hiker per vertex; for each matching in order, the two hikers standing
/// on the ends of every matched edge swap places across it.
pub fn hiker_walk(seq: &MatchingSequence) -> HikerReport {
    let n = seq.n;
    let mut walks: Vec<HikerWalk> = (0..n)
        .map(|v| HikerWalk {
            start: v,
            vertices: vec![v],
            edges: Vec::new(),
            matchings: Vec::new(),
        })
        .collect();
    // occupant[vertex] = hiker
    let mut occupant: Vec<usize> = (0..n).collect();
    let mut id = 0;
    for (i, matching) in seq.matchings.iter().enumerate() {
        for &(x, y) in matching {
            let (hx, hy) = (occupant[x], occupant[y]);
            for (hiker, to) in [(hx, y), (hy, x)] {
                let w = &mut walks[hiker];
                w.vertices.push(to);
                w.edges.push(id);
                w.matchings.push(i);
            }
            occupant.swap(x, y);
            id += 1;
        }
    }
    let longest = walks.iter().map(|w| w.edges.len()).max().unwrap_or(0);
    let total_edges = walks.iter().map(|w| w.edges.len()).sum();
    HikerReport {
        walks,
        longest,
        total_edges,
    }
}

impl HikerWalk {
    pub fn is_monotonic(&self) -> bool {
        self.matchings.windows(2).all(|w| w[0] < w[1])
    }

    /// Every run of at most `window` consecutive edges visits distinct vertices.
    pub fn windows_are_simple(&self, window: usize) -> bool {
        let len = self.vertices.len();
        (0..len).all(|i| {
            let end = (i + window + 1).min(len);
            let slice = &self.vertices[i..end];
            let distinct: BTreeSet<_> = slice.iter().collect();
            distinct.len() == slice.len()
        })
    }
}

/// Outcome of checking the full counting statement on one instance.
#[derive(Clone, Debug, PartialEq)]
pub struct CountingCheck {
    /// Average degree reaches `2⌈s/2⌉`.
    pub applicable: bool,
    pub paths: u64,
    /// Whether `paths ≥ n·(d/(c·s'))^L` with `L = ⌈s/2⌉`, `s' = 2L`.
    pub holds: bool,
    /// Smallest constant that would make the bound hold (`0` if no paths
    /// are needed, infinite if there are none).
    pub required_constant: f64,
}

/// Exact check of `paths ≥ n·(d/(c·s'))^L` where `d = 2m/n`.
pub fn check_counting_bound(
    n: usize,
    m: usize,
    paths: u64,
    s: usize,
    constant: &Rational,
) -> CountingCheck {
    let half = half_length(s);
    let s_eff = 2 * half;
    let applicable = n > 0 && 2 * m >= s_eff * n;
    let exp = half as u32;
    let n_big = BigInt::from(n);
    let lhs = BigInt::from(paths)
        * (n_big.clone() * BigInt::from(s_eff) * constant.numer()).pow(exp);
    let rhs = n_big * (BigInt::from(2 * m) * constant.denom()).pow(exp);
    let holds = !Signed::is_negative(constant) && lhs >= rhs;
    let required_constant = if n == 0 || m == 0 {
        0.0
    } else if paths == 0 {
        f64::INFINITY
    } else {
        let d = 2.0 * m as f64 / n as f64;
        (d / s_eff as f64) * (n as f64 / paths as f64).powf(1.0 / half as f64)
    };
    CountingCheck {
        applicable,
        paths,
        holds,
        required_constant,
    }
}

/// `value ≤ c·s·n^{2/s}` checked as `value^s ≤ (c·s)^s·n²`.
pub fn within_power_bound(value: &Rational, s: usize, n: usize, constant: &Rational) -> bool {
    if Signed::is_negative(value) {
        return true;
    }
    let exp = s as u32;
    let scale = constant * Rational::from_integer(BigInt::from(s));
    let lhs = value.pow(exp as i32);
    let rhs = scale.pow(exp as i32) * Rational::from_integer(BigInt::from(n).pow(2));
    lhs <= rhs
}

/// `value / (s·n^{2/s})`, for reporting only.
pub fn power_bound_ratio(value: &Rational, s: usize, n: usize) -> f64 {
    let v = value.to_f64().unwrap_or(f64::NAN);
    v / (s as f64 * (n as f64).powf(2.0 / s as f64))
}

/// Three-matching s-parallel-greedy ladder with girth 4.
///
/// A path on `2(s+2)` vertices whose edges alternate between `M_1` and
/// `M_2`, plus the rungs `{t, t+s+2}` as `M_3`. Rung endpoints are `s+2`
/// apart along the path, and consecutive rungs close 4-cycles containing two
/// `M_3` edges.
pub fn ladder_sequence(s: usize) -> MatchingSequence {
    let half = s + 2;
    let n = 2 * half;
    let first = (0..n - 1).step_by(2).map(|i| (i, i + 1)).collect();
    let second = (1..n - 1).step_by(2).map(|i| (i, i + 1)).collect();
    let rungs = (0..half).map(|t| (t, t + half)).collect();
    MatchingSequence::new(n, vec![first, second, rungs]).expect("ladder matchings are valid")
}

/// Greedy-spanner-like sequence: each matching is a single edge.
pub fn single_edge_sequence(n: usize, s: usize, seed: u64) -> Result<MatchingSequence> {
    if n < 2 || s < 2 {
        return Err(Error::arg("needs n ≥ 2 and s ≥ 2"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
        .collect();
    pairs.shuffle(&mut rng);
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut depth = vec![usize::MAX; n];
    let mut touched = Vec::new();
    let mut matchings = Vec::new();
    for (u, v) in pairs {
        if bounded_distance(&adj, u, v, s, &mut depth, &mut touched).is_none() {
            adj[u].push(v);
            adj[v].push(u);
            matchings.push(vec![(u, v)]);
        }
    }
    MatchingSequence::new(n, matchings)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;
    use proptest::prelude::*;

    #[test]
    fn structure_errors_are_distinct() {
        let shared = MatchingSequence::new(3, vec![vec![(0, 1), (1, 2)]]);
        assert!(matches!(shared, Err(Error::Structure(_))));
        let repeated = MatchingSequence::new(3, vec![vec![(0, 1)], vec![(1, 0)]]);
        assert!(matches!(repeated, Err(Error::Structure(_))));
        assert!(MatchingSequence::new(2, vec![vec![(0, 0)]]).is_err());
        assert!(MatchingSequence::new(2, vec![vec![(0, 2)]]).is_err());
        assert!(MatchingSequence::new(2, vec![vec![], vec![(0, 1)]]).is_ok());
    }

    #[test]
    fn isolated_first_matching_is_valid() {
        let seq = MatchingSequence::new(6, vec![vec![(0, 1), (2, 3), (4, 5)]]).unwrap();
        assert_eq!(verify_parallel_greedy(&seq, 2).unwrap(), None);
        assert!(verify_parallel_greedy(&seq, 1).is_err());
    }

    #[test]
    fn close_second_matching_is_rejected() {
        let seq = MatchingSequence::new(4, vec![vec![(0, 1), (2, 3)], vec![(1, 2)], vec![(0, 3)]])
            .unwrap();
        // 0 and 3 are three hops apart in M_1 ∪ M_2
        assert_eq!(verify_parallel_greedy(&seq, 2).unwrap(), None);
        let v = verify_parallel_greedy(&seq, 3).unwrap().unwrap();
        assert_eq!(v.matching, 2);
        assert_eq!(v.edge, (0, 3));
        assert_eq!(v.distance, 3);
        let adjacent = MatchingSequence::new(3, vec![vec![(0, 1)], vec![(0, 2)], vec![(1, 2)]]).unwrap();
        let v = verify_parallel_greedy(&adjacent, 2).unwrap().unwrap();
        assert_eq!((v.matching, v.distance), (2, 2));
    }

    #[test]
    fn ladder_is_twelve_parallel_greedy() {
        let seq = ladder_sequence(12);
        assert_eq!(seq.matching_count(), 3);
        assert_eq!(verify_parallel_greedy(&seq, 12).unwrap(), None);
        // girth 4
        let cycles = check_cycle_property(&seq, 3, 1_000_000).unwrap();
        assert!(cycles.cycles > 0);
        assert_eq!(cycles.violation, None);
        assert_eq!(check_dispersion(&seq, 12).unwrap(), None);
        let full = check_cycle_property(&seq, 12, 10_000_000).unwrap();
        assert!(full.cycles > 0);
        assert_eq!(full.violation, None);
    }

    #[test]
    fn smallest_generator_output() {
        let seq = generate_parallel_greedy(2, 2, 1, 0).unwrap();
        assert_eq!(seq.matchings(), &[vec![(0, 1)]]);
        assert!(generate_parallel_greedy(1, 2, 1, 0).is_err());
        assert!(generate_parallel_greedy(4, 1, 1, 0).is_err());
        assert!(generate_parallel_greedy(4, 2, 0, 0).is_err());
    }

    #[test]
    fn generator_replays_by_seed() {
        let a = generate_parallel_greedy(40, 4, 10, 99).unwrap();
        let b = generate_parallel_greedy(40, 4, 10, 99).unwrap();
        let c = generate_parallel_greedy(40, 4, 10, 100).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert!(a.matchings().iter().all(|m| !m.is_empty()));
    }

    #[test]
    fn monotonic_paths_small() {
        let one = MatchingSequence::new(2, vec![vec![(0, 1)]]).unwrap();
        let counts = enumerate_monotonic_paths(&one, 1).unwrap();
        assert_eq!(counts.get(&(0, 1)), Some(&1));
        assert_eq!(counts.get(&(1, 0)), Some(&1));
        let two = MatchingSequence::new(3, vec![vec![(0, 1)], vec![(1, 2)]]).unwrap();
        let counts = enumerate_monotonic_paths(&two, 2).unwrap();
        assert_eq!(counts.get(&(0, 2)), Some(&1));
        assert_eq!(counts.get(&(2, 0)), None);
        assert_eq!(count_monotonic_paths(&two, 2).unwrap(), 1);
        assert!(enumerate_monotonic_paths(&two, 0).is_err());
    }

    #[test]
    fn too_few_matchings_cannot_violate_dispersion() {
        let seq = generate_parallel_greedy(30, 10, 4, 5).unwrap();
        assert!(seq.matching_count() < half_length(10));
        assert_eq!(check_dispersion(&seq, 10).unwrap(), None);
        assert!(enumerate_monotonic_paths(&seq, 5).unwrap().is_empty());
    }

    #[test]
    fn dispersion_catches_two_paths() {
        // 0-1-3 uses M1 then M3, 0-2-3 uses M2 then M4: both monotonic
        let seq = MatchingSequence::new(4, vec![vec![(0, 1)], vec![(0, 2)], vec![(1, 3)], vec![(2, 3)]])
            .unwrap();
        assert_eq!(
            check_dispersion(&seq, 4).unwrap(),
            Some(DispersionViolation { from: 0, to: 3, paths: 2 })
        );
        assert!(verify_parallel_greedy(&seq, 4).unwrap().is_some());
        assert!(check_cycle_property(&seq, 4, 1000).unwrap().violation.is_some());
    }

    #[test]
    fn cycle_violation_reported() {
        // triangle with one top edge violates for s ≥ 2
        let seq = MatchingSequence::new(3, vec![vec![(0, 1)], vec![(1, 2)], vec![(0, 2)]]).unwrap();
        let check = check_cycle_property(&seq, 2, 1000).unwrap();
        assert_eq!(check.cycles, 1);
        assert!(check.violation.is_some());
    }

    #[test]
    fn cycle_budget_is_enforced() {
        let seq = ladder_sequence(12);
        match check_cycle_property(&seq, 12, 5) {
            Err(Error::Budget { bound, .. }) => assert_eq!(bound, 5),
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn hiker_single_edge() {
        let seq = MatchingSequence::new(2, vec![vec![(0, 1)]]).unwrap();
        let report = hiker_walk(&seq);
        assert_eq!(report.total_edges, 2);
        assert_eq!(report.longest, 1);
        assert_eq!(report.walks[0].vertices, vec![0, 1]);
        assert_eq!(report.walks[1].vertices, vec![1, 0]);
    }

    #[test]
    fn counting_bound_arithmetic() {
        // s = 2: L = 1, bound n·d/(2c) = m/c
        let check = check_counting_bound(10, 10, 10, 2, &ratio(1, 1));
        assert!(check.applicable && check.holds);
        let check = check_counting_bound(10, 10, 9, 2, &ratio(1, 1));
        assert!(!check.holds);
        assert!((check.required_constant - 10.0 / 9.0).abs() < 1e-12);
        assert!(!check_counting_bound(10, 9, 9, 2, &ratio(1, 1)).applicable);
    }

    #[test]
    fn power_bound_arithmetic() {
        // 3 ≤ 1·2·4^{2/2} = 8
        assert!(within_power_bound(&ratio(3, 1), 2, 4, &ratio(1, 1)));
        assert!(!within_power_bound(&ratio(9, 1), 2, 4, &ratio(1, 1)));
        // α = 1, any c ≥ 1, any s, n ≥ 1
        assert!(within_power_bound(&ratio(1, 1), 10, 2, &ratio(1, 1)));
        assert!((power_bound_ratio(&ratio(4, 1), 2, 4) - 0.5).abs() < 1e-12);
    }

    fn all_simple_paths_oracle(seq: &MatchingSequence, length: usize) -> BTreeMap<(usize, usize), u64> {
        // enumerate every simple path by edge sequence, then filter by index order
        let edges = seq.edges();
        let mut counts = BTreeMap::new();
        fn go(
            edges: &[IndexedEdge],
            path_vertices: &mut Vec<usize>,
            path_indices: &mut Vec<usize>,
            length: usize,
            counts: &mut BTreeMap<(usize, usize), u64>,
        ) {
            if path_indices.len() == length {
                if path_indices.windows(2).all(|w| w[0] < w[1]) {
                    let key = (path_vertices[0], *path_vertices.last().unwrap());
                    *counts.entry(key).or_insert(0) += 1;
                }
                return;
            }
            let at = *path_vertices.last().unwrap();
            for e in edges {
                let next = if e.u == at { e.v } else if e.v == at { e.u } else { continue };
                if path_vertices.contains(&next) {
                    continue;
                }
                path_vertices.push(next);
                path_indices.push(e.matching);
                go(edges, path_vertices, path_indices, length, counts);
                path_indices.pop();
                path_vertices.pop();
            }
        }
        for start in 0..seq.vertex_count() {
            go(&edges, &mut vec![start], &mut Vec::new(), length, &mut counts);
        }
        counts
    }

    fn arb_sequence() -> impl Strategy<Value = (MatchingSequence, usize)> {
        (4usize..=12, 2usize..=6, 1usize..=8, any::<u64>()).prop_map(|(n, s, rounds, seed)| {
            (generate_parallel_greedy(n, s, rounds, seed).unwrap(), s)
        })
    }

    // arbitrary matching sequences, not necessarily parallel-greedy
    fn arb_matchings() -> impl Strategy<Value = MatchingSequence> {
        (3usize..=10, prop::collection::vec(prop::collection::vec((0usize..10, 0usize..10), 0..5), 1..6))
            .prop_map(|(n, raw)| {
                let mut seen = BTreeSet::new();
                let matchings = raw
                    .into_iter()
                    .map(|m| {
                        let mut used = BTreeSet::new();
                        m.into_iter()
                            .map(|(u, v)| (u % n, v % n))
                            .filter(|&(u, v)| {
                                u != v
                                    && !used.contains(&u)
                                    && !used.contains(&v)
                                    && seen.insert((u.min(v), u.max(v)))
                                    && used.insert(u)
                                    && used.insert(v)
                            })
                            .collect()
                    })
                    .collect();
                MatchingSequence::new(n, matchings).unwrap()
            })
    }

    proptest! {
        #[test]
        fn generator_output_verifies((seq, s) in arb_sequence()) {
            prop_assert_eq!(verify_parallel_greedy(&seq, s).unwrap(), None);
        }

        #[test]
        fn monotonic_counts_match_oracle(seq in arb_matchings(), length in 1usize..4) {
            prop_assert_eq!(enumerate_monotonic_paths(&seq, length).unwrap(), all_simple_paths_oracle(&seq, length));
            let total: u64 = all_simple_paths_oracle(&seq, length).values().sum();
            prop_assert_eq!(count_monotonic_paths(&seq, length).unwrap(), total);
        }

        #[test]
        fn monotonic_counts_match_oracle_on_generated((seq, _s) in arb_sequence(), length in 1usize..4) {
            prop_assert_eq!(enumerate_monotonic_paths(&seq, length).unwrap(), all_simple_paths_oracle(&seq, length));
        }

        #[test]
        fn hiker_accounting((seq, s) in arb_sequence()) {
            let report = hiker_walk(&seq);
            prop_assert_eq!(report.total_edges, 2 * seq.edge_count());
            let edges = seq.edges();
            for walk in &report.walks {
                prop_assert!(walk.is_monotonic());
                prop_assert!(walk.windows_are_simple(s + 1));
                for (step, &id) in walk.edges.iter().enumerate() {
                    let e = edges[id];
                    let (a, b) = (walk.vertices[step], walk.vertices[step + 1]);
                    prop_assert!((e.u, e.v) == (a.min(b), a.max(b)));
                }
            }
            if 4 * seq.edge_count() >= s * seq.vertex_count() {
                prop_assert!(2 * report.longest >= s);
            }
        }

        #[test]
        fn subgraphs_stay_parallel_greedy((seq, s) in arb_sequence(), drop in prop::collection::btree_set(0usize..64, 0..10)) {
            let sub = seq.without_edges(&drop);
            prop_assert_eq!(verify_parallel_greedy(&sub, s).unwrap(), None);
        }

        #[test]
        fn dispersion_and_cycles_hold((seq, s) in arb_sequence()) {
            prop_assert_eq!(check_dispersion(&seq, s).unwrap(), None);
            prop_assert_eq!(check_cycle_property(&seq, s, 50_000_000).unwrap().violation, None);
        }
    }
}
