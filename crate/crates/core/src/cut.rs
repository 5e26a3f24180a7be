//! Moving (length-constrained) cuts, demand-size and sparsity.
//!
//! Demand-size is computed as an integral transportation problem: every
//! ordered pair that is within the length bound before the cut and beyond
//! the separation threshold after it becomes an uncapacitated arc from a
//! left copy of `u` to a right copy of `v`; the left and right copies are
//! fed with capacity `A(u)` and `A(v)`. Row and column sums of any feasible
//! flow are exactly the A-respecting constraints, and the network is
//! totally unimodular, so the integral maximum equals the true maximum.

use std::collections::BTreeMap;

use petgraph::algo::maximum_matching;
use petgraph::graph::UnGraph;
use serde::Serialize;

use crate::demand::Demand;
use crate::error::{Error, Result};
use crate::flow::{FlowNetwork, UNBOUNDED};
use crate::graph::{Graph, NodeWeighting};
use crate::scalar::{as_ratio, Extended, Scalar};

/// Sparse map from edge id to a non-negative cut value.
///
/// Only strictly positive values are stored. The zero function is
/// representable (helpers evaluate it) but never counts as a sparse cut:
/// its demand-size is zero and its sparsity infinite.
#[derive(Clone, Debug, PartialEq)]
pub struct MovingCut<S> {
    values: BTreeMap<usize, S>,
}

impl<S: Scalar> Default for MovingCut<S> {
    fn default() -> Self {
        MovingCut::zero()
    }
}

/// Serialized as `[[edge, "num/den"], ...]` in edge order.
impl<S: Scalar> Serialize for MovingCut<S> {
    fn serialize<Ser: serde::Serializer>(&self, ser: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        ser.collect_seq(self.values.iter().map(|(id, v)| (*id, v.to_ratio_string())))
    }
}

impl<S: Scalar> MovingCut<S> {
    pub fn zero() -> Self {
        MovingCut {
            values: BTreeMap::new(),
        }
    }

    /// Builds a cut from `(edge id, value)` pairs, summing repeats.
    ///
    /// # Panics
    /// On a negative value; use [`MovingCut::try_from_entries`] for
    /// untrusted input.
    pub fn from_entries(entries: impl IntoIterator<Item = (usize, S)>) -> Self {
        Self::try_from_entries(entries).expect("cut values must be non-negative")
    }

    pub fn try_from_entries(entries: impl IntoIterator<Item = (usize, S)>) -> Result<Self> {
        let mut cut = MovingCut::zero();
        for (id, value) in entries {
            if value.is_negative() {
                return Err(Error::arg(format!("cut value on edge {id} is negative")));
            }
            cut.add(id, value);
        }
        Ok(cut)
    }

    /// Unit cut on the given edges.
    pub fn unit(edge_ids: impl IntoIterator<Item = usize>) -> Self {
        MovingCut::from_entries(edge_ids.into_iter().map(|id| (id, S::one())))
    }

    pub fn add(&mut self, id: usize, value: S) {
        debug_assert!(!value.is_negative());
        if value.is_zero() {
            return;
        }
        let slot = self.values.entry(id).or_insert_with(S::zero);
        *slot = slot.clone() + value;
    }

    pub fn value(&self, id: usize) -> S {
        self.values.get(&id).cloned().unwrap_or_else(S::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &S)> + '_ {
        self.values.iter().map(|(&id, v)| (id, v))
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn support_len(&self) -> usize {
        self.values.len()
    }

    pub fn check_edges(&self, graph: &Graph<S>) -> Result<()> {
        match self.values.keys().find(|&&id| id >= graph.edge_count()) {
            Some(id) => Err(Error::arg(format!(
                "cut references edge {id}, graph has {} edges",
                graph.edge_count()
            ))),
            None => Ok(()),
        }
    }

    /// `|C| = Σ_e U_e · C(e)`
    pub fn size(&self, graph: &Graph<S>) -> Result<S> {
        self.check_edges(graph)?;
        Ok(self.values.iter().fold(S::zero(), |acc, (&id, v)| {
            acc + S::from_count(graph.edge(id).capacity) * v.clone()
        }))
    }

    /// `G − C_h`: each edge length becomes `ℓ_e + h·C(e)`.
    pub fn apply(&self, graph: &Graph<S>, h: &S) -> Result<Graph<S>> {
        if *h <= S::zero() {
            return Err(Error::arg("cut application threshold must be positive"));
        }
        self.check_edges(graph)?;
        let lengths = graph
            .edges()
            .iter()
            .enumerate()
            .map(|(id, e)| match self.values.get(&id) {
                Some(v) => e.length.clone() + h.clone() * v.clone(),
                None => e.length.clone(),
            })
            .collect();
        graph.with_lengths(lengths)
    }

    pub fn scaled(&self, factor: &S) -> Self {
        MovingCut::from_entries(self.iter().map(|(id, v)| (id, v.clone() * factor.clone())))
    }

    /// Pointwise sum.
    pub fn sum<'a>(cuts: impl IntoIterator<Item = &'a MovingCut<S>>) -> Self {
        let mut total = MovingCut::zero();
        for cut in cuts {
            for (id, v) in cut.iter() {
                total.add(id, v.clone());
            }
        }
        total
    }
}

/// How the witness demand is constrained at each vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessMode {
    /// `max(row, column) ≤ A(v)`: the plain A-respecting maximum.
    Standard,
    /// `row + column ≤ A(v)`: realizable as a single matching on `A(v)`
    /// copies per vertex. Entries are stored with `u < v`.
    MatchingSafe,
}

/// Demand-size value plus a demand attaining it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DemandSize {
    pub value: u64,
    pub witness: Demand,
}

/// Ordered pairs within `length_bound` in `graph` and beyond `threshold` in
/// `graph − cut_threshold`.
pub fn eligible_pairs<S: Scalar>(
    graph: &Graph<S>,
    cut: &MovingCut<S>,
    length_bound: &S,
    threshold: &S,
) -> Result<Vec<(usize, usize)>> {
    let before = graph.all_pairs_distances();
    let after = cut.apply(graph, threshold)?.all_pairs_distances();
    let n = graph.vertex_count();
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && before[u][v].at_most(length_bound) && after[u][v].exceeds(threshold) {
                pairs.push((u, v));
            }
        }
    }
    Ok(pairs)
}

/// Largest A-respecting demand that is `length_bound`-length in `graph` and
/// `threshold`-separated by `cut`.
///
/// This is the threshold-level routine behind [`demand_size`]; it accepts
/// any positive threshold, including ones below the length bound.
pub fn demand_size_at<S: Scalar>(
    graph: &Graph<S>,
    cut: &MovingCut<S>,
    weighting: &NodeWeighting,
    length_bound: &S,
    threshold: &S,
    mode: WitnessMode,
) -> Result<DemandSize> {
    if *length_bound <= S::zero() || *threshold <= S::zero() {
        return Err(Error::arg("length bound and separation threshold must be positive"));
    }
    if weighting.len() != graph.vertex_count() {
        return Err(Error::arg("node-weighting does not match the graph"));
    }
    let pairs = eligible_pairs(graph, cut, length_bound, threshold)?;
    Ok(demand_size_of_pairs(graph.vertex_count(), weighting, &pairs, mode))
}

/// Maximum respecting demand supported on the given ordered pairs.
pub(crate) fn demand_size_of_pairs(
    n: usize,
    weighting: &NodeWeighting,
    pairs: &[(usize, usize)],
    mode: WitnessMode,
) -> DemandSize {
    match mode {
        WitnessMode::Standard => transport(n, weighting, pairs),
        WitnessMode::MatchingSafe => copy_matching(n, weighting, pairs),
    }
}

fn transport(n: usize, weighting: &NodeWeighting, pairs: &[(usize, usize)]) -> DemandSize {
    let source = 2 * n;
    let sink = 2 * n + 1;
    let mut net = FlowNetwork::new(2 * n + 2);
    for v in 0..n {
        let w = weighting.get(v);
        if w > 0 {
            net.add_arc(source, v, w);
            net.add_arc(n + v, sink, w);
        }
    }
    let arcs: Vec<_> = pairs
        .iter()
        .map(|&(u, v)| ((u, v), net.add_arc(u, n + v, UNBOUNDED)))
        .collect();
    let value = net.max_flow(source, sink);
    let witness = Demand::from_entries(arcs.into_iter().map(|(pair, arc)| (pair, net.flow(arc))));
    DemandSize { value, witness }
}

fn copy_matching(n: usize, weighting: &NodeWeighting, pairs: &[(usize, usize)]) -> DemandSize {
    let mut offset = Vec::with_capacity(n + 1);
    offset.push(0usize);
    for v in 0..n {
        offset.push(offset[v] + weighting.get(v) as usize);
    }
    let mut owner = vec![0usize; offset[n]];
    for v in 0..n {
        owner[offset[v]..offset[v + 1]].fill(v);
    }
    let mut copies: UnGraph<(), ()> = UnGraph::with_capacity(offset[n], 0);
    let nodes: Vec<_> = (0..offset[n]).map(|_| copies.add_node(())).collect();
    for &(u, v) in pairs.iter().filter(|&&(u, v)| u < v) {
        for a in offset[u]..offset[u + 1] {
            for b in offset[v]..offset[v + 1] {
                copies.add_edge(nodes[a], nodes[b], ());
            }
        }
    }
    let matching = maximum_matching(&copies);
    let witness = Demand::from_entries(matching.edges().map(|(a, b)| {
        let (x, y) = (owner[a.index()], owner[b.index()]);
        ((x.min(y), x.max(y)), 1)
    }));
    DemandSize {
        value: witness.size(),
        witness,
    }
}

/// `A_{(h,s)}(C)`: eligible pairs are within `h` before the cut and beyond
/// `h·s` after applying it at `h·s`.
pub fn demand_size<S: Scalar>(
    graph: &Graph<S>,
    cut: &MovingCut<S>,
    weighting: &NodeWeighting,
    h: &S,
    s: &S,
) -> Result<DemandSize> {
    demand_size_with_mode(graph, cut, weighting, h, s, WitnessMode::Standard)
}

pub fn demand_size_with_mode<S: Scalar>(
    graph: &Graph<S>,
    cut: &MovingCut<S>,
    weighting: &NodeWeighting,
    h: &S,
    s: &S,
    mode: WitnessMode,
) -> Result<DemandSize> {
    check_parameters(h, s)?;
    let threshold = h.clone() * s.clone();
    demand_size_at(graph, cut, weighting, h, &threshold, mode)
}

fn check_parameters<S: Scalar>(h: &S, s: &S) -> Result<()> {
    if *h <= S::zero() {
        return Err(Error::arg("length bound h must be positive"));
    }
    if *s < S::from_count(2) {
        return Err(Error::arg("length slack s must be at least 2"));
    }
    Ok(())
}

/// Size, demand-size and sparsity of one cut in one graph.
#[derive(Clone, Debug, PartialEq)]
pub struct CutEvaluation<S> {
    pub cut_size: S,
    pub demand_size: DemandSize,
    pub sparsity: Extended<S>,
}

pub fn evaluate_cut<S: Scalar>(
    graph: &Graph<S>,
    cut: &MovingCut<S>,
    weighting: &NodeWeighting,
    h: &S,
    s: &S,
) -> Result<CutEvaluation<S>> {
    let demand_size = demand_size(graph, cut, weighting, h, s)?;
    let cut_size = cut.size(graph)?;
    let sparsity = ratio_or_infinite(&cut_size, demand_size.value);
    Ok(CutEvaluation {
        cut_size,
        demand_size,
        sparsity,
    })
}

pub(crate) fn ratio_or_infinite<S: Scalar>(numerator: &S, denominator: u64) -> Extended<S> {
    if denominator == 0 {
        Extended::Infinite
    } else {
        Extended::Finite(numerator.clone() / S::from_count(denominator))
    }
}

/// `spars_{(h,s)}(C, A) = |C| / A_{(h,s)}(C)`, infinite at zero demand-size.
pub fn sparsity<S: Scalar>(
    graph: &Graph<S>,
    cut: &MovingCut<S>,
    weighting: &NodeWeighting,
    h: &S,
    s: &S,
) -> Result<Extended<S>> {
    Ok(evaluate_cut(graph, cut, weighting, h, s)?.sparsity)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound(serialize = ""))]
pub struct SequenceStep<S: Scalar> {
    pub index: usize,
    #[serde(with = "as_ratio")]
    pub cut_size: S,
    pub demand_size: u64,
    #[serde(serialize_with = "serialize_extended")]
    pub sparsity: Extended<S>,
    /// `sparsity ≤ φ`
    pub sparse: bool,
    /// `|C| ≤ φ·|A|`; must hold whenever `sparse` does.
    pub within_size_bound: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound(serialize = ""))]
pub struct CutSequenceReport<S: Scalar> {
    pub valid: bool,
    pub steps: Vec<SequenceStep<S>>,
}

pub(crate) fn serialize_extended<S: Scalar, Ser: serde::Serializer>(
    value: &Extended<S>,
    ser: Ser,
) -> std::result::Result<Ser::Ok, Ser::Error> {
    ser.serialize_str(&value.to_ratio_string())
}

/// Checks that each `C_i` is φ-sparse in `G − (Σ_{j<i} C_j)_{h·s}`.
pub fn verify_cut_sequence<S: Scalar>(
    graph: &Graph<S>,
    weighting: &NodeWeighting,
    cuts: &[MovingCut<S>],
    h: &S,
    s: &S,
    phi: &S,
) -> Result<CutSequenceReport<S>> {
    check_parameters(h, s)?;
    let threshold = h.clone() * s.clone();
    let volume_bound = phi.clone() * S::from_count(weighting.total());
    let mut current = graph.clone();
    let mut steps = Vec::with_capacity(cuts.len());
    for (index, cut) in cuts.iter().enumerate() {
        let eval = evaluate_cut(&current, cut, weighting, h, s)?;
        let sparse = eval.sparsity.at_most(phi);
        steps.push(SequenceStep {
            index,
            within_size_bound: eval.cut_size <= volume_bound,
            cut_size: eval.cut_size,
            demand_size: eval.demand_size.value,
            sparsity: eval.sparsity,
            sparse,
        });
        current = cut.apply(&current, &threshold)?;
    }
    Ok(CutSequenceReport {
        valid: steps.iter().all(|step| step.sparse),
        steps,
    })
}
