//! Dispersing the witness demands of a cut sequence into a single demand
//! that is separated by the (scaled) union of the cuts.
//!
//! Every witness pair becomes an edge between copies of its endpoints; the
//! resulting graph is a union of matchings, forest-covered, and each tree
//! contributes a demand between siblings and parent–child pairs. The scaled
//! demand is fractional, so it is carried as an integer demand plus an exact
//! scale `1/(2k)`, `k` being the number of forests actually used.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::arboricity::{forest_cover, EdgeList, ForestCover};
use crate::cut::{
    demand_size_at, demand_size_with_mode, evaluate_cut, ratio_or_infinite, serialize_extended,
    MovingCut, WitnessMode,
};
use crate::demand::Demand;
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeWeighting};
use crate::parallel_greedy::{verify_parallel_greedy, MatchingSequence};
use crate::report::{all_pass, count_string, PropertyReport};
use crate::scalar::{as_ratio, Extended, Scalar};
use crate::Rational;

fn int(value: u64) -> Rational {
    Rational::from_count(value)
}

fn check_parameters(h: &Rational, s: &Rational) -> Result<()> {
    if *h <= Rational::zero() {
        return Err(Error::arg("length bound h must be positive"));
    }
    if *s < int(2) {
        return Err(Error::arg("length slack s must be at least 2"));
    }
    Ok(())
}

/// `A(v)` copies per vertex and one matching on copies per demand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DemandMatchingGraph {
    copies: Vec<Vec<usize>>,
    owner: Vec<usize>,
    matchings: Vec<Vec<(usize, usize)>>,
}

impl DemandMatchingGraph {
    pub fn copy_count(&self) -> usize {
        self.owner.len()
    }

    pub fn copies(&self, v: usize) -> &[usize] {
        &self.copies[v]
    }

    pub fn owner(&self, copy: usize) -> usize {
        self.owner[copy]
    }

    /// `matchings()[i]` realizes the `i`-th demand.
    pub fn matchings(&self) -> &[Vec<(usize, usize)>] {
        &self.matchings
    }

    pub fn edge_count(&self) -> usize {
        self.matchings.iter().map(Vec::len).sum()
    }

    /// All copy edges, first matching first.
    pub fn edge_list(&self) -> EdgeList {
        EdgeList::new(self.copy_count(), self.matchings.iter().flatten().copied().collect())
            .expect("copy edges join distinct copies")
    }

    /// The matchings last-to-first. In this order every matched pair is far
    /// apart in the union of the matchings listed before it.
    pub fn parallel_greedy_sequence(&self) -> Result<MatchingSequence> {
        MatchingSequence::new(self.copy_count(), self.matchings.iter().rev().cloned().collect())
    }
}

/// Copies are numbered vertex by vertex; within demand `i`, entries are taken
/// in `(u, v)` order after folding onto `u < v`, each unit consuming the
/// lowest copy of each endpoint still unused in that matching.
pub fn build_demand_matching_graph<S: Scalar>(
    graph: &Graph<S>,
    weighting: &NodeWeighting,
    demands: &[Demand],
) -> Result<DemandMatchingGraph> {
    let n = graph.vertex_count();
    if weighting.len() != n {
        return Err(Error::arg("node-weighting does not match the graph"));
    }
    let mut copies = Vec::with_capacity(n);
    let mut owner = Vec::new();
    for v in 0..n {
        let start = owner.len();
        owner.extend(std::iter::repeat_n(v, weighting.get(v) as usize));
        copies.push((start..owner.len()).collect::<Vec<_>>());
    }
    let mut matchings = Vec::with_capacity(demands.len());
    for (i, demand) in demands.iter().enumerate() {
        demand.check_vertices(n)?;
        let incidence = demand.combined_incidence(n);
        if let Some(v) = (0..n).find(|&v| incidence[v] > weighting.get(v)) {
            return Err(Error::Construction(format!(
                "demand {i} meets vertex {v} {} times but it has only {} copies",
                incidence[v],
                weighting.get(v)
            )));
        }
        let mut next = vec![0usize; n];
        let mut matching = Vec::new();
        for ((u, v), value) in demand.canonical().iter() {
            for _ in 0..value {
                matching.push((copies[u][next[u]], copies[v][next[v]]));
                next[u] += 1;
                next[v] += 1;
            }
        }
        matchings.push(matching);
    }
    Ok(DemandMatchingGraph {
        copies,
        owner,
        matchings,
    })
}

/// Demand on a rooted tree pairing up children (plus the parent when the
/// number of children is odd).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeMatchingDemand {
    pub root: usize,
    pub vertex_count: usize,
    pub demand: Demand,
    /// Pairs contributed by each internal vertex.
    pub matchings: BTreeMap<usize, Vec<(usize, usize)>>,
}

impl TreeMatchingDemand {
    pub fn size(&self) -> u64 {
        self.demand.size()
    }

    /// Largest number of pairs any vertex takes part in.
    pub fn max_degree(&self) -> u64 {
        let mut degree: BTreeMap<usize, u64> = BTreeMap::new();
        for ((u, v), value) in self.demand.iter() {
            *degree.entry(u).or_default() += value;
            *degree.entry(v).or_default() += value;
        }
        degree.values().copied().max().unwrap_or(0)
    }

    /// `size ≥ (n − 1)/2`, as `2·size ≥ n − 1`.
    pub fn meets_size_bound(&self) -> bool {
        2 * self.size() >= self.vertex_count as u64 - 1
    }
}

/// Tree given by vertex labels and edges between them. The root is the
/// smallest label and children are ordered by label.
pub fn tree_matching_demand(vertices: &[usize], edges: &[(usize, usize)]) -> Result<TreeMatchingDemand> {
    let labels: BTreeSet<usize> = vertices.iter().copied().collect();
    if labels.is_empty() {
        return Err(Error::arg("a tree needs at least one vertex"));
    }
    if labels.len() != vertices.len() {
        return Err(Error::arg("tree vertex labels repeat"));
    }
    if edges.len() + 1 != labels.len() {
        return Err(Error::arg(format!(
            "{} edges on {} vertices is not a tree",
            edges.len(),
            labels.len()
        )));
    }
    let mut neighbors: BTreeMap<usize, BTreeSet<usize>> = labels.iter().map(|&v| (v, BTreeSet::new())).collect();
    for &(u, v) in edges {
        if u == v || !labels.contains(&u) || !labels.contains(&v) {
            return Err(Error::arg(format!("edge ({u}, {v}) does not join two tree vertices")));
        }
        neighbors.get_mut(&u).expect("checked").insert(v);
        neighbors.get_mut(&v).expect("checked").insert(u);
    }
    let root = *labels.first().expect("non-empty");
    let mut children: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut seen = BTreeSet::from([root]);
    let mut queue = VecDeque::from([root]);
    while let Some(x) = queue.pop_front() {
        for &y in &neighbors[&x] {
            if seen.insert(y) {
                children.entry(x).or_default().push(y);
                queue.push_back(y);
            }
        }
    }
    if seen.len() != labels.len() {
        return Err(Error::arg("tree edges do not connect all vertices"));
    }
    let mut demand = Demand::new();
    let mut matchings = BTreeMap::new();
    for (v, kids) in children {
        let mut members = kids;
        if members.len() % 2 == 1 {
            members.push(v);
            members.sort_unstable();
        }
        let pairs: Vec<(usize, usize)> = members.chunks(2).map(|p| (p[0], p[1])).collect();
        for &(a, b) in &pairs {
            demand.add(a, b, 1);
        }
        matchings.insert(v, pairs);
    }
    Ok(TreeMatchingDemand {
        root,
        vertex_count: labels.len(),
        demand,
        matchings,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct DispersedDemand {
    /// Integer demand before scaling, on original vertices.
    pub unscaled: Demand,
    /// `1/(2k)`; `1/2` when there is nothing to cover.
    pub scale: Rational,
    /// Number of forests `k` in the cover actually used.
    pub cover_size: usize,
    pub matching_graph: DemandMatchingGraph,
    pub cover: ForestCover,
    pub trees: Vec<TreeMatchingDemand>,
}

impl DispersedDemand {
    pub fn scaled_size(&self) -> Rational {
        int(self.unscaled.size()) * self.scale.clone()
    }

    fn normalizer(&self) -> u64 {
        self.cover_size.max(1) as u64
    }
}

pub fn matching_dispersed_demand<S: Scalar>(
    graph: &Graph<S>,
    weighting: &NodeWeighting,
    demands: &[Demand],
) -> Result<DispersedDemand> {
    let matching_graph = build_demand_matching_graph(graph, weighting, demands)?;
    let copy_edges = matching_graph.edge_list();
    let cover = forest_cover(&copy_edges);
    let mut unscaled = Demand::new();
    let mut trees = Vec::new();
    for (vertices, edge_ids) in cover.trees(&copy_edges) {
        let pairs: Vec<(usize, usize)> = edge_ids.iter().map(|&id| copy_edges.edges()[id]).collect();
        let tree = tree_matching_demand(&vertices, &pairs)?;
        for ((x, y), value) in tree.demand.iter() {
            let (u, v) = (matching_graph.owner(x), matching_graph.owner(y));
            if u == v {
                return Err(Error::Construction(format!(
                    "copies {x} and {y} of vertex {u} were paired; the demands are not separated"
                )));
            }
            unscaled.add(u, v, value);
        }
        trees.push(tree);
    }
    let cover_size = cover.len();
    Ok(DispersedDemand {
        unscaled,
        scale: Rational::new(1.into(), (2 * cover_size.max(1) as u64).into()),
        cover_size,
        matching_graph,
        cover,
        trees,
    })
}

/// `(s/(s−1))·Σ C_i`.
pub fn union_cut(cuts: &[MovingCut<Rational>], s: &Rational) -> MovingCut<Rational> {
    let factor = s.clone() / (s.clone() - int(1));
    MovingCut::sum(cuts).scaled(&factor)
}

/// Matching-safe witness demand of every cut, each taken in the graph left
/// by the cuts before it (applied at `h·s`).
pub fn witness_demands(
    graph: &Graph<Rational>,
    weighting: &NodeWeighting,
    cuts: &[MovingCut<Rational>],
    h: &Rational,
    s: &Rational,
) -> Result<Vec<Demand>> {
    check_parameters(h, s)?;
    let threshold = h.clone() * s.clone();
    let mut current = graph.clone();
    let mut witnesses = Vec::with_capacity(cuts.len());
    for cut in cuts {
        let size = demand_size_with_mode(&current, cut, weighting, h, s, WitnessMode::MatchingSafe)?;
        witnesses.push(size.witness);
        current = cut.apply(&current, &threshold)?;
    }
    Ok(witnesses)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DispersalReport {
    pub pass: bool,
    pub cover_size: usize,
    pub witness_total: u64,
    pub unscaled_size: u64,
    #[serde(with = "as_ratio")]
    pub scale: Rational,
    pub properties: Vec<PropertyReport>,
}

/// Rebuilds the dispersed demand of `demands` and checks the matching graph,
/// the tree demands and the length, respecting, separation and size
/// properties of the result.
///
/// `demands[i]` must be `h`-length and fully `h·s`-separated by `cuts[i]` in
/// the graph left by `cuts[..i]`; anything else is an argument error.
pub fn verify_dispersed_properties(
    graph: &Graph<Rational>,
    weighting: &NodeWeighting,
    cuts: &[MovingCut<Rational>],
    demands: &[Demand],
    h: &Rational,
    s: &Rational,
) -> Result<DispersalReport> {
    check_parameters(h, s)?;
    if cuts.len() != demands.len() {
        return Err(Error::arg(format!("{} cuts but {} demands", cuts.len(), demands.len())));
    }
    let threshold = h.clone() * s.clone();
    let mut current = graph.clone();
    for (i, (cut, demand)) in cuts.iter().zip(demands).enumerate() {
        if !demand.is_h_length(&current, h)? {
            return Err(Error::arg(format!("demand {i} is not h-length before cut {i}")));
        }
        if demand.separated_amount(&current, cut, &threshold)? != demand.size() {
            return Err(Error::arg(format!("demand {i} is not fully separated by cut {i}")));
        }
        current = cut.apply(&current, &threshold)?;
    }

    let dispersed = matching_dispersed_demand(graph, weighting, demands)?;
    let n = graph.vertex_count();
    let k = dispersed.normalizer();
    let witness_total: u64 = demands.iter().map(Demand::size).sum();
    let unscaled_size = dispersed.unscaled.size();
    let mut properties = Vec::new();

    let parallel_s = s.floor().to_integer().to_usize().unwrap_or(usize::MAX);
    let sequence = dispersed.matching_graph.parallel_greedy_sequence()?;
    let violation = verify_parallel_greedy(&sequence, parallel_s)?;
    properties.push(
        PropertyReport::new(
            "matching_graph_parallel_greedy",
            violation.is_none(),
            count_string(violation.as_ref().map_or(0, |_| 1)),
            count_string(0),
        )
        .with_witness(violation.map(|v| {
            format!(
                "copies {:?} of listed matching {} at distance {}",
                v.edge, v.matching, v.distance
            )
        })),
    );

    let bad_tree = dispersed
        .trees
        .iter()
        .position(|t| !t.meets_size_bound() || t.max_degree() > 2);
    let tree_pairs: u64 = dispersed.trees.iter().map(TreeMatchingDemand::size).sum();
    let tree_edges: u64 = dispersed.trees.iter().map(|t| t.vertex_count as u64 - 1).sum();
    properties.push(
        PropertyReport::new(
            "tree_demand_size",
            bad_tree.is_none(),
            count_string(tree_edges),
            count_string(2 * tree_pairs),
        )
        .with_witness(bad_tree.map(|i| format!("tree {i}"))),
    );

    let two_h = h.clone() * int(2);
    let distances = graph.all_pairs_distances();
    let far = dispersed
        .unscaled
        .support()
        .find(|&(u, v)| !distances[u][v].at_most(&two_h));
    properties.push(
        PropertyReport::new(
            "dispersed_length",
            far.is_none(),
            far.map_or_else(|| "0/1".to_string(), |(u, v)| distances[u][v].to_ratio_string()),
            two_h.to_ratio_string(),
        )
        .with_witness(far.map(|(u, v)| format!("pair ({u}, {v})"))),
    );

    let incidence = dispersed.unscaled.combined_incidence(n);
    let heavy = (0..n).find(|&v| incidence[v] > 2 * k * weighting.get(v));
    let worst = (0..n).max_by_key(|&v| incidence[v]);
    let shown = heavy.or(worst);
    properties.push(
        PropertyReport::new(
            "dispersed_respecting",
            heavy.is_none(),
            count_string(shown.map_or(0, |v| incidence[v])),
            count_string(shown.map_or(0, |v| 2 * k * weighting.get(v))),
        )
        .with_witness(heavy.map(|v| format!("vertex {v}"))),
    );

    let reduced = h.clone() * (s.clone() - int(1));
    let union = union_cut(cuts, s);
    let cut_graph = union.apply(graph, &reduced)?;
    let cut_distances = cut_graph.all_pairs_distances();
    let close = dispersed
        .unscaled
        .support()
        .find(|&(u, v)| !cut_distances[u][v].exceeds(&reduced));
    let closest = dispersed
        .unscaled
        .support()
        .map(|(u, v)| cut_distances[u][v].clone())
        .min_by(|a, b| a.partial_cmp(b).expect("distances are comparable"));
    properties.push(
        PropertyReport::new(
            "dispersed_separated",
            close.is_none(),
            reduced.to_ratio_string(),
            closest.map_or_else(|| "inf".to_string(), |d| d.to_ratio_string()),
        )
        .with_witness(close.map(|(u, v)| format!("pair ({u}, {v})"))),
    );

    properties.push(PropertyReport::new(
        "dispersed_size_unscaled",
        2 * unscaled_size >= witness_total,
        count_string(witness_total),
        count_string(2 * unscaled_size),
    ));
    let quarter = int(witness_total) / int(4 * k);
    let scaled = dispersed.scaled_size();
    properties.push(PropertyReport::compare("dispersed_size_scaled", &quarter, &scaled));

    Ok(DispersalReport {
        pass: all_pass(&properties),
        cover_size: dispersed.cover_size,
        witness_total,
        unscaled_size,
        scale: dispersed.scale,
        properties,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UnionReport {
    pub pass: bool,
    pub cover_size: usize,
    #[serde(with = "as_ratio")]
    pub cut_size_total: Rational,
    pub demand_size_total: u64,
    pub witness_total: u64,
    #[serde(with = "as_ratio")]
    pub union_size: Rational,
    pub union_demand_size: u64,
    #[serde(serialize_with = "serialize_extended")]
    pub union_sparsity: Extended<Rational>,
    /// `8k·Σ|C_i| / Σ A_{(h,s)}(C_i)`
    #[serde(serialize_with = "serialize_extended")]
    pub bound: Extended<Rational>,
    /// The dispersed demand compared against the plain demand-sizes rather
    /// than the matching-safe witnesses it is built from; reported only.
    pub standard_certificate_holds: bool,
    pub properties: Vec<PropertyReport>,
}

/// Checks that `(s/(s−1))·Σ C_i` is sparse at length `2h` and slack
/// `(s−1)/2` with sparsity at most `8k·Σ|C_i| / Σ A_{(h,s)}(C_i)`, and that
/// the dispersed witness demand certifies its demand-size.
pub fn union_sparsity_check(
    graph: &Graph<Rational>,
    weighting: &NodeWeighting,
    cuts: &[MovingCut<Rational>],
    h: &Rational,
    s: &Rational,
) -> Result<UnionReport> {
    check_parameters(h, s)?;
    let threshold = h.clone() * s.clone();
    let mut current = graph.clone();
    let mut cut_size_total = Rational::zero();
    let mut demand_size_total = 0u64;
    for (i, cut) in cuts.iter().enumerate() {
        let eval = evaluate_cut(&current, cut, weighting, h, s)?;
        if eval.demand_size.value == 0 {
            return Err(Error::arg(format!("cut {i} separates no demand and cannot be sparse")));
        }
        cut_size_total += eval.cut_size;
        demand_size_total += eval.demand_size.value;
        current = cut.apply(&current, &threshold)?;
    }
    let witnesses = witness_demands(graph, weighting, cuts, h, s)?;
    let dispersed = matching_dispersed_demand(graph, weighting, &witnesses)?;
    let k = dispersed.normalizer();
    let witness_total: u64 = witnesses.iter().map(Demand::size).sum();

    let union = union_cut(cuts, s);
    let union_size = union.size(graph)?;
    let two_h = h.clone() * int(2);
    let reduced = h.clone() * (s.clone() - int(1));
    let union_demand = demand_size_at(graph, &union, weighting, &two_h, &reduced, WitnessMode::Standard)?;
    let union_sparsity = ratio_or_infinite(&union_size, union_demand.value);
    let bound = if cuts.is_empty() {
        Extended::Infinite
    } else {
        ratio_or_infinite(&(int(8 * k) * cut_size_total.clone()), demand_size_total)
    };

    let scaled = dispersed.scaled_size();
    let mut properties = vec![PropertyReport::compare_extended("union_sparsity", &union_sparsity, &bound)];
    if let Extended::Finite(b) = &bound {
        let volume = b.clone() * int(weighting.total());
        properties.push(PropertyReport::compare("union_size_bound", &union_size, &volume));
    }
    let certified = int(witness_total) / int(4 * k);
    properties.push(PropertyReport::compare("dispersed_certificate", &certified, &scaled));
    properties.push(PropertyReport::compare(
        "union_demand_dominates_dispersed",
        &scaled,
        &int(union_demand.value),
    ));
    let standard_certificate_holds = int(demand_size_total) / int(4 * k) <= scaled;

    Ok(UnionReport {
        pass: all_pass(&properties),
        cover_size: dispersed.cover_size,
        cut_size_total,
        demand_size_total,
        witness_total,
        union_size,
        union_demand_size: union_demand.value,
        union_sparsity,
        bound,
        standard_certificate_holds,
        properties,
    })
}
