//! Searching for sparse moving cuts and iterating them into a
//! length-constrained expander decomposition.
//!
//! The search is over a finite family of {0,1}-valued cuts, so "no sparse
//! cut" is a claim about that family only.

use num_traits::Zero;
use serde::Serialize;

use crate::cut::{demand_size_of_pairs, ratio_or_infinite, MovingCut, WitnessMode};
use crate::error::{Error, Result};
use crate::graph::{Distance, Graph, NodeWeighting};
use crate::scalar::{as_ratio, Extended, Scalar};
use crate::Rational;

/// Candidate cuts tried by [`find_sparse_cut`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "family")]
pub enum FinderFamily {
    /// Every edge subset with at most `max_edges` edges, smallest first.
    Exhaustive { max_edges: usize },
    /// For every center and every distinct distance from it, the edges
    /// leaving the ball of that radius.
    Balls,
    /// One edge at a time.
    Singletons,
}

/// Resource limits for the search and the outer loop.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SearchLimits {
    /// Maximum number of exhaustive candidates per search.
    pub candidates: u64,
    /// Maximum number of cuts in one decomposition.
    pub iterations: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            candidates: 200_000,
            iterations: 256,
        }
    }
}

/// Sparse cut returned by the search, with its evaluation.
#[derive(Clone, Debug, PartialEq)]
pub struct FoundCut {
    pub cut: MovingCut<Rational>,
    /// Position of the cut in the family's enumeration order.
    pub candidate: usize,
    pub cut_size: Rational,
    pub demand_size: u64,
    pub sparsity: Rational,
    pub candidates_evaluated: usize,
}

fn combinations_count(m: usize, max: usize) -> u128 {
    let mut total: u128 = 0;
    let mut binom: u128 = 1;
    for j in 1..=max.min(m) {
        binom = binom * (m - j + 1) as u128 / j as u128;
        total = total.saturating_add(binom);
    }
    total
}

/// The candidate cuts of a family in enumeration order.
pub fn candidate_cuts(
    graph: &Graph<Rational>,
    family: FinderFamily,
    limits: &SearchLimits,
) -> Result<Vec<MovingCut<Rational>>> {
    let m = graph.edge_count();
    match family {
        FinderFamily::Singletons => Ok((0..m).map(|id| MovingCut::unit([id])).collect()),
        FinderFamily::Exhaustive { max_edges } => {
            let count = combinations_count(m, max_edges);
            if count > limits.candidates as u128 {
                return Err(Error::Budget {
                    what: format!("enumerating edge subsets of size ≤ {max_edges} out of {m}"),
                    bound: limits.candidates,
                });
            }
            let mut cuts = Vec::with_capacity(count as usize);
            for size in 1..=max_edges.min(m) {
                let mut chosen: Vec<usize> = (0..size).collect();
                loop {
                    cuts.push(MovingCut::unit(chosen.iter().copied()));
                    // advance to the next combination in lexicographic order
                    let Some(i) = (0..size).rev().find(|&i| chosen[i] < m - size + i) else {
                        break;
                    };
                    chosen[i] += 1;
                    for j in i + 1..size {
                        chosen[j] = chosen[j - 1] + 1;
                    }
                }
            }
            Ok(cuts)
        }
        FinderFamily::Balls => {
            let mut cuts = Vec::new();
            for center in 0..graph.vertex_count() {
                let dist = graph.distances_from(center)?;
                let mut radii: Vec<&Rational> = dist.iter().filter_map(Distance::finite).collect();
                radii.sort();
                radii.dedup();
                for radius in radii {
                    let boundary: Vec<usize> = graph
                        .edges()
                        .iter()
                        .enumerate()
                        .filter(|(_, e)| dist[e.u].at_most(radius) != dist[e.v].at_most(radius))
                        .map(|(id, _)| id)
                        .collect();
                    if !boundary.is_empty() {
                        cuts.push(MovingCut::unit(boundary));
                    }
                }
            }
            Ok(cuts)
        }
    }
}

fn check_search_parameters(h: &Rational, s: &Rational, phi: &Rational) -> Result<()> {
    if *h <= Rational::zero() {
        return Err(Error::arg("length bound h must be positive"));
    }
    if *s < Rational::from_count(2) {
        return Err(Error::arg("length slack s must be at least 2"));
    }
    if *phi <= Rational::zero() {
        return Err(Error::arg("sparsity target phi must be positive"));
    }
    Ok(())
}

/// Sparsest member of the family with sparsity `≤ φ`; ties go to the lowest
/// candidate index. Evaluations agree exactly with [`crate::sparsity`].
pub fn find_sparse_cut(
    graph: &Graph<Rational>,
    weighting: &NodeWeighting,
    h: &Rational,
    s: &Rational,
    phi: &Rational,
    family: FinderFamily,
    limits: &SearchLimits,
) -> Result<Option<FoundCut>> {
    check_search_parameters(h, s, phi)?;
    if weighting.len() != graph.vertex_count() {
        return Err(Error::arg("node-weighting does not match the graph"));
    }
    let n = graph.vertex_count();
    let threshold = h.clone() * s.clone();
    let before = graph.all_pairs_distances();
    let close: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (0..n).map(move |v| (u, v)))
        .filter(|&(u, v)| u != v && before[u][v].at_most(h) && weighting.get(u) > 0 && weighting.get(v) > 0)
        .collect();
    let candidates = candidate_cuts(graph, family, limits)?;
    if close.is_empty() {
        return Ok(None);
    }
    let mut sources: Vec<usize> = close.iter().map(|&(u, _)| u).collect();
    sources.dedup();

    let mut best: Option<FoundCut> = None;
    let evaluated = candidates.len();
    for (index, cut) in candidates.into_iter().enumerate() {
        let cut_size = cut.size(graph)?;
        if let Some(b) = &best {
            // demand-size never exceeds |A|, so a larger ratio cannot win
            if cut_size.clone() / Rational::from_count(weighting.total()) >= b.sparsity {
                continue;
            }
        }
        let cut_graph = cut.apply(graph, &threshold)?;
        let mut after: Vec<Option<Vec<Distance<Rational>>>> = vec![None; n];
        for &u in &sources {
            after[u] = Some(cut_graph.distances_from(u)?);
        }
        let pairs: Vec<(usize, usize)> = close
            .iter()
            .copied()
            .filter(|&(u, v)| after[u].as_ref().expect("source computed")[v].exceeds(&threshold))
            .collect();
        if pairs.is_empty() {
            continue;
        }
        let demand = demand_size_of_pairs(n, weighting, &pairs, WitnessMode::Standard).value;
        let Extended::Finite(sparsity) = ratio_or_infinite(&cut_size, demand) else {
            continue;
        };
        if sparsity > *phi || best.as_ref().is_some_and(|b| sparsity >= b.sparsity) {
            continue;
        }
        best = Some(FoundCut {
            cut,
            candidate: index,
            cut_size,
            demand_size: demand,
            sparsity,
            candidates_evaluated: evaluated,
        });
    }
    Ok(best)
}

/// `true` iff the family holds no `(h, s)`-length φ-sparse cut.
pub fn certify_no_sparse_cut(
    graph: &Graph<Rational>,
    weighting: &NodeWeighting,
    h: &Rational,
    s: &Rational,
    phi: &Rational,
    family: FinderFamily,
    limits: &SearchLimits,
) -> Result<bool> {
    Ok(find_sparse_cut(graph, weighting, h, s, phi, family, limits)?.is_none())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IterationLog {
    pub index: usize,
    pub candidate: usize,
    #[serde(with = "as_ratio")]
    pub cut_size: Rational,
    pub demand_size: u64,
    #[serde(with = "as_ratio")]
    pub sparsity: Rational,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DecompositionResult {
    pub finder: FinderFamily,
    #[serde(with = "as_ratio")]
    pub h: Rational,
    #[serde(with = "as_ratio")]
    pub s: Rational,
    #[serde(with = "as_ratio")]
    pub phi: Rational,
    pub weighting_total: u64,
    pub cuts: Vec<MovingCut<Rational>>,
    /// `(s/(s−1))·Σ C_i`
    pub union: MovingCut<Rational>,
    /// `Σ |C_i|`
    #[serde(with = "as_ratio")]
    pub cut_size_total: Rational,
    /// `|union| = (s/(s−1))·Σ |C_i|`
    #[serde(with = "as_ratio")]
    pub total_size: Rational,
    /// `|union| / (φ·|A|)`
    #[serde(with = "as_ratio")]
    pub slack: Rational,
    pub log: Vec<IterationLog>,
}

impl DecompositionResult {
    /// The graph after applying every cut at `h·s`.
    pub fn residual_graph(&self, graph: &Graph<Rational>) -> Result<Graph<Rational>> {
        let threshold = self.h.clone() * self.s.clone();
        self.cuts
            .iter()
            .try_fold(graph.clone(), |g, cut| cut.apply(&g, &threshold))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }
}

/// Repeatedly finds a sparse cut in the family and applies it at `h·s`,
/// until the family has none left.
pub fn build_decomposition(
    graph: &Graph<Rational>,
    weighting: &NodeWeighting,
    h: &Rational,
    s: &Rational,
    phi: &Rational,
    family: FinderFamily,
    limits: &SearchLimits,
) -> Result<DecompositionResult> {
    let run = build_decomposition_partial(graph, weighting, h, s, phi, family, limits)?;
    match run.stopped {
        Some(err) => Err(err),
        None => Ok(run.result),
    }
}

/// A decomposition run that may have stopped early on a resource limit.
#[derive(Clone, Debug, PartialEq)]
pub struct PartialDecomposition {
    /// The cuts applied so far, summarized as if the run had ended there.
    pub result: DecompositionResult,
    /// The resource error that stopped the run, if any.
    pub stopped: Option<Error>,
}

/// Like [`build_decomposition`], but a budget error mid-way returns the
/// progress made so far alongside the error. Parameter errors still fail.
pub fn build_decomposition_partial(
    graph: &Graph<Rational>,
    weighting: &NodeWeighting,
    h: &Rational,
    s: &Rational,
    phi: &Rational,
    family: FinderFamily,
    limits: &SearchLimits,
) -> Result<PartialDecomposition> {
    check_search_parameters(h, s, phi)?;
    if weighting.len() != graph.vertex_count() {
        return Err(Error::arg("node-weighting does not match the graph"));
    }
    let threshold = h.clone() * s.clone();
    let mut current = graph.clone();
    let mut cuts = Vec::new();
    let mut log = Vec::new();
    let stopped = loop {
        let found = match find_sparse_cut(&current, weighting, h, s, phi, family, limits) {
            Ok(Some(found)) => found,
            Ok(None) => break None,
            Err(err @ Error::Budget { .. }) => break Some(err),
            Err(err) => return Err(err),
        };
        if cuts.len() == limits.iterations {
            break Some(Error::Budget {
                what: format!(
                    "building a decomposition ({} cuts applied, next sparsity {})",
                    cuts.len(),
                    found.sparsity.to_ratio_string()
                ),
                bound: limits.iterations as u64,
            });
        }
        current = found.cut.apply(&current, &threshold)?;
        log.push(IterationLog {
            index: cuts.len(),
            candidate: found.candidate,
            cut_size: found.cut_size,
            demand_size: found.demand_size,
            sparsity: found.sparsity,
        });
        cuts.push(found.cut);
    };
    let cut_size_total: Rational = log.iter().map(|l| l.cut_size.clone()).sum();
    let factor = s.clone() / (s.clone() - Rational::from_count(1));
    let union = MovingCut::sum(&cuts).scaled(&factor);
    let total_size = union.size(graph)?;
    let volume = phi.clone() * Rational::from_count(weighting.total());
    let slack = if total_size.is_zero() {
        Rational::zero()
    } else {
        total_size.clone() / volume
    };
    Ok(PartialDecomposition {
        result: DecompositionResult {
            finder: family,
            h: h.clone(),
            s: s.clone(),
            phi: phi.clone(),
            weighting_total: weighting.total(),
            cuts,
            union,
            cut_size_total,
            total_size,
            slack,
            log,
        },
        stopped,
    })
}
