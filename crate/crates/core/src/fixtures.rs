//! Named small instances and seeded random corpora.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cut::MovingCut;
use crate::decomposition::{build_decomposition, FinderFamily, SearchLimits};
use crate::error::Result;
use crate::graph::{Edge, Graph, NodeWeighting};
use crate::scalar::{ratio, Scalar};
use crate::Rational;

/// Graph plus the parameters of one `(h, s)`-length φ-sparsity question.
#[derive(Clone, Debug, PartialEq)]
pub struct CutInstance {
    pub graph: Graph<Rational>,
    pub weighting: NodeWeighting,
    pub h: Rational,
    pub s: Rational,
    pub phi: Rational,
}

/// Independent per-instance seed derived from a master seed.
pub fn instance_seed(master: u64, index: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    rng.set_stream(index);
    rng.next_u64()
}

pub fn path(n: usize) -> Graph<Rational> {
    let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_unit_edges(n, &pairs).expect("path is valid")
}

pub fn complete(n: usize) -> Graph<Rational> {
    let pairs: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    Graph::from_unit_edges(n, &pairs).expect("complete graph is valid")
}

/// Edge id of the bridge in [`dumbbell`].
pub const DUMBBELL_BRIDGE: usize = 3;

/// Two capacity-2 triangles joined by a capacity-1 bridge, degree weighting,
/// `h = 1`, `s = 2`, `φ = 1/5`. Cutting the bridge has sparsity `1/10`;
/// every cut inside a triangle costs at least `1/2`.
pub fn dumbbell() -> CutInstance {
    let one = ratio(1, 1);
    let edges = [(0, 1, 2), (0, 2, 2), (1, 2, 2), (2, 3, 1), (3, 4, 2), (3, 5, 2), (4, 5, 2)]
        .into_iter()
        .map(|(u, v, c)| Edge::new(u, v, one.clone(), c))
        .collect();
    let graph = Graph::new(6, edges).expect("dumbbell is valid");
    CutInstance {
        weighting: graph.degree_weighting(),
        graph,
        h: ratio(1, 1),
        s: ratio(2, 1),
        phi: ratio(1, 5),
    }
}

/// `K_4` with degree weighting, `h = 1`, `s = 2`, `φ = 1/3`: the cheapest
/// separating cut isolates a vertex at sparsity `1/2`.
pub fn expander() -> CutInstance {
    let graph = complete(4);
    CutInstance {
        weighting: graph.degree_weighting(),
        graph,
        h: ratio(1, 1),
        s: ratio(2, 1),
        phi: ratio(1, 3),
    }
}

/// Connected random graph: a random tree plus each further pair with
/// probability `extra`, lengths in `{1, 3/2, 2}`, capacities in `{1, 2}`.
pub fn random_connected_graph(rng: &mut impl Rng, n: usize, extra: f64) -> Graph<Rational> {
    let lengths = [ratio(1, 1), ratio(3, 2), ratio(2, 1)];
    let mut edges = Vec::new();
    let mut push = |rng: &mut dyn RngCore, u: usize, v: usize| {
        let length = lengths[rng.random_range(0..lengths.len())].clone();
        edges.push(Edge::new(u, v, length, rng.random_range(1..=2)));
    };
    let mut tree = vec![false; n * n];
    for v in 1..n {
        let u = rng.random_range(0..v);
        tree[u * n + v] = true;
        push(rng, u, v);
    }
    for u in 0..n {
        for v in u + 1..n {
            if !tree[u * n + v] && rng.random_bool(extra) {
                push(rng, u, v);
            }
        }
    }
    Graph::new(n, edges).expect("generated edges are valid")
}

/// Weighting with each `A(v)` uniform in `0..=min(deg(v), cap)`.
pub fn random_weighting(rng: &mut impl Rng, graph: &Graph<Rational>, cap: u64) -> NodeWeighting {
    let weights = (0..graph.vertex_count())
        .map(|v| rng.random_range(0..=graph.degree(v).min(cap)))
        .collect();
    NodeWeighting::new(graph, weights).expect("weights within degree")
}

/// Random small instance (`3 ≤ n ≤ max_n`) with `s ∈ {2, …, 5}`.
pub fn random_cut_instance(seed: u64, max_n: usize) -> CutInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(3..=max_n.max(3));
    let graph = random_connected_graph(&mut rng, n, 0.35);
    let weighting = if rng.random_bool(0.5) {
        graph.degree_weighting()
    } else {
        random_weighting(&mut rng, &graph, 3)
    };
    let h = [ratio(1, 1), ratio(3, 2), ratio(2, 1), ratio(3, 1)][rng.random_range(0..4)].clone();
    let s = Rational::from_count(rng.random_range(2..=5));
    let phi = [ratio(1, 4), ratio(1, 2), ratio(1, 1), ratio(2, 1)][rng.random_range(0..4)].clone();
    CutInstance {
        graph,
        weighting,
        h,
        s,
        phi,
    }
}

/// Random instance plus a fractional cut for demand-size cross-checks:
/// `n ≤ max_n`, `|A| ≤ max_weight`, cut values in `{1/2, 1, 3/2}`.
pub fn random_demand_instance(seed: u64, max_n: usize, max_weight: u64) -> (CutInstance, MovingCut<Rational>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(2..=max_n.max(2));
    let graph = random_connected_graph(&mut rng, n, 0.3);
    let mut weights = vec![0u64; n];
    let mut left = max_weight;
    let mut order: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        order.swap(i, rng.random_range(0..=i));
    }
    for v in order {
        let w = rng.random_range(0..=graph.degree(v).min(left).min(3));
        weights[v] = w;
        left -= w;
    }
    let weighting = NodeWeighting::new(&graph, weights).expect("weights within degree");
    let values = [ratio(1, 2), ratio(1, 1), ratio(3, 2)];
    let mut entries = Vec::new();
    for id in 0..graph.edge_count() {
        if rng.random_bool(0.4) {
            entries.push((id, values[rng.random_range(0..values.len())].clone()));
        }
    }
    let cut = MovingCut::from_entries(entries);
    let h = [ratio(1, 1), ratio(2, 1), ratio(5, 2)][rng.random_range(0..3)].clone();
    let s = Rational::from_count(rng.random_range(2..=4));
    (
        CutInstance {
            graph,
            weighting,
            h,
            s,
            phi: ratio(1, 1),
        },
        cut,
    )
}

/// Instance together with a non-empty sparse cut sequence found by the
/// decomposition loop; the finder family is drawn with the instance.
#[derive(Clone, Debug, PartialEq)]
pub struct SequenceInstance {
    pub instance: CutInstance,
    pub family: FinderFamily,
    pub cuts: Vec<MovingCut<Rational>>,
    /// Derived seed that produced the instance.
    pub seed: u64,
}

/// Draws instances from `seed` until the decomposition loop produces at
/// least one cut (or `attempts` run out, returning the last empty one).
pub fn random_sequence_instance(seed: u64, max_n: usize, attempts: u64) -> Result<SequenceInstance> {
    let families = [
        FinderFamily::Singletons,
        FinderFamily::Balls,
        FinderFamily::Exhaustive { max_edges: 2 },
    ];
    let limits = SearchLimits::default();
    let mut last = None;
    for attempt in 0..attempts.max(1) {
        let derived = instance_seed(seed, attempt);
        let instance = random_cut_instance(derived, max_n);
        let family = families[(derived % families.len() as u64) as usize];
        let result = build_decomposition(
            &instance.graph,
            &instance.weighting,
            &instance.h,
            &instance.s,
            &instance.phi,
            family,
            &limits,
        )?;
        let found = SequenceInstance {
            instance,
            family,
            cuts: result.cuts,
            seed: derived,
        };
        if !found.cuts.is_empty() {
            return Ok(found);
        }
        last = Some(found);
    }
    Ok(last.expect("at least one attempt"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_are_reproducible_and_distinct() {
        assert_eq!(instance_seed(7, 3), instance_seed(7, 3));
        assert_ne!(instance_seed(7, 3), instance_seed(7, 4));
        assert_ne!(instance_seed(7, 3), instance_seed(8, 3));
    }

    #[test]
    fn random_graphs_are_connected() {
        for seed in 0..50 {
            let inst = random_cut_instance(seed, 7);
            let dist = inst.graph.distances_from(0).unwrap();
            assert!(dist.iter().all(|d| d.is_finite()));
            assert_eq!(inst, random_cut_instance(seed, 7));
        }
    }

    #[test]
    fn demand_instances_respect_weight_budget() {
        for seed in 0..50 {
            let (inst, cut) = random_demand_instance(seed, 7, 10);
            assert!(inst.weighting.total() <= 10);
            assert!(inst.graph.vertex_count() <= 7);
            cut.check_edges(&inst.graph).unwrap();
        }
    }

    #[test]
    fn sequence_instances_are_mostly_non_empty() {
        let non_empty = (0..20)
            .filter(|&seed| !random_sequence_instance(seed, 7, 8).unwrap().cuts.is_empty())
            .count();
        assert!(non_empty >= 18, "{non_empty}");
    }
}
