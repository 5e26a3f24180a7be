//! Demands on ordered vertex pairs.

use std::collections::BTreeMap;

use crate::cut::MovingCut;
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeWeighting};
use crate::scalar::Scalar;

/// Sparse map from ordered pairs `(u, v)` to positive integers.
///
/// Zero entries are never stored, so `support()` is exactly the set of pairs
/// with positive demand.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Demand {
    entries: BTreeMap<(usize, usize), u64>,
}

impl Demand {
    pub fn new() -> Self {
        Demand::default()
    }

    /// Sums repeated pairs; zero values are dropped.
    pub fn from_entries(entries: impl IntoIterator<Item = ((usize, usize), u64)>) -> Self {
        let mut d = Demand::new();
        for ((u, v), value) in entries {
            d.add(u, v, value);
        }
        d
    }

    pub fn add(&mut self, u: usize, v: usize, value: u64) {
        if value > 0 {
            *self.entries.entry((u, v)).or_insert(0) += value;
        }
    }

    pub fn get(&self, u: usize, v: usize) -> u64 {
        self.entries.get(&(u, v)).copied().unwrap_or(0)
    }

    /// Entries in ascending `(u, v)` order.
    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), u64)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub fn support(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.entries.keys().copied()
    }

    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `|D|`
    pub fn size(&self) -> u64 {
        self.entries.values().sum()
    }

    /// Row sums `Σ_w D(v, w)` for `v < n`.
    pub fn out_sums(&self, n: usize) -> Vec<u64> {
        let mut sums = vec![0; n];
        for (&(u, _), &value) in &self.entries {
            if u < n {
                sums[u] += value;
            }
        }
        sums
    }

    /// Column sums `Σ_w D(w, v)` for `v < n`.
    pub fn in_sums(&self, n: usize) -> Vec<u64> {
        let mut sums = vec![0; n];
        for (&(_, v), &value) in &self.entries {
            if v < n {
                sums[v] += value;
            }
        }
        sums
    }

    /// `Σ_w D(v, w) + D(w, v)` for every `v < n`; a self-pair counts twice.
    pub fn combined_incidence(&self, n: usize) -> Vec<u64> {
        let out = self.out_sums(n);
        let inn = self.in_sums(n);
        out.into_iter().zip(inn).map(|(a, b)| a + b).collect()
    }

    /// Fold onto unordered pairs: `(min, max) ↦ D(u, v) + D(v, u)`.
    pub fn canonical(&self) -> Demand {
        Demand::from_entries(
            self.iter()
                .map(|((u, v), value)| ((u.min(v), u.max(v)), value)),
        )
    }

    pub fn check_vertices(&self, n: usize) -> Result<()> {
        match self.support().find(|&(u, v)| u >= n || v >= n) {
            Some((u, v)) => Err(Error::arg(format!(
                "demand pair ({u}, {v}) references a vertex outside 0..{n}"
            ))),
            None => Ok(()),
        }
    }

    /// Every support pair is within distance `h`.
    pub fn is_h_length<S: Scalar>(&self, graph: &Graph<S>, h: &S) -> Result<bool> {
        if h.is_negative() {
            return Err(Error::arg("length bound h must be non-negative"));
        }
        self.check_vertices(graph.vertex_count())?;
        let mut current = None;
        for (u, v) in self.support() {
            if current.as_ref().is_none_or(|(src, _)| *src != u) {
                current = Some((u, graph.distances_from(u)?));
            }
            let (_, dist) = current.as_ref().expect("just filled");
            if !dist[v].at_most(h) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `max(row sum, column sum) ≤ A(v)` everywhere; vertices outside the
    /// weighting have weight zero.
    pub fn is_a_respecting(&self, weighting: &NodeWeighting) -> bool {
        let n = self
            .support()
            .map(|(u, v)| u.max(v) + 1)
            .max()
            .unwrap_or(0)
            .max(weighting.len());
        let out = self.out_sums(n);
        let inn = self.in_sums(n);
        (0..n).all(|v| {
            let cap = if v < weighting.len() { weighting.get(v) } else { 0 };
            out[v].max(inn[v]) <= cap
        })
    }

    /// Total demand between pairs whose distance in `G − C_h` exceeds `h`.
    pub fn separated_amount<S: Scalar>(
        &self,
        graph: &Graph<S>,
        cut: &MovingCut<S>,
        h: &S,
    ) -> Result<u64> {
        if *h <= S::zero() {
            return Err(Error::arg("separation threshold h must be positive"));
        }
        self.check_vertices(graph.vertex_count())?;
        let cut_graph = cut.apply(graph, h)?;
        let mut total = 0;
        let mut current = None;
        for ((u, v), value) in self.iter() {
            if current.as_ref().is_none_or(|(src, _)| *src != u) {
                current = Some((u, cut_graph.distances_from(u)?));
            }
            let (_, dist) = current.as_ref().expect("just filled");
            if dist[v].exceeds(h) {
                total += value;
            }
        }
        Ok(total)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Edge;
    use crate::scalar::{ratio, Extended};
    use crate::Rational;
    use proptest::prelude::*;

    fn unit_edge() -> Graph<Rational> {
        Graph::from_unit_edges(2, &[(0, 1)]).unwrap()
    }

    #[test]
    fn zero_entries_are_dropped() {
        let d = Demand::from_entries([((0, 1), 0), ((1, 2), 2), ((1, 2), 1)]);
        assert_eq!(d.support_len(), 1);
        assert_eq!(d.get(1, 2), 3);
        assert_eq!(d.size(), 3);
    }

    #[test]
    fn canonical_folds_orientations() {
        let d = Demand::from_entries([((2, 0), 1), ((0, 2), 2), ((1, 1), 1)]);
        let c = d.canonical();
        assert_eq!(c.get(0, 2), 3);
        assert_eq!(c.get(2, 0), 0);
        assert_eq!(c.get(1, 1), 1);
        assert_eq!(d.combined_incidence(3), vec![3, 2, 3]);
    }

    #[test]
    fn h_length_examples() {
        let g = unit_edge();
        assert!(Demand::new().is_h_length(&g, &ratio(0, 1)).unwrap());
        let d = Demand::from_entries([((0, 1), 1)]);
        assert!(d.is_h_length(&g, &ratio(1, 1)).unwrap());
        assert!(!d.is_h_length(&g, &ratio(1, 2)).unwrap());
        let bad = Demand::from_entries([((0, 5), 1)]);
        assert!(bad.is_h_length(&g, &ratio(1, 1)).is_err());
    }

    #[test]
    fn a_respecting_examples() {
        let g = unit_edge();
        let a = NodeWeighting::new(&g, vec![1, 1]).unwrap();
        assert!(Demand::new().is_a_respecting(&a));
        let g3: Graph<Rational> = Graph::new(
            2,
            vec![Edge::new(0, 1, ratio(1, 1), 3)],
        )
        .unwrap();
        let a2 = NodeWeighting::new(&g3, vec![2, 3]).unwrap();
        assert!(!Demand::from_entries([((0, 1), 3)]).is_a_respecting(&a2));
        assert!(Demand::from_entries([((0, 1), 2), ((1, 0), 2)]).is_a_respecting(&a2));
        // vertices beyond the weighting carry weight zero
        assert!(!Demand::from_entries([((0, 4), 1)]).is_a_respecting(&a));
    }

    #[test]
    fn separated_amount_examples() {
        let g = unit_edge();
        let d = Demand::from_entries([((0, 1), 1)]);
        let zero = MovingCut::zero();
        assert_eq!(d.separated_amount(&g, &zero, &ratio(1, 1)).unwrap(), 0);
        let cut = MovingCut::from_entries([(0, ratio(1, 1))]);
        assert_eq!(d.separated_amount(&g, &cut, &ratio(1, 1)).unwrap(), 1);
        assert!(d.separated_amount(&g, &cut, &ratio(0, 1)).is_err());
    }

    fn arb_instance() -> impl Strategy<Value = (Graph<Rational>, Demand, MovingCut<Rational>, Rational)> {
        (2usize..=8).prop_flat_map(|n| {
            let edges = prop::collection::vec((0..n, 0..n, 0i64..4, 1i64..3), 1..(2 * n));
            let demand = prop::collection::vec(((0..n, 0..n), 1u64..4), 0..8);
            let cut = prop::collection::vec((0usize..32, 0i64..4, 1i64..3), 0..4);
            (edges, demand, cut, 1i64..8).prop_map(move |(edges, demand, cut, h)| {
                let mut edges: Vec<_> = edges
                    .into_iter()
                    .filter(|(u, v, ..)| u != v)
                    .map(|(u, v, a, b)| Edge::new(u, v, ratio(a, b), 1))
                    .collect();
                if edges.is_empty() {
                    edges.push(Edge::new(0, 1, ratio(1, 1), 1));
                }
                let m = edges.len();
                let g = Graph::new(n, edges).unwrap();
                let c = MovingCut::from_entries(cut.into_iter().map(|(e, a, b)| (e % m, ratio(a, b))));
                (g, Demand::from_entries(demand), c, ratio(h, 2))
            })
        })
    }

    // Brute-force per-pair test on a graph rebuilt by hand.
    fn separated_oracle(g: &Graph<Rational>, d: &Demand, c: &MovingCut<Rational>, h: &Rational) -> u64 {
        let lengths: Vec<Rational> = g
            .edges()
            .iter()
            .enumerate()
            .map(|(id, e)| e.length.clone() + h.clone() * c.value(id))
            .collect();
        let rebuilt = g.with_lengths(lengths).unwrap();
        d.iter()
            .filter(|((u, v), _)| match rebuilt.distance(*u, *v).unwrap() {
                Extended::Finite(x) => x > *h,
                Extended::Infinite => true,
            })
            .map(|(_, value)| value)
            .sum()
    }

    proptest! {
        #[test]
        fn separated_amount_matches_oracle((g, d, c, h) in arb_instance()) {
            prop_assert_eq!(d.separated_amount(&g, &c, &h).unwrap(), separated_oracle(&g, &d, &c, &h));
        }

        #[test]
        fn separated_amount_monotone_and_bounded((g, d, c, h) in arb_instance(), extra in 0usize..32) {
            let base = d.separated_amount(&g, &c, &h).unwrap();
            prop_assert!(base <= d.size());
            let mut bigger = c.clone();
            bigger.add(extra % g.edge_count(), ratio(1, 2));
            prop_assert!(d.separated_amount(&g, &bigger, &h).unwrap() >= base);
        }

        #[test]
        fn h_length_matches_distance_filter((g, d, _c, h) in arb_instance()) {
            let apsp = g.all_pairs_distances();
            let expected = d.support().all(|(u, v)| apsp[u][v].at_most(&h));
            prop_assert_eq!(d.is_h_length(&g, &h).unwrap(), expected);
        }

        #[test]
        fn a_respecting_matches_recount(
            weights in prop::collection::vec(0u64..4, 1..8),
            raw in prop::collection::vec(((0usize..8, 0usize..8), 1u64..3), 0..8),
        ) {
            let n = weights.len();
            // a clique with capacity 4 so any weight ≤ 3 is admissible
            let pairs: Vec<Edge<Rational>> = (0..n)
                .flat_map(|u| ((u + 1)..n).map(move |v| Edge::new(u, v, ratio(1, 1), 4)))
                .collect();
            let g = Graph::new(n, pairs).unwrap();
            let weights = if n == 1 { vec![0] } else { weights };
            let a = NodeWeighting::new(&g, weights.clone()).unwrap();
            let d = Demand::from_entries(raw.into_iter().filter(|((u, v), _)| *u < n && *v < n));
            let mut ok = true;
            for (v, &weight) in weights.iter().enumerate().take(n) {
                let row: u64 = (0..n).map(|w| d.get(v, w)).sum();
                let col: u64 = (0..n).map(|w| d.get(w, v)).sum();
                ok &= row <= weight && col <= weight;
            }
            prop_assert_eq!(d.is_a_respecting(&a), ok);
        }
    }
}
