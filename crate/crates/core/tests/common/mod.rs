//! Independent oracles: no shortest-path, flow or matching code from the
//! library is used here.

#![allow(dead_code)]

use lcx_core::{Graph, MovingCut, NodeWeighting, Rational};

/// Floyd–Warshall with `None` as infinity; lengths are `ℓ + shift·C`.
pub fn floyd_warshall(graph: &Graph<Rational>, cut: &MovingCut, shift: &Rational) -> Vec<Vec<Option<Rational>>> {
    let n = graph.vertex_count();
    let mut d: Vec<Vec<Option<Rational>>> = vec![vec![None; n]; n];
    for (v, row) in d.iter_mut().enumerate() {
        row[v] = Some(Rational::from_integer(0.into()));
    }
    for (id, e) in graph.edges().iter().enumerate() {
        let len = e.length.clone() + shift.clone() * cut.value(id);
        for (a, b) in [(e.u, e.v), (e.v, e.u)] {
            if d[a][b].as_ref().is_none_or(|cur| len < *cur) {
                d[a][b] = Some(len.clone());
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if let (Some(a), Some(b)) = (d[i][k].clone(), d[k][j].clone()) {
                    let via = a + b;
                    if d[i][j].as_ref().is_none_or(|cur| via < *cur) {
                        d[i][j] = Some(via);
                    }
                }
            }
        }
    }
    d
}

fn within(d: &Option<Rational>, bound: &Rational) -> bool {
    d.as_ref().is_some_and(|x| x <= bound)
}

/// Ordered pairs within `length_bound` before and beyond `threshold` after.
pub fn oracle_pairs(
    graph: &Graph<Rational>,
    cut: &MovingCut,
    length_bound: &Rational,
    threshold: &Rational,
) -> Vec<(usize, usize)> {
    let zero = Rational::from_integer(0.into());
    let before = floyd_warshall(graph, cut, &zero);
    let after = floyd_warshall(graph, cut, threshold);
    let n = graph.vertex_count();
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && within(&before[u][v], length_bound) && !within(&after[u][v], threshold) {
                pairs.push((u, v));
            }
        }
    }
    pairs
}

/// Largest integer demand on `pairs` with row and column sums `≤ A(v)`
/// (`combined = false`) or row + column `≤ A(v)` (`combined = true`, pairs
/// taken unordered), by exhaustive branch and bound.
pub fn oracle_max_demand(weighting: &NodeWeighting, pairs: &[(usize, usize)], combined: bool) -> u64 {
    let n = weighting.len();
    let pairs: Vec<(usize, usize)> = if combined {
        let mut p: Vec<_> = pairs.iter().filter(|&&(u, v)| u < v).copied().collect();
        p.dedup();
        p
    } else {
        pairs.to_vec()
    };
    let mut out_left: Vec<u64> = (0..n).map(|v| weighting.get(v)).collect();
    let mut in_left = out_left.clone();
    let mut best = 0;
    search(&pairs, 0, 0, &mut out_left, &mut in_left, combined, &mut best);
    best
}

fn bound(pairs: &[(usize, usize)], out_left: &[u64], in_left: &[u64], combined: bool) -> u64 {
    let mut sources = vec![false; out_left.len()];
    let mut targets = vec![false; out_left.len()];
    for &(u, v) in pairs {
        sources[u] = true;
        targets[v] = true;
        if combined {
            sources[v] = true;
        }
    }
    let out: u64 = (0..out_left.len()).filter(|&v| sources[v]).map(|v| out_left[v]).sum();
    if combined {
        return out / 2;
    }
    let inn: u64 = (0..in_left.len()).filter(|&v| targets[v]).map(|v| in_left[v]).sum();
    out.min(inn)
}

fn search(
    pairs: &[(usize, usize)],
    index: usize,
    value: u64,
    out_left: &mut Vec<u64>,
    in_left: &mut Vec<u64>,
    combined: bool,
    best: &mut u64,
) {
    *best = (*best).max(value);
    if index == pairs.len() || value + bound(&pairs[index..], out_left, in_left, combined) <= *best {
        return;
    }
    let (u, v) = pairs[index];
    // in combined mode both endpoints draw from out_left
    let cap = if combined {
        out_left[u].min(out_left[v])
    } else {
        out_left[u].min(in_left[v])
    };
    for x in (0..=cap).rev() {
        out_left[u] -= x;
        if combined {
            out_left[v] -= x;
        } else {
            in_left[v] -= x;
        }
        search(pairs, index + 1, value + x, out_left, in_left, combined, best);
        out_left[u] += x;
        if combined {
            out_left[v] += x;
        } else {
            in_left[v] += x;
        }
    }
}
