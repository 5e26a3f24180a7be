//! Plain-text formats. Blank lines and lines starting with `#` are ignored
//! everywhere; rationals are written `num/den` and parsed from either
//! `num/den` or a bare integer. `dump_*` followed by `parse_*` reproduces the
//! value exactly.
//!
//! ```text
//! graph:      n m            then m lines   u v length capacity
//! weighting:  n integers     or the word    deg
//! demand:     lines          u v value
//! cut:        lines          edge value
//! sequence:   n k            then per matching `i count` and count lines `u v`
//! forests:    one line of edge ids per forest
//! ```

use std::str::FromStr;

use crate::arboricity::ForestCover;
use crate::cut::MovingCut;
use crate::demand::Demand;
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, NodeWeighting};
use crate::parallel_greedy::MatchingSequence;
use crate::scalar::Scalar;

/// Non-empty, non-comment lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            None
        } else {
            Some((i + 1, trimmed.split_whitespace().collect()))
        }
    })
}

fn field<T: FromStr>(line: usize, token: &str, what: &str) -> Result<T> {
    token
        .parse()
        .map_err(|_| Error::parse(line, format!("expected {what}, found {token:?}")))
}

fn arity(line: usize, tokens: &[&str], expected: usize, what: &str) -> Result<()> {
    if tokens.len() == expected {
        Ok(())
    } else {
        Err(Error::parse(
            line,
            format!("{what} needs {expected} fields, found {}", tokens.len()),
        ))
    }
}

fn scalar<S: Scalar>(line: usize, token: &str) -> Result<S> {
    S::parse_ratio(token).ok_or_else(|| Error::parse(line, format!("expected a rational, found {token:?}")))
}

/// Re-tags structural errors found after parsing with the header line.
fn at_line<T>(line: usize, result: Result<T>) -> Result<T> {
    result.map_err(|e| match e {
        Error::Parse { .. } => e,
        other => Error::parse(line, other.to_string()),
    })
}

pub fn parse_graph<S: Scalar>(text: &str) -> Result<Graph<S>> {
    let mut lines = content_lines(text);
    let (header_line, header) = lines.next().ok_or_else(|| Error::parse(1, "missing `n m` header"))?;
    arity(header_line, &header, 2, "graph header")?;
    let n: usize = field(header_line, header[0], "vertex count")?;
    let m: usize = field(header_line, header[1], "edge count")?;
    let mut edges = Vec::with_capacity(m);
    let mut last = header_line;
    for (line, tokens) in lines {
        if edges.len() == m {
            return Err(Error::parse(line, format!("more than the declared {m} edges")));
        }
        arity(line, &tokens, 4, "edge")?;
        let u: usize = field(line, tokens[0], "vertex")?;
        let v: usize = field(line, tokens[1], "vertex")?;
        let length: S = scalar(line, tokens[2])?;
        let capacity: u64 = field(line, tokens[3], "capacity")?;
        // validate edge by edge so the error points at the offending line
        at_line(line, Graph::<S>::new(n, vec![Edge::new(u, v, length.clone(), capacity)]))?;
        edges.push(Edge::new(u, v, length, capacity));
        last = line;
    }
    if edges.len() != m {
        return Err(Error::parse(last, format!("declared {m} edges, found {}", edges.len())));
    }
    at_line(header_line, Graph::new(n, edges))
}

pub fn dump_graph<S: Scalar>(graph: &Graph<S>) -> String {
    let mut out = format!("{} {}\n", graph.vertex_count(), graph.edge_count());
    for e in graph.edges() {
        out.push_str(&format!("{} {} {} {}\n", e.u, e.v, e.length.to_ratio_string(), e.capacity));
    }
    out
}

/// Either `n` whitespace-separated weights or `deg` for the degree weighting.
pub fn parse_weighting<S: Scalar>(text: &str, graph: &Graph<S>) -> Result<NodeWeighting> {
    let tokens: Vec<(usize, &str)> = content_lines(text)
        .flat_map(|(line, tokens)| tokens.into_iter().map(move |t| (line, t)))
        .collect();
    if let [(_, "deg")] = tokens.as_slice() {
        return Ok(graph.degree_weighting());
    }
    let weights = tokens
        .iter()
        .map(|&(line, t)| field(line, t, "weight"))
        .collect::<Result<Vec<u64>>>()?;
    let line = tokens.last().map_or(1, |&(line, _)| line);
    at_line(line, NodeWeighting::new(graph, weights))
}

pub fn dump_weighting(weighting: &NodeWeighting) -> String {
    let words: Vec<String> = weighting.weights().iter().map(u64::to_string).collect();
    words.join(" ") + "\n"
}

pub fn parse_demand(text: &str) -> Result<Demand> {
    let mut demand = Demand::new();
    for (line, tokens) in content_lines(text) {
        arity(line, &tokens, 3, "demand entry")?;
        let u = field(line, tokens[0], "vertex")?;
        let v = field(line, tokens[1], "vertex")?;
        if u == v {
            return Err(Error::parse(line, format!("demand from {u} to itself")));
        }
        if demand.get(u, v) > 0 {
            return Err(Error::parse(line, format!("pair ({u}, {v}) listed twice")));
        }
        demand.add(u, v, field(line, tokens[2], "demand value")?);
    }
    Ok(demand)
}

pub fn dump_demand(demand: &Demand) -> String {
    demand
        .iter()
        .map(|((u, v), value)| format!("{u} {v} {value}\n"))
        .collect()
}

pub fn parse_cut<S: Scalar>(text: &str) -> Result<MovingCut<S>> {
    let mut entries = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for (line, tokens) in content_lines(text) {
        arity(line, &tokens, 2, "cut entry")?;
        let id: usize = field(line, tokens[0], "edge id")?;
        if !seen.insert(id) {
            return Err(Error::parse(line, format!("edge {id} listed twice")));
        }
        let value: S = scalar(line, tokens[1])?;
        if value.is_negative() {
            return Err(Error::parse(line, format!("negative cut value on edge {id}")));
        }
        entries.push((id, value));
    }
    Ok(MovingCut::from_entries(entries))
}

pub fn dump_cut<S: Scalar>(cut: &MovingCut<S>) -> String {
    cut.iter()
        .map(|(id, value)| format!("{id} {}\n", value.to_ratio_string()))
        .collect()
}

pub fn parse_matching_sequence(text: &str) -> Result<MatchingSequence> {
    let mut lines = content_lines(text);
    let (header_line, header) = lines.next().ok_or_else(|| Error::parse(1, "missing `n k` header"))?;
    arity(header_line, &header, 2, "sequence header")?;
    let n: usize = field(header_line, header[0], "vertex count")?;
    let k: usize = field(header_line, header[1], "matching count")?;
    let mut matchings = Vec::with_capacity(k);
    let mut last = header_line;
    while matchings.len() < k {
        let (line, tokens) = lines
            .next()
            .ok_or_else(|| Error::parse(last, format!("declared {k} matchings, found {}", matchings.len())))?;
        arity(line, &tokens, 2, "matching header")?;
        let index: usize = field(line, tokens[0], "matching index")?;
        if index != matchings.len() + 1 {
            return Err(Error::parse(
                line,
                format!("expected matching {}, found {index}", matchings.len() + 1),
            ));
        }
        let count: usize = field(line, tokens[1], "edge count")?;
        let mut edges = Vec::with_capacity(count);
        last = line;
        for _ in 0..count {
            let (line, tokens) = lines
                .next()
                .ok_or_else(|| Error::parse(last, format!("matching {index} ends early")))?;
            arity(line, &tokens, 2, "matched pair")?;
            edges.push((field(line, tokens[0], "vertex")?, field(line, tokens[1], "vertex")?));
            last = line;
        }
        matchings.push(edges);
    }
    if let Some((line, _)) = lines.next() {
        return Err(Error::parse(line, format!("content after the declared {k} matchings")));
    }
    at_line(header_line, MatchingSequence::new(n, matchings))
}

pub fn dump_matching_sequence(seq: &MatchingSequence) -> String {
    let mut out = format!("{} {}\n", seq.vertex_count(), seq.matching_count());
    for (i, matching) in seq.matchings().iter().enumerate() {
        out.push_str(&format!("{} {}\n", i + 1, matching.len()));
        for (u, v) in matching {
            out.push_str(&format!("{u} {v}\n"));
        }
    }
    out
}

pub fn parse_forest_cover(text: &str) -> Result<ForestCover> {
    let forests = content_lines(text)
        .map(|(line, tokens)| tokens.iter().map(|t| field(line, t, "edge id")).collect())
        .collect::<Result<Vec<Vec<usize>>>>()?;
    Ok(ForestCover { forests })
}

pub fn dump_forest_cover(cover: &ForestCover) -> String {
    cover.dump()
}
