//! Integral maximum flow (Dinic) on small networks.

use std::collections::VecDeque;

/// Capacity treated as unbounded; large enough that no finite sum reaches it.
pub const UNBOUNDED: u64 = u64::MAX / 4;

#[derive(Clone, Debug)]
pub struct FlowNetwork {
    adjacency: Vec<Vec<usize>>,
    head: Vec<usize>,
    residual: Vec<u64>,
    original: Vec<u64>,
    level: Vec<usize>,
    cursor: Vec<usize>,
}

impl FlowNetwork {
    pub fn new(nodes: usize) -> Self {
        FlowNetwork {
            adjacency: vec![Vec::new(); nodes],
            head: Vec::new(),
            residual: Vec::new(),
            original: Vec::new(),
            level: vec![usize::MAX; nodes],
            cursor: vec![0; nodes],
        }
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    /// Adds `from → to` with the given capacity and returns the arc id.
    pub fn add_arc(&mut self, from: usize, to: usize, capacity: u64) -> usize {
        let id = self.head.len();
        self.head.push(to);
        self.residual.push(capacity);
        self.original.push(capacity);
        self.adjacency[from].push(id);
        self.head.push(from);
        self.residual.push(0);
        self.original.push(0);
        self.adjacency[to].push(id + 1);
        id
    }

    /// Flow currently routed over arc `id`.
    pub fn flow(&self, id: usize) -> u64 {
        self.original[id] - self.residual[id]
    }

    pub fn max_flow(&mut self, source: usize, sink: usize) -> u64 {
        let mut total = 0u64;
        while self.build_levels(source, sink) {
            self.cursor.fill(0);
            loop {
                let pushed = self.augment(source, sink, UNBOUNDED);
                if pushed == 0 {
                    break;
                }
                total = total.saturating_add(pushed);
            }
        }
        total
    }

    /// Nodes reachable from `source` in the residual network after `max_flow`.
    pub fn source_side(&self, source: usize) -> Vec<bool> {
        let mut seen = vec![false; self.node_count()];
        let mut queue = VecDeque::from([source]);
        seen[source] = true;
        while let Some(x) = queue.pop_front() {
            for &arc in &self.adjacency[x] {
                let y = self.head[arc];
                if self.residual[arc] > 0 && !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    fn build_levels(&mut self, source: usize, sink: usize) -> bool {
        self.level.fill(usize::MAX);
        self.level[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(x) = queue.pop_front() {
            for &arc in &self.adjacency[x] {
                let y = self.head[arc];
                if self.residual[arc] > 0 && self.level[y] == usize::MAX {
                    self.level[y] = self.level[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        self.level[sink] != usize::MAX
    }

    fn augment(&mut self, x: usize, sink: usize, limit: u64) -> u64 {
        if x == sink {
            return limit;
        }
        while self.cursor[x] < self.adjacency[x].len() {
            let arc = self.adjacency[x][self.cursor[x]];
            let y = self.head[arc];
            if self.residual[arc] > 0 && self.level[y] == self.level[x] + 1 {
                let pushed = self.augment(y, sink, limit.min(self.residual[arc]));
                if pushed > 0 {
                    self.residual[arc] -= pushed;
                    self.residual[arc ^ 1] += pushed;
                    return pushed;
                }
            }
            self.cursor[x] += 1;
        }
        0
    }
}
