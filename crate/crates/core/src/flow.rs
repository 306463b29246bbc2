//! Integer maximum flow (Dinic) with minimum-cut extraction.

use std::collections::VecDeque;

/// Capacity used for uncapacitated arcs.
pub const UNBOUNDED: u64 = u64::MAX / 4;

#[derive(Debug, Clone)]
struct Arc {
    to: usize,
    cap: u64,
}

#[derive(Debug, Clone)]
pub struct FlowNetwork {
    arcs: Vec<Arc>,
    out: Vec<Vec<usize>>,
    original: Vec<u64>,
}

impl FlowNetwork {
    pub fn new(nodes: usize) -> Self {
        Self {
            arcs: Vec::new(),
            out: vec![Vec::new(); nodes],
            original: Vec::new(),
        }
    }

    /// Adds an arc and returns its handle.
    pub fn add_arc(&mut self, from: usize, to: usize, cap: u64) -> usize {
        let id = self.arcs.len();
        self.arcs.push(Arc { to, cap });
        self.arcs.push(Arc { to: from, cap: 0 });
        self.out[from].push(id);
        self.out[to].push(id + 1);
        self.original.push(cap);
        self.original.push(0);
        id
    }

    /// Flow currently routed through the arc `handle`.
    pub fn flow(&self, handle: usize) -> u64 {
        self.original[handle] - self.arcs[handle].cap
    }

    pub fn max_flow(&mut self, source: usize, sink: usize) -> u64 {
        let n = self.out.len();
        let mut total = 0;
        let mut level = vec![usize::MAX; n];
        let mut next = vec![0usize; n];
        loop {
            level.iter_mut().for_each(|l| *l = usize::MAX);
            level[source] = 0;
            let mut queue = VecDeque::from([source]);
            while let Some(u) = queue.pop_front() {
                for &a in &self.out[u] {
                    let Arc { to, cap } = self.arcs[a];
                    if cap > 0 && level[to] == usize::MAX {
                        level[to] = level[u] + 1;
                        queue.push_back(to);
                    }
                }
            }
            if level[sink] == usize::MAX {
                return total;
            }
            next.iter_mut().for_each(|c| *c = 0);
            loop {
                let pushed = self.blocking_path(source, sink, &level, &mut next);
                if pushed == 0 {
                    break;
                }
                total += pushed;
            }
        }
    }

    /// Finds one augmenting path in the level graph and saturates it.
    fn blocking_path(&mut self, source: usize, sink: usize, level: &[usize], next: &mut [usize]) -> u64 {
        let mut path: Vec<usize> = Vec::new();
        let mut u = source;
        loop {
            if u == sink {
                let bottleneck = path.iter().map(|&a| self.arcs[a].cap).min().unwrap_or(0);
                for &a in &path {
                    self.arcs[a].cap -= bottleneck;
                    self.arcs[a ^ 1].cap += bottleneck;
                }
                return bottleneck;
            }
            let mut advanced = false;
            while next[u] < self.out[u].len() {
                let a = self.out[u][next[u]];
                let Arc { to, cap } = self.arcs[a];
                if cap > 0 && level[to] == level[u] + 1 {
                    path.push(a);
                    u = to;
                    advanced = true;
                    break;
                }
                next[u] += 1;
            }
            if !advanced {
                // Dead end: retreat and never try this vertex again this phase.
                match path.pop() {
                    Some(a) => {
                        u = self.arcs[a ^ 1].to;
                        next[u] += 1;
                    }
                    None => return 0,
                }
            }
        }
    }

    /// Vertices reachable from `source` in the residual network. After
    /// [`max_flow`](Self::max_flow) this is the source side of a minimum cut.
    pub fn source_side(&self, source: usize) -> Vec<bool> {
        let mut seen = vec![false; self.out.len()];
        seen[source] = true;
        let mut stack = vec![source];
        while let Some(u) = stack.pop() {
            for &a in &self.out[u] {
                let Arc { to, cap } = self.arcs[a];
                if cap > 0 && !seen[to] {
                    seen[to] = true;
                    stack.push(to);
                }
            }
        }
        seen
    }
}
