//! Maximum cardinality matching in bipartite graphs (Hopcroft–Karp).

use std::collections::VecDeque;

const NIL: usize = usize::MAX;

/// A bipartite graph with `left` and `right` vertices numbered from zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    right: usize,
    adj: Vec<Vec<usize>>,
}

/// A matching, stored from both sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    pub mate_left: Vec<Option<usize>>,
    pub mate_right: Vec<Option<usize>>,
}

impl Matching {
    pub fn size(&self) -> usize {
        self.mate_left.iter().filter(|m| m.is_some()).count()
    }

    /// Matched pairs `(left, right)` in increasing order of the left vertex.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.mate_left
            .iter()
            .enumerate()
            .filter_map(|(l, m)| m.map(|r| (l, r)))
            .collect()
    }
}

impl BipartiteGraph {
    pub fn new(left: usize, right: usize) -> Self {
        Self {
            right,
            adj: vec![Vec::new(); left],
        }
    }

    pub fn from_edges(left: usize, right: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Self::new(left, right);
        for &(l, r) in edges {
            g.add_edge(l, r);
        }
        g
    }

    pub fn add_edge(&mut self, l: usize, r: usize) {
        assert!(l < self.adj.len() && r < self.right, "edge ({l}, {r}) out of range");
        self.adj[l].push(r);
    }

    pub fn left_len(&self) -> usize {
        self.adj.len()
    }

    pub fn right_len(&self) -> usize {
        self.right
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum()
    }

    pub fn neighbours(&self, l: usize) -> &[usize] {
        &self.adj[l]
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(l, rs)| rs.iter().map(move |&r| (l, r)))
    }

    /// Hopcroft–Karp. The augmenting search is iterative so that long
    /// alternating paths do not exhaust the stack.
    pub fn maximum_matching(&self) -> Matching {
        let n_left = self.adj.len();
        let mut mate_l = vec![NIL; n_left];
        let mut mate_r = vec![NIL; self.right];
        let mut dist = vec![0usize; n_left];
        let mut cursor = vec![0usize; n_left];
        let mut queue = VecDeque::new();
        let mut stack: Vec<usize> = Vec::new();

        loop {
            // Layer the free left vertices and everything reachable from them.
            queue.clear();
            for l in 0..n_left {
                if mate_l[l] == NIL {
                    dist[l] = 0;
                    queue.push_back(l);
                } else {
                    dist[l] = usize::MAX;
                }
            }
            let mut found = false;
            while let Some(l) = queue.pop_front() {
                for &r in &self.adj[l] {
                    let m = mate_r[r];
                    if m == NIL {
                        found = true;
                    } else if dist[m] == usize::MAX {
                        dist[m] = dist[l] + 1;
                        queue.push_back(m);
                    }
                }
            }
            if !found {
                break;
            }

            cursor.iter_mut().for_each(|c| *c = 0);
            for root in 0..n_left {
                if mate_l[root] != NIL {
                    continue;
                }
                stack.clear();
                stack.push(root);
                while let Some(&l) = stack.last() {
                    if cursor[l] == self.adj[l].len() {
                        dist[l] = usize::MAX;
                        stack.pop();
                        continue;
                    }
                    let r = self.adj[l][cursor[l]];
                    let m = mate_r[r];
                    if m == NIL {
                        // Flip the path recorded on the stack.
                        let mut r_next = r;
                        while let Some(u) = stack.pop() {
                            let prev = mate_l[u];
                            mate_l[u] = r_next;
                            mate_r[r_next] = u;
                            r_next = prev;
                        }
                        break;
                    }
                    cursor[l] += 1;
                    if dist[m] != usize::MAX && dist[m] == dist[l] + 1 {
                        stack.push(m);
                    }
                }
            }
        }

        let wrap = |v: Vec<usize>| v.into_iter().map(|m| (m != NIL).then_some(m)).collect();
        Matching {
            mate_left: wrap(mate_l),
            mate_right: wrap(mate_r),
        }
    }

    /// A perfect matching, if one exists.
    pub fn perfect_matching(&self) -> Option<Matching> {
        if self.left_len() != self.right {
            return None;
        }
        let m = self.maximum_matching();
        (m.size() == self.right).then_some(m)
    }

    pub fn has_perfect_matching(&self) -> bool {
        self.perfect_matching().is_some()
    }
}
