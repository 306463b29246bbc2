//! Finite posets given by their Hasse diagram, pureness certification and
//! the level structure of a pure poset.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::ops::Range;

use crate::error::{Error, Result};
use crate::matching::BipartiteGraph;

/// How [`Poset::build`] treats cover pairs implied by other covers.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BuildOptions {
    /// Drop transitive pairs instead of rejecting them.
    pub auto_reduce: bool,
}

/// A validated finite poset, stored as its cover relation.
///
/// Element ids are positions in the order the labels were declared.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
}

impl Poset {
    pub fn new<S, T>(elements: S, covers: T) -> Result<Self>
    where
        S: IntoIterator,
        S::Item: AsRef<str>,
        T: IntoIterator,
        T::Item: CoverPair,
    {
        Self::build(elements, covers, BuildOptions::default())
    }

    pub fn build<S, T>(elements: S, covers: T, options: BuildOptions) -> Result<Self>
    where
        S: IntoIterator,
        S::Item: AsRef<str>,
        T: IntoIterator,
        T::Item: CoverPair,
    {
        let mut labels = Vec::new();
        let mut index = HashMap::new();
        for e in elements {
            let e = e.as_ref().to_string();
            if index.insert(e.clone(), labels.len()).is_some() {
                return Err(Error::DuplicateLabel(e));
            }
            labels.push(e);
        }
        let n = labels.len();
        let lookup = |l: &str| index.get(l).copied().ok_or_else(|| Error::UnknownLabel(l.to_string()));

        let mut pairs = BTreeSet::new();
        for c in covers {
            let (a, b) = c.endpoints();
            let (a, b) = (lookup(a)?, lookup(b)?);
            if a == b {
                return Err(Error::CycleDetected {
                    cycle: vec![labels[a].clone(), labels[a].clone()],
                });
            }
            pairs.insert((a, b));
        }

        let mut up = vec![Vec::new(); n];
        for &(a, b) in &pairs {
            up[a].push(b);
        }
        let order = topological_order(&up).map_err(|cycle| Error::CycleDetected {
            cycle: cycle.iter().map(|&x| labels[x].clone()).collect(),
        })?;

        // reach[x] = elements strictly above x.
        let mut reach = vec![vec![false; n]; n];
        for &x in order.iter().rev() {
            for &y in &up[x] {
                reach[x][y] = true;
                for z in 0..n {
                    if reach[y][z] {
                        reach[x][z] = true;
                    }
                }
            }
        }
        let mut kept = Vec::with_capacity(pairs.len());
        for &(a, b) in &pairs {
            let implied = up[a].iter().any(|&c| c != b && reach[c][b]);
            if !implied {
                kept.push((a, b));
            } else if !options.auto_reduce {
                return Err(Error::TransitiveCover {
                    lower: labels[a].clone(),
                    upper: labels[b].clone(),
                });
            }
        }

        let mut up = vec![Vec::new(); n];
        let mut down = vec![Vec::new(); n];
        for (a, b) in kept {
            up[a].push(b);
            down[b].push(a);
        }
        for adj in up.iter_mut().chain(down.iter_mut()) {
            adj.sort_by(|&x, &y| labels[x].cmp(&labels[y]));
        }
        Ok(Self {
            labels,
            index,
            up,
            down,
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn id(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// Cover pairs `(lower, upper)` as labels, sorted.
    pub fn cover_labels(&self) -> Vec<(String, String)> {
        let mut out: Vec<_> = self
            .up
            .iter()
            .enumerate()
            .flat_map(|(a, bs)| bs.iter().map(move |&b| (a, b)))
            .map(|(a, b)| (self.labels[a].clone(), self.labels[b].clone()))
            .collect();
        out.sort();
        out
    }

    /// Certify that every maximal chain has the same length and compute ranks.
    pub fn certify_pure(&self) -> Result<RankedPoset> {
        let n = self.len();
        if n == 0 {
            return Err(Error::EmptyPoset);
        }
        let order = topological_order(&self.up).expect("validated posets are acyclic");

        // Shortest and longest saturated chain from x up to a maximal element.
        let mut shortest = vec![0usize; n];
        let mut longest = vec![0usize; n];
        for &x in order.iter().rev() {
            if let Some(s) = self.up[x].iter().map(|&y| shortest[y]).min() {
                shortest[x] = s + 1;
                longest[x] = self.up[x].iter().map(|&y| longest[y]).max().unwrap() + 1;
            }
        }
        let minimal: Vec<usize> = (0..n).filter(|&x| self.down[x].is_empty()).collect();
        let lo = *minimal.iter().min_by_key(|&&m| (shortest[m], &self.labels[m])).unwrap();
        let hi = *minimal.iter().max_by_key(|&&m| (longest[m], std::cmp::Reverse(&self.labels[m]))).unwrap();
        if shortest[lo] != longest[hi] {
            let walk = |start: usize, table: &[usize]| {
                let mut chain = vec![self.labels[start].clone()];
                let mut x = start;
                while !self.up[x].is_empty() {
                    x = *self.up[x].iter().find(|&&y| table[y] + 1 == table[x]).unwrap();
                    chain.push(self.labels[x].clone());
                }
                chain
            };
            return Err(Error::NotPure {
                short: walk(lo, &shortest),
                long: walk(hi, &longest),
            });
        }
        let r = shortest[lo];

        // In a pure poset the rank is the common length of chains from below.
        let mut rank = vec![0usize; n];
        for &x in &order {
            for &y in &self.up[x] {
                rank[y] = rank[y].max(rank[x] + 1);
            }
        }
        Ok(RankedPoset::from_parts(&self.labels, &self.up, &rank, r))
    }
}

/// Anything that names a cover pair `(lower, upper)`.
pub trait CoverPair {
    fn endpoints(&self) -> (&str, &str);
}

impl<A: AsRef<str>, B: AsRef<str>> CoverPair for (A, B) {
    fn endpoints(&self) -> (&str, &str) {
        (self.0.as_ref(), self.1.as_ref())
    }
}

impl<C: CoverPair + ?Sized> CoverPair for &C {
    fn endpoints(&self) -> (&str, &str) {
        (**self).endpoints()
    }
}

impl<A: AsRef<str>> CoverPair for [A; 2] {
    fn endpoints(&self) -> (&str, &str) {
        (self[0].as_ref(), self[1].as_ref())
    }
}

/// Kahn's algorithm; on failure returns a directed cycle.
fn topological_order(up: &[Vec<usize>]) -> std::result::Result<Vec<usize>, Vec<usize>> {
    let n = up.len();
    let mut indeg = vec![0usize; n];
    for ys in up {
        for &y in ys {
            indeg[y] += 1;
        }
    }
    let mut ready: Vec<usize> = (0..n).rev().filter(|&x| indeg[x] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(x) = ready.pop() {
        order.push(x);
        for &y in &up[x] {
            indeg[y] -= 1;
            if indeg[y] == 0 {
                ready.push(y);
            }
        }
    }
    if order.len() == n {
        return Ok(order);
    }
    // Every unprocessed vertex has an unprocessed predecessor, and hence
    // walking backwards eventually repeats a vertex.
    let mut down = vec![Vec::new(); n];
    for (x, ys) in up.iter().enumerate() {
        for &y in ys {
            if indeg[x] > 0 && indeg[y] > 0 {
                down[y].push(x);
            }
        }
    }
    let start = (0..n).find(|&x| indeg[x] > 0).unwrap();
    let mut seen = vec![usize::MAX; n];
    let mut path = Vec::new();
    let mut x = start;
    while seen[x] == usize::MAX {
        seen[x] = path.len();
        path.push(x);
        x = down[x][0];
    }
    let mut cycle: Vec<usize> = path[seen[x]..].to_vec();
    cycle.reverse();
    cycle.push(cycle[0]);
    Err(cycle)
}

/// A pure poset with its rank function.
///
/// Elements are re-indexed so that ids increase with `(rank, label)`; every
/// level is therefore a contiguous id range and a weight function stored by
/// id is already in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankedPoset {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    rank: Vec<usize>,
    level_start: Vec<usize>,
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
}

impl RankedPoset {
    fn from_parts(labels: &[String], up: &[Vec<usize>], rank: &[usize], r: usize) -> Self {
        let n = labels.len();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.sort_by(|&a, &b| (rank[a], &labels[a]).cmp(&(rank[b], &labels[b])));
        let mut new_id = vec![0; n];
        for (new, &old) in perm.iter().enumerate() {
            new_id[old] = new;
        }
        let labels: Vec<String> = perm.iter().map(|&o| labels[o].clone()).collect();
        let rank: Vec<usize> = perm.iter().map(|&o| rank[o]).collect();
        let mut new_up = vec![Vec::new(); n];
        let mut new_down = vec![Vec::new(); n];
        for (old, ys) in up.iter().enumerate() {
            for &y in ys {
                new_up[new_id[old]].push(new_id[y]);
                new_down[new_id[y]].push(new_id[old]);
            }
        }
        for adj in new_up.iter_mut().chain(new_down.iter_mut()) {
            adj.sort_unstable();
        }
        let mut level_start = vec![0; r + 2];
        for &k in &rank {
            level_start[k + 1] += 1;
        }
        for i in 1..level_start.len() {
            level_start[i] += level_start[i - 1];
        }
        let index = labels.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
        Self {
            labels,
            index,
            rank,
            level_start,
            up: new_up,
            down: new_down,
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// The common length of all maximal chains.
    pub fn rank(&self) -> usize {
        self.level_start.len() - 2
    }

    pub fn rank_of(&self, x: usize) -> usize {
        self.rank[x]
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn id(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn ids<S: AsRef<str>>(&self, labels: &[S]) -> Result<Vec<usize>> {
        labels
            .iter()
            .map(|l| self.id(l.as_ref()).ok_or_else(|| Error::UnknownLabel(l.as_ref().to_string())))
            .collect()
    }

    /// Ids of the elements of rank `i`.
    pub fn level(&self, i: usize) -> Range<usize> {
        self.level_start[i]..self.level_start[i + 1]
    }

    pub fn level_sizes(&self) -> Vec<usize> {
        (0..=self.rank()).map(|i| self.level(i).len()).collect()
    }

    pub fn max_level_size(&self) -> usize {
        self.level_sizes().into_iter().max().unwrap_or(0)
    }

    /// Elements covering `x`, in increasing id order.
    pub fn up(&self, x: usize) -> &[usize] {
        &self.up[x]
    }

    /// Elements covered by `x`, in increasing id order.
    pub fn down(&self, x: usize) -> &[usize] {
        &self.down[x]
    }

    pub fn covers(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.up
            .iter()
            .enumerate()
            .flat_map(|(a, bs)| bs.iter().map(move |&b| (a, b)))
    }

    /// `N_P(V)`: the elements covering at least one element of `subset`.
    pub fn neighbourhood(&self, subset: &[usize]) -> Vec<usize> {
        let set: BTreeSet<usize> = subset.iter().flat_map(|&x| self.up[x].iter().copied()).collect();
        set.into_iter().collect()
    }

    pub fn to_poset(&self) -> Poset {
        let covers: Vec<(&str, &str)> = self
            .covers()
            .map(|(a, b)| (self.label(a), self.label(b)))
            .collect();
        Poset::new(&self.labels, covers).expect("a ranked poset is a valid poset")
    }

    /// `lt[x][y]` is true iff `x < y`.
    pub fn strict_order(&self) -> Vec<Vec<bool>> {
        let n = self.len();
        let mut lt = vec![vec![false; n]; n];
        // Ids increase with rank, so scanning downwards visits covers first.
        for x in (0..n).rev() {
            for &y in &self.up[x] {
                lt[x][y] = true;
                for z in 0..n {
                    if lt[y][z] {
                        lt[x][z] = true;
                    }
                }
            }
        }
        lt
    }

    /// Every maximal chain, lexicographically ordered by label sequence.
    pub fn maximal_chains(&self) -> Vec<Chain> {
        let mut out = Vec::new();
        let mut path = Vec::with_capacity(self.rank() + 1);
        for x in self.level(0) {
            self.extend_chains(x, &mut path, &mut out);
        }
        out
    }

    fn extend_chains(&self, x: usize, path: &mut Vec<usize>, out: &mut Vec<Chain>) {
        path.push(x);
        if self.up[x].is_empty() {
            out.push(Chain(path.clone()));
        } else {
            for &y in &self.up[x] {
                self.extend_chains(y, path, out);
            }
        }
        path.pop();
    }

    pub fn count_maximal_chains(&self) -> u128 {
        let mut count = vec![0u128; self.len()];
        for x in (0..self.len()).rev() {
            count[x] = if self.up[x].is_empty() {
                1
            } else {
                self.up[x].iter().map(|&y| count[y]).sum()
            };
        }
        self.level(0).map(|x| count[x]).sum()
    }

    /// Maximum antichain size with a witness, via Dilworth's theorem: the
    /// width equals `|P|` minus a maximum matching in the comparability
    /// graph, and König's construction turns the matching into an antichain.
    pub fn width(&self) -> (usize, Vec<usize>) {
        let n = self.len();
        let lt = self.strict_order();
        let mut g = BipartiteGraph::new(n, n);
        for (x, row) in lt.iter().enumerate() {
            for (y, &below) in row.iter().enumerate() {
                if below {
                    g.add_edge(x, y);
                }
            }
        }
        let m = g.maximum_matching();

        // Alternating reachability from unmatched left vertices.
        let mut left_seen = vec![false; n];
        let mut right_seen = vec![false; n];
        let mut stack: Vec<usize> = (0..n).filter(|&x| m.mate_left[x].is_none()).collect();
        for &x in &stack {
            left_seen[x] = true;
        }
        while let Some(x) = stack.pop() {
            for &y in g.neighbours(x) {
                if m.mate_left[x] != Some(y) && !right_seen[y] {
                    right_seen[y] = true;
                    if let Some(z) = m.mate_right[y] {
                        if !left_seen[z] {
                            left_seen[z] = true;
                            stack.push(z);
                        }
                    }
                }
            }
        }
        let antichain: Vec<usize> = (0..n).filter(|&x| left_seen[x] && !right_seen[x]).collect();
        debug_assert_eq!(antichain.len(), n - m.size());
        (antichain.len(), antichain)
    }

    /// The ordinal sum `self ⊕ other`: every element of `self` below every
    /// element of `other`.
    pub fn ordinal_sum(&self, other: &RankedPoset) -> Result<RankedPoset> {
        if let Some(l) = other.labels.iter().find(|l| self.index.contains_key(*l)) {
            return Err(Error::LabelCollision(l.clone()));
        }
        let mut elements = self.labels.clone();
        elements.extend(other.labels.iter().cloned());
        let mut covers: Vec<(String, String)> = self
            .covers()
            .map(|(a, b)| (self.labels[a].clone(), self.labels[b].clone()))
            .chain(other.covers().map(|(a, b)| (other.labels[a].clone(), other.labels[b].clone())))
            .collect();
        for a in self.level(self.rank()) {
            for b in other.level(0) {
                covers.push((self.labels[a].clone(), other.labels[b].clone()));
            }
        }
        Poset::new(elements, covers)?.certify_pure()
    }

    /// The subposet on the levels in `range`, which is again pure.
    pub fn level_slice(&self, range: Range<usize>) -> RankedPoset {
        assert!(range.start < range.end && range.end <= self.rank() + 1);
        let ids = self.level_start[range.start]..self.level_start[range.end];
        let elements: Vec<&str> = ids.clone().map(|x| self.label(x)).collect();
        let covers: Vec<(&str, &str)> = self
            .covers()
            .filter(|&(a, b)| ids.contains(&a) && ids.contains(&b))
            .map(|(a, b)| (self.label(a), self.label(b)))
            .collect();
        Poset::new(elements, covers)
            .and_then(|p| p.certify_pure())
            .expect("a union of consecutive levels of a pure poset is pure")
    }

    /// A copy with every label prefixed by `prefix`.
    pub fn prefixed(&self, prefix: &str) -> RankedPoset {
        let labels: Vec<String> = self.labels.iter().map(|l| format!("{prefix}{l}")).collect();
        RankedPoset::from_parts(&labels, &self.up, &self.rank, self.rank())
    }
}

impl fmt::Display for RankedPoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..=self.rank() {
            let names: Vec<&str> = self.level(i).map(|x| self.label(x)).collect();
            writeln!(f, "P_{i}: {{{}}}", names.join(", "))?;
        }
        Ok(())
    }
}

/// A maximal chain, one element id per level.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Chain(pub Vec<usize>);

impl Chain {
    pub fn elements(&self) -> &[usize] {
        &self.0
    }

    pub fn labels<'a>(&self, rp: &'a RankedPoset) -> Vec<&'a str> {
        self.0.iter().map(|&x| rp.label(x)).collect()
    }

    pub fn display(&self, rp: &RankedPoset) -> String {
        self.labels(rp).join("<")
    }
}
