//! The bipartite level graphs `G_i(P)` between consecutive ranks, their
//! connected components, `f`-parallelizations, and the transportation check
//! that decides membership one level at a time.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::flow::{FlowNetwork, UNBOUNDED};
use crate::matching::BipartiteGraph;
use crate::poset::RankedPoset;
use crate::weight::WeightFunction;

/// One connected component of `G_i(P)`: `lower` is `P_{i,j}` and `upper` its
/// neighbourhood `N_P(P_{i,j})`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Component {
    pub lower: Vec<usize>,
    pub upper: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelGraph {
    pub level: usize,
    pub lower: Vec<usize>,
    pub upper: Vec<usize>,
    /// Cover pairs `(a, b)` with `a` in `lower` and `b` in `upper`.
    pub edges: Vec<(usize, usize)>,
    pub components: Vec<Component>,
}

impl LevelGraph {
    pub fn new(rp: &RankedPoset, i: usize) -> Result<Self> {
        if i >= rp.rank() {
            return Err(Error::IndexOutOfRange {
                index: i,
                rank: rp.rank(),
            });
        }
        let lower: Vec<usize> = rp.level(i).collect();
        let upper: Vec<usize> = rp.level(i + 1).collect();
        let edges: Vec<(usize, usize)> = lower
            .iter()
            .flat_map(|&a| rp.up(a).iter().map(move |&b| (a, b)))
            .collect();

        // Union-find over the ids of both levels, offset to start at zero.
        let base = lower[0];
        let mut parent: Vec<usize> = (0..lower.len() + upper.len()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for &(a, b) in &edges {
            let (ra, rb) = (find(&mut parent, a - base), find(&mut parent, b - base));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
        let mut by_root: BTreeMap<usize, Component> = BTreeMap::new();
        for &x in lower.iter().chain(&upper) {
            let root = find(&mut parent, x - base);
            let c = by_root.entry(root).or_insert_with(|| Component {
                lower: Vec::new(),
                upper: Vec::new(),
            });
            if rp.rank_of(x) == i {
                c.lower.push(x);
            } else {
                c.upper.push(x);
            }
        }
        let components = by_root.into_values().collect();
        Ok(Self {
            level: i,
            lower,
            upper,
            edges,
            components,
        })
    }

    pub fn is_complete_bipartite(&self) -> bool {
        self.edges.len() == self.lower.len() * self.upper.len()
    }

    pub fn is_connected(&self) -> bool {
        self.components.len() == 1
    }

    /// The level graph with ids renumbered from zero on each side.
    pub fn to_bipartite(&self) -> BipartiteGraph {
        let (lo, hi) = (self.lower[0], self.upper[0]);
        let local: Vec<(usize, usize)> = self.edges.iter().map(|&(a, b)| (a - lo, b - hi)).collect();
        BipartiteGraph::from_edges(self.lower.len(), self.upper.len(), &local)
    }

    /// Replicates every vertex `x` into `f(x)` copies.
    pub fn parallelize(&self, f: &WeightFunction) -> ParallelizedGraph {
        let replicate = |side: &[usize]| -> Vec<(usize, u64)> {
            side.iter()
                .flat_map(|&x| (1..=f.get(x)).map(move |k| (x, k)))
                .collect()
        };
        let left = replicate(&self.lower);
        let right = replicate(&self.upper);
        let mut first_copy = BTreeMap::new();
        for (pos, &(y, k)) in right.iter().enumerate() {
            if k == 1 {
                first_copy.insert(y, pos);
            }
        }
        let mut graph = BipartiteGraph::new(left.len(), right.len());
        for (l, &(x, _)) in left.iter().enumerate() {
            for &(a, b) in &self.edges {
                if a == x {
                    if let Some(&start) = first_copy.get(&b) {
                        for r in start..start + f.get(b) as usize {
                            graph.add_edge(l, r);
                        }
                    }
                }
            }
        }
        ParallelizedGraph { left, right, graph }
    }

    /// Decides whether `f` restricted to this level can be routed as an
    /// integer transportation plan from `f` on the lower level to `f` on the
    /// upper level along covers.
    ///
    /// On failure a Hall violator is read off a minimum cut: the lower
    /// vertices on the source side form `V` with `f(V) > f(N_P(V))`.
    pub fn flow_feasible(&self, rp: &RankedPoset, f: &WeightFunction) -> Result<Transport> {
        let supply = f.sum_over(self.lower.iter().copied());
        let demand = f.sum_over(self.upper.iter().copied());
        if supply != demand {
            return Err(Error::LevelSumMismatch {
                i: self.level,
                j: self.level + 1,
                sum_i: supply,
                sum_j: demand,
            });
        }
        let (lo, hi) = (self.lower[0], self.upper[0]);
        let (nl, nu) = (self.lower.len(), self.upper.len());
        let (source, sink) = (nl + nu, nl + nu + 1);
        let mut net = FlowNetwork::new(nl + nu + 2);
        for &x in &self.lower {
            net.add_arc(source, x - lo, f.get(x));
        }
        for &y in &self.upper {
            net.add_arc(nl + y - hi, sink, f.get(y));
        }
        let handles: Vec<usize> = self
            .edges
            .iter()
            .map(|&(a, b)| net.add_arc(a - lo, nl + b - hi, UNBOUNDED))
            .collect();
        let value = net.max_flow(source, sink);
        if value == supply {
            let plan = self
                .edges
                .iter()
                .zip(handles)
                .filter_map(|(&e, h)| {
                    let amount = net.flow(h);
                    (amount > 0).then_some((e, amount))
                })
                .collect();
            return Ok(Transport::Feasible(plan));
        }
        let side = net.source_side(source);
        let violator: Vec<usize> = self.lower.iter().copied().filter(|&x| side[x - lo]).collect();
        let cert = HallCertificate::new(rp, f, self.level, violator);
        assert!(
            cert.violator_weight > cert.neighbourhood_weight,
            "minimum cut did not yield a Hall violator"
        );
        Ok(Transport::Infeasible(cert))
    }
}

/// Outcome of [`LevelGraph::flow_feasible`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Transport {
    /// Positive entries of an integer plan, keyed by cover pair.
    Feasible(Vec<((usize, usize), u64)>),
    Infeasible(HallCertificate),
}

impl Transport {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Transport::Feasible(_))
    }
}

/// A subset `V` of `P_i` with `f(V) > f(N_P(V))`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HallCertificate {
    pub level: usize,
    pub violator: Vec<usize>,
    pub neighbourhood: Vec<usize>,
    pub violator_weight: u64,
    pub neighbourhood_weight: u64,
}

impl HallCertificate {
    pub fn new(rp: &RankedPoset, f: &WeightFunction, level: usize, violator: Vec<usize>) -> Self {
        let neighbourhood = rp.neighbourhood(&violator);
        Self {
            level,
            violator_weight: f.sum_over(violator.iter().copied()),
            neighbourhood_weight: f.sum_over(neighbourhood.iter().copied()),
            violator,
            neighbourhood,
        }
    }

    pub fn holds(&self) -> bool {
        self.violator_weight > self.neighbourhood_weight
    }
}

/// The `f`-parallelization of a level graph. Vertices are `(element, copy)`
/// with copies numbered from one.
#[derive(Debug, Clone)]
pub struct ParallelizedGraph {
    pub left: Vec<(usize, u64)>,
    pub right: Vec<(usize, u64)>,
    pub graph: BipartiteGraph,
}

impl ParallelizedGraph {
    pub fn has_perfect_matching(&self) -> bool {
        self.graph.has_perfect_matching()
    }
}

/// All level graphs of `rp`.
pub fn level_graphs(rp: &RankedPoset) -> Vec<LevelGraph> {
    (0..rp.rank())
        .map(|i| LevelGraph::new(rp, i).expect("index in range"))
        .collect()
}

/// The connected components of rank `i`.
pub fn components_of_rank(rp: &RankedPoset, i: usize) -> Result<Vec<Component>> {
    LevelGraph::new(rp, i).map(|g| g.components)
}

/// `k_i` for every `i < r`.
pub fn component_counts(rp: &RankedPoset) -> Vec<usize> {
    level_graphs(rp).iter().map(|g| g.components.len()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn weights(rp: &RankedPoset, pairs: &[(&str, u64)]) -> WeightFunction {
        let map = pairs.iter().map(|&(l, v)| (l.to_string(), v)).collect();
        WeightFunction::from_labels(rp, &map).unwrap()
    }

    #[test]
    fn diamond_bottom_level_is_a_star() {
        let rp = corpus::diamond();
        let g = LevelGraph::new(&rp, 0).unwrap();
        assert_eq!(g.edges.len(), 2);
        assert!(g.is_complete_bipartite());
        assert_eq!(g.components.len(), 1);
        assert!(matches!(
            LevelGraph::new(&rp, 2),
            Err(Error::IndexOutOfRange { index: 2, rank: 2 })
        ));
    }

    #[test]
    fn b1_bottom_level_is_a_path() {
        let rp = corpus::basic(&[1]);
        let g = LevelGraph::new(&rp, 0).unwrap();
        assert_eq!(g.edges.len(), 3);
        assert!(!g.is_complete_bipartite());
        assert!(g.is_connected());
    }

    #[test]
    fn two_disjoint_chains_split_every_level() {
        let rp = corpus::disjoint_chains(2, 3);
        for i in 0..3 {
            let g = LevelGraph::new(&rp, i).unwrap();
            assert_eq!(g.edges.len(), 2);
            assert_eq!(g.components.len(), 2);
        }
        assert_eq!(component_counts(&rp), vec![2, 2, 2]);
    }

    #[test]
    fn pair_sum_pair_is_complete() {
        let rp = corpus::pair().prefixed("p.").ordinal_sum(&corpus::pair().prefixed("q.")).unwrap();
        assert!(LevelGraph::new(&rp, 0).unwrap().is_complete_bipartite());
    }

    #[test]
    fn b2_levels_are_connected_paths() {
        let rp = corpus::basic(&[2]);
        assert_eq!(component_counts(&rp), vec![1, 1]);
    }

    #[test]
    fn parallelize_diamond() {
        let rp = corpus::diamond();
        let g = LevelGraph::new(&rp, 0).unwrap();
        let f = weights(&rp, &[("a", 2), ("b", 1), ("c", 1), ("d", 2)]);
        let pg = g.parallelize(&f);
        let a = rp.id("a").unwrap();
        assert_eq!(pg.left, vec![(a, 1), (a, 2)]);
        assert_eq!(pg.right.len(), 2);
        assert_eq!(pg.graph.edge_count(), 4);
        assert!(pg.has_perfect_matching());

        let ones = WeightFunction(vec![1; rp.len()]);
        assert_eq!(g.parallelize(&ones).graph.edge_count(), g.edges.len());
        let zero = WeightFunction::zero(rp.len());
        assert_eq!(g.parallelize(&zero).graph.left_len(), 0);
    }

    #[test]
    fn diamond_transport_plan() {
        let rp = corpus::diamond();
        let g = LevelGraph::new(&rp, 0).unwrap();
        let f = weights(&rp, &[("a", 2), ("b", 1), ("c", 1), ("d", 2)]);
        let Transport::Feasible(plan) = g.flow_feasible(&rp, &f).unwrap() else {
            panic!("expected a plan");
        };
        let (a, b, c) = (rp.id("a").unwrap(), rp.id("b").unwrap(), rp.id("c").unwrap());
        assert_eq!(plan, vec![((a, b), 1), ((a, c), 1)]);
    }

    #[test]
    fn b1_violator_is_x0() {
        let rp = corpus::basic(&[1]);
        let g = LevelGraph::new(&rp, 0).unwrap();
        let f = weights(&rp, &[("X0", 2), ("Y0", 1), ("X1", 1), ("Y1", 2)]);
        let Transport::Infeasible(cert) = g.flow_feasible(&rp, &f).unwrap() else {
            panic!("expected a certificate");
        };
        assert_eq!(cert.violator, vec![rp.id("X0").unwrap()]);
        assert_eq!(cert.neighbourhood, vec![rp.id("X1").unwrap()]);
        assert_eq!((cert.violator_weight, cert.neighbourhood_weight), (2, 1));
    }

    #[test]
    fn zero_weight_is_feasible_and_mismatch_is_an_error() {
        let rp = corpus::diamond();
        let g = LevelGraph::new(&rp, 0).unwrap();
        let zero = WeightFunction::zero(rp.len());
        assert_eq!(g.flow_feasible(&rp, &zero).unwrap(), Transport::Feasible(vec![]));
        let ones = WeightFunction(vec![1; 4]);
        assert_eq!(
            g.flow_feasible(&rp, &ones).unwrap_err(),
            Error::LevelSumMismatch {
                i: 0,
                j: 1,
                sum_i: 1,
                sum_j: 2
            }
        );
    }
}
