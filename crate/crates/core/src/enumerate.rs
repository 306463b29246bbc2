//! Backtracking over weight functions with all level sums equal to `d`,
//! assigning one level at a time and pruning with the constraints between
//! each completed level and the one below it.

use std::ops::ControlFlow;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::level::{level_graphs, LevelGraph};
use crate::poset::RankedPoset;
use crate::weight::WeightFunction;

pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

/// Environment variable that overrides [`Budget::from_env`].
pub const BUDGET_ENV: &str = "CHAINALG_BUDGET";

/// Upper bound on the number of complete level assignments visited.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            max_nodes: DEFAULT_NODE_BUDGET,
        }
    }
}

impl Budget {
    pub fn new(max_nodes: u64) -> Self {
        Self { max_nodes }
    }

    /// The default budget unless `CHAINALG_BUDGET` holds a positive integer.
    pub fn from_env() -> Self {
        std::env::var(BUDGET_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .filter(|&n| n > 0)
            .map(Self::new)
            .unwrap_or_default()
    }
}

/// All elements of one degree, in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradedPiece {
    pub degree: u64,
    pub elements: Vec<WeightFunction>,
}

impl GradedPiece {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Target {
    /// The chain semigroup.
    Semigroup,
    /// Its canonical ideal: strictly positive, strict inequality on every
    /// proper subset of a connected component of rank `i`.
    Canonical,
}

/// A proper subset of a component together with its neighbourhood.
struct StrictPair {
    subset: Vec<usize>,
    neighbourhood: Vec<usize>,
}

struct Search<'a> {
    rp: &'a RankedPoset,
    degree: u64,
    target: Target,
    graphs: Vec<LevelGraph>,
    strict: Vec<Vec<StrictPair>>,
    budget: Budget,
    nodes: u64,
    found: usize,
    f: WeightFunction,
}

pub(crate) fn strict_pairs(rp: &RankedPoset, g: &LevelGraph) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut out = Vec::new();
    for c in &g.components {
        let k = c.lower.len();
        assert!(k < 32, "component too large for subset enumeration");
        for mask in 1u32..(1 << k) - 1 {
            let subset: Vec<usize> = (0..k).filter(|b| mask & (1 << b) != 0).map(|b| c.lower[b]).collect();
            let nb = rp.neighbourhood(&subset);
            out.push((subset, nb));
        }
    }
    out
}

/// Calls `visit` on every element of the chosen degree in canonical order.
/// Returns the number of search nodes used.
pub(crate) fn search(
    rp: &RankedPoset,
    degree: u64,
    target: Target,
    budget: Budget,
    visit: &mut dyn FnMut(&WeightFunction) -> ControlFlow<()>,
) -> Result<u64> {
    let graphs = level_graphs(rp);
    let strict = match target {
        Target::Semigroup => Vec::new(),
        Target::Canonical => graphs
            .iter()
            .map(|g| {
                strict_pairs(rp, g)
                    .into_iter()
                    .map(|(subset, neighbourhood)| StrictPair { subset, neighbourhood })
                    .collect()
            })
            .collect(),
    };
    let mut s = Search {
        rp,
        degree,
        target,
        graphs,
        strict,
        budget,
        nodes: 0,
        found: 0,
        f: WeightFunction::zero(rp.len()),
    };
    let _ = s.level(0, visit)?;
    Ok(s.nodes)
}

impl Search<'_> {
    fn level(&mut self, i: usize, visit: &mut dyn FnMut(&WeightFunction) -> ControlFlow<()>) -> Result<ControlFlow<()>> {
        let ids: Vec<usize> = self.rp.level(i).collect();
        self.fill(i, &ids, 0, self.degree, visit)
    }

    fn fill(
        &mut self,
        i: usize,
        ids: &[usize],
        pos: usize,
        left: u64,
        visit: &mut dyn FnMut(&WeightFunction) -> ControlFlow<()>,
    ) -> Result<ControlFlow<()>> {
        let min = match self.target {
            Target::Semigroup => 0,
            Target::Canonical => 1,
        };
        let rest = (ids.len() - pos - 1) as u64;
        if pos + 1 == ids.len() {
            if left < min {
                return Ok(ControlFlow::Continue(()));
            }
            self.f.0[ids[pos]] = left;
            return self.complete_level(i, visit);
        }
        if left < min * (rest + 1) {
            return Ok(ControlFlow::Continue(()));
        }
        for v in min..=left - min * rest {
            self.f.0[ids[pos]] = v;
            if self.fill(i, ids, pos + 1, left - v, visit)?.is_break() {
                return Ok(ControlFlow::Break(()));
            }
        }
        Ok(ControlFlow::Continue(()))
    }

    fn complete_level(&mut self, i: usize, visit: &mut dyn FnMut(&WeightFunction) -> ControlFlow<()>) -> Result<ControlFlow<()>> {
        self.nodes += 1;
        if self.nodes > self.budget.max_nodes {
            return Err(Error::BudgetExceeded {
                budget: self.budget.max_nodes,
                found: self.found,
            });
        }
        if i > 0 && !self.compatible(i - 1) {
            return Ok(ControlFlow::Continue(()));
        }
        if i == self.rp.rank() {
            self.found += 1;
            return Ok(visit(&self.f));
        }
        self.level(i + 1, visit)
    }

    fn compatible(&self, i: usize) -> bool {
        let feasible = self.graphs[i]
            .flow_feasible(self.rp, &self.f)
            .map(|t| t.is_feasible())
            .unwrap_or(false);
        if !feasible {
            return false;
        }
        match self.target {
            Target::Semigroup => true,
            Target::Canonical => self.strict[i].iter().all(|p| {
                self.f.sum_over(p.subset.iter().copied()) < self.f.sum_over(p.neighbourhood.iter().copied())
            }),
        }
    }
}

/// Collects a whole graded piece.
pub(crate) fn collect(rp: &RankedPoset, degree: u64, target: Target, budget: Budget) -> Result<GradedPiece> {
    let mut elements = Vec::new();
    search(rp, degree, target, budget, &mut |f| {
        elements.push(f.clone());
        ControlFlow::Continue(())
    })?;
    Ok(GradedPiece { degree, elements })
}

/// The first element of the given degree, if any.
pub(crate) fn first(rp: &RankedPoset, degree: u64, target: Target, budget: Budget) -> Result<Option<WeightFunction>> {
    let mut hit = None;
    search(rp, degree, target, budget, &mut |f| {
        hit = Some(f.clone());
        ControlFlow::Break(())
    })?;
    Ok(hit)
}
