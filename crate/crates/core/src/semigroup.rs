//! Membership in the chain semigroup `C_P`, decomposition of members into
//! maximal chains, graded pieces and the Krull dimension.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::enumerate::{self, Budget, GradedPiece, Target};
use crate::error::{Error, Result};
use crate::level::{component_counts, level_graphs, HallCertificate, Transport};
use crate::poset::{Chain, RankedPoset};
use crate::weight::WeightFunction;

/// Why a weight function is not in `C_P`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NonMembership {
    LevelSumMismatch { i: usize, j: usize, sum_i: u64, sum_j: u64 },
    Hall(HallCertificate),
}

/// Chains with multiplicities, lexicographically ordered.
pub type Decomposition = Vec<(Chain, u64)>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MembershipResult {
    Member {
        degree: u64,
        decomposition: Option<Decomposition>,
    },
    NonMember(NonMembership),
}

impl MembershipResult {
    pub fn is_member(&self) -> bool {
        matches!(self, MembershipResult::Member { .. })
    }
}

fn check_len(rp: &RankedPoset, f: &WeightFunction) -> Result<()> {
    if f.len() != rp.len() {
        return Err(Error::WeightLength {
            expected: rp.len(),
            got: f.len(),
        });
    }
    Ok(())
}

/// The common level sum `f(P_0) = ... = f(P_r)`.
pub fn degree(rp: &RankedPoset, f: &WeightFunction) -> Result<u64> {
    check_len(rp, f)?;
    let base = f.sum_over(rp.level(0));
    for j in 1..=rp.rank() {
        let s = f.sum_over(rp.level(j));
        if s != base {
            return Err(Error::LevelSumMismatch {
                i: 0,
                j,
                sum_i: base,
                sum_j: s,
            });
        }
    }
    Ok(base)
}

/// Decides `f ∈ C_P` with one transportation problem per level graph, and
/// on request splits `f` into maximal chains.
pub fn is_member(rp: &RankedPoset, f: &WeightFunction, want_decomposition: bool) -> Result<MembershipResult> {
    let d = match degree(rp, f) {
        Ok(d) => d,
        Err(Error::LevelSumMismatch { i, j, sum_i, sum_j }) => {
            return Ok(MembershipResult::NonMember(NonMembership::LevelSumMismatch {
                i,
                j,
                sum_i,
                sum_j,
            }))
        }
        Err(e) => return Err(e),
    };
    let mut plans = Vec::with_capacity(rp.rank());
    for g in level_graphs(rp) {
        match g.flow_feasible(rp, f)? {
            Transport::Feasible(plan) => plans.push(plan),
            Transport::Infeasible(cert) => return Ok(MembershipResult::NonMember(NonMembership::Hall(cert))),
        }
    }
    let decomposition = want_decomposition.then(|| peel_chains(rp, f, d, &plans));
    Ok(MembershipResult::Member {
        degree: d,
        decomposition,
    })
}

/// Follows one unit of flow at a time from rank 0 to rank r. Flow
/// conservation at every element guarantees each walk reaches the top.
fn peel_chains(rp: &RankedPoset, f: &WeightFunction, d: u64, plans: &[Vec<((usize, usize), u64)>]) -> Decomposition {
    let mut out: Vec<Vec<(usize, u64)>> = vec![Vec::new(); rp.len()];
    for plan in plans {
        for &((a, b), amount) in plan {
            out[a].push((b, amount));
        }
    }
    let mut start: Vec<u64> = rp.level(0).map(|x| f.get(x)).collect();
    let mut counts: BTreeMap<Chain, u64> = BTreeMap::new();
    for _ in 0..d {
        let s = start.iter().position(|&v| v > 0).expect("level 0 carries d units");
        start[s] -= 1;
        let mut x = rp.level(0).start + s;
        let mut chain = vec![x];
        while rp.rank_of(x) < rp.rank() {
            let slot = out[x]
                .iter_mut()
                .find(|(_, amount)| *amount > 0)
                .expect("flow is conserved at every element");
            slot.1 -= 1;
            x = slot.0;
            chain.push(x);
        }
        *counts.entry(Chain(chain)).or_default() += 1;
    }
    counts.into_iter().collect()
}

/// Re-sums a decomposition into a weight function.
pub fn recompose(rp: &RankedPoset, decomposition: &Decomposition) -> WeightFunction {
    let mut f = WeightFunction::zero(rp.len());
    for (chain, m) in decomposition {
        for &x in chain.elements() {
            f.0[x] += m;
        }
    }
    f
}

/// Largest level size accepted by [`check_inequalities`].
pub const SUBSET_SCAN_LIMIT: usize = 20;

/// Literal evaluation of the level-sum equalities and of
/// `f(V) <= f(N_P(V))` for every nonempty `V` inside a level. Exponential;
/// meant as an independent check of [`is_member`].
pub fn check_inequalities(rp: &RankedPoset, f: &WeightFunction) -> Result<bool> {
    check_len(rp, f)?;
    for i in 0..rp.rank() {
        let width = rp.level(i).len();
        if width > SUBSET_SCAN_LIMIT {
            return Err(Error::WidthTooLarge {
                level: i,
                width,
                limit: SUBSET_SCAN_LIMIT,
            });
        }
    }
    if degree(rp, f).is_err() {
        return Ok(false);
    }
    for i in 0..rp.rank() {
        let ids: Vec<usize> = rp.level(i).collect();
        for mask in 1u32..(1 << ids.len()) {
            let subset: Vec<usize> = (0..ids.len()).filter(|b| mask & (1 << b) != 0).map(|b| ids[b]).collect();
            let nb = rp.neighbourhood(&subset);
            if f.sum_over(subset) > f.sum_over(nb) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Membership through perfect matchings of the `f`-parallelizations.
pub fn is_member_by_parallelization(rp: &RankedPoset, f: &WeightFunction) -> Result<bool> {
    check_len(rp, f)?;
    if degree(rp, f).is_err() {
        return Ok(false);
    }
    Ok(level_graphs(rp).iter().all(|g| g.parallelize(f).has_perfect_matching()))
}

/// Characteristic vectors of the maximal chains, i.e. the degree-one piece,
/// in canonical order.
pub fn hilbert_basis(rp: &RankedPoset) -> Vec<WeightFunction> {
    let mut basis: Vec<WeightFunction> = rp
        .maximal_chains()
        .iter()
        .map(|c| WeightFunction::from_chain(rp, c))
        .collect();
    basis.sort();
    basis.dedup();
    basis
}

/// Every member of degree `d`, in canonical order.
pub fn enumerate_degree(rp: &RankedPoset, d: u64, budget: Budget) -> Result<GradedPiece> {
    enumerate::collect(rp, d, Target::Semigroup, budget)
}

/// `|P| - (k_0 + ... + k_{r-1})`, where `k_i` counts the connected
/// components of the level graph `G_i(P)`.
pub fn krull_dimension(rp: &RankedPoset) -> usize {
    rp.len() - component_counts(rp).iter().sum::<usize>()
}
