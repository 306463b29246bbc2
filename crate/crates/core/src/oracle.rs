//! Brute-force reference implementations for cross-validation.
//!
//! Nothing here reuses the traversal or arithmetic of the module it checks:
//! chains come from the transitive closure, ranks from fraction-free
//! elimination over big integers, graded pieces from sumsets of generators,
//! and canonical membership from its definition `n f - g ∈ C_P`.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::canonical::{self, is_canonical_member};
use crate::enumerate::Budget;
use crate::error::{Error, Result};
use crate::poset::RankedPoset;
use crate::polytope::{self, dilated_lattice_points, polytope_dimension};
use crate::semigroup::{self, check_inequalities, is_member, is_member_by_parallelization, krull_dimension, MembershipResult};
use crate::weight::WeightFunction;
use crate::width2;

/// Maximal chains recomputed from the order relation: covers are the pairs
/// `x < y` with nothing in between.
pub fn chains_by_closure(rp: &RankedPoset) -> Vec<Vec<usize>> {
    let lt = rp.strict_order();
    let n = rp.len();
    let covers = |x: usize, y: usize| lt[x][y] && !(0..n).any(|z| lt[x][z] && lt[z][y]);
    let succ: Vec<Vec<usize>> = (0..n).map(|x| (0..n).filter(|&y| covers(x, y)).collect()).collect();
    let mut out = Vec::new();
    let mut stack: Vec<Vec<usize>> = (0..n).filter(|&y| !(0..n).any(|x| lt[x][y])).map(|x| vec![x]).collect();
    stack.reverse();
    while let Some(path) = stack.pop() {
        let last = *path.last().unwrap();
        if succ[last].is_empty() {
            out.push(path);
            continue;
        }
        for &y in succ[last].iter().rev() {
            let mut next = path.clone();
            next.push(y);
            stack.push(next);
        }
    }
    out
}

fn chain_vectors(rp: &RankedPoset) -> Vec<WeightFunction> {
    let set: BTreeSet<WeightFunction> = chains_by_closure(rp)
        .into_iter()
        .map(|c| {
            let mut v = vec![0; rp.len()];
            for x in c {
                v[x] = 1;
            }
            WeightFunction(v)
        })
        .collect();
    set.into_iter().collect()
}

/// All sums of `k` chain vectors, repetition allowed.
pub fn sumset_degree(rp: &RankedPoset, k: u64, budget: Budget) -> Result<BTreeSet<WeightFunction>> {
    let gens = chain_vectors(rp);
    let mut out = BTreeSet::new();
    if k == 0 {
        out.insert(WeightFunction::zero(rp.len()));
        return Ok(out);
    }
    let k = k as usize;
    let mut idx = vec![0usize; k];
    let mut visited = 0u64;
    loop {
        visited += 1;
        if visited > budget.max_nodes {
            return Err(Error::BudgetExceeded {
                budget: budget.max_nodes,
                found: out.len(),
            });
        }
        let mut v = vec![0u64; rp.len()];
        for &i in &idx {
            for (s, g) in v.iter_mut().zip(gens[i].values()) {
                *s += g;
            }
        }
        out.insert(WeightFunction(v));
        // Next nondecreasing index tuple.
        let mut p = k;
        while p > 0 && idx[p - 1] + 1 == gens.len() {
            p -= 1;
        }
        if p == 0 {
            return Ok(out);
        }
        idx[p - 1] += 1;
        let v = idx[p - 1];
        idx[p..].iter_mut().for_each(|i| *i = v);
    }
}

/// Search cap for [`definitional_canonical_test`]: the largest value of
/// `g(N_P(X)) - g(X)` over chain vectors `g` and subsets `X` of a level, and
/// at least 1. A chain meets every level once, so the value is 1 as soon as
/// some element has two lower covers, witnessed by a singleton `X` off the
/// chain.
pub fn derived_n_cap(rp: &RankedPoset) -> u64 {
    let mut best = 0i64;
    for g in chain_vectors(rp) {
        for x in 0..rp.len() {
            if rp.rank_of(x) < rp.rank() {
                let gain = g.sum_over(rp.up(x).iter().copied()) as i64 - g.get(x) as i64;
                best = best.max(gain);
            }
        }
    }
    best.max(1) as u64
}

/// Decides `f ∈ K_P` from the definition: for every chain vector `g` some
/// `n <= n_cap` has `n f - g ∈ C_P`. Returns `false` only with a persistent
/// obstruction (a coordinate or level subset on which `n f - g` fails for
/// every `n`), and `Inconclusive` if the cap runs out without one.
pub fn definitional_canonical_test(rp: &RankedPoset, f: &WeightFunction, n_cap: u64) -> Result<bool> {
    if !check_inequalities(rp, f)? {
        return Err(Error::NotInSemigroup);
    }
    let subsets = level_subsets(rp);
    for g in chain_vectors(rp) {
        let works = (1..=n_cap).any(|n| match f.scale(n).checked_sub(&g) {
            Some(h) => check_inequalities(rp, &h).expect("widths already checked"),
            None => false,
        });
        if works {
            continue;
        }
        let zero_coordinate = (0..rp.len()).any(|x| f.get(x) == 0 && g.get(x) > 0);
        let tight = subsets.iter().any(|(v, nv)| {
            f.sum_over(v.iter().copied()) == f.sum_over(nv.iter().copied())
                && g.sum_over(nv.iter().copied()) > g.sum_over(v.iter().copied())
        });
        if zero_coordinate || tight {
            return Ok(false);
        }
        return Err(Error::Inconclusive { n_cap });
    }
    Ok(true)
}

fn level_subsets(rp: &RankedPoset) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut out = Vec::new();
    for i in 0..rp.rank() {
        let ids: Vec<usize> = rp.level(i).collect();
        for mask in 1u32..(1 << ids.len()) {
            let v: Vec<usize> = (0..ids.len()).filter(|b| mask & (1 << b) != 0).map(|b| ids[b]).collect();
            let nv: BTreeSet<usize> = v.iter().flat_map(|&x| rp.up(x).iter().copied()).collect();
            out.push((v, nv.into_iter().collect()));
        }
    }
    out
}

/// Rank over `Q` by fraction-free (Bareiss) elimination.
pub fn matrix_rank(rows: &[Vec<BigInt>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::from(1);
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for r in rank + 1..m.len() {
            for j in c + 1..cols {
                let v = (&m[rank][c] * &m[r][j] - &m[r][c] * &m[rank][j]) / &prev;
                m[r][j] = v;
            }
            m[r][c] = BigInt::zero();
        }
        prev = m[rank][c].clone();
        rank += 1;
    }
    rank
}

/// Rank of the matrix whose rows are the chain vectors.
pub fn chain_matrix_rank(rp: &RankedPoset) -> usize {
    let rows: Vec<Vec<BigInt>> = chain_vectors(rp)
        .iter()
        .map(|g| g.values().iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    matrix_rank(&rows)
}

/// Dimension of the affine hull of `points`.
pub fn affine_rank(points: &[WeightFunction]) -> usize {
    let Some(base) = points.first() else {
        return 0;
    };
    let rows: Vec<Vec<BigInt>> = points[1..]
        .iter()
        .map(|p| {
            p.values()
                .iter()
                .zip(base.values())
                .map(|(&a, &b)| BigInt::from(a) - BigInt::from(b))
                .collect()
        })
        .collect();
    matrix_rank(&rows)
}

/// Integer points of `k D_P`, by level compositions and exact LP.
pub fn box_lattice_points(rp: &RankedPoset, k: u64, budget: Budget) -> Result<BTreeSet<WeightFunction>> {
    Ok(dilated_lattice_points(rp, k, budget)?.into_iter().collect())
}

/// Width by trying every subset, largest first.
pub fn brute_force_width(rp: &RankedPoset) -> usize {
    let n = rp.len();
    assert!(n <= 24, "subset scan limited to 24 elements");
    let lt = rp.strict_order();
    (0u32..1 << n)
        .filter(|&mask| {
            (0..n).all(|x| mask & (1 << x) == 0 || (0..n).all(|y| mask & (1 << y) == 0 || !lt[x][y]))
        })
        .map(|mask| mask.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// Every weight function with all level sums equal to `d`.
pub fn equal_level_sum_functions(rp: &RankedPoset, d: u64, budget: Budget) -> Result<Vec<WeightFunction>> {
    let mut out = vec![Vec::new()];
    for i in 0..=rp.rank() {
        let width = rp.level(i).len();
        let parts = compositions(d, width);
        let mut next = Vec::with_capacity(out.len() * parts.len());
        for prefix in &out {
            for p in &parts {
                let mut v: Vec<u64> = Vec::clone(prefix);
                v.extend_from_slice(p);
                next.push(v);
            }
        }
        if next.len() as u64 > budget.max_nodes {
            return Err(Error::BudgetExceeded {
                budget: budget.max_nodes,
                found: 0,
            });
        }
        out = next;
    }
    Ok(out.into_iter().map(WeightFunction).collect())
}

fn compositions(d: u64, parts: usize) -> Vec<Vec<u64>> {
    if parts == 1 {
        return vec![vec![d]];
    }
    (0..=d)
        .flat_map(|first| {
            compositions(d - first, parts - 1).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

/// A deliberate defect, used to show that the harness reports failures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Drop the last element of every nonzero graded piece.
    DropLastMember,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl OracleCheck {
    fn new(name: &str, failure: Option<String>, ok: String) -> Self {
        Self {
            name: name.to_string(),
            passed: failure.is_none(),
            detail: failure.unwrap_or(ok),
        }
    }
}

fn first_difference(rp: &RankedPoset, a: &BTreeSet<WeightFunction>, b: &BTreeSet<WeightFunction>, names: (&str, &str)) -> Option<String> {
    let only_a = a.difference(b).next();
    let only_b = b.difference(a).next();
    match (only_a, only_b) {
        (Some(f), _) => Some(format!("{} only in {}", f.display(rp), names.0)),
        (None, Some(f)) => Some(format!("{} only in {}", f.display(rp), names.1)),
        (None, None) => None,
    }
}

/// Runs every cross-check on `rp` for degrees up to `max_degree`.
pub fn run_all(rp: &RankedPoset, max_degree: u64, budget: Budget, fault: Option<Fault>) -> Result<Vec<OracleCheck>> {
    let mut checks = Vec::new();
    let mut members: Vec<WeightFunction> = Vec::new();

    // Membership: flow, subset scan and perfect matchings agree.
    let mut failure = None;
    let mut tested = 0usize;
    'outer: for d in 0..=max_degree {
        for f in equal_level_sum_functions(rp, d, budget)? {
            tested += 1;
            let flow = is_member(rp, &f, false)?.is_member();
            let scan = check_inequalities(rp, &f)?;
            let matching = is_member_by_parallelization(rp, &f)?;
            if flow != scan || flow != matching {
                failure = Some(format!(
                    "{}: flow {flow}, subset scan {scan}, matchings {matching}",
                    f.display(rp)
                ));
                break 'outer;
            }
        }
    }
    checks.push(OracleCheck::new(
        "membership: transportation == Hall inequalities == perfect matchings",
        failure,
        format!("{tested} functions"),
    ));

    // Graded pieces.
    let mut failure = None;
    for d in 0..=max_degree {
        let mut piece = semigroup::enumerate_degree(rp, d, budget)?.elements;
        if fault == Some(Fault::DropLastMember) && d > 0 {
            piece.pop();
        }
        let enumerated: BTreeSet<WeightFunction> = piece.iter().cloned().collect();
        let sums = sumset_degree(rp, d, budget)?;
        let boxed = box_lattice_points(rp, d, budget)?;
        let diff = first_difference(rp, &enumerated, &sums, ("enumerate_degree", "sumset"))
            .or_else(|| first_difference(rp, &sums, &boxed, ("sumset", "lattice points of the dilate")));
        if let Some(diff) = diff {
            failure = Some(format!("degree {d}: {diff}"));
            break;
        }
        members.extend(piece);
    }
    checks.push(OracleCheck::new(
        "graded pieces: enumeration == sumset of chains == lattice points of k D_P",
        failure,
        format!("degrees 0..={max_degree}, {} members", members.len()),
    ));

    // Decomposition round trip.
    let mut failure = None;
    for f in &members {
        match is_member(rp, f, true)? {
            MembershipResult::Member {
                degree,
                decomposition: Some(dec),
            } => {
                let total: u64 = dec.iter().map(|(_, m)| m).sum();
                if semigroup::recompose(rp, &dec) != *f || total != degree {
                    failure = Some(format!("{} does not re-sum", f.display(rp)));
                    break;
                }
            }
            _ => {
                failure = Some(format!("{} rejected", f.display(rp)));
                break;
            }
        }
    }
    checks.push(OracleCheck::new(
        "decomposition: chains re-sum to f",
        failure,
        format!("{} members", members.len()),
    ));

    // Dimensions.
    let (dim, rank) = (krull_dimension(rp), chain_matrix_rank(rp));
    checks.push(OracleCheck::new(
        "dimension: |P| - Σ k_i == rank of the chain matrix",
        (dim != rank).then(|| format!("formula {dim}, rank {rank}")),
        format!("{dim}"),
    ));
    let (pdim, arank) = (polytope_dimension(rp), affine_rank(&polytope::lattice_points(rp)));
    checks.push(OracleCheck::new(
        "polytope dimension == affine rank of the vertices",
        (pdim != arank).then(|| format!("formula {pdim}, affine rank {arank}")),
        format!("{pdim}"),
    ));

    // Canonical ideal against its definition.
    let n_cap = derived_n_cap(rp);
    let mut failure = None;
    for f in &members {
        let fast = is_canonical_member(rp, f)?.is_canonical();
        let slow = definitional_canonical_test(rp, f, n_cap)?;
        if fast != slow {
            failure = Some(format!("{}: component test {fast}, definition {slow}", f.display(rp)));
            break;
        }
    }
    checks.push(OracleCheck::new(
        "canonical ideal: component test == definition n f - g ∈ C_P",
        failure,
        format!("{} members, n ≤ {n_cap}", members.len()),
    ));

    if rp.rank() > 0 {
        let ind = polytope::is_indecomposable(rp)?;
        let from_splits: Vec<usize> = ind.ordinal_splits.iter().filter_map(|s| s.after_level).collect();
        let off_level = ind.ordinal_splits.iter().any(|s| s.after_level.is_none());
        let mut detail = String::new();
        let _ = write!(detail, "complete levels {:?}", ind.complete_levels);
        checks.push(OracleCheck::new(
            "indecomposability: complete level graphs == ordinal sum splits",
            (from_splits != ind.complete_levels || off_level)
                .then(|| format!("complete levels {:?}, splits {:?}", ind.complete_levels, from_splits)),
            detail,
        ));
    }

    if rp.len() <= 20 {
        let (w, brute) = (rp.width().0, brute_force_width(rp));
        checks.push(OracleCheck::new(
            "width: Dilworth == largest antichain by subset scan",
            (w != brute).then(|| format!("Dilworth {w}, subset scan {brute}")),
            format!("{w}"),
        ));
    }

    if rp.width().0 <= 2 {
        let exact = width2::exact_a_invariant(rp)?;
        let cap = canonical::default_cap(rp);
        let searched = canonical::a_invariant_search(rp, cap, budget)?.a_invariant.known();
        checks.push(OracleCheck::new(
            "a-invariant: width-2 blocks == graded search",
            (searched != Some(exact)).then(|| format!("blocks {exact}, search {searched:?}")),
            format!("{exact}"),
        ));
    }

    Ok(checks)
}
