//! The chain polytope `D_P`, the convex hull of the characteristic vectors
//! of maximal chains: dilation membership by exact linear programming,
//! lattice points of dilates, the integer decomposition property,
//! dimension and indecomposability.

use std::collections::BTreeSet;

use num_traits::Zero;
use serde::Serialize;

use crate::enumerate::Budget;
use crate::error::{Error, Result};
use crate::level::level_graphs;
use crate::lp::{nonnegative_solution, rational, Rational};
use crate::poset::{Chain, RankedPoset};
use crate::semigroup::{enumerate_degree, hilbert_basis, krull_dimension};
use crate::weight::WeightFunction;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainPolytope {
    pub vertices: Vec<WeightFunction>,
    pub ambient_dimension: usize,
}

impl ChainPolytope {
    pub fn new(rp: &RankedPoset) -> Self {
        Self {
            vertices: hilbert_basis(rp),
            ambient_dimension: rp.len(),
        }
    }
}

/// The lattice points of `D_P`, which are exactly its vertices.
pub fn lattice_points(rp: &RankedPoset) -> Vec<WeightFunction> {
    hilbert_basis(rp)
}

/// Nonnegative rationals `λ_C` with `Σ λ_C χ_C = f` and `Σ λ_C = k` over
/// the given chains, if they exist.
fn combination(chains: &[Vec<usize>], f: &[u64], k: u64) -> Option<Vec<(usize, Rational)>> {
    if f.iter().sum::<u64>() != k * chains.first().map_or(0, |c| c.len() as u64) {
        return None;
    }
    // A chain through a zero coordinate must have coefficient zero.
    let usable: Vec<usize> = (0..chains.len())
        .filter(|&c| chains[c].iter().all(|&x| f[x] > 0))
        .collect();
    let support: Vec<usize> = (0..f.len()).filter(|&x| f[x] > 0).collect();
    let mut a: Vec<Vec<Rational>> = support
        .iter()
        .map(|&x| {
            usable
                .iter()
                .map(|&c| rational(chains[c].contains(&x) as i64))
                .collect()
        })
        .collect();
    a.push(vec![rational(1); usable.len()]);
    let mut b: Vec<Rational> = support.iter().map(|&x| rational(f[x] as i64)).collect();
    b.push(rational(k as i64));
    if usable.is_empty() {
        return (k == 0 && support.is_empty()).then(Vec::new);
    }
    let lambda = nonnegative_solution(&a, &b)?;
    Some(usable.into_iter().zip(lambda).filter(|(_, l)| !l.is_zero()).collect())
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

/// Coefficients writing `f` as `k` times a convex combination of vertices,
/// re-verified by substitution.
pub fn dilation_certificate(rp: &RankedPoset, f: &WeightFunction, k: u64) -> Result<Option<Vec<(Chain, Rational)>>> {
    check_len(rp, f)?;
    let chains: Vec<Chain> = rp.maximal_chains();
    let raw: Vec<Vec<usize>> = chains.iter().map(|c| c.elements().to_vec()).collect();
    let Some(lambda) = combination(&raw, f.values(), k) else {
        return Ok(None);
    };
    let mut total = vec![Rational::zero(); rp.len()];
    for (c, l) in &lambda {
        for &x in &raw[*c] {
            total[x] += l;
        }
    }
    assert!(
        total.iter().zip(f.values()).all(|(t, &v)| *t == rational(v as i64)),
        "dilation certificate fails substitution"
    );
    Ok(Some(lambda.into_iter().map(|(c, l)| (chains[c].clone(), l)).collect()))
}

/// Whether `f ∈ k D_P`, decided by exact linear programming.
pub fn in_dilated_polytope(rp: &RankedPoset, f: &WeightFunction, k: u64) -> Result<bool> {
    Ok(dilation_certificate(rp, f, k)?.is_some())
}

/// The integer points of `k D_P`, in canonical order: level by level, all
/// compositions of `k`, keeping a prefix only when it lies in the dilated
/// chain polytope of the levels assigned so far (the projection of `k D_P`).
pub fn dilated_lattice_points(rp: &RankedPoset, k: u64, budget: Budget) -> Result<Vec<WeightFunction>> {
    let full: Vec<Vec<usize>> = rp.maximal_chains().into_iter().map(|c| c.0).collect();
    let truncated: Vec<Vec<Vec<usize>>> = (0..=rp.rank())
        .map(|i| {
            let set: BTreeSet<Vec<usize>> = full.iter().map(|c| c[..=i].to_vec()).collect();
            set.into_iter().collect()
        })
        .collect();
    let mut scan = BoxScan {
        rp,
        k,
        truncated,
        budget,
        nodes: 0,
        f: vec![0; rp.len()],
        out: Vec::new(),
    };
    scan.level(0)?;
    Ok(scan.out)
}

struct BoxScan<'a> {
    rp: &'a RankedPoset,
    k: u64,
    truncated: Vec<Vec<Vec<usize>>>,
    budget: Budget,
    nodes: u64,
    f: Vec<u64>,
    out: Vec<WeightFunction>,
}

impl BoxScan<'_> {
    fn level(&mut self, i: usize) -> Result<()> {
        let ids: Vec<usize> = self.rp.level(i).collect();
        self.compose(i, &ids, 0, self.k)
    }

    fn compose(&mut self, i: usize, ids: &[usize], pos: usize, left: u64) -> Result<()> {
        if pos + 1 == ids.len() {
            self.f[ids[pos]] = left;
            return self.completed(i);
        }
        for v in 0..=left {
            self.f[ids[pos]] = v;
            self.compose(i, ids, pos + 1, left - v)?;
        }
        Ok(())
    }

    fn completed(&mut self, i: usize) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget.max_nodes {
            return Err(Error::BudgetExceeded {
                budget: self.budget.max_nodes,
                found: self.out.len(),
            });
        }
        let end = self.rp.level(i).end;
        if i > 0 && combination(&self.truncated[i], &self.f[..end], self.k).is_none() {
            return Ok(());
        }
        if i == self.rp.rank() {
            self.out.push(WeightFunction(self.f.clone()));
            return Ok(());
        }
        self.level(i + 1)
    }
}

/// Outcome of comparing the lattice points of `k D_P` with `(C_P)_k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdpCheck {
    pub k: u64,
    pub polytope_points: usize,
    pub semigroup_points: usize,
    pub holds: bool,
    /// First point, in canonical order, found on only one side.
    pub first_difference: Option<WeightFunction>,
}

/// Every lattice point of `k D_P` is a sum of `k` lattice points of `D_P`
/// exactly when the two sets below coincide. A failure indicates a bug.
pub fn idp_check(rp: &RankedPoset, k: u64, budget: Budget) -> Result<IdpCheck> {
    let polytope = dilated_lattice_points(rp, k, budget)?;
    let semigroup = enumerate_degree(rp, k, budget)?.elements;
    let a: BTreeSet<&WeightFunction> = polytope.iter().collect();
    let b: BTreeSet<&WeightFunction> = semigroup.iter().collect();
    let first_difference = a.symmetric_difference(&b).min().map(|&f| f.clone());
    Ok(IdpCheck {
        k,
        polytope_points: polytope.len(),
        semigroup_points: semigroup.len(),
        holds: first_difference.is_none(),
        first_difference,
    })
}

/// `dim D_P = |P| - (k_0 + ... + k_{r-1}) - 1`.
pub fn polytope_dimension(rp: &RankedPoset) -> usize {
    krull_dimension(rp) - 1
}

/// An ordinal sum decomposition `P = L ⊕ U`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrdinalSplit {
    pub lower: Vec<String>,
    pub upper: Vec<String>,
    /// Set when `L` is the union of the levels `0..=i`.
    pub after_level: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Indecomposability {
    pub indecomposable: bool,
    /// Levels `i` with `G_i(P)` complete bipartite.
    pub complete_levels: Vec<usize>,
    /// Every way to write `P` as an ordinal sum of two nonempty posets.
    pub ordinal_splits: Vec<OrdinalSplit>,
}

/// Every split `P = L ⊕ U` with `L`, `U` nonempty, from the order relation
/// alone. An element of `L` has fewer than `|L|` elements below it and an
/// element of `U` at least `|L|`, so `L` is determined by its size.
pub fn ordinal_splits(rp: &RankedPoset) -> Vec<OrdinalSplit> {
    let lt = rp.strict_order();
    let n = rp.len();
    let below: Vec<usize> = (0..n).map(|y| (0..n).filter(|&x| lt[x][y]).count()).collect();
    let mut out = Vec::new();
    for m in 1..n {
        let lower: Vec<usize> = (0..n).filter(|&x| below[x] < m).collect();
        if lower.len() != m {
            continue;
        }
        let upper: Vec<usize> = (0..n).filter(|&x| below[x] >= m).collect();
        if lower.iter().all(|&x| upper.iter().all(|&y| lt[x][y])) {
            let after_level = (0..rp.rank()).find(|&i| rp.level(i).end == m);
            out.push(OrdinalSplit {
                lower: lower.iter().map(|&x| rp.label(x).to_string()).collect(),
                upper: upper.iter().map(|&x| rp.label(x).to_string()).collect(),
                after_level,
            });
        }
    }
    out
}

/// `D_P` is indecomposable exactly when no level graph is complete
/// bipartite, equivalently when `P` is not an ordinal sum.
pub fn is_indecomposable(rp: &RankedPoset) -> Result<Indecomposability> {
    if rp.rank() == 0 {
        return Err(Error::RankZero);
    }
    let complete_levels: Vec<usize> = level_graphs(rp)
        .iter()
        .filter(|g| g.is_complete_bipartite())
        .map(|g| g.level)
        .collect();
    Ok(Indecomposability {
        indecomposable: complete_levels.is_empty(),
        complete_levels,
        ordinal_splits: ordinal_splits(rp),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn b() -> Budget {
        Budget::default()
    }

    #[test]
    fn lattice_point_counts() {
        assert_eq!(lattice_points(&corpus::diamond()).len(), 2);
        assert_eq!(lattice_points(&corpus::basic(&[1])).len(), 3);
        assert_eq!(lattice_points(&corpus::chain(3)).len(), 1);
        let p = ChainPolytope::new(&corpus::basic(&[2]));
        assert_eq!((p.vertices.len(), p.ambient_dimension), (4, 6));
    }

    #[test]
    fn dilation_membership() {
        let rp = corpus::diamond();
        for v in lattice_points(&rp) {
            assert!(in_dilated_polytope(&rp, &v, 1).unwrap());
        }
        assert!(in_dilated_polytope(&rp, &WeightFunction(vec![2, 1, 1, 2]), 2).unwrap());
        assert!(in_dilated_polytope(&rp, &WeightFunction(vec![2, 2, 0, 2]), 2).unwrap());
        assert!(!in_dilated_polytope(&rp, &WeightFunction(vec![1, 1, 1, 1]), 2).unwrap());
        let cert = dilation_certificate(&rp, &WeightFunction(vec![2, 1, 1, 2]), 2).unwrap().unwrap();
        assert_eq!(cert.len(), 2);
        assert!(cert.iter().all(|(_, l)| *l == rational(1)));
    }

    #[test]
    fn hall_violations_are_outside_the_dilate() {
        let rp = corpus::basic(&[1]);
        let map = [("X0", 2), ("Y0", 1), ("X1", 1), ("Y1", 2)]
            .iter()
            .map(|&(l, v)| (l.to_string(), v))
            .collect();
        let f = WeightFunction::from_labels(&rp, &map).unwrap();
        assert!(!in_dilated_polytope(&rp, &f, 3).unwrap());
    }

    #[test]
    fn idp_examples() {
        let c = idp_check(&corpus::diamond(), 2, b()).unwrap();
        assert!(c.holds);
        assert_eq!((c.polytope_points, c.semigroup_points), (3, 3));
        let c = idp_check(&corpus::basic(&[1]), 2, b()).unwrap();
        assert!(c.holds);
        assert_eq!(c.polytope_points, 6);
        for rp in [corpus::basic(&[2, 1]), corpus::boolean_lattice(3), corpus::antichain(3)] {
            assert!(idp_check(&rp, 1, b()).unwrap().holds);
            assert_eq!(dilated_lattice_points(&rp, 1, b()).unwrap(), lattice_points(&rp));
        }
    }

    #[test]
    fn dimensions() {
        assert_eq!(polytope_dimension(&corpus::chain(2)), 0);
        assert_eq!(polytope_dimension(&corpus::diamond()), 1);
        assert_eq!(polytope_dimension(&corpus::basic(&[2])), 3);
    }

    #[test]
    fn indecomposability() {
        assert!(is_indecomposable(&corpus::basic(&[1])).unwrap().indecomposable);
        let d = is_indecomposable(&corpus::diamond()).unwrap();
        assert!(!d.indecomposable);
        assert_eq!(d.complete_levels, vec![0, 1]);
        let after: Vec<Option<usize>> = d.ordinal_splits.iter().map(|s| s.after_level).collect();
        assert_eq!(after, vec![Some(0), Some(1)]);
        assert_eq!(is_indecomposable(&corpus::pair()), Err(Error::RankZero));
    }

    #[test]
    fn bipartite_rank_one_posets() {
        let path = corpus::bipartite(2, 2, &[(0, 0), (0, 1), (1, 1)]);
        assert!(is_indecomposable(&path).unwrap().indecomposable);
        let complete = corpus::bipartite(2, 3, &[(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2)]);
        assert!(!is_indecomposable(&complete).unwrap().indecomposable);
    }
}
