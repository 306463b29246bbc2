//! The canonical ideal `K_P` of the chain semigroup: membership, graded
//! pieces, the a-invariant, the regularity and a bounded Gorenstein check.
//!
//! `f` lies in `K_P` exactly when it is a positive member of `C_P` and
//! `f(X) < f(N_P(X))` for every nonempty proper subset `X` of every
//! connected component of every level graph.

use serde::Serialize;

use crate::enumerate::{self, Budget, GradedPiece, Target};
use crate::error::{Error, Result};
use crate::level::{level_graphs, LevelGraph};
use crate::poset::RankedPoset;
use crate::semigroup::{self, krull_dimension};
use crate::weight::WeightFunction;
use crate::width2;

/// Whether a subset of `P_i` meets some component of rank `i` properly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StrictSetQuery {
    pub level: usize,
    pub subset: Vec<usize>,
    pub strict: bool,
    /// Index of a component met properly, when strict.
    pub component: Option<usize>,
}

pub fn is_strict(rp: &RankedPoset, i: usize, subset: &[usize]) -> Result<StrictSetQuery> {
    if subset.is_empty() || i >= rp.rank() || subset.iter().any(|&x| x >= rp.len() || rp.rank_of(x) != i) {
        return Err(Error::NotPureSubset);
    }
    let g = LevelGraph::new(rp, i)?;
    let mut sorted = subset.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let component = g.components.iter().position(|c| {
        let inside = c.lower.iter().filter(|x| sorted.binary_search(x).is_ok()).count();
        inside > 0 && inside < c.lower.len()
    });
    Ok(StrictSetQuery {
        level: i,
        subset: sorted,
        strict: component.is_some(),
        component,
    })
}

/// Why a member of `C_P` is not in `K_P`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CanonicalViolation {
    ZeroCoordinate {
        element: usize,
    },
    NotStrict {
        level: usize,
        subset: Vec<usize>,
        neighbourhood: Vec<usize>,
        subset_weight: u64,
        neighbourhood_weight: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CanonicalVerdict {
    Canonical,
    NotCanonical(CanonicalViolation),
}

impl CanonicalVerdict {
    pub fn is_canonical(&self) -> bool {
        matches!(self, CanonicalVerdict::Canonical)
    }
}

pub fn is_canonical_member(rp: &RankedPoset, f: &WeightFunction) -> Result<CanonicalVerdict> {
    if !semigroup::is_member(rp, f, false)?.is_member() {
        return Err(Error::NotInSemigroup);
    }
    if let Some(element) = (0..rp.len()).find(|&x| f.get(x) == 0) {
        return Ok(CanonicalVerdict::NotCanonical(CanonicalViolation::ZeroCoordinate { element }));
    }
    for g in level_graphs(rp) {
        for (subset, neighbourhood) in enumerate::strict_pairs(rp, &g) {
            let subset_weight = f.sum_over(subset.iter().copied());
            let neighbourhood_weight = f.sum_over(neighbourhood.iter().copied());
            if subset_weight >= neighbourhood_weight {
                return Ok(CanonicalVerdict::NotCanonical(CanonicalViolation::NotStrict {
                    level: g.level,
                    subset,
                    neighbourhood,
                    subset_weight,
                    neighbourhood_weight,
                }));
            }
        }
    }
    Ok(CanonicalVerdict::Canonical)
}

/// Every element of `(K_P)_d`, in canonical order.
pub fn enumerate_canonical_degree(rp: &RankedPoset, d: u64, budget: Budget) -> Result<GradedPiece> {
    let piece = enumerate::collect(rp, d, Target::Canonical, budget)?;
    debug_assert!(piece.elements.iter().all(WeightFunction::is_positive));
    Ok(piece)
}

/// First element of `(K_P)_d` in canonical order.
pub fn first_canonical(rp: &RankedPoset, d: u64, budget: Budget) -> Result<Option<WeightFunction>> {
    enumerate::first(rp, d, Target::Canonical, budget)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "value", rename_all = "snake_case")]
pub enum AInvariant {
    Known(i64),
    /// No canonical element up to degree `cap`.
    Unknown(u64),
}

impl AInvariant {
    pub fn known(self) -> Option<i64> {
        match self {
            AInvariant::Known(a) => Some(a),
            AInvariant::Unknown(_) => None,
        }
    }
}

/// How an a-invariant was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ARoute {
    Search,
    Antichain,
    OrdinalSplit,
    Width2,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CanonicalReport {
    pub a_invariant: AInvariant,
    pub route: ARoute,
    pub dimension: usize,
    pub regularity: Option<i64>,
    /// `(K_P)_{-a}`; absent when unknown or too large for the budget.
    pub min_degree_elements: Option<GradedPiece>,
    pub rules: Vec<String>,
}

/// Default search cap `|P| + 2`.
pub fn default_cap(rp: &RankedPoset) -> u64 {
    rp.len() as u64 + 2
}

/// Least `d <= cap` with `(K_P)_d` nonempty, by graded search only.
pub fn min_canonical_degree(rp: &RankedPoset, cap: u64, budget: Budget) -> Result<Option<u64>> {
    for d in 1..=cap {
        if first_canonical(rp, d, budget)?.is_some() {
            return Ok(Some(d));
        }
    }
    Ok(None)
}

/// The a-invariant by graded search alone.
pub fn a_invariant_search(rp: &RankedPoset, cap: u64, budget: Budget) -> Result<CanonicalReport> {
    let a = match min_canonical_degree(rp, cap, budget)? {
        Some(d) => AInvariant::Known(-(d as i64)),
        None => AInvariant::Unknown(cap),
    };
    finish(rp, a, ARoute::Search, vec!["graded search for the least canonical degree".into()], budget)
}

/// The a-invariant, using exact shortcuts where available: antichains,
/// splitting at complete level graphs (the a-invariant of an ordinal sum is
/// the minimum over its summands) and the width-2 classification. Falls
/// back to graded search up to `cap`.
pub fn a_invariant(rp: &RankedPoset, cap: u64, budget: Budget) -> Result<CanonicalReport> {
    let mut rules = Vec::new();
    let (a, route) = fast_a(rp, cap, budget, &mut rules)?;
    let mut seen = std::collections::HashSet::new();
    rules.retain(|r| seen.insert(r.clone()));
    finish(rp, a, route, rules, budget)
}

fn fast_a(rp: &RankedPoset, cap: u64, budget: Budget, rules: &mut Vec<String>) -> Result<(AInvariant, ARoute)> {
    if rp.rank() == 0 {
        rules.push("antichain: polynomial ring, a = -|P|".into());
        return Ok((AInvariant::Known(-(rp.len() as i64)), ARoute::Antichain));
    }
    let cuts: Vec<usize> = level_graphs(rp)
        .iter()
        .filter(|g| g.is_complete_bipartite())
        .map(|g| g.level)
        .collect();
    if !cuts.is_empty() {
        rules.push("ordinal sum: a-invariant is the minimum over the summands".into());
        let mut best = i64::MAX;
        let mut start = 0;
        for end in cuts.iter().map(|&c| c + 1).chain([rp.rank() + 1]) {
            let part = rp.level_slice(start..end);
            start = end;
            let (a, _) = fast_a(&part, cap, budget, rules)?;
            match a {
                AInvariant::Known(a) => best = best.min(a),
                AInvariant::Unknown(c) => return Ok((AInvariant::Unknown(c), ARoute::OrdinalSplit)),
            }
        }
        return Ok((AInvariant::Known(best), ARoute::OrdinalSplit));
    }
    if rp.width().0 <= 2 {
        rules.push("width 2: a = -(λ + 2) for a basic poset of type with maximum entry λ".into());
        return Ok((AInvariant::Known(width2::exact_a_invariant(rp)?), ARoute::Width2));
    }
    rules.push("graded search for the least canonical degree".into());
    let a = match min_canonical_degree(rp, cap, budget)? {
        Some(d) => AInvariant::Known(-(d as i64)),
        None => AInvariant::Unknown(cap),
    };
    Ok((a, ARoute::Search))
}

fn finish(rp: &RankedPoset, a: AInvariant, route: ARoute, rules: Vec<String>, budget: Budget) -> Result<CanonicalReport> {
    let dimension = krull_dimension(rp);
    let (regularity, min_degree_elements) = match a {
        AInvariant::Known(a) => {
            let piece = match enumerate_canonical_degree(rp, (-a) as u64, budget) {
                Ok(p) => Some(p),
                Err(Error::BudgetExceeded { .. }) => None,
                Err(e) => return Err(e),
            };
            (Some(dimension as i64 + a), piece)
        }
        AInvariant::Unknown(_) => (None, None),
    };
    Ok(CanonicalReport {
        a_invariant: a,
        route,
        dimension,
        regularity,
        min_degree_elements,
        rules,
    })
}

/// `krull_dimension + a`.
pub fn regularity(rp: &RankedPoset, cap: u64, budget: Budget) -> Result<i64> {
    let report = a_invariant(rp, cap, budget)?;
    report.regularity.ok_or(Error::AInvariantUnknown { cap })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum GorensteinWitness {
    /// `(K_P)_d = f0 + (C_P)_{d+a}` for every `d <= cap`, with `f0` the
    /// unique element of least degree. Not a proof beyond `cap`.
    VerifiedUpTo { cap: u64, generator: WeightFunction },
    /// The least canonical degree carries several elements.
    NotUnique { degree: u64, elements: Vec<WeightFunction> },
    /// `witness` lies in `(K_P)_degree` but not in `f0 + C_P`.
    NotPrincipal {
        degree: u64,
        generator: WeightFunction,
        witness: WeightFunction,
    },
}

impl GorensteinWitness {
    pub fn verified(&self) -> bool {
        matches!(self, GorensteinWitness::VerifiedUpTo { .. })
    }
}

/// Checks `K_P = f0 + C_P` degree by degree up to `cap`.
pub fn gorenstein_witness(rp: &RankedPoset, cap: u64, budget: Budget) -> Result<GorensteinWitness> {
    let d0 = min_canonical_degree(rp, cap, budget)?.ok_or(Error::AInvariantUnknown { cap })?;
    let bottom = enumerate_canonical_degree(rp, d0, budget)?;
    if bottom.len() != 1 {
        return Ok(GorensteinWitness::NotUnique {
            degree: d0,
            elements: bottom.elements,
        });
    }
    let f0 = bottom.elements.into_iter().next().expect("one element");
    for d in d0 + 1..=cap {
        let canonical = enumerate_canonical_degree(rp, d, budget)?;
        let mut shifted: Vec<WeightFunction> = semigroup::enumerate_degree(rp, d - d0, budget)?
            .elements
            .iter()
            .map(|g| g.add(&f0))
            .collect();
        shifted.sort();
        if let Some(witness) = canonical.elements.iter().find(|f| shifted.binary_search(f).is_err()) {
            return Ok(GorensteinWitness::NotPrincipal {
                degree: d,
                generator: f0,
                witness: witness.clone(),
            });
        }
        // f0 + C_P always lies inside K_P; a mismatch here is a bug.
        assert_eq!(canonical.elements.len(), shifted.len(), "f0 + C_P escaped K_P in degree {d}");
    }
    Ok(GorensteinWitness::VerifiedUpTo { cap, generator: f0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn b() -> Budget {
        Budget::default()
    }

    fn x_values(rp: &RankedPoset, f: &WeightFunction) -> Vec<u64> {
        (0..=rp.rank()).map(|k| f.get(rp.id(&format!("X{k}")).unwrap())).collect()
    }

    #[test]
    fn strict_sets_on_the_diamond() {
        let rp = corpus::diamond();
        let (b_, c) = (rp.id("b").unwrap(), rp.id("c").unwrap());
        let q = is_strict(&rp, 1, &[b_]).unwrap();
        assert!(q.strict);
        assert_eq!(q.component, Some(0));
        assert!(!is_strict(&rp, 1, &[b_, c]).unwrap().strict);
        assert_eq!(is_strict(&rp, 0, &[b_]), Err(Error::NotPureSubset));
        assert_eq!(is_strict(&rp, 1, &[]), Err(Error::NotPureSubset));
        assert_eq!(is_strict(&rp, 2, &[rp.id("d").unwrap()]), Err(Error::NotPureSubset));
    }

    #[test]
    fn disjoint_chain_components_are_never_strict() {
        let rp = corpus::disjoint_chains(2, 2);
        for x in rp.level(0) {
            assert!(!is_strict(&rp, 0, &[x]).unwrap().strict);
        }
    }

    #[test]
    fn canonical_membership_examples() {
        let rp = corpus::diamond();
        assert!(is_canonical_member(&rp, &WeightFunction(vec![2, 1, 1, 2])).unwrap().is_canonical());
        assert_eq!(
            is_canonical_member(&rp, &WeightFunction(vec![2, 2, 0, 2])).unwrap(),
            CanonicalVerdict::NotCanonical(CanonicalViolation::ZeroCoordinate { element: 2 })
        );
        assert_eq!(
            is_canonical_member(&rp, &WeightFunction(vec![1, 1, 1, 1])),
            Err(Error::NotInSemigroup)
        );

        let b1 = corpus::basic(&[1]);
        let map = [("X0", 1), ("Y0", 2), ("X1", 2), ("Y1", 1)]
            .iter()
            .map(|&(l, v)| (l.to_string(), v))
            .collect();
        let f = WeightFunction::from_labels(&b1, &map).unwrap();
        assert!(is_canonical_member(&b1, &f).unwrap().is_canonical());
    }

    #[test]
    fn canonical_pieces() {
        let rp = corpus::diamond();
        assert_eq!(
            enumerate_canonical_degree(&rp, 2, b()).unwrap().elements,
            vec![WeightFunction(vec![2, 1, 1, 2])]
        );
        assert!(enumerate_canonical_degree(&rp, 1, b()).unwrap().is_empty());
        assert!(enumerate_canonical_degree(&rp, 0, b()).unwrap().is_empty());

        let b1 = corpus::basic(&[1]);
        let piece = enumerate_canonical_degree(&b1, 3, b()).unwrap();
        assert_eq!(piece.len(), 1);
        assert_eq!(x_values(&b1, &piece.elements[0]), vec![1, 2]);
    }

    #[test]
    fn a_invariants() {
        for (rp, a) in [
            (corpus::pair(), -2),
            (corpus::basic(&[2]), -4),
            (corpus::diamond(), -2),
            (corpus::chain(3), -1),
            (corpus::basic(&[2, 1]), -4),
        ] {
            let cap = default_cap(&rp);
            assert_eq!(a_invariant_search(&rp, cap, b()).unwrap().a_invariant, AInvariant::Known(a), "{rp}");
            assert_eq!(a_invariant(&rp, cap, b()).unwrap().a_invariant, AInvariant::Known(a), "{rp}");
        }
    }

    #[test]
    fn fast_routes_are_reported() {
        assert_eq!(a_invariant(&corpus::pair(), 4, b()).unwrap().route, ARoute::Antichain);
        assert_eq!(a_invariant(&corpus::diamond(), 6, b()).unwrap().route, ARoute::OrdinalSplit);
        assert_eq!(a_invariant(&corpus::basic(&[1, 1]), 8, b()).unwrap().route, ARoute::Width2);
        let hexagon = corpus::bipartite(3, 3, &[(0, 0), (0, 1), (1, 1), (1, 2), (2, 2), (2, 0)]);
        let report = a_invariant(&hexagon, 8, b()).unwrap();
        assert_eq!(report.route, ARoute::Search);
        assert_eq!(report.a_invariant, a_invariant_search(&hexagon, 8, b()).unwrap().a_invariant);
    }

    #[test]
    fn exhausted_cap_is_unknown() {
        let rp = corpus::basic(&[2]);
        let report = a_invariant_search(&rp, 3, b()).unwrap();
        assert_eq!(report.a_invariant, AInvariant::Unknown(3));
        assert_eq!(report.regularity, None);
        assert_eq!(regularity(&corpus::boolean_lattice(3), 1, b()), Err(Error::AInvariantUnknown { cap: 1 }));
    }

    #[test]
    fn regularities() {
        assert_eq!(regularity(&corpus::basic(&[1]), 6, b()).unwrap(), 0);
        assert_eq!(regularity(&corpus::basic(&[1, 1]), 8, b()).unwrap(), 1);
        assert_eq!(regularity(&corpus::chain(3), 6, b()).unwrap(), 0);
    }

    #[test]
    fn minimal_elements_are_listed() {
        let rp = corpus::basic(&[2, 1]);
        let report = a_invariant(&rp, default_cap(&rp), b()).unwrap();
        let piece = report.min_degree_elements.unwrap();
        assert_eq!(piece.degree, 4);
        let xs: Vec<Vec<u64>> = piece.elements.iter().map(|f| x_values(&rp, f)).collect();
        assert_eq!(xs, vec![vec![1, 2, 3, 1], vec![1, 2, 3, 2]]);
    }

    #[test]
    fn gorenstein_witnesses() {
        assert!(matches!(
            gorenstein_witness(&corpus::basic(&[2]), 6, b()).unwrap(),
            GorensteinWitness::VerifiedUpTo { cap: 6, .. }
        ));
        assert!(gorenstein_witness(&corpus::diamond(), 5, b()).unwrap().verified());
        match gorenstein_witness(&corpus::basic(&[2, 1]), 5, b()).unwrap() {
            GorensteinWitness::NotUnique { degree, elements } => {
                assert_eq!(degree, 4);
                assert_eq!(elements.len(), 2);
            }
            other => panic!("unexpected {other:?}"),
        }
        match gorenstein_witness(&corpus::basic(&[2, 1, 2]), 6, b()).unwrap() {
            GorensteinWitness::NotPrincipal { degree, .. } => assert_eq!(degree, 5),
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(
            gorenstein_witness(&corpus::basic(&[2]), 3, b()),
            Err(Error::AInvariantUnknown { cap: 3 })
        );
    }
}
