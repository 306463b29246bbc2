//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Every random input comes from a fixed seed.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use chainalg::canonical::{
    a_invariant_search, enumerate_canonical_degree, gorenstein_witness, is_canonical_member, AInvariant,
    GorensteinWitness,
};
use chainalg::corpus::{self, RandomShape};
use chainalg::oracle::{box_lattice_points, chain_matrix_rank, definitional_canonical_test, derived_n_cap, sumset_degree};
use chainalg::polytope::{is_indecomposable, ordinal_splits};
use chainalg::semigroup::{
    check_inequalities, enumerate_degree, is_member, is_member_by_parallelization, krull_dimension, recompose,
};
use chainalg::width2::{classify, exact_a_invariant, TypeVector};
use chainalg::{Budget, MembershipResult, RankedPoset, WeightFunction};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn budget() -> Budget {
    Budget::default()
}

fn show(rp: &RankedPoset) -> String {
    let sizes: Vec<String> = rp.level_sizes().iter().map(ToString::to_string).collect();
    format!("poset with levels [{}] and covers {:?}", sizes.join(","), rp.to_poset().cover_labels())
}

fn ok_or<E: std::fmt::Display, T>(r: Result<T, E>, what: &str) -> Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

/// The named posets followed by 200 random pure posets with at most 12
/// elements and width at most 4.
fn general_corpus() -> Vec<RankedPoset> {
    let mut out: Vec<RankedPoset> = corpus::NAMED.iter().map(|n| corpus::named(n).unwrap()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    let mut generated = 0;
    while generated < 200 {
        let shape = RandomShape {
            max_elements: 12,
            max_rank: 5,
            max_level: 4,
            density: rng.gen_range(0.25..0.75),
        };
        let rp = corpus::random_pure(&mut rng, shape);
        if rp.width().0 <= 4 {
            out.push(rp);
            generated += 1;
        }
    }
    out
}

/// Named width-2 posets, every basic type of rank at most 4, random width-2
/// posets and width-2 ordinal sums.
fn width2_corpus() -> Vec<RankedPoset> {
    let mut out: Vec<RankedPoset> = corpus::NAMED.iter().map(|n| corpus::named(n).unwrap()).collect();
    out.extend(corpus::basic_types(4).iter().map(|c| corpus::basic(c)));
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    for _ in 0..15 {
        out.push(corpus::random_width2(&mut rng, 4));
    }
    for _ in 0..10 {
        let blocks = rng.gen_range(2..=3);
        out.push(corpus::random_block_sum(&mut rng, blocks, true).1);
    }
    out.retain(|rp| rp.len() <= 12);
    out
}

/// A weight function with entries at most 4; most have equal level sums.
fn random_weights<R: Rng>(rng: &mut R, rp: &RankedPoset) -> WeightFunction {
    let mut f = WeightFunction::zero(rp.len());
    if rng.gen_bool(0.2) {
        for v in f.0.iter_mut() {
            *v = rng.gen_range(0..=4);
        }
        return f;
    }
    let smallest = *rp.level_sizes().iter().min().unwrap() as u64;
    let d = rng.gen_range(0..=4 * smallest);
    for i in 0..=rp.rank() {
        let ids: Vec<usize> = rp.level(i).collect();
        for _ in 0..d {
            let open: Vec<usize> = ids.iter().copied().filter(|&x| f.0[x] < 4).collect();
            let &x = open.choose(rng).expect("d is at most 4 times the level size");
            f.0[x] += 1;
        }
    }
    f
}

/// A random sum of maximal chains.
fn random_member<R: Rng>(rng: &mut R, rp: &RankedPoset, chains: &[WeightFunction]) -> WeightFunction {
    let mut f = WeightFunction::zero(rp.len());
    for _ in 0..rng.gen_range(0..=8) {
        f = f.add(chains.choose(rng).unwrap());
    }
    f
}

fn membership_equivalence(general: &[RankedPoset]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0001);
    let mut tested = 0usize;
    let mut members = 0usize;
    for rp in general {
        for _ in 0..60 {
            let f = random_weights(&mut rng, rp);
            let flow = ok_or(is_member(rp, &f, false), "is_member")?.is_member();
            let scan = ok_or(check_inequalities(rp, &f), "check_inequalities")?;
            let matching = ok_or(is_member_by_parallelization(rp, &f), "parallelization")?;
            if flow != scan || flow != matching {
                return Err(format!(
                    "{} on {}: flow {flow}, inequalities {scan}, matchings {matching}",
                    f.display(rp),
                    show(rp)
                ));
            }
            tested += 1;
            members += flow as usize;
        }
    }
    Ok(format!("{} posets, {tested} functions ({members} members)", general.len()))
}

fn sumset_oracle(general: &[RankedPoset]) -> Outcome {
    let mut points = 0usize;
    for rp in general {
        for k in 0..=3 {
            let enumerated: BTreeSet<WeightFunction> =
                ok_or(enumerate_degree(rp, k, budget()), "enumerate_degree")?.elements.into_iter().collect();
            let sums = ok_or(sumset_degree(rp, k, budget()), "sumset_degree")?;
            let boxed = ok_or(box_lattice_points(rp, k, budget()), "box_lattice_points")?;
            if enumerated != sums || sums != boxed {
                return Err(format!(
                    "degree {k} on {}: {} enumerated, {} sums, {} lattice points",
                    show(rp),
                    enumerated.len(),
                    sums.len(),
                    boxed.len()
                ));
            }
            points += enumerated.len();
        }
    }
    Ok(format!("{} posets, k <= 3, {points} points", general.len()))
}

fn dimension(general: &[RankedPoset]) -> Outcome {
    for rp in general {
        let (dim, rank) = (krull_dimension(rp), chain_matrix_rank(rp));
        if dim != rank {
            return Err(format!("{}: formula {dim}, chain matrix rank {rank}", show(rp)));
        }
    }
    // Distributive lattices of order ideals: dimension |L| - r, r = |Q|.
    let mut lattices: Vec<(String, RankedPoset, usize)> = vec![
        ("boolean 2".into(), corpus::boolean_lattice(2), 2),
        ("boolean 3".into(), corpus::boolean_lattice(3), 3),
        ("boolean 4".into(), corpus::boolean_lattice(4), 4),
        ("2x2 chains".into(), corpus::chain_product(&[2, 2]), 4),
        ("2x3 chains".into(), corpus::chain_product(&[2, 3]), 5),
        ("1x1x2 chains".into(), corpus::chain_product(&[1, 1, 2]), 4),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0003);
    for t in 0..8 {
        let n = rng.gen_range(3..=5);
        let mut lt: Vec<Vec<bool>> = (0..n).map(|a| (0..n).map(|b| a < b && rng.gen_bool(0.35)).collect()).collect();
        // Transitive closure of a random relation compatible with 0 < 1 < ... < n-1.
        for k in 0..n {
            for a in 0..n {
                for b in 0..n {
                    if lt[a][k] && lt[k][b] {
                        lt[a][b] = true;
                    }
                }
            }
        }
        lattices.push((format!("random ideal lattice {t}"), corpus::ideal_lattice(n, |a, b| lt[a][b]), n));
    }
    for (name, l, r) in &lattices {
        if l.rank() != *r {
            return Err(format!("{name}: rank {} but the underlying poset has {r} elements", l.rank()));
        }
        let expected = l.len() - r;
        let (dim, rank) = (krull_dimension(l), chain_matrix_rank(l));
        if dim != expected || rank != expected {
            return Err(format!("{name}: |L| - r = {expected}, formula {dim}, chain matrix rank {rank}"));
        }
    }
    Ok(format!("{} posets, {} distributive lattices", general.len(), lattices.len()))
}

fn canonical_members(rp: &RankedPoset, max_degree: u64) -> Result<usize, String> {
    let n_cap = derived_n_cap(rp);
    let mut count = 0;
    for d in 0..=max_degree {
        for f in ok_or(enumerate_degree(rp, d, budget()), "enumerate_degree")?.elements {
            let fast = ok_or(is_canonical_member(rp, &f), "is_canonical_member")?.is_canonical();
            let slow = ok_or(definitional_canonical_test(rp, &f, n_cap), "definitional test")?;
            if fast != slow {
                return Err(format!(
                    "{} on {}: component test {fast}, definition {slow}",
                    f.display(rp),
                    show(rp)
                ));
            }
            count += 1;
        }
    }
    Ok(count)
}

fn canonical_module(general: &[RankedPoset], width2: &[RankedPoset]) -> Outcome {
    let mut count = 0;
    for rp in width2 {
        let a = ok_or(exact_a_invariant(rp), "exact_a_invariant")?;
        let lambda = (-a - 2).max(1) as u64;
        count += canonical_members(rp, lambda + 3)?;
    }
    let sample = &general[..60];
    for rp in sample {
        count += canonical_members(rp, 4)?;
    }
    Ok(format!(
        "{} width-2 posets to degree λ+3, {} general posets to degree 4, {count} members",
        width2.len(),
        sample.len()
    ))
}

fn types_up_to_five() -> Vec<TypeVector> {
    corpus::basic_types(5)
        .into_iter()
        .map(|c| TypeVector::new(c).expect("compositions are valid types"))
        .collect()
}

fn basic_a_invariant() -> Outcome {
    let types = types_up_to_five();
    for t in &types {
        let rp = corpus::basic(&t.c);
        let report = ok_or(a_invariant_search(&rp, t.lambda as u64 + 4, budget()), "search")?;
        if report.a_invariant != AInvariant::Known(-(t.lambda as i64) - 2) {
            return Err(format!("type {:?}: search gives {:?}, λ = {}", t.c, report.a_invariant, t.lambda));
        }
    }
    Ok(format!("{} basic types with Σc <= 5", types.len()))
}

fn pseudo_gorenstein() -> Outcome {
    let mut pseudo = 0;
    let types = types_up_to_five();
    for t in &types {
        let rp = corpus::basic(&t.c);
        let count = ok_or(enumerate_canonical_degree(&rp, t.lambda as u64 + 2, budget()), "enumeration")?.len();
        if (count == 1) != t.is_pseudo_gorenstein() {
            return Err(format!("type {:?}: |(K_P)_(λ+2)| = {count}", t.c));
        }
        pseudo += (count == 1) as usize;
    }
    Ok(format!("{} types, {pseudo} pseudo-Gorenstein", types.len()))
}

fn gorenstein() -> Outcome {
    let types = types_up_to_five();
    for t in &types {
        let rp = corpus::basic(&t.c);
        let w = ok_or(gorenstein_witness(&rp, t.lambda as u64 + 4, budget()), "witness")?;
        if w.verified() != t.is_constant() {
            return Err(format!("type {:?}: witness {w:?}", t.c));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0007);
    let mut sums: Vec<RankedPoset> = vec![corpus::diamond(), corpus::named("PAIR").unwrap()];
    let s = |parts: &[RankedPoset]| corpus::ordinal_sum_of(parts);
    sums.push(s(&[corpus::antichain(1), corpus::basic(&[2]), corpus::antichain(1)]));
    sums.push(s(&[corpus::antichain(1), corpus::basic(&[1, 1]), corpus::pair()]));
    sums.push(s(&[corpus::basic(&[1]), corpus::antichain(1), corpus::basic(&[2])]));
    sums.push(s(&[corpus::basic(&[1]), corpus::basic(&[1])]));
    sums.push(s(&[corpus::pair(), corpus::antichain(1), corpus::pair()]));
    while sums.len() < 36 {
        let blocks = rng.gen_range(2..=3);
        sums.push(corpus::random_block_sum(&mut rng, blocks, true).1);
    }
    let mut verified = 0;
    let mut singleton_cases = 0;
    for rp in &sums {
        let report = ok_or(classify(rp, budget()), "classify")?;
        let cap = (-report.a_invariant) as u64 + 2;
        let w = ok_or(gorenstein_witness(rp, cap, budget()), "witness")?;
        let not_unique = matches!(w, GorensteinWitness::NotUnique { .. });
        if report.gorenstein.value != w.verified() || report.pseudo_gorenstein.value == not_unique {
            return Err(format!(
                "{}: classify says Gorenstein {} / pseudo {}, witness {w:?}",
                show(rp),
                report.gorenstein.value,
                report.pseudo_gorenstein.value
            ));
        }
        verified += w.verified() as usize;
        singleton_cases += rp.level_sizes().contains(&1) as usize;
    }
    Ok(format!(
        "{} types; {} ordinal sums ({verified} Gorenstein, {singleton_cases} with singleton levels)",
        types.len(),
        sums.len()
    ))
}

fn indecomposability(general: &[RankedPoset]) -> Outcome {
    let mut decomposable = 0;
    for rp in general.iter().filter(|rp| rp.rank() > 0) {
        let ind = ok_or(is_indecomposable(rp), "is_indecomposable")?;
        let splits = ordinal_splits(rp);
        let at_levels: Vec<usize> = splits.iter().filter_map(|s| s.after_level).collect();
        if splits.iter().any(|s| s.after_level.is_none()) || at_levels != ind.complete_levels {
            return Err(format!(
                "{}: complete levels {:?}, ordinal splits after {:?}",
                show(rp),
                ind.complete_levels,
                at_levels
            ));
        }
        decomposable += (!ind.indecomposable) as usize;
    }
    // Connected bipartite graphs as rank-one posets.
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0008);
    let mut graphs = 0;
    let mut complete = 0;
    while graphs < 16 {
        let (l, r) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let density = if graphs % 4 == 0 { 1.0 } else { 0.6 };
        let edges: Vec<(usize, usize)> = (0..l)
            .flat_map(|i| (0..r).map(move |j| (i, j)))
            .filter(|_| rng.gen_bool(density))
            .collect();
        let covered = (0..l).all(|i| edges.iter().any(|e| e.0 == i)) && (0..r).all(|j| edges.iter().any(|e| e.1 == j));
        if !covered {
            continue;
        }
        let rp = corpus::bipartite(l, r, &edges);
        if !chainalg::level::LevelGraph::new(&rp, 0).unwrap().is_connected() {
            continue;
        }
        let is_complete = edges.len() == l * r;
        let decomposes = !ordinal_splits(&rp).is_empty();
        let ind = ok_or(is_indecomposable(&rp), "is_indecomposable")?;
        if is_complete != decomposes || ind.indecomposable == is_complete {
            return Err(format!("{}: complete {is_complete}, splits {decomposes}", show(&rp)));
        }
        graphs += 1;
        complete += is_complete as usize;
    }
    Ok(format!(
        "{} posets ({decomposable} decomposable); {graphs} connected bipartite graphs ({complete} complete)",
        general.len()
    ))
}

fn decomposition_round_trip(general: &[RankedPoset]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0009);
    for rp in general {
        let chains: Vec<WeightFunction> = rp.maximal_chains().iter().map(|c| WeightFunction::from_chain(rp, c)).collect();
        for _ in 0..1000 {
            let f = random_member(&mut rng, rp, &chains);
            match ok_or(is_member(rp, &f, true), "is_member")? {
                MembershipResult::Member {
                    degree,
                    decomposition: Some(dec),
                } => {
                    let total: u64 = dec.iter().map(|(_, m)| m).sum();
                    if recompose(rp, &dec) != f || total != degree {
                        return Err(format!("{} on {}: decomposition does not re-sum", f.display(rp), show(rp)));
                    }
                }
                other => return Err(format!("{} on {}: {other:?}", f.display(rp), show(rp))),
            }
        }
    }
    Ok(format!("{} posets x 1000 members", general.len()))
}

fn segre_a_invariant() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0010);
    let mut checked = 0;
    while checked < 24 {
        let blocks = rng.gen_range(2..=3);
        let (parts, sum) = corpus::random_block_sum(&mut rng, blocks, false);
        if sum.len() > 16 {
            continue;
        }
        let mut expected = i64::MAX;
        for p in &parts {
            let a = ok_or(a_invariant_search(p, chainalg::canonical::default_cap(p), budget()), "block search")?;
            match a.a_invariant {
                AInvariant::Known(a) => expected = expected.min(a),
                AInvariant::Unknown(c) => return Err(format!("block {} unknown up to {c}", show(p))),
            }
        }
        let got = ok_or(a_invariant_search(&sum, (-expected) as u64 + 1, budget()), "sum search")?.a_invariant;
        if got != AInvariant::Known(expected) {
            return Err(format!("{}: search {got:?}, minimum over blocks {expected}", show(&sum)));
        }
        checked += 1;
    }
    Ok(format!("{checked} ordinal sums"))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let general = general_corpus();
    let width2 = width2_corpus();
    let criteria: Vec<(&str, Option<Duration>, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("membership equivalence", Some(Duration::from_secs(120)), Box::new(|| membership_equivalence(&general))),
        ("graded pieces == sumsets == dilate lattice points", Some(Duration::from_secs(300)), Box::new(|| sumset_oracle(&general))),
        ("Krull dimension == chain matrix rank", None, Box::new(|| dimension(&general))),
        ("canonical ideal == definitional test", None, Box::new(|| canonical_module(&general, &width2))),
        ("basic a-invariant == -(λ+2)", Some(Duration::from_secs(60)), Box::new(basic_a_invariant)),
        ("pseudo-Gorenstein basic types", None, Box::new(pseudo_gorenstein)),
        ("Gorenstein witness == classification", None, Box::new(gorenstein)),
        ("complete level graphs == ordinal splits", None, Box::new(|| indecomposability(&general))),
        ("decomposition round trip", None, Box::new(|| decomposition_round_trip(&general))),
        ("ordinal sum a-invariant == block minimum", None, Box::new(segre_a_invariant)),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let mut outcome = run();
        let elapsed = t.elapsed();
        if let (Ok(detail), Some(limit)) = (&outcome, limit) {
            if elapsed > *limit {
                outcome = Err(format!("{detail}; took {elapsed:.1?}, limit {limit:?}"));
            }
        }
        match outcome {
            Ok(detail) => println!("PASS [{:>2}] {name}: {detail} ({elapsed:.1?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL [{:>2}] {name}: {why} ({elapsed:.1?})", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed in {:.1?}",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
