//! Named posets and generators used by the CLI, the tests and the
//! acceptance suite.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::poset::{Poset, RankedPoset};

fn ranked(elements: &[String], covers: &[(String, String)]) -> RankedPoset {
    Poset::new(elements, covers)
        .and_then(|p| p.certify_pure())
        .expect("generator produced an invalid poset")
}

/// The chain `x0 < x1 < ... < x{len}`.
pub fn chain(len: usize) -> RankedPoset {
    let elements: Vec<String> = (0..=len).map(|i| format!("x{i}")).collect();
    let covers: Vec<(String, String)> = elements
        .windows(2)
        .map(|w| (w[0].clone(), w[1].clone()))
        .collect();
    ranked(&elements, &covers)
}

pub fn antichain(size: usize) -> RankedPoset {
    let elements: Vec<String> = (0..size).map(|i| format!("a{i}")).collect();
    ranked(&elements, &[])
}

/// The two-element antichain `{p, q}`.
pub fn pair() -> RankedPoset {
    ranked(&["p".into(), "q".into()], &[])
}

/// `{a} ⊕ {b, c} ⊕ {d}`.
pub fn diamond() -> RankedPoset {
    let e: Vec<String> = ["a", "b", "c", "d"].map(String::from).to_vec();
    let c = [("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")].map(|(x, y)| (x.to_string(), y.to_string()));
    ranked(&e, &c)
}

/// `count` pairwise incomparable chains of length `len`.
pub fn disjoint_chains(count: usize, len: usize) -> RankedPoset {
    let mut elements = Vec::new();
    let mut covers = Vec::new();
    for c in 0..count {
        let name = |k: usize| format!("{}{k}", (b'A' + c as u8) as char);
        for k in 0..=len {
            elements.push(name(k));
            if k > 0 {
                covers.push((name(k - 1), name(k)));
            }
        }
    }
    ranked(&elements, &covers)
}

/// The basic poset of the given type on `X0..Xr`, `Y0..Yr`.
///
/// Runs alternate between the two chains, starting with `X`: within run `i`
/// the element on the run's side has a single upper cover.
pub fn basic(kind: &[usize]) -> RankedPoset {
    try_basic(kind).expect("type entries must be positive and the type nonempty")
}

pub fn try_basic(kind: &[usize]) -> Result<RankedPoset> {
    if kind.is_empty() || kind.contains(&0) {
        return Err(Error::PreconditionViolated(format!("invalid type {kind:?}")));
    }
    let r: usize = kind.iter().sum();
    let mut elements = Vec::new();
    for k in 0..=r {
        elements.push(format!("X{k}"));
        elements.push(format!("Y{k}"));
    }
    let mut covers = Vec::new();
    let mut k = 0;
    for (run, &c) in kind.iter().enumerate() {
        let (one, two) = if run % 2 == 0 { ("X", "Y") } else { ("Y", "X") };
        for _ in 0..c {
            covers.push((format!("{one}{k}"), format!("{one}{}", k + 1)));
            covers.push((format!("{two}{k}"), format!("{one}{}", k + 1)));
            covers.push((format!("{two}{k}"), format!("{two}{}", k + 1)));
            k += 1;
        }
    }
    Ok(ranked(&elements, &covers))
}

/// The distributive lattice of order ideals of the poset on `0..n` whose
/// strict order is given by `below(a, b)`.
pub fn ideal_lattice(n: usize, below: impl Fn(usize, usize) -> bool) -> RankedPoset {
    assert!(n <= 16);
    let is_ideal = |mask: u32| {
        (0..n).all(|b| mask & (1 << b) == 0 || (0..n).all(|a| !below(a, b) || mask & (1 << a) != 0))
    };
    let ideals: Vec<u32> = (0..(1u32 << n)).filter(|&m| is_ideal(m)).collect();
    let name = |m: u32| format!("I{m:05}");
    let elements: Vec<String> = ideals.iter().map(|&m| name(m)).collect();
    let mut covers = Vec::new();
    for &m in &ideals {
        for q in 0..n {
            let bigger = m | (1 << q);
            if bigger != m && is_ideal(bigger) {
                covers.push((name(m), name(bigger)));
            }
        }
    }
    ranked(&elements, &covers)
}

/// The Boolean lattice of subsets of an `n`-set.
pub fn boolean_lattice(n: usize) -> RankedPoset {
    ideal_lattice(n, |_, _| false)
}

/// The product of chains with the given numbers of elements.
pub fn chain_product(lengths: &[usize]) -> RankedPoset {
    // Order ideals of a disjoint union of chains.
    let mut owner = Vec::new();
    for (c, &len) in lengths.iter().enumerate() {
        for k in 0..len {
            owner.push((c, k));
        }
    }
    let n = owner.len();
    ideal_lattice(n, |a, b| owner[a].0 == owner[b].0 && owner[a].1 < owner[b].1)
}

/// The rank-one poset of a bipartite graph: `L{i}` below `R{j}` for every
/// edge. Every vertex must lie on an edge.
pub fn bipartite(left: usize, right: usize, edges: &[(usize, usize)]) -> RankedPoset {
    let elements: Vec<String> = (0..left)
        .map(|i| format!("L{i}"))
        .chain((0..right).map(|j| format!("R{j}")))
        .collect();
    let covers: Vec<(String, String)> = edges
        .iter()
        .map(|&(i, j)| (format!("L{i}"), format!("R{j}")))
        .collect();
    ranked(&elements, &covers)
}

/// Looks up one of the named posets: CHAIN, PAIR, DIAMOND, B1, B2, B11, B21.
pub fn named(name: &str) -> Option<RankedPoset> {
    Some(match name.to_ascii_uppercase().as_str() {
        "CHAIN" => chain(2),
        "PAIR" => pair(),
        "DIAMOND" => diamond(),
        "B1" => basic(&[1]),
        "B2" => basic(&[2]),
        "B11" => basic(&[1, 1]),
        "B21" => basic(&[2, 1]),
        _ => return None,
    })
}

pub const NAMED: [&str; 7] = ["CHAIN", "PAIR", "DIAMOND", "B1", "B2", "B11", "B21"];

/// Ordinal sum of several posets, prefixing labels with the block index.
pub fn ordinal_sum_of(blocks: &[RankedPoset]) -> RankedPoset {
    let mut iter = blocks.iter().enumerate().map(|(i, b)| b.prefixed(&format!("{}.", (b'a' + i as u8) as char)));
    let first = iter.next().expect("at least one block");
    iter.fold(first, |acc, b| acc.ordinal_sum(&b).expect("prefixed labels are disjoint"))
}

/// All compositions of `total` (ordered tuples of positive integers).
pub fn compositions(total: usize) -> Vec<Vec<usize>> {
    if total == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=total {
        for mut rest in compositions(total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Every basic type with entries summing to at most `max_rank`.
pub fn basic_types(max_rank: usize) -> Vec<Vec<usize>> {
    (1..=max_rank).flat_map(compositions).collect()
}

/// Shape parameters for [`random_pure`].
#[derive(Debug, Clone, Copy)]
pub struct RandomShape {
    pub max_elements: usize,
    pub max_rank: usize,
    pub max_level: usize,
    /// Probability of each optional cover edge.
    pub density: f64,
}

impl Default for RandomShape {
    fn default() -> Self {
        Self {
            max_elements: 12,
            max_rank: 4,
            max_level: 4,
            density: 0.4,
        }
    }
}

/// A random pure poset: random level sizes, then random covers between
/// consecutive levels such that no element is isolated from its neighbours.
pub fn random_pure<R: Rng>(rng: &mut R, shape: RandomShape) -> RankedPoset {
    let r = rng.gen_range(0..=shape.max_rank);
    let mut sizes: Vec<usize> = Vec::new();
    let mut total = 0;
    for i in 0..=r {
        let room = shape.max_elements - total - (r - i);
        let s = rng.gen_range(1..=shape.max_level.min(room).max(1));
        sizes.push(s);
        total += s;
    }
    let names: Vec<Vec<String>> = sizes
        .iter()
        .enumerate()
        .map(|(i, &s)| (0..s).map(|j| format!("v{i}{}", (b'a' + j as u8) as char)).collect())
        .collect();
    let mut covers = Vec::new();
    for i in 0..r {
        let (lo, hi) = (&names[i], &names[i + 1]);
        let mut edges = vec![vec![false; hi.len()]; lo.len()];
        for row in edges.iter_mut() {
            for e in row.iter_mut() {
                *e = rng.gen_bool(shape.density);
            }
        }
        for row in edges.iter_mut() {
            if !row.iter().any(|&e| e) {
                let j = rng.gen_range(0..row.len());
                row[j] = true;
            }
        }
        for j in 0..hi.len() {
            if !edges.iter().any(|row| row[j]) {
                let a = rng.gen_range(0..lo.len());
                edges[a][j] = true;
            }
        }
        for (a, row) in edges.iter().enumerate() {
            for (b, &e) in row.iter().enumerate() {
                if e {
                    covers.push((lo[a].clone(), hi[b].clone()));
                }
            }
        }
    }
    let elements: Vec<String> = names.into_iter().flatten().collect();
    ranked(&elements, &covers)
}

/// A random pure poset of width at most two: random level sizes in `{1, 2}`
/// and random level graphs (including disconnected two-edge matchings).
pub fn random_width2<R: Rng>(rng: &mut R, max_rank: usize) -> RankedPoset {
    loop {
        let shape = RandomShape {
            max_elements: 2 * (max_rank + 1),
            max_rank,
            max_level: 2,
            density: 0.6,
        };
        let rp = random_pure(rng, shape);
        if rp.width().0 <= 2 {
            return rp;
        }
    }
}

/// A random ordinal sum of small blocks drawn from antichains, chains and
/// basic posets.
pub fn random_block_sum<R: Rng>(rng: &mut R, blocks: usize, width2: bool) -> (Vec<RankedPoset>, RankedPoset) {
    let mut parts = Vec::new();
    for _ in 0..blocks {
        let choice = rng.gen_range(0..if width2 { 4 } else { 6 });
        let block = match choice {
            0 => antichain(1),
            1 => pair(),
            2 => basic(compositions(rng.gen_range(1..=3)).choose(rng).unwrap()),
            3 => basic(&[rng.gen_range(1..=2)]),
            4 => antichain(3),
            _ => random_pure(
                rng,
                RandomShape {
                    max_elements: 5,
                    max_rank: 1,
                    max_level: 3,
                    density: 0.5,
                },
            ),
        };
        parts.push(block);
    }
    let sum = ordinal_sum_of(&parts);
    (parts, sum)
}
