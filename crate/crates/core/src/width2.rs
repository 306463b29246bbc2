//! Pure posets of width at most 2.
//!
//! Such a poset reduces, by contracting every level graph made of two
//! disjoint edges, to an ordinal sum of singleton levels, two-element
//! antichains and basic posets. A basic poset has levels of size two joined
//! by paths with three edges; it is determined by its type, the lengths of
//! the maximal runs of degree-one elements along one of its two chains.

use std::collections::BTreeMap;
use std::ops::Range;

use serde::Serialize;

use crate::canonical::enumerate_canonical_degree;
use crate::enumerate::Budget;
use crate::error::{Error, Result};
use crate::level::level_graphs;
use crate::poset::{Poset, RankedPoset};
use crate::semigroup::{degree, krull_dimension};
use crate::weight::WeightFunction;

fn check_width(rp: &RankedPoset) -> Result<()> {
    let width = rp.width().0;
    if width > 2 {
        return Err(Error::WidthExceeded { width });
    }
    Ok(())
}

/// A reduced poset together with the map sending every original label to
/// the label that represents it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub reduced: RankedPoset,
    pub representative: BTreeMap<String, String>,
}

impl Reduction {
    /// The weight function on the reduced poset taking each representative's
    /// own value.
    pub fn contract(&self, f: &WeightFunction, original: &RankedPoset) -> WeightFunction {
        let values = self
            .reduced
            .labels()
            .iter()
            .map(|l| f.get(original.id(l).expect("representatives are original labels")))
            .collect();
        WeightFunction(values)
    }

    /// The weight function on the original poset that is constant on every
    /// contracted class.
    pub fn lift(&self, g: &WeightFunction, original: &RankedPoset) -> WeightFunction {
        let values = original
            .labels()
            .iter()
            .map(|l| g.get(self.reduced.id(&self.representative[l]).expect("representative exists")))
            .collect();
        WeightFunction(values)
    }

    /// Whether `f` is constant on every contracted class.
    pub fn respects(&self, f: &WeightFunction, original: &RankedPoset) -> bool {
        self.lift(&self.contract(f, original), original) == *f
    }
}

/// Contracts disconnected level graphs until every level graph is
/// connected. The lower element of each contracted edge is kept.
pub fn reduce(rp: &RankedPoset) -> Result<Reduction> {
    check_width(rp)?;
    let mut current = rp.clone();
    let mut representative: BTreeMap<String, String> = rp.labels().iter().map(|l| (l.clone(), l.clone())).collect();
    while let Some(g) = level_graphs(&current).into_iter().find(|g| !g.is_connected()) {
        let merge: BTreeMap<usize, usize> = g.edges.iter().map(|&(a, b)| (b, a)).collect();
        let rename = |x: usize| merge.get(&x).copied().unwrap_or(x);
        let elements: Vec<&str> = (0..current.len())
            .filter(|x| !merge.contains_key(x))
            .map(|x| current.label(x))
            .collect();
        let covers: Vec<(&str, &str)> = current
            .covers()
            .filter(|&(a, _)| current.rank_of(a) != g.level)
            .map(|(a, b)| (current.label(rename(a)), current.label(b)))
            .collect();
        for rep in representative.values_mut() {
            let id = current.id(rep).expect("representatives are current labels");
            *rep = current.label(rename(id)).to_string();
        }
        current = Poset::new(elements, covers)?.certify_pure()?;
    }
    Ok(Reduction {
        reduced: current,
        representative,
    })
}

/// A type `(c_1, ..., c_n)` with its derived quantities.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TypeVector {
    pub c: Vec<usize>,
    pub lambda: usize,
    /// Prefix sums `b_0 = 0, b_i = c_1 + ... + c_i`.
    pub b: Vec<usize>,
    pub rank: usize,
}

impl TypeVector {
    pub fn new(c: Vec<usize>) -> Result<Self> {
        if c.is_empty() || c.contains(&0) {
            return Err(Error::PreconditionViolated(format!("invalid type {c:?}")));
        }
        let mut b = vec![0];
        for &ci in &c {
            b.push(b.last().unwrap() + ci);
        }
        Ok(Self {
            lambda: *c.iter().max().unwrap(),
            rank: *b.last().unwrap(),
            b,
            c,
        })
    }

    /// Index of the run containing the step `X_k -> X_{k+1}`.
    fn run_of_step(&self, k: usize) -> usize {
        self.b.partition_point(|&bi| bi <= k) - 1
    }

    pub fn is_constant(&self) -> bool {
        self.c.iter().all(|&ci| ci == self.lambda)
    }

    /// `|(K_P)_{λ+2}| = 1` in closed form: all entries are 1 or λ, the first
    /// and last are λ, and every 1 sits between two λ. When λ = 1 every type
    /// qualifies.
    pub fn is_pseudo_gorenstein(&self) -> bool {
        let (c, lambda, n) = (&self.c, self.lambda, self.c.len());
        if lambda == 1 {
            return true;
        }
        c.iter().all(|&ci| ci == 1 || ci == lambda)
            && c[0] == lambda
            && c[n - 1] == lambda
            && (1..n - 1).all(|i| c[i] == lambda || (c[i - 1] == lambda && c[i + 1] == lambda))
    }
}

/// A certified basic poset with its two chains `X_0 < ... < X_r` and
/// `Y_0 < ... < Y_r`, labelled so that `X_0` has a single upper cover.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasicBlock {
    pub poset: RankedPoset,
    pub kind: TypeVector,
    pub x: Vec<usize>,
    pub y: Vec<usize>,
}

impl BasicBlock {
    pub fn new(rp: &RankedPoset) -> Result<Self> {
        let r = rp.rank();
        if r == 0 {
            return Err(Error::NotBasic("rank 0".into()));
        }
        if let Some(i) = (0..=r).find(|&i| rp.level(i).len() != 2) {
            return Err(Error::NotBasic(format!("level {i} does not have two elements")));
        }
        for g in level_graphs(rp) {
            if !g.is_connected() {
                return Err(Error::NotBasic(format!("level graph {} is disconnected", g.level)));
            }
            if g.is_complete_bipartite() {
                return Err(Error::NotBasic(format!("level graph {} is complete", g.level)));
            }
        }
        let lower = rp.level(0).start;
        let x0 = if rp.up(lower).len() == 1 { lower } else { lower + 1 };
        let (mut x, mut y) = (vec![x0], vec![if x0 == lower { lower + 1 } else { lower }]);
        let mut x_side = Vec::with_capacity(r);
        for k in 0..r {
            let (xk, yk) = (x[k], y[k]);
            let level = rp.level(k + 1);
            let other = |e: usize| if e == level.start { level.start + 1 } else { level.start };
            if rp.up(xk).len() == 1 {
                x_side.push(true);
                let next = rp.up(xk)[0];
                x.push(next);
                y.push(other(next));
            } else {
                x_side.push(false);
                let next = rp.up(yk)[0];
                y.push(next);
                x.push(other(next));
            }
        }
        let mut c = vec![1];
        for k in 1..r {
            if x_side[k] == x_side[k - 1] {
                *c.last_mut().unwrap() += 1;
            } else {
                c.push(1);
            }
        }
        Ok(Self {
            poset: rp.clone(),
            kind: TypeVector::new(c)?,
            x,
            y,
        })
    }

    fn x_values(&self, f: &WeightFunction) -> Result<(u64, Vec<u64>)> {
        let d = degree(&self.poset, f)?;
        Ok((d, self.x.iter().map(|&e| f.get(e)).collect()))
    }

    /// Zigzag test for membership in `C_P`: `f(X_k) <= f(X_{k+1})` on even
    /// runs and `>=` on odd runs.
    pub fn membership_profile(&self, f: &WeightFunction) -> Result<bool> {
        let (_, xs) = self.x_values(f)?;
        Ok((0..self.kind.rank).all(|k| {
            if self.kind.run_of_step(k) % 2 == 0 {
                xs[k] <= xs[k + 1]
            } else {
                xs[k] >= xs[k + 1]
            }
        }))
    }

    /// Strict zigzag plus positivity: membership in `K_P`.
    pub fn canonical_profile(&self, f: &WeightFunction) -> Result<bool> {
        let (_, xs) = self.x_values(f)?;
        if !f.is_positive() {
            return Ok(false);
        }
        Ok(strict_zigzag(&self.kind, &xs, 0..self.kind.rank))
    }

    /// Extends prescribed values of `f(X_k)` for `k` in an interval
    /// `[b_s, b_t]` to an element of `(K_P)_d`. Outside the interval, even
    /// runs count up `1, 2, ...` from value 1 and odd runs count down from
    /// `λ + 1`; every `f(Y_k)` is `d - f(X_k)`. An empty `partial` or a single
    /// boundary point is accepted.
    pub fn extend_to_canonical(&self, partial: &BTreeMap<usize, u64>, d: u64) -> Result<WeightFunction> {
        let kind = &self.kind;
        let lambda = kind.lambda as u64;
        let violated = |msg: String| Err(Error::PreconditionViolated(msg));
        let (s, t) = match (partial.keys().next(), partial.keys().next_back()) {
            (Some(&lo), Some(&hi)) => {
                let s = kind.b.iter().position(|&bj| bj == lo);
                let t = kind.b.iter().position(|&bj| bj == hi);
                let (Some(s), Some(t)) = (s, t) else {
                    return violated(format!("interval [{lo}, {hi}] does not start and end at run boundaries"));
                };
                if partial.len() != hi - lo + 1 {
                    return violated(format!("values on [{lo}, {hi}] are not contiguous"));
                }
                (Some(s), Some(t))
            }
            _ => (None, None),
        };
        for j in s.into_iter().chain(t) {
            let v = partial[&kind.b[j]];
            if j % 2 == 0 && v != 1 {
                return violated(format!("f(X_{}) = {v} at even boundary {j}, expected 1", kind.b[j]));
            }
            if j % 2 == 1 && v < lambda + 1 {
                return violated(format!(
                    "f(X_{}) = {v} at odd boundary {j}, expected at least {}",
                    kind.b[j],
                    lambda + 1
                ));
            }
        }
        if let (Some(s), Some(t)) = (s, t) {
            let xs: Vec<u64> = (0..=kind.rank).map(|k| partial.get(&k).copied().unwrap_or(0)).collect();
            if !strict_zigzag(kind, &xs, kind.b[s]..kind.b[t]) {
                return violated("prescribed values break the strict zigzag".into());
            }
        }
        let top = partial.values().copied().max().unwrap_or(0).max(lambda + 1);
        if d < top + 1 {
            return violated(format!("degree {d} is below {}", top + 1));
        }

        let mut xs = vec![0u64; kind.rank + 1];
        let inside = |k: usize| matches!((s, t), (Some(s), Some(t)) if kind.b[s] <= k && k <= kind.b[t]);
        for (i, &c) in kind.c.iter().enumerate() {
            for j in 0..c {
                let k = kind.b[i] + j;
                if inside(k) {
                    continue;
                }
                xs[k] = if i % 2 == 0 { j as u64 + 1 } else { lambda + 1 - j as u64 };
            }
        }
        let n = kind.c.len();
        if !inside(kind.rank) {
            xs[kind.rank] = if n % 2 == 0 { 1 } else { lambda + 1 };
        }
        for (&k, &v) in partial {
            xs[k] = v;
        }
        let mut f = WeightFunction::zero(self.poset.len());
        for k in 0..=kind.rank {
            f.0[self.x[k]] = xs[k];
            f.0[self.y[k]] = d - xs[k];
        }
        debug_assert!(self.canonical_profile(&f).unwrap());
        Ok(f)
    }
}

fn strict_zigzag(kind: &TypeVector, xs: &[u64], steps: Range<usize>) -> bool {
    steps.into_iter().all(|k| {
        if kind.run_of_step(k) % 2 == 0 {
            xs[k] < xs[k + 1]
        } else {
            xs[k] > xs[k + 1]
        }
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BlockKind {
    Singleton,
    Pair,
    Basic {
        #[serde(rename = "type")]
        kind: TypeVector,
        x_chain: Vec<String>,
        y_chain: Vec<String>,
    },
}

/// One summand of the ordinal sum decomposition of a reduced poset.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Block {
    #[serde(flatten)]
    pub kind: BlockKind,
    pub levels: Range<usize>,
    pub elements: Vec<String>,
}

impl Block {
    /// The a-invariant of the block's chain algebra.
    pub fn a_invariant(&self) -> i64 {
        match &self.kind {
            BlockKind::Singleton => -1,
            BlockKind::Pair => -2,
            BlockKind::Basic { kind, .. } => -(kind.lambda as i64) - 2,
        }
    }

    pub fn short_name(&self) -> String {
        match &self.kind {
            BlockKind::Singleton => "S".into(),
            BlockKind::Pair => "P".into(),
            BlockKind::Basic { kind, .. } => {
                let c: Vec<String> = kind.c.iter().map(ToString::to_string).collect();
                format!("B({})", c.join(","))
            }
        }
    }
}

/// Splits a reduced poset of width at most 2 at its complete level graphs.
pub fn decompose_blocks(rp: &RankedPoset) -> Result<Vec<Block>> {
    check_width(rp)?;
    let graphs = level_graphs(rp);
    if let Some(g) = graphs.iter().find(|g| !g.is_connected()) {
        return Err(Error::NotReduced { level: g.level });
    }
    let mut blocks = Vec::new();
    let mut start = 0;
    let ends = graphs
        .iter()
        .filter(|g| g.is_complete_bipartite())
        .map(|g| g.level + 1)
        .chain([rp.rank() + 1]);
    for end in ends {
        let slice = rp.level_slice(start..end);
        let elements = slice.labels().to_vec();
        let kind = if end - start == 1 {
            if elements.len() == 1 {
                BlockKind::Singleton
            } else {
                BlockKind::Pair
            }
        } else {
            let basic = BasicBlock::new(&slice)?;
            BlockKind::Basic {
                x_chain: basic.x.iter().map(|&e| slice.label(e).to_string()).collect(),
                y_chain: basic.y.iter().map(|&e| slice.label(e).to_string()).collect(),
                kind: basic.kind,
            }
        };
        blocks.push(Block {
            kind,
            levels: start..end,
            elements,
        });
        start = end;
    }
    Ok(blocks)
}

/// The type of a basic poset.
pub fn type_vector(rp: &RankedPoset) -> Result<TypeVector> {
    BasicBlock::new(rp).map(|b| b.kind)
}

/// The a-invariant of a width-2 poset: the minimum over its blocks.
pub fn exact_a_invariant(rp: &RankedPoset) -> Result<i64> {
    let reduction = reduce(rp)?;
    let blocks = decompose_blocks(&reduction.reduced)?;
    Ok(blocks.iter().map(Block::a_invariant).min().expect("a poset has at least one block"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Flag {
    pub value: bool,
    pub rule: String,
}

impl Flag {
    fn new(value: bool, rule: impl Into<String>) -> Self {
        Self {
            value,
            rule: rule.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Width2Report {
    pub reduced_elements: Vec<String>,
    pub representative: BTreeMap<String, String>,
    pub blocks: Vec<Block>,
    /// Number of basic blocks.
    pub s: usize,
    /// Number of two-element antichain blocks.
    pub t: usize,
    pub dimension: usize,
    pub a_invariant: i64,
    pub regularity: i64,
    pub gorenstein: Flag,
    pub nearly_gorenstein: Flag,
    pub pseudo_gorenstein: Flag,
    /// `|(K_P)_{-a}|`.
    pub minimal_canonical_count: usize,
    pub rules: Vec<String>,
}

pub const RULE_SEGRE_IDENTITY: &str =
    "segre-identity normalization: singleton levels contribute a one-variable polynomial factor and are dropped";
pub const RULE_NO_BASIC: &str = "no basic blocks: Segre product of two-variable polynomial rings, Gorenstein";
pub const RULE_MIXED: &str =
    "basic blocks and two-element antichains: never Gorenstein; nearly Gorenstein iff every type entry is 1";
pub const RULE_CONSTANT: &str = "no two-element antichains: Gorenstein iff all type entries equal one value λ";
pub const RULE_NEARLY_STEP: &str =
    "no two-element antichains: nearly Gorenstein iff every block is constant with value λ or λ + 1";
pub const RULE_PSEUDO: &str = "pseudo-Gorenstein iff the least canonical degree holds exactly one element";

/// Full classification of a width-2 poset. The pseudo-Gorenstein flag is
/// decided by enumerating the least-degree canonical piece of the reduced
/// poset within `budget`.
pub fn classify(rp: &RankedPoset, budget: Budget) -> Result<Width2Report> {
    let reduction = reduce(rp)?;
    let blocks = decompose_blocks(&reduction.reduced)?;
    let types: Vec<&TypeVector> = blocks
        .iter()
        .filter_map(|b| match &b.kind {
            BlockKind::Basic { kind, .. } => Some(kind),
            _ => None,
        })
        .collect();
    let s = types.len();
    let t = blocks.iter().filter(|b| b.kind == BlockKind::Pair).count();
    let a = blocks.iter().map(Block::a_invariant).min().expect("at least one block");
    let dimension = krull_dimension(rp);

    let mut rules = Vec::new();
    if blocks.iter().any(|b| b.kind == BlockKind::Singleton) {
        rules.push(RULE_SEGRE_IDENTITY.to_string());
    }
    let entries = || types.iter().flat_map(|k| k.c.iter().copied());
    let (gorenstein, nearly) = if s == 0 {
        (Flag::new(true, RULE_NO_BASIC), Flag::new(true, RULE_NO_BASIC))
    } else if t > 0 {
        (Flag::new(false, RULE_MIXED), Flag::new(entries().all(|c| c == 1), RULE_MIXED))
    } else {
        let lo = entries().min().unwrap();
        let hi = entries().max().unwrap();
        let gorenstein = lo == hi;
        let nearly = hi - lo <= 1 && types.iter().all(|k| k.is_constant());
        (Flag::new(gorenstein, RULE_CONSTANT), Flag::new(nearly, RULE_NEARLY_STEP))
    };
    let count = enumerate_canonical_degree(&reduction.reduced, (-a) as u64, budget)?.len();
    let pseudo = Flag::new(count == 1, RULE_PSEUDO);
    rules.extend([gorenstein.rule.clone(), nearly.rule.clone(), pseudo.rule.clone()]);
    rules.dedup();

    Ok(Width2Report {
        reduced_elements: reduction.reduced.labels().to_vec(),
        representative: reduction.representative,
        s,
        t,
        dimension,
        a_invariant: a,
        regularity: dimension as i64 + a,
        gorenstein,
        nearly_gorenstein: nearly,
        pseudo_gorenstein: pseudo,
        minimal_canonical_count: count,
        rules,
        blocks,
    })
}
