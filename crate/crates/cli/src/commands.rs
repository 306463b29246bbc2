//! One function per subcommand. Each returns the typed results as JSON, the
//! human rendering and the exit code; `main` wraps them in a [`Report`].
//!
//! [`Report`]: crate::report::Report

use std::fmt::Write as _;

use chainalg::canonical::{self, AInvariant, GorensteinWitness};
use chainalg::level::component_counts;
use chainalg::oracle::{self, Fault};
use chainalg::polytope::{is_indecomposable, polytope_dimension};
use chainalg::semigroup::{is_member, krull_dimension, MembershipResult, NonMembership};
use chainalg::width2;
use chainalg::{Budget, Error, Poset, RankedPoset, WeightFunction};
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_OTHER: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_NON_MEMBER: i32 = 3;
pub const EXIT_WIDTH: i32 = 4;
pub const EXIT_ORACLE: i32 = 5;

#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub results: Value,
    pub rules: Vec<String>,
    pub human: String,
}

impl Outcome {
    fn ok(results: Value, human: String) -> Self {
        Self {
            code: EXIT_OK,
            results,
            rules: Vec::new(),
            human,
        }
    }
}

/// A command that could not produce its results.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
    pub details: Value,
}

impl Failure {
    pub fn io(path: &str, err: std::io::Error) -> Self {
        Self {
            code: EXIT_INVALID,
            message: format!("cannot read {path}: {err}"),
            details: json!({"kind": "io"}),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::WidthExceeded { .. } => EXIT_WIDTH,
            Error::BudgetExceeded { .. } | Error::AInvariantUnknown { .. } | Error::Inconclusive { .. } => EXIT_OTHER,
            _ => EXIT_INVALID,
        };
        let details = match &e {
            Error::CycleDetected { cycle } => json!({"kind": "cycle", "cycle": cycle}),
            Error::NotPure { short, long } => json!({
                "kind": "not_pure",
                "short_chain": short,
                "short_length": short.len() - 1,
                "long_chain": long,
                "long_length": long.len() - 1,
            }),
            Error::TransitiveCover { lower, upper } => json!({"kind": "transitive_cover", "cover": [lower, upper]}),
            Error::BudgetExceeded { budget, found } => json!({"kind": "budget_exceeded", "budget": budget, "found": found}),
            Error::WidthExceeded { width } => json!({"kind": "width_exceeded", "width": width}),
            _ => json!({"kind": "rejected"}),
        };
        Self {
            code,
            message: e.to_string(),
            details,
        }
    }
}

pub type CmdResult = Result<Outcome, Failure>;

fn weights_json(rp: &RankedPoset, f: &WeightFunction) -> Value {
    json!(f.to_labels(rp))
}

fn labels(rp: &RankedPoset, ids: &[usize]) -> Vec<String> {
    ids.iter().map(|&x| rp.label(x).to_string()).collect()
}

fn braces(items: &[String]) -> String {
    format!("{{{}}}", items.join(","))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn level_table(rp: &RankedPoset) -> Vec<Vec<String>> {
    (0..=rp.rank())
        .map(|i| rp.level(i).map(|x| rp.label(x).to_string()).collect())
        .collect()
}

pub fn validate(p: &Poset) -> CmdResult {
    let rp = p.certify_pure()?;
    let (width, antichain) = rp.width();
    let levels = level_table(&rp);
    let mut human = format!("pure, r={}, width {width}\n", rp.rank());
    for (i, level) in levels.iter().enumerate() {
        let _ = writeln!(human, "  P_{i}: {}", level.join(" "));
    }
    Ok(Outcome::ok(
        json!({
            "elements": rp.len(),
            "pure": true,
            "rank": rp.rank(),
            "width": width,
            "max_antichain": labels(&rp, &antichain),
            "levels": levels,
        }),
        human,
    ))
}

pub fn invariants(rp: &RankedPoset) -> CmdResult {
    let dim = krull_dimension(rp);
    let pdim = polytope_dimension(rp);
    let counts = component_counts(rp);
    let mut human = format!("dim {dim}, polytope dim {pdim}");
    let indecomposability = match is_indecomposable(rp) {
        Ok(ind) => {
            if ind.indecomposable {
                human.push_str(", indecomposable\n");
            } else {
                let levels: Vec<String> = ind.complete_levels.iter().map(ToString::to_string).collect();
                let _ = writeln!(human, ", decomposable at levels {}", braces(&levels));
                for split in &ind.ordinal_splits {
                    let _ = writeln!(human, "  {} ⊕ {}", braces(&split.lower), braces(&split.upper));
                }
            }
            serde_json::to_value(ind).expect("serializable")
        }
        Err(Error::RankZero) => {
            human.push_str(", rank 0 (no level graphs)\n");
            Value::Null
        }
        Err(e) => return Err(e.into()),
    };
    let _ = writeln!(human, "  components per level: {counts:?}");
    Ok(Outcome::ok(
        json!({
            "elements": rp.len(),
            "rank": rp.rank(),
            "krull_dimension": dim,
            "polytope_dimension": pdim,
            "component_counts": counts,
            "indecomposability": indecomposability,
        }),
        human,
    ))
}

pub fn member(rp: &RankedPoset, f: &WeightFunction, decompose: bool) -> CmdResult {
    match is_member(rp, f, decompose)? {
        MembershipResult::Member { degree, decomposition } => {
            let mut human = format!("member, degree {degree}\n");
            let chains = decomposition.map(|dec| {
                dec.iter()
                    .map(|(chain, m)| {
                        let _ = writeln!(human, "  {m} x {}", chain.display(rp));
                        json!({"chain": chain.labels(rp), "multiplicity": m})
                    })
                    .collect::<Vec<_>>()
            });
            Ok(Outcome::ok(
                json!({"member": true, "degree": degree, "weights": weights_json(rp, f), "decomposition": chains}),
                human,
            ))
        }
        MembershipResult::NonMember(why) => {
            let (certificate, human) = match why {
                NonMembership::LevelSumMismatch { i, j, sum_i, sum_j } => (
                    json!({"kind": "level_sum_mismatch", "i": i, "j": j, "sum_i": sum_i, "sum_j": sum_j}),
                    format!("non-member: level sums differ, f(P_{i}) = {sum_i} but f(P_{j}) = {sum_j}\n"),
                ),
                NonMembership::Hall(h) => {
                    let v = labels(rp, &h.violator);
                    let n = labels(rp, &h.neighbourhood);
                    (
                        json!({
                            "kind": "hall",
                            "level": h.level,
                            "violator": v,
                            "neighbourhood": n,
                            "violator_weight": h.violator_weight,
                            "neighbourhood_weight": h.neighbourhood_weight,
                        }),
                        format!(
                            "non-member: at level {} f({}) = {} > f({}) = {}\n",
                            h.level,
                            braces(&v),
                            h.violator_weight,
                            braces(&n),
                            h.neighbourhood_weight
                        ),
                    )
                }
            };
            Ok(Outcome {
                code: EXIT_NON_MEMBER,
                results: json!({"member": false, "weights": weights_json(rp, f), "certificate": certificate}),
                rules: Vec::new(),
                human,
            })
        }
    }
}

pub fn canonical_degree(rp: &RankedPoset, d: u64, budget: Budget) -> CmdResult {
    let piece = canonical::enumerate_canonical_degree(rp, d, budget)?;
    let mut human = format!("(K_P)_{d}: {} element{}\n", piece.len(), if piece.len() == 1 { "" } else { "s" });
    let elements: Vec<Value> = piece
        .elements
        .iter()
        .map(|f| {
            let _ = writeln!(human, "  {}", f.display(rp));
            weights_json(rp, f)
        })
        .collect();
    Ok(Outcome::ok(json!({"degree": d, "count": piece.len(), "elements": elements}), human))
}

pub fn canonical_a_invariant(rp: &RankedPoset, cap: Option<u64>, budget: Budget) -> CmdResult {
    let cap = cap.unwrap_or_else(|| canonical::default_cap(rp));
    let report = canonical::a_invariant(rp, cap, budget)?;
    let route = serde_json::to_value(report.route).expect("serializable");
    let mut human = String::new();
    let a = match report.a_invariant {
        AInvariant::Known(a) => {
            let reg = report.regularity.expect("known a-invariant has a regularity");
            let _ = writeln!(human, "a = {a}, reg {reg}, dim {} (route: {})", report.dimension, route.as_str().unwrap());
            json!({"status": "known", "value": a})
        }
        AInvariant::Unknown(c) => {
            let _ = writeln!(human, "a-invariant unknown: no canonical element up to degree {c}");
            json!({"status": "unknown", "cap": c})
        }
    };
    let minimal = report.min_degree_elements.as_ref().map(|piece| {
        let _ = writeln!(human, "  (K_P)_{}: {} element(s)", piece.degree, piece.len());
        let elements: Vec<Value> = piece
            .elements
            .iter()
            .map(|f| {
                let _ = writeln!(human, "    {}", f.display(rp));
                weights_json(rp, f)
            })
            .collect();
        json!({"degree": piece.degree, "count": piece.len(), "elements": elements})
    });
    for rule in &report.rules {
        let _ = writeln!(human, "  rule: {rule}");
    }
    Ok(Outcome {
        code: EXIT_OK,
        results: json!({
            "a_invariant": a,
            "route": route,
            "cap": cap,
            "dimension": report.dimension,
            "regularity": report.regularity,
            "min_degree_elements": minimal,
        }),
        rules: report.rules,
        human,
    })
}

pub fn width2(rp: &RankedPoset, witness_cap: Option<Option<u64>>, budget: Budget) -> CmdResult {
    let report = width2::classify(rp, budget)?;
    let names: Vec<String> = report.blocks.iter().map(width2::Block::short_name).collect();
    let mut human = format!("blocks: {} (s = {}, t = {})\n", names.join(" ⊕ "), report.s, report.t);
    let _ = writeln!(
        human,
        "a = {}, reg {}, dim {}",
        report.a_invariant, report.regularity, report.dimension
    );
    for (name, flag) in [
        ("Gorenstein", &report.gorenstein),
        ("nearly Gorenstein", &report.nearly_gorenstein),
        ("pseudo-Gorenstein", &report.pseudo_gorenstein),
    ] {
        let _ = writeln!(human, "{name}: {} ({})", yes_no(flag.value), flag.rule);
    }
    let mut rules = report.rules.clone();
    let mut results = serde_json::to_value(&report).expect("serializable");

    if let Some(cap) = witness_cap {
        let cap = cap.unwrap_or((-report.a_invariant) as u64 + 2);
        let w = canonical::gorenstein_witness(rp, cap, budget)?;
        let line = match &w {
            GorensteinWitness::VerifiedUpTo { cap, generator } => {
                format!("K_P = {} + C_P verified through degree {cap}", generator.display(rp))
            }
            GorensteinWitness::NotUnique { degree, elements } => {
                format!("refuted: {} elements in the least canonical degree {degree}", elements.len())
            }
            GorensteinWitness::NotPrincipal { degree, witness, .. } => {
                format!("refuted: {} in degree {degree} is not a translate of the generator", witness.display(rp))
            }
        };
        let _ = writeln!(human, "witness: {line}");
        rules.push("gorenstein witness: K_P compared with a translate of C_P degree by degree".into());
        let mut wj = match w {
            GorensteinWitness::VerifiedUpTo { cap, generator } => {
                json!({"verdict": "verified_up_to", "cap": cap, "generator": weights_json(rp, &generator)})
            }
            GorensteinWitness::NotUnique { degree, elements } => json!({
                "verdict": "not_unique",
                "degree": degree,
                "elements": elements.iter().map(|f| weights_json(rp, f)).collect::<Vec<_>>(),
            }),
            GorensteinWitness::NotPrincipal {
                degree,
                generator,
                witness,
            } => json!({
                "verdict": "not_principal",
                "degree": degree,
                "generator": weights_json(rp, &generator),
                "witness": weights_json(rp, &witness),
            }),
        };
        wj["requested_cap"] = json!(cap);
        results["gorenstein_witness"] = wj;
    }
    for rule in &report.rules {
        let _ = writeln!(human, "  rule: {rule}");
    }
    Ok(Outcome {
        code: EXIT_OK,
        results,
        rules,
        human,
    })
}

pub fn oracle(rp: &RankedPoset, max_degree: u64, budget: Budget, fault: Option<Fault>) -> CmdResult {
    let checks = oracle::run_all(rp, max_degree, budget, fault)?;
    let mut human = String::new();
    for c in &checks {
        let _ = writeln!(human, "{} {} ({})", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
    }
    let all = checks.iter().all(|c| c.passed);
    Ok(Outcome {
        code: if all { EXIT_OK } else { EXIT_ORACLE },
        results: json!({"max_degree": max_degree, "all_passed": all, "checks": checks}),
        rules: Vec::new(),
        human,
    })
}

/// Builds a poset from a generator expression: `+`-separated summands, each
/// a named poset (`DIAMOND`), `basic:2,1`, `chain:N` or `antichain:N`.
/// Several summands form an ordinal sum with labels prefixed `a.`, `b.`, ...
pub fn generate(expr: &str) -> Result<RankedPoset, Failure> {
    let parts: Vec<RankedPoset> = expr.split('+').map(|t| summand(t.trim())).collect::<Result<_, _>>()?;
    if parts.len() > 26 {
        return Err(bad_generator(expr, "at most 26 summands"));
    }
    Ok(if parts.len() == 1 {
        parts.into_iter().next().unwrap()
    } else {
        chainalg::corpus::ordinal_sum_of(&parts)
    })
}

fn bad_generator(term: &str, why: &str) -> Failure {
    Failure {
        code: EXIT_INVALID,
        message: format!("bad generator term `{term}`: {why}"),
        details: json!({"kind": "generator"}),
    }
}

fn summand(term: &str) -> Result<RankedPoset, Failure> {
    use chainalg::corpus;
    if let Some(rp) = corpus::named(term) {
        return Ok(rp);
    }
    let (kind, arg) = term
        .split_once(':')
        .ok_or_else(|| bad_generator(term, "expected a name or kind:argument"))?;
    let numbers: Vec<usize> = arg
        .split(',')
        .map(|n| n.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| bad_generator(term, "arguments must be nonnegative integers"))?;
    match (kind, numbers.as_slice()) {
        ("basic", c) if c.iter().sum::<usize>() <= 64 => Ok(corpus::try_basic(c)?),
        ("chain", &[n]) if n <= 1000 => Ok(corpus::chain(n)),
        ("antichain", &[n]) if (1..=1000).contains(&n) => Ok(corpus::antichain(n)),
        _ => Err(bad_generator(term, "unknown kind or argument out of range")),
    }
}

/// Parses `--mutate` values.
pub fn fault(name: &str) -> Option<Fault> {
    match name {
        "drop-last-member" => Some(Fault::DropLastMember),
        _ => None,
    }
}
