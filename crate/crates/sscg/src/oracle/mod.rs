//! Exact solvers for maximum matching, maximum independent set and minimum
//! dominating set on small graphs (at most 64 vertices, bitmask-based), with
//! optional constraints on the two boundary vertices.
//!
//! Counts are exact big integers even when the number of optimal structures
//! is astronomically large; witnesses are reconstructed separately and capped.

mod domset;
mod indep;
mod matching;
pub mod naive;

use std::time::Instant;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generate::boundary;
use crate::graph::{Graph, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Problem {
    Matching,
    IndependentSet,
    DominatingSet,
}

impl Problem {
    pub fn name(self) -> &'static str {
        match self {
            Problem::Matching => "matching",
            Problem::IndependentSet => "independent-set",
            Problem::DominatingSet => "dominating-set",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "matching" => Some(Problem::Matching),
            "independent-set" | "mis" => Some(Problem::IndependentSet),
            "dominating-set" | "mds" => Some(Problem::DominatingSet),
            _ => None,
        }
    }
}

/// Restriction on how the two boundary vertices participate in a solution.
/// "Participates" means saturated for matchings and membership for vertex
/// sets. `Exactly(k)` fixes the number of participating boundary vertices;
/// `ExactlyOneAt(i)` additionally designates which one (0 = first, 1 =
/// second boundary vertex).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundaryConstraint {
    Free,
    Exactly(u8),
    ExactlyOneAt(u8),
}

impl BoundaryConstraint {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "free" => Some(BoundaryConstraint::Free),
            "k0" => Some(BoundaryConstraint::Exactly(0)),
            "k1" => Some(BoundaryConstraint::Exactly(1)),
            "k2" => Some(BoundaryConstraint::Exactly(2)),
            "k1-first" => Some(BoundaryConstraint::ExactlyOneAt(0)),
            "k1-second" => Some(BoundaryConstraint::ExactlyOneAt(1)),
            _ => None,
        }
    }

    pub fn label(self) -> String {
        match self {
            BoundaryConstraint::Free => "free".into(),
            BoundaryConstraint::Exactly(k) => format!("k{k}"),
            BoundaryConstraint::ExactlyOneAt(0) => "k1-first".into(),
            BoundaryConstraint::ExactlyOneAt(_) => "k1-second".into(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct OracleBudget {
    pub max_vertices: usize,
    pub max_seconds: Option<f64>,
    pub witness_cap: usize,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_vertices: 64,
            max_seconds: None,
            witness_cap: 1000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Witness {
    Vertices(Vec<VertexId>),
    Edges(Vec<(VertexId, VertexId)>),
}

/// `optimum` is `None` when the constraint is infeasible (then `count` is 0).
#[derive(Debug, Clone)]
pub struct SolveResult {
    pub optimum: Option<u32>,
    pub count: BigUint,
    pub witnesses: Vec<Witness>,
    pub truncated: bool,
    pub elapsed_ms: u128,
}

impl SolveResult {
    fn infeasible() -> Self {
        SolveResult {
            optimum: None,
            count: BigUint::zero(),
            witnesses: Vec::new(),
            truncated: false,
            elapsed_ms: 0,
        }
    }
}

pub fn is_unique_optimum(result: &SolveResult) -> bool {
    result.optimum.is_some() && result.count == BigUint::from(1u32)
}

/// Results for every boundary class: the free problem, the three `Exactly(k)`
/// classes, and the two designated single-vertex classes.
#[derive(Debug, Clone)]
pub struct ClassifiedTable {
    pub free: SolveResult,
    pub by_k: [SolveResult; 3],
    pub k1_designated: [SolveResult; 2],
}

/// Deadline handle threaded through the search recursions.
pub(crate) struct Ticker {
    start: Instant,
    deadline: Option<f64>,
    calls: u64,
}

impl Ticker {
    pub(crate) fn new(budget: &OracleBudget) -> Self {
        Ticker {
            start: Instant::now(),
            deadline: budget.max_seconds,
            calls: 0,
        }
    }

    pub(crate) fn tick(&mut self) -> Result<()> {
        self.calls += 1;
        if self.calls.is_multiple_of(4096) {
            if let Some(limit) = self.deadline {
                if self.start.elapsed().as_secs_f64() > limit {
                    return Err(Error::capability(format!(
                        "search exceeded the time budget of {limit} seconds"
                    )));
                }
            }
        }
        Ok(())
    }

    pub(crate) fn elapsed_ms(&self) -> u128 {
        self.start.elapsed().as_millis()
    }
}

/// How each boundary vertex must participate in a single solver run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Participation {
    Forced,
    Forbidden,
}

pub(crate) type VertexRule = (VertexId, Participation);

fn check_budget(g: &Graph, budget: &OracleBudget) -> Result<()> {
    if g.vertex_count() > budget.max_vertices.min(64) {
        return Err(Error::capability(format!(
            "exact solving is limited to {} vertices, graph has {}",
            budget.max_vertices.min(64),
            g.vertex_count()
        )));
    }
    Ok(())
}

/// Expands a boundary constraint into one or more rule sets; the final result
/// is the best over all rule sets, with counts accumulated across ties.
fn rule_sets(g: &Graph, constraint: BoundaryConstraint) -> Result<Vec<Vec<VertexRule>>> {
    use Participation::{Forbidden, Forced};
    if constraint == BoundaryConstraint::Free {
        return Ok(vec![Vec::new()]);
    }
    let (p, q) = boundary(g)?;
    Ok(match constraint {
        BoundaryConstraint::Free => unreachable!(),
        BoundaryConstraint::Exactly(0) => vec![vec![(p, Forbidden), (q, Forbidden)]],
        BoundaryConstraint::Exactly(1) => vec![
            vec![(p, Forced), (q, Forbidden)],
            vec![(q, Forced), (p, Forbidden)],
        ],
        BoundaryConstraint::Exactly(2) => vec![vec![(p, Forced), (q, Forced)]],
        BoundaryConstraint::Exactly(k) => {
            return Err(Error::usage(format!(
                "a boundary class must be 0, 1 or 2, got {k}"
            )))
        }
        BoundaryConstraint::ExactlyOneAt(0) => vec![vec![(p, Forced), (q, Forbidden)]],
        BoundaryConstraint::ExactlyOneAt(1) => vec![vec![(q, Forced), (p, Forbidden)]],
        BoundaryConstraint::ExactlyOneAt(i) => {
            return Err(Error::usage(format!(
                "designated boundary index must be 0 or 1, got {i}"
            )))
        }
    })
}

/// Merges per-rule-set runs: keeps the best optimum (`maximize` decides the
/// direction), sums counts over ties, concatenates witnesses up to the cap.
fn combine_runs(runs: Vec<SolveResult>, maximize: bool, witness_cap: usize) -> SolveResult {
    let mut best: Option<u32> = None;
    for r in &runs {
        if let Some(v) = r.optimum {
            best = Some(match best {
                None => v,
                Some(b) => {
                    if maximize {
                        b.max(v)
                    } else {
                        b.min(v)
                    }
                }
            });
        }
    }
    let Some(best_val) = best else {
        return SolveResult::infeasible();
    };
    let mut count = BigUint::zero();
    let mut witnesses = Vec::new();
    let mut truncated = false;
    let mut elapsed_ms = 0;
    for r in runs {
        elapsed_ms += r.elapsed_ms;
        if r.optimum == Some(best_val) {
            count += &r.count;
            truncated |= r.truncated;
            for w in r.witnesses {
                if witnesses.len() < witness_cap {
                    witnesses.push(w);
                } else {
                    truncated = true;
                }
            }
        }
    }
    SolveResult {
        optimum: Some(best_val),
        count,
        witnesses,
        truncated,
        elapsed_ms,
    }
}

pub fn solve(
    g: &Graph,
    problem: Problem,
    constraint: BoundaryConstraint,
    budget: &OracleBudget,
) -> Result<SolveResult> {
    check_budget(g, budget)?;
    let sets = rule_sets(g, constraint)?;
    let mut runs = Vec::with_capacity(sets.len());
    for rules in sets {
        runs.push(match problem {
            Problem::Matching => matching::run(g, &rules, budget)?,
            Problem::IndependentSet => indep::run(g, &rules, budget)?,
            Problem::DominatingSet => domset::run(g, &rules, budget)?,
        });
    }
    Ok(combine_runs(
        runs,
        problem != Problem::DominatingSet,
        budget.witness_cap,
    ))
}

pub fn max_matching(
    g: &Graph,
    constraint: BoundaryConstraint,
    budget: &OracleBudget,
) -> Result<SolveResult> {
    solve(g, Problem::Matching, constraint, budget)
}

pub fn max_independent_set(
    g: &Graph,
    constraint: BoundaryConstraint,
    budget: &OracleBudget,
) -> Result<SolveResult> {
    solve(g, Problem::IndependentSet, constraint, budget)
}

pub fn min_dominating_set(
    g: &Graph,
    constraint: BoundaryConstraint,
    budget: &OracleBudget,
) -> Result<SolveResult> {
    solve(g, Problem::DominatingSet, constraint, budget)
}

pub fn classified_table(
    g: &Graph,
    problem: Problem,
    budget: &OracleBudget,
) -> Result<ClassifiedTable> {
    Ok(ClassifiedTable {
        free: solve(g, problem, BoundaryConstraint::Free, budget)?,
        by_k: [
            solve(g, problem, BoundaryConstraint::Exactly(0), budget)?,
            solve(g, problem, BoundaryConstraint::Exactly(1), budget)?,
            solve(g, problem, BoundaryConstraint::Exactly(2), budget)?,
        ],
        k1_designated: [
            solve(g, problem, BoundaryConstraint::ExactlyOneAt(0), budget)?,
            solve(g, problem, BoundaryConstraint::ExactlyOneAt(1), budget)?,
        ],
    })
}
