//! Cross-checks the exact solvers against the recurrence predictions, row by
//! row. A small built-in allowlist marks the one seed value where the two are
//! documented to disagree, so automation can distinguish "matches the
//! documented state" from a real regression.

use serde::Serialize;

use crate::decimate::{
    count_base_level, count_recursion, size_base_level, size_recursion, CountState, SizeStep,
    DEFAULT_BIT_BUDGET,
};
use crate::error::{Error, Result};
use crate::generate::{build_with_cap, Method, Model};
use crate::oracle::{classified_table, OracleBudget, Problem, SolveResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RowStatus {
    Match,
    KnownMismatch,
    Mismatch,
    Skipped,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyRow {
    pub model: Model,
    pub problem: Problem,
    pub level: u32,
    pub subject: String,
    pub expected: String,
    pub actual: String,
    pub status: RowStatus,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct VerificationReport {
    pub rows: Vec<VerifyRow>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.status != RowStatus::Mismatch)
    }

    pub fn count(&self, status: RowStatus) -> usize {
        self.rows.iter().filter(|r| r.status == status).count()
    }
}

/// Documented disagreements between the recurrences and the exact solver,
/// both in the fractal domination k=0 class (both boundary vertices kept out
/// of the set):
///
/// * level 2: the stated seed is 4 while the solver (and the closed form)
///   give 3;
/// * level 3 and above: the recurrence row assumes an excluded boundary
///   vertex is dominated inside every copy it touches, so it only yields an
///   upper bound (10 at level 3, where the solver finds 9).
///
/// The recurrence assembles actual dominating sets, so it can only err high;
/// a solver value above it would be a solver bug and stays a mismatch.
fn known_mismatch(
    model: Model,
    problem: Problem,
    level: u32,
    subject: &str,
    expected: &str,
    actual: &str,
) -> bool {
    let recurrence_is_upper_bound = match (expected.parse::<u128>(), actual.parse::<u128>()) {
        (Ok(e), Ok(a)) => e > a,
        _ => false,
    };
    model == Model::Fractal
        && problem == Problem::DominatingSet
        && level >= 2
        && subject == "k0 size"
        && recurrence_is_upper_bound
}

fn size_string(v: Option<u128>) -> String {
    match v {
        Some(v) => v.to_string(),
        None => "infeasible".into(),
    }
}

fn optimum_string(r: &SolveResult) -> String {
    match r.optimum {
        Some(v) => v.to_string(),
        None => "infeasible".into(),
    }
}

fn push_row(
    rows: &mut Vec<VerifyRow>,
    model: Model,
    problem: Problem,
    level: u32,
    subject: &str,
    expected: String,
    actual: String,
) {
    let status = if expected == actual {
        RowStatus::Match
    } else if known_mismatch(model, problem, level, subject, &expected, &actual) {
        RowStatus::KnownMismatch
    } else {
        RowStatus::Mismatch
    };
    rows.push(VerifyRow {
        model,
        problem,
        level,
        subject: subject.to_string(),
        expected,
        actual,
        status,
    });
}

/// Compares the solver against the recurrences for one family, problem and
/// level. Sizes are compared per boundary class plus the free optimum;
/// counts are compared for the classes the count recurrences track. A solver
/// capability overrun produces a single skipped row instead of an error.
pub fn verify_rows(
    model: Model,
    problem: Problem,
    n: u32,
    budget: &OracleBudget,
    bit_budget: u64,
) -> Result<Vec<VerifyRow>> {
    let mut rows = Vec::new();
    let size_base = size_base_level(model, problem);
    let count_base = count_base_level(problem);
    if n < size_base && n < count_base {
        return Ok(rows);
    }
    let g = build_with_cap(model, Method::EdgeReplacement, n, n)?;
    let table = match classified_table(&g, problem, budget) {
        Ok(t) => t,
        Err(Error::Capability(msg)) => {
            rows.push(VerifyRow {
                model,
                problem,
                level: n,
                subject: "solver run".into(),
                expected: "completed within budget".into(),
                actual: msg,
                status: RowStatus::Skipped,
            });
            return Ok(rows);
        }
        Err(e) => return Err(e),
    };

    if n >= size_base {
        let steps: Vec<SizeStep> = size_recursion(model, problem, n)?;
        let step = steps.last().expect("recursion includes requested level");
        for (k, class) in table.by_k.iter().enumerate() {
            push_row(
                &mut rows,
                model,
                problem,
                n,
                &format!("k{k} size"),
                size_string(step.by_k[k]),
                optimum_string(class),
            );
        }
        push_row(
            &mut rows,
            model,
            problem,
            n,
            "free size",
            step.headline.to_string(),
            optimum_string(&table.free),
        );
    }

    if n >= count_base {
        let states: Vec<CountState> = count_recursion(model, problem, n, bit_budget)?;
        let state = states.last().expect("recursion includes requested level");
        let pairs: &[(&str, &SolveResult)] = &[
            ("free", &table.free),
            ("k0", &table.by_k[0]),
            ("k2", &table.by_k[2]),
        ];
        for (name, result) in pairs {
            if let Some(expected) = state.component(name) {
                push_row(
                    &mut rows,
                    model,
                    problem,
                    n,
                    &format!("{name} count"),
                    expected.to_string(),
                    result.count.to_string(),
                );
            }
        }
        if let Some(expected) = state.component("k1-designated") {
            for (i, result) in table.k1_designated.iter().enumerate() {
                push_row(
                    &mut rows,
                    model,
                    problem,
                    n,
                    &format!("k1 count (boundary vertex {i})"),
                    expected.to_string(),
                    result.count.to_string(),
                );
            }
        }
    }
    Ok(rows)
}

/// Runs [`verify_rows`] for both families and all three problems at every
/// level up to `max_level`.
pub fn verify_families(max_level: u32, budget: &OracleBudget) -> Result<VerificationReport> {
    let mut report = VerificationReport::default();
    for model in [Model::Fractal, Model::NonFractal] {
        for problem in [
            Problem::Matching,
            Problem::IndependentSet,
            Problem::DominatingSet,
        ] {
            for n in 1..=max_level {
                report
                    .rows
                    .extend(verify_rows(model, problem, n, budget, DEFAULT_BIT_BUDGET)?);
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn families_verify_up_to_level_two() {
        let report = verify_families(2, &OracleBudget::default()).unwrap();
        assert!(report.passed());
        assert_eq!(report.count(RowStatus::Mismatch), 0);
        assert_eq!(report.count(RowStatus::Skipped), 0);
        assert_eq!(report.count(RowStatus::KnownMismatch), 1);
        let known = report
            .rows
            .iter()
            .find(|r| r.status == RowStatus::KnownMismatch)
            .unwrap();
        assert_eq!(known.model, Model::Fractal);
        assert_eq!(known.problem, Problem::DominatingSet);
        assert_eq!(known.level, 2);
        assert_eq!(known.subject, "k0 size");
        assert_eq!(known.expected, "4");
        assert_eq!(known.actual, "3");
    }

    #[test]
    fn level_three_exposes_the_domination_class_gap() {
        let rows = verify_rows(
            Model::Fractal,
            Problem::DominatingSet,
            3,
            &OracleBudget::default(),
            DEFAULT_BIT_BUDGET,
        )
        .unwrap();
        let k0 = rows.iter().find(|r| r.subject == "k0 size").unwrap();
        assert_eq!(k0.status, RowStatus::KnownMismatch);
        assert_eq!(k0.expected, "10");
        assert_eq!(k0.actual, "9");
        assert!(rows
            .iter()
            .filter(|r| r.subject != "k0 size")
            .all(|r| r.status == RowStatus::Match));
    }

    #[test]
    fn infeasible_classes_line_up() {
        let rows = verify_rows(
            Model::NonFractal,
            Problem::IndependentSet,
            2,
            &OracleBudget::default(),
            DEFAULT_BIT_BUDGET,
        )
        .unwrap();
        let k2 = rows.iter().find(|r| r.subject == "k2 size").unwrap();
        assert_eq!(k2.status, RowStatus::Match);
        assert_eq!(k2.expected, "infeasible");
    }

    #[test]
    fn capability_overruns_become_skipped_rows() {
        let tiny = OracleBudget {
            max_vertices: 8,
            ..OracleBudget::default()
        };
        let rows = verify_rows(
            Model::Fractal,
            Problem::Matching,
            2,
            &tiny,
            DEFAULT_BIT_BUDGET,
        )
        .unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].status, RowStatus::Skipped);
    }
}
