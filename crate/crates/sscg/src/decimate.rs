//! Level-to-level recurrences and closed forms for the three optimization
//! problems on both families.
//!
//! A level-n value is classified by how many boundary vertices participate
//! (k = 0, 1, 2); gluing four copies turns the level-n triple into the
//! level-(n+1) triple by taking the best combination of copy classes, which
//! is what the branch tables below encode. Counts of optimal structures
//! follow their own recurrences and are tracked as exact big integers.
//!
//! Closed forms carry two validity ranges: the range claimed by the source
//! of the formulas and the (sometimes narrower) range this crate has verified
//! against the recurrences and the exact solvers. [`RangeMode`] selects which
//! range to enforce; [`self_check`] reports every known divergence.

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generate::Model;
use crate::oracle::Problem;

pub const SIZE_LEVEL_CAP: u32 = 60;
pub const DEFAULT_BIT_BUDGET: u64 = 1 << 20;

/// Which validity window to enforce when evaluating a closed form.
///
/// `Verified` is the range this crate has confirmed; outside it the formula
/// is known or suspected to disagree with the recurrence and an
/// [`Error::Range`] is returned. `Stated` is the wider range claimed by the
/// source; evaluating there lets [`self_check`] surface the disagreements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RangeMode {
    Verified,
    Stated,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Component {
    K0,
    K1,
    K2,
    Headline,
}

impl Component {
    pub fn label(self) -> &'static str {
        match self {
            Component::K0 => "k0",
            Component::K1 => "k1",
            Component::K2 => "k2",
            Component::Headline => "headline",
        }
    }
}

/// One level of the size recurrences: the class triple, the headline
/// optimum, and for levels above the base the branch indices that attained
/// each class (used to check that the recursion settles into a fixed
/// branch pattern).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SizeStep {
    pub level: u32,
    pub by_k: [Option<u128>; 3],
    pub headline: u128,
    pub attained: [Vec<usize>; 3],
    /// Value of the k=1 class under the alternative reading of the
    /// dominating-set recurrence (its middle branch repeats the k=1 term
    /// where symmetry suggests the k=2 term); `None` for other problems.
    pub k1_alternate: Option<u128>,
}

/// One level of the count recurrences; `components` holds named exact
/// counts, the first entry being the headline count for the problem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountState {
    pub level: u32,
    pub components: Vec<(&'static str, BigUint)>,
}

impl CountState {
    pub fn headline(&self) -> &BigUint {
        &self.components[0].1
    }

    pub fn component(&self, name: &str) -> Option<&BigUint> {
        self.components
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, v)| v)
    }
}

pub fn size_base_level(model: Model, problem: Problem) -> u32 {
    match problem {
        Problem::Matching | Problem::IndependentSet => 1,
        Problem::DominatingSet => match model {
            Model::Fractal => 2,
            Model::NonFractal => 3,
        },
    }
}

pub fn count_base_level(problem: Problem) -> u32 {
    match problem {
        Problem::Matching | Problem::IndependentSet => 1,
        Problem::DominatingSet => 2,
    }
}

/// A branch is a linear form c0*k0 + c1*k1 + c2*k2 + d; it is infeasible
/// whenever a class with a nonzero coefficient is infeasible.
type Branch = ([i128; 3], i128);

struct System {
    base: [Option<u128>; 3],
    branches: [&'static [Branch]; 3],
    maximize: bool,
}

const FRACTAL_MATCHING: System = System {
    base: [Some(1), Some(1), Some(2)],
    branches: [
        &[([4, 0, 0], 1), ([3, 1, 0], 0), ([2, 2, 0], 0)],
        &[
            ([3, 1, 0], 1),
            ([3, 0, 1], 0),
            ([2, 2, 0], 0),
            ([2, 1, 1], 0),
            ([1, 3, 0], 0),
        ],
        &[
            ([2, 2, 0], 1),
            ([2, 1, 1], 0),
            ([1, 3, 0], 0),
            ([2, 0, 2], 0),
            ([1, 2, 1], 0),
            ([0, 4, 0], 0),
        ],
    ],
    maximize: true,
};

const NONFRACTAL_MATCHING: System = System {
    base: [Some(0), Some(1), Some(2)],
    branches: [
        &[([4, 0, 0], 0), ([3, 1, 0], 0), ([2, 2, 0], 0)],
        &[
            ([3, 1, 0], 0),
            ([3, 0, 1], 0),
            ([2, 2, 0], 0),
            ([2, 1, 1], 0),
            ([1, 3, 0], 0),
        ],
        &[
            ([2, 2, 0], 0),
            ([2, 1, 1], 0),
            ([1, 3, 0], 0),
            ([2, 0, 2], 0),
            ([1, 2, 1], 0),
            ([0, 4, 0], 0),
            ([4, 0, 0], 1),
            ([3, 1, 0], 1),
            ([2, 2, 0], 1),
        ],
    ],
    maximize: true,
};

const FRACTAL_INDEPENDENT: System = System {
    base: [Some(1), Some(1), Some(2)],
    branches: [
        &[([4, 0, 0], 0), ([2, 2, 0], -1)],
        &[([2, 2, 0], -1), ([1, 2, 1], -2)],
        &[([0, 2, 2], -3), ([0, 4, 0], -2)],
    ],
    maximize: true,
};

const NONFRACTAL_INDEPENDENT: System = System {
    base: [Some(2), Some(1), None],
    branches: [
        &[([4, 0, 0], 0), ([2, 2, 0], -1), ([0, 4, 0], -2)],
        &[([2, 2, 0], -1)],
        &[],
    ],
    maximize: true,
};

/// The k=0 row of this system is incomplete: it assumes an excluded boundary
/// vertex is dominated inside every glued copy it touches, while in the
/// assembled graph one copy suffices. The exact solver finds a smaller k=0
/// value from level 3 on (9 instead of 10 for the level-3 fractal graph), so
/// k=0 values above the base level are upper bounds. The k=1, k=2 and
/// headline rows attain their minima on branches that do not reference the
/// k=0 class at every level the self check covers, so those rows are
/// unaffected.
const DOMINATING_BRANCHES: [&[Branch]; 3] = [
    &[([4, 0, 0], 0), ([2, 2, 0], -1), ([0, 4, 0], -2)],
    &[([2, 2, 0], -1), ([1, 2, 1], -2), ([0, 2, 2], -3)],
    &[([0, 4, 0], -2), ([0, 2, 2], -3), ([0, 0, 4], -4)],
];

const DOMINATING_K1_ALTERNATE: &[Branch] = &[([2, 2, 0], -1), ([1, 3, 0], -2), ([0, 2, 2], -3)];

const FRACTAL_DOMINATING: System = System {
    base: [Some(4), Some(3), Some(3)],
    branches: DOMINATING_BRANCHES,
    maximize: false,
};

const NONFRACTAL_DOMINATING: System = System {
    base: [Some(8), Some(7), Some(4)],
    branches: DOMINATING_BRANCHES,
    maximize: false,
};

fn system_for(model: Model, problem: Problem) -> &'static System {
    match (model, problem) {
        (Model::Fractal, Problem::Matching) => &FRACTAL_MATCHING,
        (Model::NonFractal, Problem::Matching) => &NONFRACTAL_MATCHING,
        (Model::Fractal, Problem::IndependentSet) => &FRACTAL_INDEPENDENT,
        (Model::NonFractal, Problem::IndependentSet) => &NONFRACTAL_INDEPENDENT,
        (Model::Fractal, Problem::DominatingSet) => &FRACTAL_DOMINATING,
        (Model::NonFractal, Problem::DominatingSet) => &NONFRACTAL_DOMINATING,
    }
}

fn eval_branches(
    branches: &[Branch],
    state: &[Option<u128>; 3],
    maximize: bool,
) -> (Option<u128>, Vec<usize>) {
    let mut best: Option<i128> = None;
    let mut attained = Vec::new();
    for (idx, &(coeffs, constant)) in branches.iter().enumerate() {
        let mut value = constant;
        let mut feasible = true;
        for (k, &c) in coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            match state[k] {
                Some(v) => value += c * v as i128,
                None => {
                    feasible = false;
                    break;
                }
            }
        }
        if !feasible {
            continue;
        }
        let better = match best {
            None => true,
            Some(b) => {
                if maximize {
                    value > b
                } else {
                    value < b
                }
            }
        };
        if better {
            best = Some(value);
            attained = vec![idx];
        } else if best == Some(value) {
            attained.push(idx);
        }
    }
    (best.map(|v| v as u128), attained)
}

fn headline_of(by_k: &[Option<u128>; 3], maximize: bool) -> u128 {
    let mut it = by_k.iter().flatten().copied();
    let first = it.next().expect("at least one feasible class");
    it.fold(first, |a, b| if maximize { a.max(b) } else { a.min(b) })
}

/// Runs the size recurrence from the base level up to `n` inclusive.
pub fn size_recursion(model: Model, problem: Problem, n: u32) -> Result<Vec<SizeStep>> {
    let base = size_base_level(model, problem);
    if n < base {
        return Err(Error::Range {
            n,
            range: "levels at or above the recurrence base",
            source_name: "the class-size recurrences",
        });
    }
    if n > SIZE_LEVEL_CAP {
        return Err(Error::capability(format!(
            "size recurrences run in 128-bit integers; level {n} exceeds the cap of {SIZE_LEVEL_CAP}"
        )));
    }
    let sys = system_for(model, problem);
    let mut state = sys.base;
    let mut steps = vec![SizeStep {
        level: base,
        by_k: state,
        headline: headline_of(&state, sys.maximize),
        attained: [Vec::new(), Vec::new(), Vec::new()],
        k1_alternate: None,
    }];
    for level in base + 1..=n {
        let mut next = [None; 3];
        let mut attained = [Vec::new(), Vec::new(), Vec::new()];
        for k in 0..3 {
            let (value, att) = eval_branches(sys.branches[k], &state, sys.maximize);
            next[k] = value;
            attained[k] = att;
        }
        let k1_alternate = if problem == Problem::DominatingSet {
            eval_branches(DOMINATING_K1_ALTERNATE, &state, sys.maximize).0
        } else {
            None
        };
        state = next;
        steps.push(SizeStep {
            level,
            by_k: state,
            headline: headline_of(&state, sys.maximize),
            attained,
            k1_alternate,
        });
    }
    Ok(steps)
}

struct ClosedForm {
    stated_min: u32,
    verified_min: u32,
    verified_max: Option<u32>,
    eval: fn(u32) -> u128,
    name: &'static str,
}

fn pow2(e: u32) -> u128 {
    1u128 << e
}

#[allow(clippy::manual_div_ceil)]
fn closed_form_spec(model: Model, problem: Problem, component: Component) -> Result<ClosedForm> {
    use Component::*;
    use Model::*;
    use Problem::*;
    let cf = |stated_min, verified_min, verified_max, eval, name| ClosedForm {
        stated_min,
        verified_min,
        verified_max,
        eval,
        name,
    };
    Ok(match (model, problem, component) {
        (Fractal, Matching, K0) | (Fractal, Matching, K1) => cf(
            1,
            1,
            None,
            |n| (pow2(2 * n) - 1) / 3,
            "fractal matching class size",
        ),
        (Fractal, Matching, K2) | (Fractal, Matching, Headline) => cf(
            1,
            1,
            None,
            |n| (pow2(2 * n) + 2) / 3,
            "fractal matching number",
        ),
        (NonFractal, Matching, K0) => cf(
            1,
            1,
            None,
            |n| (pow2(2 * n - 1) - 2) / 3,
            "non-fractal matching class size",
        ),
        (NonFractal, Matching, K1) => cf(
            1,
            1,
            None,
            |n| (pow2(2 * n - 1) + 1) / 3,
            "non-fractal matching class size",
        ),
        (NonFractal, Matching, K2) | (NonFractal, Matching, Headline) => cf(
            1,
            1,
            None,
            |n| (pow2(2 * n - 1) + 4) / 3,
            "non-fractal matching number",
        ),
        (Fractal, IndependentSet, K0) => cf(
            1,
            1,
            None,
            |n| pow2(2 * n - 2),
            "fractal independence class size",
        ),
        (Fractal, IndependentSet, K1) => cf(
            1,
            1,
            None,
            |n| pow2(2 * n - 2) - pow2(n - 1) + 1,
            "fractal independence class size",
        ),
        (Fractal, IndependentSet, K2) => cf(
            1,
            1,
            Some(2),
            |n| pow2(2 * n - 2) - (n as u128 - 1) * pow2(n - 1) + 1,
            "fractal independence class size",
        ),
        (Fractal, IndependentSet, Headline) => cf(
            1,
            2,
            None,
            |n| pow2(2 * n - 2),
            "fractal independence number",
        ),
        (NonFractal, IndependentSet, K0) | (NonFractal, IndependentSet, Headline) => cf(
            1,
            1,
            None,
            |n| pow2(2 * n - 1),
            "non-fractal independence number",
        ),
        (NonFractal, IndependentSet, K1) => cf(
            1,
            1,
            None,
            |n| pow2(2 * n - 1) - pow2(n) + 1,
            "non-fractal independence class size",
        ),
        (NonFractal, IndependentSet, K2) => {
            return Err(Error::NoClosedForm(
                "the fully-boundary-constrained independence class of the non-fractal family \
                 (the boundary pair is adjacent, so the class is empty)",
            ))
        }
        // Verified only at the base level, where the solver confirms the
        // formula's 3 over the stated seed 4. From level 3 the solver finds
        // smaller sets than both the formula and the recurrence (9 vs 10),
        // so no later level is confirmed.
        (Fractal, DominatingSet, K0) => cf(
            2,
            2,
            Some(2),
            |n| (5 * pow2(2 * n - 4) + 3 * pow2(n - 1) - 2) / 3,
            "fractal domination class size",
        ),
        (Fractal, DominatingSet, K1) => cf(
            2,
            2,
            None,
            |n| (5 * pow2(2 * n - 4) + 3 * pow2(n - 2) + 1) / 3,
            "fractal domination class size",
        ),
        (Fractal, DominatingSet, K2) | (Fractal, DominatingSet, Headline) => cf(
            2,
            2,
            None,
            |n| (5 * pow2(2 * n - 4) + 4) / 3,
            "fractal domination number",
        ),
        // No verified level: the formula gives 10 at its stated base while
        // the solver and the seed give 8, and from the next level the k=0
        // recurrence row this formula tracks is itself only an upper bound
        // (see the note on the shared branch table).
        (NonFractal, DominatingSet, K0) => cf(
            3,
            4,
            Some(3),
            |n| (pow2(2 * n - 3) + 3 * pow2(n) - 2) / 3,
            "non-fractal domination class size",
        ),
        (NonFractal, DominatingSet, K1) => cf(
            3,
            3,
            None,
            |n| (pow2(2 * n - 3) + 3 * pow2(n - 1) + 1) / 3,
            "non-fractal domination class size",
        ),
        (NonFractal, DominatingSet, K2) | (NonFractal, DominatingSet, Headline) => cf(
            3,
            3,
            None,
            |n| (pow2(2 * n - 3) + 4) / 3,
            "non-fractal domination number",
        ),
    })
}

/// Evaluates the closed form for one class (or the headline optimum) at
/// level `n`, enforcing the validity window selected by `mode`.
pub fn size_closed_form(
    model: Model,
    problem: Problem,
    component: Component,
    n: u32,
    mode: RangeMode,
) -> Result<u128> {
    let spec = closed_form_spec(model, problem, component)?;
    if n > SIZE_LEVEL_CAP {
        return Err(Error::capability(format!(
            "closed forms are evaluated in 128-bit integers; level {n} exceeds the cap of {SIZE_LEVEL_CAP}"
        )));
    }
    let (min, max) = match mode {
        RangeMode::Stated => (spec.stated_min, None),
        RangeMode::Verified => (spec.verified_min, spec.verified_max),
    };
    let ok = n >= min && max.is_none_or(|m| n <= m);
    if !ok {
        let range: &'static str = match (min, max) {
            (1, Some(2)) => "1 <= n <= 2",
            (1, None) => "n >= 1",
            (2, Some(2)) => "n == 2",
            (2, None) => "n >= 2",
            (3, None) => "n >= 3",
            (4, Some(3)) => "the empty set (no level is independently confirmed)",
            (4, None) => "n >= 4",
            _ => "a restricted level range",
        };
        return Err(Error::Range {
            n,
            range,
            source_name: spec.name,
        });
    }
    Ok((spec.eval)(n))
}

fn check_bits(state: &CountState, bit_budget: u64) -> Result<()> {
    for (name, value) in &state.components {
        if value.bits() > bit_budget {
            return Err(Error::capability(format!(
                "count {name} at level {} needs {} bits, budget is {bit_budget}",
                state.level,
                value.bits()
            )));
        }
    }
    Ok(())
}

/// Runs the count recurrences from the base level up to `n` inclusive. The
/// bit budget bounds how large any tracked integer may grow.
pub fn count_recursion(
    model: Model,
    problem: Problem,
    n: u32,
    bit_budget: u64,
) -> Result<Vec<CountState>> {
    let base = count_base_level(problem);
    if n < base {
        return Err(Error::Range {
            n,
            range: "levels at or above the recurrence base",
            source_name: "the count recurrences",
        });
    }
    let big = |v: u32| BigUint::from(v);
    let mut state = match (model, problem) {
        (Model::Fractal, Problem::Matching) => CountState {
            level: base,
            components: vec![("free", big(2)), ("k0", big(1))],
        },
        (Model::NonFractal, Problem::Matching) => CountState {
            level: base,
            components: vec![("free", big(2)), ("k0", big(1)), ("k1-designated", big(2))],
        },
        (Model::Fractal, Problem::IndependentSet) => CountState {
            level: base,
            components: vec![("k0", big(2))],
        },
        (Model::NonFractal, Problem::IndependentSet) => CountState {
            level: base,
            components: vec![("k0", big(1))],
        },
        (Model::Fractal, Problem::DominatingSet) => CountState {
            level: base,
            components: vec![("k2", big(2))],
        },
        (Model::NonFractal, Problem::DominatingSet) => CountState {
            level: base,
            components: vec![("k2", big(1))],
        },
    };
    check_bits(&state, bit_budget)?;
    let mut states = vec![state.clone()];
    for level in base + 1..=n {
        state = match (model, problem) {
            (Model::Fractal, Problem::Matching) => {
                let theta = state.component("free").unwrap();
                let phi = state.component("k0").unwrap();
                let phi2 = phi * phi;
                CountState {
                    level,
                    components: vec![
                        ("free", 2u32 * theta * theta * &phi2),
                        ("k0", &phi2 * &phi2),
                    ],
                }
            }
            (Model::NonFractal, Problem::Matching) => {
                let theta = state.component("free").unwrap();
                let phi = state.component("k0").unwrap();
                let tilde = state.component("k1-designated").unwrap();
                let phi2 = phi * phi;
                let tilde2 = tilde * tilde;
                CountState {
                    level,
                    components: vec![
                        (
                            "free",
                            2u32 * theta * theta * &phi2
                                + 2u32 * &tilde2 * &tilde2
                                + 12u32 * theta * phi * &tilde2,
                        ),
                        ("k0", 4u32 * &phi2 * &tilde2),
                        (
                            "k1-designated",
                            4u32 * theta * &phi2 * tilde + 4u32 * phi * tilde * &tilde2,
                        ),
                    ],
                }
            }
            (Model::Fractal, Problem::IndependentSet) => {
                let x = state.component("k0").unwrap();
                let x2 = x * x;
                CountState {
                    level,
                    components: vec![("k0", &x2 * &x2)],
                }
            }
            (Model::NonFractal, Problem::IndependentSet) => CountState {
                level,
                components: vec![("k0", BigUint::one())],
            },
            (Model::Fractal, Problem::DominatingSet) => {
                let y = state.component("k2").unwrap();
                let y2 = y * y;
                CountState {
                    level,
                    components: vec![("k2", &y2 * &y2)],
                }
            }
            (Model::NonFractal, Problem::DominatingSet) => CountState {
                level,
                components: vec![("k2", BigUint::one())],
            },
        };
        check_bits(&state, bit_budget)?;
        states.push(state.clone());
    }
    Ok(states)
}

/// Closed form for the headline count at level `n`.
pub fn count_closed_form(
    model: Model,
    problem: Problem,
    n: u32,
    bit_budget: u64,
    _mode: RangeMode,
) -> Result<BigUint> {
    let base = count_base_level(problem);
    if n < base {
        return Err(Error::Range {
            n,
            range: "levels at or above the recurrence base",
            source_name: "the count closed forms",
        });
    }
    if n > SIZE_LEVEL_CAP {
        return Err(Error::capability(format!(
            "count closed forms cap the level at {SIZE_LEVEL_CAP}, got {n}"
        )));
    }
    let power_of_two = |exp: u128| -> Result<BigUint> {
        if exp + 1 > bit_budget as u128 {
            return Err(Error::capability(format!(
                "the count at level {n} needs {} bits, budget is {bit_budget}",
                exp + 1
            )));
        }
        Ok(BigUint::one() << usize::try_from(exp).expect("exponent fits usize"))
    };
    match (model, problem) {
        (Model::Fractal, Problem::Matching) => power_of_two((1u128 << n) - 1),
        (Model::NonFractal, Problem::Matching) => Err(Error::NoClosedForm(
            "the non-fractal maximum-matching count (only the recurrence is available)",
        )),
        (Model::Fractal, Problem::IndependentSet) => power_of_two(1u128 << (2 * n - 2)),
        (Model::NonFractal, Problem::IndependentSet) => Ok(BigUint::one()),
        (Model::Fractal, Problem::DominatingSet) => power_of_two(1u128 << (2 * n - 4)),
        (Model::NonFractal, Problem::DominatingSet) => Ok(BigUint::one()),
    }
}

/// One discrepancy between the recurrences and the closed forms; `known`
/// marks divergences that are documented properties of the source formulas
/// rather than defects in this crate.
#[derive(Debug, Clone, Serialize)]
pub struct Finding {
    pub model: Model,
    pub problem: Problem,
    pub level: u32,
    pub subject: String,
    pub known: bool,
}

fn known_divergence(model: Model, problem: Problem, component: Component, level: u32) -> bool {
    matches!(
        (model, problem, component, level),
        (Model::Fractal, Problem::IndependentSet, Component::K2, l) if l >= 3
    ) || matches!(
        (model, problem, component, level),
        (
            Model::Fractal,
            Problem::IndependentSet,
            Component::Headline,
            1
        ) | (Model::Fractal, Problem::DominatingSet, Component::K0, 2)
            | (Model::NonFractal, Problem::DominatingSet, Component::K0, 3)
    )
}

/// Compares recursion values against closed forms (over the stated ranges)
/// for every model and problem up to `max_level`, and checks that the
/// attaining branches stabilize. Count comparisons stop quietly at the level
/// where the bit budget runs out.
pub fn self_check(max_level: u32, bit_budget: u64) -> Result<Vec<Finding>> {
    let mut findings = Vec::new();
    let components = [Component::K0, Component::K1, Component::K2];
    for model in [Model::Fractal, Model::NonFractal] {
        for problem in [
            Problem::Matching,
            Problem::IndependentSet,
            Problem::DominatingSet,
        ] {
            let base = size_base_level(model, problem);
            if max_level < base {
                continue;
            }
            let steps = size_recursion(model, problem, max_level)?;
            for step in &steps {
                for (k, &component) in components.iter().enumerate() {
                    let Some(recursion) = step.by_k[k] else {
                        continue;
                    };
                    let closed = match size_closed_form(
                        model,
                        problem,
                        component,
                        step.level,
                        RangeMode::Stated,
                    ) {
                        Ok(v) => v,
                        Err(Error::NoClosedForm(_)) | Err(Error::Range { .. }) => continue,
                        Err(e) => return Err(e),
                    };
                    if closed != recursion {
                        findings.push(Finding {
                            model,
                            problem,
                            level: step.level,
                            subject: format!(
                                "{} class size: recurrence {recursion}, closed form {closed}",
                                component.label()
                            ),
                            known: known_divergence(model, problem, component, step.level),
                        });
                    }
                }
                match size_closed_form(
                    model,
                    problem,
                    Component::Headline,
                    step.level,
                    RangeMode::Stated,
                ) {
                    Ok(closed) if closed != step.headline => findings.push(Finding {
                        model,
                        problem,
                        level: step.level,
                        subject: format!(
                            "headline size: recurrence {}, closed form {closed}",
                            step.headline
                        ),
                        known: known_divergence(model, problem, Component::Headline, step.level),
                    }),
                    _ => {}
                }
                if let (Some(alt), Some(k1)) = (step.k1_alternate, step.by_k[1]) {
                    if alt != k1 {
                        findings.push(Finding {
                            model,
                            problem,
                            level: step.level,
                            subject: format!(
                                "k1 recurrence readings disagree: {k1} vs alternate {alt}"
                            ),
                            known: true,
                        });
                    }
                }
            }
            // The set of attaining branches settles once the source state is
            // at least level 2; flag any later step that changes the pattern.
            let settled = (base + 1).max(3);
            for pair in steps.windows(2) {
                if pair[0].level >= settled && pair[0].attained != pair[1].attained {
                    findings.push(Finding {
                        model,
                        problem,
                        level: pair[1].level,
                        subject: format!(
                            "attaining branches changed: {:?} -> {:?}",
                            pair[0].attained, pair[1].attained
                        ),
                        known: false,
                    });
                }
            }

            let count_base = count_base_level(problem);
            if max_level < count_base {
                continue;
            }
            let counts = match count_recursion(model, problem, max_level, bit_budget) {
                Ok(c) => c,
                Err(Error::Capability(_)) => continue,
                Err(e) => return Err(e),
            };
            for state in &counts {
                let closed = match count_closed_form(
                    model,
                    problem,
                    state.level,
                    bit_budget,
                    RangeMode::Stated,
                ) {
                    Ok(v) => v,
                    Err(Error::NoClosedForm(_)) | Err(Error::Capability(_)) => continue,
                    Err(e) => return Err(e),
                };
                if &closed != state.headline() {
                    findings.push(Finding {
                        model,
                        problem,
                        level: state.level,
                        subject: format!(
                            "headline count: recurrence {}, closed form {closed}",
                            state.headline()
                        ),
                        known: false,
                    });
                }
            }
        }
    }
    Ok(findings)
}
