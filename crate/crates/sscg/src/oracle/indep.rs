//! Maximum-independent-set size and exact count via memoized branching with
//! component splitting; boundary vertices can be forced in or out.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::Result;
use crate::graph::Graph;
use crate::oracle::{OracleBudget, Participation, SolveResult, Ticker, VertexRule, Witness};

struct Solver {
    adj: Vec<u64>,
    closed: Vec<u64>,
    memo: HashMap<u64, (u32, BigUint)>,
    ticker: Ticker,
}

impl Solver {
    fn new(g: &Graph, budget: &OracleBudget) -> Self {
        let n = g.vertex_count();
        let mut adj = vec![0u64; n];
        for &(u, v, _) in g.edges() {
            adj[u as usize] |= 1 << v;
            adj[v as usize] |= 1 << u;
        }
        let closed = adj.iter().enumerate().map(|(v, &m)| m | (1 << v)).collect();
        Solver {
            adj,
            closed,
            memo: HashMap::new(),
            ticker: Ticker::new(budget),
        }
    }

    fn component_of(&self, mask: u64) -> u64 {
        let mut comp = mask & mask.wrapping_neg();
        loop {
            let mut grown = comp;
            let mut rest = comp;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                grown |= self.adj[v] & mask;
            }
            if grown == comp {
                return comp;
            }
            comp = grown;
        }
    }

    /// Size and count of maximum independent sets of the subgraph induced by
    /// `mask`.
    fn best(&mut self, mask: u64) -> Result<(u32, BigUint)> {
        if mask == 0 {
            return Ok((0, BigUint::one()));
        }
        if let Some(hit) = self.memo.get(&mask) {
            return Ok(hit.clone());
        }
        self.ticker.tick()?;

        let comp = self.component_of(mask);
        let result = if comp != mask {
            let (s1, c1) = self.best(comp)?;
            let (s2, c2) = self.best(mask ^ comp)?;
            (s1 + s2, c1 * c2)
        } else {
            // Connected: branch on a vertex of maximum degree.
            let mut pivot = comp.trailing_zeros() as usize;
            let mut pivot_deg = 0usize;
            let mut scan = comp;
            while scan != 0 {
                let v = scan.trailing_zeros() as usize;
                scan &= scan - 1;
                let d = (self.adj[v] & comp).count_ones() as usize;
                if d > pivot_deg {
                    pivot_deg = d;
                    pivot = v;
                }
            }
            let (mut max, mut count) = self.best(comp & !(1 << pivot))?;
            let (s_in, c_in) = self.best(comp & !self.closed[pivot])?;
            match (s_in + 1).cmp(&max) {
                std::cmp::Ordering::Greater => {
                    max = s_in + 1;
                    count = c_in;
                }
                std::cmp::Ordering::Equal => count += c_in,
                std::cmp::Ordering::Less => {}
            }
            (max, count)
        };
        self.memo.insert(mask, result.clone());
        Ok(result)
    }

    /// Emits independent sets of size exactly `need` within `mask` until
    /// `cap` witnesses are collected. Returns true when truncated.
    fn collect(
        &mut self,
        mask: u64,
        need: u32,
        current: &mut Vec<u32>,
        out: &mut Vec<Witness>,
        cap: usize,
    ) -> Result<bool> {
        if out.len() >= cap {
            return Ok(true);
        }
        if need == 0 {
            let mut set = current.clone();
            set.sort_unstable();
            out.push(Witness::Vertices(set));
            return Ok(false);
        }
        if mask == 0 {
            return Ok(false);
        }
        let v = mask.trailing_zeros();
        let mut truncated = false;
        let in_mask = mask & !self.closed[v as usize];
        if self.best(in_mask)?.0 + 1 >= need {
            current.push(v);
            truncated |= self.collect(in_mask, need - 1, current, out, cap)?;
            current.pop();
        }
        let out_mask = mask & !(1 << v);
        if self.best(out_mask)?.0 >= need {
            truncated |= self.collect(out_mask, need, current, out, cap)?;
        }
        Ok(truncated)
    }
}

pub(crate) fn run(g: &Graph, rules: &[VertexRule], budget: &OracleBudget) -> Result<SolveResult> {
    let mut solver = Solver::new(g, budget);
    let mut mask = if g.vertex_count() == 64 {
        u64::MAX
    } else {
        (1u64 << g.vertex_count()) - 1
    };
    for &(v, p) in rules {
        if p == Participation::Forbidden {
            mask &= !(1 << v);
        }
    }
    let mut prefix = Vec::new();
    for &(v, p) in rules {
        if p == Participation::Forced {
            if mask & (1 << v) == 0 {
                return Ok(SolveResult::infeasible());
            }
            prefix.push(v);
            mask &= !solver.closed[v as usize];
        }
    }
    let (s, count) = solver.best(mask)?;
    let optimum = s + prefix.len() as u32;
    let mut inner = Vec::new();
    let truncated = solver.collect(mask, s, &mut prefix.clone(), &mut inner, budget.witness_cap)?;
    Ok(SolveResult {
        optimum: Some(optimum),
        count,
        witnesses: inner,
        truncated,
        elapsed_ms: solver.ticker.elapsed_ms(),
    })
}
