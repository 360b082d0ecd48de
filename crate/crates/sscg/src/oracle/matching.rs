//! Maximum-matching size and exact count via memoized branching on bitmask
//! subgraphs, with optional saturation rules for the boundary vertices.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::Result;
use crate::graph::Graph;
use crate::oracle::{OracleBudget, Participation, SolveResult, Ticker, VertexRule, Witness};

struct Solver {
    adj: Vec<u64>,
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
        Solver {
            adj,
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

    /// Size and count of maximum matchings of the subgraph induced by `mask`.
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
            // Connected: branch on a vertex of minimum degree.
            let mut pivot = comp.trailing_zeros() as usize;
            let mut pivot_deg = usize::MAX;
            let mut scan = comp;
            while scan != 0 {
                let v = scan.trailing_zeros() as usize;
                scan &= scan - 1;
                let d = (self.adj[v] & comp).count_ones() as usize;
                if d < pivot_deg {
                    pivot_deg = d;
                    pivot = v;
                }
            }
            let vbit = 1u64 << pivot;
            let (mut max, mut count) = self.best(comp ^ vbit)?;
            let mut nbrs = self.adj[pivot] & comp;
            while nbrs != 0 {
                let u = nbrs.trailing_zeros() as usize;
                nbrs &= nbrs - 1;
                let (s, c) = self.best(comp ^ vbit ^ (1 << u))?;
                match (s + 1).cmp(&max) {
                    std::cmp::Ordering::Greater => {
                        max = s + 1;
                        count = c;
                    }
                    std::cmp::Ordering::Equal => count += c,
                    std::cmp::Ordering::Less => {}
                }
            }
            (max, count)
        };
        self.memo.insert(mask, result.clone());
        Ok(result)
    }

    /// Like [`best`], but every vertex in `pending` must end up saturated.
    /// `None` when that is impossible.
    fn best_pending(&mut self, mask: u64, pending: &[u32]) -> Result<(Option<u32>, BigUint)> {
        let Some((&v, rest)) = pending.split_first() else {
            let (s, c) = self.best(mask)?;
            return Ok((Some(s), c));
        };
        let vbit = 1u64 << v;
        debug_assert!(mask & vbit != 0);
        let mut max = None;
        let mut count = BigUint::zero();
        let mut nbrs = self.adj[v as usize] & mask;
        while nbrs != 0 {
            let u = nbrs.trailing_zeros();
            nbrs &= nbrs - 1;
            let sub_pending: Vec<u32> = rest.iter().copied().filter(|&x| x != u).collect();
            let (s, c) = self.best_pending(mask ^ vbit ^ (1 << u), &sub_pending)?;
            let Some(s) = s else { continue };
            let val = s + 1;
            match max {
                None => {
                    max = Some(val);
                    count = c;
                }
                Some(m) if val > m => {
                    max = Some(val);
                    count = c;
                }
                Some(m) if val == m => count += c,
                _ => {}
            }
        }
        Ok((max, count))
    }

    /// Emits matchings of size exactly `need`, saturating all of `pending`,
    /// until `cap` witnesses are collected. Returns true when truncated.
    fn collect(
        &mut self,
        mask: u64,
        pending: &[u32],
        need: u32,
        current: &mut Vec<(u32, u32)>,
        out: &mut Vec<Witness>,
        cap: usize,
    ) -> Result<bool> {
        if out.len() >= cap {
            return Ok(true);
        }
        if let Some((&v, rest)) = pending.split_first() {
            let vbit = 1u64 << v;
            let mut truncated = false;
            let mut nbrs = self.adj[v as usize] & mask;
            while nbrs != 0 {
                let u = nbrs.trailing_zeros();
                nbrs &= nbrs - 1;
                let sub_pending: Vec<u32> = rest.iter().copied().filter(|&x| x != u).collect();
                let sub = mask ^ vbit ^ (1 << u);
                if need >= 1 && self.best_pending(sub, &sub_pending)?.0 >= Some(need - 1) {
                    current.push((v.min(u), v.max(u)));
                    truncated |= self.collect(sub, &sub_pending, need - 1, current, out, cap)?;
                    current.pop();
                }
            }
            return Ok(truncated);
        }
        if need == 0 {
            let mut edges = current.clone();
            edges.sort_unstable();
            out.push(Witness::Edges(edges));
            return Ok(false);
        }
        let v = mask.trailing_zeros();
        let vbit = 1u64 << v;
        let mut truncated = false;
        if self.best(mask ^ vbit)?.0 >= need {
            truncated |= self.collect(mask ^ vbit, &[], need, current, out, cap)?;
        }
        let mut nbrs = self.adj[v as usize] & mask;
        while nbrs != 0 {
            let u = nbrs.trailing_zeros();
            nbrs &= nbrs - 1;
            let sub = mask ^ vbit ^ (1 << u);
            if self.best(sub)?.0 + 1 >= need {
                current.push((v.min(u), v.max(u)));
                truncated |= self.collect(sub, &[], need - 1, current, out, cap)?;
                current.pop();
            }
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
    let mut pending = Vec::new();
    for &(v, p) in rules {
        match p {
            Participation::Forbidden => mask &= !(1 << v),
            Participation::Forced => pending.push(v),
        }
    }
    let (optimum, count) = solver.best_pending(mask, &pending)?;
    let mut witnesses = Vec::new();
    let mut truncated = false;
    if let Some(opt) = optimum {
        truncated = solver.collect(
            mask,
            &pending,
            opt,
            &mut Vec::new(),
            &mut witnesses,
            budget.witness_cap,
        )?;
    }
    Ok(SolveResult {
        optimum,
        count,
        witnesses,
        truncated,
        elapsed_ms: solver.ticker.elapsed_ms(),
    })
}
