//! Straightforward reference implementations used to cross-check the
//! branching solvers on small graphs. They share no code with the optimized
//! paths: vertex subsets are scanned directly and matchings are counted by
//! pairing up vertex sets.

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::Graph;

const NAIVE_VERTEX_CAP: usize = 20;

fn adjacency(g: &Graph) -> Result<Vec<u64>> {
    if g.vertex_count() > NAIVE_VERTEX_CAP {
        return Err(Error::capability(format!(
            "reference solvers scan all vertex subsets and are limited to {NAIVE_VERTEX_CAP} vertices"
        )));
    }
    let mut adj = vec![0u64; g.vertex_count()];
    for &(u, v, _) in g.edges() {
        adj[u as usize] |= 1 << v;
        adj[v as usize] |= 1 << u;
    }
    Ok(adj)
}

/// Number of perfect matchings of the subgraph induced by `mask`, by pairing
/// the lowest vertex with each neighbor.
fn perfect_matchings(adj: &[u64], mask: u64) -> u64 {
    if mask == 0 {
        return 1;
    }
    let v = mask.trailing_zeros() as usize;
    let rest = mask & !(1 << v);
    let mut total = 0;
    let mut nbrs = adj[v] & rest;
    while nbrs != 0 {
        let u = nbrs.trailing_zeros();
        nbrs &= nbrs - 1;
        total += perfect_matchings(adj, rest & !(1 << u));
    }
    total
}

/// Maximum matching size and count: every maximum matching saturates exactly
/// one vertex subset of size 2β, so summing perfect-matching counts over
/// subsets of the right size gives the total.
pub fn max_matching(g: &Graph) -> Result<(u32, BigUint)> {
    let adj = adjacency(g)?;
    let n = g.vertex_count();
    let mut best = 0u32;
    let mut count = BigUint::zero();
    for mask in 0..(1u64 << n) {
        let size = mask.count_ones();
        if size % 2 != 0 || size / 2 < best {
            continue;
        }
        let pm = perfect_matchings(&adj, mask);
        if pm == 0 {
            continue;
        }
        if size / 2 > best {
            best = size / 2;
            count = BigUint::zero();
        }
        count += pm;
    }
    Ok((best, count))
}

pub fn max_independent_set(g: &Graph) -> Result<(u32, BigUint)> {
    let adj = adjacency(g)?;
    let n = g.vertex_count();
    let mut best = 0u32;
    let mut count = BigUint::zero();
    for mask in 0u64..(1u64 << n) {
        if mask.count_ones() < best {
            continue;
        }
        let independent = (0..n).all(|v| mask & (1 << v) == 0 || adj[v] & mask == 0);
        if !independent {
            continue;
        }
        if mask.count_ones() > best {
            best = mask.count_ones();
            count = BigUint::zero();
        }
        count += 1u32;
    }
    Ok((best, count))
}

pub fn min_dominating_set(g: &Graph) -> Result<(u32, BigUint)> {
    let adj = adjacency(g)?;
    let n = g.vertex_count();
    let full = if n == 0 { 0 } else { (1u64 << n) - 1 };
    let mut best = n as u32 + 1;
    let mut count = BigUint::zero();
    for mask in 0u64..(1u64 << n) {
        if mask.count_ones() > best {
            continue;
        }
        let mut covered = mask;
        let mut scan = mask;
        while scan != 0 {
            let v = scan.trailing_zeros() as usize;
            scan &= scan - 1;
            covered |= adj[v];
        }
        if covered != full {
            continue;
        }
        if mask.count_ones() < best {
            best = mask.count_ones();
            count = BigUint::zero();
        }
        count += 1u32;
    }
    Ok((best, count))
}
