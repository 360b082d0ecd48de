//! Summary statistics for generated graphs: degree data, distance data and
//! per-role tallies.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::graph::{EdgeKind, Graph, VertexId};

/// All-pairs distances are skipped above this many vertices; the breadth
/// first sweep is quadratic and the CLI should stay responsive at high
/// levels.
pub const DISTANCE_VERTEX_CAP: usize = 3000;

#[derive(Debug, Clone, Serialize)]
pub struct GraphStats {
    pub vertices: usize,
    pub edges: usize,
    pub iterative_edges: usize,
    pub degree_histogram: BTreeMap<usize, usize>,
    pub min_degree: usize,
    pub max_degree: usize,
    pub average_degree: f64,
    /// Mean distance over unordered pairs of distinct vertices. `None` when
    /// the graph is disconnected or larger than [`DISTANCE_VERTEX_CAP`].
    pub average_distance: Option<f64>,
    pub diameter: Option<u32>,
    pub roles: BTreeMap<String, usize>,
    pub newest_round: u32,
}

pub fn graph_stats(g: &Graph) -> GraphStats {
    let n = g.vertex_count();
    let mut degree_histogram = BTreeMap::new();
    for v in 0..n {
        let d = g.degree(v as VertexId).expect("vertex id in range");
        *degree_histogram.entry(d).or_insert(0) += 1;
    }
    let min_degree = degree_histogram.keys().next().copied().unwrap_or(0);
    let max_degree = degree_histogram.keys().next_back().copied().unwrap_or(0);
    let average_degree = if n == 0 {
        0.0
    } else {
        2.0 * g.edge_count() as f64 / n as f64
    };

    let mut average_distance = None;
    let mut diameter = None;
    if (2..=DISTANCE_VERTEX_CAP).contains(&n) {
        let mut sum = 0u128;
        let mut eccentricity_max = 0u32;
        let mut connected = true;
        'outer: for u in 0..n {
            let dist = g.bfs_distances(u as VertexId).expect("vertex id in range");
            for d in dist.iter().skip(u + 1) {
                match d {
                    Some(d) => {
                        sum += *d as u128;
                        eccentricity_max = eccentricity_max.max(*d);
                    }
                    None => {
                        connected = false;
                        break 'outer;
                    }
                }
            }
        }
        if connected {
            let pairs = (n as u128 * (n as u128 - 1)) / 2;
            average_distance = Some(sum as f64 / pairs as f64);
            diameter = Some(eccentricity_max);
        }
    }

    let mut roles = BTreeMap::new();
    let mut newest_round = 0;
    for meta in g.metas() {
        *roles.entry(meta.role.token().to_string()).or_insert(0) += 1;
        newest_round = newest_round.max(meta.created_at);
    }

    GraphStats {
        vertices: n,
        edges: g.edge_count(),
        iterative_edges: g.edge_count_of_kind(EdgeKind::Iterative),
        degree_histogram,
        min_degree,
        max_degree,
        average_degree,
        average_distance,
        diameter,
        roles,
        newest_round,
    }
}
