//! Immutable undirected graphs with typed edges and per-vertex construction
//! metadata. Vertex ids are dense `u32` indices starting at 0.

use serde::{Deserialize, Serialize};
use std::collections::VecDeque;

use crate::error::{Error, Result};

pub type VertexId = u32;

/// Edges are either part of the replicated skeleton (`Iterative`) or one of
/// the chords added alongside a replacement step (`NonIterative`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum EdgeKind {
    Iterative,
    NonIterative,
}

impl EdgeKind {
    pub fn token(self) -> &'static str {
        match self {
            EdgeKind::Iterative => "I",
            EdgeKind::NonIterative => "N",
        }
    }

    pub fn from_token(tok: &str) -> Option<Self> {
        match tok {
            "I" => Some(EdgeKind::Iterative),
            "N" => Some(EdgeKind::NonIterative),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Initial,
    Hub,
    Border,
    Ordinary,
}

impl Role {
    pub fn token(self) -> &'static str {
        match self {
            Role::Initial => "initial",
            Role::Hub => "hub",
            Role::Border => "border",
            Role::Ordinary => "ordinary",
        }
    }

    pub fn from_token(tok: &str) -> Option<Self> {
        match tok {
            "initial" => Some(Role::Initial),
            "hub" => Some(Role::Hub),
            "border" => Some(Role::Border),
            "ordinary" => Some(Role::Ordinary),
            _ => None,
        }
    }
}

/// `created_at` is the 0-based construction round that introduced the vertex,
/// with the first round folded into round 0 (so the two seed vertices and the
/// first generated pair both carry 0, and the newest vertices of a level-n
/// graph carry n-1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VertexMeta {
    pub role: Role,
    pub created_at: u32,
}

#[derive(Debug, Clone)]
pub struct Graph {
    adj: Vec<Vec<(VertexId, EdgeKind)>>,
    edges: Vec<(VertexId, VertexId, EdgeKind)>,
    meta: Vec<VertexMeta>,
}

pub const ISOMORPHISM_VERTEX_CAP: usize = 200;

impl Graph {
    /// Builds a graph from an edge list. Edges are stored normalized with
    /// `u < v` in input order; adjacency lists are sorted by neighbor id.
    /// Self-loops and parallel edges (regardless of kind) are rejected.
    pub fn new(
        vertex_count: usize,
        edges: Vec<(VertexId, VertexId, EdgeKind)>,
        meta: Vec<VertexMeta>,
    ) -> Result<Self> {
        if meta.len() != vertex_count {
            return Err(Error::usage(format!(
                "metadata length {} does not match vertex count {}",
                meta.len(),
                vertex_count
            )));
        }
        if vertex_count > u32::MAX as usize {
            return Err(Error::usage("vertex count exceeds u32 range"));
        }
        let mut adj: Vec<Vec<(VertexId, EdgeKind)>> = vec![Vec::new(); vertex_count];
        let mut normalized = Vec::with_capacity(edges.len());
        for &(a, b, kind) in &edges {
            if a as usize >= vertex_count || b as usize >= vertex_count {
                return Err(Error::usage(format!(
                    "edge ({a}, {b}) references a vertex outside 0..{vertex_count}"
                )));
            }
            if a == b {
                return Err(Error::usage(format!("self-loop at vertex {a}")));
            }
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            normalized.push((u, v, kind));
            adj[u as usize].push((v, kind));
            adj[v as usize].push((u, kind));
        }
        for (v, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0].0 == w[1].0) {
                return Err(Error::usage(format!("parallel edge at vertex {v}")));
            }
        }
        Ok(Graph {
            adj,
            edges: normalized,
            meta,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge_count_of_kind(&self, kind: EdgeKind) -> usize {
        self.edges.iter().filter(|e| e.2 == kind).count()
    }

    /// Edges in input order, normalized to `u < v`.
    pub fn edges(&self) -> &[(VertexId, VertexId, EdgeKind)] {
        &self.edges
    }

    pub fn metas(&self) -> &[VertexMeta] {
        &self.meta
    }

    pub fn meta(&self, v: VertexId) -> Result<&VertexMeta> {
        self.meta
            .get(v as usize)
            .ok_or_else(|| Error::usage(format!("vertex {v} out of range")))
    }

    /// Neighbors of `v` sorted by id, with the kind of the connecting edge.
    pub fn neighbors(&self, v: VertexId) -> Result<&[(VertexId, EdgeKind)]> {
        self.adj
            .get(v as usize)
            .map(Vec::as_slice)
            .ok_or_else(|| Error::usage(format!("vertex {v} out of range")))
    }

    pub fn degree(&self, v: VertexId) -> Result<usize> {
        Ok(self.neighbors(v)?.len())
    }

    pub fn edge_kind(&self, a: VertexId, b: VertexId) -> Option<EdgeKind> {
        let list = self.adj.get(a as usize)?;
        list.binary_search_by_key(&b, |&(w, _)| w)
            .ok()
            .map(|i| list[i].1)
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        self.edge_kind(a, b).is_some()
    }

    /// Subgraph induced by `keep` (which must be duplicate-free). Returns the
    /// new graph plus the mapping from new ids to original ids; vertex
    /// metadata is carried over unchanged.
    pub fn induced_subgraph(&self, keep: &[VertexId]) -> Result<(Graph, Vec<VertexId>)> {
        let n = self.vertex_count();
        let mut new_id: Vec<Option<u32>> = vec![None; n];
        for (i, &v) in keep.iter().enumerate() {
            if v as usize >= n {
                return Err(Error::usage(format!("vertex {v} out of range")));
            }
            if new_id[v as usize].is_some() {
                return Err(Error::usage(format!("duplicate vertex {v} in selection")));
            }
            new_id[v as usize] = Some(i as u32);
        }
        let mut edges = Vec::new();
        for &(u, v, kind) in &self.edges {
            if let (Some(nu), Some(nv)) = (new_id[u as usize], new_id[v as usize]) {
                edges.push((nu, nv, kind));
            }
        }
        let meta = keep.iter().map(|&v| self.meta[v as usize]).collect();
        let graph = Graph::new(keep.len(), edges, meta)?;
        Ok((graph, keep.to_vec()))
    }

    /// Breadth-first distances from `src`; `None` marks unreachable vertices.
    pub fn bfs_distances(&self, src: VertexId) -> Result<Vec<Option<u32>>> {
        if src as usize >= self.vertex_count() {
            return Err(Error::usage(format!("vertex {src} out of range")));
        }
        let mut dist = vec![None; self.vertex_count()];
        dist[src as usize] = Some(0);
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u as usize].unwrap();
            for &(w, _) in &self.adj[u as usize] {
                if dist[w as usize].is_none() {
                    dist[w as usize] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        Ok(dist)
    }

    /// Structure-preserving bijection test. Edge kinds must match across the
    /// bijection; vertex metadata is not compared. Graphs larger than
    /// [`ISOMORPHISM_VERTEX_CAP`] yield a capability error.
    pub fn isomorphic(&self, other: &Graph) -> Result<bool> {
        let n = self.vertex_count();
        if n > ISOMORPHISM_VERTEX_CAP || other.vertex_count() > ISOMORPHISM_VERTEX_CAP {
            return Err(Error::capability(format!(
                "isomorphism test is limited to {ISOMORPHISM_VERTEX_CAP} vertices"
            )));
        }
        if n != other.vertex_count() || self.edge_count() != other.edge_count() {
            return Ok(false);
        }
        if self.edge_count_of_kind(EdgeKind::Iterative)
            != other.edge_count_of_kind(EdgeKind::Iterative)
        {
            return Ok(false);
        }
        if n == 0 {
            return Ok(true);
        }

        let sig = |g: &Graph, v: usize| -> (u32, u32) {
            let mut iter = 0;
            let mut non = 0;
            for &(_, kind) in &g.adj[v] {
                match kind {
                    EdgeKind::Iterative => iter += 1,
                    EdgeKind::NonIterative => non += 1,
                }
            }
            (iter, non)
        };
        let mut sig_a: Vec<(u32, u32)> = (0..n).map(|v| sig(self, v)).collect();
        let mut sig_b: Vec<(u32, u32)> = (0..n).map(|v| sig(other, v)).collect();
        {
            let mut sa = sig_a.clone();
            let mut sb = sig_b.clone();
            sa.sort_unstable();
            sb.sort_unstable();
            if sa != sb {
                return Ok(false);
            }
        }

        // Order self's vertices so that rare signatures are matched first.
        let mut order: Vec<usize> = (0..n).collect();
        let mut class_size = std::collections::HashMap::new();
        for &s in &sig_a {
            *class_size.entry(s).or_insert(0usize) += 1;
        }
        order.sort_by_key(|&v| (class_size[&sig_a[v]], std::cmp::Reverse(self.adj[v].len())));

        let kind_at = |g: &Graph, a: u32, b: u32| g.edge_kind(a, b);
        let mut mapping: Vec<Option<u32>> = vec![None; n];
        let mut used: Vec<bool> = vec![false; n];

        #[allow(clippy::too_many_arguments)]
        fn backtrack(
            pos: usize,
            order: &[usize],
            a: &Graph,
            b: &Graph,
            sig_a: &mut [(u32, u32)],
            sig_b: &mut [(u32, u32)],
            mapping: &mut [Option<u32>],
            used: &mut [bool],
            kind_at: &dyn Fn(&Graph, u32, u32) -> Option<EdgeKind>,
        ) -> bool {
            if pos == order.len() {
                return true;
            }
            let v = order[pos];
            for cand in 0..b.vertex_count() {
                if used[cand] || sig_a[v] != sig_b[cand] {
                    continue;
                }
                let mut ok = true;
                for &(w, kind) in &a.adj[v] {
                    if let Some(mapped) = mapping[w as usize] {
                        if kind_at(b, cand as u32, mapped) != Some(kind) {
                            ok = false;
                            break;
                        }
                    }
                }
                if ok {
                    mapping[v] = Some(cand as u32);
                    used[cand] = true;
                    if backtrack(pos + 1, order, a, b, sig_a, sig_b, mapping, used, kind_at) {
                        return true;
                    }
                    mapping[v] = None;
                    used[cand] = false;
                }
            }
            false
        }

        Ok(backtrack(
            0,
            &order,
            self,
            other,
            &mut sig_a,
            &mut sig_b,
            &mut mapping,
            &mut used,
            &kind_at,
        ))
    }
}
