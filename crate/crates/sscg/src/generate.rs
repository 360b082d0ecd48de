//! Construction of the two graph families.
//!
//! Both start from a single iterative edge. One growth round replaces every
//! iterative edge (u, v) by two length-2 paths through fresh vertices w and z
//! (four new iterative edges), and adds one non-iterative chord: w-z in the
//! fractal model, u-v in the non-fractal model. Non-iterative edges are never
//! replaced.
//!
//! The same level-n graph also arises by gluing four disjoint copies of the
//! level-(n-1) graph at their boundary pairs and adding one chord, which is
//! what [`Method::Merge`] implements.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeKind, Graph, Role, VertexId, VertexMeta};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Fractal,
    NonFractal,
}

impl Model {
    pub fn name(self) -> &'static str {
        match self {
            Model::Fractal => "fractal",
            Model::NonFractal => "nonfractal",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "fractal" => Some(Model::Fractal),
            "nonfractal" | "non-fractal" => Some(Model::NonFractal),
            _ => None,
        }
    }

    /// Role of the two level-0 vertices. In the fractal model they keep
    /// degree 2 forever; in the non-fractal model they become the hubs.
    fn seed_role(self) -> Role {
        match self {
            Model::Fractal => Role::Initial,
            Model::NonFractal => Role::Hub,
        }
    }

    /// Role of the pair created by the first growth round.
    fn first_round_role(self) -> Role {
        match self {
            Model::Fractal => Role::Hub,
            Model::NonFractal => Role::Border,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    EdgeReplacement,
    Merge,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::EdgeReplacement => "edge-replacement",
            Method::Merge => "merge",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "edge-replacement" | "replacement" => Some(Method::EdgeReplacement),
            "merge" => Some(Method::Merge),
            _ => None,
        }
    }
}

pub const DEFAULT_MAX_LEVEL: u32 = 8;

/// Closed-form vertex and edge counts for level `n`.
pub fn predicted_counts(n: u32) -> Result<(u128, u128)> {
    if n > 60 {
        return Err(Error::capability(format!(
            "size formulas are evaluated in 128-bit integers; level {n} exceeds the cap of 60"
        )));
    }
    let pow = 1u128 << (2 * n);
    Ok((2 * (pow + 2) / 3, (4 * pow - 1) / 3))
}

pub fn build(model: Model, method: Method, n: u32) -> Result<Graph> {
    build_with_cap(model, method, n, DEFAULT_MAX_LEVEL)
}

pub fn build_with_cap(model: Model, method: Method, n: u32, max_level: u32) -> Result<Graph> {
    if n > max_level {
        return Err(Error::capability(format!(
            "level {n} exceeds the build cap of {max_level} (a level-{n} graph has {} vertices)",
            predicted_counts(n.min(60))
                .map(|c| c.0)
                .unwrap_or(u128::MAX)
        )));
    }
    match method {
        Method::EdgeReplacement => build_replacement(model, n),
        Method::Merge => build_merge(model, n),
    }
}

fn seed(model: Model) -> Graph {
    let meta = VertexMeta {
        role: model.seed_role(),
        created_at: 0,
    };
    Graph::new(2, vec![(0, 1, EdgeKind::Iterative)], vec![meta, meta]).expect("seed graph")
}

fn build_replacement(model: Model, n: u32) -> Result<Graph> {
    let mut meta = vec![
        VertexMeta {
            role: model.seed_role(),
            created_at: 0,
        };
        2
    ];
    let mut edges = vec![(0u32, 1u32, EdgeKind::Iterative)];

    for round in 1..=n {
        let role = if round == 1 {
            model.first_round_role()
        } else {
            Role::Ordinary
        };
        let created_at = round - 1;
        let (iterative, mut next): (Vec<_>, Vec<_>) =
            edges.into_iter().partition(|e| e.2 == EdgeKind::Iterative);
        for (u, v, _) in iterative {
            let w = meta.len() as VertexId;
            let z = w + 1;
            meta.push(VertexMeta { role, created_at });
            meta.push(VertexMeta { role, created_at });
            next.push((u, w, EdgeKind::Iterative));
            next.push((w, v, EdgeKind::Iterative));
            next.push((u, z, EdgeKind::Iterative));
            next.push((z, v, EdgeKind::Iterative));
            match model {
                Model::Fractal => next.push((w, z, EdgeKind::NonIterative)),
                Model::NonFractal => next.push((u, v, EdgeKind::NonIterative)),
            }
        }
        edges = next;
    }
    let count = meta.len();
    Graph::new(count, edges, meta)
}

fn build_merge(model: Model, n: u32) -> Result<Graph> {
    let mut g = seed(model);
    for _ in 0..n {
        g = merge_step(model, &g)?;
    }
    Ok(g)
}

/// Glues four copies of `part` at their boundary pairs (p, q):
/// copy 1 spans the new X-W side, copy 2 W-Y, copy 3 X-Z, copy 4 Z-Y,
/// then one chord is added (W-Z fractal, X-Y non-fractal).
fn merge_step(model: Model, part: &Graph) -> Result<Graph> {
    let (p, q) = boundary(part)?;
    let pn = part.vertex_count();

    // New ids: 0 = X, 1 = Y, 2 = W, 3 = Z, interiors follow in copy order.
    const X: VertexId = 0;
    const Y: VertexId = 1;
    const W: VertexId = 2;
    const Z: VertexId = 3;
    let glue: [(VertexId, VertexId); 4] = [(X, W), (W, Y), (X, Z), (Z, Y)];

    let interior_per_copy = pn - 2;
    let total = 4 + 4 * interior_per_copy;
    let mut meta = vec![
        VertexMeta {
            role: Role::Ordinary,
            created_at: 0,
        };
        total
    ];
    meta[X as usize].role = model.seed_role();
    meta[Y as usize].role = model.seed_role();
    meta[W as usize].role = model.first_round_role();
    meta[Z as usize].role = model.first_round_role();

    let mut edges = Vec::with_capacity(4 * part.edge_count() + 1);
    let mut next_interior = 4u32;
    for (copy, &(image_p, image_q)) in glue.iter().enumerate() {
        let mut map = vec![0u32; pn];
        for v in 0..pn as u32 {
            map[v as usize] = if v == p {
                image_p
            } else if v == q {
                image_q
            } else {
                let id = next_interior;
                next_interior += 1;
                meta[id as usize].created_at = part.meta(v)?.created_at + 1;
                id
            };
        }
        let _ = copy;
        for &(u, v, kind) in part.edges() {
            edges.push((map[u as usize], map[v as usize], kind));
        }
    }
    match model {
        Model::Fractal => edges.push((W, Z, EdgeKind::NonIterative)),
        Model::NonFractal => edges.push((X, Y, EdgeKind::NonIterative)),
    }
    Graph::new(total, edges, meta)
}

/// The two attachment vertices used when four copies are glued: the initial
/// pair when present, otherwise the hub pair.
pub fn boundary(g: &Graph) -> Result<(VertexId, VertexId)> {
    let find = |role: Role| -> Vec<VertexId> {
        g.metas()
            .iter()
            .enumerate()
            .filter(|(_, m)| m.role == role)
            .map(|(i, _)| i as VertexId)
            .collect()
    };
    for role in [Role::Initial, Role::Hub] {
        let found = find(role);
        match found.len() {
            0 => continue,
            2 => return Ok((found[0], found[1])),
            k => {
                return Err(Error::usage(format!(
                    "expected 2 vertices with role {}, found {k}",
                    role.token()
                )))
            }
        }
    }
    Err(Error::usage("graph has no boundary pair"))
}
