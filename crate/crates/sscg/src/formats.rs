//! Plain-text serialization: an edge-list format with a metadata trailer, and
//! Graphviz DOT output.
//!
//! Edge-list layout:
//!
//! ```text
//! N E model n
//! u v kind          (E lines, kind is I or N, construction order)
//! #meta
//! id role created_at   (N lines)
//! ```

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::graph::{EdgeKind, Graph, Role, VertexMeta};

pub fn write_edge_list<W: Write>(g: &Graph, model: &str, level: u32, mut w: W) -> Result<()> {
    writeln!(
        w,
        "{} {} {} {}",
        g.vertex_count(),
        g.edge_count(),
        model,
        level
    )?;
    for &(u, v, kind) in g.edges() {
        writeln!(w, "{} {} {}", u, v, kind.token())?;
    }
    writeln!(w, "#meta")?;
    for (id, meta) in g.metas().iter().enumerate() {
        writeln!(w, "{} {} {}", id, meta.role.token(), meta.created_at)?;
    }
    Ok(())
}

pub fn read_edge_list<R: BufRead>(r: R) -> Result<(Graph, String, u32)> {
    let mut lines = r.lines().enumerate();
    let parse = |line: usize, msg: &str| Error::Parse {
        line,
        msg: msg.to_string(),
    };

    let (idx, header) = lines.next().ok_or_else(|| parse(1, "empty input"))?;
    let header = header.map_err(Error::Io)?;
    let line_no = idx + 1;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 4 {
        return Err(parse(line_no, "header must be `N E model n`"));
    }
    let n: usize = fields[0]
        .parse()
        .map_err(|_| parse(line_no, "bad vertex count"))?;
    let e: usize = fields[1]
        .parse()
        .map_err(|_| parse(line_no, "bad edge count"))?;
    let model = fields[2].to_string();
    let level: u32 = fields[3].parse().map_err(|_| parse(line_no, "bad level"))?;

    let mut edges = Vec::with_capacity(e);
    let mut meta: Vec<Option<VertexMeta>> = vec![None; n];
    let mut in_meta = false;
    for (idx, line) in lines {
        let line_no = idx + 1;
        let line = line.map_err(Error::Io)?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if line == "#meta" {
            in_meta = true;
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(parse(line_no, "expected three fields"));
        }
        if in_meta {
            let id: usize = fields[0]
                .parse()
                .map_err(|_| parse(line_no, "bad vertex id"))?;
            if id >= n {
                return Err(parse(line_no, "vertex id out of range"));
            }
            let role = Role::from_token(fields[1]).ok_or_else(|| parse(line_no, "unknown role"))?;
            let created_at: u32 = fields[2]
                .parse()
                .map_err(|_| parse(line_no, "bad created_at"))?;
            if meta[id].is_some() {
                return Err(parse(line_no, "duplicate metadata row"));
            }
            meta[id] = Some(VertexMeta { role, created_at });
        } else {
            let u: u32 = fields[0]
                .parse()
                .map_err(|_| parse(line_no, "bad endpoint"))?;
            let v: u32 = fields[1]
                .parse()
                .map_err(|_| parse(line_no, "bad endpoint"))?;
            let kind = EdgeKind::from_token(fields[2])
                .ok_or_else(|| parse(line_no, "edge kind must be I or N"))?;
            edges.push((u, v, kind));
        }
    }
    if edges.len() != e {
        return Err(Error::usage(format!(
            "header declares {e} edges but {} were given",
            edges.len()
        )));
    }
    let meta: Vec<VertexMeta> = meta
        .into_iter()
        .enumerate()
        .map(|(id, m)| m.ok_or_else(|| Error::usage(format!("missing metadata for vertex {id}"))))
        .collect::<Result<_>>()?;
    let graph = Graph::new(n, edges, meta)?;
    Ok((graph, model, level))
}

/// DOT output: iterative edges solid, non-iterative dashed; vertex labels
/// carry role and creation round.
pub fn write_dot<W: Write>(g: &Graph, name: &str, mut w: W) -> Result<()> {
    writeln!(w, "graph {name} {{")?;
    writeln!(w, "  node [shape=circle];")?;
    for (id, meta) in g.metas().iter().enumerate() {
        writeln!(
            w,
            "  {id} [label=\"{id}\\n{}:{}\"];",
            meta.role.token(),
            meta.created_at
        )?;
    }
    for &(u, v, kind) in g.edges() {
        let style = match kind {
            EdgeKind::Iterative => "solid",
            EdgeKind::NonIterative => "dashed",
        };
        writeln!(w, "  {u} -- {v} [style={style}];")?;
    }
    writeln!(w, "}}")?;
    Ok(())
}

pub fn graph_json(g: &Graph, model: &str, level: u32) -> serde_json::Value {
    let vertices: Vec<serde_json::Value> = g
        .metas()
        .iter()
        .enumerate()
        .map(|(id, meta)| {
            serde_json::json!({
                "id": id,
                "role": meta.role.token(),
                "created_at": meta.created_at,
            })
        })
        .collect();
    let edges: Vec<serde_json::Value> = g
        .edges()
        .iter()
        .map(|&(u, v, kind)| serde_json::json!([u, v, kind.token()]))
        .collect();
    serde_json::json!({
        "model": model,
        "level": level,
        "vertices": vertices,
        "edges": edges,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Role;
    use std::io::BufReader;

    fn sample() -> Graph {
        Graph::new(
            4,
            vec![
                (0, 2, EdgeKind::Iterative),
                (2, 1, EdgeKind::Iterative),
                (0, 3, EdgeKind::Iterative),
                (3, 1, EdgeKind::Iterative),
                (2, 3, EdgeKind::NonIterative),
            ],
            vec![
                VertexMeta {
                    role: Role::Initial,
                    created_at: 0,
                },
                VertexMeta {
                    role: Role::Initial,
                    created_at: 0,
                },
                VertexMeta {
                    role: Role::Hub,
                    created_at: 0,
                },
                VertexMeta {
                    role: Role::Hub,
                    created_at: 0,
                },
            ],
        )
        .unwrap()
    }

    #[test]
    fn edge_list_round_trip() {
        let g = sample();
        let mut buf = Vec::new();
        write_edge_list(&g, "fractal", 1, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("4 5 fractal 1\n"));
        assert!(text.contains("#meta"));

        let (back, model, level) = read_edge_list(BufReader::new(&buf[..])).unwrap();
        assert_eq!(model, "fractal");
        assert_eq!(level, 1);
        assert_eq!(back.vertex_count(), g.vertex_count());
        assert_eq!(back.edges(), g.edges());
        assert_eq!(back.metas(), g.metas());
    }

    #[test]
    fn header_of_seed_graph() {
        let g = Graph::new(
            2,
            vec![(0, 1, EdgeKind::Iterative)],
            vec![
                VertexMeta {
                    role: Role::Hub,
                    created_at: 0,
                },
                VertexMeta {
                    role: Role::Hub,
                    created_at: 0,
                },
            ],
        )
        .unwrap();
        let mut buf = Vec::new();
        write_edge_list(&g, "nonfractal", 0, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().next().unwrap(), "2 1 nonfractal 0");
    }

    #[test]
    fn read_rejects_malformed_input() {
        let cases: &[&str] = &[
            "",
            "4 5 fractal\n",
            "2 1 m 0\n0 1 Q\n#meta\n0 hub 0\n1 hub 0\n",
            "2 1 m 0\n0 1 I\n#meta\n0 boss 0\n1 hub 0\n",
            "2 2 m 0\n0 1 I\n#meta\n0 hub 0\n1 hub 0\n",
            "2 1 m 0\n0 1 I\n#meta\n0 hub 0\n",
        ];
        for case in cases {
            let got = read_edge_list(BufReader::new(case.as_bytes()));
            assert!(got.is_err(), "accepted malformed input {case:?}");
        }
    }

    #[test]
    fn dot_styles_follow_edge_kind() {
        let g = sample();
        let mut buf = Vec::new();
        write_dot(&g, "g1", &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.matches("style=solid").count(), 4);
        assert_eq!(text.matches("style=dashed").count(), 1);
        assert!(text.contains("graph g1 {"));
    }
}
