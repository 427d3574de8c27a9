//! Line-oriented instance and solution files.
//!
//! Instance files:
//!
//! ```text
//! # comment
//! p tf2m <n> <m>
//! e <u> <v> <weight>      weight is `num/den` or an integer; u = v is a self-loop
//! t <a> <b> <c>           optional listed forbidden triangle
//! ```
//!
//! Solution files hold one edge per line, either `e <u> <v>` or `<u> <v>`,
//! with `#` comments. A JSON object with a `"solution": [[u, v], ...]` field
//! (the output of `tf2m solve --format json`) is accepted as well.

use std::fmt::Write as _;
use std::path::Path;

use num_bigint::BigInt;

use crate::error::ParseError;
use crate::graph::{Edge, EdgeSet, VertexId, WeightedGraph};
use crate::rational::Rational;
use crate::triangles::{Triangle, TriangleSet};

/// Which triangles are forbidden when solving.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ForbiddenMode {
    /// Every triangle of the graph (plain triangle-free 2-matching).
    #[default]
    All,
    /// Only the file's `t` lines.
    Listed,
}

/// A parsed instance file.
#[derive(Clone, Debug)]
pub struct Instance {
    pub graph: WeightedGraph,
    /// Triangles from `t` lines, in file order.
    pub listed: Vec<Triangle>,
}

impl Instance {
    pub fn forbidden(&self, mode: ForbiddenMode) -> TriangleSet {
        match mode {
            ForbiddenMode::All => TriangleSet::enumerate(&self.graph),
            // validated at parse time
            ForbiddenMode::Listed => self.listed.iter().copied().collect(),
        }
    }
}

pub fn read_instance(path: impl AsRef<Path>) -> Result<Instance, ParseError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| ParseError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_instance(&text, &path.display().to_string())
}

/// Strict parse; `origin` labels error messages.
pub fn parse_instance(text: &str, origin: &str) -> Result<Instance, ParseError> {
    let syntax = |line: usize, message: String| ParseError::Syntax {
        path: origin.to_string(),
        line,
        message,
    };
    let mut header: Option<(usize, usize, usize)> = None;
    let mut edges: Vec<(Edge, Rational, usize)> = Vec::new();
    let mut seen = std::collections::HashMap::new();
    let mut listed: Vec<(Triangle, usize)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields[0] {
            "p" => {
                if header.is_some() {
                    return Err(syntax(line_no, "duplicate problem line".into()));
                }
                if fields.len() != 4 || fields[1] != "tf2m" {
                    return Err(syntax(line_no, "expected `p tf2m <n> <m>`".into()));
                }
                let n = parse_count(fields[2]).map_err(|m| syntax(line_no, m))?;
                let m = parse_count(fields[3]).map_err(|m| syntax(line_no, m))?;
                header = Some((n, m, line_no));
            }
            "e" => {
                let (n, _, _) = header.ok_or_else(|| syntax(line_no, "edge line before `p` line".into()))?;
                if fields.len() != 4 {
                    return Err(syntax(line_no, "expected `e <u> <v> <weight>`".into()));
                }
                let u = parse_vertex(fields[1], n).map_err(|m| syntax(line_no, m))?;
                let v = parse_vertex(fields[2], n).map_err(|m| syntax(line_no, m))?;
                let w = parse_weight(fields[3]).map_err(|m| syntax(line_no, m))?;
                let e = Edge::new(u, v);
                if let Some(first) = seen.insert(e, line_no) {
                    return Err(syntax(
                        line_no,
                        format!("duplicate edge {u} {v} (first on line {first})"),
                    ));
                }
                edges.push((e, w, line_no));
            }
            "t" => {
                let (n, _, _) = header.ok_or_else(|| syntax(line_no, "triangle line before `p` line".into()))?;
                if fields.len() != 4 {
                    return Err(syntax(line_no, "expected `t <a> <b> <c>`".into()));
                }
                let mut vs = [0; 3];
                for (slot, field) in vs.iter_mut().zip(&fields[1..]) {
                    *slot = parse_vertex(field, n).map_err(|m| syntax(line_no, m))?;
                }
                let t = Triangle::new(vs[0], vs[1], vs[2])
                    .ok_or_else(|| syntax(line_no, "triangle vertices must be distinct".into()))?;
                listed.push((t, line_no));
            }
            other => return Err(syntax(line_no, format!("unknown line type `{other}`"))),
        }
    }

    let (n, m, header_line) = header.ok_or_else(|| ParseError::Invalid {
        path: origin.to_string(),
        message: "missing `p tf2m <n> <m>` line".into(),
    })?;
    if m != edges.len() {
        return Err(syntax(
            header_line,
            format!("header declares {m} edges but {} were given", edges.len()),
        ));
    }
    let graph =
        WeightedGraph::new(n, edges.iter().map(|(e, w, _)| (*e, w.clone()))).map_err(|e| ParseError::Invalid {
            path: origin.to_string(),
            message: e.to_string(),
        })?;
    let mut triangles = Vec::with_capacity(listed.len());
    for (t, line_no) in listed {
        if let Some(e) = t.edges().iter().find(|e| !graph.contains_edge(e)) {
            return Err(syntax(
                line_no,
                format!("triangle {t:?} uses edge {e:?} which is not in the graph"),
            ));
        }
        if triangles.contains(&t) {
            return Err(syntax(line_no, format!("duplicate triangle {t:?}")));
        }
        triangles.push(t);
    }
    Ok(Instance {
        graph,
        listed: triangles,
    })
}

fn parse_count(s: &str) -> Result<usize, String> {
    s.parse().map_err(|_| format!("invalid count `{s}`"))
}

fn parse_vertex(s: &str, n: usize) -> Result<VertexId, String> {
    let v: VertexId = s.parse().map_err(|_| format!("invalid vertex `{s}`"))?;
    if v >= n {
        return Err(format!("vertex {v} out of range 0..{n}"));
    }
    Ok(v)
}

fn parse_weight(s: &str) -> Result<Rational, String> {
    // integers or num/den only; decimals are not part of the format
    let valid = match s.split_once('/') {
        Some((a, b)) => is_int(a) && is_int(b),
        None => is_int(s),
    };
    if !valid {
        return Err(format!("invalid weight `{s}`"));
    }
    let w: Rational = s.parse().map_err(|e| format!("invalid weight `{s}`: {e}"))?;
    if w.is_negative() {
        return Err(format!("negative weight {s}"));
    }
    Ok(w)
}

fn is_int(s: &str) -> bool {
    let digits = s.strip_prefix('-').unwrap_or(s);
    !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
}

fn render_weight(w: &Rational) -> String {
    if w.denom() == &BigInt::from(1) {
        w.numer().to_string()
    } else {
        w.to_string()
    }
}

/// Renders an instance in the file format; `listed` triangles become `t` lines.
pub fn write_instance(graph: &WeightedGraph, listed: &[Triangle], comment: Option<&str>) -> String {
    let mut out = String::new();
    if let Some(c) = comment {
        for line in c.lines() {
            let _ = writeln!(out, "# {line}");
        }
    }
    let _ = writeln!(out, "p tf2m {} {}", graph.vertex_count(), graph.edge_count());
    for (e, w) in graph.iter() {
        let _ = writeln!(out, "e {} {} {}", e.u(), e.v(), render_weight(w));
    }
    for t in listed {
        let [a, b, c] = t.vertices();
        let _ = writeln!(out, "t {a} {b} {c}");
    }
    out
}

pub fn read_solution(path: impl AsRef<Path>) -> Result<EdgeSet, ParseError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| ParseError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_solution(&text, &path.display().to_string())
}

#[derive(serde::Deserialize)]
struct JsonSolution {
    solution: Vec<[VertexId; 2]>,
}

pub fn parse_solution(text: &str, origin: &str) -> Result<EdgeSet, ParseError> {
    if text.trim_start().starts_with('{') {
        let parsed: JsonSolution = serde_json::from_str(text).map_err(|e| ParseError::Invalid {
            path: origin.to_string(),
            message: format!("JSON solution: {e}"),
        })?;
        return Ok(parsed.solution.into_iter().map(Edge::from).collect());
    }
    let mut set = EdgeSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields: Vec<&str> = line.split_whitespace().collect();
        if fields.first() == Some(&"e") {
            fields.remove(0);
        }
        let syntax = |message: String| ParseError::Syntax {
            path: origin.to_string(),
            line: idx + 1,
            message,
        };
        if fields.len() != 2 {
            return Err(syntax("expected `<u> <v>` or `e <u> <v>`".into()));
        }
        let u: VertexId = fields[0]
            .parse()
            .map_err(|_| syntax(format!("invalid vertex `{}`", fields[0])))?;
        let v: VertexId = fields[1]
            .parse()
            .map_err(|_| syntax(format!("invalid vertex `{}`", fields[1])))?;
        if !set.insert(Edge::new(u, v)) {
            return Err(syntax(format!("duplicate edge {u} {v}")));
        }
    }
    Ok(set)
}

/// One `e <u> <v>` line per edge, canonical order.
pub fn write_solution(f: &EdgeSet) -> String {
    let mut out = String::new();
    for e in f {
        let _ = writeln!(out, "e {} {}", e.u(), e.v());
    }
    out
}
