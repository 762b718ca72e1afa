//! Weighted mixed graphs, stored as digraphs.
//!
//! An undirected edge `u -- v` becomes the two arcs `u -> v` and `v -> u`
//! with the same weight, so everything downstream only sees arcs.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use num::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::blocks::BlockDecomposition;
use crate::linalg::{format_rational, int, parse_rational, RMatrix, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid graph json: {0}")]
    Json(String),
    #[error("self-arc at vertex {0:?}")]
    SelfArc(String),
    #[error("duplicate arc {0:?} -> {1:?}")]
    DuplicateArc(String, String),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("graph has no vertices")]
    Empty,
    #[error("graph is not strongly connected")]
    NotStronglyConnected,
    #[error(
        "arc {0:?} -> {1:?} has non-positive weight; shortest-path distances need positive weights"
    )]
    NonPositiveWeight(String, String),
    #[error("matrix labels do not match the graph's vertices")]
    LabelMismatch,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arc {
    pub from: usize,
    pub to: usize,
    pub weight: Rational,
}

/// A weighted digraph with named vertices.
///
/// Arc weights are arbitrary rationals at this level. Shortest-path
/// distances ([`distance_matrix`]) additionally require every weight to be
/// strictly positive; signed weights are only meaningful through the
/// block-assembled generalized distance matrix.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Graph {
    names: Vec<String>,
    index: HashMap<String, usize>,
    arcs: Vec<Arc>,
    arc_index: HashMap<(usize, usize), usize>,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a vertex if absent and returns its index.
    pub fn add_vertex(&mut self, name: &str) -> usize {
        if let Some(&i) = self.index.get(name) {
            return i;
        }
        let i = self.names.len();
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), i);
        i
    }

    pub fn add_arc(&mut self, from: &str, to: &str, weight: Rational) -> Result<(), GraphError> {
        if from == to {
            return Err(GraphError::SelfArc(from.to_string()));
        }
        let u = self.add_vertex(from);
        let v = self.add_vertex(to);
        if self.arc_index.contains_key(&(u, v)) {
            return Err(GraphError::DuplicateArc(from.to_string(), to.to_string()));
        }
        self.arc_index.insert((u, v), self.arcs.len());
        self.arcs.push(Arc {
            from: u,
            to: v,
            weight,
        });
        Ok(())
    }

    /// Undirected edge: two opposite arcs of equal weight.
    pub fn add_edge(&mut self, a: &str, b: &str, weight: Rational) -> Result<(), GraphError> {
        self.add_arc(a, b, weight.clone())?;
        self.add_arc(b, a, weight)
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn weight(&self, from: usize, to: usize) -> Option<&Rational> {
        self.arc_index
            .get(&(from, to))
            .map(|&k| &self.arcs[k].weight)
    }

    pub fn has_positive_weights(&self) -> bool {
        self.arcs.iter().all(|a| a.weight.is_positive())
    }

    /// Out-neighbours of every vertex, restricted to `keep`.
    fn adjacency(&self, keep: &[bool], reverse: bool) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count()];
        for a in &self.arcs {
            if keep[a.from] && keep[a.to] {
                let (s, t) = if reverse {
                    (a.to, a.from)
                } else {
                    (a.from, a.to)
                };
                adj[s].push(t);
            }
        }
        adj
    }

    /// Strong connectivity of the sub-digraph induced by `keep`.
    pub(crate) fn strongly_connected_on(&self, keep: &[bool]) -> bool {
        let Some(start) = keep.iter().position(|&k| k) else {
            return true;
        };
        let total = keep.iter().filter(|&&k| k).count();
        [false, true].into_iter().all(|rev| {
            let adj = self.adjacency(keep, rev);
            reach(&adj, start).iter().filter(|&&r| r).count() == total
        })
    }

    /// Components of the underlying undirected graph induced by `keep`;
    /// `None` for vertices outside `keep`.
    pub(crate) fn weak_components_on(&self, keep: &[bool]) -> (Vec<Option<usize>>, usize) {
        let n = self.vertex_count();
        let mut adj = vec![Vec::new(); n];
        for a in &self.arcs {
            if keep[a.from] && keep[a.to] {
                adj[a.from].push(a.to);
                adj[a.to].push(a.from);
            }
        }
        let mut comp = vec![None; n];
        let mut count = 0;
        for s in 0..n {
            if !keep[s] || comp[s].is_some() {
                continue;
            }
            comp[s] = Some(count);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &v in &adj[u] {
                    if comp[v].is_none() {
                        comp[v] = Some(count);
                        queue.push_back(v);
                    }
                }
            }
            count += 1;
        }
        (comp, count)
    }

    /// Parses the edge-list format.
    ///
    /// ```text
    /// # comment
    /// a -> b 3/2     arc with weight 3/2
    /// b -- c         undirected edge, weight 1
    /// d              isolated vertex declaration
    /// ```
    pub fn parse_edge_list(text: &str) -> Result<Self, GraphError> {
        let mut g = Graph::new();
        for (k, raw) in text.lines().enumerate() {
            let line_no = k + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let parse_err = |message: String| GraphError::Parse {
                line: line_no,
                message,
            };
            let tokens: Vec<&str> = line.split_whitespace().collect();
            match tokens.as_slice() {
                [v] => {
                    check_name(v).map_err(parse_err)?;
                    g.add_vertex(v);
                }
                [u, op, v, rest @ ..] if *op == "->" || *op == "--" => {
                    check_name(u).map_err(parse_err)?;
                    check_name(v).map_err(parse_err)?;
                    let weight = match rest {
                        [] => int(1),
                        [w] => parse_rational(w).map_err(|e| parse_err(e.to_string()))?,
                        _ => return Err(parse_err(format!("trailing tokens in {line:?}"))),
                    };
                    let added = if *op == "->" {
                        g.add_arc(u, v, weight)
                    } else {
                        g.add_edge(u, v, weight)
                    };
                    added.map_err(|e| parse_err(e.to_string()))?;
                }
                _ => return Err(parse_err(format!("cannot parse {line:?}"))),
            }
        }
        Ok(g)
    }

    /// Emits the edge-list format. Opposite arc pairs of equal weight are
    /// written as one undirected edge; weights of one are omitted.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        let mut touched = vec![false; self.vertex_count()];
        let mut written = vec![false; self.arcs.len()];
        for a in &self.arcs {
            touched[a.from] = true;
            touched[a.to] = true;
        }
        for v in (0..self.vertex_count()).filter(|&v| !touched[v]) {
            writeln!(out, "{}", self.names[v]).unwrap();
        }
        for (k, a) in self.arcs.iter().enumerate() {
            if written[k] {
                continue;
            }
            written[k] = true;
            let back = self.arc_index.get(&(a.to, a.from)).copied();
            let op = match back {
                Some(b) if !written[b] && self.arcs[b].weight == a.weight => {
                    written[b] = true;
                    "--"
                }
                _ => "->",
            };
            let (u, v) = (&self.names[a.from], &self.names[a.to]);
            if a.weight == int(1) {
                writeln!(out, "{u} {op} {v}").unwrap();
            } else {
                writeln!(out, "{u} {op} {v} {}", format_rational(&a.weight)).unwrap();
            }
        }
        out
    }

    pub fn from_json(text: &str) -> Result<Self, GraphError> {
        let raw: GraphJson =
            serde_json::from_str(text).map_err(|e| GraphError::Json(e.to_string()))?;
        let mut g = Graph::new();
        for v in &raw.vertices {
            g.add_vertex(v);
        }
        for a in &raw.arcs {
            for end in [&a.from, &a.to] {
                if g.vertex_index(end).is_none() {
                    return Err(GraphError::UnknownVertex(end.clone()));
                }
            }
            let w = match &a.weight {
                None => int(1),
                Some(s) => parse_rational(s).map_err(|e| GraphError::Json(e.to_string()))?,
            };
            g.add_arc(&a.from, &a.to, w)?;
        }
        Ok(g)
    }

    pub fn to_json(&self) -> String {
        let raw = GraphJson {
            vertices: self.names.clone(),
            arcs: self
                .arcs
                .iter()
                .map(|a| ArcJson {
                    from: self.names[a.from].clone(),
                    to: self.names[a.to].clone(),
                    weight: Some(format_rational(&a.weight)),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&raw).expect("graph json")
    }

    /// JSON when the text looks like a JSON object, edge list otherwise.
    pub fn parse(text: &str) -> Result<Self, GraphError> {
        if text.trim_start().starts_with('{') {
            Self::from_json(text)
        } else {
            Self::parse_edge_list(text)
        }
    }
}

fn check_name(name: &str) -> Result<(), String> {
    if name == "->" || name == "--" {
        Err(format!("{name:?} is not a vertex name"))
    } else {
        Ok(())
    }
}

fn reach(adj: &[Vec<usize>], start: usize) -> Vec<bool> {
    let mut seen = vec![false; adj.len()];
    seen[start] = true;
    let mut stack = vec![start];
    while let Some(u) = stack.pop() {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    seen
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    vertices: Vec<String>,
    arcs: Vec<ArcJson>,
}

#[derive(Serialize, Deserialize)]
struct ArcJson {
    from: String,
    to: String,
    #[serde(default)]
    weight: Option<String>,
}

/// True iff every ordered vertex pair is joined by a directed path.
pub fn is_distance_well_defined(g: &Graph) -> bool {
    g.strongly_connected_on(&vec![true; g.vertex_count()])
}

/// All-pairs shortest-path distances by Floyd-Warshall relaxation over the
/// rationals. Rows and columns are labeled by the graph's vertex order.
pub fn distance_matrix(g: &Graph) -> Result<RMatrix, GraphError> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(GraphError::Empty);
    }
    if let Some(a) = g.arcs.iter().find(|a| !a.weight.is_positive()) {
        return Err(GraphError::NonPositiveWeight(
            g.names[a.from].clone(),
            g.names[a.to].clone(),
        ));
    }
    if !is_distance_well_defined(g) {
        return Err(GraphError::NotStronglyConnected);
    }

    let mut dist: Vec<Vec<Option<Rational>>> = vec![vec![None; n]; n];
    for (u, row) in dist.iter_mut().enumerate() {
        row[u] = Some(Rational::zero());
    }
    for a in &g.arcs {
        dist[a.from][a.to] = Some(a.weight.clone());
    }
    for k in 0..n {
        let through = dist[k].clone();
        for row in dist.iter_mut() {
            let Some(ik) = row[k].clone() else {
                continue;
            };
            for (cell, kj) in row.iter_mut().zip(&through) {
                let Some(kj) = kj else {
                    continue;
                };
                let via = &ik + kj;
                if cell.as_ref().is_none_or(|cur| via < *cur) {
                    *cell = Some(via);
                }
            }
        }
    }

    RMatrix::from_fn(n, n, |i, j| dist[i][j].clone().expect("strongly connected"))
        .with_labels(g.names.clone())
        .map_err(|_| GraphError::LabelMismatch)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// `D_uu != 0`.
    NonzeroDiagonal {
        vertex: String,
        #[serde(with = "crate::linalg::rational::serde_rational")]
        value: Rational,
    },
    /// `D_uv != D_ux + D_xv` for `u`, `v` separated by cut vertex `x`.
    CutAdditivity {
        u: String,
        v: String,
        cut: String,
        #[serde(with = "crate::linalg::rational::serde_rational")]
        found: Rational,
        #[serde(with = "crate::linalg::rational::serde_rational")]
        expected: Rational,
    },
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the two defining conditions of a generalized distance matrix:
/// zero diagonal, and additivity `D_uv = D_ux + D_xv` whenever `u` and `v`
/// lie in different components of `G - x` for a cut vertex `x`.
pub fn validate_generalized_distance_matrix(
    g: &Graph,
    d: &RMatrix,
    dec: &BlockDecomposition,
) -> Result<ValidationReport, GraphError> {
    let n = g.vertex_count();
    if !d.is_square() || d.order() != n {
        return Err(GraphError::LabelMismatch);
    }
    if let Some(labels) = d.labels() {
        if labels != g.names() {
            return Err(GraphError::LabelMismatch);
        }
    }
    if dec.vertex_names() != g.names() {
        return Err(GraphError::LabelMismatch);
    }

    let mut report = ValidationReport::default();
    for u in 0..n {
        if !d[(u, u)].is_zero() {
            report.violations.push(Violation::NonzeroDiagonal {
                vertex: g.names[u].clone(),
                value: d[(u, u)].clone(),
            });
        }
    }
    for &x in dec.cut_vertices() {
        let mut keep = vec![true; n];
        keep[x] = false;
        let (comp, _) = g.weak_components_on(&keep);
        for u in 0..n {
            for v in 0..n {
                match (comp[u], comp[v]) {
                    (Some(cu), Some(cv)) if cu != cv => {
                        let expected = &d[(u, x)] + &d[(x, v)];
                        if d[(u, v)] != expected {
                            report.violations.push(Violation::CutAdditivity {
                                u: g.names[u].clone(),
                                v: g.names[v].clone(),
                                cut: g.names[x].clone(),
                                found: d[(u, v)].clone(),
                                expected,
                            });
                        }
                    }
                    _ => {}
                }
            }
        }
    }
    Ok(report)
}
