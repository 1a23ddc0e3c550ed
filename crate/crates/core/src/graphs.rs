//! Directed multigraphs: the rotationally homogeneous graphs built from height
//! data, their cyclic companion graphs, the one-vertex Dyck graphs and the
//! Fibonacci graph.
//!
//! Vertex and edge labels are structured values. A rotational graph of data
//! `(N_1, …, N_{H+1})` has vertices `V(n_1, …, n_h)` for `0 <= h <= H` with
//! `1 <= n_j <= N_j`, tree edges `f(n_1, …, n_h)` from `V(n_1, …, n_{h-1})` to
//! `V(n_1, …, n_h)`, and return edges `e(n_1, …, n_{H+1})` from the leaf
//! `V(n_1, …, n_H)` back to the root `V()`.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub type VertexId = usize;
pub type EdgeId = usize;

/// The tuple `(N_1, …, N_{H+1})` of tree multiplicities.
///
/// Every entry is at least 1 and the last one is at least 2.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HeightData {
    counts: Vec<u32>,
}

impl HeightData {
    pub fn new(counts: Vec<u32>) -> Result<Self> {
        let Some(&last) = counts.last() else {
            return Err(Error::InvalidData("at least one entry is required".into()));
        };
        if let Some(pos) = counts.iter().position(|&n| n == 0) {
            return Err(Error::InvalidData(format!("entry {} is zero", pos + 1)));
        }
        if last < 2 {
            return Err(Error::InvalidData(format!(
                "last entry must be at least 2, got {last}"
            )));
        }
        Ok(Self { counts })
    }

    /// The counts, `N_1` first.
    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    /// `H`, one less than the number of entries.
    pub fn height(&self) -> usize {
        self.counts.len() - 1
    }

    /// Number of companion vertices, `H + 1`.
    pub fn levels(&self) -> usize {
        self.counts.len()
    }

    /// `N_h` with one-based `h`.
    pub fn count(&self, h: usize) -> u32 {
        self.counts[h - 1]
    }

    pub fn sigma(&self) -> BigInt {
        self.counts.iter().map(|&n| BigInt::from(n)).sum()
    }

    pub fn pi(&self) -> BigInt {
        self.counts.iter().map(|&n| BigInt::from(n)).product()
    }

    /// Number of vertices of height `h` in the rotational graph: `N_1 ⋯ N_h`.
    pub fn vertices_at_height(&self, h: usize) -> BigUint {
        self.counts[..h].iter().map(|&n| BigUint::from(n)).product()
    }

    /// The data concatenated with itself `copies` times.
    pub fn repeated(&self, copies: usize) -> Result<Self> {
        if copies == 0 {
            return Err(Error::InvalidData("repetition count must be positive".into()));
        }
        Ok(Self {
            counts: self.counts.repeat(copies),
        })
    }

    /// `Some(N)` when every entry equals `N`.
    pub fn constant_value(&self) -> Option<u32> {
        let first = self.counts[0];
        self.counts.iter().all(|&n| n == first).then_some(first)
    }
}

impl fmt::Display for HeightData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, n) in self.counts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{n}")?;
        }
        Ok(())
    }
}

impl FromStr for HeightData {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let counts = s
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("`{part}` is not a positive integer")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(counts)
    }
}

impl Serialize for HeightData {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.counts.serialize(serializer)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum VertexLabel {
    /// `V(n_1, …, n_h)`; the empty path is the root.
    Tree { path: Vec<u32> },
    /// Companion vertex `1..=H+1`.
    Companion { level: usize },
    Fibonacci { index: u8 },
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexLabel::Tree { path } if path.is_empty() => f.write_str("V(0)"),
            VertexLabel::Tree { path } => write!(f, "V({})", join(path)),
            VertexLabel::Companion { level } => write!(f, "{level}"),
            VertexLabel::Fibonacci { index } => write!(f, "V{index}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EdgeLabel {
    /// `f(n_1, …, n_h)`, pointing away from the root.
    Tree { path: Vec<u32> },
    /// `e(n_1, …, n_{H+1})`, from a leaf back to the root.
    Return { path: Vec<u32> },
    /// Companion edge `c⁻_level(index)` from `level - 1` to `level` (cyclically).
    CompanionDescent { level: usize, index: u32 },
    /// Companion edge `c⁺_level` from `level` to `level - 1` (cyclically).
    CompanionAscent { level: usize },
    Fibonacci { from: u8, to: u8 },
}

impl fmt::Display for EdgeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeLabel::Tree { path } => write!(f, "f({})", join(path)),
            EdgeLabel::Return { path } => write!(f, "e({})", join(path)),
            EdgeLabel::CompanionDescent { level, index } => write!(f, "c-{level}({index})"),
            EdgeLabel::CompanionAscent { level } => write!(f, "c+{level}"),
            EdgeLabel::Fibonacci { from, to } => write!(f, "e{from}{to}"),
        }
    }
}

impl FromStr for EdgeLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("`{s}` is not an edge label"));
        let parse_path = |inner: &str| -> Result<Vec<u32>> {
            inner
                .split(',')
                .map(|p| p.trim().parse::<u32>().map_err(|_| bad()))
                .collect()
        };
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("f(").and_then(|r| r.strip_suffix(')')) {
            return Ok(EdgeLabel::Tree {
                path: parse_path(rest)?,
            });
        }
        if let Some(rest) = s.strip_prefix("e(").and_then(|r| r.strip_suffix(')')) {
            return Ok(EdgeLabel::Return {
                path: parse_path(rest)?,
            });
        }
        if let Some(rest) = s.strip_prefix("c-") {
            let (level, index) = rest
                .strip_suffix(')')
                .and_then(|r| r.split_once('('))
                .ok_or_else(bad)?;
            return Ok(EdgeLabel::CompanionDescent {
                level: level.parse().map_err(|_| bad())?,
                index: index.parse().map_err(|_| bad())?,
            });
        }
        if let Some(rest) = s.strip_prefix("c+") {
            return Ok(EdgeLabel::CompanionAscent {
                level: rest.parse().map_err(|_| bad())?,
            });
        }
        if let Some(rest) = s.strip_prefix('e') {
            let digits: Vec<u8> = rest
                .chars()
                .map(|c| c.to_digit(10).map(|d| d as u8))
                .collect::<Option<_>>()
                .ok_or_else(bad)?;
            if let [from, to] = digits[..] {
                return Ok(EdgeLabel::Fibonacci { from, to });
            }
        }
        Err(bad())
    }
}

fn join(path: &[u32]) -> String {
    path.iter()
        .map(u32::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub label: EdgeLabel,
    pub source: VertexId,
    pub target: VertexId,
}

/// Identity of a built graph, used to reject mixing elements of different
/// graph inverse semigroups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GraphId(u64);

static NEXT_GRAPH_ID: AtomicU64 = AtomicU64::new(1);

/// A finite directed multigraph with labelled vertices and edges.
#[derive(Debug, Clone)]
pub struct Graph {
    id: GraphId,
    vertices: Vec<VertexLabel>,
    edges: Vec<Edge>,
    out_edges: Vec<Vec<EdgeId>>,
    in_edges: Vec<Vec<EdgeId>>,
    vertex_index: HashMap<VertexLabel, VertexId>,
    edge_index: HashMap<EdgeLabel, EdgeId>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl Graph {
    /// Assembles a graph, checking that every endpoint is a declared vertex
    /// and that labels are unique.
    pub fn from_parts(vertices: Vec<VertexLabel>, edges: Vec<Edge>) -> Result<Self> {
        let mut vertex_index = HashMap::with_capacity(vertices.len());
        for (id, label) in vertices.iter().enumerate() {
            if vertex_index.insert(label.clone(), id).is_some() {
                return Err(Error::InvalidData(format!("duplicate vertex {label}")));
            }
        }
        let mut out_edges = vec![Vec::new(); vertices.len()];
        let mut in_edges = vec![Vec::new(); vertices.len()];
        let mut edge_index = HashMap::with_capacity(edges.len());
        for (id, edge) in edges.iter().enumerate() {
            if edge.source >= vertices.len() || edge.target >= vertices.len() {
                return Err(Error::InvalidData(format!(
                    "edge {} has an undeclared endpoint",
                    edge.label
                )));
            }
            if edge_index.insert(edge.label.clone(), id).is_some() {
                return Err(Error::InvalidData(format!("duplicate edge {}", edge.label)));
            }
            out_edges[edge.source].push(id);
            in_edges[edge.target].push(id);
        }
        Ok(Self {
            id: GraphId(NEXT_GRAPH_ID.fetch_add(1, Ordering::Relaxed)),
            vertices,
            edges,
            out_edges,
            in_edges,
            vertex_index,
            edge_index,
        })
    }

    pub fn id(&self) -> GraphId {
        self.id
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[VertexLabel] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e]
    }

    pub fn source(&self, e: EdgeId) -> VertexId {
        self.edges[e].source
    }

    pub fn target(&self, e: EdgeId) -> VertexId {
        self.edges[e].target
    }

    pub fn out_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.out_edges[v]
    }

    pub fn in_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.in_edges[v]
    }

    pub fn vertex_by_label(&self, label: &VertexLabel) -> Option<VertexId> {
        self.vertex_index.get(label).copied()
    }

    pub fn edge_by_label(&self, label: &EdgeLabel) -> Option<EdgeId> {
        self.edge_index.get(label).copied()
    }

    /// Looks up an edge from its textual label, e.g. `f(1,2)` or `c-2(1)`.
    pub fn parse_edge(&self, text: &str) -> Result<EdgeId> {
        let label: EdgeLabel = text.parse()?;
        self.edge_by_label(&label)
            .ok_or_else(|| Error::UnknownEdge(text.to_string()))
    }

    /// Alphabet size of the associated Markov-Dyck shift.
    pub fn alphabet_size(&self) -> usize {
        2 * self.edges.len()
    }

    pub fn is_strongly_connected(&self) -> bool {
        if self.vertices.is_empty() {
            return false;
        }
        let forward = self.reachable(0, |v| {
            self.out_edges[v].iter().map(|&e| self.edges[e].target)
        });
        let backward = self.reachable(0, |v| {
            self.in_edges[v].iter().map(|&e| self.edges[e].source)
        });
        forward.iter().all(|&b| b) && backward.iter().all(|&b| b)
    }

    fn reachable<'a, I, F>(&'a self, start: VertexId, next: F) -> Vec<bool>
    where
        I: Iterator<Item = VertexId> + 'a,
        F: Fn(VertexId) -> I,
    {
        let mut seen = vec![false; self.vertices.len()];
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(v) = queue.pop_front() {
            for w in next(v) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    /// Edge-count matrix, rows indexed by source.
    pub fn adjacency_matrix(&self) -> AdjacencyMatrix {
        let n = self.vertices.len();
        let mut entries = vec![vec![BigInt::zero(); n]; n];
        for edge in &self.edges {
            entries[edge.source][edge.target] += 1;
        }
        AdjacencyMatrix { entries }
    }

    /// DOT rendering, one line per edge labelled with the edge id.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph G {\n");
        for edge in &self.edges {
            out.push_str(&format!(
                "  \"{}\" -> \"{}\" [label=\"{}\"];\n",
                self.vertices[edge.source], self.vertices[edge.target], edge.label
            ));
        }
        out.push_str("}\n");
        out
    }

    pub fn export(&self) -> GraphExport {
        GraphExport {
            vertices: self
                .vertices
                .iter()
                .enumerate()
                .map(|(id, label)| VertexExport {
                    id,
                    name: label.to_string(),
                    label: label.clone(),
                })
                .collect(),
            edges: self
                .edges
                .iter()
                .enumerate()
                .map(|(id, edge)| EdgeExport {
                    id,
                    name: edge.label.to_string(),
                    label: edge.label.clone(),
                    source: edge.source,
                    target: edge.target,
                })
                .collect(),
        }
    }
}

/// JSON shape of an exported graph.
#[derive(Debug, Clone, Serialize)]
pub struct GraphExport {
    pub vertices: Vec<VertexExport>,
    pub edges: Vec<EdgeExport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VertexExport {
    pub id: VertexId,
    pub name: String,
    pub label: VertexLabel,
}

#[derive(Debug, Clone, Serialize)]
pub struct EdgeExport {
    pub id: EdgeId,
    pub name: String,
    pub label: EdgeLabel,
    pub source: VertexId,
    pub target: VertexId,
}

/// Square matrix of non-negative integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjacencyMatrix {
    entries: Vec<Vec<BigInt>>,
}

impl AdjacencyMatrix {
    pub fn new(entries: Vec<Vec<BigInt>>) -> Result<Self> {
        let n = entries.len();
        if entries.iter().any(|row| row.len() != n) {
            return Err(Error::NotSquare);
        }
        if entries.iter().flatten().any(|x| x < &BigInt::zero()) {
            return Err(Error::InvalidData("negative matrix entry".into()));
        }
        Ok(Self { entries })
    }

    pub fn from_u64(rows: &[&[u64]]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.entries
    }

    pub fn row_sums(&self) -> Vec<BigInt> {
        self.entries.iter().map(|row| row.iter().sum()).collect()
    }

    /// Irreducible means the support digraph is strongly connected.
    pub fn is_irreducible(&self) -> bool {
        let n = self.dim();
        if n == 0 {
            return false;
        }
        let reach = |forward: bool| {
            let mut seen = vec![false; n];
            let mut stack = vec![0];
            seen[0] = true;
            while let Some(i) = stack.pop() {
                for (j, seen_j) in seen.iter_mut().enumerate() {
                    let entry = if forward {
                        &self.entries[i][j]
                    } else {
                        &self.entries[j][i]
                    };
                    if !*seen_j && !entry.is_zero() {
                        *seen_j = true;
                        stack.push(j);
                    }
                }
            }
            seen.into_iter().all(|b| b)
        };
        reach(true) && reach(false)
    }

    pub fn mul(&self, other: &AdjacencyMatrix) -> AdjacencyMatrix {
        let n = self.dim();
        let mut entries = vec![vec![BigInt::zero(); n]; n];
        for (i, row) in entries.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = (0..n)
                    .map(|k| &self.entries[i][k] * &other.entries[k][j])
                    .sum();
            }
        }
        AdjacencyMatrix { entries }
    }

    pub fn trace(&self) -> BigInt {
        (0..self.dim()).map(|i| self.entries[i][i].clone()).sum()
    }

    pub fn identity(n: usize) -> AdjacencyMatrix {
        let mut entries = vec![vec![BigInt::zero(); n]; n];
        for (i, row) in entries.iter_mut().enumerate() {
            row[i] = BigInt::one();
        }
        AdjacencyMatrix { entries }
    }
}

impl Serialize for AdjacencyMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = self
            .entries
            .iter()
            .map(|row| row.iter().map(BigInt::to_string).collect())
            .collect();
        rows.serialize(serializer)
    }
}

/// Builds the rotationally homogeneous graph of `data`. Height zero gives the
/// one-vertex graph with `N_1` loops.
pub fn build_rotational(data: &HeightData) -> Graph {
    let height = data.height();
    let mut vertices = vec![VertexLabel::Tree { path: Vec::new() }];
    let mut edges = Vec::new();
    // (vertex id, path) of the current level
    let mut level: Vec<(VertexId, Vec<u32>)> = vec![(0, Vec::new())];
    for h in 1..=height {
        let mut next = Vec::with_capacity(level.len() * data.count(h) as usize);
        for (parent, path) in &level {
            for n in 1..=data.count(h) {
                let mut child = path.clone();
                child.push(n);
                let id = vertices.len();
                vertices.push(VertexLabel::Tree {
                    path: child.clone(),
                });
                edges.push(Edge {
                    label: EdgeLabel::Tree {
                        path: child.clone(),
                    },
                    source: *parent,
                    target: id,
                });
                next.push((id, child));
            }
        }
        level = next;
    }
    for (leaf, path) in &level {
        for n in 1..=data.count(height + 1) {
            let mut full = path.clone();
            full.push(n);
            edges.push(Edge {
                label: EdgeLabel::Return { path: full },
                source: *leaf,
                target: 0,
            });
        }
    }
    Graph::from_parts(vertices, edges).expect("rotational construction is well formed")
}

/// One-vertex graph with `n >= 2` loops.
pub fn dyck_graph(n: u32) -> Result<Graph> {
    Ok(build_rotational(&HeightData::new(vec![n])?))
}

/// Builds the companion graph on vertices `1..=H+1` together with its
/// adjacency matrix.
///
/// `c⁻_h(n)` runs from `h - 1` to `h` for `1 <= n <= N_h` (vertex `0` read as
/// `H + 1`) and `c⁺_h` runs from `h` back to `h - 1`.
pub fn build_companion(data: &HeightData) -> (Graph, AdjacencyMatrix) {
    let levels = data.levels();
    let vertices = (1..=levels)
        .map(|level| VertexLabel::Companion { level })
        .collect();
    // companion level h lives at vertex index h - 1
    let below = |level: usize| if level == 1 { levels - 1 } else { level - 2 };
    let mut edges = Vec::new();
    for level in 1..=levels {
        for index in 1..=data.count(level) {
            edges.push(Edge {
                label: EdgeLabel::CompanionDescent { level, index },
                source: below(level),
                target: level - 1,
            });
        }
        edges.push(Edge {
            label: EdgeLabel::CompanionAscent { level },
            source: level - 1,
            target: below(level),
        });
    }
    let graph = Graph::from_parts(vertices, edges).expect("companion construction is well formed");
    let matrix = graph.adjacency_matrix();
    (graph, matrix)
}

/// The Fibonacci graph: vertices `V1`, `V2`; edges `e12: V1 → V2`,
/// `e21: V2 → V1`, `e11: V1 → V1`.
pub fn fibonacci_graph() -> Graph {
    let vertices = vec![
        VertexLabel::Fibonacci { index: 1 },
        VertexLabel::Fibonacci { index: 2 },
    ];
    let edge = |from: u8, to: u8| Edge {
        label: EdgeLabel::Fibonacci { from, to },
        source: usize::from(from - 1),
        target: usize::from(to - 1),
    };
    let edges = vec![edge(1, 2), edge(2, 1), edge(1, 1)];
    Graph::from_parts(vertices, edges).expect("fibonacci graph is well formed")
}

/// Outcome of [`check_rotational_homogeneity`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Homogeneity {
    pub homogeneous: bool,
    pub data: Option<HeightData>,
}

impl Homogeneity {
    fn rejected() -> Self {
        Self {
            homogeneous: false,
            data: None,
        }
    }
}

/// Tests whether `graph` is rotationally homogeneous and, if so, recovers its
/// height data.
///
/// The tree part consists of the edges that are the only incoming edge of
/// their target. It has to be a rooted tree reaching every vertex, with all
/// leaves at one height, a uniform out-degree per height, every other edge
/// leaving a leaf, and a common leaf out-degree of at least 2.
pub fn check_rotational_homogeneity(graph: &Graph) -> Homogeneity {
    let n = graph.vertex_count();
    if n == 0 || !graph.is_strongly_connected() {
        return Homogeneity::rejected();
    }
    let is_tree_edge: Vec<bool> = graph
        .edges()
        .iter()
        .map(|edge| graph.in_edges(edge.target).len() == 1)
        .collect();
    let roots: Vec<VertexId> = (0..n)
        .filter(|&v| !graph.in_edges(v).iter().any(|&e| is_tree_edge[e]))
        .collect();
    let [root] = roots[..] else {
        return Homogeneity::rejected();
    };

    let mut depth = vec![usize::MAX; n];
    depth[root] = 0;
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        for &e in graph.out_edges(v) {
            if !is_tree_edge[e] {
                continue;
            }
            let w = graph.target(e);
            if depth[w] != usize::MAX {
                // a tree edge into the root or a revisit: not a tree
                return Homogeneity::rejected();
            }
            depth[w] = depth[v] + 1;
            queue.push_back(w);
        }
    }
    if depth.contains(&usize::MAX) {
        return Homogeneity::rejected();
    }

    let tree_out = |v: VertexId| graph.out_edges(v).iter().filter(|&&e| is_tree_edge[e]).count();
    let height = (0..n)
        .filter(|&v| tree_out(v) == 0)
        .map(|v| depth[v])
        .max()
        .unwrap_or(0);
    let mut per_height: Vec<Option<usize>> = vec![None; height + 1];
    for v in 0..n {
        let is_leaf = tree_out(v) == 0;
        if is_leaf != (depth[v] == height) {
            return Homogeneity::rejected();
        }
        let degree = if is_leaf {
            if graph.out_edges(v).iter().any(|&e| is_tree_edge[e]) {
                return Homogeneity::rejected();
            }
            graph.out_edges(v).len()
        } else {
            if graph.out_edges(v).iter().any(|&e| !is_tree_edge[e]) {
                return Homogeneity::rejected();
            }
            tree_out(v)
        };
        match per_height[depth[v]] {
            None => per_height[depth[v]] = Some(degree),
            Some(d) if d == degree => {}
            Some(_) => return Homogeneity::rejected(),
        }
    }
    let counts: Option<Vec<u32>> = per_height
        .into_iter()
        .map(|d| d.and_then(|d| u32::try_from(d).ok()))
        .collect();
    match counts.map(HeightData::new) {
        Some(Ok(data)) => Homogeneity {
            homogeneous: true,
            data: Some(data),
        },
        _ => Homogeneity::rejected(),
    }
}
