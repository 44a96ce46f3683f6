//! Finite directed multigraphs: representation, parsing, serialization, and
//! the structural transforms used by the growth analyses (extended graph,
//! opposite graph, sink/source elimination, trimming, weakly connected
//! components, disjoint union).
//!
//! A graph is a finite set of named vertices together with a finite list of
//! named edges, each with a source and a range vertex. Parallel edges and
//! self-loops are allowed. Vertex order is the order of first appearance in
//! the input and is preserved by every transform and by serialization, so
//! adjacency matrices are reproducible.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matrix::IntMatrix;

/// Index of a vertex in a [`Graph`] (position in first-appearance order).
pub type VertexId = usize;

/// Index of an edge in a [`Graph`] (position in declaration order).
pub type EdgeId = usize;

/// A directed edge `source -> range` with a unique name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    pub source: VertexId,
    pub range: VertexId,
}

/// A finite directed multigraph with named vertices and edges.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Graph {
    vertices: Vec<String>,
    vertex_ids: BTreeMap<String, VertexId>,
    edges: Vec<Edge>,
    edge_ids: BTreeMap<String, EdgeId>,
}

/// Partition of the vertices by boundary behaviour.
///
/// `sinks` emit no edge, `sources` receive no edge, and `regular` is the
/// complement of `sinks` (every vertex emitting at least one edge; the graph
/// is finite, so there are no infinite emitters). An isolated vertex is both
/// a sink and a source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexClass {
    pub sinks: Vec<VertexId>,
    pub sources: Vec<VertexId>,
    pub regular: Vec<VertexId>,
}

/// Errors from graph construction, parsing, or transforms.
#[derive(Debug, Error)]
pub enum GraphError {
    #[error("line {line}: syntax error: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: duplicate vertex name `{name}`")]
    DuplicateVertex { line: usize, name: String },
    #[error("line {line}: duplicate edge name `{name}`")]
    DuplicateEdge { line: usize, name: String },
    #[error("invalid name `{name}`: {msg}")]
    InvalidName { name: String, msg: String },
    #[error("unknown vertex `{name}`")]
    UnknownVertex { name: String },
    #[error("duplicate vertex name `{name}` in JSON input")]
    JsonDuplicateVertex { name: String },
    #[error("duplicate edge name `{name}` in JSON input")]
    JsonDuplicateEdge { name: String },
    #[error("invalid JSON graph: {0}")]
    Json(#[from] serde_json::Error),
    #[error("cannot eliminate regular non-source vertex `{name}`")]
    EliminateRegular { name: String },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct EdgeJson {
    name: String,
    source: String,
    range: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct GraphJson {
    vertices: Vec<String>,
    edges: Vec<EdgeJson>,
}

/// Characters that cannot appear in vertex or edge names (they would break
/// the text format). Edge and vertex names also must not contain whitespace
/// or the arrow token.
const RESERVED_CHARS: [char; 4] = [';', '#', '[', ']'];

fn validate_name(name: &str) -> Result<(), GraphError> {
    let bad = |msg: &str| {
        Err(GraphError::InvalidName {
            name: name.to_owned(),
            msg: msg.to_owned(),
        })
    };
    if name.is_empty() {
        return bad("empty name");
    }
    if name.chars().any(char::is_whitespace) {
        return bad("contains whitespace");
    }
    if name.chars().any(|c| RESERVED_CHARS.contains(&c)) {
        return bad("contains a reserved character (one of `;#[]`)");
    }
    if name.contains("->") {
        return bad("contains the arrow token `->`");
    }
    Ok(())
}

impl Graph {
    /// Creates an empty graph (no vertices, no edges).
    pub fn new() -> Self {
        Self::default()
    }

    /// Number of vertices.
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Number of edges.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// True when the graph has no vertices.
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Vertex names in first-appearance order.
    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    /// The edges in declaration order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Name of vertex `v`.
    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v]
    }

    /// Looks a vertex up by name.
    pub fn vertex_id(&self, name: &str) -> Option<VertexId> {
        self.vertex_ids.get(name).copied()
    }

    /// Adds a vertex, failing on duplicates or invalid names.
    pub fn add_vertex(&mut self, name: &str) -> Result<VertexId, GraphError> {
        validate_name(name)?;
        if self.vertex_ids.contains_key(name) {
            return Err(GraphError::DuplicateVertex {
                line: 0,
                name: name.to_owned(),
            });
        }
        let id = self.vertices.len();
        self.vertices.push(name.to_owned());
        self.vertex_ids.insert(name.to_owned(), id);
        Ok(id)
    }

    /// Returns the id of `name`, adding the vertex if it is new.
    pub fn ensure_vertex(&mut self, name: &str) -> Result<VertexId, GraphError> {
        match self.vertex_ids.get(name) {
            Some(&id) => Ok(id),
            None => self.add_vertex(name),
        }
    }

    /// Adds a named edge between existing vertices.
    pub fn add_edge(&mut self, name: &str, source: VertexId, range: VertexId) -> Result<EdgeId, GraphError> {
        validate_name(name)?;
        if self.edge_ids.contains_key(name) {
            return Err(GraphError::DuplicateEdge {
                line: 0,
                name: name.to_owned(),
            });
        }
        assert!(source < self.vertices.len() && range < self.vertices.len());
        let id = self.edges.len();
        self.edges.push(Edge {
            name: name.to_owned(),
            source,
            range,
        });
        self.edge_ids.insert(name.to_owned(), id);
        Ok(id)
    }

    /// Outgoing edges of `v` in declaration order.
    pub fn out_edges(&self, v: VertexId) -> impl Iterator<Item = (EdgeId, &Edge)> {
        self.edges
            .iter()
            .enumerate()
            .filter(move |(_, e)| e.source == v)
    }

    /// Incoming edges of `v` in declaration order.
    pub fn in_edges(&self, v: VertexId) -> impl Iterator<Item = (EdgeId, &Edge)> {
        self.edges
            .iter()
            .enumerate()
            .filter(move |(_, e)| e.range == v)
    }

    /// Parses either the text format or the JSON form, auto-detected: input
    /// whose first non-whitespace character is `{` is treated as JSON.
    pub fn parse(input: &str) -> Result<Self, GraphError> {
        match input.trim_start().chars().next() {
            Some('{') => Self::parse_json(input),
            _ => Self::parse_text(input),
        }
    }

    /// Parses the text format.
    ///
    /// One statement per line, with `;` also accepted as a statement
    /// separator inside a line. `name;` declares a vertex, `a -> b` or
    /// `a -> b [label]` declares an edge (endpoints are declared implicitly
    /// on first use), and `#` starts a comment running to the end of the
    /// line. Unlabeled edges are auto-named `e1, e2, …` in declaration
    /// order, skipping names already taken.
    pub fn parse_text(input: &str) -> Result<Self, GraphError> {
        let mut g = Graph::new();
        let mut auto = 1usize;
        for (idx, raw_line) in input.lines().enumerate() {
            let line = idx + 1;
            let code = match raw_line.find('#') {
                Some(pos) => &raw_line[..pos],
                None => raw_line,
            };
            for stmt in code.split(';') {
                let stmt = stmt.trim();
                if stmt.is_empty() {
                    continue;
                }
                g.parse_statement(stmt, line, &mut auto)?;
            }
        }
        Ok(g)
    }

    fn parse_statement(&mut self, stmt: &str, line: usize, auto: &mut usize) -> Result<(), GraphError> {
        let syntax = |msg: String| GraphError::Syntax { line, msg };
        if let Some(pos) = stmt.find("->") {
            let src = stmt[..pos].trim();
            let rest = stmt[pos + 2..].trim();
            if rest.contains("->") {
                return Err(syntax(format!("more than one `->` in `{stmt}`")));
            }
            let (dst, label) = match rest.find('[') {
                Some(lb) => {
                    if !rest.ends_with(']') {
                        return Err(syntax(format!("unterminated `[label]` in `{stmt}`")));
                    }
                    let dst = rest[..lb].trim();
                    let label = rest[lb + 1..rest.len() - 1].trim();
                    if label.is_empty() {
                        return Err(syntax(format!("empty edge label in `{stmt}`")));
                    }
                    (dst, Some(label))
                }
                None => (rest, None),
            };
            if src.is_empty() || dst.is_empty() {
                return Err(syntax(format!("missing edge endpoint in `{stmt}`")));
            }
            let with_line = |e| match e {
                GraphError::InvalidName { name, msg } => {
                    syntax(format!("invalid name `{name}`: {msg}"))
                }
                other => other,
            };
            let s = self.ensure_vertex(src).map_err(with_line)?;
            let r = self.ensure_vertex(dst).map_err(with_line)?;
            let name = match label {
                Some(l) => l.to_owned(),
                None => {
                    // Auto-generated names skip anything the file already used.
                    loop {
                        let candidate = format!("e{auto}");
                        *auto += 1;
                        if !self.edge_ids.contains_key(&candidate) {
                            break candidate;
                        }
                    }
                }
            };
            self.add_edge(&name, s, r).map_err(|e| match e {
                GraphError::DuplicateEdge { name, .. } => GraphError::DuplicateEdge { line, name },
                GraphError::InvalidName { name, msg } => {
                    syntax(format!("invalid edge label `{name}`: {msg}"))
                }
                other => other,
            })?;
        } else {
            // Bare token: vertex declaration.
            if stmt.chars().any(char::is_whitespace) {
                return Err(syntax(format!("expected `name` or `a -> b` but found `{stmt}`")));
            }
            self.add_vertex(stmt).map_err(|e| match e {
                GraphError::DuplicateVertex { name, .. } => {
                    GraphError::DuplicateVertex { line, name }
                }
                GraphError::InvalidName { name, msg } => {
                    syntax(format!("invalid vertex name `{name}`: {msg}"))
                }
                other => other,
            })?;
        }
        Ok(())
    }

    /// Parses the JSON form: `{"vertices": [..], "edges": [{"name", "source",
    /// "range"}, ..]}`. Unlike the text format, edge endpoints must appear in
    /// the `vertices` array.
    pub fn parse_json(input: &str) -> Result<Self, GraphError> {
        let spec: GraphJson = serde_json::from_str(input)?;
        let mut g = Graph::new();
        for v in &spec.vertices {
            g.add_vertex(v).map_err(|e| match e {
                GraphError::DuplicateVertex { name, .. } => GraphError::JsonDuplicateVertex { name },
                other => other,
            })?;
        }
        for e in &spec.edges {
            let s = g
                .vertex_id(&e.source)
                .ok_or_else(|| GraphError::UnknownVertex { name: e.source.clone() })?;
            let r = g
                .vertex_id(&e.range)
                .ok_or_else(|| GraphError::UnknownVertex { name: e.range.clone() })?;
            g.add_edge(&e.name, s, r).map_err(|err| match err {
                GraphError::DuplicateEdge { name, .. } => GraphError::JsonDuplicateEdge { name },
                other => other,
            })?;
        }
        Ok(g)
    }

    fn to_json_repr(&self) -> GraphJson {
        let mut edges: Vec<EdgeJson> = self
            .edges
            .iter()
            .map(|e| EdgeJson {
                name: e.name.clone(),
                source: self.vertices[e.source].clone(),
                range: self.vertices[e.range].clone(),
            })
            .collect();
        edges.sort_by(|a, b| a.name.cmp(&b.name));
        GraphJson {
            vertices: self.vertices.clone(),
            edges,
        }
    }

    /// Canonical JSON serialization: vertex order preserved, edges sorted by
    /// name.
    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_repr()).expect("graph JSON cannot fail")
    }

    /// Canonical JSON serialization as a `serde_json` value (for embedding in
    /// larger reports).
    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self.to_json_repr()).expect("graph JSON cannot fail")
    }

    /// Text-format serialization: every vertex declared explicitly (so order
    /// survives), then every edge with its explicit label.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for v in &self.vertices {
            out.push_str(v);
            out.push_str(";\n");
        }
        for e in &self.edges {
            out.push_str(&format!(
                "{} -> {} [{}]\n",
                self.vertices[e.source], self.vertices[e.range], e.name
            ));
        }
        out
    }

    /// The adjacency matrix: entry `(i, j)` counts edges from vertex `i` to
    /// vertex `j`.
    pub fn adjacency_matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.vertices.len());
        for e in &self.edges {
            m.increment(e.source, e.range);
        }
        m
    }

    /// Classifies the vertices into sinks, sources, and regular vertices.
    pub fn vertex_classes(&self) -> VertexClass {
        let n = self.vertices.len();
        let mut has_out = vec![false; n];
        let mut has_in = vec![false; n];
        for e in &self.edges {
            has_out[e.source] = true;
            has_in[e.range] = true;
        }
        let mut classes = VertexClass {
            sinks: Vec::new(),
            sources: Vec::new(),
            regular: Vec::new(),
        };
        for v in 0..n {
            if !has_out[v] {
                classes.sinks.push(v);
            } else {
                classes.regular.push(v);
            }
            if !has_in[v] {
                classes.sources.push(v);
            }
        }
        classes
    }

    /// The extended graph: same vertices, original edges plus one reversed
    /// ghost edge `e*` per edge `e`. Its adjacency matrix is `A + Aᵗ`.
    ///
    /// Ghost names are the original name with a `*` appended; in the
    /// pathological case where that name is already taken, more stars are
    /// appended until it is free.
    pub fn extended(&self) -> Graph {
        let mut g = self.clone();
        for id in 0..self.edges.len() {
            let (mut name, src, rng) = {
                let e = &self.edges[id];
                (format!("{}*", e.name), e.source, e.range)
            };
            while g.edge_ids.contains_key(&name) {
                name.push('*');
            }
            g.add_edge(&name, rng, src).expect("ghost names are fresh");
        }
        g
    }

    /// The opposite graph: every edge reversed (names kept). Its adjacency
    /// matrix is `Aᵗ`.
    pub fn opposite(&self) -> Graph {
        let mut g = self.clone();
        for e in &mut g.edges {
            std::mem::swap(&mut e.source, &mut e.range);
        }
        g
    }

    /// The subgraph induced on the vertices for which `keep` is true; edges
    /// with either endpoint dropped are removed. Vertex and edge order is
    /// inherited.
    fn induced_subgraph(&self, keep: &[bool]) -> Graph {
        let mut g = Graph::new();
        let mut map = vec![usize::MAX; self.vertices.len()];
        for (v, name) in self.vertices.iter().enumerate() {
            if keep[v] {
                map[v] = g.add_vertex(name).expect("names stay distinct");
            }
        }
        for e in &self.edges {
            if keep[e.source] && keep[e.range] {
                g.add_edge(&e.name, map[e.source], map[e.range])
                    .expect("names stay distinct");
            }
        }
        g
    }

    /// Removes a set of sinks and/or sources together with all incident
    /// edges. Rejects any vertex that is neither a sink nor a source, because
    /// only sink/source elimination preserves the growth invariants
    /// downstream code relies on.
    pub fn eliminate(&self, remove: &[VertexId]) -> Result<Graph, GraphError> {
        let classes = self.vertex_classes();
        let mut removable = vec![false; self.vertices.len()];
        for &v in classes.sinks.iter().chain(&classes.sources) {
            removable[v] = true;
        }
        let mut keep = vec![true; self.vertices.len()];
        for &v in remove {
            if !removable[v] {
                return Err(GraphError::EliminateRegular {
                    name: self.vertices[v].clone(),
                });
            }
            keep[v] = false;
        }
        Ok(self.induced_subgraph(&keep))
    }

    /// Repeatedly eliminates all current sinks and sources until none remain.
    /// Acyclic graphs trim to the empty graph; graphs in which every vertex
    /// lies on or between cycles are returned unchanged.
    pub fn trim(&self) -> Graph {
        let mut g = self.clone();
        loop {
            let classes = g.vertex_classes();
            let mut remove: Vec<VertexId> = classes.sinks.clone();
            for &v in &classes.sources {
                if !remove.contains(&v) {
                    remove.push(v);
                }
            }
            if remove.is_empty() {
                return g;
            }
            g = g.eliminate(&remove).expect("sinks and sources are removable");
        }
    }

    /// Weakly connected components, ordered by their smallest vertex id. Each
    /// component inherits vertex and edge order; their disjoint union
    /// reconstructs the graph up to renaming.
    pub fn components(&self) -> Vec<Graph> {
        let n = self.vertices.len();
        let mut comp = vec![usize::MAX; n];
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for e in &self.edges {
            adj[e.source].push(e.range);
            adj[e.range].push(e.source);
        }
        let mut count = 0;
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            comp[start] = count;
            while let Some(v) = stack.pop() {
                for &u in &adj[v] {
                    if comp[u] == usize::MAX {
                        comp[u] = count;
                        stack.push(u);
                    }
                }
            }
            count += 1;
        }
        (0..count)
            .map(|c| {
                let keep: Vec<bool> = comp.iter().map(|&x| x == c).collect();
                self.induced_subgraph(&keep)
            })
            .collect()
    }

    /// Disjoint union. Vertices and edges of `self` keep their names; names
    /// from `other` that collide get `_2`, `_3`, … suffixes (first free one
    /// wins). The adjacency matrix of the result is block-diagonal.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let mut g = self.clone();
        let fresh = |taken: &dyn Fn(&str) -> bool, name: &str| -> String {
            if !taken(name) {
                return name.to_owned();
            }
            let mut i = 2usize;
            loop {
                let candidate = format!("{name}_{i}");
                if !taken(&candidate) {
                    return candidate;
                }
                i += 1;
            }
        };
        let mut map = Vec::with_capacity(other.vertices.len());
        for name in &other.vertices {
            let taken = |n: &str| g.vertex_ids.contains_key(n);
            let fresh_name = fresh(&taken, name);
            map.push(g.add_vertex(&fresh_name).expect("fresh name"));
        }
        for e in &other.edges {
            let taken = |n: &str| g.edge_ids.contains_key(n);
            let fresh_name = fresh(&taken, &e.name);
            g.add_edge(&fresh_name, map[e.source], map[e.range])
                .expect("fresh name");
        }
        g
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "graph with {} vertices, {} edges",
            self.vertices.len(),
            self.edges.len()
        )
    }
}
