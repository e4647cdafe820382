//! Topological graphs: vertices as points, edges as polyline curves.
//!
//! [`TopoGraph`] holds the drawing, [`validate`](TopoGraph::validate) checks
//! the drawing model (curves start and end at their vertices, never pass
//! through other vertices, no tangencies or overlaps, optional simplicity and
//! x-monotonicity), and [`CrossingGraph`] is the graph on edges where two
//! edges are adjacent iff they properly cross and share no endpoint.
//! "k pairwise crossing edges" is a k-clique there.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{self, rational_serde, CrossingKind, Curve, GeometryError, Point, PointPair, Rational};
use crate::par;

pub type VertexId = u32;
pub type EdgeId = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("duplicate vertex id {0}")]
    DuplicateVertex(VertexId),
    #[error("duplicate edge id {0}")]
    DuplicateEdge(EdgeId),
    #[error("edge {edge} refers to unknown vertex {vertex}")]
    UnknownVertex { edge: EdgeId, vertex: VertexId },
    #[error("edge {0} is a loop")]
    LoopEdge(EdgeId),
    #[error("edge {edge} has an invalid curve")]
    BadCurve { edge: EdgeId, source: GeometryError },
    #[error("edges {a} and {b} meet degenerately")]
    Geometry { a: EdgeId, b: EdgeId, source: GeometryError },
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),
    #[error("invalid TopoGraph JSON: {0}")]
    Json(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub id: VertexId,
    pub point: Point,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: EdgeId,
    pub u: VertexId,
    pub v: VertexId,
    pub curve: Curve,
}

impl Edge {
    pub fn shares_endpoint(&self, other: &Edge) -> bool {
        self.u == other.u || self.u == other.v || self.v == other.u || self.v == other.v
    }

    pub fn has_endpoint(&self, vertex: VertexId) -> bool {
        self.u == vertex || self.v == vertex
    }

    pub fn other_endpoint(&self, vertex: VertexId) -> VertexId {
        if self.u == vertex {
            self.v
        } else {
            self.u
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flags {
    #[serde(default)]
    pub simple: bool,
    #[serde(default)]
    pub x_monotone: bool,
    /// An edge meant to cross every other edge not sharing its endpoints.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub designated_edge: Option<EdgeId>,
}

/// A drawn graph. Immutable once built; ids are looked up through indexes
/// built at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TopoGraph {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    pub flags: Flags,
    vertex_index: HashMap<VertexId, usize>,
    edge_index: HashMap<EdgeId, usize>,
}

impl TopoGraph {
    pub fn new(vertices: Vec<Vertex>, edges: Vec<Edge>, flags: Flags) -> Result<Self, GraphError> {
        let mut vertex_index = HashMap::with_capacity(vertices.len());
        for (i, v) in vertices.iter().enumerate() {
            if vertex_index.insert(v.id, i).is_some() {
                return Err(GraphError::DuplicateVertex(v.id));
            }
        }
        let mut edge_index = HashMap::with_capacity(edges.len());
        for (i, e) in edges.iter().enumerate() {
            if edge_index.insert(e.id, i).is_some() {
                return Err(GraphError::DuplicateEdge(e.id));
            }
            for vertex in [e.u, e.v] {
                if !vertex_index.contains_key(&vertex) {
                    return Err(GraphError::UnknownVertex { edge: e.id, vertex });
                }
            }
            if e.u == e.v {
                return Err(GraphError::LoopEdge(e.id));
            }
        }
        if let Some(d) = flags.designated_edge {
            if !edge_index.contains_key(&d) {
                return Err(GraphError::UnknownEdge(d));
            }
        }
        Ok(Self {
            vertices,
            edges,
            flags,
            vertex_index,
            edge_index,
        })
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex(&self, id: VertexId) -> Option<&Vertex> {
        self.vertex_index.get(&id).map(|&i| &self.vertices[i])
    }

    pub fn edge(&self, id: EdgeId) -> Option<&Edge> {
        self.edge_index.get(&id).map(|&i| &self.edges[i])
    }

    pub fn edge_position(&self, id: EdgeId) -> Option<usize> {
        self.edge_index.get(&id).copied()
    }

    pub fn point(&self, id: VertexId) -> &Point {
        &self.vertex(id).expect("endpoint ids are checked at construction").point
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Symbol alphabet size for sequences over vertex ids.
    pub fn alphabet_size(&self) -> u32 {
        self.vertices.iter().map(|v| v.id + 1).max().unwrap_or(0)
    }

    /// The graph restricted to the given edges (all vertices kept).
    pub fn with_edges(&self, keep: &[EdgeId]) -> TopoGraph {
        let keep: HashSet<EdgeId> = keep.iter().copied().collect();
        let edges: Vec<Edge> = self.edges.iter().filter(|e| keep.contains(&e.id)).cloned().collect();
        let mut flags = self.flags.clone();
        if flags.designated_edge.is_some_and(|d| !keep.contains(&d)) {
            flags.designated_edge = None;
        }
        TopoGraph::new(self.vertices.clone(), edges, flags).expect("subgraph of a valid graph")
    }

    /// Checks every drawing-model invariant; an empty list means valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut seen_points: BTreeMap<&Point, VertexId> = BTreeMap::new();
        for v in &self.vertices {
            if let Some(&other) = seen_points.get(&v.point) {
                out.push(Violation::CoincidentVertices { a: other, b: v.id });
            } else {
                seen_points.insert(&v.point, v.id);
            }
        }
        for e in &self.edges {
            if e.curve.start() != self.point(e.u) || e.curve.end() != self.point(e.v) {
                out.push(Violation::EndpointMismatch { edge: e.id });
            }
            if self.flags.x_monotone && !e.curve.is_x_monotone() {
                out.push(Violation::NotXMonotone { edge: e.id });
            }
        }
        let on_edge = par::map(&self.edges, |e| {
            self.vertices
                .iter()
                .filter(|v| v.id != e.u && v.id != e.v && e.curve.contains_point(&v.point))
                .map(|v| Violation::VertexOnEdge { edge: e.id, vertex: v.id })
                .collect::<Vec<_>>()
        });
        out.extend(on_edge.into_iter().flatten());

        let pairs = self.edge_pairs();
        let pair_violations = par::map(&pairs, |&(i, j)| {
            let (a, b) = (&self.edges[i], &self.edges[j]);
            match geometry::crossings(&a.curve, &b.curve) {
                Ok(records) => {
                    if self.flags.simple && records.len() > 1 {
                        Some(Violation::Simplicity {
                            a: a.id,
                            b: b.id,
                            count: records.len(),
                        })
                    } else {
                        None
                    }
                }
                Err(GeometryError::Tangency(point)) => Some(Violation::Tangency { a: a.id, b: b.id, point: *point }),
                Err(GeometryError::Overlap) => Some(Violation::Overlap { a: a.id, b: b.id }),
                // A curve endpoint on another curve's interior is a vertex on
                // that edge, already reported above.
                Err(GeometryError::EndpointContact(_)) => None,
                Err(other) => unreachable!("crossings cannot fail with {other}"),
            }
        });
        out.extend(pair_violations.into_iter().flatten());
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    fn edge_pairs(&self) -> Vec<(usize, usize)> {
        let m = self.edges.len();
        (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).collect()
    }

    /// Builds the crossing graph. Requires a valid drawing.
    pub fn crossing_graph(&self) -> Result<CrossingGraph, GraphError> {
        let pairs = self.edge_pairs();
        let counts = par::map(&pairs, |&(i, j)| {
            let (a, b) = (&self.edges[i], &self.edges[j]);
            if a.shares_endpoint(b) {
                return Ok(0);
            }
            geometry::proper_crossing_count(&a.curve, &b.curve).map_err(|source| GraphError::Geometry {
                a: a.id,
                b: b.id,
                source,
            })
        });
        let mut graph = CrossingGraph::empty(self.edges.iter().map(|e| e.id).collect());
        for (&(i, j), count) in pairs.iter().zip(counts) {
            let count = count?;
            if count > 0 {
                graph.add(i, j, count as u32);
            }
        }
        Ok(graph)
    }

    /// `k` pairwise crossing edges, if the drawing has them.
    pub fn find_pairwise_crossing(&self, k: usize) -> Result<Option<Vec<EdgeId>>, GraphError> {
        let cg = self.crossing_graph()?;
        Ok(cg.find_clique(k).map(|c| cg.ids(&c)))
    }

    /// Smallest `k >= 2` such that no `k` edges pairwise cross.
    pub fn quasi_planarity_order(&self) -> Result<usize, GraphError> {
        Ok(self.crossing_graph()?.quasi_planarity_order())
    }

    /// Re-checks with the geometry module that the given edges pairwise
    /// properly cross and pairwise share no endpoint.
    pub fn verify_pairwise_crossing(&self, ids: &[EdgeId]) -> bool {
        let Some(edges) = ids.iter().map(|&id| self.edge(id)).collect::<Option<Vec<_>>>() else {
            return false;
        };
        edges.iter().enumerate().all(|(i, a)| {
            edges[i + 1..].iter().all(|b| {
                !a.shares_endpoint(b)
                    && geometry::crossings(&a.curve, &b.curve)
                        .is_ok_and(|r| r.iter().any(|c| c.kind == CrossingKind::ProperCrossing))
            })
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&TopoGraphJson::from(self)).expect("graph serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, GraphError> {
        let raw: TopoGraphJson = serde_json::from_str(text).map_err(|e| GraphError::Json(e.to_string()))?;
        raw.try_into()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Violation {
    CoincidentVertices { a: VertexId, b: VertexId },
    EndpointMismatch { edge: EdgeId },
    VertexOnEdge { edge: EdgeId, vertex: VertexId },
    Tangency { a: EdgeId, b: EdgeId, #[serde(serialize_with = "point_as_pair")] point: Point },
    Overlap { a: EdgeId, b: EdgeId },
    Simplicity { a: EdgeId, b: EdgeId, count: usize },
    NotXMonotone { edge: EdgeId },
}

fn point_as_pair<S: serde::Serializer>(p: &Point, s: S) -> Result<S::Ok, S::Error> {
    PointPair::from(p).serialize(s)
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::CoincidentVertices { a, b } => write!(f, "vertices {a} and {b} coincide"),
            Violation::EndpointMismatch { edge } => write!(f, "edge {edge} does not start/end at its vertices"),
            Violation::VertexOnEdge { edge, vertex } => write!(f, "edge {edge} passes through vertex {vertex}"),
            Violation::Tangency { a, b, point } => write!(f, "edges {a} and {b} touch at {point}"),
            Violation::Overlap { a, b } => write!(f, "edges {a} and {b} overlap"),
            Violation::Simplicity { a, b, count } => write!(f, "edges {a} and {b} meet {count} times"),
            Violation::NotXMonotone { edge } => write!(f, "edge {edge} is not x-monotone"),
        }
    }
}

// JSON interchange format.

#[derive(Serialize, Deserialize)]
struct VertexJson {
    id: VertexId,
    #[serde(with = "rational_serde")]
    x: Rational,
    #[serde(with = "rational_serde")]
    y: Rational,
}

#[derive(Serialize, Deserialize)]
struct EdgeJson {
    id: EdgeId,
    u: VertexId,
    v: VertexId,
    waypoints: Vec<PointPair>,
}

#[derive(Serialize, Deserialize)]
struct TopoGraphJson {
    vertices: Vec<VertexJson>,
    edges: Vec<EdgeJson>,
    #[serde(default)]
    flags: Flags,
}

impl From<&TopoGraph> for TopoGraphJson {
    fn from(g: &TopoGraph) -> Self {
        Self {
            vertices: g
                .vertices
                .iter()
                .map(|v| VertexJson {
                    id: v.id,
                    x: v.point.x.clone(),
                    y: v.point.y.clone(),
                })
                .collect(),
            edges: g
                .edges
                .iter()
                .map(|e| EdgeJson {
                    id: e.id,
                    u: e.u,
                    v: e.v,
                    waypoints: e.curve.waypoints().iter().map(PointPair::from).collect(),
                })
                .collect(),
            flags: g.flags.clone(),
        }
    }
}

impl TryFrom<TopoGraphJson> for TopoGraph {
    type Error = GraphError;

    fn try_from(raw: TopoGraphJson) -> Result<Self, GraphError> {
        let vertices = raw
            .vertices
            .into_iter()
            .map(|v| Vertex {
                id: v.id,
                point: Point::new(v.x, v.y),
            })
            .collect();
        let edges = raw
            .edges
            .into_iter()
            .map(|e| {
                let curve = Curve::new(e.waypoints.into_iter().map(Point::from).collect())
                    .map_err(|source| GraphError::BadCurve { edge: e.id, source })?;
                Ok(Edge {
                    id: e.id,
                    u: e.u,
                    v: e.v,
                    curve,
                })
            })
            .collect::<Result<Vec<_>, GraphError>>()?;
        TopoGraph::new(vertices, edges, raw.flags)
    }
}

impl Serialize for TopoGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        TopoGraphJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for TopoGraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = TopoGraphJson::deserialize(d)?;
        raw.try_into().map_err(serde::de::Error::custom)
    }
}

/// Incremental builder used by generators and tests.
#[derive(Default)]
pub struct TopoGraphBuilder {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    flags: Flags,
}

impl TopoGraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn flags(mut self, flags: Flags) -> Self {
        self.flags = flags;
        self
    }

    pub fn vertex(&mut self, id: VertexId, point: Point) -> &mut Self {
        self.vertices.push(Vertex { id, point });
        self
    }

    /// Adds an edge from `u` to `v` through the given interior waypoints.
    pub fn edge_via(&mut self, id: EdgeId, u: VertexId, v: VertexId, via: Vec<Point>) -> Result<&mut Self, GraphError> {
        let find = |vid: VertexId| {
            self.vertices
                .iter()
                .find(|x| x.id == vid)
                .map(|x| x.point.clone())
                .ok_or(GraphError::UnknownVertex { edge: id, vertex: vid })
        };
        let mut waypoints = vec![find(u)?];
        waypoints.extend(via);
        waypoints.push(find(v)?);
        let curve = Curve::new(waypoints).map_err(|source| GraphError::BadCurve { edge: id, source })?;
        self.edges.push(Edge { id, u, v, curve });
        Ok(self)
    }

    pub fn edge(&mut self, id: EdgeId, u: VertexId, v: VertexId) -> Result<&mut Self, GraphError> {
        self.edge_via(id, u, v, Vec::new())
    }

    pub fn build(self) -> Result<TopoGraph, GraphError> {
        TopoGraph::new(self.vertices, self.edges, self.flags)
    }
}

/// Graph on the edges of a drawing; adjacency = proper crossing between
/// edges with no common endpoint. Nodes are positions `0..len`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossingGraph {
    edge_ids: Vec<EdgeId>,
    adjacency: Vec<Vec<usize>>,
    counts: BTreeMap<(usize, usize), u32>,
}

impl CrossingGraph {
    pub fn empty(edge_ids: Vec<EdgeId>) -> Self {
        let n = edge_ids.len();
        Self {
            edge_ids,
            adjacency: vec![Vec::new(); n],
            counts: BTreeMap::new(),
        }
    }

    /// Adds (or overwrites) the crossing pair `i`-`j`.
    pub fn add(&mut self, i: usize, j: usize, count: u32) {
        assert!(i != j && count > 0);
        let key = (i.min(j), i.max(j));
        if self.counts.insert(key, count).is_none() {
            self.adjacency[i].push(j);
            self.adjacency[j].push(i);
        }
    }

    pub fn len(&self) -> usize {
        self.edge_ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edge_ids.is_empty()
    }

    pub fn edge_ids(&self) -> &[EdgeId] {
        &self.edge_ids
    }

    pub fn ids(&self, nodes: &[usize]) -> Vec<EdgeId> {
        nodes.iter().map(|&i| self.edge_ids[i]).collect()
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adjacency[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adjacency[i].len()
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.counts.contains_key(&(i.min(j), i.max(j)))
    }

    pub fn crossing_count(&self, i: usize, j: usize) -> u32 {
        self.counts.get(&(i.min(j), i.max(j))).copied().unwrap_or(0)
    }

    /// Unordered crossing pairs `(i, j)` with `i < j` and their counts.
    pub fn pairs(&self) -> impl Iterator<Item = ((usize, usize), u32)> + '_ {
        self.counts.iter().map(|(&k, &c)| (k, c))
    }

    pub fn pair_count(&self) -> usize {
        self.counts.len()
    }

    /// A `k`-clique, if one exists.
    pub fn find_clique(&self, k: usize) -> Option<Vec<usize>> {
        self.find_clique_among(k, &vec![true; self.len()])
    }

    /// A `k`-clique using only nodes with `alive[i]`.
    pub fn find_clique_among(&self, k: usize, alive: &[bool]) -> Option<Vec<usize>> {
        CliqueSearch::new(self, alive, k).run()
    }

    /// Size of a maximum clique (1 for an edgeless non-empty graph).
    pub fn clique_number(&self) -> usize {
        if self.is_empty() {
            return 0;
        }
        let mut k = 1;
        while self.find_clique(k + 1).is_some() {
            k += 1;
        }
        k
    }

    pub fn quasi_planarity_order(&self) -> usize {
        (self.clique_number() + 1).max(2)
    }
}

/// Branch and bound for a clique of a fixed size, with a greedy-colouring
/// bound on candidate sets and a `(k-1)`-core prefilter.
struct CliqueSearch {
    nodes: Vec<usize>,
    // Bit rows over positions in `nodes`.
    rows: Vec<Vec<u64>>,
    k: usize,
}

impl CliqueSearch {
    fn new(g: &CrossingGraph, alive: &[bool], k: usize) -> Self {
        // Peel to the (k-1)-core.
        let mut alive = alive.to_vec();
        let mut degree: Vec<usize> = (0..g.len())
            .map(|i| g.neighbors(i).iter().filter(|&&j| alive[j]).count())
            .collect();
        let need = k.saturating_sub(1);
        let mut stack: Vec<usize> = (0..g.len()).filter(|&i| alive[i] && degree[i] < need).collect();
        while let Some(i) = stack.pop() {
            if !alive[i] {
                continue;
            }
            alive[i] = false;
            for &j in g.neighbors(i) {
                if alive[j] {
                    degree[j] -= 1;
                    if degree[j] < need {
                        stack.push(j);
                    }
                }
            }
        }
        let mut nodes: Vec<usize> = (0..g.len()).filter(|&i| alive[i]).collect();
        // High degree first tends to find cliques early.
        nodes.sort_by_key(|&i| std::cmp::Reverse(degree[i]));
        let pos: HashMap<usize, usize> = nodes.iter().enumerate().map(|(p, &i)| (i, p)).collect();
        let words = nodes.len().div_ceil(64);
        let rows = nodes
            .iter()
            .map(|&i| {
                let mut row = vec![0u64; words];
                for j in g.neighbors(i) {
                    if let Some(&p) = pos.get(j) {
                        row[p / 64] |= 1 << (p % 64);
                    }
                }
                row
            })
            .collect();
        Self { nodes, rows, k }
    }

    fn run(&self) -> Option<Vec<usize>> {
        if self.k == 0 {
            return Some(Vec::new());
        }
        if self.nodes.len() < self.k {
            return None;
        }
        let candidates: Vec<usize> = (0..self.nodes.len()).collect();
        let mut current = Vec::with_capacity(self.k);
        if self.expand(&mut current, candidates) {
            let mut out: Vec<usize> = current.iter().map(|&p| self.nodes[p]).collect();
            out.sort_unstable();
            Some(out)
        } else {
            None
        }
    }

    fn adjacent(&self, a: usize, b: usize) -> bool {
        self.rows[a][b / 64] >> (b % 64) & 1 == 1
    }

    /// Greedy sequential colouring; returns vertices ordered by colour with
    /// their (1-based) colour numbers.
    fn colour(&self, candidates: &[usize]) -> Vec<(usize, usize)> {
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for &v in candidates {
            match classes
                .iter_mut()
                .find(|class| class.iter().all(|&u| !self.adjacent(u, v)))
            {
                Some(class) => class.push(v),
                None => classes.push(vec![v]),
            }
        }
        classes
            .into_iter()
            .enumerate()
            .flat_map(|(c, class)| class.into_iter().map(move |v| (v, c + 1)))
            .collect()
    }

    fn expand(&self, current: &mut Vec<usize>, candidates: Vec<usize>) -> bool {
        if current.len() == self.k {
            return true;
        }
        let coloured = self.colour(&candidates);
        for idx in (0..coloured.len()).rev() {
            let (v, colour) = coloured[idx];
            if current.len() + colour < self.k {
                return false;
            }
            let next: Vec<usize> = coloured[..idx]
                .iter()
                .map(|&(u, _)| u)
                .filter(|&u| self.adjacent(u, v))
                .collect();
            current.push(v);
            if self.expand(current, next) {
                return true;
            }
            current.pop();
        }
        false
    }
}
