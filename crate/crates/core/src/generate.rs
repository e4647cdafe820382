//! Deterministic instance generators.
//!
//! Every family is driven by a ChaCha8 stream seeded from the spec, so the
//! same spec always yields the same drawing. Candidate edges that would
//! create a degenerate drawing (an edge through a vertex, a tangency, an
//! overlap, three edges through one crossing point, a crossing on the median
//! line) are rejected and resampled up to the retry budget.

use std::collections::HashSet;

use num::{BigInt, One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{self, CrossingKind, Curve, Point, Rational};
use crate::topograph::{Edge, EdgeId, Flags, GraphError, TopoGraph, Vertex, VertexId};

pub const DEFAULT_RETRIES: usize = 1000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("no valid placement after {retries} attempts: {what}")]
    RetriesExhausted { what: String, retries: usize },
    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Family {
    /// `n` points on a circle, all straight edges.
    ConvexComplete {
        n: usize,
        #[serde(default)]
        seed: u64,
    },
    RandomSegments { n: usize, edge_count: usize, seed: u64 },
    /// Two-piece x-monotone polylines; adjacent edges never cross.
    RandomXmonotone { n: usize, edge_count: usize, seed: u64 },
    /// The base drawing with edges deleted until no `k` edges pairwise cross.
    Thinned { base: Box<Family>, k: usize, seed: u64 },
    /// A horizontal edge 0 and straight edges from vertices above it to
    /// vertices below, each crossing edge 0 once; the crossing edges are
    /// thinned until no `crosser_k` of them pairwise cross.
    CrossingEdge {
        n: usize,
        edge_count: usize,
        seed: u64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        crosser_k: Option<usize>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub family: Family,
    #[serde(default = "default_retries")]
    pub general_position_retries: usize,
}

fn default_retries() -> usize {
    DEFAULT_RETRIES
}

impl GeneratorSpec {
    pub fn new(family: Family) -> Self {
        Self {
            family,
            general_position_retries: DEFAULT_RETRIES,
        }
    }
}

pub fn generate(spec: &GeneratorSpec) -> Result<TopoGraph, GenerateError> {
    generate_family(&spec.family, spec.general_position_retries)
}

fn generate_family(family: &Family, retries: usize) -> Result<TopoGraph, GenerateError> {
    match family {
        Family::ConvexComplete { n, seed } => convex_complete(*n, *seed, retries),
        Family::RandomSegments { n, edge_count, seed } => random_edges(*n, *edge_count, *seed, retries, false),
        Family::RandomXmonotone { n, edge_count, seed } => random_edges(*n, *edge_count, *seed, retries, true),
        Family::Thinned { base, k, seed } => {
            let g = generate_family(base, retries)?;
            Ok(thin(&g, *k, *seed, None))
        }
        Family::CrossingEdge {
            n,
            edge_count,
            seed,
            crosser_k,
        } => crossing_edge(*n, *edge_count, *seed, *crosser_k, retries),
    }
}

fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Incrementally built drawing that only accepts edges keeping it
/// non-degenerate.
struct Canvas {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    crossing_points: HashSet<Point>,
    line_x: Option<Rational>,
    forbid_adjacent_crossings: bool,
}

impl Canvas {
    fn new(vertices: Vec<Vertex>) -> Self {
        Self {
            vertices,
            edges: Vec::new(),
            crossing_points: HashSet::new(),
            line_x: None,
            forbid_adjacent_crossings: false,
        }
    }

    /// Fixes the median line of the current vertex set so no crossing lands
    /// on it.
    fn with_median_line(mut self) -> Self {
        let mut xs: Vec<&Rational> = self.vertices.iter().map(|v| &v.point.x).collect();
        xs.sort();
        let half = xs.len() / 2;
        if half > 0 {
            self.line_x = Some((xs[half - 1] + xs[half]) / rat(2));
        }
        self
    }

    fn point(&self, id: VertexId) -> &Point {
        &self.vertices.iter().find(|v| v.id == id).expect("known vertex").point
    }

    fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.edges.iter().any(|e| (e.u == u && e.v == v) || (e.u == v && e.v == u))
    }

    fn try_add(&mut self, u: VertexId, v: VertexId, via: Vec<Point>) -> bool {
        let mut waypoints = vec![self.point(u).clone()];
        waypoints.extend(via);
        waypoints.push(self.point(v).clone());
        let Ok(curve) = Curve::new(waypoints) else {
            return false;
        };
        if self
            .vertices
            .iter()
            .any(|w| w.id != u && w.id != v && curve.contains_point(&w.point))
        {
            return false;
        }
        let mut new_points = Vec::new();
        for f in &self.edges {
            let Ok(records) = geometry::crossings(&curve, &f.curve) else {
                return false;
            };
            let adjacent = f.u == u || f.u == v || f.v == u || f.v == v;
            for r in records {
                if r.kind != CrossingKind::ProperCrossing {
                    continue;
                }
                if adjacent && self.forbid_adjacent_crossings {
                    return false;
                }
                if self.line_x.as_ref() == Some(&r.point.x)
                    || self.crossing_points.contains(&r.point)
                    || new_points.contains(&r.point)
                {
                    return false;
                }
                new_points.push(r.point);
            }
        }
        self.crossing_points.extend(new_points);
        let id = self.edges.len() as EdgeId;
        self.edges.push(Edge { id, u, v, curve });
        true
    }

    fn finish(self, designated_edge: Option<EdgeId>) -> Result<TopoGraph, GenerateError> {
        let simple = pairwise_simple(&self.edges);
        let x_monotone = self.edges.iter().all(|e| e.curve.is_x_monotone());
        Ok(TopoGraph::new(
            self.vertices,
            self.edges,
            Flags {
                simple,
                x_monotone,
                designated_edge,
            },
        )?)
    }
}

fn pairwise_simple(edges: &[Edge]) -> bool {
    edges.iter().enumerate().all(|(i, a)| {
        edges[i + 1..]
            .iter()
            .all(|b| geometry::validate_simple_pair(&a.curve, &b.curve).unwrap_or(false))
    })
}

/// `n` vertices with distinct x-coordinates that are multiples of 4 (so
/// midpoints are even and odd waypoint x-coordinates never hit them), no
/// three collinear.
fn random_vertices(rng: &mut ChaCha8Rng, n: usize, retries: usize) -> Result<Vec<Vertex>, GenerateError> {
    let span = (10 * n.max(4)) as i64;
    let mut xs: Vec<i64> = (0..span).map(|i| 4 * i).collect();
    xs.shuffle(rng);
    let mut pts: Vec<Point> = Vec::with_capacity(n);
    for &x in xs.iter().take(n) {
        let mut placed = false;
        for _ in 0..retries.max(1) {
            let p = Point::int(x, rng.gen_range(0..4 * span));
            let collinear = pts.iter().enumerate().any(|(i, a)| {
                pts[i + 1..]
                    .iter()
                    .any(|b| geometry::orient(a, b, &p) == std::cmp::Ordering::Equal)
            });
            if !collinear {
                pts.push(p);
                placed = true;
                break;
            }
        }
        if !placed {
            return Err(GenerateError::RetriesExhausted {
                what: "vertex in general position".into(),
                retries,
            });
        }
    }
    Ok(pts
        .into_iter()
        .enumerate()
        .map(|(i, point)| Vertex { id: i as VertexId, point })
        .collect())
}

fn random_edges(n: usize, edge_count: usize, seed: u64, retries: usize, polyline: bool) -> Result<TopoGraph, GenerateError> {
    if n < 2 && edge_count > 0 || edge_count > n * n.saturating_sub(1) / 2 {
        return Err(GenerateError::InvalidSpec(format!("{edge_count} edges do not fit on {n} vertices")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vertices = random_vertices(&mut rng, n, retries)?;
    let y_span = vertices.iter().map(|v| v.point.y.to_integer()).max().unwrap_or_default() + BigInt::one();
    let y_span: i64 = y_span.try_into().unwrap_or(i64::MAX);
    let mut canvas = Canvas::new(vertices).with_median_line();
    canvas.forbid_adjacent_crossings = polyline;
    for _ in 0..edge_count {
        let mut added = false;
        for _ in 0..retries.max(1) {
            let u = rng.gen_range(0..n) as VertexId;
            let v = rng.gen_range(0..n) as VertexId;
            if u == v || canvas.has_edge(u, v) {
                continue;
            }
            let (pu, pv) = (canvas.point(u).clone(), canvas.point(v).clone());
            let via = if polyline {
                let (lo, hi) = if pu.x < pv.x { (&pu.x, &pv.x) } else { (&pv.x, &pu.x) };
                let (lo, hi): (i64, i64) = (
                    lo.to_integer().try_into().unwrap(),
                    hi.to_integer().try_into().unwrap(),
                );
                // Odd x strictly between the endpoints.
                let x = lo + 1 + 2 * rng.gen_range(0..(hi - lo) / 2);
                vec![Point::int(x, rng.gen_range(-y_span / 4..y_span + y_span / 4))]
            } else {
                Vec::new()
            };
            if canvas.try_add(u, v, via) {
                added = true;
                break;
            }
        }
        if !added {
            return Err(GenerateError::RetriesExhausted {
                what: format!("edge {} of {edge_count}", canvas.edges.len()),
                retries,
            });
        }
    }
    canvas.finish(None)
}

/// `tan(theta/2)` rounded to a fraction with denominator `2^20`.
fn circle_parameter(theta: f64) -> Rational {
    let scale = 1i64 << 20;
    Rational::new(BigInt::from(((theta / 2.0).tan() * scale as f64).round() as i64), BigInt::from(scale))
}

/// Exact rational point on the unit circle for parameter `t`.
fn circle_point(t: &Rational) -> Point {
    let t2 = t * t;
    let one = Rational::one();
    let den = &one + &t2;
    Point::new((&one - &t2) / &den, (t * rat(2)) / den)
}

fn convex_complete(n: usize, seed: u64, retries: usize) -> Result<TopoGraph, GenerateError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..retries.max(1) {
        let step = std::f64::consts::TAU / n.max(1) as f64;
        let vertices: Vec<Vertex> = (0..n)
            .map(|i| {
                let jitter = rng.gen_range(-0.05..0.05) * step;
                let theta = -std::f64::consts::PI + step * (i as f64 + 0.5) + jitter;
                Vertex {
                    id: i as VertexId,
                    point: circle_point(&circle_parameter(theta)),
                }
            })
            .collect();
        let mut canvas = Canvas::new(vertices);
        let mut ok = true;
        'edges: for u in 0..n {
            for v in u + 1..n {
                if !canvas.try_add(u as VertexId, v as VertexId, Vec::new()) {
                    ok = false;
                    break 'edges;
                }
            }
        }
        if ok {
            let mut g = canvas.finish(None)?;
            g.flags.simple = true;
            return Ok(g);
        }
    }
    Err(GenerateError::RetriesExhausted {
        what: format!("convex position for {n} points"),
        retries,
    })
}

/// Deletes edges until no `k` of the edges outside `protect` pairwise cross:
/// in each `k`-clique found, the edge crossing the most surviving edges goes,
/// ties broken by the seeded stream.
pub fn thin(g: &TopoGraph, k: usize, seed: u64, protect: Option<EdgeId>) -> TopoGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cg = g.crossing_graph().expect("generated drawings are valid");
    let mut alive = vec![true; cg.len()];
    if let Some(p) = protect.and_then(|id| g.edge_position(id)) {
        alive[p] = false;
    }
    while let Some(clique) = cg.find_clique_among(k, &alive) {
        let load = |i: usize| cg.neighbors(i).iter().filter(|&&j| alive[j]).count();
        let top = clique.iter().map(|&i| load(i)).max().unwrap();
        let worst: Vec<usize> = clique.into_iter().filter(|&i| load(i) == top).collect();
        alive[*worst.choose(&mut rng).unwrap()] = false;
    }
    let mut keep: Vec<EdgeId> = (0..cg.len()).filter(|&i| alive[i]).map(|i| cg.edge_ids()[i]).collect();
    if let Some(p) = protect {
        keep.push(p);
    }
    g.with_edges(&keep)
}

fn crossing_edge(
    n: usize,
    edge_count: usize,
    seed: u64,
    crosser_k: Option<usize>,
    retries: usize,
) -> Result<TopoGraph, GenerateError> {
    if n < 4 {
        return Err(GenerateError::InvalidSpec("need the two base vertices and at least one on each side".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let width = (40 * n) as i64;
    let others = n - 2;
    let above = others.div_ceil(2);
    if edge_count > above * (others - above) {
        return Err(GenerateError::InvalidSpec(format!("{edge_count} crossing edges do not fit")));
    }
    let mut vertices = vec![
        Vertex { id: 0, point: Point::int(0, 0) },
        Vertex { id: 1, point: Point::int(width, 0) },
    ];
    let mut taken: HashSet<Point> = HashSet::new();
    for i in 0..others {
        let sign = if i < above { 1 } else { -1 };
        loop {
            let p = Point::int(rng.gen_range(1..width), sign * rng.gen_range(1..width));
            if taken.insert(p.clone()) {
                vertices.push(Vertex { id: i as VertexId + 2, point: p });
                break;
            }
        }
    }
    let mut canvas = Canvas::new(vertices);
    assert!(canvas.try_add(0, 1, Vec::new()));
    for _ in 0..edge_count {
        let mut added = false;
        for _ in 0..retries.max(1) {
            let a = rng.gen_range(0..above) as VertexId + 2;
            let b = rng.gen_range(above..others) as VertexId + 2;
            if canvas.has_edge(a, b) {
                continue;
            }
            let hit = segment_meets_base(canvas.point(a), canvas.point(b), width);
            if hit && canvas.try_add(a, b, Vec::new()) {
                added = true;
                break;
            }
        }
        if !added {
            return Err(GenerateError::RetriesExhausted {
                what: format!("crossing edge {} of {edge_count}", canvas.edges.len()),
                retries,
            });
        }
    }
    let g = canvas.finish(Some(0))?;
    Ok(match crosser_k {
        Some(k) => thin(&g, k, seed, Some(0)),
        None => g,
    })
}

/// Whether segment `a b` (a above, b below the x-axis) crosses the axis
/// strictly inside `(0, width)`.
fn segment_meets_base(a: &Point, b: &Point, width: i64) -> bool {
    let t = &a.y / (&a.y - &b.y);
    let x = &a.x + t * (&b.x - &a.x);
    x > Rational::zero() && x < rat(width)
}

/// A drawing whose base edge 0 is crossed `l * t` times, the i-th crossing
/// edge leaving upwards to vertex `a_(i mod l)`, so `S1` is `up(l, t)`.
pub fn planted_up(l: usize, t: usize, seed: u64, retries: usize) -> Result<TopoGraph, GenerateError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = l * t;
    let width = (m + 1) as i64;
    let span = 4 * width;
    let mut vertices = vec![
        Vertex { id: 0, point: Point::int(0, 0) },
        Vertex { id: 1, point: Point::int(width, 0) },
    ];
    let mut taken = HashSet::new();
    for j in 0..l {
        loop {
            let p = Point::int(rng.gen_range(-span..2 * span), rng.gen_range(1..span));
            if taken.insert(p.clone()) {
                vertices.push(Vertex { id: j as VertexId + 2, point: p });
                break;
            }
        }
    }
    let mut canvas = Canvas::new(vertices);
    assert!(canvas.try_add(0, 1, Vec::new()));
    for i in 0..m {
        let a_id = (i % l) as VertexId + 2;
        let a = canvas.point(a_id).clone();
        let c = Point::int(i as i64 + 1, 0);
        let b_id = (l + 2 + i) as VertexId;
        let mut added = false;
        for _ in 0..retries.max(1) {
            // b on the ray from a through c, past the axis.
            let s = Rational::new(BigInt::from(rng.gen_range(1..64)), BigInt::from(64));
            let b = Point::new(&c.x + &s * (&c.x - &a.x), &c.y + &s * (&c.y - &a.y));
            if canvas.vertices.iter().any(|v| v.point == b) || canvas.edges.iter().any(|e| e.curve.contains_point(&b)) {
                continue;
            }
            canvas.vertices.push(Vertex { id: b_id, point: b });
            if canvas.try_add(a_id, b_id, Vec::new()) {
                added = true;
                break;
            }
            canvas.vertices.pop();
        }
        if !added {
            return Err(GenerateError::RetriesExhausted {
                what: format!("planted edge {i}"),
                retries,
            });
        }
    }
    let g = canvas.finish(Some(0))?;
    Ok(g)
}

/// `m` random segments in general position, as a raw curve list.
pub fn random_segment_curves(m: usize, seed: u64, retries: usize) -> Result<Vec<Curve>, GenerateError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let side = 1000i64;
    let reach = 300i64;
    let mut curves: Vec<Curve> = Vec::with_capacity(m);
    for _ in 0..m {
        let mut added = false;
        for _ in 0..retries.max(1) {
            let a = (rng.gen_range(0..side), rng.gen_range(0..side));
            let b = (a.0 + rng.gen_range(-reach..=reach), a.1 + rng.gen_range(-reach..=reach));
            let Ok(c) = Curve::from_ints(&[a, b]) else {
                continue;
            };
            if curves.iter().all(|d| geometry::crossings(&c, d).is_ok_and(|r| r.iter().all(|x| x.kind == CrossingKind::ProperCrossing))) {
                curves.push(c);
                added = true;
                break;
            }
        }
        if !added {
            return Err(GenerateError::RetriesExhausted {
                what: "segment in general position".into(),
                retries,
            });
        }
    }
    Ok(curves)
}
