//! The sequences `S1`, `S2` read off a drawing.
//!
//! Along an edge `e` crossing everything: walk `e` from `u` to `v`; at the
//! i-th crossing with `e_i`, `p_i` is the endpoint of `e_i` reached by
//! turning left and `q_i` the one reached by turning right.
//!
//! Along a vertical line: order the edges meeting the line from bottom to
//! top; `p_i` is the left endpoint of `e_i`, `q_i` the right one.

use std::collections::{BTreeMap, HashSet};

use serde::Serialize;
use thiserror::Error;

use crate::geometry::{self, rational_serde, CrossingKind, GeometryError, Point, Rational, Side};
use crate::sequences::{contains_up_down_up, format_sequence, PatternWitness, Sequence};
use crate::structure::{prune_incomparability, LineSide, StructureError};
use crate::topograph::{EdgeId, GraphError, TopoGraph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("edge {0} does not exist")]
    UnknownEdge(EdgeId),
    #[error("the drawing is not declared simple")]
    NotDeclaredSimple,
    #[error("the drawing is not declared x-monotone")]
    NotDeclaredXMonotone,
    #[error("edge {0} crosses the base edge more than once")]
    MultipleCrossings(EdgeId),
    #[error("edges {0} and {1} cross at the same point")]
    CoincidentCrossings(EdgeId, EdgeId),
    #[error("vertices {0} and {1} share an x-coordinate")]
    DuplicateX(VertexId, VertexId),
    #[error("edge {0} does not meet the line")]
    NotCrossing(EdgeId),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Structure(#[from] StructureError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Provenance {
    AllCrossingEdge {
        edge: EdgeId,
    },
    VerticalLine {
        #[serde(with = "rational_serde")]
        line_x: Rational,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SequencePair {
    pub s1: Sequence,
    pub s2: Sequence,
    pub provenance: Provenance,
    /// The edge behind each term.
    pub order: Vec<EdgeId>,
}

impl SequencePair {
    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Two lines of vertex ids, in the sequences text format.
    pub fn to_text(&self) -> String {
        format!(
            "# S1\n{}\n# S2\n{}\n",
            format_sequence(&self.s1, None),
            format_sequence(&self.s2, None)
        )
    }

    /// Provenance and edge order, for storing next to [`to_text`](Self::to_text).
    pub fn sidecar_json(&self) -> String {
        #[derive(Serialize)]
        struct Sidecar<'a> {
            provenance: &'a Provenance,
            order: &'a [EdgeId],
        }
        serde_json::to_string_pretty(&Sidecar {
            provenance: &self.provenance,
            order: &self.order,
        })
        .expect("sidecar serializes")
    }

    /// Both terms of every position are endpoints of the recorded edge.
    pub fn is_consistent(&self, g: &TopoGraph) -> bool {
        self.s1.len() == self.order.len()
            && self.s2.len() == self.order.len()
            && self.order.iter().enumerate().all(|(i, &id)| {
                g.edge(id).is_some_and(|e| {
                    let (p, q) = (self.s1.symbols()[i], self.s2.symbols()[i]);
                    p != q && e.has_endpoint(p) && e.has_endpoint(q)
                })
            })
    }
}

fn pair(g: &TopoGraph, terms: Vec<(EdgeId, VertexId, VertexId)>, provenance: Provenance) -> SequencePair {
    let n = g.alphabet_size();
    let s1 = Sequence::new(terms.iter().map(|t| t.1).collect(), n).expect("vertex ids are below the alphabet size");
    let s2 = Sequence::new(terms.iter().map(|t| t.2).collect(), n).expect("vertex ids are below the alphabet size");
    SequencePair {
        s1,
        s2,
        provenance,
        order: terms.into_iter().map(|t| t.0).collect(),
    }
}

/// A crossing of the base edge, as found by [`crossings_along`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseCrossing {
    pub edge: EdgeId,
    pub point: Point,
}

/// Edges properly crossing `e` (and sharing no endpoint with it), sorted by
/// the crossing position along `e`.
pub fn crossings_along(g: &TopoGraph, e: EdgeId) -> Result<Vec<BaseCrossing>, ConstructError> {
    let base = g.edge(e).ok_or(ConstructError::UnknownEdge(e))?;
    let mut found = Vec::new();
    for other in g.edges() {
        if other.id == e || other.shares_endpoint(base) {
            continue;
        }
        let hits: Vec<Point> = geometry::crossings(&base.curve, &other.curve)?
            .into_iter()
            .filter(|r| r.kind == CrossingKind::ProperCrossing)
            .map(|r| r.point)
            .collect();
        match hits.len() {
            0 => {}
            1 => {
                let key = base.curve.position_key(&hits[0]).expect("crossing lies on the base edge");
                found.push((key, BaseCrossing {
                    edge: other.id,
                    point: hits.into_iter().next().unwrap(),
                }));
            }
            _ => return Err(ConstructError::MultipleCrossings(other.id)),
        }
    }
    found.sort_by(|a, b| a.0.cmp(&b.0));
    for w in found.windows(2) {
        if w[0].1.point == w[1].1.point {
            return Err(ConstructError::CoincidentCrossings(w[0].1.edge, w[1].1.edge));
        }
    }
    Ok(found.into_iter().map(|(_, c)| c).collect())
}

/// Builds `S1`/`S2` along edge `e`. The left endpoint of `e_i` is the one
/// whose part of `e_i` leaves the crossing on the left of `e`, decided from
/// the local directions of both curves at the crossing.
pub fn build_from_crossing_edge(g: &TopoGraph, e: EdgeId) -> Result<SequencePair, ConstructError> {
    if !g.flags.simple {
        return Err(ConstructError::NotDeclaredSimple);
    }
    let base = g.edge(e).ok_or(ConstructError::UnknownEdge(e))?;
    let terms = crossings_along(g, e)?
        .into_iter()
        .map(|c| {
            let other = g.edge(c.edge).expect("crossing edge exists");
            let side = geometry::departure_side(&base.curve, &other.curve, &c.point)
                .expect("a proper crossing has a departure side");
            match side {
                Side::Left => (other.id, other.v, other.u),
                Side::Right => (other.id, other.u, other.v),
            }
        })
        .collect();
    Ok(pair(g, terms, Provenance::AllCrossingEdge { edge: e }))
}

/// Positions where the half-plane reading (which side of `e`'s direction at
/// the crossing the endpoint lies on) disagrees with the pair. Straight-line
/// drawings never disagree; curved edges that wind around `e` can.
pub fn half_plane_disagreements(g: &TopoGraph, pair: &SequencePair) -> Result<Vec<usize>, ConstructError> {
    let Provenance::AllCrossingEdge { edge } = pair.provenance else {
        return Ok(Vec::new());
    };
    let base = g.edge(edge).ok_or(ConstructError::UnknownEdge(edge))?;
    let crossings = crossings_along(g, edge)?;
    Ok(crossings
        .iter()
        .enumerate()
        .filter(|(i, c)| {
            let p = g.point(pair.s1.symbols()[*i]);
            let q = g.point(pair.s2.symbols()[*i]);
            geometry::half_plane_side(&base.curve, &c.point, p) != Some(Side::Left)
                || geometry::half_plane_side(&base.curve, &c.point, q) != Some(Side::Right)
        })
        .map(|(i, _)| i)
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MedianPartition {
    pub v1: Vec<VertexId>,
    pub v2: Vec<VertexId>,
    pub e1: Vec<EdgeId>,
    pub e2: Vec<EdgeId>,
    pub e_prime: Vec<EdgeId>,
    #[serde(with = "rational_serde")]
    pub line_x: Rational,
}

/// Splits the vertices by a vertical line with `floor(n/2)` vertices on its
/// left, halfway between the two median x-coordinates.
pub fn median_line_partition(g: &TopoGraph) -> Result<MedianPartition, ConstructError> {
    if !g.flags.x_monotone {
        return Err(ConstructError::NotDeclaredXMonotone);
    }
    let mut by_x: Vec<(&Rational, VertexId)> = g.vertices().iter().map(|v| (&v.point.x, v.id)).collect();
    by_x.sort();
    for w in by_x.windows(2) {
        if w[0].0 == w[1].0 {
            return Err(ConstructError::DuplicateX(w[0].1, w[1].1));
        }
    }
    let half = by_x.len() / 2;
    let line_x = match (half, by_x.first()) {
        (_, None) => Rational::from_integer(0.into()),
        (0, Some((x, _))) => *x - Rational::from_integer(1.into()),
        _ => (by_x[half - 1].0 + by_x[half].0) / Rational::from_integer(2.into()),
    };
    let v1: Vec<VertexId> = by_x[..half].iter().map(|p| p.1).collect();
    let v2: Vec<VertexId> = by_x[half..].iter().map(|p| p.1).collect();
    let left: HashSet<VertexId> = v1.iter().copied().collect();
    let (mut e1, mut e2, mut e_prime) = (Vec::new(), Vec::new(), Vec::new());
    for e in g.edges() {
        match (left.contains(&e.u), left.contains(&e.v)) {
            (true, true) => e1.push(e.id),
            (false, false) => e2.push(e.id),
            _ => e_prime.push(e.id),
        }
    }
    Ok(MedianPartition {
        v1,
        v2,
        e1,
        e2,
        e_prime,
        line_x,
    })
}

/// Builds `S1`/`S2` from the listed edges ordered by where they meet the
/// line `x = line_x`, bottom to top.
pub fn build_from_vertical_line(g: &TopoGraph, line_x: &Rational, edges: &[EdgeId]) -> Result<SequencePair, ConstructError> {
    let mut hits = Vec::with_capacity(edges.len());
    for &id in edges {
        let e = g.edge(id).ok_or(ConstructError::UnknownEdge(id))?;
        let p = geometry::crossing_point_on_line(&e.curve, line_x)?.ok_or(ConstructError::NotCrossing(id))?;
        hits.push((p.y, id));
    }
    hits.sort();
    for w in hits.windows(2) {
        if w[0].0 == w[1].0 {
            return Err(ConstructError::CoincidentCrossings(w[0].1, w[1].1));
        }
    }
    let terms = hits
        .into_iter()
        .map(|(_, id)| {
            let e = g.edge(id).expect("checked above");
            if g.point(e.u).x < g.point(e.v).x {
                (id, e.u, e.v)
            } else {
                (id, e.v, e.u)
            }
        })
        .collect();
    Ok(pair(
        g,
        terms,
        Provenance::VerticalLine {
            line_x: line_x.clone(),
        },
    ))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct XmonoReport {
    pub k: usize,
    pub partition: MedianPartition,
    pub after_left: usize,
    pub after_right: usize,
    /// `ceil(|E'| / (k-1)^2)`.
    pub required: usize,
    pub retained_ok: bool,
    /// Edges sharing a bundle vertex that pairwise cross on its side. Such
    /// edges are adjacent, so they do not count as pairwise crossing in the
    /// crossing graph and the pruning hypothesis fails.
    pub hypothesis_violation: Option<Vec<EdgeId>>,
    pub pair: Option<SequencePair>,
    /// Pattern size `k^3 + 2`.
    pub l: usize,
    pub witness_s1: Option<PatternWitness>,
    pub witness_s2: Option<PatternWitness>,
    /// Pairwise crossing edges, searched whenever a witness is found.
    pub clique: Option<Vec<EdgeId>>,
    /// A witness without `k` pairwise crossing edges.
    pub failure: bool,
}

/// The vertical-line pipeline: median split, pruning on both sides, `S1`/`S2`
/// from survivors, then an `up-down-up(k^3+2)` search in both sequences.
pub fn xmono_pipeline(g: &TopoGraph, k: usize) -> Result<XmonoReport, ConstructError> {
    let partition = median_line_partition(g)?;
    let line_x = partition.line_x.clone();
    let m = partition.e_prime.len();
    let l = k.pow(3) + 2;
    let mut report = XmonoReport {
        k,
        after_left: 0,
        after_right: 0,
        required: m.div_ceil((k - 1).pow(2)),
        retained_ok: false,
        hypothesis_violation: None,
        pair: None,
        l,
        witness_s1: None,
        witness_s2: None,
        clique: None,
        failure: false,
        partition,
    };
    let endpoint = |id: EdgeId, side: LineSide| {
        let e = g.edge(id).expect("partition edges exist");
        let left = g.point(e.u).x < g.point(e.v).x;
        match (side, left) {
            (LineSide::LeftOfL, true) | (LineSide::RightOfL, false) => e.u,
            _ => e.v,
        }
    };
    let mut survivors = report.partition.e_prime.clone();
    for side in [LineSide::LeftOfL, LineSide::RightOfL] {
        let mut bundles: BTreeMap<VertexId, Vec<EdgeId>> = BTreeMap::new();
        for &id in &survivors {
            bundles.entry(endpoint(id, side)).or_default().push(id);
        }
        let mut kept = Vec::new();
        for (v, bundle) in bundles {
            match prune_incomparability(g, v, &bundle, side, &line_x, k) {
                Ok(r) => kept.extend(r.retained),
                Err(StructureError::HypothesisViolated { clique }) => {
                    report.hypothesis_violation = Some(clique);
                    return Ok(report);
                }
                Err(e) => return Err(e.into()),
            }
        }
        kept.sort_unstable();
        survivors = kept;
        match side {
            LineSide::LeftOfL => report.after_left = survivors.len(),
            LineSide::RightOfL => report.after_right = survivors.len(),
        }
    }
    report.retained_ok = report.after_right >= report.required;
    let pair = build_from_vertical_line(g, &line_x, &survivors)?;
    report.witness_s1 = contains_up_down_up(&pair.s1, l);
    report.witness_s2 = contains_up_down_up(&pair.s2, l);
    if report.witness_s1.is_some() || report.witness_s2.is_some() {
        report.clique = g.find_pairwise_crossing(k)?;
        report.failure = report.clique.is_none();
    }
    report.pair = Some(pair);
    Ok(report)
}

/// A drawing realizing `S1 = v1,v3,v4,v3,v2` and `S2 = v2,v2,v1,v5,v5`
/// along edge 0 (from vertex 10 to vertex 11), with `v_i` as vertex `i`.
///
/// Vertices 1, 3, 4 lie above the base edge and 2, 5 below. Edge 3 (v4 to
/// v1) and edge 5 (v2 to v5) run around the ends of the base edge, so v1
/// and v2 each appear once as a left and once as a right endpoint.
pub fn figure_one() -> TopoGraph {
    use crate::topograph::{Flags, TopoGraphBuilder};
    let p = Point::int;
    let mut b = TopoGraphBuilder::new().flags(Flags {
        simple: true,
        x_monotone: false,
        designated_edge: Some(0),
    });
    b.vertex(10, p(0, 0))
        .vertex(11, p(12, 0))
        .vertex(1, p(1, 3))
        .vertex(2, p(4, -3))
        .vertex(3, p(4, 3))
        .vertex(4, p(6, 3))
        .vertex(5, p(9, -3));
    let edges: [(EdgeId, VertexId, VertexId, Vec<Point>); 6] = [
        (0, 10, 11, vec![]),
        (1, 1, 2, vec![]),
        (2, 3, 2, vec![]),
        (3, 4, 1, vec![p(5, -5), p(-1, -5), p(-1, 4)]),
        (4, 3, 5, vec![]),
        (5, 2, 5, vec![p(5, -4), p(13, -4), p(13, 2), p(9, 2)]),
    ];
    for (id, u, v, via) in edges {
        b.edge_via(id, u, v, via).expect("fixture waypoints are valid");
    }
    b.build().expect("fixture is well formed")
}
