use serde::{Deserialize, Serialize};

use super::poset::{chain_cover, max_antichain, Poset};
use super::StructureError;
use crate::geometry::{self, CrossingKind, Rational};
use crate::topograph::{EdgeId, TopoGraph, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LineSide {
    #[serde(rename = "LEFT_OF_L")]
    LeftOfL,
    #[serde(rename = "RIGHT_OF_L")]
    RightOfL,
}

impl LineSide {
    /// Whether `x` is on this side of the line, the line itself included.
    fn reaches(self, x: &Rational, line_x: &Rational) -> bool {
        match self {
            LineSide::LeftOfL => x <= line_x,
            LineSide::RightOfL => x >= line_x,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PruneResult {
    /// Survivors, bottom to top along the line.
    pub retained: Vec<EdgeId>,
    pub bundle_size: usize,
    /// `ceil(bundle_size / (k - 1))`.
    pub required: usize,
}

/// Keeps a largest subset of a bundle of x-monotone edges at `vertex` that
/// pairwise do not meet between `vertex` and the line.
///
/// For such edges "e is below f all the way to the line" is a partial order
/// whose incomparable pairs are exactly the pairs meeting on that side, so a
/// largest non-crossing subset is a longest chain. With no `k` pairwise
/// crossing edges, Dilworth gives a chain of at least `m / (k-1)`.
pub fn prune_incomparability(
    g: &TopoGraph,
    vertex: VertexId,
    bundle: &[EdgeId],
    side: LineSide,
    line_x: &Rational,
    k: usize,
) -> Result<PruneResult, StructureError> {
    if k < 2 {
        return Err(StructureError::Precondition(format!("k = {k} must be at least 2")));
    }
    let vx = &g
        .vertex(vertex)
        .ok_or_else(|| StructureError::Precondition(format!("unknown vertex {vertex}")))?
        .point
        .x;
    let strictly_inside = match side {
        LineSide::LeftOfL => vx < line_x,
        LineSide::RightOfL => vx > line_x,
    };
    if !strictly_inside {
        return Err(StructureError::Precondition(format!(
            "vertex {vertex} is not strictly on the {side:?} side"
        )));
    }
    let mut edges = Vec::with_capacity(bundle.len());
    let mut heights = Vec::with_capacity(bundle.len());
    for &id in bundle {
        let e = g
            .edge(id)
            .ok_or_else(|| StructureError::Precondition(format!("unknown edge {id}")))?;
        if !e.has_endpoint(vertex) {
            return Err(StructureError::Precondition(format!("edge {id} does not end at vertex {vertex}")));
        }
        if !e.curve.is_x_monotone() {
            return Err(StructureError::Precondition(format!("edge {id} is not x-monotone")));
        }
        let hit = geometry::crossing_point_on_line(&e.curve, line_x)?
            .ok_or_else(|| StructureError::Precondition(format!("edge {id} misses the line")))?;
        edges.push(e);
        heights.push(hit.y);
    }

    let m = edges.len();
    let mut meets = vec![vec![false; m]; m];
    for i in 0..m {
        for j in i + 1..m {
            let hit = geometry::crossings(&edges[i].curve, &edges[j].curve)?
                .iter()
                .any(|c| c.kind == CrossingKind::ProperCrossing && side.reaches(&c.point.x, line_x))
                || heights[i] == heights[j];
            meets[i][j] = hit;
            meets[j][i] = hit;
        }
    }
    let poset = Poset::from_relation(m, |i, j| !meets[i][j] && heights[i] < heights[j])?;
    let cover = chain_cover(&poset);
    if cover.len() >= k {
        let anti = max_antichain(&poset);
        let clique = anti[..k].iter().map(|&i| edges[i].id).collect();
        return Err(StructureError::HypothesisViolated { clique });
    }
    let chain = poset.longest_chain();
    let required = m.div_ceil(k - 1);
    debug_assert!(chain.len() >= required);
    Ok(PruneResult {
        retained: chain.iter().map(|&i| edges[i].id).collect(),
        bundle_size: m,
        required,
    })
}
