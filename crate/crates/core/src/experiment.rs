//! Per-instance verification: quasi-planarity order, the sequence properties on
//! whichever construction applies, bound evaluations against the observed
//! edge count, and decomposition / separator metrics.

use serde::Serialize;

use crate::bounds::{bound_report, BoundConstants, BoundName, BoundReport};
use crate::construct::{self, half_plane_disagreements, ConstructError, SequencePair, XmonoReport};
use crate::geometry::GeometryError;
use crate::sequences::{contains_up, extract_l_regular_greedy, longest_l_regular_subsequence, PatternWitness, DEFAULT_EXACT_CAP};
use crate::structure::{decompose, CurveSet, DecomposeConfig, StructureError};
use crate::topograph::{EdgeId, GraphError, TopoGraph};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyOptions {
    pub constants: BoundConstants,
    pub decompose: DecomposeConfig,
    /// Run the decomposition and separator on the edge curves.
    pub curve_metrics: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            constants: BoundConstants::default(),
            decompose: DecomposeConfig::default(),
            curve_metrics: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PlanarCheck {
    pub bound: usize,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RegularCheck {
    pub l: usize,
    /// Longest `l`-regular subsequence over `S1` and `S2`.
    pub best: usize,
    /// False when the sequences exceed the exact cap and `best` is only the
    /// greedy lower bound.
    pub exact: bool,
    /// `ceil(m / (4l))`.
    pub required: usize,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UpCheck {
    pub l: u64,
    pub t: u64,
    /// The pattern is longer than the sequences, so it cannot occur.
    pub vacuous: bool,
    pub witness_s1: Option<PatternWitness>,
    pub witness_s2: Option<PatternWitness>,
    pub clique: Option<Vec<EdgeId>>,
    pub failure: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CrossingEdgeReport {
    pub edge: EdgeId,
    pub pair: SequencePair,
    pub half_plane_disagreements: usize,
    pub regular: Vec<RegularCheck>,
    pub up: UpCheck,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CurveMetrics {
    pub m: usize,
    pub x: usize,
    pub t: usize,
    pub decomposition_size: usize,
    pub decomposition_valid: bool,
    pub d: f64,
    pub reference: f64,
    pub separator_v0: usize,
    pub separator_v1: usize,
    pub separator_v2: usize,
    pub separator_ratio: Option<f64>,
    pub separator_valid: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExperimentReport {
    pub id: String,
    pub n: usize,
    pub edges: usize,
    pub k: usize,
    pub order: usize,
    pub simple: bool,
    pub x_monotone: bool,
    pub planar: Option<PlanarCheck>,
    pub crossing_edge: Option<CrossingEdgeReport>,
    pub xmono: Option<XmonoReport>,
    pub bounds: Vec<BoundReport>,
    pub curves: Option<CurveMetrics>,
    pub failures: Vec<String>,
}

#[derive(Debug, thiserror::Error)]
pub enum ExperimentError {
    #[error("invalid drawing: {0}")]
    Invalid(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Construct(#[from] ConstructError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Structure(#[from] StructureError),
}

pub const CSV_HEADER: &str = "instance,n,edges,k,order,planar,regular,up_free,udu_free,failure,log2_thm1,log2_thm2,log2_planar,decomposition_size,separator_ratio";

fn flag(check: Option<bool>) -> &'static str {
    match check {
        None => "NA",
        Some(true) => "PASS",
        Some(false) => "FAIL",
    }
}

impl ExperimentReport {
    pub fn failed(&self) -> bool {
        !self.failures.is_empty()
    }

    /// One row under [`CSV_HEADER`].
    pub fn csv_row(&self) -> String {
        let bound = |name: BoundName| {
            self.bounds
                .iter()
                .find(|b| b.name == name)
                .map_or_else(|| "NA".to_owned(), |b| b.log2_value.to_string())
        };
        let up_flag = self.crossing_edge.as_ref().map(|c| {
            if c.up.vacuous {
                "VACUOUS"
            } else {
                flag(Some(!c.up.failure))
            }
        });
        let udu_flag = self.xmono.as_ref().map(|x| {
            if x.hypothesis_violation.is_some() {
                "HYPOTHESIS"
            } else {
                flag(Some(!x.failure))
            }
        });
        [
            self.id.clone(),
            self.n.to_string(),
            self.edges.to_string(),
            self.k.to_string(),
            self.order.to_string(),
            flag(self.planar.as_ref().map(|p| p.ok)).to_owned(),
            flag(self.crossing_edge.as_ref().map(|c| c.regular.iter().all(|r| r.ok))).to_owned(),
            up_flag.unwrap_or("NA").to_owned(),
            udu_flag.unwrap_or("NA").to_owned(),
            if self.failed() { "FAILURE" } else { "OK" }.to_owned(),
            bound(BoundName::Thm1),
            bound(BoundName::Thm2),
            bound(BoundName::Planar),
            self.curves
                .as_ref()
                .map_or_else(|| "NA".to_owned(), |c| c.decomposition_size.to_string()),
            self.curves
                .as_ref()
                .and_then(|c| c.separator_ratio)
                .map_or_else(|| "NA".to_owned(), |r| format!("{r:.4}")),
        ]
        .join(",")
    }
}

/// An edge crossing every edge it shares no endpoint with: the designated
/// edge if set, else the first such edge with at least one crossing.
pub fn all_crossing_edge(g: &TopoGraph) -> Result<Option<EdgeId>, GraphError> {
    let cg = g.crossing_graph()?;
    if let Some(d) = g.flags.designated_edge {
        return Ok(Some(d));
    }
    Ok((0..cg.len())
        .find(|&i| {
            let e = &g.edges()[i];
            let independent = g.edges().iter().filter(|f| !f.shares_endpoint(e)).count();
            independent > 0 && cg.degree(i) == independent
        })
        .map(|i| cg.edge_ids()[i]))
}

fn regular_check(pair: &SequencePair, l: usize) -> RegularCheck {
    let m = pair.len();
    let required = m.div_ceil(4 * l);
    let exact = m <= DEFAULT_EXACT_CAP;
    let best = [&pair.s1, &pair.s2]
        .iter()
        .map(|s| {
            if exact {
                longest_l_regular_subsequence(s, l).expect("within cap").len()
            } else {
                extract_l_regular_greedy(s, l).len()
            }
        })
        .max()
        .unwrap_or(0);
    RegularCheck {
        l,
        best,
        exact,
        required,
        ok: best >= required || !exact,
    }
}

/// `up(2^{k^2+k}, 2^k)` in either sequence must come with `k` pairwise
/// crossing edges.
fn up_check(g: &TopoGraph, pair: &SequencePair, k: usize) -> Result<UpCheck, GraphError> {
    let l = 1u64.checked_shl((k * k + k) as u32).unwrap_or(u64::MAX);
    let t = 1u64 << k.min(63);
    let vacuous = l.saturating_mul(t) > pair.len() as u64;
    let mut check = UpCheck {
        l,
        t,
        vacuous,
        witness_s1: None,
        witness_s2: None,
        clique: None,
        failure: false,
    };
    if !vacuous {
        check.witness_s1 = contains_up(&pair.s1, l as usize, t as usize);
        check.witness_s2 = contains_up(&pair.s2, l as usize, t as usize);
        if check.witness_s1.is_some() || check.witness_s2.is_some() {
            check.clique = g.find_pairwise_crossing(k)?;
            check.failure = check.clique.is_none();
        }
    }
    Ok(check)
}

/// Runs every applicable check on one drawing.
pub fn verify_instance(id: &str, g: &TopoGraph, k: usize, options: &VerifyOptions) -> Result<ExperimentReport, ExperimentError> {
    let violations = g.validate();
    if let Some(v) = violations.first() {
        return Err(ExperimentError::Invalid(format!("{} violation(s), first: {v}", violations.len())));
    }
    let n = g.vertex_count();
    let edges = g.edge_count();
    let order = g.quasi_planarity_order()?;
    let mut failures = Vec::new();

    let planar = (order == 2 && n >= 3).then(|| {
        let bound = 3 * n - 6;
        PlanarCheck { bound, ok: edges <= bound }
    });
    if planar.as_ref().is_some_and(|p| !p.ok) {
        failures.push(format!("crossing-free drawing with {edges} edges exceeds 3n-6"));
    }

    let mut crossing_edge = None;
    if g.flags.simple {
        if let Some(e) = all_crossing_edge(g)? {
            let pair = construct::build_from_crossing_edge(g, e)?;
            let regular: Vec<RegularCheck> = [2, 3].iter().map(|&l| regular_check(&pair, l)).collect();
            for r in &regular {
                if !r.ok {
                    failures.push(format!(
                        "no {}-regular subsequence of length {} in S1 or S2 (best {})",
                        r.l, r.required, r.best
                    ));
                }
            }
            let up = up_check(g, &pair, k)?;
            if up.failure {
                failures.push(format!("up({}, {}) found without {k} pairwise crossing edges", up.l, up.t));
            }
            crossing_edge = Some(CrossingEdgeReport {
                edge: e,
                half_plane_disagreements: half_plane_disagreements(g, &pair)?.len(),
                pair,
                regular,
                up,
            });
        }
    }

    let mut xmono = None;
    if g.flags.x_monotone && k >= 2 {
        match construct::xmono_pipeline(g, k) {
            Ok(report) => {
                if report.failure {
                    failures.push(format!("up-down-up({}) found without {k} pairwise crossing edges", report.l));
                }
                if report.hypothesis_violation.is_none() && !report.retained_ok && order <= k {
                    failures.push(format!(
                        "pruning kept {} of {} edges, fewer than {}",
                        report.after_right,
                        report.partition.e_prime.len(),
                        report.required
                    ));
                }
                xmono = Some(report);
            }
            // Drawings with shared x-coordinates have no median line.
            Err(ConstructError::DuplicateX(..)) => {}
            Err(e) => return Err(e.into()),
        }
    }

    let mut bounds = Vec::new();
    let n128 = n as u128;
    let k32 = k as u32;
    let applies = order <= k;
    if n >= 2 && k >= 2 {
        let r = bound_report(BoundName::Thm1, n128, k32, 0, 0, &options.constants);
        if let Ok(r) = r {
            bounds.push(r.param("applies", applies && g.flags.simple).observe(edges as u64));
        }
        let r = bound_report(BoundName::Thm2, n128, k32, 0, 0, &options.constants);
        if let Ok(r) = r {
            bounds.push(r.param("applies", applies && g.flags.x_monotone).observe(edges as u64));
        }
    }
    if n >= 3 {
        if let Ok(r) = bound_report(BoundName::Planar, n128, k32, 0, 0, &options.constants) {
            bounds.push(r.param("applies", order == 2).observe(edges as u64));
        }
    }

    let curves = if options.curve_metrics && edges >= 2 {
        let set = CurveSet::new(g.edges().iter().map(|e| e.curve.clone()).collect())?;
        let t = set.max_pair_intersections().max(1);
        let (dec, stats) = decompose(&set, t, &options.decompose)?;
        let all: Vec<usize> = (0..set.len()).collect();
        let sep = set.separator(&all);
        let decomposition_valid = dec.validate(&set).is_ok();
        let separator_valid = sep.validate(&set, &all).is_ok();
        if !decomposition_valid {
            failures.push("decomposition does not validate".into());
        }
        if !separator_valid {
            failures.push("separator does not validate".into());
        }
        Some(CurveMetrics {
            m: stats.m,
            x: stats.x,
            t,
            decomposition_size: stats.size,
            decomposition_valid,
            d: stats.d,
            reference: stats.reference,
            separator_v0: sep.v0.len(),
            separator_v1: sep.v1.len(),
            separator_v2: sep.v2.len(),
            separator_ratio: sep.ratio(),
            separator_valid,
        })
    } else {
        None
    };

    Ok(ExperimentReport {
        id: id.to_owned(),
        n,
        edges,
        k,
        order,
        simple: g.flags.simple,
        x_monotone: g.flags.x_monotone,
        planar,
        crossing_edge,
        xmono,
        bounds,
        curves,
        failures,
    })
}
