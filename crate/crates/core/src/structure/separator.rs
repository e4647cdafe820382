use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::geometry::{self, Curve, GeometryError, Point};
use crate::par;

/// A collection of curves with all pairwise intersection points computed
/// once. Indices into the collection are the curve ids used by separators
/// and decompositions.
#[derive(Clone, Debug)]
pub struct CurveSet {
    curves: Vec<Curve>,
    neighbors: Vec<Vec<usize>>,
    points: HashMap<(usize, usize), Vec<Point>>,
}

impl CurveSet {
    /// Fails on tangencies, overlaps and endpoint contacts.
    pub fn new(curves: Vec<Curve>) -> Result<Self, GeometryError> {
        let m = curves.len();
        let pairs: Vec<(usize, usize)> = (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).collect();
        let hits = par::map(&pairs, |&(i, j)| geometry::crossings(&curves[i], &curves[j]));
        let mut neighbors = vec![Vec::new(); m];
        let mut points = HashMap::new();
        for (&(i, j), hit) in pairs.iter().zip(hits) {
            let records = hit?;
            if !records.is_empty() {
                neighbors[i].push(j);
                neighbors[j].push(i);
                points.insert((i, j), records.into_iter().map(|r| r.point).collect());
            }
        }
        Ok(Self {
            curves,
            neighbors,
            points,
        })
    }

    pub fn len(&self) -> usize {
        self.curves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.curves.is_empty()
    }

    pub fn curves(&self) -> &[Curve] {
        &self.curves
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.neighbors[i]
    }

    pub fn intersect(&self, i: usize, j: usize) -> bool {
        self.points.contains_key(&(i.min(j), i.max(j)))
    }

    pub fn intersection_points(&self, i: usize, j: usize) -> &[Point] {
        self.points.get(&(i.min(j), i.max(j))).map_or(&[], |v| v.as_slice())
    }

    pub fn intersection_count(&self, i: usize, j: usize) -> usize {
        self.intersection_points(i, j).len()
    }

    /// Largest number of intersection points over all pairs.
    pub fn max_pair_intersections(&self) -> usize {
        self.points.values().map(Vec::len).max().unwrap_or(0)
    }

    pub(crate) fn mask(&self, subset: &[usize]) -> Vec<bool> {
        let mut mask = vec![false; self.len()];
        for &i in subset {
            mask[i] = true;
        }
        mask
    }

    /// Total intersection points over pairs inside `subset`.
    pub fn intersection_total(&self, subset: &[usize]) -> usize {
        let mask = self.mask(subset);
        self.points
            .iter()
            .filter(|((i, j), _)| mask[*i] && mask[*j])
            .map(|(_, v)| v.len())
            .sum()
    }

    /// Degree of `i` counting only neighbours in `mask`.
    pub(crate) fn degree_in(&self, i: usize, mask: &[bool]) -> usize {
        self.neighbors[i].iter().filter(|&&j| mask[j]).count()
    }

    /// Connected components of the intersection graph induced on `subset`,
    /// each sorted, listed by smallest member.
    pub fn components(&self, subset: &[usize]) -> Vec<Vec<usize>> {
        let mask = self.mask(subset);
        let mut seen = vec![false; self.len()];
        let mut order = subset.to_vec();
        order.sort_unstable();
        let mut out = Vec::new();
        for &s in &order {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(i) = queue.pop_front() {
                for &j in &self.neighbors[i] {
                    if mask[j] && !seen[j] {
                        seen[j] = true;
                        comp.push(j);
                        queue.push_back(j);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Balanced separator of the intersection graph induced on `subset`.
    ///
    /// The arrangement of the curves (endpoints and intersection points as
    /// nodes, curve pieces between consecutive nodes as arcs) is planar. A
    /// BFS from a node of the heavy component assigns levels; every curve
    /// occupies an interval of consecutive levels. Removing one or two whole
    /// levels leaves the curves below, between and above mutually disjoint,
    /// and the cheapest balanced cut is chosen (a median level is always
    /// balanced). Curves through the cut form `V0`; the remaining components
    /// are packed largest first into the lighter of `V1`, `V2`.
    pub fn separator(&self, subset: &[usize]) -> SeparatorResult {
        let m = subset.len();
        let bound = balance_bound(m);
        let arr = Arrangement::new(self, subset);
        let node_comp = arr.node_components();
        let mut comp_weight: HashMap<usize, usize> = HashMap::new();
        for nodes in &arr.curve_nodes {
            *comp_weight.entry(node_comp[nodes[0]]).or_default() += 1;
        }
        let heavy = comp_weight
            .iter()
            .filter(|(_, &w)| w > bound)
            .map(|(&c, _)| c)
            .min();

        let mut in_v0 = vec![false; m];
        if let Some(h) = heavy {
            let members: Vec<usize> = (0..m).filter(|&c| node_comp[arr.curve_nodes[c][0]] == h).collect();
            let first_root = arr.curve_nodes[members[0]][0];
            let first_levels = arr.bfs(first_root);
            let far_root = (0..arr.node_count)
                .filter(|&v| first_levels[v].is_some())
                .max_by_key(|&v| (first_levels[v], std::cmp::Reverse(v)))
                .unwrap();
            let mut best: Option<(usize, Vec<bool>)> = None;
            for root in [first_root, far_root] {
                let levels = if root == first_root {
                    first_levels.clone()
                } else {
                    arr.bfs(root)
                };
                let intervals: Vec<(usize, usize)> = members
                    .iter()
                    .map(|&c| {
                        let ls = arr.curve_nodes[c].iter().map(|&v| levels[v].unwrap());
                        (ls.clone().min().unwrap(), ls.max().unwrap())
                    })
                    .collect();
                let (cost, cut) = best_cut(&intervals, bound);
                if best.as_ref().is_none_or(|(b, _)| cost < *b) {
                    let mut mark = vec![false; m];
                    for (&c, &(lo, hi)) in members.iter().zip(&intervals) {
                        mark[c] = cut.iter().any(|&l| lo <= l && l <= hi);
                    }
                    best = Some((cost, mark));
                }
            }
            in_v0 = best.unwrap().1;
        }

        let v0: Vec<usize> = (0..m).filter(|&c| in_v0[c]).map(|c| subset[c]).collect();
        let rest: Vec<usize> = (0..m).filter(|&c| !in_v0[c]).map(|c| subset[c]).collect();
        let mut comps = self.components(&rest);
        comps.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
        let (mut v1, mut v2) = (Vec::new(), Vec::new());
        for comp in comps {
            if v1.len() <= v2.len() {
                v1.extend(comp);
            } else {
                v2.extend(comp);
            }
        }
        let mut v0 = v0;
        for v in [&mut v0, &mut v1, &mut v2] {
            v.sort_unstable();
        }
        SeparatorResult {
            v0,
            v1,
            v2,
            intersection_count_x: self.intersection_total(subset),
        }
    }
}

/// `ceil(2m / 3)`.
pub(crate) fn balance_bound(m: usize) -> usize {
    (2 * m).div_ceil(3)
}

/// Cheapest set of one or two levels whose removal leaves at most `bound`
/// intervals below, between and above. Returns (curves cut, levels).
fn best_cut(intervals: &[(usize, usize)], bound: usize) -> (usize, Vec<usize>) {
    let depth = intervals.iter().map(|&(_, hi)| hi).max().unwrap_or(0) + 1;
    let mut through = vec![0i64; depth + 1];
    let mut ends_at = vec![0usize; depth];
    let mut starts_at = vec![0usize; depth];
    for &(lo, hi) in intervals {
        through[lo] += 1;
        through[hi + 1] -= 1;
        ends_at[hi] += 1;
        starts_at[lo] += 1;
    }
    for l in 1..=depth {
        through[l] += through[l - 1];
    }
    let through: Vec<usize> = through.into_iter().map(|c| c as usize).collect();
    // below[l] = #(hi < l), above[l] = #(lo > l).
    let mut below = vec![0usize; depth + 1];
    for l in 0..depth {
        below[l + 1] = below[l] + ends_at[l];
    }
    let mut above = vec![0usize; depth + 1];
    for l in (0..depth).rev() {
        above[l] = above[l + 1] + starts_at[l + 1..].first().copied().unwrap_or(0);
    }
    let mut best: Option<(usize, Vec<usize>)> = None;
    for l in 0..depth {
        if below[l] <= bound && above[l] <= bound && best.as_ref().is_none_or(|(c, _)| through[l] < *c) {
            best = Some((through[l], vec![l]));
        }
    }
    let (mut best_cost, mut best_levels) = best.expect("a median level is always balanced");
    if depth <= 512 {
        for a in 0..depth {
            if below[a] > bound || through[a] >= best_cost {
                continue;
            }
            for b in a + 1..depth {
                if above[b] > bound || through[b] >= best_cost {
                    continue;
                }
                let mut cost = 0;
                let mut middle = 0;
                for &(lo, hi) in intervals {
                    if (lo <= a && a <= hi) || (lo <= b && b <= hi) {
                        cost += 1;
                    } else if lo > a && hi < b {
                        middle += 1;
                    }
                }
                if middle <= bound && cost < best_cost {
                    best_cost = cost;
                    best_levels = vec![a, b];
                }
            }
        }
    }
    (best_cost, best_levels)
}

/// Planarization of a curve subset. Curves are addressed by their position
/// in the subset.
struct Arrangement {
    node_count: usize,
    adj: Vec<Vec<usize>>,
    curve_nodes: Vec<Vec<usize>>,
}

impl Arrangement {
    fn new(set: &CurveSet, subset: &[usize]) -> Self {
        let mask = set.mask(subset);
        let mut ids: HashMap<Point, usize> = HashMap::new();
        let mut adj: Vec<Vec<usize>> = Vec::new();
        let mut curve_nodes = Vec::with_capacity(subset.len());
        for &c in subset {
            let curve = &set.curves[c];
            let mut pts: Vec<&Point> = vec![curve.start(), curve.end()];
            for &j in &set.neighbors[c] {
                if mask[j] {
                    pts.extend(set.intersection_points(c, j));
                }
            }
            let mut keyed: Vec<_> = pts
                .into_iter()
                .map(|p| (curve.position_key(p).expect("intersection lies on the curve"), p))
                .collect();
            keyed.sort();
            keyed.dedup_by(|a, b| a.1 == b.1);
            let nodes: Vec<usize> = keyed
                .into_iter()
                .map(|(_, p)| {
                    let next = ids.len();
                    *ids.entry(p.clone()).or_insert_with(|| {
                        adj.push(Vec::new());
                        next
                    })
                })
                .collect();
            for w in nodes.windows(2) {
                adj[w[0]].push(w[1]);
                adj[w[1]].push(w[0]);
            }
            curve_nodes.push(nodes);
        }
        Self {
            node_count: ids.len(),
            adj,
            curve_nodes,
        }
    }

    fn node_components(&self) -> Vec<usize> {
        let mut comp = vec![usize::MAX; self.node_count];
        for s in 0..self.node_count {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = s;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adj[v] {
                    if comp[w] == usize::MAX {
                        comp[w] = s;
                        queue.push_back(w);
                    }
                }
            }
        }
        comp
    }

    fn bfs(&self, root: usize) -> Vec<Option<usize>> {
        let mut level = vec![None; self.node_count];
        level[root] = Some(0);
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            let next = level[v].unwrap() + 1;
            for &w in &self.adj[v] {
                if level[w].is_none() {
                    level[w] = Some(next);
                    queue.push_back(w);
                }
            }
        }
        level
    }
}

/// `V0 ∪ V1 ∪ V2` partition of a curve collection (by index).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeparatorResult {
    pub v0: Vec<usize>,
    pub v1: Vec<usize>,
    pub v2: Vec<usize>,
    pub intersection_count_x: usize,
}

impl SeparatorResult {
    /// `|V0| / sqrt(x)`, or `None` when there are no intersections.
    pub fn ratio(&self) -> Option<f64> {
        (self.intersection_count_x > 0).then(|| self.v0.len() as f64 / (self.intersection_count_x as f64).sqrt())
    }

    /// Rechecks cover, balance and separation against the curve set by
    /// direct pairwise inspection.
    pub fn validate(&self, set: &CurveSet, subset: &[usize]) -> Result<(), String> {
        let mut all: Vec<usize> = self.v0.iter().chain(&self.v1).chain(&self.v2).copied().collect();
        all.sort_unstable();
        let mut expected = subset.to_vec();
        expected.sort_unstable();
        if all != expected {
            return Err("V0, V1, V2 do not partition the input".into());
        }
        let bound = balance_bound(subset.len());
        if self.v1.len() > bound || self.v2.len() > bound {
            return Err(format!(
                "unbalanced: |V1| = {}, |V2| = {}, bound {bound}",
                self.v1.len(),
                self.v2.len()
            ));
        }
        for &a in &self.v1 {
            for &b in &self.v2 {
                let hit = geometry::crossings(&set.curves[a], &set.curves[b]).map_err(|e| e.to_string())?;
                if !hit.is_empty() {
                    return Err(format!("curves {a} (V1) and {b} (V2) intersect"));
                }
            }
        }
        Ok(())
    }
}

/// Separator of a whole curve list.
pub fn curve_separator(curves: &[Curve]) -> Result<SeparatorResult, GeometryError> {
    let set = CurveSet::new(curves.to_vec())?;
    let all: Vec<usize> = (0..set.len()).collect();
    Ok(set.separator(&all))
}
