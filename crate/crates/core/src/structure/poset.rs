use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::StructureError;
use crate::geometry::{rational_serde, Rational};

/// A strict partial order on `0..n`, stored as bit rows (`row[i]` = the
/// elements above `i`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

impl Poset {
    /// Builds the order from a relation and checks irreflexivity and
    /// transitivity (antisymmetry follows from those two).
    pub fn from_relation(n: usize, less: impl Fn(usize, usize) -> bool) -> Result<Self, StructureError> {
        let words = n.div_ceil(64).max(1);
        let mut rows = vec![0u64; n * words];
        for i in 0..n {
            for j in 0..n {
                if less(i, j) {
                    rows[i * words + j / 64] |= 1 << (j % 64);
                }
            }
        }
        let p = Self { n, words, rows };
        p.check()?;
        Ok(p)
    }

    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self, StructureError> {
        let set: HashSet<(usize, usize)> = pairs.iter().copied().collect();
        Self::from_relation(n, |i, j| set.contains(&(i, j)))
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.rows[i * self.words..(i + 1) * self.words]
    }

    fn check(&self) -> Result<(), StructureError> {
        for i in 0..self.n {
            if self.less(i, i) {
                return Err(StructureError::NotAPoset((i, i, i)));
            }
            for j in self.above(i) {
                // Everything above j must be above i.
                let (ri, rj) = (self.row(i), self.row(j));
                if let Some(w) = (0..self.words).find(|&w| rj[w] & !ri[w] != 0) {
                    let bit = (rj[w] & !ri[w]).trailing_zeros() as usize;
                    return Err(StructureError::NotAPoset((i, j, w * 64 + bit)));
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn less(&self, i: usize, j: usize) -> bool {
        self.rows[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.less(i, j) || self.less(j, i)
    }

    pub fn above(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&j| self.less(i, j))
    }

    pub fn is_chain(&self, elems: &[usize]) -> bool {
        elems
            .iter()
            .enumerate()
            .all(|(a, &i)| elems[a + 1..].iter().all(|&j| self.comparable(i, j)))
    }

    pub fn is_antichain(&self, elems: &[usize]) -> bool {
        elems
            .iter()
            .enumerate()
            .all(|(a, &i)| elems[a + 1..].iter().all(|&j| i != j && !self.comparable(i, j)))
    }

    /// Mirsky heights: `h[i]` = number of elements on a longest chain ending
    /// at `i`. Elements of equal height form an antichain.
    pub fn heights(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.n).collect();
        let below_count: Vec<usize> = (0..self.n)
            .map(|j| (0..self.n).filter(|&i| self.less(i, j)).count())
            .collect();
        // A strict predecessor has strictly fewer predecessors.
        order.sort_by_key(|&i| below_count[i]);
        let mut h = vec![1; self.n];
        for &j in &order {
            for i in 0..self.n {
                if self.less(i, j) {
                    h[j] = h[j].max(h[i] + 1);
                }
            }
        }
        h
    }

    /// A longest chain, listed bottom to top.
    pub fn longest_chain(&self) -> Vec<usize> {
        if self.n == 0 {
            return Vec::new();
        }
        let h = self.heights();
        let mut top = (0..self.n).max_by_key(|&i| (h[i], std::cmp::Reverse(i))).unwrap();
        let mut chain = vec![top];
        while h[top] > 1 {
            top = (0..self.n)
                .find(|&i| self.less(i, top) && h[i] + 1 == h[top])
                .expect("height has a witness");
            chain.push(top);
        }
        chain.reverse();
        chain
    }
}

/// Maximum matching from "lower copy" to "upper copy" along `<`.
fn matching(p: &Poset) -> Vec<Option<usize>> {
    let n = p.len();
    let adj: Vec<Vec<usize>> = (0..n).map(|i| p.above(i).collect()).collect();
    let mut match_up: Vec<Option<usize>> = vec![None; n];
    fn augment(i: usize, adj: &[Vec<usize>], seen: &mut [bool], match_up: &mut [Option<usize>]) -> bool {
        for &j in &adj[i] {
            if !seen[j] {
                seen[j] = true;
                if match_up[j].is_none_or(|i2| augment(i2, adj, seen, match_up)) {
                    match_up[j] = Some(i);
                    return true;
                }
            }
        }
        false
    }
    for i in 0..n {
        let mut seen = vec![false; n];
        augment(i, &adj, &mut seen, &mut match_up);
    }
    match_up
}

/// Minimum chain cover: each matched pair `i -> j` links `i` directly below
/// `j` in a chain, so `#chains = n - |matching|`.
pub fn chain_cover(p: &Poset) -> Vec<Vec<usize>> {
    let n = p.len();
    let match_up = matching(p);
    let mut next = vec![None; n];
    for (j, i) in match_up.iter().enumerate() {
        if let Some(i) = *i {
            next[i] = Some(j);
        }
    }
    (0..n)
        .filter(|&j| match_up[j].is_none())
        .map(|start| {
            let mut chain = vec![start];
            while let Some(j) = next[*chain.last().unwrap()] {
                chain.push(j);
            }
            chain
        })
        .collect()
}

/// A maximum antichain, from a minimum vertex cover of the matching graph
/// (König): elements with neither copy in the cover.
pub fn max_antichain(p: &Poset) -> Vec<usize> {
    let n = p.len();
    let match_up = matching(p);
    let mut match_down = vec![None; n];
    for (j, i) in match_up.iter().enumerate() {
        if let Some(i) = *i {
            match_down[i] = Some(j);
        }
    }
    // Alternating search from unmatched lower copies.
    let mut lower_seen = vec![false; n];
    let mut upper_seen = vec![false; n];
    let mut queue: VecDeque<usize> = (0..n).filter(|&i| match_down[i].is_none()).collect();
    for &i in &queue {
        lower_seen[i] = true;
    }
    while let Some(i) = queue.pop_front() {
        for j in p.above(i) {
            if !upper_seen[j] {
                upper_seen[j] = true;
                if let Some(i2) = match_up[j] {
                    if !lower_seen[i2] {
                        lower_seen[i2] = true;
                        queue.push_back(i2);
                    }
                }
            }
        }
    }
    // Cover = unreached lower copies + reached upper copies.
    (0..n).filter(|&i| lower_seen[i] && !upper_seen[i]).collect()
}

/// An arc of the vertical-line construction: `rank` is its position along
/// the line, `x` the x-coordinate of the vertex it emanates from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arc {
    pub id: u32,
    pub rank: usize,
    #[serde(with = "rational_serde")]
    pub x: Rational,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum OrderKind {
    Prec1,
    Prec2,
}

/// Unordered pairs of arc ids that intersect.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CrossingPairs(HashSet<(u32, u32)>);

impl CrossingPairs {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, a: u32, b: u32) {
        self.0.insert((a.min(b), a.max(b)));
    }

    pub fn contains(&self, a: u32, b: u32) -> bool {
        self.0.contains(&(a.min(b), a.max(b)))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl FromIterator<(u32, u32)> for CrossingPairs {
    fn from_iter<I: IntoIterator<Item = (u32, u32)>>(iter: I) -> Self {
        let mut out = Self::new();
        for (a, b) in iter {
            out.insert(a, b);
        }
        out
    }
}

/// `a_i <1 a_j` iff rank i < rank j, x_i < x_j, arcs disjoint;
/// `a_i <2 a_j` the same with x_i > x_j.
#[derive(Clone, Debug)]
pub struct ArcPoset {
    pub arcs: Vec<Arc>,
    pub kind: OrderKind,
    pub poset: Poset,
}

fn arc_less(kind: OrderKind, a: &Arc, b: &Arc, crossings: &CrossingPairs) -> bool {
    let x_ok = match kind {
        OrderKind::Prec1 => a.x < b.x,
        OrderKind::Prec2 => a.x > b.x,
    };
    a.rank < b.rank && x_ok && !crossings.contains(a.id, b.id)
}

impl ArcPoset {
    pub fn new(arcs: Vec<Arc>, crossings: &CrossingPairs, kind: OrderKind) -> Result<Self, StructureError> {
        let poset = Poset::from_relation(arcs.len(), |i, j| arc_less(kind, &arcs[i], &arcs[j], crossings))?;
        Ok(Self { arcs, kind, poset })
    }

    pub fn ids(&self, elems: &[usize]) -> Vec<u32> {
        elems.iter().map(|&i| self.arcs[i].id).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "arcs", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum DilworthOutcome {
    CrossingClique(Vec<u32>),
    Chain1(Vec<u32>),
    Chain2(Vec<u32>),
}

impl DilworthOutcome {
    pub fn arcs(&self) -> &[u32] {
        match self {
            DilworthOutcome::CrossingClique(a) | DilworthOutcome::Chain1(a) | DilworthOutcome::Chain2(a) => a,
        }
    }

    /// Rechecks the certificate against the defining relations.
    pub fn verify(&self, arcs: &[Arc], crossings: &CrossingPairs) -> bool {
        let Some(elems) = self
            .arcs()
            .iter()
            .map(|id| arcs.iter().find(|a| a.id == *id))
            .collect::<Option<Vec<_>>>()
        else {
            return false;
        };
        let pairwise = |rel: &dyn Fn(&Arc, &Arc) -> bool| {
            elems
                .iter()
                .enumerate()
                .all(|(i, a)| elems[i + 1..].iter().all(|b| a.id != b.id && rel(a, b)))
        };
        match self {
            DilworthOutcome::CrossingClique(_) => pairwise(&|a, b| crossings.contains(a.id, b.id)),
            DilworthOutcome::Chain1(_) => pairwise(&|a, b| arc_less(OrderKind::Prec1, a, b, crossings)),
            DilworthOutcome::Chain2(_) => pairwise(&|a, b| arc_less(OrderKind::Prec2, a, b, crossings)),
        }
    }
}

/// Among `(k-1)^3 + 1` arcs in which any two arcs incomparable under both
/// orders cross, finds `k` pairwise crossing arcs or a `k`-chain in one of
/// the orders.
///
/// Mirsky levels of `<1` number fewer than `k` unless a `k`-chain exists, so
/// one level holds `(k-1)^2 + 1` arcs; inside it the same step on `<2` leaves
/// `k` arcs incomparable in both orders.
pub fn dilworth_triple(arcs: &[Arc], crossings: &CrossingPairs, k: usize) -> Result<DilworthOutcome, StructureError> {
    if k < 2 {
        return Err(StructureError::Precondition(format!("k = {k} must be at least 2")));
    }
    let need = (k - 1).pow(3) + 1;
    if arcs.len() < need {
        return Err(StructureError::Precondition(format!(
            "{} arcs given, {need} needed for k = {k}",
            arcs.len()
        )));
    }
    let ids: HashSet<u32> = arcs.iter().map(|a| a.id).collect();
    let ranks: HashSet<usize> = arcs.iter().map(|a| a.rank).collect();
    if ids.len() != arcs.len() || ranks.len() != arcs.len() {
        return Err(StructureError::Precondition("arc ids and ranks must be distinct".into()));
    }
    for (i, a) in arcs.iter().enumerate() {
        for b in &arcs[i + 1..] {
            let comparable = [OrderKind::Prec1, OrderKind::Prec2]
                .iter()
                .any(|&kind| arc_less(kind, a, b, crossings) || arc_less(kind, b, a, crossings));
            if !comparable && !crossings.contains(a.id, b.id) {
                return Err(StructureError::Precondition(format!(
                    "arcs {} and {} are incomparable in both orders but do not cross",
                    a.id, b.id
                )));
            }
        }
    }

    let by_rank = |mut v: Vec<u32>| {
        v.sort_by_key(|id| arcs.iter().find(|a| a.id == *id).map(|a| a.rank));
        v
    };
    let p1 = ArcPoset::new(arcs.to_vec(), crossings, OrderKind::Prec1)?;
    let chain = p1.poset.longest_chain();
    if chain.len() >= k {
        return Ok(DilworthOutcome::Chain1(by_rank(p1.ids(&chain[..k]))));
    }
    let level = largest_level(&p1.poset);
    let sub: Vec<Arc> = level.iter().map(|&i| arcs[i].clone()).collect();
    let p2 = ArcPoset::new(sub, crossings, OrderKind::Prec2)?;
    let chain = p2.poset.longest_chain();
    if chain.len() >= k {
        return Ok(DilworthOutcome::Chain2(by_rank(p2.ids(&chain[..k]))));
    }
    let level = largest_level(&p2.poset);
    debug_assert!(level.len() >= k);
    let outcome = DilworthOutcome::CrossingClique(by_rank(p2.ids(&level[..k])));
    debug_assert!(outcome.verify(arcs, crossings));
    Ok(outcome)
}

fn largest_level(p: &Poset) -> Vec<usize> {
    let h = p.heights();
    let top = h.iter().copied().max().unwrap_or(0);
    (1..=top)
        .map(|lvl| (0..p.len()).filter(|&i| h[i] == lvl).collect::<Vec<_>>())
        .max_by_key(|v| v.len())
        .unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::rat;

    fn total(n: usize) -> Poset {
        Poset::from_relation(n, |i, j| i < j).unwrap()
    }

    #[test]
    fn total_order_and_antichain() {
        let p = total(5);
        assert_eq!(chain_cover(&p), vec![vec![0, 1, 2, 3, 4]]);
        assert_eq!(max_antichain(&p).len(), 1);
        let a = Poset::from_relation(5, |_, _| false).unwrap();
        assert_eq!(chain_cover(&a).len(), 5);
        assert_eq!(max_antichain(&a), vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn not_a_poset() {
        assert_eq!(
            Poset::from_pairs(3, &[(0, 1), (1, 2)]),
            Err(StructureError::NotAPoset((0, 1, 2)))
        );
        assert_eq!(Poset::from_pairs(2, &[(1, 1)]), Err(StructureError::NotAPoset((1, 1, 1))));
        assert!(matches!(
            Poset::from_pairs(2, &[(0, 1), (1, 0)]),
            Err(StructureError::NotAPoset(_))
        ));
    }

    #[test]
    fn cover_of_two_chains_with_link() {
        // 0<1<2, 3<4, 0<4.
        let p = Poset::from_pairs(5, &[(0, 1), (0, 2), (1, 2), (3, 4), (0, 4)]).unwrap();
        let cover = chain_cover(&p);
        assert_eq!(cover.len(), 2);
        assert!(cover.iter().all(|c| p.is_chain(c)));
        let anti = max_antichain(&p);
        assert_eq!(anti.len(), 2);
        assert!(p.is_antichain(&anti));
        assert_eq!(p.longest_chain(), vec![0, 1, 2]);
    }

    fn arc(id: u32, rank: usize, x: i64) -> Arc {
        Arc { id, rank, x: rat(x) }
    }

    #[test]
    fn dilworth_small_cases() {
        let mut cross = CrossingPairs::new();
        cross.insert(0, 1);
        let two = [arc(0, 1, 0), arc(1, 2, 1)];
        assert_eq!(
            dilworth_triple(&two, &cross, 2).unwrap(),
            DilworthOutcome::CrossingClique(vec![0, 1])
        );
        assert_eq!(
            dilworth_triple(&two, &CrossingPairs::new(), 2).unwrap(),
            DilworthOutcome::Chain1(vec![0, 1])
        );
        let down = [arc(0, 1, 1), arc(1, 2, 0)];
        assert_eq!(
            dilworth_triple(&down, &CrossingPairs::new(), 2).unwrap(),
            DilworthOutcome::Chain2(vec![0, 1])
        );
    }

    #[test]
    fn dilworth_preconditions() {
        let same_x = [arc(0, 1, 0), arc(1, 2, 0)];
        assert!(matches!(
            dilworth_triple(&same_x, &CrossingPairs::new(), 2),
            Err(StructureError::Precondition(_))
        ));
        assert!(matches!(
            dilworth_triple(&same_x[..1], &CrossingPairs::new(), 2),
            Err(StructureError::Precondition(_))
        ));
    }

    #[test]
    fn dilworth_finds_clique_when_orders_are_short() {
        // 9 arcs, every pair crosses except a few: no chain of length 3.
        let arcs: Vec<Arc> = (0..9).map(|i| arc(i, i as usize, (i as i64 * 7) % 9)).collect();
        let cross: CrossingPairs = (0..9u32).flat_map(|a| (a + 1..9).map(move |b| (a, b))).collect();
        let out = dilworth_triple(&arcs, &cross, 3).unwrap();
        assert!(matches!(out, DilworthOutcome::CrossingClique(_)));
        assert!(out.verify(&arcs, &cross));
    }
}
