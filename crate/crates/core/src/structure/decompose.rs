use std::collections::HashSet;

use serde::Serialize;

use super::separator::CurveSet;
use super::StructureError;
use crate::par;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DecomposeConfig {
    /// Separator constant: separators of size `c1 * sqrt(x)`.
    pub c1: f64,
    /// Size constant in `d(m, x, t)`.
    pub c: f64,
}

impl DecomposeConfig {
    pub fn with_c1(c1: f64) -> Self {
        Self {
            c1,
            c: 1.0 / (576.0 * c1 * c1),
        }
    }
}

impl Default for DecomposeConfig {
    fn default() -> Self {
        Self::with_c1(4.0)
    }
}

/// `d(m, x, t) = c*m / (t * log2 m) + x/m`; zero for `m < 2`.
pub fn potential_d(m: usize, x: usize, t: usize, c: f64) -> f64 {
    if m < 2 {
        return 0.0;
    }
    let m = m as f64;
    c * m / (t as f64 * m.log2()) + x as f64 / m
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Part {
    pub members: Vec<usize>,
    pub dominating: usize,
}

/// Mutually disjoint parts, each with a curve meeting every other member.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub parts: Vec<Part>,
    pub leftover: Vec<usize>,
}

impl Decomposition {
    /// Number of curves covered by the parts.
    pub fn size(&self) -> usize {
        self.parts.iter().map(|p| p.members.len()).sum()
    }

    /// Rechecks every invariant against the curve set.
    pub fn validate(&self, set: &CurveSet) -> Result<(), String> {
        let mut owner = vec![None; set.len()];
        for (pi, part) in self.parts.iter().enumerate() {
            if !part.members.contains(&part.dominating) {
                return Err(format!("part {pi}: dominating curve {} is not a member", part.dominating));
            }
            for &c in &part.members {
                if c >= set.len() {
                    return Err(format!("part {pi}: unknown curve {c}"));
                }
                if owner[c].replace(pi).is_some() {
                    return Err(format!("curve {c} is in two parts"));
                }
                if c != part.dominating && !set.intersect(c, part.dominating) {
                    return Err(format!("part {pi}: curve {c} misses dominating curve {}", part.dominating));
                }
            }
        }
        let leftover: HashSet<usize> = self.leftover.iter().copied().collect();
        for (c, o) in owner.iter().enumerate() {
            if o.is_some() == leftover.contains(&c) {
                return Err(format!("curve {c} must be in exactly one of parts and leftover"));
            }
        }
        for (a, pa) in self.parts.iter().enumerate() {
            for pb in &self.parts[a + 1..] {
                for &i in &pa.members {
                    if let Some(&j) = pb.members.iter().find(|&&j| set.intersect(i, j)) {
                        return Err(format!("curves {i} and {j} in different parts intersect"));
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DecomposeStats {
    pub m: usize,
    pub x: usize,
    pub t: usize,
    pub d: f64,
    pub size: usize,
    /// `m / (t * log2 m)`, the scale of the guaranteed size.
    pub reference: f64,
}

/// One decomposable subcollection of the whole set.
///
/// With `d = d(m, x, t)`: if some curve meets at least `d` others, its star is
/// returned. Otherwise the intersection graph is split by a separator and
/// both sides are decomposed recursively; the union of the two results is
/// returned unless the star is larger. Collections of at most three curves
/// are returned as their connected components.
pub fn decompose(set: &CurveSet, t: usize, config: &DecomposeConfig) -> Result<(Decomposition, DecomposeStats), StructureError> {
    if t == 0 {
        return Err(StructureError::Precondition("t must be at least 1".into()));
    }
    let worst = set.max_pair_intersections();
    if worst > t {
        return Err(StructureError::Precondition(format!(
            "a pair of curves meets {worst} times, more than t = {t}"
        )));
    }
    let all: Vec<usize> = (0..set.len()).collect();
    let mut parts = recurse(set, all, t, config);
    parts.sort_by_key(|p| p.members[0]);
    let covered: HashSet<usize> = parts.iter().flat_map(|p| p.members.iter().copied()).collect();
    let leftover = (0..set.len()).filter(|c| !covered.contains(c)).collect();
    let dec = Decomposition { parts, leftover };
    let m = set.len();
    let x = set.intersection_total(&(0..m).collect::<Vec<_>>());
    let stats = DecomposeStats {
        m,
        x,
        t,
        d: potential_d(m, x, t, config.c),
        size: dec.size(),
        reference: if m < 2 { 0.0 } else { m as f64 / (t as f64 * (m as f64).log2()) },
    };
    Ok((dec, stats))
}

fn recurse(set: &CurveSet, subset: Vec<usize>, t: usize, config: &DecomposeConfig) -> Vec<Part> {
    let m = subset.len();
    if m == 0 {
        return Vec::new();
    }
    let mask = set.mask(&subset);
    if m <= 3 {
        return set
            .components(&subset)
            .into_iter()
            .map(|members| {
                let dominating = *members
                    .iter()
                    .max_by_key(|&&c| (set.degree_in(c, &mask), std::cmp::Reverse(c)))
                    .unwrap();
                Part { members, dominating }
            })
            .collect();
    }
    let x = set.intersection_total(&subset);
    let d = potential_d(m, x, t, config.c);
    let center = *subset
        .iter()
        .max_by_key(|&&c| (set.degree_in(c, &mask), std::cmp::Reverse(c)))
        .unwrap();
    let mut star: Vec<usize> = set.neighbors(center).iter().copied().filter(|&j| mask[j]).collect();
    star.push(center);
    star.sort_unstable();
    let star = Part {
        members: star,
        dominating: center,
    };
    if (star.members.len() - 1) as f64 >= d {
        return vec![star];
    }
    let sep = set.separator(&subset);
    let (mut left, right) = par::join(
        || recurse(set, sep.v1.clone(), t, config),
        || recurse(set, sep.v2.clone(), t, config),
    );
    left.extend(right);
    let union: usize = left.iter().map(|p| p.members.len()).sum();
    if union >= star.members.len() {
        left
    } else {
        vec![star]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Curve;

    fn seg(a: (i64, i64), b: (i64, i64)) -> Curve {
        Curve::from_ints(&[a, b]).unwrap()
    }

    #[test]
    fn disjoint_curves_become_singletons() {
        let set = CurveSet::new((0..9).map(|i| seg((0, i), (5, i))).collect()).unwrap();
        let (dec, stats) = decompose(&set, 1, &DecomposeConfig::default()).unwrap();
        dec.validate(&set).unwrap();
        assert_eq!(dec.parts.len(), 9);
        assert_eq!(stats.size, 9);
        assert!(dec.leftover.is_empty());
    }

    #[test]
    fn pairwise_crossing_is_one_part() {
        let curves = (0..6)
            .map(|i: i64| seg((-100, -100 * i + i * i), (100, 100 * i + i * i)))
            .collect::<Vec<_>>();
        let set = CurveSet::new(curves).unwrap();
        let (dec, _) = decompose(&set, 1, &DecomposeConfig::default()).unwrap();
        dec.validate(&set).unwrap();
        assert_eq!(dec.parts.len(), 1);
        assert_eq!(dec.size(), 6);
    }

    #[test]
    fn constants_and_preconditions() {
        let cfg = DecomposeConfig::default();
        assert_eq!(cfg.c1, 4.0);
        assert_eq!(cfg.c, 1.0 / 9216.0);
        assert_eq!(potential_d(4, 8, 1, 0.0), 2.0);
        // An S curve meets a line three times.
        let s = Curve::from_ints(&[(0, -1), (1, 1), (2, -1), (3, 1)]).unwrap();
        let set = CurveSet::new(vec![s, seg((-1, 0), (4, 0))]).unwrap();
        assert!(decompose(&set, 2, &cfg).is_err());
        let (dec, _) = decompose(&set, 3, &cfg).unwrap();
        assert_eq!(dec.size(), 2);
    }

    #[test]
    fn validate_catches_cross_part_intersection() {
        let set = CurveSet::new(vec![seg((0, 0), (2, 2)), seg((0, 2), (2, 0))]).unwrap();
        let bad = Decomposition {
            parts: vec![
                Part { members: vec![0], dominating: 0 },
                Part { members: vec![1], dominating: 1 },
            ],
            leftover: vec![],
        };
        assert!(bad.validate(&set).is_err());
    }
}
