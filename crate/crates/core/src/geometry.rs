//! Exact plane geometry on rational coordinates.
//!
//! Curves are polylines. Every predicate reduces to the sign of a rational
//! cross product, so there is no tolerance anywhere in this module.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"`, `"p"` or a finite decimal such as `"3.25"`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Ok(r) = Rational::from_str(s) {
        return (!r.denom().is_zero()).then_some(r);
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (int, dec) = body.split_once('.')?;
    if int.is_empty() && dec.is_empty() {
        return None;
    }
    if !int.chars().chain(dec.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int}{dec}");
    let numer = BigInt::from_str(if digits.is_empty() { "0" } else { &digits }).ok()?;
    let denom = num::pow(BigInt::from(10), dec.len());
    let r = Rational::new(numer, denom);
    Some(if neg { -r } else { r })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("a curve needs at least two waypoints")]
    TooFewWaypoints,
    #[error("waypoint {0} repeats its predecessor")]
    RepeatedWaypoint(usize),
    #[error("curve intersects itself")]
    SelfIntersecting,
    #[error("curves touch without crossing at {0}")]
    Tangency(Box<Point>),
    #[error("curves share a segment")]
    Overlap,
    #[error("endpoint {0} of one curve lies in the interior of the other")]
    EndpointContact(Box<Point>),
    #[error("curve is not x-monotone")]
    NotXMonotone,
    #[error("a waypoint lies on the vertical line x = {0}")]
    Degenerate(Rational),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Self { x, y }
    }

    pub fn int(x: i64, y: i64) -> Self {
        Self::new(rat(x), rat(y))
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Direction vector between two points.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Vector {
    dx: Rational,
    dy: Rational,
}

impl Vector {
    fn between(from: &Point, to: &Point) -> Self {
        Self {
            dx: &to.x - &from.x,
            dy: &to.y - &from.y,
        }
    }

    fn cross(&self, other: &Vector) -> Rational {
        &self.dx * &other.dy - &self.dy * &other.dx
    }

    fn dot(&self, other: &Vector) -> Rational {
        &self.dx * &other.dx + &self.dy * &other.dy
    }
}

/// Sign of the cross product `(b - a) x (c - a)`: `Greater` when `c` is to
/// the left of the directed line `a -> b`.
pub fn orient(a: &Point, b: &Point, c: &Point) -> Ordering {
    Vector::between(a, b)
        .cross(&Vector::between(a, c))
        .cmp(&Rational::zero())
}

/// Closed-segment membership.
pub fn on_segment(a: &Point, b: &Point, p: &Point) -> bool {
    orient(a, b, p) == Ordering::Equal && in_range(&a.x, &b.x, &p.x) && in_range(&a.y, &b.y, &p.y)
}

fn in_range(a: &Rational, b: &Rational, v: &Rational) -> bool {
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    lo <= v && v <= hi
}

fn boxes_overlap(a1: &Point, a2: &Point, b1: &Point, b2: &Point) -> bool {
    let (ax0, ax1) = minmax(&a1.x, &a2.x);
    let (bx0, bx1) = minmax(&b1.x, &b2.x);
    if ax1 < bx0 || bx1 < ax0 {
        return false;
    }
    let (ay0, ay1) = minmax(&a1.y, &a2.y);
    let (by0, by1) = minmax(&b1.y, &b2.y);
    !(ay1 < by0 || by1 < ay0)
}

fn minmax<'a>(a: &'a Rational, b: &'a Rational) -> (&'a Rational, &'a Rational) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SegmentHit {
    None,
    Point(Point),
    Overlap,
}

/// Intersection of closed segments `p1p2` and `q1q2`.
pub fn segment_intersection(p1: &Point, p2: &Point, q1: &Point, q2: &Point) -> SegmentHit {
    if !boxes_overlap(p1, p2, q1, q2) {
        return SegmentHit::None;
    }
    let r = Vector::between(p1, p2);
    let s = Vector::between(q1, q2);
    let qp = Vector::between(p1, q1);
    let denom = r.cross(&s);
    if denom.is_zero() {
        if !qp.cross(&r).is_zero() {
            return SegmentHit::None; // parallel, not collinear
        }
        // Collinear: compare along the dominant axis.
        let key = |p: &Point| {
            if p1.x != p2.x {
                p.x.clone()
            } else {
                p.y.clone()
            }
        };
        let (a0, a1) = sorted_pair(key(p1), key(p2));
        let (b0, b1) = sorted_pair(key(q1), key(q2));
        let lo = if a0 > b0 { a0 } else { b0 };
        let hi = if a1 < b1 { a1 } else { b1 };
        return match lo.cmp(&hi) {
            Ordering::Greater => SegmentHit::None,
            Ordering::Less => SegmentHit::Overlap,
            Ordering::Equal => {
                let touch = [p1, p2, q1, q2]
                    .into_iter()
                    .find(|p| key(p) == lo)
                    .expect("touching coordinate comes from an endpoint");
                SegmentHit::Point(touch.clone())
            }
        };
    }
    let t = qp.cross(&s) / &denom;
    let u = qp.cross(&r) / &denom;
    let unit = Rational::zero()..=Rational::one();
    if unit.contains(&t) && unit.contains(&u) {
        SegmentHit::Point(Point::new(&p1.x + &t * &r.dx, &p1.y + &t * &r.dy))
    } else {
        SegmentHit::None
    }
}

fn sorted_pair(a: Rational, b: Rational) -> (Rational, Rational) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Where a point sits on a polyline.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Location {
    Waypoint(usize),
    /// Strictly inside segment `i` (from waypoint `i` to `i + 1`).
    Segment(usize),
}

/// A non-self-intersecting polyline with exact waypoints.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Curve {
    waypoints: Vec<Point>,
}

impl Curve {
    pub fn new(waypoints: Vec<Point>) -> Result<Self, GeometryError> {
        if waypoints.len() < 2 {
            return Err(GeometryError::TooFewWaypoints);
        }
        if let Some(i) = waypoints.windows(2).position(|w| w[0] == w[1]) {
            return Err(GeometryError::RepeatedWaypoint(i));
        }
        let curve = Self { waypoints };
        curve.check_simple()?;
        Ok(curve)
    }

    pub fn segment(a: Point, b: Point) -> Result<Self, GeometryError> {
        Self::new(vec![a, b])
    }

    /// Convenience constructor from integer coordinates.
    pub fn from_ints(points: &[(i64, i64)]) -> Result<Self, GeometryError> {
        Self::new(points.iter().map(|&(x, y)| Point::int(x, y)).collect())
    }

    fn check_simple(&self) -> Result<(), GeometryError> {
        let segs: Vec<_> = self.segments().collect();
        for i in 0..segs.len() {
            for j in i + 1..segs.len() {
                let hit = segment_intersection(segs[i].0, segs[i].1, segs[j].0, segs[j].1);
                let ok = match hit {
                    SegmentHit::None => true,
                    SegmentHit::Overlap => false,
                    // Consecutive segments meet exactly at their joint.
                    SegmentHit::Point(p) => j == i + 1 && p == *segs[i].1,
                };
                if !ok {
                    return Err(GeometryError::SelfIntersecting);
                }
            }
        }
        Ok(())
    }

    pub fn waypoints(&self) -> &[Point] {
        &self.waypoints
    }

    pub fn start(&self) -> &Point {
        &self.waypoints[0]
    }

    pub fn end(&self) -> &Point {
        self.waypoints.last().expect("at least two waypoints")
    }

    pub fn is_endpoint(&self, p: &Point) -> bool {
        p == self.start() || p == self.end()
    }

    pub fn segments(&self) -> impl Iterator<Item = (&Point, &Point)> {
        self.waypoints.windows(2).map(|w| (&w[0], &w[1]))
    }

    pub fn segment_count(&self) -> usize {
        self.waypoints.len() - 1
    }

    /// Waypoint x-coordinates strictly increasing or strictly decreasing.
    pub fn is_x_monotone(&self) -> bool {
        let inc = self.waypoints.windows(2).all(|w| w[0].x < w[1].x);
        let dec = self.waypoints.windows(2).all(|w| w[0].x > w[1].x);
        inc || dec
    }

    /// The same curve traversed backwards.
    pub fn reversed(&self) -> Curve {
        let mut waypoints = self.waypoints.clone();
        waypoints.reverse();
        Curve { waypoints }
    }

    pub fn locate(&self, p: &Point) -> Option<Location> {
        if let Some(i) = self.waypoints.iter().position(|w| w == p) {
            return Some(Location::Waypoint(i));
        }
        self.segments()
            .position(|(a, b)| on_segment(a, b, p))
            .map(Location::Segment)
    }

    pub fn contains_point(&self, p: &Point) -> bool {
        self.locate(p).is_some()
    }

    /// Sort key of a point on the curve: `(segment, parameter in [0,1))`,
    /// with the final endpoint mapped to `(last segment, 1)`.
    pub fn position_key(&self, p: &Point) -> Option<(usize, Rational)> {
        let last = self.segment_count() - 1;
        match self.locate(p)? {
            Location::Waypoint(i) if i <= last => Some((i, Rational::zero())),
            Location::Waypoint(_) => Some((last, Rational::one())),
            Location::Segment(i) => {
                let (a, b) = (&self.waypoints[i], &self.waypoints[i + 1]);
                let d = Vector::between(a, b);
                let t = Vector::between(a, p).dot(&d) / d.dot(&d);
                Some((i, t))
            }
        }
    }

    /// Neighbouring waypoints seen from `p`: towards the start and towards
    /// the end (either missing at an endpoint).
    fn rays_at(&self, p: &Point) -> Option<(Option<Vector>, Option<Vector>)> {
        let n = self.waypoints.len();
        match self.locate(p)? {
            Location::Waypoint(i) => Some((
                (i > 0).then(|| Vector::between(p, &self.waypoints[i - 1])),
                (i + 1 < n).then(|| Vector::between(p, &self.waypoints[i + 1])),
            )),
            Location::Segment(i) => Some((
                Some(Vector::between(p, &self.waypoints[i])),
                Some(Vector::between(p, &self.waypoints[i + 1])),
            )),
        }
    }
}

/// Which side of `self`'s local germ at a point another curve departs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// 0 for angles in `[0, pi)` measured counter-clockwise from `start`,
/// 1 for `[pi, 2pi)`.
fn half(start: &Vector, w: &Vector) -> u8 {
    let c = start.cross(w);
    if c.is_positive() || (c.is_zero() && start.dot(w).is_positive()) {
        0
    } else {
        1
    }
}

/// Compares counter-clockwise angles from `start` to `u` and to `v`.
fn ccw_angle_cmp(start: &Vector, u: &Vector, v: &Vector) -> Ordering {
    half(start, u)
        .cmp(&half(start, v))
        .then_with(|| Rational::zero().cmp(&u.cross(v)))
}

fn same_direction(u: &Vector, v: &Vector) -> bool {
    u.cross(v).is_zero() && u.dot(v).is_positive()
}

/// Side of direction `d` relative to a curve passing through a point with
/// local rays `back` (towards its start) and `fwd` (towards its end).
/// Walking forward, the left side is the counter-clockwise sector from `fwd`
/// to `back`. `None` if `d` runs along one of the rays.
fn side_of(back: &Vector, fwd: &Vector, d: &Vector) -> Option<Side> {
    if same_direction(d, back) || same_direction(d, fwd) {
        return None;
    }
    Some(if ccw_angle_cmp(fwd, d, back) == Ordering::Less {
        Side::Left
    } else {
        Side::Right
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CrossingKind {
    ProperCrossing,
    SharedEndpoint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossingRecord {
    pub point: Point,
    pub kind: CrossingKind,
}

/// All intersection points of two curves, sorted by point, classified.
pub fn crossings(a: &Curve, b: &Curve) -> Result<Vec<CrossingRecord>, GeometryError> {
    let mut points = BTreeSet::new();
    for (a1, a2) in a.segments() {
        for (b1, b2) in b.segments() {
            match segment_intersection(a1, a2, b1, b2) {
                SegmentHit::None => {}
                SegmentHit::Point(p) => {
                    points.insert(p);
                }
                SegmentHit::Overlap => return Err(GeometryError::Overlap),
            }
        }
    }
    points
        .into_iter()
        .map(|point| {
            let kind = classify(a, b, &point)?;
            Ok(CrossingRecord { point, kind })
        })
        .collect()
}

fn classify(a: &Curve, b: &Curve, p: &Point) -> Result<CrossingKind, GeometryError> {
    match (a.is_endpoint(p), b.is_endpoint(p)) {
        (true, true) => return Ok(CrossingKind::SharedEndpoint),
        (true, false) | (false, true) => return Err(GeometryError::EndpointContact(Box::new(p.clone()))),
        (false, false) => {}
    }
    let (Some(a_back), Some(a_fwd)) = a.rays_at(p).expect("p lies on a") else {
        unreachable!("interior point has two rays");
    };
    let (Some(b_back), Some(b_fwd)) = b.rays_at(p).expect("p lies on b") else {
        unreachable!("interior point has two rays");
    };
    let s1 = side_of(&a_back, &a_fwd, &b_back).ok_or(GeometryError::Overlap)?;
    let s2 = side_of(&a_back, &a_fwd, &b_fwd).ok_or(GeometryError::Overlap)?;
    if s1 == s2 {
        Err(GeometryError::Tangency(Box::new(p.clone())))
    } else {
        Ok(CrossingKind::ProperCrossing)
    }
}

/// Number of proper crossings between two curves.
pub fn proper_crossing_count(a: &Curve, b: &Curve) -> Result<usize, GeometryError> {
    Ok(crossings(a, b)?
        .iter()
        .filter(|r| r.kind == CrossingKind::ProperCrossing)
        .count())
}

/// True iff the two curves meet at most once.
pub fn validate_simple_pair(a: &Curve, b: &Curve) -> Result<bool, GeometryError> {
    Ok(crossings(a, b)?.len() <= 1)
}

/// The unique point of an x-monotone curve on the line `x = vertical_x`.
pub fn crossing_point_on_line(c: &Curve, vertical_x: &Rational) -> Result<Option<Point>, GeometryError> {
    if !c.is_x_monotone() {
        return Err(GeometryError::NotXMonotone);
    }
    if c.waypoints.iter().any(|w| &w.x == vertical_x) {
        return Err(GeometryError::Degenerate(vertical_x.clone()));
    }
    for (a, b) in c.segments() {
        let (lo, hi) = if a.x < b.x { (a, b) } else { (b, a) };
        if &lo.x < vertical_x && vertical_x < &hi.x {
            let t = (vertical_x - &lo.x) / (&hi.x - &lo.x);
            let y = &lo.y + t * (&hi.y - &lo.y);
            return Ok(Some(Point::new(vertical_x.clone(), y)));
        }
    }
    Ok(None)
}

/// For a proper crossing `p` of `a` and `b`: the side of `a` (walking from
/// its start to its end) on which `b`'s part towards its *end* leaves `p`.
pub fn departure_side(a: &Curve, b: &Curve, p: &Point) -> Option<Side> {
    let (Some(a_back), Some(a_fwd)) = a.rays_at(p)? else {
        return None;
    };
    let (_, Some(b_fwd)) = b.rays_at(p)? else {
        return None;
    };
    side_of(&a_back, &a_fwd, &b_fwd)
}

/// Side of point `q` relative to the directed tangent of `a` at `p` (the
/// segment of `a` containing `p`, or the outgoing segment at a waypoint).
pub fn half_plane_side(a: &Curve, p: &Point, q: &Point) -> Option<Side> {
    let i = match a.locate(p)? {
        Location::Segment(i) => i,
        Location::Waypoint(i) => i.min(a.segment_count() - 1),
    };
    let (s, e) = (&a.waypoints[i], &a.waypoints[i + 1]);
    let d = Vector::between(s, e);
    let w = Vector::between(p, q);
    match d.cross(&w).cmp(&Rational::zero()) {
        Ordering::Greater => Some(Side::Left),
        Ordering::Less => Some(Side::Right),
        Ordering::Equal => None,
    }
}

/// Serde helpers: rationals as `"p/q"` strings (integers and decimal strings
/// are accepted on input).
pub mod rational_serde {
    use super::*;
    use serde::de::{self, Deserializer, Visitor};
    use serde::Serializer;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        d.deserialize_any(RationalVisitor)
    }

    pub(crate) struct RationalVisitor;

    impl Visitor<'_> for RationalVisitor {
        type Value = Rational;

        fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
            f.write_str("a rational as \"p/q\" or an integer")
        }

        fn visit_str<E: de::Error>(self, v: &str) -> Result<Rational, E> {
            parse_rational(v).ok_or_else(|| E::custom(format!("invalid rational {v:?}")))
        }

        fn visit_i64<E: de::Error>(self, v: i64) -> Result<Rational, E> {
            Ok(rat(v))
        }

        fn visit_u64<E: de::Error>(self, v: u64) -> Result<Rational, E> {
            Ok(Rational::from_integer(BigInt::from(v)))
        }
    }
}

/// `[x, y]` pair encoding of a point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointPair(
    #[serde(with = "rational_serde")] pub Rational,
    #[serde(with = "rational_serde")] pub Rational,
);

impl From<&Point> for PointPair {
    fn from(p: &Point) -> Self {
        PointPair(p.x.clone(), p.y.clone())
    }
}

impl From<PointPair> for Point {
    fn from(p: PointPair) -> Self {
        Point::new(p.0, p.1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seg(a: (i64, i64), b: (i64, i64)) -> Curve {
        Curve::from_ints(&[a, b]).unwrap()
    }

    #[test]
    fn x_configuration_crosses_once() {
        let a = seg((0, 0), (2, 2));
        let b = seg((0, 2), (2, 0));
        let r = crossings(&a, &b).unwrap();
        assert_eq!(
            r,
            vec![CrossingRecord {
                point: Point::int(1, 1),
                kind: CrossingKind::ProperCrossing
            }]
        );
        assert!(validate_simple_pair(&a, &b).unwrap());
    }

    #[test]
    fn shared_endpoint() {
        let r = crossings(&seg((0, 0), (1, 0)), &seg((0, 0), (0, 1))).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].kind, CrossingKind::SharedEndpoint);
        assert_eq!(r[0].point, Point::int(0, 0));
    }

    #[test]
    fn apex_touch_is_tangency() {
        let a = Curve::from_ints(&[(0, 0), (1, 1), (2, 0)]).unwrap();
        let b = seg((0, 1), (2, 1));
        assert_eq!(crossings(&a, &b), Err(GeometryError::Tangency(Box::new(Point::int(1, 1)))));
        assert_eq!(crossings(&b, &a), Err(GeometryError::Tangency(Box::new(Point::int(1, 1)))));
    }

    #[test]
    fn crossing_through_a_bend_is_proper() {
        let a = Curve::from_ints(&[(0, 0), (1, 1), (2, 0)]).unwrap();
        let b = seg((1, 0), (1, 3));
        let r = crossings(&a, &b).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].kind, CrossingKind::ProperCrossing);
    }

    #[test]
    fn bend_meets_bend() {
        // Two V shapes touching at their apexes without crossing.
        let a = Curve::from_ints(&[(0, 0), (1, 1), (2, 0)]).unwrap();
        let b = Curve::from_ints(&[(0, 2), (1, 1), (2, 2)]).unwrap();
        assert!(matches!(crossings(&a, &b), Err(GeometryError::Tangency(_))));
        // A V and a reversed-V interleaving at the apex do cross.
        let c = Curve::from_ints(&[(0, 2), (1, 1), (0, 1)]).unwrap();
        let d = Curve::from_ints(&[(2, 2), (1, 1), (2, 1)]).unwrap();
        let r = crossings(&c, &d);
        assert!(matches!(r, Err(GeometryError::Tangency(_))), "{r:?}");
        let e = Curve::from_ints(&[(0, 2), (1, 1), (2, 0)]).unwrap();
        let f = Curve::from_ints(&[(0, 0), (1, 1), (2, 2)]).unwrap();
        assert_eq!(proper_crossing_count(&e, &f).unwrap(), 1);
    }

    #[test]
    fn overlap_and_endpoint_contact() {
        assert_eq!(
            crossings(&seg((0, 0), (2, 0)), &seg((1, 0), (3, 0))),
            Err(GeometryError::Overlap)
        );
        assert_eq!(
            crossings(&seg((0, 0), (2, 0)), &seg((1, 0), (1, 3))),
            Err(GeometryError::EndpointContact(Box::new(Point::int(1, 0))))
        );
        // Collinear but disjoint, and collinear touching at endpoints.
        assert!(crossings(&seg((0, 0), (1, 0)), &seg((2, 0), (3, 0))).unwrap().is_empty());
        let r = crossings(&seg((0, 0), (1, 0)), &seg((1, 0), (3, 0))).unwrap();
        assert_eq!(r[0].kind, CrossingKind::SharedEndpoint);
    }

    #[test]
    fn s_shape_crosses_twice() {
        let s = Curve::from_ints(&[(0, -1), (1, 1), (2, -1), (3, 1)]).unwrap();
        let h = seg((-1, 0), (4, 0));
        let r = crossings(&s, &h).unwrap();
        assert_eq!(r.len(), 3);
        assert!(!validate_simple_pair(&s, &h).unwrap());
        assert!(validate_simple_pair(&seg((0, 0), (1, 0)), &seg((0, 5), (1, 5))).unwrap());
    }

    #[test]
    fn curve_validation() {
        assert_eq!(Curve::from_ints(&[(0, 0)]), Err(GeometryError::TooFewWaypoints));
        assert_eq!(
            Curve::from_ints(&[(0, 0), (0, 0), (1, 1)]),
            Err(GeometryError::RepeatedWaypoint(0))
        );
        assert_eq!(
            Curve::from_ints(&[(0, 0), (2, 0), (1, 0)]),
            Err(GeometryError::SelfIntersecting)
        );
        assert_eq!(
            Curve::from_ints(&[(0, 0), (2, 2), (2, 0), (0, 2)]),
            Err(GeometryError::SelfIntersecting)
        );
        assert!(Curve::from_ints(&[(0, 0), (1, 1), (2, 0)]).unwrap().is_x_monotone());
        assert!(Curve::from_ints(&[(2, 0), (1, 1), (0, 0)]).unwrap().is_x_monotone());
        assert!(!Curve::from_ints(&[(0, 0), (1, 1), (0, 2)]).unwrap().is_x_monotone());
    }

    #[test]
    fn vertical_line_queries() {
        let c = seg((0, 0), (2, 2));
        assert_eq!(crossing_point_on_line(&c, &rat(1)).unwrap(), Some(Point::int(1, 1)));
        assert_eq!(crossing_point_on_line(&c, &rat(3)).unwrap(), None);
        let p = Curve::new(vec![
            Point::int(0, 0),
            Point::int(1, 3),
            Point::new(rat(4), frac(7, 2)),
        ])
        .unwrap();
        assert_eq!(
            crossing_point_on_line(&p, &rat(2)).unwrap(),
            Some(Point::new(rat(2), frac(19, 6)))
        );
        assert_eq!(
            crossing_point_on_line(&p, &rat(1)),
            Err(GeometryError::Degenerate(rat(1)))
        );
        let bent = Curve::from_ints(&[(0, 0), (1, 1), (0, 2)]).unwrap();
        assert_eq!(crossing_point_on_line(&bent, &rat(0)), Err(GeometryError::NotXMonotone));
    }

    #[test]
    fn sides() {
        let e = seg((0, 0), (4, 0));
        let f = seg((1, -1), (1, 1));
        let p = Point::int(1, 0);
        assert_eq!(departure_side(&e, &f, &p), Some(Side::Left));
        assert_eq!(departure_side(&e, &f.reversed(), &p), Some(Side::Right));
        assert_eq!(half_plane_side(&e, &p, &Point::int(1, 1)), Some(Side::Left));
        assert_eq!(half_plane_side(&e, &p, &Point::int(3, -1)), Some(Side::Right));
    }

    #[test]
    fn position_keys_order_points() {
        let c = Curve::from_ints(&[(0, 0), (2, 0), (2, 2)]).unwrap();
        let k1 = c.position_key(&Point::int(1, 0)).unwrap();
        let k2 = c.position_key(&Point::int(2, 0)).unwrap();
        let k3 = c.position_key(&Point::int(2, 1)).unwrap();
        let k4 = c.position_key(&Point::int(2, 2)).unwrap();
        assert!(k1 < k2 && k2 < k3 && k3 < k4);
        assert!(c.position_key(&Point::int(5, 5)).is_none());
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("3/4"), Some(frac(3, 4)));
        assert_eq!(parse_rational("-7"), Some(rat(-7)));
        assert_eq!(parse_rational("3.25"), Some(frac(13, 4)));
        assert_eq!(parse_rational("-.5"), Some(frac(-1, 2)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("abc"), None);
        let pp: PointPair = serde_json::from_str(r#"["1/2", 3]"#).unwrap();
        assert_eq!(Point::from(pp), Point::new(frac(1, 2), rat(3)));
    }
}
