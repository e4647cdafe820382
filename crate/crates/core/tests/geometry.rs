mod common;

use quasiplanar::geometry::{
    crossing_point_on_line, crossings, departure_side, frac, half_plane_side, parse_rational, proper_crossing_count, rat,
    validate_simple_pair, CrossingKind, Curve, GeometryError, Point, Side,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn poly(points: &[(i64, i64)]) -> Curve {
    Curve::from_ints(points).unwrap()
}

#[test]
fn crossing_examples() {
    let r = crossings(&poly(&[(0, 0), (2, 2)]), &poly(&[(0, 2), (2, 0)])).unwrap();
    assert_eq!(r.len(), 1);
    assert_eq!(r[0].kind, CrossingKind::ProperCrossing);
    assert_eq!(r[0].point, Point::int(1, 1));

    let r = crossings(&poly(&[(0, 0), (1, 0)]), &poly(&[(0, 0), (0, 1)])).unwrap();
    assert_eq!(r.len(), 1);
    assert_eq!(r[0].kind, CrossingKind::SharedEndpoint);
    assert_eq!(r[0].point, Point::int(0, 0));

    let e = crossings(&poly(&[(0, 0), (1, 1), (2, 0)]), &poly(&[(0, 1), (2, 1)])).unwrap_err();
    assert_eq!(e, GeometryError::Tangency(Box::new(Point::int(1, 1))));
    assert_eq!(
        crossings(&poly(&[(0, 0), (2, 0)]), &poly(&[(1, 0), (3, 0)])).unwrap_err(),
        GeometryError::Overlap
    );
}

#[test]
fn simplicity_examples() {
    assert!(validate_simple_pair(&poly(&[(0, 0), (2, 2)]), &poly(&[(0, 2), (2, 0)])).unwrap());
    assert!(validate_simple_pair(&poly(&[(0, 0), (1, 0)]), &poly(&[(0, 5), (1, 5)])).unwrap());
    let s = poly(&[(0, -1), (1, 1), (2, -1), (3, 1)]);
    let line = poly(&[(-1, 0), (4, 0)]);
    assert!(!validate_simple_pair(&s, &line).unwrap());
    assert_eq!(proper_crossing_count(&s, &line).unwrap(), 3);
}

#[test]
fn vertical_line_examples() {
    let d = poly(&[(0, 0), (2, 2)]);
    assert_eq!(crossing_point_on_line(&d, &rat(1)).unwrap(), Some(Point::int(1, 1)));
    assert_eq!(crossing_point_on_line(&d, &rat(3)).unwrap(), None);
    let p = Curve::new(vec![Point::int(0, 0), Point::int(1, 3), Point::new(rat(4), frac(7, 2))]).unwrap();
    assert_eq!(
        crossing_point_on_line(&p, &rat(2)).unwrap(),
        Some(Point::new(rat(2), frac(19, 6)))
    );
    assert!(crossing_point_on_line(&poly(&[(0, 0), (1, 1), (0, 2)]), &rat(0)).is_err());
}

#[test]
fn sides() {
    let a = poly(&[(0, 0), (2, 2)]);
    let b = poly(&[(0, 2), (2, 0)]);
    let p = Point::int(1, 1);
    assert_eq!(departure_side(&a, &b, &p), Some(Side::Right));
    assert_eq!(departure_side(&a, &b.reversed(), &p), Some(Side::Left));
    assert_eq!(half_plane_side(&a, &p, &Point::int(0, 2)), Some(Side::Left));
    assert_eq!(half_plane_side(&a, &p, &Point::int(2, 0)), Some(Side::Right));
}

#[test]
fn rationals_parse() {
    assert_eq!(parse_rational("3/6"), Some(frac(1, 2)));
    assert_eq!(parse_rational("-4"), Some(rat(-4)));
    assert_eq!(parse_rational("x"), None);
}

#[test]
fn random_segments_match_integer_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut pt = || (rng.gen_range(-20..=20), rng.gen_range(-20..=20));
    let mut checked = 0;
    while checked < 2000 {
        let (a, b, c, d) = (pt(), pt(), pt(), pt());
        if a == b || c == d {
            continue;
        }
        checked += 1;
        let (s, t) = (poly(&[a, b]), poly(&[c, d]));
        match crossings(&s, &t) {
            Ok(records) => {
                let proper = records.iter().filter(|r| r.kind == CrossingKind::ProperCrossing).count();
                assert_eq!(proper == 1, common::segments_cross_properly((a, b), (c, d)), "{a:?}{b:?} {c:?}{d:?}");
                assert_eq!(!records.is_empty(), common::segments_meet((a, b), (c, d)));
            }
            // Every degenerate contact is still a meeting point.
            Err(_) => assert!(common::segments_meet((a, b), (c, d))),
        }
    }
}
