use num::{BigRational, Signed, Zero};
use quasiplanar::construct::{
    build_from_crossing_edge, build_from_vertical_line, crossings_along, figure_one, half_plane_disagreements,
    median_line_partition, xmono_pipeline, Provenance,
};
use quasiplanar::generate::{generate, Family, GeneratorSpec};
use quasiplanar::geometry::{rat, Point};
use quasiplanar::topograph::{Flags, TopoGraphBuilder};

fn cross(o: &Point, a: &Point, b: &Point) -> BigRational {
    (&a.x - &o.x) * (&b.y - &o.y) - (&a.y - &o.y) * (&b.x - &o.x)
}

#[test]
fn figure_one_pair() {
    let g = figure_one();
    let pair = build_from_crossing_edge(&g, 0).unwrap();
    assert_eq!(pair.s1.symbols(), &[1, 3, 4, 3, 2]);
    assert_eq!(pair.s2.symbols(), &[2, 2, 1, 5, 5]);
    assert_eq!(pair.provenance, Provenance::AllCrossingEdge { edge: 0 });
    assert!(pair.is_consistent(&g));
}

#[test]
fn single_crossing_edge() {
    let mut b = TopoGraphBuilder::new().flags(Flags {
        simple: true,
        ..Flags::default()
    });
    b.vertex(0, Point::int(0, 0))
        .vertex(1, Point::int(4, 0))
        .vertex(2, Point::int(2, -1))
        .vertex(3, Point::int(2, 1));
    b.edge(0, 0, 1).unwrap().edge(1, 2, 3).unwrap();
    let g = b.build().unwrap();
    let pair = build_from_crossing_edge(&g, 0).unwrap();
    // Walking from (0,0) to (4,0), vertex 3 is on the left.
    assert_eq!(pair.s1.symbols(), &[3]);
    assert_eq!(pair.s2.symbols(), &[2]);
    assert!(half_plane_disagreements(&g, &pair).unwrap().is_empty());
}

#[test]
fn left_terms_lie_left_of_the_base_edge() {
    let mut pairs = 0;
    for seed in 0..30 {
        let Ok(g) = generate(&GeneratorSpec::new(Family::CrossingEdge {
            n: 16,
            edge_count: 24,
            seed,
            crosser_k: None,
        })) else {
            continue;
        };
        let base = g.edge(0).unwrap();
        let (a, b) = (base.curve.start().clone(), base.curve.end().clone());
        let pair = build_from_crossing_edge(&g, 0).unwrap();
        let along = crossings_along(&g, 0).unwrap();
        assert_eq!(along.len(), pair.len());
        for (i, c) in along.iter().enumerate() {
            assert_eq!(c.edge, pair.order[i]);
            assert!(cross(&a, &b, &c.point).is_zero());
            assert!(cross(&a, &b, g.point(pair.s1.symbols()[i])).is_positive());
            assert!(cross(&a, &b, g.point(pair.s2.symbols()[i])).is_negative());
        }
        // Crossing points run from the start of the base edge to its end.
        let dist = |p: &Point| (&p.x - &a.x) * (&b.x - &a.x) + (&p.y - &a.y) * (&b.y - &a.y);
        assert!(along.windows(2).all(|w| dist(&w[0].point) < dist(&w[1].point)));
        pairs += 1;
    }
    assert!(pairs >= 20);
}

fn xmono(points: &[(u32, i64, i64)], edges: &[(u32, u32, u32)]) -> quasiplanar::TopoGraph {
    let mut b = TopoGraphBuilder::new().flags(Flags {
        x_monotone: true,
        simple: true,
        designated_edge: None,
    });
    for &(id, x, y) in points {
        b.vertex(id, Point::int(x, y));
    }
    for &(id, u, v) in edges {
        b.edge(id, u, v).unwrap();
    }
    b.build().unwrap()
}

#[test]
fn median_partition_examples() {
    let g = xmono(&[(0, 0, 0), (1, 1, 5), (2, 2, 5), (3, 3, 0)], &[(0, 0, 3)]);
    let p = median_line_partition(&g).unwrap();
    assert_eq!(p.v1.len(), 2);
    assert_eq!(p.e_prime, vec![0]);

    let g = xmono(&[(0, 0, 0), (1, 1, 5), (2, 2, 5), (3, 3, 0)], &[(0, 0, 1)]);
    let p = median_line_partition(&g).unwrap();
    assert!(p.e_prime.is_empty());
    assert_eq!(p.e1, vec![0]);
}

#[test]
fn random_partitions_are_consistent() {
    for seed in 0..20 {
        let g = generate(&GeneratorSpec::new(Family::RandomXmonotone {
            n: 15,
            edge_count: 25,
            seed,
        }))
        .unwrap();
        let p = median_line_partition(&g).unwrap();
        assert_eq!(p.e1.len() + p.e2.len() + p.e_prime.len(), g.edge_count());
        assert_eq!(p.v1.len(), 7);
        let left = |v: u32| g.point(v).x < p.line_x;
        for &e in &p.e_prime {
            let e = g.edge(e).unwrap();
            assert_ne!(left(e.u), left(e.v));
        }
        for &e in &p.e1 {
            let e = g.edge(e).unwrap();
            assert!(left(e.u) && left(e.v));
        }
        let pair = build_from_vertical_line(&g, &p.line_x, &p.e_prime).unwrap();
        assert!(pair.s1.symbols().iter().all(|&v| left(v)));
        assert!(pair.s2.symbols().iter().all(|&v| !left(v)));
    }
}

#[test]
fn vertical_line_examples() {
    // Edge 1 passes above edge 0 at x = 2.
    let g = xmono(
        &[(0, 0, 1), (1, 1, 2), (2, 4, 1), (3, 5, 2)],
        &[(0, 0, 2), (1, 1, 3)],
    );
    let pair = build_from_vertical_line(&g, &rat(2), &[1, 0]).unwrap();
    assert_eq!(pair.s1.symbols(), &[0, 1]);
    assert_eq!(pair.s2.symbols(), &[2, 3]);
    assert_eq!(pair.order, vec![0, 1]);
    let single = build_from_vertical_line(&g, &rat(2), &[1]).unwrap();
    assert_eq!(single.s1.symbols(), &[1]);
}

#[test]
fn crossing_free_pipeline() {
    let g = generate(&GeneratorSpec::new(Family::Thinned {
        base: Box::new(Family::RandomXmonotone {
            n: 16,
            edge_count: 30,
            seed: 3,
        }),
        k: 2,
        seed: 3,
    }))
    .unwrap();
    assert_eq!(g.quasi_planarity_order().unwrap(), 2);
    let r = xmono_pipeline(&g, 2).unwrap();
    assert_eq!(r.after_left, r.partition.e_prime.len());
    assert_eq!(r.after_right, r.partition.e_prime.len());
    assert!(r.witness_s1.is_none() && r.witness_s2.is_none());
    assert!(!r.failure);
}
