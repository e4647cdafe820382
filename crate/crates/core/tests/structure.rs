mod common;

use quasiplanar::geometry::{frac, rat, Curve, Point};
use quasiplanar::structure::{
    chain_cover, curve_separator, decompose, dilworth_triple, max_antichain, prune_incomparability, Arc, CrossingPairs,
    CurveSet, DecomposeConfig, DilworthOutcome, LineSide, Poset, StructureError,
};
use quasiplanar::topograph::{Flags, TopoGraphBuilder};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn seg(a: (i64, i64), b: (i64, i64)) -> Curve {
    Curve::from_ints(&[a, b]).unwrap()
}

#[test]
fn poset_examples() {
    let total = Poset::from_relation(5, |i, j| i < j).unwrap();
    assert_eq!(chain_cover(&total).len(), 1);
    let anti = Poset::from_relation(5, |_, _| false).unwrap();
    assert_eq!(chain_cover(&anti).len(), 5);
    assert_eq!(max_antichain(&anti).len(), 5);
    match Poset::from_pairs(3, &[(0, 1), (1, 2)]) {
        Err(StructureError::NotAPoset(w)) => assert_eq!(w, (0, 1, 2)),
        other => panic!("expected a transitivity witness, got {other:?}"),
    }
}

#[test]
fn random_posets_against_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..200 {
        let n = rng.gen_range(1..=12);
        // Dominance order of random points is a poset.
        let pts: Vec<(u32, u32)> = (0..n).map(|_| (rng.gen_range(0..8), rng.gen_range(0..8))).collect();
        let less = |i: usize, j: usize| i != j && pts[i].0 <= pts[j].0 && pts[i].1 <= pts[j].1 && pts[i] != pts[j];
        let p = Poset::from_relation(n, less).unwrap();
        let want = common::max_antichain(n, &less);
        assert_eq!(chain_cover(&p).len(), want);
        let a = max_antichain(&p);
        assert_eq!(a.len(), want);
        assert!(p.is_antichain(&a));
        assert_eq!(p.longest_chain().len(), p.heights().into_iter().max().unwrap_or(0));
    }
}

fn arc(id: u32, rank: usize, x: i64) -> Arc {
    Arc { id, rank, x: rat(x) }
}

#[test]
fn dilworth_examples() {
    let crossing: CrossingPairs = [(1, 2)].into_iter().collect();
    let out = dilworth_triple(&[arc(1, 1, 0), arc(2, 2, 0)], &crossing, 2).unwrap();
    assert!(matches!(out, DilworthOutcome::CrossingClique(_)));
    let out = dilworth_triple(&[arc(1, 1, 0), arc(2, 2, 1)], &CrossingPairs::new(), 2).unwrap();
    assert_eq!(out, DilworthOutcome::Chain1(vec![1, 2]));
    assert!(dilworth_triple(&[arc(1, 1, 0)], &CrossingPairs::new(), 2).is_err());
}

#[test]
fn dilworth_random_families() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut tested = 0;
    for round in 0..2000 {
        let k = 3;
        let n = rng.gen_range(9..=14);
        let mut ranks: Vec<usize> = (0..n).collect();
        ranks.shuffle(&mut rng);
        let arcs: Vec<Arc> = (0..n)
            .map(|i| Arc {
                id: 100 + i as u32,
                rank: ranks[i],
                x: frac(rng.gen_range(0..6), 1),
            })
            .collect();
        let density = rng.gen_range(0.0..0.8);
        let mut crossing = CrossingPairs::new();
        for i in 0..n {
            for j in i + 1..n {
                // Arcs at equal x are incomparable in both orders, so they must cross.
                if arcs[i].x == arcs[j].x || rng.gen_bool(density) {
                    crossing.insert(arcs[i].id, arcs[j].id);
                }
            }
        }
        let cross = |a: &Arc, b: &Arc| crossing.contains(a.id, b.id);
        let prec1 = |a: &Arc, b: &Arc| a.rank < b.rank && a.x < b.x && !cross(a, b);
        let prec2 = |a: &Arc, b: &Arc| a.rank < b.rank && a.x > b.x && !cross(a, b);
        // Geometric families order transitively; random crossing sets may not.
        let transitive = |rel: &dyn Fn(&Arc, &Arc) -> bool| {
            arcs.iter().all(|a| arcs.iter().all(|b| arcs.iter().all(|c| !(rel(a, b) && rel(b, c)) || rel(a, c))))
        };
        if !transitive(&prec1) || !transitive(&prec2) {
            continue;
        }
        tested += 1;
        let out = dilworth_triple(&arcs, &crossing, k).unwrap();
        let mut picked: Vec<&Arc> = out.arcs().iter().map(|id| arcs.iter().find(|a| a.id == *id).unwrap()).collect();
        picked.sort_by_key(|a| a.rank);
        assert_eq!(picked.len(), k);
        let rel: &dyn Fn(&Arc, &Arc) -> bool = match out {
            DilworthOutcome::CrossingClique(_) => &cross,
            DilworthOutcome::Chain1(_) => &prec1,
            DilworthOutcome::Chain2(_) => &prec2,
        };
        for i in 0..k {
            for j in i + 1..k {
                assert!(rel(picked[i], picked[j]), "round {round}: {out:?}");
            }
        }
    }
    assert!(tested >= 100, "only {tested} transitive families");
}

/// Edges from vertex 0 at the origin to targets at x = 12 through waypoints
/// at x = 4 and x = 8; the line is x = 10. All y values are even, so the
/// clipped polylines stay integral.
fn bundle(ys: &[(i64, i64, i64)]) -> (quasiplanar::TopoGraph, Vec<Vec<common::IPoint>>) {
    let mut b = TopoGraphBuilder::new().flags(Flags {
        simple: false,
        x_monotone: true,
        designated_edge: None,
    });
    b.vertex(0, Point::int(0, 0));
    let mut clipped = Vec::new();
    for (i, &(a, m, c)) in ys.iter().enumerate() {
        let id = i as u32 + 1;
        b.vertex(id, Point::int(12, 2 * c));
        b.edge_via(i as u32, 0, id, vec![Point::int(4, 2 * a), Point::int(8, 2 * m)]).unwrap();
        clipped.push(vec![(0, 0), (4, 2 * a), (8, 2 * m), (10, m + c)]);
    }
    (b.build().unwrap(), clipped)
}

fn meet_on_side(p: &[common::IPoint], q: &[common::IPoint]) -> bool {
    (0..p.len() - 1).any(|i| {
        (0..q.len() - 1).any(|j| (i, j) != (0, 0) && common::segments_meet((p[i], p[i + 1]), (q[j], q[j + 1])))
    })
}

#[test]
fn prune_examples() {
    let line = rat(10);
    let (g, _) = bundle(&[(-3, -3, -3), (0, 0, 0), (3, 3, 3)]);
    let r = prune_incomparability(&g, 0, &[0, 1, 2], LineSide::LeftOfL, &line, 2).unwrap();
    assert_eq!(r.retained.len(), 3);
    // Three pairwise crossing edges: with k = 4 a single edge survives.
    let (g, _) = bundle(&[(-6, 0, 6), (0, 3, -8), (4, -5, 1)]);
    let r = prune_incomparability(&g, 0, &[0, 1, 2], LineSide::LeftOfL, &line, 4).unwrap();
    assert_eq!(r.retained.len(), 1);
    assert_eq!(r.required, 1);
    assert!(matches!(
        prune_incomparability(&g, 0, &[0, 1, 2], LineSide::LeftOfL, &line, 3),
        Err(StructureError::HypothesisViolated { .. })
    ));
}

#[test]
fn prune_random_bundles_against_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let line = rat(10);
    let mut tested = 0;
    let mut violated = 0;
    for _ in 0..400 {
        let m = rng.gen_range(3..=12);
        let mut ys: Vec<(i64, i64, i64)> = Vec::new();
        while ys.len() < m {
            let t = (rng.gen_range(-30..=30), rng.gen_range(-30..=30), rng.gen_range(-30..=30));
            if ys.iter().all(|y| y.0 != t.0 && y.1 != t.1 && y.2 != t.2) {
                ys.push(t);
            }
        }
        let (g, clipped) = bundle(&ys);
        let ids: Vec<u32> = (0..m as u32).collect();
        let k = 3;
        let meets = |i: usize, j: usize| meet_on_side(&clipped[i], &clipped[j]);
        match prune_incomparability(&g, 0, &ids, LineSide::LeftOfL, &line, k) {
            Ok(r) => {
                tested += 1;
                let kept: Vec<usize> = r.retained.iter().map(|&e| e as usize).collect();
                assert!(kept.iter().enumerate().all(|(a, &i)| kept[a + 1..].iter().all(|&j| !meets(i, j))));
                assert_eq!(kept.len(), common::max_clique(m, &|i, j| !meets(i, j)));
                assert!(kept.len() >= m.div_ceil(2));
                assert!(common::max_clique(m, &meets) < k);
            }
            Err(StructureError::HypothesisViolated { clique }) => {
                violated += 1;
                assert!(clique.len() >= k);
                let c: Vec<usize> = clique.iter().map(|&e| e as usize).collect();
                assert!(c.iter().enumerate().all(|(a, &i)| c[a + 1..].iter().all(|&j| meets(i, j))));
            }
            Err(e) => eprintln!("skipped: {e}"),
        }
    }
    assert!(tested >= 50, "only {tested} usable bundles");
    assert!(violated > 0);
}

#[test]
fn separator_examples() {
    let disjoint: Vec<Curve> = (0..7).map(|i| seg((0, 3 * i), (5, 3 * i))).collect();
    let sep = curve_separator(&disjoint).unwrap();
    assert!(sep.v0.is_empty());
    assert!(sep.v1.len() <= 5 && sep.v2.len() <= 5);

    let pencil: Vec<Curve> = (0..6i64).map(|i| seg((-100, -100 * i + i * i), (100, 100 * i + i * i))).collect();
    let set = CurveSet::new(pencil).unwrap();
    let all: Vec<usize> = (0..6).collect();
    let sep = set.separator(&all);
    sep.validate(&set, &all).unwrap();
    assert!(sep.v1.len() <= 4 && sep.v2.len() <= 4);
    assert!(sep.v1.iter().all(|&a| sep.v2.iter().all(|&b| !set.intersect(a, b))));

    let mut grid: Vec<Curve> = (0..5).map(|i| seg((-1, i), (5, i))).collect();
    grid.extend((0..5).map(|i| seg((i, -1), (i, 5))));
    let set = CurveSet::new(grid).unwrap();
    let all: Vec<usize> = (0..10).collect();
    let sep = set.separator(&all);
    sep.validate(&set, &all).unwrap();
    assert_eq!(sep.intersection_count_x, 25);
    assert!(sep.ratio().unwrap() <= 1.0, "|V0|/5 = {:?}", sep.ratio());
}

#[test]
fn decomposition_examples() {
    let disjoint: Vec<Curve> = (0..8).map(|i| seg((0, 3 * i), (5, 3 * i))).collect();
    let set = CurveSet::new(disjoint).unwrap();
    let (dec, stats) = decompose(&set, 1, &DecomposeConfig::default()).unwrap();
    assert_eq!(stats.size, 8);
    assert!(dec.parts.iter().all(|p| p.members.len() == 1));

    let pencil: Vec<Curve> = (0..7i64).map(|i| seg((-100, -100 * i + i * i), (100, 100 * i + i * i))).collect();
    let set = CurveSet::new(pencil).unwrap();
    let (dec, _) = decompose(&set, 1, &DecomposeConfig::default()).unwrap();
    assert_eq!(dec.parts.len(), 1);
    assert_eq!(dec.size(), 7);
    dec.validate(&set).unwrap();
}

#[test]
fn large_random_decompositions_validate() {
    use quasiplanar::generate::random_segment_curves;
    for seed in 0..4 {
        let curves = random_segment_curves(200, 50 + seed, 1000).unwrap();
        let set = CurveSet::new(curves).unwrap();
        let (dec, stats) = decompose(&set, 1, &DecomposeConfig::default()).unwrap();
        dec.validate(&set).unwrap();
        assert!(stats.size > 0);
        eprintln!("m = 200: size {} vs m / log2 m = {:.1}", stats.size, stats.reference);
    }
}
