mod common;

use proptest::prelude::*;
use quasiplanar::bounds::alpha;
use quasiplanar::geometry::{crossings, Curve};
use quasiplanar::sequences::{contains_up, contains_up_down_up, extract_l_regular_greedy, Sequence};
use quasiplanar::structure::{chain_cover, max_antichain, CurveSet, Poset};

fn host() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0u32..5, 0..14)
}

proptest! {
    #[test]
    fn up_agrees_with_oracle(s in host(), l in 2usize..4, t in 2usize..4) {
        let seq = Sequence::from_symbols(s.clone());
        let got = contains_up(&seq, l, t);
        prop_assert_eq!(got.is_some(), common::contains_pattern(&s, &common::up_word(l, t)));
        if let Some(w) = got {
            prop_assert!(w.is_valid_for(&seq));
        }
    }

    #[test]
    fn up_down_up_agrees_with_oracle(s in host(), l in 2usize..5) {
        let seq = Sequence::from_symbols(s.clone());
        let got = contains_up_down_up(&seq, l);
        prop_assert_eq!(got.is_some(), common::contains_pattern(&s, &common::up_down_up_word(l)));
        if let Some(w) = got {
            prop_assert!(w.is_valid_for(&seq));
        }
    }

    #[test]
    fn greedy_is_regular(s in prop::collection::vec(0u32..6, 0..60), l in 1usize..5) {
        let out = extract_l_regular_greedy(&Sequence::from_symbols(s), l);
        prop_assert!(common::is_l_regular(out.symbols(), l));
    }

    #[test]
    fn crossings_are_symmetric(pts in prop::collection::vec((-9i64..9, -9i64..9), 4)) {
        prop_assume!(pts[0] != pts[1] && pts[2] != pts[3]);
        let a = Curve::from_ints(&pts[..2]).unwrap();
        let b = Curve::from_ints(&pts[2..]).unwrap();
        match (crossings(&a, &b), crossings(&b, &a)) {
            (Ok(x), Ok(y)) => prop_assert_eq!(x, y),
            (Err(_), Err(_)) => {}
            (x, y) => prop_assert!(false, "asymmetric: {:?} vs {:?}", x, y),
        }
    }

    #[test]
    fn dilworth_on_dominance_orders(pts in prop::collection::vec((0u8..6, 0u8..6), 1..12)) {
        let n = pts.len();
        let less = |i: usize, j: usize| pts[i] != pts[j] && pts[i].0 <= pts[j].0 && pts[i].1 <= pts[j].1;
        let p = Poset::from_relation(n, less).unwrap();
        let want = common::max_antichain(n, &less);
        prop_assert_eq!(chain_cover(&p).len(), want);
        prop_assert_eq!(max_antichain(&p).len(), want);
    }

    #[test]
    fn separators_are_valid(seed in 0u64..1000, m in 2usize..40) {
        let curves = quasiplanar::generate::random_segment_curves(m, seed, 1000).unwrap();
        let set = CurveSet::new(curves).unwrap();
        let all: Vec<usize> = (0..m).collect();
        let sep = set.separator(&all);
        prop_assert!(sep.validate(&set, &all).is_ok());
        prop_assert!(sep.v1.len().max(sep.v2.len()) <= (2 * m).div_ceil(3));
    }

    #[test]
    fn alpha_is_monotone(a in 1u128..u64::MAX as u128, b in 1u128..u64::MAX as u128) {
        let (lo, hi) = (a.min(b), a.max(b));
        prop_assert!(alpha(lo) <= alpha(hi));
    }
}
