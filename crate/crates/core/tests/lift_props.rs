//! Closed forms and incidences of the lifted configuration.

use kakeya_core::construction::{build_frame, ordered_tuples, IndexTuple, Lifter};
use kakeya_core::projgeom::ProjPoint;
use kakeya_core::scalar::Scalar;
use kakeya_core::seeds::{dual_conic_seed, PlanarSeed};
use proptest::prelude::*;

/// `(1, d_{j1}, c_3, …)` with `c_i = (−1)^i (d_{j_{i−1}} − d_{j_{i−2}})`, padded with zeros.
fn closed_form(d: &[Scalar], j: &[usize], n: usize) -> ProjPoint {
    let f = d[0].field();
    let mut c = vec![f.zero(); n + 1];
    c[0] = f.one();
    c[1] = d[j[0]].clone();
    for i in 3..=j.len() + 1 {
        let diff = &d[j[i - 2]] - &d[j[i - 3]];
        c[i - 1] = if i % 2 == 0 { diff } else { -&diff };
    }
    ProjPoint::new(c).unwrap()
}

fn triple(seed: &PlanarSeed, k: usize) -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    let pairs = seed.pairs_by_m().unwrap();
    let n_lines = seed.n_lines();
    (
        0..n_lines,
        prop::collection::vec(any::<bool>(), k),
        any::<prop::sample::Index>(),
    )
        .prop_filter_map("not enough pairs", move |(m, flips, pick)| {
            let ps = &pairs[m];
            let seqs = ordered_tuples(ps.len(), k);
            if seqs.is_empty() {
                return None;
            }
            let seq = &seqs[pick.index(seqs.len())];
            Some((
                m,
                seq.iter()
                    .zip(&flips)
                    .map(|(&i, &f)| if f { (ps[i].1, ps[i].0) } else { ps[i] })
                    .collect(),
            ))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn directions_have_closed_form(t in prop::collection::vec(0usize..11, 1..4)) {
        let mut t = t;
        t.dedup();
        prop_assume!(IndexTuple::new(t.clone()).is_ok());
        let seed = dual_conic_seed(11).unwrap();
        let d = seed.direction_parameters().unwrap();
        let frame = build_frame(4, seed.field).unwrap();
        let mut lifter = Lifter::new(&frame, &seed).unwrap();
        let j = IndexTuple::new(t.clone()).unwrap();
        prop_assert_eq!(lifter.direction(&j).unwrap(), closed_form(&d, &t, 4));
        let line = lifter.line(&j).unwrap();
        prop_assert!(line.contains(&closed_form(&d, &t, 4)).unwrap());
    }

    #[test]
    fn lifted_points_lie_on_every_switched_line((m, pairs) in triple(&dual_conic_seed(13).unwrap(), 3)) {
        let seed = dual_conic_seed(13).unwrap();
        let frame = build_frame(4, seed.field).unwrap();
        let mut lifter = Lifter::new(&frame, &seed).unwrap();
        let (j, jbar): (Vec<usize>, Vec<usize>) = pairs.iter().copied().unzip();
        let z = lifter.intersection(&IndexTuple::new(j).unwrap(), &IndexTuple::new(jbar).unwrap(), m).unwrap();
        for mask in 0..8u32 {
            let (a, b): (Vec<usize>, Vec<usize>) = pairs
                .iter()
                .enumerate()
                .map(|(i, &(x, y))| if mask >> i & 1 == 1 { (y, x) } else { (x, y) })
                .unzip();
            let (a, b) = (IndexTuple::new(a).unwrap(), IndexTuple::new(b).unwrap());
            prop_assert_eq!(&lifter.intersection(&a, &b, m).unwrap(), &z);
            prop_assert!(lifter.line(&a).unwrap().contains(&z).unwrap());
        }
    }
}

#[test]
fn distinct_tuples_give_distinct_lines_and_directions() {
    let seed = dual_conic_seed(7).unwrap();
    let frame = build_frame(4, seed.field).unwrap();
    let mut lifter = Lifter::new(&frame, &seed).unwrap();
    let tuples = ordered_tuples(7, 3);
    let dirs: Vec<ProjPoint> = tuples
        .iter()
        .map(|t| {
            lifter
                .direction(&IndexTuple::new(t.clone()).unwrap())
                .unwrap()
        })
        .collect();
    for i in 0..dirs.len() {
        for j in i + 1..dirs.len() {
            assert_ne!(dirs[i], dirs[j], "{:?} {:?}", tuples[i], tuples[j]);
        }
    }
}

#[test]
fn memo_and_fresh_lifters_agree() {
    let seed = dual_conic_seed(11).unwrap();
    let frame = build_frame(4, seed.field).unwrap();
    let mut memo = Lifter::new(&frame, &seed).unwrap();
    for t in ordered_tuples(11, 3).into_iter().step_by(7) {
        let j = IndexTuple::new(t).unwrap();
        let mut fresh = Lifter::new(&frame, &seed).unwrap();
        fresh.set_memoize(false);
        assert_eq!(memo.line(&j).unwrap(), fresh.line(&j).unwrap());
        assert_eq!(memo.direction(&j).unwrap(), fresh.direction(&j).unwrap());
        // a second memoized call returns the cached value
        assert_eq!(memo.line(&j).unwrap(), fresh.line(&j).unwrap());
    }
}
