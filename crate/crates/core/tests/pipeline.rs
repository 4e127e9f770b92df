//! construct → JSON → verify over the shipped seeds.

use kakeya_core::construction::{assemble, ConstructionError, KakeyaSet};
use kakeya_core::seeds::{dual_conic_seed, regular_ngon_seed};
use kakeya_core::verify::{verify_all, verify_incidence, verify_size};

#[test]
fn conic_matrix_round_trips_and_verifies() {
    for (q, n) in [
        (5u64, 2usize),
        (5, 3),
        (7, 2),
        (7, 3),
        (7, 4),
        (11, 3),
        (11, 4),
    ] {
        let k = assemble(&dual_conic_seed(q).unwrap(), n).unwrap();
        let back = KakeyaSet::from_json(&k.to_json()).unwrap();
        for rep in verify_all(&back, Some(1)) {
            assert!(rep.pass, "q={q} n={n} {}: {:?}", rep.check, rep.witnesses);
        }
    }
}

#[test]
fn ngon_seeds_verify_in_three_dimensions() {
    for big_n in [6usize, 7] {
        let k = assemble(&regular_ngon_seed(big_n, 1e-9).unwrap(), 3).unwrap();
        for rep in verify_all(&k, None) {
            assert!(rep.pass, "N={big_n} {}: {:?}", rep.check, rep.witnesses);
        }
    }
}

#[test]
fn passthrough_keeps_seed_size() {
    let seed = dual_conic_seed(7).unwrap();
    let k = assemble(&seed, 2).unwrap();
    assert!(verify_incidence(&k).pass);
    let size = verify_size(&k);
    assert_eq!(size.measured["points"], seed.points.len());
}

#[test]
fn too_small_seed_is_rejected() {
    let err = assemble(&dual_conic_seed(5).unwrap(), 4).unwrap_err();
    assert_eq!(err, ConstructionError::SeedTooSmall { n_lines: 5, n: 4 });
}

#[test]
fn json_is_deterministic() {
    let a = assemble(&dual_conic_seed(7).unwrap(), 3).unwrap().to_json();
    let b = assemble(&dual_conic_seed(7).unwrap(), 3).unwrap().to_json();
    assert_eq!(a, b);
}
