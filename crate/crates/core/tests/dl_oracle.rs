use std::time::Instant;

use congruence_core::dl::oracle::brute_force_s_lambda;
use congruence_core::dl::{enumerate_isotropic, s_lambda_points, swaps_families, vertex_type, WittType};
use congruence_core::Error;

const CASES: [(usize, WittType, u64); 4] = [
    (2, WittType::Nonsplit, 3),
    (2, WittType::Nonsplit, 5),
    (4, WittType::Split, 3),
    (4, WittType::Nonsplit, 3),
];

#[test]
fn main_path_agrees_with_brute_force() {
    let start = Instant::now();
    for (t, witt, p) in CASES {
        for k in 1..=3u32 {
            let s = s_lambda_points(t, witt, p, k).unwrap();
            for l in &s.points {
                assert!(s.space.is_totally_isotropic(l));
                assert_eq!(l.dim(), t / 2);
                assert_eq!(s.space.sum_dim(l, &s.space.frobenius(l)), t / 2 + 1);
            }
            if s.count() > 0 {
                assert!(swaps_families(&s), "t={t} {witt} q={p} k={k}");
            }

            let oracle = brute_force_s_lambda(s.space.space().gram(), p, k as usize);
            let ctx = format!("t={t} {witt} q={p} k={k}");
            assert_eq!(s.count(), oracle.points, "{ctx}");
            let (a, b) = s.families();
            assert_eq!((a.max(b), a.min(b)), oracle.families, "{ctx}");
            assert!(oracle.frobenius_swaps, "{ctx}");
            let space = s.space.space();
            assert_eq!(enumerate_isotropic(space, 1, k).unwrap().len(), oracle.isotropic_lines, "{ctx}");
            assert_eq!(enumerate_isotropic(space, t / 2, k).unwrap().len(), oracle.lagrangians, "{ctx}");
        }
    }
    assert!(start.elapsed().as_secs() < 60);
}

#[test]
fn frozen_point_counts() {
    let counts: Vec<usize> = CASES
        .iter()
        .flat_map(|&(t, witt, p)| (1..=3).map(move |k| s_lambda_points(t, witt, p, k).unwrap().count()))
        .collect();
    assert_eq!(counts, FROZEN);
}

const FROZEN: [usize; 12] = [0, 2, 0, 0, 2, 0, 0, 0, 0, 0, 20, 0];

#[test]
fn vertex_lattice_types() {
    let g = vec![
        vec![1, 0, 0, 0],
        vec![0, 1, 0, 0],
        vec![0, 0, 3, 0],
        vec![0, 0, 0, 3],
    ];
    assert_eq!(vertex_type(&g, 3).unwrap().type_t, 2);
    let bad = vec![vec![1, 0], vec![0, 9]];
    assert!(matches!(vertex_type(&bad, 3), Err(Error::NotVertexLattice { .. })));
}
