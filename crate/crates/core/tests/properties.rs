use std::sync::{Arc, OnceLock};

use congruence_core::group_algebra::Monomial;
use congruence_core::root_datum::{build_gl, build_gspin, build_so};
use congruence_core::snf::{determinant, from_i64, mat_mul, smith_normal_form};
use congruence_core::torus_hecke::DotAction;
use congruence_core::{GroupAlgebraElement, IntLattice, Rational, RootDatum};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use proptest::sample::Index;

const CASES: u32 = 256;

type RawTerm = (i64, Vec<i64>, i64, i64);

fn raw_element(rank: usize) -> impl Strategy<Value = Vec<RawTerm>> {
    prop::collection::vec(
        (-3i64..=3, prop::collection::vec(-2i64..=2, rank), -6i64..=6, 1i64..=4),
        0..5,
    )
}

fn build(l: &Arc<IntLattice>, raw: &[RawTerm]) -> GroupAlgebraElement {
    GroupAlgebraElement::from_terms(
        l,
        raw.iter().map(|(q, exp, n, d)| {
            (
                Monomial { q: *q, exp: exp.clone() },
                Rational::new(BigInt::from(*n), BigInt::from(*d)),
            )
        }),
    )
    .unwrap()
}

fn rank3() -> &'static Arc<IntLattice> {
    static L: OnceLock<Arc<IntLattice>> = OnceLock::new();
    L.get_or_init(|| IntLattice::new(["a", "b", "c"]).unwrap())
}

fn data() -> &'static [RootDatum] {
    static D: OnceLock<Vec<RootDatum>> = OnceLock::new();
    D.get_or_init(|| {
        vec![
            build_gl(3).unwrap(),
            build_so(7, false).unwrap(),
            build_so(8, true).unwrap(),
            build_gspin(8, false).unwrap(),
            build_gspin(10, true).unwrap(),
        ]
    })
}

fn actions() -> &'static [(RootDatum, DotAction)] {
    static A: OnceLock<Vec<(RootDatum, DotAction)>> = OnceLock::new();
    A.get_or_init(|| {
        [build_gl(3), build_so(7, false), build_gspin(8, false)]
            .into_iter()
            .map(|d| {
                let d = d.unwrap();
                let a = DotAction::full(&d).unwrap();
                (d, a)
            })
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(CASES))]

    #[test]
    fn group_algebra_is_a_commutative_ring(
        a in raw_element(3), b in raw_element(3), c in raw_element(3)
    ) {
        let l = rank3();
        let (a, b, c) = (build(l, &a), build(l, &b), build(l, &c));
        let zero = GroupAlgebraElement::zero(l);
        let one = GroupAlgebraElement::one(l);

        prop_assert_eq!(a.try_add(&b).unwrap().try_add(&c).unwrap(),
                        a.try_add(&b.try_add(&c).unwrap()).unwrap());
        prop_assert_eq!(a.try_add(&b).unwrap(), b.try_add(&a).unwrap());
        prop_assert_eq!(a.try_add(&zero).unwrap(), a.clone());
        prop_assert!(a.try_sub(&a).unwrap().is_zero());

        prop_assert_eq!(a.try_mul(&b).unwrap().try_mul(&c).unwrap(),
                        a.try_mul(&b.try_mul(&c).unwrap()).unwrap());
        prop_assert_eq!(a.try_mul(&b).unwrap(), b.try_mul(&a).unwrap());
        prop_assert_eq!(a.try_mul(&one).unwrap(), a.clone());
        prop_assert_eq!(
            a.try_mul(&b.try_add(&c).unwrap()).unwrap(),
            a.try_mul(&b).unwrap().try_add(&a.try_mul(&c).unwrap()).unwrap()
        );
    }

    #[test]
    fn group_algebra_json_round_trip(a in raw_element(3)) {
        let a = build(rank3(), &a);
        let back = GroupAlgebraElement::from_json_in(rank3(), &a.to_json()).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn dot_action_is_a_group_action(
        which in 0usize..3, i in any::<Index>(), j in any::<Index>(), raw in raw_element(5)
    ) {
        let (d, action) = &actions()[which];
        let l = d.cochar_lattice();
        let raw: Vec<RawTerm> = raw
            .into_iter()
            .map(|(q, mut e, n, m)| { e.truncate(l.rank()); (q, e, n, m) })
            .filter(|t| t.1.len() == l.rank())
            .collect();
        let f = build(l, &raw);
        let g = action.group();
        let (w1, w2) = (&g[i.index(g.len())], &g[j.index(g.len())]);

        let id = congruence_core::LatticeMap::identity(l);
        prop_assert_eq!(action.dot_act(&id, &f).unwrap(), f.clone());
        let step = action.dot_act(w1, &action.dot_act(w2, &f).unwrap()).unwrap();
        let once = action.dot_act(&w1.compose(w2).unwrap(), &f).unwrap();
        prop_assert_eq!(step, once);

        let doubled = f.try_add(&f).unwrap();
        prop_assert_eq!(action.dot_act(w1, &doubled).unwrap(),
                        action.dot_act(w1, &f).unwrap().try_add(&action.dot_act(w1, &f).unwrap()).unwrap());
        prop_assert!(action.is_dot_invariant(&action.orbit_sum(&l.zero()).unwrap()).unwrap());
    }

    #[test]
    fn simple_reflections_satisfy_axioms(
        which in 0usize..5, i in any::<Index>(),
        nu in prop::collection::vec(-4i64..=4, 6), chi in prop::collection::vec(-4i64..=4, 6)
    ) {
        let d = &data()[which];
        let r = d.rank();
        let idx = i.index(d.semisimple_rank());
        let nu = d.cochar_lattice().vector(nu[..r].to_vec()).unwrap();
        let chi = d.char_lattice().vector(chi[..r].to_vec()).unwrap();
        let s = d.simple_reflection_cochar(idx);
        let s_star = d.simple_reflection_char(idx);
        let alpha = &d.simple_roots()[idx];
        let coroot = &d.simple_coroots()[idx];

        prop_assert_eq!(d.pair(alpha, coroot).unwrap(), 2);
        prop_assert_eq!(s.apply(&s.apply(&nu).unwrap()).unwrap(), nu.clone());
        prop_assert_eq!(s.apply(coroot).unwrap(), coroot.scale(-1));
        prop_assert_eq!(s_star.apply(alpha).unwrap(), alpha.scale(-1));
        let expected = nu.sub(&coroot.scale(d.pair(alpha, &nu).unwrap())).unwrap();
        prop_assert_eq!(s.apply(&nu).unwrap(), expected);
        prop_assert_eq!(d.pair(&s_star.apply(&chi).unwrap(), &s.apply(&nu).unwrap()).unwrap(),
                        d.pair(&chi, &nu).unwrap());

        // s_i permutes the positive roots other than α_i.
        let pos = d.positive_roots();
        for beta in pos.iter().filter(|b| *b != alpha) {
            let image = s_star.apply(beta).unwrap();
            prop_assert!(pos.contains(&image));
        }
    }

    #[test]
    fn smith_form_is_consistent(entries in prop::collection::vec(-20i64..=20, 16)) {
        let rows: Vec<Vec<i64>> = entries.chunks(4).map(|c| c.to_vec()).collect();
        let a = from_i64(&rows);
        let s = smith_normal_form(&a);
        prop_assert_eq!(mat_mul(&mat_mul(&s.left, &a), &s.right), s.diagonal.clone());
        prop_assert!(determinant(&s.left).abs().is_one());
        prop_assert!(determinant(&s.right).abs().is_one());
        for (i, row) in s.diagonal.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if i != j {
                    prop_assert!(x.is_zero());
                }
            }
        }
        for w in s.invariant_factors.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        let det = determinant(&a).abs();
        if det.is_zero() {
            prop_assert!(s.rank < 4);
        } else {
            prop_assert_eq!(s.rank, 4);
            let prod: BigInt = s.invariant_factors.iter().product();
            prop_assert_eq!(prod, det);
        }
    }
}
