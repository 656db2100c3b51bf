use congruence_core::newton::{
    dominance_leq, full_diagonal, hodge_mu, newton_catalog, orthogonal_datum, pairing_with_rho,
    rz_dimension, shimura_dimension, stratum_dimension, ClassLabel, SplitType,
};
use congruence_core::suite::{check_dimension_story, classify_dimension, DimensionCase};
use congruence_core::{Error, Rational, RationalVector};

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Half-sum of positive roots of `SO(N)` in the standard basis.
fn rho_by_hand(n_dim: usize) -> Vec<Rational> {
    let n = n_dim / 2;
    (1..=n)
        .map(|i| {
            if n_dim % 2 == 1 {
                r(2 * (n - i) as i64 + 1, 2)
            } else {
                r((n - i) as i64, 1)
            }
        })
        .collect()
}

fn all_cases() -> Vec<(usize, SplitType)> {
    (5..=14)
        .flat_map(|n| SplitType::for_dimension(n).into_iter().map(move |s| (n, s)))
        .collect()
}

#[test]
fn finite_height_spaces_are_points_and_basic_dimensions() {
    for (n_dim, split) in all_cases() {
        let catalog = newton_catalog(n_dim, split).unwrap();
        let mut saw_basic = false;
        for c in &catalog {
            let dim = rz_dimension(n_dim, split, c).unwrap();
            match c.label {
                ClassLabel::FiniteHeight(m) => assert_eq!(dim, r(0, 1), "N={n_dim} {split} m={m}"),
                ClassLabel::Basic => {
                    saw_basic = true;
                    let offset = match split {
                        SplitType::Odd => 3,
                        SplitType::EvenSplit => 4,
                        SplitType::EvenNonsplit => 2,
                    };
                    assert_eq!(dim, r(n_dim as i64 - offset, 2), "N={n_dim} {split}");
                }
                ClassLabel::MuOrdinary => assert_eq!(dim, r(0, 1)),
            }
        }
        assert!(saw_basic);
    }
}

#[test]
fn catalog_shape() {
    assert_eq!(newton_catalog(7, SplitType::Odd).unwrap().len(), 1 + 2 + 1);
    assert_eq!(newton_catalog(8, SplitType::EvenSplit).unwrap().len(), 1 + 2 + 1);
    assert_eq!(newton_catalog(14, SplitType::EvenNonsplit).unwrap().len(), 1 + 5 + 1);
    assert!(newton_catalog(8, SplitType::Odd).is_err());
}

#[test]
fn rho_pairing_matches_hand_formula() {
    for (n_dim, split) in all_cases() {
        let rho = rho_by_hand(n_dim);
        for c in newton_catalog(n_dim, split).unwrap() {
            let expected: Rational = c.nu.coords().iter().zip(&rho).map(|(a, b)| a * b).sum();
            assert_eq!(pairing_with_rho(n_dim, split, &c).unwrap(), expected);
        }
    }
}

#[test]
fn dichotomy_only_in_even_nonsplit_case() {
    for (n_dim, split) in all_cases() {
        let (dim, case) = classify_dimension(n_dim, split).unwrap();
        let half = shimura_dimension(n_dim) / r(2, 1);
        if split == SplitType::EvenNonsplit {
            assert_eq!(case, DimensionCase::SpecialFactorRequired);
            assert_eq!(dim, half);
        } else {
            assert_eq!(case, DimensionCase::BoundArgument);
            assert!(dim < half);
        }
        assert!(check_dimension_story(n_dim, split).unwrap().passed);
    }
}

#[test]
fn classes_lie_below_mu_and_strata_fit() {
    for (n_dim, split) in all_cases() {
        let d = orthogonal_datum(n_dim, split).unwrap();
        let mu = hodge_mu(&d);
        for c in newton_catalog(n_dim, split).unwrap() {
            assert!(dominance_leq(&d, &c.nu, &mu).unwrap(), "N={n_dim} {split} {}", c.label);
            let s = stratum_dimension(n_dim, split, &c).unwrap();
            assert!(s <= shimura_dimension(n_dim));
            if c.label == ClassLabel::MuOrdinary {
                assert_eq!(s, shimura_dimension(n_dim));
            }
        }
    }
}

#[test]
fn seven_dimensional_height_two_slopes() {
    let catalog = newton_catalog(7, SplitType::Odd).unwrap();
    let c = catalog.iter().find(|c| c.label == ClassLabel::FiniteHeight(2)).unwrap();
    assert_eq!(c.nu.coords(), &[r(1, 2), r(1, 2), r(0, 1)]);
    assert_eq!(
        full_diagonal(7, &c.nu),
        vec![r(1, 2), r(1, 2), r(0, 1), r(0, 1), r(0, 1), r(-1, 2), r(-1, 2)]
    );
}

#[test]
fn dominance_rejects_non_dominant_input() {
    let d = orthogonal_datum(7, SplitType::Odd).unwrap();
    let nu = RationalVector::new(d.cochar_lattice().clone(), vec![r(0, 1), r(1, 1), r(0, 1)]).unwrap();
    let err = dominance_leq(&d, &nu, &hodge_mu(&d)).unwrap_err();
    assert!(matches!(err, Error::NotDominant(_)));
}
