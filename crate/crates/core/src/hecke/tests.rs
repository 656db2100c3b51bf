use std::collections::BTreeMap;

use super::*;
use crate::root_datum::{build_gl, build_gspin, build_so};
use crate::torus_hecke::DotAction;

fn mono(l: &Arc<IntLattice>, q: i64, exp: Vec<i64>) -> GroupAlgebraElement {
    GroupAlgebraElement::monomial(l, q, exp, rat(1)).unwrap()
}

/// Semistandard tableaux of shape `shape` with entries `1..=m`, counted by
/// content. Brute force over all fillings.
fn ssyt_contents(shape: &[usize], m: usize) -> BTreeMap<Vec<i64>, u64> {
    let cells: Vec<(usize, usize)> = shape
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
        .collect();
    let mut out = BTreeMap::new();
    let total = m.pow(cells.len() as u32);
    for code in 0..total {
        let mut x = code;
        let mut fill = vec![vec![0usize; shape.first().copied().unwrap_or(0)]; shape.len()];
        for &(r, c) in &cells {
            fill[r][c] = x % m;
            x /= m;
        }
        let ok = cells.iter().all(|&(r, c)| {
            (c == 0 || fill[r][c - 1] <= fill[r][c]) && (r == 0 || fill[r - 1][c] < fill[r][c])
        });
        if ok {
            let mut content = vec![0i64; m];
            for &(r, c) in &cells {
                content[fill[r][c]] += 1;
            }
            *out.entry(content).or_insert(0) += 1;
        }
    }
    out
}

fn as_map(w: &WeightMultiset) -> BTreeMap<Vec<i64>, u64> {
    w.entries()
        .iter()
        .map(|(v, m)| (v.coords().to_vec(), *m))
        .collect()
}

#[test]
fn minuscule_weights_of_gspin() {
    for n in 3..=6 {
        let d = build_gspin(2 * n, false).unwrap();
        let mu = d.cochar_lattice().basis_vector(1);
        let w = minuscule_weights(&d, &mu).unwrap();
        assert_eq!(w.total(), 2 * n as u64);
        for i in 1..=n {
            let mut e = vec![0i64; n + 1];
            e[i] = 1;
            assert_eq!(w.multiplicity(&d.cochar_lattice().vector(e.clone()).unwrap()), 1);
            e[0] = 1;
            e[i] = -1;
            assert_eq!(w.multiplicity(&d.cochar_lattice().vector(e).unwrap()), 1);
        }
    }
}

#[test]
fn minuscule_rejects_bad_input() {
    let d = build_gl(2).unwrap();
    let l = d.cochar_lattice();
    assert!(matches!(
        minuscule_weights(&d, &l.vector(vec![2, 0]).unwrap()),
        Err(Error::NotMinuscule(_))
    ));
    assert!(matches!(
        minuscule_weights(&d, &l.vector(vec![0, 1]).unwrap()),
        Err(Error::NotDominant(_))
    ));
    let w = minuscule_weights(&d, &l.zero()).unwrap();
    assert_eq!(w.total(), 1);
}

#[test]
fn freudenthal_matches_tableaux() {
    for (m, shape) in [
        (2, vec![2usize]),
        (3, vec![1, 1]),
        (3, vec![2, 1]),
        (3, vec![3, 1]),
        (4, vec![2, 1, 1]),
        (4, vec![2, 2]),
    ] {
        let d = build_gl(m).unwrap();
        let mut mu = vec![0i64; m];
        for (i, &s) in shape.iter().enumerate() {
            mu[i] = s as i64;
        }
        let w = freudenthal_weights(&d, &d.cochar_lattice().vector(mu).unwrap()).unwrap();
        assert_eq!(as_map(&w), ssyt_contents(&shape, m), "shape {shape:?}");
    }
}

#[test]
fn freudenthal_agrees_with_minuscule_and_weyl_dimension() {
    for d in [
        build_gl(3).unwrap(),
        build_so(7, false).unwrap(),
        build_gspin(8, false).unwrap(),
        build_gspin(9, false).unwrap(),
    ] {
        let mu = if d.rank() == 3 && d.name().starts_with("GL") {
            d.cochar_lattice().vector(vec![1, 0, 0]).unwrap()
        } else if d.name().starts_with("SO") {
            d.cochar_lattice().basis_vector(0)
        } else {
            d.cochar_lattice().basis_vector(1)
        };
        assert_eq!(
            freudenthal_weights(&d, &mu).unwrap(),
            minuscule_weights(&d, &mu).unwrap()
        );
    }
    // SO(7), highest weight χ_1^v + χ_2^v: 14-dimensional, zero weight twice.
    let d = build_so(7, false).unwrap();
    let mu = d.cochar_lattice().vector(vec![1, 1, 0]).unwrap();
    let w = freudenthal_weights(&d, &mu).unwrap();
    assert_eq!(rat(w.total() as i64), weyl_dimension(&d, &mu).unwrap());
    assert_eq!(w.total(), 14);
    assert_eq!(w.multiplicity(&d.cochar_lattice().zero()), 2);
    // SO(8), adjoint-type weight: 28-dimensional, zero weight four times.
    let d = build_so(8, false).unwrap();
    let mu = d.cochar_lattice().vector(vec![1, 1, 0, 0]).unwrap();
    let w = freudenthal_weights(&d, &mu).unwrap();
    assert_eq!(rat(w.total() as i64), weyl_dimension(&d, &mu).unwrap());
    assert_eq!(w.multiplicity(&d.cochar_lattice().zero()), 4);
}

#[test]
fn weight_multisets_are_weyl_stable() {
    let d = build_so(7, false).unwrap();
    let mu = d.cochar_lattice().vector(vec![2, 1, 0]).unwrap();
    let w = freudenthal_weights(&d, &mu).unwrap();
    assert_eq!(rat(w.total() as i64), weyl_dimension(&d, &mu).unwrap());
    for g in d.weyl_generators() {
        for (v, m) in w.entries() {
            assert_eq!(w.multiplicity(&g.apply(v).unwrap()), *m);
        }
    }
}

#[test]
fn gl2_classical_polynomial() {
    let d = build_gl(2).unwrap();
    let l = d.cochar_lattice();
    let mu = l.vector(vec![1, 0]).unwrap();
    let h = hecke_poly(&d, &mu, Mode::SplitRho).unwrap();
    // Oracle: expand (X - h_{10})(X - q h_{01}) by hand.
    let t1 = mono(l, 0, vec![1, 0]);
    let qt2 = mono(l, 1, vec![0, 1]);
    let expected = vec![
        GroupAlgebraElement::one(l),
        -&(&t1 + &qt2),
        mono(l, 1, vec![1, 1]),
    ];
    assert_eq!(h.coeffs(), expected);
    assert_eq!(det_oracle(&d, &mu, Mode::SplitRho).unwrap().poly(), h.poly());
    let a = DotAction::full(&d).unwrap();
    for c in h.coeffs() {
        assert!(a.is_dot_invariant(&c).unwrap());
    }
    assert!(h.congruence_root_check(&mu).unwrap().is_zero());
}

#[test]
fn trivial_weight() {
    let d = build_gspin(8, true).unwrap();
    let zero = d.cochar_lattice().zero();
    for mode in [Mode::SplitRho, Mode::Symmetric] {
        let h = hecke_poly(&d, &zero, mode).unwrap();
        assert_eq!(h.degree(), 1);
        assert_eq!(h.coeffs()[1], -&GroupAlgebraElement::one(d.cochar_lattice()));
        assert!(h.congruence_root_check(&zero).unwrap().is_zero());
        let (special, rest) = h.special_factor().unwrap();
        assert!(special.poly().ascending().len() == 1 && special.coeffs()[0].is_one());
        assert_eq!(rest.poly(), h.poly());
        assert_eq!(det_oracle(&d, &zero, mode).unwrap().poly(), h.poly());
    }
}

#[test]
fn product_formula_small_n() {
    for n in 3..=5 {
        let d = build_gspin(2 * n, true).unwrap();
        let mu = d.solve_ks_lift().unwrap();
        let h = hecke_poly(&d, &mu, Mode::Symmetric).unwrap();
        assert_eq!(h.poly(), &gspin_product_reference(&d, n).unwrap());
        assert!(h.factors_consistent());
        let (special, rest) = h.special_factor().unwrap();
        let l = d.cochar_lattice();
        let mut s = vec![0i64; n + 1];
        s[0] = 1;
        assert_eq!(
            special.poly(),
            &Poly::binomial(2, &mono(l, 2 * (n as i64 - 1), s))
        );
        assert_eq!(special.poly().try_mul(rest.poly()).unwrap(), *h.poly());
        assert!(h.congruence_root_check(&mu).unwrap().is_zero());
    }
}

#[test]
fn product_formula_n3_explicit_factors() {
    let d = build_gspin(6, true).unwrap();
    let l = d.cochar_lattice();
    let mu = d.solve_ks_lift().unwrap();
    let h = hecke_poly(&d, &mu, Mode::Symmetric).unwrap();
    let factors: Vec<Poly> = vec![
        Poly::binomial(2, &mono(l, 4, vec![1, 0, 0, 0])),
        Poly::binomial(1, &mono(l, 0, vec![0, 1, 0, 0])),
        Poly::binomial(1, &mono(l, 0, vec![1, -1, 0, 0])),
        Poly::binomial(1, &mono(l, 1, vec![0, 0, 1, 0])),
        Poly::binomial(1, &mono(l, 1, vec![1, 0, -1, 0])),
    ];
    assert_eq!(h.poly(), &Poly::product(l, &factors).unwrap());
}

#[test]
fn oracle_agrees_on_twisted_and_split_cases() {
    let cases: Vec<(RootDatum, Vec<i64>)> = vec![
        (build_gl(3).unwrap(), vec![1, 0, 0]),
        (build_so(7, false).unwrap(), vec![1, 0, 0]),
        (build_gspin(6, true).unwrap(), vec![0, 1, 0, 0]),
        (build_gspin(8, false).unwrap(), vec![0, 1, 0, 0, 0]),
        (build_so(8, true).unwrap(), vec![1, 0, 0, 0]),
    ];
    for (d, mu) in cases {
        let mu = d.cochar_lattice().vector(mu).unwrap();
        for mode in [Mode::SplitRho, Mode::Symmetric] {
            let Ok(h) = hecke_poly(&d, &mu, mode) else {
                continue;
            };
            assert_eq!(det_oracle(&d, &mu, mode).unwrap().poly(), h.poly(), "{}", d.name());
        }
    }
}

#[test]
fn non_minuscule_polynomial_matches_oracle() {
    // GL_2 with μ = (2, 0): weights (2,0), (1,1), (0,2).
    let d = build_gl(2).unwrap();
    let mu = d.cochar_lattice().vector(vec![2, 0]).unwrap();
    let h = hecke_poly(&d, &mu, Mode::SplitRho).unwrap();
    assert_eq!(h.degree(), 3);
    assert_eq!(det_oracle(&d, &mu, Mode::SplitRho).unwrap().poly(), h.poly());
    assert!(h.congruence_root_check(&mu).unwrap().is_zero());
}

#[test]
fn sigma_orbits_on_ks_weights() {
    for n in 3..=6 {
        let d = build_gspin(2 * n, true).unwrap();
        let mu = d.solve_ks_lift().unwrap();
        let m = twisted_matrix(&d, &mu, Mode::Symmetric).unwrap();
        let pairs: Vec<&Vec<usize>> = m.cycles.iter().filter(|c| c.len() == 2).collect();
        assert_eq!(pairs.len(), 1);
        let mut got: Vec<Vec<i64>> = pairs[0]
            .iter()
            .map(|&i| m.weights[i].0.coords().to_vec())
            .collect();
        got.sort();
        let mut en = vec![0i64; n + 1];
        en[n] = 1;
        let mut other = vec![0i64; n + 1];
        other[0] = 1;
        other[n] = -1;
        let mut expected = vec![en, other];
        expected.sort();
        assert_eq!(got, expected);
    }
}

#[test]
fn similitude_grading_of_factors() {
    for n in 3..=6 {
        let d = build_gspin(2 * n, true).unwrap();
        let eta = d.similitude_char().unwrap().clone();
        let mu = d.solve_ks_lift().unwrap();
        let h = hecke_poly(&d, &mu, Mode::Symmetric).unwrap();
        for f in h.factors() {
            let m = as_monomial(&f.constant).unwrap();
            let v = d.cochar_lattice().vector(m.exp.clone()).unwrap();
            assert_eq!(d.pair(&eta, &v).unwrap(), f.cycle_length as i64);
        }
    }
}

#[test]
fn split_mode_polynomials_are_dot_invariant() {
    for (d, mu) in [
        (build_gl(3).unwrap(), vec![1, 0, 0]),
        (build_so(7, false).unwrap(), vec![1, 0, 0]),
        (build_gspin(8, false).unwrap(), vec![0, 1, 0, 0, 0]),
    ] {
        let mu = d.cochar_lattice().vector(mu).unwrap();
        let h = hecke_poly(&d, &mu, Mode::SplitRho).unwrap();
        let a = DotAction::full(&d).unwrap();
        for c in h.coeffs() {
            assert!(a.is_dot_invariant(&c).unwrap());
        }
        assert!(h.congruence_root_check(&mu).unwrap().is_zero());
        let (special, _) = h.special_factor().unwrap();
        assert!(special.factors().is_empty());
    }
}

#[test]
fn json_round_trip() {
    let d = build_gspin(8, true).unwrap();
    let mu = d.solve_ks_lift().unwrap();
    let h = hecke_poly(&d, &mu, Mode::Symmetric).unwrap();
    let text = serde_json::to_string(&h.to_json()).unwrap();
    let back: HeckeJson = serde_json::from_str(&text).unwrap();
    let h2 = HeckePolynomial::from_json(&back).unwrap();
    assert_eq!(h2.poly(), h.poly());
    assert_eq!(h2.factors(), h.factors());
    assert_eq!(h2.mode(), Mode::Symmetric);
}

#[test]
fn projected_root_check_on_coinvariants() {
    let d = build_gspin(8, true).unwrap();
    let (_, proj) = DotAction::relative(&d).unwrap();
    let mu = d.solve_ks_lift().unwrap();
    let h = hecke_poly(&d, &mu, Mode::Symmetric).unwrap();
    assert!(h.congruence_root_check_projected(&mu, &proj).unwrap().is_zero());
}
