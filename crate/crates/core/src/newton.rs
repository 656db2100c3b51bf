//! Newton classes in `B(SO(V), μ)` for `μ = χ_1^v` and the dimensions of
//! the associated Rapoport-Zink spaces, `⟨μ - ν, ρ⟩ - def/2`.

use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{LatticeVector, RationalVector};
use crate::linalg::rat;
use crate::root_datum::{build_so, RootDatum};
use crate::Rational;

/// Parity of `N = dim V` together with the splitting behaviour of `SO(V)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SplitType {
    Odd,
    EvenSplit,
    EvenNonsplit,
}

impl SplitType {
    pub const ALL: [SplitType; 3] = [SplitType::Odd, SplitType::EvenSplit, SplitType::EvenNonsplit];

    /// The split types valid for a given `N`.
    pub fn for_dimension(n_dim: usize) -> Vec<SplitType> {
        if n_dim % 2 == 1 {
            vec![SplitType::Odd]
        } else {
            vec![SplitType::EvenSplit, SplitType::EvenNonsplit]
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SplitType::Odd => "odd",
            SplitType::EvenSplit => "even_split",
            SplitType::EvenNonsplit => "even_nonsplit",
        }
    }
}

impl fmt::Display for SplitType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SplitType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "odd" => Ok(SplitType::Odd),
            "even_split" | "split" => Ok(SplitType::EvenSplit),
            "even_nonsplit" | "nonsplit" | "quasi_split" => Ok(SplitType::EvenNonsplit),
            other => Err(Error::Parse(format!("unknown split type `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClassLabel {
    MuOrdinary,
    FiniteHeight(usize),
    Basic,
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassLabel::MuOrdinary => f.write_str("mu_ordinary"),
            ClassLabel::FiniteHeight(m) => write!(f, "finite_height({m})"),
            ClassLabel::Basic => f.write_str("basic"),
        }
    }
}

impl Serialize for ClassLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonClass {
    pub label: ClassLabel,
    /// Newton cocharacter in `χ^v`-coordinates.
    pub nu: RationalVector,
    pub defect: u64,
    pub jb_description: String,
}

fn check_parameters(n_dim: usize, split: SplitType) -> Result<()> {
    if n_dim < 5 {
        return Err(Error::InvalidParameters(format!("N = {n_dim} must be at least 5")));
    }
    let odd = n_dim % 2 == 1;
    if odd != (split == SplitType::Odd) {
        return Err(Error::InvalidParameters(format!(
            "split type {split} does not match N = {n_dim}"
        )));
    }
    Ok(())
}

/// The root datum of `SO(N)` matching the split type.
pub fn orthogonal_datum(n_dim: usize, split: SplitType) -> Result<RootDatum> {
    check_parameters(n_dim, split)?;
    build_so(n_dim, split == SplitType::EvenNonsplit)
}

/// The Hodge cocharacter `χ_1^v`.
pub fn hodge_mu(d: &RootDatum) -> LatticeVector {
    d.cochar_lattice().basis_vector(0)
}

/// Largest `m` with a finite-height class.
pub fn max_finite_height(n_dim: usize) -> usize {
    if n_dim % 2 == 1 {
        n_dim / 2
    } else {
        n_dim / 2 - 1
    }
}

/// `def_G(b)` for the basic class, pinned to the dimensions of the basic
/// locus: `(N-3)/2`, `(N-4)/2` and `(N-2)/2`.
pub fn basic_defect(split: SplitType) -> u64 {
    match split {
        SplitType::Odd => 1,
        SplitType::EvenSplit => 2,
        SplitType::EvenNonsplit => 0,
    }
}

/// The μ-ordinary, finite-height and basic classes, from the top of the
/// dominance order down.
pub fn newton_catalog(n_dim: usize, split: SplitType) -> Result<Vec<NewtonClass>> {
    let d = orthogonal_datum(n_dim, split)?;
    let lattice = d.cochar_lattice();
    let n = lattice.rank();
    let mu = hodge_mu(&d);
    let nonsplit = if split == SplitType::EvenNonsplit { "quasi-split " } else { "" };

    let mu_ordinary = match d.sigma() {
        Some(s) => {
            let smu = s.on_cochars.apply(&mu)?;
            let half = Rational::new(1.into(), 2.into());
            mu.coords()
                .iter()
                .zip(smu.coords())
                .map(|(&a, &b)| rat(a + b) * &half)
                .collect()
        }
        None => mu.to_rational().coords().to_vec(),
    };
    let mut classes = vec![NewtonClass {
        label: ClassLabel::MuOrdinary,
        nu: RationalVector::new(lattice.clone(), mu_ordinary)?,
        defect: 0,
        jb_description: format!("G_m × {nonsplit}SO({})", n_dim - 2),
    }];

    for m in 2..=max_finite_height(n_dim) {
        let slope = Rational::new(1.into(), (m as i64).into());
        let coords = (0..n)
            .map(|i| if i < m { slope.clone() } else { Rational::zero() })
            .collect();
        classes.push(NewtonClass {
            label: ClassLabel::FiniteHeight(m),
            nu: RationalVector::new(lattice.clone(), coords)?,
            defect: (m - 1) as u64,
            jb_description: format!("D*_{{1/{m}}} × {nonsplit}SO({})", n_dim - 2 * m),
        });
    }

    classes.push(NewtonClass {
        label: ClassLabel::Basic,
        nu: RationalVector::new(lattice.clone(), vec![Rational::zero(); n])?,
        defect: basic_defect(split),
        jb_description: format!("inner form of {nonsplit}SO({n_dim})"),
    });
    Ok(classes)
}

/// `⟨ν, ρ⟩` computed from coordinates.
pub fn pairing_with_rho(n_dim: usize, split: SplitType, class: &NewtonClass) -> Result<Rational> {
    let d = orthogonal_datum(n_dim, split)?;
    Ok(d.pair_coords_rational(d.rho().coords(), class.nu.coords()))
}

/// `⟨μ - ν, ρ⟩`.
pub fn mu_minus_nu_rho(n_dim: usize, split: SplitType, class: &NewtonClass) -> Result<Rational> {
    let d = orthogonal_datum(n_dim, split)?;
    let mu = hodge_mu(&d).to_rational();
    let diff = mu.sub(&class.nu)?;
    Ok(d.pair_coords_rational(d.rho().coords(), diff.coords()))
}

fn half_defect(class: &NewtonClass) -> Rational {
    Rational::new((class.defect as i64).into(), 2.into())
}

/// Dimension of the reduced Rapoport-Zink space, `⟨μ - ν, ρ⟩ - def/2`.
pub fn rz_dimension(n_dim: usize, split: SplitType, class: &NewtonClass) -> Result<Rational> {
    Ok(mu_minus_nu_rho(n_dim, split, class)? - half_defect(class))
}

/// Dimension of the Newton stratum, `⟨μ + ν, ρ⟩ - def/2`.
pub fn stratum_dimension(n_dim: usize, split: SplitType, class: &NewtonClass) -> Result<Rational> {
    let d = orthogonal_datum(n_dim, split)?;
    let mu = hodge_mu(&d);
    let rho = d.rho();
    let mu_rho = d.rho_pairing(mu.coords());
    Ok(mu_rho + d.pair_coords_rational(rho.coords(), class.nu.coords()) - half_defect(class))
}

/// Dimension of the Shimura variety, `⟨μ, 2ρ⟩ = N - 2`.
pub fn shimura_dimension(n_dim: usize) -> Rational {
    rat(n_dim as i64 - 2)
}

/// `ν ≤ μ`: `μ - ν` is a nonnegative rational combination of simple
/// coroots (and the similitude character, if any, agrees on both).
pub fn dominance_leq(d: &RootDatum, nu: &RationalVector, mu: &LatticeVector) -> Result<bool> {
    crate::lattice::ensure_same(d.cochar_lattice(), nu.lattice())?;
    crate::lattice::ensure_same(d.cochar_lattice(), mu.lattice())?;
    if !d.is_dominant(nu) {
        return Err(Error::NotDominant(nu.to_string()));
    }
    if !d.is_dominant_integral(mu) {
        return Err(Error::NotDominant(mu.to_string()));
    }
    let diff = mu.to_rational().sub(nu)?;
    if let Some(eta) = d.similitude_char() {
        let eta = eta.to_rational();
        if !d.pair_coords_rational(eta.coords(), diff.coords()).is_zero() {
            return Ok(false);
        }
    }
    Ok(d
        .simple_coroot_coordinates(diff.coords())
        .is_some_and(|c| c.iter().all(|x| !x.is_negative())))
}

/// Eigenvalues of `ν` on the standard representation, in the order
/// `(ν_1, ..., ν_n, [0,] -ν_n, ..., -ν_1)`.
pub fn full_diagonal(n_dim: usize, nu: &RationalVector) -> Vec<Rational> {
    let mut out: Vec<Rational> = nu.coords().to_vec();
    if n_dim % 2 == 1 {
        out.push(Rational::zero());
    }
    out.extend(nu.coords().iter().rev().map(|x| -x));
    out
}

/// One row of the Newton table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NewtonRow {
    pub label: ClassLabel,
    pub nu: Vec<String>,
    pub mu_minus_nu_rho: String,
    pub defect: u64,
    pub rz_dimension: String,
    pub stratum_dimension: String,
    pub jb: String,
}

pub fn newton_table(n_dim: usize, split: SplitType) -> Result<Vec<NewtonRow>> {
    newton_catalog(n_dim, split)?
        .iter()
        .map(|c| {
            Ok(NewtonRow {
                label: c.label,
                nu: c.nu.coords().iter().map(ToString::to_string).collect(),
                mu_minus_nu_rho: mu_minus_nu_rho(n_dim, split, c)?.to_string(),
                defect: c.defect,
                rz_dimension: rz_dimension(n_dim, split, c)?.to_string(),
                stratum_dimension: stratum_dimension(n_dim, split, c)?.to_string(),
                jb: c.jb_description.clone(),
            })
        })
        .collect()
}

/// Fixed-width text rendering of [`newton_table`].
pub fn format_table(rows: &[NewtonRow]) -> String {
    let header = ["class", "nu", "<mu-nu,rho>", "def", "dim RZ", "dim stratum", "J_b"];
    let cells: Vec<[String; 7]> = rows
        .iter()
        .map(|r| {
            [
                r.label.to_string(),
                format!("({})", r.nu.join(", ")),
                r.mu_minus_nu_rho.clone(),
                r.defect.to_string(),
                r.rz_dimension.clone(),
                r.stratum_dimension.clone(),
                r.jb.clone(),
            ]
        })
        .collect();
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in &cells {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |row: &[&str]| -> String {
        row.iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    let mut out = line(&header);
    out.push('\n');
    for row in &cells {
        out.push_str(&line(&row.iter().map(String::as_str).collect::<Vec<_>>()));
        out.push('\n');
    }
    out
}

/// True iff the value is a nonnegative integer or half-integer.
pub fn is_half_integral(x: &Rational) -> bool {
    !x.is_negative() && (x.is_integer() || x.denom() == &2.into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn one_half() -> Rational {
        Rational::one() / rat(2)
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn class(n_dim: usize, split: SplitType, label: ClassLabel) -> NewtonClass {
        newton_catalog(n_dim, split)
            .unwrap()
            .into_iter()
            .find(|c| c.label == label)
            .unwrap()
    }

    fn every_case() -> Vec<(usize, SplitType)> {
        (5..=14)
            .flat_map(|n| SplitType::for_dimension(n).into_iter().map(move |s| (n, s)))
            .collect()
    }

    #[test]
    fn n7_finite_height_two() {
        let c = class(7, SplitType::Odd, ClassLabel::FiniteHeight(2));
        assert_eq!(c.nu.coords(), [q(1, 2), q(1, 2), q(0, 1)]);
        assert_eq!(
            full_diagonal(7, &c.nu),
            [q(1, 2), q(1, 2), q(0, 1), q(0, 1), q(0, 1), q(-1, 2), q(-1, 2)]
        );
    }

    #[test]
    fn catalog_labels() {
        let labels: Vec<String> = newton_catalog(8, SplitType::EvenSplit)
            .unwrap()
            .iter()
            .map(|c| c.label.to_string())
            .collect();
        assert_eq!(labels, ["mu_ordinary", "finite_height(2)", "finite_height(3)", "basic"]);
        assert_eq!(newton_catalog(9, SplitType::Odd).unwrap().len(), 5);
        assert!(newton_catalog(8, SplitType::Odd).is_err());
        assert!(newton_catalog(4, SplitType::EvenSplit).is_err());
    }

    #[test]
    fn finite_heights_are_admissible() {
        // Oracle: μ - ν in the χ^v basis has partial sums ≥ 0 for B_n/D_n
        // dominance, checked here directly instead of via the coroot solve.
        for (n_dim, split) in every_case() {
            let d = orthogonal_datum(n_dim, split).unwrap();
            let mu = hodge_mu(&d);
            for c in newton_catalog(n_dim, split).unwrap() {
                assert!(d.is_dominant(&c.nu));
                assert!(dominance_leq(&d, &c.nu, &mu).unwrap(), "{n_dim} {split} {}", c.label);
                let diff = mu.to_rational().sub(&c.nu).unwrap();
                let mut partial = Rational::zero();
                for x in diff.coords() {
                    partial += x;
                    assert!(!partial.is_negative());
                }
            }
        }
    }

    #[test]
    fn rho_pairings_match_closed_forms() {
        for (n_dim, split) in every_case() {
            let n = (n_dim / 2) as i64;
            for c in newton_catalog(n_dim, split).unwrap() {
                let two = pairing_with_rho(n_dim, split, &c).unwrap() * rat(2);
                match c.label {
                    ClassLabel::FiniteHeight(m) => {
                        let m = m as i64;
                        let expected = if n_dim % 2 == 0 { 2 * n - m - 1 } else { 2 * n - m };
                        assert_eq!(two, rat(expected));
                    }
                    ClassLabel::Basic => assert!(two.is_zero()),
                    ClassLabel::MuOrdinary => {
                        let expected = if n_dim % 2 == 0 { 2 * n - 2 } else { 2 * n - 1 };
                        assert_eq!(two, rat(expected));
                    }
                }
            }
        }
    }

    #[test]
    fn rz_dimensions() {
        for (n_dim, split) in every_case() {
            for c in newton_catalog(n_dim, split).unwrap() {
                let dim = rz_dimension(n_dim, split, &c).unwrap();
                assert!(is_half_integral(&dim));
                if let ClassLabel::FiniteHeight(_) = c.label {
                    assert!(dim.is_zero());
                }
            }
            let basic = rz_dimension(n_dim, split, &class(n_dim, split, ClassLabel::Basic)).unwrap();
            let offset = match split {
                SplitType::Odd => 3,
                SplitType::EvenSplit => 4,
                SplitType::EvenNonsplit => 2,
            };
            assert_eq!(basic, q(n_dim as i64 - offset, 2));
            let half_sh = shimura_dimension(n_dim) * one_half();
            assert_eq!(basic < half_sh, split != SplitType::EvenNonsplit);
        }
        assert_eq!(rz_dimension(9, SplitType::Odd, &class(9, SplitType::Odd, ClassLabel::Basic)).unwrap(), rat(3));
        for n_dim in (6..=14).step_by(2) {
            let ns = rz_dimension(n_dim, SplitType::EvenNonsplit, &class(n_dim, SplitType::EvenNonsplit, ClassLabel::Basic)).unwrap();
            let sp = rz_dimension(n_dim, SplitType::EvenSplit, &class(n_dim, SplitType::EvenSplit, ClassLabel::Basic)).unwrap();
            assert_eq!(ns - sp, rat(1));
        }
    }

    #[test]
    fn catalog_is_a_chain() {
        for (n_dim, split) in every_case() {
            let d = orthogonal_datum(n_dim, split).unwrap();
            let classes = newton_catalog(n_dim, split).unwrap();
            for (i, upper) in classes.iter().enumerate() {
                for lower in &classes[i..] {
                    // Compare through μ - ν: lower ≤ upper iff upper - lower ≥ 0.
                    let diff = upper.nu.sub(&lower.nu).unwrap();
                    let c = d.simple_coroot_coordinates(diff.coords()).unwrap();
                    assert!(c.iter().all(|x| !x.is_negative()), "{} vs {}", upper.label, lower.label);
                }
            }
        }
    }

    #[test]
    fn stratum_dimensions_bracket() {
        for (n_dim, split) in every_case() {
            let classes = newton_catalog(n_dim, split).unwrap();
            let top = stratum_dimension(n_dim, split, &classes[0]).unwrap();
            assert_eq!(top, shimura_dimension(n_dim));
            let basic = classes.last().unwrap();
            assert_eq!(
                stratum_dimension(n_dim, split, basic).unwrap(),
                rz_dimension(n_dim, split, basic).unwrap()
            );
        }
    }

    #[test]
    fn dominance_edge_cases() {
        let d = orthogonal_datum(9, SplitType::Odd).unwrap();
        let mu = hodge_mu(&d);
        let two_mu = mu.scale(2).to_rational();
        assert!(!dominance_leq(&d, &two_mu, &mu).unwrap());
        let bad = d.cochar_lattice().vector(vec![0, 1, 0, 0]).unwrap().to_rational();
        assert!(matches!(dominance_leq(&d, &bad, &mu), Err(Error::NotDominant(_))));
    }

    #[test]
    fn table_text() {
        let rows = newton_table(9, SplitType::Odd).unwrap();
        let basic = rows.iter().find(|r| r.label == ClassLabel::Basic).unwrap();
        assert_eq!(basic.rz_dimension, "3");
        let text = format_table(&rows);
        assert!(text.lines().next().unwrap().starts_with("class"));
        assert!(text.contains("finite_height(3)"));
        assert!(text.contains("D*_{1/3} × SO(3)"));
    }

    #[test]
    fn gspin_dominance_uses_similitude() {
        let d = crate::root_datum::build_gspin(8, false).unwrap();
        let mu = d.solve_ks_lift().unwrap();
        let central = d.cochar_lattice().basis_vector(0).to_rational();
        assert!(!dominance_leq(&d, &central, &mu).unwrap());
        let half = RationalVector::new(
            d.cochar_lattice().clone(),
            vec![one_half(), Rational::zero(), Rational::zero(), Rational::zero(), Rational::zero()],
        )
        .unwrap();
        assert!(dominance_leq(&d, &half, &mu).unwrap());
    }
}
