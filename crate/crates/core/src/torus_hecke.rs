//! The ρ-twisted ("dot") Weyl action on `Q[q^{±1}][X_*]`:
//!
//! ```text
//! w • h_ν = q^{⟨ρ, ν - wν⟩} h_{wν}
//! ```
//!
//! Its invariants are the Satake image of the spherical Hecke algebra.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::group_algebra::{GroupAlgebraElement, Monomial};
use crate::lattice::{ensure_same, lattice_quotient, IntLattice, LatticeMap, LatticeVector};
use crate::linalg::{self, rat};
use crate::root_datum::{RootDatum, DEFAULT_WEYL_BOUND};
use crate::Rational;

/// A finite group of lattice automorphisms acting by the dot action.
#[derive(Clone, Debug)]
pub struct DotAction {
    lattice: Arc<IntLattice>,
    /// `⟨ρ, ·⟩` as a rational functional on `lattice`.
    rho: Vec<Rational>,
    group: Vec<LatticeMap>,
    generators: Vec<LatticeMap>,
    /// Simple roots as functionals, for dominance tests (`None` when the
    /// action was built without a positive system).
    simple_functionals: Option<Vec<Vec<Rational>>>,
}

fn rho_functional(d: &RootDatum) -> Vec<Rational> {
    let n = d.rank();
    (0..n)
        .map(|j| {
            let mut e = vec![0; n];
            e[j] = 1;
            d.rho_pairing(&e)
        })
        .collect()
}

fn simple_functionals(d: &RootDatum) -> Vec<Vec<Rational>> {
    d.simple_roots()
        .iter()
        .map(|a| d.pairing_row(a.coords()).into_iter().map(rat).collect())
        .collect()
}

fn eval(f: &[Rational], v: &[i64]) -> Rational {
    f.iter()
        .zip(v)
        .filter(|(_, &x)| x != 0)
        .map(|(a, &x)| a * rat(x))
        .sum()
}

fn integral_exponent(x: Rational, context: impl FnOnce() -> String) -> Result<i64> {
    if x.is_integer() {
        x.to_integer().to_i64().ok_or_else(|| Error::NonIntegralExponent {
            value: x.to_string(),
            context: "exponent overflows i64".into(),
        })
    } else {
        Err(Error::NonIntegralExponent {
            value: x.to_string(),
            context: context(),
        })
    }
}

impl DotAction {
    /// The full Weyl group of `d` on `X_*`.
    pub fn full(d: &RootDatum) -> Result<Self> {
        Ok(Self {
            lattice: Arc::clone(d.cochar_lattice()),
            rho: rho_functional(d),
            group: d
                .weyl_enumerate(DEFAULT_WEYL_BOUND)?
                .into_iter()
                .map(|w| w.on_cochars().clone())
                .collect(),
            generators: d
                .weyl_generators()
                .into_iter()
                .map(|w| w.on_cochars().clone())
                .collect(),
            simple_functionals: Some(simple_functionals(d)),
        })
    }

    /// The Weyl group `W_M` of the Levi centralizing `mu`, with `M`'s own ρ.
    pub fn levi(d: &RootDatum, mu: &LatticeVector) -> Result<Self> {
        let levi = d.centralizer_levi(mu)?;
        Ok(Self {
            lattice: Arc::clone(d.cochar_lattice()),
            rho: rho_functional(&levi.datum),
            group: levi.weyl.iter().map(|w| w.on_cochars().clone()).collect(),
            generators: levi
                .datum
                .weyl_generators()
                .into_iter()
                .map(|w| w.on_cochars().clone())
                .collect(),
            simple_functionals: Some(simple_functionals(&levi.datum)),
        })
    }

    /// The trivial group on `lattice`.
    pub fn trivial(lattice: &Arc<IntLattice>) -> Self {
        Self {
            lattice: Arc::clone(lattice),
            rho: vec![Rational::zero(); lattice.rank()],
            group: vec![LatticeMap::identity(lattice)],
            generators: Vec::new(),
            simple_functionals: None,
        }
    }

    /// The σ-centralizer `{w : σwσ⁻¹ = w}` acting on the σ-coinvariants
    /// `X_* / (1 - σ)X_*`. Returns the action and the projection onto the
    /// coinvariant lattice. Without σ this is the full action with the
    /// identity projection.
    pub fn relative(d: &RootDatum) -> Result<(Self, LatticeMap)> {
        let Some(sigma) = d.sigma() else {
            return Ok((Self::full(d)?, LatticeMap::identity(d.cochar_lattice())));
        };
        let x = d.cochar_lattice();
        let n = x.rank();
        let relations: Vec<LatticeVector> = (0..n)
            .map(|i| {
                let e = x.basis_vector(i);
                let s = sigma.on_cochars.apply(&e).expect("same lattice");
                e.sub(&s).expect("same lattice")
            })
            .filter(|v| !v.is_zero())
            .collect();
        let (quotient, proj) = lattice_quotient(x, &relations)?;
        let section = right_inverse(proj.matrix())?;
        let k = quotient.rank();

        let descend = |w: &LatticeMap| -> Result<LatticeMap> {
            // w̄ = π w s, well defined because w commutes with σ.
            let pw: Vec<Vec<i64>> = (0..k)
                .map(|i| {
                    (0..n)
                        .map(|j| (0..n).map(|t| proj.matrix()[i][t] * w.matrix()[t][j]).sum())
                        .collect()
                })
                .collect();
            let m = (0..k)
                .map(|i| {
                    (0..k)
                        .map(|j| {
                            let x: Rational = (0..n).map(|t| rat(pw[i][t]) * &section[t][j]).sum();
                            integral_exponent(x, || "descended Weyl matrix".into())
                        })
                        .collect::<Result<Vec<i64>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            LatticeMap::new(Arc::clone(&quotient), Arc::clone(&quotient), m)
        };

        let fixed = d.sigma_fixed_weyl(DEFAULT_WEYL_BOUND)?;
        let mut seen = BTreeSet::new();
        let mut group = Vec::new();
        for w in &fixed {
            let m = descend(w.on_cochars())?;
            if seen.insert(m.matrix().to_vec()) {
                group.push(m);
            }
        }
        // Every element doubles as a generator.
        let generators = group.clone();
        let rho_full = rho_functional(d);
        let rho = (0..k)
            .map(|j| (0..n).map(|t| &rho_full[t] * &section[t][j]).sum())
            .collect::<Vec<Rational>>();
        // ρ is σ-invariant, so it factors through the projection.
        for v in &relations {
            if !eval(&rho_full, v.coords()).is_zero() {
                return Err(Error::InvalidParameters("ρ is not σ-invariant".into()));
            }
        }
        Ok((
            Self {
                lattice: quotient,
                rho,
                group,
                generators,
                simple_functionals: None,
            },
            proj,
        ))
    }

    pub fn lattice(&self) -> &Arc<IntLattice> {
        &self.lattice
    }

    pub fn group(&self) -> &[LatticeMap] {
        &self.group
    }

    pub fn generators(&self) -> &[LatticeMap] {
        &self.generators
    }

    /// `⟨ρ, ν⟩` on the action's lattice.
    pub fn rho_pairing(&self, nu: &[i64]) -> Rational {
        eval(&self.rho, nu)
    }

    fn q_shift(&self, from: &[i64], to: &[i64]) -> Result<i64> {
        let diff: Vec<i64> = from.iter().zip(to).map(|(a, b)| a - b).collect();
        integral_exponent(eval(&self.rho, &diff), || {
            format!("⟨ρ, {from:?} - {to:?}⟩")
        })
    }

    /// `w • f`, extended linearly from monomials.
    pub fn dot_act(&self, w: &LatticeMap, f: &GroupAlgebraElement) -> Result<GroupAlgebraElement> {
        ensure_same(&self.lattice, f.lattice())?;
        ensure_same(&self.lattice, w.source())?;
        let mut terms = Vec::with_capacity(f.len());
        for (m, c) in f.terms() {
            let image = w.apply_coords(&m.exp);
            let shift = self.q_shift(&m.exp, &image)?;
            terms.push((
                Monomial {
                    q: m.q + shift,
                    exp: image,
                },
                c.clone(),
            ));
        }
        GroupAlgebraElement::from_terms(&self.lattice, terms)
    }

    /// True iff every generator fixes `f` under the dot action.
    pub fn is_dot_invariant(&self, f: &GroupAlgebraElement) -> Result<bool> {
        for g in &self.generators {
            if &self.dot_act(g, f)? != f {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn is_dominant(&self, v: &[i64]) -> bool {
        self.simple_functionals
            .as_ref()
            .is_none_or(|fs| fs.iter().all(|a| eval(a, v) >= Rational::zero()))
    }

    /// The orbit of `mu` under the group, `mu` first, then lexicographic.
    pub fn orbit(&self, mu: &LatticeVector) -> Result<Vec<LatticeVector>> {
        ensure_same(&self.lattice, mu.lattice())?;
        let rest: BTreeSet<Vec<i64>> = self
            .group
            .iter()
            .map(|w| w.apply_coords(mu.coords()))
            .filter(|v| v.as_slice() != mu.coords())
            .collect();
        Ok(std::iter::once(mu.clone())
            .chain(rest.into_iter().map(|c| mu.with_coords(c)))
            .collect())
    }

    /// `Σ_{λ ∈ W·μ} q^{⟨ρ, μ - λ⟩} h_λ` for dominant `mu`.
    pub fn orbit_sum(&self, mu: &LatticeVector) -> Result<GroupAlgebraElement> {
        ensure_same(&self.lattice, mu.lattice())?;
        if !self.is_dominant(mu.coords()) {
            return Err(Error::NotDominant(mu.to_string()));
        }
        let mut terms = Vec::new();
        for lam in self.orbit(mu)? {
            let q = self.q_shift(mu.coords(), lam.coords())?;
            terms.push((
                Monomial {
                    q,
                    exp: lam.into_coords(),
                },
                Rational::from_integer(1.into()),
            ));
        }
        GroupAlgebraElement::from_terms(&self.lattice, terms)
    }

    /// The torus-side image `h_μ` of the characteristic function of
    /// `K_M μ(ϖ) K_M`; `self` must be the `W_M`-action of `mu`'s centralizer.
    pub fn g_mu(&self, mu: &LatticeVector) -> Result<GroupAlgebraElement> {
        ensure_same(&self.lattice, mu.lattice())?;
        if self.group.iter().any(|w| w.apply_coords(mu.coords()) != mu.coords()) {
            return Err(Error::NotCentral(mu.coords().to_vec()));
        }
        self.orbit_sum(mu)
    }
}

/// A rational right inverse `s` of a surjective integer matrix `p`
/// (`p s = id`), namely `pᵀ (p pᵀ)⁻¹`.
fn right_inverse(p: &[Vec<i64>]) -> Result<linalg::RatMatrix> {
    let k = p.len();
    let n = p.first().map_or(0, Vec::len);
    let ppt: Vec<Vec<i64>> = (0..k)
        .map(|i| (0..k).map(|j| (0..n).map(|t| p[i][t] * p[j][t]).sum()).collect())
        .collect();
    let inv = linalg::inverse(&linalg::to_rat_matrix(&ppt))
        .ok_or_else(|| Error::InvalidParameters("projection is not surjective".into()))?;
    Ok((0..n)
        .map(|t| (0..k).map(|j| (0..k).map(|i| rat(p[i][t]) * &inv[i][j]).sum()).collect())
        .collect())
}

/// `⟨ρ, ·⟩` on the σ-coinvariant lattice of `d`, given the projection.
/// Exposed for callers that evaluate exponents after projecting.
pub fn coinvariant_rho(d: &RootDatum, proj: &LatticeMap) -> Result<Vec<Rational>> {
    let section = right_inverse(proj.matrix())?;
    let rho = rho_functional(d);
    let n = d.rank();
    Ok((0..proj.target().rank())
        .map(|j| (0..n).map(|t| &rho[t] * &section[t][j]).sum())
        .collect())
}
