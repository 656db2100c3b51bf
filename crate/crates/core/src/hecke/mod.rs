//! Twisted Hecke polynomials `det(X - M)`, where `M` acts on the weights of
//! `V^μ` by `λ ↦ σλ` scaled by `a(λ)·h_λ`.
//!
//! Because `M` is a monomial matrix its determinant factors over the
//! σ-cycles `O` of the (multi)set of weights:
//!
//! ```text
//! det(X - M) = Π_O (X^{|O|} - Π_{λ∈O} a(λ) · h_{Σ_{λ∈O} λ})
//! ```
//!
//! [`det_oracle`] recomputes the same determinant by cofactor expansion.

mod poly;
mod weights;

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group_algebra::{GroupAlgebraElement, GroupAlgebraJson, Monomial};
use crate::lattice::{ensure_same, IntLattice, LatticeMap, LatticeVector};
use crate::linalg::rat;
use crate::root_datum::RootDatum;
use crate::Rational;

pub use poly::Poly;
pub use weights::{freudenthal_weights, minuscule_weights, weyl_dimension, WeightMultiset};

/// How the diagonal twist `a(λ)` is normalized.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    /// `a(λ) = q^{⟨ρ, μ - λ⟩}`; with trivial σ every coefficient is
    /// dot-invariant and `a(μ) = 1`.
    #[serde(rename = "SPLIT_RHO")]
    SplitRho,
    /// `a(λ) = q^{d - |⟨ρ, λ⟩|}` with `d = ⟨ρ, μ⟩`, the symmetric
    /// normalization displayed for quasi-split GSpin.
    #[serde(rename = "PAPER_GSPIN")]
    Symmetric,
}

impl std::str::FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "split" | "split_rho" => Ok(Mode::SplitRho),
            "symmetric" | "paper" | "paper_gspin" => Ok(Mode::Symmetric),
            other => Err(Error::Parse(format!("unknown mode `{other}`"))),
        }
    }
}

/// One factor `X^{cycle_length} - constant`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleFactor {
    pub cycle_length: usize,
    pub constant: GroupAlgebraElement,
}

impl CycleFactor {
    pub fn to_poly(&self) -> Poly {
        Poly::binomial(self.cycle_length, &self.constant)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckePolynomial {
    poly: Poly,
    factors: Vec<CycleFactor>,
    mode: Mode,
}

/// The weight-indexed matrix `M` together with its row/column labels.
#[derive(Clone, Debug)]
pub struct TwistedMatrix {
    pub weights: Vec<(LatticeVector, u64)>,
    /// `entries[r][c]`, zero where `M` vanishes.
    pub entries: Vec<Vec<GroupAlgebraElement>>,
    /// `cycles[k]` lists the column indices of one σ-cycle.
    pub cycles: Vec<Vec<usize>>,
    /// The twist factor `a(λ) = q^{exponent}` per column.
    pub exponents: Vec<i64>,
}

fn integral(x: Rational, what: &str) -> Result<i64> {
    if x.is_integer() {
        x.to_integer().to_i64().ok_or_else(|| Error::NonIntegralExponent {
            value: x.to_string(),
            context: format!("{what} overflows"),
        })
    } else {
        Err(Error::NonIntegralExponent {
            value: x.to_string(),
            context: what.to_string(),
        })
    }
}

/// Largest `dim V^μ` accepted by [`weights_of`]; the expanded polynomial
/// grows too fast beyond this.
pub const MAX_DEGREE: usize = 64;

/// The weights of `V^μ`: the Weyl orbit for minuscule `mu`, Freudenthal's
/// multiset otherwise.
pub fn weights_of(d: &RootDatum, mu: &LatticeVector) -> Result<WeightMultiset> {
    let weights = if d.is_minuscule(mu) {
        minuscule_weights(d, mu)?
    } else {
        if weyl_dimension(d, mu)? > Rational::from_integer(MAX_DEGREE.into()) {
            return Err(Error::BoundExceeded { bound: MAX_DEGREE });
        }
        freudenthal_weights(d, mu)?
    };
    if weights.total() > MAX_DEGREE as u64 {
        return Err(Error::BoundExceeded { bound: MAX_DEGREE });
    }
    Ok(weights)
}

/// Builds `M` for `(d, μ, mode)`: entry `a(λ)·h_λ` in position `(σλ, λ)`.
pub fn twisted_matrix(d: &RootDatum, mu: &LatticeVector, mode: Mode) -> Result<TwistedMatrix> {
    let weights = weights_of(d, mu)?;
    let expanded = weights.expanded();
    let lattice = d.cochar_lattice();
    let dim = expanded.len();

    let sigma: Option<&LatticeMap> = d.sigma().map(|s| &s.on_cochars);
    if let Some(s) = sigma {
        let mut power = s.clone();
        let mut order = 1;
        while !power.is_identity() {
            power = power.compose(s)?;
            order += 1;
            if order > 64 {
                break;
            }
        }
        if order > 2 {
            return Err(Error::HigherOrderTwist(order));
        }
    }

    let index: HashMap<(Vec<i64>, u64), usize> = expanded
        .iter()
        .enumerate()
        .map(|(i, (w, k))| ((w.coords().to_vec(), *k), i))
        .collect();
    // Copies of a weight are matched index-wise with copies of its image.
    let target: Vec<usize> = expanded
        .iter()
        .map(|(w, k)| {
            let image = match sigma {
                Some(s) => s.apply_coords(w.coords()),
                None => w.coords().to_vec(),
            };
            index.get(&(image, *k)).copied().ok_or(Error::NotSigmaStable)
        })
        .collect::<Result<_>>()?;

    let d_mu = d.rho_pairing(mu.coords());
    let exponents: Vec<i64> = expanded
        .iter()
        .map(|(lam, _)| {
            let rl = d.rho_pairing(lam.coords());
            let x = match mode {
                Mode::SplitRho => &d_mu - rl,
                Mode::Symmetric => &d_mu - rl.abs(),
            };
            integral(x, "twist exponent of a weight")
        })
        .collect::<Result<_>>()?;

    let zero = GroupAlgebraElement::zero(lattice);
    let mut entries = vec![vec![zero; dim]; dim];
    for (c, (lam, _)) in expanded.iter().enumerate() {
        entries[target[c]][c] =
            GroupAlgebraElement::monomial(lattice, exponents[c], lam.coords().to_vec(), rat(1))?;
    }

    let mut seen = vec![false; dim];
    let mut cycles = Vec::new();
    for start in 0..dim {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            cycle.push(i);
            i = target[i];
        }
        cycles.push(cycle);
    }

    Ok(TwistedMatrix {
        weights: expanded,
        entries,
        cycles,
        exponents,
    })
}

/// The Hecke polynomial via its σ-cycle factorization.
pub fn hecke_poly(d: &RootDatum, mu: &LatticeVector, mode: Mode) -> Result<HeckePolynomial> {
    let m = twisted_matrix(d, mu, mode)?;
    let lattice = d.cochar_lattice();
    let n = lattice.rank();
    let mut factors: Vec<CycleFactor> = m
        .cycles
        .iter()
        .map(|cycle| {
            let q: i64 = cycle.iter().map(|&c| m.exponents[c]).sum();
            let mut exp = vec![0i64; n];
            for &c in cycle {
                for (e, x) in exp.iter_mut().zip(m.weights[c].0.coords()) {
                    *e += x;
                }
            }
            Ok(CycleFactor {
                cycle_length: cycle.len(),
                constant: GroupAlgebraElement::monomial(lattice, q, exp, rat(1))?,
            })
        })
        .collect::<Result<_>>()?;
    // Longest cycles first, then by q-exponent and weight.
    factors.sort_by_cached_key(|f| {
        let m = as_monomial(&f.constant).expect("cycle constants are monomials");
        (std::cmp::Reverse(f.cycle_length), m.q, m.exp.clone())
    });
    HeckePolynomial::from_factors(lattice, factors, mode)
}

fn det_minor(
    rows: &[Vec<Poly>],
    row: usize,
    used: u64,
    memo: &mut HashMap<u64, Poly>,
    lattice: &Arc<IntLattice>,
) -> Result<Poly> {
    let n = rows.len();
    if row == n {
        return Ok(Poly::one(lattice));
    }
    if let Some(p) = memo.get(&used) {
        return Ok(p.clone());
    }
    let mut acc = Poly::zero(lattice);
    let mut sign_pos = true;
    for c in 0..n {
        if used & (1 << c) != 0 {
            continue;
        }
        let entry = &rows[row][c];
        if !entry.is_zero() {
            let minor = det_minor(rows, row + 1, used | (1 << c), memo, lattice)?;
            if !minor.is_zero() {
                let term = entry.try_mul(&minor)?;
                acc = if sign_pos {
                    acc.try_add(&term)?
                } else {
                    acc.try_sub(&term)?
                };
            }
        }
        sign_pos = !sign_pos;
    }
    memo.insert(used, acc.clone());
    Ok(acc)
}

/// `det(X - M)` by Laplace expansion along rows, with no use of the cycle
/// structure. Intended as an independent check of [`hecke_poly`].
pub fn det_oracle(d: &RootDatum, mu: &LatticeVector, mode: Mode) -> Result<HeckePolynomial> {
    let m = twisted_matrix(d, mu, mode)?;
    let lattice = d.cochar_lattice();
    let n = m.entries.len();
    if n > 63 {
        return Err(Error::InvalidParameters("matrix too large for cofactor expansion".into()));
    }
    let zero = GroupAlgebraElement::zero(lattice);
    let one = GroupAlgebraElement::one(lattice);
    let rows: Vec<Vec<Poly>> = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| {
                    let minus = -&m.entries[r][c];
                    let x = if r == c { one.clone() } else { zero.clone() };
                    Poly::from_ascending(Arc::clone(lattice), vec![minus, x]).expect("one lattice")
                })
                .collect()
        })
        .collect();
    let mut memo = HashMap::new();
    let poly = det_minor(&rows, 0, 0, &mut memo, lattice)?;
    Ok(HeckePolynomial {
        poly,
        factors: Vec::new(),
        mode,
    })
}

impl HeckePolynomial {
    pub fn from_factors(
        lattice: &Arc<IntLattice>,
        factors: Vec<CycleFactor>,
        mode: Mode,
    ) -> Result<Self> {
        let mut poly = Poly::one(lattice);
        for f in &factors {
            ensure_same(lattice, f.constant.lattice())?;
            poly = poly.try_mul(&f.to_poly())?;
        }
        Ok(Self {
            poly,
            factors,
            mode,
        })
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn factors(&self) -> &[CycleFactor] {
        &self.factors
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn lattice(&self) -> &Arc<IntLattice> {
        self.poly.lattice()
    }

    pub fn degree(&self) -> usize {
        self.poly.degree().unwrap_or(0)
    }

    /// Coefficients from the leading `1` down to the constant term.
    pub fn coeffs(&self) -> Vec<GroupAlgebraElement> {
        self.poly.descending()
    }

    /// True iff the stored factors multiply out to the stored coefficients.
    pub fn factors_consistent(&self) -> bool {
        if self.factors.is_empty() {
            return true;
        }
        let fs: Vec<Poly> = self.factors.iter().map(CycleFactor::to_poly).collect();
        Poly::product(self.lattice(), &fs).is_ok_and(|p| p == self.poly)
    }

    /// Splits into the product of the cycle factors of length at least two
    /// and the product of the linear ones.
    pub fn special_factor(&self) -> Result<(HeckePolynomial, HeckePolynomial)> {
        let (special, rest): (Vec<CycleFactor>, Vec<CycleFactor>) = self
            .factors
            .iter()
            .cloned()
            .partition(|f| f.cycle_length >= 2);
        Ok((
            Self::from_factors(self.lattice(), special, self.mode)?,
            Self::from_factors(self.lattice(), rest, self.mode)?,
        ))
    }

    /// The value of the polynomial at `X = h_μ`; zero iff `h_μ` is a root.
    pub fn congruence_root_check(&self, mu: &LatticeVector) -> Result<GroupAlgebraElement> {
        ensure_same(self.lattice(), mu.lattice())?;
        self.poly.eval(&GroupAlgebraElement::h(mu))
    }

    /// Like [`Self::congruence_root_check`], after pushing every exponent
    /// vector (and `μ`) through `proj`, e.g. onto the σ-coinvariants.
    pub fn congruence_root_check_projected(
        &self,
        mu: &LatticeVector,
        proj: &LatticeMap,
    ) -> Result<GroupAlgebraElement> {
        ensure_same(self.lattice(), mu.lattice())?;
        let p = self.poly.map_exponents(proj)?;
        p.eval(&GroupAlgebraElement::h(&proj.apply(mu)?))
    }

    /// Substitutes a value for `q` in every coefficient and factor.
    pub fn specialize_q(&self, value: &Rational) -> Result<Self> {
        Ok(Self {
            poly: self.poly.specialize_q(value)?,
            factors: self
                .factors
                .iter()
                .map(|f| {
                    Ok(CycleFactor {
                        cycle_length: f.cycle_length,
                        constant: f.constant.specialize_q(value)?,
                    })
                })
                .collect::<Result<_>>()?,
            mode: self.mode,
        })
    }

    pub fn to_json(&self) -> HeckeJson {
        HeckeJson {
            lattice: self.lattice().labels().to_vec(),
            mode: self.mode,
            degree: self.degree(),
            coeffs: self.coeffs().iter().map(GroupAlgebraElement::to_json).collect(),
            factors: self
                .factors
                .iter()
                .map(|f| FactorJson {
                    cycle_length: f.cycle_length,
                    constant: f.constant.to_json(),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &HeckeJson) -> Result<Self> {
        let lattice = IntLattice::new(json.lattice.iter().cloned())?;
        let mut ascending = json
            .coeffs
            .iter()
            .map(|c| GroupAlgebraElement::from_json_in(&lattice, c))
            .collect::<Result<Vec<_>>>()?;
        ascending.reverse();
        let poly = Poly::from_ascending(Arc::clone(&lattice), ascending)?;
        let factors = json
            .factors
            .iter()
            .map(|f| {
                Ok(CycleFactor {
                    cycle_length: f.cycle_length,
                    constant: GroupAlgebraElement::from_json_in(&lattice, &f.constant)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let h = Self {
            poly,
            factors,
            mode: json.mode,
        };
        if !h.factors_consistent() {
            return Err(Error::Parse("factors do not multiply to the coefficients".into()));
        }
        Ok(h)
    }
}

/// Wire format: coefficients are listed from the leading one down.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeckeJson {
    pub lattice: Vec<String>,
    pub mode: Mode,
    pub degree: usize,
    pub coeffs: Vec<GroupAlgebraJson>,
    pub factors: Vec<FactorJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorJson {
    pub cycle_length: usize,
    pub constant: GroupAlgebraJson,
}

/// `(X² - q^{2(n-1)} h_{e_0^v}) · Π_{i<n} (X - q^{i-1} h_{e_i^v})(X - q^{i-1} h_{e_0^v - e_i^v})`
/// in the cocharacter lattice of quasi-split `GSpin(2n)`, assembled term by
/// term without reference to weights or σ.
pub fn gspin_product_reference(d: &RootDatum, n: usize) -> Result<Poly> {
    let l = d.cochar_lattice();
    if l.rank() != n + 1 {
        return Err(Error::DimensionMismatch {
            expected: n + 1,
            found: l.rank(),
        });
    }
    let mono = |q: i64, exp: Vec<i64>| GroupAlgebraElement::monomial(l, q, exp, rat(1));
    let unit = |i: usize| {
        let mut v = vec![0i64; n + 1];
        v[i] = 1;
        v
    };
    let mut factors = vec![Poly::binomial(2, &mono(2 * (n as i64 - 1), unit(0))?)];
    for i in 1..n {
        let mut s_over_t = unit(0);
        s_over_t[i] = -1;
        factors.push(Poly::binomial(1, &mono(i as i64 - 1, unit(i))?));
        factors.push(Poly::binomial(1, &mono(i as i64 - 1, s_over_t)?));
    }
    Poly::product(l, &factors)
}

/// The single term `q^k h_ν` of a monomial element, if it is one.
pub fn as_monomial(x: &GroupAlgebraElement) -> Option<&Monomial> {
    x.as_single_term()
        .and_then(|(m, c)| (c == &rat(1)).then_some(m))
}

#[cfg(test)]
mod tests;
