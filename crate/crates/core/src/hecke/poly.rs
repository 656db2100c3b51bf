//! Dense univariate polynomials in `X` over the group algebra.

use std::sync::Arc;

use crate::error::Result;
use crate::group_algebra::GroupAlgebraElement;
use crate::lattice::{ensure_same, IntLattice, LatticeMap};
use crate::Rational;

/// `Σ coeffs[k] X^k`, trailing zero coefficients trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    lattice: Arc<IntLattice>,
    coeffs: Vec<GroupAlgebraElement>,
}

impl Poly {
    pub fn zero(lattice: &Arc<IntLattice>) -> Self {
        Self {
            lattice: Arc::clone(lattice),
            coeffs: Vec::new(),
        }
    }

    pub fn one(lattice: &Arc<IntLattice>) -> Self {
        Self::constant(GroupAlgebraElement::one(lattice))
    }

    pub fn constant(c: GroupAlgebraElement) -> Self {
        Self::from_ascending(Arc::clone(c.lattice()), vec![c]).expect("one lattice")
    }

    /// `X^k - c`.
    pub fn binomial(k: usize, c: &GroupAlgebraElement) -> Self {
        let l = c.lattice();
        let mut coeffs = vec![GroupAlgebraElement::zero(l); k + 1];
        coeffs[k] = GroupAlgebraElement::one(l);
        coeffs[0] = &coeffs[0] - c;
        Self::from_ascending(Arc::clone(l), coeffs).expect("one lattice")
    }

    /// Builds from coefficients of `X^0, X^1, ...`.
    pub fn from_ascending(
        lattice: Arc<IntLattice>,
        coeffs: Vec<GroupAlgebraElement>,
    ) -> Result<Self> {
        for c in &coeffs {
            ensure_same(&lattice, c.lattice())?;
        }
        let mut p = Self { lattice, coeffs };
        p.trim();
        Ok(p)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(GroupAlgebraElement::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn lattice(&self) -> &Arc<IntLattice> {
        &self.lattice
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(GroupAlgebraElement::is_one)
    }

    pub fn ascending(&self) -> &[GroupAlgebraElement] {
        &self.coeffs
    }

    /// Coefficients from the leading one down to the constant term.
    pub fn descending(&self) -> Vec<GroupAlgebraElement> {
        self.coeffs.iter().rev().cloned().collect()
    }

    /// The coefficient of `X^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> GroupAlgebraElement {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| GroupAlgebraElement::zero(&self.lattice))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        ensure_same(&self.lattice, &other.lattice)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|k| self.coeff(k).try_add(&other.coeff(k)))
            .collect::<Result<_>>()?;
        Self::from_ascending(Arc::clone(&self.lattice), coeffs)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            lattice: Arc::clone(&self.lattice),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        ensure_same(&self.lattice, &other.lattice)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.lattice));
        }
        let mut coeffs =
            vec![GroupAlgebraElement::zero(&self.lattice); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] = coeffs[i + j].try_add(&a.try_mul(b)?)?;
                }
            }
        }
        Self::from_ascending(Arc::clone(&self.lattice), coeffs)
    }

    pub fn scale(&self, c: &GroupAlgebraElement) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|x| x.try_mul(c))
            .collect::<Result<_>>()?;
        Self::from_ascending(Arc::clone(&self.lattice), coeffs)
    }

    /// Evaluates at `X = x` by Horner's rule.
    pub fn eval(&self, x: &GroupAlgebraElement) -> Result<GroupAlgebraElement> {
        ensure_same(&self.lattice, x.lattice())?;
        let mut acc = GroupAlgebraElement::zero(&self.lattice);
        for c in self.coeffs.iter().rev() {
            acc = acc.try_mul(x)?.try_add(c)?;
        }
        Ok(acc)
    }

    pub fn map_exponents(&self, map: &LatticeMap) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.map_exponents(map))
            .collect::<Result<_>>()?;
        Self::from_ascending(Arc::clone(map.target()), coeffs)
    }

    pub fn specialize_q(&self, value: &Rational) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.specialize_q(value))
            .collect::<Result<_>>()?;
        Self::from_ascending(Arc::clone(&self.lattice), coeffs)
    }

    pub fn product<'a>(
        lattice: &Arc<IntLattice>,
        factors: impl IntoIterator<Item = &'a Poly>,
    ) -> Result<Self> {
        let mut acc = Self::one(lattice);
        for f in factors {
            acc = acc.try_mul(f)?;
        }
        Ok(acc)
    }

    /// The first `k` (from the top) where the coefficients differ.
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n).rev().find(|&k| self.coeff(k) != other.coeff(k))
    }
}
