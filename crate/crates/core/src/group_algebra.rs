//! The commutative Laurent group algebra `Q[q^{±1}][L]` of a lattice `L`.
//!
//! Elements are finite sums `c · q^a · h_ν` with `c` rational, `a` an
//! integer and `ν ∈ L`. The term map is kept canonical at all times: keys
//! are unique, ordered lexicographically by `(q-exponent, exponent vector)`,
//! and no stored coefficient is zero.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{ensure_same, IntLattice, LatticeMap, LatticeVector};
use crate::Rational;

/// The key `q^q · h_exp` of a term.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub q: i64,
    pub exp: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAlgebraElement {
    lattice: Arc<IntLattice>,
    terms: BTreeMap<Monomial, Rational>,
}

impl GroupAlgebraElement {
    pub fn zero(lattice: &Arc<IntLattice>) -> Self {
        Self {
            lattice: Arc::clone(lattice),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(lattice: &Arc<IntLattice>) -> Self {
        Self::monomial(lattice, 0, vec![0; lattice.rank()], Rational::one())
            .expect("zero vector has the right length")
    }

    /// `coeff · q^q · h_exp`.
    pub fn monomial(
        lattice: &Arc<IntLattice>,
        q: i64,
        exp: Vec<i64>,
        coeff: Rational,
    ) -> Result<Self> {
        if exp.len() != lattice.rank() {
            return Err(Error::DimensionMismatch {
                expected: lattice.rank(),
                found: exp.len(),
            });
        }
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(Monomial { q, exp }, coeff);
        }
        Ok(Self {
            lattice: Arc::clone(lattice),
            terms,
        })
    }

    /// `h_ν`.
    pub fn h(v: &LatticeVector) -> Self {
        Self::monomial(v.lattice(), 0, v.coords().to_vec(), Rational::one())
            .expect("vector matches its lattice")
    }

    /// `q^k · h_0`.
    pub fn q_power(lattice: &Arc<IntLattice>, k: i64) -> Self {
        Self::monomial(lattice, k, vec![0; lattice.rank()], Rational::one())
            .expect("zero vector has the right length")
    }

    pub fn constant(lattice: &Arc<IntLattice>, c: Rational) -> Self {
        Self::monomial(lattice, 0, vec![0; lattice.rank()], c).expect("zero vector")
    }

    /// Builds an element from arbitrary (possibly repeated or zero) terms.
    pub fn from_terms(
        lattice: &Arc<IntLattice>,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Result<Self> {
        let mut out = Self::zero(lattice);
        for (m, c) in terms {
            if m.exp.len() != lattice.rank() {
                return Err(Error::DimensionMismatch {
                    expected: lattice.rank(),
                    found: m.exp.len(),
                });
            }
            out.add_term(m, c);
        }
        Ok(out)
    }

    pub fn lattice(&self) -> &Arc<IntLattice> {
        &self.lattice
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().all(|(m, c)| {
                m.q == 0 && m.exp.iter().all(|&e| e == 0) && c.is_one()
            })
    }

    /// The single term, if there is exactly one.
    pub fn as_single_term(&self) -> Option<(&Monomial, &Rational)> {
        (self.terms.len() == 1).then(|| self.terms.iter().next()).flatten()
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        ensure_same(&self.lattice, &other.lattice)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        ensure_same(&self.lattice, &other.lattice)?;
        let mut out = Self::zero(&self.lattice);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = Monomial {
                    q: ma.q + mb.q,
                    exp: ma.exp.iter().zip(&mb.exp).map(|(a, b)| a + b).collect(),
                };
                out.add_term(m, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.lattice);
        }
        Self {
            lattice: Arc::clone(&self.lattice),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    /// Multiplies by `q^k`.
    pub fn shift_q(&self, k: i64) -> Self {
        Self {
            lattice: Arc::clone(&self.lattice),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    (
                        Monomial {
                            q: m.q + k,
                            exp: m.exp.clone(),
                        },
                        c.clone(),
                    )
                })
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.lattice);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Pushes every exponent vector through `map` (a ring homomorphism
    /// `Q[q^{±1}][source] → Q[q^{±1}][target]`).
    pub fn map_exponents(&self, map: &LatticeMap) -> Result<Self> {
        ensure_same(map.source(), &self.lattice)?;
        Self::from_terms(
            map.target(),
            self.terms.iter().map(|(m, c)| {
                (
                    Monomial {
                        q: m.q,
                        exp: map.apply_coords(&m.exp),
                    },
                    c.clone(),
                )
            }),
        )
    }

    /// Substitutes a nonzero rational value for `q` and re-canonicalizes.
    pub fn specialize_q(&self, value: &Rational) -> Result<Self> {
        if value.is_zero() {
            return Err(Error::InvalidParameters("cannot specialize q to 0".into()));
        }
        let terms = self.terms.iter().map(|(m, c)| {
            let factor = if m.q >= 0 {
                num_traits::pow(value.clone(), m.q as usize)
            } else {
                num_traits::pow(value.recip(), m.q.unsigned_abs() as usize)
            };
            (
                Monomial {
                    q: 0,
                    exp: m.exp.clone(),
                },
                c * factor,
            )
        });
        Self::from_terms(&self.lattice, terms)
    }

    /// Re-runs canonicalization; a no-op on any value of this type.
    pub fn canonicalize(&self) -> Self {
        Self::from_terms(
            &self.lattice,
            self.terms.iter().map(|(m, c)| (m.clone(), c.clone())),
        )
        .expect("terms already match the lattice")
    }

    pub fn to_json(&self) -> GroupAlgebraJson {
        GroupAlgebraJson {
            lattice: self.lattice.labels().to_vec(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| TermJson {
                    q: m.q,
                    exp: m.exp.clone(),
                    num: c.numer().to_string(),
                    den: c.denom().to_string(),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &GroupAlgebraJson) -> Result<Self> {
        let lattice = IntLattice::new(json.lattice.iter().cloned())?;
        Self::from_json_in(&lattice, json)
    }

    /// Parses terms into an existing lattice, checking that the labels agree.
    pub fn from_json_in(lattice: &Arc<IntLattice>, json: &GroupAlgebraJson) -> Result<Self> {
        if lattice.labels() != json.lattice.as_slice() {
            return Err(Error::LatticeMismatch {
                expected: lattice.labels().join(", "),
                found: json.lattice.join(", "),
            });
        }
        let terms = json
            .terms
            .iter()
            .map(|t| {
                let num: BigInt = t
                    .num
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad numerator `{}`", t.num)))?;
                let den: BigInt = t
                    .den
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad denominator `{}`", t.den)))?;
                if den.is_zero() {
                    return Err(Error::Parse("zero denominator".into()));
                }
                Ok((
                    Monomial {
                        q: t.q,
                        exp: t.exp.clone(),
                    },
                    Rational::new(num, den),
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_terms(lattice, terms)
    }
}

/// Wire format of a group-algebra element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupAlgebraJson {
    pub lattice: Vec<String>,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub q: i64,
    pub exp: Vec<i64>,
    pub num: String,
    pub den: String,
}

impl Serialize for GroupAlgebraElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for GroupAlgebraElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let json = GroupAlgebraJson::deserialize(d)?;
        Self::from_json(&json).map_err(serde::de::Error::custom)
    }
}

// Operator impls panic on a lattice mismatch; use the `try_*` methods where
// operands may come from different lattices.
impl Add for &GroupAlgebraElement {
    type Output = GroupAlgebraElement;
    fn add(self, rhs: Self) -> GroupAlgebraElement {
        self.try_add(rhs).expect("lattice mismatch in group algebra add")
    }
}

impl Sub for &GroupAlgebraElement {
    type Output = GroupAlgebraElement;
    fn sub(self, rhs: Self) -> GroupAlgebraElement {
        self.try_sub(rhs).expect("lattice mismatch in group algebra sub")
    }
}

impl Mul for &GroupAlgebraElement {
    type Output = GroupAlgebraElement;
    fn mul(self, rhs: Self) -> GroupAlgebraElement {
        self.try_mul(rhs).expect("lattice mismatch in group algebra mul")
    }
}

impl Neg for &GroupAlgebraElement {
    type Output = GroupAlgebraElement;
    fn neg(self) -> GroupAlgebraElement {
        GroupAlgebraElement {
            lattice: Arc::clone(&self.lattice),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl fmt::Display for GroupAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if i > 0 {
                write!(f, " {sign} ")?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            write!(f, "{}*q^{}*h{:?}", c.abs(), m.q, m.exp)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn lat() -> Arc<IntLattice> {
        IntLattice::new(["a", "b"]).unwrap()
    }

    fn h(l: &Arc<IntLattice>, v: &[i64]) -> GroupAlgebraElement {
        GroupAlgebraElement::h(&l.vector(v.to_vec()).unwrap())
    }

    #[test]
    fn additive_inverse_is_empty() {
        let l = lat();
        let x = h(&l, &[1, 2]);
        let sum = &x + &(-&x);
        assert!(sum.is_zero());
        assert_eq!(sum.len(), 0);
    }

    #[test]
    fn merging_and_distinct_keys() {
        let l = lat();
        let x = h(&l, &[1, 0]);
        let two = &x + &x;
        assert_eq!(two, x.scale(&rat(2)));
        let y = &x.shift_q(1) + &x.shift_q(2);
        assert_eq!(y.len(), 2);
    }

    #[test]
    fn group_law_and_unit() {
        let l = lat();
        assert_eq!(&h(&l, &[1, 0]) * &h(&l, &[0, 3]), h(&l, &[1, 3]));
        let prod = &h(&l, &[2, -1]).shift_q(1) * &h(&l, &[-2, 1]).shift_q(-1);
        assert!(prod.is_one());
    }

    #[test]
    fn binomial_square_against_distribution() {
        let l = lat();
        let a = h(&l, &[1, 0]);
        let b = h(&l, &[0, 1]);
        let s = &a + &b;
        // Brute-force distribution over the four ordered pairs.
        let pieces = [&a, &b];
        let mut expected = GroupAlgebraElement::zero(&l);
        for x in pieces {
            for y in pieces {
                expected = &expected + &(x * y);
            }
        }
        assert_eq!(s.pow(2), expected);
        assert_eq!(
            expected,
            &(&h(&l, &[2, 0]) + &h(&l, &[1, 1]).scale(&rat(2))) + &h(&l, &[0, 2])
        );
    }

    #[test]
    fn mismatched_lattices_error() {
        let a = h(&lat(), &[1, 0]);
        let other = IntLattice::new(["c", "d"]).unwrap();
        let b = h(&other, &[1, 0]);
        assert!(matches!(a.try_add(&b), Err(Error::LatticeMismatch { .. })));
        assert!(matches!(a.try_mul(&b), Err(Error::LatticeMismatch { .. })));
    }

    #[test]
    fn specialization_is_exact() {
        let l = lat();
        let x = &h(&l, &[1, 0]).shift_q(2) + &h(&l, &[1, 0]).shift_q(-1);
        let y = x.specialize_q(&rat(3)).unwrap();
        assert_eq!(y, h(&l, &[1, 0]).scale(&(rat(9) + Rational::new(1.into(), 3.into()))));
    }

    #[test]
    fn json_round_trip_keeps_order() {
        let l = lat();
        let x = &h(&l, &[0, 1]).shift_q(3) + &h(&l, &[1, 0]).scale(&Rational::new((-1).into(), 2.into()));
        let s = serde_json::to_string(&x).unwrap();
        assert!(s.starts_with(r#"{"lattice":["a","b"],"terms":[{"q":0,"exp":[1,0],"num":"-1","den":"2"}"#));
        let back: GroupAlgebraElement = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
    }
}
