//! Free finite-rank integer lattices, vectors in them and integer maps
//! between them.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, rat};
use crate::snf::{self, IntMatrix};
use crate::Rational;

/// A free `Z`-module with a labelled basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntLattice {
    labels: Vec<String>,
}

impl IntLattice {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Arc<Self>> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::InvalidParameters(format!(
                    "duplicate basis label `{l}`"
                )));
            }
        }
        Ok(Arc::new(Self { labels }))
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn zero(self: &Arc<Self>) -> LatticeVector {
        LatticeVector {
            lattice: Arc::clone(self),
            coords: vec![0; self.rank()],
        }
    }

    pub fn basis_vector(self: &Arc<Self>, i: usize) -> LatticeVector {
        let mut v = self.zero();
        v.coords[i] = 1;
        v
    }

    pub fn vector(self: &Arc<Self>, coords: Vec<i64>) -> Result<LatticeVector> {
        LatticeVector::new(Arc::clone(self), coords)
    }

    pub(crate) fn describe(&self) -> String {
        self.labels.join(", ")
    }
}

pub(crate) fn ensure_same(a: &Arc<IntLattice>, b: &Arc<IntLattice>) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(Error::LatticeMismatch {
            expected: a.describe(),
            found: b.describe(),
        })
    }
}

/// An integer vector in a lattice, in basis coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticeVector {
    lattice: Arc<IntLattice>,
    coords: Vec<i64>,
}

impl LatticeVector {
    pub fn new(lattice: Arc<IntLattice>, coords: Vec<i64>) -> Result<Self> {
        if coords.len() != lattice.rank() {
            return Err(Error::DimensionMismatch {
                expected: lattice.rank(),
                found: coords.len(),
            });
        }
        Ok(Self { lattice, coords })
    }

    pub fn lattice(&self) -> &Arc<IntLattice> {
        &self.lattice
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<i64> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        ensure_same(&self.lattice, &other.lattice)?;
        Ok(self.with_coords(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        ensure_same(&self.lattice, &other.lattice)?;
        Ok(self.with_coords(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        ))
    }

    pub fn scale(&self, k: i64) -> Self {
        self.with_coords(self.coords.iter().map(|c| c * k).collect())
    }

    pub fn to_rational(&self) -> RationalVector {
        RationalVector {
            lattice: Arc::clone(&self.lattice),
            coords: self.coords.iter().map(|&c| rat(c)).collect(),
        }
    }

    pub(crate) fn with_coords(&self, coords: Vec<i64>) -> Self {
        Self {
            lattice: Arc::clone(&self.lattice),
            coords,
        }
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_linear_combination(f, &self.lattice, self.coords.iter().map(|&c| rat(c)))
    }
}

/// A vector of `L ⊗ Q`, used for ρ and Newton cocharacters.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalVector {
    lattice: Arc<IntLattice>,
    coords: Vec<Rational>,
}

impl RationalVector {
    pub fn new(lattice: Arc<IntLattice>, coords: Vec<Rational>) -> Result<Self> {
        if coords.len() != lattice.rank() {
            return Err(Error::DimensionMismatch {
                expected: lattice.rank(),
                found: coords.len(),
            });
        }
        Ok(Self { lattice, coords })
    }

    pub fn lattice(&self) -> &Arc<IntLattice> {
        &self.lattice
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        ensure_same(&self.lattice, &other.lattice)?;
        Ok(Self {
            lattice: Arc::clone(&self.lattice),
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    /// Returns the integral vector if every coordinate is an integer.
    pub fn to_integral(&self) -> Option<LatticeVector> {
        let coords = self
            .coords
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer().to_i64()).flatten())
            .collect::<Option<Vec<i64>>>()?;
        Some(LatticeVector {
            lattice: Arc::clone(&self.lattice),
            coords,
        })
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_linear_combination(f, &self.lattice, self.coords.iter().cloned())
    }
}

fn write_linear_combination(
    f: &mut fmt::Formatter<'_>,
    lattice: &IntLattice,
    coords: impl Iterator<Item = Rational>,
) -> fmt::Result {
    let mut first = true;
    for (c, label) in coords.zip(lattice.labels()) {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let abs = c.abs();
        match (first, neg) {
            (true, true) => write!(f, "-")?,
            (false, true) => write!(f, " - ")?,
            (false, false) => write!(f, " + ")?,
            (true, false) => {}
        }
        if !abs.is_one() {
            write!(f, "{abs}*")?;
        }
        write!(f, "{label}")?;
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

/// A `Z`-linear map, stored as a `target.rank() x source.rank()` matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticeMap {
    source: Arc<IntLattice>,
    target: Arc<IntLattice>,
    matrix: Vec<Vec<i64>>,
}

impl LatticeMap {
    pub fn new(
        source: Arc<IntLattice>,
        target: Arc<IntLattice>,
        matrix: Vec<Vec<i64>>,
    ) -> Result<Self> {
        if matrix.len() != target.rank() {
            return Err(Error::DimensionMismatch {
                expected: target.rank(),
                found: matrix.len(),
            });
        }
        if let Some(row) = matrix.iter().find(|r| r.len() != source.rank()) {
            return Err(Error::DimensionMismatch {
                expected: source.rank(),
                found: row.len(),
            });
        }
        Ok(Self {
            source,
            target,
            matrix,
        })
    }

    pub fn identity(lattice: &Arc<IntLattice>) -> Self {
        let n = lattice.rank();
        Self {
            source: Arc::clone(lattice),
            target: Arc::clone(lattice),
            matrix: (0..n)
                .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
                .collect(),
        }
    }

    /// Builds an endomorphism from the images of the basis vectors.
    pub fn from_images(lattice: &Arc<IntLattice>, images: &[Vec<i64>]) -> Result<Self> {
        let n = lattice.rank();
        if images.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: images.len(),
            });
        }
        let matrix = (0..n)
            .map(|i| images.iter().map(|col| col[i]).collect())
            .collect();
        Self::new(Arc::clone(lattice), Arc::clone(lattice), matrix)
    }

    pub fn source(&self) -> &Arc<IntLattice> {
        &self.source
    }

    pub fn target(&self) -> &Arc<IntLattice> {
        &self.target
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub(crate) fn apply_coords(&self, v: &[i64]) -> Vec<i64> {
        self.matrix
            .iter()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn apply(&self, v: &LatticeVector) -> Result<LatticeVector> {
        ensure_same(&self.source, v.lattice())?;
        Ok(LatticeVector {
            lattice: Arc::clone(&self.target),
            coords: self.apply_coords(v.coords()),
        })
    }

    pub fn apply_rational(&self, v: &RationalVector) -> Result<RationalVector> {
        ensure_same(&self.source, v.lattice())?;
        let coords = self
            .matrix
            .iter()
            .map(|row| row.iter().zip(v.coords()).map(|(&a, b)| rat(a) * b).sum())
            .collect();
        RationalVector::new(Arc::clone(&self.target), coords)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &LatticeMap) -> Result<LatticeMap> {
        ensure_same(&inner.target, &self.source)?;
        let k = self.source.rank();
        let matrix = self
            .matrix
            .iter()
            .map(|row| {
                (0..inner.source.rank())
                    .map(|j| (0..k).map(|t| row[t] * inner.matrix[t][j]).sum())
                    .collect()
            })
            .collect();
        Ok(LatticeMap {
            source: Arc::clone(&inner.source),
            target: Arc::clone(&self.target),
            matrix,
        })
    }

    pub fn transpose_matrix(&self) -> Vec<Vec<i64>> {
        let rows = self.matrix.len();
        let cols = self.source.rank();
        (0..cols)
            .map(|j| (0..rows).map(|i| self.matrix[i][j]).collect())
            .collect()
    }

    /// Inverse of a unimodular endomorphism.
    pub fn inverse(&self) -> Result<LatticeMap> {
        let m = linalg::to_rat_matrix(&self.matrix);
        let inv = linalg::inverse(&m)
            .ok_or_else(|| Error::InvalidParameters("map is not invertible".into()))?;
        let matrix = inv
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| {
                        x.is_integer()
                            .then(|| x.to_integer().to_i64())
                            .flatten()
                            .ok_or_else(|| {
                                Error::InvalidParameters("inverse is not integral".into())
                            })
                    })
                    .collect::<Result<Vec<i64>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(LatticeMap {
            source: Arc::clone(&self.target),
            target: Arc::clone(&self.source),
            matrix,
        })
    }

    pub fn is_identity(&self) -> bool {
        self.matrix
            .iter()
            .enumerate()
            .all(|(i, row)| row.iter().enumerate().all(|(j, &x)| x == i64::from(i == j)))
    }
}

fn big_to_i64(x: &BigInt) -> Result<i64> {
    x.to_i64()
        .ok_or_else(|| Error::InvalidParameters(format!("integer {x} overflows i64")))
}

/// Row-style Hermite normal form: echelon rows, positive pivots, entries
/// above each pivot reduced into `[0, pivot)`. Zero rows are dropped.
fn row_hermite(mut rows: IntMatrix) -> IntMatrix {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        loop {
            let nonzero: Vec<usize> = (r..rows.len()).filter(|&i| !rows[i][c].is_zero()).collect();
            if nonzero.is_empty() {
                break;
            }
            let p = *nonzero
                .iter()
                .min_by_key(|&&i| rows[i][c].abs())
                .expect("nonempty");
            rows.swap(r, p);
            let mut done = true;
            for i in (r + 1)..rows.len() {
                if rows[i][c].is_zero() {
                    continue;
                }
                let f = rows[i][c].div_floor(&rows[r][c]);
                let pivot = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
                if !rows[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if r < rows.len() && !rows[r][c].is_zero() {
            if rows[r][c].is_negative() {
                for x in rows[r].iter_mut() {
                    *x = -&*x;
                }
            }
            for i in 0..r {
                let f = rows[i][c].div_floor(&rows[r][c]);
                if !f.is_zero() {
                    let pivot = rows[r].clone();
                    for (x, y) in rows[i].iter_mut().zip(&pivot) {
                        *x -= &f * y;
                    }
                }
            }
            r += 1;
        }
    }
    rows.truncate(r);
    rows
}

/// The quotient `l / ⟨relations⟩` together with the projection onto it.
///
/// Fails with [`Error::Torsion`] unless the quotient is free. The quotient
/// basis is put in Hermite form, and a basis vector that is the image of an
/// original basis vector inherits its label in brackets.
pub fn lattice_quotient(
    l: &Arc<IntLattice>,
    relations: &[LatticeVector],
) -> Result<(Arc<IntLattice>, LatticeMap)> {
    for r in relations {
        ensure_same(l, r.lattice())?;
    }
    let n = l.rank();
    // Relations as columns.
    let rel: IntMatrix = (0..n)
        .map(|i| relations.iter().map(|r| BigInt::from(r.coords()[i])).collect())
        .collect();
    let (rank, left) = if relations.is_empty() {
        (0, snf::identity(n))
    } else {
        let s = snf::smith_normal_form(&rel);
        let torsion: Vec<String> = s
            .invariant_factors
            .iter()
            .filter(|d| !d.is_one())
            .map(ToString::to_string)
            .collect();
        if !torsion.is_empty() {
            return Err(Error::Torsion { factors: torsion });
        }
        (s.rank, s.left)
    };

    let projection = row_hermite(left[rank..].to_vec());
    let k = projection.len();
    let matrix: Vec<Vec<i64>> = projection
        .iter()
        .map(|row| row.iter().map(big_to_i64).collect())
        .collect::<Result<_>>()?;

    let labels: Vec<String> = (0..k)
        .map(|j| {
            (0..n)
                .find(|&i| (0..k).all(|t| matrix[t][i] == i64::from(t == j)))
                .map(|i| format!("[{}]", l.labels()[i]))
                .unwrap_or_else(|| format!("u_{}", j + 1))
        })
        .collect();
    let quotient = IntLattice::new(labels)?;
    let map = LatticeMap::new(Arc::clone(l), Arc::clone(&quotient), matrix)?;
    Ok((quotient, map))
}
