//! Quadratic spaces over `F_p`, their totally isotropic subspaces over
//! `F_{p^k}`, and the point sets of `S_Λ`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;

use super::field::{rank, rref, Elem, FiniteField};
use crate::error::{Error, Result};

pub const GUARD_ENV: &str = "CONGRUENCE_LAB_GUARD";
pub const DEFAULT_GUARD: u128 = 10_000_000;

/// Candidate-subspace budget, overridable through `CONGRUENCE_LAB_GUARD`.
pub fn enumeration_guard() -> u128 {
    std::env::var(GUARD_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_GUARD)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WittType {
    Split,
    Nonsplit,
}

impl fmt::Display for WittType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WittType::Split => "split",
            WittType::Nonsplit => "nonsplit",
        })
    }
}

impl FromStr for WittType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "split" | "+" => Ok(WittType::Split),
            "nonsplit" | "non-split" | "-" => Ok(WittType::Nonsplit),
            other => Err(Error::Parse(format!("unknown Witt type `{other}`"))),
        }
    }
}

/// A nondegenerate symmetric bilinear space `(F_p^dim, x^T G y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FqQuadraticSpace {
    p: u64,
    gram: Vec<Vec<i64>>,
    witt_type: WittType,
}

impl FqQuadraticSpace {
    pub fn new(p: u64, gram: Vec<Vec<i64>>) -> Result<Self> {
        let f = FiniteField::new(p, 1)?;
        let n = gram.len();
        if n == 0 || gram.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidParameters("Gram matrix must be square and nonempty".into()));
        }
        let gram: Vec<Vec<i64>> = gram
            .iter()
            .map(|r| r.iter().map(|&x| x.rem_euclid(p as i64)).collect())
            .collect();
        if (0..n).any(|i| (0..i).any(|j| gram[i][j] != gram[j][i])) {
            return Err(Error::InvalidParameters("Gram matrix is not symmetric".into()));
        }
        let rows: Vec<Vec<Elem>> = gram
            .iter()
            .map(|r| r.iter().map(|&x| x as Elem).collect())
            .collect();
        if rank(&f, &rows) != n {
            return Err(Error::InvalidParameters("Gram matrix is degenerate mod p".into()));
        }
        // Even dimension 2m: split iff (-1)^m det is a square. Odd
        // dimensions are always reported as split.
        let witt_type = if n % 2 == 1 {
            WittType::Split
        } else {
            let det = det_mod(&rows, &f);
            let sign = if (n / 2) % 2 == 1 { f.neg(1) } else { 1 };
            if f.is_square(f.mul(sign, det)) {
                WittType::Split
            } else {
                WittType::Nonsplit
            }
        };
        Ok(Self { p, gram, witt_type })
    }

    /// Orthogonal sum of hyperbolic planes (plus `⟨1⟩` in odd dimension).
    pub fn split(p: u64, dim: usize) -> Result<Self> {
        let mut g = vec![vec![0i64; dim]; dim];
        for i in 0..dim {
            g[i][dim - 1 - i] = 1;
        }
        if dim % 2 == 1 {
            g[dim / 2][dim / 2] = 1;
        }
        Self::new(p, g)
    }

    /// Hyperbolic planes plus the anisotropic plane `x^2 - ε y^2`.
    pub fn nonsplit(p: u64, dim: usize) -> Result<Self> {
        if dim == 0 || dim % 2 == 1 {
            return Err(Error::InvalidParameters(format!(
                "a nonsplit space needs positive even dimension, got {dim}"
            )));
        }
        let f = FiniteField::new(p, 1)?;
        let eps = f.prime_field_nonsquare() as i64;
        let h = dim - 2;
        let mut g = vec![vec![0i64; dim]; dim];
        for i in 0..h {
            g[i][h - 1 - i] = 1;
        }
        g[h][h] = 1;
        g[h + 1][h + 1] = -eps;
        Self::new(p, g)
    }

    pub fn preset(p: u64, dim: usize, witt: WittType) -> Result<Self> {
        match witt {
            WittType::Split => Self::split(p, dim),
            WittType::Nonsplit => Self::nonsplit(p, dim),
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn witt_type(&self) -> WittType {
        self.witt_type
    }

    /// Dimension of a maximal totally isotropic subspace over `F_p`.
    pub fn witt_index(&self) -> usize {
        match self.witt_type {
            WittType::Split => self.dim() / 2,
            WittType::Nonsplit => self.dim() / 2 - 1,
        }
    }
}

fn det_mod(rows: &[Vec<Elem>], f: &FiniteField) -> Elem {
    let mut m = rows.to_vec();
    let n = m.len();
    let mut det: Elem = 1;
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| m[r][c] != 0) else {
            return 0;
        };
        if p != c {
            m.swap(p, c);
            det = f.neg(det);
        }
        det = f.mul(det, m[c][c]);
        let inv = f.inv(m[c][c]).expect("nonzero");
        for r in c + 1..n {
            let factor = f.mul(m[r][c], inv);
            for j in c..n {
                let v = f.mul(factor, m[c][j]);
                m[r][j] = f.sub(m[r][j], v);
            }
        }
    }
    det
}

/// A subspace of `F_{p^k}^n` in reduced row echelon form.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct FqSubspace {
    pub field_ext_degree: u32,
    pub basis: Vec<Vec<Elem>>,
}

impl FqSubspace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// A quadratic space together with the extension field its subspaces
/// live over.
#[derive(Clone, Debug)]
pub struct ExtendedSpace {
    space: FqQuadraticSpace,
    field: Arc<FiniteField>,
    gram: Vec<Vec<Elem>>,
}

impl ExtendedSpace {
    pub fn new(space: &FqQuadraticSpace, k: u32) -> Result<Self> {
        let field = Arc::new(FiniteField::new(space.p(), k)?);
        let gram = space
            .gram()
            .iter()
            .map(|r| r.iter().map(|&x| field.from_int(x)).collect())
            .collect();
        Ok(Self {
            space: space.clone(),
            field,
            gram,
        })
    }

    pub fn space(&self) -> &FqQuadraticSpace {
        &self.space
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn form(&self, x: &[Elem], y: &[Elem]) -> Elem {
        let f = &self.field;
        let gy: Vec<Elem> = self.gram.iter().map(|r| f.dot(r, y)).collect();
        f.dot(x, &gy)
    }

    /// Row-reduces arbitrary spanning vectors.
    pub fn span(&self, vectors: &[Vec<Elem>]) -> FqSubspace {
        let mut m = vectors.to_vec();
        rref(&self.field, &mut m);
        FqSubspace {
            field_ext_degree: self.field.degree(),
            basis: m,
        }
    }

    /// Coordinatewise `x ↦ x^p`; an echelon form stays an echelon form.
    pub fn frobenius(&self, s: &FqSubspace) -> FqSubspace {
        FqSubspace {
            field_ext_degree: s.field_ext_degree,
            basis: s
                .basis
                .iter()
                .map(|r| r.iter().map(|&x| self.field.frobenius(x)).collect())
                .collect(),
        }
    }

    pub fn sum_dim(&self, a: &FqSubspace, b: &FqSubspace) -> usize {
        let rows: Vec<Vec<Elem>> = a.basis.iter().chain(&b.basis).cloned().collect();
        rank(&self.field, &rows)
    }

    pub fn intersection_dim(&self, a: &FqSubspace, b: &FqSubspace) -> usize {
        a.dim() + b.dim() - self.sum_dim(a, b)
    }

    pub fn is_totally_isotropic(&self, s: &FqSubspace) -> bool {
        s.basis
            .iter()
            .enumerate()
            .all(|(i, x)| s.basis[i..].iter().all(|y| self.form(x, y) == 0))
    }

    /// Number of `r`-dimensional subspaces of `F_Q^n` (the Gaussian
    /// binomial), saturating on overflow.
    pub fn candidate_count(&self, r: usize) -> u128 {
        let q = self.field.size() as u128;
        let n = self.space.dim();
        if r > n {
            return 0;
        }
        let mut num: u128 = 1;
        let mut den: u128 = 1;
        for i in 0..r {
            let a = q.checked_pow((n - i) as u32).map(|x| x - 1);
            let b = q.pow((i + 1) as u32) - 1;
            match a.and_then(|a| num.checked_mul(a)) {
                Some(x) => num = x,
                None => return u128::MAX,
            }
            den *= b;
            let g = gcd(num, den);
            num /= g;
            den /= g;
        }
        num / den
    }

    /// All totally isotropic `dim_sub`-dimensional subspaces over
    /// `F_{p^k}`, sorted by echelon basis.
    pub fn enumerate_isotropic(&self, dim_sub: usize) -> Result<Vec<FqSubspace>> {
        let n = self.space.dim();
        if 2 * dim_sub > n {
            return Err(Error::InvalidParameters(format!(
                "isotropic subspaces have dimension at most {}, asked for {dim_sub}",
                n / 2
            )));
        }
        let candidates = self.candidate_count(dim_sub);
        let guard = enumeration_guard();
        if candidates > guard {
            return Err(Error::GuardExceeded { candidates, guard });
        }
        let mut out = Vec::new();
        for pivots in combinations(n, dim_sub) {
            let mut rows = Vec::with_capacity(dim_sub);
            self.extend_rows(&pivots, &mut rows, &mut out);
        }
        out.sort();
        Ok(out)
    }

    fn extend_rows(&self, pivots: &[usize], rows: &mut Vec<Vec<Elem>>, out: &mut Vec<FqSubspace>) {
        let i = rows.len();
        if i == pivots.len() {
            out.push(FqSubspace {
                field_ext_degree: self.field.degree(),
                basis: rows.clone(),
            });
            return;
        }
        let n = self.space.dim();
        let free: Vec<usize> = (pivots[i] + 1..n).filter(|c| !pivots.contains(c)).collect();
        let q = self.field.size();
        let mut row = vec![0 as Elem; n];
        row[pivots[i]] = 1;
        let total = (q as u64).pow(free.len() as u32);
        for code in 0..total {
            let mut c = code;
            for &j in free.iter().rev() {
                row[j] = (c % q as u64) as Elem;
                c /= q as u64;
            }
            if self.form(&row, &row) != 0 || rows.iter().any(|r| self.form(r, &row) != 0) {
                continue;
            }
            rows.push(row.clone());
            self.extend_rows(pivots, rows, out);
            rows.pop();
        }
    }
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// All increasing `r`-subsets of `0..n`, lexicographically.
fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, r, &mut Vec::new(), &mut out);
    out
}

/// Free-standing form of [`ExtendedSpace::enumerate_isotropic`].
pub fn enumerate_isotropic(space: &FqQuadraticSpace, dim_sub: usize, k: u32) -> Result<Vec<FqSubspace>> {
    ExtendedSpace::new(space, k)?.enumerate_isotropic(dim_sub)
}

/// The `F_{p^k}`-points of `S_Λ` for `Ω` of dimension `t`.
#[derive(Clone, Debug)]
pub struct SLambdaPoints {
    pub t: usize,
    pub witt: WittType,
    pub p: u64,
    pub k: u32,
    /// Lagrangians `L` with `dim(L + ΦL) = t/2 + 1`, canonical order.
    pub points: Vec<FqSubspace>,
    /// `0` when `dim(L ∩ L_0) ≡ t/2 (mod 2)`, else `1`.
    pub family: Vec<u8>,
    /// The reference Lagrangian `L_0`, if one exists over `F_{p^k}`.
    pub reference: Option<FqSubspace>,
    pub space: ExtendedSpace,
}

impl SLambdaPoints {
    pub fn count(&self) -> usize {
        self.points.len()
    }

    pub fn families(&self) -> (usize, usize) {
        let a = self.family.iter().filter(|&&f| f == 0).count();
        (a, self.family.len() - a)
    }

    pub fn family_of(&self, s: &FqSubspace) -> Option<u8> {
        let l0 = self.reference.as_ref()?;
        let half = self.t / 2;
        Some(((self.space.intersection_dim(s, l0) + half) % 2) as u8)
    }
}

fn check_t(t: usize) -> Result<()> {
    if t == 0 || t % 2 == 1 {
        return Err(Error::InvalidParameters(format!("t = {t} must be positive and even")));
    }
    Ok(())
}

pub fn s_lambda_points(t: usize, witt: WittType, p: u64, k: u32) -> Result<SLambdaPoints> {
    check_t(t)?;
    let space = ExtendedSpace::new(&FqQuadraticSpace::preset(p, t, witt)?, k)?;
    let half = t / 2;
    let lagrangians = space.enumerate_isotropic(half)?;
    let reference = lagrangians.first().cloned();
    let points: Vec<FqSubspace> = lagrangians
        .into_iter()
        .filter(|l| space.sum_dim(l, &space.frobenius(l)) == half + 1)
        .collect();
    let mut out = SLambdaPoints {
        t,
        witt,
        p,
        k,
        points,
        family: Vec::new(),
        reference,
        space,
    };
    out.family = out
        .points
        .iter()
        .map(|s| out.family_of(s).expect("points imply a reference"))
        .collect();
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SwapCheck {
    pub holds: bool,
    pub points: usize,
}

/// Φ maps every point of one family to a point of the other.
pub fn frobenius_swap_check(t: usize, witt: WittType, p: u64, k: u32) -> Result<SwapCheck> {
    let s = s_lambda_points(t, witt, p, k)?;
    Ok(SwapCheck {
        holds: swaps_families(&s),
        points: s.count(),
    })
}

pub fn swaps_families(s: &SLambdaPoints) -> bool {
    s.points.iter().zip(&s.family).all(|(l, &fam)| {
        let image = s.space.frobenius(l);
        s.points.binary_search(&image).is_ok() && s.family_of(&image) == Some(1 - fam)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witt_types() {
        for p in [3, 5, 7] {
            for dim in [2, 4, 6] {
                assert_eq!(FqQuadraticSpace::split(p, dim).unwrap().witt_type(), WittType::Split);
                assert_eq!(
                    FqQuadraticSpace::nonsplit(p, dim).unwrap().witt_type(),
                    WittType::Nonsplit
                );
            }
            assert_eq!(FqQuadraticSpace::split(p, 3).unwrap().witt_type(), WittType::Split);
        }
        // x^2 + y^2 is split over F_5 and anisotropic over F_3.
        let id = vec![vec![1, 0], vec![0, 1]];
        assert_eq!(FqQuadraticSpace::new(5, id.clone()).unwrap().witt_type(), WittType::Split);
        assert_eq!(FqQuadraticSpace::new(3, id).unwrap().witt_type(), WittType::Nonsplit);
        assert!(FqQuadraticSpace::new(3, vec![vec![1, 1], vec![1, 1]]).is_err());
        assert!(FqQuadraticSpace::new(3, vec![vec![1, 1], vec![0, 1]]).is_err());
        assert!(FqQuadraticSpace::nonsplit(3, 3).is_err());
    }

    #[test]
    fn plane_lines() {
        let split = FqQuadraticSpace::split(3, 2).unwrap();
        assert_eq!(enumerate_isotropic(&split, 1, 1).unwrap().len(), 2);
        let ns = FqQuadraticSpace::nonsplit(3, 2).unwrap();
        assert!(enumerate_isotropic(&ns, 1, 1).unwrap().is_empty());
        assert_eq!(enumerate_isotropic(&ns, 1, 2).unwrap().len(), 2);
        let zero = enumerate_isotropic(&ns, 0, 1).unwrap();
        assert_eq!(zero.len(), 1);
        assert_eq!(zero[0].dim(), 0);
        assert!(enumerate_isotropic(&ns, 2, 1).is_err());
    }

    #[test]
    fn maximal_isotropic_dimension_matches_witt_type() {
        for witt in [WittType::Split, WittType::Nonsplit] {
            let s = FqQuadraticSpace::preset(3, 4, witt).unwrap();
            let top = (0..=2)
                .rev()
                .find(|&r| !enumerate_isotropic(&s, r, 1).unwrap().is_empty())
                .unwrap();
            assert_eq!(top, s.witt_index());
        }
    }

    #[test]
    fn gaussian_binomials() {
        let s = ExtendedSpace::new(&FqQuadraticSpace::split(3, 4).unwrap(), 1).unwrap();
        assert_eq!(s.candidate_count(0), 1);
        assert_eq!(s.candidate_count(1), 40);
        assert_eq!(s.candidate_count(2), 130);
    }

    #[test]
    fn guard_applies() {
        let s = ExtendedSpace::new(&FqQuadraticSpace::split(5, 8).unwrap(), 4).unwrap();
        assert!(matches!(s.enumerate_isotropic(4), Err(Error::GuardExceeded { .. })));
    }

    #[test]
    fn t2_nonsplit_f9() {
        let s = s_lambda_points(2, WittType::Nonsplit, 3, 2).unwrap();
        assert_eq!(s.count(), 2);
        assert_eq!(s.families(), (1, 1));
        assert!(swaps_families(&s));
        for t in [WittType::Split, WittType::Nonsplit] {
            let c = frobenius_swap_check(2, t, 3, 1).unwrap();
            assert_eq!(c, SwapCheck { holds: true, points: 0 });
        }
        // Φ-fixed lines never qualify when t = 2.
        assert_eq!(s_lambda_points(2, WittType::Split, 3, 2).unwrap().count(), 0);
    }

    #[test]
    fn t4_families_balanced_and_swapped() {
        for witt in [WittType::Split, WittType::Nonsplit] {
            for k in 1..=2 {
                let s = s_lambda_points(4, witt, 3, k).unwrap();
                let (a, b) = s.families();
                assert_eq!(a, b);
                assert!(swaps_families(&s));
                for l in &s.points {
                    assert!(s.space.is_totally_isotropic(l));
                    assert_eq!(s.space.sum_dim(l, &s.space.frobenius(l)), 3);
                }
            }
        }
    }
}
