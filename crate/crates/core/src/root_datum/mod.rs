//! Based root data for `GL_m`, `SO(N)` and `GSpin(N)`.
//!
//! Both lattices are stored with respect to integral bases. For GSpin this
//! is the `e`-basis (`e_0, ..., e_n` on characters and `e_0^v, ..., e_n^v`
//! on cocharacters), in which the pairing is *not* the identity matrix:
//!
//! ```text
//! ⟨e_0, e_j^v⟩ = 1   for all j
//! ⟨e_i, e_j^v⟩ = δ_ij for i ≥ 1
//! ```
//!
//! The `χ`-basis, which involves half-integral generators, is only exposed
//! through [`RootDatum::chi_expansion_char`] and
//! [`RootDatum::chi_expansion_cochar`] for display.

mod weyl;

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{ensure_same, IntLattice, LatticeMap, LatticeVector, RationalVector};
use crate::linalg::{self, rat, Solution};
use crate::Rational;

pub use weyl::{Levi, WeylElement};

/// Default bound passed to [`RootDatum::weyl_enumerate`] by callers that
/// do not care; large enough for every type up to rank 7.
pub const DEFAULT_WEYL_BOUND: usize = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Gl,
    So,
    Gspin,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Gl => "gl",
            Family::So => "so",
            Family::Gspin => "gspin",
        })
    }
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "gl" => Ok(Family::Gl),
            "so" => Ok(Family::So),
            "gspin" => Ok(Family::Gspin),
            other => Err(Error::Parse(format!("unknown group family `{other}`"))),
        }
    }
}

/// A group to build: `GL_size`, `SO(size)` or `GSpin(size)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GroupSpec {
    pub family: Family,
    pub size: usize,
    pub quasi_split: bool,
}

impl GroupSpec {
    pub fn gl(m: usize) -> Self {
        Self {
            family: Family::Gl,
            size: m,
            quasi_split: false,
        }
    }

    pub fn so(n_dim: usize, quasi_split: bool) -> Self {
        Self {
            family: Family::So,
            size: n_dim,
            quasi_split,
        }
    }

    pub fn gspin(n_dim: usize, quasi_split: bool) -> Self {
        Self {
            family: Family::Gspin,
            size: n_dim,
            quasi_split,
        }
    }

    pub fn build(&self) -> Result<RootDatum> {
        match self.family {
            Family::Gl => {
                if self.quasi_split {
                    return Err(Error::InvalidParameters(
                        "GL has no quasi-split outer form here".into(),
                    ));
                }
                build_gl(self.size)
            }
            Family::So => build_so(self.size, self.quasi_split),
            Family::Gspin => build_gspin(self.size, self.quasi_split),
        }
    }

    /// The standard minuscule cocharacter: `(1, 0, ..., 0)` for GL and SO,
    /// `e_1^v` for GSpin.
    pub fn default_mu(&self) -> Vec<i64> {
        match self.family {
            Family::Gl | Family::So => {
                let rank = match self.family {
                    Family::Gl => self.size,
                    _ => self.size / 2,
                };
                let mut v = vec![0; rank];
                if rank > 0 {
                    v[0] = 1;
                }
                v
            }
            Family::Gspin => {
                let mut v = vec![0; self.size / 2 + 1];
                v[1] = 1;
                v
            }
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::Gl => return write!(f, "GL_{}", self.size),
            Family::So => write!(f, "SO({})", self.size)?,
            Family::Gspin => write!(f, "GSpin({})", self.size)?,
        }
        if self.quasi_split {
            write!(f, " quasi-split")
        } else {
            write!(f, " split")
        }
    }
}

/// Dynkin type of the root system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CartanType {
    /// No roots.
    Torus,
    A(usize),
    B(usize),
    D(usize),
    /// A subsystem (e.g. a Levi) whose type is not tracked.
    Unclassified,
}

impl CartanType {
    /// `⟨α_i, α_j^v⟩` in the simple-root ordering used by the builders.
    pub fn cartan_matrix(&self) -> Option<Vec<Vec<i64>>> {
        let (r, edge): (usize, Box<dyn Fn(usize, usize) -> i64>) = match *self {
            CartanType::Torus => return Some(Vec::new()),
            CartanType::Unclassified => return None,
            CartanType::A(r) => (r, Box::new(|i, j| -i64::from(i.abs_diff(j) == 1))),
            CartanType::B(r) => (
                r,
                Box::new(move |i, j| {
                    if i.abs_diff(j) != 1 {
                        0
                    } else if i == r - 2 && j == r - 1 {
                        // ⟨α_{n-1}, α_n^v⟩ with α_n^v = 2e_n^v
                        -2
                    } else {
                        -1
                    }
                }),
            ),
            CartanType::D(r) => (
                r,
                Box::new(move |i, j| {
                    let (lo, hi) = (i.min(j), i.max(j));
                    if hi == r - 1 {
                        // α_n is attached to α_{n-2}
                        -i64::from(r >= 3 && lo == r - 3)
                    } else {
                        -i64::from(hi - lo == 1)
                    }
                }),
            ),
        };
        Some(
            (0..r)
                .map(|i| (0..r).map(|j| if i == j { 2 } else { edge(i, j) }).collect())
                .collect(),
        )
    }
}

/// An involution acting compatibly on characters and cocharacters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Involution {
    pub on_chars: LatticeMap,
    pub on_cochars: LatticeMap,
}

#[derive(Clone, Debug)]
pub struct RootDatum {
    name: String,
    spec: Option<GroupSpec>,
    cartan_type: CartanType,
    char_lattice: Arc<IntLattice>,
    cochar_lattice: Arc<IntLattice>,
    /// `pairing[i][j] = ⟨x_i, y_j⟩` for the character basis `x` and the
    /// cocharacter basis `y`.
    pairing: Vec<Vec<i64>>,
    simple_roots: Vec<LatticeVector>,
    simple_coroots: Vec<LatticeVector>,
    positive_roots: Vec<LatticeVector>,
    positive_coroots: Vec<LatticeVector>,
    sigma: Option<Involution>,
    similitude_char: Option<LatticeVector>,
    base_characters: Vec<LatticeVector>,
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

fn combo(n: usize, parts: &[(usize, i64)]) -> Vec<i64> {
    let mut v = vec![0; n];
    for &(i, c) in parts {
        v[i] += c;
    }
    v
}

impl RootDatum {
    /// Assembles a datum from simple roots and coroots, computes the
    /// positive system and checks every axiom.
    #[allow(clippy::too_many_arguments)]
    pub fn from_simple_system(
        name: impl Into<String>,
        cartan_type: CartanType,
        char_lattice: Arc<IntLattice>,
        cochar_lattice: Arc<IntLattice>,
        pairing: Vec<Vec<i64>>,
        simple_roots: Vec<Vec<i64>>,
        simple_coroots: Vec<Vec<i64>>,
    ) -> Result<Self> {
        let n = char_lattice.rank();
        if cochar_lattice.rank() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: cochar_lattice.rank(),
            });
        }
        if pairing.len() != n || pairing.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidParameters("pairing must be square".into()));
        }
        if simple_roots.len() != simple_coroots.len() {
            return Err(Error::InvalidParameters(
                "simple roots and coroots differ in number".into(),
            ));
        }
        let simple_roots = simple_roots
            .into_iter()
            .map(|c| char_lattice.vector(c))
            .collect::<Result<Vec<_>>>()?;
        let simple_coroots = simple_coroots
            .into_iter()
            .map(|c| cochar_lattice.vector(c))
            .collect::<Result<Vec<_>>>()?;
        let mut datum = Self {
            name: name.into(),
            spec: None,
            cartan_type,
            char_lattice,
            cochar_lattice,
            pairing,
            simple_roots,
            simple_coroots,
            positive_roots: Vec::new(),
            positive_coroots: Vec::new(),
            sigma: None,
            similitude_char: None,
            base_characters: Vec::new(),
        };
        datum.compute_positive_system()?;
        Ok(datum)
    }

    fn compute_positive_system(&mut self) -> Result<()> {
        let r = self.simple_roots.len();
        if r == 0 {
            return Ok(());
        }
        // Height functional: ξ with ⟨α_i, ξ⟩ = 1 for every simple root.
        let rows: Vec<Vec<i64>> = self
            .simple_roots
            .iter()
            .map(|a| self.pairing_row(a.coords()))
            .collect();
        let xi = match linalg::solve(&linalg::to_rat_matrix(&rows), &vec![rat(1); r])? {
            Solution::Unique(x) | Solution::Many(x) => x,
            Solution::None => {
                return Err(Error::InvalidParameters(
                    "simple roots are linearly dependent".into(),
                ))
            }
        };

        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut queue: VecDeque<(Vec<i64>, Vec<i64>)> = VecDeque::new();
        for (a, c) in self.simple_roots.iter().zip(&self.simple_coroots) {
            if seen.insert(a.coords().to_vec()) {
                queue.push_back((a.coords().to_vec(), c.coords().to_vec()));
            }
        }
        let mut pairs = Vec::new();
        while let Some((a, c)) = queue.pop_front() {
            for i in 0..r {
                let na = self.reflect_char_coords(i, &a);
                let nc = self.reflect_cochar_coords(i, &c);
                if seen.insert(na.clone()) {
                    queue.push_back((na, nc));
                }
            }
            pairs.push((a, c));
            if pairs.len() > 100_000 {
                return Err(Error::InvalidParameters("root system is not finite".into()));
            }
        }

        let mut positive: Vec<(Vec<i64>, Vec<i64>)> = pairs
            .into_iter()
            .filter(|(a, _)| {
                let height: Rational = self
                    .pairing_row(a)
                    .iter()
                    .zip(&xi)
                    .map(|(&p, x)| rat(p) * x)
                    .sum();
                height > Rational::zero()
            })
            .collect();
        positive.sort();
        self.positive_roots = positive
            .iter()
            .map(|(a, _)| self.char_lattice.vector(a.clone()))
            .collect::<Result<_>>()?;
        self.positive_coroots = positive
            .into_iter()
            .map(|(_, c)| self.cochar_lattice.vector(c))
            .collect::<Result<_>>()?;
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn spec(&self) -> Option<GroupSpec> {
        self.spec
    }

    pub fn cartan_type(&self) -> CartanType {
        self.cartan_type
    }

    pub fn char_lattice(&self) -> &Arc<IntLattice> {
        &self.char_lattice
    }

    pub fn cochar_lattice(&self) -> &Arc<IntLattice> {
        &self.cochar_lattice
    }

    pub fn pairing_matrix(&self) -> &[Vec<i64>] {
        &self.pairing
    }

    pub fn rank(&self) -> usize {
        self.char_lattice.rank()
    }

    pub fn semisimple_rank(&self) -> usize {
        self.simple_roots.len()
    }

    pub fn simple_roots(&self) -> &[LatticeVector] {
        &self.simple_roots
    }

    pub fn simple_coroots(&self) -> &[LatticeVector] {
        &self.simple_coroots
    }

    pub fn positive_roots(&self) -> &[LatticeVector] {
        &self.positive_roots
    }

    pub fn positive_coroots(&self) -> &[LatticeVector] {
        &self.positive_coroots
    }

    pub fn sigma(&self) -> Option<&Involution> {
        self.sigma.as_ref()
    }

    pub fn similitude_char(&self) -> Option<&LatticeVector> {
        self.similitude_char.as_ref()
    }

    pub fn base_characters(&self) -> &[LatticeVector] {
        &self.base_characters
    }

    /// Replaces the similitude character; mainly useful to probe
    /// [`RootDatum::solve_ks_lift`] with degenerate input.
    pub fn with_similitude_char(mut self, eta: Option<Vec<i64>>) -> Result<Self> {
        self.similitude_char = eta.map(|c| self.char_lattice.vector(c)).transpose()?;
        Ok(self)
    }

    /// `χ^T P` : the row vector computing `⟨χ, ·⟩` on cocharacter coords.
    pub(crate) fn pairing_row(&self, chi: &[i64]) -> Vec<i64> {
        let n = self.rank();
        (0..n)
            .map(|j| (0..n).map(|i| chi[i] * self.pairing[i][j]).sum())
            .collect()
    }

    /// `P ν` : the column computing `⟨·, ν⟩` on character coords.
    pub(crate) fn pairing_col(&self, nu: &[i64]) -> Vec<i64> {
        self.pairing
            .iter()
            .map(|row| row.iter().zip(nu).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub(crate) fn pair_coords(&self, chi: &[i64], nu: &[i64]) -> i64 {
        self.pairing_row(chi).iter().zip(nu).map(|(a, b)| a * b).sum()
    }

    pub(crate) fn pair_coords_rational(&self, chi: &[Rational], nu: &[Rational]) -> Rational {
        let n = self.rank();
        let mut acc = Rational::zero();
        for i in 0..n {
            if chi[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if self.pairing[i][j] != 0 && !nu[j].is_zero() {
                    acc += &chi[i] * rat(self.pairing[i][j]) * &nu[j];
                }
            }
        }
        acc
    }

    /// `⟨χ, ν⟩` for a character and a cocharacter.
    pub fn pair(&self, chi: &LatticeVector, nu: &LatticeVector) -> Result<i64> {
        ensure_same(&self.char_lattice, chi.lattice())?;
        ensure_same(&self.cochar_lattice, nu.lattice())?;
        Ok(self.pair_coords(chi.coords(), nu.coords()))
    }

    /// `⟨χ, ν⟩` for rational vectors.
    pub fn pair_rational(&self, chi: &RationalVector, nu: &RationalVector) -> Result<Rational> {
        ensure_same(&self.char_lattice, chi.lattice())?;
        ensure_same(&self.cochar_lattice, nu.lattice())?;
        Ok(self.pair_coords_rational(chi.coords(), nu.coords()))
    }

    pub(crate) fn reflect_char_coords(&self, i: usize, chi: &[i64]) -> Vec<i64> {
        let k = self.pair_coords(chi, self.simple_coroots[i].coords());
        chi.iter()
            .zip(self.simple_roots[i].coords())
            .map(|(x, a)| x - k * a)
            .collect()
    }

    pub(crate) fn reflect_cochar_coords(&self, i: usize, nu: &[i64]) -> Vec<i64> {
        let k = self.pair_coords(self.simple_roots[i].coords(), nu);
        nu.iter()
            .zip(self.simple_coroots[i].coords())
            .map(|(x, a)| x - k * a)
            .collect()
    }

    /// The simple reflection `s_i` on cocharacters, `ν ↦ ν - ⟨α_i, ν⟩α_i^v`.
    pub fn simple_reflection_cochar(&self, i: usize) -> LatticeMap {
        let n = self.rank();
        let images: Vec<Vec<i64>> = (0..n)
            .map(|j| self.reflect_cochar_coords(i, &unit(n, j)))
            .collect();
        LatticeMap::from_images(&self.cochar_lattice, &images).expect("square")
    }

    /// The simple reflection `s_i` on characters, `χ ↦ χ - ⟨χ, α_i^v⟩α_i`.
    pub fn simple_reflection_char(&self, i: usize) -> LatticeMap {
        let n = self.rank();
        let images: Vec<Vec<i64>> = (0..n)
            .map(|j| self.reflect_char_coords(i, &unit(n, j)))
            .collect();
        LatticeMap::from_images(&self.char_lattice, &images).expect("square")
    }

    /// The action on characters dual to an automorphism `a` of the
    /// cocharacter lattice: the unique `a*` with `⟨a*χ, aν⟩ = ⟨χ, ν⟩`.
    pub fn contragredient(&self, a: &LatticeMap) -> Result<LatticeMap> {
        ensure_same(&self.cochar_lattice, a.source())?;
        // a*^T P a = P  =>  a* = (P a^{-1} P^{-1})^T
        let p = linalg::to_rat_matrix(&self.pairing);
        let p_inv = linalg::inverse(&p)
            .ok_or_else(|| Error::InvalidParameters("pairing is degenerate".into()))?;
        let a_inv = a.inverse()?;
        let a_inv = linalg::to_rat_matrix(a_inv.matrix());
        let n = self.rank();
        let mul = |x: &linalg::RatMatrix, y: &linalg::RatMatrix| -> linalg::RatMatrix {
            (0..n)
                .map(|i| (0..n).map(|j| (0..n).map(|k| &x[i][k] * &y[k][j]).sum()).collect())
                .collect()
        };
        let m = mul(&mul(&p, &a_inv), &p_inv);
        let matrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let x = &m[j][i];
                        if x.is_integer() {
                            Ok(num_traits::ToPrimitive::to_i64(&x.to_integer()).unwrap_or(0))
                        } else {
                            Err(Error::InvalidParameters(
                                "contragredient map is not integral".into(),
                            ))
                        }
                    })
                    .collect::<Result<Vec<i64>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        LatticeMap::new(
            Arc::clone(&self.char_lattice),
            Arc::clone(&self.char_lattice),
            matrix,
        )
    }

    /// Half the sum of the positive roots, in `X^* ⊗ Q`.
    pub fn rho(&self) -> RationalVector {
        let n = self.rank();
        let mut acc = vec![Rational::zero(); n];
        for a in &self.positive_roots {
            for (x, &c) in acc.iter_mut().zip(a.coords()) {
                *x += rat(c);
            }
        }
        let half = Rational::new(1.into(), 2.into());
        RationalVector::new(
            Arc::clone(&self.char_lattice),
            acc.into_iter().map(|x| x * &half).collect(),
        )
        .expect("rank matches")
    }

    /// Half the sum of the positive coroots, in `X_* ⊗ Q`.
    pub fn rho_dual(&self) -> RationalVector {
        let n = self.rank();
        let mut acc = vec![Rational::zero(); n];
        for a in &self.positive_coroots {
            for (x, &c) in acc.iter_mut().zip(a.coords()) {
                *x += rat(c);
            }
        }
        let half = Rational::new(1.into(), 2.into());
        RationalVector::new(
            Arc::clone(&self.cochar_lattice),
            acc.into_iter().map(|x| x * &half).collect(),
        )
        .expect("rank matches")
    }

    /// `⟨ρ, ν⟩` for a cocharacter.
    pub fn rho_pairing(&self, nu: &[i64]) -> Rational {
        let rho = self.rho();
        let nu: Vec<Rational> = nu.iter().map(|&c| rat(c)).collect();
        self.pair_coords_rational(rho.coords(), &nu)
    }

    /// True iff `⟨α_i, ν⟩ ≥ 0` for every simple root.
    pub fn is_dominant(&self, nu: &RationalVector) -> bool {
        self.simple_roots.iter().all(|a| {
            let a: Vec<Rational> = a.coords().iter().map(|&c| rat(c)).collect();
            self.pair_coords_rational(&a, nu.coords()) >= Rational::zero()
        })
    }

    pub fn is_dominant_integral(&self, nu: &LatticeVector) -> bool {
        self.simple_roots
            .iter()
            .all(|a| self.pair_coords(a.coords(), nu.coords()) >= 0)
    }

    /// True iff `|⟨α, μ⟩| ≤ 1` for every root.
    pub fn is_minuscule(&self, mu: &LatticeVector) -> bool {
        self.positive_roots
            .iter()
            .all(|a| self.pair_coords(a.coords(), mu.coords()).abs() <= 1)
    }

    /// Coordinates of `v ∈ X_* ⊗ Q` in the simple coroots, or `None` when
    /// `v` is outside their span.
    pub fn simple_coroot_coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        let r = self.semisimple_rank();
        if r == 0 {
            return v.iter().all(Zero::is_zero).then(Vec::new);
        }
        let a: linalg::RatMatrix = (0..self.rank())
            .map(|i| (0..r).map(|j| rat(self.simple_coroots[j].coords()[i])).collect())
            .collect();
        match linalg::solve(&a, v).ok()? {
            Solution::Unique(x) => Some(x),
            _ => None,
        }
    }

    /// Writes a character in the `χ`-basis (GSpin only; identity otherwise).
    pub fn chi_expansion_char(&self, chi: &LatticeVector) -> Vec<Rational> {
        match self.spec.map(|s| s.family) {
            Some(Family::Gspin) => {
                // e_0 = χ_0 + (1/2)(χ_1 + ... + χ_n), e_i = χ_i
                let c = chi.coords();
                let half = Rational::new(c[0].into(), 2.into());
                std::iter::once(rat(c[0]))
                    .chain(c[1..].iter().map(|&x| rat(x) + &half))
                    .collect()
            }
            _ => chi.coords().iter().map(|&x| rat(x)).collect(),
        }
    }

    /// Writes a cocharacter in the `χ^v`-basis (GSpin only).
    pub fn chi_expansion_cochar(&self, nu: &LatticeVector) -> Vec<Rational> {
        match self.spec.map(|s| s.family) {
            Some(Family::Gspin) => {
                // e_0^v = χ_0^v, e_i^v = χ_i^v + (1/2)χ_0^v
                let c = nu.coords();
                let tail: i64 = c[1..].iter().sum();
                std::iter::once(rat(c[0]) + Rational::new(tail.into(), 2.into()))
                    .chain(c[1..].iter().map(|&x| rat(x)))
                    .collect()
            }
            _ => nu.coords().iter().map(|&x| rat(x)).collect(),
        }
    }

    /// The unique cocharacter lifting `χ_1^v` of SO with similitude weight
    /// one: it pairs to `δ_{1j}` with the pulled-back characters `χ_j` and
    /// to `1` with `η`.
    pub fn solve_ks_lift(&self) -> Result<LatticeVector> {
        if self.base_characters.is_empty() {
            return Err(Error::InvalidParameters(
                "datum has no pulled-back orthogonal characters".into(),
            ));
        }
        let eta = self.similitude_char.as_ref().ok_or_else(|| {
            Error::Underdetermined("no similitude character is set".into())
        })?;
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for (j, chi) in self.base_characters.iter().enumerate() {
            rows.push(self.pairing_row(chi.coords()));
            rhs.push(rat(i64::from(j == 0)));
        }
        rows.push(self.pairing_row(eta.coords()));
        rhs.push(rat(1));
        let a = linalg::to_rat_matrix(&rows);
        if linalg::rank(&a) < self.rank() {
            return Err(Error::Underdetermined(
                "the lifting conditions do not pin down a unique cocharacter".into(),
            ));
        }
        match linalg::solve(&a, &rhs)? {
            Solution::Unique(x) => {
                let v = RationalVector::new(Arc::clone(&self.cochar_lattice), x)?;
                v.to_integral().ok_or_else(|| {
                    Error::NoSolution("the lift is not an integral cocharacter".into())
                })
            }
            Solution::Many(_) => Err(Error::Underdetermined("lift is not unique".into())),
            Solution::None => Err(Error::NoSolution("lifting conditions are inconsistent".into())),
        }
    }

    /// Lists every violated root-datum axiom; empty means the datum is valid.
    pub fn axiom_violations(&self) -> Vec<String> {
        let mut bad = Vec::new();
        let r = self.semisimple_rank();
        for i in 0..r {
            let v = self.pair_coords(self.simple_roots[i].coords(), self.simple_coroots[i].coords());
            if v != 2 {
                bad.push(format!("⟨α_{}, α_{}^v⟩ = {v}", i + 1, i + 1));
            }
        }
        if let Some(expected) = self.cartan_type.cartan_matrix() {
            let actual: Vec<Vec<i64>> = (0..r)
                .map(|i| {
                    (0..r)
                        .map(|j| {
                            self.pair_coords(
                                self.simple_roots[i].coords(),
                                self.simple_coroots[j].coords(),
                            )
                        })
                        .collect()
                })
                .collect();
            if actual != expected {
                bad.push(format!(
                    "Cartan matrix {actual:?} does not match type {:?}",
                    self.cartan_type
                ));
            }
        }
        let pos: BTreeSet<Vec<i64>> = self
            .positive_coroots
            .iter()
            .map(|c| c.coords().to_vec())
            .collect();
        for i in 0..r {
            let own = self.simple_coroots[i].coords();
            for c in &pos {
                if c.as_slice() == own {
                    continue;
                }
                let img = self.reflect_cochar_coords(i, c);
                if !pos.contains(&img) {
                    bad.push(format!("s_{} sends positive coroot {c:?} outside", i + 1));
                }
            }
        }
        if let Some(sigma) = &self.sigma {
            let n = self.rank();
            for i in 0..n {
                for j in 0..n {
                    let x = sigma.on_chars.apply_coords(&unit(n, i));
                    let y = sigma.on_cochars.apply_coords(&unit(n, j));
                    if self.pair_coords(&x, &y) != self.pairing[i][j] {
                        bad.push("σ does not preserve the pairing".into());
                    }
                }
            }
            let roots: BTreeSet<Vec<i64>> =
                self.simple_roots.iter().map(|a| a.coords().to_vec()).collect();
            let coroots: BTreeSet<Vec<i64>> =
                self.simple_coroots.iter().map(|a| a.coords().to_vec()).collect();
            let sroots: BTreeSet<Vec<i64>> =
                roots.iter().map(|a| sigma.on_chars.apply_coords(a)).collect();
            let scoroots: BTreeSet<Vec<i64>> =
                coroots.iter().map(|a| sigma.on_cochars.apply_coords(a)).collect();
            if sroots != roots || scoroots != coroots {
                bad.push("σ does not permute the simple (co)roots".into());
            }
            let sq_c = sigma.on_chars.compose(&sigma.on_chars).expect("endomorphism");
            let sq_v = sigma.on_cochars.compose(&sigma.on_cochars).expect("endomorphism");
            if !sq_c.is_identity() || !sq_v.is_identity() {
                bad.push("σ² ≠ id".into());
            }
        }
        if let Some(eta) = &self.similitude_char {
            for (i, c) in self.simple_coroots.iter().enumerate() {
                if self.pair_coords(eta.coords(), c.coords()) != 0 {
                    bad.push(format!("⟨η, α_{}^v⟩ ≠ 0", i + 1));
                }
            }
        }
        bad.dedup();
        bad
    }

    fn validated(self) -> Result<Self> {
        let bad = self.axiom_violations();
        if bad.is_empty() {
            Ok(self)
        } else {
            Err(Error::InvalidParameters(format!(
                "{} is not a valid root datum: {}",
                self.name,
                bad.join("; ")
            )))
        }
    }
}

/// `GL_m`: type `A_{m-1}` in the standard `χ_i` basis.
pub fn build_gl(m: usize) -> Result<RootDatum> {
    if m == 0 {
        return Err(Error::InvalidParameters("GL_m needs m >= 1".into()));
    }
    let chars = IntLattice::new((1..=m).map(|i| format!("chi_{i}")))?;
    let cochars = IntLattice::new((1..=m).map(|i| format!("chi_{i}^v")))?;
    let pairing = (0..m).map(|i| unit(m, i)).collect();
    let simple: Vec<Vec<i64>> = (0..m - 1).map(|i| combo(m, &[(i, 1), (i + 1, -1)])).collect();
    let cartan = if m == 1 {
        CartanType::Torus
    } else {
        CartanType::A(m - 1)
    };
    let mut d = RootDatum::from_simple_system(
        format!("GL_{m}"),
        cartan,
        chars,
        cochars,
        pairing,
        simple.clone(),
        simple,
    )?;
    d.spec = Some(GroupSpec::gl(m));
    d.validated()
}

/// Simple roots and coroots of `B_n` / `D_n`, in coordinates `offset..` of
/// a lattice of rank `total`. `long_coroot_fix` is subtracted from the
/// coroots of roots `e_i + e_j` (resp. `e_n`) to land in the GSpin lattice.
fn orthogonal_simple_system(
    n: usize,
    odd: bool,
    total: usize,
    offset: usize,
    central: Option<usize>,
) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
    let mut roots = Vec::new();
    let mut coroots = Vec::new();
    let e = |i: usize| offset + i;
    for i in 0..n.saturating_sub(1) {
        roots.push(combo(total, &[(e(i), 1), (e(i + 1), -1)]));
        coroots.push(combo(total, &[(e(i), 1), (e(i + 1), -1)]));
    }
    if odd {
        roots.push(combo(total, &[(e(n - 1), 1)]));
        let mut c = combo(total, &[(e(n - 1), 2)]);
        if let Some(z) = central {
            c[z] -= 1;
        }
        coroots.push(c);
    } else {
        roots.push(combo(total, &[(e(n - 2), 1), (e(n - 1), 1)]));
        let mut c = combo(total, &[(e(n - 2), 1), (e(n - 1), 1)]);
        if let Some(z) = central {
            c[z] -= 1;
        }
        coroots.push(c);
    }
    (roots, coroots)
}

/// `SO(N)`: type `B_n` for `N = 2n+1`, `D_n` for `N = 2n`, in the `χ` basis.
/// The quasi-split form (even `N` only) carries `σ: χ_n ↦ -χ_n`.
pub fn build_so(n_dim: usize, quasi_split: bool) -> Result<RootDatum> {
    if n_dim < 3 {
        return Err(Error::InvalidParameters("SO(N) needs N >= 3".into()));
    }
    let odd = n_dim % 2 == 1;
    if odd && quasi_split {
        return Err(Error::InvalidParameters(
            "odd orthogonal groups have no quasi-split non-split form".into(),
        ));
    }
    let n = n_dim / 2;
    let chars = IntLattice::new((1..=n).map(|i| format!("chi_{i}")))?;
    let cochars = IntLattice::new((1..=n).map(|i| format!("chi_{i}^v")))?;
    let pairing = (0..n).map(|i| unit(n, i)).collect();
    let (roots, coroots) = orthogonal_simple_system(n, odd, n, 0, None);
    let cartan = if odd { CartanType::B(n) } else { CartanType::D(n) };
    let name = format!("SO({n_dim}){}", if quasi_split { " quasi-split" } else { "" });
    let mut d =
        RootDatum::from_simple_system(name, cartan, chars, cochars, pairing, roots, coroots)?;
    d.spec = Some(GroupSpec::so(n_dim, quasi_split));
    if quasi_split {
        let images: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                let mut v = unit(n, i);
                if i == n - 1 {
                    v[i] = -1;
                }
                v
            })
            .collect();
        d.sigma = Some(Involution {
            on_chars: LatticeMap::from_images(&d.char_lattice, &images)?,
            on_cochars: LatticeMap::from_images(&d.cochar_lattice, &images)?,
        });
    }
    d.validated()
}

/// `GSpin(N)` in the `e`-basis of rank `n + 1`.
///
/// The quasi-split form carries `σ: e_n^v ↦ e_0^v - e_n^v` on cocharacters
/// and its contragredient on characters. The similitude character is
/// `η = 2e_0 - (e_1 + ... + e_n)`, i.e. `2χ_0`.
pub fn build_gspin(n_dim: usize, quasi_split: bool) -> Result<RootDatum> {
    if n_dim < 3 {
        return Err(Error::InvalidParameters("GSpin(N) needs N >= 3".into()));
    }
    let odd = n_dim % 2 == 1;
    if odd && quasi_split {
        return Err(Error::InvalidParameters(
            "odd GSpin groups have no quasi-split non-split form".into(),
        ));
    }
    let n = n_dim / 2;
    let total = n + 1;
    let chars = IntLattice::new((0..=n).map(|i| format!("e_{i}")))?;
    let cochars = IntLattice::new((0..=n).map(|i| format!("e_{i}^v")))?;
    let pairing: Vec<Vec<i64>> = (0..total)
        .map(|i| {
            if i == 0 {
                vec![1; total]
            } else {
                unit(total, i)
            }
        })
        .collect();
    let (roots, coroots) = orthogonal_simple_system(n, odd, total, 1, Some(0));
    let cartan = if odd { CartanType::B(n) } else { CartanType::D(n) };
    let name = format!("GSpin({n_dim}){}", if quasi_split { " quasi-split" } else { "" });
    let mut d =
        RootDatum::from_simple_system(name, cartan, chars, cochars, pairing, roots, coroots)?;
    d.spec = Some(GroupSpec::gspin(n_dim, quasi_split));
    let mut eta = vec![-1; total];
    eta[0] = 2;
    d.similitude_char = Some(d.char_lattice.vector(eta)?);
    d.base_characters = (1..=n)
        .map(|i| d.char_lattice.vector(unit(total, i)))
        .collect::<Result<_>>()?;
    if quasi_split {
        let images: Vec<Vec<i64>> = (0..total)
            .map(|i| {
                if i == n {
                    combo(total, &[(0, 1), (n, -1)])
                } else {
                    unit(total, i)
                }
            })
            .collect();
        let on_cochars = LatticeMap::from_images(&d.cochar_lattice, &images)?;
        let on_chars = d.contragredient(&on_cochars)?;
        d.sigma = Some(Involution {
            on_chars,
            on_cochars,
        });
    }
    d.validated()
}

/// Serializable view of a datum: bases, pairing, roots, σ and η.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DatumJson {
    pub name: String,
    pub cartan_type: String,
    pub char_basis: Vec<String>,
    pub cochar_basis: Vec<String>,
    pub pairing: Vec<Vec<i64>>,
    pub simple_roots: Vec<Vec<i64>>,
    pub simple_coroots: Vec<Vec<i64>>,
    pub positive_roots: Vec<Vec<i64>>,
    pub positive_coroots: Vec<Vec<i64>>,
    pub sigma_on_chars: Option<Vec<Vec<i64>>>,
    pub sigma_on_cochars: Option<Vec<Vec<i64>>>,
    pub similitude_char: Option<Vec<i64>>,
    pub rho: Vec<String>,
}

impl RootDatum {
    pub fn to_json(&self) -> DatumJson {
        let coords = |vs: &[LatticeVector]| vs.iter().map(|v| v.coords().to_vec()).collect();
        DatumJson {
            name: self.name.clone(),
            cartan_type: format!("{:?}", self.cartan_type),
            char_basis: self.char_lattice.labels().to_vec(),
            cochar_basis: self.cochar_lattice.labels().to_vec(),
            pairing: self.pairing.clone(),
            simple_roots: coords(&self.simple_roots),
            simple_coroots: coords(&self.simple_coroots),
            positive_roots: coords(&self.positive_roots),
            positive_coroots: coords(&self.positive_coroots),
            sigma_on_chars: self.sigma.as_ref().map(|s| s.on_chars.matrix().to_vec()),
            sigma_on_cochars: self.sigma.as_ref().map(|s| s.on_cochars.matrix().to_vec()),
            similitude_char: self.similitude_char.as_ref().map(|v| v.coords().to_vec()),
            rho: self.rho().coords().iter().map(ToString::to_string).collect(),
        }
    }
}
