//! Exact computations around the group-theoretic congruence relation for
//! GL, SO and GSpin groups.
//!
//! The crate is organised bottom-up:
//!
//! * [`lattice`], [`snf`], [`linalg`] and [`group_algebra`]: free integer
//!   lattices, Smith normal form, rational linear algebra and the Laurent
//!   group algebra `Q[q^{±1}][L]`.
//! * [`root_datum`]: based root data with pairing, Weyl groups, orbits,
//!   Levi centralizers and the quasi-split involution.
//! * [`torus_hecke`]: the ρ-twisted ("dot") Weyl action on the torus
//!   algebra, invariants and orbit sums.
//! * [`hecke`]: weight multisets, twisted Hecke polynomials, their cycle
//!   factorization and the root check.
//! * [`newton`]: Newton classes of orthogonal groups and Rapoport-Zink
//!   dimensions.
//! * [`dl`]: vertex lattices, quadratic spaces over finite fields and the
//!   point-level structure of the Deligne-Lusztig varieties `S_Λ`.
//! * [`suite`]: end-to-end checks tying everything together.
//!
//! All arithmetic is exact; there is no floating point anywhere.

#![allow(clippy::needless_range_loop)]

pub mod dl;
pub mod error;
pub mod group_algebra;
pub mod hecke;
pub mod lattice;
pub mod linalg;
pub mod newton;
pub mod render;
pub mod root_datum;
pub mod snf;
pub mod suite;
pub mod torus_hecke;

pub use error::{Error, Result};
pub use group_algebra::GroupAlgebraElement;
pub use lattice::{IntLattice, LatticeMap, LatticeVector, RationalVector};
pub use root_datum::RootDatum;

/// Arbitrary-precision rational number used for every coefficient.
pub type Rational = num_rational::BigRational;
