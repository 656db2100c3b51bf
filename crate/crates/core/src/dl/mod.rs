//! Finite-field shadows of the basic locus: vertex lattice types,
//! isotropic subspaces and the point sets of `S_Λ` with their two
//! Frobenius-swapped families.

pub mod field;
pub mod oracle;
mod quadratic;
mod vertex;

pub use field::{Elem, FiniteField};
pub use quadratic::{
    enumerate_isotropic, enumeration_guard, frobenius_swap_check, s_lambda_points,
    swaps_families, ExtendedSpace, FqQuadraticSpace, FqSubspace, SLambdaPoints, SwapCheck,
    WittType, DEFAULT_GUARD, GUARD_ENV,
};
pub use vertex::{vertex_type, VertexLatticeType};
