//! Vertex lattices `pΛ ⊂ Λ^v ⊂ Λ`, recognized from the Gram matrix of
//! `pQ` on `Λ`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::field::is_prime;
use crate::error::{Error, Result};
use crate::snf::{determinant, from_i64, smith_normal_form};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexLatticeType {
    pub gram: Vec<Vec<i64>>,
    pub p: u64,
    /// `dim_{F_p} Λ/Λ^v`, the number of elementary divisors equal to `p`.
    pub type_t: usize,
}

/// The type of `Λ`, or an error if some elementary divisor has
/// `p`-valuation above one.
pub fn vertex_type(gram: &[Vec<i64>], p: u64) -> Result<VertexLatticeType> {
    if !is_prime(p) || p == 2 {
        return Err(Error::InvalidParameters(format!("{p} is not an odd prime")));
    }
    let n = gram.len();
    if gram.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidParameters("Gram matrix must be square".into()));
    }
    if (0..n).any(|i| (0..i).any(|j| gram[i][j] != gram[j][i])) {
        return Err(Error::InvalidParameters("Gram matrix is not symmetric".into()));
    }
    let m = from_i64(gram);
    if determinant(&m).is_zero() {
        return Err(Error::InvalidParameters("Gram matrix is singular".into()));
    }
    let p_big = BigInt::from(p);
    let mut type_t = 0;
    for d in smith_normal_form(&m).invariant_factors {
        let mut x = d.abs();
        let mut v = 0;
        while x.is_multiple_of(&p_big) {
            x /= &p_big;
            v += 1;
        }
        match v {
            0 => {}
            1 => type_t += 1,
            _ => {
                return Err(Error::NotVertexLattice {
                    p,
                    divisor: d.to_string(),
                })
            }
        }
    }
    Ok(VertexLatticeType {
        gram: gram.to_vec(),
        p,
        type_t,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(vertex_type(&[vec![0, 1], vec![1, 0]], 3).unwrap().type_t, 0);
        assert_eq!(vertex_type(&[vec![0, 3], vec![3, 0]], 3).unwrap().type_t, 2);
        assert!(matches!(
            vertex_type(&[vec![9, 0], vec![0, 1]], 3),
            Err(Error::NotVertexLattice { p: 3, .. })
        ));
        assert!(vertex_type(&[vec![1, 1], vec![1, 1]], 3).is_err());
        assert!(vertex_type(&[vec![1, 2], vec![0, 1]], 3).is_err());
        // Prime-to-p divisors are units at p.
        assert_eq!(vertex_type(&[vec![2, 0], vec![0, 5]], 3).unwrap().type_t, 0);
        let block = vec![
            vec![0, 5, 0, 0],
            vec![5, 0, 0, 0],
            vec![0, 0, 2, 1],
            vec![0, 0, 1, 2],
        ];
        assert_eq!(vertex_type(&block, 5).unwrap().type_t, 2);
    }
}
