//! Small dense linear algebra over `Q`.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::Rational;

pub type RatMatrix = Vec<Vec<Rational>>;

pub fn rat(x: i64) -> Rational {
    Rational::from_integer(x.into())
}

pub fn to_rat_matrix(rows: &[Vec<i64>]) -> RatMatrix {
    rows.iter()
        .map(|r| r.iter().map(|&x| rat(x)).collect())
        .collect()
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut RatMatrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let pivot_row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(pivot_row.iter()) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &RatMatrix) -> usize {
    let mut m = m.clone();
    rref(&mut m).len()
}

/// Solutions of `A x = b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    Unique(Vec<Rational>),
    /// A particular solution; the system has a positive-dimensional family.
    Many(Vec<Rational>),
    None,
}

pub fn solve(a: &RatMatrix, b: &[Rational]) -> Result<Solution> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            found: b.len(),
        });
    }
    let unknowns = a.first().map_or(0, Vec::len);
    let mut aug: RatMatrix = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&unknowns) {
        return Ok(Solution::None);
    }
    let mut x = vec![Rational::zero(); unknowns];
    for (row, &c) in pivots.iter().enumerate() {
        x[c] = aug[row][unknowns].clone();
    }
    if pivots.len() == unknowns {
        Ok(Solution::Unique(x))
    } else {
        Ok(Solution::Many(x))
    }
}

pub fn identity(n: usize) -> RatMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rational::one() } else { Rational::zero() })
                .collect()
        })
        .collect()
}

/// Inverse of a square matrix, `None` when singular.
pub fn inverse(a: &RatMatrix) -> Option<RatMatrix> {
    let n = a.len();
    let mut aug: RatMatrix = a
        .iter()
        .zip(identity(n))
        .map(|(row, id)| row.iter().cloned().chain(id).collect())
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unique_and_degenerate_systems() {
        let a = to_rat_matrix(&[vec![2, 1], vec![1, 3]]);
        let sol = solve(&a, &[rat(3), rat(4)]).unwrap();
        assert_eq!(sol, Solution::Unique(vec![rat(1), rat(1)]));

        let a = to_rat_matrix(&[vec![1, 1], vec![2, 2]]);
        assert_eq!(solve(&a, &[rat(1), rat(3)]).unwrap(), Solution::None);
        assert!(matches!(
            solve(&a, &[rat(1), rat(2)]).unwrap(),
            Solution::Many(_)
        ));
        assert_eq!(rank(&a), 1);
    }

    #[test]
    fn inverse_round_trip() {
        let a = to_rat_matrix(&[vec![1, 0, 1], vec![1, 1, 0], vec![0, 1, 2]]);
        let inv = inverse(&a).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let s: Rational = (0..3).map(|k| &a[i][k] * &inv[k][j]).sum();
                assert_eq!(s, if i == j { rat(1) } else { rat(0) });
            }
        }
        assert!(inverse(&to_rat_matrix(&[vec![1, 2], vec![2, 4]])).is_none());
    }
}
