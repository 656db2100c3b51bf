//! Smith normal form over the integers.
//!
//! For an `m x n` integer matrix `A` we compute unimodular `U` (`m x m`) and
//! `V` (`n x n`) with `U * A * V = D`, where `D` is diagonal with
//! nonnegative entries `d_1 | d_2 | ... | d_r`, followed by zeros.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type IntMatrix = Vec<Vec<BigInt>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    /// Nonzero invariant factors, each dividing the next.
    pub invariant_factors: Vec<BigInt>,
    pub left: IntMatrix,
    pub right: IntMatrix,
    pub diagonal: IntMatrix,
    pub rank: usize,
}

pub fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

pub fn from_i64(rows: &[Vec<i64>]) -> IntMatrix {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(BigInt::zero(), |acc, k| acc + &row[k] * &b[k][j])
                })
                .collect()
        })
        .collect()
}

fn swap_cols(m: &mut IntMatrix, i: usize, j: usize) {
    for row in m.iter_mut() {
        row.swap(i, j);
    }
}

/// row_i <- row_i - f * row_j
fn row_axpy(m: &mut IntMatrix, i: usize, j: usize, f: &BigInt) {
    let src = m[j].clone();
    for (x, y) in m[i].iter_mut().zip(src.iter()) {
        *x -= f * y;
    }
}

/// col_i <- col_i - f * col_j
fn col_axpy(m: &mut IntMatrix, i: usize, j: usize, f: &BigInt) {
    for row in m.iter_mut() {
        let y = row[j].clone();
        row[i] -= f * y;
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut d = a.clone();
    let mut u = identity(m);
    let mut v = identity(n);
    let mut t = 0;

    while t < m.min(n) {
        // Smallest nonzero entry of the trailing block becomes the pivot.
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if !d[i][j].is_zero()
                    && best.is_none_or(|(bi, bj)| d[i][j].abs() < d[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        d.swap(t, pi);
        u.swap(t, pi);
        swap_cols(&mut d, t, pj);
        swap_cols(&mut v, t, pj);

        let mut clean = true;
        for i in (t + 1)..m {
            if d[i][t].is_zero() {
                continue;
            }
            let f = d[i][t].div_floor(&d[t][t]);
            row_axpy(&mut d, i, t, &f);
            row_axpy(&mut u, i, t, &f);
            if !d[i][t].is_zero() {
                clean = false;
            }
        }
        for j in (t + 1)..n {
            if d[t][j].is_zero() {
                continue;
            }
            let f = d[t][j].div_floor(&d[t][t]);
            col_axpy(&mut d, j, t, &f);
            col_axpy(&mut v, j, t, &f);
            if !d[t][j].is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }

        // Divisibility: the pivot must divide the whole trailing block.
        let mut bad_row = None;
        'outer: for i in (t + 1)..m {
            for j in (t + 1)..n {
                if !(&d[i][j] % &d[t][t]).is_zero() {
                    bad_row = Some(i);
                    break 'outer;
                }
            }
        }
        if let Some(i) = bad_row {
            let minus_one = -BigInt::one();
            row_axpy(&mut d, t, i, &minus_one);
            row_axpy(&mut u, t, i, &minus_one);
            continue;
        }

        if d[t][t].is_negative() {
            for x in d[t].iter_mut() {
                *x = -&*x;
            }
            for x in u[t].iter_mut() {
                *x = -&*x;
            }
        }
        t += 1;
    }

    let invariant_factors: Vec<BigInt> = (0..t).map(|i| d[i][i].clone()).collect();
    SmithForm {
        rank: invariant_factors.len(),
        invariant_factors,
        left: u,
        right: v,
        diagonal: d,
    }
}

/// Integer determinant by fraction-free (Bareiss) elimination.
pub fn determinant(a: &IntMatrix) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m = a.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(swap) = ((k + 1)..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                m[i][j] = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}
