//! Finite fields `F_{p^k}` for small odd primes, with elements encoded as
//! integers `Σ c_i p^i` (coefficients of the polynomial basis).

use crate::error::{Error, Result};

/// Largest supported field size; operations are table driven.
pub const MAX_FIELD_SIZE: u64 = 1 << 12;

pub type Elem = u32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteField {
    p: u64,
    k: u32,
    size: u32,
    /// Monic modulus, ascending coefficients (length `k + 1`).
    modulus: Vec<u64>,
    mul: Vec<Elem>,
    add: Vec<Elem>,
    inv: Vec<Elem>,
    frob: Vec<Elem>,
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    let lead_inv = pow_mod(m[dm], p - 2, p);
    while r.len() > dm {
        let top = *r.last().expect("nonempty");
        if top != 0 {
            let c = top * lead_inv % p;
            let shift = r.len() - 1 - dm;
            for (i, &mi) in m.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p * p - c * mi % p) % p;
            }
        }
        r.pop();
    }
    r
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn digits(mut x: u64, p: u64, len: usize) -> Vec<u64> {
    (0..len)
        .map(|_| {
            let d = x % p;
            x /= p;
            d
        })
        .collect()
}

/// Trial division by every monic polynomial of degree `1..=k/2`.
fn is_irreducible(f: &[u64], p: u64) -> bool {
    let k = f.len() - 1;
    for deg in 1..=k / 2 {
        for low in 0..p.pow(deg as u32) {
            let mut g = digits(low, p, deg);
            g.push(1);
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// The monic irreducible of degree `k` whose coefficient vector
/// `(c_{k-1}, ..., c_0)` is lexicographically least.
pub fn least_irreducible(p: u64, k: u32) -> Vec<u64> {
    if k == 1 {
        return vec![0, 1];
    }
    (0..p.pow(k))
        .map(|code| {
            let mut f = digits(code, p, k as usize);
            f.push(1);
            f
        })
        .find(|f| is_irreducible(f, p))
        .expect("irreducible polynomials exist in every degree")
}

impl FiniteField {
    pub fn new(p: u64, k: u32) -> Result<Self> {
        if !is_prime(p) || p == 2 {
            return Err(Error::InvalidParameters(format!("{p} is not an odd prime")));
        }
        if k == 0 {
            return Err(Error::InvalidParameters("extension degree must be positive".into()));
        }
        let size = p
            .checked_pow(k)
            .filter(|&s| s <= MAX_FIELD_SIZE)
            .ok_or_else(|| {
                Error::InvalidParameters(format!("F_{{{p}^{k}}} exceeds {MAX_FIELD_SIZE} elements"))
            })?;
        let modulus = least_irreducible(p, k);
        let n = size as usize;
        let ku = k as usize;
        let enc = |c: &[u64]| -> Elem { c.iter().rev().fold(0u64, |acc, &d| acc * p + d) as Elem };
        let dig: Vec<Vec<u64>> = (0..size).map(|x| digits(x, p, ku)).collect();

        let mut add = vec![0; n * n];
        let mut mul = vec![0; n * n];
        for a in 0..n {
            for b in a..n {
                let s: Vec<u64> = dig[a].iter().zip(&dig[b]).map(|(x, y)| (x + y) % p).collect();
                add[a * n + b] = enc(&s);
                add[b * n + a] = add[a * n + b];
                let mut prod = vec![0u64; 2 * ku - 1];
                for (i, x) in dig[a].iter().enumerate() {
                    for (j, y) in dig[b].iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                let r = poly_rem(&prod, &modulus, p);
                let mut r = r;
                r.resize(ku, 0);
                mul[a * n + b] = enc(&r);
                mul[b * n + a] = mul[a * n + b];
            }
        }
        let mut inv = vec![0; n];
        for a in 1..n {
            inv[a] = (1..n).find(|&b| mul[a * n + b] == 1).expect("field") as Elem;
        }
        let mut frob = vec![0; n];
        for (a, f) in frob.iter_mut().enumerate() {
            let mut acc: Elem = 1;
            for _ in 0..p {
                acc = mul[acc as usize * n + a];
            }
            *f = acc;
        }
        Ok(Self {
            p,
            k,
            size: size as u32,
            modulus,
            mul,
            add,
            inv,
            frob,
        })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// The image of an integer under `Z → F_p ⊂ F_{p^k}`.
    pub fn from_int(&self, x: i64) -> Elem {
        x.rem_euclid(self.p as i64) as Elem
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.size
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a as usize * self.size as usize + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a as usize * self.size as usize + b as usize]
    }

    pub fn neg(&self, a: Elem) -> Elem {
        self.mul(a, self.from_int(-1))
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    /// `None` for zero.
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        (a != 0).then(|| self.inv[a as usize])
    }

    /// The absolute Frobenius `x ↦ x^p`.
    #[inline]
    pub fn frobenius(&self, a: Elem) -> Elem {
        self.frob[a as usize]
    }

    pub fn is_square(&self, a: Elem) -> bool {
        a == 0 || self.elements().any(|x| self.mul(x, x) == a)
    }

    /// Least element of `F_p` that is not a square in `F_p`.
    pub fn prime_field_nonsquare(&self) -> Elem {
        (1..self.p as Elem)
            .find(|&a| !(1..self.p as Elem).any(|x| self.mul(x, x) == a))
            .expect("odd characteristic has nonsquares")
    }

    pub fn dot(&self, a: &[Elem], b: &[Elem]) -> Elem {
        a.iter().zip(b).fold(0, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(f: &FiniteField, m: &mut Vec<Vec<Elem>>) -> Vec<usize> {
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(pr) = (row..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(row, pr);
        let inv = f.inv(m[row][col]).expect("nonzero pivot");
        for x in m[row].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for r in 0..m.len() {
            if r != row && m[r][col] != 0 {
                let c = m[r][col];
                for j in 0..cols {
                    let v = f.mul(c, m[row][j]);
                    m[r][j] = f.sub(m[r][j], v);
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    m.truncate(row);
    pivots
}

pub fn rank(f: &FiniteField, rows: &[Vec<Elem>]) -> usize {
    let mut m = rows.to_vec();
    rref(f, &mut m).len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_fields() {
        let f = FiniteField::new(5, 1).unwrap();
        assert_eq!(f.mul(3, 4), 2);
        assert_eq!(f.inv(2), Some(3));
        assert_eq!(f.neg(1), 4);
        assert_eq!(f.prime_field_nonsquare(), 2);
        assert!((0..5).all(|a| f.frobenius(a) == a));
        assert!(FiniteField::new(4, 1).is_err());
        assert!(FiniteField::new(2, 1).is_err());
        assert!(FiniteField::new(3, 9).is_err());
    }

    #[test]
    fn least_irreducibles() {
        // x^2 + 1 over F_3; x^2 + 2 over F_5; x^3 + 2x + 1 over F_3.
        assert_eq!(least_irreducible(3, 2), [1, 0, 1]);
        assert_eq!(least_irreducible(5, 2), [2, 0, 1]);
        assert_eq!(least_irreducible(3, 3), [1, 2, 0, 1]);
    }

    #[test]
    fn field_axioms_by_exhaustion() {
        for (p, k) in [(3, 2), (3, 3), (5, 2)] {
            let f = FiniteField::new(p, k).unwrap();
            let q = f.size();
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                // Frobenius has order k and fixes exactly F_p.
                let mut x = a;
                for _ in 0..k {
                    x = f.frobenius(x);
                }
                assert_eq!(x, a);
                assert_eq!(f.frobenius(a) == a, a < p as Elem);
                for b in f.elements() {
                    assert_eq!(f.frobenius(f.mul(a, b)), f.mul(f.frobenius(a), f.frobenius(b)));
                    assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
                }
            }
            // The multiplicative group is cyclic of order q - 1.
            let generator = (2..q).find(|&g| {
                let mut x = g;
                (1..q - 1).all(|_| {
                    let r = x != 1;
                    x = f.mul(x, g);
                    r
                })
            });
            assert!(generator.is_some());
        }
    }

    #[test]
    fn rref_and_rank() {
        let f = FiniteField::new(3, 1).unwrap();
        let mut m = vec![vec![1, 2, 0], vec![2, 1, 0], vec![0, 0, 1]];
        assert_eq!(rref(&f, &mut m), vec![0, 2]);
        assert_eq!(m, vec![vec![1, 2, 0], vec![0, 0, 1]]);
        assert_eq!(rank(&f, &[vec![0, 0], vec![0, 0]]), 0);
    }
}
