//! Brute-force cross-check for the `S_Λ` enumeration, sharing no code with
//! the echelon-form search: subspaces are stored as sets of projective
//! points and every dimension is read off from point counts.

use std::collections::BTreeSet;

/// Arithmetic in `F_p[x]/(f)` with `f` any monic irreducible of degree
/// `k ≤ 3`, found by a root search from the top of the coefficient range.
struct SmallField {
    p: u64,
    k: usize,
    size: u64,
    modulus: Vec<u64>,
}

impl SmallField {
    fn new(p: u64, k: usize) -> Self {
        assert!((1..=3).contains(&k), "oracle supports k <= 3");
        let size = p.pow(k as u32);
        let modulus = if k == 1 {
            vec![0, 1]
        } else {
            (0..size)
                .rev()
                .map(|code| {
                    let mut c: Vec<u64> = (0..k).map(|i| code / p.pow(i as u32) % p).collect();
                    c.push(1);
                    c
                })
                .find(|f| {
                    (0..p).all(|x| f.iter().rev().fold(0, |acc, &c| (acc * x + c) % p) != 0)
                })
                .expect("irreducible exists")
        };
        Self { p, k, size, modulus }
    }

    fn coeffs(&self, a: u64) -> Vec<u64> {
        (0..self.k).map(|i| a / self.p.pow(i as u32) % self.p).collect()
    }

    fn encode(&self, c: &[u64]) -> u64 {
        c.iter().enumerate().map(|(i, &x)| x * self.p.pow(i as u32)).sum()
    }

    fn add(&self, a: u64, b: u64) -> u64 {
        let (x, y) = (self.coeffs(a), self.coeffs(b));
        self.encode(&x.iter().zip(&y).map(|(u, v)| (u + v) % self.p).collect::<Vec<_>>())
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        let (x, y) = (self.coeffs(a), self.coeffs(b));
        let mut prod = vec![0u64; 2 * self.k];
        for (i, u) in x.iter().enumerate() {
            for (j, v) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + u * v) % self.p;
            }
        }
        for top in (self.k..prod.len()).rev() {
            let c = prod[top];
            if c != 0 {
                for (i, m) in self.modulus.iter().enumerate() {
                    let idx = top - self.k + i;
                    prod[idx] = (prod[idx] + self.p * self.p - c * m % self.p) % self.p;
                }
            }
        }
        self.encode(&prod[..self.k])
    }

    fn pow(&self, a: u64, e: u64) -> u64 {
        (0..e).fold(1, |acc, _| self.mul(acc, a))
    }

    fn inv(&self, a: u64) -> u64 {
        self.pow(a, self.size - 2)
    }
}

/// Counts found by the oracle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleCounts {
    pub lagrangians: usize,
    pub points: usize,
    /// Family sizes, larger first.
    pub families: (usize, usize),
    pub frobenius_swaps: bool,
    /// Isotropic lines over the extension field.
    pub isotropic_lines: usize,
}

type Point = Vec<u64>;

struct Oracle {
    f: SmallField,
    gram: Vec<Vec<u64>>,
    dim: usize,
}

impl Oracle {
    fn form(&self, x: &[u64], y: &[u64]) -> u64 {
        let mut acc = 0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                if self.gram[i][j] != 0 && x[i] != 0 && y[j] != 0 {
                    acc = self.f.add(acc, self.f.mul(self.gram[i][j], self.f.mul(x[i], y[j])));
                }
            }
        }
        acc
    }

    /// Scales so the first nonzero entry is 1.
    fn normalize(&self, v: &[u64]) -> Option<Point> {
        let lead = *v.iter().find(|&&x| x != 0)?;
        let inv = self.f.inv(lead);
        Some(v.iter().map(|&x| self.f.mul(x, inv)).collect())
    }

    fn projective_points(&self) -> Vec<Point> {
        let total = self.f.size.pow(self.dim as u32);
        (1..total)
            .map(|code| (0..self.dim).map(|i| code / self.f.size.pow(i as u32) % self.f.size).collect::<Vec<_>>())
            .filter(|v: &Vec<u64>| v.iter().find(|&&x| x != 0) == Some(&1))
            .collect()
    }

    fn frob(&self, pts: &BTreeSet<Point>) -> BTreeSet<Point> {
        pts.iter()
            .map(|v| v.iter().map(|&x| self.f.pow(x, self.f.p)).collect())
            .collect()
    }

    /// Dimension of a subspace with `n` projective points.
    fn dim_of(&self, n: usize) -> usize {
        let q = self.f.size as usize;
        let mut d = 0;
        let mut count = 0;
        while count < n {
            count = count * q + 1;
            d += 1;
        }
        assert_eq!(count, n, "point count of a subspace");
        d
    }

    fn plane(&self, v: &[u64], w: &[u64]) -> BTreeSet<Point> {
        let mut pts: BTreeSet<Point> = BTreeSet::new();
        pts.insert(w.to_vec());
        for c in 0..self.f.size {
            let u: Vec<u64> = v.iter().zip(w).map(|(&a, &b)| self.f.add(a, self.f.mul(c, b))).collect();
            pts.insert(self.normalize(&u).expect("independent"));
        }
        pts
    }
}

/// Enumerates Lagrangians of the form `gram` over `F_{p^k}` point by
/// point. Supports `dim ∈ {2, 4}` and `k ≤ 3`.
pub fn brute_force_s_lambda(gram: &[Vec<i64>], p: u64, k: usize) -> OracleCounts {
    let f = SmallField::new(p, k);
    let dim = gram.len();
    assert!(dim == 2 || dim == 4, "oracle supports dim 2 and 4");
    let gram = gram
        .iter()
        .map(|r| r.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect())
        .collect();
    let o = Oracle { f, gram, dim };
    let isotropic: Vec<Point> = o
        .projective_points()
        .into_iter()
        .filter(|v| o.form(v, v) == 0)
        .collect();

    let lagrangians: BTreeSet<BTreeSet<Point>> = if dim == 2 {
        isotropic.iter().map(|v| BTreeSet::from([v.clone()])).collect()
    } else {
        let mut out = BTreeSet::new();
        for (i, v) in isotropic.iter().enumerate() {
            for w in &isotropic[i + 1..] {
                if o.form(v, w) == 0 {
                    out.insert(o.plane(v, w));
                }
            }
        }
        out
    };

    let half = dim / 2;
    let reference = lagrangians.iter().next().cloned();
    let family = |l: &BTreeSet<Point>| -> usize {
        let r = reference.as_ref().expect("nonempty");
        let meet = l.intersection(r).count();
        (o.dim_of(meet) + half) % 2
    };
    let points: Vec<&BTreeSet<Point>> = lagrangians
        .iter()
        .filter(|l| {
            let meet = l.intersection(&o.frob(l)).count();
            // dim(L + ΦL) = 2·half - dim(L ∩ ΦL)
            2 * half - o.dim_of(meet) == half + 1
        })
        .collect();
    let mut fam = [0usize; 2];
    let mut swaps = true;
    for l in &points {
        let a = family(l);
        fam[a] += 1;
        let image = o.frob(l);
        swaps &= lagrangians.contains(&image) && family(&image) != a && points.contains(&&image);
    }
    OracleCounts {
        lagrangians: lagrangians.len(),
        points: points.len(),
        families: (fam[0].max(fam[1]), fam[0].min(fam[1])),
        frobenius_swaps: swaps,
        isotropic_lines: isotropic.len(),
    }
}
