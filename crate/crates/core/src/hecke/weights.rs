//! Weights of highest-weight representations of the dual group, as
//! multisets of cocharacters.

use std::collections::{BTreeMap, HashMap, VecDeque};

use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice::{ensure_same, LatticeVector};
use crate::linalg::rat;
use crate::root_datum::RootDatum;
use crate::Rational;

/// Weights with positive multiplicities, in orbit order (dominant first,
/// then lexicographic).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightMultiset {
    entries: Vec<(LatticeVector, u64)>,
}

impl WeightMultiset {
    pub fn entries(&self) -> &[(LatticeVector, u64)] {
        &self.entries
    }

    /// Sum of multiplicities, i.e. the dimension of the representation.
    pub fn total(&self) -> u64 {
        self.entries.iter().map(|(_, m)| m).sum()
    }

    pub fn multiplicity(&self, v: &LatticeVector) -> u64 {
        self.entries
            .iter()
            .find(|(w, _)| w == v)
            .map_or(0, |(_, m)| *m)
    }

    /// Each weight repeated according to its multiplicity, paired with
    /// its copy index.
    pub fn expanded(&self) -> Vec<(LatticeVector, u64)> {
        self.entries
            .iter()
            .flat_map(|(w, m)| (0..*m).map(move |k| (w.clone(), k)))
            .collect()
    }

    fn from_map(d: &RootDatum, map: BTreeMap<Vec<i64>, u64>, mu: &LatticeVector) -> Self {
        let mut entries: Vec<(LatticeVector, u64)> = map
            .into_iter()
            .map(|(c, m)| (mu.with_coords(c), m))
            .collect();
        entries.sort_by(|(a, _), (b, _)| {
            let da = d.is_dominant_integral(a);
            let db = d.is_dominant_integral(b);
            db.cmp(&da).then_with(|| a.coords().cmp(b.coords()))
        });
        Self { entries }
    }
}

fn check_dominant(d: &RootDatum, mu: &LatticeVector) -> Result<()> {
    ensure_same(d.cochar_lattice(), mu.lattice())?;
    if d.is_dominant_integral(mu) {
        Ok(())
    } else {
        Err(Error::NotDominant(mu.to_string()))
    }
}

/// The weights of a minuscule representation: the Weyl orbit of `mu`.
pub fn minuscule_weights(d: &RootDatum, mu: &LatticeVector) -> Result<WeightMultiset> {
    check_dominant(d, mu)?;
    if !d.is_minuscule(mu) {
        return Err(Error::NotMinuscule(mu.coords().to_vec()));
    }
    let map = d
        .weyl_orbit(mu)?
        .into_iter()
        .map(|v| (v.into_coords(), 1))
        .collect();
    Ok(WeightMultiset::from_map(d, map, mu))
}

/// Nonnegative integer coordinates of `mu - lam` in the simple coroots.
fn depth_below(d: &RootDatum, mu: &[i64], lam: &[i64]) -> Option<Vec<i64>> {
    let diff: Vec<Rational> = mu.iter().zip(lam).map(|(a, b)| rat(a - b)).collect();
    let c = d.simple_coroot_coordinates(&diff)?;
    c.iter()
        .map(|x| {
            (x.is_integer() && !x.is_negative()).then(|| x.to_integer().to_i64()).flatten()
        })
        .collect()
}

/// The full weight multiset of the irreducible representation of highest
/// weight `mu`, by Freudenthal's recursion.
pub fn freudenthal_weights(d: &RootDatum, mu: &LatticeVector) -> Result<WeightMultiset> {
    check_dominant(d, mu)?;
    let dom = |v: &[i64]| -> Vec<i64> {
        d.dominant_conjugate(&mu.with_coords(v.to_vec()))
            .expect("same lattice")
            .into_coords()
    };
    let in_support = |v: &[i64]| depth_below(d, mu.coords(), &dom(v)).is_some();

    // Every weight sits below a weight one simple coroot higher, so a
    // downward search from μ reaches the whole (saturated) support.
    let mut support: HashMap<Vec<i64>, ()> = HashMap::new();
    let mut queue = VecDeque::new();
    support.insert(mu.coords().to_vec(), ());
    queue.push_back(mu.coords().to_vec());
    while let Some(v) = queue.pop_front() {
        for c in d.simple_coroots() {
            let w: Vec<i64> = v.iter().zip(c.coords()).map(|(a, b)| a - b).collect();
            if !support.contains_key(&w) && in_support(&w) {
                support.insert(w.clone(), ());
                queue.push_back(w);
            }
        }
    }

    // W-invariant form B(x, y) = Σ_{α>0} ⟨α, x⟩⟨α, y⟩ on X_* ⊗ Q.
    let root_rows: Vec<Vec<i64>> = d
        .positive_roots()
        .iter()
        .map(|a| d.pairing_row(a.coords()))
        .collect();
    let form = |x: &[Rational], y: &[Rational]| -> Rational {
        root_rows
            .iter()
            .map(|r| {
                let ax: Rational = r.iter().zip(x).map(|(&a, b)| rat(a) * b).sum();
                let ay: Rational = r.iter().zip(y).map(|(&a, b)| rat(a) * b).sum();
                ax * ay
            })
            .sum()
    };
    let to_q = |v: &[i64]| -> Vec<Rational> { v.iter().map(|&x| rat(x)).collect() };
    let rho_dual = d.rho_dual();
    let shifted = |v: &[i64]| -> Vec<Rational> {
        v.iter().zip(rho_dual.coords()).map(|(&a, r)| rat(a) + r).collect()
    };
    let mu_rho = shifted(mu.coords());
    let top = form(&mu_rho, &mu_rho);
    let coroots: Vec<Vec<i64>> = d
        .positive_coroots()
        .iter()
        .map(|c| c.coords().to_vec())
        .collect();

    // Dominant weights in order of increasing depth below μ.
    let mut dominant: Vec<(i64, Vec<i64>)> = support
        .keys()
        .filter(|v| d.is_dominant_integral(&mu.with_coords(v.to_vec())))
        .map(|v| {
            let depth: i64 = depth_below(d, mu.coords(), v).expect("in support").iter().sum();
            (depth, v.clone())
        })
        .collect();
    dominant.sort();

    let mut mult: HashMap<Vec<i64>, u64> = HashMap::new();
    for (depth, lam) in &dominant {
        if *depth == 0 {
            mult.insert(lam.clone(), 1);
            continue;
        }
        let mut rhs = Rational::zero();
        for beta in &coroots {
            let mut k = 1i64;
            loop {
                let v: Vec<i64> = lam.iter().zip(beta).map(|(a, b)| a + k * b).collect();
                if !support.contains_key(&v) {
                    break;
                }
                let m = *mult.get(&dom(&v)).expect("higher weights are done first");
                rhs += rat(m as i64) * form(&to_q(&v), &to_q(beta));
                k += 1;
            }
        }
        rhs *= rat(2);
        let lam_rho = shifted(lam);
        let lhs = &top - form(&lam_rho, &lam_rho);
        if lhs.is_zero() {
            return Err(Error::InvalidParameters(
                "degenerate Freudenthal denominator".into(),
            ));
        }
        let m = rhs / lhs;
        let m = m
            .is_integer()
            .then(|| m.to_integer().to_u64())
            .flatten()
            .ok_or_else(|| Error::InvalidParameters(format!("non-integral multiplicity {m}")))?;
        mult.insert(lam.clone(), m);
    }

    let map: BTreeMap<Vec<i64>, u64> = support
        .keys()
        .map(|v| (v.clone(), mult.get(&dom(v)).copied().unwrap_or(0)))
        .filter(|(_, m)| *m > 0)
        .collect();
    Ok(WeightMultiset::from_map(d, map, mu))
}

/// Weyl's dimension formula `Π_{α>0} ⟨α, μ + ρ^v⟩ / ⟨α, ρ^v⟩`.
pub fn weyl_dimension(d: &RootDatum, mu: &LatticeVector) -> Result<Rational> {
    ensure_same(d.cochar_lattice(), mu.lattice())?;
    let rho_dual = d.rho_dual();
    let mut acc = rat(1);
    for a in d.positive_roots() {
        let row = d.pairing_row(a.coords());
        let r: Rational = row.iter().zip(rho_dual.coords()).map(|(&x, y)| rat(x) * y).sum();
        let m: Rational = row.iter().zip(mu.coords()).map(|(&x, &y)| rat(x * y)).sum();
        acc *= (&m + &r) / r;
    }
    Ok(acc)
}
