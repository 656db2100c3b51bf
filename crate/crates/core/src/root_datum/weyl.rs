//! Weyl groups, orbits and Levi centralizers.

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::Arc;

use super::{CartanType, RootDatum};
use crate::error::{Error, Result};
use crate::lattice::{ensure_same, LatticeMap, LatticeVector};

/// A Weyl group element, acting on both lattices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    on_cochars: LatticeMap,
    on_chars: LatticeMap,
    word: Vec<usize>,
}

impl WeylElement {
    pub fn on_cochars(&self) -> &LatticeMap {
        &self.on_cochars
    }

    pub fn on_chars(&self) -> &LatticeMap {
        &self.on_chars
    }

    /// A word in the generating reflections, leftmost factor first. The
    /// word is shortest in the generators used for the enumeration.
    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.on_cochars.is_identity()
    }

    pub fn apply(&self, nu: &LatticeVector) -> Result<LatticeVector> {
        self.on_cochars.apply(nu)
    }

    pub fn apply_char(&self, chi: &LatticeVector) -> Result<LatticeVector> {
        self.on_chars.apply(chi)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &WeylElement) -> Result<WeylElement> {
        Ok(WeylElement {
            on_cochars: self.on_cochars.compose(&other.on_cochars)?,
            on_chars: self.on_chars.compose(&other.on_chars)?,
            word: self.word.iter().chain(&other.word).copied().collect(),
        })
    }
}

/// The centralizer Levi of a cocharacter and its Weyl group.
#[derive(Clone, Debug)]
pub struct Levi {
    pub datum: RootDatum,
    pub weyl: Vec<WeylElement>,
}

type Reflection = (Vec<i64>, Vec<i64>);
type Matrix = Vec<Vec<i64>>;

fn mat_flat(m: &[Vec<i64>]) -> Vec<i64> {
    m.iter().flatten().copied().collect()
}

impl RootDatum {
    fn simple_pairs(&self) -> Vec<Reflection> {
        self.simple_roots
            .iter()
            .zip(&self.simple_coroots)
            .map(|(a, c)| (a.coords().to_vec(), c.coords().to_vec()))
            .collect()
    }

    /// Closure of the reflections in `gens` as pairs of matrices.
    fn reflection_closure(&self, gens: &[Reflection], max_order: usize) -> Result<Vec<WeylElement>> {
        let n = self.rank();
        // For each generator: r = αᵀP (acts on cocharacter columns) and
        // c = Pα^v (acts on character columns).
        let ops: Vec<(Vec<i64>, Vec<i64>)> = gens
            .iter()
            .map(|(a, c)| (self.pairing_row(a), self.pairing_col(c)))
            .collect();
        let id: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();

        let mut index: HashMap<Vec<i64>, usize> = HashMap::new();
        // (matrix on cochars, matrix on chars, word)
        let mut elems: Vec<(Matrix, Matrix, Vec<usize>)> = Vec::new();
        index.insert(mat_flat(&id), 0);
        elems.push((id.clone(), id, Vec::new()));
        let mut head = 0;
        while head < elems.len() {
            for (g, (row, col)) in ops.iter().enumerate() {
                let (ref cv, ref ch, ref word) = elems[head];
                let (alpha, coroot) = &gens[g];
                // s ∘ w on cocharacters: column x ↦ x - (row·x) α^v
                let mut ncv = cv.clone();
                for j in 0..n {
                    let k: i64 = (0..n).map(|i| row[i] * cv[i][j]).sum();
                    if k != 0 {
                        for i in 0..n {
                            ncv[i][j] -= k * coroot[i];
                        }
                    }
                }
                let key = mat_flat(&ncv);
                if index.contains_key(&key) {
                    continue;
                }
                let mut nch = ch.clone();
                for j in 0..n {
                    let k: i64 = (0..n).map(|i| col[i] * ch[i][j]).sum();
                    if k != 0 {
                        for i in 0..n {
                            nch[i][j] -= k * alpha[i];
                        }
                    }
                }
                let mut nword = Vec::with_capacity(word.len() + 1);
                nword.push(g);
                nword.extend_from_slice(word);
                if elems.len() >= max_order {
                    return Err(Error::BoundExceeded { bound: max_order });
                }
                index.insert(key, elems.len());
                elems.push((ncv, nch, nword));
            }
            head += 1;
        }

        let mut out: Vec<(Vec<i64>, WeylElement)> = elems
            .into_iter()
            .map(|(cv, ch, word)| {
                let key = mat_flat(&cv);
                let el = WeylElement {
                    on_cochars: LatticeMap::new(
                        Arc::clone(&self.cochar_lattice),
                        Arc::clone(&self.cochar_lattice),
                        cv,
                    )
                    .expect("square"),
                    on_chars: LatticeMap::new(
                        Arc::clone(&self.char_lattice),
                        Arc::clone(&self.char_lattice),
                        ch,
                    )
                    .expect("square"),
                    word,
                };
                (key, el)
            })
            .collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(out.into_iter().map(|(_, e)| e).collect())
    }

    /// Every element of the Weyl group, sorted by cocharacter matrix.
    /// Fails once more than `max_order` elements have been found.
    pub fn weyl_enumerate(&self, max_order: usize) -> Result<Vec<WeylElement>> {
        self.reflection_closure(&self.simple_pairs(), max_order)
    }

    /// The simple reflections as Weyl elements.
    pub fn weyl_generators(&self) -> Vec<WeylElement> {
        (0..self.semisimple_rank())
            .map(|i| WeylElement {
                on_cochars: self.simple_reflection_cochar(i),
                on_chars: self.simple_reflection_char(i),
                word: vec![i],
            })
            .collect()
    }

    /// The Weyl orbit of a cocharacter: dominant elements first, then
    /// lexicographic by coordinates.
    pub fn weyl_orbit(&self, nu: &LatticeVector) -> Result<Vec<LatticeVector>> {
        ensure_same(&self.cochar_lattice, nu.lattice())?;
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(nu.coords().to_vec());
        queue.push_back(nu.coords().to_vec());
        while let Some(v) = queue.pop_front() {
            for i in 0..self.semisimple_rank() {
                let w = self.reflect_cochar_coords(i, &v);
                if seen.insert(w.clone()) {
                    queue.push_back(w);
                }
            }
        }
        let mut orbit: Vec<LatticeVector> = seen.into_iter().map(|c| nu.with_coords(c)).collect();
        orbit.sort_by(|a, b| {
            let da = self.is_dominant_integral(a);
            let db = self.is_dominant_integral(b);
            db.cmp(&da).then_with(|| a.coords().cmp(b.coords()))
        });
        Ok(orbit)
    }

    /// The unique dominant element of the Weyl orbit of `nu`.
    pub fn dominant_conjugate(&self, nu: &LatticeVector) -> Result<LatticeVector> {
        ensure_same(&self.cochar_lattice, nu.lattice())?;
        let mut v = nu.coords().to_vec();
        'outer: loop {
            for i in 0..self.semisimple_rank() {
                if self.pair_coords(self.simple_roots[i].coords(), &v) < 0 {
                    v = self.reflect_cochar_coords(i, &v);
                    continue 'outer;
                }
            }
            break;
        }
        Ok(nu.with_coords(v))
    }

    /// The Levi subgroup centralizing `mu`: its roots are those with
    /// `⟨α, μ⟩ = 0`, and its Weyl group is generated by their reflections.
    pub fn centralizer_levi(&self, mu: &LatticeVector) -> Result<Levi> {
        ensure_same(&self.cochar_lattice, mu.lattice())?;
        let pos: Vec<(Vec<i64>, Vec<i64>)> = self
            .positive_roots
            .iter()
            .zip(&self.positive_coroots)
            .filter(|(a, _)| self.pair_coords(a.coords(), mu.coords()) == 0)
            .map(|(a, c)| (a.coords().to_vec(), c.coords().to_vec()))
            .collect();
        let roots: HashSet<&Vec<i64>> = pos.iter().map(|(a, _)| a).collect();
        // Simple roots of the subsystem are its indecomposable positive roots.
        let simple: Vec<&(Vec<i64>, Vec<i64>)> = pos
            .iter()
            .filter(|(a, _)| {
                !pos.iter().any(|(b, _)| {
                    let diff: Vec<i64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
                    roots.contains(&diff)
                })
            })
            .collect();
        let cartan = if simple.is_empty() {
            CartanType::Torus
        } else {
            CartanType::Unclassified
        };
        let datum = RootDatum::from_simple_system(
            format!("centralizer of {mu} in {}", self.name),
            cartan,
            Arc::clone(&self.char_lattice),
            Arc::clone(&self.cochar_lattice),
            self.pairing.clone(),
            simple.iter().map(|(a, _)| a.clone()).collect(),
            simple.iter().map(|(_, c)| c.clone()).collect(),
        )?;
        let weyl = datum.weyl_enumerate(super::DEFAULT_WEYL_BOUND)?;
        Ok(Levi { datum, weyl })
    }

    /// The Weyl elements commuting with σ (all of `W` when σ is absent).
    pub fn sigma_fixed_weyl(&self, max_order: usize) -> Result<Vec<WeylElement>> {
        let all = self.weyl_enumerate(max_order)?;
        let Some(sigma) = &self.sigma else {
            return Ok(all);
        };
        let s = &sigma.on_cochars;
        let mut out = Vec::new();
        for w in all {
            let lhs = s.compose(w.on_cochars())?;
            let rhs = w.on_cochars().compose(s)?;
            if lhs == rhs {
                out.push(w);
            }
        }
        Ok(out)
    }

    /// Conjugates each simple reflection by σ and looks the result up in
    /// `weyl`; true iff σ normalizes the enumerated group.
    pub fn sigma_normalizes(&self, weyl: &[WeylElement]) -> Result<bool> {
        let Some(sigma) = &self.sigma else {
            return Ok(true);
        };
        let mats: HashSet<&[Vec<i64>]> = weyl.iter().map(|w| w.on_cochars().matrix()).collect();
        for g in self.weyl_generators() {
            let conj = sigma
                .on_cochars
                .compose(g.on_cochars())?
                .compose(&sigma.on_cochars)?;
            if !mats.contains(conj.matrix()) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
