//! Text and LaTeX rendering of group-algebra elements and Hecke
//! polynomials, with `h_{e_0^v}` printed as `s` and `h_{e_i^v}` (or
//! `h_{χ_i^v}`) as `t_i`.

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::group_algebra::{GroupAlgebraElement, Monomial};
use crate::hecke::{HeckePolynomial, Poly};
use crate::lattice::IntLattice;
use crate::Rational;

/// One printed symbol per basis direction of a lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolMap {
    symbols: Vec<String>,
}

impl SymbolMap {
    pub fn new(symbols: Vec<String>) -> Self {
        Self { symbols }
    }

    /// `e_0^v ↦ s`, `e_i^v ↦ t_i`, `chi_i^v ↦ t_i`; quotient labels of the
    /// form `[label]` map like `label`.
    pub fn default_for(lattice: &IntLattice) -> Result<Self> {
        let symbols = lattice
            .labels()
            .iter()
            .map(|label| {
                let inner = label
                    .strip_prefix('[')
                    .and_then(|l| l.strip_suffix(']'))
                    .unwrap_or(label);
                let index = inner
                    .strip_suffix("^v")
                    .and_then(|l| l.strip_prefix("e_").or_else(|| l.strip_prefix("chi_")))
                    .and_then(|i| i.parse::<usize>().ok());
                match (index, inner.starts_with("e_")) {
                    (Some(0), true) => Ok("s".to_string()),
                    (Some(i), _) => Ok(format!("t_{i}")),
                    (None, _) => Err(Error::UnmappedSymbol(label.clone())),
                }
            })
            .collect::<Result<_>>()?;
        Ok(Self { symbols })
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    Text,
    Latex,
}

/// Rendering options.
#[derive(Clone, Debug)]
pub struct Style {
    pub flavor: Flavor,
    /// Printed name of `q`.
    pub q_symbol: String,
    /// Print the product of cycle factors instead of the coefficients.
    pub factored: bool,
}

impl Style {
    pub fn text() -> Self {
        Self {
            flavor: Flavor::Text,
            q_symbol: "q".into(),
            factored: false,
        }
    }

    pub fn latex() -> Self {
        Self {
            flavor: Flavor::Latex,
            q_symbol: "p".into(),
            factored: true,
        }
    }
}

struct Renderer<'a> {
    map: &'a SymbolMap,
    style: &'a Style,
    thin_space: bool,
}

impl Renderer<'_> {
    fn power(&self, base: &str, k: i64) -> String {
        match (k, self.style.flavor) {
            (1, _) => base.to_string(),
            (_, Flavor::Latex) => format!("{base}^{{{k}}}"),
            (_, Flavor::Text) => format!("{base}^{k}"),
        }
    }

    fn x_power(&self, k: usize) -> String {
        match (k, self.style.flavor) {
            (0, _) => String::new(),
            (1, _) => "X".into(),
            (2..=9, _) | (_, Flavor::Text) => format!("X^{k}"),
            (_, Flavor::Latex) => format!("X^{{{k}}}"),
        }
    }

    fn rational(&self, c: &Rational) -> String {
        if c.is_integer() {
            c.to_integer().to_string()
        } else {
            match self.style.flavor {
                Flavor::Latex => format!("\\frac{{{}}}{{{}}}", c.numer(), c.denom()),
                Flavor::Text => format!("{}/{}", c.numer(), c.denom()),
            }
        }
    }

    /// `|c| q^a h_ν` without sign.
    fn monomial(&self, m: &Monomial, c: &Rational, standalone: bool) -> Result<String> {
        if m.exp.len() != self.map.symbols.len() {
            return Err(Error::DimensionMismatch {
                expected: self.map.symbols.len(),
                found: m.exp.len(),
            });
        }
        let q_part = if m.q == 0 {
            String::new()
        } else {
            self.power(&self.style.q_symbol, m.q)
        };
        let h_part = m
            .exp
            .iter()
            .zip(&self.map.symbols)
            .filter(|(&e, _)| e != 0)
            .map(|(&e, s)| self.power(s, e))
            .collect::<Vec<_>>()
            .join(" ");
        let sep = if standalone && self.thin_space {
            "\\,"
        } else {
            " "
        };
        let body = match (q_part.is_empty(), h_part.is_empty()) {
            (true, true) => String::new(),
            (false, true) => q_part,
            (true, false) => h_part,
            (false, false) => format!("{q_part}{sep}{h_part}"),
        };
        let c = c.abs();
        Ok(match (c.is_one(), body.is_empty()) {
            (true, true) => "1".into(),
            (true, false) => body,
            (false, true) => self.rational(&c),
            (false, false) => format!("{} {body}", self.rational(&c)),
        })
    }

    /// Returns `(negative, body)`; multi-term sums come back parenthesized
    /// when `wrap` is set.
    fn element(&self, x: &GroupAlgebraElement, wrap: bool) -> Result<(bool, String)> {
        let terms: Vec<(&Monomial, &Rational)> = x.terms().collect();
        match terms.as_slice() {
            [] => Ok((false, "0".into())),
            [(m, c)] => Ok((c.is_negative(), self.monomial(m, c, true)?)),
            _ => {
                let negate = terms.iter().all(|(_, c)| c.is_negative());
                let mut out = String::new();
                for (i, (m, c)) in terms.iter().enumerate() {
                    let neg = c.is_negative() != negate;
                    let body = self.monomial(m, c, false)?;
                    match (i, neg) {
                        (0, true) => out.push_str(&format!("-{body}")),
                        (0, false) => out.push_str(&body),
                        (_, true) => out.push_str(&format!(" - {body}")),
                        (_, false) => out.push_str(&format!(" + {body}")),
                    }
                }
                Ok((negate, if wrap { format!("({out})") } else { out }))
            }
        }
    }

    fn poly(&self, p: &Poly) -> Result<String> {
        let mut out = String::new();
        for (k, c) in p.ascending().iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let x = self.x_power(k);
            let (neg, term) = if c.is_one() {
                (false, if k == 0 { "1".to_string() } else { x })
            } else if (-c).is_one() {
                (true, if k == 0 { "1".to_string() } else { x })
            } else {
                let (neg, body) = self.element(c, true)?;
                let joined = if k == 0 {
                    body
                } else if body.starts_with('(') && self.style.flavor == Flavor::Latex {
                    format!("{body}{x}")
                } else {
                    format!("{body} {x}")
                };
                (neg, joined)
            };
            match (out.is_empty(), neg) {
                (true, true) => out.push_str(&format!("-{term}")),
                (true, false) => out.push_str(&term),
                (false, true) => out.push_str(&format!(" - {term}")),
                (false, false) => out.push_str(&format!(" + {term}")),
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        Ok(out)
    }
}

/// Renders a Hecke polynomial. With `style.factored` and a known
/// factorization the result is a product of parenthesized cycle factors.
pub fn render_hecke(h: &HeckePolynomial, map: &SymbolMap, style: &Style) -> Result<String> {
    if style.factored && !h.factors().is_empty() {
        let r = Renderer {
            map,
            style,
            thin_space: false,
        };
        let mut out = String::new();
        for f in h.factors() {
            out.push('(');
            out.push_str(&r.poly(&f.to_poly())?);
            out.push(')');
        }
        Ok(out)
    } else if style.factored && h.degree() == 0 {
        Ok("1".into())
    } else {
        render_poly(h.poly(), map, style)
    }
}

/// Renders the expanded polynomial.
pub fn render_poly(p: &Poly, map: &SymbolMap, style: &Style) -> Result<String> {
    Renderer {
        map,
        style,
        thin_space: style.flavor == Flavor::Latex,
    }
    .poly(p)
}

/// Renders a single group-algebra element as an unparenthesized sum.
pub fn render_element(x: &GroupAlgebraElement, map: &SymbolMap, style: &Style) -> Result<String> {
    let r = Renderer {
        map,
        style,
        thin_space: style.flavor == Flavor::Latex,
    };
    let (neg, body) = r.element(x, false)?;
    let terms = x.len();
    Ok(match (neg, terms > 1) {
        (true, true) => format!("-({body})"),
        (true, false) => format!("-{body}"),
        (false, _) => body,
    })
}

/// LaTeX with `q` printed as `p`; factored unless `expanded`.
pub fn emit_latex(h: &HeckePolynomial, map: &SymbolMap, expanded: bool) -> Result<String> {
    let mut style = Style::latex();
    style.factored = !expanded;
    render_hecke(h, map, &style)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hecke::{hecke_poly, Mode};
    use crate::root_datum::{build_gl, build_gspin};

    #[test]
    fn default_symbols() {
        let l = IntLattice::new(["e_0^v", "e_1^v", "e_2^v"]).unwrap();
        assert_eq!(SymbolMap::default_for(&l).unwrap().symbols(), ["s", "t_1", "t_2"]);
        let l = IntLattice::new(["[e_0^v]", "chi_3^v"]).unwrap();
        assert_eq!(SymbolMap::default_for(&l).unwrap().symbols(), ["s", "t_3"]);
        let l = IntLattice::new(["u_1"]).unwrap();
        assert_eq!(
            SymbolMap::default_for(&l).unwrap_err(),
            Error::UnmappedSymbol("u_1".into())
        );
    }

    #[test]
    fn gl2_text_and_latex() {
        let d = build_gl(2).unwrap();
        let mu = d.cochar_lattice().vector(vec![1, 0]).unwrap();
        let h = hecke_poly(&d, &mu, Mode::SplitRho).unwrap();
        let map = SymbolMap::default_for(d.cochar_lattice()).unwrap();
        assert_eq!(
            render_hecke(&h, &map, &Style::text()).unwrap(),
            "X^2 - (t_1 + q t_2) X + q t_1 t_2"
        );
        assert_eq!(
            emit_latex(&h, &map, true).unwrap(),
            "X^2 - (t_1 + p t_2)X + p\\,t_1 t_2"
        );
        assert_eq!(emit_latex(&h, &map, false).unwrap(), "(X - t_1)(X - p t_2)");
    }

    #[test]
    fn gspin_special_factor_and_unit() {
        let d = build_gspin(8, true).unwrap();
        let mu = d.solve_ks_lift().unwrap();
        let h = hecke_poly(&d, &mu, Mode::Symmetric).unwrap();
        let map = SymbolMap::default_for(d.cochar_lattice()).unwrap();
        let (special, _) = h.special_factor().unwrap();
        assert_eq!(emit_latex(&special, &map, false).unwrap(), "(X^2 - p^{6} s)");
        let h0 = hecke_poly(&d, &d.cochar_lattice().zero(), Mode::Symmetric).unwrap();
        assert_eq!(emit_latex(&h0, &map, false).unwrap(), "(X - 1)");
    }

    #[test]
    fn gspin6_factored_shape() {
        let d = build_gspin(6, true).unwrap();
        let mu = d.solve_ks_lift().unwrap();
        let h = hecke_poly(&d, &mu, Mode::Symmetric).unwrap();
        let map = SymbolMap::default_for(d.cochar_lattice()).unwrap();
        assert_eq!(
            emit_latex(&h, &map, false).unwrap(),
            "(X^2 - p^{4} s)(X - t_1)(X - s t_1^{-1})(X - p t_2)(X - p s t_2^{-1})"
        );
    }

    #[test]
    fn elements_and_rationals() {
        let l = IntLattice::new(["e_0^v", "e_1^v"]).unwrap();
        let map = SymbolMap::default_for(&l).unwrap();
        let half = Rational::new(1.into(), 2.into());
        let x = GroupAlgebraElement::monomial(&l, -2, vec![1, -1], -half).unwrap();
        assert_eq!(render_element(&x, &map, &Style::text()).unwrap(), "-1/2 q^-2 s t_1^-1");
        let mut latex = Style::latex();
        latex.q_symbol = "q".into();
        assert_eq!(
            render_element(&x, &map, &latex).unwrap(),
            "-\\frac{1}{2} q^{-2}\\,s t_1^{-1}"
        );
        assert_eq!(
            render_element(&GroupAlgebraElement::zero(&l), &map, &Style::text()).unwrap(),
            "0"
        );
    }
}
