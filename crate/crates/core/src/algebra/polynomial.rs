use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::ExactMatrix;
use crate::polytope::ExponentVector;
use crate::poset::Poset;

/// Polynomial in the variables `z_p`, `p` ranging over poset elements, with
/// integer coefficients. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<ExponentVector, BigInt>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(ExponentVector::zeros(nvars), BigInt::one())
    }

    pub fn monomial(exponent: ExponentVector, coefficient: BigInt) -> Self {
        let nvars = exponent.len();
        let mut terms = BTreeMap::new();
        if !coefficient.is_zero() {
            terms.insert(exponent, coefficient);
        }
        Polynomial { nvars, terms }
    }

    pub fn variable(nvars: usize, idx: usize) -> Self {
        let mut e = vec![0; nvars];
        e[idx] = 1;
        Self::monomial(ExponentVector::new(e), BigInt::one())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &ExponentVector) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, e: ExponentVector, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial { nvars: self.nvars, terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1.add(e2), c1 * c2);
            }
        }
        out
    }

    /// Renders with variable names `z_{i,j}`.
    pub fn display(&self, poset: &Poset) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (t, (e, c)) in self.terms.iter().rev().enumerate() {
            let negative = c < &BigInt::zero();
            if t > 0 {
                out.push_str(if negative { " - " } else { " + " });
            } else if negative {
                out.push('-');
            }
            let abs = if negative { -c.clone() } else { c.clone() };
            let vars = monomial_name(poset, e);
            if vars.is_empty() {
                let _ = write!(out, "{abs}");
            } else if abs.is_one() {
                out.push_str(&vars);
            } else {
                let _ = write!(out, "{abs}*{vars}");
            }
        }
        out
    }
}

pub fn monomial_name(poset: &Poset, e: &ExponentVector) -> String {
    let mut parts = Vec::new();
    for idx in 0..e.len() {
        let el = poset.element(idx);
        match e[idx] {
            0 => {}
            1 => parts.push(format!("z_{{{},{}}}", el.i, el.j)),
            k => parts.push(format!("z_{{{},{}}}^{k}", el.i, el.j)),
        }
    }
    parts.join("*")
}

/// Dimension of the ℚ-span of the given polynomials.
pub fn span_rank(polys: &[Polynomial]) -> Result<usize> {
    let Some(first) = polys.first() else { return Ok(0) };
    if polys.iter().any(|p| p.nvars != first.nvars) {
        return Err(Error::DimensionMismatch("polynomials over different variable sets".into()));
    }
    let support: BTreeSet<&ExponentVector> = polys.iter().flat_map(|p| p.terms.keys()).collect();
    let column: BTreeMap<&ExponentVector, usize> = support.into_iter().zip(0..).collect();
    let mut m = ExactMatrix::zeros(polys.len(), column.len());
    for (r, p) in polys.iter().enumerate() {
        for (e, c) in &p.terms {
            m[(r, column[e])] = c.clone();
        }
    }
    Ok(m.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::Kind;

    #[test]
    fn arithmetic() {
        let x = Polynomial::variable(2, 0);
        let y = Polynomial::variable(2, 1);
        let s = x.add(&y);
        let d = x.add(&y.scale(&BigInt::from(-1)));
        let prod = s.mul(&d);
        // (x + y)(x - y) = x^2 - y^2
        assert_eq!(prod.len(), 2);
        assert_eq!(prod.coefficient(&ExponentVector::new(vec![2, 0])), BigInt::one());
        assert_eq!(prod.coefficient(&ExponentVector::new(vec![0, 2])), BigInt::from(-1));
        assert!(x.add(&x.scale(&BigInt::from(-1))).is_zero());
        assert_eq!(x.mul(&Polynomial::one(2)), x);
    }

    #[test]
    fn rank_of_span() {
        let x = Polynomial::variable(2, 0);
        let y = Polynomial::variable(2, 1);
        assert_eq!(span_rank(&[x.clone(), y.clone(), x.add(&y)]).unwrap(), 2);
        assert_eq!(span_rank(&[]).unwrap(), 0);
    }

    #[test]
    fn rendering() {
        let p = Poset::new(Kind::A, 2).unwrap();
        let z11 = Polynomial::variable(3, 0);
        let z12 = Polynomial::variable(3, 1);
        let q = z11.mul(&z11).add(&z12.scale(&BigInt::from(-3)));
        assert_eq!(q.display(&p), "z_{1,1}^2 - 3*z_{1,2}");
    }
}
