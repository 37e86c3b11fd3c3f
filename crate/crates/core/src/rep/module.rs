use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::json::Int;
use crate::linalg::ExactMatrix;
use crate::polytope::{pi_polytope, ExponentVector, Weight};
use crate::poset::{Kind, MarkingSet, Poset};

use super::weyl_dim;

/// Largest ambient `W` that [`basis_check`] will build.
pub const AMBIENT_GUARD: u64 = 20_000;

/// A vector of `W = ⊗_k (Λ^k ℂ^n)^{⊗ a_k}` in the basis of tensor products
/// of wedge monomials; each factor is an increasing list of indices.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RepVector {
    n: usize,
    terms: BTreeMap<Vec<Vec<u8>>, BigInt>,
}

impl RepVector {
    pub fn zero(n: usize) -> Self {
        RepVector { n, terms: BTreeMap::new() }
    }

    /// A single basis tensor. Factors need not be sorted; a repeated index
    /// gives zero.
    pub fn basis(n: usize, factors: &[Vec<u8>]) -> Result<Self> {
        let mut sign = 1i32;
        let mut key = Vec::with_capacity(factors.len());
        for f in factors {
            if f.iter().any(|&x| x == 0 || x as usize > n) {
                return Err(Error::Domain(format!("wedge index outside [1, {n}]")));
            }
            let mut f = f.clone();
            // bubble sort to track the sign
            for a in 0..f.len() {
                for b in 0..f.len() - 1 - a {
                    if f[b] > f[b + 1] {
                        f.swap(b, b + 1);
                        sign = -sign;
                    }
                }
            }
            if f.windows(2).any(|w| w[0] == w[1]) {
                return Ok(Self::zero(n));
            }
            key.push(f);
        }
        let mut v = Self::zero(n);
        v.terms.insert(key, BigInt::from(sign));
        Ok(v)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Vec<Vec<u8>>, BigInt> {
        &self.terms
    }

    pub fn coefficient(&self, key: &[Vec<u8>]) -> BigInt {
        self.terms.get(key).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, key: Vec<Vec<u8>>, c: BigInt) {
        let entry = self.terms.entry(key.clone()).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// `ε`-weight of every basis tensor in the support, if they all agree.
    pub fn weight(&self) -> Option<Vec<i64>> {
        let weights: BTreeSet<Vec<i64>> = self
            .terms
            .keys()
            .map(|key| {
                let mut w = vec![0; self.n];
                for f in key {
                    for &x in f {
                        w[x as usize - 1] += 1;
                    }
                }
                w
            })
            .collect();
        (weights.len() == 1).then(|| weights.into_iter().next().expect("one"))
    }
}

/// `f_{i,j}`: the matrix unit `e_i ↦ e_j`, acting on wedge factors as a
/// derivation and on tensor products by the Leibniz rule.
pub fn negative_root_action(i: usize, j: usize, v: &RepVector) -> Result<RepVector> {
    if !(1 <= i && i < j && j <= v.n) {
        return Err(Error::Domain(format!("f_{{{i},{j}}} needs 1 <= i < j <= {}", v.n)));
    }
    let (i, j) = (i as u8, j as u8);
    let mut out = RepVector::zero(v.n);
    for (key, c) in &v.terms {
        for (slot, f) in key.iter().enumerate() {
            let Some(pos) = f.iter().position(|&x| x == i) else { continue };
            if f.contains(&j) {
                continue;
            }
            // moving e_j into sorted position passes the entries strictly between i and j
            let passed = f.iter().filter(|&&x| x > i && x < j).count();
            let mut g = f.clone();
            g.remove(pos);
            let at = g.partition_point(|&x| x < j);
            g.insert(at, j);
            let mut new_key = key.clone();
            new_key[slot] = g;
            let sign = if passed % 2 == 0 { c.clone() } else { -c.clone() };
            out.add_term(new_key, sign);
        }
    }
    Ok(out)
}

/// `f^x v`: the product of `f_{i,j}^{x_{i,j}}` over off-diagonal elements in
/// canonical order, left to right, with the rightmost factor acting first.
pub fn pbw_apply(poset: &Poset, x: &ExponentVector, v: &RepVector) -> Result<RepVector> {
    if poset.kind() != Kind::A {
        return Err(Error::Unsupported("PBW monomials are implemented for sl_n".into()));
    }
    if x.len() != poset.len() {
        return Err(Error::DimensionMismatch(format!("exponent of length {}, poset has {}", x.len(), poset.len())));
    }
    let mut out = v.clone();
    for idx in (0..poset.len()).rev() {
        let e = poset.element(idx);
        if e.i == e.j {
            continue;
        }
        if x[idx] < 0 {
            return Err(Error::Domain("negative PBW exponent".into()));
        }
        for _ in 0..x[idx] {
            out = negative_root_action(e.i as usize, e.j as usize, &out)?;
        }
    }
    Ok(out)
}

/// `v_λ = ⊗_k (e_1 ∧ ... ∧ e_k)^{⊗ a_k}`.
pub fn highest_weight_vector(n: usize, lambda: &Weight) -> Result<RepVector> {
    let factors: Vec<Vec<u8>> = (1..=lambda.len())
        .flat_map(|k| std::iter::repeat_n((1..=k as u8).collect::<Vec<_>>(), lambda.get(k) as usize))
        .collect();
    RepVector::basis(n, &factors)
}

/// `dim W = ∏_k C(n, k)^{a_k}`.
pub fn ambient_dimension(n: usize, lambda: &Weight) -> u128 {
    let binom = |k: usize| (0..k).fold(1u128, |acc, t| acc * (n - t) as u128 / (t + 1) as u128);
    (1..=lambda.len()).fold(1u128, |acc, k| acc.saturating_mul(binom(k).saturating_pow(lambda.get(k))))
}

#[derive(Debug, Clone, Serialize)]
pub struct BasisReport {
    pub points: usize,
    pub rank: usize,
    pub expected: Int,
    pub ambient_dim: Int,
    /// Exponents whose vectors vanish.
    pub zero_vectors: Vec<ExponentVector>,
    pub passed: bool,
    #[serde(skip)]
    pub elapsed_ms: u128,
}

/// Checks that `{ f^x v_λ : x ∈ Π_O(λ) ∩ ℤ^P }` is a basis of `V_λ`:
/// the rank equals both the number of points and the Weyl dimension.
pub fn basis_check(poset: &Poset, o: &MarkingSet, lambda: &Weight) -> Result<BasisReport> {
    let start = Instant::now();
    let n = poset.n();
    let ambient = ambient_dimension(n, lambda);
    if ambient > AMBIENT_GUARD as u128 {
        return Err(Error::ResourceGuard(format!("ambient dimension {ambient} exceeds {AMBIENT_GUARD}")));
    }
    let points: Vec<ExponentVector> = pi_polytope(poset, o, lambda)?.lattice_points().into_iter().collect();
    let top = highest_weight_vector(n, lambda)?;
    let vectors: Vec<RepVector> =
        points.par_iter().map(|x| pbw_apply(poset, x, &top)).collect::<Result<_>>()?;
    let zero_vectors: Vec<ExponentVector> =
        points.iter().zip(&vectors).filter(|(_, v)| v.is_zero()).map(|(x, _)| x.clone()).collect();
    let keys: BTreeSet<&Vec<Vec<u8>>> = vectors.iter().flat_map(|v| v.terms.keys()).collect();
    let column: BTreeMap<&Vec<Vec<u8>>, usize> = keys.into_iter().zip(0..).collect();
    let mut m = ExactMatrix::zeros(vectors.len(), column.len());
    for (r, v) in vectors.iter().enumerate() {
        for (key, c) in &v.terms {
            m[(r, column[key])] = c.clone();
        }
    }
    let rank = m.rank();
    let expected = weyl_dim(Kind::A, n, lambda)?;
    let passed = BigInt::from(rank) == expected && rank == points.len();
    Ok(BasisReport {
        points: points.len(),
        rank,
        expected: Int(expected),
        ambient_dim: Int(BigInt::from(ambient)),
        zero_vectors,
        passed,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: usize, factors: &[&[u8]]) -> RepVector {
        RepVector::basis(n, &factors.iter().map(|f| f.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn neg(v: &RepVector) -> RepVector {
        let mut out = RepVector::zero(v.n());
        for (k, c) in v.terms() {
            out.add_term(k.clone(), -c.clone());
        }
        out
    }

    #[test]
    fn defining_action() {
        assert_eq!(negative_root_action(1, 2, &e(3, &[&[1]])).unwrap(), e(3, &[&[2]]));
        assert!(negative_root_action(1, 2, &e(3, &[&[1, 2]])).unwrap().is_zero());
        assert_eq!(negative_root_action(1, 3, &e(3, &[&[1, 2]])).unwrap(), neg(&e(3, &[&[2, 3]])));
        assert_eq!(e(3, &[&[3, 2]]), neg(&e(3, &[&[2, 3]])));
        assert!(negative_root_action(2, 1, &e(3, &[&[1]])).is_err());
        assert!(negative_root_action(1, 4, &e(3, &[&[1]])).is_err());
    }

    #[test]
    fn leibniz_rule() {
        let v = e(2, &[&[1], &[1]]);
        let fv = negative_root_action(1, 2, &v).unwrap();
        assert_eq!(fv.terms().len(), 2);
        let ffv = negative_root_action(1, 2, &fv).unwrap();
        assert_eq!(ffv.coefficient(&[vec![2], vec![2]]), BigInt::from(2));
        assert!(negative_root_action(1, 2, &ffv).unwrap().is_zero());
    }

    #[test]
    fn sl2_string() {
        let p = Poset::new(Kind::A, 2).unwrap();
        let idx = p.try_index((1, 2).into()).unwrap();
        for a in 0..=3u32 {
            let top = highest_weight_vector(2, &Weight::new(vec![a])).unwrap();
            for m in 0..=a as i64 + 1 {
                let mut x = vec![0; 3];
                x[idx] = m;
                let v = pbw_apply(&p, &ExponentVector::new(x), &top).unwrap();
                assert_eq!(v.is_zero(), m > a as i64);
            }
        }
    }

    #[test]
    fn factor_order() {
        // f_{1,2} f_{2,3} v with f_{2,3} acting first
        let p = Poset::new(Kind::A, 3).unwrap();
        let lambda = Weight::new(vec![1, 1]);
        let top = highest_weight_vector(3, &lambda).unwrap();
        let mut x = vec![0i64; p.len()];
        x[p.try_index((1, 2).into()).unwrap()] = 1;
        x[p.try_index((2, 3).into()).unwrap()] = 1;
        let v = pbw_apply(&p, &ExponentVector::new(x), &top).unwrap();
        let by_hand =
            negative_root_action(1, 2, &negative_root_action(2, 3, &top).unwrap()).unwrap();
        assert_eq!(v, by_hand);
        assert!(!v.is_zero());
        // e_1 ⊗ (e_1∧e_3) ↦ e_2 ⊗ (e_1∧e_3) + e_1 ⊗ (e_2∧e_3)
        assert_eq!(v.terms().len(), 2);
    }

    #[test]
    fn outputs_are_weight_vectors() {
        let p = Poset::new(Kind::A, 3).unwrap();
        let lambda = Weight::new(vec![2, 1]);
        let top = highest_weight_vector(3, &lambda).unwrap();
        let top_weight = top.weight().unwrap();
        for x in pi_polytope(&p, &MarkingSet::full(&p), &lambda).unwrap().lattice_points() {
            let v = pbw_apply(&p, &x, &top).unwrap();
            let mut expected = top_weight.clone();
            for idx in 0..p.len() {
                let el = p.element(idx);
                if el.i != el.j {
                    expected[el.i as usize - 1] -= x[idx];
                    expected[el.j as usize - 1] += x[idx];
                }
            }
            assert_eq!(v.weight().unwrap(), expected);
        }
    }

    #[test]
    fn small_bases() {
        let p = Poset::new(Kind::A, 2).unwrap();
        for o in [MarkingSet::full(&p), MarkingSet::diagonal(&p)] {
            let r = basis_check(&p, &o, &Weight::new(vec![1])).unwrap();
            assert!(r.passed && r.rank == 2, "{r:?}");
        }
        let p3 = Poset::new(Kind::A, 3).unwrap();
        for o in [MarkingSet::full(&p3), MarkingSet::diagonal(&p3)] {
            let r = basis_check(&p3, &o, &Weight::new(vec![1, 1])).unwrap();
            assert!(r.passed && r.rank == 8, "{r:?}");
        }
    }

    #[test]
    fn guard() {
        let p = Poset::new(Kind::A, 6).unwrap();
        let lambda = Weight::new(vec![0, 0, 3, 0, 0]);
        assert_eq!(ambient_dimension(6, &lambda), 8000);
        assert!(matches!(
            basis_check(&p, &MarkingSet::full(&p), &Weight::new(vec![0, 0, 4, 0, 0])),
            Err(Error::ResourceGuard(_))
        ));
    }
}
