//! Polynomials in `ℂ[P]`, minors of `Z`, toric kernels, sagbi and Hilbert
//! function checks, the map `ψ` and the valuation `ν`.

mod hilbert;
mod minors;
mod polynomial;
mod toric;

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

pub use hilbert::{
    intermediate_hilbert_check, sagbi_hilbert_check, IntermediateReport, SagbiReport, DEGREE_GUARD,
};
pub use minors::{
    find_weight_order, initial_term, plucker_minors, target_minors, MatrixZ, WeightOrderReport,
};
pub use polynomial::{monomial_name, span_rank, Polynomial};
pub use toric::{
    fundamental_ideals, ideal_map, kernel_equality_check, toric_kernel_binomials, tuple_map, Binomial,
    KernelReport, MonomialMap,
};

use crate::error::{Error, Result};
use crate::pipedream::{ideal_tuple, target_tuples, PlueckerTuple};
use crate::polytope::{lattice_points, mcop_vertex, ExponentVector, Weight};
use crate::poset::{Kind, MarkingSet, OrderIdeal, Poset};

/// `±X_t` with `t` increasing in column order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct SignedVariable {
    pub sign: i8,
    pub tuple: PlueckerTuple,
}

/// `ψ(X_J) = X_{w^J(1),…,w^J(k)}`, brought to increasing order with the sign
/// of the sorting permutation.
pub fn psi(poset: &Poset, o: &MarkingSet, j: &OrderIdeal) -> Result<SignedVariable> {
    let t = ideal_tuple(poset, o, j)?;
    Ok(SignedVariable { sign: t.sign, tuple: t.sorted })
}

/// `ν`: sends the variable `ψ(X_J)` to `x_O(J)` and a monomial to the sum
/// over its factors.
#[derive(Debug, Clone)]
pub struct Valuation {
    dim: usize,
    values: BTreeMap<PlueckerTuple, ExponentVector>,
}

impl Valuation {
    pub fn new(poset: &Poset, o: &MarkingSet) -> Result<Self> {
        let mut values = BTreeMap::new();
        for j in fundamental_ideals(poset) {
            let v = psi(poset, o, &j)?;
            if values.insert(v.tuple.clone(), mcop_vertex(poset, o, &j)?).is_some() {
                return Err(Error::InvariantViolation(format!("ψ is not injective at {}", v.tuple)));
            }
        }
        Ok(Valuation { dim: poset.len(), values })
    }

    /// Value on a monomial given as a list of (possibly unsorted) tuples.
    pub fn apply(&self, monomial: &[PlueckerTuple], kind: Kind, n: usize) -> Result<ExponentVector> {
        let mut acc = ExponentVector::zeros(self.dim);
        for t in monomial {
            let (sign, sorted) = t.canonicalize(kind, n)?;
            let v = self
                .values
                .get(&sorted)
                .filter(|_| sign != 0)
                .ok_or_else(|| Error::Domain(format!("X_{t} is not of the form ψ(X_J)")))?;
            acc = acc.add(v);
        }
        Ok(acc)
    }
}

pub fn valuation_nu(poset: &Poset, o: &MarkingSet, monomial: &[PlueckerTuple]) -> Result<ExponentVector> {
    Valuation::new(poset, o)?.apply(monomial, poset.kind(), poset.n())
}

/// `τ = ∏_k X_{1,…,k}^{a_k}` as a list of tuples.
pub fn tau_monomial(lambda: &Weight) -> Vec<PlueckerTuple> {
    (1..=lambda.len())
        .flat_map(|k| std::iter::repeat_n(PlueckerTuple::new((1..=k as i32).collect()), lambda.get(k) as usize))
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct NuImageReport {
    pub monomials: usize,
    pub values: usize,
    pub points: usize,
    pub missing: Vec<ExponentVector>,
    pub extra: Vec<ExponentVector>,
    pub passed: bool,
}

/// The `ν`-values of all multidegree-`λ` monomials in the variables `X_t`,
/// `t ∈ Θ`, against the lattice points of `𝒬_O(λ)`. Type C.
pub fn nu_image_check(poset: &Poset, o: &MarkingSet, lambda: &Weight) -> Result<NuImageReport> {
    minors::require_kind(poset, Kind::C, "the ν-image check")?;
    lambda.check(poset)?;
    hilbert::guard_degree(lambda)?;
    let nu = Valuation::new(poset, o)?;
    let pools: Vec<Vec<PlueckerTuple>> =
        poset.fundamental_range().map(|k| target_tuples(poset.kind(), poset.n(), k)).collect();
    let sizes: Vec<usize> = pools.iter().map(Vec::len).collect();
    let selections = hilbert::selections(&sizes, lambda);
    let values: BTreeSet<ExponentVector> = selections
        .iter()
        .map(|sel| {
            let mono: Vec<PlueckerTuple> = sel.iter().map(|&(k, i)| pools[k - 1][i].clone()).collect();
            nu.apply(&mono, poset.kind(), poset.n())
        })
        .collect::<Result<_>>()?;
    let points = lattice_points(poset, o, lambda)?;
    let missing: Vec<ExponentVector> = points.difference(&values).cloned().collect();
    let extra: Vec<ExponentVector> = values.difference(&points).cloned().collect();
    Ok(NuImageReport {
        monomials: selections.len(),
        values: values.len(),
        points: points.len(),
        passed: missing.is_empty() && extra.is_empty(),
        missing,
        extra,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::x_lambda;

    #[test]
    fn psi_signs() {
        let p = Poset::new(Kind::A, 4).unwrap();
        let full = MarkingSet::full(&p);
        for j in fundamental_ideals(&p) {
            assert_eq!(psi(&p, &full, &j).unwrap().sign, 1);
        }
        let (sign, sorted) = PlueckerTuple::new(vec![2, 1]).canonicalize(Kind::A, 2).unwrap();
        assert_eq!((sign, sorted.entries), (-1, vec![1, 2]));
    }

    #[test]
    fn valuation_basics() {
        let c = Poset::new(Kind::C, 2).unwrap();
        let o = MarkingSet::diagonal(&c);
        let nu = Valuation::new(&c, &o).unwrap();
        assert!(nu.apply(&[], Kind::C, 2).unwrap().is_zero());
        for j in fundamental_ideals(&c) {
            let v = psi(&c, &o, &j).unwrap();
            assert_eq!(nu.apply(&[v.tuple], Kind::C, 2).unwrap(), mcop_vertex(&c, &o, &j).unwrap());
        }
        // (1,-1) is not admissible, so it is not a ψ-image
        assert!(nu.apply(&[PlueckerTuple::new(vec![1, -1])], Kind::C, 2).is_err());
        let lambda = Weight::new(vec![1, 1]);
        assert_eq!(
            nu.apply(&tau_monomial(&lambda), Kind::C, 2).unwrap(),
            x_lambda(&c, &o, &lambda).unwrap()
        );
    }

    #[test]
    fn nu_images_c2() {
        let c = Poset::new(Kind::C, 2).unwrap();
        let r = nu_image_check(&c, &MarkingSet::full(&c), &Weight::new(vec![1, 1])).unwrap();
        assert!(r.passed);
        assert_eq!((r.monomials, r.values), (20, 16));
        let r = nu_image_check(&c, &MarkingSet::diagonal(&c), &Weight::new(vec![2, 0])).unwrap();
        assert!(r.passed, "{r:?}");
    }
}
