use std::collections::BTreeSet;

use itertools::Itertools;
use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::json::Int;
use crate::polytope::{ExponentVector, Weight};
use crate::poset::{Kind, MarkingSet, Poset};
use crate::rep::weyl_dim;

use super::minors::{find_weight_order, initial_term, plucker_minors, require_kind};
use super::polynomial::{span_rank, Polynomial};

/// Largest `|λ|₁` accepted by the Hilbert-function checks.
pub const DEGREE_GUARD: u32 = 4;

pub(crate) fn guard_degree(lambda: &Weight) -> Result<()> {
    if lambda.degree() > DEGREE_GUARD {
        Err(Error::ResourceGuard(format!("|λ| = {} exceeds {DEGREE_GUARD}", lambda.degree())))
    } else {
        Ok(())
    }
}

/// Every way to pick a multiset of `a_k` generators from pool `k`, for all
/// `k` at once. Each selection lists `(k, index)` pairs.
pub(crate) fn selections(pools: &[usize], lambda: &Weight) -> Vec<Vec<(usize, usize)>> {
    let mut out: Vec<Vec<(usize, usize)>> = vec![Vec::new()];
    for (k, &size) in (1..).zip(pools) {
        let a = lambda.get(k) as usize;
        if a == 0 {
            continue;
        }
        let choices: Vec<Vec<usize>> = (0..size).combinations_with_replacement(a).collect();
        out = out
            .into_iter()
            .flat_map(|sel| {
                choices.iter().map(move |c| {
                    let mut s = sel.clone();
                    s.extend(c.iter().map(|&i| (k, i)));
                    s
                })
            })
            .collect();
    }
    out
}

fn product_polynomials(minors: &[Vec<Polynomial>], lambda: &Weight, nvars: usize) -> Vec<Polynomial> {
    let pools: Vec<usize> = minors.iter().map(Vec::len).collect();
    selections(&pools, lambda)
        .into_iter()
        .map(|sel| sel.iter().fold(Polynomial::one(nvars), |acc, &(k, i)| acc.mul(&minors[k - 1][i])))
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct SagbiReport {
    /// Distinct products of initial terms.
    pub n1: usize,
    /// Dimension of the span of products of minors.
    pub n2: usize,
    /// Weyl dimension.
    pub n3: Int,
    pub passed: bool,
}

/// Compares, in multidegree `λ`, the number of distinct products of initial
/// terms of the minors, the dimension spanned by products of the minors, and
/// the Weyl dimension. Type A.
pub fn sagbi_hilbert_check(poset: &Poset, o: &MarkingSet, lambda: &Weight) -> Result<SagbiReport> {
    require_kind(poset, Kind::A, "the sagbi check")?;
    lambda.check(poset)?;
    guard_degree(lambda)?;
    let order = find_weight_order(poset, o)?;
    let Some(w) = order.witness_values.filter(|_| order.passed) else {
        return Err(Error::InvariantViolation(format!(
            "no certified weight order: {}",
            order.failures.join("; ")
        )));
    };
    let minors: Vec<Vec<Polynomial>> = poset
        .fundamental_range()
        .map(|k| Ok(plucker_minors(poset, k)?.into_iter().map(|(_, m)| m).collect()))
        .collect::<Result<_>>()?;
    let initials: Vec<Vec<ExponentVector>> = minors
        .iter()
        .map(|ms| ms.iter().map(|m| initial_term(m, &w).map(|(e, _)| e)).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    let pools: Vec<usize> = minors.iter().map(Vec::len).collect();
    let products: BTreeSet<ExponentVector> = selections(&pools, lambda)
        .into_iter()
        .map(|sel| {
            sel.iter()
                .fold(ExponentVector::zeros(poset.len()), |acc, &(k, i)| acc.add(&initials[k - 1][i]))
        })
        .collect();
    let n1 = products.len();
    let n2 = span_rank(&product_polynomials(&minors, lambda, poset.len()))?;
    let n3 = weyl_dim(Kind::A, poset.n(), lambda)?;
    let passed = BigInt::from(n1) == n3 && BigInt::from(n2) == n3;
    Ok(SagbiReport { n1, n2, n3: Int(n3), passed })
}

#[derive(Debug, Clone, Serialize)]
pub struct IntermediateReport {
    pub products: usize,
    pub rank: usize,
    pub expected: Int,
    pub passed: bool,
}

/// Dimension of the span of multidegree-`λ` products of the minors `D_t`,
/// `t ∈ Θ`, against the `sp_2n` Weyl dimension. Type C.
pub fn intermediate_hilbert_check(poset: &Poset, lambda: &Weight) -> Result<IntermediateReport> {
    require_kind(poset, Kind::C, "the intermediate check")?;
    lambda.check(poset)?;
    guard_degree(lambda)?;
    let minors: Vec<Vec<Polynomial>> = poset
        .fundamental_range()
        .map(|k| Ok(plucker_minors(poset, k)?.into_iter().map(|(_, m)| m).collect()))
        .collect::<Result<_>>()?;
    let products = product_polynomials(&minors, lambda, poset.len());
    let rank = span_rank(&products)?;
    let expected = weyl_dim(Kind::C, poset.n(), lambda)?;
    Ok(IntermediateReport { products: products.len(), rank, passed: BigInt::from(rank) == expected, expected: Int(expected) })
}
