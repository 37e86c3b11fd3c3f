use std::collections::BTreeMap;

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::json::{ints, Int};
use crate::linalg::{find_unimodular_map, integer_kernel, same_lattice, ExactMatrix};
use crate::polytope::{mcop_vertex, tuple_indicator, ExponentVector};
use crate::poset::{MarkingSet, OrderIdeal, Poset};

/// A monomial map `X_v ↦ z^{image_v}` with `grad X_v = ω_{degree_v}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialMap {
    images: Vec<ExponentVector>,
    degrees: Vec<usize>,
}

impl MonomialMap {
    pub fn new(images: Vec<ExponentVector>, degrees: Vec<usize>) -> Result<Self> {
        if images.len() != degrees.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} images but {} multidegrees",
                images.len(),
                degrees.len()
            )));
        }
        if images.windows(2).any(|w| w[0].len() != w[1].len()) {
            return Err(Error::DimensionMismatch("images of different lengths".into()));
        }
        Ok(MonomialMap { images, degrees })
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[ExponentVector] {
        &self.images
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }
}

/// Ideals of the fundamental strata, in stratum order.
pub fn fundamental_ideals(poset: &Poset) -> Vec<OrderIdeal> {
    let strata = poset.enumerate_ideals();
    poset.fundamental_range().flat_map(|k| strata[k].clone()).collect()
}

/// `X_J ↦ z^{x_O(J)}`.
pub fn ideal_map(poset: &Poset, o: &MarkingSet) -> Result<MonomialMap> {
    let ideals = fundamental_ideals(poset);
    let images = ideals.iter().map(|j| mcop_vertex(poset, o, j)).collect::<Result<_>>()?;
    MonomialMap::new(images, ideals.iter().map(OrderIdeal::stratum).collect())
}

/// `X_J ↦ z_{1,w^J(1)} ⋯ z_{k,w^J(k)}`.
pub fn tuple_map(poset: &Poset, o: &MarkingSet) -> Result<MonomialMap> {
    let ideals = fundamental_ideals(poset);
    let images = ideals.iter().map(|j| tuple_indicator(poset, o, j)).collect::<Result<_>>()?;
    MonomialMap::new(images, ideals.iter().map(OrderIdeal::stratum).collect())
}

/// `X^lhs - X^rhs` with both sides sorted multisets of variable indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Binomial {
    pub lhs: Vec<usize>,
    pub rhs: Vec<usize>,
}

/// Every binomial `X^a - X^b`, `a < b`, of total degree at most
/// `max_degree` with equal multidegree and equal image.
pub fn toric_kernel_binomials(map: &MonomialMap, max_degree: usize) -> Vec<Binomial> {
    let mut out = Vec::new();
    for d in 1..=max_degree {
        let mut fibres: BTreeMap<(Vec<usize>, ExponentVector), Vec<Vec<usize>>> = BTreeMap::new();
        for mono in (0..map.len()).combinations_with_replacement(d) {
            let width = map.degrees.iter().copied().max().unwrap_or(0) + 1;
            let mut grad = vec![0; width];
            let dim = map.images.first().map_or(0, ExponentVector::len);
            let mut image = ExponentVector::zeros(dim);
            for &v in &mono {
                grad[map.degrees[v]] += 1;
                image = image.add(&map.images[v]);
            }
            fibres.entry((grad, image)).or_default().push(mono);
        }
        for monos in fibres.into_values() {
            for (a, b) in monos.iter().tuple_combinations() {
                out.push(Binomial { lhs: a.clone(), rhs: b.clone() });
            }
        }
    }
    out.sort();
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct KernelReport {
    pub columns: usize,
    pub rank_a: usize,
    pub rank_b: usize,
    pub kernel_rank: usize,
    pub kernels_equal: bool,
    pub xi: Option<Vec<Vec<Int>>>,
    pub max_degree: usize,
    pub binomials: usize,
    pub binomials_agree: bool,
    pub passed: bool,
}

/// Compares the kernel of `A` (columns `x_O(J)`) with the kernel of `B`
/// (columns the tuple indicators) as lattices, searches for a unimodular `ξ`
/// with `ξ A = B`, and compares the degree-truncated toric relations of the
/// two monomial maps.
pub fn kernel_equality_check(poset: &Poset, o: &MarkingSet, max_degree: usize) -> Result<KernelReport> {
    let ideals = ideal_map(poset, o)?;
    let tuples = tuple_map(poset, o)?;
    let cols = |m: &MonomialMap| -> Result<ExactMatrix> {
        let columns: Vec<Vec<i64>> = m.images().iter().map(|e| e.entries().to_vec()).collect();
        ExactMatrix::from_columns(poset.len(), &columns)
    };
    let a = cols(&ideals)?;
    let b = cols(&tuples)?;
    let ka = integer_kernel(&a);
    let kb = integer_kernel(&b);
    let kernels_equal = same_lattice(&ka, &kb)?;
    let xi = find_unimodular_map(&a, &b)?;
    let bin_a = toric_kernel_binomials(&ideals, max_degree);
    let bin_b = toric_kernel_binomials(&tuples, max_degree);
    let binomials_agree = bin_a == bin_b;
    let passed = kernels_equal && xi.is_some() && binomials_agree;
    Ok(KernelReport {
        columns: a.cols(),
        rank_a: a.rank(),
        rank_b: b.rank(),
        kernel_rank: ka.len(),
        kernels_equal,
        xi: xi.map(|x| x.to_rows().iter().map(|r| ints(r)).collect()),
        max_degree,
        binomials: bin_a.len(),
        binomials_agree,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{ElementSet, Kind};

    #[test]
    fn degree_one_has_no_relations() {
        let p = Poset::new(Kind::A, 3).unwrap();
        let m = ideal_map(&p, &MarkingSet::full(&p)).unwrap();
        assert!(toric_kernel_binomials(&m, 1).is_empty());
    }

    #[test]
    fn distinct_sums_give_nothing() {
        let m = MonomialMap::new(
            vec![ExponentVector::new(vec![1, 0]), ExponentVector::new(vec![0, 3])],
            vec![1, 1],
        )
        .unwrap();
        assert!(toric_kernel_binomials(&m, 2).is_empty());
    }

    #[test]
    fn hibi_relation_in_a3() {
        let p = Poset::new(Kind::A, 3).unwrap();
        let full = MarkingSet::full(&p);
        let ideals = fundamental_ideals(&p);
        let m = ideal_map(&p, &full).unwrap();
        let rels = toric_kernel_binomials(&m, 2);
        // an incomparable pair J, J' and its meet and join
        let find = |set: ElementSet| ideals.iter().position(|j| j.members() == set).unwrap();
        let j1 = find(p.set_from_elements([(1, 1), (1, 2), (1, 3)]).unwrap());
        let j2 = find(p.set_from_elements([(1, 1), (1, 2), (2, 2)]).unwrap());
        let meet = find(p.set_from_elements([(1, 1), (1, 2)]).unwrap());
        let join = find(p.set_from_elements([(1, 1), (1, 2), (1, 3), (2, 2)]).unwrap());
        let mut lhs = vec![j1, j2];
        lhs.sort();
        let mut rhs = vec![meet, join];
        rhs.sort();
        let (a, b) = if lhs < rhs { (lhs, rhs) } else { (rhs, lhs) };
        assert!(rels.contains(&Binomial { lhs: a, rhs: b }));
    }

    #[test]
    fn kernels_small() {
        for (kind, n) in [(Kind::A, 2), (Kind::A, 3), (Kind::C, 2)] {
            let p = Poset::new(kind, n).unwrap();
            for o in [MarkingSet::full(&p), MarkingSet::diagonal(&p)] {
                let r = kernel_equality_check(&p, &o, 2).unwrap();
                assert!(r.passed, "{kind}{n}: {r:?}");
            }
        }
    }
}
