use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::json::{ints, Int};
use crate::linalg::{strict_lp_feasible, StrictInequalitySystem, StrictOutcome};
use crate::pipedream::ideal_tuple;
use crate::polytope::ExponentVector;
use crate::poset::{Kind, MarkingSet, Poset};

use super::polynomial::{monomial_name, Polynomial};

/// The matrix `Z` with `Z_{i,j} = z_{i,j}` for `(i,j) ∈ P` and zero
/// elsewhere: `n × n` in type A, `n × 2n` (columns `1..n, -n..-1`) in type C.
#[derive(Debug, Clone, Copy)]
pub struct MatrixZ<'a> {
    poset: &'a Poset,
}

impl<'a> MatrixZ<'a> {
    pub fn new(poset: &'a Poset) -> Self {
        MatrixZ { poset }
    }

    pub fn rows(&self) -> usize {
        self.poset.n()
    }

    pub fn columns(&self) -> Vec<i32> {
        crate::poset::column_values(self.poset.kind(), self.poset.n())
    }

    /// Index of the variable at `(i, j)`, or `None` for a structural zero.
    pub fn entry(&self, i: usize, j: i32) -> Result<Option<usize>> {
        if i == 0 || i > self.rows() || self.poset.column_key(j).is_none() {
            return Err(Error::Domain(format!("({i},{j}) is outside Z")));
        }
        Ok(self.poset.try_index((i as i32, j).into()))
    }

    /// `D_{i_1..i_k}`: the minor on rows `1..k` and the given columns, in the
    /// given order. Repeated columns give zero.
    pub fn minor(&self, columns: &[i32]) -> Result<Polynomial> {
        let k = columns.len();
        if k > self.rows() {
            return Err(Error::Domain(format!("{k} columns but only {} rows", self.rows())));
        }
        let nvars = self.poset.len();
        let entries: Vec<Vec<Option<usize>>> = (1..=k)
            .map(|r| columns.iter().map(|&c| self.entry(r, c)).collect::<Result<_>>())
            .collect::<Result<_>>()?;
        if columns.iter().duplicates().next().is_some() {
            return Ok(Polynomial::zero(nvars));
        }
        let mut out = Polynomial::zero(nvars);
        for perm in (0..k).permutations(k) {
            let mut e = vec![0i64; nvars];
            let mut live = true;
            for (r, &c) in perm.iter().enumerate() {
                match entries[r][c] {
                    Some(idx) => e[idx] += 1,
                    None => {
                        live = false;
                        break;
                    }
                }
            }
            if live {
                let sign = if permutation_parity(&perm) { -BigInt::one() } else { BigInt::one() };
                out = out.add(&Polynomial::monomial(ExponentVector::new(e), sign));
            }
        }
        Ok(out)
    }
}

/// True for odd permutations.
fn permutation_parity(perm: &[usize]) -> bool {
    let mut inversions = 0;
    for a in 0..perm.len() {
        for b in a + 1..perm.len() {
            if perm[a] > perm[b] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 1
}

/// The unique monomial of `p` maximizing `w · e`, with its coefficient.
pub fn initial_term(p: &Polynomial, w: &[BigInt]) -> Result<(ExponentVector, BigInt)> {
    if p.is_zero() {
        return Err(Error::Domain("initial term of the zero polynomial".into()));
    }
    if w.len() != p.nvars() {
        return Err(Error::WeightLength { got: w.len(), expected: p.nvars() });
    }
    let value = |e: &ExponentVector| -> BigInt { e.entries().iter().zip(w).map(|(&x, y)| y * x).sum() };
    let best = p.terms().map(|(e, _)| value(e)).max().expect("nonzero");
    let top: Vec<_> = p.terms().filter(|(e, _)| value(e) == best).collect();
    if top.len() > 1 {
        return Err(Error::AmbiguousInitialTerm(format!("{} monomials share the top weight {best}", top.len())));
    }
    let (e, c) = top[0];
    Ok((e.clone(), c.clone()))
}

#[derive(Debug, Clone, Serialize)]
pub struct WeightOrderReport {
    pub minors: usize,
    pub inequalities: usize,
    pub witness: Option<Vec<Int>>,
    /// Minors whose initial term under the witness is not the expected one.
    pub failures: Vec<String>,
    pub passed: bool,
    #[serde(skip)]
    pub witness_values: Option<Vec<BigInt>>,
}

/// `z_{1,w^J(1)} ⋯ z_{k,w^J(k)}` and `D_{w^J(1),…,w^J(k)}` for every ideal in
/// the fundamental strata.
pub fn target_minors(poset: &Poset, o: &MarkingSet) -> Result<Vec<(ExponentVector, Polynomial)>> {
    let z = MatrixZ::new(poset);
    let strata = poset.enumerate_ideals();
    let mut out = Vec::new();
    for k in poset.fundamental_range() {
        for j in &strata[k] {
            let tuple = ideal_tuple(poset, o, j)?;
            let mut e = vec![0i64; poset.len()];
            for (i, &col) in (1..).zip(&tuple.raw.entries) {
                let idx = z.entry(i, col)?.ok_or_else(|| {
                    Error::InvariantViolation(format!("({i},{col}) is a structural zero of Z"))
                })?;
                e[idx] += 1;
            }
            out.push((ExponentVector::new(e), z.minor(&tuple.raw.entries)?));
        }
    }
    Ok(out)
}

/// Searches for a weight `w` under which every `D_{w^J(1..k)}` has initial
/// term `∏ z_{i,w^J(i)}`, and re-verifies the witness on every minor.
pub fn find_weight_order(poset: &Poset, o: &MarkingSet) -> Result<WeightOrderReport> {
    let targets = target_minors(poset, o)?;
    let mut system = StrictInequalitySystem::new(poset.len());
    let mut failures = Vec::new();
    for (target, minor) in &targets {
        if minor.coefficient(target).is_zero() {
            failures.push(format!("{} does not occur in its minor", monomial_name(poset, target)));
            continue;
        }
        for (e, _) in minor.terms() {
            if e != target {
                system.push(target.sub(e).to_bigint())?;
            }
        }
    }
    let inequalities = system.rows().len();
    if !failures.is_empty() {
        return Ok(WeightOrderReport {
            minors: targets.len(),
            inequalities,
            witness: None,
            failures,
            passed: false,
            witness_values: None,
        });
    }
    let StrictOutcome::Feasible(w) = strict_lp_feasible(&system)? else {
        return Ok(WeightOrderReport {
            minors: targets.len(),
            inequalities,
            witness: None,
            failures: vec!["no weight satisfies the system".into()],
            passed: false,
            witness_values: None,
        });
    };
    for (target, minor) in &targets {
        match initial_term(minor, &w) {
            Ok((e, c)) if &e == target && c.abs().is_one() => {}
            Ok((e, _)) => failures.push(format!(
                "initial term {} instead of {}",
                monomial_name(poset, &e),
                monomial_name(poset, target)
            )),
            Err(err) => failures.push(err.to_string()),
        }
    }
    Ok(WeightOrderReport {
        minors: targets.len(),
        inequalities,
        witness: Some(ints(&w)),
        passed: failures.is_empty(),
        failures,
        witness_values: Some(w),
    })
}

/// All `D_t` for `t` a `k`-subset of `[1, n]` (type A) or `t ∈ Θ_k` (type C).
pub fn plucker_minors(poset: &Poset, k: usize) -> Result<Vec<(Vec<i32>, Polynomial)>> {
    let z = MatrixZ::new(poset);
    crate::pipedream::target_tuples(poset.kind(), poset.n(), k)
        .into_iter()
        .map(|t| Ok((t.entries.clone(), z.minor(&t.entries)?)))
        .collect()
}

pub(crate) fn require_kind(poset: &Poset, kind: Kind, what: &str) -> Result<()> {
    if poset.kind() == kind {
        Ok(())
    } else {
        Err(Error::Unsupported(format!("{what} is implemented for type {kind}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly_of(p: &Poset, monomials: &[(&[(i32, i32)], i64)]) -> Polynomial {
        let mut out = Polynomial::zero(p.len());
        for (vars, c) in monomials {
            let mut e = vec![0; p.len()];
            for &v in *vars {
                e[p.try_index(v.into()).unwrap()] += 1;
            }
            out = out.add(&Polynomial::monomial(ExponentVector::new(e), BigInt::from(*c)));
        }
        out
    }

    #[test]
    fn small_minors() {
        let p = Poset::new(Kind::A, 2).unwrap();
        let z = MatrixZ::new(&p);
        assert_eq!(z.minor(&[1, 2]).unwrap(), poly_of(&p, &[(&[(1, 1), (2, 2)], 1)]));
        assert_eq!(z.minor(&[2, 1]).unwrap(), poly_of(&p, &[(&[(1, 1), (2, 2)], -1)]));
        assert!(z.minor(&[1, 1]).unwrap().is_zero());
        assert!(z.minor(&[1, 2, 2]).is_err());
        let c = Poset::new(Kind::C, 2).unwrap();
        let zc = MatrixZ::new(&c);
        assert_eq!(zc.minor(&[-2]).unwrap(), poly_of(&c, &[(&[(1, -2)], 1)]));
        assert!(zc.minor(&[3]).is_err());
    }

    #[test]
    fn leading_principal_minors() {
        for n in 2..=4 {
            let p = Poset::new(Kind::A, n).unwrap();
            let z = MatrixZ::new(&p);
            for k in 1..=n {
                let cols: Vec<i32> = (1..=k as i32).collect();
                let diag: Vec<(i32, i32)> = (1..=k as i32).map(|i| (i, i)).collect();
                assert_eq!(z.minor(&cols).unwrap(), poly_of(&p, &[(&diag, 1)]));
            }
        }
    }

    #[test]
    fn antisymmetry() {
        for (kind, n) in [(Kind::A, 4), (Kind::C, 2), (Kind::C, 3)] {
            let p = Poset::new(kind, n).unwrap();
            let z = MatrixZ::new(&p);
            let cols = crate::poset::column_values(kind, n);
            for k in 1..=n.min(3) {
                for t in cols.iter().copied().permutations(k) {
                    let base = z.minor(&t).unwrap();
                    let mut sorted = t.clone();
                    sorted.sort_by_key(|&c| p.column_key(c));
                    let sign = if permutation_parity(
                        &t.iter().map(|c| sorted.iter().position(|s| s == c).unwrap()).collect::<Vec<_>>(),
                    ) {
                        -BigInt::one()
                    } else {
                        BigInt::one()
                    };
                    assert_eq!(base, z.minor(&sorted).unwrap().scale(&sign));
                }
            }
        }
    }

    #[test]
    fn initial_terms() {
        let p = Poset::new(Kind::A, 2).unwrap();
        let m = poly_of(&p, &[(&[(1, 1), (2, 2)], 1), (&[(1, 2), (1, 2)], -1)]);
        let w: Vec<BigInt> = [2, 0, 1].iter().map(|&x| BigInt::from(x)).collect();
        let (e, c) = initial_term(&m, &w).unwrap();
        assert_eq!(e, ExponentVector::new(vec![1, 0, 1]));
        assert_eq!(c, BigInt::one());
        let tie: Vec<BigInt> = [1, 1, 1].iter().map(|&x| BigInt::from(x)).collect();
        assert!(matches!(initial_term(&m, &tie), Err(Error::AmbiguousInitialTerm(_))));
        assert!(initial_term(&Polynomial::zero(3), &w).is_err());
        let single = poly_of(&p, &[(&[(1, 2)], 5)]);
        assert_eq!(initial_term(&single, &tie).unwrap().1, BigInt::from(5));
    }

    #[test]
    fn weight_orders_small() {
        for (kind, n) in [(Kind::A, 2), (Kind::A, 3), (Kind::C, 2)] {
            let p = Poset::new(kind, n).unwrap();
            for o in [MarkingSet::full(&p), MarkingSet::diagonal(&p)] {
                let r = find_weight_order(&p, &o).unwrap();
                assert!(r.passed, "{kind}{n}: {r:?}");
            }
        }
    }

    #[test]
    fn weight_order_a4_covers_fourteen_minors() {
        let p = Poset::new(Kind::A, 4).unwrap();
        let r = find_weight_order(&p, &MarkingSet::full(&p)).unwrap();
        assert_eq!(r.minors, 14);
        assert!(r.passed);
    }
}
