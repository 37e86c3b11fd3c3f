//! Exact rational feasibility: nonnegative solutions of `A x = b` by a
//! phase-one simplex with Bland's rule, and homogeneous strict systems
//! `c · w > 0` both by that simplex and by Fourier–Motzkin elimination.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Finds `x >= 0` with `A x = b`, or `None` when no such `x` exists.
pub fn nonnegative_solution(a: &[Vec<BigRational>], b: &[BigRational]) -> Result<Option<Vec<BigRational>>> {
    let m = a.len();
    if b.len() != m {
        return Err(Error::DimensionMismatch(format!("{m} rows but {} right-hand sides", b.len())));
    }
    let n = a.first().map_or(0, Vec::len);
    if a.iter().any(|row| row.len() != n) {
        return Err(Error::DimensionMismatch("ragged constraint matrix".into()));
    }
    if m == 0 {
        return Ok(Some(vec![BigRational::zero(); n]));
    }
    // tableau columns: n structural, m artificial, 1 rhs; last row is the phase-one objective
    let width = n + m + 1;
    let mut t = vec![vec![BigRational::zero(); width]; m + 1];
    for i in 0..m {
        let flip = b[i].is_negative();
        for j in 0..n {
            t[i][j] = if flip { -a[i][j].clone() } else { a[i][j].clone() };
        }
        t[i][n + i] = BigRational::one();
        t[i][n + m] = if flip { -b[i].clone() } else { b[i].clone() };
    }
    for j in (0..n).chain(std::iter::once(n + m)) {
        let sum: BigRational = (0..m).map(|i| t[i][j].clone()).sum();
        t[m][j] = sum;
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    while let Some(enter) = (0..n + m).find(|&j| t[m][j].is_positive()) {
        let mut leave: Option<(usize, BigRational)> = None;
        for i in 0..m {
            if !t[i][enter].is_positive() {
                continue;
            }
            let ratio = &t[i][n + m] / &t[i][enter];
            let better = match &leave {
                None => true,
                Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        let Some((row, _)) = leave else {
            // phase-one objective is bounded below by zero
            return Err(Error::InvariantViolation("unbounded phase-one simplex".into()));
        };
        pivot(&mut t, row, enter);
        basis[row] = enter;
    }
    if t[m][n + m].is_positive() {
        return Ok(None);
    }
    let mut x = vec![BigRational::zero(); n];
    for (i, &var) in basis.iter().enumerate() {
        if var < n {
            x[var] = t[i][n + m].clone();
        }
    }
    Ok(Some(x))
}

fn pivot(t: &mut [Vec<BigRational>], row: usize, col: usize) {
    let inv = t[row][col].recip();
    for v in t[row].iter_mut() {
        if !v.is_zero() {
            *v *= &inv;
        }
    }
    let pivot_row = t[row].clone();
    let nonzero: Vec<usize> = (0..pivot_row.len()).filter(|&j| !pivot_row[j].is_zero()).collect();
    for (i, r) in t.iter_mut().enumerate() {
        if i == row || r[col].is_zero() {
            continue;
        }
        let factor = r[col].clone();
        for &j in &nonzero {
            let delta = &factor * &pivot_row[j];
            r[j] -= delta;
        }
    }
}

/// A homogeneous system `c · w > 0` over all rows `c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrictInequalitySystem {
    dim: usize,
    rows: Vec<Vec<BigInt>>,
}

impl StrictInequalitySystem {
    pub fn new(dim: usize) -> Self {
        StrictInequalitySystem { dim, rows: Vec::new() }
    }

    /// Adds `c · w > 0`. Rows are stored reduced by their content (gcd) and
    /// deduplicated.
    pub fn push(&mut self, row: Vec<BigInt>) -> Result<()> {
        if row.len() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "inequality of length {}, system dimension {}",
                row.len(),
                self.dim
            )));
        }
        if row.iter().all(Zero::is_zero) {
            return Err(Error::Domain("zero inequality vector".into()));
        }
        let row = primitive(row);
        if !self.rows.contains(&row) {
            self.rows.push(row);
        }
        Ok(())
    }

    pub fn push_i64(&mut self, row: &[i64]) -> Result<()> {
        self.push(row.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn is_satisfied_by(&self, w: &[BigInt]) -> bool {
        w.len() == self.dim && self.rows.iter().all(|c| dot(c, w).is_positive())
    }
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn primitive(mut row: Vec<BigInt>) -> Vec<BigInt> {
    let g = row.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        row.iter_mut().for_each(|x| *x /= &g);
    }
    row
}

/// Clears denominators of a positive-scalable rational vector, returning the
/// primitive integer vector on the same ray.
fn to_integer_ray(w: &[BigRational]) -> Vec<BigInt> {
    let lcm = w.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let ints = w.iter().map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    primitive(ints)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StrictOutcome {
    Feasible(Vec<BigInt>),
    Infeasible,
}

/// Solves a homogeneous strict system by scaling to `c · w >= 1` and running
/// the phase-one simplex with `w = w⁺ - w⁻`. A feasible answer carries a
/// primitive integer witness that has been re-checked against every row.
pub fn strict_lp_feasible(system: &StrictInequalitySystem) -> Result<StrictOutcome> {
    if system.rows.is_empty() {
        return Ok(StrictOutcome::Feasible(vec![BigInt::zero(); system.dim]));
    }
    let d = system.dim;
    let m = system.rows.len();
    let mut a = Vec::with_capacity(m);
    for (i, c) in system.rows.iter().enumerate() {
        let mut row = vec![BigRational::zero(); 2 * d + m];
        for (j, x) in c.iter().enumerate() {
            row[j] = BigRational::from_integer(x.clone());
            row[d + j] = BigRational::from_integer(-x.clone());
        }
        row[2 * d + i] = -BigRational::one();
        a.push(row);
    }
    let b = vec![BigRational::one(); m];
    let Some(x) = nonnegative_solution(&a, &b)? else {
        return Ok(StrictOutcome::Infeasible);
    };
    let w: Vec<BigRational> = (0..d).map(|j| &x[j] - &x[d + j]).collect();
    let witness = to_integer_ray(&w);
    if !system.is_satisfied_by(&witness) {
        return Err(Error::InvariantViolation("simplex witness fails re-verification".into()));
    }
    Ok(StrictOutcome::Feasible(witness))
}

/// Solves a homogeneous strict system by Fourier–Motzkin elimination with
/// content reduction and duplicate pruning. Exponential in the worst case;
/// intended for small systems.
pub fn fourier_motzkin_feasible(system: &StrictInequalitySystem) -> Result<StrictOutcome> {
    let d = system.dim;
    let mut stages: Vec<Vec<Vec<BigInt>>> = Vec::with_capacity(d);
    let mut current: BTreeSet<Vec<BigInt>> = system.rows.iter().cloned().collect();
    for var in (0..d).rev() {
        if current.iter().any(|r| r.iter().all(Zero::is_zero)) {
            return Ok(StrictOutcome::Infeasible);
        }
        stages.push(current.iter().cloned().collect());
        let (mut pos, mut neg, mut next) = (Vec::new(), Vec::new(), BTreeSet::new());
        for r in &current {
            match r[var].sign() {
                num_bigint::Sign::Plus => pos.push(r),
                num_bigint::Sign::Minus => neg.push(r),
                num_bigint::Sign::NoSign => {
                    next.insert(r.clone());
                }
            }
        }
        for p in &pos {
            for q in &neg {
                let (a, b) = (&p[var], -&q[var]);
                let combined: Vec<BigInt> = p.iter().zip(q.iter()).map(|(x, y)| &b * x + a * y).collect();
                next.insert(primitive(combined));
            }
        }
        current = next;
    }
    if !current.is_empty() {
        return Ok(StrictOutcome::Infeasible);
    }
    // back-substitute from the first eliminated stage outward
    let mut w = vec![BigRational::zero(); d];
    for (stage, var) in stages.iter().rev().zip(0..d) {
        let mut lower: Option<BigRational> = None;
        let mut upper: Option<BigRational> = None;
        for r in stage {
            if r[var].is_zero() {
                continue;
            }
            // r[var]·x + Σ_{j<var} r[j]·w[j] > 0
            let rest: BigRational = (0..var).map(|j| BigRational::from_integer(r[j].clone()) * &w[j]).sum();
            let bound = -rest / BigRational::from_integer(r[var].clone());
            if r[var].is_positive() {
                if lower.as_ref().is_none_or(|l| bound > *l) {
                    lower = Some(bound);
                }
            } else if upper.as_ref().is_none_or(|u| bound < *u) {
                upper = Some(bound);
            }
        }
        let two = BigRational::from_integer(BigInt::from(2));
        w[var] = match (lower, upper) {
            (Some(l), Some(u)) => (l + u) / two,
            (Some(l), None) => l + BigRational::one(),
            (None, Some(u)) => u - BigRational::one(),
            (None, None) => BigRational::zero(),
        };
    }
    let witness = to_integer_ray(&w);
    if !system.is_satisfied_by(&witness) {
        return Err(Error::InvariantViolation("Fourier–Motzkin witness fails re-verification".into()));
    }
    Ok(StrictOutcome::Feasible(witness))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(x: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(x))
    }

    fn system(dim: usize, rows: &[&[i64]]) -> StrictInequalitySystem {
        let mut s = StrictInequalitySystem::new(dim);
        for r in rows {
            s.push_i64(r).unwrap();
        }
        s
    }

    #[test]
    fn equality_feasibility() {
        // x + y = 1, x - y = 0 → (1/2, 1/2)
        let a = vec![vec![q(1), q(1)], vec![q(1), q(-1)]];
        let x = nonnegative_solution(&a, &[q(1), q(0)]).unwrap().unwrap();
        assert_eq!(x, vec![q(1) / q(2), q(1) / q(2)]);
        // x + y = -1 has no nonnegative solution
        assert!(nonnegative_solution(&[vec![q(1), q(1)]], &[q(-1)]).unwrap().is_none());
    }

    #[test]
    fn degenerate_rows() {
        // duplicated constraint and a zero row with zero rhs
        let a = vec![vec![q(1), q(2)], vec![q(1), q(2)], vec![q(0), q(0)]];
        let x = nonnegative_solution(&a, &[q(2), q(2), q(0)]).unwrap().unwrap();
        assert_eq!(&x[0] + q(2) * &x[1], q(2));
    }

    #[test]
    fn single_positive_variable() {
        let s = system(1, &[&[1]]);
        assert_eq!(strict_lp_feasible(&s).unwrap(), StrictOutcome::Feasible(vec![BigInt::one()]));
        assert_eq!(fourier_motzkin_feasible(&s).unwrap(), StrictOutcome::Feasible(vec![BigInt::one()]));
    }

    #[test]
    fn opposing_inequalities() {
        let s = system(2, &[&[1, -1], &[-1, 1]]);
        assert_eq!(strict_lp_feasible(&s).unwrap(), StrictOutcome::Infeasible);
        assert_eq!(fourier_motzkin_feasible(&s).unwrap(), StrictOutcome::Infeasible);
    }

    #[test]
    fn cone_interior() {
        let s = system(3, &[&[1, -1, 0], &[0, 1, -1], &[0, 0, 1], &[-1, 0, 3]]);
        for outcome in [strict_lp_feasible(&s).unwrap(), fourier_motzkin_feasible(&s).unwrap()] {
            match outcome {
                StrictOutcome::Feasible(w) => assert!(s.is_satisfied_by(&w)),
                StrictOutcome::Infeasible => panic!("expected feasible"),
            }
        }
    }

    #[test]
    fn rejects_zero_row() {
        let mut s = StrictInequalitySystem::new(2);
        assert!(s.push_i64(&[0, 0]).is_err());
        assert!(s.push_i64(&[1]).is_err());
    }

    #[test]
    fn rows_are_reduced_and_deduplicated() {
        let s = system(2, &[&[2, 4], &[1, 2], &[3, 0]]);
        assert_eq!(s.rows().len(), 2);
    }
}
