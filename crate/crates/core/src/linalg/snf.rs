//! Smith normal form over the integers, with transforms and their inverses.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::ExactMatrix;
use crate::error::Result;

/// `U · M · V = D`, `D` diagonal with `d_1 | d_2 | ... | d_r`, `d_i > 0`.
#[derive(Debug, Clone)]
pub struct Smith {
    pub u: ExactMatrix,
    pub d: ExactMatrix,
    pub v: ExactMatrix,
    pub u_inv: ExactMatrix,
    pub v_inv: ExactMatrix,
    pub rank: usize,
}

impl Smith {
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d[(i, i)].clone()).collect()
    }
}

struct Work {
    a: ExactMatrix,
    u: ExactMatrix,
    u_inv: ExactMatrix,
    v: ExactMatrix,
    v_inv: ExactMatrix,
}

impl Work {
    // a ← E a with E adding factor·row(source) to row(target)
    fn row_add(&mut self, target: usize, source: usize, factor: &BigInt) {
        self.a.add_row_multiple(target, source, factor);
        self.u.add_row_multiple(target, source, factor);
        self.u_inv.add_col_multiple(source, target, &-factor);
    }

    fn col_add(&mut self, target: usize, source: usize, factor: &BigInt) {
        self.a.add_col_multiple(target, source, factor);
        self.v.add_col_multiple(target, source, factor);
        self.v_inv.add_row_multiple(source, target, &-factor);
    }

    fn row_swap(&mut self, x: usize, y: usize) {
        self.a.swap_rows(x, y);
        self.u.swap_rows(x, y);
        self.u_inv.swap_cols(x, y);
    }

    fn col_swap(&mut self, x: usize, y: usize) {
        self.a.swap_cols(x, y);
        self.v.swap_cols(x, y);
        self.v_inv.swap_rows(x, y);
    }

    fn row_negate(&mut self, r: usize) {
        self.a.negate_row(r);
        self.u.negate_row(r);
        self.u_inv.negate_col(r);
    }

    /// Smallest nonzero |entry| in the trailing block starting at (t, t).
    fn smallest(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<((usize, usize), BigInt)> = None;
        for r in t..self.a.rows() {
            for c in t..self.a.cols() {
                let v = self.a[(r, c)].abs();
                if v.is_zero() {
                    continue;
                }
                if best.as_ref().is_none_or(|(_, b)| v < *b) {
                    best = Some(((r, c), v));
                }
            }
        }
        best.map(|(pos, _)| pos)
    }
}

/// Computes the Smith normal form by elimination with smallest-pivot
/// selection.
pub fn smith_normal_form(m: &ExactMatrix) -> Smith {
    let (rows, cols) = (m.rows(), m.cols());
    let mut w = Work {
        a: m.clone(),
        u: ExactMatrix::identity(rows),
        u_inv: ExactMatrix::identity(rows),
        v: ExactMatrix::identity(cols),
        v_inv: ExactMatrix::identity(cols),
    };
    let mut rank = 0;
    for t in 0..rows.min(cols) {
        let Some((pr, pc)) = w.smallest(t) else { break };
        w.row_swap(t, pr);
        w.col_swap(t, pc);
        loop {
            let mut dirty = false;
            for r in t + 1..rows {
                if w.a[(r, t)].is_zero() {
                    continue;
                }
                let q = w.a[(r, t)].div_floor(&w.a[(t, t)]);
                w.row_add(r, t, &-q);
                if !w.a[(r, t)].is_zero() {
                    dirty = true;
                }
            }
            for c in t + 1..cols {
                if w.a[(t, c)].is_zero() {
                    continue;
                }
                let q = w.a[(t, c)].div_floor(&w.a[(t, t)]);
                w.col_add(c, t, &-q);
                if !w.a[(t, c)].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // a remainder is now smaller than the pivot; move it in and repeat
                let mut best = (t, t);
                let mut best_val = w.a[(t, t)].abs();
                for r in t + 1..rows {
                    let v = w.a[(r, t)].abs();
                    if !v.is_zero() && v < best_val {
                        best = (r, t);
                        best_val = v;
                    }
                }
                for c in t + 1..cols {
                    let v = w.a[(t, c)].abs();
                    if !v.is_zero() && v < best_val {
                        best = (t, c);
                        best_val = v;
                    }
                }
                w.row_swap(t, best.0);
                w.col_swap(t, best.1);
                continue;
            }
            // row and column clear; enforce divisibility of the trailing block
            let pivot = w.a[(t, t)].clone();
            let offender = (t + 1..rows)
                .flat_map(|r| (t + 1..cols).map(move |c| (r, c)))
                .find(|&(r, c)| !w.a[(r, c)].is_multiple_of(&pivot));
            match offender {
                Some((r, _)) => w.row_add(t, r, &BigInt::one()),
                None => break,
            }
        }
        if w.a[(t, t)].is_negative() {
            w.row_negate(t);
        }
        rank += 1;
    }
    Smith { u: w.u, d: w.a, v: w.v, u_inv: w.u_inv, v_inv: w.v_inv, rank }
}

/// Basis of the integer kernel `{x ∈ ℤ^cols : M x = 0}`.
///
/// The basis is saturated: it spans the full kernel lattice. Each vector is
/// sign-normalized so its first nonzero entry is positive.
pub fn integer_kernel(m: &ExactMatrix) -> Vec<Vec<BigInt>> {
    let s = smith_normal_form(m);
    (s.rank..m.cols())
        .map(|c| {
            let mut v = s.v.column(c);
            if v.iter().find(|x| !x.is_zero()).is_some_and(Signed::is_negative) {
                v.iter_mut().for_each(|x| *x = -std::mem::take(x));
            }
            v
        })
        .collect()
}

/// Whether `v` lies in the ℤ-span of `basis` (vectors of equal length).
pub fn lattice_contains(basis: &[Vec<BigInt>], v: &[BigInt]) -> Result<bool> {
    if basis.is_empty() {
        return Ok(v.iter().all(Zero::is_zero));
    }
    let k = ExactMatrix::from_columns(v.len(), basis)?;
    let s = smith_normal_form(&k);
    // K y = v  ⟺  D (V^{-1} y) = U v
    let uv = s.u.mul_vec(v)?;
    for (i, x) in uv.iter().enumerate() {
        if i < s.rank {
            if !x.is_multiple_of(&s.d[(i, i)]) {
                return Ok(false);
            }
        } else if !x.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether two bases span the same lattice.
pub fn same_lattice(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Result<bool> {
    for v in a {
        if !lattice_contains(b, v)? {
            return Ok(false);
        }
    }
    for v in b {
        if !lattice_contains(a, v)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> ExactMatrix {
        ExactMatrix::from_rows(rows).unwrap()
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn check(mat: &ExactMatrix) -> Smith {
        let s = smith_normal_form(mat);
        assert_eq!(s.u.mul(mat).unwrap().mul(&s.v).unwrap(), s.d);
        assert!(s.u.is_unimodular());
        assert!(s.v.is_unimodular());
        assert_eq!(s.u.mul(&s.u_inv).unwrap(), ExactMatrix::identity(mat.rows()));
        assert_eq!(s.v.mul(&s.v_inv).unwrap(), ExactMatrix::identity(mat.cols()));
        for r in 0..s.d.rows() {
            for c in 0..s.d.cols() {
                if r != c {
                    assert!(s.d[(r, c)].is_zero());
                }
            }
        }
        let f = s.invariant_factors();
        for w in f.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        assert!(f.iter().all(|x| x.is_positive()));
        assert_eq!(s.rank, mat.rank());
        s
    }

    #[test]
    fn identity() {
        let s = check(&ExactMatrix::identity(3));
        assert_eq!(s.d, ExactMatrix::identity(3));
        assert_eq!(s.u, ExactMatrix::identity(3));
        assert_eq!(s.v, ExactMatrix::identity(3));
    }

    #[test]
    fn diag_two_three() {
        let s = check(&m(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(s.invariant_factors(), big(&[1, 6]));
    }

    #[test]
    fn zero_matrix() {
        let s = check(&ExactMatrix::zeros(2, 3));
        assert!(s.d.is_zero());
        assert_eq!(s.rank, 0);
    }

    #[test]
    fn assorted() {
        check(&m(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]));
        check(&m(&[vec![6, 4, 0], vec![4, 0, 8], vec![0, 8, 6], vec![1, 1, 1]]));
        let s = check(&m(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]]));
        assert_eq!(s.invariant_factors(), big(&[2, 2, 156]));
    }

    #[test]
    fn kernels() {
        assert!(integer_kernel(&ExactMatrix::identity(3)).is_empty());
        assert_eq!(integer_kernel(&m(&[vec![1, 1]])), vec![big(&[1, -1])]);
        assert_eq!(integer_kernel(&m(&[vec![2, 4], vec![1, 2]])), vec![big(&[2, -1])]);
    }

    #[test]
    fn kernel_is_saturated() {
        // rational kernel spanned by (1, 1, 1); 2·(1,1,1) would be a finite-index sublattice
        let a = m(&[vec![2, -2, 0], vec![0, 3, -3]]);
        let k = integer_kernel(&a);
        assert_eq!(k, vec![big(&[1, 1, 1])]);
        assert!(same_lattice(&k, &[big(&[-1, -1, -1])]).unwrap());
        assert!(!same_lattice(&k, &[big(&[2, 2, 2])]).unwrap());
    }

    #[test]
    fn lattice_membership() {
        let basis = vec![big(&[2, 0]), big(&[1, 3])];
        assert!(lattice_contains(&basis, &big(&[3, 3])).unwrap());
        assert!(!lattice_contains(&basis, &big(&[1, 0])).unwrap());
        assert!(lattice_contains(&[], &big(&[0, 0])).unwrap());
        assert!(!lattice_contains(&[], &big(&[0, 1])).unwrap());
    }
}
