use num_integer::Integer;
use num_traits::{One, Zero};

use super::matrix::ExactMatrix;
use super::snf::smith_normal_form;
use crate::error::{Error, Result};

/// Finds a unimodular `ξ` with `ξ · A = B`, or `None` if there is none.
///
/// Writing `U A V = D`, the condition becomes `Y D = B V` with `Y = ξ U⁻¹`.
/// The first `rank` columns of `Y` are forced; a unimodular completion exists
/// exactly when those columns have all invariant factors equal to one.
pub fn find_unimodular_map(a: &ExactMatrix, b: &ExactMatrix) -> Result<Option<ExactMatrix>> {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} versus {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let r = a.rows();
    let s = smith_normal_form(a);
    let c = b.mul(&s.v)?;
    for col in s.rank..c.cols() {
        if (0..r).any(|row| !c[(row, col)].is_zero()) {
            return Ok(None);
        }
    }
    let mut y1 = ExactMatrix::zeros(r, s.rank);
    for col in 0..s.rank {
        let d = &s.d[(col, col)];
        for row in 0..r {
            let (q, rem) = c[(row, col)].div_rem(d);
            if !rem.is_zero() {
                return Ok(None);
            }
            y1[(row, col)] = q;
        }
    }
    let y = if s.rank == 0 {
        ExactMatrix::identity(r)
    } else {
        let t = smith_normal_form(&y1);
        if t.rank != s.rank || t.invariant_factors().iter().any(|f| !f.is_one()) {
            return Ok(None);
        }
        let mut block = ExactMatrix::identity(r);
        for i in 0..s.rank {
            for j in 0..s.rank {
                block[(i, j)] = t.v_inv[(i, j)].clone();
            }
        }
        t.u_inv.mul(&block)?
    };
    let xi = y.mul(&s.u)?;
    if xi.mul(a)? != *b || !xi.is_unimodular() {
        return Err(Error::InvariantViolation("unimodular map fails re-verification".into()));
    }
    Ok(Some(xi))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> ExactMatrix {
        ExactMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn identity_when_equal() {
        let a = m(&[vec![1, 0, 1], vec![0, 1, 1]]);
        let xi = find_unimodular_map(&a, &a).unwrap().unwrap();
        assert_eq!(xi.mul(&a).unwrap(), a);
    }

    #[test]
    fn scaling_is_not_unimodular() {
        assert!(find_unimodular_map(&m(&[vec![2]]), &m(&[vec![1]])).unwrap().is_none());
        assert!(find_unimodular_map(&m(&[vec![1]]), &m(&[vec![2]])).unwrap().is_none());
    }

    #[test]
    fn recovers_a_known_transform() {
        let a = m(&[vec![1, 0, 1, 2], vec![0, 1, 1, 0], vec![0, 0, 0, 1]]);
        let g = m(&[vec![1, 2, 0], vec![0, 1, 0], vec![3, 7, 1]]);
        let b = g.mul(&a).unwrap();
        let xi = find_unimodular_map(&a, &b).unwrap().unwrap();
        assert_eq!(xi.mul(&a).unwrap(), b);
    }

    #[test]
    fn rank_deficient_inputs() {
        // rows of A are dependent; ξ may act freely on the complement
        let a = m(&[vec![1, 1], vec![2, 2]]);
        let b = m(&[vec![0, 0], vec![1, 1]]);
        let xi = find_unimodular_map(&a, &b).unwrap().unwrap();
        assert_eq!(xi.mul(&a).unwrap(), b);
        assert!(find_unimodular_map(&ExactMatrix::zeros(2, 2), &m(&[vec![0, 1], vec![0, 0]])).unwrap().is_none());
    }

    #[test]
    fn different_row_spaces() {
        let a = m(&[vec![1, 0], vec![0, 0]]);
        let b = m(&[vec![0, 1], vec![0, 0]]);
        assert!(find_unimodular_map(&a, &b).unwrap().is_none());
    }
}
