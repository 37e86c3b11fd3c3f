//! Weyl dimensions for `sl_n` and `sp_2n`, the fundamental `sl_n` modules,
//! and PBW-monomial bases.

mod module;

pub use module::{
    ambient_dimension, basis_check, highest_weight_vector, negative_root_action, pbw_apply, BasisReport,
    RepVector, AMBIENT_GUARD,
};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::polytope::Weight;
use crate::poset::Kind;

/// Root data in `ε`-coordinates: `A_{n-1}` on `ℤ^n`, `C_n` on `ℤ^n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeylData {
    pub kind: Kind,
    pub n: usize,
    pub positive_roots: Vec<Vec<i64>>,
    pub simple_roots: Vec<Vec<i64>>,
    pub rho: Vec<i64>,
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

fn combine(a: &[i64], ca: i64, b: &[i64], cb: i64) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| ca * x + cb * y).collect()
}

pub(crate) fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl WeylData {
    pub fn new(kind: Kind, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidRank(n));
        }
        let mut positive_roots = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                positive_roots.push(combine(&unit(n, i), 1, &unit(n, j), -1));
                if kind == Kind::C {
                    positive_roots.push(combine(&unit(n, i), 1, &unit(n, j), 1));
                }
            }
            if kind == Kind::C {
                positive_roots.push(unit(n, i).iter().map(|x| 2 * x).collect());
            }
        }
        let mut simple_roots: Vec<Vec<i64>> =
            (0..n - 1).map(|i| combine(&unit(n, i), 1, &unit(n, i + 1), -1)).collect();
        let rho: Vec<i64> = match kind {
            Kind::A => (0..n).map(|i| (n - 1 - i) as i64).collect(),
            Kind::C => {
                simple_roots.push(unit(n, n - 1).iter().map(|x| 2 * x).collect());
                (0..n).map(|i| (n - i) as i64).collect()
            }
        };
        Ok(WeylData { kind, n, positive_roots, simple_roots, rho })
    }

    pub fn rank(&self) -> usize {
        self.simple_roots.len()
    }

    /// `λ = Σ a_k ω_k` in `ε`-coordinates, `ω_k = ε_1 + ... + ε_k`.
    pub fn epsilon(&self, lambda: &Weight) -> Result<Vec<i64>> {
        if lambda.len() != self.rank() {
            return Err(Error::WeightLength { got: lambda.len(), expected: self.rank() });
        }
        Ok((1..=self.n).map(|i| if i <= lambda.len() { lambda.suffix_sum(i) as i64 } else { 0 }).collect())
    }
}

/// `∏_{α>0} ⟨λ+ρ, α∨⟩ / ⟨ρ, α∨⟩`, evaluated exactly.
pub fn weyl_dim(kind: Kind, n: usize, lambda: &Weight) -> Result<BigInt> {
    let data = WeylData::new(kind, n)?;
    let l = data.epsilon(lambda)?;
    let shifted: Vec<i64> = l.iter().zip(&data.rho).map(|(a, b)| a + b).collect();
    let mut acc = BigRational::one();
    for alpha in &data.positive_roots {
        // the coroot is a positive multiple of α, which cancels in the ratio
        acc *= BigRational::new(dot(&shifted, alpha).into(), dot(&data.rho, alpha).into());
    }
    if !acc.is_integer() {
        return Err(Error::InvariantViolation(format!("non-integral Weyl dimension {acc}")));
    }
    Ok(acc.to_integer())
}

#[cfg(test)]
mod tests {
    use std::collections::{BTreeMap, BTreeSet};

    use super::*;

    fn w(v: &[u32]) -> Weight {
        Weight::new(v.to_vec())
    }

    fn dim(kind: Kind, n: usize, v: &[u32]) -> i64 {
        weyl_dim(kind, n, &w(v)).unwrap().try_into().unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(dim(Kind::A, 2, &[1]), 2);
        assert_eq!(dim(Kind::A, 3, &[1, 1]), 8);
        assert_eq!(dim(Kind::A, 3, &[2, 1]), 15);
        assert_eq!(dim(Kind::C, 2, &[0, 1]), 5);
        assert_eq!(dim(Kind::C, 2, &[1, 0]), 4);
        assert_eq!(dim(Kind::C, 2, &[1, 1]), 16);
        assert_eq!(dim(Kind::C, 3, &[1, 0, 0]), 6);
        assert!(weyl_dim(Kind::A, 3, &w(&[1])).is_err());
    }

    #[test]
    fn fundamentals_are_binomials() {
        for n in 2..=7 {
            for k in 1..n {
                let lambda = Weight::fundamental(n - 1, k).unwrap();
                let binom = (0..k).fold(1i64, |acc, t| acc * (n - t) as i64 / (t + 1) as i64);
                assert_eq!(weyl_dim(Kind::A, n, &lambda).unwrap(), binom.into());
            }
        }
    }

    fn dominant(kind: Kind, mu: &[i64]) -> Vec<i64> {
        let mut v: Vec<i64> = match kind {
            Kind::A => mu.to_vec(),
            Kind::C => mu.iter().map(|x| x.abs()).collect(),
        };
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }

    // λ − μ⁺ a nonnegative integer combination of simple roots
    fn below(kind: Kind, lambda: &[i64], mu: &[i64]) -> bool {
        let d: Vec<i64> = lambda.iter().zip(dominant(kind, mu)).map(|(a, b)| a - b).collect();
        let n = d.len();
        let partial: Vec<i64> = d.iter().scan(0, |s, x| {
            *s += x;
            Some(*s)
        }).collect();
        match kind {
            Kind::A => partial[..n - 1].iter().all(|&c| c >= 0) && partial[n - 1] == 0,
            Kind::C => partial[..n - 1].iter().all(|&c| c >= 0) && partial[n - 1] >= 0 && partial[n - 1] % 2 == 0,
        }
    }

    /// Freudenthal's multiplicity recursion, summed over all weights.
    fn freudenthal_dim(kind: Kind, n: usize, lambda: &Weight) -> i64 {
        let data = WeylData::new(kind, n).unwrap();
        let top = data.epsilon(lambda).unwrap();
        let mut by_height: BTreeMap<usize, BTreeSet<Vec<i64>>> = BTreeMap::new();
        by_height.entry(0).or_default().insert(top.clone());
        let mut h = 0;
        while let Some(layer) = by_height.get(&h).cloned() {
            for mu in layer {
                for alpha in &data.simple_roots {
                    let next = combine(&mu, 1, alpha, -1);
                    if below(kind, &top, &next) {
                        by_height.entry(h + 1).or_default().insert(next);
                    }
                }
            }
            h += 1;
        }
        let norm = |v: &[i64]| dot(v, v);
        let plus_rho = |v: &[i64]| combine(v, 1, &data.rho, 1);
        let target = norm(&plus_rho(&top));
        let mut mult: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
        for (h, layer) in &by_height {
            for mu in layer {
                if *h == 0 {
                    mult.insert(mu.clone(), 1);
                    continue;
                }
                let mut num = 0;
                for alpha in &data.positive_roots {
                    let mut k = 1;
                    loop {
                        let up = combine(mu, 1, alpha, k);
                        if !below(kind, &top, &up) {
                            break;
                        }
                        num += mult.get(&up).copied().unwrap_or(0) * dot(&up, alpha);
                        k += 1;
                    }
                }
                let den = target - norm(&plus_rho(mu));
                assert!(den > 0);
                assert_eq!((2 * num) % den, 0);
                mult.insert(mu.clone(), 2 * num / den);
            }
        }
        mult.values().sum()
    }

    #[test]
    fn agrees_with_freudenthal() {
        let cases: [(Kind, usize); 4] = [(Kind::A, 2), (Kind::A, 3), (Kind::C, 2), (Kind::C, 3)];
        for (kind, n) in cases {
            let r = if kind == Kind::A { n - 1 } else { n };
            for entries in itertools::Itertools::multi_cartesian_product((0..r).map(|_| 0u32..=3)) {
                if entries.iter().sum::<u32>() > 3 {
                    continue;
                }
                let lambda = Weight::new(entries);
                let expected = freudenthal_dim(kind, n, &lambda);
                assert_eq!(weyl_dim(kind, n, &lambda).unwrap(), expected.into(), "{kind} {n} {lambda}");
            }
        }
    }
}
