//! Marked chain-order polytopes, their pipe-dream transforms `Π_O(λ)`, and
//! Newton–Okounkov bodies.
//!
//! Polytopes are kept as Minkowski sums `a_1 Q_1 + ... + a_r Q_r` of 0/1
//! polytopes given by vertex lists, plus an optional integer shift. Lattice
//! points are sums of factor lattice points.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::nonnegative_solution;
use crate::pipedream::ideal_perm;
use crate::poset::{ElementSet, Kind, MarkingSet, OrderIdeal, Poset};

/// Dominant integral weight `(a_1, ..., a_r)` in fundamental-weight
/// coordinates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Weight(Vec<u32>);

impl Weight {
    pub fn new(entries: Vec<u32>) -> Self {
        Weight(entries)
    }

    pub fn zero(len: usize) -> Self {
        Weight(vec![0; len])
    }

    /// `ω_k` for `k` in `1..=len`.
    pub fn fundamental(len: usize, k: usize) -> Result<Self> {
        if k == 0 || k > len {
            return Err(Error::StratumOutOfRange { k, min: 1, max: len });
        }
        let mut w = vec![0; len];
        w[k - 1] = 1;
        Ok(Weight(w))
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `a_k`, 1-based.
    pub fn get(&self, k: usize) -> u32 {
        self.0[k - 1]
    }

    pub fn is_regular(&self) -> bool {
        self.0.iter().all(|&a| a > 0)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `a_i + ... + a_r`.
    pub fn suffix_sum(&self, i: usize) -> u32 {
        self.0.iter().skip(i.saturating_sub(1)).sum()
    }

    pub fn check(&self, poset: &Poset) -> Result<()> {
        if self.len() == poset.weight_len() {
            Ok(())
        } else {
            Err(Error::WeightLength { got: self.len(), expected: poset.weight_len() })
        }
    }
}

impl FromStr for Weight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("weight entry `{}` is not a nonnegative integer", t.trim())))
            })
            .collect::<Result<Vec<_>>>()
            .map(Weight)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Integer vector indexed by poset elements in canonical order. Used both as
/// a lattice point and as a monomial exponent.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct ExponentVector(Vec<i64>);

impl ExponentVector {
    pub fn new(entries: Vec<i64>) -> Self {
        ExponentVector(entries)
    }

    pub fn zeros(len: usize) -> Self {
        ExponentVector(vec![0; len])
    }

    pub fn indicator(len: usize, set: ElementSet) -> Self {
        let mut v = vec![0; len];
        for idx in set.iter() {
            v[idx] = 1;
        }
        ExponentVector(v)
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: i64) -> Self {
        ExponentVector(self.0.iter().map(|a| a * c).collect())
    }

    pub fn to_rational(&self) -> Vec<BigRational> {
        self.0.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect()
    }

    pub fn to_bigint(&self) -> Vec<BigInt> {
        self.0.iter().map(|&x| BigInt::from(x)).collect()
    }
}

impl std::ops::Index<usize> for ExponentVector {
    type Output = i64;

    fn index(&self, idx: usize) -> &i64 {
        &self.0[idx]
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A Minkowski sum of 0/1 polytopes with multiplicities, translated by
/// `shift`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePolytope {
    dim: usize,
    pieces: Vec<(Vec<ExponentVector>, u32)>,
    shift: ExponentVector,
}

impl LatticePolytope {
    pub fn from_pieces(dim: usize, pieces: Vec<(Vec<ExponentVector>, u32)>) -> Result<Self> {
        for (vs, _) in &pieces {
            if vs.is_empty() {
                return Err(Error::Domain("empty Minkowski factor".into()));
            }
            if vs.iter().any(|v| v.len() != dim) {
                return Err(Error::DimensionMismatch("factor vertex of wrong length".into()));
            }
        }
        Ok(LatticePolytope { dim, pieces, shift: ExponentVector::zeros(dim) })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn pieces(&self) -> &[(Vec<ExponentVector>, u32)] {
        &self.pieces
    }

    pub fn shift(&self) -> &ExponentVector {
        &self.shift
    }

    pub fn translated(&self, by: &ExponentVector) -> Self {
        LatticePolytope { dim: self.dim, pieces: self.pieces.clone(), shift: self.shift.add(by) }
    }

    fn minkowski<F>(&self, choose: F) -> BTreeSet<ExponentVector>
    where
        F: Fn(&[ExponentVector], u32) -> Vec<Vec<ExponentVector>>,
    {
        let mut acc: BTreeSet<ExponentVector> = BTreeSet::from([self.shift.clone()]);
        for (vs, a) in &self.pieces {
            for summands in choose(vs, *a) {
                acc = acc
                    .par_iter()
                    .flat_map_iter(|s| summands.iter().map(move |v| s.add(v)))
                    .collect();
            }
        }
        acc
    }

    /// All sums of factor lattice points.
    pub fn lattice_points(&self) -> BTreeSet<ExponentVector> {
        self.minkowski(|vs, a| vec![vs.to_vec(); a as usize])
    }

    /// `Σ a_k v_k` with one vertex per factor; a superset of the vertices.
    pub fn vertex_candidates(&self) -> BTreeSet<ExponentVector> {
        self.minkowski(|vs, a| {
            if a == 0 {
                Vec::new()
            } else {
                vec![vs.iter().map(|v| v.scale(a as i64)).collect()]
            }
        })
    }

    /// Vertices: the candidates that are not convex combinations of the
    /// others.
    ///
    /// The vertex tuples of `Σ a_k P_k` do not depend on the values of the
    /// positive `a_k`, so the search runs on `Σ P_k` and rescales. A vertex
    /// of a Minkowski sum decomposes uniquely into factor vertices, so sums
    /// reached by two tuples are dropped up front. Candidates that uniquely
    /// maximize one of a fixed family of integer functionals are vertices;
    /// the rest are settled by exact LP, first against the known vertices
    /// and then against all other candidates.
    pub fn vertices(&self) -> Result<Vec<ExponentVector>> {
        let factors: Vec<(Vec<ExponentVector>, u32)> = self
            .pieces
            .iter()
            .filter(|(_, a)| *a > 0)
            .map(|(vs, a)| (vs.iter().collect::<BTreeSet<_>>().into_iter().cloned().collect(), *a))
            .collect();
        // unit sum -> (number of tuples, scaled sum of the first tuple)
        let mut sums: BTreeMap<ExponentVector, (u64, ExponentVector)> =
            BTreeMap::from([(ExponentVector::zeros(self.dim), (1, self.shift.clone()))]);
        for (vs, a) in &factors {
            let mut next: BTreeMap<ExponentVector, (u64, ExponentVector)> = BTreeMap::new();
            for (s, (count, scaled)) in &sums {
                for v in vs {
                    let entry = next.entry(s.add(v)).or_insert_with(|| (0, scaled.add(&v.scale(*a as i64))));
                    entry.0 += count;
                }
            }
            sums = next;
        }
        let (candidates, scaled): (Vec<ExponentVector>, Vec<ExponentVector>) =
            sums.into_iter().filter(|(_, (count, _))| *count == 1).map(|(v, (_, x))| (v, x)).unzip();
        if candidates.len() <= 1 {
            return Ok(scaled);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let directions: Vec<Vec<i64>> = (0..64 * self.dim.max(1))
            .map(|_| (0..self.dim).map(|_| rng.gen_range(-1_000_000..=1_000_000)).collect())
            .collect();
        let mut known = vec![false; candidates.len()];
        for c in &directions {
            let values: Vec<i128> = candidates
                .iter()
                .map(|v| v.entries().iter().zip(c).map(|(&x, &y)| x as i128 * y as i128).sum())
                .collect();
            let best = *values.iter().max().expect("nonempty");
            let mut top = values.iter().enumerate().filter(|(_, &x)| x == best);
            if let (Some((i, _)), None) = (top.next(), top.next()) {
                known[i] = true;
            }
        }
        let found: Vec<ExponentVector> =
            candidates.iter().zip(&known).filter(|(_, k)| **k).map(|(v, _)| v.clone()).collect();
        let keep: Vec<bool> = candidates
            .par_iter()
            .enumerate()
            .map(|(i, c)| {
                if known[i] || hull_membership(&c.to_rational(), &found)? {
                    return Ok(known[i]);
                }
                let others: Vec<ExponentVector> =
                    candidates.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, v)| v.clone()).collect();
                hull_membership(&c.to_rational(), &others).map(|inside| !inside)
            })
            .collect::<Result<_>>()?;
        let mut out: Vec<ExponentVector> = scaled.into_iter().zip(keep).filter(|(_, k)| *k).map(|(v, _)| v).collect();
        out.sort();
        Ok(out)
    }

    /// Coordinatewise `[min, max]` over the polytope.
    pub fn bounding_box(&self) -> Vec<(i64, i64)> {
        let mut bounds: Vec<(i64, i64)> = self.shift.entries().iter().map(|&s| (s, s)).collect();
        for (vs, a) in &self.pieces {
            for (c, b) in bounds.iter_mut().enumerate() {
                let lo = vs.iter().map(|v| v[c]).min().expect("nonempty factor");
                let hi = vs.iter().map(|v| v[c]).max().expect("nonempty factor");
                b.0 += *a as i64 * lo;
                b.1 += *a as i64 * hi;
            }
        }
        bounds
    }

    /// Every integer point of the bounding box lying in the convex hull,
    /// decided by exact LP against the vertices.
    pub fn box_sweep(&self) -> Result<BTreeSet<ExponentVector>> {
        let candidates = self.vertices()?;
        let inside: Vec<Option<ExponentVector>> = box_points(&self.bounding_box())
            .par_bridge()
            .map(|p| hull_membership(&p.to_rational(), &candidates).map(|ok| ok.then_some(p)))
            .collect::<Result<_>>()?;
        Ok(inside.into_iter().flatten().collect())
    }

    pub fn contains(&self, point: &[BigRational]) -> Result<bool> {
        let candidates: Vec<ExponentVector> = self.vertex_candidates().into_iter().collect();
        hull_membership(point, &candidates)
    }
}

/// Integer points of a box, in lexicographic order.
pub fn box_points(bounds: &[(i64, i64)]) -> impl Iterator<Item = ExponentVector> + Send + '_ {
    let empty = bounds.iter().any(|(lo, hi)| lo > hi);
    let mut current: Option<Vec<i64>> = (!empty).then(|| bounds.iter().map(|b| b.0).collect());
    std::iter::from_fn(move || {
        let out = current.clone()?;
        let mut next = out.clone();
        let mut pos = bounds.len();
        loop {
            if pos == 0 {
                current = None;
                break;
            }
            pos -= 1;
            if next[pos] < bounds[pos].1 {
                next[pos] += 1;
                for (c, b) in next.iter_mut().zip(bounds).skip(pos + 1) {
                    *c = b.0;
                }
                current = Some(next);
                break;
            }
        }
        Some(ExponentVector(out))
    })
}

/// Whether `point` is a convex combination of `vertices`, by exact LP.
pub fn hull_membership(point: &[BigRational], vertices: &[ExponentVector]) -> Result<bool> {
    if vertices.is_empty() {
        return Ok(false);
    }
    if vertices.iter().any(|v| v.len() != point.len()) {
        return Err(Error::DimensionMismatch(format!(
            "point of length {} against vertices of another length",
            point.len()
        )));
    }
    // fast rejection outside the coordinate box
    for (c, x) in point.iter().enumerate() {
        let lo = vertices.iter().map(|v| v[c]).min().expect("nonempty");
        let hi = vertices.iter().map(|v| v[c]).max().expect("nonempty");
        if *x < BigRational::from_integer(lo.into()) || *x > BigRational::from_integer(hi.into()) {
            return Ok(false);
        }
    }
    let mut a: Vec<Vec<BigRational>> = (0..point.len())
        .map(|c| vertices.iter().map(|v| BigRational::from_integer(v[c].into())).collect())
        .collect();
    a.push(vec![BigRational::one(); vertices.len()]);
    let mut b = point.to_vec();
    b.push(BigRational::one());
    Ok(nonnegative_solution(&a, &b)?.is_some())
}

fn check_marking(poset: &Poset, o: &MarkingSet) -> Result<()> {
    poset.check_id(o.poset())
}

/// `x_O(J) = 1_{M_O(J)}`.
pub fn mcop_vertex(poset: &Poset, o: &MarkingSet, j: &OrderIdeal) -> Result<ExponentVector> {
    Ok(ExponentVector::indicator(poset.len(), poset.marked_set(o, j)?))
}

fn check_stratum(poset: &Poset, k: usize) -> Result<()> {
    let range = poset.fundamental_range();
    if range.contains(&k) {
        Ok(())
    } else {
        Err(Error::StratumOutOfRange { k, min: *range.start(), max: *range.end() })
    }
}

/// `𝒬_O(ω_k)`: the vertices `x_O(J)` for `J ∈ 𝒥_k`, in ideal order.
pub fn fundamental_vertices(poset: &Poset, o: &MarkingSet, k: usize) -> Result<Vec<ExponentVector>> {
    check_marking(poset, o)?;
    check_stratum(poset, k)?;
    let ideals = poset.enumerate_ideals().swap_remove(k);
    ideals.iter().map(|j| mcop_vertex(poset, o, j)).collect()
}

pub fn fundamental_polytope(poset: &Poset, o: &MarkingSet, k: usize) -> Result<LatticePolytope> {
    LatticePolytope::from_pieces(poset.len(), vec![(fundamental_vertices(poset, o, k)?, 1)])
}

/// `𝒬_O(λ) = a_1 𝒬_O(ω_1) + ... + a_r 𝒬_O(ω_r)`.
pub fn mcop(poset: &Poset, o: &MarkingSet, lambda: &Weight) -> Result<LatticePolytope> {
    lambda.check(poset)?;
    let pieces = poset
        .fundamental_range()
        .map(|k| Ok((fundamental_vertices(poset, o, k)?, lambda.get(k))))
        .collect::<Result<Vec<_>>>()?;
    LatticePolytope::from_pieces(poset.len(), pieces)
}

pub fn lattice_points(poset: &Poset, o: &MarkingSet, lambda: &Weight) -> Result<BTreeSet<ExponentVector>> {
    Ok(mcop(poset, o, lambda)?.lattice_points())
}

/// `x_{i,i} = a_i + ... + a_r` for every diagonal element.
pub fn diagonal_check(poset: &Poset, lambda: &Weight, x: &ExponentVector) -> Result<bool> {
    lambda.check(poset)?;
    if x.len() != poset.len() {
        return Err(Error::DimensionMismatch(format!("vector of length {}, poset has {}", x.len(), poset.len())));
    }
    Ok(poset.diagonal().iter().all(|idx| {
        let i = poset.element(idx).i as usize;
        x[idx] == lambda.suffix_sum(i) as i64
    }))
}

#[derive(Debug, Clone, Serialize)]
pub struct InequalityReport {
    pub points: usize,
    pub inequalities: usize,
    /// Enumerated points violating some inequality.
    pub violations: Vec<ExponentVector>,
    pub box_points: usize,
    /// Integer points satisfying the system that were not enumerated.
    pub extra: Vec<ExponentVector>,
    pub passed: bool,
}

/// A linear constraint `coeffs · x <= bound` (or `==`).
#[derive(Debug, Clone)]
struct Linear {
    coeffs: Vec<(usize, i64)>,
    bound: i64,
    equality: bool,
}

impl Linear {
    fn holds(&self, x: &ExponentVector) -> bool {
        let lhs: i64 = self.coeffs.iter().map(|&(i, c)| c * x[i]).sum();
        if self.equality {
            lhs == self.bound
        } else {
            lhs <= self.bound
        }
    }
}

fn gt_system(poset: &Poset, lambda: &Weight) -> Vec<Linear> {
    let mut sys = Vec::new();
    for (p, q) in poset.hasse_edges() {
        let (p, q) = (poset.try_index(p).expect("edge"), poset.try_index(q).expect("edge"));
        // x_p >= x_q
        sys.push(Linear { coeffs: vec![(q, 1), (p, -1)], bound: 0, equality: false });
    }
    sys.extend(common_constraints(poset, lambda));
    sys
}

fn common_constraints(poset: &Poset, lambda: &Weight) -> Vec<Linear> {
    let mut sys: Vec<Linear> =
        (0..poset.len()).map(|idx| Linear { coeffs: vec![(idx, -1)], bound: 0, equality: false }).collect();
    for idx in poset.diagonal().iter() {
        let i = poset.element(idx).i as usize;
        sys.push(Linear { coeffs: vec![(idx, 1)], bound: lambda.suffix_sum(i) as i64, equality: true });
    }
    sys
}

/// Chains of `P ∖ A` from `(l, l+1)` to `(r, r+1)`, all of them. Small
/// posets only.
fn fflv_chains(poset: &Poset) -> Vec<(usize, usize, Vec<usize>)> {
    let n = poset.n();
    let off: Vec<usize> = poset.full().difference(poset.diagonal()).iter().collect();
    let mut out = Vec::new();
    for l in 1..n {
        let start = poset.try_index((l as i32, l as i32 + 1).into()).expect("type A element");
        for r in l..n {
            let end = poset.try_index((r as i32, r as i32 + 1).into()).expect("type A element");
            let mut stack = vec![vec![start]];
            while let Some(chain) = stack.pop() {
                let last = *chain.last().expect("nonempty");
                if last == end {
                    out.push((l, r, chain.clone()));
                }
                for &next in &off {
                    if next != last
                        && poset.less_eq_idx(last, next)
                        && poset.less_eq_idx(next, end)
                    {
                        let mut c = chain.clone();
                        c.push(next);
                        stack.push(c);
                    }
                }
            }
        }
    }
    out
}

fn fflv_system(poset: &Poset, lambda: &Weight) -> Vec<Linear> {
    let mut sys: Vec<Linear> = fflv_chains(poset)
        .into_iter()
        .map(|(l, r, chain)| Linear {
            coeffs: chain.into_iter().map(|c| (c, 1)).collect(),
            bound: (l..=r).map(|k| lambda.get(k) as i64).sum(),
            equality: false,
        })
        .collect();
    sys.extend(common_constraints(poset, lambda));
    sys
}

/// Checks the enumerated points of `𝒬_O(λ)` against the explicit
/// inequalities of the Gelfand–Tsetlin polytope (`O = P`) or the FFLV
/// polytope (`O = A`), in both directions over the bounding box.
pub fn defining_inequalities_check(poset: &Poset, o: &MarkingSet, lambda: &Weight) -> Result<InequalityReport> {
    check_marking(poset, o)?;
    if poset.kind() != Kind::A {
        return Err(Error::Unsupported("explicit inequalities are implemented for type A only".into()));
    }
    let system = if o.members() == poset.full() {
        gt_system(poset, lambda)
    } else if o.members() == poset.diagonal() {
        fflv_system(poset, lambda)
    } else {
        return Err(Error::Unsupported("explicit inequalities are known only for O = P and O = A".into()));
    };
    let q = mcop(poset, o, lambda)?;
    let points = q.lattice_points();
    let violations: Vec<ExponentVector> =
        points.iter().filter(|x| !system.iter().all(|l| l.holds(x))).cloned().collect();
    let bounds = q.bounding_box();
    let mut box_count = 0;
    let mut extra = Vec::new();
    for x in box_points(&bounds) {
        box_count += 1;
        if system.iter().all(|l| l.holds(&x)) && !points.contains(&x) {
            extra.push(x);
        }
    }
    let passed = violations.is_empty() && extra.is_empty();
    Ok(InequalityReport {
        points: points.len(),
        inequalities: system.len(),
        violations,
        box_points: box_count,
        extra,
        passed,
    })
}

/// Indicator of `{(1, w^J(1)), ..., (k, w^J(k))}`.
pub fn tuple_indicator(poset: &Poset, o: &MarkingSet, j: &OrderIdeal) -> Result<ExponentVector> {
    let w = ideal_perm(poset, o, j)?;
    let mut set = ElementSet::empty();
    for i in 1..=j.stratum() as i32 {
        let col = w.apply(i)?;
        let idx = poset.try_index((i, col).into()).ok_or_else(|| {
            Error::InvariantViolation(format!("({i},{col}) is not a poset element"))
        })?;
        set.insert(idx);
    }
    Ok(ExponentVector::indicator(poset.len(), set))
}

/// `Π_O(ω_k)` vertices, in ideal order.
pub fn pi_vertices(poset: &Poset, o: &MarkingSet, k: usize) -> Result<Vec<ExponentVector>> {
    check_marking(poset, o)?;
    check_stratum(poset, k)?;
    let ideals = poset.enumerate_ideals().swap_remove(k);
    ideals.iter().map(|j| tuple_indicator(poset, o, j)).collect()
}

/// `Π_O(λ) = a_1 Π_O(ω_1) + ... + a_{n-1} Π_O(ω_{n-1})`, type A.
pub fn pi_polytope(poset: &Poset, o: &MarkingSet, lambda: &Weight) -> Result<LatticePolytope> {
    if poset.kind() != Kind::A {
        return Err(Error::Unsupported("Π_O(λ) is defined for type A".into()));
    }
    lambda.check(poset)?;
    let pieces = poset
        .fundamental_range()
        .map(|k| Ok((pi_vertices(poset, o, k)?, lambda.get(k))))
        .collect::<Result<Vec<_>>>()?;
    LatticePolytope::from_pieces(poset.len(), pieces)
}

/// For each `k`, the unique `J ∈ 𝒥_k` with `w^J({1..k}) = {1..k}`.
pub fn tau_ideals(poset: &Poset, o: &MarkingSet) -> Result<Vec<OrderIdeal>> {
    if poset.kind() != Kind::C {
        return Err(Error::Unsupported("x_λ is defined for type C".into()));
    }
    check_marking(poset, o)?;
    let strata = poset.enumerate_ideals();
    let mut out = Vec::with_capacity(poset.n());
    for k in poset.fundamental_range() {
        let want: BTreeSet<i32> = (1..=k as i32).collect();
        let mut found = Vec::new();
        for j in &strata[k] {
            let w = ideal_perm(poset, o, j)?;
            let image = (1..=k as i32).map(|i| w.apply(i)).collect::<Result<BTreeSet<_>>>()?;
            if image == want {
                found.push(*j);
            }
        }
        if found.len() != 1 {
            return Err(Error::InvariantViolation(format!(
                "{} ideals in stratum {k} fix {{1..{k}}}, expected exactly one",
                found.len()
            )));
        }
        out.push(found.pop().expect("one"));
    }
    Ok(out)
}

/// `x_λ = a_1 x_1 + ... + a_n x_n`, type C.
pub fn x_lambda(poset: &Poset, o: &MarkingSet, lambda: &Weight) -> Result<ExponentVector> {
    lambda.check(poset)?;
    let mut x = ExponentVector::zeros(poset.len());
    for (k, j) in (1..).zip(tau_ideals(poset, o)?) {
        x = x.add(&mcop_vertex(poset, o, &j)?.scale(lambda.get(k) as i64));
    }
    Ok(x)
}

/// `Δ = 𝒬_O(λ) − x_λ`, type C.
pub fn newton_okounkov_body(poset: &Poset, o: &MarkingSet, lambda: &Weight) -> Result<LatticePolytope> {
    let x = x_lambda(poset, o, lambda)?;
    Ok(mcop(poset, o, lambda)?.translated(&x.scale(-1)))
}
