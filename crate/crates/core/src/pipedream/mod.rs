//! Pipe-dream permutations.
//!
//! For `M ⊆ P`, `w_M` is the product of the transpositions `s_{i,j}`,
//! `(i,j) ∈ M`, written in canonical element order. A written product
//! `s_a s_b s_c` acts as the composite function `s_a ∘ s_b ∘ s_c`, the
//! rightmost factor first. The one-line notation `(4,3,1,2)` lists
//! `w(1), w(2), ...` over the column values in increasing order.
//!
//! The same permutation is obtained geometrically by [`trace_pipes`], which
//! follows each pipe through the triangle of poset elements.

mod render;

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poset::{column_from_key, column_key, Element, ElementSet, Kind, MarkingSet, OrderIdeal, Poset};

pub use render::{render_pipe_dream, RenderFormat};

/// Bijection of the column set `[1, n]` (type A) or `N = {1..n, -n..-1}`
/// (type C).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedPermutation {
    kind: Kind,
    n: usize,
    // images[key - 1] = w(column with that key)
    images: Vec<i32>,
}

impl SignedPermutation {
    pub fn identity(kind: Kind, n: usize) -> Self {
        let images = crate::poset::column_values(kind, n);
        SignedPermutation { kind, n, images }
    }

    /// Builds a permutation from its one-line notation over the column values
    /// in increasing order.
    pub fn from_one_line(kind: Kind, n: usize, images: Vec<i32>) -> Result<Self> {
        let domain = crate::poset::column_values(kind, n);
        if images.len() != domain.len() {
            return Err(Error::Domain(format!(
                "one-line notation has {} entries, expected {}",
                images.len(),
                domain.len()
            )));
        }
        let mut seen = vec![false; domain.len()];
        for &v in &images {
            let key = column_key(kind, n, v)
                .ok_or_else(|| Error::Domain(format!("{v} is not a column value")))?;
            if std::mem::replace(&mut seen[key - 1], true) {
                return Err(Error::Domain(format!("{v} appears twice")));
            }
        }
        Ok(SignedPermutation { kind, n, images })
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn key(&self, v: i32) -> Result<usize> {
        column_key(self.kind, self.n, v)
            .ok_or_else(|| Error::Domain(format!("{v} is outside the permutation domain")))
    }

    pub fn apply(&self, v: i32) -> Result<i32> {
        Ok(self.images[self.key(v)? - 1])
    }

    /// Right-multiplies by the transposition of `a` and `b`, that is
    /// `self ∘ s_{a,b}`.
    pub fn then_swap(&mut self, a: i32, b: i32) -> Result<()> {
        let (ka, kb) = (self.key(a)?, self.key(b)?);
        self.images.swap(ka - 1, kb - 1);
        Ok(())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if (self.kind, self.n) != (other.kind, other.n) {
            return Err(Error::Domain("composing permutations of different domains".into()));
        }
        let images = other
            .images
            .iter()
            .map(|&v| self.images[self.key(v).expect("valid image") - 1])
            .collect();
        Ok(SignedPermutation { kind: self.kind, n: self.n, images })
    }

    pub fn inverse(&self) -> Self {
        let mut images = self.images.clone();
        for (pos, &v) in self.images.iter().enumerate() {
            let key = self.key(v).expect("valid image");
            images[key - 1] = column_from_key(self.kind, self.n, pos + 1);
        }
        SignedPermutation { kind: self.kind, n: self.n, images }
    }

    pub fn one_line(&self) -> &[i32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.kind, self.n)
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(i32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `w_M`, the ordered product of `s_{i,j}` over `(i,j) ∈ M`.
pub fn perm_from_set(poset: &Poset, m: ElementSet) -> SignedPermutation {
    let mut w = SignedPermutation::identity(poset.kind(), poset.n());
    for idx in m.iter() {
        let e = poset.element(idx);
        w.then_swap(e.i, e.j).expect("poset columns lie in the domain");
    }
    w
}

/// [`perm_from_set`] for an explicit element list.
pub fn perm_from_elements(poset: &Poset, m: &[Element]) -> Result<SignedPermutation> {
    Ok(perm_from_set(poset, poset.set_from_elements(m.iter().copied())?))
}

/// `w^O_M = w_O^{-1} w_M`.
pub fn twisted_perm(poset: &Poset, o: ElementSet, m: ElementSet) -> SignedPermutation {
    perm_from_set(poset, o)
        .inverse()
        .compose(&perm_from_set(poset, m))
        .expect("same domain")
}

/// A tuple of column values indexing a Plücker coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PlueckerTuple {
    pub entries: Vec<i32>,
}

impl PlueckerTuple {
    pub fn new(entries: Vec<i32>) -> Self {
        PlueckerTuple { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Sorts the entries in column order and returns the sign of the sorting
    /// permutation, or sign 0 when an entry repeats.
    pub fn canonicalize(&self, kind: Kind, n: usize) -> Result<(i8, PlueckerTuple)> {
        let mut keyed = Vec::with_capacity(self.len());
        for &v in &self.entries {
            let key = column_key(kind, n, v)
                .ok_or_else(|| Error::Domain(format!("{v} is not a column value")))?;
            keyed.push((key, v));
        }
        let mut inversions = 0usize;
        for a in 0..keyed.len() {
            for b in a + 1..keyed.len() {
                if keyed[a].0 > keyed[b].0 {
                    inversions += 1;
                }
            }
        }
        keyed.sort_unstable();
        let repeated = keyed.windows(2).any(|w| w[0].0 == w[1].0);
        let sign = if repeated {
            0
        } else if inversions.is_multiple_of(2) {
            1
        } else {
            -1
        };
        Ok((sign, PlueckerTuple::new(keyed.into_iter().map(|(_, v)| v).collect())))
    }
}

impl fmt::Display for PlueckerTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(i32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `(w^J(1), ..., w^J(k))` for an ideal `J ∈ 𝒥_k`, with its canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdealTuple {
    pub raw: PlueckerTuple,
    pub sign: i8,
    pub sorted: PlueckerTuple,
}

/// `w^J = w^O_{M_O(J)}`.
pub fn ideal_perm(poset: &Poset, o: &MarkingSet, j: &OrderIdeal) -> Result<SignedPermutation> {
    let m = poset.marked_set(o, j)?;
    Ok(twisted_perm(poset, o.members(), m))
}

pub fn ideal_tuple(poset: &Poset, o: &MarkingSet, j: &OrderIdeal) -> Result<IdealTuple> {
    let w = ideal_perm(poset, o, j)?;
    let raw = (1..=j.stratum() as i32)
        .map(|i| w.apply(i))
        .collect::<Result<Vec<_>>>()?;
    let raw = PlueckerTuple::new(raw);
    let (sign, sorted) = raw.canonicalize(poset.kind(), poset.n())?;
    Ok(IdealTuple { raw, sign, sorted })
}

/// At most `l` entries have absolute value `<= l`, for every `l ∈ [1, n]`.
pub fn is_admissible(entries: &[i32], n: usize) -> Result<bool> {
    if let Some(&bad) = entries.iter().find(|&&v| v == 0 || v.unsigned_abs() as usize > n) {
        return Err(Error::Domain(format!("{bad} is not an element of N for n = {n}")));
    }
    Ok((1..=n).all(|l| entries.iter().filter(|v| v.unsigned_abs() as usize <= l).count() <= l))
}

/// `Θ_k`: admissible `k`-tuples of type C columns, increasing in column order.
pub fn admissible_tuples(n: usize, k: usize) -> Vec<PlueckerTuple> {
    let columns = crate::poset::column_values(Kind::C, n);
    itertools::Itertools::combinations(columns.into_iter(), k)
        .filter(|t| is_admissible(t, n).expect("columns lie in N"))
        .map(PlueckerTuple::new)
        .collect()
}

/// All increasing `k`-tuples a canonical tuple of stratum `k` may equal:
/// `k`-subsets of `[1, n]` in type A, `Θ_k` in type C.
pub fn target_tuples(kind: Kind, n: usize, k: usize) -> Vec<PlueckerTuple> {
    match kind {
        Kind::A => itertools::Itertools::combinations(1..=n as i32, k)
            .map(PlueckerTuple::new)
            .collect(),
        Kind::C => admissible_tuples(n, k),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BijectionReport {
    pub k: usize,
    pub ideals: usize,
    pub targets: usize,
    /// Canonical tuples hit more than once, with hit counts.
    pub collisions: Vec<(PlueckerTuple, usize)>,
    /// Targets never hit.
    pub omissions: Vec<PlueckerTuple>,
    /// Canonical tuples that are not targets (repeated entries or, in type C,
    /// non-admissible).
    pub strays: Vec<PlueckerTuple>,
    pub passed: bool,
}

/// Checks that `J ↦ sort(w^J(1..k))` is a bijection from `𝒥_k` onto the
/// target tuples.
pub fn tuple_bijection_check(poset: &Poset, o: &MarkingSet, k: usize) -> Result<BijectionReport> {
    if k > poset.n() {
        return Err(Error::StratumOutOfRange { k, min: 0, max: poset.n() });
    }
    let ideals = poset.enumerate_ideals().swap_remove(k);
    let targets = target_tuples(poset.kind(), poset.n(), k);
    let mut hits: BTreeMap<PlueckerTuple, usize> = targets.iter().map(|t| (t.clone(), 0)).collect();
    let mut strays = Vec::new();
    for ideal in &ideals {
        let tuple = ideal_tuple(poset, o, ideal)?;
        match hits.get_mut(&tuple.sorted) {
            Some(count) if tuple.sign != 0 => *count += 1,
            _ => strays.push(tuple.sorted),
        }
    }
    let collisions: Vec<_> = hits.iter().filter(|(_, &c)| c > 1).map(|(t, &c)| (t.clone(), c)).collect();
    let omissions: Vec<_> = hits.iter().filter(|(_, &c)| c == 0).map(|(t, _)| t.clone()).collect();
    let passed = collisions.is_empty() && omissions.is_empty() && strays.is_empty();
    Ok(BijectionReport {
        k,
        ideals: ideals.len(),
        targets: targets.len(),
        collisions,
        omissions,
        strays,
        passed,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Heading {
    // toward the top-left: (i, key) -> (i, key - 1)
    Up,
    // toward the bottom-left: (i, key) -> (i - 1, key)
    Down,
}

/// One traced pipe: its label, the elements it passes in order, and the
/// column where it leaves the diagram.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Pipe {
    pub label: i32,
    pub path: Vec<Element>,
    pub end: i32,
}

/// Follows every pipe through the diagram of `M`.
///
/// Pipe `m ∈ [1, n]` enters `(m, last column of row m)` from the bottom-right
/// heading to the top-left; in type C pipe `-m` enters `(m, -m)` from the
/// top-right heading to the bottom-left. A pipe heading up turns at elements
/// of `M ∪ A`, a pipe heading down turns at elements of `M`. The pipe leaves
/// through row 1, and the column of its last element is `w_M(label)`.
pub fn trace_pipes(poset: &Poset, m: ElementSet) -> Vec<Pipe> {
    let (kind, n) = (poset.kind(), poset.n());
    let turns_up = m.union(poset.diagonal());
    let last_key = |i: usize| match kind {
        Kind::A => n,
        Kind::C => 2 * n + 1 - i,
    };
    let mut starts: Vec<(i32, usize, Heading)> =
        (1..=n).map(|i| (i as i32, i, Heading::Up)).collect();
    if kind == Kind::C {
        starts.extend((1..=n).rev().map(|i| (-(i as i32), i, Heading::Down)));
    }
    starts
        .into_iter()
        .map(|(label, row, mut heading)| {
            let (mut i, mut key) = (row, last_key(row));
            let mut path = Vec::new();
            loop {
                let idx = poset.index_at(i, key).expect("pipe stays inside the diagram");
                path.push(poset.element(idx));
                heading = match heading {
                    Heading::Up if turns_up.contains(idx) => Heading::Down,
                    Heading::Down if m.contains(idx) => Heading::Up,
                    h => h,
                };
                match heading {
                    Heading::Up => key -= 1,
                    Heading::Down => i -= 1,
                }
                if i == 0 {
                    break;
                }
            }
            let end = path.last().expect("nonempty path").j;
            Pipe { label, path, end }
        })
        .collect()
}

/// `w_M` read off the traced pipes.
pub fn perm_from_pipes(poset: &Poset, m: ElementSet) -> SignedPermutation {
    let mut images = crate::poset::column_values(poset.kind(), poset.n());
    for pipe in trace_pipes(poset, m) {
        let key = column_key(poset.kind(), poset.n(), pipe.label).expect("label is a column");
        images[key - 1] = pipe.end;
    }
    SignedPermutation::from_one_line(poset.kind(), poset.n(), images).expect("pipes end in distinct columns")
}

/// Maps a type `C_n` column value to the `A_{2n-1}` column with the same
/// position: `j > 0` stays, `-m` becomes `2n + 1 - m`.
pub fn c_column_in_a(n: usize, j: i32) -> i32 {
    if j > 0 {
        j
    } else {
        2 * n as i32 + 1 + j
    }
}

/// Checks that the type `C_n` permutation of `M` agrees with the endpoints of
/// the type `A_{2n-1}` pipe dream of the same set, with `C_n` placed as the
/// left half of the `A_{2n-1}` triangle.
pub fn embedding_check_c_in_a(n: usize, m: &[Element]) -> Result<bool> {
    let c = Poset::new(Kind::C, n)?;
    let a = Poset::new(Kind::A, 2 * n)?;
    let c_set = c.set_from_elements(m.iter().copied())?;
    let a_set = a.set_from_elements(
        m.iter().map(|e| Element::new(e.i, c_column_in_a(n, e.j))),
    )?;
    let w_c = perm_from_set(&c, c_set);
    let a_ends: BTreeMap<i32, i32> = trace_pipes(&a, a_set).into_iter().map(|p| (p.label, p.end)).collect();
    for v in crate::poset::column_values(Kind::C, n) {
        let expected = c_column_in_a(n, w_c.apply(v)?);
        if a_ends[&c_column_in_a(n, v)] != expected {
            return Ok(false);
        }
    }
    Ok(true)
}
