//! Gelfand–Tsetlin posets of type A and type C, their order ideals and
//! marked sets.
//!
//! Elements are pairs `(i, j)`. In type A, `1 <= i <= j <= n`. In type C the
//! column index ranges over `[i, n] ∪ [-n, -i]` and columns are compared in
//! the total order `1 < 2 < ... < n < -n < ... < -1`. Internally every
//! column is replaced by its *key*, its 1-based position in that order, so
//! both families reduce to the product order on `(i, key)`.
//!
//! Elements are stored sorted by `i`, then by key. This order is a linear
//! extension of the poset and is also the reading order for pipe-dream
//! transposition products and PBW monomials.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest poset supported by the fixed-width [`ElementSet`].
pub const MAX_ELEMENTS: usize = 128;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Kind {
    A,
    C,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kind::A => f.write_str("A"),
            Kind::C => f.write_str("C"),
        }
    }
}

impl std::str::FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(Kind::A),
            "C" | "c" => Ok(Kind::C),
            other => Err(Error::Parse(format!("unknown type `{other}`, expected A or C"))),
        }
    }
}

/// Position of column `j` in the column order, 1-based.
///
/// Type A columns are `1..=n`; type C columns are `1, ..., n, -n, ..., -1`
/// and negative `j` sits at `2n + 1 + j`. Returns `None` for values outside
/// the column set.
pub fn column_key(kind: Kind, n: usize, j: i32) -> Option<usize> {
    let n = n as i32;
    match kind {
        Kind::A if (1..=n).contains(&j) => Some(j as usize),
        Kind::C if (1..=n).contains(&j) => Some(j as usize),
        Kind::C if (-n..=-1).contains(&j) => Some((2 * n + 1 + j) as usize),
        _ => None,
    }
}

/// Inverse of [`column_key`].
pub fn column_from_key(kind: Kind, n: usize, key: usize) -> i32 {
    match kind {
        Kind::A => key as i32,
        Kind::C if key <= n => key as i32,
        Kind::C => key as i32 - 2 * n as i32 - 1,
    }
}

/// The column values in increasing order: `1..=n` for type A,
/// `1, ..., n, -n, ..., -1` for type C.
pub fn column_values(kind: Kind, n: usize) -> Vec<i32> {
    let len = match kind {
        Kind::A => n,
        Kind::C => 2 * n,
    };
    (1..=len).map(|key| column_from_key(kind, n, key)).collect()
}

/// A poset element `(i, j)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Element {
    pub i: i32,
    pub j: i32,
}

impl Element {
    pub const fn new(i: i32, j: i32) -> Self {
        Element { i, j }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

impl From<(i32, i32)> for Element {
    fn from((i, j): (i32, i32)) -> Self {
        Element { i, j }
    }
}

/// Subset of a poset, as a bitset over element indices.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementSet(u128);

impl ElementSet {
    pub const fn empty() -> Self {
        ElementSet(0)
    }

    pub fn from_bits(bits: u128) -> Self {
        ElementSet(bits)
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    pub fn contains(self, idx: usize) -> bool {
        self.0 >> idx & 1 == 1
    }

    pub fn insert(&mut self, idx: usize) {
        self.0 |= 1 << idx;
    }

    pub fn remove(&mut self, idx: usize) {
        self.0 &= !(1 << idx);
    }

    pub fn with(mut self, idx: usize) -> Self {
        self.insert(idx);
        self
    }

    pub fn union(self, other: Self) -> Self {
        ElementSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        ElementSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        ElementSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Member indices in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let idx = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(idx)
        })
    }
}

impl FromIterator<usize> for ElementSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        let mut set = ElementSet::empty();
        for idx in iter {
            set.insert(idx);
        }
        set
    }
}

/// Identifies a poset instance, used to reject mixing sets from different posets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PosetId {
    pub kind: Kind,
    pub n: usize,
}

/// Type A or type C Gelfand–Tsetlin poset of rank `n`.
#[derive(Debug, Clone)]
pub struct Poset {
    kind: Kind,
    n: usize,
    elements: Vec<Element>,
    keys: Vec<(usize, usize)>,
    index: HashMap<Element, usize>,
    // down[q] = {p : p <= q}, up[p] = {q : p <= q}
    down: Vec<ElementSet>,
    up: Vec<ElementSet>,
    diagonal: ElementSet,
}

impl Poset {
    pub fn new(kind: Kind, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidRank(n));
        }
        let size = match kind {
            Kind::A => n * (n + 1) / 2,
            Kind::C => n * (n + 1),
        };
        if size > MAX_ELEMENTS {
            return Err(Error::RankTooLarge { n, size, max: MAX_ELEMENTS });
        }
        let max_key = match kind {
            Kind::A => n,
            Kind::C => 2 * n,
        };
        let mut elements = Vec::with_capacity(size);
        let mut keys = Vec::with_capacity(size);
        for i in 1..=n {
            let last = match kind {
                Kind::A => n,
                Kind::C => max_key + 1 - i,
            };
            for key in i..=last {
                elements.push(Element::new(i as i32, column_from_key(kind, n, key)));
                keys.push((i, key));
            }
        }
        debug_assert_eq!(elements.len(), size);
        let index = elements.iter().enumerate().map(|(idx, &e)| (e, idx)).collect();
        let le = |a: usize, b: usize| keys[a].0 <= keys[b].0 && keys[a].1 <= keys[b].1;
        let down = (0..size).map(|q| (0..size).filter(|&p| le(p, q)).collect()).collect();
        let up = (0..size).map(|p| (0..size).filter(|&q| le(p, q)).collect()).collect();
        let diagonal = (0..size).filter(|&idx| keys[idx].0 == keys[idx].1).collect();
        Ok(Poset { kind, n, elements, keys, index, down, up, diagonal })
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn id(&self) -> PosetId {
        PosetId { kind: self.kind, n: self.n }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Elements in canonical order.
    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn element(&self, idx: usize) -> Element {
        self.elements[idx]
    }

    /// `(i, key)` coordinates of the element at `idx`.
    pub fn coords(&self, idx: usize) -> (usize, usize) {
        self.keys[idx]
    }

    pub fn index_of(&self, e: Element) -> Result<usize> {
        self.index.get(&e).copied().ok_or(Error::NotInPoset(e.i, e.j))
    }

    pub fn try_index(&self, e: Element) -> Option<usize> {
        self.index.get(&e).copied()
    }

    /// Index of the element in row `i` with column key `key`, if it exists.
    pub fn index_at(&self, i: usize, key: usize) -> Option<usize> {
        if i == 0 || key == 0 {
            return None;
        }
        self.try_index(Element::new(i as i32, column_from_key(self.kind, self.n, key)))
    }

    /// Number of column values (`n` for type A, `2n` for type C).
    pub fn columns(&self) -> usize {
        match self.kind {
            Kind::A => self.n,
            Kind::C => 2 * self.n,
        }
    }

    pub fn column_key(&self, j: i32) -> Option<usize> {
        column_key(self.kind, self.n, j)
    }

    /// Ranks `k` for which `ω_k` is a fundamental weight: `1..=n-1` in type A,
    /// `1..=n` in type C.
    pub fn fundamental_range(&self) -> std::ops::RangeInclusive<usize> {
        match self.kind {
            Kind::A => 1..=self.n - 1,
            Kind::C => 1..=self.n,
        }
    }

    /// Length of a weight vector for this poset.
    pub fn weight_len(&self) -> usize {
        match self.kind {
            Kind::A => self.n - 1,
            Kind::C => self.n,
        }
    }

    pub fn full(&self) -> ElementSet {
        (0..self.len()).collect()
    }

    pub fn diagonal(&self) -> ElementSet {
        self.diagonal
    }

    pub fn less_eq_idx(&self, p: usize, q: usize) -> bool {
        self.down[q].contains(p)
    }

    pub fn less_eq(&self, p: Element, q: Element) -> Result<bool> {
        Ok(self.less_eq_idx(self.index_of(p)?, self.index_of(q)?))
    }

    /// All `p` with `p <= q`.
    pub fn down_set(&self, q: usize) -> ElementSet {
        self.down[q]
    }

    /// All `q` with `p <= q`.
    pub fn up_set(&self, p: usize) -> ElementSet {
        self.up[p]
    }

    /// Covering relations `(p, q)`, `p < q` with nothing strictly between.
    pub fn hasse_edges(&self) -> Vec<(Element, Element)> {
        let mut edges = Vec::new();
        for q in 0..self.len() {
            let below = self.down[q].difference(ElementSet::empty().with(q));
            for p in below.iter() {
                let strictly_between = below
                    .iter()
                    .any(|r| r != p && self.less_eq_idx(p, r));
                if !strictly_between {
                    edges.push((self.elements[p], self.elements[q]));
                }
            }
        }
        edges.sort_by_key(|&(p, q)| (self.index[&p], self.index[&q]));
        edges
    }

    /// Number of elements in a longest chain.
    pub fn longest_chain(&self) -> usize {
        // canonical order is a linear extension
        let mut best = vec![1usize; self.len()];
        for q in 0..self.len() {
            for p in self.down[q].iter().filter(|&p| p != q) {
                best[q] = best[q].max(best[p] + 1);
            }
        }
        best.into_iter().max().unwrap_or(0)
    }

    pub fn set_from_elements<I, E>(&self, items: I) -> Result<ElementSet>
    where
        I: IntoIterator<Item = E>,
        E: Into<Element>,
    {
        items.into_iter().map(|e| self.index_of(e.into())).collect()
    }

    pub fn elements_of(&self, set: ElementSet) -> Vec<Element> {
        set.iter().map(|idx| self.elements[idx]).collect()
    }

    pub fn is_ideal(&self, set: ElementSet) -> bool {
        set.iter().all(|q| self.down[q].is_subset(set))
    }

    /// Maximal elements of `set`.
    pub fn max_elements(&self, set: ElementSet) -> ElementSet {
        set.iter()
            .filter(|&p| self.up[p].intersection(set) == ElementSet::empty().with(p))
            .collect()
    }

    pub fn ideal(&self, members: ElementSet) -> Result<OrderIdeal> {
        if let Some(q) = members.iter().find(|&q| !self.down[q].is_subset(members)) {
            let missing = self.down[q].difference(members).iter().next().unwrap_or(q);
            let e = self.elements[missing];
            return Err(Error::NotAnIdeal(e.i, e.j));
        }
        Ok(OrderIdeal {
            poset: self.id(),
            members,
            stratum: members.intersection(self.diagonal).len(),
        })
    }

    /// Every order ideal exactly once, grouped by stratum `|J ∩ A|`, index
    /// `0..=n`.
    ///
    /// Elements are decided in canonical order; an element may join only when
    /// everything below it already has, so each branch yields a distinct
    /// ideal and no branch is a dead end. Cost is `O(|P| · #ideals)`.
    pub fn enumerate_ideals(&self) -> Vec<Vec<OrderIdeal>> {
        let mut strata = vec![Vec::new(); self.n + 1];
        let mut stack = vec![(0usize, ElementSet::empty())];
        while let Some((next, members)) = stack.pop() {
            if next == self.len() {
                let stratum = members.intersection(self.diagonal).len();
                strata[stratum].push(OrderIdeal { poset: self.id(), members, stratum });
                continue;
            }
            let below = self.down[next].difference(ElementSet::empty().with(next));
            if below.is_subset(members) {
                stack.push((next + 1, members.with(next)));
            }
            stack.push((next + 1, members));
        }
        for stratum in &mut strata {
            stratum.sort_by_key(|ideal| ideal.members);
        }
        strata
    }

    /// `M_O(J) = (J ∩ O) ∪ max(J)`.
    pub fn marked_set(&self, marking: &MarkingSet, ideal: &OrderIdeal) -> Result<ElementSet> {
        self.check_id(marking.poset)?;
        self.check_id(ideal.poset)?;
        Ok(ideal
            .members
            .intersection(marking.members)
            .union(self.max_elements(ideal.members)))
    }

    pub(crate) fn check_id(&self, other: PosetId) -> Result<()> {
        if other == self.id() {
            Ok(())
        } else {
            Err(Error::PosetMismatch(format!(
                "set belongs to type {} n={}, poset is type {} n={}",
                other.kind, other.n, self.kind, self.n
            )))
        }
    }
}

/// A downward-closed subset, tagged with its stratum `|J ∩ A|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OrderIdeal {
    poset: PosetId,
    members: ElementSet,
    stratum: usize,
}

impl OrderIdeal {
    pub fn members(&self) -> ElementSet {
        self.members
    }

    pub fn stratum(&self) -> usize {
        self.stratum
    }

    pub fn poset(&self) -> PosetId {
        self.poset
    }
}

/// A marking set `O` with `A ⊆ O ⊆ P`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MarkingSet {
    poset: PosetId,
    members: ElementSet,
}

impl MarkingSet {
    pub fn new(poset: &Poset, members: ElementSet) -> Result<Self> {
        if !members.is_subset(poset.full()) {
            return Err(Error::Domain("marking set has indices outside the poset".into()));
        }
        if let Some(missing) = poset.diagonal().difference(members).iter().next() {
            return Err(Error::MissingDiagonal(poset.element(missing).i));
        }
        Ok(MarkingSet { poset: poset.id(), members })
    }

    pub fn from_elements(poset: &Poset, elements: &[Element]) -> Result<Self> {
        Self::new(poset, poset.set_from_elements(elements.iter().copied())?)
    }

    /// `O = P`, the Gelfand–Tsetlin case.
    pub fn full(poset: &Poset) -> Self {
        MarkingSet { poset: poset.id(), members: poset.full() }
    }

    /// `O = A`, the FFLV case.
    pub fn diagonal(poset: &Poset) -> Self {
        MarkingSet { poset: poset.id(), members: poset.diagonal() }
    }

    pub fn members(&self) -> ElementSet {
        self.members
    }

    pub fn poset(&self) -> PosetId {
        self.poset
    }
}
