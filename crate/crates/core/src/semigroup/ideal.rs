use std::fmt;

use thiserror::Error;

use super::NumericalSemigroup;

/// `length_between` was asked for a pair that is not nested.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{inner} is not contained in {outer}")]
pub struct NotContained {
    pub outer: String,
    pub inner: String,
}

/// A nonempty, bounded-below, cofinite set of integers: the degree set of a
/// monomial fractional ideal of `k[[H]]`.
///
/// Stored as an explicit membership window over `[offset, tail)` with every
/// integer `≥ tail` a member. Both `offset` and `tail` are kept minimal, so
/// structural equality is set equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RelativeIdealZ {
    offset: i64,
    window: Vec<bool>,
}

impl RelativeIdealZ {
    /// `{z ∈ [lo, ∞) : pred(z)}`, where `pred` must hold on all of `[hi, ∞)`.
    ///
    /// # Panics
    ///
    /// If the resulting set is empty.
    pub fn from_fn(lo: i64, hi: i64, pred: impl Fn(i64) -> bool) -> Self {
        let hi = hi.max(lo);
        let bits: Vec<bool> = (lo..hi).map(pred).collect();
        Self::normalize(lo, bits)
    }

    fn normalize(lo: i64, mut bits: Vec<bool>) -> Self {
        while bits.last() == Some(&true) {
            bits.pop();
        }
        let first = bits.iter().position(|&b| b).unwrap_or(bits.len());
        let offset = lo + first as i64;
        bits.drain(..first);
        RelativeIdealZ { offset, window: bits }
    }

    /// `{z : z ≥ c}`.
    pub fn upward(c: i64) -> Self {
        RelativeIdealZ { offset: c, window: Vec::new() }
    }

    /// The degree set of `k[[H]]` itself.
    pub fn ring(h: &NumericalSemigroup) -> Self {
        Self::from_fn(0, h.frobenius() + 1, |z| h.contains(z))
    }

    /// `H ∖ {0}`, the maximal ideal.
    pub fn maximal_ideal(h: &NumericalSemigroup) -> Self {
        Self::from_fn(1, h.frobenius() + 1, |z| z > 0 && h.contains(z))
    }

    /// `K(H) = {z : F − z ∉ H}`.
    pub fn canonical(h: &NumericalSemigroup) -> Self {
        let f = h.frobenius();
        Self::from_fn(0, f + 1, |z| !h.contains(f - z))
    }

    /// Smallest member.
    pub fn offset(&self) -> i64 {
        self.offset
    }

    /// Smallest `t` with `[t, ∞)` inside the set.
    pub fn tail(&self) -> i64 {
        self.offset + self.window.len() as i64
    }

    pub fn contains(&self, z: i64) -> bool {
        if z < self.offset {
            false
        } else if z >= self.tail() {
            true
        } else {
            self.window[(z - self.offset) as usize]
        }
    }

    /// Members in `[lo, hi)`.
    pub fn members_in(&self, lo: i64, hi: i64) -> impl Iterator<Item = i64> + '_ {
        (lo.max(self.offset)..hi).filter(|&z| self.contains(z))
    }

    /// Members below the tail; together with `[tail, ∞)` they make up the set.
    pub fn finite_part(&self) -> impl Iterator<Item = i64> + '_ {
        self.members_in(self.offset, self.tail())
    }

    /// `E + H ⊆ E`.
    pub fn is_closed_under(&self, h: &NumericalSemigroup) -> bool {
        self.finite_part()
            .all(|z| h.generators().iter().all(|&g| self.contains(z + g as i64)))
    }

    pub fn sum(&self, other: &Self) -> Self {
        let lo = self.offset.min(other.offset);
        let hi = self.tail().min(other.tail());
        Self::from_fn(lo, hi, |z| self.contains(z) || other.contains(z))
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let lo = self.offset.max(other.offset);
        let hi = self.tail().max(other.tail());
        Self::from_fn(lo, hi, |z| self.contains(z) && other.contains(z))
    }

    /// Minkowski sum `E + F'`.
    pub fn product(&self, other: &Self) -> Self {
        let lo = self.offset + other.offset;
        let hi = (self.tail() + other.offset).min(other.tail() + self.offset);
        let a: Vec<i64> = self.finite_part().collect();
        let b: Vec<i64> = other.finite_part().collect();
        let mut bits = vec![false; (hi - lo).max(0) as usize];
        let mut mark = |z: i64| {
            if z < hi {
                bits[(z - lo) as usize] = true;
            }
        };
        for &x in &a {
            for &y in &b {
                mark(x + y);
            }
            for y in other.tail()..hi - x {
                mark(x + y);
            }
        }
        for &y in &b {
            for x in self.tail()..hi - y {
                mark(x + y);
            }
        }
        Self::normalize(lo, bits)
    }

    /// `E : F' = {z : z + F' ⊆ E}`.
    pub fn colon(&self, other: &Self) -> Self {
        let lo = self.offset - other.offset;
        let hi = self.tail() - other.offset;
        Self::from_fn(lo, hi, |z| {
            let top = other.tail().max(self.tail() - z);
            other.members_in(other.offset, top).all(|f| self.contains(z + f))
        })
    }

    pub fn shift(&self, c: i64) -> Self {
        RelativeIdealZ { offset: self.offset + c, window: self.window.clone() }
    }

    /// `F' ⊆ E`.
    pub fn contains_ideal(&self, inner: &Self) -> bool {
        inner.offset >= self.offset
            && inner.tail() >= self.tail()
            && inner.finite_part().all(|z| self.contains(z))
    }

    /// `ℓ(E/F') = #(E ∖ F')`.
    pub fn length_between(&self, inner: &Self) -> Result<usize, NotContained> {
        if !self.contains_ideal(inner) {
            return Err(NotContained { outer: format!("{self:?}"), inner: format!("{inner:?}") });
        }
        Ok(self.members_in(self.offset, inner.tail()).filter(|&z| !inner.contains(z)).count())
    }

    /// `#(E ∖ 𝔪E)`, the number of minimal generators.
    pub fn minimal_generators(&self, h: &NumericalSemigroup) -> Vec<i64> {
        let me = Self::maximal_ideal(h).product(self);
        self.members_in(self.offset, me.tail()).filter(|&z| !me.contains(z)).collect()
    }

    /// Stabilized union of `E, E+E, E+E+E, …` (only meaningful when `0 ∈ E`).
    pub fn ring_closure(&self) -> Self {
        let mut acc = self.clone();
        loop {
            let next = acc.sum(&acc.product(self));
            if next == acc {
                return acc;
            }
            acc = next;
        }
    }

    /// Finite members below the tail, followed by the tail start, e.g.
    /// `{0, 1} ∪ [3, ∞)`.
    pub fn render(&self) -> String {
        let parts: Vec<String> = self.finite_part().map(|z| z.to_string()).collect();
        if parts.is_empty() {
            format!("[{}, ∞)", self.tail())
        } else {
            format!("{{{}}} ∪ [{}, ∞)", parts.join(", "), self.tail())
        }
    }
}

impl fmt::Debug for RelativeIdealZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Display for RelativeIdealZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}
