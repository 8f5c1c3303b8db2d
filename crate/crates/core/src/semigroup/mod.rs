//! Numerical semigroups, their relative ideals, and the single-ring
//! classifiers for `k[[H]]`.

mod classify;
mod ideal;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use classify::{classify_ring, RingClassification, RingFlags, RingLengths, RingStructure};
pub use ideal::{NotContained, RelativeIdealZ};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SemigroupError {
    #[error("empty generator list")]
    Empty,
    #[error("generators must be positive integers (got 0)")]
    ZeroGenerator,
    #[error("gcd({}) ≠ 1", join(.0))]
    NotCofinite(Vec<u32>),
    #[error("cannot parse generator '{0}'")]
    Parse(String),
}

fn join(gens: &[u32]) -> String {
    gens.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

/// A cofinite additive submonoid `H ⊆ ℕ`, the value semigroup of `k[[H]]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NumericalSemigroup {
    gens: Vec<u32>,
    frobenius: i64,
    gaps: Vec<u32>,
    /// membership over `0..members.len()`; every larger integer is a member
    members: Vec<bool>,
}

impl NumericalSemigroup {
    /// `H = ⟨gens⟩` with a minimalized generator list.
    pub fn from_generators(gens: &[u32]) -> Result<Self, SemigroupError> {
        if gens.is_empty() {
            return Err(SemigroupError::Empty);
        }
        if gens.contains(&0) {
            return Err(SemigroupError::ZeroGenerator);
        }
        let g = gens.iter().fold(0u32, |acc, &x| num_integer::gcd(acc, x));
        if g != 1 {
            return Err(SemigroupError::NotCofinite(gens.to_vec()));
        }
        let mut sorted = gens.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let e = sorted[0] as usize;

        // sieve until `e` consecutive members appear; everything after is in H
        let mut members = vec![true];
        let mut run = 1usize;
        let mut n = 1usize;
        while run < e {
            let m = sorted.iter().any(|&g| {
                let g = g as usize;
                g <= n && members[n - g]
            });
            members.push(m);
            run = if m { run + 1 } else { 0 };
            n += 1;
        }
        let frobenius = members.iter().rposition(|&m| !m).map_or(-1, |p| p as i64);
        Ok(Self::from_membership(members, frobenius))
    }

    /// The full monoid ℕ (the semigroup of a DVR).
    pub fn naturals() -> Self {
        Self::from_membership(vec![true], -1)
    }

    /// Builds `H` from a gap set, returning `None` if the complement is not
    /// closed under addition.
    pub fn from_gaps(gaps: &[u32]) -> Option<Self> {
        let frobenius = gaps.iter().copied().max().map_or(-1, i64::from);
        let len = (frobenius + 1) as usize;
        let mut members = vec![true; len];
        for &g in gaps {
            if g == 0 {
                return None;
            }
            members[g as usize] = false;
        }
        for a in 1..len {
            for b in a..len - a {
                if members[a] && members[b] && !members[a + b] {
                    return None;
                }
            }
        }
        Some(Self::from_membership(members, frobenius))
    }

    fn from_membership(mut members: Vec<bool>, frobenius: i64) -> Self {
        members.truncate((frobenius + 1).max(1) as usize);
        let contains = |n: i64| n >= 0 && (n > frobenius || members[n as usize]);
        let gaps: Vec<u32> = (1..=frobenius).filter(|&n| !contains(n)).map(|n| n as u32).collect();
        let mult = (1..).find(|&n| contains(n)).unwrap();
        // minimal generators never exceed F + e + 1
        let mut gens = Vec::new();
        for n in 1..=frobenius + mult + 1 {
            if !contains(n) {
                continue;
            }
            let decomposable = (1..=n / 2).any(|a| contains(a) && contains(n - a));
            if !decomposable {
                gens.push(n as u32);
            }
        }
        let top = (frobenius + gens.last().copied().unwrap_or(1) as i64 + 1) as usize;
        let members = (0..=top as i64).map(contains).collect();
        NumericalSemigroup { gens, frobenius, gaps, members }
    }

    pub fn contains(&self, n: i64) -> bool {
        if n < 0 {
            false
        } else if n > self.frobenius {
            true
        } else {
            self.members[n as usize]
        }
    }

    /// Minimal generators, sorted.
    pub fn generators(&self) -> &[u32] {
        &self.gens
    }

    pub fn frobenius(&self) -> i64 {
        self.frobenius
    }

    pub fn gaps(&self) -> &[u32] {
        &self.gaps
    }

    pub fn genus(&self) -> usize {
        self.gaps.len()
    }

    /// Smallest nonzero member.
    pub fn multiplicity(&self) -> u32 {
        self.gens[0]
    }

    pub fn embedding_dimension(&self) -> usize {
        self.gens.len()
    }

    pub fn max_generator(&self) -> u32 {
        *self.gens.last().unwrap()
    }

    pub fn is_dvr(&self) -> bool {
        self.frobenius == -1
    }

    /// Smallest `c ≥ 1` with every integer `≥ c` in `H ∖ {0}`.
    pub fn maximal_ideal_conductor(&self) -> i64 {
        (self.frobenius + 1).max(1)
    }

    /// `PF(H) = {x ∉ H : x + (H ∖ {0}) ⊆ H}`; empty for ℕ.
    pub fn pseudo_frobenius(&self) -> Vec<i64> {
        self.gaps
            .iter()
            .map(|&x| x as i64)
            .filter(|&x| self.gens.iter().all(|&g| self.contains(x + g as i64)))
            .collect()
    }

    /// Cohen–Macaulay type `#PF(H)`, with `r = 1` for ℕ.
    pub fn cm_type(&self) -> usize {
        if self.is_dvr() {
            1
        } else {
            self.pseudo_frobenius().len()
        }
    }

    pub fn invariants(&self) -> SemigroupInvariants {
        SemigroupInvariants {
            multiplicity: self.multiplicity(),
            embedding_dimension: self.embedding_dimension(),
            frobenius: self.frobenius,
            genus: self.genus(),
            pseudo_frobenius: self.pseudo_frobenius(),
            cm_type: self.cm_type(),
        }
    }

    /// Members of `H` in `[lo, hi)`.
    pub fn members_in(&self, lo: i64, hi: i64) -> impl Iterator<Item = i64> + '_ {
        (lo..hi).filter(|&n| self.contains(n))
    }

    /// Comma-separated text form, e.g. `3,4,5`.
    pub fn to_text(&self) -> String {
        join(&self.gens)
    }
}

/// `(e, v, F, genus, PF, r)` of a semigroup.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemigroupInvariants {
    pub multiplicity: u32,
    pub embedding_dimension: usize,
    pub frobenius: i64,
    pub genus: usize,
    pub pseudo_frobenius: Vec<i64>,
    pub cm_type: usize,
}

impl fmt::Debug for NumericalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{}⟩", self.to_text())
    }
}

impl fmt::Display for NumericalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{}⟩", self.to_text())
    }
}

impl FromStr for NumericalSemigroup {
    type Err = SemigroupError;

    /// Accepts `3,4,5` and the displayed form `⟨3,4,5⟩`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let s = s.strip_prefix('⟨').and_then(|t| t.strip_suffix('⟩')).unwrap_or(s);
        let gens = s
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                tok.parse::<u32>().map_err(|_| SemigroupError::Parse(tok.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_generators(&gens)
    }
}

impl PartialOrd for NumericalSemigroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by genus, then lexicographically by minimal generators.
impl Ord for NumericalSemigroup {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.genus(), &self.gens).cmp(&(other.genus(), &other.gens))
    }
}

impl Serialize for NumericalSemigroup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.gens.serialize(s)
    }
}

impl<'de> Deserialize<'de> for NumericalSemigroup {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let gens = Vec::<u32>::deserialize(d)?;
        Self::from_generators(&gens).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sg(g: &[u32]) -> NumericalSemigroup {
        NumericalSemigroup::from_generators(g).unwrap()
    }

    /// Additive closure sieve up to a fixed bound, kept separate from the
    /// incremental sieve used by the constructor.
    fn sieve(gens: &[u32], bound: usize) -> Vec<bool> {
        let mut m = vec![false; bound];
        m[0] = true;
        for n in 1..bound {
            m[n] = gens.iter().any(|&g| g as usize <= n && m[n - g as usize]);
        }
        m
    }

    #[test]
    fn three_four_five() {
        let h = sg(&[3, 4, 5]);
        let m = sieve(&[3, 4, 5], 10);
        let gaps: Vec<u32> = (0..10).filter(|&n| !m[n]).map(|n| n as u32).collect();
        assert_eq!(gaps, vec![1, 2]);
        assert_eq!(h.gaps(), &gaps[..]);
        assert_eq!(h.frobenius(), 2);
        assert_eq!(h.generators(), &[3, 4, 5]);
    }

    #[test]
    fn naturals_and_redundant_generators() {
        let n = sg(&[1]);
        assert_eq!(n, NumericalSemigroup::naturals());
        assert_eq!(n.frobenius(), -1);
        assert!(n.gaps().is_empty());
        assert!(n.is_dvr());
        assert_eq!(sg(&[3, 4, 5, 6, 7, 8]).generators(), &[3, 4, 5]);
        assert_eq!(sg(&[2, 3, 1]), n);
    }

    #[test]
    fn not_cofinite() {
        let err = NumericalSemigroup::from_generators(&[2, 4]).unwrap_err();
        assert_eq!(err, SemigroupError::NotCofinite(vec![2, 4]));
        assert_eq!(err.to_string(), "gcd(2,4) ≠ 1");
        assert_eq!(NumericalSemigroup::from_generators(&[]), Err(SemigroupError::Empty));
        assert_eq!(NumericalSemigroup::from_generators(&[0, 1]), Err(SemigroupError::ZeroGenerator));
    }

    #[test]
    fn invariants_brute_force_pf() {
        for (gens, f, pf) in [(&[3u32, 4, 5][..], 2, vec![1, 2]), (&[3, 7, 8][..], 5, vec![4, 5])] {
            let h = sg(gens);
            let m = sieve(gens, 40);
            let inh = |x: i64| x >= 0 && m[x as usize];
            let brute: Vec<i64> = (0..20)
                .filter(|&x| !inh(x) && (1..20).filter(|&y| inh(y)).all(|y| inh(x + y)))
                .collect();
            assert_eq!(brute, pf);
            let inv = h.invariants();
            assert_eq!(inv.frobenius, f);
            assert_eq!(inv.pseudo_frobenius, pf);
            assert_eq!(inv.cm_type, pf.len());
        }
        let inv = sg(&[3, 4, 5]).invariants();
        assert_eq!((inv.multiplicity, inv.embedding_dimension, inv.genus), (3, 3, 2));
        let dvr = NumericalSemigroup::naturals().invariants();
        assert_eq!((dvr.multiplicity, dvr.embedding_dimension, dvr.frobenius, dvr.genus, dvr.cm_type), (1, 1, -1, 0, 1));
        assert!(dvr.pseudo_frobenius.is_empty());
    }

    #[test]
    fn parse_text_form() {
        let h: NumericalSemigroup = "3, 4,5".parse().unwrap();
        assert_eq!(h.to_text(), "3,4,5");
        assert_eq!("3,x".parse::<NumericalSemigroup>(), Err(SemigroupError::Parse("x".into())));
    }

    #[test]
    fn from_gaps_round_trip() {
        assert_eq!(NumericalSemigroup::from_gaps(&[1, 2]), Some(sg(&[3, 4, 5])));
        assert_eq!(NumericalSemigroup::from_gaps(&[1, 3]), Some(sg(&[2, 5])));
        assert_eq!(NumericalSemigroup::from_gaps(&[2]), None);
        assert_eq!(NumericalSemigroup::from_gaps(&[]), Some(NumericalSemigroup::naturals()));
    }
}
