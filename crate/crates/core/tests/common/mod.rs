//! Brute-force single-ring oracle on plain integer sets.
#![allow(dead_code)]

use std::collections::BTreeSet;

/// A numerical semigroup stored as its gap set.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Gaps(pub BTreeSet<i64>);

impl Gaps {
    pub fn frobenius(&self) -> i64 {
        self.0.iter().next_back().copied().unwrap_or(-1)
    }

    pub fn contains(&self, z: i64) -> bool {
        z >= 0 && !self.0.contains(&z)
    }

    /// Minimal generators: nonzero members that are not a sum of two nonzero members.
    pub fn generators(&self) -> Vec<i64> {
        let f = self.frobenius();
        let top = f + self.multiplicity() + 2;
        (1..top)
            .filter(|&x| self.contains(x) && !(1..x).any(|y| self.contains(y) && self.contains(x - y)))
            .collect()
    }

    pub fn multiplicity(&self) -> i64 {
        (1..).find(|&x| self.contains(x)).unwrap()
    }
}

/// All semigroups of genus ≤ `g`, by removing generators above the Frobenius number.
pub fn enumerate(g: usize) -> Vec<Gaps> {
    let mut out = vec![Gaps(BTreeSet::new())];
    let mut level = out.clone();
    for _ in 0..g {
        let mut next = Vec::new();
        for h in &level {
            let f = h.frobenius();
            for x in h.generators() {
                if x > f {
                    let mut gaps = h.0.clone();
                    gaps.insert(x);
                    next.push(Gaps(gaps));
                }
            }
        }
        out.extend(next.iter().cloned());
        level = next;
    }
    out
}

/// Finite membership table on `[0, len)`; every integer `≥ len` is a member.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Set {
    bits: Vec<bool>,
}

impl Set {
    fn from_fn(len: usize, f: impl Fn(i64) -> bool) -> Set {
        Set { bits: (0..len as i64).map(f).collect() }
    }

    fn has(&self, z: i64) -> bool {
        z >= self.bits.len() as i64 || (z >= 0 && self.bits[z as usize])
    }

    fn plus(&self, other: &Set) -> Set {
        let n = self.bits.len();
        Set::from_fn(n, |z| (0..=z).any(|a| self.has(a) && other.has(z - a)))
    }

    fn subset_of(&self, other: &Set) -> bool {
        (0..self.bits.len() as i64).all(|z| !self.has(z) || other.has(z))
    }

    fn minus_count(&self, other: &Set) -> usize {
        (0..self.bits.len() as i64).filter(|&z| self.has(z) && !other.has(z)).count()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleFlags {
    pub gorenstein: bool,
    pub almost_gorenstein: bool,
    pub almost_gorenstein_gap: bool,
    pub generalized_gorenstein: bool,
    pub two_almost_gorenstein: bool,
    pub two_almost_gorenstein_conductor: bool,
    pub nearly_gorenstein: bool,
    pub is_dvr: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleRing {
    pub gens: Vec<u32>,
    pub e: u32,
    pub v: usize,
    pub frobenius: i64,
    pub genus: usize,
    pub r: usize,
    pub flags: OracleFlags,
    pub len_k_mod_r: usize,
    pub len_r_mod_c: usize,
}

/// Evaluates every classifier on `k[[H]]` straight from the definitions.
pub fn oracle(h: &Gaps) -> OracleRing {
    let f = h.frobenius();
    let len = (4 * (f + 1) + 2 * h.multiplicity() + 4) as usize;
    let ring = Set::from_fn(len, |z| h.contains(z));
    let max = Set::from_fn(len, |z| z > 0 && h.contains(z));
    let k = Set::from_fn(len, |z| z >= 0 && !h.contains(f - z));
    let k2 = k.plus(&k);
    let k3 = k2.plus(&k);

    let pf: Vec<i64> = (0..=f)
        .filter(|&x| !h.contains(x) && (1..=f + 1).all(|m| !h.contains(m) || h.contains(x + m)))
        .collect();

    let gorenstein = k == ring;
    let mk = max.plus(&k);
    let almost_gorenstein = mk.subset_of(&max);
    let almost_gorenstein_gap = (0..=f).filter(|&x| !h.contains(x)).all(|x| h.contains(f - x) || pf.contains(&x));

    // R[K] is the ascending union of the powers of K.
    let mut blowup = k.clone();
    loop {
        let next = blowup.plus(&k);
        if next == blowup {
            break;
        }
        blowup = next;
    }
    let conductor = Set::from_fn(len, |z| {
        (0..len as i64).all(|b| !blowup.has(b) || ring.has(z + b)) && ring.has(z)
    });
    let len_r_mod_c = ring.minus_count(&conductor);
    let len_k_mod_r = k.minus_count(&ring);

    let trace_colon = Set::from_fn(len, |z| (0..len as i64).all(|b| !k.has(b) || ring.has(z + b)));
    let trace = trace_colon.plus(&k);
    let nearly_gorenstein = max.subset_of(&trace);

    let floor: Vec<i64> = (0..len as i64).filter(|&z| k.has(z) && !ring.has(z) && !mk.has(z)).collect();
    let free = (0..len as i64 + f + 2).all(|d| {
        let source = floor.iter().filter(|&&g| ring.has(d - g) && !conductor.has(d - g)).count();
        let target = usize::from(k.has(d) && !ring.has(d));
        source == target
    });

    let gens = h.generators();
    OracleRing {
        e: h.multiplicity() as u32,
        v: gens.len(),
        gens: gens.iter().map(|&g| g as u32).collect(),
        frobenius: f,
        genus: h.0.len(),
        r: pf.len().max(1),
        flags: OracleFlags {
            gorenstein,
            almost_gorenstein,
            almost_gorenstein_gap,
            generalized_gorenstein: gorenstein || free,
            two_almost_gorenstein: k2 == k3 && k2.minus_count(&k) == 2,
            two_almost_gorenstein_conductor: len_r_mod_c == 2,
            nearly_gorenstein,
            is_dvr: h.0.is_empty(),
        },
        len_k_mod_r,
        len_r_mod_c,
    }
}
