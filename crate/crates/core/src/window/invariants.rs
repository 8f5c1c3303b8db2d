use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::scalar::{Field, FieldMode};

use super::element::Element;
use super::module::{BranchWindow, WindowSubmodule};
use super::WindowError;

/// Embedding dimension, multiplicity and type of `A`, with the raw data
/// behind them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingInvariants {
    pub v: usize,
    pub e: usize,
    pub r: usize,
    /// `ℓ(J^n / J^{n+1})` for `n = 0, 1, …` up to stabilization.
    pub hilbert_differences: Vec<usize>,
    /// Type measured with a second parameter `x'`.
    pub r_alternate: usize,
    /// `ℓ((A:J)/A)`
    pub r_dual: usize,
}

/// Smallest member of `H` exceeding `n`.
fn next_member(h: &crate::semigroup::NumericalSemigroup, n: i64) -> i64 {
    (n + 1..).find(|&m| h.contains(m)).unwrap()
}

fn type_with<F: Field>(w: &BranchWindow<F>, x: &Element<F>) -> Result<usize, WindowError> {
    let a = w.ring();
    let xa = w.scale(a, x)?;
    let soc = w.colon(&xa, w.maximal())?;
    let soc = w.intersection(&soc, a)?;
    w.length(&soc, &xa)
}

/// `v = ℓ(J/J²)`, `e` from the Hilbert function of `J` (stopping once
/// `x·J^n = J^{n+1}` for `x = (t^{e₁}, s^{e₂})`), and
/// `r = ℓ(((xA : J) ∩ A)/xA)`.
pub fn ring_invariants<F: Field>(w: &BranchWindow<F>) -> Result<RingInvariants, WindowError> {
    let j = w.maximal();
    let [e1, e2] = w.multiplicities();
    let x = Element::pair(e1, e2, w.params());
    let j2 = w.product(j, j)?;
    let v = w.length(j, &j2)?;

    // powers of J outgrow the window quickly; widen it as needed
    let mut big = w.clone();
    let mut diffs = vec![1, v];
    let mut jn = j2;
    let mut prev = j.clone();
    let e = loop {
        if big.scale(&prev, &x)? == jn {
            break *diffs.last().unwrap();
        }
        if diffs.len() > 4 * (e1 + e2) as usize + 8 {
            return Err(WindowError::PrecisionExhausted {
                order: jn.order(),
                tail: jn.tail(),
                bound: big.config().bound,
                neg_offset: big.config().neg_offset,
            });
        }
        let next = loop {
            match big.product(&jn, j) {
                Ok(p) => break p,
                Err(WindowError::PrecisionExhausted { .. }) => big = big.resized(big.config().bound * 2, big.config().neg_offset),
                Err(e) => return Err(e),
            }
        };
        diffs.push(big.length(&jn, &next)?);
        prev = std::mem::replace(&mut jn, next);
    };

    let r = type_with(w, &x)?;
    let a1 = next_member(w.semigroup(0), e1);
    let a2 = next_member(w.semigroup(1), e2);
    let r_alternate = type_with(w, &Element::pair(a1, a2, w.params()))?;
    let a = w.ring();
    let r_dual = w.length(&w.colon(a, j)?, a)?;
    Ok(RingInvariants { v, e, r, hilbert_differences: diffs, r_alternate, r_dual })
}

/// Why two submodules were declared non-isomorphic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Obstruction {
    /// `μ(M) ≠ μ(M')`
    Generators(usize, usize),
    /// `ℓ((M:J)/M) ≠ ℓ((M':J)/M')`
    Socle(usize, usize),
    /// `M:M ≠ M':M'`
    Endomorphisms,
    /// `M' : M` has no element regular on both branches.
    NoMultiplier,
    /// No multiplier among the sweep and the random trials worked.
    Exhausted,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoOutcome<F: Field> {
    /// `q·M = M'`
    Isomorphic { witness: Element<F> },
    NotIsomorphic(Obstruction),
    /// Only over a prime field: trials ran out without a witness.
    Inconclusive,
}

impl<F: Field> IsoOutcome<F> {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, IsoOutcome::Isomorphic { .. })
    }
}

/// Random combinations tried after the deterministic sweep.
pub const ISO_TRIALS: usize = 32;

/// Decides `M ≅ M'` by searching `M' : M` for a multiplier `q` with `qM = M'`.
///
/// Whether `qM = M'` depends only on `q` modulo `J·(M':M)`, so candidates are
/// drawn from the span of the minimal generators of `M' : M`.
pub fn iso_test<F: Field>(
    w: &BranchWindow<F>,
    m: &WindowSubmodule<F>,
    n: &WindowSubmodule<F>,
    seed: u64,
) -> Result<IsoOutcome<F>, WindowError> {
    if m == n {
        return Ok(IsoOutcome::Isomorphic { witness: Element::unit(w.params()) });
    }
    let (gm, gn) = (w.num_generators(m)?, w.num_generators(n)?);
    if gm != gn {
        return Ok(IsoOutcome::NotIsomorphic(Obstruction::Generators(gm, gn)));
    }
    let j = w.maximal();
    let (sm, sn) = (w.length(&w.colon(m, j)?, m)?, w.length(&w.colon(n, j)?, n)?);
    if sm != sn {
        return Ok(IsoOutcome::NotIsomorphic(Obstruction::Socle(sm, sn)));
    }
    if w.colon(m, m)? != w.colon(n, n)? {
        return Ok(IsoOutcome::NotIsomorphic(Obstruction::Endomorphisms));
    }
    let q = w.colon(n, m)?;
    let gens = w.generators(&q)?;
    let works = |c: &Element<F>| -> Result<bool, WindowError> {
        if c.order(0).is_none() || c.order(1).is_none() {
            return Ok(false);
        }
        Ok(&w.scale(m, c)? == n)
    };
    // a multiplier must have order o(M') − o(M) on each branch
    let want = [n.order()[0] - m.order()[0], n.order()[1] - m.order()[1]];
    let useful: Vec<&Element<F>> = gens
        .iter()
        .filter(|g| (0..2).any(|b| g.order(b as u16) == Some(want[b])))
        .collect();
    if useful.is_empty() {
        return Ok(IsoOutcome::NotIsomorphic(Obstruction::NoMultiplier));
    }
    for g in &useful {
        if works(g)? {
            return Ok(IsoOutcome::Isomorphic { witness: (*g).clone() });
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..ISO_TRIALS {
        let mut c = Element::zero();
        for g in gens.iter() {
            let lam = w.scalar(rng.gen_range(1..=1_000_000));
            c = c.axpy(&lam, g);
        }
        if works(&c)? {
            return Ok(IsoOutcome::Isomorphic { witness: c });
        }
    }
    Ok(match w.config().field {
        FieldMode::Rational => IsoOutcome::NotIsomorphic(Obstruction::Exhausted),
        FieldMode::Prime(_) => IsoOutcome::Inconclusive,
    })
}
