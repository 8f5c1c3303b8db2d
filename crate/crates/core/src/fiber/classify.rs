use serde::{Deserialize, Serialize};

use crate::scalar::Field;
use crate::semigroup::{RingClassification, RingFlags};
use crate::window::iso_test;

use super::{CanonicalIdeal, FiberError, FiberRing, Provenance};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiberFlags {
    pub gorenstein: bool,
    pub almost_gorenstein: bool,
    pub generalized_gorenstein: bool,
    pub two_almost_gorenstein: bool,
    pub nearly_gorenstein: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberLengths {
    /// `ℓ(X/A)`
    pub len_x_mod_a: usize,
    /// `ℓ(A/𝔠_A)` with `𝔠_A = A : A[X]`
    pub len_a_mod_c: usize,
    /// `μ(X/A) = ℓ(X/(JX + A))`
    pub mu_x_mod_a: usize,
}

/// Classification of `A = R ×_k S`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberClassification {
    pub gens: [Vec<u32>; 2],
    pub e: usize,
    pub v: usize,
    pub r: usize,
    pub flags: FiberFlags,
    pub lengths: FiberLengths,
    pub predicted: FiberFlags,
    pub direct: FiberFlags,
    pub agree: bool,
    /// `JX ≅ J`, tested up to isomorphism on the unnormalized candidate
    /// when there is one.
    pub almost_gorenstein_iso: bool,
    pub provenance: Provenance,
    pub left: RingClassification,
    pub right: RingClassification,
}

/// Flags of `A` read off those of the two factors.
pub fn predicted_flags(left: &RingFlags, right: &RingFlags) -> FiberFlags {
    let ag = left.almost_gorenstein && right.almost_gorenstein;
    FiberFlags {
        gorenstein: left.is_dvr && right.is_dvr,
        almost_gorenstein: ag,
        generalized_gorenstein: ag,
        two_almost_gorenstein: (left.two_almost_gorenstein && right.almost_gorenstein)
            || (left.almost_gorenstein && right.two_almost_gorenstein),
        nearly_gorenstein: left.nearly_gorenstein && right.nearly_gorenstein,
    }
}

/// Direct flags of `A` from a normalized canonical ideal `X`, compared with
/// the predicted ones.
pub fn classify_fiber<F: Field>(f: &FiberRing<F>, x: &CanonicalIdeal<F>, seed: u64) -> Result<FiberClassification, FiberError> {
    if !x.normalized {
        return Err(FiberError::Invariant("canonical ideal is not normalized".into()));
    }
    let w = &f.window;
    let (a, j, xm) = (&f.a, &f.j, &x.x);
    let jx = w.product(j, xm)?;
    let ag_eq = &jx == j;
    let raw = x.witness.as_ref().map(|d| &d.raw).unwrap_or(xm);
    let ag_iso = iso_test(w, &w.product(j, raw)?, j, seed)?.is_isomorphic();
    if ag_eq != ag_iso {
        return Err(FiberError::Invariant(format!("JX = J is {ag_eq} but JX ≅ J is {ag_iso}")));
    }

    let closure = w.ring_closure(xm)?;
    let cond = w.colon(a, &closure)?;
    let len_a_mod_c = w.length(a, &cond)?;
    let len_x_mod_a = w.length(xm, a)?;
    let mu_x_mod_a = w.length(xm, &w.sum(&jx, a)?)?;
    let trace = w.product(&w.colon(a, xm)?, xm)?;

    let gorenstein = f.invariants.r == 1;
    let direct = FiberFlags {
        gorenstein,
        almost_gorenstein: ag_eq,
        generalized_gorenstein: gorenstein || len_x_mod_a == mu_x_mod_a * len_a_mod_c,
        two_almost_gorenstein: len_a_mod_c == 2,
        nearly_gorenstein: w.contains(&trace, j),
    };
    let [left, right] = f.classes.clone();
    let predicted = predicted_flags(&left.flags, &right.flags);
    Ok(FiberClassification {
        gens: [left.gens.clone(), right.gens.clone()],
        e: f.invariants.e,
        v: f.invariants.v,
        r: f.invariants.r,
        flags: direct,
        lengths: FiberLengths { len_x_mod_a, len_a_mod_c, mu_x_mod_a },
        predicted,
        direct,
        agree: predicted == direct,
        almost_gorenstein_iso: ag_iso,
        provenance: x.provenance,
        left,
        right,
    })
}
