//! The fiber product `A = R ×_k S` of two numerical-semigroup rings, its
//! fractional canonical ideals, and its classification.

mod canonical;
mod classify;

use thiserror::Error;

use crate::scalar::Field;
use crate::semigroup::{classify_ring, RelativeIdealZ, RingClassification, RingStructure};
use crate::window::{ring_invariants, BranchWindow, Element, RingInvariants, WindowConfig, WindowError, WindowSubmodule};

pub use canonical::{
    canonical, canonical_dvr, canonical_socle_sum, canonical_search, negative_controls, probe_family, validate_canonical,
    CanonicalIdeal, DvrWitness, Provenance, ValidationItem, ValidationReport,
};
pub use classify::{classify_fiber, predicted_flags, FiberClassification, FiberFlags, FiberLengths};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FiberError {
    #[error(transparent)]
    Window(#[from] WindowError),
    #[error("construction does not apply: {0}")]
    NotApplicable(&'static str),
    #[error("candidate failed validation: {0}")]
    ValidationFailed(String),
    #[error("could not normalize the canonical ideal after {0} attempts")]
    NormalizationFailed(usize),
    #[error("no canonical candidate among {0} tried")]
    SearchExhausted(usize),
    #[error("fiber product invariant violated: {0}")]
    Invariant(String),
}

/// `A = R ×_k S` inside the window algebra, with the data of both factors.
#[derive(Clone, Debug)]
pub struct FiberRing<F: Field> {
    pub window: BranchWindow<F>,
    pub a: WindowSubmodule<F>,
    pub j: WindowSubmodule<F>,
    /// `R × S`
    pub b: WindowSubmodule<F>,
    /// `R̄ × S̄`
    pub abar: WindowSubmodule<F>,
    pub sides: [RingStructure; 2],
    pub classes: [RingClassification; 2],
    pub invariants: RingInvariants,
}

impl<F: Field> FiberRing<F> {
    pub fn side(&self, b: usize) -> &RingStructure {
        &self.sides[b]
    }

    pub fn is_dvr(&self, b: usize) -> bool {
        self.classes[b].flags.is_dvr
    }

    /// `E₀ × E₁` as a submodule.
    pub fn pair(&self, e0: &RelativeIdealZ, e1: &RelativeIdealZ) -> Result<WindowSubmodule<F>, WindowError> {
        self.window.monomial(e0, e1)
    }

    /// `E_b` on branch `b` and `E_o` on the other one.
    pub fn pair_on(&self, b: usize, eb: &RelativeIdealZ, eo: &RelativeIdealZ) -> Result<WindowSubmodule<F>, WindowError> {
        if b == 0 {
            self.pair(eb, eo)
        } else {
            self.pair(eo, eb)
        }
    }

    /// The element with component `xb` on branch `b` and `xo` on the other.
    pub fn element_on(&self, b: usize, xb: &Element<F>, xo: &Element<F>) -> Element<F> {
        let (b, o) = (b as u16, 1 - b as u16);
        let lift = |x: &Element<F>, to: u16| {
            Element::from_terms(x.terms().iter().map(|(m, c)| (crate::window::Mono::new(to, m.deg), c.clone())).collect())
        };
        lift(xb, b).add(&lift(xo, o))
    }
}

/// Builds `A` and its companions and checks the basic structure: `J` is
/// the unique maximal ideal, `A` is a ring, `ℓ(B/A) = 1`.
pub fn build_fiber<F: Field>(config: WindowConfig, params: F::Params) -> Result<FiberRing<F>, FiberError> {
    // the battery's colons reach well below -D; submodules are exact, so a
    // wider working guard changes no value
    let max_f = config.left.frobenius().max(config.right.frobenius());
    let max_g = config.left.max_generator().max(config.right.max_generator()) as i64;
    let neg = config.neg_offset.max(4 * (max_f + 2) + max_g);
    let window = BranchWindow::<F>::new(config.clone(), params)?.resized(config.bound + neg, neg);
    let sides = [RingStructure::new(&config.left), RingStructure::new(&config.right)];
    let classes = [classify_ring(&config.left), classify_ring(&config.right)];
    let a = window.ring().clone();
    let j = window.maximal().clone();
    let b = window.monomial(&sides[0].ring, &sides[1].ring)?;
    let nat = RelativeIdealZ::upward(0);
    let abar = window.monomial(&nat, &nat)?;

    let check = |ok: bool, what: &str| if ok { Ok(()) } else { Err(FiberError::Invariant(what.to_string())) };
    check(window.length(&a, &j)? == 1, "ℓ(A/J) = 1")?;
    check(window.length(&b, &a)? == 1, "ℓ(B/A) = 1")?;
    check(window.product(&a, &a)? == a, "A·A = A")?;
    check(window.contains(&abar, &b), "B ⊆ Ā")?;

    let invariants = match ring_invariants(&window) {
        Ok(inv) => inv,
        Err(WindowError::PrecisionExhausted { .. }) => {
            let c = window.config();
            ring_invariants(&window.resized(2 * c.bound, c.neg_offset))?
        }
        Err(e) => return Err(e.into()),
    };
    Ok(FiberRing { window, a, j, b, abar, sides, classes, invariants })
}
