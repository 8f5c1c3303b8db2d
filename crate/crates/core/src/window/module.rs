use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::scalar::Field;
use crate::semigroup::{NumericalSemigroup, RelativeIdealZ};

use super::echelon::{kernel, Echelon};
use super::element::{Element, Mono};
use super::{WindowConfig, WindowError};

/// A fractional `A`-submodule `M` of `k((t)) × k((s))`.
///
/// Stored exactly as `M = core ⊕ T_γ`, where `T_γ` is every pure monomial of
/// degree `≥ γ_b` in branch `b` and `core = M ∩ span(degree < γ)` in reduced
/// echelon form. `γ` is minimal and `order` is the least degree of each
/// projection, so two submodules are equal iff their fields are.
#[derive(Clone)]
pub struct WindowSubmodule<F: Field> {
    order: [i64; 2],
    tail: [i64; 2],
    core: Echelon<F>,
    gens: OnceLock<Arc<Vec<Element<F>>>>,
}

impl<F: Field> PartialEq for WindowSubmodule<F> {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.tail == other.tail && self.core == other.core
    }
}

impl<F: Field> Eq for WindowSubmodule<F> {}

impl<F: Field> WindowSubmodule<F> {
    pub fn order(&self) -> [i64; 2] {
        self.order
    }

    pub fn tail(&self) -> [i64; 2] {
        self.tail
    }

    pub fn core(&self) -> &[Element<F>] {
        self.core.rows()
    }

    /// Whether the core has only monomial rows, i.e. `M = E₁ × E₂`.
    pub fn is_monomial(&self) -> bool {
        self.core.rows().iter().all(|r| r.terms().len() == 1)
    }

    /// `dim_k (M ∩ span(degree < bound))` for `bound ≥ tail`.
    fn dim_below(&self, bound: [i64; 2]) -> usize {
        self.core.rank() + (0..2).map(|b| (bound[b] - self.tail[b]) as usize).sum::<usize>()
    }

    /// Core rows together with the tail monomials below `bound`.
    fn rows_below(&self, bound: [i64; 2], params: &F::Params) -> Vec<Element<F>> {
        let mut rows: Vec<Element<F>> = self.core.rows().to_vec();
        for b in 0..2u16 {
            for d in self.tail[b as usize]..bound[b as usize] {
                rows.push(Element::monomial(b, d, F::one(params)));
            }
        }
        rows
    }

    /// Degrees of branch `b` that are members, as a relative ideal; only
    /// meaningful for monomial submodules.
    pub fn branch_degrees(&self, b: usize) -> RelativeIdealZ {
        let o = self.order[b];
        let hi = self.tail[b];
        let core = &self.core;
        RelativeIdealZ::from_fn(o, hi, |d| {
            d >= hi || core.rows().iter().any(|r| r.terms().len() == 1 && r.terms()[0].0 == Mono::new(b as u16, d))
        })
    }
}

impl<F: Field> fmt::Debug for WindowSubmodule<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<F: Field> fmt::Display for WindowSubmodule<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.core.rows().iter().map(|r| r.to_string()).collect();
        write!(
            f,
            "⟨{}⟩ + T(t ≥ {}, s ≥ {})",
            rows.join(", "),
            self.tail[0],
            self.tail[1]
        )
    }
}

/// The two-branch Laurent window over a concrete field.
#[derive(Clone, Debug)]
pub struct BranchWindow<F: Field> {
    config: WindowConfig,
    params: F::Params,
    /// `max(F_b + 1, 1)`: every `t^d`, `d ≥ c₁`, lies in `𝔪 × 0` and so on.
    conductor: [i64; 2],
    multiplicity: [i64; 2],
    multipliers: Vec<Element<F>>,
    ring: WindowSubmodule<F>,
    maximal: WindowSubmodule<F>,
}

impl<F: Field> BranchWindow<F> {
    pub fn new(config: WindowConfig, params: F::Params) -> Result<Self, WindowError> {
        let hs = [config.left.clone(), config.right.clone()];
        let conductor = [hs[0].maximal_ideal_conductor(), hs[1].maximal_ideal_conductor()];
        let multiplicity = [hs[0].multiplicity() as i64, hs[1].multiplicity() as i64];
        let mut multipliers = Vec::new();
        for (b, h) in hs.iter().enumerate() {
            for &g in h.generators() {
                multipliers.push(Element::monomial(b as u16, g as i64, F::one(&params)));
            }
        }
        let placeholder = WindowSubmodule {
            order: [0, 0],
            tail: [0, 0],
            core: Echelon::new(),
            gens: OnceLock::new(),
        };
        let mut w = BranchWindow {
            config,
            params,
            conductor,
            multiplicity,
            multipliers,
            ring: placeholder.clone(),
            maximal: placeholder,
        };
        w.ring = w.from_generators(&[Element::unit(&w.params)], &[])?;
        let m = RelativeIdealZ::maximal_ideal(&hs[0]);
        let n = RelativeIdealZ::maximal_ideal(&hs[1]);
        let maximal = w.monomial(&m, &n)?;
        let _ = maximal.gens.set(Arc::new(w.multipliers.clone()));
        w.maximal = maximal;
        Ok(w)
    }

    /// The same window with other degree bounds. Submodules do not depend on
    /// the bounds, so values computed in either window are interchangeable.
    pub fn resized(&self, bound: i64, neg_offset: i64) -> Self {
        let mut w = self.clone();
        w.config.bound = bound;
        w.config.neg_offset = neg_offset;
        w
    }

    pub fn config(&self) -> &WindowConfig {
        &self.config
    }

    pub fn params(&self) -> &F::Params {
        &self.params
    }

    pub fn semigroup(&self, b: usize) -> &NumericalSemigroup {
        if b == 0 {
            &self.config.left
        } else {
            &self.config.right
        }
    }

    pub fn multiplicities(&self) -> [i64; 2] {
        self.multiplicity
    }

    pub fn one(&self) -> F {
        F::one(&self.params)
    }

    pub fn scalar(&self, n: i64) -> F {
        F::from_i64(n, &self.params)
    }

    /// `(c₁·t^a, c₂·s^b)`; a zero coefficient drops that component.
    pub fn element(&self, a: i64, c1: i64, b: i64, c2: i64) -> Element<F> {
        Element::monomial(0, a, self.scalar(c1)).add(&Element::monomial(1, b, self.scalar(c2)))
    }

    /// `A = R ×_k S`.
    pub fn ring(&self) -> &WindowSubmodule<F> {
        &self.ring
    }

    /// `J = 𝔪 × 𝔫`.
    pub fn maximal(&self) -> &WindowSubmodule<F> {
        &self.maximal
    }

    fn guard(&self, order: [i64; 2], tail: [i64; 2]) -> Result<(), WindowError> {
        let (n, d) = (self.config.bound, self.config.neg_offset);
        if order.iter().any(|&o| o < -d) || tail.iter().any(|&t| t > n) {
            return Err(WindowError::PrecisionExhausted { order, tail, bound: n, neg_offset: d });
        }
        Ok(())
    }

    /// Builds the canonical form from spanning rows of `M ∩ span(< tail)`,
    /// given that `T_tail ⊆ M`.
    fn finish(&self, rows: impl IntoIterator<Item = Element<F>>, mut tail: [i64; 2]) -> Result<WindowSubmodule<F>, WindowError> {
        let mut core = Echelon::from_vectors(rows.into_iter().map(|r| r.truncate(tail)));
        // shrink the tail while the monomial just below it is a member; in
        // reduced form that monomial must then be a row by itself
        for b in 0..2u16 {
            while core.remove_monomial(Mono::new(b, tail[b as usize] - 1)) {
                tail[b as usize] -= 1;
            }
        }
        let mut order = tail;
        for r in core.rows() {
            for (b, slot) in order.iter_mut().enumerate() {
                if let Some(o) = r.order(b as u16) {
                    *slot = (*slot).min(o);
                }
            }
        }
        self.guard(order, tail)?;
        Ok(WindowSubmodule { order, tail, core, gens: OnceLock::new() })
    }

    /// `E₁ × E₂` for relative ideals over `H₁`, `H₂`.
    pub fn monomial(&self, e1: &RelativeIdealZ, e2: &RelativeIdealZ) -> Result<WindowSubmodule<F>, WindowError> {
        let one = self.one();
        let rows = e1
            .finite_part()
            .map(|d| Element::monomial(0, d, one.clone()))
            .chain(e2.finite_part().map(|d| Element::monomial(1, d, one.clone())))
            .collect::<Vec<_>>();
        self.finish(rows, [e1.tail(), e2.tail()])
    }

    /// Smallest submodule containing `gens` and closed under `A` and the
    /// extra `multipliers` (e.g. the generators of a larger ambient ring).
    pub fn from_generators(&self, gens: &[Element<F>], multipliers: &[Element<F>]) -> Result<WindowSubmodule<F>, WindowError> {
        let mut order = [i64::MAX; 2];
        for g in gens {
            for (b, o) in order.iter_mut().enumerate() {
                if let Some(d) = g.order(b as u16) {
                    *o = (*o).min(d);
                }
            }
        }
        if order.contains(&i64::MAX) {
            return Err(WindowError::NotFaithful);
        }
        let tail = [order[0] + self.conductor[0], order[1] + self.conductor[1]];
        self.guard(order, tail)?;
        let mut span = Echelon::new();
        let mut queue: Vec<Element<F>> = Vec::new();
        for g in gens {
            let g = g.truncate(tail);
            if span.insert(g.clone()) {
                queue.push(g);
            }
        }
        while let Some(v) = queue.pop() {
            for a in self.multipliers.iter().chain(multipliers) {
                let w = a.mul(&v).truncate(tail);
                if span.insert(w.clone()) {
                    queue.push(w);
                }
            }
        }
        self.finish(span.into_rows(), tail)
    }

    /// Minimal `A`-generators, taken among the core rows and the tail
    /// monomials not already in `JM`.
    pub fn generators(&self, m: &WindowSubmodule<F>) -> Result<Arc<Vec<Element<F>>>, WindowError> {
        if let Some(g) = m.gens.get() {
            return Ok(g.clone());
        }
        let jm = self.product_with(m, &self.multipliers)?;
        let bound = jm.tail;
        let mut span = Echelon::from_vectors(jm.rows_below(bound, &self.params));
        let mut gens = Vec::new();
        for c in m.rows_below(bound, &self.params) {
            if span.insert(c.clone()) {
                gens.push(c);
            }
        }
        let gens = Arc::new(gens);
        let _ = m.gens.set(gens.clone());
        Ok(gens)
    }

    /// `μ(M)`
    pub fn num_generators(&self, m: &WindowSubmodule<F>) -> Result<usize, WindowError> {
        Ok(self.generators(m)?.len())
    }

    pub fn sum(&self, a: &WindowSubmodule<F>, b: &WindowSubmodule<F>) -> Result<WindowSubmodule<F>, WindowError> {
        let tail = [a.tail[0].min(b.tail[0]), a.tail[1].min(b.tail[1])];
        self.finish(a.core().iter().chain(b.core()).cloned(), tail)
    }

    pub fn intersection(&self, a: &WindowSubmodule<F>, b: &WindowSubmodule<F>) -> Result<WindowSubmodule<F>, WindowError> {
        let tail = [a.tail[0].max(b.tail[0]), a.tail[1].max(b.tail[1])];
        let u = a.rows_below(tail, &self.params);
        let v = Echelon::from_vectors(b.rows_below(tail, &self.params));
        let images: Vec<Element<F>> = u.iter().map(|x| v.reduce(x)).collect();
        self.finish(kernel(&images, &u, &self.params), tail)
    }

    /// `inner ⊆ outer`.
    pub fn contains(&self, outer: &WindowSubmodule<F>, inner: &WindowSubmodule<F>) -> bool {
        (0..2).all(|b| outer.tail[b] <= inner.tail[b] && outer.order[b] <= inner.order[b])
            && inner.core().iter().all(|r| outer.core.contains(&r.truncate(outer.tail)))
    }

    fn product_with(&self, a: &WindowSubmodule<F>, gens: &[Element<F>]) -> Result<WindowSubmodule<F>, WindowError> {
        let mut ob = [i64::MAX; 2];
        for g in gens {
            for (b, o) in ob.iter_mut().enumerate() {
                if let Some(d) = g.order(b as u16) {
                    *o = (*o).min(d);
                }
            }
        }
        if ob.contains(&i64::MAX) {
            return Err(WindowError::NotFaithful);
        }
        let tail = [a.tail[0] + ob[0], a.tail[1] + ob[1]];
        self.guard([a.order[0] + ob[0], a.order[1] + ob[1]], tail)?;
        let mut rows = Vec::with_capacity(a.core.rank() * gens.len());
        for c in a.core() {
            for g in gens {
                rows.push(c.mul(g).truncate(tail));
            }
        }
        self.finish(rows, tail)
    }

    /// `M·M'`
    pub fn product(&self, a: &WindowSubmodule<F>, b: &WindowSubmodule<F>) -> Result<WindowSubmodule<F>, WindowError> {
        // the tail of `M·M'` is bounded by both `γ(M) + o(M')` and `γ(M') + o(M)`;
        // multiply the side whose bound is smaller through the other's generators
        let ab = a.tail[0] + b.order[0] + a.tail[1] + b.order[1];
        let ba = b.tail[0] + a.order[0] + b.tail[1] + a.order[1];
        let (x, y) = if ab <= ba { (a, b) } else { (b, a) };
        let gens = self.generators(y)?;
        self.product_with(x, &gens)
    }

    /// `M·w` for a regular element `w`.
    pub fn scale(&self, m: &WindowSubmodule<F>, w: &Element<F>) -> Result<WindowSubmodule<F>, WindowError> {
        self.product_with(m, std::slice::from_ref(w))
    }

    /// `A·w`
    pub fn principal(&self, w: &Element<F>) -> Result<WindowSubmodule<F>, WindowError> {
        self.scale(&self.ring, w)
    }

    /// `M : M' = {q : q·M' ⊆ M}`.
    pub fn colon(&self, m: &WindowSubmodule<F>, n: &WindowSubmodule<F>) -> Result<WindowSubmodule<F>, WindowError> {
        let gens = self.generators(n)?;
        let lo = [m.order[0] - n.order[0], m.order[1] - n.order[1]];
        let tail = [m.tail[0] - n.order[0], m.tail[1] - n.order[1]];
        self.guard(lo, tail)?;
        let mut sources = Vec::new();
        let mut images = Vec::new();
        for b in 0..2u16 {
            for d in lo[b as usize]..tail[b as usize] {
                let q = Element::monomial(b, d, self.one());
                let mut img = Element::zero();
                for (i, g) in gens.iter().enumerate() {
                    let r = m.core.reduce(&q.mul(g).truncate(m.tail));
                    img = img.add(&r.relabel(2 * i as u16));
                }
                images.push(img);
                sources.push(q);
            }
        }
        self.finish(kernel(&images, &sources, &self.params), tail)
    }

    /// `ℓ(M/M')` for `M' ⊆ M`.
    pub fn length(&self, m: &WindowSubmodule<F>, n: &WindowSubmodule<F>) -> Result<usize, WindowError> {
        if !self.contains(m, n) {
            return Err(WindowError::NotContained);
        }
        Ok(m.dim_below(n.tail) - n.dim_below(n.tail))
    }

    /// `M^k` for `k ≥ 1`.
    pub fn power(&self, m: &WindowSubmodule<F>, k: usize) -> Result<WindowSubmodule<F>, WindowError> {
        let mut p = m.clone();
        for _ in 1..k {
            p = self.product(&p, m)?;
        }
        Ok(p)
    }

    /// Stabilized union `∪ X^n` for `A ⊆ X`, i.e. the ring `A[X]`.
    pub fn ring_closure(&self, x: &WindowSubmodule<F>) -> Result<WindowSubmodule<F>, WindowError> {
        let mut p = self.sum(x, &self.ring)?;
        loop {
            let q = self.product(&p, &p)?;
            if q == p {
                return Ok(p);
            }
            p = q;
        }
    }
}
