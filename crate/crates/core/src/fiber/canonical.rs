use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::scalar::Field;
use crate::semigroup::{NumericalSemigroup, RelativeIdealZ};
use crate::window::{Element, WindowSubmodule};

use super::{FiberError, FiberRing};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// `A` itself, for the Gorenstein pair (ℕ, ℕ).
    Ring,
    SocleSum,
    DvrConstruction,
    Search,
}

/// Data behind the one-DVR construction `X₀ = A + (𝔪 × s^{−z}L)`.
#[derive(Clone, Debug)]
pub struct DvrWitness<F: Field> {
    /// Branch carrying the DVR.
    pub dvr_branch: usize,
    /// Unique degree of `(L:𝔫) ∖ L`.
    pub z: i64,
    /// The unnormalized candidate.
    pub raw: WindowSubmodule<F>,
    /// `x ∈ X₀` of minimal valuation; `X = x⁻¹·X₀`.
    pub x: Element<F>,
    /// `ρ` with `X:B = 𝔪 × ρ⁻¹L`.
    pub rho: Element<F>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationItem {
    pub id: String,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub items: Vec<ValidationItem>,
    pub probes: usize,
    pub passed: bool,
}

impl ValidationReport {
    fn new(items: Vec<ValidationItem>, probes: usize) -> Self {
        let passed = items.iter().all(|i| i.ok);
        ValidationReport { items, probes, passed }
    }

    pub fn failures(&self) -> impl Iterator<Item = &ValidationItem> {
        self.items.iter().filter(|i| !i.ok)
    }
}

/// A validated fractional canonical ideal `A ⊆ X ⊆ Ā`.
#[derive(Clone, Debug)]
pub struct CanonicalIdeal<F: Field> {
    pub x: WindowSubmodule<F>,
    pub provenance: Provenance,
    pub normalized: bool,
    pub witness: Option<DvrWitness<F>>,
    pub validation: ValidationReport,
}

/// Random relative ideal of `H`: a union of shifted copies of `H` starting
/// in `[lo, lo + span)`.
fn random_relative_ideal(h: &NumericalSemigroup, rng: &mut ChaCha8Rng, lo: i64, span: i64) -> RelativeIdealZ {
    let ring = RelativeIdealZ::ring(h);
    let k = rng.gen_range(1..=3);
    let mut e = ring.shift(lo + rng.gen_range(0..span));
    for _ in 1..k {
        e = e.sum(&ring.shift(lo + rng.gen_range(0..span)));
    }
    e
}

/// `A, J, J², B, Ā`, then 8 random monomial pairs and 8 random coupled
/// modules generated by a mixed element over a monomial part.
pub fn probe_family<F: Field>(f: &FiberRing<F>, seed: u64) -> Result<Vec<(String, WindowSubmodule<F>)>, FiberError> {
    let w = &f.window;
    let mut out = vec![
        ("A".to_string(), f.a.clone()),
        ("J".to_string(), f.j.clone()),
        ("J^2".to_string(), w.product(&f.j, &f.j)?),
        ("B".to_string(), f.b.clone()),
        ("Abar".to_string(), f.abar.clone()),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let spans = [f.side(0).semigroup.frobenius() + 3, f.side(1).semigroup.frobenius() + 3];
    for i in 0..8 {
        let e0 = random_relative_ideal(&f.side(0).semigroup, &mut rng, -1, spans[0]);
        let e1 = random_relative_ideal(&f.side(1).semigroup, &mut rng, -1, spans[1]);
        out.push((format!("pair{i}"), f.pair(&e0, &e1)?));
    }
    for i in 0..8 {
        let e0 = random_relative_ideal(&f.side(0).semigroup, &mut rng, 1, spans[0]);
        let e1 = random_relative_ideal(&f.side(1).semigroup, &mut rng, 1, spans[1]);
        let base = f.pair(&e0, &e1)?;
        let a = rng.gen_range(0..spans[0]);
        let b = rng.gen_range(0..spans[1]);
        let c = rng.gen_range(1..=7);
        let mixed = w.element(a, 1, b, c);
        let m = w.sum(&base, &w.principal(&mixed)?)?;
        out.push((format!("coupled{i}"), m));
    }
    Ok(out)
}

/// The canonicity battery: `X:X = A`, `ℓ((X:J)/X) = 1`, `μ(X) = r(A)` and
/// `X:(X:F) = F` over the probe family.
pub fn validate_canonical<F: Field>(f: &FiberRing<F>, x: &WindowSubmodule<F>, seed: u64) -> Result<ValidationReport, FiberError> {
    let w = &f.window;
    let mut items = Vec::new();
    let mut push = |id: &str, ok: bool, detail: Option<String>| items.push(ValidationItem { id: id.to_string(), ok, detail });

    let endo = w.colon(x, x)?;
    push("X:X = A", endo == f.a, (endo != f.a).then(|| format!("X:X = {endo}")));
    let xj = w.colon(x, &f.j)?;
    let socle = w.length(&xj, x)?;
    push("l((X:J)/X) = 1", socle == 1, (socle != 1).then(|| format!("length {socle}")));
    let mu = w.num_generators(x)?;
    let r = f.invariants.r;
    push("mu(X) = r(A)", mu == r, (mu != r).then(|| format!("mu = {mu}, r = {r}")));

    let probes = probe_family(f, seed)?;
    for (name, p) in &probes {
        let back = w.colon(x, &w.colon(x, p)?)?;
        let ok = &back == p;
        push(&format!("X:(X:{name}) = {name}"), ok, (!ok).then(|| format!("got {back}")));
    }
    Ok(ValidationReport::new(items, probes.len()))
}

fn finish<F: Field>(f: &FiberRing<F>, x: WindowSubmodule<F>, provenance: Provenance, witness: Option<DvrWitness<F>>, seed: u64) -> Result<CanonicalIdeal<F>, FiberError> {
    let validation = validate_canonical(f, &x, seed)?;
    if !validation.passed {
        let ids: Vec<&str> = validation.failures().map(|i| i.id.as_str()).collect();
        return Err(FiberError::ValidationFailed(ids.join("; ")));
    }
    let w = &f.window;
    let normalized = w.contains(&x, &f.a) && w.contains(&f.abar, &x);
    Ok(CanonicalIdeal { x, provenance, normalized, witness, validation })
}

/// `X = (K × L) + A·ψ` with `ψ = (t^{z₁}, s^{z₂})`, `z_i` the degree of
/// `(K:𝔪) ∖ K` (resp. `(L:𝔫) ∖ L`).
pub fn canonical_socle_sum<F: Field>(f: &FiberRing<F>, seed: u64) -> Result<CanonicalIdeal<F>, FiberError> {
    if f.is_dvr(0) || f.is_dvr(1) {
        return Err(FiberError::NotApplicable("a branch is a DVR"));
    }
    let x = socle_sum_module(f)?;
    finish(f, x, Provenance::SocleSum, None, seed)
}

pub(crate) fn socle_sum_module<F: Field>(f: &FiberRing<F>) -> Result<WindowSubmodule<F>, FiberError> {
    let w = &f.window;
    let kl = f.pair(&f.side(0).canonical, &f.side(1).canonical)?;
    let psi = w.element(f.side(0).socle_degree, 1, f.side(1).socle_degree, 1);
    Ok(w.sum(&kl, &w.principal(&psi)?)?)
}

/// The one-DVR construction: `X₀ = A + (𝔪 × s^{−z}L)`, validated, then
/// normalized as `X = X₀ : A·x` for a generic `x = (c₁, c₁ + c₂s^{−z}) ∈ X₀`.
pub fn canonical_dvr<F: Field>(f: &FiberRing<F>, seed: u64) -> Result<CanonicalIdeal<F>, FiberError> {
    let d = match (f.is_dvr(0), f.is_dvr(1)) {
        (true, false) => 0,
        (false, true) => 1,
        _ => return Err(FiberError::NotApplicable("exactly one branch must be a DVR")),
    };
    let o = 1 - d;
    let w = &f.window;
    let other = f.side(o);
    let z = other.socle_degree;
    let raw = w.sum(&f.a, &f.pair_on(d, &f.side(d).maximal, &other.canonical.shift(-z))?)?;
    let report = validate_canonical(f, &raw, seed)?;
    if !report.passed {
        let ids: Vec<&str> = report.failures().map(|i| i.id.as_str()).collect();
        return Err(FiberError::ValidationFailed(ids.join("; ")));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    const ATTEMPTS: usize = 4;
    for _ in 0..ATTEMPTS {
        let c1 = rng.gen_range(1..=1000);
        let c2 = rng.gen_range(1..=1000);
        let xb = Element::monomial(0, 0, w.scalar(c1));
        let xo = Element::monomial(0, 0, w.scalar(c1)).add(&Element::monomial(0, -z, w.scalar(c2)));
        let x = f.element_on(d, &xb, &xo);
        let xnorm = w.colon(&raw, &w.principal(&x)?)?;
        if !(w.contains(&xnorm, &f.a) && w.contains(&f.abar, &xnorm)) {
            continue;
        }
        let rho_o = Element::monomial(0, 0, w.scalar(c2)).add(&Element::monomial(0, z, w.scalar(c1)));
        let rho = f.element_on(d, &Element::monomial(0, 0, w.one()), &rho_o);
        let witness = DvrWitness { dvr_branch: d, z, raw, x, rho };
        let mut out = finish(f, xnorm, Provenance::DvrConstruction, Some(witness), seed)?;
        out.validation = ValidationReport::new(
            report.items.iter().cloned().chain(out.validation.items).collect(),
            report.probes + out.validation.probes,
        );
        return Ok(out);
    }
    Err(FiberError::NormalizationFailed(ATTEMPTS))
}

/// Brute-force fallback over `(K·t^{−i} × L·s^{−j}) + A·(t^a, s^b)`.
pub fn canonical_search<F: Field>(f: &FiberRing<F>, budget: usize, seed: u64) -> Result<CanonicalIdeal<F>, FiberError> {
    let w = &f.window;
    let (k, l) = (&f.side(0).canonical, &f.side(1).canonical);
    let (f0, f1) = (f.side(0).semigroup.frobenius().max(0), f.side(1).semigroup.frobenius().max(0));
    let mut tried = 0;
    for i in 0..=1 {
        for j in 0..=1 {
            let base = f.pair(&k.shift(-i), &l.shift(-j))?;
            let mut shapes: Vec<Option<(i64, i64)>> = vec![None];
            for a in -1..=f0 + 1 {
                for b in -1..=f1 + 1 {
                    shapes.push(Some((a, b)));
                }
            }
            for shape in shapes {
                if tried >= budget {
                    return Err(FiberError::SearchExhausted(tried));
                }
                tried += 1;
                let cand = match shape {
                    None => base.clone(),
                    Some((a, b)) => w.sum(&base, &w.principal(&w.element(a, 1, b, 1))?)?,
                };
                // cheap screens before the full battery
                if w.colon(&cand, &cand)? != f.a || w.num_generators(&cand)? != f.invariants.r {
                    continue;
                }
                if let Ok(c) = finish(f, cand, Provenance::Search, None, seed) {
                    return Ok(c);
                }
            }
        }
    }
    Err(FiberError::SearchExhausted(tried))
}

/// The canonical ideal of `A` by the applicable construction, falling back
/// to search; the second value reports whether the fallback was needed.
pub fn canonical<F: Field>(f: &FiberRing<F>, seed: u64) -> Result<(CanonicalIdeal<F>, bool), FiberError> {
    let direct = match (f.is_dvr(0), f.is_dvr(1)) {
        (true, true) => finish(f, f.a.clone(), Provenance::Ring, None, seed),
        (false, false) => canonical_socle_sum(f, seed),
        _ => canonical_dvr(f, seed),
    };
    match direct {
        Ok(c) => Ok((c, false)),
        Err(FiberError::ValidationFailed(_)) | Err(FiberError::NormalizationFailed(_)) => {
            Ok((canonical_search(f, 4096, seed)?, true))
        }
        Err(e) => Err(e),
    }
}

/// Candidates that must fail the battery: `A` (when `r(A) > 1`), `B`, `Ā`,
/// and in the one-DVR case `A + (𝔪 × L)`.
pub fn negative_controls<F: Field>(f: &FiberRing<F>) -> Result<Vec<(String, WindowSubmodule<F>)>, FiberError> {
    let mut out = Vec::new();
    if f.invariants.r > 1 {
        out.push(("X = A".to_string(), f.a.clone()));
    }
    out.push(("X = B".to_string(), f.b.clone()));
    out.push(("X = Abar".to_string(), f.abar.clone()));
    if f.is_dvr(0) != f.is_dvr(1) {
        let d = if f.is_dvr(0) { 0 } else { 1 };
        let o = 1 - d;
        let m = f.pair_on(d, &f.side(d).maximal, &f.side(o).canonical)?;
        out.push(("X = A + (m x L)".to_string(), f.window.sum(&f.a, &m)?));
    }
    Ok(out)
}
