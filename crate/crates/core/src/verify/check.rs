use crate::fiber::{
    build_fiber, canonical, classify_fiber, negative_controls, predicted_flags, validate_canonical, CanonicalIdeal,
    FiberClassification, FiberError, FiberFlags, FiberRing, Provenance,
};
use crate::scalar::{Field, FieldMode, Fp, Rational};
use crate::semigroup::{NumericalSemigroup, RelativeIdealZ, RingFlags, RingStructure};
use crate::window::{build_window, WindowConfig, WindowOverrides, WindowSubmodule};

use super::report::{CanonicalInfo, Identity, Observation, TheoremCheck, TheoremReport, WindowInfo};

/// Settings for a single pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairConfig {
    pub field: FieldMode,
    pub overrides: WindowOverrides,
    /// Master seed; the pair seed is derived from it and the generators.
    pub seed: u64,
}

impl Default for PairConfig {
    fn default() -> Self {
        PairConfig { field: FieldMode::Rational, overrides: WindowOverrides::default(), seed: 0 }
    }
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed for the ordered pair, a fixed mix of the master seed and both
/// generator lists.
pub fn pair_seed(master: u64, h1: &NumericalSemigroup, h2: &NumericalSemigroup) -> u64 {
    let mut s = splitmix(master);
    for (tag, h) in [(1u64, h1), (2, h2)] {
        s = splitmix(s ^ tag);
        for &g in h.generators() {
            s = splitmix(s ^ u64::from(g));
        }
    }
    s
}

/// A deliberately wrong prediction table, used to show the comparator
/// catches disagreements.
pub fn broken_predicted_flags(left: &RingFlags, right: &RingFlags) -> FiberFlags {
    let mut p = predicted_flags(left, right);
    p.gorenstein = false;
    p.almost_gorenstein = left.almost_gorenstein || right.almost_gorenstein;
    p.two_almost_gorenstein = left.two_almost_gorenstein && right.two_almost_gorenstein;
    p
}

fn render<F: Field>(m: &WindowSubmodule<F>) -> String {
    if m.is_monomial() {
        format!("{} × {}", m.branch_degrees(0).render(), m.branch_degrees(1).render())
    } else {
        m.to_string()
    }
}

struct Battery {
    identities: Vec<Identity>,
    theorems: Vec<TheoremCheck>,
    observations: Vec<Observation>,
}

impl Battery {
    fn eq<F: Field>(&mut self, id: &str, lhs: &WindowSubmodule<F>, rhs: &WindowSubmodule<F>) {
        self.identities.push(Identity::new(id, render(lhs), render(rhs)));
    }

    fn eq_ideal(&mut self, id: &str, lhs: &RelativeIdealZ, rhs: &RelativeIdealZ) {
        self.identities.push(Identity::new(id, lhs.render(), rhs.render()));
    }

    fn num(&mut self, id: &str, lhs: impl ToString, rhs: impl ToString) {
        self.identities.push(Identity::new(id, lhs, rhs));
    }

    fn holds(&mut self, id: &str, claim: bool) {
        self.identities.push(Identity::new(id, claim, true));
    }

    fn skip(&mut self, ids: &[&str], reason: &str) {
        for id in ids {
            self.identities.push(Identity::skip(*id, reason));
        }
    }

    fn thm(&mut self, id: &str, predicted: bool, direct: bool) {
        self.theorems.push(TheoremCheck::new(id, predicted, direct));
    }

    fn skip_thm(&mut self, ids: &[&str], reason: &str) {
        for id in ids {
            self.theorems.push(TheoremCheck::skip(*id, reason));
        }
    }

    fn observe(&mut self, id: &str, holds: bool) {
        self.observations.push(Observation { id: id.to_string(), holds });
    }
}

const NON_DVR_IDS: &[&str] = &["type_additive", "X_colon_J", "JX_product", "length_X_over_A", "A_colon_X_traces", "A_colon_X_gorenstein_side"];
const NON_DVR_THMS: &[&str] = &["nondvr:ag_iff_both_ag", "nondvr:ggl_iff_both_ag", "two_generated_pair_ag_type_3"];
const DVR_IDS: &[&str] = &[
    "dvr:colon_chain",
    "dvr:J_chain",
    "dvr:X_colon_J",
    "dvr:X_colon_B",
    "dvr:rho_in_socle",
    "dvr:X_eq_XB_plus_A",
    "dvr:A_colon_X",
    "dvr:trace_of_X",
    "dvr:X_stable_iff_L_stable",
    "dvr:conductor_length",
];
const DVR_THMS: &[&str] = &["dvr:ag_iff_S_ag", "dvr:ggl_iff_S_ag"];
const FIBER_THMS: &[&str] = &["ag_forms(JX in A)", "ag_forms(JX iso J)", "ag_iff_both_ag", "ggl_iff_both_ag", "two_ag_rule", "ng_iff_both_ng", "square:ag", "square:ggl"];
const CHAIN_IDS: &[&str] = &["chain(G=>AG)", "chain(AG=>NG)", "chain(AG=>GGL)"];

/// Single-ring statements for a non-Gorenstein factor.
fn factor_items(b: &mut Battery, side: &RingStructure, tag: &str) {
    let ids = [format!("trace_times_K_colon_m({tag})"), format!("trace_absorbs_R_colon_m({tag})"), format!("trace_fixed_iff_K2_eq_K3({tag})")];
    if side.canonical == side.ring {
        let ids: Vec<&str> = ids.iter().map(String::as_str).collect();
        b.skip(&ids, "factor is Gorenstein");
        return;
    }
    let a = &side.trace_colon;
    let k = &side.canonical;
    let ak = a.product(k);
    b.eq_ideal(&ids[0], &a.product(&side.canonical_colon_maximal), &ak);
    let r_colon_m = side.ring.colon(&side.maximal);
    b.holds(&ids[1], a.product(&r_colon_m) == *a && ak.contains_ideal(a));
    let k2 = k.product(k);
    b.num(&ids[2], *a == ak, k2 == k2.product(k));
}

fn section2<F: Field>(b: &mut Battery, f: &FiberRing<F>) -> Result<(), FiberError> {
    let w = &f.window;
    let (m, n) = (&f.side(0).maximal, &f.side(1).maximal);
    let mn = f.pair(m, n)?;
    b.eq("maximal_ideal_meet", &f.j, &w.intersection(&mn, &f.a)?);
    b.num("length_B_over_A", w.length(&f.b, &f.a)?, 1);
    let (l, r) = (&f.classes[0], &f.classes[1]);
    b.num("embedding_dimension_additive", f.invariants.v, l.v + r.v);
    b.num("multiplicity_additive", f.invariants.e, (l.e + r.e) as usize);
    let mut jn = f.j.clone();
    let (mut mk, mut nk) = (m.clone(), n.clone());
    for k in 2..=3 {
        jn = w.product(&jn, &f.j)?;
        mk = mk.product(m);
        nk = nk.product(n);
        b.eq(&format!("power_J^{k}"), &jn, &f.pair(&mk, &nk)?);
    }
    // J against m² × n², recorded only
    let shifted = f.pair(&m.product(m), &n.product(n))?;
    b.observe("power_J^l_shifted_exponent", f.j == shifted);
    Ok(())
}

fn non_dvr_items<F: Field>(b: &mut Battery, f: &FiberRing<F>, x: &WindowSubmodule<F>, c: &FiberClassification) -> Result<(), FiberError> {
    let w = &f.window;
    let (sr, ss) = (f.side(0), f.side(1));
    let (l, r) = (&f.classes[0], &f.classes[1]);
    b.num("type_additive", f.invariants.r, l.r + r.r + 1);
    b.eq("X_colon_J", &w.colon(x, &f.j)?, &f.pair(&sr.canonical_colon_maximal, &ss.canonical_colon_maximal)?);
    let jx = w.product(&f.j, x)?;
    b.eq("JX_product", &jx, &f.pair(&sr.maximal.product(&sr.canonical), &ss.maximal.product(&ss.canonical))?);
    b.num("length_X_over_A", c.lengths.len_x_mod_a, l.lengths.len_k_mod_r + r.lengths.len_k_mod_r + 2);

    let a_x = w.colon(&f.a, x)?;
    match (l.flags.gorenstein, r.flags.gorenstein) {
        (false, false) => {
            b.eq("A_colon_X_traces", &a_x, &f.pair(&sr.trace_colon, &ss.trace_colon)?);
            b.skip(&["A_colon_X_gorenstein_side"], "neither factor is Gorenstein");
        }
        (true, false) => {
            b.skip(&["A_colon_X_traces"], "a factor is Gorenstein");
            b.eq("A_colon_X_gorenstein_side", &a_x, &f.pair(&sr.maximal, &ss.trace_colon)?);
        }
        (false, true) => {
            b.skip(&["A_colon_X_traces"], "a factor is Gorenstein");
            b.eq("A_colon_X_gorenstein_side", &a_x, &f.pair(&sr.trace_colon, &ss.maximal)?);
        }
        (true, true) => b.skip(&["A_colon_X_traces", "A_colon_X_gorenstein_side"], "both factors are Gorenstein"),
    }

    let both_ag = l.flags.almost_gorenstein && r.flags.almost_gorenstein;
    b.thm("nondvr:ag_iff_both_ag", both_ag, c.direct.almost_gorenstein);
    b.thm("nondvr:ggl_iff_both_ag", both_ag, c.direct.generalized_gorenstein);
    if l.gens.len() == 2 && r.gens.len() == 2 {
        b.thm("two_generated_pair_ag_type_3", true, c.direct.almost_gorenstein && c.r == 3);
    } else {
        b.skip_thm(&["two_generated_pair_ag_type_3"], "a factor is not two-generated");
    }
    Ok(())
}

fn dvr_items<F: Field>(b: &mut Battery, f: &FiberRing<F>, x: &CanonicalIdeal<F>, c: &FiberClassification) -> Result<(), FiberError> {
    let w = &f.window;
    let xm = &x.x;
    let d = if f.is_dvr(0) { 0 } else { 1 };
    let (rd, so) = (f.side(d), f.side(1 - d));
    let ag_s = f.classes[1 - d].flags.almost_gorenstein;
    b.thm("dvr:ag_iff_S_ag", ag_s, c.direct.almost_gorenstein);
    b.thm("dvr:ggl_iff_S_ag", ag_s, c.direct.generalized_gorenstein);

    let Some(wit) = x.witness.as_ref() else {
        b.skip(DVR_IDS, "canonical ideal found by search; no construction witness");
        return Ok(());
    };
    let rho = w.principal(&wit.rho)?;
    let scale_rho = |m: &WindowSubmodule<F>| w.scale(m, &wit.rho);
    let inv_rho = |m: &WindowSubmodule<F>| w.colon(m, &rho);

    let x_b = w.colon(xm, &f.b)?;
    let x_j = w.colon(xm, &f.j)?;
    let xb_j = w.colon(&x_b, &f.j)?;
    b.holds("dvr:colon_chain", w.contains(xm, &x_b) && w.contains(&xb_j, xm) && xb_j == x_j);
    let jx = w.product(&f.j, xm)?;
    b.holds("dvr:J_chain", w.contains(&jx, &w.product(&f.j, &x_b)?) && w.contains(&w.product(&f.j, &xb_j)?, &jx));

    let proof_form = inv_rho(&f.pair_on(d, &rd.ring, &so.canonical_colon_maximal)?)?;
    let statement_form = inv_rho(&f.pair_on(d, &rd.ring, &so.trace_colon)?)?;
    b.eq("dvr:X_colon_J", &x_j, &proof_form);
    b.observe("dvr:X_colon_J(socle form)", x_j == proof_form);
    b.observe("dvr:X_colon_J(trace form)", x_j == statement_form);

    b.eq("dvr:X_colon_B", &x_b, &inv_rho(&f.pair_on(d, &rd.maximal, &so.canonical)?)?);
    let in_socle = w.contains(&f.pair_on(d, &rd.ring, &so.canonical_colon_maximal)?, &rho)
        && !w.contains(&f.pair_on(d, &rd.ring, &so.canonical)?, &rho);
    b.holds("dvr:rho_in_socle", in_socle);
    b.eq("dvr:X_eq_XB_plus_A", xm, &w.sum(&x_b, &f.a)?);
    // 𝔫:L equals S:L unless S is Gorenstein, where S:L = S is not inside 𝔫
    let n_l = so.maximal.colon(&so.canonical);
    let a_x = w.colon(&f.a, xm)?;
    b.eq("dvr:A_colon_X", &a_x, &scale_rho(&f.pair_on(d, &rd.maximal, &n_l)?)?);
    let literal = scale_rho(&f.pair_on(d, &rd.maximal, &so.trace_colon)?)?;
    b.observe("dvr:A_colon_X(with S:L)", a_x == literal);
    let trace = w.product(&a_x, xm)?;
    b.eq("dvr:trace_of_X", &trace, &f.pair_on(d, &rd.maximal, &n_l.product(&so.canonical))?);
    let literal = f.pair_on(d, &rd.maximal, &so.trace_colon.product(&so.canonical))?;
    b.observe("dvr:trace_of_X(with S:L)", trace == literal);

    let x2 = w.product(xm, xm)?;
    let x_stable = x2 == w.product(&x2, xm)?;
    let l2 = so.canonical.product(&so.canonical);
    let l_stable = l2 == l2.product(&so.canonical);
    b.num("dvr:X_stable_iff_L_stable", x_stable, l_stable);
    if l_stable {
        let lhs = w.length(&f.a, &a_x)?;
        b.num("dvr:conductor_length", lhs, so.ring.length_between(&n_l).expect("𝔫:L ⊆ S"));
        b.observe("dvr:conductor_length(with S:L)", lhs == so.ring.length_between(&so.trace_colon).expect("S:L ⊆ S"));
    } else {
        b.skip(&["dvr:conductor_length"], "L^2 ≠ L^3");
    }
    Ok(())
}

fn fiber_theorems<F: Field>(b: &mut Battery, f: &FiberRing<F>, x: &WindowSubmodule<F>, c: &FiberClassification) -> Result<(), FiberError> {
    let w = &f.window;
    let (l, r) = (&f.classes[0].flags, &f.classes[1].flags);
    let jx = w.product(&f.j, x)?;
    let ag_eq = jx == f.j;
    b.thm("ag_forms(JX in A)", ag_eq, w.contains(&f.a, &jx));
    b.thm("ag_forms(JX iso J)", ag_eq, c.almost_gorenstein_iso);
    let both_ag = l.almost_gorenstein && r.almost_gorenstein;
    b.thm("ag_iff_both_ag", both_ag, c.direct.almost_gorenstein);
    b.thm("ggl_iff_both_ag", both_ag, c.direct.generalized_gorenstein);
    b.thm("two_ag_rule", c.predicted.two_almost_gorenstein, c.direct.two_almost_gorenstein);
    b.thm("ng_iff_both_ng", c.predicted.nearly_gorenstein, c.direct.nearly_gorenstein);
    if c.left.gens == c.right.gens {
        b.thm("square:ag", l.almost_gorenstein, c.direct.almost_gorenstein);
        b.thm("square:ggl", l.almost_gorenstein, c.direct.generalized_gorenstein);
    } else {
        b.skip_thm(&["square:ag", "square:ggl"], "factors differ");
    }
    let d = &c.direct;
    b.holds("chain(G=>AG)", !d.gorenstein || d.almost_gorenstein);
    b.holds("chain(AG=>NG)", !d.almost_gorenstein || d.nearly_gorenstein);
    b.holds("chain(AG=>GGL)", !d.almost_gorenstein || d.generalized_gorenstein);
    Ok(())
}

struct Computed<F: Field> {
    fiber: FiberRing<F>,
    x: CanonicalIdeal<F>,
    fallback: bool,
    class: FiberClassification,
}

fn compute<F: Field>(config: &WindowConfig, params: F::Params, seed: u64) -> Result<Computed<F>, FiberError> {
    let fiber = build_fiber::<F>(config.clone(), params)?;
    let (x, fallback) = canonical(&fiber, seed)?;
    let class = classify_fiber(&fiber, &x, seed)?;
    Ok(Computed { fiber, x, fallback, class })
}

/// The exported values of a computation: flags and lengths, used for the
/// stability comparison.
fn exported(c: &FiberClassification) -> (FiberFlags, FiberFlags, crate::fiber::FiberLengths, [usize; 3]) {
    (c.direct, c.predicted, c.lengths, [c.e, c.v, c.r])
}

fn recompute_exported(config: &WindowConfig, seed: u64) -> Result<FiberClassification, FiberError> {
    Ok(match config.field {
        FieldMode::Rational => compute::<Rational>(config, (), seed)?.class,
        FieldMode::Prime(p) => compute::<Fp>(config, p, seed)?.class,
    })
}

fn run<F: Field>(config: &WindowConfig, params: F::Params, seed: u64, report: &mut TheoremReport) -> Result<(), FiberError> {
    let Computed { fiber: f, x, fallback, class } = compute::<F>(config, params, seed)?;
    let mut b = Battery { identities: Vec::new(), theorems: Vec::new(), observations: Vec::new() };

    section2(&mut b, &f)?;
    b.thm("gorenstein_iff_both_dvr", f.is_dvr(0) && f.is_dvr(1), class.direct.gorenstein);
    factor_items(&mut b, f.side(0), "R");
    factor_items(&mut b, f.side(1), "S");

    for item in &x.validation.items {
        let lhs = match (&item.ok, &item.detail) {
            (true, _) => "true".to_string(),
            (false, Some(d)) => format!("false: {d}"),
            (false, None) => "false".to_string(),
        };
        b.num(&format!("canon[{}]", item.id), lhs, true);
    }
    let controls = negative_controls(&f)?;
    let mut rejected = 0;
    for (name, m) in &controls {
        let passed = validate_canonical(&f, m, seed)?.passed;
        rejected += usize::from(!passed);
        b.num(&format!("neg[{name}]"), passed, false);
    }

    match (f.is_dvr(0), f.is_dvr(1)) {
        (false, false) => {
            non_dvr_items(&mut b, &f, &x.x, &class)?;
            b.skip(DVR_IDS, "no factor is a DVR");
            b.skip_thm(DVR_THMS, "no factor is a DVR");
        }
        (true, true) => {
            b.skip(NON_DVR_IDS, "both factors are DVRs");
            b.skip_thm(NON_DVR_THMS, "both factors are DVRs");
            b.skip(DVR_IDS, "both factors are DVRs");
            b.skip_thm(DVR_THMS, "both factors are DVRs");
        }
        _ => {
            b.skip(NON_DVR_IDS, "a factor is a DVR");
            b.skip_thm(NON_DVR_THMS, "a factor is a DVR");
            dvr_items(&mut b, &f, &x, &class)?;
        }
    }
    if f.is_dvr(0) && f.is_dvr(1) {
        b.skip_thm(FIBER_THMS, "both factors are DVRs");
        b.skip(CHAIN_IDS, "both factors are DVRs");
    } else {
        fiber_theorems(&mut b, &f, &x.x, &class)?;
    }

    let bigger = config.enlarged(8, 2);
    let stable = match recompute_exported(&bigger, seed) {
        Ok(c2) => exported(&c2) == exported(&class),
        Err(_) => false,
    };

    report.identities = b.identities;
    report.theorems = b.theorems;
    report.observations = b.observations;
    report.window.stable = stable;
    report.canonical = Some(CanonicalInfo {
        provenance: x.provenance,
        fallback,
        probes: x.validation.probes,
        battery_passed: x.validation.passed,
        negative_controls: controls.len(),
        negative_controls_rejected: rejected,
    });
    report.fiber = Some(class);
    Ok(())
}

/// Runs every applicable identity and theorem check on `(H₁, H₂)`.
///
/// Never fails: engine errors are recorded in the report.
pub fn check_pair(h1: &NumericalSemigroup, h2: &NumericalSemigroup, config: &PairConfig) -> TheoremReport {
    let seed = pair_seed(config.seed, h1, h2);
    let mut report = TheoremReport {
        pair: [h1.generators().to_vec(), h2.generators().to_vec()],
        identities: Vec::new(),
        theorems: Vec::new(),
        observations: Vec::new(),
        window: WindowInfo { bound: 0, neg_offset: 0, stable: false },
        seed,
        timings: None,
        canonical: None,
        fiber: None,
        error: None,
    };
    let wc = match build_window(h1, h2, config.field, config.overrides) {
        Ok(wc) => wc,
        Err(e) => {
            report.error = Some(e.to_string());
            return report;
        }
    };
    report.window.bound = wc.bound;
    report.window.neg_offset = wc.neg_offset;
    let outcome = match wc.field {
        FieldMode::Rational => run::<Rational>(&wc, (), seed, &mut report),
        FieldMode::Prime(p) => run::<Fp>(&wc, p, seed, &mut report),
    };
    if let Err(e) = outcome {
        report.error = Some(e.to_string());
    }
    report
}

impl Provenance {
    pub fn as_str(&self) -> &'static str {
        match self {
            Provenance::Ring => "ring",
            Provenance::SocleSum => "socle_sum",
            Provenance::DvrConstruction => "dvr_construction",
            Provenance::Search => "search",
        }
    }
}
