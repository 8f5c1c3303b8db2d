use std::collections::BTreeMap;
use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::fiber::Provenance;
use crate::scalar::FieldMode;
use crate::window::{build_window, WindowOverrides};

use super::check::{broken_predicted_flags, check_pair, PairConfig};
use super::report::TheoremReport;
use super::{enumerate_semigroups, VerifyError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CampaignConfig {
    pub max_genus: usize,
    pub include_dvr: bool,
    pub field: FieldMode,
    pub jobs: usize,
    pub seed: u64,
    pub overrides: WindowOverrides,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        CampaignConfig {
            max_genus: 2,
            include_dvr: true,
            field: FieldMode::Rational,
            jobs: 1,
            seed: 0,
            overrides: WindowOverrides::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignMeta {
    pub version: String,
    pub field: String,
    pub seed: u64,
    pub max_genus: usize,
    pub include_dvr: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub pair: [Vec<u32>; 2],
    pub id: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignSummary {
    pub pairs: usize,
    pub checks: usize,
    pub failures: usize,
    pub skipped: usize,
    pub unstable: usize,
    pub dvr_pairs: usize,
    pub dvr_construction_hits: usize,
    pub search_fallbacks: usize,
    pub negative_controls: usize,
    pub negative_controls_rejected: usize,
    /// Ordered pairs whose flags or lengths differ from the swapped pair.
    pub asymmetric: Vec<[Vec<u32>; 2]>,
    /// Disagreements produced by the broken prediction table; must be > 0.
    pub broken_table_counterexamples: usize,
    pub counterexamples: Vec<Counterexample>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignReport {
    pub meta: CampaignMeta,
    pub pairs: Vec<TheoremReport>,
    pub summary: CampaignSummary,
}

impl CampaignReport {
    pub fn passed(&self) -> bool {
        self.summary.failures == 0
    }

    pub fn to_json(&self) -> Result<String, VerifyError> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn summary_line(&self) -> String {
        format!("pairs={} failures={}", self.summary.pairs, self.summary.failures)
    }
}

fn counterexamples(r: &TheoremReport) -> Vec<Counterexample> {
    let pair = r.pair.clone();
    let mut out: Vec<Counterexample> = r
        .identities
        .iter()
        .filter(|i| i.failed())
        .map(|i| Counterexample { pair: pair.clone(), id: i.id.clone(), lhs: i.lhs.clone(), rhs: i.rhs.clone() })
        .collect();
    out.extend(r.theorems.iter().filter(|t| t.failed()).map(|t| Counterexample {
        pair: pair.clone(),
        id: t.id.clone(),
        lhs: format!("predicted={:?}", t.predicted),
        rhs: format!("direct={:?}", t.direct),
    }));
    if let Some(e) = &r.error {
        out.push(Counterexample { pair: pair.clone(), id: "engine".into(), lhs: e.clone(), rhs: "ok".into() });
    }
    if !r.window.stable && r.error.is_none() {
        out.push(Counterexample { pair, id: "stability".into(), lhs: "changed".into(), rhs: "unchanged".into() });
    }
    out
}

fn summarize(pairs: &[TheoremReport]) -> CampaignSummary {
    let mut s = CampaignSummary {
        pairs: pairs.len(),
        checks: 0,
        failures: 0,
        skipped: 0,
        unstable: 0,
        dvr_pairs: 0,
        dvr_construction_hits: 0,
        search_fallbacks: 0,
        negative_controls: 0,
        negative_controls_rejected: 0,
        asymmetric: Vec::new(),
        broken_table_counterexamples: 0,
        counterexamples: Vec::new(),
    };
    let mut by_pair = BTreeMap::new();
    for r in pairs {
        s.checks += r.checks();
        s.skipped += r.skipped();
        s.failures += r.failures();
        s.unstable += usize::from(!r.window.stable);
        s.counterexamples.extend(counterexamples(r));
        if let Some(c) = &r.canonical {
            s.search_fallbacks += usize::from(c.fallback);
            s.negative_controls += c.negative_controls;
            s.negative_controls_rejected += c.negative_controls_rejected;
        }
        if let Some(f) = &r.fiber {
            if f.left.flags.is_dvr != f.right.flags.is_dvr {
                s.dvr_pairs += 1;
                s.dvr_construction_hits += usize::from(f.provenance == Provenance::DvrConstruction);
            }
            let broken = broken_predicted_flags(&f.left.flags, &f.right.flags);
            s.broken_table_counterexamples += usize::from(broken != f.direct);
            by_pair.insert(r.pair.clone(), (f.direct, f.lengths, f.r, f.e, f.v));
        }
    }
    for (pair, value) in &by_pair {
        let swapped = [pair[1].clone(), pair[0].clone()];
        if let Some(other) = by_pair.get(&swapped) {
            if other != value {
                s.asymmetric.push(pair.clone());
            }
        }
    }
    s.failures += s.asymmetric.len();
    s
}

/// Checks every ordered pair of semigroups of genus `≤ max_genus`.
///
/// Pairs run in parallel on `jobs` threads; the result is sorted by pair
/// and identical for every `jobs`.
pub fn run_campaign(config: &CampaignConfig) -> Result<CampaignReport, VerifyError> {
    if config.jobs == 0 {
        return Err(VerifyError::NoJobs);
    }
    let field = config.field.validate()?;
    let hs = enumerate_semigroups(config.max_genus)?;
    let mut todo = Vec::new();
    for h1 in &hs {
        for h2 in &hs {
            if config.include_dvr || (!h1.is_dvr() && !h2.is_dvr()) {
                build_window(h1, h2, field, config.overrides)?;
                todo.push((h1, h2));
            }
        }
    }
    let pc = PairConfig { field, overrides: config.overrides, seed: config.seed };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| VerifyError::Pool(e.to_string()))?;
    let pairs: Vec<TheoremReport> = pool.install(|| todo.par_iter().map(|(a, b)| check_pair(a, b, &pc)).collect());
    let summary = summarize(&pairs);
    Ok(CampaignReport {
        meta: CampaignMeta {
            version: env!("CARGO_PKG_VERSION").to_string(),
            field: field.to_string(),
            seed: config.seed,
            max_genus: config.max_genus,
            include_dvr: config.include_dvr,
        },
        pairs,
        summary,
    })
}

#[derive(Serialize)]
struct CsvRow<'a> {
    left: String,
    right: String,
    provenance: &'a str,
    r: Option<usize>,
    e: Option<usize>,
    v: Option<usize>,
    len_x_mod_a: Option<usize>,
    len_a_mod_c: Option<usize>,
    gorenstein: Option<bool>,
    almost_gorenstein: Option<bool>,
    generalized_gorenstein: Option<bool>,
    two_almost_gorenstein: Option<bool>,
    nearly_gorenstein: Option<bool>,
    agree: Option<bool>,
    checks: usize,
    failures: usize,
}

/// One row per pair: direct flags, lengths and check counts.
pub fn write_csv<W: Write>(report: &CampaignReport, out: W) -> Result<(), VerifyError> {
    let mut w = csv::Writer::from_writer(out);
    let join = |g: &[u32]| g.iter().map(u32::to_string).collect::<Vec<_>>().join(" ");
    for p in &report.pairs {
        let f = p.fiber.as_ref();
        let d = f.map(|f| f.direct);
        w.serialize(CsvRow {
            left: join(&p.pair[0]),
            right: join(&p.pair[1]),
            provenance: p.canonical.as_ref().map_or("", |c| c.provenance.as_str()),
            r: f.map(|f| f.r),
            e: f.map(|f| f.e),
            v: f.map(|f| f.v),
            len_x_mod_a: f.map(|f| f.lengths.len_x_mod_a),
            len_a_mod_c: f.map(|f| f.lengths.len_a_mod_c),
            gorenstein: d.map(|d| d.gorenstein),
            almost_gorenstein: d.map(|d| d.almost_gorenstein),
            generalized_gorenstein: d.map(|d| d.generalized_gorenstein),
            two_almost_gorenstein: d.map(|d| d.two_almost_gorenstein),
            nearly_gorenstein: d.map(|d| d.nearly_gorenstein),
            agree: f.map(|f| f.agree),
            checks: p.checks(),
            failures: p.failures(),
        })?;
    }
    w.flush()?;
    Ok(())
}
