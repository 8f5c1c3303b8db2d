//! Acceptance gate: one line per criterion, exit status 1 if any is red.

mod common;

use std::time::{Duration, Instant};

use agfiber::fiber::Provenance;
use agfiber::scalar::{FieldMode, DEFAULT_PRIME};
use agfiber::semigroup::{classify_ring, NumericalSemigroup};
use agfiber::verify::{check_pair, enumerate_semigroups, run_campaign, CampaignConfig, PairConfig, TheoremReport};
use agfiber::window::{build_window, WindowOverrides};

struct Gate {
    failed: usize,
}

impl Gate {
    fn line(&mut self, n: usize, label: &str, ok: bool, detail: String) {
        let tag = if ok { "PASS" } else { "FAIL" };
        println!("{tag} [{n}] {label}: {detail}");
        self.failed += usize::from(!ok);
    }
}

fn secs(d: Duration) -> String {
    format!("{:.1}s", d.as_secs_f64())
}

fn oracle_equivalence() -> (bool, String) {
    let t = Instant::now();
    let all = common::enumerate(12);
    let mut mismatches = 0;
    for h in &all {
        let o = common::oracle(h);
        let gaps: Vec<u32> = h.0.iter().map(|&g| g as u32).collect();
        let c = classify_ring(&NumericalSemigroup::from_gaps(&gaps).unwrap());
        let f = &c.flags;
        let same = c.gens == o.gens
            && (c.e, c.v, c.frobenius, c.genus, c.r) == (o.e, o.v, o.frobenius, o.genus, o.r)
            && f.gorenstein == o.flags.gorenstein
            && f.almost_gorenstein == o.flags.almost_gorenstein
            && f.almost_gorenstein == o.flags.almost_gorenstein_gap
            && f.generalized_gorenstein == o.flags.generalized_gorenstein
            && f.two_almost_gorenstein == o.flags.two_almost_gorenstein
            && f.two_almost_gorenstein == o.flags.two_almost_gorenstein_conductor
            && f.nearly_gorenstein == o.flags.nearly_gorenstein
            && f.is_dvr == o.flags.is_dvr
            && (c.lengths.len_k_mod_r, c.lengths.len_r_mod_c) == (o.len_k_mod_r, o.len_r_mod_c);
        mismatches += usize::from(!same);
    }
    let el = t.elapsed();
    let ok = mismatches == 0 && el <= Duration::from_secs(60) && all.len() == 1413;
    (ok, format!("{} semigroups, {mismatches} mismatches, {}", all.len(), secs(el)))
}

fn cusp_pair() -> (bool, String) {
    let h: NumericalSemigroup = "2,3".parse().unwrap();
    let r = check_pair(&h, &h, &PairConfig::default());
    let f = r.fiber.as_ref();
    let ag = f.is_some_and(|f| f.direct.almost_gorenstein && f.agree);
    let rr = f.map(|f| f.r);
    (ag && rr == Some(3) && r.passed(), format!("AG = {ag}, r(A) = {rr:?}"))
}

fn identity_failures(r: &TheoremReport) -> usize {
    r.identities.iter().filter(|i| i.failed()).count() + usize::from(r.error.is_some())
}

fn theorem_failures(r: &TheoremReport) -> usize {
    r.theorems.iter().filter(|t| t.failed()).count()
}

fn main() {
    let mut gate = Gate { failed: 0 };

    let (ok, detail) = oracle_equivalence();
    gate.line(1, "single-ring oracle, genus <= 12, <= 60s", ok, detail);

    let (ok, detail) = cusp_pair();
    gate.line(2, "cusp pair is AG with r(A) = 3", ok, detail);

    let base = CampaignConfig { max_genus: 6, include_dvr: false, jobs: 1, seed: 0, ..CampaignConfig::default() };
    let t = Instant::now();
    let serial = run_campaign(&base).expect("campaign runs");
    let t1 = t.elapsed();
    let t = Instant::now();
    let parallel = run_campaign(&CampaignConfig { jobs: 8, ..base.clone() }).expect("campaign runs");
    let t8 = t.elapsed();
    let ids: usize = serial.pairs.iter().map(identity_failures).sum();
    let checked: usize = serial.pairs.iter().map(|r| r.identities.iter().filter(|i| i.skipped.is_none()).count()).sum();
    gate.line(
        3,
        "identity battery on non-DVR pairs, genus <= 6",
        ids == 0 && serial.pairs.len() == 2401 && t1 <= Duration::from_secs(600) && t8 <= Duration::from_secs(120),
        format!("{} pairs, {checked} identities, {ids} failures, jobs=1 {}, jobs=8 {}", serial.pairs.len(), secs(t1), secs(t8)),
    );

    let thm: usize = serial.pairs.iter().map(theorem_failures).sum();
    let thm_checked: usize = serial.pairs.iter().map(|r| r.theorems.iter().filter(|t| t.skipped.is_none()).count()).sum();
    gate.line(
        4,
        "theorem equivalences, predicted = direct",
        thm == 0 && serial.summary.broken_table_counterexamples > 0,
        format!(
            "{thm_checked} checks, {thm} failures, broken table caught on {} pairs",
            serial.summary.broken_table_counterexamples
        ),
    );

    let nat = NumericalSemigroup::naturals();
    let hs: Vec<NumericalSemigroup> = enumerate_semigroups(6).unwrap().into_iter().filter(|h| !h.is_dvr()).collect();
    let mut dvr_reports = Vec::new();
    for h in &hs {
        dvr_reports.push(check_pair(&nat, h, &PairConfig::default()));
        dvr_reports.push(check_pair(h, &nat, &PairConfig::default()));
    }
    let dvr_fail: usize = dvr_reports.iter().map(|r| identity_failures(r) + theorem_failures(r)).sum();
    let dvr_checked: usize = dvr_reports
        .iter()
        .map(|r| r.identities.iter().filter(|i| i.id.starts_with("dvr:") && i.skipped.is_none()).count())
        .sum();
    let hits = dvr_reports
        .iter()
        .filter(|r| r.canonical.as_ref().is_some_and(|c| c.provenance == Provenance::DvrConstruction && !c.fallback))
        .count();
    let fallbacks = dvr_reports.iter().filter(|r| r.canonical.as_ref().is_some_and(|c| c.fallback)).count();
    gate.line(
        5,
        "DVR-factor battery, genus <= 6",
        dvr_fail == 0 && hits == dvr_reports.len() && fallbacks == 0,
        format!("{} pairs, {dvr_checked} DVR identities, {dvr_fail} failures, construction hit rate {hits}/{}, {fallbacks} fallbacks", dvr_reports.len(), dvr_reports.len()),
    );

    let mut total = 0;
    let mut sound = 0;
    let (mut controls, mut rejected) = (0, 0);
    for r in serial.pairs.iter().chain(&dvr_reports) {
        total += 1;
        if let Some(c) = &r.canonical {
            sound += usize::from(c.battery_passed && c.probes >= 16 && c.negative_controls_rejected == c.negative_controls);
            controls += c.negative_controls;
            rejected += c.negative_controls_rejected;
        }
    }
    gate.line(
        6,
        "canonicity battery passes, negative controls fail",
        sound == total && controls == rejected && controls > 0,
        format!("{sound}/{total} pairs sound, {rejected}/{controls} controls rejected"),
    );

    let small = enumerate_semigroups(4).unwrap();
    let mut unstable = 0;
    let mut pairs = 0;
    let exported = |r: &TheoremReport| {
        let f = r.fiber.as_ref().map(|f| (f.direct, f.predicted, f.lengths, f.r, f.e, f.v));
        (f, r.identities.iter().map(|i| i.ok).collect::<Vec<_>>(), r.theorems.iter().map(|t| t.ok).collect::<Vec<_>>())
    };
    for h1 in &small {
        for h2 in &small {
            pairs += 1;
            let cfg = build_window(h1, h2, FieldMode::Rational, WindowOverrides::default()).unwrap();
            let base = check_pair(h1, h2, &PairConfig::default());
            let wider = PairConfig {
                overrides: WindowOverrides { bound: Some(cfg.bound + 8), neg_offset: Some(cfg.neg_offset + 2) },
                ..PairConfig::default()
            };
            let prime = PairConfig { field: FieldMode::Prime(DEFAULT_PRIME), ..PairConfig::default() };
            let e = exported(&base);
            let same = e.0.is_some()
                && base.window.stable
                && exported(&check_pair(h1, h2, &wider)) == e
                && exported(&check_pair(h1, h2, &prime)) == e;
            unstable += usize::from(!same);
        }
    }
    gate.line(
        7,
        "stability under (N+8, D+2) and prime:2147483647, genus <= 4",
        unstable == 0 && pairs == 225,
        format!("{pairs} pairs, {unstable} changed"),
    );

    let small_cfg = CampaignConfig { max_genus: 4, seed: 7, ..CampaignConfig::default() };
    let a = run_campaign(&small_cfg).unwrap().to_json().unwrap();
    let b = run_campaign(&small_cfg).unwrap().to_json().unwrap();
    let c = run_campaign(&CampaignConfig { jobs: 4, ..small_cfg }).unwrap().to_json().unwrap();
    let big_same = serial.to_json().unwrap() == parallel.to_json().unwrap();
    gate.line(
        8,
        "byte-identical campaign JSON",
        a == b && a == c && big_same,
        format!("genus 4 repeat/jobs=4 {}, genus 6 jobs=1 vs jobs=8 {}", a == b && a == c, big_same),
    );

    println!("{} of 8 criteria passed", 8 - gate.failed);
    if gate.failed > 0 {
        std::process::exit(1);
    }
}
