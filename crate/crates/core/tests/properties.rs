use std::collections::BTreeSet;
use std::sync::OnceLock;

use proptest::prelude::*;

use agfiber::fiber::{build_fiber, canonical, classify_fiber, predicted_flags, FiberClassification};
use agfiber::scalar::{FieldMode, Rational, DEFAULT_PRIME};
use agfiber::semigroup::{classify_ring, NumericalSemigroup, RelativeIdealZ};
use agfiber::verify::{check_pair, enumerate_semigroups, PairConfig, TheoremReport};
use agfiber::window::{build_window, iso_test, BranchWindow, WindowOverrides};

fn pool() -> &'static [NumericalSemigroup] {
    static POOL: OnceLock<Vec<NumericalSemigroup>> = OnceLock::new();
    POOL.get_or_init(|| enumerate_semigroups(4).unwrap())
}

fn semigroup() -> impl Strategy<Value = NumericalSemigroup> {
    (0..pool().len()).prop_map(|i| pool()[i].clone())
}

fn small_semigroup() -> impl Strategy<Value = NumericalSemigroup> {
    (0..7usize).prop_map(|i| pool()[i].clone())
}

/// `⋃ (g + H)` over a few random shifts.
fn ideal_of(h: &NumericalSemigroup, shifts: &[i64]) -> RelativeIdealZ {
    let hi = shifts.iter().max().unwrap() + h.frobenius() + 2;
    let lo = *shifts.iter().min().unwrap();
    RelativeIdealZ::from_fn(lo, hi, |z| shifts.iter().any(|&g| h.contains(z - g)))
}

fn shifts() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-3i64..8, 1..4)
}

/// Membership of `e` on `[lo, hi)`.
fn naive(e: &RelativeIdealZ, lo: i64, hi: i64) -> BTreeSet<i64> {
    (lo..hi).filter(|&z| e.contains(z)).collect()
}

fn window(h1: &NumericalSemigroup, h2: &NumericalSemigroup) -> BranchWindow<Rational> {
    let cfg = build_window(h1, h2, FieldMode::Rational, WindowOverrides::default()).unwrap();
    BranchWindow::new(cfg.enlarged(40, 20), ()).unwrap()
}

fn classify(h1: &NumericalSemigroup, h2: &NumericalSemigroup) -> FiberClassification {
    let cfg = build_window(h1, h2, FieldMode::Rational, WindowOverrides::default()).unwrap();
    let f = build_fiber::<Rational>(cfg, ()).unwrap();
    let (x, _) = canonical(&f, 5).unwrap();
    classify_fiber(&f, &x, 5).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn ideal_ops_match_naive_sets(h in semigroup(), a in shifts(), b in shifts()) {
        let (e1, e2) = (ideal_of(&h, &a), ideal_of(&h, &b));
        let (lo, hi) = (-20, 60);
        let (s1, s2) = (naive(&e1, lo, hi), naive(&e2, lo, hi));
        let sum: BTreeSet<i64> = s1.union(&s2).copied().collect();
        prop_assert_eq!(naive(&e1.sum(&e2), lo, hi), sum);
        let meet: BTreeSet<i64> = s1.intersection(&s2).copied().collect();
        prop_assert_eq!(naive(&e1.intersection(&e2), lo, hi), meet);
        // every member of E₁ + E₂ (Minkowski) below 25 is a sum of members above −20
        let prod = e1.product(&e2);
        for z in -6..25 {
            let direct = (-10..35).any(|x| e1.contains(x) && e2.contains(z - x));
            prop_assert_eq!(prod.contains(z), direct, "product at {}", z);
        }
        let col = e1.colon(&e2);
        for z in -15..15 {
            let direct = (-10..40).all(|y| !e2.contains(y) || e1.contains(z + y));
            prop_assert_eq!(col.contains(z), direct, "colon at {}", z);
        }
    }

    #[test]
    fn ideal_colon_adjunction(h in semigroup(), a in shifts(), b in shifts(), c in shifts()) {
        let (m, n, p) = (ideal_of(&h, &a), ideal_of(&h, &b), ideal_of(&h, &c));
        prop_assert_eq!(p.contains_ideal(&m.product(&n)), p.colon(&n).contains_ideal(&m));
        prop_assert_eq!(m.product(&n), n.product(&m));
    }

    #[test]
    fn module_ops_follow_branch_degrees(h1 in semigroup(), h2 in semigroup(), a in shifts(), b in shifts(), c in shifts(), d in shifts()) {
        let w = window(&h1, &h2);
        let m = w.monomial(&ideal_of(&h1, &a), &ideal_of(&h2, &b)).unwrap();
        let n = w.monomial(&ideal_of(&h1, &c), &ideal_of(&h2, &d)).unwrap();
        let p = w.product(&m, &n).unwrap();
        prop_assert_eq!(&p, &w.product(&n, &m).unwrap());
        prop_assert_eq!(p.branch_degrees(0), ideal_of(&h1, &a).product(&ideal_of(&h1, &c)));
        prop_assert_eq!(p.branch_degrees(1), ideal_of(&h2, &b).product(&ideal_of(&h2, &d)));
        let q = w.colon(&m, &n).unwrap();
        prop_assert_eq!(q.branch_degrees(0), ideal_of(&h1, &a).colon(&ideal_of(&h1, &c)));
        prop_assert!(w.contains(&m, &w.product(&q, &n).unwrap()));
    }

    #[test]
    fn length_is_additive(h1 in semigroup(), h2 in semigroup(), a in 0i64..4, b in 0i64..4, c1 in 1i64..9, c2 in 1i64..9) {
        let w = window(&h1, &h2);
        let top = w.monomial(&RelativeIdealZ::upward(0), &RelativeIdealZ::upward(0)).unwrap();
        let x = w.element(a, c1, b, c2);
        let mid = w.sum(w.ring(), &w.principal(&x).unwrap()).unwrap();
        let low = w.product(w.maximal(), &mid).unwrap();
        prop_assert!(w.contains(&top, &mid) && w.contains(&mid, &low));
        prop_assert_eq!(
            w.length(&top, &low).unwrap(),
            w.length(&top, &mid).unwrap() + w.length(&mid, &low).unwrap()
        );
    }

    #[test]
    fn scaled_modules_are_isomorphic(h1 in semigroup(), h2 in semigroup(), a in shifts(), b in shifts(), u in 1i64..9, v in 1i64..9, k in 0i64..3) {
        let w = window(&h1, &h2);
        let m = w.monomial(&ideal_of(&h1, &a), &ideal_of(&h2, &b)).unwrap();
        let q = w.element(k, u, k + 1, v);
        let n = w.scale(&m, &q).unwrap();
        prop_assert!(iso_test(&w, &m, &n, 3).unwrap().is_isomorphic());
        prop_assert_eq!(w.num_generators(&m).unwrap(), w.num_generators(&n).unwrap());
    }

    #[test]
    fn ring_flag_chains(h in semigroup()) {
        let f = classify_ring(&h).flags;
        prop_assert!(!f.gorenstein || f.almost_gorenstein);
        prop_assert!(!f.almost_gorenstein || f.nearly_gorenstein);
        prop_assert!(!f.almost_gorenstein || f.generalized_gorenstein);
        prop_assert!(!(f.gorenstein && f.two_almost_gorenstein));
    }

    #[test]
    fn ring_classification_round_trips(h in semigroup()) {
        let c = classify_ring(&h);
        let back: agfiber::semigroup::RingClassification = serde_json::from_str(&serde_json::to_string(&c).unwrap()).unwrap();
        prop_assert_eq!(back, c);
        prop_assert_eq!(h.to_string().parse::<NumericalSemigroup>().unwrap(), h);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn fiber_prediction_matches_direct(h1 in small_semigroup(), h2 in small_semigroup()) {
        let c = classify(&h1, &h2);
        let l = classify_ring(&h1).flags;
        let r = classify_ring(&h2).flags;
        prop_assert_eq!(predicted_flags(&l, &r), c.direct);
        prop_assert!(c.agree);
        let d = c.direct;
        prop_assert!(!d.gorenstein || d.almost_gorenstein);
        prop_assert!(!d.almost_gorenstein || d.nearly_gorenstein);
        prop_assert!(!d.almost_gorenstein || d.generalized_gorenstein);
    }

    #[test]
    fn fiber_is_symmetric(h1 in small_semigroup(), h2 in small_semigroup()) {
        let (a, b) = (classify(&h1, &h2), classify(&h2, &h1));
        prop_assert_eq!((a.direct, a.lengths, a.r, a.e, a.v), (b.direct, b.lengths, b.r, b.e, b.v));
    }

    #[test]
    fn reports_round_trip_and_repeat(h1 in small_semigroup(), h2 in small_semigroup(), seed in any::<u64>()) {
        let cfg = PairConfig { seed, ..PairConfig::default() };
        let r = check_pair(&h1, &h2, &cfg);
        prop_assert!(r.passed(), "{:?}", r.failures());
        let json = serde_json::to_string(&r).unwrap();
        let back: TheoremReport = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(&back, &r);
        prop_assert_eq!(serde_json::to_string(&check_pair(&h1, &h2, &cfg)).unwrap(), json);
    }

    #[test]
    fn prime_field_agrees_with_rationals(h1 in small_semigroup(), h2 in small_semigroup()) {
        let q = check_pair(&h1, &h2, &PairConfig::default());
        let p = check_pair(&h1, &h2, &PairConfig { field: FieldMode::Prime(DEFAULT_PRIME), ..PairConfig::default() });
        let (fq, fp) = (q.fiber.as_ref().unwrap(), p.fiber.as_ref().unwrap());
        prop_assert_eq!((fq.direct, fq.lengths, fq.r), (fp.direct, fp.lengths, fp.r));
        let ids = |r: &TheoremReport| r.identities.iter().map(|i| (i.id.clone(), i.ok)).collect::<Vec<_>>();
        prop_assert_eq!(ids(&q), ids(&p));
    }
}
