mod common;

use agfiber::semigroup::{classify_ring, NumericalSemigroup, RingStructure};
use agfiber::verify::enumerate_semigroups;
use common::{enumerate, oracle, Gaps};

fn to_library(h: &Gaps) -> NumericalSemigroup {
    let gaps: Vec<u32> = h.0.iter().map(|&g| g as u32).collect();
    NumericalSemigroup::from_gaps(&gaps).expect("oracle gap sets are semigroups")
}

#[test]
fn genus_counts_match_the_tree() {
    let expected = [1, 1, 2, 4, 7, 12, 23, 39, 67, 118, 204, 343, 592];
    let all = enumerate(12);
    for (g, &n) in expected.iter().enumerate() {
        assert_eq!(all.iter().filter(|h| h.0.len() == g).count(), n, "genus {g}");
    }
    assert_eq!(enumerate_semigroups(12).unwrap().len(), all.len());
}

#[test]
fn oracle_criteria_agree_with_each_other() {
    for h in enumerate(10) {
        let o = oracle(&h);
        assert_eq!(o.flags.almost_gorenstein, o.flags.almost_gorenstein_gap, "{h:?}");
        assert_eq!(o.flags.two_almost_gorenstein, o.flags.two_almost_gorenstein_conductor, "{h:?}");
    }
}

#[test]
fn classifier_matches_oracle_to_genus_9() {
    for h in enumerate(9) {
        let o = oracle(&h);
        let c = classify_ring(&to_library(&h));
        assert_eq!(c.gens, o.gens);
        assert_eq!((c.e, c.v, c.frobenius, c.genus, c.r), (o.e, o.v, o.frobenius, o.genus, o.r), "{:?}", c.gens);
        assert_eq!(c.flags.gorenstein, o.flags.gorenstein, "{:?}", c.gens);
        assert_eq!(c.flags.almost_gorenstein, o.flags.almost_gorenstein, "{:?}", c.gens);
        assert_eq!(c.flags.generalized_gorenstein, o.flags.generalized_gorenstein, "{:?}", c.gens);
        assert_eq!(c.flags.two_almost_gorenstein, o.flags.two_almost_gorenstein, "{:?}", c.gens);
        assert_eq!(c.flags.nearly_gorenstein, o.flags.nearly_gorenstein, "{:?}", c.gens);
        assert_eq!(c.flags.is_dvr, o.flags.is_dvr);
        assert_eq!((c.lengths.len_k_mod_r, c.lengths.len_r_mod_c), (o.len_k_mod_r, o.len_r_mod_c), "{:?}", c.gens);
    }
}

#[test]
fn known_rings() {
    let parse = |s: &str| classify_ring(&s.parse::<NumericalSemigroup>().unwrap());
    let c = parse("3,4,5");
    assert!(c.flags.almost_gorenstein && !c.flags.gorenstein);
    assert_eq!(c.r, 2);
    let c = parse("2,3");
    assert!(c.flags.gorenstein && !c.flags.two_almost_gorenstein);
    let c = parse("3,7,8");
    assert!(!c.flags.almost_gorenstein && c.flags.two_almost_gorenstein);
    assert_eq!(c.lengths.len_r_mod_c, 2);
}

#[test]
fn trace_identities_to_genus_12() {
    for h in enumerate_semigroups(12).unwrap() {
        let st = RingStructure::new(&h);
        if st.canonical == st.ring {
            continue;
        }
        let a = &st.trace_colon;
        let k = &st.canonical;
        assert_eq!(a.product(&st.canonical_colon_maximal), a.product(k), "{h}");
        let k2 = k.product(k);
        assert_eq!(a.product(k) == *a, k2 == k2.product(k), "{h}");
    }
}
