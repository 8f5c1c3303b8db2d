use serde::{Deserialize, Serialize};

use super::{NumericalSemigroup, RelativeIdealZ};

/// The degree sets attached to `R = k[[H]]` that the classifiers and the
/// fiber-product constructions consume.
#[derive(Clone, Debug)]
pub struct RingStructure {
    pub semigroup: NumericalSemigroup,
    pub ring: RelativeIdealZ,
    pub maximal: RelativeIdealZ,
    pub canonical: RelativeIdealZ,
    /// `K : 𝔪`
    pub canonical_colon_maximal: RelativeIdealZ,
    /// `R : K`
    pub trace_colon: RelativeIdealZ,
    /// `R[K]`
    pub blowup: RelativeIdealZ,
    /// `R : R[K]`
    pub conductor: RelativeIdealZ,
    /// The single degree of `(K:𝔪) ∖ K`; equals `F`.
    pub socle_degree: i64,
}

impl RingStructure {
    pub fn new(h: &NumericalSemigroup) -> Self {
        let ring = RelativeIdealZ::ring(h);
        let maximal = RelativeIdealZ::maximal_ideal(h);
        let canonical = RelativeIdealZ::canonical(h);
        let canonical_colon_maximal = canonical.colon(&maximal);
        let extra: Vec<i64> = canonical_colon_maximal
            .members_in(canonical_colon_maximal.offset(), canonical.tail())
            .filter(|&z| !canonical.contains(z))
            .collect();
        assert_eq!(extra.len(), 1, "ℓ((K:𝔪)/K) must be 1 for {h}");
        let trace_colon = ring.colon(&canonical);
        let blowup = canonical.ring_closure();
        let conductor = ring.colon(&blowup);
        RingStructure {
            semigroup: h.clone(),
            ring,
            maximal,
            canonical,
            canonical_colon_maximal,
            trace_colon,
            blowup,
            conductor,
            socle_degree: extra[0],
        }
    }

    /// `ℓ(K/R)`
    pub fn len_k_mod_r(&self) -> usize {
        self.canonical.length_between(&self.ring).expect("R ⊆ K")
    }

    /// `ℓ(R/𝔠)`
    pub fn len_r_mod_c(&self) -> usize {
        self.ring.length_between(&self.conductor).expect("𝔠 ⊆ R")
    }

    /// `μ(K/R) = #(K ∖ (H ∪ (𝔪 + K)))`
    pub fn mu_k_mod_r(&self) -> usize {
        let mk = self.maximal.product(&self.canonical);
        let floor = self.ring.sum(&mk);
        self.canonical.length_between(&floor).expect("R + 𝔪K ⊆ K")
    }

    pub fn flags(&self) -> RingFlags {
        let gorenstein = self.canonical == self.ring;
        let mk = self.maximal.product(&self.canonical);
        let almost_gorenstein = self.maximal.contains_ideal(&mk);
        let len_c = self.len_r_mod_c();
        let generalized_gorenstein =
            gorenstein || self.len_k_mod_r() == self.mu_k_mod_r() * len_c;
        let trace = self.trace_colon.product(&self.canonical);
        RingFlags {
            gorenstein,
            almost_gorenstein,
            generalized_gorenstein,
            two_almost_gorenstein: len_c == 2,
            nearly_gorenstein: trace.contains_ideal(&self.maximal),
            is_dvr: self.semigroup.is_dvr(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RingFlags {
    pub gorenstein: bool,
    pub almost_gorenstein: bool,
    pub generalized_gorenstein: bool,
    pub two_almost_gorenstein: bool,
    pub nearly_gorenstein: bool,
    pub is_dvr: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingLengths {
    pub len_k_mod_r: usize,
    pub len_r_mod_c: usize,
}

/// Classification of `k[[H]]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingClassification {
    pub gens: Vec<u32>,
    pub e: u32,
    pub v: usize,
    #[serde(rename = "F")]
    pub frobenius: i64,
    pub genus: usize,
    pub r: usize,
    pub flags: RingFlags,
    pub lengths: RingLengths,
}

pub fn classify_ring(h: &NumericalSemigroup) -> RingClassification {
    let st = RingStructure::new(h);
    RingClassification {
        gens: h.generators().to_vec(),
        e: h.multiplicity(),
        v: h.embedding_dimension(),
        frobenius: h.frobenius(),
        genus: h.genus(),
        r: h.cm_type(),
        flags: st.flags(),
        lengths: RingLengths { len_k_mod_r: st.len_k_mod_r(), len_r_mod_c: st.len_r_mod_c() },
    }
}
