//! Receiver role.
//!
//! A V2X authentication message is checked in a fixed order, and the first
//! failing stage is reported:
//!
//! 1. the certificate's validity window contains `now`;
//! 2. at least one trusted, unexpired sanitization key exists;
//! 3. the re-randomization proof verifies against one of those keys;
//! 4. `pkv_j = rcv_j + h1·pkc + h2_j·pks_j` is rebuilt;
//! 5. the message signature verifies under `pkv_j`.
//!
//! Decoding failures are reported before any of these.

use std::fmt;
use std::sync::{Arc, RwLock};

use serde::{Deserialize, Serialize};

use crate::ca::CertificateAuthority;
use crate::cert::{meta_hash, sanitizable_hash, simpl_hash, ExplicitCertificate, ShortTermCertificate, SimplCertificate};
use crate::group::Group;
use crate::signature;
use crate::vehicle::{proof_challenge, V2xAuthMessage};
use crate::wire::WireObject;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrustedSanitizationKey<G: Group> {
    pub public: G::Element,
    pub cohort_id: String,
    /// Unix seconds; the key is trusted while `now < expiry`.
    pub expiry: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrustStore<G: Group> {
    pub ca_public: G::Element,
    pub san_keys: Vec<TrustedSanitizationKey<G>>,
}

impl<G: Group> TrustStore<G> {
    pub fn new(ca_public: G::Element) -> Self {
        TrustStore {
            ca_public,
            san_keys: Vec::new(),
        }
    }

    pub fn with_san_key(mut self, public: G::Element, cohort_id: impl Into<String>, expiry: u32) -> Self {
        self.san_keys.push(TrustedSanitizationKey {
            public,
            cohort_id: cohort_id.into(),
            expiry,
        });
        self
    }

    /// Public half of a CA's state.
    pub fn from_authority(ca: &CertificateAuthority<G>) -> Self {
        ca.cohorts.iter().fold(Self::new(ca.keys.public), |t, c| {
            t.with_san_key(c.public, c.cohort_id.clone(), c.expiry)
        })
    }

    pub fn active_san_keys(&self, now: u32) -> impl Iterator<Item = &TrustedSanitizationKey<G>> {
        self.san_keys.iter().filter(move |k| now < k.expiry)
    }
}

/// Copy-on-write publication point for a trust store. Readers take a cheap
/// snapshot; writers replace the whole store.
#[derive(Debug)]
pub struct SharedTrustStore<G: Group> {
    current: RwLock<Arc<TrustStore<G>>>,
}

impl<G: Group> SharedTrustStore<G> {
    pub fn new(store: TrustStore<G>) -> Self {
        SharedTrustStore {
            current: RwLock::new(Arc::new(store)),
        }
    }

    pub fn snapshot(&self) -> Arc<TrustStore<G>> {
        self.current.read().expect("trust store lock poisoned").clone()
    }

    pub fn publish(&self, store: TrustStore<G>) {
        *self.current.write().expect("trust store lock poisoned") = Arc::new(store);
    }

    /// Clone the current store, edit the copy, publish it.
    pub fn update(&self, edit: impl FnOnce(&mut TrustStore<G>)) {
        let mut guard = self.current.write().expect("trust store lock poisoned");
        let mut next = (**guard).clone();
        edit(&mut next);
        *guard = Arc::new(next);
    }
}

/// First failing stage of V2X verification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RejectReason {
    Format,
    Expired,
    UntrustedSanitizationKey,
    Proof,
    Reconstruction,
    Signature,
}

impl RejectReason {
    pub fn as_str(self) -> &'static str {
        match self {
            RejectReason::Format => "format",
            RejectReason::Expired => "expired",
            RejectReason::UntrustedSanitizationKey => "untrusted-sanitization-key",
            RejectReason::Proof => "proof",
            RejectReason::Reconstruction => "reconstruction",
            RejectReason::Signature => "signature",
        }
    }
}

impl fmt::Display for RejectReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Accepted<G: Group> {
    pub public: G::Element,
    pub cohort_id: String,
}

/// `resp·g == (pks_j − pks)·cha + com` with `cha = H("cha", [g, com, pks_j − pks])`.
pub fn verify_proof<G: Group>(
    commitment: &G::Element,
    response: &G::Scalar,
    san_public_j: &G::Element,
    san_public: &G::Element,
) -> bool {
    let delta = *san_public_j - *san_public;
    let cha = proof_challenge::<G>(commitment, &delta);
    G::mul_base(response) == delta * cha + *commitment
}

/// [`verify_proof`] on encoded inputs; malformed encodings give
/// `Err(Format)`, a failing proof gives `Err(Proof)`.
pub fn verify_proof_encoded<G: Group>(
    commitment: &[u8],
    response: &[u8],
    san_public_j: &[u8],
    san_public: &[u8],
) -> Result<(), RejectReason> {
    let fmt = |_| RejectReason::Format;
    let com = G::point_from_bytes(commitment).map_err(fmt)?;
    let resp = G::scalar_from_bytes(response).map_err(fmt)?;
    let pks_j = G::point_from_bytes(san_public_j).map_err(fmt)?;
    let pks = G::point_from_bytes(san_public).map_err(fmt)?;
    if verify_proof::<G>(&com, &resp, &pks_j, &pks) {
        Ok(())
    } else {
        Err(RejectReason::Proof)
    }
}

/// `rcv_j + h1·pkc + h2_j·pks_j`.
pub fn reconstruct_pkv<G: Group>(
    cert: &ShortTermCertificate<G>,
    san_public_j: &G::Element,
    ca_public: &G::Element,
) -> G::Element {
    let h1 = meta_hash::<G>(&cert.meta, ca_public);
    let h2 = sanitizable_hash::<G>(&cert.rcv, &cert.slv.0, san_public_j);
    cert.rcv + *ca_public * h1 + *san_public_j * h2
}

pub fn verify_v2x<G: Group>(
    msg: &V2xAuthMessage<G>,
    trust: &TrustStore<G>,
    now: u32,
) -> Result<Accepted<G>, RejectReason> {
    if !msg.cert.meta.is_valid_at(now) {
        return Err(RejectReason::Expired);
    }
    let mut candidates = trust.active_san_keys(now).peekable();
    if candidates.peek().is_none() {
        return Err(RejectReason::UntrustedSanitizationKey);
    }
    let cohort = candidates
        .find(|k| verify_proof::<G>(&msg.commitment, &msg.response, &msg.san_public, &k.public))
        .ok_or(RejectReason::Proof)?;
    let public = reconstruct_pkv::<G>(&msg.cert, &msg.san_public, &trust.ca_public);
    if public == G::identity() {
        return Err(RejectReason::Reconstruction);
    }
    if !signature::verify::<G>(&public, &msg.message, &msg.signature) {
        return Err(RejectReason::Signature);
    }
    Ok(Accepted {
        public,
        cohort_id: cohort.cohort_id.clone(),
    })
}

/// Decode and verify.
pub fn verify_v2x_bytes<G: Group>(
    bytes: &[u8],
    trust: &TrustStore<G>,
    now: u32,
) -> Result<(V2xAuthMessage<G>, Accepted<G>), RejectReason> {
    let msg = V2xAuthMessage::<G>::decode(bytes).map_err(|_| RejectReason::Format)?;
    let ok = verify_v2x(&msg, trust, now)?;
    Ok((msg, ok))
}

/// SIMPL receiver: `pkv = rcv + h·pkc`. Validated implicitly by the first
/// message signature that verifies under it.
pub fn verify_simpl_receiver<G: Group>(cert: &SimplCertificate<G>, ca_public: &G::Element) -> G::Element {
    cert.rcv + *ca_public * simpl_hash::<G>(cert, ca_public)
}

/// Explicit receiver: check the CA signature.
pub fn verify_explicit_receiver<G: Group>(cert: &ExplicitCertificate<G>, ca_public: &G::Element) -> bool {
    cert.pkv != G::identity() && signature::verify::<G>(ca_public, &cert.signed_body(), &cert.sig)
}
