//! Vehicle role: credential acceptance and short-term certificate generation.
//!
//! For pseudonym `j` the vehicle draws fresh `r3, r4, ρ` and computes
//!
//! ```text
//! slv_j   = [AES_lv(ID_CA ‖ j) ⊕ (ID_CA ‖ j)]_9
//! rcv_j   = rcv + r3·g
//! sks_j   = sks + ρ              pks_j = pks + ρ·g
//! com_j   = r4·g                 resp_j = r4 + H("cha", [g, com_j, ρ·g])·ρ
//! sig2_j  = r2 + H("h2", [rcv_j, slv_j, pks_j])·sks_j
//! skv_j   = x̂ + sig1 + sig2_j + r3
//! ```
//!
//! so that `skv_j·g = rcv_j + h1·pkc + h2_j·pks_j`, the key a receiver
//! rebuilds from public data.
//!
//! Note the sanitized `sig2_j` in `skv_j`. Using the CA's original `sig2`
//! gives a key whose public half is `rcv_j + h1·pkc + h2·pks`, which differs
//! from the receiver's reconstruction by `h2·pks − h2_j·pks_j`.

use std::collections::VecDeque;

use rand::{CryptoRng, RngCore};
use serde::{Deserialize, Serialize};
use zeroize::Zeroize;

use crate::ca::{unwrap_i2v, ExplicitIssuance, I2vMessage, NoinsIssuance, SimplIssuance};
use crate::cert::{meta_hash, sanitizable_hash, simpl_hash, ShortTermCertificate};
use crate::error::{Error, Result};
use crate::group::{hash_to_scalar, tags, Group};
use crate::linkage::{derive_slv, LinkageContext};
use crate::signature::{self, Signature};

/// A decrypted NOINS credential that passed the issuance check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaCredential<G: Group> {
    pub issuance: NoinsIssuance<G>,
    pub cocoon_secret: G::Scalar,
    pub ca_public: G::Element,
    pub san_public: G::Element,
}

impl<G: Group> Drop for CaCredential<G> {
    fn drop(&mut self) {
        self.cocoon_secret.zeroize();
        self.issuance.san_secret.zeroize();
        self.issuance.san_nonce.zeroize();
    }
}

/// `(x̂ + sig1 + sig2)·g == rcv + h1·pkc + h2·pks`.
pub fn issuance_equation_holds<G: Group>(
    issuance: &NoinsIssuance<G>,
    cocoon_secret: &G::Scalar,
    ca_public: &G::Element,
    san_public: &G::Element,
) -> bool {
    let cert = &issuance.cert;
    let h1 = meta_hash::<G>(&cert.meta, ca_public);
    let h2 = sanitizable_hash::<G>(&cert.rcv, &cert.lv.0, san_public);
    let lhs = G::mul_base(&(*cocoon_secret + issuance.meta_sig + issuance.san_sig));
    lhs == cert.rcv + *ca_public * h1 + *san_public * h2
}

impl<G: Group> CaCredential<G> {
    /// Check the issuance equation and that `sks` matches `pks`.
    pub fn new(
        issuance: NoinsIssuance<G>,
        cocoon_secret: G::Scalar,
        ca_public: G::Element,
        san_public: G::Element,
    ) -> Result<Self> {
        if !issuance_equation_holds(&issuance, &cocoon_secret, &ca_public, &san_public)
            || G::mul_base(&issuance.san_secret) != san_public
        {
            return Err(Error::InvalidCredential);
        }
        Ok(CaCredential {
            issuance,
            cocoon_secret,
            ca_public,
            san_public,
        })
    }

    /// `x̂ + sig1`, the part of every short-term key fixed by the credential.
    fn base_secret(&self) -> G::Scalar {
        self.cocoon_secret + self.issuance.meta_sig
    }
}

/// Decrypt an I2V message with the cocoon key and verify it.
pub fn accept_credential<G: Group>(
    msg: &I2vMessage<G>,
    cocoon_secret: &G::Scalar,
    ca_public: &G::Element,
    san_public: &G::Element,
) -> Result<CaCredential<G>> {
    let issuance: NoinsIssuance<G> = unwrap_i2v(msg, cocoon_secret)?;
    CaCredential::new(issuance, *cocoon_secret, *ca_public, *san_public)
}

/// SIMPL vehicle side: `skv = x̂ + sig`, accepted if `skv·g = rcv + h·pkc`.
/// Returns `(skv, pkv)`.
pub fn accept_simpl<G: Group>(
    issuance: &SimplIssuance<G>,
    cocoon_secret: &G::Scalar,
    ca_public: &G::Element,
) -> Result<(G::Scalar, G::Element)> {
    let secret = *cocoon_secret + issuance.sig;
    let public = G::mul_base(&secret);
    let h = simpl_hash::<G>(&issuance.cert, ca_public);
    if public != issuance.cert.rcv + *ca_public * h {
        return Err(Error::InvalidCredential);
    }
    Ok((secret, public))
}

/// Explicit vehicle side: CA signature valid and `pkv = (x̂ + r)·g`.
pub fn accept_explicit<G: Group>(
    issuance: &ExplicitIssuance<G>,
    cocoon_secret: &G::Scalar,
    ca_public: &G::Element,
) -> Result<(G::Scalar, G::Element)> {
    let cert = &issuance.cert;
    if !signature::verify::<G>(ca_public, &cert.signed_body(), &cert.sig) {
        return Err(Error::InvalidCredential);
    }
    let secret = *cocoon_secret + issuance.offset;
    if G::mul_base(&secret) != cert.pkv {
        return Err(Error::InvalidCredential);
    }
    Ok((secret, cert.pkv))
}

/// Per-pseudonym randomness. Zeroized on drop.
#[derive(Clone, Debug)]
pub struct ShortTermRandomness<G: Group> {
    /// Shift applied to the reconstruction value (`r3`).
    pub rcv_shift: G::Scalar,
    /// Commitment nonce of the re-randomization proof (`r4`).
    pub proof_nonce: G::Scalar,
    /// Sanitization key re-randomizer (`ρ`).
    pub rerandomizer: G::Scalar,
}

impl<G: Group> ShortTermRandomness<G> {
    pub fn random<R: RngCore + CryptoRng + ?Sized>(rng: &mut R) -> Self {
        ShortTermRandomness {
            rcv_shift: G::random_scalar(rng),
            proof_nonce: G::random_scalar(rng),
            rerandomizer: G::random_scalar(rng),
        }
    }
}

impl<G: Group> Drop for ShortTermRandomness<G> {
    fn drop(&mut self) {
        self.rcv_shift.zeroize();
        self.proof_nonce.zeroize();
        self.rerandomizer.zeroize();
    }
}

/// A self-generated pseudonym: certificate, key pair, re-randomized
/// sanitization key pair and the proof for it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortTermBundle<G: Group> {
    pub j: u32,
    pub cert: ShortTermCertificate<G>,
    pub secret: G::Scalar,
    pub public: G::Element,
    pub san_secret: G::Scalar,
    pub san_public: G::Element,
    pub commitment: G::Element,
    pub response: G::Scalar,
}

impl<G: Group> Drop for ShortTermBundle<G> {
    fn drop(&mut self) {
        self.secret.zeroize();
        self.san_secret.zeroize();
    }
}

impl<G: Group> ShortTermBundle<G> {
    /// `sig2_j`, recomputed. Diagnostic only; never sent.
    pub fn sanitized_signature(&self, cred: &CaCredential<G>) -> G::Scalar {
        let h2 = sanitizable_hash::<G>(&self.cert.rcv, &self.cert.slv.0, &self.san_public);
        sanitize::<G>(&cred.issuance.san_nonce, &self.san_secret, &h2)
    }
}

/// Shift a sanitization key pair by `ρ`.
pub fn rerandomize_key<G: Group>(
    secret: &G::Scalar,
    public: &G::Element,
    rerandomizer: &G::Scalar,
) -> (G::Scalar, G::Element, G::Element) {
    let shift = G::mul_base(rerandomizer);
    (*secret + *rerandomizer, *public + shift, shift)
}

/// Challenge of the re-randomization proof, `H("cha", [g, com, Δ])` with
/// `Δ = pks_j − pks`.
pub fn proof_challenge<G: Group>(commitment: &G::Element, delta: &G::Element) -> G::Scalar {
    hash_to_scalar::<G>(
        tags::CHALLENGE,
        &[
            &G::point_to_bytes(&G::generator()),
            &G::point_to_bytes(commitment),
            &G::point_to_bytes(delta),
        ],
    )
}

/// Non-interactive proof of knowledge of `ρ` with `Δ = ρ·g`.
/// Returns `(com, resp)`.
pub fn prove_rerandomization<G: Group>(
    rerandomizer: &G::Scalar,
    delta: &G::Element,
    nonce: &G::Scalar,
) -> (G::Element, G::Scalar) {
    let commitment = G::mul_base(nonce);
    let cha = proof_challenge::<G>(&commitment, delta);
    (commitment, *nonce + cha * *rerandomizer)
}

/// Re-sign the sanitizable part under the shifted key: `r2 + h2_j·sks_j`.
pub fn sanitize<G: Group>(san_nonce: &G::Scalar, san_secret: &G::Scalar, hash: &G::Scalar) -> G::Scalar {
    *san_nonce + *hash * *san_secret
}

fn check_index(j: u32, n_cs: u32) -> Result<()> {
    if j == 0 || j > n_cs {
        return Err(Error::IndexOutOfRange { j, n_cs });
    }
    Ok(())
}

pub fn gen_short_term<G: Group, R: RngCore + CryptoRng + ?Sized>(
    cred: &CaCredential<G>,
    j: u32,
    policy: &GenerationPolicy,
    ctx: &LinkageContext,
    rng: &mut R,
) -> Result<ShortTermBundle<G>> {
    check_index(j, policy.n_cs)?;
    gen_short_term_with(cred, j, policy, ctx, ShortTermRandomness::random(rng))
}

/// [`gen_short_term`] with caller-supplied randomness.
pub fn gen_short_term_with<G: Group>(
    cred: &CaCredential<G>,
    j: u32,
    policy: &GenerationPolicy,
    ctx: &LinkageContext,
    randomness: ShortTermRandomness<G>,
) -> Result<ShortTermBundle<G>> {
    check_index(j, policy.n_cs)?;
    let issued = &cred.issuance;
    let slv = derive_slv(&issued.cert.lv, ctx, j)?;
    let rcv = issued.cert.rcv + G::mul_base(&randomness.rcv_shift);
    let (san_secret, san_public, delta) =
        rerandomize_key::<G>(&issued.san_secret, &cred.san_public, &randomness.rerandomizer);
    let (commitment, response) =
        prove_rerandomization::<G>(&randomness.rerandomizer, &delta, &randomness.proof_nonce);
    let h2 = sanitizable_hash::<G>(&rcv, &slv.0, &san_public);
    let san_sig = sanitize::<G>(&issued.san_nonce, &san_secret, &h2);
    let secret = cred.base_secret() + san_sig + randomness.rcv_shift;
    Ok(ShortTermBundle {
        j,
        cert: ShortTermCertificate {
            rcv,
            meta: issued.cert.meta,
            slv,
        },
        secret,
        public: G::mul_base(&secret),
        san_secret,
        san_public,
        commitment,
        response,
    })
}

/// When short-term certificates are produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Trigger {
    PreGenerateAll,
    OnDemand,
}

/// How long one pseudonym should be used before switching. Advisory.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LifetimeHint {
    pub max_seconds: Option<u32>,
    pub max_messages: Option<u32>,
}

impl LifetimeHint {
    /// Change every 5 minutes or 100 messages, whichever comes first.
    pub const ETSI: LifetimeHint = LifetimeHint {
        max_seconds: Some(300),
        max_messages: Some(100),
    };
    pub const UNBOUNDED: LifetimeHint = LifetimeHint {
        max_seconds: None,
        max_messages: None,
    };
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenerationPolicy {
    pub n_cs: u32,
    pub trigger: Trigger,
    pub lifetime: LifetimeHint,
}

impl Default for GenerationPolicy {
    fn default() -> Self {
        GenerationPolicy {
            n_cs: 50,
            trigger: Trigger::OnDemand,
            lifetime: LifetimeHint::ETSI,
        }
    }
}

impl GenerationPolicy {
    pub fn with_n_cs(n_cs: u32) -> Result<Self> {
        if n_cs == 0 {
            return Err(Error::InvalidParameter("n_cs must be positive".into()));
        }
        Ok(GenerationPolicy {
            n_cs,
            ..Self::default()
        })
    }
}

/// A credential together with its index counter. Not `Sync`-shared: the
/// next index is the contended resource, so callers serialize access.
#[derive(Debug)]
pub struct ShortTermGenerator<G: Group> {
    credential: CaCredential<G>,
    policy: GenerationPolicy,
    linkage: LinkageContext,
    next_j: u32,
    ready: VecDeque<ShortTermBundle<G>>,
    journal: Vec<u32>,
}

impl<G: Group> ShortTermGenerator<G> {
    /// Under [`Trigger::PreGenerateAll`] every bundle is built here.
    pub fn new<R: RngCore + CryptoRng + ?Sized>(
        credential: CaCredential<G>,
        policy: GenerationPolicy,
        linkage: LinkageContext,
        rng: &mut R,
    ) -> Result<Self> {
        if policy.n_cs == 0 {
            return Err(Error::InvalidParameter("n_cs must be positive".into()));
        }
        let mut gen = ShortTermGenerator {
            credential,
            policy,
            linkage,
            next_j: 1,
            ready: VecDeque::new(),
            journal: Vec::new(),
        };
        if policy.trigger == Trigger::PreGenerateAll {
            while gen.next_j <= policy.n_cs {
                let b = gen.build(rng)?;
                gen.ready.push_back(b);
            }
        }
        Ok(gen)
    }

    fn build<R: RngCore + CryptoRng + ?Sized>(&mut self, rng: &mut R) -> Result<ShortTermBundle<G>> {
        let j = self.next_j;
        let b = gen_short_term(&self.credential, j, &self.policy, &self.linkage, rng)?;
        self.next_j += 1;
        Ok(b)
    }

    /// Next unused pseudonym, or [`Error::PolicyExhausted`].
    pub fn next_bundle<R: RngCore + CryptoRng + ?Sized>(&mut self, rng: &mut R) -> Result<ShortTermBundle<G>> {
        let b = match self.ready.pop_front() {
            Some(b) => b,
            None if self.next_j <= self.policy.n_cs => self.build(rng)?,
            None => return Err(Error::PolicyExhausted(self.policy.n_cs)),
        };
        self.journal.push(b.j);
        Ok(b)
    }

    pub fn remaining(&self) -> u32 {
        self.policy.n_cs + 1 - self.next_j + self.ready.len() as u32
    }

    /// Indices handed out so far, in order.
    pub fn journal(&self) -> &[u32] {
        &self.journal
    }

    pub fn credential(&self) -> &CaCredential<G> {
        &self.credential
    }

    pub fn policy(&self) -> &GenerationPolicy {
        &self.policy
    }
}

/// On-air authentication payload.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct V2xAuthMessage<G: Group> {
    pub cert: ShortTermCertificate<G>,
    pub san_public: G::Element,
    pub commitment: G::Element,
    pub response: G::Scalar,
    pub message: Vec<u8>,
    pub signature: Signature<G>,
}

pub fn sign_v2x<G: Group, R: RngCore + CryptoRng + ?Sized>(
    bundle: &ShortTermBundle<G>,
    message: &[u8],
    rng: &mut R,
) -> V2xAuthMessage<G> {
    V2xAuthMessage {
        cert: bundle.cert,
        san_public: bundle.san_public,
        commitment: bundle.commitment,
        response: bundle.response,
        message: message.to_vec(),
        signature: signature::sign(&bundle.secret, &bundle.public, message, rng),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ca::{issue_noins, wrap_i2v, CaKeyPair, SanitizationKeyPair};
    use crate::cert::Metadata;
    use crate::group::{random_nonzero_scalar, Secp256k1, ToyGroup, ToyScalar};
    use crate::linkage::LinkageValue;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;
    use std::collections::HashSet;

    struct Setup<G: Group> {
        ca: CaKeyPair<G>,
        san: SanitizationKeyPair<G>,
        ctx: LinkageContext,
    }

    fn setup<G: Group>(rng: &mut ChaCha20Rng) -> Setup<G> {
        Setup {
            ca: CaKeyPair::generate(rng),
            san: SanitizationKeyPair::generate("c", 10, rng),
            ctx: LinkageContext::new(*b"CA01").unwrap(),
        }
    }

    fn credential<G: Group>(s: &Setup<G>, rng: &mut ChaCha20Rng) -> CaCredential<G> {
        let x = random_nonzero_scalar::<G, _>(rng);
        let meta = Metadata::new(1, 100, 200, 0).unwrap();
        let is = issue_noins(&G::mul_base(&x), meta, LinkageValue::random(rng), &s.ca, &s.san, rng).unwrap();
        CaCredential::new(is, x, s.ca.public, s.san.public).unwrap()
    }

    fn receiver_key<G: Group>(b: &ShortTermBundle<G>, pkc: &G::Element) -> G::Element {
        let h1 = meta_hash::<G>(&b.cert.meta, pkc);
        let h2 = sanitizable_hash::<G>(&b.cert.rcv, &b.cert.slv.0, &b.san_public);
        b.cert.rcv + *pkc * h1 + b.san_public * h2
    }

    #[test]
    fn accept_distinguishes_decrypt_from_equation_failure() {
        let mut rng = ChaCha20Rng::seed_from_u64(41);
        let s = setup::<Secp256k1>(&mut rng);
        let x = random_nonzero_scalar::<Secp256k1, _>(&mut rng);
        let x_pub = Secp256k1::mul_base(&x);
        let meta = Metadata::new(1, 100, 200, 0).unwrap();
        let mut is = issue_noins(&x_pub, meta, LinkageValue::random(&mut rng), &s.ca, &s.san, &mut rng).unwrap();
        let msg = wrap_i2v::<Secp256k1, _, _>(&is, &x_pub, &mut rng).unwrap();
        assert!(accept_credential(&msg, &x, &s.ca.public, &s.san.public).is_ok());
        assert_eq!(
            accept_credential(&msg, &(x + Secp256k1::one()), &s.ca.public, &s.san.public),
            Err(Error::Decrypt)
        );
        is.meta_sig = is.meta_sig + Secp256k1::one();
        let msg = wrap_i2v::<Secp256k1, _, _>(&is, &x_pub, &mut rng).unwrap();
        assert_eq!(
            accept_credential(&msg, &x, &s.ca.public, &s.san.public),
            Err(Error::InvalidCredential)
        );
    }

    #[test]
    fn baseline_vehicle_checks() {
        use crate::ca::{issue_explicit, issue_simpl};
        use crate::linkage::ShortLinkageValue;
        let mut rng = ChaCha20Rng::seed_from_u64(40);
        let s = setup::<Secp256k1>(&mut rng);
        let x = random_nonzero_scalar::<Secp256k1, _>(&mut rng);
        let x_pub = Secp256k1::mul_base(&x);
        let meta = Metadata::new(1, 100, 200, 0).unwrap();
        let slv = ShortLinkageValue::random(&mut rng);
        let simpl = issue_simpl(&x_pub, meta, slv, &s.ca, &mut rng).unwrap();
        assert!(accept_simpl(&simpl, &x, &s.ca.public).is_ok());
        assert_eq!(
            accept_simpl(&simpl, &(x + Secp256k1::one()), &s.ca.public),
            Err(Error::InvalidCredential)
        );
        let mut exp = issue_explicit(&x_pub, meta, slv, &s.ca, &mut rng).unwrap();
        let (sk, pk) = accept_explicit(&exp, &x, &s.ca.public).unwrap();
        assert_eq!(pk, Secp256k1::mul_base(&sk));
        exp.cert.lv.0[0] ^= 1;
        assert_eq!(accept_explicit(&exp, &x, &s.ca.public), Err(Error::InvalidCredential));
    }

    #[test]
    fn toy_acceptance_only_for_the_issued_cocoon_key() {
        let mut rng = ChaCha20Rng::seed_from_u64(42);
        let s = setup::<ToyGroup>(&mut rng);
        let x = ToyScalar::new(321);
        let meta = Metadata::new(1, 100, 200, 0).unwrap();
        let is = issue_noins(&ToyGroup::mul_base(&x), meta, LinkageValue([5; 16]), &s.ca, &s.san, &mut rng).unwrap();
        let accepted: Vec<_> = ToyScalar::all()
            .filter(|cand| issuance_equation_holds(&is, cand, &s.ca.public, &s.san.public))
            .collect();
        assert_eq!(accepted, vec![x]);
    }

    #[test]
    fn bundles_satisfy_both_key_identities() {
        let mut rng = ChaCha20Rng::seed_from_u64(43);
        let s = setup::<Secp256k1>(&mut rng);
        let policy = GenerationPolicy::default();
        for _ in 0..5 {
            let cred = credential(&s, &mut rng);
            for j in [1, 2, 50] {
                let b = gen_short_term(&cred, j, &policy, &s.ctx, &mut rng).unwrap();
                assert_eq!(b.public, Secp256k1::mul_base(&b.secret));
                assert_eq!(b.public, receiver_key(&b, &s.ca.public));
                let delta = b.san_public - s.san.public;
                let cha = proof_challenge::<Secp256k1>(&b.commitment, &delta);
                assert_eq!(Secp256k1::mul_base(&b.response), delta * cha + b.commitment);
            }
        }
    }

    #[test]
    fn literal_unsanitized_composition_misses_receiver_key() {
        // x̂ + sig1 + sig2 + r3 with the CA's original sig2
        let mut rng = ChaCha20Rng::seed_from_u64(44);
        let s = setup::<ToyGroup>(&mut rng);
        let cred = credential(&s, &mut rng);
        let policy = GenerationPolicy::default();
        let mut mismatches = 0;
        for j in 1..=50 {
            let r = ShortTermRandomness::<ToyGroup>::random(&mut rng);
            let shift = r.rcv_shift;
            let b = gen_short_term_with(&cred, j, &policy, &s.ctx, r).unwrap();
            let literal = cred.cocoon_secret + cred.issuance.meta_sig + cred.issuance.san_sig + shift;
            if ToyGroup::mul_base(&literal) != receiver_key(&b, &s.ca.public) {
                mismatches += 1;
            }
        }
        assert!(mismatches >= 45, "{mismatches}");
    }

    #[test]
    fn degenerate_randomness_keeps_credential_points() {
        let mut rng = ChaCha20Rng::seed_from_u64(45);
        let s = setup::<Secp256k1>(&mut rng);
        let cred = credential(&s, &mut rng);
        let z = Secp256k1::zero();
        let r = ShortTermRandomness::<Secp256k1> {
            rcv_shift: z,
            proof_nonce: Secp256k1::one(),
            rerandomizer: z,
        };
        let b = gen_short_term_with(&cred, 3, &GenerationPolicy::default(), &s.ctx, r).unwrap();
        assert_eq!(b.cert.rcv, cred.issuance.cert.rcv);
        assert_eq!(b.san_public, s.san.public);
        assert_eq!(b.public, receiver_key(&b, &s.ca.public));
    }

    #[test]
    fn index_bounds_and_distinct_pseudonyms() {
        let mut rng = ChaCha20Rng::seed_from_u64(46);
        let s = setup::<Secp256k1>(&mut rng);
        let cred = credential(&s, &mut rng);
        let policy = GenerationPolicy::default();
        assert_eq!(
            gen_short_term(&cred, 0, &policy, &s.ctx, &mut rng),
            Err(Error::IndexOutOfRange { j: 0, n_cs: 50 })
        );
        assert!(gen_short_term(&cred, 51, &policy, &s.ctx, &mut rng).is_err());
        let bundles: Vec<_> = (1..=50)
            .map(|j| gen_short_term(&cred, j, &policy, &s.ctx, &mut rng).unwrap())
            .collect();
        let slv: HashSet<_> = bundles.iter().map(|b| b.cert.slv).collect();
        let rcv: HashSet<_> = bundles.iter().map(|b| Secp256k1::point_to_bytes(&b.cert.rcv)).collect();
        let pks: HashSet<_> = bundles.iter().map(|b| Secp256k1::point_to_bytes(&b.san_public)).collect();
        let com: HashSet<_> = bundles.iter().map(|b| Secp256k1::point_to_bytes(&b.commitment)).collect();
        assert_eq!((slv.len(), rcv.len(), pks.len(), com.len()), (50, 50, 50, 50));
    }

    #[test]
    fn toy_shifts_are_bijections() {
        let mut rng = ChaCha20Rng::seed_from_u64(47);
        let base = ToyGroup::mul_base(&ToyGroup::random_scalar(&mut rng));
        let image: HashSet<_> = ToyScalar::all().map(|r| base + ToyGroup::mul_base(&r)).collect();
        assert_eq!(image.len(), 1019);
    }

    #[test]
    fn generator_policy_and_journal() {
        let mut rng = ChaCha20Rng::seed_from_u64(48);
        let s = setup::<Secp256k1>(&mut rng);
        let mut policy = GenerationPolicy::with_n_cs(3).unwrap();
        let mut gen = ShortTermGenerator::new(credential(&s, &mut rng), policy, s.ctx.clone(), &mut rng).unwrap();
        for want in 1..=3 {
            assert_eq!(gen.next_bundle(&mut rng).unwrap().j, want);
        }
        assert_eq!(gen.next_bundle(&mut rng), Err(Error::PolicyExhausted(3)));
        assert_eq!(gen.journal(), &[1, 2, 3]);

        policy.trigger = Trigger::PreGenerateAll;
        let mut gen = ShortTermGenerator::new(credential(&s, &mut rng), policy, s.ctx.clone(), &mut rng).unwrap();
        assert_eq!(gen.remaining(), 3);
        gen.next_bundle(&mut rng).unwrap();
        assert_eq!(gen.remaining(), 2);
        assert!(GenerationPolicy::with_n_cs(0).is_err());
    }

    #[test]
    fn sanitized_signature_accessor_matches_definition() {
        let mut rng = ChaCha20Rng::seed_from_u64(49);
        let s = setup::<Secp256k1>(&mut rng);
        let cred = credential(&s, &mut rng);
        let r = ShortTermRandomness::<Secp256k1>::random(&mut rng);
        let shift = r.rcv_shift;
        let b = gen_short_term_with(&cred, 1, &GenerationPolicy::default(), &s.ctx, r).unwrap();
        let sig2_j = b.sanitized_signature(&cred);
        assert_eq!(b.secret, cred.cocoon_secret + cred.issuance.meta_sig + sig2_j + shift);
    }
}
