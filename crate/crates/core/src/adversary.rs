//! Executable attacker strategies for the four security games.
//!
//! Each `play_*` function runs named strategies for a fixed number of trials
//! against a freshly seeded [`World`] and returns one [`GameTranscript`] per
//! strategy. Success always means the honest receiver ([`verify_v2x`])
//! accepts what the attacker produced, except in the toy censuses which test
//! the game equations directly.
//!
//! Transcripts carry a [`TranscriptKind`] so that a caller can tell attacks
//! (expected to fail) from positive controls (expected to succeed) and from
//! out-of-model observations.
//!
//! [`Strategy::RcvCancellation`] succeeds against the scheme and is reported
//! as an attack, not hidden: any holder of a cohort sanitization secret can
//! mint a receiver-accepted pseudonym for metadata of its choice, because
//! `h1` does not depend on `rcv`. See the README.

use std::collections::HashMap;

use rand::{seq::SliceRandom, Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use crate::ca::CertificateAuthority;
use crate::cert::{meta_hash, sanitizable_hash, Metadata, ShortTermCertificate};
use crate::error::{Error, Result};
use crate::group::{random_nonzero_scalar, Group, Profile, ToyElement, ToyGroup, ToyScalar};
use crate::linkage::{match_slv, LinkageValue, ShortLinkageValue};
use crate::signature::{self, Signature};
use crate::vehicle::{
    gen_short_term, prove_rerandomization, rerandomize_key, sign_v2x, CaCredential, GenerationPolicy,
    ShortTermBundle, V2xAuthMessage,
};
use crate::verification::{reconstruct_pkv, verify_v2x, TrustStore};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GameId {
    Immutability,
    Unlinkability,
    Fraud,
    Forgery,
}

/// How a transcript is judged.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TranscriptKind {
    /// Must record zero successes.
    Attack,
    /// Must succeed on every trial. Validates the harness.
    PositiveControl,
    /// Accuracy must sit within 3σ of 1/2.
    Judge,
    /// Accuracy must be at least 0.99.
    ControlJudge,
    /// Recorded for information; no expectation.
    OutOfModel,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    Sig1Reuse,
    RandomSig1,
    DeltaShiftSig1,
    RcvCancellation,
    PointDistance,
    HashPrefix,
    PksClustering,
    LinkageValue,
    RandomSignature,
    ReplayOtherMessage,
    MauledSignature,
    OwnKey,
    IdenticalReplay,
    RcvRerandomization,
    MixAndMatch,
    RandomCertificate,
    HashFixedPoint,
    FullCredential,
}

impl Strategy {
    pub fn as_str(self) -> &'static str {
        match self {
            Strategy::Sig1Reuse => "sig1-reuse",
            Strategy::RandomSig1 => "random-sig1",
            Strategy::DeltaShiftSig1 => "delta-shift-sig1",
            Strategy::RcvCancellation => "rcv-cancellation",
            Strategy::PointDistance => "point-distance",
            Strategy::HashPrefix => "hash-prefix",
            Strategy::PksClustering => "pks-clustering",
            Strategy::LinkageValue => "linkage-value",
            Strategy::RandomSignature => "random-signature",
            Strategy::ReplayOtherMessage => "replay-other-message",
            Strategy::MauledSignature => "mauled-signature",
            Strategy::OwnKey => "own-key",
            Strategy::IdenticalReplay => "identical-replay",
            Strategy::RcvRerandomization => "rcv-rerandomization",
            Strategy::MixAndMatch => "mix-and-match",
            Strategy::RandomCertificate => "random-certificate",
            Strategy::HashFixedPoint => "hash-fixed-point",
            Strategy::FullCredential => "full-credential",
        }
    }
}

/// Attacker knowledge a transcript was produced under.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AttackerModel {
    /// Holds one CA credential: `x̂`, `sig1`, `sig2`, `sks`, `r2`.
    CredentialHolder,
    /// Sees on-air messages only.
    Observer,
    /// Sees on-air messages and has a signing oracle for the victim.
    SigningOracle,
    /// Unregistered; sees short-term certificates.
    Outsider,
    /// Unregistered; also receives valid re-randomized sanitization key
    /// pairs with their proofs.
    OutsiderWithSanitizationKeys,
    /// Holds the victim's own credential (collusion).
    Colluder,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GameTranscript {
    pub game: GameId,
    pub strategy: Strategy,
    pub model: AttackerModel,
    pub kind: TranscriptKind,
    pub profile: Profile,
    pub seed: u64,
    pub trials: u64,
    pub successes: u64,
    /// Fraction of correct judge decisions; linkability only.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub accuracy: Option<f64>,
}

impl GameTranscript {
    fn new(game: GameId, strategy: Strategy, model: AttackerModel, kind: TranscriptKind, profile: Profile, seed: u64) -> Self {
        GameTranscript {
            game,
            strategy,
            model,
            kind,
            profile,
            seed,
            trials: 0,
            successes: 0,
            accuracy: None,
        }
    }

    fn record(&mut self, success: bool) {
        self.trials += 1;
        self.successes += success as u64;
        if matches!(self.kind, TranscriptKind::Judge | TranscriptKind::ControlJudge) {
            self.accuracy = Some(self.successes as f64 / self.trials as f64);
        }
    }

    /// `0.5/√trials`.
    pub fn sigma(&self) -> f64 {
        0.5 / (self.trials.max(1) as f64).sqrt()
    }

    /// Whether the transcript meets the expectation of its kind.
    pub fn holds(&self) -> bool {
        match self.kind {
            TranscriptKind::Attack => self.successes == 0,
            TranscriptKind::PositiveControl => self.trials > 0 && self.successes == self.trials,
            TranscriptKind::Judge => self
                .accuracy
                .is_some_and(|a| (a - 0.5).abs() <= 3.0 * self.sigma()),
            TranscriptKind::ControlJudge => self.accuracy.is_some_and(|a| a >= 0.99),
            TranscriptKind::OutOfModel => true,
        }
    }

    /// Combine two runs of the same strategy.
    pub fn merge(&self, other: &GameTranscript) -> Result<GameTranscript> {
        if (self.game, self.strategy, self.model, self.kind, self.profile)
            != (other.game, other.strategy, other.model, other.kind, other.profile)
        {
            return Err(Error::InvalidParameter("transcripts describe different runs".into()));
        }
        let mut out = self.clone();
        out.trials += other.trials;
        out.successes += other.successes;
        if out.accuracy.is_some() {
            out.accuracy = Some(out.successes as f64 / out.trials.max(1) as f64);
        }
        Ok(out)
    }
}

/// A CA with one cohort, its receivers' trust store and a clock.
pub struct World<G: Group> {
    pub ca: CertificateAuthority<G>,
    pub trust: TrustStore<G>,
    pub policy: GenerationPolicy,
    pub meta: Metadata,
    pub now: u32,
}

pub const WORLD_NOW: u32 = 50_000;

impl<G: Group> World<G> {
    pub fn new(rng: &mut ChaCha20Rng) -> Self {
        let ca = CertificateAuthority::new(*b"CA01", u32::MAX, rng).expect("valid CA id");
        let trust = TrustStore::from_authority(&ca);
        World {
            ca,
            trust,
            policy: GenerationPolicy::default(),
            meta: Metadata::new(1, 1_000, 100_000, 0x20).expect("valid window"),
            now: WORLD_NOW,
        }
    }

    /// Register a fresh vehicle and return its verified credential.
    pub fn enroll(&mut self, rng: &mut ChaCha20Rng) -> CaCredential<G> {
        let x = random_nonzero_scalar::<G, _>(rng);
        let issuance = self.ca.issue_noins(&G::mul_base(&x), self.meta, rng).expect("nonzero cocoon");
        let san_public = self.ca.cohorts[0].public;
        CaCredential::new(issuance, x, self.ca.keys.public, san_public).expect("honest issuance")
    }

    pub fn bundle(&self, cred: &CaCredential<G>, j: u32, rng: &mut ChaCha20Rng) -> ShortTermBundle<G> {
        gen_short_term(cred, j, &self.policy, &self.ca.linkage, rng).expect("index in range")
    }

    /// Metadata that differs from the issued one and is valid at `now`.
    pub fn target_meta(&self) -> Metadata {
        Metadata::new(1, 1_000, u32::MAX, 0x20).expect("valid window")
    }

    /// A re-randomized cohort key pair with its proof, as handed out by the
    /// sanitization key oracle.
    pub fn sanitization_oracle(&self, rng: &mut ChaCha20Rng) -> (G::Scalar, G::Element, G::Element, G::Scalar) {
        let cohort = &self.ca.cohorts[0];
        let rho = G::random_scalar(rng);
        let (sks_j, pks_j, delta) = rerandomize_key::<G>(&cohort.secret, &cohort.public, &rho);
        let (com, resp) = prove_rerandomization::<G>(&rho, &delta, &random_nonzero_scalar::<G, _>(rng));
        (sks_j, pks_j, com, resp)
    }

    fn accepts(&self, msg: &V2xAuthMessage<G>) -> bool {
        verify_v2x(msg, &self.trust, self.now).is_ok()
    }
}

/// Assemble and sign an on-air message from loose parts.
fn assemble<G: Group>(
    cert: ShortTermCertificate<G>,
    pks_j: G::Element,
    com: G::Element,
    resp: G::Scalar,
    secret: G::Scalar,
    message: &[u8],
    rng: &mut ChaCha20Rng,
) -> V2xAuthMessage<G> {
    let public = G::mul_base(&secret);
    V2xAuthMessage {
        cert,
        san_public: pks_j,
        commitment: com,
        response: resp,
        message: message.to_vec(),
        signature: signature::sign(&secret, &public, message, rng),
    }
}

/// Insider construction: choose `t` and set `rcv = t·g − h1·pkc` so the CA
/// term cancels; the remaining `h2·pks_j` has a known discrete log.
pub fn rcv_cancellation<G: Group>(
    meta: Metadata,
    slv: ShortLinkageValue,
    ca_public: &G::Element,
    sks_j: &G::Scalar,
    pks_j: &G::Element,
    t: &G::Scalar,
) -> (ShortTermCertificate<G>, G::Scalar) {
    let h1 = meta_hash::<G>(&meta, ca_public);
    let rcv = G::mul_base(t) - *ca_public * h1;
    let h2 = sanitizable_hash::<G>(&rcv, &slv.0, pks_j);
    (ShortTermCertificate { rcv, meta, slv }, *t + h2 * *sks_j)
}

fn world_and_rng<G: Group>(seed: u64) -> (World<G>, ChaCha20Rng) {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let world = World::new(&mut rng);
    (world, rng)
}

/// Immutability game. The attacker holds `cred` and tries to get a pseudonym with
/// `target_meta` accepted.
///
/// The three `sig1` strategies keep the credential's `rcv` lineage, as the
/// game requires. [`Strategy::RcvCancellation`] abandons it and succeeds.
pub fn play_immutability<G: Group>(
    world: &World<G>,
    cred: &CaCredential<G>,
    target_meta: Metadata,
    trials: u64,
    seed: u64,
) -> Result<Vec<GameTranscript>> {
    let issued = &cred.issuance;
    if target_meta == issued.cert.meta {
        return Err(Error::InvalidParameter("target metadata equals the issued metadata".into()));
    }
    if !target_meta.is_valid_at(world.now) {
        return Err(Error::InvalidParameter("target metadata is not valid now".into()));
    }
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let pkc = cred.ca_public;
    let h1 = meta_hash::<G>(&issued.cert.meta, &pkc);
    let h1_a = meta_hash::<G>(&target_meta, &pkc);
    let mk = |s| GameTranscript::new(GameId::Immutability, s, AttackerModel::CredentialHolder, TranscriptKind::Attack, G::PROFILE, seed);
    let mut out = vec![
        mk(Strategy::Sig1Reuse),
        mk(Strategy::RandomSig1),
        mk(Strategy::DeltaShiftSig1),
        mk(Strategy::RcvCancellation),
    ];
    for _ in 0..trials {
        let j = rng.gen_range(1..=world.policy.n_cs);
        let honest = world.bundle(cred, j, &mut rng);
        let r3 = honest.secret - cred.cocoon_secret - issued.meta_sig - honest.sanitized_signature(cred);
        let mut cert = honest.cert;
        cert.meta = target_meta;
        let h2_j = sanitizable_hash::<G>(&cert.rcv, &cert.slv.0, &honest.san_public);
        let sig2_j = issued.san_nonce + h2_j * honest.san_secret;
        let key = |sig1: G::Scalar| cred.cocoon_secret + sig1 + sig2_j + r3;
        let guess = G::random_scalar(&mut rng);
        let candidates = [
            issued.meta_sig,
            G::random_scalar(&mut rng),
            issued.meta_sig + (h1_a - h1) * guess,
        ];
        for (t, sig1) in out.iter_mut().zip(candidates) {
            let msg = assemble(cert, honest.san_public, honest.commitment, honest.response, key(sig1), b"immutability", &mut rng);
            t.record(world.accepts(&msg) && msg.cert.meta == target_meta);
        }
        let (c, skv) = rcv_cancellation::<G>(target_meta, cert.slv, &pkc, &honest.san_secret, &honest.san_public, &G::random_scalar(&mut rng));
        let msg = assemble(c, honest.san_public, honest.commitment, honest.response, skv, b"immutability", &mut rng);
        out[3].record(world.accepts(&msg) && msg.cert.meta == target_meta);
    }
    Ok(out)
}

fn hamming(a: &[u8], b: &[u8]) -> u32 {
    a.iter().zip(b).map(|(x, y)| (x ^ y).count_ones()).sum()
}

/// Unlinkability game. Each trial draws two pseudonyms, from the same vehicle with
/// probability 1/2 and from two different vehicles otherwise, and asks each
/// judge whether they share a vehicle.
///
/// Same-vehicle pairs always use distinct indices `j`. The linkage-value
/// judge is handed the first pseudonym's secret `lv` and is a positive
/// control.
pub fn play_linkability<G: Group>(vehicles: usize, trials: u64, seed: u64) -> Result<Vec<GameTranscript>> {
    if vehicles < 2 {
        return Err(Error::InvalidParameter("need at least two vehicles".into()));
    }
    let (mut world, mut rng) = world_and_rng::<G>(seed);
    let pool: Vec<(CaCredential<G>, LinkageValue)> = (0..vehicles)
        .map(|_| {
            let c = world.enroll(&mut rng);
            let lv = c.issuance.cert.lv;
            (c, lv)
        })
        .collect();
    let mk = |s, kind| GameTranscript::new(GameId::Unlinkability, s, AttackerModel::Observer, kind, G::PROFILE, seed);
    let mut out = vec![
        mk(Strategy::PointDistance, TranscriptKind::Judge),
        mk(Strategy::HashPrefix, TranscriptKind::Judge),
        mk(Strategy::PksClustering, TranscriptKind::Judge),
        mk(Strategy::LinkageValue, TranscriptKind::ControlJudge),
    ];
    let n_cs = world.policy.n_cs;
    let half_bits = (G::POINT_LEN * 8 / 2) as u32;
    let indices: Vec<u32> = (1..=n_cs).collect();
    for _ in 0..trials {
        let same = rng.gen_bool(0.5);
        let a = rng.gen_range(0..vehicles);
        let b = if same {
            a
        } else {
            (a + rng.gen_range(1..vehicles)) % vehicles
        };
        let js: Vec<u32> = indices.choose_multiple(&mut rng, 2).copied().collect();
        let x = world.bundle(&pool[a].0, js[0], &mut rng);
        let y = world.bundle(&pool[b].0, js[1], &mut rng);
        let enc = |p: &G::Element| G::point_to_bytes(p);
        let verdicts = [
            hamming(&enc(&x.cert.rcv), &enc(&y.cert.rcv)) < half_bits,
            x.cert.slv.0[0] >> 4 == y.cert.slv.0[0] >> 4,
            {
                let (px, py) = (enc(&x.san_public), enc(&y.san_public));
                px[px.len() - 1] & 1 == py[py.len() - 1] & 1
            },
            match_slv(&pool[a].1, &world.ca.linkage, &y.cert.slv, n_cs).is_some(),
        ];
        for (t, v) in out.iter_mut().zip(verdicts) {
            t.record(v == same);
        }
    }
    Ok(out)
}

/// Fraud game. The attacker sees the victim's on-air messages and can ask for
/// signatures on messages of its choice, then tries to get a signature on a
/// fresh message accepted under the victim's pseudonym.
pub fn play_fraud<G: Group>(trials: u64, seed: u64) -> Result<Vec<GameTranscript>> {
    let (mut world, mut rng) = world_and_rng::<G>(seed);
    let victim = world.enroll(&mut rng);
    let mk = |s, kind| GameTranscript::new(GameId::Fraud, s, AttackerModel::SigningOracle, kind, G::PROFILE, seed);
    let mut out = vec![
        mk(Strategy::RandomSignature, TranscriptKind::Attack),
        mk(Strategy::ReplayOtherMessage, TranscriptKind::Attack),
        mk(Strategy::MauledSignature, TranscriptKind::Attack),
        mk(Strategy::OwnKey, TranscriptKind::Attack),
        mk(Strategy::IdenticalReplay, TranscriptKind::OutOfModel),
    ];
    for i in 0..trials {
        let bundle = world.bundle(&victim, rng.gen_range(1..=world.policy.n_cs), &mut rng);
        let queried = format!("oracle query {i}").into_bytes();
        let target = format!("forged claim {i}").into_bytes();
        let oracle = sign_v2x(&bundle, &queried, &mut rng);

        let with_sig = |sig: Signature<G>, message: &[u8]| V2xAuthMessage {
            message: message.to_vec(),
            signature: sig,
            ..oracle.clone()
        };
        let random = with_sig(
            Signature {
                challenge: G::random_scalar(&mut rng),
                response: G::random_scalar(&mut rng),
            },
            &target,
        );
        let replay = with_sig(oracle.signature, &target);
        let mauled = with_sig(
            Signature {
                challenge: oracle.signature.challenge,
                response: oracle.signature.response + G::one(),
            },
            &target,
        );
        let own = random_nonzero_scalar::<G, _>(&mut rng);
        let own_msg = with_sig(signature::sign(&own, &G::mul_base(&own), &target, &mut rng), &target);
        for (t, msg) in out.iter_mut().zip([&random, &replay, &mauled, &own_msg, &oracle]) {
            t.record(world.accepts(msg));
        }
    }
    Ok(out)
}

/// Forgery game. An unregistered attacker tries to produce a certificate and key
/// pair that the receiver accepts.
///
/// Outsider strategies work from public pseudonyms only. The
/// sanitization-key-oracle strategies also get re-randomized cohort key
/// pairs. [`Strategy::FullCredential`] is the collusion positive control.
pub fn play_forgery<G: Group>(trials: u64, seed: u64) -> Result<Vec<GameTranscript>> {
    let (mut world, mut rng) = world_and_rng::<G>(seed);
    let victims = [world.enroll(&mut rng), world.enroll(&mut rng)];
    let pkc = world.ca.keys.public;
    let mk = |s, model, kind| GameTranscript::new(GameId::Forgery, s, model, kind, G::PROFILE, seed);
    use AttackerModel::{Colluder, Outsider, OutsiderWithSanitizationKeys as WithKeys};
    use TranscriptKind::{Attack, PositiveControl};
    let mut out = vec![
        mk(Strategy::RcvRerandomization, Outsider, Attack),
        mk(Strategy::MixAndMatch, Outsider, Attack),
        mk(Strategy::RandomCertificate, Outsider, Attack),
        mk(Strategy::HashFixedPoint, Outsider, Attack),
        mk(Strategy::RcvRerandomization, WithKeys, Attack),
        mk(Strategy::MixAndMatch, WithKeys, Attack),
        mk(Strategy::RcvCancellation, WithKeys, Attack),
        mk(Strategy::FullCredential, Colluder, PositiveControl),
    ];
    let claim = b"forged";
    for _ in 0..trials {
        let n_cs = world.policy.n_cs;
        let a = world.bundle(&victims[0], rng.gen_range(1..=n_cs), &mut rng);
        let b = world.bundle(&victims[1], rng.gen_range(1..=n_cs), &mut rng);
        let slv = ShortLinkageValue::random(&mut rng);
        let (sks_o, pks_o, com_o, resp_o) = world.sanitization_oracle(&mut rng);
        let mut msgs = Vec::with_capacity(out.len());

        // Shift a public rcv_j by a known r; the key needs the victim's secret.
        let r = G::random_scalar(&mut rng);
        let shifted = ShortTermCertificate { rcv: a.cert.rcv + G::mul_base(&r), ..a.cert };
        let guess = G::random_scalar(&mut rng);
        msgs.push(assemble(shifted, a.san_public, a.commitment, a.response, r + guess, claim, &mut rng));

        // rcv_a + rcv_b − rcv_c style combinations across vehicles.
        let c = world.bundle(&victims[0], rng.gen_range(1..=n_cs), &mut rng);
        let mixed = ShortTermCertificate { rcv: a.cert.rcv + b.cert.rcv - c.cert.rcv, meta: a.cert.meta, slv: b.cert.slv };
        msgs.push(assemble(mixed, b.san_public, b.commitment, b.response, G::random_scalar(&mut rng), claim, &mut rng));

        let random = ShortTermCertificate {
            rcv: G::mul_base(&G::random_scalar(&mut rng)),
            meta: world.meta,
            slv,
        };
        msgs.push(assemble(random, a.san_public, a.commitment, a.response, G::random_scalar(&mut rng), claim, &mut rng));

        msgs.push(hash_fixed_point(&world, slv, &mut rng));

        // With an oracle key the h2 term is known, the rcv_j and h1 terms are not.
        let h2 = sanitizable_hash::<G>(&shifted.rcv, &shifted.slv.0, &pks_o);
        msgs.push(assemble(shifted, pks_o, com_o, resp_o, r + h2 * sks_o, claim, &mut rng));
        let h2 = sanitizable_hash::<G>(&mixed.rcv, &mixed.slv.0, &pks_o);
        msgs.push(assemble(mixed, pks_o, com_o, resp_o, G::random_scalar(&mut rng) + h2 * sks_o, claim, &mut rng));

        let (cert, skv) = rcv_cancellation::<G>(world.target_meta(), slv, &pkc, &sks_o, &pks_o, &G::random_scalar(&mut rng));
        msgs.push(assemble(cert, pks_o, com_o, resp_o, skv, claim, &mut rng));

        let own = world.bundle(&victims[0], rng.gen_range(1..=n_cs), &mut rng);
        msgs.push(sign_v2x(&own, claim, &mut rng));

        for (t, msg) in out.iter_mut().zip(&msgs) {
            t.record(world.accepts(msg));
        }
    }
    Ok(out)
}

/// Outsider attempt at the cancellation without `sks`: guess `h2'`, build
/// `rcv = t·g − h1·pkc − h2'·pks` and hope `h2(rcv) == h2'`.
fn hash_fixed_point<G: Group>(world: &World<G>, slv: ShortLinkageValue, rng: &mut ChaCha20Rng) -> V2xAuthMessage<G> {
    let pkc = world.ca.keys.public;
    let pks = world.ca.cohorts[0].public;
    let rho = G::random_scalar(rng);
    let delta = G::mul_base(&rho);
    let pks_j = pks + delta;
    let (com, resp) = prove_rerandomization::<G>(&rho, &delta, &random_nonzero_scalar::<G, _>(rng));
    let t = G::random_scalar(rng);
    let h1 = meta_hash::<G>(&world.meta, &pkc);
    let mut guess = G::random_scalar(rng);
    let mut rcv = G::mul_base(&t) - pkc * h1 - pks * guess;
    for _ in 0..8 {
        let h2 = sanitizable_hash::<G>(&rcv, &slv.0, &pks_j);
        if h2 == guess {
            break;
        }
        guess = h2;
        rcv = G::mul_base(&t) - pkc * h1 - pks * guess;
    }
    let cert = ShortTermCertificate { rcv, meta: world.meta, slv };
    assemble(cert, pks_j, com, resp, t + guess * rho, b"forged", rng)
}

/// Result of enumerating every `sig1` candidate in the toy group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImmutabilityCensus {
    pub candidates: u32,
    /// `sig1` values satisfying the issuance equation under the honest meta.
    pub accepted_honest: Vec<u32>,
    /// The same under the target meta.
    pub accepted_target: Vec<u32>,
    /// The honest `sig1`.
    pub honest_sig1: u32,
    /// `r1 + h1_A·skc`, which needs the CA secret.
    pub predicted_target: u32,
}

/// Enumerate all `sig1_A` with `(x̂ + sig1_A + sig2)·g = rcv + h1_A·pkc + h2·pks`
/// for the honest meta and for `target`, with `rcv`, `sig2` fixed.
pub fn toy_immutability_census(seed: u64, target: Metadata) -> Result<ImmutabilityCensus> {
    let (mut world, mut rng) = world_and_rng::<ToyGroup>(seed);
    let cred = world.enroll(&mut rng);
    let is = &cred.issuance;
    let pkc = cred.ca_public;
    let pks = cred.san_public;
    if target == is.cert.meta {
        return Err(Error::InvalidParameter("target metadata equals the issued metadata".into()));
    }
    let h2 = sanitizable_hash::<ToyGroup>(&is.cert.rcv, &is.cert.lv.0, &pks);
    let rhs = |h1: ToyScalar| is.cert.rcv + pkc * h1 + pks * h2;
    let h1 = meta_hash::<ToyGroup>(&is.cert.meta, &pkc);
    let h1_a = meta_hash::<ToyGroup>(&target, &pkc);
    let scan = |h: ToyScalar| -> Vec<u32> {
        let want = rhs(h);
        ToyScalar::all()
            .filter(|s| ToyGroup::mul_base(&(cred.cocoon_secret + *s + is.san_sig)) == want)
            .map(ToyScalar::value)
            .collect()
    };
    let accepted_honest = scan(h1);
    let accepted_target = scan(h1_a);
    let skc = world.ca.keys.secret;
    let r1 = is.meta_sig - h1 * skc;
    let predicted_target = (r1 + h1_a * skc).value();
    Ok(ImmutabilityCensus {
        candidates: crate::group::TOY_ORDER,
        accepted_honest,
        accepted_target,
        honest_sig1: is.meta_sig.value(),
        predicted_target,
    })
}

/// Result of enumerating all `(rcv_A, skv_A)` pairs in the toy group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForgeryCensus {
    pub rcv_values: u32,
    pub pairs_checked: u64,
    /// Number of `rcv_A` with exactly one satisfying `skv_A`.
    pub unique_solutions: u32,
    /// Whether each solution equals `log(rcv_A) + h1·skc + h2·sks_A`.
    pub solutions_match_oracle: bool,
    /// Outsider guesses `r + k`, one per `rcv_A`, that hit the solution.
    /// `k` is drawn without reference to any secret, so hits occur at rate `1/q`.
    pub outsider_hits: u32,
}

/// For a fixed meta, slv and trusted `pks_A`, enumerate every
/// `rcv_A = rcv_j + r·g` and every `skv_A`, count pairs satisfying
/// conditions (a) and (b), and compare with a discrete-log oracle.
pub fn toy_forgery_census(seed: u64) -> ForgeryCensus {
    let (mut world, mut rng) = world_and_rng::<ToyGroup>(seed);
    let victim = world.enroll(&mut rng);
    let bundle = world.bundle(&victim, 1, &mut rng);
    let pkc = world.ca.keys.public;
    let skc = world.ca.keys.secret;
    let (sks_a, pks_a) = (bundle.san_secret, bundle.san_public);
    let meta = bundle.cert.meta;
    let slv = bundle.cert.slv;
    let log: HashMap<ToyElement, ToyScalar> = ToyScalar::all().map(|s| (ToyGroup::mul_base(&s), s)).collect();
    let h1 = meta_hash::<ToyGroup>(&meta, &pkc);

    let mut census = ForgeryCensus {
        rcv_values: 0,
        pairs_checked: 0,
        unique_solutions: 0,
        solutions_match_oracle: true,
        outsider_hits: 0,
    };
    for r in ToyScalar::all() {
        let rcv_a = bundle.cert.rcv + ToyGroup::mul_base(&r);
        let cert = ShortTermCertificate { rcv: rcv_a, meta, slv };
        let pkv = reconstruct_pkv::<ToyGroup>(&cert, &pks_a, &pkc);
        let solutions: Vec<ToyScalar> = ToyScalar::all().filter(|s| ToyGroup::mul_base(s) == pkv).collect();
        census.rcv_values += 1;
        census.pairs_checked += crate::group::TOY_ORDER as u64;
        census.unique_solutions += (solutions.len() == 1) as u32;
        let h2 = sanitizable_hash::<ToyGroup>(&rcv_a, &slv.0, &pks_a);
        let oracle = log[&rcv_a] + h1 * skc + h2 * sks_a;
        census.solutions_match_oracle &= solutions == [oracle];
        let guess = r + ToyGroup::random_scalar(&mut rng);
        census.outsider_hits += solutions.contains(&guess) as u32;
    }
    census
}

/// Trial budgets for [`play_all`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameBudget {
    pub trials: u64,
    pub linkability_trials: u64,
    pub linkability_vehicles: usize,
}

impl Default for GameBudget {
    fn default() -> Self {
        GameBudget {
            trials: 1_000,
            linkability_trials: 10_000,
            linkability_vehicles: 200,
        }
    }
}

/// Every game on one profile. Each game gets its own seed derived from `seed`.
pub fn play_all<G: Group>(budget: GameBudget, seed: u64) -> Result<Vec<GameTranscript>> {
    let (mut world, mut rng) = world_and_rng::<G>(seed);
    let cred = world.enroll(&mut rng);
    let target = world.target_meta();
    let mut out = play_immutability(&world, &cred, target, budget.trials, seed.wrapping_add(1))?;
    out.extend(play_linkability::<G>(budget.linkability_vehicles, budget.linkability_trials, seed.wrapping_add(2))?);
    out.extend(play_fraud::<G>(budget.trials, seed.wrapping_add(3))?);
    out.extend(play_forgery::<G>(budget.trials, seed.wrapping_add(4))?);
    Ok(out)
}
