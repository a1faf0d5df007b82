//! Certificate authority role.
//!
//! NOINS issuance for a cocoon key `X̂`:
//!
//! ```text
//! rcv  = X̂ + r1·g + r2·g
//! sig1 = r1 + H("h1", [meta, pkc])·skc
//! sig2 = r2 + H("h2", [rcv, lv, pks])·sks
//! ```
//!
//! The vehicle receives `{cert, sig1, sig2, sks, r2}` encrypted to `X̂`.
//! SIMPL and explicit issuance are provided as baselines.

use std::collections::HashSet;

use rand::{CryptoRng, RngCore};
use serde::{Deserialize, Serialize};

use crate::cert::{
    explicit_signed_body, meta_hash, sanitizable_hash, simpl_hash, ExplicitCertificate, Metadata,
    NoinsCertificate, SimplCertificate,
};
use crate::ecies::{self, Ciphertext};
use crate::error::{Error, Result};
use crate::group::{random_nonzero_scalar, Group};
use crate::linkage::{match_slv, LinkageContext, LinkageValue, ShortLinkageValue};
use crate::signature::{self, Signature};
use crate::wire::WireObject;

/// Encrypted CA → vehicle message.
pub type I2vMessage<G> = Ciphertext<G>;

/// Default number of certificates per issuance batch.
pub const DEFAULT_BATCH: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CaKeyPair<G: Group> {
    pub secret: G::Scalar,
    pub public: G::Element,
}

impl<G: Group> CaKeyPair<G> {
    pub fn generate<R: RngCore + CryptoRng + ?Sized>(rng: &mut R) -> Self {
        Self::from_secret(random_nonzero_scalar::<G, _>(rng))
    }

    pub fn from_secret(secret: G::Scalar) -> Self {
        CaKeyPair {
            secret,
            public: G::mul_base(&secret),
        }
    }
}

/// Sanitization key pair shared by every vehicle in one cohort.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SanitizationKeyPair<G: Group> {
    pub secret: G::Scalar,
    pub public: G::Element,
    pub cohort_id: String,
    /// Unix seconds after which receivers stop trusting `public`.
    pub expiry: u32,
}

impl<G: Group> SanitizationKeyPair<G> {
    pub fn generate<R: RngCore + CryptoRng + ?Sized>(
        cohort_id: impl Into<String>,
        expiry: u32,
        rng: &mut R,
    ) -> Self {
        Self::from_secret(random_nonzero_scalar::<G, _>(rng), cohort_id, expiry)
    }

    pub fn from_secret(secret: G::Scalar, cohort_id: impl Into<String>, expiry: u32) -> Self {
        SanitizationKeyPair {
            secret,
            public: G::mul_base(&secret),
            cohort_id: cohort_id.into(),
            expiry,
        }
    }
}

/// Plaintext of a NOINS I2V message: `{cert, sig1, sig2, sks, r2}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NoinsIssuance<G: Group> {
    pub cert: NoinsCertificate<G>,
    /// Implicit-certificate signature over the metadata (`sig1`).
    pub meta_sig: G::Scalar,
    /// Sanitizable signature over `rcv ‖ lv` (`sig2`).
    pub san_sig: G::Scalar,
    /// Cohort sanitization secret (`sks`).
    pub san_secret: G::Scalar,
    /// Nonce of the sanitizable signature (`r2`), needed to re-sign.
    pub san_nonce: G::Scalar,
}

/// Plaintext of a SIMPL I2V message.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SimplIssuance<G: Group> {
    pub cert: SimplCertificate<G>,
    pub sig: G::Scalar,
}

/// Plaintext of an explicit-certificate I2V message.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExplicitIssuance<G: Group> {
    pub cert: ExplicitCertificate<G>,
    /// Key offset: the vehicle's key is `x̂ + r`.
    pub offset: G::Scalar,
}

fn check_cocoon<G: Group>(cocoon: &G::Element) -> Result<()> {
    if *cocoon == G::identity() {
        Err(Error::IdentityPoint)
    } else {
        Ok(())
    }
}

pub fn issue_noins<G: Group, R: RngCore + CryptoRng + ?Sized>(
    cocoon: &G::Element,
    meta: Metadata,
    lv: LinkageValue,
    ca: &CaKeyPair<G>,
    san: &SanitizationKeyPair<G>,
    rng: &mut R,
) -> Result<NoinsIssuance<G>> {
    let r1 = G::random_scalar(rng);
    let r2 = G::random_scalar(rng);
    issue_noins_with(cocoon, meta, lv, ca, san, r1, r2)
}

/// [`issue_noins`] with caller-chosen nonces `(r1, r2)`.
pub fn issue_noins_with<G: Group>(
    cocoon: &G::Element,
    meta: Metadata,
    lv: LinkageValue,
    ca: &CaKeyPair<G>,
    san: &SanitizationKeyPair<G>,
    r1: G::Scalar,
    r2: G::Scalar,
) -> Result<NoinsIssuance<G>> {
    check_cocoon::<G>(cocoon)?;
    let rcv = *cocoon + G::mul_base(&r1) + G::mul_base(&r2);
    let h1 = meta_hash::<G>(&meta, &ca.public);
    let h2 = sanitizable_hash::<G>(&rcv, &lv.0, &san.public);
    Ok(NoinsIssuance {
        cert: NoinsCertificate { rcv, meta, lv },
        meta_sig: r1 + h1 * ca.secret,
        san_sig: r2 + h2 * san.secret,
        san_secret: san.secret,
        san_nonce: r2,
    })
}

pub fn issue_simpl<G: Group, R: RngCore + CryptoRng + ?Sized>(
    cocoon: &G::Element,
    meta: Metadata,
    lv: ShortLinkageValue,
    ca: &CaKeyPair<G>,
    rng: &mut R,
) -> Result<SimplIssuance<G>> {
    issue_simpl_with(cocoon, meta, lv, ca, G::random_scalar(rng))
}

pub fn issue_simpl_with<G: Group>(
    cocoon: &G::Element,
    meta: Metadata,
    lv: ShortLinkageValue,
    ca: &CaKeyPair<G>,
    r: G::Scalar,
) -> Result<SimplIssuance<G>> {
    check_cocoon::<G>(cocoon)?;
    let cert = SimplCertificate {
        rcv: *cocoon + G::mul_base(&r),
        meta,
        lv,
    };
    let h = simpl_hash::<G>(&cert, &ca.public);
    Ok(SimplIssuance {
        cert,
        sig: r + h * ca.secret,
    })
}

pub fn issue_explicit<G: Group, R: RngCore + CryptoRng + ?Sized>(
    cocoon: &G::Element,
    meta: Metadata,
    lv: ShortLinkageValue,
    ca: &CaKeyPair<G>,
    rng: &mut R,
) -> Result<ExplicitIssuance<G>> {
    let r = G::random_scalar(rng);
    issue_explicit_with(cocoon, meta, lv, ca, r, rng)
}

/// [`issue_explicit`] with a caller-chosen key offset.
pub fn issue_explicit_with<G: Group, R: RngCore + CryptoRng + ?Sized>(
    cocoon: &G::Element,
    meta: Metadata,
    lv: ShortLinkageValue,
    ca: &CaKeyPair<G>,
    r: G::Scalar,
    rng: &mut R,
) -> Result<ExplicitIssuance<G>> {
    check_cocoon::<G>(cocoon)?;
    let pkv = *cocoon + G::mul_base(&r);
    let body = explicit_signed_body::<G>(&pkv, &meta, &lv);
    let sig: Signature<G> = signature::sign(&ca.secret, &ca.public, &body, rng);
    Ok(ExplicitIssuance {
        cert: ExplicitCertificate { pkv, meta, lv, sig },
        offset: r,
    })
}

/// Encode `payload` and encrypt it to the cocoon key.
pub fn wrap_i2v<G: Group, P: WireObject, R: RngCore + CryptoRng + ?Sized>(
    payload: &P,
    cocoon: &G::Element,
    rng: &mut R,
) -> Result<I2vMessage<G>> {
    ecies::encrypt::<G, _>(cocoon, &payload.encode(), rng)
}

/// Decrypt and decode. A wrong key or tampering gives [`Error::Decrypt`];
/// a plaintext that does not parse gives [`Error::Format`].
pub fn unwrap_i2v<G: Group, P: WireObject>(msg: &I2vMessage<G>, cocoon_secret: &G::Scalar) -> Result<P> {
    P::decode(&ecies::decrypt::<G>(cocoon_secret, msg)?)
}

/// One CA-issued NOINS certificate kept for attribution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkageRecord {
    pub serial: u64,
    pub lv: LinkageValue,
    pub cohort_id: String,
}

/// Attribution result for an observed short-term linkage value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Attribution {
    pub serial: u64,
    pub j: u32,
    pub cohort_id: String,
}

/// Long-lived CA state: keys, cohorts and the registry of issued linkage
/// values. Issuance takes `&mut self`; wrap in a mutex to share.
#[derive(Clone, Debug)]
pub struct CertificateAuthority<G: Group> {
    pub keys: CaKeyPair<G>,
    pub cohorts: Vec<SanitizationKeyPair<G>>,
    pub linkage: LinkageContext,
    /// Credentials per cohort; `None` keeps one cohort forever.
    pub cohort_size: Option<u64>,
    /// Expiry stamped on newly created cohorts.
    pub cohort_expiry: u32,
    registry: Vec<LinkageRecord>,
    issued_lv: HashSet<LinkageValue>,
    issued_short_lv: HashSet<ShortLinkageValue>,
}

impl<G: Group> CertificateAuthority<G> {
    pub fn new<R: RngCore + CryptoRng + ?Sized>(
        id_ca: impl Into<Vec<u8>>,
        cohort_expiry: u32,
        rng: &mut R,
    ) -> Result<Self> {
        let linkage = LinkageContext::new(id_ca)?;
        let keys = CaKeyPair::generate(rng);
        let first = SanitizationKeyPair::generate("cohort-0", cohort_expiry, rng);
        Ok(Self::from_parts(keys, vec![first], linkage, None, cohort_expiry, Vec::new()))
    }

    pub fn from_parts(
        keys: CaKeyPair<G>,
        cohorts: Vec<SanitizationKeyPair<G>>,
        linkage: LinkageContext,
        cohort_size: Option<u64>,
        cohort_expiry: u32,
        registry: Vec<LinkageRecord>,
    ) -> Self {
        let issued_lv = registry.iter().map(|r| r.lv).collect();
        CertificateAuthority {
            keys,
            cohorts,
            linkage,
            cohort_size,
            cohort_expiry,
            registry,
            issued_lv,
            issued_short_lv: HashSet::new(),
        }
    }

    pub fn registry(&self) -> &[LinkageRecord] {
        &self.registry
    }

    /// Cohort the next NOINS credential goes to, creating it if needed.
    fn current_cohort<R: RngCore + CryptoRng + ?Sized>(&mut self, rng: &mut R) -> usize {
        let wanted = match self.cohort_size {
            Some(size) if size > 0 => (self.registry.len() as u64 / size) as usize,
            _ => 0,
        };
        while self.cohorts.len() <= wanted {
            let id = format!("cohort-{}", self.cohorts.len());
            self.cohorts
                .push(SanitizationKeyPair::generate(id, self.cohort_expiry, rng));
        }
        wanted
    }

    fn fresh_lv<R: RngCore + CryptoRng + ?Sized>(&mut self, rng: &mut R) -> LinkageValue {
        loop {
            let lv = LinkageValue::random(rng);
            if self.issued_lv.insert(lv) {
                return lv;
            }
        }
    }

    fn fresh_short_lv<R: RngCore + CryptoRng + ?Sized>(&mut self, rng: &mut R) -> ShortLinkageValue {
        loop {
            let lv = ShortLinkageValue::random(rng);
            if self.issued_short_lv.insert(lv) {
                return lv;
            }
        }
    }

    /// Issue one NOINS credential and record its lv.
    pub fn issue_noins<R: RngCore + CryptoRng + ?Sized>(
        &mut self,
        cocoon: &G::Element,
        meta: Metadata,
        rng: &mut R,
    ) -> Result<NoinsIssuance<G>> {
        check_cocoon::<G>(cocoon)?;
        let cohort = self.current_cohort(rng);
        let lv = self.fresh_lv(rng);
        let issuance = issue_noins(cocoon, meta, lv, &self.keys, &self.cohorts[cohort], rng)?;
        self.registry.push(LinkageRecord {
            serial: self.registry.len() as u64,
            lv,
            cohort_id: self.cohorts[cohort].cohort_id.clone(),
        });
        Ok(issuance)
    }

    /// Issue and encrypt one NOINS credential per cocoon key.
    pub fn issue_noins_batch<R: RngCore + CryptoRng + ?Sized>(
        &mut self,
        cocoons: &[G::Element],
        meta: Metadata,
        rng: &mut R,
    ) -> Result<Vec<I2vMessage<G>>> {
        cocoons
            .iter()
            .map(|c| {
                let issuance = self.issue_noins(c, meta, rng)?;
                wrap_i2v(&issuance, c, rng)
            })
            .collect()
    }

    pub fn issue_simpl_batch<R: RngCore + CryptoRng + ?Sized>(
        &mut self,
        cocoons: &[G::Element],
        meta: Metadata,
        rng: &mut R,
    ) -> Result<Vec<I2vMessage<G>>> {
        cocoons
            .iter()
            .map(|c| {
                let lv = self.fresh_short_lv(rng);
                let issuance = issue_simpl(c, meta, lv, &self.keys, rng)?;
                wrap_i2v(&issuance, c, rng)
            })
            .collect()
    }

    pub fn issue_explicit_batch<R: RngCore + CryptoRng + ?Sized>(
        &mut self,
        cocoons: &[G::Element],
        meta: Metadata,
        rng: &mut R,
    ) -> Result<Vec<I2vMessage<G>>> {
        cocoons
            .iter()
            .map(|c| {
                let lv = self.fresh_short_lv(rng);
                let issuance = issue_explicit(c, meta, lv, &self.keys, rng)?;
                wrap_i2v(&issuance, c, rng)
            })
            .collect()
    }

    /// Find which issued credential and index produced `slv`.
    pub fn attribute(&self, slv: &ShortLinkageValue, n_cs: u32) -> Option<Attribution> {
        self.registry.iter().find_map(|rec| {
            match_slv(&rec.lv, &self.linkage, slv, n_cs).map(|j| Attribution {
                serial: rec.serial,
                j,
                cohort_id: rec.cohort_id.clone(),
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{Secp256k1, ToyGroup, ToyScalar};
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    fn meta() -> Metadata {
        Metadata::new(7, 1_000, 2_000, 0x20).unwrap()
    }

    fn issuance_equation<G: Group>(x: G::Scalar, is: &NoinsIssuance<G>, pkc: G::Element, pks: G::Element) -> bool {
        let h1 = meta_hash::<G>(&is.cert.meta, &pkc);
        let h2 = sanitizable_hash::<G>(&is.cert.rcv, &is.cert.lv.0, &pks);
        G::mul_base(&(x + is.meta_sig + is.san_sig)) == is.cert.rcv + pkc * h1 + pks * h2
    }

    #[test]
    fn noins_issuance_satisfies_equation() {
        let mut rng = ChaCha20Rng::seed_from_u64(31);
        let ca = CaKeyPair::<Secp256k1>::generate(&mut rng);
        let san = SanitizationKeyPair::generate("c", 10, &mut rng);
        for _ in 0..20 {
            let x = random_nonzero_scalar::<Secp256k1, _>(&mut rng);
            let lv = LinkageValue::random(&mut rng);
            let is = issue_noins(&Secp256k1::mul_base(&x), meta(), lv, &ca, &san, &mut rng).unwrap();
            assert!(issuance_equation(x, &is, ca.public, san.public));
            assert!(!issuance_equation(x + Secp256k1::one(), &is, ca.public, san.public));
        }
    }

    #[test]
    fn zero_nonces_give_bare_signatures() {
        let mut rng = ChaCha20Rng::seed_from_u64(32);
        let ca = CaKeyPair::<Secp256k1>::generate(&mut rng);
        let san = SanitizationKeyPair::generate("c", 10, &mut rng);
        let x_pub = Secp256k1::mul_base(&Secp256k1::scalar_from_u64(5));
        let lv = LinkageValue([3; 16]);
        let z = Secp256k1::zero();
        let is = issue_noins_with(&x_pub, meta(), lv, &ca, &san, z, z).unwrap();
        assert_eq!(is.cert.rcv, x_pub);
        assert_eq!(is.meta_sig, meta_hash::<Secp256k1>(&meta(), &ca.public) * ca.secret);
        assert_eq!(
            is.san_sig,
            sanitizable_hash::<Secp256k1>(&x_pub, &lv.0, &san.public) * san.secret
        );
    }

    #[test]
    fn toy_noins_issuance_matches_schoolbook() {
        let q = 1019u64;
        let ca = CaKeyPair::<ToyGroup>::from_secret(ToyScalar::new(11));
        let san = SanitizationKeyPair::<ToyGroup>::from_secret(ToyScalar::new(13), "c", 10);
        let x_pub = ToyGroup::mul_base(&ToyScalar::new(17));
        let lv = LinkageValue([9; 16]);
        let is = issue_noins_with(&x_pub, meta(), lv, &ca, &san, ToyScalar::new(3), ToyScalar::new(4)).unwrap();
        // rcv = 4^(17+3+4) mod 2039
        let rcv = (0..24).fold(1u64, |acc, _| acc * 4 % 2039);
        assert_eq!(is.cert.rcv.residue() as u64, rcv);
        let h1 = meta_hash::<ToyGroup>(&meta(), &ca.public).value() as u64;
        let h2 = sanitizable_hash::<ToyGroup>(&is.cert.rcv, &lv.0, &san.public).value() as u64;
        assert_eq!(is.meta_sig.value() as u64, (3 + h1 * 11) % q);
        assert_eq!(is.san_sig.value() as u64, (4 + h2 * 13) % q);
    }

    #[test]
    fn identity_cocoon_rejected() {
        let mut rng = ChaCha20Rng::seed_from_u64(33);
        let ca = CaKeyPair::<Secp256k1>::generate(&mut rng);
        let san = SanitizationKeyPair::generate("c", 10, &mut rng);
        let id = Secp256k1::identity();
        let lv = LinkageValue([0; 16]);
        let slv = ShortLinkageValue([0; 9]);
        assert_eq!(issue_noins(&id, meta(), lv, &ca, &san, &mut rng), Err(Error::IdentityPoint));
        assert_eq!(issue_simpl(&id, meta(), slv, &ca, &mut rng), Err(Error::IdentityPoint));
        assert_eq!(issue_explicit(&id, meta(), slv, &ca, &mut rng), Err(Error::IdentityPoint));
    }

    #[test]
    fn simpl_reconstruction_and_zero_nonce() {
        let mut rng = ChaCha20Rng::seed_from_u64(34);
        let ca = CaKeyPair::<Secp256k1>::generate(&mut rng);
        let x = random_nonzero_scalar::<Secp256k1, _>(&mut rng);
        let x_pub = Secp256k1::mul_base(&x);
        let slv = ShortLinkageValue::random(&mut rng);
        let is = issue_simpl(&x_pub, meta(), slv, &ca, &mut rng).unwrap();
        let h = simpl_hash::<Secp256k1>(&is.cert, &ca.public);
        assert_eq!(Secp256k1::mul_base(&(x + is.sig)), is.cert.rcv + ca.public * h);
        let zero = issue_simpl_with(&x_pub, meta(), slv, &ca, Secp256k1::zero()).unwrap();
        assert_eq!(zero.cert.rcv, x_pub);
    }

    #[test]
    fn toy_simpl_matches_schoolbook() {
        let ca = CaKeyPair::<ToyGroup>::from_secret(ToyScalar::new(21));
        let x_pub = ToyGroup::mul_base(&ToyScalar::new(5));
        let slv = ShortLinkageValue([1; 9]);
        let is = issue_simpl_with(&x_pub, meta(), slv, &ca, ToyScalar::new(8)).unwrap();
        let rcv = (0..13).fold(1u64, |acc, _| acc * 4 % 2039);
        assert_eq!(is.cert.rcv.residue() as u64, rcv);
        let h = simpl_hash::<ToyGroup>(&is.cert, &ca.public).value() as u64;
        assert_eq!(is.sig.value() as u64, (8 + h * 21) % 1019);
    }

    #[test]
    fn explicit_issuance_and_field_mutation() {
        let mut rng = ChaCha20Rng::seed_from_u64(35);
        let ca = CaKeyPair::<Secp256k1>::generate(&mut rng);
        let x = random_nonzero_scalar::<Secp256k1, _>(&mut rng);
        let x_pub = Secp256k1::mul_base(&x);
        let slv = ShortLinkageValue::random(&mut rng);
        let is = issue_explicit(&x_pub, meta(), slv, &ca, &mut rng).unwrap();
        assert!(signature::verify(&ca.public, &is.cert.signed_body(), &is.cert.sig));
        assert_eq!(Secp256k1::mul_base(&(x + is.offset)), is.cert.pkv);

        let mut bad = is.cert;
        bad.sig.response = bad.sig.response + Secp256k1::one();
        assert!(!signature::verify(&ca.public, &bad.signed_body(), &bad.sig));

        let zero = issue_explicit_with(&x_pub, meta(), slv, &ca, Secp256k1::zero(), &mut rng).unwrap();
        assert_eq!(zero.cert.pkv, x_pub);
    }

    #[test]
    fn wrap_unwrap_round_trip() {
        let mut rng = ChaCha20Rng::seed_from_u64(36);
        let ca = CaKeyPair::<Secp256k1>::generate(&mut rng);
        let san = SanitizationKeyPair::generate("c", 10, &mut rng);
        let x = random_nonzero_scalar::<Secp256k1, _>(&mut rng);
        let x_pub = Secp256k1::mul_base(&x);
        let is = issue_noins(&x_pub, meta(), LinkageValue::random(&mut rng), &ca, &san, &mut rng).unwrap();
        let msg = wrap_i2v::<Secp256k1, _, _>(&is, &x_pub, &mut rng).unwrap();
        assert_eq!(unwrap_i2v::<Secp256k1, NoinsIssuance<Secp256k1>>(&msg, &x), Ok(is));
        assert_eq!(
            unwrap_i2v::<Secp256k1, NoinsIssuance<Secp256k1>>(&msg, &(x + Secp256k1::one())),
            Err(Error::Decrypt)
        );
        let mut flipped = msg.clone();
        flipped.body[10] ^= 4;
        assert_eq!(
            unwrap_i2v::<Secp256k1, NoinsIssuance<Secp256k1>>(&flipped, &x),
            Err(Error::Decrypt)
        );
    }

    #[test]
    fn ten_thousand_issuances_have_distinct_rcv() {
        let mut rng = ChaCha20Rng::seed_from_u64(37);
        let ca = CaKeyPair::<Secp256k1>::generate(&mut rng);
        let san = SanitizationKeyPair::generate("c", 10, &mut rng);
        let x_pub = Secp256k1::mul_base(&Secp256k1::scalar_from_u64(99));
        let lv = LinkageValue([0; 16]);
        let mut seen = HashSet::new();
        for _ in 0..10_000 {
            let is = issue_noins(&x_pub, meta(), lv, &ca, &san, &mut rng).unwrap();
            assert!(seen.insert(Secp256k1::point_to_bytes(&is.cert.rcv)));
        }
    }

    #[test]
    fn authority_registry_cohorts_and_attribution() {
        let mut rng = ChaCha20Rng::seed_from_u64(38);
        let mut ca = CertificateAuthority::<Secp256k1>::new(*b"CA01", 5_000, &mut rng).unwrap();
        ca.cohort_size = Some(2);
        let cocoons: Vec<_> = (1..=5u64)
            .map(|i| Secp256k1::mul_base(&Secp256k1::scalar_from_u64(i)))
            .collect();
        let msgs = ca.issue_noins_batch(&cocoons, meta(), &mut rng).unwrap();
        assert_eq!(msgs.len(), 5);
        assert_eq!(ca.registry().len(), 5);
        assert_eq!(ca.cohorts.len(), 3);
        assert_eq!(ca.registry()[4].cohort_id, "cohort-2");

        let rec = ca.registry()[3].clone();
        let slv = crate::linkage::derive_slv(&rec.lv, &ca.linkage, 12).unwrap();
        let found = ca.attribute(&slv, 50).unwrap();
        assert_eq!((found.serial, found.j), (3, 12));
        assert_eq!(ca.attribute(&ShortLinkageValue([0; 9]), 50), None);
    }
}
