//! JSON file formats for keys, trust anchors and vehicle keystores.
//!
//! Group values are hex-encoded in their canonical wire form. Every file
//! carries a format version and the group profile it belongs to; loading a
//! file under a different profile fails with [`Error::ProfileMismatch`].

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::butterfly::{derive_cocoon_private, derive_cocoon_public, CaterpillarKeyPair, ExpansionSeed};
use crate::ca::{CaKeyPair, CertificateAuthority, LinkageRecord, NoinsIssuance, SanitizationKeyPair};
use crate::cert::Metadata;
use crate::error::{Error, Result};
use crate::group::{Group, Profile};
use crate::linkage::LinkageContext;
use crate::vehicle::{gen_short_term_with, CaCredential, GenerationPolicy, ShortTermBundle, ShortTermRandomness};
use crate::verification::{TrustStore, TrustedSanitizationKey};
use crate::wire::WireObject;

pub const STORE_VERSION: u32 = 1;

pub fn scalar_hex<G: Group>(s: &G::Scalar) -> String {
    hex::encode(G::scalar_to_bytes(s))
}

pub fn point_hex<G: Group>(p: &G::Element) -> String {
    hex::encode(G::point_to_bytes(p))
}

fn unhex(s: &str) -> Result<Vec<u8>> {
    hex::decode(s).map_err(|e| Error::Format(format!("hex: {e}")))
}

pub fn scalar_from_hex<G: Group>(s: &str) -> Result<G::Scalar> {
    G::scalar_from_bytes(&unhex(s)?)
}

pub fn point_from_hex<G: Group>(s: &str) -> Result<G::Element> {
    G::point_from_bytes(&unhex(s)?)
}

fn check_profile<G: Group>(version: u32, profile: Profile) -> Result<()> {
    if version != STORE_VERSION {
        return Err(Error::Format(format!("unsupported store version {version}")));
    }
    if profile != G::PROFILE {
        return Err(Error::ProfileMismatch {
            expected: G::PROFILE.to_string(),
            found: profile.to_string(),
        });
    }
    Ok(())
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("store types serialize");
    s.push('\n');
    s
}

pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Format(format!("json: {e}")))
}

/// Profile named in any store file, read before choosing a group.
pub fn peek_profile(text: &str) -> Result<Profile> {
    #[derive(Deserialize)]
    struct Head {
        profile: Profile,
    }
    Ok(from_json::<Head>(text)?.profile)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohortFile {
    pub secret: String,
    pub cohort_id: String,
    pub expiry: u32,
}

/// Everything the CA needs between runs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaFile {
    pub version: u32,
    pub profile: Profile,
    pub id_ca: String,
    pub secret: String,
    pub cohorts: Vec<CohortFile>,
    pub cohort_size: Option<u64>,
    pub cohort_expiry: u32,
    /// Metadata stamped on issued credentials.
    pub meta: Metadata,
    pub registry: Vec<LinkageRecord>,
}

impl CaFile {
    pub fn from_authority<G: Group>(ca: &CertificateAuthority<G>, meta: Metadata) -> Self {
        CaFile {
            version: STORE_VERSION,
            profile: G::PROFILE,
            id_ca: hex::encode(ca.linkage.id_ca()),
            secret: scalar_hex::<G>(&ca.keys.secret),
            cohorts: ca
                .cohorts
                .iter()
                .map(|c| CohortFile {
                    secret: scalar_hex::<G>(&c.secret),
                    cohort_id: c.cohort_id.clone(),
                    expiry: c.expiry,
                })
                .collect(),
            cohort_size: ca.cohort_size,
            cohort_expiry: ca.cohort_expiry,
            meta,
            registry: ca.registry().to_vec(),
        }
    }

    pub fn to_authority<G: Group>(&self) -> Result<CertificateAuthority<G>> {
        check_profile::<G>(self.version, self.profile)?;
        let cohorts = self
            .cohorts
            .iter()
            .map(|c| Ok(SanitizationKeyPair::from_secret(scalar_from_hex::<G>(&c.secret)?, c.cohort_id.clone(), c.expiry)))
            .collect::<Result<Vec<_>>>()?;
        Ok(CertificateAuthority::from_parts(
            CaKeyPair::from_secret(scalar_from_hex::<G>(&self.secret)?),
            cohorts,
            LinkageContext::new(unhex(&self.id_ca)?)?,
            self.cohort_size,
            self.cohort_expiry,
            self.registry.clone(),
        ))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrustedKeyFile {
    pub public: String,
    pub cohort_id: String,
    pub expiry: u32,
}

/// Public trust anchors distributed to receivers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrustFile {
    pub version: u32,
    pub profile: Profile,
    /// CA identity used in linkage blocks, hex.
    pub id_ca: String,
    pub ca_public: String,
    pub san_keys: Vec<TrustedKeyFile>,
}

impl TrustFile {
    pub fn from_authority<G: Group>(ca: &CertificateAuthority<G>) -> Self {
        Self::from_store(&TrustStore::from_authority(ca), ca.linkage.id_ca())
    }

    pub fn from_store<G: Group>(store: &TrustStore<G>, id_ca: &[u8]) -> Self {
        TrustFile {
            version: STORE_VERSION,
            profile: G::PROFILE,
            id_ca: hex::encode(id_ca),
            ca_public: point_hex::<G>(&store.ca_public),
            san_keys: store
                .san_keys
                .iter()
                .map(|k| TrustedKeyFile {
                    public: point_hex::<G>(&k.public),
                    cohort_id: k.cohort_id.clone(),
                    expiry: k.expiry,
                })
                .collect(),
        }
    }

    pub fn linkage(&self) -> Result<LinkageContext> {
        LinkageContext::new(unhex(&self.id_ca)?)
    }

    pub fn to_store<G: Group>(&self) -> Result<TrustStore<G>> {
        check_profile::<G>(self.version, self.profile)?;
        let san_keys = self
            .san_keys
            .iter()
            .map(|k| {
                Ok(TrustedSanitizationKey {
                    public: point_from_hex::<G>(&k.public)?,
                    cohort_id: k.cohort_id.clone(),
                    expiry: k.expiry,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(TrustStore {
            ca_public: point_from_hex::<G>(&self.ca_public)?,
            san_keys,
        })
    }
}

/// Vehicle-to-CA request: the caterpillar public key, expansion seed and
/// which cocoon indices to certify.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RequestFile {
    pub version: u32,
    pub profile: Profile,
    pub caterpillar_public: String,
    pub seed: String,
    pub first_index: u32,
    pub count: u32,
}

impl RequestFile {
    /// Cocoon public keys the CA certifies, in index order.
    pub fn cocoons<G: Group>(&self) -> Result<Vec<G::Element>> {
        check_profile::<G>(self.version, self.profile)?;
        let public = point_from_hex::<G>(&self.caterpillar_public)?;
        let seed = seed_from_hex(&self.seed)?;
        let end = self
            .first_index
            .checked_add(self.count)
            .ok_or_else(|| Error::InvalidParameter("index range overflows".into()))?;
        Ok((self.first_index..end).map(|i| derive_cocoon_public::<G>(&public, &seed, i)).collect())
    }
}

fn seed_from_hex(s: &str) -> Result<ExpansionSeed> {
    unhex(s)?
        .try_into()
        .map_err(|_| Error::Format("expansion seed must be 16 bytes".into()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CredentialFile {
    pub cocoon_index: u32,
    /// Wire encoding of the decrypted issuance payload.
    pub issuance: String,
    pub ca_public: String,
    pub san_public: String,
}

/// A generated pseudonym, stored as the randomness that rebuilds it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleFile {
    pub credential: usize,
    pub j: u32,
    pub rcv_shift: String,
    pub proof_nonce: String,
    pub rerandomizer: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VehicleFile {
    pub version: u32,
    pub profile: Profile,
    pub caterpillar_secret: String,
    pub seed: String,
    pub id_ca: String,
    pub policy: GenerationPolicy,
    /// Next cocoon index to request.
    pub next_index: u32,
    pub credentials: Vec<CredentialFile>,
    /// Every pseudonym generated so far, in order.
    pub bundles: Vec<BundleFile>,
}

impl VehicleFile {
    /// `id_ca` may be empty until the first credential arrives.
    pub fn new<G: Group>(caterpillar: &CaterpillarKeyPair<G>, id_ca: &[u8], policy: GenerationPolicy) -> Self {
        VehicleFile {
            version: STORE_VERSION,
            profile: G::PROFILE,
            caterpillar_secret: scalar_hex::<G>(&caterpillar.secret),
            seed: hex::encode(caterpillar.seed),
            id_ca: hex::encode(id_ca),
            policy,
            next_index: 0,
            credentials: Vec::new(),
            bundles: Vec::new(),
        }
    }

    pub fn caterpillar<G: Group>(&self) -> Result<CaterpillarKeyPair<G>> {
        check_profile::<G>(self.version, self.profile)?;
        Ok(CaterpillarKeyPair::from_parts(
            scalar_from_hex::<G>(&self.caterpillar_secret)?,
            seed_from_hex(&self.seed)?,
        ))
    }

    pub fn linkage(&self) -> Result<LinkageContext> {
        LinkageContext::new(unhex(&self.id_ca)?)
    }

    /// Request the next `count` cocoon certificates and advance the index.
    pub fn request<G: Group>(&mut self, count: u32) -> Result<RequestFile> {
        let cat = self.caterpillar::<G>()?;
        let (public, seed) = cat.request();
        let req = RequestFile {
            version: STORE_VERSION,
            profile: G::PROFILE,
            caterpillar_public: point_hex::<G>(&public),
            seed: hex::encode(seed),
            first_index: self.next_index,
            count,
        };
        self.next_index = self
            .next_index
            .checked_add(count)
            .ok_or_else(|| Error::InvalidParameter("index range overflows".into()))?;
        Ok(req)
    }

    /// Verify a decrypted payload for cocoon `index` and keep it.
    pub fn add_credential<G: Group>(
        &mut self,
        index: u32,
        issuance: NoinsIssuance<G>,
        ca_public: G::Element,
        san_public: G::Element,
    ) -> Result<usize> {
        let cocoon = derive_cocoon_private(&self.caterpillar::<G>()?, index);
        CaCredential::new(issuance, cocoon.secret, ca_public, san_public)?;
        self.credentials.push(CredentialFile {
            cocoon_index: index,
            issuance: hex::encode(issuance.encode()),
            ca_public: point_hex::<G>(&ca_public),
            san_public: point_hex::<G>(&san_public),
        });
        Ok(self.credentials.len() - 1)
    }

    pub fn credential<G: Group>(&self, i: usize) -> Result<CaCredential<G>> {
        let c = self
            .credentials
            .get(i)
            .ok_or_else(|| Error::InvalidParameter(format!("no credential {i}")))?;
        let cocoon = derive_cocoon_private(&self.caterpillar::<G>()?, c.cocoon_index);
        CaCredential::new(
            NoinsIssuance::decode(&unhex(&c.issuance)?)?,
            cocoon.secret,
            point_from_hex::<G>(&c.ca_public)?,
            point_from_hex::<G>(&c.san_public)?,
        )
    }

    /// Generate pseudonym `j` of credential `i` and journal it.
    pub fn generate<G: Group>(&mut self, i: usize, j: u32, randomness: ShortTermRandomness<G>) -> Result<ShortTermBundle<G>> {
        if self.bundles.iter().any(|b| b.credential == i && b.j == j) {
            return Err(Error::InvalidParameter(format!("pseudonym {j} of credential {i} already generated")));
        }
        let entry = BundleFile {
            credential: i,
            j,
            rcv_shift: scalar_hex::<G>(&randomness.rcv_shift),
            proof_nonce: scalar_hex::<G>(&randomness.proof_nonce),
            rerandomizer: scalar_hex::<G>(&randomness.rerandomizer),
        };
        let bundle = gen_short_term_with(&self.credential::<G>(i)?, j, &self.policy, &self.linkage()?, randomness)?;
        self.bundles.push(entry);
        Ok(bundle)
    }

    /// Rebuild a journaled pseudonym.
    pub fn bundle<G: Group>(&self, i: usize, j: u32) -> Result<ShortTermBundle<G>> {
        let b = self
            .bundles
            .iter()
            .find(|b| b.credential == i && b.j == j)
            .ok_or_else(|| Error::InvalidParameter(format!("pseudonym {j} of credential {i} not generated")))?;
        let randomness = ShortTermRandomness {
            rcv_shift: scalar_from_hex::<G>(&b.rcv_shift)?,
            proof_nonce: scalar_from_hex::<G>(&b.proof_nonce)?,
            rerandomizer: scalar_from_hex::<G>(&b.rerandomizer)?,
        };
        gen_short_term_with(&self.credential::<G>(i)?, j, &self.policy, &self.linkage()?, randomness)
    }
}
