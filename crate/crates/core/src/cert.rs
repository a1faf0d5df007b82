//! Certificate data types shared by the CA, vehicle and receiver roles.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{hash_to_scalar, tags, Group};
use crate::linkage::{LinkageValue, ShortLinkageValue};
use crate::signature::Signature;

pub const METADATA_LEN: usize = 16;

/// Fixed 16-byte certificate metadata.
///
/// | offset | width | field            |
/// |--------|-------|------------------|
/// | 0      | 1     | format version   |
/// | 1      | 4     | issuer id        |
/// | 5      | 4     | validity start   |
/// | 9      | 4     | validity end     |
/// | 13     | 2     | PSID / app class |
/// | 15     | 1     | reserved         |
///
/// Integers are big-endian, times are unix seconds. No field identifies the
/// vehicle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Metadata {
    format_version: u8,
    issuer_id: u32,
    validity_start: u32,
    validity_end: u32,
    psid: u16,
    reserved: u8,
}

impl Metadata {
    pub fn new(issuer_id: u32, validity_start: u32, validity_end: u32, psid: u16) -> Result<Self> {
        if validity_start >= validity_end {
            return Err(Error::InvalidValidity {
                start: validity_start,
                end: validity_end,
            });
        }
        Ok(Metadata {
            format_version: 1,
            issuer_id,
            validity_start,
            validity_end,
            psid,
            reserved: 0,
        })
    }

    pub fn format_version(&self) -> u8 {
        self.format_version
    }

    pub fn issuer_id(&self) -> u32 {
        self.issuer_id
    }

    pub fn validity_start(&self) -> u32 {
        self.validity_start
    }

    pub fn validity_end(&self) -> u32 {
        self.validity_end
    }

    pub fn psid(&self) -> u16 {
        self.psid
    }

    pub fn reserved(&self) -> u8 {
        self.reserved
    }

    /// `start <= now < end`.
    pub fn is_valid_at(&self, now: u32) -> bool {
        self.validity_start <= now && now < self.validity_end
    }

    pub fn to_bytes(&self) -> [u8; METADATA_LEN] {
        let mut out = [0u8; METADATA_LEN];
        out[0] = self.format_version;
        out[1..5].copy_from_slice(&self.issuer_id.to_be_bytes());
        out[5..9].copy_from_slice(&self.validity_start.to_be_bytes());
        out[9..13].copy_from_slice(&self.validity_end.to_be_bytes());
        out[13..15].copy_from_slice(&self.psid.to_be_bytes());
        out[15] = self.reserved;
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        if bytes.len() != METADATA_LEN {
            return Err(Error::Format(format!(
                "metadata must be {METADATA_LEN} bytes, got {}",
                bytes.len()
            )));
        }
        let u32_at = |i: usize| u32::from_be_bytes(bytes[i..i + 4].try_into().unwrap());
        let meta = Metadata {
            format_version: bytes[0],
            issuer_id: u32_at(1),
            validity_start: u32_at(5),
            validity_end: u32_at(9),
            psid: u16::from_be_bytes([bytes[13], bytes[14]]),
            reserved: bytes[15],
        };
        if meta.validity_start >= meta.validity_end {
            return Err(Error::InvalidValidity {
                start: meta.validity_start,
                end: meta.validity_end,
            });
        }
        Ok(meta)
    }
}

/// CA-issued sanitizable implicit certificate `{rcv, meta, lv}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NoinsCertificate<G: Group> {
    pub rcv: G::Element,
    pub meta: Metadata,
    pub lv: LinkageValue,
}

/// Self-generated short-term certificate `{rcv_j, meta, slv_j}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ShortTermCertificate<G: Group> {
    pub rcv: G::Element,
    pub meta: Metadata,
    pub slv: ShortLinkageValue,
}

/// SIMPL implicit certificate `{rcv, meta, lv}` with a 9-byte lv.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SimplCertificate<G: Group> {
    pub rcv: G::Element,
    pub meta: Metadata,
    pub lv: ShortLinkageValue,
}

/// Explicit certificate: the public key itself plus a CA signature over
/// `pkv ‖ meta ‖ lv`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExplicitCertificate<G: Group> {
    pub pkv: G::Element,
    pub meta: Metadata,
    pub lv: ShortLinkageValue,
    pub sig: Signature<G>,
}

impl<G: Group> SimplCertificate<G> {
    /// `rcv ‖ meta ‖ lv`, the hashed certificate body.
    pub fn body(&self) -> Vec<u8> {
        let mut out = G::point_to_bytes(&self.rcv);
        out.extend_from_slice(&self.meta.to_bytes());
        out.extend_from_slice(&self.lv.0);
        out
    }
}

impl<G: Group> ExplicitCertificate<G> {
    /// `pkv ‖ meta ‖ lv`, the signed portion.
    pub fn signed_body(&self) -> Vec<u8> {
        explicit_signed_body::<G>(&self.pkv, &self.meta, &self.lv)
    }
}

pub(crate) fn explicit_signed_body<G: Group>(
    pkv: &G::Element,
    meta: &Metadata,
    lv: &ShortLinkageValue,
) -> Vec<u8> {
    let mut out = G::point_to_bytes(pkv);
    out.extend_from_slice(&meta.to_bytes());
    out.extend_from_slice(&lv.0);
    out
}

/// Hash binding the metadata to the CA key: `H("h1", [meta, pkc])`.
pub fn meta_hash<G: Group>(meta: &Metadata, ca_public: &G::Element) -> G::Scalar {
    hash_to_scalar::<G>(tags::H1, &[&meta.to_bytes(), &G::point_to_bytes(ca_public)])
}

/// Hash over the sanitizable part: `H("h2", [rcv, linkage, pks])`.
///
/// `linkage` is the 16-byte lv on CA-issued certificates and the 9-byte
/// slv on short-term ones.
pub fn sanitizable_hash<G: Group>(
    rcv: &G::Element,
    linkage: &[u8],
    san_public: &G::Element,
) -> G::Scalar {
    hash_to_scalar::<G>(
        tags::H2,
        &[
            &G::point_to_bytes(rcv),
            linkage,
            &G::point_to_bytes(san_public),
        ],
    )
}

/// SIMPL binding hash `H("h1", [rcv ‖ meta ‖ lv, pkc])`.
pub fn simpl_hash<G: Group>(cert: &SimplCertificate<G>, ca_public: &G::Element) -> G::Scalar {
    hash_to_scalar::<G>(tags::H1, &[&cert.body(), &G::point_to_bytes(ca_public)])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn metadata_layout_is_pinned() {
        let m = Metadata::new(0x0A0B0C0D, 1_700_000_000, 1_700_086_400, 0x0020).unwrap();
        let b = m.to_bytes();
        assert_eq!(hex::encode(b), "010a0b0c0d6553f10065554280002000");
        assert_eq!(Metadata::from_bytes(&b).unwrap(), m);
    }

    #[test]
    fn empty_window_rejected() {
        assert!(Metadata::new(1, 10, 10, 0).is_err());
        let mut b = Metadata::new(1, 10, 20, 0).unwrap().to_bytes();
        b[9..13].copy_from_slice(&5u32.to_be_bytes());
        assert!(Metadata::from_bytes(&b).is_err());
        assert!(Metadata::from_bytes(&[0u8; 15]).is_err());
    }

    #[test]
    fn validity_window_is_half_open() {
        let m = Metadata::new(1, 10, 20, 0).unwrap();
        assert!(!m.is_valid_at(9));
        assert!(m.is_valid_at(10));
        assert!(m.is_valid_at(19));
        assert!(!m.is_valid_at(20));
    }
}
