//! Fixed-width binary encodings.
//!
//! Every object starts with a 2-byte header `kind ‖ version`. Nested objects
//! keep their own header. Integers are big-endian; points and scalars use the
//! group's canonical encodings (`P` and `S` bytes, 33 and 32 in production).
//!
//! | kind | object                | layout after header                                   | production size |
//! |------|-----------------------|-------------------------------------------------------|-----------------|
//! | 0x01 | NOINS certificate     | rcv P ‖ meta 16 ‖ lv 16                               | 67              |
//! | 0x02 | short-term cert       | rcv_j P ‖ meta 16 ‖ slv_j 9                           | 60              |
//! | 0x03 | NOINS I2V payload     | cert (0x01) ‖ sig1 S ‖ sig2 S ‖ sks S ‖ r2 S          | 197             |
//! | 0x04 | V2X auth message      | cert_j (0x02) ‖ pks_j P ‖ com_j P ‖ resp_j S ‖ sig 2S ‖ len u32 ‖ msg | 228 + len |
//! | 0x05 | SIMPL certificate     | rcv P ‖ meta 16 ‖ lv 9                                | 60              |
//! | 0x06 | SIMPL I2V payload     | cert (0x05) ‖ sig S                                   | 94              |
//! | 0x07 | explicit certificate  | pkv P ‖ meta 16 ‖ lv 9 ‖ sig 2S                       | 124             |
//! | 0x08 | explicit I2V payload  | cert (0x07) ‖ r S                                     | 158             |
//! | 0x09 | I2V message           | E P ‖ ciphertext ‖ tag 32                             | 67 + plaintext  |
//! | 0x0A | I2V batch             | count u16 ‖ (len u32 ‖ I2V message)*                  | 4 + Σ(4 + item) |
//!
//! In an I2V message the ciphertext runs to the last 32 bytes, so it is only
//! self-delimiting inside a batch entry or a standalone buffer.

use serde::{Deserialize, Serialize};

use crate::ca::{ExplicitIssuance, I2vMessage, NoinsIssuance, SimplIssuance};
use crate::cert::{
    ExplicitCertificate, Metadata, NoinsCertificate, ShortTermCertificate, SimplCertificate,
    METADATA_LEN,
};
use crate::ecies::TAG_LEN;
use crate::error::{Error, Result};
use crate::group::{Group, Profile};
use crate::linkage::{LinkageValue, ShortLinkageValue, LV_LEN, SLV_LEN};
use crate::signature::Signature;
use crate::vehicle::V2xAuthMessage;
use crate::Approach;

pub const VERSION: u8 = 1;
pub const HEADER_LEN: usize = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    NoinsCert = 0x01,
    ShortTermCert = 0x02,
    NoinsPayload = 0x03,
    V2xAuth = 0x04,
    SimplCert = 0x05,
    SimplPayload = 0x06,
    ExplicitCert = 0x07,
    ExplicitPayload = 0x08,
    I2vMessage = 0x09,
    I2vBatch = 0x0A,
}

impl Kind {
    pub const ALL: [Kind; 10] = [
        Kind::NoinsCert,
        Kind::ShortTermCert,
        Kind::NoinsPayload,
        Kind::V2xAuth,
        Kind::SimplCert,
        Kind::SimplPayload,
        Kind::ExplicitCert,
        Kind::ExplicitPayload,
        Kind::I2vMessage,
        Kind::I2vBatch,
    ];

    pub fn from_byte(b: u8) -> Option<Kind> {
        Kind::ALL.into_iter().find(|k| *k as u8 == b)
    }
}

/// Field widths used for size accounting.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Widths {
    pub scalar: usize,
    pub point: usize,
    /// Signature on V2X messages.
    pub message_sig: usize,
    /// CA signature inside an explicit certificate.
    pub explicit_sig: usize,
}

/// RSA-2048 signature width.
pub const RSA_SIGNATURE_LEN: usize = 256;
/// RSA-2048 public key width (modulus plus exponent and framing). Reported
/// as an assumption; no per-certificate message carries it.
pub const RSA_PUBLIC_KEY_LEN: usize = 270;

impl Widths {
    pub fn for_profile(profile: Profile) -> Widths {
        let s = profile.scalar_len();
        Widths {
            scalar: s,
            point: profile.point_len(),
            message_sig: 2 * s,
            explicit_sig: 2 * s,
        }
    }

    pub fn of<G: Group>() -> Widths {
        Self::for_profile(G::PROFILE)
    }

    /// Explicit certificates signed with RSA-2048 instead of Schnorr.
    pub fn with_rsa(self) -> Widths {
        Widths {
            explicit_sig: RSA_SIGNATURE_LEN,
            ..self
        }
    }
}

/// Encoded size of `kind`. For the variable-length kinds this is the fixed
/// part: add the message length (V2X auth), the plaintext length (I2V
/// message) or `4 + len` per entry (batch).
pub fn size_of(kind: Kind, w: &Widths) -> usize {
    let h = HEADER_LEN;
    match kind {
        Kind::NoinsCert => h + w.point + METADATA_LEN + LV_LEN,
        Kind::ShortTermCert | Kind::SimplCert => h + w.point + METADATA_LEN + SLV_LEN,
        Kind::NoinsPayload => h + size_of(Kind::NoinsCert, w) + 4 * w.scalar,
        Kind::V2xAuth => {
            h + size_of(Kind::ShortTermCert, w) + 2 * w.point + w.scalar + w.message_sig + 4
        }
        Kind::SimplPayload => h + size_of(Kind::SimplCert, w) + w.scalar,
        Kind::ExplicitCert => h + w.point + METADATA_LEN + SLV_LEN + w.explicit_sig,
        Kind::ExplicitPayload => h + size_of(Kind::ExplicitCert, w) + w.scalar,
        Kind::I2vMessage => h + w.point + TAG_LEN,
        Kind::I2vBatch => h + 2,
    }
}

/// Plaintext carried in one I2V message of `approach`.
pub fn i2v_payload_len(approach: Approach, w: &Widths) -> usize {
    match approach {
        Approach::Explicit => size_of(Kind::ExplicitPayload, w),
        Approach::Simpl => size_of(Kind::SimplPayload, w),
        Approach::Noins => size_of(Kind::NoinsPayload, w),
    }
}

/// One encrypted I2V message of `approach`.
pub fn i2v_message_len(approach: Approach, w: &Widths) -> usize {
    size_of(Kind::I2vMessage, w) + i2v_payload_len(approach, w)
}

/// Batch of `count` equally sized I2V messages.
pub fn batch_len(count: usize, item_len: usize) -> usize {
    size_of(Kind::I2vBatch, &Widths::for_profile(Profile::Toy)) + count * (4 + item_len)
}

/// Authentication values that travel with each V2X message:
/// explicit `cert + pkv`, SIMPL `cert`, NOINS `cert_j + pks_j + com_j + resp_j`.
pub fn auth_values_len(approach: Approach, w: &Widths) -> usize {
    match approach {
        Approach::Explicit => size_of(Kind::ExplicitCert, w) + w.point,
        Approach::Simpl => size_of(Kind::SimplCert, w),
        Approach::Noins => size_of(Kind::ShortTermCert, w) + 2 * w.point + w.scalar,
    }
}

/// Cursor over a byte slice.
pub struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    pub fn new(buf: &'a [u8]) -> Self {
        Reader { buf, pos: 0 }
    }

    pub fn remaining(&self) -> usize {
        self.buf.len() - self.pos
    }

    pub fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        if self.remaining() < n {
            return Err(Error::Format(format!(
                "truncated: need {n} bytes at offset {}, have {}",
                self.pos,
                self.remaining()
            )));
        }
        let out = &self.buf[self.pos..self.pos + n];
        self.pos += n;
        Ok(out)
    }

    pub fn array<const N: usize>(&mut self) -> Result<[u8; N]> {
        Ok(self.take(N)?.try_into().expect("length checked"))
    }

    pub fn u16(&mut self) -> Result<u16> {
        Ok(u16::from_be_bytes(self.array()?))
    }

    pub fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_be_bytes(self.array()?))
    }

    pub fn point<G: Group>(&mut self) -> Result<G::Element> {
        G::point_from_bytes(self.take(G::POINT_LEN)?)
    }

    pub fn scalar<G: Group>(&mut self) -> Result<G::Scalar> {
        G::scalar_from_bytes(self.take(G::SCALAR_LEN)?)
    }

    pub fn header(&mut self, kind: Kind) -> Result<()> {
        let [k, v] = self.array::<2>()?;
        if k != kind as u8 {
            return Err(Error::Format(format!(
                "expected kind {:#04x}, found {k:#04x}",
                kind as u8
            )));
        }
        if v != VERSION {
            return Err(Error::Format(format!("unsupported version {v}")));
        }
        Ok(())
    }

    pub fn object<T: WireObject>(&mut self) -> Result<T> {
        self.header(T::KIND)?;
        T::read_body(self)
    }

    pub fn finish(&self) -> Result<()> {
        if self.remaining() != 0 {
            return Err(Error::Format(format!("{} trailing bytes", self.remaining())));
        }
        Ok(())
    }
}

/// Objects with a canonical wire encoding.
pub trait WireObject: Sized {
    const KIND: Kind;

    fn write_body(&self, out: &mut Vec<u8>);
    fn read_body(r: &mut Reader<'_>) -> Result<Self>;

    fn write(&self, out: &mut Vec<u8>) {
        out.push(Self::KIND as u8);
        out.push(VERSION);
        self.write_body(out);
    }

    fn encode(&self) -> Vec<u8> {
        let mut out = Vec::new();
        self.write(&mut out);
        out
    }

    fn decode(bytes: &[u8]) -> Result<Self> {
        let mut r = Reader::new(bytes);
        let v = r.object()?;
        r.finish()?;
        Ok(v)
    }
}

fn put_point<G: Group>(out: &mut Vec<u8>, p: &G::Element) {
    out.extend_from_slice(&G::point_to_bytes(p));
}

fn put_scalar<G: Group>(out: &mut Vec<u8>, s: &G::Scalar) {
    out.extend_from_slice(&G::scalar_to_bytes(s));
}

fn read_meta(r: &mut Reader<'_>) -> Result<Metadata> {
    Metadata::from_bytes(r.take(METADATA_LEN)?)
}

impl<G: Group> WireObject for NoinsCertificate<G> {
    const KIND: Kind = Kind::NoinsCert;

    fn write_body(&self, out: &mut Vec<u8>) {
        put_point::<G>(out, &self.rcv);
        out.extend_from_slice(&self.meta.to_bytes());
        out.extend_from_slice(&self.lv.0);
    }

    fn read_body(r: &mut Reader<'_>) -> Result<Self> {
        Ok(NoinsCertificate {
            rcv: r.point::<G>()?,
            meta: read_meta(r)?,
            lv: LinkageValue(r.array()?),
        })
    }
}

impl<G: Group> WireObject for ShortTermCertificate<G> {
    const KIND: Kind = Kind::ShortTermCert;

    fn write_body(&self, out: &mut Vec<u8>) {
        put_point::<G>(out, &self.rcv);
        out.extend_from_slice(&self.meta.to_bytes());
        out.extend_from_slice(&self.slv.0);
    }

    fn read_body(r: &mut Reader<'_>) -> Result<Self> {
        Ok(ShortTermCertificate {
            rcv: r.point::<G>()?,
            meta: read_meta(r)?,
            slv: ShortLinkageValue(r.array()?),
        })
    }
}

impl<G: Group> WireObject for NoinsIssuance<G> {
    const KIND: Kind = Kind::NoinsPayload;

    fn write_body(&self, out: &mut Vec<u8>) {
        self.cert.write(out);
        put_scalar::<G>(out, &self.meta_sig);
        put_scalar::<G>(out, &self.san_sig);
        put_scalar::<G>(out, &self.san_secret);
        put_scalar::<G>(out, &self.san_nonce);
    }

    fn read_body(r: &mut Reader<'_>) -> Result<Self> {
        Ok(NoinsIssuance {
            cert: r.object()?,
            meta_sig: r.scalar::<G>()?,
            san_sig: r.scalar::<G>()?,
            san_secret: r.scalar::<G>()?,
            san_nonce: r.scalar::<G>()?,
        })
    }
}

impl<G: Group> WireObject for V2xAuthMessage<G> {
    const KIND: Kind = Kind::V2xAuth;

    fn write_body(&self, out: &mut Vec<u8>) {
        self.cert.write(out);
        put_point::<G>(out, &self.san_public);
        put_point::<G>(out, &self.commitment);
        put_scalar::<G>(out, &self.response);
        out.extend_from_slice(&self.signature.to_bytes());
        out.extend_from_slice(&(self.message.len() as u32).to_be_bytes());
        out.extend_from_slice(&self.message);
    }

    fn read_body(r: &mut Reader<'_>) -> Result<Self> {
        let cert = r.object()?;
        let san_public = r.point::<G>()?;
        let commitment = r.point::<G>()?;
        let response = r.scalar::<G>()?;
        let signature = Signature::from_bytes(r.take(Signature::<G>::LEN)?)?;
        let len = r.u32()? as usize;
        let message = r.take(len)?.to_vec();
        Ok(V2xAuthMessage {
            cert,
            san_public,
            commitment,
            response,
            message,
            signature,
        })
    }
}

impl<G: Group> WireObject for SimplCertificate<G> {
    const KIND: Kind = Kind::SimplCert;

    fn write_body(&self, out: &mut Vec<u8>) {
        out.extend_from_slice(&self.body());
    }

    fn read_body(r: &mut Reader<'_>) -> Result<Self> {
        Ok(SimplCertificate {
            rcv: r.point::<G>()?,
            meta: read_meta(r)?,
            lv: ShortLinkageValue(r.array()?),
        })
    }
}

impl<G: Group> WireObject for SimplIssuance<G> {
    const KIND: Kind = Kind::SimplPayload;

    fn write_body(&self, out: &mut Vec<u8>) {
        self.cert.write(out);
        put_scalar::<G>(out, &self.sig);
    }

    fn read_body(r: &mut Reader<'_>) -> Result<Self> {
        Ok(SimplIssuance {
            cert: r.object()?,
            sig: r.scalar::<G>()?,
        })
    }
}

impl<G: Group> WireObject for ExplicitCertificate<G> {
    const KIND: Kind = Kind::ExplicitCert;

    fn write_body(&self, out: &mut Vec<u8>) {
        out.extend_from_slice(&self.signed_body());
        out.extend_from_slice(&self.sig.to_bytes());
    }

    fn read_body(r: &mut Reader<'_>) -> Result<Self> {
        Ok(ExplicitCertificate {
            pkv: r.point::<G>()?,
            meta: read_meta(r)?,
            lv: ShortLinkageValue(r.array()?),
            sig: Signature::from_bytes(r.take(Signature::<G>::LEN)?)?,
        })
    }
}

impl<G: Group> WireObject for ExplicitIssuance<G> {
    const KIND: Kind = Kind::ExplicitPayload;

    fn write_body(&self, out: &mut Vec<u8>) {
        self.cert.write(out);
        put_scalar::<G>(out, &self.offset);
    }

    fn read_body(r: &mut Reader<'_>) -> Result<Self> {
        Ok(ExplicitIssuance {
            cert: r.object()?,
            offset: r.scalar::<G>()?,
        })
    }
}

impl<G: Group> WireObject for I2vMessage<G> {
    const KIND: Kind = Kind::I2vMessage;

    fn write_body(&self, out: &mut Vec<u8>) {
        put_point::<G>(out, &self.ephemeral);
        out.extend_from_slice(&self.body);
        out.extend_from_slice(&self.tag);
    }

    fn read_body(r: &mut Reader<'_>) -> Result<Self> {
        let ephemeral = r.point::<G>()?;
        if r.remaining() < TAG_LEN {
            return Err(Error::Format("I2V message shorter than its tag".into()));
        }
        let body = r.take(r.remaining() - TAG_LEN)?.to_vec();
        Ok(I2vMessage {
            ephemeral,
            body,
            tag: r.array()?,
        })
    }
}

/// Up to 65535 I2V messages delivered together.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct I2vBatch<G: Group> {
    pub messages: Vec<I2vMessage<G>>,
}

impl<G: Group> WireObject for I2vBatch<G> {
    const KIND: Kind = Kind::I2vBatch;

    fn write_body(&self, out: &mut Vec<u8>) {
        let count = u16::try_from(self.messages.len()).expect("batch holds at most 65535 messages");
        out.extend_from_slice(&count.to_be_bytes());
        for m in &self.messages {
            let item = m.encode();
            out.extend_from_slice(&(item.len() as u32).to_be_bytes());
            out.extend_from_slice(&item);
        }
    }

    fn read_body(r: &mut Reader<'_>) -> Result<Self> {
        let count = r.u16()?;
        let mut messages = Vec::with_capacity(count as usize);
        for _ in 0..count {
            let len = r.u32()? as usize;
            messages.push(I2vMessage::decode(r.take(len)?)?);
        }
        Ok(I2vBatch { messages })
    }
}
