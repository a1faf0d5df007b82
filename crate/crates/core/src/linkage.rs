//! Short-term linkage values.
//!
//! `slv_j = [AES_lv(ID_CA ‖ j) ⊕ (ID_CA ‖ j)]_{t_sv}`, a Davies-Meyer step
//! keyed by the certificate's 16-byte linkage value. The input block is
//! `ID_CA` left-justified and zero-padded to 12 bytes, followed by `j` as a
//! 4-byte big-endian integer.
//!
//! Truncating to 9 bytes gives a 72-bit value: a fleet-wide collision becomes
//! likely around 2^36 pseudonyms. Attribution resolves collisions by taking
//! the smallest matching index.

use aes::cipher::{BlockEncrypt, KeyInit};
use aes::Aes128;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const LV_LEN: usize = 16;
pub const SLV_LEN: usize = 9;
pub const ID_CA_MAX: usize = 12;

/// Per-certificate secret linkage value (AES-128 key width).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LinkageValue(#[serde(with = "hex::serde")] pub [u8; LV_LEN]);

/// Truncated 9-byte linkage value. Also the width of the baseline
/// (explicit / SIMPL) certificate linkage value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ShortLinkageValue(#[serde(with = "hex::serde")] pub [u8; SLV_LEN]);

impl LinkageValue {
    pub fn random<R: rand::RngCore + ?Sized>(rng: &mut R) -> Self {
        let mut lv = [0u8; LV_LEN];
        rng.fill_bytes(&mut lv);
        LinkageValue(lv)
    }
}

impl ShortLinkageValue {
    pub fn random<R: rand::RngCore + ?Sized>(rng: &mut R) -> Self {
        let mut v = [0u8; SLV_LEN];
        rng.fill_bytes(&mut v);
        ShortLinkageValue(v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkageContext {
    id_ca: Vec<u8>,
    t_sv: usize,
}

impl LinkageContext {
    /// Context with the protocol's 9-byte truncation.
    pub fn new(id_ca: impl Into<Vec<u8>>) -> Result<Self> {
        Self::with_truncation(id_ca, SLV_LEN)
    }

    pub fn with_truncation(id_ca: impl Into<Vec<u8>>, t_sv: usize) -> Result<Self> {
        let id_ca = id_ca.into();
        if id_ca.len() > ID_CA_MAX {
            return Err(Error::IdTooLong(id_ca.len()));
        }
        if t_sv == 0 || t_sv > 16 {
            return Err(Error::InvalidTruncation(t_sv));
        }
        Ok(LinkageContext { id_ca, t_sv })
    }

    pub fn id_ca(&self) -> &[u8] {
        &self.id_ca
    }

    pub fn truncation(&self) -> usize {
        self.t_sv
    }

    /// `ID_CA ‖ j` as one AES block.
    pub fn block(&self, j: u32) -> [u8; 16] {
        let mut block = [0u8; 16];
        block[..self.id_ca.len()].copy_from_slice(&self.id_ca);
        block[12..].copy_from_slice(&j.to_be_bytes());
        block
    }
}

/// `AES_key(block) ⊕ block`.
pub fn davies_meyer(key: &[u8; 16], block: &[u8; 16]) -> [u8; 16] {
    let cipher = Aes128::new(key.into());
    let mut out = aes::Block::clone_from_slice(block);
    cipher.encrypt_block(&mut out);
    let mut result = [0u8; 16];
    for (r, (c, b)) in result.iter_mut().zip(out.iter().zip(block)) {
        *r = c ^ b;
    }
    result
}

/// First `t_sv` bytes of the Davies-Meyer output.
pub fn derive_truncated(lv: &LinkageValue, ctx: &LinkageContext, j: u32) -> Vec<u8> {
    davies_meyer(&lv.0, &ctx.block(j))[..ctx.t_sv].to_vec()
}

/// `slv_j` at the protocol width. Fails if the context truncates to
/// anything other than 9 bytes.
pub fn derive_slv(lv: &LinkageValue, ctx: &LinkageContext, j: u32) -> Result<ShortLinkageValue> {
    if ctx.t_sv != SLV_LEN {
        return Err(Error::InvalidTruncation(ctx.t_sv));
    }
    let full = davies_meyer(&lv.0, &ctx.block(j));
    let mut slv = [0u8; SLV_LEN];
    slv.copy_from_slice(&full[..SLV_LEN]);
    Ok(ShortLinkageValue(slv))
}

/// Smallest `j` in `1..=n_cs` whose `slv_j` equals `observed`.
pub fn match_slv(
    lv: &LinkageValue,
    ctx: &LinkageContext,
    observed: &ShortLinkageValue,
    n_cs: u32,
) -> Option<u32> {
    (1..=n_cs).find(|&j| derive_truncated(lv, ctx, j) == observed.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha20Rng;
    use std::collections::HashSet;

    #[test]
    fn block_layout() {
        let ctx = LinkageContext::new(*b"CA01").unwrap();
        let b = ctx.block(1);
        assert_eq!(&b[..4], b"CA01");
        assert_eq!(&b[4..12], &[0u8; 8]);
        assert_eq!(&b[12..], &[0, 0, 0, 1]);
    }

    #[test]
    fn id_too_long_is_rejected() {
        assert_eq!(
            LinkageContext::new(vec![b'x'; 13]),
            Err(Error::IdTooLong(13))
        );
        assert!(LinkageContext::new(vec![b'x'; 12]).is_ok());
        assert!(LinkageContext::with_truncation(*b"CA", 17).is_err());
    }

    #[test]
    fn fips197_vector_through_davies_meyer() {
        // FIPS-197 C.1: AES-128(000102..0f, 00112233..ff) = 69c4e0d8...
        let key: [u8; 16] = core::array::from_fn(|i| i as u8);
        let pt: [u8; 16] = core::array::from_fn(|i| (i as u8) * 0x11);
        let ct = hex::decode("69c4e0d86a7b0430d8cdb78070b4c55a").unwrap();
        let dm = davies_meyer(&key, &pt);
        let expected: Vec<u8> = ct.iter().zip(pt.iter()).map(|(a, b)| a ^ b).collect();
        assert_eq!(dm.to_vec(), expected);
    }

    #[test]
    fn deterministic_and_distinct_over_indices() {
        let ctx = LinkageContext::new(*b"CA01").unwrap();
        let lv = LinkageValue([0u8; 16]);
        assert_eq!(derive_slv(&lv, &ctx, 1), derive_slv(&lv, &ctx, 1));
        let all: HashSet<_> = (1..=50).map(|j| derive_slv(&lv, &ctx, j).unwrap()).collect();
        assert_eq!(all.len(), 50);
    }

    #[test]
    fn truncation_width_is_exact() {
        let lv = LinkageValue([7u8; 16]);
        for t in 1..=16 {
            let ctx = LinkageContext::with_truncation(*b"CA01", t).unwrap();
            assert_eq!(derive_truncated(&lv, &ctx, 3).len(), t);
        }
        let wide = LinkageContext::with_truncation(*b"CA01", 10).unwrap();
        assert!(derive_slv(&lv, &wide, 1).is_err());
    }

    #[test]
    fn match_finds_index_and_rejects_foreign_lv() {
        let mut rng = ChaCha20Rng::seed_from_u64(11);
        let ctx = LinkageContext::new(*b"CA01").unwrap();
        let lv = LinkageValue::random(&mut rng);
        let slv7 = derive_slv(&lv, &ctx, 7).unwrap();
        assert_eq!(match_slv(&lv, &ctx, &slv7, 50), Some(7));
        assert_eq!(match_slv(&lv, &ctx, &slv7, 6), None);
        for _ in 0..1000 {
            let other = LinkageValue::random(&mut rng);
            let j = rng.gen_range(1..=50);
            let observed = derive_slv(&other, &ctx, j).unwrap();
            assert_eq!(match_slv(&lv, &ctx, &observed, 50), None);
        }
    }

    #[test]
    fn byte_frequency_is_roughly_uniform() {
        // coarse chi-squared over 10^4 outputs × 9 bytes, 255 degrees of freedom
        let mut rng = ChaCha20Rng::seed_from_u64(12);
        let ctx = LinkageContext::new(*b"CA01").unwrap();
        let mut counts = [0u64; 256];
        for _ in 0..10_000 {
            let lv = LinkageValue::random(&mut rng);
            let j = rng.gen_range(1..=50);
            for b in derive_slv(&lv, &ctx, j).unwrap().0 {
                counts[b as usize] += 1;
            }
        }
        let n: u64 = counts.iter().sum();
        let expected = n as f64 / 256.0;
        let chi2: f64 = counts
            .iter()
            .map(|&c| (c as f64 - expected).powi(2) / expected)
            .sum();
        // mean 255, sd ≈ 22.6; 400 is well past 6σ
        assert!(chi2 < 400.0, "chi2 = {chi2}");
    }
}
