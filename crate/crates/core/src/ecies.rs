//! ECIES-style public-key encryption for CA → vehicle messages.
//!
//! Ephemeral `k`, `E = k·g`, shared point `S = k·X̂`. The 32-byte KDF output
//! `H("kdf", [E, S])` splits into an AES-128-CTR key (first half) and an
//! HMAC-SHA256 key (second half). Every message has a fresh key, so the CTR
//! nonce is fixed at zero. The tag authenticates `E ‖ ciphertext`.

use aes::cipher::{KeyIvInit, StreamCipher};
use hmac::{Hmac, Mac};
use rand::{CryptoRng, RngCore};
use sha2::Sha256;
use zeroize::Zeroize;

use crate::error::{Error, Result};
use crate::group::{hash_to_bytes, random_nonzero_scalar, tags, Group};

type Aes128Ctr = ctr::Ctr128BE<aes::Aes128>;
type HmacSha256 = Hmac<Sha256>;

pub const TAG_LEN: usize = 32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ciphertext<G: Group> {
    pub ephemeral: G::Element,
    pub body: Vec<u8>,
    pub tag: [u8; TAG_LEN],
}

impl<G: Group> Ciphertext<G> {
    /// Bytes added on top of the plaintext.
    pub const OVERHEAD: usize = G::POINT_LEN + TAG_LEN;
}

struct Keys {
    enc: [u8; 16],
    mac: [u8; 16],
}

impl Drop for Keys {
    fn drop(&mut self) {
        self.enc.zeroize();
        self.mac.zeroize();
    }
}

fn derive_keys<G: Group>(ephemeral: &G::Element, shared: &G::Element) -> Keys {
    let mut okm = hash_to_bytes(
        tags::KDF,
        &[&G::point_to_bytes(ephemeral), &G::point_to_bytes(shared)],
    );
    let mut keys = Keys {
        enc: [0; 16],
        mac: [0; 16],
    };
    keys.enc.copy_from_slice(&okm[..16]);
    keys.mac.copy_from_slice(&okm[16..]);
    okm.zeroize();
    keys
}

fn mac<G: Group>(key: &[u8; 16], ephemeral: &G::Element, body: &[u8]) -> HmacSha256 {
    let mut m = <HmacSha256 as Mac>::new_from_slice(key).expect("HMAC takes any key length");
    m.update(&G::point_to_bytes(ephemeral));
    m.update(body);
    m
}

pub fn encrypt<G: Group, R: RngCore + CryptoRng + ?Sized>(
    recipient: &G::Element,
    plaintext: &[u8],
    rng: &mut R,
) -> Result<Ciphertext<G>> {
    if *recipient == G::identity() {
        return Err(Error::IdentityPoint);
    }
    let mut k = random_nonzero_scalar::<G, _>(rng);
    let ephemeral = G::mul_base(&k);
    let shared = *recipient * k;
    k.zeroize();
    let keys = derive_keys::<G>(&ephemeral, &shared);

    let mut body = plaintext.to_vec();
    Aes128Ctr::new(&keys.enc.into(), &[0u8; 16].into()).apply_keystream(&mut body);
    let tag = mac::<G>(&keys.mac, &ephemeral, &body).finalize().into_bytes().into();
    Ok(Ciphertext {
        ephemeral,
        body,
        tag,
    })
}

/// Fails with [`Error::Decrypt`] on a wrong key or any modification.
pub fn decrypt<G: Group>(secret: &G::Scalar, ct: &Ciphertext<G>) -> Result<Vec<u8>> {
    if ct.ephemeral == G::identity() {
        return Err(Error::Decrypt);
    }
    let shared = ct.ephemeral * *secret;
    let keys = derive_keys::<G>(&ct.ephemeral, &shared);
    mac::<G>(&keys.mac, &ct.ephemeral, &ct.body)
        .verify_slice(&ct.tag)
        .map_err(|_| Error::Decrypt)?;
    let mut out = ct.body.clone();
    Aes128Ctr::new(&keys.enc.into(), &[0u8; 16].into()).apply_keystream(&mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{Secp256k1, ToyGroup};
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    fn round_trip<G: Group>() {
        let mut rng = ChaCha20Rng::seed_from_u64(21);
        let x = random_nonzero_scalar::<G, _>(&mut rng);
        let pk = G::mul_base(&x);
        let msg = b"credential bytes".to_vec();
        let ct = encrypt::<G, _>(&pk, &msg, &mut rng).unwrap();
        assert_eq!(ct.body.len(), msg.len());
        assert_ne!(ct.body, msg);
        assert_eq!(decrypt::<G>(&x, &ct).unwrap(), msg);
        assert_eq!(decrypt::<G>(&(x + G::one()), &ct), Err(Error::Decrypt));
    }

    #[test]
    fn round_trip_both_profiles() {
        round_trip::<Secp256k1>();
        round_trip::<ToyGroup>();
    }

    #[test]
    fn any_flipped_byte_is_rejected() {
        let mut rng = ChaCha20Rng::seed_from_u64(22);
        let x = random_nonzero_scalar::<Secp256k1, _>(&mut rng);
        let pk = Secp256k1::mul_base(&x);
        let ct = encrypt::<Secp256k1, _>(&pk, &[7u8; 40], &mut rng).unwrap();
        for i in 0..ct.body.len() {
            let mut bad = ct.clone();
            bad.body[i] ^= 1;
            assert_eq!(decrypt::<Secp256k1>(&x, &bad), Err(Error::Decrypt));
        }
        for i in 0..TAG_LEN {
            let mut bad = ct.clone();
            bad.tag[i] ^= 0x80;
            assert_eq!(decrypt::<Secp256k1>(&x, &bad), Err(Error::Decrypt));
        }
        let mut bad = ct.clone();
        bad.ephemeral = bad.ephemeral + Secp256k1::generator();
        assert_eq!(decrypt::<Secp256k1>(&x, &bad), Err(Error::Decrypt));
    }

    #[test]
    fn identity_recipient_rejected() {
        let mut rng = ChaCha20Rng::seed_from_u64(23);
        assert_eq!(
            encrypt::<Secp256k1, _>(&Secp256k1::identity(), b"x", &mut rng),
            Err(Error::IdentityPoint)
        );
    }
}
