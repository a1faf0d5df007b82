//! Schnorr signatures in (challenge, response) form.
//!
//! Used for V2X message signing under short-term keys and for the CA
//! signature on explicit baseline certificates.

use rand::{CryptoRng, RngCore};

use crate::group::{hash_to_scalar, random_nonzero_scalar, tags, Group};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Signature<G: Group> {
    pub challenge: G::Scalar,
    pub response: G::Scalar,
}

impl<G: Group> Signature<G> {
    pub const LEN: usize = 2 * G::SCALAR_LEN;

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = G::scalar_to_bytes(&self.challenge);
        out.extend(G::scalar_to_bytes(&self.response));
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> crate::Result<Self> {
        if bytes.len() != Self::LEN {
            return Err(crate::Error::Format(format!(
                "signature must be {} bytes, got {}",
                Self::LEN,
                bytes.len()
            )));
        }
        let (c, s) = bytes.split_at(G::SCALAR_LEN);
        Ok(Signature {
            challenge: G::scalar_from_bytes(c)?,
            response: G::scalar_from_bytes(s)?,
        })
    }
}

fn challenge<G: Group>(commitment: &G::Element, public: &G::Element, message: &[u8]) -> G::Scalar {
    hash_to_scalar::<G>(
        tags::SIGNATURE,
        &[
            &G::point_to_bytes(commitment),
            &G::point_to_bytes(public),
            message,
        ],
    )
}

pub fn sign<G: Group, R: RngCore + CryptoRng + ?Sized>(
    secret: &G::Scalar,
    public: &G::Element,
    message: &[u8],
    rng: &mut R,
) -> Signature<G> {
    let mut nonce = random_nonzero_scalar::<G, _>(rng);
    let commitment = G::mul_base(&nonce);
    let c = challenge::<G>(&commitment, public, message);
    let sig = Signature {
        challenge: c,
        response: nonce + c * *secret,
    };
    zeroize::Zeroize::zeroize(&mut nonce);
    sig
}

/// `s·g − c·pk` must hash back to `c`.
pub fn verify<G: Group>(public: &G::Element, message: &[u8], sig: &Signature<G>) -> bool {
    if *public == G::identity() {
        return false;
    }
    let commitment = G::mul_base(&sig.response) - *public * sig.challenge;
    challenge::<G>(&commitment, public, message) == sig.challenge
}
