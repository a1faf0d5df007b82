//! Prime-order group abstraction.
//!
//! Every protocol routine in this crate is generic over [`Group`], so the same
//! code runs over secp256k1 ([`Secp256k1`]) and over a tiny multiplicative
//! subgroup ([`ToyGroup`]) whose discrete logarithms can be enumerated.
//!
//! All group operations are written additively, scalars live in `Z_q`.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use rand::{CryptoRng, RngCore};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use zeroize::Zeroize;

use crate::error::Result;

pub mod counting;
mod secp256k1;
mod toy;

pub use counting::Counting;
pub use secp256k1::Secp256k1;
pub use toy::{ToyElement, ToyGroup, ToyScalar, TOY_GENERATOR, TOY_MODULUS, TOY_ORDER};

/// Which parameter set a group implementation belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Profile {
    Production,
    Toy,
}

impl Profile {
    pub fn as_str(self) -> &'static str {
        match self {
            Profile::Production => "production",
            Profile::Toy => "toy",
        }
    }

    pub fn to_byte(self) -> u8 {
        match self {
            Profile::Production => 0,
            Profile::Toy => 1,
        }
    }

    pub fn from_byte(b: u8) -> Option<Self> {
        match b {
            0 => Some(Profile::Production),
            1 => Some(Profile::Toy),
            _ => None,
        }
    }

    /// Encoded scalar width in bytes.
    pub fn scalar_len(self) -> usize {
        match self {
            Profile::Production => Secp256k1::SCALAR_LEN,
            Profile::Toy => ToyGroup::SCALAR_LEN,
        }
    }

    /// Encoded point width in bytes.
    pub fn point_len(self) -> usize {
        match self {
            Profile::Production => Secp256k1::POINT_LEN,
            Profile::Toy => ToyGroup::POINT_LEN,
        }
    }
}

impl std::fmt::Display for Profile {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Profile {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "production" | "secp256k1" => Ok(Profile::Production),
            "toy" => Ok(Profile::Toy),
            other => Err(format!("unknown group profile `{other}`")),
        }
    }
}

/// A cyclic group of prime order `q` with a distinguished generator.
pub trait Group: Copy + Clone + Debug + Default + PartialEq + Eq + Send + Sync + 'static {
    type Scalar: Copy
        + Eq
        + Debug
        + Send
        + Sync
        + Zeroize
        + Add<Output = Self::Scalar>
        + Sub<Output = Self::Scalar>
        + Mul<Output = Self::Scalar>
        + Neg<Output = Self::Scalar>;

    type Element: Copy
        + Eq
        + Debug
        + Send
        + Sync
        + Add<Output = Self::Element>
        + Sub<Output = Self::Element>
        + Neg<Output = Self::Element>
        + Mul<Self::Scalar, Output = Self::Element>;

    const PROFILE: Profile;
    const SCALAR_LEN: usize;
    const POINT_LEN: usize;

    /// Group order as big-endian bytes.
    fn order_be() -> Vec<u8>;
    fn generator() -> Self::Element;
    fn identity() -> Self::Element;

    fn scalar_from_u64(v: u64) -> Self::Scalar;
    fn random_scalar<R: RngCore + CryptoRng + ?Sized>(rng: &mut R) -> Self::Scalar;
    /// Interpret a 256-bit big-endian digest as an integer and reduce mod q.
    fn reduce_digest(digest: &[u8; 32]) -> Self::Scalar;

    fn scalar_to_bytes(s: &Self::Scalar) -> Vec<u8>;
    /// Rejects wrong lengths and values `>= q`.
    fn scalar_from_bytes(bytes: &[u8]) -> Result<Self::Scalar>;
    fn point_to_bytes(p: &Self::Element) -> Vec<u8>;
    /// Rejects wrong lengths and encodings of non-members.
    fn point_from_bytes(bytes: &[u8]) -> Result<Self::Element>;

    fn mul_base(s: &Self::Scalar) -> Self::Element {
        Self::generator() * *s
    }

    fn zero() -> Self::Scalar {
        Self::scalar_from_u64(0)
    }

    fn one() -> Self::Scalar {
        Self::scalar_from_u64(1)
    }

    fn params() -> GroupParams {
        GroupParams {
            profile: Self::PROFILE,
            order: Self::order_be(),
            generator: Self::point_to_bytes(&Self::generator()),
            point_len: Self::POINT_LEN,
            scalar_len: Self::SCALAR_LEN,
        }
    }
}

/// Public description of a group instantiation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupParams {
    pub profile: Profile,
    /// Big-endian group order.
    #[serde(with = "hex::serde")]
    pub order: Vec<u8>,
    /// Canonical encoding of the generator.
    #[serde(with = "hex::serde")]
    pub generator: Vec<u8>,
    pub point_len: usize,
    pub scalar_len: usize,
}

fn framed_digest(domain_tag: &[u8], parts: &[&[u8]]) -> [u8; 32] {
    assert!(!parts.is_empty(), "hash input must have at least one part");
    let mut hasher = Sha256::new();
    hasher.update(domain_tag);
    for part in parts {
        hasher.update((part.len() as u32).to_be_bytes());
        hasher.update(part);
    }
    hasher.finalize().into()
}

/// `SHA-256(tag ‖ len(p1) ‖ p1 ‖ …)` read big-endian and reduced mod q.
///
/// Lengths are 4-byte big-endian. Panics if `parts` is empty.
pub fn hash_to_scalar<G: Group>(domain_tag: &[u8], parts: &[&[u8]]) -> G::Scalar {
    G::reduce_digest(&framed_digest(domain_tag, parts))
}

/// Same framing as [`hash_to_scalar`], returning the raw digest.
pub fn hash_to_bytes(domain_tag: &[u8], parts: &[&[u8]]) -> [u8; 32] {
    framed_digest(domain_tag, parts)
}

/// Random scalar that is not zero.
pub fn random_nonzero_scalar<G: Group, R: RngCore + CryptoRng + ?Sized>(rng: &mut R) -> G::Scalar {
    loop {
        let s = G::random_scalar(rng);
        if s != G::zero() {
            return s;
        }
    }
}

/// Domain-separation tags for every hash call in the protocol.
pub mod tags {
    pub const H1: &[u8] = b"h1";
    pub const H2: &[u8] = b"h2";
    pub const CHALLENGE: &[u8] = b"cha";
    pub const KDF: &[u8] = b"kdf";
    pub const EXPANSION: &[u8] = b"f";
    pub const SIGNATURE: &[u8] = b"sig";
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    fn homomorphism<G: Group>(rng: &mut ChaCha20Rng) {
        let g = G::generator();
        assert_eq!(G::mul_base(&G::zero()), G::identity());
        assert_eq!(G::mul_base(&G::one()), g);
        for _ in 0..32 {
            let a = G::random_scalar(rng);
            let b = G::random_scalar(rng);
            assert_eq!(G::mul_base(&(a + b)), G::mul_base(&a) + G::mul_base(&b));
            assert_eq!(G::mul_base(&(a * b)), G::mul_base(&a) * b);
            assert_eq!(G::mul_base(&(a - b)), G::mul_base(&a) - G::mul_base(&b));
            assert_eq!(G::mul_base(&-a), -G::mul_base(&a));
        }
    }

    fn point_round_trip<G: Group>(rng: &mut ChaCha20Rng) {
        for p in [G::generator(), G::identity()] {
            let enc = G::point_to_bytes(&p);
            assert_eq!(enc.len(), G::POINT_LEN);
            assert_eq!(G::point_from_bytes(&enc).unwrap(), p);
        }
        for _ in 0..32 {
            let s = G::random_scalar(rng);
            let p = G::mul_base(&s);
            assert_eq!(G::point_from_bytes(&G::point_to_bytes(&p)).unwrap(), p);
            let enc = G::scalar_to_bytes(&s);
            assert_eq!(enc.len(), G::SCALAR_LEN);
            assert_eq!(G::scalar_from_bytes(&enc).unwrap(), s);
        }
        assert!(G::point_from_bytes(&vec![0xFF; G::POINT_LEN]).is_err());
        assert!(G::point_from_bytes(&vec![0x02; G::POINT_LEN + 1]).is_err());
        assert!(G::scalar_from_bytes(&vec![0xFF; G::SCALAR_LEN]).is_err());
    }

    #[test]
    fn group_laws_hold_in_both_profiles() {
        let mut rng = ChaCha20Rng::seed_from_u64(1);
        homomorphism::<Secp256k1>(&mut rng);
        homomorphism::<ToyGroup>(&mut rng);
    }

    #[test]
    fn encodings_round_trip() {
        let mut rng = ChaCha20Rng::seed_from_u64(2);
        point_round_trip::<Secp256k1>(&mut rng);
        point_round_trip::<ToyGroup>(&mut rng);
    }

    #[test]
    fn production_point_is_33_bytes_compressed() {
        let enc = Secp256k1::point_to_bytes(&Secp256k1::generator());
        assert_eq!(enc.len(), 33);
        // SEC 2 generator x-coordinate, even y.
        assert_eq!(
            hex::encode(&enc),
            "0279be667ef9dcbbac55a06295ce870b07029bfcdb2dce28d959f2815b16f81798"
        );
    }

    #[test]
    fn hash_to_scalar_is_deterministic_and_tagged() {
        let a = hash_to_scalar::<Secp256k1>(tags::H1, &[b"meta", b"pkc"]);
        let b = hash_to_scalar::<Secp256k1>(tags::H1, &[b"meta", b"pkc"]);
        let c = hash_to_scalar::<Secp256k1>(tags::H2, &[b"meta", b"pkc"]);
        assert_eq!(a, b);
        assert_ne!(a, c);
        // framing: moving a byte across a part boundary changes the digest
        let d = hash_to_scalar::<Secp256k1>(tags::H1, &[b"met", b"apkc"]);
        assert_ne!(a, d);
    }

    #[test]
    #[should_panic]
    fn hash_to_scalar_rejects_empty_parts() {
        let _ = hash_to_scalar::<ToyGroup>(tags::H1, &[]);
    }

    #[test]
    fn params_describe_profiles() {
        let p = Secp256k1::params();
        assert_eq!(p.profile, Profile::Production);
        assert_eq!(p.order.len(), 32);
        let t = ToyGroup::params();
        assert_eq!(t.profile, Profile::Toy);
        assert_eq!(t.order, vec![0x03, 0xFB]);
        assert_eq!(Profile::Toy.point_len(), 2);
    }
}
