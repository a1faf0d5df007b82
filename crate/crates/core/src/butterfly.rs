//! Caterpillar → cocoon key expansion.
//!
//! The expansion function is `f(seed, i) = H_f(seed, i as u32 BE)` and the
//! expansion is additive, so the public half can be derived from `X` alone:
//! `X̂_i = X + f(seed, i)·g` and `x̂_i = x + f(seed, i)`.

use rand::{CryptoRng, RngCore};

use crate::group::{hash_to_scalar, random_nonzero_scalar, tags, Group};

pub const SEED_LEN: usize = 16;

/// Seed shared between the vehicle and the issuing side.
pub type ExpansionSeed = [u8; SEED_LEN];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaterpillarKeyPair<G: Group> {
    pub secret: G::Scalar,
    pub public: G::Element,
    pub seed: ExpansionSeed,
}

impl<G: Group> CaterpillarKeyPair<G> {
    pub fn generate<R: RngCore + CryptoRng + ?Sized>(rng: &mut R) -> Self {
        let secret = random_nonzero_scalar::<G, _>(rng);
        let mut seed = [0u8; SEED_LEN];
        rng.fill_bytes(&mut seed);
        Self::from_parts(secret, seed)
    }

    pub fn from_parts(secret: G::Scalar, seed: ExpansionSeed) -> Self {
        CaterpillarKeyPair {
            secret,
            public: G::mul_base(&secret),
            seed,
        }
    }

    /// What the vehicle hands to the registration side.
    pub fn request(&self) -> (G::Element, ExpansionSeed) {
        (self.public, self.seed)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CocoonKeyPair<G: Group> {
    pub index: u32,
    pub secret: G::Scalar,
    pub public: G::Element,
}

/// `f(seed, i)`.
pub fn expansion_offset<G: Group>(seed: &ExpansionSeed, index: u32) -> G::Scalar {
    hash_to_scalar::<G>(tags::EXPANSION, &[seed, &index.to_be_bytes()])
}

pub fn derive_cocoon_private<G: Group>(pair: &CaterpillarKeyPair<G>, index: u32) -> CocoonKeyPair<G> {
    derive_cocoon_with_offset(pair, index, expansion_offset::<G>(&pair.seed, index))
}

/// Expansion with an explicit offset in place of `f(seed, i)`.
pub fn derive_cocoon_with_offset<G: Group>(
    pair: &CaterpillarKeyPair<G>,
    index: u32,
    offset: G::Scalar,
) -> CocoonKeyPair<G> {
    let secret = pair.secret + offset;
    CocoonKeyPair {
        index,
        secret,
        public: G::mul_base(&secret),
    }
}

pub fn derive_cocoon_public<G: Group>(public: &G::Element, seed: &ExpansionSeed, index: u32) -> G::Element {
    *public + G::mul_base(&expansion_offset::<G>(seed, index))
}
