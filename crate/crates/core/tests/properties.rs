use num_bigint::BigUint;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use sha2::{Digest, Sha256};

use noins_core::adversary::World;
use noins_core::cert::Metadata;
use noins_core::group::{hash_to_scalar, Group, Secp256k1, ToyGroup};
use noins_core::vehicle::{sign_v2x, V2xAuthMessage};
use noins_core::verification::verify_v2x;
use noins_core::wire::{size_of, Kind, WireObject, Widths};

const SECP256K1_ORDER: &str = "FFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFEBAAEDCE6AF48A03BBFD25E8CD0364141";

fn framed(tag: &[u8], parts: &[Vec<u8>]) -> BigUint {
    let mut h = Sha256::new();
    h.update(tag);
    for p in parts {
        h.update((p.len() as u32).to_be_bytes());
        h.update(p);
    }
    BigUint::from_bytes_be(&h.finalize())
}

fn v2x_roundtrip<G: Group>(seed: u64, message: &[u8]) {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut world = World::<G>::new(&mut rng);
    let cred = world.enroll(&mut rng);
    let j = 1 + (seed % 50) as u32;
    let msg = sign_v2x(&world.bundle(&cred, j, &mut rng), message, &mut rng);
    let bytes = msg.encode();
    assert_eq!(bytes.len(), size_of(Kind::V2xAuth, &Widths::of::<G>()) + message.len());
    let back = V2xAuthMessage::<G>::decode(&bytes).unwrap();
    assert_eq!(back.encode(), bytes);
    assert!(verify_v2x(&back, &world.trust, world.now).is_ok());

    let issuance = cred.issuance.encode();
    assert_eq!(issuance.len(), size_of(Kind::NoinsPayload, &Widths::of::<G>()));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hash_to_scalar_matches_bigint_reduction(tag in prop::collection::vec(any::<u8>(), 1..8),
                                               parts in prop::collection::vec(prop::collection::vec(any::<u8>(), 0..40), 1..4)) {
        let refs: Vec<&[u8]> = parts.iter().map(Vec::as_slice).collect();
        let digest = framed(&tag, &parts);

        let n = BigUint::parse_bytes(SECP256K1_ORDER.as_bytes(), 16).unwrap();
        let want = (&digest % &n).to_bytes_be();
        let got = Secp256k1::scalar_to_bytes(&hash_to_scalar::<Secp256k1>(&tag, &refs));
        let mut padded = vec![0u8; 32 - want.len()];
        padded.extend_from_slice(&want);
        prop_assert_eq!(got, padded);

        let toy = (&digest % BigUint::from(1019u32)).to_u32_digits().first().copied().unwrap_or(0);
        prop_assert_eq!(hash_to_scalar::<ToyGroup>(&tag, &refs).value(), toy);
    }

    #[test]
    fn metadata_roundtrips(issuer in any::<u32>(), start in 0u32..u32::MAX, span in 1u32..1_000_000, psid in any::<u16>()) {
        let end = start.saturating_add(span).max(start + 1);
        let m = Metadata::new(issuer, start, end, psid).unwrap();
        prop_assert_eq!(Metadata::from_bytes(&m.to_bytes()).unwrap(), m);
        prop_assert!(m.is_valid_at(start));
        prop_assert!(!m.is_valid_at(end));
    }

    #[test]
    fn toy_v2x_roundtrips(seed in any::<u64>(), message in prop::collection::vec(any::<u8>(), 0..300)) {
        v2x_roundtrip::<ToyGroup>(seed, &message);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn production_v2x_roundtrips(seed in any::<u64>(), message in prop::collection::vec(any::<u8>(), 0..300)) {
        v2x_roundtrip::<Secp256k1>(seed, &message);
    }

    #[test]
    fn truncation_is_a_format_error(seed in any::<u64>(), cut in 0usize..200) {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let mut world = World::<Secp256k1>::new(&mut rng);
        let cred = world.enroll(&mut rng);
        let bytes = sign_v2x(&world.bundle(&cred, 1, &mut rng), b"brake", &mut rng).encode();
        let cut = cut % bytes.len();
        prop_assert!(V2xAuthMessage::<Secp256k1>::decode(&bytes[..cut]).is_err());
    }
}
