use k256::elliptic_curve::group::Group as _;
use k256::elliptic_curve::ops::{MulByGenerator, Reduce};
use k256::elliptic_curve::sec1::{FromEncodedPoint, ToEncodedPoint};
use k256::elliptic_curve::PrimeField;
use k256::{EncodedPoint, FieldBytes, ProjectivePoint, Scalar, U256};
use rand::{CryptoRng, RngCore};

use super::{Group, Profile};
use crate::error::{Error, Result};

/// secp256k1, 256-bit prime order.
///
/// Points use 33-byte compressed SEC1 encoding. The identity, which SEC1
/// writes as a single zero byte, is encoded as 33 zero bytes to keep the
/// width fixed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Secp256k1;

const ORDER: [u8; 32] = [
    0xFF, 0xFF, 0xFF, 0xFF, 0xFF, 0xFF, 0xFF, 0xFF, 0xFF, 0xFF, 0xFF, 0xFF, 0xFF, 0xFF, 0xFF, 0xFE,
    0xBA, 0xAE, 0xDC, 0xE6, 0xAF, 0x48, 0xA0, 0x3B, 0xBF, 0xD2, 0x5E, 0x8C, 0xD0, 0x36, 0x41, 0x41,
];

impl Group for Secp256k1 {
    type Scalar = Scalar;
    type Element = ProjectivePoint;

    const PROFILE: Profile = Profile::Production;
    const SCALAR_LEN: usize = 32;
    const POINT_LEN: usize = 33;

    fn order_be() -> Vec<u8> {
        ORDER.to_vec()
    }

    fn generator() -> ProjectivePoint {
        ProjectivePoint::GENERATOR
    }

    fn identity() -> ProjectivePoint {
        ProjectivePoint::IDENTITY
    }

    fn scalar_from_u64(v: u64) -> Scalar {
        Scalar::from(v)
    }

    fn random_scalar<R: RngCore + CryptoRng + ?Sized>(rng: &mut R) -> Scalar {
        let mut wide = [0u8; 32];
        loop {
            rng.fill_bytes(&mut wide);
            let candidate = Scalar::from_repr(FieldBytes::from(wide));
            if candidate.is_some().into() {
                return candidate.unwrap();
            }
        }
    }

    fn reduce_digest(digest: &[u8; 32]) -> Scalar {
        <Scalar as Reduce<U256>>::reduce_bytes(&FieldBytes::from(*digest))
    }

    fn scalar_to_bytes(s: &Scalar) -> Vec<u8> {
        s.to_bytes().to_vec()
    }

    fn scalar_from_bytes(bytes: &[u8]) -> Result<Scalar> {
        let arr: [u8; 32] = bytes
            .try_into()
            .map_err(|_| Error::InvalidEncoding("scalar must be 32 bytes"))?;
        Option::from(Scalar::from_repr(FieldBytes::from(arr)))
            .ok_or(Error::InvalidEncoding("scalar not below group order"))
    }

    fn point_to_bytes(p: &ProjectivePoint) -> Vec<u8> {
        if bool::from(p.is_identity()) {
            return vec![0u8; 33];
        }
        p.to_affine().to_encoded_point(true).as_bytes().to_vec()
    }

    fn point_from_bytes(bytes: &[u8]) -> Result<ProjectivePoint> {
        if bytes.len() != 33 {
            return Err(Error::InvalidEncoding("point must be 33 bytes"));
        }
        if bytes.iter().all(|&b| b == 0) {
            return Ok(ProjectivePoint::IDENTITY);
        }
        if bytes[0] != 0x02 && bytes[0] != 0x03 {
            return Err(Error::InvalidEncoding("bad compressed point tag"));
        }
        let encoded = EncodedPoint::from_bytes(bytes)
            .map_err(|_| Error::InvalidEncoding("malformed SEC1 point"))?;
        Option::from(ProjectivePoint::from_encoded_point(&encoded))
            .ok_or(Error::InvalidEncoding("point not on curve"))
    }

    fn mul_base(s: &Scalar) -> ProjectivePoint {
        ProjectivePoint::mul_by_generator(s)
    }
}
