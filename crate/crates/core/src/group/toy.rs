//! A brute-forceable group: the order-1019 subgroup of quadratic residues in
//! `Z*_2039` (2039 = 2·1019 + 1), generated by 4.
//!
//! Elements are stored as residues mod 2039; the group law is modular
//! multiplication, written additively through the [`Group`] trait.

use std::ops::{Add, Mul, Neg, Sub};

use rand::{CryptoRng, Rng, RngCore};
use zeroize::DefaultIsZeroes;

use super::{Group, Profile};
use crate::error::{Error, Result};

pub const TOY_ORDER: u32 = 1019;
pub const TOY_MODULUS: u32 = 2039;
pub const TOY_GENERATOR: u32 = 4;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ToyGroup;

/// Integer in `[0, 1019)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ToyScalar(u32);

/// Quadratic residue mod 2039.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ToyElement(u32);

impl DefaultIsZeroes for ToyScalar {}

impl ToyScalar {
    pub fn new(v: u32) -> Self {
        ToyScalar(v % TOY_ORDER)
    }

    pub fn value(self) -> u32 {
        self.0
    }

    /// Every scalar, in increasing order.
    pub fn all() -> impl Iterator<Item = ToyScalar> {
        (0..TOY_ORDER).map(ToyScalar)
    }
}

impl ToyElement {
    /// The residue representing this element.
    pub fn residue(self) -> u32 {
        self.0
    }

    pub fn from_residue(r: u32) -> Option<Self> {
        if r == 0 || r >= TOY_MODULUS || pow_mod(r, TOY_ORDER, TOY_MODULUS) != 1 {
            return None;
        }
        Some(ToyElement(r))
    }

    /// All 1019 members of the subgroup, in generator-power order.
    pub fn all() -> impl Iterator<Item = ToyElement> {
        ToyScalar::all().map(|s| ToyGroup::mul_base(&s))
    }
}

fn pow_mod(base: u32, mut exp: u32, modulus: u32) -> u32 {
    let m = modulus as u64;
    let mut b = base as u64 % m;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u32
}

impl Add for ToyScalar {
    type Output = ToyScalar;
    fn add(self, rhs: ToyScalar) -> ToyScalar {
        ToyScalar((self.0 + rhs.0) % TOY_ORDER)
    }
}

impl Sub for ToyScalar {
    type Output = ToyScalar;
    fn sub(self, rhs: ToyScalar) -> ToyScalar {
        ToyScalar((self.0 + TOY_ORDER - rhs.0) % TOY_ORDER)
    }
}

impl Mul for ToyScalar {
    type Output = ToyScalar;
    fn mul(self, rhs: ToyScalar) -> ToyScalar {
        ToyScalar(self.0 * rhs.0 % TOY_ORDER)
    }
}

impl Neg for ToyScalar {
    type Output = ToyScalar;
    fn neg(self) -> ToyScalar {
        ToyScalar((TOY_ORDER - self.0) % TOY_ORDER)
    }
}

impl Add for ToyElement {
    type Output = ToyElement;
    fn add(self, rhs: ToyElement) -> ToyElement {
        ToyElement(self.0 * rhs.0 % TOY_MODULUS)
    }
}

impl Neg for ToyElement {
    type Output = ToyElement;
    fn neg(self) -> ToyElement {
        // x^(q-1) = x^-1 inside the order-q subgroup
        ToyElement(pow_mod(self.0, TOY_ORDER - 1, TOY_MODULUS))
    }
}

impl Sub for ToyElement {
    type Output = ToyElement;
    fn sub(self, rhs: ToyElement) -> ToyElement {
        self + (-rhs)
    }
}

impl Mul<ToyScalar> for ToyElement {
    type Output = ToyElement;
    fn mul(self, rhs: ToyScalar) -> ToyElement {
        ToyElement(pow_mod(self.0, rhs.0, TOY_MODULUS))
    }
}

impl Group for ToyGroup {
    type Scalar = ToyScalar;
    type Element = ToyElement;

    const PROFILE: Profile = Profile::Toy;
    const SCALAR_LEN: usize = 2;
    const POINT_LEN: usize = 2;

    fn order_be() -> Vec<u8> {
        (TOY_ORDER as u16).to_be_bytes().to_vec()
    }

    fn generator() -> ToyElement {
        ToyElement(TOY_GENERATOR)
    }

    fn identity() -> ToyElement {
        ToyElement(1)
    }

    fn scalar_from_u64(v: u64) -> ToyScalar {
        ToyScalar((v % TOY_ORDER as u64) as u32)
    }

    fn random_scalar<R: RngCore + CryptoRng + ?Sized>(rng: &mut R) -> ToyScalar {
        ToyScalar(rng.gen_range(0..TOY_ORDER))
    }

    fn reduce_digest(digest: &[u8; 32]) -> ToyScalar {
        let r = digest
            .iter()
            .fold(0u32, |acc, &b| ((acc << 8) | b as u32) % TOY_ORDER);
        ToyScalar(r)
    }

    fn scalar_to_bytes(s: &ToyScalar) -> Vec<u8> {
        (s.0 as u16).to_be_bytes().to_vec()
    }

    fn scalar_from_bytes(bytes: &[u8]) -> Result<ToyScalar> {
        let arr: [u8; 2] = bytes
            .try_into()
            .map_err(|_| Error::InvalidEncoding("toy scalar must be 2 bytes"))?;
        let v = u16::from_be_bytes(arr) as u32;
        if v >= TOY_ORDER {
            return Err(Error::InvalidEncoding("toy scalar not below group order"));
        }
        Ok(ToyScalar(v))
    }

    fn point_to_bytes(p: &ToyElement) -> Vec<u8> {
        (p.0 as u16).to_be_bytes().to_vec()
    }

    fn point_from_bytes(bytes: &[u8]) -> Result<ToyElement> {
        let arr: [u8; 2] = bytes
            .try_into()
            .map_err(|_| Error::InvalidEncoding("toy point must be 2 bytes"))?;
        ToyElement::from_residue(u16::from_be_bytes(arr) as u32)
            .ok_or(Error::InvalidEncoding("not a member of the toy subgroup"))
    }
}
