//! Operation-counting wrapper around any [`Group`].
//!
//! `Counting<G>` behaves exactly like `G` but tallies point multiplications,
//! point additions (subtraction included) and hash-to-scalar calls in
//! thread-local counters. The cost model uses it to measure the protocol
//! code and cross-check its analytic operation table.

use std::cell::Cell;
use std::marker::PhantomData;
use std::ops::{Add, Mul, Neg, Sub};

use rand::{CryptoRng, RngCore};

use super::{Group, Profile};
use crate::error::Result;

thread_local! {
    static MULS: Cell<u64> = const { Cell::new(0) };
    static ADDS: Cell<u64> = const { Cell::new(0) };
    static HASHES: Cell<u64> = const { Cell::new(0) };
}

/// Snapshot of the counters on the current thread.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub point_mul: u64,
    pub point_add: u64,
    pub hash: u64,
}

pub fn reset() {
    MULS.with(|c| c.set(0));
    ADDS.with(|c| c.set(0));
    HASHES.with(|c| c.set(0));
}

pub fn tally() -> Tally {
    Tally {
        point_mul: MULS.with(Cell::get),
        point_add: ADDS.with(Cell::get),
        hash: HASHES.with(Cell::get),
    }
}

/// Run `f` with fresh counters and return what it consumed.
pub fn measure<T>(f: impl FnOnce() -> T) -> (T, Tally) {
    reset();
    let out = f();
    (out, tally())
}

fn bump(cell: &'static std::thread::LocalKey<Cell<u64>>) {
    cell.with(|c| c.set(c.get() + 1));
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Counting<G>(PhantomData<G>);

#[derive(Clone, Copy, Debug)]
pub struct Counted<G: Group>(pub G::Element);

impl<G: Group> PartialEq for Counted<G> {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

impl<G: Group> Eq for Counted<G> {}

impl<G: Group> Add for Counted<G> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        bump(&ADDS);
        Counted(self.0 + rhs.0)
    }
}

impl<G: Group> Sub for Counted<G> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        bump(&ADDS);
        Counted(self.0 - rhs.0)
    }
}

impl<G: Group> Neg for Counted<G> {
    type Output = Self;
    fn neg(self) -> Self {
        Counted(-self.0)
    }
}

impl<G: Group> Mul<G::Scalar> for Counted<G> {
    type Output = Self;
    fn mul(self, rhs: G::Scalar) -> Self {
        bump(&MULS);
        Counted(self.0 * rhs)
    }
}

impl<G: Group> Group for Counting<G> {
    type Scalar = G::Scalar;
    type Element = Counted<G>;

    const PROFILE: Profile = G::PROFILE;
    const SCALAR_LEN: usize = G::SCALAR_LEN;
    const POINT_LEN: usize = G::POINT_LEN;

    fn order_be() -> Vec<u8> {
        G::order_be()
    }

    fn generator() -> Counted<G> {
        Counted(G::generator())
    }

    fn identity() -> Counted<G> {
        Counted(G::identity())
    }

    fn scalar_from_u64(v: u64) -> G::Scalar {
        G::scalar_from_u64(v)
    }

    fn random_scalar<R: RngCore + CryptoRng + ?Sized>(rng: &mut R) -> G::Scalar {
        G::random_scalar(rng)
    }

    fn reduce_digest(digest: &[u8; 32]) -> G::Scalar {
        bump(&HASHES);
        G::reduce_digest(digest)
    }

    fn scalar_to_bytes(s: &G::Scalar) -> Vec<u8> {
        G::scalar_to_bytes(s)
    }

    fn scalar_from_bytes(bytes: &[u8]) -> Result<G::Scalar> {
        G::scalar_from_bytes(bytes)
    }

    fn point_to_bytes(p: &Counted<G>) -> Vec<u8> {
        G::point_to_bytes(&p.0)
    }

    fn point_from_bytes(bytes: &[u8]) -> Result<Counted<G>> {
        G::point_from_bytes(bytes).map(Counted)
    }

    fn mul_base(s: &G::Scalar) -> Counted<G> {
        bump(&MULS);
        Counted(G::mul_base(s))
    }
}
