//! Exhaustive checks in the toy group, runnable from the command line.
//!
//! Each check compares protocol code against plain modular arithmetic on
//! residues mod 2039 or against full enumeration of `Z_q`.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use crate::adversary::{toy_forgery_census, toy_immutability_census, World};
use crate::cert::{meta_hash, sanitizable_hash};
use crate::group::{Group, ToyElement, ToyGroup, ToyScalar, TOY_GENERATOR, TOY_MODULUS, TOY_ORDER};
use crate::vehicle::{prove_rerandomization, CaCredential, ShortTermBundle};
use crate::verification::{reconstruct_pkv, verify_proof};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelftestReport {
    pub seed: u64,
    pub checks: Vec<Check>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn pow_mod(base: u64, mut exp: u64) -> u64 {
    let m = TOY_MODULUS as u64;
    let (mut acc, mut b) = (1u64, base % m);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc
}

/// `rcv_j · pkc^h1 · pks_j^h2 mod p` on raw residues.
pub fn schoolbook_pkv(bundle: &ShortTermBundle<ToyGroup>, ca_public: &ToyElement) -> u64 {
    let h1 = meta_hash::<ToyGroup>(&bundle.cert.meta, ca_public).value() as u64;
    let h2 = sanitizable_hash::<ToyGroup>(&bundle.cert.rcv, &bundle.cert.slv.0, &bundle.san_public).value() as u64;
    let m = TOY_MODULUS as u64;
    bundle.cert.rcv.residue() as u64 * pow_mod(ca_public.residue() as u64, h1) % m
        * pow_mod(bundle.san_public.residue() as u64, h2)
        % m
}

/// `g^skv mod p` on raw residues.
pub fn schoolbook_public(secret: &ToyScalar) -> u64 {
    pow_mod(TOY_GENERATOR as u64, secret.value() as u64)
}

/// Key reconciliation for `credentials` random credentials and every `j`.
fn reconciliation(world: &mut World<ToyGroup>, credentials: usize, rng: &mut ChaCha20Rng) -> Check {
    let mut checked = 0u64;
    let mut mismatches = 0u64;
    for _ in 0..credentials {
        let cred = world.enroll(rng);
        for j in 1..=world.policy.n_cs {
            let b = world.bundle(&cred, j, rng);
            let receiver = reconstruct_pkv::<ToyGroup>(&b.cert, &b.san_public, &cred.ca_public);
            let oracle = schoolbook_pkv(&b, &cred.ca_public);
            checked += 1;
            if schoolbook_public(&b.secret) != oracle || receiver.residue() as u64 != oracle {
                mismatches += 1;
            }
        }
    }
    Check {
        name: "key-reconciliation".into(),
        passed: mismatches == 0,
        detail: format!("{checked} pseudonyms, {mismatches} mismatches against residue arithmetic"),
    }
}

/// Fraction of pseudonyms whose key would reconcile if the unsanitized
/// `sig2` were used in place of `sig2_j`.
fn literal_composition(cred: &CaCredential<ToyGroup>, bundles: &[ShortTermBundle<ToyGroup>]) -> (usize, usize) {
    let is = &cred.issuance;
    let mut fail = 0;
    for b in bundles {
        let r3 = b.secret - cred.cocoon_secret - is.meta_sig - b.sanitized_signature(cred);
        let literal = cred.cocoon_secret + is.meta_sig + is.san_sig + r3;
        if schoolbook_public(&literal) != schoolbook_pkv(b, &cred.ca_public) {
            fail += 1;
        }
    }
    (fail, bundles.len())
}

/// Every `(com, resp)` pair for a fixed `Δ`; exactly `q` are accepted and
/// each has `resp = log(com) + cha·ρ`.
fn proof_acceptance_set(rng: &mut ChaCha20Rng) -> Check {
    let log: HashMap<ToyElement, u64> = ToyScalar::all().map(|s| (ToyGroup::mul_base(&s), s.value() as u64)).collect();
    let pks = ToyGroup::mul_base(&ToyScalar::new(rng.gen_range(1..TOY_ORDER)));
    let rho = rng.gen_range(1..TOY_ORDER);
    let pks_j = pks + ToyGroup::mul_base(&ToyScalar::new(rho));
    let delta = pks_j - pks;
    let mut accepted = 0u64;
    let mut wrong = 0u64;
    for com in ToyElement::all() {
        let cha = crate::vehicle::proof_challenge::<ToyGroup>(&com, &delta).value() as u64;
        let predicted = ((log[&com] + cha * rho as u64) % TOY_ORDER as u64) as u32;
        for resp in ToyScalar::all() {
            let ok = verify_proof::<ToyGroup>(&com, &resp, &pks_j, &pks);
            accepted += ok as u64;
            wrong += (ok != (resp.value() == predicted)) as u64;
        }
    }
    let (com, resp) = prove_rerandomization::<ToyGroup>(&ToyScalar::new(rho), &delta, &ToyScalar::new(rng.gen_range(1..TOY_ORDER)));
    let complete = verify_proof::<ToyGroup>(&com, &resp, &pks_j, &pks);
    Check {
        name: "proof-acceptance-set".into(),
        passed: accepted == TOY_ORDER as u64 && wrong == 0 && complete,
        detail: format!("{accepted} of {} pairs accepted, {wrong} disagree with the discrete-log oracle", TOY_ORDER as u64 * TOY_ORDER as u64),
    }
}

/// Run every toy-group check.
pub fn run(seed: u64, credentials: usize) -> SelftestReport {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut world = World::<ToyGroup>::new(&mut rng);
    let mut checks = vec![reconciliation(&mut world, credentials, &mut rng)];

    let cred = world.enroll(&mut rng);
    let bundles: Vec<_> = (1..=world.policy.n_cs).map(|j| world.bundle(&cred, j, &mut rng)).collect();
    let (fail, total) = literal_composition(&cred, &bundles);
    checks.push(Check {
        name: "unsanitized-key-composition-rejected".into(),
        // a match needs h2·pks == h2_j·pks_j, which happens with probability about 1/q
        passed: fail + 2 >= total,
        detail: format!("{fail} of {total} pseudonyms fail to reconcile with sig2 in place of sig2_j"),
    });

    checks.push(proof_acceptance_set(&mut rng));

    let target = world.target_meta();
    match toy_immutability_census(seed, target) {
        Ok(c) => checks.push(Check {
            name: "meta-signature-census".into(),
            passed: c.accepted_honest == [c.honest_sig1] && c.accepted_target == [c.predicted_target],
            detail: format!(
                "{} candidates; honest meta accepts {:?}, target meta accepts {:?} (needs the CA secret)",
                c.candidates, c.accepted_honest, c.accepted_target
            ),
        }),
        Err(e) => checks.push(Check {
            name: "meta-signature-census".into(),
            passed: false,
            detail: e.to_string(),
        }),
    }

    let f = toy_forgery_census(seed);
    checks.push(Check {
        name: "forgery-census".into(),
        passed: f.unique_solutions == f.rcv_values && f.solutions_match_oracle,
        detail: format!(
            "{} pairs; every rcv has one key, equal to the secret-dependent oracle; {} chance hits by secret-free guesses",
            f.pairs_checked, f.outsider_hits
        ),
    });

    SelftestReport { seed, checks }
}
