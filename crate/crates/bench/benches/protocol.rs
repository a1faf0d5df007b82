use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use noins_core::ca::{issue_noins, issue_simpl, CaKeyPair, SanitizationKeyPair};
use noins_core::cert::Metadata;
use noins_core::costmodel::{compare, Scenario};
use noins_core::group::{random_nonzero_scalar, Group, Secp256k1};
use noins_core::linkage::{derive_slv, LinkageContext, LinkageValue};
use noins_core::vehicle::{gen_short_term, sign_v2x, CaCredential, GenerationPolicy};
use noins_core::verification::{verify_simpl_receiver, verify_v2x, TrustStore};
use noins_core::wire::Widths;

type G = Secp256k1;

fn setup(rng: &mut ChaCha20Rng) -> (CaKeyPair<G>, SanitizationKeyPair<G>, CaCredential<G>, LinkageContext) {
    let ca = CaKeyPair::generate(rng);
    let san = SanitizationKeyPair::generate("cohort-0", u32::MAX, rng);
    let x = random_nonzero_scalar::<G, _>(rng);
    let meta = Metadata::new(1, 0, u32::MAX, 0x20).unwrap();
    let is = issue_noins(&G::mul_base(&x), meta, LinkageValue::random(rng), &ca, &san, rng).unwrap();
    let cred = CaCredential::new(is, x, ca.public, san.public).unwrap();
    (ca, san, cred, LinkageContext::new(*b"CA01").unwrap())
}

fn roles(c: &mut Criterion) {
    let mut rng = ChaCha20Rng::seed_from_u64(1);
    let (ca, san, cred, ctx) = setup(&mut rng);
    let meta = cred.issuance.cert.meta;
    let cocoon = G::mul_base(&random_nonzero_scalar::<G, _>(&mut rng));
    let policy = GenerationPolicy::default();
    let trust = TrustStore::new(ca.public).with_san_key(san.public, "cohort-0", u32::MAX);

    c.bench_function("ca/issue_noins", |b| {
        b.iter(|| issue_noins(black_box(&cocoon), meta, LinkageValue([7; 16]), &ca, &san, &mut rng).unwrap())
    });
    c.bench_function("ca/issue_simpl", |b| {
        b.iter(|| issue_simpl(black_box(&cocoon), meta, noins_core::linkage::ShortLinkageValue([7; 9]), &ca, &mut rng).unwrap())
    });
    c.bench_function("vehicle/gen_short_term", |b| {
        b.iter(|| gen_short_term(black_box(&cred), 17, &policy, &ctx, &mut rng).unwrap())
    });
    let bundle = gen_short_term(&cred, 1, &policy, &ctx, &mut rng).unwrap();
    let msg = sign_v2x(&bundle, b"brake warning", &mut rng);
    c.bench_function("vehicle/sign_v2x", |b| b.iter(|| sign_v2x(black_box(&bundle), b"brake warning", &mut rng)));
    c.bench_function("receiver/verify_v2x", |b| b.iter(|| verify_v2x(black_box(&msg), &trust, 100).unwrap()));

    let simpl = issue_simpl(&cocoon, meta, noins_core::linkage::ShortLinkageValue([7; 9]), &ca, &mut rng).unwrap();
    c.bench_function("receiver/simpl_reconstruct", |b| b.iter(|| verify_simpl_receiver(black_box(&simpl.cert), &ca.public)));
}

fn linkage(c: &mut Criterion) {
    let ctx = LinkageContext::new(*b"CA01").unwrap();
    let lv = LinkageValue([3; 16]);
    c.bench_function("linkage/derive_slv", |b| b.iter(|| derive_slv(black_box(&lv), &ctx, 42).unwrap()));
}

fn cost_model(c: &mut Criterion) {
    let mut group = c.benchmark_group("costmodel/compare");
    for name in ["small", "large"] {
        let scenario = Scenario::by_name(name).unwrap();
        let widths = Widths::of::<G>();
        group.bench_with_input(BenchmarkId::from_parameter(name), &scenario, |b, s| {
            b.iter(|| compare(&[500, 1000, 3000], 50, s, &widths).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, roles, linkage, cost_model);
criterion_main!(benches);
