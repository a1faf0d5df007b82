//! `noins`: CA, vehicle and receiver workflows over files in a store
//! directory. Files stand in for the RSU relay.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use serde::Serialize;
use serde_json::{json, Value};

use noins_core::adversary::{play_all, GameBudget, GameTranscript};
use noins_core::butterfly::{derive_cocoon_private, CaterpillarKeyPair};
use noins_core::ca::{unwrap_i2v, CertificateAuthority, NoinsIssuance};
use noins_core::cert::Metadata;
use noins_core::costmodel::{compare, CostReport, Scenario};
use noins_core::group::{hash_to_bytes, Group, Profile, Secp256k1, ToyGroup};
use noins_core::linkage::{ShortLinkageValue, SLV_LEN};
use noins_core::selftest;
use noins_core::store::{from_json, peek_profile, point_hex, to_json, CaFile, RequestFile, TrustFile, VehicleFile};
use noins_core::vehicle::{sign_v2x, GenerationPolicy, ShortTermRandomness, V2xAuthMessage};
use noins_core::verification::{verify_v2x, RejectReason};
use noins_core::wire::{I2vBatch, WireObject, Widths};
use noins_core::Error;

const CA_FILE: &str = "ca.json";
const TRUST_FILE: &str = "trust.json";
const VEHICLE_FILE: &str = "vehicle.json";
const REQUEST_FILE: &str = "request.json";

#[derive(Parser, Debug)]
#[command(name = "noins", version, about = "Non-interactive pseudonym certificates for V2X")]
struct Cli {
    /// Group profile; defaults to the one recorded in the store files.
    #[arg(long, global = true)]
    profile: Option<ProfileArg>,
    /// Seed all randomness for reproducible output.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Directory holding key and message files.
    #[arg(long, global = true, env = "NOINS_STORE_DIR", default_value = ".")]
    store: PathBuf,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ProfileArg {
    Production,
    Toy,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Table,
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Certificate authority commands
    #[command(subcommand)]
    Ca(CaCommand),
    /// Vehicle-side commands
    #[command(subcommand)]
    Vehicle(VehicleCommand),
    /// Verify a signed V2X message.
    Verify(VerifyArgs),
    /// Communication and computation cost of explicit, SIMPL and NOINS.
    Compare(CompareArgs),
    /// Exhaustive toy-group checks, and optionally the security games.
    Selftest(SelftestArgs),
}

#[derive(Subcommand, Debug)]
enum CaCommand {
    /// Create CA and cohort keys and the receivers' trust file.
    Init(CaInitArgs),
    /// Issue credentials for a vehicle request.
    Issue(CaIssueArgs),
    /// Find which credential and index produced a short-term linkage value.
    Attribute(AttributeArgs),
}

#[derive(Args, Debug)]
struct CaInitArgs {
    /// CA identity, at most 12 bytes.
    #[arg(long, default_value = "CA01")]
    id: String,
    #[arg(long, default_value_t = 1)]
    issuer: u32,
    #[arg(long, default_value_t = 0)]
    valid_from: u32,
    #[arg(long, default_value_t = u32::MAX)]
    valid_to: u32,
    #[arg(long, default_value_t = 0x20)]
    psid: u16,
    /// Last second at which cohort sanitization keys are trusted.
    #[arg(long, default_value_t = u32::MAX)]
    cohort_expiry: u32,
    /// Credentials per cohort; one cohort when omitted.
    #[arg(long)]
    cohort_size: Option<u64>,
}

#[derive(Args, Debug)]
struct CaIssueArgs {
    #[arg(long)]
    request: Option<PathBuf>,
    /// Credentials per I2V batch file.
    #[arg(long, default_value_t = 20)]
    batch: usize,
}

#[derive(Args, Debug)]
struct AttributeArgs {
    /// Observed slv, hex.
    #[arg(long)]
    slv: String,
    #[arg(long, default_value_t = 50)]
    n_cs: u32,
}

#[derive(Subcommand, Debug)]
enum VehicleCommand {
    /// Create a caterpillar key pair and a certificate request.
    Keygen(KeygenArgs),
    /// Decrypt and check I2V messages.
    Accept(AcceptArgs),
    /// Generate short-term certificates.
    Gen(GenArgs),
    /// Sign a message with a generated pseudonym.
    Sign(SignArgs),
}

#[derive(Args, Debug)]
struct KeygenArgs {
    /// Cocoon keys to request.
    #[arg(long, default_value_t = 20)]
    count: u32,
    /// Short-term certificates per credential.
    #[arg(long, default_value_t = 50)]
    n_cs: u32,
}

#[derive(Args, Debug)]
struct AcceptArgs {
    /// I2V batch files; every `i2v-*.bin` in the store when omitted.
    #[arg(long, num_args = 1..)]
    i2v: Vec<PathBuf>,
}

#[derive(Args, Debug)]
struct GenArgs {
    /// Credential number, in acceptance order.
    #[arg(long, default_value_t = 0)]
    cred: usize,
    #[arg(long, conflicts_with = "all", required_unless_present = "all")]
    j: Option<u32>,
    /// Every index not yet generated.
    #[arg(long)]
    all: bool,
}

#[derive(Args, Debug)]
struct SignArgs {
    #[arg(long, default_value_t = 0)]
    cred: usize,
    #[arg(long)]
    j: u32,
    #[arg(long)]
    msg: String,
    /// Output file; `msg-<cred>-<j>.bin` in the store when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    bundle: PathBuf,
    #[arg(long)]
    trust: Option<PathBuf>,
    /// Check the signature against this message instead of the carried one.
    #[arg(long)]
    msg: Option<String>,
    /// Verification time, seconds; the system clock when omitted.
    #[arg(long)]
    now: Option<u32>,
}

#[derive(Args, Debug)]
struct CompareArgs {
    #[arg(long, value_delimiter = ',', default_value = "500,1000,3000")]
    n_c: Vec<u64>,
    #[arg(long, default_value_t = 50)]
    n_cs: u64,
    #[arg(long, default_value = "small")]
    scenario: String,
    /// Account explicit certificates with RSA-2048 signatures.
    #[arg(long)]
    rsa_sizes: bool,
}

#[derive(Args, Debug)]
struct SelftestArgs {
    /// Also run the security games on the production group.
    #[arg(long)]
    games: bool,
    /// Credentials in the key-reconciliation check.
    #[arg(long, default_value_t = 100)]
    credentials: usize,
    #[arg(long, default_value_t = 1_000)]
    trials: u64,
    #[arg(long, default_value_t = 10_000)]
    linkability_trials: u64,
}

/// Failure classes and their exit codes.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Crypto(String),
    Rejected(RejectReason),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Crypto(_) | Failure::Rejected(_) => 2,
            Failure::Io(_) => 3,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameter(_)
            | Error::InvalidValidity { .. }
            | Error::IndexOutOfRange { .. }
            | Error::IdTooLong(_)
            | Error::InvalidTruncation(_)
            | Error::NonDivisible { .. }
            | Error::ProfileMismatch { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Crypto(e.to_string()),
        }
    }
}

type Outcome = Result<Value, Failure>;

struct Ctx {
    store: PathBuf,
    seed: Option<u64>,
    format: Format,
}

impl Ctx {
    fn path(&self, name: &str) -> PathBuf {
        self.store.join(name)
    }

    /// Independent stream per command so seeded runs never share randomness
    /// between roles.
    fn rng(&self, label: &str) -> ChaCha20Rng {
        match self.seed {
            Some(seed) => ChaCha20Rng::from_seed(hash_to_bytes(b"cli-rng", &[&seed.to_be_bytes(), label.as_bytes()])),
            None => ChaCha20Rng::from_entropy(),
        }
    }
}

fn read(path: &Path) -> Result<Vec<u8>, Failure> {
    fs::read(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn write(path: &Path, bytes: impl AsRef<[u8]>) -> Result<(), Failure> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).map_err(|e| Failure::Io(format!("{}: {e}", dir.display())))?;
    }
    fs::write(path, bytes).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn load<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    Ok(from_json(&read_text(path)?)?)
}

fn now_secs() -> u32 {
    let s = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
    u32::try_from(s).unwrap_or(u32::MAX)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let ctx = Ctx {
        store: cli.store.clone(),
        seed: cli.seed,
        format: cli.format,
    };
    let result = resolve_profile(&cli).and_then(|profile| match profile {
        Profile::Production => dispatch::<Secp256k1>(&cli.command, &ctx),
        Profile::Toy => dispatch::<ToyGroup>(&cli.command, &ctx),
    });
    match result {
        Ok(value) => {
            emit(&ctx, &value);
            ExitCode::SUCCESS
        }
        Err(f) => {
            report_failure(&ctx, &f);
            ExitCode::from(f.code())
        }
    }
}

/// Explicit `--profile`, else the profile of the file the command reads
/// first, else production.
fn resolve_profile(cli: &Cli) -> Result<Profile, Failure> {
    if let Some(p) = cli.profile {
        return Ok(match p {
            ProfileArg::Production => Profile::Production,
            ProfileArg::Toy => Profile::Toy,
        });
    }
    let file = match &cli.command {
        Command::Ca(CaCommand::Issue(_) | CaCommand::Attribute(_)) => Some(cli.store.join(CA_FILE)),
        Command::Vehicle(VehicleCommand::Keygen(_)) => None,
        Command::Vehicle(_) => Some(cli.store.join(VEHICLE_FILE)),
        Command::Verify(a) => Some(a.trust.clone().unwrap_or_else(|| cli.store.join(TRUST_FILE))),
        _ => None,
    };
    match file {
        Some(path) if path.exists() => Ok(peek_profile(&read_text(&path)?)?),
        _ => Ok(Profile::Production),
    }
}

fn dispatch<G: Group>(cmd: &Command, ctx: &Ctx) -> Outcome {
    match cmd {
        Command::Ca(CaCommand::Init(a)) => ca_init::<G>(a, ctx),
        Command::Ca(CaCommand::Issue(a)) => ca_issue::<G>(a, ctx),
        Command::Ca(CaCommand::Attribute(a)) => ca_attribute::<G>(a, ctx),
        Command::Vehicle(VehicleCommand::Keygen(a)) => vehicle_keygen::<G>(a, ctx),
        Command::Vehicle(VehicleCommand::Accept(a)) => vehicle_accept::<G>(a, ctx),
        Command::Vehicle(VehicleCommand::Gen(a)) => vehicle_gen::<G>(a, ctx),
        Command::Vehicle(VehicleCommand::Sign(a)) => vehicle_sign::<G>(a, ctx),
        Command::Verify(a) => verify::<G>(a, ctx),
        Command::Compare(a) => compare_cmd::<G>(a, ctx),
        Command::Selftest(a) => selftest_cmd(a, ctx),
    }
}

fn ca_init<G: Group>(a: &CaInitArgs, ctx: &Ctx) -> Outcome {
    let mut rng = ctx.rng("ca init");
    let meta = Metadata::new(a.issuer, a.valid_from, a.valid_to, a.psid)?;
    let mut ca = CertificateAuthority::<G>::new(a.id.as_bytes(), a.cohort_expiry, &mut rng)?;
    ca.cohort_size = a.cohort_size;
    write(&ctx.path(CA_FILE), to_json(&CaFile::from_authority(&ca, meta)))?;
    write(&ctx.path(TRUST_FILE), to_json(&TrustFile::from_authority(&ca)))?;
    Ok(json!({
        "profile": G::PROFILE,
        "ca_public": point_hex::<G>(&ca.keys.public),
        "cohorts": ca.cohorts.iter().map(|c| json!({"cohort_id": c.cohort_id, "public": point_hex::<G>(&c.public)})).collect::<Vec<_>>(),
    }))
}

fn ca_issue<G: Group>(a: &CaIssueArgs, ctx: &Ctx) -> Outcome {
    if a.batch == 0 || a.batch > u16::MAX as usize {
        return Err(Failure::Usage("--batch must be within 1..=65535".into()));
    }
    let caf: CaFile = load(&ctx.path(CA_FILE))?;
    let mut ca = caf.to_authority::<G>()?;
    let req: RequestFile = load(&a.request.clone().unwrap_or_else(|| ctx.path(REQUEST_FILE)))?;
    let cocoons = req.cocoons::<G>()?;
    let mut rng = ctx.rng(&format!("ca issue {}", req.first_index));
    let first_serial = ca.registry().len();
    let mut files = Vec::new();
    for (k, chunk) in cocoons.chunks(a.batch).enumerate() {
        let messages = ca.issue_noins_batch(chunk, caf.meta, &mut rng)?;
        let name = format!("i2v-{:05}-{:03}.bin", req.first_index, k);
        write(&ctx.path(&name), I2vBatch { messages }.encode())?;
        files.push(name);
    }
    write(&ctx.path(CA_FILE), to_json(&CaFile::from_authority(&ca, caf.meta)))?;
    write(&ctx.path(TRUST_FILE), to_json(&TrustFile::from_authority(&ca)))?;
    Ok(json!({
        "issued": cocoons.len(),
        "serials": [first_serial, ca.registry().len()],
        "files": files,
    }))
}

fn parse_slv(s: &str) -> Result<ShortLinkageValue, Failure> {
    let bytes = hex::decode(s).map_err(|e| Failure::Usage(format!("--slv: {e}")))?;
    let arr: [u8; SLV_LEN] = bytes
        .try_into()
        .map_err(|_| Failure::Usage(format!("--slv must be {SLV_LEN} bytes")))?;
    Ok(ShortLinkageValue(arr))
}

fn ca_attribute<G: Group>(a: &AttributeArgs, ctx: &Ctx) -> Outcome {
    let slv = parse_slv(&a.slv)?;
    let ca = load::<CaFile>(&ctx.path(CA_FILE))?.to_authority::<G>()?;
    match ca.attribute(&slv, a.n_cs) {
        Some(at) => Ok(serde_json::to_value(at).expect("attribution serializes")),
        None => Err(Failure::Crypto("no issued credential produces this slv".into())),
    }
}

fn vehicle_keygen<G: Group>(a: &KeygenArgs, ctx: &Ctx) -> Outcome {
    let mut rng = ctx.rng("vehicle keygen");
    let policy = GenerationPolicy::with_n_cs(a.n_cs)?;
    let cat = CaterpillarKeyPair::<G>::generate(&mut rng);
    let mut vf = VehicleFile::new(&cat, &[], policy);
    let req = vf.request::<G>(a.count)?;
    write(&ctx.path(VEHICLE_FILE), to_json(&vf))?;
    write(&ctx.path(REQUEST_FILE), to_json(&req))?;
    Ok(json!({
        "profile": G::PROFILE,
        "caterpillar_public": req.caterpillar_public,
        "requested": [req.first_index, req.first_index + req.count],
    }))
}

fn i2v_files(a: &AcceptArgs, ctx: &Ctx) -> Result<Vec<PathBuf>, Failure> {
    if !a.i2v.is_empty() {
        return Ok(a.i2v.clone());
    }
    let dir = fs::read_dir(&ctx.store).map_err(|e| Failure::Io(format!("{}: {e}", ctx.store.display())))?;
    let mut files: Vec<PathBuf> = dir
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| {
            p.file_name()
                .and_then(|n| n.to_str())
                .is_some_and(|n| n.starts_with("i2v-") && n.ends_with(".bin"))
        })
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(Failure::Io(format!("no i2v-*.bin files in {}", ctx.store.display())));
    }
    Ok(files)
}

fn vehicle_accept<G: Group>(a: &AcceptArgs, ctx: &Ctx) -> Outcome {
    let mut vf: VehicleFile = load(&ctx.path(VEHICLE_FILE))?;
    let trust_file: TrustFile = load(&ctx.path(TRUST_FILE))?;
    let trust = trust_file.to_store::<G>()?;
    let cat = vf.caterpillar::<G>()?;
    let mut pending: Vec<u32> = (0..vf.next_index)
        .filter(|i| !vf.credentials.iter().any(|c| c.cocoon_index == *i))
        .collect();
    let mut accepted = Vec::new();
    for path in i2v_files(a, ctx)? {
        let batch = I2vBatch::<G>::decode(&read(&path)?)?;
        for msg in &batch.messages {
            // messages arrive in request order, so the first pending index
            // almost always matches
            let found = pending.iter().enumerate().find_map(|(k, &index)| {
                let cocoon = derive_cocoon_private(&cat, index);
                unwrap_i2v::<G, NoinsIssuance<G>>(msg, &cocoon.secret).ok().map(|is| (k, index, is))
            });
            let (k, index, issuance) = found.ok_or_else(|| Failure::Crypto(format!("{}: message for no pending cocoon key", path.display())))?;
            let san_public = G::mul_base(&issuance.san_secret);
            if !trust.san_keys.iter().any(|t| t.public == san_public) {
                return Err(Failure::Crypto("credential carries an untrusted sanitization key".into()));
            }
            vf.add_credential(index, issuance, trust.ca_public, san_public)?;
            pending.remove(k);
            accepted.push(index);
        }
    }
    vf.id_ca = trust_file.id_ca;
    write(&ctx.path(VEHICLE_FILE), to_json(&vf))?;
    Ok(json!({"accepted": accepted.len(), "cocoon_indices": accepted, "credentials": vf.credentials.len()}))
}

fn vehicle_gen<G: Group>(a: &GenArgs, ctx: &Ctx) -> Outcome {
    let mut vf: VehicleFile = load(&ctx.path(VEHICLE_FILE))?;
    let indices: Vec<u32> = match a.j {
        Some(j) => vec![j],
        None => (1..=vf.policy.n_cs)
            .filter(|j| !vf.bundles.iter().any(|b| b.credential == a.cred && b.j == *j))
            .collect(),
    };
    let mut rng = ctx.rng(&format!("vehicle gen {} {}", a.cred, vf.bundles.len()));
    let mut out = Vec::new();
    for j in indices {
        let b = vf.generate::<G>(a.cred, j, ShortTermRandomness::random(&mut rng))?;
        out.push(json!({
            "j": j,
            "slv": hex::encode(b.cert.slv.0),
            "cert": hex::encode(b.cert.encode()),
            "public": point_hex::<G>(&b.public),
        }));
    }
    write(&ctx.path(VEHICLE_FILE), to_json(&vf))?;
    Ok(json!({"credential": a.cred, "generated": out}))
}

fn vehicle_sign<G: Group>(a: &SignArgs, ctx: &Ctx) -> Outcome {
    let vf: VehicleFile = load(&ctx.path(VEHICLE_FILE))?;
    let bundle = vf.bundle::<G>(a.cred, a.j)?;
    let mut rng = ctx.rng(&format!("vehicle sign {} {} {}", a.cred, a.j, a.msg));
    let msg = sign_v2x(&bundle, a.msg.as_bytes(), &mut rng);
    let out = a.out.clone().unwrap_or_else(|| ctx.path(&format!("msg-{}-{}.bin", a.cred, a.j)));
    let bytes = msg.encode();
    write(&out, &bytes)?;
    Ok(json!({"file": out.display().to_string(), "bytes": bytes.len(), "slv": hex::encode(bundle.cert.slv.0)}))
}

fn verify<G: Group>(a: &VerifyArgs, ctx: &Ctx) -> Outcome {
    let trust = load::<TrustFile>(&a.trust.clone().unwrap_or_else(|| ctx.path(TRUST_FILE)))?.to_store::<G>()?;
    let bytes = read(&a.bundle)?;
    let mut msg = V2xAuthMessage::<G>::decode(&bytes).map_err(|_| Failure::Rejected(RejectReason::Format))?;
    if let Some(m) = &a.msg {
        msg.message = m.clone().into_bytes();
    }
    let now = a.now.unwrap_or_else(now_secs);
    let ok = verify_v2x(&msg, &trust, now).map_err(Failure::Rejected)?;
    Ok(json!({
        "accepted": true,
        "cohort_id": ok.cohort_id,
        "public": point_hex::<G>(&ok.public),
        "slv": hex::encode(msg.cert.slv.0),
        "message": String::from_utf8_lossy(&msg.message),
    }))
}

fn compare_cmd<G: Group>(a: &CompareArgs, _ctx: &Ctx) -> Outcome {
    let scenario = Scenario::by_name(&a.scenario)?;
    let widths = if a.rsa_sizes { Widths::of::<G>().with_rsa() } else { Widths::of::<G>() };
    let report = compare(&a.n_c, a.n_cs, &scenario, &widths)?;
    Ok(serde_json::to_value(report).expect("report serializes"))
}

#[derive(Serialize)]
struct SelftestOutput {
    passed: bool,
    toy: selftest::SelftestReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    games: Option<Vec<GameTranscript>>,
}

fn selftest_cmd(a: &SelftestArgs, ctx: &Ctx) -> Outcome {
    let seed = ctx.seed.unwrap_or(1);
    let toy = selftest::run(seed, a.credentials);
    let games = if a.games {
        let budget = GameBudget {
            trials: a.trials,
            linkability_trials: a.linkability_trials,
            ..GameBudget::default()
        };
        Some(play_all::<Secp256k1>(budget, seed)?)
    } else {
        None
    };
    let passed = toy.passed() && games.iter().flatten().all(|t| t.holds());
    let out = serde_json::to_value(SelftestOutput { passed, toy, games }).expect("report serializes");
    if passed {
        Ok(out)
    } else {
        emit(ctx, &out);
        Err(Failure::Crypto("selftest found failing checks".into()))
    }
}

fn emit(ctx: &Ctx, value: &Value) {
    match ctx.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(value).expect("json value")),
        Format::Csv | Format::Table | Format::Text => {
            if let Ok(report) = serde_json::from_value::<CostReport>(value.clone()) {
                if ctx.format == Format::Csv {
                    print!("{}", cost_csv(&report));
                } else {
                    print!("{}", cost_table(&report));
                }
            } else {
                print_text("", value);
            }
        }
    }
}

fn print_text(prefix: &str, value: &Value) {
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                print_text(&key, v);
            }
        }
        Value::Array(items) if items.iter().any(|v| v.is_object() || v.is_array()) => {
            for (i, v) in items.iter().enumerate() {
                print_text(&format!("{prefix}[{i}]"), v);
            }
        }
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(scalar_text).collect();
            println!("{prefix}={}", parts.join(","));
        }
        v => println!("{prefix}={}", scalar_text(v)),
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[derive(Serialize)]
struct CsvRow<'a> {
    approach: &'a str,
    n_c: u64,
    i2v_messages: u64,
    obtain_bytes: u64,
    use_bytes: u64,
    total_bytes: u64,
    obtain_delay_s: f64,
    use_delay_s: f64,
    total_delay_s: f64,
    ca_point_mul: u64,
    vehicle_point_mul: u64,
    receiver_point_mul: u64,
}

fn cost_csv(report: &CostReport) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in &report.rows {
        w.serialize(CsvRow {
            approach: r.approach.as_str(),
            n_c: r.n_c,
            i2v_messages: r.i2v_messages,
            obtain_bytes: r.obtain_bytes,
            use_bytes: r.use_bytes,
            total_bytes: r.total_bytes(),
            obtain_delay_s: r.obtain_delay_s,
            use_delay_s: r.use_delay_s,
            total_delay_s: r.total_delay_s,
            ca_point_mul: r.ops.ca.point_mul,
            vehicle_point_mul: r.ops.vehicle.point_mul,
            receiver_point_mul: r.ops.receiver.point_mul,
        })
        .expect("csv row");
    }
    String::from_utf8(w.into_inner().expect("csv buffer")).expect("csv is utf-8")
}

fn cost_table(report: &CostReport) -> String {
    let mut s = format!("scenario {} (n_cs = {})\n", report.scenario.name, report.n_cs);
    s += &format!(
        "{:<9} {:>6} {:>6} {:>12} {:>10} {:>12} {:>11} {:>9} {:>11}\n",
        "approach", "n_c", "i2v", "obtain_B", "use_B", "total_B", "obtain_s", "use_s", "total_s"
    );
    for r in &report.rows {
        s += &format!(
            "{:<9} {:>6} {:>6} {:>12} {:>10} {:>12} {:>11.6} {:>9.6} {:>11.6}\n",
            r.approach.as_str(),
            r.n_c,
            r.i2v_messages,
            r.obtain_bytes,
            r.use_bytes,
            r.total_bytes(),
            r.obtain_delay_s,
            r.use_delay_s,
            r.total_delay_s
        );
    }
    for a in &report.assumptions {
        s += &format!("# {a}\n");
    }
    for n in &report.not_modelled {
        s += &format!("# not modelled: {n}\n");
    }
    s
}

fn report_failure(ctx: &Ctx, f: &Failure) {
    let (kind, detail) = match f {
        Failure::Usage(m) => ("usage", m.clone()),
        Failure::Crypto(m) => ("crypto", m.clone()),
        Failure::Rejected(r) => ("rejected", r.as_str().to_string()),
        Failure::Io(m) => ("io", m.clone()),
    };
    match (ctx.format, f) {
        (Format::Json, Failure::Rejected(r)) => println!("{}", json!({"accepted": false, "reason": r.as_str()})),
        (Format::Json, _) => println!("{}", json!({"error": kind, "detail": detail})),
        (_, Failure::Rejected(r)) => println!("accepted=false\nreason={}", r.as_str()),
        _ => eprintln!("error ({kind}): {detail}"),
    }
}
