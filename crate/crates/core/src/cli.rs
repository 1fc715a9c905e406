//! Command-line front end.
//!
//! Exit status is 0 on success, 2 for argument, schema and input errors and
//! 3 when a numerical invariant fails (for example a negative information
//! quantity beyond the clamp, or a failed oracle cross-check).

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::bosonic::{self, BosonicICParams, BosonicJson, DetectionMode};
use crate::channels::{self, ChannelJson, CqChannel, Povm, Transition};
use crate::codesim;
use crate::entropic::ProbDist;
use crate::error::{Error, Result};
use crate::network::dist::Role;
use crate::network::{self, AuxSizes, CmgDist, CodeDistribution, HkDist, InputDist};
use crate::regions::{self, boundary_csv, HalfspaceRegion, RegionUnion};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

/// Bounds at or below this are reported as an origin-only region.
const ORIGIN_TOL: f64 = 1e-6;
const ORACLE_GRID: usize = 50;
const ORACLE_TOL: f64 = 1e-6;
const ORACLE_AGREEMENT: f64 = 0.999;
const BOUNDARY_ANGLES: usize = 91;

#[derive(Debug, Parser)]
#[command(name = "qnetcap", version, about = "Capacity regions of classical-quantum network channels")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Point-to-point capacities.
    Capacity {
        #[command(subcommand)]
        which: CapacityCmd,
    },
    /// Achievable-rate and capacity regions.
    Region(RegionArgs),
    /// Closed-form bosonic interference-channel rates.
    Bosonic(BosonicArgs),
    /// Small-blocklength decoder simulations.
    Sim {
        #[command(subcommand)]
        which: SimCmd,
    },
}

#[derive(Debug, Clone, Args, Default)]
pub struct Source {
    /// Named builtin channel.
    #[arg(long)]
    pub builtin: Option<String>,
    /// Builtin parameters.
    #[arg(long, num_args = 1.., allow_negative_numbers = true)]
    pub param: Vec<f64>,
    /// Channel JSON file.
    #[arg(long)]
    pub channel: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum CapacityCmd {
    /// Holevo capacity of a single-input channel.
    P2pHolevo {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = network::DEFAULT_GRID)]
        grid: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Capacity of the classical channel induced by a measurement.
    P2pClassical {
        #[command(flatten)]
        source: Source,
        /// `computational`, `bb84_aligned`, `trivial` or a POVM JSON file.
        #[arg(long, default_value = "computational")]
        povm: String,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RegionKind {
    Mac,
    Vsi,
    Si,
    Hk,
    Cmg,
    Sato,
    BcSuperposition,
    BcMarton,
    RelayPdf,
}

#[derive(Debug, Args)]
pub struct RegionArgs {
    pub kind: RegionKind,
    #[command(flatten)]
    pub source: Source,
    /// Grid points per simplex edge when taking a union over input laws.
    #[arg(long, default_value_t = network::DEFAULT_GRID)]
    pub grid: usize,
    /// Use uniform inputs (both messages common for hk and cmg).
    #[arg(long, conflicts_with = "dist")]
    pub uniform: bool,
    /// Code distribution JSON file.
    #[arg(long)]
    pub dist: Option<PathBuf>,
    /// Seed for randomly drawn code distributions.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Cross-check the cmg region against the projected split systems.
    #[arg(long)]
    pub oracle: bool,
    /// Output file; `.csv` writes boundary samples, anything else JSON.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BosonicKind {
    P2p,
    Vsi,
    Si,
    Hk,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Hom,
    Het,
    Joint,
}

impl From<ModeArg> for DetectionMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Hom => DetectionMode::Homodyne,
            ModeArg::Het => DetectionMode::Heterodyne,
            ModeArg::Joint => DetectionMode::Joint,
        }
    }
}

#[derive(Debug, Args)]
pub struct BosonicArgs {
    pub kind: BosonicKind,
    /// `carleial`, `strong-int` or `hk`.
    #[arg(long)]
    pub builtin: Option<String>,
    /// Mean photon number per sender, overriding the builtin's.
    #[arg(long, num_args = 1..=2)]
    pub param: Vec<f64>,
    /// Parameter JSON file.
    #[arg(long)]
    pub channel: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    /// Personal-message power fractions of the two senders.
    #[arg(long, num_args = 2, allow_negative_numbers = true)]
    pub lambda: Vec<f64>,
    /// Transmissivity for the point-to-point curves.
    #[arg(long, default_value_t = 0.9)]
    pub eta: f64,
    /// Thermal photons for the point-to-point curves.
    #[arg(long, default_value_t = 1.0)]
    pub nb: f64,
    /// Largest signal photon number for the point-to-point curves.
    #[arg(long, default_value_t = 20.0)]
    pub ns_max: f64,
    /// Number of points on the point-to-point curves.
    #[arg(long, default_value_t = 101)]
    pub grid: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum SimCmd {
    /// Square-root-measurement error sweep over blocklengths.
    Quantum {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 0.3)]
        rate: f64,
        #[arg(long = "n", value_delimiter = ',', default_values_t = vec![2usize, 4, 6, 8])]
        ns: Vec<usize>,
        /// Number of codebooks per blocklength.
        #[arg(long, default_value_t = 20)]
        seeds: u64,
        /// First codebook seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = codesim::DEFAULT_DELTA)]
        delta: f64,
        /// Input law JSON (a `p2p` code distribution); uniform otherwise.
        #[arg(long)]
        dist: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Typical-set decoding Monte Carlo on a classical channel.
    Classical {
        /// `bsc`, `z_channel`, `noiseless`, or a quantum builtin measured by `--povm`.
        #[arg(long)]
        builtin: Option<String>,
        #[arg(long, num_args = 1.., allow_negative_numbers = true)]
        param: Vec<f64>,
        /// Transition JSON (`{"rows": [...]}`) or channel JSON file.
        #[arg(long)]
        channel: Option<PathBuf>,
        #[arg(long, default_value = "computational")]
        povm: String,
        #[arg(long, default_value_t = 0.3)]
        rate: f64,
        #[arg(long = "n", value_delimiter = ',', default_values_t = vec![4usize, 8, 12, 16])]
        ns: Vec<usize>,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = codesim::DEFAULT_DELTA)]
        delta: f64,
        #[arg(long)]
        dist: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Parses `args` (including the program name), runs the command and
/// returns the exit status. Messages go to `stdout` and `stderr`.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                write!(stdout, "{text}")
            } else {
                write!(stderr, "{text}")
            };
            return code;
        }
    };
    if let Err(e) = configure_threads() {
        let _ = writeln!(stderr, "error: {e}");
        return EXIT_USAGE;
    }
    match execute(&cli.command, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            if e.is_numerical() {
                EXIT_NUMERICAL
            } else {
                EXIT_USAGE
            }
        }
    }
}

fn configure_threads() -> Result<()> {
    let Ok(v) = std::env::var("QNETCAP_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::InvalidArgument(format!("QNETCAP_THREADS must be a positive integer, got `{v}`")))?;
    // A second call in the same process keeps the first pool.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn execute(cmd: &Command, stdout: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Capacity { which } => capacity(which, stdout),
        Command::Region(args) => region(args, stdout),
        Command::Bosonic(args) => bosonic_cmd(args, stdout),
        Command::Sim { which } => sim(which, stdout),
    }
}

/// Writes through a sibling temporary file and renames it into place, so a
/// failed run never leaves a partial file behind.
pub fn write_atomic(path: &Path, content: &str) -> Result<()> {
    let name = path
        .file_name()
        .ok_or_else(|| Error::InvalidArgument(format!("`{}` is not a file path", path.display())))?;
    let mut tmp_name = OsString::from(".");
    tmp_name.push(name);
    tmp_name.push(format!(".tmp{}", std::process::id()));
    let tmp = path.with_file_name(tmp_name);
    fs::write(&tmp, content)?;
    if let Err(e) = fs::rename(&tmp, path) {
        let _ = fs::remove_file(&tmp);
        return Err(e.into());
    }
    Ok(())
}

fn emit(out: Option<&Path>, content: &str, summary: &str, stdout: &mut dyn Write) -> Result<()> {
    match out {
        Some(p) => {
            write_atomic(p, content)?;
            writeln!(stdout, "{summary}")?;
            writeln!(stdout, "wrote {}", p.display())?;
        }
        None => write!(stdout, "{content}")?,
    }
    Ok(())
}

fn is_csv(out: Option<&Path>) -> bool {
    out.and_then(|p| p.extension())
        .is_some_and(|e| e.eq_ignore_ascii_case("csv"))
}

fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("cannot read `{}`: {e}", path.display())))
}

fn load_channel(src: &Source, default: Option<&str>) -> Result<CqChannel> {
    match (&src.builtin, &src.channel) {
        (Some(_), Some(_)) => Err(Error::InvalidArgument(
            "give exactly one of --builtin and --channel".into(),
        )),
        (None, Some(path)) => {
            if !src.param.is_empty() {
                return Err(Error::InvalidArgument("--param only applies to --builtin".into()));
            }
            CqChannel::from_json_str(&read_file(path)?)
        }
        (Some(name), None) => channels::builtin(name, &src.param),
        (None, None) => match default {
            Some(name) if src.param.is_empty() => channels::builtin(name, &[]),
            _ => Err(Error::InvalidArgument(
                "a channel source is required (--builtin NAME or --channel PATH)".into(),
            )),
        },
    }
}

fn capacity(cmd: &CapacityCmd, stdout: &mut dyn Write) -> Result<i32> {
    match cmd {
        CapacityCmd::P2pHolevo { source, grid, out } => {
            let ch = load_channel(source, None)?;
            let (c, p) = network::hsw_capacity(&ch, *grid)?;
            let summary = format!("holevo_capacity {c:.6}\nargmax {}", fmt_list(p.weights()));
            let content = match out {
                Some(_) => json_string(&json!({"capacity": c, "argmax": p.weights()})),
                None => format!("{summary}\n"),
            };
            emit(out.as_deref(), &content, &summary, stdout)?;
        }
        CapacityCmd::P2pClassical { source, povm, tol, out } => {
            let ch = load_channel(source, None)?;
            let m = load_povm(povm, ch.output_dim())?;
            let t = ch.induced_classical_channel(&m)?;
            let (c, p) = network::classical_capacity_ba(&t, *tol)?;
            let summary = format!("classical_capacity {c:.6}\nargmax {}", fmt_list(p.weights()));
            let content = match out {
                Some(_) => json_string(&json!({
                    "capacity": c,
                    "argmax": p.weights(),
                    "transition": t.rows(),
                })),
                None => format!("{summary}\n"),
            };
            emit(out.as_deref(), &content, &summary, stdout)?;
        }
    }
    Ok(EXIT_OK)
}

fn load_povm(name: &str, dim: usize) -> Result<Povm> {
    match Povm::builtin(name, dim) {
        Err(Error::UnknownName(_)) => Povm::from_json_str(&read_file(Path::new(name))?),
        other => other,
    }
}

fn fmt_list(v: &[f64]) -> String {
    v.iter().map(|x| format!("{x:.6}")).collect::<Vec<_>>().join(" ")
}

fn json_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn load_dist(path: &Path) -> Result<CodeDistribution> {
    CodeDistribution::from_json_str(&read_file(path)?)
}

fn wrong_dist(kind: RegionKind, got: &CodeDistribution) -> Error {
    Error::Schema(format!(
        "distribution of kind `{}` does not fit region `{}`",
        got.kind(),
        kind.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default()
    ))
}

fn default_channel(kind: RegionKind) -> Option<&'static str> {
    match kind {
        RegionKind::Mac => Some("bb84_qmac"),
        RegionKind::BcSuperposition | RegionKind::BcMarton => None,
        _ => Some("bb84_ic"),
    }
}

/// Input laws for the pentagon-type regions: one law or the whole grid.
fn input_laws(args: &RegionArgs, ch: &CqChannel) -> Result<Vec<InputDist>> {
    if let Some(path) = &args.dist {
        return match load_dist(path)? {
            CodeDistribution::Mac { p1, p2 } => Ok(vec![InputDist::product(p1, p2)]),
            CodeDistribution::CodedTimeShare(d) => Ok(vec![d]),
            other => Err(wrong_dist(args.kind, &other)),
        };
    }
    if args.uniform {
        return Ok(vec![InputDist::uniform(ch)]);
    }
    if args.grid < 2 {
        return Err(Error::InvalidArgument("grid resolution must be at least 2".into()));
    }
    let g1 = network::simplex_grid(ch.alphabet_size(0), args.grid);
    let g2 = network::simplex_grid(ch.alphabet_size(1), args.grid);
    Ok(g1
        .iter()
        .flat_map(|a| g2.iter().map(move |b| InputDist::product(a.clone(), b.clone())))
        .collect())
}

fn hk_dist(args: &RegionArgs, ch: &CqChannel) -> Result<HkDist> {
    if let Some(path) = &args.dist {
        return match load_dist(path)? {
            CodeDistribution::Hk(d) => Ok(d),
            other => Err(wrong_dist(args.kind, &other)),
        };
    }
    let (n1, n2) = (ch.alphabet_size(0), ch.alphabet_size(1));
    if args.uniform {
        return Ok(HkDist::from_roles(
            ProbDist::uniform(n1),
            Role::Common,
            ProbDist::uniform(n2),
            Role::Common,
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    Ok(HkDist::random(&mut rng, ch, AuxSizes::default_for(ch)))
}

fn cmg_dist(args: &RegionArgs, ch: &CqChannel) -> Result<CmgDist> {
    if let Some(path) = &args.dist {
        return match load_dist(path)? {
            CodeDistribution::Cmg(d) => Ok(d),
            CodeDistribution::Hk(h) => CmgDist::from_hk(&h, ch),
            other => Err(wrong_dist(args.kind, &other)),
        };
    }
    if args.uniform {
        return CmgDist::from_hk(&hk_dist(args, ch)?, ch);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    Ok(CmgDist::random(&mut rng, ch, AuxSizes::default_for(ch)))
}

fn origin_only(members: &[HalfspaceRegion]) -> Result<bool> {
    for m in members {
        for dir in [[1.0, 0.0], [0.0, 1.0]] {
            match m.support(&dir)? {
                Some(s) if s <= ORIGIN_TOL => {}
                _ => return Ok(false),
            }
        }
    }
    Ok(true)
}

fn region(args: &RegionArgs, stdout: &mut dyn Write) -> Result<i32> {
    let ch = load_channel(&args.source, default_channel(args.kind))?;
    if args.oracle && args.kind != RegionKind::Cmg {
        return Err(Error::InvalidArgument("--oracle applies to `region cmg` only".into()));
    }
    let mut extra = serde_json::Map::new();
    let mut code = EXIT_OK;
    let members: Vec<HalfspaceRegion> = match args.kind {
        RegionKind::Mac => input_laws(args, &ch)?
            .iter()
            .map(|d| network::mac_region_q(&ch, d))
            .collect::<Result<_>>()?,
        RegionKind::Vsi | RegionKind::Si | RegionKind::Sato => {
            let laws = input_laws(args, &ch)?;
            if args.kind != RegionKind::Sato {
                let rep = network::vsi_check(&ch, args.grid.max(2), 1e-9)?;
                extra.insert(
                    "vsi_condition".into(),
                    json!({"holds": rep.holds, "worst_slack": rep.worst_slack}),
                );
            }
            laws.iter()
                .map(|d| match args.kind {
                    RegionKind::Vsi => network::vsi_capacity(&ch, d),
                    RegionKind::Si => network::si_capacity(&ch, d),
                    _ => network::sato_outer(&ch, d),
                })
                .collect::<Result<_>>()?
        }
        RegionKind::Hk => vec![network::hk_region(&ch, &hk_dist(args, &ch)?)?],
        RegionKind::Cmg => {
            let d = cmg_dist(args, &ch)?;
            let r = network::cmg_region(&ch, &d)?;
            if args.oracle {
                let o = network::cmg_projection_oracle(&ch, &d)?;
                let agree = regions::membership_agreement(&r, &o, ORACLE_GRID, ORACLE_TOL)?;
                let passed = agree >= ORACLE_AGREEMENT;
                extra.insert(
                    "oracle".into(),
                    json!({"agreement": agree, "grid": ORACLE_GRID, "tol": ORACLE_TOL, "passed": passed}),
                );
                if !passed {
                    code = EXIT_NUMERICAL;
                }
            }
            vec![r]
        }
        RegionKind::BcSuperposition => {
            let d = match &args.dist {
                Some(p) => match load_dist(p)? {
                    CodeDistribution::Superposition(d) => d,
                    other => return Err(wrong_dist(args.kind, &other)),
                },
                None => {
                    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
                    network::SuperpositionDist::random(&mut rng, &ch, ch.alphabet_size(0))
                }
            };
            vec![network::superposition_region(&ch, &d)?]
        }
        RegionKind::BcMarton => {
            let d = match &args.dist {
                Some(p) => match load_dist(p)? {
                    CodeDistribution::Marton(d) => d,
                    other => return Err(wrong_dist(args.kind, &other)),
                },
                None => {
                    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
                    let n = ch.alphabet_size(0);
                    network::MartonDist::random(&mut rng, &ch, n, n)
                }
            };
            vec![network::marton_region(&ch, &d)?]
        }
        RegionKind::RelayPdf => return relay(args, &ch, stdout),
    };

    let union = RegionUnion::new(members)?;
    let origin = origin_only(union.members())?;
    let kind_name = args.kind.to_possible_value().expect("value enum").get_name().to_string();
    let out = args.out.as_deref();
    let content = if is_csv(out) {
        boundary_csv(&union.boundary_sample(BOUNDARY_ANGLES)?)
    } else {
        let mut obj = serde_json::Map::new();
        obj.insert("kind".into(), json!(kind_name));
        obj.insert("coords".into(), json!(union.members()[0].coords()));
        obj.insert(
            "members".into(),
            Value::Array(
                union
                    .members()
                    .iter()
                    .map(|m| serde_json::to_value(m.to_json()).expect("region serializes"))
                    .collect(),
            ),
        );
        obj.insert("origin_only".into(), json!(origin));
        obj.extend(extra.clone());
        json_string(&Value::Object(obj))
    };
    let mut summary = format!("{kind_name} region: {} member(s)", union.len());
    if origin {
        summary.push_str(", origin-only");
    }
    if let Some(o) = extra.get("oracle") {
        summary.push_str(&format!(", oracle agreement {}", o["agreement"]));
    }
    if out.is_some() {
        emit(out, &content, &summary, stdout)?;
    } else {
        write!(stdout, "{content}")?;
    }
    Ok(code)
}

fn relay(args: &RegionArgs, ch: &CqChannel, stdout: &mut dyn Write) -> Result<i32> {
    let d = match &args.dist {
        Some(p) => match load_dist(p)? {
            CodeDistribution::RelayPdf(d) => d,
            other => return Err(wrong_dist(args.kind, &other)),
        },
        None if args.uniform => network::RelayDist::decode_forward(
            ch.alphabet_size(0),
            ch.alphabet_size(1),
            &ProbDist::uniform(ch.alphabet_size(0) * ch.alphabet_size(1)),
        )?,
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
            network::RelayDist::random(&mut rng, ch, ch.alphabet_size(0))
        }
    };
    let rate = network::relay_pdf_rate(ch, &d)?;
    let summary = format!("relay_pdf_rate {rate:.6}");
    let content = match &args.out {
        Some(_) => json_string(&json!({"kind": "relay-pdf", "rate": rate})),
        None => format!("{summary}\n"),
    };
    emit(args.out.as_deref(), &content, &summary, stdout)?;
    Ok(EXIT_OK)
}

fn bosonic_builtin(name: &str) -> Result<BosonicICParams> {
    match name {
        "carleial" => BosonicICParams::symmetric(1.0 / 16.0, 0.5, 1.0, 1.0, 1.0),
        "strong-int" => BosonicICParams::symmetric(0.3, 0.6, 100.0, 1.0, 1.0),
        "hk" => BosonicICParams::symmetric(0.8, 0.1, 100.0, 1.0, 0.1),
        other => Err(Error::UnknownName(format!(
            "{other} (bosonic builtins: carleial, strong-int, hk)"
        ))),
    }
}

fn bosonic_params(args: &BosonicArgs) -> Result<(BosonicICParams, Option<DetectionMode>)> {
    let (mut p, json_mode) = match (&args.builtin, &args.channel) {
        (Some(_), Some(_)) => {
            return Err(Error::InvalidArgument(
                "give exactly one of --builtin and --channel".into(),
            ))
        }
        (Some(name), None) => (bosonic_builtin(name)?, None),
        (None, Some(path)) => {
            let j: BosonicJson = serde_json::from_str(&read_file(path)?)
                .map_err(|e| Error::Schema(format!("bosonic parameters: {e}")))?;
            (BosonicICParams::from_json(&j)?, j.mode)
        }
        (None, None) => {
            return Err(Error::InvalidArgument(
                "a parameter source is required (--builtin NAME or --channel PATH)".into(),
            ))
        }
    };
    match args.param.as_slice() {
        [] => {}
        [ns] => p.ns = [*ns, *ns],
        [a, b] => p.ns = [*a, *b],
        _ => unreachable!("clap limits --param to two values"),
    }
    if let [l1, l2] = args.lambda.as_slice() {
        p.lambda = [*l1, *l2];
    }
    p.validate()?;
    Ok((p, json_mode))
}

fn bosonic_cmd(args: &BosonicArgs, stdout: &mut dyn Write) -> Result<i32> {
    let out = args.out.as_deref();
    if args.kind == BosonicKind::P2p {
        if !(0.0..=1.0).contains(&args.eta) || args.nb < 0.0 || !(args.ns_max >= 0.0) {
            return Err(Error::BosonicParams(
                "need 0 ≤ η ≤ 1, N_B ≥ 0 and N_S max ≥ 0".into(),
            ));
        }
        if args.grid < 2 {
            return Err(Error::InvalidArgument("grid must have at least 2 points".into()));
        }
        let ns: Vec<f64> = (0..args.grid)
            .map(|i| args.ns_max * i as f64 / (args.grid - 1) as f64)
            .collect();
        let mut csv = String::from("NS,homodyne,heterodyne,holevo\n");
        for [n, a, b, c] in bosonic::p2p_curves(args.eta, args.nb, &ns) {
            csv.push_str(&format!("{n},{a},{b},{c}\n"));
        }
        let summary = format!("bosonic p2p: {} points, eta {}, NB {}", ns.len(), args.eta, args.nb);
        emit(out, &csv, &summary, stdout)?;
        return Ok(EXIT_OK);
    }

    let (p, json_mode) = bosonic_params(args)?;
    let mode = args
        .mode
        .map(DetectionMode::from)
        .or(json_mode)
        .unwrap_or(DetectionMode::Homodyne);
    let (condition, r) = match args.kind {
        BosonicKind::Vsi => {
            let (ok, r) = bosonic::bosonic_vsi(&p, mode)?;
            (Some(ok), r)
        }
        BosonicKind::Si => {
            let (ok, r) = bosonic::bosonic_si(&p, mode)?;
            (Some(ok), r)
        }
        _ => (None, bosonic::bosonic_hk_region(&p, mode)?),
    };
    let kind = args.kind.to_possible_value().expect("value enum").get_name().to_string();
    let content = if is_csv(out) {
        boundary_csv(&r.boundary_sample(BOUNDARY_ANGLES)?)
    } else {
        json_string(&json!({
            "kind": kind,
            "mode": mode.short_name(),
            "params": p.to_json(Some(mode)),
            "condition_holds": condition,
            "region": r.to_json(),
        }))
    };
    let mut summary = format!("bosonic {kind} ({mode})");
    if let Some(ok) = condition {
        summary.push_str(if ok { ": condition holds" } else { ": condition fails" });
    }
    if out.is_some() {
        emit(out, &content, &summary, stdout)?;
    } else {
        write!(stdout, "{content}")?;
    }
    Ok(EXIT_OK)
}

#[derive(serde::Deserialize)]
struct TransitionJson {
    rows: Vec<Vec<f64>>,
}

fn load_transition(
    builtin: &Option<String>,
    param: &[f64],
    channel: &Option<PathBuf>,
    povm: &str,
) -> Result<Transition> {
    let one = |name: &str| -> Result<f64> {
        match param {
            [p] => Ok(*p),
            _ => Err(Error::InvalidArgument(format!("`{name}` takes one parameter"))),
        }
    };
    match (builtin, channel) {
        (Some(_), Some(_)) => Err(Error::InvalidArgument(
            "give exactly one of --builtin and --channel".into(),
        )),
        (Some(name), None) => match name.as_str() {
            "bsc" => Transition::bsc(one("bsc")?),
            "z_channel" => Transition::z_channel(one("z_channel")?),
            "noiseless" => {
                let d = one("noiseless")?;
                if d < 1.0 || d.fract() != 0.0 {
                    return Err(Error::InvalidArgument("noiseless takes an alphabet size".into()));
                }
                Ok(Transition::identity(d as usize))
            }
            _ => {
                let ch = channels::builtin(name, param)?;
                ch.induced_classical_channel(&load_povm(povm, ch.output_dim())?)
            }
        },
        (None, Some(path)) => {
            let text = read_file(path)?;
            if let Ok(t) = serde_json::from_str::<TransitionJson>(&text) {
                return Transition::new(t.rows);
            }
            let _: ChannelJson = serde_json::from_str(&text)
                .map_err(|e| Error::Schema(format!("neither a transition nor a channel: {e}")))?;
            let ch = CqChannel::from_json_str(&text)?;
            ch.induced_classical_channel(&load_povm(povm, ch.output_dim())?)
        }
        (None, None) => Err(Error::InvalidArgument(
            "a channel source is required (--builtin NAME or --channel PATH)".into(),
        )),
    }
}

fn p2p_law(dist: &Option<PathBuf>, k: usize) -> Result<ProbDist> {
    match dist {
        None => Ok(ProbDist::uniform(k)),
        Some(path) => match load_dist(path)? {
            CodeDistribution::P2p { p } if p.len() == k => Ok(p),
            CodeDistribution::P2p { p } => Err(Error::DimensionMismatch(format!(
                "input law has {} entries, channel has {k} inputs",
                p.len()
            ))),
            other => Err(Error::Schema(format!(
                "simulation needs a `p2p` distribution, got `{}`",
                other.kind()
            ))),
        },
    }
}

fn sim(cmd: &SimCmd, stdout: &mut dyn Write) -> Result<i32> {
    match cmd {
        SimCmd::Quantum {
            source,
            rate,
            ns,
            seeds,
            seed,
            delta,
            dist,
            out,
        } => {
            let ch = load_channel(source, Some("bb84_p2p"))?;
            let p = p2p_law(dist, ch.alphabet_size(0))?;
            let seed_list: Vec<u64> = (0..*seeds).map(|k| seed.wrapping_add(k)).collect();
            if seed_list.is_empty() || ns.is_empty() {
                return Err(Error::InvalidArgument("need at least one seed and one n".into()));
            }
            let rows = codesim::quantum_sweep(&ch, &p, *rate, ns, &seed_list, *delta)?;
            if rows.iter().any(|r| !r.rank_bound_holds) {
                return Err(Error::Numerical("projector rank bound violated".into()));
            }
            let csv = codesim::sweep_csv(&rows);
            let mut summary = String::from("n mean_error");
            for &n in ns.iter() {
                let errs: Vec<f64> = rows.iter().filter(|r| r.n == n).map(|r| r.exact_error).collect();
                summary.push_str(&format!("\n{n} {:.6}", errs.iter().sum::<f64>() / errs.len() as f64));
            }
            emit(out.as_deref(), &csv, &summary, stdout)?;
        }
        SimCmd::Classical {
            builtin,
            param,
            channel,
            povm,
            rate,
            ns,
            trials,
            seed,
            delta,
            dist,
            out,
        } => {
            let t = load_transition(builtin, param, channel, povm)?;
            let p = p2p_law(dist, t.num_inputs())?;
            let mut csv = String::from("n,R,seed,delta,trials,error_rate,e0,e1,e2,packing_bound\n");
            let mut summary = String::from("n error_rate");
            for &n in ns {
                let r = codesim::classical_typical_decode_sim(&t, &p, *rate, n, *delta, *trials, *seed)?;
                csv.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{},{}\n",
                    n,
                    rate,
                    seed,
                    delta,
                    trials,
                    r.error_rate(),
                    r.e0,
                    r.e1,
                    r.e2,
                    r.packing_bound
                ));
                summary.push_str(&format!("\n{n} {:.6}", r.error_rate()));
            }
            emit(out.as_deref(), &csv, &summary, stdout)?;
        }
    }
    Ok(EXIT_OK)
}
