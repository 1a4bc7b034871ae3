//! `qsync`: build synchronizable hybrid codes from cyclic pairs, dump their
//! lookup tables, run the consistency checks and simulate the channel.

mod config;
mod report;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use config::{ConfigError, Format, RawConfig};
use qsync::channel::{build_sync_table, simulate, Decoder, SyncVariant};
use qsync::cyclic::search_pairs;
use qsync::family::{build_code_with, DistanceMode, ExtendedCodeInstance};
use qsync::pairing::build_pairing_basis;
use qsync::verify::{all_passed, verify_pair};

pub const OUT_DIR_ENV: &str = "QSYNC_OUT_DIR";

const SIMULATE_HELP: &str = "\
Outputs (written to --out, else $QSYNC_OUT_DIR, else the working directory):
  trials.csv    one row per trial with columns
                  trial           trial index (also the RNG stream)
                  alpha           true boundary shift
                  x_errors        number of X errors drawn on the register
                  z_errors        number of Z errors drawn on the register
                  recovered_alpha shift reported by the decoder (empty if none)
                  sync_ok         recovered shift equals the true shift
                  classical_ok    every classical message bit recovered
                  quantum_ok      residual error lies in the gauge group
                  residual        identity | stabilizer | gauge | logical-failure | not-reached
  summary.json  counts and rates over all trials";

const SEARCH_HELP: &str = "\
CSV columns: n, p (generator of C), q (generator of D), k_c, k_d, d_c, d_d.
An empty distance means the code is the zero code.";

#[derive(Parser, Debug)]
#[command(name = "qsync", version, about = "Synchronizable hybrid subsystem codes from cyclic code pairs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build one code and print its parameter line and JSON description.
    Construct(CommonArgs),
    /// Run the named consistency checks on a pair (or every pair of length n).
    Verify(CommonArgs),
    /// Monte Carlo transmission over a shifted Pauli channel.
    #[command(after_help = SIMULATE_HELP)]
    Simulate(CommonArgs),
    /// Dump the synchronization and message lookup tables of a code.
    Table(TableArgs),
    /// List the valid (C, D) cyclic pairs of length n.
    #[command(after_help = SEARCH_HELP)]
    SearchPairs(CommonArgs),
}

#[derive(Args, Debug, Default)]
struct CommonArgs {
    /// Config file of key=value entries; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Block length.
    #[arg(long)]
    n: Option<String>,
    /// Generator polynomial of C, e.g. "1+x+x^3".
    #[arg(long, allow_hyphen_values = true)]
    p: Option<String>,
    /// Generator polynomial of D (must divide p).
    #[arg(long)]
    q: Option<String>,
    /// Code family Q1..Q7.
    #[arg(long)]
    family: Option<String>,
    /// Left extension a_l.
    #[arg(long)]
    al: Option<String>,
    /// Right extension a_r.
    #[arg(long)]
    ar: Option<String>,
    /// Sync distance traded for classical bits (Q4, Q6).
    #[arg(long)]
    y: Option<String>,
    /// X-side classical message as a bit string.
    #[arg(long)]
    b: Option<String>,
    /// Z-side classical message as a bit string.
    #[arg(long)]
    c: Option<String>,
    /// X error probability per qubit.
    #[arg(long)]
    px: Option<String>,
    /// Z error probability per qubit.
    #[arg(long)]
    pz: Option<String>,
    /// Boundary shift: an integer, MIN..MAX, or "window" for [-a_l, a_r].
    #[arg(long, allow_hyphen_values = true)]
    shift: Option<String>,
    /// Allow shifts outside the code's window.
    #[arg(long)]
    adversarial: bool,
    /// Number of trials.
    #[arg(long)]
    trials: Option<String>,
    /// RNG seed.
    #[arg(long)]
    seed: Option<String>,
    /// Output directory.
    #[arg(long)]
    out: Option<String>,
    /// Output format: json, text or csv.
    #[arg(long)]
    format: Option<String>,
    /// Compute the minimum distance (exhaustive where feasible).
    #[arg(long)]
    distance: bool,
}

#[derive(Args, Debug)]
struct TableArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Only this variant (A, B or C).
    #[arg(long)]
    variant: Option<String>,
}

impl CommonArgs {
    fn load(&self) -> Result<RawConfig, ConfigError> {
        let mut cfg = match &self.config {
            Some(path) => {
                let text = fs::read_to_string(path)
                    .map_err(|e| ConfigError(format!("cannot read config {}: {e}", path.display())))?;
                RawConfig::parse(&text)?
            }
            None => RawConfig::default(),
        };
        let flag = |b: bool| b.then(|| "true".to_string());
        for (key, value) in [
            ("n", self.n.clone()),
            ("p", self.p.clone()),
            ("q", self.q.clone()),
            ("family", self.family.clone()),
            ("al", self.al.clone()),
            ("ar", self.ar.clone()),
            ("y", self.y.clone()),
            ("b", self.b.clone()),
            ("c", self.c.clone()),
            ("px", self.px.clone()),
            ("pz", self.pz.clone()),
            ("shift", self.shift.clone()),
            ("adversarial", flag(self.adversarial)),
            ("trials", self.trials.clone()),
            ("seed", self.seed.clone()),
            ("out", self.out.clone()),
            ("format", self.format.clone()),
            ("distance", flag(self.distance)),
        ] {
            cfg.set(key, value);
        }
        Ok(cfg)
    }
}

/// Failures that are not configuration problems.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Verification,
    Runtime(anyhow::Error),
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure::Usage(e.0)
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Runtime(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Runtime(e.into())
    }
}

/// Spec rejections are usage errors; everything else from the library is a runtime failure.
fn lib_err(e: qsync::Error) -> Failure {
    match e {
        qsync::Error::InvalidSpec(_)
        | qsync::Error::InvalidPair(_)
        | qsync::Error::NotAGenerator(_)
        | qsync::Error::Parse { .. }
        | qsync::Error::ShiftOutOfRange { .. } => Failure::Usage(e.to_string()),
        other => Failure::Runtime(other.into()),
    }
}

fn build(cfg: &RawConfig) -> Result<ExtendedCodeInstance, Failure> {
    let pair = cfg.pair()?;
    let spec = cfg.spec()?;
    let basis = build_pairing_basis(&pair).map_err(lib_err)?;
    let mode = if cfg.distance()? { DistanceMode::Auto } else { DistanceMode::Skip };
    build_code_with(&pair, &basis, &spec, mode).map_err(lib_err)
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    fs::write(path, bytes).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn cmd_construct(args: &CommonArgs) -> Result<(), Failure> {
    let cfg = args.load()?;
    let instance = build(&cfg)?;
    let mut out = std::io::stdout().lock();
    writeln!(out, "{}", instance.params)?;
    match cfg.format(Format::Json)? {
        Format::Json => {
            let json = serde_json::to_string_pretty(&report::InstanceJson::from(&instance)).context("serializing")?;
            if cfg.get("out").is_some() {
                let path = cfg.out_dir().join("instance.json");
                write_file(&path, json.as_bytes())?;
                writeln!(out, "wrote {}", path.display())?;
            } else {
                writeln!(out, "{json}")?;
            }
        }
        Format::Text => write!(out, "{}", report::instance_text(&instance))?,
        Format::Csv => {
            writeln!(out, "{}", report::PARAMS_CSV_HEADER)?;
            writeln!(out, "{}", report::params_csv_row(&instance))?;
        }
    }
    Ok(())
}

fn cmd_verify(args: &CommonArgs) -> Result<(), Failure> {
    let cfg = args.load()?;
    let pairs = if cfg.has_pair() {
        vec![cfg.pair()?]
    } else {
        search_pairs(cfg.n()?).map_err(lib_err)?
    };
    let format = cfg.format(Format::Text)?;
    let mut reports = Vec::new();
    for pair in &pairs {
        let basis = build_pairing_basis(pair).map_err(lib_err)?;
        reports.push(report::VerifyReport::new(pair, verify_pair(pair, &basis)));
    }
    let mut out = std::io::stdout().lock();
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&reports).context("serializing")?)?,
        _ => {
            for r in &reports {
                write!(out, "{}", r.text())?;
            }
        }
    }
    if reports.iter().all(|r| all_passed(&r.checks)) {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn cmd_simulate(args: &CommonArgs) -> Result<(), Failure> {
    let cfg = args.load()?;
    let instance = build(&cfg)?;
    let spec = cfg.spec()?;
    let channel = cfg.channel(&spec)?;
    let (trials, seed) = (cfg.trials()?, cfg.seed()?);
    let decoder = Decoder::new(&instance).map_err(lib_err)?;
    let (summary, records) = simulate(&instance, &decoder, &channel, trials, seed).map_err(lib_err)?;

    let dir = cfg.out_dir();
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in &records {
        w.serialize(report::TrialRow::from(r)).context("serializing trial")?;
    }
    let csv_bytes = w.into_inner().context("flushing CSV")?;
    write_file(&dir.join("trials.csv"), &csv_bytes)?;
    let json = serde_json::to_string_pretty(&summary).context("serializing summary")?;
    write_file(&dir.join("summary.json"), format!("{json}\n").as_bytes())?;

    let mut out = std::io::stdout().lock();
    match cfg.format(Format::Text)? {
        Format::Json => writeln!(out, "{json}")?,
        _ => writeln!(
            out,
            "{} {}: {} trials seed {}: sync {:.4} classical {:.4} quantum {:.4} all {:.4} -> {}",
            summary.code,
            instance.params,
            trials,
            seed,
            summary.sync_rate,
            summary.classical_rate,
            summary.quantum_rate,
            summary.full_rate,
            dir.display()
        )?,
    }
    Ok(())
}

fn cmd_table(args: &TableArgs) -> Result<(), Failure> {
    let cfg = args.common.load()?;
    let instance = build(&cfg)?;
    let family = instance.family().expect("built from a family spec");
    let variants: Vec<SyncVariant> = match args.variant.as_deref().map(str::to_ascii_uppercase).as_deref() {
        Some("A") => vec![SyncVariant::A],
        Some("B") => vec![SyncVariant::B],
        Some("C") => vec![SyncVariant::C],
        Some(v) => return Err(Failure::Usage(format!("variant {v:?}: expected A, B or C"))),
        None => {
            let mut v = Vec::new();
            if family.is_synchronizable() {
                v.push(if family.uses_y() { SyncVariant::C } else { SyncVariant::A });
            }
            if family.b_len(instance.gap()) + family.c_len(instance.gap(), instance.y) > 0 {
                v.push(SyncVariant::B);
            }
            v
        }
    };
    let tables = variants
        .into_iter()
        .map(|v| build_sync_table(&instance, v).map_err(lib_err))
        .collect::<Result<Vec<_>, _>>()?;
    let mut out = std::io::stdout().lock();
    match cfg.format(Format::Text)? {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&tables).context("serializing")?)?,
        Format::Csv => {
            writeln!(out, "variant,syndrome,alpha,message")?;
            for t in &tables {
                for (s, k) in &t.entries {
                    writeln!(out, "{:?},{s},{},{}", t.variant, k.alpha, k.message)?;
                }
            }
        }
        Format::Text => {
            for t in &tables {
                writeln!(out, "variant {:?}: {} entries", t.variant, t.len())?;
                for (s, k) in &t.entries {
                    writeln!(out, "  {s} -> alpha {:+} message {}", k.alpha, if k.message.is_empty() { "-".into() } else { k.message.to_string() })?;
                }
            }
        }
    }
    Ok(())
}

fn cmd_search_pairs(args: &CommonArgs) -> Result<(), Failure> {
    let cfg = args.load()?;
    let n = cfg.n()?;
    let pairs = search_pairs(n).map_err(lib_err)?;
    let summaries = pairs.iter().map(|p| p.summary()).collect::<qsync::Result<Vec<_>>>().map_err(lib_err)?;
    let mut out = std::io::stdout().lock();
    match cfg.format(Format::Csv)? {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&summaries).context("serializing")?)?,
        _ => {
            let mut w = csv::Writer::from_writer(&mut out);
            for s in &summaries {
                w.serialize(s).context("writing CSV")?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Construct(a) => cmd_construct(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Simulate(a) => cmd_simulate(a),
        Command::Table(a) => cmd_table(a),
        Command::SearchPairs(a) => cmd_search_pairs(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => {
            eprintln!("qsync: verification failed");
            ExitCode::from(1)
        }
        Err(Failure::Runtime(e)) => {
            eprintln!("qsync: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("qsync: {msg}");
            ExitCode::from(2)
        }
    }
}
