use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use qconv::sim::run_sweep;
use qconv::{
    ChannelParams, CodeBundle, Gf2, Metric, MetricMode, QuantumDecoder, Representation, SimConfig,
    StabilizerSpec, SymplecticCheck,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Parser)]
#[command(name = "qconv", version, about = "Syndrome decoding of quantum convolutional codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FieldArg {
    Binary,
    Quaternary,
}

impl From<FieldArg> for Representation {
    fn from(f: FieldArg) -> Self {
        match f {
            FieldArg::Binary => Representation::Binary,
            FieldArg::Quaternary => Representation::Quaternary,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MetricArg {
    Hamming,
    Pauli,
}

#[derive(Subcommand)]
enum Command {
    /// Print the transfer matrices and the derived circuits.
    Derive { spec: PathBuf },
    /// Decode a syndrome read from a hex file and print the Pauli estimate.
    Decode {
        spec: PathBuf,
        /// Hex digits, most significant bit first; bits are ordered by block
        /// position, then generator.
        #[arg(long)]
        syndrome: PathBuf,
        /// Data blocks; defaults to the syndrome length minus the padding tail.
        #[arg(long)]
        blocks: Option<usize>,
        #[arg(long, value_enum, default_value = "binary")]
        field: FieldArg,
        #[arg(long, value_enum, default_value = "hamming")]
        metric: MetricArg,
        /// Flip probability for the Pauli metric.
        #[arg(long, default_value_t = 0.05)]
        p: f64,
    },
    /// Monte Carlo sweep over flip probabilities, written as CSV.
    Simulate {
        spec: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        p: Vec<f64>,
        #[arg(long, default_value_t = 10_000)]
        frames: usize,
        #[arg(long, default_value_t = 900)]
        frame_qubits: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "hamming")]
        metric: MetricArg,
        #[arg(long, value_enum, default_value = "binary")]
        field: FieldArg,
        /// Worker threads (QCONV_THREADS takes precedence).
        #[arg(long)]
        threads: Option<usize>,
        /// Fill the elapsed_ms column.
        #[arg(long)]
        timing: bool,
    },
    /// Check commutation, the circuit identities and streaming round trips.
    Verify {
        spec: PathBuf,
        #[arg(long, default_value_t = 200)]
        trials: usize,
    },
}

enum Failure {
    Verify(String),
    Input(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

fn load(path: &Path) -> anyhow::Result<StabilizerSpec> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    StabilizerSpec::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn derive(path: &Path) -> Result<(), Failure> {
    let spec = load(path)?;
    let mut out = String::new();
    out += &format!("# code n={} k={} m={}\n", spec.n(), spec.k(), spec.m());
    out += &format!("# H_b\n{}", spec.to_binary_transfer());
    let bundle = CodeBundle::derive(spec.block_check()).map_err(|e| Failure::Verify(e.to_string()))?;
    out += &format!("# block check\n{}", bundle.check());
    out += &format!("# SF latency={} states={}\n{}", bundle.sf().latency(), bundle.sf().state_dim(), bundle.sf().matrix());
    out += &format!("# ISF latency={} states={}\n{}", bundle.isf().latency(), bundle.isf().state_dim(), bundle.isf().matrix());
    out += &format!("# GEN states={}\n{}", bundle.gen().state_dim(), bundle.gen().matrix());
    match spec.to_quaternary_transfer() {
        Ok(form) => {
            let q = CodeBundle::derive(form.hq.clone()).map_err(|e| Failure::Verify(e.to_string()))?;
            out += &format!("# H_q\n{}", form.hq);
            out += &format!("# ISF_q latency={}\n{}", q.isf().latency(), q.isf().matrix());
            out += &format!("# GEN_q\n{}", q.gen().matrix());
        }
        Err(e) => out += &format!("# H_q unavailable: {e}\n"),
    }
    print!("{out}");
    Ok(())
}

fn parse_hex_bits(text: &str) -> anyhow::Result<Vec<u8>> {
    let mut bits = Vec::new();
    for c in text.chars().filter(|c| !c.is_whitespace()) {
        let v = c.to_digit(16).ok_or_else(|| anyhow!("invalid hex digit {c:?}"))?;
        bits.extend((0..4).rev().map(|i| ((v >> i) & 1) as u8));
    }
    Ok(bits)
}

fn metric(arg: MetricArg, p: f64) -> anyhow::Result<Metric> {
    Ok(match arg {
        MetricArg::Hamming => Metric::Hamming,
        MetricArg::Pauli => {
            let costs = ChannelParams::new(p)?.costs().ok_or_else(|| anyhow!("the Pauli metric needs p > 0"))?;
            Metric::Pauli(costs)
        }
    })
}

fn decode(
    path: &Path,
    syndrome: &Path,
    blocks: Option<usize>,
    field: FieldArg,
    metric_arg: MetricArg,
    p: f64,
) -> Result<(), Failure> {
    let spec = load(path)?;
    let text = fs::read_to_string(syndrome).with_context(|| format!("reading {}", syndrome.display()))?;
    let mut bits = parse_hex_bits(&text)?;
    let r = spec.r();
    let positions = bits.len() / r;
    if bits[positions * r..].iter().any(|&b| b != 0) {
        return Err(anyhow!("syndrome has {} trailing bits that are not zero", bits.len() - positions * r).into());
    }
    bits.truncate(positions * r);
    let blocks = match blocks {
        Some(b) => b,
        None => positions
            .checked_sub(spec.m() + 1)
            .filter(|&b| b > 0)
            .ok_or_else(|| anyhow!("{positions} syndrome positions leave no data blocks"))?,
    };
    let dec = QuantumDecoder::new(&spec, field.into(), metric(metric_arg, p)?).map_err(anyhow::Error::from)?;
    let res = dec.decode(&bits, blocks).map_err(anyhow::Error::from)?;
    println!("{}", res.error);
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn simulate(
    path: &Path,
    ps: Vec<f64>,
    frames: usize,
    frame_qubits: usize,
    seed: u64,
    out: Option<PathBuf>,
    metric: MetricArg,
    field: FieldArg,
    threads: Option<usize>,
    timing: bool,
) -> Result<(), Failure> {
    let spec = load(path)?;
    let config = SimConfig {
        frame_qubits,
        frames,
        ps,
        seed,
        metric: match metric {
            MetricArg::Hamming => MetricMode::Hamming,
            MetricArg::Pauli => MetricMode::Pauli,
        },
        representation: field.into(),
        threads,
        timing,
    };
    let result = run_sweep(&spec, &config).map_err(anyhow::Error::from)?;
    match out {
        Some(p) => {
            let file = fs::File::create(&p).with_context(|| format!("creating {}", p.display()))?;
            result.write_csv(file).map_err(anyhow::Error::from)?;
        }
        None => {
            std::io::stdout().write_all(result.to_csv().as_bytes()).context("writing CSV")?;
        }
    }
    Ok(())
}

fn random_bits(rng: &mut ChaCha8Rng, len: usize) -> Vec<Gf2> {
    (0..len).map(|_| Gf2::new(rng.gen_bool(0.5))).collect()
}

/// Streams random frames through the circuits and checks both round trips.
fn stream_checks(bundle: &CodeBundle<Gf2>, trials: usize) -> Result<(), String> {
    let (r, k) = (bundle.syndrome_width(), bundle.gen().inputs());
    let mem = bundle.check_memory();
    let a = bundle.isf().latency();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for trial in 0..trials {
        let len = rng.gen_range(1..=60);
        let s = random_bits(&mut rng, len * r);
        let steps = a + len + bundle.isf().memory() + mem;
        let w = bundle.isf().run_for(&s, steps).map_err(|e| e.to_string())?;
        let back = bundle.sf().run_for(&w, steps).map_err(|e| e.to_string())?;
        if back[..a * r].iter().any(|x| x.bit()) || back[a * r..(a + len) * r] != s[..] {
            return Err(format!("SF(ISF(s)) ≠ s on trial {trial}"));
        }
        let u = random_bits(&mut rng, len * k);
        let c = bundle.gen().run_for(&u, len + bundle.gen().memory()).map_err(|e| e.to_string())?;
        let sc = bundle.sf().run_for(&c, len + bundle.gen().memory() + mem).map_err(|e| e.to_string())?;
        if sc.iter().any(|x| x.bit()) {
            return Err(format!("SF(GEN(u)) ≠ 0 on trial {trial}"));
        }
    }
    Ok(())
}

fn verify(path: &Path, trials: usize) -> Result<(), Failure> {
    let spec = load(path)?;
    if let SymplecticCheck::Witness { i, j, value } = spec.check_symplectic() {
        return Err(Failure::Verify(format!(
            "commutation: FAIL generators {i} and {j} give {value} (anticommuting shifts)"
        )));
    }
    println!("commutation: ok");
    let bundle = CodeBundle::derive(spec.block_check()).map_err(|e| Failure::Verify(format!("derivation: FAIL {e}")))?;
    bundle.verify().map_err(|e| Failure::Verify(format!("identities: FAIL {e}")))?;
    println!("identities: ok (G·Hᵀ = 0, L·Hᵀ = I, basic generator)");
    stream_checks(&bundle, trials).map_err(|e| Failure::Verify(format!("round trip: FAIL {e}")))?;
    println!("round trip: ok ({trials} frames)");
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Derive { spec } => derive(&spec),
        Command::Decode { spec, syndrome, blocks, field, metric, p } => decode(&spec, &syndrome, blocks, field, metric, p),
        Command::Simulate { spec, p, frames, frame_qubits, seed, out, metric, field, threads, timing } => {
            simulate(&spec, p, frames, frame_qubits, seed, out, metric, field, threads, timing)
        }
        Command::Verify { spec, trials } => verify(&spec, trials),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verify(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
