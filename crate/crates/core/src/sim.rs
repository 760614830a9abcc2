//! Monte Carlo sweeps of the decoder over the independent-flip channel.

use std::fmt::Write as _;
use std::io::Write;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::channel::ChannelParams;
use crate::decoder::{QuantumDecoder, Representation};
use crate::error::SimError;
use crate::pauli::ErrorFrame;
use crate::stabilizer::StabilizerSpec;
use crate::trellis::Metric;

/// First line of every sweep CSV.
pub const SCHEMA_TAG: &str = "# qconv-sweep v1";
pub const COLUMNS: &str = "p,frames,qubit_errors,qubits_total,qber,frame_errors,fer,seed,elapsed_ms";
/// Environment variable that overrides the worker thread count.
pub const THREADS_ENV: &str = "QCONV_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MetricMode {
    /// Per-bit Hamming weight.
    #[default]
    Hamming,
    /// Per-qubit log-likelihoods matched to the channel.
    Pauli,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub frame_qubits: usize,
    pub frames: usize,
    pub ps: Vec<f64>,
    pub seed: u64,
    pub metric: MetricMode,
    pub representation: Representation,
    /// `None` uses the global rayon pool.
    pub threads: Option<usize>,
    /// Fill the `elapsed_ms` column (makes the CSV run-dependent).
    pub timing: bool,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            frame_qubits: 900,
            frames: 10_000,
            ps: Vec::new(),
            seed: 0,
            metric: MetricMode::Hamming,
            representation: Representation::Binary,
            threads: None,
            timing: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FrameRecord {
    /// Data qubits where the estimate differs from the channel error.
    pub qubit_errors: u64,
    /// Whether the estimate reproduces the measured syndrome.
    pub consistent: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub p: f64,
    pub frames: u64,
    pub qubit_errors: u64,
    pub qubits_total: u64,
    pub qber: f64,
    pub frame_errors: u64,
    pub fer: f64,
    pub seed: u64,
    pub elapsed_ms: Option<u128>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
    pub frame_qubits: usize,
    pub padding_qubits: usize,
    pub info_qubits: usize,
}

impl SweepResult {
    /// Logical qubits over physical qubits per padded frame, unreduced.
    pub fn rate(&self) -> (usize, usize) {
        (self.info_qubits, self.frame_qubits + self.padding_qubits)
    }

    pub fn to_csv(&self) -> String {
        let (num, den) = self.rate();
        let mut out = String::new();
        writeln!(out, "{SCHEMA_TAG}").unwrap();
        writeln!(
            out,
            "# frame_qubits={} padding_qubits={} rate={num}/{den}",
            self.frame_qubits, self.padding_qubits
        )
        .unwrap();
        writeln!(out, "{COLUMNS}").unwrap();
        for r in &self.rows {
            let elapsed = r.elapsed_ms.map(|t| t.to_string()).unwrap_or_default();
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},{}",
                r.p, r.frames, r.qubit_errors, r.qubits_total, r.qber, r.frame_errors, r.fer, r.seed, elapsed
            )
            .unwrap();
        }
        out
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<(), SimError> {
        w.write_all(self.to_csv().as_bytes())?;
        Ok(())
    }
}

/// Independent stream for frame `frame` of sweep point `point`.
pub fn frame_rng(seed: u64, point: usize, frame: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((point as u64) << 32) | frame as u64);
    rng
}

/// Thread count after applying the environment override.
pub fn thread_count(requested: Option<usize>) -> Result<Option<usize>, SimError> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(t) if t > 0 => Ok(Some(t)),
            _ => Err(SimError::Config(format!("{THREADS_ENV}={v} is not a positive integer"))),
        },
        Err(_) => Ok(requested),
    }
}

/// Decoder for `spec` at flip probability `params`.
pub fn decoder_for(
    spec: &StabilizerSpec,
    params: &ChannelParams,
    metric: MetricMode,
    rep: Representation,
) -> Result<QuantumDecoder, SimError> {
    let metric = match (metric, params.costs()) {
        (MetricMode::Pauli, Some(c)) => Metric::Pauli(c),
        _ => Metric::Hamming,
    };
    Ok(QuantumDecoder::new(spec, rep, metric)?)
}

/// Decodes a known error on `e.qubits()` data qubits (padding is appended).
pub fn run_frame_with_error(decoder: &QuantumDecoder, e: &ErrorFrame) -> Result<(FrameRecord, ErrorFrame), SimError> {
    let spec = decoder.spec();
    if !e.qubits().is_multiple_of(spec.n()) {
        return Err(SimError::Config(format!("{} qubits is not a whole number of blocks", e.qubits())));
    }
    let pad = spec.padding_qubits();
    let s = spec.syndrome_of(&e.padded(pad)).map_err(crate::error::DecodeError::from)?;
    let est = decoder.decode(&s, e.qubits() / spec.n())?.error;
    let consistent = spec.syndrome_of(&est.padded(pad)).map(|t| t == s).unwrap_or(false);
    let record = FrameRecord { qubit_errors: est.mismatches(e) as u64, consistent };
    Ok((record, est))
}

/// Samples one frame and decodes it.
pub fn run_frame(
    decoder: &QuantumDecoder,
    params: &ChannelParams,
    frame_qubits: usize,
    rng: &mut ChaCha8Rng,
) -> Result<FrameRecord, SimError> {
    let e = params.sample(rng, frame_qubits, 0);
    Ok(run_frame_with_error(decoder, &e)?.0)
}

fn validate(spec: &StabilizerSpec, config: &SimConfig) -> Result<Vec<ChannelParams>, SimError> {
    if config.frame_qubits == 0 || !config.frame_qubits.is_multiple_of(spec.n()) {
        return Err(SimError::Config(format!("frame of {} qubits is not a positive multiple of n = {}", config.frame_qubits, spec.n())));
    }
    if config.frames == 0 {
        return Err(SimError::Config("at least one frame is needed".into()));
    }
    if config.ps.is_empty() {
        return Err(SimError::Config("no flip probabilities given".into()));
    }
    if config.frames as u64 > u32::MAX as u64 || config.ps.len() as u64 > u32::MAX as u64 {
        return Err(SimError::Config("too many frames or points".into()));
    }
    config.ps.iter().map(|&p| ChannelParams::new(p)).collect()
}

fn sweep_point(
    spec: &StabilizerSpec,
    config: &SimConfig,
    point: usize,
    params: &ChannelParams,
) -> Result<SweepRow, SimError> {
    let start = Instant::now();
    let decoder = decoder_for(spec, params, config.metric, config.representation)?;
    let records: Vec<FrameRecord> = (0..config.frames)
        .into_par_iter()
        .map(|f| run_frame(&decoder, params, config.frame_qubits, &mut frame_rng(config.seed, point, f)))
        .collect::<Result<_, _>>()?;
    if records.iter().any(|r| !r.consistent) {
        return Err(SimError::Config("decoder returned an estimate with the wrong syndrome".into()));
    }
    let frames = records.len() as u64;
    let qubit_errors: u64 = records.iter().map(|r| r.qubit_errors).sum();
    let frame_errors = records.iter().filter(|r| r.qubit_errors > 0).count() as u64;
    let qubits_total = frames * config.frame_qubits as u64;
    Ok(SweepRow {
        p: params.p(),
        frames,
        qubit_errors,
        qubits_total,
        qber: qubit_errors as f64 / qubits_total as f64,
        frame_errors,
        fer: frame_errors as f64 / frames as f64,
        seed: config.seed,
        elapsed_ms: config.timing.then(|| start.elapsed().as_millis()),
    })
}

/// Runs every point of the sweep. Results do not depend on the thread count.
pub fn run_sweep(spec: &StabilizerSpec, config: &SimConfig) -> Result<SweepResult, SimError> {
    let params = validate(spec, config)?;
    let run = || -> Result<Vec<SweepRow>, SimError> {
        params.iter().enumerate().map(|(i, p)| sweep_point(spec, config, i, p)).collect()
    };
    let rows = match thread_count(config.threads)? {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| SimError::Config(e.to_string()))?
            .install(run)?,
        None => run()?,
    };
    Ok(SweepResult {
        rows,
        frame_qubits: config.frame_qubits,
        padding_qubits: spec.padding_qubits(),
        info_qubits: spec.k() * config.frame_qubits / spec.n(),
    })
}
