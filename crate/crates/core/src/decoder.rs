//! Syndrome decoding: inverse syndrome former, Viterbi search over the code,
//! and subtraction of the chosen codeword.

use std::ops::Range;

use crate::error::DecodeError;
use crate::field::{Field, Gf2, Gf4};
use crate::pauli::ErrorFrame;
use crate::stabilizer::{QuaternaryForm, StabilizerSpec};
use crate::system::{CodeBundle, Role, TransferSystem};
use crate::trellis::{CostTable, Metric, Section, Symbol, Termination, Trellis};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecodeOptions {
    /// Force the codeword to agree with the candidate outside the data range.
    pub pin_outside_data: bool,
    /// `None` picks zero-state termination for FIR inverse syndrome formers and
    /// a free end otherwise.
    pub termination: Option<Termination>,
}

impl Default for DecodeOptions {
    fn default() -> Self {
        DecodeOptions { pin_outside_data: true, termination: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeResult<F: Field> {
    /// Inverse syndrome former output over the decode frame.
    pub candidate: Vec<F>,
    /// Codeword chosen by the search, same length as `candidate`.
    pub codeword: Vec<F>,
    /// Estimated error over the data range.
    pub error: Vec<F>,
    pub path_metric: u64,
    pub tie_count: u64,
    /// Sections by which the candidate lags the syndrome.
    pub latency: usize,
    pub termination: Termination,
}

/// Decoder for the code `{c : c·Hᵀ = 0}` of a bundle.
#[derive(Debug, Clone)]
pub struct SyndromeDecoder<F: Symbol> {
    bundle: CodeBundle<F>,
    trellis: Trellis<F>,
    costs: CostTable<F>,
}

impl<F: Symbol> SyndromeDecoder<F> {
    pub fn new(bundle: CodeBundle<F>, metric: Metric) -> Result<Self, DecodeError> {
        let trellis = Trellis::build(bundle.gen())?;
        Self::with_trellis(bundle, trellis, metric)
    }

    pub fn with_trellis(bundle: CodeBundle<F>, trellis: Trellis<F>, metric: Metric) -> Result<Self, DecodeError> {
        if matches!(metric, Metric::Pauli(_)) && F::BITS == 1 && !bundle.width().is_multiple_of(2) {
            return Err(DecodeError::Metric("a per-qubit metric needs (x, z) bit pairs".into()));
        }
        let costs = CostTable::new(metric, bundle.width());
        Ok(SyndromeDecoder { bundle, trellis, costs })
    }

    pub fn bundle(&self) -> &CodeBundle<F> {
        &self.bundle
    }

    pub fn trellis(&self) -> &Trellis<F> {
        &self.trellis
    }

    pub fn metric(&self) -> &Metric {
        self.costs.metric()
    }

    /// Cost of an error pattern under the decoder's metric.
    pub fn weight(&self, error: &[F]) -> u64 {
        error.chunks(self.bundle.width()).map(|c| self.costs.cost(F::pack(c))).sum()
    }

    /// Syndrome of `error` (starting at section 0) over `sections` sections.
    pub fn syndrome(&self, error: &[F], sections: usize) -> Result<Vec<F>, DecodeError> {
        Ok(self.bundle.sf().run_for(error, sections)?)
    }

    pub fn decode(&self, syndrome: &[F], data: Range<usize>) -> Result<DecodeResult<F>, DecodeError> {
        self.decode_with(syndrome, data, DecodeOptions::default())
    }

    /// Finds a least-cost error supported on the sections `data` whose
    /// syndrome is `syndrome`.
    pub fn decode_with(
        &self,
        syndrome: &[F],
        data: Range<usize>,
        opts: DecodeOptions,
    ) -> Result<DecodeResult<F>, DecodeError> {
        let r = self.bundle.syndrome_width();
        let w = self.bundle.width();
        if !syndrome.len().is_multiple_of(r) {
            return Err(DecodeError::FrameLength { found: syndrome.len(), section: r });
        }
        let sections = syndrome.len() / r;
        let span = data.end + self.bundle.check_memory();
        if data.start > data.end || sections < span {
            return Err(DecodeError::SyndromeLength { found: sections, expected: span });
        }
        let outside = syndrome[..data.start * r].iter().chain(&syndrome[span * r..]);
        if outside.into_iter().any(|s| !s.is_zero()) {
            return Err(DecodeError::NoPath);
        }
        let isf = self.bundle.isf();
        let a = isf.latency();
        let (frame, auto) = if isf.is_fir() {
            (span + isf.memory(), Termination::Zero)
        } else {
            (a + span, Termination::Free)
        };
        let termination = opts.termination.unwrap_or(auto);
        let candidate = isf.run_for(&syndrome[..span * r], frame)?;
        let secs: Vec<Section> = candidate
            .chunks(w)
            .enumerate()
            .map(|(t, c)| Section {
                received: F::pack(c),
                pinned: opts.pin_outside_data && !(a + data.start..a + data.end).contains(&t),
            })
            .collect();
        let path = self.trellis.viterbi(&secs, &self.costs, termination)?;
        let mut codeword = vec![F::zero(); frame * w];
        for (t, &label) in path.labels.iter().enumerate() {
            F::unpack(label, w, &mut codeword[t * w..(t + 1) * w]);
        }
        let lo = (a + data.start) * w;
        let hi = (a + data.end) * w;
        let error = candidate[lo..hi].iter().zip(&codeword[lo..hi]).map(|(&x, &y)| x - y).collect();
        Ok(DecodeResult {
            candidate,
            codeword,
            error,
            path_metric: path.metric,
            tie_count: path.ties,
            latency: a,
            termination,
        })
    }
}

/// Which classical code the quantum decoder searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Representation {
    /// Binary block code with `2n` symbols per block.
    #[default]
    Binary,
    /// GF(4) code with `n` symbols per block (requires a GF(4)-linear code).
    Quaternary,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuantumDecodeResult {
    pub error: ErrorFrame,
    pub path_metric: u64,
    pub tie_count: u64,
}

#[derive(Debug, Clone)]
struct QuaternaryParts {
    decoder: SyndromeDecoder<Gf4>,
    repack: TransferSystem<Gf2>,
    form: QuaternaryForm,
}

#[derive(Debug, Clone)]
enum Inner {
    Binary(Box<SyndromeDecoder<Gf2>>),
    Quaternary(Box<QuaternaryParts>),
}

/// Maps measured syndromes of a stabilizer code to Pauli error estimates.
#[derive(Debug, Clone)]
pub struct QuantumDecoder {
    spec: StabilizerSpec,
    inner: Inner,
}

impl QuantumDecoder {
    pub fn new(spec: &StabilizerSpec, rep: Representation, metric: Metric) -> Result<Self, DecodeError> {
        match rep {
            Representation::Binary => {
                let bundle = CodeBundle::derive(spec.block_check())?;
                Self::from_binary_bundle(spec, bundle, metric)
            }
            Representation::Quaternary => {
                let form = spec.to_quaternary_transfer()?;
                let bundle = CodeBundle::derive(form.hq.clone())?;
                let repack = TransferSystem::new(form.unpack.inverse()?, Role::Map)?;
                let metric = match metric {
                    Metric::Pauli(c) => Metric::Pauli(c.swapped_xz()),
                    m => m,
                };
                let decoder = SyndromeDecoder::new(bundle, metric)?;
                Ok(QuantumDecoder { spec: spec.clone(), inner: Inner::Quaternary(Box::new(QuaternaryParts { decoder, repack, form })) })
            }
        }
    }

    /// Binary decoder over a caller-supplied bundle for `spec.block_check()`.
    pub fn from_binary_bundle(spec: &StabilizerSpec, bundle: CodeBundle<Gf2>, metric: Metric) -> Result<Self, DecodeError> {
        if bundle.check() != &spec.block_check() {
            return Err(DecodeError::Metric("bundle does not belong to this code".into()));
        }
        Ok(QuantumDecoder { spec: spec.clone(), inner: Inner::Binary(Box::new(SyndromeDecoder::new(bundle, metric)?)) })
    }

    pub fn spec(&self) -> &StabilizerSpec {
        &self.spec
    }

    pub fn representation(&self) -> Representation {
        match self.inner {
            Inner::Binary(_) => Representation::Binary,
            Inner::Quaternary(_) => Representation::Quaternary,
        }
    }

    pub fn binary(&self) -> Option<&SyndromeDecoder<Gf2>> {
        match &self.inner {
            Inner::Binary(d) => Some(d.as_ref()),
            Inner::Quaternary(_) => None,
        }
    }

    pub fn quaternary(&self) -> Option<(&SyndromeDecoder<Gf4>, &QuaternaryForm)> {
        match &self.inner {
            Inner::Quaternary(q) => Some((&q.decoder, &q.form)),
            Inner::Binary(_) => None,
        }
    }

    pub fn trellis_states(&self) -> usize {
        match &self.inner {
            Inner::Binary(d) => d.trellis().states(),
            Inner::Quaternary(q) => q.decoder.trellis().states(),
        }
    }

    /// Decodes the syndrome bits of a frame with `data_blocks` data blocks.
    ///
    /// The syndrome lists `n − k` bits per block position (see
    /// [`StabilizerSpec::syndrome_of`]) and must cover at least
    /// `data_blocks + m` positions; the usual padded frame gives `data_blocks + m + 1`.
    pub fn decode(&self, syndrome: &[u8], data_blocks: usize) -> Result<QuantumDecodeResult, DecodeError> {
        let r = self.spec.r();
        if !syndrome.len().is_multiple_of(r) {
            return Err(DecodeError::FrameLength { found: syndrome.len(), section: r });
        }
        let positions = syndrome.len() / r;
        let needed = data_blocks + self.spec.m();
        if positions < needed {
            return Err(DecodeError::SyndromeLength { found: positions, expected: needed });
        }
        let s: Vec<Gf2> = syndrome.iter().map(|&b| Gf2::new(b != 0)).collect();
        match &self.inner {
            Inner::Binary(d) => {
                let res = d.decode(&s, 0..data_blocks)?;
                let bits = res.error.iter().map(|b| b.bit() as u8).collect();
                Ok(QuantumDecodeResult {
                    error: ErrorFrame::from_bits(bits)?,
                    path_metric: res.path_metric,
                    tie_count: res.tie_count,
                })
            }
            Inner::Quaternary(q) => {
                let (decoder, repack) = (&q.decoder, &q.repack);
                let a = repack.latency();
                let mem = decoder.bundle().check_memory();
                let steps = (positions + a).max(a + data_blocks + mem);
                let coords = repack.run_for(&s, steps)?;
                let sigma: Vec<Gf4> = coords.chunks(2).map(|c| Gf4::from_coords(c[0], c[1])).collect();
                let res = decoder.decode(&sigma, a..a + data_blocks)?;
                let eps: Vec<Gf4> = res.error.iter().map(|x| x.conj()).collect();
                Ok(QuantumDecodeResult {
                    error: ErrorFrame::from_gf4(&eps),
                    path_metric: res.path_metric,
                    tie_count: res.tie_count,
                })
            }
        }
    }
}
