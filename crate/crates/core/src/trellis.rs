//! Trellis of a feed-forward generator and the Viterbi search over it.
//!
//! Sections are packed into `u64`: symbol `j` of a section occupies bits
//! `[j·BITS, (j+1)·BITS)` holding its field index. Field addition is XOR of
//! indices in both GF(2) and GF(4), so `received ^ label` is the difference.

use std::marker::PhantomData;

use crate::error::DecodeError;
use crate::field::{Field, Gf2, Gf4};
use crate::pauli::Pauli;
use crate::system::TransferSystem;

/// Default ceiling on trellis states.
pub const STATE_CAP: usize = 1 << 20;

/// Per-qubit costs indexed by Pauli (`I, X, Y, Z`), as scaled integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PauliCosts(pub [u64; 4]);

/// Scale of quantized log-likelihood costs.
pub const COST_SCALE: f64 = 65536.0;

impl PauliCosts {
    pub fn cost(&self, p: Pauli) -> u64 {
        self.0[p as usize]
    }

    /// Costs `−log(P(e)/P(I))` on a `2^16` grid for a channel flipping each
    /// symplectic bit independently with probability `p`. The Y cost is exactly
    /// twice the X cost, as it is before quantization.
    pub fn independent_flips(p: f64) -> Self {
        assert!(p > 0.0 && p < 0.5, "flip probability must lie in (0, 0.5)");
        let c = (COST_SCALE * ((1.0 - p) / p).ln()).round() as u64;
        PauliCosts([0, c, 2 * c, c])
    }

    /// Costs from Pauli probabilities `[P(I), P(X), P(Y), P(Z)]`.
    pub fn from_probabilities(probs: [f64; 4]) -> Self {
        let base = probs[0].ln();
        let mut c = [0u64; 4];
        for (ci, p) in c.iter_mut().zip(probs) {
            assert!(p > 0.0 && p <= probs[0], "costs need 0 < P(e) ≤ P(I)");
            *ci = (COST_SCALE * (base - p.ln())).round() as u64;
        }
        PauliCosts(c)
    }

    /// Swaps the X and Z costs.
    pub fn swapped_xz(&self) -> Self {
        let [i, x, y, z] = self.0;
        PauliCosts([i, z, y, x])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Metric {
    /// Number of flipped symplectic bits (a GF(4) symbol counts its X and Z bits).
    #[default]
    Hamming,
    /// Per-qubit table. Binary sections pair bit `2c` (X) with bit `2c+1` (Z).
    Pauli(PauliCosts),
}

/// Fields whose symbols pack into a few bits.
pub trait Symbol: Field {
    const BITS: u32;

    /// Cost of a packed difference of `width` symbols.
    fn section_cost(metric: &Metric, diff: u64, width: usize) -> u64;

    fn pack(symbols: &[Self]) -> u64 {
        symbols.iter().enumerate().fold(0, |acc, (j, s)| acc | (s.index() as u64) << (j as u32 * Self::BITS))
    }

    fn unpack(word: u64, width: usize, out: &mut [Self]) {
        let mask = (1u64 << Self::BITS) - 1;
        for (j, o) in out.iter_mut().enumerate().take(width) {
            *o = Self::from_index(((word >> (j as u32 * Self::BITS)) & mask) as usize);
        }
    }
}

impl Symbol for Gf2 {
    const BITS: u32 = 1;

    fn section_cost(metric: &Metric, diff: u64, width: usize) -> u64 {
        match metric {
            Metric::Hamming => diff.count_ones() as u64,
            Metric::Pauli(costs) => (0..width / 2)
                .map(|c| {
                    let pair = diff >> (2 * c);
                    costs.cost(Pauli::from_bits(pair & 1 == 1, pair & 2 == 2))
                })
                .sum(),
        }
    }
}

impl Symbol for Gf4 {
    const BITS: u32 = 2;

    fn section_cost(metric: &Metric, diff: u64, width: usize) -> u64 {
        (0..width)
            .map(|j| {
                let p = Pauli::from_gf4(Gf4::from_index(((diff >> (2 * j)) & 3) as usize));
                match metric {
                    Metric::Hamming => p.bit_weight() as u64,
                    Metric::Pauli(costs) => costs.cost(p),
                }
            })
            .sum()
    }
}

/// Section costs, tabulated when the section is at most 16 bits wide.
#[derive(Debug, Clone)]
pub struct CostTable<F: Symbol> {
    metric: Metric,
    width: usize,
    table: Option<Vec<u64>>,
    _field: PhantomData<F>,
}

impl<F: Symbol> CostTable<F> {
    pub fn new(metric: Metric, width: usize) -> Self {
        let bits = width as u32 * F::BITS;
        let table = (bits <= 16).then(|| (0..1u64 << bits).map(|d| F::section_cost(&metric, d, width)).collect());
        CostTable { metric, width, table, _field: PhantomData }
    }

    #[inline]
    pub fn cost(&self, diff: u64) -> u64 {
        match &self.table {
            Some(t) => t[diff as usize],
            None => F::section_cost(&self.metric, diff, self.width),
        }
    }

    pub fn metric(&self) -> &Metric {
        &self.metric
    }
}

/// One trellis section as seen by the search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Section {
    pub received: u64,
    /// Only branches whose label equals `received` are allowed.
    pub pinned: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Termination {
    /// The path must end in the zero state.
    #[default]
    Zero,
    /// The path may end in any state.
    Free,
}

/// Survivor path found by [`Trellis::viterbi`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Path {
    pub inputs: Vec<u32>,
    pub labels: Vec<u64>,
    pub metric: u64,
    /// Merges where two candidate paths had equal metric.
    pub ties: u64,
    pub end_state: u32,
}

/// Time-invariant trellis: one branch per (state, input).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trellis<F: Symbol> {
    states: usize,
    inputs: usize,
    width: usize,
    next: Vec<u32>,
    labels: Vec<u64>,
    _field: PhantomData<F>,
}

impl<F: Symbol> Trellis<F> {
    pub fn build(gen: &TransferSystem<F>) -> Result<Self, DecodeError> {
        Self::build_with_cap(gen, STATE_CAP)
    }

    pub fn build_with_cap(gen: &TransferSystem<F>, cap: usize) -> Result<Self, DecodeError> {
        let q = F::ORDER as u128;
        let dim = gen.state_dim();
        let k = gen.inputs();
        let width = gen.outputs();
        let states = q.checked_pow(dim as u32).unwrap_or(u128::MAX);
        if states > cap as u128 {
            return Err(DecodeError::StateCap { states, cap });
        }
        if width as u32 * F::BITS > 64 {
            return Err(DecodeError::FrameLength { found: width, section: 64 / F::BITS as usize });
        }
        let inputs = q.pow(k as u32) as usize;
        let states = states as usize;
        let mut next = Vec::with_capacity(states * inputs);
        let mut labels = Vec::with_capacity(states * inputs);
        let mut regs = vec![F::zero(); dim];
        let mut u = vec![F::zero(); k];
        let mut y = vec![F::zero(); width];
        for s in 0..states {
            for i in 0..inputs {
                decode_index(s, &mut regs);
                decode_index(i, &mut u);
                gen.realization().step(&mut regs, &u, &mut y);
                next.push(encode_index(&regs) as u32);
                labels.push(F::pack(&y));
            }
        }
        Ok(Trellis { states, inputs, width, next, labels, _field: PhantomData })
    }

    pub fn states(&self) -> usize {
        self.states
    }

    /// Branches leaving each state.
    pub fn inputs(&self) -> usize {
        self.inputs
    }

    /// Output symbols per section.
    pub fn width(&self) -> usize {
        self.width
    }

    /// `(next state, packed label)` of a branch.
    pub fn branch(&self, state: usize, input: usize) -> (usize, u64) {
        let b = state * self.inputs + input;
        (self.next[b] as usize, self.labels[b])
    }

    /// Minimum-cost path from the zero state.
    ///
    /// On equal metrics the survivor with the smaller most recent input wins
    /// (inputs compare by packed index), then the smaller predecessor state.
    pub fn viterbi(
        &self,
        sections: &[Section],
        costs: &CostTable<F>,
        termination: Termination,
    ) -> Result<Path, DecodeError> {
        const INF: u64 = u64::MAX;
        let (ns, ni) = (self.states, self.inputs);
        let mut metric = vec![INF; ns];
        metric[0] = 0;
        let mut next_metric = vec![INF; ns];
        let mut back_state = vec![0u32; sections.len() * ns];
        let mut back_input = vec![u32::MAX; sections.len() * ns];
        let mut ties = 0u64;
        for (t, sec) in sections.iter().enumerate() {
            next_metric.iter_mut().for_each(|m| *m = INF);
            let bs = &mut back_state[t * ns..(t + 1) * ns];
            let bi = &mut back_input[t * ns..(t + 1) * ns];
            for s in 0..ns {
                let m = metric[s];
                if m == INF {
                    continue;
                }
                for i in 0..ni {
                    let b = s * ni + i;
                    let label = self.labels[b];
                    let c = if sec.pinned {
                        if label != sec.received {
                            continue;
                        }
                        0
                    } else {
                        costs.cost(label ^ sec.received)
                    };
                    let cand = m + c;
                    let to = self.next[b] as usize;
                    let old = next_metric[to];
                    let better = if cand == old {
                        ties += 1;
                        (i as u32, s as u32) < (bi[to], bs[to])
                    } else {
                        cand < old
                    };
                    if better {
                        next_metric[to] = cand;
                        bs[to] = s as u32;
                        bi[to] = i as u32;
                    }
                }
            }
            std::mem::swap(&mut metric, &mut next_metric);
        }
        let end = match termination {
            Termination::Zero => 0,
            Termination::Free => (0..ns).min_by_key(|&s| (metric[s], s)).unwrap_or(0),
        };
        if metric[end] == INF {
            return Err(DecodeError::NoPath);
        }
        let mut inputs = vec![0u32; sections.len()];
        let mut labels = vec![0u64; sections.len()];
        let mut s = end;
        for t in (0..sections.len()).rev() {
            let prev = back_state[t * ns + s] as usize;
            let i = back_input[t * ns + s] as usize;
            inputs[t] = i as u32;
            labels[t] = self.labels[prev * ni + i];
            s = prev;
        }
        debug_assert_eq!(s, 0);
        Ok(Path { inputs, labels, metric: metric[end], ties, end_state: end as u32 })
    }
}

/// Symbols of `index` written base `ORDER`, least significant first.
fn decode_index<F: Field>(mut index: usize, out: &mut [F]) {
    for o in out.iter_mut() {
        *o = F::from_index(index % F::ORDER);
        index /= F::ORDER;
    }
}

fn encode_index<F: Field>(symbols: &[F]) -> usize {
    symbols.iter().rev().fold(0, |acc, s| acc * F::ORDER + s.index())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::Role;
    use crate::RatMatrix2;

    #[test]
    fn index_round_trip() {
        let mut v = [Gf4::ZERO; 3];
        for i in 0..64 {
            decode_index(i, &mut v);
            assert_eq!(encode_index(&v), i);
        }
    }

    #[test]
    fn pack_round_trip() {
        let syms = [Gf4::OMEGA, Gf4::ZERO, Gf4::OMEGA_BAR, Gf4::ONE];
        let mut back = [Gf4::ZERO; 4];
        Gf4::unpack(Gf4::pack(&syms), 4, &mut back);
        assert_eq!(syms, back);
    }

    #[test]
    fn costs_for_independent_flips() {
        let c = PauliCosts::independent_flips(0.05);
        assert_eq!(c.0[2], 2 * c.0[1]);
        assert_eq!(c.0[1], c.0[3]);
        let probs = [0.9025, 0.0475, 0.0025, 0.0475];
        let d = PauliCosts::from_probabilities(probs);
        assert!(d.0[2].abs_diff(c.0[2]) <= 1);
        assert_eq!(Gf2::section_cost(&Metric::Pauli(c), 0b100111, 6), c.0[2] + c.0[1] + c.0[3]);
    }

    #[test]
    fn identity_generator_is_single_state() {
        let g = TransferSystem::new(RatMatrix2::parse_rows(&[&["1"]]).unwrap(), Role::Gen).unwrap();
        let t = Trellis::build(&g).unwrap();
        assert_eq!((t.states(), t.inputs()), (1, 2));
        assert_eq!(t.branch(0, 1), (0, 1));
    }

    #[test]
    fn state_cap_is_enforced() {
        let g = TransferSystem::new(RatMatrix2::parse_rows(&[&["1+D^21", "1"]]).unwrap(), Role::Gen).unwrap();
        assert!(matches!(Trellis::build(&g), Err(DecodeError::StateCap { .. })));
    }
}
