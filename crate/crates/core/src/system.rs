//! Syndrome former, inverse syndrome former and generator as streaming circuits.
//!
//! Streams are row vectors: a system with matrix `M` (`inputs × outputs`) maps
//! the input sequence `u(D)` to `u(D)·M(D)`. Symbols are flattened time-major,
//! so step `t` of an `a`-ary stream occupies `[t·a, (t+1)·a)`.

use std::fmt;

use crate::error::{AlgebraError, SystemError};
use crate::field::Field;
use crate::matrix::{Limits, RatMatrix};
use crate::poly::Poly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    /// Syndrome former, `Hᵀ`.
    Sf,
    /// Inverse syndrome former, a left inverse of `Hᵀ`.
    Isf,
    /// Generator of the code, `G·Hᵀ = 0`.
    Gen,
    /// Any other linear map (stream re-packing and the like).
    Map,
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Role::Sf => "SF",
            Role::Isf => "ISF",
            Role::Gen => "GEN",
            Role::Map => "MAP",
        };
        f.write_str(s)
    }
}

/// Controller-form circuit for one input row: `v(t) = (u(t) − Σ_{d≥1} q_d·v(t−d)) / q_0`
/// and `y_j(t) += Σ_d n_j[d]·v(t−d)`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct RowCircuit<F: Field> {
    q0_inv: F,
    /// `q_1..q_L` (padded with zeros to the memory length).
    feedback: Vec<F>,
    /// Per output, `n_j[0..=L]`.
    taps: Vec<Vec<F>>,
    memory: usize,
    offset: usize,
}

/// State-space realization of a causal rational matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Realization<F: Field> {
    inputs: usize,
    outputs: usize,
    rows: Vec<RowCircuit<F>>,
    state_dim: usize,
}

impl<F: Field> Realization<F> {
    pub fn new(matrix: &RatMatrix<F>) -> Result<Self, SystemError> {
        let mut rows = Vec::with_capacity(matrix.rows());
        let mut offset = 0;
        for i in 0..matrix.rows() {
            let row = matrix.row(i);
            if let Some(bad) = row.iter().find(|x| !x.is_causal()) {
                return Err(SystemError::NonCausal(bad.to_string()));
            }
            let den = row.iter().fold(Poly::one(), |acc, x| acc.lcm(x.den()));
            let nums: Vec<Poly<F>> = row.iter().map(|x| x.num() * &den.exact_div(x.den()).unwrap()).collect();
            let memory = nums.iter().filter_map(|p| p.degree()).max().unwrap_or(0).max(den.degree().unwrap_or(0));
            let feedback = (1..=memory).map(|d| den.coeff(d)).collect();
            let taps = nums.iter().map(|p| (0..=memory).map(|d| p.coeff(d)).collect()).collect();
            rows.push(RowCircuit { q0_inv: den.coeff(0).inv().unwrap(), feedback, taps, memory, offset });
            offset += memory;
        }
        Ok(Realization { inputs: matrix.rows(), outputs: matrix.cols(), rows, state_dim: offset })
    }

    pub fn inputs(&self) -> usize {
        self.inputs
    }

    pub fn outputs(&self) -> usize {
        self.outputs
    }

    /// Number of delay cells (field symbols of state).
    pub fn state_dim(&self) -> usize {
        self.state_dim
    }

    /// Advances one time step. `state` has `state_dim()` symbols.
    pub fn step(&self, state: &mut [F], input: &[F], output: &mut [F]) {
        debug_assert_eq!(input.len(), self.inputs);
        debug_assert_eq!(output.len(), self.outputs);
        output.iter_mut().for_each(|y| *y = F::zero());
        for (row, &u) in self.rows.iter().zip(input) {
            let regs = &mut state[row.offset..row.offset + row.memory];
            let mut v = u;
            for (q, &r) in row.feedback.iter().zip(regs.iter()) {
                v -= *q * r;
            }
            v *= row.q0_inv;
            for (y, taps) in output.iter_mut().zip(&row.taps) {
                let mut acc = taps[0] * v;
                for (t, &r) in taps[1..].iter().zip(regs.iter()) {
                    acc += *t * r;
                }
                *y += acc;
            }
            if row.memory > 0 {
                regs.rotate_right(1);
                regs[0] = v;
            }
        }
    }
}

/// Per-run streaming state; one system can serve many runs at once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StreamState<F: Field> {
    regs: Vec<F>,
}

impl<F: Field> StreamState<F> {
    pub fn registers(&self) -> &[F] {
        &self.regs
    }

    pub fn is_zero(&self) -> bool {
        self.regs.iter().all(|r| r.is_zero())
    }
}

/// A transfer matrix with its streaming circuit.
///
/// The circuit realizes `D^latency · matrix`, which is causal. Streaming an
/// input therefore yields the output of `matrix` delayed by `latency` steps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransferSystem<F: Field> {
    matrix: RatMatrix<F>,
    latency: usize,
    realization: Realization<F>,
    role: Role,
}

impl<F: Field> TransferSystem<F> {
    pub fn new(matrix: RatMatrix<F>, role: Role) -> Result<Self, SystemError> {
        let latency = matrix.causal_shift();
        let realization = Realization::new(&matrix.shift(latency as i64))?;
        Ok(TransferSystem { matrix, latency, realization, role })
    }

    pub fn matrix(&self) -> &RatMatrix<F> {
        &self.matrix
    }

    pub fn latency(&self) -> usize {
        self.latency
    }

    pub fn role(&self) -> Role {
        self.role
    }

    pub fn realization(&self) -> &Realization<F> {
        &self.realization
    }

    pub fn inputs(&self) -> usize {
        self.realization.inputs
    }

    pub fn outputs(&self) -> usize {
        self.realization.outputs
    }

    pub fn state_dim(&self) -> usize {
        self.realization.state_dim
    }

    /// True when every entry is a polynomial (no feedback in the circuit).
    pub fn is_fir(&self) -> bool {
        self.matrix.is_polynomial()
    }

    /// Largest delay of the realized (shifted) matrix; for FIR systems the
    /// impulse response dies out after this many steps.
    pub fn memory(&self) -> usize {
        self.realization.rows.iter().map(|r| r.memory).max().unwrap_or(0)
    }

    pub fn start(&self) -> StreamState<F> {
        StreamState { regs: vec![F::zero(); self.realization.state_dim] }
    }

    pub fn step(&self, state: &mut StreamState<F>, input: &[F], output: &mut [F]) {
        self.realization.step(&mut state.regs, input, output);
    }

    /// Streams `input` from the zero state; output has as many steps as input.
    pub fn run(&self, input: &[F]) -> Result<Vec<F>, SystemError> {
        let a = self.inputs();
        if a == 0 {
            return Err(SystemError::StreamLength { found: input.len(), arity: 0 });
        }
        if !input.len().is_multiple_of(a) {
            return Err(SystemError::StreamLength { found: input.len(), arity: a });
        }
        self.run_for(input, input.len() / a)
    }

    /// Streams `input` followed by zeros for `steps` steps in total.
    pub fn run_for(&self, input: &[F], steps: usize) -> Result<Vec<F>, SystemError> {
        let (a, b) = (self.inputs(), self.outputs());
        if a > 0 && !input.len().is_multiple_of(a) {
            return Err(SystemError::StreamLength { found: input.len(), arity: a });
        }
        let mut state = self.start();
        let mut out = vec![F::zero(); steps * b];
        let zeros = vec![F::zero(); a];
        for t in 0..steps {
            let u = if (t + 1) * a <= input.len() { &input[t * a..(t + 1) * a] } else { &zeros[..] };
            self.step(&mut state, u, &mut out[t * b..(t + 1) * b]);
        }
        Ok(out)
    }
}

/// Checks that `hᵀ` has a left inverse and returns `hᵀ`.
fn transposed_full_rank<F: Field>(h: &RatMatrix<F>) -> Result<RatMatrix<F>, SystemError> {
    let rank = h.rank()?;
    if rank < h.rows() {
        return Err(AlgebraError::RankDeficient { expected: h.rows(), found: rank }.into());
    }
    Ok(h.transpose())
}

/// Syndrome former `Hᵀ` of a polynomial check matrix `H` (`r × w`, full row rank).
pub fn derive_sf<F: Field>(h: &RatMatrix<F>) -> Result<TransferSystem<F>, SystemError> {
    if !h.is_polynomial() {
        return Err(AlgebraError::NotPolynomial.into());
    }
    TransferSystem::new(transposed_full_rank(h)?, Role::Sf)
}

/// Valid left inverses of `Hᵀ` from the available constructions, best first.
///
/// Candidates are ranked FIR before IIR, then by latency, then by total
/// denominator degree, then by total entry order.
pub fn isf_candidates<F: Field>(h: &RatMatrix<F>) -> Result<Vec<RatMatrix<F>>, SystemError> {
    let ht = transposed_full_rank(h)?;
    let limits = Limits::default();
    let mut cands = Vec::new();
    if h.is_polynomial() {
        let (u, t) = ht.unimodular_reduction(&limits)?;
        let l = t.inverse()?.mul(&u.select_rows(0..h.rows()))?;
        cands.push(l);
    }
    cands.push(ht.left_inverse_with(&limits)?);
    if let Ok(mp) = ht.left_inverse_moore_penrose() {
        cands.push(mp);
    }
    let mut checked = Vec::new();
    for l in cands {
        if !l.mul(&ht)?.is_identity() {
            return Err(SystemError::Verification("candidate is not a left inverse".into()));
        }
        if !checked.contains(&l) {
            checked.push(l);
        }
    }
    checked.sort_by_key(isf_rank_key);
    Ok(checked)
}

fn isf_rank_key<F: Field>(l: &RatMatrix<F>) -> (bool, usize, usize, usize) {
    let den: usize = l.entries().map(|x| x.den().degree().unwrap_or(0)).sum();
    let order: usize = l.entries().map(|x| x.order()).sum();
    (!l.is_polynomial(), l.causal_shift(), den, order)
}

/// Inverse syndrome former: the best-ranked left inverse of `Hᵀ`. A FIR
/// choice has its rows reduced modulo the code to lower its degree.
pub fn derive_isf<F: Field>(h: &RatMatrix<F>) -> Result<TransferSystem<F>, SystemError> {
    let best = isf_candidates(h)?.remove(0);
    let best = if best.is_polynomial() && h.rows() < h.cols() {
        let g = generator_matrix(h)?;
        let rows: Vec<_> = best.poly_rows()?.iter().map(|r| g.reduce_row_modulo(r)).collect::<Result<_, _>>()?;
        RatMatrix::from_poly_rows(rows)?
    } else {
        best
    };
    isf_from_matrix(h, best)
}

/// Wraps a caller-supplied left inverse after checking `L·Hᵀ = I`.
pub fn isf_from_matrix<F: Field>(h: &RatMatrix<F>, l: RatMatrix<F>) -> Result<TransferSystem<F>, SystemError> {
    let ok = l.mul(&h.transpose()).map(|p| p.is_identity()).unwrap_or(false);
    if !ok {
        return Err(SystemError::Verification(format!("L·Hᵀ ≠ I for L =\n{l}")));
    }
    TransferSystem::new(l, Role::Isf)
}

/// Minimal basic generator matrix of the code `{c : c·Hᵀ = 0}`.
pub fn generator_matrix<F: Field>(h: &RatMatrix<F>) -> Result<RatMatrix<F>, SystemError> {
    let ht = transposed_full_rank(h)?;
    if ht.rows() == ht.cols() {
        return Ok(RatMatrix::zeros(0, ht.rows()));
    }
    let mut g = ht.null_space_basis()?;
    if !g.minors_gcd()?.is_one() {
        if !h.is_polynomial() {
            return Err(SystemError::Catastrophic(g.minors_gcd()?.to_string()));
        }
        let (u, _) = ht.unimodular_reduction(&Limits::default())?;
        g = u.select_rows(ht.cols()..ht.rows());
    }
    let g = g.row_reduced()?;
    let gcd = g.minors_gcd()?;
    if !gcd.is_one() {
        return Err(SystemError::Catastrophic(gcd.to_string()));
    }
    Ok(g)
}

/// Generator as a feed-forward circuit.
pub fn derive_generator<F: Field>(h: &RatMatrix<F>) -> Result<TransferSystem<F>, SystemError> {
    TransferSystem::new(generator_matrix(h)?, Role::Gen)
}

/// Wraps a caller-supplied generator after checking `G·Hᵀ = 0`, full rank and
/// non-catastrophicity.
pub fn generator_from_matrix<F: Field>(h: &RatMatrix<F>, g: RatMatrix<F>) -> Result<TransferSystem<F>, SystemError> {
    if !g.mul(&h.transpose())?.is_zero() {
        return Err(SystemError::Verification(format!("G·Hᵀ ≠ 0 for G =\n{g}")));
    }
    if g.rank()? != h.cols() - h.rows() {
        return Err(SystemError::Verification("generator rank does not match the code dimension".into()));
    }
    let gcd = g.minors_gcd()?;
    if !gcd.is_monomial() {
        return Err(SystemError::Catastrophic(gcd.to_string()));
    }
    TransferSystem::new(g, Role::Gen)
}

/// Check matrix with its three derived circuits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeBundle<F: Field> {
    check: RatMatrix<F>,
    sf: TransferSystem<F>,
    isf: TransferSystem<F>,
    gen: TransferSystem<F>,
}

impl<F: Field> CodeBundle<F> {
    pub fn derive(check: RatMatrix<F>) -> Result<Self, SystemError> {
        let sf = derive_sf(&check)?;
        let isf = derive_isf(&check)?;
        let gen = derive_generator(&check)?;
        let bundle = CodeBundle { check, sf, isf, gen };
        bundle.verify()?;
        Ok(bundle)
    }

    /// Same code with a different inverse syndrome former.
    pub fn with_isf(&self, l: RatMatrix<F>) -> Result<Self, SystemError> {
        let isf = isf_from_matrix(&self.check, l)?;
        Ok(CodeBundle { isf, ..self.clone() })
    }

    /// Same code with a different generator.
    pub fn with_generator(&self, g: RatMatrix<F>) -> Result<Self, SystemError> {
        let gen = generator_from_matrix(&self.check, g)?;
        Ok(CodeBundle { gen, ..self.clone() })
    }

    /// Re-checks `G·Hᵀ = 0`, `L·Hᵀ = I` and non-catastrophicity.
    pub fn verify(&self) -> Result<(), SystemError> {
        let ht = self.check.transpose();
        if !self.isf.matrix().mul(&ht)?.is_identity() {
            return Err(SystemError::Verification("L·Hᵀ ≠ I".into()));
        }
        if !self.gen.matrix().mul(&ht)?.is_zero() {
            return Err(SystemError::Verification("G·Hᵀ ≠ 0".into()));
        }
        if self.gen.matrix().rows() > 0 {
            let gcd = self.gen.matrix().minors_gcd()?;
            if !gcd.is_monomial() {
                return Err(SystemError::Catastrophic(gcd.to_string()));
            }
        }
        Ok(())
    }

    pub fn check(&self) -> &RatMatrix<F> {
        &self.check
    }

    pub fn sf(&self) -> &TransferSystem<F> {
        &self.sf
    }

    pub fn isf(&self) -> &TransferSystem<F> {
        &self.isf
    }

    pub fn gen(&self) -> &TransferSystem<F> {
        &self.gen
    }

    /// Symbols per section of the code stream.
    pub fn width(&self) -> usize {
        self.check.cols()
    }

    /// Syndrome symbols per section.
    pub fn syndrome_width(&self) -> usize {
        self.check.rows()
    }

    /// Largest degree in the check matrix.
    pub fn check_memory(&self) -> usize {
        self.check.entries().filter_map(|x| x.num().degree()).max().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Gf2, RatMatrix2};

    fn bits(v: &[u8]) -> Vec<Gf2> {
        v.iter().map(|&b| Gf2::new(b != 0)).collect()
    }

    #[test]
    fn recursive_single_state() {
        let sys = TransferSystem::new(RatMatrix2::parse_rows(&[&["1/(1+D)"]]).unwrap(), Role::Map).unwrap();
        assert_eq!(sys.state_dim(), 1);
        let out = sys.run_for(&bits(&[1]), 6).unwrap();
        assert_eq!(out, bits(&[1, 1, 1, 1, 1, 1]));
    }

    #[test]
    fn latency_is_extracted() {
        let m = RatMatrix2::parse_rows(&[&["1/(D+D^3)", "1/(D^2+D^3)"]]).unwrap();
        let sys = TransferSystem::new(m, Role::Isf).unwrap();
        assert_eq!(sys.latency(), 2);
        assert!(!sys.is_fir());
    }

    #[test]
    fn non_causal_without_advance_is_impossible() {
        // every entry gets a causal shift, so `new` never sees a D in a denominator
        let m = RatMatrix2::parse_rows(&[&["1/D"]]).unwrap();
        let sys = TransferSystem::new(m, Role::Map).unwrap();
        assert_eq!(sys.latency(), 1);
        assert!(Realization::new(&RatMatrix2::parse_rows(&[&["1/D"]]).unwrap()).is_err());
    }
}
