//! `[n,k,m]` quantum convolutional codes given by their block-0 generators.
//!
//! Generator `i` is a Pauli string of `n(m+1)` symbols; symbol `c` of block `b`
//! contributes the coefficient of `D^b` to column `c` of `P(D)` (X part) and
//! `Q(D)` (Z part).
//!
//! Syndromes use the delay convention: syndrome position `j` of generator `i`
//! is
//!
//! ```text
//! s_{i,j} = Σ_b Σ_c  x_{(j−b)n+c}·Q_{i,c}[b]  +  z_{(j−b)n+c}·P_{i,c}[b]
//! ```
//!
//! so that a frame `e(D)` has syndrome `e(D)·H_s(D)ᵀ` for the block check
//! matrix `H_s` (see [`StabilizerSpec::block_check`]).

use std::fmt;
use std::str::FromStr;

use crate::dense;
use crate::error::StabilizerError;
use crate::field::{Gf2, Gf4};
use crate::laurent::LaurentPoly;
use crate::matrix::Substitution;
use crate::pauli::{ErrorFrame, Pauli};
use crate::{Laurent2, Poly2, RatFn2, RatFn4, RatMatrix2, RatMatrix4};

#[derive(Clone, PartialEq, Eq)]
pub struct StabilizerSpec {
    n: usize,
    k: usize,
    m: usize,
    generators: Vec<Vec<Pauli>>,
    p: Vec<Vec<Poly2>>,
    q: Vec<Vec<Poly2>>,
}

/// Outcome of the commutation check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SymplecticCheck {
    Commuting,
    /// Entry `(i, j)` of the commutation matrix is the nonzero `value`;
    /// the coefficient of `D^s` is the symplectic product of generator `i`
    /// shifted by `s` blocks with generator `j`.
    Witness { i: usize, j: usize, value: Laurent2 },
}

impl SymplecticCheck {
    pub fn is_commuting(&self) -> bool {
        matches!(self, SymplecticCheck::Commuting)
    }
}

impl fmt::Display for SymplecticCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymplecticCheck::Commuting => write!(f, "generators commute"),
            SymplecticCheck::Witness { i, j, value } => {
                write!(f, "generators {} and {} fail to commute: entry ({}, {}) = {}", i + 1, j + 1, i + 1, j + 1, value)
            }
        }
    }
}

/// GF(4) form of a code whose generator row space is closed under scaling by ω.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuaternaryForm {
    /// `(n−k)/2 × n` polynomial transfer matrix.
    pub hq: RatMatrix4,
    /// `coeffs · hq` reproduces the GF(4) generator rows `ω·P + ω̄·Q`.
    pub coeffs: RatMatrix4,
    /// Binary map from the GF(4) syndrome coordinates `(u_1, v_1, …)` (where
    /// `σ_l = u_l + v_l·ω`) to the binary syndrome streams `s`.
    pub unpack: RatMatrix2,
}

impl StabilizerSpec {
    pub fn new(n: usize, k: usize, m: usize, generators: Vec<Vec<Pauli>>) -> Result<Self, StabilizerError> {
        if n == 0 {
            return Err(StabilizerError::Parameters("n must be positive".into()));
        }
        if k >= n {
            return Err(StabilizerError::Parameters(format!("k = {k} must be smaller than n = {n}")));
        }
        if generators.len() != n - k {
            return Err(StabilizerError::CountMismatch { expected: n - k, found: generators.len() });
        }
        let len = n * (m + 1);
        for (index, g) in generators.iter().enumerate() {
            if g.len() != len {
                return Err(StabilizerError::WrongLength { index: index + 1, expected: len, found: g.len() });
            }
        }
        let mut p = vec![vec![Poly2::zero(); n]; n - k];
        let mut q = vec![vec![Poly2::zero(); n]; n - k];
        for (i, g) in generators.iter().enumerate() {
            for c in 0..n {
                let xs: Vec<Gf2> = (0..=m).map(|b| Gf2::new(g[b * n + c].bits().0)).collect();
                let zs: Vec<Gf2> = (0..=m).map(|b| Gf2::new(g[b * n + c].bits().1)).collect();
                p[i][c] = Poly2::from_coeffs(xs);
                q[i][c] = Poly2::from_coeffs(zs);
            }
        }
        let spec = StabilizerSpec { n, k, m, generators, p, q };
        spec.check_independent()?;
        Ok(spec)
    }

    pub fn parse(text: &str) -> Result<Self, StabilizerError> {
        let mut header: Option<(usize, usize, usize)> = None;
        let mut gens = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let line_no = lineno + 1;
            if header.is_none() {
                header = Some(parse_header(line).map_err(|msg| StabilizerError::Syntax { line: line_no, msg })?);
                continue;
            }
            let index = gens.len() + 1;
            let g = line
                .chars()
                .map(|c| Pauli::from_symbol(c).ok_or(StabilizerError::InvalidSymbol { index, symbol: c }))
                .collect::<Result<Vec<_>, _>>()?;
            gens.push(g);
        }
        let (n, k, m) = header.ok_or(StabilizerError::Syntax { line: 1, msg: "missing `qcc n=.. k=.. m=..` header".into() })?;
        Self::new(n, k, m, gens)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Number of generators, `n − k`.
    pub fn r(&self) -> usize {
        self.n - self.k
    }

    pub fn generators(&self) -> &[Vec<Pauli>] {
        &self.generators
    }

    pub fn p(&self) -> RatMatrix2 {
        RatMatrix2::from_poly_rows(self.p.clone()).unwrap()
    }

    pub fn q(&self) -> RatMatrix2 {
        RatMatrix2::from_poly_rows(self.q.clone()).unwrap()
    }

    /// A copy with generator `index`'s symbol at `pos` replaced, without validation
    /// beyond length and count. Used to build deliberately broken specs.
    pub fn with_symbol(&self, index: usize, pos: usize, p: Pauli) -> Result<Self, StabilizerError> {
        let mut gens = self.generators.clone();
        gens[index][pos] = p;
        Self::new(self.n, self.k, self.m, gens)
    }

    fn check_independent(&self) -> Result<(), StabilizerError> {
        let rows: Vec<Vec<Gf2>> = self
            .generators
            .iter()
            .map(|g| {
                g.iter()
                    .flat_map(|p| {
                        let (x, z) = p.bits();
                        [Gf2::new(x), Gf2::new(z)]
                    })
                    .collect()
            })
            .collect();
        let rank = dense::rank(&rows);
        if rank < rows.len() {
            return Err(StabilizerError::Dependent { rank, count: rows.len() });
        }
        let rank = self.block_check().rank()?;
        if rank < self.r() {
            return Err(StabilizerError::Dependent { rank, count: self.r() });
        }
        Ok(())
    }

    /// Checks that every generator commutes with every block shift of every
    /// generator: `Λ(D) = P(D)Q(1/D)ᵀ + Q(D)P(1/D)ᵀ = 0`.
    pub fn check_symplectic(&self) -> SymplecticCheck {
        let r = self.r();
        for i in 0..r {
            for j in 0..r {
                let mut acc = LaurentPoly::zero();
                for c in 0..self.n {
                    let a = &LaurentPoly::from(&self.p[i][c]) * &self.q[j][c].reflect();
                    let b = &LaurentPoly::from(&self.q[i][c]) * &self.p[j][c].reflect();
                    acc = &(&acc + &a) + &b;
                }
                if !acc.is_zero() {
                    return SymplecticCheck::Witness { i, j, value: acc };
                }
            }
        }
        SymplecticCheck::Commuting
    }

    /// Classical transfer polynomial `H_b(D) = P(D²) + D·Q(D²)`.
    pub fn to_binary_transfer(&self) -> RatMatrix2 {
        let p2 = self.p().substitute(Substitution::Square);
        let q2 = self.q().substitute(Substitution::Square).shift(1);
        p2.add(&q2).unwrap()
    }

    /// Block check matrix `H_s(D)`, `(n−k) × 2n`: column `2c` is `Q_c`, column
    /// `2c+1` is `P_c`. These are the odd and even polyphase components of `H_b`.
    pub fn block_check(&self) -> RatMatrix2 {
        let rows = (0..self.r())
            .map(|i| {
                (0..self.n)
                    .flat_map(|c| [RatFn2::from(&self.q[i][c]), RatFn2::from(&self.p[i][c])])
                    .collect()
            })
            .collect();
        RatMatrix2::from_rows(rows).unwrap()
    }

    /// Generator rows over GF(4): entry `(i, c)` is `ω·P_{i,c} + ω̄·Q_{i,c}`.
    pub fn quaternary_rows(&self) -> RatMatrix4 {
        let rows = (0..self.r())
            .map(|i| {
                (0..self.n)
                    .map(|c| {
                        let v = &self.p[i][c].lift().scale(Gf4::OMEGA) + &self.q[i][c].lift().scale(Gf4::OMEGA_BAR);
                        RatFn4::from(v)
                    })
                    .collect()
            })
            .collect();
        RatMatrix4::from_rows(rows).unwrap()
    }

    /// GF(4) transfer matrix, available when the generator row space over
    /// GF(4)(D) has exactly half the binary dimension.
    pub fn to_quaternary_transfer(&self) -> Result<QuaternaryForm, StabilizerError> {
        let rows = self.quaternary_rows();
        let (rref, pivots) = rows.rref()?;
        let t = pivots.len();
        if 2 * t != self.r() {
            return Err(StabilizerError::NotF4Linear);
        }
        let hq = rref.select_rows(0..t).normalize_rows().row_reduced()?;
        let right_inv = hq.transpose().left_inverse()?.transpose();
        let coeffs = rows.mul(&right_inv)?;
        if coeffs.mul(&hq)? != rows {
            return Err(StabilizerError::NotF4Linear);
        }
        let mut unpack = RatMatrix2::zeros(2 * t, self.r());
        for i in 0..self.r() {
            for l in 0..t {
                let (a, b) = coeffs.get(i, l).split_coords();
                unpack.set(2 * l, i, b.clone());
                unpack.set(2 * l + 1, i, &a + &b);
            }
        }
        Ok(QuaternaryForm { hq, coeffs, unpack })
    }

    /// Syndrome bits of a frame whose length is a whole number of blocks.
    ///
    /// Output is ordered by block position `j`, then generator `i`.
    pub fn syndrome_of(&self, e: &ErrorFrame) -> Result<Vec<u8>, StabilizerError> {
        let (n, r) = (self.n, self.r());
        if !e.qubits().is_multiple_of(n) {
            return Err(StabilizerError::FrameLength { found: e.qubits(), unit: n });
        }
        let blocks = e.qubits() / n;
        let bits = e.bits();
        let mut s = vec![0u8; blocks * r];
        for j in 0..blocks {
            for b in 0..=self.m.min(j) {
                let base = 2 * (j - b) * n;
                for (i, g) in self.generators.iter().enumerate() {
                    let mut acc = 0u8;
                    for c in 0..n {
                        let (gx, gz) = g[b * n + c].bits();
                        acc ^= bits[base + 2 * c] & gz as u8;
                        acc ^= bits[base + 2 * c + 1] & gx as u8;
                    }
                    s[j * r + i] ^= acc;
                }
            }
        }
        Ok(s)
    }

    /// Qubits of all-identity padding appended to each frame: `n(m+1)`.
    pub fn padding_qubits(&self) -> usize {
        self.n * (self.m + 1)
    }
}

fn parse_header(line: &str) -> Result<(usize, usize, usize), String> {
    let mut tokens = line.split_whitespace();
    if tokens.next() != Some("qcc") {
        return Err("expected header `qcc n=<int> k=<int> m=<int>`".into());
    }
    let (mut n, mut k, mut m) = (None, None, None);
    for tok in tokens {
        let (key, val) = tok.split_once('=').ok_or_else(|| format!("malformed header field {tok:?}"))?;
        let v: usize = val.parse().map_err(|_| format!("invalid integer in {tok:?}"))?;
        let slot = match key {
            "n" => &mut n,
            "k" => &mut k,
            "m" => &mut m,
            _ => return Err(format!("unknown header field {key:?}")),
        };
        if slot.replace(v).is_some() {
            return Err(format!("duplicate header field {key:?}"));
        }
    }
    match (n, k, m) {
        (Some(n), Some(k), Some(m)) => Ok((n, k, m)),
        _ => Err("header needs n, k and m".into()),
    }
}

impl FromStr for StabilizerSpec {
    type Err = StabilizerError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

impl fmt::Display for StabilizerSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "qcc n={} k={} m={}", self.n, self.k, self.m)?;
        for g in &self.generators {
            let s: String = g.iter().map(|p| p.symbol()).collect();
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for StabilizerSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
