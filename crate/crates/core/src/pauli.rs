//! Single-qubit Pauli operators and interleaved binary error frames.

use std::fmt;
use std::str::FromStr;

use crate::error::{ParseError, StabilizerError};
use crate::field::{Field, Gf2, Gf4};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    /// Symplectic encoding `(x | z)`.
    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Z => (false, true),
            Pauli::Y => (true, true),
        }
    }

    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (false, true) => Pauli::Z,
            (true, true) => Pauli::Y,
        }
    }

    /// GF(4) label: I → 0, Y → 1, X → ω, Z → ω̄.
    pub fn to_gf4(self) -> Gf4 {
        match self {
            Pauli::I => Gf4::ZERO,
            Pauli::Y => Gf4::ONE,
            Pauli::X => Gf4::OMEGA,
            Pauli::Z => Gf4::OMEGA_BAR,
        }
    }

    pub fn from_gf4(a: Gf4) -> Self {
        match a.index() {
            0 => Pauli::I,
            1 => Pauli::Y,
            2 => Pauli::X,
            _ => Pauli::Z,
        }
    }

    /// Number of nonzero symplectic components (Y counts twice).
    pub fn bit_weight(self) -> usize {
        let (x, z) = self.bits();
        x as usize + z as usize
    }

    /// Product up to phase.
    pub fn mul(self, other: Pauli) -> Pauli {
        let (a, b) = self.bits();
        let (c, d) = other.bits();
        Pauli::from_bits(a ^ c, b ^ d)
    }

    /// True when the two operators anticommute.
    pub fn anticommutes(self, other: Pauli) -> bool {
        let (a, b) = self.bits();
        let (c, d) = other.bits();
        (a & d) ^ (b & c)
    }

    pub fn symbol(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_symbol(c: char) -> Option<Self> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }
}

impl fmt::Display for Pauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// A frame of `qubits()` qubit errors stored as interleaved bits:
/// bit `2i` is the X component of qubit `i`, bit `2i+1` its Z component.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ErrorFrame {
    bits: Vec<u8>,
}

impl ErrorFrame {
    pub fn identity(qubits: usize) -> Self {
        ErrorFrame { bits: vec![0; 2 * qubits] }
    }

    /// Builds a frame from 0/1 values; any nonzero byte counts as 1.
    pub fn from_bits(bits: Vec<u8>) -> Result<Self, StabilizerError> {
        if !bits.len().is_multiple_of(2) {
            return Err(StabilizerError::FrameLength { found: bits.len(), unit: 2 });
        }
        Ok(ErrorFrame { bits: bits.into_iter().map(|b| (b != 0) as u8).collect() })
    }

    pub fn from_paulis(ps: &[Pauli]) -> Self {
        let mut bits = Vec::with_capacity(2 * ps.len());
        for p in ps {
            let (x, z) = p.bits();
            bits.push(x as u8);
            bits.push(z as u8);
        }
        ErrorFrame { bits }
    }

    pub fn from_gf4(symbols: &[Gf4]) -> Self {
        let ps: Vec<Pauli> = symbols.iter().map(|&a| Pauli::from_gf4(a)).collect();
        Self::from_paulis(&ps)
    }

    pub fn qubits(&self) -> usize {
        self.bits.len() / 2
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn pauli(&self, i: usize) -> Pauli {
        Pauli::from_bits(self.bits[2 * i] != 0, self.bits[2 * i + 1] != 0)
    }

    pub fn set_pauli(&mut self, i: usize, p: Pauli) {
        let (x, z) = p.bits();
        self.bits[2 * i] = x as u8;
        self.bits[2 * i + 1] = z as u8;
    }

    pub fn to_paulis(&self) -> Vec<Pauli> {
        (0..self.qubits()).map(|i| self.pauli(i)).collect()
    }

    pub fn to_gf4(&self) -> Vec<Gf4> {
        (0..self.qubits()).map(|i| self.pauli(i).to_gf4()).collect()
    }

    pub fn to_gf2(&self) -> Vec<Gf2> {
        self.bits.iter().map(|&b| Gf2::new(b != 0)).collect()
    }

    /// Appends `qubits` identity qubits.
    pub fn padded(&self, qubits: usize) -> Self {
        let mut bits = self.bits.clone();
        bits.resize(bits.len() + 2 * qubits, 0);
        ErrorFrame { bits }
    }

    /// The first `qubits` qubits.
    pub fn truncated(&self, qubits: usize) -> Self {
        ErrorFrame { bits: self.bits[..2 * qubits].to_vec() }
    }

    pub fn xor(&self, other: &Self) -> Self {
        assert_eq!(self.bits.len(), other.bits.len(), "frame length mismatch");
        ErrorFrame { bits: self.bits.iter().zip(&other.bits).map(|(a, b)| a ^ b).collect() }
    }

    /// Number of set bits.
    pub fn bit_weight(&self) -> usize {
        self.bits.iter().filter(|&&b| b != 0).count()
    }

    /// Number of non-identity qubits.
    pub fn pauli_weight(&self) -> usize {
        (0..self.qubits()).filter(|&i| self.pauli(i) != Pauli::I).count()
    }

    /// Qubit positions where the two frames carry different Paulis.
    pub fn mismatches(&self, other: &Self) -> usize {
        assert_eq!(self.bits.len(), other.bits.len(), "frame length mismatch");
        self.bits.chunks(2).zip(other.bits.chunks(2)).filter(|(a, b)| a != b).count()
    }
}

impl fmt::Display for ErrorFrame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in self.to_paulis() {
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for ErrorFrame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ErrorFrame({self})")
    }
}

impl FromStr for ErrorFrame {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let ps = s
            .trim()
            .chars()
            .map(|c| Pauli::from_symbol(c).ok_or_else(|| ParseError::new(format!("invalid Pauli symbol {c:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ErrorFrame::from_paulis(&ps))
    }
}
