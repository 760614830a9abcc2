//! Laurent polynomials: finitely many nonzero coefficients at possibly negative powers of `D`.

use std::fmt;
use std::ops::{Add, Mul};

use crate::field::Field;
use crate::poly::Poly;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly<F: Field> {
    /// Power of `D` carried by `coeffs[0]`.
    low: i64,
    coeffs: Vec<F>,
}

impl<F: Field> LaurentPoly<F> {
    pub fn zero() -> Self {
        LaurentPoly { low: 0, coeffs: Vec::new() }
    }

    /// `coeffs[i]` multiplies `D^(low + i)`.
    pub fn from_coeffs(low: i64, mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        let lead_zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros == coeffs.len() {
            return Self::zero();
        }
        coeffs.drain(..lead_zeros);
        LaurentPoly { low: low + lead_zeros as i64, coeffs }
    }

    pub fn monomial(power: i64, c: F) -> Self {
        Self::from_coeffs(power, vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, power: i64) -> F {
        let i = power - self.low;
        if i < 0 {
            return F::zero();
        }
        self.coeffs.get(i as usize).copied().unwrap_or_else(F::zero)
    }

    /// Lowest power with a nonzero coefficient.
    pub fn low_power(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.low)
    }

    pub fn high_power(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    /// Nonzero `(power, coefficient)` pairs in ascending order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, F)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, &c)| (self.low + i as i64, c))
    }

    /// Substitutes `D → 1/D`. An involution.
    pub fn reflect(&self) -> Self {
        match self.high_power() {
            None => Self::zero(),
            Some(high) => {
                LaurentPoly { low: -high, coeffs: self.coeffs.iter().rev().copied().collect() }
            }
        }
    }

    /// The polynomial `D^shift · self`, if that has no negative powers.
    pub fn to_poly_shifted(&self, shift: i64) -> Option<Poly<F>> {
        if self.is_zero() {
            return Some(Poly::zero());
        }
        let low = self.low + shift;
        if low < 0 {
            return None;
        }
        let mut coeffs = vec![F::zero(); low as usize];
        coeffs.extend_from_slice(&self.coeffs);
        Some(Poly::from_coeffs(coeffs))
    }
}

impl<F: Field> From<&Poly<F>> for LaurentPoly<F> {
    fn from(p: &Poly<F>) -> Self {
        LaurentPoly::from_coeffs(0, p.coeffs().to_vec())
    }
}

impl<F: Field> Add for &LaurentPoly<F> {
    type Output = LaurentPoly<F>;
    fn add(self, rhs: &LaurentPoly<F>) -> LaurentPoly<F> {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let low = self.low.min(rhs.low);
        let high = self.high_power().unwrap().max(rhs.high_power().unwrap());
        let coeffs = (low..=high).map(|p| self.coeff(p) + rhs.coeff(p)).collect();
        LaurentPoly::from_coeffs(low, coeffs)
    }
}

impl<F: Field> Mul for &LaurentPoly<F> {
    type Output = LaurentPoly<F>;
    fn mul(self, rhs: &LaurentPoly<F>) -> LaurentPoly<F> {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut coeffs = vec![F::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        LaurentPoly::from_coeffs(self.low + rhs.low, coeffs)
    }
}

impl<F: Field> fmt::Display for LaurentPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (p, c) in self.terms() {
            if !first {
                write!(f, "+")?;
            }
            first = false;
            let coef = if c.is_one() { String::new() } else { format!("{c}*") };
            match p {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{coef}D")?,
                _ => write!(f, "{coef}D^{p}")?,
            }
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for LaurentPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
