//! Dense univariate polynomials in the delay operator `D`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::ParseError;
use crate::field::{Field, Gf2, Gf4};
use crate::laurent::LaurentPoly;

/// A polynomial `Σ c_i D^i` with coefficients stored in ascending order.
///
/// Always kept canonical: no trailing zero coefficients, and the zero
/// polynomial has an empty coefficient list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly<F: Field> {
    coeffs: Vec<F>,
}

impl<F: Field> Poly<F> {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The delay element `D`.
    pub fn d() -> Self {
        Self::monomial(1, F::one())
    }

    /// `c · D^degree`.
    pub fn monomial(degree: usize, c: F) -> Self {
        let mut coeffs = vec![F::zero(); degree + 1];
        coeffs[degree] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Builds a polynomial from the exponents of its unit coefficients.
    pub fn from_exponents(exps: &[usize]) -> Self {
        let len = exps.iter().max().map_or(0, |&e| e + 1);
        let mut coeffs = vec![F::zero(); len];
        for &e in exps {
            coeffs[e] += F::one();
        }
        Self::from_coeffs(coeffs)
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> F {
        self.coeffs.get(i).copied().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, or `None` for the zero polynomial (degree −∞).
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Leading coefficient (zero for the zero polynomial).
    pub fn lead(&self) -> F {
        self.coeffs.last().copied().unwrap_or_else(F::zero)
    }

    /// Largest `a` such that `D^a` divides `self`; `None` for zero.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_monic(&self) -> bool {
        self.lead().is_one()
    }

    /// True when `self = c·D^a` for a nonzero constant `c`.
    pub fn is_monomial(&self) -> bool {
        !self.is_zero() && self.coeffs.iter().filter(|c| !c.is_zero()).count() == 1
    }

    pub fn scale(&self, c: F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly { coeffs: self.coeffs.iter().map(|&x| x * c).collect() }
    }

    /// Scales so the leading coefficient is one. Zero stays zero.
    pub fn monic(&self) -> Self {
        match self.lead().inv() {
            Some(inv) => self.scale(inv),
            None => Self::zero(),
        }
    }

    /// Multiplies by `D^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![F::zero(); k];
        coeffs.extend_from_slice(&self.coeffs);
        Poly { coeffs }
    }

    /// Divides by `D^k`, which must divide `self`.
    pub fn unshift(&self, k: usize) -> Self {
        debug_assert!(self.coeffs.iter().take(k).all(|c| c.is_zero()));
        Poly::from_coeffs(self.coeffs.iter().skip(k).copied().collect())
    }

    /// Euclidean division: `self = q·divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("polynomial division by zero");
        let inv_lead = divisor.lead().inv().expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![F::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i];
            if c.is_zero() {
                continue;
            }
            let q = c * inv_lead;
            quot[i - dd] = q;
            for (j, &dc) in divisor.coeffs.iter().enumerate() {
                rem[i - dd + j] -= q * dc;
            }
        }
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    /// Exact division; `None` when the remainder is nonzero.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor; `gcd(a, 0) = monic(a)`, `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended Euclid: returns `(g, s, t)` with `s·self + t·other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s2 = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s2);
            let t2 = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t2);
        }
        match r0.lead().inv() {
            Some(inv) => (r0.scale(inv), s0.scale(inv), t0.scale(inv)),
            None => (r0, s0, t0),
        }
    }

    pub fn lcm(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let g = self.gcd(other);
        (self * &other.exact_div(&g).expect("gcd divides")).monic()
    }

    /// Substitutes `D → D^k`.
    pub fn compose_power(&self, k: usize) -> Self {
        assert!(k >= 1);
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![F::zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c;
        }
        Poly { coeffs }
    }

    /// Splits into polyphase components `(even, odd)` with
    /// `self(D) = even(D²) + D·odd(D²)`.
    pub fn polyphase(&self) -> (Self, Self) {
        let even = self.coeffs.iter().step_by(2).copied().collect();
        let odd = self.coeffs.iter().skip(1).step_by(2).copied().collect();
        (Poly::from_coeffs(even), Poly::from_coeffs(odd))
    }

    /// Substitutes `D → 1/D`, producing a Laurent polynomial.
    pub fn reflect(&self) -> LaurentPoly<F> {
        let Some(deg) = self.degree() else {
            return LaurentPoly::zero();
        };
        let rev: Vec<F> = self.coeffs.iter().rev().copied().collect();
        LaurentPoly::from_coeffs(-(deg as i64), rev)
    }

    /// Applies the Frobenius map to every coefficient.
    pub fn conj(&self) -> Self {
        Poly { coeffs: self.coeffs.iter().map(|c| c.conj()).collect() }
    }

    pub fn eval(&self, x: F) -> F {
        self.coeffs.iter().rev().fold(F::zero(), |acc, &c| acc * x + c)
    }

    pub fn weight(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }
}

impl Poly<Gf2> {
    /// Embeds a binary polynomial into GF(4)[D].
    pub fn lift(&self) -> Poly<Gf4> {
        Poly::from_coeffs(self.coeffs.iter().map(|&c| Gf4::from(c)).collect())
    }
}

impl Poly<Gf4> {
    /// Splits `self = a + ω·b` into binary polynomials `(a, b)`.
    pub fn split_coords(&self) -> (Poly<Gf2>, Poly<Gf2>) {
        let (a, b): (Vec<Gf2>, Vec<Gf2>) = self.coeffs.iter().map(|c| c.coords()).unzip();
        (Poly::from_coeffs(a), Poly::from_coeffs(b))
    }
}

impl<F: Field> Default for Poly<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: Field> Zero for Poly<F> {
    fn zero() -> Self {
        Poly::zero()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<F: Field> One for Poly<F> {
    fn one() -> Self {
        Poly::one()
    }
}

impl<F: Field> Add for &Poly<F> {
    type Output = Poly<F>;
    fn add(self, rhs: &Poly<F>) -> Poly<F> {
        let (long, short) =
            if self.coeffs.len() >= rhs.coeffs.len() { (self, rhs) } else { (rhs, self) };
        let mut coeffs = long.coeffs.clone();
        for (c, &s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        Poly::from_coeffs(coeffs)
    }
}

impl<F: Field> Sub for &Poly<F> {
    type Output = Poly<F>;
    fn sub(self, rhs: &Poly<F>) -> Poly<F> {
        self + &(-rhs)
    }
}

impl<F: Field> Neg for &Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        Poly { coeffs: self.coeffs.iter().map(|&c| -c).collect() }
    }
}

impl<F: Field> Mul for &Poly<F> {
    type Output = Poly<F>;
    fn mul(self, rhs: &Poly<F>) -> Poly<F> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![F::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<F: Field> $tr for Poly<F> {
            type Output = Poly<F>;
            fn $m(self, rhs: Poly<F>) -> Poly<F> {
                (&self).$m(&rhs)
            }
        }
        impl<F: Field> $tr<&Poly<F>> for Poly<F> {
            type Output = Poly<F>;
            fn $m(self, rhs: &Poly<F>) -> Poly<F> {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<F: Field> Neg for Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        -&self
    }
}

/// Writes a coefficient in front of `D^i`, omitting a unit coefficient.
fn write_term<F: Field>(f: &mut fmt::Formatter<'_>, c: F, i: usize) -> fmt::Result {
    match (c.is_one(), i) {
        (_, 0) => write!(f, "{c}"),
        (true, 1) => write!(f, "D"),
        (true, _) => write!(f, "D^{i}"),
        (false, 1) => write!(f, "{c}*D"),
        (false, _) => write!(f, "{c}*D^{i}"),
    }
}

impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            write_term(f, c, i)?;
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub(crate) fn parse_coefficient<F: Field>(s: &str) -> Option<F> {
    F::elements().find(|c| c.to_string() == s)
}

impl<F: Field> FromStr for Poly<F> {
    type Err = ParseError;

    /// Parses the canonical syntax produced by `Display`, e.g. `1+D+D^3` or `w*D+w2`.
    fn from_str(s: &str) -> Result<Self, ParseError> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(ParseError::new("empty polynomial"));
        }
        let mut coeffs: Vec<F> = Vec::new();
        for term in s.split('+') {
            let bad = || ParseError::new(format!("bad polynomial term `{term}`"));
            let (c, power) = match term.split_once('D') {
                None => (parse_coefficient::<F>(term).ok_or_else(bad)?, 0),
                Some((pre, post)) => {
                    let c = match pre {
                        "" => F::one(),
                        p => parse_coefficient::<F>(p.strip_suffix('*').ok_or_else(bad)?)
                            .ok_or_else(bad)?,
                    };
                    let power = match post {
                        "" => 1,
                        p => p.strip_prefix('^').and_then(|e| e.parse().ok()).ok_or_else(bad)?,
                    };
                    (c, power)
                }
            };
            if coeffs.len() <= power {
                coeffs.resize(power + 1, F::zero());
            }
            coeffs[power] += c;
        }
        Ok(Poly::from_coeffs(coeffs))
    }
}
