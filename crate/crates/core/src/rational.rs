//! Rational functions in `D`, kept in coprime form with a monic denominator.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{AlgebraError, ParseError};
use crate::field::{Field, Gf2, Gf4};
use crate::laurent::LaurentPoly;
use crate::poly::Poly;

/// `num / den` with `gcd(num, den) = 1` and `den` monic.
///
/// Structural equality is semantic equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFn<F: Field> {
    num: Poly<F>,
    den: Poly<F>,
}

impl<F: Field> RatFn<F> {
    pub fn new(num: Poly<F>, den: Poly<F>) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::ZeroDenominator);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly<F>, den: Poly<F>) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let mut num = num.exact_div(&g).expect("gcd divides numerator");
        let mut den = den.exact_div(&g).expect("gcd divides denominator");
        let inv = den.lead().inv().expect("nonzero denominator");
        num = num.scale(inv);
        den = den.scale(inv);
        RatFn { num, den }
    }

    pub fn zero() -> Self {
        RatFn { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        RatFn { num: Poly::one(), den: Poly::one() }
    }

    pub fn constant(c: F) -> Self {
        Self::from(Poly::constant(c))
    }

    pub fn num(&self) -> &Poly<F> {
        &self.num
    }

    pub fn den(&self) -> &Poly<F> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_poly(&self) -> Option<&Poly<F>> {
        self.is_polynomial().then_some(&self.num)
    }

    /// Realizable by a causal circuit: the denominator has a nonzero constant term.
    pub fn is_causal(&self) -> bool {
        !self.den.coeff(0).is_zero()
    }

    /// Power of `D` dividing the denominator.
    pub fn den_valuation(&self) -> usize {
        self.den.valuation().unwrap_or(0)
    }

    /// Size measure used for pivot choice: sum of numerator and denominator degrees.
    pub fn complexity(&self) -> usize {
        self.num.degree().unwrap_or(0) + self.den.degree().unwrap_or(0)
    }

    /// `max(deg num, deg den)`, the number of delay elements a direct realization needs.
    pub fn order(&self) -> usize {
        self.num.degree().unwrap_or(0).max(self.den.degree().unwrap_or(0))
    }

    pub fn inv(&self) -> Option<Self> {
        (!self.is_zero()).then(|| Self::reduce(self.den.clone(), self.num.clone()))
    }

    /// Multiplies by `D^k` for any integer `k`.
    pub fn shift(&self, k: i64) -> Self {
        if k >= 0 {
            Self::reduce(self.num.shift(k as usize), self.den.clone())
        } else {
            Self::reduce(self.num.clone(), self.den.shift((-k) as usize))
        }
    }

    /// Substitutes `D → D^k`.
    pub fn compose_power(&self, k: usize) -> Self {
        Self::reduce(self.num.compose_power(k), self.den.compose_power(k))
    }

    /// Substitutes `D → 1/D`.
    pub fn reflect(&self) -> Self {
        let dn = self.num.degree().unwrap_or(0) as i64;
        let dd = self.den.degree().unwrap_or(0) as i64;
        let rev = |p: &Poly<F>| Poly::from_coeffs(p.coeffs().iter().rev().copied().collect());
        Self::reduce(rev(&self.num), rev(&self.den)).shift(dd - dn)
    }

    pub fn conj(&self) -> Self {
        Self::reduce(self.num.conj(), self.den.conj())
    }

    pub fn scale(&self, c: F) -> Self {
        Self::reduce(self.num.scale(c), self.den.clone())
    }

    /// Laurent form, when the denominator is a monomial.
    pub fn to_laurent(&self) -> Option<LaurentPoly<F>> {
        if !self.den.is_monomial() {
            return None;
        }
        let v = self.den.valuation().unwrap() as i64;
        Some(LaurentPoly::from_coeffs(-v, self.num.coeffs().to_vec()))
    }

    /// First `len` coefficients of the causal power-series expansion.
    pub fn series(&self, len: usize) -> Option<Vec<F>> {
        let d0 = self.den.coeff(0).inv()?;
        let mut out = vec![F::zero(); len];
        for t in 0..len {
            let mut acc = self.num.coeff(t);
            for d in 1..=t.min(self.den.degree().unwrap_or(0)) {
                acc -= self.den.coeff(d) * out[t - d];
            }
            out[t] = acc * d0;
        }
        Some(out)
    }
}

impl RatFn<Gf2> {
    pub fn lift(&self) -> RatFn<Gf4> {
        RatFn::new(self.num.lift(), self.den.lift()).expect("nonzero denominator")
    }
}

impl RatFn<Gf4> {
    /// Writes `self = a + b·ω` with binary rational functions `a, b`.
    ///
    /// The denominator is made binary by multiplying through by its conjugate.
    pub fn split_coords(&self) -> (RatFn<Gf2>, RatFn<Gf2>) {
        let den_conj = self.den.conj();
        let (norm, rest) = (&self.den * &den_conj).split_coords();
        debug_assert!(rest.is_zero(), "the norm of a GF(4) polynomial is binary");
        let (a, b) = (&self.num * &den_conj).split_coords();
        (RatFn::new(a, norm.clone()).unwrap(), RatFn::new(b, norm).unwrap())
    }
}

impl<F: Field> From<Poly<F>> for RatFn<F> {
    fn from(p: Poly<F>) -> Self {
        RatFn { num: p, den: Poly::one() }
    }
}

impl<F: Field> From<&Poly<F>> for RatFn<F> {
    fn from(p: &Poly<F>) -> Self {
        RatFn { num: p.clone(), den: Poly::one() }
    }
}

impl<F: Field> From<&LaurentPoly<F>> for RatFn<F> {
    fn from(l: &LaurentPoly<F>) -> Self {
        match l.low_power() {
            None => Self::zero(),
            Some(low) if low >= 0 => Self::from(l.to_poly_shifted(0).unwrap()),
            Some(low) => Self::from(l.to_poly_shifted(-low).unwrap()).shift(low),
        }
    }
}

impl<F: Field> Default for RatFn<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: Field> Zero for RatFn<F> {
    fn zero() -> Self {
        RatFn::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl<F: Field> One for RatFn<F> {
    fn one() -> Self {
        RatFn::one()
    }
}

impl<F: Field> Add for &RatFn<F> {
    type Output = RatFn<F>;
    fn add(self, rhs: &RatFn<F>) -> RatFn<F> {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFn::reduce(&self.num + &rhs.num, self.den.clone());
        }
        let g = self.den.gcd(&rhs.den);
        let a = self.den.exact_div(&g).unwrap();
        let b = rhs.den.exact_div(&g).unwrap();
        let num = &(&self.num * &b) + &(&rhs.num * &a);
        RatFn::reduce(num, &self.den * &b)
    }
}

impl<F: Field> Neg for &RatFn<F> {
    type Output = RatFn<F>;
    fn neg(self) -> RatFn<F> {
        RatFn { num: -&self.num, den: self.den.clone() }
    }
}

impl<F: Field> Sub for &RatFn<F> {
    type Output = RatFn<F>;
    fn sub(self, rhs: &RatFn<F>) -> RatFn<F> {
        self + &(-rhs)
    }
}

impl<F: Field> Mul for &RatFn<F> {
    type Output = RatFn<F>;
    fn mul(self, rhs: &RatFn<F>) -> RatFn<F> {
        if self.is_zero() || rhs.is_zero() {
            return RatFn::zero();
        }
        // cross-cancel first to keep degrees small
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let n1 = self.num.exact_div(&g1).unwrap();
        let d2 = rhs.den.exact_div(&g1).unwrap();
        let n2 = rhs.num.exact_div(&g2).unwrap();
        let d1 = self.den.exact_div(&g2).unwrap();
        RatFn::reduce(&n1 * &n2, &d1 * &d2)
    }
}

impl<F: Field> Div for &RatFn<F> {
    type Output = RatFn<F>;
    /// Panics on division by zero, like integer division.
    fn div(self, rhs: &RatFn<F>) -> RatFn<F> {
        self * &rhs.inv().expect("rational function division by zero")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<F: Field> $tr for RatFn<F> {
            type Output = RatFn<F>;
            fn $m(self, rhs: RatFn<F>) -> RatFn<F> {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl<F: Field> fmt::Display for RatFn<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &Poly<F>| {
            if p.weight() > 1 {
                format!("({p})")
            } else {
                p.to_string()
            }
        };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

impl<F: Field> fmt::Debug for RatFn<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<F: Field> FromStr for RatFn<F> {
    type Err = ParseError;

    /// Accepts `p` or `p/q` where each side may be parenthesised.
    fn from_str(s: &str) -> Result<Self, ParseError> {
        let strip = |t: &str| {
            let t = t.trim();
            t.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(t).to_string()
        };
        match s.split_once('/') {
            None => Ok(RatFn::from(strip(s).parse::<Poly<F>>()?)),
            Some((n, d)) => {
                let num: Poly<F> = strip(n).parse()?;
                let den: Poly<F> = strip(d).parse()?;
                RatFn::new(num, den).map_err(|e| ParseError::new(e.to_string()))
            }
        }
    }
}
