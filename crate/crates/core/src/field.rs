#![allow(clippy::suspicious_arithmetic_impl)]

//! The two coefficient fields used throughout the crate: GF(2) and GF(4).
//!
//! GF(4) elements are stored as a two-bit index `0, 1, 2, 3` standing for
//! `0, 1, ω, ω̄` with `ω² = ω + 1` and `ω̄ = ω² = ω + 1`. The index order is also
//! the symbol order used for deterministic tie-breaking in the trellis decoder.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

/// A finite field of characteristic 2 small enough to enumerate.
pub trait Field:
    Copy
    + Eq
    + Ord
    + Hash
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
{
    /// Number of elements.
    const ORDER: usize;
    /// Short name used in textual dumps.
    const NAME: &'static str;

    /// Element with the given index in `0..ORDER`.
    fn from_index(index: usize) -> Self;
    /// Index of this element in `0..ORDER`.
    fn index(self) -> usize;

    /// Multiplicative inverse, `None` for zero.
    fn inv(self) -> Option<Self>;

    /// Frobenius conjugate `x ↦ x²` (identity on GF(2)).
    fn conj(self) -> Self;

    fn elements() -> impl Iterator<Item = Self> {
        (0..Self::ORDER).map(Self::from_index)
    }
}

/// The binary field.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Gf2(u8);

impl Gf2 {
    pub const ZERO: Gf2 = Gf2(0);
    pub const ONE: Gf2 = Gf2(1);

    #[inline]
    pub fn new(bit: bool) -> Self {
        Gf2(bit as u8)
    }

    #[inline]
    pub fn bit(self) -> bool {
        self.0 != 0
    }
}

impl From<bool> for Gf2 {
    fn from(b: bool) -> Self {
        Gf2::new(b)
    }
}

impl From<Gf2> for u8 {
    fn from(x: Gf2) -> u8 {
        x.0
    }
}

impl fmt::Debug for Gf2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Gf2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Add for Gf2 {
    type Output = Gf2;
    #[inline]
    fn add(self, rhs: Gf2) -> Gf2 {
        Gf2(self.0 ^ rhs.0)
    }
}

impl Sub for Gf2 {
    type Output = Gf2;
    #[inline]
    fn sub(self, rhs: Gf2) -> Gf2 {
        Gf2(self.0 ^ rhs.0)
    }
}

impl Mul for Gf2 {
    type Output = Gf2;
    #[inline]
    fn mul(self, rhs: Gf2) -> Gf2 {
        Gf2(self.0 & rhs.0)
    }
}

impl Div for Gf2 {
    type Output = Gf2;
    fn div(self, rhs: Gf2) -> Gf2 {
        assert!(rhs.0 != 0, "division by zero in GF(2)");
        self
    }
}

impl Neg for Gf2 {
    type Output = Gf2;
    #[inline]
    fn neg(self) -> Gf2 {
        self
    }
}

impl Field for Gf2 {
    const ORDER: usize = 2;
    const NAME: &'static str = "GF2";

    fn from_index(index: usize) -> Self {
        assert!(index < 2, "GF(2) index out of range: {index}");
        Gf2(index as u8)
    }

    fn index(self) -> usize {
        self.0 as usize
    }

    fn inv(self) -> Option<Self> {
        (self.0 != 0).then_some(self)
    }

    fn conj(self) -> Self {
        self
    }
}

/// The four-element field `{0, 1, ω, ω̄}`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Gf4(u8);

// log table over the cyclic group generated by ω: 1 = ω^0, ω = ω^1, ω̄ = ω^2.
const GF4_LOG: [u8; 4] = [0, 0, 1, 2];
const GF4_EXP: [u8; 3] = [1, 2, 3];

impl Gf4 {
    pub const ZERO: Gf4 = Gf4(0);
    pub const ONE: Gf4 = Gf4(1);
    pub const OMEGA: Gf4 = Gf4(2);
    pub const OMEGA_BAR: Gf4 = Gf4(3);

    /// Builds `a + b·ω` from its two binary coordinates.
    #[inline]
    pub fn from_coords(a: Gf2, b: Gf2) -> Self {
        Gf4(u8::from(a) | (u8::from(b) << 1))
    }

    /// Binary coordinates `(a, b)` with `self = a + b·ω`.
    #[inline]
    pub fn coords(self) -> (Gf2, Gf2) {
        (Gf2(self.0 & 1), Gf2(self.0 >> 1))
    }

    /// Absolute trace `x + x²`, which lands in GF(2).
    pub fn trace(self) -> Gf2 {
        let t = self + self.conj();
        debug_assert!(t.0 < 2);
        Gf2(t.0)
    }
}

impl From<Gf2> for Gf4 {
    fn from(x: Gf2) -> Self {
        Gf4(x.0)
    }
}

impl fmt::Debug for Gf4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Gf4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            0 => write!(f, "0"),
            1 => write!(f, "1"),
            2 => write!(f, "w"),
            _ => write!(f, "w2"),
        }
    }
}

impl Add for Gf4 {
    type Output = Gf4;
    #[inline]
    fn add(self, rhs: Gf4) -> Gf4 {
        Gf4(self.0 ^ rhs.0)
    }
}

impl Sub for Gf4 {
    type Output = Gf4;
    #[inline]
    fn sub(self, rhs: Gf4) -> Gf4 {
        Gf4(self.0 ^ rhs.0)
    }
}

impl Mul for Gf4 {
    type Output = Gf4;
    #[inline]
    fn mul(self, rhs: Gf4) -> Gf4 {
        if self.0 == 0 || rhs.0 == 0 {
            return Gf4(0);
        }
        let l = (GF4_LOG[self.0 as usize] + GF4_LOG[rhs.0 as usize]) % 3;
        Gf4(GF4_EXP[l as usize])
    }
}

impl Div for Gf4 {
    type Output = Gf4;
    fn div(self, rhs: Gf4) -> Gf4 {
        self * rhs.inv().expect("division by zero in GF(4)")
    }
}

impl Neg for Gf4 {
    type Output = Gf4;
    #[inline]
    fn neg(self) -> Gf4 {
        self
    }
}

impl Field for Gf4 {
    const ORDER: usize = 4;
    const NAME: &'static str = "GF4";

    fn from_index(index: usize) -> Self {
        assert!(index < 4, "GF(4) index out of range: {index}");
        Gf4(index as u8)
    }

    fn index(self) -> usize {
        self.0 as usize
    }

    fn inv(self) -> Option<Self> {
        if self.0 == 0 {
            return None;
        }
        let l = (3 - GF4_LOG[self.0 as usize]) % 3;
        Some(Gf4(GF4_EXP[l as usize]))
    }

    fn conj(self) -> Self {
        self * self
    }
}

macro_rules! field_boilerplate {
    ($t:ty) => {
        impl Zero for $t {
            fn zero() -> Self {
                <$t>::ZERO
            }
            fn is_zero(&self) -> bool {
                *self == <$t>::ZERO
            }
        }

        impl One for $t {
            fn one() -> Self {
                <$t>::ONE
            }
        }

        impl AddAssign for $t {
            fn add_assign(&mut self, rhs: Self) {
                *self = *self + rhs;
            }
        }

        impl SubAssign for $t {
            fn sub_assign(&mut self, rhs: Self) {
                *self = *self - rhs;
            }
        }

        impl MulAssign for $t {
            fn mul_assign(&mut self, rhs: Self) {
                *self = *self * rhs;
            }
        }
    };
}

field_boilerplate!(Gf2);
field_boilerplate!(Gf4);
