use std::f64::consts::{PI, SQRT_2};
use std::fmt;
use std::ops::Mul;

use num::{BigInt, BigRational, Integer, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::complex_rational::{fmt_rational, rational_to_f64, ComplexRational};
use crate::error::AlgebraError;

/// Exact prefactor `q · i^a · π^b · (√2)^c`.
///
/// Kept in a canonical form so that equality is structural: `a ∈ {0, 1}`
/// (a factor `i²` is folded into the sign of `q`), `c ∈ {0, 1}` (a factor
/// `2` is folded into `q`), and zero is `q = 0` with every power zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SymbolicConstant {
    q: BigRational,
    i_pow: u8,
    pi_pow: i32,
    sqrt2_pow: u8,
}

impl SymbolicConstant {
    pub fn new(q: BigRational, i_pow: i64, pi_pow: i32, sqrt2_pow: i64) -> Self {
        let mut q = q;
        if q.is_zero() {
            return Self::zero();
        }
        let i_red = i_pow.rem_euclid(4);
        if i_red >= 2 {
            q = -q;
        }
        let (twos, c) = sqrt2_pow.div_mod_floor(&2);
        if twos > 0 {
            q *= BigRational::from_integer(BigInt::from(2).pow(twos as u32));
        } else if twos < 0 {
            q /= BigRational::from_integer(BigInt::from(2).pow((-twos) as u32));
        }
        Self { q, i_pow: (i_red % 2) as u8, pi_pow, sqrt2_pow: c as u8 }
    }

    pub fn rational(q: BigRational) -> Self {
        Self::new(q, 0, 0, 0)
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::rational(BigRational::new(n.into(), d.into()))
    }

    pub fn one() -> Self {
        Self::from_ratio(1, 1)
    }

    pub fn zero() -> Self {
        Self { q: BigRational::zero(), i_pow: 0, pi_pow: 0, sqrt2_pow: 0 }
    }

    pub fn i() -> Self {
        Self::new(BigRational::one(), 1, 0, 0)
    }

    pub fn pi() -> Self {
        Self::new(BigRational::one(), 0, 1, 0)
    }

    pub fn two_pi() -> Self {
        Self::new(BigRational::from_integer(2.into()), 0, 1, 0)
    }

    pub fn sqrt2() -> Self {
        Self::new(BigRational::one(), 0, 0, 1)
    }

    pub fn q(&self) -> &BigRational {
        &self.q
    }

    pub fn i_pow(&self) -> u8 {
        self.i_pow
    }

    pub fn pi_pow(&self) -> i32 {
        self.pi_pow
    }

    pub fn sqrt2_pow(&self) -> u8 {
        self.sqrt2_pow
    }

    pub fn is_zero(&self) -> bool {
        self.q.is_zero()
    }

    pub fn inv(&self) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Self::new(
            self.q.recip(),
            -(self.i_pow as i64),
            -self.pi_pow,
            -(self.sqrt2_pow as i64),
        ))
    }

    pub fn powi(&self, n: i32) -> Result<Self, AlgebraError> {
        if n < 0 {
            return self.inv()?.powi(-n);
        }
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        Ok(acc)
    }

    /// Value as a complex float `(re, im)`.
    pub fn numeric_value(&self) -> (f64, f64) {
        let mag = rational_to_f64(&self.q) * PI.powi(self.pi_pow) * if self.sqrt2_pow == 1 { SQRT_2 } else { 1.0 };
        if self.i_pow == 1 {
            (0.0, mag)
        } else {
            (mag, 0.0)
        }
    }

    /// Multiplies an exact complex rational, returning the part that stays
    /// exact (`q · i^a · z`) and the transcendental remainder `π^b (√2)^c`.
    pub fn apply(&self, z: &ComplexRational) -> (ComplexRational, SymbolicConstant) {
        let exact = (&ComplexRational::i_pow(self.i_pow as i64) * z).scale(&self.q);
        let rest = Self { q: BigRational::one(), i_pow: 0, pi_pow: self.pi_pow, sqrt2_pow: self.sqrt2_pow };
        (exact, rest)
    }

    /// Float value of `self · z`.
    pub fn numeric_times(&self, z: &ComplexRational) -> (f64, f64) {
        let (cr, ci) = self.numeric_value();
        let (zr, zi) = z.to_f64();
        (cr * zr - ci * zi, cr * zi + ci * zr)
    }
}

impl<'a> Mul<&'a SymbolicConstant> for &'a SymbolicConstant {
    type Output = SymbolicConstant;
    fn mul(self, rhs: &SymbolicConstant) -> SymbolicConstant {
        SymbolicConstant::new(
            &self.q * &rhs.q,
            self.i_pow as i64 + rhs.i_pow as i64,
            self.pi_pow + rhs.pi_pow,
            self.sqrt2_pow as i64 + rhs.sqrt2_pow as i64,
        )
    }
}

impl Mul for SymbolicConstant {
    type Output = SymbolicConstant;
    fn mul(self, rhs: SymbolicConstant) -> SymbolicConstant {
        &self * &rhs
    }
}

impl fmt::Display for SymbolicConstant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", fmt_rational(&self.q))?;
        if self.i_pow == 1 {
            write!(f, "·i")?;
        }
        match self.pi_pow {
            0 => {}
            1 => write!(f, "·π")?,
            p => write!(f, "·π^{p}")?,
        }
        if self.sqrt2_pow == 1 {
            write!(f, "·√2")?;
        }
        Ok(())
    }
}

impl fmt::Debug for SymbolicConstant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// JSON shape `{q:[num,den], i_pow, pi_pow, sqrt2_pow}`.
#[derive(Serialize, Deserialize)]
struct SymbolicWire {
    q: super::wire::RationalWire,
    i_pow: i64,
    pi_pow: i32,
    sqrt2_pow: i64,
}

impl Serialize for SymbolicConstant {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        SymbolicWire {
            q: super::wire::RationalWire(self.q.clone()),
            i_pow: self.i_pow as i64,
            pi_pow: self.pi_pow,
            sqrt2_pow: self.sqrt2_pow as i64,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SymbolicConstant {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = SymbolicWire::deserialize(d)?;
        Ok(SymbolicConstant::new(w.q.0, w.i_pow, w.pi_pow, w.sqrt2_pow))
    }
}

impl SymbolicConstant {
    pub fn is_positive_real(&self) -> bool {
        self.i_pow == 0 && self.q.is_positive()
    }
}
