//! Integer polynomials and truncated integer power series.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::ratlin::Rational;

/// Polynomial in `t` with arbitrary precision integer coefficients,
/// lowest degree first; trailing zeros are trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self {
            coeffs: vec![BigInt::one()],
        }
    }

    /// `[d]_t = 1 + t + ... + t^{d-1}`.
    pub fn t_analogue(d: usize) -> Self {
        Self::new(vec![BigInt::one(); d])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Exact quotient by a monic polynomial, or `None` if the remainder is nonzero.
    pub fn div_exact_monic(&self, divisor: &Self) -> Option<Self> {
        let dd = divisor.degree()?;
        if !divisor.coeffs[dd].is_one() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let n = self.degree()?;
        if n < dd {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); n - dd + 1];
        for k in (0..=n - dd).rev() {
            let c = rem[k + dd].clone();
            if c.is_zero() {
                continue;
            }
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &c * d;
            }
            quot[k] = c;
        }
        if rem.iter().all(Zero::is_zero) {
            Some(Self::new(quot))
        } else {
            None
        }
    }

    pub fn eval_int(&self, t: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * t + c)
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * t + Rational::from_integer(c.clone()))
    }

    /// `p(t) = t^deg p(1/t)`.
    pub fn is_palindromic(&self) -> bool {
        self.coeffs.iter().eq(self.coeffs.iter().rev())
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = k == 0 || !abs.is_one();
            if show_coeff {
                write!(f, "{abs}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{k}")?,
            }
        }
        Ok(())
    }
}

/// Power series truncated after degree `precision`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntSeries {
    coeffs: Vec<BigInt>,
}

impl IntSeries {
    pub fn from_poly(p: &IntPolynomial, precision: usize) -> Self {
        Self {
            coeffs: (0..=precision).map(|k| p.coeff(k)).collect(),
        }
    }

    /// `1 / (1 - t^m) = 1 + t^m + t^{2m} + ...`; requires `m >= 1`.
    pub fn geometric(m: usize, precision: usize) -> Self {
        assert!(m >= 1, "geometric series needs a positive step");
        Self {
            coeffs: (0..=precision)
                .map(|k| if k % m == 0 { BigInt::one() } else { BigInt::zero() })
                .collect(),
        }
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.precision().min(other.precision());
        let mut out = vec![BigInt::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                out[i + j] += a * b;
            }
        }
        Self { coeffs: out }
    }
}
