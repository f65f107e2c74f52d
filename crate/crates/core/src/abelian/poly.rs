use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::IntMatrix;
use crate::error::{Error, Result};

/// A polynomial in `ℤ[T]`, coefficients listed constant term first.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntPolynomial {
    coefficients: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coefficients: Vec<BigInt>) -> Self {
        while coefficients.last().is_some_and(Zero::is_zero) {
            coefficients.pop();
        }
        IntPolynomial { coefficients }
    }

    pub fn from_i64(coefficients: &[i64]) -> Self {
        Self::new(coefficients.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    /// `T − 1`.
    pub fn t_minus_one() -> Self {
        Self::from_i64(&[-1, 1])
    }

    /// `Tⁿ − 1`.
    pub fn t_pow_minus_one(n: usize) -> Self {
        let mut c = vec![BigInt::zero(); n + 1];
        c[0] = -BigInt::one();
        c[n] += BigInt::one();
        Self::new(c)
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    pub fn coefficient(&self, i: usize) -> BigInt {
        self.coefficients.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coefficients.last().is_some_and(One::is_one)
    }

    pub fn constant_term(&self) -> BigInt {
        self.coefficient(0)
    }

    pub fn mul(&self, other: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || other.is_zero() {
            return IntPolynomial::new(Vec::new());
        }
        let mut c = vec![BigInt::zero(); self.coefficients.len() + other.coefficients.len() - 1];
        for (i, a) in self.coefficients.iter().enumerate() {
            for (j, b) in other.coefficients.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        IntPolynomial::new(c)
    }

    /// `P(M)` for a square matrix, by Horner's rule.
    pub fn evaluate_matrix(&self, m: &IntMatrix) -> Result<IntMatrix> {
        if !m.is_square() {
            return Err(Error::Dimension("polynomial of a non-square matrix".into()));
        }
        let n = m.rows();
        let mut acc = IntMatrix::zeros(n, n);
        for c in self.coefficients.iter().rev() {
            acc = acc.mul(m)?.add(&IntMatrix::identity(n).scale(c))?;
        }
        Ok(acc)
    }

    /// `det(T·I − M)` by the Faddeev–LeVerrier recursion; every division is exact.
    pub fn characteristic(m: &IntMatrix) -> Result<IntPolynomial> {
        if !m.is_square() {
            return Err(Error::Dimension("characteristic polynomial of a non-square matrix".into()));
        }
        let n = m.rows();
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        let mut aux = IntMatrix::zeros(n, n);
        for k in 1..=n {
            // aux = M·aux_prev + c_{n−k+1}·I
            aux = m.mul(&aux)?.add(&IntMatrix::identity(n).scale(&coeffs[n - k + 1]))?;
            let t = m.mul(&aux)?.trace();
            coeffs[n - k] = -t / BigInt::from(k);
        }
        Ok(IntPolynomial::new(coeffs))
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coefficients.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let abs = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            if i == 0 || !abs.is_one() {
                write!(f, "{abs}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "T")?,
                _ => write!(f, "T^{i}")?,
            }
        }
        Ok(())
    }
}
