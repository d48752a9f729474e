//! Exact integer polynomials in `q`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficients in ascending order of exponent, without trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(from = "Vec<i128>", into = "Vec<i128>")]
pub struct QPolynomial {
    coeffs: Vec<i128>,
}

impl From<Vec<i128>> for QPolynomial {
    fn from(coeffs: Vec<i128>) -> Self {
        Self::new(coeffs)
    }
}

impl From<QPolynomial> for Vec<i128> {
    fn from(p: QPolynomial) -> Self {
        p.coeffs
    }
}

impl QPolynomial {
    pub fn new(mut coeffs: Vec<i128>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: i128) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    /// `c q^e`.
    pub fn monomial(c: i128, e: usize) -> Self {
        let mut coeffs = vec![0; e + 1];
        coeffs[e] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval_at_one(&self) -> i128 {
        self.coeffs.iter().sum()
    }

    pub fn scale(&self, c: i128) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// `P(q^m)`.
    pub fn substitute_power(&self, m: usize) -> Self {
        assert!(m >= 1, "substitute_power needs m >= 1");
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![0; (self.coeffs.len() - 1) * m + 1];
        for (e, &a) in self.coeffs.iter().enumerate() {
            coeffs[e * m] = a;
        }
        Self::new(coeffs)
    }

    /// Quotient and remainder by a divisor whose leading coefficient divides
    /// every leading term encountered.
    pub fn div_rem(&self, divisor: &QPolynomial) -> Result<(QPolynomial, QPolynomial)> {
        let dd = divisor.degree().ok_or(Error::InexactDivision)?;
        let lead = divisor.coeffs[dd];
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![0i128; rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let top = rem[i + dd];
            if top % lead != 0 {
                return Err(Error::InexactDivision);
            }
            let c = top / lead;
            quot[i] = c;
            if c != 0 {
                for (j, &b) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] -= c * b;
                }
            }
        }
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Exact quotient; errors on a nonzero remainder.
    pub fn div_exact(&self, divisor: &QPolynomial) -> Result<QPolynomial> {
        let (q, r) = self.div_rem(divisor)?;
        if !r.is_zero() {
            return Err(Error::InexactDivision);
        }
        Ok(q)
    }

    /// Divide every coefficient by `c`, which must divide them all.
    pub fn div_scalar_exact(&self, c: i128) -> Result<QPolynomial> {
        if c == 0 || self.coeffs.iter().any(|a| a % c != 0) {
            return Err(Error::InexactDivision);
        }
        Ok(Self::new(self.coeffs.iter().map(|a| a / c).collect()))
    }
}

/// `[k]_q = 1 + q + ... + q^{k-1}`.
pub fn q_int(k: usize) -> QPolynomial {
    QPolynomial::new(vec![1; k])
}

/// `[k]_q! = [1]_q [2]_q ⋯ [k]_q`.
pub fn q_factorial(k: usize) -> QPolynomial {
    (1..=k).fold(QPolynomial::one(), |acc, j| &acc * &q_int(j))
}

/// Gaussian binomial `[k choose r]_q`, by exact division of q-factorials.
pub fn q_binomial(k: usize, r: usize) -> Result<QPolynomial> {
    if r > k {
        return Ok(QPolynomial::zero());
    }
    let den = &q_factorial(r) * &q_factorial(k - r);
    q_factorial(k).div_exact(&den)
}

pub fn factorial_i128(k: usize) -> i128 {
    (1..=k as i128).product()
}

impl Add for &QPolynomial {
    type Output = QPolynomial;
    fn add(self, rhs: &QPolynomial) -> QPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let get = |p: &QPolynomial, i: usize| p.coeffs.get(i).copied().unwrap_or(0);
        QPolynomial::new((0..len).map(|i| get(self, i) + get(rhs, i)).collect())
    }
}

impl Neg for &QPolynomial {
    type Output = QPolynomial;
    fn neg(self) -> QPolynomial {
        self.scale(-1)
    }
}

impl Sub for &QPolynomial {
    type Output = QPolynomial;
    fn sub(self, rhs: &QPolynomial) -> QPolynomial {
        self + &(-rhs)
    }
}

impl Mul for &QPolynomial {
    type Output = QPolynomial;
    fn mul(self, rhs: &QPolynomial) -> QPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return QPolynomial::zero();
        }
        let mut out = vec![0i128; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPolynomial::new(out)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for QPolynomial {
            type Output = QPolynomial;
            fn $m(self, rhs: QPolynomial) -> QPolynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            if !first {
                f.write_str(if a < 0 { " - " } else { " + " })?;
            } else if a < 0 {
                f.write_str("-")?;
            }
            first = false;
            let abs = a.abs();
            match (e, abs) {
                (0, _) => write!(f, "{abs}")?,
                (1, 1) => f.write_str("q")?,
                (1, _) => write!(f, "{abs}q")?,
                (_, 1) => write!(f, "q^{e}")?,
                _ => write!(f, "{abs}q^{e}")?,
            }
        }
        Ok(())
    }
}
