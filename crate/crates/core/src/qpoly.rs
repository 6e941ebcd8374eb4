//! Polynomials in a single variable `q` with arbitrary-precision integer
//! coefficients, plus the q-integers, q-factorials and Gaussian binomials
//! built on them.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A polynomial `sum_e c_e q^e`. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct QPolynomial {
    coeffs: BTreeMap<u32, BigInt>,
}

impl QPolynomial {
    pub fn zero() -> Self {
        QPolynomial::default()
    }

    pub fn one() -> Self {
        QPolynomial::monomial(1, 0)
    }

    /// The variable `q` itself.
    pub fn q() -> Self {
        QPolynomial::monomial(1, 1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        QPolynomial::monomial(c, 0)
    }

    /// `c q^exp`.
    pub fn monomial(c: impl Into<BigInt>, exp: u32) -> Self {
        let mut p = QPolynomial::zero();
        p.add_term(exp, c.into());
        p
    }

    /// Build from dense coefficients, lowest degree first.
    pub fn from_coeffs<I, C>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = C>,
        C: Into<BigInt>,
    {
        let mut p = QPolynomial::zero();
        for (e, c) in coeffs.into_iter().enumerate() {
            p.add_term(e as u32, c.into());
        }
        p
    }

    /// `1 - q^n`.
    pub fn one_minus_q_pow(n: u32) -> Self {
        QPolynomial::one() - QPolynomial::monomial(1, n)
    }

    /// Accumulate `c q^exp`, dropping the entry if it cancels.
    pub fn add_term(&mut self, exp: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, exp: u32) -> BigInt {
        self.coeffs.get(&exp).cloned().unwrap_or_default()
    }

    /// `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &BigInt)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    /// Lowest exponent with a non-zero coefficient.
    pub fn valuation(&self) -> Option<u32> {
        self.coeffs.keys().next().copied()
    }

    /// Value at `q = 1`, the sum of the coefficients.
    pub fn at_one(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    pub fn eval_f64(&self, q: f64) -> f64 {
        self.coeffs
            .iter()
            .map(|(&e, c)| c.to_f64().unwrap_or(f64::NAN) * q.powi(e as i32))
            .sum()
    }

    pub fn eval_complex(&self, q: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .map(|(&e, c)| q.powu(e) * c.to_f64().unwrap_or(f64::NAN))
            .sum()
    }

    /// Multiply by `q^k`.
    pub fn shift_up(&self, k: u32) -> Self {
        QPolynomial {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Divide by `q^k`; fails if any exponent would go negative.
    pub fn shift_down(&self, k: u32) -> Result<Self> {
        if self.valuation().is_some_and(|v| v < k) {
            return Err(Error::InexactDivision(format!("{self} is not divisible by q^{k}")));
        }
        Ok(QPolynomial {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e - k, c.clone())).collect(),
        })
    }

    /// Multiply by `q^k` for a signed `k`.
    pub fn shift(&self, k: i64) -> Result<Self> {
        if k >= 0 {
            Ok(self.shift_up(k as u32))
        } else {
            self.shift_down((-k) as u32)
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = QPolynomial::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    fn dense(&self) -> Vec<BigInt> {
        let len = self.degree().map_or(0, |d| d as usize + 1);
        let mut v = vec![BigInt::zero(); len];
        for (&e, c) in &self.coeffs {
            v[e as usize] = c.clone();
        }
        v
    }

    /// Exact division by `divisor`. Long division from the top degree; any
    /// non-integral quotient coefficient or non-zero remainder is an error.
    pub fn div_exact(&self, divisor: &QPolynomial) -> Result<Self> {
        let d = divisor.dense();
        let Some(lead) = d.last().cloned() else {
            return Err(Error::InexactDivision("division by the zero polynomial".into()));
        };
        let mut rem = self.dense();
        if rem.len() < d.len() {
            return if self.is_zero() {
                Ok(QPolynomial::zero())
            } else {
                Err(Error::InexactDivision(format!("{self} is not divisible by {divisor}")))
            };
        }
        let qlen = rem.len() - d.len() + 1;
        let mut quotient = vec![BigInt::zero(); qlen];
        for k in (0..qlen).rev() {
            let top = &rem[k + d.len() - 1];
            if top.is_zero() {
                continue;
            }
            let (qc, r) = top.div_rem(&lead);
            if !r.is_zero() {
                return Err(Error::InexactDivision(format!(
                    "{self} / {divisor}: non-integral coefficient"
                )));
            }
            for (i, dc) in d.iter().enumerate() {
                rem[k + i] -= &qc * dc;
            }
            quotient[k] = qc;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::InexactDivision(format!(
                "{self} is not divisible by {divisor}"
            )));
        }
        Ok(QPolynomial::from_coeffs(quotient))
    }
}

impl fmt::Display for QPolynomial {
    /// Ascending powers, e.g. `1 + q + 2q^2 - q^5`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&e, c)) in self.coeffs.iter().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit = mag.is_one();
            match e {
                0 => write!(f, "{mag}")?,
                1 if unit => write!(f, "q")?,
                1 => write!(f, "{mag}q")?,
                _ if unit => write!(f, "q^{e}")?,
                _ => write!(f, "{mag}q^{e}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for QPolynomial {
    /// `{"exponent": "coefficient"}` with decimal strings so big integers
    /// survive any JSON reader.
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = serializer.serialize_map(Some(self.coeffs.len()))?;
        for (e, c) in &self.coeffs {
            map.serialize_entry(&e.to_string(), &c.to_string())?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for QPolynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = BTreeMap::<String, String>::deserialize(deserializer)?;
        let mut p = QPolynomial::zero();
        for (e, c) in raw {
            let e: u32 = e.parse().map_err(D::Error::custom)?;
            let c: BigInt = c.parse().map_err(D::Error::custom)?;
            p.add_term(e, c);
        }
        Ok(p)
    }
}

impl Add for &QPolynomial {
    type Output = QPolynomial;
    fn add(self, rhs: &QPolynomial) -> QPolynomial {
        let mut out = self.clone();
        for (&e, c) in &rhs.coeffs {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub for &QPolynomial {
    type Output = QPolynomial;
    fn sub(self, rhs: &QPolynomial) -> QPolynomial {
        let mut out = self.clone();
        for (&e, c) in &rhs.coeffs {
            out.add_term(e, -c.clone());
        }
        out
    }
}

impl Mul for &QPolynomial {
    type Output = QPolynomial;
    fn mul(self, rhs: &QPolynomial) -> QPolynomial {
        let mut out = QPolynomial::zero();
        for (&a, ca) in &self.coeffs {
            for (&b, cb) in &rhs.coeffs {
                out.add_term(a + b, ca * cb);
            }
        }
        out
    }
}

impl Neg for &QPolynomial {
    type Output = QPolynomial;
    fn neg(self) -> QPolynomial {
        QPolynomial {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for QPolynomial {
            type Output = QPolynomial;
            fn $m(self, rhs: QPolynomial) -> QPolynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl std::iter::Sum for QPolynomial {
    fn sum<I: Iterator<Item = QPolynomial>>(iter: I) -> Self {
        iter.fold(QPolynomial::zero(), |acc, p| &acc + &p)
    }
}

impl std::iter::Product for QPolynomial {
    fn product<I: Iterator<Item = QPolynomial>>(iter: I) -> Self {
        iter.fold(QPolynomial::one(), |acc, p| &acc * &p)
    }
}

/// `[n] = 1 + q + ... + q^(n-1)`.
pub fn q_integer(n: u32) -> QPolynomial {
    QPolynomial::from_coeffs(std::iter::repeat_n(1, n as usize))
}

/// `[n]! = [1][2]...[n]`.
pub fn q_factorial(n: u32) -> QPolynomial {
    (1..=n).map(q_integer).product()
}

/// Gaussian binomial `[R; r] = [R]! / ([r]! [R-r]!)`, by exact division.
pub fn q_binomial(big_r: u32, r: u32) -> Result<QPolynomial> {
    if r > big_r {
        return Err(Error::invalid(format!("q-binomial needs r <= R, got r={r} R={big_r}")));
    }
    let denom = &q_factorial(r) * &q_factorial(big_r - r);
    q_factorial(big_r).div_exact(&denom)
}
