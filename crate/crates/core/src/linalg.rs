//! Dense matrices used across the crate: complex determinants and solves
//! (backed by nalgebra), exact integer matrices, and fraction-free
//! determinants over exact rings.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::qpoly::QPolynomial;

pub type C64 = Complex64;

/// Dense complex matrix.
pub type ComplexMatrix = DMatrix<C64>;

/// Dense real matrix (sector Hamiltonians are real symmetric).
pub type RealMatrix = DMatrix<f64>;

/// Determinant of a square matrix given by a generator `entry(row, col)`.
pub fn complex_det(n: usize, entry: impl Fn(usize, usize) -> C64) -> C64 {
    match n {
        0 => C64::one(),
        1 => entry(0, 0),
        2 => entry(0, 0) * entry(1, 1) - entry(0, 1) * entry(1, 0),
        _ => ComplexMatrix::from_fn(n, n, entry).determinant(),
    }
}

/// Solve `a x = b` by LU with partial pivoting; `None` if singular.
pub fn complex_solve(a: ComplexMatrix, b: &nalgebra::DVector<C64>) -> Option<nalgebra::DVector<C64>> {
    a.lu().solve(b)
}

/// Real symmetric eigendecomposition. Eigenvalues are returned sorted
/// ascending together with the matching eigenvector columns.
pub fn symmetric_eigen(h: &RealMatrix) -> (Vec<f64>, RealMatrix) {
    let n = h.nrows();
    if n == 0 {
        return (Vec::new(), RealMatrix::zeros(0, 0));
    }
    let eig = nalgebra::SymmetricEigen::new(h.clone());
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = RealMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    (values, vectors)
}

/// A commutative ring in which `div_exact` is only ever called on exact
/// multiples, as in Bareiss elimination.
pub trait ExactRing: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn mul(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn div_exact(&self, other: &Self) -> Result<Self>;
}

impl ExactRing for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, other: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(other);
        if !Zero::is_zero(&r) {
            return Err(Error::InexactDivision(format!("{self} / {other}")));
        }
        Ok(q)
    }
}

impl ExactRing for QPolynomial {
    fn zero() -> Self {
        QPolynomial::zero()
    }
    fn one() -> Self {
        QPolynomial::one()
    }
    fn is_zero(&self) -> bool {
        QPolynomial::is_zero(self)
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, other: &Self) -> Result<Self> {
        QPolynomial::div_exact(self, other)
    }
}

/// Fraction-free (Bareiss) determinant of a square matrix given row-major.
pub fn bareiss_det<R: ExactRing>(mut m: Vec<Vec<R>>) -> Result<R> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return Err(Error::invalid("determinant of a non-square matrix"));
    }
    if n == 0 {
        return Ok(R::one());
    }
    let mut negate = false;
    let mut prev = R::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return Ok(R::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num.div_exact(&prev)?;
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if negate { det.neg() } else { det })
}

/// Square matrix of arbitrary-precision integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    n: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(n: usize) -> Self {
        IntMatrix {
            n,
            data: vec![<BigInt as Zero>::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = <BigInt as One>::one();
        }
        m
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> BigInt) -> Self {
        let data = (0..n * n).map(|k| f(k / n, k % n)).collect();
        IntMatrix { n, data }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> &BigInt {
        &self.data[row * self.n + col]
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        let n = self.n;
        let mut out = IntMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.data[i * n + k];
                if Zero::is_zero(a) {
                    continue;
                }
                for j in 0..n {
                    let b = &other.data[k * n + j];
                    if !Zero::is_zero(b) {
                        out.data[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }

    /// `self^k` by repeated squaring.
    pub fn pow(&self, mut k: u32) -> IntMatrix {
        let mut base = self.clone();
        let mut acc = IntMatrix::identity(self.n);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        self.data.chunks(self.n.max(1)).map(|r| r.to_vec()).collect()
    }
}
