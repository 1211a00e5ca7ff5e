// SPDX-License-Identifier: Apache-2.0

//! Dense complex matrices stored row-major.

use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Tolerance used by structural checks (Hermiticity, trace preservation,
/// positivity) unless the caller passes its own.
pub const DEFAULT_TOL: f64 = 1e-10;

/// A dense `rows x cols` matrix of complex scalars.
///
/// Values are immutable in spirit: every operation returns a fresh matrix.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::DimensionMismatch {
                context: "matrix shape must be positive",
                expected: 1,
                found: 0,
            });
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                context: "entry count",
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix shape must be positive");
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m.data[k * n + k] = ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        assert!(rows > 0 && cols > 0, "matrix shape must be positive");
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a matrix from complex rows; all rows must have equal length.
    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != m) {
            return Err(Error::DimensionMismatch {
                context: "row length",
                expected: m,
                found: bad.len(),
            });
        }
        Self::new(n, m, rows.concat())
    }

    /// Builds a real matrix from rows of `f64`. Panics on ragged input, which
    /// makes it convenient for literals.
    pub fn from_real_rows<const N: usize>(rows: &[[f64; N]]) -> Self {
        let data = rows
            .iter()
            .flat_map(|r| r.iter().map(|&x| C64::new(x, 0.0)))
            .collect();
        Self::new(rows.len(), N, data).expect("non-empty literal")
    }

    pub fn diag(entries: &[C64]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (k, &e) in entries.iter().enumerate() {
            m.data[k * n + k] = e;
        }
        m
    }

    pub fn diag_real(entries: &[f64]) -> Self {
        let e: Vec<C64> = entries.iter().map(|&x| C64::new(x, 0.0)).collect();
        Self::diag(&e)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Returns the order of a square matrix, or `NotSquare`.
    pub fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<C64> {
        self.data
    }

    pub fn get(&self, r: usize, c: usize) -> C64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: C64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[C64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn map(&self, f: impl Fn(C64) -> C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| f(z)).collect(),
        }
    }

    pub fn conj(&self) -> Self {
        self.map(|z| z.conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r))
    }

    /// Conjugate transpose `A*`.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).conj())
    }

    pub fn scale(&self, s: C64) -> Self {
        self.map(|z| z * s)
    }

    pub fn scale_re(&self, s: f64) -> Self {
        self.map(|z| z * s)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        })
    }

    /// In-place `self += other`; shapes must agree.
    pub fn add_assign_from(&mut self, other: &Self) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += b;
        }
    }

    pub fn try_matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                context: "matrix product inner dimension",
                expected: self.cols,
                found: other.rows,
            });
        }
        let (n, k, m) = (self.rows, self.cols, other.cols);
        let mut out = vec![ZERO; n * m];
        for r in 0..n {
            let lhs = &self.data[r * k..(r + 1) * k];
            let dst = &mut out[r * m..(r + 1) * m];
            for (t, &a) in lhs.iter().enumerate() {
                if a == ZERO {
                    continue;
                }
                let rhs = &other.data[t * m..(t + 1) * m];
                for (d, &b) in dst.iter_mut().zip(rhs) {
                    *d += a * b;
                }
            }
        }
        Ok(Self {
            rows: n,
            cols: m,
            data: out,
        })
    }

    /// `V X V*` for a conformable `V`.
    pub fn sandwich(&self, x: &Self) -> Self {
        let vx = self * x;
        let (n, k) = (vx.rows, vx.cols);
        // (V X) V*: entry (r, c) = sum_t (VX)[r, t] conj(V[c, t])
        Self::from_fn(n, self.rows, |r, c| {
            let mut acc = ZERO;
            for t in 0..k {
                acc += vx.data[r * k + t] * self.data[c * self.cols + t].conj();
            }
            acc
        })
    }

    /// `V* X V` for a conformable `V`.
    pub fn sandwich_adjoint(&self, x: &Self) -> Self {
        self.adjoint().sandwich(x)
    }

    pub fn pow(&self, n: u32) -> Result<Self> {
        let d = self.require_square()?;
        let mut acc = Self::identity(d);
        for _ in 0..n {
            acc = &acc * self;
        }
        Ok(acc)
    }

    pub fn trace(&self) -> C64 {
        let n = self.rows.min(self.cols);
        (0..n).map(|k| self.get(k, k)).sum()
    }

    /// Largest entry modulus, `‖A‖_max`.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `‖A − B‖_max`; infinite when the shapes differ.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.max_abs_diff(other) <= tol
    }

    /// Maximum absolute column sum.
    pub fn norm_one(&self) -> f64 {
        (0..self.cols)
            .map(|c| (0..self.rows).map(|r| self.get(r, c).norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.is_square() && self.max_abs_diff(&self.adjoint()) <= tol
    }

    /// `(A + A*) / 2`.
    pub fn hermitian_part(&self) -> Self {
        let adj = self.adjoint();
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&adj.data).map(|(a, b)| (a + b) * 0.5).collect(),
        }
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        let (r1, c1, r2, c2) = (self.rows, self.cols, other.rows, other.cols);
        let mut out = Self::zeros(r1 * r2, c1 * c2);
        let width = c1 * c2;
        for i in 0..r1 {
            for j in 0..c1 {
                let a = self.data[i * c1 + j];
                if a == ZERO {
                    continue;
                }
                for k in 0..r2 {
                    let row = (i * r2 + k) * width + j * c2;
                    for l in 0..c2 {
                        out.data[row + l] = a * other.data[k * c2 + l];
                    }
                }
            }
        }
        out
    }

    /// Row-stacking vectorisation: `[a11, a12, …, a21, a22, …]`.
    pub fn vec(&self) -> Vec<C64> {
        self.data.clone()
    }

    /// Inverse of [`ComplexMatrix::vec`] for square `d x d` matrices.
    pub fn unvec(v: &[C64], d: usize) -> Result<Self> {
        if d == 0 || v.len() != d * d {
            return Err(Error::DimensionMismatch {
                context: "unvec length must be d^2",
                expected: d * d,
                found: v.len(),
            });
        }
        Ok(Self {
            rows: d,
            cols: d,
            data: v.to_vec(),
        })
    }

    pub fn mul_vec(&self, v: &[C64]) -> Result<Vec<C64>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                context: "matrix-vector product",
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// Commutator norm `‖AB − BA‖_max`.
    pub fn commutator_norm(&self, other: &Self) -> f64 {
        (self * other).max_abs_diff(&(other * self))
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch {
                context: "elementwise operation",
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        Ok(())
    }
}

/// Free-function form of [`ComplexMatrix::vec`].
pub fn vec(a: &ComplexMatrix) -> Vec<C64> {
    a.vec()
}

/// Free-function form of [`ComplexMatrix::unvec`].
pub fn unvec(v: &[C64], d: usize) -> Result<ComplexMatrix> {
    ComplexMatrix::unvec(v, d)
}

/// Free-function form of [`ComplexMatrix::kron`].
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kron(b)
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;

    fn index(&self, (r, c): (usize, usize)) -> &C64 {
        &self.data[r * self.cols + c]
    }
}

// The operator impls panic on shape mismatch, like ndarray does; use the
// `try_*` methods where the shapes come from user input.
impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.try_matmul(rhs).expect("matrix product shape mismatch")
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.try_add(rhs).expect("matrix sum shape mismatch")
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.try_sub(rhs).expect("matrix difference shape mismatch")
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn neg(self) -> ComplexMatrix {
        self.map(|z| -z)
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for z in self.row(r) {
                write!(f, "{:>10.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}
