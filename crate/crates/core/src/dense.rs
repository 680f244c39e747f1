//! Small dense square matrices over exact integers, reals and complex numbers.
//!
//! All three types are row-major and square. Products skip zero entries of the
//! left operand, which keeps products against sparse graph matrices cheap
//! without a separate sparse format.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::error::{Error, Result};

macro_rules! square_indexing {
    ($ty:ty, $elem:ty) => {
        impl Index<(usize, usize)> for $ty {
            type Output = $elem;
            fn index(&self, (i, j): (usize, usize)) -> &$elem {
                &self.data[i * self.order + j]
            }
        }

        impl IndexMut<(usize, usize)> for $ty {
            fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut $elem {
                &mut self.data[i * self.order + j]
            }
        }
    };
}

/// Exact integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    order: usize,
    data: Vec<i128>,
}

square_indexing!(IntegerMatrix, i128);

impl IntegerMatrix {
    pub fn zeros(order: usize) -> Self {
        Self { order, data: vec![0; order * order] }
    }

    pub fn identity(order: usize) -> Self {
        let mut m = Self::zeros(order);
        for i in 0..order {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_row_major(order: usize, data: Vec<i128>) -> Result<Self> {
        if data.len() != order * order {
            return Err(Error::DimensionMismatch { expected: order * order, got: data.len() });
        }
        Ok(Self { order, data })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn as_slice(&self) -> &[i128] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[i128] {
        &self.data[i * self.order..(i + 1) * self.order]
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        let n = self.order;
        if rhs.order != n {
            return Err(Error::DimensionMismatch { expected: n, got: rhs.order });
        }
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == 0 {
                    continue;
                }
                let row = &rhs.data[k * n..(k + 1) * n];
                let acc = &mut out.data[i * n..(i + 1) * n];
                for (o, &b) in acc.iter_mut().zip(row) {
                    let prod = a.checked_mul(b).ok_or(Error::Overflow("matrix product"))?;
                    *o = o.checked_add(prod).ok_or(Error::Overflow("matrix product"))?;
                }
            }
        }
        Ok(out)
    }

    /// `self + factor * rhs`, checked.
    pub fn checked_add_scaled(&self, factor: i128, rhs: &Self) -> Result<Self> {
        if rhs.order != self.order {
            return Err(Error::DimensionMismatch { expected: self.order, got: rhs.order });
        }
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(&a, &b)| {
                factor
                    .checked_mul(b)
                    .and_then(|fb| a.checked_add(fb))
                    .ok_or(Error::Overflow("matrix sum"))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { order: self.order, data })
    }

    pub fn checked_trace(&self) -> Result<i128> {
        (0..self.order).try_fold(0i128, |acc, i| {
            acc.checked_add(self[(i, i)]).ok_or(Error::Overflow("trace"))
        })
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.order).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn max_row_sum(&self) -> i128 {
        (0..self.order)
            .map(|i| self.row(i).iter().map(|v| v.abs()).sum::<i128>())
            .max()
            .unwrap_or(0)
    }

    pub fn to_real(&self) -> RealMatrix {
        RealMatrix {
            order: self.order,
            data: self.data.iter().map(|&v| v as f64).collect(),
        }
    }
}

/// Dense real matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct RealMatrix {
    order: usize,
    data: Vec<f64>,
}

square_indexing!(RealMatrix, f64);

impl RealMatrix {
    pub fn zeros(order: usize) -> Self {
        Self { order, data: vec![0.0; order * order] }
    }

    pub fn identity(order: usize) -> Self {
        let mut m = Self::zeros(order);
        for i in 0..order {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_row_major(order: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != order * order {
            return Err(Error::DimensionMismatch { expected: order * order, got: data.len() });
        }
        Ok(Self { order, data })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let n = self.order;
        assert_eq!(n, rhs.order, "matrix orders differ");
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == 0.0 {
                    continue;
                }
                let row = &rhs.data[k * n..(k + 1) * n];
                for (o, &b) in out.data[i * n..(i + 1) * n].iter_mut().zip(row) {
                    *o += a * b;
                }
            }
        }
        out
    }

    /// `alpha * self + beta * rhs`.
    pub fn combine(&self, alpha: f64, beta: f64, rhs: &Self) -> Self {
        assert_eq!(self.order, rhs.order, "matrix orders differ");
        Self {
            order: self.order,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| alpha * a + beta * b).collect(),
        }
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self { order: self.order, data: self.data.iter().map(|v| v * factor).collect() }
    }

    pub fn trace(&self) -> f64 {
        (0..self.order).map(|i| self[(i, i)]).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    pub fn symmetry_deviation(&self) -> f64 {
        let mut dev = 0.0f64;
        for i in 0..self.order {
            for j in 0..i {
                dev = dev.max((self[(i, j)] - self[(j, i)]).abs());
            }
        }
        dev
    }
}

/// Dense complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    order: usize,
    data: Vec<Complex64>,
}

square_indexing!(ComplexMatrix, Complex64);

impl ComplexMatrix {
    pub fn zeros(order: usize) -> Self {
        Self { order, data: vec![Complex64::new(0.0, 0.0); order * order] }
    }

    pub fn identity(order: usize) -> Self {
        let mut m = Self::zeros(order);
        for i in 0..order {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_row_major(order: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != order * order {
            return Err(Error::DimensionMismatch { expected: order * order, got: data.len() });
        }
        Ok(Self { order, data })
    }

    pub fn from_real(m: &RealMatrix) -> Self {
        Self {
            order: m.order,
            data: m.data.iter().map(|&v| Complex64::new(v, 0.0)).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let n = self.order;
        assert_eq!(n, rhs.order, "matrix orders differ");
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let row = &rhs.data[k * n..(k + 1) * n];
                for (o, &b) in out.data[i * n..(i + 1) * n].iter_mut().zip(row) {
                    *o += a * b;
                }
            }
        }
        out
    }

    /// `alpha * self + beta * rhs` for real scalars.
    pub fn combine(&self, alpha: f64, beta: f64, rhs: &Self) -> Self {
        assert_eq!(self.order, rhs.order, "matrix orders differ");
        Self {
            order: self.order,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| a * alpha + b * beta).collect(),
        }
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self { order: self.order, data: self.data.iter().map(|v| v * factor).collect() }
    }

    pub fn adjoint(&self) -> Self {
        let n = self.order;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.order).map(|i| self[(i, i)]).sum()
    }

    pub fn hermitian_deviation(&self) -> f64 {
        let mut dev = 0.0f64;
        for i in 0..self.order {
            for j in 0..=i {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }

    /// Largest entrywise modulus of `self - rhs`.
    pub fn max_abs_diff(&self, rhs: &Self) -> f64 {
        self.data.iter().zip(&rhs.data).fold(0.0f64, |m, (a, b)| m.max((a - b).norm()))
    }

    /// Largest entrywise modulus of `self * self^† - I`.
    pub fn unitarity_deviation(&self) -> f64 {
        let prod = self.mul(&self.adjoint());
        prod.max_abs_diff(&Self::identity(self.order))
    }

    /// Real and imaginary parts as separate real matrices.
    pub fn split(&self) -> (RealMatrix, RealMatrix) {
        let re = self.data.iter().map(|z| z.re).collect();
        let im = self.data.iter().map(|z| z.im).collect();
        (
            RealMatrix { order: self.order, data: re },
            RealMatrix { order: self.order, data: im },
        )
    }
}

/// Operations shared by the floating-point matrix types, so polynomial
/// recurrences can be written once.
pub trait FloatMatrix: Clone {
    fn identity(order: usize) -> Self;
    fn order(&self) -> usize;
    fn mul(&self, rhs: &Self) -> Self;
    fn combine(&self, alpha: f64, beta: f64, rhs: &Self) -> Self;
    fn scaled(&self, factor: f64) -> Self;
}

macro_rules! float_matrix {
    ($ty:ty) => {
        impl FloatMatrix for $ty {
            fn identity(order: usize) -> Self {
                <$ty>::identity(order)
            }
            fn order(&self) -> usize {
                <$ty>::order(self)
            }
            fn mul(&self, rhs: &Self) -> Self {
                <$ty>::mul(self, rhs)
            }
            fn combine(&self, alpha: f64, beta: f64, rhs: &Self) -> Self {
                <$ty>::combine(self, alpha, beta, rhs)
            }
            fn scaled(&self, factor: f64) -> Self {
                <$ty>::scaled(self, factor)
            }
        }
    };
}

float_matrix!(RealMatrix);
float_matrix!(ComplexMatrix);
