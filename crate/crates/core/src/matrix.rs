//! Dense complex square matrices.
//!
//! Every operator in the finite quantizer/dequantizer schemes is a small
//! (2x2 or 3x3) matrix, so a plain row-major `Vec` is all that is needed.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{cone, creal, czero, max_of, Real};

#[derive(Clone, Debug, PartialEq)]
pub struct ComplexSquareMatrix<T> {
    dim: usize,
    entries: Vec<Complex<T>>,
}

impl<T: Real> ComplexSquareMatrix<T> {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![czero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = cone();
        }
        m
    }

    /// Matrix unit `E_ij` (one in row `i`, column `j`).
    pub fn unit(dim: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(dim);
        m.entries[i * dim + j] = cone();
        m
    }

    /// Builds a matrix from rows; every row must have `rows.len()` entries
    /// and every entry must be finite.
    pub fn from_rows(rows: Vec<Vec<Complex<T>>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::InvalidArgument(
                "matrix dimension must be at least 1".into(),
            ));
        }
        let mut entries = Vec::with_capacity(dim * dim);
        for (r, row) in rows.into_iter().enumerate() {
            if row.len() != dim {
                return Err(Error::ShapeViolation {
                    row: r,
                    col: row.len(),
                    reason: format!("row has {} entries, expected {dim}", row.len()),
                });
            }
            entries.extend(row);
        }
        let m = Self { dim, entries };
        m.check_finite()?;
        Ok(m)
    }

    pub fn from_real_rows(rows: &[Vec<T>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| creal(x)).collect())
                .collect(),
        )
    }

    pub fn diagonal(diag: &[Complex<T>]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m.set(i, i, d);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex<T> {
        self.entries[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex<T>) {
        self.entries[i * self.dim + j] = v;
    }

    pub fn entries(&self) -> &[Complex<T>] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<Complex<T>>> {
        self.entries.chunks(self.dim).map(|r| r.to_vec()).collect()
    }

    pub fn check_finite(&self) -> Result<()> {
        match self
            .entries
            .iter()
            .position(|z| !(z.re.is_finite() && z.im.is_finite()))
        {
            None => Ok(()),
            Some(k) => Err(Error::ShapeViolation {
                row: k / self.dim,
                col: k % self.dim,
                reason: "entry is not finite".into(),
            }),
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let d = self.dim;
        let mut m = Self::zeros(d);
        for i in 0..d {
            for j in 0..d {
                m.entries[j * d + i] = self.entries[i * d + j].conj();
            }
        }
        m
    }

    pub fn trace(&self) -> Complex<T> {
        (0..self.dim).fold(czero(), |acc, i| acc + self.get(i, i))
    }

    /// `Tr(self · other)` without forming the product.
    pub fn trace_product(&self, other: &Self) -> Complex<T> {
        let d = self.dim;
        let mut acc = czero();
        for i in 0..d {
            for k in 0..d {
                acc += self.entries[i * d + k] * other.entries[k * d + i];
            }
        }
        acc
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn scale_real(&self, s: T) -> Self {
        self.scale(creal(s))
    }

    pub fn max_abs(&self) -> T {
        max_of(self.entries.iter().map(|z| z.norm()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        max_of(
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| (a - b).norm()),
        )
    }

    pub fn is_hermitian(&self, tol: T) -> bool {
        self.max_abs_diff(&self.adjoint()) <= tol
    }

    /// Determinant by Gaussian elimination with partial pivoting.
    pub fn determinant(&self) -> Complex<T> {
        let d = self.dim;
        let mut a = self.entries.clone();
        let mut det = cone::<T>();
        for col in 0..d {
            let pivot = (col..d)
                .max_by(|&x, &y| {
                    a[x * d + col]
                        .norm()
                        .partial_cmp(&a[y * d + col].norm())
                        .unwrap_or(std::cmp::Ordering::Equal)
                })
                .unwrap_or(col);
            if a[pivot * d + col].norm() == T::zero() {
                return czero();
            }
            if pivot != col {
                for j in 0..d {
                    a.swap(pivot * d + j, col * d + j);
                }
                det = -det;
            }
            let p = a[col * d + col];
            det *= p;
            for r in col + 1..d {
                let f = a[r * d + col] / p;
                for j in col..d {
                    let v = a[col * d + j];
                    a[r * d + j] -= f * v;
                }
            }
        }
        det
    }

    /// Inverse by Gauss–Jordan elimination with partial pivoting.
    pub fn inverse(&self) -> Result<Self> {
        let d = self.dim;
        let mut a = self.entries.clone();
        let mut inv = Self::identity(d).entries;
        let tiny = T::epsilon() * self.max_abs();
        for col in 0..d {
            let pivot = (col..d)
                .max_by(|&x, &y| {
                    a[x * d + col]
                        .norm()
                        .partial_cmp(&a[y * d + col].norm())
                        .unwrap_or(std::cmp::Ordering::Equal)
                })
                .unwrap_or(col);
            if a[pivot * d + col].norm() <= tiny {
                return Err(Error::InvalidArgument("matrix is singular".into()));
            }
            for j in 0..d {
                a.swap(pivot * d + j, col * d + j);
                inv.swap(pivot * d + j, col * d + j);
            }
            let p = a[col * d + col].inv();
            for j in 0..d {
                a[col * d + j] *= p;
                inv[col * d + j] *= p;
            }
            for r in 0..d {
                if r == col {
                    continue;
                }
                let f = a[r * d + col];
                if f == czero() {
                    continue;
                }
                for j in 0..d {
                    let (ac, ic) = (a[col * d + j], inv[col * d + j]);
                    a[r * d + j] -= f * ac;
                    inv[r * d + j] -= f * ic;
                }
            }
        }
        Ok(Self {
            dim: d,
            entries: inv,
        })
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|z| z.conj()).collect(),
        }
    }

    /// Commutator `AB − BA`.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// `A K B − B K A`.
    pub fn k_commutator(&self, k: &Self, other: &Self) -> Self {
        &(&(self * k) * other) - &(&(other * k) * self)
    }

    fn assert_same_dim(&self, other: &Self) {
        assert_eq!(
            self.dim, other.dim,
            "matrix dimension mismatch ({} vs {})",
            self.dim, other.dim
        );
    }
}

impl<'a, T: Real> Mul<&'a ComplexSquareMatrix<T>> for &'a ComplexSquareMatrix<T> {
    type Output = ComplexSquareMatrix<T>;

    fn mul(self, rhs: &'a ComplexSquareMatrix<T>) -> ComplexSquareMatrix<T> {
        self.assert_same_dim(rhs);
        let d = self.dim;
        let mut out = ComplexSquareMatrix::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let a = self.entries[i * d + k];
                if a == czero() {
                    continue;
                }
                for j in 0..d {
                    out.entries[i * d + j] += a * rhs.entries[k * d + j];
                }
            }
        }
        out
    }
}

impl<'a, T: Real> Add<&'a ComplexSquareMatrix<T>> for &'a ComplexSquareMatrix<T> {
    type Output = ComplexSquareMatrix<T>;

    fn add(self, rhs: &'a ComplexSquareMatrix<T>) -> ComplexSquareMatrix<T> {
        self.assert_same_dim(rhs);
        ComplexSquareMatrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl<'a, T: Real> Sub<&'a ComplexSquareMatrix<T>> for &'a ComplexSquareMatrix<T> {
    type Output = ComplexSquareMatrix<T>;

    fn sub(self, rhs: &'a ComplexSquareMatrix<T>) -> ComplexSquareMatrix<T> {
        self.assert_same_dim(rhs);
        ComplexSquareMatrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl<T: Real> Neg for &ComplexSquareMatrix<T> {
    type Output = ComplexSquareMatrix<T>;

    fn neg(self) -> ComplexSquareMatrix<T> {
        self.scale_real(-T::one())
    }
}

/// Pauli matrices `σ0..σ3` (identity first).
pub fn pauli<T: Real>() -> [ComplexSquareMatrix<T>; 4] {
    let z = czero::<T>();
    let o = cone::<T>();
    let i = Complex::new(T::zero(), T::one());
    let m = |a: [Complex<T>; 4]| ComplexSquareMatrix {
        dim: 2,
        entries: a.to_vec(),
    };
    [
        m([o, z, z, o]),
        m([z, o, o, z]),
        m([z, -i, i, z]),
        m([o, z, z, -o]),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    type M = ComplexSquareMatrix<f64>;

    #[test]
    fn pauli_products() {
        let s = pauli::<f64>();
        let i = Complex::new(0.0, 1.0);
        // σ1σ2 = iσ3
        assert!((&s[1] * &s[2]).max_abs_diff(&s[3].scale(i)) < 1e-15);
        // [σ1, σ2] = 2iσ3
        assert!(s[1].commutator(&s[2]).max_abs_diff(&s[3].scale(i * 2.0)) < 1e-15);
        assert_eq!(s[0].trace(), Complex::new(2.0, 0.0));
        assert_eq!(s[3].trace(), Complex::new(0.0, 0.0));
    }

    #[test]
    fn ragged_rows_are_rejected() {
        let rows = vec![vec![Complex::new(1.0, 0.0)], vec![]];
        assert!(matches!(
            M::from_rows(rows),
            Err(Error::ShapeViolation { .. })
        ));
        assert!(M::from_rows(vec![]).is_err());
    }

    #[test]
    fn non_finite_entry_is_located() {
        let rows = vec![
            vec![Complex::new(1.0, 0.0), Complex::new(0.0, 0.0)],
            vec![Complex::new(f64::NAN, 0.0), Complex::new(0.0, 0.0)],
        ];
        match M::from_rows(rows) {
            Err(Error::ShapeViolation { row, col, .. }) => assert_eq!((row, col), (1, 0)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn determinant_and_trace_product() {
        let j = M::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        assert!((j.determinant() - Complex::new(-1.0, 0.0)).norm() < 1e-15);
        assert_eq!(M::zeros(3).determinant(), Complex::new(0.0, 0.0));
        let s = pauli::<f64>();
        assert!((s[1].trace_product(&s[1]) - Complex::new(2.0, 0.0)).norm() < 1e-15);
        assert_eq!(s[1].trace_product(&s[2]), (&s[1] * &s[2]).trace());
    }

    #[test]
    fn inverse_of_small_matrices() {
        let a = M::from_rows(vec![
            vec![Complex::new(1.0, 1.0), Complex::new(2.0, 0.0)],
            vec![Complex::new(0.0, -1.0), Complex::new(0.5, 0.0)],
        ])
        .unwrap();
        let prod = &a * &a.inverse().unwrap();
        assert!(prod.max_abs_diff(&M::identity(2)) < 1e-14);
        assert!(M::unit(2, 0, 1).inverse().is_err());
    }

    #[test]
    fn adjoint_of_sigma2_is_itself() {
        let s = pauli::<f64>();
        assert!(s[2].is_hermitian(0.0));
        assert!(!M::unit(2, 0, 1).is_hermitian(1e-12));
    }
}
