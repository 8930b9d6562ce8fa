use num_complex::Complex;

use crate::error::{check_len, Error, Result};
use crate::matrix::ComplexSquareMatrix;
use crate::scalar::{creal, Real};

/// Scalar map `pair(A, B)` between the dequantizer space (first slot) and
/// the quantizer space (second slot).
#[derive(Clone, Debug, PartialEq)]
pub enum PairingForm<T> {
    /// `c · Tr(A† B)`; complex-linear in `B`.
    ScaledTrace { scale: T },
    /// `c · Im Tr(A† B†)`; real-bilinear, real-valued.
    ScaledImagTrace { scale: T },
    /// `Tr(A† J B J)`; complex-linear in `B`.
    JTwistedTrace { j: ComplexSquareMatrix<T> },
}

impl<T: Real> PairingForm<T> {
    pub fn validate(&self) -> Result<()> {
        match self {
            Self::ScaledTrace { scale } | Self::ScaledImagTrace { scale } => {
                if *scale == T::zero() || !scale.is_finite() {
                    return Err(Error::InvalidScheme(format!(
                        "pairing scale must be finite and nonzero, got {scale}"
                    )));
                }
            }
            Self::JTwistedTrace { j } => {
                j.check_finite()?;
                let det = j.determinant();
                if det.norm() <= T::epsilon() * j.max_abs().powi(j.dim() as i32) {
                    return Err(Error::InvalidScheme("twisting matrix J is singular".into()));
                }
            }
        }
        Ok(())
    }

    pub fn pair(
        &self,
        a: &ComplexSquareMatrix<T>,
        b: &ComplexSquareMatrix<T>,
    ) -> Result<Complex<T>> {
        check_len(a.dim(), b.dim())?;
        Ok(match self {
            Self::ScaledTrace { scale } => a.adjoint().trace_product(b) * *scale,
            Self::ScaledImagTrace { scale } => {
                creal(a.adjoint().trace_product(&b.adjoint()).im * *scale)
            }
            Self::JTwistedTrace { j } => {
                check_len(a.dim(), j.dim())?;
                let jbj = &(j * b) * j;
                a.adjoint().trace_product(&jbj)
            }
        })
    }

    /// Whether symbols may carry complex coefficients. The imaginary-trace
    /// form is only real-linear, so its symbols are real.
    pub fn is_complex_linear(&self) -> bool {
        !matches!(self, Self::ScaledImagTrace { .. })
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Self::ScaledTrace { .. } => "scaled-trace",
            Self::ScaledImagTrace { .. } => "scaled-imag-trace",
            Self::JTwistedTrace { .. } => "j-twisted-trace",
        }
    }
}
