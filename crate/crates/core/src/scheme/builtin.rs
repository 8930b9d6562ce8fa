use num_complex::Complex;

use super::{PairingForm, Scheme};
use crate::error::{Error, Result};
use crate::matrix::{pauli, ComplexSquareMatrix};
use crate::scalar::Real;

pub const BUILTIN_SCHEMES: [&str; 3] = ["u2", "su2sb2", "gl2half"];

/// Looks up one of the built-in schemes.
///
/// * `u2`: `U(x) = D(x) = σ_x / 2` for `x = 0..3`, paired by `2 Tr(U† D)`.
/// * `su2sb2`: `D(j) = −(i/2) σ_j`, `U(j) = ½(σ_j + i ε_{jk3} σ_k)`, paired by
///   `2 Im Tr(U† D†)`. The quantizers span su(2), the dequantizers sb(2,ℂ).
/// * `gl2half`: dequantizers `{E11, E12}`, quantizers `{E22, E21}`, paired by
///   `Tr(U† J D J)` with `J` the exchange matrix.
pub fn builtin_scheme<T: Real>(name: &str) -> Result<Scheme<T>> {
    match name {
        "u2" => {
            let half: Vec<_> = pauli::<T>()
                .iter()
                .map(|s| s.scale_real(T::lit(0.5)))
                .collect();
            Scheme::new(
                "u2",
                half.clone(),
                half,
                PairingForm::ScaledTrace { scale: T::lit(2.0) },
            )
        }
        "su2sb2" => {
            let s = pauli::<T>();
            let i = Complex::new(T::zero(), T::one());
            let half = T::lit(0.5);
            let quantizers = (1..4).map(|j| s[j].scale(-i * half)).collect();
            // ε_{jk3} is nonzero only for (j, k) = (1, 2) → +1 and (2, 1) → −1
            let dequantizers = vec![
                (&s[1] + &s[2].scale(i)).scale_real(half),
                (&s[2] - &s[1].scale(i)).scale_real(half),
                s[3].scale_real(half),
            ];
            Scheme::new(
                "su2sb2",
                quantizers,
                dequantizers,
                PairingForm::ScaledImagTrace { scale: T::lit(2.0) },
            )
        }
        "gl2half" => {
            let e = |i, j| ComplexSquareMatrix::<T>::unit(2, i, j);
            let j = &e(0, 1) + &e(1, 0);
            Scheme::new(
                "gl2half",
                vec![e(1, 1), e(1, 0)],
                vec![e(0, 0), e(0, 1)],
                PairingForm::JTwistedTrace { j },
            )
        }
        other => Err(Error::UnknownScheme(other.to_string())),
    }
}
