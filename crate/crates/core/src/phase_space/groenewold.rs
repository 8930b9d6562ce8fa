use num_complex::Complex;

use super::{GridFunction, Hbar};
use crate::error::{Error, Result};
use crate::scalar::{cis, czero, Real};

/// `(1/π²ħ²) exp[(2i/ħ)(p2q1 − p1q2 + pq2 − p2q + p1q − pq1)]`.
#[allow(clippy::too_many_arguments)]
pub fn groenewold_kernel<T: Real>(
    q1: T,
    p1: T,
    q2: T,
    p2: T,
    q: T,
    p: T,
    hbar: Hbar<T>,
) -> Complex<T> {
    let h = hbar.get();
    let area = p2 * q1 - p1 * q2 + p * q2 - p2 * q + p1 * q - p * q1;
    cis(T::lit(2.0) * area / h) / (T::PI() * T::PI() * h * h)
}

/// `(A ⋆ B)(q, p)` by direct quadrature of the Grönewold integral over the
/// grid. The phase separates into factors of one sample pair each plus the
/// coupling `e^{(2i/ħ)(q1p2 − p1q2)}`, so the four-fold sum costs `O(n³)`.
pub fn groenewold_sample<T: Real>(
    a: &GridFunction<T>,
    b: &GridFunction<T>,
    q: T,
    p: T,
    hbar: Hbar<T>,
) -> Result<Complex<T>> {
    a.grid().check_same(b.grid())?;
    let g = *a.grid();
    if !g.contains(q, p) {
        return Err(Error::PointOutsideGrid {
            q: q.to_f64_lossy(),
            p: p.to_f64_lossy(),
        });
    }
    let h = hbar.get();
    if h <= T::zero() {
        return Err(Error::InvalidArgument(
            "the Grönewold kernel needs hbar > 0".into(),
        ));
    }
    let n = g.n();
    let x = g.coords();
    let k = T::lit(2.0) / h;
    let e: Vec<Complex<T>> = (0..n * n).map(|i| cis(k * x[i / n] * x[i % n])).collect();
    let a2: Vec<Complex<T>> = (0..n * n)
        .map(|i| a.values()[i] * cis(k * (q * x[i % n] - p * x[i / n])))
        .collect();
    let b2: Vec<Complex<T>> = (0..n * n)
        .map(|i| b.values()[i] * cis(k * (p * x[i / n] - q * x[i % n])))
        .collect();
    // t[j1][j2] = Σ_m1 a2[j1][m1] conj(e[m1][j2])
    let mut t = vec![czero::<T>(); n * n];
    for j1 in 0..n {
        for m1 in 0..n {
            let av = a2[j1 * n + m1];
            for j2 in 0..n {
                t[j1 * n + j2] += av * e[m1 * n + j2].conj();
            }
        }
    }
    let mut total = czero::<T>();
    for j1 in 0..n {
        let mut u = vec![czero::<T>(); n];
        for j2 in 0..n {
            let tv = t[j1 * n + j2];
            for (m2, uv) in u.iter_mut().enumerate() {
                *uv += tv * b2[j2 * n + m2];
            }
        }
        for (m2, uv) in u.iter().enumerate() {
            total += uv * e[j1 * n + m2];
        }
    }
    let s = g.spacing();
    Ok(total * (s * s * s * s / (T::PI() * T::PI() * h * h)))
}
