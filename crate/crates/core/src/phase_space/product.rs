use num_complex::Complex;
use rayon::prelude::*;

use super::{FourierFunction, Grid, Hbar};
use crate::error::Result;
use crate::scalar::{cis, cone, czero, Real};

/// Weight `W` in `(1/2π) ∫ Ã(μ1,ν1) B̃(μ−μ1, ν−ν1) W dμ1 dν1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ProductWeight<T> {
    /// `W = 1`: transform of the pointwise product.
    Pointwise,
    /// `W = exp[(iħ/2)(ν1μ2 − ν2μ1)]` with `(μ2, ν2) = (μ − μ1, ν − ν1)`.
    Moyal { hbar: Hbar<T> },
    /// `W = ν1μ2 − ν2μ1`: transform of the Poisson bracket.
    Poisson,
}

/// `dμ dν / 2π`.
pub(crate) fn measure<T: Real>(g: &Grid<T>) -> T {
    let d = g.freq_spacing();
    d * d / (T::lit(2.0) * T::PI())
}

/// Linear (non-periodic) convolution of two spectra on the centred grid,
/// with the chosen weight. Terms whose difference frequency falls off the
/// grid are dropped.
///
/// The Moyal weight depends only on `ν1μ − νμ1`, so it factors as
/// `P(k, l1) · conj(P(k1, l))` with `P(a, b) = e^{(iħ/2) μ_a ν_b}`; the
/// pointwise product runs through the same loop with `P ≡ 1`.
pub fn fourier_product<T: Real>(
    fa: &FourierFunction<T>,
    fb: &FourierFunction<T>,
    weight: ProductWeight<T>,
) -> Result<FourierFunction<T>> {
    fa.grid().check_same(fb.grid())?;
    let g = *fa.grid();
    let n = g.n();
    let c = g.center();
    let freqs = g.freqs();
    let table: Option<Vec<Complex<T>>> = match weight {
        ProductWeight::Pointwise => Some(vec![cone(); n * n]),
        ProductWeight::Moyal { hbar } => {
            let half = hbar.get() * T::lit(0.5);
            let mut t = Vec::with_capacity(n * n);
            for a in 0..n {
                for b in 0..n {
                    t.push(cis(half * freqs[a] * freqs[b]));
                }
            }
            Some(t)
        }
        ProductWeight::Poisson => None,
    };
    // Scaling by 1/height rather than by the measure keeps the unit impulse
    // at exactly 1, so impulse ⋆ impulse reproduces the impulse bit for bit.
    let height = super::impulse_height(&g);
    let a: Vec<Complex<T>> = fa.values().iter().map(|&z| z / height).collect();
    let b = fb.values();
    let mut out = vec![czero::<T>(); n * n];
    out.par_chunks_mut(n).enumerate().for_each(|(k, row)| {
        // k − k1 + c ∈ [0, n)
        let k1_lo = (k + c + 1).saturating_sub(n);
        let k1_hi = (k + c).min(n - 1);
        for (l, slot) in row.iter_mut().enumerate() {
            let l1_lo = (l + c + 1).saturating_sub(n);
            let l1_hi = (l + c).min(n - 1);
            let mut acc = czero::<T>();
            for k1 in k1_lo..=k1_hi {
                let a_row = &a[k1 * n..(k1 + 1) * n];
                let b_row = &b[(k + c - k1) * n..(k + c - k1 + 1) * n];
                match &table {
                    Some(p) => {
                        let p_row = &p[k * n..(k + 1) * n];
                        let mut inner = czero::<T>();
                        for l1 in l1_lo..=l1_hi {
                            inner += p_row[l1] * a_row[l1] * b_row[l + c - l1];
                        }
                        acc += inner * p[k1 * n + l].conj();
                    }
                    None => {
                        let mut s0 = czero::<T>();
                        let mut s1 = czero::<T>();
                        for l1 in l1_lo..=l1_hi {
                            let t = a_row[l1] * b_row[l + c - l1];
                            s0 += t;
                            s1 += t * freqs[l1];
                        }
                        acc += s1 * freqs[k] - s0 * (freqs[l] * freqs[k1]);
                    }
                }
            }
            *slot = acc;
        }
    });
    FourierFunction::new(g, out)
}

pub fn pointwise_fourier_apply<T: Real>(
    fa: &FourierFunction<T>,
    fb: &FourierFunction<T>,
) -> Result<FourierFunction<T>> {
    fourier_product(fa, fb, ProductWeight::Pointwise)
}

pub fn moyal_fourier_apply<T: Real>(
    fa: &FourierFunction<T>,
    fb: &FourierFunction<T>,
    hbar: Hbar<T>,
) -> Result<FourierFunction<T>> {
    fourier_product(fa, fb, ProductWeight::Moyal { hbar })
}

pub fn poisson_fourier_apply<T: Real>(
    fa: &FourierFunction<T>,
    fb: &FourierFunction<T>,
) -> Result<FourierFunction<T>> {
    fourier_product(fa, fb, ProductWeight::Poisson)
}
