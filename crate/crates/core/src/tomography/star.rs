use num_complex::Complex;

use super::{Tomogram, TomographicPoint};
use crate::error::{Error, Result};
use crate::phase_space::{dft2, fourier_product, GridFunction, Hbar, ProductWeight};
use crate::scalar::{cis, czero, Real};

/// `exp[(iħ/2)(ν1μ2 − ν2μ1)]`.
pub fn twist_factor<T: Real>(
    x1: &TomographicPoint<T>,
    x2: &TomographicPoint<T>,
    hbar: Hbar<T>,
) -> Complex<T> {
    cis(hbar.get() * T::lit(0.5) * (x1.nu * x2.mu - x2.nu * x1.mu))
}

// In ray representation every delta of the tomographic kernels integrates
// out and the star products become convolutions of ray data. The weights
// are even under (μ, ν) → (−μ, −ν), so ray data and spectra convolve alike.

/// Tomogram of the pointwise product.
pub fn classical_star<T: Real>(wa: &Tomogram<T>, wb: &Tomogram<T>) -> Result<Tomogram<T>> {
    fourier_product(wa.ray_data(), wb.ray_data(), ProductWeight::Pointwise)
        .map(Tomogram::from_ray_data)
}

/// Tomogram of the Moyal product: the classical kernel times the twist factor.
pub fn quantum_star<T: Real>(
    wa: &Tomogram<T>,
    wb: &Tomogram<T>,
    hbar: Hbar<T>,
) -> Result<Tomogram<T>> {
    fourier_product(wa.ray_data(), wb.ray_data(), ProductWeight::Moyal { hbar })
        .map(Tomogram::from_ray_data)
}

/// Tomogram of the Poisson bracket `{A, B}`.
pub fn poisson_star<T: Real>(wa: &Tomogram<T>, wb: &Tomogram<T>) -> Result<Tomogram<T>> {
    fourier_product(wa.ray_data(), wb.ray_data(), ProductWeight::Poisson)
        .map(Tomogram::from_ray_data)
}

/// `⟨A⟩ = ∫ w_ρ(X, μ, ν) e^{iX} Ã(μ, ν) / (2πħ) dX dμ dν`, evaluated on the
/// ray data as `Re Σ w̃_ρ(μ, ν) Ã(μ, ν) dμ dν / 2πħ`.
pub fn mean_value_tomographic<T: Real>(
    w_rho: &Tomogram<T>,
    a: &GridFunction<T>,
    hbar: Hbar<T>,
) -> Result<T> {
    w_rho.grid().check_same(a.grid())?;
    let h = hbar.get();
    if h <= T::zero() {
        return Err(Error::InvalidArgument("mean values need hbar > 0".into()));
    }
    let fa = dft2(a);
    let s = w_rho
        .ray_data()
        .values()
        .iter()
        .zip(fa.values())
        .fold(czero::<T>(), |acc, (r, x)| acc + r * x);
    let d = w_rho.grid().freq_spacing();
    Ok(s.re * d * d / (T::lit(2.0) * T::PI() * h))
}
