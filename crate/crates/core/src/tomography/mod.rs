//! Symplectic tomograms `w(X, μ, ν)` in ray representation.
//!
//! A tomogram is stored through `∫ w(X, μ, ν) e^{iX} dX`, which equals the
//! phase-space transform `Ã(−μ, −ν)` of the underlying function. Homogeneity
//! `w(λX, λμ, λν) = |λ|⁻¹ w(X, μ, ν)` lets one grid of `(μ, ν)` values
//! describe every ray.

mod star;
mod wavefunction;

pub use star::{classical_star, mean_value_tomographic, poisson_star, quantum_star, twist_factor};
pub use wavefunction::{pure_state_tomogram, Wavefunction};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::phase_space::{dft2, idft2, FourierFunction, Grid, GridFunction, Hbar};
use crate::scalar::{czero, Real};

/// Largest boundary mass `Σ|A| h²` over the outer ring accepted by [`Tomogram::radon`].
pub const BOUNDARY_MASS_LIMIT: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReferenceFrame<T> {
    pub s: T,
    pub theta: T,
}

/// `(μ, ν) = (s cos θ, s⁻¹ sin θ)`.
pub fn frame_to_munu<T: Real>(f: &ReferenceFrame<T>) -> Result<(T, T)> {
    if !(f.s > T::zero() && f.s.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "squeeze s must be positive, got {}",
            f.s
        )));
    }
    Ok((f.s * f.theta.cos(), f.theta.sin() / f.s))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TomographicPoint<T> {
    pub x: T,
    pub mu: T,
    pub nu: T,
}

impl<T: Real> TomographicPoint<T> {
    pub fn new(x: T, mu: T, nu: T) -> Self {
        Self { x, mu, nu }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Tomogram<T> {
    ray_data: FourierFunction<T>,
    // phase-space samples behind the ray data, used by the evaluator
    samples: GridFunction<T>,
}

impl<T: Real> Tomogram<T> {
    pub fn from_ray_data(ray_data: FourierFunction<T>) -> Self {
        let samples = idft2(&ray_data.reflected());
        Self { ray_data, samples }
    }

    /// Radon transform `w(X,μ,ν) = (1/2π) ∫ A(q,p) δ(X − μq − νp) dq dp`.
    pub fn radon(a: &GridFunction<T>) -> Result<Self> {
        let mass = a.boundary_mass();
        if mass > T::lit(BOUNDARY_MASS_LIMIT) {
            return Err(Error::NonDecaying {
                boundary_mass: mass.to_f64_lossy(),
            });
        }
        Ok(Self {
            ray_data: dft2(a).reflected(),
            samples: a.clone(),
        })
    }

    /// Ray data `χ(μ, ν) = ∫ ψ*(x − νħ/2) ψ(x + νħ/2) e^{iμx} dx` of a pure
    /// state, summed over the grid's position samples.
    pub fn from_wavefunction(psi: &Wavefunction<T>, grid: Grid<T>, hbar: Hbar<T>) -> Self {
        let n = grid.n();
        let h = grid.spacing();
        let xs = grid.coords();
        let freqs = grid.freqs();
        let half = hbar.get() * T::lit(0.5);
        let phases: Vec<Complex<T>> = (0..n * n)
            .map(|i| crate::scalar::cis(freqs[i / n] * xs[i % n]))
            .collect();
        let mut ray = FourierFunction::zeros(grid);
        for l in 0..n {
            let nu = freqs[l];
            let g: Vec<Complex<T>> = xs
                .iter()
                .map(|&x| psi.position(x - nu * half).conj() * psi.position(x + nu * half))
                .collect();
            for k in 0..n {
                let mut s = czero::<T>();
                for (j, gv) in g.iter().enumerate() {
                    s += gv * phases[k * n + j];
                }
                ray.set(k, l, s * h);
            }
        }
        Self::from_ray_data(ray)
    }

    pub fn grid(&self) -> &Grid<T> {
        self.ray_data.grid()
    }

    pub fn ray_data(&self) -> &FourierFunction<T> {
        &self.ray_data
    }

    /// Phase-space function whose Radon transform this is.
    pub fn inverse_radon(&self) -> GridFunction<T> {
        idft2(&self.ray_data.reflected())
    }

    /// `w(X, μ, ν)` as a complex number (real for real phase-space functions).
    ///
    /// With `r = |(μ, ν)|`, `e = (μ, ν)/r` and `Y = X/r`, the ray integral
    /// `(1/2π) ∫ Ã(ke) e^{ikY} dk` over the grid band `|k| ≤ π/h` is summed in
    /// closed form: `w = (h²/2π r) Σ A(z) (S/π) sinc(S(Y − e·z))`, `S = π/h`.
    pub fn value(&self, x: T, mu: T, nu: T) -> Result<Complex<T>> {
        let r = (mu * mu + nu * nu).sqrt();
        if !(r > T::zero()) {
            return Err(Error::SingularFrame {
                mu: mu.to_f64_lossy(),
                nu: nu.to_f64_lossy(),
                reason: "the ray direction (mu, nu) must be nonzero".into(),
            });
        }
        let g = self.grid();
        let n = g.n();
        let h = g.spacing();
        let s = T::PI() / h;
        let (e1, e2, y) = (mu / r, nu / r, x / r);
        let coords = g.coords();
        let mut acc = czero::<T>();
        for j in 0..n {
            let base = e1 * coords[j] - y;
            for m in 0..n {
                let u = s * (base + e2 * coords[m]);
                let sinc = if u == T::zero() {
                    T::one()
                } else {
                    u.sin() / u
                };
                acc += self.samples.get(j, m) * sinc;
            }
        }
        let two_pi = T::lit(2.0) * T::PI();
        Ok(acc * (h * h * s / (two_pi * T::PI() * r)))
    }

    /// Real part of [`Tomogram::value`].
    pub fn evaluate(&self, x: T, mu: T, nu: T) -> Result<T> {
        Ok(self.value(x, mu, nu)?.re)
    }
}
