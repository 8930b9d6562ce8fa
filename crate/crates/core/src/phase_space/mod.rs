//! Phase-space functions on a square grid and their Fourier images.
//!
//! Positions are `q_j = (j − n/2)·h`, `p_m = (m − n/2)·h` with `h = 2L/n`;
//! frequencies are `μ_k = (k − n/2)·dμ` with `dμ = π/L`. The transform is
//! `Ã(μ, ν) = (1/2π) ∫ A(q, p) e^{−i(μq + νp)} dq dp`.

mod asymptotic;
mod fft;
mod groenewold;
mod product;

pub use asymptotic::{moyal_asymptotic, poisson_bracket_grid, MoyalOrder};
pub use fft::{dft2, idft2, spectral_derivative, Axis};
pub use groenewold::{groenewold_kernel, groenewold_sample};
pub use product::{
    fourier_product, moyal_fourier_apply, pointwise_fourier_apply, poisson_fourier_apply,
    ProductWeight,
};

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{czero, max_of, Real};

/// Reduced Planck constant. Zero is accepted as the classical limit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Hbar<T>(T);

impl<T: Real> Hbar<T> {
    pub fn new(v: T) -> Result<Self> {
        if !v.is_finite() || v < T::zero() {
            return Err(Error::InvalidArgument(format!(
                "hbar must be finite and non-negative, got {v}"
            )));
        }
        Ok(Self(v))
    }

    pub fn one() -> Self {
        Self(T::one())
    }

    pub fn get(self) -> T {
        self.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid<T> {
    n: usize,
    #[serde(rename = "L")]
    half_width: T,
}

impl<T: Real> Grid<T> {
    /// `n` must be a power of two, at least 8.
    pub fn new(n: usize, half_width: T) -> Result<Self> {
        if n < 8 || !n.is_power_of_two() {
            return Err(Error::InvalidGrid(format!(
                "n must be a power of two >= 8, got {n}"
            )));
        }
        if !(half_width.is_finite() && half_width > T::zero()) {
            return Err(Error::InvalidGrid(format!(
                "L must be positive, got {half_width}"
            )));
        }
        Ok(Self { n, half_width })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn half_width(&self) -> T {
        self.half_width
    }

    pub fn spacing(&self) -> T {
        T::lit(2.0) * self.half_width / T::from_count(self.n)
    }

    pub fn freq_spacing(&self) -> T {
        T::PI() / self.half_width
    }

    #[inline]
    pub fn coord(&self, j: usize) -> T {
        (T::from_count(j) - T::from_count(self.n / 2)) * self.spacing()
    }

    #[inline]
    pub fn freq(&self, k: usize) -> T {
        (T::from_count(k) - T::from_count(self.n / 2)) * self.freq_spacing()
    }

    pub fn coords(&self) -> Vec<T> {
        (0..self.n).map(|j| self.coord(j)).collect()
    }

    pub fn freqs(&self) -> Vec<T> {
        (0..self.n).map(|k| self.freq(k)).collect()
    }

    /// Index of the origin on either axis.
    pub fn center(&self) -> usize {
        self.n / 2
    }

    pub fn contains(&self, q: T, p: T) -> bool {
        let lo = -self.half_width;
        let hi = self.coord(self.n - 1);
        q >= lo && q <= hi && p >= lo && p <= hi
    }

    pub(crate) fn check_same(&self, other: &Self) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::GridMismatch(format!(
                "grid (n={}, L={}) vs (n={}, L={})",
                self.n, self.half_width, other.n, other.half_width
            )))
        }
    }
}

/// Row-major samples `values[j·n + m] = A(q_j, p_m)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GridFunction<T> {
    grid: Grid<T>,
    values: Vec<Complex<T>>,
}

/// Row-major samples `values[k·n + l] = Ã(μ_k, ν_l)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FourierFunction<T> {
    grid: Grid<T>,
    values: Vec<Complex<T>>,
}

fn checked_values<T: Real>(grid: &Grid<T>, values: Vec<Complex<T>>) -> Result<Vec<Complex<T>>> {
    crate::error::check_len(grid.n * grid.n, values.len())?;
    if let Some(k) = values
        .iter()
        .position(|z| !(z.re.is_finite() && z.im.is_finite()))
    {
        return Err(Error::ShapeViolation {
            row: k / grid.n,
            col: k % grid.n,
            reason: "sample is not finite".into(),
        });
    }
    Ok(values)
}

macro_rules! sampled_common {
    ($t:ident) => {
        impl<T: Real> $t<T> {
            pub fn new(grid: Grid<T>, values: Vec<Complex<T>>) -> Result<Self> {
                let values = checked_values(&grid, values)?;
                Ok(Self { grid, values })
            }

            pub fn zeros(grid: Grid<T>) -> Self {
                Self {
                    values: vec![czero(); grid.n * grid.n],
                    grid,
                }
            }

            pub fn grid(&self) -> &Grid<T> {
                &self.grid
            }

            pub fn values(&self) -> &[Complex<T>] {
                &self.values
            }

            pub fn into_values(self) -> Vec<Complex<T>> {
                self.values
            }

            #[inline]
            pub fn get(&self, a: usize, b: usize) -> Complex<T> {
                self.values[a * self.grid.n + b]
            }

            #[inline]
            pub fn set(&mut self, a: usize, b: usize, v: Complex<T>) {
                let n = self.grid.n;
                self.values[a * n + b] = v;
            }

            pub fn max_abs(&self) -> T {
                max_of(self.values.iter().map(|z| z.norm()))
            }

            pub fn max_abs_diff(&self, other: &Self) -> T {
                max_of(
                    self.values
                        .iter()
                        .zip(&other.values)
                        .map(|(a, b)| (a - b).norm()),
                )
            }

            pub fn scale(&self, s: Complex<T>) -> Self {
                Self {
                    grid: self.grid,
                    values: self.values.iter().map(|&z| z * s).collect(),
                }
            }

            pub fn add(&self, other: &Self) -> Result<Self> {
                self.zip_with(other, |a, b| a + b)
            }

            pub fn sub(&self, other: &Self) -> Result<Self> {
                self.zip_with(other, |a, b| a - b)
            }

            pub fn zip_with(
                &self,
                other: &Self,
                f: impl Fn(Complex<T>, Complex<T>) -> Complex<T>,
            ) -> Result<Self> {
                self.grid.check_same(&other.grid)?;
                Ok(Self {
                    grid: self.grid,
                    values: self
                        .values
                        .iter()
                        .zip(&other.values)
                        .map(|(&a, &b)| f(a, b))
                        .collect(),
                })
            }
        }
    };
}

sampled_common!(GridFunction);
sampled_common!(FourierFunction);

impl<T: Real> GridFunction<T> {
    pub fn from_fn(grid: Grid<T>, f: impl Fn(T, T) -> Complex<T>) -> Self {
        let mut values = Vec::with_capacity(grid.n * grid.n);
        for j in 0..grid.n {
            let q = grid.coord(j);
            for m in 0..grid.n {
                values.push(f(q, grid.coord(m)));
            }
        }
        Self { grid, values }
    }

    pub fn from_real_fn(grid: Grid<T>, f: impl Fn(T, T) -> T) -> Self {
        Self::from_fn(grid, |q, p| Complex::new(f(q, p), T::zero()))
    }

    /// Pointwise product on the grid.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a * b)
    }

    /// Riemann sum `Σ A · h²`.
    pub fn integral(&self) -> Complex<T> {
        let h = self.grid.spacing();
        self.values.iter().fold(czero::<T>(), |acc, &z| acc + z) * (h * h)
    }

    /// `Σ |A| h²` over the outermost ring of samples.
    pub fn boundary_mass(&self) -> T {
        let n = self.grid.n;
        let h = self.grid.spacing();
        let mut s = T::zero();
        for j in 0..n {
            for m in 0..n {
                if j == 0 || m == 0 || j == n - 1 || m == n - 1 {
                    s += self.get(j, m).norm();
                }
            }
        }
        s * h * h
    }

    /// `Ã(μ, ν)` at an arbitrary frequency by direct summation.
    pub fn fourier_at(&self, mu: T, nu: T) -> Complex<T> {
        let g = &self.grid;
        let h = g.spacing();
        let ex: Vec<Complex<T>> = (0..g.n)
            .map(|j| crate::scalar::cis(-mu * g.coord(j)))
            .collect();
        let ey: Vec<Complex<T>> = (0..g.n)
            .map(|m| crate::scalar::cis(-nu * g.coord(m)))
            .collect();
        let mut s = czero::<T>();
        for j in 0..g.n {
            let mut row = czero::<T>();
            for m in 0..g.n {
                row += self.get(j, m) * ey[m];
            }
            s += row * ex[j];
        }
        s * (h * h / (T::lit(2.0) * T::PI()))
    }
}

impl<T: Real> FourierFunction<T> {
    pub fn from_fn(grid: Grid<T>, f: impl Fn(T, T) -> Complex<T>) -> Self {
        let mut values = Vec::with_capacity(grid.n * grid.n);
        for k in 0..grid.n {
            let mu = grid.freq(k);
            for l in 0..grid.n {
                values.push(f(mu, grid.freq(l)));
            }
        }
        Self { grid, values }
    }

    /// Discrete stand-in for `weight · 2π δ(μ) δ(ν)`: a single bin at the
    /// origin carrying `weight · 2π / (dμ dν)`.
    pub fn impulse(grid: Grid<T>, weight: Complex<T>) -> Self {
        let mut f = Self::zeros(grid);
        let c = grid.center();
        f.set(c, c, weight * impulse_height(&grid));
        f
    }

    /// `Ã(−μ, −ν)`, using the periodicity of the discrete spectrum.
    pub fn reflected(&self) -> Self {
        let n = self.grid.n;
        let mut out = Self::zeros(self.grid);
        for k in 0..n {
            for l in 0..n {
                out.set(k, l, self.get((n - k) % n, (n - l) % n));
            }
        }
        out
    }

    /// `(dμ dν / 2π) Σ Ã`: the value of the underlying function at the origin.
    pub fn total_weight(&self) -> Complex<T> {
        self.values.iter().fold(czero::<T>(), |acc, &z| acc + z)
            * impulse_height(&self.grid).recip()
    }
}

/// `2π / (dμ dν)`.
pub(crate) fn impulse_height<T: Real>(g: &Grid<T>) -> T {
    product::measure(g).recip()
}
