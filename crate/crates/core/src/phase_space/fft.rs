use num_complex::Complex;
use rustfft::{FftDirection, FftPlanner};

use super::{FourierFunction, Grid, GridFunction};
use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    Q,
    P,
}

fn checkerboard<T: Real>(n: usize, values: &mut [Complex<T>], scale: T) {
    for a in 0..n {
        for b in 0..n {
            let s = if (a + b) % 2 == 0 { scale } else { -scale };
            values[a * n + b] *= s;
        }
    }
}

fn fft2_in_place<T: Real>(n: usize, values: &mut [Complex<T>], dir: FftDirection) {
    let mut planner = FftPlanner::<T>::new();
    let fft = planner.plan_fft(n, dir);
    fft.process(values);
    let mut col = vec![Complex::new(T::zero(), T::zero()); n];
    for b in 0..n {
        for a in 0..n {
            col[a] = values[a * n + b];
        }
        fft.process(&mut col);
        for a in 0..n {
            values[a * n + b] = col[a];
        }
    }
}

/// `Ã(μ_k, ν_l) = (h²/2π) Σ A(q_j, p_m) e^{−i(μ_k q_j + ν_l p_m)}`.
pub fn dft2<T: Real>(a: &GridFunction<T>) -> FourierFunction<T> {
    let g: Grid<T> = *a.grid();
    let n = g.n();
    let mut v = a.values().to_vec();
    checkerboard(n, &mut v, T::one());
    fft2_in_place(n, &mut v, FftDirection::Forward);
    let h = g.spacing();
    checkerboard(n, &mut v, h * h / (T::lit(2.0) * T::PI()));
    FourierFunction::new(g, v).expect("transform of finite samples")
}

/// `A(q_j, p_m) = (dμ dν/2π) Σ Ã(μ_k, ν_l) e^{i(μ_k q_j + ν_l p_m)}`.
pub fn idft2<T: Real>(f: &FourierFunction<T>) -> GridFunction<T> {
    let g: Grid<T> = *f.grid();
    let n = g.n();
    let mut v = f.values().to_vec();
    checkerboard(n, &mut v, T::one());
    fft2_in_place(n, &mut v, FftDirection::Inverse);
    let d = g.freq_spacing();
    checkerboard(n, &mut v, d * d / (T::lit(2.0) * T::PI()));
    GridFunction::new(g, v).expect("transform of finite samples")
}

/// Multiplies the spectrum by `iμ` (axis `Q`) or `iν` (axis `P`); the
/// unpaired Nyquist bin is dropped.
pub(crate) fn derivative_in_fourier<T: Real>(
    f: &FourierFunction<T>,
    axis: Axis,
) -> FourierFunction<T> {
    let g = *f.grid();
    let n = g.n();
    let mut out = FourierFunction::zeros(g);
    for k in 0..n {
        for l in 0..n {
            let idx = if axis == Axis::Q { k } else { l };
            if idx == 0 {
                continue;
            }
            out.set(k, l, f.get(k, l) * Complex::new(T::zero(), g.freq(idx)));
        }
    }
    out
}

pub fn spectral_derivative<T: Real>(a: &GridFunction<T>, axis: Axis) -> GridFunction<T> {
    idft2(&derivative_in_fourier(&dft2(a), axis))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid() -> Grid<f64> {
        Grid::new(64, 8.0).unwrap()
    }

    #[test]
    fn gaussian_transform() {
        let g = grid();
        let a = GridFunction::from_real_fn(g, |q, p| (-(q * q + p * p) / 2.0).exp());
        let f = dft2(&a);
        let want =
            FourierFunction::from_fn(g, |m, n| Complex::new((-(m * m + n * n) / 2.0).exp(), 0.0));
        assert!(f.max_abs_diff(&want) < 1e-6);
    }

    #[test]
    fn shifted_gaussian_phase() {
        let g = grid();
        let a = GridFunction::from_real_fn(g, |q, p| (-((q - 1.0).powi(2) + p * p) / 2.0).exp());
        let f = dft2(&a);
        let want = FourierFunction::from_fn(g, |m, n| {
            Complex::new(0.0, -m).exp() * (-(m * m + n * n) / 2.0).exp()
        });
        assert!(f.max_abs_diff(&want) < 1e-6);
        let direct = a.fourier_at(0.3, -0.7);
        let exact = Complex::new(0.0, -0.3).exp() * (-(0.09 + 0.49) / 2.0_f64).exp();
        assert!((direct - exact).norm() < 1e-10);
    }

    #[test]
    fn round_trip() {
        let g = grid();
        let a = GridFunction::from_fn(g, |q, p| {
            Complex::new(
                (-(q * q) - 0.5 * p * p).exp() * (1.0 + q),
                (-(q - p).powi(2)).exp() * p,
            )
        });
        assert!(idft2(&dft2(&a)).max_abs_diff(&a) < 1e-12);
    }

    #[test]
    fn constant_is_an_impulse() {
        let g = grid();
        let one = GridFunction::from_real_fn(g, |_, _| 1.0);
        let f = dft2(&one);
        let want = FourierFunction::impulse(g, Complex::new(1.0, 0.0));
        assert!(f.max_abs_diff(&want) < 1e-12 * want.max_abs());
        // total mass 2π
        let d = g.freq_spacing();
        let mass: Complex<f64> = f.values().iter().sum::<Complex<f64>>() * d * d;
        assert!((mass - Complex::new(2.0 * std::f64::consts::PI, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn derivative_of_gaussian() {
        let g = grid();
        let a = GridFunction::from_real_fn(g, |q, p| (-(q * q) - p * p).exp());
        let dq = spectral_derivative(&a, Axis::Q);
        let want = GridFunction::from_real_fn(g, |q, p| -2.0 * q * (-(q * q) - p * p).exp());
        assert!(dq.max_abs_diff(&want) < 1e-10);
    }

    #[test]
    fn single_precision_round_trip() {
        let g = Grid::new(32, 6.0_f32).unwrap();
        let a = GridFunction::from_real_fn(g, |q, p| (-(q * q + p * p) / 2.0).exp());
        assert!(idft2(&dft2(&a)).max_abs_diff(&a) < 1e-5);
    }
}
