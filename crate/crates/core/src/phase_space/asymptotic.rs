use num_complex::Complex;

use super::fft::{derivative_in_fourier, dft2, idft2};
use super::{Axis, GridFunction, Hbar};
use crate::error::Result;
use crate::scalar::Real;

/// Truncation order of the ħ expansion of the Moyal product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum MoyalOrder {
    Zeroth,
    First,
    Second,
}

struct Derivs<T> {
    q: GridFunction<T>,
    p: GridFunction<T>,
    qq: GridFunction<T>,
    qp: GridFunction<T>,
    pp: GridFunction<T>,
}

fn derivs<T: Real>(a: &GridFunction<T>, second: bool) -> Derivs<T> {
    let f = dft2(a);
    let fq = derivative_in_fourier(&f, Axis::Q);
    let fp = derivative_in_fourier(&f, Axis::P);
    let (qq, qp, pp) = if second {
        (
            idft2(&derivative_in_fourier(&fq, Axis::Q)),
            idft2(&derivative_in_fourier(&fq, Axis::P)),
            idft2(&derivative_in_fourier(&fp, Axis::P)),
        )
    } else {
        let z = GridFunction::zeros(*a.grid());
        (z.clone(), z.clone(), z)
    };
    Derivs {
        q: idft2(&fq),
        p: idft2(&fp),
        qq,
        qp,
        pp,
    }
}

/// `{A, B} = ∂qA ∂pB − ∂pA ∂qB` with spectral derivatives.
pub fn poisson_bracket_grid<T: Real>(
    a: &GridFunction<T>,
    b: &GridFunction<T>,
) -> Result<GridFunction<T>> {
    a.grid().check_same(b.grid())?;
    let (da, db) = (derivs(a, false), derivs(b, false));
    da.q.mul(&db.p)?.sub(&da.p.mul(&db.q)?)
}

/// Truncated expansion
/// `A·B + (iħ/2){A, B} − (ħ²/8)(A_qq B_pp − 2 A_qp B_qp + A_pp B_qq)`.
pub fn moyal_asymptotic<T: Real>(
    a: &GridFunction<T>,
    b: &GridFunction<T>,
    order: MoyalOrder,
    hbar: Hbar<T>,
) -> Result<GridFunction<T>> {
    let mut out = a.mul(b)?;
    if order == MoyalOrder::Zeroth {
        return Ok(out);
    }
    let h = hbar.get();
    let second = order == MoyalOrder::Second;
    let (da, db) = (derivs(a, second), derivs(b, second));
    let pb = da.q.mul(&db.p)?.sub(&da.p.mul(&db.q)?)?;
    out = out.add(&pb.scale(Complex::new(T::zero(), h * T::lit(0.5))))?;
    if second {
        let two = Complex::new(T::lit(2.0), T::zero());
        let t = da
            .qq
            .mul(&db.pp)?
            .sub(&da.qp.mul(&db.qp)?.scale(two))?
            .add(&da.pp.mul(&db.qq)?)?;
        out = out.add(&t.scale(Complex::new(-h * h / T::lit(8.0), T::zero())))?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::{moyal_fourier_apply, Grid};
    use super::*;

    fn pair(g: Grid<f64>) -> (GridFunction<f64>, GridFunction<f64>) {
        (
            GridFunction::from_real_fn(g, |q, p| (-((q - 0.5).powi(2) + p * p) / 2.0).exp()),
            GridFunction::from_real_fn(g, |q, p| (-(q * q) / 2.0 - (p + 0.3).powi(2)).exp()),
        )
    }

    #[test]
    fn zeroth_order_is_pointwise() {
        let g = Grid::new(32, 8.0).unwrap();
        let (a, b) = pair(g);
        let z = moyal_asymptotic(&a, &b, MoyalOrder::Zeroth, Hbar::one()).unwrap();
        assert_eq!(z, a.mul(&b).unwrap());
    }

    #[test]
    fn first_order_commutator_is_poisson() {
        let g = Grid::new(64, 8.0_f64).unwrap();
        let (a, b) = pair(g);
        let h = Hbar::new(0.3).unwrap();
        let ab = moyal_asymptotic(&a, &b, MoyalOrder::First, h).unwrap();
        let ba = moyal_asymptotic(&b, &a, MoyalOrder::First, h).unwrap();
        let pb = poisson_bracket_grid(&a, &b)
            .unwrap()
            .scale(Complex::new(0.0, 0.3));
        assert!(ab.sub(&ba).unwrap().max_abs_diff(&pb) < 1e-13);
    }

    #[test]
    fn poisson_of_separable_gaussians() {
        let g = Grid::new(64, 8.0_f64).unwrap();
        let a = GridFunction::from_real_fn(g, |q, _| (-(q * q)).exp());
        let b = GridFunction::from_real_fn(g, |_, p| (-(p * p)).exp());
        let want = GridFunction::from_real_fn(g, |q, p| 4.0 * q * p * (-(q * q) - p * p).exp());
        assert!(poisson_bracket_grid(&a, &b).unwrap().max_abs_diff(&want) < 1e-6);
        assert!(poisson_bracket_grid(&a, &a).unwrap().max_abs() < 1e-14);
    }

    #[test]
    fn second_order_error_is_cubic() {
        let g = Grid::new(64, 8.0_f64).unwrap();
        let (a, b) = pair(g);
        let (fa, fb) = (dft2(&a), dft2(&b));
        let hs = [0.4, 0.2, 0.1];
        let errs: Vec<f64> = hs
            .iter()
            .map(|&h| {
                let h = Hbar::new(h).unwrap();
                let exact = idft2(&moyal_fourier_apply(&fa, &fb, h).unwrap());
                exact.max_abs_diff(&moyal_asymptotic(&a, &b, MoyalOrder::Second, h).unwrap())
            })
            .collect();
        let slope = (errs[0] / errs[2]).ln() / (hs[0] / hs[2]).ln();
        assert!(slope >= 2.7, "slope {slope}, errors {errs:?}");
    }
}
