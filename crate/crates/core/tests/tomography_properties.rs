use std::f64::consts::PI;

use num_complex::Complex64 as C;
use proptest::prelude::*;
use starprod::phase_space::{dft2, idft2, moyal_fourier_apply, Grid, GridFunction, Hbar};
use starprod::tomography::{
    pure_state_tomogram, quantum_star, Tomogram, TomographicPoint, Wavefunction,
};
use starprod::{Error, GridFunction32};

fn grid() -> Grid<f64> {
    Grid::new(64, 8.0).unwrap()
}

fn gaussian(g: Grid<f64>, q0: f64, p0: f64, w: f64) -> GridFunction<f64> {
    GridFunction::from_real_fn(g, move |q, p| {
        (-w * ((q - q0).powi(2) + (p - p0).powi(2))).exp()
    })
}

fn point() -> impl Strategy<Value = (f64, f64, f64)> {
    (-2.0..2.0f64, -1.5..1.5f64, -1.5..1.5f64)
        .prop_filter("frame", |&(_, mu, nu)| mu * mu + nu * nu > 0.04)
}

#[test]
fn homogeneity_at_many_points() {
    let w = Tomogram::radon(&gaussian(grid(), 0.3, -0.2, 0.8)).unwrap();
    let psi = Wavefunction::gaussian(0.4, 0.1, Hbar::one()).unwrap();
    let mut rng_state = 0x2545f491u64;
    let mut next = || {
        rng_state ^= rng_state << 13;
        rng_state ^= rng_state >> 7;
        rng_state ^= rng_state << 17;
        (rng_state % 10_000) as f64 / 10_000.0 * 2.0 - 1.0
    };
    for _ in 0..20 {
        let (x, mu, nu) = (next(), next() + 1.2, next());
        let base = w.evaluate(x, mu, nu).unwrap();
        let pure =
            pure_state_tomogram(&psi, &TomographicPoint::new(x, mu, nu), Hbar::one()).unwrap();
        for lambda in [-2.0, 0.5, 3.0] {
            let scaled = w.evaluate(lambda * x, lambda * mu, lambda * nu).unwrap();
            assert!((scaled - base / f64::abs(lambda)).abs() < 1e-12);
            let pt = TomographicPoint::new(lambda * x, lambda * mu, lambda * nu);
            let p = pure_state_tomogram(&psi, &pt, Hbar::one()).unwrap();
            assert!((p - pure / f64::abs(lambda)).abs() < 1e-9);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn state_tomograms_are_nonnegative((x, mu, nu) in point(), q0 in -1.0..1.0f64, p0 in -1.0..1.0f64, h in 0.3..2.0f64) {
        let hbar = Hbar::new(h).unwrap();
        let psi = Wavefunction::gaussian(q0, p0, hbar).unwrap();
        let w = pure_state_tomogram(&psi, &TomographicPoint::new(x, mu, nu), hbar).unwrap();
        prop_assert!(w >= 0.0);
        let grid_w = Tomogram::from_wavefunction(&psi, grid(), hbar).evaluate(x, mu, nu).unwrap();
        prop_assert!(grid_w > -1e-10);
        prop_assert!((grid_w - w).abs() < 1e-6);
    }

    #[test]
    fn radon_matches_gaussian_oracle((x, mu, nu) in point(), w in 0.5..2.0f64) {
        let t = Tomogram::radon(&gaussian(grid(), 0.0, 0.0, w)).unwrap();
        // ∫ e^{−w(q²+p²)} δ(X − μq − νp) dq dp / 2π
        let r2 = mu * mu + nu * nu;
        let want = (-w * x * x / r2).exp() / (2.0 * (PI * w * r2).sqrt());
        prop_assert!((t.evaluate(x, mu, nu).unwrap() - want).abs() < 1e-5);
    }

    #[test]
    fn moyal_product_is_associative(q in prop::array::uniform3(-1.0..1.0f64), p in prop::array::uniform3(-1.0..1.0f64)) {
        let g = grid();
        let f: Vec<_> = (0..3).map(|i| dft2(&gaussian(g, q[i], p[i], 0.7))).collect();
        let h = Hbar::one();
        let left = moyal_fourier_apply(&moyal_fourier_apply(&f[0], &f[1], h).unwrap(), &f[2], h).unwrap();
        let right = moyal_fourier_apply(&f[0], &moyal_fourier_apply(&f[1], &f[2], h).unwrap(), h).unwrap();
        prop_assert!(idft2(&left).max_abs_diff(&idft2(&right)) < 1e-8);
    }

    #[test]
    fn quantum_star_is_bilinear(s in -2.0..2.0f64, q0 in -1.0..1.0f64) {
        let g = grid();
        let (a, b, c) = (gaussian(g, q0, 0.0, 0.6), gaussian(g, 0.0, 0.5, 1.0), gaussian(g, -0.5, -0.5, 0.9));
        let t = |f: &GridFunction<f64>| Tomogram::radon(f).unwrap();
        let h = Hbar::new(0.7).unwrap();
        let mix = a.add(&c.scale(C::new(s, 0.0))).unwrap();
        let lhs = quantum_star(&t(&mix), &t(&b), h).unwrap();
        let ab = quantum_star(&t(&a), &t(&b), h).unwrap();
        let cb = quantum_star(&t(&c), &t(&b), h).unwrap();
        let rhs = ab.ray_data().add(&cb.ray_data().scale(C::new(s, 0.0))).unwrap();
        prop_assert!(lhs.ray_data().max_abs_diff(&rhs) < 1e-12);
    }
}

#[test]
fn non_decaying_input_is_rejected() {
    let g = Grid::new(32, 4.0).unwrap();
    let slow = GridFunction::from_real_fn(g, |q, p| 1.0 / (1.0 + q * q + p * p));
    assert!(matches!(
        Tomogram::radon(&slow),
        Err(Error::NonDecaying { .. })
    ));
}

#[test]
fn single_precision_round_trip() {
    let g = Grid::new(32, 6.0_f32).unwrap();
    let a: GridFunction32 = GridFunction::from_real_fn(g, |q, p| (-(q * q) - p * p).exp());
    let w = Tomogram::radon(&a).unwrap();
    assert!(w.inverse_radon().max_abs_diff(&a) < 1e-5);
    let v = w.evaluate(0.0, 1.0, 0.0).unwrap();
    assert!((v - 1.0 / (2.0 * std::f32::consts::PI.sqrt())).abs() < 1e-4);
}
