use std::fmt;

use num_complex::Complex;

use super::TomographicPoint;
use crate::error::{Error, Result};
use crate::phase_space::Hbar;
use crate::scalar::{cis, czero, Real};

type Amplitude<T> = Box<dyn Fn(T) -> Complex<T> + Send + Sync>;

/// Pure state given by its position amplitude `ψ(y)`, optionally with the
/// momentum amplitude `φ(p) = (2πħ)^{-1/2} ∫ ψ(y) e^{−ipy/ħ} dy`. Both are
/// integrated over `support`, outside of which they are taken to vanish.
pub struct Wavefunction<T> {
    position: Amplitude<T>,
    momentum: Option<Amplitude<T>>,
    support: (T, T),
    momentum_support: (T, T),
}

impl<T: Real> fmt::Debug for Wavefunction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Wavefunction")
            .field("support", &self.support)
            .field("has_momentum", &self.momentum.is_some())
            .finish()
    }
}

impl<T: Real> Wavefunction<T> {
    pub fn new(
        position: impl Fn(T) -> Complex<T> + Send + Sync + 'static,
        support: (T, T),
    ) -> Result<Self> {
        check_interval(support)?;
        Ok(Self {
            position: Box::new(position),
            momentum: None,
            support,
            momentum_support: support,
        })
    }

    pub fn with_momentum(
        mut self,
        momentum: impl Fn(T) -> Complex<T> + Send + Sync + 'static,
        support: (T, T),
    ) -> Result<Self> {
        check_interval(support)?;
        self.momentum = Some(Box::new(momentum));
        self.momentum_support = support;
        Ok(self)
    }

    /// Coherent state `(πħ)^{-1/4} e^{−(y−q0)²/2ħ + ip0y/ħ}` with its
    /// momentum amplitude.
    pub fn gaussian(q0: T, p0: T, hbar: Hbar<T>) -> Result<Self> {
        let h = hbar.get();
        if h <= T::zero() {
            return Err(Error::InvalidArgument(
                "a coherent state needs hbar > 0".into(),
            ));
        }
        let norm = (T::PI() * h).powf(T::lit(-0.25));
        let two = T::lit(2.0);
        let width = T::lit(12.0) * h.sqrt();
        let psi = move |y: T| cis(p0 * y / h) * (norm * (-(y - q0) * (y - q0) / (two * h)).exp());
        let phi =
            move |p: T| cis(-(p - p0) * q0 / h) * (norm * (-(p - p0) * (p - p0) / (two * h)).exp());
        Self::new(psi, (q0 - width, q0 + width))?.with_momentum(phi, (p0 - width, p0 + width))
    }

    pub fn position(&self, y: T) -> Complex<T> {
        if y < self.support.0 || y > self.support.1 {
            return czero();
        }
        (self.position)(y)
    }

    pub fn momentum(&self, p: T) -> Option<Complex<T>> {
        let f = self.momentum.as_ref()?;
        if p < self.momentum_support.0 || p > self.momentum_support.1 {
            return Some(czero());
        }
        Some(f(p))
    }

    pub fn support(&self) -> (T, T) {
        self.support
    }
}

fn check_interval<T: Real>(s: (T, T)) -> Result<()> {
    if !(s.0.is_finite() && s.1.is_finite() && s.0 < s.1) {
        return Err(Error::InvalidArgument(format!(
            "support ({}, {}) is not an interval",
            s.0, s.1
        )));
    }
    Ok(())
}

/// Trapezoid rule over `[a, b]` with the step halved until two successive
/// estimates agree. For smooth integrands that vanish at both ends the rule
/// converges faster than any power of the step.
fn integrate<T: Real>(f: impl Fn(T) -> Complex<T>, (a, b): (T, T)) -> Result<Complex<T>> {
    let mut panels = 64usize;
    let mut step = (b - a) / T::from_count(panels);
    let mut sum = (f(a) + f(b)) * T::lit(0.5);
    for i in 1..panels {
        sum += f(a + step * T::from_count(i));
    }
    let mut estimate = sum * step;
    let tol = T::lit(1e-13).max(T::epsilon() * T::lit(64.0));
    while panels < (1 << 22) {
        for i in 0..panels {
            sum += f(a + step * (T::from_count(i) + T::lit(0.5)));
        }
        panels *= 2;
        step *= T::lit(0.5);
        let next = sum * step;
        let done = (next - estimate).norm() <= tol * next.norm().max(T::one());
        estimate = next;
        if done && panels >= 256 {
            return Ok(estimate);
        }
    }
    Err(Error::Quadrature(format!(
        "trapezoid rule did not settle with {panels} panels"
    )))
}

/// `w(X, μ, ν) = (2πħ|ν|)⁻¹ |∫ ψ(y) exp(iμy²/2νħ − iXy/νħ) dy|²`.
///
/// For `ν = 0` the same formula is applied to the momentum amplitude through
/// `w_ψ(X, μ, ν) = w_φ(X, ν, −μ)`; without a momentum amplitude this is a
/// [`Error::SingularFrame`].
pub fn pure_state_tomogram<T: Real>(
    psi: &Wavefunction<T>,
    pt: &TomographicPoint<T>,
    hbar: Hbar<T>,
) -> Result<T> {
    let h = hbar.get();
    if h <= T::zero() {
        return Err(Error::InvalidArgument(
            "pure-state tomograms need hbar > 0".into(),
        ));
    }
    let singular = |reason: &str| Error::SingularFrame {
        mu: pt.mu.to_f64_lossy(),
        nu: pt.nu.to_f64_lossy(),
        reason: reason.into(),
    };
    if pt.mu == T::zero() && pt.nu == T::zero() {
        return Err(singular("the ray direction (mu, nu) must be nonzero"));
    }
    let (amp, support, mu, nu): (&dyn Fn(T) -> Complex<T>, (T, T), T, T) = if pt.nu != T::zero() {
        (&|y| psi.position(y), psi.support, pt.mu, pt.nu)
    } else {
        if psi.momentum.is_none() {
            return Err(singular("nu = 0 needs the momentum amplitude"));
        }
        (
            &|p| psi.momentum(p).unwrap_or_else(czero),
            psi.momentum_support,
            T::zero(),
            -pt.mu,
        )
    };
    let two = T::lit(2.0);
    let x = pt.x;
    let integral = integrate(
        |y| amp(y) * cis(mu * y * y / (two * nu * h) - x * y / (nu * h)),
        support,
    )?;
    Ok(integral.norm_sqr() / (two * T::PI() * h * nu.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn ground() -> Wavefunction<f64> {
        Wavefunction::gaussian(0.0, 0.0, Hbar::one()).unwrap()
    }

    #[test]
    fn ground_state_oracle() {
        let psi = ground();
        for (x, mu, nu) in [
            (0.0, 1.0, 1.0),
            (0.8, 0.3, -1.2),
            (-2.0, 2.0, 0.5),
            (1.0, 0.0, 1.0),
        ] {
            let r2: f64 = mu * mu + nu * nu;
            let want = (-(x * x) / r2).exp() / (PI * r2).sqrt();
            let got =
                pure_state_tomogram(&psi, &TomographicPoint::new(x, mu, nu), Hbar::one()).unwrap();
            assert!((got - want).abs() < 1e-6, "({x},{mu},{nu})");
        }
    }

    #[test]
    fn normalized_in_x() {
        let psi = ground();
        let total = integrate(
            |x| {
                let w = pure_state_tomogram(&psi, &TomographicPoint::new(x, 1.0, 1.0), Hbar::one())
                    .unwrap();
                Complex::new(w, 0.0)
            },
            (-15.0, 15.0),
        )
        .unwrap();
        assert!((total.re - 1.0).abs() < 1e-8);
    }

    #[test]
    fn nu_zero_uses_momentum_amplitude() {
        let hbar = Hbar::new(0.7).unwrap();
        let psi = Wavefunction::gaussian(0.6, -0.4, hbar).unwrap();
        // w(X, μ, 0) is the position density of μq: |ψ(X/μ)|²/|μ|
        for (x, mu) in [(0.9, 1.5), (-0.3, -0.8)] {
            let got = pure_state_tomogram(&psi, &TomographicPoint::new(x, mu, 0.0), hbar).unwrap();
            let want = psi.position(x / mu).norm_sqr() / f64::abs(mu);
            assert!((got - want).abs() < 1e-10, "({x},{mu})");
            // continuity with a nearby frame
            let near =
                pure_state_tomogram(&psi, &TomographicPoint::new(x, mu, 1e-4), hbar).unwrap();
            assert!((near - got).abs() < 1e-3);
        }
        let bare = Wavefunction::new(
            |y: f64| Complex::new((-y * y / 2.0).exp(), 0.0),
            (-10.0, 10.0),
        )
        .unwrap();
        let r = pure_state_tomogram(&bare, &TomographicPoint::new(0.0, 1.0, 0.0), Hbar::one());
        assert!(matches!(r, Err(Error::SingularFrame { .. })));
        let r = pure_state_tomogram(&psi, &TomographicPoint::new(0.0, 0.0, 0.0), hbar);
        assert!(matches!(r, Err(Error::SingularFrame { .. })));
    }

    #[test]
    fn momentum_position_symmetry() {
        // a state with position amplitude φ sees μq + νp of ψ as νq − μp
        let hbar = Hbar::one();
        let psi = Wavefunction::gaussian(0.5, 0.2, hbar).unwrap();
        let g = Wavefunction::gaussian(0.5, 0.2, hbar).unwrap();
        let phi = move |p: f64| g.momentum(p).unwrap();
        let flipped = Wavefunction::new(phi, (-12.0, 12.0)).unwrap();
        for (x, mu, nu) in [(0.4, 0.7, 1.1), (-1.0, 1.3, -0.5)] {
            let a = pure_state_tomogram(&psi, &TomographicPoint::new(x, mu, nu), hbar).unwrap();
            let b =
                pure_state_tomogram(&flipped, &TomographicPoint::new(x, nu, -mu), hbar).unwrap();
            assert!((a - b).abs() < 1e-9, "({x},{mu},{nu}) {a} vs {b}");
        }
        // for a parity-even state the sign of μ drops out and (μ, ν) → (ν, μ)
        let even = ground();
        let even_phi =
            Wavefunction::new(move |p: f64| ground().momentum(p).unwrap(), (-12.0, 12.0)).unwrap();
        let a = pure_state_tomogram(&even, &TomographicPoint::new(0.3, 0.7, 1.1), hbar).unwrap();
        let b =
            pure_state_tomogram(&even_phi, &TomographicPoint::new(0.3, 1.1, 0.7), hbar).unwrap();
        assert!((a - b).abs() < 1e-9);
    }

    #[test]
    fn homogeneity_of_pure_state_tomogram() {
        let psi = ground();
        let base =
            pure_state_tomogram(&psi, &TomographicPoint::new(0.5, 0.8, 0.6), Hbar::one()).unwrap();
        for lambda in [-2.0, 0.5, 3.0] {
            let pt = TomographicPoint::new(0.5 * lambda, 0.8 * lambda, 0.6 * lambda);
            let w = pure_state_tomogram(&psi, &pt, Hbar::one()).unwrap();
            assert!((w - base / f64::abs(lambda)).abs() < 1e-9);
        }
    }

    #[test]
    fn gaussian_needs_positive_hbar() {
        assert!(Wavefunction::gaussian(0.0, 0.0, Hbar::new(0.0).unwrap()).is_err());
        assert!(Wavefunction::new(|_: f64| Complex::new(0.0, 0.0), (1.0, 1.0)).is_err());
    }
}
