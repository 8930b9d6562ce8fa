//! Quantizer–dequantizer schemes over a finite index set.
//!
//! A scheme is a pair of operator bases `D(x)` (quantizers) and `U(x)`
//! (dequantizers) together with a pairing such that
//! `pair(U(x), D(x')) = δ(x, x')`. Symbols are `f_A(x) = pair(U(x), A)` and
//! operators are rebuilt as `A = Σ_x f_A(x) D(x)`.

mod builtin;
mod kernel;
mod pairing;

pub use builtin::{builtin_scheme, BUILTIN_SCHEMES};
pub use kernel::{KernelVariant, StarKernel};
pub use pairing::PairingForm;

use std::ops::Deref;

use num_complex::Complex;

use crate::error::{check_len, Error, Result};
use crate::matrix::ComplexSquareMatrix;
use crate::scalar::{czero, max_of, Real};

/// Values `f(x)` of a symbol on the index set.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolVector<T>(pub Vec<Complex<T>>);

impl<T: Real> SymbolVector<T> {
    pub fn zeros(n: usize) -> Self {
        Self(vec![czero(); n])
    }

    pub fn from_real(values: &[T]) -> Self {
        Self(values.iter().map(|&x| Complex::new(x, T::zero())).collect())
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        max_of(self.0.iter().zip(&other.0).map(|(a, b)| (a - b).norm()))
    }
}

impl<T> Deref for SymbolVector<T> {
    type Target = [Complex<T>];

    fn deref(&self) -> &[Complex<T>] {
        &self.0
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Scheme<T> {
    label: String,
    dim: usize,
    quantizers: Vec<ComplexSquareMatrix<T>>,
    dequantizers: Vec<ComplexSquareMatrix<T>>,
    pairing: PairingForm<T>,
}

impl<T: Real> Scheme<T> {
    /// Checks shapes only; duality is measured by [`Scheme::pairing_residual`].
    pub fn new(
        label: impl Into<String>,
        quantizers: Vec<ComplexSquareMatrix<T>>,
        dequantizers: Vec<ComplexSquareMatrix<T>>,
        pairing: PairingForm<T>,
    ) -> Result<Self> {
        if quantizers.is_empty() {
            return Err(Error::InvalidScheme(
                "scheme needs at least one quantizer".into(),
            ));
        }
        if quantizers.len() != dequantizers.len() {
            return Err(Error::InvalidScheme(format!(
                "{} quantizers but {} dequantizers",
                quantizers.len(),
                dequantizers.len()
            )));
        }
        let dim = quantizers[0].dim();
        for m in quantizers.iter().chain(&dequantizers) {
            if m.dim() != dim {
                return Err(Error::InvalidScheme(format!(
                    "operator of dimension {} in a scheme of dimension {dim}",
                    m.dim()
                )));
            }
            m.check_finite()?;
        }
        if let PairingForm::JTwistedTrace { j } = &pairing {
            if j.dim() != dim {
                return Err(Error::InvalidScheme(format!(
                    "J has dimension {} but operators have dimension {dim}",
                    j.dim()
                )));
            }
        }
        pairing.validate()?;
        Ok(Self {
            label: label.into(),
            dim,
            quantizers,
            dequantizers,
            pairing,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Size of the index set.
    pub fn n(&self) -> usize {
        self.quantizers.len()
    }

    /// Hilbert-space dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn quantizers(&self) -> &[ComplexSquareMatrix<T>] {
        &self.quantizers
    }

    pub fn dequantizers(&self) -> &[ComplexSquareMatrix<T>] {
        &self.dequantizers
    }

    pub fn pairing(&self) -> &PairingForm<T> {
        &self.pairing
    }

    fn pair(&self, a: &ComplexSquareMatrix<T>, b: &ComplexSquareMatrix<T>) -> Complex<T> {
        // shapes were checked in `new`
        self.pairing
            .pair(a, b)
            .expect("scheme operators share one dimension")
    }

    fn check_operator(&self, a: &ComplexSquareMatrix<T>) -> Result<()> {
        check_len(self.dim, a.dim())
    }

    /// `max_{x,x'} |pair(U(x), D(x')) − δ(x,x')|`.
    pub fn pairing_residual(&self) -> T {
        let mut worst = T::zero();
        for (x, u) in self.dequantizers.iter().enumerate() {
            for (y, d) in self.quantizers.iter().enumerate() {
                let delta = if x == y { T::one() } else { T::zero() };
                let r = (self.pair(u, d) - Complex::new(delta, T::zero())).norm();
                if r > worst {
                    worst = r;
                }
            }
        }
        worst
    }

    pub fn symbol_of(&self, a: &ComplexSquareMatrix<T>) -> Result<SymbolVector<T>> {
        self.check_operator(a)?;
        Ok(SymbolVector(
            self.dequantizers.iter().map(|u| self.pair(u, a)).collect(),
        ))
    }

    /// `Σ_x f(x) D(x)`.
    pub fn reconstruct(&self, f: &SymbolVector<T>) -> Result<ComplexSquareMatrix<T>> {
        check_len(self.n(), f.len())?;
        Ok(linear_combination(self.dim, &self.quantizers, f))
    }

    /// Symbol in the dual scheme, `f^d_A(x) = pair(D(x), A)`.
    pub fn dual_symbol(&self, a: &ComplexSquareMatrix<T>) -> Result<SymbolVector<T>> {
        self.check_operator(a)?;
        Ok(SymbolVector(
            self.quantizers.iter().map(|d| self.pair(d, a)).collect(),
        ))
    }

    /// Reconstruction from a dual symbol, `Σ_x f^d(x) U(x)`.
    pub fn reconstruct_dual(&self, f: &SymbolVector<T>) -> Result<ComplexSquareMatrix<T>> {
        check_len(self.n(), f.len())?;
        Ok(linear_combination(self.dim, &self.dequantizers, f))
    }

    /// Exchanges quantizers and dequantizers, keeping the pairing.
    ///
    /// The result is returned even when the pairing is not symmetric under
    /// the exchange; its [`Scheme::pairing_residual`] then reports the defect.
    pub fn dual_scheme(&self) -> Self {
        Self {
            label: format!("dual({})", self.label),
            dim: self.dim,
            quantizers: self.dequantizers.clone(),
            dequantizers: self.quantizers.clone(),
            pairing: self.pairing.clone(),
        }
    }

    /// `U → λU`, `D → λ⁻¹D`.
    pub fn scale_scheme(&self, lambda: T) -> Result<Self> {
        if lambda == T::zero() || !lambda.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "scaling factor must be finite and nonzero, got {lambda}"
            )));
        }
        if lambda == T::one() {
            return Ok(self.clone());
        }
        Ok(Self {
            label: format!("{}*{lambda}", self.label),
            dim: self.dim,
            quantizers: self
                .quantizers
                .iter()
                .map(|d| d.scale_real(lambda.recip()))
                .collect(),
            dequantizers: self
                .dequantizers
                .iter()
                .map(|u| u.scale_real(lambda))
                .collect(),
            pairing: self.pairing.clone(),
        })
    }

    /// Mean value `Σ_x Tr(ρ U(x)) · f^d_A(x)`.
    ///
    /// The state enters through the unscaled trace, so the sum equals
    /// `Tr(ρA)` whenever `A` is rebuilt exactly by [`Scheme::reconstruct_dual`].
    pub fn mean_value(
        &self,
        rho: &ComplexSquareMatrix<T>,
        a: &ComplexSquareMatrix<T>,
    ) -> Result<Complex<T>> {
        self.check_operator(rho)?;
        let fd = self.dual_symbol(a)?;
        Ok(self
            .dequantizers
            .iter()
            .zip(fd.iter())
            .fold(czero(), |acc, (u, f)| acc + rho.trace_product(u) * f))
    }

    /// Largest deviation of a product `D(a)·D(b)` from its projection back
    /// onto the quantizer span. Zero iff the span is closed under the matrix
    /// product, which is what makes the plain kernel associative.
    pub fn quantizer_closure_defect(&self) -> T {
        let mut worst = T::zero();
        for da in &self.quantizers {
            for db in &self.quantizers {
                let p = da * db;
                let coeffs = self.symbol_of(&p).expect("same dimension");
                let back = linear_combination(self.dim, &self.quantizers, &coeffs);
                let r = p.max_abs_diff(&back);
                if r > worst {
                    worst = r;
                }
            }
        }
        worst
    }

    pub fn star_kernel(&self, variant: &KernelVariant<T>) -> Result<StarKernel<T>> {
        kernel::build(self, variant)
    }
}

fn linear_combination<T: Real>(
    dim: usize,
    basis: &[ComplexSquareMatrix<T>],
    coeffs: &[Complex<T>],
) -> ComplexSquareMatrix<T> {
    basis
        .iter()
        .zip(coeffs)
        .fold(ComplexSquareMatrix::zeros(dim), |acc, (b, &c)| {
            &acc + &b.scale(c)
        })
}

/// Transition kernels between two schemes on the same Hilbert space:
/// `K1(x, y) = pair(U₂(y), D₁(x))` carries symbols of scheme 1 to scheme 2
/// and `K2(y, x) = pair(U₁(x), D₂(y))` carries them back. Both are returned
/// as `n × n` matrices indexed `[x][y]` and `[y][x]` respectively.
pub fn intertwiners<T: Real>(
    s1: &Scheme<T>,
    s2: &Scheme<T>,
) -> Result<(ComplexSquareMatrix<T>, ComplexSquareMatrix<T>)> {
    check_len(s1.dim(), s2.dim())?;
    check_len(s1.n(), s2.n())?;
    let n = s1.n();
    let mut k1 = ComplexSquareMatrix::zeros(n);
    let mut k2 = ComplexSquareMatrix::zeros(n);
    for x in 0..n {
        for y in 0..n {
            k1.set(
                x,
                y,
                s1.pairing.pair(&s2.dequantizers[y], &s1.quantizers[x])?,
            );
            k2.set(
                y,
                x,
                s1.pairing.pair(&s1.dequantizers[x], &s2.quantizers[y])?,
            );
        }
    }
    Ok((k1, k2))
}

/// Applies a transition kernel: `g(y) = Σ_x f(x) K(x, y)`.
pub fn transport_symbol<T: Real>(
    kernel: &ComplexSquareMatrix<T>,
    f: &SymbolVector<T>,
) -> Result<SymbolVector<T>> {
    check_len(kernel.dim(), f.len())?;
    let n = kernel.dim();
    Ok(SymbolVector(
        (0..n)
            .map(|y| (0..n).fold(czero(), |acc, x| acc + f[x] * kernel.get(x, y)))
            .collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::pauli;

    fn u2() -> Scheme<f64> {
        builtin_scheme("u2").unwrap()
    }

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn doubled_quantizer_shows_in_residual() {
        let s = u2();
        let mut d = s.quantizers().to_vec();
        d[1] = d[1].scale_real(2.0);
        let bad = Scheme::new("bad", d, s.dequantizers().to_vec(), s.pairing().clone()).unwrap();
        assert!((bad.pairing_residual() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn u2_symbols_of_paulis() {
        let s = u2();
        let sig = pauli::<f64>();
        let f0 = s.symbol_of(&sig[0]).unwrap();
        assert!(f0.max_abs_diff(&SymbolVector::from_real(&[2.0, 0.0, 0.0, 0.0])) < 1e-15);
        let f3 = s.symbol_of(&sig[3]).unwrap();
        assert!(f3.max_abs_diff(&SymbolVector::from_real(&[0.0, 0.0, 0.0, 2.0])) < 1e-15);
    }

    #[test]
    fn gl2half_symbol_reads_coordinates() {
        let s: Scheme<f64> = builtin_scheme("gl2half").unwrap();
        let (x1, x2) = (0.7, -1.3);
        let b = &s.quantizers()[0].scale_real(x1) + &s.quantizers()[1].scale_real(x2);
        let f = s.symbol_of(&b).unwrap();
        assert!(f.max_abs_diff(&SymbolVector::from_real(&[x1, x2])) < 1e-15);
    }

    #[test]
    fn reconstruct_basics() {
        let s = u2();
        let sig = pauli::<f64>();
        let a = s
            .reconstruct(&SymbolVector::from_real(&[0.0, 2.0, 0.0, 0.0]))
            .unwrap();
        assert!(a.max_abs_diff(&sig[1]) < 1e-15);
        let z = s.reconstruct(&SymbolVector::zeros(4)).unwrap();
        assert_eq!(z.max_abs(), 0.0);
        assert!(matches!(
            s.reconstruct(&SymbolVector::zeros(3)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn operator_dimension_is_checked() {
        let s = u2();
        let a = ComplexSquareMatrix::<f64>::identity(3);
        assert!(s.symbol_of(&a).is_err());
        assert!(s.dual_symbol(&a).is_err());
        assert!(s.mean_value(&a, &a).is_err());
    }

    #[test]
    fn dual_symbol_of_sigma3_and_zero() {
        let s = u2();
        let sig = pauli::<f64>();
        let fd = s.dual_symbol(&sig[3]).unwrap();
        assert!(fd.max_abs_diff(&SymbolVector::from_real(&[0.0, 0.0, 0.0, 2.0])) < 1e-15);
        assert!(s.reconstruct_dual(&fd).unwrap().max_abs_diff(&sig[3]) < 1e-15);
        let z = s.dual_symbol(&ComplexSquareMatrix::zeros(2)).unwrap();
        assert_eq!(z, SymbolVector::zeros(4));
    }

    #[test]
    fn dual_is_involution_and_u2_self_dual() {
        let s = u2();
        let d = s.dual_scheme();
        assert_eq!(d.quantizers(), s.quantizers());
        assert_eq!(d.dequantizers(), s.dequantizers());
        assert_eq!(d.pairing_residual(), 0.0);
        let dd = d.dual_scheme();
        assert_eq!(dd.quantizers(), s.quantizers());
        assert_eq!(dd.dequantizers(), s.dequantizers());
    }

    #[test]
    fn non_symmetric_pairing_dual_reports_residual() {
        // dual basis of {E01, E11} under a J-twisted trace with J not symmetric
        let m = |rows: &[Vec<f64>]| ComplexSquareMatrix::from_real_rows(rows).unwrap();
        let j = m(&[vec![1.0, 1.0], vec![0.0, 1.0]]);
        let s = Scheme::new(
            "skew",
            vec![
                m(&[vec![0.5, 0.5], vec![0.0, 0.0]]),
                m(&[vec![-0.5, -0.5], vec![0.5, 0.5]]),
            ],
            vec![
                m(&[vec![0.0, 1.0], vec![0.0, 0.0]]),
                m(&[vec![0.0, 0.0], vec![0.0, 1.0]]),
            ],
            PairingForm::JTwistedTrace { j },
        )
        .unwrap();
        assert!(s.pairing_residual() < 1e-15);
        let d = s.dual_scheme();
        assert!((d.pairing_residual() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn scaling_rules() {
        let s = u2();
        assert_eq!(s.scale_scheme(1.0).unwrap(), s);
        assert!(matches!(
            s.scale_scheme(0.0),
            Err(Error::InvalidArgument(_))
        ));
        let s2 = s.scale_scheme(2.0).unwrap();
        assert!(s2.pairing_residual() < 1e-15);
    }

    #[test]
    fn mean_value_examples() {
        let s = u2();
        let sig = pauli::<f64>();
        let rho = ComplexSquareMatrix::diagonal(&[c(1.0, 0.0), c(0.0, 0.0)]);
        assert!((s.mean_value(&rho, &sig[3]).unwrap() - c(1.0, 0.0)).norm() < 1e-15);
        assert!((s.mean_value(&rho, &sig[0]).unwrap() - c(1.0, 0.0)).norm() < 1e-15);
        let mixed = sig[0].scale_real(0.5);
        for a in &sig[1..] {
            assert!(s.mean_value(&mixed, a).unwrap().norm() < 1e-15);
        }
    }

    #[test]
    fn intertwiners_with_self_and_dual() {
        let s = u2();
        let (k1, k2) = intertwiners(&s, &s).unwrap();
        assert!(k1.max_abs_diff(&ComplexSquareMatrix::identity(4)) < 1e-15);
        assert!(k2.max_abs_diff(&ComplexSquareMatrix::identity(4)) < 1e-15);

        let g: Scheme<f64> = builtin_scheme("gl2half").unwrap();
        let (k1, _) = intertwiners(&g, &g.dual_scheme()).unwrap();
        for x in 0..2 {
            for y in 0..2 {
                let want = g
                    .pairing()
                    .pair(&g.quantizers()[y], &g.quantizers()[x])
                    .unwrap();
                assert_eq!(k1.get(x, y), want);
            }
        }
        assert!(intertwiners(&s, &g).is_err());
    }

    #[test]
    fn closure_defect_separates_algebras_from_lie_spans() {
        assert!(u2().quantizer_closure_defect() < 1e-15);
        let g: Scheme<f64> = builtin_scheme("gl2half").unwrap();
        assert!(g.quantizer_closure_defect() < 1e-15);
        let su: Scheme<f64> = builtin_scheme("su2sb2").unwrap();
        // products of −(i/2)σ_j leave an identity component behind
        assert!((su.quantizer_closure_defect() - 0.25).abs() < 1e-14);
    }

    #[test]
    fn construction_rejects_bad_shapes() {
        let s = u2();
        let mut d = s.quantizers().to_vec();
        d.pop();
        assert!(Scheme::new("x", d, s.dequantizers().to_vec(), s.pairing().clone()).is_err());
        assert!(
            Scheme::<f64>::new("x", vec![], vec![], PairingForm::ScaledTrace { scale: 1.0 })
                .is_err()
        );
        let mixed = vec![
            ComplexSquareMatrix::identity(2),
            ComplexSquareMatrix::identity(3),
        ];
        assert!(Scheme::new(
            "x",
            mixed.clone(),
            mixed,
            PairingForm::ScaledTrace { scale: 1.0 }
        )
        .is_err());
    }
}
