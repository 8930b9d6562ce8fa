use num_complex::Complex;

use super::{Scheme, SymbolVector};
use crate::error::{check_len, Result};
use crate::matrix::ComplexSquareMatrix;
use crate::scalar::{czero, Real};

/// Which product the kernel encodes.
#[derive(Clone, Debug, PartialEq)]
pub enum KernelVariant<T> {
    /// `K(x1, x2, x) = pair(U(x), D(x1) D(x2))`.
    Plain,
    /// `K(x1, x2, x) = pair(D(x), U(x1) U(x2))`: the plain kernel of the dual scheme.
    Dual,
    /// `K(x1, x2, x) = pair(U(x), D(x1) K̂ D(x2))`.
    KDeformed(ComplexSquareMatrix<T>),
    /// `K(x1, x2, x) = pair(D(x), U(x1) K̂ U(x2))`.
    KDeformedDual(ComplexSquareMatrix<T>),
}

impl<T> KernelVariant<T> {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Plain => "plain",
            Self::Dual => "dual",
            Self::KDeformed(_) => "k_deformed",
            Self::KDeformedDual(_) => "k_deformed_dual",
        }
    }
}

/// Structure function `K(x1, x2, x)` of a star product on an index set of
/// size `n`, stored densely as `n³` values.
#[derive(Clone, Debug, PartialEq)]
pub struct StarKernel<T> {
    n: usize,
    values: Vec<Complex<T>>,
}

impl<T: Real> StarKernel<T> {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize, usize) -> Complex<T>) -> Self {
        let mut values = Vec::with_capacity(n * n * n);
        for a in 0..n {
            for b in 0..n {
                for x in 0..n {
                    values.push(f(a, b, x));
                }
            }
        }
        Self { n, values }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, x1: usize, x2: usize, x: usize) -> Complex<T> {
        self.values[(x1 * self.n + x2) * self.n + x]
    }

    #[inline]
    pub fn set(&mut self, x1: usize, x2: usize, x: usize, v: Complex<T>) {
        let n = self.n;
        self.values[(x1 * n + x2) * n + x] = v;
    }

    pub fn values(&self) -> &[Complex<T>] {
        &self.values
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(T::zero(), T::max)
    }

    /// `(f_A ⋆ f_B)(x) = Σ_{x1,x2} K(x1,x2,x) f_A(x1) f_B(x2)`.
    pub fn star_multiply(
        &self,
        fa: &SymbolVector<T>,
        fb: &SymbolVector<T>,
    ) -> Result<SymbolVector<T>> {
        check_len(self.n, fa.len())?;
        check_len(self.n, fb.len())?;
        let n = self.n;
        let mut out = vec![czero(); n];
        for a in 0..n {
            if fa[a] == czero() {
                continue;
            }
            for b in 0..n {
                let w = fa[a] * fb[b];
                if w == czero() {
                    continue;
                }
                for (x, o) in out.iter_mut().enumerate() {
                    *o += self.get(a, b, x) * w;
                }
            }
        }
        Ok(SymbolVector(out))
    }

    /// Largest violation of the associativity equation
    /// `Σ_y K(x1,x2,y) K(y,x3,x4) = Σ_y K(x2,x3,y) K(x1,y,x4)`.
    pub fn associativity_residual(&self) -> T {
        let n = self.n;
        let mut worst = T::zero();
        for x1 in 0..n {
            for x2 in 0..n {
                for x3 in 0..n {
                    for x4 in 0..n {
                        let mut lhs = czero::<T>();
                        let mut rhs = czero::<T>();
                        for y in 0..n {
                            lhs += self.get(x1, x2, y) * self.get(y, x3, x4);
                            rhs += self.get(x2, x3, y) * self.get(x1, y, x4);
                        }
                        let r = (lhs - rhs).norm();
                        if r > worst {
                            worst = r;
                        }
                    }
                }
            }
        }
        worst
    }
}

pub(super) fn build<T: Real>(s: &Scheme<T>, variant: &KernelVariant<T>) -> Result<StarKernel<T>> {
    let (left, right, mid): (
        &[ComplexSquareMatrix<T>],
        &[ComplexSquareMatrix<T>],
        Option<&ComplexSquareMatrix<T>>,
    ) = match variant {
        KernelVariant::Plain => (s.quantizers(), s.dequantizers(), None),
        KernelVariant::Dual => (s.dequantizers(), s.quantizers(), None),
        KernelVariant::KDeformed(k) => (s.quantizers(), s.dequantizers(), Some(k)),
        KernelVariant::KDeformedDual(k) => (s.dequantizers(), s.quantizers(), Some(k)),
    };
    if let Some(k) = mid {
        check_len(s.dim(), k.dim())?;
    }
    let n = s.n();
    let mut products = Vec::with_capacity(n * n);
    for a in left {
        let ak = match mid {
            Some(k) => a * k,
            None => a.clone(),
        };
        for b in left {
            products.push(&ak * b);
        }
    }
    let pairing = s.pairing();
    let mut kernel = StarKernel::from_fn(n, |_, _, _| czero());
    for a in 0..n {
        for b in 0..n {
            for (x, u) in right.iter().enumerate() {
                kernel.set(a, b, x, pairing.pair(u, &products[a * n + b])?);
            }
        }
    }
    Ok(kernel)
}
