//! Lie structure constants induced by star kernels.
//!
//! Antisymmetrizing a kernel gives `C(x1, x2, x) = K(x1, x2, x) − K(x2, x1, x)`,
//! which are the structure constants of the commutator (or K-deformed
//! commutator) in the quantizer basis.

mod classify;
mod deform;

pub use classify::{
    brackets_from_params, casimir_jacobi_obstruction, classify_3d, CasimirParams, ThreeDClass,
    ThreeDLabel,
};
pub use deform::{
    dual_basis_scheme, k_deformed_constants, so3_generators, so3_k_deform, type_b_generators,
    type_b_k_deform, KDeformMatrix,
};

use num_complex::Complex;

use crate::error::{check_len, Error, Result};
use crate::scalar::{czero, max_of, Real};
use crate::scheme::{KernelVariant, Scheme, StarKernel, SymbolVector};

/// `C(i, j, k)` with `C(i, j, k) = −C(j, i, k)` held exactly.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureConstants<T> {
    n: usize,
    values: Vec<Complex<T>>,
}

impl<T: Real> StructureConstants<T> {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            values: vec![czero(); n * n * n],
        }
    }

    /// Antisymmetric part of a kernel.
    pub fn from_kernel(k: &StarKernel<T>) -> Self {
        let n = k.n();
        let mut c = Self::zeros(n);
        for i in 0..n {
            for j in i + 1..n {
                for x in 0..n {
                    c.set_bracket(i, j, x, k.get(i, j, x) - k.get(j, i, x));
                }
            }
        }
        c
    }

    /// Builds constants from a dense `n³` array (index order `i, j, k`).
    /// The array must be antisymmetric in `(i, j)` up to `tol`; the entries
    /// with `i < j` are kept and mirrored.
    pub fn from_values(n: usize, values: Vec<Complex<T>>, tol: T) -> Result<Self> {
        check_len(n * n * n, values.len())?;
        if let Some(k) = values
            .iter()
            .position(|z| !(z.re.is_finite() && z.im.is_finite()))
        {
            return Err(Error::ShapeViolation {
                row: k / (n * n),
                col: (k / n) % n,
                reason: format!("structure constant at index {k} is not finite"),
            });
        }
        let at = |i: usize, j: usize, k: usize| values[(i * n + j) * n + k];
        let mut c = Self::zeros(n);
        for i in 0..n {
            for j in i..n {
                for k in 0..n {
                    let d = (at(i, j, k) + at(j, i, k)).norm();
                    if d > tol {
                        return Err(Error::ShapeViolation {
                            row: i,
                            col: j,
                            reason: format!(
                                "C({i},{j},{k}) + C({j},{i},{k}) = {:e} violates antisymmetry",
                                d.to_f64_lossy()
                            ),
                        });
                    }
                    if i != j {
                        c.set_bracket(i, j, k, at(i, j, k));
                    }
                }
            }
        }
        Ok(c)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> Complex<T> {
        self.values[(i * self.n + j) * self.n + k]
    }

    /// Sets `C(i, j, k) = v` and `C(j, i, k) = −v`. Ignored for `i = j`.
    pub fn set_bracket(&mut self, i: usize, j: usize, k: usize, v: Complex<T>) {
        if i == j {
            return;
        }
        let n = self.n;
        self.values[(i * n + j) * n + k] = v;
        self.values[(j * n + i) * n + k] = -v;
    }

    pub fn values(&self) -> &[Complex<T>] {
        &self.values
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
            n: self.n,
            values: self.values.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn is_real(&self, tol: T) -> bool {
        self.values.iter().all(|z| z.im.abs() <= tol)
    }

    /// Constants in the basis `e'_i = Σ_a P(i, a) e_a`; `P` must be invertible.
    pub fn change_basis(&self, p: &[Vec<T>]) -> Result<Self> {
        let n = self.n;
        check_len(n, p.len())?;
        let pm = crate::matrix::ComplexSquareMatrix::from_real_rows(p)?;
        let inv = invert_real(p)?;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in i + 1..n {
                // [e'_i, e'_j] in the old basis
                let mut old = vec![czero::<T>(); n];
                for a in 0..n {
                    for b in 0..n {
                        let w = pm.get(i, a) * pm.get(j, b);
                        if w == czero() {
                            continue;
                        }
                        for (c, o) in old.iter_mut().enumerate() {
                            *o += w * self.get(a, b, c);
                        }
                    }
                }
                for k in 0..n {
                    let v = (0..n).fold(czero(), |acc, c| acc + old[c] * inv[c][k]);
                    out.set_bracket(i, j, k, v);
                }
            }
        }
        Ok(out)
    }
}

fn invert_real<T: Real>(p: &[Vec<T>]) -> Result<Vec<Vec<T>>> {
    let n = p.len();
    let mut a: Vec<Vec<T>> = p.to_vec();
    let mut inv: Vec<Vec<T>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { T::one() } else { T::zero() })
                .collect()
        })
        .collect();
    for col in 0..n {
        check_len(n, a[col].len())?;
        let piv = (col..n)
            .max_by(|&x, &y| a[x][col].abs().partial_cmp(&a[y][col].abs()).unwrap())
            .unwrap();
        if a[piv][col].abs() <= T::epsilon() {
            return Err(Error::InvalidArgument(
                "change-of-basis matrix is singular".into(),
            ));
        }
        a.swap(piv, col);
        inv.swap(piv, col);
        let d = a[col][col];
        for j in 0..n {
            a[col][j] /= d;
            inv[col][j] /= d;
        }
        for r in 0..n {
            if r != col {
                let f = a[r][col];
                for j in 0..n {
                    let (ac, ic) = (a[col][j], inv[col][j]);
                    a[r][j] -= f * ac;
                    inv[r][j] -= f * ic;
                }
            }
        }
    }
    Ok(inv)
}

/// Largest entry of `Σ_l C(i,j,l)C(l,k,m) + C(j,k,l)C(l,i,m) + C(k,i,l)C(l,j,m)`.
pub fn jacobi_residual<T: Real>(c: &StructureConstants<T>) -> T {
    let n = c.n();
    let mut worst = T::zero();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for m in 0..n {
                    let mut s = czero::<T>();
                    for l in 0..n {
                        s += c.get(i, j, l) * c.get(l, k, m)
                            + c.get(j, k, l) * c.get(l, i, m)
                            + c.get(k, i, l) * c.get(l, j, m);
                    }
                    worst = worst.max(s.norm());
                }
            }
        }
    }
    worst
}

pub fn antisym_kernel<T: Real>(
    s: &Scheme<T>,
    variant: &KernelVariant<T>,
) -> Result<StructureConstants<T>> {
    Ok(StructureConstants::from_kernel(&s.star_kernel(variant)?))
}

/// Symbol of `[A, B]` from the symbols of `A` and `B`, through the plain kernel.
pub fn commutator_symbol<T: Real>(
    s: &Scheme<T>,
    fa: &SymbolVector<T>,
    fb: &SymbolVector<T>,
) -> Result<SymbolVector<T>> {
    let k = s.star_kernel(&KernelVariant::Plain)?;
    let ab = k.star_multiply(fa, fb)?;
    let ba = k.star_multiply(fb, fa)?;
    Ok(SymbolVector(
        ab.iter().zip(ba.iter()).map(|(x, y)| x - y).collect(),
    ))
}

/// Jacobi residuals of the plain and dual constants. Both small means the
/// quantizer span and the dequantizer span each carry a Lie bracket.
pub fn double_check<T: Real>(s: &Scheme<T>) -> Result<(T, T)> {
    let plain = antisym_kernel(s, &KernelVariant::Plain)?;
    let dual = antisym_kernel(s, &KernelVariant::Dual)?;
    Ok((jacobi_residual(&plain), jacobi_residual(&dual)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::pauli;
    use crate::scheme::builtin_scheme;

    fn eps(i: usize, j: usize, k: usize) -> f64 {
        match (i, j, k) {
            (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
            (1, 0, 2) | (2, 1, 0) | (0, 2, 1) => -1.0,
            _ => 0.0,
        }
    }

    fn levi_civita() -> StructureConstants<f64> {
        let mut c = StructureConstants::zeros(3);
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    if i < j {
                        c.set_bracket(i, j, k, Complex::new(eps(i, j, k), 0.0));
                    }
                }
            }
        }
        c
    }

    #[test]
    fn so3_satisfies_jacobi() {
        assert_eq!(jacobi_residual(&levi_civita()), 0.0);
    }

    #[test]
    fn u2_constants_are_i_epsilon() {
        let s: Scheme<f64> = builtin_scheme("u2").unwrap();
        let c = antisym_kernel(&s, &KernelVariant::Plain).unwrap();
        assert!((c.get(1, 2, 3) - Complex::new(0.0, 1.0)).norm() < 1e-15);
        for j in 0..4 {
            for k in 0..4 {
                assert!(c.get(0, j, k).norm() < 1e-15);
                assert!(c.get(j, 0, k).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn su2sb2_constants() {
        let s: Scheme<f64> = builtin_scheme("su2sb2").unwrap();
        let c = antisym_kernel(&s, &KernelVariant::Plain).unwrap();
        assert!(c.max_abs_diff(&levi_civita()) < 1e-15);
        let d = antisym_kernel(&s, &KernelVariant::Dual).unwrap();
        // [U2, U3] = −U2, [U3, U1] = U1, [U1, U2] = 0
        assert!((d.get(1, 2, 1) + Complex::new(1.0, 0.0)).norm() < 1e-15);
        assert!((d.get(2, 0, 0) - Complex::new(1.0, 0.0)).norm() < 1e-15);
        assert!(d.get(0, 1, 0).norm() + d.get(0, 1, 1).norm() + d.get(0, 1, 2).norm() < 1e-15);
        let (rp, rd) = double_check(&s).unwrap();
        assert!(rp < 1e-12 && rd < 1e-12);
    }

    #[test]
    fn double_check_u2_and_gl2half() {
        let (a, b) = double_check(&builtin_scheme::<f64>("u2").unwrap()).unwrap();
        assert_eq!(a, b);
        let (a, b) = double_check(&builtin_scheme::<f64>("gl2half").unwrap()).unwrap();
        assert!(a < 1e-12 && b < 1e-12);
    }

    #[test]
    fn commutator_symbol_examples() {
        let s: Scheme<f64> = builtin_scheme("u2").unwrap();
        let sig = pauli::<f64>();
        let f1 = s.symbol_of(&sig[1]).unwrap();
        let f2 = s.symbol_of(&sig[2]).unwrap();
        let got = commutator_symbol(&s, &f1, &f2).unwrap();
        assert!((got[3] - Complex::new(0.0, 4.0)).norm() < 1e-14);
        assert!(got[0].norm() + got[1].norm() + got[2].norm() < 1e-14);
        assert!(commutator_symbol(&s, &f1, &f1)
            .unwrap()
            .iter()
            .all(|z| z.norm() < 1e-15));
        let f0 = s.symbol_of(&sig[0]).unwrap();
        assert!(commutator_symbol(&s, &f0, &f2)
            .unwrap()
            .iter()
            .all(|z| z.norm() < 1e-15));
    }

    #[test]
    fn from_values_checks_antisymmetry() {
        let c = levi_civita();
        let ok = StructureConstants::from_values(3, c.values().to_vec(), 1e-12).unwrap();
        assert_eq!(ok, c);
        let mut bad = c.values().to_vec();
        bad[(0 * 3 + 1) * 3 + 2] = Complex::new(0.5, 0.0);
        match StructureConstants::from_values(3, bad, 1e-12) {
            Err(Error::ShapeViolation { row, col, .. }) => assert_eq!((row, col), (0, 1)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(StructureConstants::<f64>::from_values(3, vec![], 1e-12).is_err());
    }

    #[test]
    fn change_basis_rescales_constants() {
        let c = levi_civita();
        let p = vec![
            vec![2.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
            vec![0.0, 0.0, 1.0],
        ];
        let d = c.change_basis(&p).unwrap();
        // [2e1, e2] = 2 e3
        assert!((d.get(0, 1, 2) - Complex::new(2.0, 0.0)).norm() < 1e-15);
        // [e2, e3] = e1 = ½ e1'
        assert!((d.get(1, 2, 0) - Complex::new(0.5, 0.0)).norm() < 1e-15);
        let singular = vec![vec![1.0, 0.0, 0.0]; 3];
        assert!(c.change_basis(&singular).is_err());
    }
}
