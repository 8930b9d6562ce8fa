use std::fmt;

use num_complex::Complex;

use nalgebra::{Matrix2, Matrix3};

use super::{jacobi_residual, StructureConstants};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Parameters of the Casimir-form normal form
/// `{x1,x2} = c·x3`, `{x2,x3} = a·x1 − h·x2`, `{x3,x1} = b·x2 + h·x1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CasimirParams<T> {
    pub h: T,
    pub a: T,
    pub b: T,
    pub c: T,
}

impl<T: Real> CasimirParams<T> {
    pub fn new(h: T, a: T, b: T, c: T) -> Self {
        Self { h, a, b, c }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ThreeDLabel {
    A1,
    A2,
    A3,
    A4,
    A5,
    A6,
    B1,
    B2,
    B3,
    B4,
}

impl ThreeDLabel {
    /// Usual name of the algebra, where it has one.
    pub fn common_name(self) -> &'static str {
        match self {
            Self::A1 => "su(2) / so(3)",
            Self::A2 => "e(2)",
            Self::A3 => "sl(2,R) / so(2,1)",
            Self::A4 => "e(1,1)",
            Self::A5 => "Heisenberg-Weyl",
            Self::A6 => "abelian",
            Self::B1 => "sb(2,C)",
            Self::B2 | Self::B3 | Self::B4 => "non-unimodular",
        }
    }
}

impl fmt::Display for ThreeDLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ThreeDClass<T> {
    pub label: ThreeDLabel,
    /// Normal-form parameters; for B3/B4 `h` is the residual invariant.
    pub params: CasimirParams<T>,
    pub jacobi_residual: T,
}

pub fn brackets_from_params<T: Real>(p: &CasimirParams<T>) -> StructureConstants<T> {
    let mut c = StructureConstants::zeros(3);
    let r = |x: T| Complex::new(x, T::zero());
    c.set_bracket(0, 1, 2, r(p.c));
    c.set_bracket(1, 2, 0, r(p.a));
    c.set_bracket(1, 2, 1, r(-p.h));
    c.set_bracket(2, 0, 1, r(p.b));
    c.set_bracket(2, 0, 0, r(p.h));
    c
}

/// Coefficient `2hc` of the Jacobi obstruction.
pub fn casimir_jacobi_obstruction<T: Real>(p: &CasimirParams<T>) -> T {
    T::lit(2.0) * p.h * p.c
}

fn eps(i: usize, j: usize, l: usize) -> i8 {
    match (i, j, l) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1,
        (1, 0, 2) | (2, 1, 0) | (0, 2, 1) => -1,
        _ => 0,
    }
}

/// `M(l, k) = ½ Σ_{ij} ε_{ijl} C(i, j, k)`, so that `C(i,j,k) = ε_{ijl} M(l,k)`.
pub(crate) fn bracket_matrix<T: Real>(c: &StructureConstants<T>) -> [[T; 3]; 3] {
    let mut m = [[T::zero(); 3]; 3];
    for (l, row) in m.iter_mut().enumerate() {
        for (k, v) in row.iter_mut().enumerate() {
            let mut s = T::zero();
            for i in 0..3 {
                for j in 0..3 {
                    match eps(i, j, l) {
                        1 => s += c.get(i, j, k).re,
                        -1 => s -= c.get(i, j, k).re,
                        _ => {}
                    }
                }
            }
            *v = s * T::lit(0.5);
        }
    }
    m
}

fn cross<T: Real>(a: [T; 3], b: [T; 3]) -> [T; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn quad<T: Real>(m: &[[T; 3]; 3], x: [T; 3], y: [T; 3]) -> T {
    let mut s = T::zero();
    for i in 0..3 {
        for j in 0..3 {
            s += x[i] * m[i][j] * y[j];
        }
    }
    s
}

/// Classifies three-dimensional real Lie algebras.
///
/// The symmetric part `N` of the bracket matrix is diagonalized by a
/// rotation; the antisymmetric part is a vector `v` which Jacobi forces into
/// the kernel of `N`. `v = 0` gives type A (sign pattern of the eigenvalues
/// of `N`), otherwise type B (eigenvalues of `N` on the plane orthogonal to
/// `v`, with `h = |v|`). Remaining freedom is the axis rescaling
/// `a' = λ2λ3a/λ1`, `b' = λ1λ3b/λ2`, `c' = λ1λ2c/λ3`, `h' = λ3h`.
pub fn classify_3d<T: Real>(c: &StructureConstants<T>) -> Result<ThreeDClass<T>> {
    if c.n() != 3 {
        return Err(Error::Unclassifiable(format!(
            "expected 3 generators, got {}",
            c.n()
        )));
    }
    let cmax = c.max_abs();
    let tiny = T::lit(1e-9);
    if !c.is_real(tiny * cmax) {
        return Err(Error::Unclassifiable(
            "structure constants are not real".into(),
        ));
    }
    let jac = jacobi_residual(c);
    let zero = T::zero();
    let one = T::one();
    let done = |label, h, a, b, cc| {
        Ok(ThreeDClass {
            label,
            params: CasimirParams::new(h, a, b, cc),
            jacobi_residual: jac,
        })
    };
    if cmax == zero {
        return done(ThreeDLabel::A6, zero, zero, zero, zero);
    }
    if jac > tiny * cmax * cmax {
        return Err(Error::Unclassifiable(format!(
            "Jacobi identity fails (residual {jac}); not a Lie algebra"
        )));
    }
    let m = bracket_matrix(c);
    let scale = m.iter().flatten().fold(zero, |acc, v| acc.max(v.abs()));
    let tol = tiny * scale;
    let half = T::lit(0.5);
    let mut n = [[zero; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            n[i][j] = (m[i][j] + m[j][i]) * half;
        }
    }
    let v = [
        (m[2][1] - m[1][2]) * half,
        (m[0][2] - m[2][0]) * half,
        (m[1][0] - m[0][1]) * half,
    ];
    let vnorm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();

    if vnorm <= tol {
        let nm = Matrix3::from_fn(|i, j| n[i][j].to_f64_lossy());
        let nz: Vec<T> = nm
            .symmetric_eigenvalues()
            .iter()
            .map(|&x| T::lit(x))
            .filter(|x| x.abs() > tol)
            .collect();
        let same_sign = nz.iter().all(|x| *x > zero) || nz.iter().all(|x| *x < zero);
        return match (nz.len(), same_sign) {
            (3, true) => done(ThreeDLabel::A1, zero, one, one, one),
            (3, false) => done(ThreeDLabel::A3, zero, one, one, -one),
            (2, true) => done(ThreeDLabel::A2, zero, zero, one, one),
            (2, false) => done(ThreeDLabel::A4, zero, zero, one, -one),
            (1, _) => done(ThreeDLabel::A5, zero, zero, zero, one),
            _ => done(ThreeDLabel::A6, zero, zero, zero, zero),
        };
    }

    // orthonormal frame (f1, f2, e3) with e3 along v
    let e3 = [v[0] / vnorm, v[1] / vnorm, v[2] / vnorm];
    let k = (0..3)
        .min_by(|&x, &y| e3[x].abs().partial_cmp(&e3[y].abs()).unwrap())
        .unwrap();
    let mut axis = [zero; 3];
    axis[k] = one;
    let mut g1 = cross(e3, axis);
    let g1n = (g1[0] * g1[0] + g1[1] * g1[1] + g1[2] * g1[2]).sqrt();
    g1 = [g1[0] / g1n, g1[1] / g1n, g1[2] / g1n];
    let g2 = cross(e3, g1);
    let block = Matrix2::new(
        quad(&n, g1, g1).to_f64_lossy(),
        quad(&n, g1, g2).to_f64_lossy(),
        quad(&n, g2, g1).to_f64_lossy(),
        quad(&n, g2, g2).to_f64_lossy(),
    );
    let vals = block.symmetric_eigenvalues();
    let (a, b) = (T::lit(vals[0]), T::lit(vals[1]));
    let h = vnorm;
    let az = a.abs() <= tol;
    let bz = b.abs() <= tol;
    match (az, bz) {
        (true, true) => done(ThreeDLabel::B1, one, zero, zero, zero),
        (true, false) | (false, true) => done(ThreeDLabel::B2, one, zero, one, zero),
        _ => {
            let r = h / (a * b).abs().sqrt();
            if a * b < zero {
                done(ThreeDLabel::B3, r, one, -one, zero)
            } else {
                done(ThreeDLabel::B4, r, one, one, zero)
            }
        }
    }
}
