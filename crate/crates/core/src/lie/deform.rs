use super::{antisym_kernel, StructureConstants};
use crate::error::{Error, Result};
use crate::matrix::ComplexSquareMatrix;
use crate::scalar::{creal, Real};
use crate::scheme::{KernelVariant, PairingForm, Scheme};

/// Real 3×3 deformation matrix `K` used in `[X, Y]_K = X K Y − Y K X`.
#[derive(Clone, Debug, PartialEq)]
pub struct KDeformMatrix<T> {
    rows: [[T; 3]; 3],
}

impl<T: Real> KDeformMatrix<T> {
    pub fn from_rows(rows: &[Vec<T>]) -> Result<Self> {
        if rows.len() != 3 {
            return Err(Error::ShapeViolation {
                row: rows.len(),
                col: 0,
                reason: format!("K needs 3 rows, got {}", rows.len()),
            });
        }
        let mut out = [[T::zero(); 3]; 3];
        for (r, row) in rows.iter().enumerate() {
            if row.len() != 3 {
                return Err(Error::ShapeViolation {
                    row: r,
                    col: row.len(),
                    reason: format!("row {r} has {} entries, expected 3", row.len()),
                });
            }
            for (c, &v) in row.iter().enumerate() {
                if !v.is_finite() {
                    return Err(Error::ShapeViolation {
                        row: r,
                        col: c,
                        reason: "entry is not finite".into(),
                    });
                }
                out[r][c] = v;
            }
        }
        Ok(Self { rows: out })
    }

    pub fn identity() -> Self {
        Self::diagonal([T::one(); 3])
    }

    pub fn diagonal(d: [T; 3]) -> Self {
        let z = T::zero();
        Self {
            rows: [[d[0], z, z], [z, d[1], z], [z, z, d[2]]],
        }
    }

    /// `[[λ1, μ1, μ3], [μ1, λ2, μ2], [μ3, μ2, λ3]]`.
    pub fn symmetric(lambda: [T; 3], mu: [T; 3]) -> Self {
        Self {
            rows: [
                [lambda[0], mu[0], mu[2]],
                [mu[0], lambda[1], mu[1]],
                [mu[2], mu[1], lambda[2]],
            ],
        }
    }

    /// `[[α, β, γ], [0, ε, φ], [0, ζ, ι]]`.
    #[allow(clippy::too_many_arguments)]
    pub fn type_b(alpha: T, beta: T, gamma: T, epsilon: T, phi: T, zeta: T, iota: T) -> Self {
        let z = T::zero();
        Self {
            rows: [[alpha, beta, gamma], [z, epsilon, phi], [z, zeta, iota]],
        }
    }

    pub fn get(&self, r: usize, c: usize) -> T {
        self.rows[r][c]
    }

    pub fn rows(&self) -> [[T; 3]; 3] {
        self.rows
    }

    pub fn to_matrix(&self) -> ComplexSquareMatrix<T> {
        let rows: Vec<Vec<T>> = self.rows.iter().map(|r| r.to_vec()).collect();
        ComplexSquareMatrix::from_real_rows(&rows).expect("finite 3x3")
    }

    pub fn check_symmetric(&self, tol: T) -> Result<()> {
        for r in 0..3 {
            for c in r + 1..3 {
                if (self.rows[r][c] - self.rows[c][r]).abs() > tol {
                    return Err(Error::InvalidArgument(format!(
                        "so(3) deformation needs a symmetric K; entry ({r},{c}) = {} differs from ({c},{r}) = {}",
                        self.rows[r][c], self.rows[c][r]
                    )));
                }
            }
        }
        Ok(())
    }

    /// The type-B route needs `K(1,0) = K(2,0) = 0`.
    pub fn check_type_b(&self) -> Result<()> {
        for r in 1..3 {
            if self.rows[r][0] != T::zero() {
                return Err(Error::ShapeViolation {
                    row: r,
                    col: 0,
                    reason: format!(
                        "type-B K must vanish below the (0,0) entry, found {}",
                        self.rows[r][0]
                    ),
                });
            }
        }
        Ok(())
    }
}

/// so(3) generators `L1, L2, L3` with `[L1, L2] = L3` and cyclic.
pub fn so3_generators<T: Real>() -> [ComplexSquareMatrix<T>; 3] {
    let (o, z) = (T::one(), T::zero());
    let m = |r: [[T; 3]; 3]| {
        ComplexSquareMatrix::from_real_rows(&r.iter().map(|x| x.to_vec()).collect::<Vec<_>>())
            .unwrap()
    };
    [
        m([[z, z, z], [z, z, -o], [z, o, z]]),
        m([[z, z, o], [z, z, z], [-o, z, z]]),
        m([[z, -o, z], [o, z, z], [z, z, z]]),
    ]
}

/// Generators `X1 = E13`, `X2 = E12`, `X3 = h·E11 + E23 − E32` of the
/// type-B base algebra.
pub fn type_b_generators<T: Real>(h: T) -> [ComplexSquareMatrix<T>; 3] {
    let (o, z) = (T::one(), T::zero());
    let m = |r: [[T; 3]; 3]| {
        ComplexSquareMatrix::from_real_rows(&r.iter().map(|x| x.to_vec()).collect::<Vec<_>>())
            .unwrap()
    };
    [
        m([[z, z, o], [z, z, z], [z, z, z]]),
        m([[z, o, z], [z, z, z], [z, z, z]]),
        m([[h, z, z], [z, z, o], [z, -o, z]]),
    ]
}

/// Scheme with the given quantizers and dequantizers chosen as their dual
/// basis inside the same span under `Tr(U† D)`.
pub fn dual_basis_scheme<T: Real>(
    label: &str,
    basis: &[ComplexSquareMatrix<T>],
) -> Result<Scheme<T>> {
    let n = basis.len();
    let gram = ComplexSquareMatrix::from_rows(
        (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| basis[a].adjoint().trace_product(&basis[b]))
                    .collect()
            })
            .collect(),
    )?;
    let w = gram
        .inverse()
        .map_err(|_| Error::InvalidScheme("basis is linearly dependent".into()))?
        .conj();
    let dim = basis[0].dim();
    let dual = (0..n)
        .map(|a| {
            basis
                .iter()
                .enumerate()
                .fold(ComplexSquareMatrix::zeros(dim), |acc, (c, x)| {
                    &acc + &x.scale(w.get(a, c))
                })
        })
        .collect();
    Scheme::new(
        label,
        basis.to_vec(),
        dual,
        PairingForm::ScaledTrace { scale: T::one() },
    )
}

/// Constants of `[X_a, X_b]_K` projected onto `span(X)`, together with the
/// largest distance of a deformed bracket from that span. A nonzero defect
/// means the span is not closed and the constants are only a projection.
pub fn k_deformed_constants<T: Real>(
    basis: &[ComplexSquareMatrix<T>],
    k: &ComplexSquareMatrix<T>,
) -> Result<(StructureConstants<T>, T)> {
    let s = dual_basis_scheme("span", basis)?;
    let c = antisym_kernel(&s, &KernelVariant::KDeformed(k.clone()))?;
    let n = basis.len();
    let mut defect = T::zero();
    for a in 0..n {
        for b in a + 1..n {
            let br = basis[a].k_commutator(k, &basis[b]);
            let back = (0..n).fold(ComplexSquareMatrix::zeros(k.dim()), |acc, x| {
                &acc + &basis[x].scale(c.get(a, b, x))
            });
            defect = defect.max(br.max_abs_diff(&back));
        }
    }
    Ok((c, defect))
}

fn real_part<T: Real>(c: &StructureConstants<T>) -> StructureConstants<T> {
    let n = c.n();
    let mut out = StructureConstants::zeros(n);
    for i in 0..n {
        for j in i + 1..n {
            for k in 0..n {
                out.set_bracket(i, j, k, creal(c.get(i, j, k).re));
            }
        }
    }
    out
}

/// K-deformed so(3): constants of `[L_i, L_j]_K` in the `L` basis.
pub fn so3_k_deform<T: Real>(k: &KDeformMatrix<T>) -> Result<StructureConstants<T>> {
    k.check_symmetric(T::zero())?;
    let (c, _) = k_deformed_constants(&so3_generators(), &k.to_matrix())?;
    Ok(real_part(&c))
}

/// K-deformed type-B algebra: constants of `[X_i, X_j]_K` in the `X` basis.
pub fn type_b_k_deform<T: Real>(k: &KDeformMatrix<T>, h: T) -> Result<StructureConstants<T>> {
    k.check_type_b()?;
    let (c, defect) = k_deformed_constants(&type_b_generators(h), &k.to_matrix())?;
    let scale = T::one() + h.abs();
    let kmax = k
        .rows()
        .iter()
        .flatten()
        .fold(T::zero(), |m, v| m.max(v.abs()));
    if defect > T::lit(1e3) * T::epsilon() * scale * scale * (T::one() + kmax) {
        return Err(Error::InvalidArgument(format!(
            "deformed brackets leave the generator span (defect {defect})"
        )));
    }
    Ok(real_part(&c))
}

#[cfg(test)]
mod tests {
    use super::super::{classify_3d, jacobi_residual, ThreeDLabel};
    use super::*;

    fn get(c: &StructureConstants<f64>, i: usize, j: usize, k: usize) -> f64 {
        c.get(i, j, k).re
    }

    #[test]
    fn identity_gives_so3() {
        let c = so3_k_deform(&KDeformMatrix::<f64>::identity()).unwrap();
        for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
            assert!((get(&c, i, j, k) - 1.0).abs() < 1e-15);
        }
        assert!(jacobi_residual(&c) < 1e-14);
    }

    #[test]
    fn symmetric_k_matches_bracket_table() {
        let (l1, l2, l3) = (0.3, -1.2, 2.5);
        let (m1, m2, m3) = (0.7, -0.4, 1.1);
        let c = so3_k_deform(&KDeformMatrix::symmetric([l1, l2, l3], [m1, m2, m3])).unwrap();
        let rows = [
            ((0, 1), [m3, m2, l3]),
            ((1, 2), [l1, m1, m3]),
            ((2, 0), [m1, l2, m2]),
        ];
        for ((i, j), want) in rows {
            for k in 0..3 {
                assert!((get(&c, i, j, k) - want[k]).abs() < 1e-14, "({i},{j},{k})");
            }
        }
        assert!(jacobi_residual(&c) < 1e-13);
    }

    #[test]
    fn diag_110_is_euclidean() {
        let c = so3_k_deform(&KDeformMatrix::diagonal([1.0, 1.0, 0.0])).unwrap();
        assert!((get(&c, 1, 2, 0) - 1.0).abs() < 1e-15);
        assert_eq!(classify_3d(&c).unwrap().label, ThreeDLabel::A2);
    }

    #[test]
    fn non_symmetric_k_is_rejected_for_so3() {
        let k = KDeformMatrix::from_rows(&[
            vec![1.0, 0.5, 0.0],
            vec![0.0, 1.0, 0.0],
            vec![0.0, 0.0, 1.0],
        ])
        .unwrap();
        assert!(matches!(so3_k_deform(&k), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn type_b_identity_is_b4_base() {
        let c = type_b_k_deform(&KDeformMatrix::<f64>::identity(), 1.0).unwrap();
        assert!(jacobi_residual(&c) < 1e-14);
        let cl = classify_3d(&c).unwrap();
        assert_eq!(cl.label, ThreeDLabel::B4);
    }

    #[test]
    fn type_b_sb2_condition() {
        // ε = ι = 0 and hα = 1 − φ = 1 + ζ
        let k = KDeformMatrix::type_b(1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0);
        let c = type_b_k_deform(&k, 1.0).unwrap();
        assert_eq!(classify_3d(&c).unwrap().label, ThreeDLabel::B1);
        let k = KDeformMatrix::type_b(0.5, 0.3, -0.2, 0.0, 0.4, -0.4, 0.0);
        let c = type_b_k_deform(&k, 1.2).unwrap();
        assert!(jacobi_residual(&c) < 1e-13);
        assert_eq!(classify_3d(&c).unwrap().label, ThreeDLabel::B1);
    }

    #[test]
    fn type_b_lower_left_entry_is_a_shape_violation() {
        let k = KDeformMatrix::from_rows(&[
            vec![1.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
            vec![0.3, 0.0, 1.0],
        ])
        .unwrap();
        match type_b_k_deform(&k, 1.0) {
            Err(Error::ShapeViolation { row, col, .. }) => assert_eq!((row, col), (2, 0)),
            other => panic!("unexpected {other:?}"),
        }
        // the projected constants of such a K break Jacobi
        let (c, defect) = k_deformed_constants(&type_b_generators(1.0), &k.to_matrix()).unwrap();
        assert!(defect > 1e-3);
        assert!(jacobi_residual(&c) > 1e-3);
    }

    #[test]
    fn so3_constants_are_linear_in_k() {
        let a = KDeformMatrix::symmetric([0.2, 1.0, -0.5], [0.1, 0.3, -0.9]);
        let b = KDeformMatrix::symmetric([1.5, -0.7, 0.4], [0.6, -0.2, 0.8]);
        let sum = KDeformMatrix::symmetric([1.7, 0.3, -0.1], [0.7, 0.1, -0.1]);
        let (ca, cb, cs) = (
            so3_k_deform(&a).unwrap(),
            so3_k_deform(&b).unwrap(),
            so3_k_deform(&sum).unwrap(),
        );
        for (i, v) in cs.values().iter().enumerate() {
            assert!((v - ca.values()[i] - cb.values()[i]).norm() < 1e-14);
        }
    }

    #[test]
    fn from_rows_reports_offending_entry() {
        match KDeformMatrix::from_rows(&[
            vec![1.0, 0.0, 0.0],
            vec![0.0, f64::NAN, 0.0],
            vec![0.0; 3],
        ]) {
            Err(Error::ShapeViolation { row, col, .. }) => assert_eq!((row, col), (1, 1)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(KDeformMatrix::<f64>::from_rows(&[vec![1.0, 0.0], vec![0.0, 1.0]]).is_err());
    }
}
