//! JSON and CSV formats.
//!
//! Complex numbers are `[re, im]` pairs throughout. Values are stored as
//! `f64` on disk and converted to the working scalar on load.

use std::io::Write;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie::{StructureConstants, ThreeDClass};
use crate::matrix::ComplexSquareMatrix;
use crate::phase_space::{FourierFunction, Grid, GridFunction};
use crate::scalar::Real;
use crate::scheme::{PairingForm, Scheme};
use crate::tomography::Tomogram;

pub type Pair = [f64; 2];

fn to_pair<T: Real>(z: Complex<T>) -> Pair {
    [z.re.to_f64_lossy(), z.im.to_f64_lossy()]
}

fn from_pair<T: Real>(p: Pair) -> Complex<T> {
    Complex::new(T::lit(p[0]), T::lit(p[1]))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixDto {
    pub dim: usize,
    pub entries: Vec<Vec<Pair>>,
}

impl MatrixDto {
    pub fn from_matrix<T: Real>(m: &ComplexSquareMatrix<T>) -> Self {
        Self {
            dim: m.dim(),
            entries: m
                .rows()
                .into_iter()
                .map(|r| r.into_iter().map(to_pair).collect())
                .collect(),
        }
    }

    pub fn to_matrix<T: Real>(&self) -> Result<ComplexSquareMatrix<T>> {
        if self.entries.len() != self.dim {
            return Err(Error::Format(format!(
                "matrix declares dim {} but has {} rows",
                self.dim,
                self.entries.len()
            )));
        }
        ComplexSquareMatrix::from_rows(
            self.entries
                .iter()
                .map(|r| r.iter().map(|&p| from_pair(p)).collect())
                .collect(),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairingDto {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scale: Option<f64>,
    #[serde(rename = "J", default, skip_serializing_if = "Option::is_none")]
    pub j: Option<MatrixDto>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SchemeDto {
    pub label: String,
    pub pairing: PairingDto,
    pub quantizers: Vec<MatrixDto>,
    pub dequantizers: Vec<MatrixDto>,
}

impl SchemeDto {
    pub fn from_scheme<T: Real>(s: &Scheme<T>) -> Self {
        let pairing = match s.pairing() {
            PairingForm::ScaledTrace { scale } | PairingForm::ScaledImagTrace { scale } => {
                PairingDto {
                    kind: s.pairing().kind_name().into(),
                    scale: Some(scale.to_f64_lossy()),
                    j: None,
                }
            }
            PairingForm::JTwistedTrace { j } => PairingDto {
                kind: s.pairing().kind_name().into(),
                scale: None,
                j: Some(MatrixDto::from_matrix(j)),
            },
        };
        Self {
            label: s.label().into(),
            pairing,
            quantizers: s.quantizers().iter().map(MatrixDto::from_matrix).collect(),
            dequantizers: s
                .dequantizers()
                .iter()
                .map(MatrixDto::from_matrix)
                .collect(),
        }
    }

    pub fn to_scheme<T: Real>(&self) -> Result<Scheme<T>> {
        let scale = || {
            self.pairing.scale.map(T::lit).ok_or_else(|| {
                Error::Format(format!("pairing \"{}\" needs a scale", self.pairing.kind))
            })
        };
        let pairing = match self.pairing.kind.as_str() {
            "scaled-trace" => PairingForm::ScaledTrace { scale: scale()? },
            "scaled-imag-trace" => PairingForm::ScaledImagTrace { scale: scale()? },
            "j-twisted-trace" => PairingForm::JTwistedTrace {
                j: self
                    .pairing
                    .j
                    .as_ref()
                    .ok_or_else(|| Error::Format("j-twisted-trace pairing needs \"J\"".into()))?
                    .to_matrix()?,
            },
            other => return Err(Error::Format(format!("unknown pairing kind \"{other}\""))),
        };
        let mats = |v: &[MatrixDto]| v.iter().map(|m| m.to_matrix()).collect::<Result<Vec<_>>>();
        Scheme::new(
            self.label.clone(),
            mats(&self.quantizers)?,
            mats(&self.dequantizers)?,
            pairing,
        )
    }
}

pub fn scheme_from_json<T: Real>(text: &str) -> Result<Scheme<T>> {
    serde_json::from_str::<SchemeDto>(text)?.to_scheme()
}

pub fn scheme_to_json<T: Real>(s: &Scheme<T>) -> String {
    serde_json::to_string_pretty(&SchemeDto::from_scheme(s)).expect("serializable")
}

pub fn matrix_from_json<T: Real>(text: &str) -> Result<ComplexSquareMatrix<T>> {
    serde_json::from_str::<MatrixDto>(text)?.to_matrix()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StructureConstantsDto {
    pub n: usize,
    pub values: Vec<Vec<Vec<Pair>>>,
}

impl StructureConstantsDto {
    pub fn from_constants<T: Real>(c: &StructureConstants<T>) -> Self {
        let n = c.n();
        Self {
            n,
            values: (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| (0..n).map(|k| to_pair(c.get(i, j, k))).collect())
                        .collect()
                })
                .collect(),
        }
    }

    /// Antisymmetry in the first two indices is checked to `1e-12`.
    pub fn to_constants<T: Real>(&self) -> Result<StructureConstants<T>> {
        let n = self.n;
        let mut flat = Vec::with_capacity(n * n * n);
        if self.values.len() != n {
            return Err(Error::Format(format!(
                "expected {n} blocks, got {}",
                self.values.len()
            )));
        }
        for (i, block) in self.values.iter().enumerate() {
            if block.len() != n {
                return Err(Error::Format(format!(
                    "block {i} has {} rows, expected {n}",
                    block.len()
                )));
            }
            for (j, row) in block.iter().enumerate() {
                if row.len() != n {
                    return Err(Error::Format(format!(
                        "row ({i},{j}) has {} entries, expected {n}",
                        row.len()
                    )));
                }
                flat.extend(row.iter().map(|&p| from_pair::<T>(p)));
            }
        }
        StructureConstants::from_values(n, flat, T::lit(1e-12))
    }
}

pub fn constants_from_json<T: Real>(text: &str) -> Result<StructureConstants<T>> {
    serde_json::from_str::<StructureConstantsDto>(text)?.to_constants()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassificationDto {
    pub label: String,
    pub h: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub jacobi_residual: f64,
}

impl ClassificationDto {
    pub fn from_class<T: Real>(c: &ThreeDClass<T>) -> Self {
        Self {
            label: c.label.to_string(),
            h: c.params.h.to_f64_lossy(),
            a: c.params.a.to_f64_lossy(),
            b: c.params.b.to_f64_lossy(),
            c: c.params.c.to_f64_lossy(),
            jacobi_residual: c.jacobi_residual.to_f64_lossy(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridDto {
    pub n: usize,
    #[serde(rename = "L")]
    pub half_width: f64,
}

impl GridDto {
    pub fn from_grid<T: Real>(g: &Grid<T>) -> Self {
        Self {
            n: g.n(),
            half_width: g.half_width().to_f64_lossy(),
        }
    }

    pub fn to_grid<T: Real>(&self) -> Result<Grid<T>> {
        Grid::new(self.n, T::lit(self.half_width))
    }
}

fn rows_of<T: Real>(n: usize, v: &[Complex<T>]) -> Vec<Vec<Pair>> {
    v.chunks(n)
        .map(|r| r.iter().map(|&z| to_pair(z)).collect())
        .collect()
}

fn flatten<T: Real>(n: usize, rows: &[Vec<Pair>]) -> Result<Vec<Complex<T>>> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::Format(format!("expected {n}x{n} samples")));
    }
    Ok(rows.iter().flatten().map(|&p| from_pair(p)).collect())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridFunctionDto {
    pub n: usize,
    #[serde(rename = "L")]
    pub half_width: f64,
    pub values: Vec<Vec<Pair>>,
}

impl GridFunctionDto {
    pub fn from_function<T: Real>(f: &GridFunction<T>) -> Self {
        let g = f.grid();
        Self {
            n: g.n(),
            half_width: g.half_width().to_f64_lossy(),
            values: rows_of(g.n(), f.values()),
        }
    }

    pub fn to_function<T: Real>(&self) -> Result<GridFunction<T>> {
        let g = Grid::new(self.n, T::lit(self.half_width))?;
        GridFunction::new(g, flatten(self.n, &self.values)?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TomogramDto {
    pub grid: GridDto,
    pub ray_data: Vec<Vec<Pair>>,
}

impl TomogramDto {
    pub fn from_tomogram<T: Real>(w: &Tomogram<T>) -> Self {
        Self {
            grid: GridDto::from_grid(w.grid()),
            ray_data: rows_of(w.grid().n(), w.ray_data().values()),
        }
    }

    pub fn to_tomogram<T: Real>(&self) -> Result<Tomogram<T>> {
        let g = self.grid.to_grid()?;
        let ray = FourierFunction::new(g, flatten(g.n(), &self.ray_data)?)?;
        Ok(Tomogram::from_ray_data(ray))
    }
}

/// Rows `q,p,re,im`.
pub fn write_grid_csv<T: Real>(f: &GridFunction<T>, out: &mut impl Write) -> Result<()> {
    writeln!(out, "q,p,re,im")?;
    let g = f.grid();
    for j in 0..g.n() {
        for m in 0..g.n() {
            let z = f.get(j, m);
            writeln!(out, "{},{},{},{}", g.coord(j), g.coord(m), z.re, z.im)?;
        }
    }
    Ok(())
}

/// Rows `mu,nu,X,w` for each ray and each `X` sample.
pub fn write_ray_csv<T: Real>(
    w: &Tomogram<T>,
    rays: &[(T, T)],
    xs: &[T],
    out: &mut impl Write,
) -> Result<()> {
    writeln!(out, "mu,nu,X,w")?;
    for &(mu, nu) in rays {
        for &x in xs {
            writeln!(out, "{mu},{nu},{x},{}", w.evaluate(x, mu, nu)?)?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{brackets_from_params, CasimirParams};
    use crate::scheme::{builtin_scheme, BUILTIN_SCHEMES};

    #[test]
    fn scheme_round_trip() {
        for name in BUILTIN_SCHEMES {
            let s: Scheme<f64> = builtin_scheme(name).unwrap();
            let back: Scheme<f64> = scheme_from_json(&scheme_to_json(&s)).unwrap();
            assert_eq!(back, s);
        }
    }

    #[test]
    fn malformed_scheme_reports_line() {
        let err =
            scheme_from_json::<f64>("{\n  \"label\": \"x\",\n  \"pairing\": oops\n}").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line 3"), "{msg}");
        let unknown =
            r#"{"label":"x","pairing":{"kind":"weird"},"quantizers":[],"dequantizers":[]}"#;
        assert!(matches!(
            scheme_from_json::<f64>(unknown),
            Err(Error::Format(_))
        ));
    }

    #[test]
    fn matrix_format() {
        let m: ComplexSquareMatrix<f64> =
            matrix_from_json(r#"{"dim":2,"entries":[[[1,0],[0,1]],[[0,-1],[2,0]]]}"#).unwrap();
        assert_eq!(m.get(0, 1), Complex::new(0.0, 1.0));
        assert_eq!(m.get(1, 0), Complex::new(0.0, -1.0));
        assert!(matrix_from_json::<f64>(r#"{"dim":3,"entries":[[[1,0]]]}"#).is_err());
    }

    #[test]
    fn constants_round_trip_and_antisymmetry() {
        let c = brackets_from_params(&CasimirParams::new(0.5, 1.0, -1.0, 0.0));
        let text = serde_json::to_string(&StructureConstantsDto::from_constants(&c)).unwrap();
        assert_eq!(constants_from_json::<f64>(&text).unwrap(), c);
        let mut dto = StructureConstantsDto::from_constants(&c);
        dto.values[0][1][2] = [3.0, 0.0];
        assert!(dto.to_constants::<f64>().is_err());
    }

    #[test]
    fn grid_function_and_tomogram_round_trip() {
        let g = Grid::new(8, 2.0_f64).unwrap();
        let f = GridFunction::from_real_fn(g, |q: f64, p: f64| (-(q * q) - p * p).exp() * 1e-3);
        let dto = GridFunctionDto::from_function(&f);
        assert_eq!(dto.to_function::<f64>().unwrap(), f);
        let w = Tomogram::from_ray_data(crate::phase_space::dft2(&f));
        let back: Tomogram<f64> = TomogramDto::from_tomogram(&w).to_tomogram().unwrap();
        assert_eq!(back.ray_data(), w.ray_data());
        let mut csv = Vec::new();
        write_grid_csv(&f, &mut csv).unwrap();
        let text = String::from_utf8(csv).unwrap();
        assert_eq!(text.lines().count(), 65);
        assert!(text.starts_with("q,p,re,im\n-2,-2,"));
        let mut rays = Vec::new();
        write_ray_csv(&w, &[(1.0, 0.0), (0.0, 1.0)], &[-1.0, 0.0, 1.0], &mut rays).unwrap();
        assert_eq!(String::from_utf8(rays).unwrap().lines().count(), 7);
    }
}
