use std::path::{Path, PathBuf};

use num_complex::Complex64 as C;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use starprod::io::{matrix_from_json, scheme_from_json};
use starprod::lie::{antisym_kernel, double_check, jacobi_residual};
use starprod::scheme::{builtin_scheme, KernelVariant, SymbolVector, BUILTIN_SCHEMES};
use starprod::{Error, Matrix64, Scheme64};

use crate::error::CliError;
use crate::report::{complex, number, Report, Tolerances};
use crate::{read_file, CsvDir};

const RANDOM_DRAWS: usize = 10;

fn load_scheme(name: &str) -> Result<Scheme64, CliError> {
    if BUILTIN_SCHEMES.contains(&name) {
        return Ok(builtin_scheme(name)?);
    }
    let path = Path::new(name);
    if !path.is_file() {
        return Err(Error::UnknownScheme(name.into()).into());
    }
    Ok(scheme_from_json(&read_file(path)?)?)
}

fn random_matrix(rng: &mut ChaCha8Rng, dim: usize) -> Matrix64 {
    Matrix64::from_rows(
        (0..dim)
            .map(|_| {
                (0..dim)
                    .map(|_| C::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0)))
                    .collect()
            })
            .collect(),
    )
    .expect("square")
}

fn random_symbol(rng: &mut ChaCha8Rng, n: usize, complex: bool) -> SymbolVector<f64> {
    SymbolVector(
        (0..n)
            .map(|_| {
                C::new(
                    rng.gen_range(-1.0..=1.0),
                    if complex {
                        rng.gen_range(-1.0..=1.0)
                    } else {
                        0.0
                    },
                )
            })
            .collect(),
    )
}

fn random_density(rng: &mut ChaCha8Rng, dim: usize) -> Matrix64 {
    loop {
        let m = random_matrix(rng, dim);
        let rho = &m.adjoint() * &m;
        let t = rho.trace().re;
        if t > 1e-6 {
            return rho.scale_real(1.0 / t);
        }
    }
}

/// Deformation matrices: the user's matrix if given, then seeded draws. The
/// imaginary-trace pairing is real-linear, so draws are made Hermitian there.
fn deformations(s: &Scheme64, user: Option<Matrix64>, rng: &mut ChaCha8Rng) -> Vec<Matrix64> {
    let mut ks: Vec<Matrix64> = user.into_iter().collect();
    for _ in 0..RANDOM_DRAWS {
        let k = random_matrix(rng, s.dim());
        ks.push(if s.pairing().is_complex_linear() {
            k
        } else {
            (&k + &k.adjoint()).scale_real(0.5)
        });
    }
    ks
}

pub fn run(
    name: &str,
    k_path: Option<&PathBuf>,
    seed: u64,
    tols: Tolerances,
    csv: Option<&CsvDir>,
) -> Result<Report, CliError> {
    let s = load_scheme(name)?;
    let user_k = match k_path {
        Some(p) => {
            let k = matrix_from_json(&read_file(p)?)?;
            if k.dim() != s.dim() {
                return Err(Error::DimensionMismatch {
                    expected: s.dim(),
                    found: k.dim(),
                }
                .into());
            }
            Some(k)
        }
        None => None,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = Report::new("verify-scheme", tols);
    report.input("scheme", name);
    report.input("seed", seed);
    if let Some(p) = k_path {
        report.input("k", p.display().to_string());
    }
    report.value("label", s.label());
    report.value("n", s.n());
    report.value("dim", s.dim());
    report.value("pairing", s.pairing().kind_name());

    report.residual("pairing_residual", s.pairing_residual());

    // the plain kernel is associative exactly when the quantizer span is
    // closed under the matrix product, and likewise for the dual
    let closure = s.quantizer_closure_defect();
    let dual_closure = s.dual_scheme().quantizer_closure_defect();
    let assoc_tol = report.tolerance("associativity_residual");
    let closed = closure <= assoc_tol;
    let dual_closed = dual_closure <= assoc_tol;
    report.value("quantizer_span_closed", closed);
    report.value("dequantizer_span_closed", dual_closed);
    report.value("quantizer_closure_defect", number(closure));
    report.value("dequantizer_closure_defect", number(dual_closure));

    let ks = deformations(&s, user_k, &mut rng);
    let mut variants = vec![
        (KernelVariant::Plain, closed),
        (KernelVariant::Dual, dual_closed),
    ];
    for k in &ks {
        variants.push((KernelVariant::KDeformed(k.clone()), closed));
        variants.push((KernelVariant::KDeformedDual(k.clone()), dual_closed));
    }
    let mut assoc = std::collections::BTreeMap::<&str, f64>::new();
    let mut jacobi = std::collections::BTreeMap::<&str, f64>::new();
    let mut ungated = std::collections::BTreeMap::<&str, f64>::new();
    for (v, gate) in &variants {
        let kernel = s.star_kernel(v)?;
        let r = kernel.associativity_residual();
        let slot = if *gate { &mut assoc } else { &mut ungated };
        let e = slot.entry(v.name()).or_insert(0.0);
        *e = e.max(r);
        let j = jacobi_residual(&antisym_kernel(&s, v)?);
        let e = jacobi.entry(v.name()).or_insert(0.0);
        *e = e.max(j);
        if let (KernelVariant::Plain, Some(dir)) = (v, csv) {
            dir.write("kernel.csv", |out| {
                use std::io::Write;
                writeln!(out, "x1,x2,x,re,im")?;
                for a in 0..s.n() {
                    for b in 0..s.n() {
                        for x in 0..s.n() {
                            let z = kernel.get(a, b, x);
                            writeln!(out, "{a},{b},{x},{},{}", z.re, z.im)?;
                        }
                    }
                }
                Ok(())
            })?;
        }
    }
    for (name, r) in &assoc {
        report.residual(&format!("associativity_residual.{name}"), *r);
    }
    if !ungated.is_empty() {
        report.value(
            "associativity_residual_open_span",
            json!(ungated
                .iter()
                .map(|(k, v)| (k.to_string(), number(*v)))
                .collect::<serde_json::Map<_, _>>()),
        );
    }
    for (name, r) in &jacobi {
        report.residual(&format!("jacobi_residual.{name}"), *r);
    }
    let (plain, dual) = double_check(&s)?;
    report.residual("double_check.plain", plain);
    report.residual("double_check.dual", dual);

    let complex_symbols = s.pairing().is_complex_linear();
    let mut round_trip = 0.0_f64;
    let mut mean_gap = 0.0_f64;
    for _ in 0..RANDOM_DRAWS {
        let f = random_symbol(&mut rng, s.n(), complex_symbols);
        let a = s.reconstruct(&f)?;
        round_trip = round_trip.max(s.symbol_of(&a)?.max_abs_diff(&f));
        let fd = random_symbol(&mut rng, s.n(), complex_symbols);
        let b = s.reconstruct_dual(&fd)?;
        round_trip = round_trip.max(s.dual_symbol(&b)?.max_abs_diff(&fd));
        let rho = random_density(&mut rng, s.dim());
        mean_gap = mean_gap.max((s.mean_value(&rho, &b)? - rho.trace_product(&b)).norm());
    }
    report.residual("round_trip_residual", round_trip);
    report.residual("mean_value_residual", mean_gap);

    if s.n() >= 2 {
        let k = s.star_kernel(&KernelVariant::Plain)?;
        let c = antisym_kernel(&s, &KernelVariant::Plain)?;
        report.value(
            "kernel_sample",
            json!({"index": [0, 1, s.n() - 1], "value": complex(k.get(0, 1, s.n() - 1))}),
        );
        report.value(
            "constant_sample",
            json!({"index": [0, 1, s.n() - 1], "value": complex(c.get(0, 1, s.n() - 1))}),
        );
    }
    Ok(report)
}
