use std::f64::consts::PI;

use num_complex::Complex64 as C;
use serde_json::json;
use starprod::io::{write_grid_csv, write_ray_csv};
use starprod::phase_space::{
    dft2, moyal_fourier_apply, poisson_bracket_grid, Grid, GridFunction, Hbar,
};
use starprod::tomography::{
    classical_star, mean_value_tomographic, poisson_star, quantum_star, Tomogram, Wavefunction,
};
use starprod::Grid64;

use crate::error::CliError;
use crate::lie_cmd::parse_list;
use crate::report::{number, Report, Tolerances};
use crate::CsvDir;

fn grid(n: usize, half_width: f64) -> Result<Grid64, CliError> {
    Grid::new(n, half_width).map_err(|e| CliError::Usage(e.to_string()))
}

fn hbar(v: f64) -> Result<Hbar<f64>, CliError> {
    Hbar::new(v).map_err(|e| CliError::Usage(e.to_string()))
}

fn gaussian_pair(g: Grid64) -> (GridFunction<f64>, GridFunction<f64>) {
    (
        GridFunction::from_real_fn(g, |q, p| (-((q - 0.5).powi(2) + p * p) / 2.0).exp()),
        GridFunction::from_real_fn(g, |q, p| (-(q * q) / 2.0 - (p + 0.3).powi(2)).exp()),
    )
}

const CSV_RAYS: [(f64, f64); 3] = [(1.0, 0.0), (0.0, 1.0), (0.6, 0.8)];

fn csv_xs() -> Vec<f64> {
    (0..=40).map(|i| -4.0 + 0.2 * i as f64).collect()
}

pub fn demo(
    n: usize,
    half_width: f64,
    h: f64,
    tols: Tolerances,
    csv: Option<&CsvDir>,
) -> Result<Report, CliError> {
    let g = grid(n, half_width)?;
    let hb = hbar(h)?;
    let mut report = Report::new("tomo demo", tols);
    report.input("n", n);
    report.input("L", half_width);
    report.input("hbar", h);

    let (a, b) = gaussian_pair(g);
    let wa = Tomogram::radon(&a)?;
    let wb = Tomogram::radon(&b)?;
    report.residual(
        "radon_roundtrip",
        wa.inverse_radon()
            .max_abs_diff(&a)
            .max(wb.inverse_radon().max_abs_diff(&b)),
    );

    let classical = classical_star(&wa, &wb)?;
    let product = Tomogram::radon(&a.mul(&b)?)?;
    report.residual(
        "classical_star",
        classical.ray_data().max_abs_diff(product.ray_data()),
    );

    let quantum = quantum_star(&wa, &wb, hb)?;
    let moyal = moyal_fourier_apply(&dft2(&a), &dft2(&b), hb)?.reflected();
    report.residual("quantum_star", quantum.ray_data().max_abs_diff(&moyal));

    let zero = quantum_star(&wa, &wb, hbar(0.0)?)?;
    report.residual(
        "classical_limit",
        zero.ray_data().max_abs_diff(classical.ray_data()),
    );

    let bracket = Tomogram::radon(&poisson_bracket_grid(&a, &b)?)?;
    report.residual(
        "poisson_radon",
        poisson_star(&wa, &wb)?
            .ray_data()
            .max_abs_diff(bracket.ray_data()),
    );

    let samples: Vec<_> = CSV_RAYS
        .iter()
        .map(|&(mu, nu)| -> Result<_, CliError> {
            Ok(json!({"mu": mu, "nu": nu, "X": 0.0, "w_a": number(wa.evaluate(0.0, mu, nu)?), "w_ab": number(quantum.evaluate(0.0, mu, nu)?)}))
        })
        .collect::<Result<_, _>>()?;
    report.value("samples", samples);

    if let Some(dir) = csv {
        dir.write("a.csv", |out| Ok(write_grid_csv(&a, out)?))?;
        dir.write("tomogram_a.csv", |out| {
            Ok(write_ray_csv(&wa, &CSV_RAYS, &csv_xs(), out)?)
        })?;
        dir.write("quantum_star.csv", |out| {
            Ok(write_ray_csv(&quantum, &CSV_RAYS, &csv_xs(), out)?)
        })?;
    }
    Ok(report)
}

pub fn limit(
    n: usize,
    half_width: f64,
    hbars: &str,
    tols: Tolerances,
    csv: Option<&CsvDir>,
) -> Result<Report, CliError> {
    let g = grid(n, half_width)?;
    let count = hbars.split(',').count();
    let hs = parse_list(hbars, count, "--hbars")?;
    if hs.is_empty() || hs.iter().any(|&h| !(h > 0.0 && h.is_finite())) {
        return Err(CliError::Usage("--hbars must be positive".into()));
    }
    let mut report = Report::new("tomo limit", tols);
    report.input("n", n);
    report.input("L", half_width);
    report.input("hbars", json!(hs));

    let (a, b) = gaussian_pair(g);
    let (wa, wb) = (Tomogram::radon(&a)?, Tomogram::radon(&b)?);
    let p = poisson_star(&wa, &wb)?;
    let mut rows = Vec::new();
    let mut errors = Vec::new();
    for &h in &hs {
        let ab = quantum_star(&wa, &wb, hbar(h)?)?;
        let ba = quantum_star(&wb, &wa, hbar(h)?)?;
        let quotient = ab
            .ray_data()
            .sub(ba.ray_data())?
            .scale(C::new(0.0, -1.0 / h));
        let err = quotient.max_abs_diff(p.ray_data());
        errors.push(err);
        rows.push(json!({"hbar": h, "residual": number(err)}));
    }
    // successive rows must shrink as ħ does
    let mut order: Vec<usize> = (0..hs.len()).collect();
    order.sort_by(|&i, &j| hs[j].total_cmp(&hs[i]));
    let violation = order
        .windows(2)
        .map(|w| (errors[w[1]] - errors[w[0]]).max(0.0))
        .fold(0.0, f64::max);
    report.residual("monotonicity_violation", violation);
    let orders: Vec<_> = order
        .windows(2)
        .map(|w| number((errors[w[0]] / errors[w[1]]).ln() / (hs[w[0]] / hs[w[1]]).ln()))
        .collect();
    report.value("rows", rows);
    report.value("observed_orders", orders);
    let bracket = Tomogram::radon(&poisson_bracket_grid(&a, &b)?)?;
    report.residual(
        "poisson_radon",
        p.ray_data().max_abs_diff(bracket.ray_data()),
    );

    if let Some(dir) = csv {
        dir.write("limit.csv", |out| {
            use std::io::Write;
            writeln!(out, "hbar,residual")?;
            for (h, e) in hs.iter().zip(&errors) {
                writeln!(out, "{h},{e}")?;
            }
            Ok(())
        })?;
    }
    Ok(report)
}

pub fn mean(
    n: usize,
    half_width: f64,
    h: f64,
    q0: f64,
    p0: f64,
    tols: Tolerances,
    csv: Option<&CsvDir>,
) -> Result<Report, CliError> {
    let g = grid(n, half_width)?;
    let hb = hbar(h)?;
    if h == 0.0 {
        return Err(CliError::Usage("mean values need --hbar > 0".into()));
    }
    let mut report = Report::new("tomo mean", tols);
    report.input("n", n);
    report.input("L", half_width);
    report.input("hbar", h);
    report.input("q0", q0);
    report.input("p0", p0);

    let psi = Wavefunction::gaussian(q0, p0, hb)?;
    let w = Tomogram::from_wavefunction(&psi, g, hb);
    // coherent-state Wigner function and a smooth observable
    let wigner = GridFunction::from_real_fn(g, move |q, p| {
        2.0 * (-((q - q0).powi(2) + (p - p0).powi(2)) / h).exp()
    });
    let observable = GridFunction::from_real_fn(g, |q, p| {
        (-(q * q) / 2.0 - 0.7 * p * p).exp() * (1.0 + q * p)
    });
    let tomographic = mean_value_tomographic(&w, &observable, hb)?;
    let overlap = wigner.mul(&observable)?.integral().re / (2.0 * PI * h);
    report.value("mean_value_tomographic", number(tomographic));
    report.value("phase_space_overlap", number(overlap));
    report.residual("mean_value_gap", (tomographic - overlap).abs());

    if let Some(dir) = csv {
        dir.write("state_tomogram.csv", |out| {
            Ok(write_ray_csv(&w, &CSV_RAYS, &csv_xs(), out)?)
        })?;
    }
    Ok(report)
}
