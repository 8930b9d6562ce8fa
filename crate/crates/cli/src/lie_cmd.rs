use std::path::{Path, PathBuf};

use serde::Deserialize;
use serde_json::json;
use starprod::io::{constants_from_json, ClassificationDto, StructureConstantsDto};
use starprod::lie::{
    brackets_from_params, casimir_jacobi_obstruction, classify_3d, jacobi_residual, so3_k_deform,
    type_b_k_deform, CasimirParams, KDeformMatrix,
};
use starprod::StructureConstants64;

use crate::error::CliError;
use crate::report::{number, Report, Tolerances};
use crate::{read_file, CsvDir};

#[derive(Deserialize)]
struct KFile {
    rows: Vec<Vec<f64>>,
}

pub fn parse_list(text: &str, expected: usize, what: &str) -> Result<Vec<f64>, CliError> {
    let v = text
        .split(',')
        .map(|x| x.trim().parse::<f64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| CliError::Usage(format!("{what}: cannot parse \"{text}\" as numbers")))?;
    if v.len() != expected {
        return Err(CliError::Usage(format!(
            "{what}: expected {expected} numbers, got {}",
            v.len()
        )));
    }
    Ok(v)
}

/// `diag:a,b,c`, `sym:λ1,λ2,λ3,μ1,μ2,μ3`, `tri:α,β,γ,ε,φ,ζ,ι`,
/// `rows:` followed by nine entries, or a JSON file `{"rows": [[..],[..],[..]]}`.
pub fn parse_k(spec: &str) -> Result<KDeformMatrix<f64>, CliError> {
    if let Some(rest) = spec.strip_prefix("diag:") {
        let v = parse_list(rest, 3, "diag")?;
        return Ok(KDeformMatrix::diagonal([v[0], v[1], v[2]]));
    }
    if let Some(rest) = spec.strip_prefix("sym:") {
        let v = parse_list(rest, 6, "sym")?;
        return Ok(KDeformMatrix::symmetric(
            [v[0], v[1], v[2]],
            [v[3], v[4], v[5]],
        ));
    }
    if let Some(rest) = spec.strip_prefix("tri:") {
        let v = parse_list(rest, 7, "tri")?;
        return Ok(KDeformMatrix::type_b(
            v[0], v[1], v[2], v[3], v[4], v[5], v[6],
        ));
    }
    if let Some(rest) = spec.strip_prefix("rows:") {
        let v = parse_list(rest, 9, "rows")?;
        return Ok(KDeformMatrix::from_rows(
            &v.chunks(3).map(|r| r.to_vec()).collect::<Vec<_>>(),
        )?);
    }
    let path = Path::new(spec);
    if !path.is_file() {
        return Err(CliError::Usage(format!(
            "--k \"{spec}\" is neither diag:/sym:/tri:/rows: nor a readable file"
        )));
    }
    let file: KFile = serde_json::from_str(&read_file(path)?).map_err(starprod::Error::from)?;
    Ok(KDeformMatrix::from_rows(&file.rows)?)
}

fn parse_params(text: &str) -> Result<CasimirParams<f64>, CliError> {
    let v = parse_list(text, 4, "--params h,a,b,c")?;
    Ok(CasimirParams::new(v[0], v[1], v[2], v[3]))
}

pub enum ConstantsSource<'a> {
    Params(&'a str),
    File(&'a PathBuf),
}

fn load_constants(
    src: &ConstantsSource<'_>,
    report: &mut Report,
) -> Result<StructureConstants64, CliError> {
    match src {
        ConstantsSource::Params(text) => {
            let p = parse_params(text)?;
            report.input("params", json!({"h": p.h, "a": p.a, "b": p.b, "c": p.c}));
            report.value(
                "casimir_obstruction",
                number(casimir_jacobi_obstruction(&p)),
            );
            Ok(brackets_from_params(&p))
        }
        ConstantsSource::File(path) => {
            report.input("constants", path.display().to_string());
            Ok(constants_from_json(&read_file(path)?)?)
        }
    }
}

fn emit_constants(
    c: &StructureConstants64,
    report: &mut Report,
    csv: Option<&CsvDir>,
) -> Result<(), CliError> {
    report.value(
        "structure_constants",
        serde_json::to_value(StructureConstantsDto::from_constants(c)).unwrap(),
    );
    if let Some(dir) = csv {
        dir.write("constants.csv", |out| {
            use std::io::Write;
            writeln!(out, "i,j,k,re,im")?;
            let n = c.n();
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        let z = c.get(i, j, k);
                        writeln!(out, "{i},{j},{k},{},{}", z.re, z.im)?;
                    }
                }
            }
            Ok(())
        })?;
    }
    Ok(())
}

fn add_classification(c: &StructureConstants64, report: &mut Report) {
    match classify_3d(c) {
        Ok(class) => {
            report.value("label", class.label.to_string());
            report.value("common_name", class.label.common_name());
            report.value(
                "classification",
                serde_json::to_value(ClassificationDto::from_class(&class)).unwrap(),
            );
        }
        Err(e) => {
            report.value("label", serde_json::Value::Null);
            report.value("classification_error", e.to_string());
        }
    }
}

pub fn deform_so3(
    k_spec: &str,
    classify: bool,
    tols: Tolerances,
    csv: Option<&CsvDir>,
) -> Result<Report, CliError> {
    let k = parse_k(k_spec)?;
    let mut report = Report::new("lie deform-so3", tols);
    report.input("k", k_spec);
    report.input("classify", classify);
    report.value("k_rows", json!(k.rows()));
    let c = so3_k_deform(&k)?;
    emit_constants(&c, &mut report, csv)?;
    report.residual("jacobi_residual", jacobi_residual(&c));
    if classify {
        add_classification(&c, &mut report);
    }
    Ok(report)
}

pub fn deform_b4(
    h: f64,
    k_spec: &str,
    classify: bool,
    tols: Tolerances,
    csv: Option<&CsvDir>,
) -> Result<Report, CliError> {
    if !h.is_finite() {
        return Err(CliError::Usage(format!("--h must be finite, got {h}")));
    }
    let k = parse_k(k_spec)?;
    let mut report = Report::new("lie deform-b4", tols);
    report.input("h", h);
    report.input("k", k_spec);
    report.input("classify", classify);
    report.value("k_rows", json!(k.rows()));
    let c = type_b_k_deform(&k, h)?;
    emit_constants(&c, &mut report, csv)?;
    report.residual("jacobi_residual", jacobi_residual(&c));
    if classify {
        add_classification(&c, &mut report);
    }
    Ok(report)
}

pub fn classify(
    src: ConstantsSource<'_>,
    tols: Tolerances,
    csv: Option<&CsvDir>,
) -> Result<Report, CliError> {
    let mut report = Report::new("lie classify", tols);
    let c = load_constants(&src, &mut report)?;
    if c.n() != 3 {
        return Err(CliError::Usage(format!(
            "classification needs 3 generators, got {}",
            c.n()
        )));
    }
    emit_constants(&c, &mut report, csv)?;
    report.residual("jacobi_residual", jacobi_residual(&c));
    add_classification(&c, &mut report);
    Ok(report)
}

pub fn jacobi(
    src: ConstantsSource<'_>,
    tols: Tolerances,
    csv: Option<&CsvDir>,
) -> Result<Report, CliError> {
    let mut report = Report::new("lie jacobi", tols);
    let c = load_constants(&src, &mut report)?;
    emit_constants(&c, &mut report, csv)?;
    report.residual("jacobi_residual", jacobi_residual(&c));
    Ok(report)
}
