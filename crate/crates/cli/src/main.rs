//! `starprod` command-line front end: verification suites and demos that
//! emit versioned JSON reports and optional CSV side files.

mod error;
mod lie_cmd;
mod report;
mod scheme_cmd;
mod tomo_cmd;

use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand};

use error::CliError;
use report::{Report, Tolerances};

#[derive(Parser, Debug)]
#[command(
    name = "starprod",
    version,
    about = "Star-product, Lie-structure and tomography checks"
)]
struct Cli {
    /// Write the JSON report here as well as to stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Directory for CSV side outputs.
    #[arg(long, global = true)]
    csv: Option<PathBuf>,
    /// Override a tolerance, `name=value`. Repeatable.
    #[arg(long = "tol", global = true, value_name = "NAME=VALUE")]
    tol: Vec<String>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Pairing, associativity, Jacobi, round-trip and mean-value checks for a scheme.
    VerifyScheme {
        /// Builtin name (u2, su2sb2, gl2half) or a scheme JSON file.
        scheme: String,
        /// Extra deformation matrix (matrix JSON) for the K-deformed kernels.
        #[arg(long)]
        k: Option<PathBuf>,
    },
    /// Structure constants, deformations and classification of 3D algebras.
    Lie {
        #[command(subcommand)]
        command: LieCommand,
    },
    /// Tomographic star products on a phase-space grid.
    Tomo {
        #[command(subcommand)]
        command: TomoCommand,
    },
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("source").required(true).args(["params", "constants"])))]
struct ConstantsArgs {
    /// Casimir-form parameters `h,a,b,c`.
    #[arg(long, allow_hyphen_values = true)]
    params: Option<String>,
    /// Structure constants JSON file.
    #[arg(long)]
    constants: Option<PathBuf>,
}

impl ConstantsArgs {
    fn source(&self) -> lie_cmd::ConstantsSource<'_> {
        match (&self.params, &self.constants) {
            (Some(p), _) => lie_cmd::ConstantsSource::Params(p),
            (None, Some(c)) => lie_cmd::ConstantsSource::File(c),
            (None, None) => unreachable!("clap requires one source"),
        }
    }
}

#[derive(Subcommand, Debug)]
enum LieCommand {
    /// K-deformed so(3) bracket.
    DeformSo3 {
        /// `diag:a,b,c`, `sym:l1,l2,l3,m1,m2,m3`, `rows:<9 entries>` or a JSON file.
        #[arg(long, allow_hyphen_values = true)]
        k: String,
        #[arg(long)]
        classify: bool,
    },
    /// K-deformed type-B algebra with parameter h.
    DeformB4 {
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        h: f64,
        /// `tri:alpha,beta,gamma,epsilon,phi,zeta,iota`, `diag:`, `rows:` or a JSON file.
        #[arg(long, allow_hyphen_values = true)]
        k: String,
        #[arg(long)]
        classify: bool,
    },
    /// Classify a 3D real Lie algebra.
    Classify(ConstantsArgs),
    /// Jacobi residual of structure constants.
    Jacobi(ConstantsArgs),
}

#[derive(Subcommand, Debug)]
enum TomoCommand {
    /// Radon round trip and star-product comparisons on two Gaussians.
    Demo {
        #[arg(long, default_value_t = 64)]
        n: usize,
        #[arg(long = "L", default_value_t = 8.0)]
        half_width: f64,
        #[arg(long, default_value_t = 1.0)]
        hbar: f64,
    },
    /// Convergence of the antisymmetrized quantum product to the Poisson product.
    Limit {
        #[arg(long, default_value_t = 64)]
        n: usize,
        #[arg(long = "L", default_value_t = 8.0)]
        half_width: f64,
        #[arg(long, default_value = "0.1,0.01,0.001")]
        hbars: String,
    },
    /// Tomographic mean value against the phase-space overlap.
    Mean {
        #[arg(long, default_value_t = 64)]
        n: usize,
        #[arg(long = "L", default_value_t = 8.0)]
        half_width: f64,
        #[arg(long, default_value_t = 1.0)]
        hbar: f64,
        #[arg(long, default_value_t = 0.5, allow_hyphen_values = true)]
        q0: f64,
        #[arg(long, default_value_t = -0.3, allow_hyphen_values = true)]
        p0: f64,
    },
}

pub(crate) fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

pub(crate) struct CsvDir(PathBuf);

impl CsvDir {
    fn create(path: &Path) -> Result<Self, CliError> {
        fs::create_dir_all(path).map_err(|e| CliError::io(path, e))?;
        Ok(Self(path.to_path_buf()))
    }

    pub(crate) fn write(
        &self,
        name: &str,
        body: impl FnOnce(&mut BufWriter<fs::File>) -> Result<(), CliError>,
    ) -> Result<(), CliError> {
        let path = self.0.join(name);
        let file = fs::File::create(&path).map_err(|e| CliError::io(&path, e))?;
        let mut out = BufWriter::new(file);
        body(&mut out)?;
        out.flush().map_err(|e| CliError::io(&path, e))
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Core(starprod::Error::from(e))
    }
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    let tols = Tolerances::with_overrides(&cli.tol)?;
    let csv = cli.csv.as_deref().map(CsvDir::create).transpose()?;
    let csv = csv.as_ref();
    let mut report = match &cli.command {
        Command::VerifyScheme { scheme, k } => {
            scheme_cmd::run(scheme, k.as_ref(), cli.seed, tols, csv)?
        }
        Command::Lie { command } => match command {
            LieCommand::DeformSo3 { k, classify } => lie_cmd::deform_so3(k, *classify, tols, csv)?,
            LieCommand::DeformB4 { h, k, classify } => {
                lie_cmd::deform_b4(*h, k, *classify, tols, csv)?
            }
            LieCommand::Classify(args) => lie_cmd::classify(args.source(), tols, csv)?,
            LieCommand::Jacobi(args) => lie_cmd::jacobi(args.source(), tols, csv)?,
        },
        Command::Tomo { command } => match command {
            TomoCommand::Demo {
                n,
                half_width,
                hbar,
            } => tomo_cmd::demo(*n, *half_width, *hbar, tols, csv)?,
            TomoCommand::Limit {
                n,
                half_width,
                hbars,
            } => tomo_cmd::limit(*n, *half_width, hbars, tols, csv)?,
            TomoCommand::Mean {
                n,
                half_width,
                hbar,
                q0,
                p0,
            } => tomo_cmd::mean(*n, *half_width, *hbar, *q0, *p0, tols, csv)?,
        },
    };
    if let Some(dir) = &cli.csv {
        report.input("csv", dir.display().to_string());
    }
    Ok(report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let text = serde_json::to_string_pretty(&report.to_json()).expect("report serializes");
    if let Some(path) = &cli.out {
        if let Err(e) = fs::write(path, format!("{text}\n")) {
            eprintln!("error: {}", CliError::io(path, e));
            return ExitCode::from(2);
        }
    }
    println!("{text}");
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
