//! `angelesco`: coefficient tables, identity checks, zeros and limiting
//! densities for Laguerre–Angelesco multiple orthogonal polynomials on the
//! r-star.
//!
//! Exit codes: 0 success, 1 verification failure, 2 invalid configuration,
//! 3 insufficient precision.

mod output;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use laguerre_angelesco::asymptotics::{density_type1, density_type2_per_ray, ks_distance};
use laguerre_angelesco::jacobi_limit::{p_poly_jacobi, JacobiParams};
use laguerre_angelesco::type1::{p_poly, type1_above, type1_below, type1_diagonal};
use laguerre_angelesco::type2::{type2_above, type2_diagonal};
use laguerre_angelesco::zeros::{real_zeros_type1_kernel, real_zeros_type2, rescale_zeros};
use laguerre_angelesco::{ComplexPoly, Error, Precision, StarWeight};
use rug::Float;
use serde_json::json;

use output::{emit, fmt_f64, fmt_float, Header, Table};
use verify::Check;

#[derive(Parser)]
#[command(name = "angelesco", version, about = "Laguerre–Angelesco multiple orthogonal polynomials on the r-star")]
struct Cli {
    /// Working precision in decimal digits.
    #[arg(long, global = true, env = "ANGELESCO_PRECISION", default_value_t = 50)]
    precision: u32,
    /// Output file; stdout when omitted.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Args, Clone)]
struct Star {
    /// Number of rays.
    #[arg(long)]
    r: u32,
    /// Weight exponent, a decimal number greater than -1.
    #[arg(long, default_value = "0", allow_negative_numbers = true)]
    beta: String,
}

#[derive(Subcommand)]
enum Command {
    /// Coefficient table of a polynomial family.
    Coeffs {
        #[arg(long, value_enum)]
        family: Family,
        #[command(flatten)]
        star: Star,
        #[arg(long)]
        n: usize,
        /// Direction of the shifted multi-index (above/below families).
        #[arg(long)]
        k: Option<u32>,
        /// Jacobi parameter, a decimal number greater than -1 (jacobi-kernel only).
        #[arg(long, allow_negative_numbers = true)]
        alpha: Option<String>,
    },
    /// Residual checks of the defining and structural identities.
    Verify {
        #[arg(long, value_enum)]
        check: Check,
        #[command(flatten)]
        star: Star,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<u32>,
    },
    /// Limiting zero density sampled at grid midpoints of [0, 1].
    Density {
        #[arg(long = "type", value_enum)]
        kind: DensityType,
        #[arg(long)]
        r: u32,
        #[arg(long, default_value_t = 200)]
        grid: usize,
    },
    /// Real zeros, optionally rescaled and compared with the limiting law.
    Zeros {
        #[arg(long, value_enum)]
        family: ZeroFamily,
        #[command(flatten)]
        star: Star,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        rescale: bool,
        /// Kolmogorov–Smirnov distance to the limiting distribution.
        #[arg(long)]
        ks: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    Type1Diagonal,
    Type1Above,
    Type1Below,
    Type2Diagonal,
    Type2Above,
    PKernel,
    JacobiKernel,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum DensityType {
    #[value(name = "typeI")]
    TypeI,
    #[value(name = "typeII-ray")]
    TypeIIRay,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ZeroFamily {
    PKernel,
    Type2,
}

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Precision(String),
    Failed(String),
    Io(std::io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(_) | Error::Unsupported(_) | Error::Usage(_) => CliError::Config(e.to_string()),
            Error::Precision(_) => CliError::Precision(e.to_string()),
            Error::Consistency(_) => CliError::Failed(e.to_string()),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Config(_) | CliError::Io(_) => 2,
            CliError::Precision(_) => 3,
        }
    }
}

struct Ctx {
    precision: Precision,
    format: Format,
    output: Option<PathBuf>,
    argv: Vec<String>,
}

impl Ctx {
    fn header(&self) -> Header {
        Header { argv: self.argv.clone(), precision: self.precision.digits(), ..Default::default() }
    }

    fn weight(&self, star: &Star) -> Result<StarWeight, CliError> {
        Ok(StarWeight::from_decimal(star.r, &star.beta, self.precision)?)
    }

    fn write(&self, text: &str) -> Result<(), CliError> {
        emit(text, self.output.as_deref()).map_err(CliError::Io)
    }
}

fn coeff_rows(label: &str, p: &ComplexPoly, digits: u32, rows: &mut Vec<Vec<String>>) {
    for (power, c) in p.coeffs().iter().enumerate() {
        if c.real().is_zero() && c.imag().is_zero() {
            continue;
        }
        rows.push(vec![
            label.to_string(),
            power.to_string(),
            fmt_float(c.real(), digits),
            fmt_float(c.imag(), digits),
        ]);
    }
}

fn need_k(k: Option<u32>, family: &str) -> Result<u32, CliError> {
    k.ok_or_else(|| CliError::Config(format!("--k is required for the {family} family")))
}

fn cmd_coeffs(ctx: &Ctx, family: Family, star: &Star, n: usize, k: Option<u32>, alpha: Option<&str>) -> Result<(), CliError> {
    let w = ctx.weight(star)?;
    let digits = ctx.precision.digits();
    let mut rows = Vec::new();
    let rays = |polys: &[ComplexPoly], rows: &mut Vec<Vec<String>>| {
        for (j, p) in polys.iter().enumerate() {
            coeff_rows(&(j + 1).to_string(), p, digits, rows);
        }
    };
    let mut header = ctx.header();
    match family {
        Family::Type1Diagonal => rays(&type1_diagonal(n, &w)?.polys, &mut rows),
        Family::Type1Above => rays(&type1_above(n, need_k(k, "type1-above")?, &w)?.polys, &mut rows),
        Family::Type1Below => {
            if w.r() < 2 {
                return Err(CliError::Config("below-diagonal type I vectors need r > 1".into()));
            }
            rays(&type1_below(n, need_k(k, "type1-below")?, &w)?.polys, &mut rows)
        }
        Family::Type2Diagonal => coeff_rows("type2", &type2_diagonal(n, &w)?.poly, digits, &mut rows),
        Family::Type2Above => coeff_rows("type2", &type2_above(n, need_k(k, "type2-above")?, &w)?.poly, digits, &mut rows),
        Family::PKernel => coeff_rows("p", &p_poly(n, &w)?, digits, &mut rows),
        Family::JacobiKernel => {
            let a = alpha.ok_or_else(|| CliError::Config("--alpha is required for the jacobi-kernel family".into()))?;
            let parsed = Float::parse(a.trim()).map_err(|e| CliError::Config(format!("cannot parse alpha {a:?}: {e}")))?;
            let jp = JacobiParams::from_float(Float::with_val(w.bits(), parsed), &w)?;
            header.extra.push(("alpha".into(), a.trim().to_string()));
            coeff_rows("jacobi", &p_poly_jacobi(n, &jp)?, digits, &mut rows);
        }
    }
    header.r = Some(w.r());
    header.beta = Some(w.beta_text());
    header.n = Some(n);
    header.k = k;
    header.extra.insert(0, ("family".into(), family.to_possible_value().unwrap().get_name().to_string()));
    let table = Table { header, columns: vec!["ray_or_family", "power", "re", "im"], rows, integer_columns: vec!["power"] };
    ctx.write(&table.render(ctx.format))
}

fn cmd_verify(ctx: &Ctx, check: Check, star: &Star, n: Option<usize>, k: Option<u32>) -> Result<(), CliError> {
    let w = ctx.weight(star)?;
    let instances = verify::run(check, &w, n, k)?;
    let digits = ctx.precision.digits();
    let all = instances.iter().all(|i| i.pass);
    let mut header = ctx.header();
    header.r = Some(w.r());
    header.beta = Some(w.beta_text());
    header.n = n;
    header.k = k;
    let name = check.to_possible_value().unwrap().get_name().to_string();
    header.extra.push(("check".into(), name));
    header.extra.push(("pass".into(), all.to_string()));
    let text = match ctx.format {
        Format::Csv => {
            let rows = instances
                .iter()
                .map(|i| {
                    vec![i.name.clone(), fmt_float(&i.residual, digits), fmt_float(&i.tolerance, digits), i.pass.to_string()]
                })
                .collect();
            Table { header, columns: vec!["instance", "residual", "tolerance", "pass"], rows, integer_columns: vec![] }
                .render(Format::Csv)
        }
        Format::Json => {
            let rows = instances
                .iter()
                .map(|i| {
                    vec![i.name.clone(), fmt_float(&i.residual, digits), fmt_float(&i.tolerance, digits), i.pass.to_string()]
                })
                .collect();
            let rendered = Table { header, columns: vec!["instance", "residual", "tolerance", "pass"], rows, integer_columns: vec![] }
                .render(Format::Json);
            let mut v: serde_json::Value = serde_json::from_str(&rendered).expect("valid json");
            if let Some(rows) = v["rows"].as_array_mut() {
                for row in rows {
                    row["pass"] = json!(row["pass"] == "true");
                }
            }
            v["pass"] = json!(all);
            let mut s = serde_json::to_string_pretty(&v).expect("serializable");
            s.push('\n');
            s
        }
    };
    ctx.write(&text)?;
    if all {
        Ok(())
    } else {
        let failed: Vec<_> = instances.iter().filter(|i| !i.pass).map(|i| i.name.as_str()).collect();
        Err(CliError::Failed(format!("failed: {}", failed.join("; "))))
    }
}

fn cmd_density(ctx: &Ctx, kind: DensityType, r: u32, grid: usize) -> Result<(), CliError> {
    if grid < 2 {
        return Err(CliError::Config("--grid must be at least 2".into()));
    }
    if r == 0 {
        return Err(CliError::Config("--r must be at least 1".into()));
    }
    let bits = ctx.precision.bits();
    let digits = ctx.precision.digits();
    let rows = (0..grid)
        .map(|i| {
            let x = Float::with_val(bits, 2 * i as u64 + 1) / (2 * grid as u64);
            let u = match kind {
                DensityType::TypeI => density_type1(&x, r)?,
                DensityType::TypeIIRay => density_type2_per_ray(&x, r)?,
            };
            Ok(vec![fmt_float(&x, digits), fmt_float(&u, digits)])
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let mut header = ctx.header();
    header.r = Some(r);
    header.extra.push(("type".into(), kind.to_possible_value().unwrap().get_name().to_string()));
    header.extra.push(("grid".into(), grid.to_string()));
    let table = Table { header, columns: vec!["x", "u"], rows, integer_columns: vec![] };
    ctx.write(&table.render(ctx.format))
}

fn cmd_zeros(ctx: &Ctx, family: ZeroFamily, star: &Star, n: usize, rescale: bool, ks: bool) -> Result<(), CliError> {
    let w = ctx.weight(star)?;
    let digits = ctx.precision.digits();
    let zs = match family {
        ZeroFamily::PKernel => real_zeros_type1_kernel(n, &w)?,
        ZeroFamily::Type2 => real_zeros_type2(n, &w)?,
    };
    let scaled = if rescale || ks { Some(rescale_zeros(&zs, n, w.r())?) } else { None };
    let mut header = ctx.header();
    header.r = Some(w.r());
    header.beta = Some(w.beta_text());
    header.n = Some(n);
    header.extra.push(("family".into(), family.to_possible_value().unwrap().get_name().to_string()));
    header.extra.push(("count".into(), zs.zeros.len().to_string()));
    if ks {
        let d = ks_distance(scaled.as_ref().expect("rescaled above"), w.r())?;
        header.extra.push(("ks".into(), fmt_f64(d)));
    }
    let mut columns = vec!["index", "zero"];
    if rescale {
        columns.push("rescaled");
    }
    let rows = zs
        .zeros
        .iter()
        .enumerate()
        .map(|(i, z)| {
            let mut row = vec![(i + 1).to_string(), fmt_float(z, digits)];
            if rescale {
                row.push(fmt_float(&scaled.as_ref().expect("rescaled above").zeros[i], digits));
            }
            row
        })
        .collect();
    let table = Table { header, columns, rows, integer_columns: vec!["index"] };
    ctx.write(&table.render(ctx.format))
}

fn run(cli: Cli) -> Result<(), CliError> {
    let precision = Precision::new(cli.precision)?;
    let mut argv = vec!["angelesco".to_string()];
    argv.extend(std::env::args().skip(1));
    let ctx = Ctx { precision, format: cli.format, output: cli.output, argv };
    match &cli.command {
        Command::Coeffs { family, star, n, k, alpha } => cmd_coeffs(&ctx, *family, star, *n, *k, alpha.as_deref()),
        Command::Verify { check, star, n, k } => cmd_verify(&ctx, *check, star, *n, *k),
        Command::Density { kind, r, grid } => cmd_density(&ctx, *kind, *r, *grid),
        Command::Zeros { family, star, n, rescale, ks } => cmd_zeros(&ctx, *family, star, *n, *rescale, *ks),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let digits = cli.precision;
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            match &e {
                CliError::Config(m) => eprintln!("angelesco: invalid configuration: {m}"),
                CliError::Failed(m) => eprintln!("angelesco: verification failed: {m}"),
                CliError::Io(err) => eprintln!("angelesco: cannot write output: {err}"),
                CliError::Precision(m) => eprintln!(
                    "angelesco: {m}; retry with a higher --precision (for example --precision {})",
                    2 * digits.max(25)
                ),
            }
            ExitCode::from(e.exit_code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Failed(String::new()).exit_code(), 1);
        assert_eq!(CliError::from(Error::Domain(String::new())).exit_code(), 2);
        assert_eq!(CliError::from(Error::Unsupported(String::new())).exit_code(), 2);
        assert_eq!(CliError::from(Error::Precision(String::new())).exit_code(), 3);
        assert_eq!(CliError::from(Error::Consistency(String::new())).exit_code(), 1);
    }
}
