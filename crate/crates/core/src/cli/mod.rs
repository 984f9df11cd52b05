//! The `kernelforge` command line. Every command prints one JSON document
//! (`--format csv` is accepted for coefficient tables) and exits with 0 on
//! success, 1 when a verification suite fails and 2 on usage or validation
//! errors.

use std::io::Write;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::domains::{DomainPoint, DomainType};
use crate::error::{Error, Result};
use crate::kernels::{
    chi_polynomial, derived_kernel_with, hua_ratio, inflated_kernel_with, virtual_decomposition, PoleConvention,
};
use crate::polyalg::{format_rational, int, parse_rational, Rational};
use crate::verify::{
    check_homogeneous_projection, check_hua_mc, check_inflation_ball, check_reproducing_disk, check_selberg_beta,
    check_selberg_quadrature, check_series_vs_closed, Report,
};

pub const DEFAULT_SEED: u64 = 20_240_517;

#[derive(Debug, Parser)]
#[command(name = "kernelforge", version, about = "Weighted, virtual and inflated Bergman kernels of bounded symmetric domains")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rank, multiplicities, genus and dimension.
    Invariants {
        /// I:m,n | II:n | III:n | IV:n | V | VI
        domain: String,
    },
    /// The Hua polynomial chi(s).
    Chi {
        domain: String,
        #[arg(long)]
        expanded: bool,
        #[arg(long)]
        factored: bool,
        #[arg(long)]
        latex: bool,
    },
    /// chi(0)/chi(s), exactly.
    Hua {
        domain: String,
        #[arg(long, allow_hyphen_values = true)]
        s: String,
    },
    /// Pole coefficients of the virtual kernel generating function, or its
    /// scaled derivative `F^(m)(t)/m!`.
    Vk {
        domain: String,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        #[arg(long, conflicts_with = "eval")]
        coeffs: bool,
        /// t (complex) and m.
        #[arg(long, num_args = 2, value_names = ["T", "M"], allow_hyphen_values = true)]
        eval: Option<Vec<String>>,
        /// Use the exponent -j instead of -(j+1); does not match the series.
        #[arg(long)]
        as_printed: bool,
    },
    /// Derived kernel L_m(z, w; r), or the inflated-domain kernel when fiber
    /// coordinates are given.
    Kernel(KernelArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct KernelArgs {
    domain: String,
    #[arg(long, allow_hyphen_values = true)]
    mu: String,
    /// Derivative order; defaults to the fiber dimension.
    #[arg(long)]
    m: Option<u32>,
    /// Base point: comma-separated complex entries, row-major.
    #[arg(long, allow_hyphen_values = true)]
    z: String,
    #[arg(long, allow_hyphen_values = true)]
    w: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    zfiber: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    wfiber: Option<String>,
    /// Generating-function variable (without fibers); defaults to 0.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "zfiber")]
    r: Option<String>,
    /// Volume of the base domain; otherwise exact for balls, normalized to one elsewhere.
    #[arg(long)]
    volume: Option<f64>,
    #[arg(long)]
    as_printed: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    HuaMc,
    Selberg,
    ReproducingDisk,
    InflationBall,
    Series,
    Projection,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    suite: Suite,
    #[arg(long, env = "KERNELFORGE_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = 1_000_000)]
    samples: u64,
    /// Restrict hua-mc or series to one domain.
    #[arg(long)]
    domain: Option<String>,
    /// Exponent for hua-mc.
    #[arg(long, allow_hyphen_values = true)]
    s: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<String>,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    m: Option<u32>,
    #[arg(long)]
    rho: Option<f64>,
    #[arg(long)]
    degree: Option<u32>,
    #[arg(long)]
    as_printed: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Exact,
    Float,
    MonteCarlo,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OutputRecord {
    pub command: String,
    pub params: Map<String, Value>,
    pub result: Value,
    pub provenance: Provenance,
}

enum Output {
    Record { record: OutputRecord, pass: bool },
    Csv(String),
}

fn parse_domain(text: &str) -> Result<DomainType> {
    text.parse()
}

fn parse_complex(text: &str) -> Result<Complex64> {
    let t = text.trim();
    Complex64::from_str(t).map_err(|_| Error::Parse(format!("not a complex number: {t:?}")))
}

fn parse_complex_list(text: &str) -> Result<Vec<Complex64>> {
    text.split(',').map(parse_complex).collect()
}

fn convention(as_printed: bool) -> PoleConvention {
    if as_printed {
        PoleConvention::AsPrinted
    } else {
        PoleConvention::Shifted
    }
}

fn params(pairs: &[(&str, Value)]) -> Map<String, Value> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn rationals(qs: &[Rational]) -> Vec<String> {
    qs.iter().map(format_rational).collect()
}

fn record(command: &str, params: Map<String, Value>, result: Value, provenance: Provenance) -> Output {
    Output::Record { record: OutputRecord { command: command.into(), params, result, provenance }, pass: true }
}

fn csv_table(header: &str, rows: &[String]) -> String {
    let mut out = format!("{header}\n");
    for (i, r) in rows.iter().enumerate() {
        out.push_str(&format!("{i},{r}\n"));
    }
    out
}

fn cmd_chi(domain: &str, expanded: bool, factored: bool, latex: bool, format: Format) -> Result<Output> {
    let d = parse_domain(domain)?;
    let chi = chi_polynomial(d)?;
    if format == Format::Csv {
        return Ok(Output::Csv(csv_table("degree,coefficient", &rationals(chi.expanded().coeffs()))));
    }
    let mut result = Map::new();
    if factored || !(expanded || latex) {
        result.insert("factored".into(), json!(chi.factored().display_in("s")));
    }
    if expanded {
        result.insert("expanded".into(), json!(chi.expanded().display_in("s")));
        result.insert("coefficients".into(), json!(rationals(chi.expanded().coeffs())));
    }
    if latex {
        result.insert("latex".into(), json!(chi.factored().latex_in("s")));
    }
    Ok(record("chi", params(&[("domain", json!(d.to_string()))]), Value::Object(result), Provenance::Exact))
}

fn cmd_vk(
    domain: &str,
    mu: &str,
    eval: Option<&[String]>,
    as_printed: bool,
    format: Format,
) -> Result<Output> {
    let d = parse_domain(domain)?;
    let mu = parse_rational(mu)?;
    let vk = virtual_decomposition(d, &mu)?;
    let base = [("domain", json!(d.to_string())), ("mu", json!(format_rational(&mu)))];
    match eval {
        Some([t, m]) => {
            if format == Format::Csv {
                return Err(Error::Parameter("csv output is only available for coefficient tables".into()));
            }
            let t = parse_complex(t)?;
            let m: u32 = m.trim().parse().map_err(|_| Error::Parse(format!("m must be a non-negative integer, got {m:?}")))?;
            let conv = convention(as_printed);
            let v = vk.f_eval_with(t, m, conv)?;
            let mut p = params(&base);
            p.insert("t".into(), json!({ "re": t.re, "im": t.im }));
            p.insert("m".into(), json!(m));
            p.insert("convention".into(), json!(conv));
            Ok(record("vk", p, json!({ "value": { "re": v.re, "im": v.im } }), Provenance::Float))
        }
        Some(_) => Err(Error::Parameter("--eval takes t and m".into())),
        None => {
            let coeffs = rationals(vk.coeffs());
            if format == Format::Csv {
                return Ok(Output::Csv(csv_table("j,c_j", &coeffs)));
            }
            Ok(record("vk", params(&base), json!({ "coeffs": coeffs }), Provenance::Exact))
        }
    }
}

fn cmd_kernel(a: &KernelArgs) -> Result<Output> {
    let d = parse_domain(&a.domain)?;
    let mu = parse_rational(&a.mu)?;
    let vk = virtual_decomposition(d, &mu)?;
    let z = DomainPoint::from_entries(d, &parse_complex_list(&a.z)?)?;
    let w = match &a.w {
        Some(text) => DomainPoint::from_entries(d, &parse_complex_list(text)?)?,
        None => z.clone(),
    };
    let conv = convention(a.as_printed);
    let mut p = params(&[
        ("domain", json!(d.to_string())),
        ("mu", json!(format_rational(&mu))),
        ("z", json!(a.z)),
        ("w", json!(a.w.clone().unwrap_or_else(|| a.z.clone()))),
        ("convention", json!(conv)),
    ]);
    let value = match &a.zfiber {
        Some(zf) => {
            let zf = parse_complex_list(zf)?;
            let wf = match &a.wfiber {
                Some(text) => parse_complex_list(text)?,
                None => zf.clone(),
            };
            if let Some(m) = a.m {
                if m as usize != zf.len() {
                    return Err(Error::Shape(format!("--m {m} does not match the fiber dimension {}", zf.len())));
                }
            }
            p.insert("m".into(), json!(zf.len()));
            p.insert("zfiber".into(), json!(a.zfiber));
            p.insert("wfiber".into(), json!(a.wfiber.clone().or_else(|| a.zfiber.clone())));
            inflated_kernel_with(&vk, &z, &zf, &w, &wf, a.volume, conv)?
        }
        None => {
            if a.wfiber.is_some() {
                return Err(Error::Parameter("--wfiber needs --zfiber".into()));
            }
            let m = a.m.unwrap_or(0);
            let r = match &a.r {
                Some(text) => parse_complex(text)?,
                None => Complex64::new(0.0, 0.0),
            };
            p.insert("m".into(), json!(m));
            p.insert("r".into(), json!({ "re": r.re, "im": r.im }));
            derived_kernel_with(&vk, m, &z, &w, r, a.volume, conv)?
        }
    };
    if let Some(v) = a.volume {
        p.insert("volume".into(), json!(v));
    }
    Ok(record("kernel", p, serde_json::to_value(value).expect("kernel values serialize"), Provenance::Float))
}

const MC_GRID: [&str; 5] = ["I:1,1", "I:2,2", "II:2", "III:2", "IV:3"];
const MC_EXPONENTS: [f64; 3] = [0.5, 1.0, 2.0];
pub const SELBERG_TRIPLES: [(f64, f64, f64); 5] =
    [(1.0, 1.0, 1.0), (2.0, 1.0, 1.0), (2.0, 2.0, 0.5), (3.0, 2.0, 1.5), (1.0, 3.0, 2.0)];

fn cmd_verify(a: &VerifyArgs) -> Result<Output> {
    let mut p = params(&[("suite", json!(a.suite.to_possible_value().map(|v| v.get_name().to_string())))]);
    let mut reports: Vec<Report> = Vec::new();
    let mut provenance = Provenance::Float;
    match a.suite {
        Suite::HuaMc => {
            provenance = Provenance::MonteCarlo;
            p.insert("seed".into(), json!(a.seed));
            p.insert("samples".into(), json!(a.samples));
            let domains: Vec<DomainType> = match &a.domain {
                Some(text) => vec![parse_domain(text)?],
                None => MC_GRID.iter().map(|s| s.parse().expect("grid labels parse")).collect(),
            };
            let exponents: Vec<f64> = a.s.map_or_else(|| MC_EXPONENTS.to_vec(), |s| vec![s]);
            for d in domains {
                for &s in &exponents {
                    reports.push(check_hua_mc(d, s, a.samples, a.seed)?);
                }
            }
        }
        Suite::Selberg => {
            p.insert("seed".into(), json!(a.seed));
            reports.push(check_selberg_beta(20, a.seed)?);
            reports.push(check_selberg_quadrature(&SELBERG_TRIPLES, 64)?);
        }
        Suite::ReproducingDisk => {
            let degree = a.degree.unwrap_or(3);
            p.insert("degree".into(), json!(degree));
            let mus: Vec<Rational> = match &a.mu {
                Some(text) => vec![parse_rational(text)?],
                None => (0..=2).map(int).collect(),
            };
            for mu in &mus {
                reports.push(check_reproducing_disk(mu, degree)?);
            }
        }
        Suite::InflationBall => {
            p.insert("seed".into(), json!(a.seed));
            let ns: Vec<u32> = a.n.map_or_else(|| (1..=3).collect(), |n| vec![n]);
            let ms: Vec<u32> = a.m.map_or_else(|| (1..=3).collect(), |m| vec![m]);
            for &n in &ns {
                for &m in &ms {
                    reports.push(check_inflation_ball(n, m, a.seed)?);
                }
            }
        }
        Suite::Series => {
            let d = parse_domain(a.domain.as_deref().unwrap_or("I:1,1"))?;
            let mu = parse_rational(a.mu.as_deref().unwrap_or("1"))?;
            let ts = [
                Complex64::new(0.5, 0.0),
                Complex64::new(-0.3, 0.0),
                Complex64::new(0.2, 0.4),
                Complex64::new(0.8, 0.0),
            ];
            let ms: Vec<u32> = a.m.map_or_else(|| (0..=3).collect(), |m| vec![m]);
            reports.push(check_series_vs_closed(d, &mu, &ts, &ms, convention(a.as_printed))?);
        }
        Suite::Projection => {
            let m = a.m.unwrap_or(2);
            let rho = a.rho.unwrap_or(2.0);
            reports.push(check_homogeneous_projection(m, rho)?);
        }
    }
    let pass = reports.iter().all(|r| r.pass);
    let result = json!({ "pass": pass, "reports": reports });
    Ok(Output::Record {
        record: OutputRecord { command: "verify".into(), params: p, result, provenance },
        pass,
    })
}

fn dispatch(cli: &Cli) -> Result<Output> {
    let format = cli.format;
    let csv_unsupported = || Err(Error::Parameter("csv output is only available for coefficient tables".into()));
    match &cli.command {
        Command::Invariants { domain } => {
            if format == Format::Csv {
                return csv_unsupported();
            }
            let d = parse_domain(domain)?;
            let inv = serde_json::to_value(d.invariants()).expect("invariants serialize");
            Ok(record("invariants", params(&[("domain", json!(d.to_string()))]), inv, Provenance::Exact))
        }
        Command::Chi { domain, expanded, factored, latex } => cmd_chi(domain, *expanded, *factored, *latex, format),
        Command::Hua { domain, s } => {
            if format == Format::Csv {
                return csv_unsupported();
            }
            let d = parse_domain(domain)?;
            let s = parse_rational(s)?;
            let value = hua_ratio(d, &s)?;
            Ok(record(
                "hua",
                params(&[("domain", json!(d.to_string())), ("s", json!(format_rational(&s)))]),
                json!({ "value": format_rational(&value) }),
                Provenance::Exact,
            ))
        }
        Command::Vk { domain, mu, coeffs: _, eval, as_printed } => {
            cmd_vk(domain, mu, eval.as_deref(), *as_printed, format)
        }
        Command::Kernel(a) => {
            if format == Format::Csv {
                return csv_unsupported();
            }
            cmd_kernel(a)
        }
        Command::Verify(a) => {
            if format == Format::Csv {
                return csv_unsupported();
            }
            cmd_verify(a)
        }
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(Output::Record { record, pass }) => {
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&record).expect("records serialize"));
            if pass {
                0
            } else {
                1
            }
        }
        Ok(Output::Csv(table)) => {
            let _ = write!(out, "{table}");
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}
