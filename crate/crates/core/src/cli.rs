//! The `fieldmaps` command line.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::families::{Built, FamilyParams, FamilySpec};
use crate::field::{Elem, FieldSpec, DEFAULT_TABLE_CAP};
use crate::map::{bivariate_to_univariate, interpolate, io as lut, univariate_to_bivariate, BivariateMap, MapTable};
use crate::report::{analyze, AnalysisReport, Provenance};
use crate::search::{self, SearchMode};
use crate::theorems::{RunOptions, Status, WalshMode, DEFAULT_INTERPOLATION_CAP};
use crate::walsh::DEFAULT_FULL_CAP;

pub const TABLE_CAP_VAR: &str = "FIELDMAPS_TABLE_CAP";
pub const WALSH_CAP_VAR: &str = "FIELDMAPS_WALSH_CAP";

#[derive(Parser, Debug)]
#[command(name = "fieldmaps", version, about = "Image, differential and Walsh profiles of maps on finite fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Profile a map and run the theorem checks, printing a JSON report.
    Analyze {
        /// LUT file (same as --lut).
        #[arg(conflicts_with_all = ["lut", "expr", "family"])]
        file: Option<PathBuf>,
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        run: RunArgs,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run theorem checks; exits 1 if any conclusion fails.
    Verify {
        /// LUT files to check (any number).
        files: Vec<PathBuf>,
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Exhaustive or seeded random searches, one JSON object per line.
    Search {
        mode: SearchKind,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 1000)]
        samples: u64,
        /// Required for the random modes.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Build a family instance and write it as a LUT (or BIV) file.
    Family {
        id: String,
        #[command(flatten)]
        params: FamilyArgs,
        #[command(flatten)]
        basis: BasisArgs,
        /// Write the bivariate form instead of converting.
        #[arg(long)]
        biv: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the interpolating polynomial of a LUT as `e:c` terms.
    Interpolate { lut: PathBuf },
    /// Convert between bivariate (BIV) and univariate (LUT) forms.
    Convert {
        /// BIV file to convert to a LUT.
        #[arg(long, conflicts_with = "lut")]
        bivariate: Option<PathBuf>,
        /// LUT file on F_2^2m to split into a BIV file.
        #[arg(long)]
        lut: Option<PathBuf>,
        #[command(flatten)]
        basis: BasisArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SearchKind {
    MonomialExhaustive,
    QuadraticRandom,
    MinimalImageProbe,
}

#[derive(Args, Debug, Default)]
struct InputArgs {
    /// LUT file.
    #[arg(long)]
    lut: Option<PathBuf>,
    /// Expression in x, e.g. "x^3 + Tr(x^9)".
    #[arg(long, conflicts_with = "lut")]
    expr: Option<String>,
    /// Family id, e.g. gold, budaghyan-f1, min7.
    #[arg(long, conflicts_with_all = ["lut", "expr"])]
    family: Option<String>,
    /// Characteristic for --expr.
    #[arg(long, default_value_t = 2)]
    p: u32,
    /// Modulus coefficients c_0 .. c_n for --expr.
    #[arg(long, value_delimiter = ' ', num_args = 1..)]
    modulus: Option<Vec<u32>>,
    #[command(flatten)]
    params: FamilyArgs,
    #[command(flatten)]
    basis: BasisArgs,
}

#[derive(Args, Debug, Default, Clone)]
struct FamilyArgs {
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    m: Option<u32>,
    #[arg(long)]
    i: Option<u32>,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    a: Option<Elem>,
    #[arg(long)]
    alpha: Option<Elem>,
    #[arg(long)]
    beta: Option<Elem>,
    #[arg(long)]
    gamma: Option<Elem>,
}

impl From<&FamilyArgs> for FamilyParams {
    fn from(a: &FamilyArgs) -> Self {
        FamilyParams { n: a.n, m: a.m, i: a.i, k: a.k, a: a.a, alpha: a.alpha, beta: a.beta, gamma: a.gamma }
    }
}

#[derive(Args, Debug, Default, Clone, Copy)]
struct BasisArgs {
    /// First basis element of F_2^2m over F_2^m (code).
    #[arg(long, requires = "u2")]
    u1: Option<Elem>,
    #[arg(long, requires = "u1")]
    u2: Option<Elem>,
}

#[derive(Args, Debug)]
struct RunArgs {
    /// Skip Walsh spectra.
    #[arg(long)]
    no_walsh: bool,
    /// Compute only W(b, 0).
    #[arg(long, conflicts_with = "no_walsh")]
    walsh_zero_only: bool,
    /// Theorem ids: `all`, exact ids or prefixes like `ab.*`, comma separated.
    #[arg(long, default_value = "all")]
    suite: String,
}

struct Caps {
    table: usize,
    walsh: u32,
}

fn env_cap<T: std::str::FromStr>(var: &str, default: T) -> Result<T> {
    match std::env::var(var) {
        Ok(v) => v.trim().parse().map_err(|_| Error::Parse(format!("{var} must be an integer, got `{v}`"))),
        Err(_) => Ok(default),
    }
}

fn caps() -> Result<Caps> {
    Ok(Caps { table: env_cap(TABLE_CAP_VAR, DEFAULT_TABLE_CAP)?, walsh: env_cap(WALSH_CAP_VAR, DEFAULT_FULL_CAP)? })
}

fn basis_for(big: &FieldSpec, b: BasisArgs) -> (Elem, Elem) {
    match (b.u1, b.u2) {
        (Some(u1), Some(u2)) => (u1, u2),
        _ => crate::map::default_basis(big),
    }
}

fn to_univariate(bv: &BivariateMap, b: BasisArgs) -> Result<(MapTable, (Elem, Elem))> {
    let big = bv.full_field()?;
    let basis = basis_for(&big, b);
    Ok((bivariate_to_univariate(bv, &big, basis.0, basis.1)?, basis))
}

fn build_family(id: &str, params: &FamilyArgs, cap: usize) -> Result<(Built, FamilySpec, Vec<String>)> {
    let spec = FamilySpec::from_id(id, &params.into())?;
    if spec.field_degree() >= usize::BITS || 1usize << spec.field_degree() > cap {
        return Err(Error::CapExceeded { p: 2, n: spec.field_degree(), cap });
    }
    let (built, warnings) = spec.build_with_cap(cap)?;
    Ok((built, spec, warnings))
}

fn resolve(input: &InputArgs, caps: &Caps) -> Result<(MapTable, Provenance)> {
    if let Some(path) = &input.lut {
        let f = lut::read_lut(path, caps.table)?;
        let digest = f.digest();
        return Ok((f, Provenance::Lut { path: path.display().to_string(), digest }));
    }
    if let Some(expr) = &input.expr {
        let n = input.params.n.ok_or_else(|| Error::Parse("--expr needs --n".into()))?;
        let field = Arc::new(FieldSpec::with_cap(input.p, n, input.modulus.as_deref(), caps.table)?);
        let f = MapTable::from_expression(field, expr)?;
        return Ok((f, Provenance::Expression { expr: expr.clone() }));
    }
    if let Some(id) = &input.family {
        let (built, spec, warnings) = build_family(id, &input.params, caps.table)?;
        for w in &warnings {
            eprintln!("warning: {w}");
        }
        return Ok(match built {
            Built::Univariate(f) => (f, Provenance::Family { spec, basis: None, warnings }),
            Built::Bivariate(bv) => {
                let (f, basis) = to_univariate(&bv, input.basis)?;
                (f, Provenance::Family { spec, basis: Some(basis), warnings })
            }
        });
    }
    Err(Error::Parse("give one of --lut, --expr or --family".into()))
}

fn options(run: &RunArgs, caps: &Caps) -> RunOptions {
    let walsh = if run.no_walsh {
        WalshMode::Skip
    } else if run.walsh_zero_only {
        WalshMode::ZeroOnly
    } else {
        WalshMode::Full
    };
    RunOptions { walsh, walsh_cap: caps.walsh, interpolation_cap: DEFAULT_INTERPOLATION_CAP }
}

fn write_output(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

fn print_summary(label: &str, report: &AnalysisReport) {
    eprintln!("{label}: {}", report.field);
    for t in &report.theorems {
        let tag = match t.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::HypothesesNotMet => "hypotheses not met",
            Status::Inapplicable => "inapplicable",
        };
        eprintln!("  {:<32} {}", t.id, tag);
    }
}

fn execute(cli: Cli) -> Result<i32> {
    let caps = caps()?;
    match cli.command {
        Command::Analyze { file, mut input, run, out } => {
            if file.is_some() {
                input.lut = file;
            }
            let (f, prov) = resolve(&input, &caps)?;
            let report = analyze(&f, prov, &options(&run, &caps), &run.suite)?;
            let text = serde_json::to_string_pretty(&report).expect("serializable") + "\n";
            write_output(out.as_deref(), &text)?;
            Ok(0)
        }
        Command::Verify { files, input, run } => {
            let opts = options(&run, &caps);
            let mut reports = Vec::new();
            for path in &files {
                let f = lut::read_lut(path, caps.table)?;
                let prov = Provenance::Lut { path: path.display().to_string(), digest: f.digest() };
                reports.push((path.display().to_string(), analyze(&f, prov, &opts, &run.suite)?));
            }
            if files.is_empty() || input.lut.is_some() || input.expr.is_some() || input.family.is_some() {
                let (f, prov) = resolve(&input, &caps)?;
                let label = match &prov {
                    Provenance::Family { spec, .. } => spec.id(),
                    Provenance::Expression { expr } => expr.clone(),
                    Provenance::Lut { path, .. } => path.clone(),
                    Provenance::Table => "table".into(),
                };
                reports.push((label, analyze(&f, prov, &opts, &run.suite)?));
            }
            let mut failures = 0;
            for (label, r) in &reports {
                print_summary(label, r);
                failures += r.conclusion_failures().len();
            }
            eprintln!("{} input(s), {} conclusion failure(s)", reports.len(), failures);
            let all: Vec<&AnalysisReport> = reports.iter().map(|(_, r)| r).collect();
            write_output(None, &(serde_json::to_string_pretty(&all).expect("serializable") + "\n"))?;
            Ok(if failures == 0 { 0 } else { 1 })
        }
        Command::Search { mode, n, samples, seed } => {
            let need_seed = || seed.ok_or_else(|| Error::Parse("random search modes require --seed".into()));
            let mode = match mode {
                SearchKind::MonomialExhaustive => SearchMode::MonomialExhaustive { n },
                SearchKind::QuadraticRandom => SearchMode::QuadraticRandom { n, samples, seed: need_seed()? },
                SearchKind::MinimalImageProbe => SearchMode::MinimalImageProbe { n, samples, seed: need_seed()? },
            };
            let mut stdout = io::stdout().lock();
            search::run(&mode, caps.table, &mut stdout)?;
            Ok(0)
        }
        Command::Family { id, params, basis, biv, out } => {
            let (built, _, warnings) = build_family(&id, &params, caps.table)?;
            for w in &warnings {
                eprintln!("warning: {w}");
            }
            let text = match built {
                Built::Univariate(f) if !biv => lut::write_lut(&f),
                Built::Univariate(_) => return Err(Error::Unsupported(format!("`{id}` is univariate; drop --biv"))),
                Built::Bivariate(bv) if biv => lut::write_biv(&bv),
                Built::Bivariate(bv) => lut::write_lut(&to_univariate(&bv, basis)?.0),
            };
            write_output(out.as_deref(), &text)?;
            Ok(0)
        }
        Command::Interpolate { lut: path } => {
            let f = lut::read_lut(&path, caps.table)?;
            write_output(None, &format!("{}\n", interpolate(&f)))?;
            Ok(0)
        }
        Command::Convert { bivariate, lut: lut_path, basis, out } => {
            let text = if let Some(path) = bivariate {
                let bv = lut::read_biv(&path, caps.table)?;
                lut::write_lut(&to_univariate(&bv, basis)?.0)
            } else if let Some(path) = lut_path {
                let f = lut::read_lut(&path, caps.table)?;
                let big = f.field();
                if big.n() % 2 == 1 || big.p() != 2 {
                    return Err(Error::Unsupported("splitting needs p = 2 and even n".into()));
                }
                let half = FieldSpec::binary(big.n() / 2)?;
                let (u1, u2) = basis_for(big, basis);
                lut::write_biv(&univariate_to_bivariate(&f, &half, u1, u2)?)
            } else {
                return Err(Error::Parse("give --bivariate or --lut".into()));
            };
            write_output(out.as_deref(), &text)?;
            Ok(0)
        }
    }
}

/// Parses `args` and runs the command; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
