//! Command-line front end.
//!
//! Exit codes: 0 success, 1 mathematical/domain failure (including a
//! certificate that does not hold), 2 I/O or malformed input, 64 usage.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::analyzer::{candidate_parameters, constant_modulus_scan, parse_values};
use crate::codes::{
    certify_gram, design_strength, gram_from_embedded, gram_from_lattice, quadratic_bound,
    CodeReport, GramView, DEFAULT_DESIGN_T_MAX,
};
use crate::embedding::{build_code, float_export, EmbeddedCode};
use crate::error::{Error, Result};
use crate::exact::{format_rational, parse_rational, Rational};
use crate::harmonics::{gegenbauer, harmonic_dimension};
use crate::lattice::{generate_e8_roots, LatticeCode};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_IO: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

/// Environment fallback for `--threads`.
pub const THREADS_ENV: &str = "HARMONIC_CODES_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "harmonic-codes",
    version,
    about = "Spherical codes in spaces of spherical harmonics"
)]
pub struct Cli {
    /// Worker threads for Gram computation (output does not depend on it).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the 240 E8 roots in the code file format.
    Roots {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dimension of the degree-k harmonic space on S^d.
    Dim {
        #[arg(short = 'd')]
        d: u32,
        #[arg(short = 'k')]
        k: u32,
    },
    /// Coefficients of the normalized Gegenbauer polynomial, constant term first.
    Gegenbauer {
        #[arg(short = 'd')]
        d: u32,
        #[arg(short = 'k')]
        k: u32,
        /// Evaluate at this rational instead of printing coefficients.
        #[arg(long, allow_hyphen_values = true)]
        at: Option<String>,
    },
    /// Embed an antipodal code into degree-2 harmonics.
    Build {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Exact)]
        format: Format,
        /// Print the certificate report and fail when it does not hold.
        #[arg(long)]
        certify: bool,
        #[command(flatten)]
        report: ReportArgs,
    },
    /// Certify an embedded code (from a code file) or a Gram file.
    Certify {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        report: ReportArgs,
    },
    /// Lower bound on the coherence of n antipodal points in R^dim.
    Bound {
        #[arg(short = 'n')]
        n: usize,
        #[arg(long)]
        dim: usize,
    },
    /// Design strength via Gegenbauer moment sums.
    Design {
        #[command(flatten)]
        source: Source,
        /// Check the code file itself on S^d instead of its embedding.
        #[arg(long, conflicts_with = "gram")]
        lattice: bool,
        #[arg(long, default_value_t = DEFAULT_DESIGN_T_MAX)]
        t_max: u32,
    },
    /// Constant-modulus scan of Gegenbauer images of a spectrum file.
    Scan {
        #[arg(long)]
        values: PathBuf,
        #[arg(short = 'd')]
        d: u32,
        #[arg(short = 'k')]
        k: u32,
        /// Upper end of the degree range (defaults to k).
        #[arg(long)]
        k_max: Option<u32>,
        /// Also report candidate parameters for this many points.
        #[arg(short = 'n')]
        n: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Export the embedded code as an exact Gram or float coordinates.
    Export {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, conflicts_with = "float")]
        exact: bool,
        #[arg(long)]
        float: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Exact,
    Float,
}

#[derive(Debug, Args)]
pub struct Source {
    /// Code file; the code is embedded before checking.
    #[arg(long = "in", required_unless_present = "gram", conflicts_with_all = ["gram", "dim"])]
    pub input: Option<PathBuf>,
    /// Exact Gram file (requires --dim).
    #[arg(long, requires = "dim")]
    pub gram: Option<PathBuf>,
    /// Ambient dimension of the vectors behind a Gram file.
    #[arg(long, requires = "gram")]
    pub dim: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    #[arg(long)]
    pub json: bool,
    #[arg(long, default_value_t = DEFAULT_DESIGN_T_MAX)]
    pub t_max: u32,
    /// Also require at least this design strength.
    #[arg(long)]
    pub min_strength: Option<u32>,
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return EXIT_USAGE;
            }
            let _ = write!(out, "{}", e.render());
            return EXIT_OK;
        }
    };
    let threads = match resolve_threads(cli.threads) {
        Ok(t) => t,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(threads.unwrap_or(0))
        .build()
    {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let mut buf = Vec::new();
    let result = pool.install(|| execute(&cli.command, &mut buf));
    if let Err(e) = out.write_all(&buf).and_then(|_| out.flush()) {
        let _ = writeln!(err, "error: {e}");
        return EXIT_IO;
    }
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_io() {
                EXIT_IO
            } else {
                EXIT_DOMAIN
            }
        }
    }
}

fn resolve_threads(flag: Option<usize>) -> std::result::Result<Option<usize>, String> {
    if flag.is_some() {
        return Ok(flag);
    }
    match std::env::var(THREADS_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| format!("{THREADS_ENV} must be a thread count, got {v:?}")),
        Err(_) => Ok(None),
    }
}

fn execute(cmd: &Command, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Roots { out: path } => {
            emit(path.as_deref(), &generate_e8_roots().to_text(), out)?;
        }
        Command::Dim { d, k } => {
            writeln!(out, "{}", harmonic_dimension(*d, *k)?)?;
        }
        Command::Gegenbauer { d, k, at } => {
            let poly = gegenbauer::<Rational>(*d, *k)?;
            match at {
                Some(t) => {
                    let t = parse_rational(t).map_err(Error::InvalidParameter)?;
                    writeln!(out, "{}", format_rational(&poly.evaluate(&t)))?;
                }
                None => {
                    let cells: Vec<String> = poly.coeffs().iter().map(format_rational).collect();
                    writeln!(out, "{}", cells.join(" "))?;
                }
            }
        }
        Command::Build {
            input,
            out: path,
            format,
            certify,
            report,
        } => {
            let code = load_embedded(input)?;
            if let Some(path) = path {
                let text = match format {
                    Format::Exact => gram_from_embedded(&code).to_text(),
                    Format::Float => float_export(&code),
                };
                fs::write(path, text)?;
            }
            if *certify {
                let g = gram_from_embedded(&code);
                return print_report(&g, code.ambient_harmonic_dim(), report, out);
            }
            if path.is_none() {
                out.write_all(gram_from_embedded(&code).to_text().as_bytes())?;
            }
        }
        Command::Certify { source, report } => {
            let (g, dim) = load_gram(source)?;
            return print_report(&g, dim, report, out);
        }
        Command::Bound { n, dim } => {
            writeln!(out, "{}", quadratic_bound::<Rational>(*n, *dim)?)?;
        }
        Command::Design {
            source,
            lattice,
            t_max,
        } => {
            let (g, dim) = if *lattice {
                let code = load_code(source.input.as_deref().expect("clap requires --in"))?;
                (gram_from_lattice(&code), code.ambient_dim())
            } else {
                load_gram(source)?
            };
            if dim < 2 {
                return Err(Error::InvalidParameter(
                    "design check needs dim >= 2".into(),
                ));
            }
            let design = design_strength(&g, dim as u32 - 1, *t_max)?;
            writeln!(out, "design_strength: {}", design.strength)?;
            for (k, r) in design.residuals.iter().enumerate() {
                writeln!(out, "residual_{}: {}", k + 1, format_rational(r))?;
            }
        }
        Command::Scan {
            values,
            d,
            k,
            k_max,
            n,
            json,
        } => {
            let values = parse_values(&read(values)?)?;
            let k_max = k_max.unwrap_or(*k);
            let scans = constant_modulus_scan(&values, *d, *k..=k_max)?;
            let candidates = match n {
                Some(n) => (*k..=k_max)
                    .map(|k| candidate_parameters(&values, *d, k, *n))
                    .collect::<Result<Vec<_>>>()?,
                None => Vec::new(),
            };
            if *json {
                let doc = serde_json::json!({ "scans": scans, "candidates": candidates });
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&doc).expect("serializable")
                )?;
            } else {
                for (i, s) in scans.iter().enumerate() {
                    if i > 0 {
                        writeln!(out)?;
                    }
                    write!(out, "{s}")?;
                    if let Some(c) = candidates.get(i) {
                        write!(out, "{c}")?;
                    }
                }
            }
        }
        Command::Export {
            input,
            exact,
            float,
            out: path,
        } => {
            let code = load_embedded(input)?;
            let text = match (exact, float) {
                (_, true) => float_export(&code),
                _ => gram_from_embedded(&code).to_text(),
            };
            emit(path.as_deref(), &text, out)?;
        }
    }
    Ok(EXIT_OK)
}

fn print_report(
    g: &GramView<Rational>,
    dim: usize,
    args: &ReportArgs,
    out: &mut dyn Write,
) -> Result<i32> {
    let report = certify_gram(g, dim, args.t_max)?;
    if args.json {
        writeln!(out, "{}", report.to_json())?;
    } else {
        write!(out, "{report}")?;
    }
    Ok(if passes(&report, args.min_strength) {
        EXIT_OK
    } else {
        EXIT_DOMAIN
    })
}

fn passes(report: &CodeReport, min_strength: Option<u32>) -> bool {
    report.frame_satisfied()
        && report.optimal_antipodal
        && min_strength.is_none_or(|t| report.design_strength >= t)
}

fn read(path: &Path) -> Result<String> {
    Ok(fs::read_to_string(path)?)
}

fn emit(path: Option<&Path>, text: &str, out: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn load_code(path: &Path) -> Result<LatticeCode> {
    LatticeCode::parse_text(&read(path)?)
}

fn load_embedded(path: &Path) -> Result<EmbeddedCode<Rational>> {
    build_code(&load_code(path)?)
}

fn load_gram(source: &Source) -> Result<(GramView<Rational>, usize)> {
    match (&source.input, &source.gram) {
        (Some(input), _) => {
            let code = load_embedded(input)?;
            Ok((gram_from_embedded(&code), code.ambient_harmonic_dim()))
        }
        (None, Some(gram)) => {
            let dim = source.dim.expect("clap requires --dim with --gram");
            Ok((GramView::parse_text(&read(gram)?)?, dim))
        }
        (None, None) => unreachable!("clap requires a source"),
    }
}
