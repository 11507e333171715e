//! Command-line frontend. Primary output goes to `out`, diagnostics to
//! `err`. Exit codes: 0 success, 2 input error, 3 resource cap.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::action::{self, Subgroup};
use crate::cover::{CoverComplex, SurfacePresentation};
use crate::error::{Error, Result};
use crate::fgenus::{self, FigureOptions, ResolverBudget};
use crate::gf2::Gf2Matrix;
use crate::rzk::{CubicalSurface, RzkReport, DEFAULT_BUILD_CAP};
use crate::scomplex::SimplicialComplex;

pub const CELL_CAP_ENV: &str = "INVOLAB_CELL_CAP";

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "involab", version, about = "Free commuting involutions on closed surfaces")]
pub struct Cli {
    /// Worker threads for the parallel search and figure paths.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Json,
    Text,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct ComplexSource {
    /// Use the boundary of the m-gon (vertices 1..m).
    #[arg(long)]
    pub m: Option<usize>,
    /// Read a complex file: first line m, then one facet per line.
    #[arg(long)]
    pub complex: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build RZ_K and report V, E, F, chi, closed-surface status and genus.
    Rzk {
        #[command(flatten)]
        source: ComplexSource,
        #[arg(long, value_enum, default_value = "json")]
        report: ReportFormat,
    },
    /// Maximum rank of a freely acting coordinate subgroup.
    FreeRank {
        #[command(flatten)]
        source: ComplexSource,
        /// Also print the basis, one support per line.
        #[arg(long)]
        witness: bool,
        /// Emit JSON instead of lines.
        #[arg(long)]
        json: bool,
    },
    /// Bounds on f(g), and with --exact the resolved value and certificate.
    F {
        #[arg(long)]
        g: u64,
        #[arg(long)]
        exact: bool,
        #[arg(long, value_enum, default_value = "json")]
        report: ReportFormat,
    },
    /// Build the regular cover of a standard surface for a GF(2) matrix.
    Cover {
        #[arg(long, action = clap::ArgAction::Set)]
        orientable: bool,
        #[arg(long)]
        genus: usize,
        /// Matrix file: n rows of d space-separated bits.
        #[arg(long)]
        phi: PathBuf,
    },
    /// Emit the f(g) / H(g) table as CSV.
    Figure {
        #[arg(long)]
        gmax: u64,
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Do not count the sphere (n = 1, g = 0) as an equality point.
        #[arg(long)]
        exclude_sphere: bool,
    },
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::CapExceeded { .. } => EXIT_RESOURCE,
        _ => EXIT_INPUT,
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Validation(format!("cannot read {}: {e}", path.display())))
}

fn load_complex(src: &ComplexSource) -> Result<SimplicialComplex> {
    match (&src.m, &src.complex) {
        (Some(m), None) => SimplicialComplex::polygon_boundary(*m),
        (None, Some(path)) => SimplicialComplex::parse(&read(path)?),
        _ => Err(Error::Validation("exactly one of --m / --complex is required".into())),
    }
}

fn build_cap() -> Result<usize> {
    match std::env::var(CELL_CAP_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::Validation(format!("{CELL_CAP_ENV}={v} is not a nonnegative integer"))),
        Err(_) => Ok(DEFAULT_BUILD_CAP),
    }
}

fn rzk_text(r: &RzkReport) -> String {
    let opt = |v: Option<String>| v.unwrap_or_else(|| "-".into());
    format!(
        "m {}\nV {}\nE {}\nF {}\nchi {}\nclosed_surface {}\norientable {}\ngenus {}\n",
        r.m,
        r.v,
        r.e,
        r.f,
        r.chi,
        r.closed_surface,
        opt(r.orientable.map(|b| b.to_string())),
        opt(r.genus.map(|g| g.to_string())),
    )
}

fn matrix_json(phi: &Gf2Matrix) -> Value {
    let rows: Vec<Vec<u8>> = (0..phi.nrows())
        .map(|r| (0..phi.ncols()).map(|c| phi.get(r, c) as u8).collect())
        .collect();
    json!(rows)
}

fn cmd_rzk(src: &ComplexSource, format: ReportFormat) -> Result<String> {
    let k = load_complex(src)?;
    let c = CubicalSurface::build_with_cap(&k, build_cap()?)?;
    let report = c.report();
    Ok(match format {
        ReportFormat::Json => serde_json::to_string(&report).expect("report serializes") + "\n",
        ReportFormat::Text => rzk_text(&report),
    })
}

fn cmd_free_rank(src: &ComplexSource, witness: bool, as_json: bool, parallel: bool) -> Result<String> {
    let k = load_complex(src)?;
    let (rank, basis): (usize, Subgroup) = if parallel {
        action::max_free_rank_parallel(&k)?
    } else {
        action::max_free_rank(&k)?
    };
    Ok(if as_json {
        let mut v = json!({ "m": k.m(), "rank": rank });
        if witness {
            v["witness"] = json!(basis.index_lists());
        }
        v.to_string() + "\n"
    } else {
        let mut s = format!("{rank}\n");
        if witness {
            s.push_str(&basis.to_string());
        }
        s
    })
}

fn cmd_f(g: u64, exact: bool, format: ReportFormat) -> String {
    let d = fgenus::decompose(g);
    let bounds = fgenus::f_bounds(g);
    if !exact {
        return match format {
            ReportFormat::Json => json!({
                "g": g,
                "a": d.a as i64,
                "n": d.n,
                "lower": bounds.lower,
                "upper": bounds.upper,
            })
            .to_string()
                + "\n",
            ReportFormat::Text => format!("{} {}\n", bounds.lower, bounds.upper),
        };
    }
    let res = fgenus::f_exact(g, &ResolverBudget::default());
    let v = &res.value;
    match format {
        ReportFormat::Json => {
            let mut out = json!({
                "g": g,
                "a": d.a as i64,
                "n": d.n,
                "lower": v.lower,
                "upper": v.upper,
                "exact": v.exact,
                "resolved": v.resolved,
                "method": v.method,
            });
            if let Some(cert) = &res.certificate {
                out["certificate"] = json!({
                    "base": { "orientable": cert.base.orientable(), "genus": cert.base.genus() },
                    "phi": matrix_json(&cert.phi),
                    "cover": cert.cover,
                });
            }
            out.to_string() + "\n"
        }
        ReportFormat::Text => {
            let mut s = format!("{} {}\n", v.lower, v.upper);
            match v.exact {
                Some(e) => s.push_str(&format!("exact {e}\n")),
                None => s.push_str("resolved false\n"),
            }
            if let Some(cert) = &res.certificate {
                s.push_str(&format!(
                    "base {} genus {}\nphi\n{}",
                    if cert.base.orientable() { "orientable" } else { "nonorientable" },
                    cert.base.genus(),
                    cert.phi
                ));
            }
            s
        }
    }
}

fn cmd_cover(orientable: bool, genus: usize, phi: &Path) -> Result<String> {
    let base = SurfacePresentation::new(orientable, genus)?;
    let phi = Gf2Matrix::parse(&read(phi)?, base.generators())?;
    let report = CoverComplex::build(&base, &phi)?.report()?;
    Ok(serde_json::to_string(&report).expect("report serializes") + "\n")
}

fn cmd_figure(gmax: u64, out: Option<&Path>, exclude_sphere: bool) -> Result<Option<String>> {
    let opts = FigureOptions {
        include_sphere: !exclude_sphere,
        ..Default::default()
    };
    let csv = fgenus::figure_csv(&fgenus::figure1_data(gmax, &opts));
    match out {
        Some(path) => {
            std::fs::write(path, csv)
                .map_err(|e| Error::Validation(format!("cannot write {}: {e}", path.display())))?;
            Ok(None)
        }
        None => Ok(Some(csv)),
    }
}

fn dispatch(cli: &Cli) -> Result<Option<String>> {
    let parallel = cli.threads.is_some_and(|t| t > 1);
    match &cli.command {
        Command::Rzk { source, report } => cmd_rzk(source, *report).map(Some),
        Command::FreeRank { source, witness, json } => {
            cmd_free_rank(source, *witness, *json, parallel).map(Some)
        }
        Command::F { g, exact, report } => Ok(Some(cmd_f(*g, *exact, *report))),
        Command::Cover {
            orientable,
            genus,
            phi,
        } => cmd_cover(*orientable, *genus, phi).map(Some),
        Command::Figure {
            gmax,
            out,
            exclude_sphere,
        } => cmd_figure(*gmax, out.as_deref(), *exclude_sphere),
    }
}

/// Parse `args` (including the program name) and run one subcommand.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };

    let result = match cli.threads {
        Some(0) => Err(Error::Validation("--threads must be positive".into())),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| dispatch(&cli)),
            Err(e) => Err(Error::Validation(format!("cannot start thread pool: {e}"))),
        },
        None => dispatch(&cli),
    };

    match result {
        Ok(text) => {
            if let Some(text) = text {
                if out.write_all(text.as_bytes()).is_err() {
                    return EXIT_INPUT;
                }
            }
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}
