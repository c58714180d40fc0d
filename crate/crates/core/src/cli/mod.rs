//! The `chern` command-line tool.
//!
//! Exit codes: 0 on success, 1 on invalid input, 2 when the computation
//! succeeded but a verification failed (unbounded coordinate, printed
//! formula disagreeing with the computed one).

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::chern::{chern_gauss, sigma_to_chern_s, ChernPoly};
use crate::error::{Error, Result};
use crate::inequality::{generate_with, specialize, GenerateOptions, Inequality, MParam};
use crate::partitions::Partition;
use crate::polytope::{
    boundedness_certificate, build_polytope_with, coordinates, Mode, PolytopeOptions,
    RatioInequality,
};
use crate::schubert::{multiply, BoxSpec, SchubertExpr};
use crate::todd::todd_polynomial;
use crate::verify::{verify_section, Section};

#[derive(Parser, Debug)]
#[command(
    name = "chern",
    version,
    about = "Chern-class inequalities from the Gauss map and exact bounds on Chern ratios"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Latex,
    Text,
}

#[derive(Args, Debug)]
struct Common {
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct Setting {
    #[arg(long)]
    n: u32,
    /// Integer multiple of K_X that is very ample, or "symbolic".
    #[arg(long, allow_hyphen_values = true)]
    m: Option<MParam>,
    #[arg(long, default_value = "general-type")]
    mode: Mode,
    /// Leave out the monomial-comparison family.
    #[arg(long)]
    no_comparisons: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the generated inequalities.
    Generate {
        #[command(flatten)]
        setting: Setting,
        #[command(flatten)]
        common: Common,
    },
    /// Build the ratio polyhedron; with --bounds also certify each coordinate.
    Polytope {
        #[command(flatten)]
        setting: Setting,
        #[arg(long)]
        bounds: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Schubert calculus.
    Schubert {
        #[command(subcommand)]
        op: SchubertOp,
    },
    /// σ_w in terms of the Chern classes of the universal subbundle.
    SigmaToChern {
        w: u32,
        #[command(flatten)]
        common: Common,
    },
    /// c_p(γ^*S) for an n-fold.
    GaussChern {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        p: u32,
        #[arg(long, allow_hyphen_values = true)]
        m: Option<MParam>,
        #[command(flatten)]
        common: Common,
    },
    /// The Todd polynomial of degree d.
    Todd {
        d: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Recompute a block of published formulas and diff against them.
    #[command(name = "verify-paper")]
    Verify {
        section: Section,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Subcommand, Debug)]
enum SchubertOp {
    /// Product of two Schubert classes.
    Mult {
        a: String,
        b: String,
        /// Truncate to a rows,cols box.
        #[arg(long = "box")]
        bx: Option<String>,
        #[command(flatten)]
        common: Common,
    },
}

/// Validated settings for `generate` and `polytope`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub n: u32,
    pub m: MParam,
    pub mode: Mode,
    pub format: Format,
    pub include_comparisons: bool,
    pub output: Option<PathBuf>,
}

impl RunConfig {
    fn new(s: &Setting, c: &Common) -> Result<Self> {
        if s.n < 2 {
            return Err(Error::Domain(format!(
                "dimension must be at least 2, got {}",
                s.n
            )));
        }
        let m = s.m.unwrap_or(if s.n == 2 && s.mode == Mode::GeneralType {
            MParam::Value(5)
        } else {
            MParam::Symbolic
        });
        if let MParam::Value(v) = m {
            s.mode.check(v)?;
        }
        Ok(RunConfig {
            n: s.n,
            m,
            mode: s.mode,
            format: c.format,
            include_comparisons: !s.no_comparisons,
            output: c.output.clone(),
        })
    }

    fn options(&self) -> GenerateOptions {
        GenerateOptions {
            include_comparisons: self.include_comparisons,
        }
    }
}

/// Runs the tool on `args` (including the program name) and returns the
/// exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

struct Emitted {
    body: String,
    code: i32,
}

fn dispatch(cmd: Command) -> Result<i32> {
    let (out, common_output) = match cmd {
        Command::Generate { setting, common } => {
            let cfg = RunConfig::new(&setting, &common)?;
            (cmd_generate(&cfg)?, cfg.output)
        }
        Command::Polytope {
            setting,
            bounds,
            common,
        } => {
            let cfg = RunConfig::new(&setting, &common)?;
            (cmd_polytope(&cfg, bounds)?, cfg.output)
        }
        Command::Schubert {
            op: SchubertOp::Mult { a, b, bx, common },
        } => {
            let bx = match bx {
                Some(s) => parse_box(&s)?,
                None => BoxSpec::STABLE,
            };
            let e = multiply(
                &SchubertExpr::basis(parse_partition(&a)?),
                &SchubertExpr::basis(parse_partition(&b)?),
                bx,
            );
            let body = match common.format {
                Format::Json => json_line(&serde_json::to_value(&e)?),
                Format::Latex => format!("{}\n", e.to_latex()),
                Format::Text => format!("{e}\n"),
            };
            (Emitted { body, code: 0 }, common.output)
        }
        Command::SigmaToChern { w, common } => {
            let body = poly_out(&sigma_to_chern_s(w), common.format)?;
            (Emitted { body, code: 0 }, common.output)
        }
        Command::GaussChern { n, p, m, common } => {
            let mut poly = chern_gauss(n, p)?;
            if let Some(MParam::Value(v)) = m {
                poly = poly.specialize(v);
            }
            let body = poly_out(&poly, common.format)?;
            (Emitted { body, code: 0 }, common.output)
        }
        Command::Todd { d, common } => {
            let body = poly_out(todd_polynomial(d).body(), common.format)?;
            (Emitted { body, code: 0 }, common.output)
        }
        Command::Verify { section, common } => {
            let report = verify_section(section)?;
            let code = if report.all_match() { 0 } else { 2 };
            let body = match common.format {
                Format::Json => json_line(&serde_json::to_value(&report)?),
                _ => report.to_text(),
            };
            (Emitted { body, code }, common.output)
        }
    };
    match common_output {
        Some(path) => fs::write(path, out.body.as_bytes())?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(out.body.as_bytes())?;
        }
    }
    Ok(out.code)
}

fn json_line(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values always serialize");
    s.push('\n');
    s
}

fn poly_out(poly: &ChernPoly, format: Format) -> Result<String> {
    Ok(match format {
        Format::Json => json_line(&serde_json::to_value(poly)?),
        Format::Latex => format!("{}\n", poly.to_latex()),
        Format::Text => format!("{}\n", poly.render()),
    })
}

fn align(lines: impl IntoIterator<Item = String>) -> String {
    let rows: Vec<String> = lines.into_iter().collect();
    let mut out = String::from("\\begin{align*}\n");
    out.push_str(&rows.join(" \\\\\n"));
    out.push_str("\n\\end{align*}\n");
    out
}

fn generated(cfg: &RunConfig) -> Result<Vec<Inequality>> {
    let all = generate_with(cfg.n, cfg.options())?;
    match cfg.m {
        MParam::Symbolic => Ok(all),
        MParam::Value(v) => {
            let mut out: Vec<Inequality> = Vec::with_capacity(all.len());
            for q in &all {
                let s = specialize(q, v)?;
                if !s.is_trivial() && !out.iter().any(|o| o.lhs() == s.lhs()) {
                    out.push(s);
                }
            }
            Ok(out)
        }
    }
}

fn cmd_generate(cfg: &RunConfig) -> Result<Emitted> {
    let list = generated(cfg)?;
    let body = match cfg.format {
        Format::Json => json_line(&json!({
            "n": cfg.n,
            "m": cfg.m,
            "inequalities": list,
        })),
        Format::Latex => align(list.iter().map(|q| {
            let t = q.to_latex();
            // align on the relation
            t.replacen("\\ge", "&\\ge", 1).replacen("\\le", "&\\le", 1)
        })),
        Format::Text => list.iter().map(|q| format!("{}\n", q.to_text())).collect(),
    };
    Ok(Emitted { body, code: 0 })
}

fn ratio_latex(n: u32, q: &RatioInequality) -> String {
    let mut s = String::new();
    for (p, c) in coordinates(n).iter().zip(q.coeffs()) {
        if c.is_zero() {
            continue;
        }
        let sign = if c.is_negative() { "-" } else { "+" };
        if !s.is_empty() || c.is_negative() {
            s.push_str(sign);
        }
        let a = c.abs();
        if !a.is_one() {
            if a.is_integer() {
                s.push_str(&a.to_string());
            } else {
                s.push_str(&format!("\\tfrac{{{}}}{{{}}}", a.numer(), a.denom()));
            }
        }
        let idx: Vec<String> = p.parts().iter().map(ToString::to_string).collect();
        s.push_str(&format!("r_{{{}}}", idx.join(",")));
    }
    let k = q.constant();
    if !k.is_zero() {
        s.push_str(if k.is_negative() { "-" } else { "+" });
        let a = k.abs();
        if a.is_integer() {
            s.push_str(&a.to_string());
        } else {
            s.push_str(&format!("\\tfrac{{{}}}{{{}}}", a.numer(), a.denom()));
        }
    }
    format!("{s} &\\ge 0")
}

fn cmd_polytope(cfg: &RunConfig, bounds: bool) -> Result<Emitted> {
    let MParam::Value(m) = cfg.m else {
        return Err(Error::Domain("polytope needs a numeric --m".into()));
    };
    let constraints = build_polytope_with(
        cfg.n,
        m,
        cfg.mode,
        PolytopeOptions {
            generate: cfg.options(),
        },
    )?;
    let cert = if bounds {
        Some(boundedness_certificate(cfg.n, m, cfg.mode)?)
    } else {
        None
    };
    let code = match &cert {
        Some(c) if !c.bounded() => 2,
        _ => 0,
    };
    let coords: Vec<String> = coordinates(cfg.n).iter().map(ToString::to_string).collect();
    let body = match cfg.format {
        Format::Json => {
            let mut v = json!({
                "n": cfg.n,
                "m": m,
                "mode": cfg.mode,
                "coordinates": coordinates(cfg.n),
                "constraints": constraints,
            });
            if let Some(c) = &cert {
                v["certificate"] = serde_json::to_value(c)?;
            }
            json_line(&v)
        }
        Format::Latex => {
            let mut s = align(constraints.iter().map(|q| ratio_latex(cfg.n, q)));
            if let Some(c) = &cert {
                s.push_str(&align(c.coords.iter().map(|b| {
                    let idx: Vec<String> = b
                        .partition
                        .parts()
                        .iter()
                        .map(ToString::to_string)
                        .collect();
                    let show = |v: Option<&num_rational::BigRational>, inf: &str| {
                        v.map_or(inf.to_string(), ToString::to_string)
                    };
                    format!(
                        "{} &\\le r_{{{}}} \\le {}",
                        show(b.min.value.as_ref(), "-\\infty"),
                        idx.join(","),
                        show(b.max.value.as_ref(), "\\infty")
                    )
                })));
            }
            s
        }
        Format::Text => {
            let mut s = format!("coordinates: {}\n", coords.join(" "));
            for q in &constraints {
                s.push_str(&q.to_text());
                s.push('\n');
            }
            if let Some(c) = &cert {
                s.push_str(&c.to_text());
            }
            s
        }
    };
    Ok(Emitted { body, code })
}

/// Parses "2,1"; the empty string is the empty partition.
pub fn parse_partition(s: &str) -> Result<Partition> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Partition::empty());
    }
    let parts = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| Error::InvalidPartition(format!("bad part {t:?} in {s:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Partition::new(parts)
}

fn parse_box(s: &str) -> Result<BoxSpec> {
    let dims: Vec<u32> = s
        .split(',')
        .map(|t| t.trim().parse::<u32>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::InvalidBox(format!("expected rows,cols, got {s:?}")))?;
    match dims[..] {
        [r, c] => BoxSpec::new(r, c),
        _ => Err(Error::InvalidBox(format!("expected rows,cols, got {s:?}"))),
    }
}
