//! `quadrica`: invariants of diagonal forms, single-type certification and
//! verdict tables.
//!
//! Exit codes: 0 for a decided verdict, 2 for input errors, 3 when the
//! engine has no verdict for the type.

mod render;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use quadrica::brauer::{add_classes, symbol, BrauerClass};
use quadrica::certify::{classify, enumerate_types, verdict, Outcome, Verdict};
use quadrica::funfield::{SurfaceKind, SurfaceModel};
use quadrica::quadform::{generic_fiber, make_affine_form, make_diag_form, BundleType, DiagForm};
use quadrica::{Poly, RatFn};

const MAX_TABLE_BOUND: u32 = 20;

#[derive(Parser, Debug)]
#[command(name = "quadrica", version, about = "Stable-irrationality certificates for diagonal quadric surface bundles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Surface {
    P2,
    P1xp1,
}

impl From<Surface> for SurfaceKind {
    fn from(s: Surface) -> Self {
        match s {
            Surface::P2 => SurfaceKind::P2,
            Surface::P1xp1 => SurfaceKind::P1xP1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Discriminant, Clifford invariant and residue profiles of a form.
    Invariants {
        #[arg(long, value_enum)]
        surface: Surface,
        /// Four entries separated by `;`.
        #[arg(long)]
        entries: String,
        /// Symbols `a|b` joined by `+`.
        #[arg(long, default_value = "")]
        alpha: String,
        /// Entries are (bi)homogeneous; the generic fiber is taken first.
        #[arg(long)]
        projective: bool,
        #[arg(long, value_enum, default_value = "text")]
        output: Output,
    },
    /// Verdict and certificate for one type.
    Certify {
        #[arg(long, value_enum)]
        surface: Surface,
        /// `d0,d1,d2,d3` on the plane, `d0:e0,d1:e1,d2:e2,d3:e3` on P1 x P1.
        #[arg(long = "type")]
        ty: String,
        #[arg(long, value_enum, default_value = "text")]
        output: Output,
    },
    /// One row per ordered, parity-valid type with coordinates at most `bound`.
    Table {
        #[arg(long, value_enum)]
        surface: Surface,
        #[arg(long)]
        bound: u32,
        #[arg(long, env = "QUADRICA_JOBS")]
        jobs: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        output: Output,
    },
}

/// A message and the exit code it maps to.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

fn input_error(message: impl std::fmt::Display) -> Failure {
    Failure { code: 2, message: message.to_string() }
}

fn engine_error(message: impl std::fmt::Display) -> Failure {
    Failure { code: 1, message: message.to_string() }
}

fn parse_entries(s: &SurfaceModel, text: &str, projective: bool) -> Result<DiagForm, Failure> {
    let items: Vec<&str> = text.split(';').collect();
    if items.len() != 4 {
        return Err(input_error(format!("expected 4 entries separated by `;`, got {}", items.len())));
    }
    let mut polys = Vec::with_capacity(4);
    for (i, item) in items.iter().enumerate() {
        polys.push(s.parse(item).map_err(|e| input_error(format!("entry {i}: {e}")))?);
    }
    let entries: [Poly; 4] = polys.try_into().expect("four entries");
    let form = if projective { make_diag_form(entries, s) } else { make_affine_form(entries, s) };
    let form = form.map_err(input_error)?;
    Ok(if projective { generic_fiber(&form) } else { form })
}

fn parse_alpha(s: &SurfaceModel, text: &str) -> Result<BrauerClass, Failure> {
    let mut alpha = BrauerClass::zero();
    if text.trim().is_empty() {
        return Ok(alpha);
    }
    for (i, part) in text.split('+').enumerate() {
        let (a, b) = part.split_once('|').ok_or_else(|| input_error(format!("symbol {i}: expected `a|b`")))?;
        let a = s.parse(a).map_err(|e| input_error(format!("symbol {i}, first entry: {e}")))?;
        let b = s.parse(b).map_err(|e| input_error(format!("symbol {i}, second entry: {e}")))?;
        let sym = symbol(&RatFn::from(a), &RatFn::from(b)).map_err(|e| input_error(format!("symbol {i}: {e}")))?;
        alpha = add_classes(&alpha, &sym);
    }
    Ok(alpha)
}

fn parse_type(kind: SurfaceKind, text: &str) -> Result<BundleType, Failure> {
    BundleType::parse(kind, text).map_err(input_error)
}

fn exit_code(v: &Verdict) -> u8 {
    if v.outcome == Outcome::Unknown {
        3
    } else {
        0
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Invariants { surface, entries, alpha, projective, output } => {
            let s = SurfaceModel::new(surface.into());
            let form = parse_entries(&s, &entries, projective)?;
            let alpha = parse_alpha(&s, &alpha)?;
            let report = render::invariants(&form, &alpha).map_err(engine_error)?;
            match output {
                Output::Text => print!("{}", render::invariants_text(&report)),
                Output::Json => println!("{}", serde_json::to_string_pretty(&report).expect("serializable")),
            }
            Ok(0)
        }
        Command::Certify { surface, ty, output } => {
            let t = parse_type(surface.into(), &ty)?;
            if !t.is_ordered() {
                return Err(input_error(format!("type {t} is not in increasing order")));
            }
            classify(&t).map_err(input_error)?;
            let v = verdict(&t).map_err(engine_error)?;
            match output {
                Output::Text => print!("{}", render::verdict_text(&v)),
                Output::Json => println!("{}", serde_json::to_string_pretty(&render::verdict_json(&v)).expect("serializable")),
            }
            Ok(exit_code(&v))
        }
        Command::Table { surface, bound, jobs, output } => {
            if bound > MAX_TABLE_BOUND {
                return Err(input_error(format!("bound {bound} exceeds the limit {MAX_TABLE_BOUND}")));
            }
            let types = enumerate_types(surface.into(), bound);
            let mut pool = rayon::ThreadPoolBuilder::new();
            if let Some(n) = jobs {
                if n == 0 {
                    return Err(input_error("--jobs must be at least 1"));
                }
                pool = pool.num_threads(n);
            }
            let pool = pool.build().map_err(engine_error)?;
            let rows: Vec<Result<render::Row, String>> = pool.install(|| {
                types
                    .par_iter()
                    .map(|t| verdict(t).map(|v| render::row(&v)).map_err(|e| format!("{t}: {e}")))
                    .collect()
            });
            let mut out = String::new();
            for row in rows {
                let row = row.map_err(engine_error)?;
                match output {
                    Output::Text => out.push_str(&row.text()),
                    Output::Json => out.push_str(&serde_json::to_string(&row).expect("serializable")),
                }
                out.push('\n');
            }
            print!("{out}");
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
