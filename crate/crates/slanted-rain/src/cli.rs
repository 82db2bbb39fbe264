//! Command-line interface.
//!
//! Exit codes: 0 success, 2 invalid input, 3 budget exhausted (or a value
//! that cannot be computed within limits), 4 verification failed.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use slanted_rain_core::finder::{find_many, find_with, FinderOptions, SearchError};
use slanted_rain_core::vdw::{eval_expr_detailed, sr_expr, sr_n_expr, EvalGap, KnownValues, VdwBudget, VdwOutcome};
use slanted_rain_core::{
    verify_certificate, Certificate, ColoringSpec, Point, Rain2D, RainNd, Rational, SearchBudget, StdClock,
};

use crate::cert_json::{parse_files, simplex_from_vertices, to_json};
use crate::files::{load_spec, FsLoader};
use crate::known;
use crate::render::{render, Format, RenderPlan};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_VERIFY: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "slanted-rain", version, about = "Slanted rains and monochromatic standard simplices over the rationals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build and inspect rains.
    #[command(subcommand)]
    Rain(RainCommand),
    /// Search for a monochromatic standard triangle or simplex.
    #[command(subcommand)]
    Find(FindCommand),
    /// Re-check certificate files.
    Verify {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Van der Waerden numbers.
    #[command(subcommand)]
    Vdw(VdwCommand),
    /// The rain-length recursion SR(h) / SR_n(h).
    #[command(subcommand)]
    Sr(SrCommand),
}

#[derive(Args, Debug, Clone)]
struct RainArgs {
    /// Rain length (number of base points per axis).
    #[arg(long = "len")]
    length: usize,
    /// Base step, as `n` or `n/d`; the same on every base axis.
    #[arg(long, default_value = "1")]
    step: Rational,
    /// Origin as `x,y,...`; defaults to the coordinate origin.
    #[arg(long)]
    origin: Option<Point>,
    /// Dimension; 2 is the planar rain.
    #[arg(long, default_value_t = 2)]
    dim: usize,
}

#[derive(Subcommand, Debug)]
enum RainCommand {
    /// Print every point, one per line, in canonical order.
    Gen {
        #[command(flatten)]
        rain: RainArgs,
        /// Refuse rains with more points than this.
        #[arg(long, default_value_t = 1_000_000)]
        limit: u128,
    },
    /// Whether a point belongs to the rain.
    Contains {
        #[command(flatten)]
        rain: RainArgs,
        #[arg(long)]
        point: Point,
    },
    /// The sub-rain of the given length inside the rain's layers.
    Subrain {
        #[command(flatten)]
        rain: RainArgs,
        #[arg(long)]
        target: usize,
    },
    /// Draw a planar rain.
    Render {
        #[command(flatten)]
        rain: RainArgs,
        #[arg(long, value_enum, default_value_t = RenderFormat::Svg)]
        format: RenderFormat,
        /// Circle the points of the sub-rain of this length.
        #[arg(long)]
        highlight_subrain: Option<usize>,
        /// Circle this point; repeatable.
        #[arg(long)]
        highlight: Vec<Point>,
        /// Draw only layers 1..=K.
        #[arg(long)]
        max_layer: Option<usize>,
        #[arg(long, default_value_t = 10)]
        x_unit: u64,
        #[arg(long, default_value_t = 120)]
        y_unit: u64,
        #[arg(long, default_value_t = 1)]
        min_gap: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum RenderFormat {
    Svg,
    Ascii,
}

#[derive(Args, Debug, Clone)]
struct FindArgs {
    /// Colouring spec: `const:h:c`, `hash:h:seed`, `mod:h:M:path:default`
    /// or `banded:h:axis:path:default`.
    #[arg(long, env = "SLANTED_RAIN_COLORING", required_unless_present = "seed")]
    coloring: Option<String>,
    /// Shorthand for `--coloring hash:<colors>:<seed>`.
    #[arg(long, env = "SLANTED_RAIN_SEED", conflicts_with = "coloring")]
    seed: Option<String>,
    /// Colour count for `--seed`.
    #[arg(long, default_value_t = 2)]
    colors: u32,
    /// Required edge product, `n` or `n/d`.
    #[arg(long)]
    target: Option<Rational>,
    /// Emit this many distinct certificates.
    #[arg(long, default_value_t = 1)]
    count: usize,
    /// Use the exact theorem lengths from the known-values table.
    #[arg(long)]
    faithful: bool,
    /// Known van der Waerden numbers; defaults to the bundled table.
    #[arg(long, env = "SLANTED_RAIN_VDW_TABLE")]
    vdw_table: Option<PathBuf>,
    /// Write the certificate here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, env = "SLANTED_RAIN_BUDGET_BASE_LEN")]
    budget_base_len: Option<usize>,
    #[arg(long, env = "SLANTED_RAIN_BUDGET_DEPTH")]
    budget_depth: Option<usize>,
    #[arg(long, env = "SLANTED_RAIN_BUDGET_QUERIES")]
    budget_queries: Option<u64>,
    #[arg(long, env = "SLANTED_RAIN_BUDGET_SECONDS")]
    budget_seconds: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum FindCommand {
    /// Monochromatic standard triangle; leg product 1 unless `--target` or
    /// `--area` (product 2S) is given.
    Triangle {
        #[command(flatten)]
        find: FindArgs,
        #[arg(long, conflicts_with = "target")]
        area: Option<Rational>,
    },
    /// Monochromatic standard n-simplex; edge product 1 unless `--target` or
    /// `--volume` (product nV) is given.
    Simplex {
        #[arg(long)]
        dim: usize,
        #[command(flatten)]
        find: FindArgs,
        #[arg(long, conflicts_with = "target")]
        volume: Option<Rational>,
    },
}

#[derive(Subcommand, Debug)]
enum VdwCommand {
    /// Exact vdW_h(N) by exhaustive search.
    Compute {
        #[arg(long)]
        colors: u32,
        /// Progression length N.
        #[arg(long)]
        ap: usize,
        /// Also print the extremal colouring of length vdW - 1.
        #[arg(long)]
        witness: bool,
        #[arg(long, env = "SLANTED_RAIN_BUDGET_NODES")]
        budget_nodes: Option<u64>,
        #[arg(long, env = "SLANTED_RAIN_BUDGET_SECONDS")]
        budget_seconds: Option<u64>,
    },
}

#[derive(Subcommand, Debug)]
enum SrCommand {
    /// Print the symbolic expression.
    Expr {
        #[arg(long)]
        colors: u32,
        #[arg(long, default_value_t = 2)]
        dim: u32,
    },
    /// Evaluate with the known-values table.
    Eval {
        #[arg(long)]
        colors: u32,
        #[arg(long, default_value_t = 2)]
        dim: u32,
        #[arg(long, env = "SLANTED_RAIN_VDW_TABLE")]
        vdw_table: Option<PathBuf>,
    },
}

/// A failure with its exit code.
struct Failure {
    code: i32,
    message: String,
}

fn invalid(message: impl ToString) -> Failure {
    Failure { code: EXIT_INVALID, message: message.to_string() }
}

type Outcome = Result<(), Failure>;

/// Runs one command line; output goes to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match cli.command {
        Command::Rain(c) => rain_command(c, out),
        Command::Find(c) => find_command(c, out, err),
        Command::Verify { files } => verify_command(&files, out),
        Command::Vdw(c) => vdw_command(c, out),
        Command::Sr(c) => sr_command(c, out),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn io_fail(e: std::io::Error) -> Failure {
    invalid(e)
}

enum AnyRain {
    Planar(Rain2D),
    Spatial(RainNd),
}

impl RainArgs {
    fn build(&self) -> Result<AnyRain, Failure> {
        if self.dim < 2 {
            return Err(invalid("--dim must be at least 2"));
        }
        let origin = match &self.origin {
            Some(p) if p.dim() != self.dim => {
                return Err(invalid(format!("origin {p} has {} coordinates, --dim is {}", p.dim(), self.dim)))
            }
            Some(p) => p.clone(),
            None => Point::origin(self.dim).map_err(invalid)?,
        };
        if self.dim == 2 {
            Rain2D::new(origin, self.step.clone(), self.length).map(AnyRain::Planar).map_err(invalid)
        } else {
            RainNd::new(origin, vec![self.step.clone(); self.dim - 1], self.length)
                .map(AnyRain::Spatial)
                .map_err(invalid)
        }
    }

    fn planar(&self) -> Result<Rain2D, Failure> {
        match self.build()? {
            AnyRain::Planar(r) => Ok(r),
            AnyRain::Spatial(_) => Err(invalid("only planar rains (--dim 2) can be drawn")),
        }
    }
}

fn write_output(path: Option<&Path>, text: &str, out: &mut dyn Write) -> Outcome {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| invalid(format!("cannot write {}: {e}", p.display()))),
        None => out.write_all(text.as_bytes()).map_err(io_fail),
    }
}

fn rain_command(c: RainCommand, out: &mut dyn Write) -> Outcome {
    match c {
        RainCommand::Gen { rain, limit } => {
            let points = match rain.build()? {
                AnyRain::Planar(r) => r.enumerate_points(limit),
                AnyRain::Spatial(r) => r.enumerate_points(limit),
            }
            .map_err(invalid)?;
            let mut text = String::new();
            for p in points {
                text.push_str(&p.to_string());
                text.push('\n');
            }
            out.write_all(text.as_bytes()).map_err(io_fail)
        }
        RainCommand::Contains { rain, point } => {
            let inside = match rain.build()? {
                AnyRain::Planar(r) => r.contains(&point),
                AnyRain::Spatial(r) => r.contains(&point),
            };
            writeln!(out, "{inside}").map_err(io_fail)
        }
        RainCommand::Subrain { rain, target } => {
            let text = match rain.build()? {
                AnyRain::Planar(r) => r.subrain(target).map(|s| s.to_string()),
                AnyRain::Spatial(r) => r.subrain(target).map(|s| s.to_string()),
            }
            .map_err(invalid)?;
            writeln!(out, "{text}").map_err(io_fail)
        }
        RainCommand::Render { rain, format, highlight_subrain, highlight, max_layer, x_unit, y_unit, min_gap, out: path } => {
            let rain = rain.planar()?;
            let format = match format {
                RenderFormat::Svg => Format::Svg,
                RenderFormat::Ascii => Format::Ascii,
            };
            let mut plan = RenderPlan::new(rain.clone(), format);
            plan.x_unit = x_unit;
            plan.y_unit = y_unit;
            plan.min_gap = min_gap;
            plan.max_layer = max_layer;
            plan.highlight = highlight.into_iter().collect::<BTreeSet<_>>();
            if let Some(t) = highlight_subrain {
                let sub = rain.subrain(t).map_err(invalid)?;
                plan.highlight.extend(sub.enumerate_points(u128::MAX).map_err(invalid)?);
            }
            let text = render(&plan).map_err(invalid)?;
            write_output(path.as_deref(), &text, out)
        }
    }
}

fn load_table(path: Option<&Path>) -> Result<KnownValues, Failure> {
    match path {
        None => Ok(known::bundled()),
        Some(p) => {
            let text = fs::read_to_string(p).map_err(|e| invalid(format!("cannot read {}: {e}", p.display())))?;
            known::parse_table(&text).map_err(|e| invalid(format!("{}: {e}", p.display())))
        }
    }
}

impl FindArgs {
    fn spec(&self) -> Result<ColoringSpec, Failure> {
        let text = match (&self.coloring, &self.seed) {
            (Some(c), _) => c.clone(),
            (None, Some(seed)) => format!("hash:{}:{seed}", self.colors),
            (None, None) => return Err(invalid("no coloring given")),
        };
        load_spec(&text).map_err(|e| invalid(format!("coloring {text:?}: {e}")))
    }

    fn budget(&self) -> Result<SearchBudget, Failure> {
        let mut b = SearchBudget::default();
        if let Some(v) = self.budget_base_len {
            b.max_base_len = v;
        }
        if let Some(v) = self.budget_depth {
            b.max_depth = v;
        }
        if let Some(v) = self.budget_queries {
            b.max_queries = v;
        }
        if let Some(v) = self.budget_seconds {
            b.time_limit = Duration::from_secs(v);
        }
        b.validate().map_err(invalid)?;
        Ok(b)
    }
}

fn search_failure(e: SearchError) -> Failure {
    match e {
        SearchError::BudgetExhausted { limit, trace } => Failure {
            code: EXIT_BUDGET,
            message: format!("budget exhausted ({limit}); deepest search path had {} steps", trace.len()),
        },
        SearchError::Refused(why) => Failure { code: EXIT_BUDGET, message: format!("faithful mode refused: {why}") },
        SearchError::Invalid(e) => invalid(e),
        SearchError::Internal(r) => Failure { code: EXIT_VERIFY, message: format!("certificate rejected: {r}") },
    }
}

fn find_command(c: FindCommand, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let (n, find, target) = match c {
        FindCommand::Triangle { find, area } => {
            let target = match (&find.target, area) {
                (Some(t), _) => t.clone(),
                (None, Some(s)) => slanted_rain_core::finder::product_for_area(&s),
                (None, None) => Rational::one(),
            };
            (2, find, target)
        }
        FindCommand::Simplex { dim, find, volume } => {
            let target = match (&find.target, volume) {
                (Some(t), _) => t.clone(),
                (None, Some(v)) => slanted_rain_core::finder::product_for_volume(dim, &v),
                (None, None) => Rational::one(),
            };
            (dim, find, target)
        }
    };
    if find.count == 0 {
        return Err(invalid("--count must be at least 1"));
    }
    let spec = find.spec()?;
    let table;
    let mut opts = FinderOptions::new(find.budget()?);
    if find.faithful {
        table = load_table(find.vdw_table.as_deref())?;
        opts.faithful = Some(&table);
    }
    let certs = if find.count == 1 {
        vec![find_with(&spec, n, &target, &opts, &StdClock::start()).map_err(search_failure)?]
    } else {
        find_many(&spec, n, &target, &opts, find.count).map_err(search_failure)?
    };
    if certs.len() < find.count {
        let _ = writeln!(err, "warning: found {} distinct certificates of {} requested", certs.len(), find.count);
    }
    let text = to_json(&certs);
    // What is written must verify when read back.
    for (i, report) in check_text(&text, &FsLoader::default()).map_err(invalid)?.into_iter().enumerate() {
        if let Err(why) = report {
            return Err(Failure { code: EXIT_VERIFY, message: format!("certificate {i} failed re-verification: {why}") });
        }
    }
    write_output(find.out.as_deref(), &text, out)?;
    if find.out.is_some() {
        for c in &certs {
            writeln!(out, "{}", summary(c)).map_err(io_fail)?;
        }
    }
    Ok(())
}

fn summary(c: &Certificate) -> String {
    format!("color {} product {} {}", c.color, c.target, c.simplex)
}

/// Verifies every certificate in a file's text. The outer error is a
/// malformed file; inner errors are rejected certificates.
pub fn check_text(text: &str, loader: &FsLoader) -> Result<Vec<Result<Certificate, String>>, String> {
    let files = parse_files(text).map_err(|e| e.to_string())?;
    let mut out = Vec::new();
    for f in files {
        let (spec, target, trace) = f.parts(loader).map_err(|e| e.to_string())?;
        let points = f.points().map_err(|e| e.to_string())?;
        let simplex = match simplex_from_vertices(&points) {
            Ok(s) => s,
            Err(e) => {
                out.push(Err(e.to_string()));
                continue;
            }
        };
        let cert = Certificate { simplex, color: f.color, spec, target, trace };
        out.push(verify_certificate(&cert).map(|_| cert).map_err(|r| r.to_string()));
    }
    Ok(out)
}

fn verify_command(files: &[PathBuf], out: &mut dyn Write) -> Outcome {
    let mut failed = false;
    for path in files {
        let text = fs::read_to_string(path).map_err(|e| invalid(format!("cannot read {}: {e}", path.display())))?;
        let reports = check_text(&text, &FsLoader::default()).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
        for (i, report) in reports.into_iter().enumerate() {
            match report {
                Ok(c) => writeln!(out, "ok {}#{i}: {}", path.display(), summary(&c)).map_err(io_fail)?,
                Err(why) => {
                    failed = true;
                    writeln!(out, "FAIL {}#{i}: {why}", path.display()).map_err(io_fail)?;
                }
            }
        }
    }
    if failed {
        Err(Failure { code: EXIT_VERIFY, message: "verification failed".into() })
    } else {
        Ok(())
    }
}

fn vdw_command(c: VdwCommand, out: &mut dyn Write) -> Outcome {
    let VdwCommand::Compute { colors, ap, witness, budget_nodes, budget_seconds } = c;
    let mut budget = VdwBudget::default();
    if let Some(n) = budget_nodes {
        budget.max_nodes = n;
    }
    if let Some(s) = budget_seconds {
        budget.time_limit = Duration::from_secs(s);
    }
    let show = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join("");
    match slanted_rain_core::vdw_number(colors, ap, &budget).map_err(invalid)? {
        VdwOutcome::Exact { value, extremal, .. } => {
            writeln!(out, "{value}").map_err(io_fail)?;
            if witness {
                writeln!(out, "{}", show(&extremal)).map_err(io_fail)?;
            }
            Ok(())
        }
        VdwOutcome::Unknown { lower_bound, best, nodes } => {
            if witness {
                writeln!(out, "{}", show(&best)).map_err(io_fail)?;
            }
            Err(Failure {
                code: EXIT_BUDGET,
                message: format!("budget exhausted after {nodes} nodes; vdW_{colors}({ap}) >= {lower_bound}"),
            })
        }
    }
}

fn sr_command(c: SrCommand, out: &mut dyn Write) -> Outcome {
    let expr = |colors: u32, dim: u32| {
        if colors == 0 || dim < 2 {
            return Err(invalid("need --colors >= 1 and --dim >= 2"));
        }
        Ok(if dim == 2 { sr_expr(colors) } else { sr_n_expr(dim, colors) })
    };
    match c {
        SrCommand::Expr { colors, dim } => writeln!(out, "{}", expr(colors, dim)?).map_err(io_fail),
        SrCommand::Eval { colors, dim, vdw_table } => {
            let e = expr(colors, dim)?;
            let table = load_table(vdw_table.as_deref())?;
            match eval_expr_detailed(&e, &table) {
                Ok(v) => writeln!(out, "{v}").map_err(io_fail),
                Err(gap) => {
                    let why = match gap {
                        EvalGap::Missing(key) => format!("{key} is not in the known-values table"),
                        EvalGap::TooLarge(arg) => format!("needs the factorial of {arg}"),
                        EvalGap::Undefined => "undefined".to_string(),
                    };
                    Err(Failure { code: EXIT_BUDGET, message: format!("{e} cannot be evaluated: {why}") })
                }
            }
        }
    }
}
