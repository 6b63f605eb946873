//! Command-line front end. [`run`] parses arguments, writes to the given sink and returns the
//! process exit code: 0 success, 2 usage error, 3 budget or cap exceeded, 4 verification
//! mismatch.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::io::Write;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use itertools::Itertools;

use crate::classify::{count_wide_with, enumerate_collections, recognize_wide, wide_closure, CountOptions};
use crate::error::Error;
use crate::homology::{ext_oracle, hom_dim_oracle};
use crate::linalg::{PrimeField, DEFAULT_CHARACTERISTIC};
use crate::quiver::build_quiver;
use crate::reps::{ModuleCategory, RepComplex};
use crate::tuples::{e_ext, e_hom, generate_tuples, Context, IncTuple};
use crate::verify::{exactness_suite, formula_grid};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_MISMATCH: i32 = 4;

/// Environment variable supplying the default field characteristic.
pub const FIELD_ENV: &str = "HIGHER_AUSLANDER_FIELD";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Json,
    Tsv,
    Dot,
}

#[derive(Debug, Parser)]
#[command(
    name = "higher-auslander",
    version,
    about = "Wide subcategories of higher Auslander algebras of type A"
)]
struct Cli {
    #[command(flatten)]
    config: CliConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
pub struct CliConfig {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,
    /// Characteristic of the prime field used by the oracles.
    #[arg(long = "field", global = true, env = FIELD_ENV, default_value_t = DEFAULT_CHARACTERISTIC as u64)]
    field_char: u64,
    /// Worker threads for counting and verification.
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the indecomposables of M_{n,d} (tuples of V_{n,d}).
    Vertices { n: u32, d: u32 },
    /// The quiver Q^{n,d} (or Q^{n,d-1} with --module-level).
    Quiver {
        n: u32,
        d: u32,
        #[arg(long)]
        dot: bool,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        module_level: bool,
    },
    /// The representation M_X.
    Module { n: u32, d: u32, x: String },
    /// dim Hom(M_X, M_Y).
    Hom {
        n: u32,
        d: u32,
        x: String,
        y: String,
        #[arg(long)]
        oracle: bool,
    },
    /// dim Ext^i(M_X, M_Y), by default i = d.
    Ext {
        n: u32,
        d: u32,
        x: String,
        y: String,
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        degree: Option<usize>,
    },
    /// The exact sequence from M_X to M_Y for X E_Ext Y.
    Sequence { n: u32, d: u32, x: String, y: String },
    /// The resolution of M_X starting at s (default 1).
    Resolution {
        n: u32,
        d: u32,
        x: String,
        #[arg(long, default_value_t = 1)]
        s: u32,
    },
    /// Smallest wide subcategory containing the given indecomposables.
    Closure { n: u32, d: u32, xs: Vec<String> },
    /// Decide whether the given indecomposables form a wide subcategory.
    Recognize { n: u32, d: u32, xs: Vec<String> },
    /// w_{n,d}, the number of wide subcategories.
    Count {
        n: u32,
        d: u32,
        #[arg(long)]
        budget_secs: Option<f64>,
    },
    /// Every non-interlacing collection, one per line.
    Enumerate {
        n: u32,
        d: u32,
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Formula/oracle agreement and exactness checks at (n, d).
    Verify { n: u32, d: u32 },
    /// The table of w_{n,d}; cells over budget are left blank.
    Table {
        #[arg(long, default_value_t = 8)]
        nmax: u32,
        #[arg(long, default_value_t = 7)]
        dmax: u32,
        #[arg(long, default_value_t = 10.0)]
        budget_secs: f64,
    },
}

enum Failure {
    Usage(String),
    Budget(String),
    Mismatch(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded(_) | Error::CapExceeded { .. } => Failure::Budget(e.to_string()),
            Error::NonzeroComposite(_) => Failure::Mismatch(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(format!("write failed: {e}"))
    }
}

type Outcome = std::result::Result<(), Failure>;

/// Parses `argv` (including the program name), runs the command and returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    eprint!("{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(&cli, out) {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("error: {msg}");
            EXIT_BUDGET
        }
        Err(Failure::Mismatch(msg)) => {
            eprintln!("verification failed: {msg}");
            EXIT_MISMATCH
        }
    }
}

fn field_of(cfg: &CliConfig) -> std::result::Result<PrimeField, Failure> {
    Ok(PrimeField::new(cfg.field_char)?)
}

fn category(n: u32, d: u32, cfg: &CliConfig) -> std::result::Result<ModuleCategory, Failure> {
    Ok(ModuleCategory::new(n, d, field_of(cfg)?)?)
}

fn parse_tuple(ctx: Context, text: &str) -> std::result::Result<IncTuple, Failure> {
    Ok(IncTuple::parse(ctx, text)?)
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Outcome {
    let cfg = &cli.config;
    let fmt = cfg.format;
    match &cli.command {
        Command::Vertices { n, d } => {
            let ctx = Context::category(*n, *d)?;
            let tuples = generate_tuples(ctx);
            match fmt {
                Format::Json => writeln!(out, "{}", json_tuples(&tuples))?,
                Format::Tsv => {
                    for t in &tuples {
                        writeln!(out, "{}", t.entries().iter().join("\t"))?;
                    }
                }
                _ => {
                    for t in &tuples {
                        writeln!(out, "{t}")?;
                    }
                }
            }
        }
        Command::Quiver { n, d, dot, json, module_level } => {
            if *d < 1 {
                return Err(Failure::Usage("d must be >= 1".into()));
            }
            let m = if *module_level { d - 1 } else { *d };
            let q = build_quiver(*n, m)?;
            if *dot || fmt == Format::Dot {
                write!(out, "{}", q.to_dot())?;
            } else if *json || fmt == Format::Json {
                writeln!(out, "{}", q.to_json())?;
            } else {
                writeln!(
                    out,
                    "Q^{{{},{}}}: {} vertices, {} arrows, {} relations",
                    n,
                    m,
                    q.vertices().len(),
                    q.arrows().len(),
                    q.relations().len()
                )?;
                for a in q.arrows() {
                    writeln!(out, "{} -> {}\tk={}", a.source.compact(), a.target.compact(), a.coord)?;
                }
                for r in q.relations() {
                    let kind = match r.kind {
                        crate::quiver::RelationKind::Commutativity => "comm",
                        crate::quiver::RelationKind::ZeroComposite => "zero",
                    };
                    writeln!(out, "rho^{}_{}{}\t{}", r.base.compact(), r.k, r.l, kind)?;
                }
            }
        }
        Command::Module { n, d, x } => {
            let cat = category(*n, *d, cfg)?;
            let x = parse_tuple(cat.context(), x)?;
            let module = cat.build_module(&x)?;
            let support = cat.support(&x)?;
            let pi = cat.classify_proj_inj(&x)?;
            if fmt == Format::Json {
                let v = serde_json::json!({
                    "x": x.entries(),
                    "support": support.iter().map(IncTuple::entries).collect::<Vec<_>>(),
                    "dim": module.total_dim(),
                    "projective": pi.projective,
                    "injective": pi.injective,
                });
                writeln!(out, "{v}")?;
            } else {
                writeln!(out, "M_{}: dim {}", x.compact(), module.total_dim())?;
                writeln!(out, "projective: {}, injective: {}", pi.projective, pi.injective)?;
                for v in &support {
                    writeln!(out, "K at {}", v.compact())?;
                }
                let q = cat.quiver();
                for (i, a) in q.arrows().iter().enumerate() {
                    if module.arrow_map(i).rows() == 1 && module.arrow_map(i).cols() == 1 {
                        writeln!(out, "1: {} <- {}", a.source.compact(), a.target.compact())?;
                    }
                }
            }
        }
        Command::Hom { n, d, x, y, oracle } => {
            let cat = category(*n, *d, cfg)?;
            let (x, y) = (parse_tuple(cat.context(), x)?, parse_tuple(cat.context(), y)?);
            let dim = if *oracle { hom_dim_oracle(&cat, &x, &y)? } else { e_hom(&x, &y)? as usize };
            write_dim(out, fmt, dim, *oracle)?;
        }
        Command::Ext { n, d, x, y, oracle, degree } => {
            let cat = category(*n, *d, cfg)?;
            let (x, y) = (parse_tuple(cat.context(), x)?, parse_tuple(cat.context(), y)?);
            let i = degree.unwrap_or(*d as usize);
            if i < 1 || i > *d as usize {
                return Err(Failure::Usage(format!("degree must lie in 1..={d}")));
            }
            // Ext^i(M_x, M_y) is nonzero (for i = d) iff y E_Ext x.
            let dim = if *oracle {
                ext_oracle(&cat, &x, &y, i)?
            } else if i == *d as usize {
                e_ext(&y, &x)? as usize
            } else {
                0
            };
            write_dim(out, fmt, dim, *oracle)?;
        }
        Command::Sequence { n, d, x, y } => {
            let cat = category(*n, *d, cfg)?;
            let (x, y) = (parse_tuple(cat.context(), x)?, parse_tuple(cat.context(), y)?);
            write_complex(out, fmt, &cat.ext_sequence(&x, &y)?)?;
        }
        Command::Resolution { n, d, x, s } => {
            let cat = category(*n, *d, cfg)?;
            let x = parse_tuple(cat.context(), x)?;
            write_complex(out, fmt, &cat.resolution(&x, *s)?)?;
        }
        Command::Closure { n, d, xs } => {
            let ctx = Context::category(*n, *d)?;
            let tuples = xs.iter().map(|x| parse_tuple(ctx, x)).collect::<Result<Vec<_>, _>>()?;
            let c = wide_closure(ctx, &tuples)?;
            match fmt {
                Format::Json => writeln!(out, "{}", c.to_json())?,
                _ => writeln!(out, "{c}")?,
            }
        }
        Command::Recognize { n, d, xs } => {
            let ctx = Context::category(*n, *d)?;
            let tuples: BTreeSet<IncTuple> =
                xs.iter().map(|x| parse_tuple(ctx, x)).collect::<Result<_, _>>()?;
            let found = recognize_wide(ctx, &tuples)?;
            match (fmt, found) {
                (Format::Json, Some(c)) => writeln!(out, "{}", c.to_json())?,
                (Format::Json, None) => writeln!(out, "null")?,
                (_, Some(c)) => writeln!(out, "{c}")?,
                (_, None) => writeln!(out, "not wide")?,
            }
        }
        Command::Count { n, d, budget_secs } => {
            let opts = CountOptions {
                jobs: cfg.jobs,
                budget: budget_secs.map(Duration::from_secs_f64),
                no_memo: false,
            };
            let report = count_wide_with(*n, *d, &opts)?;
            match fmt {
                Format::Json => writeln!(out, "{}", report.to_json())?,
                _ => writeln!(out, "{}", report.count)?,
            }
        }
        Command::Enumerate { n, d, cap } => {
            for c in enumerate_collections(*n, *d, *cap)? {
                match fmt {
                    Format::Json => writeln!(out, "{}", c.to_json())?,
                    _ => writeln!(out, "{c}")?,
                }
            }
        }
        Command::Verify { n, d } => {
            let field = field_of(cfg)?;
            let (grid, exact) = crate::par::with_jobs(cfg.jobs, || {
                Ok::<_, Error>((formula_grid(*n, *d, field)?, exactness_suite(*n, *d, field)?))
            })?;
            if fmt == Format::Json {
                writeln!(out, "{}", serde_json::json!({ "grid": grid, "exactness": exact }))?;
            } else {
                writeln!(out, "field: F_{}", field.characteristic())?;
                writeln!(out, "pairs: {}", grid.pairs)?;
                writeln!(out, "hom mismatches: {}", grid.hom_mismatches.len())?;
                writeln!(out, "ext mismatches: {}", grid.ext_mismatches.len())?;
                writeln!(out, "intermediate ext violations: {}", grid.intermediate_violations.len())?;
                writeln!(out, "extension sequences: {}", exact.sequences)?;
                writeln!(out, "resolutions: {}", exact.resolutions)?;
                writeln!(out, "exactness failures: {}", exact.failures.len())?;
            }
            if !grid.is_clean() || !exact.is_clean() {
                let mut details: Vec<String> = Vec::new();
                details.extend(grid.hom_mismatches.iter().map(|(x, y)| format!("hom({x}; {y})")));
                details.extend(grid.ext_mismatches.iter().map(|(x, y)| format!("ext({x}; {y})")));
                details.extend(
                    grid.intermediate_violations.iter().map(|(x, y, i)| format!("ext^{i}({y}; {x})")),
                );
                details.extend(exact.failures.iter().cloned());
                return Err(Failure::Mismatch(details.join(", ")));
            }
        }
        Command::Table { nmax, dmax, budget_secs } => {
            write_table(out, cfg, *nmax, *dmax, *budget_secs)?;
        }
    }
    Ok(())
}

fn json_tuples(tuples: &[IncTuple]) -> String {
    serde_json::to_string(&tuples.iter().map(IncTuple::entries).collect::<Vec<_>>()).expect("json")
}

fn write_dim(out: &mut dyn Write, fmt: Format, dim: usize, oracle: bool) -> Outcome {
    if fmt == Format::Json {
        let method = if oracle { "oracle" } else { "formula" };
        writeln!(out, "{}", serde_json::json!({ "dim": dim, "method": method }))?;
    } else {
        writeln!(out, "{dim}")?;
    }
    Ok(())
}

fn write_complex(out: &mut dyn Write, fmt: Format, c: &RepComplex) -> Outcome {
    if fmt == Format::Json {
        writeln!(out, "{}", c.to_json())?;
        return Ok(());
    }
    let terms: Vec<String> =
        c.terms.iter().map(|t| t.summands.iter().map(|z| format!("M_{}", z.compact())).join(" + ")).collect();
    writeln!(out, "0 -> {} -> 0", terms.join(" -> "))?;
    Ok(())
}

fn write_table(out: &mut dyn Write, cfg: &CliConfig, nmax: u32, dmax: u32, budget: f64) -> Outcome {
    let mut header = std::iter::once("d".to_string()).chain((1..=nmax).map(|n| format!("w_{n},d")));
    writeln!(out, "{}", header.join("\t"))?;
    for d in 1..=dmax {
        let mut row = vec![d.to_string()];
        let mut timed_out = false;
        for n in 1..=nmax {
            if timed_out {
                row.push(String::new());
                continue;
            }
            let opts = CountOptions {
                jobs: cfg.jobs,
                budget: Some(Duration::from_secs_f64(budget)),
                no_memo: false,
            };
            match count_wide_with(n, d, &opts) {
                Ok(r) => row.push(r.count.to_string()),
                Err(Error::BudgetExceeded(_)) => {
                    // Counts grow with n, so the rest of the row would time out as well.
                    timed_out = true;
                    row.push(String::new());
                }
                Err(e) => return Err(e.into()),
            }
        }
        writeln!(out, "{}", row.join("\t"))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String) {
        let mut buf = Vec::new();
        let argv = std::iter::once("higher-auslander").chain(args.iter().copied());
        let code = run(argv, &mut buf);
        (code, String::from_utf8(buf).unwrap())
    }

    #[test]
    fn spec_examples() {
        assert_eq!(run_str(&["count", "3", "2"]), (0, "47\n".into()));
        assert_eq!(run_str(&["closure", "4", "2", "1,3,6", "2,4,6"]), (0, "{{1,2,3,4,6}}\n".into()));
        assert_eq!(run_str(&["hom", "4", "2", "2,4,6", "1,3,6"]), (0, "0\n".into()));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_str(&["bogus"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["hom", "4", "2", "2,4", "1,3,6"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["hom", "4", "2", "1,3,6", "2,4,6", "--field", "4"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["enumerate", "3", "1", "--cap", "10"]).0, EXIT_BUDGET);
        assert_eq!(run_str(&["count", "6", "2", "--budget-secs", "0"]).0, EXIT_BUDGET);
        assert_eq!(run_str(&["sequence", "3", "1", "2,4", "1,3"]).0, EXIT_USAGE);
    }

    #[test]
    fn oracle_flags_agree() {
        assert_eq!(run_str(&["hom", "4", "2", "1,3,6", "2,4,6", "--oracle"]).1, "1\n");
        assert_eq!(run_str(&["ext", "4", "2", "2,4,6", "1,3,5"]).1, "1\n");
        assert_eq!(run_str(&["ext", "4", "2", "2,4,6", "1,3,5", "--oracle"]).1, "1\n");
        assert_eq!(run_str(&["ext", "4", "2", "2,4,6", "1,3,5", "--oracle", "--degree", "1"]).1, "0\n");
    }

    #[test]
    fn sequence_and_resolution_text() {
        assert_eq!(run_str(&["sequence", "2", "1", "1,2", "2,3"]).1, "0 -> M_12 -> M_13 -> M_23 -> 0\n");
        assert_eq!(
            run_str(&["resolution", "4", "2", "2,4,6"]).1,
            "0 -> M_124 -> M_126 -> M_146 -> M_246 -> 0\n"
        );
    }

    #[test]
    fn verify_passes() {
        let (code, text) = run_str(&["verify", "3", "2", "--field", "2"]);
        assert_eq!(code, 0, "{text}");
        assert!(text.contains("hom mismatches: 0"));
    }

    #[test]
    fn table_small() {
        let (code, text) = run_str(&["table", "--nmax", "3", "--dmax", "2", "--budget-secs", "30"]);
        assert_eq!(code, 0);
        assert_eq!(text, "d\tw_1,d\tw_2,d\tw_3,d\n1\t2\t5\t14\n2\t2\t8\t47\n");
    }
}
