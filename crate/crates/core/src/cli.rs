//! The `permsort` command line.
//!
//! Exit status: 0 on success, 1 when a verification or comparison fails,
//! 2 for usage errors and invalid input.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::enumerate::{self, DescentTable, SuiteReport, TableCache};
use crate::error::{Error, Result};
use crate::patterns::{contains_barred, PatternSpec};
use crate::perm::{Permutation, Sorter};
use crate::polyalg::{self, IntPolynomial, RootReport};
use crate::trees;
use crate::zigzag;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "permsort", version, about = "Stack and revstack sorting of permutations")]
struct Cli {
    /// Output format; csv applies to tables only.
    #[arg(long, value_enum, global = true, default_value_t = Format::Plain)]
    format: Format,
    /// Worker threads for enumeration (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Directory for cached descent tables (overrides PERMSORT_CACHE_DIR).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SorterArg {
    Stack,
    Revstack,
}

impl From<SorterArg> for Sorter {
    fn from(s: SorterArg) -> Self {
        match s {
            SorterArg::Stack => Sorter::Stack,
            SorterArg::Revstack => Sorter::Revstack,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Op {
    Stack,
    Revstack,
    Reverse,
    /// Descent-complementing duality map.
    F,
    /// Duality map composed with reversal.
    G,
    /// Descent-raising injection.
    H,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PolyKind {
    Eulerian,
    Narayana,
    D,
    L,
    #[value(name = "revstack-1")]
    Revstack1,
    #[value(name = "revstack-nm2")]
    RevstackNm2,
    #[value(name = "revstack-nm3")]
    RevstackNm3,
    /// Row `t` of the enumerated descent table.
    Table,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Suite {
    Steingrimsson,
    Theorems,
    Classification,
    Conjectures,
    Inequalities,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CountKind {
    #[value(name = "revstack-nm2")]
    RevstackNm2,
    #[value(name = "revstack-nm3")]
    RevstackNm3,
    #[value(name = "stack-nm2")]
    StackNm2,
    #[value(name = "stack-nm3")]
    StackNm3,
    #[value(name = "zigzag-free")]
    ZigzagFree,
    #[value(name = "uninterrupted-zigzag-free")]
    UninterruptedZigzagFree,
}

#[derive(Args, Debug)]
struct PermArg {
    /// Permutation, e.g. "4 2 5 1 3" or 42513.
    perm: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Apply an operator to a permutation.
    Sort {
        #[arg(long, value_enum)]
        op: Op,
        #[arg(long, default_value_t = 1)]
        times: usize,
        #[command(flatten)]
        perm: PermArg,
    },
    /// Number of passes needed to sort.
    Degree {
        #[arg(long, value_enum, default_value_t = SorterArg::Revstack)]
        sorter: SorterArg,
        #[command(flatten)]
        perm: PermArg,
    },
    /// Pattern containment; mark a barred letter with `!`, e.g. "2 4 1 5! 3".
    Pattern {
        #[arg(long)]
        pattern: String,
        #[command(flatten)]
        perm: PermArg,
    },
    /// Lexicographically largest k-zigzag.
    Zigzag {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        uninterrupted: bool,
        #[command(flatten)]
        perm: PermArg,
    },
    /// Closed-form or enumerated polynomials.
    Poly {
        #[arg(long, value_enum)]
        kind: PolyKind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: Option<usize>,
        #[arg(long, value_enum, default_value_t = SorterArg::Revstack)]
        sorter: SorterArg,
    },
    /// Full descent table by exhaustive enumeration.
    Table {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = SorterArg::Revstack)]
        sorter: SorterArg,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long)]
        n: usize,
    },
    /// Real roots of a polynomial.
    Roots {
        /// Comma-separated coefficients, constant term first.
        #[arg(long, conflicts_with_all = ["n", "t"])]
        coeffs: Option<String>,
        #[arg(long, requires = "t")]
        n: Option<usize>,
        #[arg(long, requires = "n")]
        t: Option<usize>,
        /// Isolating interval width, e.g. 1e-9 or 1/1000.
        #[arg(long, default_value = "1e-9")]
        width: String,
    },
    /// Closed-form or enumerated counts.
    Count {
        #[arg(long, value_enum)]
        kind: CountKind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Recompute the published table of descent polynomials and roots.
    Appendix {
        /// Golden JSON file; defaults to the copy built into the binary.
        #[arg(long)]
        golden: Option<PathBuf>,
        #[arg(long, default_value_t = 8)]
        max_n: usize,
    },
}

struct Ctx<'a> {
    format: Format,
    jobs: usize,
    cache: TableCache,
    out: &'a mut dyn Write,
}

enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type CliResult = std::result::Result<i32, Failure>;

/// Parses `args` (program name first) and runs the command, writing
/// results to stdout and diagnostics to stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

/// As [`run`], with explicit output streams.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
            } else {
                let _ = out.write_all(text.as_bytes());
            }
            return code;
        }
    };
    let mut ctx = Ctx {
        format: cli.format,
        jobs: cli.jobs.unwrap_or_else(enumerate::default_jobs).max(1),
        cache: TableCache::new(enumerate::resolve_cache_dir(cli.cache_dir.as_deref())),
        out,
    };
    match dispatch(&mut ctx, cli.command) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Lib(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

impl Ctx<'_> {
    fn no_csv(&self) -> std::result::Result<(), Failure> {
        if self.format == Format::Csv {
            return Err(usage("csv output is only available for tables"));
        }
        Ok(())
    }

    fn emit(&mut self, plain: &str, json: &impl Serialize) -> std::result::Result<(), Failure> {
        let text = match self.format {
            Format::Json => serde_json::to_string(json).map_err(Error::from)? + "\n",
            _ => plain.to_string(),
        };
        self.out.write_all(text.as_bytes()).map_err(Error::from)?;
        Ok(())
    }

    fn table(&self, n: usize, sorter: Sorter) -> Result<DescentTable> {
        self.cache.get_or_compute(n, sorter, self.jobs)
    }
}

fn parse_perm(s: &str) -> std::result::Result<Permutation, Failure> {
    s.parse().map_err(|e: Error| usage(format!("invalid permutation {s:?}: {e}")))
}

fn dispatch(ctx: &mut Ctx<'_>, command: Command) -> CliResult {
    if !matches!(command, Command::Table { .. }) {
        ctx.no_csv()?;
    }
    match command {
        Command::Sort { op, times, perm } => cmd_sort(ctx, op, times, &perm.perm),
        Command::Degree { sorter, perm } => {
            let pi = parse_perm(&perm.perm)?;
            let d = pi.deg(sorter.into()).value();
            ctx.emit(&format!("{d}\n"), &serde_json::json!({ "degree": d }))?;
            Ok(EXIT_OK)
        }
        Command::Pattern { pattern, perm } => {
            let pi = parse_perm(&perm.perm)?;
            let spec: PatternSpec = pattern
                .parse()
                .map_err(|e: Error| usage(format!("invalid pattern {pattern:?}: {e}")))?;
            let occ = contains_barred(&pi, &spec);
            let plain = match &occ {
                Some(o) => format!(
                    "contains {spec} at positions {} (values {})\n",
                    join(&o.positions),
                    join(&o.values)
                ),
                None => format!("avoids {spec}\n"),
            };
            ctx.emit(&plain, &serde_json::json!({ "contains": occ.is_some(), "occurrence": occ }))?;
            Ok(EXIT_OK)
        }
        Command::Zigzag { k, uninterrupted, perm } => {
            let pi = parse_perm(&perm.perm)?;
            let z = if uninterrupted {
                zigzag::find_uninterrupted_zigzag(&pi, k)
            } else {
                zigzag::find_zigzag(&pi, k)
            };
            let plain = match &z {
                Some(z) => format!(
                    "{} ({})\n",
                    join(&z.values),
                    if z.interrupted { "interrupted" } else { "uninterrupted" }
                ),
                None => "none\n".to_string(),
            };
            ctx.emit(&plain, &z)?;
            Ok(EXIT_OK)
        }
        Command::Poly { kind, n, t, sorter } => {
            let p = poly_of(ctx, kind, n, t, sorter.into())?;
            ctx.emit(&format!("{p}\n"), &p)?;
            Ok(EXIT_OK)
        }
        Command::Table { n, sorter } => {
            let table = ctx.table(n, sorter.into())?;
            let text = match ctx.format {
                Format::Plain => table.to_plain(),
                Format::Json => table.to_json() + "\n",
                Format::Csv => table.to_csv(),
            };
            ctx.out.write_all(text.as_bytes()).map_err(Error::from)?;
            Ok(EXIT_OK)
        }
        Command::Verify { suite, n } => cmd_verify(ctx, suite, n),
        Command::Roots { coeffs, n, t, width } => {
            let width = parse_width(&width)?;
            let p = match (coeffs, n, t) {
                (Some(c), _, _) => parse_coeffs(&c)?,
                (None, Some(n), Some(t)) => table_row(ctx, n, t, Sorter::Revstack)?,
                _ => return Err(usage("roots needs --coeffs or both --n and --t")),
            };
            if p.is_zero() {
                return Err(usage("the zero polynomial has no isolated roots"));
            }
            let report = polyalg::real_roots(&p, &width);
            ctx.emit(&roots_plain(&report), &report)?;
            Ok(EXIT_OK)
        }
        Command::Count { kind, n, k } => {
            let value: BigInt = match kind {
                CountKind::RevstackNm2 => polyalg::count_revstack_nm2(n)?,
                CountKind::RevstackNm3 => polyalg::count_revstack_nm3(n)?,
                CountKind::StackNm2 => polyalg::count_stack_nm2(n)?,
                CountKind::StackNm3 => polyalg::count_stack_nm3(n)?,
                CountKind::ZigzagFree | CountKind::UninterruptedZigzagFree => {
                    let k = k.ok_or_else(|| usage("zigzag counts need --k"))?;
                    let unint = matches!(kind, CountKind::UninterruptedZigzagFree);
                    enumerate::count_zigzag_free(n, k, unint, ctx.jobs)?.into()
                }
            };
            ctx.emit(&format!("{value}\n"), &serde_json::json!({ "count": value.to_string() }))?;
            Ok(EXIT_OK)
        }
        Command::Appendix { golden, max_n } => {
            let entries = match &golden {
                Some(path) => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
                    enumerate::parse_golden(&text)
                        .map_err(|e| usage(format!("invalid golden file {}: {e}", path.display())))?
                }
                None => enumerate::golden_appendix(),
            };
            let report = enumerate::reproduce_appendix(&entries, max_n, ctx.jobs, Some(&ctx.cache))?;
            let mut plain = String::new();
            for m in &report.mismatches {
                let idx = m.index.map(|i| format!("[{i}]")).unwrap_or_default();
                let _ = writeln!(
                    plain,
                    "mismatch n={} t={} {}{idx}: expected {} got {}",
                    m.n, m.t, m.kind, m.expected, m.got
                );
            }
            let _ = writeln!(
                plain,
                "{} entries checked for n <= {}: {}",
                report.entries_checked,
                report.max_n,
                if report.holds { "all match" } else { "MISMATCH" }
            );
            ctx.emit(&plain, &report)?;
            Ok(if report.holds { EXIT_OK } else { EXIT_FAILED })
        }
    }
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn cmd_sort(ctx: &mut Ctx<'_>, op: Op, times: usize, perm: &str) -> CliResult {
    let mut pi = parse_perm(perm)?;
    let mut h_info = Vec::new();
    for _ in 0..times {
        pi = match op {
            Op::Stack => pi.stack_sort(),
            Op::Revstack => pi.revstack_sort(),
            Op::Reverse => pi.reverse(),
            Op::F => trees::duality_f(&pi),
            Op::G => trees::g_map(&pi),
            Op::H => {
                let h = trees::injection_h(&pi)?;
                h_info.push(serde_json::json!({ "index": h.index, "flipped": h.flipped }));
                h.image
            }
        };
    }
    let json = if matches!(op, Op::H) {
        serde_json::json!({ "permutation": pi, "steps": h_info })
    } else {
        serde_json::json!({ "permutation": pi })
    };
    ctx.emit(&format!("{pi}\n"), &json)?;
    Ok(EXIT_OK)
}

fn table_row(ctx: &Ctx<'_>, n: usize, t: usize, sorter: Sorter) -> std::result::Result<IntPolynomial, Failure> {
    if t >= n {
        return Err(usage(format!("--t must be below n = {n}")));
    }
    Ok(ctx.table(n, sorter)?.row(t))
}

fn poly_of(
    ctx: &Ctx<'_>,
    kind: PolyKind,
    n: usize,
    t: Option<usize>,
    sorter: Sorter,
) -> std::result::Result<IntPolynomial, Failure> {
    Ok(match kind {
        PolyKind::Eulerian => polyalg::eulerian_poly(n),
        PolyKind::Narayana => {
            if n == 0 {
                return Err(usage("narayana needs n >= 1"));
            }
            polyalg::narayana_poly(n)
        }
        PolyKind::D => polyalg::d_poly(n)?,
        PolyKind::L => polyalg::l_poly(n)?,
        PolyKind::Revstack1 => {
            if n == 0 {
                return Err(usage("revstack-1 needs n >= 1"));
            }
            polyalg::w_revstack_1(n)
        }
        PolyKind::RevstackNm2 => polyalg::w_revstack_nm2(n)?,
        PolyKind::RevstackNm3 => polyalg::w_revstack_nm3(n)?,
        PolyKind::Table => {
            let t = t.ok_or_else(|| usage("--kind table needs --t"))?;
            table_row(ctx, n, t, sorter)?
        }
    })
}

fn suite_plain(report: &SuiteReport) -> String {
    let mut s = String::new();
    for c in &report.checks {
        let _ = write!(s, "{} {} ({} cases)", if c.passed { "PASS" } else { "FAIL" }, c.name, c.cases);
        if let Some(ce) = &c.counterexample {
            let _ = write!(s, ": {ce}");
        }
        s.push('\n');
    }
    let _ = writeln!(
        s,
        "suite {} at n = {}: {}",
        report.suite,
        report.n,
        if report.holds { "all checks pass" } else { "FAILED" }
    );
    s
}

fn cmd_verify(ctx: &mut Ctx<'_>, suite: Suite, n: usize) -> CliResult {
    let holds = match suite {
        Suite::Steingrimsson => {
            enumerate_size(n)?;
            let s = ctx.table(n, Sorter::Stack)?;
            let t = ctx.table(n, Sorter::Revstack)?;
            let report = enumerate::SteingrimssonReport::from_tables(&s, &t);
            let mut plain = String::from("t\tstack\trevstack\trelation\n");
            for r in &report.rows {
                let rel = if r.stack == r.revstack {
                    "="
                } else if r.stack < r.revstack {
                    "<"
                } else {
                    ">"
                };
                let _ = writeln!(
                    plain,
                    "{}\t{}\t{}\t{rel}{}",
                    r.t,
                    r.stack,
                    r.revstack,
                    if r.ok { "" } else { "  (unexpected)" }
                );
            }
            let _ = writeln!(plain, "{}", if report.holds { "holds" } else { "FAILED" });
            ctx.emit(&plain, &report)?;
            report.holds
        }
        Suite::Theorems => {
            let report = enumerate::verify_theorems(n, ctx.jobs)?;
            ctx.emit(&suite_plain(&report), &report)?;
            report.holds
        }
        Suite::Conjectures => {
            enumerate_size(n)?;
            let report = enumerate::verify_conjectures_on(&ctx.table(n, Sorter::Revstack)?)?;
            ctx.emit(&suite_plain(&report), &report)?;
            report.holds
        }
        Suite::Inequalities => {
            let report = enumerate::verify_inequalities(n)?;
            ctx.emit(&suite_plain(&report), &report)?;
            report.holds
        }
        Suite::Classification => {
            let report = enumerate::classify_degree_nm2(n, ctx.jobs)?;
            let mut plain = String::new();
            for c in &report.classes {
                let _ = writeln!(
                    plain,
                    "{} {}: {} permutations{}, W = {}",
                    if c.matches { "PASS" } else { "FAIL" },
                    c.name,
                    c.size,
                    if c.empty { " (empty)" } else { "" },
                    c.polynomial
                );
            }
            let _ = writeln!(
                plain,
                "degree {} permutations: {}; overlaps {}, missed {}, strays {}: {}",
                n - 2,
                report.degree_nm2,
                report.overlaps,
                report.missed,
                report.strays,
                if report.holds { "classification holds" } else { "FAILED" }
            );
            ctx.emit(&plain, &report)?;
            report.holds
        }
    };
    Ok(if holds { EXIT_OK } else { EXIT_FAILED })
}

fn enumerate_size(n: usize) -> std::result::Result<(), Failure> {
    if n == 0 || n > enumerate::MAX_N {
        return Err(usage(format!("n must be in 1..={}", enumerate::MAX_N)));
    }
    Ok(())
}

fn roots_plain(report: &RootReport) -> String {
    let mut s = String::new();
    for r in &report.roots {
        let _ = write!(s, "{}", r.approx_5());
        if r.multiplicity > 1 {
            let _ = write!(s, " (multiplicity {})", r.multiplicity);
        }
        s.push('\n');
    }
    let _ = writeln!(s, "all real: {}, nonpositive: {}", report.all_real, report.nonpositive);
    s
}

fn parse_coeffs(s: &str) -> std::result::Result<IntPolynomial, Failure> {
    let coeffs = s
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<BigInt>().map_err(|_| usage(format!("bad coefficient {t:?}"))))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    Ok(IntPolynomial::new(coeffs))
}

/// Exact positive rational from `a/b`, a decimal, or scientific notation.
fn parse_width(s: &str) -> std::result::Result<BigRational, Failure> {
    let bad = || usage(format!("invalid width {s:?}"));
    let value = if let Some((a, b)) = s.split_once('/') {
        let a: BigInt = a.trim().parse().map_err(|_| bad())?;
        let b: BigInt = b.trim().parse().map_err(|_| bad())?;
        if b.is_zero() {
            return Err(bad());
        }
        BigRational::new(a, b)
    } else {
        let (mantissa, exp) = match s.split_once(['e', 'E']) {
            Some((m, e)) => (m, e.parse::<i32>().map_err(|_| bad())?),
            None => (s, 0),
        };
        let (int, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
        if int.is_empty() && frac.is_empty() {
            return Err(bad());
        }
        let digits: BigInt = format!("{int}{frac}").parse().map_err(|_| bad())?;
        let ten = BigRational::from_integer(BigInt::from(10));
        let scale = exp - frac.len() as i32;
        let mut v = BigRational::from_integer(digits);
        let factor = (0..scale.unsigned_abs()).fold(BigRational::one(), |acc, _| acc * &ten);
        if scale >= 0 {
            v *= factor;
        } else {
            v /= factor;
        }
        v
    };
    if !value.is_positive() {
        return Err(usage("width must be positive"));
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("permsort").chain(args.iter().copied());
        let code = run_with(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn width_parsing() {
        let q = |a: i64, b: i64| BigRational::new(BigInt::from(a), BigInt::from(b));
        assert!(matches!(parse_width("1e-9"), Ok(w) if w == q(1, 1_000_000_000)));
        assert!(matches!(parse_width("0.25"), Ok(w) if w == q(1, 4)));
        assert!(matches!(parse_width("1/1000"), Ok(w) if w == q(1, 1000)));
        assert!(matches!(parse_width("2E1"), Ok(w) if w == q(20, 1)));
        assert!(parse_width("0").is_err());
        assert!(parse_width("-1").is_err());
        assert!(parse_width("abc").is_err());
    }

    #[test]
    fn basic_verbs() {
        assert_eq!(run_capture(&["sort", "--op", "revstack", "4 2 5 1 3"]).1, "1 3 2 4 5\n");
        assert_eq!(run_capture(&["degree", "1 2 3"]).1, "0\n");
        assert_eq!(run_capture(&["bogus"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["degree", "1 1 2"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["--format", "csv", "degree", "1 2"]).0, EXIT_USAGE);
    }
}
