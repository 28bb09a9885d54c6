use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use schubice::exactpoly::{parse_rational, LaurentPoly, Rational, RenderFormat, Variable};
use schubice::partitionfn::{
    closed_form, f_brute, two_point, verify, ClosedFormCertificate, PartitionFunctionQuery, Suite,
};
use schubice::permutation::{Code, Permutation};
use schubice::schubert::{
    at_zero_negated_y, newton_expand, schubert, shift_y, specialize_x_to_y, SchubertCache,
};
use schubice::shapes::{PartitionShape, SkewShape};
use schubice::staircase::{
    asm_to_staircase, canonical_completion, column_ribbon_bijection, enumerate_staircases,
    level_sequence_or_empty, p_map, ribbon_to_column, staircase_to_asm, AsmMatrix, Column,
    Staircase, ENUM_CAP_ENV,
};

const EXIT_DOMAIN: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_VERIFY_FAILED: u8 = 3;

/// Staircases, alternating sign matrices and double Schubert polynomials.
#[derive(Parser)]
#[command(name = "schubice", version)]
#[command(
    after_help = "Columns and permutations are comma-separated integers, e.g. 5,3,2.\n\
The enumeration cap can be set with SCHUBICE_ENUM_CAP (default 10000000)."
)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List staircases between two columns, or all ASMs of a given size.
    Enumerate(EnumerateArgs),
    /// Partition function of a set of staircases.
    Pf(PfArgs),
    /// Double Schubert polynomial of a permutation or code.
    Schubert(SchubertArgs),
    /// Conversions between ASMs, staircases, columns, ribbons and codes.
    Convert(ConvertArgs),
    /// Substitute values into a polynomial.
    Specialize(SpecializeArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Print a polynomial in another format.
    Render(RenderArgs),
}

#[derive(Args)]
struct EnumerateArgs {
    /// First column is [n,...,1].
    #[arg(long, value_name = "N", conflicts_with = "first")]
    full: Option<u32>,
    /// First column.
    #[arg(long, value_parser = parse_column)]
    first: Option<Column>,
    /// Last column (default: empty).
    #[arg(long, value_parser = parse_column)]
    last: Option<Column>,
    /// Largest allowed entry (default: the first column's top entry).
    #[arg(long)]
    n: Option<u32>,
    /// Only print the number of objects.
    #[arg(long)]
    count: bool,
    /// Also print each staircase's weight.
    #[arg(long)]
    weights: bool,
    /// List the n x n alternating sign matrices instead.
    #[arg(long, value_name = "N", conflicts_with_all = ["full", "first", "last", "weights"])]
    asms: Option<u32>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Brute,
    Closed,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Latex,
}

impl From<Format> for RenderFormat {
    fn from(f: Format) -> RenderFormat {
        match f {
            Format::Text => RenderFormat::Text,
            Format::Latex => RenderFormat::Latex,
        }
    }
}

#[derive(Args)]
struct PfArgs {
    /// F(n, last): staircases starting at [n,...,1].
    #[arg(long, value_name = "N", conflicts_with = "first")]
    full: Option<u32>,
    /// First column of F(first, last).
    #[arg(long, value_parser = parse_column, required_unless_present = "full")]
    first: Option<Column>,
    /// Last column (default: empty).
    #[arg(long, value_parser = parse_column)]
    last: Option<Column>,
    /// Largest entry for two-column queries (default: the first column's top entry).
    #[arg(long)]
    n: Option<u32>,
    #[arg(long, value_enum, default_value = "brute")]
    method: Method,
    /// Variables attached to the column steps, e.g. z1,z2.
    #[arg(long, value_delimiter = ',', value_parser = parse_variable)]
    vars: Option<Vec<Variable>>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct SchubertArgs {
    /// Permutation in one-line notation.
    #[arg(long, value_parser = parse_perm, conflicts_with = "code")]
    perm: Option<Permutation>,
    /// Lehmer code.
    #[arg(long, value_parser = parse_code)]
    code: Option<Code>,
    /// Set x = 0 and y_i = -y_i.
    #[arg(long)]
    at_zero_negated_y: bool,
    /// Replace every y_i by y_{i+k}.
    #[arg(long, value_name = "K", default_value_t = 0)]
    shift_y: u32,
    /// Expand a polynomial in x1..xN on the Schubert basis instead.
    #[arg(long, value_name = "POLY", conflicts_with_all = ["perm", "code"], requires = "n")]
    expand: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct ConvertArgs {
    /// ASM file (JSON rows or whitespace-separated rows; `-` for stdin) to staircase.
    #[arg(long, value_name = "FILE", group = "input")]
    asm: Option<String>,
    /// Full staircase (JSON list of columns, inline or `@file`) to ASM.
    #[arg(long, value_name = "JSON", group = "input")]
    staircase: Option<String>,
    /// Staircase (JSON) to complete into a full one; needs --n.
    #[arg(long, value_name = "JSON", group = "input", requires = "n")]
    complete: Option<String>,
    /// Column to ribbon; needs --under and --n.
    #[arg(long, value_parser = parse_column, group = "input", requires_all = ["under", "n"])]
    column: Option<Column>,
    /// Ribbon `outer/inner` to column; needs --under and --n.
    #[arg(long, value_name = "OUTER/INNER", group = "input", requires_all = ["under", "n"])]
    ribbon: Option<String>,
    /// Permutation to code, reduced word and class.
    #[arg(long, value_parser = parse_perm, group = "input")]
    perm: Option<Permutation>,
    /// Code to permutation.
    #[arg(long, value_parser = parse_code, group = "input")]
    code: Option<Code>,
    /// Column to its level sequence and partition p(u, n); needs --n.
    #[arg(long, value_parser = parse_column, group = "input", requires = "n")]
    levels: Option<Column>,
    /// The right-hand column for --column and --ribbon.
    #[arg(long, value_parser = parse_column)]
    under: Option<Column>,
    #[arg(long)]
    n: Option<u32>,
}

#[derive(Args)]
struct SpecializeArgs {
    /// Polynomial (`-` for stdin).
    #[arg(long)]
    poly: String,
    /// x_i, z_i -> 2 and y_i -> 1.
    #[arg(long, conflicts_with_all = ["set", "x_to_y", "zero_negated_y"])]
    two: bool,
    /// Assignments such as x1=2,y3=1/2.
    #[arg(long, value_delimiter = ',')]
    set: Vec<String>,
    /// x_i -> y_i.
    #[arg(long, conflicts_with = "zero_negated_y")]
    x_to_y: bool,
    /// x_i -> 0, y_i -> -y_i.
    #[arg(long)]
    zero_negated_y: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value = "all", value_parser = Suite::NAMES)]
    suite: String,
    #[arg(long, default_value_t = 4)]
    max_n: u32,
    /// Print every case, not only failures.
    #[arg(long)]
    verbose: bool,
}

#[derive(Args)]
struct RenderArgs {
    /// Polynomial (`-` for stdin).
    #[arg(long)]
    poly: String,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

fn strip_brackets(s: &str) -> &str {
    let s = s.trim();
    s.strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .unwrap_or(s)
}

fn parse_list(s: &str) -> Result<Vec<u32>, String> {
    let inner = strip_brackets(s);
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|p| p.trim().parse::<u32>().map_err(|e| format!("`{p}`: {e}")))
        .collect()
}

fn parse_column(s: &str) -> Result<Column, String> {
    Column::new(parse_list(s)?).map_err(|e| e.to_string())
}

fn parse_perm(s: &str) -> Result<Permutation, String> {
    Permutation::new(parse_list(s)?).map_err(|e| e.to_string())
}

fn parse_code(s: &str) -> Result<Code, String> {
    Ok(Code::new(parse_list(s)?))
}

fn parse_variable(s: &str) -> Result<Variable, String> {
    s.trim().parse::<Variable>().map_err(|e| e.to_string())
}

fn read_source(arg: &str) -> Result<String> {
    if arg == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else if let Some(path) = arg.strip_prefix('@') {
        fs::read_to_string(path).with_context(|| format!("reading {path}"))
    } else {
        Ok(arg.to_string())
    }
}

fn parse_poly(arg: &str) -> Result<LaurentPoly> {
    let text = read_source(arg)?;
    Ok(LaurentPoly::parse(text.trim())?)
}

fn parse_asm(text: &str) -> Result<AsmMatrix> {
    let rows: Vec<Vec<i8>> = if text.trim_start().starts_with('[') {
        serde_json::from_str(text)?
    } else {
        text.lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| {
                l.split(|c: char| c.is_whitespace() || c == ',')
                    .filter(|t| !t.is_empty())
                    .map(|t| t.parse::<i8>().map_err(|e| anyhow!("`{t}`: {e}")))
                    .collect()
            })
            .collect::<Result<_>>()?
    };
    Ok(AsmMatrix::new(rows)?)
}

fn parse_staircase(arg: &str) -> Result<Staircase> {
    let text = read_source(arg)?;
    let columns: Vec<Vec<u32>> = serde_json::from_str(text.trim())
        .context("staircases are JSON lists of columns, e.g. [[3,2,1],[3,1],[2]]")?;
    Ok(Staircase::from_lists(&columns)?)
}

struct Output {
    json: bool,
    out: io::StdoutLock<'static>,
}

impl Output {
    fn emit<T: Serialize>(&mut self, value: &T, text: impl FnOnce() -> String) -> Result<()> {
        if self.json {
            serde_json::to_writer_pretty(&mut self.out, value)?;
            writeln!(self.out)?;
        } else {
            let t = text();
            if !t.is_empty() {
                writeln!(self.out, "{t}")?;
            }
        }
        Ok(())
    }
}

fn first_and_last(
    full: Option<u32>,
    first: Option<Column>,
    last: Option<Column>,
) -> Result<(Column, Column, bool)> {
    let last = last.unwrap_or_default();
    match (full, first) {
        (Some(n), _) => Ok((Column::full(n), last, true)),
        (None, Some(u)) => Ok((u, last, false)),
        (None, None) => bail!("one of --full or --first is required"),
    }
}

fn run_enumerate(args: EnumerateArgs, out: &mut Output) -> Result<()> {
    if let Some(n) = args.asms {
        let asms = AsmMatrix::all(n as usize);
        if args.count {
            return out.emit(&asms.len(), || asms.len().to_string());
        }
        return out.emit(&asms, || {
            asms.iter()
                .map(|a| a.to_string())
                .collect::<Vec<_>>()
                .join("\n\n")
        });
    }
    let (first, last, _) = first_and_last(args.full, args.first, args.last)?;
    let n = args.n.unwrap_or(first.top());
    let vars: Vec<Variable> = (1..first.len() as u32).map(Variable::x).collect();
    let mut items = Vec::new();
    let mut count = 0u64;
    for t in enumerate_staircases(&first, &last, n)? {
        let t = t?;
        count += 1;
        if args.count {
            continue;
        }
        let weight = if args.weights {
            Some(t.weight(&vars[..t.columns().len() - 1])?)
        } else {
            None
        };
        items.push((t, weight));
    }
    if args.count {
        return out.emit(&count, || count.to_string());
    }
    let records: Vec<_> = items
        .iter()
        .map(|(t, w)| json!({"staircase": t, "weight": w}))
        .collect();
    out.emit(&records, || {
        items
            .iter()
            .map(|(t, w)| match w {
                Some(w) => format!("{t}  {w}"),
                None => t.to_string(),
            })
            .collect::<Vec<_>>()
            .join("\n")
    })
}

fn build_query(args: &PfArgs) -> Result<PartitionFunctionQuery> {
    let (first, last, full) = first_and_last(args.full, args.first.clone(), args.last.clone())?;
    let q = if full {
        PartitionFunctionQuery::full_to_column(first.len() as u32, last)?
    } else if last.is_empty() {
        if args.n.is_some_and(|n| n < first.top()) {
            bail!("--n is smaller than the first column's top entry");
        }
        PartitionFunctionQuery::column_to_empty(first)?
    } else {
        let n = args.n.unwrap_or(first.top());
        PartitionFunctionQuery::column_to_column(first, last, n)?
    };
    match &args.vars {
        Some(vars) => Ok(q.with_variables(vars.clone())?),
        None => Ok(q),
    }
}

#[derive(Serialize)]
struct PfOutput {
    query: PartitionFunctionQuery,
    #[serde(skip_serializing_if = "Option::is_none")]
    brute: Option<LaurentPoly>,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<ClosedFormCertificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    agree: Option<bool>,
}

fn run_pf(args: PfArgs, out: &mut Output) -> Result<()> {
    let q = build_query(&args)?;
    let brute = matches!(args.method, Method::Brute | Method::Both)
        .then(|| f_brute(&q))
        .transpose()?;
    let certificate = matches!(args.method, Method::Closed | Method::Both)
        .then(|| closed_form(&q))
        .transpose()?;
    let agree = match (&brute, &certificate) {
        (Some(b), Some(c)) => Some(*b == c.assembled),
        _ => None,
    };
    let format: RenderFormat = args.format.into();
    let text = || {
        let mut lines = Vec::new();
        match (&brute, &certificate) {
            (Some(b), None) => lines.push(b.render(format)),
            (None, Some(c)) => lines.push(c.assembled.render(format)),
            _ => {}
        }
        if let (Some(b), Some(c)) = (&brute, &certificate) {
            lines.push(format!("brute:  {}", b.render(format)));
            lines.push(format!("closed: {}", c.assembled.render(format)));
            lines.push(format!("agree:  {}", b == &c.assembled));
        }
        lines.join("\n")
    };
    out.emit(
        &PfOutput {
            query: q.clone(),
            brute: brute.clone(),
            certificate: certificate.clone(),
            agree,
        },
        text,
    )?;
    if agree == Some(false) {
        bail!("brute-force and closed form differ for {q}");
    }
    Ok(())
}

fn run_schubert(args: SchubertArgs, out: &mut Output) -> Result<()> {
    let format: RenderFormat = args.format.into();
    if let Some(poly) = &args.expand {
        let f = parse_poly(poly)?;
        let n = args.n.expect("required by clap");
        let expansion = newton_expand(&f, n)?;
        let records: Vec<_> = expansion
            .iter()
            .map(|(s, c)| json!({"permutation": s, "coefficient": c}))
            .collect();
        return out.emit(&records, || {
            expansion
                .iter()
                .map(|(s, c)| format!("X{s}  {}", c.render(format)))
                .collect::<Vec<_>>()
                .join("\n")
        });
    }
    let sigma = match (&args.perm, &args.code) {
        (Some(p), _) => p.clone(),
        (None, Some(c)) => Permutation::from_code(c)?,
        (None, None) => bail!("one of --perm, --code or --expand is required"),
    };
    let mut p = SchubertCache::new().get(&sigma);
    debug_assert_eq!(p, schubert(&sigma));
    if args.at_zero_negated_y {
        p = at_zero_negated_y(&p)?;
    }
    if args.shift_y > 0 {
        p = shift_y(&p, args.shift_y);
    }
    out.emit(
        &json!({"permutation": sigma, "code": sigma.code(), "polynomial": p}),
        || p.render(format),
    )
}

fn run_convert(args: ConvertArgs, out: &mut Output) -> Result<()> {
    if let Some(file) = &args.asm {
        let text = if file == "-" {
            read_source("-")?
        } else {
            fs::read_to_string(file).with_context(|| format!("reading {file}"))?
        };
        let t = asm_to_staircase(&parse_asm(&text)?);
        return out.emit(&t, || {
            t.tableau_rows()
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|e| e.to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                })
                .collect::<Vec<_>>()
                .join("\n")
        });
    }
    if let Some(s) = &args.staircase {
        let a = staircase_to_asm(&parse_staircase(s)?)?;
        return out.emit(&a, || a.to_string());
    }
    if let Some(s) = &args.complete {
        let t = canonical_completion(&parse_staircase(s)?, args.n.expect("required by clap"))?;
        return out.emit(&t, || t.to_string());
    }
    let under = || args.under.clone().expect("required by clap");
    let n = || args.n.expect("required by clap");
    if let Some(v) = &args.column {
        let s = column_ribbon_bijection(v, &under(), n())?;
        return out.emit(
            &json!({"outer": s.outer(), "inner": s.inner(), "labels": s.classify()}),
            || s.to_string(),
        );
    }
    if let Some(r) = &args.ribbon {
        let (outer, inner) = r
            .split_once('/')
            .ok_or_else(|| anyhow!("ribbons are written outer/inner, e.g. 1,3,4/2,3"))?;
        let outer = PartitionShape::new(parse_list(outer).map_err(|e| anyhow!(e))?)?;
        let inner = PartitionShape::new(parse_list(inner).map_err(|e| anyhow!(e))?)?;
        let v = ribbon_to_column(&SkewShape::new(outer, inner)?, &under(), n())?;
        return out.emit(&v, || v.to_string());
    }
    if let Some(p) = &args.perm {
        let value = json!({
            "permutation": p,
            "code": p.code(),
            "reduced_word": p.reduced_word(),
            "length": p.length(),
            "class": format!("{:?}", p.classify()),
        });
        return out.emit(&value, || {
            format!(
                "code {:?}\nreduced word {:?}\nlength {}\nclass {:?}",
                p.code().entries(),
                p.reduced_word(),
                p.length(),
                p.classify()
            )
        });
    }
    if let Some(c) = &args.code {
        let p = Permutation::from_code(c)?;
        return out.emit(&p, || p.to_string());
    }
    if let Some(u) = &args.levels {
        let levels = level_sequence_or_empty(u).trimmed();
        let partition = p_map(u, n())?;
        return out.emit(&json!({"levels": levels, "partition": partition}), || {
            format!("levels {levels:?}\npartition {partition}")
        });
    }
    Err(usage_error(
        "convert needs one input option; see `schubice convert --help`",
    ))
}

fn run_specialize(args: SpecializeArgs, out: &mut Output) -> Result<()> {
    let p = parse_poly(&args.poly)?;
    let format: RenderFormat = args.format.into();
    if args.two {
        let v = two_point(&p)?;
        return out.emit(&v.to_string(), || v.to_string());
    }
    let mut q = p;
    if args.x_to_y {
        q = specialize_x_to_y(&q)?;
    }
    if args.zero_negated_y {
        q = at_zero_negated_y(&q)?;
    }
    if !args.set.is_empty() {
        let mut assignment: BTreeMap<Variable, LaurentPoly> = BTreeMap::new();
        for item in &args.set {
            let (name, value) = item
                .split_once('=')
                .ok_or_else(|| usage_error(&format!("`{item}` is not of the form var=value")))?;
            let var = parse_variable(name).map_err(|e| anyhow!(e))?;
            let value: Rational = parse_rational(value.trim())?;
            assignment.insert(var, LaurentPoly::constant(value));
        }
        q = q.substitute(&assignment)?;
    }
    out.emit(&q, || q.render(format))
}

fn run_verify(args: VerifyArgs, out: &mut Output) -> Result<bool> {
    let suite: Suite = args.suite.parse()?;
    let report = verify(suite, args.max_n);
    let passed = report.passed();
    out.emit(&report, || {
        let mut lines = Vec::new();
        for c in &report.cases {
            let failed = c.witness.is_some();
            if failed || args.verbose {
                let status = if failed { "FAIL" } else { "PASS" };
                let mut line = format!("{status} {} {}", c.suite, c.case);
                if let Some(w) = &c.witness {
                    line.push_str(&format!("\n    {w}"));
                }
                lines.push(line);
            }
        }
        let failed = report.failures().count();
        lines.push(format!(
            "{} cases, {} passed, {failed} failed",
            report.cases.len(),
            report.cases.len() - failed
        ));
        lines.join("\n")
    })?;
    Ok(passed)
}

fn run_render(args: RenderArgs, out: &mut Output) -> Result<()> {
    let p = parse_poly(&args.poly)?;
    let format: RenderFormat = args.format.into();
    out.emit(&p, || p.render(format))
}

#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage_error(msg: &str) -> anyhow::Error {
    anyhow::Error::new(UsageError(msg.to_string()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    if let Ok(raw) = std::env::var(ENUM_CAP_ENV) {
        if raw.trim().parse::<u64>().is_err() {
            eprintln!("error: {ENUM_CAP_ENV} must be a non-negative integer, got `{raw}`");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    let mut out = Output {
        json: cli.json,
        out: io::stdout().lock(),
    };
    let result = match cli.command {
        Command::Enumerate(a) => run_enumerate(a, &mut out),
        Command::Pf(a) => run_pf(a, &mut out),
        Command::Schubert(a) => run_schubert(a, &mut out),
        Command::Convert(a) => run_convert(a, &mut out),
        Command::Specialize(a) => run_specialize(a, &mut out),
        Command::Render(a) => run_render(a, &mut out),
        Command::Verify(a) => match run_verify(a, &mut out) {
            Ok(true) => return ExitCode::SUCCESS,
            Ok(false) => return ExitCode::from(EXIT_VERIFY_FAILED),
            Err(e) => Err(e),
        },
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.is::<UsageError>() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::from(EXIT_DOMAIN)
            }
        }
    }
}
