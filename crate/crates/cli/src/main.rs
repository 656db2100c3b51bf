use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use congruence_core::dl::{
    enumerate_isotropic, s_lambda_points, swaps_families, vertex_type, FqQuadraticSpace, WittType,
};
use congruence_core::hecke::{hecke_poly, HeckePolynomial, Mode};
use congruence_core::newton::{format_table, newton_table, SplitType};
use congruence_core::render::{render_element, render_hecke, Flavor, Style, SymbolMap};
use congruence_core::root_datum::{Family, GroupSpec, RootDatum};
use congruence_core::suite::{
    check_dimension_story, check_hecke_root, check_product_formula, run_all, SuiteReport,
    SuiteRun,
};
use congruence_core::torus_hecke::DotAction;
use congruence_core::{Error, LatticeVector, Rational};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "congruence-lab", version, about = "Exact Hecke polynomials, Newton strata and S_Λ point counts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dump a root datum as JSON.
    Datum(DatumArgs),
    /// The dot-action orbit sum of a dominant cocharacter.
    OrbitSum(OrbitSumArgs),
    /// The twisted Hecke polynomial of (group, μ).
    Hecke(HeckeArgs),
    /// Newton classes and Rapoport-Zink dimensions for SO(N).
    Newton(NewtonArgs),
    /// Vertex lattices, isotropic subspaces and S_Λ point counts.
    Dl(DlArgs),
    /// End-to-end checks; exit code 0 iff every check passes.
    Suite(SuiteArgs),
    /// Hecke polynomials for a batch of group sizes.
    Table(TableArgs),
}

#[derive(Args, Debug, Clone)]
struct GroupArgs {
    /// Group family.
    #[arg(long, value_parser = parse_family)]
    group: Family,
    /// Dimension of the orthogonal space (SO and GSpin).
    #[arg(long = "N")]
    n_dim: Option<usize>,
    /// Rank for GL.
    #[arg(long = "m")]
    m: Option<usize>,
    /// Use the quasi-split (non-split) outer form.
    #[arg(long)]
    quasi_split: bool,
}

impl GroupArgs {
    fn spec(&self) -> Result<GroupSpec, Failure> {
        let size = match self.group {
            Family::Gl => self.m.or(self.n_dim),
            _ => self.n_dim,
        }
        .ok_or_else(|| Failure::Usage("missing --N (or --m for GL)".into()))?;
        Ok(GroupSpec {
            family: self.group,
            size,
            quasi_split: self.quasi_split,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Latex,
    Text,
}

#[derive(Args, Debug)]
struct OutputArgs {
    /// Compare the JSON output byte-wise with this file.
    #[arg(long)]
    golden: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct DatumArgs {
    #[command(flatten)]
    group: GroupArgs,
    /// Emit JSON (the only format).
    #[arg(long)]
    json: bool,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct OrbitSumArgs {
    #[command(flatten)]
    group: GroupArgs,
    /// Comma-separated cocharacter coordinates (default: the standard μ).
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<String>,
    /// Orbit under the centralizer Levi of μ instead of the full Weyl group.
    #[arg(long)]
    levi: bool,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct HeckeArgs {
    #[command(flatten)]
    group: GroupArgs,
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<String>,
    /// `split` (ρ-normalized) or `symmetric` (GSpin normalization, alias `paper`).
    #[arg(long, value_parser = parse_mode, default_value = "split")]
    mode: Mode,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// A prime to substitute for q, or a symbol to print it as.
    #[arg(long)]
    specialize_q: Option<String>,
    /// Print coefficients instead of the factorization.
    #[arg(long, conflicts_with = "factored")]
    expanded: bool,
    /// Print the factorization instead of coefficients.
    #[arg(long)]
    factored: bool,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct NewtonArgs {
    #[arg(long = "N")]
    n_dim: usize,
    /// odd, even_split or even_nonsplit.
    #[arg(long = "type", value_parser = parse_split)]
    split: SplitType,
    /// Print the table as aligned text.
    #[arg(long)]
    table: bool,
    #[arg(long, conflicts_with = "table")]
    json: bool,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct DlArgs {
    /// Dimension of Ω = Λ/Λ^v.
    #[arg(long, required_unless_present = "gram")]
    t: Option<usize>,
    #[arg(long, value_parser = parse_witt, default_value = "nonsplit")]
    witt: WittType,
    /// Residue characteristic (an odd prime).
    #[arg(long, default_value_t = 3)]
    q: u64,
    /// Extension degree k of the field of definition F_{q^k}.
    #[arg(long, default_value_t = 1)]
    ext: u32,
    /// Report the two families and the Frobenius swap.
    #[arg(long)]
    families: bool,
    /// List the points themselves.
    #[arg(long)]
    points: bool,
    /// Count totally isotropic subspaces of this dimension instead.
    #[arg(long)]
    isotropic: Option<usize>,
    /// Gram matrix of a lattice, rows separated by `;`, for the vertex type.
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["t", "isotropic"])]
    gram: Option<String>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct SuiteArgs {
    /// Run every check.
    #[arg(long, conflicts_with_all = ["product", "dimension", "root"])]
    all: bool,
    /// Check the quasi-split GSpin(2n) product formula for this n.
    #[arg(long)]
    product: Option<usize>,
    /// Check the dimension dichotomy for this N (needs --type).
    #[arg(long, requires = "split")]
    dimension: Option<usize>,
    #[arg(long = "type", value_parser = parse_split)]
    split: Option<SplitType>,
    /// Check that h_μ is a root for the group given by --group/--N/--m.
    #[arg(long, requires = "group")]
    root: bool,
    #[arg(long, value_parser = parse_family)]
    group: Option<Family>,
    #[arg(long = "N")]
    n_dim: Option<usize>,
    #[arg(long = "m")]
    m: Option<usize>,
    #[arg(long)]
    quasi_split: bool,
    #[arg(long, value_parser = parse_mode, default_value = "split")]
    mode: Mode,
    #[arg(long)]
    json: bool,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct TableArgs {
    #[arg(long, value_parser = parse_family)]
    group: Family,
    /// Comma-separated sizes (N for SO/GSpin, m for GL).
    #[arg(long)]
    sizes: String,
    #[arg(long)]
    quasi_split: bool,
    #[arg(long, value_parser = parse_mode, default_value = "split")]
    mode: Mode,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[command(flatten)]
    out: OutputArgs,
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_split(s: &str) -> Result<SplitType, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_witt(s: &str) -> Result<WittType, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

enum Failure {
    Usage(String),
    Compute(Error),
    Golden(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e)
    }
}

/// Output of a subcommand: text for stdout and whether it counts as a pass.
struct Output {
    text: String,
    ok: bool,
}

impl Output {
    fn pass(text: String) -> Self {
        Self { text, ok: true }
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn parse_coords(s: &str) -> Result<Vec<i64>, Failure> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<i64>()
                .map_err(|_| Failure::Usage(format!("`{x}` is not an integer")))
        })
        .collect()
}

fn parse_gram(s: &str) -> Result<Vec<Vec<i64>>, Failure> {
    s.split(';').map(parse_coords).collect()
}

fn build(group: &GroupArgs) -> Result<(GroupSpec, RootDatum), Failure> {
    let spec = group.spec()?;
    Ok((spec, spec.build()?))
}

fn resolve_mu(spec: &GroupSpec, d: &RootDatum, mu: Option<&str>) -> Result<LatticeVector, Failure> {
    let coords = match mu {
        Some(s) => parse_coords(s)?,
        None => spec.default_mu(),
    };
    Ok(d.cochar_lattice().vector(coords)?)
}

/// `(value to substitute, printed symbol)`.
fn specialization(arg: Option<&str>, flavor: Flavor) -> Result<(Option<Rational>, String), Failure> {
    let default_symbol = match flavor {
        Flavor::Latex => "p",
        Flavor::Text => "q",
    };
    match arg {
        None => Ok((None, default_symbol.into())),
        Some(s) => match s.parse::<u64>() {
            Ok(p) if congruence_core::dl::field::is_prime(p) => {
                Ok((Some(Rational::from_integer(p.into())), "p".into()))
            }
            Ok(p) => Err(Failure::Usage(format!("--specialize-q {p} is not a prime"))),
            Err(_) if !s.is_empty() && s.chars().all(char::is_alphabetic) => Ok((None, s.into())),
            Err(_) => Err(Failure::Usage(format!("--specialize-q expects a prime or a symbol, got `{s}`"))),
        },
    }
}

fn render_poly_output(
    h: &HeckePolynomial,
    format: Format,
    specialize: Option<&str>,
    expanded: bool,
    factored: bool,
) -> Result<String, Failure> {
    let flavor = match format {
        Format::Latex => Flavor::Latex,
        _ => Flavor::Text,
    };
    let (value, symbol) = specialization(specialize, flavor)?;
    let h = match &value {
        Some(v) => h.specialize_q(v)?,
        None => h.clone(),
    };
    Ok(match format {
        Format::Json => to_json(&h.to_json()),
        Format::Latex | Format::Text => {
            let map = SymbolMap::default_for(h.lattice())?;
            let style = Style {
                flavor,
                q_symbol: symbol,
                factored: match flavor {
                    Flavor::Latex => !expanded,
                    Flavor::Text => factored,
                },
            };
            let mut s = render_hecke(&h, &map, &style)?;
            s.push('\n');
            s
        }
    })
}

fn run_datum(a: &DatumArgs) -> Result<Output, Failure> {
    let (_, d) = build(&a.group)?;
    Ok(Output::pass(to_json(&d.to_json())))
}

fn run_orbit_sum(a: &OrbitSumArgs) -> Result<Output, Failure> {
    let (spec, d) = build(&a.group)?;
    let mu = resolve_mu(&spec, &d, a.mu.as_deref())?;
    let action = if a.levi {
        DotAction::levi(&d, &mu)?
    } else {
        DotAction::full(&d)?
    };
    let sum = action.orbit_sum(&mu)?;
    Ok(Output::pass(match a.format {
        Format::Json => to_json(&sum.to_json()),
        Format::Latex | Format::Text => {
            let map = SymbolMap::default_for(d.cochar_lattice())?;
            let style = if a.format == Format::Latex {
                Style::latex()
            } else {
                Style::text()
            };
            format!("{}\n", render_element(&sum, &map, &style)?)
        }
    }))
}

fn run_hecke(a: &HeckeArgs) -> Result<Output, Failure> {
    let (spec, d) = build(&a.group)?;
    let mu = resolve_mu(&spec, &d, a.mu.as_deref())?;
    let h = hecke_poly(&d, &mu, a.mode)?;
    render_poly_output(&h, a.format, a.specialize_q.as_deref(), a.expanded, a.factored).map(Output::pass)
}

fn run_newton(a: &NewtonArgs) -> Result<Output, Failure> {
    let rows = newton_table(a.n_dim, a.split)?;
    Ok(Output::pass(if a.table && !a.json {
        format_table(&rows)
    } else {
        to_json(&json!({
            "N": a.n_dim,
            "split_type": a.split,
            "classes": rows,
        }))
    }))
}

fn run_dl(a: &DlArgs) -> Result<Output, Failure> {
    if let Some(g) = &a.gram {
        let v = vertex_type(&parse_gram(g)?, a.q)?;
        return Ok(Output::pass(to_json(&v)));
    }
    let t = a.t.expect("clap requires --t without --gram");
    if let Some(r) = a.isotropic {
        let space = FqQuadraticSpace::preset(a.q, t, a.witt)?;
        let subspaces = enumerate_isotropic(&space, r, a.ext)?;
        let mut v = json!({
            "dim": t,
            "witt": a.witt,
            "q": a.q,
            "ext": a.ext,
            "subspace_dim": r,
            "count": subspaces.len(),
        });
        if a.points {
            v["subspaces"] = serde_json::to_value(&subspaces).expect("serializable");
        }
        return Ok(Output::pass(to_json(&v)));
    }
    let s = s_lambda_points(t, a.witt, a.q, a.ext)?;
    let mut v = json!({
        "t": t,
        "witt": a.witt,
        "q": a.q,
        "ext": a.ext,
        "count": s.count(),
    });
    if a.families {
        let (x, y) = s.families();
        v["families"] = json!([x, y]);
        v["frobenius_swap"] = json!(swaps_families(&s));
    }
    if a.points {
        v["points"] = serde_json::to_value(&s.points).expect("serializable");
        v["family_of_point"] = json!(s.family);
    }
    Ok(Output::pass(to_json(&v)))
}

fn suite_text(reports: &[SuiteReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let status = if r.passed { "PASS" } else { "FAIL" };
        out.push_str(&format!("{status} {}\n", r.case_id));
        for c in r.checks.iter().filter(|c| !c.passed) {
            let w = c.witness.as_ref().map(Value::to_string).unwrap_or_default();
            out.push_str(&format!("  failed {}: {w}\n", c.name));
        }
    }
    out
}

fn run_suite(a: &SuiteArgs) -> Result<Output, Failure> {
    let run = if a.all {
        run_all()?
    } else {
        let mut reports = Vec::new();
        if let Some(n) = a.product {
            reports.push(check_product_formula(n)?);
        }
        if let (Some(n_dim), Some(split)) = (a.dimension, a.split) {
            reports.push(check_dimension_story(n_dim, split)?);
        }
        if a.root {
            let group = GroupArgs {
                group: a.group.expect("clap requires --group"),
                n_dim: a.n_dim,
                m: a.m,
                quasi_split: a.quasi_split,
            };
            reports.push(check_hecke_root(group.spec()?, None, a.mode)?);
        }
        if reports.is_empty() {
            return Err(Failure::Usage(
                "suite needs --all, --product, --dimension or --root".into(),
            ));
        }
        let failed = reports.iter().filter(|r| !r.passed).count();
        SuiteRun {
            passed: failed == 0,
            total: reports.len(),
            failed,
            reports,
        }
    };
    let text = if a.json {
        to_json(&run)
    } else {
        let mut s = suite_text(&run.reports);
        s.push_str(&format!("{} of {} cases passed\n", run.total - run.failed, run.total));
        s
    };
    Ok(Output { text, ok: run.passed })
}

fn run_table(a: &TableArgs) -> Result<Output, Failure> {
    let sizes: Vec<i64> = parse_coords(&a.sizes)?;
    let mut rows = Vec::new();
    let mut text = String::new();
    for size in sizes {
        let spec = GroupSpec {
            family: a.group,
            size: usize::try_from(size).map_err(|_| Failure::Usage(format!("bad size {size}")))?,
            quasi_split: a.quasi_split,
        };
        let d = spec.build()?;
        let mu = d.cochar_lattice().vector(spec.default_mu())?;
        let h = hecke_poly(&d, &mu, a.mode)?;
        let root = h.congruence_root_check(&mu)?.is_zero();
        match a.format {
            Format::Json => rows.push(json!({
                "group": spec.to_string(),
                "mu": mu.coords(),
                "root_check": root,
                "polynomial": h.to_json(),
            })),
            Format::Latex | Format::Text => {
                let poly = render_poly_output(&h, a.format, None, false, true)?;
                text.push_str(&format!("{spec}\t{}", poly));
            }
        }
    }
    Ok(Output::pass(match a.format {
        Format::Json => to_json(&rows),
        _ => text,
    }))
}

fn golden_of(cmd: &Command) -> Option<&PathBuf> {
    match cmd {
        Command::Datum(a) => a.out.golden.as_ref(),
        Command::OrbitSum(a) => a.out.golden.as_ref(),
        Command::Hecke(a) => a.out.golden.as_ref(),
        Command::Newton(a) => a.out.golden.as_ref(),
        Command::Dl(a) => a.out.golden.as_ref(),
        Command::Suite(a) => a.out.golden.as_ref(),
        Command::Table(a) => a.out.golden.as_ref(),
    }
}

fn dispatch(cmd: &Command) -> Result<Output, Failure> {
    let out = match cmd {
        Command::Datum(a) => run_datum(a),
        Command::OrbitSum(a) => run_orbit_sum(a),
        Command::Hecke(a) => run_hecke(a),
        Command::Newton(a) => run_newton(a),
        Command::Dl(a) => run_dl(a),
        Command::Suite(a) => run_suite(a),
        Command::Table(a) => run_table(a),
    }?;
    if let Some(path) = golden_of(cmd) {
        let expected = std::fs::read(path)
            .map_err(|e| Failure::Usage(format!("cannot read golden file {}: {e}", path.display())))?;
        if expected != out.text.as_bytes() {
            return Err(Failure::Golden(path.display().to_string()));
        }
    }
    Ok(out)
}

fn error_kind(e: &Error) -> String {
    let debug = format!("{e:?}");
    debug
        .split(|c: char| !c.is_alphanumeric())
        .next()
        .unwrap_or("Error")
        .to_string()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli.command) {
        Ok(out) => {
            // A closed pipe (e.g. `| head`) is not an error worth reporting.
            let _ = std::io::stdout().lock().write_all(out.text.as_bytes());
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(e)) => {
            let v = json!({ "error": { "kind": error_kind(&e), "message": e.to_string() } });
            eprintln!("{v}");
            ExitCode::from(1)
        }
        Err(Failure::Golden(path)) => {
            let v = json!({ "error": { "kind": "GoldenMismatch", "message": format!("output differs from {path}") } });
            eprintln!("{v}");
            ExitCode::from(1)
        }
    }
}
