//! Command-line front end: homology, permutation and intersection
//! homology, intrinsic stratifications, subdivision-invariance checks, and
//! the permutation calculus.
//!
//! Exit codes: 0 success / verified, 1 verification mismatch, 2 input
//! error, 3 resource limit.

mod document;
mod report;

use std::collections::BTreeSet;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use permhom::error::TopologyError;
use permhom::perm::{Permutation, Perversity};
use permhom::simplicial::SimplicialComplex;
use permhom::stratify::{
    check_h_stratification, check_strong, check_very_strong, intrinsic_stratification,
    level_maximal_simplexes, stratification_report, Filtration,
};
use permhom::tower::{subdivision_invariance_check, Method, Tower};

use document::{load_input, LoadedComplex};
use report::{groups_json, render_group, Report};

const EXIT_OK: i32 = 0;
const EXIT_MISMATCH: i32 = 1;
const EXIT_INPUT: i32 = 2;
const EXIT_LIMIT: i32 = 3;

const SIZE_LIMIT_ENV: &str = "PERMHOM_SIZE_LIMIT";
const DEFAULT_SIZE_LIMIT: usize = 200_000;

#[derive(Parser)]
#[command(
    name = "permhom",
    about = "Permutation homology, intersection homology, and homology stratifications of finite simplicial complexes",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Emit the report as JSON.
    #[arg(long, global = true)]
    json: bool,

    /// Render torsion as prime powers.
    #[arg(long, global = true)]
    primes: bool,

    /// Include wall-clock timing in the report (off by default so that
    /// identical invocations produce byte-identical output).
    #[arg(long, global = true)]
    timing: bool,

    /// Maximum simplex count for any barycentric subdivision built
    /// internally; overrides the PERMHOM_SIZE_LIMIT environment variable.
    #[arg(long, global = true)]
    size_limit: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Integral homology of a complex.
    Homology(InputArgs),
    /// Permutation homology, or intersection homology by perversity.
    PermHomology(PermHomologyArgs),
    /// The intrinsic homology stratification and related checks.
    Stratify(StratifyArgs),
    /// Compare permutation homology against a barycentric subdivision.
    Invariance(InvarianceArgs),
    /// The permutation calculus: d-tables, allowability, V-shapes,
    /// reductions, and perversity conversion.
    PermCalc(PermCalcArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Builtin name or path to a complex file (JSON or one maximal simplex
    /// per line).
    input: String,
}

#[derive(Args)]
struct PermHomologyArgs {
    input: String,

    /// Permutation in one-line notation, e.g. "3,1,0,2".
    #[arg(long, conflicts_with = "perversity")]
    perm: Option<String>,

    /// Perversity sequence, e.g. "0,0,1,1".
    #[arg(long)]
    perversity: Option<String>,

    /// Computation path: the image definition, the chain-of-relative-groups
    /// definition, or both with an agreement verdict.
    #[arg(long, value_enum, default_value_t = MethodArg::Image)]
    method: MethodArg,

    /// Replace a non-principal input by the faces of its top-dimensional
    /// simplexes before computing.
    #[arg(long)]
    principalize: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Image,
    Chain,
    Both,
}

#[derive(Args)]
struct StratifyArgs {
    input: String,

    /// Also decide whether the intrinsic stratification is strong.
    #[arg(long)]
    check_strong: bool,

    /// Also decide whether it is very strong.
    #[arg(long)]
    check_very_strong: bool,

    #[arg(long)]
    principalize: bool,
}

#[derive(Args)]
struct InvarianceArgs {
    input: String,

    /// Permutation in one-line notation.
    #[arg(long)]
    perm: String,

    /// Number of barycentric subdivisions to compare against.
    #[arg(long, default_value_t = 1)]
    depth: usize,

    /// Skip the allowability gate (exploratory; the invariance theorem
    /// does not cover such permutations).
    #[arg(long)]
    unchecked: bool,

    #[arg(long)]
    principalize: bool,
}

#[derive(Args)]
struct PermCalcArgs {
    #[command(subcommand)]
    op: PermCalcOp,

    /// Permutation in one-line notation.
    #[arg(long, global = true)]
    perm: Option<String>,

    /// Perversity sequence.
    #[arg(long, global = true)]
    perversity: Option<String>,
}

#[derive(Subcommand)]
enum PermCalcOp {
    /// Print the table d[i][j].
    Dtable,
    /// Decide allowability; prints a witness on failure.
    Allowable,
    /// Decide V-shapedness; prints pivot, value set, and q on success.
    Vshape,
    /// Reduce the permutation.
    Reduce,
    /// Convert between perversities and V-shaped permutations.
    Convert,
}

struct Ctx {
    json: bool,
    primes: bool,
    timing: bool,
    size_limit: usize,
}

fn main() {
    let cli = Cli::parse();
    let size_limit = cli
        .size_limit
        .or_else(|| std::env::var(SIZE_LIMIT_ENV).ok().and_then(|v| v.parse().ok()))
        .unwrap_or(DEFAULT_SIZE_LIMIT);
    let ctx =
        Ctx { json: cli.json, primes: cli.primes, timing: cli.timing, size_limit };
    let started = Instant::now();
    let outcome = match cli.command {
        Command::Homology(args) => cmd_homology(&ctx, args),
        Command::PermHomology(args) => cmd_perm_homology(&ctx, args),
        Command::Stratify(args) => cmd_stratify(&ctx, args),
        Command::Invariance(args) => cmd_invariance(&ctx, args),
        Command::PermCalc(args) => cmd_perm_calc(&ctx, args),
    };
    let code = match outcome {
        Ok((mut report, code, text)) => {
            if ctx.timing {
                report.timing_ms = Some(started.elapsed().as_millis());
            }
            if ctx.json {
                println!("{}", serde_json::to_string_pretty(&report.to_json()).unwrap());
            } else {
                for w in &report.warnings {
                    println!("warning: {w}");
                }
                print!("{text}");
            }
            code
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.code
        }
    };
    std::process::exit(code);
}

struct CliError {
    message: String,
    code: i32,
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.message)
    }
}

impl CliError {
    fn input(message: impl Into<String>) -> Self {
        CliError { message: message.into(), code: EXIT_INPUT }
    }
}

impl From<TopologyError> for CliError {
    fn from(e: TopologyError) -> Self {
        let code = match e {
            TopologyError::SizeLimit { .. } => EXIT_LIMIT,
            _ => EXIT_INPUT,
        };
        CliError { message: e.to_string(), code }
    }
}

impl From<String> for CliError {
    fn from(message: String) -> Self {
        CliError::input(message)
    }
}

type CmdResult = Result<(Report, i32, String), CliError>;

fn complex_line(name: &str, k: &SimplicialComplex) -> String {
    format!("complex: {name} (dim {}, simplexes {:?})\n", k.dim(), k.counts_by_dim())
}

fn cmd_homology(ctx: &Ctx, args: InputArgs) -> CmdResult {
    let LoadedComplex { name, complex, .. } = load_input(&args.input)?;
    let groups = permhom::homology::homology_groups(&complex);
    let mut report = Report::new("homology", &name);
    report.results = json!({
        "counts": complex.counts_by_dim(),
        "groups": groups_json(&groups),
    });
    let mut text = complex_line(&name, &complex);
    for (i, g) in groups.iter().enumerate() {
        text.push_str(&format!("H_{i} = {}\n", render_group(g, ctx.primes)));
    }
    Ok((report, EXIT_OK, text))
}

/// Resolves --perm / --perversity into a permutation, remembering whether a
/// perversity was the source (which switches the output labels).
fn resolve_permutation(
    perm: &Option<String>,
    perversity: &Option<String>,
    n: usize,
) -> Result<(Permutation, Option<Perversity>), CliError> {
    match (perm, perversity) {
        (Some(p), None) => {
            let pi: Permutation = p.parse()?;
            if pi.n() != n {
                return Err(CliError::input(format!(
                    "permutation length {} does not match complex dimension {n} (need {} values)",
                    pi.n() + 1,
                    n + 1
                )));
            }
            Ok((pi, None))
        }
        (None, Some(p)) => {
            let pv: Perversity = p.parse()?;
            if pv.n() != n {
                return Err(CliError::input(format!(
                    "perversity length {} does not match complex dimension {n} (need {} values)",
                    pv.n() + 1,
                    n + 1
                )));
            }
            Ok((pv.to_permutation(), Some(pv)))
        }
        _ => Err(CliError::input("exactly one of --perm or --perversity is required")),
    }
}

fn principalize_if_asked(
    k: SimplicialComplex,
    asked: bool,
    report: &mut Report,
) -> Result<SimplicialComplex, CliError> {
    if k.is_empty() {
        return Err(CliError::input("the complex is empty"));
    }
    if k.is_principal()? {
        return Ok(k);
    }
    if asked {
        let p = k.principalize();
        report.warn(format!(
            "input was not principal; discarded maximal simplexes below dimension {} ({} simplexes dropped)",
            k.dim(),
            k.simplex_count() - p.simplex_count()
        ));
        Ok(p)
    } else {
        Err(CliError::input(format!(
            "{}; principality is required (pass --principalize to repair explicitly)",
            TopologyError::NotPrincipal {
                simplex: k.principality_witness()?.unwrap_or_default(),
                dim: k.dim() as usize
            }
        )))
    }
}

/// Occupancy of the intrinsic stratification: levels with nonempty strata.
fn intrinsic_occupancy(k: &SimplicialComplex) -> Result<BTreeSet<usize>, CliError> {
    Ok(intrinsic_stratification(k)?.occupancy())
}

fn allowability_warnings(
    pi: &Permutation,
    k: &SimplicialComplex,
    report: &mut Report,
) -> Result<(), CliError> {
    if pi.is_allowable() {
        return Ok(());
    }
    let occ = intrinsic_occupancy(k)?;
    if pi.is_filtration_allowable(&occ) {
        report.warn(format!(
            "permutation {pi} is not allowable in general, but satisfies the allowability \
             condition at this complex's occupied strata {occ:?}; subdivision invariance still applies here"
        ));
    } else {
        report.warn(format!(
            "permutation {pi} is not allowable (witness (i, j) = {:?}); results are not invariance-protected",
            pi.allowability_witness().expect("non-allowable has a witness")
        ));
    }
    Ok(())
}

fn cmd_perm_homology(ctx: &Ctx, args: PermHomologyArgs) -> CmdResult {
    let LoadedComplex { name, complex, .. } = load_input(&args.input)?;
    let mut report = Report::new("perm-homology", &name);
    let complex = principalize_if_asked(complex, args.principalize, &mut report)?;
    let n = complex.dim() as usize;
    let (pi, perversity) = resolve_permutation(&args.perm, &args.perversity, n)?;
    allowability_warnings(&pi, &complex, &mut report)?;
    let tower = Tower::with_limit(&complex, Some(ctx.size_limit))?;
    let label = if perversity.is_some() { "IH" } else { "H^pi" };

    let mut text = complex_line(&name, &complex);
    text.push_str(&format!("permutation: {pi}"));
    if let Some(pv) = &perversity {
        text.push_str(&format!(" (from perversity {pv})"));
    }
    text.push('\n');

    let mut results = json!({
        "permutation": pi.one_line(),
        "perversity": perversity.as_ref().map(|p| p.one_line()),
        "allowable": pi.is_allowable(),
    });
    let mut code = EXIT_OK;
    match args.method {
        MethodArg::Image | MethodArg::Chain => {
            let method =
                if matches!(args.method, MethodArg::Image) { Method::Image } else { Method::Chain };
            let profile = tower.profile(&pi, method)?;
            for (i, g) in profile.groups.iter().enumerate() {
                text.push_str(&format!("{label}_{i} = {}\n", render_group(g, ctx.primes)));
            }
            results["method"] = json!(match method {
                Method::Image => "image",
                Method::Chain => "chain",
            });
            results["groups"] = groups_json(&profile.groups);
        }
        MethodArg::Both => {
            let image = tower.profile(&pi, Method::Image)?;
            let chain = tower.profile(&pi, Method::Chain)?;
            let agree = image.groups == chain.groups;
            for (i, g) in image.groups.iter().enumerate() {
                text.push_str(&format!("{label}_{i} = {}\n", render_group(g, ctx.primes)));
            }
            text.push_str(&format!(
                "method agreement (image vs chain): {}\n",
                if agree { "yes" } else { "NO" }
            ));
            if !agree {
                for (i, (a, b)) in image.groups.iter().zip(&chain.groups).enumerate() {
                    if a != b {
                        text.push_str(&format!("  degree {i}: image {a} vs chain {b}\n"));
                    }
                }
                code = EXIT_MISMATCH;
            }
            results["method"] = json!("both");
            results["groups"] = groups_json(&image.groups);
            results["groups_chain"] = groups_json(&chain.groups);
            results["agreement"] = json!(agree);
        }
    }
    report.results = results;
    Ok((report, code, text))
}

fn filtration_json(k: &SimplicialComplex, f: &Filtration) -> serde_json::Value {
    serde_json::Value::Array(
        (0..=f.n())
            .map(|j| json!(level_maximal_simplexes(k, f.level(j))))
            .collect(),
    )
}

fn cmd_stratify(ctx: &Ctx, args: StratifyArgs) -> CmdResult {
    let LoadedComplex { name, complex, filtration } = load_input(&args.input)?;
    let mut report = Report::new("stratify", &name);
    let complex = principalize_if_asked(complex, args.principalize, &mut report)?;
    let sr = stratification_report(&complex, args.check_strong, args.check_very_strong)?;
    let f = &sr.filtration;
    let n = f.n();

    let mut text = complex_line(&name, &complex);
    text.push_str("intrinsic stratification:\n");
    for j in (0..=n).rev() {
        let maxes = level_maximal_simplexes(&complex, f.level(j));
        text.push_str(&format!("  X_{j}: {} simplexes, maximal {maxes:?}\n", f.level(j).count()));
    }
    let mut strata = Vec::new();
    for s in &sr.strata {
        text.push_str(&format!("stratum {}: {} open simplexes\n", s.level, s.open_simplex_count));
        for (rep, profile) in &s.profiles {
            let rendered: Vec<String> =
                profile.iter().map(|g| render_group(g, ctx.primes)).collect();
            text.push_str(&format!("  local homology [{}] at {rep:?}\n", rendered.join(", ")));
        }
        text.push_str(&format!(
            "  homology {}-manifold: {}\n",
            s.level,
            match s.homology_manifold {
                Some(true) => "yes",
                Some(false) => "no",
                None => "empty",
            }
        ));
        strata.push(json!({
            "level": s.level,
            "open_simplexes": s.open_simplex_count,
            "profiles": s.profiles
                .iter()
                .map(|(rep, p)| json!({ "at": rep, "groups": groups_json(p) }))
                .collect::<Vec<_>>(),
            "homology_manifold": s.homology_manifold,
        }));
    }

    text.push_str(&format!(
        "h-stratification: {}\n",
        if sr.is_h_stratification { "yes" } else { "NO" }
    ));
    text.push_str(&format!(
        "homology manifold: {}\n",
        if sr.homology_manifold { "yes" } else { "no" }
    ));
    let mut results = json!({
        "filtration": filtration_json(&complex, f),
        "strata": strata,
        "is_h_stratification": sr.is_h_stratification,
        "homology_manifold": sr.homology_manifold,
    });
    if let Some(strong) = sr.is_strong {
        text.push_str(&format!("strong: {}\n", if strong { "yes" } else { "no" }));
        results["is_strong"] = json!(strong);
    }
    if let Some(vs) = sr.is_very_strong {
        text.push_str(&format!("very strong: {}\n", if vs { "yes" } else { "no" }));
        results["is_very_strong"] = json!(vs);
    }

    // A filtration supplied with the document is validated and checked as
    // well, without replacing the intrinsic computation.
    if let Some(given) = &filtration {
        let given_h = check_h_stratification(&complex, given)?;
        text.push_str(&format!(
            "given filtration: h-stratification: {}\n",
            if given_h { "yes" } else { "NO" }
        ));
        let mut given_json = json!({
            "filtration": filtration_json(&complex, given),
            "is_h_stratification": given_h,
        });
        if args.check_strong {
            given_json["is_strong"] = json!(check_strong(&complex, given)?);
        }
        if args.check_very_strong {
            given_json["is_very_strong"] = json!(check_very_strong(&complex, given)?);
        }
        results["given"] = given_json;
    }

    report.results = results;
    Ok((report, EXIT_OK, text))
}

fn cmd_invariance(ctx: &Ctx, args: InvarianceArgs) -> CmdResult {
    let LoadedComplex { name, complex, .. } = load_input(&args.input)?;
    let mut report = Report::new("invariance", &name);
    let complex = principalize_if_asked(complex, args.principalize, &mut report)?;
    if args.depth == 0 {
        return Err(CliError::input("--depth must be at least 1"));
    }
    let n = complex.dim() as usize;
    let pi: Permutation = args.perm.parse()?;
    if pi.n() != n {
        return Err(CliError::input(format!(
            "permutation length {} does not match complex dimension {n}",
            pi.n() + 1
        )));
    }
    if !pi.is_allowable() {
        let occ = intrinsic_occupancy(&complex)?;
        if pi.is_filtration_allowable(&occ) {
            report.warn(format!(
                "permutation {pi} is allowable only at this complex's occupied strata {occ:?}"
            ));
        } else if args.unchecked {
            report.warn(format!(
                "permutation {pi} is not allowable; invariance is not guaranteed (running anyway)"
            ));
        } else {
            return Err(CliError::input(format!(
                "permutation {pi} is not allowable for this complex (witness {:?}); \
                 pass --unchecked to explore anyway",
                pi.allowability_witness().expect("witness exists")
            )));
        }
    }
    let outcome = subdivision_invariance_check(&complex, &pi, args.depth, Some(ctx.size_limit))?;
    let mut text = complex_line(&name, &complex);
    text.push_str(&format!("permutation: {pi}, depth: {}\n", args.depth));
    for (i, (a, b)) in outcome.degrees.iter().enumerate() {
        text.push_str(&format!(
            "degree {i}: {} vs {} {}\n",
            render_group(a, ctx.primes),
            render_group(b, ctx.primes),
            if a == b { "ok" } else { "MISMATCH" }
        ));
    }
    let agree = outcome.all_agree();
    text.push_str(&format!("verdict: {}\n", if agree { "all degrees agree" } else { "MISMATCH" }));
    report.results = json!({
        "permutation": pi.one_line(),
        "depth": args.depth,
        "degrees": outcome
            .degrees
            .iter()
            .map(|(a, b)| json!({
                "base": a.to_string(),
                "subdivided": b.to_string(),
                "agree": a == b,
            }))
            .collect::<Vec<_>>(),
        "all_agree": agree,
    });
    Ok((report, if agree { EXIT_OK } else { EXIT_MISMATCH }, text))
}

fn cmd_perm_calc(_ctx: &Ctx, args: PermCalcArgs) -> CmdResult {
    let mut report = Report::new("perm-calc", "");
    let parse_perm = |s: &Option<String>| -> Result<Permutation, CliError> {
        s.as_ref()
            .ok_or_else(|| CliError::input("--perm is required for this operation"))?
            .parse()
            .map_err(CliError::from)
    };
    let (code, text) = match args.op {
        PermCalcOp::Dtable => {
            let pi = parse_perm(&args.perm)?;
            let d = pi.d_table();
            report.input = pi.one_line();
            report.results = json!({ "d": d.rows() });
            (EXIT_OK, format!("{d}"))
        }
        PermCalcOp::Allowable => {
            let pi = parse_perm(&args.perm)?;
            report.input = pi.one_line();
            match pi.allowability_witness() {
                None => {
                    report.results = json!({ "allowable": true });
                    (EXIT_OK, "true\n".to_string())
                }
                Some((i, j)) => {
                    report.results = json!({ "allowable": false, "witness": [i, j] });
                    (EXIT_OK, format!("false, witness i={i} j={j}\n"))
                }
            }
        }
        PermCalcOp::Vshape => {
            let pi = parse_perm(&args.perm)?;
            report.input = pi.one_line();
            match pi.v_shape() {
                Some(vs) => {
                    let s: Vec<usize> = vs.s.iter().copied().collect();
                    report.results = json!({ "v_shaped": true, "pivot": vs.pivot, "s": s, "q": vs.q });
                    (
                        EXIT_OK,
                        format!(
                            "true, pivot {}, s {{{}}}, q {}\n",
                            vs.pivot,
                            s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","),
                            vs.q.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
                        ),
                    )
                }
                None => {
                    report.results = json!({ "v_shaped": false });
                    (EXIT_OK, "false\n".to_string())
                }
            }
        }
        PermCalcOp::Reduce => {
            let pi = parse_perm(&args.perm)?;
            report.input = pi.one_line();
            let red = pi.reduce()?;
            report.results = json!({ "reduced": red.one_line() });
            (EXIT_OK, format!("{red}\n"))
        }
        PermCalcOp::Convert => match (&args.perm, &args.perversity) {
            (None, Some(p)) => {
                let pv: Perversity = p.parse()?;
                let pi = pv.to_permutation();
                report.input = pv.one_line();
                report.results = json!({ "permutation": pi.one_line() });
                (EXIT_OK, format!("{pi}\n"))
            }
            (Some(p), None) => {
                let pi: Permutation = p.parse()?;
                let pv = pi.to_perversity()?;
                report.input = pi.one_line();
                report.results = json!({ "perversity": pv.one_line() });
                (EXIT_OK, format!("{pv}\n"))
            }
            _ => return Err(CliError::input("convert takes exactly one of --perm or --perversity")),
        },
    };
    Ok((report, code, text))
}
