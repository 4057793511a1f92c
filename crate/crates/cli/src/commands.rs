use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gpw_core::bass_serre::{exceptional_exponents, tree_action};
use gpw_core::growth::{
    attach_inequality, ball_sizes, product_set_sizes, symmetrize, verify_abelian, verify_bipartite, verify_sharpness,
    VerificationReport, DEFAULT_MAX_STATES,
};
use gpw_core::search::{
    exponent_sum_search, find_short, full_support_element, full_support_torsion_free, simultaneous_cap,
    simultaneous_loxodromic,
};
use gpw_core::support::{
    acon_support_of_set, classify, has_order_two_component, irreducible_components, stable_support, support,
    support_of_set,
};
use gpw_core::words::parse_syllables;
use gpw_core::{
    oracles, GroupContext, GroupElement, ShortSearch, Syllable, Target, TreeAction, VertexGroup, VertexSet,
};
use serde_json::{json, Value};
use thiserror::Error;

use crate::report::{self, object, Report};
use crate::spec::{parse_spec, parse_word_lines, SpecError};

/// Budget for the oracle searches behind `--oracle`.
const ORACLE_BUDGET: usize = 2_000_000;

#[derive(Debug, Parser)]
#[command(
    name = "gpw",
    version,
    about = "Exact computations in graph products of cyclic groups"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Worker threads for parallel scans (the GPW_THREADS variable takes precedence).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Seed recorded in the report for reproducibility.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Cross-check results against the brute-force oracles where one exists.
    #[arg(long, global = true, hide = true)]
    pub oracle: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct WordArg {
    /// Group spec file.
    pub spec: PathBuf,
    /// A word such as `x1^3 y2 x1^-1`.
    pub word: String,
}

#[derive(Debug, Args)]
pub struct SetArgs {
    /// Group spec file.
    pub spec: PathBuf,
    /// Letters of `U`, one word per argument.
    pub words: Vec<String>,
    /// Read letters from a file, one word per line with `#` comments.
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TargetArg {
    Regular,
    StronglyIrreducible,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Example {
    Bipartite,
    Abelian,
    Sharpness,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Canonical reduced word.
    NormalForm(WordArg),
    /// Product of two words.
    Mul { spec: PathBuf, left: String, right: String },
    /// Integer power of a word.
    Pow {
        spec: PathBuf,
        word: String,
        #[arg(allow_negative_numbers = true)]
        n: i64,
    },
    /// Cyclically reduced conjugate and conjugator.
    CyclicReduce(WordArg),
    /// Support of an element.
    Supp(WordArg),
    /// Stable support of an element.
    Stsupp(WordArg),
    /// Irreducible components of an element.
    Components(WordArg),
    /// Support data and irreducibility flags.
    Classify(WordArg),
    /// Support of a set of elements.
    SuppSet(SetArgs),
    /// Short regular or strongly irreducible element of a product set.
    Find {
        #[arg(long, value_enum)]
        target: TargetArg,
        #[command(flatten)]
        set: SetArgs,
    },
    /// Short element whose stable support covers acon(supp(U)).
    FullSupport {
        /// Also cover the cone vertices (all vertex groups must be infinite).
        #[arg(long)]
        torsion_free: bool,
        #[command(flatten)]
        set: SetArgs,
    },
    /// Short element supported on every vertex with a nonzero exponent sum.
    ExponentSum(SetArgs),
    /// Exponents making `g^m h^n` loxodromic on several trees at once.
    SimulLox {
        spec: PathBuf,
        g: String,
        h: String,
        /// Vertices whose trees must all see a loxodromic element.
        #[arg(long, value_delimiter = ',', required = true)]
        vertices: Vec<String>,
    },
    /// Action on the Bass–Serre tree of each vertex.
    Tau {
        #[command(flatten)]
        word: WordArg,
        /// Restrict to one vertex.
        #[arg(long)]
        vertex: Option<String>,
    },
    /// Exponent pairs where combining loses aconical stable support.
    Exceptional {
        spec: PathBuf,
        g: String,
        h: String,
        /// Window start (default 4·dim + 5).
        #[arg(long)]
        from: Option<u64>,
        /// Window end (default start + 20).
        #[arg(long)]
        to: Option<u64>,
    },
    /// Sizes of product sets `U^n` or balls.
    Growth {
        #[command(flatten)]
        set: SetArgs,
        /// Largest `n`.
        #[arg(long, default_value_t = 5)]
        n: usize,
        /// Enumerate balls of `U ∪ U⁻¹` instead of product sets.
        #[arg(long)]
        ball: bool,
        #[arg(long, requires = "beta")]
        alpha: Option<f64>,
        #[arg(long, requires = "alpha")]
        beta: Option<f64>,
        /// Stop when a level exceeds this many elements.
        #[arg(long, default_value_t = DEFAULT_MAX_STATES)]
        max_states: usize,
    },
    /// Reproduce one of the worked examples.
    Verify {
        #[arg(value_enum)]
        example: Example,
        /// `m` for the bipartite example, `N` otherwise.
        #[arg(long = "param", alias = "m", alias = "n")]
        param: u64,
    },
}

/// Exit statuses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Success = 0,
    /// Infeasible search, failed verification or oracle disagreement.
    Negative = 1,
    Usage = 2,
    /// A bound guaranteed by theory was not met.
    Falsified = 3,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}:{source}")]
    Spec { path: PathBuf, source: SpecError },
    #[error("word `{word}`: {source}")]
    Word { word: String, source: gpw_core::Error },
    #[error(transparent)]
    Core(#[from] gpw_core::Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn status(&self) -> Status {
        match self {
            CliError::Core(gpw_core::Error::CapExceeded { .. } | gpw_core::Error::Falsified { .. }) => {
                Status::Falsified
            }
            _ => Status::Usage,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Io { .. } => "io",
            CliError::Spec { .. } => "spec",
            CliError::Word { .. } => "word",
            CliError::Core(gpw_core::Error::CapExceeded { .. }) => "cap-exceeded",
            CliError::Core(gpw_core::Error::Falsified { .. }) => "falsified",
            CliError::Core(_) => "precondition",
            CliError::Usage(_) => "usage",
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn load_spec(path: &Path) -> CliResult<Arc<GroupContext>> {
    parse_spec(&read(path)?).map_err(|source| CliError::Spec {
        path: path.to_path_buf(),
        source,
    })
}

struct Parsed {
    element: GroupElement,
    raw: Vec<Syllable>,
}

fn parse_word(ctx: &Arc<GroupContext>, text: &str) -> CliResult<Parsed> {
    let raw = parse_syllables(ctx, text).map_err(|source| CliError::Word {
        word: text.to_string(),
        source,
    })?;
    Ok(Parsed {
        element: GroupElement::from_syllables(ctx, &raw),
        raw,
    })
}

fn load_set(ctx: &Arc<GroupContext>, args: &SetArgs) -> CliResult<(Vec<String>, Vec<Parsed>)> {
    let mut texts = args.words.clone();
    if let Some(file) = &args.file {
        texts.extend(parse_word_lines(&read(file)?));
    }
    if texts.is_empty() {
        return Err(CliError::Usage("the letter set U is empty".into()));
    }
    let parsed = texts.iter().map(|t| parse_word(ctx, t)).collect::<CliResult<_>>()?;
    Ok((texts, parsed))
}

fn elements(parsed: &[Parsed]) -> Vec<GroupElement> {
    parsed.iter().map(|p| p.element.clone()).collect()
}

fn inverse_raw(ctx: &GroupContext, raw: &[Syllable]) -> Vec<Syllable> {
    raw.iter()
        .rev()
        .map(|s| Syllable::new(s.vertex, ctx.group(s.vertex).inverse(s.exp)))
        .collect()
}

fn finite_lcm(ctx: &GroupContext) -> usize {
    let gcd = |mut a: u64, mut b: u64| {
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    };
    ctx.groups()
        .iter()
        .filter_map(|g| match g {
            VertexGroup::Finite(n) => Some(*n),
            VertexGroup::Infinite => None,
        })
        .fold(1, |acc, n| acc / gcd(acc, n) * n) as usize
}

/// Result of running one command.
pub struct Outcome {
    pub report: Report,
    pub status: Status,
}

impl Outcome {
    fn ok(report: Report) -> Self {
        Outcome {
            report,
            status: Status::Success,
        }
    }

    fn with(report: Report, success: bool) -> Self {
        Outcome {
            report,
            status: if success { Status::Success } else { Status::Negative },
        }
    }
}

/// Attaches an oracle verdict to the report; a disagreement turns the exit
/// status negative.
fn oracle_verdict(outcome: &mut Outcome, agrees: bool, method: &str) {
    outcome
        .report
        .insert("oracle", json!({ "method": method, "agrees": agrees }));
    if !agrees {
        outcome.status = Status::Negative;
    }
}

fn word_input(spec: &Path, words: &[&str]) -> Value {
    json!({ "spec": spec.display().to_string(), "words": words })
}

pub fn run(cli: &Cli) -> CliResult<Outcome> {
    let mut outcome = dispatch(cli)?;
    if let Value::Object(input) = &mut outcome.report.input {
        input.insert("seed".into(), json!(cli.seed));
    }
    Ok(outcome)
}

fn dispatch(cli: &Cli) -> CliResult<Outcome> {
    let oracle = cli.oracle;
    match &cli.command {
        Command::NormalForm(a) => {
            let ctx = load_spec(&a.spec)?;
            let g = parse_word(&ctx, &a.word)?;
            let result = json!({ "word": report::word(&g.element), "length": g.element.len() });
            let mut out = Outcome::ok(Report::new("normal-form", word_input(&a.spec, &[&a.word]), result));
            if oracle {
                let agrees = oracles::shuffle_equal(&ctx, &g.raw, g.element.canonical(), ORACLE_BUDGET)?;
                oracle_verdict(&mut out, agrees, "shuffle_equal");
            }
            Ok(out)
        }
        Command::Mul { spec, left, right } => {
            let ctx = load_spec(spec)?;
            let (l, r) = (parse_word(&ctx, left)?, parse_word(&ctx, right)?);
            let product = l.element.multiply(&r.element)?;
            let result = json!({ "product": report::word(&product) });
            let mut out = Outcome::ok(Report::new("mul", word_input(spec, &[left, right]), result));
            if oracle {
                let raw: Vec<Syllable> = l.raw.iter().chain(&r.raw).copied().collect();
                let agrees = oracles::shuffle_equal(&ctx, &raw, product.canonical(), ORACLE_BUDGET)?;
                oracle_verdict(&mut out, agrees, "shuffle_equal");
            }
            Ok(out)
        }
        Command::Pow { spec, word, n } => {
            let ctx = load_spec(spec)?;
            let g = parse_word(&ctx, word)?;
            let power = g.element.power(*n);
            let mut input = word_input(spec, &[word]);
            input["n"] = json!(n);
            let mut out = Outcome::ok(Report::new("pow", input, json!({ "power": report::word(&power) })));
            if oracle && n.unsigned_abs() <= 32 {
                let base = if *n < 0 {
                    inverse_raw(&ctx, &g.raw)
                } else {
                    g.raw.clone()
                };
                let raw: Vec<Syllable> = (0..n.unsigned_abs()).flat_map(|_| base.iter().copied()).collect();
                let agrees = oracles::shuffle_equal(&ctx, &raw, power.canonical(), ORACLE_BUDGET)?;
                oracle_verdict(&mut out, agrees, "shuffle_equal");
            }
            Ok(out)
        }
        Command::CyclicReduce(a) => {
            let ctx = load_spec(&a.spec)?;
            let g = parse_word(&ctx, &a.word)?;
            let r = g.element.cyclic_reduce();
            let result = json!({
                "core": report::word(&r.core),
                "conjugator": report::word(&r.conjugator),
                "core_length": r.core.len(),
            });
            let mut out = Outcome::ok(Report::new("cyclic-reduce", word_input(&a.spec, &[&a.word]), result));
            if oracle {
                let agrees = oracles::cyclic_core(&ctx, &g.raw).len() == r.core.len();
                oracle_verdict(&mut out, agrees, "cyclic_core");
            }
            Ok(out)
        }
        Command::Supp(a) => {
            let ctx = load_spec(&a.spec)?;
            let g = parse_word(&ctx, &a.word)?;
            let supp = support(&g.element);
            let result = json!({ "supp": report::vertex_set(&ctx, &supp) });
            let mut out = Outcome::ok(Report::new("supp", word_input(&a.spec, &[&a.word]), result));
            if oracle {
                let agrees = oracles::brute_support(&ctx, &g.raw) == supp;
                oracle_verdict(&mut out, agrees, "brute_support");
            }
            Ok(out)
        }
        Command::Stsupp(a) => {
            let ctx = load_spec(&a.spec)?;
            let g = parse_word(&ctx, &a.word)?;
            let st = stable_support(&g.element);
            let result = json!({ "stsupp": report::vertex_set(&ctx, &st) });
            let mut out = Outcome::ok(Report::new("stsupp", word_input(&a.spec, &[&a.word]), result));
            if oracle {
                let agrees = oracles::brute_stable_support(&ctx, &g.raw, finite_lcm(&ctx).max(2)) == st;
                oracle_verdict(&mut out, agrees, "brute_stable_support");
            }
            Ok(out)
        }
        Command::Components(a) => {
            let ctx = load_spec(&a.spec)?;
            let g = parse_word(&ctx, &a.word)?;
            let comps = irreducible_components(&g.element);
            let result = json!({
                "components": report::words(&comps),
                "order_two_component": has_order_two_component(&g.element),
            });
            Ok(Outcome::ok(Report::new(
                "components",
                word_input(&a.spec, &[&a.word]),
                result,
            )))
        }
        Command::Classify(a) => {
            let ctx = load_spec(&a.spec)?;
            let g = parse_word(&ctx, &a.word)?;
            let result = report::support_report(&ctx, &classify(&g.element));
            Ok(Outcome::ok(Report::new(
                "classify",
                word_input(&a.spec, &[&a.word]),
                result,
            )))
        }
        Command::Tau { word: a, vertex } => {
            let ctx = load_spec(&a.spec)?;
            let g = parse_word(&ctx, &a.word)?;
            let graph = ctx.graph();
            let vertices: Vec<_> = match vertex {
                Some(name) => vec![graph.vertex(name)?],
                None => graph.vertices().collect(),
            };
            let actions: Vec<Value> = vertices
                .iter()
                .map(|&v| {
                    let (action, tau) = match tree_action(&g.element, v) {
                        TreeAction::Loxodromic { tau } => ("loxodromic", tau),
                        TreeAction::EllipticComplement => ("elliptic-complement", 0),
                        TreeAction::EllipticStarOnly => ("elliptic-star", 0),
                    };
                    json!({ "vertex": graph.name(v), "action": action, "tau": tau })
                })
                .collect();
            let mut input = word_input(&a.spec, &[&a.word]);
            input["vertex"] = json!(vertex);
            Ok(Outcome::ok(Report::new("tau", input, json!({ "trees": actions }))))
        }
        Command::SuppSet(args) => {
            let ctx = load_spec(&args.spec)?;
            let (texts, parsed) = load_set(&ctx, args)?;
            let letters = elements(&parsed);
            let supp = support_of_set(&letters);
            let result = json!({
                "supp": report::vertex_set(&ctx, &supp),
                "acon": report::vertex_set(&ctx, &acon_support_of_set(&letters)),
            });
            let mut out = Outcome::ok(Report::new("supp-set", set_input(args, &texts), result));
            if oracle {
                let raw: Vec<Vec<Syllable>> = parsed.iter().map(|p| p.raw.clone()).collect();
                let mut exps: Vec<i64> = raw.iter().flatten().map(|s| s.exp.abs()).chain([1]).collect();
                exps.sort_unstable();
                exps.dedup();
                let brute = oracles::brute_support_set(&ctx, &raw, 2, &exps);
                oracle_verdict(
                    &mut out,
                    supp.is_subset(&brute),
                    "brute_support_set (upper bound, conjugators ≤ 2)",
                );
            }
            Ok(out)
        }
        Command::Find { target, set: args } => {
            let ctx = load_spec(&args.spec)?;
            let (texts, parsed) = load_set(&ctx, args)?;
            let letters = elements(&parsed);
            let target = match target {
                TargetArg::Regular => Target::Regular,
                TargetArg::StronglyIrreducible => Target::StronglyIrreducible,
            };
            let mut input = set_input(args, &texts);
            input["target"] = json!(format!("{target:?}"));
            match find_short(&letters, target)? {
                ShortSearch::Found(cert) => {
                    let result = json!({ "found": true, "feasible": true, "element": report::word(&cert.element) });
                    let report = Report::new("find", input, result)
                        .with_certificate(report::certificate(&ctx, &cert))
                        .with_bounds(json!({ "n": report::bound(cert.bound) }));
                    Ok(Outcome::ok(report))
                }
                ShortSearch::Infeasible(f) => {
                    let result = json!({ "found": false, "feasible": false, "reason": format!("{:?}", f.reason) });
                    Ok(Outcome::with(Report::new("find", input, result), false))
                }
            }
        }
        Command::FullSupport {
            torsion_free,
            set: args,
        } => {
            let ctx = load_spec(&args.spec)?;
            let (texts, parsed) = load_set(&ctx, args)?;
            let letters = elements(&parsed);
            let cert = if *torsion_free {
                full_support_torsion_free(&letters)?
            } else {
                full_support_element(&letters)?
            };
            let mut input = set_input(args, &texts);
            input["torsion_free"] = json!(torsion_free);
            let result = json!({ "element": report::word(&cert.element), "n": cert.n() });
            let d = ctx.dim().max(1) as u64;
            let caps = if *torsion_free {
                json!({ "n": report::bound(cert.bound), "a": 7 * d + 5, "b": 5 * d + 5 })
            } else {
                json!({ "n": report::bound(cert.bound), "exponent": gpw_core::search::combine_cap(&letters[0]) })
            };
            let report = Report::new("full-support", input, result)
                .with_certificate(report::certificate(&ctx, &cert))
                .with_bounds(caps);
            Ok(Outcome::ok(report))
        }
        Command::ExponentSum(args) => {
            let ctx = load_spec(&args.spec)?;
            let (texts, parsed) = load_set(&ctx, args)?;
            let cert = exponent_sum_search(&elements(&parsed))?;
            let result = json!({ "element": report::word(&cert.element), "n": cert.n() });
            let report = Report::new("exponent-sum", set_input(args, &texts), result)
                .with_certificate(report::certificate(&ctx, &cert))
                .with_bounds(json!({ "n": report::bound(cert.bound) }));
            Ok(Outcome::ok(report))
        }
        Command::SimulLox { spec, g, h, vertices } => {
            let ctx = load_spec(spec)?;
            let (pg, ph) = (parse_word(&ctx, g)?, parse_word(&ctx, h)?);
            let set: VertexSet = vertices
                .iter()
                .map(|v| ctx.graph().vertex(v))
                .collect::<gpw_core::Result<_>>()?;
            let (m, n, p) = simultaneous_loxodromic(&pg.element, &ph.element, &set)?;
            let mut input = word_input(spec, &[g, h]);
            input["vertices"] = json!(vertices);
            let result = json!({ "m": m, "n": n, "element": report::word(&p) });
            let bounds = json!({ "exponent": simultaneous_cap(set.len()) });
            Ok(Outcome::ok(Report::new("simul-lox", input, result).with_bounds(bounds)))
        }
        Command::Exceptional { spec, g, h, from, to } => {
            let ctx = load_spec(spec)?;
            let (pg, ph) = (parse_word(&ctx, g)?, parse_word(&ctx, h)?);
            let d = ctx.dim().max(1) as u64;
            let start = from.unwrap_or(4 * d + 5);
            let end = to.unwrap_or(start + 20);
            if start == 0 || end < start {
                return Err(CliError::Usage(format!("invalid window [{start}, {end}]")));
            }
            let r = exceptional_exponents(&pg.element, &ph.element, start..=end);
            let mut input = word_input(spec, &[g, h]);
            input["window"] = json!([start, end]);
            let result = json!({
                "failures": r.failures.iter().map(|&(m, n)| json!([m, n])).collect::<Vec<_>>(),
                "skipped": r.skipped,
                "cover": r.cover.as_ref().map(report::line_cover),
                "dim": r.dim,
            });
            let covered = r.cover.is_some();
            let bounds = json!({ "lines_per_kind": r.dim });
            Ok(Outcome::with(
                Report::new("exceptional", input, result).with_bounds(bounds),
                covered,
            ))
        }
        Command::Growth {
            set: args,
            n,
            ball,
            alpha,
            beta,
            max_states,
        } => {
            let ctx = load_spec(&args.spec)?;
            let (texts, parsed) = load_set(&ctx, args)?;
            let letters = elements(&parsed);
            let mut r = if *ball {
                ball_sizes(&letters, *n, *max_states)?
            } else {
                product_set_sizes(&letters, *n, *max_states)?
            };
            let enumerated = if *ball { symmetrize(&letters) } else { letters.clone() };
            if let (Some(a), Some(b)) = (alpha, beta) {
                attach_inequality(&mut r, enumerated.len(), *a, *b);
            }
            let mut result = object([
                ("sizes", json!(r.sizes)),
                ("truncated", json!(r.truncated)),
                ("ball", json!(r.ball)),
            ]);
            if *ball {
                result["fekete_upper"] = json!(r.fekete_upper);
            }
            let mut holds = true;
            if let Some(((a, b), checks)) = &r.inequality {
                holds = checks.iter().all(|&c| c);
                result["inequality"] = json!({ "alpha": a, "beta": b, "holds": checks });
            }
            let mut input = set_input(args, &texts);
            input["n"] = json!(n);
            let bounds = json!({ "max_states": max_states });
            let mut out = Outcome::with(Report::new("growth", input, result).with_bounds(bounds), holds);
            if oracle {
                let raw: Vec<Vec<Syllable>> = enumerated.iter().map(|g| g.syllables().to_vec()).collect();
                let checked = r.sizes.len().min(3);
                let agrees = (1..=checked).try_fold(true, |ok, k| {
                    oracles::naive_product_set(&ctx, &raw, k, ORACLE_BUDGET).map(|s| ok && s == r.sizes[k - 1])
                })?;
                oracle_verdict(&mut out, agrees, "naive_product_set (n ≤ 3)");
            }
            Ok(out)
        }
        Command::Verify { example, param } => {
            let report = match example {
                Example::Bipartite => verify_bipartite(*param as usize)?,
                Example::Abelian => verify_abelian(*param)?,
                Example::Sharpness => verify_sharpness(*param)?,
            };
            Ok(verification(report))
        }
    }
}

fn set_input(args: &SetArgs, texts: &[String]) -> Value {
    json!({
        "spec": args.spec.display().to_string(),
        "words": texts,
        "file": args.file.as_ref().map(|f| f.display().to_string()),
    })
}

fn verification(v: VerificationReport) -> Outcome {
    let passed = v.passed();
    let checks: Vec<Value> = v
        .checks
        .iter()
        .map(|c| json!({ "check": c.description, "passed": c.passed }))
        .collect();
    let input = json!({ "example": v.name, "param": v.parameter });
    let result = json!({ "verdict": if passed { "PASS" } else { "FAIL" }, "checks": checks });
    Outcome::with(Report::new("verify", input, result), passed)
}
