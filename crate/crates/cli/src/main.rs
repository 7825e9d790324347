use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use cea_core::coset::DEFAULT_EXPANSION_LIMIT;
use cea_core::golden::{GoldenRecord, GOLDEN_FILE};
use cea_core::higher_order::MAX_ITERATED_ATOMS;
use cea_core::inference::{
    parse_measure, parse_possibility, wants_exact, Aldp, Engine, KnowledgeBase, Observation,
    SemanticInput, VariableKind, DEFAULT_MAX_ATOMS,
};
use cea_core::report::CheckResult;
use cea_core::semantics::ProbabilityMeasure;
use cea_core::verify::{algebra_suites, higher_order_suites, oracle_suites, semantics_suites};
use cea_core::{AtomSpace, Exact, Report, Scalar, SemanticsError, Sweep};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

/// Measure-free conditional objects: evaluation and verification.
#[derive(Parser)]
#[command(name = "cea", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a diagnosis query against a knowledge base.
    Eval(EvalArgs),
    /// Run the coset oracle and identity suites.
    Oracle {
        #[command(subcommand)]
        action: OracleAction,
    },
    /// Boolean algebra and conditional calculus laws.
    Algebra {
        #[command(subcommand)]
        action: AlgebraAction,
    },
    /// Implication versus conditioning on a constructed measure.
    Lewis {
        #[command(subcommand)]
        action: LewisAction,
    },
}

#[derive(Subcommand)]
enum OracleAction {
    Verify(VerifyArgs),
}

#[derive(Subcommand)]
enum AlgebraAction {
    Selftest(SweepArgs),
}

#[derive(Subcommand)]
enum LewisAction {
    Demo(LewisArgs),
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, default_value_t = 3)]
    atoms: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Tuples drawn when a sweep is too large to enumerate.
    #[arg(long, default_value_t = 10_000)]
    samples: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    sweep: SweepArgs,
    /// Directory holding recorded findings to compare against.
    #[arg(long)]
    golden: Option<PathBuf>,
    /// Write the recorded findings into the golden directory instead.
    #[arg(long, requires = "golden")]
    bless: bool,
}

#[derive(Args)]
struct LewisArgs {
    #[arg(long, default_value_t = 10)]
    atoms: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct EvalArgs {
    /// Knowledge base JSON file; the bundled example when omitted.
    #[arg(long)]
    kb: Option<PathBuf>,
    /// Observation JSON file; the bundled observation when omitted.
    #[arg(long)]
    observe: Option<PathBuf>,
    #[arg(long, value_enum)]
    aldp: AldpArg,
    /// Measure file, or `uniform`, or `random` (seeded by --seed).
    #[arg(long)]
    measure: Option<String>,
    /// Possibility grades file.
    #[arg(long)]
    poss: Option<PathBuf>,
    /// Joint assignment `var=value,…` or atom index, for classical logic.
    #[arg(long)]
    atom: Option<String>,
    /// Diagnosis variable; the first declared one when omitted.
    #[arg(long)]
    query: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum AldpArg {
    Cl,
    Fl,
    Pl,
    Cpl,
}

impl From<AldpArg> for Aldp {
    fn from(a: AldpArg) -> Self {
        match a {
            AldpArg::Cl => Aldp::Cl,
            AldpArg::Fl => Aldp::Fl,
            AldpArg::Pl => Aldp::Pl,
            AldpArg::Cpl => Aldp::Cpl,
        }
    }
}

/// An input problem (exit 2), as opposed to a failed verification (exit 1).
#[derive(Debug)]
struct InputError(anyhow::Error);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:#}", self.0)
    }
}

impl std::error::Error for InputError {}

fn input<T, E: Into<anyhow::Error>>(r: std::result::Result<T, E>) -> Result<T> {
    r.map_err(|e| InputError(e.into()).into())
}

fn input_err(msg: String) -> anyhow::Error {
    InputError(anyhow!(msg)).into()
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let outcome = match cli.command {
        Command::Eval(args) => eval(&args),
        Command::Oracle {
            action: OracleAction::Verify(args),
        } => verify(&args),
        Command::Algebra {
            action: AlgebraAction::Selftest(args),
        } => selftest(&args),
        Command::Lewis {
            action: LewisAction::Demo(args),
        } => lewis(&args),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            let is_input = e.downcast_ref::<InputError>().is_some();
            ExitCode::from(if is_input { 2 } else { 1 })
        }
    }
}

/// Largest atom count accepted by the sweeps, from `CEA_MAX_ATOMS` when set.
fn max_atoms(default: u128) -> Result<u128> {
    match std::env::var("CEA_MAX_ATOMS") {
        Ok(text) => text.trim().parse().map_err(|_| {
            input_err(format!(
                "CEA_MAX_ATOMS must be a nonnegative integer, got `{text}`"
            ))
        }),
        Err(_) => Ok(default),
    }
}

fn sweep_space(args: &SweepArgs) -> Result<(AtomSpace, Sweep)> {
    let limit = max_atoms(DEFAULT_EXPANSION_LIMIT as u128)?;
    if args.atoms == 0 || args.atoms as u128 > limit {
        return Err(input_err(format!(
            "--atoms {} is outside the supported range 1..={limit}",
            args.atoms
        )));
    }
    Ok((
        input(AtomSpace::new(args.atoms))?,
        Sweep::new(args.seed, args.samples),
    ))
}

/// Prints the reports; returns whether all passed.
fn emit(reports: &[Report], format: Format, extra: Option<Value>) -> bool {
    let passed = reports.iter().all(Report::passed);
    let first = reports.iter().flat_map(Report::failures).next();
    match format {
        Format::Text => {
            for r in reports {
                println!("{r}");
            }
            match first {
                None => println!("result: PASS"),
                Some(c) => println!("result: FAIL (first witness: {} / {c})", c.name),
            }
        }
        Format::Json => {
            let mut doc = json!({ "passed": passed, "reports": reports });
            if let (Some(Value::Object(extra)), Value::Object(map)) = (extra, &mut doc) {
                map.extend(extra);
            }
            println!(
                "{}",
                serde_json::to_string_pretty(&doc).expect("reports serialize")
            );
        }
    }
    passed
}

fn selftest(args: &SweepArgs) -> Result<bool> {
    let (space, sweep) = sweep_space(args)?;
    Ok(emit(&algebra_suites(&space, &sweep), args.format, None))
}

fn verify(args: &VerifyArgs) -> Result<bool> {
    let (space, sweep) = sweep_space(&args.sweep)?;
    let mut reports = oracle_suites(&space, &sweep)?;
    reports.extend(algebra_suites(&space, &sweep));
    reports.extend(semantics_suites(&space, &sweep));
    if args.sweep.atoms <= MAX_ITERATED_ATOMS {
        reports.extend(higher_order_suites(&space, &sweep)?);
    } else {
        let mut skipped = Report::new("iterated conditionals");
        skipped.push(CheckResult::note(
            "skipped",
            format!("membership scans are limited to {MAX_ITERATED_ATOMS} atoms"),
        ));
        reports.push(skipped);
    }
    reports.push(cea_core::inference::diagnosis_example_check(
        args.sweep.seed,
    )?);
    let mut golden_ok = true;
    let mut extra = None;
    if let Some(dir) = &args.golden {
        let (ok, lines) = golden(dir, args.bless)?;
        golden_ok = ok;
        if args.sweep.format == Format::Text {
            lines.iter().for_each(|l| eprintln!("{l}"));
        } else {
            extra = Some(json!({ "golden": { "passed": ok, "details": lines } }));
        }
    }
    let passed = emit(&reports, args.sweep.format, extra);
    Ok(passed && golden_ok)
}

/// Compares the recomputed findings with `dir`, or writes them there.
fn golden(dir: &Path, bless: bool) -> Result<(bool, Vec<String>)> {
    let record = GoldenRecord::compute()?;
    let path = dir.join(GOLDEN_FILE);
    if bless {
        input(fs::create_dir_all(dir)).with_context(|| format!("creating {}", dir.display()))?;
        input(fs::write(&path, record.to_json()))
            .with_context(|| format!("writing {}", path.display()))?;
        return Ok((true, vec![format!("golden: wrote {}", path.display())]));
    }
    let text =
        input(fs::read_to_string(&path)).with_context(|| format!("reading {}", path.display()))?;
    let stored = input(GoldenRecord::from_json(&text))
        .with_context(|| format!("parsing {}", path.display()))?;
    let diff = record.diff(&stored);
    if diff.is_empty() {
        Ok((true, vec![format!("golden: {} matches", path.display())]))
    } else {
        Ok((
            false,
            diff.into_iter()
                .map(|f| format!("golden: `{f}` differs from {}", path.display()))
                .collect(),
        ))
    }
}

fn lewis(args: &LewisArgs) -> Result<bool> {
    if args.atoms < 2 {
        return Err(input_err(format!(
            "--atoms must be at least 2, got {}",
            args.atoms
        )));
    }
    let space = input(AtomSpace::new(args.atoms))?;
    let p = ProbabilityMeasure::<Exact>::uniform(args.atoms)?;
    let b = space.atom(0)?;
    let a = space.empty();
    let gap = p.lewis_gap(&a, &b)?;
    let bound = 1.0 - 1.0 / args.atoms as f64 - 1e-12;
    let ok = gap.gap.to_f64_lossy() >= bound;
    match args.format {
        Format::Text => {
            println!("uniform measure on {} atoms, b = {{0}}, a = 0", args.atoms);
            println!("p(b⇒a) = {}", sig12(gap.p_implies.to_f64_lossy()));
            println!("p(a|b) = {}", sig12(gap.p_cond.to_f64_lossy()));
            println!("gap    = {}", sig12(gap.gap.to_f64_lossy()));
        }
        Format::Json => println!(
            "{}",
            json!({
                "atoms": args.atoms,
                "p_implies": gap.p_implies.to_f64_lossy(),
                "p_cond": gap.p_cond.to_f64_lossy(),
                "gap": gap.gap.to_f64_lossy(),
            })
        ),
    }
    if !ok {
        eprintln!("gap {} is below 1 − 1/atoms", gap.gap);
    }
    Ok(ok)
}

/// A number with 12 significant digits, trailing zeros dropped.
fn sig12(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{}", if x == 0.0 { 0.0 } else { x });
    }
    let digits = 11 - x.abs().log10().floor() as i32;
    let text = format!("{:.*}", digits.max(0) as usize, x);
    if text.contains('.') {
        text.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        text
    }
}

fn read(path: &Path) -> Result<String> {
    input(fs::read_to_string(path)).with_context(|| format!("reading {}", path.display()))
}

fn eval(args: &EvalArgs) -> Result<bool> {
    let kb = match &args.kb {
        Some(path) => input(KnowledgeBase::from_json(&read(path)?))
            .with_context(|| format!("in {}", path.display()))?,
        None => KnowledgeBase::bundled(),
    };
    let obs = match &args.observe {
        Some(path) => input(Observation::from_json(&read(path)?))
            .with_context(|| format!("in {}", path.display()))?,
        None => Observation::bundled(),
    };
    let query = match &args.query {
        Some(q) => q.clone(),
        None => kb
            .variables
            .iter()
            .find(|v| v.kind == VariableKind::Diagnosis)
            .map(|v| v.name.clone())
            .ok_or_else(|| input_err("the knowledge base declares no diagnosis variable".into()))?,
    };
    let engine = input(Engine::new(kb, obs, max_atoms(DEFAULT_MAX_ATOMS)?))?;
    let aldp = Aldp::from(args.aldp);
    match aldp {
        Aldp::Cl => {
            let text = args
                .atom
                .as_deref()
                .ok_or_else(|| input_err("--aldp cl needs --atom".into()))?;
            let atom = match text.trim().parse::<usize>() {
                Ok(i) => i,
                Err(_) => input(engine.grounding().atom_of(text))?,
            };
            render(
                &engine,
                aldp,
                &query,
                &SemanticInput::<f64>::Atom(atom),
                args.format,
            )
        }
        Aldp::Fl => {
            let path = args
                .poss
                .as_ref()
                .ok_or_else(|| input_err("--aldp fl needs --poss".into()))?;
            let text = read(path)?;
            if input(wants_exact(&text))? {
                let poss = input(parse_possibility::<Exact>(&text, engine.grounding()))?;
                render(
                    &engine,
                    aldp,
                    &query,
                    &SemanticInput::Possibility(poss),
                    args.format,
                )
            } else {
                let poss = input(parse_possibility::<f64>(&text, engine.grounding()))?;
                render(
                    &engine,
                    aldp,
                    &query,
                    &SemanticInput::Possibility(poss),
                    args.format,
                )
            }
        }
        Aldp::Pl | Aldp::Cpl => {
            let source = args
                .measure
                .as_deref()
                .ok_or_else(|| input_err(format!("--aldp {aldp} needs --measure")))?;
            let atoms = engine.grounding().space().atom_count();
            match source {
                "uniform" => {
                    let p = ProbabilityMeasure::<f64>::uniform(atoms)?;
                    render(
                        &engine,
                        aldp,
                        &query,
                        &SemanticInput::Measure(p),
                        args.format,
                    )
                }
                "random" => {
                    let p = ProbabilityMeasure::<f64>::random(
                        atoms,
                        &mut Sweep::new(args.seed, 0).rng(),
                    );
                    render(
                        &engine,
                        aldp,
                        &query,
                        &SemanticInput::Measure(p),
                        args.format,
                    )
                }
                path => {
                    let text = read(Path::new(path))?;
                    if input(wants_exact(&text))? {
                        let p = input(parse_measure::<Exact>(&text, engine.grounding()))?;
                        render(
                            &engine,
                            aldp,
                            &query,
                            &SemanticInput::Measure(p),
                            args.format,
                        )
                    } else {
                        let p = input(parse_measure::<f64>(&text, engine.grounding()))?;
                        render(
                            &engine,
                            aldp,
                            &query,
                            &SemanticInput::Measure(p),
                            args.format,
                        )
                    }
                }
            }
        }
    }
}

fn render<S: Scalar>(
    engine: &Engine,
    aldp: Aldp,
    query: &str,
    semantics: &SemanticInput<S>,
    format: Format,
) -> Result<bool> {
    let rows = input(engine.evaluate(aldp, query, semantics))?;
    match format {
        Format::Text => {
            println!("query: {query} ({aldp})");
            let width = rows
                .iter()
                .map(|(v, _)| v.chars().count())
                .max()
                .unwrap_or(0);
            for (value, grade) in &rows {
                let shown = match grade {
                    Ok(g) if S::is_exact() => format!("{}  ({g})", sig12(g.to_f64_lossy())),
                    Ok(g) => sig12(g.to_f64_lossy()),
                    Err(SemanticsError::UndefinedConditional) => "undefined".to_string(),
                    Err(e) => format!("error: {e}"),
                };
                println!("{value:<width$}  {shown}");
            }
        }
        Format::Json => {
            let results: Vec<Value> = rows
                .iter()
                .map(|(value, grade)| match grade {
                    Ok(g) if S::is_exact() => {
                        json!({ "value": value, "grade": g.to_f64_lossy(), "exact": g.to_string() })
                    }
                    Ok(g) => json!({ "value": value, "grade": g.to_f64_lossy() }),
                    Err(SemanticsError::UndefinedConditional) => {
                        json!({ "value": value, "error": "undefined" })
                    }
                    Err(e) => json!({ "value": value, "error": e.to_string() }),
                })
                .collect();
            println!(
                "{}",
                serde_json::to_string_pretty(
                    &json!({ "query": query, "aldp": aldp.to_string(), "results": results })
                )
                .expect("results serialize")
            );
        }
    }
    Ok(true)
}
