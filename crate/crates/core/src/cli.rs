//! Command-line front end: argument parsing, the four subcommands and report
//! emission. Output is byte-deterministic for a fixed configuration.

use std::fmt;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::bounds::{BoundContext, BoundEntry, BoundReport};
use crate::checks::{Battery, Status};
use crate::corpus;
use crate::error::{FrequencyError, GraphError, LanguageError, ParseError, SymmetryError, WordError};
use crate::frequency::{empirical_frequencies, FrequencyEngine, FrequencyMap};
use crate::language::LanguageIndex;
use crate::morphism::Morphism;
use crate::rauzy::RauzyGraph;
use crate::spectral::Mode;
use crate::symmetry::{
    invariance_violation, read_generators, theta_palindromic_complexity, Gate, Symmetry, SymmetryGroup,
};
use crate::word::{Alphabet, Letter};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_HYPOTHESIS: i32 = 3;
pub const EXIT_VIOLATION: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "wordsym", version, about = "Factor frequencies and symmetry bounds for substitutive words")]
pub struct Cli {
    #[command(flatten)]
    pub config: Config,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Config {
    /// Morphism file (`a -> image` per line).
    #[arg(long, global = true, value_name = "PATH", conflicts_with = "corpus")]
    pub morphism: Option<PathBuf>,
    /// Built-in word: example, thue_morse, fibonacci or periodic.
    #[arg(long, global = true, value_name = "NAME")]
    pub corpus: Option<String>,
    /// Generator file; defaults to the corpus group, or {Id, R} for files.
    #[arg(long, global = true, value_name = "PATH")]
    pub group: Option<PathBuf>,
    /// Letter whose fixed point is studied; defaults to the first letter.
    #[arg(long, global = true, value_name = "LETTER")]
    pub seed: Option<char>,
    #[arg(long, global = true, default_value_t = 40, value_parser = clap::value_parser!(u64).range(1..))]
    pub n_max: u64,
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Exact)]
    pub mode: ModeArg,
    /// Approximate-mode tolerance.
    #[arg(long, global = true, default_value_t = 1e-9, value_parser = positive)]
    pub tolerance: f64,
    /// Prefix length for empirical estimates.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    pub prefix_floor: usize,
    /// How the threshold order N is chosen.
    #[arg(long, global = true, value_enum, default_value_t = GateArg::UniformRecurrence)]
    pub gate: GateArg,
    /// Defaults to json, or dot for `graph`.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write to a file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(t) if t > 0.0 && t.is_finite() => Ok(t),
        _ => Err(format!("expected a positive number, got {s:?}")),
    }
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Per-order complexity, special factors, frequencies and bounds.
    Analyze,
    /// Rauzy graph of a given order in DOT.
    Graph {
        #[arg(long)]
        order: usize,
        #[arg(long)]
        reduced: bool,
        /// Omit frequency labels.
        #[arg(long)]
        no_labels: bool,
    },
    /// Frequencies of all factors of one length.
    Freqs {
        #[arg(long)]
        length: usize,
    },
    /// Run the invariant battery.
    Verify,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exact,
    Approx,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GateArg {
    UniformRecurrence,
    Separation,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Dot,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Hypothesis(String),
    Violation(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Hypothesis(_) => EXIT_HYPOTHESIS,
            CliError::Violation(_) => EXIT_VIOLATION,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Hypothesis(m) | CliError::Violation(m) => f.write_str(m),
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<WordError> for CliError {
    fn from(e: WordError) -> Self {
        CliError::Hypothesis(e.to_string())
    }
}

impl From<LanguageError> for CliError {
    fn from(e: LanguageError) -> Self {
        match e {
            LanguageError::Word(w) => w.into(),
            LanguageError::NotStabilized(_) => CliError::Hypothesis(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<FrequencyError> for CliError {
    fn from(e: FrequencyError) -> Self {
        match e {
            FrequencyError::Language(l) => l.into(),
            other => CliError::Hypothesis(other.to_string()),
        }
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::Language(l) => l.into(),
            GraphError::Frequency(f) => f.into(),
            GraphError::ZeroOrder => CliError::Usage(e.to_string()),
            other => CliError::Hypothesis(other.to_string()),
        }
    }
}

impl From<SymmetryError> for CliError {
    fn from(e: SymmetryError) -> Self {
        CliError::Hypothesis(e.to_string())
    }
}

impl From<crate::error::BoundError> for CliError {
    fn from(e: crate::error::BoundError) -> Self {
        CliError::Hypothesis(e.to_string())
    }
}

/// The loaded word with its group.
struct Input {
    label: String,
    morphism: Morphism,
    group: SymmetryGroup,
    generators: Vec<Symmetry>,
    seed: Letter,
    lang: LanguageIndex,
}

fn load(cfg: &Config) -> Result<Input, CliError> {
    let (label, morphism, corpus_gens) = match (&cfg.morphism, &cfg.corpus) {
        (Some(path), None) => (path.display().to_string(), Morphism::from_file(path)?, None),
        (None, Some(name)) => {
            let w = corpus::load(name)?;
            (w.name, w.morphism, Some(w.generators))
        }
        (None, None) => return Err(CliError::Usage("one of --morphism or --corpus is required".into())),
        (Some(_), Some(_)) => unreachable!("clap rejects --morphism with --corpus"),
    };
    let alphabet = morphism.alphabet().clone();
    let m = alphabet.len();
    let generators = match (&cfg.group, corpus_gens) {
        (Some(path), _) => read_generators(path, &alphabet)?,
        (None, Some(g)) => g,
        (None, None) => vec![Symmetry::reversal(m)],
    };
    let group = SymmetryGroup::closure(&generators, m);
    let seed = match cfg.seed {
        Some(c) => alphabet
            .index_of(c)
            .ok_or(CliError::Usage(format!("seed {c:?} is not in the alphabet")))?,
        None => 0,
    };
    if !morphism.is_primitive() {
        return Err(WordError::NotPrimitive.into());
    }
    let lang = LanguageIndex::build(&morphism, seed, cfg.n_max as usize)?;
    Ok(Input {
        label,
        morphism,
        group,
        generators,
        seed,
        lang,
    })
}

fn engine<'a>(cfg: &Config, input: &'a Input) -> Result<FrequencyEngine<'a>, CliError> {
    let mode = match cfg.mode {
        ModeArg::Exact => Mode::Exact,
        ModeArg::Approx => Mode::Approx,
    };
    let e = match FrequencyEngine::with_tolerance(&input.morphism, &input.lang, mode, cfg.tolerance) {
        Err(FrequencyError::Word(WordError::FieldDegreeTooHigh(d))) => {
            eprintln!("warning: Perron root has degree {d}; falling back to approximate mode");
            FrequencyEngine::with_tolerance(&input.morphism, &input.lang, Mode::Approx, cfg.tolerance)?
        }
        other => other?,
    };
    if e.used_empirical_base() {
        eprintln!("warning: base system is singular; length-2 frequencies are empirical");
    }
    Ok(e)
}

fn invariance(input: &Input) -> Result<(), CliError> {
    match invariance_violation(&input.lang, &input.group) {
        None => Ok(()),
        Some((s, w)) => {
            let a = input.lang.alphabet();
            Err(CliError::Hypothesis(format!(
                "language is not invariant: {} maps {} outside it",
                s.notation(a),
                a.render(&w)
            )))
        }
    }
}

fn gate(cfg: &Config) -> Gate {
    match cfg.gate {
        GateArg::UniformRecurrence => Gate::UniformRecurrence,
        GateArg::Separation => Gate::Separation,
    }
}

fn word_header(cfg: &Config, input: &Input, e: &FrequencyEngine, ctx: Option<&BoundContext>) -> Value {
    let a = input.lang.alphabet();
    let sp = e.spectral();
    let mut letters = Map::new();
    for (i, x) in sp.eigenvector.iter().enumerate() {
        letters.insert(a.symbol(i as Letter).to_string(), Value::String(x.to_string()));
    }
    let rules: Map<String, Value> = input
        .morphism
        .images()
        .iter()
        .enumerate()
        .map(|(i, img)| (a.symbol(i as Letter).to_string(), Value::String(a.render(img))))
        .collect();
    let mut v = json!({
        "name": input.label,
        "alphabet": a.letters().iter().collect::<String>(),
        "morphism": rules,
        "seed": a.symbol(input.seed).to_string(),
        "n_max": input.lang.n_max(),
        "mode": if e.mode() == Mode::Exact { "exact" } else { "approx" },
        "eigenvalue": sp.eigenvalue.to_string(),
        "field": e.field().map(|f| f.describe()),
        "letter_frequencies": letters,
        "group": input.group.elements().iter().map(|s| s.notation(a)).collect::<Vec<_>>(),
        "generators": input.generators.iter().map(|s| s.describe(a)).collect::<Vec<_>>(),
        "group_order": input.group.order(),
    });
    if cfg.mode == ModeArg::Approx || e.mode() == Mode::Approx {
        v["tolerance"] = json!(cfg.tolerance);
    }
    if let Some(ctx) = ctx {
        v["invariant"] = json!(ctx.invariant());
        v["threshold"] = json!(ctx.threshold());
        v["gate"] = json!(match cfg.gate {
            GateArg::UniformRecurrence => "uniform-recurrence",
            GateArg::Separation => "separation",
        });
    }
    v
}

fn bound_value(e: &BoundEntry) -> Value {
    match e.value {
        Some(v) => Value::String(v.to_string()),
        None => Value::Null,
    }
}

fn analyze_row(input: &Input, fm: &FrequencyMap, r: &BoundReport) -> Result<Value, CliError> {
    let l = &input.lang;
    let a = l.alphabet();
    let n = r.n;
    let render = |ws: &[crate::word::Word]| ws.iter().map(|w| a.render(w)).collect::<Vec<_>>();
    let sf = l.special_factors(n)?;
    let mut palindromes = Map::new();
    for theta in input.group.involutive_antimorphisms() {
        let p = theta_palindromic_complexity(l, theta, n)?;
        let q = theta_palindromic_complexity(l, theta, n + 1)?;
        palindromes.insert(theta.notation(a), json!([p, q]));
    }
    let frequencies: Map<String, Value> = fm
        .level(n + 1)
        .iter()
        .map(|(w, x)| (a.render(w), Value::String(x.to_string())))
        .collect();
    let d = r.distinct_count();
    let mut bounds = Map::new();
    let mut verdicts = Map::new();
    for (name, e) in r.entries() {
        bounds.insert(name.to_string(), bound_value(e));
        verdicts.insert(name.to_string(), Value::String(e.verdict(d)));
    }
    Ok(json!({
        "n": n,
        "complexity": r.complexity,
        "delta_c": r.delta_c,
        "special": {"ls": render(&sf.left), "rs": render(&sf.right), "bs": render(&sf.bispecial)},
        "palindromes": palindromes,
        "census": {"x": r.census.x, "y": r.census.y, "y_reversal": r.census.y_reversal},
        "frequencies": frequencies,
        "distinct": d,
        "distinct_values": r.distinct.values.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "near_split": r.distinct.near_split,
        "bounds": bounds,
        "verdicts": verdicts,
        "attained": r.group.attained_informational(d),
    }))
}

fn csv_text(header: &[&str], rows: &[Vec<String>]) -> Result<String, CliError> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    let io = |e: csv::Error| CliError::Usage(e.to_string());
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.write_record(r).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn format_or(cfg: &Config, default: Format, allowed: &[Format]) -> Result<Format, CliError> {
    let f = cfg.format.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(CliError::Usage(format!("format {f:?} is not available for this command")))
    }
}

/// Report text plus the error to exit with after it has been written.
type Outcome = (String, Option<CliError>);

fn cmd_analyze(cfg: &Config) -> Result<Outcome, CliError> {
    let format = format_or(cfg, Format::Json, &[Format::Json, Format::Csv])?;
    let input = load(cfg)?;
    let mut e = engine(cfg, &input)?;
    let n_max = input.lang.n_max();
    let fm = e.frequency_map(n_max)?;
    let ctx = BoundContext::new(&input.lang, &input.group, gate(cfg));
    let mut reports = Vec::new();
    for n in 1..=n_max {
        reports.push(ctx.evaluate(&fm, n)?);
    }
    let violated: Vec<usize> = reports.iter().filter(|r| r.any_violation()).map(|r| r.n).collect();
    let status = if !violated.is_empty() {
        Some(CliError::Violation(format!("bounds exceeded at n = {violated:?}")))
    } else {
        invariance(&input).err()
    };
    let text = match format {
        Format::Csv => {
            let rows: Vec<Vec<String>> = reports
                .iter()
                .map(|r| {
                    let v = |e: &BoundEntry| e.value.map(|x| x.to_string()).unwrap_or_default();
                    vec![
                        r.n.to_string(),
                        r.complexity.to_string(),
                        r.delta_c.to_string(),
                        r.census.x.to_string(),
                        r.census.y.to_string(),
                        r.distinct_count().to_string(),
                        v(&r.boshernitzan),
                        v(&r.reversal),
                        v(&r.group),
                        r.group.attained_informational(r.distinct_count()).to_string(),
                    ]
                })
                .collect();
            csv_text(
                &["n", "C", "deltaC", "X", "Y", "distinct", "b_bosh", "b_rev", "b_group", "attained"],
                &rows,
            )?
        }
        _ => {
            let rows = reports
                .iter()
                .map(|r| analyze_row(&input, &fm, r))
                .collect::<Result<Vec<_>, _>>()?;
            json_text(&json!({"word": word_header(cfg, &input, &e, Some(&ctx)), "rows": rows}))
        }
    };
    Ok((text, status))
}

fn cmd_graph(cfg: &Config, order: usize, reduced: bool, labels: bool) -> Result<Outcome, CliError> {
    format_or(cfg, Format::Dot, &[Format::Dot])?;
    let input = load(cfg)?;
    let n_max = input.lang.n_max();
    if order == 0 || order >= n_max {
        return Err(CliError::Usage(format!("--order must lie in 1..={}", n_max - 1)));
    }
    let mut g = RauzyGraph::build(&input.lang, order)?;
    if labels {
        let mut e = engine(cfg, &input)?;
        g = g.with_labels(&e.frequency_map(order)?)?;
    }
    let a = input.lang.alphabet();
    let text = if reduced {
        g.reduce(&input.lang)?.to_dot(a, labels)
    } else {
        g.to_dot(a, labels)
    };
    Ok((text, None))
}

fn cmd_freqs(cfg: &Config, length: usize) -> Result<Outcome, CliError> {
    let format = format_or(cfg, Format::Json, &[Format::Json, Format::Csv])?;
    let input = load(cfg)?;
    let n_max = input.lang.n_max();
    if length > n_max {
        return Err(CliError::Usage(format!("--length must be at most --n-max = {n_max}")));
    }
    let mut e = engine(cfg, &input)?;
    let fm = e.frequency_map(length)?;
    let prefix = input.morphism.fixed_point_exact(input.seed, cfg.prefix_floor.max(length))?;
    let empirical = empirical_frequencies(&prefix, &input.lang, length);
    let a: &Alphabet = input.lang.alphabet();
    let rows: Vec<(String, String, f64, f64)> = fm
        .level(length)
        .iter()
        .zip(&empirical)
        .map(|((w, x), (_, est))| (a.render_display(w), x.to_string(), x.to_f64(), *est))
        .collect();
    let text = match format {
        Format::Csv => csv_text(
            &["factor", "value", "approx", "empirical"],
            &rows
                .iter()
                .map(|(w, x, f, est)| vec![w.clone(), x.clone(), format!("{f:.12}"), format!("{est:.12}")])
                .collect::<Vec<_>>(),
        )?,
        _ => json_text(&json!({
            "word": word_header(cfg, &input, &e, None),
            "length": length,
            "prefix_length": prefix.len(),
            "rows": rows.iter().map(|(w, x, f, est)| json!({
                "factor": w, "value": x, "approx": f, "empirical": est,
            })).collect::<Vec<_>>(),
        })),
    };
    Ok((text, None))
}

fn cmd_verify(cfg: &Config) -> Result<Outcome, CliError> {
    let format = format_or(cfg, Format::Json, &[Format::Json, Format::Csv])?;
    let input = load(cfg)?;
    let mut e = engine(cfg, &input)?;
    let fm = e.frequency_map(input.lang.n_max())?;
    let checks = Battery {
        morphism: &input.morphism,
        lang: &input.lang,
        group: &input.group,
        gate: gate(cfg),
        prefix_floor: cfg.prefix_floor,
    }
    .run(&mut e, &fm)?;
    let failed: Vec<&str> = checks
        .iter()
        .filter(|c| c.status == Status::Fail)
        .map(|c| c.name)
        .collect();
    let status = if failed.iter().any(|&n| n != "group_invariance") {
        Some(CliError::Violation(format!("failed checks: {}", failed.join(", "))))
    } else if !failed.is_empty() {
        invariance(&input).err()
    } else {
        None
    };
    let text = match format {
        Format::Csv => csv_text(
            &["check", "status", "detail"],
            &checks
                .iter()
                .map(|c| vec![c.name.to_string(), c.status.as_str().to_string(), c.detail.clone()])
                .collect::<Vec<_>>(),
        )?,
        _ => {
            let ctx = BoundContext::new(&input.lang, &input.group, gate(cfg));
            json_text(&json!({
                "word": word_header(cfg, &input, &e, Some(&ctx)),
                "checks": checks.iter().map(|c| json!({
                    "name": c.name, "status": c.status.as_str(), "detail": c.detail,
                })).collect::<Vec<_>>(),
                "passed": failed.is_empty(),
            }))
        }
    };
    Ok((text, status))
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let cfg = &cli.config;
    match &cli.command {
        Command::Analyze => cmd_analyze(cfg),
        Command::Graph {
            order,
            reduced,
            no_labels,
        } => cmd_graph(cfg, *order, *reduced, !no_labels),
        Command::Freqs { length } => cmd_freqs(cfg, *length),
        Command::Verify => cmd_verify(cfg),
    }
}

/// Entry point of the binary; returns the process exit code.
pub fn main() -> i32 {
    let cli = Cli::parse();
    let (text, status) = match run(&cli) {
        Ok(x) => x,
        Err(e) => {
            eprintln!("error: {e}");
            return e.code();
        }
    };
    let written = match &cli.config.out {
        Some(path) => std::fs::write(path, &text).map_err(|e| format!("{}: {e}", path.display())),
        None => std::io::stdout().lock().write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return EXIT_USAGE;
    }
    match status {
        None => EXIT_OK,
        Some(e) => {
            eprintln!("error: {e}");
            e.code()
        }
    }
}
