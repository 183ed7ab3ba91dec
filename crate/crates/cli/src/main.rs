//! `shrubs`: count, enumerate and biject pattern-avoiding shrub forests.
//!
//! Data goes to stdout, diagnostics to stderr. Exit status is 0 on success,
//! 1 on domain errors (bad paths, permutations outside a class, failed
//! checks) and 2 on usage errors.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use shrubs::av321::{self, MinimalPolynomial};
use shrubs::bijections as bij;
use shrubs::forest::{forest_of_pi, Enumerator, DEFAULT_NODE_BUDGET};
use shrubs::formulas;
use shrubs::oeis::{self, Alignment, Cache, Sequence};
use shrubs::paths::{self, GenerateOptions};
use shrubs::{BigUint, Error, LatticePath, PatternSet, Permutation, StepAlphabet, WedgeBound};

#[derive(Parser, Debug)]
#[command(name = "shrubs", version, about = "Pattern avoidance in shrub forests")]
struct Cli {
    /// Worker threads for parallel searches (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count forests avoiding a pattern set.
    Count(CountArgs),
    /// List every forest avoiding a pattern set.
    Enumerate(EnumerateArgs),
    /// Map between forests and lattice paths.
    Bijection(BijectionArgs),
    /// Evaluate a closed-form count.
    Formula {
        #[command(subcommand)]
        formula: FormulaCommand,
        #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// The series engine for 321-avoiding binary forests.
    Av321 {
        #[command(subcommand)]
        command: Av321Command,
    },
    /// Compare a computed sequence with its OEIS entry.
    OeisCheck(OeisArgs),
    /// Generate, check and transform lattice paths.
    Paths {
        #[command(subcommand)]
        command: PathsCommand,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Bfile,
    Plain,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Direction {
    ToPerm,
    ToPath,
}

#[derive(Args, Debug)]
struct PatternArgs {
    /// Leaves per shrub.
    #[arg(long, default_value_t = 2)]
    k: usize,
    /// A single pattern, e.g. 321.
    #[arg(long, value_parser = parse_single, conflicts_with = "patterns")]
    pattern: Option<PatternSet>,
    /// A comma-separated pattern set, e.g. 213,312.
    #[arg(long, value_parser = parse_patterns)]
    patterns: Option<PatternSet>,
    /// Abort brute-force searches after visiting this many nodes.
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    node_budget: u64,
}

impl PatternArgs {
    fn set(&self) -> Option<PatternSet> {
        match (&self.pattern, &self.patterns) {
            (Some(p), _) => Some(p.clone()),
            (None, Some(s)) => Some(s.clone()),
            (None, None) => None,
        }
    }

    fn labels(&self) -> Vec<String> {
        self.set().map(|s| s.iter().map(|p| p.to_string()).collect()).unwrap_or_default()
    }
}

#[derive(Args, Debug)]
struct CountArgs {
    #[command(flatten)]
    patterns: PatternArgs,
    /// Number of shrubs, or an inclusive range such as 1..10.
    #[arg(long, value_parser = parse_range)]
    n: (usize, usize),
    /// Always use the brute-force enumerator.
    #[arg(long)]
    brute_force: bool,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    format: Format,
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    #[command(flatten)]
    patterns: PatternArgs,
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    format: Format,
}

#[derive(Args, Debug)]
struct BijectionArgs {
    /// One of 123, 132, 213, 312, 231.
    #[arg(long, value_parser = ["123", "132", "213", "312", "231"])]
    pattern: String,
    #[arg(long, value_enum)]
    direction: Direction,
    /// A path (step letters) or a permutation.
    #[arg(long, allow_hyphen_values = true)]
    input: String,
    /// Leaves per shrub for 123 and 132 (inferred from paths when omitted).
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    format: Format,
}

#[derive(Subcommand, Debug)]
enum FormulaCommand {
    /// Paths below y = lx to (m, lm).
    Fuss {
        #[arg(long)]
        l: u64,
        #[arg(long)]
        m: u64,
    },
    /// Paths with a diagonal step below y = lx to (m, lm).
    Schroder {
        #[arg(long)]
        l: u64,
        #[arg(long)]
        m: u64,
    },
    /// Paths below y = 2x/3 to (3n, 2n).
    Duchon {
        #[arg(long)]
        n: u64,
    },
    /// All forests of n shrubs with k leaves each.
    Unrestricted {
        #[arg(long, default_value_t = 2)]
        k: u64,
        #[arg(long)]
        n: u64,
    },
}

#[derive(Subcommand, Debug)]
enum Av321Command {
    /// The first terms of the counting sequence, from n = 0.
    Series {
        #[arg(long)]
        terms: usize,
        /// Emit a b-file instead of one value per line.
        #[arg(long)]
        bfile: bool,
        #[arg(long, value_enum, default_value_t = Format::Plain, conflicts_with = "bfile")]
        format: Format,
    },
    /// Substitute the series into its minimal polynomial.
    VerifyMinpoly {
        #[arg(long)]
        order: usize,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Bracket the growth rate.
    GrowthRate {
        #[arg(long, default_value_t = 5)]
        digits: u32,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
}

#[derive(Args, Debug)]
struct OeisArgs {
    /// One of the supported A-numbers.
    #[arg(long, value_parser = oeis::VENDORED)]
    id: String,
    #[arg(long, default_value_t = 20)]
    terms: usize,
    /// Never touch the network; fall back to the bundled prefix.
    #[arg(long)]
    offline: bool,
    #[arg(long, default_value = "cache")]
    cache_dir: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    format: Format,
}

#[derive(Args, Debug)]
struct PathSpec {
    /// Step letters: E N X A B D.
    #[arg(long, default_value = "EN")]
    alphabet: String,
    /// `below:P/Q` for y <= (P/Q)x, or `above` for y >= 0.
    #[arg(long, value_parser = parse_bound)]
    bound: WedgeBound,
    /// Endpoint as X,Y.
    #[arg(long, value_parser = parse_point)]
    to: (i64, i64),
}

#[derive(Subcommand, Debug)]
enum PathsCommand {
    /// Every admissible path, in lexicographic order.
    Generate {
        #[command(flatten)]
        spec: PathSpec,
        /// Print only the number of paths.
        #[arg(long)]
        count: bool,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        node_budget: u64,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Whether a path stays in the wedge and ends at the endpoint.
    Check {
        #[command(flatten)]
        spec: PathSpec,
        #[arg(long)]
        path: String,
    },
    /// Apply (x, y) -> (x + y, lx - y).
    Transform {
        #[arg(long, default_value = "EN")]
        alphabet: String,
        #[arg(long)]
        slope: u64,
        #[arg(long)]
        path: String,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
}

fn parse_single(s: &str) -> Result<PatternSet, String> {
    let p: Permutation = s.parse().map_err(|e: Error| e.to_string())?;
    PatternSet::single(p).map_err(|e| e.to_string())
}

fn parse_patterns(s: &str) -> Result<PatternSet, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("bad count {t:?}"));
    match s.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (num(a)?, num(b.trim_start_matches('='))?);
            if a > b {
                return Err(format!("empty range {s}"));
            }
            Ok((a, b))
        }
        None => num(s).map(|n| (n, n)),
    }
}

fn parse_bound(s: &str) -> Result<WedgeBound, String> {
    if s == "above" {
        return Ok(WedgeBound::AboveAxis);
    }
    let rest = s.strip_prefix("below:").ok_or("expected below:P/Q or above")?;
    let (p, q) = rest.split_once('/').unwrap_or((rest, "1"));
    let p = p.parse::<u64>().map_err(|_| format!("bad slope numerator {p:?}"))?;
    let q = q.parse::<u64>().map_err(|_| format!("bad slope denominator {q:?}"))?;
    WedgeBound::below_line(p, q).map_err(|e| e.to_string())
}

fn parse_point(s: &str) -> Result<(i64, i64), String> {
    let (x, y) = s.split_once(',').ok_or("expected X,Y")?;
    let x = x.trim().parse().map_err(|_| format!("bad x {x:?}"))?;
    let y = y.trim().parse().map_err(|_| format!("bad y {y:?}"))?;
    Ok((x, y))
}

type Outcome = Result<Output, Error>;

/// What a command prints, and whether it counts as a failure.
struct Output {
    text: String,
    ok: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, ok: true }
    }
}

fn json_line(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("serializable");
    s.push('\n');
    s
}

// ---------------------------------------------------------------- count

fn closed_form(k: usize, n: usize, set: Option<&PatternSet>) -> Result<Option<BigUint>, Error> {
    let n64 = n as u64;
    let Some(set) = set else {
        return Ok(Some(formulas::unrestricted_count(k as u64, n64)));
    };
    if set.len() != 1 {
        return Ok(None);
    }
    let rho = set.iter().next().expect("one pattern").to_string();
    Ok(match (rho.as_str(), k) {
        ("123", _) => Some(formulas::fuss_count(k as u64, n64)?),
        ("132", _) => Some(formulas::fuss_count(k as u64 + 1, n64)?),
        ("213" | "312", 2) => Some(formulas::schroder_count(3, n64)?),
        ("231", 2) => Some(formulas::duchon_count(n64)?),
        ("321", 2) => av321::series(n + 1)?.pop(),
        _ => None,
    })
}

fn count_values(args: &CountArgs) -> Result<Vec<(usize, BigUint)>, Error> {
    let set = args.patterns.set();
    let (lo, hi) = args.n;
    let series_321 = match (&set, args.brute_force) {
        (Some(s), false) if args.patterns.k == 2 && s.len() == 1 && s.iter().next().is_some_and(|p| p.to_string() == "321") => {
            Some(av321::series(hi + 1)?)
        }
        _ => None,
    };
    (lo..=hi)
        .map(|n| {
            if let Some(s) = &series_321 {
                return Ok((n, s[n].clone()));
            }
            if !args.brute_force {
                if let Some(v) = closed_form(args.patterns.k, n, set.as_ref())? {
                    return Ok((n, v));
                }
            }
            let count = Enumerator::new(args.patterns.k, n, set.clone())?
                .with_node_budget(args.patterns.node_budget)
                .count()?;
            Ok((n, count))
        })
        .collect()
}

fn cmd_count(args: &CountArgs) -> Outcome {
    let values = count_values(args)?;
    let k = args.patterns.k;
    let labels = args.patterns.labels();
    let single = args.n.0 == args.n.1;
    let mut out = String::new();
    match args.format {
        Format::Plain => {
            for (_, v) in &values {
                writeln!(out, "{v}").unwrap();
            }
        }
        Format::Bfile => {
            let seq = Sequence::from_values("count", args.n.0 as i64, values.iter().map(|(_, v)| v.clone()));
            out = oeis::emit_bfile(&seq);
        }
        Format::Csv => {
            out.push_str("k,n,patterns,count\n");
            for (n, v) in &values {
                writeln!(out, "{k},{n},{},{v}", labels.join(";")).unwrap();
            }
        }
        Format::Json => {
            let rows: Vec<Value> = values
                .iter()
                .map(|(n, v)| json!({"k": k, "n": n, "patterns": labels, "count": v.to_string()}))
                .collect();
            out = json_line(&if single { rows[0].clone() } else { Value::Array(rows) });
        }
    }
    Ok(Output::ok(out))
}

// ---------------------------------------------------------------- enumerate

fn cmd_enumerate(args: &EnumerateArgs) -> Outcome {
    let k = args.patterns.k;
    let forests = Enumerator::new(k, args.n, args.patterns.set())?
        .with_node_budget(args.patterns.node_budget)
        .collect()?;
    let labels = args.patterns.labels();
    let mut out = String::new();
    match args.format {
        Format::Json => {
            let lines: Vec<String> = forests.iter().map(|f| f.to_line()).collect();
            out = json_line(&json!({
                "k": k,
                "n": args.n,
                "patterns": labels,
                "count": forests.len().to_string(),
                "forests": lines,
            }));
        }
        Format::Csv => {
            out.push_str("index,forest\n");
            for (i, f) in forests.iter().enumerate() {
                writeln!(out, "{i},{}", f.to_line()).unwrap();
            }
        }
        Format::Plain | Format::Bfile => {
            writeln!(out, "k={k} n={} patterns={} count={}", args.n, labels.join(","), forests.len()).unwrap();
            for f in &forests {
                writeln!(out, "{}", f.to_line()).unwrap();
            }
        }
    }
    Ok(Output::ok(out))
}

// ---------------------------------------------------------------- bijection

fn infer_k(path: &LatticePath, pattern: &str) -> Result<usize, Error> {
    let (e, n) = (path.count('E'), path.count('N'));
    if e == 0 {
        return Ok(2);
    }
    if n % e != 0 {
        return Err(Error::InvalidPath(format!("cannot infer k from {e} East and {n} North steps")));
    }
    let ratio = n / e;
    Ok(if pattern == "132" { ratio.saturating_sub(1) } else { ratio })
}

fn cmd_bijection(args: &BijectionArgs) -> Outcome {
    let p = args.pattern.as_str();
    let output = match args.direction {
        Direction::ToPerm => {
            let alphabet = match p {
                "213" | "312" => StepAlphabet::up_down(),
                _ => StepAlphabet::east_north(),
            };
            let path = LatticePath::parse(&alphabet, args.input.trim())?;
            let perm = match p {
                "123" => bij::bij123_path_to_forest(&path, args.k.map_or_else(|| infer_k(&path, p), Ok)?)?.permutation(),
                "132" => bij::bij132_path_to_forest(&path, args.k.map_or_else(|| infer_k(&path, p), Ok)?)?.permutation(),
                "213" => bij::bij213_path_to_perm(&path)?,
                "312" => bij::bij312_path_to_perm(&path)?,
                _ => bij::bij231_path_to_perm(&path)?,
            };
            perm.to_string()
        }
        Direction::ToPath => {
            let perm: Permutation = args.input.parse()?;
            let path = match p {
                "123" => bij::bij123_forest_to_path(&forest_of_pi(&perm, args.k.unwrap_or(2))?)?,
                "132" => bij::bij132_forest_to_path(&forest_of_pi(&perm, args.k.unwrap_or(2))?)?,
                "213" => bij::bij213_perm_to_path(&perm)?,
                "312" => bij::bij312_perm_to_path(&perm)?,
                _ => bij::bij231_perm_to_path(&perm)?,
            };
            path.tokens().to_string()
        }
    };
    let text = match args.format {
        Format::Json => json_line(&json!({
            "pattern": p,
            "direction": match args.direction { Direction::ToPerm => "to-perm", Direction::ToPath => "to-path" },
            "input": args.input.trim(),
            "output": output,
        })),
        _ => format!("{output}\n"),
    };
    Ok(Output::ok(text))
}

// ---------------------------------------------------------------- formula

fn cmd_formula(formula: &FormulaCommand, format: Format) -> Outcome {
    let (name, params, value) = match *formula {
        FormulaCommand::Fuss { l, m } => ("fuss", json!({"l": l, "m": m}), formulas::fuss_count(l, m)?),
        FormulaCommand::Schroder { l, m } => ("schroder", json!({"l": l, "m": m}), formulas::schroder_count(l, m)?),
        FormulaCommand::Duchon { n } => ("duchon", json!({"n": n}), formulas::duchon_count(n)?),
        FormulaCommand::Unrestricted { k, n } => ("unrestricted", json!({"k": k, "n": n}), formulas::unrestricted_count(k, n)),
    };
    let text = match format {
        Format::Json => json_line(&json!({"formula": name, "params": params, "value": value.to_string()})),
        _ => format!("{value}\n"),
    };
    Ok(Output::ok(text))
}

// ---------------------------------------------------------------- av321

fn cmd_av321(command: &Av321Command) -> Outcome {
    match *command {
        Av321Command::Series { terms, bfile, format } => {
            let s = av321::series(terms)?;
            let seq = Sequence::from_values("A257995", 0, s);
            let format = if bfile { Format::Bfile } else { format };
            let text = match format {
                Format::Bfile => oeis::emit_bfile(&seq),
                Format::Json => {
                    let terms: Vec<String> = seq.terms().iter().map(|v| v.to_string()).collect();
                    json_line(&json!({"offset": 0, "terms": terms}))
                }
                Format::Csv => {
                    let mut out = String::from("n,count\n");
                    for (i, v) in seq.iter() {
                        writeln!(out, "{i},{v}").unwrap();
                    }
                    out
                }
                Format::Plain => seq.terms().iter().map(|v| format!("{v}\n")).collect(),
            };
            Ok(Output::ok(text))
        }
        Av321Command::VerifyMinpoly { order, format } => {
            let s = av321::series(order + 1)?;
            let check = av321::verify_min_poly(&MinimalPolynomial::bundled(), &s, order)?;
            let text = match format {
                Format::Json => json_line(&json!({
                    "order": order,
                    "holds": check.holds(),
                    "first_failure": check.first_failure,
                })),
                _ => match check.first_failure {
                    None => format!("holds through order {order}\n"),
                    Some(i) => format!("fails at order {i}\n"),
                },
            };
            Ok(Output { text, ok: check.holds() })
        }
        Av321Command::GrowthRate { digits, format } => {
            let g = av321::growth_rate(digits)?;
            let text = match format {
                Format::Json => json_line(&json!({
                    "digits": digits,
                    "value": g.decimal,
                    "lower": g.lo.to_string(),
                    "upper": g.hi.to_string(),
                })),
                _ => format!("{}\n", g.decimal),
            };
            Ok(Output::ok(text))
        }
    }
}

// ---------------------------------------------------------------- oeis-check

fn computed_sequence(id: &str, terms: usize) -> Result<Sequence, Error> {
    let values: Vec<BigUint> = match id {
        "A257995" => av321::series(terms.max(1))?.into_iter().take(terms).collect(),
        _ => (0..terms as u64)
            .map(|n| match id {
                "A001764" => formulas::fuss_count(2, n),
                "A002293" => formulas::fuss_count(3, n),
                "A144097" => formulas::schroder_count(3, n),
                "A060941" => formulas::duchon_count(n),
                _ => Ok(formulas::unrestricted_count(2, n)),
            })
            .collect::<Result<_, _>>()?,
    };
    Ok(Sequence::from_values(id, 0, values))
}

fn cmd_oeis(args: &OeisArgs) -> Outcome {
    let cache = Cache::new(&args.cache_dir);
    let (reference, source) = match cache.load(&args.id)? {
        Some(seq) => (seq, "cache"),
        None if args.offline => match oeis::vendored(&args.id) {
            Some(seq) => (seq, "bundled"),
            None => return Err(Error::Offline { id: args.id.clone(), path: cache.path(&args.id) }),
        },
        None => (oeis::fetch(&cache, &args.id, true)?, "oeis.org"),
    };
    let reference = reference.truncated(args.terms);
    let computed = computed_sequence(&args.id, args.terms)?;
    let report = oeis::compare(&computed, &reference);
    let alignment = match report.alignment {
        Alignment::ByIndex => "index".to_string(),
        Alignment::ByValueRun { shift } => format!("value-run shift {shift}"),
    };
    if let Some(w) = report.warning() {
        eprintln!("warning: {w}");
    }
    let text = match args.format {
        Format::Json => json_line(&json!({
            "id": args.id,
            "source": source,
            "alignment": alignment,
            "overlap": report.overlap,
            "agrees": report.agrees(),
            "first_mismatch": report.first_mismatch.as_ref().map(|m| json!({
                "index": m.index,
                "computed": m.computed.to_string(),
                "reference": m.reference.to_string(),
            })),
        })),
        _ => match &report.first_mismatch {
            None if report.agrees() => format!(
                "{}: agrees over {} terms (aligned by {alignment}, reference from {source})\n",
                args.id, report.overlap
            ),
            None => format!("{}: nothing to compare\n", args.id),
            Some(m) => format!(
                "{}: mismatch at index {}: computed {} but reference has {}\n",
                args.id, m.index, m.computed, m.reference
            ),
        },
    };
    Ok(Output { text, ok: report.agrees() })
}

// ---------------------------------------------------------------- paths

fn cmd_paths(command: &PathsCommand) -> Outcome {
    match command {
        PathsCommand::Generate { spec, count, node_budget, format } => {
            let alphabet = StepAlphabet::from_letters(&spec.alphabet)?;
            let opts = GenerateOptions { node_budget: *node_budget };
            if *count {
                let n = paths::count_paths(&alphabet, spec.bound, spec.to, opts)?;
                return Ok(Output::ok(match format {
                    Format::Json => json_line(&json!({"count": n.to_string()})),
                    _ => format!("{n}\n"),
                }));
            }
            let found = paths::generate_paths(&alphabet, spec.bound, spec.to, opts)?;
            let text = match format {
                Format::Json => {
                    let tokens: Vec<&str> = found.iter().map(|p| p.tokens()).collect();
                    json_line(&json!({"count": found.len().to_string(), "paths": tokens}))
                }
                _ => found.iter().map(|p| format!("{}\n", p.tokens())).collect(),
            };
            Ok(Output::ok(text))
        }
        PathsCommand::Check { spec, path } => {
            let alphabet = StepAlphabet::from_letters(&spec.alphabet)?;
            let path = LatticePath::parse(&alphabet, path.trim())?;
            let ok = paths::check_bound(&path, spec.bound, spec.to);
            Ok(Output { text: format!("{ok}\n"), ok })
        }
        PathsCommand::Transform { alphabet, slope, path, format } => {
            let alphabet = StepAlphabet::from_letters(alphabet)?;
            let path = LatticePath::parse(&alphabet, path.trim())?;
            let image = paths::bw_transform(&path, *slope)?;
            let text = match format {
                Format::Json => json_line(&json!({
                    "path": image.tokens(),
                    "alphabet": image.alphabet(),
                    "endpoint": [image.endpoint().0, image.endpoint().1],
                })),
                _ => format!("{}\n", image.tokens()),
            };
            Ok(Output::ok(text))
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Count(args) => cmd_count(args),
        Command::Enumerate(args) => cmd_enumerate(args),
        Command::Bijection(args) => cmd_bijection(args),
        Command::Formula { formula, format } => cmd_formula(formula, *format),
        Command::Av321 { command } => cmd_av321(command),
        Command::OeisCheck(args) => cmd_oeis(args),
        Command::Paths { command } => cmd_paths(command),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code().clamp(0, 255) as u8);
        }
    };
    match shrubs::par::with_jobs(cli.jobs, || run(&cli)) {
        Ok(out) => {
            print!("{}", out.text);
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
