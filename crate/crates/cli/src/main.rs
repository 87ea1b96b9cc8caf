use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use commplex::cache::DecisionCache;
use commplex::checks::{run_check, select};
use commplex::chromatic::{chromatic_decides, input_complex, output_complex};
use commplex::decide::cnf::export_cnf;
use commplex::decide::csp::CanonicalCsp;
use commplex::decide::{minimal_complexes, DecideOptions, MinimalOptions, ENGINE_VERSION};
use commplex::generators::proc_fig1;
use commplex::io::{
    chromatic_to_dot, complex_from_json, complex_to_dot, complex_to_json, language_from_json,
    language_to_json, parse_complex_spec,
};
use commplex::{decide_generates, families, Language, Procedure, SimplicialComplex, Verdict};

const SCHEMA: &str = "commplex-report/1";

#[derive(Parser)]
#[command(name = "commplex", version, about = "Decide which simplicial complexes generate a language")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a complex generates a language.
    Decide {
        #[command(flatten)]
        lang: LangArgs,
        #[command(flatten)]
        complex: ComplexArgs,
        #[command(flatten)]
        run: RunArgs,
        /// Directory of cached decisions (also COMMPLEX_CACHE_DIR).
        #[arg(long)]
        cache_dir: Option<PathBuf>,
        /// Write the canonical instance as DIMACS CNF.
        #[arg(long, value_name = "PATH")]
        export_cnf: Option<PathBuf>,
        /// Write the witness procedure as JSON.
        #[arg(long, value_name = "PATH")]
        witness_out: Option<PathBuf>,
    },
    /// List the inclusion-minimal generating complexes.
    Minimal {
        #[command(flatten)]
        lang: LangArgs,
        #[command(flatten)]
        run: RunArgs,
        /// Decide every complex instead of one per symmetry orbit.
        #[arg(long)]
        no_symmetry: bool,
        /// Allow five positions.
        #[arg(long)]
        allow_five: bool,
    },
    /// Input windows, dual windows and communication complex of a procedure.
    Windows {
        /// Procedure JSON; the built-in four-input example when absent.
        #[arg(long, value_name = "PATH")]
        procedure: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Decide through surjective chromatic maps.
    Chromatic {
        #[command(flatten)]
        lang: LangArgs,
        #[command(flatten)]
        complex: ComplexArgs,
        /// Largest input alphabet size to try (default |L|).
        #[arg(long)]
        max_b: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        timing: bool,
    },
    /// Write a language, complex, chromatic complex or CNF instance.
    Export {
        #[arg(long, value_enum)]
        object: Object,
        #[command(flatten)]
        lang: LangArgs,
        #[command(flatten)]
        complex: ComplexArgs,
        /// Input alphabet size for the input complex.
        #[arg(long, default_value_t = 2)]
        b: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Output file; standard output when absent.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Run the built-in verification checks.
    VerifyPaper {
        /// A check name, a section number such as 4.2, or `all`.
        #[arg(long, default_value = "all")]
        section: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        timing: bool,
    },
}

#[derive(Args, Default)]
struct LangArgs {
    /// Language family: ev, od, nd, nc, card-ge, card-le, unique, one-or-all,
    /// one-or-all-or-zero, eq, constants, full.
    #[arg(long)]
    family: Option<String>,
    /// Language JSON file.
    #[arg(long, value_name = "PATH")]
    lang_file: Option<PathBuf>,
    /// Number of positions.
    #[arg(long)]
    n: Option<usize>,
    /// Alphabet size, or the threshold of card-ge and card-le.
    #[arg(short = 'k', long)]
    alphabet_size: Option<usize>,
}

#[derive(Args, Default)]
struct ComplexArgs {
    /// Complex specification such as `path`, `path:0-2-1`, `tree:0-1,1-2`,
    /// `simplices:012,13`, `ka:0`, `boundary`, `fig4`.
    #[arg(long)]
    complex: Option<String>,
    /// Complex JSON file.
    #[arg(long, value_name = "PATH")]
    complex_file: Option<PathBuf>,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    timeout_secs: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Include timing and search statistics.
    #[arg(long)]
    timing: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Object {
    Language,
    Complex,
    Cnf,
    OutputComplex,
    InputComplex,
}

/// Why a command stopped: exit code 1 for bad input, 2 for limits.
enum Failure {
    Usage(String),
    Undecided(String),
}

impl From<commplex::Error> for Failure {
    fn from(e: commplex::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CmdResult = Result<ExitCode, Failure>;

/// Ordered key/value report rendered as `key: value` lines or JSON.
struct Report {
    fields: Vec<(&'static str, Value)>,
}

impl Report {
    fn new(command: &str) -> Self {
        let mut r = Report { fields: Vec::new() };
        r.push("schema", SCHEMA);
        r.push("engine", ENGINE_VERSION);
        r.push("command", command);
        r
    }

    fn push(&mut self, key: &'static str, value: impl Into<Value>) {
        self.fields.push((key, value.into()));
    }

    fn render(&self, format: Format) -> String {
        if format == Format::Json {
            let map: serde_json::Map<String, Value> =
                self.fields.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
            return serde_json::to_string_pretty(&Value::Object(map)).expect("report is valid JSON") + "\n";
        }
        let mut out = String::new();
        for (k, v) in &self.fields {
            match v {
                Value::Array(items) => {
                    for item in items {
                        out.push_str(&format!("{k}: {}\n", scalar(item)));
                    }
                }
                _ => out.push_str(&format!("{k}: {}\n", scalar(v))),
            }
        }
        out
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn load_language(a: &LangArgs) -> Result<Language, Failure> {
    match (&a.family, &a.lang_file) {
        (Some(name), None) => {
            let n = a.n.ok_or_else(|| Failure::Usage("--family needs --n".into()))?;
            Ok(families::by_name(name, n, a.alphabet_size)?)
        }
        (None, Some(path)) => Ok(language_from_json(&read(path)?)?),
        _ => Err(Failure::Usage("give exactly one of --family and --lang-file".into())),
    }
}

fn load_complex(a: &ComplexArgs, n: usize) -> Result<SimplicialComplex, Failure> {
    let k = match (&a.complex, &a.complex_file) {
        (Some(spec), None) => parse_complex_spec(spec, n)?,
        (None, Some(path)) => complex_from_json(&read(path)?)?,
        _ => return Err(Failure::Usage("give exactly one of --complex and --complex-file".into())),
    };
    if k.n() != n {
        return Err(Failure::Usage(format!("complex has {} vertices, language {n} positions", k.n())));
    }
    Ok(k)
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn emit(text: &str) {
    print!("{text}");
}

fn decide_options(run: &RunArgs) -> DecideOptions {
    DecideOptions { timeout: run.timeout_secs.map(Duration::from_secs), ..DecideOptions::default() }
}

fn cmd_decide(
    lang: &LangArgs,
    complex: &ComplexArgs,
    run: &RunArgs,
    cache_dir: Option<&Path>,
    export: Option<&Path>,
    witness_out: Option<&Path>,
) -> CmdResult {
    let l = load_language(lang)?;
    let k = load_complex(complex, l.n())?;
    let opts = decide_options(run);
    if let Some(path) = export {
        let csp = CanonicalCsp::build(&l, &k, opts.max_tuples)?;
        export_cnf(&csp, &format!("{} on {}", l.canonical_string(), k.canonical_string()), path)?;
    }
    let cache = match cache_dir {
        Some(d) => Some(DecisionCache::new(d)?),
        None => DecisionCache::from_env()?,
    };
    let start = Instant::now();
    let cached = match &cache {
        Some(c) => c.get(&l, &k)?,
        None => None,
    };
    let result = match &cached {
        Some(entry) => entry.to_result()?,
        None => {
            let r = decide_generates(&l, &k, &opts)?;
            if let Some(c) = &cache {
                c.put(&l, &k, &r)?;
            }
            r
        }
    };
    let elapsed = start.elapsed();

    let mut report = Report::new("decide");
    report.push("language", l.canonical_string());
    report.push("complex", k.canonical_string());
    report.push("verdict", result.verdict.to_string());
    if result.verdict != Verdict::Undecided {
        report.push("generates", result.generates());
    }
    report.push("method", result.method.to_string());
    if let Some(c) = &result.certificate {
        report.push("certificate", c.to_string());
        if run.format == Format::Json {
            report.push("certificate-data", serde_json::to_value(c).expect("certificate serializes"));
        }
    }
    if let Some(p) = &result.witness {
        let comm = p.comm_complex()?;
        report.push("witness-complex", comm.compact());
        report.push(
            "witness-input-sizes",
            p.input_sizes().iter().map(|s| s.to_string()).collect::<Vec<_>>().join(","),
        );
        match witness_out {
            Some(path) => {
                write(path, &p.to_json()?)?;
                report.push("witness-file", path.display().to_string());
            }
            None if run.format == Format::Json => {
                let v: Value = serde_json::from_str(&p.to_json()?).expect("procedure JSON parses");
                report.push("witness", v);
            }
            None => {}
        }
    }
    if let Some(path) = export {
        report.push("cnf-file", path.display().to_string());
    }
    if run.timing {
        report.push("cached", cached.is_some());
        report.push("nodes", result.stats.nodes);
        report.push("backtracks", result.stats.backtracks);
        report.push("variables", result.stats.variables);
        report.push("tuples", result.stats.tuples);
        report.push("elapsed-ms", elapsed.as_millis() as u64);
    }
    if run.format == Format::Dot {
        emit(&complex_to_dot(&k));
    } else {
        emit(&report.render(run.format));
    }
    if result.verdict == Verdict::Undecided {
        return Err(Failure::Undecided("search hit its limit".into()));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_minimal(lang: &LangArgs, run: &RunArgs, no_symmetry: bool, allow_five: bool) -> CmdResult {
    let l = load_language(lang)?;
    let opts = MinimalOptions { symmetry: !no_symmetry, allow_five, decide: decide_options(run) };
    let start = Instant::now();
    let m = minimal_complexes(&l, &opts)?;
    if run.format == Format::Dot {
        for k in &m.minimal {
            emit(&complex_to_dot(k));
        }
    } else {
        let mut report = Report::new("minimal");
        report.push("language", l.canonical_string());
        report.push("count", m.minimal.len());
        report.push("complete", m.is_complete());
        report.push("minimal", m.minimal.iter().map(|k| k.compact()).collect::<Vec<_>>());
        if !m.undecided.is_empty() {
            report.push("undecided", m.undecided.iter().map(|k| k.compact()).collect::<Vec<_>>());
        }
        if run.timing {
            report.push("decisions", m.decisions);
            report.push("elapsed-ms", start.elapsed().as_millis() as u64);
        }
        emit(&report.render(run.format));
    }
    if !m.is_complete() {
        return Err(Failure::Undecided(format!("{} complexes undecided", m.undecided.len())));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_windows(procedure: Option<&Path>, format: Format) -> CmdResult {
    let p = match procedure {
        Some(path) => Procedure::from_json(&read(path)?)?,
        None => proc_fig1(),
    };
    let comm = p.comm_complex()?;
    if format == Format::Dot {
        emit(&complex_to_dot(&comm));
        return Ok(ExitCode::SUCCESS);
    }
    let names = |v: &[usize], out: bool| -> String {
        v.iter()
            .map(|&x| if out { p.output_name(x) } else { p.input_name(x) })
            .collect::<Vec<_>>()
            .join(",")
    };
    let mut report = Report::new("windows");
    report.push(
        "input-window",
        (0..p.output_n())
            .map(|i| format!("{}: {{{}}}", p.output_name(i), names(&p.input_window(i), false)))
            .collect::<Vec<_>>(),
    );
    report.push(
        "dual-window",
        (0..p.input_count())
            .map(|j| format!("{}: {{{}}}", p.input_name(j), names(&p.dual_window(j), true)))
            .collect::<Vec<_>>(),
    );
    report.push("comm-complex", comm.compact());
    report.push("visibility", p.visibility().render().lines().map(str::to_string).collect::<Vec<_>>());
    emit(&report.render(format));
    Ok(ExitCode::SUCCESS)
}

fn cmd_chromatic(lang: &LangArgs, complex: &ComplexArgs, max_b: Option<usize>, format: Format, timing: bool) -> CmdResult {
    let l = load_language(lang)?;
    let k = load_complex(complex, l.n())?;
    let start = Instant::now();
    let d = chromatic_decides(&l, &k, max_b)?;
    if format == Format::Dot {
        emit(&chromatic_to_dot(&output_complex(&l), "output"));
        let b = d.alphabet_size.unwrap_or(max_b.unwrap_or(l.len()));
        emit(&chromatic_to_dot(&input_complex(&k, b)?, "input"));
        return Ok(ExitCode::SUCCESS);
    }
    let out = output_complex(&l);
    let mut report = Report::new("chromatic");
    report.push("language", l.canonical_string());
    report.push("complex", k.canonical_string());
    report.push("generates", d.generates);
    report.push("output-vertices", out.vertex_count());
    report.push("output-simplices", out.simplex_count());
    if let (Some(b), Some(map)) = (d.alphabet_size, &d.map) {
        let input = input_complex(&k, b)?;
        report.push("input-alphabet-size", b);
        report.push("input-vertices", input.vertex_count());
        report.push("input-simplices", input.simplex_count());
        report.push(
            "map",
            map.iter()
                .enumerate()
                .map(|(v, &t)| {
                    let (color, _) = input.vertex(v);
                    format!("{color}:{} -> {}", input.label_text(v), out.label_text(t as usize))
                })
                .collect::<Vec<_>>(),
        );
    }
    if timing {
        report.push("elapsed-ms", start.elapsed().as_millis() as u64);
    }
    emit(&report.render(format));
    Ok(ExitCode::SUCCESS)
}

fn cmd_export(object: Object, lang: &LangArgs, complex: &ComplexArgs, b: usize, format: Format, out: Option<&Path>) -> CmdResult {
    let n = || -> Result<usize, Failure> {
        if lang.family.is_some() || lang.lang_file.is_some() {
            Ok(load_language(lang)?.n())
        } else {
            lang.n.ok_or_else(|| Failure::Usage("--n or a language is needed".into()))
        }
    };
    let text = match (object, format) {
        (Object::Language, Format::Json) => language_to_json(&load_language(lang)?)?,
        (Object::Language, _) => load_language(lang)?.to_string() + "\n",
        (Object::Complex, Format::Dot) => complex_to_dot(&load_complex(complex, n()?)?),
        (Object::Complex, Format::Json) => complex_to_json(&load_complex(complex, n()?)?)? + "\n",
        (Object::Complex, Format::Text) => load_complex(complex, n()?)?.compact() + "\n",
        (Object::OutputComplex, _) => chromatic_to_dot(&output_complex(&load_language(lang)?), "output"),
        (Object::InputComplex, _) => chromatic_to_dot(&input_complex(&load_complex(complex, n()?)?, b)?, "input"),
        (Object::Cnf, _) => {
            let l = load_language(lang)?;
            let k = load_complex(complex, l.n())?;
            let path = out.ok_or_else(|| Failure::Usage("cnf export needs --out".into()))?;
            let csp = CanonicalCsp::build(&l, &k, DecideOptions::default().max_tuples)?;
            export_cnf(&csp, &format!("{} on {}", l.canonical_string(), k.canonical_string()), path)?;
            return Ok(ExitCode::SUCCESS);
        }
    };
    match out {
        Some(path) => write(path, &text)?,
        None => emit(&text),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(section: &str, format: Format, timing: bool) -> CmdResult {
    let checks = select(section)?;
    let mut report = Report::new("verify-paper");
    report.push("selector", section);
    let mut lines = Vec::new();
    let mut items = Vec::new();
    let mut passed = 0;
    for c in &checks {
        let o = run_check(c);
        if o.passed() {
            passed += 1;
        }
        lines.push(if timing {
            o.line()
        } else {
            format!("{} {} {}", if o.passed() { "PASS" } else { "FAIL" }, o.id, o.name)
        });
        if let Some(e) = &o.error {
            items.push(format!("{}: error: {e}", o.name));
        }
        for i in &o.items {
            let mut s = format!("{} {}: {}", if i.passed { "ok" } else { "FAIL" }, o.name, i.label);
            if !i.passed {
                s.push_str(&format!(" ({})", i.detail));
            }
            items.push(s);
        }
    }
    report.push("check", lines);
    report.push("item", items);
    report.push("passed", format!("{passed}/{}", checks.len()));
    emit(&report.render(if format == Format::Dot { Format::Text } else { format }));
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Decide { lang, complex, run, cache_dir, export_cnf, witness_out } => cmd_decide(
            &lang,
            &complex,
            &run,
            cache_dir.as_deref(),
            export_cnf.as_deref(),
            witness_out.as_deref(),
        ),
        Command::Minimal { lang, run, no_symmetry, allow_five } => cmd_minimal(&lang, &run, no_symmetry, allow_five),
        Command::Windows { procedure, format } => cmd_windows(procedure.as_deref(), format),
        Command::Chromatic { lang, complex, max_b, format, timing } => cmd_chromatic(&lang, &complex, max_b, format, timing),
        Command::Export { object, lang, complex, b, format, out } => cmd_export(object, &lang, &complex, b, format, out.as_deref()),
        Command::VerifyPaper { section, format, timing } => cmd_verify(&section, format, timing),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Undecided(msg)) => {
            eprintln!("undecided: {msg}");
            ExitCode::from(2)
        }
    }
}
