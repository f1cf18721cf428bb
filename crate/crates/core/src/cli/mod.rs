//! The `cayley` command line front end.
//!
//! Settings come from flags, then a flat `key=value` config file
//! (`--config`), then defaults. Exit status: 0 on success, 1 when `verify`
//! finds violations, 2 on usage errors (bad flags, literals or parameters).

use std::collections::HashMap;
use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::automata::AutomatonJson;
use crate::groups::{BaumslagSolitar, Group};
use crate::metrics::{
    closeness_profile, coarse_dominates, format_number, DistanceMode, MeasuredGroup, MetricsError, ScaleFunction,
    DEFAULT_BFS_CAP,
};
use crate::representations::{
    validate_representation, BsRepresentation, H3Representation, LamplighterRepresentation, Reencoded, Representation,
    ValidationReport,
};
use crate::words::{Letter, LetterMap, Word};

#[derive(Parser, Debug)]
#[command(name = "cayley", version, about = "Cayley automatic representations and closeness profiles")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Print the representation word of --element.
    Encode,
    /// Print the element represented by --word.
    Decode,
    /// Multiply --element (or the element of --word) on the right by the
    /// product of the letters of --gen and print the resulting word.
    Mul,
    /// Word length of --element (or the element of --word).
    Dist,
    /// The closeness profile h(n) for n = 0..=--n-max.
    Profile,
    /// Exhaustive validation of the representation on words of length <= --n-max.
    Verify,
    /// The language automaton, or the multiplier automaton of --gen, as JSON.
    AutomatonExport,
    /// Apply the letter substitution --map, then encode --element, decode
    /// --word, or validate when neither is given.
    Reencode,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Flags {
    #[arg(long, global = true, value_enum)]
    pub group: Option<GroupKind>,
    #[arg(long, global = true)]
    pub p: Option<u32>,
    #[arg(long, global = true)]
    pub q: Option<u32>,
    /// e.g. "lamps=-1,0,2;m=1", "stem=0+,1-;k=5", "x=3,y=-3,z=-4"
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub element: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub word: Option<String>,
    #[arg(long, global = true)]
    pub n_max: Option<usize>,
    /// Use breadth-first search with this radius instead of the group's
    /// default distance.
    #[arg(long, global = true)]
    pub bfs_cap: Option<u32>,
    #[arg(long, global = true)]
    pub k_max: Option<u64>,
    #[arg(long, global = true)]
    pub m_max: Option<u64>,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Generator letter(s), for mul and automaton-export.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub gen: Option<String>,
    /// Letter substitution for reencode, e.g. "a=ae,t=te".
    #[arg(long, global = true)]
    pub map: Option<String>,
    /// Scale function the profile is compared against: zero, identity, exp,
    /// power:R, const:C, table:v0,v1,...
    #[arg(long, global = true)]
    pub scale: Option<String>,
    /// Flat key=value file with defaults for the flags above.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupKind {
    Lamplighter,
    Bs,
    H3,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    /// CSV for profiles, plain text otherwise.
    #[default]
    Csv,
    Json,
}

/// Fully resolved settings of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub group: GroupKind,
    pub p: u32,
    pub q: u32,
    pub element: Option<String>,
    pub word: Option<String>,
    pub n_max: usize,
    pub bfs_cap: Option<u32>,
    pub k_max: u64,
    pub m_max: u64,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub jobs: Option<usize>,
    pub gen: Option<String>,
    pub map: Option<String>,
    pub scale: ScaleFunction,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Violations(String),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Violations(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Io(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Violations(m) => write!(f, "{m}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

fn usage(e: impl fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

/// Parses `key=value` lines; blank lines and `#` comments are skipped and
/// `_` in keys is read as `-`.
pub fn parse_config_file(text: &str) -> Result<HashMap<String, String>, CliError> {
    let mut out = HashMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| usage(format!("config line {}: expected key=value", i + 1)))?;
        out.insert(k.trim().replace('_', "-"), v.trim().to_string());
    }
    Ok(out)
}

const CONFIG_KEYS: [&str; 15] = [
    "group", "p", "q", "element", "word", "n-max", "bfs-cap", "k-max", "m-max", "out", "format", "jobs", "gen", "map",
    "scale",
];

impl RunConfig {
    pub fn resolve(command: Command, flags: &Flags, file: &HashMap<String, String>) -> Result<RunConfig, CliError> {
        if let Some(key) = file.keys().find(|k| !CONFIG_KEYS.contains(&k.as_str())) {
            return Err(usage(format!("unknown config key {key:?}")));
        }
        fn pick<T: std::str::FromStr>(flag: Option<T>, file: &HashMap<String, String>, key: &str) -> Result<Option<T>, CliError>
        where
            T::Err: fmt::Display,
        {
            match flag {
                Some(v) => Ok(Some(v)),
                None => file
                    .get(key)
                    .map(|v| v.parse::<T>().map_err(|e| usage(format!("config {key}: {e}"))))
                    .transpose(),
            }
        }
        let group = match flags.group {
            Some(g) => g,
            None => match file.get("group") {
                Some(v) => GroupKind::from_str(v, true).map_err(|_| usage(format!("unknown group {v:?}")))?,
                None => return Err(usage("--group is required (lamplighter, bs or h3)")),
            },
        };
        let format = match flags.format {
            Some(f) => f,
            None => match file.get("format") {
                Some(v) => Format::from_str(v, true).map_err(|_| usage(format!("unknown format {v:?}")))?,
                None => Format::Csv,
            },
        };
        let scale = pick(flags.scale.clone(), file, "scale")?.unwrap_or_else(|| "identity".into());
        let config = RunConfig {
            command,
            group,
            p: pick(flags.p, file, "p")?.unwrap_or(1),
            q: pick(flags.q, file, "q")?.unwrap_or(2),
            element: pick(flags.element.clone(), file, "element")?,
            word: pick(flags.word.clone(), file, "word")?,
            n_max: pick(flags.n_max, file, "n-max")?.unwrap_or(8),
            bfs_cap: pick(flags.bfs_cap, file, "bfs-cap")?,
            k_max: pick(flags.k_max, file, "k-max")?.unwrap_or(64),
            m_max: pick(flags.m_max, file, "m-max")?.unwrap_or(64),
            out: pick(flags.out.clone(), file, "out")?,
            format,
            jobs: pick(flags.jobs, file, "jobs")?,
            gen: pick(flags.gen.clone(), file, "gen")?,
            map: pick(flags.map.clone(), file, "map")?,
            scale: scale.parse().map_err(usage)?,
        };
        if config.k_max == 0 || config.m_max == 0 || config.jobs == Some(0) {
            return Err(usage("--k-max, --m-max and --jobs must be positive"));
        }
        Ok(config)
    }
}

/// What a run produced: the text for stdout (or `--out`) and a note for
/// stderr.
#[derive(Debug, Default, Clone, PartialEq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
}

/// Runs a resolved configuration.
pub fn run(config: &RunConfig) -> Result<Outcome, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs.unwrap_or(0))
        .build()
        .map_err(|e| usage(e.to_string()))?;
    let mut outcome = pool.install(|| match config.group {
        GroupKind::Lamplighter => dispatch(LamplighterRepresentation::new(), config),
        GroupKind::H3 => dispatch(H3Representation::new(), config),
        GroupKind::Bs => {
            let group = BaumslagSolitar::new(config.p, config.q).map_err(usage)?;
            dispatch(BsRepresentation::new(group), config)
        }
    })?;
    if let Some(path) = &config.out {
        std::fs::write(path, &outcome.stdout).map_err(CliError::Io)?;
        outcome.stderr.push_str(&format!("wrote {}\n", path.display()));
        outcome.stdout.clear();
    }
    Ok(outcome)
}

/// Parses arguments (without the program name) and runs them, returning the
/// exit status and both output streams.
pub fn run_args<I, S>(args: I) -> (i32, Outcome)
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let args = std::iter::once("cayley".into()).chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.exit_code() {
                0 => (0, Outcome { stdout: text, stderr: String::new() }),
                code => (code, Outcome { stdout: String::new(), stderr: text }),
            };
        }
    };
    let result = (|| {
        let file = match &cli.flags.config {
            Some(path) => parse_config_file(&std::fs::read_to_string(path).map_err(CliError::Io)?)?,
            None => HashMap::new(),
        };
        let config = RunConfig::resolve(cli.command, &cli.flags, &file)?;
        run(&config)
    })();
    match result {
        Ok(outcome) => (0, outcome),
        Err(e) => (
            e.exit_code(),
            Outcome {
                stdout: String::new(),
                stderr: format!("{e}\n"),
            },
        ),
    }
}

fn dispatch<R>(rep: R, config: &RunConfig) -> Result<Outcome, CliError>
where
    R: Representation,
    R::G: MeasuredGroup,
{
    if config.command != Command::Reencode {
        return execute(&rep, config.command, config);
    }
    let text = config.map.as_deref().ok_or_else(|| usage("reencode needs --map"))?;
    let map = LetterMap::parse(text).map_err(usage)?;
    let rep = Reencoded::new(rep, &map).map_err(usage)?;
    let command = match (&config.element, &config.word) {
        (Some(_), _) => Command::Encode,
        (None, Some(_)) => Command::Decode,
        (None, None) => Command::Verify,
    };
    execute(&rep, command, config)
}

fn parse_word(text: &str) -> Result<Word, CliError> {
    text.parse().map_err(usage)
}

/// The element named by `--element`, else the one represented by `--word`.
fn operand<R: Representation>(rep: &R, config: &RunConfig) -> Result<<R::G as Group>::Element, CliError> {
    match (&config.element, &config.word) {
        (Some(e), _) => rep.group().parse_element(e).map_err(usage),
        (None, Some(w)) => rep.decode(&parse_word(w)?).map_err(usage),
        (None, None) => Err(usage("give --element or --word")),
    }
}

fn distance_mode<G: MeasuredGroup>(group: &G, config: &RunConfig) -> DistanceMode {
    config.bfs_cap.map_or_else(|| group.default_mode(), DistanceMode::BfsCapped)
}

fn measure<G: MeasuredGroup>(group: &G, g: &G::Element, config: &RunConfig) -> Result<(DistanceMode, crate::metrics::DistanceValue), CliError> {
    let mode = distance_mode(group, config);
    match group.measure(g, mode) {
        Ok(d) => Ok((mode, d)),
        // no closed formula for this element: fall back to search
        Err(MetricsError::ModeUnavailable { .. }) if config.bfs_cap.is_none() => {
            let mode = DistanceMode::BfsCapped(DEFAULT_BFS_CAP);
            Ok((mode, group.measure(g, mode).map_err(usage)?))
        }
        Err(e) => Err(usage(e)),
    }
}

fn text_or_json(config: &RunConfig, text: String, value: serde_json::Value) -> Outcome {
    let stdout = match config.format {
        Format::Csv => text + "\n",
        Format::Json => serde_json::to_string_pretty(&value).expect("json values serialize") + "\n",
    };
    Outcome {
        stdout,
        stderr: String::new(),
    }
}

fn execute<R>(rep: &R, command: Command, config: &RunConfig) -> Result<Outcome, CliError>
where
    R: Representation,
    R::G: MeasuredGroup,
{
    let group = rep.group();
    match command {
        Command::Encode => {
            let literal = config.element.as_deref().ok_or_else(|| usage("encode needs --element"))?;
            let g = group.parse_element(literal).map_err(usage)?;
            let w = rep.encode(&g).to_string();
            let value = json!({ "element": group.format_element(&g), "word": w });
            Ok(text_or_json(config, w, value))
        }
        Command::Decode => {
            let text = config.word.as_deref().ok_or_else(|| usage("decode needs --word"))?;
            let w = parse_word(text)?;
            let g = rep.decode(&w).map_err(usage)?;
            let element = group.format_element(&g);
            let value = json!({ "word": w.to_string(), "element": element });
            Ok(text_or_json(config, element, value))
        }
        Command::Mul => {
            let g = operand(rep, config)?;
            let right = parse_word(config.gen.as_deref().ok_or_else(|| usage("mul needs --gen"))?)?;
            let mut h = g.clone();
            for &l in right.iter() {
                h = group.act(&h, l).map_err(usage)?;
            }
            let (input, output) = (rep.encode(&g), rep.encode(&h));
            let mut value = json!({
                "input": input.to_string(),
                "generators": right.to_string(),
                "output": output.to_string(),
                "element": group.format_element(&h),
            });
            if let [l] = right.as_slice() {
                if rep.multiplier_generators().contains(l) {
                    let automaton = rep.multiplier(*l).map_err(usage)?;
                    value["multiplier_accepts"] = json!(automaton.accepts_words(&[input, output.clone()]).unwrap_or(false));
                }
            }
            Ok(text_or_json(config, output.to_string(), value))
        }
        Command::Dist => {
            let g = operand(rep, config)?;
            let (mode, d) = measure(group, &g, config)?;
            let value = json!({
                "element": group.format_element(&g),
                "mode": mode.to_string(),
                "lower": format_number(d.lower),
                "upper": format_number(d.upper),
                "exact": d.is_exact(),
            });
            Ok(text_or_json(config, d.to_string(), value))
        }
        Command::Profile => {
            let mode = distance_mode(group, config);
            let profile = closeness_profile(rep, config.n_max, mode).map_err(usage)?;
            let lower = coarse_dominates(&profile.lower_samples(), &config.scale, config.k_max, config.m_max);
            let upper = coarse_dominates(&profile.upper_samples(), &config.scale, config.k_max, config.m_max);
            let describe = |w: Option<crate::metrics::CoarseWitness>| {
                w.map_or_else(|| "none".to_string(), |w| format!("K={} M={} N={}", w.k, w.m, w.n))
            };
            let note = format!(
                "coarse witness vs {} (K <= {}, M <= {}): h_lower {}, h_upper {}\n",
                config.scale,
                config.k_max,
                config.m_max,
                describe(lower),
                describe(upper)
            );
            let stdout = match config.format {
                Format::Csv => profile.to_csv(),
                Format::Json => {
                    let value = json!({
                        "profile": profile,
                        "scale": config.scale.to_string(),
                        "witness_lower": lower,
                        "witness_upper": upper,
                    });
                    serde_json::to_string_pretty(&value).expect("json values serialize") + "\n"
                }
            };
            Ok(Outcome { stdout, stderr: note })
        }
        Command::Verify => {
            let report = validate_representation(rep, config.n_max);
            let text = report_text(rep, &report);
            let value = report_json(rep, &report);
            let outcome = text_or_json(config, text.trim_end().to_string(), value);
            if report.is_clean() {
                Ok(outcome)
            } else {
                Err(CliError::Violations(outcome.stdout))
            }
        }
        Command::AutomatonExport => {
            let automaton = match config.gen.as_deref() {
                None => rep.language_automaton(),
                Some(text) => {
                    let l: Letter = text.parse().map_err(usage)?;
                    rep.multiplier(l).map_err(usage)?
                }
            };
            Ok(Outcome {
                stdout: AutomatonJson::from(&automaton).to_string_pretty() + "\n",
                stderr: String::new(),
            })
        }
        Command::Reencode => unreachable!("reencode is resolved by dispatch"),
    }
}

fn report_text<R: Representation>(rep: &R, report: &ValidationReport) -> String {
    let mut out = format!(
        "{}: {} words of length <= {}\nround-trip failures: {}\ncollisions: {}\nlanguage mismatches: {}\n",
        rep.label(),
        report.words_checked,
        report.max_len,
        report.round_trip_failures.len(),
        report.collisions.len(),
        report.language_mismatches.len()
    );
    for (l, check) in &report.multipliers {
        out.push_str(&format!(
            "multiplier {l}: {} false accepts, {} false rejects\n",
            check.false_accepts.len(),
            check.false_rejects.len()
        ));
    }
    for (l, e) in &report.multiplier_errors {
        out.push_str(&format!("multiplier {l}: {e}\n"));
    }
    out.push_str(&format!("violations: {}\n", report.violations()));
    out
}

fn report_json<R: Representation>(rep: &R, report: &ValidationReport) -> serde_json::Value {
    let words = |ws: &[Word]| ws.iter().map(ToString::to_string).collect::<Vec<_>>();
    let multipliers: serde_json::Map<String, serde_json::Value> = report
        .multipliers
        .iter()
        .map(|(l, c)| {
            (
                l.to_string(),
                json!({
                    "false_accepts": c.false_accepts.iter().map(ToString::to_string).collect::<Vec<_>>(),
                    "false_rejects": c.false_rejects.iter().map(ToString::to_string).collect::<Vec<_>>(),
                }),
            )
        })
        .collect();
    json!({
        "representation": rep.label(),
        "max_len": report.max_len,
        "words_checked": report.words_checked,
        "round_trip_failures": words(&report.round_trip_failures),
        "collisions": report.collisions.iter().map(|(a, b)| [a.to_string(), b.to_string()]).collect::<Vec<_>>(),
        "language_mismatches": words(&report.language_mismatches),
        "multipliers": multipliers,
        "multiplier_errors": report.multiplier_errors.iter().map(|(l, e)| [l.to_string(), e.clone()]).collect::<Vec<_>>(),
        "violations": report.violations(),
    })
}
