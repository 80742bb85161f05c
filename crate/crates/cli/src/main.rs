mod commands;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use autocx_core::cache::ComplexityCache;
use autocx_core::{Kind, RationalQ, SearchBudget};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "autocx", version, about = "Exact automatic complexity of finite words")]
struct Cli {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Config {
    /// Alphabet size, 2 to 10.
    #[arg(long, global = true, default_value_t = 2, value_parser = clap::value_parser!(u8).range(2..=10))]
    alphabet: u8,

    /// Worker threads.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    workers: u16,

    /// Search nodes allowed per word before giving up.
    #[arg(long, global = true)]
    max_nodes: Option<u64>,

    /// Largest state count a search may try.
    #[arg(long, global = true)]
    max_states: Option<usize>,

    /// Complexity cache file, created on first write.
    #[arg(long, global = true, env = "AUTOCX_CACHE")]
    cache: Option<PathBuf>,

    /// Ignore the cache even if one is configured.
    #[arg(long, global = true)]
    no_cache: bool,

    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Ane,
    An,
    Ad,
}

impl From<KindArg> for Kind {
    fn from(k: KindArg) -> Kind {
        match k {
            KindArg::Ane => Kind::Ane,
            KindArg::An => Kind::An,
            KindArg::Ad => Kind::Ad,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute A_Ne, A_N or A_D of one or more words.
    Complexity {
        #[arg(long, value_enum, default_value = "ane")]
        kind: KindArg,
        /// Also print the witness and its counts.
        #[arg(long)]
        certificate: bool,
        #[arg(required = true)]
        words: Vec<String>,
    },
    /// Count L_q among all words of the given lengths.
    Census {
        #[arg(long, value_parser = parse_q)]
        q: RationalQ,
        /// A length `6` or an inclusive range `6..12`.
        #[arg(long, value_parser = parse_lengths)]
        n: Lengths,
    },
    /// Complexity distribution per length.
    Shannon {
        #[arg(long, value_parser = parse_q)]
        q: RationalQ,
        #[arg(long, value_parser = parse_lengths)]
        n: Lengths,
    },
    /// Check the loop and border properties on every member of L_q.
    Validate {
        #[arg(value_enum)]
        check: Check,
        #[arg(long, value_parser = parse_q)]
        q: RationalQ,
        #[arg(long, value_parser = parse_lengths)]
        n: Lengths,
    },
    /// List words where A_Ne < A_N.
    Separations {
        #[arg(long, value_parser = parse_lengths)]
        n: Lengths,
    },
    /// Build an explicit witness automaton.
    #[command(subcommand)]
    Construct(Construct),
    /// Check an automaton file against a word.
    Verify {
        #[arg(long)]
        nfa: PathBuf,
        #[arg(long)]
        word: String,
        #[arg(long, value_enum, default_value = "exact")]
        mode: Mode,
    },
    /// Word utilities.
    #[command(subcommand)]
    Words(WordsCmd),
    /// Inspect or merge cache files.
    #[command(subcommand)]
    Cache(CacheCmd),
    /// Compare the searches with the reference enumerations on random words.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        cases: usize,
        #[arg(long, default_value_t = 8)]
        max_len: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Check {
    Loops,
    Borders,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exact,
    Unique,
}

#[derive(Subcommand, Debug)]
enum Construct {
    /// Cycle automaton for a word that is a power.
    Power { word: String },
    /// Prime-loop automaton for a word with few nonzero symbols.
    Gap {
        word: String,
        #[arg(long, value_parser = parse_q)]
        q: RationalQ,
        /// Number of zero-runs to pump; defaults to supp(word) + 1.
        #[arg(long)]
        c: Option<usize>,
    },
    /// Two-loop automaton for u a^l v b^l w.
    Pump {
        #[arg(long, default_value = "")]
        u: String,
        #[arg(long, default_value = "")]
        v: String,
        #[arg(long, default_value = "")]
        w: String,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long, value_parser = parse_q)]
        q: RationalQ,
        #[arg(long)]
        m: usize,
    },
}

#[derive(Subcommand, Debug)]
enum WordsCmd {
    /// Common primitive root of two commuting words.
    Ls1 { x: String, y: String },
    /// Solve xy = yz.
    Ls2 { x: String, y: String, z: String },
    /// The k-th word of the sigma sequence.
    Sigma { k: usize },
    /// Compress a word with a long repeated factor.
    Encode { word: String },
    /// Inverse of encode.
    Decode { code: String },
    /// Whether every factor longer than the threshold occurs once.
    UniqueFactor {
        word: String,
        #[arg(long)]
        threshold: usize,
    },
    /// Search for a bordered factor uw = wv.
    Border {
        word: String,
        #[arg(long, value_parser = parse_q)]
        q: RationalQ,
    },
    /// Number of nonzero symbols.
    Supp { word: String },
    /// Primitive root and exponent.
    Root { word: String },
    /// Build w1 g(sigma_k) x^m w2 y^m reverse(h(sigma_k)) w3.
    Ymk {
        #[arg(long, default_value = "")]
        w1: String,
        #[arg(long, default_value = "")]
        w2: String,
        #[arg(long, default_value = "")]
        w3: String,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long)]
        x2: String,
        #[arg(long)]
        y2: String,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Subcommand, Debug)]
enum CacheCmd {
    /// Summarize and re-verify a cache file.
    Inspect {
        /// Defaults to the configured cache.
        path: Option<PathBuf>,
        /// Print the sorted entries after the summary.
        #[arg(long)]
        dump: bool,
    },
    /// Union of cache files, sorted, to stdout or --out.
    Merge {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Lengths {
    from: usize,
    to: usize,
}

impl Lengths {
    fn range(self) -> std::ops::RangeInclusive<usize> {
        self.from..=self.to
    }
}

fn parse_q(s: &str) -> Result<RationalQ, String> {
    s.parse().map_err(|e: autocx_core::Error| e.to_string())
}

fn parse_lengths(s: &str) -> Result<Lengths, String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("bad length {t:?}"));
    let (from, to) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.trim_start_matches('='))?),
        None => (num(s)?, num(s)?),
    };
    if from > to {
        return Err(format!("empty range {s}"));
    }
    Ok(Lengths { from, to })
}

/// A failed command: message for stderr and the exit status.
#[derive(Debug)]
pub struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }

    fn budget(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<autocx_core::Error> for Failure {
    fn from(e: autocx_core::Error) -> Self {
        Failure {
            code: if e.is_budget_exhausted() { 2 } else { 1 },
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::usage(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::usage(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::usage(e.to_string())
    }
}

/// What a command needs besides its own arguments.
pub struct Context {
    alphabet: usize,
    format: Option<Format>,
    budget: SearchBudget,
    cache_path: Option<PathBuf>,
}

impl Context {
    fn from_config(config: &Config) -> Result<(Self, Option<Arc<ComplexityCache>>), Failure> {
        let mut budget = SearchBudget::default().with_parallelism(config.workers as usize);
        if let Some(nodes) = config.max_nodes {
            budget = budget.with_max_nodes(nodes);
        }
        if let Some(states) = config.max_states {
            budget = budget.with_max_states(states);
        }
        let cache_path = if config.no_cache { None } else { config.cache.clone() };
        let cache = match &cache_path {
            Some(path) => {
                Some(Arc::new(ComplexityCache::load_or_empty(path).map_err(|e| {
                    Failure::usage(format!("cannot read cache {}: {e}", path.display()))
                })?))
            }
            None => None,
        };
        if let Some(cache) = &cache {
            budget = budget.with_cache(cache.clone());
        }
        Ok((
            Context {
                alphabet: config.alphabet as usize,
                format: config.format,
                budget,
                cache_path,
            },
            cache,
        ))
    }

    fn format_or(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(cli.config.workers as usize)
        .build_global()
        .map_err(|e| Failure::usage(format!("cannot start worker pool: {e}")))?;
    let (ctx, cache) = Context::from_config(&cli.config)?;
    let mut out = String::new();
    let outcome = commands::dispatch(&ctx, cli.command, &mut out);
    write_stdout(&out);
    if let (Some(cache), Some(path)) = (cache, &ctx.cache_path) {
        if let Err(e) = cache.flush(path) {
            eprintln!("warning: could not write cache {}: {e}", path.display());
        }
    }
    outcome
}

fn write_stdout(text: &str) {
    use std::io::Write;
    let mut stdout = std::io::stdout().lock();
    // a closed pipe is not worth a panic
    let _ = stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush());
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {failure}");
            ExitCode::from(failure.code)
        }
    }
}
