//! Command-line surface for the translation toolkit.
//!
//! Subcommands expose each pipeline stage and the whole pipeline:
//! `build-model`, `translate`, `tag`, `chunk`, and `evolve`. Resource
//! files resolve from flags first, then from `$EVO_MT_HOME/<name>`
//! (lexicon.tsv, model.ppmi, taglex.tsv, grammar.cg). Exit codes: 0 on
//! success, 1 for resource and IO failures, 2 for domain errors such as
//! an empty corpus.

use std::fmt;
use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use evomt::{
    split_sentences, tag_tokens, tokenize, BilingualLexicon, ChunkGrammar,
    CooccurrenceModel, CooccurrenceWindow, EaConfig, PosTag, TagLexicon, TaggedToken, Token,
    TranslationResult,
};

#[derive(Parser)]
#[command(
    name = "evomt",
    version,
    about = "Sinhala-to-English translation with PPMI sense selection and evolutionary reordering"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build and save a co-occurrence model from a corpus file
    BuildModel(BuildModelArgs),
    /// Translate text end to end
    Translate(TranslateArgs),
    /// Tag words with the fallback tagger
    Tag(TagArgs),
    /// Chunk a `word/TAG` sentence with the grammar
    Chunk(ChunkArgs),
    /// Evolve a tagged candidate toward a target tag sequence
    Evolve(EvolveArgs),
}

#[derive(Args)]
struct BuildModelArgs {
    /// Corpus file: UTF-8 text, one or more sentences per line
    #[arg(long)]
    corpus: PathBuf,
    /// Output model file
    #[arg(long)]
    out: PathBuf,
    /// Co-occurrence window in word positions (default: whole sentence)
    #[arg(long)]
    window: Option<usize>,
}

#[derive(Args)]
struct TranslateArgs {
    /// Input file; stdin when omitted
    #[arg(long = "in")]
    input: Option<PathBuf>,
    #[command(flatten)]
    resources: ResourceArgs,
    #[command(flatten)]
    ea: EaArgs,
    /// Print per-generation trace lines to stderr
    #[arg(long)]
    trace: bool,
    /// Output format
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    /// Sentence-level worker threads; output stays in input order
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Args)]
struct TagArgs {
    /// Input file; stdin when omitted
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Tag lexicon file
    #[arg(long)]
    taglex: Option<PathBuf>,
}

#[derive(Args)]
struct ChunkArgs {
    /// Input file of `word/TAG` lines; stdin when omitted
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Grammar file
    #[arg(long)]
    grammar: Option<PathBuf>,
}

#[derive(Args)]
struct EvolveArgs {
    /// Input candidate: `word/TAG` pairs, or bare tags; stdin when omitted
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Target tag sequence, space separated (reference mode)
    #[arg(long)]
    target: String,
    #[command(flatten)]
    ea: EaArgs,
    /// Print per-generation trace lines to stderr
    #[arg(long)]
    trace: bool,
}

#[derive(Args)]
struct ResourceArgs {
    /// Bilingual dictionary file
    #[arg(long)]
    lexicon: Option<PathBuf>,
    /// Co-occurrence model file; sense selection degrades to the first
    /// listed sense without one
    #[arg(long)]
    model: Option<PathBuf>,
    /// Tag lexicon file
    #[arg(long)]
    taglex: Option<PathBuf>,
    /// Chunk grammar file; the built-in grammar is used when omitted
    #[arg(long)]
    grammar: Option<PathBuf>,
}

#[derive(Args)]
struct EaArgs {
    /// Random seed
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Children per generation
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
    children: u64,
    /// Generation cap
    #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    max_generations: u64,
    /// Let a sentence-final sign move during reordering
    #[arg(long)]
    no_anchor_sign: bool,
}

impl EaArgs {
    fn to_config(&self) -> EaConfig {
        EaConfig {
            children_per_generation: self.children as usize,
            max_generations: self.max_generations as usize,
            seed: self.seed,
            anchor_trailing_sign: !self.no_anchor_sign,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    #[value(name = "json-lines")]
    JsonLines,
}

enum CliError {
    /// Missing or unreadable resources and IO failures: exit 1.
    Resource(String),
    /// Violated domain preconditions: exit 2.
    Domain(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Resource(msg) | CliError::Domain(msg) => f.write_str(msg),
        }
    }
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Resource(_) => 1,
            CliError::Domain(_) => 2,
        }
    }
}

fn resource(msg: impl fmt::Display) -> CliError {
    CliError::Resource(msg.to_string())
}

fn domain(msg: impl fmt::Display) -> CliError {
    CliError::Domain(msg.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::BuildModel(args) => cmd_build_model(args),
        Command::Translate(args) => cmd_translate(args),
        Command::Tag(args) => cmd_tag(args),
        Command::Chunk(args) => cmd_chunk(args),
        Command::Evolve(args) => cmd_evolve(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("evomt: {e}");
            ExitCode::from(e.code())
        }
    }
}

fn read_input(path: &Option<PathBuf>) -> Result<String, CliError> {
    match path {
        Some(path) => fs::read_to_string(path)
            .map_err(|e| resource(format!("cannot read {}: {e}", path.display()))),
        None => {
            let mut text = String::new();
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| resource(format!("cannot read stdin: {e}")))?;
            Ok(text)
        }
    }
}

/// A resource path: the flag wins, then `$EVO_MT_HOME/<name>` if present.
fn home_resource(flag: &Option<PathBuf>, name: &str) -> Option<PathBuf> {
    if let Some(path) = flag {
        return Some(path.clone());
    }
    let home = std::env::var_os("EVO_MT_HOME")?;
    let candidate = Path::new(&home).join(name);
    candidate.exists().then_some(candidate)
}

struct Resources {
    lexicon: BilingualLexicon,
    model: CooccurrenceModel,
    taglex: TagLexicon,
    grammar: ChunkGrammar,
}

fn load_resources(args: &ResourceArgs) -> Result<Resources, CliError> {
    let lexicon_path = home_resource(&args.lexicon, "lexicon.tsv").ok_or_else(|| {
        resource("no lexicon: pass --lexicon PATH or set EVO_MT_HOME")
    })?;
    let lexicon = BilingualLexicon::load(&lexicon_path)
        .map_err(|e| resource(format!("{}: {e}", lexicon_path.display())))?;

    let model = match home_resource(&args.model, "model.ppmi") {
        Some(path) => CooccurrenceModel::load(&path)
            .map_err(|e| resource(format!("{}: {e}", path.display())))?,
        None => CooccurrenceModel::empty(),
    };

    let taglex = match home_resource(&args.taglex, "taglex.tsv") {
        Some(path) => TagLexicon::load(&path)
            .map_err(|e| resource(format!("{}: {e}", path.display())))?,
        None => TagLexicon::new(),
    };

    let grammar = match home_resource(&args.grammar, "grammar.cg") {
        Some(path) => ChunkGrammar::load(&path)
            .map_err(|e| resource(format!("{}: {e}", path.display())))?,
        None => ChunkGrammar::parse(evomt::DEFAULT_GRAMMAR)
            .expect("built-in grammar parses"),
    };

    Ok(Resources { lexicon, model, taglex, grammar })
}

fn load_taglex_or_default(flag: &Option<PathBuf>) -> Result<TagLexicon, CliError> {
    match home_resource(flag, "taglex.tsv") {
        Some(path) => TagLexicon::load(&path)
            .map_err(|e| resource(format!("{}: {e}", path.display()))),
        None => Ok(TagLexicon::new()),
    }
}

fn load_grammar_or_default(flag: &Option<PathBuf>) -> Result<ChunkGrammar, CliError> {
    match home_resource(flag, "grammar.cg") {
        Some(path) => ChunkGrammar::load(&path)
            .map_err(|e| resource(format!("{}: {e}", path.display()))),
        None => Ok(ChunkGrammar::parse(evomt::DEFAULT_GRAMMAR).expect("built-in grammar parses")),
    }
}

fn cmd_build_model(args: BuildModelArgs) -> Result<(), CliError> {
    let text = fs::read_to_string(&args.corpus)
        .map_err(|e| resource(format!("cannot read {}: {e}", args.corpus.display())))?;
    let lines: Vec<&str> = text.lines().collect();
    let window = match args.window {
        Some(n) => CooccurrenceWindow::Fixed(n),
        None => CooccurrenceWindow::Sentence,
    };
    let model = CooccurrenceModel::build_with_window(&lines, window)
        .map_err(|e| domain(e.to_string()))?;
    model
        .save(&args.out)
        .map_err(|e| resource(format!("cannot write {}: {e}", args.out.display())))?;
    println!("tokens {}", model.total_tokens());
    println!("pairs {}", model.total_pairs());
    Ok(())
}

fn cmd_translate(args: TranslateArgs) -> Result<(), CliError> {
    let text = read_input(&args.input)?;
    let resources = load_resources(&args.resources)?;
    let config = args.ea.to_config();

    let sentences = split_sentences(&text);
    let results = translate_all(&resources, &config, &sentences, args.jobs);

    for (index, result) in results.iter().enumerate() {
        if args.trace {
            if let Some(report) = &result.report {
                eprintln!("sentence {index}");
                eprint!("{}", report.trace_lines());
            }
        }
        match args.format {
            OutputFormat::Text => println!("{}", result.rendered),
            OutputFormat::JsonLines => {
                let line = serde_json::to_string(result)
                    .expect("translation results serialize");
                println!("{line}");
            }
        }
    }
    Ok(())
}

fn translate_all(
    resources: &Resources,
    config: &EaConfig,
    sentences: &[String],
    jobs: usize,
) -> Vec<TranslationResult> {
    let translate = |sentence: &String| {
        evomt::translate_sentence(
            &resources.lexicon,
            &resources.model,
            &resources.taglex,
            &resources.grammar,
            config,
            sentence,
        )
    };
    let jobs = jobs.clamp(1, sentences.len().max(1));
    if jobs == 1 {
        return sentences.iter().map(translate).collect();
    }
    // Contiguous chunks per worker; concatenation restores input order.
    let chunk_size = sentences.len().div_ceil(jobs);
    std::thread::scope(|scope| {
        let handles: Vec<_> = sentences
            .chunks(chunk_size)
            .map(|chunk| scope.spawn(move || chunk.iter().map(translate).collect::<Vec<_>>()))
            .collect();
        handles
            .into_iter()
            .flat_map(|handle| handle.join().expect("translation worker panicked"))
            .collect()
    })
}

fn cmd_tag(args: TagArgs) -> Result<(), CliError> {
    let text = read_input(&args.input)?;
    let taglex = load_taglex_or_default(&args.taglex)?;
    for sentence in split_sentences(&text) {
        let items: Vec<(Token, Option<PosTag>)> =
            tokenize(&sentence).into_iter().map(|t| (t, None)).collect();
        let tagged = tag_tokens(&taglex, &items);
        let line: Vec<String> = tagged.iter().map(TaggedToken::to_string).collect();
        println!("{}", line.join(" "));
    }
    Ok(())
}

/// Parses `word/TAG` items; a bare tag name stands for itself, so stage
/// inputs like `PRP NN VB` work directly.
fn parse_tagged(line: &str) -> Result<Vec<TaggedToken>, CliError> {
    line.split_whitespace()
        .map(|item| match item.rsplit_once('/') {
            Some((word, tag)) => {
                let tag: PosTag = tag
                    .parse()
                    .map_err(|e| domain(format!("`{item}`: {e}")))?;
                Ok(TaggedToken::new(word, tag))
            }
            None => {
                let tag: PosTag = item
                    .parse()
                    .map_err(|_| domain(format!("`{item}` is neither word/TAG nor a tag")))?;
                Ok(TaggedToken::new(item, tag))
            }
        })
        .collect()
}

fn cmd_chunk(args: ChunkArgs) -> Result<(), CliError> {
    let text = read_input(&args.input)?;
    let grammar = load_grammar_or_default(&args.grammar)?;
    for line in text.lines().filter(|l| !l.trim().is_empty()) {
        let tagged = parse_tagged(line)?;
        println!("{}", grammar.chunk(&tagged));
    }
    Ok(())
}

fn cmd_evolve(args: EvolveArgs) -> Result<(), CliError> {
    let text = read_input(&args.input)?;
    let tagged = parse_tagged(text.trim())?;
    if tagged.is_empty() {
        return Err(domain("candidate is empty"));
    }
    let target: Vec<PosTag> = args
        .target
        .split_whitespace()
        .map(|t| t.parse::<PosTag>().map_err(|e| domain(e.to_string())))
        .collect::<Result<_, _>>()?;
    if target.is_empty() {
        return Err(domain("target tag sequence is empty"));
    }

    let config = args.ea.to_config();
    let report = evomt::evolve(&tagged, &target, &config);
    if args.trace {
        eprint!("{}", report.trace_lines());
    }
    let fitness = report.best.fitness.expect("best candidate is evaluated");
    let order: Vec<String> = report.best.order.iter().map(usize::to_string).collect();
    let result: Vec<String> = report
        .best
        .order
        .iter()
        .map(|&i| tagged[i].to_string())
        .collect();
    println!("fitness {fitness}");
    println!("order {}", order.join(" "));
    println!("result {}", result.join(" "));
    Ok(())
}
