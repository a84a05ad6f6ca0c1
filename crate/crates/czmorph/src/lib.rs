//! Command-line front end: compile rules and lexicon into an index,
//! generate, analyze, expand, trace and measure corpus coverage.

pub mod error;
pub mod index_file;
pub mod output;
pub mod sources;

use std::fs;
use std::io::{BufRead, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use czmorph_core::analyzer::CoverageCounter;
use czmorph_core::lexicon::FormKind;
use czmorph_core::{analyze, generate_form, FormIndex, Grammar};

use crate::error::{CliError, Result};
use crate::index_file::IndexFile;
use crate::output::*;
use crate::sources::{Paths, Sources};

#[derive(Debug, Parser)]
#[command(name = "czmorph", version, about = "Two-level morphology of Czech")]
pub struct Cli {
    /// Alphabet declaration (default: bundled Czech alphabet).
    #[arg(long, global = true, env = "CZMORPH_ALPHABET", value_name = "PATH")]
    pub alphabet: Option<PathBuf>,
    /// Rule program (default: bundled Czech rules).
    #[arg(long, global = true, env = "CZMORPH_RULES", value_name = "PATH")]
    pub rules: Option<PathBuf>,
    /// Lexicon (default: bundled sample lexicon).
    #[arg(long, global = true, env = "CZMORPH_LEXICON", value_name = "PATH")]
    pub lexicon: Option<PathBuf>,
    /// Form index written by `compile`; other commands read it instead of
    /// rebuilding the index in memory.
    #[arg(long, global = true, env = "CZMORPH_INDEX", value_name = "PATH")]
    pub index: Option<PathBuf>,
    /// Print machine-readable JSON.
    #[arg(long, global = true, env = "CZMORPH_JSON")]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compile the rules, build the form index and write it to --index.
    Compile,
    /// Print the surface forms of LEMMA for TAG.
    Generate { lemma: String, tag: String },
    /// Analyze words given as arguments, or read from stdin when none are.
    Analyze { words: Vec<String> },
    /// Print every form of LEMMA: paradigm, tag, lexical string, surfaces.
    Expand { lemma: String },
    /// Show which rule rejects each candidate realization of LEXICAL.
    Trace {
        lexical: String,
        /// Only examine candidates realizing this surface word.
        surface: Option<String>,
        /// Maximum number of candidates listed.
        #[arg(long, default_value_t = 200)]
        limit: usize,
    },
    /// Report pairs of rules demanding different surfaces in one context.
    Conflicts,
    /// Measure the share of corpus tokens the index analyzes ("-" = stdin).
    Coverage {
        corpus: PathBuf,
        /// Number of most frequent unknown words to list.
        #[arg(long, default_value_t = 20)]
        top: usize,
    },
}

/// Parses `args` (program name first) and runs the command. Returns the
/// exit status: 0 ok, 1 usage, 2 input/output, 3 content.
pub fn run<I, S>(args: I, stdin: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(&cli, stdin) {
        Ok((text, code)) => {
            if let Err(e) = out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
                let _ = writeln!(err, "czmorph: <stdout>: {e}");
                return 2;
            }
            code
        }
        Err(e) => {
            let _ = writeln!(err, "czmorph: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: &Cli, stdin: &mut dyn BufRead) -> Result<(String, i32)> {
    let paths = Paths {
        alphabet: cli.alphabet.clone(),
        rules: cli.rules.clone(),
        lexicon: cli.lexicon.clone(),
    };
    let sources = Sources::load(&paths)?;
    let grammar = sources.grammar()?;
    let ok = |text: String| Ok((text, 0));
    match &cli.command {
        Command::Compile => {
            let path = cli
                .index
                .as_ref()
                .ok_or_else(|| CliError::Usage("compile needs --index PATH to write to".into()))?;
            let lexicon = sources.lexicon(&grammar)?;
            let index = sources.build_index(&grammar, &lexicon)?;
            let file = IndexFile::new(&sources, index);
            fs::write(path, file.render()).map_err(|e| CliError::io(path, e))?;
            let report = CompileReport {
                index: path.display().to_string(),
                rules: grammar.rules.len(),
                warnings: grammar
                    .warnings()
                    .into_iter()
                    .map(|w| WarningOut {
                        rule: w.rule,
                        context: w.context,
                    })
                    .collect(),
                entries: lexicon.entries.len(),
                surfaces: file.index.len(),
                pairs: file.index.pair_count(),
                hashes: file.hashes.clone(),
            };
            ok(render(&report, cli.json))
        }
        Command::Generate { lemma, tag } => {
            let lexicon = sources.lexicon(&grammar)?;
            let forms = generate_form(&lexicon, &grammar, lemma, tag)
                .map_err(|e| CliError::Content(e.to_string()))?;
            let value = GenerateOut {
                lemma: lemma.to_lowercase(),
                tag: tag.clone(),
                forms: forms.into_iter().collect(),
            };
            ok(render(&value, cli.json))
        }
        Command::Analyze { words } => {
            let index = load_index(cli, &sources, &grammar)?;
            let mut input = words.clone();
            if input.is_empty() {
                let mut text = String::new();
                stdin
                    .read_to_string(&mut text)
                    .map_err(|e| CliError::io("<stdin>", e))?;
                input = text.split_whitespace().map(str::to_string).collect();
            }
            let value = AnalyzeOut(input.into_iter().map(|w| analyze_word(&index, w)).collect());
            ok(render(&value, cli.json))
        }
        Command::Expand { lemma } => {
            let lexicon = sources.lexicon(&grammar)?;
            let folded = lemma.to_lowercase();
            let mut forms = Vec::new();
            for entry in lexicon.entries_for(&folded) {
                for form in lexicon.expand(entry) {
                    let (lexical, surfaces) = match &form.kind {
                        FormKind::Exception(s) => (None, vec![s.clone()]),
                        FormKind::Lexical(s) => (
                            Some(grammar.alphabet.render(s)),
                            grammar.generate(s).into_iter().collect(),
                        ),
                    };
                    forms.push(ExpandedForm {
                        paradigm: entry.paradigm.clone(),
                        tag: form.tag,
                        lexical,
                        surfaces,
                    });
                }
            }
            if forms.is_empty() {
                return Err(CliError::Content(format!("unknown lemma `{folded}`")));
            }
            ok(render(
                &ExpandOut {
                    lemma: folded,
                    forms,
                },
                cli.json,
            ))
        }
        Command::Trace {
            lexical,
            surface,
            limit,
        } => ok(render(
            &trace(&grammar, lexical, surface.as_deref(), *limit)?,
            cli.json,
        )),
        Command::Conflicts => {
            let found: Vec<ConflictOut> = grammar
                .conflicts()
                .into_iter()
                .map(|c| ConflictOut {
                    first: c.first,
                    second: c.second,
                    first_context: c.first_context,
                    second_context: c.second_context,
                    witness: c.witness,
                })
                .collect();
            let code = if found.is_empty() { 0 } else { 3 };
            Ok((render(&ConflictsOut(found), cli.json), code))
        }
        Command::Coverage { corpus, top } => {
            let index = load_index(cli, &sources, &grammar)?;
            let mut counter = CoverageCounter::new(&index);
            if corpus.as_os_str() == "-" {
                read_lines(stdin, "<stdin>".into(), &mut counter)?;
            } else {
                let f = fs::File::open(corpus).map_err(|e| CliError::io(corpus, e))?;
                read_lines(
                    &mut std::io::BufReader::new(f),
                    corpus.clone(),
                    &mut counter,
                )?;
            }
            let c = counter.finish(*top);
            let value = CoverageOut {
                tokens: c.tokens,
                analyzed: c.analyzed,
                ratio: c.ratio,
                types: c.types,
                analyzed_types: c.analyzed_types,
                type_ratio: c.type_ratio,
                empty: c.empty,
                top_unknown: c
                    .top_unknown
                    .into_iter()
                    .map(|(word, count)| UnknownOut { word, count })
                    .collect(),
            };
            ok(render(&value, cli.json))
        }
    }
}

fn read_lines(input: &mut dyn BufRead, name: PathBuf, counter: &mut CoverageCounter) -> Result<()> {
    let mut line = String::new();
    loop {
        line.clear();
        match input.read_line(&mut line) {
            Ok(0) => return Ok(()),
            Ok(_) => counter.add_text(&line),
            Err(e) => return Err(CliError::io(name, e)),
        }
    }
}

/// Reads the index named by --index, or builds one from the sources.
fn load_index(cli: &Cli, sources: &Sources, grammar: &Grammar) -> Result<FormIndex> {
    match &cli.index {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
            let name = path.display().to_string();
            let file = IndexFile::parse(&text, &name)?;
            file.check_fresh(sources, &name)?;
            Ok(file.index)
        }
        None => {
            let lexicon = sources.lexicon(grammar)?;
            sources.build_index(grammar, &lexicon)
        }
    }
}

fn analyze_word(index: &FormIndex, word: String) -> WordOut {
    let analyses = analyze(index, &word)
        .into_iter()
        .map(|a| AnalysisOut {
            lemma: a.lemma,
            paradigm: a.paradigm,
            tag: a.tag,
            exception: a.via_exception,
        })
        .collect();
    WordOut { word, analyses }
}

fn trace(
    grammar: &Grammar,
    lexical: &str,
    surface: Option<&str>,
    limit: usize,
) -> Result<TraceOut> {
    let symbols = grammar
        .alphabet
        .tokenize(lexical)
        .map_err(|e| CliError::Content(format!("lexical string `{lexical}`: {e}")))?;
    let t = grammar.trace(&symbols, surface, limit);
    let candidates = t
        .items
        .into_iter()
        .map(|item| CandidateOut {
            pairs: grammar.render_pairs(&item.pairs),
            surface: item.surface,
            accepted: item.verdict.is_none(),
            rule: item.verdict.as_ref().map(|v| v.rule_name.clone()),
            position: item.verdict.map(|v| v.position),
        })
        .collect();
    Ok(TraceOut {
        lexical: lexical.to_string(),
        surface: surface.map(str::to_string),
        candidates,
        truncated: t.truncated,
    })
}
