use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use corpvar::features::{extract_candidates, reference_type_set, write_annotations_to, AnnotationRecord, ExtractOptions};
use corpvar::ingest::{parse_conllu, parse_tokens_file, profile_to_json, read_profile, sample_sentences, write_conllu, write_tokens};
use corpvar::report::{build_comparison, render, render_extremes, render_relations, CompareOptions};
use corpvar::syntactic::{corpus_mdd_with, extreme_sentences_with, relation_stats_with};
use corpvar::{
    lexical_profile, syntactic_profile, Corpus, Error, LexicalOptions, ParsedCorpus, Profile, SyntacticOptions,
};

use crate::{AnalyzeArgs, CompareArgs, FeaturesArgs, InputFormat, MddArgs, RelationsArgs, ReportFormat, SampleArgs};

#[derive(Debug)]
pub enum Failure {
    /// A library error, optionally prefixed with the file it concerns.
    Lib { context: Option<PathBuf>, error: Error },
    Usage(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Lib { error, .. } if !error.is_input_error() => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            // Io and Encoding messages already carry the path.
            Failure::Lib {
                context: Some(p),
                error: error @ (Error::Parse { .. } | Error::InvalidArc { .. } | Error::Schema(_) | Error::EmptyCorpus),
            } => write!(f, "{}: {error}", p.display()),
            Failure::Lib { error, .. } => write!(f, "{error}"),
            Failure::Usage(m) => write!(f, "{m}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(error: Error) -> Self {
        Failure::Lib { context: None, error }
    }
}

type Outcome = Result<(), Failure>;

fn at(path: &Path) -> impl FnOnce(Error) -> Failure + '_ {
    move |error| Failure::Lib {
        context: Some(path.to_path_buf()),
        error,
    }
}

fn detect(path: &Path, explicit: Option<InputFormat>) -> InputFormat {
    explicit.unwrap_or_else(|| match path.extension().and_then(|e| e.to_str()) {
        Some("conllu" | "conll") => InputFormat::Conllu,
        _ => InputFormat::Tokens,
    })
}

/// Loads a corpus as plain token sequences; CoNLL-U input contributes its forms.
fn load_tokens(path: &Path, format: Option<InputFormat>) -> Result<Corpus, Failure> {
    match detect(path, format) {
        InputFormat::Tokens => parse_tokens_file(path).map_err(at(path)),
        InputFormat::Conllu => {
            let parsed = parse_conllu(path).map_err(at(path))?;
            forms_of(&parsed).map_err(at(path))
        }
    }
}

fn forms_of(parsed: &ParsedCorpus) -> corpvar::Result<Corpus> {
    let lists: Vec<Vec<&str>> = parsed
        .sentences()
        .iter()
        .map(|s| s.tokens().iter().map(|t| t.form.as_str()).collect())
        .collect();
    Corpus::from_token_lists(parsed.id.clone(), &lists)
}

fn emit(out: Option<&Path>, bytes: &[u8]) -> Outcome {
    match out {
        Some(path) => std::fs::write(path, bytes).map_err(|e| Error::io(path, e).into()),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(bytes)
                .and_then(|()| stdout.flush())
                .map_err(|e| Error::io("<stdout>", e).into())
        }
    }
}

fn syntactic_opts(exclude_punct_arcs: bool) -> SyntacticOptions {
    SyntacticOptions {
        include_punct_arcs: !exclude_punct_arcs,
    }
}

pub fn analyze(args: AnalyzeArgs) -> Outcome {
    let path = args.input.as_path();
    let profile: Profile = match detect(path, args.format) {
        InputFormat::Tokens => {
            let mut corpus = parse_tokens_file(path).map_err(at(path))?;
            if let Some(id) = &args.id {
                corpus.id = id.clone();
            }
            let opts = LexicalOptions {
                han_only: args.han_only,
                exclude_punctuation: args.exclude_punct,
            };
            lexical_profile(&corpus, opts).map_err(at(path))?.into()
        }
        InputFormat::Conllu => {
            let mut corpus = parse_conllu(path).map_err(at(path))?;
            if let Some(id) = &args.id {
                corpus.id = id.clone();
            }
            syntactic_profile(&corpus, syntactic_opts(args.exclude_punct_arcs))
                .map_err(at(path))?
                .into()
        }
    };
    let bytes = match args.output.pick(None, ReportFormat::Json) {
        ReportFormat::Json => profile_to_json(&profile).into_bytes(),
        table => {
            let report = match &profile {
                Profile::Lexical(p) => build_comparison(std::slice::from_ref(p), &[], CompareOptions::default())?,
                Profile::Syntactic(p) => build_comparison(&[], std::slice::from_ref(p), CompareOptions::default())?,
            };
            render(&report, table.into())
        }
    };
    emit(args.out.as_deref(), &bytes)
}

fn sample_one(paths: &[PathBuf], format: InputFormat, n: usize, seed: u64) -> Result<Vec<u8>, Failure> {
    let label = paths.iter().map(|p| p.display().to_string()).collect::<Vec<_>>().join(", ");
    let mut buf = Vec::new();
    let (kept, total) = match format {
        InputFormat::Tokens => {
            let mut sentences = Vec::new();
            for p in paths {
                sentences.extend(load_tokens(p, Some(format))?.into_sentences());
            }
            let pooled = Corpus::new("pooled", sentences);
            let sample = sample_sentences(&pooled, n, seed);
            write_tokens(&sample, &mut buf).expect("in-memory write");
            (sample.sentences().len(), pooled.sentences().len())
        }
        InputFormat::Conllu => {
            let mut sentences = Vec::new();
            for p in paths {
                sentences.extend(parse_conllu(p).map_err(at(p))?.into_sentences());
            }
            let pooled = ParsedCorpus::new("pooled", sentences);
            let sample = sample_sentences(&pooled, n, seed);
            writeln!(buf, "# seed = {seed}").expect("in-memory write");
            write_conllu(&sample, &mut buf).expect("in-memory write");
            (sample.sentences().len(), pooled.sentences().len())
        }
    };
    eprintln!("corpvar: sampled {kept} of {total} sentences from {label} (seed {seed})");
    Ok(buf)
}

pub fn sample(args: SampleArgs) -> Outcome {
    if !args.per_file {
        let format = detect(&args.input[0], args.format);
        let bytes = sample_one(&args.input, format, args.n, args.seed)?;
        return emit(args.out.as_deref(), &bytes);
    }
    let Some(dir) = args.out.as_deref() else {
        return Err(Failure::Usage("--per-file needs --out DIR".into()));
    };
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    for p in &args.input {
        let bytes = sample_one(std::slice::from_ref(p), detect(p, args.format), args.n, args.seed)?;
        let name = p.file_name().ok_or_else(|| Failure::Usage(format!("{} is not a file", p.display())))?;
        emit(Some(&dir.join(name)), &bytes)?;
    }
    Ok(())
}

pub fn compare(args: CompareArgs) -> Outcome {
    let mut lexical = Vec::new();
    let mut syntactic = Vec::new();
    for p in &args.profiles {
        match read_profile(p).map_err(at(p))? {
            Profile::Lexical(l) => lexical.push(l),
            Profile::Syntactic(s) => syntactic.push(s),
        }
    }
    let opts = CompareOptions {
        with_relevance: args.relevance,
        top_k: args.top,
    };
    let report = build_comparison(&lexical, &syntactic, opts)?;
    for w in &report.warnings {
        eprintln!("corpvar: warning: {w}");
    }
    let format = args.output.pick(args.format, ReportFormat::Markdown);
    emit(args.out.as_deref(), &render(&report, format.into()))
}

pub fn features(args: FeaturesArgs) -> Outcome {
    let target = load_tokens(&args.target, args.format)?;
    let reference = load_tokens(&args.reference, args.format)?;
    let set = reference_type_set(&reference).map_err(at(&args.reference))?;
    let opts = ExtractOptions {
        min_freq: args.min_freq,
        max_contexts: args.contexts,
        window: args.window as usize,
    };
    let candidates = extract_candidates(&target, &set, opts);
    eprintln!(
        "corpvar: {} candidate(s) from {} not in {}",
        candidates.len(),
        args.target.display(),
        args.reference.display()
    );
    let records: Vec<AnnotationRecord> = candidates.iter().map(AnnotationRecord::from_candidate).collect();
    let mut buf = Vec::new();
    write_annotations_to(&records, &mut buf)?;
    emit(args.out.as_deref(), &buf)
}

pub fn relations(args: RelationsArgs) -> Outcome {
    let path = args.input.as_path();
    let corpus = parse_conllu(path).map_err(at(path))?;
    let stats = relation_stats_with(&corpus, syntactic_opts(args.exclude_punct_arcs)).map_err(at(path))?;
    let format = args.output.pick(args.format, ReportFormat::Markdown);
    emit(
        args.out.as_deref(),
        &render_relations(&corpus.id, &stats, args.top, format.into()),
    )
}

pub fn mdd(args: MddArgs) -> Outcome {
    let path = args.input.as_path();
    let corpus = parse_conllu(path).map_err(at(path))?;
    let opts = syntactic_opts(args.exclude_punct_arcs);
    let mean = corpus_mdd_with(&corpus, opts).map_err(at(path))?;
    let top = extreme_sentences_with(&corpus, args.top_sentences, opts);
    let format = args.output.pick(args.format, ReportFormat::Markdown);
    emit(args.out.as_deref(), &render_extremes(&corpus.id, mean, &top, format.into()))
}
