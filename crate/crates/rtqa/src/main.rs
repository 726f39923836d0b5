use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use log::{info, warn};
use rtqa::annotations::{self, AnnotationRecord};
use rtqa::config::{FileConfig, CONFIG_ENV};
use rtqa::{index_file, pipeline, priors, squad_io, store, Error, Result};
use rtqa_core::dataset::{parse_qid, subsample_per_context};
use rtqa_core::eval::{context_id, evaluate, ner_subset};
use rtqa_core::{
    Corpus, Document, Entity, GenerationConfig, HeuristicAnnotator, InvertedIndex, MatchingMode, SquadDataset,
    TemplateVariant, WhPriorTable,
};

#[derive(Parser)]
#[command(name = "rtqa", version, about = "Build synthetic extractive QA data from a plain-text corpus")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Split a JSONL corpus into a sentence store.
    Ingest {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Produce an annotation file for a store, from a tagger's output or the built-in heuristics.
    Annotate {
        #[arg(long)]
        store: PathBuf,
        #[command(flatten)]
        source: EntitySource,
        #[arg(long)]
        out: PathBuf,
    },
    /// Build and save the BM25 index over a store.
    Index {
        #[arg(long)]
        store: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Generate training and validation files in SQuAD v1.1 format.
    Generate(GenerateArgs),
    /// Score a prediction file against gold SQuAD data.
    Evaluate {
        #[arg(long)]
        gold: PathBuf,
        #[arg(long)]
        pred: PathBuf,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Keep the gold questions whose answer is a named entity of its context.
    NerSubset {
        #[arg(long)]
        gold: PathBuf,
        #[command(flatten)]
        source: EntitySource,
        #[arg(long)]
        out: PathBuf,
    },
    /// Export the contexts of a SQuAD file as a sentence store, for tagging.
    Contexts {
        #[arg(long)]
        gold: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Estimate a wh-bigram prior table from a SQuAD training file.
    WhPriors {
        #[arg(long)]
        train: PathBuf,
        #[command(flatten)]
        source: EntitySource,
        /// Keep only the most frequent bigrams per label.
        #[arg(long)]
        top_n: Option<usize>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print question counts per template variant and answer label.
    Stats {
        #[arg(long)]
        train: PathBuf,
    },
    /// Keep one random question per context, then at most N contexts.
    Subsample {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

/// Where entity annotations come from: an interchange file, or the
/// heuristic annotator with a gazetteer.
#[derive(Args)]
#[group(required = true, multiple = true)]
struct EntitySource {
    #[arg(long, conflicts_with_all = ["heuristic", "gazetteer"])]
    annotations: Option<PathBuf>,
    #[arg(long, requires = "gazetteer")]
    heuristic: bool,
    #[arg(long)]
    gazetteer: Option<PathBuf>,
}

impl EntitySource {
    fn annotator(&self) -> Result<Option<HeuristicAnnotator>> {
        match &self.gazetteer {
            Some(path) => Ok(Some(HeuristicAnnotator::new(&annotations::load_gazetteer(path)?))),
            None => Ok(None),
        }
    }
}

#[derive(Args)]
struct GenerateArgs {
    /// TOML file with defaults for the flags below.
    #[arg(long, env = CONFIG_ENV)]
    config: Option<PathBuf>,
    #[arg(long)]
    store: PathBuf,
    /// Required when questions are built from retrieved sentences.
    #[arg(long)]
    index: Option<PathBuf>,
    /// Entity annotations for the store (see `annotate`).
    #[arg(long)]
    annotations: PathBuf,
    #[arg(long, value_parser = parse_variant)]
    variant: Option<TemplateVariant>,
    #[arg(long, value_parser = parse_mode)]
    mode: Option<MatchingMode>,
    #[arg(long)]
    use_retrieved: Option<bool>,
    /// Total examples, validation included.
    #[arg(long)]
    size: Option<usize>,
    #[arg(long)]
    val_size: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    f1_cap: Option<f64>,
    #[arg(long)]
    top_k: Option<usize>,
    /// Also reject retrieved sentences from the query's own document.
    #[arg(long)]
    exclude_document: Option<bool>,
    #[arg(long)]
    wh_priors: Option<PathBuf>,
    /// Worker threads; 0 uses every core.
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long, default_value = "rtqa")]
    title: String,
    #[arg(long)]
    out_train: PathBuf,
    #[arg(long)]
    out_val: PathBuf,
}

fn parse_variant(s: &str) -> std::result::Result<TemplateVariant, String> {
    s.parse().map_err(|e: rtqa_core::Error| e.to_string())
}

fn parse_mode(s: &str) -> std::result::Result<MatchingMode, String> {
    s.parse().map_err(|e: rtqa_core::Error| e.to_string())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info"))
        .format_timestamp(None)
        .init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    use rtqa_core::Error as C;
    match e {
        Error::Config { .. } => 1,
        Error::Core(C::UnknownVariant(_) | C::UnknownMode(_) | C::InvalidConfig(_)) => 1,
        _ => 2,
    }
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Ingest { corpus, out } => {
            let c = store::ingest_file(&corpus)?;
            store::save_store(&c, &out)?;
            info!("{} paragraphs, {} sentences", c.paragraphs().len(), c.len());
        }
        Command::Annotate { store: path, source, out } => {
            let mut c = store::load_store(&path)?;
            match (&source.annotations, source.annotator()?) {
                (Some(file), _) => annotations::apply_annotations(&mut c, file)?,
                (None, Some(annotator)) => c.annotate_with(&annotator),
                (None, None) => unreachable!("clap requires one entity source"),
            }
            annotations::save_annotations(&c, &out)?;
            let n: usize = c.sentences().iter().map(|s| s.entities.len()).sum();
            info!("{n} entities over {} sentences", c.len());
        }
        Command::Index { store: path, out } => {
            let c = store::load_store(&path)?;
            let idx = InvertedIndex::build(&c);
            index_file::save_index(&idx, &out)?;
            info!("{} sentences, {} terms", idx.len(), idx.postings().len());
        }
        Command::Generate(args) => generate(args)?,
        Command::Evaluate { gold, pred, report } => {
            let g = squad_io::load_squad(&gold)?;
            let p = squad_io::load_predictions(&pred)?;
            let r = evaluate(&g, &p);
            if !r.missing.is_empty() {
                warn!("{} of {} questions have no prediction and score 0", r.missing.len(), r.n);
            }
            let body = serde_json::to_string(&squad_io::ReportFile::from(&r)).expect("report serializes");
            println!("{body}");
            if let Some(path) = report {
                squad_io::save_report(&r, &path)?;
            }
        }
        Command::NerSubset { gold, source, out } => {
            let g = squad_io::load_squad(&gold)?;
            let ents = context_entities(&g, &source)?;
            let sub = ner_subset(&g, &ents)?;
            info!("kept {} of {} questions", sub.question_count(), g.question_count());
            squad_io::save_squad(&sub, &out)?;
        }
        Command::Contexts { gold, out } => {
            let g = squad_io::load_squad(&gold)?;
            let mut seen = BTreeMap::new();
            let mut docs = Vec::new();
            for article in &g.data {
                for p in &article.paragraphs {
                    let id = context_id(&p.context);
                    if seen.insert(id.clone(), ()).is_none() {
                        docs.push(Document { doc_id: id, title: article.title.clone(), paragraphs: vec![p.context.clone()] });
                    }
                }
            }
            let c = Corpus::ingest(docs)?;
            store::save_store(&c, &out)?;
            info!("{} contexts, {} sentences", c.paragraphs().len(), c.len());
        }
        Command::WhPriors { train, source, top_n, out } => {
            let g = squad_io::load_squad(&train)?;
            let ents = context_entities(&g, &source)?;
            let mut pairs = Vec::new();
            for (p, qa) in g.questions() {
                let pool = &ents[&context_id(&p.context)];
                let label = qa
                    .answers
                    .iter()
                    .find_map(|a| pool.iter().find(|e| e.surface.to_lowercase() == a.text.to_lowercase()))
                    .map(|e| e.label.as_str());
                if let Some(label) = label {
                    pairs.push((label, qa.question.as_str()));
                }
            }
            info!("{} of {} questions have an entity answer", pairs.len(), g.question_count());
            let table = WhPriorTable::from_questions(pairs, top_n)?;
            priors::save_priors(&table, &out)?;
        }
        Command::Stats { train } => {
            let g = squad_io::load_squad(&train)?;
            print!("{}", stats(&g));
        }
        Command::Subsample { input, n, seed, out } => {
            let g = squad_io::load_squad(&input)?;
            let title = g.data.first().map(|a| a.title.clone()).unwrap_or_default();
            let picked = subsample_per_context(&g.to_examples(), n, seed);
            squad_io::save_squad(&SquadDataset::from_examples(&picked, &title)?, &out)?;
            info!("kept {} of {} questions", picked.len(), g.question_count());
        }
    }
    Ok(())
}

fn generate(args: GenerateArgs) -> Result<()> {
    let file = match &args.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    let mut cfg = file.apply(GenerationConfig::default())?;
    if let Some(v) = args.variant {
        cfg.variant = v;
    }
    if let Some(m) = args.mode {
        cfg.mode = m;
    }
    macro_rules! flag {
        ($($arg:ident => $field:ident),*) => { $( if let Some(v) = args.$arg { cfg.$field = v; } )* };
    }
    flag!(use_retrieved => use_retrieved, size => target_size, val_size => validation_size, seed => seed,
        f1_cap => f1_cap, top_k => top_k, exclude_document => exclude_document);
    cfg.validate()?;
    let jobs = args.jobs.or(file.jobs).unwrap_or(0);
    let prior = match args.wh_priors.as_ref().or(file.wh_priors.as_ref()) {
        Some(path) => priors::load_priors(path)?,
        None => priors::default_priors(),
    };

    let mut corpus = store::load_store(&args.store)?;
    annotations::apply_annotations(&mut corpus, &args.annotations)?;
    let index = match (&args.index, cfg.use_retrieved) {
        (Some(path), _) => index_file::load_index(path)?,
        (None, false) => InvertedIndex::from_texts(std::iter::empty()),
        (None, true) => {
            info!("no --index given; building one in memory");
            InvertedIndex::build(&corpus)
        }
    };

    let run = pipeline::run(&corpus, &index, &cfg, &prior, jobs)?;
    if let Some(n) = run.validation_clamped {
        warn!("only {n} examples generated; validation size reduced from {} to {n}", cfg.validation_size);
    }
    if run.skipped > 0 {
        info!("skipped {} of {} answer pairs: no retrieved sentence passed the filters", run.skipped, run.pairs);
    }
    if run.duplicates > 0 {
        info!("dropped {} duplicate examples", run.duplicates);
    }
    squad_io::save_squad(&SquadDataset::from_examples(&run.train, &args.title)?, &args.out_train)?;
    squad_io::save_squad(&SquadDataset::from_examples(&run.validation, &args.title)?, &args.out_val)?;
    info!(
        "{}: wrote {} training and {} validation examples",
        cfg.variant,
        run.train.len(),
        run.validation.len()
    );
    Ok(())
}

/// Entities per context, keyed by [`context_id`]. Interchange records are
/// grouped by the store document id, which `contexts` sets to the context id.
fn context_entities(gold: &SquadDataset, source: &EntitySource) -> Result<BTreeMap<String, Vec<Entity>>> {
    let mut out: BTreeMap<String, Vec<Entity>> = BTreeMap::new();
    if let Some(path) = &source.annotations {
        for AnnotationRecord { sent_id, entities } in annotations::load_annotations(path)? {
            let doc = sent_id.split(':').next().unwrap_or_default().to_string();
            out.entry(doc).or_default().extend(entities);
        }
    } else if let Some(annotator) = source.annotator()? {
        for (p, _) in gold.questions() {
            out.entry(context_id(&p.context)).or_insert_with(|| annotator.annotate(&p.context));
        }
    }
    Ok(out)
}

fn stats(data: &SquadDataset) -> String {
    let mut per_variant: BTreeMap<&str, usize> = BTreeMap::new();
    let mut per_label: BTreeMap<&str, usize> = BTreeMap::new();
    let mut unparsed = 0;
    for (_, qa) in data.questions() {
        match parse_qid(&qa.id) {
            Some((variant, label)) => {
                *per_variant.entry(variant).or_default() += 1;
                *per_label.entry(label).or_default() += 1;
            }
            None => unparsed += 1,
        }
    }
    let contexts: usize = data.data.iter().map(|a| a.paragraphs.len()).sum();
    let mut s = format!("questions\t{}\ncontexts\t{contexts}\n", data.question_count());
    for (v, n) in per_variant {
        s += &format!("variant\t{v}\t{n}\n");
    }
    for (l, n) in per_label {
        s += &format!("label\t{l}\t{n}\n");
    }
    if unparsed > 0 {
        s += &format!("foreign_ids\t{unparsed}\n");
    }
    s
}
